# app/services/errors.py
"""Erreurs métier. Toutes dérivent de ValueError : l'API les traduit en 400."""


class HappyError(ValueError):
    pass


class NotInCyclesError(HappyError):
    def __init__(self, u: int, label: str):
        super().__init__(f"u = {u} n'appartient pas à U_{label}")
        self.u = u


class NotInImageError(HappyError):
    def __init__(self, u: int, label: str):
        super().__init__(f"u = {u} n'est pas dans l'image de S_{label}")
        self.u = u


class CongruenceError(HappyError):
    pass


class OddRadixRequiredError(HappyError):
    pass


class UnsupportedParamsError(HappyError):
    pass


class NoSolutionError(HappyError):
    pass


class TableMismatchError(HappyError):
    def __init__(self, cell: str, detail: str):
        super().__init__(f"{cell} : {detail}")
        self.cell = cell
        self.detail = detail
