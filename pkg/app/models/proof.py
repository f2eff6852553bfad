# app/models/proof.py
from typing import Literal

from pydantic import BaseModel, ConfigDict

from app.models.digits import DigitString
from app.models.params import Params
from app.models.programs import StepProgram


class Shift(BaseModel):
    """Couple (k, n) : S^k(x + n)."""

    model_config = ConfigDict(frozen=True)

    k: int
    n: DigitString


class ProofConstants(BaseModel):
    """Une ligne des tableaux 3 à 5 pour un [c,b] de A."""

    model_config = ConfigDict(frozen=True)

    params: Params
    v: int
    sets: tuple[frozenset[int], ...]          # V_1, V_2, ...
    cycle_shifts: tuple[Shift | None, ...]    # (k_i, n_i) pour C_1, C_2, ...
    set_shifts: tuple[Shift | None, ...]      # (k'_j, n'_j) pour V_2, V_3, ...

    def set_index(self, image: frozenset[int]) -> int | None:
        """Indice j (à partir de 1) tel que V_j = image."""
        for j, candidate in enumerate(self.sets, start=1):
            if candidate == image:
                return j
        return None

    def set_shift(self, j: int) -> Shift | None:
        return self.set_shifts[j - 2] if j >= 2 else None


class CycleGoodWitness(BaseModel):
    """Un programme par cycle C_i envoyant tout T dans C_i."""

    params: Params
    domain: tuple[int, ...]
    mode: Literal["good", "single-cycle", "pipeline"]
    programs: tuple[StepProgram, ...]
    # étapes du cas de parité mixte
    even_stage: StepProgram | None = None
    odd_stage: StepProgram | None = None
    k3: int | None = None
    set_index: int | None = None
    # cycle visé par un témoin de nombres consécutifs
    target: int | None = None
    target_cycle: int | None = None


class CellCheck(BaseModel):
    table: int
    row: str
    cell: str
    passed: bool
    detail: str = ""


class TableReport(BaseModel):
    table: int
    rows: int
    cells: list[CellCheck]

    @property
    def failures(self) -> list[CellCheck]:
        return [cell for cell in self.cells if not cell.passed]

    @property
    def passed(self) -> bool:
        return not self.failures
