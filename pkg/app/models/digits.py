# app/models/digits.py
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator


def split_digits(text: str, radix: int) -> list[int]:
    """Découpe une écriture en base `radix`, poids fort en tête.

    Base ≤ 10 : chiffres contigus ("11120200"). Base > 10 : valeurs décimales
    séparées par ':' ("12:0:7").
    """
    text = text.strip()
    if not text:
        raise ValueError("Écriture vide")
    try:
        if radix <= 10:
            digits = [int(ch) for ch in text]
        else:
            digits = [int(part) for part in text.split(":")]
    except ValueError:
        raise ValueError(f"Écriture invalide en base {radix} : {text!r}") from None
    for digit in digits:
        if not 0 <= digit < radix:
            raise ValueError(f"Chiffre {digit} hors de [0, {radix - 1}] dans {text!r}")
    return digits


def join_digits(digits_msf: list[int] | tuple[int, ...], radix: int) -> str:
    if radix <= 10:
        return "".join(str(d) for d in digits_msf)
    return ":".join(str(d) for d in digits_msf)


def int_to_digits(value: int, radix: int) -> tuple[int, ...]:
    """Chiffres de `value`, poids faible en tête ; zéro donne (0,)."""
    if value < 0:
        raise ValueError(f"Entier naturel attendu, reçu {value}")
    if value == 0:
        return (0,)
    digits = []
    while value:
        value, digit = divmod(value, radix)
        digits.append(digit)
    return tuple(digits)


def format_number(value: int, radix: int) -> str:
    return join_digits(int_to_digits(value, radix)[::-1], radix)


def parse_number(text: str, radix: int) -> int:
    value = 0
    for digit in split_digits(text, radix):
        value = value * radix + digit
    return value


class DigitString(BaseModel):
    """Entier naturel de taille arbitraire stocké chiffre par chiffre.

    Les chiffres sont rangés poids faible en tête (la propagation de retenue
    ne fait qu'ajouter en fin de liste) et rendus poids fort en tête.
    """

    model_config = ConfigDict(frozen=True)

    digits: tuple[int, ...]
    radix: int = Field(ge=2)

    @model_validator(mode="before")
    @classmethod
    def _from_text(cls, data: Any) -> Any:
        # forme JSON : {"radix": b, "text": "11120200"}
        if isinstance(data, dict) and "text" in data:
            radix = data["radix"]
            return {"digits": tuple(split_digits(data["text"], radix)[::-1]), "radix": radix}
        return data

    @model_validator(mode="after")
    def _check_canonical(self) -> "DigitString":
        if not self.digits:
            raise ValueError("Au moins un chiffre est requis")
        if any(not 0 <= d < self.radix for d in self.digits):
            raise ValueError(f"Chiffre hors de [0, {self.radix - 1}]")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError("Zéro de tête non canonique")
        return self

    @model_serializer
    def _to_text(self) -> dict:
        return {"radix": self.radix, "text": self.render()}

    @classmethod
    def trusted(cls, digits: list[int] | tuple[int, ...], radix: int) -> "DigitString":
        """Construction sans validation, pour les chiffres produits en interne."""
        digits = list(digits)
        while len(digits) > 1 and digits[-1] == 0:
            digits.pop()
        return cls.model_construct(digits=tuple(digits) or (0,), radix=radix)

    @classmethod
    def from_int(cls, value: int, radix: int) -> "DigitString":
        return cls.trusted(int_to_digits(value, radix), radix)

    @classmethod
    def parse(cls, text: str, radix: int) -> "DigitString":
        return cls.trusted(split_digits(text, radix)[::-1], radix)

    @classmethod
    def ones_then_zeros(cls, ones: int, zeros: int, radix: int) -> "DigitString":
        """`ones` chiffres 1 suivis de `zeros` chiffres 0 (écriture poids fort en tête)."""
        if ones == 0:
            return cls.trusted((0,), radix)
        return cls.model_construct(digits=(0,) * zeros + (1,) * ones, radix=radix)

    @property
    def value(self) -> int:
        value = 0
        for digit in reversed(self.digits):
            value = value * self.radix + digit
        return value

    @property
    def is_zero(self) -> bool:
        return self.digits == (0,)

    def value_exceeds(self, limit: int) -> bool:
        # b^(n-1) >= 2^(n-1) > limit dès que n-1 >= limit.bit_length()
        if len(self.digits) - 1 >= max(limit, 1).bit_length():
            return True
        return self.value > limit

    def render(self) -> str:
        return join_digits(self.digits[::-1], self.radix)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return self.render()
