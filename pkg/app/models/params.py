# app/models/params.py
import math

from pydantic import BaseModel, ConfigDict, Field


class Params(BaseModel):
    """Couple [c,b] de S_[c,b] : constante additive c et base b."""

    model_config = ConfigDict(frozen=True)

    c: int = Field(ge=0)
    b: int = Field(ge=2)

    @property
    def d(self) -> int:
        # pas des suites d-consécutives
        return math.gcd(2, self.b - 1)

    @property
    def m(self) -> int:
        from app.services.dynamics import descent_exponent
        return descent_exponent(self)

    @property
    def bound(self) -> int:
        from app.services.dynamics import enumeration_bound
        return enumeration_bound(self)

    @property
    def label(self) -> str:
        return f"[{self.c},{self.b}]"

    def summary(self) -> dict:
        return {"c": self.c, "b": self.b, "d": self.d, "m": self.m, "B": self.bound}
