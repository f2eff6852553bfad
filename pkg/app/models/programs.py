# app/models/programs.py
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field

from app.models.digits import DigitString, format_number, parse_number
from app.models.params import Params


class AddStep(BaseModel):
    """I^m : ajoute la constante m."""

    model_config = ConfigDict(frozen=True)

    op: Literal["add"] = "add"
    m: int = Field(ge=0)


class SStep(BaseModel):
    """Application de S_[c,b]."""

    model_config = ConfigDict(frozen=True)

    op: Literal["s"] = "s"


Step = Annotated[AddStep | SStep, Field(discriminator="op")]


class StepProgram(BaseModel):
    """Composée finie de I^m et de S_[c,b], appliquée dans l'ordre des étapes."""

    model_config = ConfigDict(frozen=True)

    params: Params
    steps: tuple[Step, ...] = ()

    def then(self, *steps: AddStep | SStep) -> "StepProgram":
        return StepProgram(params=self.params, steps=self.steps + tuple(steps))

    def extend(self, other: "StepProgram") -> "StepProgram":
        return StepProgram(params=self.params, steps=self.steps + other.steps)

    @property
    def s_count(self) -> int:
        return sum(1 for step in self.steps if isinstance(step, SStep))

    def to_payload(self) -> dict:
        b = self.params.b
        return {
            "params": {"c": self.params.c, "b": b},
            "steps": [
                {"op": "add", "m": format_number(step.m, b)} if isinstance(step, AddStep) else {"op": "s"}
                for step in self.steps
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "StepProgram":
        params = Params(**payload["params"])
        steps = []
        for entry in payload["steps"]:
            if entry["op"] == "add":
                steps.append(AddStep(m=parse_number(entry["m"], params.b)))
            elif entry["op"] == "s":
                steps.append(SStep())
            else:
                raise ValueError(f"Étape inconnue : {entry['op']!r}")
        return cls(params=params, steps=tuple(steps))


class MergeTrace(BaseModel):
    """Détail de la fusion de deux valeurs t1 > t2."""

    case: Literal[1, 2, 3]
    t1: int
    t2: int
    w: int
    j: int | None = None
    r: int | None = None
    r_prime: int | None = None
    m: int | None = None
    m_prime: int | None = None
    v: int | None = None
    merged: int


class NormalizationReport(BaseModel):
    status: Literal["ok", "exceeds_cap"]
    cap: int
    n: DigitString | None = None
    k: int | None = None
    # étape du programme où la limite est franchie, et taille de n' à écrire en 1
    stage: int | None = None
    n_prime_digits: int | None = None

    @property
    def digit_count(self) -> int | None:
        return len(self.n) if self.n is not None else None


class GoodWitness(BaseModel):
    program: StepProgram
    target: int
    domain: tuple[int, ...]
    normalized: NormalizationReport | None = None
