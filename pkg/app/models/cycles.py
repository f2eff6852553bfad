# app/models/cycles.py
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from app.models.params import Params


class Cycle(BaseModel):
    """Cycle de S_[c,b], tourné pour commencer par son plus petit élément."""

    model_config = ConfigDict(frozen=True)

    elements: tuple[int, ...] = Field(min_length=1)

    @classmethod
    def canonical(cls, elements: list[int]) -> "Cycle":
        start = elements.index(min(elements))
        return cls(elements=tuple(elements[start:] + elements[:start]))

    @property
    def length(self) -> int:
        return len(self.elements)

    @property
    def is_fixed_point(self) -> bool:
        return len(self.elements) == 1

    def predecessor(self, u: int) -> int:
        i = self.elements.index(u)
        return self.elements[i - 1]


class CycleSet(BaseModel):
    """U_[c,b] découpé en cycles, avec la table des attracteurs sur [1, B]."""

    model_config = ConfigDict(frozen=True)

    params: Params
    cycles: tuple[Cycle, ...]
    # attractor[a] / contact_steps[a] pour 1 <= a <= B ; indice 0 inutilisé
    attractor: tuple[int, ...] = Field(default=(), exclude=True, repr=False)
    contact_steps: tuple[int, ...] = Field(default=(), exclude=True, repr=False)

    _index: dict[int, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        for cycle_id, cycle in enumerate(self.cycles):
            for u in cycle.elements:
                self._index[u] = cycle_id

    def index_of(self, u: int) -> int | None:
        return self._index.get(u)

    def __contains__(self, u: int) -> bool:
        return u in self._index

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self._index)


class Attraction(BaseModel):
    value: int
    cycle_index: int
    steps: int
    contact: int


class RunReport(BaseModel):
    """Suite start, start + d, ... de `length` nombres u-attirés."""

    start: int
    stride: int
    length: int
    u: int
    verified: bool

    @property
    def values(self) -> list[int]:
        return [self.start + i * self.stride for i in range(self.length)]
