# app/models/requests.py
from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.params import Params


class ParamsRequest(BaseModel):
    c: int = Field(ge=0)
    b: int = Field(ge=2)

    @property
    def params(self) -> Params:
        return Params(c=self.c, b=self.b)


class SearchRunRequest(ParamsRequest):
    u: int
    length: int = Field(ge=1)
    limit: int = Field(ge=1)
    first: bool = False
    stride: Optional[int] = Field(default=None, ge=1)


class GoodRequest(ParamsRequest):
    set: List[int] = Field(min_length=1)
    u: int
    normalize: bool = False
    cap: Optional[int] = Field(default=None, ge=1)


class CycleGoodRequest(ParamsRequest):
    set: List[int] = Field(min_length=1)


class ConsecRequest(ParamsRequest):
    u: int
    length: int = Field(ge=1, le=1000)
