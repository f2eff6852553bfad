# app/models/envelope.py
from typing import Any, Literal

from pydantic import BaseModel

from app.models.params import Params

RenderMode = Literal["decimal", "base", "both"]


class OutputEnvelope(BaseModel):
    command: str
    params: dict[str, int] | None = None
    render: RenderMode = "both"
    payload: dict[str, Any]

    @classmethod
    def build(cls, command: str, p: Params | None, payload: dict, render: RenderMode = "both") -> "OutputEnvelope":
        return cls(command=command, params=p.summary() if p else None, render=render, payload=payload)
