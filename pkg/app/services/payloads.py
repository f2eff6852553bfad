# app/services/payloads.py
"""Charges utiles JSON communes au CLI et à l'API."""
from app.models.cycles import Attraction, CycleSet, RunReport
from app.models.digits import format_number
from app.models.params import Params
from app.models.programs import GoodWitness, NormalizationReport
from app.models.proof import CycleGoodWitness, TableReport


def show(a: int, b: int, render: str = "both") -> str:
    """Nombre affiché en base b, avec le décimal entre parenthèses si b != 10."""
    if render == "decimal" or b == 10:
        return str(a)
    if render == "base":
        return format_number(a, b)
    return f"{format_number(a, b)} ({a})"


def cycles_payload(cs: CycleSet) -> dict:
    b = cs.params.b
    return {
        "cycles": [
            {
                "elements": list(cycle.elements),
                "digits": [format_number(a, b) for a in cycle.elements],
                "length": cycle.length,
            }
            for cycle in cs.cycles
        ]
    }


def attraction_payload(attraction: Attraction, path: list[int], p: Params, u: int | None, attracted: bool | None) -> dict:
    payload = {
        "value": attraction.value,
        "trajectory": path,
        "trajectory_digits": [format_number(a, p.b) for a in path],
        "cycle_index": attraction.cycle_index,
        "steps": attraction.steps,
        "contact": attraction.contact,
    }
    if u is not None:
        payload.update({"u": u, "attracted": attracted})
    return payload


def runs_payload(reports: list[RunReport]) -> dict:
    return {"count": len(reports), "runs": [report.model_dump() for report in reports]}


def normalization_payload(report: NormalizationReport) -> dict:
    payload = {"status": report.status, "cap": report.cap}
    if report.status == "ok":
        payload.update({"n": report.n.render(), "k": report.k, "digits": report.digit_count})
    else:
        payload.update({"stage": report.stage, "n_prime_digits": report.n_prime_digits})
    return payload


def good_payload(witness: GoodWitness, verified: bool, normalized_verified: bool | None = None) -> dict:
    payload = {
        "domain": list(witness.domain),
        "u": witness.target,
        "program": witness.program.to_payload(),
        "verified": verified,
    }
    if witness.normalized is not None:
        payload["normalized"] = normalization_payload(witness.normalized)
        payload["normalized"]["verified"] = normalized_verified
    return payload


def cycle_good_payload(witness: CycleGoodWitness, verified: bool) -> dict:
    return {
        "domain": list(witness.domain),
        "mode": witness.mode,
        "programs": [program.to_payload() for program in witness.programs],
        "k3": witness.k3,
        "set_index": witness.set_index,
        "target": witness.target,
        "target_cycle": witness.target_cycle,
        "verified": verified,
    }


def tables_payload(reports: list[TableReport]) -> dict:
    return {
        "passed": all(report.passed for report in reports),
        "tables": [
            {
                "table": report.table,
                "rows": report.rows,
                "cells": len(report.cells),
                "passed": report.passed,
                "failures": [cell.model_dump() for cell in report.failures],
            }
            for report in reports
        ],
    }
