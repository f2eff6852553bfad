# app/services/cycle_goodness.py
"""Ensembles [c,b]-cycle-bons pour c et b impairs, à partir des constantes des tableaux 3 à 5.

Pour un T de parité mixte : les pairs sont envoyés sur v, puis les images
des impairs sur v, ce qui laisse {v, x} avec x impair ; k3 itérations
(multiple de la longueur de C_1) font entrer x dans U_[c,b] et donnent un
V_j. Le tableau 5 ramène V_j dans V_1, le tableau 4 envoie V_1 dans chaque C_i.
"""
import json
import logging
from functools import lru_cache
from pathlib import Path

from app.models.digits import DigitString, parse_number
from app.models.params import Params
from app.models.programs import AddStep, SStep, StepProgram
from app.models.proof import CellCheck, CycleGoodWitness, ProofConstants, Shift
from app.services.digit_core import add_small, s_apply, s_iterate
from app.services.dynamics import attraction_target, find_cycles
from app.services.errors import NotInCyclesError, TableMismatchError, UnsupportedParamsError
from app.services.goodness import good_witness, is_good_possible, replay

logger = logging.getLogger(__name__)

CONSTANTS_PATH = Path(__file__).parent.parent / "data" / "proof_constants.json"

# [c,b] impairs <= 9 ayant plusieurs cycles
A = ((5, 3), (1, 7), (3, 7), (5, 7), (5, 9), (7, 9), (9, 9))


def _shift(cell, b: int) -> Shift | None:
    if cell is None:
        return None
    k, n = cell
    return Shift(k=k, n=DigitString.parse(n, b))


@lru_cache(maxsize=1)
def load_proof_constants() -> dict[tuple[int, int], ProofConstants]:
    with open(CONSTANTS_PATH, encoding="utf-8") as f:
        rows = json.load(f)["rows"]
    constants = {}
    for row in rows:
        b = row["b"]
        constants[(row["c"], b)] = ProofConstants(
            params=Params(c=row["c"], b=b),
            v=parse_number(row["v"], b),
            sets=tuple(frozenset(parse_number(x, b) for x in pair) for pair in row["sets"]),
            cycle_shifts=tuple(_shift(cell, b) for cell in row["cycle_shifts"]),
            set_shifts=tuple(_shift(cell, b) for cell in row["set_shifts"]),
        )
    return constants


def proof_constants(p: Params) -> ProofConstants:
    constants = load_proof_constants().get((p.c, p.b))
    if constants is None:
        raise UnsupportedParamsError(f"Aucune constante tabulée pour {p.label}")
    return constants


def apply_shift(x: int, shift: Shift, p: Params) -> int:
    """S^k(x + n), l'addition étant faite sur les chiffres de n."""
    shifted = add_small(shift.n, x)
    if shift.k == 0:
        return shifted.value
    return s_iterate(s_apply(shifted, p), shift.k - 1, p)


def _shift_program(program: StepProgram, shift: Shift) -> StepProgram:
    return program.then(AddStep(m=shift.n.value), *([SStep()] * shift.k))


def verify_table3(p: Params) -> list[CellCheck]:
    consts = proof_constants(p)
    cs = find_cycles(p)
    row = p.label
    v = consts.v
    checks = [
        CellCheck(table=3, row=row, cell="v", passed=cs.index_of(v) == 0 and v % 2 == 0,
                  detail=f"v = {v} doit être pair et dans C_1"),
    ]
    listed = set()
    for j, pair in enumerate(consts.sets, start=1):
        others = sorted(pair - {v})
        ok = v in pair and len(others) == 1 and others[0] % 2 == 1 and others[0] in cs
        listed.update(others)
        checks.append(CellCheck(table=3, row=row, cell=f"V_{j}", passed=ok, detail=f"V_{j} = {sorted(pair)}"))
    odd_members = {u for u in cs.members if u % 2 == 1}
    checks.append(CellCheck(table=3, row=row, cell="V_j", passed=listed == odd_members,
                            detail=f"impairs de U : {sorted(odd_members)}, listés : {sorted(listed)}"))
    return checks


def verify_table4(p: Params) -> list[CellCheck]:
    consts = proof_constants(p)
    cs = find_cycles(p)
    checks = []
    v1 = consts.sets[0]
    for i, shift in enumerate(consts.cycle_shifts, start=1):
        if shift is None:
            continue
        cell = f"k_{i},n_{i}"
        if i > len(cs.cycles):
            checks.append(CellCheck(table=4, row=p.label, cell=cell, passed=False, detail=f"C_{i} n'existe pas"))
            continue
        cycle = set(cs.cycles[i - 1].elements)
        images = sorted(apply_shift(x, shift, p) for x in v1)
        checks.append(CellCheck(table=4, row=p.label, cell=cell, passed=set(images) <= cycle,
                                detail=f"S^{shift.k}(V_1 + {shift.n.render()}) = {images}"))
    covered = sum(1 for shift in consts.cycle_shifts if shift is not None)
    if covered != len(cs.cycles):
        checks.append(CellCheck(table=4, row=p.label, cell="C_i", passed=False,
                                detail=f"{covered} cases pour {len(cs.cycles)} cycles"))
    return checks


def verify_table5(p: Params) -> list[CellCheck]:
    consts = proof_constants(p)
    v1 = consts.sets[0]
    checks = []
    for j, pair in enumerate(consts.sets[1:], start=2):
        shift = consts.set_shift(j)
        cell = f"k'_{j},n'_{j}"
        if shift is None:
            checks.append(CellCheck(table=5, row=p.label, cell=cell, passed=False, detail="case vide"))
            continue
        images = sorted(apply_shift(x, shift, p) for x in pair)
        checks.append(CellCheck(table=5, row=p.label, cell=cell, passed=set(images) <= v1,
                                detail=f"S^{shift.k}(V_{j} + {shift.n.render()}) = {images}"))
    return checks


def verify_tables(p: Params) -> list[CellCheck]:
    return verify_table3(p) + verify_table4(p) + verify_table5(p)


def _check_supported_pair(p: Params) -> None:
    if not (p.c % 2 == 1 and p.b % 2 == 1 and 1 <= p.c <= 9 and 3 <= p.b <= 9):
        raise UnsupportedParamsError(f"c et b impairs avec c <= 9 et 3 <= b <= 9 requis, reçu {p.label}")


def _pipeline(domain: tuple[int, ...], p: Params) -> CycleGoodWitness:
    consts = proof_constants(p)
    cs = find_cycles(p)
    v = consts.v
    evens = [t for t in domain if t % 2 == 0]
    odds = [t for t in domain if t % 2 == 1]

    even_stage = good_witness(evens, v, p).program
    odd_stage = good_witness(replay(even_stage, odds), v, p).program
    program = even_stage.extend(odd_stage)

    images = set(replay(program, domain))
    others = sorted(images - {v})
    if v not in images or len(others) != 1 or others[0] % 2 == 0:
        raise TableMismatchError(f"Tableau 3 {p.label}", f"image {sorted(images)} au lieu de {{v, x}} avec x impair")
    x = others[0]
    ell = cs.cycles[cs.index_of(v)].length
    k3 = 0
    while x not in cs:
        x = s_iterate(x, ell, p)
        k3 += ell
    program = program.then(*([SStep()] * k3))

    image = frozenset(replay(program, domain))
    j = consts.set_index(image)
    if j is None:
        raise TableMismatchError(f"Tableau 3 {p.label}", f"image {sorted(image)} absente des V_j")
    if j > 1:
        program = _shift_program(program, consts.set_shift(j))

    programs = []
    for i in range(len(cs.cycles)):
        shift = consts.cycle_shifts[i] if i < len(consts.cycle_shifts) else None
        if shift is None:
            raise TableMismatchError(f"Tableau 4 {p.label}", f"aucune case pour C_{i + 1}")
        programs.append(_shift_program(program, shift))
    return CycleGoodWitness(
        params=p, domain=domain, mode="pipeline", programs=tuple(programs),
        even_stage=even_stage, odd_stage=odd_stage, k3=k3, set_index=j,
    )


def cycle_good_witness(values, p: Params) -> CycleGoodWitness:
    domain = tuple(sorted(set(values)))
    if not domain:
        raise ValueError("Ensemble vide")
    cs = find_cycles(p)
    if is_good_possible(domain, p):
        programs = tuple(good_witness(domain, cycle.elements[0], p).program for cycle in cs.cycles)
        witness = CycleGoodWitness(params=p, domain=domain, mode="good", programs=programs)
    elif len(cs.cycles) == 1:
        # un seul cycle : toute trajectoire finit dedans
        k = max(attraction_target(t, cs).steps for t in domain)
        witness = CycleGoodWitness(params=p, domain=domain, mode="single-cycle",
                                   programs=(StepProgram(params=p, steps=(SStep(),) * k),))
    elif (p.c, p.b) in A:
        witness = _pipeline(domain, p)
    else:
        raise UnsupportedParamsError(f"Pas de construction cycle-bonne pour un ensemble de parité mixte avec {p.label}")
    logger.info("Témoin cycle-bon construit", extra={"extra": {
        "params": p.label, "size": len(domain), "mode": witness.mode, "set_index": witness.set_index, "k3": witness.k3,
    }})
    return witness


def verify_cycle_good(witness: CycleGoodWitness) -> bool:
    cs = find_cycles(witness.params)
    if len(witness.programs) != len(cs.cycles):
        return False
    for cycle, program in zip(cs.cycles, witness.programs):
        if not set(replay(program, witness.domain)) <= set(cycle.elements):
            return False
    return True


def consecutive_witness(u: int, length: int, p: Params) -> CycleGoodWitness:
    """Témoin pour T_N = {1, ..., N} : N entiers consécutifs u-attirés."""
    _check_supported_pair(p)
    if length < 1:
        raise ValueError(f"Longueur invalide : {length}")
    cs = find_cycles(p)
    cycle_id = cs.index_of(u)
    if cycle_id is None:
        raise NotInCyclesError(u, p.label)
    witness = cycle_good_witness(range(1, length + 1), p)
    return witness.model_copy(update={"target": u, "target_cycle": cycle_id})
