# app/services/goodness.py
"""Ensembles [c,b]-bons : programmes témoins construits par fusions successives.

Un témoin est un StepProgram P tel que P(t) = u pour tout t de T. La forme
(n, k) avec S^k(t + n) = u s'en déduit en repliant P depuis la fin, mais
chaque traversée de S remplace n' par n' chiffres 1 : la normalisation n'est
tentée que sous une limite de chiffres.
"""
import logging
from functools import lru_cache

from app.config import DEFAULT_NORMALIZE_CAP
from app.models.digits import DigitString
from app.models.params import Params
from app.models.programs import (
    AddStep,
    GoodWitness,
    MergeTrace,
    NormalizationReport,
    SStep,
    StepProgram,
)
from app.services.digit_core import add_small, nonzero_digits, s_apply, s_iterate, s_value, to_digits
from app.services.dynamics import find_cycles
from app.services.errors import CongruenceError, NoSolutionError, NotInImageError

logger = logging.getLogger(__name__)


def apply_step(step: AddStep | SStep, value: int, p: Params) -> int:
    if isinstance(step, AddStep):
        return value + step.m
    return s_value(value, p)


def apply_program(program: StepProgram, value: int) -> int:
    for step in program.steps:
        value = apply_step(step, value, program.params)
    return value


def replay(program: StepProgram, values) -> list[int]:
    return [apply_program(program, value) for value in values]


def is_good_possible(values, p: Params) -> bool:
    values = list(values)
    if not values:
        raise ValueError("Ensemble vide")
    return all((t - values[0]) % p.d == 0 for t in values)


def case3_j(w: int, p: Params) -> int:
    """Plus petit j de [0, b-1) avec 2j ≡ -S(w-1) + c - 1 (mod b-1), où S(0) = c."""
    modulus = p.b - 1
    rhs = (-s_value(w - 1, p) + p.c - 1) % modulus
    for j in range(modulus):
        if (2 * j - rhs) % modulus == 0:
            return j
    raise NoSolutionError(f"Aucun j pour w = {w} dans S_{p.label}")


def _case2(t1: int, t2: int, p: Params) -> tuple[int, int, int]:
    b = p.b
    v = (t1 - t2) // (b - 1)
    # b^r > bv garantit que b^r + bv et b^r + v ont les mêmes chiffres non nuls
    r = 1
    while b ** r <= max(b * v, b * v + t2 - v):
        r += 1
    return v, r, b ** r + v - t2


def merge_pair(t1: int, t2: int, p: Params) -> tuple[StepProgram, MergeTrace]:
    """Programme P formé de I^m et de S avec P(t1) = P(t2)."""
    if t1 < t2:
        t1, t2 = t2, t1
    if t1 == t2 or t2 < 1:
        raise ValueError(f"Deux entiers positifs distincts attendus, reçu {t1} et {t2}")
    if (t1 - t2) % p.d:
        raise CongruenceError(f"{t1} et {t2} ne sont pas congrus modulo {p.d}")
    b = p.b
    w = t1 - t2
    program = StepProgram(params=p)

    if nonzero_digits(t1, b) == nonzero_digits(t2, b):
        program = program.then(SStep())
        trace = MergeTrace(case=1, t1=t1, t2=t2, w=w, merged=s_value(t1, p))
    elif w % (b - 1) == 0:
        v, r, m = _case2(t1, t2, p)
        program = program.then(AddStep(m=m), SStep())
        trace = MergeTrace(case=2, t1=t1, t2=t2, w=w, v=v, r=r, m=m, merged=s_value(t1 + m, p))
    else:
        j = case3_j(w, p)
        # b^r' > t1 : les chiffres de w - 1 restent sous le chiffre de tête j + 1
        r_prime = 1
        while b ** r_prime <= t1:
            r_prime += 1
        m_prime = (j + 1) * b ** r_prime - t2 - 1
        x1, x2 = s_value(t1 + m_prime, p), s_value(t2 + m_prime, p)
        program = program.then(AddStep(m=m_prime), SStep())
        trace = MergeTrace(case=3, t1=t1, t2=t2, w=w, j=j, r_prime=r_prime, m_prime=m_prime, merged=x1)
        if x1 != x2:
            hi, lo = max(x1, x2), min(x1, x2)
            if (hi - lo) % (b - 1):
                raise NoSolutionError(f"Images {hi} et {lo} non congrues modulo {b - 1}")
            v, r, m = _case2(hi, lo, p)
            program = program.then(AddStep(m=m), SStep())
            trace = trace.model_copy(update={"v": v, "r": r, "m": m, "merged": s_value(hi + m, p)})

    logger.debug("Fusion", extra={"extra": {"params": p.label, "case": trace.case, "t1": t1, "t2": t2, "merged": trace.merged}})
    return program, trace


def reduce_to_singleton(values, p: Params) -> StepProgram:
    """Fusionne les deux plus grandes images distinctes jusqu'à n'en garder qu'une."""
    if not is_good_possible(values, p):
        raise CongruenceError(f"Les éléments de {sorted(set(values))} ne sont pas congrus modulo {p.d}")
    current = sorted(set(values), reverse=True)
    program = StepProgram(params=p)
    while len(current) > 1:
        merge, _ = merge_pair(current[0], current[1], p)
        program = program.extend(merge)
        current = sorted(set(replay(merge, current)), reverse=True)
    return program


@lru_cache(maxsize=32)
def _square_digit_counts(b: int) -> tuple[int, ...]:
    """counts[t] : nombre minimal de chiffres de [1, b-1] dont les carrés font t.

    Une solution optimale a au plus 4(b-1)²/(2b-3) chiffres différents de b-1
    (sinon k·(b-1)² plus quatre carrés en fait moins), d'où la taille de la table.
    """
    q = (b - 1) ** 2
    others = 4 * q // (2 * b - 3) if b > 2 else 0
    size = others * (b - 2) ** 2 + q
    squares = [d * d for d in range(1, b)]
    counts = [0] * (size + 1)
    for total in range(1, size + 1):
        counts[total] = 1 + min(counts[total - s] for s in squares if s <= total)
    return tuple(counts)


def find_preimage(u: int, p: Params) -> int:
    """Un v avec S(v) = u.

    Pour u dans U_[c,b] c'est le prédécesseur de u dans son cycle ; sinon le
    plus petit v parmi ceux qui ont le moins de chiffres.
    """
    cs = find_cycles(p)
    cycle_id = cs.index_of(u)
    if cycle_id is not None:
        return cs.cycles[cycle_id].predecessor(u)

    total = u - p.c
    if total <= 0:
        raise NotInImageError(u, p.label)
    b = p.b
    q = (b - 1) ** 2
    counts = _square_digit_counts(b)
    # toute solution optimale contient au moins `nines` chiffres b-1 ; le reste tient dans la table
    nines = max(0, -(-(total - (len(counts) - 1)) // q))
    rest = total - nines * q

    # chiffres croissants, poids fort en tête : plus petite valeur pour ce nombre de chiffres
    value = 0
    for remaining in range(counts[rest], 0, -1):
        for d in range(1, b):
            if d * d <= rest and counts[rest - d * d] == remaining - 1:
                value = value * b + d
                rest -= d * d
                break
    return value * b ** nines + b ** nines - 1


def singleton_witness(t: int, u: int, p: Params) -> tuple[DigitString, int]:
    """(n, 1) avec S(t + n) = u : n = b^r v - t, r minimal."""
    v = find_preimage(u, p)
    r = 0
    while p.b ** r * v < t:
        r += 1
    return to_digits(p.b ** r * v - t, p), 1


def good_witness(values, u: int, p: Params) -> GoodWitness:
    domain = tuple(sorted(set(values)))
    program = reduce_to_singleton(domain, p)
    merged = apply_program(program, domain[0])
    n, _ = singleton_witness(merged, u, p)
    program = program.then(AddStep(m=n.value), SStep())
    logger.info("Témoin construit", extra={"extra": {
        "params": p.label, "size": len(domain), "u": u, "steps": len(program.steps), "s_steps": program.s_count,
    }})
    return GoodWitness(program=program, target=u, domain=domain)


def verify_witness(witness: GoodWitness) -> bool:
    return all(value == witness.target for value in replay(witness.program, witness.domain))


def normalize_witness(witness: GoodWitness, cap: int = DEFAULT_NORMALIZE_CAP) -> NormalizationReport:
    """Réécrit le programme sous la forme S^k(t + n), tant que n tient en `cap` chiffres.

    Repli depuis la fin : I^m ajoute m à n ; une traversée de S remplace n'
    par n' chiffres 1 suivis de r zéros, r étant le nombre de chiffres de la
    plus grande entrée de cette étape.
    """
    program = witness.program
    p = program.params
    peaks = []
    current = list(witness.domain)
    for step in program.steps:
        peaks.append(max(current))
        current = [apply_step(step, value, p) for value in current]

    n = DigitString.from_int(0, p.b)
    k = 0
    for index in reversed(range(len(program.steps))):
        step = program.steps[index]
        if isinstance(step, AddStep):
            n = add_small(n, step.m)
        elif n.is_zero:
            k += 1
        else:
            r = len(to_digits(peaks[index], p))
            if n.value_exceeds(cap - r):
                logger.info("Normalisation abandonnée", extra={"extra": {"params": p.label, "stage": index, "cap": cap}})
                return NormalizationReport(status="exceeds_cap", cap=cap, stage=index, n_prime_digits=len(n))
            n = DigitString.ones_then_zeros(n.value, r, p.b)
            k += 1
        if len(n) > cap:
            return NormalizationReport(status="exceeds_cap", cap=cap, stage=index, n_prime_digits=len(n))
    return NormalizationReport(status="ok", cap=cap, n=n, k=k)


def verify_normalized(domain, u: int, n: DigitString, k: int, p: Params) -> bool:
    """S^k(t + n) = u pour tout t, calculé sur les chiffres."""
    for t in domain:
        shifted = add_small(n, t)
        if k == 0:
            if shifted != to_digits(u, p):
                return False
        elif s_iterate(s_apply(shifted, p), k - 1, p) != u:
            return False
    return True


def sequence_witness(u: int, length: int, p: Params) -> GoodWitness:
    """Témoin pour T = {1..N} (b pair) ou {2, 4, ..., 2N} (b impair)."""
    if length < 1:
        raise ValueError(f"Longueur invalide : {length}")
    domain = [p.d * t for t in range(1, length + 1)]
    return good_witness(domain, u, p)
