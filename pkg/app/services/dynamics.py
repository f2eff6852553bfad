# app/services/dynamics.py
"""Points fixes et cycles de S_[c,b], nombres u-attirés et recherche de suites d-consécutives."""
import logging
import multiprocessing
import time
from functools import lru_cache

from app.config import DEFAULT_SCAN_CHUNK
from app.models.cycles import Attraction, Cycle, CycleSet, RunReport
from app.models.params import Params
from app.services.digit_core import s_value
from app.services.errors import NotInCyclesError

logger = logging.getLogger(__name__)


def descent_exponent(p: Params) -> int:
    """Plus petit m >= 1 tel que b^m > b² - 3b + 3 + c : S(a) < a dès que a >= b^m."""
    threshold = p.b * p.b - 3 * p.b + 3 + p.c
    m = 1
    while p.b ** m <= threshold:
        m += 1
    return m


def enumeration_bound(p: Params) -> int:
    """Borne B telle que [1, B] soit stable par S et contienne tous les cycles."""
    m = descent_exponent(p)
    return max(p.b ** m, p.c + m * (p.b - 1) ** 2)


@lru_cache(maxsize=32)
def find_cycles(p: Params) -> CycleSet:
    bound = enumeration_bound(p)
    succ = [0] + [s_value(a, p) for a in range(1, bound + 1)]

    # marquage par point de départ : une valeur revue dans la passe courante ferme un cycle
    seen = [0] * (bound + 1)
    found = []
    for start in range(1, bound + 1):
        if seen[start]:
            continue
        path = []
        a = start
        while not seen[a]:
            seen[a] = start
            path.append(a)
            a = succ[a]
        if seen[a] == start:
            found.append(Cycle.canonical(path[path.index(a):]))
    cycles = tuple(sorted(found, key=lambda cycle: cycle.elements[0]))

    attractor = [-1] * (bound + 1)
    steps = [0] * (bound + 1)
    for cycle_id, cycle in enumerate(cycles):
        for u in cycle.elements:
            attractor[u] = cycle_id
    for start in range(1, bound + 1):
        path = []
        a = start
        while attractor[a] < 0:
            path.append(a)
            a = succ[a]
        for value in reversed(path):
            attractor[value] = attractor[a]
            steps[value] = steps[a] + 1
            a = value

    logger.info("Cycles énumérés", extra={"extra": {
        "params": p.label, "bound": bound, "cycles": len(cycles),
        "lengths": [cycle.length for cycle in cycles],
    }})
    return CycleSet(params=p, cycles=cycles, attractor=tuple(attractor), contact_steps=tuple(steps))


def attraction_target(a: int, cs: CycleSet) -> Attraction:
    """Cycle atteint depuis a et nombre d'itérations jusqu'au premier contact avec U_[c,b]."""
    if a < 1:
        raise ValueError(f"Entier strictement positif attendu, reçu {a}")
    p = cs.params
    bound = len(cs.attractor) - 1
    value, extra = a, 0
    while value > bound:
        value = s_value(value, p)
        extra += 1
    steps = cs.contact_steps[value]
    contact = value
    for _ in range(steps):
        contact = s_value(contact, p)
    return Attraction(value=a, cycle_index=cs.attractor[value], steps=extra + steps, contact=contact)


def trajectory(a: int, cs: CycleSet) -> list[int]:
    """a, S(a), ... jusqu'au premier élément de U_[c,b] inclus."""
    values = [a]
    while values[-1] not in cs:
        values.append(s_value(values[-1], cs.params))
    return values


def is_attracted(a: int, u: int, cs: CycleSet) -> bool:
    cycle_id = cs.index_of(u)
    if cycle_id is None:
        raise NotInCyclesError(u, cs.params.label)
    return attraction_target(a, cs).cycle_index == cycle_id


def _cycle_of(a: int, p: Params, attractor: tuple[int, ...]) -> int:
    bound = len(attractor) - 1
    while a > bound:
        a = s_value(a, p)
    return attractor[a]


def _reaches(a: int, u: int, p: Params) -> bool:
    # contrôle indépendant de la table : itération jusqu'à répétition
    seen = set()
    while a not in seen:
        if a == u:
            return True
        seen.add(a)
        a = s_value(a, p)
    return False


def _scan_chunk(task: tuple) -> list[int]:
    p, cycle_id, lo, hi, length, stride, first = task
    attractor = find_cycles(p).attractor
    span = (length - 1) * stride
    # streak[i] : nombre de valeurs attirées consécutives (pas `stride`) se terminant en lo + i
    streak = []
    starts = []
    for i, a in enumerate(range(lo, hi + span + 1)):
        if _cycle_of(a, p, attractor) == cycle_id:
            streak.append(streak[i - stride] + 1 if i >= stride else 1)
        else:
            streak.append(0)
        start = a - span
        if start >= lo and streak[i] >= length:
            starts.append(start)
            if first:
                break
    return starts


def scan_runs(
    u: int,
    length: int,
    limit: int,
    cs: CycleSet,
    *,
    first: bool = False,
    stride: int | None = None,
    workers: int = 1,
    chunk: int = DEFAULT_SCAN_CHUNK,
) -> list[RunReport]:
    """Débuts a <= limit des suites a, a + d, ..., a + (length-1)d de nombres u-attirés.

    [1, limit] est découpé en tranches disjointes traitées indépendamment puis
    fusionnées dans l'ordre : le résultat ne dépend pas de `workers`.
    """
    p = cs.params
    cycle_id = cs.index_of(u)
    if cycle_id is None:
        raise NotInCyclesError(u, p.label)
    if length < 1:
        raise ValueError(f"Longueur de suite invalide : {length}")
    stride = p.d if stride is None else stride
    if stride < 1:
        raise ValueError(f"Pas invalide : {stride}")

    start_time = time.time()
    tasks = [
        (p, cycle_id, lo, min(lo + chunk - 1, limit), length, stride, first)
        for lo in range(1, limit + 1, chunk)
    ]
    starts: list[int] = []
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(workers) as pool:
            for found in pool.imap(_scan_chunk, tasks):
                starts.extend(found)
                if first and starts:
                    break
    else:
        for task in tasks:
            starts.extend(_scan_chunk(task))
            logger.debug("Tranche analysée", extra={"extra": {"lo": task[2], "hi": task[3], "found": len(starts)}})
            if first and starts:
                break
    if first:
        starts = starts[:1]

    reports = [
        RunReport(
            start=start, stride=stride, length=length, u=u,
            verified=all(_reaches(start + i * stride, u, p) for i in range(length)),
        )
        for start in starts
    ]
    duration = round((time.time() - start_time) * 1000)
    logger.info("Recherche de suites terminée", extra={"extra": {
        "params": p.label, "u": u, "length": length, "stride": stride, "limit": limit,
        "found": len(reports), "workers": workers, "duration_ms": duration,
    }})
    return reports
