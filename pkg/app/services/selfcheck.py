# app/services/selfcheck.py
"""Vérifications aléatoires reproductibles des propriétés de S_[c,b]."""
import logging
import random
import time

from pydantic import BaseModel

from app.models.params import Params
from app.services.digit_core import parity_predict, s_iterate, s_value
from app.services.goodness import good_witness, merge_pair, replay, verify_witness
from app.services.dynamics import find_cycles

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    name: str
    samples: int
    violations: int
    examples: list[str] = []

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _record(result: CheckResult, message: str) -> None:
    result.violations += 1
    if len(result.examples) < 5:
        result.examples.append(message)


def check_descent(rng: random.Random, samples: int) -> CheckResult:
    """a - S(a) > 0 pour a >= b^m."""
    result = CheckResult(name="descent", samples=samples, violations=0)
    for _ in range(samples):
        p = Params(c=rng.randint(0, 50), b=rng.randint(2, 16))
        a = rng.randrange(p.b ** p.m, p.b ** p.m * 10 ** 6)
        if a - s_value(a, p) <= 0:
            _record(result, f"{p.label} a={a}")
    return result


def check_parity(rng: random.Random, samples: int) -> CheckResult:
    """S^k(a) ≡ kc + a (mod 2) en base impaire."""
    result = CheckResult(name="parity", samples=samples, violations=0)
    for _ in range(samples):
        p = Params(c=rng.randint(0, 50), b=rng.randrange(3, 20, 2))
        a, k = rng.randint(1, 10 ** 9), rng.randint(0, 20)
        if s_iterate(a, k, p) % 2 != parity_predict(a, k, p):
            _record(result, f"{p.label} a={a} k={k}")
    return result


def check_merge(rng: random.Random, samples: int) -> CheckResult:
    """P(t1) = P(t2) pour le programme de fusion."""
    result = CheckResult(name="merge", samples=samples, violations=0)
    for _ in range(samples):
        p = Params(c=rng.randint(0, 9), b=rng.randint(2, 10))
        t2 = rng.randint(1, 10 ** 4)
        t1 = t2 + p.d * rng.randint(1, 10 ** 4)
        program, _ = merge_pair(t1, t2, p)
        first, second = replay(program, (t1, t2))
        if first != second:
            _record(result, f"{p.label} t1={t1} t2={t2}")
    return result


def check_good(rng: random.Random, samples: int) -> CheckResult:
    """Le programme témoin envoie tout T sur u."""
    result = CheckResult(name="good", samples=samples, violations=0)
    for _ in range(samples):
        p = Params(c=rng.randint(0, 9), b=rng.randint(2, 10))
        residue = rng.randint(0, p.d - 1)
        size = rng.randint(1, 5)
        domain = {p.d * rng.randint(1, 500) - residue for _ in range(size)}
        u = rng.choice(sorted(find_cycles(p).members))
        witness = good_witness(domain, u, p)
        if not verify_witness(witness):
            _record(result, f"{p.label} T={sorted(domain)} u={u}")
    return result


CHECKS = {
    "descent": check_descent,
    "parity": check_parity,
    "merge": check_merge,
    "good": check_good,
}


def selfcheck(seed: int, samples: int, names=None) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []
    for name in names or CHECKS:
        start = time.time()
        result = CHECKS[name](rng, samples)
        duration = round((time.time() - start) * 1000)
        logger.info("Vérification terminée", extra={"extra": {
            "check": name, "seed": seed, "samples": samples, "violations": result.violations, "duration_ms": duration,
        }})
        results.append(result)
    return results
