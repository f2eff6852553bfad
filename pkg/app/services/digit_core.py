# app/services/digit_core.py
"""Représentation en base b et évaluation de S_[c,b](a) = c + somme des carrés des chiffres."""
from functools import lru_cache

from app.models.digits import DigitString, int_to_digits
from app.models.params import Params
from app.services.errors import OddRadixRequiredError

# taille maximale d'un bloc de chiffres précalculé
_BLOCK_LIMIT = 4096


@lru_cache(maxsize=64)
def _block_table(b: int) -> tuple[int, tuple[int, ...]]:
    block = b
    while block * b <= _BLOCK_LIMIT:
        block *= b
    table = [0] * block
    for x in range(1, block):
        table[x] = table[x // b] + (x % b) ** 2
    return block, tuple(table)


def square_sum(a: int, b: int) -> int:
    """Somme des carrés des chiffres de a en base b (0 pour a = 0)."""
    block, table = _block_table(b)
    total = 0
    while a:
        a, low = divmod(a, block)
        total += table[low]
    return total


def to_digits(a: int, p: Params) -> DigitString:
    return DigitString.from_int(a, p.b)


def s_apply(a: DigitString, p: Params) -> int:
    """S_[c,b] sur une écriture en chiffres ; S(0) = c (somme vide)."""
    if a.radix != p.b:
        raise ValueError(f"Écriture en base {a.radix}, base {p.b} attendue")
    return p.c + sum(d * d for d in a.digits)


def s_value(a: int, p: Params) -> int:
    return p.c + square_sum(a, p.b)


def s_iterate(a: int, k: int, p: Params) -> int:
    if k < 0:
        raise ValueError(f"Nombre d'itérations négatif : {k}")
    for _ in range(k):
        a = s_value(a, p)
    return a


def add_small(a: DigitString, x: int) -> DigitString:
    """a + x avec propagation complète de la retenue."""
    if x < 0:
        raise ValueError(f"Entier naturel attendu, reçu {x}")
    b = a.radix
    digits = list(a.digits)
    carry = x
    i = 0
    while carry:
        if i == len(digits):
            digits.append(0)
        carry, digits[i] = divmod(digits[i] + carry, b)
        i += 1
    return DigitString.trusted(digits, b)


def nonzero_digits(a: int, b: int) -> tuple[int, ...]:
    """Multiensemble trié des chiffres non nuls : S n'en dépend pas d'autre chose."""
    return tuple(sorted(d for d in int_to_digits(a, b) if d))


def parity_predict(a: int, k: int, p: Params) -> int:
    """Parité de S^k(a) en base impaire : kc + a (mod 2)."""
    if p.b % 2 == 0:
        raise OddRadixRequiredError(f"La prédiction de parité exige une base impaire, reçu b = {p.b}")
    return (k * p.c + a) % 2
