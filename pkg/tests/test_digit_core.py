import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from app.models.digits import DigitString, format_number, parse_number
from app.models.params import Params
from app.services.digit_core import (
    add_small,
    parity_predict,
    s_apply,
    s_iterate,
    s_value,
    to_digits,
)
from app.services.errors import OddRadixRequiredError


@pytest.mark.parametrize("a, b, text", [(42, 10, "42"), (5, 3, "12"), (0, 7, "0"), (3079, 16, "12:0:7")])
def test_to_digits(a, b, text):
    """Décomposition en base b, rendue poids fort en tête."""
    digits = to_digits(a, Params(c=0, b=b))
    assert digits.render() == text
    assert digits.value == a


def test_digits_stored_least_significant_first():
    assert to_digits(42, Params(c=0, b=10)).digits == (2, 4)


@pytest.mark.parametrize("text, c, b, expected", [
    ("4", 0, 10, 16),
    ("42", 4, 10, 24),
    ("20", 5, 3, 9),
    ("1", 7, 9, 8),
    ("0", 6, 10, 6),
])
def test_s_apply(text, c, b, expected):
    """S(a) = c + somme des carrés des chiffres, avec S(0) = c."""
    p = Params(c=c, b=b)
    assert s_apply(DigitString.parse(text, b), p) == expected


def test_s_iterate():
    assert s_iterate(4, 2, Params(c=0, b=10)) == 37
    assert s_iterate(19, 1, Params(c=3, b=10)) == 85
    assert s_iterate(123, 0, Params(c=3, b=10)) == 123


@pytest.mark.parametrize("text, b, x, expected", [
    ("100", 3, 1, "101"),
    ("11120200", 3, 6, "11120220"),
    ("99", 10, 1, "100"),
    ("0", 10, 0, "0"),
])
def test_add_small(text, b, x, expected):
    assert add_small(DigitString.parse(text, b), x).render() == expected


def test_parity_predict():
    p = Params(c=5, b=3)
    assert parity_predict(6, 1, p) == 1
    assert s_iterate(6, 1, p) == 9
    assert parity_predict(5, 2, Params(c=1, b=3)) == s_iterate(5, 2, Params(c=1, b=3)) % 2


def test_parity_predict_rejects_even_radix():
    with pytest.raises(OddRadixRequiredError):
        parity_predict(6, 1, Params(c=5, b=10))


def test_digit_string_rejects_leading_zero():
    """Écriture non canonique refusée."""
    with pytest.raises(ValidationError):
        DigitString(digits=(1, 0), radix=10)
    with pytest.raises(ValidationError):
        DigitString(digits=(3,), radix=3)


def test_digit_string_json_form():
    digits = DigitString.parse("11120200", 3)
    assert digits.model_dump() == {"radix": 3, "text": "11120200"}
    assert DigitString.model_validate(digits.model_dump()) == digits


def test_text_format_errors():
    with pytest.raises(ValueError):
        parse_number("123", 3)
    with pytest.raises(ValueError):
        parse_number("12:16", 16)
    assert parse_number("12:0:7", 16) == 3079
    assert format_number(3079, 16) == "12:0:7"


def test_params_validation():
    with pytest.raises(ValidationError):
        Params(c=-1, b=10)
    with pytest.raises(ValidationError):
        Params(c=0, b=1)
    assert Params(c=0, b=10).d == 1
    assert Params(c=0, b=9).d == 2


@settings(max_examples=300, deadline=None)
@given(a=st.integers(min_value=1, max_value=10 ** 12), k=st.integers(min_value=0, max_value=15),
       c=st.integers(min_value=0, max_value=50), b=st.integers(min_value=1, max_value=9))
def test_parity_matches_iteration(a, k, c, b):
    """S^k(a) ≡ kc + a (mod 2) en base impaire."""
    p = Params(c=c, b=2 * b + 1)
    assert s_iterate(a, k, p) % 2 == parity_predict(a, k, p)


@settings(max_examples=300, deadline=None)
@given(a=st.integers(min_value=0, max_value=10 ** 30), b=st.integers(min_value=2, max_value=40))
def test_digits_round_trip(a, b):
    digits = to_digits(a, Params(c=0, b=b))
    assert digits.value == a
    assert DigitString.parse(digits.render(), b) == digits


@settings(max_examples=300, deadline=None)
@given(data=st.data(), b=st.integers(min_value=2, max_value=16), c=st.integers(min_value=0, max_value=20))
def test_s_depends_on_nonzero_digits_only(data, b, c):
    """Permuter les chiffres ou insérer des zéros ne change pas S."""
    digits = data.draw(st.lists(st.integers(min_value=1, max_value=b - 1), min_size=1, max_size=12))
    zeros = data.draw(st.integers(min_value=0, max_value=5))
    shuffled = data.draw(st.permutations(digits + [0] * zeros))
    p = Params(c=c, b=b)
    assert s_apply(DigitString(digits=tuple(digits), radix=b), p) == \
        s_apply(DigitString.trusted(shuffled, b), p) == c + sum(d * d for d in digits)


@settings(max_examples=300, deadline=None)
@given(a=st.integers(min_value=0, max_value=10 ** 20), x=st.integers(min_value=0, max_value=10 ** 12),
       b=st.integers(min_value=2, max_value=20))
def test_add_small_matches_integer_sum(a, x, b):
    assert add_small(DigitString.from_int(a, b), x).value == a + x


@settings(max_examples=200, deadline=None)
@given(a=st.integers(min_value=0, max_value=10 ** 15), c=st.integers(min_value=0, max_value=30),
       b=st.integers(min_value=2, max_value=36))
def test_fast_square_sum_matches_digits(a, c, b):
    p = Params(c=c, b=b)
    assert s_value(a, p) == s_apply(to_digits(a, p), p)
