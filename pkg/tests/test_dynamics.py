import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.models.params import Params
from app.services.digit_core import s_value
from app.services.dynamics import (
    attraction_target,
    descent_exponent,
    enumeration_bound,
    find_cycles,
    is_attracted,
    scan_runs,
    trajectory,
)
from app.services.errors import NotInCyclesError


@pytest.mark.parametrize("c, b, m, bound", [
    (0, 10, 2, 162),
    (26, 10, 2, 188),
    (27, 10, 3, 1000),
    (9, 10, 2, 171),
    (5, 3, 2, 13),
    (0, 2, 1, 2),
])
def test_descent_exponent_and_bound(c, b, m, bound):
    p = Params(c=c, b=b)
    assert descent_exponent(p) == m
    assert enumeration_bound(p) == bound
    assert p.summary() == {"c": c, "b": b, "d": p.d, "m": m, "B": bound}


def test_cycles_of_classic_happy_function():
    """S_[0,10] : le point fixe 1 et le cycle de 4."""
    cs = find_cycles(Params(c=0, b=10))
    assert [cycle.elements for cycle in cs.cycles] == [(1,), (4, 16, 37, 58, 89, 145, 42, 20)]


def test_cycles_c9_b10():
    cs = find_cycles(Params(c=9, b=10))
    fixed = [cycle.elements[0] for cycle in cs.cycles if cycle.is_fixed_point]
    assert fixed == [10, 11, 34, 74, 90, 91]
    assert (46, 61) in [cycle.elements for cycle in cs.cycles]


def test_single_cycle_c7_b3():
    cs = find_cycles(Params(c=7, b=3))
    assert [cycle.elements for cycle in cs.cycles] == [(8, 15, 12, 9)]


def test_cycle_navigation():
    cycle = find_cycles(Params(c=0, b=10)).cycles[1]
    assert cycle.predecessor(4) == 20


def test_attraction_target():
    cs = find_cycles(Params(c=4, b=10))
    attraction = attraction_target(2, cs)
    assert attraction.cycle_index == cs.index_of(6)
    assert attraction.steps == 1
    assert attraction.contact == 8
    assert attraction_target(42, cs).contact == 24
    assert attraction_target(24, cs).steps == 0


def test_attraction_beyond_bound():
    """Les entiers au-delà de B descendent d'abord sous B."""
    cs = find_cycles(Params(c=0, b=10))
    assert attraction_target(10 ** 40, cs).cycle_index == 0
    assert attraction_target(4 * 10 ** 40, cs).cycle_index == 1


def test_trajectory_stops_at_first_cycle_element():
    cs = find_cycles(Params(c=3, b=10))
    assert trajectory(1, cs) == [1, 4, 19]


def test_is_attracted():
    cs = find_cycles(Params(c=3, b=10))
    assert is_attracted(19, 7, cs)
    assert is_attracted(20, 7, cs)
    assert is_attracted(1, 7, cs)
    assert is_attracted(13, 13, cs)
    assert not is_attracted(13, 7, cs)


def test_is_attracted_rejects_u_outside_cycles():
    cs = find_cycles(Params(c=3, b=10))
    with pytest.raises(NotInCyclesError):
        is_attracted(5, 2, cs)


def test_attraction_rejects_zero():
    with pytest.raises(ValueError):
        attraction_target(0, find_cycles(Params(c=0, b=10)))


def test_scan_runs_finds_known_pairs():
    cs = find_cycles(Params(c=3, b=10))
    reports = scan_runs(7, 2, 100, cs)
    starts = [report.start for report in reports]
    assert 1 in starts
    assert 19 in starts
    assert all(report.verified for report in reports)
    assert reports[0].values == [1, 2]


def test_scan_runs_first_happy_pair():
    cs = find_cycles(Params(c=0, b=10))
    reports = scan_runs(1, 2, 2000, cs, first=True)
    assert len(reports) == 1
    assert reports[0].start == 31


def test_scan_runs_default_stride_in_odd_base():
    cs = find_cycles(Params(c=5, b=3))
    reports = scan_runs(6, 2, 50, cs, first=True)
    assert reports[0].stride == 2


def test_scan_runs_parity_blocks_stride_one():
    """c pair, b impair : S conserve la parité, aucun couple a, a+1 n'est attiré par le même cycle."""
    p = Params(c=0, b=9)
    cs = find_cycles(p)
    for cycle in cs.cycles:
        assert scan_runs(cycle.elements[0], 2, 2000, cs, stride=1) == []


def test_scan_runs_independent_of_chunking():
    cs = find_cycles(Params(c=3, b=10))
    single = scan_runs(7, 3, 3000, cs, chunk=3000)
    chunked = scan_runs(7, 3, 3000, cs, chunk=250)
    pooled = scan_runs(7, 3, 3000, cs, chunk=250, workers=2)
    assert single == chunked == pooled
    assert single


def test_scan_runs_rejects_bad_arguments():
    cs = find_cycles(Params(c=3, b=10))
    with pytest.raises(NotInCyclesError):
        scan_runs(8, 2, 100, cs)
    with pytest.raises(ValueError):
        scan_runs(7, 0, 100, cs)


@pytest.mark.slow
def test_first_four_consecutive_happy_numbers():
    cs = find_cycles(Params(c=0, b=10))
    reports = scan_runs(1, 4, 10 ** 5, cs, first=True)
    assert reports[0].start == 7839
    assert reports[0].verified


def test_four_consecutive_attracted_numbers_c3_b10():
    """1, 2, 3, 4 sont tous attirés par le cycle de 7."""
    cs = find_cycles(Params(c=3, b=10))
    reports = scan_runs(7, 4, 10 ** 4, cs, first=True)
    assert reports[0].start == 1
    assert reports[0].verified


def test_odd_c_odd_b_cycles_have_even_length():
    """c et b impairs : pas de point fixe, cycles de longueur paire."""
    for c in range(1, 20, 2):
        for b in range(3, 20, 2):
            for cycle in find_cycles(Params(c=c, b=b)).cycles:
                assert not cycle.is_fixed_point
                assert cycle.length % 2 == 0


@pytest.mark.parametrize("c, b", [(0, 10), (9, 10), (5, 3), (9, 9), (17, 16), (3, 2)])
def test_enumeration_interval_is_forward_closed(c, b):
    p = Params(c=c, b=b)
    bound = enumeration_bound(p)
    assert all(1 <= s_value(a, p) <= bound for a in range(1, bound + 1))


@settings(max_examples=200, deadline=None)
@given(c=st.integers(min_value=0, max_value=40), b=st.integers(min_value=2, max_value=12),
       factor=st.integers(min_value=1, max_value=10 ** 9))
def test_descent_above_threshold(c, b, factor):
    p = Params(c=c, b=b)
    a = b ** descent_exponent(p) * factor
    assert s_value(a, p) < a


@settings(max_examples=200, deadline=None)
@given(c=st.integers(min_value=0, max_value=12), b=st.integers(min_value=2, max_value=12),
       a=st.integers(min_value=1, max_value=10 ** 12))
def test_attraction_stable_under_s(c, b, a):
    p = Params(c=c, b=b)
    cs = find_cycles(p)
    assert attraction_target(s_value(a, p), cs).cycle_index == attraction_target(a, cs).cycle_index
