from .util import (
    P,
    SHIPPED_SYSTEMS,
    segment_shift,
    shipped,
    systems,
    triangle,
    two_cycle,
)
from rotset.errors import CapExceeded, ValidationError
from rotset.polygon import (
    POINT,
    SEGMENT,
    oracle_hull,
    oracle_means,
    oracle_report,
    rotation_polygon,
)
from rotset.rational import Rational2
from rotset.sft import SftSystem, iter_words, psi, trim_to_biextendable
from fractions import Fraction
from hypothesis import given, settings
import pytest


def brute_means(sys, n, periodic):
    sys, _ = trim_to_biextendable(sys)
    out = set()
    for w in iter_words(sys, n, periodic=periodic):
        x, y = psi(sys, w)
        out.add(Rational2(Fraction(x, n), Fraction(y, n)))
    return out


def test_means_full_2_shift():
    assert oracle_means(segment_shift(), 1) == {P(0, 0), P(1, 0)}
    assert oracle_means(segment_shift(), 2) == {P(0, 0), P("1/2", 0), P(1, 0)}


def test_means_two_cycle():
    assert oracle_means(two_cycle(), 2) == {P("1/2", "1/2")}
    assert oracle_means(two_cycle(), 3) == set()


def test_open_words_leave_the_polygon():
    # the word "0" does not close up, and its mean is outside the point polygon
    assert oracle_means(two_cycle(), 1, periodic=False) == {P(1, 0), P(0, 1)}


def test_means_reject_zero_length():
    with pytest.raises(ValidationError):
        oracle_means(segment_shift(), 0)


def test_means_cap():
    with pytest.raises(CapExceeded) as e:
        oracle_means(triangle(), 20, cap=1000)
    assert e.value.exit_code == 5


def test_cap_guard_on_huge_length():
    with pytest.raises(CapExceeded):
        oracle_hull(segment_shift(), 10 ** 9)


def test_means_use_trimmed_system():
    # symbol 0 has no predecessor and never shows up in a periodic word
    sys = SftSystem.build(2, [[1], [1]], [(7, 7), (1, 0)])
    assert oracle_means(sys, 3) == {P(1, 0)}


@given(systems(max_alphabet=3))
@settings(max_examples=100, deadline=None)
def test_means_match_brute_force(sys):
    for n in range(1, 6):
        for periodic in (True, False):
            expected = brute_means(sys, n, periodic)
            assert oracle_means(sys, n, periodic=periodic) == expected


def test_hull_examples():
    seg = oracle_hull(segment_shift(), 3)
    assert seg.tag == SEGMENT
    assert seg.vertices == (P(0, 0), P(1, 0))

    point = oracle_hull(two_cycle(), 4)
    assert point.tag == POINT
    assert point.vertices == (P("1/2", "1/2"),)

    assert oracle_hull(triangle(), 6).vertices == (P(0, 0), P(1, 0), P(0, 1))


@pytest.mark.parametrize("name", SHIPPED_SYSTEMS)
def test_polygon_matches_oracle_shipped(name):
    sys = shipped(name)
    assert rotation_polygon(sys) == oracle_hull(sys, 12)


@given(systems(max_alphabet=4, max_disp=3))
@settings(max_examples=200, deadline=None)
def test_polygon_matches_oracle_random(sys):
    # every vertex is the mean of a simple cycle, so lengths up to A suffice
    trimmed, _ = trim_to_biextendable(sys)
    assert rotation_polygon(sys) == oracle_hull(sys, trimmed.alphabet_size)


@given(systems(max_alphabet=4, max_disp=3))
@settings(max_examples=200, deadline=None)
def test_polygon_matches_oracle_random_long(sys):
    assert rotation_polygon(sys) == oracle_hull(sys, 12)


def test_report_full_2_shift():
    report = oracle_report(segment_shift(), 10)
    assert report["pass"]
    assert len(report["rows"]) == 10
    assert all(r["contained"] and r["within"] for r in report["rows"])
    assert report["equal_at"] == 1


def test_report_triangle():
    report = oracle_report(triangle(), 9)
    assert report["pass"]
    assert report["equal_at"] == 1
    assert report["longest_witness"] == 1
    assert [r["witness"] for r in report["realized"]] == [(0,), (1,), (2,)]


def test_report_two_cycle():
    report = oracle_report(two_cycle(), 4)
    assert report["pass"]
    assert report["equal_at"] == 2
    assert report["lcm_witness_lengths"] == 2
    assert report["realized"][0]["lengths"] == [2, 4]
    # open words of odd length stay within the distance bound
    first = report["rows"][0]
    assert first["max_distance2"] == Fraction(1, 2)
    assert first["within"]


def test_report_too_short_to_reach_equality():
    report = oracle_report(two_cycle(), 1)
    assert report["equal_at"] is None
    assert report["pass"]


@given(systems(max_alphabet=4, max_disp=3))
@settings(max_examples=30, deadline=None)
def test_report_passes_on_random_systems(sys):
    assert oracle_report(sys, 6)["pass"]
