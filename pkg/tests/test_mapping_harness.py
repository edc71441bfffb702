from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from distgeom import (
    MappingScenario,
    Verdict,
    cable_strut_passes,
    circumradius_sq,
    construction_distance_matrix,
    embedding_dimension,
    fold_distance_sq,
    theorem2_report,
    verify_bridge,
)

from oracles import coordinate_fold_distance_sq

ts = st.fractions(min_value=-10, max_value=10, max_denominator=50)


def test_scenario_validation():
    with pytest.raises(ValueError):
        MappingScenario(1, 1)
    with pytest.raises(ValueError):
        MappingScenario(3, 0)


@pytest.mark.parametrize("k, edge_sq, expected", [
    (1, 4, 1),
    (2, 1, Fraction(1, 3)),
    (5, 2, Fraction(5, 6)),
])
def test_circumradius(k, edge_sq, expected):
    assert circumradius_sq(k, edge_sq) == expected


@pytest.mark.parametrize("n", [2, 3, 6, 11])
def test_circumradius_matches_sphere_radius(n):
    A_sq = Fraction(7, 3)
    assert circumradius_sq(n - 1, 2 * A_sq) == A_sq * (1 - Fraction(1, n))


def test_construction_n6():
    d = construction_distance_matrix(MappingScenario(6, 1))
    assert d.size == 8
    assert d[0, 1] == Fraction(2, 3)
    assert all(d[i, j] == 2 for i in range(2, 8) for j in range(2, 8) if i != j)
    assert all(d[i, j] == 1 for i in (0, 1) for j in range(2, 8))


def test_construction_n2_is_unit_square():
    d = construction_distance_matrix(MappingScenario(2, 1))
    assert d[0, 1] == 2 and d[2, 3] == 2
    assert [d[0, 2], d[0, 3], d[1, 2], d[1, 3]] == [1, 1, 1, 1]
    assert embedding_dimension(d) == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.fractions(min_value=Fraction(1, 5), max_value=9, max_denominator=5))
def test_construction_dimension_is_n(n, A_sq):
    assert embedding_dimension(construction_distance_matrix(MappingScenario(n, A_sq))) == n


@pytest.mark.parametrize("n, A_sq", [(6, 1), (2, 1), (9, 4)])
def test_bridge_examples(n, A_sq):
    sc = MappingScenario(n, A_sq)
    assert sc.cable_sq / 4 == A_sq / Fraction(n)
    assert verify_bridge(sc)


def test_bridge_grid():
    for n in range(2, 65):
        for A_sq in (Fraction(1), Fraction(3), Fraction(7, 2), Fraction(1, 9)):
            assert verify_bridge(MappingScenario(n, A_sq))


@pytest.mark.parametrize("n, expected", [(6, True), (5, False), (2, False), (7, True)])
def test_cable_strut_examples(n, expected):
    assert cable_strut_passes(n) is expected


def test_cable_strut_agrees_with_float_threshold_away_from_boundary():
    golden = (5 ** 0.5 - 1) / 2
    for n in range(2, 200):
        assert cable_strut_passes(n) == ((2 / n) ** 0.5 < golden)


def test_fold_examples():
    sc = MappingScenario(6, 1)
    assert fold_distance_sq(sc, 0) == Fraction(2, 3)
    assert fold_distance_sq(sc, 1) == Fraction(1, 3)
    assert abs(coordinate_fold_distance_sq(6, 1.0, 1.0) - 1 / 3) < 1e-12


@settings(max_examples=100, deadline=None)
@given(ts, ts)
def test_fold_bounded_and_monotone(t, u):
    sc = MappingScenario(7, Fraction(5, 2))
    ft, fu = fold_distance_sq(sc, t), fold_distance_sq(sc, u)
    assert ft <= sc.cable_sq
    assert (ft == sc.cable_sq) == (t == 0)
    if abs(t) < abs(u):
        assert ft > fu
    assert fold_distance_sq(sc, -t) == ft


def test_fold_matches_coordinate_oracle():
    rng = random.Random(20150417)
    for n in (2, 6, 10):
        sc = MappingScenario(n, 2)
        for _ in range(30):
            t = Fraction(rng.randint(-1000, 1000), 100)
            expected = coordinate_fold_distance_sq(n, 2 ** 0.5, float(t))
            assert abs(float(fold_distance_sq(sc, t)) - expected) <= 1e-9


def test_fold_limit_approaches_zero():
    sc = MappingScenario(6, 1)
    assert fold_distance_sq(sc, 10 ** 6) < Fraction(1, 10 ** 12)


def test_report_n6():
    rep = theorem2_report(MappingScenario(6, 1))
    assert (rep.c_sq, rep.s_sq, rep.ratio_sq) == (Fraction(2, 3), 2, Fraction(1, 3))
    assert rep.threshold_passed and rep.bridge_ok
    assert rep.construction_dimension == 6
    assert rep.flatness is Verdict.FLAT
    assert rep.all_passed


@pytest.mark.parametrize("n, A_sq", [(5, 1), (2, 3)])
def test_report_below_threshold(n, A_sq):
    rep = theorem2_report(MappingScenario(n, A_sq))
    assert rep.bridge_ok and not rep.threshold_passed
    assert rep.construction_ok and rep.flatness is Verdict.FLAT
    assert not rep.all_passed


@pytest.mark.parametrize("n", range(2, 9))
def test_report_ratio_and_flatness(n):
    rep = theorem2_report(MappingScenario(n, Fraction(3, 2)))
    assert rep.ratio_sq == Fraction(2, n)
    assert rep.flatness is Verdict.FLAT
