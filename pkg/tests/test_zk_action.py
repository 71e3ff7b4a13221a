from math import comb

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from groupoid_homology.dr_finite import (
    ZkAction,
    orbit_count,
    orbit_oracle,
    to_koszul,
    validate_action,
)
from groupoid_homology.errors import DimensionMismatch, NonCommuting, NotBijective
from groupoid_homology.koszul import homology

THREE_CYCLE = ZkAction(3, ((1, 2, 0),))
TWO_SWAPS = ZkAction(4, ((1, 0, 3, 2),))


def perm_power(p, e):
    q = list(range(len(p)))
    for _ in range(e):
        q = [p[i] for i in q]
    return tuple(q)


# --- construction and validation ---------------------------------------------

def test_wrong_length_is_rejected():
    with pytest.raises(DimensionMismatch):
        ZkAction(3, ((1, 2),))


def test_out_of_range_image_is_rejected():
    with pytest.raises(DimensionMismatch):
        ZkAction(3, ((1, 2, 5),))


def test_valid_action_has_no_findings():
    assert validate_action(THREE_CYCLE) == []
    assert validate_action(TWO_SWAPS) == []


def test_non_bijective_map_is_explained():
    findings = validate_action(ZkAction(2, ((0, 0),)))
    assert len(findings) == 1
    assert "never hit" in findings[0] and "surjective" in findings[0]


def test_noncommuting_pair_names_a_witness_point():
    findings = validate_action(ZkAction(3, ((1, 2, 0), (1, 0, 2))))
    assert any("commute" in f and "point" in f for f in findings)


def test_complex_construction_refuses_bad_actions():
    with pytest.raises(NotBijective):
        to_koszul(ZkAction(2, ((0, 0),)))
    with pytest.raises(NonCommuting):
        to_koszul(ZkAction(3, ((1, 2, 0), (1, 0, 2))))


# --- frozen homology values ----------------------------------------------------

def test_single_three_cycle():
    prof = homology(to_koszul(THREE_CYCLE))
    assert [g.describe() for g in prof.groups] == ["Z", "Z"]


def test_two_disjoint_swaps():
    prof = homology(to_koszul(TWO_SWAPS))
    assert [g.describe() for g in prof.groups] == ["Z^2", "Z^2"]


def test_identity_action_sees_every_point():
    a = ZkAction(4, (tuple(range(4)),))
    prof = homology(to_koszul(a))
    assert [g.describe() for g in prof.groups] == ["Z^4", "Z^4"]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_one_point_action_gives_binomial_ranks(k):
    a = ZkAction(1, tuple((0,) for _ in range(k)))
    prof = homology(to_koszul(a))
    assert [g.free_rank for g in prof.groups] == [comb(k, p) for p in range(k + 1)]
    assert all(g.torsion == () for g in prof.groups)


# --- orbit counting -------------------------------------------------------------

def test_orbit_counts():
    assert orbit_count(THREE_CYCLE) == 1
    assert orbit_count(TWO_SWAPS) == 2
    assert orbit_count(ZkAction(4, (tuple(range(4)),))) == 4


def test_orbit_oracle_shape():
    prof = orbit_oracle(ZkAction(1, ((0,), (0,), (0,))))
    assert [g.describe() for g in prof.groups] == ["Z", "Z^3", "Z^3", "Z"]


# --- engine vs oracle ------------------------------------------------------------

@settings(deadline=None, max_examples=60)
@given(st.data())
def test_engine_matches_orbit_oracle_on_cyclic_actions(data):
    n = data.draw(st.integers(1, 8))
    k = data.draw(st.integers(1, 3))
    base = tuple(data.draw(st.permutations(range(n))))
    exps = data.draw(st.lists(st.integers(0, 5), min_size=k, max_size=k))
    a = ZkAction(n, tuple(perm_power(base, e) for e in exps))
    engine = homology(to_koszul(a))
    oracle = orbit_oracle(a)
    assert engine.groups == oracle.groups
    assert all(g.torsion == () for g in engine.groups)
