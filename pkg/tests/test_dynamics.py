""" Tests for cardinalities, cylinders, disks and B_{m,n} membership """

import itertools

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from grossca.errors import DomainError, EnumerationGuardError
from grossca.modules import dynamics
from grossca.modules.ca import rule_from_totalistic, rule_from_wolfram_elementary, shift_rule
from grossca.modules.configuration import constant, random_config, set_at
from grossca.modules.dynamics import (
    BmnSpec,
    CylinderSpec,
    DiskSpec,
    bmn_enumerate_cyclic,
    bmn_member_finite,
    cyclic_member,
    cylinder_contains,
    disk_cardinality,
    disk_contains,
    shift_bmn_bound,
    shift_bmn_direct_count,
    shift_bmn_exact,
    space_cardinality,
)
from grossca.modules.grossnum import OMEGA, gq_format, gq_mul, gq_pow
from grossca.modules.metric import distance

seeds = integers(0, 2 ** 32 - 1)
lefts = integers(-3, 0)
rights = integers(0, 3)


def sample(seed):
    return random_config(seed, 2, 8, 4)


###################################################################################################
# Counting
###################################################################################################

@pytest.mark.parametrize("s, text", [(2, "2^(2①+1)"), (3, "3^(2①+1)")])
def test_space_cardinality(s, text):
    assert gq_format(space_cardinality(s)) == text
    assert space_cardinality(s) == gq_mul(gq_pow(s, OMEGA), gq_pow(s, OMEGA), s)


def test_disk_cardinality():
    assert gq_format(disk_cardinality(2, -2, 3)) == "2^(2①-5)"
    assert disk_cardinality(2, 0, 0) == gq_pow(2, 2 * OMEGA)
    assert disk_cardinality(2, 0, 0) * 2 == space_cardinality(2)
    for m, n in [(-2, 3), (0, 4), (-5, 0)]:
        assert disk_cardinality(3, m, n) * 3 ** (n - m + 1) == space_cardinality(3)
    with pytest.raises(DomainError):
        disk_cardinality(2, 1, 3)
    with pytest.raises(DomainError):
        disk_cardinality(2, -1, -1)


def test_shift_bound():
    assert gq_format(shift_bmn_bound(2)) == "2^① + 1"
    assert gq_format(shift_bmn_bound(3)) == "3^① + 1"
    for m in range(0, -6, -1):
        assert shift_bmn_bound(2) > shift_bmn_direct_count(2, m)
    assert gq_format(shift_bmn_direct_count(2, -2)) == "2^(①-2)"
    with pytest.raises(DomainError):
        shift_bmn_direct_count(2, 1)


###################################################################################################
# Cylinders and disks
###################################################################################################

def test_cylinders(one_sided):
    _, y = one_sided
    assert cylinder_contains(CylinderSpec(0, 0, (1,)), constant(2, 1))
    assert cylinder_contains(CylinderSpec(-2, 0, (1, 1, 1)), y)
    assert not cylinder_contains(CylinderSpec(-3, 0, (1, 1, 1, 1)), y)
    with pytest.raises(DomainError):
        CylinderSpec(0, 2, (1, 1))
    with pytest.raises(DomainError):
        CylinderSpec(2, 0, ())


def test_disk_spec():
    x = constant(2, 0)
    disk = DiskSpec(x, -2, 3)
    assert disk.as_cylinder() == CylinderSpec(-2, 3, (0,) * 6)
    assert disk.radius == gq_pow(2, -5)
    with pytest.raises(DomainError):
        DiskSpec(x, 1, 2)


@given(seeds, seeds, lefts, rights)
@settings(max_examples=200)
def test_disk_membership_bounds_distance(seed_x, seed_y, m, n):
    x, y = sample(seed_x), sample(seed_y)
    if disk_contains(DiskSpec(x, m, n), y):
        assert distance(x, y) <= gq_pow(2, -(n + 1 - m))


@given(seeds, seeds, seeds, lefts, rights, integers(0, 3), integers(0, 3))
@settings(max_examples=200)
def test_disks_with_nested_windows_are_nested_or_disjoint(seed_a, seed_b, seed_p, m, n, grow_left, grow_right):
    a, b = sample(seed_a), sample(seed_b)
    inner = DiskSpec(a, m, n)
    outer = DiskSpec(b, m - grow_left, n + grow_right)
    points = [a, b, sample(seed_p)] + [set_at(b, i, 1 - b(i)) for i in range(m - 4, n + 5)]
    inside_inner = {i for i, p in enumerate(points) if disk_contains(inner, p)}
    inside_outer = {i for i, p in enumerate(points) if disk_contains(outer, p)}
    assert inside_outer <= inside_inner or not (inside_outer & inside_inner)


def test_asymmetric_disks_overlap_without_nesting():
    x = constant(2, 0)
    left_heavy, right_heavy = DiskSpec(x, -2, 1), DiskSpec(x, -1, 2)
    y, z = set_at(x, -2, 1), set_at(x, 2, 1)
    assert disk_contains(left_heavy, x) and disk_contains(right_heavy, x)
    assert disk_contains(right_heavy, y) and not disk_contains(left_heavy, y)
    assert disk_contains(left_heavy, z) and not disk_contains(right_heavy, z)


###################################################################################################
# Finite-horizon B_{m,n}
###################################################################################################

def test_shift_membership_follows_disagreement():
    sigma = shift_rule(2)
    x = sample(11)
    y = set_at(x, 6, 1 - x(6))
    assert bmn_member_finite(BmnSpec(sigma, x, -1, 1, 4), y)
    assert not bmn_member_finite(BmnSpec(sigma, x, -1, 1, 5), y)
    z = set_at(x, -3, 1 - x(-3))
    for horizon in (0, 5, 20):
        assert bmn_member_finite(BmnSpec(sigma, x, -1, 1, horizon), z)
    assert shift_bmn_exact(x, z, -1)
    assert not shift_bmn_exact(x, y, -1)


def test_rule128_zero_spreads_into_window():
    rule = rule_from_wolfram_elementary(128)
    ones = constant(2, 1)
    y = set_at(ones, 4, 0)
    assert bmn_member_finite(BmnSpec(rule, ones, -1, 1, 2), y)
    assert not bmn_member_finite(BmnSpec(rule, ones, -1, 1, 3), y)


@given(seeds, seeds, lefts, rights, integers(0, 6))
@settings(max_examples=150)
def test_membership_is_monotone(seed_x, seed_y, m, n, horizon):
    rule = rule_from_wolfram_elementary(seed_x % 256)
    x = sample(seed_x)
    y = set_at(sample(seed_y), 0, x(0))
    if bmn_member_finite(BmnSpec(rule, x, m, n, horizon + 1), y):
        assert bmn_member_finite(BmnSpec(rule, x, m, n, horizon), y)
    if bmn_member_finite(BmnSpec(rule, x, m - 1, n + 1, horizon), y):
        assert bmn_member_finite(BmnSpec(rule, x, m, n, horizon), y)


@given(seeds, seeds, lefts, rights)
@settings(max_examples=150)
def test_shift_horizon_matches_exact_agreement(seed_x, seed_y, m, n):
    x = sample(seed_x)
    y = set_at(x, seed_y % 17 - 8, (seed_y >> 8) % 2)
    assert bmn_member_finite(BmnSpec(shift_rule(2), x, m, n, 64), y) == shift_bmn_exact(x, y, m)


def test_bmn_spec_validation():
    with pytest.raises(DomainError):
        BmnSpec(shift_rule(2), constant(2, 0), 1, 1, 3)
    with pytest.raises(DomainError):
        BmnSpec(shift_rule(2), constant(2, 0), 0, 1, -1)
    with pytest.raises(DomainError):
        BmnSpec(shift_rule(3), constant(2, 0), 0, 1, 1)


###################################################################################################
# Cyclic enumeration
###################################################################################################

def constrained_residues(m, n, horizon, cells):
    return len({i % cells for i in range(m, n + horizon + 1)})


@pytest.mark.parametrize("horizon", [0, 1, 2, 5, 8])
def test_cyclic_shift_count(horizon):
    word = (0, 0, 0, 1, 0, 0, 0, 0)
    result = bmn_enumerate_cyclic(shift_rule(2), word, -1, 1, horizon)
    assert result.count == 2 ** (8 - constrained_residues(-1, 1, horizon, 8))
    assert word in result.members
    assert list(result.members) == sorted(result.members)


def test_cyclic_horizon_zero_pins_only_the_window():
    result = bmn_enumerate_cyclic(rule_from_wolfram_elementary(110), (1, 0, 1, 1, 0, 1), -2, 1, 0)
    assert result.count == 2 ** (6 - 4)
    assert result.candidates == 2 ** 6


def test_cyclic_rule128_matches_direct_simulation():
    rule = rule_from_wolfram_elementary(128)
    word = (1,) * 8
    result = bmn_enumerate_cyclic(rule, word, 0, 0, 3, chunk_size=16, max_threads=4)
    expected = [y for y in itertools.product((0, 1), repeat=8) if cyclic_member(rule, word, y, 0, 0, 3)]
    assert list(result.members) == expected
    assert all(y[5] == y[0] == y[3] == 1 for y in result.members)


def test_cyclic_threads_do_not_change_the_result():
    rule = rule_from_wolfram_elementary(30)
    word = (0, 1, 1, 0, 1, 0, 0, 1, 1, 1)
    single = bmn_enumerate_cyclic(rule, word, -1, 1, 4, chunk_size=64, max_threads=1)
    pooled = bmn_enumerate_cyclic(rule, word, -1, 1, 4, chunk_size=64, max_threads=4)
    assert single == pooled


def test_cyclic_guard():
    with pytest.raises(EnumerationGuardError, match="21"):
        bmn_enumerate_cyclic(shift_rule(2), (0,) * 21, 0, 0, 1)
    with pytest.raises(DomainError):
        bmn_enumerate_cyclic(shift_rule(2), (), 0, 0, 1)


def test_cyclic_candidate_guard():
    with pytest.raises(EnumerationGuardError, match="candidates"):
        bmn_enumerate_cyclic(rule_from_totalistic(5, 3, 1), (0, 1, 2) * 6 + (0, 1), 0, 0, 0)
    with pytest.raises(EnumerationGuardError, match="2\\^8 = 256"):
        bmn_enumerate_cyclic(shift_rule(2), (0,) * 8, 0, 0, 1, max_candidates=2 ** 7)
    assert bmn_enumerate_cyclic(shift_rule(2), (0,) * 8, 0, 0, 1, max_candidates=2 ** 8).candidates == 256


@pytest.mark.parametrize("max_threads", [1, 4])
def test_cyclic_worker_failure_is_raised(monkeypatch, max_threads):
    decode = dynamics._decode

    def failing_decode(indices, s, cells):
        if len(indices) and indices[0] >= 16:
            raise RuntimeError("decode failed")
        return decode(indices, s, cells)

    monkeypatch.setattr(dynamics, "_decode", failing_decode)
    with pytest.raises(RuntimeError, match="decode failed"):
        bmn_enumerate_cyclic(shift_rule(2), (0,) * 8, -1, 1, 1, chunk_size=16, max_threads=max_threads)
