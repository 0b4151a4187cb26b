"""Singular genera via resolution and the epsilon-perturbation machinery."""

from fractions import Fraction

import pytest

from toricell.fans import f2, p1xp1, p112, p2, zero_pair
from toricell.genus import GenusResult, ell_pair
from toricell.singular import (
    DegeneratePerturbation,
    PerturbationSpec,
    PoleAtEpsilonZero,
    check_perturbation_independence,
    ell_singular_toric,
    limit_eps,
    limit_eps_by_samples,
    perturbed_ell,
    pullback_perturbation,
    validate_perturbation,
)
from toricell.toric import PairCoefficients


def test_singular_genus_of_a1_plane_matches_hirzebruch():
    g = ell_singular_toric(p112(), 3, check_functoriality=True)
    reference = ell_pair(f2(), zero_pair(f2()), 3)
    assert g.series == reference.series


def test_singular_genus_of_smooth_fan_is_plain_genus():
    g = ell_singular_toric(p2(), 2, check_functoriality=False)
    assert g.series == ell_pair(p2(), zero_pair(p2()), 2).series


def test_validate_perturbation_full_boundary():
    fan = p1xp1()
    boundary = PairCoefficients((-1, -1, -1, -1))
    assert validate_perturbation(fan, boundary, PerturbationSpec((1, -1, 0, 0)))
    assert validate_perturbation(fan, boundary, PerturbationSpec((0, 0, 1, -1)))


def test_validate_perturbation_rejects_unbalanced():
    fan = p1xp1()
    pair = PairCoefficients((-1, -1, 0, 0))
    assert not validate_perturbation(fan, pair, PerturbationSpec((1, 1, 1, 0)))
    assert validate_perturbation(fan, pair, PerturbationSpec((1, 1, 0, 0)))


def test_degenerate_perturbation_rejected():
    # A ray with alpha = 0 and b = 0 makes the factor identically singular.
    fan = p1xp1()
    boundary = PairCoefficients((-1, -1, -1, -1))
    with pytest.raises(DegeneratePerturbation):
        perturbed_ell(fan, boundary, PerturbationSpec((1, -1, 0, 0)), 1)


def test_perturbed_genus_without_boundary_matches_ell_pair():
    # No coefficient equals -1 and b is supported away from the alpha = 0
    # locus, so the w-dependence must drop out in the limit.
    fan = p2()
    pair = zero_pair(fan)
    pg = perturbed_ell(fan, pair, PerturbationSpec((1, 1, 1)), 2)
    lim = limit_eps(pg)
    assert isinstance(lim, GenusResult)
    assert lim.series == ell_pair(fan, pair, 2).series


def test_cy_boundary_limits_vanish():
    fan = p2()
    boundary = PairCoefficients((-1, -1, -1))
    for b in (PerturbationSpec((1, 1, -2)), PerturbationSpec((2, -1, -1))):
        assert validate_perturbation(fan, boundary, b)
        lim = limit_eps(perturbed_ell(fan, boundary, b, 3))
        assert isinstance(lim, GenusResult)
        assert lim.is_zero()


def test_limit_strategies_agree():
    fan = p1xp1()
    boundary = PairCoefficients((-1, -1, -1, -1))
    pg = perturbed_ell(fan, boundary, PerturbationSpec((1, -1, 1, -1)), 2)
    lim = limit_eps(pg)
    sampled = limit_eps_by_samples(pg)
    assert isinstance(lim, GenusResult)
    assert sampled is not None and sampled == lim.series


def test_perturbation_independence():
    fan = p2()
    boundary = PairCoefficients((-1, -1, -1))
    assert check_perturbation_independence(
        fan, boundary, PerturbationSpec((1, 1, -2)),
        PerturbationSpec((2, -1, -1)), 2)


def test_independence_rejects_invalid_perturbation():
    fan = p1xp1()
    pair = PairCoefficients((-1, -1, 0, 0))
    with pytest.raises(ValueError):
        check_perturbation_independence(
            fan, pair, PerturbationSpec((1, 1, 0, 0)),
            PerturbationSpec((1, 1, 1, 0)), 1)


def test_designed_pole_case():
    # The -1 components here are not locally Calabi-Yau, so the limit has a
    # simple pole with a nonzero principal part at low q-order.
    fan = p1xp1()
    pair = PairCoefficients((-1, -1, 0, 0))
    spec = PerturbationSpec((1, 1, 0, 0))
    assert validate_perturbation(fan, pair, spec)
    result = limit_eps(perturbed_ell(fan, pair, spec, 2))
    assert isinstance(result, PoleAtEpsilonZero)
    assert result.simple
    assert any(result.principal[k] for k in range(3))
    for parts in result.principal:
        assert all(exp == -1 for exp in parts)


def test_pullback_stability_of_principal_part():
    fan = p1xp1()
    pair = PairCoefficients((-1, -1, 0, 0))
    spec = PerturbationSpec((1, 1, 0, 0))
    new_fan, new_pair, new_spec = pullback_perturbation(fan, pair, spec, (1, 1))
    assert new_spec.b[-1] == Fraction(1)
    assert validate_perturbation(new_fan, new_pair, new_spec)
    before = limit_eps(perturbed_ell(fan, pair, spec, 1))
    after = limit_eps(perturbed_ell(new_fan, new_pair, new_spec, 1))
    assert isinstance(before, PoleAtEpsilonZero)
    assert isinstance(after, PoleAtEpsilonZero)
    assert before.principal == after.principal
