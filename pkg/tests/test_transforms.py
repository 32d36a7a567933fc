"""Test finite Lorentz transformations of spinors and vectors."""
import numpy as np
import pytest
from pydantic import ValidationError

from spinlink.algebra import quaternion_table
from spinlink.errors import ModeMismatchError, ShapeMismatchError
from spinlink.generators import GeneratorSet
from spinlink.linalg import FLOAT, CMatrix, deviation
from spinlink.models import Side
from spinlink.transforms import (
    BoostRotationParams,
    bilinear_negative_control,
    build_lambdas,
    mat_exp,
    run_transform_checks,
    verify_bilinear_invariants,
    verify_group_property,
    verify_transformation_laws,
    worst_case,
)


@pytest.fixture(scope="module")
def float_gs():
    return GeneratorSet.build(quaternion_table(), FLOAT)


def test_mat_exp_of_zero_and_diagonal():
    """exp(0) = 1 and exp(diag(d)) = diag(exp(d))."""
    assert mat_exp(CMatrix.zeros(3, mode=FLOAT)) == CMatrix.identity(3, FLOAT)
    d = np.array([0.5, -1.0, 2.0 + 1.0j])
    result = mat_exp(CMatrix.from_numpy(np.diag(d))).to_numpy()
    np.testing.assert_allclose(result, np.diag(np.exp(d)), atol=1e-12)


def test_mat_exp_rejects_bad_input():
    with pytest.raises(ModeMismatchError):
        mat_exp(CMatrix.identity(2))
    with pytest.raises(ShapeMismatchError):
        mat_exp(CMatrix.zeros(2, 3, mode=FLOAT))


def test_params_validation():
    """theta must be antisymmetric and within the cap."""
    with pytest.raises(ValidationError):
        BoostRotationParams(theta=[[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValidationError):
        BoostRotationParams.from_pairs(4, {(0, 1): 3.0})
    params = BoostRotationParams.from_pairs(4, {(0, 1): 0.5, (1, 2): -0.25})
    upper = params.upper()
    assert upper[0, 1] == pytest.approx(-0.5)
    assert upper[1, 2] == pytest.approx(-0.25)
    assert upper[2, 1] == pytest.approx(0.25)


def test_random_params_are_seeded():
    a = BoostRotationParams.random(np.random.default_rng(5))
    b = BoostRotationParams.random(np.random.default_rng(5))
    assert a.theta == b.theta
    assert max(abs(v) for row in a.theta for v in row) <= a.cap


def test_identity_transformation(float_gs):
    """Zero parameters give identity Lambdas."""
    t = build_lambdas(BoostRotationParams.zero(), float_gs)
    for side in (Side.L, Side.R, Side.V):
        assert deviation(t.lam[side], float_gs.identity()) < 1e-12


def test_quarter_rotation_of_vectors(float_gs):
    """theta_12 = pi/2 turns the 1-2 plane by a right angle and fixes 0 and 3."""
    params = BoostRotationParams.from_pairs(4, {(1, 2): np.pi / 2})
    lam_v = build_lambdas(params, float_gs).lam_v.to_numpy()
    np.testing.assert_allclose(lam_v.imag, 0.0, atol=1e-12)
    np.testing.assert_allclose(abs(lam_v[1, 2]), 1.0, atol=1e-12)
    np.testing.assert_allclose(lam_v[1, 1], 0.0, atol=1e-12)
    np.testing.assert_allclose(lam_v[0, 0], 1.0, atol=1e-12)
    np.testing.assert_allclose(lam_v[3, 3], 1.0, atol=1e-12)


def test_full_turn_is_minus_one_on_spinors(float_gs):
    """A 2 pi rotation is -1 on spinors and 1 on vectors."""
    params = BoostRotationParams.from_pairs(4, {(1, 2): 2 * np.pi}, cap=7.0)
    t = build_lambdas(params, float_gs)
    minus_one = float_gs.identity().scale(-1.0)
    assert deviation(t.lam_l, minus_one) < 1e-9
    assert deviation(t.lam_r, minus_one) < 1e-9
    assert deviation(t.lam_v, float_gs.identity()) < 1e-9


def test_lambdas_need_float_generators():
    exact = GeneratorSet.build(quaternion_table())
    with pytest.raises(ModeMismatchError):
        build_lambdas(BoostRotationParams.zero(), exact)


def test_transformation_laws_hold(float_gs):
    """Conjugation rules and vector laws hold for a random parameter set."""
    params = BoostRotationParams.random(np.random.default_rng(2))
    t = build_lambdas(params, float_gs)
    results = verify_transformation_laws(t, float_gs)
    assert results
    assert all(r.passed for r in results if r.counts)
    ids = {r.check_id for r in results}
    assert "transforms.vector_law_raised_L" in ids
    assert "transforms.lambda_dagger_R" in ids


def test_bilinears_invariant(float_gs):
    """psi_L^dagger eta psi_R and the kinetic forms are preserved."""
    params = BoostRotationParams.random(np.random.default_rng(4))
    t = build_lambdas(params, float_gs)
    results = verify_bilinear_invariants(t, float_gs, seed=4, samples=3)
    assert {r.check_id for r in results} >= {
        "transforms.bilinear_LR",
        "transforms.kinetic_L",
    }
    assert all(r.passed for r in results)


def test_bilinear_without_eta_changes(float_gs):
    """Dropping eta from the bilinear breaks boost invariance."""
    result = bilinear_negative_control(float_gs, seed=1)
    assert not result.holds
    assert result.passed


def test_group_property(float_gs):
    assert all(r.passed for r in verify_group_property(float_gs))


def test_run_transform_checks_merges_worst_case(float_gs):
    """One result per id over several draws, all passing."""
    results = run_transform_checks(float_gs, seed=9, count=2, samples=2)
    ids = [r.check_id for r in results]
    assert ids == sorted(set(ids))
    assert all(r.passed for r in results if r.counts)
    assert worst_case(results) == results
