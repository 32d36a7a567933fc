"""Test the field configurations, the Lagrangian density and its gauge variations."""
import numpy as np
import pytest

from spinlink.algebra import octonion_table, quaternion_table
from spinlink.errors import (
    AlgebraMismatchError,
    SingularVierbeinError,
    UnsupportedSectorError,
)
from spinlink.fields import (
    CouplingConfig,
    FieldConfiguration,
    ParameterField,
    evaluate_fields,
)
from spinlink.generators import GeneratorSet
from spinlink.lagrangian import (
    MASS_NORMALIZATION,
    build_projectors,
    charge_constraint_scan,
    covariant_derivative,
    default_operators,
    gauge_variation,
    inner_imaginary_part,
    lagrangian_density,
    lagrangian_density_complex,
    mass_term_decomposition,
    run_lagrangian_checks,
    verify_projector_commutation,
    verify_projectors,
)
from spinlink.linalg import CMatrix, Scalar
from spinlink.models import Expected, GaugeSector, LagrangianPart, ScanGrid, Side


@pytest.fixture(scope="module")
def exact_gs():
    return GeneratorSet.build(quaternion_table())


@pytest.fixture
def couplings():
    return CouplingConfig()


@pytest.fixture
def random_fields():
    return FieldConfiguration.random(seed=21)


@pytest.fixture
def point():
    return np.array([0.1, -0.4, 0.3, 0.7])


def test_zero_spinors_give_zero_density(couplings, point):
    """Psi = 0 makes every term vanish."""
    fc = FieldConfiguration.flat(np.zeros(4), np.zeros(4))
    assert lagrangian_density(fc, couplings, point) == 0.0


def test_plane_wave_covariant_derivative(couplings, point):
    """With all connections off, D_mu psi = i k_mu psi."""
    chi = np.array([1.0, 0.5j, -0.25, 2.0])
    k = np.array([0.3, -1.2, 0.8, 0.5])
    fc = FieldConfiguration.flat(chi, chi, wave_l=k, wave_r=k)
    psi = chi * np.exp(1j * point @ k)
    for mu in range(4):
        d = covariant_derivative(Side.L, fc, couplings, point, mu)
        np.testing.assert_allclose(d, 1j * k[mu] * psi, atol=1e-12)


def test_density_is_real(random_fields, couplings, point):
    """L = X + X* has no imaginary part, and the inner terms are real on their own."""
    value = lagrangian_density_complex(random_fields, couplings, point)
    assert value.imag == 0.0
    assert inner_imaginary_part(random_fields, couplings, point) < 1e-9


def test_parts_add_up(random_fields, couplings, point):
    """Kinetic, inner and mass parts sum to the total density."""
    parts = sum(
        lagrangian_density(random_fields, couplings, point, part)
        for part in (LagrangianPart.KINETIC, LagrangianPart.INNER, LagrangianPart.MASS)
    )
    total = lagrangian_density(random_fields, couplings, point)
    assert parts == pytest.approx(total, abs=1e-12)


def test_mass_term_splits_into_channels(random_fields, couplings, point):
    """The mass term is the sum of electron and neutrino channels."""
    e, nu = mass_term_decomposition(random_fields, couplings, point)
    mass = lagrangian_density(random_fields, couplings, point, LagrangianPart.MASS)
    assert MASS_NORMALIZATION * (e + nu) == pytest.approx(mass, abs=1e-12)


def test_singular_vierbein_raises(couplings, point):
    fc = FieldConfiguration.flat(np.ones(4), np.ones(4)).with_fields(
        vierbein_offset=np.zeros((4, 4))
    )
    with pytest.raises(SingularVierbeinError):
        evaluate_fields(fc, point)
    with pytest.raises(SingularVierbeinError):
        lagrangian_density(fc, couplings, point)


def test_unknown_sector_raises(random_fields, couplings, point):
    beta = ParameterField.constant(GaugeSector.U1, 0.2)
    with pytest.raises(UnsupportedSectorError):
        gauge_variation("weak", random_fields, couplings, beta, point)
    with pytest.raises(UnsupportedSectorError):
        gauge_variation(GaugeSector.SU2, random_fields, couplings, beta, point)


def test_parameter_shapes():
    with pytest.raises(ValueError):
        ParameterField.constant(GaugeSector.SU2, [0.1, 0.2])
    eps = ParameterField.constant(GaugeSector.LORENTZ, np.triu(np.ones((4, 4)), 1))
    np.testing.assert_allclose(eps.offset, -eps.offset.T)
    assert eps.is_constant


@pytest.mark.parametrize("sector", list(GaugeSector))
def test_local_invariance(sector, couplings):
    """The full density is invariant under local transformations of every sector."""
    rng = np.random.default_rng(13)
    for k in range(3):
        fc = FieldConfiguration.random(seed=100 + k)
        param = ParameterField.random(sector, rng)
        x = rng.uniform(-1.0, 1.0, size=4)
        assert abs(gauge_variation(sector, fc, couplings, param, x)) < 1e-9


def test_sigma_structure_constants_fit_both_sides():
    """The Lorentz structure constants reproduce the brackets of Sigma_L and Sigma_R."""
    ops = default_operators()
    for side in (Side.L, Side.R):
        gens = np.stack(ops.sigma[side])
        for p, q in np.ndindex(len(gens), len(gens)):
            bracket = gens[p] @ gens[q] - gens[q] @ gens[p]
            expected = np.einsum("r,rij->ij", ops.sigma_structure[p, q], gens)
            np.testing.assert_allclose(bracket, expected, atol=1e-12)


@pytest.mark.parametrize("local", [False, True])
def test_lorentz_invariance_right_handed(local, couplings):
    """Only psi_R switched on, nonzero spin connection: delta L still vanishes."""
    base = FieldConfiguration.random(seed=7)
    fc = base.with_fields(
        chi={Side.L: np.zeros(4, complex), Side.R: base.chi[Side.R]},
        spinor_slope={
            Side.L: np.zeros((4, 4), complex),
            Side.R: base.spinor_slope[Side.R],
        },
    )
    assert np.any(fc.omega_offset != 0)
    rng = np.random.default_rng(11)
    eps = ParameterField.random(GaugeSector.LORENTZ, rng, local=local)
    for x in rng.uniform(-1.0, 1.0, size=(3, 4)):
        assert abs(gauge_variation("lorentz", fc, couplings, eps, x)) < 1e-9


def test_u1_mass_term_needs_equal_hypercharges(random_fields, point):
    """The mass term is U(1) invariant only when y_L = y_R."""
    beta = ParameterField.random(GaugeSector.U1, np.random.default_rng(3))
    mass = LagrangianPart.MASS
    equal = CouplingConfig(y_l=-1.0, y_r=-1.0)
    unequal = CouplingConfig(y_l=-1.0, y_r=0.0)
    assert abs(gauge_variation("u1", random_fields, equal, beta, point, mass)) < 1e-10
    assert abs(gauge_variation("u1", random_fields, unequal, beta, point, mass)) > 1e-6


def test_charge_scan_rows():
    """One row per assignment and sector; the physical charges are invariant."""
    grid = ScanGrid(
        t_l=[0.5], t_r=[-0.5, 0.5], y_l=[-1.0], y_r=[-1.0], m=[0.5], sectors="su2,u1"
    )
    rows = charge_constraint_scan(grid, seed=2, points=2)
    assert len(rows) == 4
    by_key = {(r.t_r, r.sector): r.max_abs_variation for r in rows}
    assert by_key[(-0.5, GaugeSector.SU2)] < 1e-10
    assert by_key[(-0.5, GaugeSector.U1)] < 1e-10
    assert by_key[(0.5, GaugeSector.SU2)] > 1e-6


def test_projectors_are_rank_two_idempotents(exact_gs):
    """P^2 = P, tr P = 2 and the pair sums to the identity."""
    ps = build_projectors(exact_gs)
    for side, _, p in ps.items():
        assert p @ p == p
        assert p.trace() == Scalar.exact(2)
    for side in (Side.L, Side.R):
        assert ps.electron[side] + ps.neutrino[side] == CMatrix.identity(4)
    results = verify_projectors(ps, exact_gs)
    assert all(r.passed for r in results if r.counts)


def test_projectors_need_quaternions():
    with pytest.raises(AlgebraMismatchError):
        build_projectors(GeneratorSet.build(octonion_table()))


def test_run_lagrangian_checks(exact_gs):
    """The full check list passes on a handful of points."""
    results = run_lagrangian_checks(exact_gs, seed=5, points=4)
    by_id = {r.check_id: r for r in results}
    assert all(r.passed for r in results if r.counts)
    assert by_id["lagrangian.u1_mass_unequal_charges"].expected is Expected.FAIL
    assert "lagrangian.local_lorentz" in by_id


def test_projectors_pass_through_own_sigma(exact_gs):
    """P_X is built from the mirror Gammas, so it commutes with every Sigma_{X|ab}."""
    ps = build_projectors(exact_gs)
    results = {r.check_id: r for r in verify_projector_commutation(ps, exact_gs)}
    for side in (Side.L, Side.R):
        check = results[f"projectors.commute_sigma_{side.value}"]
        assert check.holds
        assert check.expected is Expected.RECORD
        for pair in exact_gs.pairs:
            s = exact_gs.sigma[side][pair]
            assert ps.electron[side] @ s == s @ ps.electron[side]
        assert results[f"projectors.noncommute_inner_{side.value}[1]"].passed
