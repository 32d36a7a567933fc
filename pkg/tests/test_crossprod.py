"""Test triple cross products, chi tensors and the duality spectrum."""
from fractions import Fraction

import pytest

from spinlink.algebra import AlgebraElement, octonion_table, quaternion_table
from spinlink.crossprod import (
    build_chi,
    build_epsilon4,
    duality_spectrum,
    permutation_sign,
    triple_cross,
    verify_chi_properties,
    verify_cross_properties,
    verify_duality,
    verify_sides_agree,
)
from spinlink.errors import AlgebraMismatchError
from spinlink.linalg import Scalar
from spinlink.models import Side


@pytest.fixture
def quaternions():
    return quaternion_table()


@pytest.fixture
def octonions():
    return octonion_table()


def test_cross_of_units(quaternions):
    """X(e1, e2, e3) is proportional to the remaining unit."""
    e1, e2, e3 = (AlgebraElement.unit(quaternions, k) for k in (1, 2, 3))
    cross = triple_cross(Side.L, e1, e2, e3)
    assert all(c.is_zero() for c in cross.coeffs[1:])
    assert not cross.coeffs[0].is_zero()


@pytest.mark.parametrize("side", [Side.L, Side.R])
@pytest.mark.parametrize("table_factory", [quaternion_table, octonion_table])
def test_cross_properties(side, table_factory):
    """Orthogonality, the Pythagorean identity and alternation hold exactly."""
    results = verify_cross_properties(side, table_factory(), samples=5, seed=11)
    assert [r.holds for r in results] == [True, True, True]


def test_sides_agree_only_for_quaternions(quaternions, octonions):
    """X_L = X_R on quaternions; on octonions they differ as expected."""
    quat = verify_sides_agree(quaternions)
    octo = verify_sides_agree(octonions)
    assert quat.holds and quat.passed
    assert not octo.holds and octo.passed


def test_epsilon_is_levi_civita(quaternions):
    """epsilon_0123 = +1 and the tensor is totally antisymmetric."""
    eps = build_epsilon4(quaternions)
    assert eps[(0, 1, 2, 3)] == Scalar.exact(1)
    assert eps[(1, 0, 2, 3)] == Scalar.exact(-1)
    assert eps[(0, 0, 2, 3)].is_zero()
    assert len(eps.nonzero()) == 24
    assert eps.is_real()


def test_epsilon_needs_quaternions(octonions):
    with pytest.raises(AlgebraMismatchError):
        build_epsilon4(octonions)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2, 3)) == 1
    assert permutation_sign((1, 0, 2, 3)) == -1
    assert permutation_sign((1, 2, 3, 0)) == -1


def test_chi_properties_octonions(octonions):
    """chi is antisymmetric on both sides and the two sides differ."""
    results = {r.check_id: r for r in verify_chi_properties(octonions)}
    assert results["cross.chi_antisymmetric_L_octonion"].holds
    assert results["cross.chi_antisymmetric_R_octonion"].holds
    assert not results["cross.chi_sides_equal_octonion"].holds
    assert all(r.passed for r in results.values() if r.counts)


def test_chi_sides_match_on_quaternions(quaternions):
    left = build_chi(Side.L, quaternions)
    right = build_chi(Side.R, quaternions)
    assert left.nonzero() == right.nonzero()


def test_quaternion_duality_spectrum(quaternions):
    """Self-dual and anti-self-dual halves of dimension three."""
    for side in (Side.L, Side.R):
        report = duality_spectrum(side, quaternions)
        assert sorted(Fraction(v) for v in report.eigenvalues) == [-1, 1]
        assert report.multiplicities == [3, 3]
        assert report.holds


def test_octonion_duality_spectrum(octonions):
    """Eigenspaces of dimension 7 and 21 with opposite spectra on the two sides."""
    reports, checks = verify_duality(octonions)
    pairs = {("1", "-1/3"), ("-1", "1/3")}
    for report in reports:
        assert tuple(report.eigenvalues) in pairs
        assert sorted(report.multiplicities) == [7, 21]
        assert report.minimal_polynomial_residual == "0"
    left, right = reports
    assert left.eigenvalues != right.eigenvalues
    assert all(c.passed for c in checks)


@pytest.mark.parametrize(
    "side, eigenvalues, multiplicities",
    [(Side.L, ["1", "-1/3"], [21, 7]), (Side.R, ["-1", "1/3"], [21, 7])],
)
def test_octonion_spectrum_per_side(octonions, side, eigenvalues, multiplicities):
    """Each side is annihilated by its own eigenvalue pair."""
    report = duality_spectrum(side, octonions)
    assert report.side is side
    assert report.eigenvalues == eigenvalues
    assert report.multiplicities == multiplicities
    assert report.holds
