"""Test structure tables, algebra elements and the axiom suite."""
import numpy as np
import pytest

import spinlink.algebra as algebra_module
from spinlink.algebra import (
    AlgebraElement,
    StructureTable,
    associator,
    basis,
    cayley_dickson,
    check_algebra_structure,
    check_axiom_suite,
    ensure_certified,
    inner,
    load_table,
    mul,
    octonion_table,
    parse_table,
    quaternion_table,
    validate_table,
)
from spinlink.errors import AlgebraMismatchError, TableError, TableValidationError
from spinlink.linalg import FLOAT, Scalar
from spinlink.models import AlgebraKind, Expected

OCTONION_TRIPLES = [
    (1, 2, 3, 1),
    (1, 4, 5, 1),
    (1, 7, 6, 1),
    (2, 4, 6, 1),
    (2, 5, 7, 1),
    (3, 4, 7, 1),
    (3, 6, 5, 1),
]


@pytest.fixture
def quaternions():
    return quaternion_table()


@pytest.fixture
def octonions():
    return octonion_table()


def test_quaternion_products(quaternions):
    """e1 e2 = e3 and the products anticommute."""
    assert quaternions.unit_product(1, 2) == (1, 3)
    assert quaternions.unit_product(2, 1) == (-1, 3)
    assert quaternions.unit_product(3, 3) == (-1, 0)
    assert quaternions.triples() == [(1, 2, 3, 1)]
    assert quaternions.kind is AlgebraKind.QUATERNION


def test_octonion_default_triples(octonions):
    """The doubled quaternion table carries the documented seven triples."""
    assert octonions.triples() == OCTONION_TRIPLES
    assert octonions.kind is AlgebraKind.OCTONION
    assert octonions.certified


def test_cayley_dickson_matches_default(quaternions, octonions):
    """Doubling the quaternions reproduces the default octonion table."""
    assert cayley_dickson(quaternions).same_algebra(octonions)


def test_contradictory_triples_raise():
    """Two triples assigning different values to one product are rejected."""
    with pytest.raises(TableError):
        StructureTable.from_triples(4, [(1, 2, 3, 1), (2, 1, 3, 1)])


def test_incomplete_or_malformed_triples_raise():
    """Undefined products, bad signs and bad indices are table errors."""
    with pytest.raises(TableError):
        StructureTable.from_triples(8, [(1, 2, 3, 1)])
    with pytest.raises(TableError):
        StructureTable.from_triples(4, [(1, 2, 3, 2)])
    with pytest.raises(TableError):
        StructureTable.from_triples(4, [(1, 1, 3, 1)])
    with pytest.raises(TableError):
        StructureTable.from_triples(6, [(1, 2, 3, 1)])


def test_parse_table_text(quaternions):
    """Comments and blank lines are skipped; the dimension follows the indices."""
    table = parse_table("# quaternions\n\n1 2 3 +1  # e1 e2 = e3\n")
    assert table.same_algebra(quaternions)
    assert not table.certified
    with pytest.raises(TableError):
        parse_table("")
    with pytest.raises(TableError):
        parse_table("1 2 3")
    with pytest.raises(TableError):
        parse_table("1 2 x 1")


def test_load_table_round_trip(tmp_path, octonions):
    """to_text output loads back into the same table."""
    path = tmp_path / "octonions.txt"
    path.write_text(octonions.to_text(), encoding="utf-8")
    assert load_table(path).same_algebra(octonions)
    with pytest.raises(TableError):
        load_table(tmp_path / "missing.txt")


def test_basis_metric(octonions):
    """<e_a, e_b> = eta_ab with e_0 = i."""
    units = basis(octonions)
    assert inner(units[0], units[0]) == Scalar.exact(-1)
    assert inner(units[3], units[3]) == Scalar.exact(1)
    assert inner(units[1], units[2]).is_zero()


def test_octonions_are_not_associative(octonions):
    """(e1 e2) e4 differs from e1 (e2 e4)."""
    e1, e2, e4 = (AlgebraElement.unit(octonions, k) for k in (1, 2, 4))
    assert not associator(e1, e2, e4).is_zero()
    assert associator(e1, e1, e4).is_zero()


def test_mixing_algebras_raises(quaternions, octonions):
    """Elements of different tables do not combine."""
    with pytest.raises(AlgebraMismatchError):
        mul(AlgebraElement.unit(quaternions, 1), AlgebraElement.unit(octonions, 1))


def test_basis_coords_round_trip(quaternions):
    """Coordinates over (i, e_I) convert back to the same element."""
    x = AlgebraElement.from_basis_coords(quaternions, [2, 1, 0, -1])
    assert x.coeffs[0] == Scalar.exact(0, 2)
    assert x.basis_coords()[0] == Scalar.exact(2)


@pytest.mark.parametrize("table_factory", [quaternion_table, octonion_table])
def test_axiom_suite_holds(table_factory):
    """Every required identity holds exactly on the default tables."""
    results = check_axiom_suite(table_factory(), samples=10, seed=3)
    assert all(r.passed for r in results if r.expected is Expected.HOLD)
    assert {r.check_id for r in results} >= {
        "axioms.ip_sym",
        "axioms.ip_move_left",
        "axioms.ip_sum_left",
        "axioms.completeness",
    }


def test_axiom_suite_in_float_mode(octonions):
    """Float mode reports Frobenius deviations under the tolerance."""
    results = check_axiom_suite(octonions, samples=5, seed=1, mode=FLOAT)
    assert all(r.mode is FLOAT for r in results)
    assert all(r.passed for r in results if r.counts)


def test_algebra_structure(quaternions, octonions):
    """Quaternions associate; octonions are only alternative."""
    quat = {r.check_id: r for r in check_algebra_structure(quaternions, samples=5)}
    octo = {r.check_id: r for r in check_algebra_structure(octonions, samples=5)}
    assert quat["algebra.associative"].holds
    assert not octo["algebra.associative"].holds
    assert octo["algebra.associative"].passed
    assert octo["algebra.alternative"].holds
    assert all(r.passed for r in octo.values())


def test_flipped_triple_fails_validation():
    """Reversing one octonion triple breaks the axioms."""
    triples = [(1, 2, 3, -1)] + OCTONION_TRIPLES[1:]
    table = StructureTable.from_triples(8, triples)
    with pytest.raises(TableValidationError) as info:
        validate_table(table, samples=5)
    failed = {r.check_id for r in info.value.failed_checks}
    assert failed & {"axioms.ip_sum_left", "axioms.ip_sum_right"}


def test_ensure_certified(quaternions):
    """A parsed table is certified once it passes; None selects the default."""
    assert ensure_certified(None, AlgebraKind.OCTONION).same_algebra(octonion_table())
    table = ensure_certified(parse_table("1 2 3 1"), AlgebraKind.QUATERNION, samples=5)
    assert table.certified


def test_random_elements_are_seeded(octonions):
    """Equal seeds draw equal elements."""
    x = AlgebraElement.random(octonions, np.random.default_rng(7))
    y = AlgebraElement.random(octonions, np.random.default_rng(7))
    assert x == y


@pytest.fixture
def fresh_defaults():
    quaternion_table.cache_clear()
    octonion_table.cache_clear()
    yield
    quaternion_table.cache_clear()
    octonion_table.cache_clear()


def test_default_tables_run_the_axiom_suite(fresh_defaults, monkeypatch):
    """Both default tables are certified by the axiom suite, once each."""
    seen = []
    original = algebra_module.check_axiom_suite

    def spy(table, *args, **kwargs):
        seen.append(table.dim)
        return original(table, *args, **kwargs)

    monkeypatch.setattr(algebra_module, "check_axiom_suite", spy)
    assert octonion_table().certified
    assert quaternion_table().certified
    octonion_table()
    assert sorted(seen) == [4, 8]
