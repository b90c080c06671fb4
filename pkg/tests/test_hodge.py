import pytest

from thomforge import (
    ValidationError,
    build_presentation,
    check_euler_purity,
    thom_mhs,
    thom_weights,
    validate_splitting,
    weights_from_splitting,
)

from conftest import load


def test_weights_from_splitting_cpn():
    ring = load("h-cp3-hodge.cdga")
    sw = weights_from_splitting(ring)
    assert sw.positive and sw.smooth_bound
    # weight(x^i) = 2i
    for i, n in ((1, 2), (2, 4), (3, 6)):
        (powers,) = ring.basis(n)
        assert ring.powers_weight(powers) == 2 * i


def test_splitting_validation_rejects_type_breaking_differential():
    with pytest.raises(ValidationError) as err:
        build_presentation(
            [("x", 2, None, (1, 1)), ("y", 7, None, (3, 4))], {"y": "x^4"}, truncate=12
        )
    assert err.value.code in ("weight_violation", "d2_nonzero")


def test_typed_differential_fixture_is_valid():
    pres = load("typed-cp3.cdga")
    assert validate_splitting(pres)
    sw = weights_from_splitting(pres)
    assert sw.positive
    assert sw.smooth_bound  # x: 2 >= 2, y: 8 >= 7


def test_purity_checks():
    ring = load("h-cp3-hodge.cdga")
    x = ring.gen("x")
    assert check_euler_purity(ring, x, 1)
    assert check_euler_purity(ring, ring.zero(), 1)
    mixed = load("hodge-mixed.cdga")
    assert not check_euler_purity(mixed, mixed.gen("x") + mixed.gen("g"), 1)


def test_thom_mhs_tate_twist():
    ring = load("h-cp3-hodge.cdga")
    filtered = thom_mhs(ring, ring.gen("x"), 1)
    for i, n in ((0, 0), (1, 2), (2, 4), (3, 6)):
        (powers,) = ring.basis(n)
        assert filtered.type_of(powers) == (i + 1, i + 1)
        assert filtered.weight_of(powers) == 2 * i + 2


def test_thom_mhs_rejects_impure_euler():
    mixed = load("hodge-mixed.cdga")
    with pytest.raises(ValidationError) as err:
        thom_mhs(mixed, mixed.gen("x") + mixed.gen("g"), 1)
    assert err.value.code == "euler_not_pure"


def test_thom_mhs_matches_thom_weights():
    for name in ("h-cp3-hodge.cdga", "typed-cp3.cdga"):
        ring = load(name)
        e = ring.gen("x")
        filtered = thom_mhs(ring, e, 1)
        plain = thom_weights(ring, e, 2)
        assert plain.euler_weight == 2
        for n in range(0, min(ring.truncation_degree, 8) + 1):
            for powers in ring.basis(n):
                assert filtered.weight_of(powers) == ring.powers_weight(powers) + plain.euler_weight


def test_degenerate_unit_base():
    unit = build_presentation([], {}, truncate=4)
    assert unit.typed
    filtered = thom_mhs(unit, unit.zero(), 1)
    assert filtered.type_of(()) == (1, 1)
    assert filtered.weight_of(()) == 2


def test_smooth_bound_propagates_to_model():
    ring = load("h-cp3-hodge.cdga")
    filtered = thom_mhs(ring, ring.gen("x"), 1)
    sw = weights_from_splitting(ring)
    assert sw.smooth_bound
    for n in range(2, 9):
        for powers in ring.basis(n - 2):
            assert filtered.weight_of(powers) >= n


def test_filtration_dimensions():
    ring = load("h-cp3-hodge.cdga")
    filtered = thom_mhs(ring, ring.gen("x"), 1)
    # degree 4 of the model is the base degree-2 line with weight 4
    assert filtered.weight_filtration_dim(3, 4) == 0
    assert filtered.weight_filtration_dim(4, 4) == 1
    assert filtered.hodge_filtration_dim(2, 4) == 1
    assert filtered.hodge_filtration_dim(3, 4) == 0
