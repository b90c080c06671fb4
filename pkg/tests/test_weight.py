from fractions import Fraction

import pytest

from thomforge import (
    ValidationError,
    attach_weights,
    build_presentation,
    cohomology,
    formality_certificate,
    positivity,
    pure_truncation,
    thom_weights,
    weight_scaling,
    weighted_cohomology,
)
from thomforge.cohomology import h_block, quasi_iso_report

from conftest import FORMAL, load


def test_attach_weights_positive_and_trivial():
    ring = build_presentation([("p", 2), ("q", 3)], {}, truncate=8)
    weighted, positive = attach_weights(ring, {"p": 2, "q": 3})
    assert positive
    trivial, positive0 = attach_weights(ring, {"p": 0, "q": 0})
    assert not positive0
    assert trivial.weighted


def test_attach_weights_rejects_incompatible():
    pres = build_presentation([("x", 2), ("a", 3)], {"a": "x^2"}, truncate=10)
    weighted, positive = attach_weights(pres, {"x": 2, "a": 4})
    assert positive
    with pytest.raises(ValidationError) as err:
        attach_weights(pres, {"x": 2, "a": 3})
    assert err.value.code == "weight_violation"


def test_pure_truncation_full_when_weights_are_degrees():
    ring = load("formal-squares.cdga")
    tau = pure_truncation(ring, up_to=6)
    for (n, p), dim in tau.block_dims.items():
        assert p == n
        assert dim == len(ring.basis(n))


def test_pure_truncation_kills_contractible_top():
    pres = load("contractible.cdga")
    tau = pure_truncation(pres, up_to=4)
    # weight 1 < degree 2 kills the top block entirely
    assert (2, 1) not in tau.block_dims
    sub = tau.subcomplex
    assert h_block(sub, 2, None).dim == 0


def test_pure_truncation_inclusion_quasi_iso_under_purity():
    pres = load("cp2.cdga")
    tau = pure_truncation(pres, up_to=9)
    assert quasi_iso_report(tau.inclusion(), 8).ok


def test_certificate_on_zero_differential_weights_equal_degree():
    for name in FORMAL:
        pres = load(name)
        cert = formality_certificate(pres, min(pres.truncation_degree - 1, 6))
        assert cert.pure and cert.ok


def test_certificate_obstruction_on_massey_fixture():
    cert = formality_certificate(load("massey-fixture.cdga"), 8)
    assert not cert.pure
    assert (5, 6, 1) in cert.obstructions


def test_thom_weight_shift_arithmetic():
    pres = load("cp3.cdga")
    model = thom_weights(pres, pres.gen("x"), 2)
    assert model.euler_weight == 2
    # ||w_x|| = ||x|| + ||e||: block weights of the model are base weights + 2
    cx = model.complex()
    base_cx = pres.complex()
    for n in range(0, 6):
        assert cx.block_weights(n + 2) == [w + 2 for w in base_cx.block_weights(n)]
    # the degree-4 class x^2 has weight 4 and suspends to weight 6
    assert cx.block_weights(6) == [6]


def test_thom_weights_zero_euler_declared():
    pres = load("formal-squares.cdga")
    model = thom_weights(pres, pres.zero(), 2, zero_euler_weight=2)
    assert model.euler_weight == 2
    assert positivity(model)
    with pytest.raises(ValidationError) as err:
        thom_weights(pres, pres.zero(), 2)
    assert err.value.code == "euler_inhomogeneous"


def test_thom_weights_requires_homogeneous_euler():
    pres = load("massey-fixture.cdga")
    mixed = pres.gen("x") + pres.gen("a")  # not even homogeneous in degree
    with pytest.raises(ValidationError):
        thom_weights(pres, mixed, 2)


def test_formality_transfer_to_thom_model():
    for name in ("h-cp2.cdga", "h-cp3.cdga", "h-s2.cdga"):
        ring = load(name)
        model = thom_weights(ring, ring.gen(ring.generators[0].name), 2)
        cert = formality_certificate(model, min(model.truncation_degree - 1, 8))
        assert cert.ok
    squares = load("formal-squares.cdga")
    e = squares.gen("p") + squares.gen("q")
    cert = formality_certificate(thom_weights(squares, e, 2), 8)
    assert cert.ok


def test_weight_scaling_identity_composition_and_induced_maps():
    pres = load("cp2.cdga")
    one = weight_scaling(pres, 1)
    assert all(one.images[g.name] == pres.gen(g.name) for g in pres.generators)
    s_a = weight_scaling(pres, Fraction(2))
    s_b = weight_scaling(pres, Fraction(3, 2))
    comp = s_a.compose(s_b)
    s_ab = weight_scaling(pres, Fraction(3))
    assert all(comp.images[g.name] == s_ab.images[g.name] for g in pres.generators)
    with pytest.raises(ValidationError):
        weight_scaling(pres, 0)


def test_weight_scaling_induces_lambda_power_on_classes():
    pres = load("massey-fixture.cdga")
    lam = Fraction(3)
    f = weight_scaling(pres, lam)
    cx = pres.complex()
    for n in range(0, 7):
        for p in cx.block_weights(n):
            block = h_block(cx, n, p)
            for rep in block.reps:
                el = cx.element_of(n, rep, p)
                image = f.apply(el)
                assert image == el.scale(lam**p)


def test_certificate_failure_is_a_value_not_an_exception():
    cert = formality_certificate(load("massey-thom-fixture.cdga"), 7)
    assert not cert.pure
    assert cert.obstructions
    assert cert.inclusion_report is None
