import random
from fractions import Fraction

import pytest

from thomforge import (
    Element,
    ParseError,
    ValidationError,
    basis,
    build_presentation,
    differentiate,
    make_cdga,
    multiply,
    parse_expression,
    presentation_to_json,
    presentation_to_text,
)
from thomforge.algebra import random_homogeneous

from conftest import CORPUS, load


def test_cp2_presentation_valid():
    p = build_presentation([("x", 2), ("y", 5)], {"y": "x^3"}, truncate=12)
    assert p.generator("y").degree == 5
    assert str(p.differential_of("y")) == "x^3"


def test_dd_zero_rejected():
    # d(a) = x*y with d(y) = x^2 forces d(d(a)) = -x^3 != 0
    with pytest.raises(ValidationError) as err:
        build_presentation([("x", 2), ("y", 2), ("a", 3)], {"y": "0", "a": "x*y", "x": "y^2"}, truncate=10)
    assert err.value.code in ("d2_nonzero", "degree_mismatch")


def test_degree_mismatch_on_formally_ill_graded_differential():
    # a*a collapses to zero, but its formal degree 6 != 4 and is rejected
    with pytest.raises(ValidationError) as err:
        make_cdga("truncate 8\ngen a : 3\nd a = a*a\n")
    assert err.value.code == "degree_mismatch"


def test_weighted_presentation_valid_and_weight_violation():
    p = build_presentation([("x", 2, 2), ("a", 3, 4)], {"a": "x^2"}, truncate=10)
    assert p.weighted
    with pytest.raises(ValidationError) as err:
        build_presentation([("x", 2, 2), ("a", 3, 3)], {"a": "x^2"}, truncate=10)
    assert err.value.code == "weight_violation"


def test_koszul_signs():
    p = build_presentation([("x", 2), ("y", 2), ("a", 3), ("b", 3)], {}, truncate=12)
    x, y, a, b = (p.gen(n) for n in "xyab")
    assert multiply(x, y) == multiply(y, x)
    assert multiply(a, b) == -multiply(b, a)
    assert multiply(a, a).is_zero()


def test_differentiate_examples():
    cp2 = load("cp2.cdga")
    x, y = cp2.gen("x"), cp2.gen("y")
    assert differentiate(x * x).is_zero()
    assert str(differentiate(y)) == "x^3"
    assert str(differentiate(x * y)) == "x^4"
    heis = load("heisenberg.cdga")
    a, c = heis.gen("a"), heis.gen("c")
    assert differentiate(a * c).is_zero()


def test_basis_examples():
    lx = build_presentation([("x", 2)], {}, truncate=12)
    assert [str(m) for m in basis(lx, 6)] == ["x^3"]
    lab = build_presentation([("a", 3), ("b", 3)], {}, truncate=12)
    assert [str(m) for m in basis(lab, 6)] == ["a*b"]
    four = build_presentation([("x", 2), ("y", 2), ("a", 3), ("b", 3)], {}, truncate=12)
    assert [str(m) for m in basis(four, 5)] == ["x*a", "x*b", "y*a", "y*b"]


def test_basis_respects_truncation():
    lx = build_presentation([("x", 2)], {}, truncate=5)
    assert basis(lx, 6) == []
    assert (lx.gen("x") * lx.gen("x") * lx.gen("x")).is_zero()


def test_canonical_form_idempotent():
    p = load("massey-fixture.cdga")
    rng = random.Random(7)
    for _ in range(50):
        el = random_homogeneous(p, rng.choice([2, 3, 4, 5, 6]), rng)
        rebuilt = p.zero()
        for powers, c in el.terms.items():
            rebuilt = rebuilt + Element(p, {powers: c})
        assert rebuilt == el


@pytest.mark.parametrize("name", CORPUS)
def test_kernel_laws_on_fixture(name):
    pres = load(name)
    rng = random.Random(hash(name) % (2**32))
    degrees = [d for d in range(1, 9) if pres.basis(d)]
    if not degrees:
        pytest.skip("no positive-degree classes")
    for _ in range(60):
        a = random_homogeneous(pres, rng.choice(degrees), rng)
        b = random_homogeneous(pres, rng.choice(degrees), rng)
        c = random_homogeneous(pres, rng.choice(degrees), rng)
        assert (a * b) * c == a * (b * c)
        sign = -1 if (a.degree % 2) * (b.degree % 2) else 1
        assert a * b == (b * a).scale(sign)
        leib = (a * b).d() - a.d() * b - (a * b.d()).scale(-1 if a.degree % 2 else 1)
        assert leib.is_zero()
        assert a.d().d().is_zero()


@pytest.mark.parametrize("name", CORPUS)
def test_d_squared_on_basis(name):
    pres = load(name)
    for n in range(0, pres.truncation_degree - 1):
        for powers in pres.basis(n):
            assert pres.d_monomial(powers).d().is_zero()


def test_parse_error_has_location():
    with pytest.raises(ParseError) as err:
        make_cdga("truncate 8\ngen x : 2\nd x = x +* x\n")
    assert err.value.line == 3


def test_unknown_generator_rejected():
    with pytest.raises(ValidationError):
        make_cdga("truncate 8\ngen x : 2\nd x = q\n")


def test_expression_parsing_round_trip():
    p = load("massey-fixture.cdga")
    for text in ("x^2 - 3/2*y*x", "x*(y + 2*x)", "-a*b + 1/3*x*y^2", "2*x*y - y^2"):
        el, _ = parse_expression(text, p)
        again, _ = parse_expression(str(el), p)
        assert again == el


def test_text_and_json_round_trip():
    for name in CORPUS:
        pres = load(name)
        assert make_cdga(presentation_to_text(pres)) == pres
        import json

        assert make_cdga(json.dumps(presentation_to_json(pres))) == pres


def test_mixed_presentation_rejected():
    p1 = load("cp2.cdga")
    p2 = load("cp3.cdga")
    with pytest.raises(ValidationError) as err:
        multiply(p1.gen("x"), p2.gen("x"))
    assert err.value.code == "mixed_presentations"


def test_degree_zero_generator_rejected():
    with pytest.raises(ValidationError):
        build_presentation([("x", 0)], {}, truncate=5)
