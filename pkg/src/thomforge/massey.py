"""Triple and higher Massey products, indeterminacy, and their behavior
under the twisted Thom product.

Sign convention, fixed throughout: for homogeneous m put bar(m) = (-1)^{|m|} m.
A Massey system for classes x_1, ..., x_k consists of elements m_{i,j}
(1 <= i <= j <= k, (i,j) != (1,k)) with

    m_{i,i} = x_i,   d(m_{i,j}) = a_{i,j},
    a_{i,j} = sum over i <= l < j of bar(m_{i,l}) * m_{l+1,j},

and the product of the system is the closed element a_{1,k}.  For k = 3 this
gives the representative bar(x)*mu + bar(lambda)*z with d(lambda) = bar(x)*y
and d(mu) = bar(y)*z; the indeterminacy of the triple product is the subspace
x*H + H*z in the relevant degree.  Overall signs differ from other
conventions in the literature; zero-containment, which is the meaningful
verdict, does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CdgaPresentation, Element
from .cohomology import h_block, solve_primitive
from .errors import ValidationError
from .linalg import TrackedEchelon, in_span, spans_equal
from .thom import SuspendedElement, ThomModel, thom_model

Q1 = Fraction(1)


class AlgebraOps:
    """Element-level facade shared by presentations and Thom models."""

    def __init__(self, obj):
        if isinstance(obj, CdgaPresentation):
            self.kind = "presentation"
        elif isinstance(obj, ThomModel):
            self.kind = "thom"
        else:
            raise ValidationError("mixed_presentations", "expected a presentation or a Thom model")
        self.obj = obj
        self.cx = obj.complex()

    def zero(self):
        return self.obj.zero()

    def degree_of(self, el):
        return el.degree

    def bar(self, el):
        if el.is_zero():
            return el
        return el.scale(-1) if el.degree % 2 else el

    def coords(self, el, n):
        return self.cx.coords_of(el, n)

    def element(self, n, vec):
        return self.cx.element_of(n, vec)

    def solve_primitive(self, target, n):
        """x with d(x) = target, x of degree n-1, or None."""
        if target.is_zero():
            return self._zero_at()
        vec = self.coords(target, n)
        sol = solve_primitive(self.cx, vec, n)
        if sol is None:
            return None
        keys = self.cx.block_keys(n - 1, None)
        if self.kind == "presentation":
            terms = {keys[i]: c for i, c in sol.items()}
            return Element(self.obj, terms)
        terms = {keys[i]: c for i, c in sol.items()}
        return SuspendedElement(self.obj, Element(self.obj.base, terms))

    def _zero_at(self):
        return self.obj.zero()

    def h_reps(self, n):
        block = h_block(self.cx, n, None)
        return [self.element(n, v) for v in block.reps]

    def class_coords(self, el, n):
        if el.is_zero():
            return {}
        return h_block(self.cx, n, None).class_coords(self.coords(el, n))

    def check_closed(self, el, label):
        if not el.is_zero() and not el.d().is_zero():
            raise ValidationError("d2_nonzero", f"{label} is not closed")


@dataclass
class MasseyProduct:
    """A coset: representative class plus the span of the indeterminacy."""

    defined: bool
    degree: int | None = None
    obstruction: str | None = None
    representative: object = None
    rep_coords: dict | None = None
    indeterminacy: list | None = None  # class-coordinate vectors
    indeterminacy_elements: list | None = None
    hdim: int | None = None

    @property
    def indeterminacy_dim(self):
        if self.indeterminacy is None:
            return None
        ech = TrackedEchelon()
        for v in self.indeterminacy:
            ech.insert(v, {})
        return ech.rank

    def is_zero_class(self):
        return self.defined and not self.rep_coords


def triple_massey(obj, x, y, z, up_to=None):
    """The triple Massey product <x, y, z> with its indeterminacy.

    Undefined (with the obstructing pair reported) when [x][y] or [y][z] is
    nonzero.  The representative and indeterminacy are exact; the
    indeterminacy subspace is x*H^{|y|+|z|-1} + H^{|x|+|y|-1}*z.
    """
    ops = AlgebraOps(obj)
    for el, label in ((x, "x"), (y, "y"), (z, "z")):
        if el.is_zero():
            continue
        ops.check_closed(el, label)
        if not el.is_homogeneous():
            raise ValidationError("degree_mismatch", f"{label} must be homogeneous")
    dx, dy, dz = (0 if e.is_zero() else e.degree for e in (x, y, z))
    total = dx + dy + dz - 1
    if up_to is None:
        up_to = ops.cx.truncation
    if total > up_to or total > ops.cx.truncation:
        raise ValidationError("cutoff_exceeded", "product degree exceeds the cutoff")

    lam = ops.solve_primitive(ops.bar(x) * y, dx + dy)
    if lam is None:
        return MasseyProduct(defined=False, obstruction="[x][y] != 0")
    mu = ops.solve_primitive(ops.bar(y) * z, dy + dz)
    if mu is None:
        return MasseyProduct(defined=False, obstruction="[y][z] != 0")
    rep = ops.bar(x) * mu + _bar_at(lam, dx + dy - 1) * z
    if not rep.d().is_zero():
        raise ValidationError("d2_nonzero", "representative is not closed; sign conventions broke")
    rep_coords = ops.class_coords(rep, total)

    indet_vecs = []
    indet_elems = []
    for r in ops.h_reps(dy + dz - 1):
        cand = x * r
        coords = ops.class_coords(cand, total)
        if coords:
            indet_vecs.append(coords)
            indet_elems.append(cand)
    for r in ops.h_reps(dx + dy - 1):
        cand = r * z
        coords = ops.class_coords(cand, total)
        if coords:
            indet_vecs.append(coords)
            indet_elems.append(cand)
    return MasseyProduct(
        defined=True,
        degree=total,
        representative=rep,
        rep_coords=rep_coords,
        indeterminacy=indet_vecs,
        indeterminacy_elements=indet_elems,
        hdim=h_block(ops.cx, total, None).dim,
    )


def _bar_at(el, degree):
    if el.is_zero():
        return el
    return el.scale(-1) if degree % 2 else el


def contains_zero(product):
    """Whether the zero class lies in the product's affine set."""
    if not product.defined:
        raise ValidationError("degree_mismatch", "product is undefined")
    if not product.rep_coords:
        return True
    return in_span(product.indeterminacy, product.rep_coords)


def scale_product(obj, product, e):
    """The set e*<...>: multiply representative and indeterminacy by [e]."""
    if not product.defined:
        return MasseyProduct(defined=False, obstruction=product.obstruction)
    ops = AlgebraOps(obj)
    rep = e * product.representative
    degree = product.degree + (0 if e.is_zero() else e.degree)
    vecs = []
    elems = []
    for el in product.indeterminacy_elements:
        cand = e * el
        coords = ops.class_coords(cand, degree)
        if coords:
            vecs.append(coords)
            elems.append(cand)
    return MasseyProduct(
        defined=True,
        degree=degree,
        representative=rep,
        rep_coords=ops.class_coords(rep, degree),
        indeterminacy=vecs,
        indeterminacy_elements=elems,
        hdim=h_block(ops.cx, degree, None).dim,
    )


@dataclass
class CorrespondenceReport:
    defined_agree: bool
    reps_match_mod_indeterminacy: bool | None
    indeterminacy_dims: tuple | None
    zero_verdicts: tuple | None

    @property
    def ok(self):
        if not self.defined_agree:
            return False
        if self.reps_match_mod_indeterminacy is None:
            return True  # undefined on both sides, symmetric
        return (
            self.reps_match_mod_indeterminacy
            and self.indeterminacy_dims[0] == self.indeterminacy_dims[1]
            and self.zero_verdicts[0] == self.zero_verdicts[1]
        )


def thom_triple_correspondence(base, e, x, y, z, up_to=None, rank=None):
    """Compare <w_x, w_y, w_z> in the Thom model with e*<x, e*y, z> downstairs.

    The complexes agree up to suspension, so representatives are compared in
    shared base coordinates modulo the Thom-side indeterminacy; the report
    also compares indeterminacy dimensions and zero-containment verdicts.
    """
    n = rank if rank is not None else (e.degree if not e.is_zero() else 0)
    model = thom_model(base, e, n)
    t_product = triple_massey(model, model.suspend(x), model.suspend(y), model.suspend(z), up_to)
    b_inner = triple_massey(base, x, e * y, z, up_to)
    b_product = scale_product(base, b_inner, e)
    if t_product.defined != b_product.defined:
        return CorrespondenceReport(False, None, None, None)
    if not t_product.defined:
        return CorrespondenceReport(True, None, None, None)
    # w_{e u} <-> e u: the Thom-side representative already lives in base
    # coordinates (the complex is the shifted base complex)
    diff = t_product.representative.underlying - b_product.representative
    base_ops = AlgebraOps(base)
    t_indet_base = [v for v in t_product.indeterminacy]
    if diff.is_zero():
        match = True
    else:
        diff_coords = AlgebraOps(model).class_coords(
            model.suspend(diff), t_product.degree
        )
        match = in_span(t_indet_base, diff_coords)
    dims = (t_product.indeterminacy_dim, b_product.indeterminacy_dim)
    zeros = (contains_zero(t_product), contains_zero(b_product))
    return CorrespondenceReport(True, match, dims, zeros)


# -- exponent bookkeeping for higher products --------------------------------


def phi(i):
    """1 on odd positions, 0 on even ones."""
    return i % 2


def gamma(i):
    """The complementary parity marker: 0 on odd positions, 1 on even ones.

    Note: with the offset written as phi - 1 the additivity law
    s(i,j) = s(i,l) + s(l+1,j) + 1 fails already at (i,l,j) = (1,1,2), and
    the k = 3 case would not reduce to the triple-product bijections, so the
    complement 1 - phi is the law-abiding reading.
    """
    return 1 - phi(i)


def s_exponent(i, j, variant="first"):
    """Euler-class exponent for lifting Massey systems; additive in the sense
    s(i,j) = s(i,l) + s(l+1,j) + 1."""
    if not 1 <= i <= j:
        raise ValidationError("degree_mismatch", "need 1 <= i <= j")
    if variant == "first":
        return (j - i - phi(i)) // 2
    if variant == "second":
        return (j - i - gamma(i)) // 2
    raise ValidationError("degree_mismatch", f"unknown variant {variant!r}")


class MasseySystem:
    """A coherent system of bounding elements for classes x_1, ..., x_k."""

    def __init__(self, obj, classes, elements):
        self.obj = obj
        self.ops = AlgebraOps(obj)
        self.classes = list(classes)
        self.k = len(self.classes)
        self.elements = dict(elements)  # (i, j) -> element, for i < j, (i,j) != (1,k)

    def m(self, i, j):
        if i == j:
            return self.classes[i - 1]
        return self.elements[(i, j)]

    def a(self, i, j):
        """a_{i,j} = sum of bar(m_{i,l}) m_{l+1,j}."""
        out = None
        for l in range(i, j):
            left = self.m(i, l)
            right = self.m(l + 1, j)
            term = _system_bar(left) * right
            out = term if out is None else out + term
        return out

    def product(self):
        return self.a(1, self.k)

    def validate(self):
        """Check the system axioms; returns a list of failure messages."""
        failures = []
        for idx, xi in enumerate(self.classes, start=1):
            if not xi.is_zero() and not xi.d().is_zero():
                failures.append(f"class x_{idx} is not closed")
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                if (i, j) == (1, self.k):
                    continue
                if (i, j) not in self.elements:
                    failures.append(f"missing m_({i},{j})")
                    continue
                lhs = self.elements[(i, j)].d()
                rhs = self.a(i, j)
                if lhs != rhs:
                    failures.append(f"d(m_({i},{j})) != a_({i},{j})")
        prod = self.product()
        if prod is not None and not prod.is_zero() and not prod.d().is_zero():
            failures.append("system product is not closed")
        return failures


def _system_bar(el):
    if el.is_zero():
        return el
    if not el.is_homogeneous():
        raise ValidationError("degree_mismatch", "system elements must be homogeneous")
    return el.scale(-1) if el.degree % 2 else el


@dataclass
class LiftedSystemReport:
    system: MasseySystem
    failures: list
    product_matches_scaled_input: bool
    pullback_is_euler_multiple: bool

    @property
    def ok(self):
        return (
            not self.failures
            and self.product_matches_scaled_input
            and self.pullback_is_euler_multiple
        )


def lift_massey_system(base, e, xs, system, variant="first"):
    """Lift a Massey system along the Thom construction.

    ``xs`` are the underlying classes; ``system`` must be a valid system for
    the classes e^{phi(i)} x_i (first variant) or e^{gamma(i)} x_i (second).
    The lifted system for the suspended classes w_{x_i} has elements
    w_{e^{s(i,j)} m_{i,j}}; its product is w of e^{s(1,k)} times the input
    product, and pulling back along w_v -> e*v multiplies by one more power
    of e.
    """
    marker = phi if variant == "first" else gamma
    if variant not in ("first", "second"):
        raise ValidationError("degree_mismatch", f"unknown variant {variant!r}")
    k = system.k
    if len(xs) != k:
        raise ValidationError("degree_mismatch", "class count does not match the system size")
    for i, xi in enumerate(xs, start=1):
        expected = _euler_power(e, marker(i), base) * xi
        if system.classes[i - 1] != expected:
            raise ValidationError(
                "degree_mismatch",
                f"system class {i} is not e^{marker(i)} * x_{i}",
            )
    failures = system.validate()
    if failures:
        raise ValidationError("d2_nonzero", "input system invalid: " + "; ".join(failures))

    rank = e.degree if not e.is_zero() else 0
    model = thom_model(base, e, rank)
    lifted_elements = {}
    for (i, j), m in system.elements.items():
        lifted_elements[(i, j)] = model.suspend(_euler_power(e, s_exponent(i, j, variant), base) * m)
    lifted_classes = [model.suspend(xi) for xi in xs]
    lifted = MasseySystem(model, lifted_classes, lifted_elements)
    lifted_failures = lifted.validate()

    scaled_input = _euler_power(e, s_exponent(1, k, variant), base) * system.product()
    product_ok = lifted.product() == model.suspend(scaled_input)
    pullback = e * lifted.product().underlying
    pullback_ok = pullback == e * scaled_input
    return LiftedSystemReport(
        system=lifted,
        failures=lifted_failures,
        product_matches_scaled_input=product_ok,
        pullback_is_euler_multiple=pullback_ok,
    )


def _euler_power(e, exponent, base):
    out = base.one()
    for _ in range(exponent):
        out = out * e
    return out


def massey_sets_equal(p, q):
    """Whether two defined products describe the same affine set."""
    if not (p.defined and q.defined):
        return p.defined == q.defined
    if p.degree != q.degree:
        return False
    if not spans_equal(p.indeterminacy, q.indeterminacy):
        return False
    diff = {}
    for i, c in (p.rep_coords or {}).items():
        diff[i] = c
    for i, c in (q.rep_coords or {}).items():
        new = diff.get(i, Fraction(0)) - c
        if new:
            diff[i] = new
        else:
            diff.pop(i, None)
    if not diff:
        return True
    return in_span(p.indeterminacy, diff)
