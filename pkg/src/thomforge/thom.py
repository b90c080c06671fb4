"""The shifted-algebra model of a Thom space.

Given a cdga A and a closed element e of even degree n, the model lives on
the n-th suspension of A: the element w_x sits in degree |x| + n, the
differential is d(w_x) = w_{dx}, and the product is twisted by e:
w_x * w_y = w_{e x y}.  The structure is a cdga without unit (w_1 is not a
unit unless e is invertible); as a cochain complex it is A shifted by n, so
its cohomology is the base cohomology shifted, with the twisted ring
structure on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, random_homogeneous
from .cohomology import (
    CochainComplex,
    GradedReport,
    LinearMap,
    graded_report,
    h_block,
    quasi_iso_report,
)
from .errors import ValidationError

Q1 = Fraction(1)


class SuspendedElement:
    """w_x: the n-th suspension of a base element x, inside a Thom model."""

    __slots__ = ("model", "underlying")

    def __init__(self, model, underlying):
        self.model = model
        self.underlying = underlying

    def is_zero(self):
        return self.underlying.is_zero()

    @property
    def degree(self):
        return self.underlying.degree + self.model.shift

    def is_homogeneous(self):
        return self.underlying.is_homogeneous()

    def _check(self, other):
        if self.model is not other.model and self.model != other.model:
            raise ValidationError("mixed_presentations", "suspended elements from different Thom models")

    def __add__(self, other):
        self._check(other)
        return SuspendedElement(self.model, self.underlying + other.underlying)

    def __sub__(self, other):
        self._check(other)
        return SuspendedElement(self.model, self.underlying - other.underlying)

    def __neg__(self):
        return SuspendedElement(self.model, -self.underlying)

    def scale(self, c):
        return SuspendedElement(self.model, self.underlying.scale(c))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return SuspendedElement(self.model, self.model.euler * self.underlying * other.underlying)

    def d(self):
        return SuspendedElement(self.model, self.underlying.d())

    def __eq__(self, other):
        return (
            isinstance(other, SuspendedElement)
            and self.model == other.model
            and self.underlying == other.underlying
        )

    def __repr__(self):
        return f"w[{self.underlying}]"


class ThomModel:
    """Carrier s^n A with Euler element e, twisted product and shifted grading."""

    def __init__(self, base, euler, shift, euler_weight=None):
        self.base = base
        self.euler = euler
        self.shift = shift
        self.euler_weight = euler_weight
        self._complex = None

    @property
    def truncation_degree(self):
        return self.base.truncation_degree + self.shift

    @property
    def weighted(self):
        return self.base.weighted and self.euler_weight is not None

    def suspend(self, x):
        if x.presentation != self.base:
            raise ValidationError("mixed_presentations", "element is not over the base presentation")
        return SuspendedElement(self, x)

    def zero(self):
        return SuspendedElement(self, self.base.zero())

    def complex(self):
        if self._complex is None:
            self._complex = ThomComplex(self)
        return self._complex

    def __eq__(self, other):
        return (
            isinstance(other, ThomModel)
            and self.base == other.base
            and self.euler == other.euler
            and self.shift == other.shift
            and self.euler_weight == other.euler_weight
        )

    def __repr__(self):
        return f"ThomModel(e={self.euler}, shift={self.shift})"


class ThomComplex(CochainComplex):
    """Cochain-complex view: degree k of the model is base degree k - shift."""

    def __init__(self, model):
        super().__init__()
        self.model = model
        self.truncation = model.truncation_degree
        self.weighted = model.weighted

    def _base_cx(self):
        return self.model.base.complex()

    def block_weights(self, n):
        if not self.weighted:
            return [None]
        ew = self.model.euler_weight
        return [w + ew for w in self._base_cx().block_weights(n - self.model.shift)]

    def block_keys(self, n, p=None):
        if p is None:
            return self._base_cx().block_keys(n - self.model.shift, None)
        return self._base_cx().block_keys(n - self.model.shift, p - self.model.euler_weight)

    def _d_key(self, n, p, key, target_index):
        img = self.model.base.d_monomial(key)
        return {target_index[powers]: c for powers, c in img.terms.items()}

    def element_of(self, n, vec, p=None):
        keys = self.block_keys(n, p)
        terms = {keys[i]: c for i, c in vec.items()}
        return SuspendedElement(self.model, Element(self.model.base, terms))

    def coords_of(self, suspended, n, p=None):
        index = {k: i for i, k in enumerate(self.block_keys(n, p))}
        return {index[powers]: c for powers, c in suspended.underlying.terms.items()}


def thom_model(base, euler, rank, zero_euler_weight=None):
    """Validated Thom model A[e] for a closed even-degree Euler element.

    When the base is weighted, e must be weight-homogeneous; a zero Euler
    element needs its weight declared via zero_euler_weight.
    """
    if rank % 2 != 0 or rank < 0:
        raise ValidationError("odd_rank_unsupported", f"rank {rank} is odd; only even ranks carry this model")
    if euler.presentation != base:
        raise ValidationError("mixed_presentations", "Euler element is not over the base presentation")
    if not euler.is_zero():
        if not euler.is_homogeneous():
            raise ValidationError("euler_inhomogeneous", "Euler element must be homogeneous")
        if euler.degree != rank:
            raise ValidationError(
                "degree_mismatch", f"Euler element has degree {euler.degree}, expected {rank}"
            )
    if not euler.d().is_zero():
        raise ValidationError("euler_not_closed", f"d(e) = {euler.d()} is nonzero")
    ew = None
    if base.weighted:
        if euler.is_zero():
            ew = 0 if zero_euler_weight is None else zero_euler_weight
        elif euler.is_weight_homogeneous():
            ew = euler.weight
        else:
            raise ValidationError("euler_inhomogeneous", "Euler element is not weight-homogeneous")
    return ThomModel(base, euler, rank, ew)


def relative_cup(x, w):
    """The left module action (x, w_y) -> w_{x y}."""
    if x.presentation != w.model.base:
        raise ValidationError("mixed_presentations", "module action needs a base element")
    return SuspendedElement(w.model, x * w.underlying)


def thom_cohomology(model, up_to):
    """Betti table and representatives of the Thom model up to a degree."""
    if up_to > model.truncation_degree - 1:
        raise ValidationError("cutoff_exceeded", "requested degree exceeds the model's truncation")
    return graded_report(model.complex(), up_to)


def ring_table(model, up_to):
    """Products of cohomology representatives, in class coordinates.

    Returns {(k, i, l, j): {m: coeff}} meaning [rep_k_i]*[rep_l_j] has the
    given coordinates in the degree-(k+l) representative basis.
    """
    cx = model.complex()
    table = {}
    for k in range(up_to + 1):
        bk = h_block(cx, k, None)
        for l in range(k, up_to + 1 - k):
            bl = h_block(cx, l, None)
            target = h_block(cx, k + l, None)
            for i, ri in enumerate(bk.reps):
                a = cx.element_of(k, ri)
                for j, rj in enumerate(bl.reps):
                    b = cx.element_of(l, rj)
                    prod = a * b
                    coords = cx.coords_of(prod, k + l)
                    table[(k, i, l, j)] = target.class_coords(coords)
    return table


@dataclass
class EulerComparisonReport:
    homotopy_checked_pairs: int
    homotopy_ok: bool
    betti_first: list
    betti_second: list

    @property
    def ok(self):
        return self.homotopy_ok and self.betti_first == self.betti_second


def compare_euler_reps(base, e, e2, z, up_to=None):
    """Certify that cohomologous Euler representatives give equivalent models.

    Requires d(z) = e - e2.  H(x, y) = x*y*z is a homotopy between the two
    twisted products; the identity

        d(H(x, y)) - H(d(x) (x) y) - (-1)^{|x|} H(x (x) d(y))
            = (-1)^{|x|+|y|} (mu_e(w_x, w_y) - mu_e2(w_x, w_y))

    is bilinear, so checking it on all monomial pairs up to the cutoff is a
    complete check at this truncation.  The report also compares the two
    Betti tables.
    """
    if z.d() != e - e2:
        raise ValidationError("not_cohomologous", "d(z) does not equal e - e2")
    n = up_to if up_to is not None else base.truncation_degree
    ok = True
    pairs = 0
    for dx in range(0, n + 1):
        for dy in range(0, n + 1 - dx):
            for px in base.basis(dx):
                x = Element(base, {px: Q1})
                for py in base.basis(dy):
                    y = Element(base, {py: Q1})
                    pairs += 1
                    lhs = (x * y * z).d() - (x.d() * y * z)
                    sx = -1 if dx % 2 else 1
                    lhs = lhs - (x * y.d() * z).scale(sx)
                    sxy = -1 if (dx + dy) % 2 else 1
                    rhs = ((e - e2) * x * y).scale(sxy)
                    if lhs != rhs:
                        ok = False
    rank = e.degree if not e.is_zero() else (e2.degree if not e2.is_zero() else 0)
    if rank % 2:
        raise ValidationError("odd_rank_unsupported", "Euler degree must be even")
    t1 = thom_model(base.without_weights() if base.weighted else base, _strip(e, base), rank)
    t2 = thom_model(t1.base, _strip(e2, base, t1.base), rank)
    cutoff = min(n + rank, t1.truncation_degree - 1)
    b1 = thom_cohomology(t1, cutoff).betti_row(cutoff)
    b2 = thom_cohomology(t2, cutoff).betti_row(cutoff)
    return EulerComparisonReport(pairs, ok, b1, b2)


def _strip(element, base, plain=None):
    if not base.weighted:
        return element
    from .algebra import reinterpret

    return reinterpret(element, plain if plain is not None else base.without_weights())


class ThomTransport:
    """The map w_x -> w_{f(x)} from A[e] to A'[f(e)] induced by f: A -> A'."""

    def __init__(self, f, source_model, target_model):
        self.f = f
        self.source = source_model
        self.target = target_model

    def apply(self, w):
        return SuspendedElement(self.target, self.f.apply(w.underlying))

    def linear_map(self):
        scx = self.source.complex()
        tcx = self.target.complex()

        def apply_key(n, key):
            img = self.f.apply(Element(self.f.source, {key: Q1}))
            return tcx.coords_of(SuspendedElement(self.target, img), n)

        return LinearMap(scx, tcx, apply_key)

    def quasi_iso(self, up_to):
        return quasi_iso_report(self.linear_map(), up_to)


def transport_thom(f, e, check_degree=None):
    """Transport a Thom model along a cdga morphism.

    Validates multiplicativity and the module-structure square on all
    monomial pairs up to the check degree (bilinear identities, so monomial
    pairs are a complete spanning check).
    """
    source_model = thom_model(f.source, e, e.degree if not e.is_zero() else 0)
    target_model = thom_model(f.target, f.apply(e), source_model.shift)
    transport = ThomTransport(f, source_model, target_model)
    n = check_degree if check_degree is not None else min(f.source.truncation_degree, 8)
    for dx in range(0, n + 1):
        for dy in range(0, n + 1 - dx):
            for px in f.source.basis(dx):
                x = Element(f.source, {px: Q1})
                wx = source_model.suspend(x)
                for py in f.source.basis(dy):
                    y = Element(f.source, {py: Q1})
                    wy = source_model.suspend(y)
                    lhs = transport.apply(wx * wy)
                    rhs = transport.apply(wx) * transport.apply(wy)
                    if lhs != rhs:
                        raise ValidationError("d2_nonzero", "transport is not multiplicative")
                    sq_lhs = transport.apply(relative_cup(x, wy))
                    sq_rhs = relative_cup(f.apply(x), transport.apply(wy))
                    if sq_lhs != sq_rhs:
                        raise ValidationError("d2_nonzero", "module-structure square does not commute")
    return transport
