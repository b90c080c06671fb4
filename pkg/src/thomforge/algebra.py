"""Exact graded-commutative polynomial arithmetic with Koszul signs.

A presentation is a free graded-commutative algebra over Q on finitely many
generators of positive degree, a differential of degree +1 given on
generators, and a truncation degree N.  The truncation is a quotient: every
element of degree > N is identically zero, so products overflowing N are
dropped exactly and the result is still an honest cdga (the ideal of elements
of degree > N is closed under d and under multiplication).  This is also how
relations like x^3 = 0 and infinite models like the polynomial algebra on a
degree-2 class are realized at finite size.

Conventions, fixed once and used everywhere:
  - generators are totally ordered by (degree, declaration index);
  - monomials keep their factors in that order, odd generators square to zero;
  - commuting two odd generators costs a sign, everything else commutes freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError

Q0 = Fraction(0)
Q1 = Fraction(1)


@dataclass(frozen=True)
class Generator:
    """A graded generator; weight and Hodge type are optional bookkeeping."""

    name: str
    degree: int
    weight: int | None = None
    hodge_type: tuple[int, int] | None = None


class Monomial:
    """A canonical monomial of a fixed presentation.

    ``powers`` is a tuple of (rank, exponent) pairs where rank indexes the
    presentation's canonical generator order; odd generators appear with
    exponent exactly 1.
    """

    __slots__ = ("presentation", "powers")

    def __init__(self, presentation, powers):
        self.presentation = presentation
        self.powers = powers

    @property
    def degree(self):
        return self.presentation.powers_degree(self.powers)

    @property
    def weight(self):
        return self.presentation.powers_weight(self.powers)

    @property
    def factors(self):
        """(generator, exponent) pairs in canonical order."""
        order = self.presentation.order
        return [(order[r], e) for r, e in self.powers]

    def as_element(self):
        return Element(self.presentation, {self.powers: Q1})

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.powers == other.powers
            and self.presentation == other.presentation
        )

    def __hash__(self):
        return hash(self.powers)

    def __repr__(self):
        return self.presentation.powers_str(self.powers)


def _monomial_key(powers):
    # graded order: earlier generators with higher exponents come first
    return tuple((r, -e) for r, e in powers)


class Element:
    """A Q-linear combination of canonical monomials of one presentation."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation, terms):
        self.presentation = presentation
        self.terms = terms  # dict powers-tuple -> nonzero Fraction

    # -- basic structure ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def monomials(self):
        return [Monomial(self.presentation, p) for p in self.sorted_powers()]

    def sorted_powers(self):
        return sorted(self.terms, key=_monomial_key)

    def coefficient(self, powers):
        return self.terms.get(powers, Q0)

    def is_homogeneous(self):
        degs = {self.presentation.powers_degree(p) for p in self.terms}
        return len(degs) <= 1

    @property
    def degree(self):
        """Degree of a homogeneous nonzero element."""
        degs = {self.presentation.powers_degree(p) for p in self.terms}
        if len(degs) != 1:
            raise ValidationError(
                "degree_mismatch",
                "element is zero or not homogeneous; it has no single degree",
            )
        return degs.pop()

    def homogeneous_components(self):
        out = {}
        for p, c in self.terms.items():
            out.setdefault(self.presentation.powers_degree(p), {})[p] = c
        return {n: Element(self.presentation, t) for n, t in sorted(out.items())}

    @property
    def weight(self):
        """Weight of a weight-homogeneous nonzero element (weighted presentations)."""
        ws = {self.presentation.powers_weight(p) for p in self.terms}
        if len(ws) != 1 or None in ws:
            raise ValidationError("weight_violation", "element is not weight-homogeneous")
        return ws.pop()

    def is_weight_homogeneous(self):
        ws = {self.presentation.powers_weight(p) for p in self.terms}
        return len(ws) <= 1

    # -- arithmetic --------------------------------------------------------

    def _check_same(self, other):
        if self.presentation != other.presentation:
            raise ValidationError(
                "mixed_presentations", "operands live over different presentations"
            )

    def __add__(self, other):
        self._check_same(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            new = terms.get(p, Q0) + c
            if new:
                terms[p] = new
            else:
                terms.pop(p, None)
        return Element(self.presentation, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.presentation, {p: -c for p, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Element(self.presentation, {})
        return Element(self.presentation, {p: c * x for p, x in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        pres = self.presentation
        terms = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                sign, powers = pres.merge_powers(p1, p2)
                if sign == 0 or powers is None:
                    continue
                new = terms.get(powers, Q0) + sign * c1 * c2
                if new:
                    terms[powers] = new
                else:
                    terms.pop(powers, None)
        return Element(pres, terms)

    def d(self):
        """Differential, extended from generators by the graded Leibniz rule."""
        pres = self.presentation
        out = pres.zero()
        for p, c in self.terms.items():
            out = out + pres.d_monomial(p).scale(c)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.presentation == other.presentation
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return element_str(self)


def element_str(el):
    if not el.terms:
        return "0"
    pres = el.presentation
    parts = []
    for p in el.sorted_powers():
        c = el.terms[p]
        mono = pres.powers_str(p)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class CdgaPresentation:
    """Finitely presented connected cdga over Q, truncated at degree N.

    Built in two phases: construct with generators and truncation, assign the
    differential, then ``finalize()`` validates (degrees, d^2 = 0 on
    generators, weight compatibility) and freezes the object.
    """

    def __init__(self, generators, truncation_degree):
        if truncation_degree < 1:
            raise ValidationError("cutoff_exceeded", "truncation degree must be >= 1")
        seen = set()
        for g in generators:
            if g.name in seen:
                raise ValidationError("duplicate_generator", f"generator {g.name!r} declared twice")
            seen.add(g.name)
            if g.degree <= 0:
                raise ValidationError(
                    "degree_mismatch",
                    f"generator {g.name!r} has degree {g.degree}; generators must have degree >= 1",
                )
            if g.hodge_type is not None and g.weight is not None:
                if g.weight != g.hodge_type[0] + g.hodge_type[1]:
                    raise ValidationError(
                        "weight_violation",
                        f"generator {g.name!r}: weight {g.weight} contradicts type {g.hodge_type}",
                    )
        # auto-derive weights from Hodge types
        fixed = []
        for g in generators:
            if g.hodge_type is not None and g.weight is None:
                g = Generator(g.name, g.degree, g.hodge_type[0] + g.hodge_type[1], g.hodge_type)
            fixed.append(g)
        self.generators = tuple(fixed)
        self.truncation_degree = truncation_degree
        # canonical order: by (degree, declaration index)
        decl = {g.name: i for i, g in enumerate(self.generators)}
        self.order = tuple(sorted(self.generators, key=lambda g: (g.degree, decl[g.name])))
        self.rank_of = {g.name: r for r, g in enumerate(self.order)}
        self._degrees = tuple(g.degree for g in self.order)
        self._weights = tuple(g.weight for g in self.order)
        self._diff = {g.name: Element(self, {}) for g in self.generators}
        self._finalized = False
        self._basis_cache = {}
        self._dmono_cache = {}
        self._complex = None

    # -- construction ------------------------------------------------------

    def set_differential(self, name, element):
        if self._finalized:
            raise ValidationError("mixed_presentations", "presentation is frozen")
        if name not in self._diff:
            raise ValidationError("unknown_generator", f"no generator named {name!r}")
        self._diff[name] = element
        return self

    def finalize(self):
        for g in self.generators:
            dg = self._diff[g.name]
            if dg.is_zero():
                continue
            if not dg.is_homogeneous() or dg.degree != g.degree + 1:
                raise ValidationError(
                    "degree_mismatch",
                    f"d({g.name}) must be homogeneous of degree {g.degree + 1}",
                )
            if self.weighted:
                for p in dg.terms:
                    if self.powers_weight(p) != g.weight:
                        raise ValidationError(
                            "weight_violation",
                            f"d({g.name}) is not weight-homogeneous of weight {g.weight}",
                        )
        for g in self.generators:
            residual = self._diff[g.name].d()
            if not residual.is_zero():
                raise ValidationError(
                    "d2_nonzero",
                    f"d(d({g.name})) = {residual} is nonzero",
                )
        self._finalized = True
        return self

    # -- structure ---------------------------------------------------------

    @property
    def weighted(self):
        # vacuously true for the unit presentation
        return all(g.weight is not None for g in self.generators)

    @property
    def typed(self):
        return all(g.hodge_type is not None for g in self.generators)

    def generator(self, name):
        for g in self.generators:
            if g.name == name:
                return g
        raise ValidationError("unknown_generator", f"no generator named {name!r}")

    def differential_of(self, name):
        self.generator(name)
        return self._diff[name]

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {(): Q1})

    def gen(self, name):
        """The generator as an element."""
        r = self.rank_of.get(name)
        if r is None:
            raise ValidationError("unknown_generator", f"no generator named {name!r}")
        return Element(self, {((r, 1),): Q1})

    def without_weights(self):
        """A copy of this presentation with weights and types stripped."""
        plain = CdgaPresentation(
            [Generator(g.name, g.degree) for g in self.generators], self.truncation_degree
        )
        for g in self.generators:
            plain.set_differential(g.name, reinterpret(self._diff[g.name], plain))
        return plain.finalize()

    # -- monomial bookkeeping ----------------------------------------------

    def powers_degree(self, powers):
        return sum(e * self._degrees[r] for r, e in powers)

    def powers_weight(self, powers):
        if not self.weighted:
            return None
        return sum(e * self._weights[r] for r, e in powers)

    def powers_hodge_type(self, powers):
        i = j = 0
        for r, e in powers:
            t = self.order[r].hodge_type
            if t is None:
                raise ValidationError("weight_violation", "presentation is not fully typed")
            i += e * t[0]
            j += e * t[1]
        return (i, j)

    def powers_str(self, powers):
        if not powers:
            return "1"
        bits = []
        for r, e in powers:
            name = self.order[r].name
            bits.append(name if e == 1 else f"{name}^{e}")
        return "*".join(bits)

    def merge_powers(self, p1, p2):
        """Product of two canonical monomials: (sign, powers) with truncation."""
        degs = self._degrees
        odd1 = [r for r, _ in p1 if degs[r] % 2]
        odd2 = [r for r, _ in p2 if degs[r] % 2]
        if odd1 and odd2:
            s1 = set(odd1)
            inv = 0
            for r2 in odd2:
                if r2 in s1:
                    return 0, None
                inv += sum(1 for r1 in odd1 if r1 > r2)
            sign = -1 if inv % 2 else 1
        else:
            sign = 1
        merged = dict(p1)
        for r, e in p2:
            merged[r] = merged.get(r, 0) + e
        powers = tuple(sorted(merged.items()))
        if self.powers_degree(powers) > self.truncation_degree:
            return 1, None
        return sign, powers

    def monomial_from_factors(self, factors):
        """Canonicalize an ordered factor list [(name, exp), ...].

        Returns (sign, powers) with sign 0 when an odd generator repeats,
        and powers None when the degree overflows the truncation.
        """
        sign = 1
        powers = ()
        for name, exp in factors:
            r = self.rank_of.get(name)
            if r is None:
                raise ValidationError("unknown_generator", f"no generator named {name!r}")
            if exp < 0:
                raise ValidationError("degree_mismatch", f"negative exponent on {name!r}")
            for _ in range(exp):
                s, powers = self.merge_powers(powers, ((r, 1),))
                if s == 0:
                    return 0, None
                sign *= s
                if powers is None:
                    return sign, None
        return sign, powers

    def basis(self, degree):
        """All canonical monomials of the given degree, deterministically ordered."""
        if degree < 0 or degree > self.truncation_degree:
            return []
        cached = self._basis_cache.get(degree)
        if cached is not None:
            return cached
        out = []
        order = self.order
        n = len(order)

        def rec(i, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if i == n:
                return
            g = order[i]
            cap = 1 if g.degree % 2 else remaining // g.degree
            for e in range(min(cap, remaining // g.degree), 0, -1):
                acc.append((i, e))
                rec(i + 1, remaining - e * g.degree, acc)
                acc.pop()
            rec(i + 1, remaining, acc)

        rec(0, degree, [])
        self._basis_cache[degree] = out
        return out

    def basis_monomials(self, degree):
        return [Monomial(self, p) for p in self.basis(degree)]

    def d_monomial(self, powers):
        cached = self._dmono_cache.get(powers)
        if cached is not None:
            return cached
        out = self.zero()
        sign_deg = 0
        for i, (r, e) in enumerate(powers):
            g = self.order[r]
            dg = self._diff[g.name]
            if not dg.is_zero():
                prefix = powers[:i] + (((r, e - 1),) if e > 1 else ())
                suffix = powers[i + 1 :]
                piece = Element(self, {prefix: Q1}) * dg * Element(self, {suffix: Q1})
                sign = -1 if sign_deg % 2 else 1
                out = out + piece.scale(sign * e)
            sign_deg += e * g.degree
        self._dmono_cache[powers] = out
        return out

    # -- plumbing ----------------------------------------------------------

    def complex(self):
        """The cochain complex view used by the cohomology engine (cached)."""
        if self._complex is None:
            from .cohomology import PresentationComplex

            self._complex = PresentationComplex(self)
        return self._complex

    def signature(self):
        return (
            self.generators,
            tuple(sorted((n, tuple(sorted(e.terms.items()))) for n, e in self._diff.items())),
            self.truncation_degree,
        )

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, CdgaPresentation) and self.signature() == other.signature()

    def __hash__(self):
        return hash((self.generators, self.truncation_degree))

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"CdgaPresentation({gens}; N={self.truncation_degree})"


def reinterpret(element, target):
    """Move an element to another presentation with matching generator names."""
    out = target.zero()
    src = element.presentation
    for p, c in element.terms.items():
        factors = [(src.order[r].name, e) for r, e in p]
        sign, powers = target.monomial_from_factors(factors)
        if sign and powers is not None:
            out = out + Element(target, {powers: sign * c})
    return out


# -- the named kernel operations -------------------------------------------


def multiply(a, b):
    """Graded-commutative product; bilinear, associative, Koszul-signed."""
    return a * b


def differentiate(a):
    """The differential, extended by the Leibniz rule."""
    return a.d()


def basis(presentation, degree):
    """Canonical monomial basis of the given degree."""
    return presentation.basis_monomials(degree)


class CdgaMorphism:
    """An algebra map determined by images of generators.

    Validated to commute with the differentials and to respect degrees (and
    weights when both sides are weighted).  The target's truncation must not
    exceed the source's, otherwise the map would not factor through the
    source's truncation quotient.
    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        self._power_cache = {}
        if target.truncation_degree > source.truncation_degree:
            raise ValidationError(
                "cutoff_exceeded",
                "target truncation exceeds the source truncation; the map does not "
                "descend to the source quotient",
            )
        for g in source.generators:
            if g.name not in self.images:
                raise ValidationError("unknown_generator", f"no image given for {g.name!r}")
            img = self.images[g.name]
            if img.presentation != target:
                raise ValidationError("mixed_presentations", f"image of {g.name!r} is over the wrong presentation")
            if not img.is_zero():
                if not img.is_homogeneous() or img.degree != g.degree:
                    raise ValidationError(
                        "degree_mismatch", f"image of {g.name!r} must be homogeneous of degree {g.degree}"
                    )
                if source.weighted and target.weighted:
                    for p in img.terms:
                        if target.powers_weight(p) != g.weight:
                            raise ValidationError(
                                "weight_violation",
                                f"image of {g.name!r} is not weight-homogeneous of weight {g.weight}",
                            )
        for g in source.generators:
            lhs = self.apply(source.differential_of(g.name))
            rhs = self.images[g.name].d()
            if lhs != rhs:
                raise ValidationError(
                    "d2_nonzero",
                    f"morphism does not commute with d on generator {g.name!r}",
                )

    @classmethod
    def identity(cls, presentation):
        return cls(presentation, presentation, {g.name: presentation.gen(g.name) for g in presentation.generators})

    def _power(self, rank, exp):
        key = (rank, exp)
        cached = self._power_cache.get(key)
        if cached is None:
            name = self.source.order[rank].name
            cached = self.target.one()
            for _ in range(exp):
                cached = cached * self.images[name]
            self._power_cache[key] = cached
        return cached

    def apply(self, element):
        if element.presentation != self.source:
            raise ValidationError("mixed_presentations", "element is not over the source presentation")
        out = self.target.zero()
        for p, c in element.terms.items():
            img = self.target.one()
            for r, e in p:
                img = img * self._power(r, e)
            out = out + img.scale(c)
        return out

    def compose(self, inner):
        """self o inner (inner applied first)."""
        if inner.target != self.source:
            raise ValidationError("mixed_presentations", "morphisms do not compose")
        images = {g.name: self.apply(inner.images[g.name]) for g in inner.source.generators}
        return CdgaMorphism(inner.source, self.target, images)

    def __repr__(self):
        ims = ", ".join(f"{n} -> {v}" for n, v in self.images.items())
        return f"CdgaMorphism({ims})"


def build_presentation(gens, diffs=None, truncate=None):
    """Convenience constructor used by fixtures and tests.

    gens: iterable of (name, degree) / (name, degree, weight) /
    (name, degree, weight, (i, j)) tuples; diffs: map name -> expression
    string or Element.
    """
    from .grammar import parse_expression

    if truncate is None:
        raise ValidationError("cutoff_exceeded", "a truncation degree is required")
    generators = []
    for spec in gens:
        name, degree = spec[0], spec[1]
        weight = spec[2] if len(spec) > 2 else None
        htype = spec[3] if len(spec) > 3 else None
        generators.append(Generator(name, degree, weight, htype))
    pres = CdgaPresentation(generators, truncate)
    for name, value in (diffs or {}).items():
        if isinstance(value, str):
            value, _ = parse_expression(value, pres)
        pres.set_differential(name, value)
    return pres.finalize()


def random_homogeneous(presentation, degree, rng, max_terms=3):
    """A seeded random homogeneous element (possibly zero)."""
    monos = presentation.basis(degree)
    if not monos:
        return presentation.zero()
    out = presentation.zero()
    for _ in range(rng.randint(1, max_terms)):
        p = monos[rng.randrange(len(monos))]
        c = Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        out = out + Element(presentation, {p: c})
    return out
