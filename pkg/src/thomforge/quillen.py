"""Free graded Lie algebras over Q and Lie models of Thom spaces of formal
bases.

Elements are kept in canonical form through the embedding into the tensor
algebra: [a, b] expands to a(x)b - (-1)^{|a||b|} b(x)a, so equality, linear
algebra, and derivations are all word arithmetic.  The basis of a graded
component is the super-Lyndon basis: standard Lyndon words under standard
bracketing, plus the self-brackets [b_w, b_w] of odd-degree Lyndon words.

Degrees are homological; a differential has degree -1.  Dual generators of a
cohomology basis element of degree p sit in degree p - 1 (the desuspension is
applied here, once).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CdgaPresentation
from .cohomology import h_block
from .errors import ValidationError

Q1 = Fraction(1)


@dataclass(frozen=True)
class LieGenerator:
    name: str
    degree: int


class FreeLieElement:
    """A Q-combination of tensor words over a fixed generator tuple."""

    __slots__ = ("gens", "words")

    def __init__(self, gens, words):
        self.gens = gens  # tuple[LieGenerator, ...]
        self.words = words  # dict[tuple[int, ...], Fraction]

    def is_zero(self):
        return not self.words

    def word_degree(self, word):
        return sum(self.gens[i].degree for i in word)

    @property
    def degree(self):
        degs = {self.word_degree(w) for w in self.words}
        if len(degs) != 1:
            raise ValidationError("degree_mismatch", "element is zero or inhomogeneous")
        return degs.pop()

    def _check(self, other):
        if self.gens != other.gens:
            raise ValidationError("mixed_presentations", "elements over different generator sets")

    def __add__(self, other):
        self._check(other)
        words = dict(self.words)
        for w, c in other.words.items():
            new = words.get(w, 0) + c
            if new:
                words[w] = new
            else:
                words.pop(w, None)
        return FreeLieElement(self.gens, words)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return FreeLieElement(self.gens, {})
        return FreeLieElement(self.gens, {w: c * x for w, x in self.words.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, FreeLieElement)
            and self.gens == other.gens
            and self.words == other.words
        )

    def __repr__(self):
        if not self.words:
            return "0"
        bits = []
        for w in sorted(self.words):
            label = ".".join(self.gens[i].name for i in w)
            bits.append(f"{self.words[w]}*{label}")
        return " + ".join(bits)


def lie_zero(gens):
    return FreeLieElement(tuple(gens), {})


def lie_generator(gens, index):
    gens = tuple(gens)
    return FreeLieElement(gens, {(index,): Q1})


def bracket(a, b):
    """[a, b] = ab - (-1)^{|a||b|} ba, expanded wordwise."""
    a._check(b)
    words = {}
    for u, cu in a.words.items():
        du = a.word_degree(u)
        for v, cv in b.words.items():
            dv = b.word_degree(v)
            sign = -1 if (du * dv) % 2 else 1
            for w, c in ((u + v, cu * cv), (v + u, -sign * cu * cv)):
                new = words.get(w, 0) + c
                if new:
                    words[w] = new
                else:
                    words.pop(w, None)
    return FreeLieElement(a.gens, words)


@dataclass
class LieBasisElement:
    tree: object  # int | (tree, tree)
    degree: int
    element: FreeLieElement
    label: str


def _is_lyndon(word):
    n = len(word)
    for k in range(1, n):
        if word[k:] + word[:k] <= word:
            return False
    return True


def _standard_bracketing(word, gens):
    if len(word) == 1:
        return word[0], lie_generator(gens, word[0])
    # split at the longest proper Lyndon suffix
    for cut in range(1, len(word)):
        if _is_lyndon(word[cut:]):
            left_tree, left = _standard_bracketing(word[:cut], gens)
            right_tree, right = _standard_bracketing(word[cut:], gens)
            return (left_tree, right_tree), bracket(left, right)
    raise AssertionError("unreachable: every Lyndon word has a standard factorization")


def _tree_label(tree, gens):
    if isinstance(tree, int):
        return gens[tree].name
    l, r = tree
    return f"[{_tree_label(l, gens)},{_tree_label(r, gens)}]"


def free_lie_basis(generators, degree):
    """Super-Lyndon basis of the given total degree, deterministically ordered."""
    gens = tuple(generators)
    if degree <= 0 or not gens:
        return []
    words = []

    def grow(prefix, remaining):
        if remaining == 0:
            words.append(tuple(prefix))
            return
        for i, g in enumerate(gens):
            if g.degree <= remaining:
                prefix.append(i)
                grow(prefix, remaining - g.degree)
                prefix.pop()

    grow([], degree)
    out = []
    for w in sorted(words, key=lambda w: (len(w), w)):
        if _is_lyndon(w):
            tree, el = _standard_bracketing(w, gens)
            out.append(LieBasisElement(tree, degree, el, _tree_label(tree, gens)))
    # squares of odd-degree basis brackets survive in the graded setting
    if degree % 2 == 0 and (degree // 2) % 2 == 1:
        for item in free_lie_basis(gens, degree // 2):
            sq = bracket(item.element, item.element)
            if not sq.is_zero():
                tree = (item.tree, item.tree)
                out.append(LieBasisElement(tree, degree, sq, _tree_label(tree, gens)))
    return out


class DglPresentation:
    """A free graded Lie algebra with a degree -1 differential on generators.

    The differential is stored as elements; when it was constructed from
    quadratic data the bracket terms are kept for display and for the
    Thom-model construction.
    """

    def __init__(self, generators, differential=None, truncation=None, quadratic=None):
        names = set()
        for g in generators:
            if g.name in names:
                raise ValidationError("duplicate_generator", f"generator {g.name!r} declared twice")
            names.add(g.name)
            if g.degree <= 0:
                raise ValidationError("degree_mismatch", f"generator {g.name!r} must have positive degree")
        self.generators = tuple(generators)
        self.index_of = {g.name: i for i, g in enumerate(self.generators)}
        self.truncation = truncation if truncation is not None else max(
            (g.degree for g in self.generators), default=1
        )
        self.differential = {}
        self.quadratic = None
        if quadratic is not None:
            # quadratic: dict name -> list of (coeff, name_a, name_b)
            self.quadratic = {n: list(terms) for n, terms in quadratic.items()}
            for name, terms in self.quadratic.items():
                el = lie_zero(self.generators)
                for coeff, na, nb in terms:
                    el = el + bracket(self.gen(na), self.gen(nb)).scale(coeff)
                self.differential[name] = el
        for name, el in (differential or {}).items():
            self.differential[name] = el
        for g in self.generators:
            self.differential.setdefault(g.name, lie_zero(self.generators))
        for g in self.generators:
            dg = self.differential[g.name]
            if not dg.is_zero() and dg.degree != g.degree - 1:
                raise ValidationError(
                    "degree_mismatch", f"d({g.name}) must have degree {g.degree - 1}"
                )

    def gen(self, name):
        i = self.index_of.get(name)
        if i is None:
            raise ValidationError("unknown_generator", f"no generator named {name!r}")
        return lie_generator(self.generators, i)

    def d(self, element):
        """Extend the generator differential as a degree -1 derivation."""
        out = lie_zero(self.generators)
        for word, c in element.words.items():
            prefix_degree = 0
            for pos, idx in enumerate(word):
                dg = self.differential[self.generators[idx].name]
                if not dg.is_zero():
                    sign = -1 if prefix_degree % 2 else 1
                    for dw, dc in dg.words.items():
                        w = word[:pos] + dw + word[pos + 1 :]
                        new = out.words.get(w, 0) + sign * c * dc
                        if new:
                            out.words[w] = new
                        else:
                            out.words.pop(w, None)
                prefix_degree += self.generators[idx].degree
        return out

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"DglPresentation({gens})"


@dataclass
class DglReport:
    ok: bool
    failures: list


def validate_dgl(dgl, bracket_samples=None):
    """d^2 = 0 on every generator; Leibniz on sample bracket pairs."""
    failures = []
    for g in dgl.generators:
        res = dgl.d(dgl.d(dgl.gen(g.name)))
        if not res.is_zero():
            failures.append(f"d^2({g.name}) = {res}")
    pairs = bracket_samples
    if pairs is None:
        pairs = []
        for i, gi in enumerate(dgl.generators):
            for gj in dgl.generators[i:]:
                pairs.append((dgl.gen(gi.name), dgl.gen(gj.name)))
    for a, b in pairs:
        if a.is_zero() or b.is_zero():
            continue
        lhs = dgl.d(bracket(a, b))
        sign = -1 if a.degree % 2 else 1
        rhs = bracket(dgl.d(a), b) + bracket(a, dgl.d(b)).scale(sign)
        if lhs != rhs:
            failures.append("Leibniz fails on a sampled bracket")
    return DglReport(ok=not failures, failures=failures)


# -- duals of multiplication ------------------------------------------------


class EulerDualMap:
    """phi_e: the transpose of multiplication by e on the cohomology of a
    zero-differential presentation, read on dual (homology) generators.

    Generators are labelled v{p-1}_{i} for the i-th degree-p basis class, the
    shift by one being the desuspension into Lie-model degrees.
    """

    def __init__(self, ring, e):
        if any(not ring.differential_of(g.name).is_zero() for g in ring.generators):
            raise ValidationError("non_quadratic", "the ring must have zero differential")
        if not e.is_zero():
            if not e.is_homogeneous():
                raise ValidationError("euler_inhomogeneous", "Euler class must be homogeneous")
        self.ring = ring
        self.e = e
        self.rank = 0 if e.is_zero() else e.degree
        self._matrices = {}

    def basis(self, p):
        return self.ring.basis(p)

    def generator_names(self, up_to):
        names = []
        for p in range(2, up_to + 2):
            for i, _ in enumerate(self.basis(p)):
                names.append((f"v{p - 1}_{i}", p - 1))
        return names

    def matrix(self, p):
        """Multiplication e: H^{p-rank} -> H^p as {(i, j): c} over basis indices."""
        if p not in self._matrices:
            from .algebra import Element

            src = self.basis(p - self.rank)
            index = {k: i for i, k in enumerate(self.basis(p))}
            mat = {}
            for j, powers in enumerate(src):
                img = self.e * Element(self.ring, {powers: Q1})
                for pw, c in img.terms.items():
                    mat[(index[pw], j)] = c
            self._matrices[p] = mat
        return self._matrices[p]

    def apply_name(self, name):
        """phi_e on a dual generator, as {name: coeff} over lower generators.

        Targets dual to the unit line (or to degree-1 classes, absent in the
        simply connected setting) are projected away.
        """
        deg, idx = _parse_vname(name)
        p = deg + 1  # cohomological degree of the paired class
        if p - self.rank < 2:
            return {}
        mat = self.matrix(p)
        out = {}
        for (i, j), c in mat.items():
            if i == idx:
                out[f"v{p - self.rank - 1}_{j}"] = c
        return out


def _parse_vname(name):
    if not name.startswith("v") or "_" not in name:
        raise ValidationError("unknown_generator", f"{name!r} is not a dual-basis generator name")
    deg, idx = name[1:].split("_", 1)
    return int(deg), int(idx)


def euler_dual_map(ring, e):
    """Dual of multiplication by the Euler class on a zero-differential ring."""
    return EulerDualMap(ring, e)


def quadratic_dual_dgl(ring, up_to):
    """The quadratic Lie differential dual to the ring multiplication.

    For a zero-differential, simply connected ring this produces generators
    v{p-1}_{i} dual to the degree-p basis with

        d(v_c) = 1/2 * sum_{a,b} (-1)^{p_a} c^c_{a,b} [v_a, v_b],

    the structure constants taken over the positive-degree basis.
    """
    if any(not ring.differential_of(g.name).is_zero() for g in ring.generators):
        raise ValidationError("non_quadratic", "input ring must have zero differential")
    if ring.basis(1):
        raise ValidationError("not_simply_connected", "ring has classes in degree 1")
    from .algebra import Element

    gens = []
    positions = {}
    for p in range(2, up_to + 2):
        for i, _ in enumerate(ring.basis(p)):
            name = f"v{p - 1}_{i}"
            positions[(p, i)] = name
            gens.append(LieGenerator(name, p - 1))
    quadratic = {name: [] for name, _ in ((g.name, g) for g in gens)}
    for (pa, ia), name_a in positions.items():
        for (pb, ib), name_b in positions.items():
            pc = pa + pb
            targets = ring.basis(pc)
            if not targets:
                continue
            index = {k: i for i, k in enumerate(targets)}
            a_el = Element(ring, {ring.basis(pa)[ia]: Q1})
            b_el = Element(ring, {ring.basis(pb)[ib]: Q1})
            prod = a_el * b_el
            for pw, c in prod.terms.items():
                i_target = index[pw]
                target_name = positions.get((pc, i_target))
                if target_name is None:
                    continue
                sign = -1 if pa % 2 else 1
                coeff = Fraction(1, 2) * sign * c
                if coeff:
                    quadratic[target_name].append((coeff, name_a, name_b))
    quadratic = {n: _merge_quadratic(t) for n, t in quadratic.items() if t}
    return DglPresentation(gens, truncation=up_to, quadratic=quadratic)


def _merge_quadratic(terms):
    acc = {}
    for c, a, b in terms:
        acc[(a, b)] = acc.get((a, b), 0) + c
    return [(c, a, b) for (a, b), c in sorted(acc.items()) if c]


def quillen_thom_model(dgl, phi, rank):
    """Lie model of the Thom space over a formal base.

    Input: a dgl with quadratic, order-preserving differential (the dual of
    the base ring), the Euler dual map phi (an EulerDualMap or a plain
    {name: {name: coeff}} table), and the even bundle rank.  Output
    generators are the inputs shifted up by the rank plus one bottom
    generator u0 in degree rank - 1 with du0 = 0 (the suspended unit class;
    nothing in the differential formula touches it).

        d(s v_k) = sum lambda_{i,j} ([s phi(v_i), s v_j] + [s v_i, s phi(v_j)])
    """
    if rank % 2 != 0 or rank <= 0:
        raise ValidationError("odd_rank_unsupported", f"rank {rank} must be even and positive")
    if dgl.quadratic is None and any(not el.is_zero() for el in dgl.differential.values()):
        raise ValidationError("non_quadratic", "input differential is not given in quadratic form")
    order = {g.name: i for i, g in enumerate(dgl.generators)}
    for name, terms in (dgl.quadratic or {}).items():
        for _, na, nb in terms:
            if order[na] >= order[name] or order[nb] >= order[name]:
                raise ValidationError("non_quadratic", "differential is not order-preserving")

    def phi_of(name):
        if phi is None:
            return {}
        if isinstance(phi, EulerDualMap):
            return phi.apply_name(name)
        return dict(phi.get(name, {}))

    shifted = {g.name: f"s{g.name}" for g in dgl.generators}
    out_gens = [LieGenerator("u0", rank - 1)]
    out_gens += [LieGenerator(shifted[g.name], g.degree + rank) for g in dgl.generators]
    quadratic = {}
    for g in dgl.generators:
        terms = []
        for coeff, na, nb in (dgl.quadratic or {}).get(g.name, []):
            for m, c in sorted(phi_of(na).items()):
                terms.append((coeff * c, shifted[m], shifted[nb]))
            for m, c in sorted(phi_of(nb).items()):
                terms.append((coeff * c, shifted[na], shifted[m]))
        merged = _merge_quadratic(terms)
        if merged:
            quadratic[shifted[g.name]] = merged
    out = DglPresentation(out_gens, truncation=dgl.truncation + rank, quadratic=quadratic)
    report = validate_dgl(out)
    if not report.ok:
        raise ValidationError("d2_nonzero", "; ".join(report.failures))
    return out
