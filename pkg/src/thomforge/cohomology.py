"""Cohomology of truncated cochain complexes, by exact sparse linear algebra.

Every structure that wants cohomology (a presentation, a Thom model, a
sub-complex given by basis vectors, a cohomology algebra with zero
differential) exposes the small ``CochainComplex`` interface below; the
engine assembles the differential per (degree, weight) block and row-reduces
over Q.  Degrees beyond a complex's truncation are empty blocks, matching the
quotient semantics of truncation.

Representative cocycles are chosen deterministically: boundaries are
echelonized first, then kernel vectors are inserted in canonical basis order
and the ones that add new pivots become the representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .linalg import TrackedEchelon, nullspace, solve

Q1 = Fraction(1)


class CochainComplex:
    """Interface consumed by the engine.

    block_keys(n, p) lists opaque basis keys of the (degree n, weight p)
    block; p=None means the whole degree in canonical order.  d_block returns
    one column per key, with coordinates indexed into block_keys(n+1, p).
    """

    truncation = 0
    weighted = False

    def __init__(self):
        self._hcache = {}
        self._dcache = {}

    def block_weights(self, n):
        return [None]

    def block_keys(self, n, p=None):
        raise NotImplementedError

    def d_block(self, n, p=None):
        key = (n, p)
        if key not in self._dcache:
            index = {k: i for i, k in enumerate(self.block_keys(n + 1, p))}
            cols = []
            for k in self.block_keys(n, p):
                cols.append(self._d_key(n, p, k, index))
            self._dcache[key] = cols
        return self._dcache[key]

    def _d_key(self, n, p, key, target_index):
        raise NotImplementedError

    def element_of(self, n, vec, p=None):
        """A domain value (Element, suspended element, ...) for a coordinate vector."""
        raise NotImplementedError


@dataclass
class HBlock:
    """Cohomology of one (degree, weight) block."""

    degree: int
    weight: object
    space_dim: int
    cocycle_dim: int
    boundary_dim: int
    reps: list  # coordinate vectors over block keys
    _classes: TrackedEchelon = field(repr=False, default=None)

    @property
    def dim(self):
        return len(self.reps)

    def class_coords(self, vec):
        """Coordinates of a closed vector in the representative basis."""
        res, combo = self._classes.reduce(vec)
        if res:
            raise ValidationError("d2_nonzero", "vector is not a cocycle of this block")
        return combo


def h_block(cx, n, p=None):
    key = (n, p)
    cached = cx._hcache.get(key)
    if cached is not None:
        return cached
    keys = cx.block_keys(n, p)
    cols = cx.d_block(n, p)
    kernel = nullspace(cols)
    ech = TrackedEchelon()
    if n > 0:
        for b in cx.d_block(n - 1, p):
            if b:
                ech.insert(b, {})
    boundary_dim = ech.rank
    reps = []
    for z in kernel:
        added, _ = ech.insert(z, {len(reps): Q1})
        if added:
            reps.append(z)
    block = HBlock(
        degree=n,
        weight=p,
        space_dim=len(keys),
        cocycle_dim=len(kernel),
        boundary_dim=boundary_dim,
        reps=reps,
        _classes=ech,
    )
    cx._hcache[key] = block
    return block


@dataclass
class GradedReport:
    """Dimensions and representative cocycles per degree, with an optional
    per-weight refinement."""

    dims: dict
    representatives: dict
    weight_dims: dict | None = None

    def dimension(self, n):
        return self.dims.get(n, 0)

    def betti_row(self, up_to):
        return [self.dims.get(n, 0) for n in range(up_to + 1)]


def graded_report(cx, up_to, with_weights=None):
    if with_weights is None:
        with_weights = cx.weighted
    dims = {}
    reps = {}
    wdims = {} if with_weights else None
    for n in range(up_to + 1):
        block = h_block(cx, n, None)
        dims[n] = block.dim
        reps[n] = [cx.element_of(n, v) for v in block.reps]
        if with_weights:
            per = {}
            for p in cx.block_weights(n):
                wb = h_block(cx, n, p)
                if wb.dim:
                    per[p] = wb.dim
            wdims[n] = per
    return GradedReport(dims=dims, representatives=reps, weight_dims=wdims)


class PresentationComplex(CochainComplex):
    """The cochain complex of a presentation, basis = canonical monomials."""

    def __init__(self, pres):
        super().__init__()
        self.pres = pres
        self.truncation = pres.truncation_degree
        self.weighted = pres.weighted

    def block_weights(self, n):
        if not self.weighted:
            return [None]
        seen = []
        for powers in self.pres.basis(n):
            w = self.pres.powers_weight(powers)
            if w not in seen:
                seen.append(w)
        return sorted(seen)

    def block_keys(self, n, p=None):
        monos = self.pres.basis(n)
        if p is None:
            return monos
        return [m for m in monos if self.pres.powers_weight(m) == p]

    def _d_key(self, n, p, key, target_index):
        img = self.pres.d_monomial(key)
        col = {}
        for powers, c in img.terms.items():
            col[target_index[powers]] = c
        return col

    def element_of(self, n, vec, p=None):
        from .algebra import Element

        keys = self.block_keys(n, p)
        terms = {keys[i]: c for i, c in vec.items()}
        return Element(self.pres, terms)

    def coords_of(self, element, n, p=None):
        index = {k: i for i, k in enumerate(self.block_keys(n, p))}
        vec = {}
        for powers, c in element.terms.items():
            vec[index[powers]] = c
        return vec


class ZeroDifferentialComplex(CochainComplex):
    """The cohomology of another complex, as a complex with zero differential.

    Keys index the total-block representative classes of the ambient complex,
    so class coordinates computed in the ambient complex can be used directly
    as coordinates here.
    """

    def __init__(self, ambient, up_to):
        super().__init__()
        self.ambient = ambient
        self.truncation = min(up_to, ambient.truncation)
        self.weighted = False

    def block_keys(self, n, p=None):
        if n < 0 or n > self.truncation:
            return []
        return list(range(h_block(self.ambient, n, None).dim))

    def _d_key(self, n, p, key, target_index):
        return {}

    def element_of(self, n, vec, p=None):
        pieces = []
        for i, c in sorted(vec.items()):
            rep = h_block(self.ambient, n, None).reps[i]
            pieces.append((c, self.ambient.element_of(n, rep)))
        return pieces


class BasisSubComplex(CochainComplex):
    """A sub-cochain-complex of an ambient complex, one basis per block.

    ``blocks`` maps (n, p) to a list of coordinate vectors over the ambient
    (n, p) block.  The differential of each basis vector must lie in the span
    of the next block's basis (validated on construction).
    """

    def __init__(self, ambient, blocks):
        super().__init__()
        self.ambient = ambient
        # the sub-complex is itself truncated at its top populated degree
        self.truncation = max((n for (n, p) in blocks), default=0)
        self.weighted = ambient.weighted
        self.blocks = blocks
        self._span = {}
        for (n, p), vecs in sorted(blocks.items()):
            ech = TrackedEchelon()
            for i, v in enumerate(vecs):
                ech.insert(v, {i: Q1})
            self._span[(n, p)] = ech
        for (n, p), vecs in sorted(blocks.items()):
            if n + 1 > self.truncation:
                continue
            for v in vecs:
                img = self._ambient_d(n, p, v)
                if img and (n + 1, p) not in self._span:
                    raise ValidationError("d2_nonzero", "sub-complex is not closed under d")
                if img:
                    res, _ = self._span[(n + 1, p)].reduce(img)
                    if res:
                        raise ValidationError("d2_nonzero", "sub-complex is not closed under d")

    def _ambient_d(self, n, p, vec):
        cols = self.ambient.d_block(n, p)
        out = {}
        for i, c in vec.items():
            for j, x in cols[i].items():
                new = out.get(j, Fraction(0)) + c * x
                if new:
                    out[j] = new
                else:
                    out.pop(j, None)
        return out

    def block_weights(self, n):
        ws = sorted({p for (m, p) in self.blocks if m == n}, key=lambda x: (x is None, x))
        return ws or [None]

    def block_keys(self, n, p=None):
        if p is not None:
            return [(p, i) for i in range(len(self.blocks.get((n, p), [])))]
        keys = []
        for p2 in self.block_weights(n):
            keys.extend((p2, i) for i in range(len(self.blocks.get((n, p2), []))))
        return keys

    def _d_key(self, n, p, key, target_index):
        w, i = key
        if n + 1 > self.truncation:
            return {}
        vec = self.blocks[(n, w)][i]
        img = self._ambient_d(n, w, vec)
        if not img:
            return {}
        res, combo = self._span[(n + 1, w)].reduce(img)
        col = {}
        for j, c in combo.items():
            col[target_index[(w, j)]] = c
        return col

    def ambient_vector(self, n, key):
        """The stored vector, in total ambient coordinates."""
        w, i = key
        vec = self.blocks[(n, w)][i]
        block_keys = self.ambient.block_keys(n, w)
        total_index = {k: i2 for i2, k in enumerate(self.ambient.block_keys(n, None))}
        return {total_index[block_keys[i2]]: c for i2, c in vec.items()}

    def element_of(self, n, vec, p=None):
        keys = self.block_keys(n, p)
        total = {}
        for i, c in vec.items():
            amb = self.ambient_vector(n, keys[i])
            for j, x in amb.items():
                new = total.get(j, Fraction(0)) + c * x
                if new:
                    total[j] = new
                else:
                    total.pop(j, None)
        return self.ambient.element_of(n, total)


class LinearMap:
    """A degree-preserving cochain map given key-by-key in total coordinates."""

    def __init__(self, source, target, apply_key):
        self.source = source
        self.target = target
        self._apply_key = apply_key
        self._cache = {}

    def apply_vec(self, n, vec):
        out = {}
        keys = self.source.block_keys(n, None)
        for i, c in vec.items():
            key = keys[i]
            img = self._cache.get((n, i))
            if img is None:
                img = self._apply_key(n, key)
                self._cache[(n, i)] = img
            for j, x in img.items():
                new = out.get(j, Fraction(0)) + c * x
                if new:
                    out[j] = new
                else:
                    out.pop(j, None)
        return out


@dataclass
class QuasiIsoRow:
    degree: int
    source_dim: int
    target_dim: int
    rank: int

    @property
    def iso(self):
        return self.source_dim == self.target_dim == self.rank


@dataclass
class QuasiIsoReport:
    ok: bool
    rows: list

    def __bool__(self):
        return self.ok


def quasi_iso_report(linear_map, up_to):
    """Check that the induced maps on cohomology are isomorphisms up to a degree."""
    rows = []
    ok = True
    for n in range(up_to + 1):
        sb = h_block(linear_map.source, n, None)
        tb = h_block(linear_map.target, n, None)
        ech = TrackedEchelon()
        rank = 0
        for rep in sb.reps:
            img = linear_map.apply_vec(n, rep)
            coords = tb.class_coords(img)
            added, _ = ech.insert(coords, {}) if coords else (False, None)
            if added:
                rank += 1
        row = QuasiIsoRow(n, sb.dim, tb.dim, rank)
        rows.append(row)
        ok = ok and row.iso
    return QuasiIsoReport(ok=ok, rows=rows)


def morphism_map(f):
    """The LinearMap of a CdgaMorphism between presentation complexes."""
    src = f.source.complex()
    tgt = f.target.complex()

    def apply_key(n, key):
        from .algebra import Element

        img = f.apply(Element(f.source, {key: Q1}))
        return tgt.coords_of(img, n)

    return LinearMap(src, tgt, apply_key)


def cohomology(presentation, up_to):
    """Betti numbers and representative cocycles up to a degree.

    Requires up_to <= N - 1 so that both the incoming image and the outgoing
    kernel are honest (not artifacts of the truncation quotient).
    """
    if up_to > presentation.truncation_degree - 1:
        raise ValidationError(
            "cutoff_exceeded",
            f"cohomology requested up to degree {up_to} but the truncation degree "
            f"{presentation.truncation_degree} only supports {presentation.truncation_degree - 1}",
        )
    return graded_report(presentation.complex(), up_to)


def is_quasi_iso(f, up_to):
    """Whether a morphism induces isomorphisms on H^k for all k <= up_to.

    Degrees beyond the target's truncation are zero blocks (truncation is a
    quotient), so a map onto a coarser truncation can still be tested through
    the requested range.
    """
    if up_to > f.source.truncation_degree:
        raise ValidationError("cutoff_exceeded", "requested degree exceeds the source truncation")
    return quasi_iso_report(morphism_map(f), up_to)


def solve_primitive(cx, target_vec, n):
    """Solve d(x) = target for x in degree n - 1, in total block coordinates."""
    cols = cx.d_block(n - 1, None)
    return solve(cols, target_vec)
