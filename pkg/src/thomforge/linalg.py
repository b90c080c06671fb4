"""Sparse exact linear algebra over the rationals.

Vectors are dicts mapping integer coordinate indices to nonzero Fractions.
Everything here is deterministic: pivots are the smallest indices, rows are
kept fully reduced, and insertion order is preserved in tags.
"""

from fractions import Fraction


def vec_scale(v, c):
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def vec_axpy(target, c, v):
    """target += c*v, in place, dropping zeros."""
    if not c:
        return target
    for i, x in v.items():
        new = target.get(i, 0) + c * x
        if new:
            target[i] = new
        else:
            target.pop(i, None)
    return target


def vec_sub(a, b):
    out = dict(a)
    return vec_axpy(out, Fraction(-1), b)


class TrackedEchelon:
    """Row echelon accumulator that tracks each row as a combination of the
    vectors that were inserted.

    Rows are normalized to unit pivots and kept mutually reduced, so a single
    ascending pass reduces any vector completely.
    """

    def __init__(self):
        self.rows = []  # list of (pivot, row_vec, tag_vec), pivot ascending

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return (residual, tag_combination) with vec = sum(c*row) + residual."""
        v = dict(vec)
        combo = {}
        for pivot, row, tag in self.rows:
            c = v.get(pivot)
            if c:
                vec_axpy(v, -c, row)
                vec_axpy(combo, c, tag)
        return v, combo

    def insert(self, vec, tag):
        """Insert vec (with tag expressing it over the caller's labels).

        Returns (added, residual_tag): when vec is dependent, residual_tag is
        tag minus the combination of existing row tags, i.e. a certificate
        that some combination of inserted vectors vanishes.
        """
        res, combo = self.reduce(vec)
        tag_res = dict(tag)
        vec_axpy(tag_res, Fraction(-1), combo)
        if not res:
            return False, tag_res
        pivot = min(res)
        inv = Fraction(1) / res[pivot]
        res = vec_scale(res, inv)
        tag_res = vec_scale(tag_res, inv)
        # keep existing rows reduced against the new pivot
        for k, (p, row, t) in enumerate(self.rows):
            c = row.get(pivot)
            if c:
                vec_axpy(row, -c, res)
                vec_axpy(t, -c, tag_res)
        self.rows.append((pivot, res, tag_res))
        self.rows.sort(key=lambda r: r[0])
        return True, tag_res


def echelon_basis(vectors):
    """Deterministic reduced basis of the span of the given vectors."""
    ech = TrackedEchelon()
    for j, v in enumerate(vectors):
        ech.insert(v, {j: Fraction(1)})
    return [dict(row) for _, row, _ in ech.rows]


def rank(vectors):
    ech = TrackedEchelon()
    for j, v in enumerate(vectors):
        ech.insert(v, {})
    return ech.rank


def nullspace(columns):
    """Kernel of the linear map sending unit vector j to columns[j].

    Returns coefficient vectors (dicts over column indices), in the
    deterministic order in which dependencies appear.
    """
    ech = TrackedEchelon()
    kernel = []
    for j, col in enumerate(columns):
        added, tag = ech.insert(col, {j: Fraction(1)})
        if not added:
            kernel.append(tag)
    return kernel


def solve(columns, rhs):
    """One exact solution x with sum(x[j]*columns[j]) == rhs, or None.

    The particular solution is the deterministic one with all free
    coordinates set to zero (relative to insertion order).
    """
    ech = TrackedEchelon()
    for j, col in enumerate(columns):
        ech.insert(col, {j: Fraction(1)})
    res, combo = ech.reduce(rhs)
    if res:
        return None
    return combo


def in_span(vectors, target):
    """Whether target lies in the span of vectors."""
    ech = TrackedEchelon()
    for v in vectors:
        ech.insert(v, {})
    res, _ = ech.reduce(target)
    return not res


def spans_equal(vectors_a, vectors_b):
    ea = TrackedEchelon()
    for v in vectors_a:
        ea.insert(v, {})
    eb = TrackedEchelon()
    for v in vectors_b:
        eb.insert(v, {})
    if ea.rank != eb.rank:
        return False
    return all(not ea.reduce(v)[0] for v in vectors_b)
