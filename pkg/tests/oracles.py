"""Independent brute-force oracles used only by the tests.

Dense Gaussian elimination over Fraction lists stands against the package's
sparse kernel; the free-Lie dimension oracle row-reduces the free
non-associative algebra modulo graded antisymmetry and Jacobi, never touching
the Lyndon construction.
"""

from fractions import Fraction

from thomforge.algebra import Element


def dense_rank(rows):
    """Row rank of a dense matrix given as lists of Fractions."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = Fraction(1) / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def dense_d_matrix(pres, n):
    """The differential A^n -> A^{n+1} as a dense matrix (rows = target basis)."""
    source = pres.basis(n)
    target = pres.basis(n + 1)
    index = {k: i for i, k in enumerate(target)}
    rows = [[Fraction(0)] * len(source) for _ in target]
    for j, powers in enumerate(source):
        img = pres.d_monomial(powers)
        for pw, c in img.terms.items():
            rows[index[pw]][j] = c
    return rows, len(source), len(target)


def brute_betti(pres, up_to):
    """Betti numbers by dense rank computations only."""
    dims = []
    prev_rank = 0
    for n in range(up_to + 1):
        rows, ncols, _ = dense_d_matrix(pres, n)
        r = dense_rank(rows)
        kernel = ncols - r
        dims.append(kernel - prev_rank)
        prev_rank = r
    return dims


def brute_weighted_dims(pres, n):
    """Per-weight cohomology dimensions at degree n, densely."""
    weights = sorted({pres.powers_weight(p) for p in pres.basis(n)})
    out = {}
    for w in weights:
        src = [p for p in pres.basis(n) if pres.powers_weight(p) == w]
        tgt = [p for p in pres.basis(n + 1) if pres.powers_weight(p) == w]
        below = [p for p in pres.basis(n - 1) if pres.powers_weight(p) == w]
        index = {k: i for i, k in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, powers in enumerate(src):
            for pw, c in pres.d_monomial(powers).terms.items():
                rows[index[pw]][j] = c
        r = dense_rank(rows)
        index_n = {k: i for i, k in enumerate(src)}
        rows_below = [[Fraction(0)] * len(below) for _ in src]
        for j, powers in enumerate(below):
            for pw, c in pres.d_monomial(powers).terms.items():
                rows_below[index_n[pw]][j] = c
        r_below = dense_rank(rows_below)
        dim = (len(src) - r) - r_below
        if dim:
            out[w] = dim
    return out


# -- free graded Lie algebra oracle ------------------------------------------


def _trees(degrees, target):
    """All binary bracket trees of the given total degree.

    A tree is an int (generator index) or a pair of trees.  Returns a list of
    (tree, degree) pairs, deterministic order.
    """
    by_degree = {}

    def gen(d):
        if d in by_degree:
            return by_degree[d]
        out = []
        for i, gd in enumerate(degrees):
            if gd == d:
                out.append(i)
        for dl in range(1, d):
            dr = d - dl
            for left in gen(dl):
                for right in gen(dr):
                    out.append((left, right))
        by_degree[d] = out
        return out

    return gen(target)


def _tree_degree(tree, degrees):
    if isinstance(tree, int):
        return degrees[tree]
    return _tree_degree(tree[0], degrees) + _tree_degree(tree[1], degrees)


def magma_lie_dimension(degrees, target):
    """dim of the degree component of the free graded Lie algebra, computed
    as trees modulo antisymmetry and Jacobi, by dense row reduction."""
    trees = _trees(degrees, target)
    index = {}
    for t in trees:
        index.setdefault(t, len(index))
    relations = []

    def add_relation(combo):
        row = [Fraction(0)] * len(index)
        for t, c in combo:
            row[index[t]] += c
        if any(row):
            relations.append(row)

    def deg(t):
        return _tree_degree(t, degrees)

    # antisymmetry and Jacobi at the root of every subtree, transported to
    # the root by bracketing with the surrounding context
    def expand_context(t):
        """All (context, subtree) pairs; the context rebuilds the full tree."""
        yield (lambda s: s), t
        if not isinstance(t, int):
            left, right = t
            for ctx, sub in expand_context(left):
                yield (lambda s, c=ctx, r=right: (c(s), r)), sub
            for ctx, sub in expand_context(right):
                yield (lambda s, c=ctx, l=left: (l, c(s))), sub

    for t in trees:
        for ctx, sub in expand_context(t):
            if isinstance(sub, int):
                continue
            a, b = sub
            sign = Fraction(-1) if (deg(a) * deg(b)) % 2 else Fraction(1)
            add_relation([(ctx((a, b)), Fraction(1)), (ctx((b, a)), sign)])
            if not isinstance(b, int):
                c1, c2 = b
                s = Fraction(-1) if (deg(a) * deg(c1)) % 2 else Fraction(1)
                add_relation(
                    [
                        (ctx((a, (c1, c2))), Fraction(1)),
                        (ctx(((a, c1), c2)), Fraction(-1)),
                        (ctx((c1, (a, c2))), -s),
                    ]
                )
    return len(index) - dense_rank(relations)
