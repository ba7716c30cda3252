"""Small dense exact linear algebra.

Entries are any field-like ring elements (GScalar, Jet1) supporting + - *
and division by elements whose ``is_unit()`` is true.  Matrices are lists
of rows.  Pivots are chosen as the first unit in the column, which keeps
results deterministic.
"""
from __future__ import annotations

from .scalars import ZERO, ONE, GScalar

__all__ = ["rref", "rank", "nullspace", "solve", "inverse", "det", "matmul",
           "matvec", "transpose", "conj_transpose", "conj_matrix", "identity",
           "zeros", "column_basis", "in_span", "span_coords", "Span",
           "SingularMatrix"]


class SingularMatrix(ArithmeticError):
    pass


def _unit(x):
    return x.is_unit() if hasattr(x, "is_unit") else bool(x)


def zeros(m, n, z=ZERO):
    return [[z] * n for _ in range(m)]


def identity(n, one=ONE, z=ZERO):
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def conj_matrix(a):
    return [[x.conj() for x in r] for r in a]


def conj_transpose(a):
    return transpose(conj_matrix(a))


def matmul(a, b):
    if not a or not b:
        return [[] for _ in a]
    bt = transpose(b)
    out = []
    for r in a:
        row = []
        for c in bt:
            acc = ZERO
            for x, y in zip(r, c):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def matvec(a, v):
    out = []
    for r in a:
        acc = ZERO
        for x, y in zip(r, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(a, ncols=None):
    """Return (R, pivots) with R in reduced row echelon form."""
    m = [list(r) for r in a]
    if not m:
        return m, []
    n = len(m[0]) if ncols is None else ncols
    pivots = []
    row = 0
    for col in range(n):
        if row >= len(m):
            break
        p = next((i for i in range(row, len(m)) if _unit(m[i][col])), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        inv = 1 / m[row][col] if not isinstance(m[row][col], GScalar) else m[row][col].inverse()
        m[row] = [x * inv if x else x for x in m[row]]
        pr = m[row]
        for i in range(len(m)):
            if i != row:
                f = m[i][col]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], pr)]
        pivots.append(col)
        row += 1
    return m[:row] + [r for r in m[row:] if any(r)], pivots


def rank(a):
    return len(rref(a)[1]) if a else 0


def nullspace(a, n=None):
    """Basis of {x : a x = 0}; n is the column count when a has no rows."""
    if not a:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n or 0)]
    n = len(a[0])
    r, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(piv):
            if r[i][f]:
                v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a, b):
    """A particular solution of a x = b (free variables zero), or None."""
    m = len(a)
    if m == 0:
        return None if any(b) else []
    n = len(a[0])
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    r, piv = rref(aug, ncols=n + 1)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, p in enumerate(piv):
        x[p] = r[i][n]
    return x


def inverse(a):
    n = len(a)
    one = ONE
    aug = [list(r) + [one if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    r, piv = rref(aug, ncols=n)
    if piv != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in r]


def det(a):
    m = [list(r) for r in a]
    n = len(m)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if _unit(m[i][c])), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c] if not isinstance(m[c][c], GScalar) else m[c][c].inverse()
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def column_basis(vectors):
    """Indices of a maximal independent prefix-greedy subset of vectors."""
    sp = Span(len(vectors[0]) if vectors else 0)
    return [i for i, v in enumerate(vectors) if sp.add(v)]


class Span:
    """Incrementally maintained span of vectors of a fixed length."""

    def __init__(self, n, vectors=()):
        self.n = n
        self.rows = []      # echelon rows, each normalised at its pivot
        self.pivots = []
        for v in vectors:
            self.add(v)

    def reduce(self, v):
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, r)]
        return v

    def add(self, v):
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = w[p].inverse()
        w = [x * inv if x else x for x in w]
        for k, r in enumerate(self.rows):
            f = r[p]
            if f:
                self.rows[k] = [x - f * y if y else x for x, y in zip(r, w)]
        self.rows.append(w)
        self.pivots.append(p)
        return True

    def contains(self, v):
        return not any(self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)


def in_span(vectors, v):
    n = len(v)
    return Span(n, vectors).contains(v)


def span_coords(vectors, v):
    """Coefficients c with sum c_i vectors_i = v (vectors independent), or None."""
    if not vectors:
        return [] if not any(v) else None
    a = transpose(vectors)
    return solve(a, list(v))
