"""Cohomology of the invariant complex by exact linear algebra.

All spaces are computed in the frame coordinates of a ComplexStructure, so
bidegrees are popcounts; representatives are returned in the fixed basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .linalg import Span, nullspace, transpose
from .exterior import Form, masks_of_degree, masks_of_bidegree, popcount, wedge, integrate
from .deformation import build_structure, gamma_forms
from .scalars import ZERO

__all__ = ["CohomologySpace", "NotACycle", "NotDefined", "WellDefinednessError",
           "de_rham", "dolbeault", "bott_chern", "aeppli", "frolicher_page",
           "e2_via_d1", "essential_space", "massey_triple", "MasseyResult",
           "duality_pairing_matrix", "hodge_numbers", "betti_numbers", "op_matrix",
           "INF_PAGE"]

INF_PAGE = 7


class NotACycle(ValueError):
    pass


class NotDefined(ValueError):
    pass


class WellDefinednessError(ArithmeticError):
    pass


def op_matrix(table, src, tgt, strict=True):
    idx = {m: r for r, m in enumerate(tgt)}
    M = [[ZERO] * len(src) for _ in tgt]
    for c, m in enumerate(src):
        for n, v in table[m].terms.items():
            r = idx.get(n)
            if r is None:
                if v and strict:
                    raise ValueError(f"operator leaves target space at mask {n}")
                continue
            M[r][c] = v
    return M


def _compose(t1, t2):
    """Table of t1 after t2."""
    out = []
    for m in range(64):
        acc = Form()
        for n, c in t2[m].terms.items():
            acc = acc + t1[n] * c
        out.append(acc)
    return out


def _image(table, src, tgt):
    """Basis of the image (vectors over tgt)."""
    sp = Span(len(tgt))
    out = []
    M = op_matrix(table, src, tgt)
    for col in transpose(M) if src else []:
        if sp.add(col):
            out.append(col)
    return out


def _kernel(tables, src, tgts, strict=True):
    rows = []
    for tb, tg in zip(tables, tgts):
        if tg:
            rows.extend(op_matrix(tb, src, tg, strict))
    return nullspace(rows, len(src))


@dataclass
class CohomologySpace:
    kind: str
    J: object
    masks: list
    cycles: list
    boundaries: list
    reps: list = field(default_factory=list)

    def __post_init__(self):
        bspan = Span(len(self.masks), self.boundaries)
        self._bspan = bspan
        zspan = Span(len(self.masks), self.cycles)
        for b in self.boundaries:
            if not zspan.contains(b):
                raise WellDefinednessError(f"{self.kind}: boundary outside cycle space")
        self._zspan = zspan
        if not self.reps:
            sp = Span(len(self.masks), self.boundaries)
            self.reps = [z for z in self.cycles if sp.add(z)]
        self._basis = self.reps + [r for r in _basis_of(self.boundaries)]

    @property
    def dimension(self):
        return len(self.reps)

    def _vec(self, u):
        v = self.J.to_frame(u)
        s = set(self.masks)
        for m, c in v.terms.items():
            if m not in s and c:
                raise NotACycle(f"{self.kind}: form has components outside the graded piece")
        return v.vector(self.masks)

    def _form(self, vec):
        return self.J.from_frame(Form.from_vector(vec, self.masks))

    def rep_forms(self):
        return [self._form(v) for v in self.reps]

    def cycle_forms(self):
        return [self._form(v) for v in self.cycles]

    def boundary_forms(self):
        return [self._form(v) for v in self.boundaries]

    def is_cycle(self, u):
        return self._zspan.contains(self._vec(u))

    def coords(self, u):
        """Coordinates of the class of the cycle u in the representative basis."""
        v = self._vec(u)
        if not self._zspan.contains(v):
            raise NotACycle(f"{self.kind}: form is not a cycle")
        x = linalg.span_coords(self._basis, v)
        return x[:self.dimension]

    def is_zero_class(self, u):
        return self._bspan.contains(self._vec(u))

    def rank_of(self, forms):
        return linalg.rank([self.coords(u) for u in forms]) if forms else 0


def _basis_of(vectors):
    if not vectors:
        return []
    sp = Span(len(vectors[0]))
    return [v for v in vectors if sp.add(v)]


def _J(J):
    return build_structure() if J is None else J


def _cached(J, key, fn):
    c = J.cache.get(key)
    if c is None:
        c = J.cache[key] = fn()
    return c


def de_rham(k, J=None):
    J = _J(J)

    def make():
        src = masks_of_degree(k)
        tgt = masks_of_degree(k + 1) if k < 6 else []
        z = _kernel([J.dga.table], src, [tgt])
        b = _image(J.dga.table, masks_of_degree(k - 1), src) if k > 0 else []
        return CohomologySpace(f"DR({k})", J, src, z, b)
    return _cached(J, ("DR", k), make)


def _bd(p, q):
    return masks_of_bidegree(p, q) if 0 <= p <= 3 and 0 <= q <= 3 else []


def dolbeault(p, q, J=None):
    J = _J(J)

    def make():
        src = _bd(p, q)
        z = _kernel([J.delbar.table], src, [_bd(p, q + 1)])
        b = _image(J.delbar.table, _bd(p, q - 1), src)
        return CohomologySpace(f"Dolbeault({p},{q})", J, src, z, b)
    return _cached(J, ("Dol", p, q), make)


def _ddbar(J):
    return _cached(J, ("ddbar-table",), lambda: _compose(J.del_.table, J.delbar.table))


def bott_chern(p, q, J=None):
    J = _J(J)

    def make():
        src = _bd(p, q)
        z = _kernel([J.del_.table, J.delbar.table], src, [_bd(p + 1, q), _bd(p, q + 1)])
        b = _image(_ddbar(J), _bd(p - 1, q - 1), src)
        return CohomologySpace(f"BottChern({p},{q})", J, src, z, b)
    return _cached(J, ("BC", p, q), make)


def aeppli(p, q, J=None):
    J = _J(J)

    def make():
        src = _bd(p, q)
        z = _kernel([_ddbar(J)], src, [_bd(p + 1, q + 1)])
        b = _basis_of(_image(J.del_.table, _bd(p - 1, q), src)
                      + _image(J.delbar.table, _bd(p, q - 1), src))
        return CohomologySpace(f"Aeppli({p},{q})", J, src, z, b)
    return _cached(J, ("A", p, q), make)


# ---------------------------------------------------------------- Frolicher

def _Z(J, r, p, k):
    """Z_r^p in degree k: x in F^p A^k with dx in F^{p+r} A^{k+1}."""
    amb = masks_of_degree(k)
    src = [m for m in amb if popcount(m & 7) >= p]
    tgt = [m for m in masks_of_degree(k + 1) if popcount(m & 7) < p + r] if k < 6 else []
    ker = _kernel([J.dga.table], src, [tgt], strict=False)
    pos = {m: i for i, m in enumerate(amb)}
    out = []
    for v in ker:
        w = [ZERO] * len(amb)
        for m, c in zip(src, v):
            w[pos[m]] = c
        out.append(w)
    return out


def frolicher_page(r, p, q, J=None):
    """E_r^{p,q} = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}); r = INF_PAGE as E_inf proxy."""
    J = _J(J)

    def make():
        k = p + q
        amb = masks_of_degree(k)
        Zr = _Z(J, r, p, k)
        den = list(_Z(J, r - 1, p + 1, k))
        if k > 0:
            prev_amb = masks_of_degree(k - 1)
            for v in _Z(J, r - 1, p - r + 1, k - 1):
                img = J.dga(Form.from_vector(v, prev_amb))
                den.append(img.vector(amb))
        den = _basis_of(den)
        sp = Span(len(amb), den)
        reps = [z for z in Zr if sp.add(z)]
        return CohomologySpace(f"E{r}({p},{q})", J, amb, Zr, den, reps)
    return _cached(J, ("E", r, p, q), make)


def e2_via_d1(p, q, J=None):
    """dim E_2^{p,q} from d_1 = [del] acting on Dolbeault classes.

    Verifies that del maps delbar-closed representatives to delbar-closed
    forms and delbar-exact ones to delbar-exact ones before quotienting.
    """
    J = _J(J)

    def d1(pp):
        src = dolbeault(pp, q, J)
        if not (0 <= pp + 1 <= 3) or not src.dimension:
            return [], src
        tgt = dolbeault(pp + 1, q, J)
        cols = []
        for rv in src.reps:
            img = J.del_(Form.from_vector(rv, src.masks))
            v = img.vector(tgt.masks)
            if not tgt._zspan.contains(v):
                raise WellDefinednessError("del of a Dolbeault representative is not delbar-closed")
            cols.append(linalg.span_coords(tgt._basis, v)[:tgt.dimension])
        for bv in src.boundaries:
            img = J.del_(Form.from_vector(bv, src.masks)).vector(tgt.masks)
            if not tgt._bspan.contains(img):
                raise WellDefinednessError("d1 depends on the representative")
        return cols, src

    cols, src = d1(p)
    rk_out = linalg.rank(transpose(cols)) if cols and any(any(c) for c in cols) else 0
    if p - 1 >= 0:
        prev, _ = d1(p - 1)
        rk_in = linalg.rank(transpose(prev)) if prev and any(any(c) for c in prev) else 0
    else:
        rk_in = 0
    return src.dimension - rk_out - rk_in


# ---------------------------------------------------------------- tables

def hodge_numbers(J=None, kind="dolbeault"):
    fn = {"dolbeault": dolbeault, "bc": bott_chern, "aeppli": aeppli}[kind]
    return {(p, q): fn(p, q, J).dimension for p in range(4) for q in range(4)}


def betti_numbers(J=None):
    return [de_rham(k, J).dimension for k in range(7)]


# ---------------------------------------------------------------- essential

def essential_space(J, bidegree=(2, 1)):
    """H^{2,1}_[ga](X_t) = span [Gamma_j(t)], or its (1,2) mirror via star_t conj."""
    Gs = gamma_forms(J)
    if tuple(bidegree) == (2, 1):
        parent, gens = dolbeault(2, 1, J), Gs
    else:
        from .hodge import Metric, hodge_star
        m = Metric.standard(J)
        parent, gens = dolbeault(1, 2, J), [hodge_star(g.conj(), m) for g in Gs]
    vecs = [parent._vec(g) for g in gens]
    for v in vecs:
        if not parent._zspan.contains(v):
            raise NotACycle("essential generator is not delbar-closed")
    return CohomologySpace(f"Essential{tuple(bidegree)}", J, parent.masks,
                           _basis_of(vecs + parent.boundaries) if parent.boundaries else vecs,
                           parent.boundaries,
                           [v for v in _independent_mod(vecs, parent.boundaries, len(parent.masks))])


def _independent_mod(vecs, bnd, n):
    sp = Span(n, bnd)
    return [v for v in vecs if sp.add(v)]


# ---------------------------------------------------------------- Massey

@dataclass
class MasseyResult:
    representative: Form
    indeterminacy_basis: list
    is_nonzero: bool


def _primitive(u, J):
    """x with dx = u in the fixed basis, or None."""
    k = u.degree()
    src, tgt = masks_of_degree(k - 1), masks_of_degree(k)
    M = op_matrix(J.dga.table, src, tgt)
    x = linalg.solve(M, J.to_frame(u).vector(tgt))
    return None if x is None else J.from_frame(Form.from_vector(x, src))


def massey_triple(a, b, c, J=None):
    """<a, b, c> for closed 1-forms: x^c + a^y with dx = a^b, dy = b^c."""
    J = _J(J)
    x = _primitive(wedge(a, b), J)
    y = _primitive(wedge(b, c), J)
    if x is None or y is None:
        raise NotDefined("a^b or b^c is not exact")
    rep = wedge(x, c) + wedge(a, y)
    H2 = de_rham(2, J)
    h1 = de_rham(1, J).rep_forms()
    ind = [wedge(a, h) for h in h1] + [wedge(h, c) for h in h1]
    coords = [H2.coords(f) for f in ind]
    rc = H2.coords(rep)
    nonzero = not linalg.in_span(coords, rc) if coords else any(rc)
    return MasseyResult(rep, ind, nonzero)


def duality_pairing_matrix(bc, ae):
    return [[integrate(wedge(u, v)) for v in ae.rep_forms()] for u in bc.rep_forms()]
