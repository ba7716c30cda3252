"""Hermitian metrics on the invariant model: inner products, Hodge star,
adjoints, Laplacian kernels, minimal-norm solutions and the sGG lift.

A metric is a structure J plus a Hermitian 3x3 matrix h in the J-frame,
omega = i sum h_jk phi_j ^ conj(phi_k).  Everything is computed in frame
coordinates as exact Gram-matrix linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .linalg import conj_transpose, conj_matrix, matmul, matvec, nullspace, transpose
from .exterior import (Form, masks_of_degree, masks_of_bidegree, wedge, TOP, complement_sign,
                       CONJ_MASK, CONJ_SIGN, monomial)
from .deformation import build_structure, omega11_gram
from .cohomology import op_matrix, aeppli, de_rham, _ddbar, _cached
from .scalars import ZERO, ONE, I

__all__ = ["Metric", "NotExact", "ClosednessFailure", "NotPositive", "inner",
           "hodge_star", "adjoint", "laplacian_matrix", "laplacian_kernel",
           "min_norm_solve_delbar", "min_norm_solve", "gauduchon_lift", "LiftResult",
           "aeppli_projection", "metric_predicates", "DELBAR", "DEL", "DERHAM", "AEPPLI"]

DELBAR, DEL, DERHAM, AEPPLI = "DelBar", "Del", "DeRham", "Aeppli"


class NotExact(ValueError):
    pass


class ClosednessFailure(ArithmeticError):
    pass


class NotPositive(ValueError):
    pass


def _is_identity(h):
    return all(h[i][j] == (ONE if i == j else ZERO) for i in range(3) for j in range(3))


class Metric:
    def __init__(self, J, h=None):
        self.J = J
        self.h = h if h is not None else linalg.identity(3)
        for i in range(3):
            for j in range(3):
                if self.h[i][j] != self.h[j][i].conj():
                    raise ValueError("metric matrix is not Hermitian")
        self.identity = _is_identity(self.h)
        self._gram = {}
        self._ops = {}
        if self.identity:
            self.vol = I          # dV = i * top in frame coordinates
        else:
            w = self.omega_frame()
            self.vol = wedge(w, w, w).coeff(TOP) / 6

    @staticmethod
    def standard(J=None):
        return Metric(build_structure() if J is None else J)

    @staticmethod
    def omega11(t):
        return Metric(build_structure(), omega11_gram(t))

    def positive(self):
        h = self.h
        m1 = h[0][0].re
        m2 = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).re
        m3 = linalg.det(h).re
        return m1 > 0 and m2 > 0 and m3 > 0

    def omega_frame(self):
        out = Form()
        for j in range(3):
            for k in range(3):
                if self.h[j][k]:
                    out = out + wedge(monomial(1 << j), monomial(1 << (k + 3))) * (I * self.h[j][k])
        return out

    def omega_form(self):
        return self.J.from_frame(self.omega_frame())

    # Gram matrices ---------------------------------------------------------
    def gram1(self):
        hi = linalg.inverse(self.h)
        G = linalg.zeros(6, 6)
        for l in range(3):
            for m in range(3):
                G[l][m] = hi[m][l]
                G[l + 3][m + 3] = hi[l][m]
        return G

    def gram(self, k):
        g = self._gram.get(k)
        if g is not None:
            return g
        masks = masks_of_degree(k)
        n = len(masks)
        if self.identity:
            g = linalg.identity(n)
        else:
            G1 = self.gram1()
            bits = [[b for b in range(6) if m >> b & 1] for m in masks]
            g = [[linalg.det([[G1[a][b] for b in bj] for a in bi]) if k else ONE
                  for bj in bits] for bi in bits]
        self._gram[k] = g
        return g

    def gram_inv(self, k):
        key = ("ginv", k)
        g = self._gram.get(key)
        if g is None:
            g = self._gram[key] = linalg.identity(len(masks_of_degree(k))) if self.identity \
                else linalg.inverse(self.gram(k))
        return g

    # operators -------------------------------------------------------------
    def _table(self, op):
        J = self.J
        return {"d": J.dga.table, "del": J.del_.table, "delbar": J.delbar.table}[op]

    def op(self, op, k):
        """Matrix of op: Lambda^k -> Lambda^{k+1} in frame coordinates."""
        key = (op, k)
        M = self._ops.get(key)
        if M is None:
            M = self._ops[key] = op_matrix(self._table(op), masks_of_degree(k),
                                           masks_of_degree(k + 1))
        return M

    def adj(self, op, k):
        """Matrix of the adjoint Lambda^{k+1} -> Lambda^k."""
        key = (op + "*", k)
        A = self._ops.get(key)
        if A is None:
            P = self.op(op, k)
            Ps = conj_transpose(P)
            if self.identity:
                A = Ps
            else:
                A = matmul(matmul(conj_matrix(self.gram_inv(k)), Ps), conj_matrix(self.gram(k + 1)))
            self._ops[key] = A
        return A


def _vec(J, u, k):
    return J.to_frame(u).vector(masks_of_degree(k))


def inner(u, v, m):
    k = u.degree() if u else v.degree()
    a, b = _vec(m.J, u, k), _vec(m.J, v, k)
    G = m.gram(k)
    acc = ZERO
    for i, x in enumerate(a):
        if x:
            row = G[i]
            for j, y in enumerate(b):
                if y and row[j]:
                    acc = acc + x * y.conj() * row[j]
    return acc


def _star_frame(w, m, k):
    """Hodge star of a frame-coordinate form of pure degree k."""
    masks = masks_of_degree(k)
    G = m.gram(k)
    # x = conj(w); <e_I, x> = sum_J conj(x_J) G[I][J]; conj(x_J) for J = CONJ_MASK[n]
    cx = {}
    for n, c in w.terms.items():
        cx[CONJ_MASK[n]] = c if CONJ_SIGN[n] > 0 else -c
    idx = {mm: i for i, mm in enumerate(masks)}
    out = {}
    for i, I_ in enumerate(masks):
        acc = ZERO
        for J_, c in cx.items():
            g = G[i][idx[J_]]
            if g:
                acc = acc + c * g
        if acc:
            comp = TOP ^ I_
            val = acc * m.vol
            out[comp] = val if complement_sign(I_) > 0 else -val
    return Form(out)


def hodge_star(u, m):
    v = m.J.to_frame(u)
    out = Form()
    for k in v.degrees():
        out = out + _star_frame(v.piece(k), m, k)
    return m.J.from_frame(out)


def adjoint(op, u, m):
    """op in {'d','del','delbar'}; returns op^* u."""
    k = u.degree()
    if k == 0:
        return Form()
    A = m.adj(op, k - 1)
    x = matvec(A, _vec(m.J, u, k))
    return m.J.from_frame(Form.from_vector(x, masks_of_degree(k - 1)))


_OPS = {DELBAR: "delbar", DEL: "del", DERHAM: "d"}


def laplacian_matrix(kind, k, m):
    op = _OPS[kind]
    n = len(masks_of_degree(k))
    out = linalg.zeros(n, n)
    if k < 6:
        P, A = m.op(op, k), m.adj(op, k)
        out = _add(out, matmul(A, P))
    if k > 0:
        P, A = m.op(op, k - 1), m.adj(op, k - 1)
        out = _add(out, matmul(P, A))
    return out


def _add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _restrict_cols(M, masks_all, sub):
    pos = [masks_all.index(s) for s in sub]
    return [[r[p] for p in pos] for r in M]


def laplacian_kernel(kind, p_or_k, q=None, m=None):
    """Kernel basis (fixed-basis forms) of the Laplacian of the given kind."""
    J = m.J
    if kind == DERHAM:
        k = p_or_k
        masks = masks_of_degree(k)
        ker = nullspace(laplacian_matrix(DERHAM, k, m), len(masks))
        return [J.from_frame(Form.from_vector(v, masks)) for v in ker]
    p = p_or_k
    k = p + q
    allm = masks_of_degree(k)
    sub = masks_of_bidegree(p, q)
    if kind in (DELBAR, DEL):
        M = _restrict_cols(laplacian_matrix(kind, k, m), allm, sub)
    elif kind == AEPPLI:
        rows = []
        rows += op_matrix(_ddbar(J), sub, masks_of_degree(k + 2), strict=False) if k + 2 <= 6 else []
        if k > 0:
            rows += _restrict_cols(m.adj("del", k - 1), allm, sub)
            rows += _restrict_cols(m.adj("delbar", k - 1), allm, sub)
        M = rows
    else:
        raise ValueError(f"unknown Laplacian kind {kind!r}")
    ker = nullspace(M, len(sub))
    return [J.from_frame(Form.from_vector(v, sub)) for v in ker]


def min_norm_solve(op, y, m):
    """x of minimal norm with op(x) = y (op 'delbar' or 'del'), x orthogonal to ker op."""
    J = m.J
    if not y:
        return Form()
    yv = J.to_frame(y)
    k = yv.degree() - 1
    src, tgt = masks_of_degree(k), masks_of_degree(k + 1)
    P = m.op(op, k)
    x = linalg.solve(P, yv.vector(tgt))
    if x is None:
        raise NotExact(f"form is not {op}-exact")
    K = nullspace(P, len(src))
    if K:
        G = m.gram(k)

        def ip(a, b):
            return sum((a[i] * b[j].conj() * G[i][j] for i in range(len(a)) if a[i]
                        for j in range(len(b)) if b[j] and G[i][j]), ZERO)
        M = [[ip(K[i], K[j]) for i in range(len(K))] for j in range(len(K))]
        r = [ip(x, K[j]) for j in range(len(K))]
        c = linalg.solve(M, r)
        x = [xi - sum((c[i] * K[i][n] for i in range(len(K))), ZERO) for n, xi in enumerate(x)]
    return J.from_frame(Form.from_vector(x, src))


def min_norm_solve_delbar(y, m):
    return min_norm_solve("delbar", y, m)


def aeppli_projection(u, m):
    """The Aeppli-harmonic (2,2) representative of the Aeppli class of u."""
    A = aeppli(2, 2, m.J)
    H = _cached(m.J, ("Aharm", id(m)), lambda: laplacian_kernel(AEPPLI, 2, 2, m))
    cols = [A.coords(h) for h in H]
    target = A.coords(u)
    c = linalg.solve(transpose(cols), target)
    if c is None:
        raise ArithmeticError("Aeppli-harmonic forms do not span the Aeppli group")
    return sum((h * ci for h, ci in zip(H, c)), Form())


@dataclass
class LiftResult:
    omega: Form
    omega22: Form
    omega31: Form
    omega13: Form
    dr_coords: list


def gauduchon_lift(cls_rep, m):
    """Q_omega: lift of an Aeppli (2,2) class to a d-closed 4-form."""
    J = m.J
    w22 = aeppli_projection(cls_rep, m)
    x = min_norm_solve("delbar", -J.del_t(w22), m)
    y = min_norm_solve("del", -J.delbar_t(w22), m)
    Om = x + w22 + y
    from .exterior import d
    if d(Om):
        raise ClosednessFailure("lifted form is not d-closed")
    return LiftResult(Om, w22, x, y, de_rham(4).coords(Om))


def p_surjection(omega_form, J):
    """P_t: the J-(2,2) part of a closed 4-form, as Aeppli coordinates at J."""
    part = J.split(omega_form).get((2, 2), Form())
    return aeppli(2, 2, J).coords(part)


def metric_predicates(m):
    J = m.J
    w = m.omega_frame()
    w2 = wedge(w, w)
    dw2 = J.dga(w2)
    delw2 = J.del_(w2)
    gaud = not J.delbar(delw2)
    try:
        P = m.op("delbar", 4)
        sg = linalg.solve(P, delw2.vector(masks_of_degree(5))) is not None
    except ValueError:
        sg = False
    return {
        "gauduchon": gaud,
        "strongly_gauduchon": sg,
        "balanced": not dw2,
        "positive": m.positive(),
        "witness": {
            "gauduchon": None if gaud else J.from_frame(J.delbar(delw2)),
            "balanced": None if not dw2 else J.from_frame(dw2),
        },
    }
