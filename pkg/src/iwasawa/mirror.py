"""Intersection forms, canonical coordinates, Yukawa couplings and the
mirror map of the Iwasawa manifold.

Classes in H^3 are carried by their harmonic representatives, which at
t = 0 are the ten invariant generators; Q and H are evaluated by exact
integration.  The Albanese torus B is modelled inside the invariant
algebra of X: a 2-form u on B is integrated as int_X u ^ i ga ^ ga~.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exterior import (Form, wedge, integrate, conj, parse_form, monomial, contract, AL, BE, GA,
                       ALB, BEB, GAB, d, bideg, masks_of_degree)
from .deformation import (frame_rows, build_structure, build_structure_jet, gamma_forms, omega11,
                          omega11_gram, TVal, cy_isomorphism)
from .cohomology import de_rham, dolbeault, aeppli, bott_chern
from .hodge import Metric, hodge_star, gauduchon_lift, NotPositive, _star_frame
from .scalars import GScalar, ZERO, ONE, I, Jet1, ParamPoint, S_VARS, T_VARS

__all__ = [
    "DegreeMismatch", "IsotropyError", "NormalizationPole", "JacobianSingular",
    "NotPositive", "PairingMatrix", "SymplecticBasis", "TorusModel", "MirrorImage",
    "pairing", "gram_matrix", "signature", "space_signature", "star_eigenvalue",
    "integrate_B", "real_h2B_basis", "standard_symplectic", "t_of_z", "mirror_formula",
    "coordinates_w_jacobian", "essential_thetas", "A0", "VECTOR_FIELD_IMAGES", "AEPPLI_LABELS",
    "hermitian_inertia", "named_space",
    "star_split", "real_h3_basis", "default_etas", "symplectic_complete",
    "coordinates_z", "coordinates_z_closed", "coordinates_w", "eta_B",
    "yukawa", "ks_class", "potential_symmetry_check", "yukawa_cross_oracle",
    "mirror_map_positive", "mirror_map_complexified", "aeppli_basis",
    "aeppli_basis_t", "omega0_squared_coords", "dM0_check", "iso_A", "iso_B",
    "lift_I", "conclusion_610", "vhs_checks", "bc31_to_aeppli",
    "second_iso_obstruction", "ESSENTIAL_VARS", "ANTI_VARS",
]

ESSENTIAL_VARS = T_VARS[:4]
ANTI_VARS = S_VARS


class DegreeMismatch(ValueError):
    pass


class IsotropyError(ValueError):
    pass


class NormalizationPole(ZeroDivisionError):
    pass


class JacobianSingular(ArithmeticError):
    pass


# ---------------------------------------------------------------- pairings

_WEIGHT = {"Q": 3, "H": 3, "Q_B": 2, "H_B": 2}


def _ga_gab():
    return wedge(GA, GAB) * I


def integrate_B(u):
    """int_B u := int_X u ^ i ga ^ ga~ for a 4-form u in al, be and conjugates."""
    return integrate(wedge(u, _ga_gab()))


def pairing(kind, u, v):
    """Q = -int u^v, H = -i int u^conj v (n = 3); Q_B = -int_B u^v, H_B = int_B u^conj v."""
    n = _WEIGHT.get(kind)
    if n is None:
        raise ValueError(f"unknown pairing {kind!r}")
    for w in (u, v):
        if w and w.degrees() != [n]:
            raise DegreeMismatch(f"{kind} needs {n}-forms, got degrees {w.degrees()}")
    if kind == "Q":
        return -integrate(wedge(u, v))
    if kind == "H":
        return -(I * integrate(wedge(u, conj(v))))
    if kind == "Q_B":
        return -integrate_B(wedge(u, v))
    return integrate_B(wedge(u, conj(v)))


def gram_matrix(kind, basis):
    return [[pairing(kind, u, v) for v in basis] for u in basis]


def hermitian_inertia(h):
    """(n_minus, n_zero, n_plus) of a Hermitian matrix by congruence."""
    a = [list(r) for r in h]
    n = len(a)
    neg = pos = zero = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i]), None)
        if p is None:
            # all diagonal entries vanish: find an off-diagonal pair and mix
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j]), None)
            if pair is None:
                zero += len(active)
                break
            i, j = pair
            # row/col i += c * row/col j with c = a[i][j] makes a[i][i] = 2|a_ij|^2
            c = a[i][j]
            for k in range(n):
                a[i][k] = a[i][k] + c * a[j][k]
            for k in range(n):
                a[k][i] = a[k][i] + c.conj() * a[k][j]
            continue
        piv = a[p][p]
        if piv.re > 0:
            pos += 1
        else:
            neg += 1
        inv = piv.inverse()
        for i in active:
            if i != p and a[i][p]:
                f = a[i][p] * inv
                for k in range(n):
                    a[i][k] = a[i][k] - f * a[p][k]
                for k in range(n):
                    a[k][i] = a[k][i] - f.conj() * a[k][p]
        active.remove(p)
    return neg, zero, pos


def signature(gram):
    """Sign vector in basis order when the Gram matrix is diagonal, otherwise
    the inertia written as a sorted sign vector."""
    n = len(gram)
    diag = all(not gram[i][j] for i in range(n) for j in range(n) if i != j)
    if diag:
        out = []
        for i in range(n):
            x = gram[i][i]
            if x.im:
                raise ValueError("Gram matrix is not Hermitian")
            out.append("+" if x.re > 0 else "-" if x.re < 0 else "0")
        return tuple(out)
    neg, zero, pos = hermitian_inertia(gram)
    return ("-",) * neg + ("0",) * zero + ("+",) * pos


@dataclass
class PairingMatrix:
    kind: str
    labels: list
    entries: list
    signature: tuple


def named_space(name):
    """Fixed documented bases for the three spaces of interest at t = 0."""
    P = parse_form
    h21 = [("[al^ga^al~+be^ga^be~]", P("al^ga^al~+be^ga^be~")),
           ("[al^ga^al~-be^ga^be~]", P("al^ga^al~-be^ga^be~")),
           ("[al^ga^be~]", P("al^ga^be~")), ("[be^ga^al~]", P("be^ga^al~"))]
    if name == "h21gamma":
        return "H", h21
    if name == "f2":
        return "H", [("[al^be^ga]", P("al^be^ga"))] + h21
    if name == "h11B":
        return "H_B", [("[al^be]", P("al^be")),
                       ("[i al^al~ + i be^be~]", P("i*al^al~ + i*be^be~")),
                       ("[i al^al~ - i be^be~]", P("i*al^al~ - i*be^be~")),
                       ("[i al^be~]", P("i*al^be~")), ("[i be^al~]", P("i*be^al~"))]
    raise ValueError(f"unknown space {name!r}; expected h21gamma, f2 or h11B")


def space_signature(name):
    kind, basis = named_space(name)
    g = gram_matrix(kind, [f for _, f in basis])
    return PairingMatrix(kind, [l for l, _ in basis], g, signature(g))


# ---------------------------------------------------------------- star split

def star_split(basis=None, m=None):
    """Split the span of harmonic 3-forms into the +i / -i eigenspaces of star.

    plus = image of (1 - i star)/2, on which star acts by +i and H > 0.
    """
    m = Metric.standard() if m is None else m
    basis = de_rham(3, m.J).rep_forms() if basis is None else basis
    plus, minus = [], []
    sp_p, sp_m = linalg.Span(64), linalg.Span(64)
    for u in basis:
        s = hodge_star(u, m)
        for target, sp, sign in ((plus, sp_p, -1), (minus, sp_m, 1)):
            v = (u + s * (I * sign)) / 2
            if v and sp.add(v.vector(range(64))):
                target.append(v)
    return plus, minus


def star_eigenvalue(u, m=None):
    """i or -i if u is a star eigenform, else None."""
    m = Metric.standard() if m is None else m
    s = hodge_star(u, m)
    if s == u * I:
        return I
    if s == u * (-I):
        return -I
    return None


# ---------------------------------------------------------------- symplectic

def real_h3_basis():
    """Ten conjugation-fixed classes built from the invariant generators."""
    H3 = de_rham(3)
    gens = H3.rep_forms()
    sp = linalg.Span(H3.dimension)
    out = []
    for g in gens:
        for v in (g + conj(g), (g - conj(g)) * I):
            if v and sp.add(H3.coords(v)):
                out.append(v)
    return out


def default_etas():
    P = parse_form
    return [P("al^be^ga + al~^be~^ga~ + i*al^al~^ga + i*be^be~^ga + i*al^al~^ga~ + i*be^be~^ga~"),
            P("al^be^ga + al~^be~^ga~"),
            P("i*al^al~^ga - i*be^be~^ga + i*al^al~^ga~ - i*be^be~^ga~"),
            P("al^be~^ga + al~^be^ga~"),
            P("al~^be^ga + al^be~^ga~")]


@dataclass
class SymplecticBasis:
    eta: list
    nu: list
    kind: str = "Q"
    gram: list = field(default_factory=list)

    def relations_hold(self):
        n = len(self.eta)
        Qf = lambda u, v: pairing(self.kind, u, v)
        for j in range(n):
            for k in range(n):
                if Qf(self.eta[j], self.eta[k]) or Qf(self.nu[j], self.nu[k]):
                    return False
                if Qf(self.eta[j], self.nu[k]) != (ONE if j == k else ZERO):
                    return False
        return all(conj(x) == x for x in self.eta + self.nu)


def _is_real(u):
    return conj(u) == u


def symplectic_complete(eta0=None, etas=None, kind="Q", real_basis=None):
    """Complete eta0 (or an isotropic list etas) to a symplectic basis.

    With a full Lagrangian list, nu_k solves Q(eta_j, nu_k) = delta_jk over the
    real basis (free coordinates zero) and is then corrected to be isotropic.
    With eta0 alone, a symplectic Gram-Schmidt sweep over the real basis is
    used, eta0 being the first vector.
    """
    Qf = lambda u, v: pairing(kind, u, v)
    R = real_h3_basis() if real_basis is None else real_basis
    if etas is None and eta0 is None:
        etas = default_etas()
    if etas is not None:
        for e in etas:
            if not _is_real(e):
                raise ValueError("eta classes must be real")
        for a in etas:
            for b in etas:
                if Qf(a, b):
                    raise IsotropyError("the eta classes are not mutually Q-orthogonal")
        A = [[Qf(e, r) for r in R] for e in etas]
        nus = []
        for k in range(len(etas)):
            rhs = [ONE if j == k else ZERO for j in range(len(etas))]
            x = linalg.solve(A, rhs)
            if x is None:
                raise IsotropyError("eta classes are degenerate for Q")
            nus.append(sum((r * c for r, c in zip(R, x) if c), Form()))
        n = len(nus)
        fixed = []
        for k in range(n):
            corr = Form()
            for j in range(n):
                q = Qf(nus[j], nus[k])
                if q:
                    corr = corr + etas[j] * (q / 2)
            fixed.append(nus[k] + corr)
        sb = SymplecticBasis(list(etas), fixed, kind)
    else:
        if not eta0:
            raise IsotropyError("eta0 is zero")
        if not _is_real(eta0):
            raise ValueError("eta0 must be real")
        es, ns = [], []
        pool = [eta0] + list(R)
        # drop one vector so that the pool is a basis containing eta0
        sp = linalg.Span(64)
        pool = [v for v in pool if sp.add(v.vector(range(64)))]
        while pool:
            e = pool.pop(0)
            if not e:
                continue
            k = next((i for i, v in enumerate(pool) if Qf(e, v)), None)
            if k is None:
                raise IsotropyError("vector is Q-orthogonal to the remaining space")
            nu = pool.pop(k)
            nu = nu / Qf(e, nu)
            es.append(e)
            ns.append(nu)
            pool = [v - e * Qf(v, nu) + nu * Qf(v, e) for v in pool]
            pool = [v for v in pool if v]
        sb = SymplecticBasis(es, ns, kind)
    allv = sb.eta + sb.nu
    sb.gram = [[Qf(u, v) for v in allv] for u in allv]
    return sb


def standard_symplectic(n):
    J = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        J[i][n + i] = ONE
        J[n + i][i] = -ONE
    return J


# ---------------------------------------------------------------- z coordinates

def _pt(t):
    return ParamPoint() if t is None else t


def _u_t(t, scale=None):
    a, b, g = frame_rows(lambda v: t[v], ONE)[:3]
    u = wedge(a, b, g)
    return u * scale(t) if scale is not None else u


def _u_jet(base):
    a, b, g = frame_rows(lambda v: Jet1.variable(v, base), Jet1(ONE))[:3]
    return wedge(a, b, g)


def coordinates_z(t=None, etas=None, scale=None):
    """z_i(t) = Q(u'_t, eta_i), u'_t = u_t / Q(u_t, eta_0), i = 1..4."""
    t = _pt(t)
    etas = default_etas() if etas is None else etas
    u = _u_t(t, scale)
    N = pairing("Q", u, etas[0])
    if not N:
        raise NormalizationPole(f"Q(u_t, eta_0) vanishes at {t!r}")
    return [pairing("Q", u, e) / N for e in etas[1:]]


def coordinates_z_closed(t=None):
    t = _pt(t)
    t11, t12, t21, t22 = t.t[:4]
    D = t.D
    N = I * (1 + D * D) + (t21 - t12) * (1 + D)
    if not N:
        raise NormalizationPole(f"normalisation vanishes at {t!r}")
    return [I * (1 + D * D) / N, -(t12 + t21) * (1 + D) / N,
            -I * (t11 * D + t22) / N, -I * (t22 * D + t11) / N]


def _z_jets(base, etas, extra=()):
    u = _u_jet(base)
    N = -integrate(wedge(u, etas[0]))
    if not N.v:
        raise NormalizationPole(f"Q(u_t, eta_0) vanishes at {base!r}")
    z = [-integrate(wedge(u, e)) / N for e in etas[1:]]
    x = [-integrate(wedge(u, e)) / N for e in extra]
    return z, x


def _jacobian(jets, names=ESSENTIAL_VARS):
    return [[j.partial(n) for n in names] for j in jets]


# ---------------------------------------------------------------- torus model

def _strip_gamma(u):
    """x with u = x ^ ga for the ga-containing part of u (bit 2)."""
    xi = [ZERO, ZERO, ONE, ZERO, ZERO, ZERO]
    return contract(xi, Form({m: c for m, c in u.terms.items() if m & 4 and not m & 32}))


def eta_B(eta):
    """eta_B = x^{2,0} + (x^{1,1} + conj x^{1,1})/2 + conj x^{2,0}, x = ga-strip of eta^{3,0}+eta^{2,1}."""
    hol = Form({m: c for m, c in eta.terms.items() if bideg(m) in ((3, 0), (2, 1))})
    x = _strip_gamma(hol)
    x20 = Form({m: c for m, c in x.terms.items() if bideg(m) == (2, 0)})
    x11 = Form({m: c for m, c in x.terms.items() if bideg(m) == (1, 1)})
    return x20 + (x11 + conj(x11)) / 2 + conj(x20)


class TorusModel:
    """Sub-algebra generated by al_t, be_t and conjugates, zero differential."""

    def __init__(self, t=None):
        self.t = _pt(t)
        a, b, _, ab, bb, _ = frame_rows(lambda v: self.t[v], ONE)
        self.h20 = [wedge(a, b)]
        self.h11 = [wedge(a, ab), wedge(a, bb), wedge(b, ab), wedge(b, bb)]
        self.h02 = [wedge(ab, bb)]
        self.masks = [m for m in masks_of_degree(2) if not m & 0b100100]

    def _dim(self, forms):
        return linalg.rank([f.vector(self.masks) for f in forms]) if forms else 0

    def dims(self):
        return {"H2": self._dim(self.h20 + self.h11 + self.h02), "H20": self._dim(self.h20),
                "H11": self._dim(self.h11), "H02": self._dim(self.h02),
                "F2": self._dim(self.h20), "F1": self._dim(self.h20 + self.h11)}

    def h30_matches(self):
        _, _, g, _, _, _ = frame_rows(lambda v: self.t[v], ONE)
        return wedge(self.h20[0], g) == _u_t(self.t)


def real_h2B_basis():
    base = [monomial(m) for m in masks_of_degree(2) if not m & 0b100100]
    sp = linalg.Span(64)
    out = []
    for g in base:
        for v in (g + conj(g), (g - conj(g)) * I):
            if v and sp.add(v.vector(range(64))):
                out.append(v)
    return out


def coordinates_w(t=None, etas=None):
    """w_i(t) = Q_B(v'_t, eta_{i,B}), v_t = al_t ^ be_t normalised by eta_{0,B}."""
    t = _pt(t)
    etas = default_etas() if etas is None else etas
    etaB = [eta_B(e) for e in etas]
    a, b = frame_rows(lambda v: t[v], ONE)[:2]
    v = wedge(a, b)
    N = pairing("Q_B", v, etaB[0])
    if not N:
        raise NormalizationPole(f"Q_B(v_t, eta_0B) vanishes at {t!r}")
    return [pairing("Q_B", v, e) / N for e in etaB[1:]]


def coordinates_w_jacobian(base=None, etas=None):
    base = _pt(base)
    etas = default_etas() if etas is None else etas
    etaB = [eta_B(e) for e in etas]
    a, b = frame_rows(lambda v: Jet1.variable(v, base), Jet1(ONE))[:2]
    v = wedge(a, b)
    N = -integrate_B(wedge(v, etaB[0]))
    w = [-integrate_B(wedge(v, e)) / N for e in etaB[1:]]
    return _jacobian(w)


# ---------------------------------------------------------------- Yukawa

def _perm_sign(idx):
    if len(set(idx)) < len(idx):
        return 0
    s = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                s = -s
    return s


def yukawa(th1, th2, th3, u=None, frame=None):
    """Y(th1, th2, th3) = u(xi_i, xi_j, xi_k) int u ^ eps1 ^ eps2 ^ eps3, summed.

    The vector parts are wedged into Lambda^3 T and evaluated against u;
    the (0,1) parts are wedged in order.  This fixes the Serre pairing as
    <u, (xi1^xi2^xi3) (x) al~^be~^ga~> = int u ^ al~^be~^ga~ for u = al^be^ga.
    """
    u = wedge(AL, BE, GA) if u is None else u
    vecs = frame.vectors if frame is not None else [[ONE if k == i else ZERO for k in range(6)]
                                                     for i in range(3)]
    uval = contract(vecs[2], contract(vecs[1], contract(vecs[0], u))).coeff(0)
    total = ZERO
    for c1, i1, e1 in th1.terms:
        for c2, i2, e2 in th2.terms:
            s = _perm_sign((i1, i2))
            if not s:
                continue
            for c3, i3, e3 in th3.terms:
                s3 = _perm_sign((i1, i2, i3))
                if not s3:
                    continue
                eps = wedge(e1, e2, e3)
                if not eps:
                    continue
                total = total + c1 * c2 * c3 * (uval * s3) * integrate(wedge(u, eps))
    return total


_KS = {"t11": (0, 3), "t12": (0, 4), "t21": (1, 3), "t22": (1, 4)}


def ks_class(name, c=ONE):
    """Kodaira-Spencer representative of d/dt_{ij}: xi_i (x) (al~ or be~)."""
    i, e = _KS[name]
    return TVal.basic(i, e, c)


def essential_thetas():
    return [ks_class(n) for n in ESSENTIAL_VARS]


# ---------------------------------------------------------------- potential

def potential_symmetry_check(t=None, basis=None):
    """dPsi_i/dz_j for Psi_i = Q(u'_t, nu_i) via exact jets; returns the report."""
    t = _pt(t)
    sb = symplectic_complete() if basis is None else basis
    z, psi = _z_jets(t, sb.eta, extra=sb.nu[1:])
    Jz = _jacobian(z)
    try:
        Jzi = linalg.inverse(Jz)
    except linalg.SingularMatrix:
        raise JacobianSingular(f"z-Jacobian is singular at {t!r}") from None
    Jp = _jacobian(psi)
    M = linalg.matmul(Jp, Jzi)
    n = len(M)
    asym = [[M[i][j] - M[j][i] for j in range(n)] for i in range(n)]
    anti = [j.partial(s) for j in z for s in S_VARS[:4]]
    return {
        "t": t,
        "dpsi_dz": M,
        "asymmetry": asym,
        "symmetric": not any(x for r in asym for x in r),
        "z_holomorphic": not any(anti),
        "jacobian_invertible": True,
    }


def _round(x, bound=2 ** 100):
    return GScalar(Fraction(x.re).limit_denominator(bound), Fraction(x.im).limit_denominator(bound))


def t_of_z(target, etas=None, start=None, tol=Fraction(1, 2 ** 90), max_iter=40):
    """Newton inversion of t -> z on the essential slice, exact with rounding."""
    etas = default_etas() if etas is None else etas
    t = _pt(start)
    for _ in range(max_iter):
        z, _ = _z_jets(t, etas)
        res = [a - b.v for a, b in zip(target, z)]
        if all(r.norm2() <= tol * tol for r in res):
            return t
        step = linalg.solve(_jacobian(z), res)
        if step is None:
            raise JacobianSingular("z-Jacobian singular during Newton inversion")
        vals = {n: _round(t[n] + s) for n, s in zip(ESSENTIAL_VARS, step)}
        t = ParamPoint(vals)
    raise ArithmeticError("Newton inversion did not converge")


def yukawa_cross_oracle(base=None, h=Fraction(1, 64), const=10, etas=None):
    """Compare Y(d/dz_i, d/dz_j, d/dz_k) with -Q(d_k u', d_i d_j u') by central differences."""
    base = _pt(base)
    etas = default_etas() if etas is None else etas
    z0 = [x.v for x in _z_jets(base, etas)[0]]
    n = len(z0)
    hs = GScalar(h)
    cache = {}

    def uprime(offs):
        key = tuple(offs)
        if key not in cache:
            target = [z0[i] + hs * o for i, o in enumerate(offs)]
            t = t_of_z(target, etas, start=base)
            u = _u_t(t)
            cache[key] = u / pairing("Q", u, etas[0])
        return cache[key]

    def e(*pairs):
        o = [0] * n
        for i, s in pairs:
            o[i] += s
        return o

    first = [(uprime(e((k, 1))) - uprime(e((k, -1)))) / (2 * hs) for k in range(n)]
    second = {}
    for i in range(n):
        for j in range(i, n):
            if i == j:
                f = uprime(e((i, 1))) - uprime([0] * n) * 2 + uprime(e((i, -1)))
                second[i, j] = f / (hs * hs)
            else:
                f = (uprime(e((i, 1), (j, 1))) - uprime(e((i, 1), (j, -1)))
                     - uprime(e((i, -1), (j, 1))) + uprime(e((i, -1), (j, -1))))
                second[i, j] = f / (4 * hs * hs)
    # Kodaira-Spencer classes of d/dz_i at the base point
    zj, _ = _z_jets(base, etas)
    Jzi = linalg.inverse(_jacobian(zj))
    thetas = []
    for i in range(n):
        th = TVal()
        for a, name in enumerate(ESSENTIAL_VARS):
            if Jzi[a][i]:
                th = th + ks_class(name, Jzi[a][i])
        thetas.append(th)
    u0 = _u_t(base)
    u0 = u0 / pairing("Q", u0, etas[0])
    budget = GScalar(const) * hs * hs
    worst = Fraction(0)
    rows = []
    for (i, j), s in sorted(second.items()):
        for k in range(n):
            T = -pairing("Q", first[k], s)
            Y = yukawa(thetas[i], thetas[j], thetas[k], u0)
            diff = (T - Y).norm2()
            worst = max(worst, diff)
            rows.append({"ijk": (i + 1, j + 1, k + 1), "fd": T, "yukawa": Y})
    return {"rows": rows, "points": len(cache), "h": h,
            "max_abs_diff_sq": worst, "budget_sq": budget.norm2(),
            "ok": worst <= budget.norm2()}


# ---------------------------------------------------------------- mirror maps

def aeppli_basis():
    """e1..e4 = [i al^al~ ^ i ga^ga~], [i be^be~ ^ ...], [i al^be~ ^ ...], [i be^al~ ^ ...]."""
    gg = wedge(GA, GAB) * I
    return [wedge(AL, ALB) * I * gg, wedge(BE, BEB) * I * gg,
            wedge(AL, BEB) * I * gg, wedge(BE, ALB) * I * gg]


AEPPLI_LABELS = ["[i al^al~ ^ i ga^ga~]_A", "[i be^be~ ^ i ga^ga~]_A",
                 "[i al^be~ ^ i ga^ga~]_A", "[i be^al~ ^ i ga^ga~]_A"]


def _aeppli_coords(u, J=None):
    A = aeppli(2, 2, J)
    cols = [A.coords(e) for e in aeppli_basis()]
    x = linalg.solve(linalg.transpose(cols), A.coords(u))
    if x is None:
        raise ArithmeticError("class outside the span of the Aeppli basis")
    return x


@dataclass
class MirrorImage:
    coeffs: list
    marked: bool
    labels: list = field(default_factory=lambda: list(AEPPLI_LABELS))


def omega0_squared_coords():
    w = omega11(ParamPoint())
    return _aeppli_coords(wedge(w, w))


def mirror_formula(t):
    h = omega11_gram(t)
    a, b, c3 = h[0][0], h[1][1], h[2][2]
    dd = h[0][1]
    return [2 * a * c3, 2 * b * c3, 2 * dd * c3, 2 * dd.conj() * c3]


def mirror_map_positive(t=None):
    t = _pt(t)
    m = Metric.omega11(t)
    if not m.positive():
        raise NotPositive(f"omega_t^(1,1) is not positive at {t!r}")
    w = omega11(t)
    coeffs = _aeppli_coords(wedge(w, w))
    return MirrorImage(coeffs, coeffs == omega0_squared_coords())


def mirror_map_complexified(t=None):
    t = _pt(t)
    t11, t12, t21, t22 = t.t[:4]
    base = [GScalar(2), GScalar(2), ZERO, ZERO]
    coeffs = [base[0] + t21, base[1] - t12, t22, -t11]
    return MirrorImage(coeffs, coeffs == base)


# vector-field identifications d/dt_ij -> classes in H^{2,1}_[ga](X_0)
VECTOR_FIELD_IMAGES = {"t11": ("be^ga^al~", -1), "t12": ("be^ga^be~", -1),
                       "t21": ("al^ga^al~", 1), "t22": ("al^ga^be~", 1)}


def A0(cls_form):
    """A_0([Gamma]) = [Gamma ^ ga~]_A in the e-basis."""
    return _aeppli_coords(wedge(cls_form, GAB))


def dM0_check():
    """Compare d M~/dt_ij with A_0 of the vector-field images, both readings."""
    rows = []
    ok_table = ok_contract = True
    for k, name in enumerate(ESSENTIAL_VARS):
        one = ParamPoint({name: ONE})
        dM = [a - b for a, b in zip(mirror_map_complexified(one).coeffs,
                                    mirror_map_complexified().coeffs)]
        mono, sgn = VECTOR_FIELD_IMAGES[name]
        table = [x * sgn for x in A0(parse_form(mono))]
        cyc = A0(cy_isomorphism(ks_class(name), wedge(AL, BE, GA)))
        ok_table &= dM == table
        ok_contract &= dM == cyc
        rows.append({"var": name, "dM": dM, "A0_table": table, "A0_contraction": cyc})
    return {"rows": rows, "table_agrees": ok_table, "contraction_agrees": ok_contract}


# ---------------------------------------------------------------- A_t, B_t, I_t

def aeppli_basis_t(J):
    a, b, g, ab, bb, gb = J.rows
    return [wedge(a, g, ab, gb), wedge(a, g, bb, gb), wedge(b, g, ab, gb), wedge(b, g, bb, gb)]


def _coords_in(A, basis, u):
    cols = [A.coords(e) for e in basis]
    x = linalg.solve(linalg.transpose(cols), A.coords(u))
    if x is None:
        raise ArithmeticError("class outside the span of the given basis")
    return x


def iso_A(t=None):
    """Matrix of [Gamma_j(t)] -> [Gamma_j(t) ^ ga~_t]_A in the basis aeppli_basis_t."""
    J = build_structure(_pt(t))
    A = aeppli(2, 2, J)
    basis = aeppli_basis_t(J)
    if A.rank_of(basis) != 4:
        raise ArithmeticError("frame Aeppli generators are dependent")
    gb = J.rows[5]
    cols = [_coords_in(A, basis, wedge(G, gb)) for G in gamma_forms(J)]
    return linalg.transpose(cols)


def iso_B(t=None):
    """B_t on the frame bases is the identity; returns the matrix and the rank check."""
    J = build_structure(_pt(t))
    A = aeppli(2, 2, J)
    rank_t = A.rank_of(aeppli_basis_t(J))
    rank_0 = aeppli(2, 2).rank_of(aeppli_basis_t(build_structure()))
    return {"matrix": linalg.identity(4), "rank_source": rank_t, "rank_target": rank_0}


def lift_I(t=None):
    """I_t = Q_{omega_t} on the frame Aeppli basis: DR coordinates and checks."""
    J = build_structure(_pt(t))
    m = Metric.standard(J)
    A = aeppli(2, 2, J)
    basis = aeppli_basis_t(J)
    cols, closed, p_id = [], True, True
    for k, G in enumerate(basis):
        r = gauduchon_lift(G, m)
        closed &= not d(r.omega)
        cols.append(r.dr_coords)
        back = _coords_in(A, basis, J.split(r.omega).get((2, 2), Form()))
        p_id &= back == [ONE if i == k else ZERO for i in range(4)]
    return {"columns": cols, "rank": linalg.rank(cols), "closed": closed, "P_after_Q_is_id": p_id}


def conclusion_610(t=None):
    """Well-definedness and rank of Q_{omega_t^{1,1}} o B_t o Q_{omega_t}^{-1}."""
    t = _pt(t)
    It = lift_I(t)
    m11 = Metric.omega11(t)
    J0 = build_structure()
    target = [gauduchon_lift(G, m11).dr_coords for G in aeppli_basis_t(J0)]
    well_defined = It["rank"] == 4
    return {"source_rank": It["rank"], "image_rank": linalg.rank(target),
            "well_defined": well_defined, "columns": target}


def bc31_to_aeppli(t=None):
    J = build_structure(_pt(t))
    a, b, g, ab, bb, gb = J.rows
    BC = bott_chern(3, 1, J)
    A = aeppli(2, 2, J)
    src = [wedge(a, b, g, ab), wedge(a, b, g, bb)]
    img = [wedge(a, ab, g, gb), wedge(b, bb, g, gb)]
    src_rank = BC.rank_of(src)
    M = [A.coords(u) for u in img]
    return {"dim_bc31": BC.dimension, "source_rank": src_rank, "image_rank": linalg.rank(M),
            "matrix": linalg.transpose(M), "images_closed": all(not d(u) for u in img),
            "injective": src_rank == 2 and linalg.rank(M) == 2}


# ---------------------------------------------------------------- VHS

def _jet_partial(u, name):
    return Form({m: c.partial(name) for m, c in u.terms.items()})


def vhs_checks():
    """Four verdicts at t = 0, each with witnesses."""
    J0 = build_structure()
    Om = wedge(AL, BE, GA)
    G0 = gamma_forms(J0)
    H12 = dolbeault(1, 2)
    H21 = dolbeault(2, 1)
    # (1) transversality
    ess = [H21.coords(g) for g in G0]
    trans = True
    wit1 = []
    for name in ESSENTIAL_VARS:
        th = ks_class(name)
        for j, G in enumerate(G0):
            c = cy_isomorphism(th, G)
            z = H12.is_zero_class(c)
            trans &= z
            if not z:
                wit1.append((name, j + 1, c))
        img = H21.coords(cy_isomorphism(th, Om))
        inside = linalg.in_span(ess, img)
        trans &= inside
        if not inside:
            wit1.append((name, "Omega", img))
    # (2) F^2 holomorphicity: anti-holomorphic derivatives of Gamma_j at 0
    Jj = build_structure_jet()
    Gj = gamma_forms(Jj)
    abg = wedge(AL, BE, GA)
    f2 = True
    derivs = {}
    for j, G in enumerate(Gj):
        for s in S_VARS[:4]:
            dG = _jet_partial(G, s)
            if dG:
                derivs[(j + 1, s)] = dG
                c = dG.coeff(7)
                f2 &= dG == abg * c and c in (ONE, -ONE)
    # (3) H^{1,2}_[ga] witness
    m0 = Metric.standard()
    frame = Jj.to_frame(Gj[0])
    st = Jj.from_frame(_star_frame(frame, m0, 3))
    W = _jet_partial(conj(st), "s21")
    W = Form({m: c for m, c in W.terms.items()})
    dbar_W = J0.delbar_t(W)
    piece = parse_form("al^ga~^be")
    wit3 = J0.delbar_t(piece)
    nonhol = bool(dbar_W)
    # (4) F_G holomorphicity
    a, b, g, ab, bb, gb = Jj.rows
    gens = [wedge(a, g, ab, gb), wedge(a, g, bb, gb), wedge(b, g, ab, gb), wedge(b, g, bb, gb)]
    target = [parse_form(s) for s in ("al^be^ga^ga~", "al^be^ga^al~", "al^be^ga^be~")]
    fg = True
    fg_derivs = {}
    for k, G in enumerate(gens):
        for s in S_VARS:
            dG = _jet_partial(G, s)
            if dG:
                fg_derivs[(k + 1, s)] = dG
                fg &= linalg.in_span([x.vector(range(64)) for x in target], dG.vector(range(64)))
    bc_closed = all(not d(x) for x in target[1:])
    return {
        "transversality": {"ok": trans, "witnesses": wit1},
        "f2_holomorphic": {"ok": f2, "derivatives": derivs},
        "h12_not_holomorphic": {"ok": nonhol, "W": W, "delbar_W": dbar_W,
                                "delbar_al_gab_be": wit3},
        "fg_holomorphic": {"ok": fg and bc_closed, "derivatives": fg_derivs},
    }


def second_iso_obstruction():
    """Anti-holomorphic first derivatives at 0 of the correction factors
    rho_j = sigma_j / conj(sigma12) in Gamma_j(t); reported without a verdict."""
    from .deformation import sigma_from_frame
    Jj = build_structure_jet()
    s = sigma_from_frame(Jj)
    cs = s.s12.conj()
    out = {}
    for j, num in enumerate((s.s22b, s.s21b, s.s12b, s.s11b)):
        rho = num / cs
        out[j + 1] = {v: rho.partial(v) for v in S_VARS}
    return out
