"""Kuranishi deformation frames of the Iwasawa manifold and derived data.

J_t has (1,0) coframe
    al_t = al + t11 al~ + t12 be~
    be_t = be + t21 al~ + t22 be~
    ga_t = ga + t31 al~ + t32 be~ - D(t) ga~,   D = t11 t22 - t12 t21.
A ComplexStructure stores this frame, its inverse, and d re-expressed in
frame coordinates (phi_1..phi_6 = al_t, be_t, ga_t and conjugates), where the
bidegree of a frame monomial is again a popcount.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .exterior import (Form, Derivation, D0, monomial, wedge, substitute, bideg, GA, VectorFrame,
                       conj)
from .scalars import (GScalar, ONE, ZERO, I, Jet1, MultiPoly, RatFunc, ParamPoint,
                      PoleError, T_VARS, ratfunc_eval, jet_lift)

__all__ = [
    "FrameSingular", "StructureEquationViolation", "WrongClass",
    "ComplexStructure", "build_structure", "build_structure_jet", "frame_rows",
    "symbolic_frame", "nakamura_class", "Sigma", "sigma_from_frame",
    "sigma_appendix", "sigma_appendix_symbolic", "sigma_appendix_jet", "gamma_forms", "omega",
    "omega11", "omega11_gram", "TVal", "cy_isomorphism", "contract_with_gamma",
    "PARALLELISABLE", "CLASS_II", "CLASS_III", "holomorphic_volume",
]


class FrameSingular(ArithmeticError):
    pass


class StructureEquationViolation(ArithmeticError):
    pass


class WrongClass(ValueError):
    pass


PARALLELISABLE, CLASS_II, CLASS_III = "Parallelisable(i)", "ClassII", "ClassIII"


def frame_rows(var, one):
    """(al_t, be_t, ga_t, conjugates) as fixed-basis forms over any ring.

    var(name) gives the ring element for a t-variable.
    """
    t11, t12, t21, t22, t31, t32 = (var(v) for v in T_VARS)
    D = t11 * t22 - t12 * t21
    a = Form({1: one, 8: t11, 16: t12})
    b = Form({2: one, 8: t21, 16: t22})
    g = Form({4: one, 8: t31, 16: t32, 32: -D})
    return [a, b, g, conj(a), conj(b), conj(g)]


def symbolic_frame():
    return frame_rows(MultiPoly.var, MultiPoly.const(1))


class ComplexStructure:
    """J_t at an evaluated point (GScalar) or as first-order jets (Jet1)."""

    def __init__(self, rows, t=None, one=ONE):
        self.t = t
        self.one = one
        self.rows = rows
        self.frame = [[r.coeff(1 << j, one * 0) for j in range(6)] for r in rows]
        try:
            self.inverse = linalg.inverse(self.frame)
        except (linalg.SingularMatrix, PoleError, ZeroDivisionError):
            raise FrameSingular(f"frame matrix not invertible at {t!r}") from None
        g = self.inverse
        # e_j = sum_i G[j][i] phi_i
        self._to_images = [Form({1 << i: g[j][i] for i in range(6)}) for j in range(6)]
        self._from_images = rows
        self._to_cache, self._from_cache = {}, {}
        self.dga = Derivation([self.to_frame(D0(r)) for r in rows])
        self._split_tables()
        self.cache = {}

    # coordinate changes -------------------------------------------------
    def to_frame(self, u):
        return substitute(u, self._to_images, self._to_cache)

    def from_frame(self, u):
        return substitute(u, self._from_images, self._from_cache)

    def _split_tables(self):
        dl, db = [], []
        self.violations = []
        for m in range(64):
            p, q = bideg(m)
            a, b = {}, {}
            for n, c in self.dga.table[m].terms.items():
                bd = bideg(n)
                if bd == (p + 1, q):
                    a[n] = c
                elif bd == (p, q + 1):
                    b[n] = c
                else:
                    self.violations.append((m, n))
            dl.append(Form(a))
            db.append(Form(b))
        self.del_ = Derivation.__new__(Derivation)
        self.del_.gens, self.del_.table = None, dl
        self.delbar = Derivation.__new__(Derivation)
        self.delbar.gens, self.delbar.table = None, db

    @property
    def integrable(self):
        return not self.violations

    # operators in frame coordinates ------------------------------------
    def d_frame(self, u):
        return self.dga(u)

    def del_frame(self, u):
        return self.del_(u)

    def delbar_frame(self, u):
        return self.delbar(u)

    # operators on fixed-basis forms ------------------------------------
    def del_t(self, u):
        return self.from_frame(self.del_(self.to_frame(u)))

    def delbar_t(self, u):
        return self.from_frame(self.delbar(self.to_frame(u)))

    def split(self, u):
        """Bidegree components (fixed basis) with respect to J_t."""
        v = self.to_frame(u)
        pieces = {}
        for m, c in v.terms.items():
            pieces.setdefault(bideg(m), {})[m] = c
        return {k: self.from_frame(Form(p)) for k, p in sorted(pieces.items())}

    def dual_frame(self):
        g = self.inverse
        return VectorFrame([[g[k][j] for k in range(6)] for j in range(3)])

    def phi(self, i):
        return self.rows[i]

    @property
    def is_jet(self):
        return isinstance(self.one, Jet1)


def build_structure(t=None):
    t = ParamPoint() if t is None else t
    key = t
    hit = _STRUCT_CACHE.get(key)
    if hit is not None:
        return hit
    J = ComplexStructure(frame_rows(lambda v: t[v], ONE), t)
    if len(_STRUCT_CACHE) > 256:
        _STRUCT_CACHE.clear()
    _STRUCT_CACHE[key] = J
    return J


_STRUCT_CACHE = {}


def build_structure_jet(base=None):
    base = ParamPoint() if base is None else base
    return ComplexStructure(frame_rows(lambda v: Jet1.variable(v, base), Jet1(ONE)),
                            base, Jet1(ONE))


def nakamura_class(t):
    t11, t12, t21, t22 = t.t[:4]
    if not (t11 or t12 or t21 or t22):
        return PARALLELISABLE
    return CLASS_III if t.D else CLASS_II


# ---------------------------------------------------------------- sigma

@dataclass(frozen=True)
class Sigma:
    s12: object
    s11b: object
    s12b: object
    s21b: object
    s22b: object

    def as_dict(self):
        return {"sigma12": self.s12, "sigma1b1": self.s11b, "sigma1b2": self.s12b,
                "sigma2b1": self.s21b, "sigma2b2": self.s22b}


# frame masks: phi1 phi2 | phi1 phi4 | phi1 phi5 | phi2 phi4 | phi2 phi5
_SIGMA_MASKS = {0b000011: "s12", 0b001001: "s11b", 0b010001: "s12b",
                0b001010: "s21b", 0b010010: "s22b"}


def sigma_from_frame(J):
    """Read the sigma coefficients off d(ga_t) in the J_t frame."""
    dg = J.dga.gens[2]
    zero = J.one * 0
    vals = {k: zero for k in _SIGMA_MASKS.values()}
    for m, c in dg.terms.items():
        if m not in _SIGMA_MASKS:
            raise StructureEquationViolation(
                f"d(ga_t) has a component on frame monomial {m:06b}")
        vals[_SIGMA_MASKS[m]] = c
    return Sigma(**vals)


def sigma_appendix_symbolic(variant="expanded"):
    """Closed forms for class (ii) as RatFuncs.

    variant "printed": c(t) with the last denominator term -conj(t12)conj(t21)
    as in the definition of c; variant "expanded": -t12 conj(t21), as in the
    fully expanded sigma_{2b2} display.
    """
    v = {n: RatFunc(MultiPoly.var(n)) for n in
         T_VARS + ("s11", "s12", "s21", "s22", "s31", "s32")}
    t11, t12, t21, t22 = v["t11"], v["t12"], v["t21"], v["t22"]
    s11, s12, s21, s22 = v["s11"], v["s12"], v["s21"], v["s22"]
    one = RatFunc(1)
    a = one / (one - t22 * s22 - t21 * s12)
    b = t21 * s11 + t22 * s21
    last = s12 * s21 if variant == "printed" else t12 * s21
    c = one / (one - t11 * s11 - a * b * (t11 * s12 + t12 * s22) - last)
    lam3 = -t12 * (one + a * s12 * t21 + a * t22 * s22)
    mu3 = lam3 * b * c - t22
    s12_ = -c + t21 * lam3.conj() * c.conj() + t22 * a.conj() * mu3.conj()
    K = c * (one + t21 * s12 * a + t22 * s22 * a)
    return Sigma(s12_, t21 * K.conj(), t22 * K.conj(), -t11 * K, -t12 * K)


_SYM = {}


def sigma_appendix(t, variant="expanded", check_class=True):
    if check_class and t.D:
        raise WrongClass("closed sigma formulas hold in class (ii) only (D(t) = 0)")
    sym = _SYM.get(variant)
    if sym is None:
        sym = _SYM[variant] = sigma_appendix_symbolic(variant)
    return Sigma(*(ratfunc_eval(f, t) for f in (sym.s12, sym.s11b, sym.s12b, sym.s21b, sym.s22b)))


def sigma_appendix_jet(base, variant="expanded"):
    sym = _SYM.get(variant)
    if sym is None:
        sym = _SYM[variant] = sigma_appendix_symbolic(variant)
    return Sigma(*(jet_lift(f, base) for f in (sym.s12, sym.s11b, sym.s12b, sym.s21b, sym.s22b)))


# ---------------------------------------------------------------- Gamma_j

def gamma_forms(J, sigma=None):
    """Gamma_1..Gamma_4 in the fixed basis."""
    s = sigma_from_frame(J) if sigma is None else sigma
    cs12 = s.s12.conj()
    if not (cs12.is_unit() if hasattr(cs12, "is_unit") else cs12):
        raise PoleError("conj(sigma12) vanishes")
    a, b, g, ab, bb, gb = J.rows
    abgb = wedge(a, b, gb)
    out = []
    for x, y, z, coef in ((a, g, ab, s.s22b), (a, g, bb, s.s21b),
                          (b, g, ab, s.s12b), (b, g, bb, s.s11b)):
        out.append(wedge(x, y, z) - abgb * (coef / cs12))
    return out


def holomorphic_volume(J):
    a, b, g = J.rows[:3]
    return wedge(a, b, g)


# ---------------------------------------------------------------- metrics

def omega(J):
    """omega_t = i al_t^al~_t + i be_t^be~_t + i ga_t^ga~_t (fixed basis)."""
    i = J.one * I
    return sum((wedge(J.rows[k], J.rows[k + 3]) * i for k in range(3)), Form())


def omega11_gram(t):
    """Hermitian matrix h with omega_t^{1,1} = i sum h_jk e_j ^ conj(e_k)."""
    t11, t12, t21, t22, t31, t32 = t.t
    c1 = -(t11.norm2() + t21.norm2() + t31.norm2())
    c2 = -(t12.norm2() + t22.norm2() + t32.norm2())
    c3 = -t.D.norm2()
    dd = -(t12 * t11.conj() + t22 * t21.conj() + t32 * t31.conj())
    return [[GScalar(1 + c1), dd, ZERO],
            [dd.conj(), GScalar(1 + c2), ZERO],
            [ZERO, ZERO, GScalar(1 + c3)]]


def omega11(t):
    """Closed form of the J_0-(1,1) part of omega_t."""
    h = omega11_gram(t)
    out = Form()
    for j in range(3):
        for k in range(3):
            if h[j][k]:
                out = out + wedge(monomial(1 << j), monomial(1 << (k + 3))) * (I * h[j][k])
    return out


# ---------------------------------------------------------------- T-valued (0,1)

class TVal:
    """Finite sum of c * xi_i (x) eps, i in {0,1,2}, eps a (0,1)-form."""

    def __init__(self, terms=()):
        self.terms = [(c, i, e) for c, i, e in terms if c and e]

    @staticmethod
    def basic(i, eps_index, c=ONE):
        # eps_index 3,4,5 = al~, be~, ga~
        return TVal([(c, i, monomial(1 << eps_index))])

    def __add__(self, o):
        return TVal(self.terms + o.terms)

    def __mul__(self, c):
        return TVal([(c * x, i, e) for x, i, e in self.terms])

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)


def _std_vector(i):
    return [ONE if k == i else ZERO for k in range(6)]


def cy_isomorphism(theta, Omega, frame=None):
    """theta -| Omega = sum c * eps ^ (xi_i -| Omega)."""
    from .exterior import contract
    vecs = frame.vectors if frame is not None else [_std_vector(i) for i in range(3)]
    out = Form()
    for c, i, e in theta.terms:
        out = out + wedge(e, contract(vecs[i], Omega)) * c
    return out


def contract_with_gamma(theta):
    """theta -| ga at t = 0, a (0,1)-form."""
    return cy_isomorphism(theta, GA)
