"""Acceptance checks 1-13 as a registry replayed by ``iwa verify``.

Each check returns a CheckResult with one line per sub-check.  Expected
values are either printed constants from the source text or computed by
an independent route; the sub-check line says which.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import (de_rham, dolbeault, bott_chern, aeppli, frolicher_page,
                         e2_via_d1, hodge_numbers, betti_numbers, massey_triple, INF_PAGE)
from .deformation import (build_structure, build_structure_jet, sigma_from_frame, sigma_appendix,
                          sigma_appendix_jet, symbolic_frame, nakamura_class, CLASS_III)
from .exterior import (Form, wedge, parse_form, render, monomial, D0, masks_of_degree, AL, BE, GA,
                       ALB, BEB)
from .hodge import (Metric, hodge_star, metric_predicates, gauduchon_lift, inner, adjoint,
                    laplacian_kernel, DELBAR)
from . import mirror as mi
from .sampling import sample_points, DEFAULT_SEED
from .scalars import MultiPoly, ParamPoint, ONE, ZERO, I, T_VARS, S_VARS

__all__ = ["CheckResult", "REGISTRY", "run_checks", "gamma1_expansion_mismatches"]


@dataclass
class CheckResult:
    cid: int
    title: str
    passed: bool = True
    lines: list = field(default_factory=list)
    witness: str = ""

    def sub(self, label, ok, note=""):
        self.lines.append((label, bool(ok), note))
        if not ok:
            if self.passed:
                self.witness = f"{label}{': ' + note if note else ''}"
            self.passed = False
        return ok


REGISTRY = {}


def criterion(cid, title):
    def deco(fn):
        REGISTRY[cid] = (title, fn)
        return fn
    return deco


def run_checks(ids=None, seed=DEFAULT_SEED):
    out = []
    for cid in sorted(REGISTRY if ids is None else ids):
        title, fn = REGISTRY[cid]
        res = CheckResult(cid, title)
        try:
            fn(res, seed)
        except Exception as exc:     # a crash is a failure with the exception as witness
            res.sub("check raised", False, f"{type(exc).__name__}: {exc}")
        out.append(res)
    return out


def _grid(h):
    return [[h[p, q] for q in range(4)] for p in range(4)]


# ---------------------------------------------------------------- 1-3

@criterion(1, "Cohomology tables at t=0")
def _c1(r, seed):
    h = hodge_numbers()
    want = {(1, 0): 3, (0, 1): 2, (1, 1): 6, (2, 1): 6, (1, 2): 6, (3, 0): 1, (0, 3): 1}
    r.sub("Dolbeault numbers", all(h[k] == v for k, v in want.items()), str(_grid(h)))
    b = betti_numbers()
    r.sub("Betti numbers b1..b5 = 4,8,10,8,4", b[1:6] == [4, 8, 10, 8, 4], str(b))
    r.sub("dim H^{2,2}_A = 4", aeppli(2, 2).dimension == 4)
    r.sub("dim H^{1,1}_BC = 4", bott_chern(1, 1).dimension == 4)


def _class3_point(seed):
    return sample_points(seed, 1, kind="class3")[0]


@criterion(2, "Class (iii) Hodge numbers")
def _c2(r, seed):
    t = _class3_point(seed)
    J = build_structure(t)
    h = hodge_numbers(J)
    r.sub(f"sampled point {t!r} is class (iii)", nakamura_class(t) == CLASS_III)
    for (p, q), v in (((2, 0), 1), ((1, 1), 5), ((0, 2), 2), ((2, 1), 4)):
        r.sub(f"h^{{{p},{q}}} = {v}", h[p, q] == v, f"got {h[p, q]}")


@criterion(3, "Frolicher spectral sequence")
def _c3(r, seed):
    pts = [ParamPoint()] + sample_points(seed, 2, kind="class2") + sample_points(seed, 2, kind="class3")
    for t in pts:
        J = build_structure(t)
        e2 = {(p, q): frolicher_page(2, p, q, J).dimension for p in range(4) for q in range(4)}
        e3 = {(p, q): frolicher_page(3, p, q, J).dimension for p in range(4) for q in range(4)}
        einf = {(p, q): frolicher_page(INF_PAGE, p, q, J).dimension
                for p in range(4) for q in range(4)}
        b = betti_numbers(J)
        r.sub(f"{t!r}: dim E2^(2,1) = 4", e2[2, 1] == 4, f"got {e2[2, 1]}")
        r.sub(f"{t!r}: E2 = E3 = E_inf", e2 == e3 == einf)
        sums = [sum(v for (p, q), v in e2.items() if p + q == k) for k in range(7)]
        r.sub(f"{t!r}: sum of E2 = Betti", sums == b, f"{sums} vs {b}")
        r.sub(f"{t!r}: E2^(2,1) via d1 = 4", e2_via_d1(2, 1, J) == 4)


# ---------------------------------------------------------------- 4-5

STAR_IDENTITIES = [
    ("al^ga^al~", "-i*be^ga^be~"), ("be^ga^be~", "-i*al^ga^al~"),
    ("al^ga^be~", "i*al^ga^be~"), ("be^ga^al~", "i*be^ga^al~"),
    ("al^be^ga", "-i*al^be^ga"), ("al^be^ga~", "i*al^be^ga~"),
    ("al^ga^al~ + be^ga^be~", "-i*al^ga^al~ - i*be^ga^be~"),
    ("al^ga^al~ - be^ga^be~", "i*al^ga^al~ - i*be^ga^be~"),
]


@criterion(4, "Star identities")
def _c4(r, seed):
    m = Metric.standard()
    for src, tgt in STAR_IDENTITIES:
        got = hodge_star(parse_form(src), m)
        r.sub(f"star({src}) = {tgt}", got == parse_form(tgt), render(got))
    ok = all(hodge_star(hodge_star(monomial(k), m), m) == -monomial(k) for k in masks_of_degree(3))
    r.sub("star^2 = -1 on all 20 monomial 3-forms", ok)


@criterion(5, "Intersection-form signatures")
def _c5(r, seed):
    for name, want in (("h21gamma", ("-", "+", "+", "+")), ("f2", ("-", "-", "+", "+", "+")),
                       ("h11B", ("+", "+", "-", "-", "-"))):
        got = mi.space_signature(name).signature
        r.sub(f"{name}: {''.join(want)}", got == want, "".join(got))


# ---------------------------------------------------------------- 6-8

@criterion(6, "Gauduchon families")
def _c6(r, seed):
    pts = sample_points(seed, 20)
    bad_t, bad_11 = [], []
    for t in pts:
        mt = Metric.standard(build_structure(t))
        if not metric_predicates(mt)["gauduchon"]:
            bad_t.append(t)
        m11 = Metric.omega11(t)
        pr = metric_predicates(m11)
        if not (pr["gauduchon"] and pr["positive"]):
            bad_11.append(t)
    r.sub("del_t delbar_t omega_t^2 = 0 at 20 points", not bad_t, repr(bad_t[:1]))
    r.sub("del delbar (omega_t^{1,1})^2 = 0 and positive at 20 points", not bad_11, repr(bad_11[:1]))


@criterion(7, "Canonical coordinates z")
def _c7(r, seed):
    r.sub("z(0) = (1,0,0,0)", mi.coordinates_z() == [ONE, ZERO, ZERO, ZERO])
    bad = [t for t in sample_points(seed, 20) if mi.coordinates_z(t) != mi.coordinates_z_closed(t)]
    r.sub("pairing equals closed forms at 20 points", not bad, repr(bad[:1]))


@criterion(8, "Mirror map")
def _c8(r, seed):
    bad = [t for t in sample_points(seed, 20)
           if mi.mirror_map_positive(t).coeffs != mi.mirror_formula(t)]
    r.sub("Aeppli expansion of (omega_t^{1,1})^2 equals the closed formula at 20 points",
          not bad, repr(bad[:1]))
    w0 = mi.omega0_squared_coords()
    r.sub("[omega_0^2]_A = 2 e1 + 2 e2", w0 == [2 * ONE, 2 * ONE, ZERO, ZERO], str(w0))
    r.sub("M(0) = M~(0) = [omega_0^2]_A",
          mi.mirror_map_positive().coeffs == w0 == mi.mirror_map_complexified().coeffs)
    r.sub("[i al^al~ ^ i be^be~]_A = 0",
          aeppli(2, 2).is_zero_class(wedge(AL, ALB, BE, BEB) * (I * I)))
    dm = mi.dM0_check()
    r.sub("dM~_0 = A_0 under the vector-field identification", dm["table_agrees"])


# ---------------------------------------------------------------- 9

# Printed Gamma_1 expansion: (monomial, coefficient a0, coefficient of rho) with
# Gamma_1(t) = sum (a0 + rho a1) * monomial, rho = sigma_{2b2}/conj(sigma_12).
def _gamma1_table():
    V = MultiPoly.var
    t11, t12, t21, t22, t31, t32 = (V(n) for n in T_VARS)
    s11, s12, s21, s22, s31, s32 = (V(n) for n in S_VARS)
    one, Z = MultiPoly.const(1), MultiPoly()
    D = t11 * t22 - t12 * t21
    Db = D.conj()
    return [
        ("al be ga", -s12, Z), ("al~ be~ ga~", -D * t12, -D),
        ("al al~ ga", -(one - t11 * s11), t21 * Db),
        ("al al~ be~", -(t32 * (one - t11 * s11) + t12 * s11 * t31), D * s31),
        ("al be al~", -s12 * t31, t21 * s32 + t11 * s31),
        ("al al~ ga~", -(t11 * s11 - one) * D, -t21),
        ("al be be~", -s12 * t32, t22 * s32 + t12 * s31),
        ("al be ga~", s12 * D, -one),
        ("al~ be ga", -t11 * s12, t11 * Db),
        ("al~ be be~", -(t11 * s12 * t32 - t12 * s12 * t31), D * s32),
        ("al~ be ga~", D * t11 * s12, -t11),
        ("al~ be~ ga", t12, D * Db),
        ("al be~ ga", t12 * s11, t22 * Db),
        ("al be ga", Z, Db),
        ("al be~ ga~", t12 * s11 * D, t22),
        ("be be~ ga", t12 * s12, -t12 * Db),
        ("be be~ ga~", -t12 * s12 * D, t12),
    ]


def _on_slice(p):
    # drop monomials containing t31, t32 or their conjugates
    return MultiPoly({e: c for e, c in p.terms.items()
                      if not (e[4] or e[5] or e[10] or e[11])})


def gamma1_expansion_mismatches():
    """Compare X - rho Y (X = al_t ga_t al~_t, Y = al_t be_t ga~_t) with the printed expansion.

    Returns a list of (monomial, part, difference, survives_on_slice).
    """
    L0, L1 = Form(), Form()
    for names, a0, a1 in _gamma1_table():
        f = parse_form(names.replace(" ", "^"))
        (m, c), = f.terms.items()
        L0 = L0 + Form({m: a0 * c})
        L1 = L1 + Form({m: a1 * c})
    R = symbolic_frame()
    X = wedge(R[0], R[2], R[3])
    Y = wedge(R[0], R[1], R[5])
    out = []
    for part, diff in (("rho^0", X - L0), ("rho^1", -Y - L1)):
        for m, c in sorted(diff.terms.items()):
            out.append((render(monomial(m)), part, c, bool(_on_slice(c))))
    return out


@criterion(9, "Closed-form sigma and Gamma_1 expansion")
def _c9(r, seed):
    mm = gamma1_expansion_mismatches()
    slice_mm = [x for x in mm if x[3]]
    r.sub("Gamma_1(t) equals the printed expansion term by term on the essential slice",
          not slice_mm, "; ".join(f"{a} [{b}] off by {c!r}" for a, b, c, _ in slice_mm))
    pts = sample_points(seed, 6, kind="class2")
    bad = []
    for t in pts:
        s_f = sigma_from_frame(build_structure(t))
        s_a = sigma_appendix(t)
        if s_f != s_a:
            bad.append(t)
    r.sub("sigma closed forms equal frame sigma on 6 class (ii) points", not bad, repr(bad[:1]))
    sj = sigma_from_frame(build_structure_jet())
    anti = all(not getattr(sj, f).partial(v) for f in ("s11b", "s12b", "s21b", "s22b")
               for v in S_VARS)
    r.sub("anti-holomorphic first partials of sigma_{i jb} vanish at 0", anti)
    nonzero = [(f, v) for f in ("s11b", "s12b", "s21b", "s22b") for v in T_VARS
               if getattr(sj, f).partial(v)]
    r.sub("all 12 first partials of every sigma_{i jb} vanish at 0", not nonzero,
          ", ".join(f"d{f}/d{v} = {getattr(sj, f).partial(v)}" for f, v in nonzero))
    sa = sigma_appendix_jet(ParamPoint())
    r.sub("closed-form sigma jets equal frame sigma jets at 0",
          all(getattr(sa, f) == getattr(sj, f) for f in ("s11b", "s12b", "s21b", "s22b")))


# ---------------------------------------------------------------- 10-12

@criterion(10, "sGG lift")
def _c10(r, seed):
    m0 = Metric.standard()
    H4 = de_rham(4)
    ok = True
    for G in mi.aeppli_basis_t(build_structure()):
        res = gauduchon_lift(G, m0)
        ok &= res.omega == G and res.dr_coords == H4.coords(G)
    r.sub("Q_{omega_0} = I_0 on the 4-class basis", ok)
    for t in sample_points(seed, 4):
        L = mi.lift_I(t)
        r.sub(f"{t!r}: lifts d-closed", L["closed"])
        r.sub(f"{t!r}: P_t o Q_{{omega_t}} = id", L["P_after_Q_is_id"])


@criterion(11, "VHS report")
def _c11(r, seed):
    v = mi.vhs_checks()
    r.sub("transversality at 0", v["transversality"]["ok"])
    der = v["f2_holomorphic"]["derivatives"]
    r.sub("anti-holomorphic derivatives of [Gamma_j] are +-[al^be^ga]", v["f2_holomorphic"]["ok"])
    r.sub("d Gamma_1/d t12b at 0 = -al^be^ga", der.get((1, "s12")) == -wedge(AL, BE, GA))
    w = v["h12_not_holomorphic"]
    r.sub("delbar_0(al^ga~^be) = -al^al~^be^be~",
          w["delbar_al_gab_be"] == -parse_form("al^al~^be^be~"))
    r.sub("delbar_0 of the t21b-derivative of conj(star_t Gamma_1) is nonzero", w["ok"])
    fg = v["fg_holomorphic"]["derivatives"]
    r.sub("F_G derivatives land in H^{2,0}(B_0) + lifted H^{2,2}_A", v["fg_holomorphic"]["ok"])
    r.sub("d(al_t ga_t al~_t ga~_t)/d t12b = -al^be^ga^ga~",
          fg.get((1, "s12")) == -parse_form("al^be^ga^ga~"))
    r.sub("d(al_t ga_t al~_t ga~_t)/d t32b = al^be^ga^al~",
          fg.get((1, "s32")) == parse_form("al^be^ga^al~"))


@criterion(12, "Massey product")
def _c12(r, seed):
    res = massey_triple(AL, BE, BE)
    r.sub("<al, be, be> is nonzero modulo indeterminacy", res.is_nonzero,
          render(res.representative))


# ---------------------------------------------------------------- 13

def _adjoint_ok(m, op):
    J = m.J
    for k in range(6):
        src = [J.from_frame(monomial(x)) for x in masks_of_degree(k)]
        tgt = [J.from_frame(monomial(x)) for x in masks_of_degree(k + 1)]
        opf = {"del": J.del_t, "delbar": J.delbar_t, "d": lambda u: J.from_frame(J.dga(J.to_frame(u)))}[op]
        for u in src:
            ou = opf(u)
            for v in tgt:
                lhs = inner(ou, v, m) if ou else ZERO
                av = adjoint(op, v, m)
                rhs = inner(u, av, m) if av else ZERO
                if lhs != rhs:
                    return False
    return True


@criterion(13, "Property suites")
def _c13(r, seed):
    pts = sample_points(seed, 5)
    ok = all(not D0(D0(monomial(x))) for x in range(64))
    for t in pts[:2]:
        J = build_structure(t)
        ok &= all(not J.dga(J.dga(monomial(x))) for x in range(64))
        ok &= all(not J.delbar(J.delbar(monomial(x))) for x in range(64))
    r.sub("d^2 = 0 and delbar_t^2 = 0 on all 64 monomials", ok)
    metrics = [Metric.standard(), Metric.omega11(pts[0]), Metric.standard(build_structure(pts[1]))]
    r.sub("<P u, v> = <u, P* v> for all basis pairs (3 metrics, d/del/delbar)",
          all(_adjoint_ok(m, op) for m in metrics for op in ("d", "del", "delbar")))
    iso = True
    for J in (build_structure(), build_structure(pts[0])):
        m = Metric.standard(J)
        for p in range(4):
            for q in range(4):
                iso &= dolbeault(p, q, J).dimension == len(laplacian_kernel(DELBAR, p, q, m))
    r.sub("dim Dolbeault = dim ker Laplacian'' (t=0 and one sample)", iso)
    sym = all(mi.potential_symmetry_check(t)["symmetric"] for t in [ParamPoint()] + pts)
    r.sub("dPsi_i/dz_j symmetric at 0 and 5 points", sym)
    cross = mi.yukawa_cross_oracle()
    r.sub("Yukawa cross-oracle within 10 h^2, h = 1/64", cross["ok"],
          f"max |T-Y|^2 = {float(cross['max_abs_diff_sq']):.3e}, budget {float(cross['budget_sq']):.3e}")
