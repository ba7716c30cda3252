"""Exterior algebra on the invariant coframe (al, be, ga, al~, be~, ga~).

Monomials are 6-bit masks, bit k <-> generator k+1, canonical order
ascending.  Coefficients may be any ring element of the scalar tower.
"""
from __future__ import annotations

import re

from .scalars import GScalar, ONE, ZERO, parse_scalar, ParseError

__all__ = [
    "NAMES", "TOP", "Form", "wedge", "d", "conj", "contract", "integrate",
    "monomial", "masks_of_degree", "masks_of_bidegree", "bideg", "popcount",
    "wedge_sign", "complement_sign", "substitute", "render", "parse_form",
    "to_json", "from_json", "AL", "BE", "GA", "ALB", "BEB", "GAB", "VectorFrame",
    "Derivation", "D0",
]

NAMES = ("al", "be", "ga", "al~", "be~", "ga~")
TOP = 63


def popcount(m):
    return bin(m).count("1")


def bideg(m):
    return popcount(m & 7), popcount(m >> 3)


def _sign(a, b):
    # parity of pairs (i in a, j in b) with i > j
    inv = 0
    for j in range(6):
        if b >> j & 1:
            inv += popcount(a >> (j + 1))
    return -1 if inv & 1 else 1


WEDGE_SIGN = [[_sign(a, b) if not a & b else 0 for b in range(64)] for a in range(64)]


def wedge_sign(a, b):
    return WEDGE_SIGN[a][b]


def complement_sign(m):
    return WEDGE_SIGN[m][TOP ^ m]


def masks_of_degree(k):
    return [m for m in range(64) if popcount(m) == k]


def masks_of_bidegree(p, q):
    return [m for m in range(64) if bideg(m) == (p, q)]


def _bits(m):
    return [k for k in range(6) if m >> k & 1]


# conj(e_m) = CONJ_SIGN[m] * e_{CONJ_MASK[m]}
def _conj_table():
    cm, cs = [], []
    for m in range(64):
        sign, acc = 1, 0
        for k in _bits(m):
            b = 1 << ((k + 3) % 6)
            s = WEDGE_SIGN[acc][b]
            sign *= s
            acc |= b
        cm.append(acc)
        cs.append(sign)
    return cm, cs


CONJ_MASK, CONJ_SIGN = _conj_table()


class Form:
    """Invariant form: dict mask -> coefficient, zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @staticmethod
    def zero():
        return Form()

    def copy(self):
        return Form(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, o):
        if not isinstance(o, Form):
            if o == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return Form(out)

    __radd__ = __add__

    def __neg__(self):
        return Form({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Form):
            return wedge(self, o)
        return Form({m: c * o for m, c in self.terms.items()})

    def __rmul__(self, o):
        if isinstance(o, Form):
            return wedge(o, self)
        return Form({m: o * c for m, c in self.terms.items()})

    def __truediv__(self, o):
        return Form({m: c / o for m, c in self.terms.items()})

    def __eq__(self, o):
        if not isinstance(o, Form):
            return o == 0 and not self.terms
        return not (self - o).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, m, default=ZERO):
        return self.terms.get(m, default)

    def degrees(self):
        return sorted({popcount(m) for m in self.terms})

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds[0] if ds else 0

    def piece(self, k):
        return Form({m: c for m, c in self.terms.items() if popcount(m) == k})

    def conj(self):
        return conj(self)

    def map_coeffs(self, f):
        return Form({m: f(c) for m, c in self.terms.items()})

    def vector(self, masks):
        return [self.terms.get(m, ZERO) for m in masks]

    @staticmethod
    def from_vector(vec, masks):
        return Form({m: c for m, c in zip(masks, vec)})

    def __repr__(self):
        return f"Form({render(self)})"

    def __str__(self):
        return render(self)


def monomial(m, c=ONE):
    return Form({m: c})


AL, BE, GA, ALB, BEB, GAB = (monomial(1 << k) for k in range(6))


def wedge(*forms):
    out = forms[0]
    for f in forms[1:]:
        acc = {}
        for a, ca in out.terms.items():
            row = WEDGE_SIGN[a]
            for b, cb in f.terms.items():
                s = row[b]
                if not s:
                    continue
                c = ca * cb
                if s < 0:
                    c = -c
                m = a | b
                acc[m] = acc[m] + c if m in acc else c
        out = Form(acc)
    return out


def conj(u):
    out = {}
    for m, c in u.terms.items():
        cc = c.conj()
        out[CONJ_MASK[m]] = cc if CONJ_SIGN[m] > 0 else -cc
    return Form(out)


class Derivation:
    """Degree +1 anti-derivation fixed by the images of the six generators.

    The images of all 64 monomials are computed once by the Leibniz rule.
    """

    def __init__(self, gens):
        self.gens = list(gens)
        table = [Form()] * 64
        for m in range(1, 64):
            low = m & -m
            k = low.bit_length() - 1
            rest = m ^ low
            # d(e_k ^ rest) = d(e_k) ^ rest - e_k ^ d(rest)
            table[m] = wedge(self.gens[k], monomial(rest)) - wedge(monomial(low), table[rest])
        self.table = table

    def __call__(self, u):
        out = {}
        for m, c in u.terms.items():
            for n, e in self.table[m].terms.items():
                v = c * e
                out[n] = out[n] + v if n in out else v
        return Form(out)


D0 = Derivation([Form(), Form(), -monomial(0b11), Form(), Form(), -monomial(0b11000)])


def d(u):
    """Exterior derivative on the fixed coframe: d ga = -al^be, d ga~ = -al~^be~."""
    return D0(u)


def contract(v, u):
    """Interior product of the vector with components v[0..5] (dual basis)."""
    out = {}
    for m, c in u.terms.items():
        sign = 1
        for k in range(6):
            if m >> k & 1:
                vk = v[k]
                if vk:
                    n = m ^ (1 << k)
                    val = c * vk
                    if sign < 0:
                        val = -val
                    out[n] = out[n] + val if n in out else val
                sign = -sign
    return Form(out)


class VectorFrame:
    """Three (1,0) vectors, each a length-6 component list in the dual basis."""

    def __init__(self, vectors):
        self.vectors = [list(v) for v in vectors]

    def __getitem__(self, i):
        return self.vectors[i]

    @staticmethod
    def standard():
        return VectorFrame([[ONE if k == i else ZERO for k in range(6)] for i in range(3)])


def integrate(u):
    """Integral over X with dV = (i al^al~)(i be^be~)(i ga^ga~) = i * top, total 1."""
    c = u.terms.get(TOP)
    if c is None:
        return ZERO
    return c * GScalar(0, -1)


def substitute(u, images, cache=None):
    """Replace generator k by images[k] (a 1-form) and expand."""
    if cache is None:
        cache = {}
    out = Form()
    acc = {}
    for m, c in u.terms.items():
        img = cache.get(m)
        if img is None:
            img = _mono_image(m, images, cache)
        for n, e in img.terms.items():
            v = c * e
            acc[n] = acc[n] + v if n in acc else v
    out = Form(acc)
    return out


def _mono_image(m, images, cache):
    if m in cache:
        return cache[m]
    if m == 0:
        r = Form({0: ONE})
    else:
        low = m & -m
        r = wedge(images[low.bit_length() - 1], _mono_image(m ^ low, images, cache))
    cache[m] = r
    return r


# ---------------------------------------------------------------- text I/O

def _mono_name(m):
    if m == 0:
        return "1"
    return "^".join(NAMES[k] for k in _bits(m))


def render(u):
    if not u.terms:
        return "0"
    parts = []
    for m in sorted(u.terms, key=lambda m: (popcount(m), m)):
        c = u.terms[m]
        lit = c.to_literal() if isinstance(c, GScalar) else repr(c)
        if lit == "1":
            parts.append(_mono_name(m))
        elif lit == "-1":
            parts.append("-" + _mono_name(m))
        elif isinstance(c, GScalar) and c.is_real():
            parts.append(f"{lit}*{_mono_name(m)}")
        else:
            parts.append(f"({lit})*{_mono_name(m)}")
    return " + ".join(parts).replace("+ -", "- ")


_NAME_RE = r"(?:al~|be~|ga~|al|be|ga)"
_TERM_RE = re.compile(
    rf"^(?:(?P<coef>\([^)]*\)|[0-9/]*i?)\*?)?(?P<mono>{_NAME_RE}(?:\^{_NAME_RE})*|1)$")


def parse_form(text):
    """Parse e.g. 'al^ga^al~ + (1/2-1i)*be^ga^be~ - i*ga'."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return Form()
    # split on top-level +/- (not inside parentheses)
    terms, depth, cur, signs = [], 0, "", []
    sign = 1
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur:
                terms.append(cur)
                signs.append(sign)
            cur, sign = "", (-1 if ch == "-" else 1)
            continue
        cur += ch
    if cur:
        terms.append(cur)
        signs.append(sign)
    out = Form()
    for sg, t in zip(signs, terms):
        m = _TERM_RE.match(t)
        if not m:
            raise ParseError(f"cannot parse form term {t!r}")
        coef = m.group("coef") or ""
        c = parse_scalar(coef) if coef not in ("",) else ONE
        mono = m.group("mono")
        mask = 0
        sgn = 1
        if mono != "1":
            for nm in mono.split("^"):
                b = 1 << NAMES.index(nm)
                if mask & b:
                    sgn = 0
                    break
                sgn *= WEDGE_SIGN[mask][b]
                mask |= b
        if sgn:
            out = out + monomial(mask, c * (sg * sgn))
    return out


def to_json(u):
    return [[m, c.to_literal()] for m, c in sorted(u.terms.items())]


def from_json(data):
    return Form({int(m): parse_scalar(c) for m, c in data})
