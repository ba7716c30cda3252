"""Exact scalars: Gaussian rationals, polynomials in (t, conj t), rational
functions and first-order jets.

Parameter variables are t11 t12 t21 t22 t31 t32 followed by their formal
conjugates s11 .. s32.  Conjugation of a polynomial conjugates coefficients
and swaps t with s.
"""
from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "GScalar", "I", "ZERO", "ONE", "parse_scalar", "PoleError", "ParseError",
    "T_VARS", "S_VARS", "ALL_VARS", "var_index",
    "MultiPoly", "RatFunc", "Jet1", "ParamPoint",
    "poly_eval", "ratfunc_eval", "jet_lift",
]


class ParseError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class GScalar:
    """a + b i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GScalar):
            self.re, self.im = re.re, re.im
            return
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _raw(cls, re, im):
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @staticmethod
    def coerce(x):
        if isinstance(x, GScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return GScalar._raw(Fraction(x), Fraction(0))
        if isinstance(x, complex):
            return GScalar(Fraction(x.real), Fraction(x.imag))
        return NotImplemented

    def __add__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        return GScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        return GScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return GScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, o):
        if isinstance(o, int):
            return GScalar._raw(self.re * o, self.im * o)
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            return GScalar._raw(a * c, a * d)
        if not d:
            return GScalar._raw(a * c, b * c)
        return GScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GScalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def conj(self):
        return GScalar._raw(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_unit(self):
        return bool(self)

    def __eq__(self, o):
        o = GScalar.coerce(o)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self):
        return not self.im

    def to_literal(self):
        def q(x):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        if not self.im:
            return q(self.re)
        im = q(self.im) + "i"
        if not self.re:
            return im
        sign = "" if self.im < 0 else "+"
        return f"{q(self.re)}{sign}{im}"

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        return f"GScalar({self.to_literal()!r})"


ZERO = GScalar(0)
ONE = GScalar(1)
I = GScalar(0, 1)

_RAT = r"\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_RAT}$")
_IMAG_RE = re.compile(rf"^([+-]?)({_RAT})?i$")


def _parse_rat(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {s!r}") from e


def parse_scalar(text):
    """Parse `a/b+c/di` style literals (either part optional)."""
    s = str(text).replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError("empty scalar")
    if _REAL_RE.match(s):
        return GScalar(_parse_rat(s))
    if not s.endswith("i"):
        raise ParseError(f"bad scalar literal {text!r}")
    # split real and imaginary parts at the last sign not in first position
    cut = max(s.rfind("+"), s.rfind("-"))
    if cut > 0:
        real, imag = s[:cut], s[cut:]
        if not _REAL_RE.match(real):
            raise ParseError(f"bad scalar literal {text!r}")
        re_part = _parse_rat(real)
    else:
        re_part, imag = Fraction(0), s
    m = _IMAG_RE.match(imag)
    if not m:
        raise ParseError(f"bad scalar literal {text!r}")
    mag = _parse_rat(m.group(2)) if m.group(2) else Fraction(1)
    if m.group(1) == "-":
        mag = -mag
    return GScalar(re_part, mag)


# ---------------------------------------------------------------- variables

T_VARS = ("t11", "t12", "t21", "t22", "t31", "t32")
S_VARS = ("s11", "s12", "s21", "s22", "s31", "s32")
ALL_VARS = T_VARS + S_VARS
NV = len(ALL_VARS)
_VIDX = {v: i for i, v in enumerate(ALL_VARS)}


def var_index(name):
    try:
        return _VIDX[name]
    except KeyError:
        raise ParseError(f"unknown parameter variable {name!r}") from None


def _swap_exp(e):
    return e[6:] + e[:6]


class MultiPoly:
    """Sparse polynomial over Q(i) in the twelve parameter variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @staticmethod
    def const(c):
        c = GScalar.coerce(c)
        return MultiPoly({(0,) * NV: c})

    @staticmethod
    def var(name):
        e = [0] * NV
        e[var_index(name)] = 1
        return MultiPoly({tuple(e): ONE})

    @staticmethod
    def coerce(x):
        if isinstance(x, MultiPoly):
            return x
        g = GScalar.coerce(x)
        if g is NotImplemented:
            return g
        return MultiPoly.const(g)

    def __add__(self, o):
        o = MultiPoly.coerce(o)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        o = MultiPoly.coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, GScalar)):
            g = GScalar.coerce(o)
            return MultiPoly({e: c * g for e, c in self.terms.items()})
        o = MultiPoly.coerce(o)
        if o is NotImplemented:
            return o
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self):
        return MultiPoly({_swap_exp(e): c.conj() for e, c in self.terms.items()})

    def partial(self, name):
        k = var_index(name)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                out[tuple(ne)] = c * e[k]
        return MultiPoly(out)

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self):
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def __eq__(self, o):
        o = MultiPoly.coerce(o)
        if o is NotImplemented:
            return False
        return not (self - o).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            mon = "*".join(f"{ALL_VARS[i]}^{k}" if k > 1 else ALL_VARS[i]
                           for i, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = MultiPoly.coerce(num)
        self.den = MultiPoly.const(1) if den is None else MultiPoly.coerce(den)
        if not self.den:
            raise PoleError("rational function with zero denominator")

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFunc):
            return x
        p = MultiPoly.coerce(x)
        if p is NotImplemented:
            return p
        return RatFunc(p)

    def __add__(self, o):
        o = RatFunc.coerce(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        o = RatFunc.coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = RatFunc.coerce(o)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatFunc.coerce(o)
        if o is NotImplemented:
            return o
        if not o.num:
            raise PoleError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return RatFunc.coerce(o) / self

    def conj(self):
        return RatFunc(self.num.conj(), self.den.conj())

    def partial(self, name):
        return RatFunc(self.num.partial(name) * self.den - self.num * self.den.partial(name),
                       self.den * self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        o = RatFunc.coerce(o)
        if o is NotImplemented:
            return False
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is unhashable")

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


# ---------------------------------------------------------------- points

class ParamPoint:
    """A parameter point t = (t11, ..., t32) with Gaussian rational entries."""

    __slots__ = ("t",)

    def __init__(self, values=None, **kw):
        vals = dict(values or {})
        vals.update(kw)
        t = [ZERO] * 6
        for k, v in vals.items():
            i = var_index(k)
            if i >= 6:
                raise ParseError(f"{k} is a conjugate variable, give t-values only")
            t[i] = v if isinstance(v, GScalar) else (
                parse_scalar(v) if isinstance(v, str) else GScalar.coerce(v))
        self.t = tuple(t)

    @staticmethod
    def zero():
        return ParamPoint()

    def __getitem__(self, name):
        i = var_index(name)
        return self.t[i] if i < 6 else self.t[i - 6].conj()

    def value(self, i):
        return self.t[i] if i < 6 else self.t[i - 6].conj()

    @property
    def D(self):
        t11, t12, t21, t22 = self.t[:4]
        return t11 * t22 - t12 * t21

    def is_essential(self):
        return not self.t[4] and not self.t[5]

    def as_dict(self):
        return {k: v.to_literal() for k, v in zip(T_VARS, self.t)}

    def __eq__(self, o):
        return isinstance(o, ParamPoint) and self.t == o.t

    def __hash__(self):
        return hash(self.t)

    def __repr__(self):
        nz = ",".join(f"{k}={v}" for k, v in zip(T_VARS, self.t) if v)
        return f"ParamPoint({nz or '0'})"

    @staticmethod
    def parse(text):
        """'0', 't11=1/2,t22=1/2+1/3i' (commas or spaces)."""
        s = str(text).strip()
        if s in ("0", "", "zero"):
            return ParamPoint()
        vals = {}
        for item in re.split(r"[,\s;]+", s):
            if not item:
                continue
            if "=" not in item:
                raise ParseError(f"expected name=value, got {item!r}")
            k, v = item.split("=", 1)
            vals[k.strip()] = parse_scalar(v)
        return ParamPoint(vals)


def poly_eval(p, pt):
    """Evaluate a MultiPoly at a ParamPoint."""
    vals = [pt.value(i) for i in range(NV)]
    powcache = {}
    total = ZERO
    for e, c in p.terms.items():
        acc = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                pw = powcache.get(key)
                if pw is None:
                    pw = powcache[key] = vals[i] ** k
                acc = acc * pw
        total = total + acc
    return total


def ratfunc_eval(f, pt):
    if isinstance(f, MultiPoly):
        return poly_eval(f, pt)
    d = poly_eval(f.den, pt)
    if not d:
        raise PoleError(f"denominator vanishes at {pt!r}")
    return poly_eval(f.num, pt) / d


# ---------------------------------------------------------------- jets

class Jet1:
    """Value plus the twelve first partials (t then s) at a base point."""

    __slots__ = ("v", "d")

    def __init__(self, v, d=None):
        self.v = GScalar.coerce(v)
        self.d = tuple(d) if d is not None else (ZERO,) * NV

    @staticmethod
    def variable(name, base):
        k = var_index(name)
        d = [ZERO] * NV
        d[k] = ONE
        return Jet1(base.value(k), d)

    @staticmethod
    def coerce(x):
        if isinstance(x, Jet1):
            return x
        g = GScalar.coerce(x)
        if g is NotImplemented:
            return g
        return Jet1(g)

    def __add__(self, o):
        o = Jet1.coerce(o)
        if o is NotImplemented:
            return o
        return Jet1(self.v + o.v, [a + b for a, b in zip(self.d, o.d)])

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.v, [-a for a in self.d])

    def __sub__(self, o):
        o = Jet1.coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Jet1):
            g = GScalar.coerce(o)
            if g is NotImplemented:
                return g
            return Jet1(self.v * g, [a * g for a in self.d])
        return Jet1(self.v * o.v, [self.v * b + o.v * a for a, b in zip(self.d, o.d)])

    __rmul__ = __mul__

    def inverse(self):
        if not self.v:
            raise PoleError("jet with zero value is not invertible")
        iv = self.v.inverse()
        iv2 = -(iv * iv)
        return Jet1(iv, [a * iv2 for a in self.d])

    def __truediv__(self, o):
        o = Jet1.coerce(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Jet1.coerce(o) * self.inverse()

    def conj(self):
        d = [a.conj() for a in self.d]
        return Jet1(self.v.conj(), d[6:] + d[:6])

    def partial(self, name):
        return self.d[var_index(name)]

    def __bool__(self):
        return bool(self.v) or any(self.d)

    def is_unit(self):
        return bool(self.v)

    def __eq__(self, o):
        o = Jet1.coerce(o)
        if o is NotImplemented:
            return False
        return self.v == o.v and self.d == o.d

    def __hash__(self):
        return hash((self.v, self.d))

    def __repr__(self):
        nz = ", ".join(f"d/d{ALL_VARS[i]}={a}" for i, a in enumerate(self.d) if a)
        return f"Jet1({self.v}; {nz})"


def jet_lift(f, base):
    """First-order jet of a MultiPoly or RatFunc at a ParamPoint."""
    if isinstance(f, MultiPoly):
        return Jet1(poly_eval(f, base), [poly_eval(f.partial(v), base) for v in ALL_VARS])
    f = RatFunc.coerce(f)
    n, d = poly_eval(f.num, base), poly_eval(f.den, base)
    if not d:
        raise PoleError(f"denominator vanishes at {base!r}")
    dn = [poly_eval(f.num.partial(v), base) for v in ALL_VARS]
    dd = [poly_eval(f.den.partial(v), base) for v in ALL_VARS]
    d2 = d * d
    return Jet1(n / d, [(a * d - n * b) / d2 for a, b in zip(dn, dd)])
