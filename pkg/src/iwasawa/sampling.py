"""Seeded rational sampling of parameter points.

Values are Gaussian rationals with denominators at most ``max_den`` and
each real/imaginary part bounded by ``bound``, so every sampled point is
well inside the region where the frame is invertible and omega_t^{1,1}
is positive.  The generator is ``random.Random`` seeded explicitly, which
makes the stream identical across runs and platforms.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .scalars import GScalar, ParamPoint, T_VARS

__all__ = ["sample_points", "DEFAULT_SEED"]

DEFAULT_SEED = 20240517


def _rational(rng, bound, max_den):
    den = rng.randint(1, max_den)
    lim = int(bound * den)
    return Fraction(rng.randint(-lim, lim), den)


def _gauss(rng, bound, max_den):
    return GScalar(_rational(rng, bound, max_den), _rational(rng, bound, max_den))


def sample_points(seed=DEFAULT_SEED, count=10, slice="essential", kind="any",
                  bound=Fraction(1, 4), max_den=8):
    """Deterministic list of distinct ParamPoints.

    slice: "essential" (t31 = t32 = 0) or "full".
    kind: "any", "class2" (D(t) = 0, t != 0) or "class3" (D(t) != 0).
    Class (ii) points are built as rank-one products t_ij = a_i b_j, so
    their denominators can reach max_den**2.
    """
    rng = random.Random(seed)
    out, seen = [], set()
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 1000 * (count + 1):
            raise RuntimeError("sampler could not produce enough distinct points")
        if kind == "class2":
            half = Fraction(1, 2)
            a = [_gauss(rng, half, max_den) for _ in range(2)]
            b = [_gauss(rng, half, max_den) for _ in range(2)]
            vals = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
        else:
            vals = [_gauss(rng, bound, max_den) for _ in range(4)]
        if slice == "full":
            vals += [_gauss(rng, bound, max_den) for _ in range(2)]
        pt = ParamPoint(dict(zip(T_VARS, vals)))
        if pt in seen or not any(pt.t):
            continue
        if kind == "class2" and (pt.D or not any(pt.t[:4])):
            continue
        if kind == "class3" and not pt.D:
            continue
        seen.add(pt)
        out.append(pt)
    return out
