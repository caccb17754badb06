"""Adaptive Gauss-Kronrod integration and golden-section minimization.

Integrands are vectorized: they receive a 1-D numpy array of abscissae and
must return an array of the same shape. Every panel refinement evaluates all
pending panels in a single call, which keeps the numpy-heavy integrands used
by the reliability code cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DivergenceSuspected, QuadratureFailure

__all__ = [
    "QuadratureResult",
    "ScalarMinimum",
    "integrate_interval",
    "integrate_halfline",
    "minimize_scalar",
]

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes: +-x[1], +-x[3], +-x[5], 0.
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[[13, 11, 9]] = _WG[:3]
_GAUSS[7] = _WG[3]

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-8
DEFAULT_MAX_PANELS = 10_000


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    panels: int


def _gk15(f, a, b):
    """Kronrod and Gauss estimates for each panel [a_k, b_k]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise QuadratureFailure("integrand returned a non-finite value")
    k = half * (fx @ _KRONROD)
    g = half * (fx @ _GAUSS)
    return k, np.abs(k - g)


def integrate_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_panels: int = DEFAULT_MAX_PANELS,
    initial_panels: int = 1,
) -> QuadratureResult:
    """Integrate a vectorized ``f`` over ``[a, b]``.

    Panels whose error estimate exceeds their share of the tolerance are
    bisected until the total estimate meets ``max(abs_tol, rel_tol*|I|)``.

    Raises
    ------
    QuadratureFailure
        If the tolerance is not met within ``max_panels`` panels.
    """
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    val, err = _gk15(f, lo, hi)
    while True:
        total = float(math.fsum(val))
        total_err = float(err.sum())
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol:
            return QuadratureResult(total, total_err, len(val))
        share = tol / len(val)
        split = err > share
        n_new = len(val) + int(split.sum())
        if n_new > max_panels:
            raise QuadratureFailure(
                f"tolerance {tol:.3g} not met with {len(val)} panels "
                f"(error estimate {total_err:.3g})"
            )
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err = _gk15(f, new_lo, new_hi)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])


def integrate_halfline(
    f: Callable[[np.ndarray], np.ndarray],
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_panels: int = DEFAULT_MAX_PANELS,
    eps: float = 1e-12,
) -> QuadratureResult:
    """Integrate ``f`` over ``[0, inf)`` via ``t = x / (1 - x)``.

    Raises
    ------
    DivergenceSuspected
        If ``t * f(t)`` does not decay between ``t = 1e4`` and ``t = 1e8``
        (tail as heavy as ``1/t`` or heavier).
    """

    def g(x):
        one_minus = 1.0 - x
        return f(x / one_minus) / (one_minus * one_minus)

    probe = np.abs(np.array([1e4, 1e8]) * np.asarray(f(np.array([1e4, 1e8])), dtype=float))
    if np.all(np.isfinite(probe)) and probe[0] > abs_tol and probe[1] > 0.5 * probe[0]:
        raise DivergenceSuspected("integrand tail does not decay faster than 1/t")
    # Four initial panels so that a sharp peak near t=0 is not missed.
    return integrate_interval(g, 0.0, 1.0 - eps, abs_tol, rel_tol, max_panels, initial_panels=4)


class ScalarMinimum(NamedTuple):
    x: float
    fun: float
    at_endpoint: bool
    iterations: int


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-3) -> ScalarMinimum:
    """Golden-section search on ``[lo, hi]`` followed by one parabolic step.

    The best point among every evaluation (bracket ends included) is
    returned; ``at_endpoint`` flags a minimum at ``lo`` or ``hi``.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
    seen = {lo: f(lo), hi: f(hi)}
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    seen[c], seen[d] = fc, fd
    iterations = 0
    while b - a > tol:
        iterations += 1
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
            seen[c] = fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
            seen[d] = fd

    # parabola through the three best points seen
    xs = sorted(seen, key=seen.get)[:3]
    if len(xs) == 3:
        x2, x1, x3 = xs
        f1, f2, f3 = seen[x1], seen[x2], seen[x3]
        num = (x2 - x1) ** 2 * (f2 - f3) - (x2 - x3) ** 2 * (f2 - f1)
        den = (x2 - x1) * (f2 - f3) - (x2 - x3) * (f2 - f1)
        if den != 0.0:
            xp = x2 - 0.5 * num / den
            if a <= xp <= b and xp not in seen:
                seen[xp] = f(xp)

    x_best = min(seen, key=seen.get)
    return ScalarMinimum(x_best, seen[x_best], x_best in (lo, hi), iterations)
