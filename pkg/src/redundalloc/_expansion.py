"""Aggregated inclusion-exclusion coefficients.

Every closed form in the package is a signed sum of copula values whose
arguments repeat a handful of distinct values (``F_k(t)``, ``F_k(tau)`` or 1).
For an exchangeable copula only the repetition counts matter, so the nested
sums are collapsed once per structure into ``(counts, coef)`` pairs:

    quantity = sum_k coef[k] * C(counts[k])

The per-type inclusion-exclusion sums factorize, so each collapse is a tensor
contraction of a signature-derived array with small per-type matrices.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

_ZERO = 1e-13


def _g_matrix(n: int) -> np.ndarray:
    """``g[l, a] = C(n, l) C(n - l, a - l) (-1)**(a - l)`` for ``a >= l``."""
    g = np.zeros((n + 1, n + 1))
    for l in range(n + 1):
        for a in range(l, n + 1):
            g[l, a] = comb(n, l) * comb(n - l, a - l) * (-1) ** (a - l)
    return g


def _contract(table: np.ndarray, ns) -> np.ndarray:
    out = table
    for axis, n in enumerate(ns):
        out = np.moveaxis(np.tensordot(out, _g_matrix(n), axes=([axis], [0])), -1, axis)
    return out


def _to_keys(coef: np.ndarray):
    scale = np.max(np.abs(coef)) if coef.size else 0.0
    idx = np.argwhere(np.abs(coef) > _ZERO * max(scale, 1.0))
    counts = idx.astype(np.int64)
    values = coef[tuple(idx.T)] if len(idx) else np.zeros(0)
    counts.flags.writeable = False
    values.flags.writeable = False
    return counts, np.asarray(values, dtype=float)


def _table(structure) -> np.ndarray:
    return np.asarray(structure.table, dtype=float)


@lru_cache(maxsize=256)
def reliability_keys(structure):
    """``sum_l phi(l) P(C = l)`` as copula terms on ``F_k(t)`` groups."""
    return _to_keys(_contract(_table(structure), structure.n))


@lru_cache(maxsize=256)
def failure_keys(structure, i: int):
    """Terms of ``P(T > t, component 1 of type i fails at t)`` per unit density.

    The groups are ``F_k(t)`` for each type; the differentiated argument is an
    additional ``F_i(t)`` slot not included in ``counts``.
    """
    phi = _table(structure)
    shifted = np.take(phi, np.arange(1, structure.n[i] + 1), axis=i)
    ns = list(structure.n)
    ns[i] -= 1
    return _to_keys(_contract(shifted, ns))


@lru_cache(maxsize=256)
def survivor_count_keys(structure, i: int):
    """Terms of ``E(N_i(tau) 1{T > tau})`` on ``F_k(tau)`` groups."""
    phi = _table(structure)
    alive = np.indices(phi.shape)[i]
    return _to_keys(_contract(phi * (structure.n[i] - alive), structure.n))


def _early_tensor(n: int) -> np.ndarray:
    """``G[m, l, p, q]`` for one type with ``n`` candidate components."""
    G = np.zeros((n + 1,) * 4)
    for m in range(n + 1):
        for l in range(m + 1):
            base = comb(n, m) * comb(m, l)
            for j in range(n - m + 1):
                for d in range(m - l + 1):
                    G[m, l, l + d, m - l + j - d] += base * (-1) ** (j + d) * comb(n - m, j) * comb(m - l, d)
    return G


@lru_cache(maxsize=256)
def early_failure_keys(structure, i: int, include_fatal: bool = False):
    """Terms of ``P(component 1 of type i fails at s, s < T <= tau)``.

    Groups ``0..L-1`` hold ``F_k(tau)`` and groups ``L..2L-1`` hold ``F_k(s)``;
    the differentiated slot is an extra ``F_i(s)`` argument (group ``L + i``).
    With ``include_fatal`` the bracket uses ``phi(m + e_i)``, i.e. the failure
    of component 1 may itself stop the system; otherwise ``phi(m)``.
    """
    L = structure.L
    phi = _table(structure)
    ns = list(structure.n)
    ns[i] -= 1
    start = 1 if include_fatal else 0
    phi_m = np.take(phi, np.arange(start, start + ns[i] + 1), axis=i)
    phi_l = np.take(phi, np.arange(0, ns[i] + 1), axis=i)
    # D[m_1..m_L, l_1..l_L] = phi(m) - phi(l)
    D = phi_m.reshape(phi_m.shape + (1,) * L) - phi_l.reshape((1,) * L + phi_l.shape)
    operands = [D, list(range(2 * L))]
    for k in range(L):
        operands += [_early_tensor(ns[k]), [k, L + k, 2 * L + k, 3 * L + k]]
    coef = np.einsum(*operands, list(range(2 * L, 4 * L)), optimize=True)
    return _to_keys(coef)


def compensated_dot(coef: np.ndarray, values: np.ndarray) -> np.ndarray:
    """``coef @ values`` with Neumaier compensation along the first axis."""
    total = np.zeros(values.shape[1:])
    comp = np.zeros(values.shape[1:])
    for c, row in zip(coef, values):
        x = c * row
        t = total + x
        comp += np.where(np.abs(total) >= np.abs(x), (total - t) + x, (x - t) + total)
        total = t
    return total + comp
