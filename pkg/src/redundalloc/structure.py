"""Survival signatures of coherent systems with several component types.

A :class:`SystemStructure` stores ``phi(l_1, ..., l_L)``, the probability that
the system works when exactly ``l_i`` components of type ``i`` work, as a
dense float table over the lattice ``prod_i [0..n_i]``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BadIndex, InvalidK, MissingEntry, NonMonotone, OutOfRange, TooLarge, ValidationError

__all__ = [
    "SystemStructure",
    "signature_from_table",
    "signature_k_out_of_n",
    "signature_series_parallel",
    "signature_from_paths",
    "structure_from_json",
    "structure_to_json",
    "structure_from_csv",
    "structure_to_csv",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 24
_TOL = 1e-12


@dataclass(frozen=True)
class SystemStructure:
    """Validated survival signature.

    Parameters
    ----------
    n : tuple of int
        Number of components of each type.
    values : tuple of float
        ``phi`` flattened in C order over the lattice ``prod_i [0..n_i]``.
    kind : str
        Informational tag (``"table"``, ``"k_out_of_n"``, ``"series_parallel"``
        or ``"paths"``).

    Use the ``signature_*`` constructors rather than building this directly;
    they run the coherence checks.
    """

    n: tuple
    values: tuple
    kind: str = "table"

    @property
    def L(self) -> int:
        return len(self.n)

    @property
    def table(self) -> np.ndarray:
        arr = np.array(self.values, dtype=float).reshape(tuple(k + 1 for k in self.n))
        arr.flags.writeable = False
        return arr

    def phi(self, l: Sequence[int]) -> float:
        l = tuple(int(x) for x in l)
        if len(l) != self.L or any(not 0 <= x <= k for x, k in zip(l, self.n)):
            raise BadIndex(f"lattice point {l} outside [0..n] for n={self.n}")
        return self.values[int(np.ravel_multi_index(l, tuple(k + 1 for k in self.n)))]

    def lattice(self):
        return itertools.product(*(range(k + 1) for k in self.n))

    @property
    def is_series_parallel(self) -> bool:
        expected = _series_parallel_table(self.n)
        return bool(np.array_equal(self.table, expected))


def _check_n(n) -> tuple:
    n = tuple(int(k) for k in n)
    if not n or any(k < 1 for k in n):
        raise ValidationError(f"component counts must be a nonempty sequence of integers >= 1, got {n}")
    return n


def _validate(n: tuple, table: np.ndarray, kind: str) -> SystemStructure:
    if np.any(~np.isfinite(table)) or np.any(table < -_TOL) or np.any(table > 1 + _TOL):
        bad = tuple(int(x) for x in np.argwhere((table < -_TOL) | (table > 1 + _TOL) | ~np.isfinite(table))[0])
        raise OutOfRange(f"phi{bad} = {table[bad]} is outside [0, 1]")
    table = np.clip(table, 0.0, 1.0)
    # coherence: nondecreasing along every axis
    for axis in range(len(n)):
        diff = np.diff(table, axis=axis)
        if np.any(diff < -_TOL):
            lo = tuple(int(x) for x in np.argwhere(diff < -_TOL)[0])
            hi = list(lo)
            hi[axis] += 1
            raise NonMonotone(
                f"phi{lo} = {table[lo]:.6g} > phi{tuple(hi)} = {table[tuple(hi)]:.6g}; "
                "a coherent system cannot lose reliability when a component is repaired"
            )
    zero = (0,) * len(n)
    if table[zero] > _TOL or table[tuple(n)] < 1 - _TOL:
        raise OutOfRange("phi(0,...,0) must be 0 and phi(n_1,...,n_L) must be 1 for a coherent system")
    return SystemStructure(n, tuple(float(x) for x in table.ravel()), kind)


def _parse_value(value) -> float:
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse signature value {value!r}") from None
    return float(value)


def signature_from_table(L: int, n: Sequence[int], entries: Iterable) -> SystemStructure:
    """Build a structure from explicit ``(l, value)`` pairs.

    Parameters
    ----------
    L : int
        Number of component types.
    n : sequence of int
        Components per type.
    entries : iterable of (sequence of int, value)
        One entry per lattice point. Values may be floats, ``Fraction`` or
        ``"a/b"`` strings.

    Raises
    ------
    MissingEntry
        If a lattice point has no entry.
    NonMonotone
        If the table is not coherent.
    OutOfRange
        If a value is outside ``[0, 1]``.
    """
    n = _check_n(n)
    if L != len(n):
        raise ValidationError(f"L={L} but n has {len(n)} entries")
    shape = tuple(k + 1 for k in n)
    table = np.full(shape, np.nan)
    for l, value in entries:
        l = tuple(int(x) for x in l)
        if len(l) != L or any(not 0 <= x <= k for x, k in zip(l, n)):
            raise BadIndex(f"lattice point {l} outside [0..n] for n={n}")
        table[l] = _parse_value(value)
    missing = np.argwhere(np.isnan(table))
    if len(missing):
        raise MissingEntry(f"no value for lattice point {tuple(int(x) for x in missing[0])} ({len(missing)} missing)")
    return _validate(n, table, "table")


def signature_k_out_of_n(k: int, n: Sequence[int]) -> SystemStructure:
    """``phi(l) = 1`` iff at least ``k`` components work in total."""
    n = _check_n(n)
    if not 1 <= k <= sum(n):
        raise InvalidK(f"k must lie in [1, {sum(n)}], got {k}")
    grids = np.indices(tuple(m + 1 for m in n)).sum(axis=0)
    return _validate(n, (grids >= k).astype(float), "k_out_of_n")


def _series_parallel_table(n) -> np.ndarray:
    idx = np.indices(tuple(m + 1 for m in n))
    return np.all(idx >= 1, axis=0).astype(float)


def signature_series_parallel(n: Sequence[int]) -> SystemStructure:
    """Series connection of ``L`` parallel subsystems of sizes ``n``."""
    n = _check_n(n)
    return _validate(n, _series_parallel_table(n), "series_parallel")


def signature_from_paths(
    L: int,
    n: Sequence[int],
    type_of_component: Mapping,
    minimal_path_sets: Iterable[Iterable],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SystemStructure:
    """Exact signature of a system given by its minimal path sets.

    Every one of the ``2**N`` component states is enumerated; for each count
    vector the number of working states is divided by the number of states
    with those counts using exact integer arithmetic.

    Parameters
    ----------
    L : int
        Number of types.
    n : sequence of int
        Components per type; must agree with ``type_of_component``.
    type_of_component : mapping
        Component label to type index in ``1..L``.
    minimal_path_sets : iterable of iterables
        Sets of component labels.
    cap : int
        Maximum number of components to enumerate.
    """
    n = _check_n(n)
    if L != len(n):
        raise ValidationError(f"L={L} but n has {len(n)} entries")
    labels = sorted(type_of_component, key=lambda x: (str(type(x)), x))
    if len(labels) > cap:
        raise TooLarge(f"{len(labels)} components exceed the enumeration cap of {cap}")
    position = {lab: k for k, lab in enumerate(labels)}
    counts = [0] * L
    type_masks = [0] * L
    for lab in labels:
        t = type_of_component[lab]
        if not (isinstance(t, (int, np.integer)) and 1 <= t <= L):
            raise BadIndex(f"component {lab!r} has type {t!r}; types are 1..{L}")
        counts[t - 1] += 1
        type_masks[t - 1] |= 1 << position[lab]
    if tuple(counts) != n:
        raise BadIndex(f"type assignment gives counts {tuple(counts)} but n={n}")

    path_masks = []
    for path in minimal_path_sets:
        path = list(path)
        if not path:
            raise BadIndex("empty path set")
        mask = 0
        for lab in path:
            if lab not in position:
                raise BadIndex(f"path refers to unknown component {lab!r}")
            mask |= 1 << position[lab]
        path_masks.append(mask)
    if not path_masks:
        raise BadIndex("at least one path set is required")

    N = len(labels)
    states = np.arange(1 << N, dtype=np.int64)
    up = np.zeros(states.shape, dtype=bool)
    for pm in path_masks:
        up |= (states & pm) == pm
    shape = tuple(k + 1 for k in n)
    per_type = [_popcount(states & tm) for tm in type_masks]
    flat = np.ravel_multi_index(per_type, shape)
    working = np.bincount(flat, weights=up, minlength=int(np.prod(shape)))
    table = np.empty(shape)
    for l in itertools.product(*(range(k + 1) for k in n)):
        total = math.prod(math.comb(nk, lk) for nk, lk in zip(n, l))
        ups = int(round(working[np.ravel_multi_index(l, shape)]))
        table[l] = float(Fraction(ups, total))
    return _validate(n, table, "paths")


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += x & 1
        x >>= 1
    return count


# -- serialization -----------------------------------------------------------


def _fmt_value(v: float) -> object:
    frac = Fraction(v).limit_denominator(10_000)
    if float(frac) == v and frac.denominator != 1:
        return f"{frac.numerator}/{frac.denominator}"
    return v


def structure_to_json(s: SystemStructure) -> dict:
    return {
        "L": s.L,
        "n": list(s.n),
        "phi": [{"l": list(l), "value": _fmt_value(s.phi(l))} for l in s.lattice()],
    }


def structure_from_json(obj: dict, path: str = "system") -> SystemStructure:
    """Parse the ``{"L", "n", "phi": [{"l", "value"}, ...]}`` form."""
    try:
        L, n, phi = obj["L"], obj["n"], obj["phi"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"missing field {exc}", path) from None
    try:
        return signature_from_table(L, n, ((e["l"], e["value"]) for e in phi))
    except ValidationError as exc:
        raise type(exc)(str(exc), path) from None
    except (KeyError, TypeError):
        raise ValidationError("each phi entry needs 'l' and 'value'", f"{path}.phi") from None


def structure_to_csv(s: SystemStructure) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow([f"l_{k + 1}" for k in range(s.L)] + ["value"])
    for l in s.lattice():
        w.writerow(list(l) + [_fmt_value(s.phi(l))])
    return buf.getvalue()


def structure_from_csv(text: str) -> SystemStructure:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValidationError("empty signature CSV")
    header, body = rows[0], [r for r in rows[1:] if r]
    L = len(header) - 1
    if L < 1 or header[-1].strip() != "value":
        raise ValidationError("CSV header must be l_1,...,l_L,value")
    entries = []
    for r in body:
        if len(r) != L + 1:
            raise ValidationError(f"row {r} has {len(r)} columns, expected {L + 1}")
        entries.append(([int(x) for x in r[:L]], r[L]))
    n = [max(e[0][k] for e in entries) for k in range(L)]
    return signature_from_table(L, n, entries)


def structure_dumps(s: SystemStructure) -> str:
    return json.dumps(structure_to_json(s))
