"""Which integers a form represents, and the theorem registry.

The brute-force engines here are the oracles every constructive claim is
checked against.  ``represented_set`` marks all values up to ``N`` in one
vectorised sweep over the lattice box cut out by the Gram matrix.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .forms import TernaryForm, adjugate, det3, determinant

SWEEP_CAP = 10**6


@dataclass(frozen=True)
class ExcludedSpec:
    """The integers ``s**k * (M*l + r)`` for ``r`` in ``residues``."""

    scale: int
    modulus: int
    residues: frozenset[int]

    def __post_init__(self) -> None:
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise ValueError("residues must be reduced modulo the modulus")

    def strip(self, m: int) -> int:
        while m % self.scale == 0:
            m //= self.scale
        return m

    def excludes(self, m: int) -> bool:
        return is_excluded(self, m)


def is_excluded(spec: ExcludedSpec, m: int) -> bool:
    if m < 1:
        raise ValueError("only positive integers are classified")
    return spec.strip(m) % spec.modulus in spec.residues


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    target: TernaryForm
    det: int
    spec: ExcludedSpec
    separation: tuple[int, int] | None
    # factors removed before the construction runs, with the vector multiplier
    strip_scales: tuple[int, ...]
    note: str = ""

    @property
    def has_case_table(self) -> bool:
        return self.id not in ("3sq", "aux-d3q2")


def _entry(id, coeffs, spec, sep, strips, note=""):
    target = TernaryForm(*coeffs)
    s, modulus, residues = spec
    return TheoremEntry(
        id=id,
        target=target,
        det=determinant(target),
        spec=ExcludedSpec(s, modulus, frozenset(residues)),
        separation=sep,
        strip_scales=strips,
        note=note,
    )


_REGISTRY = (
    _entry("1a", (1, 1, 2, 0, 0, 0), (4, 16, {14}), None, (4,)),
    _entry("1b", (1, 1, 3, 0, 0, 0), (9, 9, {6}), (8, 5), (4, 9)),
    _entry("1c", (1, 2, 2, 0, 0, 0), (4, 8, {7}), (8, 3), (4,)),
    _entry("1d", (1, 2, 3, 0, 0, 0), (4, 16, {10}), (9, 3), (4,)),
    _entry("1e", (1, 2, 4, 0, 0, 0), (4, 16, {14}), (16, 6), (4,)),
    _entry("1f", (1, 2, 5, 0, 0, 0), (25, 25, {10, 15}), (16, 6), (4, 25)),
    _entry("2a", (1, 1, 5, 0, 0, 0), (4, 8, {3}), (25, 5), (4,)),
    _entry("2b", (1, 2, 3, 2, 0, 0), (25, 25, {5, 20}), (8, 3), (4, 25)),
    _entry("3", (1, 1, 6, 0, 0, 0), (9, 9, {3}), (16, 10), (4, 9)),
    _entry("3sq", (1, 1, 1, 0, 0, 0), (4, 8, {7}), None, (4,), "three squares"),
    _entry("aux-d3q2", (1, 2, 2, 2, 0, 0), (4, 8, {5}), None, (4,), "lemma only"),
)


def registry() -> tuple[TheoremEntry, ...]:
    return _REGISTRY


def get_entry(entry_id: str) -> TheoremEntry:
    for e in _REGISTRY:
        if e.id == entry_id:
            return e
    raise KeyError(f"unknown entry {entry_id!r}; known: {[e.id for e in _REGISTRY]}")


# --- brute force ------------------------------------------------------------------


def coordinate_bounds(f: TernaryForm, n: int) -> tuple[int, int, int]:
    """Per-coordinate bounds of ``{v : f(v) <= n}``."""
    g = f.gram()
    d, adj = det3(g), adjugate(g)
    return tuple(isqrt(n * adj[i][i] // d) for i in range(3))  # type: ignore[return-value]


def _order_key(t: int) -> tuple[int, bool]:
    return (abs(t), t < 0)


def _signed_range(r: int) -> list[int]:
    return sorted(range(-r, r + 1), key=_order_key)


def find_representation(f: TernaryForm, m: int) -> tuple[int, int, int] | None:
    """A vector ``v`` with ``f(v) == m``, or ``None``.

    Coordinates are tried in the order 0, 1, -1, 2, -2, ... (x first), so the
    answer is the first solution in that order.  Cost grows like ``m``, which
    is fine up to roughly 10**8.
    """
    if m < 0:
        return None
    if m == 0:
        return (0, 0, 0)
    bx, by, _ = coordinate_bounds(f, m)
    c1, c2, c3, c23, c13, c12 = f.coefficients
    ys = np.array(_signed_range(by), dtype=np.int64)
    for x in _signed_range(bx):
        lin = c13 * x + c23 * ys
        const = c1 * x * x + c2 * ys * ys + c12 * x * ys - m
        disc = lin * lin - 4 * c3 * const
        ok = disc >= 0
        if not ok.any():
            continue
        root = np.zeros_like(disc)
        root[ok] = np.rint(np.sqrt(disc[ok].astype(np.float64))).astype(np.int64)
        hits = np.nonzero(ok & (root * root == disc))[0]
        for i in hits:  # ys is already in preference order
            y, b, r = int(ys[i]), int(lin[i]), int(root[i])
            zs = [(-b + sgn * r) for sgn in (1, -1) if (-b + sgn * r) % (2 * c3) == 0]
            if zs:
                z = min((t // (2 * c3) for t in zs), key=_order_key)
                return (x, y, z)
    return None


def _sweep_chunk(f: TernaryForm, n: int, xs: list[int]) -> np.ndarray:
    table = np.zeros(n + 1, dtype=bool)
    _, by, bz = coordinate_bounds(f, n)
    c1, c2, c3, c23, c13, c12 = f.coefficients
    y = np.arange(-by, by + 1, dtype=np.int64)[:, None]
    z = np.arange(-bz, bz + 1, dtype=np.int64)[None, :]
    base = c2 * y * y + c3 * z * z + c23 * y * z
    for x in xs:
        vals = base + (c1 * x * x + c12 * x * y + c13 * x * z)
        table[vals[vals <= n]] = True
    return table


def represented_set(f: TernaryForm, n: int, jobs: int = 1) -> np.ndarray:
    """Boolean table ``t`` of length ``n + 1`` with ``t[k]`` iff ``f`` represents k."""
    if not 0 <= n <= SWEEP_CAP * 25:
        raise ValueError(f"sweep bound {n} out of range")
    bx = coordinate_bounds(f, n)[0]
    xs = list(range(0, bx + 1))  # f(-v) == f(v), so x >= 0 suffices
    if jobs <= 1 or len(xs) < 2 * jobs:
        return _sweep_chunk(f, n, xs)
    chunks = [xs[i::jobs] for i in range(jobs)]
    table = np.zeros(n + 1, dtype=bool)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_sweep_chunk, [f] * jobs, [n] * jobs, chunks):
            table |= part
    return table


@lru_cache(maxsize=64)
def _cached_table(f: TernaryForm, n: int) -> np.ndarray:
    t = represented_set(f, n)
    t.flags.writeable = False
    return t


def membership(f: TernaryForm, n: int) -> np.ndarray:
    """Read-only cached ``represented_set``; tables are shared between checks."""
    return _cached_table(f, n)


def represents(f: TernaryForm, m: int) -> bool:
    return find_representation(f, m) is not None


# --- run-length text format ----------------------------------------------------


def encode_membership(table: np.ndarray) -> str:
    """``"<length>:<first bit>:<run>,<run>,..."`` with alternating runs."""
    bits = np.asarray(table, dtype=bool)
    if bits.size == 0:
        return "0:0:"
    edges = np.flatnonzero(bits[1:] != bits[:-1]) + 1
    bounds = np.concatenate(([0], edges, [bits.size]))
    runs = np.diff(bounds)
    return f"{bits.size}:{int(bits[0])}:" + ",".join(str(int(r)) for r in runs)


def decode_membership(text: str) -> np.ndarray:
    size, first, body = text.split(":")
    out = np.zeros(int(size), dtype=bool)
    bit, pos = bool(int(first)), 0
    for run in filter(None, body.split(",")):
        n = int(run)
        out[pos : pos + n] = bit
        pos += n
        bit = not bit
    if pos != int(size):
        raise ValueError("run lengths do not add up to the declared size")
    return out
