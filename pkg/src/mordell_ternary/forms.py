"""Positive definite, classically integral ternary quadratic forms.

A form is stored by its six polynomial coefficients in the fixed order
``(c1, c2, c3, c23, c13, c12)`` for ``x^2, y^2, z^2, yz, xz, xy``.  The Gram
matrix is ``[[c1, c12/2, c13/2], [c12/2, c2, c23/2], [c13/2, c23/2, c3]]``,
which is integral exactly when the cross coefficients are even.

Reduction returns a canonical representative of the class: its diagonal is
the list of successive minima and among all such bases it minimises
``(|c23|, |c13|, |c12|)``, preferring non-negative cross terms on ties.  Two
forms are therefore equivalent iff their reductions coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor, gcd, isqrt
from typing import Sequence

import numpy as np

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]
Vector = tuple[int, int, int]

IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class FormError(ValueError):
    pass


class FormParseError(FormError):
    pass


class IntegralityError(FormError):
    pass


class DefinitenessError(FormError):
    pass


# --- small exact 3x3 matrix helpers -----------------------------------------


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))  # type: ignore[return-value]


def det3(a: Sequence[Sequence[int]]) -> int:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def adjugate(a: Sequence[Sequence[int]]) -> Matrix:
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    return transpose(cof)


def unimodular_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    d = det3(a)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not unimodular")
    adj = adjugate(a)
    return tuple(tuple(d * x for x in row) for row in adj)  # type: ignore[return-value]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))  # type: ignore[return-value]


def congruent(gram: Sequence[Sequence[int]], u: Sequence[Sequence[int]]) -> Matrix:
    """``u^T * gram * u``."""
    return mat_mul(transpose(u), mat_mul(gram, u))


# --- the form type ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TernaryForm:
    c1: int
    c2: int
    c3: int
    c23: int = 0
    c13: int = 0
    c12: int = 0

    def __post_init__(self) -> None:
        if self.c23 % 2 or self.c13 % 2 or self.c12 % 2:
            raise IntegralityError(f"odd cross coefficient in {self.coefficients}")
        g = self.gram()
        m1 = g[0][0]
        m2 = g[0][0] * g[1][1] - g[0][1] ** 2
        if m1 <= 0 or m2 <= 0 or det3(g) <= 0:
            raise DefinitenessError(f"{self.coefficients} is not positive definite")

    @classmethod
    def from_gram(cls, g: Sequence[Sequence[int]]) -> "TernaryForm":
        if any(g[i][j] != g[j][i] for i in range(3) for j in range(3)):
            raise FormError("Gram matrix is not symmetric")
        return cls(g[0][0], g[1][1], g[2][2], 2 * g[1][2], 2 * g[0][2], 2 * g[0][1])

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.c1, self.c2, self.c3, self.c23, self.c13, self.c12)

    def gram(self) -> Matrix:
        return (
            (self.c1, self.c12 // 2, self.c13 // 2),
            (self.c12 // 2, self.c2, self.c23 // 2),
            (self.c13 // 2, self.c23 // 2, self.c3),
        )

    def __call__(self, x: int, y: int, z: int) -> int:
        return (
            self.c1 * x * x
            + self.c2 * y * y
            + self.c3 * z * z
            + self.c23 * y * z
            + self.c13 * x * z
            + self.c12 * x * y
        )

    def __str__(self) -> str:
        return format_form(self)

    def pretty(self) -> str:
        terms = []
        for coef, mono in zip(self.coefficients, ("x^2", "y^2", "z^2", "yz", "xz", "xy")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            body = mono if abs(coef) == 1 else f"{abs(coef)}{mono}"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def parse_form(text: str) -> TernaryForm:
    """Parse the wire format ``"c1,c2,c3,c23,c13,c12"``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise FormParseError(f"expected six comma-separated integers, got {text!r}")
    try:
        coeffs = [int(p) for p in parts]
    except ValueError as exc:
        raise FormParseError(f"non-integer coefficient in {text!r}") from exc
    return TernaryForm(*coeffs)


def format_form(f: TernaryForm) -> str:
    return ",".join(str(c) for c in f.coefficients)


def evaluate(f: TernaryForm, v: Sequence[int]) -> int:
    return f(*v)


def determinant(f: TernaryForm) -> int:
    return det3(f.gram())


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Unimodular ``U`` with ``U^T Gram(source) U = Gram(target)``.

    A vector ``w`` satisfies ``target(w) == source(U w)``.
    """

    matrix: Matrix

    def __post_init__(self) -> None:
        if det3(self.matrix) not in (1, -1):
            raise ValueError("equivalence transform must be unimodular")

    def certifies(self, source: TernaryForm, target: TernaryForm) -> bool:
        return congruent(source.gram(), self.matrix) == target.gram()

    def inverse(self) -> "EquivalenceCertificate":
        return EquivalenceCertificate(unimodular_inverse(self.matrix))

    def then(self, other: "EquivalenceCertificate") -> "EquivalenceCertificate":
        """Compose ``f -> g`` (self) with ``g -> h`` (other) into ``f -> h``."""
        return EquivalenceCertificate(mat_mul(self.matrix, other.matrix))

    def apply(self, v: Sequence[int]) -> Vector:
        return mat_vec(self.matrix, v)

    def entries(self) -> list[int]:
        return [x for row in self.matrix for x in row]


# --- reduction ------------------------------------------------------------------


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def _lll(gram: Matrix, delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """LLL on a Gram matrix; returns basis vectors (rows) in original coordinates."""
    basis = [list(r) for r in IDENTITY]

    def ip(u: list[int], v: list[int]) -> int:
        return sum(u[i] * gram[i][j] * v[j] for i in range(3) for j in range(3))

    def gso() -> tuple[list[list[Fraction]], list[Fraction]]:
        mu = [[Fraction(0)] * 3 for _ in range(3)]
        norms: list[Fraction] = []
        for i in range(3):
            for j in range(i):
                s = Fraction(ip(basis[i], basis[j]))
                for k in range(j):
                    s -= mu[j][k] * mu[i][k] * norms[k]
                mu[i][j] = s / norms[j]
            n = Fraction(ip(basis[i], basis[i]))
            for k in range(i):
                n -= mu[i][k] ** 2 * norms[k]
            norms.append(n)
        return mu, norms

    k = 1
    while k < 3:
        mu, norms = gso()
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            k = max(k - 1, 1)
    return basis


def short_vectors(gram: Matrix, bound: int) -> list[tuple[int, Vector]]:
    """All nonzero ``(value, v)`` with ``v^T gram v <= bound``, ascending by value."""
    d = det3(gram)
    adj = adjugate(gram)
    radii = [isqrt(bound * adj[i][i] // d) for i in range(3)]
    axes = [np.arange(-r, r + 1, dtype=np.int64) for r in radii]
    x, y, z = np.meshgrid(*axes, indexing="ij")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    g = gram
    vals = (
        g[0][0] * x * x
        + g[1][1] * y * y
        + g[2][2] * z * z
        + 2 * (g[0][1] * x * y + g[0][2] * x * z + g[1][2] * y * z)
    )
    keep = (vals <= bound) & (vals > 0)
    order = np.lexsort((z[keep], y[keep], x[keep], vals[keep]))
    vk, xk, yk, zk = vals[keep][order], x[keep][order], y[keep][order], z[keep][order]
    return [(int(v), (int(a), int(b), int(c))) for v, a, b, c in zip(vk, xk, yk, zk)]


def _cross(u: Vector, v: Vector) -> Vector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _bilinear(g: Matrix, u: Vector, v: Vector) -> int:
    return sum(u[i] * g[i][j] * v[j] for i in range(3) for j in range(3))


def _cross_key(c23: int, c13: int, c12: int) -> tuple[int, ...]:
    return (abs(c23), abs(c13), abs(c12), -c23, -c13, -c12)


def _canonical_basis(gram: Matrix) -> Matrix:
    """Columns of the returned matrix span the canonical reduced basis."""
    bound = max(gram[i][i] for i in range(3))
    vecs = short_vectors(gram, bound)
    lam1 = vecs[0][0]
    firsts = [v for val, v in vecs if val == lam1]

    pairs: list[tuple[Vector, Vector]] = []
    c2 = None
    for val, v2 in vecs:
        if c2 is not None and val > c2:
            break
        for v1 in firsts:
            cr = _cross(v1, v2)
            if gcd(gcd(cr[0], cr[1]), cr[2]) == 1:
                pairs.append((v1, v2))
                c2 = val
    triples: list[tuple[Vector, Vector, Vector]] = []
    c3 = None
    for val, v3 in vecs:
        if c3 is not None and val > c3:
            break
        for v1, v2 in pairs:
            if abs(det3((v1, v2, v3))) == 1:
                triples.append((v1, v2, v3))
                c3 = val
    if not triples:
        raise RuntimeError("no reduced basis found among short vectors")

    def key(t: tuple[Vector, Vector, Vector]) -> tuple[int, ...]:
        v1, v2, v3 = t
        return _cross_key(
            2 * _bilinear(gram, v2, v3),
            2 * _bilinear(gram, v1, v3),
            2 * _bilinear(gram, v1, v2),
        ) + tuple(-c for c in (*v1, *v2, *v3))  # ties: favour the identity

    best = min(triples, key=key)
    return transpose(best)


def _reduce_gram(gram: Matrix) -> Matrix:
    """Unimodular U with congruent(gram, U) canonical."""
    lll_rows = _lll(gram)
    u1 = transpose(lll_rows)
    g1 = congruent(gram, u1)
    w = _canonical_basis(g1)
    return mat_mul(u1, w)


@lru_cache(maxsize=4096)
def _reduce_cached(f: TernaryForm) -> tuple[TernaryForm, Matrix]:
    u = _reduce_gram(f.gram())
    return TernaryForm.from_gram(congruent(f.gram(), u)), u


def reduce(f: TernaryForm) -> tuple[TernaryForm, EquivalenceCertificate]:
    """Canonical reduced form ``g`` and a certificate for ``f -> g``."""
    g, u = _reduce_cached(f)
    return g, EquivalenceCertificate(u)


def is_reduced(f: TernaryForm) -> bool:
    """Coefficient bounds met by every output of :func:`reduce`."""
    return (
        0 < f.c1 <= f.c2 <= f.c3
        and abs(f.c12) <= f.c1
        and abs(f.c13) <= f.c1
        and abs(f.c23) <= f.c2
    )


def is_equivalent(f: TernaryForm, g: TernaryForm) -> EquivalenceCertificate | None:
    rf, uf = reduce(f)
    rg, ug = reduce(g)
    if rf != rg:
        return None
    cert = uf.then(ug.inverse())
    assert cert.certifies(f, g)
    return cert


def content(f: TernaryForm) -> int:
    """gcd of the polynomial coefficients; invariant under equivalence."""
    out = 0
    for c in f.coefficients:
        out = gcd(out, c)
    return out


@lru_cache(maxsize=None)
def enumerate_classes(det: int, primitive: bool = True) -> tuple[TernaryForm, ...]:
    """One canonical representative per class of determinant ``det``.

    With ``primitive`` (the default) forms whose coefficients share a common
    factor, such as ``2x^2 + 2y^2 + 2z^2`` in determinant 8, are left out.
    """
    if not 1 <= det <= 50:
        raise ValueError("class enumeration supports determinants 1..50")
    seen = set()
    # Reduced diagonals satisfy c1*c2*c3 <= 2*det.
    for c1 in range(1, 2 * det + 1):
        for c2 in range(c1, 2 * det // c1 + 1):
            for c3 in range(c2, 2 * det // (c1 * c2) + 1):
                for g12, g13, g23 in product(
                    range(-(c1 // 2), c1 // 2 + 1),
                    range(-(c1 // 2), c1 // 2 + 1),
                    range(-(c2 // 2), c2 // 2 + 1),
                ):
                    gram = ((c1, g12, g13), (g12, c2, g23), (g13, g23, c3))
                    if det3(gram) != det or c1 * c2 - g12 * g12 <= 0:
                        continue
                    g = reduce(TernaryForm.from_gram(gram))[0]
                    if not primitive or content(g) == 1:
                        seen.add(g)
    return tuple(sorted(seen, key=lambda f: f.coefficients))
