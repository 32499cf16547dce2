"""Slow, independent reference implementations.

Nothing here imports the package.  Each function is the most literal
brute-force reading of its definition, so agreement with the fast code is
meaningful.
"""

from __future__ import annotations

from itertools import product


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    """By enumerating the squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def jacobi(a: int, n: int) -> int:
    """Product of Legendre symbols over the factorization of n."""
    out = 1
    for p, e in factor(n).items():
        out *= legendre(a, p) ** e
    return out


def square_roots(c: int, n: int) -> set[int]:
    return {r for r in range(n) if (r * r - c) % n == 0}


def gram(c: tuple[int, ...]) -> list[list[float]]:
    c1, c2, c3, c23, c13, c12 = c
    return [[c1, c12 / 2, c13 / 2], [c12 / 2, c2, c23 / 2], [c13 / 2, c23 / 2, c3]]


def det(c: tuple[int, ...]) -> int:
    g = gram(c)
    d = (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    )
    return round(d)


def value(c: tuple[int, ...], v: tuple[int, int, int]) -> int:
    c1, c2, c3, c23, c13, c12 = c
    x, y, z = v
    return c1 * x * x + c2 * y * y + c3 * z * z + c23 * y * z + c13 * x * z + c12 * x * y


def represented(c: tuple[int, ...], n: int, box: int) -> set[int]:
    """Values <= n taken on the cube |x|,|y|,|z| <= box."""
    rng = range(-box, box + 1)
    return {k for v in product(rng, rng, rng) if (k := value(c, v)) <= n}


def theta(c: tuple[int, ...], n: int, box: int) -> list[int]:
    """Representation counts r(k) for k <= n on the cube (a class invariant if box is big enough)."""
    out = [0] * (n + 1)
    rng = range(-box, box + 1)
    for v in product(rng, rng, rng):
        k = value(c, v)
        if k <= n:
            out[k] += 1
    return out


def excluded(s: int, modulus: int, residues: set[int], m: int) -> bool:
    while m % s == 0:
        m //= s
    return m % modulus in residues


def smallest_prime(r: int, modulus: int, ok) -> int:
    q = r
    while not (is_prime(q) and ok(q)):
        q += modulus
    return q


def witness(m: int, D: int, r: int, modulus: int, separation: tuple[int, int] | None):
    """Smallest-convention witness for a rule with a prime a and no extra conditions.

    a: smallest prime = r (mod modulus), not dividing Dm, with (-a/p) = 1 for
    every odd p | m.  h = D m t for the smallest t >= 1 with a | h^2 + D m
    (else h = m s).  A: smallest A >= 0 with A^2 + a = 0 (mod m) and, given a
    separation (E, M), (A^2 + a)/m = E (mod M).
    """
    odd = [p for p in factor(m) if p != 2]
    a = smallest_prime(
        r, modulus, lambda q: (D * m) % q != 0 and all(legendre(-q, p) == 1 for p in odd)
    )
    h = next((D * m * t for t in range(1, a + 1) if (D * D * m * m * t * t + D * m) % a == 0), None)
    if h is None:
        h = next(m * s for s in range(1, a + 1) if (m * m * s * s + D * m) % a == 0)
    b = (h * h + D * m) // a
    A = 0
    while True:
        if (A * A + a) % m == 0:
            if separation is None:
                break
            e, q = separation
            if ((A * A + a) // m - e) % q == 0:
                break
        A += 1
    return A, 0, a, h, b
