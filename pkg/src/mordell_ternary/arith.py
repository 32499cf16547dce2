"""Exact integer kernel: symbols, primality, factoring, modular square roots.

Everything here works on Python ints and is deterministic.  Sizes are desk
scale: factoring is trial division capped at 10**12 and prime searches stop
at 10**7.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

Factorization = tuple[tuple[int, int], ...]

FACTOR_CAP = 10**12
PRIME_SEARCH_CAP = 10**7
_BRUTE_FORCE_LIMIT = 4096

# Deterministic for every n < 3.3 * 10**24, which covers 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class SearchBoundExceeded(RuntimeError):
    """A bounded search ran past its ceiling without finding a candidate."""


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` as ascending ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n > FACTOR_CAP:
        raise ValueError(f"{n} exceeds the trial-division cap {FACTOR_CAP}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def odd_prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(abs(n)) if p != 2) if n else ()


def sqrt_mod_prime(c: int, p: int) -> int | None:
    """Smallest r in [0, p) with r*r = c (mod p), or None if c is a non-residue.

    Tonelli-Shanks.
    """
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    c %= p
    if c == 0:
        return 0
    if jacobi(c, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, cz, t, r = s, pow(z, q, p), pow(c, q, p), pow(c, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(cz, 1 << (m - i - 1), p)
        m, cz = i, b * b % p
        t, r = t * cz % p, r * b % p
    return min(r, p - r)


def _unit_roots_prime_power(c: int, p: int, e: int) -> list[int]:
    """Square roots of a unit c modulo p**e."""
    q = p**e
    if p == 2:
        if e == 1:
            return [1]
        if e == 2:
            return [1, 3] if c % 4 == 1 else []
        if c % 8 != 1:
            return []
        r = 1
        for k in range(3, e):
            if (r * r - c) % (1 << (k + 1)):
                r += 1 << (k - 1)
        half = q // 2
        return sorted({r % q, -r % q, (r + half) % q, (-r + half) % q})
    r = sqrt_mod_prime(c, p)
    if r is None:
        return []
    pk = p
    while pk < q:
        pk = min(pk * pk, q)
        # Newton step: r <- r - (r^2 - c) / (2r)
        r = (r - (r * r - c) * pow(2 * r, -1, pk)) % pk
    return sorted({r, q - r})


@lru_cache(maxsize=512)
def _square_table(q: int) -> dict[int, tuple[int, ...]]:
    table: dict[int, list[int]] = {}
    for r in range(q):
        table.setdefault(r * r % q, []).append(r)
    return {c: tuple(rs) for c, rs in table.items()}


def _roots_prime_power(c: int, p: int, e: int) -> list[int]:
    q = p**e
    c %= q
    if q < _BRUTE_FORCE_LIMIT:
        return list(_square_table(q).get(c, ()))
    if c == 0:
        return list(range(0, q, p ** ((e + 1) // 2)))
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    if v % 2:
        return []
    w = v // 2
    inner = e - v
    base = _unit_roots_prime_power(c, p, inner)
    pw, pinner = p**w, p**inner
    return sorted({pw * (s + k * pinner) % q for s in base for k in range(pw)})


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine x = r_i (mod n_i) for pairwise coprime n_i."""
    x, n = 0, 1
    for r, m in zip(residues, moduli):
        t = ((r - x) * pow(n, -1, m)) % m
        x += n * t
        n *= m
    return x % n, n


def solve_square_mod(c: int, n: int) -> frozenset[int]:
    """All r in [0, n) with r*r = c (mod n)."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return frozenset({0})
    parts = []
    moduli = []
    for p, e in factorize(n):
        roots = _roots_prime_power(c, p, e)
        if not roots:
            return frozenset()
        parts.append(roots)
        moduli.append(p**e)
    return frozenset(crt(combo, moduli)[0] for combo in product(*parts))


def solve_quadratic_mod(coef: int, const: int, n: int) -> frozenset[int]:
    """All t in [0, n) with coef*t*t + const = 0 (mod n)."""
    parts = []
    moduli = []
    for p, e in factorize(n):
        q = p**e
        if coef % p:
            roots = _roots_prime_power(-const * pow(coef, -1, q), p, e)
        elif q <= 10**6:
            roots = [t for t in range(q) if (coef * t * t + const) % q == 0]
        else:
            raise ValueError(f"degenerate prime power {p}^{e} too large to scan")
        if not roots:
            return frozenset()
        parts.append(roots)
        moduli.append(q)
    return frozenset(crt(combo, moduli)[0] for combo in product(*parts))


def find_prime_in_ap(
    r: int,
    modulus: int,
    conditions: Iterable[tuple[int, int]] = (),
    avoid: Iterable[int] = (),
    premultiplier: int = 1,
    limit: int = PRIME_SEARCH_CAP,
) -> int:
    """Smallest prime q = r (mod modulus) meeting the symbol conditions.

    Each condition ``(p, sign)`` demands ``jacobi(-premultiplier * q, p) == sign``
    for an odd prime p; primes in ``avoid`` are skipped.
    """
    if gcd(r, modulus) != 1:
        raise ValueError(f"residue {r} is not coprime to {modulus}")
    conditions = tuple(conditions)
    avoid = frozenset(avoid)
    q = r % modulus
    while q <= limit:
        if (
            q not in avoid
            and is_prime(q)
            and all(jacobi(-premultiplier * q, p) == s for p, s in conditions)
        ):
            return q
        q += modulus
    raise SearchBoundExceeded(
        f"no prime = {r} (mod {modulus}) below {limit} meets {list(conditions)}"
    )


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
