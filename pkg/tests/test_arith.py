from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from mordell_ternary.arith import (
    SearchBoundExceeded,
    crt,
    factorize,
    find_prime_in_ap,
    is_prime,
    is_square,
    jacobi,
    odd_prime_divisors,
    solve_quadratic_mod,
    solve_square_mod,
    sqrt_mod_prime,
)

odd_moduli = st.integers(min_value=0, max_value=249).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("a, n, expected", [(1, 15, 1), (2, 7, 1), (-5, 3, 1), (0, 1, 1), (3, 9, 0)])
def test_jacobi_examples(a, n, expected):
    assert jacobi(a, n) == expected


@pytest.mark.parametrize("n", [0, -3, 8])
def test_jacobi_rejects_even_or_nonpositive(n):
    with pytest.raises(ValueError):
        jacobi(1, n)


def test_jacobi_matches_squares_for_primes_below_1000():
    for p in range(3, 1000, 2):
        if oracles.is_prime(p):
            squares = {x * x % p for x in range(1, p)}
            for a in range(p):
                want = 0 if a == 0 else (1 if a in squares else -1)
                assert jacobi(a, p) == want, (a, p)


@given(st.integers(-500, 500), st.integers(-500, 500), odd_moduli)
def test_jacobi_multiplicative_in_top(a, b, n):
    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


@given(st.integers(-500, 500), odd_moduli, odd_moduli)
def test_jacobi_multiplicative_in_bottom(a, m, n):
    assert jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n)


@pytest.mark.parametrize("n, expected", [(0, False), (1, False), (2, True), (561, False), (1000003, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if oracles.is_prime(n)]


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321])
def test_is_prime_strong_pseudoprimes(n):
    # composites that fool Miller-Rabin for the first few prime bases
    assert not is_prime(n)


def test_is_prime_large_prime():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))


@pytest.mark.parametrize(
    "n, expected", [(1, ()), (360, ((2, 3), (3, 2), (5, 1))), (8103, ((3, 1), (37, 1), (73, 1)))]
)
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


@given(st.integers(1, 10**7))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert prod(p**e for p, e in f) == n
    assert all(is_prime(p) and e >= 1 for p, e in f)
    assert [p for p, _ in f] == sorted({p for p, _ in f})


def test_factorize_rejects_zero_and_oversize():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(10**12 + 1)


def test_odd_prime_divisors():
    assert odd_prime_divisors(360) == (3, 5)
    assert odd_prime_divisors(1) == ()
    assert odd_prime_divisors(64) == ()


@pytest.mark.parametrize("c, p, expected", [(2, 7, 3), (0, 13, 0), (3, 7, None), (-1, 13, 5)])
def test_sqrt_mod_prime_examples(c, p, expected):
    assert sqrt_mod_prime(c, p) == expected


@pytest.mark.parametrize("p", [2, 9, 15])
def test_sqrt_mod_prime_rejects(p):
    with pytest.raises(ValueError):
        sqrt_mod_prime(1, p)


def test_sqrt_mod_prime_is_smallest_root():
    for p in (3, 5, 7, 13, 17, 41, 97, 101, 193, 257, 65537):
        for c in range(min(p, 300)):
            roots = oracles.square_roots(c, p)
            r = sqrt_mod_prime(c, p)
            assert r == (min(roots) if roots else None), (c, p)


@pytest.mark.parametrize(
    "c, n, expected", [(1, 8, {1, 3, 5, 7}), (4, 12, {2, 4, 8, 10}), (24, 73, {30, 43}), (5, 1, {0})]
)
def test_solve_square_mod_examples(c, n, expected):
    assert solve_square_mod(c, n) == expected


def test_solve_square_mod_matches_brute_force_sample():
    # the full n <= 2000 sweep lives in the acceptance suite
    for n in range(1, 200):
        for c in range(n):
            assert solve_square_mod(c, n) == oracles.square_roots(c, n), (c, n)


@pytest.mark.parametrize("n", [2**14, 3**9, 5**6, 7**5, 2**12 * 3**4, 4096 * 625])
def test_solve_square_mod_large_prime_powers(n):
    # exercises the Hensel path; roots are checked directly since brute force is slow
    for c in (0, 1, 4, 9, 17, 25, 49, 2 * 81, 3 * 49, 144 * 7):
        roots = solve_square_mod(c, n)
        assert all(r * r % n == c % n for r in roots)
        assert set(r for r in roots) == {r for r in roots if 0 <= r < n}
    for r in (1, 2, 3, 10, 99, 1000, 12345):
        c = r * r % n
        assert r % n in solve_square_mod(c, n)


def test_solve_square_mod_counts_for_odd_prime_powers():
    # a unit square has exactly two roots modulo an odd prime power
    for n in (3**9, 5**6, 7**5, 11**4):
        assert len(solve_square_mod(4, n)) == 2


def test_solve_square_mod_rejects_zero():
    with pytest.raises(ValueError):
        solve_square_mod(1, 0)


def test_solve_quadratic_mod_matches_brute_force():
    for n in range(1, 300):
        for coef, const in ((1, 2), (3, 5), (8, 2), (12, 3), (50, 5), (9, 6)):
            want = {t for t in range(n) if (coef * t * t + const) % n == 0}
            assert solve_quadratic_mod(coef, const, n) == want, (coef, const, n)


def test_crt():
    assert crt([2, 3], [3, 5]) == (8, 15)
    assert crt([], []) == (0, 1)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1, 8), 17),
        ((5, 8, [(3, 1)]), 5),
        ((1, 24), 73),
        ((3, 8, [], {3, 11}), 19),
    ],
)
def test_find_prime_in_ap_examples(args, expected):
    assert find_prime_in_ap(*args) == expected


@given(
    st.integers(1, 60),
    st.sampled_from([4, 8, 16, 24, 40, 48]),
    st.lists(st.sampled_from([3, 5, 7, 11, 13]), max_size=2, unique=True),
    st.sampled_from([1, 2, 3, 5]),
)
def test_find_prime_in_ap_is_smallest(r, modulus, ps, u):
    r = r % modulus
    if oracles.factor(modulus).keys() & oracles.factor(r or modulus).keys():
        return
    conditions = [(p, 1) for p in ps]
    ok = lambda c: oracles.is_prime(c) and all(oracles.legendre(-u * c, p) == 1 for p in ps)  # noqa: E731
    try:
        q = find_prime_in_ap(r, modulus, conditions, premultiplier=u, limit=20000)
    except SearchBoundExceeded:
        # some class/condition combinations are infeasible
        assert not any(ok(c) for c in range(r, 20001, modulus))
        return
    assert q % modulus == r and ok(q)
    assert not any(ok(c) for c in range(r, q, modulus))


def test_find_prime_in_ap_errors():
    with pytest.raises(ValueError):
        find_prime_in_ap(2, 8)
    with pytest.raises(SearchBoundExceeded):
        # (-q/3) = 1 needs q = 2 (mod 3), impossible for q = 1 (mod 3)
        find_prime_in_ap(1, 3, [(3, 1)], limit=10**4)


def test_is_square():
    assert [n for n in range(-3, 50) if is_square(n)] == [0, 1, 4, 9, 16, 25, 36, 49]
