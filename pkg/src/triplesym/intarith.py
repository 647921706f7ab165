"""Small exact integer helpers: primality, perfect powers, square roots mod p.

Primality is Miller-Rabin with the fixed witness set {2,3,...,37}, which is
deterministic far beyond desk scale (well past 3.3e14); inputs below 10**6
are settled by trial division alone.
"""

import math

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 1_000_000:
        f = 101
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def icbrt(n: int) -> int:
    """Floor of the real cube root for n >= 0 (integer Newton)."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


def exact_cbrt(n: int):
    """Integer r with r**3 == n, or None."""
    r = icbrt(abs(n))
    if r * r * r != abs(n):
        return None
    return r if n >= 0 else -r


def sqrt_mod(a: int, p: int):
    """A square root of a modulo an odd prime p (Tonelli-Shanks), or None.

    Returns s with 0 <= s < p and s*s = a mod p; the other root is p - s.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p - 1 = t * 2^e with t odd
    t, e = p - 1, 0
    while t % 2 == 0:
        t //= 2
        e += 1
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    x = pow(a, (t + 1) // 2, p)
    b = pow(a, t, p)
    g = pow(n, t, p)
    r = e
    while b != 1:
        m, t2 = 0, b
        while t2 != 1:
            t2 = t2 * t2 % p
            m += 1
        gs = pow(g, 1 << (r - m - 1), p)
        g = gs * gs % p
        x = x * gs % p
        b = b * g % p
        r = m
    return x
