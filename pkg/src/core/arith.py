"""Exact integer primitives and the lifting-the-exponent engine.

Everything here is pure integer arithmetic on Python ints. Valuations of huge
powers are computed modulo prime powers so that b^(p-1) never materializes.
"""

from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache

from sympy import integer_nthroot, isprime

from src.core.errors import InvalidInputError, PreconditionError, ValuationCapExceededError
from src.schemas.valuation import ValuationFact, ValuationMethod

logger = logging.getLogger(__name__)

DEFAULT_VALUATION_CAP = 64


class ModulusSchedule(str, Enum):
    """How power_minus_one_valuation walks the prime-power moduli."""

    LADDER = "ladder"  # p, p^2, p^3, ... one modpow each
    SQUARE_FIRST = "square_first"  # p, p^2, then a single modpow at p^(cap+1)


def _require_prime(p: int) -> None:
    if p < 2 or not isprime(p):
        raise InvalidInputError(f"{p} is not prime")


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer.

    Args:
        n: Nonzero integer.
        p: Prime.

    Returns:
        int: Largest e with p^e | n.

    Raises:
        InvalidInputError: n == 0 or p not prime.
    """
    if n == 0:
        raise InvalidInputError("valuation of 0 is undefined")
    _require_prime(p)
    n = abs(n)
    e = 0
    # Strip p^(2^i) blocks first so huge valuations stay logarithmic.
    if n % p == 0:
        powers = [p]
        while n % (powers[-1] * powers[-1]) == 0:
            powers.append(powers[-1] * powers[-1])
        for i in range(len(powers) - 1, -1, -1):
            if n % powers[i] == 0:
                n //= powers[i]
                e += 1 << i
        while n % p == 0:
            n //= p
            e += 1
    return e


def integer_root(n: int, q: int) -> tuple[int, bool]:
    """Floor of the q-th root with an exactness flag.

    Args:
        n: Positive integer.
        q: Positive root degree.

    Returns:
        tuple: (r, exact) with r = floor(n^(1/q)) and exact iff r^q == n.
    """
    if n < 1 or q < 1:
        raise InvalidInputError(f"integer_root needs n >= 1 and q >= 1, got n={n}, q={q}")
    root, exact = integer_nthroot(n, q)
    return int(root), bool(exact)


def is_perfect_qth_power(n: int, q: int) -> bool:
    """True iff n = m^q for some integer m >= 1."""
    if n < 1:
        raise InvalidInputError(f"is_perfect_qth_power needs n >= 1, got {n}")
    return integer_root(n, q)[1]


def modpow(base: int, exp: int, m: int) -> int:
    """base^exp mod m with a non-negative residue."""
    if m < 1:
        raise InvalidInputError(f"modulus must be positive, got {m}")
    if exp < 0:
        raise InvalidInputError(f"exponent must be non-negative, got {exp}")
    return pow(base, exp, m)


def lte_valuation(a: int, b: int, p: int, k: int) -> int:
    """nu_p(a^k - b^k) by the lifting-the-exponent rule.

    Args:
        a: Integer.
        b: Integer.
        p: Prime with p | a - b and p not dividing a*b.
        k: Positive exponent.

    Returns:
        int: The valuation.

    Raises:
        PreconditionError: p does not divide a - b, p divides ab, or k < 1.
    """
    _require_prime(p)
    if k < 1:
        raise PreconditionError(f"LTE needs k >= 1, got {k}")
    if (a - b) % p != 0:
        raise PreconditionError(f"LTE needs {p} | a - b (a={a}, b={b})")
    if (a * b) % p == 0:
        raise PreconditionError(f"LTE needs {p} not dividing a*b (a={a}, b={b})")
    if a == b:
        raise PreconditionError("LTE is undefined for a == b")

    if p != 2:
        return vp(a - b, p) + vp(k, p)
    if k % 2 == 1:
        return vp(a - b, 2)
    if a == -b:
        raise PreconditionError("a^2 - b^2 vanishes; nu_2(a^k - b^k) is undefined")
    return vp(a * a - b * b, 2) + vp(k // 2, 2)


def valuation_oracle(a: int, b: int, p: int, k: int) -> int:
    """nu_p(a^k - b^k) by materializing the difference."""
    diff = a**k - b**k
    if diff == 0:
        raise InvalidInputError(f"a^k == b^k for a={a}, b={b}, k={k}")
    return vp(diff, p)


def power_minus_one_valuation(
    base: int,
    exponent: int,
    p: int,
    cap: int = DEFAULT_VALUATION_CAP,
    schedule: ModulusSchedule = ModulusSchedule.LADDER,
) -> int:
    """nu_p(base^exponent - 1) computed modulo prime powers.

    Args:
        base: Integer base.
        exponent: Positive exponent.
        p: Prime.
        cap: Largest exponent that may be reported.
        schedule: Modulus schedule; both give the same answer.

    Returns:
        int: The valuation (0 when p does not divide base^exponent - 1).

    Raises:
        ValuationCapExceededError: The valuation is larger than cap.
    """
    if exponent < 1:
        raise InvalidInputError(f"exponent must be positive, got {exponent}")
    if pow(base, exponent, p) != 1:
        return 0

    if schedule is ModulusSchedule.LADDER:
        modulus = p
        for j in range(2, cap + 1):
            modulus *= p
            if pow(base, exponent, modulus) != 1:
                return j - 1
        if pow(base, exponent, modulus * p) != 1:
            return cap
        raise ValuationCapExceededError(base, exponent, p, cap)

    if pow(base, exponent, p * p) != 1:
        return 1
    residue = pow(base, exponent, p ** (cap + 1))
    if residue == 1:
        raise ValuationCapExceededError(base, exponent, p, cap)
    return vp(residue - 1, p)


@lru_cache(maxsize=4096)
def two_fermat_valuation(p: int, cap: int = DEFAULT_VALUATION_CAP) -> int:
    """nu_p(2^(p-1) - 1) for an odd prime p (>= 2 exactly at Wieferich primes)."""
    return power_minus_one_valuation(2, p - 1, p, cap)


def valuation_fact(base: int, exponent: int, p: int, subject: str, cap: int = DEFAULT_VALUATION_CAP) -> ValuationFact:
    """nu_p(base^exponent - 1) as a trace record.

    Lifting the exponent is used when p | base - 1 and p does not divide
    base; otherwise the modular ladder.

    Raises:
        ValuationCapExceededError: The valuation is larger than cap.
    """
    if (base - 1) % p == 0 and base % p != 0 and base != 1:
        e = lte_valuation(base, 1, p, exponent)
        if e > cap:
            raise ValuationCapExceededError(base, exponent, p, cap)
        return ValuationFact(p=p, subject=subject, e=e, method=ValuationMethod.LTE)
    e = power_minus_one_valuation(base, exponent, p, cap)
    return ValuationFact(p=p, subject=subject, e=e, method=ValuationMethod.DIRECT)
