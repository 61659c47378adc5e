"""Closed-form integer bounds and the bound ledger.

All values are exact Python integers; nothing here floats.  The ledger records
which inputs produced which value so reports can replay the arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionViolated


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            step = len(range(i * i, n + 1, i))
            sieve[i * i:: i] = b"\x00" * step
    return [i for i in range(2, n + 1) if sieve[i]]


def f(k: int) -> int:
    """2^k times the product of p^[k/p] over odd primes p; 1 for k < 0."""
    if k < 0:
        return 1
    out = 2 ** k
    for p in _primes_upto(k):
        if p > 2:
            out *= p ** (k // p)
    return out


def divisor_check(k: int) -> bool:
    """f(k) divides 2^(k - [k/2]) * k! for k >= 0."""
    if k < 0:
        return True
    return (2 ** (k - k // 2) * math.factorial(k)) % f(k) == 0


def chain_bound(m: int, k: int) -> int:
    """Length bound C(m + k + 1, m + 1) on strict chains of census vectors."""
    if m < 0 or k < 0:
        raise PreconditionViolated("chain_bound needs m, k >= 0")
    return math.comb(m + k + 1, m + 1)


def k_sphere_bound(m: int, r: int) -> int:
    """Recursive index bound for rank-r actions on chains of m-spheres:

    K(0, r) = 1,  K(m, r) = max{(m + 1) * m! * K(m - 1, r), (m + 1)^r}.
    """
    if m < 0 or r < 0:
        raise PreconditionViolated("k_sphere_bound needs m, r >= 0")
    if m == 0:
        return 1
    return max((m + 1) * math.factorial(m) * k_sphere_bound(m - 1, r),
               (m + 1) ** r)


def chi_core_exponent(p: int, betti_sum: int) -> int:
    """Least n with p^(n+1) > 2 * betti_sum (strict)."""
    n = 0
    while p ** (n + 1) <= 2 * betti_sum:
        n += 1
    return n


def chi_core_index_bound(p: int, betti_sum: int, mu: int) -> int:
    """p^(n * mu) for the chi-core exponent n."""
    return p ** (chi_core_exponent(p, betti_sum) * mu)


def torsion_threshold(p0: int, betti_sum_q: int) -> int:
    """First prime from which the chi-core is the whole part:
    max{p0, 2 * total rational Betti + 1}."""
    return max(p0, 2 * betti_sum_q + 1)


def c_lambda(lam: int, m: int, k_max: int, mu: int,
             betti_sum_q: int, betti_sums: dict[int, int] | None = None,
             p0: int = 2) -> int:
    """Global stable-subgroup index bound.

    Product over primes p below the torsion threshold of the chi-core bound
    p^(n_p * mu), times lambda^e for every prime <= lambda, where
    e = C(m + k_max + 1, m + 1).
    """
    if lam < 0:
        raise PreconditionViolated("lambda must be >= 0")
    betti_sums = betti_sums or {}
    p_chi = torsion_threshold(p0, betti_sum_q)
    out = 1
    for p in _primes_upto(p_chi):
        out *= chi_core_index_bound(p, betti_sums.get(p, betti_sum_q), mu)
    e = chain_bound(m, k_max)
    for _p in _primes_upto(lam):
        out *= lam ** e
    return out


def compact_index_bound(s: int, k: int, n: int) -> int:
    """s * K * s * (s!)^n * n! style product: s. K . s . (s!)^n . n!."""
    return s * k * s * math.factorial(s) ** n * math.factorial(n)


def two_step_core_bound(m: int, d: int) -> int:
    """M^2 * (M!)^d: index bound through a characteristic core with d
    generators below a subgroup of index M."""
    return m * m * math.factorial(m) ** d


def even_sphere_divisor(m: int) -> int:
    """2^(m+1) * f(m-1): index divisor for the even-sphere reduction."""
    return 2 ** (m + 1) * f(m - 1)


def three_power(b: int) -> int:
    """3^b for b = sum of squared Betti numbers (mod-3 homology kernel)."""
    return 3 ** b


@dataclass
class BoundLedger:
    """Named exact bound values plus the inputs that produced them."""
    entries: dict[str, dict] = field(default_factory=dict)

    def add(self, name: str, value: int, **inputs):
        self.entries[name] = {"value": value, "inputs": dict(sorted(inputs.items()))}

    def value(self, name: str) -> int:
        return self.entries[name]["value"]

    def to_json(self) -> dict:
        return {name: self.entries[name] for name in sorted(self.entries)}


def misc_bounds(s: int | None = None, k: int | None = None, n: int | None = None,
                b: int | None = None, d: int | None = None, m: int | None = None,
                r: int | None = None, core_index: int | None = None,
                fk: int | None = None) -> BoundLedger:
    """Assemble the assorted bound ledger from whichever inputs are supplied.

    Opaque constants that the source estimates leave unnamed stay exactly
    that: callers pass them in (core_index, fk) and the ledger replays only
    arithmetic it can verify.
    """
    ledger = BoundLedger()
    if s is not None and k is not None and n is not None:
        ledger.add("compact_index", compact_index_bound(s, k, n), s=s, k=k, n=n)
    if b is not None:
        ledger.add("three_power", three_power(b), b=b)
    if m is not None and r is not None:
        ledger.add("k_sphere", k_sphere_bound(m, r), m=m, r=r)
    if m is not None:
        ledger.add("even_sphere_divisor", even_sphere_divisor(m), m=m)
    if fk is not None:
        ledger.add("f", f(fk), k=fk)
        ledger.add("f_divides", int(divisor_check(fk)), k=fk)
    if core_index is not None and d is not None:
        ledger.add("two_step_core", two_step_core_bound(core_index, d),
                   m=core_index, d=d)
    return ledger
