"""Multiplicative characters modulo a prime, with an exact value algebra.

A character is addressed by its index m against the smallest primitive root
g of q: the index-m character maps g^k to e(mk/(q-1)).  Values are kept as
exact fractions a/(q-1) of a full turn, so multiplicativity and order
identities are integer statements; floating point enters only when sums are
accumulated.  Quadratic (Legendre) characters additionally get an exact
integer summation path, which makes every inequality involving them
checkable with zero tolerance.

Everything here is immutable after construction and safe to share across
threads; sums and window reads are pure.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CompositeModulus,
    TableLimitExceeded,
    TrivialCharacter,
    WindowTooLarge,
)

DEFAULT_TABLE_LIMIT = 1 << 26

# Relative rounding budget per summand on the floating (non-quadratic) path.
FLOAT_EPS = 1e-9


def table_limit() -> int:
    """Discrete-log table cap; BURGESS_TABLE_LIMIT overrides the default."""
    raw = os.environ.get("BURGESS_TABLE_LIMIT")
    return int(raw) if raw else DEFAULT_TABLE_LIMIT


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    for p in (2, 3):
        if n % p == 0:
            return n == p
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, p -> exponent."""
    out: dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def find_primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group mod prime q."""
    if not is_prime(q):
        raise CompositeModulus(f"{q} is not prime")
    if q == 2:
        return 1
    phi = q - 1
    prime_divisors = list(factorize(phi))
    for g in range(2, q):
        if all(pow(g, phi // p, q) != 1 for p in prime_divisors):
            return g
    raise AssertionError("no primitive root found; q cannot be prime")


def _dlog_table(q: int, g: int) -> np.ndarray:
    """dlog[n] = k with g^k = n (mod q), built in O(q) by blocked powers."""
    dlog = np.full(q, -1, dtype=np.int64)
    block = min(q - 1, 1 << 13)
    base = np.empty(block, dtype=np.int64)
    x = 1
    for k in range(block):
        base[k] = x
        x = (x * g) % q
    step = x  # g^block
    cur = 1
    pos = 0
    while pos < q - 1:
        cnt = min(block, q - 1 - pos)
        # cur, base < q <= 2^26 so the product stays inside int64
        powers = (cur * base[:cnt]) % q
        dlog[powers] = np.arange(pos, pos + cnt, dtype=np.int64)
        cur = (cur * step) % q
        pos += cnt
    return dlog


@dataclass
class PrimeModulus:
    """A prime q with its smallest primitive root and full dlog table."""

    q: int
    g: int
    dlog: np.ndarray

    def dlog_of(self, n: int) -> int:
        n %= self.q
        if n == 0:
            raise ValueError(f"{n} is divisible by {self.q}")
        return int(self.dlog[n])

    def character(self, index: int) -> "Character":
        return Character(self, index % (self.q - 1))

    def legendre(self) -> "Character":
        if self.q == 2:
            raise ValueError("no quadratic character mod 2")
        return Character(self, (self.q - 1) // 2)

    def __repr__(self) -> str:  # keep reprs short; the table is large
        return f"PrimeModulus(q={self.q}, g={self.g})"


def build_modulus(q: int, limit: int | None = None) -> PrimeModulus:
    """Construct the evaluation backbone for all characters mod q.

    Certifies primality, finds the smallest primitive root, fills the dlog
    table and verifies it is a bijection [1, q-1] -> [0, q-2].
    """
    if q < 3:
        raise ValueError("modulus must be a prime >= 3")
    if not is_prime(q):
        raise CompositeModulus(f"{q} is not prime")
    cap = table_limit() if limit is None else limit
    if q > cap:
        raise TableLimitExceeded(f"q={q} exceeds table limit {cap}")
    g = find_primitive_root(q)
    dlog = _dlog_table(q, g)
    if int(dlog[1:].min()) < 0:
        raise AssertionError("dlog table not surjective; g is not primitive")
    if int(dlog[1]) != 0 or int(dlog[g]) != 1:
        raise AssertionError("dlog table anchors wrong")
    return PrimeModulus(q=q, g=g, dlog=dlog)


@dataclass(frozen=True)
class CharValue:
    """A character value: zero, or the root of unity e(num/den).

    den is always q-1.  num is None exactly when the argument was divisible
    by q.
    """

    num: int | None
    den: int

    @property
    def is_zero(self) -> bool:
        return self.num is None

    def as_complex(self) -> complex:
        if self.num is None:
            return 0j
        return complex(math.cos(2 * math.pi * self.num / self.den),
                       math.sin(2 * math.pi * self.num / self.den))

    def as_int(self) -> int:
        """Exact {-1, 0, +1} projection; defined only for real values."""
        if self.num is None:
            return 0
        if self.num == 0:
            return 1
        if 2 * self.num == self.den:
            return -1
        raise ValueError(f"value e({self.num}/{self.den}) is not real")

    @property
    def magnitude(self) -> float:
        return 0.0 if self.num is None else 1.0


@dataclass(frozen=True)
class ComplexSum:
    """A character sum; exact_int is present on the quadratic path."""

    re: float
    im: float
    exact_int: int | None = None

    def abs(self) -> float:
        return math.hypot(self.re, self.im)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


class Character:
    """The index-m character mod q: g^k -> e(mk/(q-1))."""

    def __init__(self, modulus: PrimeModulus, index: int):
        q = modulus.q
        if not 0 <= index <= q - 2:
            raise ValueError(f"index {index} outside [0, {q - 2}]")
        self.modulus = modulus
        self.index = index

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def order(self) -> int:
        return (self.q - 1) // math.gcd(self.index, self.q - 1)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    @property
    def is_quadratic(self) -> bool:
        return self.q > 2 and self.index == (self.q - 1) // 2

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def conjugate(self) -> "Character":
        return Character(self.modulus, (-self.index) % (self.q - 1))

    def value(self, n: int) -> CharValue:
        q = self.q
        n %= q
        if n == 0:
            return CharValue(None, q - 1)
        num = (self.index * int(self.modulus.dlog[n])) % (q - 1)
        return CharValue(num, q - 1)

    def __call__(self, n: int) -> CharValue:
        return self.value(n)

    @cached_property
    def fractions(self) -> np.ndarray:
        """frac[n] = num of chi(n) for n in [1, q-1]; frac[0] = -1 sentinel."""
        frac = (self.index * self.modulus.dlog) % (self.q - 1)
        frac[0] = -1
        return frac

    @cached_property
    def values_int(self) -> np.ndarray:
        """Exact {-1, 0, 1} value table; only for real characters."""
        if not self.is_real:
            raise ValueError("integer values exist only for real characters")
        q = self.q
        if self.is_trivial:
            vals = np.ones(q, dtype=np.int8)
        else:
            # chi(n) = +1 iff dlog[n] even for the quadratic character
            vals = np.where(self.modulus.dlog % 2 == 0, 1, -1).astype(np.int8)
        vals[0] = 0
        return vals

    @cached_property
    def values_complex(self) -> np.ndarray:
        frac = self.fractions.astype(np.float64)
        vals = np.exp(2j * np.pi * frac / (self.q - 1))
        vals[0] = 0j
        return vals

    @cached_property
    def prefix(self) -> "PrefixTable":
        return prefix_table(self)

    def __repr__(self) -> str:
        return f"Character(q={self.q}, m={self.index}, order={self.order})"


def char_eval(chi: Character, n: int) -> CharValue:
    """Evaluate chi(n); zero when q | n, exact root of unity otherwise."""
    return chi.value(n)


class PrefixTable:
    """Cumulative sums S_k = sum_{n<=k} chi(n) for k in [0, q].

    Exact int64 for quadratic characters, complex128 otherwise.  S_q = 0 for
    every nontrivial character, which is what lets window sums wrap around
    the period with at most two table lookups.
    """

    def __init__(self, chi: Character, sums: np.ndarray, exact: bool):
        self.chi = chi
        self.sums = sums
        self.exact = exact

    @property
    def q(self) -> int:
        return self.chi.q


def prefix_table(chi: Character) -> PrefixTable:
    if chi.is_trivial:
        raise TrivialCharacter("prefix table requires a nontrivial character")
    q = chi.q
    if chi.is_quadratic:
        body = chi.values_int[1:].astype(np.int64)
        sums = np.concatenate([[0], np.cumsum(body), [0]])
        # chi(q) = chi(0) = 0, so S_q = S_{q-1}; orthogonality forces 0
        sums[q] = sums[q - 1]
        assert sums[q] == 0
        return PrefixTable(chi, sums, exact=True)
    body = chi.values_complex[1:]
    sums = np.concatenate([[0j], np.cumsum(body), [0j]])
    sums[q] = sums[q - 1]
    return PrefixTable(chi, sums, exact=False)


def window_sum(table: PrefixTable, lam: int, v: int) -> ComplexSum:
    """sum_{1<=j<=v} chi(lam + j) via at most two prefix differences."""
    q = table.q
    if v > q:
        raise WindowTooLarge(f"V={v} exceeds q={q}")
    if v < 1:
        raise ValueError("window length must be >= 1")
    a = lam % q
    hi = a + v
    s = table.sums
    if hi <= q:
        w = s[hi] - s[a]
    else:
        w = (s[q] - s[a]) + s[hi - q]
    if table.exact:
        return ComplexSum(re=float(w), im=0.0, exact_int=int(w))
    return ComplexSum(re=float(w.real), im=float(w.imag))


def window_array(table: PrefixTable, v: int) -> np.ndarray:
    """All window sums w(lam) = sum_{j<=v} chi(lam+j) for lam in [1, q]."""
    q = table.q
    if v > q:
        raise WindowTooLarge(f"V={v} exceeds q={q}")
    if v < 1:
        raise ValueError("window length must be >= 1")
    s = table.sums
    lam = np.arange(1, q + 1, dtype=np.int64)
    hi = lam + v
    wrapped = np.where(hi <= q, hi, hi - q)
    w = s[wrapped] - s[lam]
    w[hi > q] += s[q]
    return w


def interval_sum(chi: Character, m: int, n: int) -> ComplexSum:
    """sum_{m < k <= m+n} chi(k); exact integer accumulation when real."""
    if n < 0:
        raise ValueError("interval length must be >= 0")
    q = chi.q
    rem = n % q
    if chi.is_trivial:
        # principal character: count integers in the range coprime to q
        count = n - ((m + n) // q - m // q)
        return ComplexSum(re=float(count), im=0.0,
                          exact_int=count if chi.is_real else None)
    if chi.is_quadratic:
        total = 0  # full periods vanish by orthogonality
        if rem:
            idx = (m + 1 + np.arange(rem, dtype=np.int64)) % q
            total = int(chi.values_int[idx].astype(np.int64).sum())
        return ComplexSum(re=float(total), im=0.0, exact_int=total)
    total = 0j
    if rem:
        idx = (m + 1 + np.arange(rem, dtype=np.int64)) % q
        total = complex(chi.values_complex[idx].sum())
    return ComplexSum(re=total.real, im=total.imag)


def legendre_value_array(q: int) -> np.ndarray:
    """Quadratic-character value table from the squares sieve, no dlog needed.

    Used by whole-prime scans where building a primitive-root table per prime
    would be wasted work; must agree with the dlog path (tested).
    """
    if q < 3 or not is_prime(q):
        raise CompositeModulus(f"{q} is not an odd prime")
    vals = np.full(q, -1, dtype=np.int8)
    vals[0] = 0
    k = np.arange(1, (q - 1) // 2 + 1, dtype=np.int64)
    vals[(k * k) % q] = 1
    return vals
