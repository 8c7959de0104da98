"""Exact arithmetic substrate: von Mangoldt sieve, weighted prime-power
sums, Kronecker characters, and imaginary-quadratic class data.

The half-corrected prime-power sums evaluated here are the left-hand
ingredients of the explicit formulas:

  psi0(x)          = Sum_{n<=x} Lambda(n), with Lambda(x)/2 at a jump
  psi0_alpha(x,a)  = x^a Sum'_{n<=x} Lambda(n)/n^a
  T_sum(x,a)       = x^a Sum'_{n<=1/x} Lambda(n)/n^(1-a)   for 0 < x < 1

where Sum' halves the boundary term when the endpoint is a prime power.
Inputs x are exact rationals so the "is the endpoint a prime power"
branch is decidable; Lambda(n) is stored as the prime p (n = p^k), so a
weighted sum takes one high-precision log per prime rather than per n.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import mpmath
from mpmath import mpf

from .mpcore import HReal, PrecisionContext

# Sieve memory budget: 4 bytes per entry.
MAX_SIEVE = 20_000_000


# ----------------------------------------------------------------------
# von Mangoldt sieve
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MangoldtTable:
    """Exact von Mangoldt data up to a limit.

    entries[n] is 0 when Lambda(n) = 0 and the prime p when n = p^k,
    so Lambda(n) = log(entries[n]) taken lazily at whatever precision
    the consumer wants.  Immutable after construction.
    """

    limit: int        # table covers 1..limit inclusive
    entries: array    # entries[n] = p if n = p^k else 0; entries[0..1] = 0

    def prime_of(self, n: int) -> int:
        """p if n = p^k, else 0."""
        if not (1 <= n <= self.limit):
            raise ValueError(f"n = {n} outside table limit {self.limit}")
        return self.entries[n]

    def is_prime_power(self, n: int) -> bool:
        return 1 <= n <= self.limit and self.entries[n] != 0

    def mangoldt(self, n: int, ctx: PrecisionContext) -> HReal:
        """Lambda(n) as a high-precision real."""
        p = self.prime_of(n)
        if p == 0:
            return ctx.real(0)
        with ctx.workprec():
            return ctx.real(mpmath.log(p))


def mangoldt_sieve(N: int) -> MangoldtTable:
    """Exact MangoldtTable for 1..N.

    Boolean prime sieve, then each prime marks its powers.  Raises when
    N exceeds the configured memory budget.
    """
    if N < 1:
        raise ValueError(f"sieve limit must be >= 1, got {N}")
    if N > MAX_SIEVE:
        raise ValueError(f"sieve limit {N} exceeds memory budget {MAX_SIEVE}")
    entries = array("i", bytes(4 * (N + 1)))
    is_comp = bytearray(N + 1)
    for p in range(2, N + 1):
        if is_comp[p]:
            continue
        for m in range(p * p, N + 1, p):
            is_comp[m] = 1
        q = p
        while q <= N:
            entries[q] = p
            q *= p
    return MangoldtTable(limit=N, entries=entries)


_table_cache: dict[str, MangoldtTable] = {}


def shared_table(N: int) -> MangoldtTable:
    """Process-wide sieve cache, grown geometrically on demand."""
    t = _table_cache.get("t")
    if t is None or t.limit < N:
        grown = max(N, 1024, 2 * (t.limit if t else 0))
        t = mangoldt_sieve(grown)
        _table_cache["t"] = t
    return t


def _is_prime_power_frac(x: Fraction) -> tuple[bool, int]:
    """(x is an integer prime power, its prime or 0)."""
    if x.denominator != 1:
        return False, 0
    n = x.numerator
    if n < 2:
        return False, 0
    t = shared_table(n)
    p = t.prime_of(n)
    return (p != 0), p


def _grouped_counts(N: int) -> dict[int, list[int]]:
    """{p: [k1, k2, ...]} for every prime power p^k <= N."""
    t = shared_table(N)
    out: dict[int, list[int]] = {}
    for n in range(2, N + 1):
        p = t.entries[n]
        if p:
            k = 0
            q = n
            while q % p == 0:
                q //= p
                k += 1
            out.setdefault(p, []).append(k)
    return out


# ----------------------------------------------------------------------
# Half-corrected prime-power sums
# ----------------------------------------------------------------------

def psi0(x: Fraction, ctx: PrecisionContext) -> tuple[HReal, bool]:
    """Sum_{n<=x} Lambda(n) with the boundary term halved when x is a
    prime power.  Returns (value, at_prime_power)."""
    x = Fraction(x)
    if x <= 1:
        raise ValueError(f"psi0 requires x > 1, got {x}")
    is_pp, p_at = _is_prime_power_frac(x)
    n_max = x.numerator // x.denominator
    if is_pp:
        n_max -= 1  # boundary handled separately
    with ctx.workprec():
        acc = mpf(0)
        if n_max >= 2:
            for p, ks in _grouped_counts(n_max).items():
                acc += len(ks) * mpmath.log(p)
        if is_pp:
            acc += mpmath.log(p_at) / 2
    return ctx.real(acc), is_pp


def psi0_alpha(x: Fraction, alpha: Fraction, ctx: PrecisionContext) -> HReal:
    """x^alpha Sum_{n<x} Lambda(n)/n^alpha, plus an unweighted
    Lambda(x)/2 when x itself is a prime power (the boundary weight
    x^alpha/x^alpha collapses to 1).  Reduces to psi0 at alpha = 0."""
    x = Fraction(x)
    alpha = Fraction(alpha)
    if x <= 1:
        raise ValueError(f"psi0_alpha requires x > 1, got {x}")
    is_pp, p_at = _is_prime_power_frac(x)
    n_max = x.numerator // x.denominator
    if is_pp:
        n_max -= 1
    with ctx.workprec(32):
        a = ctx.mpf(alpha)
        acc = mpf(0)
        if n_max >= 2:
            for p, ks in _grouped_counts(n_max).items():
                logp = mpmath.log(p)
                pa = mpf(p) ** (-a)
                acc += logp * sum(pa ** k for k in ks)
        xv = ctx.mpf(x)
        total = xv ** a * acc
        if is_pp:
            total += mpmath.log(p_at) / 2
    return ctx.real(total)


def T_sum(x: Fraction, alpha: Fraction, ctx: PrecisionContext) -> HReal:
    """x^alpha Sum_{n<1/x} Lambda(n)/n^(1-alpha), plus (x/2) Lambda(1/x)
    when 1/x is a prime power (again the boundary weight collapses:
    x^alpha x^(1-alpha) = x).  Defined for exact rational x in (0, 1)."""
    x = Fraction(x)
    alpha = Fraction(alpha)
    if not (0 < x < 1):
        raise ValueError(f"T_sum requires 0 < x < 1, got {x}")
    inv = 1 / x
    is_pp, p_at = _is_prime_power_frac(inv)
    n_max = inv.numerator // inv.denominator
    if is_pp:
        n_max -= 1
    with ctx.workprec(32):
        a = ctx.mpf(alpha)
        acc = mpf(0)
        if n_max >= 2:
            for p, ks in _grouped_counts(n_max).items():
                logp = mpmath.log(p)
                pw = mpf(p) ** (a - 1)
                acc += logp * sum(pw ** k for k in ks)
        xv = ctx.mpf(x)
        total = xv ** a * acc
        if is_pp:
            total += xv * mpmath.log(p_at) / 2
    return ctx.real(total)


# ----------------------------------------------------------------------
# Kronecker characters
# ----------------------------------------------------------------------

def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the completely multiplicative extension
    of the Jacobi symbol with the standard conventions at 2, -1, 0."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def discriminant_of(d: int) -> int:
    """Absolute discriminant D of Q(sqrt(-d)): D = d when -d = 1 mod 4,
    else 4d."""
    return d if (-d) % 4 == 1 else 4 * d


def kronecker_chi(d: int) -> tuple[int, ...]:
    """Character table (chi(0), ..., chi(D-1)) of the quadratic character
    chi_{-d}(n) = kronecker(-D | n) attached to Q(sqrt(-d)); D is the
    absolute discriminant, -D the fundamental discriminant, and the
    table has exact period D."""
    if not is_squarefree(d):
        raise ValueError(f"d = {d} is not squarefree")
    D = discriminant_of(d)
    return tuple(kronecker_symbol(-D, a) for a in range(D))


def chi_fn(d: int) -> Callable[[int], int]:
    """chi_{-d} as a function of any nonnegative integer."""
    table = kronecker_chi(d)
    D = len(table)
    return lambda n: table[n % D]


# ----------------------------------------------------------------------
# Imaginary-quadratic class data
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ImaginaryQuadraticData:
    """Class data of Q(sqrt(-d)) for squarefree d >= 1.

    h is the exhaustive count of reduced binary quadratic forms
    (a, b, c) with b^2 - 4ac = -D, |b| <= a <= c, and b >= 0 when
    |b| = a or a = c.  The class-number formula
    h = w sqrt(D) L(1, chi_{-d}) / (2 pi) is cross-checked downstream.
    """

    d: int                    # squarefree positive integer
    D: int                    # absolute discriminant of Q(sqrt(-d))
    h: int                    # class number, by reduced-form count
    w: int                    # unit-group order: 6 iff D=3, 4 iff D=4, else 2
    chi: tuple[int, ...]      # chi_{-d}(a) for a mod D
    A: HReal                  # sqrt(D/pi)


def reduced_form_count(D: int) -> int:
    """Number of reduced forms (a, b, c), b^2 - 4ac = -D."""
    h = 0
    b = D % 2  # need b^2 = D mod 4, squares are 0 or 1 mod 4
    while b * b <= D // 3:
        m4 = b * b + D
        if m4 % 4 == 0:
            m = m4 // 4
            a = max(b, 1)
            while a * a <= m:
                if m % a == 0:
                    c = m // a
                    if b == 0 or a == b or a == c:
                        h += 1
                    else:
                        h += 2  # (a, b, c) and (a, -b, c)
                a += 1
        b += 2
    return h


def class_data(d: int, ctx: PrecisionContext) -> ImaginaryQuadraticData:
    """Full ImaginaryQuadraticData for squarefree d."""
    if not is_squarefree(d):
        raise ValueError(f"d = {d} is not squarefree")
    D = discriminant_of(d)
    w = 6 if D == 3 else (4 if D == 4 else 2)
    h = reduced_form_count(D)
    chi = kronecker_chi(d)
    with ctx.workprec():
        A = ctx.real(mpmath.sqrt(D / mpmath.pi))
    return ImaginaryQuadraticData(d=d, D=D, h=h, w=w, chi=chi, A=A)
