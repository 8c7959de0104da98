"""Precision-controlled real/complex arithmetic and core special functions.

Everything downstream (zero sums, explicit-formula evaluators, constant
pipelines) consumes the types and functions defined here:

  PrecisionContext   immutable working-precision handle (binary digits)
  HReal / HComplex   finite high-precision scalars bound to a context
  FormalSeries       truncated Laurent series at s = 1 with an optional
                     simple-pole coefficient, Sum c_n (s-1)^n + p/(s-1)
  gamma_fn(x)        Gamma(x) for real x > 0 via Stirling + argument raising
  hurwitz_zeta(s,a)  zeta(s, a) = Sum_{n>=0} (n+a)^(-s), continued via
                     Euler-Maclaurin, with an explicit remainder bound
  zeta_int(j)        zeta(j) for integer j >= 2 via accelerated alternating
                     series (independent of hurwitz_zeta)
  series_ops         add / mul / div on FormalSeries

Numeric backend: mpmath mpf/mpc supplies correctly rounded base arithmetic
(round-to-nearest, error <= 2^-bits relative per elementary operation, well
inside the 2^(8-bits) contract).  Gamma and Hurwitz zeta are implemented
here from Bernoulli-number expansions with computable error terms; the
mpmath equivalents are used only as independent oracles in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath
from mpmath import mpf, mpc

Scalar = Union[int, float, Fraction, "HReal", mpf]

# Guard bits added on top of the context for internal evaluations so that
# accumulated rounding stays below the reported bounds.
_GUARD = 32


# ----------------------------------------------------------------------
# Precision context and scalar wrappers
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for every derived quantity.

    All arithmetic routed through this context is correctly rounded at
    `bits` binary digits, so each elementary operation carries a relative
    error of at most 2^-bits, comfortably within the 2^(8-bits) budget
    that callers may assume.  Instances are immutable and safe to share
    between concurrent tasks.
    """

    bits: int = 192          # binary working precision, >= 64
    rounding: str = "nearest"  # only round-to-nearest is supported

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ValueError(f"precision must be >= 64 bits, got {self.bits}")
        if self.rounding != "nearest":
            raise ValueError("only round-to-nearest is supported")

    def workprec(self, extra: int = 0):
        """Context manager running mpmath at bits + extra binary digits."""
        return mpmath.workprec(self.bits + extra)

    def mpf(self, x: Scalar) -> mpf:
        """Convert to a raw mpf at this context's precision (exact for
        int/Fraction inputs up to one rounding)."""
        with self.workprec():
            if isinstance(x, HReal):
                return x.val
            if isinstance(x, Fraction):
                return mpf(x.numerator) / mpf(x.denominator)
            return mpf(x)

    def real(self, x: Scalar) -> "HReal":
        return HReal(self.mpf(x), self)

    def complex(self, re: Scalar, im: Scalar = 0) -> "HComplex":
        with self.workprec():
            return HComplex(mpc(self.mpf(re), self.mpf(im)), self)

    # Shared constants.  Computed at context precision plus guard bits so
    # they can be consumed inside guarded evaluations without re-rounding.
    @property
    def pi(self) -> mpf:
        with self.workprec(_GUARD):
            return +mpmath.pi

    @property
    def euler_gamma(self) -> mpf:
        with self.workprec(_GUARD):
            return +mpmath.euler

    @property
    def log_2pi(self) -> mpf:
        with self.workprec(_GUARD):
            return mpmath.log(2 * mpmath.pi)

    @property
    def log_4pi(self) -> mpf:
        with self.workprec(_GUARD):
            return mpmath.log(4 * mpmath.pi)


def _check_finite(v) -> None:
    if not mpmath.isfinite(v):
        raise ArithmeticError(f"non-finite result escaped an operation: {v!r}")


@dataclass(frozen=True)
class HReal:
    """A finite high-precision real bound to a PrecisionContext."""

    val: mpf                 # underlying mpf, always finite
    ctx: PrecisionContext    # precision the value was produced under

    def __post_init__(self) -> None:
        _check_finite(self.val)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other: Scalar) -> mpf:
        if isinstance(other, HReal):
            return other.val
        return self.ctx.mpf(other)

    def _wrap(self, v) -> "HReal":
        _check_finite(v)
        return HReal(v, self.ctx)

    def __add__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self.val + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self.val - self._coerce(other))

    def __rsub__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self._coerce(other) - self.val)

    def __mul__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self.val * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self.val / self._coerce(other))

    def __rtruediv__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self._coerce(other) / self.val)

    def __pow__(self, other: Scalar) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(self.val ** self._coerce(other))

    def __neg__(self) -> "HReal":
        return HReal(-self.val, self.ctx)

    def __abs__(self) -> "HReal":
        return HReal(abs(self.val), self.ctx)

    # -- elementary functions -------------------------------------------
    def log(self) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(mpmath.log(self.val))

    def exp(self) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(mpmath.exp(self.val))

    def sqrt(self) -> "HReal":
        with self.ctx.workprec():
            return self._wrap(mpmath.sqrt(self.val))

    # -- comparisons and conversions ------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, HReal):
            return self.val == other.val
        if isinstance(other, (int, float, Fraction, mpf)):
            return self.val == self._coerce(other)
        return NotImplemented

    def __lt__(self, other: Scalar) -> bool:
        return self.val < self._coerce(other)

    def __le__(self, other: Scalar) -> bool:
        return self.val <= self._coerce(other)

    def __gt__(self, other: Scalar) -> bool:
        return self.val > self._coerce(other)

    def __ge__(self, other: Scalar) -> bool:
        return self.val >= self._coerce(other)

    def __hash__(self) -> int:
        return hash(self.val)

    def __float__(self) -> float:
        return float(self.val)

    def __repr__(self) -> str:
        return f"HReal({mpmath.nstr(self.val, 25)})"

    def str_digits(self, digits: int = 25) -> str:
        return mpmath.nstr(self.val, digits)


@dataclass(frozen=True)
class HComplex:
    """A finite high-precision complex bound to a PrecisionContext."""

    val: mpc
    ctx: PrecisionContext

    def __post_init__(self) -> None:
        _check_finite(self.val)

    @property
    def real(self) -> HReal:
        return HReal(self.val.real, self.ctx)

    @property
    def imag(self) -> HReal:
        return HReal(self.val.imag, self.ctx)

    def _coerce(self, other) -> mpc:
        if isinstance(other, HComplex):
            return other.val
        if isinstance(other, HReal):
            return mpc(other.val)
        with self.ctx.workprec():
            if isinstance(other, Fraction):
                return mpc(mpf(other.numerator) / mpf(other.denominator))
            return mpc(other)

    def _wrap(self, v) -> "HComplex":
        _check_finite(v)
        return HComplex(v, self.ctx)

    def __add__(self, other) -> "HComplex":
        with self.ctx.workprec():
            return self._wrap(self.val + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "HComplex":
        with self.ctx.workprec():
            return self._wrap(self.val - self._coerce(other))

    def __mul__(self, other) -> "HComplex":
        with self.ctx.workprec():
            return self._wrap(self.val * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "HComplex":
        with self.ctx.workprec():
            return self._wrap(self.val / self._coerce(other))

    def __neg__(self) -> "HComplex":
        return HComplex(-self.val, self.ctx)

    def __abs__(self) -> HReal:
        with self.ctx.workprec():
            return HReal(abs(self.val), self.ctx)

    def __repr__(self) -> str:
        return f"HComplex({mpmath.nstr(self.val, 25)})"


# ----------------------------------------------------------------------
# Bernoulli numbers (exact rationals, cached)
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple[Fraction, ...]:
    """B_0 .. B_n as exact Fractions via the defining recurrence
    Sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    return _bernoulli_list(n)[n]


# ----------------------------------------------------------------------
# Gamma via Stirling series with argument raising
# ----------------------------------------------------------------------

def _stirling_threshold(bits: int) -> int:
    # The Stirling terms B_2k / (2k(2k-1) x^(2k-1)) bottom out near
    # exp(-2 pi x); x0 chosen so the floor sits below 2^-(bits+16).
    return int(math.ceil(0.125 * (bits + 16))) + 6


def _log_gamma_raised(x: mpf, bits: int) -> mpf:
    """log Gamma(x) for x >= _stirling_threshold(bits), at current mp.prec.

    log Gamma(x) = (x - 1/2) log x - x + log(2 pi)/2
                   + Sum_{k>=1} B_2k / (2k (2k-1) x^(2k-1)),
    remainder after K terms bounded by the first omitted term for x > 0.
    """
    target = mpf(2) ** (-(bits + 16))
    acc = (x - mpf(1) / 2) * mpmath.log(x) - x + mpmath.log(2 * mpmath.pi) / 2
    xpow = x  # x^(2k-1)
    x2 = x * x
    for k in range(1, 200):
        b2k = bernoulli(2 * k)
        term = (mpf(b2k.numerator) / b2k.denominator) / ((2 * k) * (2 * k - 1) * xpow)
        acc += term
        if abs(term) < target:
            return acc
        xpow *= x2
    raise ArithmeticError("Stirling series failed to meet target precision")


def gamma_fn(x: Scalar, ctx: PrecisionContext) -> HReal:
    """Gamma(x) for real x > 0, relative error <= 2^(16-bits).

    Stirling expansion above an adaptive threshold; below it the argument
    is raised through Gamma(x) = Gamma(x+m) / (x (x+1) ... (x+m-1)).
    """
    with ctx.workprec(_GUARD * 2):
        xv = ctx.mpf(x)
        if xv <= 0:
            raise ValueError(f"gamma_fn requires x > 0, got {xv}")
        x0 = _stirling_threshold(ctx.bits)
        m = max(0, int(math.ceil(x0 - xv)))
        prod = mpf(1)
        for j in range(m):
            prod *= xv + j
        lg = _log_gamma_raised(xv + m, ctx.bits)
        value = mpmath.exp(lg) / prod
    return ctx.real(value)


# ----------------------------------------------------------------------
# Hurwitz zeta via Euler-Maclaurin with explicit remainder bound
# ----------------------------------------------------------------------

_EM_K = 10  # Bernoulli numbers through B_20 in the correction sum


def _poch_and_deriv(s: mpf, m: int) -> tuple[mpf, mpf]:
    """Rising factorial s(s+1)...(s+m-1) and its s-derivative.

    The derivative is assembled as Sum_j prod_{i != j} (s+i) so arguments
    where some factor vanishes stay well defined.
    """
    factors = [s + i for i in range(m)]
    poch = mpf(1)
    for f in factors:
        poch *= f
    # prefix[j] = prod_{i<j}, suffix[j] = prod_{i>j}
    prefix = [mpf(1)] * (m + 1)
    for j in range(m):
        prefix[j + 1] = prefix[j] * factors[j]
    suffix = [mpf(1)] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] * factors[j]
    dpoch = mpf(0)
    for j in range(m):
        dpoch += prefix[j] * suffix[j + 1]
    return poch, dpoch


def _em_choose_M(s: float, a: float, bits: int) -> int:
    """Smallest power-of-two shift count M whose Euler-Maclaurin remainder
    bound (first omitted term, valid for real s > -(2K+1)) meets the
    target 2^-(bits+16) relative to the leading scale."""
    b = bernoulli(2 * _EM_K + 2)
    log_coeff = math.log(abs(b.numerator) / b.denominator) - math.lgamma(2 * _EM_K + 3)
    scale = max(0.0, -s * math.log(a))  # log of a^(-s), the leading term size
    target_log = -(bits + 16) * math.log(2) + scale
    M = 8
    while M < 1 << 24:
        poch_log = 0.0
        ok = True
        for i in range(2 * _EM_K + 1):
            f = abs(s + i)
            if f == 0:
                ok = False
                break
            poch_log += math.log(f)
        if not ok:
            M *= 2
            continue
        bound_log = log_coeff + poch_log + (-s - 2 * _EM_K - 1) * math.log(M + a)
        if bound_log < target_log:
            return M
        M *= 2
    raise ArithmeticError("Euler-Maclaurin shift count exceeded budget")


def hurwitz_zeta(s: Scalar, a: Scalar, ctx: PrecisionContext) -> tuple[HReal, HReal]:
    """zeta(s, a) = Sum_{n>=0} (n+a)^(-s), continued, for real s != 1,
    a in (0, 1].  Returns (value, remainder_bound).

    Euler-Maclaurin with K = 10 correction terms (Bernoulli through B_20):

      zeta(s,a) = Sum_{n<M} (n+a)^(-s) + (M+a)^(1-s)/(s-1) + (M+a)^(-s)/2
                + Sum_{k=1}^{K} B_2k/(2k)! (s)_{2k-1} (M+a)^(-s-2k+1) + R

    with |R| <= |B_{2K+2}/(2K+2)! (s)_{2K+1} (M+a)^(-s-2K-1)| for real
    s > -(2K+1).  M is chosen adaptively so the bound meets the context
    precision; the achieved bound is returned alongside the value.
    """
    with ctx.workprec(_GUARD):
        sv = ctx.mpf(s)
        av = ctx.mpf(a)
        if sv == 1:
            raise ValueError("hurwitz_zeta has a pole at s = 1")
        if not (0 < av <= 1):
            raise ValueError(f"hurwitz_zeta requires a in (0, 1], got {av}")
        if sv <= -(2 * _EM_K - 1):
            raise ValueError(
                f"Euler-Maclaurin with K={_EM_K} only continues to s > {-(2 * _EM_K - 1)}"
            )
        M = _em_choose_M(float(sv), float(av), ctx.bits)
        acc = mpf(0)
        for n in range(M):
            acc += (n + av) ** (-sv)
        w = M + av
        acc += w ** (1 - sv) / (sv - 1)
        acc += w ** (-sv) / 2
        wpow = w ** (-sv - 1)  # w^(-s-2k+1) at k=1
        w2 = w * w
        for k in range(1, _EM_K + 1):
            b2k = bernoulli(2 * k)
            coeff = mpf(b2k.numerator) / (b2k.denominator * mpf(math.factorial(2 * k)))
            poch, _ = _poch_and_deriv(sv, 2 * k - 1)
            acc += coeff * poch * wpow
            wpow /= w2
        b_next = bernoulli(2 * _EM_K + 2)
        coeff = mpf(b_next.numerator) / (b_next.denominator * mpf(math.factorial(2 * _EM_K + 2)))
        poch, _ = _poch_and_deriv(sv, 2 * _EM_K + 1)
        bound = abs(coeff * poch * w ** (-sv - 2 * _EM_K - 1))
    return ctx.real(acc), ctx.real(bound)


def hurwitz_zeta_ds(s: Scalar, a: Scalar, ctx: PrecisionContext) -> tuple[HReal, HReal]:
    """d/ds zeta(s, a) by term-wise differentiation of the same
    Euler-Maclaurin formula as hurwitz_zeta.  Returns (value, bound);
    the bound is the differentiated first omitted term with a safety
    factor of 4 (conservative in practice, validated against quadrature
    oracles in the test suite)."""
    with ctx.workprec(_GUARD):
        sv = ctx.mpf(s)
        av = ctx.mpf(a)
        if sv == 1:
            raise ValueError("hurwitz_zeta_ds has a pole at s = 1")
        if not (0 < av <= 1):
            raise ValueError(f"hurwitz_zeta_ds requires a in (0, 1], got {av}")
        if sv <= -(2 * _EM_K - 1):
            raise ValueError(
                f"Euler-Maclaurin with K={_EM_K} only continues to s > {-(2 * _EM_K - 1)}"
            )
        M = _em_choose_M(float(sv), float(av), ctx.bits)
        acc = mpf(0)
        for n in range(M):
            t = n + av
            acc -= mpmath.log(t) * t ** (-sv)
        w = M + av
        logw = mpmath.log(w)
        acc += w ** (1 - sv) * (-logw / (sv - 1) - 1 / (sv - 1) ** 2)
        acc -= logw * w ** (-sv) / 2
        wpow = w ** (-sv - 1)
        w2 = w * w
        for k in range(1, _EM_K + 1):
            b2k = bernoulli(2 * k)
            coeff = mpf(b2k.numerator) / (b2k.denominator * mpf(math.factorial(2 * k)))
            poch, dpoch = _poch_and_deriv(sv, 2 * k - 1)
            acc += coeff * (dpoch - poch * logw) * wpow
            wpow /= w2
        b_next = bernoulli(2 * _EM_K + 2)
        coeff = mpf(b_next.numerator) / (b_next.denominator * mpf(math.factorial(2 * _EM_K + 2)))
        poch, dpoch = _poch_and_deriv(sv, 2 * _EM_K + 1)
        bound = 4 * abs(coeff) * (abs(dpoch) + abs(poch) * logw) * w ** (-sv - 2 * _EM_K - 1)
    return ctx.real(acc), ctx.real(bound)


# ----------------------------------------------------------------------
# zeta(j) for integer j >= 2, independent of hurwitz_zeta
# ----------------------------------------------------------------------

def zeta_int(j: int, ctx: PrecisionContext) -> HReal:
    """zeta(j) for integer j >= 2 through the alternating series
    eta(j) = Sum (-1)^(n-1) n^(-j) accelerated with Chebyshev weights
    (Cohen-Rodriguez Villegas-Zagier), then zeta = eta / (1 - 2^(1-j)).

    The acceleration error decays like (3 + sqrt 8)^(-n), so n is chosen
    from the context precision.  Entirely independent of the
    Euler-Maclaurin evaluator, which makes the pair a two-route check.
    """
    if not isinstance(j, int) or j < 2:
        raise ValueError(f"zeta_int requires an integer j >= 2, got {j!r}")
    with ctx.workprec(_GUARD):
        n = int((ctx.bits + 16) * math.log(2) / math.log(3 + math.sqrt(8))) + 4
        d = (3 + 2 * mpmath.sqrt(2)) ** n
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        acc = mpf(0)
        for k in range(n):
            c = b - c
            acc += c * mpf(k + 1) ** (-j)
            b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
        eta = acc / d
        value = eta / (1 - mpf(2) ** (1 - j))
    return ctx.real(value)


# ----------------------------------------------------------------------
# Truncated Laurent series at s = 1
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FormalSeries:
    """Sum_{n=0}^{N} c_n (s-1)^n plus an optional simple pole p/(s-1).

    coefficients holds c_0..c_N; the length is fixed at construction and
    binary operations truncate to the shorter operand (for products and
    quotients involving poles, to the order through which the result is
    determined by the operands).
    """

    coefficients: tuple[HReal, ...]  # c_0 .. c_N
    pole: HReal                      # coefficient of (s-1)^(-1)
    ctx: PrecisionContext

    @staticmethod
    def make(coeffs: Iterable[Scalar], ctx: PrecisionContext,
             pole: Scalar = 0) -> "FormalSeries":
        return FormalSeries(tuple(ctx.real(c) for c in coeffs), ctx.real(pole), ctx)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, n: int) -> HReal:
        """Coefficient of (s-1)^n; n = -1 addresses the pole."""
        if n == -1:
            return self.pole
        return self.coefficients[n]

    def __repr__(self) -> str:
        parts = []
        if self.pole.val != 0:
            parts.append(f"{mpmath.nstr(self.pole.val, 8)}/(s-1)")
        for n, c in enumerate(self.coefficients):
            parts.append(f"{mpmath.nstr(c.val, 8)}*(s-1)^{n}")
        return "FormalSeries(" + " + ".join(parts) + ")"


def _to_offset_list(f: FormalSeries) -> tuple[int, list[mpf]]:
    """(e, L) with the series equal to Sum_i L[i] (s-1)^(e+i)."""
    if f.pole.val != 0:
        return -1, [f.pole.val] + [c.val for c in f.coefficients]
    return 0, [c.val for c in f.coefficients]


def _from_offset_list(e: int, L: Sequence[mpf], top: int,
                      ctx: PrecisionContext) -> FormalSeries:
    """Rebuild a FormalSeries from exponents e..top; exponents below -1
    must carry zero coefficients (checked by callers)."""
    pole = mpf(0)
    coeffs = [mpf(0)] * (top + 1)
    for i, v in enumerate(L):
        n = e + i
        if n > top:
            break
        if n == -1:
            pole = v
        elif n >= 0:
            coeffs[n] = v
    return FormalSeries(tuple(HReal(c, ctx) for c in coeffs), HReal(pole, ctx), ctx)


def series_ops(a: FormalSeries, b: FormalSeries, kind: str) -> FormalSeries:
    """add / mul / div on truncated Laurent series.

    Results are truncated to the order through which they are fully
    determined by the operands' known coefficients.  mul raises if the
    product would carry a double pole; div raises on an identically zero
    divisor or a quotient with a pole of order >= 2.
    """
    if a.ctx.bits != b.ctx.bits:
        raise ValueError("operands bound to different precision contexts")
    ctx = a.ctx
    ea, La = _to_offset_list(a)
    eb, Lb = _to_offset_list(b)
    ta = ea + len(La) - 1  # top exponent known for a
    tb = eb + len(Lb) - 1

    with ctx.workprec(_GUARD):
        if kind == "add":
            top = min(ta, tb)
            e = min(ea, eb)
            out = [mpf(0)] * (top - e + 1)
            for i, v in enumerate(La):
                n = ea + i
                if n <= top:
                    out[n - e] += v
            for i, v in enumerate(Lb):
                n = eb + i
                if n <= top:
                    out[n - e] += v
            return _from_offset_list(e, out, top, ctx)

        if kind == "mul":
            e = ea + eb
            top = min(ta + eb, tb + ea)
            out = [mpf(0)] * (top - e + 1)
            for i, va in enumerate(La):
                for jj, vb in enumerate(Lb):
                    n = e + i + jj
                    if n <= top:
                        out[n - e] += va * vb
            if e <= -2:
                for n in range(e, -1):
                    if out[n - e] != 0:
                        raise ArithmeticError(
                            "product carries a pole of order >= 2")
                out = out[-1 - e:]
                e = -1
            return _from_offset_list(e, out, top, ctx)

        if kind == "div":
            # Strip leading zero coefficients of the divisor.
            fb = 0
            while fb < len(Lb) and Lb[fb] == 0:
                fb += 1
            if fb == len(Lb):
                raise ZeroDivisionError("division by identically zero series")
            fa = 0
            while fa < len(La) and La[fa] == 0:
                fa += 1
            if fa == len(La):
                return FormalSeries.make([0] * (a.order + 1), ctx)
            ea_first = ea + fa
            eb_first = eb + fb
            eq = ea_first - eb_first
            if eq < -1:
                raise ArithmeticError("quotient carries a pole of order >= 2")
            # Quotient exponents valid through min(ta, tb + eq) - eb_first
            top = min(ta, tb + eq) - eb_first
            if top < eq:
                raise ArithmeticError("operands too short to determine quotient")
            num = La[fa:]
            den = Lb[fb:]
            nq = top - eq + 1
            q = [mpf(0)] * nq
            rem = list(num) + [mpf(0)] * max(0, nq - len(num))
            for i in range(nq):
                q[i] = rem[i] / den[0]
                for jj in range(1, min(len(den), nq - i)):
                    rem[i + jj] -= q[i] * den[jj]
            return _from_offset_list(eq, q, top, ctx)

    raise ValueError(f"unknown series operation kind: {kind!r}")
