"""Zero-table data model, ingestion, and truncated sums over non-trivial
zeros with the symmetric-pairing summation convention.

A table entry (beta, gamma) stands for the conjugate PAIR rho = beta +
i gamma and rho-bar; every sum combines the pair first,

    term(rho) + term(rho-bar) = 2 Re term(rho),

before accumulating (the symmetric limit over |Im rho| <= T), with
compensated summation.  Conditionally convergent sums (x^rho / rho)
carry no claimed tail bound, only trend data; absolutely convergent
sums (x^rho / (rho (1-rho)), 1/rho, 1/|rho|^2) get density-integral
tail estimates driven by dN(t) ~ (1/2pi) log(t/2pi) dt.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import mpmath
from mpmath import mpf, mpc

from .mpcore import HComplex, HReal, PrecisionContext

# Extra binary digits used inside accumulation loops.
_GUARD = 32

_HERE = os.path.dirname(__file__)

# First zeta ordinates shipped with the package (15 decimals).
FIXTURE_PATH = os.path.join(_HERE, "data", "zeta_zeros_100.txt")


# ----------------------------------------------------------------------
# Data model
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTable:
    """Ordered upper-half-strip zeros of one L-function.

    Each entry represents the conjugate pair rho, rho-bar; when
    pair_with_reflection is set an off-line entry additionally stands
    for 1-rho, 1-rho-bar (unused by shipped tables, which are all
    critical-line tables).
    """

    label: str                       # identifier of the L-function
    betas: tuple[mpf, ...]           # real parts, each in (0, 1)
    gammas: tuple[mpf, ...]          # ordinates, strictly increasing, > 0
    source: str                      # provenance string
    entry_precision: int             # decimal digits of the ordinates
    pair_with_reflection: bool = False

    def __post_init__(self) -> None:
        if len(self.betas) != len(self.gammas):
            raise ValueError("beta/gamma length mismatch")
        prev = mpf(0)
        for i, (b, g) in enumerate(zip(self.betas, self.gammas)):
            if not (0 < b < 1):
                raise ValueError(f"entry {i}: beta {b} outside (0, 1)")
            if g <= prev:
                raise ValueError(f"entry {i}: ordinates not strictly increasing")
            prev = g

    def __len__(self) -> int:
        return len(self.gammas)

    def all_on_critical_line(self) -> bool:
        half = mpf(1) / 2
        return all(b == half for b in self.betas)


@dataclass(frozen=True)
class SumSpec:
    """Truncation and ordering convention for one zero sum.

    Exactly one of T (height cutoff: include pairs with gamma <= T) and
    K (pair count) is set.  deterministic forces a single serial
    accumulation order; this build always accumulates serially, so the
    flag only pins the contract.
    """

    T: Optional[float] = None        # height cutoff, gamma <= T
    K: Optional[int] = None          # number of leading pairs
    ordering: str = "ascending"      # ascending | descending (by gamma)
    deterministic: bool = True

    def __post_init__(self) -> None:
        if (self.T is None) == (self.K is None):
            raise ValueError("exactly one of T, K must be set")
        if self.ordering not in ("ascending", "descending"):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    def select(self, table: ZeroTable) -> range:
        """Indices of the selected pairs in ascending-gamma order."""
        if self.K is not None:
            if self.K < 0 or self.K > len(table):
                raise ValueError(f"K = {self.K} outside table of {len(table)} pairs")
            return range(self.K)
        n = 0
        t = mpf(self.T)
        while n < len(table) and table.gammas[n] <= t:
            n += 1
        return range(n)


# ----------------------------------------------------------------------
# Ingestion
# ----------------------------------------------------------------------

_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def load_zeros(source: Union[bytes, str, io.IOBase], fmt: str = "plain",
               label: str = "zeta", source_name: str = "",
               ctx: Optional[PrecisionContext] = None) -> ZeroTable:
    """Parse a zero table from bytes, text, a readable stream, or a path.

    plain format: UTF-8 text, LF or CRLF, '#'-prefixed comment lines
    ignored, one positive decimal ordinate per non-comment line,
    strictly ascending; beta defaults to 1/2.  csv format: header
    "beta,gamma", decimal columns.  Parse errors report line numbers.
    """
    ctx = ctx or PrecisionContext()
    if isinstance(source, io.IOBase):
        data = source.read()
    elif isinstance(source, str) and "\n" not in source and os.path.exists(source):
        # A newline-free string naming an existing file is read from disk.
        with open(source, "rb") as fh:
            data = fh.read()
        source_name = source_name or source
    else:
        data = source
    text = data.decode("utf-8") if isinstance(data, bytes) else data

    betas: list[mpf] = []
    gammas: list[mpf] = []
    precision = 0
    half = mpf(1) / 2

    def parse_decimal(tok: str, lineno: int) -> mpf:
        tok = tok.strip()
        if not _DECIMAL_RE.match(tok):
            raise ValueError(f"line {lineno}: unparsable decimal {tok!r}")
        return mpf(tok)

    with ctx.workprec(_GUARD):
        lines = text.splitlines()
        if fmt == "plain":
            for lineno, raw in enumerate(lines, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                g = parse_decimal(line, lineno)
                if g <= 0:
                    raise ValueError(f"line {lineno}: ordinate must be positive")
                if gammas and g <= gammas[-1]:
                    raise ValueError(f"line {lineno}: non-monotone ordinate {line}")
                gammas.append(g)
                betas.append(half)
                if "." in line:
                    precision = max(precision, len(line.split(".")[1].rstrip()))
        elif fmt == "csv":
            header_seen = False
            for lineno, raw in enumerate(lines, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if not header_seen:
                    if [c.strip() for c in line.split(",")] != ["beta", "gamma"]:
                        raise ValueError(f"line {lineno}: expected header 'beta,gamma'")
                    header_seen = True
                    continue
                cols = line.split(",")
                if len(cols) != 2:
                    raise ValueError(f"line {lineno}: expected two columns")
                b = parse_decimal(cols[0], lineno)
                g = parse_decimal(cols[1], lineno)
                if not (0 < b < 1):
                    raise ValueError(f"line {lineno}: beta {cols[0]} outside (0, 1)")
                if g <= 0:
                    raise ValueError(f"line {lineno}: ordinate must be positive")
                if gammas and g <= gammas[-1]:
                    raise ValueError(f"line {lineno}: non-monotone ordinate")
                gammas.append(g)
                betas.append(b)
                if "." in cols[1]:
                    precision = max(precision, len(cols[1].split(".")[1].strip()))
        else:
            raise ValueError(f"unknown format {fmt!r}")

    return ZeroTable(label=label, betas=tuple(betas), gammas=tuple(gammas),
                     source=source_name or "<stream>", entry_precision=precision)


def fixture_table(ctx: Optional[PrecisionContext] = None) -> ZeroTable:
    """The embedded 100-ordinate smoke-test table."""
    with open(FIXTURE_PATH, "rb") as fh:
        return load_zeros(fh, "plain", label="zeta",
                          source_name=FIXTURE_PATH, ctx=ctx)


# ----------------------------------------------------------------------
# Core paired summation
# ----------------------------------------------------------------------

def _kahan_step(acc: mpf, comp: mpf, value: mpf) -> tuple[mpf, mpf]:
    """One compensated-summation step."""
    y = value - comp
    t = acc + y
    comp = (t - acc) - y
    return t, comp


def zero_sum(table: ZeroTable, spec: SumSpec,
             term: Callable[[mpc], Union[mpc, mpf, HComplex, HReal]],
             ctx: Optional[PrecisionContext] = None) -> tuple[HReal, int]:
    """Compensated paired sum Sum over selected pairs of 2 Re term(rho).

    term receives rho = beta + i gamma as an mpc evaluated at working
    precision plus guard bits and may return mpc/mpf or their wrapped
    forms.  Raises on an empty selection.  Returns (value, pairs_used).
    """
    ctx = ctx or PrecisionContext()
    idx = spec.select(table)
    if len(idx) == 0:
        raise ValueError("empty selection: truncation excludes every zero pair")
    order: Sequence[int] = idx if spec.ordering == "ascending" else reversed(idx)
    half = mpf(1) / 2
    with ctx.workprec(_GUARD):
        acc = mpf(0)
        comp = mpf(0)
        for i in order:
            rho = mpc(table.betas[i], table.gammas[i])
            v = term(rho)
            if isinstance(v, (HComplex, HReal)):
                v = v.val
            pair = 2 * (v.real if isinstance(v, mpc) else v)
            acc, comp = _kahan_step(acc, comp, pair)
            if table.pair_with_reflection and table.betas[i] != half:
                refl = mpc(1 - table.betas[i], table.gammas[i])
                v = term(refl)
                if isinstance(v, (HComplex, HReal)):
                    v = v.val
                pair = 2 * (v.real if isinstance(v, mpc) else v)
                acc, comp = _kahan_step(acc, comp, pair)
    return ctx.real(acc), len(idx)


# ----------------------------------------------------------------------
# Tail estimates
# ----------------------------------------------------------------------

def _density_integral(T: mpf, p: mpf) -> mpf:
    """(1/2pi) Integral_T^inf t^(-p) log(t/2pi) dt for p > 1, equal to
    (1/2pi) [ log(T/2pi) / ((p-1) T^(p-1)) + 1 / ((p-1)^2 T^(p-1)) ]."""
    twopi = 2 * mpmath.pi
    Tp = T ** (p - 1)
    return (mpmath.log(T / twopi) / ((p - 1) * Tp)
            + 1 / ((p - 1) ** 2 * Tp)) / twopi


def tail_estimate(T: float, p: float, x: float,
                  ctx: Optional[PrecisionContext] = None) -> Optional[HReal]:
    """Heuristic bound for the zero-sum mass above height T when each
    pair contributes at most 2 x^(1/2) / gamma^p:

        2 x^(1/2) * Integral_T^inf t^(-p) dN(t),  dN ~ (1/2pi) log(t/2pi) dt,

    multiplied by a safety factor 2 for the density approximation.
    Returns None (no-bound marker) for p < 2, the conditionally
    convergent regime where no bound is claimed.
    """
    ctx = ctx or PrecisionContext()
    if p < 2:
        return None
    with ctx.workprec(_GUARD):
        Tv = ctx.mpf(T)
        if Tv <= 2 * mpmath.pi:
            raise ValueError("tail estimate requires T > 2 pi")
        est = 2 * mpmath.sqrt(ctx.mpf(x)) * _density_integral(Tv, ctx.mpf(p)) * 2
    return ctx.real(est)


def _selected_height(table: ZeroTable, spec: SumSpec) -> mpf:
    idx = spec.select(table)
    if len(idx) == 0:
        raise ValueError("empty selection: truncation excludes every zero pair")
    return table.gammas[idx[-1]]


# ----------------------------------------------------------------------
# Named sums
# ----------------------------------------------------------------------

def _inv_rho_term(rho: mpc) -> mpc:
    return 1 / rho


def sum_inv_rho(table: ZeroTable, spec: SumSpec,
                ctx: Optional[PrecisionContext] = None) -> tuple[HReal, HReal]:
    """Truncated Sum 1/rho (pairs combine to 2 beta/|rho|^2) plus its
    tailored tail estimate Integral_T^inf t^(-2) dN(t); value + tail
    approximates the target constant 1 + gamma/2 - log(4 pi)/2.

    The tail here is the plain density integral with no safety factor:
    it is a CORRECTION (best estimate of the missing mass), not a bound,
    and on critical-line tables each missing pair contributes
    2 beta/|rho|^2 = 1/|rho|^2, matching the integrand t^(-2) exactly.
    """
    ctx = ctx or PrecisionContext()
    value, _ = zero_sum(table, spec, _inv_rho_term, ctx)
    with ctx.workprec(_GUARD):
        T = _selected_height(table, spec)
        tail = _density_integral(T, mpf(2))
    return value, ctx.real(tail)


def sum_inv_rho_sq(table: ZeroTable, spec: SumSpec,
                   ctx: Optional[PrecisionContext] = None) -> tuple[HReal, HReal]:
    """Truncated Sum 1/|rho|^2 (each pair contributes 2/|rho|^2) plus
    the doubled density-integral tail; value + tail approximates
    2 + gamma - log 4 pi (twice the Sum 1/rho constant when every zero
    sits on the critical line)."""
    ctx = ctx or PrecisionContext()

    def term(rho: mpc) -> mpf:
        return 1 / (rho.real * rho.real + rho.imag * rho.imag)

    value, _ = zero_sum(table, spec, term, ctx)
    with ctx.workprec(_GUARD):
        T = _selected_height(table, spec)
        tail = 2 * _density_integral(T, mpf(2))
    return value, ctx.real(tail)


def cosine_sum(x, table: ZeroTable, spec: SumSpec,
               ctx: Optional[PrecisionContext] = None) -> HReal:
    """Sum over pairs of 2 cos(gamma log x) / (1/4 + gamma^2), the
    critical-line pairing of x^rho x^(-1/2); requires every beta = 1/2
    and x >= 1."""
    ctx = ctx or PrecisionContext()
    if not table.all_on_critical_line():
        raise ValueError("cosine_sum requires a critical-line table (all beta = 1/2)")
    with ctx.workprec(_GUARD):
        xv = ctx.mpf(x)
        if xv < 1:
            raise ValueError(f"cosine_sum requires x >= 1, got {xv}")
        logx = mpmath.log(xv)
        idx = spec.select(table)
        if len(idx) == 0:
            raise ValueError("empty selection: truncation excludes every zero pair")
        order = idx if spec.ordering == "ascending" else reversed(idx)
        acc = mpf(0)
        comp = mpf(0)
        quarter = mpf(1) / 4
        for i in order:
            g = table.gammas[i]
            acc, comp = _kahan_step(acc, comp,
                                    2 * mpmath.cos(g * logx) / (quarter + g * g))
    return ctx.real(acc)


def li_lambda_direct(n: int, table: ZeroTable, spec: SumSpec,
                     ctx: Optional[PrecisionContext] = None) -> HReal:
    """Truncated paired Sum over zeros of (1 - (1 - 1/rho)^n).

    n = 1 collapses to 1/rho and reuses sum_inv_rho's term function so
    the two results are bitwise equal.
    """
    if n < 1:
        raise ValueError(f"li_lambda_direct requires n >= 1, got {n}")
    ctx = ctx or PrecisionContext()
    if n == 1:
        term = _inv_rho_term
    else:
        def term(rho: mpc) -> mpc:
            return 1 - (1 - 1 / rho) ** n
    value, _ = zero_sum(table, spec, term, ctx)
    return value


def S_sum(x, table: ZeroTable, spec: SumSpec,
          ctx: Optional[PrecisionContext] = None) -> tuple[HReal, Optional[HReal]]:
    """Truncated paired Sum x^rho / (rho (1 - rho)) for x > 1, with the
    generic tail_estimate(T, 2, x); the series is absolutely convergent
    so the estimate is a genuine (heuristic-density) bound."""
    ctx = ctx or PrecisionContext()
    with ctx.workprec(_GUARD):
        xv = ctx.mpf(x)
        if xv <= 1:
            raise ValueError(f"S_sum requires x > 1, got {xv}")
        logx = mpmath.log(xv)

    def term(rho: mpc) -> mpc:
        return mpmath.exp(rho * logx) / (rho * (1 - rho))

    value, _ = zero_sum(table, spec, term, ctx)
    T = _selected_height(table, spec)
    return value, tail_estimate(float(T), 2, x, ctx)


def sum_xrho_over_rho(x, table: ZeroTable, spec: SumSpec,
                      ctx: Optional[PrecisionContext] = None) -> HReal:
    """Truncated paired Sum x^rho / rho, the zero-sum side of the
    explicit formulas (conditionally convergent; no tail claimed)."""
    ctx = ctx or PrecisionContext()
    with ctx.workprec(_GUARD):
        xv = ctx.mpf(x)
        if xv <= 0 or xv == 1:
            raise ValueError(f"sum x^rho/rho requires x in (0,1) or x > 1, got {xv}")
        logx = mpmath.log(xv)

    def term(rho: mpc) -> mpc:
        return mpmath.exp(rho * logx) / rho

    value, _ = zero_sum(table, spec, term, ctx)
    return value


def sum_xrho_shifted(x, alpha, table: ZeroTable, spec: SumSpec,
                     ctx: Optional[PrecisionContext] = None) -> HReal:
    """Truncated paired Sum x^rho / (rho - alpha) for real alpha not
    hitting a zero (conditionally convergent; no tail claimed)."""
    ctx = ctx or PrecisionContext()
    with ctx.workprec(_GUARD):
        xv = ctx.mpf(x)
        if xv <= 0 or xv == 1:
            raise ValueError(f"sum x^rho/(rho-alpha) requires x in (0,1) or x > 1, got {xv}")
        logx = mpmath.log(xv)
        av = ctx.mpf(alpha)

    def term(rho: mpc) -> mpc:
        return mpmath.exp(rho * logx) / (rho - av)

    value, _ = zero_sum(table, spec, term, ctx)
    return value


def sum_pf_kernel(x, poles: Sequence, residues: Sequence,
                  table: ZeroTable, spec: SumSpec,
                  ctx: Optional[PrecisionContext] = None) -> HReal:
    """Truncated paired Sum x^rho * Sum_i residues[i]/(rho - poles[i]),
    the zero-sum side of the partial-fraction generalization."""
    ctx = ctx or PrecisionContext()
    with ctx.workprec(_GUARD):
        xv = ctx.mpf(x)
        if xv <= 0 or xv == 1:
            raise ValueError(f"kernel sum requires x in (0,1) or x > 1, got {xv}")
        logx = mpmath.log(xv)
        ps = [ctx.mpf(p) for p in poles]
        rs = [ctx.mpf(r) for r in residues]

    def term(rho: mpc) -> mpc:
        k = mpf(0)
        for p, r in zip(ps, rs):
            k += r / (rho - p)
        return mpmath.exp(rho * logx) * k

    value, _ = zero_sum(table, spec, term, ctx)
    return value
