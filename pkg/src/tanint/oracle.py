"""High-precision numerical ground truth for the exact engine.

Quadrature is mpmath's tanh-sinh rule run in a private context per
NumericContext, so separate contexts never share working precision.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import mpmath

from . import engine
from .symvalue import CATALAN, LN2, PI_LN2, PI_POW, SEED, ConstAtom, SymValue

GUARD_DIGITS = 5


class QuadratureError(ArithmeticError):
    """Quadrature did not stabilise to the requested precision."""


class NumericContext:
    """Decimal working precision plus a cache of basis-constant values.

    Results are trusted to ``digits``; arithmetic runs at ``digits + 5``.
    """

    def __init__(self, digits: int = 50):
        if digits < 15:
            raise ValueError("digits must be >= 15")
        self.digits = digits
        self.mp = mpmath.MPContext()
        self.mp.dps = digits + GUARD_DIGITS
        self.constant_cache: dict[ConstAtom, mpmath.mpf] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"NumericContext(digits={self.digits})"


def catalan(ctx: NumericContext):
    """Catalan's constant via Ramanujan's accelerated series

        G = (pi/8) ln(2 + sqrt 3) + (3/8) sum_{k>=0} 1 / ((2k+1)^2 C(2k, k))

    whose terms shrink by a factor of about 4 per step.
    """
    mp = ctx.mp
    tol = mp.mpf(10) ** (-mp.dps - 2)
    total = mp.zero
    # term_k = 1/C(2k,k); ratio term_{k+1}/term_k = (k+1)/(2(2k+1))
    inv_binom = mp.one
    k = 0
    while True:
        t = inv_binom / (2 * k + 1) ** 2
        total += t
        if t < tol:
            break
        inv_binom = inv_binom * (k + 1) / (2 * (2 * k + 1))
        k += 1
    return mp.pi / 8 * mp.log(2 + mp.sqrt(3)) + 3 * total / 8


def catalan_alternating(terms: int) -> float:
    """Partial sum of sum (-1)^r / (2r+1)^2; error below the first omitted term."""
    return sum((-1) ** r / (2 * r + 1) ** 2 for r in range(terms))


# -- integrands --------------------------------------------------------------

@dataclass(frozen=True)
class Integrand:
    """Named integrand.  kind is one of family, j, arctan, lncos, const."""

    kind: str
    n: int = 0
    p: int = 0
    value: str = "1"

    def bind(self, mp):
        n, p = self.n, self.p
        if self.kind == "family":
            return lambda x: x ** p * mp.tan(x) ** n
        if self.kind == "j":
            return lambda x: mp.tan(x) ** n / (1 - x)
        if self.kind == "arctan":
            return lambda x: mp.atan(x) ** n
        if self.kind == "lncos":
            return lambda x: mp.log(mp.cos(x))
        if self.kind == "const":
            c = mp.mpf(self.value)
            return lambda x: c
        raise ValueError(f"unknown integrand kind {self.kind!r}")


def family(n: int, p: int) -> Integrand:
    return Integrand("family", n, p)


def j_integrand(n: int) -> Integrand:
    return Integrand("j", n)


def arctan_power(n: int) -> Integrand:
    return Integrand("arctan", n)


def ln_cos() -> Integrand:
    return Integrand("lncos")


def constant(c) -> Integrand:
    return Integrand("const", value=str(c))


def quad(f: Integrand, a, b, ctx: NumericContext, max_pieces: int = 64):
    """Integral of ``f`` over [a, b], good to ``ctx.digits`` digits.

    The interval is split into 1, 2, 4, ... equal pieces until mpmath's
    level-to-level error estimate drops below 10^-(digits+2) relative to
    the result; failing that at ``max_pieces`` raises QuadratureError.
    """
    if not isinstance(f, Integrand):
        raise ValueError("quad expects an Integrand descriptor")
    mp = ctx.mp
    g = f.bind(mp)
    a, b = mp.mpf(a), mp.mpf(b)
    target = mp.mpf(10) ** (-(ctx.digits + 2))
    pieces = 1
    while pieces <= max_pieces:
        pts = [a + (b - a) * i / pieces for i in range(pieces + 1)]
        try:
            val, err = mp.quad(g, pts, error=True)
        except ZeroDivisionError as exc:
            raise QuadratureError(f"{f} is singular on [{a}, {b}]") from exc
        if err <= target * max(1, abs(val)):
            return +val
        pieces *= 2
    raise QuadratureError(f"{f} on [{a}, {b}] did not converge (estimate {err})")


def const_numeric(atom: ConstAtom, ctx: NumericContext):
    hit = ctx.constant_cache.get(atom)
    if hit is not None:
        return hit
    mp = ctx.mp
    if atom.kind == PI_POW:
        val = mp.pi ** atom.index
    elif atom.kind == LN2:
        val = +mp.ln2
    elif atom.kind == PI_LN2:
        val = mp.pi * mp.ln2
    elif atom.kind == CATALAN:
        val = catalan(ctx)
    elif atom.kind == SEED:
        val = quad(family(1, atom.index), 0, mp.pi / 4, ctx)
    else:
        raise ValueError(f"no numeric value for {atom}")
    with ctx._lock:
        return ctx.constant_cache.setdefault(atom, val)


def eval_numeric(v: SymValue, ctx: NumericContext):
    mp = ctx.mp
    total = mp.mpf(v.rational_part.numerator) / v.rational_part.denominator
    for atom, c in v.terms.items():
        total += mp.mpf(c.numerator) / c.denominator * const_numeric(atom, ctx)
    return total


def magnitude(v: SymValue, ctx: NumericContext):
    """Sum of absolute term values; bounds the size of any cancellation."""
    mp = ctx.mp
    total = abs(mp.mpf(v.rational_part.numerator) / v.rational_part.denominator)
    for atom, c in v.terms.items():
        total += abs(mp.mpf(c.numerator) / c.denominator * const_numeric(atom, ctx))
    return total


# -- verification harness ----------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    id: tuple[int, int]
    exact_numeric: object
    quadrature: object
    abs_diff: object
    tolerance: object
    passed: bool


def verify(n_max: int, p_max: int, ctx: NumericContext, tol,
           memo: engine.MemoTable | None = None) -> list[VerifyReport]:
    """Compare every exact I(n, p) in the grid against direct quadrature."""
    mp = ctx.mp
    tol = mp.mpf(tol)
    if tol <= 10 * mp.mpf(10) ** (-ctx.digits):
        raise ValueError("tolerance must exceed 10 ulps of the working precision")
    reports = []
    for p in range(p_max + 1):
        for n in range(n_max + 1):
            exact = eval_numeric(engine.compute(n, p, memo), ctx)
            numeric = quad(family(n, p), 0, mp.pi / 4, ctx)
            diff = abs(exact - numeric)
            reports.append(VerifyReport((n, p), exact, numeric, diff, tol, bool(diff <= tol)))
    return reports
