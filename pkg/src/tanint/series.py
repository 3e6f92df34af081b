"""Integrals reducible to the family: J_n by series, L_n exactly.

J_n = int_0^{pi/4} tan^n x / (1 - x) dx expands as sum_i I(n, i).  Since
0 <= x^i <= (pi/4)^i on the domain, the tail after k terms lies in
[0, (pi/4)^k / (1 - pi/4) * I(n, 0)], which gives a two-sided enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .oracle import NumericContext, eval_numeric, magnitude
from .symvalue import SymValue


class InsufficientPrecision(ArithmeticError):
    """Rounding error at the requested digits would swamp the tolerance."""


@dataclass(frozen=True)
class Enclosure:
    lo: object
    hi: object
    terms_used: int

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError("enclosure needs lo <= hi")

    @property
    def width(self):
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def j_series(n: int, eps, digits: int = 50, memo: engine.MemoTable | None = None,
             ctx: NumericContext | None = None) -> Enclosure:
    """Rigorous enclosure of J_n with width below ``eps``.

    Uses the fewest leading terms k such that tail bound plus rounding fits
    in ``eps``.  Each term's rounding error is bounded by 2 * (sum of
    absolute term values) * 10^-digits, which covers cancellation inside the
    exact expression.  Raises InsufficientPrecision when that budget exceeds
    eps / 10.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    ctx = ctx if ctx is not None and ctx.digits == digits else NumericContext(digits)
    mp = ctx.mp
    eps = mp.mpf(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    ulp = mp.mpf(10) ** (-digits)
    q = mp.pi / 4
    # inflate by a few ulps so the bound stays an upper bound after rounding
    tail_scale = eval_numeric(engine.tan_power_integral(n), ctx) / (1 - q) * (1 + 10 * ulp)

    partial = mp.zero
    rounding = mp.zero
    k = 0
    while True:
        tail = q ** k * tail_scale
        if tail + 2 * rounding < eps:
            break
        term = engine.compute(n, k, memo)
        partial += eval_numeric(term, ctx)
        rounding += 2 * magnitude(term, ctx) * ulp
        if 2 * rounding >= eps / 10:
            raise InsufficientPrecision(
                f"{digits} digits cannot certify eps={mp.nstr(eps, 3)} for n={n}; raise digits")
        k += 1
    return Enclosure(partial - rounding, partial + tail + rounding, k)


def l_integral(n: int, memo: engine.MemoTable | None = None) -> SymValue:
    """L_n = int_0^1 arctan^n x dx = (pi/4)^{n+1}/(n+1) + I(2, n).

    Substituting x = tan u turns the integrand into u^n (1 + tan^2 u).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return engine.base_i0(n) + engine.compute(2, n, memo)
