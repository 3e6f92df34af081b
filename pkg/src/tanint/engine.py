"""Exact values of I(n, p) = int_0^{pi/4} x^p tan^n x dx.

Integrating x^p * tan^{n-2} x * sec^2 x by parts gives, for n >= 2,

    I(n, p) + I(n-2, p) = (pi/4)^p / (n-1) - p/(n-1) * I(n-1, p-1)

with base cases I(0, p) = (pi/4)^{p+1}/(p+1) and I(1, p) = S_p, the seed
integral int_0^{pi/4} x^p tan x dx.  S_0 and S_1 have closed forms; higher
seeds stay symbolic.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .symvalue import (
    CATALAN_ATOM,
    LN2_ATOM,
    PI,
    PI_LN2_ATOM,
    SymValue,
    linear_combination,
    pi_pow,
    seed,
)


def quarter_pi_power(p: int) -> SymValue:
    """(pi/4)^p as a SymValue; p = 0 gives the rational 1."""
    if p == 0:
        return SymValue(1)
    return SymValue.atom(pi_pow(p), Fraction(1, 4 ** p))


def base_i0(p: int) -> SymValue:
    """I(0, p) = (pi/4)^{p+1} / (p+1)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    return SymValue.atom(pi_pow(p + 1), Fraction(1, (p + 1) * 4 ** (p + 1)))


def seed_s(q: int) -> SymValue:
    """S_q = int_0^{pi/4} x^q tan x dx.

    S_0 = ln(2)/2 and S_1 = G/2 - (pi/8) ln 2, using
    int_0^{pi/4} ln(cos x) dx = G/2 - (pi/4) ln 2.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if q == 0:
        return SymValue.atom(LN2_ATOM, Fraction(1, 2))
    if q == 1:
        return SymValue(0, {CATALAN_ATOM: Fraction(1, 2), PI_LN2_ATOM: Fraction(-1, 8)})
    return SymValue.atom(seed(q))


def tan_power_integral(n: int) -> SymValue:
    """Closed form of int_0^{pi/4} tan^n x dx as a finite alternating sum."""
    if n < 0:
        raise ValueError("n must be >= 0")
    k = n // 2
    sign = -1 if k % 2 else 1
    if n % 2 == 0:
        head = SymValue.atom(PI, Fraction(sign, 4))
        tail = sum((Fraction((-1) ** (l + k), 2 * l - 1) for l in range(1, k + 1)), Fraction(0))
    else:
        head = SymValue.atom(LN2_ATOM, Fraction(sign, 2))
        tail = sum((Fraction((-1) ** (l + k), 2 * l) for l in range(1, k + 1)), Fraction(0))
    return head + tail


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n, i.e. digamma(n+1) + Euler gamma."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


class MemoTable:
    """Write-once store of computed I(n, p) values.

    ``coupling_sign`` multiplies the p/(n-1) * I(n-1, p-1) term.  The correct
    value is -1; +1 exists only so tests can show the other sign breaks the
    known table values.
    """

    def __init__(self, coupling_sign: int = -1):
        if coupling_sign not in (-1, 1):
            raise ValueError("coupling_sign must be -1 or +1")
        self.coupling_sign = coupling_sign
        self._entries: dict[tuple[int, int], SymValue] = {}
        self._lock = threading.Lock()

    def get(self, n: int, p: int):
        return self._entries.get((n, p))

    def put(self, n: int, p: int, value: SymValue) -> SymValue:
        # first writer wins; later writers get the stored value back
        with self._lock:
            return self._entries.setdefault((n, p), value)

    def __contains__(self, key):
        return key in self._entries

    def __len__(self):
        return len(self._entries)

    def items(self):
        return list(self._entries.items())


_default_memo = MemoTable()


def default_memo() -> MemoTable:
    return _default_memo


def _step(n: int, p: int, memo: MemoTable) -> SymValue:
    if n == 0:
        return base_i0(p)
    if n == 1:
        return seed_s(p)
    pairs = [(Fraction(1, n - 1), quarter_pi_power(p)), (-1, memo.get(n - 2, p))]
    if p:
        pairs.append((Fraction(memo.coupling_sign * p, n - 1), memo.get(n - 1, p - 1)))
    return linear_combination(pairs)


def compute(n: int, p: int, memo: MemoTable | None = None) -> SymValue:
    """Exact I(n, p).

    Fills the table in stages, all needed entries of weight p-1 before any of
    weight p, which is the dependency order of the recurrence.  No recursion,
    so large n does not hit the interpreter stack limit.
    """
    if n < 0 or p < 0:
        raise ValueError("n and p must be >= 0")
    memo = _default_memo if memo is None else memo
    hit = memo.get(n, p)
    if hit is not None:
        return hit
    # (m, q) is needed for (n, p) iff q <= p and m <= n - (p - q)
    for q in range(max(0, p - n), p + 1):
        for m in range(n - (p - q) + 1):
            if (m, q) not in memo:
                memo.put(m, q, _step(m, q, memo))
    return memo.get(n, p)


def table(n_max: int, p_max: int, memo: MemoTable | None = None) -> list[tuple[tuple[int, int], SymValue]]:
    """All I(n, p) with n <= n_max, p <= p_max in (p, n) order."""
    if n_max < 0 or p_max < 0:
        raise ValueError("n_max and p_max must be >= 0")
    memo = _default_memo if memo is None else memo
    return [((n, p), compute(n, p, memo)) for p in range(p_max + 1) for n in range(n_max + 1)]


def recurrence_residual(n: int, p: int, memo: MemoTable | None = None) -> SymValue:
    """I(n,p) + I(n-2,p) + p/(n-1) I(n-1,p-1) - (pi/4)^p/(n-1); zero when consistent."""
    if n < 2:
        raise ValueError("recurrence needs n >= 2")
    memo = _default_memo if memo is None else memo
    pairs = [(1, compute(n, p, memo)), (1, compute(n - 2, p, memo)),
             (Fraction(-1, n - 1), quarter_pi_power(p))]
    if p:
        pairs.append((Fraction(p, n - 1), compute(n - 1, p - 1, memo)))
    return linear_combination(pairs)
