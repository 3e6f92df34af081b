"""Exact Q-linear combinations of a fixed basis of transcendental constants.

Every integral in the family evaluates to a rational number plus a finite
rational combination of the atoms below.  The atoms are treated as linearly
independent over Q, so two values are equal iff their coefficients agree.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]

PI_POW = "pi_pow"
LN2 = "ln2"
PI_LN2 = "pi_ln2"
CATALAN = "catalan"
SEED = "seed"

_KINDS = (PI_POW, LN2, PI_LN2, CATALAN, SEED)


class SymValueError(ValueError):
    """Malformed or non-canonical serialized value."""


@dataclass(frozen=True, order=False)
class ConstAtom:
    """One basis constant.

    ``index`` is the power j for ``pi^j`` and q for the seed integral
    S_q = int_0^{pi/4} x^q tan x dx; it is 0 for the index-free atoms.
    """

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == PI_POW and self.index < 1:
            raise ValueError("pi power must be >= 1")
        if self.kind == SEED and self.index < 2:
            raise ValueError("seed atoms exist only for q >= 2")
        if self.kind in (LN2, PI_LN2, CATALAN) and self.index != 0:
            raise ValueError(f"{self.kind} takes no index")

    @property
    def name(self) -> str:
        if self.kind == PI_POW:
            return f"pi^{self.index}"
        if self.kind == SEED:
            return f"seed_{self.index}"
        return {LN2: "ln2", PI_LN2: "pi*ln2", CATALAN: "catalan"}[self.kind]

    @classmethod
    def from_name(cls, name: str) -> "ConstAtom":
        fixed = {"ln2": LN2, "pi*ln2": PI_LN2, "catalan": CATALAN}
        if name in fixed:
            return cls(fixed[name])
        m = re.fullmatch(r"pi\^([1-9][0-9]*)", name)
        if m:
            return cls(PI_POW, int(m.group(1)))
        m = re.fullmatch(r"seed_([1-9][0-9]*)", name)
        if m and int(m.group(1)) >= 2:
            return cls(SEED, int(m.group(1)))
        raise SymValueError(f"unknown atom name {name!r}")

    def display_key(self) -> tuple:
        """Sort key for rendering: pi powers descending, then ln2, pi*ln2, G, seeds."""
        if self.kind == PI_POW:
            return (0, -self.index)
        return ({LN2: 2, PI_LN2: 3, CATALAN: 4, SEED: 5}[self.kind], self.index)

    def __repr__(self):
        return self.name


def pi_pow(j: int) -> ConstAtom:
    return ConstAtom(PI_POW, j)


def seed(q: int) -> ConstAtom:
    return ConstAtom(SEED, q)


PI = pi_pow(1)
LN2_ATOM = ConstAtom(LN2)
PI_LN2_ATOM = ConstAtom(PI_LN2)
CATALAN_ATOM = ConstAtom(CATALAN)


class SymValue:
    """Immutable value ``rational + sum(coeff * atom)`` with no zero coefficients."""

    __slots__ = ("_rational", "_terms", "_hash")

    def __init__(self, rational: RationalLike = 0,
                 terms: Mapping[ConstAtom, RationalLike] | None = None):
        self._rational = Fraction(rational)
        clean = {}
        for atom, c in (terms or {}).items():
            if not isinstance(atom, ConstAtom):
                raise TypeError(f"term key must be ConstAtom, got {type(atom).__name__}")
            c = Fraction(c)
            if c:
                clean[atom] = c
        self._terms = MappingProxyType(clean)
        self._hash = None

    @classmethod
    def atom(cls, atom: ConstAtom, coeff: RationalLike = 1) -> "SymValue":
        return cls(0, {atom: coeff})

    @property
    def rational_part(self) -> Fraction:
        return self._rational

    @property
    def terms(self) -> Mapping[ConstAtom, Fraction]:
        return self._terms

    def coefficient(self, atom: ConstAtom) -> Fraction:
        return self._terms.get(atom, Fraction(0))

    def is_zero(self) -> bool:
        return not self._rational and not self._terms

    def is_rational(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymValue(other)
        if not isinstance(other, SymValue):
            return NotImplemented
        terms = dict(self._terms)
        for atom, c in other._terms.items():
            terms[atom] = terms.get(atom, 0) + c
        return SymValue(self._rational + other._rational, terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymValue(other)
        if not isinstance(other, SymValue):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "SymValue":
        c = Fraction(c)
        if not c:
            return ZERO
        return SymValue(self._rational * c, {a: v * c for a, v in self._terms.items()})

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self.scale(1 / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymValue(other)
        if not isinstance(other, SymValue):
            return NotImplemented
        return self._rational == other._rational and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._rational, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"SymValue({to_text(self)})"

    def __str__(self):
        return to_text(self)


ZERO = SymValue()


def add(a: SymValue, b: SymValue) -> SymValue:
    return a + b


def scale(c: RationalLike, a: SymValue) -> SymValue:
    return a.scale(c)


def extract_coefficient(a: SymValue, atom: ConstAtom) -> Fraction:
    return a.coefficient(atom)


def linear_combination(pairs: Iterable[tuple[RationalLike, SymValue]]) -> SymValue:
    rational = Fraction(0)
    terms: dict[ConstAtom, Fraction] = {}
    for c, v in pairs:
        c = Fraction(c)
        if not c:
            continue
        rational += c * v.rational_part
        for atom, k in v.terms.items():
            terms[atom] = terms.get(atom, 0) + c * k
    return SymValue(rational, terms)


# -- serialization ---------------------------------------------------------

_RATIONAL_RE = re.compile(r"(-?[1-9][0-9]*|0)/([1-9][0-9]*)")


def format_rational(q: Fraction) -> str:
    if not q:
        return "0"
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise SymValueError(f"rational must be a string, got {type(text).__name__}")
    if text == "0":
        return Fraction(0)
    m = _RATIONAL_RE.fullmatch(text)
    if not m:
        raise SymValueError(f"malformed rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise SymValueError(f"non-canonical rational {text!r}")
    return q


def to_dict(a: SymValue) -> dict:
    terms = {atom.name: format_rational(c) for atom, c in a.terms.items()}
    return {"rational": format_rational(a.rational_part),
            "terms": dict(sorted(terms.items()))}


def to_json(a: SymValue) -> str:
    return json.dumps(to_dict(a), sort_keys=True, separators=(",", ":"))


def from_dict(obj) -> SymValue:
    if not isinstance(obj, dict) or set(obj) != {"rational", "terms"}:
        raise SymValueError("expected an object with exactly 'rational' and 'terms'")
    if not isinstance(obj["terms"], dict):
        raise SymValueError("'terms' must be an object")
    terms = {}
    for name, c in obj["terms"].items():
        coeff = parse_rational(c)
        if not coeff:
            raise SymValueError(f"zero coefficient stored for {name!r}")
        terms[ConstAtom.from_name(name)] = coeff
    return SymValue(parse_rational(obj["rational"]), terms)


def parse_json(text: str) -> SymValue:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SymValueError(f"invalid JSON: {exc}") from exc
    return from_dict(obj)


# -- rendering -------------------------------------------------------------

def _ordered_terms(a: SymValue):
    """(atom-or-None, coeff) in display order; None stands for the rational part."""
    pis = sorted((t for t in a.terms.items() if t[0].kind == PI_POW),
                 key=lambda t: t[0].display_key())
    rest = sorted((t for t in a.terms.items() if t[0].kind != PI_POW),
                  key=lambda t: t[0].display_key())
    out = list(pis)
    if a.rational_part:
        out.append((None, a.rational_part))
    return out + rest


def _text_term(atom, c: Fraction) -> str:
    num, den = abs(c.numerator), c.denominator
    if atom is None:
        body = str(num) if den == 1 else f"{num}/{den}"
    else:
        sym = "pi" if atom == PI else atom.name
        body = sym if num == 1 else f"{num}*{sym}"
        if den != 1:
            body += f"/{den}"
    return body


def to_text(a: SymValue) -> str:
    """Plain-text form, e.g. ``-pi^2/32 + pi/4 - ln2/2``."""
    parts = _ordered_terms(a)
    if not parts:
        return "0"
    out = []
    for i, (atom, c) in enumerate(parts):
        body = _text_term(atom, c)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _latex_symbol(atom: ConstAtom) -> str:
    if atom.kind == PI_POW:
        if atom.index == 1:
            return r"\pi"
        if atom.index < 10:
            return rf"\pi^{atom.index}"
        return rf"\pi^{{{atom.index}}}"
    if atom.kind == SEED:
        return rf"S_{{{atom.index}}}"
    return {LN2: r"\ln 2", PI_LN2: r"\pi \ln 2", CATALAN: "G"}[atom.kind]


def _latex_term(atom, c: Fraction) -> str:
    num, den = abs(c.numerator), c.denominator
    if atom is None:
        return str(num) if den == 1 else rf"\frac{{{num}}}{{{den}}}"
    sym = _latex_symbol(atom)
    top = sym if num == 1 else f"{num}{sym}"
    return top if den == 1 else rf"\frac{{{top}}}{{{den}}}"


def to_latex(a: SymValue) -> str:
    """LaTeX in the style of the published tables, e.g. ``-\\frac{\\pi^2}{32}+\\frac{\\pi}{4}``."""
    parts = _ordered_terms(a)
    if not parts:
        return "0"
    out = []
    for i, (atom, c) in enumerate(parts):
        sign = "-" if c < 0 else ("" if i == 0 else "+")
        out.append(sign + _latex_term(atom, c))
    return "".join(out)
