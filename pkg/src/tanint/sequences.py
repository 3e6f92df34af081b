"""Coefficient streams from the engine and an OEIS lookup client.

Responses are cached on disk as the raw response body, one file per query,
named by the SHA-256 of the comma-joined terms.  Offline lookups read the
cache and then the fixtures shipped with the package, and never open a
socket.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from importlib import resources
from pathlib import Path

import platformdirs

from . import engine
from .symvalue import ConstAtom

log = logging.getLogger(__name__)

DEFAULT_OEIS_URL = "https://oeis.org/search"
MODES = ("abs", "numerators", "denominators", "scaled_lcm")


class OeisError(Exception):
    pass


class OeisUnavailable(OeisError):
    """No answer could be obtained: network failure, or offline cache miss."""


class OeisParseError(OeisError):
    pass


@dataclass(frozen=True)
class CoeffQuery:
    atom: ConstAtom | str  # a ConstAtom or "rational_part"
    p: int
    parity: str = "all"
    n_max: int = 10
    normalize: str = "raw"

    def __post_init__(self):
        if self.parity not in ("even", "odd", "all"):
            raise ValueError(f"parity must be even, odd or all, not {self.parity!r}")
        if self.n_max < 0 or self.p < 0:
            raise ValueError("n_max and p must be >= 0")
        if self.atom != "rational_part" and not isinstance(self.atom, ConstAtom):
            raise ValueError("atom must be a ConstAtom or 'rational_part'")
        if self.normalize != "raw":
            _split_mode(self.normalize)


def coeff_sequence(q: CoeffQuery, memo: engine.MemoTable | None = None) -> list[Fraction]:
    ns = range(q.n_max + 1)
    if q.parity == "even":
        ns = ns[0::2]
    elif q.parity == "odd":
        ns = ns[1::2]
    out = []
    for n in ns:
        v = engine.compute(n, q.p, memo)
        out.append(v.rational_part if q.atom == "rational_part" else v.coefficient(q.atom))
    return out


def _split_mode(mode: str) -> tuple[bool, str | None]:
    parts = mode.split("+")
    take_abs = "abs" in parts
    rest = [m for m in parts if m != "abs"]
    if len(rest) > 1 or any(m not in MODES for m in rest) or parts.count("abs") > 1:
        raise ValueError(f"unknown normalization {mode!r}")
    return take_abs, rest[0] if rest else None


def normalize(seq: list[Fraction], mode: str) -> list[int]:
    """Turn rationals into integers.

    ``mode`` is one of abs, numerators, denominators, scaled_lcm, optionally
    combined with abs as in ``abs+numerators``.  Plain ``abs`` requires
    integer input.
    """
    if not seq:
        raise ValueError("cannot normalize an empty sequence")
    take_abs, base = _split_mode(mode)
    seq = [Fraction(x) for x in seq]
    if take_abs:
        seq = [abs(x) for x in seq]
    if base is None:
        if any(x.denominator != 1 for x in seq):
            raise ValueError("abs alone needs integer terms; combine with another mode")
        return [int(x) for x in seq]
    if base == "numerators":
        return [x.numerator for x in seq]
    if base == "denominators":
        return [x.denominator for x in seq]
    scale = reduce(math.lcm, (x.denominator for x in seq), 1)
    return [int(x * scale) for x in seq]


def query_terms(q: CoeffQuery, memo: engine.MemoTable | None = None):
    seq = coeff_sequence(q, memo)
    return seq if q.normalize == "raw" else normalize(seq, q.normalize)


# -- OEIS client -------------------------------------------------------------

@dataclass(frozen=True)
class OeisResult:
    query_terms: list[int]
    matches: list[tuple[str, str]]
    from_cache: bool


def query_string(terms) -> str:
    return ",".join(str(int(t)) for t in terms)


def cache_key(query: str) -> str:
    return hashlib.sha256(query.encode("utf-8")).hexdigest()


def cache_dir() -> Path:
    env = os.environ.get("TANINT_CACHE")
    return Path(env) if env else Path(platformdirs.user_cache_dir("tanint")) / "oeis"


def oeis_url() -> str:
    return os.environ.get("TANINT_OEIS_URL", DEFAULT_OEIS_URL)


def parse_response(body: str) -> list[tuple[str, str]]:
    """Extract (A-number, name) pairs from an OEIS ``fmt=json`` body.

    Accepts both the bare list format and the older object with a
    ``results`` key (null when nothing matched).
    """
    try:
        data = json.loads(body)
    except json.JSONDecodeError as exc:
        raise OeisParseError(f"response is not JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("results") or []
    if data is None:
        data = []
    if not isinstance(data, list):
        raise OeisParseError("expected a list of results")
    matches = []
    for entry in data:
        try:
            matches.append((f"A{int(entry['number']):06d}", str(entry["name"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise OeisParseError(f"malformed result entry: {entry!r}") from exc
    return matches


def _fixture_body(key: str) -> str | None:
    res = resources.files("tanint").joinpath("fixtures", "oeis", f"{key}.json")
    return res.read_text(encoding="utf-8") if res.is_file() else None


def _fetch(query: str, timeout: float = 20.0) -> str:
    url = oeis_url() + "?" + urllib.parse.urlencode({"q": query, "fmt": "json"})
    log.info("GET %s", url)
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            return resp.read().decode("utf-8")
    except (urllib.error.URLError, OSError) as exc:
        raise OeisUnavailable(f"OEIS request failed: {exc}") from exc


def oeis_lookup(terms, offline: bool = False) -> OeisResult:
    terms = [int(t) for t in terms]
    if not 1 <= len(terms) <= 50:
        raise ValueError("OEIS queries take between 1 and 50 terms")
    query = query_string(terms)
    key = cache_key(query)
    path = cache_dir() / f"{key}.json"

    body = path.read_text(encoding="utf-8") if path.is_file() else _fixture_body(key)
    if body is not None:
        return OeisResult(terms, parse_response(body), True)
    if offline:
        raise OeisUnavailable(f"offline and no cached response for {query}")

    body = _fetch(query)
    matches = parse_response(body)  # never cache a body we cannot read back
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".{os.getpid()}.tmp")
    tmp.write_text(body, encoding="utf-8")
    os.replace(tmp, path)
    return OeisResult(terms, matches, False)
