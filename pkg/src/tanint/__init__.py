"""Exact evaluation of the integrals int_0^{pi/4} x^p tan^n x dx."""

__version__ = "0.1.0"

from .engine import MemoTable, base_i0, compute, harmonic, seed_s, table, tan_power_integral
from .series import Enclosure, j_series, l_integral
from .symvalue import ConstAtom, SymValue, parse_json, to_json

__all__ = [
    "ConstAtom", "Enclosure", "MemoTable", "SymValue", "base_i0", "compute", "harmonic",
    "j_series", "l_integral", "parse_json", "seed_s", "table", "tan_power_integral", "to_json",
]
