"""
One-dimensional cellular automata on eventually periodic configurations.

A local rule F: S^(2r+1) -> S is held as a lookup table indexed by the
neighborhood code, the neighborhood read as a base-s number with the
leftmost cell most significant.  That puts the elementary rule numbers in
their usual form: bit 4a+2b+c of the rule number is F(a, b, c).
"""

import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import yaml
from numpy.lib.stride_tricks import sliding_window_view

from grossca.errors import DomainError, RuleError
from grossca.modules.configuration import (
    SYMBOL_DIGITS,
    Configuration,
    as_alphabet,
    canonicalize,
    window,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalRule:
    alphabet: object
    radius: int
    table: Tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if not isinstance(self.radius, int) or self.radius < 0:
            raise RuleError(f"rule radius must be a non-negative integer, got {self.radius!r}")
        expected = self.alphabet.size ** self.width
        if len(self.table) != expected:
            raise RuleError(f"rule table has {len(self.table)} entries, expected {expected}")
        for value in self.table:
            if not 0 <= value < self.alphabet.size:
                raise RuleError(f"rule output {value} out of range for alphabet of size {self.alphabet.size}")

    @property
    def width(self):
        return 2 * self.radius + 1

    @property
    def lookup(self):
        return np.asarray(self.table, dtype=np.int64)

    @property
    def place_values(self):
        """s^(2r), ..., s, 1 for the cells of a neighborhood, left to right."""
        return self.alphabet.size ** np.arange(self.width - 1, -1, -1, dtype=np.int64)

    def __call__(self, *neighborhood):
        if len(neighborhood) == 1 and not isinstance(neighborhood[0], int):
            neighborhood = tuple(neighborhood[0])
        return self.table[neighborhood_code(neighborhood, self.alphabet.size, self.width)]

    def __str__(self):
        return self.name or f"table rule (s={self.alphabet.size}, r={self.radius})"


def neighborhood_code(neighborhood, s, width):
    if len(neighborhood) != width:
        raise RuleError(f"neighborhood {tuple(neighborhood)} has length {len(neighborhood)}, expected {width}")
    code = 0
    for symbol in neighborhood:
        if isinstance(symbol, bool) or not isinstance(symbol, (int, np.integer)) or not 0 <= symbol < s:
            raise RuleError(f"neighborhood symbol {symbol!r} out of range for alphabet of size {s}")
        code = code * s + symbol
    return code


def _parse_neighborhood(key, s):
    if isinstance(key, str):
        symbols = tuple(SYMBOL_DIGITS.find(ch.lower()) for ch in key)
        if any(v < 0 for v in symbols):
            raise RuleError(f"neighborhood {key!r} contains a non-symbol character")
        return symbols
    if not isinstance(key, (tuple, list)):
        raise RuleError(f"neighborhood key {key!r} must be a quoted string or a sequence of symbols")
    return tuple(key)


def rule_from_table(alphabet, radius, entries, name=""):
    """
    Build a rule from (neighborhood, output) pairs or a mapping.

    Every neighborhood in S^(2r+1) must appear exactly once.
    """
    alphabet = as_alphabet(alphabet)
    s = alphabet.size
    if isinstance(radius, bool) or not isinstance(radius, int) or radius < 0:
        raise RuleError(f"rule radius must be a non-negative integer, got {radius!r}")
    width = 2 * radius + 1
    pairs = entries.items() if hasattr(entries, "items") else entries
    table = {}
    for key, output in pairs:
        code = neighborhood_code(_parse_neighborhood(key, s), s, width)
        if code in table:
            raise RuleError(f"duplicate neighborhood {key!r}")
        if not isinstance(output, int) or not 0 <= output < s:
            raise RuleError(f"output {output!r} for neighborhood {key!r} out of range for alphabet of size {s}")
        table[code] = output
    total = s ** width
    if len(table) < total:
        first = next(code for code in range(total) if code not in table)
        digits = np.base_repr(first, base=s).rjust(width, "0").lower()
        raise RuleError(f"rule table is missing {total - len(table)} neighborhoods, first {digits!r}")
    return LocalRule(alphabet, radius, tuple(table[code] for code in range(total)), name)


def rule_from_function(alphabet, radius, fn, name=""):
    """Tabulate fn(*neighborhood) over every neighborhood."""
    alphabet = as_alphabet(alphabet)
    neighborhoods = itertools.product(alphabet.symbols, repeat=2 * radius + 1)
    return LocalRule(alphabet, radius, tuple(fn(*nb) for nb in neighborhoods), name)


def rule_from_wolfram_elementary(number):
    if isinstance(number, bool) or not isinstance(number, int) or not 0 <= number <= 255:
        raise RuleError(f"elementary rule number must be in 0..255, got {number!r}")
    return LocalRule(as_alphabet(2), 1, tuple((number >> code) & 1 for code in range(8)), f"rule {number}")


def rule_from_totalistic(code, s, r):
    """F(neighborhood) is base-s digit k of code, k the neighborhood sum."""
    alphabet = as_alphabet(s)
    if not isinstance(r, int) or r < 0:
        raise RuleError(f"rule radius must be a non-negative integer, got {r!r}")
    sums = (2 * r + 1) * (s - 1) + 1
    if isinstance(code, bool) or not isinstance(code, int) or not 0 <= code < s ** sums:
        raise RuleError(f"totalistic code must be in 0..{s ** sums - 1} for s={s}, r={r}, got {code!r}")
    return rule_from_function(alphabet, r, lambda *nb: (code // s ** sum(nb)) % s,
                              f"totalistic {code} (s={s}, r={r})")


def shift_rule(alphabet=2):
    """σ with σ(x)(i) = x(i+1)."""
    return rule_from_function(alphabet, 1, lambda a, b, c: c, "shift")


def right_shift_rule(alphabet=2):
    return rule_from_function(alphabet, 1, lambda a, b, c: a, "right shift")


def load_rule_table(path):
    """
    Read a rule from YAML:

        alphabet: 2
        range: 1
        table:
          "111": 0
          ...
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Rule file '{path}' not found")
    name = os.path.basename(path)
    try:
        with open(path, 'r', encoding='utf-8') as file:
            data = yaml.safe_load(file) or {}
    except UnicodeDecodeError as e:
        raise RuleError(f"{name}: not valid UTF-8 text at byte {e.start}") from None
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise RuleError(f"{name}: malformed YAML{where}: {getattr(e, 'problem', None) or e}") from None
    if not isinstance(data, dict):
        raise RuleError(f"{name}: expected a mapping with alphabet, range and table")
    for key in ("alphabet", "range", "table"):
        if key not in data:
            raise RuleError(f"{name}: missing '{key}'")
    if not isinstance(data["table"], dict):
        raise RuleError(f"{name}: 'table' must map neighborhoods to outputs")
    radius = data["range"]
    if isinstance(radius, bool) or not isinstance(radius, int) or radius < 0:
        raise RuleError(f"{name}: range must be a non-negative integer, got {radius!r}")
    try:
        alphabet = as_alphabet(data["alphabet"])
    except (TypeError, ValueError) as e:
        raise RuleError(f"{name}: bad alphabet: {e}") from None
    rule = rule_from_table(alphabet, radius, data["table"], data.get("name", name))
    logger.debug(f"Loaded {rule} from {path}")
    return rule


# --- evolution ---

def _apply(rule, values):
    """Rule outputs for every full neighborhood of a 1-d symbol array."""
    windows = sliding_window_view(np.asarray(values, dtype=np.int64), rule.width)
    return rule.lookup[windows @ rule.place_values]


def step(rule, x):
    """
    f(x) exactly.

    Outside [offset - r, end + r - 1] every neighborhood lies inside one
    fill, so the image keeps the fill periods; only that window is computed.
    """
    if rule.alphabet != x.alphabet:
        raise DomainError(f"rule alphabet s={rule.alphabet.size} does not match configuration s={x.alphabet.size}")
    r = rule.radius
    lo, hi = x.offset - r, x.end + r - 1
    left_period, right_period = len(x.left), len(x.right)
    out = _apply(rule, window(x, lo - left_period - r, hi + right_period + r)).tolist()
    left = out[:left_period]
    core = out[left_period:len(out) - right_period]
    right = out[len(out) - right_period:]
    return canonicalize(Configuration(x.alphabet, left, core, lo, right))


def iterate(rule, x, t):
    """f^t(x)."""
    if t < 0:
        raise DomainError(f"number of steps must be >= 0, got {t}")
    for i in range(t):
        x = step(rule, x)
        logger.debug(f"step {i + 1}: {x}")
    return x


def step_cyclic(rule, rows):
    """
    One step of every row of a 2-d array of cyclic configurations.

    Cell i of a row sees cells i-r..i+r modulo the row length.
    """
    rows = np.asarray(rows, dtype=np.int64)
    codes = np.zeros_like(rows)
    for place, d in zip(rule.place_values, range(-rule.radius, rule.radius + 1)):
        codes += np.roll(rows, -d, axis=1) * place
    return rule.lookup[codes]


@dataclass(frozen=True)
class SpacetimeGrid:
    """Rows x, f(x), ..., f^t(x) restricted to [lo, hi]."""

    alphabet: object
    rows: np.ndarray
    lo: int
    hi: int

    @property
    def steps(self):
        return self.rows.shape[0] - 1

    @property
    def columns(self):
        return list(range(self.lo, self.hi + 1))


def spacetime(rule, x, t, lo, hi):
    if hi < lo:
        raise DomainError(f"empty window [{lo}, {hi}]")
    if t < 0:
        raise DomainError(f"number of steps must be >= 0, got {t}")
    rows = [window(x, lo, hi)]
    for _ in range(t):
        x = step(rule, x)
        rows.append(window(x, lo, hi))
    return SpacetimeGrid(x.alphabet, np.array(rows, dtype=np.int64), lo, hi)
