"""
Bi-infinite configurations x: Z -> S held as eventually periodic sequences.

A Configuration is (left fill, core, offset, right fill):

    ... left left left | core[0] ... core[-1] | right right right ...
                        ^ offset              ^ offset + len(core)

The left fill tiles (-inf, offset-1] with its last symbol at offset-1, the
right fill tiles [offset+len(core), +inf) with its first symbol at
offset+len(core).  Canonical forms (primitive fills, minimal core, empty core
moved next to 0) make equality structural.
"""

import logging
import math
import os
import random
from dataclasses import dataclass, field
from typing import Optional, Tuple

from grossca.errors import AlphabetMismatchError, ConfigSyntaxError, DomainError

logger = logging.getLogger(__name__)

SYMBOL_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
CONFIG_KEYS = ("left", "core", "offset", "right")


@dataclass(frozen=True)
class Alphabet:
    """Symbols 0..size-1, size >= 2."""

    size: int

    def __post_init__(self):
        if isinstance(self.size, bool) or not isinstance(self.size, int) or self.size < 2:
            raise DomainError(f"alphabet size must be an integer >= 2, got {self.size!r}")
        if self.size > len(SYMBOL_DIGITS):
            raise DomainError(f"alphabet size {self.size} exceeds the {len(SYMBOL_DIGITS)} printable symbols")

    @property
    def symbols(self):
        return range(self.size)

    def check_symbol(self, symbol):
        if isinstance(symbol, bool) or not isinstance(symbol, int) or not 0 <= symbol < self.size:
            raise DomainError(f"symbol {symbol!r} out of range for alphabet of size {self.size}")
        return symbol


def as_alphabet(value):
    return value if isinstance(value, Alphabet) else Alphabet(int(value))


@dataclass(frozen=True)
class Word:
    """A finite word, optionally pinned to the interval [lo, lo+len-1]."""

    symbols: Tuple[int, ...]
    lo: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))

    @property
    def hi(self):
        return None if self.lo is None else self.lo + len(self.symbols) - 1

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self):
        return format_word(self.symbols)


@dataclass(frozen=True)
class Configuration:
    alphabet: Alphabet
    left: Tuple[int, ...]
    core: Tuple[int, ...]
    offset: int
    right: Tuple[int, ...]
    _end: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("left", "core", "right"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.left or not self.right:
            raise DomainError("left and right fills must be non-empty words")
        for symbol in self.left + self.core + self.right:
            self.alphabet.check_symbol(symbol)
        object.__setattr__(self, "_end", self.offset + len(self.core))

    @property
    def end(self):
        """First index tiled by the right fill."""
        return self._end

    def __call__(self, i):
        return eval_at(self, i)

    def __str__(self):
        return format_config(self)


def build_config(alphabet, left, core, offset, right):
    """Construct and canonicalize."""
    return canonicalize(Configuration(as_alphabet(alphabet), tuple(left), tuple(core), offset, tuple(right)))


def constant(alphabet, a):
    """x_a, with x_a(i) = a for every i."""
    return build_config(alphabet, (a,), (), 0, (a,))


def eval_at(x, i):
    if i < x.offset:
        return x.left[(i - x.offset) % len(x.left)]
    if i < x.end:
        return x.core[i - x.offset]
    return x.right[(i - x.end) % len(x.right)]


def window(x, lo, hi):
    """Symbols x(lo), ..., x(hi) as a tuple (empty when hi < lo)."""
    return tuple(eval_at(x, i) for i in range(lo, hi + 1))


def restrict(x, i, j):
    """The word x[i, j]."""
    if j < i:
        raise DomainError(f"empty interval [{i}, {j}]")
    return Word(window(x, i, j), lo=i)


def primitive_root(word):
    """Shortest u with word == u^k."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def _rotate(word, k):
    k %= len(word)
    return word[k:] + word[:k]


def canonicalize(x):
    left = primitive_root(tuple(x.left))
    right = primitive_root(tuple(x.right))
    core = list(x.core)
    offset = x.offset

    # core symbols that continue the left tiling belong to the left fill
    start = 0
    while start < len(core) and core[start] == left[0]:
        left = _rotate(left, 1)
        start += 1
    core = core[start:]
    offset += start

    while core and core[-1] == right[-1]:
        right = _rotate(right, -1)
        core.pop()

    if not core:
        # slide the boundary toward 0 while both tilings agree across it
        while offset > 0 and left[-1] == right[-1]:
            left, right = _rotate(left, -1), _rotate(right, -1)
            offset -= 1
        while offset < 0 and left[0] == right[0]:
            left, right = _rotate(left, 1), _rotate(right, 1)
            offset += 1

    return Configuration(x.alphabet, left, tuple(core), offset, right)


def is_canonical(x):
    return canonicalize(x) == x


def check_alphabets(x, y):
    if x.alphabet != y.alphabet:
        raise AlphabetMismatchError(x.alphabet.size, y.alphabet.size)


def equals(x, y):
    """x(i) == y(i) for every i in Z."""
    check_alphabets(x, y)
    return canonicalize(x) == canonicalize(y)


def translate(x, k):
    """y with y(i) = x(i + k); translate(x, 1) is the left shift."""
    return canonicalize(Configuration(x.alphabet, x.left, x.core, x.offset - k, x.right))


def _materialize(x, lo, hi, left_period=None, right_period=None):
    """
    Fills and core of x re-anchored so the core spans [lo, hi].
    Requires lo <= x.offset and hi >= x.end - 1.
    """
    left_period = left_period or len(x.left)
    right_period = right_period or len(x.right)
    left = window(x, lo - left_period, lo - 1)
    core = list(window(x, lo, hi))
    right = window(x, hi + 1, hi + right_period)
    return left, core, right


def set_at(x, i, a):
    """Copy of x with x(i) replaced by a."""
    x.alphabet.check_symbol(a)
    lo, hi = min(x.offset, i), max(x.end - 1, i)
    left, core, right = _materialize(x, lo, hi)
    core[i - lo] = a
    return canonicalize(Configuration(x.alphabet, left, tuple(core), lo, right))


def pointwise_add(x, y):
    """(x ⊕ y)(i) = (x(i) + y(i)) mod s."""
    check_alphabets(x, y)
    s = x.alphabet.size
    lo = min(x.offset, y.offset)
    hi = max(x.end, y.end) - 1
    left_period = math.lcm(len(x.left), len(y.left))
    right_period = math.lcm(len(x.right), len(y.right))
    xl, xc, xr = _materialize(x, lo, hi, left_period, right_period)
    yl, yc, yr = _materialize(y, lo, hi, left_period, right_period)

    def add(u, v):
        return tuple((p + q) % s for p, q in zip(u, v))

    return canonicalize(Configuration(x.alphabet, add(xl, yl), add(xc, yc), lo, add(xr, yr)))


def comparison_window(x, y):
    """
    [lo, hi] outside of which x and y both sit in their fills, widened by one
    full common period on each side; agreement on it decides equality.
    """
    lo = min(x.offset, y.offset) - math.lcm(len(x.left), len(y.left))
    hi = max(x.end, y.end) + math.lcm(len(x.right), len(y.right)) - 1
    return lo, hi


# --- text form ---

def format_word(symbols):
    return "".join(SYMBOL_DIGITS[s] for s in symbols)


def parse_word(text, alphabet, key):
    symbols = []
    for ch in text:
        value = SYMBOL_DIGITS.find(ch.lower())
        if value < 0 or value >= alphabet.size:
            raise ConfigSyntaxError(f"symbol out of range for alphabet of size {alphabet.size} in {key}", ch)
        symbols.append(value)
    return tuple(symbols)


def parse_config(text, alphabet):
    """
    Parse `left=<word> core=<word|-> offset=<int> right=<word>`.

    Returns the canonicalized configuration.
    """
    alphabet = as_alphabet(alphabet)
    fields = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ConfigSyntaxError("expected key=value", token)
        if key not in CONFIG_KEYS:
            raise ConfigSyntaxError("unknown key", key)
        if key in fields:
            raise ConfigSyntaxError("duplicate key", key)
        fields[key] = value
    missing = [key for key in CONFIG_KEYS if key not in fields]
    if missing:
        raise ConfigSyntaxError("missing key", missing[0])

    try:
        offset = int(fields["offset"])
    except ValueError:
        raise ConfigSyntaxError("offset is not an integer", fields["offset"]) from None
    words = {}
    for key in ("left", "core", "right"):
        value = fields[key]
        if value in ("", "-"):
            if key != "core":
                raise ConfigSyntaxError(f"empty {key} fill word", f"{key}={value}")
            words[key] = ()
        else:
            words[key] = parse_word(value, alphabet, key)
    return build_config(alphabet, words["left"], words["core"], offset, words["right"])


def format_config(x):
    core = format_word(x.core) or "-"
    return f"left={format_word(x.left)} core={core} offset={x.offset} right={format_word(x.right)}"


def read_configurations(path, alphabet):
    """ Read one configuration per line; blank lines and `#` comments are skipped """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Configuration file '{path}' not found")
    configs = []
    with open(path, 'rb') as file:
        for number, raw in enumerate(file, start=1):
            try:
                line = raw.decode('utf-8')
            except UnicodeDecodeError as e:
                bad = raw[e.start:e.start + 1]
                raise ConfigSyntaxError(f"{os.path.basename(path)}:{number}: not valid UTF-8 text", bad) from None
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                configs.append(parse_config(text, alphabet))
            except ConfigSyntaxError as e:
                raise ConfigSyntaxError(f"{os.path.basename(path)}:{number}: {e}") from None
    logger.debug(f"Read {len(configs)} configurations from {path}")
    return configs


# --- sampling ---

def random_config(seed, alphabet, max_core, max_period):
    """
    Seeded random configuration.

    Fill periods are uniform in [1, max_period], the core length n is uniform
    in [0, max_core], the offset is uniform in [-n, 0] (so a non-empty core
    covers index 0 or ends right before it) and every symbol is uniform over
    the alphabet.  The result is canonicalized.
    """
    if max_core < 0 or max_period < 1:
        raise DomainError(f"need max_core >= 0 and max_period >= 1, got {max_core}, {max_period}")
    alphabet = as_alphabet(alphabet)
    rng = random.Random(seed)
    s = alphabet.size
    left_len = rng.randint(1, max_period)
    right_len = rng.randint(1, max_period)
    core_len = rng.randint(0, max_core)
    offset = rng.randint(-core_len, 0)
    left = tuple(rng.randrange(s) for _ in range(left_len))
    core = tuple(rng.randrange(s) for _ in range(core_len))
    right = tuple(rng.randrange(s) for _ in range(right_len))
    return build_config(alphabet, left, core, offset, right)


def random_window(seed, alphabet, lo, hi, fill=0):
    """Seeded uniform core on [lo, hi] between constant `fill` tails."""
    if hi < lo:
        raise DomainError(f"empty window [{lo}, {hi}]")
    alphabet = as_alphabet(alphabet)
    alphabet.check_symbol(fill)
    rng = random.Random(seed)
    core = tuple(rng.randrange(alphabet.size) for _ in range(hi - lo + 1))
    return build_config(alphabet, (fill,), core, lo, (fill,))
