"""
Exact arithmetic for grossone-valued quantities.

Two value types cover every number the toolkit produces:

* GrossLinear  -- a·① + b with integer a, b (exponents, extended indices).
* GrossQuantity -- a finite sum of terms c·base^(a·① + b) with rational c,
  e.g. 2^-(①+3), 2^(2①+1), 2^① + 1 or 1 - 2^-(①).

A GrossQuantity is stored as groups keyed by (base, a) where base is never a
perfect power; the finite part b of the exponent is folded into the rational
coefficient.  Terms with a = 0 are plain rationals and collapse into a single
constant group keyed (2, 0).  With that layout two quantities are equal as
values exactly when their groups are equal, and ordering only needs the
dominant group of a difference.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from grossca.errors import DomainError, UnsupportedProductError

logger = logging.getLogger(__name__)

GROSSONE = "①"
GROSSONE_ASCII = "G"

_CONSTANT_KEY = (2, 0)


@dataclass(frozen=True, order=True)
class GrossLinear:
    """a·① + b, ordered lexicographically on (a, b)."""

    a: int = 0
    b: int = 0

    def __post_init__(self):
        for name in ("a", "b"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"GrossLinear.{name} must be an int, got {type(value).__name__}")

    @property
    def is_finite(self):
        return self.a == 0

    def __add__(self, other):
        other = as_linear(other)
        return GrossLinear(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GrossLinear(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-as_linear(other))

    def __rsub__(self, other):
        return as_linear(other) - self

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return GrossLinear(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __str__(self):
        return format_linear(self)


OMEGA = GrossLinear(1, 0)
ZERO_EXP = GrossLinear(0, 0)


def as_linear(value):
    if isinstance(value, GrossLinear):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return GrossLinear(0, value)
    raise TypeError(f"cannot use {value!r} as a GrossLinear")


def gl_add(x, y):
    return as_linear(x) + as_linear(y)


def gl_neg(x):
    return -as_linear(x)


def gl_cmp(x, y):
    """Lexicographic order on (a, b): -1, 0 or 1."""
    x, y = as_linear(x), as_linear(y)
    if x == y:
        return 0
    return -1 if x < y else 1


# --- bases ---

def _iroot(n, k):
    """Largest r with r**k <= n."""
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def reduce_base(base):
    """Return (root, power) with root**power == base and root not a perfect power."""
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise DomainError(f"base must be an integer >= 2, got {base!r}")
    for power in range(base.bit_length(), 1, -1):
        root = _iroot(base, power)
        if root >= 2 and root ** power == base:
            return root, power
    return base, 1


def _valuation(n, base):
    n = abs(n)
    count = 0
    while n and n % base == 0:
        n //= base
        count += 1
    return count


@dataclass(frozen=True)
class Term:
    """coeff · base^exp, the display form of one group."""

    coeff: Fraction
    base: int
    exp: GrossLinear


def _growth(key):
    base, a = key
    return Fraction(base) ** a


def _group_to_term(key, coeff):
    base, a = key
    if a == 0:
        return Term(coeff, 2, ZERO_EXP)
    k = _valuation(coeff.numerator, base) - _valuation(coeff.denominator, base)
    return Term(coeff / Fraction(base) ** k, base, GrossLinear(a, k))


class GrossQuantity:
    """A normalized finite sum of terms c·base^(a·①+b)."""

    __slots__ = ("_groups",)

    def __init__(self, groups=()):
        # groups: iterable of ((base, a), coeff) already normalized
        object.__setattr__(self, "_groups", tuple(groups))

    def __setattr__(self, name, value):
        raise AttributeError("GrossQuantity is immutable")

    # construction

    @classmethod
    def from_groups(cls, mapping):
        cleaned = {key: Fraction(c) for key, c in mapping.items() if c != 0}
        ordered = sorted(cleaned.items(), key=lambda item: (_growth(item[0]), item[0]), reverse=True)
        return cls(ordered)

    @classmethod
    def from_rational(cls, value):
        return cls.from_groups({_CONSTANT_KEY: Fraction(value)})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.from_rational(1)

    # inspection

    @property
    def groups(self):
        return self._groups

    @property
    def terms(self):
        """Normalized terms in descending magnitude."""
        return tuple(_group_to_term(key, coeff) for key, coeff in self._groups)

    @property
    def is_zero(self):
        return not self._groups

    @property
    def is_finite(self):
        return all(key == _CONSTANT_KEY for key, _ in self._groups)

    def as_fraction(self):
        if not self.is_finite:
            raise DomainError(f"{self} is not a finite rational")
        return self._groups[0][1] if self._groups else Fraction(0)

    def at(self, k):
        """Exact value with ① replaced by the finite integer k."""
        return sum((coeff * _growth(key) ** k for key, coeff in self._groups), Fraction(0))

    # arithmetic

    def __add__(self, other):
        try:
            return gq_add(self, other)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GrossQuantity.from_groups({key: -c for key, c in self._groups})

    def __sub__(self, other):
        try:
            return gq_add(self, -as_quantity(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return gq_add(as_quantity(other), -self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return gq_mul(self, other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    # ordering

    def __eq__(self, other):
        try:
            other = as_quantity(other)
        except TypeError:
            return NotImplemented
        return self._groups == other._groups

    def __hash__(self):
        if self.is_finite:
            return hash(self.as_fraction())
        return hash(self._groups)

    def __lt__(self, other):
        return gq_cmp(self, other) < 0

    def __le__(self, other):
        return gq_cmp(self, other) <= 0

    def __gt__(self, other):
        return gq_cmp(self, other) > 0

    def __ge__(self, other):
        return gq_cmp(self, other) >= 0

    def __str__(self):
        return gq_format(self)

    def __repr__(self):
        return f"GrossQuantity({gq_format(self, ascii=True)!r})"


def as_quantity(value):
    if isinstance(value, GrossQuantity):
        return value
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise TypeError(f"cannot use {value!r} as a GrossQuantity (floats are not accepted)")
    return GrossQuantity.from_rational(Fraction(value))


def normalize(terms):
    """
    Build a normalized GrossQuantity from raw (coeff, base, exp) terms.

    Perfect-power bases are reduced (4^e becomes 2^(2e)), like groups are
    merged and zero coefficients dropped.  Normalizing the terms of a
    normalized quantity returns an equal quantity.
    """
    groups = {}
    for term in terms:
        coeff, base, exp = (term.coeff, term.base, term.exp) if isinstance(term, Term) else term
        coeff = Fraction(coeff)
        exp = as_linear(exp)
        root, power = reduce_base(base)
        a, b = exp.a * power, exp.b * power
        key = (root, a) if a != 0 else _CONSTANT_KEY
        groups[key] = groups.get(key, Fraction(0)) + coeff * Fraction(root) ** b
    return GrossQuantity.from_groups(groups)


def gq_pow(base, exp):
    """1 · base^exp, normalized."""
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise DomainError(f"base must be an integer >= 2, got {base!r}")
    return normalize([(1, base, as_linear(exp))])


def gq_add(x, y):
    x, y = as_quantity(x), as_quantity(y)
    groups = dict(x.groups)
    for key, coeff in y.groups:
        groups[key] = groups.get(key, Fraction(0)) + coeff
    return GrossQuantity.from_groups(groups)


def _group_product(left, right):
    (b1, a1), c1 = left
    (b2, a2), c2 = right
    if a1 == 0:
        return (b2, a2), c1 * c2
    if a2 == 0:
        return (b1, a1), c1 * c2
    if b1 != b2:
        raise UnsupportedProductError(f"cannot multiply {b1}^({a1}{GROSSONE}) by {b2}^({a2}{GROSSONE}): mixed bases")
    a = a1 + a2
    return ((b1, a) if a != 0 else _CONSTANT_KEY), c1 * c2


def gq_mul(x, y, *more):
    """Product of two or more quantities, distributed termwise."""
    x, y = as_quantity(x), as_quantity(y)
    groups = {}
    for left in x.groups:
        for right in y.groups:
            key, coeff = _group_product(left, right)
            groups[key] = groups.get(key, Fraction(0)) + coeff
    product = GrossQuantity.from_groups(groups)
    for factor in more:
        product = gq_mul(product, factor)
    return product


def gq_cmp(x, y):
    """
    Total order consistent with substituting any large enough finite integer
    for ①: the sign of the dominant group of x - y.
    """
    diff = gq_add(x, -as_quantity(y))
    if diff.is_zero:
        return 0
    _, coeff = diff.groups[0]
    return 1 if coeff > 0 else -1


def surrogate_threshold(x, y=0):
    """
    Smallest K0 >= 1 such that for every K >= K0 the sign of x(K) - y(K)
    equals gq_cmp(x, y).
    """
    diff = gq_add(x, -as_quantity(y))
    if len(diff.groups) <= 1:
        return 1
    (lead_key, lead_coeff), rest = diff.groups[0], diff.groups[1:]
    ratio = _growth(rest[0][0]) / _growth(lead_key)
    tail = sum(abs(coeff) for _, coeff in rest)
    k = 1
    while ratio ** k * tail >= abs(lead_coeff):
        k += 1
    return k


def gq_geom_sum_stepped(base, step, first, last):
    """
    Σ base^-(first + t·step) over every t >= 0 with first + t·step <= last.

    `last` may be ①-valued; ① is divisible by every finite integer, so the
    number of summands is a·①/step + floor((b - first)/step) + 1 for
    last = a·① + b.
    """
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise DomainError(f"base must be an integer >= 2, got {base!r}")
    if step < 1:
        raise DomainError(f"step must be >= 1, got {step}")
    last = as_linear(last)
    if gl_cmp(last, first) < 0:
        raise DomainError(f"empty range: last {format_linear(last)} < first {first}")
    span = GrossLinear(last.a, step * ((last.b - first) // step + 1))
    ratio = Fraction(base ** step, base ** step - 1)
    return gq_pow(base, -first) * (1 - gq_pow(base, -span)) * ratio


def gq_geom_sum(base, k):
    """Σ_{i=1..k} base^-i = (1 - base^-k) / (base - 1), for finite or ①-valued k >= 1."""
    k = as_linear(k)
    if gl_cmp(k, 1) < 0:
        raise DomainError(f"k must be >= 1, got {format_linear(k)}")
    return gq_geom_sum_stepped(base, 1, 1, k)


# --- formatting ---

def format_linear(e, ascii=False):
    e = as_linear(e)
    g = GROSSONE_ASCII if ascii else GROSSONE
    if e.a == 0:
        return str(e.b)
    head = {1: g, -1: f"-{g}"}.get(e.a, f"{e.a}{g}")
    if e.b > 0:
        return f"{head}+{e.b}"
    if e.b < 0:
        return f"{head}{e.b}"
    return head


def format_exponent(e, ascii=False):
    e = as_linear(e)
    if e.a < 0:
        return f"-({format_linear(-e, ascii)})"
    if e.a == 0:
        return str(e.b)
    if e == OMEGA and not ascii:
        return GROSSONE
    return f"({format_linear(e, ascii)})"


def _format_term(term, ascii):
    sign = "-" if term.coeff < 0 else "+"
    coeff = abs(term.coeff)
    if term.exp == ZERO_EXP:
        return sign, str(coeff)
    power = f"{term.base}^{format_exponent(term.exp, ascii)}"
    if coeff == 1:
        return sign, power
    times = "*" if ascii else "·"
    if coeff.denominator == 1:
        return sign, f"{coeff}{times}{power}"
    return sign, f"({coeff}){times}{power}"


def gq_format(x, ascii=False):
    """
    Deterministic rendering, terms in descending magnitude:
    "2^-(①+3)", "2^(2①+1)", "2^① + 1", "1 - 2^-(①)"; ① becomes G with ascii.
    """
    x = as_quantity(x)
    if x.is_zero:
        return "0"
    pieces = []
    for index, term in enumerate(x.terms):
        sign, body = _format_term(term, ascii)
        if index == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
