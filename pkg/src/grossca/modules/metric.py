"""
The meet x∧y, the evaluation function F and the grossone distance on
configurations, next to the classical symmetric-window distance and the
grossone-exact summed distance Σ |x(i)-y(i)| / 2^|i| over -① <= i <= ①.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from grossca.errors import ContractViolation, DomainError, UnsupportedAlphabetError
from grossca.modules.configuration import (
    Word,
    check_alphabets,
    comparison_window,
    equals,
    eval_at,
    restrict,
)
from grossca.modules.grossnum import (
    OMEGA,
    GrossLinear,
    GrossQuantity,
    as_linear,
    format_linear,
    gl_cmp,
    gq_geom_sum_stepped,
    gq_pow,
)

logger = logging.getLogger(__name__)

NEG_OMEGA = -OMEGA


def check_extended_index(e):
    """A finite integer, -① or ①."""
    e = as_linear(e)
    if e.a not in (-1, 0, 1) or (e.a != 0 and e.b != 0):
        raise DomainError(f"{format_linear(e)} is not an extended index (finite, -① or ①)")
    return e


@dataclass(frozen=True)
class Identical:
    """x∧y for x == y."""


@dataclass(frozen=True)
class Star:
    """The bottom element: x(0) != y(0)."""


@dataclass(frozen=True)
class Agreement:
    """Maximal interval [m, n] around 0 on which x and y agree."""

    m: GrossLinear
    n: GrossLinear
    witness: Optional[Word] = None

    def __post_init__(self):
        m = check_extended_index(self.m)
        n = check_extended_index(self.n)
        if gl_cmp(m, 0) > 0 or gl_cmp(n, 0) < 0:
            raise DomainError(f"agreement interval must satisfy m <= 0 <= n, got [{m}, {n}]")
        if m == NEG_OMEGA and n == OMEGA:
            raise ContractViolation("[-①, ①] agreement means the configurations are identical")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @property
    def length(self):
        """n + 1 - m, the word length."""
        return self.n + 1 - self.m


Meet = Union[Identical, Star, Agreement]


def agreement_interval(x, y):
    """x∧y: Identical, Star, or the maximal agreement interval around 0."""
    check_alphabets(x, y)
    if equals(x, y):
        return Identical()
    if eval_at(x, 0) != eval_at(y, 0):
        return Star()

    # past these bounds both sequences repeat with the common fill period
    right_bound = max(x.end, y.end, 0) + math.lcm(len(x.right), len(y.right))
    left_bound = min(x.offset, y.offset, 0) - math.lcm(len(x.left), len(y.left))

    n = OMEGA
    for i in range(1, right_bound):
        if eval_at(x, i) != eval_at(y, i):
            n = GrossLinear(0, i - 1)
            break
    m = NEG_OMEGA
    for i in range(-1, left_bound - 1, -1):
        if eval_at(x, i) != eval_at(y, i):
            m = GrossLinear(0, i + 1)
            break

    witness = restrict(x, m.b, n.b) if m.is_finite and n.is_finite else None
    return Agreement(m, n, witness)


def meet_interval(meet):
    """(m, n) of a meet; None for Star, (-①, ①) for Identical."""
    if isinstance(meet, Star):
        return None
    if isinstance(meet, Identical):
        return NEG_OMEGA, OMEGA
    return meet.m, meet.n


def meet_le(a, b):
    """a <= b in the inclusion order around 0, with Star as the bottom element."""
    ia, ib = meet_interval(a), meet_interval(b)
    if ia is None:
        return True
    if ib is None:
        return False
    return gl_cmp(ib[0], ia[0]) <= 0 and gl_cmp(ia[1], ib[1]) <= 0


def meets_totally_ordered(*meets):
    return all(meet_le(a, b) or meet_le(b, a) for a in meets for b in meets)


def evaluate_F(meet):
    """F(*) = 1, F([m, n]) = 2^-(n+1-m)."""
    if isinstance(meet, Identical):
        raise ContractViolation("evaluate_F is undefined on identical configurations; distance is 0 there")
    if isinstance(meet, Star):
        return GrossQuantity.one()
    return gq_pow(2, -meet.length)


def distance(x, y):
    """0 when x == y, F(x∧y) otherwise."""
    meet = agreement_interval(x, y)
    if isinstance(meet, Identical):
        return GrossQuantity.zero()
    return evaluate_F(meet)


def disk_radius(m, n):
    """2^-(n-m), the radius attached to the open disk C_[m,n](x)."""
    return gq_pow(2, -(as_linear(n) - as_linear(m)))


def classical_distance(x, y):
    """2^-n with n = min{|i| : x(i) != y(i)}; 0 for equal configurations."""
    check_alphabets(x, y)
    if equals(x, y):
        return GrossQuantity.zero()
    lo, hi = comparison_window(x, y)
    for k in range(0, max(abs(lo), abs(hi)) + 1):
        if eval_at(x, k) != eval_at(y, k) or eval_at(x, -k) != eval_at(y, -k):
            return gq_pow(2, -k)
    raise AssertionError("unequal configurations without a disagreement in their comparison window")


def summed_distance(x, y):
    """
    Σ_{i=-①..①} |x(i) - y(i)| · 2^-|i| for binary configurations.

    The middle section is summed as exact rationals; each residue class of
    the periodic tails contributes a stepped geometric sum running out to ①.
    """
    check_alphabets(x, y)
    if x.alphabet.size != 2:
        raise UnsupportedAlphabetError(f"summed distance needs a binary alphabet, got s={x.alphabet.size}")

    right_start = max(x.end, y.end, 1)
    left_start = min(x.offset, y.offset, 0) - 1
    right_period = math.lcm(len(x.right), len(y.right))
    left_period = math.lcm(len(x.left), len(y.left))

    def differs(i):
        return eval_at(x, i) != eval_at(y, i)

    middle = sum((Fraction(1, 2 ** abs(i)) for i in range(left_start + 1, right_start) if differs(i)), Fraction(0))
    total = GrossQuantity.from_rational(middle)
    for j in range(right_period):
        if differs(right_start + j):
            total = total + gq_geom_sum_stepped(2, right_period, right_start + j, OMEGA)
    for j in range(left_period):
        if differs(left_start - j):
            total = total + gq_geom_sum_stepped(2, left_period, j - left_start, OMEGA)
    return total
