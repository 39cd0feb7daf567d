"""
Seeded property suites over random configurations and rules.

Each suite returns report rows (Suite, Property, Kind, Samples, Violations,
Status).  Kind "guaranteed" marks properties that hold for every input;
a violation there is a bug and fails the run.  Kind "claim" marks the
unrestricted nonarchimedean claims for the grossone distance: agreement
intervals are not nested in general (x, y agreeing on [-5, 2] and x, z on
[-2, 5] leave y, z agreeing only on [-2, 2]), so those rows count
counterexamples instead of failing.
"""

import logging
import random
import time

import pandas as pd

from grossca.modules.ca import (
    LocalRule,
    rule_from_wolfram_elementary,
    shift_rule,
    step,
)
from grossca.modules.configuration import (
    build_config,
    constant,
    equals,
    eval_at,
    pointwise_add,
    random_config,
    set_at,
    translate,
    window,
)
from grossca.modules.dynamics import BmnSpec, bmn_member_finite, shift_bmn_exact
from grossca.modules.metric import (
    Identical,
    agreement_interval,
    classical_distance,
    distance,
    evaluate_F,
    meets_totally_ordered,
)
from grossca.modules.grossnum import GrossQuantity

logger = logging.getLogger(__name__)

GUARANTEED = "guaranteed"
CLAIM = "claim"
REPORT_COLUMNS = ["Suite", "Property", "Kind", "Samples", "Violations", "Status"]

DEFAULTS = {
    "samples": 1000,
    "seed": 7,
    "max_core": 8,
    "max_period": 4,
    "horizon": 64,
    "decay_max_core": 12,
}


class _Tally:
    """Per-property sample and violation counters for one suite."""

    def __init__(self, suite):
        self.suite = suite
        self.counts = {}

    def check(self, prop, ok, kind=GUARANTEED, example=None):
        entry = self.counts.setdefault(prop, {"kind": kind, "samples": 0, "violations": 0})
        entry["samples"] += 1
        if not ok:
            if entry["violations"] == 0 and example is not None:
                log = logger.error if kind == GUARANTEED else logger.info
                log(f"{self.suite}: first violation of '{prop}': {example}")
            entry["violations"] += 1

    def rows(self):
        rows = []
        for prop, entry in self.counts.items():
            if entry["violations"] == 0:
                status = "PASS"
            else:
                status = "FAIL" if entry["kind"] == GUARANTEED else "COUNTEREXAMPLES"
            rows.append([self.suite, prop, entry["kind"], entry["samples"], entry["violations"], status])
        return rows


def _random_fill(rng, s, max_period):
    return tuple(rng.randrange(s) for _ in range(rng.randint(1, max_period)))


def _perturb(rng, x, max_core, max_period):
    """A configuration related to x, so samples share long agreement stretches."""
    s = x.alphabet.size
    action = rng.randrange(5)
    if action == 0:
        return random_config(rng.randrange(2 ** 32), s, max_core, max_period)
    if action == 1:
        return set_at(x, rng.randint(-max_core, max_core), rng.randrange(s))
    if action == 2:
        return build_config(x.alphabet, x.left, x.core, x.offset, _random_fill(rng, s, max_period))
    if action == 3:
        return build_config(x.alphabet, _random_fill(rng, s, max_period), x.core, x.offset, x.right)
    return x


def _distance_from(meet):
    return GrossQuantity.zero() if isinstance(meet, Identical) else evaluate_F(meet)


def ultrametric_suite(options):
    tally = _Tally("ultrametric")
    rng = random.Random(options["seed"])
    max_core, max_period = options["max_core"], options["max_period"]
    for _ in range(options["samples"]):
        x = random_config(rng.randrange(2 ** 32), 2, max_core, max_period)
        y = _perturb(rng, x, max_core, max_period)
        z = _perturb(rng, rng.choice((x, y)), max_core, max_period)
        triple = (x, y, z)
        pairs = ((x, y), (x, z), (y, z))
        meets = [agreement_interval(p, q) for p, q in pairs]
        d = [_distance_from(meet) for meet in meets]
        example = " | ".join(str(c) for c in triple)

        for (p, q), meet, dpq in zip(pairs, meets, d):
            tally.check("identity of indiscernibles", dpq.is_zero == equals(p, q), example=example)
            tally.check("symmetry", agreement_interval(q, p) == meet and distance(q, p) == dpq, example=example)
        for c in triple:
            tally.check("d(x, x) = 0", distance(c, c).is_zero, example=example)

        ultrametric = all(d[k] <= max(d[(k + 1) % 3], d[(k + 2) % 3]) for k in range(3))
        largest = sorted(d)
        isosceles = largest[1] == largest[2]
        nested = meets_totally_ordered(*meets)
        tally.check("meets totally ordered", nested, CLAIM, example)
        tally.check("ultrametric inequality", ultrametric, CLAIM, example)
        tally.check("isosceles", isosceles, CLAIM, example)
        if nested:
            tally.check("ultrametric inequality (nested meets)", ultrametric, example=example)
            tally.check("isosceles (nested meets)", isosceles, example=example)

        c = [classical_distance(p, q) for p, q in pairs]
        tally.check("classical ultrametric inequality",
                    all(c[k] <= max(c[(k + 1) % 3], c[(k + 2) % 3]) for k in range(3)), example=example)
    return tally.rows()


def _random_rule(rng, index):
    if index % 10 == 9:
        return LocalRule(2, 2, tuple(rng.randrange(2) for _ in range(32)), "random r=2 table")
    return rule_from_wolfram_elementary(rng.randrange(256))


def shift_commute_suite(options):
    tally = _Tally("shift-commute")
    rng = random.Random(options["seed"])
    for k in range(options["samples"]):
        rule = _random_rule(rng, k)
        x = random_config(rng.randrange(2 ** 32), 2, options["max_core"], options["max_period"])
        y = step(rule, x)
        r = rule.radius
        example = f"{rule}: {x}"
        tally.check("pointwise neighborhood evaluation on [-64, 64]",
                    all(eval_at(y, i) == rule(window(x, i - r, i + r)) for i in range(-64, 65)), example=example)
        tally.check("step commutes with the shift",
                    equals(step(rule, translate(x, 1)), translate(y, 1)), example=example)
        tally.check("fill periods divide the input periods",
                    len(x.left) % len(y.left) == 0 and len(x.right) % len(y.right) == 0, example=example)
    return tally.rows()


def rule128_decay_suite(options):
    """Rule 128 from 0-filled seeds: every core of width w dies out within w/2 + 1 steps."""
    tally = _Tally("rule128-decay")
    rule = rule_from_wolfram_elementary(128)
    zeros, ones = constant(2, 0), constant(2, 1)
    for width in range(options["decay_max_core"] + 1):
        bound = width // 2 + 1
        for code in range(2 ** width):
            core = tuple((code >> i) & 1 for i in range(width))
            x = build_config(2, (0,), core, 0, (0,))
            reached = False
            for _ in range(bound + 1):
                if equals(x, zeros):
                    reached = True
                    break
                x = step(rule, x)
            tally.check("reaches x_0 within core/2 + 1 steps", reached, example=f"core={core}")
    tally.check("x_1 is fixed", equals(step(rule, ones), ones))
    tally.check("x_0 is fixed", equals(step(rule, zeros), zeros))
    return tally.rows()


def rule90_additivity_suite(options):
    tally = _Tally("rule90-additivity")
    rng = random.Random(options["seed"])
    rule = rule_from_wolfram_elementary(90)
    for _ in range(options["samples"]):
        x = random_config(rng.randrange(2 ** 32), 2, options["max_core"], options["max_period"])
        y = random_config(rng.randrange(2 ** 32), 2, options["max_core"], options["max_period"])
        tally.check("f(x + y) = f(x) + f(y)",
                    equals(step(rule, pointwise_add(x, y)), pointwise_add(step(rule, x), step(rule, y))),
                    example=f"{x} | {y}")
    return tally.rows()


def shift_bmn_suite(options):
    tally = _Tally("shift-bmn")
    rng = random.Random(options["seed"])
    rule = shift_rule(2)
    max_core, max_period = options["max_core"], options["max_period"]
    for _ in range(options["samples"]):
        x = random_config(rng.randrange(2 ** 32), 2, max_core, max_period)
        y = _perturb(rng, x, max_core, max_period)
        m, n = -rng.randint(0, 3), rng.randint(0, 3)
        member = bmn_member_finite(BmnSpec(rule, x, m, n, options["horizon"]), y)
        tally.check("finite horizon matches agreement on [m, +inf)", member == shift_bmn_exact(x, y, m),
                    example=f"m={m} n={n}: {x} | {y}")
    return tally.rows()


SUITES = {
    "ultrametric": ultrametric_suite,
    "shift-commute": shift_commute_suite,
    "rule128-decay": rule128_decay_suite,
    "rule90-additivity": rule90_additivity_suite,
    "shift-bmn": shift_bmn_suite,
}


def run_suites(names, options=None):
    """Run the named suites and collect their rows into one report."""
    options = {**DEFAULTS, **(options or {})}
    rows = []
    for name in names:
        started = time.perf_counter()
        rows.extend(SUITES[name](options))
        logger.info(f"Suite {name} finished in {time.perf_counter() - started:.2f}s")
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def failed(report):
    return bool((report["Status"] == "FAIL").any())
