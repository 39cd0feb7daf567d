"""
grossca command line.

    grossca [--config FILE] [--log-level LEVEL] [--ascii] <command> ...

Commands: evolve, distance, meet, cardinality, bmn, verify.  Results go to
stdout, logs and report locations to stderr.  Exit status is 0 on success,
1 on domain errors (bad configurations, rules out of range, failed
guaranteed properties, unwritable outputs) and 2 on usage errors or missing
input files.
"""

import argparse
import logging
import os
import re
import sys

import yaml

from grossca import __version__
from grossca.errors import ConfigSyntaxError, GrossCAError
from grossca.modules.ca import (
    load_rule_table,
    right_shift_rule,
    rule_from_totalistic,
    rule_from_wolfram_elementary,
    shift_rule,
    spacetime,
)
from grossca.modules.configuration import (
    SYMBOL_DIGITS,
    as_alphabet,
    format_word,
    parse_word,
    random_window,
    read_configurations,
)
from grossca.modules.dynamics import (
    BmnSpec,
    bmn_enumerate_cyclic,
    bmn_member_finite,
    disk_cardinality,
    shift_bmn_bound,
    shift_bmn_direct_count,
    space_cardinality,
)
from grossca.modules.grossnum import OMEGA, format_linear, gq_format
from grossca.modules.metric import (
    Identical,
    Star,
    agreement_interval,
    classical_distance,
    distance,
    summed_distance,
)
from grossca.modules.render import (
    DEFAULT_ASCII_GLYPHS,
    DEFAULT_GLYPHS,
    grid_frame,
    render_ascii,
    render_pgm,
    write_report,
)
from grossca.modules.verify import SUITES, failed, run_suites
from grossca.settings import configure_logging, load_config, report_path

logger = logging.getLogger(__name__)

PROG = "grossca"
DISTANCE_MODES = {
    "grossone": distance,
    "classical": classical_distance,
    "summed": summed_distance,
}
# option values that start with "-" but are not negative integers
_DASHED_VALUE_OPTIONS = ("--window",)
SUITE_ALIASES = {"example3": "rule128-decay"}
_WINDOW = re.compile(r"^(-?\d+):(-?\d+)$")


def parse_window(text):
    match = _WINDOW.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"window must look like lo:hi, got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _preprocess(argv):
    """Glue `--window -2:2` into `--window=-2:2` so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in _DASHED_VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _add_global_options(parser, suppress=False):
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--config", default=default(None), help="YAML settings merged over the packaged defaults")
    parser.add_argument("--log-level", default=default(None),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Override logging.level")
    parser.add_argument("--ascii", action="store_true", default=default(False),
                        help="Print ① as G and use ASCII glyphs")


def _add_alphabet(parser):
    parser.add_argument("-s", "--alphabet", type=int, default=None, help="Alphabet size (default: alphabet.size)")


def _add_rule_options(parser, required=True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--rule-table", metavar="FILE", help="YAML rule table")
    group.add_argument("--elementary", type=int, metavar="N", help="Elementary rule number 0..255")
    group.add_argument("--totalistic", type=int, metavar="CODE", help="Totalistic code, used with --range")
    group.add_argument("--shift", action="store_true", help="Left shift, x(i) <- x(i+1)")
    group.add_argument("--right-shift", action="store_true", help="Right shift, x(i) <- x(i-1)")
    parser.add_argument("--range", type=int, default=1, help="Neighborhood radius for --totalistic")


def _add_window(parser):
    parser.add_argument("-m", type=int, default=0, help="Left end of the window, m <= 0")
    parser.add_argument("-n", type=int, default=0, help="Right end of the window, n >= 0")


def build_parser():
    parser = argparse.ArgumentParser(prog=PROG, description="Grossone cellular automata toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_options(parser)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    evolve = sub.add_parser("evolve", parents=[common], help="Render a spacetime diagram")
    _add_rule_options(evolve)
    _add_alphabet(evolve)
    evolve.add_argument("config_file", nargs="?", help="Configuration file (one configuration)")
    evolve.add_argument("--random", type=int, metavar="SEED", help="Seeded random core on the window instead of a file")
    evolve.add_argument("--steps", type=int, default=10)
    evolve.add_argument("--window", type=parse_window, default=(-10, 10), metavar="LO:HI")
    evolve.add_argument("--render", choices=["ascii", "pgm"], default="ascii")
    evolve.add_argument("--glyphs", help="One glyph per symbol, symbol 0 first")
    evolve.add_argument("--output", metavar="FILE", help="Write the render to FILE instead of stdout")
    evolve.add_argument("--report", action="store_true", help="Also write the grid to an Excel report")

    for name, text in (("distance", "Distance between two configurations"),
                       ("meet", "Agreement interval x∧y of two configurations")):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("x_file")
        cmd.add_argument("y_file")
        _add_alphabet(cmd)
        if name == "distance":
            cmd.add_argument("--mode", choices=list(DISTANCE_MODES), default="grossone")

    card = sub.add_parser("cardinality", parents=[common], help="Grossone counts of S^Z, disks and B_{m,n}")
    kind = card.add_mutually_exclusive_group(required=True)
    kind.add_argument("--space", action="store_true")
    kind.add_argument("--disk", action="store_true")
    kind.add_argument("--shift-bmn", action="store_true")
    card.add_argument("-m", type=int, default=None)
    card.add_argument("-n", type=int, default=None)
    _add_alphabet(card)

    bmn = sub.add_parser("bmn", parents=[common], help="Finite-horizon B_{m,n} membership and cyclic enumeration")
    mode = bmn.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", nargs=2, metavar=("X", "Y"), help="Is Y in B_{m,n}(X) up to horizon T?")
    mode.add_argument("--enumerate", action="store_true", help="Enumerate B_{m,n} on a cyclic universe")
    _add_rule_options(bmn)
    _add_alphabet(bmn)
    _add_window(bmn)
    bmn.add_argument("-T", "--horizon", type=int, default=0)
    bmn.add_argument("--cyclic", type=int, metavar="N", help="Cyclic universe size (defaults to the word length)")
    bmn.add_argument("--word", help="Cyclic center configuration, e.g. 00010000")
    bmn.add_argument("--count-only", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="Seeded property suites")
    for name in SUITES:
        flags = [f"--{name}"] + [f"--{alias}" for alias, target in SUITE_ALIASES.items() if target == name]
        verify.add_argument(*flags, action="store_true", dest=name.replace("-", "_"))
    verify.add_argument("--all", action="store_true", help="Run every suite (the default when none is named)")
    verify.add_argument("--samples", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--report", action="store_true", help="Also write the table to an Excel report")
    return parser


# --- helpers ---

def _alphabet(args, config):
    if args.alphabet is not None:
        return as_alphabet(args.alphabet)
    return as_alphabet(config.get("alphabet", {}).get("size", 2))


def _rule(args, config):
    s = _alphabet(args, config)
    if args.rule_table:
        return load_rule_table(args.rule_table)
    if args.elementary is not None:
        return rule_from_wolfram_elementary(args.elementary)
    if args.totalistic is not None:
        return rule_from_totalistic(args.totalistic, s.size, args.range)
    if args.shift:
        return shift_rule(s)
    return right_shift_rule(s)


def _read_one(path, alphabet):
    configs = read_configurations(path, alphabet)
    if len(configs) != 1:
        raise ConfigSyntaxError(f"{os.path.basename(path)}: expected exactly one configuration, found {len(configs)}")
    return configs[0]


def _input_paths(args):
    paths = []
    for name in ("config_file", "x_file", "y_file", "rule_table"):
        if getattr(args, name, None):
            paths.append(getattr(args, name))
    paths.extend(getattr(args, "check", None) or [])
    return paths


def _validate(parser, args):
    if args.command == "evolve" and (args.config_file is None) == (args.random is None):
        parser.error("evolve needs exactly one of a configuration file or --random SEED")
    if args.command == "cardinality" and args.disk and (args.m is None or args.n is None):
        parser.error("--disk needs -m and -n")
    if args.command == "bmn" and args.enumerate and not args.word:
        parser.error("--enumerate needs --word")
    missing = [path for path in _input_paths(args) if not os.path.exists(path)]
    if missing:
        parser.error(f"file not found: {missing[0]}")


def _glyphs(args, config, s):
    render = config.get("render", {})
    if args.ascii:
        glyphs = args.glyphs or render.get("ascii_glyphs", DEFAULT_ASCII_GLYPHS)
    else:
        glyphs = args.glyphs or render.get("glyphs", DEFAULT_GLYPHS)
    if len(glyphs) < s and not args.glyphs:
        glyphs = SYMBOL_DIGITS[:s]
    return glyphs


# --- commands ---

def cmd_evolve(args, config):
    rule = _rule(args, config)
    lo, hi = args.window
    if args.random is not None:
        x = random_window(args.random, rule.alphabet, lo, hi)
    else:
        x = _read_one(args.config_file, rule.alphabet)
    logger.info(f"Evolving {x} under {rule} for {args.steps} steps on [{lo}, {hi}]")
    grid = spacetime(rule, x, args.steps, lo, hi)
    if args.render == "pgm":
        text = render_pgm(grid)
    else:
        text = render_ascii(grid, _glyphs(args, config, rule.alphabet.size))

    if args.output:
        with open(args.output, "w", encoding="utf-8") as file:
            file.write(text + "\n")
        print(f"Spacetime diagram saved to {args.output}", file=sys.stderr)
    else:
        print(text)
    if args.report:
        path = write_report({"Spacetime": grid_frame(grid)}, report_path(config, "evolve", "spacetime"))
        print(f"Spacetime report saved to {path}", file=sys.stderr)
    return 0


def cmd_distance(args, config):
    s = _alphabet(args, config)
    x, y = _read_one(args.x_file, s), _read_one(args.y_file, s)
    print(gq_format(DISTANCE_MODES[args.mode](x, y), ascii=args.ascii))
    return 0


def cmd_meet(args, config):
    s = _alphabet(args, config)
    x, y = _read_one(args.x_file, s), _read_one(args.y_file, s)
    meet = agreement_interval(x, y)
    if isinstance(meet, Identical):
        print("identical")
    elif isinstance(meet, Star):
        print("*")
    else:
        print(f"m={format_linear(meet.m, args.ascii)}")
        print(f"n={format_linear(meet.n, args.ascii)}")
        print(f"witness={meet.witness if meet.witness is not None else '-'}")
    return 0


def cmd_cardinality(args, config):
    s = _alphabet(args, config)
    if args.space:
        print(gq_format(space_cardinality(s), ascii=args.ascii))
    elif args.disk:
        print(gq_format(disk_cardinality(s, args.m, args.n), ascii=args.ascii))
    else:
        print(gq_format(shift_bmn_bound(s), ascii=args.ascii))
        if args.m is not None:
            interval = f"[{args.m}, {format_linear(OMEGA, args.ascii)}]"
            direct = gq_format(shift_bmn_direct_count(s, args.m), ascii=args.ascii)
            print(f"agreement on {interval}: {direct}")
    return 0


def cmd_bmn(args, config):
    rule = _rule(args, config)
    if args.check:
        x, y = (_read_one(path, rule.alphabet) for path in args.check)
        member = bmn_member_finite(BmnSpec(rule, x, args.m, args.n, args.horizon), y)
        print("member" if member else "not member")
        return 0

    word = parse_word(args.word, rule.alphabet, "word")
    if args.cyclic is not None and args.cyclic != len(word):
        raise ConfigSyntaxError(f"--cyclic {args.cyclic} does not match the word length {len(word)}", args.word)
    enumeration = config.get("enumeration", {})
    performance = config.get("performance", {})
    threads = performance.get("max_threads", 4) if performance.get("parallel_processing", True) else 1
    result = bmn_enumerate_cyclic(
        rule, word, args.m, args.n, args.horizon,
        max_cells=enumeration.get("max_cells", 20),
        chunk_size=enumeration.get("chunk_size", 4096),
        max_candidates=enumeration.get("max_candidates", 2 ** 20),
        max_threads=threads,
    )
    print(f"count={result.count}")
    if not args.count_only:
        for member in result.members:
            print(format_word(member))
    return 0


def cmd_verify(args, config):
    names = [name for name in SUITES if getattr(args, name.replace("-", "_"))]
    if args.all or not names:
        names = list(SUITES)
    options = dict(config.get("verify", {}))
    for key in ("samples", "seed"):
        if getattr(args, key) is not None:
            options[key] = getattr(args, key)
    report = run_suites(names, options)
    print(report.to_string(index=False))
    if args.report:
        path = write_report({"Verify": report}, report_path(config, "verify", "verify"))
        print(f"Verification report saved to {path}", file=sys.stderr)
    return 1 if failed(report) else 0


COMMANDS = {
    "evolve": cmd_evolve,
    "distance": cmd_distance,
    "meet": cmd_meet,
    "cardinality": cmd_cardinality,
    "bmn": cmd_bmn,
    "verify": cmd_verify,
}


def run(argv=None):
    argv = _preprocess(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as e:
        return e.code

    try:
        config = load_config(args.config)
    except (FileNotFoundError, UnicodeDecodeError, yaml.YAMLError) as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 2
    configure_logging(config, args.log_level)

    try:
        return COMMANDS[args.command](args, config)
    except GrossCAError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        logger.debug("Command failed", exc_info=True)
        target = f": {e.filename}" if e.filename else ""
        print(f"{PROG}: error: {e.strerror or e}{target}", file=sys.stderr)
        return 1
