"""Command-line front end.  JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 computation completed (or yes/true with --quiet), 1 no/false
with --quiet, 2 usage or input errors, 3 budget exhausted with --quiet.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify, experiments, onerelator, sampling, words


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational such as 1/60, got {text!r}")


def _word(args, name: str = "word") -> str:
    w = getattr(args, name)
    if w is None:
        raise InputError(f"--{name} is required")
    try:
        words.check_word(w, args.rank)
    except words.WordError as exc:
        raise InputError(str(exc))
    return w


def _cyclic(args, name: str = "word") -> str:
    core, _ = words.cyclic_reduce(words.free_reduce(_word(args, name)))
    if not core:
        raise InputError("word must be nontrivial")
    return core


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _out(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    experiments.write_atomic(text, getattr(args, "out", None))


def _decision(args, value: bool, payload: dict) -> int:
    if args.quiet:
        return 0 if value else 1
    _out(args, _dump(payload))
    return 0


def cmd_minimize(args):
    minimal, chain = classify.minimize(_word(args), args.rank)
    _out(args, _dump({"minimal": minimal, "witness": chain.to_json()}))
    return 0


def cmd_is_sm(args):
    w = _cyclic(args)
    r = classify.is_strictly_minimal(w, args.rank)
    return _decision(args, r, {"word": w, "result": r})


def cmd_is_ts(args):
    w = _cyclic(args)
    r = classify.is_ts(w, args.rank)
    return _decision(args, r, {"word": w, "result": r})


def cmd_is_z(args):
    w = _cyclic(args)
    r = classify.is_z(w, args.rank)
    return _decision(args, r, {"word": w, "result": r})


def cmd_freq_criterion(args):
    w = _cyclic(args)
    eps = args.epsilon if args.epsilon is not None else classify.default_epsilon(args.rank)
    try:
        r = classify.frequency_criterion(w, args.rank, eps)
    except ValueError as exc:
        raise InputError(str(exc))
    return _decision(args, r, {"word": w, "epsilon": str(eps), "result": r})


def cmd_equivalent(args):
    u, v = _word(args, "u"), _word(args, "v")
    d = classify.are_aut_equivalent(u, v, args.rank, args.budget)
    if args.quiet:
        return {"equivalent": 0, "inequivalent": 1, "undecided": 3}[d.verdict]
    _out(args, _dump(d.to_json()))
    return 0


def cmd_orbit(args):
    minimal, _ = classify.minimize(_word(args), args.rank)
    level, saturated = classify.orbit_level_set(minimal, args.rank, args.budget)
    if args.quiet:
        return 0 if saturated else 3
    _out(args, _dump({"minimal": minimal, "level_set": sorted(level), "size": len(level), "saturated": saturated}))
    return 0


def cmd_stabilizer(args):
    w = words.free_reduce(_word(args))
    if not w:
        raise InputError("word must be nontrivial")
    _out(args, _dump(classify.stabilizer_report(w, args.rank).to_json()))
    return 0


def cmd_sample(args):
    if args.length is None:
        raise InputError("--length is required")
    cyclic = args.kind == "cyclic"
    if cyclic and args.length < 1:
        raise InputError("cyclic samples need --length >= 1")
    if args.length < 0:
        raise InputError("--length must be non-negative")
    lines = sampling.sample_batch(args.rank, args.length, args.seed, args.samples, cyclic=cyclic)
    _out(args, "\n".join(lines))
    return 0


def cmd_frequencies(args):
    w = _cyclic(args)
    _out(args, _dump(sampling.empirical_frequencies(w, args.rank).to_json()))
    return 0


def cmd_rate_function(args):
    if args.x is None:
        raise InputError("--x is required")
    try:
        words.check_word(args.letter, args.rank)
        value = sampling.rate_function(float(args.x), args.rank, args.letter)
    except (ValueError, words.WordError) as exc:
        raise InputError(str(exc))
    _out(args, _dump({"x": str(args.x), "letter": args.letter, "rate": value}))
    return 0


def cmd_generic_scan(args):
    if not args.lengths:
        raise InputError("--lengths is required")
    eps = args.epsilon
    try:
        cfg = experiments.ExperimentConfig(args.rank, tuple(args.lengths), args.samples, args.seed, eps, args.format)
        if eps is not None and not 0 < eps < classify.epsilon_bound(args.rank):
            raise ValueError(f"eps must lie in (0, {classify.epsilon_bound(args.rank)})")
    except ValueError as exc:
        raise InputError(str(exc))
    rows = experiments.genericity_experiment(cfg)
    experiments.emit_report(rows, args.format, args.out)
    return 0


def cmd_orbit_growth(args):
    w = words.free_reduce(_word(args))
    if args.length is None:
        raise InputError("--length (maximum cyclic length N) is required")
    try:
        g = experiments.orbit_growth_experiment(w, args.rank, args.length, args.budget)
    except ValueError as exc:
        raise InputError(str(exc))
    _out(args, _dump(g.to_json()))
    return 0


def cmd_count(args):
    if args.length is None:
        raise InputError("--length is required")
    try:
        _out(args, str(words.count_words(args.length, args.rank, args.mode)))
    except ValueError as exc:
        raise InputError(str(exc))
    return 0


def cmd_relator_classify(args):
    _cyclic(args)
    _out(args, _dump(onerelator.classify_relator(_word(args), args.rank).to_json()))
    return 0


def cmd_relator_iso(args):
    u, v = _cyclic(args, "u"), _cyclic(args, "v")
    d = onerelator.isomorphic_generic(u, v, args.rank)
    if args.quiet:
        return {"isomorphic": 0, "not_isomorphic": 1, "undecided": 3}[d.verdict]
    _out(args, _dump(d.to_json()))
    return 0


def cmd_relator_classes(args):
    if args.length is None or args.length < 1:
        raise InputError("--length >= 1 is required")
    r = onerelator.count_relator_classes(args.length, args.rank, args.budget)
    if args.quiet:
        return 0 if r.exact else 3
    _out(args, _dump(r.to_json()))
    return 0


COMMANDS = {
    "minimize": (cmd_minimize, "minimal element of the Aut(F_k)-orbit with a witness", ["word"]),
    "is-sm": (cmd_is_sm, "strict minimality of the cyclically reduced form", ["word", "quiet"]),
    "is-ts": (cmd_is_ts, "membership in the trivial-stabilizer class TS", ["word", "quiet"]),
    "is-z": (cmd_is_z, "membership in the class Z", ["word", "quiet"]),
    "freq-criterion": (cmd_freq_criterion, "letter/edge frequency test L(eps)", ["word", "epsilon", "quiet"]),
    "equivalent": (cmd_equivalent, "decide automorphic equivalence of u and v", ["uv", "budget", "quiet"]),
    "orbit": (cmd_orbit, "level set of the minimal form", ["word", "budget", "quiet"]),
    "stabilizer": (cmd_stabilizer, "stabilizer report", ["word"]),
    "sample": (cmd_sample, "uniform random reduced words, one per line", ["length", "samples", "seed", "kind"]),
    "frequencies": (cmd_frequencies, "exact letter and cyclic digram frequencies", ["word"]),
    "rate-function": (cmd_rate_function, "rate function I(x) of a letter count", ["x"]),
    "generic-scan": (cmd_generic_scan, "genericity fractions of L(eps), SM, TS, Z", ["lengths", "samples", "seed", "epsilon", "format"]),
    "orbit-growth": (cmd_orbit_growth, "orbit counts by cyclic length up to --length", ["word", "length", "budget"]),
    "count": (cmd_count, "exact word counts", ["length", "mode"]),
    "relator-classify": (cmd_relator_classify, "genericity flags of a one-relator presentation", ["word"]),
    "relator-iso": (cmd_relator_iso, "isomorphism test for generic one-relator groups", ["uv", "quiet"]),
    "relator-classes": (cmd_relator_classes, "count relator classes of length --length", ["length", "budget", "quiet"]),
}


def _add_options(p: argparse.ArgumentParser, opts: list[str]) -> None:
    p.add_argument("--rank", "-k", type=int, required=True, help="rank k of F_k (int, required)")
    p.add_argument("--out", default=None, help="output path (str, default: stdout)")
    if "word" in opts:
        p.add_argument("--word", "-w", help="word such as abAB (str, default: none)")
    if "uv" in opts:
        p.add_argument("-u", "--u", dest="u", help="first word (str, default: none)")
        p.add_argument("-v", "--v", dest="v", help="second word (str, default: none)")
    if "length" in opts:
        p.add_argument("--length", "-n", type=int, help="word length n (int, default: none)")
    if "lengths" in opts:
        p.add_argument("--lengths", type=_int_list, help="comma-separated lengths (CSV ints, default: none)")
    if "samples" in opts:
        p.add_argument("--samples", type=int, default=100, help="samples per length (int, default: %(default)s)")
    if "seed" in opts:
        p.add_argument("--seed", type=int, default=0, help="master seed (int, default: %(default)s)")
    if "budget" in opts:
        p.add_argument("--budget", type=int, default=classify.DEFAULT_BUDGET, help="node budget (int, default: %(default)s)")
    if "epsilon" in opts:
        p.add_argument("--epsilon", type=_rational, default=None, help="eps (rational, default: (2k-3)/(2k(2k-1)(4k-3)))")
    if "format" in opts:
        p.add_argument("--format", choices=["csv", "json"], default="json", help="report format (csv|json, default: %(default)s)")
    if "quiet" in opts:
        p.add_argument("--quiet", action="store_true", help="no output; answer in the exit code (flag, default: off)")
    if "mode" in opts:
        p.add_argument("--mode", choices=["reduced", "ball", "cyclic"], default="reduced", help="count mode (reduced|ball|cyclic, default: %(default)s)")
    if "kind" in opts:
        p.add_argument("--kind", choices=["free", "cyclic"], default="free", help="freely or cyclically reduced (free|cyclic, default: %(default)s)")
    if "x" in opts:
        p.add_argument("--x", type=_rational, help="frequency x in [0,1] (rational, default: none)")
        p.add_argument("--letter", default="a", help="observed letter (str, default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freeaut", description="Automorphic equivalence and orbit tools for free groups F_k")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text, opts) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_options(p, opts)
        p.set_defaults(func=func, quiet=False)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not 2 <= args.rank <= words.MAX_RANK:
        print(f"error: --rank must be in 2..{words.MAX_RANK}", file=sys.stderr)
        return 2
    for name in ("budget", "samples"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name} must be at least 1", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
