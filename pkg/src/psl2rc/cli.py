"""Command line: ``psl2rc table|rc|verify|census``.

Exit codes: 0 on success (class count equals character count), 1 when that
equality fails, 2 for usage and parse errors.  Every flag can also be set
through an environment variable named ``PSL2RC_<FLAG>``, e.g.
``PSL2RC_ORACLE_CAP=50000`` or ``PSL2RC_JSON=1``; flags win over the
environment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import cyclo
from .chartab import build_char_table, form_text
from .gf import FieldError, prime_power
from .psl2 import ORACLE_CAP
from .rational import rc_census, verify_range
from .tablio import TablioError, census_file, serialize

EXIT_OK, EXIT_EQUALITY, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    q: int = None
    q_range: tuple = None
    path: str = None
    oracle_cap: int = ORACLE_CAP
    use_oracle: bool = True
    conductor_cap: int = cyclo.CONDUCTOR_CAP
    output_mode: str = "text"
    strict_parse: bool = True
    parallelism: int = 1


class UsageError(Exception):
    pass


def _env_flag(name):
    v = os.environ.get(f"PSL2RC_{name}")
    if v is None:
        return None
    return v.strip().lower() not in ("", "0", "false", "no", "off")


def _env_int(name):
    v = os.environ.get(f"PSL2RC_{name}")
    if v is None:
        return None
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"PSL2RC_{name} must be an integer, got {v!r}") from None


def _parse_q(text):
    try:
        q = int(text)
    except ValueError:
        raise UsageError(f"{text!r} is not an integer") from None
    try:
        prime_power(q)
    except FieldError:
        raise UsageError(f"{q} is not a prime power") from None
    return q


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            lo = hi = int(text)
        else:
            lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like LO..HI, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None,
                        help="machine-readable output")
    common.add_argument("--oracle-cap", type=int, default=None, metavar="N",
                        help=f"largest group order for brute force (default {ORACLE_CAP})")
    common.add_argument("--no-oracle", action="store_true", default=None,
                        help="skip the brute-force element oracle")
    common.add_argument("--conductor-cap", type=int, default=None, metavar="N",
                        help="largest cyclotomic conductor (default 65536)")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=None,
                      help="reject non-canonical table files (default)")
    mode.add_argument("--lenient", dest="strict", action="store_false",
                      help="accept and report non-canonical table files")
    common.add_argument("--jobs", type=int, default=None, metavar="N",
                        help="worker processes for verify")

    parser = argparse.ArgumentParser(
        prog="psl2rc", description="Rational classes and characters of PSL2(q).")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("table", parents=[common], help="print the character table of PSL2(q)")
    p.add_argument("q")
    p = sub.add_parser("rc", parents=[common], help="census of rational classes and characters")
    p.add_argument("q")
    p = sub.add_parser("verify", parents=[common], help="census every prime power in LO..HI")
    p.add_argument("range")
    p = sub.add_parser("census", parents=[common], help="census an interchange table file")
    p.add_argument("path")
    return parser


def config_from_args(args) -> CliConfig:
    def pick(flag, env):
        return flag if flag is not None else env

    json_out = pick(args.json, _env_flag("JSON"))
    no_oracle = pick(args.no_oracle, _env_flag("NO_ORACLE"))
    strict = args.strict
    if strict is None:
        lenient = _env_flag("LENIENT")
        env_strict = _env_flag("STRICT")
        strict = not lenient if lenient is not None else (env_strict if env_strict is not None else True)
    cfg = CliConfig(
        command=args.command,
        oracle_cap=pick(args.oracle_cap, _env_int("ORACLE_CAP")) or ORACLE_CAP,
        use_oracle=not no_oracle,
        conductor_cap=pick(args.conductor_cap, _env_int("CONDUCTOR_CAP")) or cyclo.CONDUCTOR_CAP,
        output_mode="json" if json_out else "text",
        strict_parse=strict,
        parallelism=pick(args.jobs, _env_int("JOBS")) or 1,
    )
    if cfg.oracle_cap < 1 or cfg.conductor_cap < 1 or cfg.parallelism < 1:
        raise UsageError("caps and --jobs must be positive")
    if args.command in ("table", "rc"):
        cfg.q = _parse_q(args.q)
    elif args.command == "verify":
        cfg.q_range = _parse_range(args.range)
    else:
        cfg.path = args.path
    return cfg


# -- rendering -------------------------------------------------------------------

def render_table(t) -> str:
    header = ["x"] + t.class_labels
    sizes = ["|x^G|"] + [str(c.size) for c in t.classes]
    orders = ["o(x)"] + [str(c.elt_order) for c in t.classes]
    rows = [[ch.label] + [form_text(f) for f in frow]
            for ch, frow in zip(t.characters, t.forms)]
    grid = [header, sizes, orders] + rows
    widths = [max(len(r[j]) for r in grid) for j in range(len(header))]

    def fmt(r):
        return "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()

    out = [f"Character table of {t.group_name}, order {t.group_order}"]
    out += [fmt(r) for r in grid[:3]]
    out.append("-" * len(fmt(header)))
    out += [fmt(r) for r in rows]
    out += t.legend
    return "\n".join(out)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False)


def cmd_table(cfg, out):
    t = build_char_table(cfg.q)
    if cfg.output_mode == "json":
        out.write(serialize(t).decode("utf-8"))
    else:
        out.write(render_table(t) + "\n")
    return EXIT_OK


def cmd_rc(cfg, out):
    r = rc_census(cfg.q, cfg.use_oracle, cfg.oracle_cap)
    out.write((_dump(r.to_dict()) if cfg.output_mode == "json" else r.render()) + "\n")
    return EXIT_OK if r.equality_holds else EXIT_EQUALITY


def _prime_powers(lo, hi):
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except FieldError:
            continue
        out.append(q)
    return out


def cmd_verify(cfg, out, err):
    qs = _prime_powers(*cfg.q_range)
    if not qs:
        err.write(f"warning: no prime powers in {cfg.q_range[0]}..{cfg.q_range[1]}\n")
    s = verify_range(qs, cfg.parallelism, cfg.use_oracle, cfg.oracle_cap)
    if cfg.output_mode == "json":
        out.write(_dump(s.to_dict()) + "\n")
    else:
        for r in s.reports:
            line = (f"q={r.q} classes={r.n_rational_classes} "
                    f"characters={r.n_rational_characters} "
                    f"predicted={r.predicted.rc} (case {r.predicted.case_id})")
            if r.oracle_count is not None:
                line += f" oracle={r.oracle_count}"
            line += " ok" if r.equality_holds else " EQUALITY FAILURE"
            if r.predicted.rc != r.n_rational_classes:
                line += " [prediction mismatch]"
            out.write(line + "\n")
        out.write(f"checked {len(s.reports)} prime powers: "
                  f"{len(s.equality_failures)} equality failures, "
                  f"{len(s.prediction_mismatches)} prediction mismatches "
                  f"{s.prediction_mismatches}, "
                  f"{len(s.oracle_mismatches)} oracle mismatches\n")
    return EXIT_OK if s.ok else EXIT_EQUALITY


def cmd_census(cfg, out, err):
    try:
        with open(cfg.path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.path}: {exc.strerror}") from None
    try:
        r = census_file(data, cfg.strict_parse)
    except TablioError as exc:
        err.write(f"{cfg.path}: {exc}\n")
        return EXIT_USAGE
    out.write((_dump(r.to_dict()) if cfg.output_mode == "json" else r.render()) + "\n")
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        cyclo.set_conductor_cap(cfg.conductor_cap)
        if cfg.command == "table":
            return cmd_table(cfg, out)
        if cfg.command == "rc":
            return cmd_rc(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, out, err)
        return cmd_census(cfg, out, err)
    except UsageError as exc:
        err.write(f"psl2rc: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
