"""Command-line entry point: ``bitambara <verb> [options]``.

Exit status is 0 when every requested check passes, 1 when one fails and
2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .construct import parse_construction
from .lattice import cyclic_lattice
from .spectra import compute_spectrum, homeomorphism_classes, to_dot
from .spectra.pipeline import DEFAULT_SEARCH_BOUND
from .tambara import check_all, cohomological, forget_pair
from .transfer import (
    CompatiblePair,
    compatibility_violation,
    enumerate_compatible_pairs,
    enumerate_transfer_systems,
    is_saturated,
    parse_system,
    saturated_hull,
    system_name,
)
from .verify import default_seed, run_suite


CONSTRUCTIONS = ("burnside", "constantZ", "initial")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- selectors

def parse_group(text: str | None) -> int | None:
    if text is None:
        return None
    kind, _, n = text.partition(":")
    if kind != "cyclic" or not n.isdigit() or int(n) < 1:
        raise UsageError(f"unknown group {text!r}; expected cyclic:n")
    return int(n)


def _construction_text(args) -> str:
    text = args.construction
    if text is None:
        raise UsageError("--construction is required")
    kind = text.split(":", 1)[0]
    if kind not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {kind!r}; expected one of {', '.join(CONSTRUCTIONS)}")
    if ":" in text:
        if args.prime:
            raise UsageError("give primes either inside --construction or with --prime, not both")
        return text
    if args.prime:
        ps = [s for s in args.prime.split(",") if s]
        if len(ps) == 1:
            n = parse_group(args.group)
            if n is None:
                return f"{text}:p={ps[0]}"
            e, m = 0, n
            while m % int(ps[0]) == 0:
                m //= int(ps[0])
                e += 1
            if m != 1:
                raise UsageError(f"cyclic:{n} is not a power of {ps[0]}")
            return f"{text}:p={ps[0]},n={e}"
        if len(ps) == 2:
            return f"{text}:pq={ps[0]},{ps[1]}"
        raise UsageError("--prime takes p or p,q")
    n = parse_group(args.group)
    if n is None:
        raise UsageError(f"construction {text!r} needs a group (use --group or --prime)")
    return f"{text}:order={n}"


def _diagram(args):
    try:
        T = parse_construction(_construction_text(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = parse_group(args.group)
    if n is not None and n != T.lattice.group_order:
        raise UsageError(f"--group cyclic:{n} disagrees with the construction")
    return T


def parse_pair(lat, text: str) -> CompatiblePair:
    """``Om,Oa`` where each side is a name (Otriv, O1, ...) or edges ``1<2|1<3``."""
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"pair {text!r} must look like Om,Oa")
    try:
        Om, Oa = (parse_system(lat, s) for s in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = compatibility_violation(Om, Oa)
    if bad is not None:
        raise UsageError(f"({system_name(Om)},{system_name(Oa)}) is not a compatible pair: {bad}")
    return CompatiblePair(Om, Oa)


def _pairs(args, T) -> list[CompatiblePair]:
    lat = T.lattice
    if args.pair:
        return [parse_pair(lat, args.pair)]
    return enumerate_compatible_pairs(lat)


# ----------------------------------------------------------------- verbs

def cmd_enumerate(args) -> tuple[int, str]:
    n = parse_group(args.group)
    if n is None:
        raise UsageError("enumerate needs --group cyclic:n")
    lat = cyclic_lattice(n)
    if args.what == "systems":
        systems = enumerate_transfer_systems(lat)
        if args.format == "json":
            return 0, _json({"group_order": n, "count": len(systems),
                             "systems": [{"name": system_name(s), "edges": s.to_json(),
                                          "saturated": is_saturated(s)} for s in systems]})
        lines = [f"{len(systems)} transfer systems"]
        for s in systems:
            lines.append(f"  {system_name(s):24s} {'saturated' if is_saturated(s) else ''}".rstrip())
        return 0, "\n".join(lines) + "\n"
    pairs = enumerate_compatible_pairs(lat)
    if args.format == "json":
        return 0, _json({"group_order": n, "count": len(pairs),
                         "pairs": [{"mult": system_name(p.mult), "add": system_name(p.add)} for p in pairs]})
    lines = [f"{len(pairs)} compatible pairs"]
    for p in pairs:
        lines.append(f"  ({system_name(p.mult)},{system_name(p.add)})")
    return 0, "\n".join(lines) + "\n"


def cmd_hull(args) -> tuple[int, str]:
    n = parse_group(args.group)
    if n is None:
        raise UsageError("hull needs --group cyclic:n")
    lat = cyclic_lattice(n)
    try:
        systems = [parse_system(lat, args.system)] if args.system else enumerate_transfer_systems(lat)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(system_name(s), system_name(saturated_hull(s))) for s in systems]
    if args.format == "json":
        return 0, _json([{"system": a, "hull": b} for a, b in rows])
    return 0, "".join(f"Hull({a}) = {b}\n" for a, b in rows)


def cmd_check(args) -> tuple[int, str]:
    T = _diagram(args)
    seed = args.seed
    out, failed = [], False
    for pair in _pairs(args, T) if args.pair else [None]:
        D = T if pair is None else forget_pair(T, pair.mult, pair.add)
        bad = check_all(D, args.samples, seed)
        failed |= bool(bad)
        tag = "" if pair is None else f" ({system_name(pair.mult)},{system_name(pair.add)})"
        out.append(f"{'FAIL' if bad else 'PASS'} axioms {D.full().name}{tag}: {args.samples} samples, seed {seed}")
        out += [f"  {ce}" for ce in bad]
    rep = cohomological(T)
    out.append(f"additively cohomological: {rep.additive}" +
               (f" (witness {rep.additive_witness})" if rep.additive_witness else ""))
    out.append(f"multiplicatively cohomological: {rep.multiplicative}" +
               (f" (witness {rep.multiplicative_witness})" if rep.multiplicative_witness else ""))
    if args.format == "json":
        return int(failed), _json({"construction": T.name, "ok": not failed, "lines": out})
    return int(failed), "\n".join(out) + "\n"


def _spectra(args):
    T = _diagram(args)
    specs = []
    for pair in _pairs(args, T):
        specs.append(compute_spectrum(forget_pair(T, pair.mult, pair.add), bound=args.bound))
    return specs


def cmd_spectrum(args) -> tuple[int, str]:
    specs = _spectra(args)
    if args.format == "json":
        payload = specs[0].to_json() if args.pair else {"spectra": [s.to_json() for s in specs]}
        return 0, _json(payload)
    if args.format == "dot":
        return 0, "".join(to_dot(s) for s in specs)
    text = "\n".join(s.to_text() for s in specs) + "\n"
    if not args.pair and len(specs) <= 30:
        text += f"{len(homeomorphism_classes(specs))} homeomorphism classes\n"
    return 0, text


def cmd_export(args) -> tuple[int, str]:
    specs = _spectra(args)
    if args.format == "dot":
        return 0, "".join(to_dot(s) for s in specs)
    classes = homeomorphism_classes(specs) if len(specs) <= 30 else []
    return 0, _json({"version": __version__, "spectra": [s.to_json() for s in specs],
                     "homeomorphism_classes": [[specs[i].pair_text() for i in c] for c in classes]})


def cmd_verify(args) -> tuple[int, str]:
    if args.target != "paper":
        raise UsageError(f"unknown verify target {args.target!r}; expected 'paper'")
    only = None
    if args.only:
        try:
            only = [int(s) for s in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma separated criterion numbers") from None
        if any(k < 1 or k > 10 for k in only):
            raise UsageError("criteria are numbered 1 to 10")
    checks = run_suite(args.seed, only)
    failed = any(not c.ok for c in checks)
    if args.format == "json":
        return int(failed), _json({"seed": args.seed, "ok": not failed,
                                   "checks": [{"criterion": c.criterion, "title": c.title, "ok": c.ok,
                                               "detail": c.detail} for c in checks]})
    lines = [c.line() for c in checks]
    lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed (seed {args.seed})")
    return int(failed), "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="cyclic:n")
    common.add_argument("--construction", help="burnside, constantZ or initial, e.g. burnside:p=2,n=2")
    common.add_argument("--pair", help="Om,Oa by name (Otriv,O1,O2,O3,Ocomp) or edges such as 1<2|1<3")
    common.add_argument("--prime", help="p or p,q when the construction does not name its group")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (default: $TAMBARA_SEED)")
    common.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND, help="coefficient bound for searches")
    common.add_argument("--out", help="write output to FILE instead of stdout")

    ap = argparse.ArgumentParser(prog="bitambara", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"bitambara {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="transfer systems or compatible pairs")
    p.add_argument("what", choices=("systems", "pairs"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hull", parents=[common], help="saturated hull of a transfer system")
    p.add_argument("system", nargs="?", help="name or edges; all systems when omitted")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("check", parents=[common], help="axiom and cohomology checks")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectrum", parents=[common], help="prime spectrum for one or all pairs")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("export", parents=[common], help="spectra of every pair as JSON or DOT")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common], help="run the golden suite")
    p.add_argument("target", help="paper")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        args.seed = default_seed()
    try:
        if args.format == "dot" and args.verb not in ("spectrum", "export"):
            raise UsageError("--format dot applies to spectrum and export")
        status, text = args.func(args)
    except UsageError as exc:
        print(ap.format_usage().rstrip(), file=stderr)
        print(f"bitambara: error: {exc}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
