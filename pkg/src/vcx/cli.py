"""Command-line entry point.

Exit codes: 0 success, 1 usage or parameter error, 2 unreadable or malformed
input, 3 verification failure, 4 timeout / incomplete search.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from vcx.analysis import analysis_report, transversal_number
from vcx.canon import CapabilityError
from vcx.constructions import (
    NAMED_FAMILIES,
    bound_table,
    paper_family,
    random_family,
    size_annotation,
    star_family,
)
from vcx.core import (
    DomainError,
    Family,
    find_shattered_set,
    shattered_member,
    vc_dimension,
)
from vcx.formats import FamilyFormatError, dump_fam, read_family, write_family
from vcx.search.run import SearchConfig, SearchReport, run_search
from vcx.witness import MemberShatteredError, witness_assignment, witness_report

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY, EXIT_INCOMPLETE = 0, 1, 2, 3, 4
TIME_LIMIT_ENV = "VCX_TIME_LIMIT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means I/O here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    subcommand: str
    flags: dict[str, Any]
    input_digests: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    exit_code: int = 0
    wall_time: float = 0.0


def _emit(obj: Any) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load(path: str, manifest: RunManifest) -> Family:
    data = Path(path).read_bytes()
    manifest.input_digests[path] = hashlib.sha256(data).hexdigest()
    return read_family(path)


def _time_limit(args: argparse.Namespace) -> float | None:
    if getattr(args, "time_limit", None) is not None:
        return args.time_limit
    env = os.environ.get(TIME_LIMIT_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TIME_LIMIT_ENV} must be a number of seconds, got {env!r}") from None
    return None


# subcommands ----------------------------------------------------------------


def cmd_vcdim(args, manifest: RunManifest) -> int:
    family = _load(args.file, manifest)
    d = vc_dimension(family)
    if args.json:
        _emit({"file": args.file, "n": family.n, "k": family.uniform_k, "size": len(family), "vc_dimension": d})
    else:
        print(d)
    return EXIT_OK


def cmd_verify(args, manifest: RunManifest) -> int:
    family = _load(args.file, manifest)
    d = args.d
    if family.uniform_k == d + 1:
        bad = shattered_member(family)
    else:
        bad = find_shattered_set(family, d + 1)
    ok = bad is None
    report: dict[str, Any] = {
        "file": args.file,
        "n": family.n,
        "k": family.uniform_k,
        "uniform": family.uniform_k is not None,
        "size": len(family),
        "d": d,
        "pass": ok,
        "vc_dimension": vc_dimension(family) if family.masks else None,
        "counterexample": None if ok else list(Family.from_sets(family.n, [bad]).sets()[0]),
        "annotation": size_annotation(family.n, family.uniform_k, d, len(family)),
    }
    if family.masks:
        report["tau"] = transversal_number(family).tau
    _emit(report)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_witnesses(args, manifest: RunManifest) -> int:
    family = _load(args.file, manifest)
    try:
        report = witness_report(family)
    except MemberShatteredError as exc:
        _emit({"file": args.file, "error": str(exc), "member": list(Family.from_sets(family.n, [exc.member]).sets()[0])})
        return EXIT_VERIFY
    report["file"] = args.file
    _emit(report)
    return EXIT_OK


def cmd_analyze(args, manifest: RunManifest) -> int:
    family = _load(args.file, manifest)
    part = family
    if args.part == "C":
        try:
            part = witness_assignment(family).empty_members
        except MemberShatteredError as exc:
            _emit({"file": args.file, "error": str(exc)})
            return EXIT_VERIFY
    report = analysis_report(part)
    report["file"] = args.file
    report["part"] = args.part
    _emit(report)
    return EXIT_OK


def _search_config(args, mode: str) -> SearchConfig:
    return SearchConfig(
        n=args.n,
        k=args.k,
        d=args.d,
        mode=mode,  # type: ignore[arg-type]
        target=getattr(args, "target", None),
        time_limit=_time_limit(args),
        workers=args.workers,
        symmetry_breaking=not args.no_symmetry,
        bound=not getattr(args, "no_bound", False),
        baseline=getattr(args, "baseline", False),
        split_depth=args.split_depth,
    )


def _finish_search(args, report: SearchReport, manifest: RunManifest) -> int:
    if args.certificate and report.certificate is not None:
        write_family(report.certificate, args.certificate, comment=f"{report.config.mode} n={report.config.n}")
        manifest.outputs.append(args.certificate)
    _emit(report.to_dict())
    if not report.complete:
        return EXIT_INCOMPLETE
    if report.certificate is not None and not report.verified:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_search_max(args, manifest: RunManifest) -> int:
    return _finish_search(args, run_search(_search_config(args, "maximize")), manifest)


def cmd_decide(args, manifest: RunManifest) -> int:
    return _finish_search(args, run_search(_search_config(args, "decide")), manifest)


def cmd_enumerate(args, manifest: RunManifest) -> int:
    report = run_search(_search_config(args, "enumerate"))
    if args.out_dir and report.classes:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, cls in enumerate(report.classes):
            path = out / f"class_{i:03d}.fam"
            write_family(cls.family, path, comment=f"tau={cls.tau} canonical={cls.canonical.hex()}")
            manifest.outputs.append(str(path))
    return _finish_search(args, report, manifest)


def cmd_generate(args, manifest: RunManifest) -> int:
    if args.name == "star":
        if args.n is None:
            raise UsageError("star needs --n")
        family = star_family(args.n, args.k, args.center)
    elif args.name == "random":
        if args.n is None:
            raise UsageError("random needs --n")
        family = random_family(args.n, args.k, args.k - 1, args.size, args.seed)
    else:
        family = paper_family(args.name)
    if args.output:
        write_family(family, args.output)
        manifest.outputs.append(args.output)
    else:
        sys.stdout.write(dump_fam(family))
    return EXIT_OK


def cmd_bounds(args, manifest: RunManifest) -> int:
    rows = bound_table(range(args.n_min, args.n_max + 1), args.d)
    if args.json:
        _emit(rows)
        return EXIT_OK
    print(f"{'n':>3} {'star':>6} {'AK':>6} {'exact':>6}")
    for row in rows:
        exact = row.get("exact", row.get("known_construction", "?"))
        print(f"{row['n']:>3} {row['star']:>6} {row['ak']:>6} {exact!s:>6}")
    return EXIT_OK


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vcx", description="Exact computations for uniform families of bounded VC-dimension.")
    p.add_argument("--manifest", help="write a JSON run manifest to this path")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="JSON output where plain text is the default")
        return sp

    sp = add("vcdim", cmd_vcdim, "print the VC dimension of a family file")
    sp.add_argument("file")

    sp = add("verify", cmd_verify, "check VC-dimension <= d and annotate the size")
    sp.add_argument("file")
    sp.add_argument("--d", type=int, default=2)

    sp = add("witnesses", cmd_witnesses, "witness assignment and decomposition report")
    sp.add_argument("file")

    sp = add("analyze", cmd_analyze, "transversal, intersection, triangle and link-graph report")
    sp.add_argument("file")
    sp.add_argument("--part", choices=["all", "C"], default="all", help="C = members with empty witness")

    def search_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, default=3)
        sp.add_argument("--d", type=int, default=2)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--time-limit", type=float, default=None, help=f"seconds (default: ${TIME_LIMIT_ENV})")
        sp.add_argument("--no-symmetry", action="store_true", help="do not fix the first member to {1..k}")
        sp.add_argument("--split-depth", type=int, default=2)
        sp.add_argument("--certificate", help="write the certificate family (.fam or .json)")

    sp = add("search-max", cmd_search_max, "maximum size of a (d+1)-uniform family with VC-dim <= d")
    search_flags(sp)
    sp.add_argument("--baseline", action="store_true", help="run the literal backtracking baseline")
    sp.add_argument("--no-bound", action="store_true", help="disable the size bound prune")

    sp = add("decide", cmd_decide, "find a family of the target size or prove none exists")
    search_flags(sp)
    sp.add_argument("--target", type=int, required=True)

    sp = add("enumerate", cmd_enumerate, "all extremal families up to isomorphism (n <= 7)")
    search_flags(sp)
    sp.add_argument("--out-dir", help="write one .fam per class")

    sp = add("generate", cmd_generate, "write a named family")
    sp.add_argument("--name", required=True, choices=["star", "random", *sorted(NAMED_FAMILIES)])
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--center", type=int, default=1)
    sp.add_argument("--size", type=int, default=1 << 30, help="random: stop after this many members")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")

    sp = add("bounds", cmd_bounds, "star / Ahlswede-Khachatrian / exact values")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--n-min", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=12)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bounds" and args.n_min is None:
        args.n_min = args.d + 1
    flags = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    manifest = RunManifest(args.command, flags)
    start = time.monotonic()
    try:
        code = args.func(args, manifest)
    except (UsageError, CapabilityError, DomainError) as exc:
        print(f"vcx {args.command}: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except (FamilyFormatError, OSError) as exc:
        print(f"vcx {args.command}: {exc}", file=sys.stderr)
        code = EXIT_IO
    manifest.exit_code = code
    manifest.wall_time = round(time.monotonic() - start, 6)
    if args.manifest:
        Path(args.manifest).write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
