"""Command-line front end.

Exit codes: 0 success, 1 falsification detected, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from . import conjectures as cj
from .ehrhart import ehrhart_S, hstar_S, hstar_sigma, quasipoly_sigma
from .errors import CapacityError, FalsificationError
from .geometry import gorenstein_witness, hstar_P, special_simplex, vertices
from .graphfactor import decompose
from .symmat import DEFAULT_MAX_POINTS, FAMILIES, FULL, UPPER, SymIntMatrix, count_points, enumerate_points
from .toric import CONVENTIONS, LEX, ANTILEX, LITERAL, PROOF, full_config, make_order, toric_groebner, vertex_config, verify_theorem13

CACHE_ENV = "SYMSTOCH_CACHE_DIR"

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    family: str | None = None
    dilate: int | None = None
    convention: str = PROOF
    tie_break: str = LEX
    count_mode: str = FULL
    max_points: int = DEFAULT_MAX_POINTS
    max_basis: int = 20000
    time_budget: float | None = None
    output: str = "json"
    cache_dir: str | None = None
    extra: tuple = ()

    def __post_init__(self):
        for name in ("max_points", "max_basis"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise UsageError("--time-budget must be positive")

    def cache_key(self) -> str:
        d = asdict(self)
        d.pop("cache_dir")
        d.pop("output")
        d["version"] = __version__
        return hashlib.sha256(json.dumps(d, sort_keys=True, default=str).encode()).hexdigest()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--max-points", type=_positive, default=DEFAULT_MAX_POINTS)
    common.add_argument("--max-basis", type=_positive, default=20000)
    common.add_argument("--time-budget", type=float, default=None)
    common.add_argument("--convention", choices=CONVENTIONS, default=PROOF)
    common.add_argument("--tie-break", choices=(LEX, ANTILEX), default=LEX)
    common.add_argument("--count-mode", choices=(FULL, UPPER), default=FULL)
    common.add_argument("--allow-large", action="store_true", help="permit n = 4 Groebner runs")

    p = _Parser(prog="symstoch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("points", parents=[common], help="count or enumerate lattice points of a dilate")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--family", choices=FAMILIES, default="S")
    s.add_argument("--enumerate", action="store_true")
    s.add_argument("--upto", type=int, default=None, help="emit counts for m = 0..UPTO")

    s = sub.add_parser("hstar", parents=[common], help="h*-vector of S_n, Sigma_n or P_n")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--family", choices=("S", "Sigma", "P"), default="S")

    s = sub.add_parser("quasi", parents=[common], help="Ehrhart quasipolynomial constituents of Sigma_n")
    s.add_argument("--n", type=_positive, required=True)

    s = sub.add_parser("decompose", parents=[common], help="split a lattice point of mS_n into m points of S_n")
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--in", dest="infile", required=True, help="matrix JSON file, or - for stdin")

    s = sub.add_parser("groebner", parents=[common], help="reduced Groebner basis of a toric ideal")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--config", choices=("full", "vertices"), default="full")

    s = sub.add_parser("verify-thm13", parents=[common], help="check the four Groebner basis properties")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--only", action="store_true", help="only the --convention order, not both")

    for name, helptext in (("gorenstein", "Gorenstein witness"), ("simplex", "circulant special simplex"),
                           ("vertices", "vertices among the lattice points of S_n")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=_positive, required=True)

    s = sub.add_parser("conjecture", parents=[common], help="run a conjecture checker")
    s.add_argument("id", choices=("3.3", "4.1a", "4.1b", "4.2", "4.3", "4.4"))
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--sample", type=_positive, default=None, help="random rankings for 4.4")

    sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    return p


def _check_n(n: int, allow_large: bool, limit: int = 3) -> None:
    if n > limit and not allow_large:
        raise CapacityError(f"n = {n} exceeds the default limit {limit}; pass --allow-large")


def _run(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "points":
        if args.m < 0:
            raise UsageError("--m must be nonnegative")
        if args.upto is not None:
            rows = [{"m": m, "count": count_points(args.n, m, args.family)} for m in range(args.upto + 1)]
            return {"n": args.n, "family": args.family, "counts": rows}, EXIT_OK
        if args.enumerate:
            return enumerate_points(args.n, args.m, args.family, args.max_points).to_json(), EXIT_OK
        c = count_points(args.n, args.m, args.family)
        return {"n": args.n, "family": args.family, "counts": [{"m": args.m, "count": c}]}, EXIT_OK
    if cmd == "hstar":
        if args.family == "S":
            h = hstar_S(args.n)
            out = h.to_json()
            data = ehrhart_S(args.n)
            out["counts"] = [{"m": m, "count": c} for m, c in enumerate(data.counts)]
        elif args.family == "Sigma":
            out = hstar_sigma(args.n).to_json()
        else:
            out = hstar_P(args.n).to_json()
        return out, EXIT_OK
    if cmd == "quasi":
        q = quasipoly_sigma(args.n)
        return {"n": args.n, "f": [str(c) for c in q.f.coeffs], "g": [str(c) for c in q.g.coeffs],
                "deg_f": q.f.degree, "deg_g": q.g.degree}, EXIT_OK
    if cmd == "decompose":
        X = _read_matrix(args.infile)
        try:
            dec = decompose(X, args.m)
        except ValueError as e:
            raise UsageError(str(e))
        return dec.to_json(), EXIT_OK
    if cmd == "groebner":
        _check_n(args.n, args.allow_large)
        cfg = full_config(args.n) if args.config == "full" else vertex_config(args.n)
        order = make_order(cfg.points, args.convention, args.count_mode, args.tie_break)
        gb = toric_groebner(cfg, order, args.max_basis, args.time_budget)
        out = gb.to_json()
        out["points"] = [P.to_json() for P in gb.config.points]
        return out, EXIT_OK
    if cmd == "verify-thm13":
        _check_n(args.n, args.allow_large)
        cfg = full_config(args.n)
        convs = [args.convention] if args.only else [LITERAL, PROOF]
        reports = {}
        for conv in convs:
            gb = toric_groebner(cfg, make_order(cfg.points, conv, args.count_mode, args.tie_break),
                                args.max_basis, args.time_budget)
            reports[conv] = verify_theorem13(gb)
        p3 = [c for c, r in reports.items() if r.p3]
        falsified = not all(r.p1 and r.p2 and r.p4 for r in reports.values()) or not p3
        out = {"n": args.n, "p3_holds_for": p3, "reports": {c: r.to_json() for c, r in reports.items()}}
        return out, EXIT_FALSIFIED if falsified else EXIT_OK
    if cmd == "gorenstein":
        w = gorenstein_witness(args.n)
        if w is None:
            return {"gorenstein": False, "index": None, "n": args.n, "witness": None}, EXIT_OK
        return {"gorenstein": True, "index": w[0], "n": args.n, "witness": w[1].to_json()}, EXIT_OK
    if cmd == "simplex":
        if args.n % 2:
            raise UsageError("special simplex needs even n")
        sx = special_simplex(args.n)
        return {"n": args.n, "vertices": [V.to_json() for V in sx.vertices], "violations": sx.check()}, EXIT_OK
    if cmd == "vertices":
        return vertices(args.n).to_json(), EXIT_OK
    if cmd == "conjecture":
        return _conjecture(args), EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def _conjecture(args) -> dict:
    n, cid = args.n, args.id
    if cid == "3.3":
        return cj.check_squarefree_triangulation(n, args.convention, allow_large=args.allow_large).to_json()
    if cid == "4.2":
        return cj.check_refined_order(n, args.allow_large).to_json()
    if cid == "4.3":
        return cj.check_hstar_P(n).to_json()
    if cid == "4.4":
        return cj.check_vertex_ideal(n, sample=args.sample, allow_large=args.allow_large).to_json()
    _check_n(n, args.allow_large)
    cfg = full_config(n)
    gb = toric_groebner(cfg, make_order(cfg.points, args.convention, args.count_mode, args.tie_break),
                        args.max_basis, args.time_budget)
    rep = cj.check_connectivity(gb) if cid == "4.1a" else cj.check_zero_one_summand(gb)
    return rep.to_json()


def _read_matrix(path: str) -> SymIntMatrix:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    try:
        return SymIntMatrix.from_json(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as e:
        raise UsageError(f"malformed matrix in {path}: {e}")


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True)
    if fmt == "csv":
        rows = payload.get("counts")
        if not isinstance(rows, list) or not all(isinstance(r, dict) for r in rows):
            raise UsageError("csv output is only available for count tables")
        return "m,count\n" + "".join(f"{r['m']},{r['count']}\n" for r in rows).rstrip("\n")
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(payload.items()))


def _config_from_args(args) -> RunConfig:
    extra = tuple(sorted(
        (k, v) for k, v in vars(args).items()
        if k not in {"command", "n", "family", "m", "convention", "tie_break", "count_mode", "max_points",
                     "max_basis", "time_budget", "output", "cache_dir"}
    ))
    if getattr(args, "infile", None) not in (None, "-"):
        try:
            digest = hashlib.sha256(Path(args.infile).read_bytes()).hexdigest()
        except OSError as e:
            raise UsageError(f"cannot read {args.infile}: {e}")
        extra += (("infile_sha256", digest),)
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        family=getattr(args, "family", None),
        dilate=getattr(args, "m", None),
        convention=args.convention,
        tie_break=args.tie_break,
        count_mode=args.count_mode,
        max_points=args.max_points,
        max_basis=args.max_basis,
        time_budget=args.time_budget,
        output=args.output,
        cache_dir=args.cache_dir or os.environ.get(CACHE_ENV),
        extra=extra,
    )


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}, sort_keys=True), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "suite":
            from .suite import run_all

            return EXIT_OK if run_all() else EXIT_FALSIFIED
        cfg = _config_from_args(args)
        cache_file = None
        if cfg.cache_dir and not (args.command == "decompose" and args.infile == "-"):
            cache_file = Path(cfg.cache_dir) / f"{cfg.cache_key()}.json"
        if cache_file is not None and cache_file.exists():
            entry = json.loads(cache_file.read_text())
            payload, code = entry["payload"], entry["code"]
        else:
            payload, code = _run(args)
            payload = json.loads(json.dumps(payload, sort_keys=True))
            if cache_file is not None:
                cache_file.parent.mkdir(parents=True, exist_ok=True)
                cache_file.write_text(json.dumps({"payload": payload, "code": code}, sort_keys=True))
        print(render(payload, cfg.output))
        return code
    except (UsageError, ValueError) as e:
        return _error("usage", str(e), EXIT_USAGE)
    except CapacityError as e:
        return _error("resource-limit", str(e), EXIT_LIMIT)
    except FalsificationError as e:
        return _error("falsification", str(e), EXIT_FALSIFIED)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
