"""Command line harness: ``localdom {gen,run,exact,verify,report}``.

Reports are JSON lines: an optional header carrying a timestamp, one row per
(instance, algorithm), and a closing summary. Exit codes: 0 success, 1 an
invariant failed or an algorithm returned an invalid set, 2 usage or I/O
error.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import algos, exact, gen, invariants
from .config import DEFAULT_DIAM_CAP, DEFAULT_R1, DEFAULT_R2, AlgorithmConfig
from .cuts import enumerate_cut_sets
from .graph import Graph, GraphFormatError, format_edgelist, read_edgelist

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2
GRAPH_SUFFIXES = (".txt", ".el", ".edges")


class UsageError(Exception):
    pass


def _emit(out, obj) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _ratio_fields(chosen: int, opt: int | None) -> dict:
    if not opt:
        return {"ratio": None, "ratio_decimal": None}
    r = Fraction(chosen, opt)
    return {"ratio": f"{r.numerator}/{r.denominator}", "ratio_decimal": round(float(r), 6)}


def _config(args) -> AlgorithmConfig:
    diam = None if args.diam_cap is not None and args.diam_cap <= 0 else args.diam_cap
    try:
        return AlgorithmConfig(r1=args.r1, r2=args.r2, diam_cap=diam, seed=args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, raw = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def _sidecar(path: Path) -> dict:
    side = path.with_suffix(path.suffix + ".json")
    if side.exists():
        return json.loads(side.read_text(encoding="utf-8"))
    return {}


def _graph_files(paths) -> list[Path]:
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix in GRAPH_SUFFIXES))
        elif p.exists():
            files.append(p)
        else:
            raise UsageError(f"no such file or directory: {p}")
    return files


def _open_out(args):
    if args.out in (None, "-"):
        return sys.stdout, False
    return open(args.out, "w", encoding="utf-8", newline="\n"), True


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    try:
        spec = gen.GeneratorSpec(args.family, args.size, _parse_params(args.param), args.seed)
        g = gen.generate(spec)
    except (ValueError, TypeError, gen.GenerationExhausted) as e:
        raise UsageError(str(e)) from None
    meta = {"family": spec.family, "size": spec.size, "params": dict(spec.params),
            "seed": spec.seed, "n": g.n, "m": g.m}
    if args.certify:
        meta["certified_t"] = gen.certify_class(g, args.minor_cap)
    text = format_edgelist(g, comment=spec.label())
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        out = Path(args.out)
        out.write_text(text, encoding="utf-8")
        out.with_suffix(out.suffix + ".json").write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK


# ---------------------------------------------------------------------------
# run


def _instances(args):
    """Yield ``(instance id, family, graph, meta)`` in deterministic order."""
    if args.plan:
        try:
            plan = json.loads(Path(args.plan).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read plan: {e}") from None
        for i, item in enumerate(plan.get("instances", [])):
            if "path" in item:
                p = Path(item["path"])
                yield f"{i}:{p.name}", _sidecar(p).get("family", "file"), _read(p), _sidecar(p)
            else:
                try:
                    spec = gen.GeneratorSpec(item["family"], item["size"], item.get("params", {}), item.get("seed", 0))
                    g = gen.generate(spec)
                except (KeyError, ValueError, TypeError) as e:
                    raise UsageError(f"plan instance {i}: {e}") from None
                yield f"{i}:{spec.label()}", spec.family, g, {}
    for p in _graph_files(args.graphs):
        meta = _sidecar(p)
        yield p.name, meta.get("family", "file"), _read(p), meta


def _read(p: Path) -> Graph:
    try:
        return read_edgelist(p)
    except OSError as e:
        raise UsageError(f"{p}: {e}") from None
    except GraphFormatError as e:
        raise UsageError(f"{p}: {e}") from None


def _plan_algorithms(args) -> list[str]:
    names = list(args.algo or [])
    if args.plan:
        try:
            names += json.loads(Path(args.plan).read_text(encoding="utf-8")).get("algorithms", [])
        except (OSError, json.JSONDecodeError, AttributeError) as e:
            raise UsageError(f"cannot read plan: {e}") from None
    names = names or ["algo1"]
    for name in names:
        if name not in algos.ALGORITHMS:
            raise UsageError(f"unknown algorithm {name!r}; choose from {', '.join(algos.ALGORITHMS)}")
    return list(dict.fromkeys(names))


def cmd_run(args) -> int:
    cfg = _config(args)
    names = _plan_algorithms(args)
    instances = list(_instances(args))  # fail before any output is written
    out, close = _open_out(args)
    status = EXIT_OK
    summary = {"rows": 0, "valid": 0, "fallback": 0, "max_ratio": {}}
    try:
        if not args.no_timestamp:
            _emit(out, {"type": "header", "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
                        "config": _cfg_dict(cfg)})
        for iid, family, g, meta in instances:
            opt = {}
            t = meta.get("certified_t")
            if args.certify and t is None and g.n <= args.minor_cap:
                t = gen.certify_class(g, args.minor_cap)
            for name in names:
                try:
                    res = algos.run_algorithm(name, g, cfg)
                except ValueError as e:
                    print(f"localdom: {iid}: {name}: {e}", file=sys.stderr)
                    status = EXIT_USAGE
                    continue
                valid = algos.is_valid(res, g)
                if res.problem not in opt:
                    opt[res.problem] = _exact_size(g, res.problem, args.exact_cap)
                row = _row(iid, family, g, t, name, res, opt[res.problem], valid)
                _emit(out, row)
                summary["rows"] += 1
                summary["valid"] += valid
                summary["fallback"] += res.fallback_used
                if row["ratio_decimal"] is not None:
                    key = f"{family}/{name}"
                    summary["max_ratio"][key] = max(summary["max_ratio"].get(key, 0), row["ratio_decimal"])
                if not valid:
                    print(f"localdom: {iid}: {name} returned an invalid set", file=sys.stderr)
                    _emit(out, {"type": "summary", "aborted": True, **summary})
                    return EXIT_INVARIANT
        _emit(out, {"type": "summary", "aborted": False, **summary})
    finally:
        if close:
            out.close()
    return status


def _exact_size(g: Graph, problem: str, cap: int) -> int | None:
    if g.n > cap:
        return None
    return exact.mvc_size(g, cap) if problem == "mvc" else exact.mds_size(g, cap)


def _cfg_dict(cfg: AlgorithmConfig) -> dict:
    return {"r1": cfg.r1, "r2": cfg.r2, "diam_cap": cfg.diam_cap, "brute_cap": cfg.brute_cap, "seed": cfg.seed}


def _row(iid, family, g, t, name, res: algos.RunResult, opt, valid) -> dict:
    return {
        "type": "row",
        "instance": iid,
        "family": family,
        "n": g.n,
        "m": g.m,
        "certified_t": t,
        "algorithm": name,
        "problem": res.problem,
        "chosen": sorted(res.chosen),
        "chosen_size": len(res.chosen),
        "exact_size": opt,
        **_ratio_fields(len(res.chosen), opt),
        "rounds": res.rounds.rounds_used,
        "phases": res.phase_counts(),
        "fallback": res.fallback_used,
        "guarantee": "void" if res.fallback_used else "held",
        "valid": valid,
    }


# ---------------------------------------------------------------------------
# exact


def cmd_exact(args) -> int:
    g = _read(Path(args.graph))
    try:
        if args.problem == "mvc":
            s = exact.mvc_exact(g, args.exact_cap)
        else:
            s = exact.mds_exact(g, args.exact_cap)
    except exact.ExactSizeError as e:
        raise UsageError(str(e)) from None
    _emit(sys.stdout, {"problem": args.problem, "n": g.n, "m": g.m, "size": len(s), "set": sorted(s)})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def golden_dir() -> Path:
    return Path(str(resources.files("localdom") / "golden"))


def cmd_verify(args) -> int:
    corpus = Path(args.corpus) if args.corpus else golden_dir()
    if not corpus.is_dir():
        raise UsageError(f"not a directory: {corpus}")
    cfg = _config(args)
    files = _graph_files([corpus])
    if not files:
        print(f"localdom: warning: no graph files in {corpus}", file=sys.stderr)
    out, close = _open_out(args)
    failed = 0
    parse_errors = 0
    try:
        expected = {}
        exp_path = corpus / "expected.json"
        if exp_path.exists():
            expected = json.loads(exp_path.read_text(encoding="utf-8"))
        for p in files:
            try:
                g = read_edgelist(p)
            except (OSError, GraphFormatError) as e:
                print(f"localdom: {p.name}: parse failure: {e}", file=sys.stderr)
                _emit(out, {"type": "error", "file": p.name, "error": str(e)})
                parse_errors += 1
                continue
            checks = invariants.check_graph(g, cfg, args.exact_cap, args.minor_cap, args.seed)
            checks += _expected_checks(g, expected.get(p.name, {}), cfg)
            bad = [c for c in checks if c.ok is False]
            failed += bool(bad)
            _emit(out, {"type": "file", "file": p.name, "n": g.n, "m": g.m, "pass": not bad,
                        "checks": [c.as_dict() for c in checks]})
        _emit(out, {"type": "summary", "files": len(files), "failed": failed, "parse_errors": parse_errors})
    finally:
        if close:
            out.close()
    if failed:
        return EXIT_INVARIANT
    return EXIT_USAGE if parse_errors else EXIT_OK


def _expected_checks(g: Graph, exp: dict, cfg: AlgorithmConfig) -> list[invariants.Check]:
    out = []
    for key, want in sorted(exp.items()):
        if key == "exact":
            got = exact.mds_size(g)
        elif key == "exact_set":
            got = sorted(exact.mds_exact(g))
        elif key in ("X", "I"):
            X, I = enumerate_cut_sets(g, cfg if "radii" not in exp else AlgorithmConfig(*exp["radii"]))
            got = sorted(X if key == "X" else I)
        elif key == "radii":
            continue
        else:
            c = cfg if "radii" not in exp else AlgorithmConfig(*exp["radii"])
            got = len(algos.run_algorithm(key, g, c).chosen)
        out.append(invariants.Check(f"expected_{key}", got == want, f"got {got}, want {want}"))
    return out


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    agg: dict[tuple[str, str], dict] = {}
    try:
        lines = Path(args.report).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UsageError(str(e)) from None
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError:
            raise UsageError(f"line {lineno}: not JSON") from None
        if row.get("type") != "row":
            continue
        a = agg.setdefault((row["family"], row["algorithm"]),
                           {"rows": 0, "valid": 0, "fallback": 0, "max_ratio": None, "max_rounds": 0})
        a["rows"] += 1
        a["valid"] += bool(row["valid"])
        a["fallback"] += bool(row["fallback"])
        a["max_rounds"] = max(a["max_rounds"], row["rounds"])
        if row.get("ratio"):
            r = Fraction(row["ratio"])
            if a["max_ratio"] is None or r > Fraction(a["max_ratio"]):
                a["max_ratio"] = f"{r.numerator}/{r.denominator}"
    for (family, name), a in sorted(agg.items()):
        _emit(sys.stdout, {"family": family, "algorithm": name, **a})
    return EXIT_OK if all(a["valid"] == a["rows"] for a in agg.values()) else EXIT_INVARIANT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="localdom", description="LOCAL dominating-set experiments")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algo_flags=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        if algo_flags:
            sp.add_argument("--r1", type=int, default=DEFAULT_R1)
            sp.add_argument("--r2", type=int, default=DEFAULT_R2)
            sp.add_argument("--diam-cap", type=int, default=DEFAULT_DIAM_CAP,
                            help="0 lets the brute-force phase gather whole components")
            sp.add_argument("--exact-cap", type=int, default=exact.DEFAULT_EXACT_CAP)
            sp.add_argument("--minor-cap", type=int, default=gen.MINOR_CAP)
            sp.add_argument("--no-timestamp", action="store_true")

    g = sub.add_parser("gen", help="write a generated instance as an edge list")
    g.add_argument("family", choices=gen.FAMILIES)
    g.add_argument("size", type=int)
    g.add_argument("--param", action="append", metavar="KEY=VALUE")
    g.add_argument("--certify", action="store_true", help="record the certified t in the sidecar")
    g.add_argument("--minor-cap", type=int, default=gen.MINOR_CAP)
    common(g, algo_flags=False)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run algorithms and write JSON-lines rows")
    r.add_argument("graphs", nargs="*", help="edge-list files or directories")
    r.add_argument("--plan", help="JSON plan with 'instances' and 'algorithms'")
    r.add_argument("--algo", action="append", help=f"one of {', '.join(algos.ALGORITHMS)} (repeatable)")
    r.add_argument("--certify", action="store_true")
    common(r)
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("exact", help="lex-minimum optimum of one instance")
    e.add_argument("graph")
    e.add_argument("--problem", choices=("mds", "mvc"), default="mds")
    e.add_argument("--exact-cap", type=int, default=exact.DEFAULT_EXACT_CAP)
    e.set_defaults(func=cmd_exact)

    v = sub.add_parser("verify", help="run the invariant suite over a corpus directory")
    v.add_argument("corpus", nargs="?", help="directory (default: the bundled golden corpus)")
    common(v)
    v.set_defaults(func=cmd_verify)

    rep = sub.add_parser("report", help="aggregate a JSON-lines report")
    rep.add_argument("report")
    rep.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.command == "run" and not args.graphs and not args.plan:
        print("localdom run: give graph files or --plan", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"localdom {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
