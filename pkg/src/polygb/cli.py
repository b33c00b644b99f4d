"""Command line: ``polygb <command> ...``.

Exit status: 0 success or property true, 1 property false, 2 input error,
3 pair budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import random
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import families, gbasis
from .conditions import (OBSTRUCTIONS, pi_profile, primality_sufficient, prop21,
                         prop21_violations, thin_obstructions)
from .errors import ParseError, PolyGBError, Timeout
from .geometry import (Vertex, holes, is_thin, is_thin_cycle, maximal_inner_intervals,
                       validate)
from .io import fixture_names, format_ascii, load, load_fixture, to_json

SWEEP_COLUMNS = (["rank", "id", "thin", "simple", "holes"]
                 + [f"quad_o{i}" for i in range(1, 9)]
                 + ["prop21_odd", "prop21_even", "thm34_odd", "thm34_even", "thm24_cert", "prime"])

CHECKS = ("prop21-vs-gb", "thm34", "thm24", "simple-prime", "all")


@dataclass
class RunConfig:
    command: str
    pair_budget: Optional[int]
    degree_bound: Optional[int]
    fmt: str
    jobs: int
    seed: int


def _vertex(text: str) -> Vertex:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"expected a vertex as x,y, got {text!r}") from None
    return Vertex(x, y)


def _intervals(text: str):
    out = []
    for tok in text.split(","):
        try:
            a, b = (int(t) for t in tok.split("-"))
        except ValueError:
            raise ParseError(f"expected intervals like 2-3,4-5, got {text!r}") from None
        out.append((a, b))
    return tuple(out)


def _flag(b) -> str:
    if b is None:
        return ""
    return "1" if b else "0"


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(data):
    _emit(json.dumps(data, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args, cfg: RunConfig) -> int:
    P = load(args.file)
    if cfg.fmt == "json":
        _emit_json({"name": P.name, "rank": P.rank, "valid": True})
    else:
        _emit(f"{P.name}: valid polyomino of rank {P.rank}")
    return 0


def analyze_dict(P) -> dict:
    hs = holes(P)
    maxi = maximal_inner_intervals(P)
    return {
        "name": P.name,
        "rank": P.rank,
        "vertices": len(P.vertices),
        "thin": is_thin(P),
        "simple": not hs,
        "holes": [h.rank for h in hs],
        "inner_intervals": len(P.inner_intervals),
        "maximal_inner_intervals": [str(iv) for iv in maxi],
        "min_maximal_length": min(iv.length for iv in maxi),
        "thin_cycle": is_thin_cycle(P),
        "thin_cycle_linear": is_thin_cycle(P, linear=True),
    }


def cmd_analyze(args, cfg: RunConfig) -> int:
    P = load(args.file)
    d = analyze_dict(P)
    if cfg.fmt == "json":
        _emit_json(d)
        return 0
    lines = [f"{P.name}: rank {d['rank']}, {d['vertices']} vertices"]
    lines.append(f"thin: {str(d['thin']).lower()}")
    nh = len(d['holes'])
    lines.append(f"simple: {str(d['simple']).lower()} ({nh} hole{'' if nh == 1 else 's'}, sizes {d['holes']})")
    lines.append(f"inner intervals: {d['inner_intervals']}")
    lines.append(f"maximal inner intervals: {len(d['maximal_inner_intervals'])}, "
                 f"shortest has {d['min_maximal_length']} cells")
    lines.append(f"thin cycle: {str(d['thin_cycle']).lower()} "
                 f"(linear labelling: {str(d['thin_cycle_linear']).lower()})")
    _emit("\n".join(lines))
    return 0


def cmd_gb(args, cfg: RunConfig) -> int:
    P = load(args.file)
    rot = _vertex(args.rotate_at) if args.rotate_at else None
    order = gbasis.order_for(P, args.order, rot)
    B = gbasis.buchberger(gbasis.inner_2_minors(P), order, cfg.pair_budget)
    M = {(f.plus, f.minus) for f in (gbasis.orient(g, order) for g in gbasis.inner_2_minors(P))}
    minors_are_basis = B.as_set() == M
    if cfg.fmt == "json":
        _emit_json({"name": P.name, "order": order.label(), "size": len(B),
                    "quadratic": B.quadratic, "inner_2_minors_are_basis": minors_are_basis,
                    "elements": [f.text() for f in B]})
    else:
        _emit(f"% {P.name} order {order.label()}: {len(B)} elements, "
              f"quadratic: {str(B.quadratic).lower()}, "
              f"inner 2-minors are the basis: {str(minors_are_basis).lower()}\n" + B.text())
    return 0


def cmd_conditions(args, cfg: RunConfig) -> int:
    P = load(args.file)
    report = primality_sufficient(P)
    thin = is_thin(P)
    obstructions = {p: thin_obstructions(P, p) for p in OBSTRUCTIONS} if thin else None
    if cfg.fmt == "json":
        d = report.to_dict()
        d["name"] = P.name
        d["thin_obstructions"] = None if obstructions is None else {
            p: [[name, list(t)] for name, t in found] for p, found in obstructions.items()}
        _emit_json(d)
        return 0 if report.certified else 1
    lines = [f"{P.name}: rank {P.rank}"]
    for parity in ("odd", "even"):
        bad = prop21_violations(P, parity)
        mark = "holds" if not bad else f"fails ({len(bad)} interval pairs)"
        lines.append(f"quadratic condition, {parity} orders: {mark}")
        for first, second in bad[:3]:
            lines.append(f"  {first} with {second}")
    if obstructions is not None:
        for parity, found in obstructions.items():
            text = ", ".join(f"{name}@{t}" for name, t in found) or "none"
            lines.append(f"thin obstructions, {parity}: {text}")
    if args.vertex:
        v = _vertex(args.vertex)
        lines.append(f"pi profile at {tuple(v)}: {sorted(pi_profile(P, v))}")
    elif args.profiles:
        for v, prof in report.profiles.items():
            lines.append(f"pi profile at ({v.x},{v.y}): {sorted(prof)}")
    if report.certified:
        lines.append(f"primality certificate: yes, {report.parity} orders")
    else:
        lines.append("primality certificate: undecided")
    _emit("\n".join(lines))
    return 0 if report.certified else 1


def cmd_prime(args, cfg: RunConfig) -> int:
    P = load(args.file)
    verdict = gbasis.is_prime(P, cfg.pair_budget)
    brute = None
    if args.bruteforce:
        from .lattice import find_witness_bruteforce
        brute = find_witness_bruteforce(P, cfg.degree_bound, budget=cfg.pair_budget)
    if cfg.fmt == "json":
        d = {"name": P.name, "prime": verdict.prime,
             "witness": None if verdict.witness is None else verdict.witness.text(),
             "witness_vertex": None if verdict.witness_vertex is None else list(verdict.witness_vertex),
             "witness_in_lattice": verdict.witness_in_lattice,
             "witness_normal_form_nonzero": verdict.witness_normal_form_nonzero,
             "transcript": [s.text() for s in verdict.transcript]}
        if args.bruteforce:
            d["bruteforce_witness"] = None if brute is None else brute.text()
        _emit_json(d)
        return 0 if verdict.prime else 1
    lines = [f"{P.name}: {'PRIME' if verdict.prime else 'NOT PRIME'}"]
    if verdict.prime:
        lines.append(f"no variable is a zero divisor modulo I_P ({len(verdict.transcript)} checked)")
    else:
        v = verdict.witness_vertex
        lines.append(f"witness: {verdict.witness.text()}")
        lines.append(f"x_{v.x}_{v.y} times the witness lies in I_P")
        lines.append(f"witness in the lattice ideal: {'yes' if verdict.witness_in_lattice else 'NO'}")
        lines.append("witness normal form modulo I_P nonzero: "
                     f"{'yes' if verdict.witness_normal_form_nonzero else 'NO'}")
    if args.transcript:
        lines.extend("  " + s.text() for s in verdict.transcript)
    if args.bruteforce:
        bound = cfg.degree_bound if cfg.degree_bound is not None else 2 * P.rank
        found = "none" if brute is None else brute.text()
        lines.append(f"brute-force search up to degree {bound}: {found}")
    _emit("\n".join(lines))
    return 0 if verdict.prime else 1


# ---------------------------------------------------------------------------
# sweep


def sweep_row(job):
    rank, idx, cells, budget = job
    P = validate(cells)
    thin = is_thin(P)
    hs = holes(P)
    quad = [gbasis.is_quadratic_gb(P, i) for i in range(1, 9)]
    p_odd, p_even = prop21(P, "odd"), prop21(P, "even")
    t_odd = t_even = None
    if thin:
        t_odd = not thin_obstructions(P, "odd")
        t_even = not thin_obstructions(P, "even")
    cert = primality_sufficient(P).certified
    try:
        prime = _flag(gbasis.is_prime(P, budget).prime)
    except Timeout:
        prime = "timeout"
    return ([str(rank), str(idx), _flag(thin), _flag(not hs), str(len(hs))]
            + [_flag(q) for q in quad]
            + [_flag(p_odd), _flag(p_even), _flag(t_odd), _flag(t_even), _flag(cert), prime])


def row_mismatches(row: Dict[str, str], check: str) -> List[str]:
    out = []
    wanted = CHECKS[:-1] if check == "all" else (check,)
    if "prop21-vs-gb" in wanted:
        for i in range(1, 9):
            pred = row["prop21_odd" if i % 2 else "prop21_even"]
            if row[f"quad_o{i}"] != pred:
                out.append(f"prop21-vs-gb order {i}")
    if "thm34" in wanted and row["thin"] == "1":
        for parity in ("odd", "even"):
            if row[f"thm34_{parity}"] != row[f"prop21_{parity}"]:
                out.append(f"thm34 {parity}")
    if "thm24" in wanted and row["thm24_cert"] == "1" and row["prime"] != "1":
        out.append("thm24")
    if "simple-prime" in wanted and row["simple"] == "1" and row["prime"] != "1":
        out.append("simple-prime")
    return out


def _sweep_jobs(max_rank: int, sample: Optional[int], seed: int, budget, cap: int):
    rng = random.Random(seed)
    for r in range(1, max_rank + 1):
        polys = list(families.enumerate_fixed(r, cap))
        idx = range(len(polys))
        if sample is not None and sample < len(polys):
            idx = sorted(rng.sample(range(len(polys)), sample))
        for i in idx:
            yield (r, i, tuple(sorted(polys[i].cells)), budget)


def _config_digest(args, cfg: RunConfig) -> str:
    key = json.dumps({"rank": args.rank, "sample": args.sample, "seed": cfg.seed,
                      "budget": cfg.pair_budget, "cap": args.cap}, sort_keys=True)
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def cmd_sweep(args, cfg: RunConfig) -> int:
    jobs = list(_sweep_jobs(args.rank, args.sample, cfg.seed, cfg.pair_budget, args.cap))
    digest = _config_digest(args, cfg)
    done = 0
    out_path = Path(args.out) if args.out else None
    cursor_path = Path(args.cursor) if args.cursor else (
        out_path.with_name(out_path.name + ".cursor") if out_path else None)
    if out_path and cursor_path and cursor_path.exists() and out_path.exists():
        state = json.loads(cursor_path.read_text())
        if state.get("config") == digest:
            done = int(state["done"])
            # drop any row written after the last cursor update
            kept = out_path.read_text().splitlines(keepends=True)[:done + 1]
            out_path.write_text("".join(kept))
    if out_path:
        sink = out_path.open("a" if done else "w", newline="")
    else:
        sink = sys.stdout
    writer = csv.writer(sink, lineterminator="\n")
    if not done:
        writer.writerow(SWEEP_COLUMNS)
    mismatches: List[str] = []
    timeouts = 0

    def record(values):
        nonlocal done, timeouts
        row = dict(zip(SWEEP_COLUMNS, values))
        writer.writerow(values)
        if row["prime"] == "timeout":
            timeouts += 1
        for m in row_mismatches(row, args.check):
            mismatches.append(f"rank {row['rank']} id {row['id']}: {m}")
        done += 1
        if out_path and cursor_path:
            sink.flush()
            tmp = cursor_path.with_name(cursor_path.name + ".tmp")
            tmp.write_text(json.dumps({"config": digest, "done": done}))
            os.replace(tmp, cursor_path)

    # rows already on disk still count towards the mismatch report
    if done and out_path:
        with out_path.open(newline="") as fh:
            for row in list(csv.DictReader(fh))[:done]:
                for m in row_mismatches(row, args.check):
                    mismatches.append(f"rank {row['rank']} id {row['id']}: {m}")
    todo = jobs[done:]
    try:
        if cfg.jobs > 1:
            with Pool(cfg.jobs) as pool:
                for values in pool.imap(sweep_row, todo, chunksize=8):
                    record(values)
        else:
            for job in todo:
                record(sweep_row(job))
    finally:
        if out_path:
            sink.close()
    print(f"check {args.check}: {len(jobs)} polyominoes, {len(mismatches)} mismatches, "
          f"{timeouts} timeouts", file=sys.stderr)
    for m in mismatches[:20]:
        print("  " + m, file=sys.stderr)
    if timeouts:
        return 3
    return 0 if not mismatches else 1


# ---------------------------------------------------------------------------
# generate / export


def _write_polyomino(P, fmt: str, header=()) -> str:
    if fmt == "json":
        return to_json(P) + "\n"
    return format_ascii(P, header)


def cmd_generate(args, cfg: RunConfig) -> int:
    fmt = "json" if cfg.fmt == "json" else "ascii"
    if args.family == "gallery":
        return _gallery(args, fmt)
    if args.family == "thin-cycle":
        spec = families.FIG_RUNS.get(args.spec, args.spec)
        if not spec:
            raise ParseError("thin-cycle needs a run list such as R3,U3,L3,D3")
        P, shortest = families.make_thin_cycle(spec)
        _emit(_write_polyomino(P, fmt, [f"name: thin-cycle {spec}",
                                        f"shortest maximal inner interval: {shortest}"]).rstrip())
        return 0
    if args.spec in families.FIG_GRIDS:
        gspec = families.FIG_GRIDS[args.spec]
    else:
        if args.m is None or args.n is None or not args.x or not args.y:
            raise ParseError("grid needs --m, --n, --x and --y (or a named grid)")
        gspec = families.GridSpec(args.m, args.n, _intervals(args.x), _intervals(args.y))
    P = families.make_grid(gspec)
    if args.family == "subgrid":
        deleted = [_vertex(t) for t in (args.delete or "").split(";") if t]
        P = families.make_subgrid(P, deleted)
    _emit(_write_polyomino(P, fmt, [f"name: {args.family}",
                                    f"grid: {json.dumps(gspec.to_dict(), sort_keys=True)}"]).rstrip())
    return 0


def _gallery(args, fmt: str) -> int:
    items = [(name, load_fixture(name), ()) for name in fixture_names()]
    for name, runs in sorted(families.FIG_RUNS.items()):
        P, shortest = families.make_thin_cycle(runs)
        items.append((f"{name}_runs", P, (f"runs: {runs}", f"shortest maximal inner interval: {shortest}")))
    for name, gspec in sorted(families.FIG_GRIDS.items()):
        items.append((f"grid_{name}", families.make_grid(gspec), (f"grid: {gspec.to_dict()}",)))
    if args.out_dir:
        root = Path(args.out_dir)
        root.mkdir(parents=True, exist_ok=True)
        for name, P, header in items:
            ext = ".json" if fmt == "json" else ""
            (root / f"{name}{ext}").write_text(_write_polyomino(P, fmt, (f"name: {name}",) + header))
        return 0
    chunks = [_write_polyomino(P, fmt, (f"name: {name}",) + header) for name, P, header in items]
    _emit("\n".join(c.rstrip("\n") + "\n" for c in chunks).rstrip())
    return 0


def export_text(P, order, target: str) -> str:
    M = [gbasis.orient(f, order) for f in gbasis.inner_2_minors(P)]
    if target == "text":
        return gbasis.format_binomials(M)
    # both systems treat the first listed variable as the largest under grevlex
    names = [f"x_{v.x}_{v.y}" for v in reversed(order.vertex_list)]
    gens = [f.text() for f in M]
    if target == "m2":
        return (f"R = QQ[{', '.join(names)}, MonomialOrder => GRevLex];\n"
                f"I = ideal({', '.join(gens)});\n"
                "G = gens gb I;\n"
                "isPrime I\n")
    return (f"ring R = 0, ({', '.join(names)}), dp;\n"
            f"ideal I = {', '.join(gens)};\n"
            "ideal G = std(I);\n")


def cmd_export(args, cfg: RunConfig) -> int:
    P = load(args.file)
    rot = _vertex(args.rotate_at) if args.rotate_at else None
    order = gbasis.order_for(P, args.order, rot)
    _emit(export_text(P, order, args.to).rstrip())
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pair-budget", type=int, default=None,
                        help="maximum S-pairs per Groebner basis run (env POLYGB_PAIR_BUDGET)")
    common.add_argument("--degree-bound", type=int, default=None,
                        help="degree bound for the brute-force witness search (default 2*rank)")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="polygb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a polyomino file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="thin, holes, intervals, thin cycle")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis of the polyomino ideal")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=1, choices=range(1, 9), metavar="1..8")
    p.add_argument("--rotate-at", metavar="X,Y")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("conditions", parents=[common], help="combinatorial criteria and certificate")
    p.add_argument("file")
    p.add_argument("--vertex", metavar="X,Y", help="print the pi profile of one vertex")
    p.add_argument("--profiles", action="store_true", help="print every pi profile")
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("prime", parents=[common], help="decide primality by saturation")
    p.add_argument("file")
    p.add_argument("--transcript", action="store_true")
    p.add_argument("--bruteforce", action="store_true",
                   help="also search the lattice ideal for a witness up to --degree-bound")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("sweep", parents=[common], help="evaluate all checks over enumerated polyominoes")
    p.add_argument("--rank", type=int, required=True, help="sweep ranks 1..RANK")
    p.add_argument("--check", choices=CHECKS, default="all")
    p.add_argument("--out", help="CSV path (required for resuming)")
    p.add_argument("--cursor", help="cursor file (default OUT.cursor)")
    p.add_argument("--sample", type=int, help="random sample size per rank, seeded by --seed")
    p.add_argument("--cap", type=int, default=families.DEFAULT_RANK_CAP)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", parents=[common], help="build family members")
    p.add_argument("family", choices=("grid", "subgrid", "thin-cycle", "gallery"))
    p.add_argument("spec", nargs="?", default="",
                   help="run list or figure name for thin-cycle; grid name (annulus, two_hole, fig9)")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--x", help="hole x-intervals, e.g. 2-3,4-5")
    p.add_argument("--y", help="hole y-intervals")
    p.add_argument("--delete", help="cells to delete for subgrid, e.g. '2,1;4,1'")
    p.add_argument("--out-dir", help="gallery: write one file per polyomino")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("export", parents=[common], help="generators for an external algebra system")
    p.add_argument("file")
    p.add_argument("--to", choices=("text", "m2", "singular"), default="text")
    p.add_argument("--order", type=int, default=1, choices=range(1, 9), metavar="1..8")
    p.add_argument("--rotate-at", metavar="X,Y")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = args.pair_budget if args.pair_budget is not None else gbasis.default_budget()
    cfg = RunConfig(args.command, budget, args.degree_bound, args.fmt, max(1, args.jobs), args.seed)
    try:
        return args.func(args, cfg)
    except PolyGBError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
