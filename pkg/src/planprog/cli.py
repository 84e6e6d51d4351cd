"""Command-line interface: synth, validate, gen, bench."""

from __future__ import annotations

import argparse
import csv
import os
import resource
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .domains import DOMAINS, build_suite
from .evaluation import parse_config
from .fastexec import can_encode, encode_program, EncodedInstance, fast_run
from .model import GPProblem, Instance
from .program import DEFAULT_MAX_STEPS, HaltReason, run
from .search import Budget, SearchOutcome, bfgp
from .textio import (InstanceParseError, ProgramParseError, parse_instance,
                     parse_program, serialize_instance, serialize_program)

RESULT_COLUMNS = ("domain", "n", "pointers", "eval", "time_s", "mem_mb",
                  "expanded", "evaluated", "status")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2
EXIT_BUDGET = 3


def _load_instances(directory: str) -> list[Instance]:
    paths = sorted(Path(directory).glob("*.txt"))
    if not paths:
        raise InstanceParseError(f"no instance files (*.txt) in {directory}")
    out = []
    for p in paths:
        try:
            out.append(parse_instance(p.read_text()))
        except InstanceParseError as e:
            raise InstanceParseError(f"{p}: {e}")
    return out


def _problem_for(instances: Sequence[Instance], domain: str,
                 pointers: Optional[int] = None) -> GPProblem:
    spec = DOMAINS[domain]
    return GPProblem(tuple(instances), spec.actions,
                     pointers or instances[0].pointer_count)


def _result_row(domain: str, n: int, pointers: int, eval_cfg: str,
                elapsed: float, mem_mb: float, expanded: int, evaluated: int,
                status: str) -> dict:
    return {"domain": domain, "n": n, "pointers": pointers, "eval": eval_cfg,
            "time_s": f"{elapsed:.2f}", "mem_mb": f"{mem_mb:.1f}",
            "expanded": expanded, "evaluated": evaluated, "status": status}


def cmd_synth(args: argparse.Namespace) -> int:
    config = parse_config(args.eval)
    instances = _load_instances(args.instances)
    problem = _problem_for(instances, args.domain, args.pointers)
    budget = Budget(time_s=args.timeout)
    result = bfgp(problem, args.lines, config, budget=budget,
                  engine=args.engine, max_steps=args.max_steps)
    status = result.outcome.value
    row = _result_row(args.domain, args.lines, problem.pointer_count,
                      ",".join(config), result.stats.elapsed_s,
                      result.stats.peak_mem_mb, result.stats.expanded,
                      result.stats.evaluated, status)
    writer = csv.DictWriter(sys.stdout, fieldnames=RESULT_COLUMNS)
    writer.writeheader()
    writer.writerow(row)
    if result.outcome is SearchOutcome.SOLUTION:
        Path(args.out).write_text(serialize_program(result.program))
        print(f"solution written to {args.out}", file=sys.stderr)
        return EXIT_OK
    if result.outcome is SearchOutcome.NO_SOLUTION:
        return EXIT_NO_SOLUTION
    return EXIT_BUDGET


def cmd_validate(args: argparse.Namespace) -> int:
    program = parse_program(Path(args.program).read_text())
    instances = _load_instances(args.instances)
    detect = not args.no_infinite_detection
    use_fast = not detect and can_encode(program)
    code = encode_program(program) if use_fast else None
    start = time.perf_counter()
    counts: dict[str, int] = {}
    all_goal = True
    for i, inst in enumerate(instances):
        if use_fast:
            rec = fast_run(program, inst, max_steps=args.max_steps,
                           encoded=EncodedInstance.from_instance(inst), code=code)
        else:
            rec = run(program, inst, detect_revisit=detect,
                      max_steps=args.max_steps)
        verdict = rec.halt.name
        counts[verdict] = counts.get(verdict, 0) + 1
        all_goal &= rec.halt is HaltReason.END_GOAL
        if not args.quiet:
            print(f"instance {i}: {verdict}")
    elapsed = time.perf_counter() - start
    mem = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0
    total = len(instances)
    summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"total={total} {summary} time_s={elapsed:.2f} mem_mb={mem:.1f} "
          f"detection={'on' if detect else 'off'}")
    return EXIT_OK if all_goal else EXIT_NO_SOLUTION


def cmd_gen(args: argparse.Namespace) -> int:
    spec = DOMAINS[args.domain]
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.set == "validation":
        sizes = list(spec.validation_sizes)[:args.count]
        seeds = [args.seed + 1] * len(sizes)
    else:
        schedule = list(spec.training_sizes)
        sizes, seeds = [], []
        k = 0
        while len(sizes) < args.count:
            sizes.append(schedule[k % len(schedule)])
            seeds.append(args.seed + k // len(schedule))
            k += 1
    for i, (size, seed) in enumerate(zip(sizes, seeds)):
        inst = spec.generate(size, seed)
        (outdir / f"{args.domain}_{i:05d}.txt").write_text(serialize_instance(inst))
    print(f"wrote {len(sizes)} instances to {outdir}", file=sys.stderr)
    return EXIT_OK


def _bench_cell(domain: str, eval_cfg: str, seed: int,
                timeout: Optional[float], max_steps: int) -> dict:
    spec = DOMAINS[domain]
    train, _ = build_suite(domain, seed=seed)
    problem = GPProblem(tuple(train), spec.actions, spec.pointers)
    result = bfgp(problem, spec.lines, parse_config(eval_cfg),
                  budget=Budget(time_s=timeout), max_steps=max_steps)
    return _result_row(domain, spec.lines, spec.pointers, eval_cfg,
                       result.stats.elapsed_s, result.stats.peak_mem_mb,
                       result.stats.expanded, result.stats.evaluated,
                       result.outcome.value)


PAPER_SUITE = ("tsum", "corridor", "reverse", "select", "find")
FULL_SUITE = tuple(DOMAINS)


def cmd_bench(args: argparse.Namespace) -> int:
    domains = args.domains.split(",") if args.domains else (
        FULL_SUITE if args.suite == "full" else PAPER_SUITE)
    evals = args.evals.split(";") if args.evals else ["h5,f1", "f1,h5"]
    cells = [(d, e) for d in domains for e in evals]
    threads = int(os.environ.get("GP_THREADS", "1"))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(_bench_cell, [c[0] for c in cells],
                               [c[1] for c in cells],
                               [args.seed] * len(cells),
                               [args.timeout] * len(cells),
                               [args.max_steps] * len(cells)))
    else:
        rows = [_bench_cell(d, e, args.seed, args.timeout, args.max_steps)
                for d, e in cells]
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planprog",
        description="Synthesize, validate and benchmark planning programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a program for a domain")
    p.add_argument("--domain", required=True, choices=sorted(DOMAINS))
    p.add_argument("--instances", required=True,
                   help="directory of training instance files")
    p.add_argument("--lines", type=int, required=True)
    p.add_argument("--pointers", type=int, default=None)
    p.add_argument("--eval", required=True,
                   help="comma-separated list from f1,f2,f3,h4,h5,f6")
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--max-steps", type=int, default=5000)
    p.add_argument("--engine", choices=("auto", "fast", "pure"), default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("validate", help="run a program over instance files")
    p.add_argument("--program", required=True)
    p.add_argument("--instances", required=True)
    p.add_argument("--no-infinite-detection", action="store_true")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--quiet", action="store_true",
                   help="omit per-instance verdict lines")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="generate instance files")
    p.add_argument("--domain", required=True, choices=sorted(DOMAINS))
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--set", choices=("train", "validation"), default="train")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a synthesis grid, emit a CSV report")
    p.add_argument("--suite", choices=("paper", "full"), default="paper")
    p.add_argument("--domains", default=None,
                   help="comma-separated override of the suite's domains")
    p.add_argument("--evals", default=None,
                   help="semicolon-separated eval configs, e.g. 'h5,f1;f2'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--max-steps", type=int, default=5000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProgramParseError, InstanceParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
