"""Command line front end: zsf gen|solve|verify|bench|thresholds."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .core import Binary, Constraint, Explicit, Forbidden, Interval, Problem, max_abs, parse_constraint, sparsity, verify
from .errors import FailureError, PreconditionError
from .ff import Modulus
from .linalg import VecFamily
from .thresholds import thresholds

EXIT_OK, EXIT_VERIFY, EXIT_FAIL, EXIT_PRECONDITION, EXIT_IO = 0, 1, 2, 3, 4
PROBLEMS = ("f3", "sis", "subset", "cis")
BENCH_COLUMNS = ["problem", "q", "n", "m", "seed", "success", "wall_ms", "support", "max_abs_coeff"]


class FormatError(ValueError):
    pass


# ---- instances ----

def uniform_residue(rng: random.Random, q: int) -> int:
    """Uniform element of [0, q) by rejection sampling on whole 64-bit chunks."""
    chunks = max(1, -(-q.bit_length() // 64))
    span = 1 << (64 * chunks)
    limit = span - span % q
    while True:
        x = 0
        for _ in range(chunks):
            x = (x << 64) | rng.getrandbits(64)
        if x < limit:
            return x % q


def gen(seed: int, q: int, n: int, m: int) -> VecFamily:
    Modulus(q)
    rng = random.Random(seed)
    rows = [tuple(uniform_residue(rng, q) for _ in range(n)) for _ in range(m)]
    return VecFamily.trusted(q, rows, n)


def serialize_instance(F: VecFamily) -> str:
    lines = [f"ZSF1 {F.q} {F.n} {F.m}"]
    lines += [" ".join(str(x) for x in v) for v in F.rows]
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> VecFamily:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty instance")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "ZSF1":
        raise FormatError("bad instance header")
    q, n, m = (int(t) for t in head[1:])
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"expected {m} rows, found {len(body)}")
    rows = []
    for ln in body:
        vals = [int(t) for t in ln.split()]
        if len(vals) != n or any(not 0 <= x < q for x in vals):
            raise FormatError(f"bad row {ln!r}")
        rows.append(tuple(vals))
    return VecFamily(q, rows, n)


def serialize_solution(m: int, descriptor: str, x: dict) -> str:
    lines = [f"ZSFSOL1 {m} {descriptor}"]
    lines += [f"{i} {c}" for i, c in sorted(x.items()) if c]
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[int, str, dict]:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty solution")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "ZSFSOL1":
        raise FormatError("bad solution header")
    m, desc = int(head[1]), head[2]
    x, last = {}, -1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad solution line {ln!r}")
        i, c = int(parts[0]), int(parts[1])
        if i <= last:
            raise FormatError("indices must be strictly increasing")
        x[i] = c
        last = i
    return m, desc, x


# ---- solving ----

def _constraint_set(C: Constraint, q: int) -> set:
    return set(C.members(q))


def problem_constraint(problem: str, q: int, k: int, constraint: str | None) -> Constraint:
    if problem in ("f3", "subset"):
        return Binary()
    if problem == "sis":
        return Interval(q // (2 * k))
    if constraint is None:
        raise PreconditionError("cis needs --constraint")
    C = parse_constraint(constraint)
    if not isinstance(C, (Explicit, Forbidden)):
        raise PreconditionError("cis takes an explicit or forbidden constraint")
    return C


def run_solver(F: VecFamily, problem: str, k: int = 2, r: int = 1, eps=Fraction(1, 2),
               constraint: str | None = None, engine: str | None = None) -> tuple[dict, Constraint]:
    from .avgcase import subset_sum_random
    from .f3 import f3_solve
    from .general import cis_full, sis_one_shot
    from .halving import sis_power2
    from .thresholds import is_power_of_two

    q = F.q
    C = problem_constraint(problem, q, k, constraint)
    if problem == "f3":
        x = f3_solve(F, engine or "main")
    elif problem == "sis":
        eng = engine or ("power2" if is_power_of_two(k) else "one_shot")
        x = sis_power2(F, k, r) if eng == "power2" else sis_one_shot(F, k)
    elif problem == "subset":
        x = subset_sum_random(F, eps, engine or "power2", r)
    else:
        x = cis_full(F, _constraint_set(C, q), eps)
    return x, C


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _eps(s: str) -> Fraction:
    return Fraction(s)


def cmd_gen(a) -> int:
    _write(a.out, serialize_instance(gen(a.seed, a.q, a.n, a.m)))
    return EXIT_OK


def cmd_solve(a) -> int:
    F = parse_instance(_read(a.inp))
    x, C = run_solver(F, a.problem, a.k, a.r, a.eps, a.constraint, a.engine)
    rep = verify(Problem(F, C), x)
    if not rep.ok:
        # never hand out an unverified map
        print("solver output failed verification: " + ", ".join(rep.failures), file=sys.stderr)
        return EXIT_FAIL
    _write(a.out, serialize_solution(F.m, C.describe(), x))
    return EXIT_OK


def cmd_verify(a) -> int:
    F = parse_instance(_read(a.inp))
    m, desc, x = parse_solution(Path(a.sol).read_text())
    if m != F.m:
        print(f"failed: header m={m} but instance has {F.m} vectors")
        return EXIT_VERIFY
    C = parse_constraint(a.constraint or desc)
    rep = verify(Problem(F, C), x)
    if rep.ok:
        print("ok")
        return EXIT_OK
    print("failed: " + ", ".join(rep.failures))
    return EXIT_VERIFY


def cmd_thresholds(a) -> int:
    out = thresholds(a.q, a.n, a.k, a.r, a.eps)
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def bench_rows(config: dict) -> list[dict]:
    rows = []
    for job in config.get("jobs", []):
        problem = job["problem"]
        q, n = int(job["q"]), int(job["n"])
        eps = Fraction(str(job.get("eps", "1/2")))
        for m in job.get("m", []):
            for seed in job.get("seeds", [0]):
                F = gen(int(seed), q, n, int(m))
                t = time.perf_counter()
                ok, supp, mx = 0, 0, 0
                try:
                    x, C = run_solver(F, problem, int(job.get("k", 2)), int(job.get("r", 1)), eps,
                                      job.get("constraint"), job.get("engine"))
                    if verify(Problem(F, C), x).ok:
                        ok, supp, mx = 1, sparsity(x), max_abs(x, q)
                except (FailureError, PreconditionError):
                    pass
                ms = (time.perf_counter() - t) * 1000
                rows.append({"problem": problem, "q": q, "n": n, "m": int(m), "seed": int(seed),
                             "success": ok, "wall_ms": f"{ms:.3f}", "support": supp, "max_abs_coeff": mx})
    rows.sort(key=lambda r: (r["problem"], r["q"], r["n"], r["m"], r["seed"]))
    return rows


def bench_csv(config: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(bench_rows(config))
    return buf.getvalue()


def cmd_bench(a) -> int:
    try:
        config = json.loads(_read(a.inp))
    except json.JSONDecodeError as e:
        raise FormatError(f"bad config: {e}") from e
    _write(a.out, bench_csv(config))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zsf", description="Constrained zero-sums over prime fields.")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="uniform random instance")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance and write a verified solution")
    s.add_argument("--problem", choices=PROBLEMS, required=True)
    s.add_argument("--in", dest="inp")
    s.add_argument("--out")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--eps", type=_eps, default=Fraction(1, 2))
    s.add_argument("--constraint")
    s.add_argument("--engine", help="f3 strategy, or power2|one_shot")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--sol", required=True)
    v.add_argument("--constraint", help="override the constraint in the solution header")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a JSON-configured sweep and emit CSV")
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("thresholds", help="print the vector-count thresholds")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int)
    t.add_argument("--r", type=int, default=1)
    t.add_argument("--eps", type=_eps, default=Fraction(1, 2))
    t.set_defaults(func=cmd_thresholds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FailureError as e:
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    except PreconditionError as e:
        print(f"precondition: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, FormatError, ValueError) as e:
        print(f"io: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
