"""``craut`` command line.

Exit codes: 0 success, 1 input error (malformed or degenerate data),
2 internal inconsistency (a computation contradicted a proven statement).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .charmod import charmod_generators, charmod_report
from .conditions import condition_I, condition_II
from .errors import CrautError, DegenerateQuadricError, InternalInconsistency, QuadricFormatError
from .exact import GaussianRational, format_complex, parse_complex, parse_rational
from .quadric import Quadric, parse_catalog_spec, random_nondegenerate, validate
from .raq import CommAlgebra, lift_to_quadric, on_quadric, poincare_map, raq_quadric, validate_algebra
from .solver import (
    algebra_components,
    exceptional_via_a,
    graded_component,
    nonrigid_via_a,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2

JOBS_ENV = "CRAUT_JOBS"


class _Exit(Exception):
    def __init__(self, code: int, report: dict | None = None, message: str = ""):
        super().__init__(message)
        self.code = code
        self.report = report
        self.message = message


# -- input ---------------------------------------------------------------------
def load_quadric(source: str) -> Quadric:
    """A JSON file path, or a catalog name such as ``last(2)`` or ``palinchak-q5``."""
    path = Path(source)
    if path.is_file():
        return Quadric.load(path)
    try:
        return parse_catalog_spec(source)
    except (ValueError, KeyError):
        pass
    raise QuadricFormatError(f"{source}: no such file and not a catalog name")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def degree_bound(n: int, k: int) -> int:
    """Informational degree bound for coefficients of automorphism fields."""
    return (3 * n + 3 * k + 2) * (k + 1)


def _header(command: str, args: dict, Q: Quadric | None = None, source: str | None = None) -> dict:
    rep = {"command": command, "args": args}
    if Q is not None:
        rep["input"] = {"source": source, "sha256": digest(Q.dumps()), "n": Q.n, "k": Q.k}
        rep["degree_bound"] = degree_bound(Q.n, Q.k)
    return rep


def _dims(comps) -> list:
    return [[c.m, c.dim] for c in comps]


# -- commands ------------------------------------------------------------------------
def cmd_validate(args) -> dict:
    Q = load_quadric(args.file)
    rep = _header("validate", {"file": args.file}, Q, args.file)
    v = validate(Q)
    rep["result"] = {
        "nondegenerate": v.nondegenerate,
        "common_kernel_trivial": v.common_kernel_trivial,
        "forms_independent": v.forms_independent,
    }
    if not v.nondegenerate:
        raise _Exit(EXIT_INPUT, rep)
    return rep


def cmd_components(args) -> dict:
    Q = load_quadric(args.file)
    rep = _header(
        "components", {"file": args.file, "max_weight": args.max_weight, "emit_basis": args.emit_basis}, Q, args.file
    )
    try:
        comps = algebra_components(Q, args.max_weight)
    except InternalInconsistency as exc:
        rep["error"] = str(exc)
        raise _Exit(EXIT_INTERNAL, rep) from None
    result = {
        "components": _dims(comps),
        "total_dim": sum(c.dim for c in comps),
        "positive_length": sum(1 for c in comps if c.m >= 1 and c.dim > 0),
    }
    if args.emit_basis:
        result["basis"] = {str(c.m): [X.to_dict() for X in c.basis] for c in comps}
    rep["result"] = result
    return rep


def decide(Q: Quadric, trials: int = 20, seed: int = 0) -> tuple[dict, bool]:
    """Verdict dictionary and whether everything is consistent."""
    comps = algebra_components(Q)
    dims = dict((c.m, c.dim) for c in comps)
    g1 = dims.get(1, 0)
    g3 = dims[3] if 3 in dims else graded_component(Q, 3).dim
    rigid = g1 == 0
    exceptional = g3 > 0
    a_nonrigid = nonrigid_via_a(Q)
    a_exceptional = exceptional_via_a(Q)
    c1 = condition_I(Q, trials, seed)
    c2 = condition_II(Q, trials, seed)
    sufficient = c1.holds and c2.holds
    agree = {"rigid": a_nonrigid == (not rigid), "exceptional": a_exceptional == exceptional}
    sound = not (sufficient and exceptional)
    out = {
        "components": _dims(comps),
        "dim_g1": g1,
        "dim_g3": g3,
        "rigid": rigid,
        "exceptional": exceptional,
        "a_route": {"nonrigid": a_nonrigid, "exceptional": a_exceptional},
        "agreement": agree,
        "condition_I": c1.to_dict(),
        "condition_II": c2.to_dict(),
        "sufficient_nonexceptional": sufficient,
        "sufficient_condition_sound": sound,
    }
    return out, all(agree.values()) and sound


def cmd_decide(args) -> dict:
    Q = load_quadric(args.file)
    rep = _header("decide", {"file": args.file, "trials": args.trials, "seed": args.seed}, Q, args.file)
    try:
        rep["result"], ok = decide(Q, args.trials, args.seed)
    except InternalInconsistency as exc:
        rep["error"] = str(exc)
        raise _Exit(EXIT_INTERNAL, rep) from None
    if not ok:
        raise _Exit(EXIT_INTERNAL, rep)
    return rep


# census ---------------------------------------------------------------------------
def sample_seed(seed: int, index: int) -> int:
    h = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def classify_sample(task: tuple) -> dict:
    """One census sample; top-level so it can run in a worker process."""
    n, k, seed, index = task
    s = sample_seed(seed, index)
    Q = random_nondegenerate(n, k, s)
    rec = {"index": index, "seed": s}
    try:
        comps = algebra_components(Q)
    except InternalInconsistency as exc:
        rec.update(cls="violation", violation=str(exc), quadric=Q.to_dict())
        return rec
    dims = {c.m: c.dim for c in comps}
    g3 = dims[3] if 3 in dims else graded_component(Q, 3).dim
    length = sum(1 for c in comps if c.m >= 1 and c.dim > 0)
    rec["components"] = _dims(comps)
    rec["dim_g3"] = g3
    rec["length"] = length
    if g3 > 0:
        rec["cls"] = "exceptional"
        rec["quadric"] = Q.to_dict()
    elif length == 0:
        rec["cls"] = "rigid"
    else:
        rec["cls"] = f"length_{length}"
    if g3 > 0 and 3 not in dims:
        rec["violation"] = "g_3 nonzero above a vanishing component"
    if g3 > 0 and k <= 3:
        rec["violation"] = f"exceptional quadric in codimension {k}"
    return rec


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise QuadricFormatError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def run_census(n: int, k: int, samples: int, seed: int, jobs: int) -> list[dict]:
    tasks = [(n, k, seed, i) for i in range(samples)]
    if jobs <= 1 or samples <= 1:
        recs = [classify_sample(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            recs = list(pool.map(classify_sample, tasks))
    return sorted(recs, key=lambda r: r["index"])


def cmd_census(args) -> dict:
    n, k = args.n, args.k
    if not (n >= 1 and 1 <= k <= n * n):
        raise QuadricFormatError(f"need n >= 1 and 1 <= k <= n^2, got n={n}, k={k}")
    if args.samples < 0:
        raise QuadricFormatError("--samples must be non-negative")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    rep = {
        "command": "census",
        "args": {"n": n, "k": k, "samples": args.samples, "seed": args.seed},
        "degree_bound": degree_bound(n, k),
    }
    recs = run_census(n, k, args.samples, args.seed, jobs)
    counts: dict[str, int] = {}
    for r in recs:
        counts[r["cls"]] = counts.get(r["cls"], 0) + 1
    hits = [r for r in recs if r["cls"] == "exceptional"]
    saved = []
    if hits and args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in hits:
            p = out / f"exceptional_n{n}_k{k}_s{r['seed']}.json"
            Quadric.from_dict(r["quadric"]).save(p)
            saved.append(p.name)
    violations = [{"index": r["index"], "seed": r["seed"], "violation": r["violation"]} for r in recs if "violation" in r]
    rep["result"] = {
        "counts": dict(sorted(counts.items())),
        "total": len(recs),
        "exceptional_seeds": [r["seed"] for r in hits],
        "saved": saved,
        "violations": violations,
        "samples": [
            {key: r[key] for key in ("index", "seed", "cls", "components", "dim_g3") if key in r} for r in recs
        ],
    }
    if violations:
        raise _Exit(EXIT_INTERNAL, rep)
    return rep


# raq --------------------------------------------------------------------------------
def _alg_vector(values, n: int, parse, name: str) -> tuple:
    if values is None:
        return None
    if len(values) != n:
        raise QuadricFormatError(f"--{name} expects {n} values, got {len(values)}")
    try:
        return tuple(parse(v) for v in values)
    except ValueError as exc:
        raise QuadricFormatError(f"--{name}: {exc}") from None


def cmd_raq(args) -> dict:
    A = CommAlgebra.load(args.algebra)
    v = validate_algebra(A)
    rep = {
        "command": f"raq {args.action}",
        "args": {"algebra": args.algebra},
        "input": {"sha256": digest(A.dumps()), "n": A.n},
        "algebra": {"status": v.status},
    }
    if not v.ok:
        if v.detail:
            rep["algebra"]["detail"] = v.detail
        raise _Exit(EXIT_INPUT, rep)
    rep["algebra"]["unit"] = [format_complex(x) for x in v.unit]
    Q = raq_quadric(A)
    rep["degree_bound"] = degree_bound(Q.n, Q.k)
    if args.action == "build":
        rep["result"] = {"quadric": Q.to_dict()}
        if args.out:
            Q.save(args.out)
            rep["result"]["saved"] = args.out
        return rep
    if args.action == "check":
        rep["result"], ok = decide(Q)
        if not ok:
            raise _Exit(EXIT_INTERNAL, rep)
        return rep
    # map
    n = A.n
    rng = random.Random(args.seed)

    def rq():
        return Fraction(rng.randint(-5, 5), rng.randint(1, 4))

    a = _alg_vector(args.a, n, parse_complex, "a") or tuple(GaussianRational(rq(), rq()) for _ in range(n))
    r = _alg_vector(args.r, n, parse_rational, "r") or tuple(rq() for _ in range(n))
    points = []
    if args.z is not None:
        Z = _alg_vector(args.z, n, parse_complex, "z")
        W = _alg_vector(args.w, n, parse_complex, "w") if args.w is not None else lift_to_quadric(A, Z, (0,) * n)
        points.append((Z, W))
    else:
        for _ in range(args.points):
            Z = tuple(GaussianRational(rq(), rq()) for _ in range(n))
            points.append((Z, lift_to_quadric(A, Z, tuple(rq() for _ in range(n)))))
    images = []
    all_ok = True
    for Z, W in points:
        entry = {"Z": [format_complex(x) for x in Z], "W": [format_complex(x) for x in W], "on_quadric": on_quadric(A, Z, W)}
        res = poincare_map(A, a, r, Z, W)
        if res is None:
            entry["image"] = None
        else:
            Zs, Ws = res
            ok = on_quadric(A, Zs, Ws)
            entry["image"] = {"Z": [format_complex(x) for x in Zs], "W": [format_complex(x) for x in Ws], "on_quadric": ok}
            if entry["on_quadric"] and not ok:
                all_ok = False
        images.append(entry)
    rep["result"] = {
        "a": [format_complex(x) for x in a],
        "r": [format_complex(x) for x in r],
        "points": images,
        "preserved": all_ok,
    }
    if not all_ok:
        raise _Exit(EXIT_INTERNAL, rep)
    return rep


def cmd_charmod(args) -> dict:
    Q = load_quadric(args.file)
    rep = _header("charmod", {"file": args.file, "max_degree": args.max_degree}, Q, args.file)
    r = charmod_report(Q, args.max_degree)
    rep["result"] = {"generators": len(charmod_generators(Q)), **r.to_dict()}
    if not r.ok:
        raise _Exit(EXIT_INTERNAL, rep)
    return rep


# -- rendering ------------------------------------------------------------------------
def render_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"


def render_text(rep, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(rep, dict):
        for key, val in rep.items():
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    else:
        for item in rep:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return "\n".join(lines) + "\n"


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in val)


def _scalar(val) -> str:
    return json.dumps(val, ensure_ascii=False)


# -- entry point -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="craut", description="Automorphism algebras of CR model quadrics.")
    p.add_argument("--version", action="version", version=f"craut {__version__}")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check nondegeneracy of a quadric file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("components", help="dimensions of graded components")
    s.add_argument("file")
    s.add_argument("--max-weight", type=int, default=None)
    s.add_argument("--emit-basis", action="store_true")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("decide", help="rigidity and exceptionality verdicts")
    s.add_argument("file")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("census", help="seeded survey of random quadrics")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--samples", type=int, default=30)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    s.add_argument("--out-dir", default=None, help="where to save exceptional quadrics")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("raq", help="quadrics of commutative algebras")
    s.add_argument("action", choices=("build", "check", "map"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--out", default=None, help="build: write the quadric file here")
    s.add_argument("--a", nargs="+", default=None, help="map: COMPLEX coordinates of a")
    s.add_argument("--r", nargs="+", default=None, help="map: RATIONAL coordinates of r")
    s.add_argument("--z", nargs="+", default=None, help="map: COMPLEX coordinates of Z")
    s.add_argument("--w", nargs="+", default=None, help="map: COMPLEX coordinates of W (default u = 0)")
    s.add_argument("--points", type=int, default=10, help="map: random on-quadric points when --z is absent")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_raq)

    s = sub.add_parser("charmod", help="characteristic module report")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, default=None)
    s.set_defaults(func=cmd_charmod)
    return p


def main(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    render = render_text if args.format == "text" else render_json
    code = EXIT_OK
    try:
        rep = args.func(args)
    except _Exit as exc:
        rep, code = exc.report, exc.code
    except InternalInconsistency as exc:
        print(f"craut: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DegenerateQuadricError, QuadricFormatError, CrautError, OSError, ValueError) as exc:
        print(f"craut: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if rep is not None:
        out.write(render(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
