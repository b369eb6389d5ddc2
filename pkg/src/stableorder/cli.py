"""Command-line front end.

Every command prints a run manifest (command, inputs, constants, truncation,
caps, seed, budget) followed by its result, and exits with status 0 exactly
when all checks it performed passed.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import complex as cx
from . import io
from .errors import BudgetExceeded, StableOrderError
from .freealg import INF, eta, theta

VARIANTS = {"delta": cx.subdivide_delta, "δ": cx.subdivide_delta,
            "delta_prime": cx.subdivide_delta_prime, "δ′": cx.subdivide_delta_prime, "δ'": cx.subdivide_delta_prime,
            "Delta": cx.subdivide_Delta, "Δ": cx.subdivide_Delta}


def _fmt(x):
    if x == INF:
        return "inf"
    return x if isinstance(x, (int, str, bool, type(None), list, dict)) else str(x)


def _constants(args):
    from .modify import Constants
    vals = [int(v) for v in args.constants.split(",")]
    if len(vals) != 6:
        raise SystemExit("--constants needs b1,b2,b3,b4,b5,c")
    return Constants(*vals, mode=args.mode)


def manifest(args) -> dict:
    return {"command": args.command, "inputs": [p for p in (getattr(args, "path", None),) if p],
            "constants": args.constants, "mode": args.mode, "trunc": args.trunc, "cap": args.cap,
            "seed": args.seed, "budget": args.budget}


class Output:
    def __init__(self, args):
        self.structured = args.format == "structured"
        self.doc = {"manifest": manifest(args)}
        self.lines = ["# " + " ".join(f"{k}={v}" for k, v in self.doc["manifest"].items())]

    def put(self, key, value, text=None):
        self.doc[key] = value
        self.lines.append(text if text is not None else f"{key}: {_fmt(value)}")

    def emit(self):
        print(io.dumps(self.doc) if self.structured else "\n".join(self.lines))


# -- commands ----------------------------------------------------------------------------


def _kind(raw) -> str:
    if isinstance(raw, dict):
        for key, kind in (("terms", "ensemble"), ("cells", "simplicial set"), ("filtration", "filtered group"),
                          ("X", "finite model"), ("vmap", "morphism")):
            if key in raw:
                return kind
    return "complex"


def cmd_validate(args, out) -> bool:
    raw = io.read_json(args.path)
    kind = _kind(raw)
    loader = {"ensemble": io.ensemble_from, "simplicial set": io.simplicial_set_from,
              "filtered group": io.filtered_from, "finite model": io.model_from,
              "morphism": io.morphism_from, "complex": io.complex_from}[kind]
    obj = loader(raw)
    out.put("kind", kind)
    if kind == "complex":
        out.put("simplices", len(obj))
        out.put("dim", obj.dim)
    out.put("valid", True)
    return True


def cmd_subdivide(args, out) -> bool:
    L = io.load_complex(args.path)
    sub = VARIANTS[args.variant]
    for _ in range(args.k):
        L, _ = sub(L)
        L, _ = cx.relabel(L)
    doc = io.complex_to(L)
    out.put("complex", doc, io.dumps(doc))
    out.put("counts", [len(L.of_dim(d)) for d in range(L.dim + 1)])
    return True


def cmd_moebius(args, out) -> bool:
    L = io.load_complex(args.path)
    mus = cx.mu_table(L)
    out.put("mu", [[list(x), m] for x, m in mus.items()],
            "\n".join(f"mu{list(x)} = {m}" for x, m in mus.items()))
    bad = None
    for y in L.diamond:
        for z in L.diamond:
            if cx.moebius_identity(L, y, z, mus) != (1 if y == z else 0):
                bad = bad or [list(y), list(z)]
    out.put("identity", "pass" if bad is None else "fail")
    if bad:
        out.put("counterexample", bad)
    return bad is None


def cmd_eta(args, out) -> bool:
    V = io.ensemble_from(io.read_json(args.path))
    out.put("eta", _fmt(eta(V, args.trunc)))
    return True


def cmd_theta(args, out) -> bool:
    V = io.ensemble_from(io.read_json(args.path))
    out.put("theta", _fmt(theta(V, args.cap)))
    return True


def cmd_deg(args, out) -> bool:
    from .invariant import brute_agrees, deg_exact, deg_filtration
    P, U, f = io.filtered_from(io.read_json(args.path))
    ex = deg_exact(P, U, f, budget=args.budget)
    out.put("deg", _fmt(ex.value))
    if ex.witness is not None:
        out.put("witness", [list(t) for t in ex.witness])
    if not args.check:
        return True
    r = ex.value if ex.value != INF else 0
    br = deg_filtration(P, U, f, "brute", K_max=r + P.s_max + 2)
    ok = brute_agrees(ex, br)
    out.put("brute", _fmt(br.value))
    out.put("agree", ok)
    return ok


def cmd_ord(args, out) -> bool:
    from .invariant import order, order_via_theta, order_violation
    M, U, f = io.model_from(io.read_json(args.path))
    r1 = order(M, U, f)
    r2 = order(M, U, f, order_via_theta)
    out.put("ord", r1)
    out.put("ord_theta_route", r2)
    if r1 > 0:
        bad = order_violation(M, U, f, r1 - 1)
        out.put("violation_at", r1 - 1)
        out.put("violation", [[list(a), c] for a, c in bad.items()])
    return r1 == r2


def _run_one(job):
    from .suites import SUITES
    import random
    name, seed, scale = job
    return SUITES[name](random.Random(f"{seed}:{name}"), scale)


def cmd_suite(args, out) -> bool:
    from .suites import SUITES, select
    names = select(args.selector)
    jobs = [(n, args.seed, args.scale) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    rows = []
    for rep in reports:
        d = rep.as_dict()
        if not args.timing:
            d["elapsed"] = None
        rows.append(d)
    text = []
    for d in rows:
        line = f"{d['claim']:<14} {d['status'].upper():<5} samples={d['samples']} coverage={d['coverage']}"
        if d["elapsed"] is not None:
            line += f" elapsed={d['elapsed']}s"
        if d["counterexample"] is not None:
            line += f"\n    counterexample: {d['counterexample']}"
        if d["note"]:
            line += f"\n    note: {d['note']}"
        text.append(line)
    out.put("reports", rows, "\n".join(text))
    return all(r.passed for r in reports)


COMMANDS = {"validate": cmd_validate, "subdivide": cmd_subdivide, "moebius": cmd_moebius,
            "eta": cmd_eta, "theta": cmd_theta, "deg": cmd_deg, "ord": cmd_ord, "suite": cmd_suite}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--constants", default="2,4,8,12,20,7", help="b1,b2,b3,b4,b5,c")
    common.add_argument("--mode", choices=("strict", "semantic"), default="strict")
    common.add_argument("--trunc", type=int, default=8, help="truncation degree N")
    common.add_argument("--cap", type=int, default=8, help="largest #T searched by theta")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=200000)
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="stableorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check an input file").add_argument("path")
    s = sub.add_parser("subdivide", parents=[common], help="iterate a subdivision")
    s.add_argument("path")
    s.add_argument("k", type=int)
    s.add_argument("variant", choices=sorted(VARIANTS))
    sub.add_parser("moebius", parents=[common], help="mu table and the Moebius identity").add_argument("path")
    sub.add_parser("eta", parents=[common], help="augmentation degree of an ensemble").add_argument("path")
    sub.add_parser("theta", parents=[common], help="least #T with nonzero quasi-restriction").add_argument("path")
    d = sub.add_parser("deg", parents=[common], help="degree of a map on a filtered group")
    d.add_argument("path")
    d.add_argument("--check", action="store_true", help="compare with the brute-force search")
    sub.add_parser("ord", parents=[common], help="order of a function on a finite model").add_argument("path")
    q = sub.add_parser("suite", parents=[common], help="run verification suites")
    q.add_argument("selector", help="claim number, range such as 13.3-13.6, or 'all'")
    q.add_argument("--scale", type=float, default=1.0, help="fraction of the default sample counts")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--timing", action="store_true", help="include elapsed times (breaks byte-identity)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args)
    try:
        _constants(args)
        ok = COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        out.put("error", f"BudgetExceeded: {exc}")
        ok = False
    except (StableOrderError, KeyError, ValueError, OSError) as exc:
        out.put("error", f"{type(exc).__name__}: {exc}")
        out.emit()
        return 2
    out.emit()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
