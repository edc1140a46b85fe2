"""Command-line interface: generate, verify, count, evaluate, replay, cohomology.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohomology import LatticeAction, regular_action, tate_h1, tate_h2, trivial_action
from .construction import formal_relations, generate
from .errors import ParameterError, ParseError
from .group_action import SubgroupSpec
from .ncpoly import GroupContext, Poly
from .oracle import monomial_count, norm_residual, step_bound, unit_chain_bound
from .proof_replay import check_identities
from .ring_instances import (
    InstanceSpec,
    evaluate,
    evaluate_chain,
    is_unit_norm,
    noncommuting_witness,
    random_instance,
)

ORDER_LIMIT = 2**16
REDUCED_COUNT_LIMIT = 20_000


class UsageError(Exception):
    pass


def parse_strategy(text: str):
    if text in ("unit", "doubling"):
        return text
    try:
        return [tuple(int(v) for v in part.split(":")) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad strategy {text!r}; use unit, doubling or m:k,m:k,...") from exc


def _context(args) -> GroupContext:
    try:
        ctx = GroupContext(args.p, args.n)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    if ctx.order > ORDER_LIMIT and not args.force:
        raise UsageError(f"p^n = {ctx.order} exceeds {ORDER_LIMIT}; pass --force to proceed")
    return ctx


def _render(P: Poly, fmt: str) -> str:
    if fmt == "latex":
        return P.to_latex()
    if fmt == "json":
        return P.to_json()
    return P.to_text()


# subcommands; each returns (exit status, document text)


def cmd_generate(args):
    ctx = _context(args)
    chain = generate(ctx.p, ctx.n, parse_strategy(args.strategy), verify=args.verify)
    status = 0 if (not args.verify or chain.certified) else 1
    if args.format == "json":
        doc = {
            "p": ctx.p,
            "n": ctx.n,
            "strategy": args.strategy,
            "schedule": [list(s) for s in chain.schedule],
            "verified": chain.certified if args.verify else None,
            "final": chain.final.to_dict() if chain.final is not None else None,
        }
        if args.steps:
            doc["steps"] = []
            for st in chain.steps:
                entry = {"m": st.m, "k": st.k, "formal_a": st.formal.a.to_dict()}
                if st.explicit is not None:
                    e = st.explicit
                    entry.update(z=e.z.to_dict(), w=e.w.to_dict(), a=e.a.to_dict(), x_out=e.x_out.to_dict())
                doc["steps"].append(entry)
        return status, json.dumps(doc)
    lines = []
    if args.steps:
        for st in chain.steps:
            lines.append(f"step m={st.m} k={st.k}")
            if st.explicit is not None:
                e = st.explicit
                for name, P in (("z", e.z), ("w", e.w), ("a", e.a), ("X_out", e.x_out)):
                    lines.append(f"  {name} = {_render(P, args.format)}")
            else:
                lines.append("  (not expanded; a in terms of the step input, sJ = tau^J)")
                lines.append(f"  a = {_render(st.formal.a, args.format)}")
    if chain.final is not None:
        lines.append(_render(chain.final, args.format))
    else:
        lines.append("final element too large to expand; rerun with --steps for the formal chain")
    if args.verify and not chain.certified:
        lines.append("VERIFICATION FAILED")
    return status, "\n".join(lines)


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise ParseError(str(exc), path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from exc


def cmd_verify(args):
    doc = _load_json(args.document)
    if isinstance(doc, dict) and "final" in doc:
        if doc["final"] is None:
            raise ParseError("document has no expanded final polynomial", "$.final")
        doc = doc["final"]
    P = Poly.from_dict(doc)
    m = P.ctx.n if args.m is None else args.m
    try:
        H = SubgroupSpec(P.ctx, m)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    res = norm_residual(P, H)
    if res.is_zero():
        return 0, "PASS"
    return 1, f"FAIL\nresidual: {res.to_text()}"


def cmd_count(args):
    ctx = _context(args)
    names = ["unit", "doubling"] if args.strategy == "both" else [args.strategy]
    ok = True
    report = []
    for name in names:
        chain = generate(ctx.p, ctx.n, parse_strategy(name), verify=False)
        steps = []
        for st in chain.steps:
            bound = step_bound(ctx.p, st.m, st.k)
            exp = monomial_count(st.formal.a, "expanded")
            red = monomial_count(st.formal.a, "reduced", formal_relations(ctx.p, st.m, st.k))
            ok = ok and exp <= bound
            steps.append({"m": st.m, "k": st.k, "expanded": exp, "reduced": red,
                          "bound": bound, "holds": exp <= bound})
        final = None
        if chain.final is not None:
            final = {"expanded": monomial_count(chain.final, "expanded")}
            if len(chain.final) <= REDUCED_COUNT_LIMIT:
                final["reduced"] = monomial_count(chain.final, "reduced")
        report.append({"strategy": name, "steps": steps, "final": final,
                       "step_total": sum(s["expanded"] for s in steps)})
    chain_bound = unit_chain_bound(ctx.p, ctx.n)
    if args.format == "json":
        return (0 if ok else 1), json.dumps({"p": ctx.p, "n": ctx.n, "unit_chain_bound": chain_bound,
                                             "strategies": report})
    lines = []
    for r in report:
        lines.append(f"strategy {r['strategy']}:")
        for s in r["steps"]:
            mark = "ok" if s["holds"] else "VIOLATED"
            lines.append(f"  step m={s['m']} k={s['k']}: expanded {s['expanded']} <= bound {s['bound']} "
                         f"[{mark}] (reduced {s['reduced']})")
        lines.append(f"  sum over steps: {r['step_total']}")
        if r["final"] is None:
            lines.append("  final: not expanded")
        else:
            red = r["final"].get("reduced", "skipped")
            lines.append(f"  final: expanded {r['final']['expanded']}, reduced {red}")
    lines.append(f"unit chain bound: {chain_bound}")
    return (0 if ok else 1), "\n".join(lines)


def cmd_evaluate(args):
    ctx = _context(args)
    chain = generate(ctx.p, ctx.n, parse_strategy(args.strategy), verify=False)
    G = SubgroupSpec(ctx, ctx.n)
    if args.instance:
        instances = [InstanceSpec.from_dict(_load_json(args.instance))]
    else:
        instances = [random_instance(ctx, args.kind, s, dim=args.dim)
                     for s in range(args.seed, args.seed + args.seeds)]
    results = []
    for inst in instances:
        if chain.final is not None:
            values = evaluate(chain.final, inst)
        else:
            values = evaluate_chain(chain, inst)
        results.append({
            "seed": inst.seed,
            "kind": inst.kind if inst.kind == "scalar" else f"matrix({inst.dim})",
            "pass": is_unit_norm(values, inst, G),
            "noncommuting": noncommuting_witness(inst) is not None,
        })
    status = 0 if all(r["pass"] for r in results) else 1
    if args.format == "json":
        return status, json.dumps(results)
    lines = [f"seed={r['seed']} {r['kind']}: {'PASS' if r['pass'] else 'FAIL'}"
             + (" (noncommuting)" if r["noncommuting"] else "") for r in results]
    return status, "\n".join(lines)


def cmd_replay(args):
    ctx = _context(args)
    chain = generate(ctx.p, ctx.n, parse_strategy(args.strategy), verify=False)
    if not chain.steps:
        raise UsageError("n = 1 has no lift step to replay")
    idx = len(chain.steps) - 1 if args.step is None else args.step
    if not (0 <= idx < len(chain.steps)):
        raise UsageError(f"step index {idx} outside [0, {len(chain.steps)})")
    st = chain.steps[idx]
    if st.explicit is None:
        raise UsageError(f"step {idx} is too large to replay explicitly")
    report = check_identities(st.explicit.x_in, st.m, st.k)
    status = 0 if report.ok else 1
    if args.format == "json":
        return status, report.to_json()
    lines = [f"replay m={st.m} k={st.k}"]
    lines += [f"  {c.eq}: {'ok' if c.ok else 'FAILED'} (residual terms {c.residual_terms})" for c in report]
    return status, "\n".join(lines)


def _group_name(factors) -> str:
    if not factors:
        return "0"
    return " x ".join("Z" if f == 0 else f"Z/{f}" for f in factors)


def cmd_cohomology(args):
    ctx = _context(args)
    rows = []
    for j in range(ctx.n + 1):
        A = regular_action(ctx.order, ctx.p ** (ctx.n - j))
        rows.append({"action": f"regular Z/{ctx.order}", "subgroup_order": ctx.p**j,
                     "h1": tate_h1(A), "h2": tate_h2(A)})
    A = trivial_action(ctx.p)
    rows.append({"action": f"trivial Z/{ctx.p} on Z", "subgroup_order": ctx.p,
                 "h1": tate_h1(A), "h2": tate_h2(A)})
    if args.matrix:
        doc = _load_json(args.matrix)
        docs = doc if isinstance(doc, list) else [doc]
        for i, d in enumerate(docs):
            try:
                A = LatticeAction(d["T"], int(d["r"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(str(exc), f"{args.matrix}: entry {i}") from exc
            rows.append({"action": f"user matrix {i}", "subgroup_order": A.r,
                         "h1": tate_h1(A), "h2": tate_h2(A)})
    if args.format == "json":
        return 0, json.dumps(rows)
    lines = [f"{r['action']}, group of order {r['subgroup_order']}: "
             f"H1 = {_group_name(r['h1'])}, H2 = {_group_name(r['h2'])}" for r in rows]
    return 0, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normone", description="Explicit norm-one elements for cyclic p-groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, group=True):
        if group:
            sp.add_argument("--p", type=int, required=True, help="prime p")
            sp.add_argument("--n", type=int, required=True, help="group order exponent n")
            sp.add_argument("--force", action="store_true", help=f"allow p^n > {ORDER_LIMIT}")
        sp.add_argument("--format", choices=["text", "latex", "json"], default="text")
        sp.add_argument("--output", "-o", default="-", help="output path (default stdout)")

    sp = sub.add_parser("generate", help="build a norm-one element for Z/p^n")
    common(sp)
    sp.add_argument("--strategy", default="doubling", help="unit, doubling, or m:k,m:k,...")
    sp.add_argument("--steps", action="store_true", help="print z, w, a, X_out per step")
    sp.add_argument("--no-verify", dest="verify", action="store_false")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", help="check N_{G_m}(P) = 1 for a JSON polynomial")
    common(sp, group=False)
    sp.add_argument("document", help="JSON document path, or - for stdin")
    sp.add_argument("--m", type=int, default=None, help="subgroup exponent (default n)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("count", help="monomial counts against the size bounds")
    common(sp)
    sp.add_argument("--strategy", default="both", help="unit, doubling, both, or m:k,...")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("evaluate", help="numeric check on seeded ring instances")
    common(sp)
    sp.add_argument("--strategy", default="doubling")
    sp.add_argument("--kind", choices=["scalar", "matrix"], default="scalar")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    sp.add_argument("--instance", help="JSON instance document instead of a random one")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("replay", help="check the identities behind one lift step")
    common(sp)
    sp.add_argument("--strategy", default="doubling")
    sp.add_argument("--step", type=int, default=None, help="step index (default last)")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("cohomology", help="Tate cohomology of lattice actions")
    common(sp)
    sp.add_argument("--matrix", help='JSON {"T": [[...]], "r": int} or a list of them')
    sp.set_defaults(func=cmd_cohomology)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, text = args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if args.output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
