"""Command-line front end: `qnull <subcommand>`.

Exit codes: 0 on success, 1 when a verification or reproduction check fails,
2 on usage errors (bad parameters, malformed files, exceeded budget).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .designs import (
    NullDesign,
    as_modulus,
    construct_lb_design,
    construct_uniform_design,
    read_design,
    strength_of,
    sum_over_superspaces,
    verify_strength,
    write_design,
)
from .fields import Field, field
from .grassmann import (
    enumerate_subspaces,
    from_index,
    gaussian_binomial,
    subspace_to_text,
)
from .incidence import read_matrix, wilson_matrix, write_matrix
from .linalg import (
    BudgetExceededError,
    GfpMatrix,
    SearchReport,
    min_support_kernel_rational,
    min_weight_kernel_gfp,
    rank_rational,
    rref_gfp,
)
from .reproduce import format_rows, rows_to_records, run_grid

__all__ = ["main"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated numeric parameters shared by the subcommands."""

    q: Optional[int] = None
    n: Optional[int] = None
    t: Optional[int] = None
    k: Optional[int] = None
    r: Optional[int] = None

    def validated_field(self) -> Field:
        try:
            return field(self.q)
        except ValueError as e:
            raise UsageError(str(e)) from None

    def validate(self) -> "RunConfig":
        f = self.validated_field()
        n, t, k, r = self.n, self.t, self.k, self.r
        if n is not None and n < 0:
            raise UsageError(f"n must be nonnegative, got {n}")
        for name, v in (("t", t), ("k", k)):
            if v is not None and n is not None and not 0 <= v <= n:
                raise UsageError(f"{name} must lie in [0, {n}], got {v}")
        if t is not None and k is not None and t > k:
            raise UsageError(f"need t <= k, got t={t}, k={k}")
        if r is not None:
            p = f.p
            rr = r
            while rr % p == 0 and rr > 1:
                rr //= p
            if rr != 1 or not 2 <= r <= f.q:
                raise UsageError(
                    f"r must be a power of {p} with 2 <= r <= {f.q}, got {r}"
                )
        return self


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human, end="" if human.endswith("\n") else "\n")


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _write_out(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _budget_from(args) -> Optional[int]:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("QNULL_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"QNULL_BUDGET must be an integer, got {env!r}")
    return None


# -- subcommands --------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    cfg = RunConfig(q=args.q, n=args.n, k=args.k).validate()
    f = cfg.validated_field()
    texts = [subspace_to_text(x) for x in enumerate_subspaces(f, args.n, args.k)]
    want = gaussian_binomial(args.n, args.k, args.q)
    payload = {
        "q": args.q,
        "n": args.n,
        "k": args.k,
        "count": len(texts),
        "gaussian_binomial": want,
        "subspaces": texts,
    }
    human = "\n".join(texts + [f"count={len(texts)} gaussian_binomial={want}"])
    _emit(args, payload, human)
    return 0 if len(texts) == want else 1


def _cmd_wilson(args) -> int:
    RunConfig(q=args.q, n=args.n, t=args.t, k=args.k).validate()
    m = wilson_matrix(args.q, args.n, args.t, args.k)
    text = write_matrix(m)
    nnz = sum(len(col) for col in m.col_rows)
    if args.json:
        payload = {
            "q": args.q,
            "n": args.n,
            "t": args.t,
            "k": args.k,
            "rows": m.rows,
            "cols": m.cols,
            "nonzeros": nnz,
            "out": args.out,
        }
        if args.out is not None:
            _write_out(args.out, text)
        else:
            payload["matrix"] = text
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _write_out(args.out, text)
        if args.out is not None:
            print(f"wrote {m.rows}x{m.cols} matrix ({nnz} nonzeros) to {args.out}")
    return 0


def _cmd_construct(args) -> int:
    cfg = RunConfig(q=args.q, n=args.n, t=args.t, k=args.k, r=args.r)
    cfg.validate()
    if args.kind == "lb":
        design = construct_lb_design(args.q, args.n, args.t, r=args.r)
    else:
        if args.k is None:
            raise UsageError("--k is required for --kind uniform")
        design = construct_uniform_design(args.q, args.n, args.k, args.t)
        if args.r is not None and args.r != design.r:
            design = as_modulus(design, args.r)
    text = write_design(design)
    if args.json:
        payload = {
            "kind": args.kind,
            "q": args.q,
            "n": args.n,
            "t": args.t,
            "k": args.k,
            "r": design.r,
            "support_size": len(design.support),
            "out": args.out,
        }
        if args.out is not None:
            _write_out(args.out, text)
        else:
            payload["design"] = text
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _write_out(args.out, text)
        if args.out is not None:
            print(
                f"wrote {args.kind} design ({len(design.support)} nonzeros) "
                f"to {args.out}"
            )
    return 0


def _load_design(path: str) -> NullDesign:
    try:
        return read_design(_read_file(path))
    except ValueError as e:
        raise UsageError(f"bad design file {path}: {e}") from None


def _cmd_verify(args) -> int:
    design = _load_design(args.design)
    t = args.t if args.t is not None else design.t_claimed
    if args.r is not None and args.r != design.r:
        try:
            design = as_modulus(design, args.r)
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        verdict = verify_strength(design, t)
    except ValueError as e:
        raise UsageError(str(e)) from None
    violations = [
        {"dim": y.k, "subspace": subspace_to_text(y), "sum": s}
        for y, s in verdict.violations
    ]
    payload = {
        "design": args.design,
        "t": t,
        "r": design.r,
        "ok": verdict.ok,
        "violations": violations,
    }
    if verdict.ok:
        human = f"ok: strength {t} holds mod {design.r}"
    else:
        lines = [f"FAIL: strength {t} violated mod {design.r}"]
        lines += [
            f"  dim {v['dim']} [{v['subspace']}] sum={v['sum']}"
            for v in violations[:20]
        ]
        if len(violations) > 20:
            lines.append(f"  ... {len(violations) - 20} more")
        human = "\n".join(lines)
    _emit(args, payload, human)
    return 0 if verdict.ok else 1


def _cmd_strength(args) -> int:
    design = _load_design(args.design)
    t_max = args.t_max if args.t_max is not None else design.n
    s = strength_of(design, t_max)
    payload = {
        "design": args.design,
        "t_max": t_max,
        "strength": s,
    }
    human = f"strength: {s if s is not None else 'none (fails at t=0)'}"
    _emit(args, payload, human)
    return 0


def _load_matrix(path: str):
    try:
        return read_matrix(_read_file(path))
    except ValueError as e:
        raise UsageError(f"bad matrix file {path}: {e}") from None


def _cmd_rank(args) -> int:
    m = _load_matrix(args.matrix)
    if args.over == "q":
        rank = rank_rational(m.dense())
        p = None
    else:
        p = args.p if args.p is not None else field(m.q).p
        try:
            g = GfpMatrix.from_incidence(m, p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _, rank, _ = rref_gfp(g)
    payload = {
        "matrix": args.matrix,
        "over": args.over,
        "p": p,
        "rows": m.rows,
        "cols": m.cols,
        "rank": rank,
    }
    ring = "Q" if args.over == "q" else f"GF({p})"
    _emit(args, payload, f"rank over {ring}: {rank}  ({m.rows}x{m.cols})")
    return 0


def _witness_design_text(m, p: int, rep: SearchReport) -> Optional[str]:
    """The witness as a design file over the matrix's column subspaces."""
    if not rep.found:
        return None
    f = field(m.q)
    support = {
        from_index(f, m.n, m.k, j): v
        for j, v in zip(rep.witness_support, rep.witness_values)
    }
    try:
        design = NullDesign(f, m.n, p, m.t, support)
    except ValueError:
        return None  # p is not a valid coefficient modulus for this field
    return write_design(design)


def _report_payload(rep: SearchReport) -> dict:
    return {
        "weight": rep.weight if rep.found else "none found",
        "exhaustive": rep.exhaustive,
        "mode": rep.mode,
        "cap": rep.cap,
        "witness": None
        if not rep.found
        else {
            "support": list(rep.witness_support),
            "values": list(rep.witness_values),
        },
    }


def _report_human(rep: SearchReport, witness_design: Optional[str]) -> str:
    lines = [
        f"weight:     {rep.weight_text()}",
        f"mode:       {rep.mode}",
        f"exhaustive: {rep.exhaustive}",
        f"cap:        {rep.cap}",
    ]
    if rep.found:
        pairs = " ".join(
            f"{j}:{v}" for j, v in zip(rep.witness_support, rep.witness_values)
        )
        lines.append(f"witness:    {pairs}")
        if witness_design is not None:
            lines.append("witness design file:")
            lines += ["  " + ln for ln in witness_design.splitlines()]
    return "\n".join(lines)


def _cmd_minweight(args) -> int:
    m = _load_matrix(args.matrix)
    if args.cap < 1:
        raise UsageError(f"cap must be >= 1, got {args.cap}")
    budget = _budget_from(args)
    try:
        g = GfpMatrix.from_incidence(m, args.p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        rep = min_weight_kernel_gfp(
            g, cap=args.cap, mode=args.mode, budget=budget, threads=args.threads
        )
    except BudgetExceededError as e:
        raise UsageError(str(e)) from None
    design_text = _witness_design_text(m, args.p, rep)
    payload = _report_payload(rep)
    payload["p"] = args.p
    payload["matrix"] = args.matrix
    if design_text is not None:
        payload["witness"]["design"] = design_text
    _emit(args, payload, _report_human(rep, design_text))
    return 0


def _cmd_minsupport(args) -> int:
    m = _load_matrix(args.matrix)
    if args.cap < 1:
        raise UsageError(f"cap must be >= 1, got {args.cap}")
    rep = min_support_kernel_rational(m.dense(), cap=args.cap)
    payload = _report_payload(rep)
    payload["matrix"] = args.matrix
    human = _report_human(rep, None)
    if rep.found:
        f = field(m.q)
        lines = ["witness subspaces:"]
        for j, v in zip(rep.witness_support, rep.witness_values):
            x = from_index(f, m.n, m.k, j)
            lines.append(f"  {x.k}|{subspace_to_text(x)}|{v}")
        human = human + "\n" + "\n".join(lines)
    _emit(args, payload, human)
    return 0


def _cmd_reproduce(args) -> int:
    budget = _budget_from(args)
    rows = run_grid(
        only=args.only,
        inject_corruption=args.inject_corruption,
        budget=budget,
        threads=args.threads,
    )
    failures = sum(1 for r in rows if not r.ok)
    payload = {
        "checks": len(rows),
        "failures": failures,
        "rows": rows_to_records(rows),
    }
    _emit(args, payload, format_rows(rows))
    return 0 if failures == 0 else 1


# -- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qnull",
        description="Exact subspace null designs over GF(q): construct, "
        "verify, and search.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument(
            "--json", action="store_true", help="emit a machine-readable record"
        )

    p = sub.add_parser("enumerate", help="list subspaces in canonical order")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("wilson", help="write a containment matrix file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    add_json(p)
    p.set_defaults(func=_cmd_wilson)

    p = sub.add_parser("construct", help="build a null design file")
    p.add_argument("--kind", choices=["lb", "uniform"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--out", default=None)
    add_json(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check a design file at strength t")
    p.add_argument("--design", required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("strength", help="largest verified strength of a design")
    p.add_argument("--design", required=True)
    p.add_argument("--t-max", type=int, default=None, dest="t_max")
    add_json(p)
    p.set_defaults(func=_cmd_strength)

    p = sub.add_parser("rank", help="exact rank of a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--over", choices=["gf", "q"], required=True)
    p.add_argument("--p", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("minweight", help="minimum kernel weight over GF(p)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--mode", choices=["kernel", "support"], default="kernel")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    add_json(p)
    p.set_defaults(func=_cmd_minweight)

    p = sub.add_parser(
        "minsupport", help="minimum rational kernel support of a 0/1 matrix"
    )
    p.add_argument("--matrix", required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    add_json(p)
    p.set_defaults(func=_cmd_minsupport)

    p = sub.add_parser("reproduce", help="run the full reproduction grid")
    p.add_argument("--only", default=None, help="label substring filter")
    p.add_argument(
        "--inject-corruption",
        action="store_true",
        help="negative control: corrupt one matrix entry before the rank rows",
    )
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    add_json(p)
    p.set_defaults(func=_cmd_reproduce)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
