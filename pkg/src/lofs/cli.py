"""Command-line front end.

Exit codes: 0 pass, 1 counterexample (or missing filler), 2 parse or usage error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Any, Sequence

from . import awfs, monad as mon
from .downset import DEFAULT_CAP, downset_monad
from .errors import CapExceeded, LofsError, ParseError
from .filters import FilterClass, as_monad_instance
from .io import dump_map, dump_poset, dump_square, load_map, load_monad, load_square, read_json
from .poset import MonotoneMap, Poset, is_full, is_lari, monotone_maps, posets_up_to, right_adjoint
from .report import Report, Verdict
from .space import is_dense, is_embedding

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3

MONADS = ("P", "F", "F1", "Fomega", "FOmega", "Id", "M_opfib")
AWFS_ONLY = ("M_opfib", "trivial")
FILTER_CLASSES = {
    "F": FilterClass.ALL,
    "F1": FilterClass.PROPER,
    "Fomega": FilterClass.PRIME,
    "FOmega": FilterClass.COMPLETELY_PRIME,
}
CHECKS = (
    "monad-laws",
    "lax-idempotent",
    "simple",
    "embedding",
    "opfibration",
    "lari",
    "cancellative",
    "reflective",
    "lofs",
    "distributivity",
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- building


def build_monad(
    name: str, objects: Sequence[Poset], cap_opens: int, monad_file: str | None = None, validate: bool = True
) -> mon.MonadInstance:
    if monad_file:
        return load_monad(read_json(monad_file), validate=validate)[0]
    if name == "P":
        return downset_monad(objects, cap=cap_opens)
    if name in FILTER_CLASSES:
        return as_monad_instance(FILTER_CLASSES[name], objects, cap_opens=cap_opens)
    if name == "Id":
        return mon.identity_monad(objects)
    raise UsageError(f"{name} is not a monad on posets; use it with AWFS-level checks")


def build_awfs(
    name: str, objects: Sequence[Poset], maps: Sequence[MonotoneMap], cap_opens: int, monad_file: str | None = None
) -> awfs.AWFSRecord:
    if monad_file:
        return mon.induced_lofs(build_monad(name, objects, cap_opens, monad_file), maps)
    if name == "M_opfib":
        return awfs.lari_opfib_awfs(objects, maps)
    if name == "trivial":
        return awfs.trivial_ofs(objects, maps)
    return mon.induced_lofs(build_monad(name, objects, cap_opens), maps)


def universe(args) -> tuple[list[Poset], list[MonotoneMap]]:
    if args.monad_file:
        M = load_monad(read_json(args.monad_file))[0]
        objects, maps = list(M.universe), list(M.maps or [])
    else:
        objects = posets_up_to(args.max_size)
        maps = [f for X in objects for Y in objects for f in monotone_maps(X, Y)]
    if args.sample is not None and args.sample < len(maps):
        chosen = sorted(random.Random(args.seed).sample(range(len(maps)), args.sample))
        maps = [maps[i] for i in chosen]
    return objects, maps


def _map_arg(args) -> MonotoneMap | None:
    return load_map(read_json(args.map)) if getattr(args, "map", None) else None


# ---------------------------------------------------------------- commands


def cmd_factorize(args) -> tuple[dict, int]:
    f = _map_arg(args)
    if f is None:
        raise UsageError("factorize needs --map")
    objects = [f.dom, f.cod]
    if args.monad in AWFS_ONLY and not args.monad_file:
        A = build_awfs(args.monad, objects, [f], args.cap_opens, args.monad_file)
        L, R = A.factor(f)
        q = A.cone_of(f).d0 if A.cone_of else None
    else:
        M = build_monad(args.monad, objects, args.cap_opens, args.monad_file)
        fa = mon.factorize(M, f)
        L, R, q = fa.L, fa.R, fa.q
    out = {
        "map": dump_map(f),
        "K": dump_poset(L.cod),
        "L": list(L.table),
        "R": list(R.table),
    }
    if q is not None:
        out["q"] = list(q.table)
        out["q_cod"] = dump_poset(q.cod)
    return {"ok": True, "factorization": out}, EXIT_PASS


def _report_result(rep: Report, extra: dict | None = None) -> tuple[dict, int]:
    body = rep.to_dict()
    if extra:
        body.update(extra)
    return body, EXIT_PASS if rep.ok else EXIT_FAIL


def _verdict_result(name: str, v: Verdict, extra: dict | None = None) -> tuple[dict, int]:
    body = {"check": name, **v.to_dict()}
    if extra:
        body.update(extra)
    return body, EXIT_PASS if v.ok else EXIT_FAIL


def cmd_check(args) -> tuple[dict, int]:
    what = args.what
    f = _map_arg(args)
    if what == "lari":
        if f is None:
            raise UsageError("check lari needs --map")
        adj = right_adjoint(f)
        if not adj:
            return _verdict_result("lari", Verdict(False, {"reason": adj.reason, **(adj.witness or {}), "map": dump_map(f)}))
        ok = is_lari(f)
        w = None if ok else {"reason": "right adjoint is not a retraction", "right_adjoint": list(adj.right.table), "map": dump_map(f)}
        return _verdict_result("lari", Verdict(ok, w, {"right_adjoint": list(adj.right.table)}))
    if what == "opfibration":
        if f is None:
            raise UsageError("check opfibration needs --map")
        v = awfs.is_split_opfibration(f)
        if not v:
            v.witness = {**v.witness, "map": dump_map(f)}
        return _verdict_result("opfibration", v, {"full": is_full(f)})

    if f is not None:
        objects, maps = [f.dom, f.cod], [f]
    else:
        objects, maps = universe(args)

    if what in ("cancellative", "reflective", "lofs", "distributivity") or (
        args.monad in AWFS_ONLY and not args.monad_file
    ):
        A = build_awfs(args.monad, objects, maps, args.cap_opens, args.monad_file)
        if what == "lofs":
            return _report_result(awfs.validate_lofs(A, maps))
        if what == "distributivity":
            return _report_result(awfs.check_distributivity(A, maps))
        if what == "cancellative":
            return _verdict_result("cancellative", awfs.is_cancellative(A, maps))
        if what == "reflective":
            v = awfs.is_kz_reflective_instancewise(A, objects, maps)
            return _verdict_result("reflective", v)
        if what == "monad-laws":
            return _report_result(awfs.validate_awfs(A, maps))
        if what == "lax-idempotent":
            return _report_result(awfs.validate_lofs(A, maps))
        raise UsageError(f"check {what} is not available for {args.monad}")

    M = build_monad(args.monad, objects, args.cap_opens, args.monad_file, validate=what != "monad-laws")
    if what == "monad-laws":
        return _report_result(mon.validate_monad(M, objects, maps))
    if what == "lax-idempotent":
        return _verdict_result("lax-idempotent", mon.is_lax_idempotent(M, objects))
    if what == "simple":
        return _verdict_result("simple", mon.is_simple(M, maps))
    if what == "embedding":
        return _embedding(M, args.monad, maps, single=f is not None)
    raise UsageError(f"unknown check {what}")


def _embedding(M: mon.MonadInstance, name: str, maps: Sequence[MonotoneMap], single: bool) -> tuple[dict, int]:
    external = None
    if name == "F":
        external = ("topological embedding", is_embedding)
    elif name == "F1":
        external = ("dense embedding", lambda g: is_embedding(g) and is_dense(g))
    rows = []
    mismatch = None
    for g in maps:
        t_emb = mon.is_T_embedding(M, g)
        row = {"table": list(g.table), "T_embedding": t_emb}
        if external is not None:
            row[external[0]] = external[1](g)
            if row[external[0]] != t_emb and mismatch is None:
                mismatch = {"map": dump_map(g), **row}
        rows.append(row)
    if single:
        g = maps[0]
        ok = rows[0]["T_embedding"]
        w = None if ok else {"reason": "Tf is not a LARI", "map": dump_map(g)}
        return _verdict_result("embedding", Verdict(ok and mismatch is None, w or mismatch, {"map": rows[0]}))
    details = {
        "maps": len(rows),
        "T_embeddings": sum(r["T_embedding"] for r in rows),
        "compared_with": external[0] if external else None,
    }
    return _verdict_result("embedding agreement", Verdict(mismatch is None, mismatch, details))


def cmd_diagonal(args) -> tuple[dict, int]:
    sq = load_square(read_json(args.square))
    out: dict[str, Any] = {"square": dump_square(sq)}
    ok = True
    if args.mode in ("oracle", "both"):
        lo = awfs.least_diagonal_oracle(sq)
        if isinstance(lo, MonotoneMap):
            out["oracle"] = list(lo.table)
        else:
            out["oracle"] = {"absent": lo.reason, "fillers": lo.witness}
            ok = False
    if args.mode in ("algebraic", "both"):
        objects = [sq.left.dom, sq.left.cod, sq.right.dom, sq.right.cod]
        A = build_awfs(args.monad, objects, [sq.left, sq.right], args.cap_opens, args.monad_file)
        s = awfs.coalgebra(A, sq.left)
        p = awfs.algebra(A, sq.right)
        if s is None or p is None:
            missing = [side for side, st in (("left coalgebra", s), ("right algebra", p)) if st is None]
            out["algebraic"] = {"absent": "no structure", "missing": missing}
            ok = False
        else:
            out["algebraic"] = list(awfs.kz_diagonal(A, sq, s, p).table)
    if args.mode == "both" and ok and out["algebraic"] != out["oracle"]:
        out["mismatch"] = True
        ok = False
    out["ok"] = ok
    out["check"] = "diagonal"
    return out, EXIT_PASS if ok else EXIT_FAIL


# ------------------------------------------------------------------ driver


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--monad", default="P", choices=MONADS + ("trivial",))
    p.add_argument("--max-size", type=int, default=3, help="largest poset in the enumerated universe")
    p.add_argument("--seed", type=int, default=0, help="seed for --sample")
    p.add_argument("--sample", type=int, default=None, help="check a random subset of this many maps")
    p.add_argument("--cap-opens", type=int, default=DEFAULT_CAP, help="largest lattice of opens or down-sets built")
    p.add_argument("--monad-file", help="JSON tabulated monad used instead of --monad")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timing", action="store_true", help="append wall-clock timing to the report")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lofs", description="Factorizations and lifting checks on finite posets.")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("factorize", help="comma-object factorization of a map")
    _common(p)
    p.add_argument("--map", required=True)
    p = sub.add_parser("check", help="run one verification")
    p.add_argument("what", choices=CHECKS)
    _common(p)
    p.add_argument("--map")
    p = sub.add_parser("diagonal", help="diagonal filler of a square")
    _common(p)
    p.set_defaults(monad="M_opfib")
    p.add_argument("--square", required=True)
    p.add_argument("--mode", choices=("algebraic", "oracle", "both"), default="both")
    return parser


def _config(args) -> dict:
    keys = ("verb", "what", "monad", "monad_file", "max_size", "seed", "sample", "cap_opens", "map", "square", "mode")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _text(report: dict) -> str:
    lines = []
    res = report["result"]
    status = {0: "PASS", 1: "FAIL", 2: "PARSE ERROR", 3: "CAP EXCEEDED"}[report["exit_code"]]
    lines.append(f"{res.get('check', report['config'].get('verb'))}: {status}")
    for k, v in res.items():
        if k in ("check", "ok"):
            continue
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    if "timing" in report:
        lines.append(f"  seconds: {report['timing']['seconds']:.3f}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[dict, int, str]:
    args = make_parser().parse_args(argv)
    handlers = {"factorize": cmd_factorize, "check": cmd_check, "diagonal": cmd_diagonal}
    start = time.perf_counter()
    try:
        result, code = handlers[args.verb](args)
    except (ParseError, UsageError) as exc:
        result, code = {"ok": False, "error": str(exc), "witness": getattr(exc, "witness", None)}, EXIT_PARSE
    except CapExceeded as exc:
        result, code = {"ok": False, "error": str(exc), "witness": exc.witness}, EXIT_CAP
    except LofsError as exc:
        result, code = {"ok": False, "error": f"{type(exc).__name__}: {exc}", "witness": exc.witness}, EXIT_FAIL
    report = {"config": _config(args), "result": result, "exit_code": code}
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - start}
    return report, code, args.format


def main(argv: Sequence[str] | None = None) -> int:
    report, code, fmt = run(argv)
    if fmt == "text":
        print(_text(report))
    else:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
