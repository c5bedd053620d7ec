"""Command-line front end: ``tautring {dims,sl2,conjecture,psi,relations,schema}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from . import chowtaut, herbaut, quotient, vdgk
from .polyring import format_poly
from .schemas import SCHEMAS

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _map(fn: Callable, args: Iterable, jobs: int) -> list:
    """Ordered map, in worker processes when jobs > 1."""
    args = list(args)
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


# ---------------------------------------------------------------------------
# workers (top level so they pickle)
# ---------------------------------------------------------------------------


def _dims_level(g: int, j: int) -> list[dict]:
    out = []
    for i in range(j, g + 1):
        rep = quotient.cell_report(g, i, j)
        out.append(
            {
                "i": i,
                "j": j,
                "dim_R": rep.dim_R,
                "dim_I": rep.dim_I,
                "dim_cR": rep.dim_cR,
                "relations": [format_poly(p) for p in rep.ideal_basis],
            }
        )
    return out


def _conjecture_genus(g: int, strong: bool) -> dict:
    rep = vdgk.verify_conjecture(g, strong=strong)
    mism = []
    for c in rep.mismatches():
        row = {"i": c.i, "j": c.j, "predicted": c.predicted, "computed": c.computed}
        if c.strong is not None:
            row["strong"] = c.strong
        mism.append(row)
    return {"g": g, "pass": rep.all_match, "cells": len(rep.cells), "mismatches": mism}


def _psi_range(r: int, lo: int, hi: int) -> list[tuple[int, int]]:
    return herbaut.psi_zero_search(r, hi, g_min=lo)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _write(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tsv(header: list[str], rows: Iterable[Iterable]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(x) for x in row) for row in rows]
    return "\n".join(lines)


def _emit(args, obj: dict, text: Callable[[dict], str], tsv: Callable[[dict], str]) -> None:
    if args.format == "json":
        out = json.dumps(obj, indent=2)
    elif args.format == "tsv":
        out = tsv(obj)
    else:
        out = text(obj)
    _write(out, args.output)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_dims(args) -> int:
    g = args.genus
    levels = _map(_dims_level, [(g, j) for j in range(g + 1)], args.jobs)
    cells = sorted((c for lvl in levels for c in lvl), key=lambda c: (c["j"], c["i"]))
    obj = {"genus": g, "cells": cells}

    def text(o):
        by = {(c["i"], c["j"]): c for c in o["cells"]}
        w = max(3, max(len(str(c["dim_cR"])) for c in o["cells"]) + 1)
        lines = [f"genus {g}: dim cR^i_(j), rows i, columns j"]
        lines.append("i\\j " + "".join(f"{j:>{w}}" for j in range(g + 1)))
        for i in range(g + 1):
            lines.append(f"{i:>3} " + "".join(f"{by[i, j]['dim_cR']:>{w}}" for j in range(i + 1)))
        lines.append("")
        lines.append("cells (i,j): dim R, relations, dim cR")
        for c in o["cells"]:
            rel = "; ".join(c["relations"])
            lines.append(f"({c['i']},{c['j']}): {c['dim_R']}, {c['dim_I']}, {c['dim_cR']}" + (f"  {rel}" if rel else ""))
        return "\n".join(lines)

    def tsv(o):
        return _tsv(
            ["i", "j", "dim_R", "dim_I", "dim_cR", "relations"],
            ([c["i"], c["j"], c["dim_R"], c["dim_I"], c["dim_cR"], "; ".join(c["relations"])] for c in o["cells"]),
        )

    _emit(args, obj, text, tsv)
    return EXIT_OK


def cmd_sl2(args) -> int:
    summands = quotient.sl2_decomp(args.genus, args.level)
    obj = {
        "genus": args.genus,
        "level": args.level,
        "summands": [
            {"highest_weight": s.highest_weight, "multiplicity": s.multiplicity, "anchor_i": s.anchor_i} for s in summands
        ],
    }

    def text(o):
        lines = [f"genus {o['genus']}, level {o['level']}"]
        for s in o["summands"]:
            lines.append(f"Sym^{s['highest_weight']} x{s['multiplicity']}  (i={s['anchor_i']})")
        return "\n".join(lines)

    def tsv(o):
        return _tsv(
            ["highest_weight", "multiplicity", "anchor_i"],
            ([s["highest_weight"], s["multiplicity"], s["anchor_i"]] for s in o["summands"]),
        )

    _emit(args, obj, text, tsv)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    genera = list(range(3, args.max_genus + 1))
    if args.jobs <= 1:
        rows = []
        for g in genera:
            _progress(f"conjecture: genus {g}")
            rows.append(_conjecture_genus(g, args.strong))
    else:
        _progress(f"conjecture: genera 3..{args.max_genus} on {args.jobs} workers")
        rows = _map(_conjecture_genus, [(g, args.strong) for g in genera], args.jobs)
    ok = all(r["pass"] for r in rows)
    obj = {"max_genus": args.max_genus, "strong": args.strong, "all_pass": ok, "genera": rows}

    def text(o):
        lines = []
        for r in o["genera"]:
            status = "pass" if r["pass"] else f"FAIL ({len(r['mismatches'])} cells)"
            lines.append(f"g={r['g']}: {status}, {r['cells']} cells" + (", strong form checked" if o["strong"] else ""))
            for m in r["mismatches"]:
                lines.append(f"  (i,j)=({m['i']},{m['j']}): predicted {m['predicted']}, computed {m['computed']}")
        lines.append("all pass" if o["all_pass"] else "mismatches found")
        return "\n".join(lines)

    def tsv(o):
        return _tsv(["g", "pass", "cells", "mismatches"], ([r["g"], r["pass"], r["cells"], len(r["mismatches"])] for r in o["genera"]))

    _emit(args, obj, text, tsv)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_psi(args) -> int:
    n, r = args.max_genus, args.r
    parts = max(1, min(args.jobs, (n - 1) // 1000 + 1))
    bounds = [2 + (n - 1) * k // parts for k in range(parts + 1)]
    ranges = [(r, bounds[k], bounds[k + 1] - 1 if k + 1 < parts else n) for k in range(parts)]
    _progress(f"psi: r={r}, genus 2..{n} in {parts} range(s)")
    zeros = sorted(z for chunk in _map(_psi_range, ranges, args.jobs) for z in chunk)
    obj = {"r": r, "max_genus": n, "zeros": [list(z) for z in zeros]}

    def text(o):
        return ", ".join(f"({g}, {i})" for g, i in o["zeros"]) if o["zeros"] else "none"

    def tsv(o):
        return _tsv(["g", "i"], o["zeros"])

    _emit(args, obj, text, tsv)
    return EXIT_OK


def _labelled(label: str, p: chowtaut.ChowPoly) -> dict:
    return chowtaut.relation_to_json(p, label)


def cmd_relations(args) -> int:
    g, r, d = args.g, args.r, args.d
    i_max = args.i_max if args.i_max is not None else g
    rels: list[dict] = []
    base = []
    for i in range(d - r + 1, i_max + 1):
        rel = chowtaut.herbaut_modrat(r, d, i, g=g)
        if rel:
            base.append(rel)
            rels.append(_labelled(f"modrat r={r} i={i}", rel))
    if r == 1:
        for i in range(d, i_max + 1):
            img = chowtaut.d_chow(chowtaut.herbaut_modrat(1, d, i, g=g), g)
            if img:
                rels.append(_labelled(f"D(modrat r=1 i={i})", img))
    if r == 2:
        for i in range(max(1, d - 1), i_max + 1):
            pen = chowtaut.g2d_pencils(d, i, g=g)
            if pen.summed:
                rels.append(_labelled(f"pencil-sum i={i}", pen.summed))
    obj = {"g": g, "r": r, "d": d, "relations": rels}
    if args.closure is not None:
        _progress(f"relations: D-closure, at most {args.closure} rounds")
        obj["closure"] = chowtaut.closure_with_status(base, args.closure, g).to_dict()

    def text(o):
        lines = [f"[{x['label']}] {x['relation']}" for x in o["relations"]]
        if "closure" in o:
            cl = o["closure"]
            lines.append(f"closure: {len(cl['relations'])} relations after {cl['iterations']} rounds, stable={cl['stable']}")
            lines += [f"  {x['relation']}" for x in cl["relations"]]
        return "\n".join(lines) if lines else "no relations"

    def tsv(o):
        rows = []
        for x in o["relations"]:
            b = x["bidegree"] or {"codim": "", "level": ""}
            rows.append([x["label"], b["codim"], b["level"], x["relation"]])
        for x in o.get("closure", {}).get("relations", []):
            b = x["bidegree"] or {"codim": "", "level": ""}
            rows.append(["closure", b["codim"], b["level"], x["relation"]])
        return _tsv(["label", "codim", "level", "relation"], rows)

    _emit(args, obj, text, tsv)
    return EXIT_OK


def cmd_schema(args) -> int:
    _write(json.dumps(SCHEMAS[args.name], indent=2), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    p.add_argument("--output", help="write results to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tautring", description="Tautological ring computations on Jacobians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension triangle of cR^i_(j) with relation bases")
    p.add_argument("--genus", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("sl2", help="sl2 decomposition of one level")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("conjecture", help="compare computed dimensions with the predicted partition counts")
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--strong", action="store_true", help="also check the monomial basis")
    _common(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("psi", help="zeros of the factor Psi(g, i, r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-genus", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("relations", help="Chow-level relations from a g^r_d")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i-max", type=int, help="largest codimension to emit (default: g)")
    p.add_argument("--closure", type=int, metavar="N", help="close the relations under D for at most N rounds")
    _common(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("schema", help="print the JSON schema of a command's output")
    p.add_argument("name", choices=sorted(SCHEMAS))
    p.add_argument("--output")
    p.set_defaults(func=cmd_schema)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    cmd = args.command
    if cmd in ("dims", "sl2") and args.genus < 3:
        parser.error("--genus must be >= 3")
    if cmd == "sl2" and args.level < 0:
        parser.error("--level must be >= 0")
    if cmd == "conjecture" and args.max_genus < 3:
        parser.error("--max-genus must be >= 3")
    if cmd == "psi":
        if args.r < 2:
            parser.error("--r must be >= 2")
        if args.max_genus < 3:
            parser.error("--max-genus must be >= 3")
    if cmd == "relations":
        if args.g < 2:
            parser.error("--g must be >= 2")
        if args.r < 1 or args.d <= args.r:
            parser.error("need --r >= 1 and --d > --r")
        if args.r == 2 and args.d < 3:
            parser.error("need --d >= 3 for r = 2")
        if args.closure is not None and args.closure < 0:
            parser.error("--closure must be >= 0")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
