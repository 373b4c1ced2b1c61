"""Command-line front end.

Every run prints its full configuration as a header, so identical
configurations give byte-identical output. Exit status: 0 success, 1 a
checked inequality or verification failed, 2 bad input or capacity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import bounds, construction, core, families, search, setcover
from .reporting import to_exact

OUT_DIR_ENV = "KNESERKIT_OUT_DIR"
COMMANDS = (
    "bounds",
    "construct",
    "verify-construction",
    "setcover-demo",
    "search-max-union",
    "choice-sim",
    "kn-bound",
)

CSV_HELP = """\
CSV columns by command:
  bounds               name,relation,lhs,rhs,holds,preconditions_met
  construct            family,kind,index,size
  verify-construction  k,m,n,s,total_sets,uncovered,uncovered_formula,star_uncovered,union,star_union,improvement,ok
  setcover-demo        level,size,bound
  search-max-union     color,size,center,members
  choice-sim           n,k,u,trials,seed,infeasible,rate
  kn-bound             n,k,edges,lower_bound,exact_cliques,holds
Non-integer rationals are written as num/den. Files named by --witness-out / --families-out,
or placed in $KNESERKIT_OUT_DIR when it is set.
"""


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": {k: v for k, v in sorted(self.parameters.items())},
            "seed": self.seed,
            "output_format": self.output_format,
            "output_path": self.output_path,
        }


@dataclass
class Outcome:
    report: dict[str, Any]
    rows: list[dict[str, Any]]
    ok: bool = True
    files: dict[str, str] = field(default_factory=dict)


def _exact_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if v is None:
        return ""
    return str(v)


def _out_file(explicit: str | None, default_name: str) -> Path | None:
    if explicit:
        return Path(explicit)
    base = os.environ.get(OUT_DIR_ENV)
    return Path(base) / default_name if base else None


# -- command handlers -----------------------------------------------------------


def _cmd_bounds(p: dict[str, Any], seed: int) -> Outcome:
    check = p["check"]
    n, k, s = p.get("n"), p.get("k"), p.get("s")
    if check == "prop21":
        rep = bounds.prop21_check(n, k, s)
    elif check == "mainlemma":
        rep = bounds.mainlemma_check(n, k, s)
    elif check == "star-union":
        rep = bounds.InequalityReport(
            "star_union", bounds.star_union_bound(n, k, s), core.binomial(n, k), relation="<=",
            notes="C(n,k) - C(n-s,k) against C(n,k)",
        )
    elif check == "hm":
        rep = bounds.InequalityReport(
            "hm_bound", families.hm_bound(n, k), core.binomial(n - 1, k - 1), relation="<=",
            notes="Hilton-Milner bound against the star size C(n-1,k-1)",
        )
    elif check == "choice-ratio":
        u, z = p["u"], p["z"]
        ratio = bounds.choice_prob_ratio(u, z)
        rep = bounds.InequalityReport("choice_prob_ratio", ratio, 1, relation="<=", notes=f"C(u-z,u/2)/C(u,u/2), u={u}, z={z}")
    elif check == "centers":
        cover = bounds.CoverSpec.build(k, p.get("u1") or 0, _parse_pair_descriptors(p.get("pairs") or ""))
        rep = bounds.InequalityReport(
            "expected_centers", bounds.expected_centers(n, k, cover), Fraction(cover.u * k, n), relation="<=",
            preconditions_met=n >= k * k, notes="E[centres] vs uk/n",
        )
    elif check == "exponent":
        if p.get("u") is not None:
            z = -(-2 * p["u"] * k // n)
            params = bounds.ChoiceParams(n, k, p["C"], p["epsilon"], p["delta"], p["u"], z)
        else:
            params = bounds.ChoiceParams.derive(n, k, p["C"], p["epsilon"], p["delta"])
        rep = bounds.choice_exponent_check(params)
        rep.checks.update(u=params.u, z=params.z)
    else:  # argparse restricts choices
        raise ValueError(f"unknown check {check}")
    row = {k: rep.to_dict()[k] for k in ("name", "relation", "lhs", "rhs", "holds", "preconditions_met")}
    return Outcome(rep.to_dict(), [row], ok=rep.holds)


def _parse_pair_descriptors(text: str) -> list[list[tuple[int, int]]]:
    out = []
    for block in filter(None, text.split(";")):
        out.append([tuple(int(x) for x in pair.split("-")) for pair in block.split(",")])
    return out


def _cmd_construct(p: dict[str, Any], seed: int) -> Outcome:
    gp = construction.build_ground(p["k"], p["m"])
    bundle = construction.build_families(gp)
    rows = []
    for (i, y), f in bundle.hm_families.items():
        rows.append({"family": len(rows) + 1, "kind": "HM", "index": f"{i}:{y}", "size": len(f)})
    for i, f in enumerate(bundle.t_families, 1):
        rows.append({"family": len(rows) + 1, "kind": "T", "index": str(i), "size": len(f)})
    report = {
        "ground": gp.to_dict(),
        "s": bundle.s,
        "family_count": len(bundle.families()),
        "families": rows,
        "union": families.union_size(bundle.families()),
        "star_union": bounds.star_union_bound(gp.n, gp.k, bundle.s),
    }
    files = {}
    path = _out_file(p.get("families_out"), f"construction_k{p['k']}_m{p['m']}.txt")
    text = families.format_families(bundle.families())
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        files["families"] = str(path)
    else:
        report["families_text"] = text
    ok = len(bundle.families()) == bundle.s
    return Outcome(report, rows, ok=ok, files=files)


def _cmd_verify_construction(p: dict[str, Any], seed: int) -> Outcome:
    rep = construction.verify_construction(p["k"], p["m"])
    d = rep.to_dict()
    cols = ("k", "m", "n", "s", "total_sets", "uncovered", "uncovered_formula", "star_uncovered",
            "union", "star_union", "improvement", "ok")
    return Outcome(d, [{c: d[c] for c in cols}], ok=rep.ok)


def _default_setcover_instance() -> setcover.SetCoverInstance:
    n, k = 8, 4
    left, right = core.mask_of(range(1, 5)), core.mask_of(range(5, 9))
    F = families.SetFamily(n, k, (a for a in core.iter_kmasks(n, k) if a & left and a & right))
    Gx = families.SetFamily(n, k, [left, right])
    return setcover.SetCoverInstance(F, Gx, k)


def _cmd_setcover(p: dict[str, Any], seed: int) -> Outcome:
    if p.get("input"):
        fams = families.parse_families(Path(p["input"]).read_text(), n=p.get("n"))
        if len(fams) != 2:
            raise ValueError("setcover input needs exactly two families: F then Gx")
        F, Gx = fams
        n = max(F.ground_n, Gx.ground_n)
        F, Gx = families.SetFamily(n, F.k, F.masks), families.SetFamily(n, Gx.k, Gx.masks)
        inst = setcover.SetCoverInstance(F, Gx, p.get("k") or F.k)
    else:
        inst = _default_setcover_instance()
    k = inst.k
    rows = []
    ok = True
    last = None
    for level, H in enumerate(setcover.set_cover_levels(inst)):
        covers = setcover.verify_set_cover(inst.F, H)
        ok &= covers and len(H) <= k**level
        rows.append({"level": level, "size": len(H), "bound": k**level})
        last = H
    report = {
        "k": k,
        "levels": inst.levels,
        "F_size": len(inst.F),
        "Gx_size": len(inst.Gx),
        "tau_Gx": inst.Gx.tau,
        "H": last.as_sets(),
        "H_size": len(last),
        "size_bound": k**inst.levels,
        "set_cover": setcover.verify_set_cover(inst.F, last),
        "level_table": rows,
    }
    return Outcome(report, rows, ok=ok)


def _cmd_search(p: dict[str, Any], seed: int) -> Outcome:
    n, k, s = p["n"], p["k"], p["s"]
    res = search.max_union_intersecting(n, k, s, p.get("nontrivial", False), cap=p.get("cap") or search.DEFAULT_VERTEX_CAP)
    report = res.to_dict()
    report["star_union_bound"] = bounds.star_union_bound(n, k, s)
    rows = []
    for c, f in enumerate(res.witness, 1):
        rows.append({
            "color": c,
            "size": len(f),
            "center": f.trivial_center,
            "members": " ".join(",".join(map(str, a)) for a in f.as_sets()),
        })
    files = {}
    suffix = "_nt" if p.get("nontrivial") else ""
    path = _out_file(p.get("witness_out"), f"witness_n{n}_k{k}_s{s}{suffix}.txt")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(families.format_families(res.witness))
        files["witness"] = str(path)
    if res.witness:
        witness_ok = all(f.is_intersecting for f in res.witness) and families.union_size(res.witness) == res.optimum
    else:
        witness_ok = res.optimum == 0
    return Outcome(report, rows, ok=res.exact and witness_ok, files=files)


def _cmd_choice(p: dict[str, Any], seed: int) -> Outcome:
    rep = search.monte_carlo_choice(p["n"], p["k"], p["u"], p["trials"], seed)
    d = rep.to_dict()
    row = {c: d[c] for c in ("n", "k", "u", "trials", "seed", "infeasible", "rate")}
    return Outcome(d, [row])


def _cmd_kn(p: dict[str, Any], seed: int) -> Outcome:
    n, k = p["n"], p["k"]
    if p.get("complete"):
        g = core.GraphOnN.complete(n)
    elif p.get("edges"):
        g = core.GraphOnN.from_pairs(n, (tuple(int(x) for x in e.split("-")) for e in p["edges"].split(",")))
    else:
        import numpy as np

        m = p.get("random_edges") or 0
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        if m > len(pairs):
            raise ValueError(f"{m} edges exceed C({n},2)")
        rng = np.random.Generator(np.random.PCG64(seed))
        picked = sorted(rng.choice(len(pairs), size=m, replace=False).tolist())
        g = core.GraphOnN.from_pairs(n, (pairs[i] for i in picked))
    lower = bounds.kn_lower_bound(g, k)
    exact = core.count_cliques(g, k) if n <= core.DEFAULT_GRAPH_CAP else None
    holds = exact is None or lower <= exact
    report = {
        "n": n,
        "k": k,
        "edges": g.edge_count,
        "density": Fraction(g.edge_count, n * n),
        "lower_bound": lower,
        "exact_cliques": exact,
        "holds": holds,
        "edge_list": [list(e) for e in g.sorted_edges()],
    }
    row = {c: report[c] for c in ("n", "k", "edges", "lower_bound", "exact_cliques", "holds")}
    return Outcome(report, [row], ok=holds)


HANDLERS: dict[str, Callable[[dict[str, Any], int], Outcome]] = {
    "bounds": _cmd_bounds,
    "construct": _cmd_construct,
    "verify-construction": _cmd_verify_construction,
    "setcover-demo": _cmd_setcover,
    "search-max-union": _cmd_search,
    "choice-sim": _cmd_choice,
    "kn-bound": _cmd_kn,
}


# -- rendering -------------------------------------------------------------------


def render(config: RunConfig, outcome: Outcome) -> str:
    header = to_exact(config.to_dict())
    if config.output_format == "json":
        doc = {"config": header, "report": to_exact(outcome.report), "ok": outcome.ok, "files": outcome.files}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(header, sort_keys=True) + "\n")
    if config.output_format == "csv":
        if outcome.rows:
            writer = csv.DictWriter(buf, fieldnames=list(outcome.rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in outcome.rows:
                writer.writerow({k: _exact_cell(v) for k, v in row.items()})
        return buf.getvalue()
    for key, value in _flatten(outcome.report):
        buf.write(f"{key}: {value}\n")
    if "ok" not in outcome.report:
        buf.write(f"ok: {_exact_cell(outcome.ok)}\n")
    for name, path in sorted(outcome.files.items()):
        buf.write(f"file.{name}: {path}\n")
    return buf.getvalue()


def _flatten(obj: Any, prefix: str = ""):
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}{i}.")
    elif isinstance(obj, (list, tuple)):
        yield prefix.rstrip("."), json.dumps(to_exact(obj))
    else:
        yield prefix.rstrip("."), _exact_cell(obj)


def run(config: RunConfig, stream=None) -> int:
    """Dispatch ``config`` and write the report; returns the exit status."""
    if config.command not in HANDLERS:
        print(f"unknown command {config.command!r}; choose from {', '.join(COMMANDS)}", file=sys.stderr)
        return 2
    try:
        outcome = HANDLERS[config.command](config.parameters, config.seed)
    except (ValueError, core.CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(config, outcome)
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        (stream or sys.stdout).write(text)
    return 0 if outcome.ok else 1


# -- argument parsing -----------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", dest="output_path", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker cap (runs are single-threaded)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")

    parser = argparse.ArgumentParser(
        prog="kneserkit",
        description="Exact bounds, constructions and brute-force oracles for unions of intersecting families.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, epilog=CSV_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    b = add("bounds", "evaluate one exact bound or inequality")
    b.add_argument("--check", required=True,
                   choices=("prop21", "mainlemma", "star-union", "hm", "choice-ratio", "centers", "exponent"))
    for name in ("n", "k", "s", "u", "z", "u1"):
        b.add_argument(f"--{name}", type=int)
    b.add_argument("--pairs", help="A-descriptors: pairs 'a-b' joined by ',', descriptors joined by ';'")
    b.add_argument("--C", type=_rational, default=Fraction(1, 12))
    b.add_argument("--epsilon", type=_rational, default=Fraction(0))
    b.add_argument("--delta", type=_rational, default=Fraction(0))

    for name, help_text in (("construct", "build the construction and export its families"),
                            ("verify-construction", "enumerate and verify the construction")):
        c = add(name, help_text)
        c.add_argument("--k", type=int, required=True)
        c.add_argument("--m", type=int, required=True)
        if name == "construct":
            c.add_argument("--families-out", help="family serialization output file")

    sc = add("setcover-demo", "run the level-by-level set cover")
    sc.add_argument("--input", help="family file: F, blank line, Gx (default: the n=8, k=4 demo)")
    sc.add_argument("--n", type=int)
    sc.add_argument("--k", type=int)

    sm = add("search-max-union", "exact maximum union of s intersecting families")
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--k", type=int, required=True)
    sm.add_argument("--s", type=int, required=True)
    sm.add_argument("--nontrivial", action="store_true", help="require every class to have no common element")
    sm.add_argument("--cap", type=int, help=f"vertex cap (default {search.DEFAULT_VERTEX_CAP})")
    sm.add_argument("--witness-out", help="witness file in the family serialization format")

    cs = add("choice-sim", "Monte Carlo random list colouring of KG(n,k)")
    for name in ("n", "k", "u", "trials"):
        cs.add_argument(f"--{name}", type=int, required=True)

    kn = add("kn-bound", "iterated clique-count lower bound on a graph")
    kn.add_argument("--n", type=int, required=True)
    kn.add_argument("--k", type=int, required=True)
    g = kn.add_mutually_exclusive_group(required=True)
    g.add_argument("--complete", action="store_true")
    g.add_argument("--edges", help="0-based edges 'u-v' joined by ','")
    g.add_argument("--random-edges", type=int, help="number of edges drawn with --seed")
    return parser


def config_from_args(argv: list[str] | None = None) -> tuple[RunConfig, bool]:
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    command = ns.pop("command")
    fmt = ns.pop("output_format")
    out = ns.pop("output_path")
    seed = ns.pop("seed")
    verbose = ns.pop("verbose")
    ns.pop("threads")
    params = {k: v for k, v in ns.items() if v is not None and v is not False}
    return RunConfig(command, params, seed, fmt, out), verbose


def main(argv: list[str] | None = None) -> int:
    config, verbose = config_from_args(argv)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
