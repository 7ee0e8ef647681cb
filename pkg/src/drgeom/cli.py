"""Command-line interface: ``drgeom <command> ...``.

Exit status 0 means the command completed, whatever the mathematical verdict
(infeasible, non-geometric, ...).  Nonzero means it could not answer: bad
input, I/O failure or an exhausted search cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import enumerator as en
from . import geometric as geo
from .arrays import ArrayParseError, basic_feasibility, format_array, parse_array
from .bounds import array_bounds, parameter_bounds
from .graphs import (
    GraphError,
    SearchCapExceeded,
    Witness,
    count_geometric_covers,
    generate,
    geometric_cover,
    is_distance_regular,
    read_graph,
    write_graph,
)
from .polynomials import Interval
from .spectra import PrecisionError, eigenvalues, sign_changes, standard_sequence

log = logging.getLogger("drgeom")

ENV_WORKERS = "DRGEOM_WORKERS"


class UsageError(Exception):
    pass


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Interval):
        return f"~{float(x.mid):.12f}"
    if hasattr(x, "is_integer") and not isinstance(x, (int, float)):
        return str(x.value) if x.is_integer else f"~{float(x.midpoint):.12f}"
    return str(x)


def _seq(xs) -> str:
    return "(" + ", ".join(_num(x) for x in xs) + ")"


# -- analyze -----------------------------------------------------------------


def analyze_report(text: str, m: int | None = None) -> str:
    ia = parse_array(text)
    out = [f"array: {format_array(ia)}", f"diameter: {ia.D}", f"valency: {ia.k}"]
    violations = basic_feasibility(ia)
    if violations:
        out.append("basic feasibility: violated")
        out += [f"  {v}" for v in violations]
        return "\n".join(out) + "\n"
    out.append("basic feasibility: ok")
    out.append(f"a: {_seq(ia.a)}")
    out.append(f"k_i: {_seq(ia.kseq)}")
    out.append(f"vertices: {ia.n}")
    if ia.is_complete:
        out.append("complete graph: nothing further to analyze")
        return "\n".join(out) + "\n"
    spec = eigenvalues(ia)
    th = spec.theta_min
    if m is None:
        m = _default_m(ia)
    out.append("spectrum:")
    for i, (e, mult) in enumerate(zip(spec.eigs, spec.mults)):
        sc = sign_changes(standard_sequence(ia, e))
        out.append(f"  theta_{i} = {_num(e)}  multiplicity {_num(mult)}  sign changes {sc}")
    traces = spec.trace_identities()
    out.append(f"integral multiplicities: {str(spec.integral_multiplicities()).lower()}")
    out.append("trace identities: " + ", ".join(f"{k}={str(v).lower()}" for k, v in traces.items()))
    out.append(f"smallest eigenvalue: {_num(th)}")
    out.append(f"delsarte clique size: {_num(geo.delsarte_clique_size(ia, spec))}")
    rec = en.evaluate_array(ia, m, set(en.ALL_FILTERS), explain=True)
    out.append(f"filters (m={m}):")
    out += [f"  {name}: {status}" for name, status in rec.filters]
    if rec.flags:
        out.append("flags: " + ", ".join(rec.flags))
    cls = rec.cls
    out.append(f"classification: {cls.kind}")
    if cls.reason:
        out.append(f"reason: {cls.reason}")
    sol = cls.solution
    if sol is not None:
        out.append(f"line size s+1: {sol.s + 1}  lines per vertex: {sol.m}")
        out.append(f"tau: {_seq(sol.tau)}")
        out.append(f"psi: {_seq(sol.psi)}")
        chk = geo.check_tau_psi(sol, ia)
        if chk.applicable:
            out.append(f"tau_2 >= psi_1: {str(chk.tau2_ge_psi1).lower()}")
        rep = geo.classify_equal_psi_tau(sol, ia)
        if rep.cases:
            out.append(f"equal psi_1 = tau_2 cases (applicable: {str(rep.applicable).lower()}):")
            for case in rep.cases:
                extra = ", ".join(f"{k}={v}" for k, v in case.items() if k != "case")
                out.append(f"  {case['case']}: {extra}")
    out.append("bounds:")
    for name, value in array_bounds(ia, m, spec, solution=sol).flat().items():
        out.append(f"  {name}: {value}")
    return "\n".join(out) + "\n"


def cmd_analyze(args) -> int:
    if args.json:
        ia = parse_array(args.array)
        rec = en.evaluate_array(ia, args.m or _default_m(ia), set(en.ALL_FILTERS), explain=True)
        print(rec.to_json())
    else:
        sys.stdout.write(analyze_report(args.array, args.m))
    return 0


def _default_m(ia) -> int:
    """Smallest ``m >= 2`` with ``theta_D >= -m``."""
    if basic_feasibility(ia) or ia.is_complete:
        return 2
    th = eigenvalues(ia).theta_min
    m = 2
    while th.compare(-m) < 0:
        m += 1
    return m


# -- graphs ------------------------------------------------------------------


def cmd_graph_check(args) -> int:
    G = read_graph(args.file)
    res = is_distance_regular(G)
    if isinstance(res, Witness):
        print(f"not distance-regular: {res}")
    else:
        print(format_array(res))
    return 0


def cmd_graph_geometric(args) -> int:
    G = read_graph(args.file)
    ia = is_distance_regular(G)
    if isinstance(ia, Witness):
        print(f"not distance-regular: {ia}")
        return 0
    if args.count:
        print(f"covers: {count_geometric_covers(G, ia, limit=args.limit)}")
        return 0
    res = geometric_cover(G, ia)
    if res:
        print(f"geometric: {len(res.cliques)} cliques of size {len(res.cliques[0])}")
        for cl in res.cliques:
            print(" ".join(map(str, cl)))
    else:
        print(f"non-geometric: {res}")
    return 0


def cmd_gen(args) -> int:
    G = generate(args.family, *args.params)
    write_graph(G, args.output if args.output else sys.stdout)
    return 0


# -- enumerate ---------------------------------------------------------------


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, t = (int(x) for x in text.split("/"))
    except ValueError:
        raise UsageError(f"--shard expects i/t, got {text!r}") from None
    return i, t


def cmd_enumerate(args) -> int:
    d_min = args.dmin if args.dmin is not None else args.D
    d_max = args.dmax if args.dmax is not None else args.D
    if d_min is None or d_max is None:
        raise UsageError("give --D or both --dmin and --dmax")
    filters = set(en.DEFAULT_FILTERS)
    if args.filters:
        filters = {f.strip() for f in args.filters.split(",") if f.strip()}
    spec = en.SearchSpec(
        m=args.m, d_min=d_min, d_max=d_max, k_max=args.kmax, c2_min=args.c2min,
        filters=frozenset(filters), shard=_parse_shard(args.shard), explain=args.explain,
    )
    workers = args.threads
    if workers is None and os.environ.get(ENV_WORKERS):
        workers = int(os.environ[ENV_WORKERS])
    if args.output is None:
        for line in en.run(spec, workers):
            print(line)
        return 0
    done: set[str] = set()
    if args.resume:
        lines, done = en.read_records(args.output)
        with open(args.output, "w") as fh:
            fh.writelines(ln + "\n" for ln in lines)
    mode = "a" if args.resume else "w"
    with open(args.output, mode) as fh:
        for line in en.run(spec, workers):
            if json.loads(line)["ia"] in done:
                continue
            fh.write(line + "\n")
            fh.flush()
    return 0


# -- bounds ------------------------------------------------------------------


def cmd_bounds(args) -> int:
    eps = Fraction(args.eps) if args.eps is not None else None
    rep = parameter_bounds(args.m, args.a1, c2=args.c2, c_D=args.cD, D=args.D, eps=eps, k=args.k)
    for name, value in rep.flat().items():
        print(f"{name}: {value}")
    return 0


# -- entry point -------------------------------------------------------------


def load_config(path: str) -> dict[str, str]:
    """``key=value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drgeom", description="Distance-regular graph geometry tools.")
    p.add_argument("--config", help="key=value file supplying option defaults")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="report on an intersection array")
    a.add_argument("array")
    a.add_argument("--m", type=int, help="search bound m (default: from the smallest eigenvalue)")
    a.add_argument("--json", action="store_true", help="emit one result record")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("graph-check", help="test a graph file for distance-regularity")
    g.add_argument("file")
    g.set_defaults(func=cmd_graph_check)

    g = sub.add_parser("graph-geometric", help="find a Delsarte clique cover or a certificate")
    g.add_argument("file")
    g.add_argument("--count", action="store_true", help="count covers instead")
    g.add_argument("--limit", type=int, help="stop counting after this many covers")
    g.set_defaults(func=cmd_graph_geometric)

    g = sub.add_parser("gen", help="write a named graph family member")
    g.add_argument("family")
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("enumerate", help="bounded search over intersection arrays")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--D", type=int, help="single diameter")
    e.add_argument("--dmin", type=int)
    e.add_argument("--dmax", type=int)
    e.add_argument("--kmax", type=int, required=True)
    e.add_argument("--c2min", type=int, default=1)
    e.add_argument("--filters", help="comma-separated filter labels: " + ",".join(en.ALL_FILTERS))
    e.add_argument("--shard", default="0/1", help="i/t")
    e.add_argument("--threads", type=int, help=f"worker processes (default ${ENV_WORKERS} or 1)")
    e.add_argument("--explain", action="store_true", help="also emit rejected arrays")
    e.add_argument("--resume", action="store_true", help="skip arrays already in the output file")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_enumerate)

    b = sub.add_parser("bounds", help="closed-form caps from parameters")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--a1", type=int, required=True)
    b.add_argument("--c2", type=int)
    b.add_argument("--cD", type=int)
    b.add_argument("--D", type=int)
    b.add_argument("--eps", help="rational, e.g. 1/2")
    b.add_argument("--k", type=int)
    b.set_defaults(func=cmd_bounds)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = load_config(known.config)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            defaults = {}
            for act in sp._actions:
                if act.dest in cfg:
                    value = cfg[act.dest]
                    if act.type is not None and value is not None:
                        value = act.type(value)
                    elif act.const is True:
                        value = value.lower() in ("1", "true", "yes")
                    defaults[act.dest] = value
                    act.required = False
            sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        return args.func(args)
    except (ArrayParseError, GraphError, UsageError, ValueError, OSError,
            SearchCapExceeded, PrecisionError) as exc:
        print(f"drgeom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
