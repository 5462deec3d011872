"""Command-line front end: ``hilbcomp <group> <command> [options]``.

Every command prints one JSON document (rationals as ``"p/q"`` strings) to
standard output or to ``--out``.  ``verify`` also prints a one-line summary
per check and exits nonzero iff a check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cb, hilbert, semigroup, stability, wap
from .structures import Structure, abstract_types, orbit_count
from .verify import CHECKS, ConfigError, RunConfig, run_verify


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=str)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable)


def _load_doc(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"cannot read {path}: {err}") from err


def _structure(args) -> Structure:
    """``--structure`` is a kind name or a config file; otherwise the config's ``structure`` entry."""
    struct_doc = getattr(args, "structure", None)
    if struct_doc is None:
        struct_doc = args.config_doc.get("structure", "pure_set")
    if isinstance(struct_doc, str):
        is_file = Path(struct_doc).suffix == ".json" or Path(struct_doc).is_file()
        struct_doc = _load_doc(struct_doc) if is_file else {"kind": struct_doc}
    try:
        return Structure.from_config(struct_doc)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def _check_mode(args) -> None:
    if (args.mode == "float") != (args.tolerance is not None):
        raise ConfigError("--tolerance is required with --mode float and not allowed in exact mode")


# --- commands -------------------------------------------------------------------------

def cmd_structure_orbits(args):
    S = _structure(args)
    types = list(abstract_types(S, args.arity)) if args.list else []
    return {"structure": str(S), "arity": args.arity, "orbits": orbit_count(S, args.arity),
            "types": [t.describe() for t in types]}


def _generators(args, S: Structure) -> list[semigroup.PartialIso]:
    if args.gens is None:
        return []
    text = Path(args.gens).read_text()
    return [semigroup.PartialIso.parse(S, line) for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("#")]


def cmd_semigroup_enumerate(args):
    S = _structure(args)
    gens = _generators(args, S)
    try:
        if gens:
            T = semigroup.generate(S, gens, cap=args.cap)
        else:
            T = semigroup.symmetric_inverse_monoid(args.points, S)
    except semigroup.CapExceeded as err:
        return {"structure": str(S), "status": "inconclusive", "error": str(err),
                "elements_before_cap": len(err.table) if err.table is not None else None}
    return {"structure": str(S), **semigroup.summary(T)}


def cmd_semigroup_check(args):
    out = cmd_semigroup_enumerate(args)
    if "regular" in out:
        out["status"] = "pass" if out["regular"] and out["idempotents_commute"] and out["unique_inverses"] else "fail"
    return out


def _wap_class(S: Structure, text: str) -> wap.WapClass:
    """``"0,1/0,2"``: images of the support ``0..k-1`` under ``x`` and ``y``."""
    try:
        xs, ys = text.split("/")
    except ValueError:
        raise ConfigError(f"expected X/Y, got {text!r}")
    x, y = _ints(xs), _ints(ys)
    if len(x) != len(y):
        raise ConfigError("x and y need the same number of images")
    return wap.WapClass.of(S, dict(enumerate(x)), dict(enumerate(y)))


def cmd_wap_product(args):
    S = _structure(args)
    p, q = _wap_class(S, args.p), _wap_class(S, args.q)
    r = wap.wap_product(p, q)
    return {"structure": str(S), "p": p.to_json(), "q": q.to_json(), "product": r.to_json(),
            "partial_map": wap.to_partial_map(r).to_json(),
            "idempotent": wap.is_idempotent_mt(r), "regular": wap.is_regular_mt(r)}


def cmd_wap_check(args):
    from .verify import check_idempotents_regular, check_partial_map_homomorphism
    S = _structure(args)
    cfg = RunConfig(structures=(S,), support_cap=args.support_size)
    out = {}
    for name, fn in (("idempotents_and_regular", check_idempotents_regular),
                     ("partial_map_homomorphism", check_partial_map_homomorphism)):
        status, evidence = fn(cfg)
        out[name] = {"status": status, "evidence": evidence[str(S)]}
    return {"structure": str(S), "support_size": args.support_size, **out}


def _group_element(S: Structure, text: str):
    return hilbert.GroupElement(S, dict(semigroup.PartialIso.parse(S, text).items())) if text else hilbert.Identity(S)


def cmd_hilb_coeff(args):
    S = _structure(args)
    f = hilbert.eq_rel_coefficient(S, args.relation, _ints(args.a), _ints(args.b))
    g = _group_element(S, args.g)
    return {"structure": str(S), "coefficient": f.label, "g": args.g, "value": f(g),
            "norm_bound2": f.norm_bound2()}


def cmd_hilb_decay(args):
    _check_mode(args)
    if args.table:
        doc = _load_doc(args.table)
        F = {(int(k),): Fraction(v) for k, v in doc.items()}
    else:
        F = {(k,): Fraction(1, k + 1) for k in range(args.n)}
    chunks = hilbert.pure_set_chunks(args.n)
    f = hilbert.vanishing_coefficient(chunks[0].structure, F, (0,))
    res = hilbert.decay_check(f, chunks, (0,), args.n, args.mode, args.tolerance or 0.0)
    return {"mode": args.mode, **res.to_json()}


def cmd_hilb_indisc(args):
    vectors = _load_doc(args.vectors)
    s = hilbert.IndiscernibleSample.from_vectors(vectors)
    d = hilbert.indiscernible_decompose(s)
    return {"r2": s.r2, "c": s.c, "n": len(s.vectors), "w_bar": d.w_bar, "norm2": d.norm2,
            "predicted_norm2": d.predicted_norm2, "residual_gram": d.residual_gram, "holds": d.holds}


def cmd_hilb_census(args):
    S = _structure(args)
    c = _ints(args.c)
    rep = hilbert.QuasiRegular(S, hilbert.Relation("equality", len(c)))
    sample = hilbert.elements_moving(S, c, args.window)
    census = hilbert.inner_value_census(rep, hilbert.Vec.basis(c), c, sample, args.window)
    return {"structure": str(S), "c": list(c), "window": args.window, **census.to_json()}


def cmd_cb_rank(args):
    if args.cloud:
        Z = cb.PointCloud.from_json(_load_doc(args.cloud))
    else:
        Z = cb.tower(args.tower)
    D = cb.distance_set(Z)
    return {"rank": cb.cb_rank(Z), "distances": len(D), "distance_set": sorted(D), "cloud": Z.to_json()}


def cmd_cb_ambit(args):
    S = _structure(args)
    c = _ints(args.c)
    rep = hilbert.QuasiRegular(S, hilbert.Relation("equality", len(c)))
    res = cb.ambit_rank_bound(S, rep, hilbert.Vec.basis(c), c, args.window)
    return {"structure": str(S), "c": list(c), **res.to_json()}


def cmd_stab_ladder(args):
    S = _structure(args)
    phi = stability.Formula(S, args.formula, args.arity)
    rep = stability.ladder_search(phi, args.n, args.window)
    return {"structure": str(S), "formula": str(phi), **rep.to_json()}


def cmd_stab_table(args):
    S = _structure(args)
    b = _ints(args.b)
    a = _ints(args.a) if args.a else b
    f = hilbert.eq_rel_coefficient(S, args.relation, a, b)
    out = {}
    for name, (rows, cols) in stability.crafted_arrays(S, b, args.length).items():
        try:
            out[name] = stability.double_limit_table(f, rows, cols).to_json()
        except stability.TailNotStabilized as err:
            out[name] = {"status": "inconclusive", "error": str(err)}
    return {"structure": str(S), "coefficient": f.label, "arrays": out}


def cmd_verify(args):
    overrides = {"mode": args.mode, "tolerance": args.tolerance, "seed": args.seed,
                 "semigroup_cap": args.cap, "jobs": args.jobs, "timings": args.timings or None,
                 "suites": _ints(args.suites) or None}
    doc = {k: v for k, v in args.config_doc.items() if k != "structure"}
    cfg = RunConfig.from_mapping(doc, **overrides)
    report = run_verify(cfg)
    for line in report.summary_lines():
        print(line, file=sys.stderr if args.out is None else sys.stdout)
    args.exit_code = 1 if report.failed else 0
    return report.to_json(cfg.timings)


# --- parser ---------------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--config", default=d(None), help="JSON config document")
    p.add_argument("--out", default=d(None), help="write the JSON report here")
    p.add_argument("--mode", choices=("exact", "float"), default=d("exact"))
    p.add_argument("--tolerance", type=float, default=d(None))
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbcomp", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    groups = parser.add_subparsers(dest="group", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    def leaf(group, name, fn, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    def with_structure(p):
        p.add_argument("--structure", help="pure_set, dlo, rado, or a structure config file")
        return p

    g = groups.add_parser("structure").add_subparsers(dest="cmd", required=True)
    p = with_structure(leaf(g, "orbits", cmd_structure_orbits))
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--list", action="store_true", help="also list the types")

    g = groups.add_parser("semigroup").add_subparsers(dest="cmd", required=True)
    for name, fn in (("enumerate", cmd_semigroup_enumerate), ("check", cmd_semigroup_check)):
        p = with_structure(leaf(g, name, fn))
        p.add_argument("--gens", help="file with one map per line, as a->b pairs")
        p.add_argument("--points", type=int, default=3, help="size of the symmetric inverse monoid without --gens")
        p.add_argument("--cap", type=int, default=100_000)

    g = groups.add_parser("wap").add_subparsers(dest="cmd", required=True)
    p = with_structure(leaf(g, "product", cmd_wap_product))
    p.add_argument("--p", required=True, help="class as X/Y, e.g. 0,1/0,2")
    p.add_argument("--q", required=True)
    p = with_structure(leaf(g, "check", cmd_wap_check))
    p.add_argument("--support-size", type=int, default=2)
    p.add_argument("--report", dest="out", default=argparse.SUPPRESS, help="alias for --out")

    g = groups.add_parser("hilb").add_subparsers(dest="cmd", required=True)
    p = with_structure(leaf(g, "coeff", cmd_hilb_coeff))
    p.add_argument("--relation", default="eq:1", help="eq:k, proj:k:i,j, set:k or total:k")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--g", default="", help="group element fragment as a->b pairs")
    p = leaf(g, "decay", cmd_hilb_decay)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--table", help="JSON {k: value} for F; default F(k) = 1/(k+1)")
    p = leaf(g, "indisc", cmd_hilb_indisc)
    p.add_argument("--vectors", required=True, help="JSON list of vectors")
    p = with_structure(leaf(g, "census", cmd_hilb_census))
    p.add_argument("--c", default="0")
    p.add_argument("--window", type=int, default=50)

    g = groups.add_parser("cb").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "rank", cmd_cb_rank)
    p.add_argument("--cloud", help="cloud JSON document")
    p.add_argument("--tower", type=int, default=2, help="tower depth when no cloud is given")
    p = with_structure(leaf(g, "ambit", cmd_cb_ambit))
    p.add_argument("--c", default="0")
    p.add_argument("--window", type=int, default=20)

    g = groups.add_parser("stab").add_subparsers(dest="cmd", required=True)
    p = with_structure(leaf(g, "ladder", cmd_stab_ladder))
    p.add_argument("--formula", choices=("equality", "order", "edge"), default="equality")
    p.add_argument("--arity", type=int, default=1)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--window", type=int)
    p = with_structure(leaf(g, "table", cmd_stab_table))
    p.add_argument("--relation", default="eq:1")
    p.add_argument("--b", default="0")
    p.add_argument("--a", default="")
    p.add_argument("--length", type=int, default=12)

    p = leaf(groups, "verify", cmd_verify)
    p.add_argument("--suites", default="", help=f"comma list out of {sorted(CHECKS)}")
    p.add_argument("--cap", type=int, help="semigroup enumeration cap")
    p.add_argument("--jobs", type=int, help="run checks in this many processes")
    p.add_argument("--timings", action="store_true", help="include runtimes (breaks byte-for-byte determinism)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.exit_code = 0
    try:
        args.config_doc = _load_doc(args.config)
        doc = args.fn(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
