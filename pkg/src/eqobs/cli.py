"""Command-line front end.

Exit status: 0 on success, 1 when an identity check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cache
from .burnside import BurnsideElement, parse_element, permutation_character, reduce_count
from .errors import EqobsError
from .fuzz import fuzz
from .globalcalc import (chi_G, global_obstruction, induced_index_sum, orbit_level_obstruction,
                         poincare_hopf_check, synthesize_form_data)
from .groups import DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_SUBGROUP_ORDER, generate_group, table_of_marks
from .io import dump_germ, load_germ, load_variety, read_json
from .local import eq_euler_obstruction, eq_radial_index, germ_obstruction, verify_theorem
from .poset import m_tilde, mobius, n_from_eu, validate_germ, zeta

COMMANDS = ("group-info", "burnside-eval", "germ-eval", "germ-verify", "tables",
            "global-eval", "global-verify", "fuzz")


class UsageError(EqobsError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-group-order", type=_positive, default=DEFAULT_MAX_GROUP_ORDER)
    common.add_argument("--max-subgroup-order", type=_positive, default=DEFAULT_MAX_SUBGROUP_ORDER)
    common.add_argument("--cache-dir", default=None, help=f"class-table cache (env {cache.ENV_VAR})")

    parser = _Parser(prog="eqobs", description="Burnside-ring valued Euler obstructions and indices.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("group-info", parents=[common], help="subgroup classes and table of marks")
    p.add_argument("--group", required=True)
    p = sub.add_parser("burnside-eval", parents=[common], help="evaluate a Burnside-ring expression")
    p.add_argument("--group", required=True)
    p.add_argument("--expr", required=True)
    for name, helptext in (("germ-eval", "invariants of a germ file"),
                           ("germ-verify", "check the obstruction/radial-index identity on a germ file"),
                           ("tables", "zeta, Moebius, m~ and n tables of a germ file"),
                           ("global-eval", "global invariants of a variety file"),
                           ("global-verify", "check Poincare-Hopf and the orbit-level formula on a variety file")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("path")
        if name == "global-verify":
            p.add_argument("--seed", type=int, default=1, help="seed for synthesized form data")
    p = sub.add_parser("fuzz", parents=[common], help="random identity checks")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--replay-dir", default=None, help="write failing inputs here")
    return parser


# -- helpers -------------------------------------------------------------------

def _prepare_group(G, desc, args):
    cache.load_or_compute(G, desc, cache.cache_dir(args.cache_dir), args.max_subgroup_order)


def _table_doc(f) -> dict:
    return {"ids": list(f.poset.ids), "matrix": f.matrix()}


def _tables(germ) -> dict:
    return {"zeta": _table_doc(zeta(germ)), "mobius": _table_doc(mobius(germ)),
            "m_tilde": _table_doc(m_tilde(germ)), "n": _table_doc(n_from_eu(germ))}


def _format_table(name, f) -> list[str]:
    ids = [str(i) for i in f.poset.ids]
    w = max([len(x) for x in ids] + [4])
    lines = [f"{name}:", " " * (w + 1) + " ".join(x.rjust(w) for x in ids)]
    for i, row in zip(ids, f.matrix()):
        lines.append(i.rjust(w) + " " + " ".join(str(v).rjust(w) for v in row))
    return lines


def _element(x: BurnsideElement) -> dict:
    return {"element": str(x), "count": reduce_count(x)}


def _load_germ(args):
    doc = read_json(args.path)
    desc = doc.get("group") if isinstance(doc, dict) else None
    if isinstance(desc, str):
        _prepare_group(generate_group(desc, args.max_group_order), desc, args)
    germ, form = load_germ(doc, args.max_group_order)
    for w in validate_germ(germ).warnings + (form.validate().warnings if form else []):
        print(f"warning: {args.path}: {w}", file=args.stderr)
    return germ, form


def _load_variety(args):
    doc = read_json(args.path)
    desc = doc.get("group") if isinstance(doc, dict) else None
    if isinstance(desc, str):
        _prepare_group(generate_group(desc, args.max_group_order), desc, args)
    variety, form = load_variety(doc, args.max_group_order)
    for w in variety.validate().warnings:
        print(f"warning: {args.path}: {w}", file=args.stderr)
    return variety, form


def _point_strata(germ):
    return [s.id for s in germ.strata
            if s.dim == 0 and s.isotropy.order == germ.group.order
            and not any(germ.poset.lt(i, s.id) for i in germ.ids)]


# -- commands ----------------------------------------------------------------------

def cmd_group_info(args):
    G = generate_group(args.group, args.max_group_order)
    _prepare_group(G, args.group, args)
    table = G.classes
    marks = table_of_marks(G)
    classes = [{"name": n, "order": H.order, "conjugates": size, "generators": [list(p) for p in H.generators()]}
               for n, H, size in zip(table.names, table.classes, table.class_sizes)]
    doc = {"order": G.order, "degree": G.degree, "classes": classes, "marks": marks}
    lines = [f"order {G.order}, degree {G.degree}, {len(table)} subgroup classes"]
    for c in classes:
        lines.append(f"  {c['name']}: order {c['order']}, {c['conjugates']} conjugate(s), generators {c['generators']}")
    lines.append("table of marks (rows G/H, columns fixing subgroup):")
    for n, row in zip(table.names, marks):
        lines.append(f"  {n:>8} " + " ".join(f"{v:>3}" for v in row))
    return 0, doc, lines


def cmd_burnside_eval(args):
    G = generate_group(args.group, args.max_group_order)
    _prepare_group(G, args.group, args)
    x = parse_element(args.expr, G)
    doc = {**_element(x), "coeffs": x.terms(), "character": list(permutation_character(x).values)}
    return 0, doc, [str(x)]


def cmd_germ_eval(args):
    germ, form = _load_germ(args)
    doc = {"tables": _tables(germ)}
    lines = []
    for x in _point_strata(germ):
        e = germ_obstruction(germ, x)
        doc.setdefault("germ_obstruction", {})[str(x)] = _element(e)
        lines.append(f"germ obstruction at {x}: {e}  (count {reduce_count(e)})")
    if form is not None:
        per = {}
        for k in germ.ids:
            eu, rad = eq_euler_obstruction(form, k), eq_radial_index(form, k)
            per[str(k)] = {"euler_obstruction": _element(eu), "radial_index": _element(rad)}
            lines.append(f"closure of {k}: Eu = {eu}  (count {reduce_count(eu)}); "
                         f"ind_rad = {rad}  (count {reduce_count(rad)})")
        top = eq_euler_obstruction(form)
        doc["flavor"] = form.flavor
        doc["euler_obstruction"] = _element(top)
        doc["radial_index"] = _element(eq_radial_index(form))
        doc["per_stratum"] = per
        lines.insert(0, f"euler obstruction: {top}")
    return 0, doc, lines


def cmd_germ_verify(args):
    germ, form = _load_germ(args)
    if form is None:
        raise UsageError(f"{args.path}: germ-verify needs form_data")
    rep = verify_theorem(form)
    per = {str(k): {"lhs": str(l), "rhs": str(r), "equal": ok} for k, (l, r, ok) in rep.per_stratum.items()}
    doc = {"lhs": str(rep.lhs), "rhs": str(rep.rhs), "equal": rep.all_equal, "per_stratum": per,
           "tables": _tables(germ)}
    lines = [f"lhs: {rep.lhs}", f"rhs: {rep.rhs}"]
    for k, (l, r, ok) in rep.per_stratum.items():
        if not ok:
            lines.append(f"MISMATCH on closure of {k}: {l} != {r}")
    lines.append(f"{'verified' if rep.all_equal else 'FAILED'} on {len(per)} stratum closure(s)")
    return (0 if rep.all_equal else 1), doc, lines


def cmd_tables(args):
    germ, _ = _load_germ(args)
    lines = []
    for name, f in (("zeta", zeta(germ)), ("mobius", mobius(germ)), ("m_tilde", m_tilde(germ)),
                    ("n", n_from_eu(germ))):
        lines += _format_table(name, f)
    return 0, {"tables": _tables(germ)}, lines


def cmd_global_eval(args):
    variety, form = _load_variety(args)
    chi, glob = chi_G(variety), global_obstruction(variety)
    doc = {"kind": variety.kind, "chi_G": _element(chi), "global_obstruction": _element(glob)}
    lines = [f"chi_G: {chi}  (count {reduce_count(chi)})",
             f"global euler obstruction: {glob}  (count {reduce_count(glob)})"]
    if form is not None:
        orb = orbit_level_obstruction(variety, form)
        ind = induced_index_sum(variety, form)
        doc["orbit_level_obstruction"] = _element(orb)
        doc["induced_index_sum"] = _element(ind)
        lines += [f"orbit-level obstruction: {orb}", f"induced index sum: {ind}"]
    return 0, doc, lines


def cmd_global_verify(args):
    variety, form = _load_variety(args)
    synthesized = form is None
    if synthesized:
        form = synthesize_form_data(variety, args.seed)
    ph = poincare_hopf_check(variety, form)
    glob, orb = global_obstruction(variety), orbit_level_obstruction(variety, form)
    ok = ph.equal and glob == orb
    doc = {"poincare_hopf": {"lhs": str(ph.lhs), "rhs": str(ph.rhs), "equal": ph.equal,
                             "diagnostics": ph.diagnostics},
           "global_obstruction": {"stratum_formula": str(glob), "orbit_level": str(orb), "equal": glob == orb},
           "synthesized_form_data": synthesized, "equal": ok}
    if synthesized:
        doc["form_data"] = dump_germ(variety, form)["form_data"]
    lines = [f"poincare-hopf: {ph.lhs} = {ph.rhs}" if ph.equal else f"poincare-hopf MISMATCH: {ph.lhs} != {ph.rhs}",
             *(f"  {d}" for d in ph.diagnostics),
             f"global obstruction: {glob} = {orb}" if glob == orb
             else f"global obstruction MISMATCH: {glob} != {orb}",
             "verified" if ok else "FAILED"]
    return (0 if ok else 1), doc, lines


def cmd_fuzz(args):
    rep = fuzz(max(args.count, 0), seed=args.seed, jobs=args.jobs)
    bad = rep.failures
    if args.replay_dir and bad:
        out = Path(args.replay_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in bad:
            (out / f"seed{args.seed}_case{r.index}_{r.kind}.json").write_text(json.dumps(r.document, indent=1))
    doc = {"seed": args.seed, "cases": len(rep.results), "failures": len(bad),
           "counterexamples": [{"index": r.index, "kind": r.kind, "failures": r.failures, "input": r.document}
                               for r in bad]}
    lines = [rep.summary()]
    for r in bad:
        lines.append(f"case {r.index} ({r.kind}): " + "; ".join(r.failures))
        lines.append("  input: " + json.dumps(r.document, separators=(",", ":")))
    return (0 if not bad else 1), doc, lines


HANDLERS = {
    "group-info": cmd_group_info, "burnside-eval": cmd_burnside_eval, "germ-eval": cmd_germ_eval,
    "germ-verify": cmd_germ_verify, "tables": cmd_tables, "global-eval": cmd_global_eval,
    "global-verify": cmd_global_verify, "fuzz": cmd_fuzz,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.stderr = stderr
        if args.command is None:
            raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
        status, doc, lines = HANDLERS[args.command](args)
    except EqobsError as exc:
        where = getattr(locals().get("args"), "path", None)
        prefix = f"{where}: " if where and not str(exc).startswith(str(where)) else ""
        print(f"error: {prefix}{exc}", file=stderr)
        return 2
    if args.format == "json":
        print(json.dumps({"command": args.command, "status": status, **doc}, indent=2), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return status


def main() -> None:
    sys.exit(run())
