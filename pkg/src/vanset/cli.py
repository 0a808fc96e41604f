"""Command-line front end: ``vanset {analyze,table,graph,verify,list}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import catalog, config
from .chartab import CharacterTable, character_table, p_defect_zero
from .errors import InputError, VansetError
from .frobenius import complement_classification, frobenius_decomposition, is_2_frobenius, is_nearly_2_frobenius
from .structure import STABILIZED, prime_factors, structure_report
from .vanishing import max_vanishing_classes_per_character, vanishing_prime_graph, vanishing_profile
from .verifier import run_corpus, subgroup_json, verify_group

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# report builders


def table_json(t: CharacterTable) -> dict:
    primes = prime_factors(t.group_order)
    return {
        "exponent": t.exponent,
        "dixon_prime": t.dixon_prime,
        "class_sizes": t.class_sizes,
        "class_orders": [c.element_order for c in t.classes],
        "rows": [{
            "degree": t.degrees[r],
            "values": [str(v) for v in t.values[r]],
            "zeros": t.zeros(r),
            "defect_zero_primes": [p for p in primes if p_defect_zero(t, r, p)],
        } for r in range(len(t))],
    }


def analyze_json(named: catalog.NamedGroup) -> dict:
    G = named.group
    table = character_table(G)
    prof = vanishing_profile(table)
    s = structure_report(G)
    frob = frobenius_decomposition(G)
    two, fl = is_2_frobenius(G)
    near, nw = is_nearly_2_frobenius(G)
    graph = vanishing_prime_graph(prof)
    frob_json = None
    if frob is not None:
        cls = complement_classification(frob.complement)
        frob_json = {
            "kernel": subgroup_json(frob.kernel),
            "complement": subgroup_json(frob.complement),
            "kernel_abelian": frob.kernel_abelian,
            "complement_order": frob.complement_order,
            "complement_type": None if cls is None else {"N": subgroup_json(cls[0]), "quotient": cls[1]},
        }
    return {
        "group": named.name,
        "order": G.order,
        "degree": G.degree,
        "tags": sorted(named.tags),
        "classes": [{"index": c.index, "representative": c.representative.cycle_string(),
                     "size": c.size, "element_order": c.element_order} for c in table.classes],
        "character_table": table_json(table),
        "vanishing": {
            "vanishing_class_indices": list(prof.vanishing_class_indices),
            "orders": list(prof.orders),
            "vo": sorted(prof.vo),
            "pairwise_gcd_max": prof.pairwise_gcd_max,
            "satisfies_star": prof.satisfies_star,
            "satisfies_star_star": prof.satisfies_star_star,
            "vo_pairwise_coprime": prof.vo_pairwise_coprime,
            "vacuous": prof.vacuous,
            "witnesses": {str(k): list(v) for k, v in sorted(prof.witnesses.items())},
            "max_zeros_per_character": max_vanishing_classes_per_character(table),
            "prime_graph": {"vertices": list(graph.vertices), "edges": [list(e) for e in graph.edges],
                            "components": [list(c) for c in graph.components]},
        },
        "structure": {
            "solvable": s.solvable,
            "derived_length": s.derived_length,
            "nilpotent": s.nilpotent,
            "supersolvable": s.supersolvable,
            "metabelian": s.metabelian,
            "fitting_subgroup": subgroup_json(s.fitting_subgroup),
            "fitting_height": s.fitting_height,
            "o2": subgroup_json(s.o2),
            "normal_2_complement": subgroup_json(s.normal_p_complement.get(2)),
            "normal_p_complement": {str(p): subgroup_json(N) for p, N in sorted(s.normal_p_complement.items())},
            "center_order": s.center_order,
            "chief_factors": s.chief_factors,
            "normal_subgroup_orders": s.normal_subgroup_orders,
        },
        "frobenius": frob_json,
        "two_frobenius": {"F": subgroup_json(fl[0]), "L": subgroup_json(fl[1])} if two else None,
        "nearly_two_frobenius": dict(zip(("F", "F1", "F2", "L"), map(subgroup_json, nw))) if near else None,
        "verdicts": [v.to_json() for v in verify_group(named)],
    }


def analyze_text(rep: dict) -> str:
    v, s = rep["vanishing"], rep["structure"]
    height = s["fitting_height"]
    lines = [
        f"group {rep['group']}  order {rep['order']}  classes {len(rep['classes'])}",
        f"vanishing classes {v['vanishing_class_indices']}  orders {v['orders']}  Vo {v['vo']}",
        f"pairwise gcd max {v['pairwise_gcd_max']}  (*) {v['satisfies_star']}  (**) {v['satisfies_star_star']}",
        f"solvable {s['solvable']}  supersolvable {s['supersolvable']}  nilpotent {s['nilpotent']}",
        f"fitting height {height if height != STABILIZED else 'n/a (stabilized below G)'}",
        f"normal 2-complement order {s['normal_2_complement']['order'] if s['normal_2_complement'] else '-'}",
        f"frobenius {'yes' if rep['frobenius'] else 'no'}",
    ]
    lines += [f"  {d['theorem']:<7}{d['status']}" for d in rep["verdicts"]]
    return "\n".join(lines) + "\n"


def table_text(name: str, t: CharacterTable) -> str:
    header = [["class"] + [str(c.index + 1) for c in t.classes],
              ["size"] + [str(c.size) for c in t.classes],
              ["order"] + [str(c.element_order) for c in t.classes]]
    rows = [[f"chi{r + 1}"] + [str(v) for v in t.values[r]] for r in range(len(t))]
    grid = header + rows
    widths = [max(len(row[k]) for row in grid) for k in range(len(grid[0]))]
    out = [f"{name}  order {t.group_order}  exponent {t.exponent}  prime {t.dixon_prime}"]
    out += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in grid]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    rep = analyze_json(catalog.resolve(args.target))
    _emit(args, analyze_text(rep) if args.format == "text" else _dumps(rep))
    return EXIT_OK


def cmd_table(args) -> int:
    named = catalog.resolve(args.target)
    t = character_table(named.group)
    if args.format == "json":
        _emit(args, _dumps({"group": named.name, "order": t.group_order, **table_json(t)}))
    else:
        _emit(args, table_text(named.name, t))
    return EXIT_OK


def cmd_graph(args) -> int:
    named = catalog.resolve(args.target)
    graph = vanishing_prime_graph(vanishing_profile(character_table(named.group)))
    if args.format == "json":
        _emit(args, _dumps({"group": named.name, "vertices": list(graph.vertices),
                            "edges": [list(e) for e in graph.edges],
                            "components": [list(c) for c in graph.components]}))
    else:
        _emit(args, graph.to_dot(named.name))
    return EXIT_OK


def _corpus(corpus_dir: str | None) -> list[catalog.NamedGroup]:
    groups = catalog.default_corpus()
    if corpus_dir:
        d = Path(corpus_dir)
        if not d.is_dir():
            raise InputError(f"{corpus_dir} is not a directory")
        groups += [catalog.load_group_file(p) for p in sorted(d.glob("*.grp"))]
    return groups


def cmd_verify(args) -> int:
    report = run_corpus(_corpus(args.corpus_dir))
    _emit(args, report.dumps())
    return report.exit_code


def cmd_list(args) -> int:
    _emit(args, _dumps([g.listing() for g in catalog.default_corpus()]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cap-elements", type=int, default=config.Config.cap_elements)
    common.add_argument("--cap-lattice", type=int, default=config.Config.cap_lattice)
    common.add_argument("--cap-search", type=int, default=config.Config.cap_search)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=config.DEFAULT_SEED)
    common.add_argument("--stretch", action="store_true", help="enable M11 and A8")
    common.add_argument("--format", choices=("json", "text", "dot"), default=None)
    common.add_argument("--out", metavar="PATH")

    parser = _Parser(prog="vanset", description="Vanishing-class analysis of finite permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, default_fmt, helptext in (
        ("analyze", cmd_analyze, "json", "full report for one group"),
        ("table", cmd_table, "text", "character table"),
        ("graph", cmd_graph, "dot", "vanishing prime graph"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("target", help="catalog name (S4, dihedral:5, affine:7,3) or .grp path")
        p.set_defaults(func=fn, default_format=default_fmt)
    p = sub.add_parser("verify", parents=[common], help="run the theorem harness on the corpus")
    p.add_argument("corpus_dir", nargs="?", help="directory of extra .grp files")
    p.set_defaults(func=cmd_verify, default_format="json")
    p = sub.add_parser("list", parents=[common], help="list the default corpus")
    p.set_defaults(func=cmd_list, default_format="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.format = args.format or args.default_format
        cfg = config.Config(cap_elements=args.cap_elements, cap_lattice=args.cap_lattice,
                            cap_search=args.cap_search, seed=args.seed, stretch=args.stretch)
        with config.use(cfg):
            return args.func(args)
    except VansetError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return {"input": EXIT_INPUT, "resource": EXIT_RESOURCE}.get(exc.kind, EXIT_INTERNAL)
    except ValueError as exc:  # e.g. non-positive caps in Config
        print(f"error[input]: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
