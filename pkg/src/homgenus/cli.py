"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical failure (uncancelled
pole, impossible structure, mismatch in a checked identity), 3 reproduction
failure.  Output formats: --plain (default), --json (schema-versioned
document), --csv.  HOMGENUS_THREADS sets the worker count for the
reproduction harness; the algebraic core itself is single-threaded.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .catalog import catalog_entry, catalog_list
from .exactalg import MultiPoly, PoleCancellationError, parse_rational
from .hirzebruch import (
    certify_odd_rigidity,
    chi_y_genus,
    point_index,
    rigidity_eval,
    signature,
    structure_independence,
    todd_genus,
)
from .rootdata import Ordering
from .structures import (
    HomogeneousSpace,
    InvariantStructure,
    SubgroupData,
    enumerate_structures,
    find_su_structures,
    fixed_points,
    parse_signs,
    space_from_json,
)
from .toricgenus import (
    chern_dold_genus,
    hp_obstruction_search,
    restricted_genus_hp,
    s_number,
    twisted_product,
)

SCHEMA = "homgenus/1"
EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_ACCEPT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; our contract reserves 2 for math failures
    def error(self, message):
        raise UsageError(message)


def thread_count():
    raw = os.environ.get("HOMGENUS_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise UsageError("HOMGENUS_THREADS must be an integer, got %r" % raw)
    if k < 1:
        raise UsageError("HOMGENUS_THREADS must be at least 1")
    return k


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, MultiPoly):
        return obj.to_text()
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


# --------------------------------------------------------------------------
# input resolution


def _resolve_space(ns):
    name = getattr(ns, "space", None)
    if not name:
        raise UsageError("--space is required for this command")
    if name.strip().startswith("{"):
        return None, space_from_json(json.loads(name))
    if os.path.exists(name) and name.endswith(".json"):
        with open(name) as fh:
            return None, space_from_json(json.load(fh))
    try:
        entry = catalog_entry(name)
    except KeyError:
        raise UsageError(
            "unknown space %r; catalog names are %s (or pass a JSON file/literal)"
            % (name, ", ".join(catalog_list()))
        )
    return entry, entry.space()


def _resolve_structure(ns, entry, space):
    text = getattr(ns, "structure", None) or "standard"
    if text in ("standard", "all-plus"):
        return InvariantStructure(space, (1,) * len(space.summands))
    if entry is not None and text in entry.stable_presets:
        return entry.stable_structure(text)
    if set(text) <= {"+", "-"}:
        return parse_signs(space, text)
    raise UsageError(
        "structure %r is neither 'standard', a +/- sign string, nor a known preset" % text
    )


def _parse_int_tuple(text, flag):
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise UsageError("%s expects a comma-separated integer list, got %r" % (flag, text))


def _resolve_ordering(ns, space):
    raw = getattr(ns, "ordering", None)
    if not raw:
        return None
    vec = _parse_int_tuple(raw, "--ordering")
    if len(vec) != space.group.dim:
        raise UsageError("--ordering needs %d components" % space.group.dim)
    return Ordering(tuple(Fraction(c) for c in vec))


def _resolve_series(ns, required=True):
    raw = getattr(ns, "series", None)
    if not raw:
        if required:
            raise UsageError("--series is required (e.g. \"u/(1+u^2)\")")
        return None
    try:
        return parse_rational(raw)
    except (ValueError, SyntaxError) as exc:
        raise UsageError("could not parse --series: %s" % exc)


# --------------------------------------------------------------------------
# handlers: each returns {"result": ..., "plain": str, "csv": rows}


def cmd_space_list(ns):
    rows = []
    for name in catalog_list():
        e = catalog_entry(name)
        rows.append(
            {
                "name": name,
                "group": e.group,
                "euler": e.expected.get("euler"),
                "dim": e.expected.get("dim"),
                "notes": e.notes,
            }
        )
    plain = "\n".join(
        "%-10s %-6s euler=%-4s dim=%-3s %s" % (r["name"], r["group"], r["euler"], r["dim"], r["notes"])
        for r in rows
    )
    return {
        "result": {"spaces": rows},
        "plain": plain,
        "csv": [["name", "group", "euler", "dim", "notes"]]
        + [[r["name"], r["group"], r["euler"], r["dim"], r["notes"]] for r in rows],
    }


def cmd_space_info(ns):
    entry, space = _resolve_space(ns)
    structures = enumerate_structures(space)
    su = find_su_structures(space)
    summands = [
        {
            "lines": [tuple(map(str, space.comp_roots[i])) for i in sm.line_indices],
            "self_conjugate": sm.self_conjugate,
        }
        for sm in space.summands
    ]
    doc = {
        "label": space.label,
        "group": space.group.label,
        "rank": space.group.rank,
        "complex_dimension": space.n,
        "euler_characteristic": space.euler_characteristic,
        "complementary_lines": [tuple(map(str, r)) for r in space.comp_roots],
        "summands": summands,
        "invariant_structures": len(structures),
        "su_structures": [s.to_signs() for s in su],
        "stable_presets": sorted(entry.stable_presets) if entry else [],
        "notes": entry.notes if entry else "",
    }
    plain_lines = [
        "%s  (group %s, euler %d, complex dim %d)"
        % (space.label, space.group.label, space.euler_characteristic, space.n),
        "complementary lines: " + "; ".join(str(tuple(map(str, r))) for r in space.comp_roots),
        "summands: %d (%s)" % (
            len(space.summands),
            ", ".join(
                "self-conjugate" if sm.self_conjugate else "%d lines" % len(sm.line_indices)
                for sm in space.summands
            ),
        ),
        "invariant structures: %d" % len(structures),
        "su structures: %s" % (", ".join(s.to_signs() for s in su) or "none"),
    ]
    if entry and entry.stable_presets:
        plain_lines.append("stable presets: " + ", ".join(sorted(entry.stable_presets)))
    if entry:
        plain_lines.append("notes: " + entry.notes)
    return {"result": doc, "plain": "\n".join(plain_lines), "csv": None}


def cmd_genus_class(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    cutoff = ns.cutoff if ns.cutoff is not None else space.n
    ge = chern_dold_genus(structure, cutoff=cutoff)
    doc = {"cutoff": cutoff, "lower_terms_vanish": ge.lower_terms_vanish()}
    if cutoff >= space.n:
        cls = ge.bordism_class()
        doc["class"] = cls.to_text()
        doc["class_terms"] = cls.to_json()
        plain = doc["class"]
    else:
        doc["form"] = ge.form.to_text()
        plain = doc["form"]
    return {"result": doc, "plain": plain, "csv": None}


def cmd_genus_s(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    if not ns.omega:
        raise UsageError("--omega is required, e.g. --omega 1,0,0,0,1,0")
    omega = _parse_int_tuple(ns.omega, "--omega")
    value = s_number(structure, omega)
    return {
        "result": {"omega": list(omega), "value": value},
        "plain": "s_%s = %d" % (ns.omega, value),
        "csv": [["omega", "value"], [ns.omega, value]],
    }


def cmd_genus_chi_y(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    ordering = _resolve_ordering(ns, space)
    chi = chi_y_genus(structure, ordering=ordering)
    ordering = ordering or space.ordering
    rows = []
    for fp in fixed_points(structure):
        rows.append(
            {
                "coset": fp.index,
                "word": list(fp.rep.word),
                "index": point_index(fp.weights, ordering),
                "sign": fp.sign,
            }
        )
    coeffs = [str(chi.coefficient_of("y", k).constant_value()) for k in range(space.n + 1)]
    doc = {"chi_y": chi.to_text() or "0", "coefficients": coeffs, "fixed_points": rows}
    plain = "chi_y = %s\ncoefficients: %s\n" % (doc["chi_y"], coeffs) + "\n".join(
        "coset %d (word %s): index %d, sign %+d" % (r["coset"], r["word"], r["index"], r["sign"])
        for r in rows
    )
    return {
        "result": doc,
        "plain": plain,
        "csv": [["coset", "word", "index", "sign"]]
        + [[r["coset"], " ".join(map(str, r["word"])), r["index"], r["sign"]] for r in rows],
    }


def cmd_genus_signature(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    v = signature(structure)
    return {"result": {"value": v}, "plain": "signature = %d" % v, "csv": [["signature"], [v]]}


def cmd_genus_todd(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    v = todd_genus(structure)
    return {"result": {"value": v}, "plain": "todd = %d" % v, "csv": [["todd"], [v]]}


def cmd_rigidity_eval(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    f = _resolve_series(ns)
    if not ns.at:
        raise UsageError("--at is required, e.g. --at 3,2,1,0")
    point = _parse_int_tuple(ns.at, "--at")
    if len(point) != space.group.dim:
        raise UsageError("--at needs %d components" % space.group.dim)
    value = rigidity_eval(structure, f, point)
    return {
        "result": {"point": list(point), "value": _jsonable(value)},
        "plain": "value at %s = %s" % (ns.at, value),
        "csv": [["point", "value"], [ns.at, str(value)]],
    }


def cmd_rigidity_certify(ns):
    entry, space = _resolve_space(ns)
    structure = _resolve_structure(ns, entry, space)
    f = _resolve_series(ns, required=False)
    out = certify_odd_rigidity(structure, f, seed=ns.seed or 0)
    plain = ["verdict: %s" % out["verdict"]]
    if out["certificate"]:
        plain.append("pairing element (word): %s" % (list(out["certificate"]["element"]),))
        for p in out["certificate"]["pairs"]:
            plain.append("  cosets %s flip %d weights" % (p["pair"], p["flips"]))
    for pt, val in out["samples"]:
        plain.append("sample %s -> %s" % (pt, val))
    return {"result": _jsonable(out), "plain": "\n".join(plain), "csv": None}


def cmd_rigidity_independence(ns):
    entry, space = _resolve_space(ns)
    f = _resolve_series(ns)
    structures = []
    names = []
    if entry is not None and entry.stable_presets:
        for name in sorted(entry.stable_presets):
            structures.append(entry.stable_structure(name))
            names.append(name)
    else:
        for s in enumerate_structures(space)[:8]:
            structures.append(s)
            names.append(s.to_signs())
    out = structure_independence(structures, f, samples=ns.samples, seed=ns.seed or 0)
    doc = {
        "structures": names,
        "points": [[str(c) for c in p] for p in out["points"]],
        "values": [[str(v) for v in row] for row in out["values"]],
        "independent": out["independent"],
    }
    plain = ["structures: " + ", ".join(names)]
    for p, row in zip(out["points"], out["values"]):
        plain.append("at %s: %s" % (tuple(str(c) for c in p), [str(v) for v in row]))
    plain.append("independent: %s" % out["independent"])
    return {
        "result": doc,
        "plain": "\n".join(plain),
        "csv": [["point"] + names] + [[str(p)] + [str(v) for v in row] for p, row in zip(out["points"], out["values"])],
    }


def cmd_su_find(ns):
    entry, space = _resolve_space(ns)
    found = find_su_structures(space)
    signs = [s.to_signs() for s in found]
    return {
        "result": {"su_structures": signs},
        "plain": ("su structures: " + ", ".join(signs)) if signs else "su structures: none",
        "csv": [["signs"]] + [[s] for s in signs],
    }


def cmd_fibration_check(ns):
    entry, base_space = _resolve_space(ns)
    base = _resolve_structure(ns, entry, base_space)
    h_group = base_space.subgroup.as_group()
    if ns.fiber_roots:
        roots = [tuple(Fraction(c) for c in r) for r in json.loads(ns.fiber_roots)]
    else:
        roots = []
    fiber_space = HomogeneousSpace(
        h_group, SubgroupData(h_group, roots, label="K"), label="%s/K" % h_group.label
    )
    fsigns = ns.fiber or "standard"
    if fsigns in ("standard", "all-plus"):
        fiber = InvariantStructure(fiber_space, (1,) * len(fiber_space.summands))
    elif set(fsigns) <= {"+", "-"}:
        fiber = parse_signs(fiber_space, fsigns)
    else:
        raise UsageError("--fiber must be 'standard' or a +/- sign string")
    cutoff = ns.cutoff
    tw = twisted_product(base, fiber, cutoff=cutoff)
    direct = chern_dold_genus(tw.structure, cutoff=tw.cutoff)
    match = tw.form == direct.form
    doc = {
        "total_space": tw.structure.space.label,
        "total_signs": tw.structure.to_signs(),
        "cutoff": tw.cutoff,
        "match": match,
    }
    if tw.cutoff >= tw.structure.space.n:
        doc["class"] = tw.bordism_class().to_text()
    plain = "twisted product == direct expansion: %s (cutoff %d)" % (match, tw.cutoff)
    if "class" in doc:
        plain += "\nclass = %s" % doc["class"]
    return {"result": doc, "plain": plain, "csv": None, "math_ok": match}


def cmd_hp_restricted(ns):
    out = restricted_genus_hp(2, ns.which, max_index=ns.max_index)
    doc = _jsonable(
        {k: v for k, v in out.items() if k not in ("component",)}
    )
    rows = [["k1", "k2", "coefficient"]]
    plain = ["kind: %s" % out["which"]]
    if "g0_table" in out:
        for (i1, i2), c in sorted(out["g0_table"].items()):
            rows.append([i1, i2, c.to_text()])
            plain.append("g0[%d,%d] = %s" % (i1, i2, c.to_text()))
    else:
        for k, c in sorted(out["coefficients"].items()):
            rows.append([k, "", c.to_text()])
            plain.append("coefficient of x2^%d = %s" % (2 * k, c.to_text()))
        plain.append("note: %s" % out["note"])
    return {"result": doc, "plain": "\n".join(plain), "csv": rows}


def cmd_hp_obstruction(ns):
    out = hp_obstruction_search(2)
    plain = ["space: %s" % out["space"], "verdict: %s" % out["verdict"]]
    for r in out["rows"]:
        a = r["assignment"]
        plain.append(
            "  %s: first nonvanishing t-order %s (witness %s)"
            % (
                " ".join("%s=%+d" % (k, a[k]) for k in sorted(a)),
                r["first_nonvanishing_order"],
                r["witness"],
            )
        )
    plain.append("t^1 survivors obey: " + "; ".join(out["t1_relations"]))
    rows = [["eps2", "eps3", "delta2", "delta3", "first_bad_order", "witness"]]
    for r in out["rows"]:
        a = r["assignment"]
        rows.append(
            [a["eps2"], a["eps3"], a["delta2"], a["delta3"], r["first_nonvanishing_order"], str(r["witness"])]
        )
    return {"result": _jsonable(out), "plain": "\n".join(plain), "csv": rows}


def cmd_reproduce(ns):
    from .verification import run_checks

    groups = set(ns.section) if ns.section else None
    ids = set(ns.id) if ns.id else None
    rows = run_checks(groups=groups, ids=ids, workers=thread_count())
    plain = []
    for r in rows:
        mark = "PASS" if r["passed"] else "FAIL"
        plain.append("[%s] %2d (group %d) %s" % (mark, r["id"], r["group"], r["name"]))
        plain.append("       expected: %s" % r["expected"])
        plain.append("       computed: %s" % r["computed"])
    ok = all(r["passed"] for r in rows) and bool(rows)
    plain.append("%d/%d checks passed" % (sum(r["passed"] for r in rows), len(rows)))
    return {
        "result": {"rows": rows, "all_passed": ok},
        "plain": "\n".join(plain),
        "csv": [["id", "group", "name", "expected", "computed", "passed"]]
        + [[r["id"], r["group"], r["name"], r["expected"], r["computed"], r["passed"]] for r in rows],
        "accept_ok": ok,
    }


# --------------------------------------------------------------------------
# parser assembly


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help="catalog name, JSON literal, or .json file")
    common.add_argument("--structure", help="'standard', a +/- sign string, or a stable preset name")
    common.add_argument("--omega", help="comma-separated multi-index for s-numbers")
    common.add_argument("--series", help="rational genus kernel, e.g. \"u/(1+u^2)\"")
    common.add_argument("--ordering", help="comma-separated generic ordering vector")
    common.add_argument("--cutoff", type=int, help="t-degree cutoff for expansions")
    common.add_argument("--seed", type=int, help="seed for sampled evaluations")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--csv", action="store_true", help="tabular output")
    fmt.add_argument("--plain", action="store_true", help="human-readable output (default)")

    p = Parser(prog="homgenus", description="exact cobordism invariants of homogeneous spaces")
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("space", parents=[], help="catalog access")
    spsub = sp.add_subparsers(dest="subcommand")
    spsub.add_parser("list", parents=[common]).set_defaults(func=cmd_space_list)
    spsub.add_parser("info", parents=[common]).set_defaults(func=cmd_space_info)

    ge = sub.add_parser("genus", help="toric genus computations")
    gesub = ge.add_subparsers(dest="subcommand")
    gesub.add_parser("class", parents=[common]).set_defaults(func=cmd_genus_class)
    gesub.add_parser("s", parents=[common]).set_defaults(func=cmd_genus_s)
    gesub.add_parser("chi-y", parents=[common]).set_defaults(func=cmd_genus_chi_y)
    gesub.add_parser("signature", parents=[common]).set_defaults(func=cmd_genus_signature)
    gesub.add_parser("todd", parents=[common]).set_defaults(func=cmd_genus_todd)

    ri = sub.add_parser("rigidity", help="rigidity functionals")
    risub = ri.add_subparsers(dest="subcommand")
    ev = risub.add_parser("eval", parents=[common])
    ev.add_argument("--at", help="comma-separated rational sample point")
    ev.set_defaults(func=cmd_rigidity_eval)
    risub.add_parser("certify", parents=[common]).set_defaults(func=cmd_rigidity_certify)
    ind = risub.add_parser("independence", parents=[common])
    ind.add_argument("--samples", type=int, default=5)
    ind.set_defaults(func=cmd_rigidity_independence)

    su = sub.add_parser("su", help="special-unitary structure inventory")
    susub = su.add_subparsers(dest="subcommand")
    susub.add_parser("find", parents=[common]).set_defaults(func=cmd_su_find)

    fi = sub.add_parser("fibration", help="twisted products of fibrations")
    fisub = fi.add_subparsers(dest="subcommand")
    fc = fisub.add_parser("check", parents=[common])
    fc.add_argument("--fiber", help="fiber structure signs ('standard' or +/- string)")
    fc.add_argument("--fiber-roots", dest="fiber_roots", help="JSON list of isotropy roots of the fiber")
    fc.set_defaults(func=cmd_fibration_check)

    hp = sub.add_parser("hp", help="quaternionic base expansions and the obstruction")
    hpsub = hp.add_subparsers(dest="subcommand")
    hr = hpsub.add_parser("restricted", parents=[common])
    hr.add_argument("--which", choices=("sp-flag", "cp-odd"), default="sp-flag")
    hr.add_argument("--max-index", dest="max_index", type=int, default=3)
    hr.set_defaults(func=cmd_hp_restricted)
    hpsub.add_parser("obstruction", parents=[common]).set_defaults(func=cmd_hp_obstruction)

    rep = sub.add_parser("reproduce", parents=[common], help="run the reproduction table")
    rep.add_argument("--section", type=int, action="append", help="restrict to a topic group")
    rep.add_argument("--id", type=int, action="append", help="restrict to specific check ids")
    rep.set_defaults(func=cmd_reproduce)

    return p


def _emit(ns, command_name, out, started):
    if getattr(ns, "json", False):
        doc = {
            "schema": SCHEMA,
            "command": command_name,
            "result": _jsonable(out["result"]),
            "timing_ms": int((time.perf_counter() - started) * 1000),
            "threads": thread_count(),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif getattr(ns, "csv", False):
        rows = out.get("csv")
        if rows is None:
            raise UsageError("this command has no tabular form; use --json or --plain")
        buf = io.StringIO()
        w = csv.writer(buf)
        for row in rows:
            w.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        print(out["plain"])


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    started = time.perf_counter()
    try:
        ns = parser.parse_args(argv)
        if not getattr(ns, "func", None):
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        thread_count()  # validate the env var up front
        out = ns.func(ns)
        name = ns.command + (" " + ns.subcommand if getattr(ns, "subcommand", None) else "")
        _emit(ns, name, out, started)
        if not out.get("math_ok", True):
            return EXIT_MATH
        if not out.get("accept_ok", True):
            return EXIT_ACCEPT
        return EXIT_OK
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (PoleCancellationError, ArithmeticError, ValueError, KeyError) as exc:
        print("mathematical failure: %s" % exc, file=sys.stderr)
        return EXIT_MATH
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - unexpected
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_MATH


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
