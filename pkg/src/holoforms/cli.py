"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage, parse
or lookup errors.  ``--json`` switches every command to machine-readable
output; the default is aligned text tables.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import liealg
from .clifford import SpinorError, format_spinor, model_from_name
from .exterior import FrameMismatch, format_form
from .expressions import ParseError, parse_spinor_list
from .isotropy import analyse, bilinear_space, compact_factor_name, isotropy_algebra
from .nullcone import NullityError
from .scalar import ScalarError
from .structures import (
    StructureError,
    closure_generators,
    fundamental_forms,
    get_catalog,
    majorana_projection,
    resolve,
    spinor_representatives,
    thlms_report,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

USER_ERRORS = (StructureError, ParseError, SpinorError, ScalarError, FrameMismatch, NullityError, liealg.ClosureError)


class UsageError(Exception):
    pass


def _emit(out, text: str = ""):
    out.write(text + "\n")


def _dump(out, data):
    _emit(out, json.dumps(data, indent=2, sort_keys=False, default=str))


def _table(out, header: Sequence[str], rows: List[Sequence[str]]):
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(str(c))) for w, c in zip(widths, r)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    _emit(out, fmt.format(*header).rstrip())
    for r in rows:
        _emit(out, fmt.format(*map(str, r)).rstrip())


def _spinor_set(args):
    """Majorana-projected spinors from --group or --model/--spinors."""
    if getattr(args, "group", None):
        return spinor_representatives(args.group, args.n)
    if not args.spinors:
        raise UsageError("give --group or --spinors")
    model = model_from_name(args.model)
    return majorana_projection(parse_spinor_list(args.spinors, model))


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args, out) -> int:
    cat = get_catalog()
    if args.json:
        _dump(out, {"version": cat.version, "source": cat.source, "conventions": cat.conventions,
                    "structures": [s.as_dict() for s in cat]})
        return EXIT_OK
    rows = []
    for s in cat:
        if s.is_family:
            params = f"n={s.family['min']}..{s.family['max']}"
            content = ", ".join(g["name"] for g in s.generators)
        else:
            params = f"L={s.L}" if s.L is not None else ""
            content = s.spinors if s.spinors is not None else ", ".join(g["name"] for g in s.generators)
        alg = s.expected.get("algebra", "")
        if isinstance(alg, dict):
            alg = "/".join(f"{v} ({k} n)" for k, v in alg.items())
        rows.append((s.name, s.kind, s.model, params, s.group, content, alg))
    _table(out, ("name", "kind", "model", "params", "group", "representatives", "algebra"), rows)
    _emit(out)
    for k, v in cat.conventions.items():
        _emit(out, f"{k}: {v}")
    return EXIT_OK


def cmd_spinors(args, out) -> int:
    spinors = _spinor_set(args)
    if args.json:
        _dump(out, {"L": len(spinors), "spinors": [format_spinor(s) for s in spinors]})
        return EXIT_OK
    _emit(out, f"L = {len(spinors)}")
    for i, s in enumerate(spinors, 1):
        _emit(out, f"  eps{i} = {format_spinor(s)}")
    return EXIT_OK


def _isotropy_line(rep, model) -> str:
    compact = rep.dim - rep.ideal_dim
    name = compact_factor_name(rep.name)
    label = f" ({name.lower()})" if compact and rep.name != "unrecognized" else ""
    if rep.ideal_dim:
        return f"dim {rep.dim} = {compact}{label} + {rep.ideal_dim} (abelian ideal)"
    return f"dim {rep.dim}{label}"


def cmd_isotropy(args, out) -> int:
    spinors = _spinor_set(args)
    model = spinors[0].model
    h = isotropy_algebra(spinors)
    rep = analyse(h, model, seed=args.seed)
    if args.json:
        _dump(out, rep.as_dict())
        return EXIT_OK
    _emit(out, _isotropy_line(rep, model))
    _emit(out, f"group: {rep.name}")
    _emit(out, f"killing signature (+, -, 0): {tuple(rep.killing_signature)}")
    _emit(out, f"radical dim {rep.radical_dim}, levi dim {rep.levi_dim}, generic centralizer dim {rep.centralizer_dim}")
    if rep.ideal_dim:
        _emit(out, "ideal checks: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in rep.ideal_checks.items()))
    return EXIT_OK


def cmd_bilinears(args, out) -> int:
    spinors = _spinor_set(args)
    try:
        ks = [int(x) for x in args.k.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--k expects comma-separated integers, got {args.k!r}") from None
    dim = spinors[0].model.dim
    if any(not 0 <= k <= dim for k in ks):
        raise UsageError(f"--k values must lie in 0..{dim}")
    result = []
    for k in ks:
        d, basis = bilinear_space(spinors, k)
        result.append({"k": k, "dim": d, "basis": [format_form(f) for f in basis]})
    if args.json:
        _dump(out, {"L": len(spinors), "bilinears": result})
        return EXIT_OK
    for r in result:
        _emit(out, f"k={r['k']}: dim {r['dim']}")
        if args.basis:
            for f in r["basis"]:
                _emit(out, f"  {f}")
    return EXIT_OK


def cmd_forms(args, out) -> int:
    spec = resolve(args.group, args.n)
    forms = fundamental_forms(spec)
    if args.json:
        _dump(out, {"structure": spec.label, "forms": [{"name": n, "degree": f.degree, "form": format_form(f)} for n, f in forms]})
        return EXIT_OK
    _emit(out, f"{spec.label}: {len(forms)} fundamental forms")
    _table(out, ("name", "degree", "form"), [(n, f.degree, format_form(f)) for n, f in forms])
    return EXIT_OK


def _presentation_rows(p):
    labels = p.labels()
    rows = []
    for e in p.to_json()["brackets"]:
        res = " + ".join(f"({t['coef']}) {t['gen']}" for t in e["result"])
        rows.append((e["left"], e["right"], res))
    return labels, rows


def cmd_closure(args, out) -> int:
    spec = resolve(args.group, args.n)
    gens = closure_generators(spec)
    convention = {k: v for k, v in get_catalog().conventions.items() if k in ("contraction_sign", "reality_sign")}
    p = liealg.close(gens, bracket=args.bracket, bound=args.bound, convention=convention)
    jac = liealg.jacobi_check(p)
    name = liealg.identify(p) if jac["pass"] else "unrecognized"
    fp = liealg.fingerprint(p)
    if args.json:
        data = p.to_json()
        data["structure"] = spec.label
        data["identified"] = name
        data["jacobi"] = jac["pass"]
        data["fingerprint"] = fp.as_dict()
        _dump(out, data)
        return EXIT_OK if jac["pass"] else EXIT_FAIL
    _emit(out, f"{spec.label}: closure under {args.bracket}, dim {p.dim}")
    _table(out, ("generator", "degree", "parity"), [(g.label, g.degree, g.parity) for g in p.generators])
    _emit(out)
    _, rows = _presentation_rows(p)
    if rows:
        _table(out, ("left", "right", "bracket"), rows)
    else:
        _emit(out, "all brackets vanish")
    _emit(out)
    _emit(out, f"jacobi: {'pass' if jac['pass'] else 'FAIL'} ({jac['triples']} triples)")
    _emit(out, f"identified: {name}")
    return EXIT_OK if jac["pass"] else EXIT_FAIL


def cmd_identify(args, out) -> int:
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("expected a JSON object")
        p = liealg.Presentation.from_json(data)
    except (ValueError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad presentation: {exc}") from None
    jac = liealg.jacobi_check(p)
    if not jac["pass"]:
        v = jac["violations"][0]
        if args.json:
            _dump(out, {"identified": None, "jacobi": False, "violations": jac["violations"]})
        else:
            _emit(out, f"jacobi: FAIL at {tuple(v['triple'])}")
        return EXIT_FAIL
    fp = liealg.fingerprint(p)
    name = liealg.identify(p, fp)
    if args.json:
        _dump(out, {"identified": name, "jacobi": True, "fingerprint": fp.as_dict()})
        return EXIT_OK
    _emit(out, f"identified: {name}")
    for k, v in fp.as_dict().items():
        _emit(out, f"  {k}: {v}")
    return EXIT_OK


def cmd_check_thlms(args, out) -> int:
    r = thlms_report(args.group, args.n, seed=args.seed)
    if args.json:
        _dump(out, r)
        return EXIT_OK if r["pass"] else EXIT_FAIL
    _emit(out, f"{r['name']}: H {r['H']}")
    rows = []
    for p in r["pairs"]:
        checks = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in p.items() if k not in ("left", "right", "decomposable"))
        rows.append((p["left"], p["right"], "yes" if p["decomposable"] else "no", checks))
    _table(out, ("L", "M", "decomposable", "checks"), rows)
    _emit(out, f"result: {'PASS' if r['pass'] else 'FAIL'}")
    return EXIT_OK if r["pass"] else EXIT_FAIL


def cmd_verify(args, out) -> int:
    from .verify import run_suite

    try:
        checks = run_suite(args.suite, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(c.ok for c in checks)
    if args.json:
        _dump(out, {"suite": args.suite, "seed": args.seed, "pass": ok, "checks": [c.as_dict() for c in checks]})
    else:
        for c in checks:
            _emit(out, c.line())
        failed = sum(1 for c in checks if not c.ok)
        _emit(out, f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _spinor_args(p, k_default=None):
    p.add_argument("--group", help="catalog structure with spinor representatives")
    p.add_argument("--n", type=int, help="family parameter")
    p.add_argument("--model", default="10d", help="10d or 8d (with --spinors)")
    p.add_argument("--spinors", help='comma-separated spinor expressions, e.g. "1, i(e12+e34)"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holoforms", description="Exact exterior-form and spinor calculations for special structures.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
        p.set_defaults(func=fn)
        return p

    add("catalog", cmd_catalog, "list the structure catalog")
    p = add("spinors", cmd_spinors, "Majorana-projected spinor representatives")
    _spinor_args(p)
    p = add("isotropy", cmd_isotropy, "isotropy algebra of a spinor set")
    _spinor_args(p)
    p = add("bilinears", cmd_bilinears, "k-form bilinear spaces")
    _spinor_args(p)
    p.add_argument("--k", default="1", help="comma-separated degrees")
    p.add_argument("--basis", action="store_true", help="print the reduced basis")
    p = add("forms", cmd_forms, "fundamental forms of a structure")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int)
    p = add("closure", cmd_closure, "bracket closure of the fundamental forms")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--bracket", default=liealg.BARCURLYWEDGE, choices=[liealg.BARCURLYWEDGE, liealg.BARWEDGE])
    p.add_argument("--bound", type=int, default=liealg.DEFAULT_BOUND)
    p = add("identify", cmd_identify, "identify a presentation given as JSON")
    p.add_argument("--input", required=True, help="JSON file, or - for stdin")
    p = add("check-thlms", cmd_check_thlms, "decomposition of generator pairs")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int)
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("--suite", default="all", help="tables, derivations, patch, thlms, oracle or all")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(out)
            return EXIT_USAGE
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"holoforms: error: {exc}\n")
        return EXIT_USAGE
    except USER_ERRORS as exc:
        sys.stderr.write(f"holoforms: error: {exc}\n")
        return EXIT_USAGE
    except liealg.JacobiFailure as exc:
        sys.stderr.write(f"holoforms: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
