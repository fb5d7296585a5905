"""Command-line interface: instance files, subcommands, JSON certificate reports.

Subcommands: factor, hasse, indep, repset, solve, skolem, probe.  Every
run writes one JSON report to stdout and diagnostics to stderr.  Exit
codes: 0 success or certified answer, 2 sound non-answer (inapplicable or
nothing found), 3 input error, 4 resource limit.
"""

import argparse
import json
import sys
import time

from . import hasse as hassemod
from . import localprobe, solver, unitgroup, wronskian
from .errors import InputError, InternalCheckError, ResourceLimitError
from .exprio import parse_element, poly_text, print_expr, split_exprs
from .field import GF
from .poly import DEFAULT_SEED, factor
from .ratfunc import Modulus, RatFunc

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_INPUT = 3
EXIT_RESOURCE = 4

_INT_KEYS = {"p", "s", "rhs", "m", "m_max", "word_bound", "deg_bound", "e_bound", "seed"}
_STR_KEYS = {"modulus", "gens", "b"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 3
        raise InputError(message)


def parse_instance_text(text: str) -> dict:
    """key = value lines; '#' starts a comment; keys as in the README."""
    out: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"instance line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise InputError(f"instance line {lineno}: {key} must be an integer") from None
        elif key in _STR_KEYS:
            out[key] = value
        else:
            raise InputError(f"instance line {lineno}: unknown key {key!r}")
    return out


def _load_instance(args) -> dict:
    if getattr(args, "instance", None) is None:
        return {}
    try:
        with open(args.instance, "r", encoding="utf-8") as handle:
            return parse_instance_text(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read instance file: {exc}") from None


def _setting(args, cfg, key, default=None, required=False):
    value = getattr(args, key, None)
    if value is None:
        value = cfg.get(key)
    if value is None:
        if required:
            raise InputError(f"missing required setting {key!r}")
        value = default
    return value


def _build_field(args, cfg) -> GF:
    p = _setting(args, cfg, "p", required=True)
    s = _setting(args, cfg, "s", default=1)
    modulus_text = _setting(args, cfg, "modulus")
    try:
        if s == 1:
            return GF(int(p))
        if modulus_text is None:
            raise InputError("s > 1 requires a modulus polynomial")
        base = GF(int(p))
        modulus = parse_element(str(modulus_text), base)
        if not modulus.den.is_one:
            raise InputError("the field modulus must be a polynomial")
        return GF(int(p), int(s), modulus.num.coeffs)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _elements(text: str, field: GF, what: str) -> tuple[RatFunc, ...]:
    out = []
    for part in split_exprs(str(text)):
        value = parse_element(part, field)
        if value.is_zero:
            raise InputError(f"{what} {part!r} evaluates to zero")
        out.append(value)
    return tuple(out)


def _group(args, cfg, field: GF, seed: int) -> unitgroup.SubgroupPresentation:
    gens_text = _setting(args, cfg, "gens", required=True)
    return unitgroup.build_presentation(_elements(gens_text, field, "generator"), seed)


def _equation(args, cfg, field: GF) -> solver.Equation:
    b_text = _setting(args, cfg, "b", required=True)
    rhs = _setting(args, cfg, "rhs", default=0)
    try:
        return solver.Equation(_elements(b_text, field, "coefficient"), int(rhs))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _txt(x: RatFunc) -> str:
    return print_expr(x)


def _cert_json(cert: wronskian.IndependenceCertificate | None):
    if cert is None:
        return None
    if cert.independent:
        return {"verdict": "independent", "index_set": list(cert.index_set)}
    return {"verdict": "dependent", "relation": [_txt(r) for r in cert.relation]}


def _witness_json(rec: solver.TupleRecord):
    entry = {
        "r": [_txt(x) for x in rec.r],
        "r_words": [list(w) for w in rec.r_words],
        "certificate": {
            "products": _cert_json(rec.certificate),
            "unit_substitutions": (
                None
                if rec.psi_certificates is None
                else [_cert_json(c) for c in rec.psi_certificates]
            ),
        },
    }
    if rec.candidate is not None:
        entry["candidate"] = [_txt(x) for x in rec.candidate]
        entry["point"] = [_txt(x) for x in rec.point]
        entry["kept"] = rec.kept
    return entry


def _failure_json(failure: solver.FailureRecord | None):
    if failure is None:
        return None
    return {
        "r": [_txt(x) for x in failure.r],
        "r_words": [list(w) for w in failure.r_words],
        "reason": failure.reason,
        "certificate": _cert_json(failure.certificate),
        "unit_substitutions": (
            None
            if failure.psi_certificates is None
            else [_cert_json(c) for c in failure.psi_certificates]
        ),
        "retries": failure.retries,
    }


def _field_json(field: GF):
    return {"p": field.p, "s": field.s}


def _solve_report(report: solver.CertifiedReport, field: GF, group, timing_ms):
    doc = {
        "outcome": report.outcome,
        "m": report.m,
        "equation": {"b": [_txt(x) for x in report.equation.b], "rhs": report.equation.rhs},
        "field": _field_json(field),
        "solutions": (
            None
            if report.solutions is None
            else [
                {"coords": [_txt(x) for x in s.coords], "words": [list(w) for w in s.words]}
                for s in report.solutions
            ]
        ),
        "bound": report.bound,
        "witnesses": [_witness_json(rec) for rec in report.records],
        "timing_ms": timing_ms,
        "command": "solve",
        "generators": [_txt(g) for g in group.generators],
        "repset_size": report.repset_size,
        "failure": _failure_json(report.failure),
        "auto_failures": [
            {"m": m, "failure": _failure_json(f)} for m, f in report.auto_failures
        ],
    }
    return doc


def _cmd_solve(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    seed = int(_setting(args, cfg, "seed", default=DEFAULT_SEED))
    group = _group(args, cfg, field, seed)
    eq = _equation(args, cfg, field)
    m = _setting(args, cfg, "m")
    m_max = _setting(args, cfg, "m_max")
    start = time.perf_counter()
    if m is not None:
        report = solver.decide(eq, group, int(m), exhaustive=args.verbose)
    else:
        report = solver.auto_m(eq, group, int(m_max) if m_max is not None else 3,
                               exhaustive=args.verbose)
    timing = int((time.perf_counter() - start) * 1000) if args.timing else None
    doc = _solve_report(report, field, group, timing)
    code = EXIT_OK if report.outcome != "inapplicable" else EXIT_NEGATIVE
    return doc, code


def _cmd_skolem(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    seed = int(_setting(args, cfg, "seed", default=DEFAULT_SEED))
    group = _group(args, cfg, field, seed)
    eq = _equation(args, cfg, field)
    deg_bound = int(_setting(args, cfg, "deg_bound", default=2))
    e_bound = int(_setting(args, cfg, "e_bound", default=2))
    start = time.perf_counter()
    witness = localprobe.find_local_obstruction(eq, group, deg_bound, e_bound, seed)
    timing = int((time.perf_counter() - start) * 1000) if args.timing else None
    doc = {
        "outcome": "obstruction-found" if witness else "none-found",
        "equation": {"b": [_txt(x) for x in eq.b], "rhs": eq.rhs},
        "field": _field_json(field),
        "modulus": (
            None
            if witness is None
            else {"base": poly_text(witness.modulus.base), "exponent": witness.modulus.exponent}
        ),
        "group_size": None if witness is None else witness.group_size,
        "bounds": {"deg_bound": deg_bound, "e_bound": e_bound},
        "timing_ms": timing,
        "command": "skolem",
    }
    return doc, EXIT_OK if witness else EXIT_NEGATIVE


def _cmd_probe(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    if args.g is None or args.base is None:
        raise InputError("probe requires --g and --base")
    g = parse_element(args.g, field)
    base = parse_element(args.base, field)
    if not base.den.is_one:
        raise InputError("the modulus base must be a polynomial")
    try:
        modulus = Modulus(base.num.monic()[0], args.e)
        report = localprobe.closure_probe(g, modulus, args.n_max)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = {
        "outcome": "stabilized" if report.settled else "undetermined",
        "field": _field_json(field),
        "element": _txt(g),
        "modulus": {"base": poly_text(modulus.base), "exponent": modulus.exponent},
        "residues": [poly_text(r) for r in report.residues],
        "stable_index": report.stable_index,
        "stable_value": poly_text(report.stable_value),
        "command": "probe",
    }
    return doc, EXIT_OK if report.settled else EXIT_NEGATIVE


def _cmd_factor(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    seed = int(_setting(args, cfg, "seed", default=DEFAULT_SEED))
    if args.poly is None:
        raise InputError("factor requires --poly")
    value = parse_element(args.poly, field)
    if not value.den.is_one:
        raise InputError("factor expects a polynomial, not a proper fraction")
    if value.is_zero:
        raise InputError("cannot factor the zero polynomial")
    decomposition = factor(value.num, seed)
    doc = {
        "outcome": "ok",
        "field": _field_json(field),
        "input": poly_text(value.num),
        "unit": decomposition.unit,
        "factors": [
            {"poly": poly_text(g), "multiplicity": e} for g, e in decomposition.factors
        ],
        "command": "factor",
    }
    return doc, EXIT_OK


def _cmd_hasse(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    if args.x is None:
        raise InputError("hasse requires --x")
    x = parse_element(args.x, field)
    if args.order is not None:
        jet = hassemod.taylor_jet(x, args.order)
        doc = {
            "outcome": "ok",
            "field": _field_json(field),
            "input": _txt(x),
            "order": args.order,
            "derivatives": [_txt(c) for c in jet.coefficients],
            "command": "hasse",
        }
        return doc, EXIT_OK
    index = args.i if args.i is not None else 1
    doc = {
        "outcome": "ok",
        "field": _field_json(field),
        "input": _txt(x),
        "index": index,
        "derivative": _txt(hassemod.hasse_derivative(x, index)),
        "command": "hasse",
    }
    return doc, EXIT_OK


def _cmd_indep(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    b_text = _setting(args, cfg, "b", required=True)
    vector = _elements(b_text, field, "component")
    m = _setting(args, cfg, "m", required=True)
    cert = wronskian.independence_test(vector, int(m))
    doc = {
        "outcome": cert.verdict,
        "m": int(m),
        "field": _field_json(field),
        "b": [_txt(x) for x in vector],
        "index_set": None if cert.index_set is None else list(cert.index_set),
        "relation": (
            None if cert.relation is None else [_txt(r) for r in cert.relation]
        ),
        "command": "indep",
    }
    return doc, EXIT_OK


def _cmd_repset(args) -> tuple[dict, int]:
    cfg = _load_instance(args)
    field = _build_field(args, cfg)
    seed = int(_setting(args, cfg, "seed", default=DEFAULT_SEED))
    group = _group(args, cfg, field, seed)
    m = _setting(args, cfg, "m", required=True)
    reps = unitgroup.representatives(group, int(m))
    doc = {
        "outcome": "ok",
        "m": int(m),
        "field": _field_json(field),
        "generators": [_txt(g) for g in group.generators],
        "size": len(reps),
        "elements": [_txt(x) for x in reps.elements],
        "words": [list(w) for w in reps.words],
        "keys": [list(k) for k in reps.keys],
        "command": "repset",
    }
    return doc, EXIT_OK


def _add_common(sub):
    sub.add_argument("--instance", help="instance file (key = value lines, # comments)")
    sub.add_argument("--p", type=int, help="field characteristic")
    sub.add_argument("--s", type=int, help="extension degree (default 1)")
    sub.add_argument("--modulus", help="defining polynomial over F_p when s > 1")
    sub.add_argument("--seed", type=int, help="seed for factorization randomness")
    sub.add_argument("--timing", action="store_true", help="include timing_ms in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffunits", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("solve", help="certified decision for b.x = rhs over the group closure")
    _add_common(sp)
    sp.add_argument("--gens", help="comma-separated group generators")
    sp.add_argument("--b", help="comma-separated equation coefficients")
    sp.add_argument("--rhs", type=int, help="0 or 1")
    sp.add_argument("--m", type=int, help="fixed subfield precision")
    sp.add_argument("--m-max", dest="m_max", type=int, help="scan m = 1..m_max (default 3)")
    sp.add_argument("--verbose", action="store_true", help="evaluate every tuple even after a failure")
    sp.set_defaults(handler=_cmd_solve)

    sp = subs.add_parser("skolem", help="search for a congruence obstruction")
    _add_common(sp)
    sp.add_argument("--gens", help="comma-separated group generators")
    sp.add_argument("--b", help="comma-separated equation coefficients")
    sp.add_argument("--rhs", type=int, help="0 or 1")
    sp.add_argument("--deg-bound", dest="deg_bound", type=int, help="max modulus base degree")
    sp.add_argument("--e-bound", dest="e_bound", type=int, help="max modulus exponent")
    sp.set_defaults(handler=_cmd_skolem)

    sp = subs.add_parser("probe", help="watch g**(p**(n!)) stabilize in a residue ring")
    _add_common(sp)
    sp.add_argument("--g", help="probed element")
    sp.add_argument("--base", help="monic irreducible modulus base")
    sp.add_argument("--e", type=int, default=1, help="modulus exponent (default 1)")
    sp.add_argument("--n-max", dest="n_max", type=int, default=6, help="terms to compute (default 6)")
    sp.set_defaults(handler=_cmd_probe)

    sp = subs.add_parser("factor", help="factor a polynomial into monic irreducibles")
    _add_common(sp)
    sp.add_argument("--poly", help="polynomial to factor")
    sp.set_defaults(handler=_cmd_factor)

    sp = subs.add_parser("hasse", help="higher derivatives of a field element")
    _add_common(sp)
    sp.add_argument("--x", help="element to differentiate")
    sp.add_argument("--i", type=int, help="derivative index (default 1)")
    sp.add_argument("--order", type=int, help="emit the whole jet up to this order")
    sp.set_defaults(handler=_cmd_hasse)

    sp = subs.add_parser("indep", help="independence certificate over F_q(t^(p^m))")
    _add_common(sp)
    sp.add_argument("--b", help="comma-separated components")
    sp.add_argument("--m", type=int, help="subfield precision")
    sp.set_defaults(handler=_cmd_indep)

    sp = subs.add_parser("repset", help="representatives mod the F_q(t^(p^m)) part")
    _add_common(sp)
    sp.add_argument("--gens", help="comma-separated group generators")
    sp.add_argument("--m", type=int, help="subfield precision")
    sp.set_defaults(handler=_cmd_repset)

    return parser


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, code = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=stderr)
        return 1
    json.dump(doc, stdout, indent=2)
    stdout.write("\n")
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
