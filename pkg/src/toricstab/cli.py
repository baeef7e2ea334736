"""toricctl: JSON-speaking command-line front end for the library kernels.

Exit codes: 0 ok, 1 oracle failure, 2 parse error, 3 invalid fan,
4 shape mismatch, 5 enumeration cap exceeded.  All reports embed the tool
version, a digest of the canonicalized input, and the formula the verdict
rests on.  Randomized suites surface their seed; TORICCTL_SEED overrides it.
"""

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .complexes import (
    SimplicialComplex,
    UndefinedValueError,
    UnsupportedFanError,
    complex_power,
    primitive_collections,
    r_min,
    underlying_complex,
)
from .exactla import nullspace_int
from .fans import (
    FanJsonError,
    FanStructureError,
    cox_group_rank,
    fan_from_json,
    fan_power,
    fan_to_json,
    find_degree_vector,
    is_complete,
    is_smooth,
    spans_lattice,
    validate_fan,
)
from .oracles import run_suite
from .polynomials import (
    SystemJsonError,
    is_member,
    jet,
    system_from_json,
    system_to_json,
    stabilize,
)
from .stability import CapExceededError, e1_support, stability_dim_n1, stability_report

EXIT_OK = 0
EXIT_ORACLE = 1
EXIT_PARSE = 2
EXIT_INVALID_FAN = 3
EXIT_SHAPE = 4
EXIT_CAP = 5

PROVENANCE = {
    "fan analyze": "r_min = min size of a ray set spanning no cone; degree-null: sum_k d_k * n_k = 0",
    "fan validate": "fan axioms: strong convexity, face closure, pairwise common faces",
    "fan power": "power rays place ray i in slot j; cones follow the power complex faces",
    "complex power": "faces are the vertex sets containing no full block sigma x [n] over a minimal non-face sigma",
    "complex primitives": "primitive collections = minimal non-faces; r_min = min cardinality",
    "poly check": "member iff no primitive collection shares a root of multiplicity >= n",
    "poly stabilize": "roots move into Re < sum(degrees); shifts append anchor roots, degrees rise by the shift",
    "poly jet": "jet entries f, f + f', ..., f + f^(n-1)",
    "oracle vandermonde": "rank(stacked derivative constraint matrix) = n*k and solution dim = d - n*k",
    "oracle band": "min band value of s - k equals stability_dim + 2",
    "oracle complement": "zero-support is a face XOR zero-support contains a primitive collection",
    "oracle jetsection": "jet of the canonical section at 0 returns its defining data",
    "stability report": "stability_dim = (2*n*r_min - 3)*floor(d_min/n) - 2; connectivity = 2*n*r_min - 5",
    "stability e1": "cell zero iff 2*n*r*k - s outside [0, 2*k*(1 + n*r - n*r_min)]; tail edge at s = (2*n*r_min - 2)*d_prime",
}


def _canonical_hash(obj):
    data = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def _emit(payload):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _fail(code, message, **extra):
    err = {"tool": "toricctl", "version": __version__, "error": message}
    err.update(extra)
    print(json.dumps(err, sort_keys=True, indent=2), file=sys.stderr)
    raise SystemExit(code)


def _meta(command, input_hash=None):
    out = {
        "tool": "toricctl",
        "version": __version__,
        "command": command,
        "provenance": PROVENANCE[command],
    }
    if input_hash is not None:
        out["input_hash"] = input_hash
    return out


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        _fail(EXIT_PARSE, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(EXIT_PARSE, f"malformed JSON in {path}: {exc}", pointer=f"/line/{exc.lineno}")


def _load_fan(path, require_valid=True):
    raw = _load_json(path)
    try:
        fan = fan_from_json(raw)
    except FanJsonError as exc:
        _fail(EXIT_PARSE, exc.message, pointer=exc.pointer)
    except FanStructureError as exc:
        _fail(EXIT_PARSE, str(exc))
    report = validate_fan(fan)
    if require_valid and not report.ok:
        _fail(EXIT_INVALID_FAN, "fan violates the fan axioms",
              violations=[v.to_dict() for v in report.violations])
    return fan, raw, report


def _load_system(path):
    raw = _load_json(path)
    try:
        return system_from_json(raw), raw
    except SystemJsonError as exc:
        _fail(EXIT_PARSE, exc.message, pointer=exc.pointer)


def _one_based(collections):
    return sorted(sorted(i + 1 for i in c) for c in collections)


def _effective_seed(args):
    env = os.environ.get("TORICCTL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            _fail(EXIT_PARSE, f"TORICCTL_SEED must be an integer, got {env!r}")
    return args.seed


def _parse_degrees(text, fan):
    try:
        degrees = tuple(int(x) for x in text.split(","))
    except ValueError:
        _fail(EXIT_PARSE, f"degrees must be a comma-separated integer list, got {text!r}")
    if len(degrees) != fan.ray_count:
        _fail(EXIT_SHAPE, f"expected {fan.ray_count} degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        _fail(EXIT_SHAPE, "all degrees must be >= 1")
    return degrees


# -- fan ----------------------------------------------------------------------

def cmd_fan_analyze(args):
    fan, raw, _ = _load_fan(args.path)
    out = _meta("fan analyze", _canonical_hash(raw))
    out["source"] = args.path
    out["fan"] = {"dim": fan.dim, "ray_count": fan.ray_count, "rays": [list(r) for r in fan.rays]}
    out["valid"] = True
    out["smooth"] = is_smooth(fan)
    out["complete"] = is_complete(fan)
    out["spans_lattice"] = spans_lattice(fan)
    out["complex"] = underlying_complex(fan).to_json()
    prims = primitive_collections(fan)
    out["indexing"] = "1-based"
    out["primitive_collections"] = _one_based(prims)
    try:
        out["r_min"] = r_min(fan)
    except UndefinedValueError:
        out["r_min"] = None
    bound = args.bound if args.bound is not None else 10 * fan.ray_count
    vector = find_degree_vector(fan, coord_bound=bound)
    out["degree_vector"] = list(vector) if vector is not None else None
    out["degree_search_bound"] = bound
    out["degree_search_exhausted"] = vector is None and bool(nullspace_int(fan.ray_matrix()))
    out["cox_rank"] = cox_group_rank(fan) if out["spans_lattice"] else None
    if args.degrees is not None:
        degrees = _parse_degrees(args.degrees, fan)
        try:
            if args.n == 1:
                value, kind = stability_dim_n1(degrees, fan)
                out["stability"] = {"n": 1, "stability_dim": value, "kind": kind,
                                    "degrees": list(degrees)}
            else:
                out["stability"] = stability_report(degrees, fan, args.n).to_dict()
            if args.e1:
                if args.n < 2:
                    _fail(EXIT_SHAPE, "the vanishing table requires n >= 2")
                out["e1"] = e1_support(degrees, fan, args.n).to_dict()
        except UndefinedValueError as exc:
            _fail(EXIT_SHAPE, str(exc))
    elif args.e1:
        _fail(EXIT_SHAPE, "--e1 needs --degrees")
    _emit(out)
    return EXIT_OK


def cmd_fan_validate(args):
    fan, raw, report = _load_fan(args.path, require_valid=False)
    out = _meta("fan validate", _canonical_hash(raw))
    out.update(report.to_dict())
    _emit(out)
    return EXIT_OK if report.ok else EXIT_INVALID_FAN


def cmd_fan_power(args):
    fan, raw, _ = _load_fan(args.path)
    power = fan_power(fan, args.n)
    out = _meta("fan power", _canonical_hash(raw))
    out["n"] = args.n
    out["fan"] = fan_to_json(power)
    _emit(out)
    return EXIT_OK


# -- complex ------------------------------------------------------------------

def _load_complex_like(path):
    raw = _load_json(path)
    if isinstance(raw, dict) and "rays" in raw:
        try:
            fan = fan_from_json(raw)
        except (FanJsonError, FanStructureError) as exc:
            _fail(EXIT_PARSE, str(exc))
        try:
            return underlying_complex(fan), raw
        except UnsupportedFanError as exc:
            _fail(EXIT_INVALID_FAN, str(exc))
    if isinstance(raw, dict) and "max_faces" in raw:
        try:
            return SimplicialComplex.from_json(raw), raw
        except (KeyError, TypeError, ValueError) as exc:
            _fail(EXIT_PARSE, f"bad complex document: {exc}")
    _fail(EXIT_PARSE, "document is neither a fan (rays) nor a complex (max_faces)")


def cmd_complex_power(args):
    complex_, raw = _load_complex_like(args.path)
    power = complex_power(complex_, args.n)
    out = _meta("complex power", _canonical_hash(raw))
    out["n"] = args.n
    out["complex"] = power.to_json()
    _emit(out)
    return EXIT_OK


def cmd_complex_primitives(args):
    complex_, raw = _load_complex_like(args.path)
    prims = primitive_collections(complex_)
    out = _meta("complex primitives", _canonical_hash(raw))
    out["indexing"] = "1-based"
    out["primitive_collections"] = _one_based(prims)
    out["r_min"] = min((len(p) for p in prims), default=None)
    _emit(out)
    return EXIT_OK


# -- poly ---------------------------------------------------------------------

def cmd_poly_check(args):
    fan, fan_raw, _ = _load_fan(args.fan)
    system, sys_raw = _load_system(args.system)
    if system.r != fan.ray_count:
        _fail(EXIT_SHAPE, f"system has {system.r} polynomials, fan has {fan.ray_count} rays")
    verdict = is_member(system, fan, args.n)
    out = _meta("poly check")
    out["input_hash"] = {"fan": _canonical_hash(fan_raw), "system": _canonical_hash(sys_raw)}
    out["n"] = args.n
    out["representation"] = verdict.representation
    out["member"] = verdict.member
    if verdict.member:
        out["witness"] = None
    else:
        witness = {"collection": [i + 1 for i in verdict.witness_collection], "indexing": "1-based"}
        if verdict.witness_factor is not None:
            witness["common_factor"] = [c.to_pair() for c in verdict.witness_factor.coeffs]
        if verdict.witness_root is not None:
            witness["common_root"] = [verdict.witness_root.real, verdict.witness_root.imag]
        out["witness"] = witness
    if args.n > max(system.degrees):
        out["note"] = "contractible regime: n exceeds every degree, every system is a member"
    _emit(out)
    return EXIT_OK


def cmd_poly_stabilize(args):
    system, raw = _load_system(args.system)
    if system.form != "root":
        _fail(EXIT_SHAPE, "stabilize needs a root-form system file")
    try:
        shifts = [int(x) for x in args.a.split(",")]
    except ValueError:
        _fail(EXIT_PARSE, f"shift vector must be comma-separated integers, got {args.a!r}")
    try:
        shifted = stabilize(system, shifts)
    except ValueError as exc:
        _fail(EXIT_SHAPE, str(exc))
    out = _meta("poly stabilize", _canonical_hash(raw))
    out["a"] = shifts
    out["degrees_before"] = list(system.degrees)
    out["degrees_after"] = list(shifted.degrees)
    out["system"] = system_to_json(shifted)
    _emit(out)
    return EXIT_OK


def cmd_poly_jet(args):
    system, raw = _load_system(args.system)
    if system.form != "coefficient":
        _fail(EXIT_SHAPE, "jet needs a coefficient-form system file")
    out = _meta("poly jet", _canonical_hash(raw))
    out["n"] = args.n
    out["jets"] = [
        [[c.to_pair() for c in entry.coeffs] for entry in jet(p, args.n).entries]
        for p in system.polys
    ]
    _emit(out)
    return EXIT_OK


# -- oracle -------------------------------------------------------------------

def cmd_oracle(args):
    seed = _effective_seed(args)
    try:
        if args.suite == "vandermonde" and (args.k or args.n or args.d):
            from .oracles import run_vandermonde

            result = run_vandermonde(seed, trials=args.trials or 500,
                                     k=args.k, n=args.n, d=args.d)
        else:
            result = run_suite(args.suite, seed, trials=args.trials)
    except CapExceededError as exc:
        _fail(EXIT_CAP, str(exc))
    out = _meta(f"oracle {args.suite}")
    out.update(result.to_dict())
    _emit(out)
    return EXIT_OK if result.ok else EXIT_ORACLE


# -- stability ----------------------------------------------------------------

def cmd_stability_report(args):
    fan, raw, _ = _load_fan(args.fan)
    degrees = _parse_degrees(args.degrees, fan)
    out = _meta("stability report", _canonical_hash(raw))
    try:
        if args.n == 1:
            value, kind = stability_dim_n1(degrees, fan)
            out["n"] = 1
            out["stability_dim"] = value
            out["kind"] = kind
            out["degrees"] = list(degrees)
        else:
            report = stability_report(degrees, fan, args.n)
            out.update(report.to_dict())
    except UndefinedValueError as exc:
        _fail(EXIT_SHAPE, str(exc))
    _emit(out)
    return EXIT_OK


_STATUS_GLYPH = {"zero": ".", "possibly_nonzero": "?", "tail_unknown": "T"}


def _render_table(support):
    lines = []
    header = "s\\k " + " ".join(f"{k:>3d}" for k in range(support.k_max + 1))
    lines.append(header)
    for s in range(support.s_max, support.s_min - 1, -1):
        row = f"{s:>3d} " + " ".join(
            f"{_STATUS_GLYPH[support.status(k, s)]:>3}" for k in range(support.k_max + 1)
        )
        lines.append(row)
    lines.append("legend: . zero   ? possibly_nonzero   T tail_unknown")
    return "\n".join(lines)


def cmd_stability_e1(args):
    fan, raw, _ = _load_fan(args.fan)
    degrees = _parse_degrees(args.degrees, fan)
    try:
        support = e1_support(degrees, fan, args.n, s_max=args.s_max)
    except (UndefinedValueError, ValueError) as exc:
        _fail(EXIT_SHAPE, str(exc))
    if args.table:
        print(_render_table(support))
        return EXIT_OK
    out = _meta("stability e1", _canonical_hash(raw))
    out.update(support.to_dict())
    out["degrees"] = list(degrees)
    out["table"] = _render_table(support)
    _emit(out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="toricctl",
        description="fan analysis, membership tests and stability tabulation",
    )
    parser.add_argument("--version", action="version", version=f"toricctl {__version__}")
    top = parser.add_subparsers(dest="group", required=True)

    fan = top.add_parser("fan", help="fan validation and predicates").add_subparsers(
        dest="command", required=True
    )
    p = fan.add_parser("analyze", help="run every predicate and report a bundle")
    p.add_argument("path")
    p.add_argument("--bound", type=int, default=None, help="degree-vector coordinate bound")
    p.add_argument("--degrees", default=None, help="attach a stability report for these degrees")
    p.add_argument("--n", type=int, default=2, help="multiplicity bound for the stability report")
    p.add_argument("--e1", action="store_true", help="attach the vanishing table (needs --degrees)")
    p.set_defaults(func=cmd_fan_analyze)
    p = fan.add_parser("validate", help="report fan axiom violations")
    p.add_argument("path")
    p.set_defaults(func=cmd_fan_validate)
    p = fan.add_parser("power", help="block-placement power fan")
    p.add_argument("path")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_fan_power)

    cx = top.add_parser("complex", help="simplicial complex operations").add_subparsers(
        dest="command", required=True
    )
    p = cx.add_parser("power", help="power complex on the vertex grid")
    p.add_argument("path")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_complex_power)
    p = cx.add_parser("primitives", help="minimal non-faces and their least size")
    p.add_argument("path")
    p.set_defaults(func=cmd_complex_primitives)

    poly = top.add_parser("poly", help="polynomial system operations").add_subparsers(
        dest="command", required=True
    )
    p = poly.add_parser("check", help="bounded-multiplicity membership verdict")
    p.add_argument("--fan", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_poly_check)
    p = poly.add_parser("stabilize", help="degree-raising stabilization (root form)")
    p.add_argument("--system", required=True)
    p.add_argument("--a", required=True, help="comma-separated shift vector")
    p.set_defaults(func=cmd_poly_stabilize)
    p = poly.add_parser("jet", help="jet tuples of a coefficient-form system")
    p.add_argument("--system", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_poly_jet)

    oracle = top.add_parser("oracle", help="seeded certification suites")
    oracle.add_argument("suite", choices=("vandermonde", "band", "complement", "jetsection"))
    oracle.add_argument("--trials", type=int, default=None)
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--k", type=int, default=None, help="fix the point count (vandermonde)")
    oracle.add_argument("--n", type=int, default=None, help="fix the derivative order count (vandermonde)")
    oracle.add_argument("--d", type=int, default=None, help="fix the degree (vandermonde)")
    oracle.set_defaults(func=cmd_oracle)

    stab = top.add_parser("stability", help="stability dimensions and vanishing table").add_subparsers(
        dest="command", required=True
    )
    p = stab.add_parser("report", help="closed-form stability report")
    p.add_argument("--fan", required=True)
    p.add_argument("--degrees", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_stability_report)
    p = stab.add_parser("e1", help="first-page vanishing table")
    p.add_argument("--fan", required=True)
    p.add_argument("--degrees", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--table", action="store_true", help="print only the text render")
    p.set_defaults(func=cmd_stability_e1)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return EXIT_OK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
