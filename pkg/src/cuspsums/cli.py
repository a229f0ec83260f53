"""Command-line surface: evaluations, tables, and verification suites.

Output contract: the data payload (stdout, or the --output file) is
deterministic byte-for-byte for fixed inputs and package version.  Complex
numbers appear in JSON as two-element arrays [re, im], integers that could
exceed 2^53 as decimal strings, JSON keys sorted; CSV columns are in the
fixed orders documented in the README.  A metadata header (package version,
subcommand, timestamp) goes to stderr so it never contaminates the payload.

Exit codes: 0 success (for verification subcommands: every check passed),
1 verification failures, 2 malformed command line, 3 numeric domain
violations.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from functools import partial

from . import __version__
from .characters import DirichletCharacter, principal_character, unit_group
from .cusps import (Cusp, cusp_data, cusps_equivalent, representatives,
                    scaling_atkin_lehner, scaling_general,
                    stabilizer_generator)
from .doublecoset import oracle_al
from .eisenstein import eisenstein_config, phi_closed, phi_direct
from .kloosterman import al_pair_config, modulus_allowed_al, theorem_al_pair
from . import verify

TOLERANCE_ENV = "CUSPSUMS_TOL"


# ---------------------------------------------------------------------------
# emission helpers


def _json_ready(obj):
    """Recursively rewrite a document for lossless JSON: complex -> [re, im],
    huge integers -> decimal strings."""
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int) and abs(obj) >= 2 ** 53:
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def _write_payload(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _emit_json(doc, output):
    _write_payload(json.dumps(_json_ready(doc), sort_keys=True, indent=2)
                   + "\n", output)


def _emit_csv(header, rows, output):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_payload(buf.getvalue(), output)


def _metadata(subcommand):
    stamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    print("# cuspsums %s | %s | %s" % (__version__, subcommand, stamp),
          file=sys.stderr)


def _fmt_scalar(u):
    """Compact deterministic text for a real-or-complex scalar (CSV cells)."""
    u = complex(u)
    if u.imag == 0:
        return repr(u.real)
    return repr(u).strip("()")


# ---------------------------------------------------------------------------
# argument plumbing


def _read_config(path):
    """key=value preset file: blank lines and #-comments ignored."""
    presets = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError("config line without '=': %r" % line)
            key, value = line.split("=", 1)
            presets[key.strip().replace("-", "_")] = value.strip()
    return presets


def _effective(args, key, cast, fallback=None):
    """First of: the CLI flag, the --config preset, the fallback."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    presets = getattr(args, "_presets", {})
    if key in presets:
        return cast(presets[key])
    return fallback


def _tolerance(args):
    """--tol flag, else config preset, else the environment default."""
    tol = _effective(args, "tol", float)
    if tol is None and os.environ.get(TOLERANCE_ENV):
        tol = float(os.environ[TOLERANCE_ENV])
    if tol is not None and not 0 < tol < 1:
        raise ValueError("tolerance must lie in (0, 1), got %g" % tol)
    return tol


def _parse_pquv(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected p,q,u,v")
    try:
        pquv = tuple(int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("expected four integers")
    if any(x < 1 for x in pquv):
        raise argparse.ArgumentTypeError("factors must be positive")
    return pquv


def _parse_int_list(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers")


def _parse_chi(N, text):
    """A character mod N from comma-separated exponents on the unit-group
    generators (None means the principal character)."""
    if text is None:
        return principal_character(N)
    exps = [int(x) for x in text.split(",")]
    gens = unit_group(N).generators
    if len(exps) != len(gens):
        raise ValueError(
            "character mod %d needs %d exponents (unit-group generators %s),"
            " got %d" % (N, len(gens), [g.value for g in gens], len(exps)))
    exps = tuple(e % g.order for e, g in zip(exps, gens))
    return DirichletCharacter(N, exps)


# ---------------------------------------------------------------------------
# cusps subcommands


def _cmd_cusps_list(args):
    N = args.N
    entries = []
    for cusp in representatives(N):
        w = cusp.denominator
        entries.append({
            "cusp": "%d/%d" % (cusp.numerator, w),
            "numerator": cusp.numerator,
            "denominator": w,
            "width": cusp_data(N, w).N_dprime,
            "atkin_lehner": N % w == 0 and math.gcd(w, N // w) == 1,
        })
    if args.format == "csv":
        _emit_csv(["numerator", "denominator", "width", "atkin_lehner"],
                  [[e["numerator"], e["denominator"], e["width"],
                    e["atkin_lehner"]] for e in entries], args.output)
    else:
        _emit_json({"N": N, "count": len(entries), "cusps": entries},
                   args.output)
    return 0


def _cmd_cusps_equiv(args):
    a = Cusp.parse(args.a, args.N)
    b = Cusp.parse(args.b, args.N)
    _emit_json({"N": args.N, "a": args.a, "b": args.b,
                "equivalent": cusps_equivalent(a, b)}, args.output)
    return 0


def _cmd_cusps_scaling(args):
    N, w = args.N, args.w
    if args.atkin_lehner:
        sigma = scaling_atkin_lehner(N, w)
    else:
        sigma = scaling_general(N, w)
    _emit_json({
        "N": N,
        "cusp": "1/%d" % w,
        "scaling": sigma.as_dict(),
        "stabilizer": list(stabilizer_generator(N, w)),
        "width": cusp_data(N, w).N_dprime,
        "maps_infinity_to": list(sigma.apply(1, 0)),
    }, args.output)
    return 0


# ---------------------------------------------------------------------------
# kloosterman subcommands


def _cmd_kloosterman_eval(args):
    p, q, u, v = args.pquv
    N = p * q * u * v
    chi = _parse_chi(N, args.chi)
    cfg = al_pair_config(p, q, u, v, chi)
    if args.oracle:
        value = oracle_al(p, q, u, v, args.m, args.n, args.c, chi)
        method = "double-coset"
    else:
        kv = theorem_al_pair(cfg, args.m, args.n, args.c,
                             uv_inverse_lift=args.lift)
        value, method = kv.value, kv.method
    units = unit_group(N)
    _emit_json({
        "pquv": [p, q, u, v],
        "chi": list(chi.exponents),
        "chi_generators": [[g.value, g.order] for g in units.generators],
        "m": args.m,
        "n": args.n,
        "modulus": {"c": args.c, "surd": u * v,
                    "allowed": modulus_allowed_al(cfg, args.c)},
        "value": value,
        "method": method,
    }, args.output)
    return 0


def _cmd_kloosterman_table(args):
    p, q, u, v = args.pquv
    N = p * q * u * v
    chi = _parse_chi(N, args.chi)
    cfg = al_pair_config(p, q, u, v, chi)
    c_max = _effective(args, "c_max", int, 36)
    rows = []
    for c in range(1, c_max + 1):
        if not modulus_allowed_al(cfg, c):
            continue
        for m in args.m:
            for n in args.n:
                val = theorem_al_pair(cfg, m, n, c).value
                rows.append((c, m, n, val))
    header = ["p", "q", "u", "v", "chi", "m", "n", "c", "surd",
              "value_re", "value_im"]
    chi_label = str(list(chi.exponents))
    if args.format == "json":
        _emit_json({"pquv": [p, q, u, v], "chi": list(chi.exponents),
                    "surd": u * v,
                    "rows": [{"c": c, "m": m, "n": n, "value": val}
                             for c, m, n, val in rows]}, args.output)
    else:
        _emit_csv(header,
                  [[p, q, u, v, chi_label, m, n, c, u * v,
                    repr(val.real), repr(val.imag)]
                   for c, m, n, val in rows], args.output)
    return 0


# ---------------------------------------------------------------------------
# eisenstein subcommands


def _cmd_eisenstein_phi(args):
    u = complex(args.u_re, args.u_im)
    config = eisenstein_config(args.N, args.r, args.w, u)
    X = _effective(args, "X", int, 10 ** 5)
    records = []
    for n in args.n:
        if args.direct:
            coef = phi_direct(config, n, X)
        elif n == 0:
            raise ValueError("the constant term is served by the series "
                             "route only; pass --direct")
        else:
            coef = phi_closed(config, n)
        records.append((n, coef))
    if len(records) == 1 and args.format != "csv":
        n, coef = records[0]
        _emit_json({
            "N": args.N, "r": args.r, "w": args.w, "n": n, "u": u,
            "value": coef.value,
            "bound": coef.truncation_bound,
            "method": coef.method,
        }, args.output)
    else:
        _emit_csv(
            ["N", "r", "w", "n", "u", "value_re", "value_im", "bound"],
            [[args.N, args.r, args.w, n, _fmt_scalar(u),
              repr(coef.value.real), repr(coef.value.imag),
              repr(coef.truncation_bound)] for n, coef in records],
            args.output)
    return 0


# ---------------------------------------------------------------------------
# verification subcommands


def _run_verification(args, tasks):
    results = verify.run_tasks(tasks, jobs=_effective(args, "jobs", int, 1))
    doc = {"passed": all(r.passed for r in results),
           "results": [{"name": r.name, "checks": r.checks,
                        "passed": r.passed, "failures": list(r.failures)}
                       for r in results]}
    for r in results:
        print("# %-45s %s  (%d checks, %.2fs)"
              % (r.name, "pass" if r.passed else "FAIL", r.checks,
                 r.seconds), file=sys.stderr)
    _emit_json(doc, args.output)
    return 0 if doc["passed"] else 1


def _cap(n_max, default):
    return default if n_max is None else min(default, n_max)


def _cmd_kloosterman_verify(args):
    n_max = _effective(args, "n_max", int)
    tol = _tolerance(args)
    grid_kwargs = {"n_max": _cap(n_max, 60)}
    if tol is not None:
        grid_kwargs["tol"] = tol
    tasks = [
        partial(verify.verify_kloosterman_grid, **grid_kwargs),
        partial(verify.verify_specializations, n_max=_cap(n_max, 60)),
        partial(verify.verify_lifts_and_shifts, n_max=_cap(n_max, 12)),
        partial(verify.verify_residue_identity, q_max=_cap(n_max, 8)),
    ]
    return _run_verification(args, tasks)


def _cmd_eisenstein_verify(args):
    n_max = _effective(args, "n_max", int)
    tol = _tolerance(args)
    kwargs = {"n_max": _cap(n_max, 24)}
    if tol is not None:
        kwargs["slack"] = tol
    return _run_verification(args, [partial(verify.verify_eisenstein,
                                            **kwargs)])


def _cmd_verify_all(args):
    n_max = _effective(args, "n_max", int)
    tol = _tolerance(args)
    return _run_verification(args, verify._tasks(n_max, grid_tol=tol))


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, config=True, output=True):
    if config:
        sub.add_argument("--config", help="key=value preset file")
    if output:
        sub.add_argument("--output", help="write the payload here instead "
                                          "of stdout")


def _add_verify_flags(sub):
    sub.add_argument("--n-max", dest="n_max", type=int,
                     help="cap the leading grid size of every sweep")
    sub.add_argument("--jobs", type=int, help="worker processes (default 1)")
    sub.add_argument("--tol", type=float,
                     help="override the sweep's main tolerance "
                          "(default from $%s)" % TOLERANCE_ENV)
    _add_common(sub)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cuspsums",
        description="Kloosterman sums at Atkin-Lehner cusp pairs, cusp "
                    "classification, and Eisenstein coefficients.")
    parser.add_argument("--version", action="version",
                        version="cuspsums " + __version__)
    top = parser.add_subparsers(dest="command", required=True)

    cusps = top.add_parser("cusps", help="cusp classification and scaling")
    cusps_sub = cusps.add_subparsers(dest="subcommand", required=True)

    c_list = cusps_sub.add_parser("list", help="inequivalent cusps of a level")
    c_list.add_argument("--N", type=int, required=True)
    c_list.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(c_list, config=False)
    c_list.set_defaults(func=_cmd_cusps_list)

    c_equiv = cusps_sub.add_parser("equiv", help="test cusp equivalence")
    c_equiv.add_argument("--N", type=int, required=True)
    c_equiv.add_argument("--a", required=True, help="cusp, e.g. 2/3 or inf")
    c_equiv.add_argument("--b", required=True)
    _add_common(c_equiv, config=False)
    c_equiv.set_defaults(func=_cmd_cusps_equiv)

    c_scal = cusps_sub.add_parser("scaling",
                                  help="scaling matrix and stabilizer")
    c_scal.add_argument("--N", type=int, required=True)
    c_scal.add_argument("--w", type=int, required=True,
                        help="denominator of the cusp 1/w")
    c_scal.add_argument("--atkin-lehner", action="store_true",
                        help="use the Atkin-Lehner scaling matrix")
    _add_common(c_scal, config=False)
    c_scal.set_defaults(func=_cmd_cusps_scaling)

    kl = top.add_parser("kloosterman", help="generalized Kloosterman sums")
    kl_sub = kl.add_subparsers(dest="subcommand", required=True)

    k_eval = kl_sub.add_parser("eval", help="one sum, closed form or oracle")
    k_eval.add_argument("--pquv", type=_parse_pquv, required=True,
                        help="level factors p,q,u,v (cusps 1/pu and 1/pv)")
    k_eval.add_argument("--m", type=int, required=True)
    k_eval.add_argument("--n", type=int, required=True)
    k_eval.add_argument("--c", type=int, required=True,
                        help="integer part of the modulus c*sqrt(uv)")
    k_eval.add_argument("--chi", help="character exponents, e.g. 1,0 "
                                      "(default principal)")
    k_eval.add_argument("--oracle", action="store_true",
                        help="evaluate by double-coset enumeration")
    k_eval.add_argument("--lift", type=int, default=0,
                        help="shift the uv-inverse lift (value invariant)")
    _add_common(k_eval, config=False)
    k_eval.set_defaults(func=_cmd_kloosterman_eval)

    k_table = kl_sub.add_parser("table", help="values over allowed moduli")
    k_table.add_argument("--pquv", type=_parse_pquv, required=True)
    k_table.add_argument("--m", type=_parse_int_list, required=True,
                         help="comma-separated m values")
    k_table.add_argument("--n", type=_parse_int_list, required=True)
    k_table.add_argument("--c-max", dest="c_max", type=int,
                         help="largest modulus integer part (default 36)")
    k_table.add_argument("--chi")
    k_table.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(k_table)
    k_table.set_defaults(func=_cmd_kloosterman_table)

    k_verify = kl_sub.add_parser("verify", help="kloosterman sweeps")
    _add_verify_flags(k_verify)
    k_verify.set_defaults(func=_cmd_kloosterman_verify)

    ei = top.add_parser("eisenstein", help="Eisenstein Fourier coefficients")
    ei_sub = ei.add_subparsers(dest="subcommand", required=True)

    e_phi = ei_sub.add_parser("phi", help="coefficient phi(n, u)")
    e_phi.add_argument("--N", type=int, required=True)
    e_phi.add_argument("--r", type=int, required=True,
                       help="unitary divisor: the series cusp is 1/r")
    e_phi.add_argument("--w", type=int, required=True,
                       help="denominator of the observation cusp 1/w")
    e_phi.add_argument("--n", type=_parse_int_list, required=True,
                       help="frequency, or comma list for CSV batch output")
    e_phi.add_argument("--u-re", dest="u_re", type=float, required=True)
    e_phi.add_argument("--u-im", dest="u_im", type=float, default=0.0)
    e_phi.add_argument("--direct", action="store_true",
                       help="truncated series instead of the closed form")
    e_phi.add_argument("--X", type=int, help="series truncation (default "
                                             "100000)")
    e_phi.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(e_phi)
    e_phi.set_defaults(func=_cmd_eisenstein_phi)

    e_verify = ei_sub.add_parser("verify", help="eisenstein sweep")
    _add_verify_flags(e_verify)
    e_verify.set_defaults(func=_cmd_eisenstein_verify)

    v_all = top.add_parser("verify", help="all verification sweeps")
    v_all_sub = v_all.add_subparsers(dest="subcommand", required=True)
    v_run = v_all_sub.add_parser("all", help="run every sweep")
    _add_verify_flags(v_run)
    v_run.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        args._presets = _read_config(args.config)
    label = args.command + (" " + args.subcommand
                            if getattr(args, "subcommand", None) else "")
    _metadata(label)
    try:
        return args.func(args)
    except (ValueError, AssertionError, ArithmeticError) as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
