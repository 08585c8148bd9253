"""Command-line front end: configure a weight family and truncations, run the
computations and verification suites, emit tables and machine-readable reports.

Exit codes: 0 success, 1 configuration error, 2 resource/budget error,
3 verification failure (any check in the requested suite came back false).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import adaptedbasis, correlators, cutjoin, hurwitz, taufn
from .errors import ConfigurationError, HurwitzTauError, ResourceError
from .exactalg import BetaSeries
from .weights import WeightFamily, belyi, exponential, quantum, signed

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RESOURCE = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # config errors exit 1, not argparse's default 2
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"not a rational: {text!r}") from exc


def _fraction_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(_fraction(part) for part in text.split(","))


def make_family(args) -> WeightFamily:
    name = args.family
    if name == "belyi":
        return belyi()
    if name == "exp":
        return exponential()
    if name == "signed":
        return signed()
    if name == "quantum":
        if args.q is None:
            raise ConfigurationError("--family quantum needs --q")
        return quantum(_fraction(args.q))
    if name == "finite":
        return WeightFamily("finite_c", c=_fraction_list(args.c or ""))
    if name == "dual":
        return WeightFamily("dual_finite_c", c=_fraction_list(args.c or ""))
    raise ConfigurationError(f"unknown family {name!r}")


def _threads_cap() -> int:
    raw = os.environ.get("HURWITZ_TAU_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigurationError("HURWITZ_TAU_THREADS must be an integer") from exc
    if cap < 1:
        raise ConfigurationError("HURWITZ_TAU_THREADS must be >= 1")
    return cap


def serialize(obj):
    """JSON-ready form: rationals as 'p/q' strings, exponent keys as arrays."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, BetaSeries):
        return {"beta_series": [str(c) for c in obj.coeffs]}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: serialize(v) for k, v in obj.items()}
        return [
            {"key": serialize(k), "value": serialize(v)}
            for k, v in sorted(obj.items(), key=lambda kv: json.dumps(serialize(kv[0])))
        ]
    if isinstance(obj, (list, tuple)):
        return [serialize(x) for x in obj]
    if hasattr(obj, "parts"):
        return list(obj.parts)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "cells"):
        return {
            "window": [obj.zlo, obj.zhi, obj.wlo, obj.whi],
            "cells": serialize(obj.cells),
        }
    if hasattr(obj, "coeffs") and hasattr(obj, "lo"):
        return {"lo": obj.lo, "coeffs": [serialize(c) for c in obj.coeffs]}
    return str(obj)


def config_dict(args, fields) -> dict:
    out = {"command": args.command, "threads_cap": _threads_cap()}
    for f in fields:
        out[f] = getattr(args, f, None)
    return out


def emit(args, config: dict, result: dict) -> None:
    payload = {
        "config": config,
        "config_hash": hashlib.sha256(
            json.dumps(config, sort_keys=True).encode()
        ).hexdigest(),
        "result": serialize(result),
    }
    fmt = args.format
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _to_csv(result)
    else:
        text = _to_text(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(result: dict) -> str:
    lines = []
    if "entries" in result:
        lines.append("mu,nu,d,value,connected")
        for row in result["entries"]:
            mu = " ".join(str(p) for p in row["mu"])
            nu = " ".join(str(p) for p in row["nu"])
            lines.append(
                f"{mu},{nu},{row['d']},{row['value']},{row.get('connected', '')}"
            )
    else:
        lines.append("check,ok")
        for key, value in sorted(result.items()):
            if isinstance(value, dict) and "ok" in value:
                lines.append(f"{key},{value['ok']}")
            elif isinstance(value, bool):
                lines.append(f"{key},{value}")
    return "\n".join(lines) + "\n"


def _to_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _report_ok(result) -> bool:
    if isinstance(result, dict):
        if "ok" in result and result["ok"] is False:
            return False
        if "equal" in result and result["equal"] is False:
            return False
        return all(_report_ok(v) for k, v in result.items() if isinstance(v, (dict, list)))
    if isinstance(result, list):
        return all(_report_ok(v) for v in result)
    return True


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_hurwitz(args) -> int:
    family = make_family(args)
    config = config_dict(args, ["family", "c", "q", "N", "dmax", "connected", "verify_routes"])
    table = hurwitz.build_table(family, args.N, args.dmax, connected=args.connected)
    rows = []
    for (mu, nu, d), value in sorted(
        table.entries.items(), key=lambda kv: (kv[0][0].parts, kv[0][1].parts, kv[0][2])
    ):
        row = {"mu": list(mu.parts), "nu": list(nu.parts), "d": d, "value": str(value)}
        if table.connected is not None:
            conn = table.connected.get((mu, nu, d))
            if conn is not None:
                row["connected"] = str(conn)
        rows.append(row)
    result = {"route": table.route, "entries": rows}
    if args.connected and table.connected is not None:
        extra = []
        for (mu, nu, d), value in sorted(
            table.connected.items(), key=lambda kv: (kv[0][0].parts, kv[0][1].parts, kv[0][2])
        ):
            if (mu, nu, d) not in table.entries:
                extra.append(
                    {"mu": list(mu.parts), "nu": list(nu.parts), "d": d, "connected": str(value)}
                )
        result["connected_only_entries"] = extra
    ok = True
    if args.verify_routes:
        report = hurwitz.verify_routes(family, n_max=min(args.N, 4), d_max=min(args.dmax, 3))
        result["route_verification"] = report
        ok = report["ok"]
    emit(args, config, result)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_tau(args) -> int:
    family = make_family(args)
    config = config_dict(args, ["family", "c", "q", "wmax", "dmax", "probe"])
    tau = taufn.build_tau(family, args.wmax, args.dmax)
    from .exactalg import exp_weight

    grades_ok = all(
        exp_weight(t) == exp_weight(s) == g for (t, s, g) in tau.body.terms
    )
    result = {
        "constant_term_is_one": tau.body.constant_term() == BetaSeries.one(args.dmax),
        "grade_consistency": {"ok": grades_ok},
        "terms": {
            k: v for k, v in sorted(tau.body.terms.items())
        },
    }
    if args.probe:
        residual = taufn.hirota_residual(tau, args.probe)
        nonzero = [k for k, v in residual.items() if v]
        result["hirota"] = {
            "ok": not nonzero,
            "probe_degree": args.probe,
            "monomials_checked": len(residual),
            "first_counterexample": serialize(nonzero[0]) if nonzero else None,
        }
    emit(args, config, result)
    return EXIT_OK if _report_ok(result) else EXIT_VERIFY


def cmd_basis(args) -> int:
    family = make_family(args)
    config = config_dict(
        args, ["family", "c", "q", "beta", "gamma", "s", "k_lo", "k_hi", "depth"]
    )
    beta = None if args.beta == "series" else _fraction(args.beta)
    sigma = _fraction_list(args.sigma) if args.sigma else None
    b = adaptedbasis.build_basis(
        family,
        beta,
        _fraction(args.gamma),
        s=_fraction_list(args.s),
        k_range=(args.k_lo, args.k_hi),
        depth=args.depth,
        sigma=sigma,
        d_max=args.dmax if beta is None else None,
    )
    euler = adaptedbasis.euler_P(b)
    result = {
        "window": {"k_lo": b.k_lo, "k_hi": b.k_hi, "depth": b.depth},
        "pairing": adaptedbasis.pairing_check(b),
        "ladder": adaptedbasis.ladder_R(b),
        "kac_schwarz": adaptedbasis.kac_schwarz_check(b),
        "quantum_curve": adaptedbasis.quantum_curve_residual(b),
        "euler": {k: v for k, v in euler.items() if k in ("ok", "checks", "failures")},
        "euler_matrices": {"Pt+": euler["Pt+"], "Pt-": euler["Pt-"]},
    }
    if family.kind == "finite_c":
        rq = adaptedbasis.recursion_Q(b)
        result["recursion_Q"] = {
            k: v for k, v in rq.items() if k in ("ok", "checks", "failures", "band")
        }
        result["recursion_matrices"] = {"Q+": rq["Q+"], "Q-": rq["Q-"]}
        result["general_Q_cross_check"] = adaptedbasis.general_Q_cross_check(b, 6)
    emit(args, config, result)
    return EXIT_OK if _report_ok(result) else EXIT_VERIFY


def cmd_kernel(args) -> int:
    family = make_family(args)
    config = config_dict(
        args,
        ["family", "c", "q", "beta", "gamma", "s", "window", "check_finiteness", "dmax"],
    )
    beta = None if args.beta == "series" else _fraction(args.beta)
    gamma = _fraction(args.gamma)
    window = tuple(int(x) for x in args.window.split(","))
    if len(window) != 4:
        raise ConfigurationError("--window needs zlo,zhi,wlo,whi")
    if args.sigma:
        sig = _fraction_list(args.sigma)
    elif beta is not None:
        sig = tuple(x / beta for x in _fraction_list(args.s))
    else:
        raise ConfigurationError("series mode needs --sigma")
    d_max = args.dmax if beta is None else None
    depth = min(window[0], window[2]) - 2
    k_hi = max(1, -window[0]) + 1
    k_lo = min(0, 1 + window[0]) - 1
    b = adaptedbasis.build_basis(
        family, beta, gamma, sigma=sig, k_range=(k_lo, k_hi), depth=depth,
        d_max=d_max, s=() if beta is None else tuple(x * beta for x in sig),
    )
    k_tau = correlators.K2_via_tau(family, beta, gamma, sig, window, d_max=d_max)
    k_bas, info = correlators.K2_via_basis(b, window)
    result = {
        "kernel_routes_equal": {
            "ok": correlators.kernels_equal(k_tau, k_bas, b.ring),
            "j_cutoff": info["j_cutoff"],
        },
        "kernel": k_tau,
    }
    if args.check_finiteness:
        if family.kind != "finite_c":
            raise ConfigurationError("--check-finiteness needs a polynomial family")
        rank_window = (max(window[0], -4), -1, max(window[2], -3), min(window[3], 3))
        cd = correlators.cd_kernel(b, rank_window)
        result["cd"] = {
            "ok": cd["ok"],
            "rank": cd["rank"],
            "finiteness_failures": cd["finiteness_failures"],
            "identity_failures": cd["identity_failures"],
        }
        gen = correlators.gen_A(family, sig, (6, 6), beta_val=1 if beta is None else beta)
        A = correlators.cd_matrix(family, 1 if beta is None else beta, sig, 6)
        result["gen_A_matches"] = {
            "ok": all(gen[(i, j)] == A[(i, j)] for i in range(7) for j in range(7))
        }
        result["h_orthogonality"] = {
            "ok": correlators.h_orthogonality(sig, 3, 12)["ok"]
        }
    emit(args, config, result)
    return EXIT_OK if _report_ok(result) else EXIT_VERIFY


def cmd_curve(args) -> int:
    family = make_family(args)
    config = config_dict(args, ["family", "c", "q", "gamma", "s"])
    curve = adaptedbasis.classical_curve(family, _fraction_list(args.s), _fraction(args.gamma))
    result = {
        "family": curve.family_label,
        "polynomial": curve.poly,
        "symbolic": curve.symbolic,
    }
    emit(args, config, result)
    return EXIT_OK


def cmd_cutjoin(args) -> int:
    family = make_family(args)
    config = config_dict(args, ["family", "c", "q", "wmax", "dmax", "resolve_index"])
    result = {
        "eigen": cutjoin.schur_eigen_check(min(args.wmax + 2, 6), 8),
        "reconstruction": {
            k: v
            for k, v in cutjoin.reconstruct_tau(family, args.wmax, args.dmax).items()
            if k != "rebuilt"
        },
        "pde": cutjoin.pde_check(family, args.wmax, args.dmax),
    }
    if family.kind == "finite_c" and len(family.c) <= 2:
        result["single_hurwitz_rep"] = cutjoin.build_Vk_and_single_rep(family, min(args.wmax, 3))
    if args.resolve_index:
        result["exponential_index"] = cutjoin.resolve_exponential_index(3, 3)
    emit(args, config, result)
    return EXIT_OK if _report_ok(result) else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser(suppress_defaults: bool = False) -> _Parser:
    parser = _Parser(prog="hurwitztau", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(p, *names, **kw):
        if suppress_defaults and "default" in kw:
            kw["default"] = argparse.SUPPRESS
        p.add_argument(*names, **kw)

    def common(p):
        add(p, "--family", default="belyi",
            choices=["belyi", "exp", "signed", "quantum", "finite", "dual"])
        add(p, "--c", default=None, help="comma-separated rational c-list for finite/dual")
        add(p, "--q", default=None, help="rational q for the quantum family")
        add(p, "--format", default="json", choices=["json", "csv", "text"])
        add(p, "--out", default=None, help="write output to this file instead of stdout")
        p.add_argument("--config", help="JSON file with defaults; flags override")

    p = sub.add_parser("hurwitz", help="weighted Hurwitz number tables")
    common(p)
    add(p, "--N", type=int, default=3)
    add(p, "--dmax", type=int, default=3)
    add(p, "--connected", action="store_true", default=False)
    add(p, "--verify-routes", action="store_true", dest="verify_routes", default=False)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("tau", help="build the tau-series and run its invariants")
    common(p)
    add(p, "--wmax", type=int, default=4)
    add(p, "--dmax", type=int, default=3)
    add(p, "--probe", type=int, default=0, help="Hirota probe degree (0 = skip)")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("basis", help="adapted-basis verification suite")
    common(p)
    add(p, "--beta", default="1/21")
    add(p, "--gamma", default="1")
    add(p, "--s", default="1/21")
    add(p, "--sigma", default=None, help="series mode: sigma = s/beta directly")
    add(p, "--k-lo", type=int, default=-3, dest="k_lo")
    add(p, "--k-hi", type=int, default=5, dest="k_hi")
    add(p, "--depth", type=int, default=-10)
    add(p, "--dmax", type=int, default=4)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("kernel", help="pair correlator and Christoffel-Darboux suite")
    common(p)
    add(p, "--beta", default="1/21")
    add(p, "--gamma", default="1")
    add(p, "--s", default="1/21")
    add(p, "--sigma", default=None)
    add(p, "--window", default="-5,-1,-4,4")
    add(p, "--dmax", type=int, default=4)
    add(p, "--check-finiteness", action="store_true", dest="check_finiteness", default=False)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("curve", help="classical spectral curve")
    common(p)
    add(p, "--gamma", default="1")
    add(p, "--s", default="1")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("cutjoin", help="cut-and-join operator suite")
    common(p)
    add(p, "--wmax", type=int, default=4)
    add(p, "--dmax", type=int, default=3)
    add(p, "--resolve-index", action="store_true", dest="resolve_index", default=False)
    p.set_defaults(func=cmd_cutjoin)
    return parser


def _merge_config_file(args, explicitly_given) -> None:
    if not getattr(args, "config", None):
        return
    with open(args.config, encoding="utf-8") as fh:
        defaults = json.load(fh)
    for key, value in defaults.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ConfigurationError(f"unknown config key {key!r}")
        if attr not in explicitly_given:
            setattr(args, attr, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        # learn which flags were given explicitly so they override the file
        given = vars(build_parser(suppress_defaults=True).parse_args(argv))
        _merge_config_file(args, set(given))
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except HurwitzTauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
