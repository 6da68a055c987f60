"""Batch command-line surface with JSON input and output.

Every command is deterministic: identical invocations produce
byte-identical reports.  Exit codes: 0 success, 2 parse error,
3 precondition violation, 4 hypothesis failure, 5 falsification event
(an invariant the library asserts was violated by an exact computation).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import lefschetz as lf
from . import linalg, monomials, subdivision
from . import complexes
from .errors import FalsificationError, HypothesisError, LefkitError, ParseError
from .monomials import ArtinianFrame, parse_polynomial


def _load_complex(path):
    return complexes.load_complex(path)


def _parse_caps(text):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad caps {text!r}") from exc
    return parts[0] if len(parts) == 1 else parts


def _parse_forms(text):
    """Semicolon-separated polynomials, or a JSON file of strings."""
    if text.endswith(".json"):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                items = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read {text}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"{text}: {exc}") from exc
        if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
            raise ParseError(f"{text} must hold a JSON array of polynomial strings")
        return [parse_polynomial(s) for s in items]
    return [parse_polynomial(piece) for piece in text.split(";") if piece.strip()]


def _frac(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _maybe_screen(args, matrix):
    if getattr(args, "screen", None):
        return {"modulus": args.screen, "rank_mod_p": linalg.rank_mod_p(matrix, args.screen)}
    return None


def _wlp_payload(report, frame, args):
    per = []
    L = frame.linear_form()
    for p in report.per_degree:
        item = {
            "degree": p.k,
            "dim_from": p.dim_from,
            "dim_to": p.dim_to,
            "rank": p.rank,
            "full_rank": p.full_rank,
            "failure_mode": p.failure_mode,
        }
        if args.embed_matrices or getattr(args, "screen", None):
            mat = monomials.multiplication_matrix(frame, L, p.k)
            if args.embed_matrices:
                item["matrix"] = mat.to_json_dict()
            screen = _maybe_screen(args, mat)
            if screen:
                item["screen"] = screen
        per.append(item)
    return {"holds": report.holds, "socle_degree": report.socle_degree, "per_degree": per}


def cmd_info(args):
    cx = _load_complex(args.complex)
    profile = complexes.fh_profile(cx)
    cm = complexes.is_cohen_macaulay(cx)
    pm = complexes.pseudomanifold_status(cx)
    hom = complexes.homology(cx)
    try:
        coloring = complexes.balanced_coloring(cx)
    except LefkitError:
        coloring = None
    payload = {
        "name": cx.name,
        "dim": cx.dim,
        "facets": [sorted(f) for f in cx.facets],
        "f_vector": list(profile.f),
        "h_vector": list(profile.h),
        "h_degree": profile.h_degree,
        "cohen_macaulay": {
            "holds": cm.holds,
            "witness": None
            if cm.holds
            else {"face": sorted(cm.witness_face), "index": cm.witness_index},
        },
        "pseudomanifold": {
            "pure": pm.pure,
            "strongly_connected": pm.strongly_connected,
            "max_ridge_degree": pm.max_ridge_degree,
            "boundary_facets": [sorted(f) for f in pm.boundary.facets] if pm.boundary else [],
            "orientable": pm.orientable,
        },
        "homology_ranks": list(hom.ranks),
        "homology_sphere": complexes.is_homology_sphere(cx),
        "balanced_coloring": None
        if coloring is None
        else {str(v): c for v, c in sorted(coloring.assignment.items())},
    }
    _emit(args, payload)
    return 0


def cmd_hf(args):
    cx = _load_complex(args.complex)
    if args.degrees:
        degrees = [int(d) for d in args.degrees.split(",")]
    else:
        degrees = None
    payload = {"name": cx.name, "caps": args.caps}
    if args.forms:
        forms = _parse_forms(args.forms)
        extra = list(forms)
        if args.caps:
            caps = _parse_caps(args.caps)
            frame = ArtinianFrame(cx, caps)
            extra = frame.power_generators() + extra
        if degrees is None:
            degrees = list(range(lf._vanishing_bound(cx, extra) + 1))
        values = [lf.quotient_hilbert(cx, extra, k) for k in degrees]
        payload["forms"] = [str(f) for f in forms]
    else:
        if not args.caps:
            raise ParseError("hf needs --caps, --forms, or both")
        frame = ArtinianFrame(cx, _parse_caps(args.caps))
        if degrees is None:
            degrees = list(range(frame.socle_degree() + 1))
        values = [monomials.hilbert_function(frame, k) for k in degrees]
    payload["degrees"] = degrees
    payload["values"] = values
    _emit(args, payload)
    return 0


def cmd_wlp(args):
    cx = _load_complex(args.complex)
    frame = ArtinianFrame(cx, _parse_caps(args.caps))
    report = lf.wlp_check(frame)
    _emit(args, {"name": cx.name, "caps": args.caps, "wlp": _wlp_payload(report, frame, args)})
    return 0


def cmd_slp(args):
    cx = _load_complex(args.complex)
    frame = ArtinianFrame(cx, _parse_caps(args.caps))
    report = lf.slp_check(frame)
    per = [
        {
            "power": j,
            "degree": i,
            "dim_from": a,
            "dim_to": b,
            "rank": r,
            "full_rank": full,
        }
        for (j, i, a, b, r, full) in report.per_pair
    ]
    _emit(
        args,
        {
            "name": cx.name,
            "caps": args.caps,
            "slp": {"holds": report.holds, "socle_degree": report.socle_degree, "per_pair": per},
        },
    )
    return 0


def cmd_kernel(args):
    cx = _load_complex(args.complex)
    frame = ArtinianFrame(cx, _parse_caps(args.caps))
    piece = lf.kernel_transpose_basis(frame, args.degree)
    payload = {
        "name": cx.name,
        "caps": args.caps,
        "degree": args.degree,
        "dimension": piece.dimension,
        "basis": [str(p) for p in piece.basis],
    }
    if args.embed_matrices or args.screen:
        mat = monomials.multiplication_matrix(frame, frame.linear_form(), args.degree - 1)
        if args.embed_matrices:
            payload["matrix"] = mat.to_json_dict()
        screen = _maybe_screen(args, mat)
        if screen:
            payload["screen"] = screen
    # every transpose-kernel element obeys the divergence degree bound
    for p in piece.basis:
        rescaled = monomials.divided_power_rescale(p)
        cap = max(dict(frame.caps).values())
        try:
            ok = lf.divergence_bound_check(rescaled, cap, n=len(cx.vertices))
        except HypothesisError as exc:
            raise FalsificationError(f"kernel element fails divergence hypotheses: {exc}")
        if not ok:
            raise FalsificationError("kernel element violates the divergence degree bound")
    _emit(args, payload)
    return 0


def cmd_hesd(args):
    cx = _load_complex(args.complex)
    sub = subdivision.hesd(cx, args.r)
    _emit(args, sub.to_json_dict())
    return 0


def cmd_incidence(args):
    cx = _load_complex(args.complex)
    inc = subdivision.incidence_complex(cx, args.i)
    _emit(args, inc.to_json_dict())
    return 0


def cmd_spread(args):
    if bool(args.complex) == bool(args.ideal):
        raise ParseError("spread needs exactly one of --complex or --ideal")
    if args.complex:
        cx = _load_complex(args.complex)
        ideal = monomials.facet_ideal(cx)
        source = {"complex": cx.name or args.complex, "ideal": "facet ideal"}
    else:
        forms = _parse_forms(args.ideal)
        ideal = monomials.IdealPresentation.make(tuple(forms))
        source = {"ideal": [str(g) for g in ideal.generators]}
    log = monomials.log_matrix(ideal)
    spread = monomials.analytic_spread(ideal)
    payload = {
        "source": source,
        "generators": [str(m) for m in log.row_labels],
        "analytic_spread": spread,
        "maximal": spread == len(ideal.generators),
    }
    if args.embed_matrices:
        payload["log_matrix"] = log.matrix.to_json_dict()
    screen = _maybe_screen(args, log.matrix)
    if screen:
        payload["screen"] = screen
    _emit(args, payload)
    return 0


def cmd_collapse(args):
    cx = _load_complex(args.complex)
    cert = complexes.collapse_search(cx, args.target, args.budget)
    if cert is None:
        payload = {"name": cx.name, "target_dim": args.target, "found": False}
    else:
        complexes.replay_collapse(cx, cert)
        payload = {
            "name": cx.name,
            "target_dim": args.target,
            "found": True,
            "steps": [[sorted(free), sorted(coface)] for free, coface in cert.steps],
            "residual_facets": [sorted(f) for f in cert.residual.facets],
            "residual_dim": cert.residual.dim,
        }
    _emit(args, payload)
    return 0


def cmd_colored_sop(args):
    cx = _load_complex(args.complex)
    coloring = complexes.balanced_coloring(cx)
    if coloring is None:
        raise HypothesisError("complex is not balanced: no proper (d+1)-coloring exists")
    cand = lf.colored_sop(cx, coloring)
    _emit(
        args,
        {
            "name": cx.name,
            "coloring": {str(v): c for v, c in sorted(coloring.assignment.items())},
            "sop": [str(t) for t in cand.theta],
            "total_degree_t": cand.total_degree_t,
        },
    )
    return 0


def cmd_dual_gen(args):
    cx = _load_complex(args.complex)
    coloring = complexes.balanced_coloring(cx)
    if coloring is None:
        raise HypothesisError("complex is not balanced")
    F = lf.colored_dual_generator(cx, coloring)
    _emit(args, {"name": cx.name, "dual_generator": str(F)})
    return 0


def cmd_sop_verify(args):
    cx = _load_complex(args.complex)
    theta = _parse_forms(args.sop)
    f = parse_polynomial(args.f)
    cand = lf.SopCandidate.make(theta)
    report = lf.verify_unexpected(cx, cand, f, _parse_caps(args.caps), args.t)
    payload = {
        "name": cx.name,
        "sop": [str(t) for t in theta],
        "f": str(f),
        "caps": args.caps,
        "t": args.t,
        "conditions": {
            "U1": report.u1,
            "U2": report.u2,
            "U3": report.u3,
            "U4": report.u4,
            "U5": report.u5,
        },
        "witnesses": report.witnesses,
        "overall": report.overall,
    }
    _emit(args, payload)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lefkit",
        description="Exact Lefschetz-property toolkit for Stanley-Reisner rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--embed-matrices", action="store_true")
        p.add_argument("--screen", type=int, default=None, metavar="P",
                       help="also report ranks mod the prime P (screening only)")
        return p

    p = add("info", cmd_info, help="f/h-vectors, CM, pseudomanifold, homology, balancedness")
    p.add_argument("--complex", required=True)

    p = add("hf", cmd_hf, help="Hilbert function of the capped algebra or a quotient")
    p.add_argument("--complex", required=True)
    p.add_argument("--caps", default=None)
    p.add_argument("--degrees", default=None, help="comma-separated degrees")
    p.add_argument("--forms", default=None, help="semicolon-separated forms or a .json file")

    p = add("wlp", cmd_wlp, help="weak Lefschetz report")
    p.add_argument("--complex", required=True)
    p.add_argument("--caps", required=True)

    p = add("slp", cmd_slp, help="strong Lefschetz report")
    p.add_argument("--complex", required=True)
    p.add_argument("--caps", required=True)

    p = add("kernel", cmd_kernel, help="transpose-kernel basis at a degree")
    p.add_argument("--complex", required=True)
    p.add_argument("--caps", required=True)
    p.add_argument("--degree", type=int, required=True)

    p = add("hesd", cmd_hesd, help="half-hollow edgewise subdivision")
    p.add_argument("--complex", required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("incidence", cmd_incidence, help="incidence complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--i", type=int, required=True)

    p = add("spread", cmd_spread, help="analytic spread of a monomial or facet ideal")
    p.add_argument("--complex", default=None)
    p.add_argument("--ideal", default=None, help="semicolon-separated monomials or a .json file")

    p = add("collapse", cmd_collapse, help="search for a collapse certificate")
    p.add_argument("--complex", required=True)
    p.add_argument("--target", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**6)

    p = add("colored-sop", cmd_colored_sop, help="colored sop of a balanced complex")
    p.add_argument("--complex", required=True)

    p = add("dual-gen", cmd_dual_gen, help="Macaulay dual generator of the colored-sop quotient")
    p.add_argument("--complex", required=True)

    p = add("sop-verify", cmd_sop_verify, help="full (U1)-(U5) unexpectedness report")
    p.add_argument("--complex", required=True)
    p.add_argument("--sop", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--caps", required=True)
    p.add_argument("--t", type=int, required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except LefkitError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True)
            + "\n"
        )
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(
            json.dumps({"error": "IOError", "message": str(exc)}, sort_keys=True) + "\n"
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
