"""Command-line interface.

Prints JSON by default (rationals as "num/den" strings) or ``key: value``
lines with --pretty. Exit status: 0 on success, 1 when a certificate fails
verification or a search is exhausted, 2 for usage and domain errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import alexander as alex
from . import classify, hypbounds, invariants, knotdb, search
from .arith import format_rational
from .errors import DomainError, RecordError


class _Failed(Exception):
    """The command ran but a verification did not pass."""

    def __init__(self, payload):
        self.payload = payload


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pair(text: str) -> tuple[int, int]:
    values = _csv_ints(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}")
    return values[0], values[1]


def _resolve_link(arg: str) -> knotdb.LinkRecord:
    if os.path.exists(arg):
        with open(arg, "rb") as fh:
            records = knotdb.load_records(fh.read())
    else:
        records = knotdb.embedded_fixtures()
        records = [r for r in records if r.name == arg]
        if not records:
            raise DomainError(f"no fixture named {arg!r} and no such file")
    links = [r for r in records if isinstance(r, knotdb.LinkRecord)]
    if not links:
        raise DomainError(f"{arg!r} contains no link record")
    return links[0]


def _nonzero_range(bound: int) -> list[int]:
    return [k for k in range(-abs(bound), abs(bound) + 1) if k]


# -- command implementations ----------------------------------------------------

def cmd_lens_cw(args):
    return {"lambda": format_rational(invariants.cw_lens(args.P, args.Q))}


def cmd_surgery_cw(args):
    return {"lambda": format_rational(invariants.cw_surgery(args.DD, args.P, args.Q))}


def cmd_d_inv(args):
    if args.v is None:
        return {"d": format_rational(invariants.d_lens(args.P, args.Q, args.I))}
    return {"d": format_rational(invariants.d_surgery(args.P, args.Q, args.I, args.v))}


def cmd_d_gap(args):
    return {"gap": format_rational(invariants.d_gap_max(args.P, args.QP))}


def cmd_alex_twist(args):
    link = _resolve_link(args.link)
    poly = alex.twist_family_alex(link.multivariable, args.component, args.k)
    return {
        "link": link.name,
        "component": args.component,
        "k": args.k,
        "alexander": alex.poly1_to_json(poly),
        "normalized": alex.poly1_to_json(alex.normalize_positive(poly)) if poly else [],
    }


def cmd_distinct_matrix(args):
    link = _resolve_link(args.link)
    m_bound, n_bound = args.range
    table = alex.distinctness_matrix(link.multivariable, _nonzero_range(m_bound), _nonzero_range(n_bound))
    return {
        "link": link.name,
        "m_range": [-abs(m_bound), abs(m_bound)],
        "n_range": [-abs(n_bound), abs(n_bound)],
        "pairs": len(table),
        "equal_up_to_units": [[m, n] for (m, n), same in sorted(table.items()) if same],
    }


def cmd_moser(args):
    if args.mirror:
        data = classify.mirror_surgery(args.A, args.B, args.P, args.Q)
    else:
        data = classify.moser_classify(args.A, args.B, args.P, args.Q)
    out = data.to_json()
    out["lens_space"] = classify.is_lens_space(data)
    return out


def cmd_cable_reduce(args):
    slope = classify.cable_fill_reduce(args.R, args.S, args.P, args.Q)
    return {"slope": None if slope is None else str(slope)}


def cmd_cable_slopes(args):
    slopes = sorted(classify.enumerate_cable_slopes(args.max_p, args.max_s),
                    key=lambda s: (s.p, abs(s.q), s.q))
    return {"count": len(slopes), "slopes": [str(s) for s in slopes]}


def cmd_link_form(args):
    return {"value": format_rational(search.linking_form_value(args.P, args.Q, args.A, args.B))}


def cmd_residue_check(args):
    square = search.residue_obstruction(args.P, args.Q, args.QP)
    return {"square": square, "obstructed": not square}


def cmd_find_slopes(args):
    params = search.SearchParams(C=args.C, q=args.q, torus=args.torus, prime_limit=args.limit,
                                 count=args.count, q1mod4=args.q1mod4)
    result = search.find_candidates(params)
    reports = [search.verify_certificate(c, args.C, args.q) for c in result.certificates]
    out = {
        "congruence": {"a": str(result.congruence.a), "m": str(result.congruence.m)},
        "exhausted": result.exhausted,
        "certificates": [c.to_json() for c in result.certificates],
        "verified": all(r.valid for r in reports),
    }
    if result.exhausted or not out["verified"]:
        raise _Failed(out)
    return out


def cmd_verify_cert(args):
    with open(args.FILE, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{args.FILE}: {exc}") from None
    raw = obj["certificates"] if isinstance(obj, dict) and "certificates" in obj else [obj]
    reports = [search.verify_certificate(search.SlopeCertificate.from_json(c), args.C, args.q) for c in raw]
    out = {"valid": all(r.valid for r in reports) and bool(reports),
           "reports": [r.to_json() for r in reports]}
    if not out["valid"]:
        raise _Failed(out)
    return out


def cmd_hyp_consts(args):
    consts = hypbounds.filling_constants(args.sys)
    return {"sys": args.sys, "c": consts.c, "D": consts.D, "five_D": hypbounds.safe_q_threshold(args.sys)}


def cmd_twist_slopes(args):
    family = search.nonchar_twist_slopes(args.l, args.m)
    out = {"l": args.l, "m": args.m, **family.describe()}
    if args.n is not None:
        out["n"] = args.n
        out["slope_n"] = str(family.slope(args.n))
        out["counterpart_n"] = str(family.counterpart(args.n))
    return out


def cmd_prop51(args):
    value = invariants.prop51_required_sum(args.P)
    return {"p": args.P, "required_sum": value, "obstructed": value is None}


def cmd_fixtures(args):
    return {"records": [r.to_json() for r in knotdb.embedded_fixtures()]}


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dehnkit", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positionals, help=None):
        p = sub.add_parser(name, help=help)
        for pos in positionals:
            p.add_argument(pos, type=int)
        p.set_defaults(func=func)
        return p

    add("lens-cw", cmd_lens_cw, "P", "Q", help="Casson-Walker invariant of L(P,Q)")
    add("surgery-cw", cmd_surgery_cw, "DD", "P", "Q", help="Casson-Walker invariant of K(P/Q)")
    p = add("d-inv", cmd_d_inv, "P", "Q", "I", help="d-invariant of L(P,Q) or of K(P/Q) with --v")
    p.add_argument("--v", type=_csv_ints, default=None, metavar="V0,V1,...")
    add("d-gap", cmd_d_gap, "P", "QP", help="max_j d(P,QP,j) - d(P,1,0)")

    p = add("alex-twist", cmd_alex_twist, help="Alexander polynomial of a twist-family knot")
    p.add_argument("--link", required=True, metavar="NAME|FILE")
    p.add_argument("--component", type=int, choices=(1, 2), required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("distinct-matrix", cmd_distinct_matrix, help="pairs (m,n) with equal twist-family polynomials")
    p.add_argument("--link", required=True, metavar="NAME|FILE")
    p.add_argument("--range", type=int, nargs=2, required=True, metavar=("M", "N"))

    p = add("moser", cmd_moser, "A", "B", "P", "Q", help="Seifert data of T(A,B)(P/Q)")
    p.add_argument("--mirror", action="store_true")
    add("cable-reduce", cmd_cable_reduce, "R", "S", "P", "Q", help="cable filling reduction")
    p = add("cable-slopes", cmd_cable_slopes, help="enumerate cable slopes")
    p.add_argument("--max-p", type=int, required=True)
    p.add_argument("--max-s", type=int, required=True)

    add("link-form", cmd_link_form, "P", "Q", "A", "B", help="linking form value on K(P/Q)")
    add("residue-check", cmd_residue_check, "P", "Q", "QP", help="is Q*QP a square mod P")

    p = add("find-slopes", cmd_find_slopes, help="search for certified slopes")
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--torus", type=_pair, default=None, metavar="A,B")
    p.add_argument("--q1mod4", action="store_true")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("verify-cert", help="re-verify certificates from a JSON file")
    p.add_argument("FILE")
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_verify_cert)

    p = add("hyp-consts", cmd_hyp_consts, help="hyperbolic filling constants c, D, 5D")
    p.add_argument("--sys", type=float, required=True)
    p = add("twist-slopes", cmd_twist_slopes, help="twist-family slope pairs")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    add("prop51", cmd_prop51, "P", help="integer-slope Casson-Walker obstruction")
    add("fixtures", cmd_fixtures, help="print the embedded knot and link records")
    return parser


def _render(obj, pretty: bool) -> str:
    if not pretty:
        return json.dumps(obj, separators=(",", ":"))
    lines = []
    for key, value in obj.items():
        text = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"{key}: {text}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
        code = 0
    except _Failed as failed:
        out, code = failed.payload, 1
    except (DomainError, RecordError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_render(out, args.pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())
