"""Command-line front end.

Subcommands: density, spherical, ideal, plancherel, verify.  All numeric
output is serialized exactly (integer or num/den strings), never as floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import counting, density, elemsym, plancherel, spherical, verify
from .quatring import RingParams
from .ratfunc import format_fraction


def _parse_label(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


def _budget(args) -> int:
    env = os.environ.get("QUATHERM_BUDGET")
    if args.budget is not None:
        return args.budget
    if env:
        return int(env)
    return counting.DEFAULT_BUDGET


def _emit(payload, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_text(payload)
    return 0


def _emit_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            _emit_text(v, indent)
            if isinstance(v, dict):
                print()
    else:
        print(f"{pad}{payload}")


# -- density -----------------------------------------------------------------------


def cmd_density(args) -> int:
    alpha = _parse_label(args.alpha)
    beta = _parse_label(args.beta) if args.beta else alpha
    levels = [int(x) for x in args.ell.split(",")]
    p = args.p
    n, m = len(beta), len(alpha)
    if len(levels) == 1 and levels[0] > 1:
        # add the level below for the stability flag when it is cheap
        below = levels[0] - 1
        if p ** (4 * below * m * n) <= (1 << 24):
            levels = [below, levels[0]]

    if args.method == "closed":
        if beta != alpha:
            print("closed formula available for the self-density only", file=sys.stderr)
            return 2
        val = density.density_self_closed(alpha)
        num, den = val.as_coeff_arrays()
        payload = {
            "alpha": list(alpha),
            "closed": {"num": num, "den": den, "display": str(val)},
            "value_at_p": format_fraction(val.eval_at(p)),
            "p": p,
        }
        return _emit(payload, args.format)

    entries = []
    for ell in levels:
        params = RingParams(p, ell) if not args.eps2 else RingParams(p, ell, args.eps2)
        bmat = density.build_gram(beta, params)
        amat = density.build_gram(alpha, params)
        if args.method == "convolve":
            cnt = density.count_reps_convolved(bmat, amat, primitive=args.primitive)
        else:
            cnt = density.count_reps(bmat, amat, primitive=args.primitive,
                                     budget=_budget(args))
        norm = Fraction(cnt, p ** density.normalization_exponent(n, m, ell))
        entries.append({"level": ell, "count": cnt, "normalized": format_fraction(norm)})
    stable = None
    if len(entries) >= 2:
        stable = entries[-1]["normalized"] == entries[-2]["normalized"]
    payload = {
        "p": p,
        "alpha": list(alpha),
        "beta": list(beta),
        "primitive": args.primitive,
        "levels": entries,
        "count": entries[-1]["count"],
        "normalized": entries[-1]["normalized"],
        "stable": stable,
    }
    return _emit(payload, args.format)


# -- spherical ---------------------------------------------------------------------


def _terms_payload(poly) -> dict:
    return {
        ",".join(map(str, e)): str(c)
        for e, c in sorted(poly.terms.items(), reverse=True)
    }


def cmd_spherical(args) -> int:
    alpha = _parse_label(args.alpha)
    n = args.n or len(alpha)
    what = args.what
    if what == "psi":
        payload = {"what": "psi", "alpha": list(alpha), "n": n,
                   "terms": _terms_payload(spherical.psi_explicit(alpha, n))}
    elif what == "main-term":
        payload = {"what": "main-term", "alpha": list(alpha), "n": n,
                   "terms": _terms_payload(spherical.main_term(alpha, n))}
    elif what == "omega":
        if n != 2:
            print("the closed fraction form is implemented for size 2", file=sys.stderr)
            return 2
        num, g2 = spherical.size2_closed(alpha)
        payload = {"what": "omega", "alpha": list(alpha), "n": 2,
                   "numerator": _terms_payload(num),
                   "denominator": _terms_payload(g2)}
    elif what == "delta":
        dc = spherical.delta_closed(alpha, n)
        payload = {
            "what": "delta", "alpha": list(alpha), "n": n,
            "scalar": str(dc.scalar),
            "monomial": list(dc.monomial),
            "denominator_pairs": [list(p) for p in dc.den_pairs],
        }
    elif what.startswith("hl:"):
        kind = what.split(":", 1)[1]
        payload = {"what": what, "lambda": list(alpha), "n": n,
                   "terms": _terms_payload(spherical.hl_variant(kind, alpha, n))}
    else:
        print(f"unknown --what {what!r}", file=sys.stderr)
        return 2
    return _emit(payload, args.format)


# -- ideal --------------------------------------------------------------------------


def cmd_ideal(args) -> int:
    n = args.n
    q_specs = [int(x) for x in args.q_spec.split(",")]
    labels = ([_parse_label(x) for x in args.alpha.split(";")]
              if args.alpha else verify.IDEAL_LABELS[n])
    computed = [elemsym.to_elementary(spherical.psi_explicit(a, n))
                for a in verify.GENERATOR_LABELS[n]]
    verdicts = []
    for q0 in q_specs:
        basis = elemsym.buchberger([c.leading_normalized(q0) for c in computed], n)
        for alpha in labels:
            e = elemsym.to_elementary(spherical.psi_explicit(alpha, n))
            member = elemsym.ideal_member(e.polynomial_part().specialize(q0), basis)
            verdicts.append({"alpha": list(alpha), "q": q0, "member": member})
    payload = {
        "n": n,
        "note": "membership verified at rational specializations of q",
        "generators": [str(g) for g in elemsym.schwartz_image_generators(n)],
        "verdicts": verdicts,
    }
    return _emit(payload, args.format)


# -- plancherel ----------------------------------------------------------------------


def cmd_plancherel(args) -> int:
    alpha = _parse_label(args.alpha)
    beta = _parse_label(args.beta) if args.beta else alpha
    pairing = plancherel.transform_pairing(alpha, beta)
    payload = {
        "alpha": list(alpha),
        "beta": list(beta),
        "pairing": str(pairing),
        "orbit_volume_alpha": str(plancherel.orbit_volume(alpha)),
        "plancherel_ok": plancherel.plancherel_check(alpha, beta),
        "inversion_ok": plancherel.inversion_check(alpha, beta),
    }
    if args.q:
        payload["pairing_at_q"] = format_fraction(pairing.eval_at(args.q))
    if args.symbolic_u:
        from .bivar import BivarRat

        u1, u2 = BivarRat.u(1), BivarRat.u(2)
        one = BivarRat.const(1)
        checks = []
        hs = {l: plancherel.h_poly(l, u1, u2) for l in range(1, 5)}
        for l in range(1, 5):
            for m in range(l, 5):
                got = plancherel.y_inner(hs[l], hs[m], u1, u2)
                expect = (one - u1 * u2) if l == m == 1 else (
                    one if l == m else BivarRat.const(0))
                checks.append({"check": f"<H{l},H{m}>", "ok": bool(got == expect)})
        wint = plancherel.y_integral({0: one}, u1, u2)
        checks.append({
            "check": "weight-mass",
            "ok": bool(wint == one / ((one + u1) * (one + u2) * (one - u1 * u2))),
        })
        payload["symbolic_u_checks"] = checks
    return _emit(payload, args.format)


# -- verify --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.p != 3:
        print("the verification checks pin their primes (3 and 5); --p must be 3",
              file=sys.stderr)
        return 2
    results = verify.run_suite(args.suite, budget=_budget(args))
    records = []
    for r in results:
        rec = {
            "check_id": r.check_id,
            "name": r.name,
            "status": r.status,
            "expected": r.expected,
            "actual": r.actual,
        }
        if r.note:
            rec["note"] = r.note
        if args.timings:
            rec["seconds"] = round(r.seconds, 3)
        records.append(rec)
    n_fail = sum(1 for r in results if r.status == "fail")
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "failures": n_fail,
                          "checks": records}, indent=2, sort_keys=True))
    else:
        for rec in records:
            mark = "PASS" if rec["status"] == "pass" else rec["status"].upper()
            line = f"[{mark}] {rec['check_id']}: {rec['name']}"
            if args.timings:
                line += f" ({rec['seconds']}s)"
            print(line)
            if rec["status"] == "fail":
                print(f"       expected: {rec['expected']}")
                print(f"       actual:   {rec['actual']}")
            if rec.get("note"):
                print(f"       note: {rec['note']}")
        print(f"{len(records) - n_fail}/{len(records)} checks passed")
    return 1 if n_fail else 0


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quatherm",
        description="exact local densities and spherical functions of "
                    "p-adic quaternion hermitian forms",
    )
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="finite-level counts and closed densities")
    d.add_argument("--p", type=int, default=3)
    d.add_argument("--ell", default="1,2", help="comma list of levels")
    d.add_argument("--alpha", required=True, help="target form label, e.g. 2,0")
    d.add_argument("--beta", default=None, help="represented form label (default alpha)")
    d.add_argument("--primitive", action="store_true")
    d.add_argument("--method", choices=("enumerate", "convolve", "closed"),
                   default="enumerate")
    d.add_argument("--eps2", type=int, default=0)
    d.add_argument("--budget", type=int, default=None)
    d.set_defaults(func=cmd_density)

    s = sub.add_parser("spherical", help="explicit spherical values")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--alpha", required=True)
    s.add_argument("--what", default="psi",
                   help="psi | omega | main-term | delta | hl:GL | hl:A | hl:H")
    s.set_defaults(func=cmd_spherical)

    i = sub.add_parser("ideal", help="transform-image ideal membership")
    i.add_argument("--n", type=int, choices=(3, 4), required=True)
    i.add_argument("--q-spec", dest="q_spec", default="2,3,5")
    i.add_argument("--alpha", default=None,
                   help="semicolon-separated labels, e.g. '2,0,0;1,1,0'")
    i.set_defaults(func=cmd_ideal)

    pl = sub.add_parser("plancherel", help="size-2 pairing and inversion")
    pl.add_argument("--alpha", required=True)
    pl.add_argument("--beta", default=None)
    pl.add_argument("--q", type=int, default=None)
    pl.add_argument("--symbolic-u", dest="symbolic_u", action="store_true")
    pl.set_defaults(func=cmd_plancherel)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--suite", choices=verify.TIERS + ("all",), default="symbolic")
    v.add_argument("--p", type=int, default=3)
    v.add_argument("--budget", type=int, default=None)
    v.add_argument("--timings", action="store_true")
    v.set_defaults(func=cmd_verify)
    return ap


_LABEL_FLAGS = {"--alpha", "--beta"}


def _glue_negative_labels(argv):
    """Join '--alpha -1,-1' into '--alpha=-1,-1' so argparse accepts it."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _LABEL_FLAGS:
            try:
                nxt = next(it)
            except StopIteration:
                out.append(tok)
                break
            if nxt.startswith("-") and len(nxt) > 1 and nxt[1].isdigit():
                out.append(f"{tok}={nxt}")
            else:
                out.extend((tok, nxt))
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_glue_negative_labels(list(argv)))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
