"""Command-line surface for braid, invariant, delta, and lab operations.

Braid words use the text format "Bk i1 i2 ..." (e.g. "B3 1 -2 1").  All
randomness flows through explicit --seed values, and repeated invocations
with identical arguments produce byte-identical output.  Errors go to
stderr: exit code 1 for domain errors, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .braids import (
    BraidError,
    PureGenSpec,
    braid_connected_sum,
    braid_eq,
    conjugate_shift,
    format_braid,
    parse_braid,
    permutation,
    pure_gen,
    shift_braid,
)
from .combing import CombedForm, comb
from .delta import (
    alt_sum,
    delta_n_witness,
    delta_trivialize,
    marked_from_json,
    marked_to_json,
    script_from_json,
    script_to_json,
)
from .invariants import (
    alexander,
    closure_components,
    conway_a2,
    jones,
    jones_in_t,
    jones_series,
    kauffman_bracket,
    linking_matrix,
)
from .lab import (
    GammaCertificate,
    IdealProduct,
    SlideState,
    cert_from_json,
    cert_to_json,
    connected_sum_normalize,
    expand_ideal_product,
    sample_derived,
    sample_gamma,
    sample_p_prime,
    slide_step,
    validate_certificate,
    verify_theorem_2_1_AC,
)
from .laurent import LaurentPoly, poly_to_json


def _emit(payload, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(payload if isinstance(payload, str) else json.dumps(payload,
                                                                  sort_keys=True))


def _poly_payload(p: LaurentPoly, var: str, half: bool, as_json: bool):
    """Half-power polynomials print in the variable q with q^2 = var."""
    if half and all(e % 2 == 0 for e, _ in p.coeffs):
        p = LaurentPoly.from_dict({e // 2: c for e, c in p.coeffs})
        half = False
    if as_json:
        return poly_to_json(p, var, half_powers=half)
    return p.to_string("q" if half else var)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _combed_to_json(cf: CombedForm) -> dict:
    return {"strands": cf.strands,
            "layers": [{"j": cf.strands - idx, "word": list(layer)}
                       for idx, layer in enumerate(cf.layers)]}


def _state_to_json(s: SlideState) -> dict:
    return {"strands": s.strands,
            "xs": [format_braid(x) for x in s.xs],
            "z": format_braid(s.z),
            "y": format_braid(s.y),
            "m": s.m}


def _state_from_json(obj: dict) -> SlideState:
    return SlideState(strands=int(obj["strands"]),
                      xs=tuple(parse_braid(x) for x in obj["xs"]),
                      z=parse_braid(obj["z"]),
                      y=parse_braid(obj["y"]),
                      m=int(obj["m"]))


def _ideal_from_json(obj: dict) -> IdealProduct:
    return IdealProduct(strands=int(obj["strands"]),
                        xs=tuple(parse_braid(x) for x in obj["xs"]),
                        y=parse_braid(obj["y"]))


# ---------------------------------------------------------------------------
# braid subcommands


def _cmd_braid(args: argparse.Namespace) -> None:
    sub = args.braid_cmd
    if sub == "eq":
        print("true" if braid_eq(parse_braid(args.word), parse_braid(args.other))
              else "false")
    elif sub == "comb":
        _emit(_combed_to_json(comb(parse_braid(args.word))), True)
    elif sub == "perm":
        cycles = permutation(parse_braid(args.word)).cycles()
        text = "".join("(" + " ".join(str(s) for s in c) + ")"
                       for c in cycles if len(c) > 1)
        print(text if text else "()")
    elif sub == "closure-info":
        w = parse_braid(args.word)
        count, _ = closure_components(w)
        lk = linking_matrix(w)
        _emit({"components": count,
               "linking": [list(row) for row in lk.entries],
               "writhe": w.writhe}, True)
    elif sub == "puregen":
        print(format_braid(pure_gen(PureGenSpec(args.i, args.j), args.strands)))
    elif sub == "shift":
        print(format_braid(shift_braid(args.strands)))
    elif sub == "conjshift":
        print(format_braid(conjugate_shift(parse_braid(args.word), args.m)))
    elif sub == "consum":
        print(format_braid(braid_connected_sum(parse_braid(args.word),
                                               parse_braid(args.other))))


# ---------------------------------------------------------------------------
# invariant subcommands


def _cmd_invariant(args: argparse.Namespace) -> None:
    w = parse_braid(args.word)
    if args.inv_cmd == "jones":
        _emit(_poly_payload(jones(w), "t", True, args.json), args.json)
    elif args.inv_cmd == "bracket":
        _emit(_poly_payload(kauffman_bracket(w), "A", False, args.json),
              args.json)
    elif args.inv_cmd == "series":
        s = jones_series(w, args.dmax)
        if args.json:
            _emit({"order": s.order,
                   "u": [str(c) for c in s.coefficients]}, True)
        else:
            print("u = [" + ", ".join(str(c) for c in s.coefficients) + "]")
    elif args.inv_cmd == "alexander":
        _emit(_poly_payload(alexander(w), "t", False, args.json), args.json)
    elif args.inv_cmd == "a2":
        print(conway_a2(w))


# ---------------------------------------------------------------------------
# delta subcommands


def _parse_inv_spec(spec: str):
    """'series:d' -> Jones series up to order d; 'a2' -> Conway a_2."""
    if spec == "a2":
        return conway_a2
    if spec.startswith("series:"):
        d_max = int(spec.split(":", 1)[1])
        return lambda w: jones_series(w, d_max)
    raise BraidError(f"unknown invariant spec {spec!r}")


def _cmd_delta(args: argparse.Namespace) -> None:
    if args.delta_cmd == "trivialize":
        _emit(script_to_json(delta_trivialize(parse_braid(args.word))), True)
    elif args.delta_cmd == "witness":
        cert = sample_gamma(args.n, args.strands, args.seed, size=args.size)
        _emit(marked_to_json(delta_n_witness(cert)), True)
    elif args.delta_cmd == "altsum":
        marked = marked_from_json(_load_json(args.file))
        closed = marked.shifted_closure(shift_braid(marked.base.strands))
        report = alt_sum(closed, _parse_inv_spec(args.inv))
        total = report.total
        if hasattr(total, "coefficients"):
            total = [str(c) for c in total.coefficients]
        _emit({"n": report.order, "total": total}, True)
    elif args.delta_cmd == "apply":
        obj = _load_json(args.file)
        if "site_sets" in obj:
            marked = marked_from_json(obj)
            subset = [int(s) for s in args.subset.split(",") if s != ""] \
                if args.subset else []
            print(format_braid(marked.subset_word(subset)))
        else:
            print(format_braid(script_from_json(obj).apply()))


# ---------------------------------------------------------------------------
# lab subcommands


def _cmd_lab(args: argparse.Namespace) -> None:
    if args.lab_cmd == "sample":
        cls = args.cls
        if cls == "pprime":
            _, leaf = sample_p_prime(args.strands, args.seed, args.size)
            cert = GammaCertificate(strands=args.strands, level=1, root=leaf)
        elif cls.startswith("gamma:"):
            cert = sample_gamma(int(cls.split(":")[1]), args.strands,
                                args.seed, size=args.size)
        elif cls.startswith("derived:"):
            cert = sample_derived(int(cls.split(":")[1]), args.strands,
                                  args.seed, size=args.size)
        else:
            raise BraidError(f"unknown sample class {cls!r}")
        validate_certificate(cert)
        payload = cert_to_json(cert)
        payload["word"] = format_braid(cert.word())
        _emit(payload, True)
    elif args.lab_cmd == "expand":
        ip = _ideal_from_json(_load_json(args.file))
        _emit([[sign, format_braid(w)] for sign, w in expand_ideal_product(ip)],
              True)
    elif args.lab_cmd == "slide":
        obj = _load_json(args.file)
        state = _state_from_json(obj) if "m" in obj \
            else connected_sum_normalize(_ideal_from_json(obj))
        for _ in range(args.steps):
            state = slide_step(state)
        _emit(_state_to_json(state), True)
    elif args.lab_cmd == "verify":
        if args.target != "thm21":
            raise BraidError(f"unknown verification target {args.target!r}")
        report = verify_theorem_2_1_AC(args.n, args.strands, args.seed,
                                       args.trials)
        _emit(report, True)


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltabraid",
        description="Braid words, delta moves, and exact link invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_braid = sub.add_parser("braid", help="braid word operations")
    braid_sub = p_braid.add_subparsers(dest="braid_cmd", required=True)
    p = braid_sub.add_parser("eq", help="word problem")
    p.add_argument("word"), p.add_argument("other")
    p = braid_sub.add_parser("comb", help="layered normal form (pure braids)")
    p.add_argument("word")
    p = braid_sub.add_parser("perm", help="underlying permutation, cycle notation")
    p.add_argument("word")
    p = braid_sub.add_parser("closure-info",
                             help="components, linking matrix, writhe")
    p.add_argument("word")
    p = braid_sub.add_parser("puregen", help="standard pure generator p_{i,j}")
    p.add_argument("i", type=int), p.add_argument("j", type=int)
    p.add_argument("--strands", type=int, required=True)
    p = braid_sub.add_parser("shift", help="shift braid t_k")
    p.add_argument("--strands", type=int, required=True)
    p = braid_sub.add_parser("conjshift", help="conjugate by t_k^m")
    p.add_argument("word"), p.add_argument("m", type=int)
    p = braid_sub.add_parser("consum", help="connected-sum braid in B_2k")
    p.add_argument("word"), p.add_argument("other")
    p_braid.set_defaults(func=_cmd_braid)

    p_inv = sub.add_parser("invariant", help="closure invariants")
    inv_sub = p_inv.add_subparsers(dest="inv_cmd", required=True)
    for name, hlp in (("jones", "Jones polynomial of the closure"),
                      ("bracket", "Kauffman bracket"),
                      ("alexander", "Alexander polynomial"),
                      ("a2", "Conway coefficient a_2")):
        p = inv_sub.add_parser(name, help=hlp)
        p.add_argument("word")
        p.add_argument("--json", action="store_true")
    p = inv_sub.add_parser("series", help="Jones series at t = e^x")
    p.add_argument("word")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p_inv.set_defaults(func=_cmd_invariant)

    p_delta = sub.add_parser("delta", help="delta moves and marked words")
    delta_sub = p_delta.add_subparsers(dest="delta_cmd", required=True)
    p = delta_sub.add_parser("trivialize", help="delta script for a P' braid")
    p.add_argument("word")
    p = delta_sub.add_parser("witness", help="marked word for a sampled certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strands", type=int, default=4)
    p.add_argument("--size", type=int, default=1)
    p = delta_sub.add_parser("altsum", help="alternating invariant sum")
    p.add_argument("file")
    p.add_argument("--inv", required=True, help="series:D or a2")
    p = delta_sub.add_parser("apply", help="apply a script or marked-word subset")
    p.add_argument("file")
    p.add_argument("--subset", default=None,
                   help="comma-separated site-set indices (marked words)")
    p_delta.set_defaults(func=_cmd_delta)

    p_lab = sub.add_parser("lab", help="samplers and verification experiments")
    lab_sub = p_lab.add_subparsers(dest="lab_cmd", required=True)
    p = lab_sub.add_parser("sample", help="sample a certified element")
    p.add_argument("--class", dest="cls", required=True,
                   help="pprime | gamma:N | derived:N")
    p.add_argument("--strands", type=int, default=4)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--size", type=int, default=1)
    p = lab_sub.add_parser("expand", help="expand an ideal-product file")
    p.add_argument("file")
    p = lab_sub.add_parser("slide", help="run slide steps on a state file")
    p.add_argument("file")
    p.add_argument("--steps", type=int, required=True)
    p = lab_sub.add_parser("verify", help="run a verification report")
    p.add_argument("target", help="thm21")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strands", type=int, default=3)
    p_lab.set_defaults(func=_cmd_lab)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        args.func(args)
    except (BraidError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
