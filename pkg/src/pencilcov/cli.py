"""Batch command-line front end.

Each subcommand reads JSON (file or stdin), dispatches to the library, and
emits one canonical JSON document, so identical inputs and seeds reproduce
identical bytes.  Exit codes: 0 success, 1 verification failures, 2 input
error, 3 degenerate mathematics.
"""

import argparse
import json
import sys

from . import serialize as ser
from .constants import DEFAULT_SEED, constants_report, recalibrate
from .diagonalize import diagonalize, is_diagonalizable_over_Q
from .embedding import (
    embed,
    mt3_delta,
    norm_cubic_matches_family,
    verify_MT,
    verify_MT2,
    verify_MT3,
    verify_disc_preserving,
)
from .errors import ParseError, PencilcovError
from .pencils import cubicovariant, det_form, pair_discriminant, quad_covariants
from .quartics import (
    calibrate_syzygy,
    discriminant,
    f6,
    hessian,
    invariants_IJ,
    random_quartic,
)
from .sampling import seeded

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

#: Default coefficient boxes per sweep kind.
_DEFAULT_BOX = {
    "mt": (-20, 20),
    "mt2": (-20, 20),
    "disc": (-20, 20),
    "syzygy": (-20, 20),
    "mt3": (-5, 5),
}

#: Default combo radius for the MT3 witness search.
MT3_SEARCH_BOUND = 8


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit(_error_payload(exc), args)
        return EXIT_INPUT
    except PencilcovError as exc:
        _emit(_error_payload(exc), args)
        return EXIT_DEGENERATE


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pencilcov",
        description="Covariants of binary quartics and symmetric pencils; "
        "verification sweeps; simultaneous diagonalization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, blurb in (
        ("covariants", cmd_covariants, "Hessian, sextic covariant, I, J, disc of a quartic"),
        ("pair", cmd_pair, "determinant form and covariants of a pencil"),
        ("embed", cmd_embed, "pencil image of a quartic"),
        ("diagonalize", cmd_diagonalize, "simultaneous diagonalization of a pencil"),
        ("decide", cmd_decide, "rational diagonalizability verdict"),
    ):
        sp = sub.add_parser(name, help=blurb)
        sp.add_argument("--input", required=True, help="JSON file, or - for stdin")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.set_defaults(func=func)

    vp = sub.add_parser("verify", help="seeded verification sweeps")
    vp.add_argument("kind", choices=("mt", "mt2", "mt3", "disc", "syzygy"))
    vp.add_argument("--count", type=_u64, default=1000, help="sweep size (ignored by mt3)")
    vp.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    vp.add_argument("--box", type=_box, help="coefficient box LO:HI")
    vp.add_argument("--search-bound", type=_u64, default=MT3_SEARCH_BOUND,
                    help="mt3 witness search radius")
    vp.add_argument("--witnesses", default="mt3_witnesses.json",
                    help="mt3 equivalence witnesses file")
    vp.add_argument("--output", help="write the report here instead of stdout")
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("calibrate", help="re-derive and report the constants")
    cp.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    cp.add_argument("--count", type=_u64, default=1000, help="fresh syzygy checks")
    cp.add_argument("--output", help="write the report here instead of stdout")
    cp.set_defaults(func=cmd_calibrate)
    return parser


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("expected an unsigned 64-bit integer")
    return value


def _box(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if lo > hi:
        raise argparse.ArgumentTypeError("empty box")
    return lo, hi


def cmd_covariants(args):
    quartic = ser.quartic_from_dict(_load_json(args.input))
    I, J = invariants_IJ(quartic)
    payload = {
        "schema": "pencilcov.covariants/1",
        "H": ser.form_to_list(hessian(quartic)),
        "F6": ser.form_to_list(f6(quartic)),
        "I": ser.element_to_json(I),
        "J": ser.element_to_json(J),
        "disc": ser.element_to_json(discriminant(quartic)),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_pair(args):
    pencil = ser.pencil_from_dict(_load_json(args.input))
    g_b, g_a = quad_covariants(pencil)
    payload = {
        "schema": "pencilcov.pair/1",
        "det_form": ser.form_to_list(det_form(pencil)),
        "g_A": ser.matrix_to_lists(g_a),
        "g_B": ser.matrix_to_lists(g_b),
    }
    if pencil.n == 3:
        payload["C3"] = ser.cubic_to_dict(cubicovariant(pencil))
        payload["disc"] = ser.element_to_json(pair_discriminant(pencil))
    else:
        marker = {
            "error": "DimensionError",
            "message": f"defined for 3x3 pencils, got n={pencil.n}",
        }
        payload["C3"] = marker
        payload["disc"] = marker
    _emit(payload, args)
    return EXIT_OK


def cmd_embed(args):
    quartic = ser.quartic_from_dict(_load_json(args.input))
    pair = embed(quartic)
    payload = {
        "schema": "pencilcov.embed/1",
        "pencil": ser.pencil_to_dict(pair.pencil),
        "det_form": ser.form_to_list(det_form(pair.pencil)),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_verify(args):
    if args.kind == "mt3":
        return _verify_mt3(args)
    if args.kind == "syzygy":
        return _verify_syzygy(args)

    check = {
        "mt": verify_MT,
        "mt2": verify_MT2,
        "disc": verify_disc_preserving,
    }[args.kind]
    lo, hi = args.box or _DEFAULT_BOX[args.kind]
    rng = seeded(args.seed)
    failures = []
    for _ in range(args.count):
        quartic = random_quartic(rng, lo, hi)
        if not check(quartic):
            failures.append(ser.quartic_to_dict(quartic))
    payload = {
        "schema": f"pencilcov.verify.{args.kind}/1",
        "seed": args.seed,
        "box": list((lo, hi)),
        "checked": args.count,
        "failures": failures,
    }
    _emit(payload, args)
    return EXIT_FAILURES if failures else EXIT_OK


def _verify_mt3(args):
    """Grid sweep: the family/norm-cubic identity plus equivalence witnesses."""
    lo, hi = args.box or _DEFAULT_BOX["mt3"]
    checked = 0
    failures = []
    witnesses = []
    unresolved = []
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            if mt3_delta(a, b) == 0:
                continue
            checked += 1
            if not norm_cubic_matches_family(a, b):
                failures.append({"c1": a, "c2": b})
            found, result = verify_MT3(a, b, args.search_bound)
            if found:
                witnesses.append(
                    {
                        "a": a,
                        "b": b,
                        "transform": ser.matrix_to_lists(result.transform),
                        "det": ser.format_rational(result.det),
                        "ratio": ser.format_rational(result.ratio),
                    }
                )
            else:
                unresolved.append(
                    {
                        "a": a,
                        "b": b,
                        "search_bound": result.search_bound,
                        "reason": result.reason,
                    }
                )
    payload = {
        "schema": "pencilcov.verify.mt3/1",
        "box": list((lo, hi)),
        "checked": checked,
        "failures": failures,
        "witnesses": witnesses,
        "unresolved": unresolved,
    }
    if args.witnesses:
        with open(args.witnesses, "w", encoding="utf-8") as fh:
            fh.write(
                ser.dumps(
                    {
                        "schema": "pencilcov.mt3-witnesses/1",
                        "witnesses": witnesses,
                        "unresolved": unresolved,
                    }
                )
            )
    _emit(payload, args)
    return EXIT_FAILURES if failures else EXIT_OK


def _verify_syzygy(args):
    lo, hi = args.box or _DEFAULT_BOX["syzygy"]
    rng = seeded(args.seed)
    samples = [random_quartic(rng, lo, hi) for _ in range(10)]
    payload = {
        "schema": "pencilcov.verify.syzygy/1",
        "seed": args.seed,
        "box": list((lo, hi)),
        "checked": args.count,
    }
    try:
        c1, c2, c3 = calibrate_syzygy(
            samples, verify_count=args.count, verify_seed=args.seed + 1
        )
    except PencilcovError as exc:
        payload["failures"] = [str(exc)]
        _emit(payload, args)
        return EXIT_FAILURES
    payload["failures"] = []
    payload["syzygy"] = [ser.format_rational(c) for c in (c1, c2, c3)]
    _emit(payload, args)
    return EXIT_OK


def cmd_diagonalize(args):
    pencil = ser.pencil_from_dict(_load_json(args.input))
    result = diagonalize(pencil)
    payload = {"schema": "pencilcov.diagonalize/1"}
    payload.update(_diagonalization_payload(result))
    _emit(payload, args)
    return EXIT_OK


def cmd_decide(args):
    pencil = ser.pencil_from_dict(_load_json(args.input))
    decision = is_diagonalizable_over_Q(pencil)
    payload = {
        "schema": "pencilcov.decide/1",
        "verdict": decision.verdict,
        "witness": (
            _diagonalization_payload(decision.witness)
            if decision.witness is not None
            else None
        ),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_calibrate(args):
    constants = recalibrate(seed=args.seed, syzygy_verify=args.count)
    _emit(constants_report(constants), args)
    return EXIT_OK


def _diagonalization_payload(result):
    payload = {
        "field": ser.tower_to_json(result.tower),
        "U": ser.matrix_to_lists(result.U),
        "s": [ser.element_to_json(v) for v in result.s],
        "t": [ser.element_to_json(v) for v in result.t],
        "exact": result.exact,
        "normalization": result.normalization,
    }
    if result.residual is not None:
        payload["residual"] = ser.element_to_json(result.residual)
    return payload


def _error_payload(exc):
    return {
        "schema": "pencilcov.error/1",
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def _load_json(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc


def _emit(payload, args):
    text = ser.dumps(payload)
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
