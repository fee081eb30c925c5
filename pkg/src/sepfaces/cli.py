"""Command-line front end.

Usage:
    sepfaces ge-decompose --state STATE.json
    sepfaces face-dim --state STATE.json [--formula-only | --with-oracle]
    sepfaces theta-scan --state STATE.json [--subsets "1;2,3"]
    sepfaces oracle --state STATE.json
    sepfaces dual-check --state STATE.json [--n 100]
    sepfaces hakye33 --b 2
    sepfaces hakye24 --a 2 --b 1 --c 1 --d 1

Every subcommand accepts --seed, --samples, --tol, --out and --strict.
Output is JSON with sorted keys and floats rounded to 12 significant digits,
so identical arguments give byte-identical output. Exit codes: 0 success,
1 unsaturated rank under --strict, 2 invalid input.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .duality import psi_iso, verify_dual_face_equals_FV
from .exceptions import InvalidInputError, NumericalError
from .faces import ReportOptions, face_report, theta_scan
from .gedecomp import ge_decompose
from .hakye import HaKye24Params, hakye24_constants, hakye24_dim, hakye33_dims
from .oracle import OracleConfig, face_dim_oracle
from .statespace import PureState, SystemShape


def read_state(path) -> PureState:
    """Load a PureState from ``{"dims": [...], "amplitudes": [[re, im], ...]}``."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"state: cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"state: malformed JSON in {path}: {exc.msg}") from None
    return state_from_dict(data)


def state_from_dict(data) -> PureState:
    if not isinstance(data, dict):
        raise InvalidInputError("state: expected a JSON object")
    for key in ("dims", "amplitudes"):
        if key not in data:
            raise InvalidInputError(f"{key}: missing field")
    dims = data["dims"]
    if not isinstance(dims, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in dims):
        raise InvalidInputError("dims: expected a list of integers")
    amps = data["amplitudes"]
    if not isinstance(amps, list):
        raise InvalidInputError("amplitudes: expected a list of [re, im] pairs")
    values = []
    for a in amps:
        if isinstance(a, (int, float)) and not isinstance(a, bool):
            values.append(complex(a))
        elif isinstance(a, list) and len(a) == 2 and all(isinstance(v, (int, float)) for v in a):
            values.append(complex(a[0], a[1]))
        else:
            raise InvalidInputError(f"amplitudes: bad entry {a!r}; expected [re, im]")
    shape = SystemShape(tuple(dims))
    if len(values) != shape.d:
        raise InvalidInputError(f"amplitudes: expected {shape.d} entries for dims {dims}, got {len(values)}")
    return PureState(shape, np.array(values, dtype=complex))


def state_to_dict(state: PureState) -> dict:
    return {
        "dims": list(state.dims),
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
    }


def _canon(obj):
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            return None
        return float(f"{x:.12g}")
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(_canon(report), sort_keys=True, indent=2) + "\n"


def _parse_subsets(text):
    if text is None:
        return None
    out = []
    for part in text.split(";"):
        part = part.strip()
        try:
            out.append([int(x) for x in part.split(",") if x.strip()])
        except ValueError:
            raise InvalidInputError(f"subsets: cannot parse {part!r}") from None
    return out


def _config(args) -> OracleConfig:
    return OracleConfig(seed=args.seed, samples=args.samples, rel_tol=args.tol)


def _require_saturated(args, flag):
    if args.strict and flag is False:
        raise NumericalError("span rank not saturated; increase --samples")


def cmd_ge_decompose(args):
    state = read_state(args.state)
    return ge_decompose(state, args.tol).to_dict()


def cmd_face_dim(args):
    state = read_state(args.state)
    opts = ReportOptions(with_oracle=args.with_oracle, oracle=_config(args))
    report = face_report(state, opts)
    _require_saturated(args, report.oracle_saturated)
    return report.to_dict()


def cmd_theta_scan(args):
    state = read_state(args.state)
    cfg = _config(args)
    decomp = ge_decompose(state, cfg.rel_tol)
    scan = theta_scan(state, _parse_subsets(args.subsets), cfg, decomp)
    return {
        "blocks": [list(b) for b in decomp.blocks],
        "d": state.shape.d,
        "theta_scan": [e.to_dict() for e in scan],
    }


def cmd_oracle(args):
    state = read_state(args.state)
    res = face_dim_oracle(state, _config(args))
    _require_saturated(args, res.saturated)
    return res.to_dict()


def cmd_dual_check(args):
    state = read_state(args.state)
    report = verify_dual_face_equals_FV(psi_iso(state), _config(args), n=args.n)
    return report.to_dict()


def cmd_hakye33(args):
    out = hakye33_dims(args.b, _config(args))
    _require_saturated(args, out["saturated"])
    return out


def cmd_hakye24(args):
    params = HaKye24Params(args.a, args.b, args.c, args.d)
    out = hakye24_dim(params, _config(args))
    out["constants"] = hakye24_constants(args.a, args.b, args.c, args.d)
    _require_saturated(args, out["saturated"])
    return out


def _seed(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="RNG seed (default 0)")
    common.add_argument("--samples", type=int, default=None, help="oracle sample count (default 4 d^2)")
    common.add_argument("--tol", type=float, default=1e-8, help="relative rank tolerance")
    common.add_argument("--out", type=Path, default=None, help="write JSON here instead of stdout")
    common.add_argument("--strict", action="store_true", help="exit 1 if a span rank is not saturated")

    parser = argparse.ArgumentParser(prog="sepfaces", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ge-decompose", parents=[common], help="g.e. decomposition of a state")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_ge_decompose)

    p = sub.add_parser("face-dim", parents=[common], help="dimension of the face induced by state^perp")
    p.add_argument("--state", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--formula-only", dest="with_oracle", action="store_false")
    mode.add_argument("--with-oracle", dest="with_oracle", action="store_true")
    p.set_defaults(func=cmd_face_dim, with_oracle=False)

    p = sub.add_parser("theta-scan", parents=[common], help="range ranks under partial transpositions")
    p.add_argument("--state", required=True)
    p.add_argument("--subsets", default=None, help='e.g. "1;2,3" (default: all subsets)')
    p.set_defaults(func=cmd_theta_scan)

    p = sub.add_parser("oracle", parents=[common], help="Monte-Carlo span-rank face dimension")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("dual-check", parents=[common], help="dual face of phi_L versus F_V (bipartite)")
    p.add_argument("--state", required=True, help="bipartite state alpha; L = Psi(alpha)")
    p.add_argument("--n", type=int, default=100)
    p.set_defaults(func=cmd_dual_check)

    p = sub.add_parser("hakye33", parents=[common], help="3x3 non-induced face dimension")
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(func=cmd_hakye33)

    p = sub.add_parser("hakye24", parents=[common], help="2x4 non-induced face dimension")
    for name in "abcd":
        p.add_argument(f"--{name}", type=float, required=True)
    p.set_defaults(func=cmd_hakye24)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = dumps_report(report)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())
