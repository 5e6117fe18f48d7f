r"""Command-line front end for capacities, profiles, regions and verification.

Subcommands emit CSV or JSON with a metadata header carrying the command,
its parameters, the seed and the toolkit version, so identical
invocations produce identical bytes (verification reports additionally
record wall time).  Exit codes: 0 on success, 1 when a verification
suite finds a violation, 2 on usage or parameter errors.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, memcap, superop, verify
from .gaussian import GaussianChannel
from .inequalities import broadcast_region

_INT_KEYS = {"dim", "trials", "seed", "points", "samples", "grid"}
_SPEC_KEYS = {"n", "k", "alpha", "y"}


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _sanitize(obj):
    if isinstance(obj, dict):
        return {key: _sanitize(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return [_sanitize(val) for val in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.12g}")
    return obj


def _metadata(args):
    parts = [f"command={args.command}"]
    skip = {"command", "config", "func", "output"}
    for key in sorted(vars(args)):
        if key in skip:
            continue
        value = getattr(args, key)
        if value is None:
            continue
        parts.append(f"{key.replace('_', '-')}={_fmt(value)}")
    parts.append(f"version={__version__}")
    return "# " + " ".join(parts)


def _emit(text, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _apply_config(args):
    if not getattr(args, "config", None):
        return 0
    data = json.loads(Path(args.config).read_text())
    allowed = {key for key in vars(args) if key not in ("func", "command", "config")}
    for raw_key, value in data.items():
        key = raw_key.replace("-", "_")
        if key not in allowed:
            print(f"error: unknown config key: {raw_key}", file=sys.stderr)
            return 2
        if key in _INT_KEYS and value is not None:
            value = int(value)
        elif isinstance(getattr(args, key), float):
            value = float(value)
        setattr(args, key, value)
    return 0


def cmd_capacity(args):
    lines = [_metadata(args)]
    if args.mode == "memory":
        params = memcap.MemoryChannelParams(args.kappa, args.mu, args.nbar, args.energy)
        lines += ["capacity", _fmt(memcap.memory_capacity(params, args.tol))]
    elif args.mode == "additive":
        value = memcap.additive_noise_capacity(args.mu, args.noise, args.energy)
        lines += ["capacity", _fmt(value)]
    else:
        lines.append("kappa,e_crit")
        for kappa in np.linspace(args.kappa_min, args.kappa_max, args.points):
            value = memcap.critical_energy(float(kappa), args.mu, args.nbar)
            lines.append(f"{_fmt(float(kappa))},{_fmt(value)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_waterfill(args):
    params = memcap.MemoryChannelParams(args.kappa, args.mu, args.nbar, args.energy)
    sol = memcap.waterfill(params, args.tol, num_samples=args.samples)
    lines = [
        _metadata(args),
        f"# lambda-mult={_fmt(sol.lambda_mult)} z0={_fmt(sol.z0)}"
        f" capacity={_fmt(sol.capacity)}",
        "z,n",
    ]
    lines += [f"{_fmt(z)},{_fmt(value)}" for z, value in sol.samples]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_region(args):
    r_b, conjectured, epi = broadcast_region(args.eta, args.energy, args.grid)
    lines = [_metadata(args), "r_b,conjectured,epi"]
    lines += [
        f"{_fmt(float(r))},{_fmt(float(c))},{_fmt(float(e))}"
        for r, c, e in zip(r_b, conjectured, epi)
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_verify(args):
    report = verify.run_suite(args.suite, dim=args.dim, trials=args.trials, seed=args.seed)
    payload = {"metadata": _metadata(args)[2:]}
    payload.update(report.to_dict())
    _emit(json.dumps(_sanitize(payload), indent=2, sort_keys=True) + "\n", args.output)
    return 0 if report.passed else 1


def _load_map_spec(path):
    data = json.loads(Path(path).read_text())
    unknown = set(data) - _SPEC_KEYS
    if unknown:
        raise ValueError(f"Unknown map keys: {sorted(unknown)}")
    if not {"n", "k", "alpha"} <= set(data):
        raise ValueError("The map file must define n, k and alpha")
    n = int(data["n"])
    k = np.asarray(data["k"], dtype=float).reshape(2 * n, 2 * n)
    alpha = np.asarray(data["alpha"], dtype=float).reshape(2 * n, 2 * n)
    y = np.asarray(data.get("y", np.zeros(2 * n)), dtype=float)
    return GaussianChannel(k, alpha, y)


def cmd_normalform(args):
    spec = _load_map_spec(args.spec)
    if spec.n_in == 1:
        form = superop.classify_one_mode(spec, args.tol)
    elif np.abs(spec.alpha).max() == 0:
        form = superop.classify_multimode_nonoise(spec.k, args.tol)
    else:
        raise ValueError(
            "Only one-mode maps or noiseless multimode maps can be classified"
        )
    payload = {
        "metadata": _metadata(args)[2:],
        "case": form.case,
        "dilation": form.dilation,
        "symplectic_part": form.symplectic_part,
        "residual_noise": form.residual_noise,
        "y": form.y,
    }
    _emit(json.dumps(_sanitize(payload), indent=2, sort_keys=True) + "\n", args.output)
    return 0


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0, help="recorded rng seed")
    parser.add_argument("--output", help="output path, stdout when omitted")
    parser.add_argument("--config", help="json file overriding flags")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bosonic",
        description="Capacities, entropy inequalities and map classification "
        "for bosonic Gaussian channels.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    cap = sub.add_parser("capacity", help="channel capacity values and sweeps")
    cap.add_argument("mode", choices=("memory", "additive", "ecrit"))
    cap.add_argument("--kappa", type=float, default=1.0)
    cap.add_argument("--mu", type=float, default=0.0)
    cap.add_argument("--nbar", type=float, default=0.0)
    cap.add_argument("--energy", type=float, default=0.0)
    cap.add_argument("--noise", type=float, default=0.0)
    cap.add_argument("--tol", type=float, default=1e-8)
    cap.add_argument("--kappa-min", type=float, default=0.1)
    cap.add_argument("--kappa-max", type=float, default=0.9)
    cap.add_argument("--points", type=int, default=9)
    _add_common(cap)
    cap.set_defaults(func=cmd_capacity)

    wf = sub.add_parser("waterfill", help="optimal photon-number profile")
    wf.add_argument("--kappa", type=float, default=1.0)
    wf.add_argument("--mu", type=float, default=0.0)
    wf.add_argument("--nbar", type=float, default=0.0)
    wf.add_argument("--energy", type=float, default=0.0)
    wf.add_argument("--tol", type=float, default=1e-8)
    wf.add_argument("--samples", type=int, default=129)
    _add_common(wf)
    wf.set_defaults(func=cmd_waterfill)

    reg = sub.add_parser("region", help="broadcast rate-region curves")
    reg.add_argument("--eta", type=float, default=0.8)
    reg.add_argument("--energy", type=float, default=8.0)
    reg.add_argument("--grid", type=int, default=200)
    _add_common(reg)
    reg.set_defaults(func=cmd_region)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=sorted(verify.SUITE_DEFAULTS))
    ver.add_argument("--dim", type=int, default=None)
    ver.add_argument("--trials", type=int, default=None)
    _add_common(ver)
    ver.set_defaults(func=cmd_verify)

    nf = sub.add_parser("normalform", help="classify a Gaussian-to-Gaussian map")
    nf.add_argument("--spec", required=True, help="json file with n, k, alpha, y")
    nf.add_argument("--tol", type=float, default=1e-9)
    _add_common(nf)
    nf.set_defaults(func=cmd_normalform)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    code = _apply_config(args)
    if code:
        return code
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
