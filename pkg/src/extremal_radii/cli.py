"""Command-line surface and report emission.

Every command prints one JSON report to stdout (and, with --json PATH, the
same bytes to a file, atomically).  The schema is versioned and flat:

    {schema: 1, command, params, steps: [...], claims: [...],
     artifacts: [...], overall}

steps carry (name, inputs, output, inequality, holds, error); claims carry
the claim-registry records.  frontier adds a top-level largest_closing and
sample adds the configuration itself.  Non-finite numbers serialize as
null.

Exit codes: 0 when every step in the report holds (commands without
inequality steps always exit 0), 1 when some step fails, 2 for usage or
domain errors, which produce a single diagnostic line on stderr instead of
a report.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from .analysis import audit, claim_registry, frontier, scan_extrema
from .disks import (
    DiskConfiguration,
    functional_value,
    kuzmina_check,
    maximize_over_disks,
    symmetric_configuration,
)
from .errors import DomainError, InfeasibleConfigurationError
from .fileio import atomic_write_text
from .quad_diff import (
    QDInstance,
    render_svg,
    trace_trajectory,
    write_trajectory_csv,
    zeros_and_poles,
)
from .scalars import i0, psi

__all__ = ["RunConfig", "main"]


@dataclass(frozen=True)
class RunConfig:
    """One normalized invocation: the command plus every knob it may read.
    Numeric validation belongs to the operations themselves, which check
    their preconditions before producing any output."""

    command: str
    gamma: float | None = None
    lo: float | None = None
    hi: float | None = None
    step: float | None = None
    points: int | None = None
    iterations: int | None = None
    seed: int | None = None
    restarts: int | None = None
    n: int | None = None
    max_arclength: float | None = None
    tolerances: dict = field(default_factory=dict)
    skip_steps: tuple = ()
    json_path: str | None = None
    csv_path: str | None = None
    csv_prefix: str | None = None
    svg_path: str | None = None
    config_path: str | None = None


def _parse_tolerances(pairs) -> dict:
    out = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise DomainError(f"--tol expects ID=VALUE, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise DomainError(f"--tol value for {key!r} is not a number: {value!r}") from None
    return out


def _step(name: str, inputs: dict, output, inequality: str, holds: bool,
          error: str | None = None) -> dict:
    if isinstance(output, float) and not math.isfinite(output):
        output = None
    return {"name": name, "inputs": inputs, "output": output,
            "inequality": inequality, "holds": holds, "error": error}


def _payload(config: RunConfig, params: dict, steps: list, claims,
             artifacts: list, **extra) -> dict:
    payload = {
        "schema": 1,
        "command": config.command,
        "params": params,
        "steps": steps,
        "claims": [c.to_dict() for c in claims],
        "artifacts": list(artifacts),
        "overall": "closes" if all(s["holds"] for s in steps) else "does-not-close",
    }
    payload.update(extra)
    return payload


def _emit(payload: dict, json_path: str | None) -> int:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"
    sys.stdout.write(text)
    if json_path:
        atomic_write_text(json_path, text)
    return 0 if all(step["holds"] for step in payload["steps"]) else 1


def _cmd_audit(config: RunConfig) -> int:
    report = audit(config.gamma, config.tolerances or None, config.skip_steps)
    params = {"gamma": config.gamma, "skip_steps": sorted(config.skip_steps),
              "tolerances": config.tolerances}
    artifacts = [config.json_path] if config.json_path else []
    payload = _payload(config, params, [s.to_dict() for s in report.steps],
                       report.claims, artifacts)
    return _emit(payload, config.json_path)


def _cmd_frontier(config: RunConfig) -> int:
    result = frontier(config.lo, config.hi, config.step,
                      config.tolerances or None, config.skip_steps)
    steps = [_step("audit", {"gamma": r.gamma},
                   1.0 if r.overall == "closes" else 0.0,
                   "audit closes", r.overall == "closes")
             for r in result.reports]
    params = {"lo": config.lo, "hi": config.hi, "step": config.step,
              "skip_steps": sorted(config.skip_steps),
              "tolerances": config.tolerances}
    artifacts = [config.json_path] if config.json_path else []
    payload = _payload(config, params, steps, (), artifacts,
                       largest_closing=result.largest_closing)
    return _emit(payload, config.json_path)


def _cmd_scan_psi(config: RunConfig) -> int:
    found = scan_extrema(psi, config.lo, config.hi, config.points)
    steps = [_step(f"extremum_{i}", {"kind": e.kind, "value": e.value},
                   e.location, "interior local extremum located", True)
             for i, e in enumerate(found.extrema)]
    artifacts = []
    if config.csv_path:
        n = config.points
        span = config.hi - config.lo
        lines = []
        for i in range(n):
            x = config.lo + (i * span) / (n - 1)
            lines.append(f"{x:.17g},{psi(x):.17g}")
        atomic_write_text(config.csv_path, "\n".join(lines) + "\n")
        artifacts.append(config.csv_path)
    if config.json_path:
        artifacts.append(config.json_path)
    params = {"lo": config.lo, "hi": config.hi, "points": config.points}
    payload = _payload(config, params, steps,
                       claim_registry(None, config.tolerances or None), artifacts)
    return _emit(payload, config.json_path)


def _load_configuration(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read configuration file: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("configuration"), dict):
        data = data["configuration"]
    if not isinstance(data, dict):
        raise DomainError("configuration file must hold a JSON object")
    return data


def _config_steps(config: RunConfig, disks_config: DiskConfiguration,
                  n: int) -> list:
    gamma = config.gamma
    steps = [_step("feasible", {}, 1.0,
                   "configuration satisfies all disjointness constraints", True)]
    value = functional_value(disks_config, gamma)
    steps.append(_step("value", {"gamma": gamma}, value,
                       "functional value is positive", value > 0.0))
    if gamma < n * n:
        bound = i0(n, gamma)
        steps.append(_step("below_i0", {"i0": bound}, value,
                           "disk value < i0(n, gamma)", value < bound))
    if n == 3:
        check = kuzmina_check(disks_config)
        steps.append(_step("kuzmina", {"lhs": check.lhs, "rhs": check.rhs},
                           check.lhs, "p * r1 * r2 * r3 <= product bound",
                           check.holds))
    return steps


def _cmd_sample(config: RunConfig) -> int:
    artifacts = [config.json_path] if config.json_path else []
    if config.config_path:
        raw = _load_configuration(config.config_path)
        params = {"gamma": config.gamma, "config": config.config_path}
        try:
            disks_config = DiskConfiguration.from_dict(raw)
        except InfeasibleConfigurationError as exc:
            steps = [_step("feasible", {}, None,
                           "configuration satisfies all disjointness constraints",
                           False, error=str(exc))]
            payload = _payload(config, params, steps, (), artifacts,
                               configuration=raw)
            return _emit(payload, config.json_path)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed configuration: {exc!r}") from None
        steps = _config_steps(config, disks_config, len(disks_config.satellites))
        payload = _payload(config, params, steps, (), artifacts,
                           configuration=disks_config.to_dict())
        return _emit(payload, config.json_path)

    result = maximize_over_disks(config.gamma, config.n, config.iterations,
                                 config.seed, config.restarts)
    steps = _config_steps(config, result.best, config.n)
    symmetric = functional_value(symmetric_configuration(config.gamma, config.n),
                                 config.gamma)
    steps.insert(2, _step("dominates_symmetric", {"symmetric_value": symmetric},
                          result.value,
                          "search value >= symmetric closed-form value",
                          result.value >= symmetric))
    params = {"gamma": config.gamma, "n": config.n,
              "iterations": config.iterations, "seed": config.seed,
              "restarts": config.restarts}
    payload = _payload(config, params, steps, (), artifacts,
                       configuration=result.best.to_dict())
    return _emit(payload, config.json_path)


def _cmd_plot_qd(config: RunConfig) -> int:
    instance = QDInstance(config.gamma)
    data = zeros_and_poles(instance)
    starts: list[tuple[complex, int]] = []
    for z in data.zeros:
        radial = z / abs(z)
        # outward offset sits on the straight critical ray; -1 traces away
        # from the zero.  The inward offset rides a regular loop around the
        # origin.
        starts.append((z + 1e-3 * radial, -1))
        starts.append((z - 1e-3 * radial, 1))
    starts.append((complex(0.2, 0.0), 1))
    starts.append((complex(1.15, 0.0), 1))

    trajectories = []
    steps = []
    for k, (w0, sign) in enumerate(starts):
        trajectory = trace_trajectory(instance, w0, sign,
                                      max_arclength=config.max_arclength)
        if trajectory.arclength < 3e-3 and not trajectory.closed:
            # the square-root branch orientation is not uniform across the
            # zeros; when the chosen sign falls straight back into the zero,
            # the opposite one escapes along the ray
            sign = -sign
            trajectory = trace_trajectory(instance, w0, sign,
                                          max_arclength=config.max_arclength)
        trajectories.append(trajectory)
        steps.append(_step(
            f"trajectory_{k}",
            {"start_re": w0.real, "start_im": w0.imag, "direction": sign},
            trajectory.max_im_residual,
            "max |Im(Q u^2)| along the path < 1e-4",
            trajectory.max_im_residual < 1e-4))

    render_svg(instance, trajectories, config.svg_path)
    artifacts = [config.svg_path]
    if config.csv_prefix:
        for k, trajectory in enumerate(trajectories):
            path = f"{config.csv_prefix}_{k:02d}.csv"
            write_trajectory_csv(trajectory, path)
            artifacts.append(path)
    if config.json_path:
        artifacts.append(config.json_path)
    params = {"gamma": config.gamma, "max_arclength": config.max_arclength}
    payload = _payload(config, params, steps, (), artifacts)
    return _emit(payload, config.json_path)


def _cmd_claims(config: RunConfig) -> int:
    claims = claim_registry(config.gamma, config.tolerances or None)
    params = {"gamma": config.gamma, "tolerances": config.tolerances}
    artifacts = [config.json_path] if config.json_path else []
    payload = _payload(config, params, [], claims, artifacts)
    return _emit(payload, config.json_path)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal-radii",
        description="Numerical audit and exploration toolkit for the "
                    "planar radii-product extremal problem.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_json(p):
        p.add_argument("--json", dest="json_path", default=None, metavar="PATH",
                       help="also write the report to PATH (atomic)")

    def add_tol(p):
        p.add_argument("--tol", action="append", default=[], metavar="ID=VALUE",
                       help="override the absolute tolerance of one claim")

    p = sub.add_parser("audit", help="replay the proof skeleton at one gamma")
    p.add_argument("--gamma", type=float, default=1.7)
    p.add_argument("--skip-step", action="append", default=[], metavar="NAME",
                   help="leave out one audit step (repeatable)")
    add_tol(p)
    add_json(p)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("frontier", help="audit a grid of gammas")
    p.add_argument("--lo", type=float, default=1.50)
    p.add_argument("--hi", type=float, default=1.70)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--skip-step", action="append", default=[], metavar="NAME")
    add_tol(p)
    add_json(p)
    p.set_defaults(handler=_cmd_frontier)

    p = sub.add_parser("scan-psi", help="scan the separation weight for extrema")
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=2.0)
    p.add_argument("--points", type=int, default=100_000)
    p.add_argument("--csv", dest="csv_path", default=None, metavar="PATH",
                   help="write the sampled (sigma, psi) grid as CSV")
    add_tol(p)
    add_json(p)
    p.set_defaults(handler=_cmd_scan_psi)

    p = sub.add_parser("sample", help="search disk configurations, or "
                                      "re-validate one from a file")
    p.add_argument("--gamma", type=float, default=1.7)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--config", dest="config_path", default=None, metavar="PATH",
                   help="re-validate the configuration in PATH instead of searching")
    add_json(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("plot-qd", help="trace and plot the quadratic "
                                       "differential's trajectories")
    p.add_argument("--gamma", type=float, default=1.7)
    p.add_argument("--max-arclength", type=float, default=8.0)
    p.add_argument("--svg", dest="svg_path", default="qd.svg", metavar="PATH")
    p.add_argument("--csv-prefix", dest="csv_prefix", default=None, metavar="PREFIX",
                   help="write one CSV per trajectory as PREFIX_<k>.csv")
    add_json(p)
    p.set_defaults(handler=_cmd_plot_qd)

    p = sub.add_parser("claims", help="emit the claim registry on its own")
    p.add_argument("--gamma", type=float, default=1.7)
    add_tol(p)
    add_json(p)
    p.set_defaults(handler=_cmd_claims)

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        gamma=getattr(args, "gamma", None),
        lo=getattr(args, "lo", None),
        hi=getattr(args, "hi", None),
        step=getattr(args, "step", None),
        points=getattr(args, "points", None),
        iterations=getattr(args, "iters", None),
        seed=getattr(args, "seed", None),
        restarts=getattr(args, "restarts", None),
        n=getattr(args, "n", None),
        max_arclength=getattr(args, "max_arclength", None),
        tolerances=_parse_tolerances(getattr(args, "tol", [])),
        skip_steps=tuple(getattr(args, "skip_step", []) or ()),
        json_path=getattr(args, "json_path", None),
        csv_path=getattr(args, "csv_path", None),
        csv_prefix=getattr(args, "csv_prefix", None),
        svg_path=getattr(args, "svg_path", None),
        config_path=getattr(args, "config_path", None),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(_run_config(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
