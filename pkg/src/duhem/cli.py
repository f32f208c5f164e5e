"""Command-line interface.

Subcommands: ``derive`` (print every constitutive response at one state),
``verify`` (run the check suite, write a JSONL report), ``simulate`` (run
one process over the grid, write a CSV log), ``report`` (summarize a log).

Exit codes: 0 all requested work passed, 1 at least one check failed,
2 usage or configuration error, 3 invalid physical state. Setting
DUHEM_VERBOSE=1 raises logging verbosity on stderr; it never changes
numerical behavior or output files.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import traceback

from .config import RunConfig, load_config
from .errors import ConfigError, PhysicalStateError
from .kinematics import Densities, MaterialState
from .linalg import Mat3, Vec3
from .materials import full_response
from .logio import build_log_rows, summarize_log, write_process_log, write_report
from .processes import run_process
from .verification import VerifyContext, run_checks

log = logging.getLogger("duhem")


def _vec_flag(text: str) -> Vec3:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 comma-separated numbers, got {text!r}")
    try:
        return Vec3(*(float(p) for p in parts))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a numeric triple: {text!r}") from None


def _mat_flag(text: str) -> Mat3:
    parts = text.split(",")
    if len(parts) != 9:
        raise argparse.ArgumentTypeError(
            f"expected 9 comma-separated numbers (row-major), got {text!r}"
        )
    try:
        return Mat3(*(float(p) for p in parts))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a numeric 9-tuple: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duhem",
        description="Constitutive response derivation and second-law verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_derive = sub.add_parser("derive", help="print all constitutive responses at one state")
    p_derive.add_argument("--config", required=True, help="TOML run configuration")
    p_derive.add_argument("--theta", type=float, help="override temperature")
    p_derive.add_argument("--em", type=_vec_flag, help="override electric field: x,y,z")
    p_derive.add_argument("--grad-theta", type=_vec_flag, help="override temperature gradient: x,y,z")
    p_derive.add_argument(
        "--deformation", type=_mat_flag, help="override deformation gradient: 9 row-major values"
    )

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--config", required=True, help="TOML run configuration")
    p_verify.add_argument("--seed", type=int, help="override the configured seed")
    p_verify.add_argument("--out", help="report path (default from config)")

    p_sim = sub.add_parser("simulate", help="run one process over the grid")
    p_sim.add_argument("--config", required=True, help="TOML run configuration")
    p_sim.add_argument("--process", required=True, help="process name")
    p_sim.add_argument("--out", help="log path (default from config)")

    p_report = sub.add_parser("report", help="summarize a process log")
    p_report.add_argument("log", help="process log CSV written by simulate")

    return parser


def _derive_state(cfg: RunConfig, args) -> MaterialState:
    st = cfg.state
    return MaterialState(
        F=args.deformation if args.deformation is not None else st.F,
        theta=args.theta if args.theta is not None else st.theta,
        em=args.em if args.em is not None else st.em,
        g=args.grad_theta if args.grad_theta is not None else st.g,
    )


def _fmt(x) -> str:
    return format(x, ".17g")


def _fmt_vec(v) -> str:
    return "[" + ", ".join(_fmt(c) for c in v) + "]"


def _fmt_mat(m) -> str:
    return "[" + "; ".join(", ".join(_fmt(c) for c in row) for row in m.rows()) + "]"


def cmd_derive(args) -> int:
    cfg = load_config(args.config)
    state = _derive_state(cfg, args)
    dens = Densities.from_deformation(cfg.model.rho_ref, state.F)
    resp = full_response(cfg.model, cfg.heat, state, dens)
    print(f"state: {_fmt_mat(state.F)} theta={_fmt(state.theta)} "
          f"em={_fmt_vec(state.em)} g={_fmt_vec(state.g)}")
    print(f"densities: rho_ref={_fmt(dens.rho_ref)} rho={_fmt(dens.rho)}")
    rows = [
        ("psi", "free energy / mass", _fmt(resp.psi)),
        ("eta", "entropy / mass / temperature", _fmt(resp.eta)),
        ("tau", "Cauchy stress, energy / volume", _fmt_mat(resp.tau)),
        ("S", "nominal stress, energy / ref volume", _fmt_mat(resp.S)),
        ("pi", "polarization / mass", _fmt_vec(resp.pi)),
        ("P", "polarization / volume", _fmt_vec(resp.P)),
        ("Pi", "referential polarization / mass", _fmt_vec(resp.Pi)),
        ("P_ref", "referential polarization / ref volume", _fmt_vec(resp.P_ref)),
        ("q", "heat flux / area", _fmt_vec(resp.q)),
        ("Q", "referential heat flux / ref area", _fmt_vec(resp.Q)),
        ("eps", "internal energy / mass", _fmt(resp.eps)),
    ]
    width = max(len(f"{name} ({unit})") for name, unit, _ in rows)
    for name, unit, value in rows:
        label = f"{name} ({unit})"
        print(f"{label:<{width}s} : {value}")
    return 0


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    seed = args.seed if args.seed is not None else cfg.seed
    ctx = VerifyContext(
        model=cfg.model,
        heat=cfg.heat,
        processes={name: cfg.processes[name] for name in cfg.verify_processes},
        times=cfg.times,
        points=cfg.points,
        seed=seed,
        samples=cfg.samples,
        rotations=cfg.rotations,
        tolerances=cfg.tolerances,
    )
    log.debug("running %d checks with seed %d", len(cfg.checks), seed)
    reports = run_checks(ctx, cfg.checks)
    out = args.out if args.out is not None else cfg.report_path
    write_report(reports, out)
    failed = 0
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        print(
            f"{status} {rep.name} max_residual={rep.max_residual:.6g} "
            f"tolerance={rep.tolerance:.6g} samples={rep.samples}"
        )
        failed += 0 if rep.passed else 1
    print(f"report written to {out}")
    if failed:
        print(f"{failed} of {len(reports)} checks failed", file=sys.stderr)
        return 1
    return 0


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    if args.process not in cfg.processes:
        raise ConfigError(
            f"unknown process {args.process!r}; known: {', '.join(sorted(cfg.processes))}"
        )
    proc = cfg.processes[args.process]
    samples = run_process(proc, cfg.model, cfg.heat, cfg.points, cfg.times)
    rows = build_log_rows(proc, cfg.model, cfg.heat, samples)
    out = args.out if args.out is not None else cfg.log_path
    write_process_log(rows, out)
    print(f"wrote {len(rows)} samples of process {args.process!r} to {out}")
    return 0


def cmd_report(args) -> int:
    print(summarize_log(args.log))
    return 0


_COMMANDS = {
    "derive": cmd_derive,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "report": cmd_report,
}


def main(argv=None) -> int:
    verbose = os.environ.get("DUHEM_VERBOSE", "") not in ("", "0")
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(name)s %(levelname)s: %(message)s",
    )
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PhysicalStateError as exc:
        print(f"invalid physical state: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # no other exit codes: unexpected errors are 2
        if verbose:
            traceback.print_exc()
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
