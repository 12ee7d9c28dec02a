"""
Command-line front end.

    tfhomology solve       direct integration, CSV x,y,yp
    tfhomology shoot       critical initial slope, JSON
    tfhomology majorana    reduced Majorana solution, CSV t,u
    tfhomology reconstruct parametric solution, CSV t,x,y
    tfhomology compare     reconstruction vs direct integration
    tfhomology invariance  homology sweep over exponents and scale factors

Exit codes: 0 success, 2 precondition violated, 3 numerical failure,
4 a compare/invariance metric exceeded its bound.  Failures print one line
to stderr starting with ``error[<kind>]:``.
"""

import argparse
import csv
import json
import sys
from dataclasses import asdict, fields

import numpy as np

from .config import RunConfig, read_config_file
from .errors import BracketError, DomainError, SingularityError
from .homology import MajoranaConstants
from .invariance import invariance_sweep
from .odes import EquationParams, integrate_direct, second_derivative_residual, \
    shoot_initial_slope
from .reconstruct import compare_to_direct, initial_slope_from_u0, \
    majorana_to_dresner_solution, reconstruct_dresner, reconstruct_majorana
from .reduced import ReducedSolution, majorana_boundary_slope, solve_majorana

EXIT_OK, EXIT_PRECONDITION, EXIT_NUMERICAL, EXIT_BOUND = 0, 2, 3, 4


class BoundExceeded(Exception):
    pass


def _fmt(value):
    if isinstance(value, str):
        return value
    return f"{value:.17g}"


def _open_output(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def write_table(config, header, rows):
    """Write rows as CSV (csv format only); floats with 17 significant digits."""
    if config.format != "csv":
        return
    fh = _open_output(config.output)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if fh is not sys.stdout:
            fh.close()


def emit_summary(config, metrics, status="ok", always_output=False):
    """JSON summary {command, config, metrics, status}.

    Goes to the output in json format (or when the command has no table),
    to ``--summary`` when given, otherwise to stderr.
    """
    doc = {"command": config.command, "config": asdict(config),
           "metrics": metrics, "status": status}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config.format == "json" or always_output:
        fh = _open_output(config.output)
    elif config.summary:
        fh = open(config.summary, "w")
    else:
        fh = sys.stderr
    fh.write(text)
    if fh not in (sys.stdout, sys.stderr):
        fh.close()
    return doc


def _critical_slope(config):
    lo, hi = config.bracket
    return shoot_initial_slope(config.shoot_tol, (lo, hi))


def cmd_solve(config):
    params = EquationParams(config.p)
    if config.lane_emden:
        slope = 0.0
        table = integrate_direct(params, 0.0, config.x_max, config.step_tol,
                                 lane_emden=True, y0=config.theta0)
    else:
        slope = _critical_slope(config) if config.slope is None else config.slope
        table = integrate_direct(params, slope, config.x_max, config.step_tol)
    write_table(config, ["x", "y", "yp"], table.samples)
    residual = second_derivative_residual(table) if len(table) > 2 else np.zeros(1)
    emit_summary(config, {
        "form": table.form,
        "slope": slope,
        "x_range": [float(table.x[0]), float(table.x[-1])],
        "termination": table.termination.reason,
        "termination_x": table.termination.x,
        "residual_max": float(residual.max()),
        "n_samples": len(table),
    })
    return EXIT_OK


def cmd_shoot(config):
    slope = _critical_slope(config)
    emit_summary(config, {"B": slope}, always_output=True)
    return EXIT_OK


def _fd_boundary_slope(reduced):
    t, u = reduced.indep, reduced.dep
    h = t[-1] - t[-2]
    # second-order one-sided difference at t = 1
    return (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h)


def cmd_majorana(config):
    reduced = solve_majorana(config.grid, config.step_tol, config.eps)
    write_table(config, ["t", "u"], reduced.samples)
    metrics = {"u0": float(reduced.dep[0]),
               "B_from_u0": initial_slope_from_u0(reduced.dep[0]),
               "boundary_slope": majorana_boundary_slope()}
    if config.grid >= 3:
        metrics["boundary_slope_fd"] = _fd_boundary_slope(reduced)
    emit_summary(config, metrics)
    return EXIT_OK


def read_majorana_csv(path):
    """Load a ``t,u`` table written by the majorana command."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header] != ["t", "u"]:
            raise DomainError(f"{path}: expected header t,u, got {','.join(header)}")
        data = np.array([[float(v) for v in row] for row in reader if row])
    return ReducedSolution("majorana", data[:, 0], data[:, 1], f"read from {path}")


def cmd_reconstruct(config):
    if config.input:
        reduced = read_majorana_csv(config.input)
    else:
        reduced = solve_majorana(config.grid, config.step_tol, config.eps)
    if config.chart == "dresner":
        tau, x, y = reconstruct_dresner(majorana_to_dresner_solution(reduced),
                                        config.quad_tol, config.eps_rec)
        t = np.cbrt(np.sqrt(tau / 144.0))
        quad_error = None
    else:
        param = reconstruct_majorana(reduced, config.quad_tol, config.eps_rec)
        t, x, y = param.t, param.x, param.y
        quad_error = param.quad_error
    write_table(config, ["t", "x", "y"], np.column_stack([t, x, y]))
    a = MajoranaConstants.canonical().a
    pos = t > 0
    emit_summary(config, {
        "n_samples": int(t.size),
        "t_max": float(t[-1]),
        "x_max": float(x[-1]),
        "y_at_t_max": float(y[-1]),
        "quad_error": quad_error,
        "max_asymptote_identity_dev": float(np.max(np.abs(
            x[pos] ** 3 * y[pos] / (144.0 * t[pos] ** 6) - 1.0))),
        "max_t_identity_dev": float(np.max(np.abs(
            a * np.sqrt(x) * y ** (1.0 / 6.0) - t))),
    })
    return EXIT_OK


def cmd_compare(config):
    slope = _critical_slope(config) if config.slope is None else config.slope
    table = integrate_direct(EquationParams(1.5), slope, config.x_max,
                             config.step_tol, atol=1e-300)
    if table.termination.reason != "reached_x_max":
        raise SingularityError(
            f"direct solution stopped early: {table.termination}")
    param = reconstruct_majorana(
        solve_majorana(config.grid, 1e-12, config.eps),
        config.quad_tol, config.eps_rec)
    x, yd, yr, rel = compare_to_direct(param, table, config.x_min, config.x_max)
    write_table(config, ["x", "y_direct", "y_reconstructed", "rel_err"],
                np.column_stack([x, yd, yr, rel]))
    worst = float(rel.max())
    status = "ok" if worst <= config.bound else "bound_exceeded"
    emit_summary(config, {"B": slope, "max_rel_err": worst,
                          "x_at_max": float(x[np.argmax(rel)]),
                          "n_points": int(x.size), "bound": config.bound},
                 status)
    if status != "ok":
        raise BoundExceeded(f"max_rel_err {worst:.3e} exceeds {config.bound:g}")
    return EXIT_OK


def cmd_invariance(config):
    rows = []
    for p in config.ps:
        for lam in config.lambdas:
            for r in invariance_sweep(p, lam, n_points=config.points,
                                      x_lo=config.x_min, x_hi=config.x_max,
                                      tol=config.step_tol, seed=config.seed):
                rows.append((p, lam, r.chart, max(r.max_dev, r.mapped_dev)))
    write_table(config, ["p", "lambda", "chart", "max_dev"], rows)
    worst = max(r[3] for r in rows)
    status = "ok" if worst <= config.bound else "bound_exceeded"
    emit_summary(config, {"max_dev": worst, "bound": config.bound,
                          "rows": [dict(zip(("p", "lambda", "chart", "max_dev"), r))
                                   for r in rows]}, status)
    if status != "ok":
        raise BoundExceeded(f"max_dev {worst:.3e} exceeds {config.bound:g}")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "shoot": cmd_shoot, "majorana": cmd_majorana,
            "reconstruct": cmd_reconstruct, "compare": cmd_compare,
            "invariance": cmd_invariance}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def build_parser():
    parser = _Parser(prog="tfhomology", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="flat key=value file of option defaults")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", help="output path (default stdout)")
        sp.add_argument("--summary", help="JSON summary path (default stderr)")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = common(sub.add_parser("solve", help="integrate the equation directly"))
    sp.add_argument("--p", type=float, default=1.5)
    sp.add_argument("--slope", type=float, help="y'(0); default: shoot for it")
    sp.add_argument("--xmax", dest="x_max", type=float, default=10.0)
    sp.add_argument("--lane-emden", action="store_true",
                    help="integrate theta = y/x from theta(0) = theta0; "
                         "the y, yp columns then hold theta, theta'")
    sp.add_argument("--theta0", type=float, default=1.0)
    sp.add_argument("--tol", dest="step_tol", type=float, default=1e-10)
    sp.add_argument("--shoot-tol", type=float, default=1e-14)

    sp = common(sub.add_parser("shoot", help="bisect for the critical slope"))
    sp.add_argument("--tol", dest="shoot_tol", type=float, default=1e-8)
    sp.add_argument("--bracket", type=float, nargs=2, default=[-2.0, -1.0],
                    metavar=("LO", "HI"))

    sp = common(sub.add_parser("majorana", help="solve the reduced equation"))
    sp.add_argument("--grid", type=int, default=2001)
    sp.add_argument("--tol", dest="step_tol", type=float, default=1e-12)
    sp.add_argument("--eps", type=float, default=1e-6)

    sp = common(sub.add_parser("reconstruct", help="parametric x(t), y(t)"))
    sp.add_argument("--input", help="t,u CSV from the majorana command")
    sp.add_argument("--chart", choices=("majorana", "dresner"), default="majorana")
    sp.add_argument("--grid", type=int, default=2001)
    sp.add_argument("--tol", dest="step_tol", type=float, default=1e-12)
    sp.add_argument("--eps", type=float, default=1e-6)
    sp.add_argument("--quad-tol", type=float, default=1e-10)
    sp.add_argument("--eps-rec", type=float, default=1e-4)

    sp = common(sub.add_parser("compare", help="reconstruction vs direct run"))
    sp.add_argument("--slope", type=float, help="y'(0); default: shoot for it")
    sp.add_argument("--xmin", dest="x_min", type=float, default=0.01)
    sp.add_argument("--xmax", dest="x_max", type=float, default=50.0)
    sp.add_argument("--tol", dest="step_tol", type=float, default=1e-13)
    sp.add_argument("--shoot-tol", type=float, default=1e-14)
    sp.add_argument("--grid", type=int, default=2001)
    sp.add_argument("--eps", type=float, default=1e-6)
    sp.add_argument("--quad-tol", type=float, default=1e-10)
    sp.add_argument("--eps-rec", type=float, default=1e-4)
    sp.add_argument("--bound", type=float, default=1e-4)

    sp = common(sub.add_parser("invariance", help="homology invariance sweep"))
    sp.add_argument("--p", dest="ps", type=float, nargs="+",
                    default=[1.2, 1.5, 2.0, 2.5, 3.0])
    sp.add_argument("--lambda", dest="lambdas", type=float, nargs="+",
                    default=[0.5, 2.0])
    sp.add_argument("--xmin", dest="x_min", type=float, default=0.05)
    sp.add_argument("--xmax", dest="x_max", type=float, default=2.0)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--tol", dest="step_tol", type=float, default=1e-12)
    sp.add_argument("--bound", type=float, default=1e-6)
    return parser


def _config_tokens(path):
    tokens = []
    for key, value in read_config_file(path).items():
        if key == "config":
            continue
        if key == "lane-emden":
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append("--lane-emden")
            continue
        tokens.append(f"--{key}")
        tokens.extend(value.replace(",", " ").split())
    return tokens


def parse_config(argv):
    """Turn command-line arguments (plus an optional config file) into a RunConfig.

    Config-file entries are inserted ahead of the explicit flags so the
    flags win.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        argv = [argv[0]] + _config_tokens(args.config) + list(argv[1:])
        args = parser.parse_args(argv)
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in names})


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        config = parse_config(argv)
        return COMMANDS[config.command](config)
    except BoundExceeded as exc:
        print(f"error[bound]: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except DomainError as exc:
        print(f"error[precondition]: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (SingularityError, BracketError, ArithmeticError, RuntimeError) as exc:
        print(f"error[numerical]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error[precondition]: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
