"""Command-line front end: reproduces the thermal-vacuum numbers as CSV or JSON."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import entropy, noclone, thermal
from .doubled import basis_ket, doubled
from .fock import LinOp, Statistics, apply, make_space, number_op, oscillator_hamiltonian
from .opexpr import EvalContext, ParseError, evaluate, format_expr, parse, tilde_rewrite, to_sexpr

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VIOLATION = 3

# doubled-space dimension above which dense evaluation is refused
MAX_DOUBLED_DIM = 4096

DEFAULT_OCCUPATION = {
    Statistics.FERMION: [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0],
    Statistics.BOSON: [math.log(2), 1.0, 2.0, 5.0, 10.0],
}


class ConfigError(ValueError):
    pass


class PropertyViolation(RuntimeError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    stat: Statistics = Statistics.FERMION
    grid: list | None = None
    omega: float = 1.0
    cutoff: int | None = None
    fmt: str = "csv"
    out: str | None = None
    tol: float | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.grid is not None and len(self.grid) == 0:
            raise ConfigError("grid is empty")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ConfigError("omega must be positive and finite")
        if self.cutoff is not None and self.cutoff < 1:
            raise ConfigError("cutoff must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in an unsigned 64-bit integer")


def parse_grid(text: str) -> list[float]:
    """``start:stop:count:log|lin`` or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 4:
                raise ConfigError(f"grid needs start:stop:count:log|lin, got {text!r}")
            start, stop, count, spacing = float(parts[0]), float(parts[1]), int(parts[2]), parts[3]
            if count < 1:
                raise ConfigError("grid count must be >= 1")
            if spacing == "lin":
                vals = np.linspace(start, stop, count)
            elif spacing == "log":
                if start <= 0 or stop <= 0:
                    raise ConfigError("log grid needs positive endpoints")
                vals = np.logspace(math.log10(start), math.log10(stop), count)
            else:
                raise ConfigError(f"grid spacing must be 'log' or 'lin', got {spacing!r}")
        else:
            vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad grid {text!r}: {exc}") from None
    vals = [float(v) for v in vals]
    if not vals:
        raise ConfigError("grid is empty")
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError("grid values must be finite")
    return vals


# --- serialisation ---------------------------------------------------------


def _check_finite(x: float) -> float:
    if not math.isfinite(x):
        raise PropertyViolation(f"non-finite value {x!r} in output")
    return x


def num(x: float) -> str:
    """JSON number as a 17-significant-digit string."""
    return format(_check_finite(float(x)), ".17g")


def cnum(z: complex) -> list[str]:
    z = complex(z)
    return [num(z.real), num(z.imag)]


def render_csv(header: list[str], rows: list[list[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["%.12g" % _check_finite(float(v)) for v in row])
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def render_table(cfg: RunConfig, header: list[str], rows: list[list[float]], meta: dict) -> str:
    if cfg.fmt == "csv":
        return render_csv(header, rows)
    body = dict(meta)
    body["columns"] = header
    body["rows"] = [[num(v) for v in row] for row in rows]
    return render_json(body)


def write_output(text: str, path: str | None) -> None:
    """Write to ``path`` atomically, or to stdout."""
    if path is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=os.path.basename(target))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- helpers ---------------------------------------------------------------


def _beta(cfg: RunConfig, beta_omega: float) -> float:
    if beta_omega < 0 or math.isnan(beta_omega):
        raise ConfigError(f"beta*omega must be >= 0, got {beta_omega}")
    if cfg.stat is Statistics.BOSON and beta_omega == 0:
        raise ConfigError("boson occupation diverges at beta*omega = 0")
    return beta_omega / cfg.omega


def _space(cfg: RunConfig, beta_omega: float):
    if cfg.stat is Statistics.FERMION:
        return make_space(Statistics.FERMION)
    if math.isinf(beta_omega):
        cutoff = cfg.cutoff or 1
    else:
        cutoff = cfg.cutoff if cfg.cutoff is not None else thermal.boson_cutoff(beta_omega, 1.0)
    if (cutoff + 1) ** 2 > MAX_DOUBLED_DIM:
        raise ConfigError(f"boson cutoff {cutoff} exceeds the dense limit; raise beta*omega or pass --cutoff")
    return make_space(Statistics.BOSON, cutoff)


def _single_beta_omega(cfg: RunConfig, default: float = 1.0) -> float:
    if cfg.grid is None:
        return default
    if len(cfg.grid) != 1:
        raise ConfigError(f"{cfg.subcommand} takes a single --beta-omega value")
    return cfg.grid[0]


def _meta(cfg: RunConfig) -> dict:
    meta = {"subcommand": cfg.subcommand, "statistics": cfg.stat.value, "omega": num(cfg.omega), "seed": str(cfg.seed)}
    if cfg.cutoff is not None:
        meta["cutoff"] = str(cfg.cutoff)
    return meta


# --- subcommands -----------------------------------------------------------


def cmd_entropy_curve(cfg: RunConfig) -> tuple[str, int]:
    if cfg.stat is not Statistics.FERMION:
        raise ConfigError("entropy-curve is defined for fermion statistics only")
    grid = entropy.default_grid() if cfg.grid is None else np.asarray(cfg.grid)
    if np.any(grid <= 0):
        raise ConfigError("T/omega grid must be positive")
    rows = [[p.t_over_omega, p.s] for p in entropy.entropy_curve(grid)]
    return render_table(cfg, ["t_over_omega", "entropy_nats"], rows, _meta(cfg)), EXIT_OK


def cmd_occupation(cfg: RunConfig) -> tuple[str, int]:
    tol = 1e-9 if cfg.tol is None else cfg.tol
    grid = DEFAULT_OCCUPATION[cfg.stat] if cfg.grid is None else cfg.grid
    rows, code = [], EXIT_OK
    for bo in grid:
        beta = _beta(cfg, bo)
        closed = thermal.mean_occupation(beta, cfg.omega, cfg.stat)
        ds = doubled(_space(cfg, bo))
        state = thermal.vacuum(ds, beta, cfg.omega)
        via = thermal.expectation(state, number_op(ds.phys)).real
        diff = abs(via - closed)
        if diff >= tol:
            code = EXIT_VIOLATION
        rows.append([bo, closed, via, diff])
    header = ["beta_omega", "mean_occupation", "via_expectation", "abs_diff"]
    return render_table(cfg, header, rows, _meta(cfg)), code


def cmd_vacuum(cfg: RunConfig) -> tuple[str, int]:
    if cfg.fmt != "json":
        raise ConfigError("vacuum output is JSON only; pass --format json")
    bo = _single_beta_omega(cfg)
    beta = _beta(cfg, bo)
    ds = doubled(_space(cfg, bo))
    series = thermal.vacuum(ds, beta, cfg.omega, construction="series")
    unitary = thermal.vacuum(ds, beta, cfg.omega, construction="unitary")
    dist = float(np.linalg.norm(series.ket.amps - unitary.ket.amps))
    body = _meta(cfg)
    body.update(
        beta_omega=num(bo),
        cutoff=str(ds.phys.cutoff),
        theta=num(unitary.params.theta),
        z_partition=num(series.z_partition),
        z_from_unitary=num(unitary.z_partition),
        distance=num(dist),
        basis=[[str(n), str(m)] for n, m in map(ds.unflat, range(ds.dim))],
        series=[cnum(c) for c in series.ket.amps],
        unitary=[cnum(c) for c in unitary.ket.amps],
    )
    code = EXIT_OK if cfg.tol is None or dist < cfg.tol else EXIT_VIOLATION
    return render_json(body), code


def _report_json(cfg: RunConfig, report: noclone.CloneReport) -> dict:
    body = _meta(cfg)
    body.update(
        which=report.which,
        branch=report.branch,
        tol=num(report.tol),
        resolution=str(len(report.grid)),
        only_trivial_zeros=report.only_trivial_zeros,
        min_nonzero=num(report.min_nonzero),
        zero_locus=[[num(e.phi), cnum(e.z), cnum(e.w)] for e in report.zero_locus],
        entries=[
            {"phi": num(e.phi), "z": cnum(e.z), "w": cnum(e.w), "residual": num(e.residual),
             "phase_residual": num(e.phase_residual)}
            for e in report.grid
        ],
    )
    if report.which == "c_tfd":
        body["beta_omega"] = num(cfg.extra["beta_omega"])
    return body


def cmd_noclone_scan(cfg: RunConfig) -> tuple[str, int]:
    if cfg.fmt != "json":
        raise ConfigError("noclone-scan output is JSON only; pass --format json")
    bo = _single_beta_omega(cfg)
    cfg.extra["beta_omega"] = bo
    if cfg.extra["which"] == "c_tfd":
        _beta(cfg, bo)
    try:
        report = noclone.scan(
            cfg.extra["resolution"],
            cfg.extra["which"],
            cfg.extra["branch"],
            chi=cfg.extra.get("chi"),
            beta_omega=bo,
            kind=cfg.stat,
            cutoff=cfg.cutoff,
            tol=1e-9 if cfg.tol is None else cfg.tol,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    code = EXIT_OK if report.only_trivial_zeros else EXIT_VIOLATION
    return render_json(_report_json(cfg, report)), code


def _matrix_json(op: LinOp) -> list:
    return [[cnum(c) for c in row] for row in op.mat]


def cmd_eval(cfg: RunConfig) -> tuple[str, int]:
    if cfg.fmt != "json":
        raise ConfigError("eval output is JSON only; pass --format json")
    text = cfg.extra["expr"]
    expr = parse(text)
    bo = _single_beta_omega(cfg)
    beta = _beta(cfg, bo)
    ds = doubled(_space(cfg, bo))
    notes: list[str] = []
    rewritten = tilde_rewrite(expr, cfg.stat, notes)
    try:
        op = evaluate(expr, EvalContext(ds))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    state = thermal.vacuum(ds, beta, cfg.omega)
    ev = np.vdot(state.ket.amps, op.mat @ state.ket.amps)
    body = _meta(cfg)
    body.update(
        expr=text,
        ast=to_sexpr(expr),
        formatted=format_expr(expr),
        rewritten=format_expr(rewritten),
        rewritten_ast=to_sexpr(rewritten),
        notes=notes,
        beta_omega=num(bo),
        dim=str(ds.dim),
        matrix=_matrix_json(op),
        expectation=cnum(ev),
        on_zero_vacuum=[cnum(c) for c in apply(op, basis_ket(ds, 0, 0)).amps],
    )
    return render_json(body), EXIT_OK


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (m + m.conj().T) / 2


def statistical_check(cfg: RunConfig, count: int) -> list[list[float]]:
    """Vacuum expectation against Tr(rho A) for seeded random observables."""
    bo = _single_beta_omega(cfg)
    beta = _beta(cfg, bo)
    space = _space(cfg, bo)
    ds = doubled(space)
    state = thermal.vacuum(ds, beta, cfg.omega)
    h = oscillator_hamiltonian(space, cfg.omega)
    rho = entropy.gibbs_density(space, beta, h)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for i in range(count):
        a = LinOp(space, random_hermitian(rng, space.dim))
        vac = thermal.expectation(state, a)
        tr = entropy.trace_expectation(rho, a)
        rows.append([i, vac.real, tr.real, abs(vac - tr)])
    return rows


def cmd_check(cfg: RunConfig) -> tuple[str, int]:
    default_tol = 1e-9 if cfg.stat is Statistics.FERMION else 1e-7
    tol = default_tol if cfg.tol is None else cfg.tol
    rows = statistical_check(cfg, cfg.extra["count"])
    code = EXIT_OK if all(r[3] < tol for r in rows) else EXIT_VIOLATION
    header = ["index", "vacuum_expectation", "trace_expectation", "abs_diff"]
    return render_table(cfg, header, rows, _meta(cfg)), code


COMMANDS = {
    "entropy-curve": cmd_entropy_curve,
    "occupation": cmd_occupation,
    "vacuum": cmd_vacuum,
    "noclone-scan": cmd_noclone_scan,
    "eval": cmd_eval,
    "check": cmd_check,
}

JSON_ONLY = ("vacuum", "noclone-scan", "eval")


# --- argument handling -----------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stat", choices=[s.value for s in Statistics], default="fermion")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--beta-omega", type=float, help="single beta*omega value")
    g.add_argument("--grid", help="start:stop:count:log|lin, or a comma list")
    p.add_argument("--omega", type=float, default=1.0, help="mode frequency (default 1)")
    p.add_argument("--cutoff", type=int, help="boson Fock cutoff (default: tail rule)")
    p.add_argument("--format", choices=["csv", "json"], dest="fmt")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfdlab", description="Thermal vacuum numerics for a single oscillator mode.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("entropy-curve", help="entropy of the reduced state against T/omega")
    _common(p)
    p = sub.add_parser("occupation", help="mean occupation, closed form and via the thermal vacuum")
    _common(p)
    p = sub.add_parser("vacuum", help="series and unitary thermal vacua")
    _common(p)
    p = sub.add_parser("noclone-scan", help="cloning residual over a superposition grid")
    _common(p)
    p.add_argument("--which", choices=["d_tfd", "c_tfd"], default="d_tfd")
    p.add_argument("--branch", choices=["real", "conjugate"], default="real")
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--chi", type=float, help="relative phase of w (default 0 real, pi/3 conjugate)")
    p = sub.add_parser("eval", help="parse, rewrite and evaluate an operator expression")
    _common(p)
    p.add_argument("expr")
    p = sub.add_parser("check", help="seeded statistical-equivalence check")
    _common(p)
    p.add_argument("--count", type=int, default=50)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.beta_omega is not None:
        grid = [args.beta_omega]
    elif args.grid is not None:
        grid = parse_grid(args.grid)
    else:
        grid = None
    fmt = args.fmt or ("json" if args.subcommand in JSON_ONLY else "csv")
    extra = {k: getattr(args, k) for k in ("which", "branch", "resolution", "chi", "expr", "count") if hasattr(args, k)}
    if extra.get("count", 1) < 1:
        raise ConfigError("--count must be >= 1")
    return RunConfig(
        subcommand=args.subcommand,
        stat=Statistics(args.stat),
        grid=grid,
        omega=args.omega,
        cutoff=args.cutoff,
        fmt=fmt,
        out=args.out,
        tol=args.tol,
        seed=args.seed,
        extra=extra,
    )


def _parse_error_message(text: str, exc: ParseError) -> str:
    # caret under the offending byte, counted in characters for display
    col = len(text.encode("utf-8")[: exc.pos].decode("utf-8", errors="ignore"))
    return f"parse error: {exc}\n  {text}\n  {' ' * col}^\n"


def run(cfg: RunConfig) -> int:
    text, code = COMMANDS[cfg.subcommand](cfg)
    write_output(text, cfg.out)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except ParseError as exc:
        sys.stderr.write(_parse_error_message(args.expr, exc))
        return EXIT_CONFIG
    except (ConfigError, ValueError) as exc:
        # library ValueErrors come from inputs the config checks let through
        sys.stderr.write(f"tfdlab: error: {exc}\n")
        return EXIT_CONFIG
    except PropertyViolation as exc:
        sys.stderr.write(f"tfdlab: property violation: {exc}\n")
        return EXIT_VIOLATION
