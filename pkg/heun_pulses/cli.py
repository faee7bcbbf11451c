# heun_pulses/cli.py
"""
Command-line surface: pulse tables, evolutions, analytic solutions, sweeps,
final populations, XUV estimates, emission profiles and the verification suite.
"""
# ---------------------------------------------------------------------------
# Imports
import argparse, sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np

from heun_pulses.dynamics import (FINAL_METHODS, IntegratorConfig, analytic_trajectory, compare_with_analytic,
                                  evolve_numeric, evolve_riccati, final_population)
from heun_pulses.errors import ParameterError, PulseSolverError
from heun_pulses.presets import captionPreset, mediumPreset
from heun_pulses.pulses import (DimensionlessParams, PhaseMap, PulseKind, PulseSpec, default_span, omega,
                                pulse_area)
from heun_pulses.state import currentRun, print_to_console
from heun_pulses.verification import run_verification
from heun_pulses.writeback import (ANALYTIC_COLUMNS, TRAJECTORY_HEADER, trajectory_rows, write_report,
                                   write_table)
from heun_pulses.xuv import (EmissionSolution, emission_coupling, energy_bracket, pulse_duration,
                             pulse_power_and_energy, sample_emission, signal_rabi)
# ---------------------------------------------------------------------------

COMMANDS       = ("pulse", "evolve", "analytic", "compare", "sweep", "final", "xuv", "propagate", "verify")
SWEEP_TARGETS  = ("gamma", "beta", "delta-param", "lambda", "mu")
DEFAULT_MEDIUM = "paper-sec5"
ANALYTIC_EDGE  = 8.0        # analytic sampling stops where 1 - phi ~ e^-16

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    # pulse selection
    kind: str | None = None
    caption: str | None = None
    gamma: float | None = None
    beta: float | None = None
    omega0: float | None = None
    alpha: float | None = None
    detuning: float | None = None
    delta_param: float | None = None
    t0: float | None = None
    ab: float = 0.0
    q: float = 0.0
    c: float = 2.0
    p: float = 0.0
    mu: float = 1.0
    lam: float = 0.0
    # grid and tolerances
    tau_min: float | None = None
    tau_max: float | None = None
    samples: int | None = None
    rel_tol: float | None = None
    abs_tol: float | None = None
    # command specific
    method: str = "amplitude"
    final_method: str = "auto"
    vary: str | None = None
    values: tuple[float, ...] = field(default_factory=tuple)
    preset: str = DEFAULT_MEDIUM
    density: float | None = None
    omega3_tau: float | None = None
    z: float | None = None
    eta: float = 1.0
    rho_aa0: float | None = None
    z_max: float = 3.0
    z_points: int = 31
    # output
    out: str | None = None
    quiet: bool = False


class _Parser(argparse.ArgumentParser):
    '''Usage errors exit with status 1.'''
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_pulse_args(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("pulse")
    g.add_argument("--kind", choices=[k.value for k in PulseKind], help="pulse shape (default sech)")
    g.add_argument("--caption", help="named (Omega0, alpha, Delta) preset from caption_presets.json")
    g.add_argument("--gamma", type=float, help="Omega_0/alpha")
    g.add_argument("--beta", type=float, help="Delta/alpha")
    g.add_argument("--omega0", type=float, help="peak Rabi frequency, units of omega_c")
    g.add_argument("--alpha", type=float, help="inverse pulse width, units of omega_c")
    g.add_argument("--detuning", type=float, help="Delta, units of omega_c")
    g.add_argument("--delta-param", type=float, help="delta of omega-delta / smooth-box (> 1)")
    g.add_argument("--t0", type=float, help="box duration, units of 1/omega_c")
    g.add_argument("--ab", type=float, default=0.0, help="Heun family ab (only 0 is exactly solvable)")
    g.add_argument("--q", type=float, default=0.0, help="family accessory parameter")
    g.add_argument("--c", type=float, default=2.0, help="Heun family singular point (> 1)")
    g.add_argument("--p", type=float, default=0.0, help="confluent family parameter")
    g.add_argument("--mu", type=float, default=1.0, help="phase map mu (> 0)")
    g.add_argument("--lam", type=float, default=0.0, help="phase map lambda (> -mu)")


def _add_grid_args(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("grid")
    g.add_argument("--tau-min", type=float)
    g.add_argument("--tau-max", type=float)
    g.add_argument("--samples", type=int)
    g.add_argument("--rel-tol", type=float)
    g.add_argument("--abs-tol", type=float)


def _add_common_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", help="output file; relative paths go under $HEUN_PULSES_OUT_DIR (default stdout)")
    sp.add_argument("--quiet", action="store_true", help="no status messages on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heun_pulses", description="Exactly solvable two-level pulses and XUV estimates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("pulse", help="CSV of (tau, omega)")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)

    sp = sub.add_parser("evolve", help="numeric trajectory CSV")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)
    sp.add_argument("--method", choices=("amplitude", "riccati"), default="amplitude")

    sp = sub.add_parser("analytic", help="exact trajectory CSV")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)

    sp = sub.add_parser("compare", help="numeric and exact trajectories side by side")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)

    sp = sub.add_parser("sweep", help="final population over a parameter list")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)
    sp.add_argument("--vary", choices=SWEEP_TARGETS, required=True)
    sp.add_argument("--values", type=float, nargs="+", required=True)
    sp.add_argument("--final-method", choices=FINAL_METHODS, default="auto")

    sp = sub.add_parser("final", help="final population JSON")
    _add_pulse_args(sp); _add_grid_args(sp); _add_common_args(sp)
    sp.add_argument("--final-method", choices=FINAL_METHODS, default="auto")

    sp = sub.add_parser("xuv", help="XUV energy estimate JSON")
    _add_common_args(sp)
    sp.add_argument("--preset", default=DEFAULT_MEDIUM, help="medium preset from medium_presets.json")
    sp.add_argument("--density", type=float, help="number density, cm^-3")
    sp.add_argument("--omega3-tau", type=float, help="probe pulse area")
    sp.add_argument("--z", type=float, help="emission depth, cm")

    sp = sub.add_parser("propagate", help="coherent emission theta, omega on a (z, tau) grid")
    _add_common_args(sp)
    sp.add_argument("--eta", type=float, default=1.0, help="coupling in the units of the grid")
    sp.add_argument("--rho-aa0", type=float, help="initial excited population (default from preset)")
    sp.add_argument("--preset", default=DEFAULT_MEDIUM)
    sp.add_argument("--z-max", type=float, default=3.0)
    sp.add_argument("--z-points", type=int, default=31)
    sp.add_argument("--tau-max", type=float, default=3.0)
    sp.add_argument("--samples", type=int)

    sp = sub.add_parser("verify", help="run the acceptance checks, JSON report")
    _add_common_args(sp)
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    known = {f.name for f in fields(RunConfig)}
    values = {k: v for k, v in vars(ns).items() if k in known and v is not None}
    if "values" in values:
        values["values"] = tuple(values["values"])
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# Config -> domain objects
# ---------------------------------------------------------------------------

def _caption(config: RunConfig, s: currentRun) -> captionPreset | None:
    if config.caption is None:
        return None
    if config.caption not in s.captions:
        raise ParameterError(f"unknown caption preset {config.caption!r}; have {sorted(s.captions)}")
    return s.captions[config.caption]


def resolve_params(config: RunConfig, s: currentRun) -> DimensionlessParams:
    '''Caption preset, then physical flags, then --gamma/--beta.'''
    cap = _caption(config, s)
    params = cap.to_dimensionless() if cap is not None else DimensionlessParams()
    if any(x is not None for x in (config.omega0, config.alpha, config.detuning)):
        alpha = config.alpha if config.alpha is not None else params.alpha
        omega0 = config.omega0 if config.omega0 is not None else params.gamma * params.alpha
        detuning = config.detuning if config.detuning is not None else params.beta * params.alpha
        params = DimensionlessParams.from_physical(omega0, alpha, detuning)
    if config.gamma is not None:
        params = replace(params, gamma=config.gamma)
    if config.beta is not None:
        params = replace(params, beta=config.beta)
    return params


def resolve_pulse(config: RunConfig, s: currentRun, params: DimensionlessParams | None = None) -> PulseSpec:
    cap = _caption(config, s)
    params = params or resolve_params(config, s)
    kind = PulseKind(config.kind or (cap.kind if cap is not None and cap.kind else PulseKind.SECH))
    delta = config.delta_param if config.delta_param is not None else (cap.delta if cap else None)
    t0 = config.t0 if config.t0 is not None else (cap.t0 if cap else None)
    pmap = PhaseMap(config.mu, config.lam)
    if kind == PulseKind.HEUN_FAMILY:
        return PulseSpec.heun_family(config.ab, config.q, config.c, pmap, params)
    if kind == PulseKind.CONFLUENT_FAMILY:
        return PulseSpec.confluent_family(config.p, config.q, pmap, params)
    if not pmap.is_symmetric:
        raise ParameterError(f"{kind.value} uses mu = 1, lambda = 0")
    return PulseSpec.named(kind, params, delta=delta, t0=t0)


def resolve_grid(config: RunConfig, s: currentRun, spec: PulseSpec, analytic: bool = False) -> IntegratorConfig:
    '''Integration from the pulse's default start; samples on [tau-min, tau-max].'''
    span_lo, span_hi = default_span(spec)
    if analytic and spec.kind != PulseKind.BOX:
        span_hi = min(span_hi, ANALYTIC_EDGE)
        default_lo = max(span_lo, -ANALYTIC_EDGE)
    else:
        default_lo = span_lo
    sample_lo = config.tau_min if config.tau_min is not None else default_lo
    sample_hi = config.tau_max if config.tau_max is not None else span_hi
    overrides = dict(tau_span=(min(span_lo, sample_lo), sample_hi), sample_span=(sample_lo, sample_hi))
    if config.samples is not None:
        overrides["sample_count"] = config.samples
    if config.rel_tol is not None:
        overrides["rel_tol"] = config.rel_tol
    if config.abs_tol is not None:
        overrides["abs_tol"] = config.abs_tol
    return s.presets.integrator_config(spec, **overrides)


def _medium(config: RunConfig, s: currentRun) -> mediumPreset:
    if config.preset in s.media:
        return s.media[config.preset]
    if config.preset == DEFAULT_MEDIUM:
        return mediumPreset(DEFAULT_MEDIUM)
    raise ParameterError(f"unknown medium preset {config.preset!r}; have {sorted(s.media)}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_pulse(config: RunConfig, s: currentRun) -> int:
    spec = resolve_pulse(config, s)
    grid = resolve_grid(config, s, spec).sample_grid()
    values = np.asarray(omega(spec, grid))
    s.rowsWritten = write_table(s.outputPath, ["tau", "omega"], zip(grid, values))
    return EXIT_OK


def cmd_evolve(config: RunConfig, s: currentRun) -> int:
    spec = resolve_pulse(config, s)
    cfg = resolve_grid(config, s, spec)
    if config.method == "riccati":
        trace = evolve_riccati(spec, cfg=cfg)
        print_to_console(s, f"Riccati branch switches: {trace.switches}")
        s.rowsWritten = write_table(s.outputPath, ["tau", "abs_ca", "pa"], zip(trace.tau, trace.abs_ca, trace.pa))
        return EXIT_OK
    traj = evolve_numeric(spec, cfg=cfg)
    print_to_console(s, f"Final |Ca|^2 = {traj.final.pa:.12g}, norm defect {traj.norm_defect:.2e}")
    s.rowsWritten = write_table(s.outputPath, TRAJECTORY_HEADER, trajectory_rows(traj, omega(spec, traj.tau)))
    return EXIT_OK


def cmd_analytic(config: RunConfig, s: currentRun) -> int:
    spec = resolve_pulse(config, s)
    traj = analytic_trajectory(spec, cfg=resolve_grid(config, s, spec, analytic=True))
    s.rowsWritten = write_table(s.outputPath, TRAJECTORY_HEADER, trajectory_rows(traj, omega(spec, traj.tau)))
    return EXIT_OK


def cmd_compare(config: RunConfig, s: currentRun) -> int:
    spec = resolve_pulse(config, s)
    cmp = compare_with_analytic(spec, cfg=resolve_grid(config, s, spec, analytic=True))
    numeric, exact = cmp.numeric, cmp.analytic

    def rows():
        base = trajectory_rows(numeric, omega(spec, numeric.tau))
        for row, a, b, diff in zip(base, exact.ca, exact.cb, cmp.abs_diff_ca):
            yield row + [a.real, a.imag, b.real, b.imag, diff]
    s.rowsWritten = write_table(s.outputPath, TRAJECTORY_HEADER + ANALYTIC_COLUMNS, rows())
    print_to_console(s, f"max |Ca analytic - Ca numeric| = {cmp.max_abs_diff:.3e}")
    return EXIT_OK


def _sweep_spec(config: RunConfig, s: currentRun, value: float) -> PulseSpec:
    if config.vary == "gamma":
        return resolve_pulse(replace(config, gamma=value), s)
    if config.vary == "beta":
        return resolve_pulse(replace(config, beta=value), s)
    if config.vary == "delta-param":
        return resolve_pulse(replace(config, delta_param=value), s)
    if config.vary == "lambda":
        return resolve_pulse(replace(config, lam=value), s)
    return resolve_pulse(replace(config, mu=value), s)


def cmd_sweep(config: RunConfig, s: currentRun) -> int:
    if config.vary not in SWEEP_TARGETS:
        raise ParameterError(f"--vary must be one of {SWEEP_TARGETS}")
    specs = [_sweep_spec(config, s, v) for v in config.values]

    def point(spec: PulseSpec) -> float:
        cfg = resolve_grid(config, s, spec) if config.final_method == "numeric" else None
        return final_population(spec, method=config.final_method, cfg=cfg)

    print_to_console(s, f"Sweeping {config.vary} over {len(specs)} values")
    with ThreadPoolExecutor(max_workers=max(1, s.presets.sweep_workers)) as pool:
        populations = list(pool.map(point, specs))
    rows = ([i, v, pa, 1.0 - pa] for i, (v, pa) in enumerate(zip(config.values, populations)))
    s.rowsWritten = write_table(s.outputPath, ["index", config.vary, "pa_final", "pb_final"], rows)
    return EXIT_OK


def cmd_final(config: RunConfig, s: currentRun) -> int:
    spec = resolve_pulse(config, s)
    cfg = resolve_grid(config, s, spec) if config.final_method == "numeric" else None
    pa = final_population(spec, method=config.final_method, cfg=cfg)
    report = {
        "schema_version": 1,
        "kind": spec.kind.value,
        "gamma": spec.params.gamma,
        "beta": spec.params.beta,
        "method": config.final_method,
        "area": pulse_area(spec, tol=s.presets.quad_tol),
        "pa_final": pa,
        "pb_final": 1.0 - pa,
    }
    write_report(s.outputPath, report)
    return EXIT_OK


def cmd_xuv(config: RunConfig, s: currentRun) -> int:
    preset = _medium(config, s)
    medium = preset.to_medium()
    if config.density is not None:
        medium = replace(medium, number_density=config.density)
    if config.omega3_tau is not None:
        medium = replace(medium, omega3_tau=config.omega3_tau)
    z = config.z if config.z is not None else preset.z

    signal = signal_rabi(medium)
    bracket = energy_bracket(medium, preset.densities, preset.omega3_taus)
    power, energy = pulse_power_and_energy(medium, z)
    report = {
        "schema_version": 1,
        "preset": preset.name,
        "signal": {
            "omega4_per_s": signal.omega4,
            "field_strength_V_per_m": signal.field_strength,
            "pulse_energy_J": signal.pulse_energy,
            "coherence_lifetime_s": signal.coherence_lifetime,
        },
        "energy_bracket": {
            "conversion": "c * eps0 * (hbar * omega4 / dipole)^2 * beam_area * pump_duration",
            "field_min_J": bracket.field_min,
            "field_max_J": bracket.field_max,
            "field_decades": bracket.field_decades,
            "stored_conversion": "beam_area * length * N * rho_cb^2 * hbar * omega4_line",
            "stored_min_J": bracket.stored_min,
            "stored_max_J": bracket.stored_max,
            "beam_area_cm2": medium.area,
            "densities_per_cm3": list(bracket.densities),
            "omega3_taus": list(bracket.omega3_taus),
        },
        "emission": {
            "depth_cm": z,
            "eta": emission_coupling(medium),
            "pulse_duration_s": pulse_duration(medium, z),
            "power_W": power,
            "energy_J": energy,
        },
    }
    write_report(s.outputPath, report)
    return EXIT_OK


def cmd_propagate(config: RunConfig, s: currentRun) -> int:
    rho = config.rho_aa0 if config.rho_aa0 is not None else _medium(config, s).rho_aa0
    sol = EmissionSolution(eta=config.eta, phi0=2.0 * float(np.sqrt(rho)))
    if config.z_points < 2 or not config.z_max > 0 or not (config.tau_max or 0) > 0:
        raise ParameterError("propagate needs z-max > 0, tau-max > 0 and at least 2 z points")
    z = np.linspace(0.0, config.z_max, config.z_points)
    tau = np.linspace(0.0, config.tau_max, config.samples or s.presets.sample_count)
    grid = sample_emission(sol, z, tau).grid

    def rows():
        for i, zz in enumerate(grid.z):
            for j, tt in enumerate(grid.tau):
                yield [zz, tt, grid.theta[i, j], grid.omega[i, j]]
    s.rowsWritten = write_table(s.outputPath, ["z", "tau", "theta", "omega"], rows())
    return EXIT_OK


def cmd_verify(config: RunConfig, s: currentRun) -> int:
    report = run_verification(progress=lambda line: print_to_console(s, line))
    write_report(s.outputPath, report.to_dict())
    print_to_console(s, f"Verification {'passed' if report.overall else 'FAILED'}")
    return EXIT_OK if report.overall else EXIT_VERIFY


HANDLERS = {
    "pulse": cmd_pulse, "evolve": cmd_evolve, "analytic": cmd_analytic, "compare": cmd_compare,
    "sweep": cmd_sweep, "final": cmd_final, "xuv": cmd_xuv, "propagate": cmd_propagate,
    "verify": cmd_verify,
}


def run(config: RunConfig, s: currentRun | None = None) -> int:
    '''Execute one command; returns the process exit status.'''
    if s is None:
        s = currentRun(config.quiet)
    if not s.presetsLoaded:
        s.load_presets()
    s.reset()
    s.command = config.command
    try:
        if config.command not in HANDLERS:
            raise ParameterError(f"unknown command {config.command!r}; expected one of {COMMANDS}")
        s.outputPath = s.resolve_output(config.out)
        status = HANDLERS[config.command](config, s)
        if s.outputPath is not None:
            print_to_console(s, f"Wrote {s.outputPath}")
        return status
    except ParameterError as e:
        print(f"heun_pulses {config.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"heun_pulses {config.command}: cannot write output: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PulseSolverError as e:
        print(f"heun_pulses {config.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


def main(argv: list[str] | None = None, s: currentRun | None = None) -> int:
    config = parse_args(argv)
    if s is not None:
        s.quiet = s.quiet or config.quiet
    return run(config, s)
