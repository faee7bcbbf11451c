# heun_pulses/verification.py
"""
Acceptance checks for the solver, one per criterion, gathered in a
VerificationReport that the `verify` command writes as JSON.
"""
# ---------------------------------------------------------------------------
# Imports
import math, time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy import special
from scipy.integrate import quad

from heun_pulses.dynamics import (IntegratorConfig, Trajectory, analytic_box, compare_with_analytic,
                                  evolve_numeric, evolve_riccati, resonant_probability, smooth_box_convergence)
from heun_pulses.errors import PulseSolverError
from heun_pulses.pulses import DimensionlessParams, PulseKind, PulseSpec, gamma_for_area
from heun_pulses.specfun import HeunParams, heun_local, hyp2f1, hyp2f1_via_confluent
from heun_pulses.xuv import (EmissionSolution, MediumParams, coherence_lifetime, energy_bracket,
                             normalized_fluence, propagation_residual, rabi_profile, theta_profile, tipping_angle)
# ---------------------------------------------------------------------------

SCHEMA_VERSION = 1
STRICT         = dict(rel_tol=1e-12, abs_tol=1e-14)

# Omega_0 = 0.02, alpha = 0.08, Delta = 0.2 in units of omega_c
CAPTION_PARAMS = DimensionlessParams.from_physical(0.02, 0.08, 0.2)
BOX_T0         = 125.0      # 1/omega_c, box width alpha * t0 = 10
SMOOTH_BOX_TOL = 0.05       # relative, at delta - 1 = 1e-9

# endpoints of the quoted XUV energy range, J, and the collision lifetime, s
XUV_ENERGY_RANGE = (1e-8, 1e-6)
XUV_LIFETIME     = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    runtime: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "runtime": round(self.runtime, 3),
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "overall": "pass" if self.overall else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }


def _equivalence_shapes(params: DimensionlessParams) -> list[PulseSpec]:
    shapes = [PulseSpec.named(PulseKind.OMEGA_DELTA, params, delta=d) for d in (1.1, 2.0, 11.0)]
    shapes += [PulseSpec.named(kind, params) for kind in (PulseKind.OMEGA_ONE, PulseKind.OMEGA_PLUS,
                                                           PulseKind.OMEGA_MINUS)]
    return shapes


def _equivalence_config() -> IntegratorConfig:
    return IntegratorConfig(tau_span=(-20.0, 8.0), sample_span=(-8.0, 8.0), sample_count=401, **STRICT)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_area_theorem(trajectories: list[Trajectory]) -> CheckResult:
    '''beta = 0: final |Ca|^2 = sin^2(A/2) for four shapes at three areas.'''
    params = DimensionlessParams(beta=0.0, gamma=1.0)
    shapes = [PulseSpec.named(PulseKind.SECH, params), PulseSpec.named(PulseKind.OMEGA_PLUS, params),
              PulseSpec.named(PulseKind.OMEGA_MINUS, params),
              PulseSpec.named(PulseKind.OMEGA_DELTA, params, delta=2.0)]
    worst = 0.0
    detail = {}
    for shape in shapes:
        for area in (math.pi, 2 * math.pi, math.pi / 2):
            spec = shape.with_params(replace(params, gamma=gamma_for_area(shape, area)))
            traj = evolve_numeric(spec, cfg=IntegratorConfig.for_pulse(spec, sample_count=2, **STRICT))
            trajectories.append(traj)
            err = abs(traj.final.pa - resonant_probability(area))
            detail[f"{shape.kind.value} A={area:.6f}"] = err
            worst = max(worst, err)
    return CheckResult("area_theorem", worst <= 1e-6, worst, 1e-6, detail=detail)


def check_box_closed_form(trajectories: list[Trajectory]) -> CheckResult:
    spec = PulseSpec.named(PulseKind.BOX, CAPTION_PARAMS, t0=BOX_T0)
    width = spec.box_width
    cfg = IntegratorConfig(tau_span=(-1.0, width + 1.0), sample_span=(0.0, width * (1 - 1 / 400)),
                           sample_count=401, **STRICT)
    traj = evolve_numeric(spec, cfg=cfg)
    trajectories.append(traj)
    closed = analytic_box(0.2, 0.02, BOX_T0, traj.tau / CAPTION_PARAMS.alpha)
    worst = float(np.max(np.abs(closed - traj.ca)))
    return CheckResult("box_closed_form", worst <= 1e-8, worst, 1e-8)


def check_analytic_equivalence(trajectories: list[Trajectory]) -> CheckResult:
    cfg = _equivalence_config()
    worst = 0.0
    detail = {}
    for spec in _equivalence_shapes(CAPTION_PARAMS):
        cmp = compare_with_analytic(spec, cfg=cfg)
        trajectories.append(cmp.numeric)
        label = spec.kind.value + (f" delta={spec.delta}" if spec.delta is not None else "")
        detail[label] = cmp.max_abs_diff
        worst = max(worst, cmp.max_abs_diff)
    return CheckResult("analytic_equivalence", worst <= 1e-6, worst, 1e-6, detail=detail)


def check_degeneracies(draws: int = 50, seed: int = 2718) -> CheckResult:
    '''Hl -> 2F1 for (c=1, q=ab), (w=0, q=cab), (c=0, q=0), and 2F1 through 1/(1-z).'''
    rng = np.random.default_rng(seed)
    phis = np.linspace(-0.5, 0.5, 11)
    worst = 0.0
    for _ in range(draws):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        u = complex(rng.uniform(0.5, 2.5), rng.uniform(-1.5, 1.5))
        v = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = rng.uniform(1.5, 3.0)
        cases = [
            (HeunParams(a, b, 1.0, a * b, u, v, a + b + 1 - u - v), u),
            (HeunParams(a, b, c, c * a * b, u, a + b - u + 1, 0.0), u),
            (HeunParams(a, b, 0.0, 0.0, u, v, a + b + 1 - u - v), a + b + 1 - v),
        ]
        for hp, lower in cases:
            for phi in phis:
                ref = hyp2f1(a, b, lower, phi).value
                err = abs(heun_local(hp, phi).value - ref) / max(1.0, abs(ref))
                worst = max(worst, err)

    a, b, c = 0.3, 1.1, 1.7
    connection = 0.0
    for z in np.linspace(-3.0, -0.5, 10):
        ref = complex(special.hyp2f1(a, b, c, z))
        connection = max(connection, abs(hyp2f1_via_confluent(a, b, c, z) - ref) / max(1.0, abs(ref)))
    ac, bc, cc = 0.3 + 0.2j, 1.1 - 0.4j, 1.7 + 0.5j
    connection = max(connection, abs(hyp2f1_via_confluent(ac, bc, cc, -0.5) - hyp2f1(ac, bc, cc, -0.5).value))

    passed = worst <= 1e-10 and connection <= 1e-8
    return CheckResult("degeneracy_identities", passed, max(worst, connection), 1e-10,
                       detail={"heun_reductions": worst, "connection_formula": connection})


def check_normalization(trajectories: list[Trajectory]) -> CheckResult:
    worst = max((t.norm_defect for t in trajectories), default=0.0)
    return CheckResult("normalization", worst <= 1e-9 and bool(trajectories), worst, 1e-9,
                       detail={"trajectories": len(trajectories)})


def check_riccati() -> CheckResult:
    cfg = _equivalence_config()
    worst = 0.0
    for spec in _equivalence_shapes(CAPTION_PARAMS):
        numeric = evolve_numeric(spec, cfg=cfg)
        trace = evolve_riccati(spec, cfg=cfg)
        if trace.tau.shape != numeric.tau.shape:
            return CheckResult("riccati_cross_oracle", False, math.inf, 1e-7,
                               detail={"error": f"{spec.kind.value}: sample grids differ"})
        worst = max(worst, float(np.max(np.abs(trace.abs_ca - np.abs(numeric.ca)))))
    return CheckResult("riccati_cross_oracle", worst <= 1e-7, worst, 1e-7)


def check_smooth_box() -> CheckResult:
    '''Final-population discrepancy against the matched box falls monotonically
    as delta -> 1 and ends at most 5 % relative.

    At the caption parameters the smooth edges stay near-adiabatic while the
    box switches suddenly, so this check fails; the envelope discrepancy is
    reported alongside.'''
    points = smooth_box_convergence(CAPTION_PARAMS, cfg_overrides=dict(sample_count=2))
    pops = [p.population_discrepancy for p in points]
    monotone = all(x > y for x, y in zip(pops[:-1], pops[1:]))
    detail = {f"delta-1={p.delta_minus_one:g}": {"population_discrepancy": p.population_discrepancy,
                                                 "smooth_population": p.smooth_population,
                                                 "box_population": p.box_population,
                                                 "envelope_discrepancy": p.envelope_discrepancy}
              for p in points}
    detail["monotone"] = monotone
    passed = monotone and pops[-1] <= SMOOTH_BOX_TOL
    return CheckResult("smooth_box_convergence", passed, pops[-1], SMOOTH_BOX_TOL, detail=detail)


def check_coherence() -> CheckResult:
    values = {}
    for kind in (PulseKind.OMEGA_PLUS, PulseKind.OMEGA_MINUS):
        spec = PulseSpec.named(kind, CAPTION_PARAMS)
        traj = evolve_numeric(spec, cfg=IntegratorConfig.for_pulse(spec, sample_count=2))
        values[kind.value] = traj.final.coherence
    miss = min(max(0.0, 0.03 - x, x - 0.3) for x in values.values())
    return CheckResult("coherence_magnitude", miss == 0.0, miss, 0.0, detail=values)


def _decades(value: float, reference: float) -> float:
    return abs(math.log10(value / reference)) if value > 0 else math.inf


def check_xuv(medium: MediumParams | None = None) -> CheckResult:
    '''Field-chain energy bracket overlaps 10 nJ .. 1 uJ with each endpoint
    within a decade, and the coherence lifetime is within a decade of 1 ps.

    The field energy scales as (N Omega_3 tau)^2, so over the density and
    probe-area scans its endpoints sit several decades outside; the
    stored-energy chain is reported in the detail but not graded.'''
    medium = medium or MediumParams()
    lo, hi = XUV_ENERGY_RANGE
    bracket = energy_bracket(medium)
    lifetime = coherence_lifetime(replace(medium, number_density=1e17, cross_section=3e-16))
    offsets = {"field_min_decades": _decades(bracket.field_min, lo),
               "field_max_decades": _decades(bracket.field_max, hi),
               "lifetime_decades": _decades(lifetime, XUV_LIFETIME)}
    decades = max(offsets.values())
    overlaps = bracket.overlaps(lo, hi)
    passed = overlaps and decades <= 1.0
    detail = {"field_min_J": bracket.field_min, "field_max_J": bracket.field_max, "overlaps": overlaps,
              **offsets, "coherence_lifetime_s": lifetime,
              "stored_min_J": bracket.stored_min, "stored_max_J": bracket.stored_max}
    return CheckResult("xuv_estimate", passed, decades, 1.0, detail=detail)


def check_emission(seed: int = 31) -> CheckResult:
    sol = EmissionSolution(eta=1.0, phi0=tipping_angle(0.01))
    coarse = propagation_residual(sol, 1.0, 1.0, 0.1).linearized
    fine = propagation_residual(sol, 1.0, 1.0, 0.05).linearized
    ratio = abs(coarse / fine)

    rng = np.random.default_rng(seed)
    consistency = 0.0
    for z, t_end in rng.uniform(0.2, 3.0, size=(5, 2)):
        area, _ = quad(lambda t: rabi_profile(sol, z, t), 0.0, t_end, epsabs=1e-14, epsrel=1e-12)
        consistency = max(consistency, abs(theta_profile(sol, z, t_end) - 2.0 * area))

    fluence_err = abs(normalized_fluence(sol, 1.0) - sol.phi0 ** 2) / sol.phi0 ** 2
    passed = 3.5 <= ratio <= 4.5 and consistency <= 1e-8 and fluence_err <= 0.01
    detail = {"fd_ratio": ratio, "theta_consistency": consistency, "fluence_relative_error": fluence_err}
    return CheckResult("emission_solution", passed, consistency, 1e-8, detail=detail)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

def run_verification(progress: Callable[[str], None] | None = None) -> VerificationReport:
    '''Run every check in order; a solver error fails its check without stopping the suite.'''
    trajectories: list[Trajectory] = []
    suite = [
        ("area_theorem",           lambda: check_area_theorem(trajectories)),
        ("box_closed_form",        lambda: check_box_closed_form(trajectories)),
        ("analytic_equivalence",   lambda: check_analytic_equivalence(trajectories)),
        ("degeneracy_identities",  check_degeneracies),
        ("normalization",          lambda: check_normalization(trajectories)),
        ("riccati_cross_oracle",   check_riccati),
        ("smooth_box_convergence", check_smooth_box),
        ("coherence_magnitude",    check_coherence),
        ("xuv_estimate",           check_xuv),
        ("emission_solution",      check_emission),
    ]
    report = VerificationReport()
    for name, check in suite:
        start = time.perf_counter()
        try:
            result = check()
        except PulseSolverError as e:
            result = CheckResult(name, False, math.inf, 0.0, detail={"error": f"{type(e).__name__}: {e}"})
        result.runtime = time.perf_counter() - start
        report.checks.append(result)
        if progress is not None:
            progress(f"{name}: {'pass' if result.passed else 'FAIL'} ({result.runtime:.2f} s)")
    return report
