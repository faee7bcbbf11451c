# heun_pulses/dynamics.py
"""
Two-level amplitude equations in dimensionless time

    dCa/dtau = i Omega(tau) exp(+i beta tau) Cb
    dCb/dtau = i Omega(tau) exp(-i beta tau) Ca,      (Ca, Cb) = (0, 1) at tau -> -inf

integrated numerically (the reference oracle) and evaluated from the Heun,
confluent Heun and hypergeometric solutions of the exactly solvable pulses.
"""
# ---------------------------------------------------------------------------
# Imports
import cmath
import math
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np
from scipy.integrate import DOP853, quad, solve_ivp
from scipy.optimize import brentq, minimize_scalar

from heun_pulses.errors import (InfiniteTimeError, IntegrationError, NotExactlySolvableError,
                                ParameterError)
from heun_pulses.pulses import (DimensionlessParams, PulseKind, PulseSpec, default_span, heun_params_for,
                                omega, phase_grid)
from heun_pulses.specfun import (ConfluentHeunParams, HeunParams, confluent_heun_at_one,
                                 confluent_heun_path, heun_at_one, heun_path, hyp2f1_at_one, hyp2f1_path)
# ---------------------------------------------------------------------------

TOL_FLOOR = 1e-14
TOL_CEIL  = 1e-3
SQRT2     = math.sqrt(2.0)

FINAL_METHODS = ("auto", "gauss", "continuation", "numeric")
# below this c - 1 the boundary proxy no longer separates the singular points at 1 and c
MIN_SINGULAR_GAP = 1e-4


# ---------------------------------------------------------------------------
# States, trajectories, configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeState:
    ca: complex
    cb: complex

    @property
    def pa(self) -> float:
        return abs(self.ca) ** 2

    @property
    def pb(self) -> float:
        return abs(self.cb) ** 2

    @property
    def norm_defect(self) -> float:
        return abs(self.pa + self.pb - 1.0)

    @property
    def coherence(self) -> float:
        '''|rho_ab| = |Ca Cb|.'''
        return abs(self.ca * self.cb)


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    tau_span: tuple[float, float] = (-20.0, 20.0)
    max_steps: int = 1_000_000
    sample_count: int = 401
    sample_span: tuple[float, float] | None = None    # defaults to tau_span
    switch_magnitude: float = 10.0                     # Riccati f <-> 1/f threshold

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            val = getattr(self, name)
            if not TOL_FLOOR <= val <= TOL_CEIL:
                raise ParameterError(f"{name} = {val} outside [{TOL_FLOOR}, {TOL_CEIL}]")
        lo, hi = (float(x) for x in self.tau_span)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ParameterError(f"tau span must be finite and increasing, got {self.tau_span}")
        object.__setattr__(self, "tau_span", (lo, hi))
        if self.sample_span is not None:
            s_lo, s_hi = (float(x) for x in self.sample_span)
            if not lo <= s_lo < s_hi <= hi:
                raise ParameterError(f"sample span {self.sample_span} not inside tau span {self.tau_span}")
            object.__setattr__(self, "sample_span", (s_lo, s_hi))
        if self.sample_count < 2:
            raise ParameterError(f"need at least 2 samples, got {self.sample_count}")
        if self.max_steps < 1:
            raise ParameterError(f"max_steps must be positive, got {self.max_steps}")
        if not self.switch_magnitude > 1:
            raise ParameterError(f"switch magnitude must exceed 1, got {self.switch_magnitude}")

    def sample_grid(self) -> np.ndarray:
        lo, hi = self.sample_span or self.tau_span
        return np.linspace(lo, hi, self.sample_count)

    @classmethod
    def for_pulse(cls, spec: PulseSpec, **overrides) -> "IntegratorConfig":
        overrides.setdefault("tau_span", default_span(spec))
        return cls(**overrides)


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Trajectory:
    tau: np.ndarray
    ca: np.ndarray
    cb: np.ndarray
    spec: PulseSpec | None = None
    params: DimensionlessParams | None = None
    config: IntegratorConfig | None = None

    def __post_init__(self):
        object.__setattr__(self, "tau", _frozen(self.tau, float))
        object.__setattr__(self, "ca", _frozen(self.ca, complex))
        object.__setattr__(self, "cb", _frozen(self.cb, complex))
        if not (self.tau.shape == self.ca.shape == self.cb.shape) or self.tau.ndim != 1:
            raise ParameterError("trajectory arrays must be one-dimensional and of equal length")
        if self.tau.size > 1 and np.any(np.diff(self.tau) <= 0):
            raise ParameterError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return self.tau.size

    @property
    def samples(self) -> Iterator[tuple[float, AmplitudeState]]:
        for t, a, b in zip(self.tau, self.ca, self.cb):
            yield float(t), AmplitudeState(complex(a), complex(b))

    @property
    def final(self) -> AmplitudeState:
        return AmplitudeState(complex(self.ca[-1]), complex(self.cb[-1]))

    @property
    def pa(self) -> np.ndarray:
        return np.abs(self.ca) ** 2

    @property
    def pb(self) -> np.ndarray:
        return np.abs(self.cb) ** 2

    @property
    def norm_defect(self) -> float:
        '''max over samples of | |Ca|^2 + |Cb|^2 - 1 |.'''
        return float(np.max(np.abs(self.pa + self.pb - 1.0))) if len(self) else 0.0


@dataclass(frozen=True, eq=False)
class RiccatiTrace:
    tau: np.ndarray
    abs_ca: np.ndarray
    switches: int = 0

    @property
    def pa(self) -> np.ndarray:
        return self.abs_ca ** 2


# ---------------------------------------------------------------------------
# Numeric oracle
# ---------------------------------------------------------------------------

def _edges(spec: PulseSpec, tau_min: float, tau_max: float) -> list[float]:
    inner = [b for b in spec.breakpoints() if tau_min < b < tau_max]
    return [tau_min] + inner + [tau_max]


def _resolve(spec: PulseSpec, params: DimensionlessParams | None,
             cfg: IntegratorConfig | None) -> tuple[PulseSpec, IntegratorConfig]:
    spec = spec.with_params(params)
    return spec, cfg if cfg is not None else IntegratorConfig.for_pulse(spec)


def evolve_numeric(spec: PulseSpec, params: DimensionlessParams | None = None,
                   cfg: IntegratorConfig | None = None) -> Trajectory:
    '''Adaptive DOP853 integration from (0, 1) at tau_min, sampled on cfg.sample_grid().

    The envelope's discontinuities (box edges) are integration segment ends.'''
    spec, cfg = _resolve(spec, params, cfg)
    beta = spec.params.beta
    tau_min, tau_max = cfg.tau_span
    grid = cfg.sample_grid()

    def rhs(tau, y):
        coupling = 1j * omega(spec, tau)
        phase = cmath.exp(1j * beta * tau)
        return np.array([coupling * phase * y[1], coupling * y[0] / phase])

    out_t, out_y = [], []

    def partial():
        return Trajectory(out_t, [y[0] for y in out_y], [y[1] for y in out_y], spec, spec.params, cfg) if out_t else None

    y = np.array([0j, 1 + 0j])
    idx = 0
    while idx < grid.size and grid[idx] <= tau_min:
        out_t.append(float(grid[idx]))
        out_y.append(y.copy())
        idx += 1

    steps = 0
    edges = _edges(spec, tau_min, tau_max)
    for lo, hi in zip(edges[:-1], edges[1:]):
        solver = DOP853(rhs, lo, y, hi, rtol=cfg.rel_tol, atol=cfg.abs_tol)
        while solver.status == "running":
            message = solver.step()
            steps += 1
            if solver.status == "failed":
                raise IntegrationError(f"step failure at tau = {solver.t}: {message}", partial=partial())
            if idx < grid.size and grid[idx] <= solver.t:
                dense = solver.dense_output()
                while idx < grid.size and grid[idx] <= solver.t:
                    out_t.append(float(grid[idx]))
                    out_y.append(dense(grid[idx]))
                    idx += 1
            if steps >= cfg.max_steps and solver.status == "running":
                raise IntegrationError(f"max_steps = {cfg.max_steps} reached at tau = {solver.t}",
                                       partial=partial())
        y = solver.y.copy()

    return Trajectory(out_t, [v[0] for v in out_y], [v[1] for v in out_y], spec, spec.params, cfg)


def evolve_riccati(spec: PulseSpec, params: DimensionlessParams | None = None,
                   cfg: IntegratorConfig | None = None) -> RiccatiTrace:
    '''|Ca|(tau) from f = Ca/Cb, switching to g = Cb/Ca while |f| > switch_magnitude.

        df/dtau = i Omega (e^{i beta tau} - e^{-i beta tau} f^2)
        dg/dtau = -i Omega (e^{i beta tau} g^2 - e^{-i beta tau})'''
    spec, cfg = _resolve(spec, params, cfg)
    beta = spec.params.beta
    tau_min, tau_max = cfg.tau_span
    grid = cfg.sample_grid()

    def f_rhs(tau, y):
        phase = cmath.exp(1j * beta * tau)
        return [1j * omega(spec, tau) * (phase - y[0] * y[0] / phase)]

    def g_rhs(tau, y):
        phase = cmath.exp(1j * beta * tau)
        return [-1j * omega(spec, tau) * (phase * y[0] * y[0] - 1 / phase)]

    def overflow(tau, y):
        return abs(y[0]) - cfg.switch_magnitude
    overflow.terminal = True
    overflow.direction = 1

    out_t = [float(t) for t in grid[grid <= tau_min]]
    out_a = [0.0] * len(out_t)
    state, inverted, switches = 0j, False, 0

    edges = _edges(spec, tau_min, tau_max)
    for lo, hi in zip(edges[:-1], edges[1:]):
        t = lo
        while t < hi:
            seg = grid[(grid > t) & (grid <= hi)]
            sol = solve_ivp(g_rhs if inverted else f_rhs, (t, hi), [state], method="DOP853",
                            t_eval=seg if seg.size else None, events=overflow, dense_output=True,
                            rtol=cfg.rel_tol, atol=cfg.abs_tol)
            if sol.status == -1:
                raise IntegrationError(f"Riccati integration failed after tau = {t}: {sol.message}")
            if seg.size:
                mag = np.abs(sol.y[0])
                out_t.extend(sol.t.tolist())
                out_a.extend((1.0 / np.sqrt(1.0 + mag ** 2) if inverted else mag / np.sqrt(1.0 + mag ** 2)).tolist())
            if sol.status == 1:
                t_switch = float(sol.t_events[0][0])
                if t_switch <= t:
                    raise IntegrationError(f"Riccati variable overflowed on both branches at tau = {t}")
                state = 1.0 / complex(sol.y_events[0][0][0])
                inverted = not inverted
                switches += 1
                if switches > cfg.max_steps:
                    raise IntegrationError(f"more than {cfg.max_steps} Riccati branch switches")
                t = t_switch
            else:
                state = complex(sol.sol(hi)[0])
                t = hi

    return RiccatiTrace(_frozen(out_t, float), _frozen(out_a, float), switches)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def resonant_probability(area: float) -> float:
    '''p = sin^2(A/2) for a resonant pulse of area A.'''
    if not area >= 0:
        raise ParameterError(f"area must be non-negative, got {area}")
    return math.sin(area / 2.0) ** 2


def rosen_zener_probability(params: DimensionlessParams) -> float:
    '''Final |Ca|^2 for gamma sech(tau): sin^2(pi gamma) sech^2(pi beta/2).'''
    return math.sin(math.pi * params.gamma) ** 2 / math.cosh(math.pi * params.beta / 2.0) ** 2


def _box_amplitudes(detuning: float, height: float, width: float, t):
    t = np.clip(np.asarray(t, dtype=float), 0.0, width)
    rabi = math.sqrt(detuning ** 2 / 4.0 + height ** 2)
    if rabi == 0.0:
        return np.zeros(t.shape, dtype=complex), np.ones(t.shape, dtype=complex)
    s, c = np.sin(rabi * t), np.cos(rabi * t)
    ca = 1j * height / rabi * np.exp(0.5j * detuning * t) * s
    cb = np.exp(-0.5j * detuning * t) * (c + 0.5j * detuning / rabi * s)
    return ca, cb


def analytic_box(delta_abs: float, omega0: float, t0: float, t):
    '''Ca(t) = i Omega_0/W e^{i Delta t/2} sin(W t), W = sqrt(Delta^2/4 + Omega_0^2), 0 <= t < t0.

    Before the pulse Ca = 0; after it the amplitude stays at its t0 value.'''
    if not t0 > 0:
        raise ParameterError(f"box duration must be positive, got {t0}")
    ca, _ = _box_amplitudes(delta_abs, omega0, t0, t)
    return complex(ca) if np.ndim(t) == 0 else ca


# ---------------------------------------------------------------------------
# Heun-type solutions
# ---------------------------------------------------------------------------

def matching_prefactor(spec: PulseSpec, hp: HeunParams | ConfluentHeunParams) -> complex:
    '''Constant in front of phi^(1-u) fixed by Ca ~ i int Omega e^{i beta tau} dtau as phi -> 0.'''
    beta, mu = spec.params.beta, spec.phase_map.mu
    if spec.kind == PulseKind.OMEGA_ONE:
        return 1j * SQRT2 * spec.params.gamma / (1 + 1j * beta)
    if isinstance(hp, HeunParams):
        return 2j * cmath.sqrt(-hp.q.real / hp.c.real) / (1 + 1j * beta * mu)
    if hp.q == 0:
        return 2j * cmath.sqrt(-hp.p.real) / (2 + 1j * beta * mu)
    return 2j * cmath.sqrt(-hp.q.real) / (1 + 1j * beta * mu)


def _open_phase(spec: PulseSpec, tau: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    phi, comp = phase_grid(spec.phase_map, tau)
    if np.any(phi <= 0.0) or np.any(comp <= 0.0):
        raise InfiniteTimeError("phi rounds to 0 or 1; evaluate at a finite time inside the pulse")
    return phi, comp


def _companion(spec: PulseSpec, tau: np.ndarray, phi: np.ndarray, comp: np.ndarray,
               dca_dphi: np.ndarray) -> np.ndarray:
    '''Cb = e^{-i beta tau} (dphi/dtau) Ca'(phi) / (i Omega).'''
    pmap = spec.phase_map
    rate = 2.0 * phi * comp / (pmap.mu + pmap.lam * phi)
    return np.exp(-1j * spec.params.beta * tau) * rate * dca_dphi / (1j * np.asarray(omega(spec, tau)))


def _heun_type_amplitudes(spec: PulseSpec, tau: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    hp = heun_params_for(spec)
    prefactor = matching_prefactor(spec, hp)
    if prefactor == 0:
        return np.zeros(tau.shape, dtype=complex), np.ones(tau.shape, dtype=complex)
    phi, comp = _open_phase(spec, tau)
    branch = hp.branch_at_zero()
    path = heun_path if isinstance(hp, HeunParams) else confluent_heun_path
    h, dh = path(branch, phi)
    h, dh = h.reshape(tau.shape), dh.reshape(tau.shape)
    expo = 1 - hp.u
    base = prefactor * phi ** expo
    ca = base * h
    dca = base * (expo * h / phi + dh)
    return ca, _companion(spec, tau, phi, comp, dca)


def omega_one_exponent(params: DimensionlessParams) -> complex:
    '''Exponent xi at phi = 1 of the Omega_1 solution.'''
    sum_at_one = 1 + 0.5j * params.beta
    return (1 - sum_at_one) / 2 + cmath.sqrt((1 - sum_at_one) ** 2 / 4 - params.gamma ** 2 / 2)


def _omega_one_amplitudes(spec: PulseSpec, tau: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    '''Ca = P phi^(1-u) (1-phi)^xi F[xi + V, xi + 1 - u; 2 - u; phi], V = v + w.'''
    hp = heun_params_for(spec)
    prefactor = matching_prefactor(spec, hp)
    if prefactor == 0:
        return np.zeros(tau.shape, dtype=complex), np.ones(tau.shape, dtype=complex)
    phi, comp = _open_phase(spec, tau)
    u, V = hp.u, hp.v + hp.w
    xi = omega_one_exponent(spec.params)
    f, df = hyp2f1_path(xi + V, xi + 1 - u, 2 - u, phi)
    f, df = f.reshape(tau.shape), df.reshape(tau.shape)
    base = prefactor * phi ** (1 - u) * comp ** xi
    ca = base * f
    dca = base * (((1 - u) / phi - xi / comp) * f + df)
    return ca, _companion(spec, tau, phi, comp, dca)


def analytic_amplitudes(spec: PulseSpec, tau, params: DimensionlessParams | None = None):
    '''(Ca, Cb) from the exact solution of spec at time(s) tau.'''
    spec = spec.with_params(params)
    t = np.atleast_1d(np.asarray(tau, dtype=float))
    if spec.kind == PulseKind.BOX:
        ca, cb = _box_amplitudes(spec.params.beta, spec.params.gamma, spec.box_width, t)
    elif spec.kind == PulseKind.OMEGA_ONE:
        ca, cb = _omega_one_amplitudes(spec, t)
    else:
        ca, cb = _heun_type_amplitudes(spec, t)
    if np.ndim(tau) == 0:
        return complex(ca[0]), complex(cb[0])
    return ca, cb


def analytic_omega_delta(delta: float, params: DimensionlessParams, tau):
    return analytic_amplitudes(PulseSpec.named(PulseKind.OMEGA_DELTA, params, delta=delta), tau)[0]


def analytic_omega_one(params: DimensionlessParams, tau):
    return analytic_amplitudes(PulseSpec.named(PulseKind.OMEGA_ONE, params), tau)[0]


def analytic_omega_pm(sign, params: DimensionlessParams, tau):
    '''Omega_+ for sign in {"+", +1}, Omega_- for {"-", -1}.'''
    if sign in ("+", 1):
        kind = PulseKind.OMEGA_PLUS
    elif sign in ("-", -1):
        kind = PulseKind.OMEGA_MINUS
    else:
        raise ParameterError(f"sign must be + or -, got {sign!r}")
    return analytic_amplitudes(PulseSpec.named(kind, params), tau)[0]


def analytic_trajectory(spec: PulseSpec, params: DimensionlessParams | None = None,
                        cfg: IntegratorConfig | None = None) -> Trajectory:
    spec, cfg = _resolve(spec, params, cfg)
    grid = cfg.sample_grid()
    ca, cb = analytic_amplitudes(spec, grid)
    return Trajectory(grid, ca, cb, spec, spec.params, cfg)


@dataclass(frozen=True, eq=False)
class Comparison:
    numeric: Trajectory
    analytic: Trajectory

    @property
    def abs_diff_ca(self) -> np.ndarray:
        return np.abs(self.analytic.ca - self.numeric.ca)

    @property
    def max_abs_diff(self) -> float:
        return float(np.max(self.abs_diff_ca))


def compare_with_analytic(spec: PulseSpec, params: DimensionlessParams | None = None,
                          cfg: IntegratorConfig | None = None) -> Comparison:
    '''Numeric and exact solutions on the same sample grid.'''
    spec, cfg = _resolve(spec, params, cfg)
    return Comparison(evolve_numeric(spec, cfg=cfg), analytic_trajectory(spec, cfg=cfg))


# ---------------------------------------------------------------------------
# Final populations
# ---------------------------------------------------------------------------

def _clip_probability(p: float) -> float:
    return min(max(float(p), 0.0), 1.0)


def final_population(spec: PulseSpec, params: DimensionlessParams | None = None,
                     method: str = "auto", cfg: IntegratorConfig | None = None) -> float:
    '''|Ca|^2 after the pulse (phi -> 1).

    gauss:         p = 0 confluent case, Gauss sum of the equivalent 2F1
    continuation:  march to 1 - 1e-8, Richardson-extrapolated boundary value
    numeric:       evolve_numeric over the default span
    auto picks the first applicable of gauss, continuation, numeric.'''
    if method not in FINAL_METHODS:
        raise ParameterError(f"method must be one of {FINAL_METHODS}, got {method!r}")
    spec = spec.with_params(params)
    if spec.kind == PulseKind.OMEGA_ONE:
        raise NotExactlySolvableError("Omega_1 does not switch off; it has no final population")
    if method == "numeric":
        _, cfg = _resolve(spec, None, cfg)
        return _clip_probability(evolve_numeric(spec, cfg=cfg).final.pa)
    if spec.kind == PulseKind.BOX:
        beta, gamma = spec.params.beta, spec.params.gamma
        rabi_sq = beta ** 2 / 4 + gamma ** 2
        if rabi_sq == 0:
            return 0.0
        return _clip_probability(gamma ** 2 / rabi_sq * math.sin(math.sqrt(rabi_sq) * spec.box_width) ** 2)

    hp = heun_params_for(spec)
    prefactor = matching_prefactor(spec, hp)
    if prefactor == 0:
        return 0.0
    hypergeometric = isinstance(hp, ConfluentHeunParams) and hp.p == 0
    if method == "auto":
        if hypergeometric:
            method = "gauss"
        elif isinstance(hp, HeunParams) and hp.c.real - 1 < MIN_SINGULAR_GAP:
            return final_population(spec, method="numeric", cfg=cfg)
        else:
            method = "continuation"

    branch = hp.branch_at_zero()
    if method == "gauss":
        if not hypergeometric:
            raise ParameterError("the Gauss sum applies only to the p = 0 confluent case")
        value = hyp2f1_at_one(*branch.as_hypergeometric())
    elif isinstance(hp, HeunParams):
        value = heun_at_one(branch)
    else:
        value = confluent_heun_at_one(branch)
    return _clip_probability(abs(prefactor * value) ** 2)


def coherence_magnitude(traj: Trajectory) -> float:
    '''Post-pulse |rho_ab| = |Ca Cb| at the last sample.'''
    return traj.final.coherence


# ---------------------------------------------------------------------------
# Smooth box versus box
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchedBox:
    spec: PulseSpec
    start: float
    height: float
    width: float

    def envelope(self, tau):
        tau = np.asarray(tau, dtype=float)
        vals = np.where((tau > self.start) & (tau < self.start + self.width), self.height, 0.0)
        return float(vals) if vals.ndim == 0 else vals


def matched_box(spec: PulseSpec, params: DimensionlessParams | None = None) -> MatchedBox:
    '''Box with the peak height and half-height width of a smooth box.'''
    spec = spec.with_params(params)
    if spec.kind not in (PulseKind.OMEGA_DELTA, PulseKind.SMOOTH_BOX):
        raise ParameterError(f"matched box needs a smooth-box pulse, got {spec.kind.value}")
    if spec.params.gamma == 0:
        raise ParameterError("matched box needs gamma > 0")
    tau_min, tau_max = default_span(spec)
    grid = np.linspace(tau_min, tau_max, 4001)
    values = omega(spec, grid)
    k = int(np.argmax(values))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: -omega(spec, t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10})
    peak, height = (float(res.x), float(-res.fun)) if -res.fun >= values[k] else (float(grid[k]), float(values[k]))
    half = height / 2.0
    left = brentq(lambda t: omega(spec, t) - half, tau_min, peak, xtol=1e-12)
    right = brentq(lambda t: omega(spec, t) - half, peak, tau_max, xtol=1e-12)
    width = right - left
    box_params = replace(spec.params, gamma=height)
    box = PulseSpec.named(PulseKind.BOX, box_params, t0=width / box_params.alpha)
    return MatchedBox(box, left, height, width)


def envelope_discrepancy(spec: PulseSpec, box: MatchedBox) -> float:
    '''Relative L1 distance between the smooth envelope and its matched box.'''
    tau_min, tau_max = default_span(spec)
    points = [box.start, box.start + box.width]
    diff, _ = quad(lambda t: abs(omega(spec, t) - box.envelope(t)), tau_min, tau_max,
                   points=points, limit=500, epsabs=1e-13, epsrel=1e-10)
    total, _ = quad(lambda t: omega(spec, t), tau_min, tau_max, points=points, limit=500,
                    epsabs=1e-13, epsrel=1e-10)
    return diff / total


@dataclass(frozen=True)
class SmoothBoxPoint:
    delta_minus_one: float
    envelope_discrepancy: float
    smooth_population: float
    box_population: float

    @property
    def population_discrepancy(self) -> float:
        return abs(self.smooth_population - self.box_population) / max(self.box_population, 1e-300)


def smooth_box_convergence(params: DimensionlessParams, offsets=(1e-3, 1e-6, 1e-9),
                           cfg_overrides: dict | None = None) -> list[SmoothBoxPoint]:
    '''Envelope and final-population discrepancy against the matched box as delta -> 1.'''
    points = []
    for off in offsets:
        spec = PulseSpec.named(PulseKind.SMOOTH_BOX, params, delta=1.0 + off)
        box = matched_box(spec)
        cfg = IntegratorConfig.for_pulse(spec, **(cfg_overrides or {}))
        smooth_pop = final_population(spec, method="numeric", cfg=cfg)
        box_pop = final_population(box.spec)
        points.append(SmoothBoxPoint(off, envelope_discrepancy(spec, box), smooth_pop, box_pop))
    return points
