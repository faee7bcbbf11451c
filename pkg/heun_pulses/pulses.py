# heun_pulses/pulses.py
"""
Exactly solvable pulse envelopes and the phase map phi(tau).

    2 tau = mu ln(phi) - (mu + lambda) ln(1 - phi),   mu > 0, lambda/mu > -1

Heun family:       Omega = sqrt(4 phi (1-phi)(ab phi - q)/(c - phi)) / (mu + lambda phi)
Confluent family:  Omega = sqrt(4 phi (phi-1)(p phi + q)) / (mu + lambda phi)
Named pulses use mu = 1, lambda = 0, phi = (1 + tanh tau)/2.
"""
# ---------------------------------------------------------------------------
# Imports
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import expit

from heun_pulses.errors import (DomainError, InfiniteTimeError, NotExactlySolvableError,
                                ParameterError, QuadratureError)
from heun_pulses.specfun import ConfluentHeunParams, HeunParams
# ---------------------------------------------------------------------------

RADICAND_GRID = 1024
SATURATION    = 1e-16


class PulseKind(str, Enum):
    HEUN_FAMILY      = "heun-family"
    CONFLUENT_FAMILY = "confluent-family"
    SECH             = "sech"
    OMEGA_DELTA      = "omega-delta"
    OMEGA_ONE        = "omega-one"
    OMEGA_PLUS       = "omega-plus"
    OMEGA_MINUS      = "omega-minus"
    BOX              = "box"
    SMOOTH_BOX       = "smooth-box"

NAMED_KINDS = (PulseKind.SECH, PulseKind.OMEGA_DELTA, PulseKind.OMEGA_ONE, PulseKind.OMEGA_PLUS,
               PulseKind.OMEGA_MINUS, PulseKind.BOX, PulseKind.SMOOTH_BOX)


# ---------------------------------------------------------------------------
# Parameter types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionlessParams:
    '''tau = alpha t, beta = Delta/alpha, gamma = Omega_0/alpha.'''
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ParameterError(f"alpha must be positive, got {self.alpha}")
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise ParameterError(f"gamma must be non-negative, got {self.gamma}")
        if not math.isfinite(self.beta):
            raise ParameterError(f"beta must be finite, got {self.beta}")

    @classmethod
    def from_physical(cls, omega0: float, alpha: float, detuning: float) -> "DimensionlessParams":
        '''(Omega_0, alpha, Delta) in any common frequency unit.'''
        if alpha <= 0:
            raise ParameterError(f"alpha must be positive, got {alpha}")
        return cls(alpha=alpha, beta=detuning / alpha, gamma=omega0 / alpha)


@dataclass(frozen=True)
class PhaseMap:
    mu: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "lam", float(self.lam))
        if not self.mu > 0:
            raise ParameterError(f"phase map needs mu > 0, got {self.mu}")
        if not self.lam / self.mu > -1:
            raise ParameterError(f"phase map needs lambda/mu > -1, got {self.lam / self.mu}")

    @property
    def is_symmetric(self) -> bool:
        return self.mu == 1.0 and self.lam == 0.0

    def rate(self, phi):
        '''dphi/dtau = 2 phi (1 - phi)/(mu + lambda phi).'''
        phi = np.asarray(phi, dtype=float)
        return 2.0 * phi * (1.0 - phi) / (self.mu + self.lam * phi)


@dataclass(frozen=True)
class PhaseRoot:
    '''phi(tau) and 1 - phi; saturated once either drops below SATURATION.'''
    phi: float
    complement: float       # 1 - phi, resolved independently of phi
    saturated: bool


# ---------------------------------------------------------------------------
# Phase map
# ---------------------------------------------------------------------------

def time_of_phase(pmap: PhaseMap, phi: float) -> float:
    '''tau = (1/2) ln[phi^mu / (1 - phi)^(mu + lambda)].'''
    phi = float(phi)
    if not 0.0 < phi < 1.0:
        raise InfiniteTimeError(f"phi = {phi} is not inside (0, 1)")
    return 0.5 * (pmap.mu * math.log(phi) - (pmap.mu + pmap.lam) * math.log1p(-phi))


def phase_of_time(pmap: PhaseMap, tau: float, tol: float = 1e-14) -> PhaseRoot:
    '''Invert the phase map in the logit variable x = ln(phi/(1-phi)).

    2 tau = mu x + lambda ln(1 + e^x), strictly increasing with slope
    mu + lambda phi >= min(mu, mu + lambda).'''
    if tol <= 0:
        raise ParameterError(f"tolerance must be positive, got {tol}")
    tau = float(tau)
    mu, lam = pmap.mu, pmap.lam
    if lam == 0.0:
        x = 2.0 * tau / mu
    else:
        slope_min = min(mu, mu + lam)
        slope_max = max(mu, mu + lam)
        # piecewise-linear asymptote: x ~ 2 tau/mu for tau -> -inf, 2 tau/(mu + lam) for tau -> +inf
        x0 = 2.0 * tau / (mu + lam) if tau >= 0 else 2.0 * tau / mu
        pad = abs(lam) * math.log(2.0) / slope_min + 1.0

        def residual(x):
            return mu * x + lam * np.logaddexp(0.0, x) - 2.0 * tau
        x = brentq(residual, x0 - pad, x0 + pad, xtol=2.0 * tol / slope_max, rtol=4 * np.finfo(float).eps)
    phi = float(expit(x))
    complement = float(expit(-x))
    saturated = min(phi, complement) < SATURATION
    return PhaseRoot(phi, complement, saturated)


def phase_grid(pmap: PhaseMap, tau) -> tuple[np.ndarray, np.ndarray]:
    '''(phi, 1 - phi) over an array of times.'''
    tau = np.asarray(tau, dtype=float)
    if pmap.lam == 0.0:
        x = 2.0 * tau / pmap.mu
        return expit(x), expit(-x)
    roots = [phase_of_time(pmap, t) for t in tau.ravel()]
    phi = np.array([r.phi for r in roots]).reshape(tau.shape)
    comp = np.array([r.complement for r in roots]).reshape(tau.shape)
    return phi, comp


# ---------------------------------------------------------------------------
# Pulse description
# ---------------------------------------------------------------------------

def _heun_radicand(ab: float, q: float, c: float, phi, comp):
    return 4.0 * phi * comp * (ab * phi - q) / ((c - 1.0) + comp)


def _confluent_radicand(p: float, q: float, phi, comp):
    return -4.0 * phi * comp * (p * phi + q)


@dataclass(frozen=True)
class PulseSpec:
    '''Tagged envelope description.

    Family kinds use (ab, q, c) or (p, q) with their own phase map; params.gamma
    is not used by them. Named kinds read gamma from params and fix mu = 1,
    lambda = 0. box stores its width as physical time t0.'''
    kind: PulseKind
    params: DimensionlessParams = field(default_factory=DimensionlessParams)
    ab: float = 0.0
    q: float = 0.0
    c: float = 2.0
    p: float = 0.0
    phase_map: PhaseMap = field(default_factory=PhaseMap)
    delta: float | None = None
    t0: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", PulseKind(self.kind))
        if self.kind in NAMED_KINDS and not self.phase_map.is_symmetric:
            raise ParameterError(f"{self.kind.value} uses the symmetric phase map mu = 1, lambda = 0")
        if self.kind == PulseKind.HEUN_FAMILY:
            if not self.c > 1:
                raise ParameterError(f"Heun family needs c > 1, got {self.c}")
            self._check_radicand(lambda phi, comp: _heun_radicand(self.ab, self.q, self.c, phi, comp),
                                 -self.q / self.c, (self.ab - self.q) / (self.c - 1))
        elif self.kind == PulseKind.CONFLUENT_FAMILY:
            self._check_radicand(lambda phi, comp: _confluent_radicand(self.p, self.q, phi, comp),
                                 -self.q, -(self.p + self.q))
        elif self.kind in (PulseKind.OMEGA_DELTA, PulseKind.SMOOTH_BOX):
            if self.delta is None or not self.delta > 1:
                raise ParameterError(f"{self.kind.value} needs delta > 1, got {self.delta}")
        elif self.kind == PulseKind.BOX:
            if self.t0 is None or not self.t0 > 0:
                raise ParameterError(f"box pulse needs t0 > 0, got {self.t0}")

    def _check_radicand(self, radicand, left_limit: float, right_limit: float) -> None:
        '''Radicand >= 0 on a 1024-point interior grid and in both endpoint limits.'''
        phi = np.linspace(0.0, 1.0, RADICAND_GRID + 2)[1:-1]
        values = radicand(phi, 1.0 - phi)
        scale = max(1.0, float(np.max(np.abs(values))))
        if np.any(values < -1e-14 * scale) or left_limit < 0 or right_limit < 0:
            raise ParameterError(f"{self.kind.value} radicand is negative somewhere on (0, 1)")

    # -- constructors ------------------------------------------------------

    @classmethod
    def heun_family(cls, ab: float, q: float, c: float, phase_map: PhaseMap = PhaseMap(),
                    params: DimensionlessParams = DimensionlessParams()) -> "PulseSpec":
        return cls(PulseKind.HEUN_FAMILY, params=params, ab=ab, q=q, c=c, phase_map=phase_map)

    @classmethod
    def confluent_family(cls, p: float, q: float, phase_map: PhaseMap = PhaseMap(),
                         params: DimensionlessParams = DimensionlessParams()) -> "PulseSpec":
        return cls(PulseKind.CONFLUENT_FAMILY, params=params, p=p, q=q, phase_map=phase_map)

    @classmethod
    def named(cls, kind: PulseKind | str, params: DimensionlessParams,
              delta: float | None = None, t0: float | None = None) -> "PulseSpec":
        kind = PulseKind(kind)
        if kind not in NAMED_KINDS:
            raise ParameterError(f"{kind.value} is a family, not a named pulse")
        return cls(kind, params=params, delta=delta, t0=t0)

    def with_params(self, params: DimensionlessParams | None) -> "PulseSpec":
        return self if params is None or params == self.params else replace(self, params=params)

    @property
    def box_width(self) -> float:
        '''Box width in dimensionless time, alpha * t0.'''
        return self.params.alpha * self.t0

    def breakpoints(self) -> tuple[float, ...]:
        '''Times where the envelope is discontinuous.'''
        return (0.0, self.box_width) if self.kind == PulseKind.BOX else ()


# ---------------------------------------------------------------------------
# Envelopes
# ---------------------------------------------------------------------------

def _scalar_or_array(values: np.ndarray, like):
    return float(values) if np.ndim(like) == 0 else values


def _sech(tau):
    a = np.abs(tau)
    e = np.exp(-a)
    return 2.0 * e / (1.0 + e * e)


def omega_heun_family(spec: PulseSpec, tau):
    if spec.kind != PulseKind.HEUN_FAMILY:
        raise ParameterError(f"omega_heun_family called with {spec.kind.value}")
    phi, comp = phase_grid(spec.phase_map, tau)
    rad = _heun_radicand(spec.ab, spec.q, spec.c, phi, comp)
    if np.any(rad < 0):
        raise DomainError("negative Heun-family radicand")
    omega = np.sqrt(rad) / (spec.phase_map.mu + spec.phase_map.lam * phi)
    return _scalar_or_array(omega, tau)


def omega_confluent_family(spec: PulseSpec, tau):
    if spec.kind != PulseKind.CONFLUENT_FAMILY:
        raise ParameterError(f"omega_confluent_family called with {spec.kind.value}")
    phi, comp = phase_grid(spec.phase_map, tau)
    rad = _confluent_radicand(spec.p, spec.q, phi, comp)
    if np.any(rad < 0):
        raise DomainError("negative confluent-family radicand")
    omega = np.sqrt(rad) / (spec.phase_map.mu + spec.phase_map.lam * phi)
    return _scalar_or_array(omega, tau)


def omega_named(spec: PulseSpec, tau):
    '''Named envelopes in dimensionless time.'''
    t = np.asarray(tau, dtype=float)
    g = spec.params.gamma
    kind = spec.kind
    if kind == PulseKind.SECH:
        omega = g * _sech(t)
    elif kind in (PulseKind.OMEGA_DELTA, PulseKind.SMOOTH_BOX):
        # delta - tanh(tau) = (delta - 1) + 2 expit(-2 tau)
        omega = g * _sech(t) / np.sqrt((spec.delta - 1.0) + 2.0 * expit(-2.0 * t))
    elif kind == PulseKind.OMEGA_ONE:
        omega = g * np.sqrt(2.0 * expit(2.0 * t))
    elif kind == PulseKind.OMEGA_PLUS:
        omega = g * _sech(t) * np.sqrt(2.0 * expit(2.0 * t))
    elif kind == PulseKind.OMEGA_MINUS:
        omega = g * _sech(t) * np.sqrt(2.0 * expit(-2.0 * t))
    elif kind == PulseKind.BOX:
        omega = np.where((t > 0.0) & (t < spec.box_width), g, 0.0)
    else:
        raise ParameterError(f"omega_named called with {kind.value}")
    return _scalar_or_array(np.asarray(omega, dtype=float), tau)


def omega(spec: PulseSpec, tau):
    '''Omega(tau) for any pulse kind.'''
    if spec.kind == PulseKind.HEUN_FAMILY:
        return omega_heun_family(spec, tau)
    if spec.kind == PulseKind.CONFLUENT_FAMILY:
        return omega_confluent_family(spec, tau)
    return omega_named(spec, tau)


def pulse_area(spec: PulseSpec, tau_min: float = -math.inf, tau_max: float = math.inf,
               tol: float = 1e-10) -> float:
    '''A = 2 * integral of Omega dtau, so that the resonant probability is sin^2(A/2).'''
    if not tau_min < tau_max:
        raise ParameterError(f"need tau_min < tau_max, got {tau_min}, {tau_max}")
    edges = [tau_min] + [b for b in spec.breakpoints() if tau_min < b < tau_max] + [tau_max]
    total = err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        out = quad(lambda t: omega(spec, t), lo, hi, epsrel=tol, epsabs=0.0, limit=400, full_output=1)
        val, est = out[0], out[1]
        total += val
        err += est
        if len(out) > 3 or not math.isfinite(val):
            raise QuadratureError(f"pulse area quadrature did not converge on [{lo}, {hi}]", 2.0 * total)
    if err > max(tol * abs(total), 1e-300) * 10:
        raise QuadratureError("pulse area error estimate above tolerance", 2.0 * total)
    return 2.0 * total


def rescale_to_area(spec: PulseSpec, area: float) -> PulseSpec:
    '''Same shape, amplitude scaled so that pulse_area(spec) == area.'''
    if not area >= 0:
        raise ParameterError(f"area must be non-negative, got {area}")
    current = pulse_area(spec)
    if current <= 0:
        raise ParameterError(f"{spec.kind.value} has zero area and cannot be rescaled")
    scale = area / current
    if spec.kind == PulseKind.HEUN_FAMILY:
        return replace(spec, ab=spec.ab * scale ** 2, q=spec.q * scale ** 2)
    if spec.kind == PulseKind.CONFLUENT_FAMILY:
        return replace(spec, p=spec.p * scale ** 2, q=spec.q * scale ** 2)
    return replace(spec, params=replace(spec.params, gamma=spec.params.gamma * scale))


def gamma_for_area(spec: PulseSpec, area: float) -> float:
    '''gamma giving a named pulse the requested area.'''
    if spec.kind not in NAMED_KINDS:
        raise ParameterError(f"{spec.kind.value} has no gamma; use rescale_to_area")
    unit = replace(spec, params=replace(spec.params, gamma=1.0))
    return area / pulse_area(unit)


def default_span(spec: PulseSpec) -> tuple[float, float]:
    '''Integration window standing in for (-inf, +inf).'''
    tau_min, tau_max = -20.0, 20.0
    if spec.kind in (PulseKind.OMEGA_DELTA, PulseKind.SMOOTH_BOX):
        # plateau extends to about ln(2/(delta - 1))/2
        tau_max += max(0.0, 0.5 * math.log(2.0 / (spec.delta - 1.0)))
    elif spec.kind == PulseKind.BOX:
        tau_max = max(tau_max, spec.box_width + 1.0)
    return tau_min, tau_max


# ---------------------------------------------------------------------------
# ODE parameter maps
# ---------------------------------------------------------------------------

def _family_exponents(beta: float, pmap: PhaseMap) -> tuple[complex, complex]:
    u = 0.5 - 0.5j * beta * pmap.mu
    v = 0.5 + 0.5j * beta * (pmap.mu + pmap.lam)
    return u, v


def heun_params_for(spec: PulseSpec, params: DimensionlessParams | None = None) -> HeunParams | ConfluentHeunParams:
    '''ODE parameters obeyed by C_a(phi) for an exactly solvable pulse.'''
    spec = spec.with_params(params)
    beta, gamma = spec.params.beta, spec.params.gamma
    kind = spec.kind
    if kind == PulseKind.HEUN_FAMILY:
        if spec.ab != 0:
            raise NotExactlySolvableError("ab != 0 adds a singular point at phi = q/ab")
        u, v = _family_exponents(beta, spec.phase_map)
        return HeunParams.from_fuchs(a=0, c=spec.c, q=spec.q, u=u, v=v, w=0.5)
    if kind in (PulseKind.OMEGA_DELTA, PulseKind.SMOOTH_BOX):
        u, v = _family_exponents(beta, PhaseMap())
        return HeunParams.from_fuchs(a=0, c=(spec.delta + 1) / 2, q=-gamma ** 2 / 2, u=u, v=v, w=0.5)
    if kind == PulseKind.OMEGA_ONE:
        # c = 1: v + w carries the exponent sum 1 + i beta/2
        u, v = _family_exponents(beta, PhaseMap())
        return HeunParams.from_fuchs(a=0, c=1.0, q=-gamma ** 2 / 2, u=u, v=v, w=0.5)
    if kind == PulseKind.SECH:
        u, v = _family_exponents(beta, PhaseMap())
        return ConfluentHeunParams(u=u, v=v, p=0.0, q=-gamma ** 2)
    if kind == PulseKind.OMEGA_PLUS:
        return ConfluentHeunParams(u=-0.5j * beta, v=0.5 + 0.5j * beta, p=-2 * gamma ** 2, q=0.0)
    if kind == PulseKind.OMEGA_MINUS:
        return ConfluentHeunParams(u=0.5 - 0.5j * beta, v=0.5j * beta, p=2 * gamma ** 2, q=-2 * gamma ** 2)
    if kind == PulseKind.CONFLUENT_FAMILY:
        mu, lam = spec.phase_map.mu, spec.phase_map.lam
        p, q = spec.p, spec.q
        if q == 0 and p != 0:
            return ConfluentHeunParams(u=-0.5j * beta * mu, v=0.5 + 0.5j * beta * (mu + lam), p=p, q=0.0)
        if p == 0:
            u, v = _family_exponents(beta, spec.phase_map)
            return ConfluentHeunParams(u=u, v=v, p=0.0, q=q)
        if p == -q:
            return ConfluentHeunParams(u=0.5 - 0.5j * beta * mu, v=0.5j * beta * (mu + lam), p=p, q=q)
        raise NotExactlySolvableError("confluent family is exactly solvable only for p = -q, p = 0 or q = 0")
    raise NotExactlySolvableError("box pulse has an elementary closed form instead")
