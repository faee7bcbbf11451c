# heun_pulses/xuv.py
"""
XUV signal estimate and the coherent-emission (superradiant) pulse.

Inputs are in practical units (cm, cm^-3, Debye, s); the signal-field chain is
evaluated in SI through scipy.constants, the emission formulas keep the CGS
form they are written in (lambda in cm, N in cm^-3).
"""
# ---------------------------------------------------------------------------
# Imports
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import constants
from scipy.integrate import quad

from heun_pulses.errors import ParameterError, QuadratureError
from heun_pulses.specfun import bessel_j
# ---------------------------------------------------------------------------

CM     = 1e-2                         # m
DEBYE  = 1e-21 / constants.c          # C m
HBAR   = constants.hbar
EPS0   = constants.epsilon_0

GAMMA_R_HYDROGEN_2P = 6.2649e8        # s^-1, 2p -> 1s spontaneous rate
FLUENCE_X_MAX       = 200.0           # x = 2 sqrt(eta z tau); eta z tau = 1e4
SMALL_ARGUMENT      = 1e-4


@dataclass(frozen=True)
class MediumParams:
    number_density: float = 1e17      # cm^-3
    dipole_ab: float = 1.0            # Debye
    length: float = 1e-2              # cm
    wavelength4: float = 1e-6         # cm
    rho_cb: float = 0.1
    omega3_tau: float = 1.0
    pump_duration: float = 1e-12      # s
    cross_section: float = 3e-16      # cm^2, collisional
    rho_aa0: float = 0.01
    beam_area: float | None = None    # cm^2, defaults to length**2
    gamma_r: float = GAMMA_R_HYDROGEN_2P

    def __post_init__(self):
        for name in ("number_density", "dipole_ab", "length", "wavelength4", "omega3_tau",
                     "pump_duration", "cross_section", "gamma_r"):
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise ParameterError(f"medium {name} must be positive, got {val}")
        if not 0 <= self.rho_cb <= 0.5:
            raise ParameterError(f"rho_cb must lie in [0, 0.5], got {self.rho_cb}")
        if not 0 <= self.rho_aa0 <= 1:
            raise ParameterError(f"rho_aa0 must lie in [0, 1], got {self.rho_aa0}")
        if self.beam_area is not None and not self.beam_area > 0:
            raise ParameterError(f"beam area must be positive, got {self.beam_area}")

    @property
    def area(self) -> float:
        '''Beam cross-section in cm^2.'''
        return self.beam_area if self.beam_area is not None else self.length ** 2

    @property
    def omega_ab(self) -> float:
        '''Angular frequency of the emitted line, rad/s.'''
        return 2.0 * math.pi * constants.c / (self.wavelength4 * CM)


@dataclass(frozen=True)
class XuvEstimate:
    omega4: float               # rad/s
    pulse_energy: float         # J
    coherence_lifetime: float   # s
    field_strength: float = 0.0  # V/m


# ---------------------------------------------------------------------------
# Signal field
# ---------------------------------------------------------------------------

def signal_rabi(m: MediumParams) -> XuvEstimate:
    '''Omega_4 = k4 L d^2 N rho_cb Omega_3 tau / (8 pi eps0 hbar), SI.

    The field E = hbar Omega_4 / d is carried over the pump duration through
    the beam area; the coherence lasts 1/(sigma c N).'''
    k4 = 2.0 * math.pi / (m.wavelength4 * CM)
    dipole = m.dipole_ab * DEBYE
    density = m.number_density / CM ** 3
    omega4 = (k4 * m.length * CM * dipole ** 2 * density * m.rho_cb * m.omega3_tau
              / (8.0 * math.pi * EPS0 * HBAR))
    e_field = HBAR * omega4 / dipole
    energy = constants.c * EPS0 * e_field ** 2 * m.area * CM ** 2 * m.pump_duration
    return XuvEstimate(omega4, energy, coherence_lifetime(m), e_field)


def coherence_lifetime(m: MediumParams) -> float:
    '''1/(sigma c N): time between collisions that destroy the coherence.'''
    return 1.0 / (m.cross_section * CM ** 2 * constants.c * m.number_density / CM ** 3)


@dataclass(frozen=True)
class EnergyBracket:
    '''Min/max pulse energy over the density and probe-area scans.

    field_* is the signal-field chain of signal_rabi; stored_* is the
    energy-balance supplement A L N rho_cb^2 hbar omega.'''
    field_min: float
    field_max: float
    stored_min: float
    stored_max: float
    densities: tuple[float, ...] = field(default_factory=tuple)
    omega3_taus: tuple[float, ...] = field(default_factory=tuple)

    def overlaps(self, lo: float, hi: float) -> bool:
        return self.field_min <= hi and self.field_max >= lo

    def stored_overlaps(self, lo: float, hi: float) -> bool:
        return self.stored_min <= hi and self.stored_max >= lo

    @property
    def field_decades(self) -> float:
        return math.log10(self.field_max / self.field_min) if self.field_min > 0 else math.inf


def stored_energy(m: MediumParams) -> float:
    '''A L N rho_cb^2 hbar omega: energy held by the prepared coherence.'''
    _, energy = pulse_power_and_energy(replace(m, rho_aa0=m.rho_cb ** 2), m.length, m.gamma_r,
                                       m.area, m.omega_ab)
    return energy


def energy_bracket(m: MediumParams, densities=(1e16, 1e19), omega3_taus=(1.0, 1e3),
                   points: int = 7) -> EnergyBracket:
    '''Scan N and Omega_3 tau log-uniformly and report the field chain with the stored-energy supplement.'''
    if points < 2:
        raise ParameterError(f"need at least 2 scan points, got {points}")
    n_grid = np.geomspace(densities[0], densities[1], points)
    w_grid = np.geomspace(omega3_taus[0], omega3_taus[1], points)
    stored, fields = [], []
    for n in n_grid:
        for w in w_grid:
            sample = replace(m, number_density=float(n), omega3_tau=float(w))
            stored.append(stored_energy(sample))
            fields.append(signal_rabi(sample).pulse_energy)
    return EnergyBracket(min(fields), max(fields), min(stored), max(stored),
                         tuple(float(x) for x in n_grid), tuple(float(x) for x in w_grid))


# ---------------------------------------------------------------------------
# Coherent emission
# ---------------------------------------------------------------------------

def tipping_angle(rho_aa0: float) -> float:
    '''phi_0 = 2 sqrt(rho_aa0).'''
    if not 0 <= rho_aa0 <= 1:
        raise ParameterError(f"rho_aa0 must lie in [0, 1], got {rho_aa0}")
    return 2.0 * math.sqrt(rho_aa0)


def emission_coupling(m: MediumParams) -> float:
    '''eta = 3 lambda^2 N gamma_r / (8 pi), cm^-1 s^-1.'''
    return 3.0 * m.wavelength4 ** 2 * m.number_density * m.gamma_r / (8.0 * math.pi)


@dataclass(frozen=True, eq=False)
class EmissionGrid:
    z: np.ndarray
    tau: np.ndarray
    theta: np.ndarray     # shape (len(z), len(tau))
    omega: np.ndarray


@dataclass(frozen=True)
class EmissionSolution:
    eta: float
    phi0: float
    grid: EmissionGrid | None = None

    def __post_init__(self):
        if not self.eta > 0:
            raise ParameterError(f"eta must be positive, got {self.eta}")
        if not self.phi0 >= 0:
            raise ParameterError(f"tipping angle must be non-negative, got {self.phi0}")

    @classmethod
    def from_medium(cls, m: MediumParams) -> "EmissionSolution":
        return cls(emission_coupling(m), tipping_angle(m.rho_aa0))


def _check_quadrant(z, tau) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if np.any(z < 0) or np.any(tau < 0):
        raise ParameterError("emission profiles need z >= 0 and tau >= 0")
    return z, tau


def _shape(values: np.ndarray, *inputs):
    return float(values) if all(np.ndim(x) == 0 for x in inputs) else values


def theta_profile(sol: EmissionSolution, z, tau):
    '''theta = phi_0 [1 - J0(2 sqrt(eta z tau))].'''
    z, tau = _check_quadrant(z, tau)
    x = 2.0 * np.sqrt(sol.eta * z * tau)
    return _shape(sol.phi0 * (1.0 - np.asarray(bessel_j(0, x))), z, tau)


def rabi_profile(sol: EmissionSolution, z, tau):
    '''Omega = phi_0 eta z J1(x)/x, x = 2 sqrt(eta z tau), so that theta = 2 int Omega dtau.'''
    z, tau = _check_quadrant(z, tau)
    x = np.asarray(2.0 * np.sqrt(sol.eta * z * tau))
    small = x < SMALL_ARGUMENT
    safe = np.where(small, 1.0, x)
    ratio = np.where(small, 0.5 - x * x / 16.0, np.asarray(bessel_j(1, safe)) / safe)
    return _shape(sol.phi0 * sol.eta * z * ratio, z, tau)


def sample_emission(sol: EmissionSolution, z_values, tau_values) -> EmissionSolution:
    '''theta and Omega on the (z, tau) product grid.'''
    z = np.asarray(z_values, dtype=float).ravel()
    tau = np.asarray(tau_values, dtype=float).ravel()
    zz, tt = np.meshgrid(z, tau, indexing="ij")
    grid = EmissionGrid(z, tau, np.asarray(theta_profile(sol, zz, tt)), np.asarray(rabi_profile(sol, zz, tt)))
    return replace(sol, grid=grid)


def fluence(sol: EmissionSolution, z: float, x_max: float = FLUENCE_X_MAX) -> float:
    '''int_0^T Omega^2 dtau with T set by 2 sqrt(eta z T) = x_max.

    In x the integrand is (phi_0^2 eta z / 2) J1(x)^2 / x; the complete
    integral is phi_0^2 eta z / 4.'''
    if not z > 0:
        raise ParameterError(f"fluence needs z > 0, got {z}")

    def integrand(x):
        return bessel_j(1, x) ** 2 / x if x > 0 else 0.0
    value, err = quad(integrand, 0.0, x_max, limit=1000, epsabs=1e-12, epsrel=1e-10)
    if not math.isfinite(value) or err > 1e-6 * abs(value):
        raise QuadratureError("fluence quadrature did not converge", value)
    return 0.5 * sol.phi0 ** 2 * sol.eta * z * value


def normalized_fluence(sol: EmissionSolution, z: float, x_max: float = FLUENCE_X_MAX) -> float:
    '''(4 / eta z) int Omega^2 dtau, which tends to phi_0^2.'''
    return 4.0 * fluence(sol, z, x_max) / (sol.eta * z)


@dataclass(frozen=True)
class PropagationResidual:
    linearized: float     # theta_ztau + eta (theta - phi_0)
    full: float           # theta_ztau + eta sin(theta - phi_0)
    step: float


def propagation_residual(sol: EmissionSolution, z: float, tau: float, h: float) -> PropagationResidual:
    '''Mixed central difference of theta at (z, tau) with step h.'''
    if not (z - h >= 0 and tau - h >= 0 and h > 0):
        raise ParameterError(f"stencil of step {h} leaves the quadrant at ({z}, {tau})")
    th = lambda zz, tt: theta_profile(sol, zz, tt)  # noqa: E731
    mixed = (th(z + h, tau + h) - th(z + h, tau - h) - th(z - h, tau + h) + th(z - h, tau - h)) / (4.0 * h * h)
    offset = th(z, tau) - sol.phi0
    return PropagationResidual(mixed + sol.eta * offset, mixed + sol.eta * math.sin(offset), h)


def pulse_duration(m: MediumParams, z: float, gamma_r: float | None = None) -> float:
    '''tau_pulse = 4 pi / (3 N lambda^2 z gamma_r), CGS.'''
    gamma_r = m.gamma_r if gamma_r is None else gamma_r
    if not (z > 0 and gamma_r > 0):
        raise ParameterError(f"pulse duration needs z > 0 and gamma_r > 0, got {z}, {gamma_r}")
    return 4.0 * math.pi / (3.0 * m.number_density * m.wavelength4 ** 2 * z * gamma_r)


def pulse_power_and_energy(m: MediumParams, z: float, gamma_r: float | None = None,
                           area: float | None = None, omega_ab: float | None = None) -> tuple[float, float]:
    '''(P, E) with E = A z N rho_aa hbar omega_ab and P = E / tau_pulse.

    A in cm^2, z in cm, omega_ab in rad/s.'''
    area = m.area if area is None else area
    omega_ab = m.omega_ab if omega_ab is None else omega_ab
    if not (area > 0 and omega_ab > 0):
        raise ParameterError(f"need positive area and frequency, got {area}, {omega_ab}")
    energy = area * z * m.number_density * m.rho_aa0 * HBAR * omega_ab
    return energy / pulse_duration(m, z, gamma_r), energy
