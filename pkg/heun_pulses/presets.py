# # File: heun_pulses/presets.py
from heun_pulses.dynamics import IntegratorConfig
from heun_pulses.pulses import DimensionlessParams, PulseSpec, default_span
from heun_pulses.xuv import MediumParams


def _float_or_default(settings: dict, key: str, default: float | None) -> float | None:
    """Helper to get a float from settings dict, or return default if not present or not convertible."""
    try:
        value = settings.get(key, default)
        return None if value is None else float(value)
    except (TypeError, ValueError):
        return default

def _int_or_default(settings: dict, key: str, default: int) -> int:
    try:
        return int(settings.get(key, default))
    except (TypeError, ValueError):
        return default

def _pair_or_default(settings: dict, key: str, default: tuple[float, float]) -> tuple[float, float]:
    '''Two-element list from JSON, e.g. [1e16, 1e19].'''
    raw = settings.get(key, default)
    try:
        lo, hi = (float(x) for x in raw)
        return lo, hi
    except (TypeError, ValueError):
        return default


class solverPresets:
    """Integrator, quadrature and sweep settings, can be tweaked in solver_settings.json."""

    solverSettingsTable = {
        #  attr                 json-key
        "rel_tol"          : "Integrator Relative Tolerance",
        "abs_tol"          : "Integrator Absolute Tolerance",
        "tau_min"          : "Default Tau Min",
        "tau_max"          : "Default Tau Max",
        "max_steps"        : "Integrator Max Steps",
        "sample_count"     : "Default Sample Count",
        "switch_magnitude" : "Riccati Switch Magnitude",
        "quad_tol"         : "Quadrature Relative Tolerance",
        "sweep_workers"    : "Sweep Worker Count",
    }
    countSettings = ("max_steps", "sample_count", "sweep_workers")

    def to_dict(self) -> dict:
        return {json_key: getattr(self, attr) for attr, json_key in self.solverSettingsTable.items()}

    def update_from_dict(self, settings: dict) -> None:
        """
        Updates the attributes from a loaded settings dictionary.
        Missing or unreadable keys keep their current value.
        """
        for attr, json_key in self.solverSettingsTable.items():
            if attr in self.countSettings:
                setattr(self, attr, _int_or_default(settings, json_key, getattr(self, attr)))
            else:
                setattr(self, attr, _float_or_default(settings, json_key, getattr(self, attr)))

    def integrator_config(self, spec: PulseSpec | None = None, **overrides) -> IntegratorConfig:
        '''IntegratorConfig from the presets; a None tau bound falls back to the pulse's own span.'''
        span = default_span(spec) if spec is not None else (-20.0, 20.0)
        tau_min = self.tau_min if self.tau_min is not None else span[0]
        tau_max = self.tau_max if self.tau_max is not None else span[1]
        fields = dict(rel_tol=self.rel_tol, abs_tol=self.abs_tol, tau_span=(tau_min, tau_max),
                      max_steps=self.max_steps, sample_count=self.sample_count,
                      switch_magnitude=self.switch_magnitude)
        fields.update(overrides)
        return IntegratorConfig(**fields)

    def __init__(self, settings_from_file: dict | None = None):
        # Integrator
        self.rel_tol          = 1e-10
        self.abs_tol          = 1e-12
        self.max_steps        = 1_000_000
        self.switch_magnitude = 10.0

        # Sampling; None means the pulse's default span
        self.tau_min: float | None = None
        self.tau_max: float | None = None
        self.sample_count     = 401

        # Quadrature and sweeps
        self.quad_tol         = 1e-10
        self.sweep_workers    = 4

        self.update_from_dict(settings_from_file or {})


class captionPreset:
    """Named (Omega_0, alpha, Delta) parameter set in units of omega_c."""

    captionTable = {
        #  attr          json-key
        "omega0"    : "Omega0 (w_c)",
        "alpha"     : "Alpha (w_c)",
        "detuning"  : "Detuning (w_c)",
        "delta"     : "Smooth Box Delta",
        "t0"        : "Box Duration (1/w_c)",
    }

    def update_from_dict(self, settings: dict) -> None:
        for attr, json_key in self.captionTable.items():
            setattr(self, attr, _float_or_default(settings, json_key, getattr(self, attr)))
        self.kind = settings.get("Pulse Kind", self.kind)

    def to_dict(self) -> dict:
        out = {json_key: getattr(self, attr) for attr, json_key in self.captionTable.items()
               if getattr(self, attr) is not None}
        if self.kind is not None:
            out["Pulse Kind"] = self.kind
        return out

    def to_dimensionless(self) -> DimensionlessParams:
        '''gamma = Omega_0/alpha, beta = Delta/alpha.'''
        return DimensionlessParams.from_physical(self.omega0, self.alpha, self.detuning)

    def __init__(self, name: str, settings_from_file: dict | None = None):
        self.name = name
        self.omega0 = 0.02
        self.alpha = 0.08
        self.detuning = 0.2
        self.delta: float | None = None
        self.t0: float | None = None
        self.kind: str | None = None

        self.update_from_dict(settings_from_file or {})


class mediumPreset:
    """Medium inputs for the XUV estimate and the scan ranges of the energy bracket."""

    mediumTable = {
        #  attr                json-key
        "number_density" : "Number Density (cm^-3)",
        "dipole_ab"      : "Dipole Moment (Debye)",
        "length"         : "Medium Length (cm)",
        "wavelength4"    : "Signal Wavelength (cm)",
        "rho_cb"         : "Raman Coherence",
        "omega3_tau"     : "Probe Area",
        "pump_duration"  : "Pump Duration (s)",
        "cross_section"  : "Collision Cross Section (cm^2)",
        "rho_aa0"        : "Initial Excited Population",
        "beam_area"      : "Beam Area (cm^2)",
        "gamma_r"        : "Radiative Decay Rate (1/s)",
    }
    scanTable = {
        #  attr               json-key
        "densities"      : "Density Scan (cm^-3)",
        "omega3_taus"    : "Probe Area Scan",
    }

    def update_from_dict(self, settings: dict) -> None:
        for attr, json_key in self.mediumTable.items():
            setattr(self, attr, _float_or_default(settings, json_key, getattr(self, attr)))
        for attr, json_key in self.scanTable.items():
            setattr(self, attr, _pair_or_default(settings, json_key, getattr(self, attr)))
        self.z = _float_or_default(settings, "Emission Depth (cm)", self.z)

    def to_medium(self) -> MediumParams:
        return MediumParams(**{attr: getattr(self, attr) for attr in self.mediumTable})

    def __init__(self, name: str, settings_from_file: dict | None = None):
        defaults = MediumParams()
        self.name = name
        for attr in self.mediumTable:
            setattr(self, attr, getattr(defaults, attr))
        self.densities   = (1e16, 1e19)
        self.omega3_taus = (1.0, 1e3)
        self.z           = defaults.length

        self.update_from_dict(settings_from_file or {})


def captions_from_dict(settings: dict) -> dict[str, captionPreset]:
    return {name: captionPreset(name, values) for name, values in settings.items() if isinstance(values, dict)}

def media_from_dict(settings: dict) -> dict[str, mediumPreset]:
    return {name: mediumPreset(name, values) for name, values in settings.items() if isinstance(values, dict)}
