# heun_pulses/errors.py
"""
Exception hierarchy shared by every module.

ParameterError  -> a constructed type rejected its inputs (CLI exit 1)
NumericalError  -> a computation could not deliver its result (CLI exit 2)
"""
from typing import Any


class PulseSolverError(Exception):
    '''Base class for every error raised by heun_pulses.'''


# ---------------------------------------------------------------------------
# Invalid inputs
# ---------------------------------------------------------------------------

class ParameterError(PulseSolverError, ValueError):
    '''A parameter set violates the invariants of the type being built.'''


class NotExactlySolvableError(ParameterError):
    '''The pulse has no Heun, confluent Heun or hypergeometric reduction.'''


# ---------------------------------------------------------------------------
# Numerical failures
# ---------------------------------------------------------------------------

class NumericalError(PulseSolverError, ArithmeticError):
    '''A numerical procedure failed to produce a trustworthy value.'''


class DomainError(NumericalError):
    '''Argument lies outside the region where the evaluation is defined.'''


class InfiniteTimeError(DomainError):
    '''phi at 0 or 1 maps to tau = -inf or +inf.'''


class PoleError(NumericalError):
    '''Evaluation at a pole (gamma function, 2F1 lower parameter).'''


class DivergenceError(NumericalError):
    '''A series or Gauss sum that does not converge at the requested point.'''


class DegenerateParameterError(NumericalError, ZeroDivisionError):
    '''The recursion divides by zero for this parameter set (u = 0 or c = 0).'''


class ConvergenceError(NumericalError):
    def __init__(self, message: str, tail_estimate: float, terms_used: int = 0):
        super().__init__(f"{message} (tail {tail_estimate:.3e} after {terms_used} terms)")
        self.tail_estimate = tail_estimate
        self.terms_used = terms_used


class ContinuationError(NumericalError):
    def __init__(self, message: str, closest_point: float):
        super().__init__(f"{message} (reached {closest_point!r})")
        self.closest_point = closest_point


class IntegrationError(NumericalError):
    '''Integrator gave up; `partial` holds the trajectory up to the failure.'''
    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(NumericalError):
    def __init__(self, message: str, best_estimate: float):
        super().__init__(f"{message} (best estimate {best_estimate!r})")
        self.best_estimate = best_estimate
