"""Steering measures for two-qubit X-states.

An X-operator is fixed by its diagonal ``(d11, d22, d33, d44)`` in the
product basis together with the two antidiagonal coherences ``c14`` and
``c23``. For such operators the violation of the steering inequalities
reduces to closed form, giving a directional measure S(A->B), S(B->A)
analogous to the concurrence. The B->A direction can be certified
independently: an auxiliary X-operator built from the same data has
concurrence equal to 2/sqrt(3) times the steering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

_SQRT3 = math.sqrt(3.0)
# weights of the product terms in the steering thresholds
_W_MINUS = (2.0 - _SQRT3) / 2.0
_W_PLUS = (2.0 + _SQRT3) / 2.0
# diagonal mixing weight of the certification map
_TAU_MIX = (3.0 - _SQRT3) / 6.0

# tolerance for trace and diagonal-range checks
_ATOL = 1e-12


def _sqrt_clamped(x: float) -> float:
    # radicands can land a few ulp below zero right at a transition
    return math.sqrt(x) if x > 0.0 else 0.0


@dataclass(frozen=True)
class XState:
    """Two-qubit X-operator with unit trace.

    Parameters
    ----------
    d11, d22, d33, d44 : float
        Diagonal entries, each in [0, 1] up to a 1e-12 tolerance; values
        in [-1e-12, 0) are clamped to zero. The trace must equal 1 within
        1e-12.
    c14, c23 : complex
        Antidiagonal coherences. Positivity of the full operator is not
        enforced: the leading-order harvested states have d44 = 0 with
        c14 != 0 and are only positive once higher orders are included.
    """

    d11: float
    d22: float
    d33: float
    d44: float
    c14: complex = 0j
    c23: complex = 0j

    def __post_init__(self):
        for name in ("d11", "d22", "d33", "d44"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite")
            if value < -_ATOL or value > 1.0 + _ATOL:
                raise ValidationError(f"{name} = {value!r} outside [0, 1]")
            object.__setattr__(self, name, max(value, 0.0))
        trace = self.d11 + self.d22 + self.d33 + self.d44
        if abs(trace - 1.0) > _ATOL:
            raise ValidationError(f"trace = {trace!r}, expected 1 within {_ATOL}")
        for name in ("c14", "c23"):
            value = complex(getattr(self, name))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValidationError(f"{name} must be finite")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class SteeringThresholds:
    """The three quadratic combinations entering the steering bounds."""

    g_a: float
    g_b: float
    g_c: float


@dataclass(frozen=True)
class SteeringResult:
    """Both steering directions, their difference, and the concurrence."""

    s_ab: float
    s_ba: float
    asymmetry: float
    concurrence: float


def concurrence(state: XState) -> float:
    """Concurrence of an X-state.

    C = 2 max{0, |c14| - sqrt(d22 d33), |c23| - sqrt(d11 d44)}.
    The result is not capped at 1; operators outside the positivity cone
    can exceed the physical range and are reported as computed.
    """
    a = abs(state.c14) - math.sqrt(state.d22 * state.d33)
    b = abs(state.c23) - math.sqrt(state.d11 * state.d44)
    return 2.0 * max(0.0, a, b)


def steering_thresholds(state: XState) -> SteeringThresholds:
    """Quadratic threshold combinations g_a, g_b, g_c of the diagonal."""
    p14 = state.d11 * state.d44
    p23 = state.d22 * state.d33
    cross = 0.25 * (state.d11 + state.d44) * (state.d22 + state.d33)
    return SteeringThresholds(
        g_a=_W_MINUS * p14 + _W_PLUS * p23 + cross,
        g_b=0.25 * (state.d11 - state.d44) * (state.d22 - state.d33),
        g_c=_W_PLUS * p14 + _W_MINUS * p23 + cross,
    )


def steering_b_to_a(state: XState) -> float:
    """Steering of A by measurements on B.

    S(B->A) = max{0, |c14| - sqrt(g_a - g_b), |c23| - sqrt(g_c - g_b)},
    with negative radicands clamped to zero.
    """
    t = steering_thresholds(state)
    return max(
        0.0,
        abs(state.c14) - _sqrt_clamped(t.g_a - t.g_b),
        abs(state.c23) - _sqrt_clamped(t.g_c - t.g_b),
    )


def steering_a_to_b(state: XState) -> float:
    """Steering of B by measurements on A; g_b enters with opposite sign."""
    t = steering_thresholds(state)
    return max(
        0.0,
        abs(state.c14) - _sqrt_clamped(t.g_a + t.g_b),
        abs(state.c23) - _sqrt_clamped(t.g_c + t.g_b),
    )


def steering_asymmetry(state: XState) -> SteeringResult:
    """Evaluate both directions at once.

    The asymmetry is s_ab - s_ba: positive when A steers B more strongly.
    """
    s_ab = steering_a_to_b(state)
    s_ba = steering_b_to_a(state)
    return SteeringResult(
        s_ab=s_ab,
        s_ba=s_ba,
        asymmetry=s_ab - s_ba,
        concurrence=concurrence(state),
    )


def build_tau_ab(state: XState) -> XState:
    """Certification operator for the B->A direction.

    Its concurrence equals (2/sqrt(3)) S(B->A): the first two diagonal
    entries share one mixing term, the last two the other, so that
    3 tau22 tau33 = g_a - g_b and 3 tau11 tau44 = g_c - g_b.
    """
    m = _TAU_MIX * (state.d11 + state.d22)
    n = _TAU_MIX * (state.d33 + state.d44)
    return XState(
        d11=state.d11 / _SQRT3 + m,
        d22=state.d22 / _SQRT3 + m,
        d33=state.d33 / _SQRT3 + n,
        d44=state.d44 / _SQRT3 + n,
        c14=state.c14 / _SQRT3,
        c23=state.c23 / _SQRT3,
    )


def build_tau_ba(state: XState) -> XState:
    """Certification operator for the A->B direction.

    Same construction with the mixing pairs regrouped across the other
    subsystem: rows 1 and 3 share one term, rows 2 and 4 the other.
    """
    m = _TAU_MIX * (state.d11 + state.d33)
    n = _TAU_MIX * (state.d22 + state.d44)
    return XState(
        d11=state.d11 / _SQRT3 + m,
        d22=state.d22 / _SQRT3 + n,
        d33=state.d33 / _SQRT3 + m,
        d44=state.d44 / _SQRT3 + n,
        c14=state.c14 / _SQRT3,
        c23=state.c23 / _SQRT3,
    )
