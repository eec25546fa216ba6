"""Closed-form joint state of two static detectors near a mirror.

Two pointlike two-level systems with Gaussian switching couple linearly
to a massless scalar field in the half space bounded by a perfectly
reflecting plane. At leading order in the coupling, the reduced
two-detector density matrix is an X-state whose entries reduce to the
Faddeeva function w(z) = exp(-z^2) erfc(-iz) evaluated at the direct and
image-charge separations. Every quantity here is dimensionless: lengths
and inverse gaps are measured in units of the switching width, and
probabilities carry the square of the dimensionless coupling.

The pair can be stacked parallel to the mirror (both detectors at the
same distance) or orthogonal to it (detector B farther by the detector
separation). The steering of the harvested X-state is available both
through the generic X-state formulas and through the specialized
closed forms for states with an empty doubly-excited level; the two
routes are kept independent so they can be checked against each other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import InitVar, dataclass

from scipy.special import erfcx

from .errors import PerturbativeValidityError, ValidationError
from .special_functions import faddeeva_w
from .xstate_steering import SteeringResult, XState, concurrence

_SQRT_PI = math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / _SQRT_PI
# weights of the P_A P_B cross term in the empty-top-level thresholds
_T_PLUS = (1.0 + math.sqrt(3.0)) / 2.0
_T_MINUS = (1.0 - math.sqrt(3.0)) / 2.0

# below this argument the 1/l prefactors are evaluated by Taylor branches
SERIES_CROSSOVER = 1e-3


class Alignment(enum.Enum):
    """Orientation of the detector axis relative to the mirror plane."""

    PARALLEL = "parallel"
    ORTHOGONAL = "orthogonal"


@dataclass(frozen=True)
class DetectorPair:
    """Energy gaps and coupling of the two detectors.

    Labels follow the convention that B carries the larger gap, so
    ``omega_b >= omega_a`` is enforced at construction. Pass
    ``swap_labels=True`` to relabel automatically instead of raising.
    """

    omega_a: float
    omega_b: float
    coupling: float = 1.0
    swap_labels: InitVar[bool] = False

    def __post_init__(self, swap_labels: bool):
        wa = float(self.omega_a)
        wb = float(self.omega_b)
        lam = float(self.coupling)
        if not (math.isfinite(wa) and math.isfinite(wb) and math.isfinite(lam)):
            raise ValidationError("detector parameters must be finite")
        if wa < 0.0 or wb < 0.0:
            raise ValidationError("energy gaps must be nonnegative")
        if wb < wa:
            if not swap_labels:
                raise ValidationError(
                    "omega_b must not be smaller than omega_a; pass "
                    "swap_labels=True to exchange the labels"
                )
            wa, wb = wb, wa
        if lam <= 0.0:
            raise ValidationError("coupling must be positive")
        object.__setattr__(self, "omega_a", wa)
        object.__setattr__(self, "omega_b", wb)
        object.__setattr__(self, "coupling", lam)

    @property
    def gap_sum(self) -> float:
        return self.omega_a + self.omega_b

    @property
    def gap_difference(self) -> float:
        # nonnegative by the labeling convention
        return self.omega_b - self.omega_a


@dataclass(frozen=True)
class BoundaryGeometry:
    """Placement of the pair relative to the mirror.

    ``separation`` is the detector-detector distance and
    ``boundary_distance`` the mirror distance of detector A (the nearer
    one in the orthogonal arrangement). Both are in switching-width
    units and must be positive.
    """

    alignment: Alignment
    separation: float
    boundary_distance: float

    def __post_init__(self):
        object.__setattr__(self, "alignment", Alignment(self.alignment))
        sep = float(self.separation)
        dz = float(self.boundary_distance)
        if not (math.isfinite(sep) and math.isfinite(dz)):
            raise ValidationError("geometry lengths must be finite")
        if sep <= 0.0:
            raise ValidationError("separation must be positive")
        if dz <= 0.0:
            raise ValidationError("boundary_distance must be positive")
        object.__setattr__(self, "separation", sep)
        object.__setattr__(self, "boundary_distance", dz)

    def image_separation(self) -> float:
        """Distance from one detector to the mirror image of the other."""
        if self.alignment is Alignment.PARALLEL:
            return math.hypot(self.separation, 2.0 * self.boundary_distance)
        return self.separation + 2.0 * self.boundary_distance

    def distance_b(self) -> float:
        """Mirror distance of detector B."""
        if self.alignment is Alignment.PARALLEL:
            return self.boundary_distance
        return self.boundary_distance + self.separation


@dataclass(frozen=True)
class CorrelationBlock:
    """Entries of the leading-order joint state.

    ``p_a`` and ``p_b`` are the excitation probabilities, ``c`` the
    cross-excitation correlation and ``x`` the double-excitation
    coherence. ``p_a + p_b < 1`` is required, otherwise the remaining
    ground-state population would be negative and the leading-order
    truncation is meaningless.
    """

    p_a: float
    p_b: float
    c: complex
    x: complex

    def __post_init__(self):
        pa = float(self.p_a)
        pb = float(self.p_b)
        if not (math.isfinite(pa) and math.isfinite(pb)):
            raise ValidationError("probabilities must be finite")
        if pa < 0.0 or pb < 0.0:
            raise ValidationError("probabilities must be nonnegative")
        if pa + pb >= 1.0:
            raise PerturbativeValidityError(
                f"p_a + p_b = {pa + pb:.3g} >= 1: coupling too strong for the "
                "leading-order state"
            )
        object.__setattr__(self, "p_a", pa)
        object.__setattr__(self, "p_b", pb)
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "x", complex(self.x))

    @property
    def trusted(self) -> bool:
        """Whether the leading-order truncation is quantitatively reliable."""
        return self.p_a + self.p_b < 0.5


def _require_length(l: float) -> float:
    l = float(l)
    if not math.isfinite(l) or l <= 0.0:
        raise ValidationError("separation argument must be a positive real")
    return l


def _w_moments(s: float):
    """Odd-order Taylor data of Im w(-l/2 + i s/2) around l = 0.

    Successive derivatives of w along the imaginary axis follow from
    w' = -2 z w + 2i/sqrt(pi) and alternate between real and imaginary;
    only the imaginary ones survive in the odd coefficients used below.
    """
    w0 = float(erfcx(s / 2.0))
    i1 = 2.0 * _INV_SQRT_PI - s * w0
    r2 = -2.0 * w0 + s * i1
    i3 = -s * r2 - 4.0 * i1
    r4 = s * i3 - 6.0 * r2
    i5 = -s * r4 - 8.0 * i3
    return i1, i3, i5


def _aux_f(l: float, s: float) -> float:
    if l < SERIES_CROSSOVER:
        i1, i3, i5 = _w_moments(s)
        bracket = i1 / 2.0 + l * l * i3 / 48.0 + l**4 * i5 / 3840.0
        return math.exp(-s * s / 4.0) * bracket
    return -(math.exp(-s * s / 4.0) / l) * faddeeva_w(complex(-l / 2.0, s / 2.0)).imag


def _aux_g(l: float, d: float) -> complex:
    # the 1/l divergence of the imaginary part is the physical
    # coincidence-limit singularity of the time-ordered correlator
    im = math.exp(-l * l / 4.0) * math.cos(d * l / 2.0) / l
    if l < SERIES_CROSSOVER:
        i1, i3, i5 = _w_moments(d)
        e = math.exp(-d * d / 4.0)
        re = (
            (d / 2.0 + e * i1 / 2.0)
            + l * l * (e * i3 / 48.0 - d**3 / 48.0 - d / 8.0)
            + l**4 * (e * i5 / 3840.0 + d**5 / 3840.0 + d**3 / 192.0 + d / 64.0)
        )
    else:
        re = (
            math.exp(-l * l / 4.0) * math.sin(d * l / 2.0)
            - math.exp(-d * d / 4.0) * faddeeva_w(complex(-l / 2.0, d / 2.0)).imag
        ) / l
    return complex(re, im)


def aux_f(l: float, pair: DetectorPair) -> float:
    """Spacelike correlation kernel at separation ``l`` for the gap sum.

    Continuous at l -> 0 with limit e^{-s^2/4}/sqrt(pi) - (s/2) erfc(s/2)
    where s is the gap sum; decays algebraically like
    2 e^{-s^2/4} / (sqrt(pi) (l^2 + s^2)) for large l.
    """
    return _aux_f(_require_length(l), pair.gap_sum)


def aux_g(l: float, pair: DetectorPair) -> complex:
    """Timelike correlation kernel at separation ``l`` for the gap difference.

    The real part is continuous at l -> 0; the imaginary part diverges
    like 1/l there.
    """
    return _aux_g(_require_length(l), pair.gap_difference)


def free_space_probability(omega: float, coupling: float = 1.0) -> float:
    """Excitation probability of a single detector without any boundary."""
    omega = float(omega)
    coupling = float(coupling)
    if not math.isfinite(omega) or omega < 0.0:
        raise ValidationError("omega must be a nonnegative real")
    if not math.isfinite(coupling) or coupling <= 0.0:
        raise ValidationError("coupling must be positive")
    bracket = math.exp(-omega * omega) - _SQRT_PI * omega * math.erfc(omega)
    return coupling * coupling / (4.0 * math.pi) * bracket


def transition_probability(
    omega: float, boundary_distance: float, coupling: float = 1.0
) -> float:
    """Excitation probability of a single detector at distance dz from the mirror.

    Vanishes on the mirror and approaches the free-space value far from
    it; the residual boundary correction decays like 1/dz^2.
    """
    dz = float(boundary_distance)
    if not math.isfinite(dz) or dz <= 0.0:
        raise ValidationError("boundary_distance must be positive")
    coupling = float(coupling)
    p = free_space_probability(omega, coupling) - coupling * coupling / (
        4.0 * _SQRT_PI
    ) * _aux_f(2.0 * dz, 2.0 * float(omega))
    # the subtraction can undershoot zero by a few ulp right at the mirror
    return max(p, 0.0)


def correlations(pair: DetectorPair, geom: BoundaryGeometry) -> CorrelationBlock:
    """Entries of the joint state for the given pair and placement."""
    lam = pair.coupling
    p_a = transition_probability(pair.omega_a, geom.boundary_distance, lam)
    p_b = transition_probability(pair.omega_b, geom.distance_b(), lam)
    l = geom.separation
    img = geom.image_separation()
    s = pair.gap_sum
    d = pair.gap_difference
    pref = lam * lam / (4.0 * _SQRT_PI)
    c = pref * math.exp(-d * d / 4.0) * (_aux_f(l, s) - _aux_f(img, s))
    x = -pref * math.exp(-s * s / 4.0) * (_aux_g(l, d) - _aux_g(img, d))
    return CorrelationBlock(p_a=p_a, p_b=p_b, c=complex(c), x=x)


def boundary_free_correlations(pair: DetectorPair, separation: float) -> CorrelationBlock:
    """Joint-state entries for the same pair in empty space (no image terms)."""
    l = _require_length(separation)
    lam = pair.coupling
    pref = lam * lam / (4.0 * _SQRT_PI)
    s = pair.gap_sum
    d = pair.gap_difference
    return CorrelationBlock(
        p_a=free_space_probability(pair.omega_a, lam),
        p_b=free_space_probability(pair.omega_b, lam),
        c=complex(pref * math.exp(-d * d / 4.0) * _aux_f(l, s)),
        x=-pref * math.exp(-s * s / 4.0) * _aux_g(l, d),
    )


def state_from_block(block: CorrelationBlock) -> XState:
    """Assemble the leading-order X-state from its correlation entries."""
    return XState(
        d11=1.0 - block.p_a - block.p_b,
        d22=block.p_b,
        d33=block.p_a,
        d44=0.0,
        c14=block.x,
        c23=block.c,
    )


def joint_state(pair: DetectorPair, geom: BoundaryGeometry) -> XState:
    """Leading-order joint density matrix of the pair near the mirror."""
    return state_from_block(correlations(pair, geom))


def _sqrt_clamped(v: float) -> float:
    return math.sqrt(v) if v > 0.0 else 0.0


def steering_from_block(block: CorrelationBlock) -> SteeringResult:
    """Directional steering of a leading-order harvested block.

    Specialization of the X-state steering to an empty doubly-excited
    level: the threshold radicands collapse to
    ((1 +- sqrt(3))/2) P_A P_B + P/2 - P^2/2 with P = P_A for B->A and
    P = P_B for A->B. Kept separate from the generic X-state route so
    the two can be compared.
    """
    pa, pb = block.p_a, block.p_b
    mod_x = abs(block.x)
    mod_c = abs(block.c)
    cross = pa * pb
    s_ba = max(
        0.0,
        mod_x - _sqrt_clamped(_T_PLUS * cross + 0.5 * pa - 0.5 * pa * pa),
        mod_c - _sqrt_clamped(_T_MINUS * cross + 0.5 * pa - 0.5 * pa * pa),
    )
    s_ab = max(
        0.0,
        mod_x - _sqrt_clamped(_T_PLUS * cross + 0.5 * pb - 0.5 * pb * pb),
        mod_c - _sqrt_clamped(_T_MINUS * cross + 0.5 * pb - 0.5 * pb * pb),
    )
    return SteeringResult(
        s_ab=s_ab,
        s_ba=s_ba,
        asymmetry=s_ab - s_ba,
        concurrence=concurrence(state_from_block(block)),
    )


def harvested_steering(pair: DetectorPair, geom: BoundaryGeometry) -> SteeringResult:
    """Directional steering harvested by the pair near the mirror."""
    return steering_from_block(correlations(pair, geom))


def boundary_free_steering(pair: DetectorPair, separation: float) -> SteeringResult:
    """Directional steering harvested by the same pair in empty space."""
    return steering_from_block(boundary_free_correlations(pair, separation))


def config_difference(
    pair: DetectorPair, separation: float, boundary_distance: float
) -> tuple[float, float]:
    """Alignment sensitivity of the steering at fixed pair and lengths.

    Returns (orthogonal - parallel) for the A->B and B->A directions, in
    that order.
    """
    ortho = harvested_steering(
        pair, BoundaryGeometry(Alignment.ORTHOGONAL, separation, boundary_distance)
    )
    par = harvested_steering(
        pair, BoundaryGeometry(Alignment.PARALLEL, separation, boundary_distance)
    )
    return (ortho.s_ab - par.s_ab, ortho.s_ba - par.s_ba)
