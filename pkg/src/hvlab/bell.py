"""Dispersion-free value maps for qubit observables on the hidden-variable interval.

The core construction assigns to each pure state ``s`` and measurement axis
``m`` the exact 0/1 step function

    value(omega) = (1/2) [1 + sign(omega + |s.m|/2) sign(s.m)]

whose integral under the uniform measure reproduces the quantum probability
(1 + s.m)/2.  On top of it this module builds the two inequivalent
representations of a conditional measurement (via the updated state, and via
the operator product B A B divided by the conditioning probability), the
classical intersection-based conditional they both disagree with, the value
map for general observables a*1 + b.sigma, and explicit positive-measure
witnesses for every pointwise conflict.

sign(0) = +1 throughout (inherited from the step-function layer), which makes
all degenerate dot products deterministic.  One consequence worth knowing: on
the measure-zero locus where s.m is exactly 0.0, the maps for m and -m are
the same indicator rather than complementary, so pointwise (not integral)
completeness holds only for s.m != 0.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import (
    ReductionUndefinedError,
    UndefinedConditionalError,
    ValidationError,
    WitnessUndefinedError,
)
from .qubit import (
    ORTHOGONALITY_CUTOFF,
    HermitianOp,
    PureState,
    cosine_between,
    projector,
    sandwich,
    unit_vector,
)
from .stepfn import OMEGA_MAX, OMEGA_MIN, StepFunction, constant, indicator_from_sign

NONCOLLINEARITY_TOLERANCE = 1e-9

__all__ = [
    "NONCOLLINEARITY_TOLERANCE",
    "ValueAssignment",
    "WitnessSample",
    "ConflictWitness",
    "bell_value",
    "bell_value_operator",
    "route_state_update",
    "route_operator_product",
    "nonuniqueness_witness",
    "classical_conditional",
    "sum_conflict_witness",
    "disagreement_witness",
]


@dataclass(frozen=True)
class ValueAssignment:
    """A dispersion-free representation: state, observable, and omega map.

    The map takes only eigenvalues of the observable, and its exact integral
    equals the quantum expectation value in the state.
    """

    state: PureState
    observable: HermitianOp
    values: StepFunction

    def integral(self) -> float:
        return self.values.integrate()


@dataclass(frozen=True)
class WitnessSample:
    """One disagreement segment, sampled at its midpoint."""

    omega_left: float
    omega_right: float
    omega: float
    lhs_value: float
    rhs_value: float


@dataclass(frozen=True)
class ConflictWitness:
    """Explicit region where two representations of one object disagree.

    ``omega_region`` is the 0/1 indicator of the disagreement set and
    ``measure`` its exact size; a zero-measure witness means the two step
    functions coincide identically.  ``samples`` holds one midpoint evaluation
    per maximal disagreement segment.
    """

    omega_region: StepFunction
    measure: float
    samples: tuple[WitnessSample, ...]

    def __bool__(self) -> bool:
        return self.measure > 0.0


def _sign_factor(c: float) -> int:
    # sign(0) = +1 convention; -0.0 >= 0 is True, so both zeros map to +1
    return 1 if c >= 0.0 else -1


def bell_value(psi: PureState, m) -> ValueAssignment:
    """Dispersion-free 0/1 value map of the projector on axis ``m`` in state ``psi``.

    The indicator has a single breakpoint at -|s.m|/2 and integrates to
    exactly (1 + s.m)/2 under the uniform measure.
    """
    axis = unit_vector(m, "measurement axis")
    c = cosine_between(psi.bloch, axis)
    step = indicator_from_sign(0.5 * abs(c), _sign_factor(c))
    return ValueAssignment(psi, projector(axis), step)


def bell_value_operator(psi: PureState, op: HermitianOp) -> ValueAssignment:
    """Dispersion-free value map of a general observable ``a*1 + b.sigma``.

    For b != 0 the map is ``a + |b| sign(omega + |s.bhat|/2) sign(s.bhat)``:
    it takes only the eigenvalues a -+ |b|, reduces to :func:`bell_value` on
    projectors, and integrates to the expectation a + b.s.  For b = 0 it is
    the constant a.
    """
    if not isinstance(op, HermitianOp):
        raise ValidationError("observable must be a HermitianOp")
    radius = op.b_norm
    if radius == 0.0:
        return ValueAssignment(psi, op, constant(op.a))
    bhat = op.b / radius
    c = cosine_between(psi.bloch, bhat)
    ind = indicator_from_sign(0.5 * abs(c), _sign_factor(c))
    low, high = op.eigenvalues
    values = StepFunction(ind.breakpoints, tuple(high if v == 1.0 else low for v in ind.values))
    return ValueAssignment(psi, op, values)


def route_state_update(condition_axis, observed_axis) -> ValueAssignment:
    """Conditional measurement via state update: the value map of A in the reduced state.

    Measuring B (axis n) prepares the state with Bloch vector n; the returned
    assignment is the plain value map of A (axis m) in that state,
    ``(1/2)[1 + sign(omega + |n.m|/2) sign(n.m)]``.  It does not depend on the
    original state and is symmetric under swapping the two axes.
    """
    n = unit_vector(condition_axis, "condition axis")
    return bell_value(PureState(n), observed_axis)


def route_operator_product(psi: PureState, condition_axis, observed_axis) -> ValueAssignment:
    """Conditional measurement via the operator product B A B in the original state.

    Returns ``((1 + n.m)/(1 + n.s)) * bell_value(psi, n)``, the value map of
    B A B / Tr[rho B] evaluated without updating the state.  Its integral is
    (1 + n.m)/2, the same number the state-update route produces, but the
    omega dependence follows the *first* measurement axis n instead of m.
    """
    n = unit_vector(condition_axis, "condition axis")
    m = unit_vector(observed_axis, "observed axis")
    denom = 1.0 + cosine_between(n, psi.bloch)
    if denom <= ORTHOGONALITY_CUTOFF:
        raise ReductionUndefinedError(
            f"state is orthogonal to the conditioning projector (1 + n.s = {denom!r})"
        )
    ratio = (1.0 + cosine_between(n, m)) / denom
    base = bell_value(psi, n)
    observable = sandwich(projector(n), projector(m)) * (2.0 / denom)
    return ValueAssignment(psi, observable, base.values * ratio)


def disagreement_witness(lhs: StepFunction, rhs: StepFunction) -> ConflictWitness:
    """Indicator, measure, and midpoint samples of {omega : lhs != rhs}.

    Comparison is exact (tolerance zero): both operands are built from closed
    forms, so equal segments are bit-equal.  One sample is reported per
    segment of the common breakpoint partition on which the sides disagree,
    so both reported values are constant over the sampled interval.
    """
    bps = sorted({*lhs.breakpoints, *rhs.breakpoints})
    lefts = [OMEGA_MIN, *bps]
    rights = [*bps, OMEGA_MAX]
    flags = []
    samples = []
    for left, right in zip(lefts, rights):
        a = lhs.values[bisect_right(lhs.breakpoints, left)]
        b = rhs.values[bisect_right(rhs.breakpoints, left)]
        differs = a != b
        flags.append(1.0 if differs else 0.0)
        if differs:
            samples.append(WitnessSample(left, right, 0.5 * (left + right), a, b))
    region = StepFunction(bps, flags)
    return ConflictWitness(region, region.integrate(), tuple(samples))


def nonuniqueness_witness(psi: PureState, condition_axis, observed_axis) -> ConflictWitness:
    """Where the two conditional-measurement routes disagree pointwise.

    Both routes integrate to (1 + n.m)/2, yet for generic non-collinear
    inputs they differ on a set of positive measure; a zero-measure witness
    is returned when the two step functions coincide identically.
    """
    via_state = route_state_update(condition_axis, observed_axis)
    via_product = route_operator_product(psi, condition_axis, observed_axis)
    return disagreement_witness(via_state.values, via_product.values)


def classical_conditional(psi: PureState, observed_axis, condition_axis) -> float:
    """Classical conditional probability: mu[a and b] / mu[b] over the same state.

    Intersects the two 0/1 indicators drawn for the *original* state and
    normalizes by the condition's measure.  For non-commuting axes this does
    not reproduce the quantum conditional value (1 + n.m)/2; that failure is
    the point of comparing it.
    """
    observed = bell_value(psi, observed_axis).values
    condition = bell_value(psi, condition_axis).values
    weight = condition.integrate()
    if weight <= ORTHOGONALITY_CUTOFF:
        raise UndefinedConditionalError(
            f"conditioning set has measure {weight!r}, at or below cutoff"
        )
    return (observed * condition).integrate() / weight


def sum_conflict_witness(psi: PureState, n_axis, m_axis, weight: float) -> ConflictWitness:
    """Where the value map of a projector mixture differs from the mixture of maps.

    For ``E = weight * P_n + (1 - weight) * P_m`` with non-collinear axes, the
    left side takes only the eigenvalues of E (both strictly inside (0, 1)),
    while the right side takes {0, weight, 1 - weight, 1}; the witness
    necessarily contains every omega where both projector maps are 0 and every
    omega where both are 1, even though the two sides share the same integral.
    """
    weight = float(weight)
    if not 0.0 < weight < 1.0:
        raise ValidationError(f"mixture weight must lie strictly in (0, 1), got {weight!r}")
    n = unit_vector(n_axis, "first mixture axis")
    m = unit_vector(m_axis, "second mixture axis")
    cross = np.cross(n, m)
    if float(np.sqrt(cross @ cross)) <= NONCOLLINEARITY_TOLERANCE:
        raise WitnessUndefinedError("collinear axes degenerate the mixture conflict")
    mixture = weight * projector(n) + (1.0 - weight) * projector(m)
    lhs = bell_value_operator(psi, mixture).values
    rhs = weight * bell_value(psi, n).values + (1.0 - weight) * bell_value(psi, m).values
    return disagreement_witness(lhs, rhs)
