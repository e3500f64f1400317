"""Exact arithmetic on piecewise-constant functions over the interval [-1/2, 1/2].

Every dispersion-free value map in this package is a step function on the
hidden-variable interval ``Lambda = [-1/2, 1/2]`` carrying the uniform measure
``d(omega)``, so integrals reduce to finite sums of value * length terms and
carry no quadrature error.  Multi-level constructions live on product spaces
``Lambda x Lambda x ...`` and stay factored: a :class:`ProductFunction` is a
scalar prefactor times one :class:`StepFunction` per level, which makes
iterated integration order-independent by construction.

Conventions
-----------
* Breakpoints are exact floats in the open interval (-1/2, 1/2); arithmetic on
  them uses exact comparison (merging tolerance zero).  Breakpoints only ever
  come from closed-form expressions, never from iteration.
* A value query at a breakpoint returns the right-hand segment's value
  (right-continuity).  This matches the sign(0) = +1 convention used by
  :func:`indicator_from_sign`, so pointwise witnesses are deterministic.
  Endpoint conventions affect only measure-zero sets, never integrals.
* Step functions are canonicalized on construction: adjacent segments with
  exactly equal values are merged.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence, TextIO, Union

import numpy as np

from .errors import ValidationError

OMEGA_MIN = -0.5
OMEGA_MAX = 0.5

__all__ = [
    "OMEGA_MIN",
    "OMEGA_MAX",
    "StepFunction",
    "ProductFunction",
    "constant",
    "indicator_from_sign",
    "integrate",
    "pointwise",
    "complement",
    "minimum",
    "product_integrate",
    "mc_integrate",
    "write_segments_csv",
]


class StepFunction:
    """Piecewise-constant real function on [-1/2, 1/2] with exact breakpoints.

    ``values[i]`` is the constant on the i-th open subinterval; there is
    exactly one more value than breakpoints.  Instances are immutable and
    canonical (no two adjacent equal values), so ``==`` is a meaningful exact
    identity of functions up to measure zero.
    """

    def __init__(self, breakpoints: Iterable[float], values: Iterable[float]):
        bps = tuple(float(b) for b in breakpoints)
        vals = tuple(float(v) for v in values)
        if len(vals) != len(bps) + 1:
            raise ValidationError(
                f"need exactly one more value than breakpoints, "
                f"got {len(vals)} values for {len(bps)} breakpoints"
            )
        for b in bps:
            if not (OMEGA_MIN < b < OMEGA_MAX):
                raise ValidationError(f"breakpoint {b!r} outside open interval ({OMEGA_MIN}, {OMEGA_MAX})")
        for i in range(1, len(bps)):
            if bps[i] <= bps[i - 1]:
                raise ValidationError("breakpoints must be strictly increasing")
        for v in vals:
            if not math.isfinite(v):
                raise ValidationError(f"non-finite segment value {v!r}")
        # canonical form: drop breakpoints between exactly equal values
        merged_b: list[float] = []
        merged_v: list[float] = [vals[0]]
        for b, v in zip(bps, vals[1:]):
            if v == merged_v[-1]:
                continue
            merged_b.append(b)
            merged_v.append(v)
        self._breakpoints = tuple(merged_b)
        self._values = tuple(merged_v)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self._breakpoints

    @property
    def values(self) -> tuple[float, ...]:
        return self._values

    @cached_property
    def _breakpoint_array(self) -> np.ndarray:
        return np.asarray(self._breakpoints, dtype=float)

    @cached_property
    def _value_array(self) -> np.ndarray:
        return np.asarray(self._values, dtype=float)

    def __call__(self, omega):
        """Evaluate at a scalar or array of omega values (right-continuous)."""
        if np.ndim(omega) == 0:
            x = float(omega)
            if not OMEGA_MIN <= x <= OMEGA_MAX:
                raise ValidationError(f"omega {x!r} outside [{OMEGA_MIN}, {OMEGA_MAX}]")
            return self._values[bisect_right(self._breakpoints, x)]
        arr = np.asarray(omega, dtype=float)
        if arr.size and (arr.min() < OMEGA_MIN or arr.max() > OMEGA_MAX):
            raise ValidationError("omega samples outside [-1/2, 1/2]")
        idx = np.searchsorted(self._breakpoint_array, arr, side="right")
        return self._value_array[idx]

    def integrate(self) -> float:
        """Exact integral over [-1/2, 1/2]: sum of value * segment length."""
        total = 0.0
        left = OMEGA_MIN
        for b, v in zip(self._breakpoints, self._values):
            total += v * (b - left)
            left = b
        total += self._values[-1] * (OMEGA_MAX - left)
        return total

    def segments(self) -> Iterator[tuple[float, float, float]]:
        """Yield (omega_left, omega_right, value) for each maximal segment."""
        left = OMEGA_MIN
        for b, v in zip(self._breakpoints, self._values):
            yield (left, b, v)
            left = b
        yield (left, OMEGA_MAX, self._values[-1])

    def is_indicator(self) -> bool:
        return all(v in (0.0, 1.0) for v in self._values)

    def _combine(self, other: "StepFunction", op: Callable[[float, float], float]) -> "StepFunction":
        bps = sorted({*self._breakpoints, *other._breakpoints})
        lefts = [OMEGA_MIN, *bps]
        vals = [
            op(
                self._values[bisect_right(self._breakpoints, left)],
                other._values[bisect_right(other._breakpoints, left)],
            )
            for left in lefts
        ]
        return StepFunction(bps, vals)

    def _map(self, op: Callable[[float], float]) -> "StepFunction":
        return StepFunction(self._breakpoints, tuple(op(v) for v in self._values))

    def __add__(self, other):
        if isinstance(other, StepFunction):
            return self._combine(other, lambda a, b: a + b)
        if isinstance(other, (int, float)):
            return self._map(lambda v: v + float(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._map(lambda v: -v)

    def __sub__(self, other):
        if isinstance(other, StepFunction):
            return self._combine(other, lambda a, b: a - b)
        if isinstance(other, (int, float)):
            return self._map(lambda v: v - float(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return self._map(lambda v: float(other) - v)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return self._combine(other, lambda a, b: a * b)
        if isinstance(other, (int, float)):
            return self._map(lambda v: v * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._breakpoints == other._breakpoints and self._values == other._values

    def __hash__(self) -> int:
        return hash((self._breakpoints, self._values))

    def __repr__(self) -> str:
        return f"StepFunction(breakpoints={self._breakpoints!r}, values={self._values!r})"


def constant(value: float) -> StepFunction:
    """The constant function on [-1/2, 1/2]."""
    return StepFunction((), (value,))


def indicator_from_sign(threshold: float, polarity: int) -> StepFunction:
    """Exact 0/1 step function (1/2)[1 + sign(omega + threshold) * polarity].

    ``threshold`` must lie in [0, 1/2]; the single breakpoint sits at
    ``-threshold``.  sign(0) = +1, so the (measure-zero) value at the
    breakpoint is the right-hand one, consistent with right-continuous
    evaluation.  A threshold of exactly 1/2 yields a constant function.
    """
    threshold = float(threshold)
    if not 0.0 <= threshold <= 0.5:
        raise ValidationError(f"threshold {threshold!r} outside [0, 1/2]")
    if polarity not in (1, -1):
        raise ValidationError(f"polarity must be +1 or -1, got {polarity!r}")
    high = 0.5 * (1 + polarity)
    low = 0.5 * (1 - polarity)
    if threshold == 0.5:
        # sign(omega + 1/2) >= 0 everywhere on Lambda under sign(0) = +1
        return StepFunction((), (high,))
    return StepFunction((0.0 if threshold == 0.0 else -threshold,), (low, high))


def integrate(f: StepFunction) -> float:
    """Exact integral of ``f`` over [-1/2, 1/2] under the uniform measure."""
    return f.integrate()


def complement(f: StepFunction) -> StepFunction:
    """Pointwise 1 - f; set complement for 0/1 indicators."""
    return 1.0 - f


def minimum(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise minimum of two step functions."""
    return f._combine(g, min)


def pointwise(op: str, f: StepFunction, g: Union[StepFunction, float, None] = None) -> StepFunction:
    """Named pointwise operation on step functions.

    ``op`` is one of ``add``, ``multiply``, ``scale``, ``complement``,
    ``min``.  ``scale`` takes a scalar second operand, ``complement`` takes
    none, the rest take a second step function (``add`` and ``multiply`` also
    accept a scalar).  Results are canonicalized on the breakpoint union; for
    0/1 indicators ``multiply`` is set intersection and ``complement`` is set
    complement.
    """
    if op == "complement":
        if g is not None:
            raise ValidationError("complement takes a single operand")
        return complement(f)
    if g is None:
        raise ValidationError(f"operation {op!r} needs a second operand")
    if op == "add":
        return f + g
    if op == "multiply":
        return f * g
    if op == "scale":
        if isinstance(g, StepFunction):
            raise ValidationError("scale takes a scalar second operand")
        return f * float(g)
    if op == "min":
        if not isinstance(g, StepFunction):
            raise ValidationError("min takes a step-function second operand")
        return minimum(f, g)
    raise ValidationError(f"unknown pointwise operation {op!r}")


@dataclass(frozen=True)
class ProductFunction:
    """Factored function on the product space Lambda^k.

    The value at ``(omega_1, ..., omega_k)`` is
    ``prefactor * prod(factors[i](omega_i))``; levels are independent
    coordinates and are never expanded onto a joint grid, so iterated
    integrals are exact and order-independent (Fubini for finite products).
    An empty factor tuple is the scalar ``prefactor``.
    """

    factors: tuple[StepFunction, ...]
    prefactor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "prefactor", float(self.prefactor))
        for f in self.factors:
            if not isinstance(f, StepFunction):
                raise ValidationError("ProductFunction factors must be StepFunction instances")

    @property
    def levels(self) -> int:
        return len(self.factors)

    def __call__(self, point: Sequence[float]) -> float:
        if len(point) != len(self.factors):
            raise ValidationError(f"expected {len(self.factors)} coordinates, got {len(point)}")
        out = self.prefactor
        for f, omega in zip(self.factors, point):
            out *= f(omega)
        return out

    def integrate(self) -> float:
        out = self.prefactor
        for f in self.factors:
            out *= f.integrate()
        return out

    def integrate_level(self, index: int) -> "ProductFunction":
        """Integrate out one level, folding its integral into the prefactor."""
        if not 0 <= index < len(self.factors):
            raise ValidationError(f"level index {index} out of range for {len(self.factors)} factors")
        rest = self.factors[:index] + self.factors[index + 1 :]
        return ProductFunction(rest, self.prefactor * self.factors[index].integrate())

    def as_step_function(self) -> StepFunction:
        """Collapse a single-level product to a plain step function."""
        if len(self.factors) != 1:
            raise ValidationError("as_step_function requires exactly one remaining level")
        return self.factors[0] * self.prefactor


def product_integrate(p: ProductFunction) -> float:
    """prefactor * product of per-level integrals (order-independent)."""
    return p.integrate()


def mc_integrate(
    fn: Union[StepFunction, ProductFunction],
    n_samples: int,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of an integral over Lambda^k.

    Draws ``n_samples`` uniform points per level from ``rng``; intended as an
    independent cross-check of the exact integrals, not as a primary route.
    """
    if n_samples < 2:
        raise ValidationError("need at least 2 samples for a standard error")
    if isinstance(fn, StepFunction):
        samples = fn(rng.uniform(OMEGA_MIN, OMEGA_MAX, n_samples))
    else:
        samples = np.full(n_samples, fn.prefactor)
        for f in fn.factors:
            samples = samples * f(rng.uniform(OMEGA_MIN, OMEGA_MAX, n_samples))
    estimate = float(np.mean(samples))
    stderr = float(np.std(samples, ddof=1) / math.sqrt(n_samples))
    return estimate, stderr


def write_segments_csv(f: StepFunction, stream: TextIO) -> None:
    """Debug dump: one ``omega_left,omega_right,value`` row per segment."""
    stream.write("omega_left,omega_right,value\n")
    for left, right, value in f.segments():
        stream.write(f"{left:.17g},{right:.17g},{value:.17g}\n")
