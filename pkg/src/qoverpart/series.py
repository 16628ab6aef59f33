"""Truncated integer power series in one variable q, with Laurent offsets.

Everything is exact: coefficients are Python ints and the truncation order is
threaded explicitly through every operation.  A series knows the largest
exponent it is valid to, and combining series with different truncation orders
is an error rather than a guess.  Offsets may be negative (a few product
factors below start at q^-1 or q^-2) but are guarded so a runaway computation
fails loudly instead of allocating without bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

INFINITE = float("inf")

# The registered identities never need exponents below q^-2 per factor; a
# construction landing below this bound is a bug, not a bigger computation.
MIN_OFFSET = -128


class LaurentSeries:
    """Immutable coefficients for q^offset .. q^order.

    ``coeffs[i]`` is the coefficient of ``q^(offset + i)``.  The stored form
    is canonical: no zero coefficient at either end, and the empty series is
    represented with ``offset == order + 1``.
    """

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, offset: int, coeffs: Iterable[int], order: int):
        parts = list(coeffs)
        if offset + len(parts) - 1 > order:
            parts = parts[: order - offset + 1]
        while parts and parts[0] == 0:
            del parts[0]
            offset += 1
        while parts and parts[-1] == 0:
            del parts[-1]
        if not parts:
            offset = order + 1
        if offset < MIN_OFFSET:
            raise ValueError(
                f"series offset {offset} fell below the Laurent guard {MIN_OFFSET}"
            )
        self.offset: int = offset
        self.coeffs: tuple[int, ...] = tuple(parts)
        self.order: int = order

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_exponent(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or None if zero."""
        return self.offset if self.coeffs else None

    def coeff(self, n: int) -> int:
        """Coefficient of q^n.  Asking beyond the truncation order is an error."""
        if n > self.order:
            raise ValueError(
                f"coefficient of q^{n} requested beyond truncation order {self.order}"
            )
        i = n - self.offset
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def coeff_range(self, lo: int, hi: int) -> list[int]:
        return [self.coeff(n) for n in range(lo, hi + 1)]

    def prefix(self, hi: int) -> list[int]:
        """Coefficients of q^0 .. q^hi."""
        return self.coeff_range(0, hi)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "LaurentSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.offset - lo + i] += c
        return LaurentSeries(lo, out, self.order)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.offset, [-c for c in self.coeffs], self.order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentSeries(
                self.offset, [other * c for c in self.coeffs], self.order
            )
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return zero(self.order)
        lo = self.offset + other.offset
        out = [0] * (self.order - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ea = self.offset + i
            jmax = min(len(other.coeffs), self.order - ea - other.offset + 1)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    out[ea + other.offset + j - lo] += a * b
        return LaurentSeries(lo, out, self.order)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.order == other.order
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"LaurentSeries(offset={self.offset}, coeffs={self.coeffs}, order={self.order})"


def zero(order: int) -> LaurentSeries:
    return LaurentSeries(0, [], order)


def one(order: int) -> LaurentSeries:
    return LaurentSeries(0, [1], order)


def monomial(coefficient: int, exponent: int, order: int) -> LaurentSeries:
    """The series coefficient * q^exponent, truncated at ``order``."""
    return LaurentSeries(exponent, [coefficient], order)


@dataclass(frozen=True)
class PochhammerSpec:
    """Finite or infinite q-Pochhammer symbol (sign * q^shift ; q^step)_length.

    ``sign`` is the sign inside the symbol, so sign=-1 expands to factors
    (1 + q^(shift + j*step)) and sign=+1 to (1 - q^(shift + j*step)).
    """

    sign: int
    shift: int
    step: int
    length: int | float = INFINITE


@dataclass(frozen=True)
class ProductFactor:
    """One family of binomial factors (1 - sign*q^(shift + j*step))^power."""

    sign: int
    shift: int
    step: int
    power: int
    length: int | float = INFINITE


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple[ProductFactor, ...]


def _validate_family(sign: int, step: int, length) -> None:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if length is not INFINITE and (not isinstance(length, int) or length < 0):
        raise ValueError(f"length must be a nonnegative integer or INFINITE, got {length}")


def _mul_binomial(s: LaurentSeries, c: int, e: int) -> LaurentSeries:
    """s * (1 + c*q^e) in one pass."""
    if s.is_zero:
        return s
    lo = min(s.offset, s.offset + e)
    hi = max(s.offset + len(s.coeffs), s.offset + e + len(s.coeffs))
    out = [0] * (hi - lo)
    base = s.offset - lo
    for i, a in enumerate(s.coeffs):
        out[base + i] += a
        out[base + e + i] += c * a
    return LaurentSeries(lo, out, s.order)


def pochhammer(spec: PochhammerSpec, order: int) -> LaurentSeries:
    """Expand a Pochhammer symbol as a truncated series.

    An INFINITE length stops as soon as the factor exponent exceeds the
    truncation order, since later factors are 1 modulo the truncation.
    """
    _validate_family(spec.sign, spec.step, spec.length)
    result = one(order)
    j = 0
    while j < spec.length:
        e = spec.shift + j * spec.step
        if e > order:
            break
        result = _mul_binomial(result, -spec.sign, e)
        j += 1
    return result


def apply_inverse_factors(series: LaurentSeries, spec: ProductSpec) -> LaurentSeries:
    """Multiply by a product of binomial factor families, powers +1 or -1.

    Power -1 families are expanded geometrically, e.g. 1/(1-q^k) =
    1 + q^k + q^2k + ... and 1/(1+q^k) = 1 - q^k + q^2k - ...; every such
    factor must have a unit constant term (exponent >= 1) or the expansion
    would not be a power series, and that is reported as an error.
    """
    order = series.order
    result = series
    for f in spec.factors:
        _validate_family(f.sign, f.step, f.length)
        if f.power not in (1, -1):
            raise ValueError(f"factor power must be +1 or -1, got {f.power}")
        if f.power == 1:
            j = 0
            while j < f.length:
                e = f.shift + j * f.step
                if e > order:
                    break
                result = _mul_binomial(result, -f.sign, e)
                j += 1
            continue
        if result.is_zero:
            continue
        exponents = []
        j = 0
        while j < f.length:
            e = f.shift + j * f.step
            if e > order:
                break
            if e < 1:
                raise ValueError(
                    f"inverse factor with exponent {e} has no unit constant term"
                )
            exponents.append(e)
            j += 1
        coeffs = list(result.coeffs) + [0] * (order - result.offset + 1 - len(result.coeffs))
        for e in exponents:
            s = f.sign
            for i in range(e, len(coeffs)):
                if coeffs[i - e]:
                    coeffs[i] += s * coeffs[i - e]
        result = LaurentSeries(result.offset, coeffs, order)
    return result


def sum_terms(
    terms: Iterable[LaurentSeries], order: int, guard: int = 100
) -> LaurentSeries:
    """Sum a family of term series whose minimum exponents grow without bound.

    Summation stops at the first term that truncates to nothing (for the
    registered families that happens exactly when the term's true minimum
    exponent exceeds the truncation order).  A family whose minimum exponent
    fails to grow for more than ``guard`` consecutive terms is reported as
    divergent instead of looping forever.
    """
    total = zero(order)
    last_min: int | None = None
    stall = 0
    for t in terms:
        if t.order != order:
            raise ValueError(f"term truncation order {t.order} differs from {order}")
        m = t.min_exponent
        if m is None:
            break
        if last_min is not None and m < last_min:
            raise ValueError(
                f"term minimum exponent decreased from {last_min} to {m}"
            )
        if last_min is not None and m == last_min:
            stall += 1
            if stall > guard:
                raise ValueError(
                    f"term family stalled at minimum exponent {m} for more than "
                    f"{guard} terms; divergent family?"
                )
        else:
            last_min = m
            stall = 0
        total = total + t
    return total


def geometric_inverse(factors: Iterable[tuple[int, int]], order: int) -> LaurentSeries:
    """1 / prod (1 - sign*q^e) for (sign, e) pairs; convenience for tests."""
    spec = ProductSpec(
        tuple(ProductFactor(sign, e, 1, -1, 1) for sign, e in factors)
    )
    return apply_inverse_factors(one(order), spec)
