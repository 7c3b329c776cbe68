"""Truncated formal power series with exact rational coefficients.

A ``PowerSeries`` stores coefficients for degrees ``0..order`` as
``fractions.Fraction`` values and guarantees that every operation is exact
through the truncation order.  Degrees above the truncation order are never
reported.  Binary operations require both operands to carry the same
truncation order; use :meth:`PowerSeries.truncate` to re-truncate explicitly.

The module also provides the two solvers used to produce generating
functions from functional equations: a Gauss-Seidel style coefficientwise
fixed-point iteration (:func:`solve_fixed_point`) and a polynomial residual
evaluator (:func:`poly_residual`) used as an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "Rational",
    "PowerSeries",
    "FixedPointDivergence",
    "log_inv_one_minus",
    "solve_fixed_point",
    "poly_residual",
]

# Coefficient domain: exact arbitrary-precision rationals, always in lowest
# terms with positive denominator (guaranteed by fractions.Fraction).
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class FixedPointDivergence(RuntimeError):
    """Raised when a fixed-point system fails to become stationary.

    This signals a non-contractive update rule, which is a caller bug.
    """


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class PowerSeries:
    """Immutable dense power series over ``Fraction``, truncated at ``order``."""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("empty coefficient list requires an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients exceed truncation order {order}")
        cs.extend([_ZERO] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._order = order

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([_ONE], order)

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        return cls([_as_fraction(value)], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff=1) -> "PowerSeries":
        if not 0 <= degree <= order:
            raise ValueError(f"degree {degree} outside 0..{order}")
        cs = [_ZERO] * (degree + 1)
        cs[degree] = _as_fraction(coeff)
        return cls(cs, order)

    # -- accessors ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, degree: int) -> Fraction:
        if not 0 <= degree <= self._order:
            raise IndexError(f"degree {degree} outside truncation order {self._order}")
        return self._coeffs[degree]

    def constant_term(self) -> Fraction:
        return self._coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self._coeffs):
            if c != 0:
                terms.append(f"({c})*z^{k}" if k else f"{c}")
            if len(terms) >= 6:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"PowerSeries({body}; order={self._order})"

    # -- structural helpers -------------------------------------------------

    def truncate(self, order: int) -> "PowerSeries":
        """Re-truncate to a lower (or equal) order."""
        if order > self._order:
            raise ValueError(f"cannot extend truncation order {self._order} to {order}")
        return PowerSeries(self._coeffs[: order + 1], order)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z**k (k >= 0); top k coefficients fall off the truncation."""
        if k < 0:
            raise ValueError("shift exponent must be >= 0")
        if k == 0:
            return self
        cs = (_ZERO,) * k + self._coeffs[: self._order + 1 - k]
        return PowerSeries(cs, self._order)

    def _check_order(self, other: "PowerSeries") -> None:
        if self._order != other._order:
            raise ValueError(
                f"mismatched truncation orders {self._order} != {other._order}; "
                "re-truncate explicitly"
            )

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            self._check_order(other)
            return PowerSeries(
                [a + b for a, b in zip(self._coeffs, other._coeffs)], self._order
            )
        if isinstance(other, (int, Fraction)):
            cs = list(self._coeffs)
            cs[0] += other
            return PowerSeries(cs, self._order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self._coeffs], self._order)

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            self._check_order(other)
            return PowerSeries(
                [a - b for a, b in zip(self._coeffs, other._coeffs)], self._order
            )
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return PowerSeries([c * f for c in self._coeffs], self._order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_order(other)
        n = self._order
        a, b = self._coeffs, other._coeffs
        out = [_ZERO] * (n + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj != 0:
                    out[i + j] += ai * bj
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            if f == 0:
                raise ZeroDivisionError("division of a series by zero")
            return PowerSeries([c / f for c in self._coeffs], self._order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_order(other)
        if other._coeffs[0] == 0:
            raise ValueError("series division requires a nonzero constant term in the divisor")
        n = self._order
        a, b = self._coeffs, other._coeffs
        q = [_ZERO] * (n + 1)
        b0 = b[0]
        for m in range(n + 1):
            acc = a[m]
            for k in range(m):
                qk = q[k]
                if qk != 0 and b[m - k] != 0:
                    acc -= qk * b[m - k]
            q[m] = acc / b0
        return PowerSeries(q, n)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series exponent must be a nonnegative integer")
        result = PowerSeries.one(self._order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- transcendental operations (exact via differential recurrences) -----

    def exp(self) -> "PowerSeries":
        """exp(self); requires zero constant term.  Uses f' = a'·f."""
        if self._coeffs[0] != 0:
            raise ValueError("exp requires a zero constant term")
        n = self._order
        a = self._coeffs
        f = [_ZERO] * (n + 1)
        f[0] = _ONE
        for m in range(1, n + 1):
            acc = _ZERO
            for k in range(1, m + 1):
                ak = a[k]
                if ak != 0 and f[m - k] != 0:
                    acc += k * ak * f[m - k]
            f[m] = acc / m
        return PowerSeries(f, n)

    def log(self) -> "PowerSeries":
        """log(self); requires constant term 1.  Uses b·g' = b'."""
        if self._coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        n = self._order
        b = self._coeffs
        g = [_ZERO] * (n + 1)
        for m in range(1, n + 1):
            acc = m * b[m]
            for j in range(1, m):
                bj = b[j]
                if bj != 0 and g[m - j] != 0:
                    acc -= (m - j) * bj * g[m - j]
            g[m] = acc / m
        return PowerSeries(g, n)

    def sqrt(self) -> "PowerSeries":
        """Square root with constant term 1, from s² = self coefficientwise."""
        if self._coeffs[0] != 1:
            raise ValueError("sqrt requires constant term 1")
        n = self._order
        b = self._coeffs
        s = [_ZERO] * (n + 1)
        s[0] = _ONE
        for m in range(1, n + 1):
            acc = b[m]
            for k in range(1, m):
                if s[k] != 0 and s[m - k] != 0:
                    acc -= s[k] * s[m - k]
            s[m] = acc / 2
        return PowerSeries(s, n)


def log_inv_one_minus(a: PowerSeries) -> PowerSeries:
    """Series of log(1/(1-a)) for a with zero constant term."""
    if a.constant_term() != 0:
        raise ValueError("log_inv_one_minus requires a zero constant term")
    return -((PowerSeries.one(a.order) - a).log())


UpdateRule = Callable[[Sequence[PowerSeries]], PowerSeries]


def solve_fixed_point(
    rules: Sequence[UpdateRule],
    order: int,
    max_sweeps: int | None = None,
) -> list[PowerSeries]:
    """Solve a contractive coefficientwise system by repeated sweeps.

    ``rules[i]`` computes unknown ``i`` from the full current state; updates
    are applied in sequence within a sweep (updated values are visible to
    later rules).  All unknowns start at zero.  Iterates until every
    coefficient through ``order`` is stationary.

    Raises :class:`FixedPointDivergence` when the state has not become
    stationary after ``order + 1`` sweeps (the bound any contractive system
    satisfies).
    """
    if max_sweeps is None:
        max_sweeps = order + 1
    state = [PowerSeries.zero(order) for _ in rules]
    for _ in range(max_sweeps):
        changed = False
        for i, rule in enumerate(rules):
            new = rule(state)
            if new.order != order:
                raise ValueError("update rule changed the truncation order")
            if new != state[i]:
                state[i] = new
                changed = True
        if not changed:
            return state
    raise FixedPointDivergence(
        f"fixed-point system not stationary after {max_sweeps} sweeps; "
        "the update rules are not contractive"
    )


def poly_residual(poly_coeffs: Sequence[PowerSeries], x: PowerSeries) -> PowerSeries:
    """Evaluate sum_i poly_coeffs[i] * x**i, truncated; Horner scheme."""
    if not poly_coeffs:
        return PowerSeries.zero(x.order)
    acc = poly_coeffs[-1]
    for coeff in reversed(poly_coeffs[:-1]):
        acc = acc * x + coeff
    return acc
