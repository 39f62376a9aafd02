"""Truncated jets of functions on a chart.

A jet of order k stores the coefficients of a truncated Taylor expansion in
increment variables t_1..t_N (one per chart parameter): a map from
multi-indices of total degree <= k to ring elements.  The jet of f is
j(f) = sum_{|m| <= k} (1/m!) d^m f * t^m, i.e. "f(x + t)", and more generally
j(g (x) f) = g * f(x + t).  Multiplication is the convolution truncated at
order k, which makes j a ring homomorphism into the truncated algebra.

Sign convention: delta(f) = f*1 - j(f), so delta(x_i) = -t_i and products of
deltas carry the sign delta(x)^m = (-1)^|m| t^m.  Under this convention both
truncated Taylor identities
    j(f)  = sum_m ((-1)^|m|/m!) (d^m f * 1) * delta(x)^m
    f * 1 = sum_m (1/m!) j(d^m f) * delta(x)^m
hold exactly at every order; taylor_identity_check verifies them.

The two commuting actions of the coordinate fields are
    act_first(i)  : differentiate the coefficients and subtract d/dt_i
    act_second(i) : d/dt_i
both of which are only determined to order k-1.  eval_diagonal reads off the
constant coefficient (evaluation at t = 0).
"""

from __future__ import annotations

from fractions import Fraction

from .charts import ChartMismatch, RingElem
from .multipoly import (
    grlex_key, mi_binomial, mi_degree, mi_factorial, mi_range, mi_unit, mi_zero,
)


class Jet:
    """Order-k jet: dict multi-index -> RingElem, zero coefficients dropped."""

    __slots__ = ("chart", "order", "coeffs")

    def __init__(self, chart, order, coeffs):
        if order < 0:
            raise ValueError("jet order must be >= 0")
        n = chart.nparams
        clean = {}
        for m, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
            m = tuple(m)
            if len(m) != n:
                raise ValueError("multi-index length does not match parameter count")
            if mi_degree(m) > order:
                raise ValueError(f"coefficient at {m} exceeds order {order}")
            if not c.is_zero():
                clean[m] = c
        self.chart = chart
        self.order = order
        self.coeffs = clean

    @classmethod
    def zero(cls, chart, order):
        return cls(chart, order, {})

    def _check(self, other):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatch("jets live on different charts")
        if self.order != other.order:
            raise ValueError(f"jet orders differ: {self.order} vs {other.order}")

    def coeff(self, m):
        got = self.coeffs.get(tuple(m))
        return got if got is not None else self.chart.zero()

    def is_zero(self):
        return not self.coeffs

    # -- linear structure

    def __add__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return Jet(self.chart, self.order, out)

    def __neg__(self):
        return Jet(self.chart, self.order, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self + (-other)

    def scale(self, a):
        """Multiply every coefficient by a scalar (the left A-action)."""
        return Jet(self.chart, self.order, {m: a * c for m, c in self.coeffs.items()})

    # -- ring structure

    def __mul__(self, other):
        """Convolution truncated at the common order."""
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        k = self.order
        out = {}
        for m1, c1 in self.coeffs.items():
            d1 = mi_degree(m1)
            for m2, c2 in other.coeffs.items():
                if d1 + mi_degree(m2) > k:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                out[m] = out[m] + prod if m in out else prod
        return Jet(self.chart, k, out)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = jet_scalar(self.chart.one(), self.order)
        for _ in range(e):
            out = out * self
        return out

    # -- structure maps

    def t_order(self):
        """Smallest |m| with a nonzero coefficient; k+1 for the zero jet."""
        if not self.coeffs:
            return self.order + 1
        return min(mi_degree(m) for m in self.coeffs)

    def eval_diagonal(self):
        """Constant coefficient (set t = 0)."""
        return self.coeff(mi_zero(self.chart.nparams))

    def act_first(self, i):
        """Action of d/dx_i through the first factor: differentiate the
        coefficients and subtract the formal t_i-derivative.  The top-order
        coefficients of the input do not determine the result's top order,
        so the output is a jet of order k-1."""
        if self.order == 0:
            raise ValueError("act_first needs order >= 1")
        return self._dx(i) - self._dt(i)

    def act_second(self, i):
        """Action of d/dx_i through the second factor: the formal
        t_i-derivative, again of order k-1."""
        if self.order == 0:
            raise ValueError("act_second needs order >= 1")
        return self._dt(i)

    def _dx(self, i):
        out = {}
        for m, c in self.coeffs.items():
            if mi_degree(m) <= self.order - 1:
                out[m] = c.derive(i)
        return Jet(self.chart, self.order - 1, out)

    def _dt(self, i):
        out = {}
        for m, c in self.coeffs.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[dm] = c * m[i]
        return Jet(self.chart, self.order - 1, out)

    def truncated(self, k):
        if k > self.order:
            raise ValueError("cannot extend a jet to higher order")
        return Jet(
            self.chart, k,
            {m: c for m, c in self.coeffs.items() if mi_degree(m) <= k},
        )

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        for m in self.coeffs.keys() | other.coeffs.keys():
            if self.coeff(m) != other.coeff(m):
                return False
        return True

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = _tnames(self.chart)
        parts = []
        for m, c in sorted(self.coeffs.items(), key=lambda t: grlex_key(t[0])):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Jet(order={self.order}, {str(self)!r})"


def _tnames(chart):
    if chart.nparams == 1:
        return ("t",)
    return tuple(f"t{i + 1}" for i in range(chart.nparams))


def jet_of(f, k):
    """j(f) = f(x + t) truncated at order k, via the recurrence
    coeff[m] = derive(coeff[m - e_i], i) / m_i."""
    chart = f.chart
    n = chart.nparams
    table = {mi_zero(n): f}
    for m in mi_range(n, k):
        if m in table:
            continue
        i = next(idx for idx, e in enumerate(m) if e)
        prev = m[:i] + (m[i] - 1,) + m[i + 1:]
        table[m] = table[prev].derive(i) * Fraction(1, m[i])
    return Jet(chart, k, table)


def jet_of_pair(g, f, k):
    """j(g (x) f) = g * f(x + t): the jet of f with coefficients scaled by g."""
    return jet_of(f, k).scale(g)


def jet_scalar(f, k):
    """f * 1: the scalar f sitting at t^0."""
    return Jet(f.chart, k, {mi_zero(f.chart.nparams): f})


def delta(f, k):
    """delta(f) = f*1 - j(f); measures the failure of f to be diagonal."""
    return jet_scalar(f, k) - jet_of(f, k)


def delta_power(chart, m, k):
    """prod_i delta(x_i)^{m_i} as an order-k jet (computed honestly as a
    product of deltas; equals (-1)^|m| t^m)."""
    if len(m) != chart.nparams:
        raise ValueError("multi-index length does not match parameter count")
    out = jet_scalar(chart.one(), k)
    for i, e in enumerate(m):
        if e:
            d = delta(chart.param(i), k)
            for _ in range(e):
                out = out * d
    return out


def taylor_identity_check(f, k):
    """Check both truncated Taylor expansion identities for f at order k:

        j(f)  = sum_{|m|<=k} ((-1)^|m|/m!) (d^m f * 1) * delta(x)^m
        f * 1 = sum_{|m|<=k} (1/m!) j(d^m f) * delta(x)^m

    Both hold exactly at every truncation order.  Returns True/False."""
    chart = f.chart
    n = chart.nparams
    lhs_a = jet_of(f, k)
    lhs_b = jet_scalar(f, k)
    rhs_a = Jet.zero(chart, k)
    rhs_b = Jet.zero(chart, k)
    for m in mi_range(n, k):
        dmf = f.derive_multi(m)
        dp = delta_power(chart, m, k)
        sign = Fraction((-1) ** mi_degree(m), mi_factorial(m))
        rhs_a = rhs_a + dp.scale(dmf * sign)
        rhs_b = rhs_b + (jet_of(dmf, k) * dp).scale(Fraction(1, mi_factorial(m)))
    return lhs_a == rhs_a and lhs_b == rhs_b
