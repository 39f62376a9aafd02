"""Jets of vector fields and their smash-product bracket.

A jet field of order k has one order-k jet per coordinate direction: the
component jets are the coefficients of d/dx_1..d/dx_N.  The decomposable
a # eta (function a tensored against the vector field eta) has component i
equal to a * jet_of(eta_i); every jet field is a sum of such decomposables
(see decompose).

The bracket combines the two commuting coordinate-field actions: writing
u_i for the component jets of u and u_i(0) for their constant coefficients,

    [u, w]_j = sum_i u_i(0) * d/dx_i(w_j's coefficients)
                     + (u_i - u_i(0)) * d/dt_i(w_j)       minus (u <-> w).

The t-derivative is only determined to order k-1, but its cofactor has
positive t-valuation, so the bracket is exact at order k.  On decomposables
it agrees with

    [a1 # g1, a2 # g2] = a1 g1(a2) # g2 - a2 g2(a1) # g1 + a1 a2 # [g1, g2],

which the tests implement as an independent oracle.

localization_partial_sum builds the truncated series that exhibits
(1/g) eta as a limit of jet fields:

    S_m = sum_{r=0}^{m} (1/g^{r+1}) delta(g)^r (1 # eta),

whose defect against 1 # (1/g) eta has t-valuation >= m+1 and is given in
closed form by localization_remainder.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .charts import ChartMismatch
from .jets import Jet, delta, jet_of, jet_scalar
from .multipoly import mi_below, mi_binomial, mi_degree, mi_sub, mi_unit, mi_zero
from .vfields import VectorField


class JetField:
    __slots__ = ("chart", "order", "comps")

    def __init__(self, chart, order, comps):
        comps = tuple(comps)
        if len(comps) != chart.nparams:
            raise ValueError(f"need {chart.nparams} component jets")
        for j in comps:
            if not isinstance(j, Jet):
                raise TypeError("components must be Jets")
            if j.order != order:
                raise ValueError("component jet order mismatch")
            if j.chart is not chart and j.chart != chart:
                raise ChartMismatch("component lives on a different chart")
        self.chart = chart
        self.order = order
        self.comps = comps

    @classmethod
    def zero(cls, chart, order):
        return cls(chart, order, [Jet.zero(chart, order)] * chart.nparams)

    def _check(self, other):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatch("jet fields live on different charts")
        if self.order != other.order:
            raise ValueError(f"orders differ: {self.order} vs {other.order}")

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other):
        if not isinstance(other, JetField):
            return NotImplemented
        self._check(other)
        return JetField(
            self.chart, self.order,
            [a + b for a, b in zip(self.comps, other.comps)],
        )

    def __neg__(self):
        return JetField(self.chart, self.order, [-c for c in self.comps])

    def __sub__(self, other):
        if not isinstance(other, JetField):
            return NotImplemented
        return self + (-other)

    def scale(self, a):
        """Left action of A: multiply every coefficient by a."""
        return JetField(self.chart, self.order, [c.scale(a) for c in self.comps])

    def scale_jet(self, j):
        """Multiply every component by an order-matched jet."""
        return JetField(self.chart, self.order, [j * c for c in self.comps])

    def anchor(self):
        """Evaluate at t = 0: the underlying vector field."""
        return VectorField(self.chart, [c.eval_diagonal() for c in self.comps])

    def jf_order(self):
        """Minimum t-valuation over the components; k+1 when zero."""
        return min(c.t_order() for c in self.comps)

    def truncated(self, k):
        return JetField(self.chart, k, [c.truncated(k) for c in self.comps])

    def bracket(self, other):
        self._check(other)
        return _half_action(self, other) - _half_action(other, self)

    def __eq__(self, other):
        if not isinstance(other, JetField):
            return NotImplemented
        self._check(other)
        return all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __str__(self):
        parts = [
            f"[{c}]*d/d{name}"
            for c, name in zip(self.comps, self.chart.params)
            if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"JetField(order={self.order}, {str(self)!r})"


def _half_action(u, w):
    """sum_i u_i(0) * Dx_i(w) + (u_i - u_i(0)) * Dt_i(w), componentwise.

    Computed coefficient by coefficient so that the order-(k-1) ambiguity of
    Dt never touches stored data beyond order k: the coefficient of t^m only
    needs w-coefficients at indices of degree <= |m|."""
    chart = u.chart
    k = u.order
    n = chart.nparams
    out = []
    for j in range(n):
        wj = w.comps[j]
        acc = {}
        for i in range(n):
            ui = u.comps[i]
            u0 = ui.coeffs.get(mi_zero(n))
            if u0 is not None:
                for m, c in wj.coeffs.items():
                    d = u0 * c.derive(i)
                    if not d.is_zero():
                        acc[m] = acc[m] + d if m in acc else d
            for a, ca in ui.coeffs.items():
                if mi_degree(a) == 0:
                    continue
                # (t^a coefficient of u_i) * d/dt_i hitting w_j
                for b, cb in wj.coeffs.items():
                    if not b[i]:
                        continue
                    m = tuple(x + y for x, y in zip(a, b))
                    m = m[:i] + (m[i] - 1,) + m[i + 1:]
                    if mi_degree(m) > k:
                        continue
                    d = ca * cb * b[i]
                    acc[m] = acc[m] + d if m in acc else d
        out.append(Jet(chart, k, acc))
    return JetField(chart, k, out)


def jf_from_pair(a, v, k):
    """The decomposable a # v: component i is a * jet_of(v_i)."""
    if a.chart is not v.chart and a.chart != v.chart:
        raise ChartMismatch("scalar and field live on different charts")
    return JetField(
        v.chart, k, [jet_of(c, k).scale(a) for c in v.coeffs]
    )


def jf_from_vf(v, k):
    return jf_from_pair(v.chart.one(), v, k)


def decompose(u, params=None, basis=None):
    """Write u as a finite sum of decomposables: returns [(a, eta), ...] with
    sum jf_from_pair(a, eta, k) == u.

    Uses the expansion of each coefficient u_{p,m} t^m as
    (-1)^|m| (u_{p,m} # 1) delta(x)^m and expands the delta powers
    binomially, so eta ranges over monomial multiples of the coordinate
    fields.  `params` and `basis` default to the chart's own coordinates and
    coordinate fields; passing others re-expresses the same algebra relative
    to a different frame (the atlas module uses this)."""
    chart = u.chart
    n = chart.nparams
    if params is None:
        params = [chart.param(i) for i in range(n)]
    if basis is None:
        basis = [VectorField.coordinate(chart, i) for i in range(n)]
    out = []
    for p in range(n):
        for m, c in u.comps[p].coeffs.items():
            sm = mi_degree(m)
            for l in mi_below(m):
                sign = (-1) ** (sm + mi_degree(l))
                a = c * mi_binomial(m, l) * sign
                for i, e in enumerate(mi_sub(m, l)):
                    a = a * params[i] ** e
                eta = basis[p]
                coef = chart.one()
                for i, e in enumerate(l):
                    coef = coef * params[i] ** e
                out.append((a, eta.scale(coef)))
    return out


def localization_partial_sum(g, v, m, k):
    """S_m = sum_{r=0}^{m} (1/g^{r+1}) delta(g)^r (1 # v) at order k.

    g must be invertible on the chart.  For m >= k this equals
    1 # (1/g) v exactly."""
    if m < 0:
        raise ValueError("partial sum index must be >= 0")
    chart = v.chart
    ginv = g.invert()
    dg = delta(g, k)
    acc = JetField.zero(chart, k)
    dg_pow = jet_scalar(chart.one(), k)
    ginv_pow = ginv
    for r in range(m + 1):
        if r:
            dg_pow = dg_pow * dg
            ginv_pow = ginv_pow * ginv
        term = jf_from_vf(v, k).scale_jet(dg_pow).scale(ginv_pow)
        acc = acc + term
    return acc


def localization_remainder(g, v, m, k):
    """Closed form of 1 # (1/g) v  -  S_m:

        sum_{s=0}^{m+1} (-1)^s binom(m+1, s) (1/g^s) # (g^{s-1} v)

    (the s = 0 term reads 1 # (1/g) v).  Exact at every order, and of
    t-valuation >= m+1."""
    chart = v.chart
    ginv = g.invert()
    acc = JetField.zero(chart, k)
    for s in range(m + 2):
        a = chart.one() if s == 0 else ginv ** s
        w = v.scale(ginv if s == 0 else g ** (s - 1))
        sign = (-1) ** s * math.comb(m + 1, s)
        acc = acc + jf_from_pair(a * sign, w, k)
    return acc
