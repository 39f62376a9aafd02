"""Transition functions of the current-algebra bundle over an atlas.

A transition pair records an overlap chart (with its own native parameters),
the from-chart coordinates G_i and the to-chart coordinates H_j, all as
elements of the overlap ring.  The coordinate frames d/dx_p (from side) and
d/dy_q (to side) are vector fields on the overlap obtained by inverting the
Jacobians of G and H against the native parameters; mutual inverseness of G
and H is checked at the jet level (composing the x-frame jet of H with the
increment series of G gives H + Y exactly, order by order).

A pair may additionally carry the coordinate change as closed formulas: a
tuple x_of_y expressing each from-coordinate in the to-coordinates and a
tuple y_of_x expressing each to-coordinate in the from-coordinates, each
written over its own one-sided chart whose parameters stand for the
arguments.  Formulas are composable by direct substitution, so for them
mutual inverseness is a real identity rather than a structural fact:
validate_transition checks x_of_y(y_of_x) and y_of_x(x_of_y) against the
identity and also anchors the formulas to the overlap values G and H.

transition_l transports a basis element X^m d/dX_p of the from-side fibre to
a current element on the to side, using the coefficient formula

  X^m d/dX_p  ->  sum_{0<=k<=m} (-1)^{|m|-|k|} binom(m,k) x^{m-k} *
                  sum_q [ G(y+Y)^k * h_qp(G(y+Y))  -  x^k h_qp ] d/dY_q

with h_qp = dH_q/dx_p and x^k shorthand for prod G_i^{k_i}; everything in
the bracket is expanded as a jet in the Y increments, exact at the requested
truncation because the substituted series has positive valuation.

transition_via_iso computes the same map through the jet-field model: apply
the inverse isomorphism on the from side (delta powers in the x-frame),
decompose into function # field pairs, rewrite the fields in the y-frame by
the chain rule, re-expand as y-frame jets and read off coefficients.  The two
routes are independent implementations and the test suites compare them.

Composition of transitions is A-linear in the output coefficients, so a
cocycle check over a common triple-overlap ring is the coefficientwise
composite; exactness at a fixed truncation follows from the filtration
property (the image of X^m only has monomials of degree >= |m|), which
filtration_check verifies directly.
"""

from __future__ import annotations

from fractions import Fraction

from .charts import ChartMismatch, NotInvertible
from .jets import Jet, jet_scalar
from .jetfields import JetField, decompose
from .liealg import CurrentElem
from .multipoly import (
    grlex_key, mi_below, mi_binomial, mi_degree, mi_range, mi_sub, mi_unit,
    mi_zero,
)
from .vfields import VectorField


class TransitionError(Exception):
    pass


class JacobianNotInvertible(TransitionError):
    pass


class InverseCheckFailed(TransitionError):
    pass


class MissingTransition(TransitionError):
    pass


def mat_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    det = None
    for c in range(n):
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = rows[0][c] * mat_det(minor)
        if c % 2:
            term = -term
        det = term if det is None else det + term
    return det


def mat_inv(rows):
    """Inverse of a matrix over the chart ring, by adjugate over determinant.
    Raises JacobianNotInvertible when the determinant cannot be inverted."""
    n = len(rows)
    det = mat_det(rows)
    try:
        dinv = det.invert()
    except NotInvertible as e:
        raise JacobianNotInvertible(str(e)) from e
    if n == 1:
        return [[dinv]]
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[a][b] for b in range(n) if b != i]
                for a in range(n) if a != j
            ]
            cof = mat_det(minor)
            if (i + j) % 2:
                cof = -cof
            inv[i][j] = cof * dinv
    return inv


def frame_jet(frame, f, r):
    """Order-r jet of f along a commuting frame of vector fields:
    coefficient at t^m is (1/m!) D^m f."""
    chart = f.chart
    n = chart.nparams
    if len(frame) != n:
        raise ValueError("frame size must match the parameter count")
    table = {mi_zero(n): f}
    for m in mi_range(n, r):
        if m in table:
            continue
        i = next(idx for idx, e in enumerate(m) if e)
        prev = m[:i] + (m[i] - 1,) + m[i + 1:]
        table[m] = frame[i].apply(table[prev]) * Fraction(1, m[i])
    return Jet(chart, r, table)


def compose_formula(f, args):
    """Substitute elements for the parameters of a generator-free formula.

    f is a ring element read as a formula in its chart's parameters; args are
    elements, all on one chart, standing for those parameters in order.  The
    formula's denominator must become invertible after substitution."""
    src = f.chart
    args = tuple(args)
    if len(args) != src.nparams or not args:
        raise ValueError("need one argument per formula parameter")
    target = args[0].chart
    for a in args[1:]:
        args[0]._check(a)

    def poly_at(p):
        out = target.zero()
        for m, c in p.terms.items():
            if any(m[src.nparams:]):
                raise ValueError("formula may not involve algebraic generators")
            term = target.elem(c)
            for i in range(src.nparams):
                if m[i]:
                    term = term * args[i] ** m[i]
            out = out + term
        return out

    val = poly_at(f.num)
    if f.s:
        val = val * poly_at(src.denominator).invert() ** f.s
    return val


def _subst(jet, series_products):
    """Evaluate a jet's polynomial on precomputed monomial products of
    positive-valuation series: sum_m coeff_m * series_products[m]."""
    out = None
    for m, c in jet.coeffs.items():
        term = series_products[m].scale(c)
        out = term if out is None else out + term
    if out is None:
        out = Jet.zero(jet.chart, jet.order)
    return out


class TransitionPair:
    """One directed transition: from-chart coordinates G and to-chart
    coordinates H on an explicit overlap chart."""

    def __init__(self, from_name, to_name, overlap, G, H, formulas=None):
        overlap.validate()
        n = overlap.nparams
        G = tuple(G)
        H = tuple(H)
        if len(G) != n or len(H) != n:
            raise ValueError(
                "transition needs one G and one H entry per overlap parameter"
            )
        for e in G + H:
            if e.chart is not overlap and e.chart != overlap:
                raise ChartMismatch("G/H entries must live on the overlap chart")
        if formulas is not None:
            x_of_y, y_of_x = formulas
            x_of_y = tuple(x_of_y)
            y_of_x = tuple(y_of_x)
            if len(x_of_y) != n or len(y_of_x) != n:
                raise ValueError("formula tuples need one entry per coordinate")
            for tup in (x_of_y, y_of_x):
                if tup[0].chart.nparams != n:
                    raise ValueError(
                        "formula chart must have one parameter per coordinate"
                    )
                for e in tup[1:]:
                    tup[0]._check(e)
            formulas = (x_of_y, y_of_x)
        self.from_name = from_name
        self.to_name = to_name
        self.overlap = overlap
        self.G = G
        self.H = H
        self.formulas = formulas
        self._frames = None
        self._comp = {}      # r -> (Gy, dG_products, hcomp matrix)
        self._tl = {}        # (m, p, r) -> CurrentElem

    # -- frames

    def _ensure_frames(self):
        if self._frames is not None:
            return self._frames
        n = self.overlap.nparams
        MG = [[self.G[i].derive(l) for l in range(n)] for i in range(n)]
        MH = [[self.H[j].derive(l) for l in range(n)] for j in range(n)]
        invMG = mat_inv(MG)
        invMH = mat_inv(MH)
        x_frame = tuple(
            VectorField(self.overlap, [invMG[l][p] for l in range(n)])
            for p in range(n)
        )
        y_frame = tuple(
            VectorField(self.overlap, [invMH[l][q] for l in range(n)])
            for q in range(n)
        )
        self._frames = (x_frame, y_frame)
        return self._frames

    @property
    def x_frame(self):
        return self._ensure_frames()[0]

    @property
    def y_frame(self):
        return self._ensure_frames()[1]

    def dH_dx(self, q, p):
        """h_qp = dH_q/dx_p."""
        return self.x_frame[p].apply(self.H[q])

    def dG_dy(self, i, j):
        return self.y_frame[j].apply(self.G[i])

    # -- shared jet data at truncation r

    def _composition_data(self, r):
        got = self._comp.get(r)
        if got is not None:
            return got
        n = self.overlap.nparams
        Gy = [frame_jet(self.y_frame, g, r) for g in self.G]
        dG = [Gy[i] - jet_scalar(self.G[i], r) for i in range(n)]
        for d in dG:
            if d.t_order() < 1:
                raise InverseCheckFailed(
                    "increment series of G has a constant term"
                )
        products = {}
        for m in mi_range(n, r):
            if mi_degree(m) == 0:
                products[m] = jet_scalar(self.overlap.one(), r)
                continue
            i = next(idx for idx, e in enumerate(m) if e)
            prev = m[:i] + (m[i] - 1,) + m[i + 1:]
            products[m] = products[prev] * dG[i]
        hcomp = [
            [
                _subst(frame_jet(self.x_frame, self.dH_dx(q, p), r), products)
                for p in range(n)
            ]
            for q in range(n)
        ]
        data = (Gy, products, hcomp)
        self._comp[r] = data
        return data

    def __repr__(self):
        return f"TransitionPair({self.from_name!r} -> {self.to_name!r} on {self.overlap.name!r})"


def identity_transition(chart):
    chart.validate()
    params = tuple(chart.param(i) for i in range(chart.nparams))
    return TransitionPair(chart.name, chart.name, chart, params, params)


def validate_transition(tp, jet_order=2):
    """Frames exist, they commute, and G/H are mutually inverse at the jet
    level: substituting the increment series of G into the x-frame jet of
    H_q returns H_q + Y_q through the requested order.  When the pair
    carries coordinate formulas, both composites of the formulas must be
    the identity and the formulas must reproduce G and H on the overlap."""
    x_frame, y_frame = tp._ensure_frames()
    n = tp.overlap.nparams
    zero = VectorField.zero(tp.overlap)
    for frame in (x_frame, y_frame):
        for a in range(n):
            for b in range(a + 1, n):
                if frame[a].bracket(frame[b]) != zero:
                    raise InverseCheckFailed("frame fields do not commute")
    Gy, products, _ = tp._composition_data(jet_order)
    for q in range(n):
        comp = _subst(frame_jet(x_frame, tp.H[q], jet_order), products)
        expected = jet_scalar(tp.H[q], jet_order) + Jet(
            tp.overlap, jet_order, {mi_unit(n, q): tp.overlap.one()}
        )
        if comp != expected:
            raise InverseCheckFailed(
                f"H_{q}(G(y+Y)) does not equal H_{q} + Y_{q} at order {jet_order}"
            )
    if tp.formulas is not None:
        _validate_formulas(tp)


def _validate_formulas(tp):
    x_of_y, y_of_x = tp.formulas
    x_side = y_of_x[0].chart
    y_side = x_of_y[0].chart
    n = tp.overlap.nparams
    try:
        for i in range(n):
            if compose_formula(x_of_y[i], y_of_x) != x_side.param(i):
                raise InverseCheckFailed(
                    f"x_of_y[{i}] composed with y_of_x is not the identity"
                )
            if compose_formula(x_of_y[i], tp.H) != tp.G[i]:
                raise InverseCheckFailed(
                    f"x_of_y[{i}] does not reproduce G_{i} on the overlap"
                )
        for q in range(n):
            if compose_formula(y_of_x[q], x_of_y) != y_side.param(q):
                raise InverseCheckFailed(
                    f"y_of_x[{q}] composed with x_of_y is not the identity"
                )
            if compose_formula(y_of_x[q], tp.G) != tp.H[q]:
                raise InverseCheckFailed(
                    f"y_of_x[{q}] does not reproduce H_{q} on the overlap"
                )
    except NotInvertible as e:
        raise InverseCheckFailed(
            f"formula substitution needs an unavailable inverse: {e}"
        ) from e


def transition_l(tp, m, p, r):
    """Transport X^m d/dX_p (from-side current basis) across tp: a current
    element over the overlap chart in the Y increments, truncated at r."""
    n = tp.overlap.nparams
    m = tuple(m)
    if len(m) != n:
        raise ValueError("monomial length does not match chart dimension")
    if not 1 <= mi_degree(m) <= r:
        raise ValueError(f"monomial degree must lie in 1..{r}")
    if not 0 <= p < n:
        raise IndexError(f"direction {p} out of range")
    got = tp._tl.get((m, p, r))
    if got is not None:
        return got
    Gy, products, hcomp = tp._composition_data(r)
    comps = [Jet.zero(tp.overlap, r) for _ in range(n)]
    gy_pows = {}
    for k in mi_below(m):
        gy_pows[k] = (
            jet_scalar(tp.overlap.one(), r)
            if mi_degree(k) == 0
            else gy_pows[_mi_prev(k)] * Gy[_mi_first(k)]
        )
        sign = (-1) ** (mi_degree(m) - mi_degree(k)) * mi_binomial(m, k)
        outer = tp.overlap.one()
        for i, e in enumerate(mi_sub(m, k)):
            outer = outer * tp.G[i] ** e
        xk = tp.overlap.one()
        for i, e in enumerate(k):
            xk = xk * tp.G[i] ** e
        for q in range(n):
            h = hcomp[q][p]
            bracket = gy_pows[k] * h - jet_scalar(xk * tp.dH_dx(q, p), r)
            comps[q] = comps[q] + bracket.scale(outer * sign)
    terms = {}
    for q in range(n):
        for mm, c in comps[q].coeffs.items():
            if mi_degree(mm) == 0:
                raise ArithmeticError(
                    "transition produced a constant term; G/H are inconsistent"
                )
            terms[(mm, q)] = c
    out = CurrentElem(tp.overlap, r, terms)
    tp._tl[(m, p, r)] = out
    return out


def _mi_first(m):
    return next(idx for idx, e in enumerate(m) if e)


def _mi_prev(m):
    i = _mi_first(m)
    return m[:i] + (m[i] - 1,) + m[i + 1:]


def transition_via_iso(tp, m, p, r):
    """The same transport computed through the jet-field isomorphism:
    inverse map on the from side (delta powers in the x-frame), smash
    decomposition, chain rule into the y-frame, re-expansion as y-frame
    jets, and coefficient read-off."""
    n = tp.overlap.nparams
    m = tuple(m)
    if not 1 <= mi_degree(m) <= r:
        raise ValueError(f"monomial degree must lie in 1..{r}")
    x_frame, y_frame = tp._ensure_frames()
    one = jet_scalar(tp.overlap.one(), r)
    dx = [
        jet_scalar(tp.G[i], r) - frame_jet(x_frame, tp.G[i], r)
        for i in range(n)
    ]
    dxm = one
    for i, e in enumerate(m):
        for _ in range(e):
            dxm = dxm * dx[i]
    comps = [Jet.zero(tp.overlap, r) for _ in range(n)]
    comps[p] = dxm.scale(tp.overlap.one() * Fraction((-1) ** mi_degree(m)))
    u = JetField(tp.overlap, r, comps)
    pairs = decompose(u, params=list(tp.G), basis=list(x_frame))
    out = [Jet.zero(tp.overlap, r) for _ in range(n)]
    for a, eta in pairs:
        for q in range(n):
            b = eta.apply(tp.H[q])
            if not b.is_zero():
                out[q] = out[q] + frame_jet(y_frame, b, r).scale(a)
    terms = {}
    for q in range(n):
        for mm, c in out[q].coeffs.items():
            if mi_degree(mm) == 0:
                raise ArithmeticError(
                    "isomorphism route produced a nonzero anchor"
                )
            terms[(mm, q)] = c
    return CurrentElem(tp.overlap, r, terms)


def transport_current(tp, ce, r):
    """Apply a transition to a whole current element, A-linearly in the
    coefficients.  ce must live on the same overlap chart."""
    if ce.chart is not tp.overlap and ce.chart != tp.overlap:
        raise ChartMismatch("current element must live on the overlap chart")
    out = CurrentElem.zero(tp.overlap, r)
    for (m, q), c in ce.terms.items():
        out = out + transition_l(tp, m, q, r).scale(c)
    return out


def filtration_check(tp, m, p, r):
    """The image of X^m d/dX_p has no monomials of degree < |m|."""
    ce = transition_l(tp, m, p, r)
    return all(mi_degree(mm) >= mi_degree(m) for (mm, _q) in ce.terms)


def jacobian_quotient_check(tp, a, p, r):
    """For |a| = 1 the degree-1 block of the transition is the rank-one
    product of the two Jacobians: coefficient of Y_b d/dY_q equals
    (dG_{a}/dy_b) * (dH_q/dx_p)."""
    n = tp.overlap.nparams
    a = tuple(a)
    if mi_degree(a) != 1:
        raise ValueError("jacobian_quotient_check needs |a| = 1")
    i = _mi_first(a)
    ce = transition_l(tp, a, p, r)
    for b in range(n):
        for q in range(n):
            got = ce.coeff(mi_unit(n, b), q)
            want = tp.dG_dy(i, b) * tp.dH_dx(q, p)
            if got != want:
                return False
    return True


def cocycle_check(atl, triple, m, p, r):
    """transition(i->l) = transition(j->l) after transition(i->j) on the
    basis element X^m d/dX_p, all three over one common overlap chart."""
    i, j, l = triple
    t_ij = atl.transition(i, j)
    t_jl = atl.transition(j, l)
    t_il = atl.transition(i, l)
    if not (t_ij.overlap == t_jl.overlap == t_il.overlap):
        raise TransitionError(
            "cocycle check needs all three transitions over one overlap chart"
        )
    lhs = transport_current(t_jl, transition_l(t_ij, m, p, r), r)
    rhs = transition_l(t_il, m, p, r)
    return lhs == rhs


class AtlasSpec:
    """Charts by name plus directed transitions keyed by (from, to)."""

    def __init__(self, name, charts, transitions):
        self.name = name
        self.charts = dict(charts)
        self.transitions = {}
        for tp in transitions:
            if tp.from_name not in self.charts or tp.to_name not in self.charts:
                raise TransitionError(
                    f"transition {tp.from_name}->{tp.to_name} references unknown charts"
                )
            self.transitions[(tp.from_name, tp.to_name)] = tp

    def transition(self, a, b):
        got = self.transitions.get((a, b))
        if got is None:
            raise MissingTransition(f"no transition {a} -> {b}")
        return got

    def validate(self, jet_order=2):
        for chart in self.charts.values():
            chart.validate()
        for (a, b), tp in self.transitions.items():
            if self.charts[a].nparams != tp.overlap.nparams or self.charts[b].nparams != tp.overlap.nparams:
                raise TransitionError(
                    f"transition {a}->{b}: chart dimensions do not match the overlap"
                )
            validate_transition(tp, jet_order)

    def __repr__(self):
        return f"AtlasSpec({self.name!r}, charts={sorted(self.charts)})"
