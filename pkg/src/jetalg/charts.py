"""Coordinate rings of etale charts and their extended partial derivatives.

A chart ring is A = Q[x_1..x_N, y_1..y_n]_g.  The x_i are free parameters.
Each algebraic generator y_j satisfies one monic relation y_j^{d_j} = q_j
where q_j only involves the parameters and earlier generators (triangular
shape), with d_j >= 2.  A single denominator g is inverted; localizing at
several elements means folding their product into g.  Every y_j must divide
g so that 1/y_j exists, which makes the implicit-differentiation formula for
dy_j/dx_i well defined and turns d/dx_i into a derivation of all of A.

Elements are kept in normal form: the numerator polynomial is reduced so
every y_j-exponent is < d_j (substituting the relation for the last generator
first, which cannot reintroduce later generators), and the denominator is the
implicit power g^s.  Numerator/denominator pairs are not cancelled; equality
is decided by cross-multiplication, valid because A is a domain.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import Poly, poly_div_exact, mi_unit


class ChartError(Exception):
    pass


class NonMonicRelation(ChartError):
    """An algebraic relation is not of the triangular monic shape."""


class MissingInvertibleGenerator(ChartError):
    """Some y_j does not divide the denominator, so 1/y_j is unavailable."""


class ZeroDenominator(ChartError):
    pass


class ChartMismatch(ChartError):
    """Operands live on different charts."""


class NotInvertible(ChartError):
    """The element has no inverse of the form (polynomial)/g^k that the
    division search can find."""


class GenSpec:
    """One algebraic generator: y^degree = rhs."""

    __slots__ = ("name", "degree", "rhs")

    def __init__(self, name, degree, rhs):
        self.name = name
        self.degree = degree
        self.rhs = rhs

    def __repr__(self):
        return f"GenSpec({self.name}^{self.degree} = {self.rhs})"


class ChartSpec:
    """An etale chart.  Construct, then call validate() (load_chart and the
    fixtures do this); operations assume a validated chart.

    params: names of the free parameters x_i.
    gens:   GenSpec list; each rhs may be given over any prefix of the full
            variable list (params + generator names) and is promoted.
    denominator: Poly over the full variable list (default 1).
    """

    def __init__(self, name, params, gens=(), denominator=None):
        self.name = name
        self.params = tuple(params)
        names = list(self.params)
        promoted = []
        for gspec in gens:
            names.append(gspec.name)
            promoted.append(gspec)
        self.allvars = tuple(names)
        self.gens = tuple(
            GenSpec(gs.name, gs.degree, gs.rhs.extended(self.allvars))
            for gs in promoted
        )
        if denominator is None:
            denominator = Poly.one(self.allvars)
        self.denominator = denominator.extended(self.allvars)
        self._validated = False
        self._qpow = {}      # (gen index, exponent) -> reduced Poly
        self._gpow = {}      # s -> reduced Poly g^s
        self._gpow_raw = {}  # s -> unreduced Poly g^s
        self._dy = None      # dy[j][i] : RingElem
        self._dg = None      # dg[i] : RingElem, total derivative of g
        self._g_over_y = []  # g / y_j as Poly

    # -- basic shape

    @property
    def nparams(self):
        return len(self.params)

    @property
    def ngens(self):
        return len(self.gens)

    def gen_index(self, j):
        """Variable index of generator j inside allvars."""
        return self.nparams + j

    def __eq__(self, other):
        if not isinstance(other, ChartSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.params == other.params
            and self.denominator == other.denominator
            and len(self.gens) == len(other.gens)
            and all(
                a.name == b.name and a.degree == b.degree and a.rhs == b.rhs
                for a, b in zip(self.gens, other.gens)
            )
        )

    def __hash__(self):
        return hash((self.name, self.params, tuple(g.name for g in self.gens)))

    def __repr__(self):
        return f"ChartSpec({self.name!r}, params={self.params})"

    # -- validation

    def validate(self):
        """Check the chart shape and precompute the derivative tables.

        Raises NonMonicRelation, MissingInvertibleGenerator or
        ZeroDenominator.  Idempotent.
        """
        if self._validated:
            return
        if len(set(self.allvars)) != len(self.allvars):
            raise NonMonicRelation("parameter and generator names must be distinct")
        if self.nparams == 0:
            raise ChartError("a chart needs at least one parameter")
        for j, gs in enumerate(self.gens):
            if not isinstance(gs.degree, int) or gs.degree < 2:
                raise NonMonicRelation(
                    f"generator {gs.name}: degree must be an integer >= 2"
                )
            allowed = set(range(self.nparams)) | {self.gen_index(l) for l in range(j)}
            if not gs.rhs.support_vars() <= allowed:
                raise NonMonicRelation(
                    f"generator {gs.name}: rhs may only use parameters and earlier generators"
                )
        # relations are now usable; reduce g and check generator invertibility
        self._validated = True
        try:
            g = self.reduce(self.denominator)
        except Exception:
            self._validated = False
            raise
        if g.is_zero():
            self._validated = False
            raise ZeroDenominator("denominator reduces to 0")
        self.denominator = g
        for j, gs in enumerate(self.gens):
            yvar = Poly.variable(self.allvars, gs.name)
            quot = poly_div_exact(g, yvar)
            if quot is None:
                self._validated = False
                raise MissingInvertibleGenerator(
                    f"generator {gs.name} must divide the denominator"
                )
            self._g_over_y.append(quot)
        self._build_derivative_tables()

    def _build_derivative_tables(self):
        # dy[j][i] = dy_j/dx_i by implicit differentiation of y_j^d = q_j:
        #   d * y_j^(d-1) * dy_j/dx_i = dq_j/dx_i + sum_{l<j} dq_j/dy_l * dy_l/dx_i
        # and 1/y_j = (g/y_j)/g.
        dy = []
        for j, gs in enumerate(self.gens):
            d = gs.degree
            inv_lead = RingElem(
                self, self._g_over_y[j] ** (d - 1) * Fraction(1, d), d - 1
            )
            row = []
            for i in range(self.nparams):
                acc = RingElem(self, gs.rhs.partial(i))
                for l in range(j):
                    dq = gs.rhs.partial(self.gen_index(l))
                    if not dq.is_zero():
                        acc = acc + RingElem(self, dq) * dy[l][i]
                row.append(acc * inv_lead)
            dy.append(row)
        self._dy = dy
        self._dg = [self._total_derivative(self.denominator, i) for i in range(self.nparams)]

    def _require_valid(self):
        if not self._validated:
            raise ChartError(f"chart {self.name!r} has not been validated")

    # -- normal form

    def reduce(self, poly):
        """Reduce a polynomial modulo the relations: afterwards every
        generator exponent is below its degree.  Processing generators from
        the last to the first terminates because each rhs only involves
        earlier variables."""
        if not self.gens:
            return poly
        terms = poly.terms
        for j in range(self.ngens - 1, -1, -1):
            idx = self.gen_index(j)
            d = self.gens[j].degree
            if all(m[idx] < d for m in terms):
                continue
            out = {}
            for m, c in terms.items():
                e = m[idx]
                if e < d:
                    _acc(out, m, c)
                    continue
                base = m[:idx] + (e % d,) + m[idx + 1:]
                for m2, c2 in self._q_power(j, e // d).terms.items():
                    _acc(out, tuple(a + b for a, b in zip(base, m2)), c * c2)
            terms = {m: c for m, c in out.items() if c}
        return Poly(self.allvars, terms)

    def _q_power(self, j, e):
        key = (j, e)
        got = self._qpow.get(key)
        if got is None:
            if e == 0:
                got = Poly.one(self.allvars)
            else:
                got = self._q_power(j, e - 1) * self.gens[j].rhs
            self._qpow[key] = got
        return got

    def g_pow(self, s):
        """Reduced g^s."""
        got = self._gpow.get(s)
        if got is None:
            if s == 0:
                got = Poly.one(self.allvars)
            else:
                got = self.reduce(self.g_pow(s - 1) * self.denominator)
            self._gpow[s] = got
        return got

    def g_pow_raw(self, s):
        got = self._gpow_raw.get(s)
        if got is None:
            got = self.g_pow_raw(s - 1) * self.denominator if s else Poly.one(self.allvars)
            self._gpow_raw[s] = got
        return got

    def _total_derivative(self, poly, i):
        """d/dx_i of a polynomial in params and generators, as a RingElem."""
        out = RingElem(self, poly.partial(i))
        for j in range(self.ngens):
            dp = poly.partial(self.gen_index(j))
            if not dp.is_zero():
                out = out + RingElem(self, dp) * self._dy[j][i]
        return out

    # -- element constructors

    def elem(self, value, s=0):
        """RingElem from Poly / int / Fraction, over g^s."""
        if isinstance(value, (int, Fraction)):
            value = Poly.const(self.allvars, value)
        return RingElem(self, value, s)

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def var(self, name):
        """RingElem for a parameter or generator by name."""
        return RingElem(self, Poly.variable(self.allvars, name))

    def param(self, i):
        return self.var(self.params[i])

    def gen(self, j):
        return self.var(self.gens[j].name)

    def inv_denominator(self, s=1):
        return RingElem(self, Poly.one(self.allvars), s)


def validate_chart(chart):
    chart.validate()


def _acc(d, key, c):
    new = d.get(key, Fraction(0)) + c
    if new:
        d[key] = new
    elif key in d:
        del d[key]


class RingElem:
    """num / g^s on a chart; num is stored relation-reduced."""

    __slots__ = ("chart", "num", "s")

    def __init__(self, chart, num, s=0):
        if s < 0:
            raise ValueError("denominator exponent must be >= 0")
        num = chart.reduce(num)
        if num.is_zero():
            s = 0
        self.chart = chart
        self.num = num
        self.s = s

    def _check(self, other):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatch(
                f"elements live on different charts: {self.chart.name!r} vs {other.chart.name!r}"
            )

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.chart.elem(other)
        if isinstance(other, RingElem):
            self._check(other)
            return other
        return None

    def is_zero(self):
        return self.num.is_zero()

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        s = max(self.s, other.s)
        num = (
            self.num * self.chart.g_pow(s - self.s)
            + other.num * self.chart.g_pow(s - other.s)
        )
        return RingElem(self.chart, num, s)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.chart, -self.num, self.s)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElem(self.chart, self.num * other, self.s)
        if not isinstance(other, RingElem):
            return NotImplemented
        self._check(other)
        return RingElem(self.chart, self.num * other.num, self.s + other.s)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.chart.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.s == other.s:
            return self.num == other.num
        lhs = self.chart.reduce(self.num * self.chart.g_pow(other.s))
        rhs = self.chart.reduce(other.num * self.chart.g_pow(self.s))
        return lhs == rhs

    __hash__ = None

    # -- calculus

    def derive(self, i):
        """The extended partial derivative d/dx_i (acts on generators through
        the relation, on 1/g through the quotient rule)."""
        self.chart._require_valid()
        if not 0 <= i < self.chart.nparams:
            raise IndexError(f"direction {i} out of range")
        dnum = self.chart._total_derivative(self.num, i)
        out = RingElem(self.chart, dnum.num, dnum.s + self.s)
        if self.s:
            dg = self.chart._dg[i]
            out = out - RingElem(
                self.chart, self.num * dg.num * self.s, dg.s + self.s + 1
            )
        return out

    def derive_multi(self, m):
        """Iterated derivative d^m (orders commute, so any order works)."""
        if len(m) != self.chart.nparams:
            raise ValueError("multi-index length does not match parameter count")
        out = self
        for i, e in enumerate(m):
            for _ in range(e):
                out = out.derive(i)
        return out

    def invert(self):
        """Multiplicative inverse, when the numerator divides a power of g.

        Searches k with num | g^k by exact division, trying both the raw and
        the relation-reduced powers; either hit is sound because division is
        performed in the free polynomial ring.  Raises NotInvertible when the
        search is exhausted."""
        self.chart._require_valid()
        if self.is_zero():
            raise NotInvertible("0 has no inverse")
        bound = self.s + self.num.degree() + 4
        for k in range(bound + 1):
            for dividend in (self.chart.g_pow_raw(k), self.chart.g_pow(k)):
                q = poly_div_exact(dividend, self.num)
                if q is not None:
                    if k >= self.s:
                        return RingElem(self.chart, q, k - self.s)
                    return RingElem(self.chart, q * self.chart.g_pow_raw(self.s - k), 0)
        raise NotInvertible(f"cannot invert {self}")

    # -- display

    def __str__(self):
        if self.s == 0:
            return str(self.num)
        gs = str(self.chart.denominator)
        pw = f"^{self.s}" if self.s > 1 else ""
        return f"({self.num})/({gs}){pw}"

    def __repr__(self):
        return f"RingElem({str(self)!r} on {self.chart.name!r})"
