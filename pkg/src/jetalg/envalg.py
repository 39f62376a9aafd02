"""Differential operators, PBW straightening, and the factorization of the
enveloping algebra of vector fields through D (x) U(L^(r)).

DiffOp is the algebra generated by A and the coordinate derivatives in normal
form sum_k a_k d^k (coefficients on the left); composition uses the Leibniz
rule d^k b = sum_{j<=k} binom(k,j) (d^j b) d^{k-j}.

PBW words are tuples of L^(r) basis elements (m, i); a word is normal when
non-decreasing in the basis order.  pbw_normalize straightens a word into the
PBW basis of U(L^(r)) by swapping adjacent out-of-order pairs and inserting
the bracket correction, with monomials of degree > r discarded exactly as in
the truncated bracket.

TensorElem represents elements of D (x) U(L^(r)) as a map
(derivative multi-index, PBW word) -> ring coefficient.  av_to_tensor sends a
word in functions and vector fields to this algebra: a function f goes to
f (x) 1 and a vector field sum_i f_i d/dx_i goes to

    sum_i f_i d/dx_i (x) 1  +  sum_i sum_{1<=|m|<=r} (1/m!) d^m f_i (x) X^m d/dX_i,

extended multiplicatively over the word.  This is the finite-order shadow of
the isomorphism between the completed enveloping algebra of vector fields and
the completed tensor algebra; the tests check it respects the defining
relations and commutators.
"""

from __future__ import annotations

from fractions import Fraction

from .charts import ChartMismatch, RingElem
from .liealg import basis_bracket, basis_key
from .multipoly import (
    grlex_key, mi_below, mi_binomial, mi_degree, mi_factorial, mi_range,
    mi_sub, mi_unit, mi_zero,
)


class DiffOp:
    """Normal-form differential operator: dict multi-index -> RingElem."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms=()):
        n = chart.nparams
        clean = {}
        for m, c in (terms.items() if isinstance(terms, dict) else terms):
            m = tuple(m)
            if len(m) != n:
                raise ValueError("multi-index length does not match parameter count")
            if not isinstance(c, RingElem):
                raise TypeError("coefficients must be RingElem")
            if not c.is_zero():
                clean[m] = clean[m] + c if m in clean else c
        self.chart = chart
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    @classmethod
    def zero(cls, chart):
        return cls(chart, {})

    @classmethod
    def identity(cls, chart):
        return cls(chart, {mi_zero(chart.nparams): chart.one()})

    @classmethod
    def from_function(cls, f):
        return cls(f.chart, {mi_zero(f.chart.nparams): f})

    @classmethod
    def from_vf(cls, v):
        n = v.chart.nparams
        return cls(v.chart, {mi_unit(n, i): c for i, c in enumerate(v.coeffs)})

    def _check(self, other):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatch("operators live on different charts")

    def coeff(self, m):
        got = self.terms.get(tuple(m))
        return got if got is not None else self.chart.zero()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return DiffOp(self.chart, out)

    def __neg__(self):
        return DiffOp(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, a):
        return DiffOp(self.chart, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, other):
        """Composition, renormalized with the Leibniz rule:
        (a d^k)(b d^l) = a sum_{j<=k} binom(k,j) (d^j b) d^{k-j+l}."""
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        out = {}
        for k, a in self.terms.items():
            for l, b in other.terms.items():
                for j in mi_below(k):
                    db = b.derive_multi(j)
                    if db.is_zero():
                        continue
                    m = tuple(p - q + s for p, q, s in zip(k, j, l))
                    c = a * db * mi_binomial(k, j)
                    out[m] = out[m] + c if m in out else c
        return DiffOp(self.chart, out)

    def apply(self, f):
        """Action on a ring element."""
        out = self.chart.zero()
        for m, c in self.terms.items():
            out = out + c * f.derive_multi(m)
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        for m in self.terms.keys() | other.terms.keys():
            if self.coeff(m) != other.coeff(m):
                return False
        return True

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0])):
            if mi_degree(m) == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*D{list(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp({str(self)!r})"


# ---------------------------------------------------------------------------
# PBW straightening in U(L^(r))

def pbw_normalize(word, nvars, r):
    """Expand a word of L^(r) basis elements over the PBW basis
    (non-decreasing words).  Returns dict word -> Fraction.

    Straightening swaps adjacent out-of-order pairs, inserting the bracket
    correction; brackets that leave the truncation are discarded, which is
    multiplication in U of the degree-truncated algebra.  Terminates because
    a swap lowers the inversion count at fixed length and a correction
    shortens the word."""
    out = {}
    stack = [(tuple(word), Fraction(1))]
    while stack:
        w, coef = stack.pop()
        idx = _first_descent(w)
        if idx is None:
            out[w] = out.get(w, Fraction(0)) + coef
            continue
        a, b = w[idx], w[idx + 1]
        stack.append((w[:idx] + (b, a) + w[idx + 2:], coef))
        for (m, q), c in basis_bracket(a[0], a[1], b[0], b[1], r).items():
            stack.append((w[:idx] + ((m, q),) + w[idx + 2:], coef * c))
    return {w: c for w, c in out.items() if c}


def _first_descent(w):
    for idx in range(len(w) - 1):
        if basis_key(w[idx]) > basis_key(w[idx + 1]):
            return idx
    return None


# ---------------------------------------------------------------------------
# D (x) U(L^(r))

class TensorElem:
    """Element of D (x) U(L^(r)): dict (derivative multi-index, PBW word) ->
    RingElem coefficient."""

    __slots__ = ("chart", "r", "terms")

    def __init__(self, chart, r, terms=()):
        n = chart.nparams
        clean = {}
        for (dm, w), c in (terms.items() if isinstance(terms, dict) else terms):
            dm = tuple(dm)
            w = tuple((tuple(m), i) for m, i in w)
            if len(dm) != n:
                raise ValueError("multi-index length does not match parameter count")
            if list(w) != sorted(w, key=basis_key):
                raise ValueError("PBW word is not in normal order")
            for m, i in w:
                if not 1 <= mi_degree(m) <= r:
                    raise ValueError(f"basis monomial {m} outside degrees 1..{r}")
            if not isinstance(c, RingElem):
                raise TypeError("coefficients must be RingElem")
            if not c.is_zero():
                key = (dm, w)
                clean[key] = clean[key] + c if key in clean else c
        self.chart = chart
        self.r = r
        self.terms = {k: c for k, c in clean.items() if not c.is_zero()}

    @classmethod
    def unit(cls, chart, r):
        return cls(chart, r, {(mi_zero(chart.nparams), ()): chart.one()})

    @classmethod
    def zero(cls, chart, r):
        return cls(chart, r, {})

    def _check(self, other):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatch("elements live on different charts")
        if self.r != other.r:
            raise ValueError("truncation orders differ")

    def coeff(self, dm, w):
        got = self.terms.get((tuple(dm), tuple(w)))
        return got if got is not None else self.chart.zero()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElem(self.chart, self.r, out)

    def __neg__(self):
        return TensorElem(self.chart, self.r, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self + (-other)

    def scale(self, a):
        return TensorElem(self.chart, self.r, {k: a * c for k, c in self.terms.items()})

    def __mul__(self, other):
        """Componentwise product: DiffOp composition on the left factor,
        PBW-straightened concatenation on the right."""
        if not isinstance(other, TensorElem):
            return NotImplemented
        self._check(other)
        n = self.chart.nparams
        out = {}
        for (k, w1), a in self.terms.items():
            for (l, w2), b in other.terms.items():
                dterms = {}
                for j in mi_below(k):
                    db = b.derive_multi(j)
                    if db.is_zero():
                        continue
                    m = tuple(p - q + s for p, q, s in zip(k, j, l))
                    c = a * db * mi_binomial(k, j)
                    dterms[m] = dterms[m] + c if m in dterms else c
                if not dterms:
                    continue
                for word, wc in pbw_normalize(w1 + w2, n, self.r).items():
                    for m, c in dterms.items():
                        key = (m, word)
                        add = c * wc
                        out[key] = out[key] + add if key in out else add
        return TensorElem(self.chart, self.r, out)

    def __eq__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        self._check(other)
        for k in self.terms.keys() | other.terms.keys():
            if self.coeff(*k) != other.coeff(*k):
                return False
        return True

    __hash__ = None

    def __str__(self):
        from .liealg import _basis_str
        if not self.terms:
            return "0"
        parts = []
        for (dm, w), c in sorted(
            self.terms.items(), key=lambda t: (grlex_key(t[0][0]), t[0][1])
        ):
            dpart = f"({c})" if mi_degree(dm) == 0 else f"({c})*D{list(dm)}"
            wpart = "1" if not w else "*".join(
                _basis_str(m, i, self.chart.nparams) for m, i in w
            )
            parts.append(f"{dpart} (x) {wpart}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElem(r={self.r}, {str(self)!r})"


def fun_factor(f, r):
    """Image of the function f: f (x) 1."""
    return TensorElem(f.chart, r, {(mi_zero(f.chart.nparams), ()): f})


def vf_factor(v, r):
    """Image of a vector field: the first-order operator plus its formal-jet
    tail in the current directions."""
    chart = v.chart
    n = chart.nparams
    terms = {}
    for i, f in enumerate(v.coeffs):
        if f.is_zero():
            continue
        terms[(mi_unit(n, i), ())] = (
            terms.get((mi_unit(n, i), ()), chart.zero()) + f
        )
        for m in mi_range(n, r):
            if mi_degree(m) < 1:
                continue
            c = f.derive_multi(m) * Fraction(1, mi_factorial(m))
            if not c.is_zero():
                key = (mi_zero(n), ((m, i),))
                terms[key] = terms[key] + c if key in terms else c
    return TensorElem(chart, r, terms)


def av_to_tensor(factors, r):
    """Map a word in functions and vector fields into D (x) U(L^(r)).

    `factors` is a sequence of ('fun', RingElem) / ('vf', VectorField)
    entries, multiplied left to right."""
    chart = None
    for kind, val in factors:
        chart = val.chart
        break
    if chart is None:
        raise ValueError("empty word: pass at least one factor")
    out = TensorElem.unit(chart, r)
    for kind, val in factors:
        if kind == "fun":
            out = out * fun_factor(val, r)
        elif kind == "vf":
            out = out * vf_factor(val, r)
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return out
