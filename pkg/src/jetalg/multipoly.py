"""Sparse multivariate polynomials over exact rationals.

Monomials are exponent tuples (multi-indices) keyed into a dict with
``fractions.Fraction`` coefficients.  The zero coefficient is never stored, so
two equal polynomials have identical dicts and equality is plain dict
equality.  The monomial order used everywhere (printing, leading terms,
division) is graded lexicographic: compare total degree first, then the
exponent tuple.
"""

from __future__ import annotations

import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# multi-index helpers

def mi_zero(n):
    return (0,) * n


def mi_unit(n, i):
    if not 0 <= i < n:
        raise IndexError(f"direction {i} out of range for {n} variables")
    return tuple(1 if j == i else 0 for j in range(n))


def mi_add(a, b):
    if len(a) != len(b):
        raise ValueError("multi-index length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a, b):
    if len(a) != len(b):
        raise ValueError("multi-index length mismatch")
    c = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in c):
        raise ValueError(f"{b} is not componentwise <= {a}")
    return c


def mi_le(a, b):
    """Componentwise a <= b."""
    if len(a) != len(b):
        raise ValueError("multi-index length mismatch")
    return all(x <= y for x, y in zip(a, b))


def mi_degree(a):
    return sum(a)


def mi_factorial(a):
    """m! = prod_i m_i!"""
    out = 1
    for x in a:
        out *= math.factorial(x)
    return out


def mi_binomial(m, k):
    """binom(m, k) = prod_i binom(m_i, k_i); requires k <= m componentwise."""
    if not mi_le(k, m):
        raise ValueError(f"binomial requires {k} <= {m} componentwise")
    out = 1
    for a, b in zip(m, k):
        out *= math.comb(a, b)
    return out


def grlex_key(m):
    return (sum(m), m)


def mi_range(n, max_degree):
    """All multi-indices of length n with total degree <= max_degree, in
    graded lexicographic order."""
    out = []
    for d in range(max_degree + 1):
        out.extend(_mi_of_degree(n, d))
    return out


def _mi_of_degree(n, d):
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _mi_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    # lexicographic within fixed degree means larger first entries come later
    out.sort()
    return out


def mi_below(m):
    """All multi-indices k with k <= m componentwise, graded-lex sorted."""
    ranges = [range(x + 1) for x in m]
    out = [()]
    for r in ranges:
        out = [k + (e,) for k in out for e in r]
    out.sort(key=grlex_key)
    return out


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    """Polynomial in the declared variables, dict of multi-index -> Fraction.

    Instances are treated as immutable; all operations return new objects.
    Mixing polynomials over different variable lists raises ValueError.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError("duplicate variable names")
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            m = tuple(m)
            if len(m) != len(vars):
                raise ValueError(f"exponent tuple {m} does not match {len(vars)} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = _as_fraction(c)
            if c:
                acc = clean.get(m)
                new = c if acc is None else acc + c
                if new:
                    clean[m] = new
                elif acc is not None:
                    del clean[m]
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        return cls(vars, {mi_zero(len(vars)): _as_fraction(c)})

    @classmethod
    def one(cls, vars):
        return cls.const(vars, 1)

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name!r}")
        return cls(vars, {mi_unit(len(vars), vars.index(name)): Fraction(1)})

    # -- queries

    def is_zero(self):
        return not self.terms

    def coeff(self, m):
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self):
        """Total degree; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def sorted_terms(self, reverse=True):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=reverse)

    def leading(self):
        """(multi-index, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def support_vars(self):
        """Indices of variables that actually occur."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- arithmetic

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            new = out.get(m, Fraction(0)) + c
            if new:
                out[m] = new
            elif m in out:
                del out[m]
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return Poly(self.vars, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                new = out.get(m, Fraction(0)) + c1 * c2
                if new:
                    out[m] = new
                elif m in out:
                    del out[m]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Poly.one(self.vars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def partial(self, i):
        """Partial derivative with respect to variable index i."""
        if not 0 <= i < len(self.vars):
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[dm] = out.get(dm, Fraction(0)) + c * m[i]
        return Poly(self.vars, out)

    def extended(self, newvars):
        """The same polynomial viewed over a longer variable list; the old
        list must be a prefix of the new one."""
        newvars = tuple(newvars)
        if newvars[: len(self.vars)] != self.vars:
            raise ValueError("old variable list must be a prefix of the new one")
        pad = (0,) * (len(newvars) - len(self.vars))
        return Poly(newvars, {m + pad: c for m, c in self.terms.items()})

    # -- equality / display

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _mono_str(self, m):
        parts = []
        for name, e in zip(self.vars, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = self._mono_str(m)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def poly_div_exact(num, den):
    """Exact division num / den by greedy leading-term elimination.

    Returns the quotient Poly, or None when den does not divide num in the
    free polynomial ring.  Correct for exact divisors because graded-lex
    leading terms are multiplicative.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quot = {}
    rem = dict(num.terms)
    dm, dc = den.leading()
    while rem:
        m = max(rem, key=grlex_key)
        c = rem[m]
        if not all(a >= b for a, b in zip(m, dm)):
            return None
        qm = tuple(a - b for a, b in zip(m, dm))
        qc = c / dc
        quot[qm] = quot.get(qm, Fraction(0)) + qc
        for m2, c2 in den.terms.items():
            mm = tuple(a + b for a, b in zip(qm, m2))
            new = rem.get(mm, Fraction(0)) - qc * c2
            if new:
                rem[mm] = new
            elif mm in rem:
                del rem[mm]
    return Poly(num.vars, quot)
