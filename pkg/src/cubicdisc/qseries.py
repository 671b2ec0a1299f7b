"""Exact truncated series in rational powers of q.

A :class:`QSeries` stores finitely many terms ``c * q^e`` with exact rational
exponents and coefficients, together with a precision bound ``prec``: every
exponent below ``prec`` is guaranteed correct, and no term at or above
``prec`` is stored.  ``prec`` may be ``math.inf`` for series known exactly
(constants, monomials).  Arithmetic never claims more precision than the
inputs justify: multiplying series with leading exponents l1, l2 and
precisions p1, p2 yields precision min(l1 + p2, l2 + p1).

The q-convention throughout is q = exp(2*pi*i*tau).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

INF = math.inf

Exponent = Union[Fraction, int]


class PrecisionError(Exception):
    """A coefficient or construction was requested beyond the trusted range."""


class InversionError(ArithmeticError):
    """Attempt to invert a series with no known leading term."""


def _to_prec(p):
    if p == INF:
        return INF
    return Fraction(p)


def _padd(a, b):
    """Sum of exponents/precisions where either may be infinite."""
    if a == INF or b == INF:
        return INF
    return a + b


@dataclass(frozen=True)
class QSeries:
    """Immutable truncated q-series with exact rational data.

    Use :func:`make_series`, :func:`monomial`, :func:`one`, or :func:`zero`
    rather than the raw constructor; they normalize terms and precision.
    """

    terms: tuple[tuple[Fraction, Fraction], ...]
    prec: object  # Fraction, or math.inf for exactly-known series

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_dict(data: Mapping, prec) -> "QSeries":
        prec = _to_prec(prec)
        items = []
        for e, c in data.items():
            e = Fraction(e)
            c = Fraction(c)
            if c != 0 and e < prec:
                items.append((e, c))
        items.sort()
        return QSeries(tuple(items), prec)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        """True when no term is stored (zero to the available precision)."""
        return not self.terms

    def leading_exponent(self):
        """Smallest stored exponent, or None for a (truncated) zero series."""
        return self.terms[0][0] if self.terms else None

    def _lead_for_prec(self):
        # a zero series contributes at exponent >= prec, by definition of prec
        return self.terms[0][0] if self.terms else self.prec

    def coefficient(self, e) -> Fraction:
        """Coefficient of q^e; raises PrecisionError for e >= prec.

        The error keeps "known to vanish" distinct from "beyond the trusted
        range".
        """
        e = Fraction(e)
        if e >= self.prec:
            raise PrecisionError(f"exponent {e} is not below the precision bound {self.prec}")
        for ee, cc in self.terms:
            if ee == e:
                return cc
            if ee > e:
                break
        return Fraction(0)

    def truncate(self, prec) -> "QSeries":
        """Restrict to exponents below ``prec`` (must not exceed self.prec)."""
        prec = _to_prec(prec)
        if prec > self.prec:
            raise PrecisionError("cannot extend precision by truncation")
        return QSeries(tuple(t for t in self.terms if t[0] < prec), prec)

    def matches(self, other: "QSeries") -> bool:
        """Equality of the two series on their common trusted range."""
        p = min(self.prec, other.prec)
        return self.truncate(p).terms == other.truncate(p).terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = monomial(0, other)
        prec = min(self.prec, other.prec)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return QSeries.from_dict(acc, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(tuple((e, -c) for e, c in self.terms), self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        prec = min(_padd(self._lead_for_prec(), other.prec),
                   _padd(other._lead_for_prec(), self.prec))
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if e < prec:
                    acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return QSeries.from_dict(acc, prec)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        if c == 0:
            return QSeries((), self.prec)
        return QSeries(tuple((e, c * cc) for e, cc in self.terms), self.prec)

    def shift(self, e) -> "QSeries":
        """Multiply by the exact monomial q^e."""
        e = Fraction(e)
        return QSeries(tuple((ee + e, cc) for ee, cc in self.terms),
                       _padd(self.prec, e))

    def inverse(self) -> "QSeries":
        """Multiplicative inverse via the geometric series.

        For a series c*q^l*(1 + u) with precision p the inverse is trusted
        below p - 2*l.
        """
        if not self.terms:
            raise InversionError("cannot invert a series with no known terms")
        lead_e, lead_c = self.terms[0]
        rel = _padd(self.prec, -lead_e)
        if rel == INF and len(self.terms) > 1:
            raise PrecisionError(
                "inverse of an exact multi-term series has infinitely many "
                "terms; truncate to a finite precision first")
        # u = self / (lead term) - 1, supported on positive exponents
        u_terms = tuple((e - lead_e, c / lead_c) for e, c in self.terms[1:])
        u = QSeries(u_terms, rel)
        acc = one()
        term = one()
        while True:
            term = term * (-u)
            if all(e >= rel for e, _ in term.terms):
                break
            acc = acc + term
        acc = acc.truncate(min(rel, acc.prec))
        return acc.scale(Fraction(1) / lead_c).shift(-lead_e)

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k == 0:
            return one()
        base = self.inverse() if k < 0 else self
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- residue restriction ------------------------------------------------

    def restrict_residue(self, r) -> "QSeries":
        """Keep exactly the terms whose exponent is congruent to r mod 1."""
        r = Fraction(r) % 1
        return QSeries(tuple((e, c) for e, c in self.terms if e % 1 == r),
                       self.prec)

    def support_residues(self) -> set:
        return {e % 1 for e, _ in self.terms}

    # -- numerics ------------------------------------------------------------

    def eval_complex(self, tau: complex) -> tuple[complex, float]:
        """Evaluate at a point in the upper half plane.

        Returns ``(value, tail_bound)`` where value sums the stored terms as
        c * exp(2*pi*i*e*tau) and tail_bound is the heuristic
        |c_last| * |q|^prec / (1 - |q|) for the dropped tail (0 for exact
        series).  For a stored zero series the bound uses |c_last| = 1.
        """
        tau = complex(tau)
        if tau.imag <= 0:
            raise ValueError("tau must have positive imaginary part")
        value = 0j
        for e, c in self.terms:
            value += float(c) * cmath.exp(2j * cmath.pi * float(e) * tau)
        if self.prec == INF:
            return value, 0.0
        q_abs = math.exp(-2.0 * math.pi * tau.imag)
        c_last = abs(float(self.terms[-1][1])) if self.terms else 1.0
        tail = c_last * q_abs ** float(self.prec) / (1.0 - q_abs)
        return value, tail

    # -- presentation ---------------------------------------------------------

    def serialize(self) -> dict:
        """JSON-friendly form: term quadruples plus the precision bound."""
        return {
            "terms": [[e.numerator, e.denominator, c.numerator, c.denominator]
                      for e, c in self.terms],
            "prec": None if self.prec == INF
                    else [self.prec.numerator, self.prec.denominator],
        }

    def __str__(self):
        def expo(e: Fraction) -> str:
            if e == 0:
                return ""
            if e == 1:
                return "q"
            if e.denominator == 1:
                return f"q^{e}"
            return f"q^({e})"

        parts = []
        for e, c in self.terms:
            mag = abs(c)
            body = expo(e)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}{body}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + body)
        if not parts:
            parts = ["0"]
        elif parts[0].startswith("- "):
            parts[0] = "-" + parts[0][2:]
        s = " ".join(parts)
        if self.prec != INF:
            p = self.prec
            s += f" + O(q^({p}))" if p.denominator != 1 else f" + O(q^{p})"
        return s


# ---------------------------------------------------------------------------
# constructors and module-level operations
# ---------------------------------------------------------------------------

def make_series(data: Mapping, prec) -> QSeries:
    return QSeries.from_dict(data, prec)


def monomial(e, c=1, prec=INF) -> QSeries:
    return QSeries.from_dict({Fraction(e): Fraction(c)}, prec)


def one() -> QSeries:
    return monomial(0, 1)


def zero(prec=INF) -> QSeries:
    return QSeries((), _to_prec(prec))


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def scale(a: QSeries, c) -> QSeries:
    return a.scale(c)


def power(a: QSeries, k: int) -> QSeries:
    return a ** k


def coefficient(s: QSeries, e) -> Fraction:
    return s.coefficient(e)


def restrict_residue(s: QSeries, r) -> QSeries:
    return s.restrict_residue(r)


def eval_complex(s: QSeries, tau: complex) -> tuple[complex, float]:
    return s.eval_complex(tau)


# ---------------------------------------------------------------------------
# Dedekind eta
# ---------------------------------------------------------------------------

def eta_series(a, prec) -> QSeries:
    """Expansion of eta(a*tau) = q^(a/24) * prod_{n>=1} (1 - q^(a*n)).

    The product is expanded through Euler's pentagonal number theorem, so the
    series is produced directly in its sparse form.  Requires a > 0 and
    prec > a/24 so the leading term is inside the trusted range.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("eta scale must be positive")
    prec = _to_prec(prec)
    if prec == INF:
        raise PrecisionError("eta expansion needs a finite precision bound")
    lead = a / 24
    if prec <= lead:
        raise PrecisionError(
            f"precision {prec} does not reach the leading exponent {lead}")
    terms = {}
    k = 0
    while True:
        hit = False
        for kk in ((0,) if k == 0 else (k, -k)):
            e = lead + a * Fraction(kk * (3 * kk - 1), 2)
            if e < prec:
                terms[e] = Fraction(-1 if kk % 2 else 1)
                hit = True
        if k and not hit:
            break
        k += 1
    return QSeries.from_dict(terms, prec)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A finite product prod_i eta(a_i * tau)^(k_i).

    ``factors`` is a sequence of (scale, power) pairs with positive rational
    scales and nonzero integer powers.
    """

    factors: tuple[tuple[Fraction, int], ...]

    def __init__(self, factors: Iterable):
        norm = []
        for a, k in factors:
            a = Fraction(a)
            k = int(k)
            if a <= 0:
                raise ValueError("eta scales must be positive")
            if k == 0:
                raise ValueError("eta powers must be nonzero")
            norm.append((a, k))
        object.__setattr__(self, "factors", tuple(norm))

    @property
    def leading_exponent(self) -> Fraction:
        return sum((k * a / 24 for a, k in self.factors), Fraction(0))


def eta_quotient(spec: EtaQuotientSpec, prec) -> QSeries:
    """Exact expansion of an eta quotient, trusted below ``prec``.

    Each factor is expanded with enough relative precision that the final
    product carries precision exactly ``prec``.
    """
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(spec)
    prec = _to_prec(prec)
    lead = spec.leading_exponent
    if prec <= lead:
        raise PrecisionError(
            f"precision {prec} does not reach the leading exponent {lead}")
    rel = prec - lead
    result = one()
    for a, k in spec.factors:
        factor = eta_series(a, a / 24 + rel) ** k
        result = result * factor
    return result
