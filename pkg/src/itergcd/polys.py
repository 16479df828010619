"""Dense univariate polynomials over Q.

Poly is immutable, stores little-endian Fraction coefficients with trailing
zeros stripped, and routes every heavy product through the integer kernels in
``modular`` (clear denominators, convolve ints, divide back).  The gcd is the
modular CRT + rational-reconstruction route; ``poly_gcd_subresultant`` is the
independent slow route and the two are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from . import modular
from .errors import LIMITS, check_bits, check_degree

Rational = Fraction
Scalar = Union[int, Fraction]


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, a: Scalar) -> "Poly":
        return cls([Fraction(a)])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, a: Scalar = 1) -> "Poly":
        return cls([0] * k + [Fraction(a)])

    # -- basics ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def leading(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return self._c[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self._c))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        return "Poly(%r)" % render_poly(self)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._c), len(other._c))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-a for a in self._c])

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._c), len(other._c))
        return Poly([self[i] - other[i] for i in range(n)])

    def __rsub__(self, other) -> "Poly":
        return -(self - other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Poly([a * q for a in self._c])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly.zero()
        an, ad = self.int_form()
        bn, bd = other.int_form()
        prod = modular.zx_mul(an, bn)
        den = ad * bd
        return Poly.from_int_list(prod, den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        d = other.degree
        lc = other.leading()
        if len(rem) <= d:
            return Poly.zero(), self
        q = [Fraction(0)] * (len(rem) - d)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + d]
            if c == 0:
                continue
            t = c / lc
            q[k] = t
            for j in range(d + 1):
                rem[k + j] -= t * other._c[j]
        return Poly(q), Poly(rem[:d])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- structure ----------------------------------------------------------

    def int_form(self) -> tuple[list[int], int]:
        """(integer coefficient list, positive denominator) with f = list/den."""
        den = reduce(modular.lcm_int, (a.denominator for a in self._c), 1)
        return [int(a * den) for a in self._c], den

    @classmethod
    def from_int_list(cls, coeffs: list[int], den: int = 1) -> "Poly":
        return cls([Fraction(c, den) for c in coeffs])

    def primitive(self) -> tuple[Fraction, "Poly"]:
        """f = content * prim with prim integer-primitive, lc(prim) > 0."""
        if self.is_zero():
            return Fraction(0), Poly.zero()
        nums, den = self.int_form()
        cont, prim = modular.zx_primitive(nums)
        return Fraction(cont, den), Poly(prim)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.leading()
        if lc == 1:
            return self
        return Poly([a / lc for a in self._c])

    def derivative(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self._c)][1:])

    def evaluate(self, x):
        """Horner evaluation; x may be any ring element accepting Fraction ops."""
        acc = x * 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner) by Horner."""
        acc = Poly.zero()
        for c in reversed(self._c):
            acc = acc * inner + Poly.const(c)
        return acc

    def max_coeff_bits(self) -> int:
        return max((a.numerator.bit_length() + a.denominator.bit_length()
                    for a in self._c), default=0)

    def shift(self, a: Scalar) -> "Poly":
        """Taylor shift: returns f(x + a) by repeated synthetic division."""
        a = Fraction(a)
        c = list(self._c)
        out = []
        while c:
            for k in range(len(c) - 2, -1, -1):
                c[k] = c[k] + a * c[k + 1]
            out.append(c[0])   # remainder of division by (x - a)
            c = c[1:]          # quotient continues
        return Poly(out)


def _coerce(v) -> "Poly":
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly.const(v)
    return NotImplemented


# ---------------------------------------------------------------------------
# composition powers
# ---------------------------------------------------------------------------

def iterate(f: Poly, n: int) -> Poly:
    """n-th compositional power of f (n >= 0; f^0 is x).

    Square-and-compose, so linear polynomials support very large n.  Degree
    and coefficient-size caps are enforced along the way.
    """
    if n < 0:
        raise ValueError("compositional power needs n >= 0")
    if n == 0:
        return Poly.x()
    d = f.degree
    if d >= 2:
        # pre-check the final degree without computing huge powers
        if n * math.log2(d) > math.log2(LIMITS.max_degree) + 1e-9:
            check_degree(LIMITS.max_degree + 1)  # raises
        check_degree(d ** n)
    out = None
    base = f
    e = n
    while e:
        if e & 1:
            out = base if out is None else _compose_checked(base, out)
        e >>= 1
        if e:
            base = _compose_checked(base, base)
    return out


def _compose_checked(outer: Poly, inner: Poly) -> Poly:
    do, di = outer.degree, inner.degree
    if do >= 1 and di >= 1:
        check_degree(do * di)
    r = outer.compose(inner)
    check_bits(r.max_coeff_bits())
    return r


# ---------------------------------------------------------------------------
# gcd and resultant frontends
# ---------------------------------------------------------------------------

def poly_gcd(f: Poly, g: Poly, seed: int = 0) -> Poly:
    """Monic gcd over Q (modular route)."""
    if f.is_zero() and g.is_zero():
        return Poly.zero()
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    fn, _ = f.int_form()
    gn, _ = g.int_form()
    h = modular.zx_gcd_modular(fn, gn, seed=seed)
    return Poly(h).monic()


def poly_gcd_subresultant(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q via the subresultant PRS (cross-check route)."""
    if f.is_zero() and g.is_zero():
        return Poly.zero()
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    fn, _ = f.int_form()
    gn, _ = g.int_form()
    h = modular.zx_gcd_subresultant(fn, gn)
    return Poly(h).monic()


def resultant(f: Poly, g: Poly, seed: int = 0) -> Fraction:
    """Res(f, g) over Q, computed modularly on cleared denominators."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    fn, fd = f.int_form()
    gn, gd = g.int_form()
    r = modular.zx_resultant(fn, gn, seed=seed)
    return Fraction(r, fd ** g.degree * gd ** f.degree)


# ---------------------------------------------------------------------------
# canonical rendering (inverse of the CLI parser)
# ---------------------------------------------------------------------------

def _fmt_coeff(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return "%d/%d" % (a.numerator, a.denominator)


def render_poly(f: Poly, var: str = "x") -> str:
    """Canonical text form; parse(render(f)) == f."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        a = f[k]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            xk = var if k == 1 else "%s^%d" % (var, k)
            body = xk if mag == 1 else "%s*%s" % (_fmt_coeff(mag), xk)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out
