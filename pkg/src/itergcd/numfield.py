"""Number fields Q[t]/(p), their elements, and truncated power series (jets).

A NumberField is the quotient of Q[t] by a monic irreducible modulus; its
elements are residue-class representatives of degree below deg p.  All
arithmetic is exact.  Complex embeddings are the only floating-point surface
and are used solely as pre-filters (root-of-unity screening) and for Mahler
measures; every certificate-grade decision goes through exact zero tests.

Jets are truncated Taylor expansions with coefficients in a number field.
They exist so that high compositional powers of a polynomial never have to
be expanded in full: composing two order-K jets costs O(K^2) field
multiplications regardless of the degree of the underlying maps.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    DegenerateInputError,
    EmbeddingError,
    LIMITS,
    ResourceLimitError,
)
from .factoring import is_irreducible
from .polys import Poly, render_poly

NOT_A_ROOT_OF_UNITY = "not a root of unity"
UNDECIDED = "undecided"


class NumberField:
    """Q[t]/(p) for monic irreducible p; degree-1 moduli give Q itself."""

    __slots__ = ("modulus", "degree", "_roots")

    def __init__(self, modulus: Poly, *, check: bool = True):
        if modulus.degree < 1:
            raise DegenerateInputError("field modulus must be nonconstant")
        modulus = modulus.monic()
        if check and modulus.degree > 1 and not is_irreducible(modulus):
            raise DegenerateInputError(
                "field modulus %s is reducible" % render_poly(modulus, "t"))
        self.modulus = modulus
        self.degree = modulus.degree
        self._roots: list[complex] | None = None

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls(Poly.x(), check=False)

    def element(self, value) -> "NumberFieldElem":
        if isinstance(value, NumberFieldElem):
            if value.field != self:
                raise DegenerateInputError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return NumberFieldElem(self, Poly.const(value))
        if isinstance(value, Poly):
            return NumberFieldElem(self, value)
        raise TypeError("cannot coerce %r into the field" % (value,))

    def generator(self) -> "NumberFieldElem":
        """The residue class of t (for a degree-1 modulus t - a this is a)."""
        return NumberFieldElem(self, Poly.x())

    def zero(self) -> "NumberFieldElem":
        return NumberFieldElem(self, Poly.zero())

    def one(self) -> "NumberFieldElem":
        return NumberFieldElem(self, Poly.const(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self) -> str:
        return "NumberField(%s)" % render_poly(self.modulus, "t")


class NumberFieldElem:
    """Residue class in a NumberField; immutable, hashable, exact."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Poly):
        if rep.degree >= field.degree:
            rep = rep % field.modulus
        self.field = field
        self.rep = rep

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field != self.field:
                raise DegenerateInputError("mixed number fields in arithmetic")
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElem(self.field, Poly.const(other))
        return None

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_rational(self) -> bool:
        return self.rep.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.rep.is_constant():
            raise DegenerateInputError("element is not rational")
        return self.rep[0]

    # -- ring / field operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElem(self.field, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * nf_invert(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * nf_invert(self)

    def __pow__(self, e: int):
        if e < 0:
            return nf_invert(self) ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NumberFieldElem):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        if self.rep.is_constant():
            return hash(self.rep[0])
        return hash(("NumberFieldElem", self.field.modulus, self.rep))

    def __repr__(self) -> str:
        return "NumberFieldElem(%s | t: %s)" % (
            render_poly(self.rep, "t"), render_poly(self.field.modulus, "t"))

    def bit_size(self) -> int:
        """Crude representation size, used by orbit escape caps."""
        return sum(a.numerator.bit_length() + a.denominator.bit_length()
                   for a in self.rep.coeffs)


def nf_invert(a: NumberFieldElem) -> NumberFieldElem:
    """Multiplicative inverse via extended Euclid in Q[t]."""
    if a.is_zero():
        raise ZeroDivisionError("inverting zero field element")
    r0, r1 = a.field.modulus, a.rep
    t0, t1 = Poly.zero(), Poly.const(1)
    while not r1.is_constant():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    # r1 is a nonzero constant: t1/r1 * a == 1 mod p
    inv = t1 * (1 / r1[0])
    return NumberFieldElem(a.field, inv)


def nf_eval(f: Poly, a: NumberFieldElem) -> NumberFieldElem:
    """f(a) inside a's field (Horner)."""
    return a.field.element(f.evaluate(a))


# ---------------------------------------------------------------------------
# minimal and characteristic polynomials
# ---------------------------------------------------------------------------

def min_poly(a: NumberFieldElem) -> Poly:
    """Monic minimal polynomial of a over Q.

    Krylov-style: reduce the powers 1, a, a^2, ... against a growing echelon
    basis of Q^n; the first linear dependency read off the tracked
    combinations is the minimal polynomial (automatically irreducible, being
    minimal for a field element).  char_poly_resultant below is the
    independent slow route.
    """
    n = a.field.degree
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = a.field.one()
    for k in range(n + 1):
        vec = [power.rep[i] for i in range(n)]
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, rvec, rcombo in rows:
            c = vec[pivot]
            if c:
                for i in range(n):
                    vec[i] -= c * rvec[i]
                for i, rc in enumerate(rcombo):
                    combo[i] -= c * rc
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return Poly(combo)      # monic: combo[k] was never touched
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        combo = [c * inv for c in combo]
        rows.append((pivot, vec, combo))
        power = power * a
    raise AssertionError("no dependency among n+1 vectors in dimension n")


def char_poly_resultant(a: NumberFieldElem) -> Poly:
    """Characteristic polynomial det(x - mult_a) as Res_t(p(t), x - rep(t)).

    Evaluation-interpolation: the resultant is evaluated at x = 0..n and the
    degree-n monic result recovered by Newton interpolation.  Slower than the
    Krylov route in min_poly but completely independent of it.
    """
    from .polys import resultant

    n = a.field.degree
    xs = [Fraction(i) for i in range(n + 1)]
    ys = [resultant(a.field.modulus, Poly.const(x0) - a.rep) for x0 in xs]
    # Newton divided differences
    coef = list(ys)
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly.zero()
    for i in range(n, -1, -1):
        out = out * (Poly.x() - xs[i]) + Poly.const(coef[i])
    return out


# ---------------------------------------------------------------------------
# complex embeddings
# ---------------------------------------------------------------------------

def _complex_horner(coeffs: list[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly_complex_roots(f: Poly) -> list[complex]:
    """All complex roots of f to high relative accuracy, conjugates adjacent.

    Durand-Kerner iteration from the standard deterministic start; verified
    by a relative residual bound, so a non-converging (ill-conditioned)
    polynomial raises instead of returning junk.  Coefficients are rescaled
    exactly before the float conversion, so huge rational coefficients are
    fine as long as their ratios fit in doubles.
    """
    n = f.degree
    if n < 1:
        raise DegenerateInputError("root finding needs a nonconstant polynomial")
    big = max(abs(c) for c in f.coeffs)
    cs = [float(c / big) for c in f.coeffs]
    if cs[-1] == 0.0:
        raise EmbeddingError("leading coefficient underflows after rescaling")
    if n == 1:
        return [complex(-cs[0] / cs[1], 0.0)]
    # the Weierstrass correction below assumes a monic polynomial
    lead = cs[-1]
    cs = [c / lead for c in cs]
    if not all(math.isfinite(c) for c in cs):
        raise EmbeddingError("coefficient ratios exceed float range")
    radius = 1.0 + max(abs(c) for c in cs[:-1])
    zs = [radius * (0.4 + 0.9j) ** k / abs((0.4 + 0.9j) ** k) * (0.9 + 0.1 * k / n)
          for k in range(n)]
    for _ in range(1000):
        moved = 0.0
        for k in range(n):
            d = 1.0 + 0j
            for j in range(n):
                if j != k:
                    d *= zs[k] - zs[j]
            if d == 0:
                zs[k] += 1e-6 + 1e-6j
                moved = math.inf
                continue
            step = _complex_horner(cs, zs[k]) / d
            zs[k] -= step
            moved = max(moved, abs(step))
        if moved < 1e-14 * (1.0 + max(abs(z) for z in zs)):
            break
    for z in zs:
        if abs(_complex_horner(cs, z)) > 1e-12 * (1.0 + abs(z)) ** n:
            raise EmbeddingError("root refinement did not reach residual bound")
    # snap near-real roots, then average conjugate pairs so they match exactly
    tol = 1e-10 * (1.0 + radius)
    reals = [complex(z.real, 0.0) for z in zs if abs(z.imag) <= tol]
    upper = sorted((z for z in zs if z.imag > tol), key=lambda z: (z.real, z.imag))
    lower = sorted((z for z in zs if z.imag < -tol), key=lambda z: (z.real, -z.imag))
    if len(upper) != len(lower):
        raise EmbeddingError("conjugate pairing failed")
    roots = sorted(reals, key=lambda z: z.real)
    for zu, zl in zip(upper, lower):
        w = (zu + zl.conjugate()) / 2
        roots.extend([w, w.conjugate()])
    return roots


def embeddings(field: NumberField) -> list[complex]:
    """Complex roots of the field modulus (cached on the field)."""
    if field._roots is None:
        field._roots = poly_complex_roots(field.modulus)
    return list(field._roots)


def embed_elem(a: NumberFieldElem) -> list[complex]:
    """Images of a under every complex embedding of its field."""
    try:
        cs = [float(c) for c in a.rep.coeffs]
    except OverflowError as exc:
        raise EmbeddingError("element coefficients exceed float range") from exc
    return [_complex_horner(cs, z) for z in embeddings(a.field)]


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------

def _euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out -= out // m
    return out


def root_of_unity_order(a: NumberFieldElem, cap: int | None = None):
    """Smallest s with a^s = 1, or a definite/indefinite negative.

    Returns the order as an int, NOT_A_ROOT_OF_UNITY when that can be
    certified, and UNDECIDED when every order up to the cap was excluded but
    larger ones cannot be (a root of unity of order s has minimal polynomial
    of degree phi(s), and phi(s) = d forces s <= 2 d^2, so the answer is
    definite whenever 2 d^2 <= cap).
    """
    if cap is None:
        cap = LIMITS.unity_order
    if a.is_zero():
        raise DegenerateInputError("zero is not a candidate root of unity")
    if a.is_rational():
        q = a.as_fraction()
        if q == 1:
            return 1
        if q == -1:
            return 2
        return NOT_A_ROOT_OF_UNITY
    m = min_poly(a)
    nums, den = m.int_form()
    if den != 1 or abs(nums[0]) != 1:
        return NOT_A_ROOT_OF_UNITY   # cyclotomics are monic integral, const +-1
    for z in embed_elem(a):
        if abs(abs(z) - 1.0) > 1e-9:
            return NOT_A_ROOT_OF_UNITY
    d = m.degree
    exhaustive = 2 * d * d        # phi(s) >= sqrt(s/2), so s <= 2 phi(s)^2
    for s in range(1, min(cap, exhaustive) + 1):
        if _euler_phi(s) == d and a ** s == 1:
            return s
    return NOT_A_ROOT_OF_UNITY if exhaustive <= cap else UNDECIDED


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------

class Jet:
    """Truncated Taylor expansion sum_i coeffs[i] (x - center)^i, exact."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center: NumberFieldElem, coeffs):
        coeffs = tuple(center.field.element(c) for c in coeffs)
        if not coeffs:
            raise DegenerateInputError("jet order must be at least 1")
        self.center = center
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def field(self) -> NumberField:
        return self.center.field

    def _check_peer(self, other: "Jet"):
        if self.center != other.center or self.order != other.order:
            raise DegenerateInputError("jet centers/orders do not match")

    def __add__(self, other: "Jet") -> "Jet":
        self._check_peer(other)
        return Jet(self.center, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Jet") -> "Jet":
        self._check_peer(other)
        return Jet(self.center, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElem)):
            s = self.field.element(other)
            return Jet(self.center, [a * s for a in self.coeffs])
        if not isinstance(other, Jet):
            return NotImplemented
        self._check_peer(other)
        K = self.order
        zero = self.field.zero()
        out = [zero] * K
        bnz = [(j, b) for j, b in enumerate(other.coeffs) if not b.is_zero()]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in bnz:
                if i + j >= K:
                    break
                out[i + j] = out[i + j] + a * b
        return Jet(self.center, out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "Jet":
        if order < 1 or order > self.order:
            raise DegenerateInputError("bad truncation order")
        return Jet(self.center, self.coeffs[:order])

    def first_nonzero(self, start: int = 0):
        """Smallest index >= start with a nonzero coefficient, or None."""
        for i in range(start, self.order):
            if not self.coeffs[i].is_zero():
                return i
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return self.center == other.center and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return "Jet(center=%s, coeffs=%r)" % (
            render_poly(self.center.rep, "t"),
            [render_poly(c.rep, "t") for c in self.coeffs])


def identity_jet(center: NumberFieldElem, order: int) -> Jet:
    coeffs = [center, center.field.one()] + [center.field.zero()] * (order - 2)
    return Jet(center, coeffs[:order])


def jet_at(f: Poly, center: NumberFieldElem, order: int) -> Jet:
    """Taylor coefficients of f about center up to (x-center)^(order-1).

    Repeated synthetic division by (x - center); O(order * deg f) field
    multiplications, no large intermediate expansion.
    """
    if order < 1:
        raise DegenerateInputError("jet order must be at least 1")
    if order > LIMITS.jet_order:
        raise ResourceLimitError("jet order %d exceeds cap %d"
                                 % (order, LIMITS.jet_order))
    F = center.field
    zero = F.zero()
    c = [F.element(ci) for ci in f.coeffs]
    out = []
    for _ in range(order):
        if not c:
            out.append(zero)
            continue
        if len(c) == 1:
            out.append(c[0])
            c = []
            continue
        q = [zero] * (len(c) - 1)
        q[-1] = c[-1]
        for i in range(len(c) - 3, -1, -1):
            q[i] = c[i + 1] + center * q[i + 1]
        out.append(c[0] + center * q[0])
        c = q
    return Jet(center, out)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of (outer-function o inner-function) at inner.center.

    Requires inner.coeffs[0] == outer.center (the inner value must sit where
    the outer expansion lives) and equal orders.
    """
    if inner.coeffs[0] != outer.center:
        raise DegenerateInputError(
            "inner jet value does not match outer jet center")
    if inner.order != outer.order:
        raise DegenerateInputError("jet orders do not match")
    K = outer.order
    F = outer.field
    zero = F.zero()
    # shifted inner: s(x) = inner(x) - outer.center has zero constant term
    s = [zero] + list(inner.coeffs[1:])
    snz = [(j, b) for j, b in enumerate(s) if not b.is_zero()]
    acc = [zero] * K
    acc[0] = outer.coeffs[K - 1]
    for i in range(K - 2, -1, -1):
        nxt = [zero] * K
        for u, a in enumerate(acc):
            if a.is_zero():
                continue
            for j, b in snz:
                if u + j >= K:
                    break
                nxt[u + j] = nxt[u + j] + a * b
        nxt[0] = nxt[0] + outer.coeffs[i]
        acc = nxt
    return Jet(inner.center, acc)
