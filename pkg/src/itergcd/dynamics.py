"""Orbits, cycle classification, and the composition-word semigroup.

Orbits are computed exactly over a number field; periodicity is detected by
hashing exact values.  Orbits that neither repeat nor stay small terminate
with an explicit escape record instead of an error, because over a number
field an orbit that leaves every bounded set never returns (heights grow
under iteration), so a blown size cap is decisive for non-periodicity while
a blown step cap is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError, LIMITS
from .polys import Poly, iterate, render_poly
from .numfield import NumberFieldElem, nf_eval

IN_RAMIFIED = "in-ramified-cycle"
IN_UNRAMIFIED = "in-unramified-cycle"
NOT_PERIODIC = "not-periodic"
UNDECIDED_CAP = "undecided(cap)"

ESCAPE_SIZE = "size cap"
ESCAPE_STEPS = "step cap"


@dataclass(frozen=True)
class OrbitRecord:
    """Exact forward orbit of a point, ending at the first repeat or escape.

    When periodic, points[preperiod + period] == points[preperiod] and the
    period is minimal (first repeat of a deterministic orbit).  When escaped,
    preperiod and period are None and escape_reason says which cap fired.
    """

    start: NumberFieldElem
    points: tuple
    preperiod: int | None
    period: int | None
    escape_reason: str | None = None

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def cycle(self) -> tuple:
        if not self.is_periodic:
            raise DegenerateInputError("orbit escaped; no cycle")
        return self.points[self.preperiod:self.preperiod + self.period]


def orbit(q: Poly, x0: NumberFieldElem,
          step_cap: int | None = None, size_cap: int | None = None) -> OrbitRecord:
    """Iterate q from x0 until a repeated value, a step cap, or a size cap."""
    if q.degree < 1:
        raise DegenerateInputError("orbit map must be nonconstant")
    if step_cap is None:
        step_cap = LIMITS.orbit_steps
    if size_cap is None:
        size_cap = LIMITS.orbit_elem_bits
    seen = {x0: 0}
    points = [x0]
    cur = x0
    for step in range(1, step_cap + 1):
        cur = nf_eval(q, cur)
        points.append(cur)
        if cur.bit_size() > size_cap:
            return OrbitRecord(x0, tuple(points), None, None, ESCAPE_SIZE)
        if cur in seen:
            first = seen[cur]
            return OrbitRecord(x0, tuple(points), first, step - first)
        seen[cur] = step
    return OrbitRecord(x0, tuple(points), None, None, ESCAPE_STEPS)


def ramified_cycle_check(q: Poly, c: NumberFieldElem) -> str:
    """Is c a periodic point of q lying in a ramified cycle?

    Ramified means the cycle contains a critical point, equivalently
    (q^(period))'(c) == 0, which the chain rule turns into a product of q'
    along the cycle.  Escape by size cap is reported as not-periodic (the
    orbit left every bounded set); escape by step cap alone is undecided.
    """
    if q.degree < 2:
        raise DegenerateInputError("cycle classification needs degree >= 2")
    rec = orbit(q, c)
    if not rec.is_periodic:
        return NOT_PERIODIC if rec.escape_reason == ESCAPE_SIZE else UNDECIDED_CAP
    if rec.preperiod != 0:
        return NOT_PERIODIC
    qd = q.derivative()
    deriv = c.field.one()
    for pt in rec.cycle():
        deriv = deriv * nf_eval(qd, pt)
    return IN_RAMIFIED if deriv.is_zero() else IN_UNRAMIFIED


def compositional_power_check(c: Poly, f: Poly):
    """The k >= 1 with c = f composed with itself k times, or "none"."""
    if f.degree < 1:
        raise DegenerateInputError("base map must be nonconstant")
    if c.degree < 1:
        return "none"
    if f.degree == 1:
        # degrees carry no information; bounded direct search
        acc = f
        for k in range(1, LIMITS.power_search + 1):
            if acc == c:
                return k
            acc = acc.compose(f)
        return "none"
    df, dc = f.degree, c.degree
    k, pw = 0, 1
    while pw < dc:
        pw *= df
        k += 1
    if pw != dc or k == 0:
        return "none"
    return k if iterate(f, k) == c else "none"


# ---------------------------------------------------------------------------
# words in the two-generator composition semigroup
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """Canonical word: alternating runs (generator, exponent), exponents >= 1.

    Generators are the letters "F" and "G"; the word (F,2),(G,1) denotes the
    composition f o f o g (leftmost applied last, as usual for o).
    """

    runs: tuple

    def __post_init__(self):
        for gen, exp in self.runs:
            if gen not in ("F", "G") or exp < 1:
                raise DegenerateInputError("bad word run %r" % ((gen, exp),))
        for (g1, _), (g2, _) in zip(self.runs, self.runs[1:]):
            if g1 == g2:
                raise DegenerateInputError("word runs must alternate generators")

    @classmethod
    def from_letters(cls, letters: str) -> "Word":
        runs: list[tuple[str, int]] = []
        for ch in letters:
            if ch not in ("F", "G"):
                raise DegenerateInputError("word letters must be F or G")
            if runs and runs[-1][0] == ch:
                runs[-1] = (ch, runs[-1][1] + 1)
            else:
                runs.append((ch, 1))
        return cls(tuple(runs))

    @property
    def total_exponent(self) -> int:
        return sum(e for _, e in self.runs)

    def letters(self) -> str:
        return "".join(g * e for g, e in self.runs)

    def render(self) -> str:
        return "".join(g if e == 1 else "%s^%d" % (g, e) for g, e in self.runs)

    def __repr__(self) -> str:
        return "Word(%s)" % self.render()


def word_compose(w: Word, f: Poly, g: Poly) -> Poly:
    """Evaluate the word in the composition semigroup (empty word = x)."""
    acc = Poly.x()
    for gen, exp in w.runs:
        acc = acc.compose(iterate(f if gen == "F" else g, exp))
    return acc


def independence_probe(f: Poly, g: Poly, max_len: int):
    """Search for two distinct words of total exponent <= max_len that
    evaluate to the same polynomial.

    Returns ("dependent", (w1, w2)) on the first collision in graded
    lexicographic order (F before G), or ("no-collision-up-to", max_len).
    Only dependence is ever certified; absence of a collision up to a bound
    proves nothing beyond the bound.
    """
    if f.degree < 1 or g.degree < 1:
        raise DegenerateInputError("independence probe needs nonconstant maps")
    seen: dict[Poly, Word] = {}
    for length in range(1, max_len + 1):
        for mask in range(1 << length):
            letters = "".join(
                "G" if (mask >> (length - 1 - i)) & 1 else "F"
                for i in range(length))
            w = Word.from_letters(letters)
            p = word_compose(w, f, g)
            other = seen.get(p)
            if other is not None:
                return ("dependent", (other, w))
            seen[p] = w
    return ("no-collision-up-to", max_len)


# ---------------------------------------------------------------------------
# standard families
# ---------------------------------------------------------------------------

def chebyshev(d: int) -> Poly:
    """Monic normalization: c_d(y + 1/y) = y^d + 1/y^d; c_2 = x^2 - 2."""
    if d < 1:
        raise DegenerateInputError("chebyshev degree must be >= 1")
    prev = Poly.const(2)
    cur = Poly.x()
    for _ in range(d - 1):
        prev, cur = cur, Poly.x() * cur - prev
    return cur


def power_map(d: int, gamma=1) -> Poly:
    if d < 1:
        raise DegenerateInputError("power map degree must be >= 1")
    return Poly.monomial(d, Fraction(gamma))


def affine_map(alpha, beta) -> Poly:
    if Fraction(alpha) == 0:
        raise DegenerateInputError("affine map needs alpha != 0")
    return Poly([Fraction(beta), Fraction(alpha)])
