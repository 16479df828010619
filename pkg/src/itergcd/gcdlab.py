"""Grids of gcd(f^(m) - c, g^(n) - c), linear closed forms, bundled checks.

This is the experiment layer on top of the exact kernel: compute a finite
grid of iterate gcds, factor every cell, watch whether the set of factors
stops growing, and reproduce the worked linear-map families whose common
roots have closed forms.  Finiteness of the factor universe is observed on
the grid, never asserted beyond it.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError
from .factoring import FactorList, factor_irreducible
from .multiplicity import mult_of_factor
from .numfield import NumberFieldElem, nf_eval
from .polys import Poly, iterate, poly_gcd, render_poly

NO_SOLUTION = "no solution"


def _iterate_ne_c(q: Poly, k: int, c: Poly) -> Poly:
    qk = iterate(q, k)
    if qk == c:
        raise DegenerateInputError(
            "iterate number %d equals the target polynomial" % k)
    return qk


def gcd_iterates(f: Poly, g: Poly, c: Poly, m: int, n: int,
                 seed: int = 0) -> Poly:
    """Monic gcd(f^(m) - c, g^(n) - c); degenerate when an iterate equals c."""
    if m < 1 or n < 1:
        raise DegenerateInputError("iterate counts must be >= 1")
    return poly_gcd(_iterate_ne_c(f, m, c) - c, _iterate_ne_c(g, n, c) - c,
                    seed=seed)


@dataclass(frozen=True)
class GcdGridReport:
    f: Poly
    g: Poly
    c: Poly
    grid_n: int
    diagonal_only: bool
    cells: dict            # (m, n) -> FactorList of the monic cell gcd
    degenerate: dict       # (m, n) -> reason string, for skipped cells
    factor_universe: dict  # irreducible monic Poly -> max multiplicity seen
    stabilized: bool
    timings: dict          # (m, n) -> milliseconds

    def cell_gcd(self, m: int, n: int) -> Poly:
        return self.cells[(m, n)].expand()

    def to_json_dict(self) -> dict:
        cells = []
        for (m, n) in sorted(self.cells):
            fl = self.cells[(m, n)]
            cells.append({
                "m": m,
                "n": n,
                "gcd": render_poly(fl.expand()),
                "degree": fl.expand().degree,
                "factors": [[render_poly(p), e] for p, e in fl.factors],
                "millis": self.timings[(m, n)],
            })
        return {
            "f": render_poly(self.f),
            "g": render_poly(self.g),
            "c": render_poly(self.c),
            "grid_n": self.grid_n,
            "diagonal_only": self.diagonal_only,
            "cells": cells,
            "degenerate_cells": [
                {"m": m, "n": n, "reason": why}
                for (m, n), why in sorted(self.degenerate.items())],
            "factor_universe": [
                [render_poly(p), e]
                for p, e in sorted(self.factor_universe.items(),
                                   key=lambda t: (t[0].degree, t[0].coeffs))],
            "stabilized": self.stabilized,
        }


def _grid_pairs(grid_n: int, diagonal_only: bool):
    if diagonal_only:
        return [(k, k) for k in range(1, grid_n + 1)]
    return [(m, n) for m in range(1, grid_n + 1) for n in range(1, grid_n + 1)]


def gcd_grid(f: Poly, g: Poly, c: Poly, grid_n: int,
             diagonal_only: bool = False, threads: int = 1,
             seed: int = 0) -> GcdGridReport:
    """Factor every admissible grid cell and aggregate the factor universe.

    Cells where an iterate equals c are recorded in `degenerate` and skipped;
    no cell error aborts the rest.  `stabilized` means the outer shell
    (any cell with m or n equal to grid_n) introduced no factor unseen in
    the interior, which is the observable shadow of the finiteness claims.
    """
    if grid_n < 1:
        raise DegenerateInputError("grid size must be >= 1")
    pairs = _grid_pairs(grid_n, diagonal_only)
    f_its = {m: iterate(f, m) for m in sorted({m for m, _ in pairs})}
    g_its = {n: iterate(g, n) for n in sorted({n for _, n in pairs})}

    def one_cell(pair):
        m, n = pair
        t0 = time.perf_counter()
        if f_its[m] == c:
            return pair, None, "f iterate %d equals c" % m, 0.0
        if g_its[n] == c:
            return pair, None, "g iterate %d equals c" % n, 0.0
        gcd_mn = poly_gcd(f_its[m] - c, g_its[n] - c, seed=seed)
        fl = (FactorList(Fraction(1), ()) if gcd_mn.degree < 1
              else factor_irreducible(gcd_mn, seed=seed))
        return pair, fl, None, (time.perf_counter() - t0) * 1000.0

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_cell, pairs))
    else:
        results = [one_cell(p) for p in pairs]

    cells: dict = {}
    degenerate: dict = {}
    timings: dict = {}
    universe: dict = {}
    shell_new = False
    for pair, fl, why, millis in results:
        if why is not None:
            degenerate[pair] = why
            continue
        cells[pair] = fl
        timings[pair] = millis
    for pair in sorted(cells, key=lambda t: (max(t), t)):
        on_shell = max(pair) == grid_n
        for p, e in cells[pair].factors:
            if p not in universe and on_shell:
                shell_new = True
            if universe.get(p, 0) < e:
                universe[p] = e
    return GcdGridReport(f, g, c, grid_n, diagonal_only, cells, degenerate,
                         universe, not shell_new, timings)


# ---------------------------------------------------------------------------
# linear maps: closed-form common roots
# ---------------------------------------------------------------------------

def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, NumberFieldElem))


def _as_scalar(v):
    return Fraction(v) if isinstance(v, int) else v


def linear_common_root(alpha, beta, gamma, n: int, c: Poly | None = None):
    """The unique lambda with alpha^n * lambda = beta^n * lambda + gamma * S_n.

    This solves f^(n)(lambda) = g^(n)(lambda) for f = alpha*x and
    g = beta*x + gamma, where S_n is the geometric sum 1 + beta + ... +
    beta^(n-1).  When alpha^n = beta^n the two iterates are parallel and
    there is no (or no unique) solution; that is a degenerate input.  When
    c is supplied the common value is also required to equal c(lambda),
    returning NO_SOLUTION otherwise.
    """
    if not (_is_scalar(alpha) and _is_scalar(beta) and _is_scalar(gamma)):
        raise DegenerateInputError("linear coefficients must be rational "
                                   "or number-field elements")
    alpha, beta, gamma = map(_as_scalar, (alpha, beta, gamma))
    if n < 1:
        raise DegenerateInputError("need n >= 1")
    if alpha == 0:
        raise DegenerateInputError("alpha must be nonzero")
    an = alpha ** n
    bn = beta ** n
    if an == bn:
        raise DegenerateInputError(
            "alpha^n equals beta^n; the iterates never separate")
    geo = Fraction(n) if beta == 1 else (bn - 1) / (beta - 1)
    lam = gamma * geo / (an - bn)
    if c is not None:
        common = an * lam
        c_at = (nf_eval(c, lam) if isinstance(lam, NumberFieldElem)
                else c.evaluate(lam))
        if common != c_at:
            return NO_SOLUTION
    return lam


def linear_normal_form(f: Poly, g: Poly):
    """Conjugate a pair of degree-1 maps to (alpha*x, beta*x + gamma).

    Returns (alpha, beta, gamma, shift, swapped): the conjugation is by
    x -> x + shift, so a common root lam in normal coordinates corresponds
    to lam + shift for the original pair; swapped records whether the roles
    of f and g were exchanged to put the map with a fixed point first.
    Two translations commute and are rejected.
    """
    if f.degree != 1 or g.degree != 1:
        raise DegenerateInputError("both maps must have degree 1")
    a1, a0 = f[1], f[0]
    b1, b0 = g[1], g[0]
    swapped = False
    if a1 == 1:
        if b1 == 1:
            raise DegenerateInputError(
                "two translations commute; the pair is compositionally "
                "dependent and has no normal form")
        a1, a0, b1, b0 = b1, b0, a1, a0
        swapped = True
    shift = a0 / (1 - a1)  # the fixed point of the first map
    gamma = b1 * shift + b0 - shift
    return a1, b1, gamma, shift, swapped


# ---------------------------------------------------------------------------
# bundled worked families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteRow:
    family: str
    n: int
    claim: str
    ok: bool


@dataclass(frozen=True)
class SuiteReport:
    rows: tuple

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "rows": [{"family": r.family, "n": r.n, "claim": r.claim,
                      "ok": r.ok} for r in self.rows],
            "all_pass": self.all_pass,
        }


def reference_suite() -> SuiteReport:
    """Re-run the three worked families with exact arithmetic.

    Family 1: f = 2x, g = x + 1, c = x^2.  f^(n) - c = -x(x - 2^n), and the
    matching g-iterate count m = 2^n(2^n - 1) makes (x - 2^n) a common root.

    Family 2: f = x/2, g = 2x + 1, c = -(x + 1).  The closed-form common
    root is -2^n/(2^n + 1) and satisfies all three equalities.

    Family 3: f = x^3 + x^2, g = x^3 + 5x^2.  The gcd of the n-th iterates
    is divisible by x to the order 2^n exactly, an unbounded-multiplicity
    family (both maps have 0 in a ramified fixed point).
    """
    x = Poly.x()
    rows = []

    f1, g1, c1 = 2 * x, x + 1, x ** 2
    for n in range(1, 7):
        root = Poly.const(2 ** n)
        m = 2 ** n * (2 ** n - 1)
        lhs = iterate(f1, n) - c1
        rhs = iterate(g1, m) - c1
        ok = (lhs % (x - root)).is_zero() and (rhs % (x - root)).is_zero()
        rows.append(SuiteRow("affine-pair", n,
                             "(x - 2^%d) divides both f^(%d)-c and g^(%d)-c"
                             % (n, n, m), ok))

    f2 = Poly([0, Fraction(1, 2)])
    g2 = 2 * x + 1
    c2 = -(x + 1)
    for n in range(1, 21):
        lam = linear_common_root(Fraction(1, 2), 2, 1, n, c=c2)
        expected = Fraction(-(2 ** n), 2 ** n + 1)
        ok = (lam == expected
              and iterate(f2, n).evaluate(lam) == c2.evaluate(lam)
              and iterate(g2, n).evaluate(lam) == c2.evaluate(lam))
        rows.append(SuiteRow("halving-doubling pair", n,
                             "common root is -2^%d/(2^%d + 1)" % (n, n), ok))

    f3 = x ** 3 + x ** 2
    g3 = x ** 3 + 5 * x ** 2
    for n in range(1, 5):
        gc = gcd_iterates(f3, g3, Poly.zero(), n, n)
        ok = mult_of_factor(gc, x) == 2 ** n
        rows.append(SuiteRow("shared squared seed", n,
                             "x divides gcd of the n-th iterates exactly "
                             "2^%d times" % n, ok))
    return SuiteReport(tuple(rows))
