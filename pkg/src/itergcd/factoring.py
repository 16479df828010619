"""Factorization over Q: squarefree split, then Zassenhaus.

The pipeline is classical: Yun's squarefree decomposition, an Eisenstein
quick test (with small Taylor shifts) that certifies many naturally occurring
irreducibles instantly, then finite-field factorization of each squarefree
part, quadratic Hensel lifting of the modular factors, and subset
recombination pruned by cross-prime degree analysis.  Intended for the low
degrees that gcds of iterates actually produce; callers hit the degree cap
long before recombination can explode.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import modular
from .errors import VerificationError
from .modular import (
    gf_compose_mod, gf_deriv, gf_from_zx, gf_gcd, gf_divmod, gf_monic,
    gf_mul, gf_powmod, gf_sub, gf_xgcd, is_prime,
    zx_deg, zx_divides, zx_mul, zx_primitive, zx_trim,
)
from .polys import Poly, poly_gcd


# ---------------------------------------------------------------------------
# factor list container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorList:
    """f = content * prod(p_i ** e_i) with monic irreducible p_i."""

    content: Fraction
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        out = Poly.const(self.content)
        for p, e in self.factors:
            out = out * p ** e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _factor_sort_key(p: Poly):
    return (p.degree, p.coeffs)


# ---------------------------------------------------------------------------
# Yun squarefree decomposition
# ---------------------------------------------------------------------------

def squarefree_decomposition(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Yun: f = content * prod(a_i ** i) with a_i monic, squarefree, coprime."""
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    lc = f.leading()
    f = f.monic()
    if f.degree < 1:
        return lc, []
    df = f.derivative()
    g = poly_gcd(f, df)
    if g.degree == 0:
        return lc, [(f, 1)]
    out = []
    b = (f // g).monic()
    c = df // g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = (b // a).monic()
        c = d // a
        d = c - b.derivative()
        i += 1
    return lc, out


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f."""
    _, parts = squarefree_decomposition(f)
    out = Poly.const(1)
    for a, _ in parts:
        out = out * a
    return out


# ---------------------------------------------------------------------------
# Eisenstein quick test
# ---------------------------------------------------------------------------

def _small_prime_factors(n: int, limit: int = 10000) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n and d <= limit:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1 and is_prime(n):
        out.append(n)
    return out


def _eisenstein_at(f: list[int]) -> bool:
    """Plain Eisenstein criterion on an integer polynomial."""
    if len(f) < 3:
        return False
    g = 0
    for c in f[:-1]:
        g = math.gcd(g, c)
    if g <= 1:
        return False
    for p in _small_prime_factors(g):
        if f[-1] % p != 0 and f[0] % (p * p) != 0:
            return True
    return False


def _zx_shift(f: list[int], s: int) -> list[int]:
    """f(x + s) over Z by repeated synthetic division."""
    c = list(f)
    out = []
    while c:
        for k in range(len(c) - 2, -1, -1):
            c[k] += s * c[k + 1]
        out.append(c[0])
        c = c[1:]
    return out


def _eisenstein_shifted(f: list[int]) -> bool:
    """Eisenstein after a small shift proves irreducibility of f itself."""
    for s in (0, 1, -1, 2, -2):
        if _eisenstein_at(f if s == 0 else _zx_shift(f, s)):
            return True
    return False


# ---------------------------------------------------------------------------
# finite-field factorization (distinct degree + equal degree)
# ---------------------------------------------------------------------------

def _gf_ddf(g: list[int], p: int) -> list[tuple[int, list[int]]]:
    """Distinct-degree split of a monic squarefree g mod p."""
    out = []
    v = gf_monic(list(g), p)
    x = [0, 1]
    xp = gf_powmod(x, p, v, p)
    h = list(xp)
    i = 1
    while zx_deg(v) >= 2 * i:
        w = gf_gcd(gf_sub(h, x, p), v, p)
        if zx_deg(w) > 0:
            out.append((i, w))
            v = gf_divmod(v, w, p)[0]
            h = gf_divmod(h, v, p)[1]
            xp = gf_divmod(xp, v, p)[1]
        i += 1
        if zx_deg(v) < 2 * i:
            break
        h = gf_compose_mod(h, xp, v, p)
    if zx_deg(v) > 0:
        out.append((zx_deg(v), v))
    return out


def _gf_edf(w: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus split of w (product of degree-d irreducibles) mod p."""
    if zx_deg(w) == d:
        return [w]
    e = (p ** d - 1) // 2
    while True:
        r = [rng.randrange(p) for _ in range(zx_deg(w))]
        r = modular.gf_trim(r)
        if zx_deg(r) < 1:
            continue
        s = gf_powmod(r, e, w, p)
        g = gf_gcd(gf_sub(s, [1], p), w, p)
        if 0 < zx_deg(g) < zx_deg(w):
            rest = gf_divmod(w, g, p)[0]
            return _gf_edf(g, d, p, rng) + _gf_edf(rest, d, p, rng)


def _gf_factor_squarefree(g: list[int], p: int, seed: int) -> list[list[int]]:
    rng = random.Random(0xC0FFEE ^ seed ^ p)
    out = []
    for d, w in _gf_ddf(g, p):
        out.extend(_gf_edf(w, d, p, rng))
    return sorted(out)


# ---------------------------------------------------------------------------
# Hensel lifting (monic, quadratic, factor tree)
# ---------------------------------------------------------------------------

def _mm_mul(f: list[int], g: list[int], m: int) -> list[int]:
    return zx_trim([c % m for c in zx_mul(f, g)])


def _mm_sub(f: list[int], g: list[int], m: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % m
    return zx_trim(out)


def _mm_add(f: list[int], g: list[int], m: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % m
    return zx_trim(out)


def _mm_divmod_monic(f: list[int], g: list[int], m: int):
    """Division by a monic g over Z/m (no inverses needed)."""
    if len(f) < len(g):
        return [], list(f)
    rem = [c % m for c in f]
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        t = rem[k + len(g) - 1] % m
        if t == 0:
            rem[k + len(g) - 1] = 0
            continue
        q[k] = t
        for j, b in enumerate(g):
            rem[k + j] = (rem[k + j] - t * b) % m
    return zx_trim(q), zx_trim(rem)


def _hensel_step(G, A, B, S, T, m):
    """One quadratic step: modulus m -> m*m, all of A, B monic."""
    M = m * m
    Gm = [c % M for c in G]
    e = _mm_sub(Gm, _mm_mul(A, B, M), M)
    q, r = _mm_divmod_monic(_mm_mul(S, e, M), B, M)
    A1 = _mm_add(A, _mm_add(_mm_mul(T, e, M), _mm_mul(q, A, M), M), M)
    B1 = _mm_add(B, r, M)
    b = _mm_sub(_mm_add(_mm_mul(S, A1, M), _mm_mul(T, B1, M), M), [1], M)
    c, d = _mm_divmod_monic(_mm_mul(S, b, M), B1, M)
    S1 = _mm_sub(S, d, M)
    T1 = _mm_sub(_mm_sub(T, _mm_mul(T, b, M), M), _mm_mul(c, A1, M), M)
    if not A1 or A1[-1] != 1 or len(A1) != len(A):
        raise VerificationError("Hensel step lost monic normalization")
    return A1, B1, S1, T1


def _lift_tree(G: list[int], facs: list[list[int]], p: int, M: int) -> list[list[int]]:
    """Lift monic factors of G from mod p to mod M = p**(2**s)."""
    if len(facs) == 1:
        return [zx_trim([c % M for c in G])]
    k = len(facs) // 2
    A = [1]
    for fi in facs[:k]:
        A = gf_mul(A, fi, p)
    B = [1]
    for fi in facs[k:]:
        B = gf_mul(B, fi, p)
    d, S, T = gf_xgcd(A, B, p)
    if zx_deg(d) != 0:
        raise VerificationError("modular factors not coprime")
    m = p
    while m < M:
        A, B, S, T = _hensel_step(G, A, B, S, T, m)
        m = m * m
    return _lift_tree(A, facs[:k], p, M) + _lift_tree(B, facs[k:], p, M)


# ---------------------------------------------------------------------------
# Zassenhaus driver
# ---------------------------------------------------------------------------

def _symmetric(f: list[int], m: int) -> list[int]:
    half = m // 2
    return zx_trim([c - m if c > half else c for c in f])


def _degree_mask(pattern: list[int]) -> int:
    mask = 1
    for d in pattern:
        mask |= mask << d
    return mask


def _factor_squarefree_z(G: list[int], seed: int) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = zx_deg(G)
    if n <= 1:
        return [G]
    if _eisenstein_shifted(G):
        return [G]

    # monic transform: roots scale by lc, leading term becomes exactly 1
    lc = G[-1]
    if lc != 1:
        Gm = [c * lc ** (n - 1 - k) for k, c in enumerate(G[:-1])] + [1]
    else:
        Gm = list(G)

    # candidate primes keeping Gm squarefree; keep degree patterns for pruning
    want = 3 if n <= 24 else 2
    cands = []
    mask = (1 << (n + 1)) - 1
    q = 101
    while len(cands) < want:
        while not is_prime(q):
            q += 2
        gq = gf_from_zx(Gm, q)
        if zx_deg(gq) == n and zx_deg(gf_gcd(gq, gf_deriv(gq, q), q)) == 0:
            fac = _gf_factor_squarefree(gf_monic(gq, q), q, seed)
            cands.append((q, fac))
            mask &= _degree_mask([zx_deg(h) for h in fac])
        q += 2
    interior = mask & ~1 & ~(1 << n)
    if interior == 0:
        return [G]  # only trivial factor degrees possible

    p, facs = min(cands, key=lambda c: len(c[1]))
    # Mignotte-style height bound for monic factors of Gm
    bound = (math.isqrt(sum(c * c for c in Gm)) + 1) << n
    target = 2 * bound + 1
    M = p
    while M < target:
        M = M * M
    lifted = _lift_tree(Gm, facs, p, M)

    # subset recombination in the monic world
    found_m = []
    rem_idx = list(range(len(lifted)))
    H = Gm
    size = 1
    while 2 * size <= len(rem_idx):
        hit = False
        for combo in itertools.combinations(rem_idx, size):
            dsum = sum(zx_deg(lifted[i]) for i in combo)
            if not (mask >> dsum) & 1:
                continue
            cand = [1]
            for i in combo:
                cand = _mm_mul(cand, lifted[i], M)
            cand = _symmetric(cand, M)
            if cand[0] != 0 and H[0] != 0 and H[0] % cand[0] != 0:
                continue
            quo = zx_divides(H, cand)
            if quo is not None:
                found_m.append(cand)
                H = quo
                rem_idx = [i for i in rem_idx if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    if zx_deg(H) > 0:
        found_m.append(H)

    if lc == 1:
        out = found_m
    else:
        out = []
        for h in found_m:
            hx = [c * lc ** k for k, c in enumerate(h)]
            out.append(zx_primitive(hx)[1])
    # cross-check the reconstruction
    prod = [1]
    for h in out:
        prod = zx_mul(prod, h)
    _, pp = zx_primitive(prod)
    if pp != G:
        raise VerificationError("factor recombination does not reproduce input")
    return out


def factor_irreducible(f: Poly, seed: int = 0) -> FactorList:
    """Full irreducible factorization over Q (monic factors + content)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree < 1:
        return FactorList(f.leading(), ())
    content, parts = squarefree_decomposition(f)
    factors: list[tuple[Poly, int]] = []
    for part, mult in parts:
        nums, den = part.int_form()
        _, prim = zx_primitive(nums)
        # strip powers of x first; they are common and free to detect
        k = 0
        while prim[k] == 0:
            k += 1
        if k:
            factors.append((Poly.x(), k * mult))
            prim = prim[k:]
        if zx_deg(prim) < 1:
            continue
        # parts are monic, so their monic irreducible factors multiply back
        # exactly; the content is untouched by this loop
        for h in _factor_squarefree_z(prim, seed):
            factors.append((Poly(h).monic(), mult))
    factors.sort(key=lambda pe: _factor_sort_key(pe[0]))
    return FactorList(content, tuple(factors))


def rational_roots(f: Poly) -> dict[Fraction, int]:
    """All rational roots with multiplicities (from the linear factors)."""
    out: dict[Fraction, int] = {}
    for p, e in factor_irreducible(f).factors:
        if p.degree == 1:
            out[-p[0]] = e
    return out


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    fl = factor_irreducible(f)
    return len(fl.factors) == 1 and fl.factors[0][1] == 1 and \
        fl.factors[0][0].degree == f.degree
