"""Integer and GF(p) dense-polynomial kernels.

Everything here works on plain ``list[int]`` coefficient vectors in
little-endian order (index = power of x) with trailing zeros stripped; the
empty list is the zero polynomial.  These kernels back the user-facing Poly
type: gcds run modulo a stream of word-size primes and are reconstructed via
CRT + rational reconstruction, with the subresultant PRS kept as an
independent slow route for cross-checking.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .errors import VerificationError

# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream(seed: int = 0, bits: int = 29):
    """Endless descending stream of primes just below 2**bits.

    The seed only shifts the starting point so that independent runs with the
    same seed pick identical primes (determinism contract).
    """
    n = (1 << bits) - 1 - 2 * (seed & 0xFFFF)
    if n % 2 == 0:
        n -= 1
    while True:
        if is_prime(n):
            yield n
        n -= 2


# ---------------------------------------------------------------------------
# Z[x] basics
# ---------------------------------------------------------------------------

def zx_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def zx_deg(f: list[int]) -> int:
    return len(f) - 1


def zx_add(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return zx_trim(out)


def zx_sub(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] -= c
    return zx_trim(out)


def zx_mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    gnz = [(j, c) for j, c in enumerate(g) if c]
    for i, a in enumerate(f):
        if a:
            for j, b in gnz:
                out[i + j] += a * b
    return zx_trim(out)


def zx_content(f: list[int]) -> int:
    return reduce(math.gcd, (abs(c) for c in f if c), 0)


def zx_primitive(f: list[int]) -> tuple[int, list[int]]:
    """Split f = cont * prim with prim primitive and lc(prim) > 0."""
    if not f:
        return 0, []
    cont = zx_content(f)
    if f[-1] < 0:
        cont = -cont
    return cont, [c // cont for c in f]


def zx_divides(f: list[int], g: list[int]):
    """Exact quotient f/g over Z, or None.

    Both arguments should be primitive (Gauss: a primitive divisor of a
    primitive polynomial has an integer quotient), which is how the gcd
    verification below calls it.
    """
    if not g:
        return None
    if not f:
        return []
    if len(f) < len(g):
        return None
    rem = list(f)
    glc = g[-1]
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(g) - 1]
        if c == 0:
            continue
        if c % glc:
            return None
        t = c // glc
        q[k] = t
        for j, b in enumerate(g):
            rem[k + j] -= t * b
    if any(rem):
        return None
    return zx_trim(q)


def zx_eval(f: list[int], x: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * x + c
    return out


def zx_max_norm(f: list[int]) -> int:
    return max((abs(c) for c in f), default=0)


# ---------------------------------------------------------------------------
# GF(p)[x] basics
# ---------------------------------------------------------------------------

def gf_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_from_zx(f: list[int], p: int) -> list[int]:
    return gf_trim([c % p for c in f])


def gf_neg(f: list[int], p: int) -> list[int]:
    return [(-c) % p for c in f]


def gf_add(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return gf_trim(out)


def gf_sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return gf_trim(out)


def gf_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    gnz = [(j, c) for j, c in enumerate(g) if c]
    for i, a in enumerate(f):
        if a:
            for j, b in gnz:
                out[i + j] += a * b
    return gf_trim([c % p for c in out])


def gf_scale(f: list[int], a: int, p: int) -> list[int]:
    a %= p
    return gf_trim([c * a % p for c in f])


def gf_monic(f: list[int], p: int) -> list[int]:
    if not f:
        return []
    return gf_scale(f, pow(f[-1], p - 2, p), p)


def gf_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], list(f)
    rem = list(f)
    inv = pow(g[-1], p - 2, p)
    q = [0] * (len(f) - len(g) + 1)
    gnz = [(j, c) for j, c in enumerate(g[:-1]) if c]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(g) - 1] % p
        if c == 0:
            rem[k + len(g) - 1] = 0
            continue
        t = c * inv % p
        q[k] = t
        rem[k + len(g) - 1] = 0
        for j, b in gnz:
            rem[k + j] = (rem[k + j] - t * b) % p
    return gf_trim(q), gf_trim(rem)


def gf_rem(f: list[int], g: list[int], p: int) -> list[int]:
    return gf_divmod(f, g, p)[1]


def gf_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = list(f), list(g)
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_xgcd(f: list[int], g: list[int], p: int):
    """Extended Euclid: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], p - 2, p)
    return gf_scale(r0, inv, p), gf_scale(s0, inv, p), gf_scale(t0, inv, p)


def gf_powmod(f: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = gf_rem(f, mod, p)
    while e:
        if e & 1:
            out = gf_rem(gf_mul(out, base, p), mod, p)
        e >>= 1
        if e:
            base = gf_rem(gf_mul(base, base, p), mod, p)
    return out


def gf_compose_mod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    """f(g) mod (mod, p) by Horner."""
    out: list[int] = []
    for c in reversed(f):
        out = gf_rem(gf_mul(out, g, p), mod, p)
        if c:
            out = gf_add(out, [c], p)
    return out


def gf_eval(f: list[int], x: int, p: int) -> int:
    out = 0
    for c in reversed(f):
        out = (out * x + c) % p
    return out


def gf_deriv(f: list[int], p: int) -> list[int]:
    return gf_trim([i * c % p for i, c in enumerate(f)][1:])


# ---------------------------------------------------------------------------
# CRT and rational reconstruction
# ---------------------------------------------------------------------------

def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (m1, m2 coprime)."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def rational_reconstruct(c: int, m: int):
    """Fraction n/d with n = c*d mod m and |n|, d <= sqrt(m/2), or None."""
    c %= m
    if c == 0:
        return Fraction(0)
    bound = math.isqrt((m - 1) // 2) if m > 1 else 0
    r0, t0 = m, 0
    r1, t1 = c, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if math.gcd(abs(r1), t1) != 1 or math.gcd(t1, m) != 1:
        return None
    return Fraction(r1, t1)


# ---------------------------------------------------------------------------
# gcd over Z: modular primary route, subresultant PRS fallback
# ---------------------------------------------------------------------------

def zx_gcd_modular(f: list[int], g: list[int], seed: int = 0) -> list[int]:
    """Primitive gcd over Z of two integer polynomials (positive lc).

    Classic small-primes algorithm: monic gcd images modulo word-size primes
    avoiding the leading coefficients, unlucky primes discarded by degree
    comparison, CRT-combined images lifted back to Q by rational
    reconstruction, and the candidate certified by exact trial division.
    """
    if not f and not g:
        return []
    if not f:
        return zx_primitive(g)[1]
    if not g:
        return zx_primitive(f)[1]
    _, fp = zx_primitive(f)
    _, gp = zx_primitive(g)
    if zx_deg(fp) < zx_deg(gp):
        fp, gp = gp, fp
    lcs = fp[-1] * gp[-1]

    best_deg = None      # minimal gcd degree seen so far
    acc: list[int] = []  # CRT-accumulated monic image
    mod = 1
    stable = 0           # primes in a row that confirmed the candidate
    candidate = None
    for p in prime_stream(seed):
        if lcs % p == 0:
            continue
        hp = gf_gcd(gf_from_zx(fp, p), gf_from_zx(gp, p), p)
        d = zx_deg(hp)
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg, acc, mod, candidate, stable = d, hp, p, None, 0
            continue
        if d > best_deg:
            continue  # unlucky prime
        acc = [crt_pair(a, mod, b, p) for a, b in zip(acc, hp)]
        mod *= p
        cand = []
        for a in acc:
            q = rational_reconstruct(a, mod)
            if q is None:
                cand = None
                break
            cand.append(q)
        if cand is None:
            continue
        if cand == candidate:
            stable += 1
        else:
            candidate, stable = cand, 0
        den = reduce(lcm_int, (c.denominator for c in cand), 1)
        h = zx_trim([int(c * den) for c in cand])
        _, h = zx_primitive(h)
        if zx_divides(fp, h) is not None and zx_divides(gp, h) is not None:
            return h
        if stable > 8:
            raise VerificationError("modular gcd failed to stabilize")
    raise VerificationError("prime stream exhausted")  # pragma: no cover


def lcm_int(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def zx_gcd_subresultant(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd over Z via the subresultant PRS (slow, independent)."""
    if not f and not g:
        return []
    if not f:
        return zx_primitive(g)[1]
    if not g:
        return zx_primitive(f)[1]
    _, a = zx_primitive(f)
    _, b = zx_primitive(g)
    if zx_deg(a) < zx_deg(b):
        a, b = b, a
    gg, h = 1, 1
    while True:
        delta = zx_deg(a) - zx_deg(b)
        rem = zx_pseudo_rem(a, b)
        if not rem:
            _, prim = zx_primitive(b)
            return prim
        if zx_deg(rem) == 0:
            return [1]
        a, b = b, [c // (gg * h ** delta) for c in rem]
        gg = a[-1]
        h = h ** (1 - delta) * gg ** delta if delta <= 1 else gg ** delta // h ** (delta - 1)


def zx_pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """prem(f, g): remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    rem = list(f)
    dg = zx_deg(g)
    lcg = g[-1]
    k = zx_deg(f) - dg + 1
    while rem and zx_deg(rem) >= dg:
        t = rem[-1]
        drem = zx_deg(rem)
        rem = [c * lcg for c in rem]
        for j, b in enumerate(g):
            rem[drem - dg + j] -= t * b
        rem = zx_trim(rem)
        k -= 1
    # normalize to the full pseudo-remainder power so divisions stay exact
    if k > 0:
        rem = [c * lcg ** k for c in rem]
    return rem


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def gf_resultant(f: list[int], g: list[int], p: int) -> int:
    """Res(f, g) over GF(p) by the Euclidean remainder sequence."""
    a, b = gf_trim([c % p for c in f]), gf_trim([c % p for c in g])
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = zx_deg(a), zx_deg(b)
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = gf_rem(a, b, p)
        if not r:
            return 0
        res = res * pow(b[-1], da - zx_deg(r), p) % p
        if (da * db) % 2 == 1:
            res = (-res) % p
        a, b = b, r


def zx_resultant(f: list[int], g: list[int], seed: int = 0) -> int:
    """Res(f, g) over Z by CRT against a Hadamard-style bound."""
    if not f or not g:
        return 0
    if zx_deg(f) == 0:
        return f[0] ** zx_deg(g)
    if zx_deg(g) == 0:
        return g[0] ** zx_deg(f)
    n2f = math.isqrt(sum(c * c for c in f)) + 1
    n2g = math.isqrt(sum(c * c for c in g)) + 1
    bound = 2 * n2f ** zx_deg(g) * n2g ** zx_deg(f) + 1
    lcs = f[-1] * g[-1]
    res, mod = 0, 1
    for p in prime_stream(seed):
        if lcs % p == 0:
            continue
        rp = gf_resultant(f, g, p)
        res = crt_pair(res, mod, rp, p) if mod > 1 else rp
        mod *= p
        if mod >= bound:
            break
    res %= mod
    if res > mod // 2:
        res -= mod
    return res
