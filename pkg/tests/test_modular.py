import random
from fractions import Fraction

from itergcd.modular import (
    crt_pair,
    gf_divmod,
    gf_from_zx,
    gf_gcd,
    gf_powmod,
    is_prime,
    prime_stream,
    rational_reconstruct,
    zx_gcd_modular,
    zx_mul,
    zx_primitive,
)


def test_is_prime_small_and_carmichael():
    primes = {2, 3, 5, 7, 11, 13, 97, 7919}
    for n in primes:
        assert is_prime(n)
    for n in (0, 1, 4, 561, 41041, 7917):  # 561, 41041 are Carmichael
        assert not is_prime(n)


def test_prime_stream_distinct_and_prime():
    seen = []
    stream = prime_stream(seed=3)
    for _ in range(20):
        p = next(stream)
        assert is_prime(p)
        assert p not in seen
        assert p.bit_length() >= 28
        seen.append(p)


def test_prime_stream_seed_determinism():
    a = [next(prime_stream(seed=5)) for _ in range(1)]
    b = [next(prime_stream(seed=5)) for _ in range(1)]
    assert a == b


def test_crt_pair_reconstructs():
    rng = random.Random(1)
    for _ in range(50):
        m1, m2 = 10007, 30011
        v = rng.randrange(m1 * m2)
        r = crt_pair(v % m1, m1, v % m2, m2)
        assert r % m1 == v % m1 and r % m2 == v % m2


def test_rational_reconstruct_roundtrip():
    rng = random.Random(2)
    m = 2 ** 89 - 1
    for _ in range(100):
        num = rng.randint(-10 ** 9, 10 ** 9)
        den = rng.randint(1, 10 ** 6)
        q = Fraction(num, den)
        c = (q.numerator * pow(q.denominator, -1, m)) % m
        assert rational_reconstruct(c, m) == q


def test_rational_reconstruct_zero():
    # regression: zero residues must reconstruct immediately
    assert rational_reconstruct(0, 10007) == 0
    assert rational_reconstruct(10007, 10007) == 0


def test_gf_gcd_matches_structure():
    p = 10007
    a = gf_from_zx([1, 2, 1], p)          # (x+1)^2
    b = gf_from_zx([1, 3, 3, 1], p)       # (x+1)^3
    g = gf_gcd(a, b, p)
    assert g == gf_from_zx([1, 2, 1], p)  # monic gcd (x+1)^2


def test_gf_divmod_identity():
    rng = random.Random(4)
    p = 10007
    for _ in range(60):
        f = [rng.randrange(p) for _ in range(rng.randint(1, 8))]
        g = [rng.randrange(p) for _ in range(rng.randint(1, 6))]
        if not any(g):
            continue
        while g and g[-1] == 0:
            g.pop()
        q, r = gf_divmod(f, g, p)
        lhs = [v % p for v in zx_mul(q, g)]
        total = [0] * max(len(lhs), len(r), len(f))
        for i, v in enumerate(lhs):
            total[i] = v
        for i, v in enumerate(r):
            total[i] = (total[i] + v) % p
        ftrim = list(f)
        while ftrim and ftrim[-1] == 0:
            ftrim.pop()
        while total and total[-1] == 0:
            total.pop()
        assert total == ftrim


def test_gf_powmod_frobenius():
    p = 103  # 3 mod 4, so x^2 + 1 is irreducible over GF(p)
    mod = gf_from_zx([1, 0, 1], p)
    assert gf_powmod([0, 1], p, mod, p) == [0, p - 1]   # x^p = -x
    assert gf_powmod([0, 1], p * p, mod, p) == [0, 1]   # x^(p^2) = x


def test_zx_gcd_modular_known_and_zero_coeff():
    # regression: gcds whose coefficients include zero used to stall
    f = [0, 0, 1, 1]     # x^3 + x^2
    g = [0, 0, 5, 1]     # x^3 + 5x^2
    assert zx_gcd_modular(f, g) == [0, 0, 1]
    a = zx_mul([0, 1], [-7, 0, 3])
    b = zx_mul([0, 1], [5, 2])
    assert zx_gcd_modular(a, b) == [0, 1]


def test_zx_gcd_modular_random_products():
    rng = random.Random(6)
    for _ in range(60):
        def rand_zx(lo, hi):
            f = [rng.randint(-20, 20) for _ in range(rng.randint(lo, hi))]
            while f and f[-1] == 0:
                f.pop()
            return f or [1]
        common = rand_zx(1, 4)
        a = zx_mul(rand_zx(1, 4), common)
        b = zx_mul(rand_zx(1, 4), common)
        g = zx_gcd_modular(a, b)
        _, cp = zx_primitive(common)
        # the true gcd divides both inputs and is a multiple of the
        # primitive common factor
        from itergcd.modular import zx_divides
        assert zx_divides(a, g) is not None
        assert zx_divides(b, g) is not None
        assert zx_divides(g, cp) is not None
