import random

from qstar import _backend, _kernels_py


def test_backend_exports():
    assert callable(_backend.convolve)
    assert callable(_backend.search_sextic)
    assert isinstance(_backend.COMPILED, bool)


def test_convolve_parity_randomized():
    rng = random.Random(777)
    for _ in range(100):
        a = [rng.randint(-(10**9), 10**9) for _ in range(rng.randint(0, 20))]
        b = [rng.randint(-(10**9), 10**9) for _ in range(rng.randint(0, 20))]
        n = rng.randint(0, 30)
        assert _backend.convolve(a, b, n) == _kernels_py.convolve(a, b, n)


def test_convolve_bignum():
    a = [10**40, -(10**41)]
    b = [3, 7]
    assert _backend.convolve(a, b, 3) == [3 * 10**40, 7 * 10**40 - 3 * 10**41, -7 * 10**41]


def test_perfect_square_root():
    for n in range(2000):
        r = _backend.perfect_square_root(n)
        s = _kernels_py.perfect_square_root(n)
        assert r == s
        if r is not None:
            assert r * r == n


def test_search_parity_small():
    curves = [
        (9, -14, 9, -6, 6, -4, 1),
        (1, 10, -15, 2, 6, -4, 1),
        (25, -40, 32, -22, 12, -4, 1),
        (0, 0, 0, 0, 0, 0, 1),  # y^2 = x^6
    ]
    for coeffs in curves:
        got = _backend.search_sextic(coeffs, 25)
        ref = _kernels_py.search_sextic(coeffs, 25)
        assert got == ref
        for u, v, s in got:
            t = sum(coeffs[i] * u**i * v ** (6 - i) for i in range(7))
            assert s >= 0 and s * s == t


def test_search_overflow_fallback_matches():
    # coefficients past the 126-bit guard must still give exact results
    coeffs = (1 << 80, 0, 0, -(1 << 70), 0, 0, 1)
    got = _backend.search_sextic(coeffs, 6)
    ref = _kernels_py.search_sextic(coeffs, 6)
    assert got == ref


def test_search_known_points_on_sample_sextic():
    # y^2 = x^6 - 4x^5 + 6x^4 - 6x^3 + 9x^2 - 14x + 9
    pts = _backend.search_sextic((9, -14, 9, -6, 6, -4, 1), 2)
    assert (0, 1, 3) in pts and (-1, 1, 7) in pts and (2, 1, 1) in pts
