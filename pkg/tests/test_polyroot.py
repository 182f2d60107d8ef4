import math

import numpy as np
import pytest
from mpmath import mp, mpc
from scipy.optimize import linear_sum_assignment

from unideriv.errors import BracketError
from unideriv.linalg import SeedStream, eigenvalues_unitary, haar_unitary
from unideriv.polyroot import (
    Polynomial,
    critical_points,
    differentiate,
    evaluate,
    find_roots_aberth,
    polish_logderiv,
    poly_from_roots,
    solve_real_root_bracketed,
)
from unideriv.toymodel import b0_criterion, eval_Fn


def matched_max_dist(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    ri, ci = linear_sum_assignment(d)
    return d[ri, ci].max()


class TestPolyFromRoots:
    def test_pm_one(self):
        p = poly_from_roots([1, -1])
        assert np.allclose(p.coeffs, [-1, 0, 1])

    def test_sixth_roots_of_unity(self):
        roots = np.exp(2j * np.pi * np.arange(6) / 6)
        p = poly_from_roots(roots)
        expected = np.zeros(7, dtype=complex)
        expected[0], expected[6] = -1, 1
        assert np.allclose(p.coeffs, expected, atol=1e-14)

    def test_product_form_oracle(self):
        rng = np.random.default_rng(4)
        roots = np.exp(2j * np.pi * rng.random(20))
        p = poly_from_roots(roots, precision_bits=104)
        probes = rng.random(10) * np.exp(2j * np.pi * rng.random(10))
        for w in probes:
            direct = np.prod(w - roots)
            assert abs(complex(evaluate(p, w)) - direct) <= 1e-10


class TestDifferentiate:
    def test_x4_minus_1(self):
        p = Polynomial(coeffs=(-1 + 0j, 0j, 0j, 0j, 1 + 0j))
        dp = differentiate(p)
        assert np.allclose(dp.coeffs, [0, 0, 0, 4])

    def test_x2_minus_1(self):
        dp = differentiate(Polynomial(coeffs=(-1 + 0j, 0j, 1 + 0j)))
        assert np.allclose(dp.coeffs, [0, 2])

    def test_degree_zero_degenerate(self):
        dp = differentiate(Polynomial(coeffs=(3 + 0j,)))
        assert dp.degenerate
        assert dp.coeffs == (0j,)

    def test_degree_drops_by_one(self):
        rng = np.random.default_rng(0)
        p = poly_from_roots(np.exp(2j * np.pi * rng.random(9)))
        assert differentiate(p).degree == p.degree - 1


class TestEvaluate:
    def test_trivials(self):
        p = Polynomial(coeffs=(-1 + 0j, 0j, 1 + 0j))
        assert evaluate(p, 0) == -1
        q = poly_from_roots(np.exp(2j * np.pi * np.arange(5) / 5))
        assert abs(evaluate(q, 1.0)) <= 1e-14

    def test_naive_summation_oracle(self):
        rng = np.random.default_rng(7)
        prec = 80
        roots = np.exp(2j * np.pi * rng.random(12))
        p = poly_from_roots(roots, precision_bits=prec)
        for _ in range(5):
            z = 0.9 * np.exp(2j * np.pi * rng.random())
            got = evaluate(p, z)
            with mp.workprec(2 * prec):  # term-by-term at doubled precision
                zm = mpc(z)
                ref = sum(mpc(c) * zm ** k for k, c in enumerate(p.coeffs))
            rel = abs(got - ref) / max(abs(ref), 1e-30)
            assert rel <= 2.0 ** (-prec + 20)


class TestAberth:
    def test_quadratic(self):
        rs = find_roots_aberth(Polynomial(coeffs=(-1 + 0j, 0j, 1 + 0j)))
        assert rs.converged
        assert matched_max_dist(rs.roots, [1, -1]) <= 1e-12

    def test_triple_root_cluster(self):
        rs = find_roots_aberth(Polynomial(coeffs=(0j, 0j, 0j, 4 + 0j)))
        assert len(rs.roots) == 3
        assert max(abs(r) for r in rs.roots) <= 1e-4
        assert rs.clusters  # multiplicity-3 cluster flagged

    def test_u8_derivative_gauss_lucas(self):
        spec = eigenvalues_unitary(haar_unitary(8, SeedStream(3, 0)))
        p = poly_from_roots(spec.points())
        rs = find_roots_aberth(differentiate(p))
        assert max(abs(r) for r in rs.roots) <= 1 + 1e-10
        assert max(rs.residuals) <= 1e-8
        assert len(rs.roots) == 7


class TestPolishLogderiv:
    def test_symmetric_pair(self):
        z, ok = polish_logderiv([1, -1], 0.1)
        assert ok and abs(z) <= 1e-12

    def test_fourth_roots_center(self):
        zeros = np.exp(2j * np.pi * np.arange(4) / 4)
        z, ok = polish_logderiv(zeros, 0.05 + 0.02j)
        # the center is a triple zero of p', so the log-derivative residual
        # tolerance of 1e-12 only pins |z| down to roughly (1e-12)^(1/3)
        assert ok and abs(z) <= 1e-4

    def test_u20_candidates(self):
        spec = eigenvalues_unitary(haar_unitary(20, SeedStream(4, 0)))
        zeros = spec.points()
        dz, n_ok = critical_points(zeros)
        assert n_ok == 19
        s = np.abs([(1.0 / (z - zeros)).sum() for z in dz])
        assert np.max(s) <= 1e-12


class TestCriticalPoints:
    def test_route_equivalence_n30(self):
        spec = eigenvalues_unitary(haar_unitary(30, SeedStream(5, 0)))
        zeros = spec.points()
        dz_log, _ = critical_points(zeros)
        p = poly_from_roots(zeros, precision_bits=30 + 64)
        rs = find_roots_aberth(differentiate(p))
        dz_coeff = [complex(r) for r in rs.roots]
        assert matched_max_dist(dz_coeff, dz_log) <= 1e-8

    def test_rotation_equivariance(self):
        rng = np.random.default_rng(8)
        zeros = np.exp(2j * np.pi * np.sort(rng.random(15)))
        phi = 1.234
        dz, _ = critical_points(zeros)
        dz_rot, _ = critical_points(zeros * np.exp(1j * phi))
        assert matched_max_dist(dz * np.exp(1j * phi), dz_rot) <= 1e-10

    def test_degree_bookkeeping(self):
        for n in (2, 5, 17):
            zeros = np.exp(2j * np.pi * np.arange(n) / n + 0.1j * 0)
            dz, _ = critical_points(zeros)
            assert dz.size == n - 1


class TestBracketedSolve:
    def test_b0_equation(self):
        x = solve_real_root_bracketed(b0_criterion, 2.0, 3.0, 1e-12)
        assert abs(x - 2.3565585) <= 5e-7

    def test_sqrt_two(self):
        x = solve_real_root_bracketed(lambda t: t * t - 2.0, 1.0, 2.0, 1e-12)
        assert abs(x - math.sqrt(2.0)) <= 1e-6

    def test_f20_real_root(self):
        f = lambda x: eval_Fn(20, x)
        assert f(1 - 6 / 20) < 0 < f(1 - 0.5 / 20)  # sign change bracket
        x = solve_real_root_bracketed(f, 1 - 6 / 20, 1 - 0.5 / 20, 1e-12)
        assert abs(f(x)) <= 1e-12 and 0 < x < 1

    def test_same_sign_bracket_error(self):
        with pytest.raises(BracketError):
            solve_real_root_bracketed(lambda t: t * t + 1.0, -1.0, 1.0, 1e-12)
