from math import ceil, log, pi, sqrt
import cmath
import random
import unittest

import numpy

from charmoment import bounds
from charmoment.characters import AddChar, MultChar, eval_mult, mult_char_of_order
from charmoment.errors import DegenerateDegree, IntervalOutOfRange, UsageError
from charmoment.field import PrimeFieldCtx, discrete_log
from charmoment.moments import Interval
from charmoment.poly import IntPoly, eval_mod, eval_mod_array, taylor_shift

X = IntPoly([0, 1])
X2 = IntPoly([0, 0, 1])
X2_PLUS_1 = IntPoly([1, 0, 1])
X3_X_1 = IntPoly([1, 1, 0, 1])

def random_poly(rng, p, degree):
    return IntPoly([rng.randrange(p) for _ in range(degree)] + [1 + rng.randrange(p - 1)])

class CompleteSumTestCase(unittest.TestCase):
    def test_trivial(self):
        ctx = PrimeFieldCtx(11)
        psi = AddChar(ctx, 1)
        self.assertAlmostEqual(bounds.twisted_complete_sum(ctx, psi, IntPoly([]), 0), 11)
        self.assertAlmostEqual(abs(bounds.twisted_complete_sum(ctx, psi, IntPoly([]), 3)), 0,
                               places=9)

    def test_gauss_sum(self):
        ctx = PrimeFieldCtx(5)
        S = bounds.twisted_complete_sum(ctx, AddChar(ctx, 1), X2, 0)
        self.assertAlmostEqual(abs(S), sqrt(5), places=12)
        self.assertAlmostEqual(S, sum(cmath.exp(2j * pi * x * x / 5) for x in range(5)),
                               places=12)

    def test_twist_against_direct(self):
        ctx = PrimeFieldCtx(31)
        psi = AddChar(ctx, 3)
        direct = sum(cmath.exp(2j * pi * (3 * eval_mod(X3_X_1, x, ctx) - 4 * x) / 31)
                     for x in range(31))
        self.assertAlmostEqual(bounds.twisted_complete_sum(ctx, psi, X3_X_1, 4), direct,
                               places=9)

class WeilTestCase(unittest.TestCase):
    def test_examples(self):
        ctx = PrimeFieldCtx(5)
        check = bounds.weil_check(ctx, AddChar(ctx, 1), X2)
        self.assertTrue(check.ok)
        self.assertAlmostEqual(check.lhs_mag, sqrt(5), places=9)
        self.assertAlmostEqual(check.rhs, sqrt(5), places=6)
        linear = bounds.weil_check(ctx, AddChar(ctx, 2), X)
        self.assertTrue(linear.ok)
        self.assertAlmostEqual(linear.lhs_mag, 0, places=9)
        ctx = PrimeFieldCtx(7)
        cubic = bounds.weil_check(ctx, AddChar(ctx, 1), IntPoly([0, 1, 0, 1]))
        self.assertTrue(cubic.ok)
        self.assertAlmostEqual(cubic.rhs, 2 * sqrt(7), places=6)

    def test_corpus(self):
        rng = random.Random(11)
        for p in (101, 401, 1009, 2003):
            ctx = PrimeFieldCtx(p)
            for degree in range(2, 7):
                for _ in range(3):
                    check = bounds.weil_check(ctx, AddChar(ctx, 1 + rng.randrange(p - 1)),
                                              random_poly(rng, p, degree))
                    self.assertTrue(check.ok, check)
            quadratic = bounds.weil_check(ctx, AddChar(ctx, 1), X2_PLUS_1)
            self.assertAlmostEqual(quadratic.lhs_mag, sqrt(p), delta=1e-6)

    def test_degenerate(self):
        ctx = PrimeFieldCtx(7)
        psi = AddChar(ctx, 1)
        for G in (IntPoly([3]), IntPoly([1, 0, 7]), IntPoly([0, 0, 0, 0, 0, 0, 0, 1])):
            with self.assertRaises(DegenerateDegree):
                bounds.weil_check(ctx, psi, G)

    def test_twisted(self):
        ctx = PrimeFieldCtx(101)
        psi = AddChar(ctx, 1)
        check = bounds.twisted_weil_check(ctx, psi, X2_PLUS_1)
        self.assertTrue(check.ok)
        self.assertAlmostEqual(check.lhs_mag, sqrt(101), delta=1e-6)
        self.assertTrue(bounds.twisted_weil_check(ctx, psi, X3_X_1).ok)
        with self.assertRaises(DegenerateDegree):
            bounds.twisted_weil_check(ctx, psi, X)

class CompletionTestCase(unittest.TestCase):
    def test_full_period(self):
        ctx = PrimeFieldCtx(101)
        psi = AddChar(ctx, 1)
        check = bounds.completion_identity_check(ctx, psi, X3_X_1, Interval(0, 101))
        self.assertTrue(check.ok)
        complete = bounds.twisted_complete_sum(ctx, psi, X3_X_1, 0)
        self.assertAlmostEqual(complex(*check.context['direct']), complete, places=9)

    def test_single_point(self):
        ctx = PrimeFieldCtx(101)
        check = bounds.completion_identity_check(ctx, AddChar(ctx, 1), X3_X_1, Interval(17, 1))
        value = cmath.exp(2j * pi * eval_mod(X3_X_1, 17, ctx) / 101)
        self.assertTrue(check.ok)
        self.assertAlmostEqual(complex(*check.context['completed']), value, places=9)

    def test_randomised(self):
        rng = random.Random(5)
        for p in (101, 401, 1009, 2003):
            ctx = PrimeFieldCtx(p)
            for _ in range(25):
                G = random_poly(rng, p, rng.randrange(1, 6))
                I = Interval(rng.randrange(p), rng.randrange(1, p))
                check = bounds.completion_identity_check(ctx, AddChar(ctx, 1), G, I)
                self.assertTrue(check.ok, check)

    def test_kernel(self):
        ctx = PrimeFieldCtx(31)
        I = Interval(29, 7)
        direct = [sum(cmath.exp(2j * pi * b * n / 31) for n in I.members(ctx).tolist())
                  for b in range(31)]
        numpy.testing.assert_allclose(bounds.interval_kernel(ctx, I), direct, atol=1e-9)

class IncompleteSumTestCase(unittest.TestCase):
    def test_examples(self):
        ctx = PrimeFieldCtx(401)
        self.assertTrue(bounds.incomplete_sum_bound_check(ctx, AddChar(ctx, 1), X2,
                                                          Interval(1, 250)).ok)
        ctx = PrimeFieldCtx(1009)
        length = ceil(sqrt(1009) * log(1009))
        check = bounds.incomplete_sum_bound_check(ctx, AddChar(ctx, 1), IntPoly([0, 0, 0, 1]),
                                                  Interval(0, length))
        self.assertTrue(check.ok)
        self.assertAlmostEqual(check.rhs, 2 * sqrt(1009) * (1 + log(1009)), places=6)

    def test_linear(self):
        ctx = PrimeFieldCtx(101)
        check = bounds.incomplete_sum_bound_check(ctx, AddChar(ctx, 1), X, Interval(0, 50))
        self.assertTrue(check.ok)
        self.assertAlmostEqual(check.rhs, 50, places=6)

class FourierTestCase(unittest.TestCase):
    def test_delta(self):
        values = numpy.zeros(13, dtype=complex)
        values[0] = 1
        hat = bounds.normalized_fourier(bounds.PeriodicTable(13, values))
        numpy.testing.assert_allclose(hat.values, numpy.full(13, 1 / sqrt(13)), atol=1e-12)

    def test_exponential(self):
        p, c = 17, 5
        phi = bounds.PeriodicTable(p, numpy.exp(2j * pi * c * numpy.arange(p) / p))
        expected = numpy.zeros(p, dtype=complex)
        expected[-c % p] = sqrt(p)
        numpy.testing.assert_allclose(bounds.normalized_fourier(phi).values, expected,
                                      atol=1e-9)

    def test_parseval_and_reflection(self):
        rng = numpy.random.default_rng(3)
        for p in (7, 101, 409):
            phi = bounds.PeriodicTable(p, rng.normal(size=p) + 1j * rng.normal(size=p))
            hat = bounds.normalized_fourier(phi)
            self.assertAlmostEqual(numpy.sum(numpy.abs(hat.values)**2),
                                   numpy.sum(numpy.abs(phi.values)**2), delta=1e-9 * p)
            twice = bounds.normalized_fourier(hat)
            numpy.testing.assert_allclose(twice.values, phi.values[-numpy.arange(p) % p],
                                          atol=1e-9)

    def test_table_checks(self):
        with self.assertRaises(UsageError):
            bounds.PeriodicTable(5, [1, 2, 3])
        with self.assertRaises(UsageError):
            bounds.normalized_fourier(bounds.PeriodicTable(4099, numpy.ones(4099)))

class FkmTestCase(unittest.TestCase):
    def test_constant(self):
        check = bounds.fkm_bound_check(bounds.PeriodicTable(101, numpy.ones(101)),
                                       Interval(0, 101))
        self.assertTrue(check.ok)
        self.assertAlmostEqual(check.lhs_mag, 101)
        self.assertAlmostEqual(check.context['c'], sqrt(101))
        self.assertTrue(check.context['boundary'])

    def test_range(self):
        phi = bounds.PeriodicTable(101, numpy.ones(101))
        for length in (5, 10, 102):
            with self.assertRaises(IntervalOutOfRange):
                bounds.fkm_bound_check(phi, Interval(0, length))

    def test_character_ratio(self):
        rng = random.Random(7)
        tables = 0
        for p in (409, 1009, 2003, 4093):
            ctx = PrimeFieldCtx(p)
            for t in (3, 4):
                if (p - 1) % t:
                    continue
                chi = mult_char_of_order(ctx, t)
                for F in (X2_PLUS_1, X3_X_1):
                    phi = bounds.character_ratio_table(ctx, chi, F)
                    c = bounds.fkm_constant(phi)
                    tables += 1
                    for _ in range(20):
                        length = rng.randrange(int(sqrt(p)) + 1, p + 1)
                        check = bounds.fkm_bound_check(phi, Interval(rng.randrange(p), length),
                                                       c=c)
                        self.assertTrue(check.ok, check)
        # 2003 - 1 has neither 3 nor 4 as a divisor
        self.assertEqual(tables, 12)

    def test_shared_constant(self):
        ctx = PrimeFieldCtx(409)
        phi = bounds.character_ratio_table(ctx, mult_char_of_order(ctx, 3), X2_PLUS_1)
        I = Interval(17, 300)
        self.assertEqual(bounds.fkm_bound_check(phi, I),
                         bounds.fkm_bound_check(phi, I, c=bounds.fkm_constant(phi)))

    def test_twisted_table(self):
        ctx = PrimeFieldCtx(103)
        chi = mult_char_of_order(ctx, 3)
        phi = bounds.character_ratio_table(ctx, chi, X2_PLUS_1, b=5)
        I = Interval(1, 60)
        mixed = bounds.mixed_char_sum(ctx, chi, taylor_shift(X2_PLUS_1), X2_PLUS_1, 5, I)
        check = bounds.fkm_bound_check(phi, I)
        self.assertAlmostEqual(abs(mixed), check.lhs_mag, places=9)
        self.assertTrue(check.ok)

class MixedSumTestCase(unittest.TestCase):
    def test_trivial_character(self):
        ctx = PrimeFieldCtx(103)
        total = bounds.mixed_char_sum(ctx, MultChar(ctx, 0), X, IntPoly([1, 1]), 0,
                                      Interval(0, 60))
        self.assertAlmostEqual(total, 59)

    def test_ratio_sum(self):
        ctx = PrimeFieldCtx(103)
        chi = mult_char_of_order(ctx, 3)
        I = Interval(1, 60)
        total = bounds.mixed_char_sum(ctx, chi, taylor_shift(X2_PLUS_1), X2_PLUS_1, 0, I)
        brute = sum((eval_mult(chi, eval_mod(X2_PLUS_1, n + 1, ctx))
                     * eval_mult(chi, eval_mod(X2_PLUS_1, n, ctx)).conjugate()).to_complex()
                    for n in range(1, 61))
        self.assertAlmostEqual(total, brute, places=9)

    def test_large_twist(self):
        # (b n t) exceeds 2^63 here unless b n is reduced mod p first
        p = 2**31 - 1
        ctx = PrimeFieldCtx(p)
        chi = mult_char_of_order(ctx, 7)
        num, den = IntPoly([1, 1]), IntPoly([2, 1])
        b, I = p - 3, Interval(p - 12, 10)
        total = bounds.mixed_char_sum(ctx, chi, num, den, b, I)
        brute = 0
        for n in range(p - 12, p - 2):
            ratio = eval_mod(num, n, ctx) * pow(eval_mod(den, n, ctx), -1, p) % p
            exponent = chi.step * discrete_log(ctx, ratio) % chi.t
            brute += cmath.exp(2j * pi * (exponent / chi.t - b * n % p / p))
        self.assertAlmostEqual(abs(total - brute), 0, places=7)

class NonvanishingTestCase(unittest.TestCase):
    def test_at_most_degree_zeros(self):
        # a nonzero G mod p vanishes at no more than deg G points of any interval
        rng = random.Random(11)
        for p in (31, 101, 409):
            ctx = PrimeFieldCtx(p)
            for degree in (1, 2, 3, 5):
                for _ in range(10):
                    G = random_poly(rng, p, degree)
                    I = Interval(rng.randrange(p), rng.randrange(1, p))
                    values = eval_mod_array(G, I.members(ctx), ctx)
                    self.assertGreaterEqual(int(numpy.count_nonzero(values)),
                                            I.length - degree, f'p={p} G={G} I={I}')

    def test_roots_in_interval(self):
        # (X - 1)(X - 2)(X - 3) loses exactly its three roots from [0, 10]
        ctx = PrimeFieldCtx(11)
        G = IntPoly([-6, 11, -6, 1])
        values = eval_mod_array(G, Interval(0, 10).members(ctx), ctx)
        self.assertEqual(int(numpy.count_nonzero(values)), 10 - 3)

class CauchySchwarzTestCase(unittest.TestCase):
    def test_moments(self):
        ctx = PrimeFieldCtx(409)
        I = Interval(1, 400)
        self.assertTrue(bounds.cauchy_schwarz_check(ctx, mult_char_of_order(ctx, 4),
                                                    X2_PLUS_1, I).ok)
        check = bounds.cauchy_schwarz_check(ctx, AddChar(ctx, 3), X3_X_1, I)
        self.assertTrue(check.ok)
        self.assertEqual(check.context['terms'], 400)

if __name__ == '__main__':
    unittest.main()
