import unittest

from sympy import primerange

from charmoment import poly
from charmoment.errors import BothZero, DegreeCollapse, FactorialDivisible, UsageError
from charmoment.field import PrimeFieldCtx

class IntPolyTestCase(unittest.TestCase):
    def test_normalisation(self):
        F = poly.IntPoly([1, 0, 1, 0, 0])
        self.assertEqual(F.coeffs, (1, 0, 1))
        self.assertEqual(F.degree, 2)
        self.assertTrue(F.is_monic)
        self.assertEqual(poly.IntPoly([]).degree, -1)

    def test_eval_mod(self):
        ctx = PrimeFieldCtx(7)
        F = poly.IntPoly([1, 0, 1])
        self.assertEqual([poly.eval_mod(F, n, ctx) for n in range(7)], [1, 2, 5, 3, 3, 5, 2])
        self.assertEqual(poly.eval_mod_array(F, range(7), ctx).tolist(), [1, 2, 5, 3, 3, 5, 2])
        self.assertEqual(poly.eval_mod(poly.IntPoly([-3, 0, 1]), 1, ctx), 5)

    def test_taylor_shift(self):
        self.assertEqual(poly.taylor_shift(poly.IntPoly([1, 0, 1])), poly.IntPoly([2, 2, 1]))
        self.assertEqual(poly.taylor_shift(poly.IntPoly([0, 0, 0, 1])),
                         poly.IntPoly([1, 3, 3, 1]))
        self.assertEqual(poly.difference(poly.IntPoly([0, 0, 1])), poly.IntPoly([1, 2]))

    def test_reduce(self):
        ctx = PrimeFieldCtx(5)
        reduced = poly.IntPoly([1, 0, 5]).reduce(ctx)
        self.assertEqual(reduced.degree, 0)
        self.assertTrue(reduced.collapsed)
        self.assertFalse(poly.IntPoly([1, 0, 6]).reduce(ctx).collapsed)
        with self.assertRaises(UsageError):
            reduced.reduce(PrimeFieldCtx(7))

class ModPolyTestCase(unittest.TestCase):
    def test_gcd(self):
        A = poly.ModPoly([6, 0, 1], 7)
        B = poly.ModPoly([1, 1], 7)
        self.assertEqual(poly.gcd_mod(A, B), poly.ModPoly([1, 1], 7),
                         'X^2 - 1 and X + 1 share X + 1')
        self.assertEqual(poly.gcd_mod(poly.ModPoly([1, 0, 1], 7), poly.ModPoly([0, 1], 7)),
                         poly.ModPoly([1], 7))
        with self.assertRaises(BothZero):
            poly.gcd_mod(poly.ModPoly([], 7), poly.ModPoly([0], 7))

    def test_derivative(self):
        self.assertEqual(poly.derivative_mod(poly.ModPoly([0, 0, 0, 0, 0, 1], 5)),
                         poly.ModPoly([], 5))

    def test_squarefree(self):
        self.assertFalse(poly.squarefree_mod(poly.ModPoly([0, 0, 1], 7)))
        self.assertTrue(poly.squarefree_mod(poly.ModPoly([1, 0, 1], 7)))
        # X^p - X is the product of all linear factors
        self.assertTrue(poly.squarefree_mod(poly.ModPoly([0, 4, 0, 0, 0, 1], 5)))
        with self.assertRaises(DegreeCollapse):
            poly.squarefree_mod(poly.ModPoly([3], 7))

    def test_squarefree_repeated_root(self):
        # (X - 1)^2 (X - 2) = X^3 - 4X^2 + 5X - 2
        ctx = PrimeFieldCtx(11)
        self.assertFalse(poly.squarefree_mod(poly.IntPoly([-2, 5, -4, 1]).reduce(ctx)))
        self.assertTrue(poly.squarefree_mod(poly.IntPoly([2, -3, 1]).reduce(ctx)))

class CertificateTestCase(unittest.TestCase):
    def test_certified(self):
        ctx = PrimeFieldCtx(7)
        certificate = poly.certify_not_tth_power_proportional(poly.IntPoly([1, 0, 1]), 3, ctx)
        self.assertTrue(certificate.certified)
        self.assertIsNone(certificate.reason)

    def test_inconclusive(self):
        ctx = PrimeFieldCtx(7)
        cases = ((poly.IntPoly([0, 0, 1]), 'not squarefree'),
                 (poly.IntPoly([1, 0, 7]), 'degree collapse'),
                 (poly.IntPoly([3]), 'degree collapse'),
                 (poly.IntPoly([0, 6, 0, 0, 0, 0, 0, 1]), 'degree not below p'),
                 (poly.IntPoly([0, 1]), 'degree not above 1'),
                 (poly.IntPoly([5, 1]), 'degree not above 1'),
                 (poly.IntPoly([1, 0, 3]), 'not monic'))
        for F, reason in cases:
            certificate = poly.certify_not_tth_power_proportional(F, 3, ctx)
            self.assertEqual(certificate, poly.Certificate(poly.INCONCLUSIVE, reason), repr(F))

    def test_shared_factor(self):
        # X(X-1) shares X with its shift X(X+1)
        ctx = PrimeFieldCtx(13)
        certificate = poly.certify_not_tth_power_proportional(poly.IntPoly([0, -1, 1]), 3, ctx)
        self.assertEqual(certificate.reason, 'shared factor')

    def test_certified_ratio_not_in_one_coset(self):
        # A certified F has F(n+1)/F(n) spread over several cosets of the t-th powers;
        # from p = 17 on, a quadratic ratio confined to one coset would break 3 sqrt(p) < p - 4
        checked = 0
        for p in primerange(17, 32):
            ctx = PrimeFieldCtx(int(p))
            table = ctx.index_table
            orders = [t for t in range(3, p) if (p - 1) % t == 0]
            for b in range(p):
                for c in range(p):
                    F = poly.IntPoly([c, b, 1])
                    values = [poly.eval_mod(F, n, ctx) for n in range(p + 1)]
                    steps = [int(table[after]) - int(table[before])
                             for before, after in zip(values, values[1:]) if before and after]
                    for t in orders:
                        if not poly.certify_not_tth_power_proportional(F, t, ctx).certified:
                            continue
                        checked += 1
                        self.assertGreater(len({step % t for step in steps}), 1,
                                           f'p={p} t={t} F={F!r}')
        self.assertGreater(checked, 0)

    def test_small_order(self):
        with self.assertRaises(UsageError):
            poly.certify_not_tth_power_proportional(poly.IntPoly([1, 0, 1]), 2,
                                                    PrimeFieldCtx(7))

class BinomialPolyTestCase(unittest.TestCase):
    def test_values(self):
        ctx = PrimeFieldCtx(7)
        F = poly.binomial_poly(2, ctx)
        self.assertEqual(F.degree, 3)
        self.assertEqual([poly.eval_mod(F, n, ctx) for n in range(7)],
                         [0, 0, 0, 1, 4, 3, 6])

    def test_factorial_divisible(self):
        with self.assertRaises(FactorialDivisible):
            poly.binomial_poly(4, PrimeFieldCtx(5))

if __name__ == '__main__':
    unittest.main()
