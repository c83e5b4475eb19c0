import unittest

import numpy

from charmoment import field
from charmoment.errors import NotPrime, ZeroArgument, ZeroInverse

class PrimalityTestCase(unittest.TestCase):
    def test_small_values(self):
        primes = [n for n in range(60) if field.is_prime(n)]
        self.assertEqual(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                  53, 59])

    def test_carmichael_and_large(self):
        self.assertFalse(field.is_prime(561), 'Carmichael number passed as prime')
        self.assertFalse(field.is_prime(3215031751))
        self.assertTrue(field.is_prime(2**31 - 1))
        self.assertTrue(field.is_prime(1_000_003))
        self.assertTrue(field.is_prime(2**61 - 1))
        self.assertFalse(field.is_prime(4_611_686_014_132_420_609), '(2^31-1)^2 passed as prime')

class FieldCtxTestCase(unittest.TestCase):
    def test_not_prime(self):
        for n in (0, 1, 2, 9, 100):
            with self.assertRaises(NotPrime):
                field.PrimeFieldCtx(n)

    def test_primitive_roots(self):
        for p, g in ((3, 2), (7, 3), (23, 5), (41, 6)):
            self.assertEqual(field.find_primitive_root(p), g)
            self.assertEqual(field.PrimeFieldCtx(p).g, g)

    def test_index_table(self):
        ctx = field.PrimeFieldCtx(1009)
        table = ctx.index_table
        self.assertEqual(table[0], -1)
        self.assertEqual(sorted(table[1:].tolist()), list(range(1008)),
                         'Index table is not a bijection onto [0, p-2]')
        for x in (1, 2, 500, 1008):
            self.assertEqual(pow(ctx.g, int(table[x]), 1009), x)
        with self.assertRaises(ValueError):
            table[1] = 5

    def test_bsgs_matches_table(self):
        ctx = field.PrimeFieldCtx(7919)
        for x in range(1, 7919, 37):
            self.assertEqual(field.discrete_log(ctx, x, use_table=False),
                             field.discrete_log(ctx, x))

    def test_without_table(self):
        ctx = field.PrimeFieldCtx(104729, table_threshold=1000)
        self.assertIsNone(ctx.index_table)
        values = numpy.array([1, 2, 3, 104728])
        for x, e in zip(values, ctx.indices(values)):
            self.assertEqual(pow(ctx.g, int(e), ctx.p), int(x))
        self.assertEqual(int(ctx.indices(numpy.array([104728]))[0]), 104728 // 2)

    def test_mod_inv(self):
        ctx = field.PrimeFieldCtx(7)
        self.assertEqual(field.mod_inv(3, ctx), 5)
        self.assertEqual(field.mod_inv(-1, ctx), 6)
        with self.assertRaises(ZeroInverse):
            field.mod_inv(14, ctx)

    def test_mod_inv_involution(self):
        for p in (3, 11, 101, 1009):
            ctx = field.PrimeFieldCtx(p)
            for x in range(1, p):
                inverse = field.mod_inv(x, ctx)
                self.assertEqual(x * inverse % p, 1)
                self.assertEqual(field.mod_inv(inverse, ctx), x)

    def test_discrete_log(self):
        ctx = field.PrimeFieldCtx(7)
        self.assertEqual([field.discrete_log(ctx, x) for x in range(1, 7)], [0, 2, 1, 4, 5, 3])
        with self.assertRaises(ZeroArgument):
            field.discrete_log(ctx, 0)

if __name__ == '__main__':
    unittest.main()
