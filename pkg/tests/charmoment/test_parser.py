import unittest

from charmoment import parser
from charmoment.errors import UsageError
from charmoment.field import PrimeFieldCtx
from charmoment.poly import IntPoly, ModPoly

class PolyParserTestCase(unittest.TestCase):
    def test_coefficients(self):
        self.assertEqual(parser.parse_poly('1,0,1'), IntPoly([1, 0, 1]))
        self.assertEqual(parser.parse_poly('[0, 1, 0, 1]'), IntPoly([0, 1, 0, 1]))
        self.assertEqual(parser.parse_poly('-3,0,1').coeffs, (-3, 0, 1))
        with self.assertRaises(UsageError):
            parser.parse_poly('1,x')

    def test_binomial(self):
        family = parser.parse_poly('binomial:2')
        self.assertEqual(family, parser.BinomialFamily(2))
        self.assertEqual(family.degree, 3)
        ctx = PrimeFieldCtx(7)
        resolved = parser.resolve_poly(family, ctx)
        self.assertIsInstance(resolved, ModPoly)
        self.assertEqual(resolved.degree, 3)
        with self.assertRaises(UsageError):
            parser.parse_poly('binomial:-1')

    def test_format(self):
        for text in ('1,0,1', 'binomial:4', '0,-2,5'):
            self.assertEqual(parser.format_poly(parser.parse_poly(text)), text)

class RangeParserTestCase(unittest.TestCase):
    def test_lists(self):
        self.assertEqual(parser.parse_int_list('101, 401'), [101, 401])
        self.assertEqual(parser.parse_int_list('[3,5,7]'), [3, 5, 7])
        self.assertEqual(parser.parse_int_list([3, 5]), [3, 5])
        with self.assertRaises(UsageError):
            parser.parse_int_list('3;5')

    def test_ranges(self):
        self.assertEqual(parser.parse_int_range('(1000, 20000)'), (1000, 20000))
        self.assertEqual(parser.parse_int_range([5, 5]), (5, 5))
        for bad in ('(10, 5)', '(1, 2, 3)', '7'):
            with self.assertRaises(UsageError):
                parser.parse_int_range(bad)

class IntervalPolicyTestCase(unittest.TestCase):
    def test_policies(self):
        self.assertEqual(parser.parse_interval_policy('full'), parser.IntervalPolicy('full', None))
        self.assertEqual(parser.parse_interval_policy('length:200'),
                         parser.IntervalPolicy('length', 200))
        self.assertEqual(parser.parse_interval_policy('fraction:0.5'),
                         parser.IntervalPolicy('fraction', 0.5))
        self.assertEqual(parser.parse_interval_policy('from:4'), parser.IntervalPolicy('from', 4))
        for text in ('full', 'length:200', 'fraction:0.25', 'from:4'):
            self.assertEqual(parser.format_interval_policy(parser.parse_interval_policy(text)),
                             text)

    def test_bad_policies(self):
        for text in ('half', 'length:0', 'fraction:1.5', 'length:x', 'from:-1'):
            with self.assertRaises(UsageError):
                parser.parse_interval_policy(text)

if __name__ == '__main__':
    unittest.main()
