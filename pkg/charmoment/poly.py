# pylint: disable=invalid-name
''' Integer polynomials and their algebra modulo p.

IntPoly holds exact integer coefficients; ModPoly is its image in F_p[X]. Both
store coefficients low degree first. The F_p[X] algorithms (gcd, derivative,
squarefree test) run on sympy's dense galoistools representation, which is
high degree first, so conversions happen at this module's boundary only.
'''
from collections import namedtuple
from math import comb, factorial

import numpy
from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gf

from charmoment.errors import BothZero, DegreeCollapse, FactorialDivisible, UsageError
from charmoment.field import mod_inv

CERTIFIED = 'Certified'
INCONCLUSIVE = 'Inconclusive'

class Certificate(namedtuple('Certificate', 'status reason')):
    ''' Outcome of the t-th power proportionality certificate. '''
    __slots__ = ()

    @property
    def certified(self):
        ''' True when every sub-check passed. '''
        return self.status == CERTIFIED

def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)

class IntPoly:
    ''' A polynomial with arbitrary-precision integer coefficients.

    Attributes:
        coeffs (tuple): coefficients, low degree first, no trailing zeros.
    '''
    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        self.coeffs = _strip(int(c) for c in coeffs)

    def __repr__(self):
        return f'IntPoly({list(self.coeffs)})'

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __sub__(self, other):
        size = max(len(self.coeffs), len(other.coeffs))
        left = self.coeffs + (0,) * (size - len(self.coeffs))
        right = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPoly(a - b for a, b in zip(left, right))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    @property
    def degree(self):
        ''' The degree, -1 for the zero polynomial. '''
        return len(self.coeffs) - 1

    @property
    def is_monic(self):
        ''' True when the leading coefficient is 1. '''
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def reduce(self, ctx):
        ''' Reduces the polynomial modulo ctx.p.

        Returns: a ModPoly remembering this polynomial's integer degree.
        '''
        return ModPoly((c % ctx.p for c in self.coeffs), ctx.p, int_degree=self.degree)

class ModPoly:
    ''' A polynomial over F_p.

    Attributes:
        coeffs (tuple): residues in [0, p-1], low degree first, no trailing zeros.
        p (int): the prime.
        int_degree (int): Optional; the degree of the integer polynomial it came from.
    '''
    __slots__ = ('coeffs', 'p', 'int_degree')

    def __init__(self, coeffs, p, int_degree=None):
        self.p = p
        self.coeffs = _strip(int(c) % p for c in coeffs)
        self.int_degree = int_degree if int_degree is not None else self.degree

    def __repr__(self):
        return f'ModPoly({list(self.coeffs)}, p={self.p})'

    def __eq__(self, other):
        return isinstance(other, ModPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    @property
    def degree(self):
        ''' The degree after reduction, -1 for the zero polynomial. '''
        return len(self.coeffs) - 1

    @property
    def collapsed(self):
        ''' True when reduction mod p dropped the degree. '''
        return self.degree < self.int_degree

    def lift(self):
        ''' The IntPoly with these residues as coefficients. '''
        return IntPoly(self.coeffs)

    def reduce(self, ctx):
        ''' Returns itself; lets ModPoly stand in wherever an IntPoly is reduced. '''
        if ctx.p != self.p:
            raise UsageError(f'polynomial over F_{self.p} used with p={ctx.p}')
        return self

    def to_gf(self):
        ''' The sympy galoistools (high degree first) representation. '''
        return [ZZ(c) for c in reversed(self.coeffs)]

    @classmethod
    def from_gf(cls, dense, p):
        ''' Builds a ModPoly from a galoistools dense list. '''
        return cls((int(c) for c in reversed(dense)), p)

def eval_mod(F, n, ctx):
    ''' Horner evaluation of F(n) modulo p.

    Args:
        F (IntPoly or ModPoly): the polynomial.
        n (int): the evaluation point.
        ctx (PrimeFieldCtx): the field.

    Returns: F(n) mod p in [0, p-1].
    '''
    p = ctx.p
    acc = 0
    for c in reversed(F.coeffs):
        acc = (acc * n + c) % p
    return acc

def eval_mod_array(F, points, ctx):
    ''' Vectorised Horner evaluation of F at an array of residues.

    Args:
        F (IntPoly or ModPoly): the polynomial.
        points (numpy.ndarray): residues in [0, p-1].
        ctx (PrimeFieldCtx): the field.

    Returns: an array of F(n) mod p.
    '''
    p = ctx.p
    # int64 Horner needs (p-1)^2 + p below 2^63
    dtype = numpy.int64 if p < 2**31 else object
    points = numpy.asarray(points).astype(dtype) % p
    acc = numpy.zeros(points.shape, dtype=dtype)
    for c in reversed(F.coeffs):
        acc = (acc * points + c % p) % p
    return acc

def taylor_shift(F):
    ''' The shifted polynomial F(X+1) with exact integer coefficients.

    Args:
        F (IntPoly): the polynomial.

    Returns: an IntPoly.
    '''
    coeffs = F.coeffs
    return IntPoly(sum(coeffs[i] * comb(i, j) for i in range(j, len(coeffs)))
                   for j in range(len(coeffs)))

def difference(F):
    ''' The forward difference F(X+1) - F(X). '''
    return taylor_shift(F) - F

def gcd_mod(A, B):
    ''' Monic gcd of two polynomials over F_p by Euclid.

    Args:
        A (ModPoly): the first polynomial.
        B (ModPoly): the second polynomial, over the same prime.

    Returns: the monic gcd as a ModPoly.
    '''
    if A.p != B.p:
        raise UsageError(f'gcd of polynomials over F_{A.p} and F_{B.p}')
    if A.degree < 0 and B.degree < 0:
        raise BothZero('gcd(0, 0) is undefined')
    return ModPoly.from_gf(gf.gf_gcd(A.to_gf(), B.to_gf(), A.p, ZZ), A.p)

def derivative_mod(F):
    ''' The formal derivative over F_p. '''
    return ModPoly.from_gf(gf.gf_diff(F.to_gf(), F.p, ZZ), F.p)

def squarefree_mod(F):
    ''' Tests whether gcd(F, F') = 1 over F_p.

    Args:
        F (ModPoly): a polynomial of degree at least 1 after reduction.

    Returns: True iff F is squarefree over F_p.
    '''
    if F.degree < 1:
        raise DegreeCollapse(f'{F!r} is constant modulo {F.p}')
    return bool(gf.gf_sqf_p(F.to_gf(), F.p, ZZ))

def certify_not_tth_power_proportional(F, t, ctx):
    ''' Certifies that F(X+1)/F(X) mod p is not c times a t-th power.

    Integer inputs must be monic of degree above 1. When F mod p is also
    squarefree and coprime to its shift, every zero and pole of F(X+1)/F(X)
    is simple, and multiplicity +-1 is never a multiple of t > 2. This is a
    sufficient certificate, not a decision procedure.

    Args:
        F (IntPoly or ModPoly): the polynomial.
        t (int): the character order, t > 2.
        ctx (PrimeFieldCtx): the field.

    Returns: a Certificate, Certified or Inconclusive with the failed sub-check.
    '''
    if t <= 2:
        raise UsageError(f'character order must exceed 2, got {t}')
    reduced = F.reduce(ctx)
    if reduced.degree < 1 or reduced.collapsed:
        return Certificate(INCONCLUSIVE, 'degree collapse')
    if reduced.degree <= 1:
        return Certificate(INCONCLUSIVE, 'degree not above 1')
    if isinstance(F, IntPoly) and not F.is_monic:
        return Certificate(INCONCLUSIVE, 'not monic')
    if reduced.int_degree >= ctx.p:
        return Certificate(INCONCLUSIVE, 'degree not below p')
    if not squarefree_mod(reduced):
        return Certificate(INCONCLUSIVE, 'not squarefree')
    shifted = taylor_shift(reduced.lift()).reduce(ctx)
    if gcd_mod(reduced, shifted).degree > 0:
        return Certificate(INCONCLUSIVE, 'shared factor')
    return Certificate(CERTIFIED, None)

def binomial_poly(d, ctx):
    ''' The polynomial binom(X, d+1) over F_p.

    Args:
        d (int): the degree parameter, d+1 < p.
        ctx (PrimeFieldCtx): the field.

    Returns: X(X-1)...(X-d) * inv((d+1)!) as a ModPoly.
    '''
    if d + 1 >= ctx.p:
        raise FactorialDivisible(f'({d}+1)! is divisible by {ctx.p}')
    falling = IntPoly((1,))
    for j in range(d + 1):
        falling = falling * IntPoly((-j, 1))
    scale = mod_inv(factorial(d + 1), ctx)
    return ModPoly((c * scale for c in falling.coeffs), ctx.p)
