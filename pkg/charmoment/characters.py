''' Multiplicative and additive characters of F_p with exact values.

Character values are roots of unity, kept as RootIndex(k, M) = e(k/M) so that
the equalities to +1 and -1 the moment conditions depend on are integer tests.
Conversion to complex happens only where sums are formed.
'''
from collections import namedtuple
from math import gcd
import cmath

import numpy

from charmoment.errors import OrderNotDividing, UsageError
from charmoment.field import discrete_log

class RootIndex(namedtuple('RootIndex', 'k modulus zero')):
    ''' The root of unity e(k/modulus), or the value 0 when zero is set. '''
    __slots__ = ()

    def __new__(cls, k, modulus, zero=False):
        if zero:
            return super().__new__(cls, 0, 1, True)
        return super().__new__(cls, k % modulus, modulus, False)

    def __mul__(self, other):
        if self.zero or other.zero:
            return ZERO
        modulus = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        return RootIndex(self.k * (modulus // self.modulus)
                         + other.k * (modulus // other.modulus), modulus).reduced()

    def conjugate(self):
        ''' The complex conjugate e(-k/M). '''
        return self if self.zero else RootIndex(-self.k, self.modulus)

    def reduced(self):
        ''' The same root with k/M in lowest terms. '''
        if self.zero:
            return self
        common = gcd(self.k, self.modulus)
        return RootIndex(self.k // common, self.modulus // common)

    @property
    def is_one(self):
        ''' Exact test for the value 1. '''
        return not self.zero and self.k == 0

    @property
    def is_minus_one(self):
        ''' Exact test for the value -1. '''
        return not self.zero and self.modulus % 2 == 0 and self.k == self.modulus // 2

    def to_complex(self):
        ''' The complex value. '''
        if self.zero:
            return 0j
        return cmath.exp(2j * cmath.pi * self.k / self.modulus)

ZERO = RootIndex(0, 1, zero=True)

class MultChar:
    ''' The multiplicative character x -> e(s ind_g(x) / (p-1)), with chi(0) = 0.

    Attributes:
        ctx (PrimeFieldCtx): the field.
        s (int): the exponent in [0, p-2]; 0 is the trivial character.
        t (int): the order (p-1)/gcd(s, p-1).
    '''
    def __init__(self, ctx, s):
        self.ctx = ctx
        self.s = s % ctx.order
        self.t = ctx.order // gcd(self.s, ctx.order)
        # chi(x) = e(step * ind(x) / t)
        self.step = self.s * self.t // ctx.order

    def __repr__(self):
        return f'MultChar(p={self.ctx.p}, s={self.s}, t={self.t})'

    def power(self, j):
        ''' The character chi^j. '''
        return MultChar(self.ctx, self.s * j)

    def exponents(self, values):
        ''' Vectorised chi on nonzero residues as exponents mod t.

        Args:
            values (numpy.ndarray): residues in [1, p-1].

        Returns: an int64 array j with chi(x) = e(j/t).
        '''
        return self.step * self.ctx.indices(values) % self.t

    def ratio_exponents(self, numerators, denominators):
        ''' Vectorised chi(num/den) as exponents mod t, both arrays nonzero. '''
        return self.step * (self.ctx.indices(numerators)
                            - self.ctx.indices(denominators)) % self.t

class AddChar:
    ''' The additive character x -> e(a x / p).

    Attributes:
        ctx (PrimeFieldCtx): the field.
        a (int): the parameter in [1, p-1].
    '''
    def __init__(self, ctx, a):
        if a % ctx.p == 0:
            raise UsageError(f'additive parameter {a} is divisible by {ctx.p}')
        self.ctx = ctx
        self.a = a % ctx.p

    def __repr__(self):
        return f'AddChar(p={self.ctx.p}, a={self.a})'

    @property
    def t(self):
        ''' The order of the character values, p. '''
        return self.ctx.p

    def exponents(self, values):
        ''' Vectorised psi as exponents mod p. '''
        return self.a * numpy.asarray(values, dtype=numpy.int64) % self.ctx.p

def mult_char_of_order(ctx, t):
    ''' Builds the character of order t with s = (p-1)/t.

    Args:
        ctx (PrimeFieldCtx): the field.
        t (int): the order, t > 1 and t | p-1.

    Returns: a MultChar.
    '''
    if t <= 1:
        raise UsageError(f'character order must exceed 1, got {t}')
    if ctx.order % t:
        raise OrderNotDividing(f'{t} does not divide {ctx.order}')
    return MultChar(ctx, ctx.order // t)

def eval_mult(chi, x):
    ''' Evaluates chi(x) exactly.

    Returns: ZERO when p | x, else RootIndex(s ind(x) mod (p-1), p-1).
    '''
    if x % chi.ctx.p == 0:
        return ZERO
    return RootIndex(chi.s * discrete_log(chi.ctx, x), chi.ctx.order)

def eval_add(psi, x):
    ''' Evaluates psi(x) exactly as RootIndex(a x mod p, p). '''
    return RootIndex(psi.a * x, psi.ctx.p)
