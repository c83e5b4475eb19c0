''' Exact arithmetic in the prime field F_p.

Primality, inverses, primitive roots and discrete logarithms. A PrimeFieldCtx
bundles a prime with its smallest primitive root and, at desk scale, the full
index (discrete logarithm) table that the moment kernels look residues up in.
'''
from functools import cached_property
import logging
import math

import numpy
from sympy import isprime
from sympy.ntheory import factorint

from charmoment.errors import NotPrime, ZeroArgument, ZeroInverse

LOGGER = logging.getLogger(__name__)

# Largest p for which the O(p) index table is built
TABLE_THRESHOLD = 2**22

def is_prime(n):
    ''' Primality through sympy.isprime, deterministic below 2^64.

    Args:
        n (int): a non-negative integer.

    Returns: True iff n is prime.
    '''
    return bool(isprime(n))

def find_primitive_root(p):
    ''' Finds the smallest primitive root modulo an odd prime.

    Args:
        p (int): an odd prime.

    Returns: the smallest g >= 2 with g^((p-1)/q) != 1 for every prime q | p-1.
    '''
    order = p - 1
    cofactors = [order // q for q in factorint(order)]
    g = 2
    while any(pow(g, e, p) == 1 for e in cofactors):
        g += 1
    return g

def _build_index_table(p, g):
    ''' Builds x -> ind_g(x) for 1 <= x <= p-1 with entry 0 set to -1.

    Powers of g are generated a block of isqrt(p) at a time so the Python
    loop runs O(sqrt p) times.
    '''
    order = p - 1
    block = math.isqrt(order) + 1
    head = numpy.empty(block, dtype=numpy.int64)
    acc = 1
    for k in range(block):
        head[k] = acc
        acc = acc * g % p
    powers = numpy.empty(block * block, dtype=numpy.int64)
    row = head
    for i in range(block):
        powers[i * block:(i + 1) * block] = row
        row = row * acc % p
    table = numpy.full(p, -1, dtype=numpy.int64)
    table[powers[:order]] = numpy.arange(order, dtype=numpy.int64)
    return table

class PrimeFieldCtx:
    ''' The arena for residue arithmetic modulo an odd prime.

    Attributes:
        p (int): the odd prime.
        g (int): the smallest primitive root mod p.
        index_table (numpy.ndarray): Optional; ind_g(x) at position x, -1 at 0.
        table_threshold (int): the largest p for which the table is built.
    '''
    def __init__(self, p, table_threshold=TABLE_THRESHOLD, g=None):
        if p < 3 or not is_prime(p):
            raise NotPrime(f'{p} is not an odd prime')
        self._p = p
        self._g = g if g is not None else find_primitive_root(p)
        self._threshold = table_threshold
        self._table = _build_index_table(p, self._g) if p <= table_threshold else None
        if self._table is not None:
            self._table.setflags(write=False)
        LOGGER.debug('field p=%d g=%d table=%s', p, self._g, self._table is not None)

    def __repr__(self):
        return f'PrimeFieldCtx(p={self._p}, g={self._g})'

    @property
    def p(self):
        ''' The prime. '''
        return self._p

    @property
    def g(self):
        ''' The primitive root. '''
        return self._g

    @property
    def order(self):
        ''' The order p - 1 of F_p^x. '''
        return self._p - 1

    @property
    def index_table(self):
        ''' The read-only index table, or None above the threshold. '''
        return self._table

    @property
    def table_threshold(self):
        ''' The largest p for which the index table is built. '''
        return self._threshold

    @cached_property
    def _baby_steps(self):
        ''' Baby-step map g^j -> j for 0 <= j < isqrt(p-1)+1. '''
        size = math.isqrt(self.order) + 1
        steps = {}
        acc = 1
        for j in range(size):
            steps.setdefault(acc, j)
            acc = acc * self._g % self._p
        return steps

    def bsgs_log(self, x):
        ''' Baby-step giant-step discrete logarithm of a nonzero residue.

        Args:
            x (int): a residue not divisible by p.

        Returns: e in [0, p-2] with g^e = x (mod p).
        '''
        steps = self._baby_steps
        size = len(steps)
        giant = pow(self._g, -size, self._p)
        gamma = x % self._p
        for i in range(size + 1):
            j = steps.get(gamma)
            if j is not None:
                return (i * size + j) % self.order
            gamma = gamma * giant % self._p
        raise ArithmeticError(f'no logarithm of {x} to base {self._g} mod {self._p}')

    def indices(self, values):
        ''' Vectorised discrete logarithm of an array of nonzero residues.

        Args:
            values (numpy.ndarray): residues in [1, p-1].

        Returns: an int64 array of indices.
        '''
        values = numpy.asarray(values, dtype=numpy.int64)
        if self._table is not None:
            return self._table[values]
        return numpy.fromiter((self.bsgs_log(int(x)) for x in values.ravel()),
                              dtype=numpy.int64, count=values.size).reshape(values.shape)

def mod_inv(x, ctx):
    ''' Inverse of a residue modulo p.

    Args:
        x (int): the residue.
        ctx (PrimeFieldCtx): the field.

    Returns: y in [1, p-1] with x*y = 1 (mod p).
    '''
    if x % ctx.p == 0:
        raise ZeroInverse(f'{x} is not invertible modulo {ctx.p}')
    return pow(x, -1, ctx.p)

def discrete_log(ctx, x, use_table=True):
    ''' Discrete logarithm of x to the base ctx.g.

    Args:
        ctx (PrimeFieldCtx): the field.
        x (int): a residue not divisible by p.
        use_table (bool): Optional; set False to force baby-step giant-step.

    Returns: e in [0, p-2] with g^e = x (mod p).
    '''
    x %= ctx.p
    if x == 0:
        raise ZeroArgument(f'logarithm of 0 modulo {ctx.p}')
    if use_table and ctx.index_table is not None:
        return int(ctx.index_table[x])
    return ctx.bsgs_log(x)
