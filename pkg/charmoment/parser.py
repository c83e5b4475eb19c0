''' Parsing tools for command line and configuration values. '''
from collections import namedtuple
from re import sub

from charmoment.errors import UsageError
from charmoment.poly import IntPoly, binomial_poly

FULL = 'full'
LENGTH = 'length'
FRACTION = 'fraction'
FROM = 'from'
INTERVAL_POLICIES = (FULL, LENGTH, FRACTION, FROM)

IntervalPolicy = namedtuple('IntervalPolicy', 'kind value')

class BinomialFamily(namedtuple('BinomialFamily', 'd')):
    ''' The family binom(X, d+1), built separately over each F_p. '''
    __slots__ = ()

    @property
    def degree(self):
        ''' The integer degree d+1. '''
        return self.d + 1

    def __str__(self):
        return f'binomial:{self.d}'

def _strip_brackets(text):
    return sub(r'[\(\)\[\] ]', '', text)

def parse_poly(text):
    ''' Parses a polynomial.

    Args:
        text (str): comma separated integer coefficients, constant term first
            ("1,0,1" is X^2 + 1), or "binomial:d" for binom(X, d+1).

    Returns: an IntPoly or a BinomialFamily.
    '''
    text = _strip_brackets(str(text))
    if text.startswith('binomial:'):
        try:
            d = int(text.split(':', 1)[1])
        except ValueError as error:
            raise UsageError(f'bad binomial degree in {text!r}') from error
        if d < 0:
            raise UsageError(f'binomial degree must be non-negative, got {d}')
        return BinomialFamily(d)
    try:
        return IntPoly(int(c) for c in text.split(','))
    except ValueError as error:
        raise UsageError(f'bad polynomial coefficients {text!r}') from error

def format_poly(F):
    ''' The inverse of parse_poly. '''
    if isinstance(F, BinomialFamily):
        return str(F)
    return ','.join(str(c) for c in F.coeffs) or '0'

def resolve_poly(F, ctx):
    ''' The polynomial to use over ctx.p; a BinomialFamily is built there. '''
    return binomial_poly(F.d, ctx) if isinstance(F, BinomialFamily) else F

def parse_int_list(text):
    ''' Parses "101, 401" or "[101, 401]" into a list of integers. '''
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(x) for x in _strip_brackets(text).split(',') if x]
    except ValueError as error:
        raise UsageError(f'bad integer list {text!r}') from error

def parse_int_range(text):
    ''' Parses "(lo, hi)" into an inclusive (lo, hi) tuple. '''
    bounds = parse_int_list(text)
    if len(bounds) != 2 or bounds[0] > bounds[1]:
        raise UsageError(f'expected an increasing pair (lo, hi), got {text!r}')
    return tuple(bounds)

def parse_interval_policy(text):
    ''' Parses an interval policy.

    Args:
        text (str): "full", "length:N", "fraction:f" with 0 < f < 1, or
            "from:s" for the residues s..p-1.

    Returns: an IntervalPolicy.
    '''
    kind, _, value = str(text).partition(':')
    if kind not in INTERVAL_POLICIES:
        raise UsageError(f'unknown interval policy {text!r}')
    if kind == FULL:
        return IntervalPolicy(FULL, None)
    try:
        value = float(value) if kind == FRACTION else int(value)
    except ValueError as error:
        raise UsageError(f'bad value in interval policy {text!r}') from error
    if kind == FRACTION and not 0 < value < 1:
        raise UsageError(f'interval fraction must lie in (0, 1), got {value}')
    if kind in (LENGTH, FROM) and value < (1 if kind == LENGTH else 0):
        raise UsageError(f'bad value in interval policy {text!r}')
    return IntervalPolicy(kind, value)

def format_interval_policy(policy):
    ''' The inverse of parse_interval_policy. '''
    return policy.kind if policy.kind == FULL else f'{policy.kind}:{policy.value}'
