# pylint: disable=invalid-name
''' Main-term constants C(t, m) and D(p, m) by truncated binomial series.

With y_k = 2^-k * sum of binom(k, r) over 0 <= r <= k, 2r = k (mod M), the
constants are 2^m * sum_k (-1)^k c_k y_k for M = t (multiplicative) and
M = p (additive); u_k = c_k 2^k y_k and v_k likewise.

Summed as written the series converges like K^-m, because y_k keeps a
nonvanishing component from the roots +1 (and -1 when M is even). That
boundary component b_k = (1 + [M even] (-1)^k) / M is summed exactly by the
binomial theorem at x = -1 and x = 1, and only the remainder y_k - b_k is
truncated. Its tail is bounded rigorously by

    geometric:  |y_k - b_k| <= w rho^k, rho the largest |cos| off the boundary
    algebraic:  |y_k - b_k| <= sqrt(2/(pi k)) + nb/M

together with |c_k| <= m k^(-1-m). The geometric envelope reaches small
tolerances quickly for small M; for large M (the additive constant) the series
is truncated below M, where y_k is a central binomial mass, and the algebraic
envelope is reported as the tail bound.
'''
from collections import namedtuple
from fractions import Fraction
from math import comb, cos, fsum, gcd, pi, sqrt
import logging

import numpy

from charmoment.errors import NoConvergence, NotPrime, UsageError
from charmoment.field import is_prime

LOGGER = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_K_MAX = 100_000
# The additive oracle is O(p); it runs by default only up to this prime
ORACLE_PRIME_CAP = 100_000
# Largest modulus * terms product spent on the roots-of-unity filter
WORK_BUDGET = 50_000_000

TERMINATING = 'terminating'
GEOMETRIC = 'geometric'
WINDOWED = 'windowed'

SeriesParams = namedtuple('SeriesParams', 'm modulus tol K_max')
ConstantResult = namedtuple('ConstantResult', 'value K_used tail_bound oracle_value method')

def _validate(params):
    if not 0 < params.m <= 1:
        raise UsageError(f'm must lie in (0, 1], got {params.m}')
    if params.modulus < 2:
        raise UsageError(f'modulus must be at least 2, got {params.modulus}')
    if params.tol <= 0:
        raise UsageError(f'tolerance must be positive, got {params.tol}')
    if params.K_max < 1:
        raise UsageError(f'K_max must be positive, got {params.K_max}')

def binom_frac(m, k):
    ''' The generalised binomial coefficient c_k = binom(m, k).

    Args:
        m (float): the exponent.
        k (int): the index, k >= 0.

    Returns: c_0 = 1, c_k = c_{k-1} (m - k + 1) / k.
    '''
    if k < 0:
        raise UsageError(f'binomial index must be non-negative, got {k}')
    value = 1.0
    for j in range(1, k + 1):
        value *= (m - j + 1) / j
    return value

def qualifying_mass(k, modulus):
    ''' Exact sum of binom(k, r) over 0 <= r <= k with 2r = k (mod modulus). '''
    common = gcd(2, modulus)
    if k % common:
        return 0
    step = modulus // common
    start = (k // common) * pow(2 // common, -1, step) % step if step > 1 else 0
    return sum(comb(k, r) for r in range(start, k + 1, step))

def u_coeff(m, t, k):
    ''' u_k = c_k times the qualifying binomial mass modulo the order t. '''
    if t < 2:
        raise UsageError(f'order must be at least 2, got {t}')
    return binom_frac(m, k) * qualifying_mass(k, t)

def v_coeff(m, p, k):
    ''' v_k = c_k times the qualifying binomial mass modulo the prime p. '''
    if p < 3 or p % 2 == 0:
        raise UsageError(f'additive modulus must be an odd prime, got {p}')
    return binom_frac(m, k) * qualifying_mass(k, p)

def roots_avg_oracle(m, M):
    ''' Average of |1 - e(j/M)|^(2m) over the M-th roots of unity.

    Args:
        m (float): the exponent, 0 < m <= 1.
        M (int): the number of roots, M >= 2.

    Returns: the average, computed directly in floating point.
    '''
    if M < 2:
        raise UsageError(f'oracle needs at least 2 roots, got {M}')
    chords = 2.0 * numpy.abs(numpy.sin(numpy.pi * numpy.arange(M) / M))
    return fsum(chords ** (2 * m)) / M

def _boundary_roots(modulus):
    return 1 + (modulus % 2 == 0)

def _contraction(modulus):
    ''' Largest |cos(2 pi j / M)| over the roots other than +1 and -1. '''
    if modulus == 2:
        return 0.0
    return abs(cos(pi / modulus)) if modulus % 2 else abs(cos(2 * pi / modulus))

def _geometric_envelope(m, K, modulus):
    weight = (modulus - _boundary_roots(modulus)) / modulus
    if weight == 0:
        return 0.0
    rho = _contraction(modulus)
    if rho >= 1.0:
        return float('inf')
    return 2**m * m * (K + 1)**(-1 - m) * weight * rho**(K + 1) / (1 - rho)

def _algebraic_envelope(m, K, modulus):
    if K < 1:
        return float('inf')
    return 2**m * (m * sqrt(2 / pi) * K**(-0.5 - m) / (0.5 + m)
                   + _boundary_roots(modulus) / modulus * K**(-m))

def tail_envelope(m, K, modulus):
    ''' Rigorous bound on the remainder series beyond index K. '''
    return min(_geometric_envelope(m, K, modulus), _algebraic_envelope(m, K, modulus))

def _plan_geometric(m, modulus, tol, K_max):
    ''' Smallest K <= K_max whose envelope meets tol, or None. '''
    if tail_envelope(m, K_max, modulus) > tol:
        return None
    low, high = 0, K_max
    while low < high:
        mid = (low + high) // 2
        if tail_envelope(m, mid, modulus) <= tol:
            high = mid
        else:
            low = mid + 1
    return low

def folded_masses(modulus, K):
    ''' y_0..y_K by the roots-of-unity filter y_k = (1/M) sum_j cos(2 pi j / M)^k.

    cos is symmetric under j -> M - j, so only j <= M/2 are powered, the
    interior ones counted twice.
    '''
    masses = numpy.zeros(K + 1)
    for j in range(modulus // 2 + 1):
        weight = 1.0 if j == 0 or 2 * j == modulus else 2.0
        powers = numpy.cumprod(numpy.full(K, cos(2 * pi * j / modulus)))
        masses += weight * numpy.concatenate(([1.0], powers))
    return masses / modulus

def central_masses(K):
    ''' y_0..y_K for K below the modulus: 2^-k binom(k, k/2) at even k, else 0. '''
    masses = numpy.zeros(K + 1)
    halves = numpy.arange(1, K // 2 + 1)
    masses[0::2] = numpy.concatenate(([1.0], numpy.cumprod((2 * halves - 1) / (2 * halves))))
    return masses

def _coefficients(m, K):
    ''' c_0..c_K as a float array. '''
    ratios = (m - numpy.arange(K)) / numpy.arange(1, K + 1)
    return numpy.concatenate(([1.0], numpy.cumprod(ratios)))

def _terminating(m, modulus):
    ''' Exact evaluation when m is a positive integer, so c_k = 0 beyond m. '''
    degree = int(m)
    total = sum(Fraction((-1)**k * comb(degree, k) * qualifying_mass(k, modulus), 2**k)
                for k in range(degree + 1))
    return ConstantResult(float(2**degree * total), degree + 1, 0.0, None, TERMINATING)

def series_constant(params, strict=True):
    ''' Evaluates 2^m sum_k (-1)^k c_k y_k for the given modulus.

    Args:
        params (SeriesParams): m, modulus, tolerance and term cap.
        strict (bool): Optional; raise NoConvergence when K_max stops the series
            before the tail bound meets tol. A series that runs to the end of
            its window (K = modulus - 1) is returned with its tail bound.

    Returns: a ConstantResult without oracle value.
    '''
    _validate(params)
    m, modulus, tol, K_max = params
    if float(m).is_integer():
        return _terminating(m, modulus)

    K = _plan_geometric(m, modulus, tol, K_max)
    if K is not None and modulus * K <= WORK_BUDGET:
        method = GEOMETRIC
        masses = folded_masses(modulus, K)
    else:
        method = WINDOWED
        K = min(modulus - 1, K_max)
        masses = central_masses(K)
    tail_bound = tail_envelope(m, K, modulus)
    # Reaching the end of the window is not a failure; a K_max cut is
    if strict and tail_bound > tol and K < modulus - 1:
        raise NoConvergence(f'tail bound {tail_bound:.3e} above tol {tol:.1e} '
                            f'after {K + 1} terms (m={m}, modulus={modulus})')

    k = numpy.arange(K + 1)
    if modulus % 2:
        boundary = numpy.full(K + 1, 1.0 / modulus)
    else:
        boundary = numpy.where(k % 2 == 0, 2.0 / modulus, 0.0)
    signs = numpy.where(k % 2 == 0, 1.0, -1.0)
    terms = 2**m * signs * _coefficients(m, K) * (masses - boundary)
    # The boundary roots sum to (1-1)^m = 0 and, for even M, (1+1)^m = 2^m
    exact = 4**m / modulus if modulus % 2 == 0 else 0.0
    value = exact + fsum(terms)
    LOGGER.debug('series m=%s modulus=%d method=%s K=%d tail=%.3e', m, modulus, method, K,
                 tail_bound)
    return ConstantResult(value, K + 1, tail_bound, None, method)

def C_const(m, t, tol=DEFAULT_TOL, K_max=DEFAULT_K_MAX, strict=True, with_oracle=True):
    ''' The multiplicative main-term constant C(t, m).

    C depends on the character only through its order t, so it is keyed by t.

    Args:
        m (float): the moment exponent, 0 < m <= 1.
        t (int): the character order, t > 2.
        tol (float): Optional; the truncation tolerance.
        K_max (int): Optional; the hard cap on series length.
        strict (bool): Optional; raise NoConvergence when K_max stops short of tol.
        with_oracle (bool): Optional; also compute the roots-of-unity average.

    Returns: a ConstantResult.
    '''
    if t <= 2:
        raise UsageError(f'character order must exceed 2, got {t}')
    result = series_constant(SeriesParams(m, t, tol, K_max), strict=strict)
    if with_oracle:
        result = result._replace(oracle_value=roots_avg_oracle(m, t))
    return result

def D_const(m, p, tol=DEFAULT_TOL, K_max=DEFAULT_K_MAX, strict=True, with_oracle=None):
    ''' The additive main-term constant D(p, m).

    Args:
        m (float): the moment exponent, 0 < m <= 1.
        p (int): the odd prime.
        tol (float): Optional; the truncation tolerance.
        K_max (int): Optional; the hard cap on series length.
        strict (bool): Optional; raise NoConvergence when K_max stops short of tol.
        with_oracle (bool): Optional; defaults to p <= ORACLE_PRIME_CAP.

    Returns: a ConstantResult.
    '''
    if p < 3 or p % 2 == 0:
        raise UsageError(f'additive modulus must be an odd prime, got {p}')
    if not is_prime(p):
        raise NotPrime(f'{p} is not an odd prime')
    result = series_constant(SeriesParams(m, p, tol, K_max), strict=strict)
    if with_oracle is None:
        with_oracle = p <= ORACLE_PRIME_CAP
    if with_oracle:
        result = result._replace(oracle_value=roots_avg_oracle(m, p))
    return result
