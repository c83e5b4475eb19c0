# pylint: disable=invalid-name
''' Moment sums of consecutive character differences and the theorem verifiers.

The left-hand sides sum |f(n) - f(n+1)|^(2m) over an interval, where f is a
multiplicative or additive character composed with a polynomial. Each term
depends only on the exact exponent of f(n+1)/f(n) modulo the character's
order, so the kernels count exponents with numpy.bincount and weight the
counts with a table of |1 - e(j/M)|^(2m), one entry per exponent class.
'''
from collections import namedtuple
from math import comb, fsum, log, sqrt
import logging

import numpy

from charmoment.characters import AddChar, MultChar
from charmoment.constants import C_const, D_const, DEFAULT_TOL, qualifying_mass
from charmoment.errors import UsageError
from charmoment.poly import (CERTIFIED, INCONCLUSIVE, Certificate,
                             certify_not_tth_power_proportional, eval_mod_array)

LOGGER = logging.getLogger(__name__)

Decomposition = namedtuple('Decomposition', 'm1 m2 m3_count both_noncoprime')
Violations = namedtuple('Violations', 'plus_one minus_one excluded')
PowerSplit = namedtuple('PowerSplit', 'total main error')
MomentReport = namedtuple('MomentReport', ['N',
                                           'lhs',
                                           'constant',
                                           'constant_tail',
                                           'main_term',
                                           'abs_error',
                                           'normalized_error',
                                           'm1',
                                           'm2',
                                           'm3_count',
                                           'both_noncoprime',
                                           'condition_violations',
                                           'hypothesis',
                                           'hypothesis_reason',
                                           'in_range'])

class Interval(namedtuple('Interval', 'start length')):
    ''' The residues start, start+1, ..., start+length-1 taken mod p. '''
    __slots__ = ()

    def members(self, ctx):
        ''' The interval as an int64 array of residues. '''
        if not 1 <= self.length < ctx.p:
            raise UsageError(f'interval length {self.length} outside [1, {ctx.p - 1}]')
        return (self.start + numpy.arange(self.length, dtype=numpy.int64)) % ctx.p

def _consecutive_values(ctx, F, I):
    ''' The arrays n, F(n) and F(n+1) mod p over the interval. '''
    points = I.members(ctx)
    return (points,
            eval_mod_array(F, points, ctx).astype(numpy.int64),
            eval_mod_array(F, (points + 1) % ctx.p, ctx).astype(numpy.int64))

def chord_table(M, m):
    ''' |1 - e(j/M)|^(2m) = (2 - 2 cos(2 pi j / M))^m for j = 0..M-1. '''
    return (2.0 * numpy.abs(numpy.sin(numpy.pi * numpy.arange(M) / M))) ** (2 * m)

def _weighted(counts, table):
    ''' Order-independent sum of counts times table values. '''
    hit = counts.nonzero()[0]
    return fsum((counts[hit] * table[hit]).tolist())

def _mult_exponents(chi, values):
    _, current, following = values
    coprime = (current != 0) & (following != 0)
    return chi.ratio_exponents(following[coprime], current[coprime]), coprime

def _add_exponents(ctx, psi, values):
    _, current, following = values
    return psi.exponents((following - current) % ctx.p)

def _mult_ratio_exponents(ctx, chi, F, I):
    ''' Exponents of chi(F(n+1)/F(n)) mod t over the coprime n, and the coprime mask. '''
    values = _consecutive_values(ctx, F, I)
    exponents, coprime = _mult_exponents(chi, values)
    return values[0], exponents, coprime

def _add_ratio_exponents(ctx, psi, F, I):
    ''' Exponents a (F(n+1) - F(n)) mod p over the whole interval. '''
    values = _consecutive_values(ctx, F, I)
    return values[0], _add_exponents(ctx, psi, values)

def _moment(exponents, M, m):
    return _weighted(numpy.bincount(exponents, minlength=M), chord_table(M, m))

def lhs_moment_mult(ctx, chi, F, I, m):
    ''' Sum of |chi(F(n)) - chi(F(n+1))|^(2m) over n in I with F(n) F(n+1) != 0.

    Args:
        ctx (PrimeFieldCtx): the field.
        chi (MultChar): the multiplicative character.
        F (IntPoly or ModPoly): the polynomial.
        I (Interval): the interval.
        m (float): the exponent, 0 < m <= 1.

    Returns: the moment sum.
    '''
    _, exponents, _ = _mult_ratio_exponents(ctx, chi, F, I)
    return _moment(exponents, chi.t, m)

def lhs_moment_add(ctx, psi, F, I, m):
    ''' Sum of |psi(F(n)) - psi(F(n+1))|^(2m) over n in I. '''
    _, exponents = _add_ratio_exponents(ctx, psi, F, I)
    return _moment(exponents, ctx.p, m)

def _mult_flags(chi, points, exponents, coprime):
    tested = points[coprime]
    plus = tested[exponents == 0]
    minus = tested[exponents == chi.t // 2] if chi.t % 2 == 0 else tested[:0]
    return Violations(plus.tolist(), minus.tolist(), points[~coprime].tolist())

def check_condition_mult(ctx, chi, F, I):
    ''' Finds n where chi(F(n+1)) conj(chi(F(n))) is exactly +1 or -1.

    Returns: Violations with the flagged n for +1 and -1, and the n where
        F(n) F(n+1) = 0 (mod p), which are excluded from the test.
    '''
    return _mult_flags(chi, *_mult_ratio_exponents(ctx, chi, F, I))

def _add_flags(values):
    points, current, following = values
    return points[following == current].tolist()

def check_condition_add(ctx, F, I):
    ''' Finds n in I with F(n+1) = F(n) (mod p), the zeros of F(X+1) - F(X). '''
    return _add_flags(_consecutive_values(ctx, F, I))

def _split(values):
    _, current, following = values
    zero_now, zero_next = current == 0, following == 0
    return Decomposition(int(numpy.count_nonzero(~zero_now & zero_next)),
                         int(numpy.count_nonzero(zero_now & ~zero_next)),
                         int(numpy.count_nonzero(~zero_now & ~zero_next)),
                         int(numpy.count_nonzero(zero_now & zero_next)))

def decomposition(ctx, F, I):
    ''' Splits the interval by coprimality of F(n) and F(n+1) with p.

    Returns: Decomposition(m1, m2, m3_count, both_noncoprime) where m1 counts
        F(n) != 0 = F(n+1), m2 counts F(n) = 0 != F(n+1), m3_count counts both
        nonzero and both_noncoprime counts both zero.
    '''
    return _split(_consecutive_values(ctx, F, I))

def power_sum_split(ctx, char, F, I, k):
    ''' The k-th power sum of A(f, n) = Re f(n+1) conj f(n), split as in the main-term proof.

    The binomial expansion of (2 A)^k pairs r with the root f-ratio^(k-2r);
    the r with k = 2r modulo the order give the main part, the rest the error.

    Args:
        ctx (PrimeFieldCtx): the field.
        char (MultChar or AddChar): the character.
        F (IntPoly or ModPoly): the polynomial.
        I (Interval): the interval.
        k (int): the power, k >= 0.

    Returns: PowerSplit(total, main, error) with total = main + error.
    '''
    if isinstance(char, MultChar):
        _, exponents, _ = _mult_ratio_exponents(ctx, char, F, I)
    else:
        _, exponents = _add_ratio_exponents(ctx, char, F, I)
    M = char.t
    counts = numpy.bincount(exponents, minlength=M)
    angles = 2 * numpy.pi * numpy.arange(M) / M
    total = _weighted(counts, numpy.cos(angles) ** k)
    main = qualifying_mass(k, M) / 2**k * int(counts.sum())
    error = fsum(comb(k, r) / 2**k * _weighted(counts, numpy.cos((k - 2 * r) * angles))
                 for r in range(k + 1) if (k - 2 * r) % M)
    return PowerSplit(total, main, error)

def lhs_by_series(ctx, char, F, I, m, K):
    ''' The moment sum through the binomial expansion 2^m sum_{k<=K} c_k (-A)^k per term. '''
    if isinstance(char, MultChar):
        _, exponents, _ = _mult_ratio_exponents(ctx, char, F, I)
    else:
        _, exponents = _add_ratio_exponents(ctx, char, F, I)
    M = char.t
    counts = numpy.bincount(exponents, minlength=M)
    negated = -numpy.cos(2 * numpy.pi * numpy.arange(M) / M)
    partial = numpy.zeros(M)
    power = numpy.ones(M)
    coefficient = 1.0
    for j in range(K + 1):
        partial += coefficient * power
        power = power * negated
        coefficient *= (m - j) / (j + 1)
    return _weighted(counts, 2**m * partial)

def error_scale(p):
    ''' The error-term scale sqrt(p) log p. '''
    return sqrt(p) * log(p)

def _report(ctx, I, lhs, constant, parts, violations, certificate):
    N = I.length
    scale = error_scale(ctx.p)
    in_range = scale < N < ctx.p
    if not in_range:
        LOGGER.warning('interval length %d outside (sqrt(p) log p, p) = (%.1f, %d)',
                       N, scale, ctx.p)
    main_term = constant.value * N
    abs_error = abs(lhs - main_term)
    return MomentReport(N=N, lhs=lhs, constant=constant.value,
                        constant_tail=constant.tail_bound, main_term=main_term,
                        abs_error=abs_error, normalized_error=abs_error / scale,
                        m1=parts.m1, m2=parts.m2, m3_count=parts.m3_count,
                        both_noncoprime=parts.both_noncoprime,
                        condition_violations=violations,
                        hypothesis=certificate.status, hypothesis_reason=certificate.reason,
                        in_range=in_range)

def verify_thm1(ctx, chi, F, I, m, tol=DEFAULT_TOL):
    ''' Compares the multiplicative moment sum with C(t, m) |I|.

    Args:
        ctx (PrimeFieldCtx): the field.
        chi (MultChar): a character of order t > 2.
        F (IntPoly or ModPoly): the polynomial.
        I (Interval): the interval.
        m (float): the exponent, 0 < m <= 1.
        tol (float): Optional; the series tolerance for C.

    Returns: a MomentReport.
    '''
    if chi.t <= 2:
        raise UsageError(f'character order must exceed 2, got {chi.t}')
    certificate = certify_not_tth_power_proportional(F, chi.t, ctx)
    values = _consecutive_values(ctx, F, I)
    exponents, coprime = _mult_exponents(chi, values)
    lhs = _moment(exponents, chi.t, m)
    constant = C_const(m, chi.t, tol=tol, with_oracle=False)
    flags = _mult_flags(chi, values[0], exponents, coprime)
    violations = len(flags.plus_one) + len(flags.minus_one)
    return _report(ctx, I, lhs, constant, _split(values), violations, certificate)

def verify_thm2(ctx, psi, F, I, m, tol=DEFAULT_TOL):
    ''' Compares the additive moment sum with D(p, m) |I|.

    D is evaluated non-strictly: for large p its series is truncated below p
    and the tail bound travels in the report as constant_tail.

    Args:
        ctx (PrimeFieldCtx): the field.
        psi (AddChar): the additive character.
        F (IntPoly or ModPoly): the polynomial.
        I (Interval): the interval.
        m (float): the exponent, 0 < m <= 1.
        tol (float): Optional; the series tolerance for D.

    Returns: a MomentReport.
    '''
    if not isinstance(psi, AddChar):
        raise UsageError('verify_thm2 needs an additive character')
    values = _consecutive_values(ctx, F, I)
    lhs = _moment(_add_exponents(ctx, psi, values), ctx.p, m)
    constant = D_const(m, ctx.p, tol=tol, strict=False, with_oracle=False)
    flags = _add_flags(values)
    reduced = F.reduce(ctx)
    if reduced.degree < 2 or reduced.collapsed:
        certificate = Certificate(INCONCLUSIVE, 'degree collapse')
    elif flags:
        certificate = Certificate(INCONCLUSIVE, 'difference vanishes')
    else:
        certificate = Certificate(CERTIFIED, None)
    return _report(ctx, I, lhs, constant, _split(values), len(flags), certificate)
