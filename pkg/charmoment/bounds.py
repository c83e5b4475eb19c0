# pylint: disable=invalid-name
''' Numerical checks of the analytic bounds behind the moment theorems.

Complete sums S(b/p) = sum_x psi(G(x)) e(-bx/p), the completion of an
incomplete additive sum against the interval kernel, the Weil bound, the
normalized Fourier transform and the sliding-sum bound for p-periodic
functions. Nothing here proves a bound; each check returns a BoundCheck
whose ok field is lhs_mag <= rhs.
'''
from collections import namedtuple
from math import e, fsum, log, pi, sqrt

import numpy

from charmoment.characters import MultChar
from charmoment.errors import DegenerateDegree, IntervalOutOfRange, UsageError
from charmoment.moments import decomposition, lhs_moment_add, lhs_moment_mult
from charmoment.poly import eval_mod_array

FOURIER_CAP = 4096
# float sums of p unit roots; the bound sides are exact
ROUNDING_SLACK = 1e-9
COMPLETION_TOL = 1e-8

class BoundCheck(namedtuple('BoundCheck', 'lhs_mag rhs ok context')):
    ''' One inequality lhs_mag <= rhs with a description of where it came from. '''
    __slots__ = ()

    @classmethod
    def of(cls, lhs_mag, rhs, context):
        ''' Builds the check with ok derived from the two sides. '''
        return cls(float(lhs_mag), float(rhs), bool(lhs_mag <= rhs), context)

class PeriodicTable(namedtuple('PeriodicTable', 'p values')):
    ''' A function on Z/pZ given by its p complex values phi(0..p-1). '''
    __slots__ = ()

    def __new__(cls, p, values):
        values = numpy.asarray(values, dtype=complex)
        if values.shape != (p,):
            raise UsageError(f'periodic table needs exactly {p} values, got {values.shape}')
        return super().__new__(cls, p, values)

def _pair(z):
    return [float(z.real), float(z.imag)]

def _unit_roots(M):
    return numpy.exp(2j * pi * numpy.arange(M) / M)

def _root_sum(exponents, M):
    ''' sum_j e(exponents[j] / M), reduced through exponent counts. '''
    counts = numpy.bincount(exponents, minlength=M)
    hit = counts.nonzero()[0]
    angles = 2 * pi * hit / M
    return complex(fsum(counts[hit] * numpy.cos(angles)),
                   fsum(counts[hit] * numpy.sin(angles)))

def _reduced_degree(ctx, G, minimum):
    degree = G.reduce(ctx).degree
    if not minimum <= degree < ctx.p:
        raise DegenerateDegree(f'degree {degree} of {G!r} mod {ctx.p} '
                               f'is outside [{minimum}, {ctx.p})')
    return degree

def _psi_exponents(ctx, psi, G, points):
    return psi.exponents(eval_mod_array(G, points, ctx).astype(numpy.int64))

def _members(ctx, I):
    # a full period is allowed here, unlike the moment intervals
    if not 1 <= I.length <= ctx.p:
        raise UsageError(f'interval length {I.length} outside [1, {ctx.p}]')
    return (I.start + numpy.arange(I.length, dtype=numpy.int64)) % ctx.p

def twisted_complete_sum(ctx, psi, G, b):
    ''' The complete sum S(b/p) = sum_{x mod p} psi(G(x)) e(-bx/p).

    Args:
        ctx (PrimeFieldCtx): the field.
        psi (AddChar): the additive character.
        G (IntPoly or ModPoly): the polynomial.
        b (int): the twist.

    Returns: the complex sum.
    '''
    x = numpy.arange(ctx.p, dtype=numpy.int64)
    exponents = (_psi_exponents(ctx, psi, G, x) - (b % ctx.p) * x) % ctx.p
    return _root_sum(exponents, ctx.p)

def _all_twists(ctx, psi, G):
    ''' S(b/p) for b = 0..p-1 as one discrete Fourier transform. '''
    x = numpy.arange(ctx.p, dtype=numpy.int64)
    return numpy.fft.fft(_unit_roots(ctx.p)[_psi_exponents(ctx, psi, G, x)])

def weil_check(ctx, psi, G):
    ''' Checks |sum_x psi(G(x))| <= (d_p - 1) sqrt(p) with d_p the degree of G mod p. '''
    degree = _reduced_degree(ctx, G, 1)
    lhs = abs(twisted_complete_sum(ctx, psi, G, 0))
    rhs = (degree - 1) * sqrt(ctx.p) + ROUNDING_SLACK * sqrt(ctx.p)
    return BoundCheck.of(lhs, rhs, {'check': 'weil', 'p': ctx.p, 'a': psi.a, 'degree': degree})

def twisted_weil_check(ctx, psi, G):
    ''' Checks max_b |S(b/p)| <= (d_p - 1) sqrt(p) over every twist b.

    Linear G is excluded since its twist by the matching b is the full sum p.
    '''
    degree = _reduced_degree(ctx, G, 2)
    twists = numpy.abs(_all_twists(ctx, psi, G))
    worst = int(twists.argmax())
    rhs = (degree - 1) * sqrt(ctx.p) + ROUNDING_SLACK * sqrt(ctx.p)
    return BoundCheck.of(twists[worst], rhs, {'check': 'twisted-weil', 'p': ctx.p,
                                              'a': psi.a, 'degree': degree, 'worst_b': worst})

def interval_kernel(ctx, I):
    ''' lambda(b/p) = sum_{n in I} e(bn/p) for b = 0..p-1 in closed form. '''
    b = numpy.arange(ctx.p)
    kernel = numpy.full(ctx.p, complex(I.length))
    twist = numpy.exp(2j * pi * b[1:] / ctx.p)
    start = numpy.exp(2j * pi * (b[1:] * I.start % ctx.p) / ctx.p)
    span = numpy.exp(2j * pi * (b[1:] * I.length % ctx.p) / ctx.p)
    kernel[1:] = start * (span - 1) / (twist - 1)
    return kernel

def completion_identity_check(ctx, psi, G, I):
    ''' Compares sum_{n in I} psi(G(n)) with (1/p) sum_b lambda(b/p) S(b/p).

    Returns: a BoundCheck on |direct - completed| against 1e-8 sqrt(p), with
        both values in the context.
    '''
    direct = _root_sum(_psi_exponents(ctx, psi, G, _members(ctx, I)), ctx.p)
    completed = complex(numpy.sum(interval_kernel(ctx, I) * _all_twists(ctx, psi, G)) / ctx.p)
    return BoundCheck.of(abs(direct - completed), COMPLETION_TOL * sqrt(ctx.p),
                         {'check': 'completion', 'p': ctx.p, 'a': psi.a,
                          'start': I.start, 'length': I.length,
                          'direct': _pair(direct), 'completed': _pair(completed)})

def incomplete_sum_bound_check(ctx, psi, G, I):
    ''' Checks |sum_{n in I} psi(G(n))| against the completion envelope.

    For d_p >= 2 the envelope is (d_p - 1) sqrt(p) (1 + ln p), which bounds
    (d_p - 1) sqrt(p) (|I|/p + H_{(p-1)/2}) from the completed sum. A linear
    G is a geometric sum bounded by min(|I|, 1/(2 ||a c/p||)).
    '''
    degree = _reduced_degree(ctx, G, 1)
    lhs = abs(_root_sum(_psi_exponents(ctx, psi, G, _members(ctx, I)), ctx.p))
    if degree == 1:
        slope = psi.a * G.reduce(ctx).coeffs[1] % ctx.p
        rhs = min(I.length, 1 / (2 * min(slope, ctx.p - slope) / ctx.p))
    else:
        rhs = (degree - 1) * sqrt(ctx.p) * (1 + log(ctx.p))
    rhs += ROUNDING_SLACK * sqrt(ctx.p)
    return BoundCheck.of(lhs, rhs, {'check': 'incomplete-sum', 'p': ctx.p, 'a': psi.a,
                                    'degree': degree, 'length': I.length})

def normalized_fourier(phi, cap=FOURIER_CAP):
    ''' The transform phi_hat(h) = p^(-1/2) sum_x phi(x) e(hx/p) by direct summation.

    Args:
        phi (PeriodicTable): the function.
        cap (int): Optional; the largest p accepted.

    Returns: a PeriodicTable of phi_hat.
    '''
    p = phi.p
    if p > cap:
        raise UsageError(f'p={p} exceeds the Fourier cap {cap}')
    roots = _unit_roots(p)
    x = numpy.arange(p, dtype=numpy.int64)
    hat = numpy.fromiter((numpy.dot(phi.values, roots[h * x % p]) for h in range(p)),
                         dtype=complex, count=p)
    return PeriodicTable(p, hat / sqrt(p))

def fkm_constant(phi, cap=FOURIER_CAP):
    ''' c = max(sup |phi|, sup |phi_hat|), computed from the tables. '''
    return float(max(numpy.abs(phi.values).max(),
                     numpy.abs(normalized_fourier(phi, cap).values).max()))

def fkm_bound_check(phi, I, cap=FOURIER_CAP, c=None):
    ''' Checks |sum_{n in I} phi(n)| <= c sqrt(p) ln(4 e^8 |I| / sqrt(p)).

    Args:
        phi (PeriodicTable): the function.
        I (Interval): the interval, sqrt(p) < |I| <= p.
        cap (int): Optional; the largest p whose transform is computed.
        c (float): Optional; fkm_constant(phi), when several intervals share phi.
    '''
    p = phi.p
    if not sqrt(p) < I.length <= p:
        raise IntervalOutOfRange(f'|I|={I.length} outside (sqrt({p}), {p}]')
    members = (I.start + numpy.arange(I.length, dtype=numpy.int64)) % p
    total = phi.values[members]
    lhs = abs(complex(fsum(total.real.tolist()), fsum(total.imag.tolist())))
    if c is None:
        c = fkm_constant(phi, cap)
    rhs = c * sqrt(p) * log(4 * e**8 * I.length / sqrt(p))
    return BoundCheck.of(lhs, rhs, {'check': 'fkm', 'p': p, 'length': I.length,
                                    'c': float(c), 'boundary': I.length == p})

def character_ratio_table(ctx, chi, F, power=1, b=0):
    ''' The table phi(n) = chi^power(F(n+1)/F(n)) e(-bn/p), zero where F(n)F(n+1) = 0. '''
    x = numpy.arange(ctx.p, dtype=numpy.int64)
    current = eval_mod_array(F, x, ctx).astype(numpy.int64)
    following = eval_mod_array(F, (x + 1) % ctx.p, ctx).astype(numpy.int64)
    coprime = (current != 0) & (following != 0)
    character = chi.power(power)
    values = numpy.zeros(ctx.p, dtype=complex)
    exponents = character.ratio_exponents(following[coprime], current[coprime])
    values[coprime] = _unit_roots(character.t)[exponents]
    return PeriodicTable(ctx.p, values * _unit_roots(ctx.p)[(-b % ctx.p) * x % ctx.p])

def mixed_char_sum(ctx, chi, F_num, F_den, b, I):
    ''' sum over n in I with F_num(n) F_den(n) != 0 of chi(F_num(n)/F_den(n)) e(-bn/p). '''
    points = _members(ctx, I)
    num = eval_mod_array(F_num, points, ctx).astype(numpy.int64)
    den = eval_mod_array(F_den, points, ctx).astype(numpy.int64)
    valid = (num != 0) & (den != 0)
    j = chi.ratio_exponents(num[valid], den[valid])
    # e(j/t - bn/p) as one exponent modulo t p; bn is reduced before scaling so every
    # intermediate stays below t p
    modulus = chi.t * ctx.p
    twist = (b % ctx.p) * points[valid] % ctx.p
    exponents = (j * ctx.p + (modulus - twist * chi.t)) % modulus
    angles = 2 * pi * exponents / modulus
    return complex(fsum(numpy.cos(angles)), fsum(numpy.sin(angles)))

def cauchy_schwarz_check(ctx, char, F, I):
    ''' Checks the first moment against sqrt(terms) times the root of the second moment. '''
    if isinstance(char, MultChar):
        first, second = (lhs_moment_mult(ctx, char, F, I, m) for m in (0.5, 1.0))
        terms = decomposition(ctx, F, I).m3_count
    else:
        first, second = (lhs_moment_add(ctx, char, F, I, m) for m in (0.5, 1.0))
        terms = I.length
    rhs = sqrt(terms * second) * (1 + ROUNDING_SLACK)
    return BoundCheck.of(first, rhs, {'check': 'cauchy-schwarz', 'p': ctx.p, 'terms': terms})
