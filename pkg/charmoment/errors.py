''' Exceptions raised by the charmoment package.

Every error derives from ValueError so that callers catching the broad
ValueError (bad input of any kind) keep working.
'''

class CharMomentError(ValueError):
    ''' Base class for charmoment errors. '''

class NotPrime(CharMomentError):
    ''' The modulus is not an odd prime. '''

class ZeroInverse(CharMomentError):
    ''' Inversion of a residue divisible by p. '''

class ZeroArgument(CharMomentError):
    ''' Discrete logarithm of a residue divisible by p. '''

class BothZero(CharMomentError):
    ''' The gcd of two zero polynomials was requested. '''

class DegreeCollapse(CharMomentError):
    ''' A polynomial reduces to a constant modulo p. '''

class FactorialDivisible(CharMomentError):
    ''' (d+1)! is divisible by p, so binom(X, d+1) has no F_p model. '''

class OrderNotDividing(CharMomentError):
    ''' The requested character order does not divide p - 1. '''

class NoConvergence(CharMomentError):
    ''' A truncated series did not reach its tolerance within K_max terms. '''

class DegenerateDegree(CharMomentError):
    ''' The reduced degree is outside the range a Weil-type bound needs. '''

class IntervalOutOfRange(CharMomentError):
    ''' The interval length is outside the range a bound applies to. '''

class EmptySweep(CharMomentError):
    ''' No admissible prime was found in a sweep. '''

class TooFewPoints(CharMomentError):
    ''' Not enough records to fit a trend. '''

class IoFailure(CharMomentError):
    ''' Records could not be written or read. '''

class UsageError(CharMomentError):
    ''' Inconsistent experiment or command line parameters. '''
