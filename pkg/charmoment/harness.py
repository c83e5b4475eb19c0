# pylint: disable=invalid-name
''' Prime sweeps over the moment theorems: configuration, records, persistence, trends. '''
from collections import namedtuple
from functools import partial
from math import comb, sqrt
from multiprocessing import Pool, cpu_count
from pathlib import Path
from time import perf_counter
import csv
import json
import logging
import sys

import numpy
from sympy import primerange

from charmoment.bounds import (FOURIER_CAP, BoundCheck, character_ratio_table,
                               fkm_bound_check, incomplete_sum_bound_check)
from charmoment.characters import AddChar, mult_char_of_order
from charmoment.constants import DEFAULT_TOL
from charmoment.errors import (CharMomentError, EmptySweep, IoFailure, TooFewPoints,
                               UsageError)
from charmoment.field import PrimeFieldCtx
from charmoment.moments import Interval, error_scale, verify_thm1, verify_thm2
from charmoment.parser import (FRACTION, FROM, FULL, LENGTH, BinomialFamily, IntervalPolicy,
                               format_interval_policy, format_poly, parse_int_list,
                               parse_int_range, parse_interval_policy, parse_poly,
                               resolve_poly)
from charmoment.poly import binomial_poly, difference, eval_mod

LOGGER = logging.getLogger(__name__)

THM1 = 'thm1'
THM2 = 'thm2'
SLOPE_LIMIT = 1.1
PILOT_FACTOR = 3.0

ExperimentSpec = namedtuple('ExperimentSpec', ['mode',
                                               'prime_range',
                                               'prime_list',
                                               'poly',
                                               't',
                                               'a',
                                               'm',
                                               'interval',
                                               'tol',
                                               # thm1: the Fourier-side bound on chi(F(X+1)/F(X));
                                               # thm2: the incomplete-sum bound on F(X+1) - F(X)
                                               'fkm_enabled'])
ExperimentSpec.__new__.__defaults__ = (None, None, None, None, 1, 0.5,
                                       IntervalPolicy(FULL, None), DEFAULT_TOL, False)
PrimeOutcome = namedtuple('PrimeOutcome', 'p record skipped checks')

FIELDS = ('p', 'N', 'lhs', 'constant', 'abs_error', 'normalized_error',
          'm1', 'm2', 'violations', 'hypothesis', 'wall_ms')
INT_FIELDS = ('p', 'N', 'm1', 'm2', 'violations')
SweepRecord = namedtuple('SweepRecord', FIELDS)
Trend = namedtuple('Trend', 'slope max_normalized')
BinomialExample = namedtuple('BinomialExample', 'identity_failures nonvanishing_failures records')

def validate_spec(spec):
    ''' Checks that the fields needed by the experiment's mode are present and sane.

    Returns: the spec.
    '''
    if spec.mode not in (THM1, THM2):
        raise UsageError(f'mode must be {THM1} or {THM2}, got {spec.mode!r}')
    if (spec.prime_range is None) == (spec.prime_list is None):
        raise UsageError('give exactly one of prime_range and prime_list')
    if spec.poly is None:
        raise UsageError('a polynomial is required')
    if not 0 < spec.m <= 1:
        raise UsageError(f'm must lie in (0, 1], got {spec.m}')
    if spec.mode == THM1 and (spec.t is None or spec.t <= 2):
        raise UsageError(f'{THM1} needs a character order t > 2, got {spec.t}')
    if spec.mode == THM2 and not spec.a:
        raise UsageError(f'{THM2} needs a nonzero additive parameter a')
    return spec

def spec_from_dict(doc, validate=True):
    ''' Builds an ExperimentSpec from a JSON-style dict with the same keys.

    Strings are parsed as on the command line: prime_range "(lo, hi)", poly
    "1,0,1" or "binomial:d" and interval "full", "length:N", ...
    '''
    unknown = set(doc) - set(ExperimentSpec._fields)
    if unknown:
        raise UsageError(f'unknown spec keys: {", ".join(sorted(unknown))}')
    values = {key: value for key, value in doc.items() if value is not None}
    if values.get('prime_range') is not None:
        values['prime_range'] = parse_int_range(values['prime_range'])
    if values.get('prime_list') is not None:
        values['prime_list'] = tuple(parse_int_list(values['prime_list']))
    if values.get('poly') is not None:
        values['poly'] = parse_poly(values['poly'])
    if values.get('interval') is not None:
        values['interval'] = parse_interval_policy(values['interval'])
    spec = ExperimentSpec(**values)
    return validate_spec(spec) if validate else spec

def load_spec(path, validate=True):
    ''' Reads an ExperimentSpec from a JSON config file; validate=False allows a partial one. '''
    try:
        with open(path, 'r', encoding='utf-8') as config:
            doc = json.load(config)
    except (OSError, json.JSONDecodeError) as error:
        raise IoFailure(f'could not read config {path}: {error}') from error
    return spec_from_dict(doc, validate)

def spec_to_dict(spec):
    ''' The JSON-style dict spec_from_dict reads back. '''
    doc = spec._asdict()
    doc['poly'] = format_poly(spec.poly)
    doc['interval'] = format_interval_policy(spec.interval)
    for key in ('prime_range', 'prime_list'):
        if doc[key] is not None:
            doc[key] = list(doc[key])
    return doc

def candidate_primes(spec):
    ''' The primes of an experiment, restricted to p = 1 (mod t) in thm1 mode. '''
    if spec.prime_list is not None:
        primes = sorted(set(spec.prime_list))
    else:
        lo, hi = spec.prime_range
        primes = [int(p) for p in primerange(max(lo, 3), hi + 1)]
    if spec.mode == THM1:
        primes = [p for p in primes if (p - 1) % spec.t == 0]
    return primes

def interval_for(policy, p, mode):
    ''' The interval a policy selects for the prime p.

    full is [1, p-2] for thm1, keeping n and n+1 off 0, and [0, p-2] for thm2.
    '''
    if policy.kind == LENGTH:
        return Interval(1, min(policy.value, p - 2))
    if policy.kind == FRACTION:
        return Interval(1, min(max(1, int(policy.value * p)), p - 2))
    if policy.kind == FROM:
        start = policy.value % p
        return Interval(start, max(1, p - start))
    return Interval(1, p - 2) if mode == THM1 else Interval(0, p - 1)

def _verify(spec, p):
    ctx = PrimeFieldCtx(p) if spec.mode == THM1 else PrimeFieldCtx(p, table_threshold=0)
    F = resolve_poly(spec.poly, ctx)
    I = interval_for(spec.interval, p, spec.mode)
    checks = []
    if spec.mode == THM1:
        chi = mult_char_of_order(ctx, spec.t)
        report = verify_thm1(ctx, chi, F, I, spec.m, tol=spec.tol)
        if report.hypothesis_reason is not None:
            return report.hypothesis_reason, checks
        if spec.fkm_enabled and p <= FOURIER_CAP:
            checks.append(fkm_bound_check(character_ratio_table(ctx, chi, F), I))
        if spec.m == 1:
            checks.append(second_moment_check(report, F.reduce(ctx).int_degree, p))
        return report, checks
    psi = AddChar(ctx, spec.a)
    reduced = F.reduce(ctx)
    if reduced.degree < 2 or reduced.collapsed:
        return 'degree collapse', checks
    report = verify_thm2(ctx, psi, F, I, spec.m, tol=spec.tol)
    gap = difference(reduced.lift())
    if spec.fkm_enabled and gap.reduce(ctx).degree >= 1:
        checks.append(incomplete_sum_bound_check(ctx, psi, gap, I))
    if spec.m == 1:
        checks.append(second_moment_check(report, reduced.int_degree, p))
    return report, checks

def verify_prime(spec, p):
    ''' Runs one prime of an experiment.

    Module level so that a multiprocessing.Pool can map it over the primes.

    Returns: PrimeOutcome(p, record, skipped, checks); record is None and
        skipped holds the reason when the prime is left out.
    '''
    start = perf_counter()
    try:
        report, checks = _verify(spec, p)
    except CharMomentError as error:
        return PrimeOutcome(p, None, type(error).__name__, [])
    if isinstance(report, str):
        return PrimeOutcome(p, None, report, checks)
    wall_ms = (perf_counter() - start) * 1000
    record = SweepRecord(p=p, N=report.N, lhs=report.lhs, constant=report.constant,
                         abs_error=report.abs_error, normalized_error=report.normalized_error,
                         m1=report.m1, m2=report.m2, violations=report.condition_violations,
                         hypothesis=report.hypothesis, wall_ms=wall_ms)
    return PrimeOutcome(p, record, None, checks)

class Sweep:
    ''' One pass of an ExperimentSpec over its primes.

    Attributes:
        spec (ExperimentSpec): the experiment.
        processes (int): worker processes; 0 runs the primes in this process.
        records (list): SweepRecords of the admissible primes, by p.
        skipped (list): (p, reason) for the primes left out.
        checks (list): BoundChecks run alongside the records.
    '''
    def __init__(self, spec, processes=0):
        self.spec = validate_spec(spec)
        if processes is None:
            processes = cpu_count()
        if processes < 0:
            raise UsageError(f'processes must be >= 0, got {processes}')
        self.processes = processes
        self.records = []
        self.skipped = []
        self.checks = []

    def __call__(self):
        primes = candidate_primes(self.spec)
        if self.processes > 0 and len(primes) > 1:
            LOGGER.info('sweeping %d primes on %d processes', len(primes), self.processes)
            with Pool(processes=self.processes) as pool:
                outcomes = pool.map(partial(verify_prime, self.spec), primes,
                                    chunksize=max(1, len(primes) // (4 * self.processes)))
        else:
            outcomes = [verify_prime(self.spec, p) for p in primes]
        for outcome in outcomes:
            if outcome.record is None:
                self._skip(outcome.p, outcome.skipped)
            else:
                self.records.append(outcome.record)
            self.checks.extend(outcome.checks)
        LOGGER.info('sweep done: %d records, %d skipped of %d primes',
                    len(self.records), len(self.skipped), len(primes))
        if not self.records:
            raise EmptySweep(f'no admissible prime for {self.spec.mode} sweep')
        self.records.sort(key=lambda record: record.p)
        return self.records

    def _skip(self, p, reason):
        LOGGER.warning('skip p=%d reason=%s', p, reason.replace(' ', '-'))
        self.skipped.append((p, reason))

def run_sweep(spec, processes=0):
    ''' Runs an experiment over its primes.

    Args:
        spec (ExperimentSpec): the experiment.
        processes (int): Optional; worker processes, None for one per CPU.

    Returns: SweepRecords sorted by p, one per admissible prime.
    '''
    return Sweep(spec, processes)()

def second_moment_check(report, degree, p):
    ''' At m = 1 the moment is 2N minus twice the real part of a character sum.

    Checks |lhs - 2N| <= 4(d-1) sqrt(p) + 4d on every m = 1 record of either
    mode. In thm2 the sum is psi(F(n+1) - F(n)) over a polynomial of degree
    d-1; in thm1 it is chi(F(n+1) F(n)^(t-1)), whose Weil envelope
    2(2d-1) sqrt(p) is wider than the bound checked here.
    '''
    return BoundCheck.of(abs(report.lhs - 2 * report.N),
                         4 * (degree - 1) * sqrt(p) + 4 * degree,
                         {'check': 'second-moment', 'p': p, 'N': report.N})

def trend_analysis(records):
    ''' Fits ln(abs_error) against ln(sqrt(p) ln p).

    Args:
        records (list): at least 5 SweepRecords with a nonzero error.

    Returns: Trend(slope, max_normalized).
    '''
    usable = [record for record in records if record.abs_error > 0]
    if len(usable) < 5:
        raise TooFewPoints(f'{len(usable)} records with nonzero error, need 5')
    x = numpy.log([error_scale(record.p) for record in usable])
    y = numpy.log([record.abs_error for record in usable])
    slope = numpy.polyfit(x, y, 1)[0]
    return Trend(float(slope), max(record.normalized_error for record in records))

def pilot_calibration(records, pilot=10):
    ''' The largest normalized error over the pilot smallest primes. '''
    if not records:
        raise TooFewPoints('no records to calibrate on')
    smallest = sorted(records, key=lambda record: record.p)[:pilot]
    return max(record.normalized_error for record in smallest)

def acceptance_checks(records, pilot=10, slope_limit=SLOPE_LIMIT, factor=PILOT_FACTOR):
    ''' The slope and pilot-calibrated checks on a finished sweep. '''
    trend = trend_analysis(records)
    kappa = pilot_calibration(records, pilot)
    return [BoundCheck.of(trend.slope, slope_limit, {'check': 'trend-slope'}),
            BoundCheck.of(trend.max_normalized, factor * kappa,
                          {'check': 'pilot-calibration', 'kappa': kappa, 'pilot': pilot})]

def emit(records, fmt, path=None):
    ''' Writes records sorted by p as CSV or JSON.

    Args:
        records (list): SweepRecords.
        fmt (str): 'csv' or 'json'.
        path (str): Optional; the output file, stdout when None.
    '''
    if fmt not in ('csv', 'json'):
        raise UsageError(f'unknown format {fmt!r}')
    rows = [record._asdict() for record in sorted(records, key=lambda record: record.p)]
    try:
        if path is None:
            _write(rows, fmt, sys.stdout)
        else:
            with open(path, 'w', encoding='utf-8', newline='') as out:
                _write(rows, fmt, out)
    except OSError as error:
        raise IoFailure(f'could not write records to {path}: {error}') from error

def _write(rows, fmt, out):
    if fmt == 'json':
        json.dump(rows, out, indent=1)
        out.write('\n')
        return
    writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)

def _record(row):
    values = {}
    for field in FIELDS:
        if field in INT_FIELDS:
            values[field] = int(row[field])
        elif field == 'hypothesis':
            values[field] = str(row[field])
        else:
            values[field] = float(row[field])
    return SweepRecord(**values)

def load_records(path):
    ''' Reads records written by emit; .json files as JSON, anything else as CSV. '''
    try:
        with open(path, 'r', encoding='utf-8', newline='') as source:
            if Path(path).suffix == '.json':
                rows = json.load(source)
            else:
                rows = list(csv.DictReader(source))
    except (OSError, json.JSONDecodeError) as error:
        raise IoFailure(f'could not read records from {path}: {error}') from error
    try:
        return [_record(row) for row in rows]
    except (KeyError, TypeError, ValueError) as error:
        raise IoFailure(f'malformed record in {path}: {error}') from error

def binomial_identity_failures(p_max=199, d_max=5):
    ''' Exhaustive check of binom(n+1, d+1) - binom(n, d+1) = binom(n, d) (mod p).

    Runs over odd primes p <= p_max, 0 <= d <= d_max with d+1 < p and every
    residue n, and also checks binom(n, d) != 0 (mod p) for d+1 < n < p.

    Returns: (identity_failures, nonvanishing_failures) as lists of (p, d, n).
    '''
    identity, nonvanishing = [], []
    for p in primerange(3, p_max + 1):
        ctx = PrimeFieldCtx(int(p))
        for d in range(d_max + 1):
            if d + 1 >= ctx.p:
                continue
            F = binomial_poly(d, ctx)
            gap = difference(F.lift())
            for n in range(ctx.p):
                expected = comb(n, d) % ctx.p
                if (eval_mod(F, n + 1, ctx) - eval_mod(F, n, ctx)) % ctx.p != expected \
                        or eval_mod(gap, n, ctx) != expected:
                    identity.append((ctx.p, d, n))
                if d + 1 < n and expected == 0:
                    nonvanishing.append((ctx.p, d, n))
    return identity, nonvanishing

def run_example_binomial(p_max=199, d_max=5, prime_range=(1000, 100000), d=2, a=1, m=0.5):
    ''' The binomial example: the exhaustive identities, then a thm2 sweep on binom(X, d+1).

    The sweep intervals start at d+2, where binom(n, d) no longer vanishes, so
    no condition violation is expected.

    Returns: a BinomialExample.
    '''
    identity, nonvanishing = binomial_identity_failures(p_max, d_max)
    for p, degree, n in identity + nonvanishing:
        LOGGER.error('binomial identity fails at p=%d d=%d n=%d', p, degree, n)
    spec = ExperimentSpec(mode=THM2, prime_range=tuple(prime_range), poly=BinomialFamily(d),
                          a=a, m=m, interval=IntervalPolicy(FROM, d + 2))
    return BinomialExample(identity, nonvanishing, run_sweep(spec))
