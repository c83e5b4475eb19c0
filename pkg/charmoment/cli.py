# pylint: disable=invalid-name,too-many-arguments
''' The charmoment command line. '''
from functools import wraps
from math import isqrt
from types import SimpleNamespace
import json

import click

from charmoment.bounds import (character_ratio_table, completion_identity_check,
                               fkm_bound_check, incomplete_sum_bound_check,
                               twisted_weil_check, weil_check)
from charmoment.characters import AddChar, mult_char_of_order
from charmoment.constants import C_const, D_const, DEFAULT_K_MAX, DEFAULT_TOL
from charmoment.errors import (CharMomentError, DegenerateDegree, FactorialDivisible,
                               IntervalOutOfRange, NotPrime, OrderNotDividing, UsageError)
from charmoment.field import PrimeFieldCtx
from charmoment.harness import (THM1, THM2, ExperimentSpec, acceptance_checks, emit,
                                load_spec, run_example_binomial, Sweep)
from charmoment.logger import Logger
from charmoment.moments import Interval, verify_thm1, verify_thm2
from charmoment.parser import (parse_int_list, parse_int_range, parse_interval_policy,
                               parse_poly, resolve_poly)

# Errors in what the caller asked for exit 2 like click's own usage errors
USAGE_ERRORS = (UsageError, NotPrime, OrderNotDividing, IntervalOutOfRange,
                DegenerateDegree, FactorialDivisible)
REMARK_SLACK = 1e-12
ORACLE_TOL = 1e-8

FLAG_PARSERS = {'primes': ('prime_range', parse_int_range),
                'prime_list': ('prime_list', lambda text: tuple(parse_int_list(text))),
                'poly': ('poly', parse_poly),
                'interval': ('interval', parse_interval_policy)}
PRIME_FIELDS = {'prime_range': 'prime_list', 'prime_list': 'prime_range'}

def guarded(func):
    ''' Maps charmoment errors onto click exceptions and exit codes 2 and 1. '''
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except USAGE_ERRORS as error:
            raise click.UsageError(str(error)) from error
        except CharMomentError as error:
            raise click.ClickException(f'{type(error).__name__}: {error}') from error
    return wrapper

def output(doc, as_json):
    ''' Prints a dict as JSON or as aligned key: value lines. '''
    if as_json:
        click.echo(json.dumps(doc, indent=1, default=str))
        return
    width = max((len(key) for key in doc), default=0)
    for key, value in doc.items():
        click.echo(f'{key:<{width}}  {value}')

def finish(ok):
    ''' Exits 1 when a check failed. '''
    if not ok:
        click.get_current_context().exit(1)

def _interval(start, length, default_start, default_length):
    return Interval(default_start if start is None else start,
                    default_length if length is None else length)

json_option = click.option('--json', 'as_json', is_flag=True, help='Print JSON instead of text.')
poly_option = click.option('--poly', required=True, type=click.STRING,
                           help='Coefficients constant term first ("1,0,1" is X^2+1) '
                                'or "binomial:d".')
m_option = click.option('--m', 'm', type=click.FLOAT, default=0.5, show_default=True,
                        help='The moment exponent in (0, 1].')
tol_option = click.option('--tol', type=click.FLOAT, default=DEFAULT_TOL, show_default=True,
                          help='Series tolerance for the main-term constant.')

@click.group()
@click.option('-v', '--verbose', count=True, help='Repeat for more log output on stderr.')
@click.option('--log-dir', type=click.Path(file_okay=False), default=None,
              help='Also log at DEBUG to <log-dir>/log/charmoment.log.')
@click.pass_context
def main(ctx, verbose, log_dir):
    ''' Moments of consecutive character differences over F_p. '''
    # warnings show by default; -v adds INFO and -vv DEBUG
    ctx.obj = SimpleNamespace(logger=Logger(base_dir=log_dir, verbosity=2 + verbose))

@main.command()
@click.option('--m', 'm', type=click.FLOAT, required=True, help='The moment exponent in (0, 1].')
@click.option('--t', '--order', 't', type=click.INT, default=None,
              help='Character order for C(t, m).')
@click.option('--p', '--prime', 'p', type=click.INT, default=None, help='Odd prime for D(p, m).')
@tol_option
@click.option('--k-max', type=click.INT, default=DEFAULT_K_MAX, show_default=True,
              help='Hard cap on series terms.')
@click.option('--strict/--no-strict', default=True, show_default=True,
              help='Fail when --k-max stops the series before the tolerance.')
@json_option
@guarded
def constants(m, t, p, tol, k_max, strict, as_json):
    ''' Evaluate C(t, m) or D(p, m) with its independent oracle. '''
    if (t is None) == (p is None):
        raise UsageError('give exactly one of --t and --p')
    if t is not None:
        result = C_const(m, t, tol=tol, K_max=k_max, strict=strict)
    else:
        result = D_const(m, p, tol=tol, K_max=k_max, strict=strict, with_oracle=True)
    doc = result._asdict()
    gap = abs(result.value - result.oracle_value)
    doc['oracle_gap'] = gap
    ok = bool(gap <= ORACLE_TOL + result.tail_bound and result.value < 4**m + REMARK_SLACK)
    doc['ok'] = ok
    output(doc, as_json)
    finish(ok)

@main.command('verify-thm1')
@click.option('--p', '--prime', 'p', type=click.INT, required=True, help='The prime.')
@click.option('--t', '--order', 't', type=click.INT, required=True,
              help='Character order, t > 2, t | p-1.')
@poly_option
@m_option
@click.option('--start', type=click.INT, default=None, help='Interval start [default: 1].')
@click.option('--length', '--len', 'length', type=click.INT, default=None,
              help='Interval length [default: p-2].')
@tol_option
@json_option
@guarded
def verify_thm1_command(p, t, poly, m, start, length, tol, as_json):
    ''' Compare the multiplicative moment sum with C(t, m)|I|. '''
    ctx = PrimeFieldCtx(p)
    F = resolve_poly(parse_poly(poly), ctx)
    report = verify_thm1(ctx, mult_char_of_order(ctx, t), F,
                         _interval(start, length, 1, p - 2), m, tol=tol)
    output(report._asdict(), as_json)

@main.command('verify-thm2')
@click.option('--p', '--prime', 'p', type=click.INT, required=True, help='The prime.')
@click.option('--a', type=click.INT, default=1, show_default=True,
              help='Additive character parameter.')
@poly_option
@m_option
@click.option('--start', type=click.INT, default=None, help='Interval start [default: 0].')
@click.option('--length', '--len', 'length', type=click.INT, default=None,
              help='Interval length [default: p-1].')
@tol_option
@json_option
@guarded
def verify_thm2_command(p, a, poly, m, start, length, tol, as_json):
    ''' Compare the additive moment sum with D(p, m)|I|. '''
    ctx = PrimeFieldCtx(p, table_threshold=0)
    F = resolve_poly(parse_poly(poly), ctx)
    report = verify_thm2(ctx, AddChar(ctx, a), F,
                         _interval(start, length, 0, p - 1), m, tol=tol)
    output(report._asdict(), as_json)

@main.command()
@click.option('--config', type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON ExperimentSpec; flags given here override it.')
@click.option('--mode', type=click.Choice([THM1, THM2]), default=None)
@click.option('--primes', default=None, help='Inclusive prime range "(lo, hi)".')
@click.option('--prime-list', default=None, help='Explicit primes "101,401".')
@click.option('--poly', default=None, help='As for verify-thm1.')
@click.option('--t', type=click.INT, default=None, help='Character order (thm1).')
@click.option('--a', type=click.INT, default=None, help='Additive parameter (thm2).')
@click.option('--m', 'm', type=click.FLOAT, default=None, help='The moment exponent.')
@click.option('--interval', default=None,
              help='"full", "length:N", "fraction:f" or "from:s" [default: full].')
@click.option('--tol', type=click.FLOAT, default=None)
@click.option('--fkm/--no-fkm', 'fkm_enabled', default=None,
              help='Run the sliding-sum or incomplete-sum checks alongside.')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv',
              show_default=True)
@click.option('--output', 'path', type=click.Path(dir_okay=False), default=None,
              help='Write records here instead of stdout.')
@click.option('--accept/--no-accept', default=False, show_default=True,
              help='Apply the slope and pilot-calibration acceptance checks.')
@click.option('--processes', type=click.IntRange(min=0), default=0, show_default=True,
              help='Worker processes for the primes; 0 runs them in this process.')
@guarded
def sweep(config, fmt, path, accept, processes, **flags):
    ''' Run a theorem over a range of primes and emit one record per prime. '''
    values = load_spec(config, validate=False)._asdict() if config else {}
    for flag, value in flags.items():
        if value is None:
            continue
        name, parse = FLAG_PARSERS.get(flag, (flag, None))
        values[name] = parse(value) if parse else value
        # a prime range on the command line replaces a prime list from the file
        if name in PRIME_FIELDS:
            values[PRIME_FIELDS[name]] = None
    runner = Sweep(ExperimentSpec(**values), processes)
    records = runner()
    emit(records, fmt, path)
    click.get_current_context().obj.logger.log(
        f'{len(records)} records, {len(runner.skipped)} skipped, written to {path or "stdout"}')
    checks = list(runner.checks)
    if accept:
        checks.extend(acceptance_checks(records))
    for check in checks:
        if not check.ok:
            click.echo(f'FAILED {json.dumps(check._asdict(), default=str)}', err=True)
    finish(all(check.ok for check in checks))

@main.command('weil-check')
@click.option('--p', '--prime', 'p', type=click.INT, required=True, help='The prime.')
@click.option('--a', type=click.INT, default=1, show_default=True,
              help='Additive character parameter.')
@poly_option
@click.option('--twisted', is_flag=True, help='Check the maximum over all twists b.')
@json_option
@guarded
def weil_check_command(p, a, poly, twisted, as_json):
    ''' Check |sum_x psi(G(x))| <= (d-1) sqrt(p). '''
    ctx = PrimeFieldCtx(p)
    G = resolve_poly(parse_poly(poly), ctx)
    check = (twisted_weil_check if twisted else weil_check)(ctx, AddChar(ctx, a), G)
    output(check._asdict(), as_json)
    finish(check.ok)

@main.command('fkm-check')
@click.option('--p', '--prime', 'p', type=click.INT, required=True, help='The prime.')
@click.option('--t', '--order', 't', type=click.INT, required=True, help='Character order.')
@poly_option
@click.option('--power', type=click.INT, default=1, show_default=True,
              help='Power of the character ratio.')
@click.option('--b', type=click.INT, default=0, show_default=True, help='Additive twist.')
@click.option('--start', type=click.INT, default=0, show_default=True)
@click.option('--length', '--len', 'length', type=click.INT, default=None,
              help='Interval length [default: isqrt(p)+1].')
@json_option
@guarded
def fkm_check_command(p, t, poly, power, b, start, length, as_json):
    ''' Check the sliding-sum bound for phi(n) = chi^power(F(n+1)/F(n)) e(-bn/p). '''
    ctx = PrimeFieldCtx(p)
    F = resolve_poly(parse_poly(poly), ctx)
    phi = character_ratio_table(ctx, mult_char_of_order(ctx, t), F, power=power, b=b)
    check = fkm_bound_check(phi, Interval(start, isqrt(p) + 1 if length is None else length))
    output(check._asdict(), as_json)
    finish(check.ok)

@main.command('completion-check')
@click.option('--p', '--prime', 'p', type=click.INT, required=True, help='The prime.')
@click.option('--a', type=click.INT, default=1, show_default=True,
              help='Additive character parameter.')
@poly_option
@click.option('--start', type=click.INT, default=0, show_default=True)
@click.option('--length', '--len', 'length', type=click.INT, required=True,
              help='Interval length.')
@click.option('--bound', is_flag=True, help='Also check the incomplete-sum envelope.')
@json_option
@guarded
def completion_check_command(p, a, poly, start, length, bound, as_json):
    ''' Compare an incomplete additive sum with its completion. '''
    ctx = PrimeFieldCtx(p)
    G = resolve_poly(parse_poly(poly), ctx)
    psi, I = AddChar(ctx, a), Interval(start, length)
    checks = [completion_identity_check(ctx, psi, G, I)]
    if bound:
        checks.append(incomplete_sum_bound_check(ctx, psi, G, I))
    doc = checks[0]._asdict() if len(checks) == 1 else \
        {check.context['check']: check._asdict() for check in checks}
    output(doc, as_json)
    finish(all(check.ok for check in checks))

@main.command('example-binomial')
@click.option('--p-max', type=click.INT, default=199, show_default=True,
              help='Largest prime of the exhaustive identity check.')
@click.option('--d-max', type=click.INT, default=5, show_default=True,
              help='Largest d of the exhaustive identity check.')
@click.option('--primes', default='(1000, 100000)', show_default=True,
              help='Prime range of the sweep on binom(X, d+1).')
@click.option('--d', type=click.INT, default=2, show_default=True)
@click.option('--a', type=click.INT, default=1, show_default=True)
@m_option
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv',
              show_default=True)
@click.option('--output', 'path', type=click.Path(dir_okay=False), default=None)
@guarded
def example_binomial(p_max, d_max, primes, d, a, m, fmt, path):
    ''' Check the binomial identities, then sweep thm2 on binom(X, d+1). '''
    example = run_example_binomial(p_max=p_max, d_max=d_max, prime_range=parse_int_range(primes),
                                   d=d, a=a, m=m)
    emit(example.records, fmt, path)
    violations = sum(record.violations for record in example.records)
    click.echo(f'identity failures: {len(example.identity_failures)}, '
               f'nonvanishing failures: {len(example.nonvanishing_failures)}, '
               f'condition violations: {violations}', err=True)
    checks = acceptance_checks(example.records)
    finish(not example.identity_failures and not example.nonvanishing_failures
           and violations == 0 and all(check.ok for check in checks))
