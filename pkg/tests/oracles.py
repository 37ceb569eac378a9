"""Independent reference computations used by several test modules."""
from fractions import Fraction
import random


def vp(q, p):
    """p-adic valuation of a rational by repeated division; None for zero."""
    q = Fraction(q)
    if q == 0:
        return None
    num, den, v = q.numerator, q.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_mod(q, p, k):
    """The unit part of q modulo p**k."""
    q = Fraction(q)
    v = vp(q, p)
    u = q / Fraction(p) ** v
    mod = p**k
    return u.numerator * pow(u.denominator, -1, mod) % mod


def agrees(x, q, p):
    """The truncated element x equals the rational q modulo p**(absolute precision of x)."""
    q = Fraction(q)
    if x.is_exact_zero():
        return q == 0
    if x.is_inexact_zero():
        return q == 0 or vp(q, p) >= x.absolute_precision
    if q == 0 or vp(q, p) != x.val:
        return False
    return unit_mod(q, p, x.prec) == x.unit


def random_rational(rng: random.Random, p: int, big: int = 10**6):
    """Random rational with denominator prime to p; the numerator may carry powers of p."""
    num = rng.randint(-big, big) * p ** rng.choice((0, 0, 0, 1, 2, 3))
    while True:
        den = rng.randint(1, big)
        if den % p:
            return Fraction(num, den)
