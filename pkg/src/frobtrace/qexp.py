"""Exact q-expansions on the 1/24-integral exponent grid.

A QSeries stores a leading exponent as a numerator over 24 and integer
coefficients at unit q-steps from there, which is exactly the grid eta
quotients live on.  All arithmetic is integer arithmetic; precision is
tracked so that asking past the truncation errors instead of returning a
silent zero.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class QSeries:
    lead_num: int          # leading exponent is lead_num / 24
    coeffs: tuple          # coeffs[k] multiplies q^{(lead_num + 24 k)/24}

    @property
    def precision(self):
        return len(self.coeffs)


def qs_one(n):
    return QSeries(0, (1,) + (0,) * (n - 1))


def eta(m, n):
    """q^{m/24} prod_{k>=1} (1 - q^{mk}), truncated to n coefficients.

    The series part is supported on m times the generalized pentagonal
    numbers j(3j-1)/2 with sign (-1)^j.
    """
    if m < 1 or n < 1:
        raise ValidationError("eta needs m >= 1, n >= 1")
    coeffs = [0] * n
    j = 0
    while True:
        placed = False
        for jj in ((j, -j) if j else (0,)):
            e = m * (jj * (3 * jj - 1) // 2)
            if e < n:
                coeffs[e] += 1 if jj % 2 == 0 else -1
                placed = True
        if not placed and j:
            break
        j += 1
    return QSeries(m, tuple(coeffs))


def qs_scale(a, c):
    return QSeries(a.lead_num, tuple(c * x for x in a.coeffs))


def qs_add(a, b):
    """Sum of two series; their grids must agree modulo 24."""
    if (a.lead_num - b.lead_num) % 24 != 0:
        raise ValidationError(
            f"incompatible exponent grids: {a.lead_num}/24 and {b.lead_num}/24")
    if a.lead_num > b.lead_num:
        a, b = b, a
    shift = (b.lead_num - a.lead_num) // 24
    n = min(a.precision, shift + b.precision)
    out = list(a.coeffs[:n])
    for k, c in enumerate(b.coeffs):
        i = shift + k
        if i >= n:
            break
        out[i] += c
    return QSeries(a.lead_num, tuple(out))


def qs_mul(a, b):
    n = min(a.precision, b.precision)
    out = [0] * n
    for i, ai in enumerate(a.coeffs[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs[: n - i]):
            if bj:
                out[i + j] += ai * bj
    return QSeries(a.lead_num + b.lead_num, tuple(out))


def qs_pow(a, k):
    if k < 0:
        raise ValidationError("negative powers not supported")
    r = qs_one(a.precision)
    for _ in range(k):
        r = qs_mul(r, a)
    return r


def coefficient(s, n):
    """Coefficient of q^n (integer n).  Exponents below the lead or off the
    grid are exact zeros; exponents past the truncation raise."""
    num = 24 * n - s.lead_num
    if num % 24 != 0:
        return 0
    idx = num // 24
    if idx < 0:
        return 0
    if idx >= s.precision:
        raise ValidationError(
            f"coefficient of q^{n} beyond precision ({s.precision} terms "
            f"from {s.lead_num}/24)")
    return s.coeffs[idx]


def f25(n):
    """Weight-4 level-25 newform as a five-term eta combination:
    sum_i c_i eta(z)^{4-i} eta(5z)^4 eta(25z)^i, c = (1, 5, 20, 25, 25),
    with n coefficients available (a_1 .. a_n)."""
    if n < 1:
        raise ValidationError("need at least one coefficient")
    terms = None
    budget = n
    e1 = eta(1, budget)
    e5 = eta(5, budget)
    e25 = eta(25, budget)
    for i, c in enumerate((1, 5, 20, 25, 25)):
        t = qs_mul(qs_pow(e1, 4 - i), qs_mul(qs_pow(e5, 4), qs_pow(e25, i)))
        t = qs_scale(t, c)
        terms = t if terms is None else qs_add(terms, t)
    return terms


def hasse_check(s, weight, primes):
    """Exact Weil/Deligne bound check a_p^2 <= 4 p^{weight-1} for each
    prime; returns {p: bool}."""
    out = {}
    for p in primes:
        ap = coefficient(s, p)
        out[p] = ap * ap <= 4 * p ** (weight - 1)
    return out


def hecke_check(s, weight, p):
    """a_{p^2} == a_p^2 - p^{weight-1} a_1, exact."""
    ap = coefficient(s, p)
    ap2 = coefficient(s, p * p)
    return ap2 == ap * ap - p ** (weight - 1) * coefficient(s, 1)


def tensor_ap(a, b):
    """Trace of Frobenius on a tensor product factor: the product of the
    traces of the factors."""
    return a * b
