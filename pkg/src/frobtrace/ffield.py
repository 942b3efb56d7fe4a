"""Prime fields, quadratic extensions, and the Kronecker symbol.

Everything here is exact integer arithmetic.  Field elements are small frozen
dataclasses; the heavy lifting in the counting module works on raw residues
instead, so these classes only need to be correct, not fast.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

_MAX_P = 1 << 31

# Witnesses 2, 3, 5, 7 make Miller-Rabin deterministic for n < 3215031751,
# which covers the whole supported range p < 2^31.
_MR_WITNESSES = (2, 3, 5, 7)


def is_prime(n):
    """Deterministic primality test for n < 2^31."""
    if n >= _MAX_P:
        raise ValidationError(f"modulus {n} out of supported range (< 2^31)")
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n == q:
            return True
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(d, m):
    """Full Kronecker symbol (d/m), defined for all integers m.

    Conventions: (d/0) is 1 for d = +-1 and 0 otherwise; (d/-1) is the sign
    of d (and 1 for d = 0); (d/2) is 0 for even d and +-1 according to
    d = +-1 or +-3 mod 8.
    """
    if m == 0:
        return 1 if d in (1, -1) else 0
    sign = 1
    if m < 0:
        m = -m
        if d < 0:
            sign = -1
    # split off the even part of m
    t = 0
    while m % 2 == 0:
        m //= 2
        t += 1
    if t:
        if d % 2 == 0:
            return 0
        if t % 2 == 1 and d % 8 in (3, 5):
            sign = -sign
    # now m is odd and positive: Jacobi symbol with reciprocity
    d %= m
    while d:
        while d % 2 == 0:
            d //= 2
            if m % 8 in (3, 5):
                sign = -sign
        d, m = m, d
        if d % 4 == 3 and m % 4 == 3:
            sign = -sign
        d %= m
    return sign if m == 1 else 0


class PrimeField:
    """F_p together with a distinguished non-residue for building F_{p^2}."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.p = p
        self._nonres = None

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __call__(self, value):
        return FpElement(value % self.p, self)

    @property
    def nonresidue(self):
        """Smallest positive quadratic non-residue mod p (p odd)."""
        if self._nonres is None:
            if self.p == 2:
                raise ValidationError("F_2 has no quadratic non-residue")
            for n in range(2, self.p):
                if kronecker(n, self.p) == -1:
                    self._nonres = n
                    break
        return self._nonres

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def sqrt(self, a):
        """A square root of a mod p, or None if a is a non-residue."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if p == 2:
            return a
        if kronecker(a, p) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.nonresidue
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, u = 0, t
            while u != 1:
                u = u * u % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r


@dataclass(frozen=True)
class FpElement:
    value: int
    field: PrimeField

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.field != self.field:
                raise ValidationError("mixed fields in F_p arithmetic")
            return other.value
        return int(other) % self.field.p

    def __add__(self, other):
        return FpElement((self.value + self._coerce(other)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement((self.value - self._coerce(other)) % self.field.p, self.field)

    def __rsub__(self, other):
        return FpElement((self._coerce(other) - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value % self.field.p, self.field)

    def __pow__(self, e):
        if e < 0:
            return FpElement(pow(self.field.inv(self.value), -e, self.field.p), self.field)
        return FpElement(pow(self.value, e, self.field.p), self.field)

    def inverse(self):
        return FpElement(self.field.inv(self.value), self.field)

    def is_zero(self):
        return self.value == 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


@dataclass(frozen=True)
class Fp2Element:
    """a + b*s with s^2 = n, n the distinguished non-residue of the field."""
    a: int
    b: int
    field: PrimeField

    def _parts(self, other):
        if isinstance(other, Fp2Element):
            if other.field != self.field:
                raise ValidationError("mixed fields in F_{p^2} arithmetic")
            return other.a, other.b
        return int(other) % self.field.p, 0

    def __add__(self, other):
        oa, ob = self._parts(other)
        p = self.field.p
        return Fp2Element((self.a + oa) % p, (self.b + ob) % p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        oa, ob = self._parts(other)
        p = self.field.p
        return Fp2Element((self.a - oa) % p, (self.b - ob) % p, self.field)

    def __rsub__(self, other):
        oa, ob = self._parts(other)
        p = self.field.p
        return Fp2Element((oa - self.a) % p, (ob - self.b) % p, self.field)

    def __mul__(self, other):
        oa, ob = self._parts(other)
        p, n = self.field.p, self.field.nonresidue
        return Fp2Element((self.a * oa + n * self.b * ob) % p,
                          (self.a * ob + self.b * oa) % p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        p = self.field.p
        return Fp2Element(-self.a % p, -self.b % p, self.field)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = Fp2Element(1, 0, self.field)
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def norm(self):
        """a^2 - n b^2, the norm down to F_p."""
        p, n = self.field.p, self.field.nonresidue
        return (self.a * self.a - n * self.b * self.b) % p

    def inverse(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        inv = self.field.inv(nm)
        p = self.field.p
        return Fp2Element(self.a * inv % p, -self.b * inv % p, self.field)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __repr__(self):
        return f"{self.a} + {self.b}s (mod {self.field.p}, s^2={self.field.nonresidue})"


def fp2_frobenius(x):
    """The p-power Frobenius of F_{p^2}, i.e. conjugation a + bs -> a - bs."""
    return Fp2Element(x.a, -x.b % x.field.p, x.field)
