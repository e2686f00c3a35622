"""Exact arithmetic in cyclotomic fields Q(zeta_e).

An element is stored at an explicit level e as a rational vector over the
power basis 1, z, ..., z^(phi(e)-1) modulo the e-th cyclotomic polynomial.
Mixed-level arithmetic lifts both operands to the lcm level; the lift is
z_e = z_L^(L/e).
"""

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficient tuple of the n-th cyclotomic polynomial (low degree first)."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _polydiv_exact(num, den):
    # num, den integer coefficient lists, den monic; division is exact
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] -= c * dc
    assert all(c == 0 for c in num[:dd]), "non-exact polynomial division"
    return out


def _polymod(coeffs, modpoly):
    # remainder of coeffs (Fractions) by the monic integer polynomial modpoly
    coeffs = list(coeffs)
    dd = len(modpoly) - 1
    for i in range(len(coeffs) - 1, dd - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = Fraction(0)
            for j in range(dd):
                coeffs[i - dd + j] -= c * modpoly[j]
    return coeffs[:dd]


@lru_cache(maxsize=None)
def _phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


_ZETA_CACHE = {}


class Cyclotomic:
    """A value in Q(zeta_level), immutable."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level, coeffs):
        d = _phi(level)
        coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(coeffs) == d
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    @staticmethod
    def rational(value, level=1):
        c = [Fraction(value)] + [Fraction(0)] * (_phi(level) - 1)
        return Cyclotomic(level, c)

    @staticmethod
    def zeta(e, power=1):
        """zeta_e ** power as a level-e value (cached)."""
        power %= e
        key = (e, power)
        got = _ZETA_CACHE.get(key)
        if got is not None:
            return got
        d = _phi(e)
        poly = [Fraction(0)] * (power + 1)
        poly[power] = Fraction(1)
        out = Cyclotomic(e, _pad(_polymod(poly, cyclotomic_poly(e)), d))
        _ZETA_CACHE[key] = out
        return out

    def lift(self, target_level):
        if target_level == self.level:
            return self
        assert target_level % self.level == 0
        k = target_level // self.level
        poly = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                poly[i * k] = c
        d = _phi(target_level)
        return Cyclotomic(target_level, _pad(_polymod(poly, cyclotomic_poly(target_level)), d))

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        lev = self.level * other.level // math.gcd(self.level, other.level)
        return self.lift(lev), other.lift(lev)

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, Cyclotomic)):
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.level, [-x for x in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, Cyclotomic)):
            return NotImplemented
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.level, [c * q for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        n = len(a.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.level, _pad(_polymod(prod, cyclotomic_poly(a.level)), n))

    __rmul__ = __mul__

    def inverse(self):
        mod = [Fraction(c) for c in cyclotomic_poly(self.level)]
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        lead = _lead(r0)
        if _degree(r0) != 0:
            raise ZeroDivisionError("not invertible in the cyclotomic field")
        inv = [c / lead for c in s0]
        d = _phi(self.level)
        return Cyclotomic(self.level, _pad(_polymod(inv, cyclotomic_poly(self.level)), d))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.level, [c / q for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Cyclotomic.rational(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic.rational(1, self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def galois(self, k):
        """Apply z -> z^k; requires gcd(k, level) == 1."""
        e = self.level
        assert math.gcd(k, e) == 1
        poly = [Fraction(0)] * e
        for i, c in enumerate(self.coeffs):
            if c:
                poly[(i * k) % e] += c
        return Cyclotomic(e, _pad(_polymod(poly, cyclotomic_poly(e)), _phi(e)))

    def conjugate(self):
        if self.level <= 2:
            return self
        return self.galois(self.level - 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        elif not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        if self._hash is None:
            m = self.reduced()
            object.__setattr__(self, "_hash", hash((m.level, m.coeffs)))
        return self._hash

    def descend(self, d):
        """Rewrite at level d (d | level) if the value lies in Q(zeta_d), else None."""
        from . import linalg

        if d == self.level:
            return self
        assert self.level % d == 0
        basis = [Cyclotomic.zeta(d, j).lift(self.level).coeffs for j in range(_phi(d))]
        coeffs = linalg.express_in_rows([list(b) for b in basis], list(self.coeffs))
        if coeffs is None:
            return None
        return Cyclotomic(d, coeffs)

    def reduced(self):
        """The same value at the smallest possible level."""
        for d in sorted(_divisors(self.level)):
            r = self.descend(d)
            if r is not None:
                return r
        return self

    def is_rational(self):
        return not any(self.coeffs[1:]) if self.level == 1 else self.descend(1) is not None

    def rational_value(self):
        r = self if self.level == 1 else self.descend(1)
        assert r is not None, "value is irrational"
        return r.coeffs[0]

    def __repr__(self):
        return f"Cyclotomic({format_value(self)!r})"

    def __str__(self):
        return format_value(self)


def _pad(coeffs, d):
    return list(coeffs) + [Fraction(0)] * (d - len(coeffs))


def _degree(p):
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _lead(p):
    return p[_degree(p)]


def _polydivmod(a, b):
    a = list(a)
    db = _degree(b)
    lead = b[db]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            f = a[i] / lead
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return q, a[:db] if db > 0 else [Fraction(0)]


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_value(x):
    """Render a Fraction or Cyclotomic exactly, e.g. "3/2" or "z8^2 - z8"."""
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    x = x.reduced()
    if x.level == 1:
        return format_rational(x.coeffs[0])
    name = f"z{x.level}"
    terms = []
    for i in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[i]
        if not c:
            continue
        if i == 0:
            mon = ""
        elif i == 1:
            mon = name
        else:
            mon = f"{name}^{i}"
        if mon:
            if c == 1:
                body = mon
            elif c == -1:
                body = f"-{mon}"
            else:
                body = f"{format_rational(c)}*{mon}"
        else:
            body = format_rational(c)
        terms.append(body)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
