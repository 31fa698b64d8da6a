"""Exact scalars: cyclotomic integers, Laurent polynomials in v^(1/d),
rational functions over Q(v^(1/d)), quantum integers and v^-1 expansions.

Exponents are stored as integers in units of 1/d, so ``v**(k/d)`` has
stored exponent ``k``.  Objects with different ``d`` never mix.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union


class NotExpandable(ArithmeticError):
    """The denominator's leading coefficient is not a unit of Z."""


class DenominatorMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense integer polynomials, coefficient tuples low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _trim(out)


def _psub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for k, c in enumerate(b):
        out[k] -= c
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return []
    if len(b) == 1:
        c = b[0]
        return [x * c for x in a]
    if len(a) == 1:
        c = a[0]
        return [x * c for x in b]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _prim(a):
    c = _content(a)
    if c > 1:
        return [x // c for x in a]
    return list(a)


def _prem(a, b):
    """Pseudo-remainder of a by b (integer arithmetic)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        shift = dr - db
        r = [lb * x for x in r]
        for k, c in enumerate(b):
            r[k + shift] -= lr * c
        _trim(r)
    return r


def _pgcd(a, b):
    """Primitive gcd over Z[t] with positive leading coefficient."""
    a, b = _prim(a), _prim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a, b = b, _prim(r) if r else []
    if a[-1] < 0:
        a = [-x for x in a]
    return a


def _pdivexact(a, b):
    """Exact quotient a / b in Z[t]; raises ArithmeticError otherwise."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(0, len(a) - db)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[shift] = c
        for k, x in enumerate(b):
            r[k + shift] -= c * x
        _trim(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# cyclotomic integers


@lru_cache(maxsize=None)
def cyclotomic_poly(o: int) -> tuple[int, ...]:
    """Coefficients (low -> high) of the o-th cyclotomic polynomial."""
    if o < 1:
        raise ValueError("order must be positive")
    p = [-1] + [0] * (o - 1) + [1]
    for k in range(1, o):
        if o % k == 0:
            p = _pdivexact(p, list(cyclotomic_poly(k)))
    return tuple(p)


class CycInt:
    """Element of Z[zeta], zeta a primitive o-th root of unity, reduced mod Phi_o."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[int] = (), order: int = 1):
        phi = cyclotomic_poly(order)
        n = len(phi) - 1
        c = [int(x) for x in coeffs]
        # reduce mod the monic cyclotomic polynomial
        while len(c) > n:
            top = c.pop()
            if top:
                shift = len(c) - n
                for k in range(n):
                    c[shift + k] -= top * phi[k]
        c += [0] * (n - len(c))
        self.coeffs = tuple(c)
        self.order = order

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CycInt":
        power %= order
        return cls([0] * power + [1], order)

    def _check(self, other: "CycInt"):
        if self.order != other.order:
            raise ValueError("cyclotomic orders differ")

    def _coerce(self, other):
        if isinstance(other, CycInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return CycInt([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return CycInt([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(_pmul(list(self.coeffs), list(other.coeffs)), self.order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CycInt):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.coeffs, self.order))

    def __bool__(self):
        return any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def bar(self) -> "CycInt":
        o = self.order
        out = [0] * o
        for k, c in enumerate(self.coeffs):
            out[(-k) % o] += c
        return CycInt(out, o)

    def __repr__(self):
        if self.is_integer():
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return "(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Laurent polynomials with cyclotomic coefficients


class LaurentScalar:
    """Element of Z[zeta][v^(1/d), v^(-1/d)].

    ``terms`` maps an exponent in units of 1/d to a nonzero CycInt.
    """

    __slots__ = ("terms", "d", "order")

    def __init__(self, terms: Mapping[int, Union[CycInt, int]] = (), d: int = 1, order: int = 1):
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if isinstance(c, int):
                c = CycInt([c], order)
            elif c.order != order:
                raise ValueError("cyclotomic orders differ")
            if c:
                clean[int(k)] = c
        self.terms = clean
        self.d = d
        self.order = order

    # constructors
    @classmethod
    def const(cls, c: Union[int, CycInt], d: int = 1, order: int = 1):
        return cls({0: c}, d, order)

    @classmethod
    def v(cls, power: Union[int, Fraction] = 1, d: int = 1, order: int = 1):
        """``v**power``; ``power`` may be fractional with denominator dividing d."""
        k = Fraction(power) * d
        if k.denominator != 1:
            raise DenominatorMismatch(f"v^{power} not representable with d={d}")
        return cls({int(k): 1}, d, order)

    @classmethod
    def zeta(cls, order: int, power: int = 1, d: int = 1):
        return cls({0: CycInt.zeta(order, power)}, d, order)

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.d != self.d:
                raise DenominatorMismatch(f"exponent denominators {self.d} and {other.d} differ")
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, CycInt)):
            return LaurentScalar.const(other, self.d, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentScalar(out, self.d, self.order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({k: -c for k, c in self.terms.items()}, self.d, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, CycInt] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return LaurentScalar(out, self.d, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ArithmeticError("only monomials are invertible")
            (k, c), = self.terms.items()
            if c != 1 and c != -1:
                raise ArithmeticError("coefficient is not a unit")
            return LaurentScalar({-k * (-n): c if (-n) % 2 else 1}, self.d, self.order)
        out = LaurentScalar.const(1, self.d, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, CycInt)):
            other = LaurentScalar.const(other, self.d, self.order)
        if isinstance(other, LaurentScalar):
            return (self.d, self.order, self.terms) == (other.d, other.order, other.terms)
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.order, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zeta_free(self) -> bool:
        return all(c.is_integer() for c in self.terms.values())

    def bar(self) -> "LaurentScalar":
        return LaurentScalar({-k: c.bar() for k, c in self.terms.items()}, self.d, self.order)

    def exact_div(self, other: "LaurentScalar") -> "LaurentScalar":
        """Quotient in the Laurent ring; divisor must be zeta-free with unit leading term."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError
        if not other.is_zeta_free():
            raise ArithmeticError("divisor must have integer coefficients")
        top = max(other.terms)
        lead = other.terms[top].coeffs[0]
        rem = LaurentScalar(self.terms, self.d, self.order)
        quot: dict[int, CycInt] = {}
        if not rem:
            return rem
        # an exact quotient lives in exponents [min(self) - bottom, max(self) - top]
        floor = min(self.terms) - min(other.terms)
        while rem and max(rem.terms) - top >= floor:
            k = max(rem.terms)
            c = rem.terms[k]
            if any(x % lead for x in c.coeffs):
                raise ArithmeticError("inexact division")
            q = CycInt([x // lead for x in c.coeffs], self.order)
            quot[k - top] = q
            rem = rem - LaurentScalar({k - top: q}, self.d, self.order) * other
        if rem:
            raise ArithmeticError("inexact division")
        return LaurentScalar(quot, self.d, self.order)

    def coefficient(self, power: Union[int, Fraction]) -> CycInt:
        k = Fraction(power) * self.d
        if k.denominator != 1:
            return CycInt([0], self.order)
        return self.terms.get(int(k), CycInt([0], self.order))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            e = Fraction(k, self.d)
            if e == 0:
                parts.append(repr(c))
            elif c == 1:
                parts.append(f"v^{e}")
            elif c == -1:
                parts.append(f"-v^{e}")
            else:
                parts.append(f"{c!r}*v^{e}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# rational functions in t = v^(1/d)


def _ratfunc_from_ints(e, n, dd, d):
    obj = RatFunc.__new__(RatFunc)
    obj.e, obj.n, obj.dd, obj.d = e, n, dd, d
    return obj


def _normalize(e: int, n: list[int], dd: list[int], d: int) -> "RatFunc":
    _trim(n)
    _trim(dd)
    if not dd:
        raise ZeroDivisionError("zero denominator")
    if not n:
        return _ratfunc_from_ints(0, (), (1,), d)
    k = 0
    while n[k] == 0:
        k += 1
    if k:
        n = n[k:]
        e += k
    k = 0
    while dd[k] == 0:
        k += 1
    if k:
        dd = dd[k:]
        e -= k
    if len(dd) > 1 and len(n) > 1:
        g = _pgcd(n, dd)
        if len(g) > 1:
            n = _pdivexact(n, g)
            dd = _pdivexact(dd, g)
    c = gcd(_content(n), _content(dd))
    if dd[-1] < 0:
        c = -c
    if c != 1:
        n = [x // c for x in n]
        dd = [x // c for x in dd]
    return _ratfunc_from_ints(e, tuple(n), tuple(dd), d)


class RatFunc:
    """Element of Q(v^(1/d)), stored as t^e * N(t) / D(t) with t = v^(1/d).

    Canonical form: N(0) != 0, D(0) != 0, gcd(N, D) = 1 over Q[t],
    gcd(content N, content D) = 1, leading coefficient of D positive.
    """

    __slots__ = ("e", "n", "dd", "d")

    def __init__(self, value: Union[int, Fraction, LaurentScalar, "RatFunc"] = 0, d: int = 1):
        if isinstance(value, RatFunc):
            self.e, self.n, self.dd, self.d = value.e, value.n, value.dd, value.d
            return
        if isinstance(value, LaurentScalar):
            if not value.is_zeta_free():
                raise ValueError("RatFunc coefficients must be zeta-free")
            d = value.d
            if not value.terms:
                r = _ratfunc_from_ints(0, (), (1,), d)
            else:
                lo = min(value.terms)
                hi = max(value.terms)
                n = [0] * (hi - lo + 1)
                for k, c in value.terms.items():
                    n[k - lo] = c.coeffs[0]
                r = _normalize(lo, n, [1], d)
        else:
            q = Fraction(value)
            r = _normalize(0, [q.numerator], [q.denominator], d)
        self.e, self.n, self.dd, self.d = r.e, r.n, r.dd, r.d

    # constructors -----------------------------------------------------------
    @staticmethod
    def monomial(units: int, d: int, coeff: int = 1) -> "RatFunc":
        """coeff * v^(units/d)."""
        if coeff == 0:
            return _ratfunc_from_ints(0, (), (1,), d)
        return _ratfunc_from_ints(units, (coeff,), (1,), d)

    @staticmethod
    def vpow(power: Union[int, Fraction], d: int) -> "RatFunc":
        k = Fraction(power) * d
        if k.denominator != 1:
            raise DenominatorMismatch(f"v^{power} not representable with d={d}")
        return RatFunc.monomial(int(k), d)

    @staticmethod
    def from_polys(num: LaurentScalar, den: LaurentScalar) -> "RatFunc":
        return RatFunc(num) / RatFunc(den)

    # views -------------------------------------------------------------------
    @property
    def num(self) -> LaurentScalar:
        return LaurentScalar({self.e + k: c for k, c in enumerate(self.n) if c}, self.d)

    @property
    def den(self) -> LaurentScalar:
        return LaurentScalar({k: c for k, c in enumerate(self.dd) if c}, self.d)

    def evaluate(self, t: Fraction) -> Fraction:
        """Specialize at v^(1/d) = t (t must not be a pole)."""
        t = Fraction(t)
        num = sum((Fraction(c) * t**k for k, c in enumerate(self.n)), Fraction(0))
        den = sum((Fraction(c) * t**k for k, c in enumerate(self.dd)), Fraction(0))
        if den == 0:
            raise ZeroDivisionError(f"pole at t = {t}")
        return t**self.e * num / den

    def is_laurent(self) -> bool:
        return len(self.dd) == 1 and self.dd[0] == 1

    def to_laurent(self) -> LaurentScalar:
        if not self.is_laurent():
            raise ValueError(f"{self!r} is not a Laurent polynomial")
        return self.num

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.d != self.d:
                raise DenominatorMismatch(f"exponent denominators {self.d} and {other.d} differ")
            return other
        if isinstance(other, int):
            if other == 0:
                return _ratfunc_from_ints(0, (), (1,), self.d)
            return _ratfunc_from_ints(0, (other,), (1,), self.d)
        if isinstance(other, Fraction):
            return RatFunc(other, self.d)
        if isinstance(other, LaurentScalar):
            return RatFunc(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.n)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.n:
            return self
        if not self.n:
            return o
        e = min(self.e, o.e)
        a = [0] * (self.e - e) + list(self.n)
        b = [0] * (o.e - e) + list(o.n)
        if self.dd == o.dd:
            num = _padd(a, b)
            if len(self.dd) == 1:
                return _normalize(e, num, [self.dd[0]], self.d)
            return _normalize(e, num, list(self.dd), self.d)
        num = _padd(_pmul(a, list(o.dd)), _pmul(b, list(self.dd)))
        return _normalize(e, num, _pmul(list(self.dd), list(o.dd)), self.d)

    __radd__ = __add__

    def __neg__(self):
        return _ratfunc_from_ints(self.e, tuple(-x for x in self.n), self.dd, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.n or not o.n:
            return _ratfunc_from_ints(0, (), (1,), self.d)
        if len(self.dd) == 1 and len(o.dd) == 1:
            if len(o.n) == 1 and o.dd[0] == 1:
                c = o.n[0]
                if self.dd[0] == 1 or c == 1 or c == -1:
                    return _ratfunc_from_ints(self.e + o.e, tuple(x * c for x in self.n), self.dd, self.d)
            if len(self.n) == 1 and self.dd[0] == 1:
                c = self.n[0]
                if o.dd[0] == 1 or c == 1 or c == -1:
                    return _ratfunc_from_ints(self.e + o.e, tuple(x * c for x in o.n), o.dd, self.d)
            return _normalize(self.e + o.e, _pmul(list(self.n), list(o.n)), [self.dd[0] * o.dd[0]], self.d)
        # cross-cancel before multiplying
        n1, d1, n2, d2 = list(self.n), list(self.dd), list(o.n), list(o.dd)
        if len(d2) > 1 and len(n1) > 1:
            g = _pgcd(n1, d2)
            if len(g) > 1:
                n1, d2 = _pdivexact(n1, g), _pdivexact(d2, g)
        if len(d1) > 1 and len(n2) > 1:
            g = _pgcd(n2, d1)
            if len(g) > 1:
                n2, d1 = _pdivexact(n2, g), _pdivexact(d1, g)
        n, dd = _pmul(n1, n2), _pmul(d1, d2)
        c = gcd(_content(n), _content(dd))
        if dd[-1] < 0:
            c = -c
        if c != 1:
            n = [x // c for x in n]
            dd = [x // c for x in dd]
        return _ratfunc_from_ints(self.e + o.e, tuple(n), tuple(dd), self.d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.n:
            raise ZeroDivisionError("RatFunc division by zero")
        n, dd = self.dd, self.n
        if dd[-1] < 0:
            n = tuple(-x for x in n)
            dd = tuple(-x for x in dd)
        return _ratfunc_from_ints(-self.e, n, dd, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = _ratfunc_from_ints(0, (1,), (1,), self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.d == other.d and self.e == other.e and self.n == other.n and self.dd == other.dd
        if isinstance(other, int):
            if other == 0:
                return not self.n
            return self.e == 0 and self.n == (other,) and self.dd == (1,)
        if isinstance(other, (Fraction, LaurentScalar)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self.e == 0 and len(self.n) <= 1 and self.dd == (1,):
            return hash(self.n[0] if self.n else 0)
        return hash((self.e, self.n, self.dd, self.d))

    def bar(self) -> "RatFunc":
        """Substitute v -> v^-1."""
        if not self.n:
            return self
        e = -self.e - (len(self.n) - 1) + (len(self.dd) - 1)
        n = list(reversed(self.n))
        dd = list(reversed(self.dd))
        if dd[-1] < 0:
            n = [-x for x in n]
            dd = [-x for x in dd]
        return _ratfunc_from_ints(e, tuple(n), tuple(dd), self.d)

    def __repr__(self):
        num = self.num
        if self.is_laurent():
            return f"RatFunc({num!r})"
        return f"RatFunc(({num!r}) / ({self.den!r}))"

    def __str__(self):
        if self.is_laurent():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# quantum integers


def qint(n: int, s: int = 1, d: int = 1) -> LaurentScalar:
    """Balanced quantum integer [n] in v^s."""
    if s < 1:
        raise ValueError("s must be positive")
    sign = 1 if n >= 0 else -1
    m = abs(n)
    terms = {d * s * (m - 1 - 2 * k): sign for k in range(m)}
    return LaurentScalar(terms, d)


def qfact(n: int, s: int = 1, d: int = 1) -> LaurentScalar:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = LaurentScalar.const(1, d)
    for k in range(1, n + 1):
        out = out * qint(k, s, d)
    return out


def qbinom(m: int, n: int, s: int = 1, d: int = 1) -> LaurentScalar:
    """Quantum binomial [m][m-1]...[m-n+1] / [n]!, computed by exact division."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = LaurentScalar.const(1, d)
    for k in range(n):
        num = num * qint(m - k, s, d)
    return num.exact_div(qfact(n, s, d))


@lru_cache(maxsize=None)
def rqint(n: int, s: int, d: int) -> RatFunc:
    return RatFunc(qint(n, s, d))


@lru_cache(maxsize=None)
def rqfact(n: int, s: int, d: int) -> RatFunc:
    return RatFunc(qfact(n, s, d))


def bar(x):
    return x.bar()


# ---------------------------------------------------------------------------
# expansions in v^-1


class VSeries:
    """Truncated element of O((v^-1)) with coefficients in Z[zeta].

    ``coeffs[k]`` multiplies v^((top - k)/d); terms below v^-order are dropped.
    """

    __slots__ = ("top", "coeffs", "order", "d")

    def __init__(self, top: int, coeffs: list[CycInt], order: int, d: int = 1):
        self.top = top
        self.coeffs = list(coeffs)
        self.order = order
        self.d = d

    def terms(self) -> dict[Fraction, CycInt]:
        return {Fraction(self.top - k, self.d): c for k, c in enumerate(self.coeffs) if c}

    def leading(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return Fraction(self.top - k, self.d), c
        return None

    def classify(self) -> str:
        """'unit' (constant term +-1, rest in v^-1 O[[v^-1]]), 'small' (in v^-1 O[[v^-1]]), else 'other'."""
        lead = self.leading()
        if lead is None or lead[0] < 0:
            return "small"
        if lead[0] == 0 and (lead[1] == 1 or lead[1] == -1):
            return "unit"
        return "other"

    def __eq__(self, other):
        if not isinstance(other, VSeries):
            return NotImplemented
        return self.terms() == other.terms() and self.order == other.order

    def __repr__(self):
        t = self.terms()
        if not t:
            return f"VSeries(0, order={self.order})"
        body = " + ".join(f"{c!r}*v^{e}" for e, c in sorted(t.items(), reverse=True))
        return f"VSeries({body}, order={self.order})"


def expand_vinv(x: Union[RatFunc, LaurentScalar, int], order: int) -> VSeries:
    """Expand x in Z((v^-1)) down to v^-order."""
    if isinstance(x, int):
        x = RatFunc(x)
    if isinstance(x, LaurentScalar):
        d = x.d
        if not x.terms:
            return VSeries(0, [], order, d)
        top = max(x.terms)
        lo = -order * d
        coeffs = [x.terms.get(k, CycInt([0], x.order)) for k in range(top, min(lo, top) - 1, -1)]
        return VSeries(top, coeffs, order, d)
    d = x.d
    if not x.n:
        return VSeries(0, [], order, d)
    lead = x.dd[-1]
    if lead not in (1, -1):
        raise NotExpandable(f"leading denominator coefficient {lead} is not a unit")
    # x = t^(e + deg N - deg D) * Nrev(u) / Drev(u),  u = t^-1
    top = x.e + len(x.n) - 1 - (len(x.dd) - 1)
    nrev = list(reversed(x.n))
    drev = list(reversed(x.dd))
    count = top + order * d + 1
    out: list[int] = []
    rem = nrev + [0] * max(0, count - len(nrev))
    for k in range(max(count, 0)):
        c = rem[k] * lead  # lead is its own inverse
        out.append(c)
        if c:
            for j in range(1, len(drev)):
                if k + j < len(rem):
                    rem[k + j] -= c * drev[j]
    return VSeries(top, [CycInt([c]) for c in out], order, d)
