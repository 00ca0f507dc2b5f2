"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A :class:`Cyc` is stored canonically on the power basis
``1, z, ..., z^(phi(n)-1)`` of Q(zeta_n), i.e. as the remainder of a
polynomial in ``z`` by the n-th cyclotomic polynomial.  Operands with
different ``n`` are lifted to the lcm.  Nothing here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .gf import is_prime

#: Largest conductor an arithmetic result may be lifted to.
CONDUCTOR_CAP = 2**16


class ConductorOverflow(ArithmeticError):
    pass


class NotCoprime(ValueError):
    pass


class EvenCharacteristic(ValueError):
    pass


def set_conductor_cap(cap: int) -> None:
    global CONDUCTOR_CAP
    if cap < 1:
        raise ValueError("conductor cap must be positive")
    CONDUCTOR_CAP = cap


def _divisors(n):
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n):
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _poly_exact_div(a, b):
    # integer polynomials, low degree first, b monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n with integer coefficients, constant term first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_exact_div(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _phi_tail(n):
    # nonzero (index, coeff) of Phi_n below its leading term
    f = cyclotomic_poly(n)
    return tuple((i, c) for i, c in enumerate(f[:-1]) if c)


def _reduce(n: int, raw: dict) -> dict:
    """Canonical coefficients of sum(raw[e] * z^e) in Q(zeta_n).

    ``raw`` maps arbitrary integer exponents to rationals.
    """
    if n == 1:
        total = sum(raw.values(), Fraction(0))
        return {0: Fraction(total)} if total else {}
    den = 1
    for c in raw.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    vec = [0] * n
    for e, c in raw.items():
        if c:
            vec[e % n] += int(c * den)
    return _reduce_ints(n, vec, den)


def _reduce_ints(n, vec, den):
    # vec: integer numerators indexed by exponent mod n, all over den
    phi = euler_phi(n)
    tail = _phi_tail(n)
    # long division by the monic Phi_n; only the remainder is kept
    for i in range(n - 1, phi - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            base = i - phi
            for j, fj in tail:
                vec[base + j] -= c * fj
    if den == 1:
        return {e: Fraction(c) for e, c in enumerate(vec[:phi]) if c}
    return {e: Fraction(c, den) for e, c in enumerate(vec[:phi]) if c}


def _numerators(c: dict):
    den = 1
    for v in c.values():
        den = lcm(den, v.denominator)
    return [(e, v.numerator * (den // v.denominator)) for e, v in c.items()], den


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


class Cyc:
    """An element sum(c_e * zeta_n^e) of Q(zeta_n), in canonical form."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int = 1, coeffs=None):
        if n < 1:
            raise ValueError("conductor must be positive")
        if n > CONDUCTOR_CAP:
            raise ConductorOverflow(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
        raw = {}
        if coeffs is not None:
            for e, c in dict(coeffs).items():
                raw[e % n] = raw.get(e % n, 0) + _as_fraction(c)
        self.n = n
        self._c = _reduce(n, raw)

    @classmethod
    def _canonical(cls, n, c):
        obj = object.__new__(cls)
        obj.n = n
        obj._c = c
        return obj

    @classmethod
    def rational(cls, value) -> "Cyc":
        v = _as_fraction(value)
        return cls._canonical(1, {0: v} if v else {})

    @property
    def coeffs(self) -> dict:
        """Canonical power-basis coefficients, exponent -> Fraction."""
        return dict(self._c)

    def support(self) -> list[int]:
        return sorted(self._c)

    # -- conversion between conductors -----------------------------------------

    def lift(self, N: int) -> "Cyc":
        """The same number written in Q(zeta_N); ``n`` must divide ``N``."""
        if N % self.n:
            raise ValueError(f"{self.n} does not divide {N}")
        if N == self.n:
            return self
        if N > CONDUCTOR_CAP:
            raise ConductorOverflow(f"conductor {N} exceeds cap {CONDUCTOR_CAP}")
        s = N // self.n
        return Cyc._canonical(N, _reduce(N, {e * s: c for e, c in self._c.items()}))

    def minimize(self) -> "Cyc":
        """Move rationals down to conductor 1; other values are returned unchanged."""
        r = self.rational_value()
        return Cyc.rational(r) if r is not None else self

    @staticmethod
    def _coerce(x):
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyc.rational(x)
        return None

    def _common(self, other):
        if self.n == other.n:
            return self, other
        N = lcm(self.n, other.n)
        if N > CONDUCTOR_CAP:
            raise ConductorOverflow(f"conductor {N} exceeds cap {CONDUCTOR_CAP}")
        return self.lift(N), other.lift(N)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        c = dict(a._c)
        for e, v in b._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return Cyc._canonical(a.n, c)

    __radd__ = __add__

    def __neg__(self):
        return Cyc._canonical(self.n, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyc._canonical(self.n, {})
            return Cyc._canonical(self.n, {e: v * other for e, v in self._c.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        n = a.n
        if n == 1:
            return Cyc.rational(a.rational_value() * b.rational_value())
        xs, da = _numerators(a._c)
        ys, db = _numerators(b._c)
        vec = [0] * n
        for e1, v1 in xs:
            for e2, v2 in ys:
                e = e1 + e2
                if e >= n:
                    e -= n
                vec[e] += v1 * v2
        return Cyc._canonical(n, _reduce_ints(n, vec, da * db))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a cyclotomic by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyc._canonical(self.n, {0: Fraction(1)})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyc":
        """Image under the automorphism zeta_n -> zeta_n^k."""
        if gcd(k, self.n) != 1:
            raise NotCoprime(f"{k} is not coprime to {self.n}")
        n = self.n
        return Cyc._canonical(n, _reduce(n, {e * k % n: v for e, v in self._c.items()}))

    def conj(self) -> "Cyc":
        return self.galois(-1)

    # -- predicates ----------------------------------------------------------------

    def rational_value(self):
        """The value as a Fraction when the support is {0} or empty, else None."""
        if not self._c:
            return Fraction(0)
        if len(self._c) == 1 and 0 in self._c:
            return self._c[0]
        return None

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o) if self.n != o.n else (self, o)
        return a._c == b._c

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_n)/Q}(self) / phi(n); independent of the conductor used."""
        total = Fraction(0)
        n = self.n
        for e, v in self._c.items():
            m = n // gcd(e, n)
            total += v * _mobius(m) / euler_phi(m)
        return total

    def __hash__(self):
        return hash(self.normalized_trace())

    def __repr__(self):
        return f"Cyc({self.n}, {{{', '.join(f'{e}: {str(v)!r}' for e, v in sorted(self._c.items()))}}})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = f"z{self.n}"
            else:
                mono = f"z{self.n}^{e}"
            mag = abs(v)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# -- module-level operations ---------------------------------------------------------

def root_of_unity(n: int, k: int = 1) -> Cyc:
    if n < 1:
        raise ValueError("n must be positive")
    return Cyc(n, {k % n: 1})


def cyc_arith(a: Cyc, b: Cyc, op: str) -> Cyc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def galois(a: Cyc, k: int) -> Cyc:
    return a.galois(k)


def is_rational(a: Cyc):
    """Rational value of ``a`` (as a Fraction) or None; decided from the support."""
    return a.rational_value()


def is_rational_galois(a: Cyc):
    """Same answer as :func:`is_rational`, decided by Galois invariance instead."""
    n = a.n
    for k in range(2, n):
        if gcd(k, n) == 1 and a.galois(k) != a:
            return None
    # fixed by the whole Galois group, so the value is the normalized trace
    return a.normalized_trace()


def two_cos(n: int, a: int) -> Cyc:
    """zeta_n^a + zeta_n^-a, i.e. 2cos(2 pi a / n)."""
    return Cyc(n, {a % n: 1, -a % n: 1}) if (2 * a) % n else Cyc(n, {a % n: 2})


def trig_is_rational(n: int, a: int) -> bool:
    """Whether 2cos(2 pi a / n) is rational, from the reduced fraction a/n alone."""
    if n < 1:
        raise ValueError("n must be positive")
    return n // gcd(a, n) in (1, 2, 3, 4, 6)


def legendre(t: int, p: int) -> int:
    t %= p
    if t == 0:
        return 0
    return 1 if pow(t, (p - 1) // 2, p) == 1 else -1


def gauss_sum(p: int) -> Cyc:
    """Quadratic Gauss sum over GF(p); it squares to p or -p as p is 1 or 3 mod 4."""
    return Cyc(p, {t: legendre(t, p) for t in range(1, p)})


def sqrt_signed_q(p: int, m: int) -> Cyc:
    """sqrt(q) if q = p^m is 1 mod 4, sqrt(-q) if q is 3 mod 4."""
    if p == 2:
        raise EvenCharacteristic("no signed square root in characteristic 2")
    if not is_prime(p) or m < 1:
        raise ValueError(f"need an odd prime and m >= 1, got p={p}, m={m}")
    if m % 2 == 0:
        return Cyc.rational(p ** (m // 2))
    return gauss_sum(p) * p ** ((m - 1) // 2)


def cyc_sum(terms) -> Cyc:
    """Sum of Cyc/rational terms, added per conductor before mixing conductors.

    Adding like conductors first keeps intermediate values in small fields
    when the cross-conductor parts cancel to rationals.
    """
    buckets: dict[int, Cyc] = {}
    for t in terms:
        t = Cyc._coerce(t)
        if t is None:
            raise TypeError("cyc_sum expects Cyc or rational terms")
        if not t._c:
            continue
        acc = buckets.get(t.n)
        buckets[t.n] = t if acc is None else acc + t
    total = Cyc.rational(0)
    for n in sorted(buckets):
        total = total + buckets[n].minimize()
    return total
