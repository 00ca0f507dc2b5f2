"""Finite fields GF(p^m) as polynomial residues over GF(p).

Elements are tuples of coefficients, low degree first.  Every field is
built from the lexicographically smallest monic irreducible polynomial of
its degree, so two runs always produce the same model of GF(p^m).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

#: Largest field (number of elements) we agree to construct.
FIELD_SIZE_CAP = 2**20


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class NotPrimePower(FieldError):
    pass


class DegreeZero(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class FieldMismatch(TypeError):
    pass


class DivideByZero(ZeroDivisionError):
    pass


class EvenCharacteristicNoNonsquare(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise :class:`NotPrimePower`."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p = ps[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    _trim(a)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (low degree first) over GF(p)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for r in prime_factors(m):
        h = _psub(_ppowmod(x, p ** (m // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m`` over GF(p).

    Candidates are compared by their coefficient tuple, constant term first.
    """
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields ----------------------------------------------------------------------

class Field:
    """The field GF(p^m) = GF(p)[x] / (modulus)."""

    __slots__ = ("p", "m", "modulus", "order", "_gen")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**m
        self._gen = None

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __len__(self):
        return self.order

    def __call__(self, value) -> "FieldElem":
        """Coerce an integer (mapped through GF(p)) or a coefficient sequence."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = [c % self.p for c in value]
        coeffs = _pmod(coeffs, self.modulus, self.p) if len(coeffs) > self.m else coeffs
        coeffs = list(coeffs) + [0] * (self.m - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.m)

    @property
    def one(self) -> "FieldElem":
        return self(1)

    @property
    def x(self) -> "FieldElem":
        """The class of the polynomial variable."""
        return self([0, 1])

    def from_int(self, code: int) -> "FieldElem":
        """Inverse of ``int(elem)``: base-p digits, constant term least significant."""
        coeffs = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            coeffs.append(r)
        return FieldElem(self, tuple(coeffs))

    def elements(self):
        """All elements ordered by coefficient tuple (constant term first)."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FieldElem(self, coeffs)

    def is_frobenius_consistent(self) -> bool:
        """Check that the modulus divides x^(p^m) - x."""
        x = _pmod([0, 1], self.modulus, self.p)
        return not _psub(_ppowmod(x, self.order, self.modulus, self.p), x, self.p)


class FieldElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def __repr__(self):
        if self.field.m == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{'*' if mono else ''}{mono}" if c != 1 or not mono else mono)
        return " + ".join(reversed(terms)) or "0"

    def __int__(self):
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    __index__ = __int__

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def _other(self, other):
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElem):
            return None
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.m == 1:
            return FieldElem(f, ((self.coeffs[0] * o.coeffs[0]) % f.p,))
        prod = _pmulmod(list(self.coeffs), list(o.coeffs), f.modulus, f.p)
        return FieldElem(f, tuple(prod) + (0,) * (f.m - len(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise DivideByZero("inverse of zero")
        # a^(q-2) = a^-1 in GF(q)
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            if not self:
                raise DivideByZero("zero to a negative power")
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self, times: int = 1) -> "FieldElem":
        return self ** (self.field.p**times)

    def multiplicative_order(self) -> int:
        if not self:
            raise DivideByZero("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and self ** (order // r) == 1:
                order //= r
        return order


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> Field:
    """GF(p^m) with the lex-smallest monic irreducible modulus."""
    if m < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {m}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p**m > FIELD_SIZE_CAP:
        raise FieldTooLarge(f"GF({p}^{m}) exceeds the field size cap {FIELD_SIZE_CAP}")
    return Field(p, m, smallest_irreducible(p, m))


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def find_generator(f: Field) -> FieldElem:
    """First generator of the multiplicative group in element enumeration order."""
    if f._gen is None:
        n = f.order - 1
        for g in f.elements():
            if g and g.multiplicative_order() == n:
                f._gen = g
                break
    return f._gen


def find_nonsquare(f: Field) -> FieldElem:
    if f.order % 2 == 0:
        raise EvenCharacteristicNoNonsquare(f"{f!r} has no non-squares")
    return find_generator(f)


class SubfieldEmbedding:
    """Field homomorphism ``small -> big`` for ``small = GF(p^m)`` inside ``big = GF(p^(km))``.

    The image of the variable of ``small`` is the root of its modulus that is
    the smallest power of ``g^((|big|-1)/(|small|-1))``, ``g`` the generator of
    ``big``.  ``restrict`` inverts the map on the image and raises
    ``ValueError`` elsewhere.
    """

    def __init__(self, small: Field, big: Field):
        if small.p != big.p or big.m % small.m:
            raise FieldMismatch(f"{small!r} does not embed in {big!r}")
        self.small = small
        self.big = big
        h = find_generator(big) ** ((big.order - 1) // (small.order - 1))
        candidates = [big.zero] + [h**k for k in range(small.order - 1)]
        self.root = next(r for r in candidates if self._eval_modulus(r) == 0)
        self._powers = [big.one]
        for _ in range(small.m - 1):
            self._powers.append(self._powers[-1] * self.root)
        self._back = {self(e): e for e in small.elements()}

    def _eval_modulus(self, r):
        acc = self.big.zero
        for c in reversed(self.small.modulus):
            acc = acc * r + c
        return acc

    def __call__(self, a: FieldElem) -> FieldElem:
        acc = self.big.zero
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                acc = acc + pw * c
        return acc

    def contains(self, b: FieldElem) -> bool:
        return b in self._back

    def restrict(self, b: FieldElem) -> FieldElem:
        try:
            return self._back[b]
        except KeyError:
            raise ValueError(f"{b!r} is not in the image of {self.small!r}") from None
