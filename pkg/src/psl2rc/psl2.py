"""PSL_2(q): elements, named class representatives, and a brute-force oracle.

The named representatives I, N, N', S(a), T(b) are built from a generator
``tau`` of GF(q^2)^x through ``sigma = tau^(q+1)`` and ``tau0 = tau^(q-1)``.
The oracle side (:class:`GroupOracle`) never looks at traces or the
character table; it enumerates the whole group and partitions it into
conjugation orbits with numpy lookup tables.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .gf import (
    Field,
    FieldElem,
    SubfieldEmbedding,
    find_generator,
    find_nonsquare,
    make_field,
    prime_power,
)

ORACLE_CAP = 10**5


class OracleCapExceeded(RuntimeError):
    pass


class ClassFamily(enum.Enum):
    IDENTITY = "Identity"
    UNIPOTENT_N = "UnipotentN"
    UNIPOTENT_N_PRIME = "UnipotentNPrime"
    SPLIT = "Split"
    NONSPLIT = "NonSplit"


def group_order(q: int) -> int:
    prime_power(q)
    return q * (q * q - 1) // gcd(2, q - 1)


class ProjMatrix:
    """A 2x2 determinant-one matrix over GF(q), taken up to sign.

    Of ``M`` and ``-M`` the stored one is whichever has the smaller first
    nonzero entry (row-major, entries compared by ``int``).
    """

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries):
        a, b, c, d = (field(x) for x in entries)
        if a * d - b * c != field.one:
            raise ValueError("matrix does not have determinant 1")
        self.field = field
        self.entries = _normalize((a, b, c, d))

    @classmethod
    def _raw(cls, field, entries):
        obj = object.__new__(cls)
        obj.field = field
        obj.entries = _normalize(entries)
        return obj

    @classmethod
    def identity(cls, field: Field) -> "ProjMatrix":
        return cls._raw(field, (field.one, field.zero, field.zero, field.one))

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return ProjMatrix._raw(self.field, (a * e + b * g, a * f + b * h,
                                            c * e + d * g, c * f + d * h))

    def inverse(self) -> "ProjMatrix":
        a, b, c, d = self.entries
        return ProjMatrix._raw(self.field, (d, -b, -c, a))

    def __pow__(self, k: int) -> "ProjMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = ProjMatrix.identity(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> FieldElem:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> FieldElem:
        """Trace of the stored representative; only defined up to sign when q is odd."""
        return self.entries[0] + self.entries[3]

    def is_identity(self) -> bool:
        return self == ProjMatrix.identity(self.field)

    def code(self) -> int:
        q = self.field.order
        a, b, c, d = (int(x) for x in self.entries)
        return ((a * q + b) * q + c) * q + d

    def __eq__(self, other):
        return (isinstance(other, ProjMatrix) and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.code())

    def __repr__(self):
        a, b, c, d = self.entries
        return f"[[{a!r}, {b!r}], [{c!r}, {d!r}]]"


def _normalize(entries):
    for x in entries:
        if x:
            neg = -x
            if int(neg) < int(x):
                return tuple(-y for y in entries)
            return tuple(entries)
    raise ValueError("zero matrix")


def element_order(g: ProjMatrix) -> int:
    """Least n >= 1 with g^n = I in PSL_2(q)."""
    n = 1
    h = g
    while not h.is_identity():
        h = h * g
        n += 1
    return n


@dataclass(frozen=True)
class ConjugacyClass:
    family: ClassFamily
    param: int
    rep: ProjMatrix = field(compare=False)
    size: int
    elt_order: int

    @property
    def label(self) -> str:
        if self.family is ClassFamily.IDENTITY:
            return "I"
        if self.family is ClassFamily.UNIPOTENT_N:
            return "N"
        if self.family is ClassFamily.UNIPOTENT_N_PRIME:
            return "N'"
        letter = "S" if self.family is ClassFamily.SPLIT else "T"
        return f"{letter}({self.param})"


class PSL2:
    """Fields, fixed generators and named matrices for one q."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.m = prime_power(q)
        self.Fq = make_field(self.p, self.m)
        self.Fq2 = make_field(self.p, 2 * self.m)
        self.embed = SubfieldEmbedding(self.Fq, self.Fq2)
        self.tau = find_generator(self.Fq2)
        self.sigma = self.embed.restrict(self.tau ** (q + 1))
        self.tau0 = self.tau ** (q - 1)
        self.xi = find_nonsquare(self.Fq) if q % 2 else None

    @property
    def order(self) -> int:
        return group_order(self.q)

    def identity(self) -> ProjMatrix:
        return ProjMatrix.identity(self.Fq)

    def N(self) -> ProjMatrix:
        return ProjMatrix(self.Fq, (1, 1, 0, 1))

    def N_prime(self) -> ProjMatrix:
        if self.xi is None:
            raise ValueError("N' only exists for odd q")
        F = self.Fq
        return ProjMatrix(F, (F.one, self.xi, F.zero, F.one))

    def S(self, a: int) -> ProjMatrix:
        F = self.Fq
        return ProjMatrix(F, (self.sigma**a, F.zero, F.zero, self.sigma ** (-a)))

    def T_trace(self, b: int) -> FieldElem:
        """tau0^b + tau0^(qb), computed in GF(q^2) and pulled back into GF(q)."""
        t = self.tau0**b + self.tau0 ** (self.q * b)
        if t ** self.q != t:
            raise AssertionError("trace of T(b) is not Frobenius-fixed")
        return self.embed.restrict(t)

    def T(self, b: int) -> ProjMatrix:
        F = self.Fq
        return ProjMatrix(F, (F.zero, -F.one, F.one, self.T_trace(b)))


@lru_cache(maxsize=None)
def psl2(q: int) -> PSL2:
    return PSL2(q)


def class_reps(q: int) -> list[ConjugacyClass]:
    """Named class representatives in table column order.

    Columns: I, N, [N'], S(a) ascending, special S, T(b) ascending, special T.
    """
    G = psl2(q)
    out = []

    def add(family, param, rep, size):
        out.append(ConjugacyClass(family, param, rep, size, element_order(rep)))

    add(ClassFamily.IDENTITY, 0, G.identity(), 1)
    if q % 2 == 0:
        add(ClassFamily.UNIPOTENT_N, 0, G.N(), q * q - 1)
        for a in range(1, q // 2):
            add(ClassFamily.SPLIT, a, G.S(a), q * (q + 1))
        for b in range(1, q // 2 + 1):
            add(ClassFamily.NONSPLIT, b, G.T(b), q * (q - 1))
        return out
    add(ClassFamily.UNIPOTENT_N, 0, G.N(), (q * q - 1) // 2)
    add(ClassFamily.UNIPOTENT_N_PRIME, 0, G.N_prime(), (q * q - 1) // 2)
    if q % 4 == 1:
        for a in range(1, (q - 5) // 4 + 1):
            add(ClassFamily.SPLIT, a, G.S(a), q * (q + 1))
        add(ClassFamily.SPLIT, (q - 1) // 4, G.S((q - 1) // 4), q * (q + 1) // 2)
        for b in range(1, (q - 1) // 4 + 1):
            add(ClassFamily.NONSPLIT, b, G.T(b), q * (q - 1))
    else:
        for a in range(1, (q - 3) // 4 + 1):
            add(ClassFamily.SPLIT, a, G.S(a), q * (q + 1))
        for b in range(1, (q - 3) // 4 + 1):
            add(ClassFamily.NONSPLIT, b, G.T(b), q * (q - 1))
        add(ClassFamily.NONSPLIT, (q + 1) // 4, G.T((q + 1) // 4), q * (q - 1) // 2)
    return out


# -- brute-force oracle ------------------------------------------------------------

class GroupOracle:
    """Every element of PSL_2(q), partitioned into conjugacy classes by orbit search.

    Elements are encoded as integers ``((a*q + b)*q + c)*q + d`` of their
    normalized entries.  Field arithmetic goes through q x q lookup tables
    taken from :mod:`psl2rc.gf`.
    """

    def __init__(self, q: int):
        self.q = q
        F = psl2(q).Fq
        self.field = F
        elems = [F.from_int(i) for i in range(q)]
        self.add = np.array([[int(x + y) for y in elems] for x in elems], dtype=np.int64)
        self.mul = np.array([[int(x * y) for y in elems] for x in elems], dtype=np.int64)
        self.neg = np.array([int(-x) for x in elems], dtype=np.int64)
        self.inv = np.array([int(x.inverse()) if x else 0 for x in elems], dtype=np.int64)
        self.codes = self._enumerate()
        self.labels = self._partition()

    def _encode(self, a, b, c, d):
        q = self.q
        code = ((a * q + b) * q + c) * q + d
        if q % 2 == 0:
            return code
        neg = self.neg
        alt = ((neg[a] * q + neg[b]) * q + neg[c]) * q + neg[d]
        return np.minimum(code, alt)

    def _enumerate(self):
        q = self.q
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        a, b, c = (x.ravel() for x in np.meshgrid(np.arange(q), np.arange(q), np.arange(q),
                                                   indexing="ij"))
        # a != 0: d = (1 + bc) / a
        m = a != 0
        aa, bb, cc = a[m], b[m], c[m]
        dd = mul[add[1, mul[bb, cc]], inv[aa]]
        parts = [(aa, bb, cc, dd)]
        # a == 0: bc = -1, d free
        bs = np.arange(1, q)
        cs = mul[neg[1], inv[bs]]
        b0 = np.repeat(bs, q)
        c0 = np.repeat(cs, q)
        d0 = np.tile(np.arange(q), q - 1)
        parts.append((np.zeros_like(b0), b0, c0, d0))
        codes = np.concatenate([self._encode(*pt) for pt in parts])
        return np.unique(codes)

    def decode(self, codes):
        q = self.q
        codes = np.asarray(codes)
        d = codes % q
        c = codes // q % q
        b = codes // (q * q) % q
        a = codes // (q * q * q)
        return a, b, c, d

    def _orbit(self, code):
        add, mul, neg = self.add, self.mul, self.neg
        xa, xb, xc, xd = self.decode(self.codes)
        ga, gb, gc, gd = (int(v) for v in self.decode(code))
        # x g
        p11 = add[mul[xa, ga], mul[xb, gc]]
        p12 = add[mul[xa, gb], mul[xb, gd]]
        p21 = add[mul[xc, ga], mul[xd, gc]]
        p22 = add[mul[xc, gb], mul[xd, gd]]
        # (x g) x^-1 with x^-1 = [[d, -b], [-c, a]]
        nb, nc = neg[xb], neg[xc]
        r11 = add[mul[p11, xd], mul[p12, nc]]
        r12 = add[mul[p11, nb], mul[p12, xa]]
        r21 = add[mul[p21, xd], mul[p22, nc]]
        r22 = add[mul[p21, nb], mul[p22, xa]]
        return np.unique(self._encode(r11, r12, r21, r22))

    def _partition(self):
        labels = np.full(len(self.codes), -1, dtype=np.int64)
        self.orbit_reps = []
        cls = 0
        while True:
            free = np.flatnonzero(labels < 0)
            if not len(free):
                break
            rep = self.codes[free[0]]
            orbit = self._orbit(rep)
            labels[np.searchsorted(self.codes, orbit)] = cls
            self.orbit_reps.append(int(rep))
            cls += 1
        return labels

    @property
    def class_sizes(self) -> list[int]:
        return np.bincount(self.labels).tolist()

    def matrix(self, code: int) -> ProjMatrix:
        a, b, c, d = (self.field.from_int(int(v)) for v in self.decode(code))
        return ProjMatrix._raw(self.field, (a, b, c, d))

    def class_of(self, g: ProjMatrix) -> int:
        code = g.code()
        i = int(np.searchsorted(self.codes, code))
        if i >= len(self.codes) or self.codes[i] != code:
            raise ValueError(f"{g!r} is not an element of PSL_2({self.q})")
        return int(self.labels[i])


_oracle_lock = threading.Lock()
_oracles: dict[int, GroupOracle] = {}


def oracle(q: int, cap: int = None) -> GroupOracle:
    """The cached oracle for q; built once, under a lock."""
    cap = ORACLE_CAP if cap is None else cap
    n = group_order(q)
    if n > cap:
        raise OracleCapExceeded(f"|PSL_2({q})| = {n} exceeds the oracle cap {cap}")
    with _oracle_lock:
        if q not in _oracles:
            _oracles[q] = GroupOracle(q)
        return _oracles[q]


def _oracle_for(g: ProjMatrix, cap):
    return oracle(g.field.order, cap)


def conjugate_test(g: ProjMatrix, h: ProjMatrix, cap: int = None) -> bool:
    """Whether some x has x g x^-1 = h, decided on the enumerated orbits."""
    O = _oracle_for(g, cap)
    return O.class_of(g) == O.class_of(h)


def is_rational_element(g: ProjMatrix, cap: int = None) -> bool:
    """Whether g is conjugate to g^k for every k coprime to its order."""
    O = _oracle_for(g, cap)
    n = element_order(g)
    cls = O.class_of(g)
    return all(O.class_of(g**k) == cls for k in range(2, n) if gcd(k, n) == 1)


def enumerate_classes_bruteforce(q: int, cap: int = None) -> list[tuple[ProjMatrix, int, int]]:
    """(representative, size, element order) for every conjugation orbit."""
    O = oracle(q, cap)
    sizes = O.class_sizes
    out = []
    for i, code in enumerate(O.orbit_reps):
        rep = O.matrix(code)
        out.append((rep, sizes[i], element_order(rep)))
    return out


def count_rational_classes_oracle(q: int, cap: int = None) -> int:
    return sum(is_rational_element(rep, cap) for rep, _, _ in enumerate_classes_bruteforce(q, cap))
