import itertools
from collections import Counter
from math import gcd

import pytest

from psl2rc.gf import make_field
from psl2rc.psl2 import (
    ClassFamily, OracleCapExceeded, ProjMatrix, class_reps, conjugate_test,
    count_rational_classes_oracle, element_order, enumerate_classes_bruteforce,
    group_order, is_rational_element, oracle, psl2,
)

SMALL_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13]


def naive_classes(p):
    """Conjugacy classes of PSL_2(p), p prime, with plain tuples mod p."""
    def norm(m):
        neg = tuple(-x % p for x in m)
        return min(m, neg)

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return norm(((a * e + b * g) % p, (a * f + b * h) % p,
                     (c * e + d * g) % p, (c * f + d * h) % p))

    G = {norm(m) for m in itertools.product(range(p), repeat=4)
         if (m[0] * m[3] - m[1] * m[2]) % p == 1}
    inv = {g: norm((g[3], -g[1] % p, -g[2] % p, g[0])) for g in G}
    seen, classes = set(), []
    for g in sorted(G):
        if g in seen:
            continue
        orbit = {mul(mul(x, g), inv[x]) for x in G}
        seen |= orbit
        classes.append(orbit)
    return G, classes


def test_group_order():
    assert [group_order(q) for q in (2, 3, 4, 5, 7, 8, 9)] == [6, 12, 60, 60, 168, 504, 360]


@pytest.mark.parametrize("q", SMALL_QS)
def test_class_reps_shape(q):
    cls = class_reps(q)
    assert sum(c.size for c in cls) == group_order(q)
    assert len(cls) == (q + 1 if q % 2 == 0 else (q + 5) // 2)
    for c in cls:
        assert element_order(c.rep) == c.elt_order
    assert cls[0].family is ClassFamily.IDENTITY and cls[0].label == "I"


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_class_sizes_match_naive_enumeration(p):
    G, naive = naive_classes(p)
    assert len(G) == group_order(p)
    assert Counter(len(c) for c in naive) == Counter(c.size for c in class_reps(p))
    O = oracle(p)
    assert Counter(O.class_sizes) == Counter(len(c) for c in naive)


@pytest.mark.parametrize("q", SMALL_QS)
def test_reps_lie_in_distinct_oracle_classes(q):
    O = oracle(q)
    cls = class_reps(q)
    ids = [O.class_of(c.rep) for c in cls]
    assert len(set(ids)) == len(cls)
    for c, i in zip(cls, ids):
        assert O.class_sizes[i] == c.size


def test_projective_normalization():
    F = make_field(7)
    m = ProjMatrix(F, (1, 2, 0, 1))
    assert ProjMatrix(F, (6, 5, 0, 6)) == m
    assert (m * m.inverse()).is_identity()
    assert element_order(m) == 7
    with pytest.raises(ValueError):
        ProjMatrix(F, (1, 1, 1, 1))


def test_conjugacy_of_unipotents():
    G = psl2(7)
    assert not conjugate_test(G.N(), G.N_prime())
    assert conjugate_test(G.N(), G.N() ** 2)       # 2 is a square mod 7
    assert not is_rational_element(G.N())
    assert is_rational_element(G.S(1))


def test_rational_class_count_q5_q7():
    assert count_rational_classes_oracle(5) == 3
    assert count_rational_classes_oracle(7) == 4


def test_rational_elements_against_naive():
    p = 7
    G, naive = naive_classes(p)
    F = make_field(p)
    count = 0
    for orbit in naive:
        g = ProjMatrix(F, next(iter(orbit)))
        n = element_order(g)
        want = all(tuple(int(x) for x in (g ** k).entries) in orbit
                   for k in range(1, n) if gcd(k, n) == 1)
        assert is_rational_element(g) == want
        count += want
    assert count == 4


def test_bruteforce_and_cap():
    rows = enumerate_classes_bruteforce(4)
    assert sorted(s for _, s, _ in rows) == sorted(c.size for c in class_reps(4))
    with pytest.raises(OracleCapExceeded):
        oracle(64, cap=1000)
