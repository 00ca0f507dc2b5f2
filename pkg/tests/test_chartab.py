import cmath
import math

import pytest

from psl2rc.chartab import (
    CapExceeded, IndexOutOfRange, build_char_table, check_table, entry,
    form_text, omega, validate_table,
)
from psl2rc.cyclo import Cyc

GOLDEN = (1 + math.sqrt(5)) / 2


def num(v):
    return sum(float(c) * cmath.exp(2j * math.pi * e / v.n) for e, c in v.coeffs.items())


def numeric_table(t):
    return [[num(v) for v in row] for row in t.values]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27])
def test_validates(q):
    t = build_char_table(q)
    rep = validate_table(t)
    assert rep.ok, rep.failures
    assert len(t.characters) == len(t.classes)


def test_a5_from_both_isomorphic_groups():
    # A5 = PSL2(4) = PSL2(5); compare the multiset of rows as real numbers
    def rows(q):
        t = build_char_table(q)
        order = sorted(range(len(t.classes)), key=lambda j: (t.classes[j].elt_order, t.classes[j].size))
        return sorted(tuple(round(numeric_table(t)[i][j].real, 9) for j in order)
                      for i in range(len(t.characters)))
    known = sorted([
        (1, 1, 1, 1, 1),
        (3, -1, 0, round(GOLDEN, 9), round(1 - GOLDEN, 9)),
        (3, -1, 0, round(1 - GOLDEN, 9), round(GOLDEN, 9)),
        (4, 0, 1, -1, -1),
        (5, 1, -1, 0, 0),
    ])
    assert rows(4) == known
    assert rows(5) == known


def test_psl27_degrees_and_omega():
    t = build_char_table(7)
    assert sorted(t.degrees) == [1, 3, 3, 6, 7, 8]
    w = omega(7)
    assert w * w - w + 2 == 0            # root of x^2 - x + 2
    assert entry(t, "psi_-'", "N") == -(1 - w)


def test_forms_agree_with_values():
    t = build_char_table(13)
    for frow, vrow in zip(t.forms, t.values):
        for f, v in zip(frow, vrow):
            assert isinstance(form_text(f), str)
            assert v == v.minimize()


def test_perturbation_is_caught():
    t = build_char_table(11)
    values = [list(r) for r in t.values]
    values[3][4] = values[3][4] + Cyc.rational(1)
    rep = check_table(t.group_order, t.class_sizes, values)
    assert not rep.ok


def test_non_square_table():
    rep = check_table(3, [1, 1, 1], [[Cyc.rational(1)] * 3])
    assert not rep.ok and "square" in rep.failures[0]


def test_lookup_errors():
    t = build_char_table(5)
    with pytest.raises(IndexOutOfRange):
        t.row(99)
    with pytest.raises(IndexOutOfRange):
        t.column("Z")
    assert t.column("I") == [Cyc.rational(d) for d in t.degrees]
    with pytest.raises(CapExceeded):
        build_char_table(2048)
