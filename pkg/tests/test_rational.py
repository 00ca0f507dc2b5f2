import pytest

from psl2rc.chartab import build_char_table
from psl2rc.gf import NotPrimePower
from psl2rc.rational import (
    lemma_equivalence_check, predict_rc, rational_characters,
    rational_characters_fast, rational_classes, rational_classes_fast, rc_census,
    verify_range,
)


def test_q13_labels():
    t = build_char_table(13)
    assert rational_classes(t) == ["I", "S(1)", "S(2)", "S(3)"]
    assert rational_characters(t) == ["psi_1", "psi_13", "psi_14^(2)", "psi_14^(4)"]


def test_q27_labels():
    t = build_char_table(27)
    assert rational_classes(t) == ["I", "T(7)"]
    assert rational_characters(t) == ["psi_1", "psi_27"]


@pytest.mark.parametrize("q", [4, 7, 9, 16, 25, 29, 32])
def test_fast_path_agrees(q):
    t = build_char_table(q)
    assert rational_classes_fast(t) == rational_classes(t)
    assert rational_characters_fast(t) == rational_characters(t)


def test_predict_first_match():
    assert predict_rc(27).case_id == "1"
    assert predict_rc(8).case_id == "2a"
    p5 = predict_rc(5)
    assert (p5.case_id, p5.rc, p5.conflicts) == ("2c", 3, ["3"])
    p25 = predict_rc(25)
    assert (p25.case_id, p25.rc) == ("4b", 5) and "5" in p25.conflicts


def test_every_prime_power_matches_some_case():
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 81, 121, 125, 243, 1024):
        predict_rc(q)
    with pytest.raises(NotPrimePower):
        predict_rc(6)


def test_census_reports_mismatch_but_does_not_raise():
    r = rc_census(7)
    assert (r.n_rational_classes, r.n_rational_characters, r.oracle_count) == (4, 4, 4)
    assert any("prediction mismatch" in d for d in r.discrepancies)
    assert r.equality_holds
    assert "PSL2(7): classes=4 characters=4" in r.render()


def test_census_without_oracle():
    r = rc_census(9, use_oracle=False)
    assert r.oracle_count is None and r.n_rational_classes == 5


def test_text_notes():
    assert any("psi_-'" in n for n in rc_census(9, use_oracle=False).notes)
    assert any("S((q-1)/3)" in n for n in rc_census(16, use_oracle=False).notes)


@pytest.mark.parametrize("q", [4, 5, 7, 9, 11, 13])
def test_lemma(q):
    rep = lemma_equivalence_check(q)
    assert rep.ok, rep.mismatches
    assert len(rep.rows) == len(build_char_table(q).classes)


def test_verify_range_parallel_matches_serial():
    qs = [8, 2, 5, 3, 7]
    a = verify_range(qs, jobs=1)
    b = verify_range(qs, jobs=2)
    assert [r.q for r in a.reports] == [2, 3, 5, 7, 8]
    assert a.to_dict() == b.to_dict()
    assert a.prediction_mismatches == [7] and a.ok
