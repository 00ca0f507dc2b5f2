"""Rational classes, rational characters and the RC census for PSL_2(q).

The exact answer always comes from scanning cyclotomic table entries.  Two
independent routes check it: a trig-fraction fast path over the symbolic
entry forms, and the brute-force element oracle from :mod:`psl2rc.psl2`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd, isqrt

from .chartab import CharTable, build_char_table, validate_table
from .cyclo import trig_is_rational
from .gf import prime_power
from .psl2 import (
    ORACLE_CAP,
    class_reps,
    count_rational_classes_oracle,
    enumerate_classes_bruteforce,
    group_order,
    is_rational_element,
    oracle,
)

RC_BY_CASE = {"1": 2, "2a": 3, "2b": 3, "2c": 3, "3": 4, "4a": 5, "4b": 5, "5": 7}


class NoCaseMatched(RuntimeError):
    pass


@dataclass
class PredictedCase:
    case_id: str
    rc: int
    conflicts: list = field(default_factory=list)


@dataclass
class RCReport:
    q: int
    n_rational_classes: int
    n_rational_characters: int
    rational_class_labels: list
    rational_character_labels: list
    predicted: PredictedCase = None
    oracle_count: int = None
    discrepancies: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    group_name: str = None

    @property
    def equality_holds(self) -> bool:
        return self.n_rational_classes == self.n_rational_characters

    def to_dict(self) -> dict:
        d = asdict(self)
        d["equality_holds"] = self.equality_holds
        return d

    def render(self) -> str:
        head = self.group_name or f"PSL2({self.q})"
        line = f"{head}: classes={self.n_rational_classes} characters={self.n_rational_characters}"
        if self.predicted is not None:
            line += f" predicted={self.predicted.rc} (case {self.predicted.case_id})"
        out = [line]
        out.append("rational classes: " + ", ".join(self.rational_class_labels))
        out.append("rational characters: " + ", ".join(self.rational_character_labels))
        if self.oracle_count is not None:
            out.append(f"oracle: {self.oracle_count} rational classes by element search")
        for d in self.discrepancies:
            out.append(f"warning: {d}")
        for n in self.notes:
            out.append(f"note: {n}")
        return "\n".join(out)


def _all_rational(values) -> bool:
    return all(v.rational_value() is not None for v in values)


def rational_classes(t: CharTable) -> list[str]:
    """Labels of the classes whose whole column is rational."""
    return [lab for j, lab in enumerate(t.class_labels) if _all_rational(t.column(j))]


def rational_characters(t: CharTable) -> list[str]:
    """Labels of the characters whose whole row is rational."""
    return [lab for i, lab in enumerate(t.character_labels) if _all_rational(t.values[i])]


# -- fast path -------------------------------------------------------------------

def _form_is_rational(form, q):
    kind = form[0]
    if kind == "rat":
        return True
    if kind == "2cos":
        return trig_is_rational(form[2], form[3])
    if kind == "root":
        _, _, n, e = form
        return n // gcd(e, n) in (1, 2)
    if kind == "omega":
        # w = (1 + sqrt(+-q))/2 is rational exactly when q is a square
        return isqrt(q) ** 2 == q
    raise ValueError(f"unknown form {form!r}")


def rational_classes_fast(t: CharTable) -> list[str]:
    """Same as :func:`rational_classes`, decided from reduced exponent fractions."""
    ncls = len(t.classes)
    return [t.class_labels[j] for j in range(ncls)
            if all(_form_is_rational(row[j], t.q) for row in t.forms)]


def rational_characters_fast(t: CharTable) -> list[str]:
    return [t.character_labels[i] for i, row in enumerate(t.forms)
            if all(_form_is_rational(f, t.q) for f in row)]


# -- the congruence cases ---------------------------------------------------------

def _case_matches(q):
    p, m = prime_power(q)
    cases = []
    if p == 3 and m % 2 == 1:
        cases.append("1")
    if p == 2:
        cases.append("2a")
    if q % 3 == 1 and q % 4 == 3:
        cases.append("2b")
    if q % 3 == 2 and q % 4 == 1:
        cases.append("2c")
    if q % 12 in (1, 5, 7, 11) and q % 24 not in (1, 23):
        cases.append("3")
    if p == 3 and m % 2 == 0:
        cases.append("4a")
    if q % 24 in (1, 23):
        cases.append("4b")
    if m % 2 == 0 and q > 13 and q % 2 == 1:
        cases.append("5")
    return cases


def predict_rc(q: int) -> PredictedCase:
    """First matching congruence case, in the listed order; later matches are conflicts."""
    cases = _case_matches(q)
    if not cases:
        raise NoCaseMatched(f"no case matches q = {q}")
    return PredictedCase(cases[0], RC_BY_CASE[cases[0]], cases[1:])


# -- census ----------------------------------------------------------------------

def _text_notes(q):
    p, m = prime_power(q)
    notes = []
    if p == 3 and m % 2 == 0:
        notes.append("for q = 3^(2l) the rational characters of degree (q+1)/2 are "
                     "psi_+', psi_+'' (q = 1 mod 4); the usual case statement calls them psi_-', psi_-''")
    if p == 2:
        notes.append("for q = 2^m the usual case statement names the extra rational class "
                     "T((q-1)/3) for even m and S((q+1)/3) for odd m; the column scan "
                     "finds S((q-1)/3) resp. T((q+1)/3)")
    return notes


def rc_census(q: int, use_oracle: bool = True, oracle_cap: int = None) -> RCReport:
    """Build, validate and census the table of PSL_2(q); discrepancies are reported, never raised."""
    cap = ORACLE_CAP if oracle_cap is None else oracle_cap
    t = build_char_table(q)
    disc = []
    val = validate_table(t)
    disc.extend(f"table validation: {f}" for f in val.failures)
    rcl = rational_classes(t)
    rch = rational_characters(t)
    if rational_classes_fast(t) != rcl:
        disc.append("fast path disagrees with the column scan on rational classes")
    if rational_characters_fast(t) != rch:
        disc.append("fast path disagrees with the row scan on rational characters")
    if len(rcl) != len(rch):
        disc.append(f"equality failure: {len(rcl)} rational classes but "
                    f"{len(rch)} rational characters")
    pred = predict_rc(q)
    notes = _text_notes(q)
    if pred.conflicts:
        others = ", ".join(f"case {c} (RC={RC_BY_CASE[c]})" for c in pred.conflicts)
        notes.append(f"prediction conflict: q = {q} also matches {others}")
    if pred.rc != len(rcl):
        disc.append(f"prediction mismatch: case {pred.case_id} predicts RC={pred.rc}, "
                    f"computed {len(rcl)}")
    oc = None
    if use_oracle and group_order(q) <= cap:
        oc = count_rational_classes_oracle(q, cap)
        if oc != len(rcl):
            disc.append(f"oracle mismatch: element search finds {oc} rational classes, "
                        f"the table {len(rcl)}")
    return RCReport(q, len(rcl), len(rch), rcl, rch, pred, oc, disc, notes, t.group_name)


@dataclass
class LemmaReport:
    q: int
    rows: list = field(default_factory=list)      # (oracle rep code, column label, element, column)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _key(rep, size, order):
    t = rep.trace()
    return size, order, frozenset((int(t), int(-t)))


def lemma_equivalence_check(q: int, oracle_cap: int = None) -> LemmaReport:
    """Class by class: conjugacy-defined rationality vs rationality of the table column.

    Oracle classes are matched to columns by (size, element order, trace up to
    sign); ties are broken by locating the explicit representative's orbit.
    """
    O = oracle(q, oracle_cap)
    t = build_char_table(q)
    columns = {}
    for j, c in enumerate(class_reps(q)):
        columns.setdefault(_key(c.rep, c.size, c.elt_order), []).append(j)
    col_rational = [_all_rational(t.column(j)) for j in range(len(t.classes))]
    report = LemmaReport(q)
    used = set()
    for rep, size, order in enumerate_classes_bruteforce(q, oracle_cap):
        cands = columns.get(_key(rep, size, order), [])
        if len(cands) > 1:
            cls = O.class_of(rep)
            cands = [j for j in cands if O.class_of(t.classes[j].rep) == cls]
        if len(cands) != 1:
            report.mismatches.append(f"oracle class of {rep!r} matches columns {cands}")
            continue
        j = cands[0]
        used.add(j)
        elem = is_rational_element(rep, oracle_cap)
        report.rows.append((rep.code(), t.class_labels[j], elem, col_rational[j]))
        if elem != col_rational[j]:
            report.mismatches.append(
                f"{t.class_labels[j]}: element rational={elem}, column rational={col_rational[j]}")
    if len(used) != len(t.classes):
        report.mismatches.append(f"{len(t.classes) - len(used)} table columns left unmatched")
    return report


@dataclass
class VerifySummary:
    reports: list = field(default_factory=list)
    equality_failures: list = field(default_factory=list)
    prediction_mismatches: list = field(default_factory=list)
    oracle_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.equality_failures

    def to_dict(self) -> dict:
        return {
            "reports": [r.to_dict() for r in self.reports],
            "equality_failures": self.equality_failures,
            "prediction_mismatches": self.prediction_mismatches,
            "oracle_mismatches": self.oracle_mismatches,
            "ok": self.ok,
        }


def _census_job(args):
    q, use_oracle, cap = args
    return rc_census(q, use_oracle, cap)


def verify_range(q_list, jobs: int = 1, use_oracle: bool = True, oracle_cap: int = None) -> VerifySummary:
    """Census every q and aggregate; results are sorted by q whatever the worker count."""
    qs = sorted(set(q_list))
    work = [(q, use_oracle, oracle_cap) for q in qs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_census_job, work))
    else:
        reports = [_census_job(w) for w in work]
    summary = VerifySummary(reports)
    for r in reports:
        if not r.equality_holds:
            summary.equality_failures.append(r.q)
        if r.predicted is not None and r.predicted.rc != r.n_rational_classes:
            summary.prediction_mismatches.append(r.q)
        if r.oracle_count is not None and r.oracle_count != r.n_rational_classes:
            summary.oracle_mismatches.append(r.q)
    return summary
