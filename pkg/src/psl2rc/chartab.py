"""Explicit character tables of PSL_2(q) with exact cyclotomic entries.

Three shapes of table, by q mod 4 (even q, q = 1 mod 4, q = 3 mod 4).
``eps`` is zeta_(q-1), ``eta0`` is zeta_(q+1), and ``w``, ``w*`` are
``(1 +- sqrt(+-q))/2`` built from a quadratic Gauss sum.  Each entry is
kept twice: as a :class:`Cyc` value and as a small symbolic form, which
the renderer and the trig-based fast path read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import Cyc, cyc_sum, root_of_unity, sqrt_signed_q, two_cos
from .gf import prime_power
from .psl2 import ClassFamily, class_reps, group_order

#: Largest q for which tables are built (GF(q^2) must stay under the field cap).
TABLE_CAP = 1024


class CapExceeded(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class Character:
    family: str       # "trivial", "steinberg", "principal", "discrete", "half+", "half-"
    param: int
    label: str


@dataclass(frozen=True)
class ClassInfo:
    """Column metadata for tables that do not come with matrices."""

    label: str
    size: int
    elt_order: int


# Symbolic entry forms:
#   ("rat", r)               the rational r
#   ("2cos", s, n, e)        s * (z_n^e + z_n^-e)
#   ("root", c, n, e)        c * z_n^e
#   ("omega", s, star)       s * w (star False) or s * w* (star True)


@dataclass
class CharTable:
    group_name: str
    group_order: int
    classes: list
    characters: list
    values: list                      # characters x classes grid of Cyc
    forms: list = None                # same grid of symbolic forms, when known
    legend: list = field(default_factory=list)
    q: int = None

    @property
    def class_labels(self) -> list[str]:
        return [c.label for c in self.classes]

    @property
    def character_labels(self) -> list[str]:
        return [c.label for c in self.characters]

    @property
    def class_sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def degrees(self) -> list[int]:
        out = []
        for row in self.values:
            r = row[0].rational_value()
            if r is None or r.denominator != 1:
                raise ValueError("first column is not an integer degree")
            out.append(int(r))
        return out

    def row(self, i) -> list[Cyc]:
        return self.values[self._char_index(i)]

    def column(self, j) -> list[Cyc]:
        j = self._class_index(j)
        return [row[j] for row in self.values]

    def _char_index(self, i):
        if isinstance(i, str):
            try:
                return self.character_labels.index(i)
            except ValueError:
                raise IndexOutOfRange(f"no character {i!r}") from None
        if not 0 <= i < len(self.characters):
            raise IndexOutOfRange(f"character index {i} out of range")
        return i

    def _class_index(self, j):
        if isinstance(j, str):
            try:
                return self.class_labels.index(j)
            except ValueError:
                raise IndexOutOfRange(f"no class {j!r}") from None
        if not 0 <= j < len(self.classes):
            raise IndexOutOfRange(f"class index {j} out of range")
        return j


def entry(t: CharTable, char_index, class_index) -> Cyc:
    """Value of a character on a class; both may be given by index or label."""
    return t.values[t._char_index(char_index)][t._class_index(class_index)]


def form_value(form, omega: Cyc = None) -> Cyc:
    kind = form[0]
    if kind == "rat":
        return Cyc.rational(form[1])
    if kind == "2cos":
        _, s, n, e = form
        return two_cos(n, e) * s
    if kind == "root":
        _, c, n, e = form
        return root_of_unity(n, e) * c
    if kind == "omega":
        _, s, star = form
        return (1 - omega if star else omega) * s
    raise ValueError(f"unknown form {form!r}")


def form_text(form) -> str:
    kind = form[0]
    if kind == "rat":
        return str(form[1])
    if kind == "2cos":
        _, s, n, e = form
        e %= n
        body = f"z{n}^{e}+z{n}^-{e}"
        return body if s == 1 else f"-({body})"
    if kind == "root":
        _, c, n, e = form
        return f"{c}*z{n}^{e % n}"
    if kind == "omega":
        _, s, star = form
        w = "w*" if star else "w"
        return w if s == 1 else f"-{w}"
    raise ValueError(f"unknown form {form!r}")


def _rat(x):
    return ("rat", Fraction(x))


def _table_forms(q, classes):
    """Characters and the grid of symbolic forms for one q."""
    chars = []
    grid = []
    fam = [c.family for c in classes]
    par = [c.param for c in classes]
    ZERO = _rat(0)

    def add(family, param, label, row):
        chars.append(Character(family, param, label))
        grid.append(row)

    add("trivial", 0, "psi_1", [_rat(1)] * len(classes))

    def steinberg(j):
        f = fam[j]
        if f is ClassFamily.IDENTITY:
            return _rat(q)
        if f in (ClassFamily.UNIPOTENT_N, ClassFamily.UNIPOTENT_N_PRIME):
            return ZERO
        return _rat(1) if f is ClassFamily.SPLIT else _rat(-1)

    add("steinberg", 0, f"psi_{q}", [steinberg(j) for j in range(len(classes))])

    even = q % 2 == 0
    if even:
        ks = range(1, q // 2)
        js = range(1, q // 2 + 1)
    elif q % 4 == 1:
        ks = range(2, (q - 5) // 2 + 1, 2)
        js = range(2, (q - 1) // 2 + 1, 2)
    else:
        ks = range(2, (q - 3) // 2 + 1, 2)
        js = range(2, (q - 3) // 2 + 1, 2)
    special_S = (q - 1) // 4 if q % 4 == 1 else None
    special_T = (q + 1) // 4 if q % 4 == 3 else None

    for k in ks:
        row = []
        for f, a in zip(fam, par):
            if f is ClassFamily.IDENTITY:
                row.append(_rat(q + 1))
            elif f in (ClassFamily.UNIPOTENT_N, ClassFamily.UNIPOTENT_N_PRIME):
                row.append(_rat(1))
            elif f is ClassFamily.SPLIT and a == special_S:
                row.append(("root", 2, q - 1, (q - 1) * k // 4))
            elif f is ClassFamily.SPLIT:
                row.append(("2cos", 1, q - 1, a * k))
            else:
                row.append(ZERO)
        add("principal", k, f"psi_{q + 1}^({k})", row)

    for j in js:
        row = []
        for f, b in zip(fam, par):
            if f is ClassFamily.IDENTITY:
                row.append(_rat(q - 1))
            elif f in (ClassFamily.UNIPOTENT_N, ClassFamily.UNIPOTENT_N_PRIME):
                row.append(_rat(-1))
            elif f is ClassFamily.NONSPLIT and b == special_T:
                row.append(("root", -2, q + 1, (q + 1) * j // 4))
            elif f is ClassFamily.NONSPLIT:
                row.append(("2cos", -1, q + 1, b * j))
            else:
                row.append(ZERO)
        add("discrete", j, f"psi_{q - 1}^({j})", row)

    if even:
        return chars, grid

    if q % 4 == 1:
        for prime, star_at_N in (("'", False), ("''", True)):
            row = []
            for f, a in zip(fam, par):
                if f is ClassFamily.IDENTITY:
                    row.append(_rat((q + 1) // 2))
                elif f is ClassFamily.UNIPOTENT_N:
                    row.append(("omega", 1, star_at_N))
                elif f is ClassFamily.UNIPOTENT_N_PRIME:
                    row.append(("omega", 1, not star_at_N))
                elif f is ClassFamily.SPLIT and a == special_S:
                    row.append(_rat((-1) ** ((q - 1) // 4)))
                elif f is ClassFamily.SPLIT:
                    row.append(_rat((-1) ** a))
                else:
                    row.append(ZERO)
            add("half+", 0, f"psi_+{prime}", row)
    else:
        # psi_-' is -w* on N and -w on N'; psi_-'' the other way round
        for prime, star_at_N in (("'", True), ("''", False)):
            row = []
            for f, b in zip(fam, par):
                if f is ClassFamily.IDENTITY:
                    row.append(_rat((q - 1) // 2))
                elif f is ClassFamily.UNIPOTENT_N:
                    row.append(("omega", -1, star_at_N))
                elif f is ClassFamily.UNIPOTENT_N_PRIME:
                    row.append(("omega", -1, not star_at_N))
                elif f is ClassFamily.NONSPLIT and b == special_T:
                    row.append(_rat((-1) ** ((q + 5) // 4)))
                elif f is ClassFamily.NONSPLIT:
                    row.append(_rat((-1) ** (b + 1)))
                else:
                    row.append(ZERO)
            add("half-", 0, f"psi_-{prime}", row)
    return chars, grid


def omega(q: int) -> Cyc:
    """w = (1 + sqrt(q))/2 for q = 1 mod 4, (1 + sqrt(-q))/2 for q = 3 mod 4."""
    p, m = prime_power(q)
    return (sqrt_signed_q(p, m) + 1) / 2


def build_char_table(q: int) -> CharTable:
    prime_power(q)
    if q > TABLE_CAP:
        raise CapExceeded(f"q = {q} exceeds the table cap {TABLE_CAP}")
    classes = class_reps(q)
    chars, forms = _table_forms(q, classes)
    w = omega(q) if q % 2 else None
    values = [[form_value(f, w) for f in row] for row in forms]
    legend = [f"z{q - 1} = exp(2 pi i/{q - 1})", f"z{q + 1} = exp(2 pi i/{q + 1})"]
    if q % 4 == 1:
        legend.append(f"w = (1+sqrt({q}))/2, w* = (1-sqrt({q}))/2")
    elif q % 4 == 3:
        legend.append(f"w = (1+sqrt(-{q}))/2, w* = (1-sqrt(-{q}))/2")
    return CharTable(f"PSL2({q})", group_order(q), classes, chars, values, forms, legend, q)


# -- validation --------------------------------------------------------------------

@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_table(order: int, sizes, values, labels=None, class_labels=None) -> ValidationReport:
    """Degree, class-size and both orthogonality identities, checked exactly."""
    rep = ValidationReport()
    nchar = len(values)
    ncls = len(sizes)
    labels = labels or [f"chi_{i}" for i in range(nchar)]
    class_labels = class_labels or [f"C_{j}" for j in range(ncls)]
    if nchar != ncls or any(len(r) != ncls for r in values):
        rep.failures.append(f"table is not square: {nchar} characters, {ncls} classes")
        return rep
    if sum(sizes) != order:
        rep.failures.append(f"class sizes sum to {sum(sizes)}, not {order}")
    degsq = cyc_sum(r[0] * r[0] for r in values)
    if degsq != order:
        rep.failures.append(f"sum of squared degrees is {degsq}, not {order}")

    conj = [[v.conj() for v in r] for r in values]
    for i in range(nchar):
        for k in range(i, nchar):
            s = cyc_sum(values[i][c] * conj[k][c] * sizes[c]
                        for c in range(ncls) if values[i][c] and values[k][c])
            want = order if i == k else 0
            if s != want:
                rep.failures.append(
                    f"row orthogonality <{labels[i]}, {labels[k]}> = {s}, expected {want}")
    for c in range(ncls):
        for d in range(c, ncls):
            s = cyc_sum(values[i][c] * conj[i][d]
                        for i in range(nchar) if values[i][c] and values[i][d])
            if c == d:
                want = Fraction(order, sizes[c])
            else:
                want = 0
            if s != want:
                rep.failures.append(
                    f"column orthogonality ({class_labels[c]}, {class_labels[d]}) = {s}, expected {want}")
    return rep


def validate_table(t: CharTable) -> ValidationReport:
    return check_table(t.group_order, t.class_sizes, t.values,
                       t.character_labels, t.class_labels)
