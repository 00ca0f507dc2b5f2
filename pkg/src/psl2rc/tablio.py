"""Character-table interchange files (``.ctbl.json``).

The format is a JSON profile in which every number that must stay exact is
carried as a string.  The only bare JSON numbers allowed are the integer
conductors ``"n"`` of cyclotomic values.  A document looks like::

    {
      "format_version": "1",
      "group_name": "PSL2(4)",
      "group_order": "60",
      "classes": [{"name": "I", "size": "1", "element_order": "1"}, ...],
      "characters": [{"name": "psi_1", "values": ["1", "1", ...]}, ...]
    }

Each value is either a rational shorthand ``"num/den"`` (``"/1"`` omitted)
or ``{"coeffs": {"0": "1/2", "1": "1"}, "n": 5}`` on the canonical power
basis of Q(zeta_n).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .chartab import CharTable, Character, ClassInfo, check_table
from . import cyclo
from .cyclo import Cyc, euler_phi

FORMAT_VERSION = "1"

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?\Z")
_NATURAL = re.compile(r"(0|[1-9][0-9]*)\Z")

TOP_KEYS = ("characters", "classes", "format_version", "group_name", "group_order")
CLASS_KEYS = ("element_order", "name", "size")
CHAR_KEYS = ("name", "values")
CYC_KEYS = ("coeffs", "n")


class TablioError(ValueError):
    pass


class TableSyntaxError(TablioError):
    def __init__(self, line, col, reason):
        self.line, self.col, self.reason = line, col, reason
        super().__init__(f"line {line}, column {col}: {reason}")


class SchemaError(TablioError):
    def __init__(self, path, reason):
        self.path, self.reason = path, reason
        super().__init__(f"{path}: {reason}")


class RaggedTable(SchemaError):
    pass


@dataclass
class ClassEntry:
    name: str
    size: int
    element_order: int

    @property
    def label(self):
        return self.name


@dataclass
class CharacterEntry:
    name: str
    values: list

    @property
    def label(self):
        return self.name


@dataclass
class TableDocument:
    group_name: str
    group_order: int
    classes: list
    characters: list
    format_version: str = FORMAT_VERSION
    warnings: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if not self.classes:
            raise SchemaError("$.classes", "a table needs at least one class")
        for i, c in enumerate(self.classes):
            if c.size <= 0:
                raise SchemaError(f"$.classes[{i}].size", "class sizes must be positive")
        for i, ch in enumerate(self.characters):
            if len(ch.values) != len(self.classes):
                raise RaggedTable(f"$.characters[{i}].values",
                                  f"{len(ch.values)} values for {len(self.classes)} classes")

    def to_char_table(self) -> CharTable:
        classes = [ClassInfo(c.name, c.size, c.element_order) for c in self.classes]
        chars = [Character("ingested", 0, ch.name) for ch in self.characters]
        return CharTable(self.group_name, self.group_order, classes, chars,
                         [list(ch.values) for ch in self.characters])


# -- writing -------------------------------------------------------------------------

def _rational_text(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def cyc_to_json(v: Cyc):
    r = v.rational_value()
    if r is not None:
        return _rational_text(r)
    return {"coeffs": {str(e): _rational_text(c) for e, c in sorted(v.coeffs.items())}, "n": v.n}


def document_from_table(t: CharTable) -> TableDocument:
    classes = [ClassEntry(c.label, c.size, c.elt_order) for c in t.classes]
    chars = [CharacterEntry(ch.label, list(row)) for ch, row in zip(t.characters, t.values)]
    return TableDocument(t.group_name, t.group_order, classes, chars)


def document_to_json(d: TableDocument) -> dict:
    # insertion order is the serialized order: keys sorted, exponents ascending
    out = {
        "characters": [{"name": ch.name, "values": [cyc_to_json(v) for v in ch.values]}
                       for ch in d.characters],
        "classes": [{"element_order": str(c.element_order), "name": c.name, "size": str(c.size)}
                    for c in d.classes],
        "format_version": d.format_version,
        "group_name": d.group_name,
    }
    if d.group_order is not None:
        out["group_order"] = str(d.group_order)
    return out


def serialize(t) -> bytes:
    """Canonical UTF-8 bytes for a :class:`CharTable` or :class:`TableDocument`."""
    d = t if isinstance(t, TableDocument) else document_from_table(t)
    text = json.dumps(document_to_json(d), indent=1, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# -- reading -------------------------------------------------------------------------

def _reject_float(s):
    raise ValueError(f"non-integer number {s!r}")


def _reject_constant(s):
    raise ValueError(f"constant {s} is not allowed")


def _unique_pairs(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, strict):
        self.strict = strict
        self.warnings = []

    def lenient(self, path, reason):
        if self.strict:
            raise SchemaError(path, reason)
        self.warnings.append(f"{path}: {reason}")

    def obj(self, x, path, keys, required):
        if not isinstance(x, dict):
            raise SchemaError(path, "expected an object")
        for k in x:
            if k not in keys:
                self.lenient(f"{path}.{k}", "unknown field")
        for k in required:
            if k not in x:
                raise SchemaError(f"{path}.{k}", "missing field")
        return x

    def string(self, x, path):
        if not isinstance(x, str):
            raise SchemaError(path, "expected a string")
        return x

    def natural(self, x, path, positive=True):
        s = self.string(x, path)
        if not _NATURAL.match(s):
            raise SchemaError(path, f"expected a decimal integer string, got {s!r}")
        try:
            v = int(s)
        except ValueError:
            raise SchemaError(path, "integer too long") from None
        if positive and v <= 0:
            raise SchemaError(path, "must be positive")
        return v

    def rational(self, x, path):
        s = self.string(x, path)
        if not _RATIONAL.match(s):
            raise SchemaError(path, f"malformed rational {s!r}")
        if s == "-0":
            self.lenient(path, "'-0' is not canonical")
        try:
            r = Fraction(s)
        except ValueError:
            raise SchemaError(path, "rational too long") from None
        if "/" in s and _rational_text(r) != s:
            self.lenient(path, f"{s!r} is not in lowest terms (canonical form {_rational_text(r)!r})")
        return r

    def value(self, x, path):
        if isinstance(x, str):
            return Cyc.rational(self.rational(x, path))
        self.obj(x, path, CYC_KEYS, CYC_KEYS)
        n = x["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"{path}.n", "conductor must be a positive integer")
        if n > cyclo.CONDUCTOR_CAP:
            raise SchemaError(f"{path}.n", f"conductor exceeds cap {cyclo.CONDUCTOR_CAP}")
        coeffs = x["coeffs"]
        if not isinstance(coeffs, dict):
            raise SchemaError(f"{path}.coeffs", "expected an object")
        phi = euler_phi(n)
        raw = {}
        last = -1
        for k, c in coeffs.items():
            kp = f"{path}.coeffs.{k}"
            e = self.natural(k, kp, positive=False)
            if e <= last:
                self.lenient(kp, "exponents are not in ascending order")
            last = max(last, e)
            r = self.rational(c, kp)
            if r == 0:
                self.lenient(kp, "zero coefficient")
            if e >= phi:
                self.lenient(kp, f"exponent {e} is outside the power basis (phi({n}) = {phi})")
            raw[e] = r
        v = Cyc(n, raw)
        if self.strict and v.rational_value() is not None:
            raise SchemaError(path, "rational values must use the string shorthand")
        return v


def parse(data, strict: bool = True) -> TableDocument:
    """Parse interchange bytes into a :class:`TableDocument`.

    Malformed JSON raises :class:`TableSyntaxError` with a line and column;
    schema problems raise :class:`SchemaError` with a JSON path.  With
    ``strict=False`` non-canonical spellings and unknown fields are accepted
    and listed in ``document.warnings``.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(data)[:exc.start].decode("utf-8", "replace")
            line, col = _line_col(prefix, len(prefix))
            raise TableSyntaxError(line, col, "invalid UTF-8") from None
    else:
        text = data
    try:
        raw = json.loads(text, parse_float=_reject_float, parse_constant=_reject_constant,
                         object_pairs_hook=_unique_pairs)
    except json.JSONDecodeError as exc:
        raise TableSyntaxError(exc.lineno, exc.colno, exc.msg) from None
    except ValueError as exc:
        # raised from a hook; JSON did not say where, so point at the start
        raise TableSyntaxError(1, 1, str(exc)) from None
    except RecursionError:
        raise TableSyntaxError(1, 1, "nesting too deep") from None

    rd = _Reader(strict)
    rd.obj(raw, "$", TOP_KEYS, ("characters", "classes", "format_version", "group_name"))
    version = rd.string(raw["format_version"], "$.format_version")
    if version != FORMAT_VERSION:
        raise SchemaError("$.format_version", f"unsupported version {version!r}")
    name = rd.string(raw["group_name"], "$.group_name")
    order = rd.natural(raw["group_order"], "$.group_order") if "group_order" in raw else None

    if not isinstance(raw["classes"], list):
        raise SchemaError("$.classes", "expected an array")
    classes = []
    for i, c in enumerate(raw["classes"]):
        p = f"$.classes[{i}]"
        rd.obj(c, p, CLASS_KEYS, CLASS_KEYS)
        classes.append(ClassEntry(rd.string(c["name"], f"{p}.name"),
                                  rd.natural(c["size"], f"{p}.size"),
                                  rd.natural(c["element_order"], f"{p}.element_order")))
    if not isinstance(raw["characters"], list):
        raise SchemaError("$.characters", "expected an array")
    chars = []
    for i, ch in enumerate(raw["characters"]):
        p = f"$.characters[{i}]"
        rd.obj(ch, p, CHAR_KEYS, CHAR_KEYS)
        vals = ch["values"]
        if not isinstance(vals, list):
            raise SchemaError(f"{p}.values", "expected an array")
        if len(vals) != len(classes):
            raise RaggedTable(f"{p}.values", f"{len(vals)} values for {len(classes)} classes")
        chars.append(CharacterEntry(rd.string(ch["name"], f"{p}.name"),
                                    [rd.value(v, f"{p}.values[{j}]") for j, v in enumerate(vals)]))
    doc = TableDocument(name, order, classes, chars, version)
    doc.warnings = rd.warnings
    return doc


def census_file(data, strict: bool = True):
    """Rational classes and characters of an ingested table, with no PSL_2 assumptions."""
    from .rational import RCReport, rational_characters, rational_classes

    doc = parse(data, strict)
    t = doc.to_char_table()
    rcl = rational_classes(t)
    rch = rational_characters(t)
    disc = []
    if doc.group_order is not None:
        disc.extend(f"table validation: {f}" for f in
                    check_table(doc.group_order, t.class_sizes, t.values,
                                t.character_labels, t.class_labels).failures)
    if len(rcl) != len(rch):
        disc.append(f"{len(rcl)} rational classes but {len(rch)} rational characters")
    return RCReport(None, len(rcl), len(rch), rcl, rch, discrepancies=disc,
                    notes=list(doc.warnings), group_name=doc.group_name)
