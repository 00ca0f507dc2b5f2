"""
Writing and reading tables
===========================

Tables can be saved as ``.ctbl.json`` files in which every exact number is
a string.  Any table, not only one of PSL2(q), can be read back and
censused.  Here a cyclic group of order 3 is written by hand.
"""

import json

from psl2rc.chartab import build_char_table
from psl2rc.tablio import SchemaError, census_file, parse, serialize

# round trip of a generated table is byte-exact
data = serialize(build_char_table(5))
print(data.decode()[:300], "...")
print("round trip exact:", serialize(parse(data)) == data)
print(census_file(data).render())

# C3: one rational class (the identity) and one rational character (the trivial one)
z = {"coeffs": {"1": "1"}, "n": 3}
z2 = {"coeffs": {"0": "-1", "1": "-1"}, "n": 3}
doc = {
    "format_version": "1",
    "group_name": "C3",
    "group_order": "3",
    "classes": [{"name": n, "size": "1", "element_order": o}
                for n, o in (("1", "1"), ("g", "3"), ("g^2", "3"))],
    "characters": [
        {"name": "chi_1", "values": ["1", "1", "1"]},
        {"name": "chi_2", "values": ["1", z, z2]},
        {"name": "chi_3", "values": ["1", z2, z]},
    ],
}
print(census_file(json.dumps(doc).encode()).render())

# non-canonical spellings are rejected unless lenient parsing is asked for
doc["characters"][0]["values"][0] = "2/2"
try:
    parse(json.dumps(doc).encode())
except SchemaError as exc:
    print("strict:", exc)
print("lenient warnings:", parse(json.dumps(doc).encode(), strict=False).warnings)
