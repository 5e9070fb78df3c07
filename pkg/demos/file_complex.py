# Hand-written complexes in JSON: validate, reduce, compare with the oracle.

import json
import os
import tempfile
from fractions import Fraction as F

from upsilontor import brute_force_barcode, reduce, upsilon_tor_function, validate
from upsilontor.io import load_complex, read_complex

# trefoil staircase plus an acyclic square, written with U-powers
doc = {
    "generators": [
        {"id": "a", "i": 0, "j": 1, "maslov": 0},
        {"id": "b", "i": 0, "j": 0, "maslov": -1},
        {"id": "c", "i": 1, "j": 0, "maslov": 0},
        {"id": "s", "i": 1, "j": 1, "maslov": 2},
        {"id": "h", "i": -1, "j": 1, "maslov": 1},
        {"id": "v", "i": 1, "j": -1, "maslov": 1},
        {"id": "w", "i": -1, "j": -1, "maslov": 0},
    ],
    "differential": [
        {"source": "a", "target": "b"}, {"source": "c", "target": "b"},
        {"source": "s", "target": "h"}, {"source": "s", "target": "v"},
        {"source": "h", "target": "w"}, {"source": "v", "target": "w"},
    ],
}

path = os.path.join(tempfile.mkdtemp(), "trefoil_plus_box.json")
with open(path, "w") as fh:
    json.dump(doc, fh, indent=2)

print(validate(read_complex(path)))
c = load_complex(path)
for t in (F(1, 3), F(1), F(5, 3)):
    fast, slow = reduce(c, t), brute_force_barcode(c, t)
    print(t, [str(x) for x in fast.lengths()], fast.normalized() == slow.normalized())
print([(str(t), str(v)) for t, v in upsilon_tor_function(c).points()])
# the square of side 2 dominates the trefoil everywhere

# break it: an extra arrow with the wrong grading drop, so d^2 != 0 too
doc["differential"].append({"source": "s", "target": "a"})
with open(path, "w") as fh:
    json.dump(doc, fh)
report = validate(read_complex(path))
print(report.ok, sorted(report.rules()))
print(report)
