"""
Which integers does a form miss?
================================

Each catalogued form misses exactly the integers s^k (modulus*n + r). A
sieve over all vectors finds the represented set, and we compare.
"""

import numpy as np

from mordell_ternary.represent import get_entry, registry
from mordell_ternary.verify import excluded_mask, verify_characterization

N = 20000

for e in registry():
    s = e.spec
    print(f"{e.id:9} {e.target.pretty():24} misses {s.scale}^k ({s.modulus}n + {sorted(s.residues)})")

# one entry by hand
e = get_entry("1f")
missed = np.flatnonzero(excluded_mask(e.spec, 300))
print()
print("missed by", e.target.pretty(), "below 300:", missed.tolist())

# and all of them through the verifier
print()
for e in registry():
    print(verify_characterization(e.id, N).to_text())
