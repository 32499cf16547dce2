"""
Classes of small determinant
============================

Every positive definite integral form of determinant d is equivalent to a
reduced one, so listing reduced forms gives the classes. Theta series tell
classes apart quickly.
"""

import numpy as np

from mordell_ternary.forms import TernaryForm, enumerate_classes, is_equivalent, reduce
from mordell_ternary.represent import represented_set

for d in (1, 2, 3, 4, 5, 6, 8, 10):
    classes = enumerate_classes(d)
    print(d, len(classes), " ".join(f.pretty() for f in classes))

# reduction comes with the change of variables that achieves it
f = TernaryForm(3, 3, 2, 2, 2, 2)
g, cert = reduce(f)
print()
print(f.pretty(), "reduces to", g.pretty(), "with U =", cert.matrix)

# the two classes of determinant 8 that look most alike
a, b = TernaryForm(1, 1, 8), TernaryForm(1, 3, 3, 2)
print("equivalent?", is_equivalent(a, b) is not None)
ra, rb = represented_set(a, 60), represented_set(b, 60)
print("represented by one but not the other:", np.flatnonzero(ra ^ rb).tolist())
