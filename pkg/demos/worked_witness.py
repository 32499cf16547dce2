"""
Building a representation from a witness
========================================

For m = 3 the form x^2 + y^2 + 2z^2 should represent m. Instead of searching
we build a form f of determinant 2 with f(0, 0, 1) = m, then map it back to
the target with an explicit unimodular change of variables.
"""

from mordell_ternary.forms import TernaryForm, evaluate
from mordell_ternary.mordell import certify, classify, validate_certificate

target = TernaryForm(1, 1, 2)
m = 3

rule = classify("1a", m)
print("rule:", rule.label, " a1 =", rule.a1_residue, "mod", rule.a1_modulus)

cert = certify("1a", m)
w = cert.witness
print("witness (A, B, a, h, b):", w.astuple())
print("a*b - h^2 =", w.a * w.b - w.h * w.h, "= D*m")

# the constructed form; its last coefficient is m
print("f =", cert.f.pretty())

# U carries f to the target, and the vector is where m lands
print("U =", cert.equivalence.matrix)
print("vector:", cert.vector, "->", evaluate(target, cert.vector))

# a certificate either validates cleanly or lists what went wrong
print("problems:", validate_certificate(cert) or "none")

# a separation condition steers the construction away from the sibling class
cert = certify("1b", 1)
print()
print("m = 1 for x^2 + y^2 + 3z^2:", cert.witness.astuple(), cert.f.pretty())
