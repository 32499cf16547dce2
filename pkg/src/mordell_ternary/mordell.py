"""Mordell's construction of an explicit representation.

For admissible m the chooser picks integers (A, B, a, h, b) with
``ab - h^2 = D m`` and the congruences that make

    m f(x, y, z) = (A x + B y + m z)^2 + a x^2 + 2 h x y + b y^2

an integral form of determinant D.  ``f(0, 0, 1) = m`` by construction, and
the residue of ``f(1, 0, 0) = (A^2 + a)/m`` is forced into a class that only
the target represents among the primitive classes of determinant D, so f is
equivalent to the target.  The equivalence is then computed, never assumed,
and pulled back to a vector on the target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd
from typing import Any, Iterable

from .arith import (
    factorize,
    find_prime_in_ap,
    odd_prime_divisors,
    solve_quadratic_mod,
    solve_square_mod,
)
from .forms import (
    EquivalenceCertificate,
    TernaryForm,
    content,
    determinant,
    evaluate,
    is_equivalent,
)
from .represent import get_entry, is_excluded


class ConstructionError(RuntimeError):
    """A chooser found no admissible value; the rule that produced it is wrong."""


class NoRuleError(LookupError):
    """No case rule matches an admissible m."""


class ExcludedInputError(ValueError):
    """m lies in the excluded set of the entry."""


Residues = frozenset[int]


@dataclass(frozen=True)
class ACondition:
    """``A mod modulus`` (or ``A^2`` when ``square``) lies in ``residues``.

    ``when`` restricts the condition to m in a residue class.
    """

    modulus: int
    residues: Residues
    square: bool = False
    when: tuple[int, Residues] | None = None

    def applies(self, m: int) -> bool:
        return self.when is None or m % self.when[0] in self.when[1]

    def allowed(self) -> Residues:
        if not self.square:
            return self.residues
        return frozenset(r for r in range(self.modulus) if r * r % self.modulus in self.residues)


@dataclass(frozen=True)
class CaseRule:
    entry_id: str
    label: str
    # conditions on m, then m = divisor * m1 with conditions on m1
    m_conditions: tuple[tuple[int, Residues], ...]
    divisor: int = 1
    m1_conditions: tuple[tuple[int, Residues], ...] = ()
    # a = multiplier * a1, a1 prime = a1_residue (mod a1_modulus)
    multiplier: int = 1
    a1_modulus: int = 1
    a1_residue: int = 0
    scope: str = "m"
    separation: tuple[int, int] | None = None  # (E, M_sep): (A^2 + a)/m = E (mod M_sep)
    a_conditions: tuple[ACondition, ...] = ()
    # restricts s in h = m s; set when the 2-adic valuation of b must be pinned
    s_condition: tuple[int, Residues] | None = None
    # vector whose value carries the separation residue: (1, 0, 0) or (x, 0, 1)
    probe: tuple[int, int, int] = (1, 0, 0)
    origin: str = "printed"
    note: str = ""

    def matches(self, m: int) -> bool:
        if m % self.divisor:
            return False
        m1 = m // self.divisor
        return all(m % q in r for q, r in self.m_conditions) and all(
            m1 % q in r for q, r in self.m1_conditions
        )

    def scope_value(self, m: int) -> int:
        return m // self.divisor if self.scope == "m1" else m

    def to_json(self) -> dict[str, Any]:
        return {
            "entry_id": self.entry_id,
            "label": self.label,
            "m_conditions": [[q, sorted(r)] for q, r in self.m_conditions],
            "divisor": self.divisor,
            "m1_conditions": [[q, sorted(r)] for q, r in self.m1_conditions],
            "a_shape": {"u": self.multiplier, "modulus": self.a1_modulus, "residue": self.a1_residue},
            "scope": self.scope,
            "separation": list(self.separation) if self.separation else None,
            "a_conditions": [
                {
                    "modulus": c.modulus,
                    "residues": sorted(c.residues),
                    "square": c.square,
                    "when": [c.when[0], sorted(c.when[1])] if c.when else None,
                }
                for c in self.a_conditions
            ],
            "origin": self.origin,
        }


@dataclass(frozen=True)
class Witness:
    m: int
    D: int
    A: int
    B: int
    a: int
    h: int
    b: int

    def problems(self) -> list[str]:
        m, A, B, a, h, b = self.m, self.A, self.B, self.a, self.h, self.b
        out = []
        if a * b - h * h != self.D * m:
            out.append("ab - h^2 != Dm")
        if (A * A + a) % m or (B * B + b) % m or (2 * A * B + 2 * h) % m:
            out.append("A^2+a, B^2+b, 2AB+2h not all divisible by m")
        if B % m or h % m or b % m:
            out.append("B, h, b not all divisible by m")
        if a <= 0:
            out.append("a is not positive")
        return out

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.A, self.B, self.a, self.h, self.b)


@dataclass(frozen=True)
class Certificate:
    entry_id: str
    m: int
    witness: Witness
    f: TernaryForm
    equivalence: EquivalenceCertificate  # certifies f -> target
    vector: tuple[int, int, int]
    scale_exponents: tuple[tuple[int, int], ...]  # ((s, k), ...): m = prod s^k * m0
    rule: CaseRule = field(compare=False)

    @property
    def stripped_m(self) -> int:
        return self.witness.m

    @property
    def scale_exponent(self) -> int:
        return sum(k for _, k in self.scale_exponents)

    def to_json(self) -> dict[str, Any]:
        w = self.witness
        return {
            "entry_id": self.entry_id,
            "m": self.m,
            "case": self.rule.label,
            "witness": {"m": w.m, "D": w.D, "A": w.A, "B": w.B, "a": w.a, "h": w.h, "b": w.b},
            "f": list(self.f.coefficients),
            "U": self.equivalence.entries(),
            "vector": list(self.vector),
            "scale_exponent": {str(s): k for s, k in self.scale_exponents},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Certificate":
        w = Witness(**data["witness"])
        u = data["U"]
        rule = classify(data["entry_id"], w.m)
        return cls(
            entry_id=data["entry_id"],
            m=data["m"],
            witness=w,
            f=TernaryForm(*data["f"]),
            equivalence=EquivalenceCertificate(tuple(tuple(u[3 * i : 3 * i + 3]) for i in range(3))),
            vector=tuple(data["vector"]),  # type: ignore[arg-type]
            scale_exponents=tuple(sorted((int(s), k) for s, k in data["scale_exponent"].items())),
            rule=rule,
        )


# --- the rule table -------------------------------------------------------------


def _r(*xs: int) -> Residues:
    return frozenset(xs)


def _mod(q: int, *xs: int) -> tuple[int, Residues]:
    return (q, frozenset(x % q for x in xs))


_NOT3 = _mod(3, 1, 2)
_NOT5 = _mod(5, 1, 2, 3, 4)
_ODD = _mod(2, 1)


def _A(q: int, *xs: int, when: tuple[int, Residues] | None = None) -> ACondition:
    return ACondition(q, _r(*(x % q for x in xs)), False, when)


def _A2(q: int, *xs: int, when: tuple[int, Residues] | None = None) -> ACondition:
    return ACondition(q, _r(*(x % q for x in xs)), True, when)


def _rules_1a() -> list[CaseRule]:
    R = lambda label, mc, **kw: CaseRule("1a", label, mc, **kw)  # noqa: E731
    return [
        R("Case 1", (_mod(16, 1, 5, 9, 13),), a1_modulus=8, a1_residue=1),
        R("Case 2", (_mod(16, 3, 7, 11, 15),), a1_modulus=8, a1_residue=5),
        R("Case 3", (_mod(16, 2),), divisor=2, a1_modulus=8, a1_residue=1, scope="m1"),
        R("Case 4", (_mod(16, 10),), divisor=2, a1_modulus=8, a1_residue=1, scope="m1"),
        R("Case 5", (_mod(16, 6),), divisor=2, multiplier=2, a1_modulus=8, a1_residue=1, scope="m1"),
    ]


def _rules_1b() -> list[CaseRule]:
    sep = (5, 8)
    R = lambda label, mc, **kw: CaseRule("1b", label, mc, separation=sep, **kw)  # noqa: E731
    return [
        R(
            "Case 1 Subcase 1",
            (_mod(4, 1), _NOT3),
            a1_modulus=24,
            a1_residue=1,
            a_conditions=(_A(8, 2, 6, when=_mod(8, 1)), _A2(8, 0, when=_mod(8, 5))),
        ),
        R("Case 1 Subcase 2", (_mod(36, 21),), divisor=3, multiplier=3, a1_modulus=8, a1_residue=7, scope="m1"),
        R(
            "Case 2 Subcase 1",
            (_mod(4, 3), _NOT3),
            a1_modulus=24,
            a1_residue=7,
            a_conditions=(_A2(8, 0, when=_mod(8, 3)), _A(8, 2, 6, when=_mod(8, 7))),
        ),
        R("Case 2 Subcase 2", (_mod(36, 3),), divisor=3, multiplier=3, a1_modulus=8, a1_residue=1, scope="m1"),
        R(
            "Case 3 Subcase 1",
            (_mod(16, 2, 10), _NOT3),
            divisor=2,
            a1_modulus=48,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(16, 1, when=_mod(16, 10)), _A2(16, 9, when=_mod(16, 2))),
        ),
        R(
            "Case 3 Subcase 2",
            (_mod(16, 6, 14), _NOT3),
            divisor=2,
            a1_modulus=48,
            a1_residue=13,
            scope="m1",
            a_conditions=(_A2(8, 1),),
        ),
        R(
            "Case 3 Subcase 3 (m1 = 1, 9 mod 16)",
            (),
            divisor=6,
            m1_conditions=(_mod(16, 1, 9), _mod(3, 1)),
            multiplier=2,
            a1_modulus=8,
            a1_residue=1,
            scope="m1",
        ),
        R(
            "Case 3 Subcase 3 (m1 = 5, 13 mod 16)",
            (),
            divisor=6,
            m1_conditions=(_mod(16, 5, 13), _mod(3, 1)),
            multiplier=2,
            a1_modulus=8,
            a1_residue=3,
            scope="m1",
        ),
        R(
            "Case 3 Subcase 4",
            (),
            divisor=6,
            m1_conditions=(_mod(4, 3), _mod(3, 2)),
            multiplier=3,
            a1_modulus=8,
            a1_residue=3,
            scope="m1",
            a_conditions=(_A2(8, 1),),
        ),
        R(
            "Case 3 supplement (m1 = 1 mod 4, m1 = 2 mod 3)",
            (),
            divisor=6,
            m1_conditions=(_mod(4, 1), _mod(3, 2)),
            multiplier=3,
            a1_modulus=8,
            a1_residue=7,
            scope="m1",
            origin="amended",
            note="m = 30 (mod 72) is admissible but matched by no printed subcase",
        ),
    ]


def _rules_1c() -> list[CaseRule]:
    sep = (3, 8)
    R = lambda label, mc, **kw: CaseRule("1c", label, mc, separation=sep, multiplier=2, **kw)  # noqa: E731
    odd = (_A(2, 1),)
    pm2 = (_A(8, 2, 6),)
    return [
        R("Case 1", (_mod(8, 1),), a1_modulus=4, a1_residue=1, a_conditions=odd),
        R("Case 2", (_mod(8, 5),), a1_modulus=4, a1_residue=3, a_conditions=odd),
        R("Case 3 Subcase 1", (_mod(16, 2),), divisor=2, a1_modulus=8, a1_residue=1, a_conditions=pm2),
        R("Case 3 Subcase 2", (_mod(16, 10),), divisor=2, a1_modulus=8, a1_residue=5, a_conditions=pm2),
        R("Case 4 Subcase 1", (_mod(16, 6),), divisor=2, a1_modulus=8, a1_residue=7, a_conditions=pm2),
        R("Case 4 Subcase 2", (_mod(16, 14),), divisor=2, a1_modulus=8, a1_residue=3, a_conditions=pm2),
        CaseRule(
            "1c", "Case 5", (_mod(8, 3),), separation=sep, multiplier=8, a1_modulus=4, a1_residue=3, a_conditions=odd
        ),
    ]


_NOTE_1D = "printed a = 11 (mod 36); the symbol (-6/a) = 1 also needs a = 3 (mod 8)"


def _rules_1d() -> list[CaseRule]:
    sep = (3, 9)
    R = lambda label, mc, **kw: CaseRule("1d", label, mc, separation=sep, **kw)  # noqa: E731
    three = _mod(3, 0)
    return [
        R("Case 1 (3 does not divide m)", (_mod(4, 1), _NOT3), a1_modulus=72, a1_residue=11, origin="amended", note=_NOTE_1D),
        R("Case 1 (3 divides m)", (_mod(4, 1), three), a1_modulus=72, a1_residue=11, origin="amended", note=_NOTE_1D),
        R("Case 2 (3 does not divide m)", (_mod(4, 3), _NOT3), a1_modulus=72, a1_residue=41),
        R("Case 2 (3 divides m)", (_mod(4, 3), three), a1_modulus=72, a1_residue=41),
        R("Case 3 Subcase 1", (_mod(16, 2),), divisor=2, multiplier=2, a1_modulus=36, a1_residue=1, scope="m1"),
        R("Case 3 Subcase 2", (_mod(16, 6, 14),), divisor=2, a1_modulus=36, a1_residue=5, scope="m1"),
    ]


def _rules_1e() -> list[CaseRule]:
    sep = (6, 16)
    R = lambda label, mc, **kw: CaseRule("1e", label, mc, separation=sep, **kw)  # noqa: E731
    a0 = (_A(4, 0),)
    a2 = (_A(32, 2),)
    return [
        R("Case 1", (_mod(16, 1, 9),), multiplier=2, a1_modulus=16, a1_residue=3, a_conditions=a0),
        R("Case 2", (_mod(16, 3, 11),), multiplier=2, a1_modulus=16, a1_residue=1, a_conditions=a0),
        R("Case 3", (_mod(16, 5, 13),), multiplier=2, a1_modulus=16, a1_residue=7, a_conditions=a0),
        R("Case 4", (_mod(16, 7, 15),), multiplier=2, a1_modulus=16, a1_residue=5, a_conditions=a0),
        R("Case 5", (_mod(16, 2),), divisor=2, multiplier=8, a1_modulus=32, a1_residue=1, scope="m1", a_conditions=a2),
        R("Case 6", (_mod(16, 6),), divisor=2, multiplier=32, a1_modulus=32, a1_residue=1, scope="m1", a_conditions=a2),
        R("Case 7", (_mod(16, 10),), divisor=2, multiplier=8, a1_modulus=32, a1_residue=7, scope="m1", a_conditions=a2),
    ]


# Rows of the determinant-10 data table:
# (case, subcase, m modulus, m residue, E, multiplier, a1 modulus, a1 residue, A^2 modulus, A^2 set)
# For the m = 7 (mod 20) row, E = 6 would put 6m - 17 in 25 (mod 40), off
# the listed set; E = 38 is the smallest multiplier that lands on the set
# and is still 6 (mod 16).
_SQ400_9 = tuple(range(9, 400, 40))
_SQ400_1 = tuple(range(1, 400, 40))
_SQ800_9 = tuple(range(9, 800, 80))
_SQ800_41 = tuple(range(41, 800, 80))
_SQ800_49 = tuple(range(49, 800, 80))
_SQ800_1 = tuple(range(1, 800, 80))

TABLE1_ROWS: tuple[tuple, ...] = (
    (1, 1, 20, 1, 22, 1, 400, 13, 400, _SQ400_9),
    (1, 1, 20, 9, 22, 1, 400, 37, 400, _SQ400_1),
    (1, 1, 20, 13, 22, 1, 400, 37, 400, _SQ400_9),
    (1, 1, 20, 17, 22, 1, 400, 37, 400, _SQ400_1),
    (1, 2, 20, 3, 6, 1, 400, 17, 400, _SQ400_1),
    (1, 2, 20, 7, 38, 1, 400, 17, 400, _SQ400_9),
    (1, 2, 20, 11, 6, 1, 400, 17, 400, _SQ400_9),
    (1, 2, 20, 19, 22, 1, 400, 17, 400, _SQ400_1),
    (2, 1, 40, 2, 6, 1, 800, 3, 800, _SQ800_9),
    (2, 1, 40, 18, 38, 1, 800, 3, 800, _SQ800_41),
    (2, 1, 40, 26, 22, 1, 800, 3, 800, _SQ800_9),
    (2, 1, 40, 34, 6, 1, 800, 3, 800, _SQ800_41),
    (2, 2, 40, 6, 22, 1, 800, 3, 800, _SQ800_49),
    (2, 2, 40, 14, 38, 1, 800, 3, 800, _SQ800_49),
    (2, 2, 40, 22, 6, 1, 800, 3, 800, _SQ800_49),
    (2, 2, 40, 38, 38, 1, 800, 3, 800, _SQ800_1),
    (3, 1, 100, 5, 6, 5, 400, 1, 400, (25, 225)),
    (3, 1, 100, 45, 54, 5, 400, 1, 400, (25, 225)),
    (3, 2, 100, 55, 38, 5, 400, 13, 400, (25, 225)),
    (3, 2, 100, 95, 22, 5, 400, 13, 400, (25, 225)),
    (4, 1, 200, 130, 22, 5, 800, 7, 800, (25, 425)),
    (4, 1, 200, 170, 38, 5, 800, 7, 800, (25, 425)),
    (4, 2, 200, 30, 22, 5, 800, 7, 800, (225, 625)),
    (4, 2, 200, 70, 38, 5, 800, 7, 800, (225, 625)),
)


# For even m the printed choices make every coefficient of f even, so f is
# imprimitive and cannot be the target.  The replacements keep each row's m
# class and E; when m/2 (or m/10) is 1 mod 4 they take a = 4 a1 (resp. 20 a1),
# otherwise a odd with the separation read off f(2, 0, 1).
_EVEN_1F = {
    (2, 1): dict(multiplier=4, a1_modulus=40, a1_residue=3),
    (2, 2): dict(multiplier=1, a1_modulus=40, a1_residue=13, probe=(2, 0, 1)),
    (4, 1): dict(multiplier=20, a1_modulus=8, a1_residue=3),
    (4, 2): dict(multiplier=5, a1_modulus=8, a1_residue=1, probe=(2, 0, 1)),
}


def _rules_1f() -> list[CaseRule]:
    out = []
    for case, sub, mq, mr, e, u, aq, ar, sq, squares in TABLE1_ROWS:
        divisor = {1: 1, 2: 2, 3: 5, 4: 10}[case]
        rule = CaseRule(
            "1f",
            f"Case {case} Subcase {sub} (m = {mr} mod {mq})",
            (_mod(mq, mr),),
            divisor=divisor,
            multiplier=u,
            a1_modulus=aq,
            a1_residue=ar,
            scope="m" if case == 1 else "m1",
            separation=(e, 16),
            a_conditions=(_A2(sq, *squares),),
        )
        if (case, sub) in _EVEN_1F:
            rule = replace(
                rule,
                a_conditions=(),
                origin="amended",
                note=f"printed a = {u}*({ar} mod {aq}) with A^2 in the listed set mod {sq}; f was imprimitive",
                **_EVEN_1F[case, sub],
            )
        out.append(rule)
    return out


def _rules_2a() -> list[CaseRule]:
    R = lambda label, mc, **kw: CaseRule("2a", label, mc, **kw)  # noqa: E731
    return [
        R("Case 1 Subcase 1", (_mod(8, 1, 5),), a1_modulus=1000, a1_residue=1, separation=(5, 1000)),
        R("Case 1 Subcase 2", (_mod(8, 2),), divisor=2, a1_modulus=1000, a1_residue=1, separation=(5, 1000)),
        R("Case 1 Subcase 3", (_mod(8, 6),), divisor=2, a1_modulus=1000, a1_residue=11, separation=(30, 1000)),
        R("Case 2", (_mod(8, 7),), multiplier=2, a1_modulus=1000, a1_residue=13, separation=(5, 1000)),
    ]


# Residue bookkeeping of the x^2 + 2y^2 + 2yz + 3z^2 construction.
E_2B: tuple[int, ...] = tuple(e for e in range(200) if e % 8 == 3 and e % 5)


def m_candidates(m_residue_mod8: int) -> tuple[int, ...]:
    """Classes mod 200 of odd m, prime to 5, with the given residue mod 8."""
    return tuple(m for m in range(200) if m % 8 == m_residue_mod8 and m % 5)


def e_m(m: int, target: int, modulus: int = 200) -> int:
    """The element of E with ``E_m * m = target (mod modulus)``."""
    hits = [e for e in E_2B if (e * m - target) % modulus == 0]
    if len(hits) != 1:
        raise ValueError(f"no unique E_m for m={m}, target {target} mod {modulus}")
    return hits[0]


def _amend(rules: list[CaseRule], fixes: dict[str, tuple[dict, str]]) -> list[CaseRule]:
    out = []
    for r in rules:
        if r.label in fixes:
            changes, note = fixes[r.label]
            r = replace(r, origin="amended", note=note, **changes)
        out.append(r)
    return out


_NO_A = {"a_conditions": ()}
_AMEND_2B = {
    "Case 1 Subcase 4": ({"a1_residue": 13}, "printed a = 7 (mod 200); E_m m = 13 forces a = 13"),
    "Case 2 Subcase 1": (
        {"multiplier": 1, "a1_modulus": 40, "a1_residue": 13, **_NO_A},
        "printed a = 2 a1: an even a cannot divide the odd m s^2 + 5",
    ),
    "Case 2 Subcase 2": (
        {"multiplier": 1, "a1_modulus": 40, "a1_residue": 17, **_NO_A},
        "printed a = 2 a1: an even a cannot divide the odd m s^2 + 5",
    ),
    "Case 2 Subcase 3": (
        {"multiplier": 1, "a1_modulus": 40, "a1_residue": 13, **_NO_A},
        "printed a = 2 a1: an even a cannot divide the odd m s^2 + 5",
    ),
    "Case 2 Subcase 4": (
        {"multiplier": 1, "a1_modulus": 40, "a1_residue": 17, **_NO_A},
        "printed a = 2 a1: an even a cannot divide the odd m s^2 + 5",
    ),
    "Case 3 Subcase 1": (
        {"multiplier": 5, "a1_modulus": 8, "a1_residue": 3, **_NO_A},
        "printed a = 1 (mod 200), A^2 = 4: contradicts (A^2 + a)/m = 3 (mod 8)",
    ),
    "Case 3 Subcase 2": (_NO_A, "printed A^2 = 0 (mod 200) fails the 3 (mod 8) target when m1 = 7 (mod 8)"),
    "Case 4 Subcase 1": (
        {"multiplier": 5, **_NO_A},
        "printed a prime to 5 with A^2 = 9 (mod 200): no A meets the 3 (mod 8) target",
    ),
    "Case 4 Subcase 2": (
        {"multiplier": 5, **_NO_A},
        "printed a prime to 5 with A^2 = 9 (mod 200): no A meets the 3 (mod 8) target",
    ),
}


def _rules_2b() -> list[CaseRule]:
    sep = (3, 8)
    R = lambda label, mc, **kw: CaseRule("2b", label, mc, separation=sep, **kw)  # noqa: E731
    printed = [
        R("Case 1 Subcase 1", (_mod(8, 1), _NOT5), a1_modulus=200, a1_residue=3, a_conditions=(_A2(200, 0),)),
        R("Case 1 Subcase 2", (_mod(8, 3), _NOT5), a1_modulus=200, a1_residue=17, a_conditions=(_A2(200, 0),)),
        R("Case 1 Subcase 3", (_mod(8, 5), _NOT5), a1_modulus=200, a1_residue=7, a_conditions=(_A2(200, 0),)),
        R("Case 1 Subcase 4", (_mod(8, 7), _NOT5), a1_modulus=200, a1_residue=7, a_conditions=(_A2(200, 0),)),
        R(
            "Case 2 Subcase 1",
            (_mod(16, 2), _NOT5),
            divisor=2,
            multiplier=2,
            a1_modulus=400,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(400, 4),),
        ),
        R(
            "Case 2 Subcase 2",
            (_mod(16, 6), _NOT5),
            divisor=2,
            multiplier=2,
            a1_modulus=400,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(400, 0),),
        ),
        R(
            "Case 2 Subcase 3",
            (_mod(16, 10), _NOT5),
            divisor=2,
            multiplier=2,
            a1_modulus=400,
            a1_residue=29,
            scope="m1",
            a_conditions=(_A2(400, 4),),
        ),
        R(
            "Case 2 Subcase 4",
            (_mod(16, 14), _NOT5),
            divisor=2,
            multiplier=2,
            a1_modulus=400,
            a1_residue=11,
            scope="m1",
            a_conditions=(_A2(400, 4),),
        ),
        R(
            "Case 3 Subcase 1",
            (_ODD,),
            divisor=5,
            m1_conditions=(_mod(8, 1, 5),),
            a1_modulus=200,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(200, 4),),
        ),
        R(
            "Case 3 Subcase 2",
            (_ODD,),
            divisor=5,
            m1_conditions=(_mod(8, 3, 7),),
            multiplier=5,
            a1_modulus=200,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(200, 0),),
        ),
        R(
            "Case 4 Subcase 1",
            (),
            divisor=10,
            m1_conditions=(_mod(8, 1, 5),),
            a1_modulus=200,
            a1_residue=1,
            scope="m1",
            a_conditions=(_A2(200, 9),),
        ),
        R(
            "Case 4 Subcase 2",
            (),
            divisor=10,
            m1_conditions=(_mod(8, 3, 7),),
            a1_modulus=200,
            a1_residue=21,
            scope="m1",
            a_conditions=(_A2(200, 9),),
        ),
    ]
    return _amend(printed, _AMEND_2B)


_PRIMITIVE = "printed choice makes every coefficient of f even"
_AMEND_3 = {
    "Case 3 Subcase 1": ({"a1_residue": 1, "probe": (2, 0, 1)}, _PRIMITIVE),
    "Case 3 Subcase 2": ({"multiplier": 4, "a1_residue": 7}, _PRIMITIVE),
    "Case 3 Subcase 3": ({"a1_residue": 1, "probe": (2, 0, 1)}, _PRIMITIVE),
    "Case 3 Subcase 4": ({"multiplier": 4, "a1_residue": 7}, _PRIMITIVE),
}


def _rules_3() -> list[CaseRule]:
    sep = (10, 16)
    R = lambda label, mc, **kw: CaseRule("3", label, mc, separation=sep, **kw)  # noqa: E731
    rules = [
        R(
            "Case 1 Subcase 1",
            (_mod(4, 1), _NOT3),
            a1_modulus=48,
            a1_residue=1,
            a_conditions=(_A2(16, 9, when=_mod(8, 1)), _A2(16, 1, when=_mod(8, 5))),
        ),
        R("Case 1 Subcase 2 (m = 1 mod 8)", (_mod(36, 33), _mod(8, 1)), divisor=3, multiplier=3, a1_modulus=16, a1_residue=3, scope="m1"),
        R("Case 1 Subcase 2 (m = 5 mod 8)", (_mod(36, 33), _mod(8, 5)), divisor=3, multiplier=3, a1_modulus=16, a1_residue=11, scope="m1"),
        R("Case 2 Subcase 1 (m = 3 mod 8)", (_mod(8, 3), _NOT3), a1_modulus=48, a1_residue=37),
        R("Case 2 Subcase 1 (m = 7 mod 8)", (_mod(8, 7), _NOT3), a1_modulus=48, a1_residue=13),
        R("Case 2 Subcase 2", (_mod(36, 15),), divisor=3, multiplier=3, a1_modulus=8, a1_residue=7, scope="m1"),
    ]
    for i, pair in enumerate(((2, 18), (6, 22), (10, 26), (14, 30)), start=1):
        rules.append(R(f"Case 3 Subcase {i}", (_mod(32, *pair), _NOT3), divisor=2, a1_modulus=24, a1_residue=19, scope="m1"))
    rules.append(
        R("Case 4 (m1 = 1 mod 12)", (), divisor=6, m1_conditions=(_mod(12, 1),), multiplier=12, a1_modulus=8, a1_residue=1, scope="m1", origin="amended", note=_PRIMITIVE)
    )
    rules.append(
        R("Case 4 (m1 = 7 mod 12)", (), divisor=6, m1_conditions=(_mod(12, 7),), multiplier=3, a1_modulus=8, a1_residue=3, scope="m1", probe=(2, 0, 1), origin="amended", note=_PRIMITIVE)
    )
    return _amend(rules, _AMEND_3)


_BUILDERS = {
    "1a": _rules_1a,
    "1b": _rules_1b,
    "1c": _rules_1c,
    "1d": _rules_1d,
    "1e": _rules_1e,
    "1f": _rules_1f,
    "2a": _rules_2a,
    "2b": _rules_2b,
    "3": _rules_3,
}


@lru_cache(maxsize=None)
def rules_for(entry_id: str) -> tuple[CaseRule, ...]:
    if entry_id not in _BUILDERS:
        raise KeyError(f"entry {entry_id!r} has no case table")
    return tuple(_BUILDERS[entry_id]())


def rules_table() -> tuple[CaseRule, ...]:
    return tuple(r for e in _BUILDERS for r in rules_for(e))


def strip_scales(entry_id: str, m: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Remove the entry's stripping scales from m; returns (m0, ((s, k), ...))."""
    scales = get_entry(entry_id).strip_scales
    counts = dict.fromkeys(scales, 0)
    changed = True
    while changed:
        changed = False
        for s in scales:
            if m % s == 0:
                m //= s
                counts[s] += 1
                changed = True
    return m, tuple(sorted(counts.items()))


def _admissible(entry_id: str, m: int) -> None:
    entry = get_entry(entry_id)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if is_excluded(entry.spec, m):
        raise ExcludedInputError(f"{m} lies in the excluded set of entry {entry_id}")


def classify(entry_id: str, m: int) -> CaseRule:
    """The unique rule of the entry matching m (already stripped of scales)."""
    _admissible(entry_id, m)
    if any(m % s == 0 for s in get_entry(entry_id).strip_scales):
        raise ValueError(f"{m} is divisible by a stripping scale of entry {entry_id}")
    hits = [r for r in rules_for(entry_id) if r.matches(m)]
    if not hits:
        raise NoRuleError(f"no rule of entry {entry_id} matches m={m}")
    if len(hits) > 1:
        raise NoRuleError(f"rules {[r.label for r in hits]} of entry {entry_id} overlap at m={m}")
    return hits[0]


def choose_a(m: int, rule: CaseRule, D: int | None = None) -> int:
    if D is None:
        D = get_entry(rule.entry_id).det
    u = rule.multiplier
    conditions = [(p, 1) for p in odd_prime_divisors(rule.scope_value(m))]
    avoid = {p for p, _ in factorize(D * m)}
    a1 = find_prime_in_ap(
        rule.a1_residue, rule.a1_modulus, conditions=conditions, avoid=avoid, premultiplier=u
    )
    return u * a1


def _smallest_positive(roots: Iterable[int], period: int) -> int | None:
    roots = list(roots)
    if not roots:
        return None
    return min(r if r > 0 else period for r in roots)


def choose_h_b(
    m: int, D: int, a: int, s_condition: tuple[int, Residues] | None = None
) -> tuple[int, int]:
    """h = D m t for the smallest workable t, else h = m s; b = (h^2 + D m)/a.

    Either way ``h = 0 (mod m)`` and ``b = 0 (mod m)``, so f is integral.
    ``s_condition`` skips the first family and confines s to residue classes.
    """
    t = None
    if s_condition is None:
        t = _smallest_positive(solve_quadratic_mod(m * D * D, D, a), a)
    if t is not None:
        h = D * m * t
    else:
        roots, period = sorted(solve_quadratic_mod(m, D, a)), a
        if s_condition is not None:
            roots, period = _merge(roots, a, s_condition[1], s_condition[0])
        s = _smallest_positive(roots, period)
        if s is None:
            raise ConstructionError(f"a={a} admits no h for m={m}, D={D}")
        h = m * s
    b, r = divmod(h * h + D * m, a)
    if r or b % m:
        raise ConstructionError(f"h={h} does not give an integral b for a={a}")
    return h, b


def _merge(r1: Iterable[int], n1: int, r2: Iterable[int], n2: int) -> tuple[list[int], int]:
    """Residues mod lcm(n1, n2) that reduce into r1 mod n1 and r2 mod n2."""
    g = gcd(n1, n2)
    n = n1 // g * n2
    allowed = set(r2)
    out = []
    for x in r1:
        for k in range(n2 // g):
            y = x + k * n1
            if y % n2 in allowed:
                out.append(y)
    return sorted(out), n


def choose_A(m: int, a: int, rule: CaseRule) -> int:
    """Smallest A >= 0 with A^2 + a = 0 (mod m) meeting the rule's constraints.

    With a separation (E, M) the probe vector v must satisfy f(v) = E (mod M).
    For v = (1, 0, 0) that is A^2 = E m - a (mod M m).  For v = (x, 0, 1),
    m f(v) = (x A + m)^2 + a x^2, so T = x A + m solves T^2 = E m - a x^2
    (mod M m) and A is recovered from T.
    """
    if rule.separation is None:
        residues, modulus = sorted(solve_square_mod(-a, m)), m
    elif rule.probe == (1, 0, 0):
        e, q = rule.separation
        residues, modulus = sorted(solve_square_mod(e * m - a, m * q)), m * q
    else:
        e, q = rule.separation
        x = rule.probe[0]
        big = m * q
        if q % x:
            raise ValueError(f"probe {rule.probe} needs x to divide the separation modulus")
        modulus = big // x
        roots = solve_square_mod(e * m - a * x * x, big)
        lifted = {((t - m) // x) % modulus for t in roots if (t - m) % x == 0}
        residues = sorted(r for r in lifted if (r * r + a) % m == 0)
    for cond in rule.a_conditions:
        if cond.applies(m):
            residues, modulus = _merge(residues, modulus, cond.allowed(), cond.modulus)
    if not residues:
        raise ConstructionError(f"no A for m={m}, a={a} under {rule.label} of entry {rule.entry_id}")
    return residues[0]


def build_form(w: Witness) -> TernaryForm:
    m, A, B, a, h, b = w.m, w.A, w.B, w.a, w.h, w.b
    num = (A * A + a, B * B + b, 2 * (A * B + h))
    if any(x % m for x in num):
        raise ConstructionError(f"witness {w} does not give an integral form")
    return TernaryForm(num[0] // m, num[1] // m, m, 2 * B, 2 * A, num[2] // m)


def construct(entry_id: str, m: int, rule: CaseRule | None = None) -> tuple[CaseRule, Witness, TernaryForm]:
    """Run the chooser pipeline for an already stripped m."""
    entry = get_entry(entry_id)
    if rule is None:
        rule = classify(entry_id, m)
    a = choose_a(m, rule, entry.det)
    h, b = choose_h_b(m, entry.det, a, rule.s_condition)
    A = choose_A(m, a, rule)
    w = Witness(m=m, D=entry.det, A=A, B=0, a=a, h=h, b=b)
    return rule, w, build_form(w)


_ROOT = {4: 2, 9: 3, 25: 5}


def certify(entry_id: str, m: int) -> Certificate:
    _admissible(entry_id, m)
    entry = get_entry(entry_id)
    m0, scales = strip_scales(entry_id, m)
    rule, w, f = construct(entry_id, m0)
    cert = is_equivalent(f, entry.target)
    if cert is None:
        raise ConstructionError(
            f"{entry_id} m={m0}: {rule.label} built {f.pretty()} (content {content(f)}), "
            "which is not equivalent to the target"
        )
    factor = 1
    for s, k in scales:
        factor *= _ROOT[s] ** k
    v0 = cert.inverse().apply((0, 0, 1))
    vector = tuple(factor * x for x in v0)
    out = Certificate(entry_id, m, w, f, cert, vector, scales, rule)  # type: ignore[arg-type]
    problems = validate_certificate(out)
    if problems:
        raise ConstructionError(f"{entry_id} m={m}: certificate fails self-check: {problems}")
    return out


def validate_certificate(c: Certificate) -> list[str]:
    """Every independent check a certificate must pass; empty when sound."""
    entry = get_entry(c.entry_id)
    w, f = c.witness, c.f
    out = list(w.problems())
    if w.D != entry.det or determinant(f) != entry.det:
        out.append("determinant mismatch")
    if evaluate(f, (0, 0, 1)) != w.m:
        out.append("f(0,0,1) != m0")
    rng = range(-5, 6)
    for x in rng:
        for y in rng:
            for z in rng:
                lhs = w.m * f(x, y, z)
                rhs = (w.A * x + w.B * y + w.m * z) ** 2 + w.a * x * x + 2 * w.h * x * y + w.b * y * y
                if lhs != rhs:
                    out.append(f"expansion identity fails at {(x, y, z)}")
                    break
    if not c.equivalence.certifies(f, entry.target):
        out.append("U^T G_f U != G_target")
    scale = 1
    for s, k in c.scale_exponents:
        scale *= s**k
    if scale * w.m != c.m:
        out.append("scale exponents do not recover m")
    if evaluate(entry.target, c.vector) != c.m:
        out.append("target(vector) != m")
    return out
