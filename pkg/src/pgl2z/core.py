"""Exact arithmetic for the extended modular group PGL(2, Z).

Elements are 2x2 integer matrices (a b; c d) with ad - bc = +-1, taken
modulo sign: M and -M denote the same element.  Equivalently, each element
is the linear fractional transform x -> (ax+b)/(cx+d).

Every value is immutable and sign-normalized on construction, and every
operation is a pure function, so values can be shared freely between
threads with no synchronization.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

__all__ = [
    "BadDeterminant",
    "ProjectiveMatrix",
    "IDENTITY",
    "MOD2_IDENTITY",
    "normalize",
    "mul",
    "inverse",
    "conjugate",
    "determinant",
    "abs_trace",
    "order",
    "mod2_image",
    "max_abs_entry",
]


class BadDeterminant(ValueError):
    """The matrix determinant is not +1 or -1."""


@dataclass(frozen=True, order=True)
class ProjectiveMatrix:
    """A 2x2 integer matrix with determinant +-1, modulo sign.

    The stored representative of the pair {M, -M} is the one whose first
    nonzero entry in scan order (a, b, c, d) is positive.  Entries are
    arbitrary-precision Python integers, so arithmetic is exact at any
    size; there is no overflow to detect.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        a = operator.index(self.a)
        b = operator.index(self.b)
        c = operator.index(self.c)
        d = operator.index(self.d)
        det = a * d - b * c
        if det not in (1, -1):
            raise BadDeterminant(f"determinant must be +1 or -1, got {det}")
        for entry in (a, b, c, d):
            if entry:
                if entry < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return mul(self, other)

    def __str__(self) -> str:
        # Canonical textual form, used for display ordering everywhere.
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = ProjectiveMatrix(1, 0, 0, 1)

MOD2_IDENTITY = ((1, 0), (0, 1))


def normalize(a: int, b: int, c: int, d: int) -> ProjectiveMatrix:
    """Canonical representative of {(a b; c d), (-a -b; -c -d)}.

    Raises BadDeterminant unless ad - bc is +1 or -1.
    """
    return ProjectiveMatrix(a, b, c, d)


def mul(m: ProjectiveMatrix, n: ProjectiveMatrix) -> ProjectiveMatrix:
    """Matrix product m * n, renormalized.

    Matches composition of the corresponding linear fractional transforms:
    mul(m, n) acts as x -> m(n(x)).
    """
    return ProjectiveMatrix(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def inverse(m: ProjectiveMatrix) -> ProjectiveMatrix:
    """Group inverse: the adjugate (d -b; -c a), renormalized.

    The true inverse is the adjugate divided by the determinant; the
    determinant is a global +-1 and disappears in the quotient.
    """
    return ProjectiveMatrix(m.d, -m.b, -m.c, m.a)


def conjugate(p: ProjectiveMatrix, m: ProjectiveMatrix) -> ProjectiveMatrix:
    """p * m * p^-1, renormalized.

    Hand-inlined triple product (the adjugate stands in for p^-1); this is
    the hot path of every search and enumeration.
    """
    xa = p.a * m.a + p.b * m.c
    xb = p.a * m.b + p.b * m.d
    xc = p.c * m.a + p.d * m.c
    xd = p.c * m.b + p.d * m.d
    return ProjectiveMatrix(
        xa * p.d - xb * p.c,
        xb * p.a - xa * p.b,
        xc * p.d - xd * p.c,
        xd * p.a - xc * p.b,
    )


def determinant(m: ProjectiveMatrix) -> int:
    """ad - bc, always +1 or -1; well-defined on the sign quotient."""
    return m.a * m.d - m.b * m.c


def abs_trace(m: ProjectiveMatrix) -> int:
    """|a + d|.  The trace sign is not well-defined modulo sign, the
    absolute value is."""
    return abs(m.a + m.d)


def order(m: ProjectiveMatrix) -> int | None:
    """Order of m in the group: 1, 2, 3, or None for infinite order.

    Closed form: the identity has order 1; trace 0 gives order 2 for either
    determinant; determinant +1 with |trace| 1 gives order 3; everything
    else has infinite order.  No other finite orders occur in this group.
    """
    if m == IDENTITY:
        return 1
    t = abs(m.a + m.d)
    if t == 0:
        return 2
    if t == 1 and determinant(m) == 1:
        return 3
    return None


def mod2_image(m: ProjectiveMatrix) -> tuple[tuple[int, int], tuple[int, int]]:
    """Entrywise reduction mod 2.

    Constant on {M, -M} and multiplicative, so "image equals the identity
    mod 2" is a conjugacy invariant.
    """
    return ((m.a % 2, m.b % 2), (m.c % 2, m.d % 2))


def max_abs_entry(m: ProjectiveMatrix) -> int:
    return max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))
