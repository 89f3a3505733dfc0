"""Conjugacy classification of finite-order elements.

Every non-trivial finite-order element falls into one of four conjugacy
classes, named here by their canonical representatives: the three
involution classes -x, 1/x, -1/x and the single order-3 class -1/(x+1).
Besides a class label, this module produces an explicit conjugator witness
P with P * M * P^-1 equal to the canonical representative, re-verified
exactly before it is handed out.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .core import (
    IDENTITY,
    MOD2_IDENTITY,
    ProjectiveMatrix,
    conjugate,
    determinant,
    inverse,
    max_abs_entry,
    mod2_image,
    mul,
    order,
)

__all__ = [
    "NotTorsion",
    "SearchExhausted",
    "ElementClass",
    "ElementWitness",
    "CANONICAL_REPS",
    "canonical_rep",
    "classify_element",
    "conjugator_to_canonical",
    "CONJUGATION_GENERATORS",
]


class NotTorsion(ValueError):
    """The element has infinite order, so it has no torsion class."""


class SearchExhausted(RuntimeError):
    """The witness search ran out of depth.  This signals a bug, not a
    legitimate outcome: every finite-order element has a witness."""


class ElementClass(Enum):
    IDENTITY = "Identity"
    REF_NEG = "RefNeg"
    REF_INV = "RefInv"
    ROT_TWO = "RotTwo"
    ROT_THREE = "RotThree"


CANONICAL_REPS: dict[ElementClass, ProjectiveMatrix] = {
    ElementClass.IDENTITY: IDENTITY,
    ElementClass.REF_NEG: ProjectiveMatrix(1, 0, 0, -1),    # -x
    ElementClass.REF_INV: ProjectiveMatrix(0, 1, 1, 0),     # 1/x
    ElementClass.ROT_TWO: ProjectiveMatrix(0, 1, -1, 0),    # -1/x
    ElementClass.ROT_THREE: ProjectiveMatrix(0, 1, -1, -1),  # -1/(x+1)
}

# Conjugation moves used by the witness search: x+1, x-1, 1/x.
# The listed order is also the tie-break order of the greedy descent.
CONJUGATION_GENERATORS = (
    ProjectiveMatrix(1, 1, 0, 1),
    ProjectiveMatrix(1, -1, 0, 1),
    ProjectiveMatrix(0, 1, 1, 0),
)

_TABLE_EXPLORE_CAP = 2


def canonical_rep(label: ElementClass) -> ProjectiveMatrix:
    """Fixed canonical representative of each class."""
    return CANONICAL_REPS[label]


def classify_element(m: ProjectiveMatrix) -> ElementClass:
    """Conjugacy class of a finite-order element.

    Order 3 elements form a single class.  Among involutions, determinant
    +1 means the -1/x class; the two determinant -1 classes are separated
    by the mod-2 image, which is the identity exactly on the -x class.
    Raises NotTorsion for elements of infinite order.
    """
    n = order(m)
    if n is None:
        raise NotTorsion(f"{m} has infinite order")
    if n == 1:
        return ElementClass.IDENTITY
    if n == 3:
        return ElementClass.ROT_THREE
    if determinant(m) == 1:
        return ElementClass.ROT_TWO
    if mod2_image(m) == MOD2_IDENTITY:
        return ElementClass.REF_NEG
    return ElementClass.REF_INV


@dataclass(frozen=True)
class ElementWitness:
    """A conjugator carrying `subject` onto the canonical representative
    of `label`.  The defining equation is checked on construction, so an
    invalid witness can never exist."""

    subject: ProjectiveMatrix
    label: ElementClass
    conjugator: ProjectiveMatrix

    def __post_init__(self) -> None:
        if conjugate(self.conjugator, self.subject) != canonical_rep(self.label):
            raise ValueError(
                f"conjugator {self.conjugator} does not carry {self.subject} "
                f"onto the {self.label.value} representative"
            )


def _abs_sum(m: ProjectiveMatrix) -> int:
    return abs(m.a) + abs(m.b) + abs(m.c) + abs(m.d)


@lru_cache(maxsize=1)
def _small_witness_table() -> dict[ProjectiveMatrix, tuple[ElementClass, ProjectiveMatrix]]:
    """Finishing table: every finite-order element with entries in
    {-1, 0, 1}, mapped to its class and a conjugator onto the canonical
    representative.

    Built once by breadth-first search outward from each representative,
    then verified exactly and checked for full coverage of the small
    torsion elements.
    """
    table: dict[ProjectiveMatrix, tuple[ElementClass, ProjectiveMatrix]] = {}
    for label, rep in CANONICAL_REPS.items():
        seen = {rep}
        frontier = deque([(rep, IDENTITY)])
        while frontier:
            m, q = frontier.popleft()  # invariant: conjugate(q, rep) == m
            if max_abs_entry(m) <= 1 and m not in table:
                table[m] = (label, inverse(q))
            for g in CONJUGATION_GENERATORS:
                n = conjugate(g, m)
                if n not in seen and max_abs_entry(n) <= _TABLE_EXPLORE_CAP:
                    seen.add(n)
                    frontier.append((n, mul(g, q)))
    for a, b, c, d in itertools.product((-1, 0, 1), repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        m = ProjectiveMatrix(a, b, c, d)
        if order(m) is not None and m not in table:
            raise SearchExhausted(f"witness table does not cover {m}")
    for m, (label, p) in table.items():
        if conjugate(p, m) != CANONICAL_REPS[label]:
            raise SearchExhausted(f"witness table entry for {m} failed verification")
    return table


def _descend(m: ProjectiveMatrix) -> tuple[ProjectiveMatrix, ProjectiveMatrix]:
    """Greedy norm descent by conjugation.

    Repeatedly conjugates by the generator minimizing the entry-abs sum
    (ties broken in generator order) until the element fits in the
    finishing table or no move strictly decreases the sum.  Returns the
    reduced element and the accumulated conjugator.
    """
    cur = m
    acc = IDENTITY
    cur_sum = _abs_sum(cur)
    while max_abs_entry(cur) > 1:
        best = best_gen = None
        best_sum = 0
        for g in CONJUGATION_GENERATORS:
            cand = conjugate(g, cur)
            s = _abs_sum(cand)
            if best is None or s < best_sum:
                best, best_gen, best_sum = cand, g, s
        if best_sum >= cur_sum:
            break  # stalled; the caller falls back to breadth-first search
        cur, cur_sum = best, best_sum
        acc = mul(best_gen, acc)
    return cur, acc


def _search_small_conjugate(
    start: ProjectiveMatrix, max_depth: int
) -> tuple[ProjectiveMatrix, ProjectiveMatrix]:
    """Breadth-first fallback: find any conjugate of `start` with entries
    in {-1, 0, 1}, together with the conjugator reaching it."""
    seen = {start}
    frontier: list[tuple[ProjectiveMatrix, ProjectiveMatrix]] = [(start, IDENTITY)]
    for _ in range(max_depth):
        nxt: list[tuple[ProjectiveMatrix, ProjectiveMatrix]] = []
        for m, q in frontier:
            for g in CONJUGATION_GENERATORS:
                n = conjugate(g, m)
                if n in seen:
                    continue
                seen.add(n)
                qq = mul(g, q)
                if max_abs_entry(n) <= 1:
                    return n, qq
                nxt.append((n, qq))
        if not nxt:
            break
        frontier = nxt
    raise SearchExhausted(
        f"no conjugate of {start} with small entries within depth {max_depth}"
    )


def conjugator_to_canonical(m: ProjectiveMatrix, *, max_depth: int = 64) -> ElementWitness:
    """Explicit witness conjugating a finite-order element onto its
    class representative.

    Strategy: greedy norm descent over the generators x+1, x-1, 1/x, then
    a finishing lookup among the elements with entries in {-1, 0, 1}; a
    bounded breadth-first search takes over if the descent stalls.  Any
    returned witness has already passed the exact conjugation check.
    """
    label = classify_element(m)  # raises NotTorsion on infinite order
    cur, acc = _descend(m)
    if max_abs_entry(cur) > 1:
        cur, q = _search_small_conjugate(cur, max_depth)
        acc = mul(q, acc)
    _, finish = _small_witness_table()[cur]
    return ElementWitness(m, label, mul(finish, acc))
