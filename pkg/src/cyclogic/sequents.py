"""Sequents of the two calculi.

An intuitionistic sequent has a (possibly empty) antecedent list and a
single succedent.  A cyclic sequent is a non-empty sequence of formulas
whose mathematical identity is the rotation class; the value object holds
one concrete rotation so that rule instances can record positions, and
graphical equality is available through `rotations_equal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .formulas import (
    CllFormula,
    LambekFormula,
    NEITHER,
    NegImage,
    PosImage,
    classify_image,
    cll_text,
    lambek_text,
    natural,
)


@dataclass(frozen=True)
class IntSequent:
    antecedent: tuple[LambekFormula, ...]
    succedent: LambekFormula

    def __str__(self) -> str:
        left = ", ".join(lambek_text(f) for f in self.antecedent)
        return f"{left} -> {lambek_text(self.succedent)}" if left else f"-> {lambek_text(self.succedent)}"


@dataclass(frozen=True)
class CyclicSequent:
    formulas: tuple[CllFormula, ...]

    def __post_init__(self):
        if not self.formulas:
            raise ValueError("cyclic sequents are non-empty")

    def __len__(self) -> int:
        return len(self.formulas)

    def __str__(self) -> str:
        return "|- " + ", ".join(cll_text(f) for f in self.formulas)


Sequent = Union[IntSequent, CyclicSequent]


def rotate(s: CyclicSequent, r: int) -> CyclicSequent:
    n = len(s.formulas)
    r %= n
    if r == 0:
        return s
    return CyclicSequent(s.formulas[r:] + s.formulas[:r])


def rotations_equal(a: CyclicSequent, b: CyclicSequent) -> bool:
    """Graphical equality of cyclic sequents."""
    fa, fb = a.formulas, b.formulas
    n = len(fa)
    if n != len(fb):
        return False
    if n == 1:
        return fa == fb
    first = fa[0]
    for r in range(n):
        if fb[r] == first and fb[r:] + fb[:r] == fa:
            return True
    return False


def canonical_rotation(s: CyclicSequent) -> CyclicSequent:
    """The least rotation under (serialized text, then rotation offset).

    Deterministic canonical representative; two sequents are rotation
    equal iff their canonical rotations are identical tuples.
    """
    fs = s.formulas
    n = len(fs)
    if n == 1:
        return s
    texts = [cll_text(f) for f in fs]
    best_r = 0
    best = tuple(texts)
    for r in range(1, n):
        cand = tuple(texts[r:] + texts[:r])
        if cand < best:
            best = cand
            best_r = r
    return rotate(s, best_r)


def canonical_key(s: CyclicSequent) -> tuple[CllFormula, ...]:
    return canonical_rotation(s).formulas


@dataclass(frozen=True)
class NaturalProfile:
    classified: bool
    sum: int = 0
    pos_images: int = 0


def natural_profile(s: CyclicSequent) -> NaturalProfile:
    """Counter sum and positive-image count, when every member is a
    translation image; `classified` is False otherwise."""
    total = 0
    pos = 0
    for f in s.formulas:
        cls = classify_image(f)
        if cls == NEITHER:
            return NaturalProfile(classified=False)
        if isinstance(cls, PosImage):
            pos += 1
        total += natural(f)
    return NaturalProfile(classified=True, sum=total, pos_images=pos)
