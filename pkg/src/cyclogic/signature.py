"""Subexponential signatures: modality labels, their preorder, and the
structural rules (weakening / contraction / exchange) each label admits.

A signature is validated once and then immutable; every side condition in
the proof checker and the searcher is answered by `leq` and the three
label-set membership tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class SignatureError(ValueError):
    """Base class for signature validation failures."""


class UnknownLabel(SignatureError):
    def __init__(self, label: str, where: str = ""):
        self.label = label
        super().__init__(f"unknown label {label!r}" + (f" in {where}" if where else ""))


class NotUpwardClosed(SignatureError):
    def __init__(self, set_name: str, lower: str, upper: str):
        self.set_name = set_name
        self.witness = (lower, upper)
        super().__init__(
            f"set {set_name!r} is not upward closed: contains {lower!r}, "
            f"{lower!r} <= {upper!r}, but {upper!r} is missing"
        )


class WCNotInE(SignatureError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(
            f"label {label!r} admits both weakening and contraction "
            f"but not exchange"
        )


@dataclass(frozen=True)
class SubexpSignature:
    """Validated signature: `order` holds the reflexive-transitive closure."""

    labels: frozenset[str]
    order: frozenset[tuple[str, str]]
    weakenable: frozenset[str]
    contractible: frozenset[str]
    exchangeable: frozenset[str]
    _order_set: frozenset[tuple[str, str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_order_set", self.order)

    def leq(self, s1: str, s2: str) -> bool:
        """True iff s1 <= s2 in the closed preorder."""
        if s1 not in self.labels:
            raise UnknownLabel(s1, "leq")
        if s2 not in self.labels:
            raise UnknownLabel(s2, "leq")
        return (s1, s2) in self._order_set

    def check_label(self, s: str) -> None:
        if s not in self.labels:
            raise UnknownLabel(s)

    def allows_weakening(self, s: str) -> bool:
        self.check_label(s)
        return s in self.weakenable

    def allows_contraction(self, s: str) -> bool:
        self.check_label(s)
        return s in self.contractible

    def allows_exchange(self, s: str) -> bool:
        self.check_label(s)
        return s in self.exchangeable


def _closure(labels: frozenset[str], pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure of the generating pairs (Warshall)."""
    reach: dict[str, set[str]] = {a: {a} for a in labels}
    for a, b in pairs:
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in labels:
            expand = set()
            for b in reach[a]:
                expand |= reach[b]
            if not expand <= reach[a]:
                reach[a] |= expand
                changed = True
    return frozenset((a, b) for a in labels for b in reach[a])


def validate_signature(
    labels: Iterable[str],
    order: Iterable[tuple[str, str]] = (),
    weakenable: Iterable[str] = (),
    contractible: Iterable[str] = (),
    exchangeable: Iterable[str] = (),
) -> SubexpSignature:
    """Build a signature from raw parts, closing the order and checking
    every invariant.

    The raw order may list only generating pairs; the closure is computed
    here.  Upward-closure violations of the three structural sets are hard
    errors, never silently repaired.
    """
    labs = frozenset(labels)
    if not labs:
        raise SignatureError("label set must be non-empty")
    for lab in labs:
        if not LABEL_RE.match(lab):
            raise SignatureError(f"bad label syntax: {lab!r}")

    pairs = tuple(order)
    for a, b in pairs:
        if a not in labs:
            raise UnknownLabel(a, "order")
        if b not in labs:
            raise UnknownLabel(b, "order")

    sets = {
        "weakenable": frozenset(weakenable),
        "contractible": frozenset(contractible),
        "exchangeable": frozenset(exchangeable),
    }
    for name, members in sets.items():
        for lab in members:
            if lab not in labs:
                raise UnknownLabel(lab, name)

    closed = _closure(labs, pairs)

    for name, members in sets.items():
        for lo in members:
            for (a, b) in closed:
                if a == lo and b not in members:
                    raise NotUpwardClosed(name, lo, b)

    both = sets["weakenable"] & sets["contractible"]
    stray = both - sets["exchangeable"]
    if stray:
        raise WCNotInE(min(stray))

    return SubexpSignature(
        labels=labs,
        order=closed,
        weakenable=sets["weakenable"],
        contractible=sets["contractible"],
        exchangeable=sets["exchangeable"],
    )


def leq(sig: SubexpSignature, s1: str, s2: str) -> bool:
    return sig.leq(s1, s2)


#: The one-label signature where the single modality admits every
#: structural rule (the classical exponential).
def full_exponential_signature(label: str = "s0") -> SubexpSignature:
    return validate_signature([label], [], [label], [label], [label])
