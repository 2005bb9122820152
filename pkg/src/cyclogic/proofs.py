"""Proof objects and the rule-by-rule checker for both calculi.

A proof is a tree of nodes; each node carries its conclusion, a rule tag
with explicit positional witnesses, and the premise subproofs.  The
checker re-derives the expected premises of every node from the tag and
compares them with the actual subproof conclusions -- exactly for
intuitionistic sequents, up to rotation for cyclic ones.

Forward builders (`cax`, `ctensor`, ...) construct single nodes from
premise proofs plus the semantic data of the rule instance; search, the
proof translations and cut elimination all assemble proofs through them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .formulas import (
    Bang,
    Bot,
    CllFormula,
    LAnd,
    LBang,
    LDiv,
    LOr,
    LUnit,
    LVar,
    LZero,
    LambekFormula,
    One,
    Par,
    Plus,
    Prod,
    Quest,
    RDiv,
    Tensor,
    Top,
    With,
    Zero,
    cll_text,
    lambek_text,
    negate,
)
from .sequents import CyclicSequent, IntSequent, Sequent, rotations_equal
from .signature import SubexpSignature, UnknownLabel

# ---------------------------------------------------------------------------
# rule tags: intuitionistic side


@dataclass(frozen=True)
class Ax:
    pass


@dataclass(frozen=True)
class ProdL:
    i: int


@dataclass(frozen=True)
class ProdR:
    k: int


@dataclass(frozen=True)
class LDivL:
    i: int
    plen: int


@dataclass(frozen=True)
class LDivR:
    pass


@dataclass(frozen=True)
class RDivL:
    i: int
    plen: int


@dataclass(frozen=True)
class RDivR:
    pass


@dataclass(frozen=True)
class OneL:
    i: int


@dataclass(frozen=True)
class OneR:
    pass


@dataclass(frozen=True)
class ZeroL:
    i: int


@dataclass(frozen=True)
class PlusL:
    i: int


@dataclass(frozen=True)
class PlusR:
    which: int


@dataclass(frozen=True)
class WithL:
    i: int
    which: int


@dataclass(frozen=True)
class WithR:
    pass


@dataclass(frozen=True)
class BangL:
    i: int


@dataclass(frozen=True)
class BangR:
    pass


@dataclass(frozen=True)
class Weak:
    i: int


@dataclass(frozen=True)
class NContr1:
    i: int
    d: int


@dataclass(frozen=True)
class NContr2:
    i: int
    d: int


@dataclass(frozen=True)
class Ex1:
    i: int
    d: int


@dataclass(frozen=True)
class Ex2:
    i: int
    d: int


@dataclass(frozen=True)
class LocalContr:
    i: int


@dataclass(frozen=True)
class Cut:
    k: int
    plen: int
    formula: LambekFormula


# ---------------------------------------------------------------------------
# rule tags: cyclic side


@dataclass(frozen=True)
class CAx:
    pass


@dataclass(frozen=True)
class COne:
    pass


@dataclass(frozen=True)
class CTop:
    i: int


@dataclass(frozen=True)
class CBot:
    i: int


@dataclass(frozen=True)
class CPar:
    i: int


@dataclass(frozen=True)
class CTensor:
    i: int
    k: int


@dataclass(frozen=True)
class CWith:
    i: int


@dataclass(frozen=True)
class CPlus:
    i: int
    which: int


@dataclass(frozen=True)
class CQuest:
    i: int


@dataclass(frozen=True)
class CBang:
    i: int


@dataclass(frozen=True)
class CWeak:
    i: int


@dataclass(frozen=True)
class CNContr:
    i: int
    m: int


@dataclass(frozen=True)
class CLocalContr:
    i: int


@dataclass(frozen=True)
class CEx:
    i: int
    m: int


@dataclass(frozen=True)
class CCut:
    gs: int
    gl: int
    formula: CllFormula


@dataclass(frozen=True)
class CMix:
    gs: int
    gl: int
    dlens: tuple[int, ...]
    formula: CllFormula
    label: str


RuleTag = Union[
    Ax, ProdL, ProdR, LDivL, LDivR, RDivL, RDivR, OneL, OneR, ZeroL,
    PlusL, PlusR, WithL, WithR, BangL, BangR, Weak, NContr1, NContr2,
    Ex1, Ex2, LocalContr, Cut,
    CAx, COne, CTop, CBot, CPar, CTensor, CWith, CPlus, CQuest, CBang,
    CWeak, CNContr, CLocalContr, CEx, CCut, CMix,
]

_ARITY = {
    Ax: 0, OneR: 0, ZeroL: 0, CAx: 0, COne: 0, CTop: 0,
    ProdL: 1, LDivR: 1, RDivR: 1, OneL: 1, PlusR: 1, WithL: 1, BangL: 1,
    BangR: 1, Weak: 1, NContr1: 1, NContr2: 1, Ex1: 1, Ex2: 1, LocalContr: 1,
    CBot: 1, CPar: 1, CPlus: 1, CQuest: 1, CBang: 1, CWeak: 1, CNContr: 1,
    CLocalContr: 1, CEx: 1,
    ProdR: 2, LDivL: 2, RDivL: 2, PlusL: 2, WithR: 2, Cut: 2,
    CTensor: 2, CWith: 2, CCut: 2, CMix: 2,
}

CUT_KINDS = (Cut, CCut, CMix)


@dataclass(frozen=True)
class Proof:
    conclusion: Sequent
    rule: RuleTag
    premises: tuple["Proof", ...] = ()

    @property
    def kind(self) -> str:
        return type(self.rule).__name__


@dataclass(frozen=True)
class CheckOptions:
    allow_cut: bool = False
    allow_mix: bool = False
    contraction_mode: str = "nonlocal"  # "nonlocal" | "local"
    allow_zero_constant: bool = False


CUTFREE = CheckOptions()
WITH_CUT = CheckOptions(allow_cut=True, allow_mix=True)


@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    reason: str  # SchemaMismatch | SideConditionFailed | RuleDisabled | ArityMismatch
    detail: str = ""

    def __str__(self) -> str:
        where = "/".join(str(i) for i in self.path) or "root"
        return f"{self.reason} at {where}: {self.detail}"


def is_cut_free(p: Proof) -> bool:
    if isinstance(p.rule, CUT_KINDS):
        return False
    return all(is_cut_free(q) for q in p.premises)


def rule_census(p: Proof) -> Counter:
    c: Counter = Counter()
    stack = [p]
    while stack:
        node = stack.pop()
        c[node.kind] += 1
        stack.extend(node.premises)
    return c


def proof_size(p: Proof) -> int:
    return 1 + sum(proof_size(q) for q in p.premises)


def proof_height(p: Proof) -> int:
    if not p.premises:
        return 1
    return 1 + max(proof_height(q) for q in p.premises)


# ---------------------------------------------------------------------------
# checker

_ZERO_GATED = (LZero,)


def _scan_labels(f, sig: SubexpSignature) -> Optional[str]:
    """First unknown modality label in the formula, if any."""
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (LBang, Bang, Quest)):
            if g.label not in sig.labels:
                return g.label
            stack.append(g.body)
        elif isinstance(g, (Prod, LDiv, RDiv, LAnd, LOr, Tensor, Par, With, Plus)):
            stack.append(g.left)
            stack.append(g.right)
    return None


def _mentions_lzero(f) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, LZero):
            return True
        if isinstance(g, (LBang,)):
            stack.append(g.body)
        elif isinstance(g, (Prod, LDiv, RDiv, LAnd, LOr)):
            stack.append(g.left)
            stack.append(g.right)
    return False


def check_proof(p: Proof, sig: SubexpSignature, opts: CheckOptions = CUTFREE) -> Optional[Violation]:
    """None when every node instantiates its rule schema and satisfies its
    side conditions under `opts`; otherwise the first violation found."""
    root_formulas: tuple = (
        p.conclusion.formulas
        if isinstance(p.conclusion, CyclicSequent)
        else p.conclusion.antecedent + (p.conclusion.succedent,)
    )
    for f in root_formulas:
        bad = _scan_labels(f, sig)
        if bad is not None:
            return Violation((), "SideConditionFailed", f"unknown label {bad!r}")
        if not opts.allow_zero_constant and _mentions_lzero(f):
            return Violation((), "RuleDisabled", "zero constant not enabled")
    return _check(p, sig, opts, ())


def _check(p: Proof, sig: SubexpSignature, opts: CheckOptions, path: tuple[int, ...]) -> Optional[Violation]:
    tag = p.rule
    expect_arity = _ARITY[type(tag)]
    if len(p.premises) != expect_arity:
        return Violation(path, "ArityMismatch", f"{p.kind} expects {expect_arity} premises")
    try:
        if isinstance(p.conclusion, CyclicSequent):
            result = _check_cyclic(p, sig, opts, path)
        else:
            result = _check_int(p, sig, opts, path)
    except UnknownLabel as exc:
        return Violation(path, "SideConditionFailed", str(exc))
    if result is not None:
        return result
    for idx, q in enumerate(p.premises):
        sub = _check(q, sig, opts, path + (idx,))
        if sub is not None:
            return sub
    return None


def _viol(path, reason, detail="") -> Violation:
    return Violation(path, reason, detail)


def _check_cyclic(p: Proof, sig, opts, path) -> Optional[Violation]:
    fs = p.conclusion.formulas
    n = len(fs)
    tag = p.rule

    def match(idx: int, expected: tuple[CllFormula, ...]) -> Optional[Violation]:
        actual = p.premises[idx].conclusion
        if not isinstance(actual, CyclicSequent):
            return _viol(path, "SchemaMismatch", "premise is not a cyclic sequent")
        if not expected:
            return _viol(path, "SchemaMismatch", "empty premise sequent")
        if not rotations_equal(CyclicSequent(expected), actual):
            return _viol(
                path, "SchemaMismatch",
                f"premise {idx} of {p.kind}: expected rotation of "
                f"{CyclicSequent(expected)}, got {actual}",
            )
        return None

    def rest_of(i: int) -> tuple[CllFormula, ...]:
        return fs[i + 1:] + fs[:i]

    if isinstance(tag, CAx):
        if n == 2 and fs[1] == negate(fs[0]):
            return None
        return _viol(path, "SchemaMismatch", f"not an axiom pair: {p.conclusion}")

    if isinstance(tag, COne):
        if n == 1 and isinstance(fs[0], One):
            return None
        return _viol(path, "SchemaMismatch", f"one axiom needs exactly |- 1, got {p.conclusion}")

    if isinstance(tag, CTop):
        if 0 <= tag.i < n and isinstance(fs[tag.i], Top):
            return None
        return _viol(path, "SchemaMismatch", "top axiom anchor is not top")

    if isinstance(tag, CBot):
        if not (0 <= tag.i < n and isinstance(fs[tag.i], Bot)):
            return _viol(path, "SchemaMismatch", "bot anchor mismatch")
        if n < 2:
            return _viol(path, "SchemaMismatch", "bot premise would be empty")
        return match(0, fs[:tag.i] + fs[tag.i + 1:])

    if isinstance(tag, CPar):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Par):
            return _viol(path, "SchemaMismatch", "par anchor mismatch")
        return match(0, fs[:tag.i] + (f.left, f.right) + fs[tag.i + 1:])

    if isinstance(tag, CTensor):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Tensor):
            return _viol(path, "SchemaMismatch", "tensor anchor mismatch")
        if not (0 <= tag.k <= n - 1):
            return _viol(path, "SchemaMismatch", "tensor split out of range")
        rest = rest_of(tag.i)
        delta, gamma = rest[:tag.k], rest[tag.k:]
        return match(0, gamma + (f.left,)) or match(1, (f.right,) + delta)

    if isinstance(tag, CWith):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, With):
            return _viol(path, "SchemaMismatch", "with anchor mismatch")
        return (
            match(0, fs[:tag.i] + (f.left,) + fs[tag.i + 1:])
            or match(1, fs[:tag.i] + (f.right,) + fs[tag.i + 1:])
        )

    if isinstance(tag, CPlus):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Plus) or tag.which not in (1, 2):
            return _viol(path, "SchemaMismatch", "plus anchor mismatch")
        comp = f.left if tag.which == 1 else f.right
        return match(0, fs[:tag.i] + (comp,) + fs[tag.i + 1:])

    if isinstance(tag, CQuest):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Quest):
            return _viol(path, "SchemaMismatch", "quest anchor mismatch")
        return match(0, fs[:tag.i] + (f.body,) + fs[tag.i + 1:])

    if isinstance(tag, CBang):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Bang):
            return _viol(path, "SchemaMismatch", "bang anchor mismatch")
        for j in range(n):
            if j == tag.i:
                continue
            g = fs[j]
            if not isinstance(g, Quest):
                return _viol(path, "SideConditionFailed", "promotion context must be quest-prefixed")
            if not sig.leq(f.label, g.label):
                return _viol(
                    path, "SideConditionFailed",
                    f"promotion needs {g.label!r} above {f.label!r}",
                )
        return match(0, fs[:tag.i] + (f.body,) + fs[tag.i + 1:])

    if isinstance(tag, CWeak):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Quest):
            return _viol(path, "SchemaMismatch", "weakening anchor mismatch")
        if not sig.allows_weakening(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not weakenable")
        if n < 2:
            return _viol(path, "SchemaMismatch", "weakening premise would be empty")
        return match(0, fs[:tag.i] + fs[tag.i + 1:])

    if isinstance(tag, CNContr):
        if opts.contraction_mode != "nonlocal":
            return _viol(path, "RuleDisabled", "non-local contraction disabled in local mode")
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Quest):
            return _viol(path, "SchemaMismatch", "contraction anchor mismatch")
        if not sig.allows_contraction(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not contractible")
        if not (0 <= tag.m <= n - 1):
            return _viol(path, "SchemaMismatch", "contraction split out of range")
        rest = rest_of(tag.i)
        return match(0, (f,) + rest[:tag.m] + (f,) + rest[tag.m:])

    if isinstance(tag, CLocalContr):
        if opts.contraction_mode != "local":
            return _viol(path, "RuleDisabled", "local contraction requires local mode")
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Quest):
            return _viol(path, "SchemaMismatch", "contraction anchor mismatch")
        if not sig.allows_contraction(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not contractible")
        return match(0, fs[:tag.i + 1] + (f,) + fs[tag.i + 1:])

    if isinstance(tag, CEx):
        f = fs[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Quest):
            return _viol(path, "SchemaMismatch", "exchange anchor mismatch")
        if not sig.allows_exchange(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not exchangeable")
        if not (0 <= tag.m <= n - 1):
            return _viol(path, "SchemaMismatch", "exchange split out of range")
        rest = rest_of(tag.i)
        return match(0, rest[:tag.m] + (f,) + rest[tag.m:])

    if isinstance(tag, CCut):
        if not opts.allow_cut:
            return _viol(path, "RuleDisabled", "cut disabled")
        if not (0 <= tag.gs < n and 0 <= tag.gl <= n):
            return _viol(path, "SchemaMismatch", "cut blocks out of range")
        doubled = fs + fs
        gamma = doubled[tag.gs:tag.gs + tag.gl]
        delta = doubled[tag.gs + tag.gl:tag.gs + n]
        return (
            match(0, gamma + (negate(tag.formula),))
            or match(1, (tag.formula,) + delta)
        )

    if isinstance(tag, CMix):
        if not opts.allow_mix:
            return _viol(path, "RuleDisabled", "mix disabled")
        if not sig.allows_contraction(tag.label):
            return _viol(path, "SideConditionFailed", f"mix label {tag.label!r} not contractible")
        k = len(tag.dlens)
        if k < 1 or tag.gl + sum(tag.dlens) != n or not (0 <= tag.gs < n):
            return _viol(path, "SchemaMismatch", "mix blocks malformed")
        doubled = fs + fs
        pos = tag.gs
        gamma = doubled[pos:pos + tag.gl]
        pos += tag.gl
        q = Quest(tag.label, tag.formula)
        right: tuple[CllFormula, ...] = ()
        for dl in tag.dlens:
            right += (q,) + doubled[pos:pos + dl]
            pos += dl
        return (
            match(0, gamma + (Bang(tag.label, negate(tag.formula)),))
            or match(1, right)
        )

    return _viol(path, "SchemaMismatch", f"tag {p.kind} not valid for cyclic sequents")


def _check_int(p: Proof, sig, opts, path) -> Optional[Violation]:
    seq = p.conclusion
    ant, succ = seq.antecedent, seq.succedent
    n = len(ant)
    tag = p.rule

    def match(idx: int, expected: IntSequent) -> Optional[Violation]:
        actual = p.premises[idx].conclusion
        if actual != expected:
            return _viol(
                path, "SchemaMismatch",
                f"premise {idx} of {p.kind}: expected {expected}, got {actual}",
            )
        return None

    if isinstance(tag, Ax):
        if n == 1 and ant[0] == succ:
            return None
        return _viol(path, "SchemaMismatch", f"not an axiom: {seq}")

    if isinstance(tag, OneR):
        if n == 0 and isinstance(succ, LUnit):
            return None
        return _viol(path, "SchemaMismatch", "unit axiom needs -> 1")

    if isinstance(tag, ZeroL):
        if not opts.allow_zero_constant:
            return _viol(path, "RuleDisabled", "zero constant not enabled")
        if 0 <= tag.i < n and isinstance(ant[tag.i], LZero):
            return None
        return _viol(path, "SchemaMismatch", "zero anchor mismatch")

    if isinstance(tag, ProdL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, Prod):
            return _viol(path, "SchemaMismatch", "product anchor mismatch")
        return match(0, IntSequent(ant[:tag.i] + (f.left, f.right) + ant[tag.i + 1:], succ))

    if isinstance(tag, ProdR):
        if not isinstance(succ, Prod) or not (0 <= tag.k <= n):
            return _viol(path, "SchemaMismatch", "product split mismatch")
        return (
            match(0, IntSequent(ant[:tag.k], succ.left))
            or match(1, IntSequent(ant[tag.k:], succ.right))
        )

    if isinstance(tag, LDivL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LDiv) or not (0 <= tag.plen <= tag.i):
            return _viol(path, "SchemaMismatch", "left-division anchor mismatch")
        pi = ant[tag.i - tag.plen:tag.i]
        return (
            match(0, IntSequent(pi, f.left))
            or match(1, IntSequent(ant[:tag.i - tag.plen] + (f.right,) + ant[tag.i + 1:], succ))
        )

    if isinstance(tag, LDivR):
        if not isinstance(succ, LDiv):
            return _viol(path, "SchemaMismatch", "left-division succedent mismatch")
        return match(0, IntSequent((succ.left,) + ant, succ.right))

    if isinstance(tag, RDivL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, RDiv) or not (0 <= tag.plen <= n - tag.i - 1):
            return _viol(path, "SchemaMismatch", "right-division anchor mismatch")
        pi = ant[tag.i + 1:tag.i + 1 + tag.plen]
        return (
            match(0, IntSequent(pi, f.right))
            or match(1, IntSequent(ant[:tag.i] + (f.left,) + ant[tag.i + 1 + tag.plen:], succ))
        )

    if isinstance(tag, RDivR):
        if not isinstance(succ, RDiv):
            return _viol(path, "SchemaMismatch", "right-division succedent mismatch")
        return match(0, IntSequent(ant + (succ.right,), succ.left))

    if isinstance(tag, OneL):
        if not (0 <= tag.i < n and isinstance(ant[tag.i], LUnit)):
            return _viol(path, "SchemaMismatch", "unit anchor mismatch")
        return match(0, IntSequent(ant[:tag.i] + ant[tag.i + 1:], succ))

    if isinstance(tag, PlusL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LOr):
            return _viol(path, "SchemaMismatch", "disjunction anchor mismatch")
        return (
            match(0, IntSequent(ant[:tag.i] + (f.left,) + ant[tag.i + 1:], succ))
            or match(1, IntSequent(ant[:tag.i] + (f.right,) + ant[tag.i + 1:], succ))
        )

    if isinstance(tag, PlusR):
        if not isinstance(succ, LOr) or tag.which not in (1, 2):
            return _viol(path, "SchemaMismatch", "disjunction succedent mismatch")
        comp = succ.left if tag.which == 1 else succ.right
        return match(0, IntSequent(ant, comp))

    if isinstance(tag, WithL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LAnd) or tag.which not in (1, 2):
            return _viol(path, "SchemaMismatch", "conjunction anchor mismatch")
        comp = f.left if tag.which == 1 else f.right
        return match(0, IntSequent(ant[:tag.i] + (comp,) + ant[tag.i + 1:], succ))

    if isinstance(tag, WithR):
        if not isinstance(succ, LAnd):
            return _viol(path, "SchemaMismatch", "conjunction succedent mismatch")
        return match(0, IntSequent(ant, succ.left)) or match(1, IntSequent(ant, succ.right))

    if isinstance(tag, BangL):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LBang):
            return _viol(path, "SchemaMismatch", "bang anchor mismatch")
        return match(0, IntSequent(ant[:tag.i] + (f.body,) + ant[tag.i + 1:], succ))

    if isinstance(tag, BangR):
        if not isinstance(succ, LBang):
            return _viol(path, "SchemaMismatch", "bang succedent mismatch")
        for g in ant:
            if not isinstance(g, LBang):
                return _viol(path, "SideConditionFailed", "promotion context must be bang-prefixed")
            if not sig.leq(succ.label, g.label):
                return _viol(
                    path, "SideConditionFailed",
                    f"promotion needs {g.label!r} above {succ.label!r}",
                )
        return match(0, IntSequent(ant, succ.body))

    if isinstance(tag, Weak):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LBang):
            return _viol(path, "SchemaMismatch", "weakening anchor mismatch")
        if not sig.allows_weakening(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not weakenable")
        return match(0, IntSequent(ant[:tag.i] + ant[tag.i + 1:], succ))

    if isinstance(tag, (NContr1, NContr2)):
        if opts.contraction_mode != "nonlocal":
            return _viol(path, "RuleDisabled", "non-local contraction disabled in local mode")
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LBang):
            return _viol(path, "SchemaMismatch", "contraction anchor mismatch")
        if not sig.allows_contraction(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not contractible")
        if isinstance(tag, NContr1):
            at = tag.i + 1 + tag.d
            if not (0 <= tag.d and at <= n):
                return _viol(path, "SchemaMismatch", "contraction gap out of range")
        else:
            at = tag.i - tag.d
            if not (0 <= tag.d <= tag.i):
                return _viol(path, "SchemaMismatch", "contraction gap out of range")
        return match(0, IntSequent(ant[:at] + (f,) + ant[at:], succ))

    if isinstance(tag, LocalContr):
        if opts.contraction_mode != "local":
            return _viol(path, "RuleDisabled", "local contraction requires local mode")
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LBang):
            return _viol(path, "SchemaMismatch", "contraction anchor mismatch")
        if not sig.allows_contraction(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not contractible")
        return match(0, IntSequent(ant[:tag.i + 1] + (f,) + ant[tag.i + 1:], succ))

    if isinstance(tag, (Ex1, Ex2)):
        f = ant[tag.i] if 0 <= tag.i < n else None
        if not isinstance(f, LBang):
            return _viol(path, "SchemaMismatch", "exchange anchor mismatch")
        if not sig.allows_exchange(f.label):
            return _viol(path, "SideConditionFailed", f"label {f.label!r} not exchangeable")
        without = ant[:tag.i] + ant[tag.i + 1:]
        if isinstance(tag, Ex1):
            src = tag.i + tag.d
            if not (0 <= tag.d and src <= n - 1):
                return _viol(path, "SchemaMismatch", "exchange gap out of range")
        else:
            src = tag.i - tag.d
            if not (0 <= tag.d <= tag.i):
                return _viol(path, "SchemaMismatch", "exchange gap out of range")
        return match(0, IntSequent(without[:src] + (f,) + without[src:], succ))

    if isinstance(tag, Cut):
        if not opts.allow_cut:
            return _viol(path, "RuleDisabled", "cut disabled")
        if not (0 <= tag.k <= n and 0 <= tag.plen <= n - tag.k):
            return _viol(path, "SchemaMismatch", "cut blocks out of range")
        pi = ant[tag.k:tag.k + tag.plen]
        return (
            match(0, IntSequent(pi, tag.formula))
            or match(1, IntSequent(ant[:tag.k] + (tag.formula,) + ant[tag.k + tag.plen:], succ))
        )

    return _viol(path, "SchemaMismatch", f"tag {p.kind} not valid for intuitionistic sequents")


# ---------------------------------------------------------------------------
# rotation of cyclic proofs


def _shift_tag(tag: RuleTag, r: int, n: int) -> RuleTag:
    if isinstance(tag, (CAx, COne)):
        return tag
    if isinstance(tag, CTop):
        return CTop((tag.i - r) % n)
    if isinstance(tag, CBot):
        return CBot((tag.i - r) % n)
    if isinstance(tag, CPar):
        return CPar((tag.i - r) % n)
    if isinstance(tag, CTensor):
        return CTensor((tag.i - r) % n, tag.k)
    if isinstance(tag, CWith):
        return CWith((tag.i - r) % n)
    if isinstance(tag, CPlus):
        return CPlus((tag.i - r) % n, tag.which)
    if isinstance(tag, CQuest):
        return CQuest((tag.i - r) % n)
    if isinstance(tag, CBang):
        return CBang((tag.i - r) % n)
    if isinstance(tag, CWeak):
        return CWeak((tag.i - r) % n)
    if isinstance(tag, CNContr):
        return CNContr((tag.i - r) % n, tag.m)
    if isinstance(tag, CLocalContr):
        i = (tag.i - r) % n
        if i == n - 1:
            # the adjacent pair must stay inside the representative
            raise ValueError("cannot rotate a local contraction across the seam")
        return CLocalContr(i)
    if isinstance(tag, CEx):
        return CEx((tag.i - r) % n, tag.m)
    if isinstance(tag, CCut):
        return CCut((tag.gs - r) % n, tag.gl, tag.formula)
    if isinstance(tag, CMix):
        return CMix((tag.gs - r) % n, tag.gl, tag.dlens, tag.formula, tag.label)
    raise TypeError(f"not a cyclic tag: {tag!r}")


def rotate_proof(p: Proof, r: int) -> Proof:
    """Re-represent the root conclusion rotated by r, adjusting witnesses."""
    assert isinstance(p.conclusion, CyclicSequent)
    fs = p.conclusion.formulas
    n = len(fs)
    r %= n
    if r == 0:
        return p
    return Proof(CyclicSequent(fs[r:] + fs[:r]), _shift_tag(p.rule, r, n), p.premises)


def represent(p: Proof, target: tuple[CllFormula, ...]) -> Proof:
    """Rotate the root so its conclusion tuple equals `target` exactly."""
    assert isinstance(p.conclusion, CyclicSequent)
    fs = p.conclusion.formulas
    n = len(fs)
    if fs == target:
        return p
    for r in range(1, n):
        if fs[r:] + fs[:r] == target:
            return rotate_proof(p, r)
    raise ValueError(f"{CyclicSequent(target)} is not a rotation of {p.conclusion}")


# ---------------------------------------------------------------------------
# forward builders, cyclic side


def cax(a: CllFormula) -> Proof:
    return Proof(CyclicSequent((a, negate(a))), CAx())


def cone() -> Proof:
    return Proof(CyclicSequent((One(),)), COne())


def ctop(fs: tuple[CllFormula, ...], i: int) -> Proof:
    assert isinstance(fs[i], Top)
    return Proof(CyclicSequent(fs), CTop(i))


def _cfs(p: Proof) -> tuple[CllFormula, ...]:
    assert isinstance(p.conclusion, CyclicSequent)
    return p.conclusion.formulas


def cbot(premise: Proof, i: int) -> Proof:
    fs = _cfs(premise)
    return Proof(CyclicSequent(fs[:i] + (Bot(),) + fs[i:]), CBot(i), (premise,))


def cpar(premise: Proof, i: int) -> Proof:
    fs = _cfs(premise)
    return Proof(
        CyclicSequent(fs[:i] + (Par(fs[i], fs[i + 1]),) + fs[i + 2:]),
        CPar(i),
        (premise,),
    )


def ctensor(left: Proof, right: Proof) -> Proof:
    """Left premise ends with the first component, right starts with the
    second; contexts concatenate around the new tensor."""
    lf, rf = _cfs(left), _cfs(right)
    concl = lf[:-1] + (Tensor(lf[-1], rf[0]),) + rf[1:]
    return Proof(CyclicSequent(concl), CTensor(len(lf) - 1, len(rf) - 1), (left, right))


def cwith(p1: Proof, p2: Proof, i: int) -> Proof:
    f1, f2 = _cfs(p1), _cfs(p2)
    concl = f1[:i] + (With(f1[i], f2[i]),) + f1[i + 1:]
    return Proof(CyclicSequent(concl), CWith(i), (p1, p2))


def cplus(premise: Proof, i: int, which: int, other: CllFormula) -> Proof:
    fs = _cfs(premise)
    f = Plus(fs[i], other) if which == 1 else Plus(other, fs[i])
    return Proof(CyclicSequent(fs[:i] + (f,) + fs[i + 1:]), CPlus(i, which), (premise,))


def cquest(premise: Proof, i: int, label: str) -> Proof:
    fs = _cfs(premise)
    return Proof(
        CyclicSequent(fs[:i] + (Quest(label, fs[i]),) + fs[i + 1:]),
        CQuest(i),
        (premise,),
    )


def cbang(premise: Proof, i: int, label: str) -> Proof:
    fs = _cfs(premise)
    return Proof(
        CyclicSequent(fs[:i] + (Bang(label, fs[i]),) + fs[i + 1:]),
        CBang(i),
        (premise,),
    )


def cweak(premise: Proof, i: int, qf: Quest) -> Proof:
    fs = _cfs(premise)
    return Proof(CyclicSequent(fs[:i] + (qf,) + fs[i:]), CWeak(i), (premise,))


def cncontr(premise: Proof, keep: int, drop: int) -> Proof:
    fs = _cfs(premise)
    assert fs[keep] == fs[drop] and keep != drop
    np = len(fs)
    concl = fs[:drop] + fs[drop + 1:]
    i = keep - 1 if drop < keep else keep
    m = (drop - keep - 1) % np
    return Proof(CyclicSequent(concl), CNContr(i, m), (premise,))


def clocalcontr(premise: Proof, keep: int) -> Proof:
    fs = _cfs(premise)
    assert fs[keep] == fs[keep + 1]
    return Proof(CyclicSequent(fs[:keep + 1] + fs[keep + 2:]), CLocalContr(keep), (premise,))


def cex(premise: Proof, from_p: int, to_gap: int) -> Proof:
    fs = _cfs(premise)
    q = fs[:from_p] + fs[from_p + 1:]
    concl = q[:to_gap] + (fs[from_p],) + q[to_gap:]
    m = (from_p - to_gap) % len(q)
    return Proof(CyclicSequent(concl), CEx(to_gap, m), (premise,))


def ccut(left: Proof, right: Proof, a: CllFormula) -> Proof:
    lf, rf = _cfs(left), _cfs(right)
    assert lf[-1] == negate(a), "left cut premise must end with the negation"
    assert rf[0] == a, "right cut premise must start with the cut formula"
    concl = lf[:-1] + rf[1:]
    assert concl, "cut conclusion would be empty"
    return Proof(CyclicSequent(concl), CCut(0, len(lf) - 1, a), (left, right))


def cmix(left: Proof, right: Proof, a: CllFormula, label: str, occs: tuple[int, ...]) -> Proof:
    """Mix with the named occurrences of the quest formula in the right
    premise; the first occurrence must sit at position 0."""
    lf, rf = _cfs(left), _cfs(right)
    q = Quest(label, a)
    assert occs and occs[0] == 0 and all(rf[o] == q for o in occs)
    assert lf[-1] == Bang(label, negate(a))
    dlens = []
    bounds = list(occs) + [len(rf)]
    deltas: tuple[CllFormula, ...] = ()
    for j in range(len(occs)):
        seg = rf[bounds[j] + 1:bounds[j + 1]]
        dlens.append(len(seg))
        deltas += seg
    concl = lf[:-1] + deltas
    assert concl, "mix conclusion would be empty"
    return Proof(
        CyclicSequent(concl),
        CMix(0, len(lf) - 1, tuple(dlens), a, label),
        (left, right),
    )


# ---------------------------------------------------------------------------
# forward builders, intuitionistic side


def iax(a: LambekFormula) -> Proof:
    return Proof(IntSequent((a,), a), Ax())


def ione_r() -> Proof:
    return Proof(IntSequent((), LUnit()), OneR())


def izero_l(ant: tuple[LambekFormula, ...], i: int, succ: LambekFormula) -> Proof:
    assert isinstance(ant[i], LZero)
    return Proof(IntSequent(ant, succ), ZeroL(i))


def _iant(p: Proof) -> tuple[LambekFormula, ...]:
    assert isinstance(p.conclusion, IntSequent)
    return p.conclusion.antecedent


def iprod_l(premise: Proof, i: int) -> Proof:
    ant = _iant(premise)
    succ = premise.conclusion.succedent
    concl = IntSequent(ant[:i] + (Prod(ant[i], ant[i + 1]),) + ant[i + 2:], succ)
    return Proof(concl, ProdL(i), (premise,))


def iprod_r(p1: Proof, p2: Proof) -> Proof:
    a1, a2 = _iant(p1), _iant(p2)
    concl = IntSequent(a1 + a2, Prod(p1.conclusion.succedent, p2.conclusion.succedent))
    return Proof(concl, ProdR(len(a1)), (p1, p2))


def ildiv_l(pi: Proof, ctx: Proof, i: int) -> Proof:
    """From `pi : Pi -> A` and `ctx : G1, B, G2 -> C` (B at index i) derive
    `G1, Pi, A\\B, G2 -> C`."""
    pa = _iant(pi)
    ca = _iant(ctx)
    f = LDiv(pi.conclusion.succedent, ca[i])
    concl = IntSequent(ca[:i] + pa + (f,) + ca[i + 1:], ctx.conclusion.succedent)
    return Proof(concl, LDivL(i + len(pa), len(pa)), (pi, ctx))


def ildiv_r(premise: Proof) -> Proof:
    ant = _iant(premise)
    concl = IntSequent(ant[1:], LDiv(ant[0], premise.conclusion.succedent))
    return Proof(concl, LDivR(), (premise,))


def irdiv_l(pi: Proof, ctx: Proof, i: int) -> Proof:
    """From `pi : Pi -> A` and `ctx : G1, B, G2 -> C` (B at index i) derive
    `G1, B/A, Pi, G2 -> C`."""
    pa = _iant(pi)
    ca = _iant(ctx)
    f = RDiv(ca[i], pi.conclusion.succedent)
    concl = IntSequent(ca[:i] + (f,) + pa + ca[i + 1:], ctx.conclusion.succedent)
    return Proof(concl, RDivL(i, len(pa)), (pi, ctx))


def irdiv_r(premise: Proof) -> Proof:
    ant = _iant(premise)
    concl = IntSequent(ant[:-1], RDiv(premise.conclusion.succedent, ant[-1]))
    return Proof(concl, RDivR(), (premise,))


def ione_l(premise: Proof, i: int) -> Proof:
    ant = _iant(premise)
    concl = IntSequent(ant[:i] + (LUnit(),) + ant[i:], premise.conclusion.succedent)
    return Proof(concl, OneL(i), (premise,))


def iplus_l(p1: Proof, p2: Proof, i: int) -> Proof:
    a1, a2 = _iant(p1), _iant(p2)
    f = LOr(a1[i], a2[i])
    concl = IntSequent(a1[:i] + (f,) + a1[i + 1:], p1.conclusion.succedent)
    return Proof(concl, PlusL(i), (p1, p2))


def iplus_r(premise: Proof, which: int, other: LambekFormula) -> Proof:
    s = premise.conclusion.succedent
    f = LOr(s, other) if which == 1 else LOr(other, s)
    return Proof(IntSequent(_iant(premise), f), PlusR(which), (premise,))


def iwith_l(premise: Proof, i: int, which: int, other: LambekFormula) -> Proof:
    ant = _iant(premise)
    f = LAnd(ant[i], other) if which == 1 else LAnd(other, ant[i])
    concl = IntSequent(ant[:i] + (f,) + ant[i + 1:], premise.conclusion.succedent)
    return Proof(concl, WithL(i, which), (premise,))


def iwith_r(p1: Proof, p2: Proof) -> Proof:
    concl = IntSequent(_iant(p1), LAnd(p1.conclusion.succedent, p2.conclusion.succedent))
    return Proof(concl, WithR(), (p1, p2))


def ibang_l(premise: Proof, i: int, label: str) -> Proof:
    ant = _iant(premise)
    concl = IntSequent(
        ant[:i] + (LBang(label, ant[i]),) + ant[i + 1:], premise.conclusion.succedent
    )
    return Proof(concl, BangL(i), (premise,))


def ibang_r(premise: Proof, label: str) -> Proof:
    concl = IntSequent(_iant(premise), LBang(label, premise.conclusion.succedent))
    return Proof(concl, BangR(), (premise,))


def iweak(premise: Proof, i: int, bf: LBang) -> Proof:
    ant = _iant(premise)
    concl = IntSequent(ant[:i] + (bf,) + ant[i:], premise.conclusion.succedent)
    return Proof(concl, Weak(i), (premise,))


def incontr(premise: Proof, keep: int, drop: int) -> Proof:
    """Contract the `drop` occurrence into the `keep` one (both indices in
    the premise antecedent); emits the 1-form or the 2-form as fits."""
    ant = _iant(premise)
    assert ant[keep] == ant[drop] and keep != drop
    concl = IntSequent(ant[:drop] + ant[drop + 1:], premise.conclusion.succedent)
    if drop > keep:
        return Proof(concl, NContr1(keep, drop - keep - 1), (premise,))
    return Proof(concl, NContr2(keep - 1, keep - 1 - drop), (premise,))


def ilocal_contr(premise: Proof, i: int) -> Proof:
    ant = _iant(premise)
    assert ant[i] == ant[i + 1]
    concl = IntSequent(ant[:i + 1] + ant[i + 2:], premise.conclusion.succedent)
    return Proof(concl, LocalContr(i), (premise,))


def iex(premise: Proof, from_p: int, to_p: int) -> Proof:
    """Move the bang formula at `from_p` so it lands at index `to_p`."""
    ant = _iant(premise)
    without = ant[:from_p] + ant[from_p + 1:]
    concl = IntSequent(
        without[:to_p] + (ant[from_p],) + without[to_p:], premise.conclusion.succedent
    )
    if to_p < from_p:
        return Proof(concl, Ex1(to_p, from_p - to_p), (premise,))
    assert to_p > from_p
    return Proof(concl, Ex2(to_p, to_p - from_p), (premise,))


def icut(pi: Proof, ctx: Proof, i: int) -> Proof:
    """Cut `pi : Pi -> A` into `ctx : G1, A, G2 -> C` at index i."""
    pa, ca = _iant(pi), _iant(ctx)
    a = pi.conclusion.succedent
    assert ca[i] == a
    concl = IntSequent(ca[:i] + pa + ca[i + 1:], ctx.conclusion.succedent)
    return Proof(concl, Cut(i, len(pa), a), (pi, ctx))


# ---------------------------------------------------------------------------
# LaTeX export (render only)

_LATEX_NAMES = {
    "Ax": r"\mathrm{ax}", "ProdL": r"\cdot\to", "ProdR": r"\to\cdot",
    "LDivL": r"\backslash\to", "LDivR": r"\to\backslash",
    "RDivL": r"/\to", "RDivR": r"\to/",
    "OneL": r"\mathbf{1}\to", "OneR": r"\to\mathbf{1}", "ZeroL": r"\mathbf{0}\to",
    "PlusL": r"\vee\to", "PlusR": r"\to\vee",
    "WithL": r"\wedge\to", "WithR": r"\to\wedge",
    "BangL": r"!\to", "BangR": r"\to!",
    "Weak": r"\mathrm{weak}", "NContr1": r"\mathrm{ncontr}_1",
    "NContr2": r"\mathrm{ncontr}_2", "Ex1": r"\mathrm{ex}_1", "Ex2": r"\mathrm{ex}_2",
    "LocalContr": r"\mathrm{contr}", "Cut": r"\mathrm{cut}",
    "CAx": r"\mathrm{ax}", "COne": r"\mathbf{1}", "CTop": r"\top", "CBot": r"\bot",
    "CPar": r"\parr", "CTensor": r"\otimes", "CWith": r"\&", "CPlus": r"\oplus",
    "CQuest": r"?", "CBang": r"!", "CWeak": r"\mathrm{weak}",
    "CNContr": r"\mathrm{ncontr}", "CLocalContr": r"\mathrm{contr}",
    "CEx": r"\mathrm{ex}", "CCut": r"\mathrm{cut}", "CMix": r"\mathrm{mix}",
}


def _latex_formula(f) -> str:
    text = cll_text(f) if not isinstance(f, (LVar, LUnit, LZero, Prod, LDiv, RDiv, LAnd, LOr, LBang)) else lambek_text(f)
    return (
        text.replace("\\", r"\backslash ")
        .replace("(*)", r"\otimes").replace("(%)", r"\parr")
        .replace("(&)", r"\binampersand").replace("(+)", r"\oplus")
        .replace("*", r"\cdot").replace("&", r"\wedge").replace("|", r"\vee")
        .replace("~", r"\bar ").replace("bot", r"\bot").replace("top", r"\top")
    )


def _latex_sequent(s: Sequent) -> str:
    if isinstance(s, CyclicSequent):
        return r"\vdash " + ", ".join(_latex_formula(f) for f in s.formulas)
    left = ", ".join(_latex_formula(f) for f in s.antecedent)
    return left + r" \to " + _latex_formula(s.succedent)


def latex_proof(p: Proof) -> str:
    """Nested prooftree markup, one `\\infer` per node."""
    prems = " & ".join(latex_proof(q) for q in p.premises)
    label = _LATEX_NAMES.get(p.kind, p.kind)
    return "\\infer[(%s)]{%s}{%s}" % (label, _latex_sequent(p.conclusion), prems)
