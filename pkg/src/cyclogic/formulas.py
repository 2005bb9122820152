"""Formula trees for the two languages and the maps between them.

The intuitionistic (Lambek-style) language has product, two divisions,
additive conjunction/disjunction, the unit, an optional additive-falsity
constant, and one family of bang modalities.  The classical cyclic
language adds tight negation on atoms, both multiplicative constants,
both additive constants, par, and the dual quest family.

Variables are interned integer indices shared by both languages; the
positive atom `p` and its negation carry the same index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# ---------------------------------------------------------------------------
# variable interning

_VAR_NAMES: list[str] = []
_VAR_INDEX: dict[str, int] = {}


def var_id(name: str) -> int:
    """Intern a variable name, returning its index."""
    idx = _VAR_INDEX.get(name)
    if idx is None:
        idx = len(_VAR_NAMES)
        _VAR_NAMES.append(name)
        _VAR_INDEX[name] = idx
    return idx


def var_name(index: int) -> str:
    """Name for an index; unnamed indices get a fresh printable name."""
    while len(_VAR_NAMES) <= index:
        i = len(_VAR_NAMES)
        cand = f"p{i + 1}"
        n = 1
        while cand in _VAR_INDEX:
            cand = f"p{i + 1}_{n}"
            n += 1
        _VAR_NAMES.append(cand)
        _VAR_INDEX[cand] = i
    return _VAR_NAMES[index]


def _cached_hash(self):
    h = self.__dict__.get("_h")
    if h is None:
        h = hash(self._key())
        object.__setattr__(self, "_h", h)
    return h


# ---------------------------------------------------------------------------
# Lambek-side formulas


@dataclass(frozen=True)
class LVar:
    index: int

    def _key(self):
        return ("lv", self.index)


@dataclass(frozen=True)
class LUnit:
    def _key(self):
        return ("l1",)


@dataclass(frozen=True)
class LZero:
    """Additive falsity; legal only when the zero-constant variant is on."""

    def _key(self):
        return ("l0",)


@dataclass(frozen=True)
class Prod:
    left: "LambekFormula"
    right: "LambekFormula"

    def _key(self):
        return ("l*", self.left, self.right)


@dataclass(frozen=True)
class LDiv:
    """`left \\ right` -- left divides right from the left."""

    left: "LambekFormula"
    right: "LambekFormula"

    def _key(self):
        return ("l\\", self.left, self.right)


@dataclass(frozen=True)
class RDiv:
    """`left / right` -- right divides left from the right."""

    left: "LambekFormula"
    right: "LambekFormula"

    def _key(self):
        return ("l/", self.left, self.right)


@dataclass(frozen=True)
class LAnd:
    left: "LambekFormula"
    right: "LambekFormula"

    def _key(self):
        return ("l&", self.left, self.right)


@dataclass(frozen=True)
class LOr:
    left: "LambekFormula"
    right: "LambekFormula"

    def _key(self):
        return ("l|", self.left, self.right)


@dataclass(frozen=True)
class LBang:
    label: str
    body: "LambekFormula"

    def _key(self):
        return ("l!", self.label, self.body)


LambekFormula = Union[LVar, LUnit, LZero, Prod, LDiv, RDiv, LAnd, LOr, LBang]


# ---------------------------------------------------------------------------
# cyclic-side formulas


@dataclass(frozen=True)
class PosAtom:
    index: int

    def _key(self):
        return ("cv", self.index)


@dataclass(frozen=True)
class NegAtom:
    index: int

    def _key(self):
        return ("c~", self.index)


@dataclass(frozen=True)
class One:
    def _key(self):
        return ("c1",)


@dataclass(frozen=True)
class Bot:
    def _key(self):
        return ("cB",)


@dataclass(frozen=True)
class Top:
    def _key(self):
        return ("cT",)


@dataclass(frozen=True)
class Zero:
    def _key(self):
        return ("c0",)


@dataclass(frozen=True)
class Tensor:
    left: "CllFormula"
    right: "CllFormula"

    def _key(self):
        return ("c*", self.left, self.right)


@dataclass(frozen=True)
class Par:
    left: "CllFormula"
    right: "CllFormula"

    def _key(self):
        return ("c%", self.left, self.right)


@dataclass(frozen=True)
class With:
    left: "CllFormula"
    right: "CllFormula"

    def _key(self):
        return ("c&", self.left, self.right)


@dataclass(frozen=True)
class Plus:
    left: "CllFormula"
    right: "CllFormula"

    def _key(self):
        return ("c+", self.left, self.right)


@dataclass(frozen=True)
class Bang:
    label: str
    body: "CllFormula"

    def _key(self):
        return ("c!", self.label, self.body)


@dataclass(frozen=True)
class Quest:
    label: str
    body: "CllFormula"

    def _key(self):
        return ("c?", self.label, self.body)


CllFormula = Union[
    PosAtom, NegAtom, One, Bot, Top, Zero, Tensor, Par, With, Plus, Bang, Quest
]

for _cls in (
    LVar, LUnit, LZero, Prod, LDiv, RDiv, LAnd, LOr, LBang,
    PosAtom, NegAtom, One, Bot, Top, Zero, Tensor, Par, With, Plus, Bang, Quest,
):
    _cls.__hash__ = _cached_hash  # type: ignore[assignment]
del _cls

ONE = One()
BOT = Bot()
TOP = Top()
ZERO = Zero()
LONE = LUnit()
LZERO = LZero()


class UndefinedOnAdditiveConstant(ValueError):
    """The occurrence counter is undefined on formulas containing the
    additive constants."""


# ---------------------------------------------------------------------------
# operations


def negate(a: CllFormula) -> CllFormula:
    """External negation.  Operands of tensor/par swap; with/plus do not."""
    if isinstance(a, PosAtom):
        return NegAtom(a.index)
    if isinstance(a, NegAtom):
        return PosAtom(a.index)
    if isinstance(a, One):
        return BOT
    if isinstance(a, Bot):
        return ONE
    if isinstance(a, Zero):
        return TOP
    if isinstance(a, Top):
        return ZERO
    if isinstance(a, Tensor):
        return Par(negate(a.right), negate(a.left))
    if isinstance(a, Par):
        return Tensor(negate(a.right), negate(a.left))
    if isinstance(a, Plus):
        return With(negate(a.left), negate(a.right))
    if isinstance(a, With):
        return Plus(negate(a.left), negate(a.right))
    if isinstance(a, Bang):
        return Quest(a.label, negate(a.body))
    if isinstance(a, Quest):
        return Bang(a.label, negate(a.body))
    raise TypeError(f"not a cyclic-side formula: {a!r}")


def hat(a: LambekFormula) -> CllFormula:
    """Positive translation into the cyclic language."""
    if isinstance(a, LVar):
        return PosAtom(a.index)
    if isinstance(a, LUnit):
        return ONE
    if isinstance(a, LZero):
        return ZERO
    if isinstance(a, Prod):
        return Tensor(hat(a.left), hat(a.right))
    if isinstance(a, LDiv):
        return Par(hat_neg(a.left), hat(a.right))
    if isinstance(a, RDiv):
        return Par(hat(a.left), hat_neg(a.right))
    if isinstance(a, LAnd):
        return With(hat(a.left), hat(a.right))
    if isinstance(a, LOr):
        return Plus(hat(a.left), hat(a.right))
    if isinstance(a, LBang):
        return Bang(a.label, hat(a.body))
    raise TypeError(f"not a Lambek-side formula: {a!r}")


def hat_neg(a: LambekFormula) -> CllFormula:
    """Negative translation; equals negate(hat(a)) formula-for-formula."""
    if isinstance(a, LVar):
        return NegAtom(a.index)
    if isinstance(a, LUnit):
        return BOT
    if isinstance(a, LZero):
        return TOP
    if isinstance(a, Prod):
        return Par(hat_neg(a.right), hat_neg(a.left))
    if isinstance(a, LDiv):
        return Tensor(hat_neg(a.right), hat(a.left))
    if isinstance(a, RDiv):
        return Tensor(hat(a.right), hat_neg(a.left))
    if isinstance(a, LAnd):
        return Plus(hat_neg(a.left), hat_neg(a.right))
    if isinstance(a, LOr):
        return With(hat_neg(a.left), hat_neg(a.right))
    if isinstance(a, LBang):
        return Quest(a.label, hat_neg(a.body))
    raise TypeError(f"not a Lambek-side formula: {a!r}")


def natural(a: CllFormula) -> int:
    """The occurrence counter: 0 on positive translations, 1 on negative
    ones.  Undefined (raises) on formulas containing top or zero.

    On plus/with it returns the counter of the left argument even where
    the two sides disagree; only translation images are constrained.
    """
    if isinstance(a, (Top, Zero)):
        raise UndefinedOnAdditiveConstant(repr(a))
    if isinstance(a, PosAtom):
        return 0
    if isinstance(a, NegAtom):
        return 1
    if isinstance(a, One):
        return 0
    if isinstance(a, Bot):
        return 1
    if isinstance(a, Par):
        return natural(a.left) + natural(a.right) - 1
    if isinstance(a, Tensor):
        return natural(a.left) + natural(a.right)
    if isinstance(a, (Plus, With)):
        natural(a.right)  # still reject top/zero in the unused branch
        return natural(a.left)
    if isinstance(a, (Bang, Quest)):
        return natural(a.body)
    raise TypeError(f"not a cyclic-side formula: {a!r}")


@dataclass(frozen=True)
class PosImage:
    preimage: LambekFormula


@dataclass(frozen=True)
class NegImage:
    preimage: LambekFormula


@dataclass(frozen=True)
class Neither:
    pass


NEITHER = Neither()
ImageClass = Union[PosImage, NegImage, Neither]


def classify_image(a: CllFormula) -> ImageClass:
    """Decide whether `a` is a positive or a negative translation of some
    Lambek formula and recover the preimage.

    Works in the restricted language of the embedding theorem: top and
    zero are classified as Neither.
    """
    if isinstance(a, PosAtom):
        return PosImage(LVar(a.index))
    if isinstance(a, NegAtom):
        return NegImage(LVar(a.index))
    if isinstance(a, One):
        return PosImage(LONE)
    if isinstance(a, Bot):
        return NegImage(LONE)
    if isinstance(a, (Top, Zero)):
        return NEITHER
    if isinstance(a, Tensor):
        cl, cr = classify_image(a.left), classify_image(a.right)
        if isinstance(cl, PosImage) and isinstance(cr, PosImage):
            return PosImage(Prod(cl.preimage, cr.preimage))
        if isinstance(cl, NegImage) and isinstance(cr, PosImage):
            return NegImage(LDiv(cr.preimage, cl.preimage))
        if isinstance(cl, PosImage) and isinstance(cr, NegImage):
            return NegImage(RDiv(cr.preimage, cl.preimage))
        return NEITHER
    if isinstance(a, Par):
        cl, cr = classify_image(a.left), classify_image(a.right)
        if isinstance(cl, NegImage) and isinstance(cr, PosImage):
            return PosImage(LDiv(cl.preimage, cr.preimage))
        if isinstance(cl, PosImage) and isinstance(cr, NegImage):
            return PosImage(RDiv(cl.preimage, cr.preimage))
        if isinstance(cl, NegImage) and isinstance(cr, NegImage):
            return NegImage(Prod(cr.preimage, cl.preimage))
        return NEITHER
    if isinstance(a, With):
        cl, cr = classify_image(a.left), classify_image(a.right)
        if isinstance(cl, PosImage) and isinstance(cr, PosImage):
            return PosImage(LAnd(cl.preimage, cr.preimage))
        if isinstance(cl, NegImage) and isinstance(cr, NegImage):
            return NegImage(LOr(cl.preimage, cr.preimage))
        return NEITHER
    if isinstance(a, Plus):
        cl, cr = classify_image(a.left), classify_image(a.right)
        if isinstance(cl, PosImage) and isinstance(cr, PosImage):
            return PosImage(LOr(cl.preimage, cr.preimage))
        if isinstance(cl, NegImage) and isinstance(cr, NegImage):
            return NegImage(LAnd(cl.preimage, cr.preimage))
        return NEITHER
    if isinstance(a, Bang):
        cb = classify_image(a.body)
        if isinstance(cb, PosImage):
            return PosImage(LBang(a.label, cb.preimage))
        return NEITHER
    if isinstance(a, Quest):
        cb = classify_image(a.body)
        if isinstance(cb, NegImage):
            return NegImage(LBang(a.label, cb.preimage))
        return NEITHER
    raise TypeError(f"not a cyclic-side formula: {a!r}")


def connective_count(a) -> int:
    """Number of unary/binary connective nodes; atoms and constants are 0."""
    if isinstance(a, (LVar, LUnit, LZero, PosAtom, NegAtom, One, Bot, Top, Zero)):
        return 0
    if isinstance(a, (LBang, Bang, Quest)):
        return 1 + connective_count(a.body)
    if isinstance(a, (Prod, LDiv, RDiv, LAnd, LOr, Tensor, Par, With, Plus)):
        return 1 + connective_count(a.left) + connective_count(a.right)
    raise TypeError(f"not a formula: {a!r}")


def tree_size(a) -> int:
    """Total node count, atoms and constants included."""
    if isinstance(a, (LVar, LUnit, LZero, PosAtom, NegAtom, One, Bot, Top, Zero)):
        return 1
    if isinstance(a, (LBang, Bang, Quest)):
        return 1 + tree_size(a.body)
    return 1 + tree_size(a.left) + tree_size(a.right)


def mentions_zero(a) -> bool:
    if isinstance(a, (LZero, Zero)):
        return True
    if isinstance(a, (LBang, Bang, Quest)):
        return mentions_zero(a.body)
    if isinstance(a, (Prod, LDiv, RDiv, LAnd, LOr, Tensor, Par, With, Plus)):
        return mentions_zero(a.left) or mentions_zero(a.right)
    return False


# ---------------------------------------------------------------------------
# rendering (the inverse of the parsers in cyclogic.parsing)

_LAMBEK_LEVEL = {LOr: 1, LAnd: 1, LDiv: 2, RDiv: 2, Prod: 3}
_LAMBEK_OP = {LOr: "|", LAnd: "&", LDiv: "\\", RDiv: "/", Prod: "*"}


def lambek_text(a: LambekFormula) -> str:
    return _ltext(a, 0)


def _ltext(a: LambekFormula, ctx: int) -> str:
    if isinstance(a, LVar):
        return var_name(a.index)
    if isinstance(a, LUnit):
        return "1"
    if isinstance(a, LZero):
        return "0"
    if isinstance(a, LBang):
        return f"![{a.label}]{_latom(a.body)}"
    lvl = _LAMBEK_LEVEL[type(a)]
    op = _LAMBEK_OP[type(a)]
    if isinstance(a, LDiv):
        # `\` is right-associative: everything after it groups rightward
        ltext = _ltext(a.left, lvl + 1)
        rtext = _ltext(a.right, lvl) if isinstance(a.right, LDiv) else _ltext(a.right, lvl + 1)
    else:
        ltext = _ltext(a.left, lvl)
        # `/` is left-associative but a bare `\` on its left would regroup
        if isinstance(a, RDiv) and isinstance(a.left, LDiv):
            ltext = f"({_ltext(a.left, 0)})"
        rtext = _ltext(a.right, lvl + 1)
    out = f"{ltext} {op} {rtext}"
    if ctx > lvl:
        return f"({out})"
    return out


def _latom(a: LambekFormula) -> str:
    """Operand of a prefix bang: atom-like or parenthesised."""
    if isinstance(a, (LVar, LUnit, LZero)):
        return _ltext(a, 0)
    if isinstance(a, LBang):
        return f"![{a.label}]{_latom(a.body)}"
    return f"({_ltext(a, 0)})"


_CLL_LEVEL = {Plus: 1, With: 1, Par: 2, Tensor: 3}
_CLL_OP = {Plus: "(+)", With: "(&)", Par: "(%)", Tensor: "(*)"}


def cll_text(a: CllFormula) -> str:
    return _ctext(a, 0)


def _ctext(a: CllFormula, ctx: int) -> str:
    if isinstance(a, PosAtom):
        return var_name(a.index)
    if isinstance(a, NegAtom):
        return f"~{var_name(a.index)}"
    if isinstance(a, One):
        return "1"
    if isinstance(a, Bot):
        return "bot"
    if isinstance(a, Top):
        return "top"
    if isinstance(a, Zero):
        return "0"
    if isinstance(a, Bang):
        return f"![{a.label}]{_catom(a.body)}"
    if isinstance(a, Quest):
        return f"?[{a.label}]{_catom(a.body)}"
    lvl = _CLL_LEVEL[type(a)]
    op = _CLL_OP[type(a)]
    ltext = _ctext(a.left, lvl)
    rtext = _ctext(a.right, lvl + 1)
    out = f"{ltext} {op} {rtext}"
    if ctx > lvl:
        return f"({out})"
    return out


def _catom(a: CllFormula) -> str:
    if isinstance(a, (PosAtom, NegAtom, One, Bot, Top, Zero)):
        return _ctext(a, 0)
    if isinstance(a, Bang):
        return f"![{a.label}]{_catom(a.body)}"
    if isinstance(a, Quest):
        return f"?[{a.label}]{_catom(a.body)}"
    return f"({_ctext(a, 0)})"
