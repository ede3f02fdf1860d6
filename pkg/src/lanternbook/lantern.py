"""Rewriting monodromy words to reduced form via the lantern relations.

The two interior curve pairs satisfy the lantern relations

    g e f = a b c d        h f e = a b c d

(all twists right-handed, leftmost acting first), which give the
substitutions  g = a b c d f^-1 e^-1  and  h = a b c d e^-1 f^-1.
Eliminating g and h and using centrality of the boundary twists, every
monodromy word is equal in the mapping class group to

    a^{r1} b^{r2} c^{r3} d^{r4} e^{m_1} f^{n_1} ... e^{m_s} f^{n_s}

where only m_1 or n_s may vanish.  :class:`ReducedForm` stores the
exponent data (r, blocks); :func:`reduce` computes it, :func:`expand`
maps back to a word.  The block count s is the one this procedure
reaches, minimized over cyclic rotations by :func:`canonical_form`; it
is *not* certified to be the global minimum over the relation set.

Conjugate monodromies carry the same contact-geometric labels, so the
classifier consumes every cyclic rotation of the interior letter
sequence (:func:`cyclic_rotations`; the boundary part is central and
stays put) and the e/f relabeling symmetry (:func:`mirror_ef`).

:func:`positive_factorization` implements the constructive fillability
argument: negative interior powers are eliminated through the lantern
substitutions (each e^-1 costs one a^-1 b^-1 c^-1 d^-1 h f, each f^-1
one a^-1 b^-1 c^-1 d^-1 g e, with cheaper junction variants when s = 1),
consuming boundary twists.  Every produced word is certified against the
arc engine's exact equality oracle before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
import json

from .engine import equal_in_mcg
from .errors import InvariantViolation, PreconditionError
from .words import (
    BOUNDARY, Word, concat, format_word, free_reduce, invert, parse, power,
)

_G_POS = parse("a b c d f^-1 e^-1")
_G_NEG = parse("e f a^-1 b^-1 c^-1 d^-1")
_H_POS = parse("a b c d e^-1 f^-1")
_H_NEG = parse("f e a^-1 b^-1 c^-1 d^-1")


@dataclass(frozen=True)
class ReducedForm:
    """Exponent data of a word in reduced form: ``r`` holds the four
    boundary-twist exponents (of a, b, c, d), ``blocks`` the alternating
    interior part as pairs (m_i, n_i) meaning e^{m_i} f^{n_i}.  Interior
    exponents are nonzero except possibly the leading m_1 and trailing
    n_s; ``blocks = ()`` encodes a pure boundary-twist word."""

    r: tuple
    blocks: tuple

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        blocks = tuple((int(m), int(n)) for m, n in self.blocks)
        if len(r) != 4:
            raise PreconditionError(
                "r must have four components, got %r" % (self.r,))
        for i, (m, n) in enumerate(blocks):
            if m == 0 and i > 0:
                raise PreconditionError(
                    "zero e-exponent inside blocks %r (index %d)"
                    % (blocks, i))
            if n == 0 and i < len(blocks) - 1:
                raise PreconditionError(
                    "zero f-exponent inside blocks %r (index %d)"
                    % (blocks, i))
        if blocks == ((0, 0),):
            blocks = ()
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "blocks", blocks)

    @property
    def s(self) -> int:
        """Number of blocks reached by the rewriting procedure (not
        certified minimal)."""
        return len(self.blocks)

    def __str__(self):
        word = expand(self)
        return format_word(word) if word else "(identity)"


def rf_to_json(rf: ReducedForm) -> str:
    return json.dumps({"r": list(rf.r),
                       "blocks": [list(b) for b in rf.blocks]})


def rf_from_json(doc) -> ReducedForm:
    """Rebuild a :class:`ReducedForm` from serialized text or an already
    decoded document."""
    try:
        data = json.loads(doc) if isinstance(doc, (str, bytes)) else doc
        return ReducedForm(tuple(data["r"]),
                           tuple((m, n) for m, n in data["blocks"]))
    except PreconditionError:
        raise
    except Exception as exc:
        raise PreconditionError("not a reduced-form document: %s" % exc)


def substitute_gh(w) -> Word:
    """Eliminate g and h through the lantern substitutions
    g = a b c d f^-1 e^-1, h = a b c d e^-1 f^-1 (inverses presented
    with the boundary twists trailing, using centrality); the result is
    freely reduced and has the same exponent class."""
    terms = parse(w) if isinstance(w, str) else tuple(w)
    out = []
    for letter, exp in terms:
        if letter == "g":
            out.extend(power(_G_POS if exp > 0 else _G_NEG, abs(exp)))
        elif letter == "h":
            out.extend(power(_H_POS if exp > 0 else _H_NEG, abs(exp)))
        else:
            out.append((letter, exp))
    return free_reduce(out)


def _pack(interior) -> tuple:
    """Pack an alternating e/f term sequence (nonzero exponents, no two
    adjacent equal letters) into (m_i, n_i) block pairs."""
    blocks = []
    cur_m = None
    for letter, exp in interior:
        if letter == "e":
            if cur_m is not None:
                blocks.append((cur_m, 0))
            cur_m = exp
        else:
            blocks.append((0 if cur_m is None else cur_m, exp))
            cur_m = None
    if cur_m is not None:
        blocks.append((cur_m, 0))
    return tuple(blocks)


def reduce(w) -> ReducedForm:
    """Rewrite ``w`` to reduced form: substitute away g and h, pull the
    central boundary twists to the front, merge and cancel adjacent e/f
    powers to a fixpoint, and pack the alternating remainder into
    blocks.  The expansion of the result is equal to ``w`` in the
    mapping class group (certifiable via the arc engine)."""
    terms = substitute_gh(w)
    r = {letter: 0 for letter in BOUNDARY}
    interior = []
    for letter, exp in terms:
        if letter in BOUNDARY:
            r[letter] += exp
        else:
            interior.append((letter, exp))
    return ReducedForm(tuple(r[letter] for letter in BOUNDARY),
                       _pack(interior))


def expand(rf: ReducedForm) -> Word:
    """The word a^{r1} b^{r2} c^{r3} d^{r4} e^{m_1} f^{n_1} ... named by
    the reduced form (zero exponents omitted)."""
    terms = [(letter, exp) for letter, exp in zip(BOUNDARY, rf.r) if exp]
    for m, n in rf.blocks:
        if m:
            terms.append(("e", m))
        if n:
            terms.append(("f", n))
    return tuple(terms)


def _interior_letters(rf: ReducedForm):
    """The interior part as a sequence of single signed letters."""
    letters = []
    for m, n in rf.blocks:
        letters.extend([("e", 1 if m > 0 else -1)] * abs(m))
        letters.extend([("f", 1 if n > 0 else -1)] * abs(n))
    return letters


def _peel(letters):
    """Split a freely reduced letter sequence as  p . core . p^-1  with
    the core cyclically reduced (its first letter is not the inverse of
    its last), peeling matching end pairs.  The core of a nonempty
    sequence is nonempty."""
    lo, hi = 0, len(letters)
    while hi - lo >= 2:
        (x, sx), (y, sy) = letters[lo], letters[hi - 1]
        if x == y and sx == -sy:
            lo, hi = lo + 1, hi - 1
        else:
            break
    return letters[:lo], letters[lo:hi]


def cyclic_rotations(rf: ReducedForm):
    """All reduced forms obtained by cyclically rotating the interior
    e/f letter sequence (the central boundary part stays put), each
    re-merged and re-packed.

    The sequence is first reduced cyclically -- a maximal conjugating
    prefix p with letters = p.core.p^-1 is peeled off -- and the
    rotations are those of the core.  Rotations of a cyclically reduced
    sequence stay freely and cyclically reduced, so every member of the
    returned list has exactly this list as its own rotations; the list
    is a conjugacy-class invariant, which is what makes merged
    classification consistent across conjugates.  Index k rotates by k
    core letters.  A pure boundary word has itself as the only
    rotation."""
    letters = _interior_letters(rf)
    if not letters:
        return [rf]
    _, core = _peel(letters)
    out = []
    for k in range(len(core)):
        rotated = free_reduce(core[k:] + core[:k])
        out.append(ReducedForm(rf.r, _pack(rotated)))
    return out


def rotation_conjugator(rf: ReducedForm, k: int) -> Word:
    """The word u with  u^-1 . expand(rf) . u  equal in the mapping
    class group to the expansion of rotation k: the peeled conjugating
    prefix followed by the first k core letters."""
    letters = _interior_letters(rf)
    if not letters:
        return ()
    prefix, core = _peel(letters)
    return free_reduce(prefix + core[:k % len(core)])


def canonical_form(rf: ReducedForm) -> ReducedForm:
    """The lexicographically minimal (r, flattened blocks) member of the
    rotation class.  Because the rotation list is shared by the whole
    conjugacy class of the interior word, this is a deterministic
    census key for it."""
    best = min(cyclic_rotations(rf),
               key=lambda rho: tuple(x for b in rho.blocks for x in b))
    return best


def mirror_ef(rf: ReducedForm) -> ReducedForm:
    """The reduced form of the image under the half-turn symmetry that
    exchanges e with f (and relabels the boundary a <-> c, fixing b and
    d, hence r -> (r3, r2, r1, r4))."""
    r1, r2, r3, r4 = rf.r
    swapped = [("f" if letter == "e" else "e", exp)
               for letter, exp in _interior_letters(rf)]
    return ReducedForm((r3, r2, r1, r4), _pack(free_reduce(swapped)))


# ----------------------------------------------------------------------
# positive factorizations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PositiveFactorization:
    """A positive word equal in the mapping class group to
    conjugator^-1 · expand(rotation of the input) · conjugator, together
    with the rule and rotation that produced it.  Construction certifies
    the equality through the arc engine, so existence implies validity."""

    word: Word
    rule: str
    rotation: int
    conjugator: Word

    def __str__(self):
        return format_word(self.word) if self.word else "(empty product)"


def _boundary_word(r) -> Word:
    if min(r) < 0:
        raise InvariantViolation("factorization spent too many boundary "
                                 "twists", r=r)
    return tuple((letter, exp) for letter, exp in zip(BOUNDARY, r) if exp)


_HF = parse("h f")    # replaces e^-1, costs one boundary multiindex
_GE = parse("g e")    # replaces f^-1


def _h_rule(rf: ReducedForm):
    """The first fillability rule the exponents of ``rf`` satisfy, or
    None.  Rules in order: H1-H3 for one block, H4 for more."""
    rmin = min(rf.r)
    blocks = rf.blocks if rf.blocks else ((0, 0),)
    if len(blocks) == 1:
        m1, n1 = blocks[0]
        if max(m1, n1) >= 0 and rmin >= max(-m1, -n1, 0):
            return "H1"
        if m1 < 0 and n1 < 0 and max(m1, n1) == -1 and rmin >= -m1 - n1 - 1:
            return "H2"
        if m1 < 0 and n1 < 0 and max(m1, n1) < -1 and rmin >= -m1 - n1 - 2:
            return "H3"
        return None
    cost = sum(max(-m, 0) for m, _ in blocks) \
        + sum(max(-n, 0) for _, n in blocks)
    if rmin >= cost:
        return "H4"
    return None


def _factor_words(rf: ReducedForm, rule: str):
    """The positive word and conjugator for a reduced form satisfying
    ``rule``, by the constructive substitutions (see module docstring)."""
    blocks = rf.blocks if rf.blocks else ((0, 0),)
    if rule in ("H1", "H4"):
        spent = sum(max(-m, 0) for m, _ in blocks) \
            + sum(max(-n, 0) for _, n in blocks)
        out = list(_boundary_word(tuple(x - spent for x in rf.r)))
        for m, n in blocks:
            out.extend(power(_HF, -m) if m < 0 else ((("e", m),) if m else ()))
            out.extend(power(_GE, -n) if n < 0 else ((("f", n),) if n else ()))
        return free_reduce(out), ()
    m1, n1 = blocks[0]
    if rule == "H2":
        spent = -m1 - n1 - 1
        boundary = _boundary_word(tuple(x - spent for x in rf.r))
        if m1 == -1:
            # e^-1 f^-1 -> (abcd)^-1 h, then each remaining f^-1
            middle = concat((("h", 1),), power(_GE, -n1 - 1))
        else:
            # n1 == -1: each e^-1 but the last, then the junction pair
            middle = concat(power(_HF, -m1 - 1), (("h", 1),))
        return free_reduce(concat(boundary, middle)), ()
    # H3: first e^-1 -> (abcd)^-1 f g, junction pair -> (abcd)^-1 h,
    # remaining powers in place, and the leading f cancels the final
    # f^-1 after conjugating by f.
    spent = -m1 - n1 - 2
    boundary = _boundary_word(tuple(x - spent for x in rf.r))
    middle = concat((("g", 1),), power(_HF, -m1 - 2), (("h", 1),),
                    power(_GE, -n1 - 2))
    return free_reduce(concat(boundary, middle)), parse("f")


def positive_factorization(rf: ReducedForm):
    """A :class:`PositiveFactorization` for the first cyclic rotation of
    ``rf`` satisfying a fillability rule, or None when no rotation does.
    The output word has strictly positive exponents and is certified
    equal (after undoing the recorded conjugator) to the expansion of
    that rotation through the arc engine; certification failure is an
    invariant-violation fault, not a None."""
    for k, rho in enumerate(cyclic_rotations(rf)):
        rule = _h_rule(rho)
        if rule is None:
            continue
        word, conjugator = _factor_words(rho, rule)
        if any(exp <= 0 for _, exp in word):
            raise InvariantViolation("factorization is not positive",
                                     word=format_word(word), rule=rule)
        reference = expand(rho)
        candidate = concat(conjugator, word, invert(conjugator))
        if candidate != reference and not equal_in_mcg(candidate, reference):
            raise InvariantViolation("factorization failed certification",
                                     word=format_word(word), rule=rule,
                                     rotation=k)
        return PositiveFactorization(word, rule, k, conjugator)
    return None
