"""Monodromies of the four-holed sphere: rewriting to lantern-relation
normal form, contact-geometric classification by arithmetic rules, and
an exact combinatorial engine for the twist action on boundary-based
arcs (equality testing and bounded right-veering checks).

The package has three layers:

* :mod:`lanternbook.words` -- twist words over the generators a..h;
* :mod:`lanternbook.lantern` / :mod:`lanternbook.classify` -- the
  reduced normal form, positive factorizations, and the
  fillable/overtwisted/right-veering rule set;
* :mod:`lanternbook.geometry` / :mod:`lanternbook.engine` -- arcs on
  the cut-open surface, the certified twist action, the exact equality
  oracle, and the bounded left-witness search.

Everything is pure Python on the standard library; the first call into
the arc engine builds and certifies its twist tables once per process.
"""

from .classify import (Classification, OTShape, classify, classify_rules,
                       match_ot_shape)
from .engine import (Arc, RVReport, apply_twist, apply_word, arc_from_json,
                     arc_to_json, certify_model, equal_in_mcg,
                     is_right_veering_upto, make_arc, side_at_start,
                     witness_library)
from .errors import (InvariantViolation, MalformedArcError,
                     PreconditionError, WordSyntaxError)
from .lantern import (PositiveFactorization, ReducedForm, canonical_form,
                      cyclic_rotations, expand, mirror_ef,
                      positive_factorization, reduce, rf_from_json,
                      rf_to_json, rotation_conjugator, substitute_gh)
from .words import (concat, exponent_class, format_word, free_reduce,
                    invert, mirror_word, parse, power, word_length)

__all__ = [
    "Arc", "Classification", "InvariantViolation", "MalformedArcError",
    "OTShape", "PositiveFactorization", "PreconditionError", "RVReport",
    "ReducedForm", "WordSyntaxError", "apply_twist", "apply_word",
    "arc_from_json", "arc_to_json", "canonical_form", "certify_model",
    "classify", "classify_rules", "concat", "cyclic_rotations",
    "equal_in_mcg", "expand", "exponent_class", "format_word",
    "free_reduce", "invert", "is_right_veering_upto", "make_arc",
    "match_ot_shape", "mirror_ef", "mirror_word", "parse", "power",
    "positive_factorization", "reduce",
    "rf_from_json", "rf_to_json", "rotation_conjugator", "side_at_start",
    "substitute_gh", "witness_library", "word_length",
]

__version__ = "1.0.0"
