"""tbmc: a symbolic engine for grammatical template shifts.

Lexical items are paired with grammatical templates (a syntactic category
plus signed features such as {N, +SG, -PL, -M, +F, -COL, +SING}).  When a
word-formation or meaning-formation process derives one item from another,
the derived item's template is the unique solution of a gradient condition
on the symmetric difference between base and derived templates.  The
package provides the feature-set algebra, template well-formedness under
language profiles, the lexicon and its derivation bookkeeping, the gradient
rule engine, an initial-template estimator, a Riffian surface realizer, a
brute-force oracle for the algebraic laws, the ``.tbmc`` corpus format, and
a command-line front end.
"""

from . import algebra, corpus, engine, estimator, lexicon, oracle, realizer, templates

__version__ = "0.1.0"

__all__ = [
    "algebra",
    "corpus",
    "engine",
    "estimator",
    "lexicon",
    "oracle",
    "realizer",
    "templates",
    "__version__",
]
