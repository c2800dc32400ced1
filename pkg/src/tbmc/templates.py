"""Language profiles, grammatical templates, and initial-template registry.

A profile fixes, for one language and one syntactic category, the ordered
slot structure every template body must instantiate:

* ``Opposition(a, b)`` -- a linked pair like SG|PL: a well-formed body
  carries both names with opposite polarities ({+SG, -PL} or {-SG, +PL});
* ``Free(a)`` -- an independently signed feature like DEF: the body carries
  exactly one of {+DEF, -DEF}.

Well-formedness gives every same-category template the same cardinality and
the same unsigned feature inventory, which is precisely what lets the shift
engine move between any two of them by a symmetric difference.

The module also owns the canonical text form (``{N, +SG, -PL, ...}``), the
candidate enumeration used by the initial-template heuristic (all sign
assignments, well-formed or not), and the registry mapping a cognitive set
to the template its members receive on entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from . import algebra
from .algebra import NEGATIVE, POSITIVE, FeatureSet


class TemplateError(ValueError):
    """Raised when a template is used where a well-formed one is required."""


@dataclass(frozen=True)
class Opposition:
    """A linked feature pair; members must carry opposite polarities."""

    a: str
    b: str

    @property
    def names(self) -> Tuple[str, ...]:
        return (self.a, self.b)


@dataclass(frozen=True)
class Free:
    """An independently signed feature; exactly one polarity present."""

    name: str

    @property
    def names(self) -> Tuple[str, ...]:
        return (self.name,)


Slot = Union[Opposition, Free]


@dataclass(frozen=True)
class LanguageProfile:
    language: str
    category: str
    slots: Tuple[Slot, ...]

    def __post_init__(self) -> None:
        names = self.feature_names()
        if len(set(names)) != len(names):
            raise TemplateError(f"profile {self.language}: duplicate slot features")
        if self.category in names:
            raise TemplateError(f"profile {self.language}: category clashes with a feature")

    def feature_names(self) -> Tuple[str, ...]:
        """Unsigned inventory in declaration order (category excluded)."""
        return tuple(n for slot in self.slots for n in slot.names)

    @property
    def cardinality(self) -> int:
        """Member count of a well-formed body: category plus one sign per feature."""
        return 1 + len(self.feature_names())


@dataclass(frozen=True)
class Template:
    """A profile reference plus a validated-or-not body."""

    profile: LanguageProfile
    body: FeatureSet

    def violations(self) -> List[str]:
        return validate(self.body, self.profile)

    def is_well_formed(self) -> bool:
        return not self.violations()

    def render(self) -> str:
        return canonical_render(self.body, self.profile)

    def signed(self, name: str) -> Optional[str]:
        """The signed atom this body carries for a feature name, if any."""
        for pol in (POSITIVE, NEGATIVE):
            if pol + name in self.body:
                return pol + name
        return None


def validate(body: FeatureSet, profile: LanguageProfile) -> List[str]:
    """All well-formedness violations of ``body`` under ``profile``.

    Returns an empty list when the body is a valid template: exactly the
    profile category plus, per slot, a legal sign assignment.  Never raises.
    """
    problems: List[str] = []
    categories = sorted(a for a in body if algebra.is_category(a))
    if categories != [profile.category]:
        problems.append(
            f"category: expected exactly {{{profile.category}}}, found "
            f"{{{', '.join(categories) or ''}}}"
        )
    known = set(profile.feature_names())
    for atom in sorted(body):
        if algebra.is_signed(atom) and algebra.base_of(atom) not in known:
            problems.append(f"feature {algebra.base_of(atom)}: not in the {profile.language} inventory")
    for slot in profile.slots:
        if isinstance(slot, Opposition):
            pa, pb = _slot_signs(body, slot.a), _slot_signs(body, slot.b)
            ok = (pa, pb) in (([POSITIVE], [NEGATIVE]), ([NEGATIVE], [POSITIVE]))
            if not ok:
                problems.append(f"slot {slot.a}|{slot.b}: needs opposite polarities, one each")
        else:
            if len(_slot_signs(body, slot.name)) != 1:
                problems.append(f"slot {slot.name}: needs exactly one polarity")
    return problems


def _slot_signs(body: FeatureSet, name: str) -> List[str]:
    return [p for p in (POSITIVE, NEGATIVE) if p + name in body]


def canonical_render(body: FeatureSet, profile: LanguageProfile) -> str:
    """Render a body in profile declaration order, e.g. ``{N, +SG, -PL, ...}``.

    Requires a well-formed body; this is the display form used everywhere a
    template is printed or tallied, so it must be total and deterministic.
    """
    problems = validate(body, profile)
    if problems:
        raise TemplateError("cannot render ill-formed template: " + "; ".join(problems))
    parts = [profile.category]
    for name in profile.feature_names():
        parts.append((POSITIVE if POSITIVE + name in body else NEGATIVE) + name)
    return "{" + ", ".join(parts) + "}"


def render_assignment(body: FeatureSet, profile: LanguageProfile) -> str:
    """Render any full sign assignment, well-formed or not.

    Used by the candidate enumeration, whose space is mostly ill-formed.
    """
    parts = [profile.category]
    for name in profile.feature_names():
        parts.extend(p + name for p in (POSITIVE, NEGATIVE) if p + name in body)
    return "{" + ", ".join(parts) + "}"


def render_operand(operand: FeatureSet, profile: Optional[LanguageProfile] = None) -> str:
    """Render a category-free operand set like ``{+M, -M, +F, -F}``.

    Features follow profile declaration order when a profile is given and
    covers them, alphabetical order otherwise; within one feature the
    positive member comes first.
    """
    names = []
    if profile is not None:
        names = [n for n in profile.feature_names() if {POSITIVE + n, NEGATIVE + n} & operand]
    covered = {algebra.base_of(a) for a in operand if algebra.is_signed(a)}
    names.extend(sorted(covered - set(names)))
    parts = []
    for name in names:
        parts.extend(p + name for p in (POSITIVE, NEGATIVE) if p + name in operand)
    parts.extend(sorted(a for a in operand if algebra.is_category(a)))
    return "{" + ", ".join(parts) + "}"


def parse_template_text(text: str) -> FeatureSet:
    """Parse ``{N, +SG, -PL, ...}`` into a feature set.

    Whitespace after commas is optional.  The inverse of canonical_render on
    validated templates.
    """
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise TemplateError(f"template text must be brace-delimited: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return algebra.EMPTY
    atoms = [algebra.parse_atom(tok) for tok in inner.split(",")]
    if len(set(atoms)) != len(atoms):
        raise TemplateError(f"duplicate atoms in {text!r}")
    return frozenset(atoms)


def make_template(profile: LanguageProfile, text_or_body) -> Template:
    """Build and validate a Template from text or a ready feature set."""
    body = parse_template_text(text_or_body) if isinstance(text_or_body, str) else frozenset(text_or_body)
    t = Template(profile, body)
    problems = t.violations()
    if problems:
        raise TemplateError(f"ill-formed {profile.language} template {sorted(body)}: " + "; ".join(problems))
    return t


def enumerate_candidates(profile: LanguageProfile, well_formed_only: bool = False) -> List[FeatureSet]:
    """Every sign assignment over the profile inventory, category fixed.

    The full space has 2**(cardinality - 1) members; linked oppositions make
    most of them ill-formed, and the ``well_formed_only`` flag keeps just the
    bodies that validate.  Enumeration order is the binary counting order of
    signs, so output is deterministic.
    """
    names = profile.feature_names()
    out: List[FeatureSet] = []
    for signs in itertools.product((POSITIVE, NEGATIVE), repeat=len(names)):
        body = frozenset([profile.category, *(p + n for p, n in zip(signs, names))])
        if well_formed_only and validate(body, profile):
            continue
        out.append(body)
    return out


class InitialTemplateError(KeyError):
    pass


@dataclass
class InitialTemplates:
    """Registry of the template assigned on entry into each cognitive set."""

    entries: Dict[Tuple[str, str], Template] = field(default_factory=dict)

    def register(self, language: str, cogset: str, template: Template) -> None:
        if template.violations():
            raise TemplateError(
                f"initial template for {language}.{cogset} is ill-formed: "
                + "; ".join(template.violations())
            )
        self.entries[(language, cogset)] = template

    def get(self, language: str, cogset: str) -> Template:
        try:
            return self.entries[(language, cogset)]
        except KeyError:
            raise InitialTemplateError(
                f"no initial template for cognitive set {cogset!r} in {language!r}"
            ) from None

    def __iter__(self) -> Iterator[Tuple[str, str]]:
        return iter(self.entries)

    def copy(self) -> "InitialTemplates":
        return InitialTemplates(dict(self.entries))


# -- built-in profiles and defaults ------------------------------------------
#
# Riffian nominals: three linked oppositions (number, gender, countability).
# French nominals: number and gender linked, definiteness and collectivity
# free.  These are the only slot shapes the bundled corpora instantiate.

RIFFIAN = LanguageProfile(
    language="riffian",
    category="N",
    slots=(Opposition("SG", "PL"), Opposition("M", "F"), Opposition("COL", "SING")),
)

FRENCH = LanguageProfile(
    language="french",
    category="N",
    slots=(Opposition("SG", "PL"), Opposition("M", "F"), Free("DEF"), Free("COL")),
)

BUILTIN_PROFILES: Dict[str, LanguageProfile] = {p.language: p for p in (RIFFIAN, FRENCH)}

# Cognitive-set entry templates for Riffian.  C, U and NA carry the values
# recovered by the frequency heuristic over the deverbal corpus; NAdr (nouns
# of address) is read off its masculine-collective members and may be
# overridden by a corpus declaration.
COUNTABLE = "C"
UNCOUNTABLE = "U"
NOUN_OF_ACTION = "NA"
NOUN_OF_ADDRESS = "NAdr"


def default_initials() -> InitialTemplates:
    reg = InitialTemplates()
    reg.register("riffian", COUNTABLE, make_template(RIFFIAN, "{N, +SG, -PL, -M, +F, -COL, +SING}"))
    reg.register("riffian", UNCOUNTABLE, make_template(RIFFIAN, "{N, +SG, -PL, -M, +F, +COL, -SING}"))
    reg.register("riffian", NOUN_OF_ACTION, make_template(RIFFIAN, "{N, +SG, -PL, +M, -F, -COL, +SING}"))
    reg.register("riffian", NOUN_OF_ADDRESS, make_template(RIFFIAN, "{N, +SG, -PL, +M, -F, +COL, -SING}"))
    return reg
