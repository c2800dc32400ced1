"""Surface realization for Riffian item-template pairs.

A deliberately thin spell-out layer: enough exponence to round-trip the
bundled corpora, not a morphophonology of the language.  Masculine,
singular and collective are null markers; what gets spelled out is:

* the feminine prefix ``ð``, realized ``t`` before a voiceless consonant;
* the countability prefix for singulatives, ``a`` in the singular and ``i``
  in the plural (collectives take none);
* the feminine suffix ``t``, realized ``θ`` after a vowel or glide;
* the plural suffixes ``en`` (masculine) and ``in`` (feminine, replacing
  the feminine suffix).

Nouns with asymmetric gender encoding switch off the feminine prefix or
suffix per item; anything beyond that (epenthetic vowels, internal plurals,
lexicalized allomorphs) is carried by a per-item surface override, which
audits report separately from rule output.

Attested spellings hyphenate inconsistently, so all surface comparisons --
the ``matches`` helper and the corpus audit -- ignore hyphens and compare
NFC-normalized text.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import List, Tuple

from . import engine
from .lexicon import Item, LexiconState, VERB
from .templates import Template

_TRANSLIT = {"ḍ": "ð", "δ": "ð"}  # d-underdot, Greek delta -> eth


class RealizeError(ValueError):
    pass


def normalize_phonetic(text: str) -> str:
    """NFC plus the transliteration variants collapsed to one alphabet."""
    out = unicodedata.normalize("NFC", text)
    for src, dst in _TRANSLIT.items():
        out = out.replace(src, dst)
    return out


def comparable_surface(text: str) -> str:
    """The form used for surface equality: normalized, hyphens removed."""
    return normalize_phonetic(text).replace("-", "")


@dataclass(frozen=True)
class MarkerInventory:
    """Exponents and the phonological contexts that pick their allomorphs."""

    language: str = "riffian"
    fem_prefix: str = "ð"
    fem_prefix_voiceless: str = "t"
    fem_suffix: str = "t"
    fem_suffix_postvocalic: str = "θ"
    sing_prefix_singular: str = "a"
    sing_prefix_plural: str = "i"
    plural_suffix_masc: str = "en"
    plural_suffix_fem: str = "in"
    voiceless: Tuple[str, ...] = ("ts", "tʃ", "t", "θ", "f", "s", "ʃ", "k", "q", "ħ", "χ")
    vowels_and_glides: Tuple[str, ...] = ("a", "e", "i", "o", "u", "w", "j")

    def starts_voiceless(self, segment: str) -> bool:
        return any(segment.startswith(v) for v in sorted(self.voiceless, key=len, reverse=True))

    def ends_vocalic(self, segment: str) -> bool:
        return segment.endswith(self.vowels_and_glides)


DEFAULT_INVENTORY = MarkerInventory()


@dataclass(frozen=True)
class SurfaceForm:
    """Assembled surface: labelled morphs, plain join, display hyphenation.

    ``hyphenated`` separates the prefix block (gender and countability fused)
    from the radical and sets number suffixes off with a hyphen; the
    feminine suffix stays attached, which is the dominant attested style.
    """

    segments: Tuple[Tuple[str, str], ...]
    joined: str
    hyphenated: str
    from_override: bool = False

    def matches(self, expected: str) -> bool:
        return comparable_surface(self.joined) == comparable_surface(expected)


def realize(
    item: Item,
    template: Template,
    inventory: MarkerInventory = DEFAULT_INVENTORY,
) -> SurfaceForm:
    """Spell out one item under one template.

    A per-item surface override is returned verbatim (marked as such);
    otherwise the marker inventory assembles prefix block, radical and
    suffix block.
    """
    if item.category == VERB:
        raise RealizeError(f"item {item.id}: verbs are not realized")
    if template.profile.language != inventory.language:
        raise RealizeError(
            f"inventory covers {inventory.language!r}, template is {template.profile.language!r}"
        )
    problems = template.violations()
    if problems:
        raise RealizeError("cannot realize ill-formed template: " + "; ".join(problems))

    if item.surface_override is not None:
        given = normalize_phonetic(item.surface_override)
        return SurfaceForm(
            segments=((given, "override"),),
            joined=given.replace("-", ""),
            hyphenated=given,
            from_override=True,
        )

    radical = normalize_phonetic(item.radical)
    feminine = "+F" in template.body
    plural = "+PL" in template.body
    singulative = "+SING" in template.body

    count_prefix = ""
    if singulative:
        count_prefix = inventory.sing_prefix_plural if plural else inventory.sing_prefix_singular

    fem_prefix = ""
    if feminine and item.fem_prefix:
        following = count_prefix or radical
        fem_prefix = (
            inventory.fem_prefix_voiceless
            if inventory.starts_voiceless(following)
            else inventory.fem_prefix
        )

    fem_suffix = ""
    plural_suffix = ""
    if plural:
        plural_suffix = inventory.plural_suffix_fem if feminine else inventory.plural_suffix_masc
    elif feminine and item.fem_suffix:
        fem_suffix = (
            inventory.fem_suffix_postvocalic
            if inventory.ends_vocalic(radical)
            else inventory.fem_suffix
        )

    segments: List[Tuple[str, str]] = []
    if fem_prefix:
        segments.append((fem_prefix, "fem-prefix"))
    if count_prefix:
        segments.append((count_prefix, "count-prefix"))
    segments.append((radical, "radical"))
    if fem_suffix:
        segments.append((fem_suffix, "fem-suffix"))
    if plural_suffix:
        segments.append((plural_suffix, "plural-suffix"))

    joined = "".join(morph for morph, _ in segments)
    prefix_block = fem_prefix + count_prefix
    hyphenated = radical + fem_suffix
    if prefix_block:
        hyphenated = prefix_block + "-" + hyphenated
    if plural_suffix:
        hyphenated += "-" + plural_suffix
    return SurfaceForm(segments=tuple(segments), joined=joined, hyphenated=hyphenated)


RULE_MATCH = "rule-match"
OVERRIDE_USED = "override-used"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class AuditEntry:
    item_id: str
    expected: str
    produced: str
    classification: str


@dataclass(frozen=True)
class AuditReport:
    entries: Tuple[AuditEntry, ...]

    def count(self, classification: str) -> int:
        return sum(1 for e in self.entries if e.classification == classification)

    @property
    def rule_matches(self) -> int:
        return self.count(RULE_MATCH)

    @property
    def overrides(self) -> int:
        return self.count(OVERRIDE_USED)

    @property
    def mismatches(self) -> Tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.classification == MISMATCH)

    def render(self) -> str:
        lines = [
            f"{e.classification:13s}  {e.item_id:12s}  expected {e.expected!r}  got {e.produced!r}"
            for e in self.entries
        ]
        lines.append(
            f"audited {len(self.entries)}: {self.rule_matches} rule-matched, "
            f"{self.overrides} via override, {len(self.mismatches)} mismatched"
        )
        return "\n".join(lines)


def realization_audit(
    state: LexiconState,
    inventory: MarkerInventory = DEFAULT_INVENTORY,
) -> AuditReport:
    """Compare every attested surface in the lexicon against the realizer.

    Items are audited when they carry an expected surface (or an override,
    which doubles as the attestation).  An override is never counted as a
    rule match, even when the rules would have produced the same string; a
    mismatch is always listed, never swallowed.
    """
    entries: List[AuditEntry] = []
    for item_id in sorted(state.items):
        item = state.items[item_id]
        expected = item.expected_surface or item.surface_override
        if expected is None:
            continue
        if item.category == VERB or item.language != inventory.language:
            continue
        template = engine.transfer(state, item_id).template
        form = realize(item, template, inventory)
        if form.from_override:
            clazz = OVERRIDE_USED if form.matches(expected) else MISMATCH
        else:
            clazz = RULE_MATCH if form.matches(expected) else MISMATCH
        entries.append(AuditEntry(item_id, expected, form.hyphenated, clazz))
    return AuditReport(entries=tuple(entries))
