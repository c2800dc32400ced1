"""The item store, formation edges, and the derivation bookkeeping.

A :class:`LexiconState` is an immutable snapshot: items by id, one
:class:`EdgeSpec` per derived item, the set of superseded ids, and a
stratum (derivation depth) per item.  ``apply_formation`` is a pure
transition returning a new snapshot, so replaying an edge list over the
same initial items always reproduces the same state.

Word and meaning formation comes in four kinds with different ledger
semantics:

* conversion, morphological derivation, and borrowing each add one live
  item (the base, when there is one, stays live);
* semantic widening replaces its base: the derived item enters the live
  set and the base is marked superseded -- kept for tracing, excluded
  from the live count.

Chains terminate at input heads: items declared with an explicit template,
or borrow-created items with no base.  Everything else reaches its template
through the shift engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .algebra import FeatureSet
from .templates import InitialTemplates, LanguageProfile, Template

VERB = "V"


class LexiconError(ValueError):
    pass


class Formation(enum.Enum):
    """The four word/meaning formation processes."""

    CONVERSION = "CONV"
    BORROWING = "BORROW"
    DERIVATION = "MDERIV"
    WIDENING = "WIDEN"

    @property
    def symbol(self) -> str:
        return {"CONV": "→", "BORROW": "↑", "MDERIV": "↔", "WIDEN": "⊇"}[self.value]

    @property
    def adds_live_item(self) -> bool:
        return self is not Formation.WIDENING


def formation_from_token(token: str) -> Formation:
    try:
        return Formation(token)
    except ValueError:
        raise LexiconError(f"unknown formation process {token!r}") from None


@dataclass(frozen=True)
class Item:
    """One lexical entry.

    ``template`` is only set on input heads; derived items resolve theirs
    through the shift engine.  ``fem_prefix``/``fem_suffix`` switch off the
    corresponding feminine exponent for nouns with asymmetric gender
    encoding.  ``surface_override`` short-circuits realization entirely;
    ``expected_surface`` is the attested form the realizer is audited
    against.
    """

    id: str
    language: str
    radical: str
    category: str = "N"
    cogset: Optional[str] = None
    meanings: FrozenSet[str] = frozenset()
    gloss: Optional[str] = None
    animate: bool = False
    recent_loan: bool = False
    typical: bool = False
    common: bool = False
    template: Optional[Template] = None
    surface_override: Optional[str] = None
    expected_surface: Optional[str] = None
    fem_prefix: bool = True
    fem_suffix: bool = True

    def flag(self, name: str) -> bool:
        if name not in ("recent_loan", "typical", "common"):
            raise LexiconError(f"unknown corpus flag {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class EdgeSpec:
    """Construction data for one derived item.

    ``base_id`` is absent only for borrowings, which start their own chain.
    ``radical`` defaults to the base's (conversion and widening never change
    it; morphological derivation and borrowing usually supply one).
    ``expect_template`` and ``expected_surface`` are corpus expectations
    carried along for validation, inert during derivation itself.
    """

    derived_id: str
    process: Formation
    base_id: Optional[str] = None
    target: Optional[str] = None
    language: Optional[str] = None
    radical: Optional[str] = None
    gloss: Optional[str] = None
    meanings: Optional[FrozenSet[str]] = None
    animate: bool = False
    donor_gender: Optional[str] = None
    gradcond: Optional[str] = None
    surface_override: Optional[str] = None
    expected_surface: Optional[str] = None
    fem_prefix: bool = True
    fem_suffix: bool = True
    expect_template: Optional[FeatureSet] = None


@dataclass(frozen=True)
class ShiftRecord:
    """The retrospective determinant of one item's template.

    Input heads map to the distinguished EMPTY record.  For derived items
    the record carries the process (with its qualifiers), the base item's
    resolved template (None when the base is a verb or absent), the target
    cognitive set, and the base id.
    """

    process: Optional[Formation]
    base_template: Optional[Template]
    target: Optional[str]
    base_id: Optional[str]
    base_cogset: Optional[str] = None
    animate: bool = False
    donor_gender: Optional[str] = None
    gradcond: Optional[str] = None
    stratum: int = 0

    @property
    def is_empty(self) -> bool:
        return self.process is None

    def render(self) -> str:
        if self.is_empty:
            return "{}"
        base_t = self.base_template.render() if self.base_template else "—"
        return "{%s, %s, %s, %s}" % (
            self.process.value,
            base_t,
            self.target or "—",
            self.base_id or "—",
        )


EMPTY_RECORD = ShiftRecord(process=None, base_template=None, target=None, base_id=None)


@dataclass(frozen=True)
class LexiconState:
    """Immutable lexicon snapshot; all transitions return a new state."""

    profiles: Mapping[str, LanguageProfile]
    initials: InitialTemplates
    items: Dict[str, Item] = field(default_factory=dict)
    edges: Dict[str, EdgeSpec] = field(default_factory=dict)
    superseded: FrozenSet[str] = frozenset()
    strata: Dict[str, int] = field(default_factory=dict)
    warnings: Tuple[str, ...] = ()
    rules: Optional[object] = None  # engine.RuleRegistry; engine default when None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- queries ---------------------------------------------------------

    def item(self, item_id: str) -> Item:
        try:
            return self.items[item_id]
        except KeyError:
            raise LexiconError(f"unknown item {item_id!r}") from None

    def profile_for(self, item: Item) -> LanguageProfile:
        try:
            return self.profiles[item.language]
        except KeyError:
            raise LexiconError(f"no profile for language {item.language!r}") from None

    def is_live(self, item_id: str) -> bool:
        return item_id in self.items and item_id not in self.superseded

    def live_ids(self) -> List[str]:
        return [i for i in self.items if i not in self.superseded]

    @property
    def live_count(self) -> int:
        return len(self.items) - len(self.superseded)

    def stratum(self, item_id: str) -> int:
        self.item(item_id)
        return self.strata[item_id]

    def cognitive_set_members(self, cogset: str) -> List[str]:
        """Live noun items of one cognitive set, sorted by id.

        Distinct sets are disjoint and together cover every live noun, so
        iterating the declared sets enumerates the nominal lexicon exactly
        once.
        """
        return sorted(
            i for i in self.live_ids()
            if self.items[i].category != VERB and self.items[i].cogset == cogset
        )

    def cognitive_sets(self) -> List[str]:
        return sorted({
            it.cogset for i, it in self.items.items()
            if self.is_live(i) and it.cogset is not None
        })

    # -- transitions -------------------------------------------------------

    def add_item(self, item: Item) -> "LexiconState":
        if item.id in self.items:
            raise LexiconError(f"duplicate item id {item.id!r}")
        if item.language not in self.profiles:
            raise LexiconError(f"item {item.id}: no profile for language {item.language!r}")
        if item.category == VERB:
            if item.cogset is not None or item.template is not None:
                raise LexiconError(f"item {item.id}: verbs carry no cognitive set or template")
        else:
            if item.cogset is None:
                raise LexiconError(f"item {item.id}: noun items need a cognitive set")
            if item.template is not None:
                if item.template.profile != self.profiles[item.language]:
                    raise LexiconError(
                        f"item {item.id}: template belongs to another language profile"
                    )
                problems = item.template.violations()
                if problems:
                    raise LexiconError(f"item {item.id}: " + "; ".join(problems))
        items = dict(self.items)
        items[item.id] = item
        strata = dict(self.strata)
        strata[item.id] = 0
        return replace(self, items=items, strata=strata, _cache={})

    def apply_formation(self, spec: EdgeSpec) -> "LexiconState":
        """Apply one formation edge and return the successor state.

        Conversion/derivation/borrowing grow the live count by exactly one;
        widening swaps the derived item in for its base.  The input state is
        never modified.
        """
        if spec.derived_id in self.items:
            raise LexiconError(f"duplicate item id {spec.derived_id!r}")
        base: Optional[Item] = None
        if spec.base_id is not None:
            if spec.base_id not in self.items:
                raise LexiconError(
                    f"edge {spec.derived_id}: dangling base reference {spec.base_id!r}"
                )
            if spec.base_id in self.superseded:
                raise LexiconError(
                    f"edge {spec.derived_id}: base {spec.base_id!r} is superseded"
                )
            base = self.items[spec.base_id]
        elif spec.process is not Formation.BORROWING:
            raise LexiconError(f"edge {spec.derived_id}: {spec.process.value} needs a base item")

        language = spec.language or (base.language if base else None)
        if language is None:
            raise LexiconError(f"edge {spec.derived_id}: borrowing needs an explicit language")
        if language not in self.profiles:
            raise LexiconError(f"edge {spec.derived_id}: no profile for language {language!r}")
        radical = spec.radical if spec.radical is not None else (base.radical if base else None)
        if radical is None:
            raise LexiconError(f"edge {spec.derived_id}: borrowing needs an explicit radical")

        target = spec.target
        if target is None:
            target = base.cogset if base else None
        if target is None:
            raise LexiconError(f"edge {spec.derived_id}: no target cognitive set")
        category = VERB if target == VERB else "N"

        meanings = spec.meanings
        if meanings is None:
            meanings = frozenset([spec.gloss]) if spec.gloss else frozenset()
            if spec.process is Formation.WIDENING and base is not None:
                meanings = base.meanings | meanings

        warnings = self.warnings
        superseded = self.superseded
        if spec.process is Formation.WIDENING:
            assert base is not None
            if not (meanings <= base.meanings or base.meanings <= meanings):
                raise LexiconError(
                    f"edge {spec.derived_id}: widening needs comparable meaning sets "
                    f"(base {sorted(base.meanings)} vs derived {sorted(meanings)})"
                )
            if not meanings <= base.meanings:
                warnings = warnings + (
                    f"widen {spec.derived_id}: derived meanings strictly contain the base's",
                )
            superseded = superseded | {base.id}

        derived = Item(
            id=spec.derived_id,
            language=language,
            radical=radical,
            category=category,
            cogset=None if category == VERB else target,
            meanings=meanings,
            gloss=spec.gloss,
            animate=spec.animate,
            surface_override=spec.surface_override,
            expected_surface=spec.expected_surface,
            fem_prefix=spec.fem_prefix,
            fem_suffix=spec.fem_suffix,
        )
        items = dict(self.items)
        items[derived.id] = derived
        edges = dict(self.edges)
        edges[derived.id] = spec
        strata = dict(self.strata)
        strata[derived.id] = strata[base.id] + 1 if base else 0
        return replace(
            self,
            items=items,
            edges=edges,
            superseded=superseded,
            strata=strata,
            warnings=warnings,
            _cache={},
        )

    # Replaying is used by determinism checks and by the randomized ledger
    # property: same items, same edges, same resulting snapshot.
    def replay(self, specs) -> "LexiconState":
        state = self
        for spec in specs:
            state = state.apply_formation(spec)
        return state


def new_state(
    profiles: Mapping[str, LanguageProfile],
    initials: InitialTemplates,
    rules: Optional[object] = None,
) -> LexiconState:
    return LexiconState(profiles=dict(profiles), initials=initials, rules=rules)
