"""Gradient rules and the template transfer machinery.

Every derived item's template is the unique solution of a gradient
condition: an equation on the symmetric difference between the base
template and the derived one.  A rule either supplies the difference
operand directly (``base Δ operand = derived``) or assigns the target
cognitive set's initial template, optionally forcing the gender calqued
from a donor language.

The default rule table:

=====  =============================================================  ================================
rule   fires on                                                       effect
=====  =============================================================  ================================
R2     widening; conversion whose derived referent is animate         Δ {} (template preserved)
R1     conversion, derived referent inanimate                         Δ {+M, -M, +F, -F} (gender flip)
R3     only by explicit ``gradcond=R3`` annotation                    Δ gender + countability flip
R4     morphological derivation; any word formation off a verb base   initial template of the target set
R5     borrowing                                                      initial template, donor gender kept
=====  =============================================================  ================================

Animacy is read off the derived item's referent: an animate base does not
block the shift (courage from man), an animate derivative does (clever from
clever one).  Rules resolve by first match over the declared order; the
built-in triggers are pairwise disjoint, and a custom registry whose
triggers can both fire on one record is rejected at load time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple, Union

from . import algebra
from .algebra import NEGATIVE, POSITIVE, FeatureSet
from .lexicon import (
    EMPTY_RECORD,
    Formation,
    LexiconState,
    ShiftRecord,
    VERB,
)
from .templates import (
    InitialTemplates,
    LanguageProfile,
    Template,
)

GENDER_FLIP: FeatureSet = frozenset({"+M", "-M", "+F", "-F"})


class ShiftError(ValueError):
    pass


class NoRuleError(ShiftError):
    pass


class InputHeadError(ShiftError):
    pass


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    """One conjunctive trigger condition over a shift record."""

    processes: FrozenSet[Formation]
    animate: Optional[bool] = None            # None matches either
    base_has_template: Optional[bool] = None  # None matches either
    base_cogsets: Optional[FrozenSet[str]] = None
    target_cogsets: Optional[FrozenSet[str]] = None

    def matches(self, record: ShiftRecord) -> bool:
        if record.process not in self.processes:
            return False
        if self.animate is not None and record.animate != self.animate:
            return False
        if self.base_has_template is not None:
            if (record.base_template is not None) != self.base_has_template:
                return False
        if self.base_cogsets is not None and record.base_cogset not in self.base_cogsets:
            return False
        if self.target_cogsets is not None and record.target not in self.target_cogsets:
            return False
        return True

    def overlaps(self, other: "Clause") -> bool:
        """Whether some record could satisfy both clauses."""
        if not self.processes & other.processes:
            return False
        for name in ("animate", "base_has_template"):
            a, b = getattr(self, name), getattr(other, name)
            if a is not None and b is not None and a != b:
                return False
        for name in ("base_cogsets", "target_cogsets"):
            a, b = getattr(self, name), getattr(other, name)
            if a is not None and b is not None and not a & b:
                return False
        return True


@dataclass(frozen=True)
class DeltaOperand:
    """Rule mode: derived = base Δ operand.

    ``fixed`` atoms are used as-is; ``flip`` names contribute both polarities
    of each listed feature the profile actually has, which keeps one rule
    usable across profiles with different countability slots.  Operands must
    be category-free.
    """

    fixed: FeatureSet = frozenset()
    flip: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        bad = sorted(a for a in self.fixed if algebra.is_category(a))
        if bad:
            raise RegistryError(f"gradient operand may not contain category atoms: {bad}")

    def build(self, profile: LanguageProfile) -> FeatureSet:
        atoms = set(self.fixed)
        inventory = set(profile.feature_names())
        for name in self.flip:
            if name in inventory:
                atoms.add(POSITIVE + name)
                atoms.add(NEGATIVE + name)
        return frozenset(atoms)


@dataclass(frozen=True)
class InitialAssign:
    """Rule mode: derived = initial template of the target cognitive set."""

    use_donor_gender: bool = False


RuleMode = Union[DeltaOperand, InitialAssign]


@dataclass(frozen=True)
class GradRule:
    """One member of the gradient-condition family.

    A rule with no clauses never fires on its own and is reachable only
    through an explicit ``gradcond=<id>`` annotation on an edge.
    """

    id: str
    mode: RuleMode
    clauses: Tuple[Clause, ...] = ()
    note: str = ""

    def matches(self, record: ShiftRecord) -> bool:
        return any(c.matches(record) for c in self.clauses)


@dataclass(frozen=True)
class RuleRegistry:
    """First-match rule table over a declared priority order."""

    rules: Tuple[GradRule, ...]

    def __post_init__(self) -> None:
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise RegistryError(f"duplicate rule ids in registry: {ids}")
        for i, left in enumerate(self.rules):
            for right in self.rules[i + 1:]:
                for cl, cr in ((a, b) for a in left.clauses for b in right.clauses):
                    if cl.overlaps(cr):
                        raise RegistryError(
                            f"rules {left.id} and {right.id} have overlapping triggers"
                        )
        fixed = [
            (r.id, r.mode.fixed)
            for r in self.rules
            if isinstance(r.mode, DeltaOperand) and not r.mode.flip
        ]
        for i, (lid, lop) in enumerate(fixed):
            for rid, rop in fixed[i + 1:]:
                if lop == rop:
                    raise RegistryError(
                        f"rules {lid} and {rid} share the operand; distinct conditions "
                        "need distinct operands"
                    )

    def by_id(self, rule_id: str) -> GradRule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise NoRuleError(f"no gradient rule {rule_id!r} in the registry")

    def select(self, record: ShiftRecord) -> GradRule:
        if record.gradcond is not None:
            return self.by_id(record.gradcond)
        for rule in self.rules:
            if rule.matches(record):
                return rule
        raise NoRuleError(
            f"no gradient rule triggers on {record.render()} "
            f"(process {record.process.value if record.process else '-'})"
        )


DEFAULT_RULES = RuleRegistry((
    GradRule(
        id="R2",
        mode=DeltaOperand(fixed=frozenset()),
        clauses=(
            Clause(processes=frozenset({Formation.WIDENING}), base_has_template=True),
            Clause(processes=frozenset({Formation.CONVERSION}), animate=True, base_has_template=True),
        ),
        note="stationary state: no template shift",
    ),
    GradRule(
        id="R1",
        mode=DeltaOperand(fixed=GENDER_FLIP),
        clauses=(
            Clause(processes=frozenset({Formation.CONVERSION}), animate=False, base_has_template=True),
        ),
        note="gender shift on noun-to-noun conversion",
    ),
    GradRule(
        id="R3",
        mode=DeltaOperand(fixed=GENDER_FLIP, flip=("COL", "SING")),
        note="gender plus countability shift (corpus-annotated)",
    ),
    GradRule(
        id="R4",
        mode=InitialAssign(),
        clauses=(
            Clause(processes=frozenset({Formation.DERIVATION})),
            Clause(processes=frozenset({Formation.CONVERSION}), base_has_template=False),
        ),
        note="entry into a cognitive set takes its initial template",
    ),
    GradRule(
        id="R5",
        mode=InitialAssign(use_donor_gender=True),
        clauses=(Clause(processes=frozenset({Formation.BORROWING})),),
        note="borrowed items calque the donor gender",
    ),
))


@dataclass(frozen=True)
class ShiftResult:
    """A resolved template together with how it was reached."""

    template: Template
    rule_id: str
    operand: Optional[FeatureSet]
    stratum: int


def _force_gender(body: FeatureSet, donor: str) -> FeatureSet:
    if donor not in ("M", "F"):
        raise ShiftError(f"donor gender must be M or F, got {donor!r}")
    keep = {"+M", "-F"} if donor == "M" else {"-M", "+F"}
    return (body - GENDER_FLIP) | frozenset(keep)


def apply_gradient(
    record: ShiftRecord,
    profile: LanguageProfile,
    initials: InitialTemplates,
    rules: RuleRegistry = DEFAULT_RULES,
) -> ShiftResult:
    """Resolve one shift record to the derived template (the gradient map).

    Raises for the EMPTY record (input heads carry their own template), when
    no rule triggers, and when a rule would manufacture an ill-formed
    template.
    """
    if record.is_empty:
        raise InputHeadError("input head has no computed template")
    rule = rules.select(record)
    if isinstance(rule.mode, DeltaOperand):
        if record.base_template is None:
            raise ShiftError(
                f"rule {rule.id} needs a base template, but {record.render()} has none"
            )
        if record.base_template.profile != profile:
            raise ShiftError(
                f"base template belongs to {record.base_template.profile.language}, "
                f"not {profile.language}"
            )
        operand = rule.mode.build(profile)
        body = algebra.symmetric_difference(record.base_template.body, operand)
        used: Optional[FeatureSet] = operand
    else:
        if record.target is None or record.target == VERB:
            raise ShiftError(f"rule {rule.id} cannot assign a template to target {record.target!r}")
        initial = initials.get(profile.language, record.target)
        body = initial.body
        if rule.mode.use_donor_gender:
            if record.donor_gender is None:
                raise ShiftError(f"rule {rule.id} needs a donor gender on {record.render()}")
            body = _force_gender(body, record.donor_gender)
        used = None
    derived = Template(profile, body)
    problems = derived.violations()
    if problems:
        raise ShiftError(
            f"rule {rule.id} produced an ill-formed template: " + "; ".join(problems)
        )
    return ShiftResult(template=derived, rule_id=rule.id, operand=used, stratum=record.stratum)


def shift_record(state: LexiconState, item_id: str) -> ShiftRecord:
    """The retrospective determinant of an item (the backward map).

    Input heads map to the EMPTY record.  For derived items the base
    template is resolved recursively through :func:`transfer`, so the record
    always holds the base's *current* template, whatever its own depth.
    """
    state.item(item_id)
    edge = state.edges.get(item_id)
    if edge is None:
        return EMPTY_RECORD
    base_template = None
    base_cogset = None
    if edge.base_id is not None:
        base = state.item(edge.base_id)
        base_cogset = base.cogset
        if base.category != VERB:
            base_template = transfer(state, edge.base_id).template
    return ShiftRecord(
        process=edge.process,
        base_template=base_template,
        target=edge.target if edge.target is not None else base_cogset,
        base_id=edge.base_id,
        base_cogset=base_cogset,
        animate=edge.animate,
        donor_gender=edge.donor_gender,
        gradcond=edge.gradcond,
        stratum=state.strata[item_id],
    )


def transfer(state: LexiconState, item_id: str) -> ShiftResult:
    """Item to template: declared for heads, gradient output otherwise.

    Memoized per state snapshot; the cache fill is idempotent, so concurrent
    readers of one snapshot stay consistent.
    """
    key = ("transfer", item_id)
    if key in state._cache:
        return state._cache[key]
    item = state.item(item_id)
    if item.category == VERB:
        raise ShiftError(f"item {item_id}: category {VERB} has no registered template inventory")
    guard = ("resolving", item_id)
    if guard in state._cache:
        raise ShiftError(f"cycle detected while resolving {item_id!r}")
    state._cache[guard] = True
    try:
        if item_id not in state.edges:
            if item.template is None:
                raise ShiftError(
                    f"item {item_id}: no declared template and no derivation edge"
                )
            result = ShiftResult(
                template=item.template,
                rule_id="head",
                operand=None,
                stratum=state.strata[item_id],
            )
        else:
            record = shift_record(state, item_id)
            rules = state.rules if state.rules is not None else DEFAULT_RULES
            profile = state.profile_for(item)
            result = apply_gradient(record, profile, state.initials, rules)
    finally:
        del state._cache[guard]
    state._cache[key] = result
    return result


def solve_operand(base: Template, derived: Template) -> FeatureSet:
    """Isolate the operand connecting two templates: base Δ derived.

    The returned set is the unique solution of ``base Δ p = derived``; the
    shared category atom cancels, so the operand is always category-free.
    """
    if base.profile != derived.profile:
        raise ShiftError(
            f"cannot solve across profiles ({base.profile.language} vs {derived.profile.language})"
        )
    for name, t in (("base", base), ("derived", derived)):
        problems = t.violations()
        if problems:
            raise ShiftError(f"{name} template is ill-formed: " + "; ".join(problems))
    return algebra.symmetric_difference(base.body, derived.body)


# -- phylotemplatic traces ----------------------------------------------------

@dataclass(frozen=True)
class TraceNode:
    """One item in a derivation tree, with the step that produced it."""

    item_id: str
    process: Optional[Formation]
    rule_id: Optional[str]
    template: Optional[Template]
    stratum: int
    gloss: Optional[str]
    superseded: bool
    children: Tuple["TraceNode", ...] = ()


def chain_root(state: LexiconState, item_id: str) -> str:
    """Walk edges upward to the head that starts this item's chain."""
    current = item_id
    seen = {current}
    while True:
        edge = state.edges.get(current)
        if edge is None or edge.base_id is None:
            return current
        current = edge.base_id
        if current in seen:
            raise ShiftError(f"cycle detected while tracing {item_id!r}")
        seen.add(current)


def _node(state: LexiconState, item_id: str, children: Tuple[TraceNode, ...]) -> TraceNode:
    item = state.item(item_id)
    edge = state.edges.get(item_id)
    if item.category == VERB:
        rule_id, template = None, None
    else:
        result = transfer(state, item_id)
        rule_id, template = result.rule_id, result.template
    return TraceNode(
        item_id=item_id,
        process=edge.process if edge else None,
        rule_id=rule_id,
        template=template,
        stratum=state.strata[item_id],
        gloss=item.gloss,
        superseded=not state.is_live(item_id),
        children=children,
    )


def trace(state: LexiconState, item_id: str) -> TraceNode:
    """The phylotemplatic tree rooted at an item's input head.

    Called on a head, the result spans all of its descendants; called on a
    derived item, it is the single path from the head down to that item.
    Children are ordered by id, so rendering is deterministic.
    """
    root = chain_root(state, item_id)
    if root == item_id:
        derived_of = {}
        for did, edge in state.edges.items():
            if edge.base_id is not None:
                derived_of.setdefault(edge.base_id, []).append(did)

        def build(current: str) -> TraceNode:
            kids = tuple(build(d) for d in sorted(derived_of.get(current, [])))
            return _node(state, current, kids)

        return build(root)
    path: List[str] = [item_id]
    while path[-1] != root:
        path.append(state.edges[path[-1]].base_id)
    node: Optional[TraceNode] = None
    for current in path:
        node = _node(state, current, (node,) if node else ())
    return node


def render_trace(node: TraceNode, indent: int = 0) -> str:
    pad = "  " * indent
    shown = node.template.render() if node.template else "(no template)"
    step = "head" if node.process is None else f"{node.process.value} {node.rule_id or '-'}"
    mark = " superseded" if node.superseded else ""
    gloss = f" '{node.gloss}'" if node.gloss else ""
    line = f"{pad}{node.item_id}  [{step}, stratum {node.stratum}{mark}]  {shown}{gloss}"
    return "\n".join([line, *(render_trace(c, indent + 1) for c in node.children)])
