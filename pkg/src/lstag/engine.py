"""Bounded, exhaustive enumeration of derivations.

The enumerator applies every legal composition up to a budget and returns
each complete derivation exactly once, in a deterministic order.  Distinct
histories that happen to build the same structure are both kept; the same
history reached through different operation orders is collapsed, since a
derivation is identified by its (order-insensitive) record set.

Substitutions are driven by live link groups (one move fills every shared
site); adjunctions are tried at every legal pair of interior sites, and
each node of an elementary tree hosts at most one adjunction.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import LstagError
from .gorn import GornAddress
from .sharing import (
    DerivationGraph,
    DerivationRecord,
    DerivedStructure,
    LstagGrammar,
    SiteRef,
    shared_substitute,
    lstag_compose,
    structure_from_pair,
)
from .tag import DerivationTree, TagGrammar
from .trees import (
    Interior,
    SubstitutionSlot,
    SyntaxTree,
    TreeClass,
    classify,
    substitute_with_maps,
    adjoin_with_maps,
    yield_tokens,
)


@dataclass(frozen=True)
class EnumerationBudget:
    max_operations: int
    max_structures: int = 10000

    def __post_init__(self):
        if self.max_operations < 1 or self.max_structures < 1:
            raise ValueError("enumeration budget components must be >= 1")


@dataclass(frozen=True)
class EnumerationItem:
    root: str
    records: tuple[DerivationRecord, ...]
    left_yield: tuple[str, ...]
    left_derivation: DerivationTree
    right_derivation: DerivationGraph | None

    @property
    def yield_text(self) -> str:
        return " ".join(self.left_yield)

    def record_lines(self) -> tuple[str, ...]:
        return tuple(sorted(r.to_line() for r in self.records))

    def sort_key(self):
        return (self.yield_text, len(self.records), self.record_lines(), self.root)


@dataclass(frozen=True)
class EnumerationResult:
    items: tuple[EnumerationItem, ...]
    truncated: bool


# --- plain TAG enumeration ----------------------------------------------------


@dataclass(frozen=True)
class _TagState:
    root: str
    tree: SyntaxTree
    prov: tuple[tuple[GornAddress, SiteRef], ...]
    adjoined: frozenset[SiteRef]
    records: tuple[DerivationRecord, ...]

    def key(self):
        return (self.root, frozenset(self.records))


def _tag_moves(grammar: TagGrammar, state: _TagState) -> list[_TagState]:
    prov = dict(state.prov)
    moves: list[tuple[tuple, _TagState]] = []
    for addr, kind in state.tree.items():
        ref = prov[addr]
        if isinstance(kind, SubstitutionSlot):
            for name, entry in grammar.entries:
                if entry.tree_class is not TreeClass.INITIAL:
                    continue
                if entry.tree.root_symbol != kind.symbol:
                    continue
                res = substitute_with_maps(state.tree, addr, entry.tree)
                guest_id = f"{ref.owner}/{ref.addr}:{name}"
                new_prov = {n: prov[o] for o, n in res.host_moved}
                new_prov.update({n: SiteRef(guest_id, p) for p, n in res.guest_placed})
                record = DerivationRecord("substitution", name, guest_id, ref, ())
                moves.append(
                    (
                        (str(addr), name),
                        _TagState(
                            state.root,
                            res.tree,
                            tuple(sorted(new_prov.items(), key=lambda kv: kv[0])),
                            state.adjoined,
                            state.records + (record,),
                        ),
                    )
                )
        elif isinstance(kind, Interior):
            if ref in state.adjoined:
                continue
            for name, entry in grammar.entries:
                if entry.tree_class is not TreeClass.AUXILIARY:
                    continue
                if entry.tree.root_symbol != kind.symbol:
                    continue
                res = adjoin_with_maps(state.tree, addr, entry.tree)
                guest_id = f"{ref.owner}/{ref.addr}:{name}"
                new_prov = {n: prov[o] for o, n in res.host_moved}
                new_prov.update({n: SiteRef(guest_id, p) for p, n in res.guest_placed})
                record = DerivationRecord("adjunction", name, guest_id, ref, ())
                moves.append(
                    (
                        (str(addr), name),
                        _TagState(
                            state.root,
                            res.tree,
                            tuple(sorted(new_prov.items(), key=lambda kv: kv[0])),
                            state.adjoined | {ref},
                            state.records + (record,),
                        ),
                    )
                )
    moves.sort(key=lambda m: m[0])
    return [s for _, s in moves]


def _tag_item(grammar: TagGrammar, state: _TagState) -> EnumerationItem:
    names = {state.root: state.root}
    children: dict[str, list[tuple[GornAddress, str]]] = defaultdict(list)
    for r in state.records:
        names[r.guest_id] = r.guest
        children[r.left_site.owner].append((r.left_site.addr, r.guest_id))

    def build(node_id: str) -> DerivationTree:
        kids = sorted(children.get(node_id, []), key=lambda kv: kv[0])
        return DerivationTree(names[node_id], tuple((a, build(c)) for a, c in kids))

    return EnumerationItem(
        state.root, state.records, yield_tokens(state.tree), build(state.root), None
    )


def _enumerate_tag(grammar: TagGrammar, budget: EnumerationBudget) -> EnumerationResult:
    roots = [
        _TagState(
            name,
            entry.tree,
            tuple((a, SiteRef(name, a)) for a in entry.tree.addresses()),
            frozenset(),
            (),
        )
        for name, entry in grammar.entries
        if entry.tree_class is TreeClass.INITIAL
    ]
    truncated = False
    explored = 0
    seen = set()
    complete: list[_TagState] = []
    frontier = []
    for state in roots:
        if state.key() not in seen:
            seen.add(state.key())
            frontier.append(state)
    while frontier:
        next_frontier = []
        for state in frontier:
            explored += 1
            if explored > budget.max_structures:
                return EnumerationResult(
                    tuple(sorted((_tag_item(grammar, s) for s in complete), key=lambda i: i.sort_key())),
                    True,
                )
            if not state.tree.slot_addresses:
                complete.append(state)
            moves = _tag_moves(grammar, state)
            if len(state.records) >= budget.max_operations:
                if moves:
                    truncated = True
                continue
            for nxt in moves:
                if nxt.key() not in seen:
                    seen.add(nxt.key())
                    next_frontier.append(nxt)
        frontier = next_frontier
    items = sorted((_tag_item(grammar, s) for s in complete), key=lambda i: i.sort_key())
    return EnumerationResult(tuple(items), truncated)


# --- link-sharing enumeration ---------------------------------------------------


def _is_initial(tree: SyntaxTree) -> bool:
    try:
        return classify(tree) is TreeClass.INITIAL
    except LstagError:
        return False


def _is_auxiliary(tree: SyntaxTree) -> bool:
    try:
        return classify(tree) is TreeClass.AUXILIARY
    except LstagError:
        return False


def _lstag_moves(grammar: LstagGrammar, s: DerivedStructure) -> list[DerivedStructure]:
    moves: list[tuple[tuple, DerivedStructure]] = []
    for gi, group in enumerate(s.live_links):
        for name, pair in grammar.pairs:
            if not (_is_initial(pair.left_tree) and _is_initial(pair.right_tree)):
                continue
            try:
                nxt = shared_substitute(s, group, pair)
            except LstagError:
                continue
            moves.append(((0, gi, name), nxt))
    left_sites = [
        a for a, k in s.left_tree.items()
        if isinstance(k, Interior) and s.left_prov_map[a] not in s.adjoined_left
    ]
    right_sites = [
        a for a, k in s.right_spine.items()
        if isinstance(k, Interior) and s.right_prov_map[a] not in s.adjoined_right
    ]
    for name, pair in grammar.pairs:
        if not (_is_auxiliary(pair.left_tree) and _is_auxiliary(pair.right_tree)):
            continue
        for la in left_sites:
            if s.left_tree.node_at(la).symbol != pair.left_tree.root_symbol:
                continue
            for ra in right_sites:
                if s.right_spine.node_at(ra).symbol != pair.right_tree.root_symbol:
                    continue
                try:
                    nxt = lstag_compose(s, la, ra, pair)
                except LstagError:
                    continue
                moves.append(((1, str(la), str(ra), name), nxt))
    moves.sort(key=lambda m: m[0])
    return [state for _, state in moves]


def _lstag_item(s: DerivedStructure) -> EnumerationItem:
    left, right = s.projections()
    return EnumerationItem(s.root, s.history, s.left_yield(), left, right)


def _enumerate_lstag(grammar: LstagGrammar, budget: EnumerationBudget) -> EnumerationResult:
    roots = [
        structure_from_pair(pair)
        for _, pair in grammar.pairs
        if _is_initial(pair.left_tree) and _is_initial(pair.right_tree)
    ]
    truncated = False
    explored = 0
    seen = set()
    complete: list[DerivedStructure] = []
    frontier = []
    for state in roots:
        key = (state.root, frozenset(state.history))
        if key not in seen:
            seen.add(key)
            frontier.append(state)
    while frontier:
        next_frontier = []
        for state in frontier:
            explored += 1
            if explored > budget.max_structures:
                return EnumerationResult(
                    tuple(sorted((_lstag_item(s) for s in complete), key=lambda i: i.sort_key())),
                    True,
                )
            if state.is_complete:
                complete.append(state)
            moves = _lstag_moves(grammar, state)
            if len(state.history) >= budget.max_operations:
                if moves:
                    truncated = True
                continue
            for nxt in moves:
                key = (nxt.root, frozenset(nxt.history))
                if key not in seen:
                    seen.add(key)
                    next_frontier.append(nxt)
        frontier = next_frontier
    items = sorted((_lstag_item(s) for s in complete), key=lambda i: i.sort_key())
    return EnumerationResult(tuple(items), truncated)


def enumerate_derivations(
    grammar: TagGrammar | LstagGrammar, budget: EnumerationBudget
) -> EnumerationResult:
    if isinstance(grammar, TagGrammar):
        return _enumerate_tag(grammar, budget)
    if isinstance(grammar, LstagGrammar):
        return _enumerate_lstag(grammar, budget)
    raise TypeError(f"cannot enumerate over {type(grammar).__name__}")


def language_sample(grammar: TagGrammar | LstagGrammar, budget: EnumerationBudget) -> list[str]:
    result = enumerate_derivations(grammar, budget)
    return sorted({item.yield_text for item in result.items})
