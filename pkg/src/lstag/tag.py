"""Plain TAG grammars, derivation trees, and replay of derivations.

A derivation tree records which elementary tree composed into which, with
edge labels giving the address in the parent's original elementary tree.
Replay is bottom-up: children are rebuilt first, then attached.  When
several adjunctions hit one parent, sites are tracked through the address
rebasing performed by earlier adjunctions, so edge addresses always refer
to the elementary tree as written in the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ._lex import Cursor, lex
from .errors import (
    Diagnostic,
    EdgeAddressInvalid,
    OperationMismatch,
    ParseError,
    UnknownTree,
)
from .gorn import GornAddress
from .trees import (
    Interior,
    SubstitutionSlot,
    SyntaxTree,
    TreeClass,
    adjoin_with_maps,
    classify,
    rebase_address,
    substitute_with_maps,
)


@dataclass(frozen=True)
class ElementaryTree:
    tree: SyntaxTree
    tree_class: TreeClass

    @classmethod
    def of(cls, tree: SyntaxTree) -> "ElementaryTree":
        return cls(tree, classify(tree))


@dataclass(frozen=True)
class TagGrammar:
    entries: tuple[tuple[str, ElementaryTree], ...]

    def __post_init__(self):
        names = [n for n, _ in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("duplicate elementary tree names")

    @classmethod
    def from_trees(cls, trees: dict[str, SyntaxTree]) -> "TagGrammar":
        return cls(tuple((name, ElementaryTree.of(tree)) for name, tree in trees.items()))

    @cached_property
    def _by_name(self) -> dict[str, ElementaryTree]:
        return dict(self.entries)

    def get(self, name: str) -> ElementaryTree:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownTree(f"no elementary tree named {name!r}") from None

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name


@dataclass(frozen=True)
class DerivationTree:
    root: str
    edges: tuple[tuple[GornAddress, "DerivationTree"], ...] = ()

    def __post_init__(self):
        edges = tuple(sorted(self.edges, key=lambda e: e[0]))
        addrs = [a for a, _ in edges]
        if len(set(addrs)) != len(addrs):
            raise ValueError(f"duplicate edge addresses under {self.root!r}")
        object.__setattr__(self, "edges", edges)


def replay(grammar: TagGrammar, d: DerivationTree) -> SyntaxTree:
    entry = grammar.get(d.root)
    result = entry.tree
    transforms: list[tuple[GornAddress, GornAddress]] = []

    def current(addr: GornAddress) -> GornAddress:
        for site, foot in transforms:
            addr = rebase_address(addr, site, foot)
        return addr

    for addr, child in d.edges:
        if not entry.tree.has_address(addr):
            raise EdgeAddressInvalid(f"{d.root!r} has no address {addr}")
        child_entry = grammar.get(child.root)
        child_tree = replay(grammar, child)
        site = current(addr)
        kind = result.node_at(site)
        if isinstance(kind, SubstitutionSlot):
            if child_entry.tree_class is not TreeClass.INITIAL:
                raise OperationMismatch(
                    f"slot at {addr} of {d.root!r} needs an initial tree, got {child.root!r}"
                )
            result = substitute_with_maps(result, site, child_tree).tree
        elif isinstance(kind, Interior):
            if child_entry.tree_class is not TreeClass.AUXILIARY:
                raise OperationMismatch(
                    f"interior node at {addr} of {d.root!r} needs an auxiliary tree, got {child.root!r}"
                )
            result = adjoin_with_maps(result, site, child_tree).tree
            foot = child_tree.foot_address
            assert foot is not None
            transforms.append((site, foot))
        else:
            raise OperationMismatch(f"cannot compose at {addr} of {d.root!r}: node is {kind}")
    return result


def validate_derivation(grammar: TagGrammar, d: DerivationTree) -> list[Diagnostic]:
    """All problems that would make `replay` fail, with derivation-tree paths."""
    diags: list[Diagnostic] = []

    def walk(node: DerivationTree, path: str) -> None:
        if node.root not in grammar:
            diags.append(Diagnostic("UnknownTree", f"no elementary tree named {node.root!r}", path))
            return
        entry = grammar.get(node.root)
        for addr, child in node.edges:
            child_path = f"{path}/{addr}"
            if not entry.tree.has_address(addr):
                diags.append(
                    Diagnostic("EdgeAddressInvalid", f"{node.root!r} has no address {addr}", path)
                )
                walk(child, child_path)
                continue
            kind = entry.tree.node_at(addr)
            if child.root in grammar:
                child_entry = grammar.get(child.root)
                if isinstance(kind, SubstitutionSlot):
                    if child_entry.tree_class is not TreeClass.INITIAL:
                        diags.append(
                            Diagnostic(
                                "OperationMismatch",
                                f"slot at {addr} needs an initial tree, got {child.root!r}",
                                path,
                            )
                        )
                    elif child_entry.tree.root_symbol != kind.symbol:
                        diags.append(
                            Diagnostic(
                                "SymbolMismatch",
                                f"slot at {addr} expects {kind.symbol!r}, got root "
                                f"{child_entry.tree.root_symbol!r}",
                                path,
                            )
                        )
                elif isinstance(kind, Interior):
                    if child_entry.tree_class is not TreeClass.AUXILIARY:
                        diags.append(
                            Diagnostic(
                                "OperationMismatch",
                                f"interior node at {addr} needs an auxiliary tree, got {child.root!r}",
                                path,
                            )
                        )
                    elif child_entry.tree.root_symbol != kind.symbol:
                        diags.append(
                            Diagnostic(
                                "SymbolMismatch",
                                f"adjunction at {addr} expects {kind.symbol!r}, got root "
                                f"{child_entry.tree.root_symbol!r}",
                                path,
                            )
                        )
                else:
                    diags.append(
                        Diagnostic(
                            "OperationMismatch",
                            f"cannot compose at {addr}: node is {kind}",
                            path,
                        )
                    )
            walk(child, child_path)

    walk(d, "root")
    return diags


def has_unfilled_slots(tree: SyntaxTree) -> bool:
    return bool(tree.slot_addresses)


# --- derivation script format -------------------------------------------------
#
# One optional `root NAME` line, then one line per edge:
#
#     cooked @ 2.2 <- beans
#
# Parents are referenced by name and must be unambiguous at the point of use.


@dataclass
class _Node:
    name: str
    edges: list[tuple[GornAddress, "_Node"]] = field(default_factory=list)


def parse_derivation_script(text: str) -> DerivationTree:
    root: _Node | None = None
    occurrences: dict[str, list[_Node]] = {}

    def add(node: _Node) -> None:
        occurrences.setdefault(node.name, []).append(node)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cur = Cursor(lex(line))
        if cur.accept("NAME", "root"):
            name = cur.expect("NAME").text
            if root is not None:
                raise ParseError("duplicate root declaration", lineno)
            root = _Node(name)
            add(root)
        else:
            parent_name = cur.expect("NAME").text
            cur.expect("PUNCT", "@")
            addr = GornAddress.parse(cur.expect("ADDR").text)
            cur.expect("PUNCT", "<-")
            child_name = cur.expect("NAME").text
            if root is None:
                root = _Node(parent_name)
                add(root)
            candidates = occurrences.get(parent_name, [])
            if not candidates:
                raise ParseError(f"unknown parent {parent_name!r}", lineno)
            if len(candidates) > 1:
                raise ParseError(
                    f"parent {parent_name!r} is ambiguous ({len(candidates)} occurrences)", lineno
                )
            parent = candidates[0]
            if any(a == addr for a, _ in parent.edges):
                raise ParseError(f"duplicate edge at address {addr} under {parent_name!r}", lineno)
            child = _Node(child_name)
            parent.edges.append((addr, child))
            add(child)
        if cur.peek().kind != "EOF":
            raise ParseError("trailing input on script line", lineno)
    if root is None:
        raise ParseError("empty derivation script: needs a root or at least one edge")

    def freeze(node: _Node) -> DerivationTree:
        return DerivationTree(node.name, tuple((a, freeze(c)) for a, c in node.edges))

    return freeze(root)


def format_derivation_script(d: DerivationTree) -> str:
    lines = [f"root {d.root}"]

    def walk(node: DerivationTree) -> None:
        for addr, child in node.edges:
            lines.append(f"{node.root} @ {addr} <- {child.root}")
            walk(child)

    walk(d)
    return "\n".join(lines) + "\n"


def derivation_to_json_obj(d: DerivationTree) -> dict:
    return {
        "name": d.root,
        "children": [{"addr": str(a), "node": derivation_to_json_obj(c)} for a, c in d.edges],
    }


def derivation_from_json_obj(obj: dict) -> DerivationTree:
    return DerivationTree(
        obj["name"],
        tuple(
            (GornAddress.parse(c["addr"]), derivation_from_json_obj(c["node"]))
            for c in obj.get("children", [])
        ),
    )
