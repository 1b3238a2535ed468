"""Well-formedness restrictions on elementary structures.

Two checks gate which pairs may take part in coordination: the left element
must correspond to a dominance-connected region of the right element, and
an elementary tree that spells out a lexically discontiguous string (a slot
or foot between two anchors on its frontier) cannot coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Diagnostic
from .gorn import GornAddress
from .sharing import LstagPair
from .trees import Foot, SubstitutionSlot, SyntaxTree, Terminal


@dataclass(frozen=True)
class Correspondence:
    """Injective map from left-tree addresses to right-tree addresses."""

    pairs: tuple[tuple[GornAddress, GornAddress], ...]

    def __post_init__(self):
        lefts = [l for l, _ in self.pairs]
        rights = [r for _, r in self.pairs]
        if len(set(lefts)) != len(lefts):
            raise ValueError("correspondence maps a left address twice")
        if len(set(rights)) != len(rights):
            raise ValueError("correspondence is not injective")

    @property
    def image(self) -> tuple[GornAddress, ...]:
        return tuple(sorted(r for _, r in self.pairs))


def _dominance_path(a: GornAddress, b: GornAddress) -> set[GornAddress]:
    """All nodes on the path from a to b through their least common ancestor."""
    common = 0
    for x, y in zip(a.parts, b.parts):
        if x != y:
            break
        common += 1
    lca = GornAddress(a.parts[:common])
    path = {GornAddress(a.parts[:k]) for k in range(common, len(a.parts) + 1)}
    path |= {GornAddress(b.parts[:k]) for k in range(common, len(b.parts) + 1)}
    path.add(lca)
    return path


def check_left_contiguity(p: LstagPair, c: Correspondence) -> list[Diagnostic]:
    """The correspondence image must form one connected region of the right tree."""
    diags: list[Diagnostic] = []
    for left, right in c.pairs:
        if not p.left_tree.has_address(left):
            diags.append(
                Diagnostic("AddressNotFound", f"correspondence source {left} missing from left tree", p.name)
            )
        if not p.right_tree.has_address(right):
            diags.append(
                Diagnostic("AddressNotFound", f"correspondence target {right} missing from right tree", p.name)
            )
    if diags:
        return diags
    image = set(c.image)
    missing: set[GornAddress] = set()
    addrs = sorted(image)
    for i, a in enumerate(addrs):
        for b in addrs[i + 1 :]:
            missing |= _dominance_path(a, b) - image
    if missing:
        segment = ", ".join(str(a) for a in sorted(missing))
        diags.append(
            Diagnostic(
                "Discontiguous",
                f"left element corresponds to discontinuous parts of the right element; "
                f"excised segment at {segment}",
                p.name,
            )
        )
    return diags


def check_lexical_contiguity(t: SyntaxTree) -> list[Diagnostic]:
    """The terminal anchors must form one uninterrupted block on the frontier."""
    frontier = [(a, t.node_at(a)) for a in t.frontier]
    terminal_positions = [i for i, (_, k) in enumerate(frontier) if isinstance(k, Terminal)]
    if len(terminal_positions) < 2:
        return []
    first, last = terminal_positions[0], terminal_positions[-1]
    gaps = [
        frontier[i][0]
        for i in range(first + 1, last)
        if isinstance(frontier[i][1], (SubstitutionSlot, Foot))
    ]
    if not gaps:
        return []
    where = ", ".join(str(a) for a in gaps)
    return [
        Diagnostic(
            "LexicallyDiscontiguous",
            f"lexical string is interrupted by open positions at {where}",
        )
    ]
