"""Deterministic JSON and DOT renderings of trees, structures, and derivations.

Shared right-side nodes are drawn once with one incoming edge per parent,
so the tangled shape of a coordination derivation is visible directly in
the graph output.  Nothing here depends on time, locale, or hashing order.
"""

from __future__ import annotations

import json

from .gorn import ROOT, GornAddress
from .sharing import DerivationGraph, DerivedStructure, derivation_projections
from .tag import DerivationTree, derivation_to_json_obj
from .trees import Foot, Interior, SubstitutionSlot, SyntaxTree, Terminal, format_tree


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _kind_label(kind) -> str:
    if isinstance(kind, Interior):
        return kind.symbol
    if isinstance(kind, SubstitutionSlot):
        return kind.symbol + "↓"
    if isinstance(kind, Foot):
        return kind.symbol + "*"
    return kind.token


def _tree_node_id(prefix: str, addr: GornAddress) -> str:
    if not addr.parts:
        return prefix
    return prefix + "_" + "_".join(str(k) for k in addr.parts)


def tree_dot_lines(tree: SyntaxTree, prefix: str, indent: str = "  ") -> list[str]:
    lines = []
    for addr, kind in tree.items():
        shape = "box" if isinstance(kind, Terminal) else "plaintext"
        lines.append(
            f'{indent}"{_tree_node_id(prefix, addr)}" [label="{_esc(_kind_label(kind))}" shape={shape}];'
        )
    for addr, _ in tree.items():
        for child in tree.children(addr):
            lines.append(
                f'{indent}"{_tree_node_id(prefix, addr)}" -> "{_tree_node_id(prefix, child)}";'
            )
    return lines


def tree_to_dot(tree: SyntaxTree, name: str = "tree") -> str:
    body = "\n".join(tree_dot_lines(tree, "n"))
    return f'digraph "{_esc(name)}" {{\n{body}\n}}\n'


def derivation_tree_to_dot(d: DerivationTree) -> str:
    lines: list[str] = []

    def walk(node: DerivationTree, node_id: str) -> None:
        lines.append(f'  "{node_id}" [label="{_esc(node.root)}" shape=plaintext];')
        for addr, child in node.edges:
            child_id = node_id + "_" + str(addr).replace(".", "_")
            lines.append(f'  "{node_id}" -> "{child_id}" [label="{addr}"];')
            walk(child, child_id)

    walk(d, "d")
    return "digraph derivation {\n" + "\n".join(lines) + "\n}\n"


def derivation_graph_to_dot(g: DerivationGraph) -> str:
    lines = [f'  "{_esc(i)}" [label="{_esc(label)}" shape=plaintext];' for i, label in g.nodes]
    lines.extend(
        f'  "{_esc(parent)}" -> "{_esc(child)}" [label="{addr}"];' for parent, addr, child in g.edges
    )
    return "digraph derivation_graph {\n" + "\n".join(lines) + "\n}\n"


def derivation_graph_to_json_obj(g: DerivationGraph) -> dict:
    return {
        "root": g.root,
        "nodes": [{"id": i, "label": label} for i, label in g.nodes],
        "edges": [{"from": parent, "addr": addr, "to": child} for parent, addr, child in g.edges],
    }


def structure_to_json_obj(s: DerivedStructure) -> dict:
    left_proj, right_proj = derivation_projections(s.history, s.root)
    return {
        "root": s.root,
        "left": format_tree(s.left_tree),
        "right": {
            "spine": format_tree(s.right_spine),
            "fragments": [
                {
                    "id": f.guest_id,
                    "name": f.name,
                    "tree": format_tree(f.tree),
                    "parents": [str(a) for a in f.parents],
                }
                for f in s.fragments
            ],
        },
        "liveLinks": [
            {"left": str(g.left_addr), "right": [str(a) for a in g.right_addrs]}
            for g in s.live_links
        ],
        "history": [
            {
                "operation": r.operation,
                "guest": r.guest,
                "id": r.guest_id,
                "left": {"owner": r.left_site.owner, "addr": str(r.left_site.addr)},
                "right": [{"owner": site.owner, "addr": str(site.addr)} for site in r.right_sites],
            }
            for r in s.history
        ],
        "projections": {
            "left": derivation_to_json_obj(left_proj),
            "right": derivation_graph_to_json_obj(right_proj),
        },
    }


def to_json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def structure_to_dot(s: DerivedStructure) -> str:
    lines: list[str] = ["digraph derived {"]
    lines.append('  subgraph cluster_left {')
    lines.append('    label="left (constituency)";')
    lines.extend(tree_dot_lines(s.left_tree, "L", indent="    "))
    lines.append("  }")
    lines.append('  subgraph cluster_right {')
    lines.append('    label="right (dependency)";')
    lines.extend(tree_dot_lines(s.right_spine, "R", indent="    "))
    for idx, frag in enumerate(s.fragments):
        prefix = f"F{idx}"
        lines.extend(tree_dot_lines(frag.tree, prefix, indent="    "))
        for parent in frag.parents:
            lines.append(
                f'    "{_tree_node_id("R", parent)}" -> "{_tree_node_id(prefix, ROOT)}" [style=dashed];'
            )
    lines.append("  }")
    left_proj, right_proj = derivation_projections(s.history, s.root)
    lines.append('  subgraph cluster_derivation_left {')
    lines.append('    label="left derivation (tree)";')
    for raw in derivation_tree_to_dot(left_proj).splitlines()[1:-1]:
        lines.append("  " + raw.replace('"d"', '"dl"').replace('"d_', '"dl_'))
    lines.append("  }")
    lines.append('  subgraph cluster_derivation_right {')
    lines.append('    label="right derivation (graph)";')
    for node_id, label in right_proj.nodes:
        lines.append(f'    "dr:{_esc(node_id)}" [label="{_esc(label)}" shape=plaintext];')
    for parent, addr, child in right_proj.edges:
        lines.append(f'    "dr:{_esc(parent)}" -> "dr:{_esc(child)}" [label="{addr}"];')
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def derived_tree_with_derivation_to_dot(tree: SyntaxTree, d: DerivationTree) -> str:
    lines: list[str] = ["digraph derived {"]
    lines.append('  subgraph cluster_tree {')
    lines.append('    label="derived tree";')
    lines.extend(tree_dot_lines(tree, "T", indent="    "))
    lines.append("  }")
    lines.append('  subgraph cluster_derivation {')
    lines.append('    label="derivation";')
    for raw in derivation_tree_to_dot(d).splitlines()[1:-1]:
        lines.append("  " + raw)
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
