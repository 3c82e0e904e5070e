"""
Sunburst hierarchy: one ring per dependency depth, one tree per component root.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping

from ..errors import StatsError
from ..lexicon.model import Lexicon


OTHER_LABEL = "other"


@dataclass
class SunburstNode:
    """
    ``own`` is the entry's own count; ``value`` adds every child drawn below
    it. Collapsed subtrees move to the root's "other" leaf, so root values
    still sum to N.
    """
    entry_id: str
    label: str
    value: int
    own: int
    color_key: str
    children: List["SunburstNode"] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "entry_id": self.entry_id,
            "label": self.label,
            "value": self.value,
            "own": self.own,
            "color_key": self.color_key,
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SunburstNode":
        return cls(
            entry_id=data["entry_id"],
            label=data["label"],
            value=int(data["value"]),
            own=int(data["own"]),
            color_key=data["color_key"],
            children=[cls.from_dict(c) for c in data.get("children", [])],
        )

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()


def _ordered(nodes: List[SunburstNode]) -> List[SunburstNode]:
    return sorted(nodes, key=lambda n: (-n.value, n.label == OTHER_LABEL, n.entry_id))


def sunburst_data(
    entry_counts: Mapping[str, int],
    lexicon: Lexicon,
    threshold: float = 0.005,
    scope: str = "",
) -> List[SunburstNode]:
    """
    Build the forest for one scope.

    Non-root entries whose subtree share of N falls below ``threshold`` are
    folded, dependents and all, into a single "other" leaf under their root.
    Roots are always kept. Siblings are ordered by subtree total, largest
    first.

    Raises:
        StatsError: N = 0 in scope
    """
    counts = {e: int(n) for e, n in entry_counts.items() if n}
    total = sum(counts.values())
    for entry_id in counts:
        lexicon.entry(entry_id)
    if total == 0:
        raise StatsError("no model mentions; sunburst undefined", scope or None)

    children: Dict[str, List[str]] = {}
    for entry in lexicon.entries.values():
        if entry.parent is not None:
            children.setdefault(entry.parent, []).append(entry.entry_id)

    subtree: Dict[str, int] = {}

    def subtotal(entry_id: str) -> int:
        if entry_id not in subtree:
            subtree[entry_id] = counts.get(entry_id, 0) + sum(subtotal(c) for c in children.get(entry_id, ()))
        return subtree[entry_id]

    def build(entry_id: str, root: str) -> SunburstNode:
        own = counts.get(entry_id, 0)
        node = SunburstNode(entry_id, entry_id, own, own, root)
        for child in children.get(entry_id, ()):
            value = subtotal(child)
            if value == 0:
                continue
            if value / total < threshold:
                collapsed[root] = collapsed.get(root, 0) + value
            else:
                node.children.append(build(child, root))
        node.children = _ordered(node.children)
        node.value = own + sum(c.value for c in node.children)
        return node

    collapsed: Dict[str, int] = {}
    forest = []
    for root in lexicon.roots():
        if subtotal(root) == 0:
            continue
        tree = build(root, root)
        if collapsed.get(root):
            # every collapsed subtree below this root lands in one leaf
            tree.children = _ordered(tree.children + [
                SunburstNode(f"{root}/{OTHER_LABEL}", OTHER_LABEL, collapsed[root], collapsed[root], root)
            ])
            tree.value += collapsed[root]
        forest.append(tree)
    return _ordered(forest)


def forest_total(forest: List[SunburstNode]) -> int:
    return sum(n.value for n in forest)
