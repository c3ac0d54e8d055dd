"""
The gluing primitive behind every diagram evaluation.

A picture is a set of perfect matchings on named nodes (the strings inside
each disc) plus wires identifying nodes of different discs. Walking strings
and wires from each external node yields the pairing of the external nodes;
whatever is left over consists of closed loops.
"""
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from ..exceptions import ArgumentError

Node = Hashable


def glue(
    matchings: Iterable[Iterable[Tuple[Node, Node]]],
    wires: Iterable[Tuple[Node, Node]],
    externals: Sequence[Node],
) -> Tuple[List[Tuple[int, int]], int]:
    """
    Glue matchings along wires.

    Args:
        matchings: Pairs of nodes; every node lies in exactly one pair
        wires: Node identifications; every non-external node lies in exactly one wire
        externals: Nodes left open, in output order

    Returns:
        (pairs, loops): pairs as sorted 1-based positions into externals, and
        the number of closed loops

    Raises:
        ArgumentError: if the data is not a valid gluing
    """
    match: Dict[Node, Node] = {}
    for pairs in matchings:
        for a, b in pairs:
            if a in match or b in match or a == b:
                raise ArgumentError(f"Node used twice in matchings: {a!r}, {b!r}")
            match[a] = b
            match[b] = a
    wire: Dict[Node, Node] = {}
    for a, b in wires:
        if a in wire or b in wire or a == b:
            raise ArgumentError(f"Node used twice in wires: {a!r}, {b!r}")
        wire[a] = b
        wire[b] = a
    position = {node: i + 1 for i, node in enumerate(externals)}
    if len(position) != len(externals):
        raise ArgumentError("Duplicate external nodes")
    for node in match:
        if (node in position) == (node in wire):
            raise ArgumentError(f"Node {node!r} must be either external or wired")
    if any(node not in match for node in wire) or any(node not in match for node in position):
        raise ArgumentError("Wired or external node without a string")

    visited = set()
    pairs: List[Tuple[int, int]] = []
    for start in externals:
        if start in visited:
            continue
        visited.add(start)
        cur = match[start]
        while cur not in position:
            visited.add(cur)
            nxt = wire[cur]
            visited.add(nxt)
            cur = match[nxt]
        visited.add(cur)
        i, j = position[start], position[cur]
        pairs.append((min(i, j), max(i, j)))

    loops = 0
    for node in match:
        if node in visited:
            continue
        loops += 1
        cur = node
        while cur not in visited:
            visited.add(cur)
            other = match[cur]
            visited.add(other)
            cur = wire[other]
    return sorted(pairs), loops


def count_cycles(first: Iterable[Tuple[int, int]], second: Iterable[Tuple[int, int]]) -> int:
    """
    Number of cycles in the union of two perfect matchings of one point set.

    Raises:
        ArgumentError: if the point sets differ
    """
    a = {}
    for i, j in first:
        a[i], a[j] = j, i
    b = {}
    for i, j in second:
        b[i], b[j] = j, i
    if set(a) != set(b):
        raise ArgumentError("Matchings are on different point sets")
    seen = set()
    cycles = 0
    for start in a:
        if start in seen:
            continue
        cycles += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            nxt = a[cur]
            seen.add(nxt)
            cur = b[nxt]
    return cycles
