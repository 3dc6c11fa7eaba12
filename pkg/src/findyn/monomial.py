"""Fixed-point criterion for Boolean monomial systems via loop numbers.

The loop number of a strongly connected digraph is the gcd of the lengths
of its closed walks.  With BFS levels from any root, it equals the gcd of
``level(u) + 1 - level(v)`` over all edges u -> v inside the component.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import networkx as nx

from .errors import NotMonomial
from .system import System


@dataclass(frozen=True)
class LoopNumberReport:
    """Per strongly connected component: (vertices, loop number).

    Components without any internal edge carry loop number 0 and do not
    count towards the verdict.
    """

    components: tuple[tuple[frozenset[int], int], ...]
    fixed_points_only: bool

    def format(self) -> str:
        lines = []
        for verts, ln in self.components:
            lines.append("{" + ",".join(map(str, sorted(verts))) + "}" + f" loop number {ln}")
        lines.append(f"fixed points only: {'yes' if self.fixed_points_only else 'no'}")
        return "\n".join(lines)


def is_monomial_system(S: System) -> bool:
    """True iff p = 2 and every local is a constant or a single product of variables."""
    if S.p != 2:
        return False
    return all(len(f) <= 1 for f in S.locals)


def loop_number(graph: nx.DiGraph, component, root=None) -> int:
    """Loop number of the strongly connected ``component`` of ``graph``."""
    comp = set(component)
    root = min(comp) if root is None else root
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in graph.successors(u):
            if v in comp and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in comp:
        for v in graph.successors(u):
            if v in comp:
                g = math.gcd(g, abs(level[u] + 1 - level[v]))
    return g


def loop_numbers(S: System) -> LoopNumberReport:
    if not is_monomial_system(S):
        raise NotMonomial("loop-number criterion applies to Boolean monomial systems only")
    graph = S.dependency_graph()
    comps = []
    for comp in nx.strongly_connected_components(graph):
        comps.append((frozenset(comp), loop_number(graph, comp)))
    comps.sort(key=lambda c: min(c[0]))
    verdict = all(ln == 1 for _, ln in comps if ln != 0)
    return LoopNumberReport(tuple(comps), verdict)


def fixed_point_criterion(S: System) -> bool:
    """True iff every periodic state of the parallel system is a fixed point."""
    return loop_numbers(S).fixed_points_only
