"""Update-order equivalence for sequential systems over an undirected graph Y.

Two permutations are adjacent in the update graph U(Y) when they differ by
swapping neighbouring entries that are not joined by an edge of Y; such a
swap composes two commuting local maps, so every component of U(Y) yields a
single SDS map.  Components are in bijection with the acyclic orientations
of Y, each permutation orienting an edge from its earlier to its later
endpoint.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

import networkx as nx

from .errors import BudgetExceeded, GraphNotSymmetric, NotPermutation

MAX_UPDATE_GRAPH_VERTICES = 8
MAX_ORIENTATION_EDGES = 20


@dataclass(frozen=True)
class AcyclicOrientation:
    """Directed version of Y; ``arcs`` holds one (tail, head) pair per edge."""

    arcs: frozenset[tuple[Hashable, Hashable]]

    def sorted_arcs(self) -> list[tuple]:
        return sorted(self.arcs)

    def __str__(self):
        return ", ".join(f"{u}->{v}" for u, v in self.sorted_arcs())


@dataclass(frozen=True)
class UpdateGraphSummary:
    permutation_count: int
    components: tuple[tuple[tuple, ...], ...]
    orientations: tuple[AcyclicOrientation, ...]
    acyclic_count: int

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def representatives(self) -> tuple[tuple, ...]:
        return tuple(c[0] for c in self.components)

    @property
    def bijective(self) -> bool:
        return self.component_count == self.acyclic_count and len(set(self.orientations)) == self.acyclic_count


def simple_graph(Y: nx.Graph) -> nx.Graph:
    """Copy of Y without self-loops; rejects directed input."""
    if Y.is_directed():
        if any(not Y.has_edge(v, u) for u, v in Y.edges() if u != v):
            raise GraphNotSymmetric("update-order analysis needs a symmetric dependency graph")
        Y = Y.to_undirected()
    G = nx.Graph()
    G.add_nodes_from(Y.nodes())
    G.add_edges_from((u, v) for u, v in Y.edges() if u != v)
    return G


def _check_perm(Y: nx.Graph, perm: Sequence) -> tuple:
    perm = tuple(perm)
    if len(perm) != Y.number_of_nodes() or set(perm) != set(Y.nodes()):
        raise NotPermutation(f"{perm} is not a permutation of the vertices {sorted(Y.nodes())}")
    return perm


def induced_orientation(Y: nx.Graph, perm: Sequence) -> AcyclicOrientation:
    Y = simple_graph(Y)
    perm = _check_perm(Y, perm)
    pos = {v: k for k, v in enumerate(perm)}
    return AcyclicOrientation(frozenset((u, v) if pos[u] < pos[v] else (v, u) for u, v in Y.edges()))


def same_sds(Y: nx.Graph, sigma: Sequence, tau: Sequence) -> bool:
    return induced_orientation(Y, sigma) == induced_orientation(Y, tau)


def _is_acyclic(nodes, arcs) -> bool:
    indeg = {v: 0 for v in nodes}
    out: dict = {v: [] for v in nodes}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    queue = deque(v for v in nodes if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == len(indeg)


def enumerate_acyclic_orientations(Y: nx.Graph) -> list[AcyclicOrientation]:
    """All acyclic orientations; bit k of the counter reverses the k-th sorted edge."""
    Y = simple_graph(Y)
    edges = sorted(tuple(sorted(e)) for e in Y.edges())
    if len(edges) > MAX_ORIENTATION_EDGES:
        raise BudgetExceeded(f"{len(edges)} edges exceed the limit of {MAX_ORIENTATION_EDGES}")
    out = []
    for mask in range(2 ** len(edges)):
        arcs = [(v, u) if mask >> k & 1 else (u, v) for k, (u, v) in enumerate(edges)]
        if _is_acyclic(Y.nodes(), arcs):
            out.append(AcyclicOrientation(frozenset(arcs)))
    return out


def update_graph_neighbors(Y: nx.Graph, perm: tuple):
    for k in range(len(perm) - 1):
        a, b = perm[k], perm[k + 1]
        if not Y.has_edge(a, b):
            yield perm[:k] + (b, a) + perm[k + 2 :]


def update_graph_components(Y: nx.Graph) -> UpdateGraphSummary:
    """Connected components of U(Y), generated implicitly from sorted permutations."""
    Y = simple_graph(Y)
    nodes = sorted(Y.nodes())
    if len(nodes) > MAX_UPDATE_GRAPH_VERTICES:
        raise BudgetExceeded(f"{len(nodes)}! permutations exceed the limit of {MAX_UPDATE_GRAPH_VERTICES}!")
    seen: set[tuple] = set()
    components = []
    for start in itertools.permutations(nodes):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            for nb in update_graph_neighbors(Y, queue.popleft()):
                if nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    queue.append(nb)
        components.append(tuple(sorted(comp)))
    orientations = tuple(induced_orientation(Y, c[0]) for c in components)
    for comp in components:
        assert all(induced_orientation(Y, s) == induced_orientation(Y, comp[0]) for s in comp)
    return UpdateGraphSummary(
        math.factorial(len(nodes)),
        tuple(components),
        orientations,
        len(enumerate_acyclic_orientations(Y)),
    )


def count_inequivalent(Y: nx.Graph) -> int:
    """Upper bound on the number of distinct SDS maps over all permutation orders."""
    return len(enumerate_acyclic_orientations(Y))


def orientation_representative(Y: nx.Graph, orientation: AcyclicOrientation) -> tuple:
    """A permutation inducing ``orientation`` (a topological order)."""
    Y = simple_graph(Y)
    D = nx.DiGraph()
    D.add_nodes_from(Y.nodes())
    D.add_edges_from(orientation.arcs)
    return tuple(nx.lexicographical_topological_sort(D))
