"""Phase spaces of deterministic systems: cycles, transients, trees, reachability."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .system import (
    DEFAULT_BUDGET,
    Configuration,
    Mode,
    System,
    check_budget,
    check_config,
    decode,
    materialize_global,
    step,
)


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    """Functional digraph on p^n configurations with its decomposition.

    ``period[k]`` is the length of the cycle state k eventually enters,
    ``transient[k]`` the number of steps needed to reach it (0 on cycles) and
    ``parent[k]`` the successor of a transient state (-1 for periodic states),
    i.e. the parent in the rooted tree hanging off the cycle.  Cycles start
    at their smallest index.
    """

    p: int
    n: int
    successor: np.ndarray
    cycles: tuple[tuple[int, ...], ...]
    period: np.ndarray
    transient: np.ndarray
    parent: np.ndarray

    @property
    def size(self) -> int:
        return len(self.successor)

    @property
    def periodic(self) -> np.ndarray:
        return self.transient == 0

    def fixed_point_indices(self) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.successor == np.arange(self.size))]

    def config(self, k: int) -> Configuration:
        return decode(int(k), self.p, self.n)

    def cycle_lengths(self) -> Counter:
        return Counter(len(c) for c in self.cycles)

    def edges(self):
        return [(k, int(v)) for k, v in enumerate(self.successor)]


def decompose(successor: np.ndarray, p: int, n: int) -> PhaseSpace:
    """Cycle/transient decomposition of a successor table by pointer chasing."""
    succ = np.asarray(successor, dtype=np.int64)
    size = len(succ)
    s = succ.tolist()
    stamp = [-1] * size
    on_cycle = [False] * size
    cycles = []
    for start in range(size):
        if stamp[start] != -1:
            continue
        v = start
        while stamp[v] == -1:
            stamp[v] = start
            v = s[v]
        if stamp[v] == start:
            cyc = [v]
            on_cycle[v] = True
            u = s[v]
            while u != v:
                cyc.append(u)
                on_cycle[u] = True
                u = s[u]
            k = cyc.index(min(cyc))
            cycles.append(tuple(cyc[k:] + cyc[:k]))
    cycles.sort(key=lambda c: c[0])

    preds: list[list[int]] = [[] for _ in range(size)]
    for u in range(size):
        if not on_cycle[u]:
            preds[s[u]].append(u)
    period = [0] * size
    transient = [0] * size
    parent = [-1] * size
    for cyc in cycles:
        frontier = list(cyc)
        for v in cyc:
            period[v] = len(cyc)
        while frontier:
            nxt = []
            for v in frontier:
                for u in preds[v]:
                    period[u] = period[v]
                    transient[u] = transient[v] + 1
                    parent[u] = v
                    nxt.append(u)
            frontier = nxt
    return PhaseSpace(
        p,
        n,
        succ,
        tuple(cycles),
        np.array(period, dtype=np.int64),
        np.array(transient, dtype=np.int64),
        np.array(parent, dtype=np.int64),
    )


def enumerate_phase_space(S: System, mode: Mode = "parallel", budget: int = DEFAULT_BUDGET) -> PhaseSpace:
    return decompose(materialize_global(S, mode, budget), S.p, S.n)


def fixed_points(S: System, mode: Mode = "parallel", budget: int = DEFAULT_BUDGET) -> list[Configuration]:
    table = materialize_global(S, mode, budget)
    return [decode(int(k), S.p, S.n) for k in np.flatnonzero(table == np.arange(len(table)))]


def reachable(
    S: System, mode: Mode, c: Sequence[int], target: Sequence[int], budget: int = DEFAULT_BUDGET
) -> tuple[bool, int | None]:
    """Does iteration from ``c`` hit ``target``?  Returns (found, first hitting time)."""
    check_budget(S.p, S.n, budget)
    c = check_config(S, c)
    target = check_config(S, target)
    seen = set()
    t = 0
    while c not in seen:
        if c == target:
            return True, t
        seen.add(c)
        c = step(S, mode, c)
        t += 1
    return False, None


def is_invertible(S: System, mode: Mode = "parallel", budget: int = DEFAULT_BUDGET) -> bool:
    table = materialize_global(S, mode, budget)
    return len(np.unique(table)) == len(table)


# ---------------------------------------------------------------------------
# transient trees


def tree_codes(ps: PhaseSpace) -> dict[int, int]:
    """Canonical code of the rooted transient tree at each periodic state.

    A node's code is the interned id of the sorted tuple of its children's
    codes, so two trees in the same phase space are isomorphic iff their
    codes are equal.
    """
    children: list[list[int]] = [[] for _ in range(ps.size)]
    for u, v in enumerate(ps.parent.tolist()):
        if v >= 0:
            children[v].append(u)
    intern: dict[tuple[int, ...], int] = {}
    code = [0] * ps.size
    for u in np.argsort(-ps.transient, kind="stable").tolist():
        key = tuple(sorted(code[c] for c in children[u]))
        code[u] = intern.setdefault(key, len(intern))
    return {int(k): code[k] for k in np.flatnonzero(ps.periodic)}


def tree_sizes(ps: PhaseSpace) -> dict[int, int]:
    root = np.arange(ps.size)
    par = ps.parent.copy()
    # jump pointers until every node points at its periodic root
    while True:
        nxt = np.where(par[root] >= 0, par[root], root)
        if np.array_equal(nxt, root):
            break
        root = nxt
    counts = Counter(root.tolist())
    return {int(k): counts[int(k)] for k in np.flatnonzero(ps.periodic)}

