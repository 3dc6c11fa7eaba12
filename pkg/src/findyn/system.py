"""Finite dynamical systems: local functions, dependency graph, global maps.

A configuration is a tuple of n residues.  Configurations are numbered in
little-endian lexicographic order (x1 varies fastest):
``index = c1 + c2*p + ... + cn*p^(n-1)``.  Every table, phase space and
Markov row in the package uses this numbering.

An update mode is either the string ``"parallel"`` or an update word, a
nonempty sequence of 1-based variable indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import networkx as nx
import numpy as np

from .errors import ArityMismatch, BudgetExceeded, GraphNotSymmetric, IndexOutOfRange
from .gf import check_modulus
from .multipoly import MPoly, mp_eval, mp_eval_many, mp_support

DEFAULT_BUDGET = 2**20

UpdateWord = tuple[int, ...]
Mode = Union[str, Sequence[int]]
Configuration = tuple[int, ...]


@dataclass(frozen=True)
class System:
    p: int
    n: int
    locals: tuple[MPoly, ...]
    edges: frozenset[tuple[int, int]] = field(init=False, compare=False)

    def __post_init__(self):
        edges = frozenset((i, j) for j, f in enumerate(self.locals, start=1) for i in mp_support(f))
        object.__setattr__(self, "edges", edges)

    def dependency_graph(self) -> nx.DiGraph:
        """Directed graph with an edge i -> j iff x_i occurs in f_j (self-loops kept)."""
        g = nx.DiGraph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(sorted(self.edges))
        return g

    @property
    def is_symmetric(self) -> bool:
        return all((j, i) in self.edges for i, j in self.edges)

    def undirected_graph(self) -> nx.Graph:
        """The simple undirected graph Y: self-loops dropped, direction forgotten.

        Raises GraphNotSymmetric when the dependency relation is not symmetric.
        """
        if not self.is_symmetric:
            raise GraphNotSymmetric("dependency graph is not symmetric")
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from((i, j) for i, j in self.edges if i < j)
        return g

    def __str__(self):
        return "\n".join(f"f{i} = {f}" for i, f in enumerate(self.locals, start=1))


def build_system(p: int, locals: Sequence[MPoly]) -> System:
    check_modulus(p)
    locals = tuple(locals)
    if not locals:
        raise ArityMismatch("a system needs at least one local function")
    n = len(locals)
    for i, f in enumerate(locals, start=1):
        if f.p != p:
            raise ArityMismatch(f"local {i} is over GF({f.p}), system is over GF({p})")
        if f.n != n:
            raise ArityMismatch(f"local {i} has {f.n} variables, system has {n}")
    return System(p, n, locals)


# ---------------------------------------------------------------------------
# configurations


def encode(config: Sequence[int], p: int) -> int:
    idx = 0
    for c in reversed(config):
        idx = idx * p + int(c)
    return idx


def decode(index: int, p: int, n: int) -> Configuration:
    out = []
    for _ in range(n):
        index, r = divmod(index, p)
        out.append(r)
    return tuple(out)


def check_budget(p: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    size = p**n
    if size > budget:
        raise BudgetExceeded(f"{p}^{n} = {size} configurations exceed the budget of {budget}")
    return size


def all_states(p: int, n: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Array of shape (p^n, n); row k is the configuration with index k."""
    size = check_budget(p, n, budget)
    idx = np.arange(size, dtype=np.int64)
    return np.stack([(idx // p**i) % p for i in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)


def encode_many(states: np.ndarray, p: int) -> np.ndarray:
    weights = p ** np.arange(states.shape[1], dtype=np.int64)
    return states @ weights


def check_config(S: System, c: Sequence[int]) -> Configuration:
    if len(c) != S.n:
        raise ArityMismatch(f"configuration has {len(c)} entries, system has {S.n} variables")
    return tuple(int(v) % S.p for v in c)


def check_word(word: Sequence[int], n: int) -> UpdateWord:
    word = tuple(int(i) for i in word)
    if not word:
        raise IndexOutOfRange("update word must be nonempty")
    for i in word:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")
    return word


def is_parallel(mode: Mode) -> bool:
    return isinstance(mode, str) and mode == "parallel"


# ---------------------------------------------------------------------------
# global maps


def step_parallel(S: System, c: Sequence[int]) -> Configuration:
    c = check_config(S, c)
    return tuple(mp_eval(f, c) for f in S.locals)


def step_word(S: System, w: Sequence[int], c: Sequence[int]) -> Configuration:
    """Apply the local maps in word order, each rewriting only its own coordinate."""
    w = check_word(w, S.n)
    state = list(check_config(S, c))
    for i in w:
        state[i - 1] = mp_eval(S.locals[i - 1], state)
    return tuple(state)


def step(S: System, mode: Mode, c: Sequence[int]) -> Configuration:
    if is_parallel(mode):
        return step_parallel(S, c)
    if isinstance(mode, str):
        raise ValueError(f"unknown update mode {mode!r}")
    return step_word(S, mode, c)


def apply_many(S: System, mode: Mode, states: np.ndarray) -> np.ndarray:
    """Image of every row of ``states`` under the global map."""
    if is_parallel(mode):
        return np.stack([mp_eval_many(f, states) for f in S.locals], axis=1)
    if isinstance(mode, str):
        raise ValueError(f"unknown update mode {mode!r}")
    out = np.array(states, dtype=np.int64, copy=True)
    for i in check_word(mode, S.n):
        out[:, i - 1] = mp_eval_many(S.locals[i - 1], out)
    return out


def materialize_global(S: System, mode: Mode = "parallel", budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Successor table: entry k is the index of the image of configuration k."""
    states = all_states(S.p, S.n, budget)
    return encode_many(apply_many(S, mode, states), S.p)
