"""Stochastic finite dynamical systems and their Markov chains.

Two flavours are supported:

* :class:`SFDS` - a finite collection of deterministic systems (each with its
  own update mode), one of which is drawn at every step.
* :class:`PFDS` - every variable carries a list of candidate local functions
  and draws one independently each time it is updated.  In word mode the
  draw happens at every mini-step.

Transition probabilities are assembled with :class:`fractions.Fraction` so
that the superposition of member maps is exact; floats only appear in the
stationary solver and in simulation.

Random numbers come from numpy's PCG64 bit generator seeded with the user
seed.  Draws are consumed in a fixed pattern: SFDS uses one uniform per
step; parallel PFDS uses one uniform per variable per step, in variable
order; word PFDS uses one uniform per mini-step, in word order.  A draw u
selects the first choice whose cumulative probability exceeds u.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import ArityMismatch, ConvergenceFailure, SpecSemanticError
from .multipoly import MPoly, mp_eval_many
from .system import (
    DEFAULT_BUDGET,
    Mode,
    System,
    all_states,
    check_budget,
    check_word,
    encode,
    encode_many,
    is_parallel,
    materialize_global,
    step,
)

PROB_TOL = 1e-12
SIMULATION_TABLE_BUDGET = 2**16


def _normalize_mode(mode: Mode, n: int) -> Mode:
    return "parallel" if is_parallel(mode) else check_word(mode, n)


def _check_probs(probs: Sequence[Fraction], what: str) -> None:
    if any(q < 0 or q > 1 for q in probs):
        raise SpecSemanticError(f"{what}: probabilities must lie in [0, 1]")
    if abs(float(sum(probs)) - 1.0) > PROB_TOL:
        raise SpecSemanticError(f"{what}: probabilities sum to {float(sum(probs))}, not 1")


@dataclass(frozen=True)
class SFDS:
    """Random choice among deterministic systems: members are (system, mode, probability)."""

    members: tuple[tuple[System, Mode, Fraction], ...]

    def __post_init__(self):
        if not self.members:
            raise SpecSemanticError("an SFDS needs at least one member")
        p, n = self.members[0][0].p, self.members[0][0].n
        norm = []
        for S, mode, q in self.members:
            if (S.p, S.n) != (p, n):
                raise ArityMismatch("all members must share the field and the variable count")
            norm.append((S, _normalize_mode(mode, n), Fraction(q)))
        object.__setattr__(self, "members", tuple(norm))
        _check_probs([q for *_, q in norm], "SFDS members")

    @property
    def p(self) -> int:
        return self.members[0][0].p

    @property
    def n(self) -> int:
        return self.members[0][0].n


@dataclass(frozen=True)
class PFDS:
    """Per-variable function distributions; ``choices[i]`` lists (f, probability) for x_{i+1}."""

    p: int
    n: int
    choices: tuple[tuple[tuple[MPoly, Fraction], ...], ...]
    mode: Mode = "parallel"

    def __post_init__(self):
        if len(self.choices) != self.n:
            raise ArityMismatch(f"{len(self.choices)} choice lists for {self.n} variables")
        norm = []
        for i, opts in enumerate(self.choices, start=1):
            if not opts:
                raise SpecSemanticError(f"variable {i} has no local functions")
            for f, _ in opts:
                if (f.p, f.n) != (self.p, self.n):
                    raise ArityMismatch(f"a choice for variable {i} has the wrong field or arity")
            opts = tuple((f, Fraction(q)) for f, q in opts)
            _check_probs([q for _, q in opts], f"variable {i}")
            norm.append(opts)
        object.__setattr__(self, "choices", tuple(norm))
        object.__setattr__(self, "mode", _normalize_mode(self.mode, self.n))

    @classmethod
    def from_system(cls, S: System, mode: Mode = "parallel") -> PFDS:
        return cls(S.p, S.n, tuple(((f, Fraction(1)),) for f in S.locals), mode)


StochasticSystem = SFDS | PFDS


# ---------------------------------------------------------------------------
# exact transition matrix


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic matrix stored as exact sparse rows."""

    p: int
    n: int
    rows: tuple[dict[int, Fraction], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, uv: tuple[int, int]) -> Fraction:
        u, v = uv
        return self.rows[u].get(v, Fraction(0))

    def row_sums(self) -> list[Fraction]:
        return [sum(r.values(), Fraction(0)) for r in self.rows]

    def to_sparse(self) -> sp.csr_matrix:
        data, ri, ci = [], [], []
        for u, row in enumerate(self.rows):
            for v, q in row.items():
                ri.append(u)
                ci.append(v)
                data.append(float(q))
        return sp.csr_matrix((data, (ri, ci)), shape=(self.size, self.size))

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        strip = lambda rows: [{k: v for k, v in r.items() if v} for r in rows]  # noqa: E731
        return (self.p, self.n) == (other.p, other.n) and strip(self.rows) == strip(other.rows)


def permutation_matrix(table: np.ndarray, p: int, n: int) -> TransitionMatrix:
    """0/1 matrix of a deterministic map given as a successor table."""
    return TransitionMatrix(p, n, tuple({int(v): Fraction(1)} for v in table))


def _choice_tables(SS: PFDS, states: np.ndarray) -> list[list[np.ndarray]]:
    return [[mp_eval_many(f, states) for f, _ in opts] for opts in SS.choices]


def transition_matrix(SS: StochasticSystem, budget: int = DEFAULT_BUDGET) -> TransitionMatrix:
    if isinstance(SS, SFDS):
        size = check_budget(SS.p, SS.n, budget)
        rows: list[dict[int, Fraction]] = [dict() for _ in range(size)]
        for S, mode, q in SS.members:
            if not q:
                continue
            for u, v in enumerate(materialize_global(S, mode, budget).tolist()):
                rows[u][v] = rows[u].get(v, Fraction(0)) + q
        return TransitionMatrix(SS.p, SS.n, tuple(rows))

    p, n = SS.p, SS.n
    states = all_states(p, n, budget)
    tables = _choice_tables(SS, states)
    weights = [p**i for i in range(n)]
    rows = []
    if is_parallel(SS.mode):
        for u in range(len(states)):
            dist = {0: Fraction(1)}
            for i, opts in enumerate(SS.choices):
                marg: dict[int, Fraction] = {}
                for k, (_, q) in enumerate(opts):
                    val = int(tables[i][k][u])
                    marg[val] = marg.get(val, Fraction(0)) + q
                dist = {
                    idx + val * weights[i]: pr * q for idx, pr in dist.items() for val, q in marg.items() if q
                }
            rows.append(dist)
    else:
        for u in range(len(states)):
            dist = {u: Fraction(1)}
            for i in SS.mode:
                nxt: dict[int, Fraction] = {}
                w = weights[i - 1]
                for s, pr in dist.items():
                    digit = (s // w) % p
                    for k, (_, q) in enumerate(SS.choices[i - 1]):
                        if q:
                            t = s + (int(tables[i - 1][k][s]) - digit) * w
                            nxt[t] = nxt.get(t, Fraction(0)) + pr * q
                dist = nxt
            rows.append(dist)
    return TransitionMatrix(p, n, tuple(rows))


@dataclass(frozen=True)
class StochasticPhaseSpace:
    """Weighted digraph on configurations; zero-weight edges are omitted."""

    p: int
    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def out_weights(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for u, _, w in self.edges:
            out[u] = out.get(u, Fraction(0)) + w
        return out


def stochastic_phase_space(SS: StochasticSystem, budget: int = DEFAULT_BUDGET) -> StochasticPhaseSpace:
    M = transition_matrix(SS, budget)
    edges = tuple((u, v, w) for u, row in enumerate(M.rows) for v, w in sorted(row.items()) if w)
    return StochasticPhaseSpace(M.p, M.n, edges)


# ---------------------------------------------------------------------------
# stationary analysis


@dataclass(frozen=True, eq=False)
class StationaryClass:
    states: tuple[int, ...]
    distribution: np.ndarray


def recurrent_classes(M) -> list[tuple[int, ...]]:
    """Closed strongly connected components of the positive-weight digraph."""
    A = M.to_sparse() if isinstance(M, TransitionMatrix) else sp.csr_matrix(M)
    A.eliminate_zeros()
    ncomp, labels = connected_components(A, directed=True, connection="strong")
    coo = A.tocoo()
    leaky = np.zeros(ncomp, dtype=bool)
    leaky[labels[coo.row][labels[coo.row] != labels[coo.col]]] = True
    classes = [tuple(int(k) for k in np.flatnonzero(labels == c)) for c in range(ncomp) if not leaky[c]]
    return sorted(classes, key=lambda c: c[0])


def stationary_distribution(M, tol: float = 1e-10, max_iter: int = 1_000_000) -> list[StationaryClass]:
    """One extreme stationary distribution per recurrent class.

    Each class is solved by power iteration on the lazy chain (I + M)/2,
    which has the same stationary vector and converges on periodic classes.
    Iteration stops once the residual ||piM - pi||_1 drops below ``tol``.
    """
    A = M.to_sparse() if isinstance(M, TransitionMatrix) else sp.csr_matrix(M)
    size = A.shape[0]
    out = []
    for cls in recurrent_classes(A):
        idx = np.array(cls)
        sub = A[idx][:, idx].T.tocsr()
        pi = np.full(len(idx), 1.0 / len(idx))
        for _ in range(max_iter):
            nxt = sub @ pi
            if np.abs(nxt - pi).sum() < tol:
                pi = nxt
                break
            pi = 0.5 * (pi + nxt)
        else:
            raise ConvergenceFailure(f"no convergence within {max_iter} iterations on class starting at {cls[0]}")
        full = np.zeros(size)
        full[idx] = pi / pi.sum()
        out.append(StationaryClass(cls, full))
    return out


# ---------------------------------------------------------------------------
# simulation


def _pick(cum: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)


def simulate(
    SS: StochasticSystem | System,
    c0: Sequence[int],
    steps: int,
    seed: int,
    mode: Mode = "parallel",
    table_budget: int = SIMULATION_TABLE_BUDGET,
) -> np.ndarray:
    """Seeded trajectory as an array of shape (steps + 1, n); row 0 is ``c0``.

    A bare :class:`System` is simulated deterministically under ``mode``.
    """
    if isinstance(SS, System):
        SS = SFDS(((SS, mode, Fraction(1)),))
    p, n = SS.p, SS.n
    start = np.array(check_config_pn(p, n, c0), dtype=np.int64)
    rng = np.random.Generator(np.random.PCG64(seed))
    use_tables = p**n <= table_budget
    out = np.empty((steps + 1, n), dtype=np.int64)
    out[0] = start

    if isinstance(SS, SFDS):
        cum = np.cumsum([float(q) for *_, q in SS.members])
        picks = _pick(cum, rng.random(steps))
        if use_tables:
            tables = [materialize_global(S, mode_, table_budget).tolist() for S, mode_, _ in SS.members]
            states = all_states(p, n, table_budget)
            k = encode(start, p)
            idx = np.empty(steps + 1, dtype=np.int64)
            idx[0] = k
            picks_l = picks.tolist()
            for t in range(steps):
                k = tables[picks_l[t]][k]
                idx[t + 1] = k
            return states[idx]
        c = tuple(start.tolist())
        for t in range(steps):
            S, mode_, _ = SS.members[picks[t]]
            c = step(S, mode_, c)
            out[t + 1] = c
        return out

    cums = [np.cumsum([float(q) for _, q in opts]) for opts in SS.choices]
    if is_parallel(SS.mode):
        u = rng.random((steps, n))
        picks = np.stack([_pick(cums[i], u[:, i]) for i in range(n)], axis=1) if steps else np.zeros((0, n), int)
    else:
        word = SS.mode
        u = rng.random((steps, len(word)))
        picks = np.stack([_pick(cums[i - 1], u[:, j]) for j, i in enumerate(word)], axis=1) if steps else None

    if use_tables:
        states = all_states(p, n, table_budget)
        tables = [[t.tolist() for t in per_var] for per_var in _choice_tables(SS, states)]
    c = start.tolist()
    for t in range(steps):
        row = picks[t].tolist()
        if is_parallel(SS.mode):
            if use_tables:
                k = encode(c, p)
                c = [tables[i][row[i]][k] for i in range(n)]
            else:
                c = [SS.choices[i][row[i]][0](c) for i in range(n)]
        else:
            for j, i in enumerate(SS.mode):
                f = SS.choices[i - 1][row[j]][0]
                c[i - 1] = tables[i - 1][row[j]][encode(c, p)] if use_tables else f(c)
        out[t + 1] = c
    return out


def check_config_pn(p: int, n: int, c: Sequence[int]) -> tuple[int, ...]:
    if len(c) != n:
        raise ArityMismatch(f"configuration has {len(c)} entries, expected {n}")
    return tuple(int(v) % p for v in c)


def empirical_frequencies(trajectory: np.ndarray, p: int) -> np.ndarray:
    idx = encode_many(trajectory, p)
    return np.bincount(idx, minlength=p ** trajectory.shape[1]) / len(idx)


def total_variation(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


def evolve_distribution(M: TransitionMatrix, dist: np.ndarray, steps: int) -> np.ndarray:
    A = M.to_sparse().T.tocsr()
    for _ in range(steps):
        dist = A @ dist
    return dist
