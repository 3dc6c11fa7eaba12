"""Built-in example models and graph-based system constructors.

Graphs are ``networkx`` graphs on the vertices 1..n.  Local rules are given
as Python callables on the neighbourhood values and turned into reduced
polynomials by interpolation over the neighbourhood only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

import networkx as nx

from .errors import InvalidParams
from .multipoly import MPoly, mp_interpolate
from .specfile import SpecFile
from .system import Configuration, System, build_system

EXAMPLES = ("runex", "voting", "hopfield", "traffic")

EMPTY = 6  # traffic cell without a car
TRAFFIC_FIELD = 7
MAX_TRAFFIC_VMAX = 2


def local_from_rule(p: int, n: int, nbhd: Sequence[int], rule: Callable[[tuple[int, ...]], int], method: str = "sum") -> MPoly:
    """Reduced polynomial in x1..xn computing ``rule`` of the values at ``nbhd`` (1-based)."""
    nbhd = tuple(nbhd)
    k = len(nbhd)
    if len(set(nbhd)) != k:
        raise InvalidParams(f"neighbourhood {nbhd} repeats a vertex")
    values = [int(rule(rev[::-1])) % p for rev in itertools.product(range(p), repeat=k)]
    g = mp_interpolate(p, k, values, method=method)
    terms = []
    for exps, c in g.items():
        full = [0] * n
        for pos, e in zip(nbhd, exps):
            full[pos - 1] = e
        terms.append((tuple(full), c))
    return MPoly(p, n, terms)


def _check_graph(Y: nx.Graph) -> int:
    n = Y.number_of_nodes()
    if set(Y.nodes()) != set(range(1, n + 1)):
        raise InvalidParams("graph vertices must be 1..n")
    return n


def closed_neighborhood(Y: nx.Graph, v: int) -> tuple[int, ...]:
    return tuple(sorted(set(Y.neighbors(v)) | {v}))


def symmetric_system(Y: nx.Graph, profiles: Sequence[Sequence[int]]) -> System:
    """Boolean system whose f_v depends only on the number of ones in the closed neighbourhood.

    ``profiles[v-1][k]`` is the value of f_v when k of its inputs are 1.
    """
    n = _check_graph(Y)
    locals_ = []
    for v in range(1, n + 1):
        nb = closed_neighborhood(Y, v)
        prof = tuple(profiles[v - 1])
        if len(prof) != len(nb) + 1:
            raise InvalidParams(f"vertex {v} has {len(nb)} inputs; its profile needs {len(nb) + 1} entries")
        locals_.append(local_from_rule(2, n, nb, lambda xs, prof=prof: prof[sum(xs)]))
    return build_system(2, locals_)


def nor_system(Y: nx.Graph) -> System:
    """f_v = NOR of the closed neighbourhood of v."""
    n = _check_graph(Y)
    return symmetric_system(Y, [[1] + [0] * len(closed_neighborhood(Y, v)) for v in range(1, n + 1)])


def parity_system(Y: nx.Graph, complement: bool | Sequence[bool] = False) -> System:
    """f_v = sum of the closed neighbourhood mod 2, optionally plus 1 per vertex."""
    n = _check_graph(Y)
    comp = [complement] * n if isinstance(complement, bool) else list(complement)
    return symmetric_system(
        Y, [[(k + comp[v - 1]) % 2 for k in range(len(closed_neighborhood(Y, v)) + 1)] for v in range(1, n + 1)]
    )


# ---------------------------------------------------------------------------
# examples


def runex() -> SpecFile:
    p, n = 2, 4
    x = [MPoly.var(p, n, i) for i in range(1, n + 1)]
    locals_ = (x[0] + x[1] + x[2] + x[3], x[0] + x[1], x[0] + x[2], x[0] + x[3])
    return SpecFile(p, n, "system", locals_, "parallel", init=(1, 0, 0, 0))


def star_graph(leaves: int = 4) -> nx.Graph:
    Y = nx.Graph()
    Y.add_nodes_from(range(1, leaves + 2))
    Y.add_edges_from((1, v) for v in range(2, leaves + 2))
    return Y


def majority(values: Sequence[int]) -> int:
    """1 if at least half of the values are 1 (ties go to candidate 1)."""
    return int(2 * sum(values) >= len(values))


def voting(
    graph: nx.Graph | None = None,
    initial: Sequence[int] = (1, 0, 0, 0, 0),
    order: Sequence[int] = (2, 3, 1, 4, 5),
    names: Sequence[str] | None = None,
) -> SpecFile:
    """Majority vote over the closed neighbourhood; defaults to the star with centre a."""
    Y = star_graph() if graph is None else graph
    n = _check_graph(Y)
    if names is None and graph is None:
        names = ("a", "b", "c", "d", "e")
    if len(initial) != n or any(v not in (0, 1) for v in initial):
        raise InvalidParams(f"initial preferences must be {n} values in {{0, 1}}")
    if sorted(order) != list(range(1, n + 1)):
        raise InvalidParams(f"order must be a permutation of 1..{n}")
    locals_ = tuple(local_from_rule(2, n, closed_neighborhood(Y, v), majority) for v in range(1, n + 1))
    return SpecFile(2, n, "system", locals_, tuple(order), init=tuple(initial), names=None if names is None else tuple(names))


def election_winner(final: Configuration) -> int:
    return majority(final)


def hopfield(
    weights: Sequence[Sequence[float]],
    thresholds: Sequence[float],
    mode: Sequence[int] | str = "parallel",
) -> SpecFile:
    """Threshold network; state +1 is stored as 1 and -1 as 0.

    ``weights`` is a symmetric n x n matrix; a nonzero off-diagonal entry is
    an edge, the diagonal holds each node's self weight.  A node outputs +1
    iff its weighted sum minus its threshold is >= 0.
    """
    n = len(thresholds)
    if n == 0 or len(weights) != n or any(len(row) != n for row in weights):
        raise InvalidParams("weights must be an n x n matrix matching the thresholds")
    if any(weights[i][j] != weights[j][i] for i in range(n) for j in range(n)):
        raise InvalidParams("weights must be symmetric")
    locals_ = []
    for i in range(n):
        nb = tuple(j + 1 for j in range(n) if j == i or weights[i][j] != 0)
        w = [weights[i][j - 1] for j in nb]
        tau = thresholds[i]

        def rule(xs, w=w, tau=tau):
            total = sum(wk * (1 if x else -1) for wk, x in zip(w, xs)) - tau
            return 1 if total >= 0 else 0

        locals_.append(local_from_rule(2, n, nb, rule))
    return SpecFile(2, n, "system", tuple(locals_), mode if mode == "parallel" else tuple(mode))


def _traffic_rule(vmax: int, decelerate: bool):
    """Cell update on the window of offsets -vmax..vmax around the cell.

    A cell holds EMPTY or the velocity its car will use for the next move.
    One step moves every car, then sets its next velocity to
    min(velocity + 1, vmax, free cells ahead), lowered by one when decelerating.
    """
    r = vmax

    def planned(v: int) -> int:
        return min(v, vmax)

    def lands(w, target: int) -> int | None:
        # offset of the car arriving at ``target``; the farthest mover wins a clash
        for d in range(target - r, target + 1):
            if -r <= d <= r and w[d + r] != EMPTY and planned(w[d + r]) == target - d:
                return d
        return None

    def rule(w):
        src = lands(w, 0)
        if src is None:
            return EMPTY
        gap = 0
        while gap < vmax and lands(w, gap + 1) is None:
            gap += 1
        v = min(-src + 1, vmax, gap)
        return max(v - 1, 0) if decelerate else v

    return rule


def traffic(length: int = 20, density: float = 0.25, vmax: int = 1, decel: float | Fraction = Fraction(1, 4)) -> SpecFile:
    """Single-lane ring road as a PFDS over GF(7); each cell decelerates independently."""
    if not 1 <= vmax <= MAX_TRAFFIC_VMAX:
        raise InvalidParams(
            f"vmax must lie in 1..{MAX_TRAFFIC_VMAX}: each local is a table of 7^(2*vmax+1) entries"
        )
    if length < 2 * vmax + 1:
        raise InvalidParams(f"ring length must be at least {2 * vmax + 1}")
    q = Fraction(str(decel)) if not isinstance(decel, Fraction) else decel
    if not 0 <= q <= 1:
        raise InvalidParams("deceleration probability must lie in [0, 1]")
    cars = round(density * length)
    if not 0 <= cars <= length:
        raise InvalidParams("density must lie in [0, 1]")
    n, p = length, TRAFFIC_FIELD
    fast = _traffic_rule(vmax, False)
    slow = _traffic_rule(vmax, True)
    choices = []
    for i in range(1, n + 1):
        nbhd = [(i - 1 + d) % n + 1 for d in range(-vmax, vmax + 1)]
        opts = []
        if q < 1:
            opts.append((local_from_rule(p, n, nbhd, fast, method="axis"), 1 - q))
        if q > 0:
            opts.append((local_from_rule(p, n, nbhd, slow, method="axis"), q))
        choices.append(tuple(opts))
    init = [EMPTY] * n
    for k in range(cars):
        init[k * n // cars] = 0
    return SpecFile(p, n, "pfds", (), "parallel", choices=tuple(choices), init=tuple(init))


def gen_example(name: str, **params) -> SpecFile:
    builders = {"runex": runex, "voting": voting, "hopfield": hopfield, "traffic": traffic}
    if name not in builders:
        raise InvalidParams(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    if name == "hopfield" and not params:
        params = {"weights": [[0, 1, -1], [1, 0, 1], [-1, 1, 0]], "thresholds": [0, 0, 0]}
    try:
        return builders[name](**params)
    except TypeError as e:
        raise InvalidParams(str(e)) from None
