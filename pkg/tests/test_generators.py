import itertools
import random

import networkx as nx
import numpy as np
import pytest

from findyn.errors import InvalidParams
from findyn.generators import (
    EMPTY,
    election_winner,
    gen_example,
    hopfield,
    local_from_rule,
    nor_system,
    parity_system,
    traffic,
    voting,
)
from findyn.multipoly import mp_eval
from findyn.phase import is_invertible
from findyn.stochastic import simulate, transition_matrix
from findyn.system import step_parallel, step_word

from conftest import brute_states


def test_voting_tipped_election():
    spec = voting()
    S = spec.system()
    b_first = step_word(S, (2, 3, 1, 4, 5), spec.init)
    a_first = step_word(S, (1, 2, 3, 4, 5), spec.init)
    assert b_first == (1, 1, 1, 1, 1) and election_winner(b_first) == 1
    assert a_first == (0, 0, 0, 0, 0) and election_winner(a_first) == 0
    # a's first move under the identity order
    assert step_word(S, (1,), spec.init)[0] == 0


def test_voting_majority_rule():
    S = voting().system()
    for c in brute_states(2, 5):
        # centre sees everyone; leaf v sees itself and the centre
        assert mp_eval(S.locals[0], c) == int(2 * sum(c) >= 5)
        for v in range(1, 5):
            assert mp_eval(S.locals[v], c) == int(c[0] + c[v] >= 1)


def test_voting_params():
    with pytest.raises(InvalidParams):
        voting(order=(1, 2, 3))
    with pytest.raises(InvalidParams):
        voting(initial=(1, 0))
    spec = voting(graph=nx.path_graph([1, 2, 3]), initial=(1, 0, 0), order=(1, 2, 3))
    assert spec.names is None and spec.n == 3


def test_hopfield_zero_weights():
    S = hopfield([[0] * 4] * 4, [0] * 4).system()
    for c in brute_states(2, 4):
        assert step_parallel(S, c) == (1, 1, 1, 1)


def test_hopfield_threshold_rule():
    rng = random.Random(4)
    for _ in range(10):
        n = 4
        W = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                W[i][j] = W[j][i] = rng.choice([-2, -1, 0, 1, 2])
        tau = [rng.choice([-1, 0, 0.5, 1]) for _ in range(n)]
        S = hopfield(W, tau).system()
        for c in brute_states(2, n):
            x = [1 if v else -1 for v in c]
            for i in range(n):
                total = sum(W[i][j] * x[j] for j in range(n)) - tau[i]
                assert mp_eval(S.locals[i], c) == (1 if total >= 0 else 0)
    with pytest.raises(InvalidParams):
        hopfield([[0, 1], [2, 0]], [0, 0])


def test_nor_and_parity_locals():
    Y = nx.cycle_graph([1, 2, 3, 4])
    nor, par, comp = nor_system(Y), parity_system(Y), parity_system(Y, complement=True)
    for c in brute_states(2, 4):
        for v in range(1, 5):
            nb = [v] + list(Y.neighbors(v))
            s = sum(c[u - 1] for u in nb)
            assert mp_eval(nor.locals[v - 1], c) == int(s == 0)
            assert mp_eval(par.locals[v - 1], c) == s % 2
            assert mp_eval(comp.locals[v - 1], c) == (s + 1) % 2
    assert is_invertible(par, (1, 3, 2, 4))


def test_local_from_rule_embeds_neighbourhood():
    f = local_from_rule(3, 4, (4, 2), lambda xs: (xs[0] + 2 * xs[1]) % 3)
    for c in brute_states(3, 4):
        assert mp_eval(f, c) == (c[3] + 2 * c[1]) % 3


def nasch_step(cells, vmax, slow):
    """Reference update on a list of EMPTY / planned velocity."""
    L = len(cells)
    moved = [EMPTY] * L
    travelled = {}
    for i, v in enumerate(cells):
        if v != EMPTY:
            j = (i + min(v, vmax)) % L
            moved[j] = v
            travelled[j] = min(v, vmax)
    out = [EMPTY] * L
    for j in range(L):
        if moved[j] == EMPTY:
            continue
        gap = 0
        while gap < vmax and moved[(j + gap + 1) % L] == EMPTY:
            gap += 1
        v = min(travelled[j] + 1, vmax, gap)
        out[j] = max(v - 1, 0) if slow[j] else v
    return out


@pytest.mark.parametrize("vmax", [1, 2])
def test_traffic_matches_reference(vmax):
    spec = traffic(length=9, density=0.34, vmax=vmax, decel=0.25)
    SS = spec.build()
    rng = random.Random(vmax)
    for _ in range(40):
        cells = [EMPTY] * 9
        for pos in rng.sample(range(9), 3):
            cells[pos] = rng.randint(0, vmax)
        # only collision-free states are physical
        if len({(i + min(v, vmax)) % 9 for i, v in enumerate(cells) if v != EMPTY}) < 3:
            continue
        slow = [rng.random() < 0.5 for _ in range(9)]
        got = [SS.choices[i][1 if slow[i] else 0][0](*cells) for i in range(9)]
        assert got == nasch_step(cells, vmax, slow)


def test_traffic_conserves_cars():
    spec = traffic(length=15, density=0.4, vmax=1)
    traj = simulate(spec.build(), spec.init, 200, seed=3)
    assert all(int((row != EMPTY).sum()) == 6 for row in traj)
    assert traj.max() <= EMPTY


def test_traffic_params():
    with pytest.raises(InvalidParams):
        traffic(vmax=5)
    with pytest.raises(InvalidParams):
        traffic(length=2)
    with pytest.raises(InvalidParams):
        traffic(decel=1.5)
    spec = traffic(length=7, density=0.3, decel=0)
    assert all(len(opts) == 1 for opts in spec.choices)


def test_traffic_small_ring_is_stochastic():
    spec = traffic(length=3, density=0.34, vmax=1)
    M = transition_matrix(spec.build())
    assert all(s == 1 for s in M.row_sums())


def test_gen_example_dispatch():
    assert gen_example("runex").n == 4
    assert gen_example("voting").names == ("a", "b", "c", "d", "e")
    assert gen_example("hopfield").n == 3
    assert gen_example("traffic", length=8).kind == "pfds"
    with pytest.raises(InvalidParams):
        gen_example("lottery")
    with pytest.raises(InvalidParams):
        gen_example("runex", colour="red")
