"""DOT and CSV writers.  Output ordering is fixed so identical input gives identical bytes."""

from __future__ import annotations

import csv
import io
from typing import Sequence

import numpy as np

from .phase import PhaseSpace
from .stochastic import StochasticPhaseSpace
from .system import DEFAULT_BUDGET, System, check_budget, decode


def state_label(config: Sequence[int], p: int) -> str:
    """``0110`` for single-digit fields, ``10,3,0`` otherwise."""
    if p <= 10:
        return "".join(str(c) for c in config)
    return ",".join(str(c) for c in config)


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def phase_space_dot(ps: PhaseSpace, name: str = "phase_space", budget: int = DEFAULT_BUDGET) -> str:
    check_budget(ps.p, ps.n, budget)
    labels = [state_label(decode(k, ps.p, ps.n), ps.p) for k in range(ps.size)]
    lines = [f"digraph {name} {{"]
    lines += [f"  {_q(lab)};" for lab in labels]
    lines += [f"  {_q(labels[u])} -> {_q(labels[v])};" for u, v in ps.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def stochastic_dot(sps: StochasticPhaseSpace, name: str = "stochastic_phase_space", budget: int = DEFAULT_BUDGET) -> str:
    size = check_budget(sps.p, sps.n, budget)
    labels = [state_label(decode(k, sps.p, sps.n), sps.p) for k in range(size)]
    lines = [f"digraph {name} {{"]
    lines += [f"  {_q(lab)};" for lab in labels]
    for u, v, w in sps.edges:
        lines.append(f"  {_q(labels[u])} -> {_q(labels[v])} [label={_q(f'{float(w):.6g}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dependency_dot(S: System, names: Sequence[str] | None = None) -> str:
    names = list(names) if names else [str(i) for i in range(1, S.n + 1)]
    lines = ["digraph dependency {"]
    lines += [f"  {_q(nm)};" for nm in names]
    lines += [f"  {_q(names[i - 1])} -> {_q(names[j - 1])};" for i, j in sorted(S.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def trajectory_csv(trajectory: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = trajectory.shape[1]
    w.writerow(["step"] + [f"x{i}" for i in range(1, n + 1)])
    for t, row in enumerate(trajectory.tolist()):
        w.writerow([t] + row)
    return buf.getvalue()
