"""Linear and affine systems over GF(p): matrix invariants and cycle structure.

Matrices are plain ``numpy`` integer arrays with entries in [0, p); the
modulus travels as an explicit argument.

The cycle structure of x -> Ax is read off the invertible part B of the
Fitting decomposition.  With s the order of the minimal polynomial of B,
every periodic state has period dividing s, and the number of states whose
period divides d is p^dim ker(B^d - I).  Exact-period counts follow by
Moebius inversion over the divisors of s.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotAffine
from .gf import UPoly, divisors, mobius, upoly_order
from .phase import PhaseSpace, decompose, tree_codes, tree_sizes
from .system import DEFAULT_BUDGET, System, all_states, encode_many


def as_matrix(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64) % p
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def row_reduce(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) and the pivot columns."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if not len(nz):
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray, p: int) -> int:
    return len(row_reduce(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : Mv = 0} as the rows of the returned array."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = row_reduce(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -R[i, f] % p
    return basis


def solve(P: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """P^-1 B for invertible P."""
    m = P.shape[0]
    R, pivots = row_reduce(np.hstack([P, B]), p)
    if pivots[:m] != list(range(m)):
        raise DimensionMismatch("matrix is singular")
    return R[:, m:]


def mat_mul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return (A @ B) % p


def mat_pow(A: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A % p
    while k:
        if k & 1:
            result = result @ base % p
        base = base @ base % p
        k >>= 1
    return result


def poly_at_matrix(f: UPoly, A: np.ndarray) -> np.ndarray:
    p = f.p
    out = np.zeros_like(A)
    eye = np.eye(A.shape[0], dtype=np.int64)
    for c in reversed(f.coeffs):
        out = (out @ A + c * eye) % p
    return out


# ---------------------------------------------------------------------------
# systems <-> matrices


def as_linear(S: System) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient matrix A and constant vector b of an affine system.

    Raises NotAffine if some local function has a term of degree >= 2.
    """
    A = np.zeros((S.n, S.n), dtype=np.int64)
    b = np.zeros(S.n, dtype=np.int64)
    for i, f in enumerate(S.locals):
        for exps, c in f.items():
            deg = sum(exps)
            if deg == 0:
                b[i] = c
            elif deg == 1:
                A[i, exps.index(1)] = c
            else:
                raise NotAffine(f"local {i + 1} has a term of degree {deg}: {f}")
    return A, b


def affine_embed(A, b, p: int) -> np.ndarray:
    """The (n+1)-square matrix [[A, b], [0, 1]]."""
    A = as_matrix(A, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    n = A.shape[0]
    if b.shape[0] != n:
        raise DimensionMismatch(f"matrix is {n}x{n} but offset has length {b.shape[0]}")
    M = np.zeros((n + 1, n + 1), dtype=np.int64)
    M[:n, :n] = A
    M[:n, n] = b
    M[n, n] = 1
    return M


def linear_table(A, p: int, b=None, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Successor table of x -> Ax + b in the package's state numbering."""
    A = as_matrix(A, p)
    states = all_states(p, A.shape[0], budget)
    img = states @ A.T
    if b is not None:
        img = img + np.asarray(b, dtype=np.int64)
    return encode_many(img % p, p)


def linear_phase_space(A, p: int, b=None, budget: int = DEFAULT_BUDGET) -> PhaseSpace:
    A = as_matrix(A, p)
    return decompose(linear_table(A, p, b, budget), p, A.shape[0])


# ---------------------------------------------------------------------------
# invariants


def min_poly(A, p: int) -> UPoly:
    """Monic polynomial of least degree annihilating A."""
    A = as_matrix(A, p)
    m = A.shape[0]
    if m == 0:
        return UPoly(p, (1,))
    powers = [np.eye(m, dtype=np.int64).reshape(-1)]
    cur = np.eye(m, dtype=np.int64)
    for d in range(1, m + 1):
        cur = cur @ A % p
        target = cur.reshape(-1)
        cols = np.stack(powers, axis=1)
        R, pivots = row_reduce(np.hstack([cols, target[:, None]]), p)
        if d not in pivots:
            # target = sum_k c_k A^k with c read off the reduced augmented column
            c = np.zeros(d, dtype=np.int64)
            for i, pc in enumerate(pivots):
                c[pc] = R[i, d]
            return UPoly(p, [(-v) % p for v in c] + [1])
        powers.append(target)
    raise AssertionError("Cayley-Hamilton violated")


@dataclass(frozen=True, eq=False)
class Fitting:
    """A = P diag(invertible, nilpotent) P^-1 with P's first columns spanning im(A^m)."""

    p: int
    invertible: np.ndarray
    nilpotent: np.ndarray
    basis: np.ndarray

    @property
    def invertible_dim(self) -> int:
        return self.invertible.shape[0]

    @property
    def nilpotent_dim(self) -> int:
        return self.nilpotent.shape[0]


def fitting_decomposition(A, p: int) -> Fitting:
    A = as_matrix(A, p)
    m = A.shape[0]
    Am = mat_pow(A, m, p)
    _, pivots = row_reduce(Am, p)
    image = Am[:, pivots]
    kernel = nullspace(Am, p).T
    P = np.hstack([image, kernel]).astype(np.int64)
    B = solve(P, A @ P % p, p)
    r = len(pivots)
    assert not B[:r, r:].any() and not B[r:, :r].any()
    return Fitting(p, B[:r, :r], B[r:, r:], P)


def kernel_profile(N: np.ndarray, p: int) -> tuple[int, ...]:
    """dim ker(N^j) for j = 1 .. nilpotency index of a nilpotent N."""
    m = N.shape[0]
    out = []
    P = np.eye(m, dtype=np.int64)
    while not out or out[-1] < m:
        P = P @ N % p
        out.append(m - rank(P, p))
        if len(out) > m:
            raise ValueError("matrix is not nilpotent")
    return tuple(out)


@dataclass(frozen=True)
class CycleStructure:
    """Cycle lengths with multiplicities plus the nilpotent kernel profile."""

    p: int
    cycles: tuple[tuple[int, int], ...]
    tree_profile: tuple[int, ...]
    invertible_dim: int
    nilpotent_dim: int

    @property
    def periodic_states(self) -> int:
        return sum(length * count for length, count in self.cycles)

    def as_counter(self) -> Counter:
        return Counter(dict(self.cycles))

    def table(self) -> str:
        lines = ["length count"]
        lines += [f"{length} {count}" for length, count in self.cycles]
        lines.append("tree profile: " + " <= ".join(map(str, self.tree_profile)) if self.tree_profile else "tree profile: (none)")
        return "\n".join(lines)


def _cycles_from_counts(counts: dict[int, int]) -> tuple[tuple[int, int], ...]:
    """Moebius inversion: counts[d] = #states with period dividing d."""
    out = []
    for d in sorted(counts):
        exact = sum(mobius(d // e) * counts[e] for e in counts if d % e == 0)
        if exact:
            assert exact % d == 0
            out.append((d, exact // d))
    return tuple(out)


def _period_bound(B: np.ndarray, p: int) -> int:
    if B.shape[0] == 0:
        return 1
    return upoly_order(min_poly(B, p))


def predict_cycle_structure(A, p: int) -> CycleStructure:
    A = as_matrix(A, p)
    F = fitting_decomposition(A, p)
    B = F.invertible
    r = F.invertible_dim
    eye = np.eye(r, dtype=np.int64)
    counts = {d: p ** (r - rank(mat_pow(B, d, p) - eye, p)) for d in divisors(_period_bound(B, p))}
    profile = kernel_profile(F.nilpotent, p) if F.nilpotent_dim else ()
    return CycleStructure(p, _cycles_from_counts(counts), profile, r, F.nilpotent_dim)


def predict_affine_cycle_structure(A, b, p: int) -> CycleStructure:
    """Cycle structure of x -> Ax + b via the square embedding.

    Periodic states of the affine map are the periodic vectors of the
    embedded matrix lying on the slice where the last coordinate is 1.
    """
    M = affine_embed(A, b, p)
    m = M.shape[0]
    F = fitting_decomposition(M, p)
    s = _period_bound(F.invertible, p)
    eye = np.eye(m, dtype=np.int64)
    counts = {}
    for d in divisors(s):
        W = nullspace(mat_pow(M, d, p) - eye, p)
        # solutions with last coordinate 1 form a coset of W ∩ {last = 0}, or are absent
        counts[d] = p ** (W.shape[0] - 1) if W.shape[0] and W[:, -1].any() else 0
    linear = predict_cycle_structure(A, p)
    return CycleStructure(p, _cycles_from_counts(counts), linear.tree_profile, linear.invertible_dim, linear.nilpotent_dim)


@dataclass(frozen=True)
class TreeCheck:
    isomorphic: bool
    tree_size: int | None
    profile: tuple[int, ...]


def verify_transient_trees(A, p: int, budget: int = DEFAULT_BUDGET) -> TreeCheck:
    """Enumerate the phase space and check all transient trees are isomorphic."""
    A = as_matrix(A, p)
    ps = linear_phase_space(A, p, budget=budget)
    codes = set(tree_codes(ps).values())
    sizes = set(tree_sizes(ps).values())
    F = fitting_decomposition(A, p)
    profile = kernel_profile(F.nilpotent, p) if F.nilpotent_dim else ()
    ok = len(codes) == 1
    return TreeCheck(ok, sizes.pop() if ok else None, profile)


def enumerated_cycle_structure(ps: PhaseSpace) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(ps.cycle_lengths().items()))

