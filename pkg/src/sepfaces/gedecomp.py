"""Genuine-entanglement (g.e.) decomposition of pure states.

Every nonzero vector factors, after grouping parties, into a tensor product
of genuinely entangled components. The components are unique up to scalars,
so :func:`ge_decompose` fixes a canonical form: blocks ordered by their
smallest party, each component of unit norm with its first nonzero entry
real and positive, and one global scalar carrying the rest.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable

import numpy as np

from .exceptions import InvalidInputError
from .statespace import (
    DEFAULT_RANK_TOL,
    PureState,
    SystemShape,
    as_subset,
    matricize,
    numerical_rank,
    partial_transpose,
    singular_values,
)


@dataclass(frozen=True, eq=False)
class GeDecomposition:
    shape: SystemShape
    blocks: tuple[tuple[int, ...], ...]
    components: tuple[np.ndarray, ...]
    global_scale: complex

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(prod(self.shape.dims[p - 1] for p in b) for b in self.blocks)

    def reconstruct(self) -> np.ndarray:
        """Tensor the components back together in the original party order."""
        out = np.array([self.global_scale], dtype=np.complex128)
        order: list[int] = []
        for block, comp in zip(self.blocks, self.components):
            out = np.kron(out, comp)
            order.extend(block)
        dims = [self.shape.dims[p - 1] for p in order]
        t = out.reshape(dims)
        inverse = np.argsort(order)
        return t.transpose(inverse).reshape(-1)

    def component_state(self, j: int) -> PureState:
        """The ``j``-th component (0-based) as a state on its own block."""
        dims = [self.shape.dims[p - 1] for p in self.blocks[j]]
        return PureState(SystemShape(tuple(dims)), self.components[j])

    def to_dict(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "block_dims": list(self.block_dims),
            "components": [[[float(z.real), float(z.imag)] for z in c] for c in self.components],
            "global_scale": [float(self.global_scale.real), float(self.global_scale.imag)],
            "m": self.m,
        }


def _rank_one(mat: np.ndarray, rel_tol: float) -> bool:
    s = singular_values(mat)
    return s.size < 2 or s[1] < rel_tol * s[0]


def splits(state: PureState, S: Iterable[int], rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    """Whether ``state`` is a product across the bipartition ``S | complement``."""
    return _rank_one(matricize(state, S), rel_tol)


def _canonical(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    mags = np.abs(v)
    first = int(np.argmax(mags > 1e-12 * mags.max()))
    v = v * (abs(v[first]) / v[first])
    v[first] = v[first].real
    return v


def ge_decompose(state: PureState, rel_tol: float = DEFAULT_RANK_TOL) -> GeDecomposition:
    """Split ``state`` into genuinely entangled tensor factors.

    Repeatedly takes the lowest-indexed unassigned party ``p`` and searches
    subsets containing ``p`` (by size, then lexicographically) for the
    smallest one across which the remaining vector is a product. That subset
    is a g.e. block: a smaller splitting subset inside it would have been
    found first. Its factor is read off the dominant singular pair of the
    matricization and the search continues on the complementary factor.
    """
    remaining = list(state.shape.parties)
    rest = state.tensor.copy()
    blocks: list[tuple[int, ...]] = []
    comps: list[np.ndarray] = []

    while True:
        found = None
        if len(remaining) > 1:
            p, others = remaining[0], remaining[1:]
            for k in range(0, len(others)):
                for extra in combinations(others, k):
                    S = (p,) + extra
                    local = [remaining.index(q) for q in S]
                    comp_local = [i for i in range(len(remaining)) if i not in local]
                    t = rest.transpose(local + comp_local)
                    nr = prod(t.shape[: len(S)])
                    mat = t.reshape(nr, -1)
                    if _rank_one(mat, rel_tol):
                        found = (S, mat, t.shape[len(S):])
                        break
                if found:
                    break
        if found is None:
            blocks.append(tuple(remaining))
            comps.append(rest.reshape(-1))
            break
        S, mat, rest_shape = found
        u, s, vh = np.linalg.svd(mat, full_matrices=False)
        blocks.append(S)
        comps.append(s[0] * u[:, 0])
        rest = vh[0].reshape(rest_shape)
        remaining = [q for q in remaining if q not in S]

    comps = [_canonical(c) for c in comps]
    partial = GeDecomposition(state.shape, tuple(blocks), tuple(comps), 1.0 + 0j)
    scale = complex(np.vdot(partial.reconstruct(), state.amplitudes))
    return GeDecomposition(state.shape, tuple(blocks), tuple(comps), scale)


def is_real_up_to_phase(v, rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if not np.any(v):
        raise InvalidInputError("vector: zero vector has no phase")
    return numerical_rank(np.stack([v, v.conj()], axis=1), rel_tol) == 1


def theta_prime_contains(decomp: GeDecomposition, S: Iterable[int]) -> bool:
    """Whether ``S`` is a union of whole g.e. blocks."""
    S = as_subset(S, decomp.shape.n)
    return all(set(b) <= S or not (set(b) & S) for b in decomp.blocks)


def fixes_projector(decomp: GeDecomposition, S: Iterable[int], rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    """Whether the partial transpose over ``S`` leaves ``|a><a|`` unchanged."""
    S = as_subset(S, decomp.shape.n)
    if not theta_prime_contains(decomp, S):
        return False
    return all(
        is_real_up_to_phase(c, rel_tol)
        for b, c in zip(decomp.blocks, decomp.components)
        if set(b) <= S
    )


def projector_fixed_directly(state: PureState, S: Iterable[int], tol: float = 1e-10) -> bool:
    """Brute-force check of ``Gamma_S(|a><a|) == |a><a|`` entrywise."""
    P = state.normalized().projector()
    G = partial_transpose(P, state.dims, S)
    return bool(np.max(np.abs(G - P)) <= tol)
