"""Shannon and von Neumann entropies, in bits, plus entropy Venn diagrams.

All logarithms are base 2 and ``0 * log 0 := 0`` is enforced at the scalar
level.  Venn-diagram regions are computed once from joint entropies and then
*stored*, so downstream recombination checks are genuine assertions rather
than tautologies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .qmat import (
    DensityMatrix,
    PureState,
    clamp_spectrum,
    hermitian_eigenvalues,
    partial_trace,
    pure_subsystem_spectrum,
)

_PROB_ATOL = 1e-12
_SUM_ATOL = 1e-10


def _check_probability(p: float, name: str = "probability") -> float:
    p = float(p)
    if p < -_PROB_ATOL or p > 1.0 + _PROB_ATOL:
        raise ValueError(f"{name} {p!r} outside [0, 1]")
    return min(1.0, max(0.0, p))


def _plog2p(p: float) -> float:
    return 0.0 if p <= 0.0 else p * math.log2(p)


def _shannon(probs) -> float:
    return -sum(_plog2p(float(p)) for p in np.ravel(probs))


def binary_entropy(p: float) -> float:
    """H2[p] = -p log2 p - (1-p) log2(1-p), symmetric about p = 1/2."""
    p = _check_probability(p)
    return -_plog2p(p) - _plog2p(1.0 - p)


def check_prob_vector(probs) -> np.ndarray:
    """Validate entries in [0, 1] summing to 1 (within 1e-10); returns an array."""
    vec = np.asarray(probs, dtype=np.float64).ravel()
    if vec.size == 0:
        raise ValueError("empty probability vector")
    if float(vec.min()) < -_PROB_ATOL or float(vec.max()) > 1.0 + _PROB_ATOL:
        raise ValueError("probability vector entries outside [0, 1]")
    total = float(vec.sum())
    if abs(total - 1.0) > _SUM_ATOL:
        raise ValueError(f"probability vector sums to {total!r}, not 1")
    return np.clip(vec, 0.0, 1.0)


def shannon_entropy(probs) -> float:
    """Shannon entropy of a probability vector, in bits."""
    return _shannon(check_prob_vector(probs))


def relative_entropy_binary(p: float, r: float) -> float:
    """Binary relative entropy D(p || r) = p log2(p/r) + (1-p) log2((1-p)/(1-r)).

    The reference must be strictly inside (0, 1); a degenerate reference makes
    the quantity infinite whenever p differs from it.
    """
    p = _check_probability(p)
    r = float(r)
    if r <= 0.0 or r >= 1.0:
        raise ValueError(f"degenerate reference {r!r}: need 0 < r < 1")
    out = 0.0
    if p > 0.0:
        out += p * math.log2(p / r)
    if p < 1.0:
        out += (1.0 - p) * math.log2((1.0 - p) / (1.0 - r))
    return out


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy of the clamped eigenvalue spectrum of a density matrix, in bits."""
    return _shannon(clamp_spectrum(hermitian_eigenvalues(rho.matrix)))


def pure_subsystem_entropy(psi: PureState, keep: Iterable[int]) -> float:
    """Entropy of a pure state's marginal over ``keep``, via the smaller Gram side."""
    return _shannon(clamp_spectrum(pure_subsystem_spectrum(psi, keep)))


def _check_partition(dims: tuple[int, ...], split: Sequence[Sequence[int]], parts: int):
    groups = [tuple(int(i) for i in g) for g in split]
    if len(groups) != parts:
        raise ValueError(f"bad partition: expected {parts} groups, got {len(groups)}")
    flat = [i for g in groups for i in g]
    if sorted(flat) != list(range(len(dims))):
        raise ValueError(f"bad partition {groups} of {len(dims)} factors")
    if any(not g for g in groups):
        raise ValueError("bad partition: empty group")
    return groups


def _group_entropy(rho: DensityMatrix, group: Sequence[int]) -> float:
    if len(group) == len(rho.dims):
        return von_neumann_entropy(rho)
    return von_neumann_entropy(partial_trace(rho, group))


@dataclass(frozen=True)
class EntropyVenn2:
    """Bipartite entropy diagram: marginals, conditionals, and mutual entropy.

    ``cond_a_given_b`` = S(A|B) = S(AB) - S(B) may be negative for entangled
    states; ``mutual`` = S(A:B) = S(A) + S(B) - S(AB) is bounded by
    2 min(S(A), S(B)).
    """

    s_a: float
    s_b: float
    s_ab: float
    cond_a_given_b: float
    cond_b_given_a: float
    mutual: float


@dataclass(frozen=True)
class EntropyVenn3:
    """The seven regions of a tripartite entropy diagram for parties (A, B, C).

    ``cond_a`` is S(A|BC); ``mutual_ab`` is S(A:B|C) (and cyclically);
    ``center`` is the ternary mutual entropy S(A:B:C), which vanishes for any
    tripartite pure state.  Regions are stored; the ``s_*`` properties
    recombine them into joint entropies.
    """

    cond_a: float
    cond_b: float
    cond_c: float
    mutual_ab: float
    mutual_ac: float
    mutual_bc: float
    center: float

    @property
    def s_a(self) -> float:
        return self.cond_a + self.mutual_ab + self.mutual_ac + self.center

    @property
    def s_b(self) -> float:
        return self.cond_b + self.mutual_ab + self.mutual_bc + self.center

    @property
    def s_c(self) -> float:
        return self.cond_c + self.mutual_ac + self.mutual_bc + self.center

    @property
    def s_ab(self) -> float:
        return (
            self.cond_a + self.cond_b
            + self.mutual_ab + self.mutual_ac + self.mutual_bc + self.center
        )

    @property
    def s_ac(self) -> float:
        return (
            self.cond_a + self.cond_c
            + self.mutual_ab + self.mutual_ac + self.mutual_bc + self.center
        )

    @property
    def s_bc(self) -> float:
        return (
            self.cond_b + self.cond_c
            + self.mutual_ab + self.mutual_ac + self.mutual_bc + self.center
        )

    @property
    def s_abc(self) -> float:
        return (
            self.cond_a + self.cond_b + self.cond_c
            + self.mutual_ab + self.mutual_ac + self.mutual_bc + self.center
        )


def venn2(rho_ab: DensityMatrix, split: Sequence[Sequence[int]]) -> EntropyVenn2:
    """Bipartite entropy diagram of ``rho_ab`` under a two-group factor split.

    Args:
        rho_ab: state over at least two tensor factors.
        split: two disjoint groups of factor indices covering all factors,
            e.g. ``((0,), (1, 2))``.
    """
    group_a, group_b = _check_partition(rho_ab.dims, split, 2)
    s_a = _group_entropy(rho_ab, group_a)
    s_b = _group_entropy(rho_ab, group_b)
    s_ab = von_neumann_entropy(rho_ab)
    return EntropyVenn2(
        s_a=s_a,
        s_b=s_b,
        s_ab=s_ab,
        cond_a_given_b=s_ab - s_b,
        cond_b_given_a=s_ab - s_a,
        mutual=s_a + s_b - s_ab,
    )


def venn3(rho_abc: DensityMatrix, split: Sequence[Sequence[int]]) -> EntropyVenn3:
    """Tripartite entropy diagram of ``rho_abc`` under a three-group split.

    The seven regions are linear combinations of the seven joint entropies:
    S(A|BC) = S(ABC) - S(BC), S(A:B|C) = S(AC) + S(BC) - S(C) - S(ABC), and
    the center S(A:B:C) = S(A) + S(B) + S(C) - S(AB) - S(AC) - S(BC) + S(ABC).
    """
    ga, gb, gc = _check_partition(rho_abc.dims, split, 3)
    s_a = _group_entropy(rho_abc, ga)
    s_b = _group_entropy(rho_abc, gb)
    s_c = _group_entropy(rho_abc, gc)
    s_ab = _group_entropy(rho_abc, tuple(ga) + tuple(gb))
    s_ac = _group_entropy(rho_abc, tuple(ga) + tuple(gc))
    s_bc = _group_entropy(rho_abc, tuple(gb) + tuple(gc))
    s_abc = von_neumann_entropy(rho_abc)
    return EntropyVenn3(
        cond_a=s_abc - s_bc,
        cond_b=s_abc - s_ac,
        cond_c=s_abc - s_ab,
        mutual_ab=s_ac + s_bc - s_c - s_abc,
        mutual_ac=s_ab + s_bc - s_b - s_abc,
        mutual_bc=s_ab + s_ac - s_a - s_abc,
        center=s_a + s_b + s_c - s_ab - s_ac - s_bc + s_abc,
    )


def classical_mutual_information(joint) -> float:
    """Mutual information H(X) + H(Y) - H(X,Y) of a joint probability table."""
    table = np.asarray(joint, dtype=np.float64)
    if table.ndim != 2:
        raise ValueError(f"joint distribution must be a 2-d table, got shape {table.shape}")
    check_prob_vector(table.ravel())
    h_x = _shannon(table.sum(axis=1))
    h_y = _shannon(table.sum(axis=0))
    h_xy = _shannon(table)
    return h_x + h_y - h_xy


def classical_fano_bound(p_error: float, s: int) -> float:
    """Fano bound H2[p_err] + p_err log2(s - 1) on equivocation for s codewords."""
    if int(s) != s or s < 2:
        raise ValueError(f"codeword count must be an integer >= 2, got {s!r}")
    p_error = _check_probability(p_error, "error probability")
    return binary_entropy(p_error) + p_error * math.log2(int(s) - 1)
