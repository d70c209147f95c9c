"""Subsystem entropies and mutual information of pure and decohered chains.

The central quantity is the Renyi-2 entropy of a subsystem after a
strength-p dephasing channel on that subsystem.  In the channel eigenbasis
a density-matrix element whose two configurations differ on k sites inside
the dephased window picks up the factor lam^k with lam = 1 - 2p, so for a
pure state with Gram matrix G = C C+ (C the window coefficient matrix) the
reduced purity is

    Tr[rho_A^2] = sum_{a,a'} |G[a,a']|^2 * lam^(2 ham(a,a'))

where ham counts differing window bits.  Three evaluation strategies are
implemented behind one plan interface:

  * dense_gram: bin |G|^2 by Hamming distance once, then every p is a
    length-(L_A+1) dot product.  Needs the 2^L_A square Gram matrix.
  * low_rank: expand G through the Schmidt vectors; cost is governed by
    the Schmidt rank, which is bounded by the complement dimension.
  * rank1_full: the whole-chain case, where G = psi psi+ is rank one and
    the purity is a quadratic form of the outcome distribution under the
    Kronecker kernel prod_j [[1, lam^2], [lam^2, 1]].

The Kronecker kernel diagonalizes in the Walsh-Hadamard basis with
eigenvalue (1+mu)^(n-d) (1-mu)^d on parity sector d (mu = lam^2), so the
rank-structured paths store a popcount-binned power spectrum once and
every strength afterwards is an O(window) dot product.

At p = 0 all of them reduce to the Renyi-2 entanglement entropy, at
p = 1/2 to the Renyi-2 entropy of the measurement outcome distribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .doubled import generalized_entropy_supervector
from .spin import (
    Bipartition,
    check_axis,
    coefficient_matrix,
    num_sites,
    rotate_to_basis,
    schmidt,
    window_coefficient_matrix,
)

DENSE_GRAM_MAX_SITES = 13
ALGORITHMS = ("auto", "dense_gram", "low_rank", "rank1_full")

_BLOCK_ELEMENTS = 1 << 22  # working-set bound for blocked kernels


def _fwht_inplace(arr, n_bits):
    # unnormalized Walsh-Hadamard transform along the last axis
    n = arr.shape[-1]
    flat = arr.reshape(-1, n)
    for j in range(n_bits):
        v = flat.reshape(flat.shape[0], n >> (j + 1), 2, 1 << j)
        x = v[:, :, 0, :].copy()
        v[:, :, 0, :] += v[:, :, 1, :]
        v[:, :, 1, :] = x - v[:, :, 1, :]


def _parity_bins(n):
    return np.bitwise_count(np.arange(n, dtype=np.uint64)).astype(np.int64)


def _spectrum_purity(spectrum, n_bits, lam):
    # spectrum[d] carries the 1/2^n normalization already
    mu = lam * lam
    d = np.arange(n_bits + 1, dtype=np.float64)
    return float(spectrum @ ((1.0 + mu) ** (n_bits - d) * (1.0 - mu) ** d))


class _DenseGramPlan:
    """|G|^2 binned by window Hamming distance; purity(p) is then O(L_A)."""

    def __init__(self, coeff):
        na = coeff.shape[0]
        self.n_bits = na.bit_length() - 1
        delta = np.arange(na, dtype=np.int64)
        g = np.zeros(na)
        coeff_h = coeff.conj().T
        block = max(1, _BLOCK_ELEMENTS // na)
        for r0 in range(0, na, block):
            r1 = min(na, r0 + block)
            gb = coeff[r0:r1] @ coeff_h
            wb = np.abs(gb) ** 2
            cols = delta[r0:r1, None] ^ delta[None, :]
            g += np.take_along_axis(wb, cols, axis=1).sum(axis=0)
        pc = np.bitwise_count(delta.astype(np.uint64)).astype(np.int64)
        self.binned = np.bincount(pc, weights=g, minlength=self.n_bits + 1)

    def purity(self, lam):
        mu = lam * lam
        return float(self.binned @ mu ** np.arange(self.n_bits + 1))


class _LowRankPlan:
    """Purity through the Schmidt expansion of the Gram matrix.

    G = sum_k s_k^2 u_k u_k+ splits the quadratic form into pair vectors
    w_kl[a] = u_k[a] conj(u_l[a]); their Walsh-Hadamard power spectra,
    binned by parity sector, are accumulated once (O(chi^2 L_A 2^L_A),
    chi bounded by the complement dimension).
    """

    def __init__(self, coeff):
        na = coeff.shape[0]
        self.n_bits = na.bit_length() - 1
        u, s, _ = np.linalg.svd(coeff, full_matrices=False)
        if s.size and s[0] > 0:
            keep = s > 1e-12 * s[0]
        else:
            keep = slice(0, 1)
        vectors = np.ascontiguousarray(u[:, keep].T)  # (chi, 2^L_A)
        weights2 = s[keep] ** 2
        chi = weights2.size
        ks, ls = np.triu_indices(chi)
        pair_w = weights2[ks] * weights2[ls] * np.where(ks == ls, 1.0, 2.0)
        pc = _parity_bins(na)
        spectrum = np.zeros(self.n_bits + 1)
        block = max(1, _BLOCK_ELEMENTS // na)
        for c0 in range(0, ks.size, block):
            c1 = min(ks.size, c0 + block)
            w = vectors[ks[c0:c1]] * vectors[ls[c0:c1]].conj()
            _fwht_inplace(w, self.n_bits)
            power = pair_w[c0:c1] @ np.abs(w) ** 2
            spectrum += np.bincount(pc, weights=power, minlength=self.n_bits + 1)
        self.spectrum = spectrum / na

    def purity(self, lam):
        return _spectrum_purity(self.spectrum, self.n_bits, lam)


class _FullChainPlan:
    """Whole-chain dephasing: purity = q^T K q with q the outcome distribution."""

    def __init__(self, probs):
        self.n_bits = len(probs).bit_length() - 1
        f = np.array(probs, dtype=np.float64)
        _fwht_inplace(f, self.n_bits)
        self.spectrum = (
            np.bincount(_parity_bins(len(probs)), weights=f**2, minlength=self.n_bits + 1)
            / len(probs)
        )

    def purity(self, lam):
        return _spectrum_purity(self.spectrum, self.n_bits, lam)


def _resolve_algorithm(algorithm, length, L):
    if algorithm not in ALGORITHMS:
        raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {algorithm!r}")
    if algorithm == "auto":
        if length == L:
            return "rank1_full"
        return "dense_gram" if length <= DENSE_GRAM_MAX_SITES else "low_rank"
    if algorithm == "rank1_full" and length != L:
        raise ValueError("rank1_full applies only to the whole chain")
    if algorithm == "dense_gram" and length > DENSE_GRAM_MAX_SITES:
        raise ValueError(
            f"dense_gram is capped at window size {DENSE_GRAM_MAX_SITES}, got {length}"
        )
    return algorithm


class GsePlan:
    """Reusable evaluator of the dephased-subsystem Renyi-2 entropy.

    Bound to one pure state, one contiguous site window and one axis; the
    expensive state-dependent work happens once in the constructor and
    `entropy(p_m)` is then cheap across a strength grid.  Thread-safe after
    construction (evaluation only reads the stored arrays).
    """

    def __init__(self, state, start, length, axis, algorithm="auto"):
        check_axis(axis)
        L = num_sites(state)
        self.L = L
        self.window = (start, length)
        self.axis = axis
        self.algorithm = _resolve_algorithm(algorithm, length, L)
        rot = rotate_to_basis(state, axis)
        if self.algorithm == "rank1_full":
            self._impl = _FullChainPlan(np.abs(rot) ** 2)
        else:
            coeff = window_coefficient_matrix(rot, start, length)
            if self.algorithm == "dense_gram":
                self._impl = _DenseGramPlan(coeff)
            else:
                self._impl = _LowRankPlan(coeff)

    def purity(self, p_m):
        if not 0.0 <= p_m <= 0.5:
            raise ValueError(f"p_m={p_m} outside [0, 1/2]")
        # exact lam = 0 at the projective point, no rounding from 1 - 2*0.5
        lam = 0.0 if p_m == 0.5 else 1.0 - 2.0 * p_m
        return self._impl.purity(lam)

    def entropy(self, p_m):
        purity = self.purity(p_m)
        if not np.isfinite(purity) or purity <= 0.0:
            raise FloatingPointError(f"purity {purity} underflowed")
        return float(-np.log(purity) + 0.0)  # +0.0 folds -0.0 into 0.0


def marginal_probabilities(state, part: Bipartition, axis):
    """Outcome distribution of subsystem A in the product eigenbasis of `axis`."""
    rot = rotate_to_basis(state, axis)
    c = coefficient_matrix(rot, part)
    return np.sum(np.abs(c) ** 2, axis=1)


def _window_outcome_purity(rot_state, start, length):
    c = window_coefficient_matrix(rot_state, start, length)
    p = np.sum(np.abs(c) ** 2, axis=1)
    return float(np.sum(p**2))


def renyi2_shannon_entropy(state, part: Bipartition, axis):
    """-log sum_a (p^A_a)^2 over the subsystem-A marginals."""
    p = marginal_probabilities(state, part, axis)
    return float(-np.log(np.sum(p**2)))


def renyi2_ee(state, part: Bipartition):
    """Renyi-2 entanglement entropy, -log sum_k s_k^4."""
    s = schmidt(state, part).values
    return float(-np.log(np.sum(s**4)))


def r2gse_pure(state, part: Bipartition, axis, p_m, algorithm="auto"):
    """Renyi-2 entropy of subsystem A after strength-p_m dephasing of A.

    Computed without forming the full density matrix; `algorithm` selects
    among dense_gram, low_rank and rank1_full (auto picks by window size).
    """
    return GsePlan(state, 0, part.L_A, axis, algorithm=algorithm).entropy(p_m)


@dataclass(frozen=True)
class MiPoint:
    """One mutual-information sample; I2 = S_A + S_B - S_AB as stored."""

    L: int
    L_A: int
    axis: str
    p_m: float
    p_y: float
    S_A: float
    S_B: float
    S_AB: float
    I2: float


class MiPlan:
    """Plans for S_A, S_B and S_AB of one pure state and bipartition.

    Rotates the state once; `point(p_m)` assembles a MiPoint and is cheap
    across a strength grid.  For sweeps over several L_A values use
    `build_mi_plans`, which shares the rotation and the whole-chain plan.
    """

    def __init__(self, state, part: Bipartition, axis):
        check_axis(axis)
        if num_sites(state) != part.L:
            raise ValueError("state length does not match bipartition")
        rot = rotate_to_basis(state, axis)
        self._assemble(part, axis, rot, GsePlan(rot, 0, part.L, "Z"))

    def _assemble(self, part, axis, rotated, plan_ab):
        self.part = part
        self.axis = axis
        self._plan_a = GsePlan(rotated, 0, part.L_A, "Z")
        self._plan_b = GsePlan(rotated, part.L_A, part.L_B, "Z")
        self._plan_ab = plan_ab

    def point(self, p_m, p_y=0.0) -> MiPoint:
        s_a = self._plan_a.entropy(p_m)
        s_b = self._plan_b.entropy(p_m)
        s_ab = self._plan_ab.entropy(p_m)
        return MiPoint(
            L=self.part.L,
            L_A=self.part.L_A,
            axis=self.axis,
            p_m=float(p_m),
            p_y=float(p_y),
            S_A=s_a,
            S_B=s_b,
            S_AB=s_ab,
            I2=s_a + s_b - s_ab,
        )


def build_mi_plans(state, L_A_values, axis, workers=1):
    """MiPlans for several bipartitions of one state, sharing the basis
    rotation and the whole-chain plan; returns {L_A: MiPlan}."""
    L = num_sites(state)
    rot = rotate_to_basis(state, axis)
    plan_ab = GsePlan(rot, 0, L, "Z")

    def build(l_a):
        plan = MiPlan.__new__(MiPlan)
        plan._assemble(Bipartition(L, l_a), axis, rot, plan_ab)
        return l_a, plan

    values = sorted(set(int(v) for v in L_A_values))
    if workers <= 1:
        return dict(build(v) for v in values)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return dict(pool.map(build, values))


def r2gsmi(state_or_supervector, part: Bipartition, axis, p_m, p_y=0.0) -> MiPoint:
    """Generalized mutual information S_A + S_B - S_AB at strength p_m.

    Accepts a pure state (length 2^L, fast pure-state algorithms) or a
    vectorized density matrix (length 4^L, doubled-space path).  `p_y` is
    metadata stamped on the returned point; the decoherence itself must
    already be baked into a supervector input.
    """
    arr = np.asarray(state_or_supervector)
    if len(arr) == 2**part.L:
        return MiPlan(arr, part, axis).point(p_m, p_y=p_y)
    if len(arr) == 4**part.L:
        s_a = generalized_entropy_supervector(arr, part.sites_A, part.sites_B, axis, p_m)
        s_b = generalized_entropy_supervector(arr, part.sites_B, part.sites_A, axis, p_m)
        s_ab = generalized_entropy_supervector(arr, tuple(range(part.L)), (), axis, p_m)
        return MiPoint(
            L=part.L,
            L_A=part.L_A,
            axis=axis,
            p_m=float(p_m),
            p_y=float(p_y),
            S_A=s_a,
            S_B=s_b,
            S_AB=s_ab,
            I2=s_a + s_b - s_ab,
        )
    raise ValueError(
        f"input length {len(arr)} matches neither a state (2^{part.L}) nor a "
        f"supervector (4^{part.L})"
    )


def r2smi(state, part: Bipartition, axis):
    """Shannon-form mutual information from the outcome marginals.

    Equals r2gsmi at p_m = 1/2, where the dephasing acts as a non-selective
    projective measurement.
    """
    rot = rotate_to_basis(state, axis)
    s_a = -np.log(_window_outcome_purity(rot, 0, part.L_A))
    s_b = -np.log(_window_outcome_purity(rot, part.L_A, part.L_B))
    s_ab = -np.log(float(np.sum(np.abs(rot) ** 4)))
    return float(s_a + s_b - s_ab)


def conjectured_cn(n, c):
    """Closed-form Renyi-n central charge: c for n=1, c*n/(n-1) for n>1."""
    if int(n) != n or n < 1:
        raise ValueError(f"Renyi index must be an integer >= 1, got {n!r}")
    n = int(n)
    return float(c) if n == 1 else float(c) * n / (n - 1)
