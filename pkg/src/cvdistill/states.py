"""Gaussian state data model: covariance/mean representation, reduction,
purity, thermal (Williamson) decomposition, Bogoliubov rows and pure-state
Renyi-2 entanglement.

See :mod:`cvdistill.symplectic` for the layout and unit conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .errors import (
    EmptySubsystem,
    GlobalStateNotPure,
    IndexOutOfRange,
    NumericalFailure,
    UnphysicalState,
)
from .symplectic import compose

SYMMETRY_TOL = 1e-10
OCCUPATION_TOL = 1e-9
PURITY_TOL = 1e-9
PURE_GLOBAL_TOL = 1e-6


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GaussianState:
    """An ``m``-mode Gaussian state: quadrature mean vector and covariance matrix.

    ``mean`` has length ``2m`` and ``cov`` is ``2m x 2m`` symmetric, in xxpp
    layout and shot-noise units (vacuum covariance is the identity). The
    covariance is symmetrised on construction; an asymmetry beyond 1e-10
    is rejected.
    """

    m: int
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("mode count must be at least 1")
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (2 * self.m,):
            raise ValueError(f"mean must have shape ({2 * self.m},), got {mean.shape}")
        if cov.shape != (2 * self.m, 2 * self.m):
            raise ValueError(f"cov must have shape {(2 * self.m, 2 * self.m)}, got {cov.shape}")
        if np.abs(cov - cov.T).max() > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric within 1e-10")
        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "cov", _frozen(0.5 * (cov + cov.T)))

    def ladder_mean(self, mode: int) -> complex:
        """Complex ladder amplitude ``<a> = (<x> + i <p>) / 2`` of one mode."""
        if not 0 <= mode < self.m:
            raise IndexOutOfRange(f"mode {mode} outside [0, {self.m})")
        return 0.5 * (self.mean[mode] + 1j * self.mean[self.m + mode])


def vacuum(m: int) -> GaussianState:
    """The ``m``-mode vacuum: zero mean, identity covariance."""
    return GaussianState(m=m, mean=np.zeros(2 * m), cov=np.eye(2 * m))


def apply_circuit(state: GaussianState, elements) -> GaussianState:
    """Apply circuit elements in temporal order and return the new state."""
    S, shift = compose(elements, state.m)
    return GaussianState(m=state.m, mean=S @ state.mean + shift, cov=S @ state.cov @ S.T)


@dataclass(frozen=True)
class SubsystemBasis:
    """A subset of modes of an ``m``-mode system, with its selection matrices.

    ``modes`` is stored sorted. The selector ``A`` is the ``2m x 2m_A``
    matrix whose columns are the canonical basis vectors of the subsystem's
    quadratures, so that ``V_A = A^T V A`` and ``mean_A = A^T mean``.
    """

    m: int
    modes: tuple[int, ...]

    def __post_init__(self):
        modes = tuple(sorted(set(int(i) for i in self.modes)))
        if not modes:
            raise EmptySubsystem("subsystem must contain at least one mode")
        if modes[0] < 0 or modes[-1] >= self.m:
            raise IndexOutOfRange(f"subsystem modes {modes} outside [0, {self.m})")
        object.__setattr__(self, "modes", modes)

    @classmethod
    def coerce(cls, m: int, spec) -> "SubsystemBasis":
        if isinstance(spec, SubsystemBasis):
            if spec.m != m:
                raise ValueError(f"subsystem defined for {spec.m} modes, state has {m}")
            return spec
        if isinstance(spec, (int, np.integer)):
            spec = (int(spec),)
        return cls(m=m, modes=tuple(spec))

    @property
    def size(self) -> int:
        return len(self.modes)

    @property
    def quad_indices(self) -> np.ndarray:
        """Quadrature indices (x block then p block) selected by this subsystem."""
        idx = np.asarray(self.modes, dtype=int)
        return np.concatenate([idx, idx + self.m])

    @property
    def selector(self) -> np.ndarray:
        a = np.zeros((2 * self.m, 2 * self.size))
        a[self.quad_indices, np.arange(2 * self.size)] = 1.0
        return a

    def complement(self) -> "SubsystemBasis":
        rest = tuple(i for i in range(self.m) if i not in self.modes)
        if not rest:
            raise EmptySubsystem("complement of the full system is empty")
        return SubsystemBasis(m=self.m, modes=rest)

    def __contains__(self, mode: int) -> bool:
        return mode in self.modes


def mode_selector(m: int, g: int) -> np.ndarray:
    """The ``2m x 2`` selector ``G`` whose columns are the x and p basis vectors of mode g."""
    if not 0 <= g < m:
        raise IndexOutOfRange(f"mode {g} outside [0, {m})")
    sel = np.zeros((2 * m, 2))
    sel[g, 0] = 1.0
    sel[m + g, 1] = 1.0
    return sel


def reduce_state(state: GaussianState, subsystem) -> GaussianState:
    """Marginal Gaussian state on a subsystem (``V_A = A^T V A``, ``mean_A = A^T mean``)."""
    basis = SubsystemBasis.coerce(state.m, subsystem)
    idx = basis.quad_indices
    return GaussianState(
        m=basis.size,
        mean=state.mean[idx],
        cov=state.cov[np.ix_(idx, idx)],
    )


def purity(state: GaussianState) -> float:
    """Gaussian purity ``1 / sqrt(det V)``.

    Returns a value in ``(0, 1]``: results within 1e-9 above one (round-off
    from long circuit compositions) are clamped to one, anything beyond that
    means the covariance is unphysical.

    Raises:
        UnphysicalState: if ``det V <= 0`` or the purity exceeds ``1 + 1e-9``.
    """
    sign, logdet = np.linalg.slogdet(state.cov)
    if sign <= 0:
        raise UnphysicalState("covariance matrix has non-positive determinant")
    value = float(np.exp(-0.5 * logdet))
    if value > 1.0 + PURITY_TOL:
        raise UnphysicalState(f"purity {value} exceeds 1; covariance is unphysical")
    return min(value, 1.0)


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Thermal decomposition ``V = S diag(nu, nu) S^T`` with symplectic ``S``.

    ``nu`` holds the thermal occupations (symplectic eigenvalues) in
    shot-noise units; :func:`williamson` returns them sorted descending.
    ``mean`` is carried through unchanged from the decomposed state.
    """

    S: np.ndarray
    nu: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "S", _frozen(self.S))
        object.__setattr__(self, "nu", _frozen(np.atleast_1d(self.nu)))
        object.__setattr__(self, "mean", _frozen(self.mean))

    @property
    def m(self) -> int:
        return len(self.nu)

    def thermal_cov(self) -> np.ndarray:
        return np.diag(np.concatenate([self.nu, self.nu]))

    def reconstruct(self) -> np.ndarray:
        return self.S @ self.thermal_cov() @ self.S.T


def _interleave_indices(m: int) -> np.ndarray:
    # position 2i holds x_i, position 2i+1 holds p_i
    pi = np.empty(2 * m, dtype=int)
    pi[0::2] = np.arange(m)
    pi[1::2] = np.arange(m) + m
    return pi


def williamson(state: GaussianState) -> WilliamsonDecomposition:
    """Thermal (Williamson) decomposition of a Gaussian state.

    Works on the antisymmetric matrix ``V^{-1/2} Omega V^{-1/2}``: its real
    Schur form yields the symplectic eigenvalues, and the Schur basis scaled
    back by ``V^{1/2}`` yields the symplectic transformation.

    Args:
        state: the Gaussian state to decompose.

    Returns:
        WilliamsonDecomposition: with ``nu`` sorted descending and
        ``S diag(nu, nu) S^T`` reproducing the covariance.

    Raises:
        UnphysicalState: if the covariance is not positive definite or some
            occupation falls below ``1 - 1e-9``.
        NumericalFailure: if the eigen or Schur factorisation breaks down.
    """
    m = state.m
    pi = _interleave_indices(m)
    v_int = state.cov[np.ix_(pi, pi)]
    try:
        w, q = np.linalg.eigh(v_int)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigendecomposition of the covariance failed") from exc
    if w.min() <= 0:
        raise UnphysicalState("covariance matrix is not positive definite")
    root = (q * np.sqrt(w)) @ q.T
    inv_root = (q / np.sqrt(w)) @ q.T

    omega_int = np.zeros((2 * m, 2 * m))
    for i in range(m):
        omega_int[2 * i, 2 * i + 1] = 1.0
        omega_int[2 * i + 1, 2 * i] = -1.0
    core = inv_root @ omega_int @ inv_root
    core = 0.5 * (core - core.T)
    try:
        t_form, o = schur(core, output="real")
    except Exception as exc:  # pragma: no cover - LAPACK breakdown is exotic
        raise NumericalFailure("Schur reduction of the symplectic core failed") from exc

    # Orient every 2x2 block so its upper-right entry is positive, then order
    # the blocks by descending occupation. Both operations are column moves
    # on the orthogonal Schur basis.
    t = np.empty(m)
    for i in range(m):
        a = t_form[2 * i, 2 * i + 1]
        if a < 0:
            o[:, [2 * i, 2 * i + 1]] = o[:, [2 * i + 1, 2 * i]]
            a = -a
        t[i] = a
    nu = 1.0 / t
    order = np.argsort(-nu)
    cols = np.empty(2 * m, dtype=int)
    cols[0::2] = 2 * order
    cols[1::2] = 2 * order + 1
    o = o[:, cols]
    t = t[order]
    nu = nu[order]

    if nu.min() < 1.0 - OCCUPATION_TOL:
        raise UnphysicalState(f"thermal occupation {nu.min()} below the vacuum value 1")

    s_int = root @ (o * np.repeat(np.sqrt(t), 2))
    S = np.empty_like(s_int)
    S[np.ix_(pi, pi)] = s_int
    return WilliamsonDecomposition(S=S, nu=nu, mean=state.mean)


@dataclass(frozen=True)
class BogoliubovRow:
    """Ladder-space row of a Gaussian unitary: ``b = k . a^dag + l . a + alpha_g``.

    Satisfies ``sum |l|^2 - sum |k|^2 = 1`` (one row of the Bogoliubov
    constraint ``L L^dag - K K^dag = 1``).
    """

    k: np.ndarray
    l: np.ndarray
    alpha_g: complex

    def __post_init__(self):
        k = np.atleast_1d(np.asarray(self.k, dtype=complex))
        ell = np.atleast_1d(np.asarray(self.l, dtype=complex))
        if k.shape != ell.shape:
            raise ValueError("k and l must have the same length")
        k.flags.writeable = False
        ell.flags.writeable = False
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", ell)
        object.__setattr__(self, "alpha_g", complex(self.alpha_g))

    def constraint_deviation(self) -> float:
        return float(abs(np.sum(np.abs(self.l) ** 2) - np.sum(np.abs(self.k) ** 2) - 1.0))


def ladder_blocks(S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Complex Bogoliubov blocks ``(K, L)`` of a symplectic quadrature map.

    With ``S`` partitioned into xx, xp, px, pp blocks, the Heisenberg action
    on the annihilation operators reads ``a -> K a^dag + L a`` where
    ``L = ((S_xx + S_pp) + i (S_px - S_xp)) / 2`` and
    ``K = ((S_xx - S_pp) + i (S_px + S_xp)) / 2``.
    """
    m = S.shape[0] // 2
    sxx, sxp = S[:m, :m], S[:m, m:]
    spx, spp = S[m:, :m], S[m:, m:]
    L = 0.5 * ((sxx + spp) + 1j * (spx - sxp))
    K = 0.5 * ((sxx - spp) + 1j * (spx + sxp))
    return K, L


def bogoliubov_row(decomp: WilliamsonDecomposition, g: int) -> BogoliubovRow:
    """Row ``g`` of the Bogoliubov transform attached to a thermal decomposition.

    The returned row describes the operator obtained by commuting the
    annihilation operator of mode ``g`` through the decomposition's Gaussian
    unitary and displacement: ``b = k . a^dag + l . a + alpha_g`` with
    ``alpha_g = (mean_x(g) + i mean_p(g)) / 2``.

    Raises:
        IndexOutOfRange: if ``g`` is not a mode of the decomposition.
    """
    m = decomp.m
    if not 0 <= g < m:
        raise IndexOutOfRange(f"mode {g} outside [0, {m})")
    K, L = ladder_blocks(decomp.S)
    alpha = 0.5 * (decomp.mean[g] + 1j * decomp.mean[m + g])
    return BogoliubovRow(k=K[g].copy(), l=L[g].copy(), alpha_g=alpha)


def renyi2_entanglement_pure(global_state, subsystem) -> float:
    """Renyi-2 entanglement ``-log mu_A`` of a bipartition of a pure global state.

    ``global_state`` may be a :class:`GaussianState` or any handle exposing
    ``reduced_renyi2(subsystem)`` (e.g. a photon-subtracted pure state).
    Natural logarithm throughout.

    Raises:
        GlobalStateNotPure: if the global Gaussian state has purity below
            ``1 - 1e-6``.
    """
    if isinstance(global_state, GaussianState):
        if purity(global_state) < 1.0 - PURE_GLOBAL_TOL:
            raise GlobalStateNotPure("entanglement entropy needs a pure global state")
        return float(-np.log(purity(reduce_state(global_state, subsystem))))
    reduced = getattr(global_state, "reduced_renyi2", None)
    if reduced is None:
        raise TypeError(f"cannot compute entanglement for {type(global_state).__name__}")
    return float(reduced(subsystem))


def to_snapshot(state: GaussianState) -> dict:
    """JSON-serialisable snapshot ``{m, mean, cov}`` with the covariance row-major."""
    return {
        "m": state.m,
        "mean": [float(x) for x in state.mean],
        "cov": [float(x) for x in state.cov.reshape(-1)],
    }


def from_snapshot(doc: dict) -> GaussianState:
    """Rebuild a state from :func:`to_snapshot` output."""
    m = int(doc["m"])
    mean = np.asarray(doc["mean"], dtype=float)
    cov = np.asarray(doc["cov"], dtype=float).reshape(2 * m, 2 * m)
    return GaussianState(m=m, mean=mean, cov=cov)
