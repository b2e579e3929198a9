"""Single-photon subtraction and addition on Gaussian states.

Two independent computation routes are provided for the purity change caused
by subtracting one photon from mode ``g`` of a (possibly mixed) Gaussian
state:

* a phase-space route: the reduced subtracted state has a Wigner function of
  the form (quadratic polynomial) x (Gaussian), and its purity is a quartic
  Gaussian moment evaluated in closed form by Wick pairing;
* a ladder-space route: the thermal decomposition plus the Bogoliubov row of
  the subtracted mode feed a closed-form expression for the relative purity
  ``mu_minus / mu``.

Photon addition reuses the ladder-space route with the roles of ``k`` and
``l`` (and ``alpha_g`` with its conjugate) interchanged.

The relative purity never drops below one half, so the Renyi-2 entanglement
of a pure global state can grow by at most ``log 2`` under either operation.
Natural logarithms everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    GlobalStateNotPure,
    IndexOutOfRange,
    InvalidOccupation,
    SingularCovariance,
    VacuumModeSubtraction,
)
from .states import (
    BogoliubovRow,
    GaussianState,
    SubsystemBasis,
    WilliamsonDecomposition,
    bogoliubov_row,
    mode_selector,
    purity,
    reduce_state,
    williamson,
)

PURE_GLOBAL_TOL = 1e-6
VACUUM_WEIGHT_TOL = 1e-10
CONDITION_LIMIT = 1e12

LOG_2 = float(np.log(2.0))


@dataclass(frozen=True)
class SubtractedReducedState:
    """Reduced state of mode-``g`` photon subtraction, in Wigner form.

    Represents ``W(beta) = [d^T Q d + q . d + c] / norm * W_G(beta)`` with
    ``d = beta - mean_A`` and ``W_G`` the Gaussian Wigner function of
    ``base``. ``norm`` equals ``|alpha_g|^2 + tr(V_g) - 2`` in quadrature
    units, which is four times the mean photon number of mode ``g``.
    """

    base: GaussianState
    poly_Q: np.ndarray
    poly_q: np.ndarray
    poly_c: float
    norm: float

    def normalization_integral(self) -> float:
        """Total phase-space integral of the Wigner function; one for a valid state."""
        return float((np.trace(self.poly_Q @ self.base.cov) + self.poly_c) / self.norm)


def subtract_reduced_wigner(state: GaussianState, g: int, subsystem) -> SubtractedReducedState:
    """Wigner-form reduced state after subtracting one photon from mode ``g``.

    Args:
        state: the global Gaussian state.
        g: mode the photon is subtracted from; must belong to ``subsystem``.
        subsystem: the modes kept after the partial trace.

    Returns:
        SubtractedReducedState: normalised polynomial-times-Gaussian Wigner
        representation of the reduced subtracted state.

    Raises:
        VacuumModeSubtraction: if mode ``g`` carries no photons, so the
            subtraction has zero success weight.
        SingularCovariance: if the reduced covariance is too ill-conditioned
            to invert (condition number above 1e12).
        IndexOutOfRange: if ``g`` is not part of ``subsystem``.
    """
    basis = SubsystemBasis.coerce(state.m, subsystem)
    if g not in basis:
        raise IndexOutOfRange(f"mode {g} is not part of subsystem {basis.modes}")

    sel_g = mode_selector(state.m, g)
    v_g = sel_g.T @ state.cov @ sel_g
    alpha_g = sel_g.T @ state.mean
    norm = float(alpha_g @ alpha_g + np.trace(v_g) - 2.0)
    if norm <= VACUUM_WEIGHT_TOL:
        raise VacuumModeSubtraction(
            f"mode {g} is vacuum (mean photon weight {norm / 4.0:.3e}); subtraction undefined"
        )

    idx = basis.quad_indices
    v_a = state.cov[np.ix_(idx, idx)]
    if np.linalg.cond(v_a) > CONDITION_LIMIT:
        raise SingularCovariance("reduced covariance condition number exceeds 1e12")

    gi = np.array([g, g + state.m])
    x_mat = (state.cov - np.eye(2 * state.m))[np.ix_(gi, idx)]
    mt = np.linalg.solve(v_a, x_mat.T)  # V_A^{-1} X^T
    poly_q_mat = mt @ mt.T
    poly_q_vec = -2.0 * (mt @ alpha_g)
    poly_c = float(alpha_g @ alpha_g + np.trace(v_g) - np.trace(x_mat @ mt) - 2.0)

    base = GaussianState(m=basis.size, mean=state.mean[idx], cov=v_a)
    return SubtractedReducedState(
        base=base, poly_Q=poly_q_mat, poly_q=poly_q_vec, poly_c=poly_c, norm=norm
    )


def _second_moment(s: SubtractedReducedState) -> float:
    # E[P(d)^2] for d ~ N(0, V_A / 2), by Wick pairing of the quartic part.
    sigma = 0.5 * s.base.cov
    qs = s.poly_Q @ sigma
    t_q = float(np.trace(qs))
    t_qq = float(np.trace(qs @ qs))
    q_sig_q = float(s.poly_q @ sigma @ s.poly_q)
    c = s.poly_c
    return t_q * t_q + 2.0 * t_qq + q_sig_q + 2.0 * c * t_q + c * c


def relative_purity_of_subtracted(s: SubtractedReducedState) -> float:
    """Purity of the subtracted reduced state divided by the Gaussian purity."""
    return _second_moment(s) / (s.norm * s.norm)


def purity_of_subtracted(s: SubtractedReducedState) -> float:
    """Purity of a reduced photon-subtracted state from its Wigner moments.

    Squaring the Wigner function halves the Gaussian covariance, so the
    purity is the quartic polynomial's second moment over ``N(0, V_A / 2)``
    divided by ``sqrt(det V_A)`` and the squared normalisation.
    """
    return relative_purity_of_subtracted(s) * purity(s.base)


@dataclass(frozen=True)
class ThermalTraceSet:
    """The eight single-mode thermal trace moments behind the relative purity.

    All values are for a thermal state with covariance ``diag(n, n)``, i.e.
    mean photon number ``(n - 1) / 2``.
    """

    n: float
    a_rho_adag: float        # tr(a rho a^dag)
    adag_rho_a: float        # tr(a^dag rho a)
    a_rho_adag_sq: float     # tr(a rho a^dag a rho a^dag)
    adag_rho_a_sq: float     # tr(a^dag rho a a^dag rho a)
    adag_rho_a_a_rho_adag: float  # tr(a^dag rho a a rho a^dag)
    rho2_adag_a: float       # tr(rho^2 a^dag a)
    rho2_a_adag: float       # tr(rho^2 a a^dag)
    rho_adag_rho_a: float    # tr(rho a^dag rho a)


def thermal_traces(n: float) -> ThermalTraceSet:
    """Closed forms of the eight thermal trace moments.

    Args:
        n: thermal occupation in shot-noise units (vacuum is 1).

    Raises:
        InvalidOccupation: for ``n < 1``.
    """
    if n < 1.0:
        raise InvalidOccupation(f"thermal occupation {n} below the vacuum value 1")
    n = float(n)
    sub = (n - 1.0) / 2.0
    add = (n + 1.0) / 2.0
    kernel = (1.0 + n * n) / (2.0 * n ** 3)
    return ThermalTraceSet(
        n=n,
        a_rho_adag=sub,
        adag_rho_a=add,
        a_rho_adag_sq=kernel * sub * sub,
        adag_rho_a_sq=kernel * add * add,
        adag_rho_a_a_rho_adag=(n * n - 1.0) ** 2 / (8.0 * n ** 3),
        rho2_adag_a=(n - 1.0) ** 2 / (4.0 * n * n),
        rho2_a_adag=(n + 1.0) ** 2 / (4.0 * n * n),
        rho_adag_rho_a=(n + 1.0) * (n - 1.0) / (4.0 * n * n),
    )


def relative_purity_closed_form(
    decomp: WilliamsonDecomposition, row: BogoliubovRow, kind: str = "subtract"
) -> float:
    """Relative purity ``mu_after / mu`` of single-photon subtraction or addition.

    Evaluates the closed form built from the thermal occupations ``nu`` and
    the Bogoliubov row ``(k, l, alpha_g)`` of the altered mode. For
    ``kind="add"`` the roles of ``k`` and ``l`` are swapped and ``alpha_g``
    is conjugated before evaluation.

    The result is bounded below by one half; when all occupations equal one
    (pure reduced state) it collapses to exactly one.

    Raises:
        VacuumModeSubtraction: if the success weight (mean photon number of
            the altered mode) is numerically zero.
        ValueError: for an unknown ``kind``.
    """
    if kind == "subtract":
        k, ell, alpha = row.k, row.l, row.alpha_g
    elif kind == "add":
        k, ell, alpha = row.l, row.k, np.conj(row.alpha_g)
    else:
        raise ValueError(f"kind must be 'subtract' or 'add', got {kind!r}")
    n = np.asarray(decomp.nu, dtype=float)
    if k.shape != n.shape:
        raise ValueError("Bogoliubov row length does not match the decomposition")

    k2 = np.abs(k) ** 2
    l2 = np.abs(ell) ** 2
    big_n = k2 * (n + 1.0) / 2.0 + l2 * (n - 1.0) / 2.0
    big_n_tilde = k2 * (n + 1.0) / 2.0 - l2 * (n - 1.0) / 2.0
    weight = float(big_n.sum() + abs(alpha) ** 2)
    if weight <= VACUUM_WEIGHT_TOL:
        raise VacuumModeSubtraction(
            f"mode carries mean photon weight {weight:.3e}; operation undefined"
        )

    kl_sum = complex(np.sum(k * ell * (n * n - 1.0) / (2.0 * n)))
    a2 = abs(alpha) ** 2
    numerator = (
        0.5 * float(np.sum(big_n_tilde / n)) ** 2
        + 0.5 * a2 * a2
        + abs(kl_sum) ** 2
        + a2 * float(big_n.sum())
        + 2.0 * float(np.real(np.conj(alpha) ** 2 * kl_sum))
    )
    return 0.5 + numerator / (weight * weight)


def _g_side(state: GaussianState, subsystem, g: int) -> SubsystemBasis:
    # The analytic machinery lives on the side of the bipartition holding g;
    # for pure global states both reduced purities coincide, so the answer is
    # the same for either side.
    basis = SubsystemBasis.coerce(state.m, subsystem)
    if not 0 <= g < state.m:
        raise IndexOutOfRange(f"mode {g} outside [0, {state.m})")
    return basis if g in basis else basis.complement()


def entanglement_increase(state: GaussianState, subsystem, g: int, kind: str = "subtract") -> float:
    """Renyi-2 entanglement change of a bipartition under photon subtraction/addition.

    ``subsystem`` names one side of the bipartition; the photon is taken
    from (or added to) mode ``g``, which may sit on either side. Subtraction
    is evaluated through the Wigner-moment route, addition through the
    closed-form route. The result never exceeds ``log 2``.

    Args:
        state: pure global Gaussian state.
        subsystem: one side of the bipartition.
        g: mode index of the photon operation.
        kind: ``"subtract"`` or ``"add"``.

    Returns:
        float: ``E_after - E_before`` in nats.

    Raises:
        GlobalStateNotPure: if the global state is not pure within 1e-6.
        VacuumModeSubtraction: if mode ``g`` is vacuum and ``kind="subtract"``.
    """
    if purity(state) < 1.0 - PURE_GLOBAL_TOL:
        raise GlobalStateNotPure("entanglement increase is defined for pure global states")
    side = _g_side(state, subsystem, g)
    if kind == "subtract":
        sub = subtract_reduced_wigner(state, g, side)
        ratio = relative_purity_of_subtracted(sub)
    elif kind == "add":
        decomp = williamson(reduce_state(state, side))
        row = bogoliubov_row(decomp, side.modes.index(g))
        ratio = relative_purity_closed_form(decomp, row, kind="add")
    else:
        raise ValueError(f"kind must be 'subtract' or 'add', got {kind!r}")
    return float(-np.log(ratio))


@dataclass(frozen=True)
class SubtractedGlobalState:
    """Handle for a pure global Gaussian state with one photon removed or added.

    The handle plugs into :func:`cvdistill.states.renyi2_entanglement_pure`:
    its reduced Renyi-2 entropy is the Gaussian entropy of the base state
    plus the entanglement increase of the photon operation.
    """

    base: GaussianState
    g: int
    kind: str = "subtract"

    def __post_init__(self):
        if self.kind not in ("subtract", "add"):
            raise ValueError(f"kind must be 'subtract' or 'add', got {self.kind!r}")
        if not 0 <= self.g < self.base.m:
            raise IndexOutOfRange(f"mode {self.g} outside [0, {self.base.m})")

    def reduced_renyi2(self, subsystem) -> float:
        side = _g_side(self.base, subsystem, self.g)
        before = -np.log(purity(reduce_state(self.base, side)))
        return float(before + entanglement_increase(self.base, side, self.g, self.kind))
