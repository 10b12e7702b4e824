"""Entanglement and discord-type correlation measures for two-qubit X states.

Conventions: logarithms are base 2, 0 log 0 = 0, and the projective
measurement entering classical correlation and discord acts on the second
qubit.  Concurrence is available both through the general spin-flip
spectrum and through the X-state closed form; the two are required to agree
and the tests cross-validate them on random states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .model import InvariantViolation

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SY_SY = np.kron(_SY, _SY)
_X_ZERO_PATTERN = [(0, 1), (0, 2), (1, 3), (2, 3)]

# Probability below which a measurement branch contributes nothing to the
# conditional entropy.
_BRANCH_EPS = 1e-14


def _entropy(probs) -> float:
    """Shannon entropy in bits; tolerates small negative rounding noise."""
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def _binary_entropy(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)
        b = np.where(x < 1.0, (1.0 - x) * np.log2(np.where(x < 1.0, 1.0 - x, 1.0)), 0.0)
    return -(a + b)


def _x_entries(rho: np.ndarray):
    """Extract (r11, r22, r33, r44, r14, r23), enforcing the X zero pattern."""
    rho = np.asarray(rho)
    off = max(abs(rho[i, j]) for i, j in _X_ZERO_PATTERN)
    if off > 1e-12:
        raise InvariantViolation(f"matrix is not X-form, off-pattern entry {off:.3e}")
    return (rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real,
            complex(rho[0, 3]), complex(rho[1, 2]))


def concurrence_wootters(rho: np.ndarray) -> float:
    """Concurrence from the spin-flip spectrum, for any two-qubit state.

    The decreasing lambda_i are the square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy).  They are evaluated as the singular
    values of the complex-symmetric matrix sqrt(rho) (sy x sy) sqrt(rho)^T,
    whose Gram matrix is similar to the spin-flip product; this keeps the
    near-zero lambda_i at machine precision instead of sqrt(eps).  A
    non-Hermitian input (which is what makes the spin-flip spectrum
    acquire imaginary parts) is rejected.
    """
    rho = np.asarray(rho, dtype=complex)
    if float(np.max(np.abs(rho - rho.conj().T))) > 1e-8:
        raise InvariantViolation(
            "density matrix is not Hermitian; spin-flip spectrum undefined")
    evals, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    sqrt_rho = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.svd(sqrt_rho @ _SY_SY @ sqrt_rho.T, compute_uv=False)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def concurrence_x_state(rho: np.ndarray) -> float:
    """Closed-form concurrence for an X-form density matrix.

    C = 2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)).
    Equals concurrence_wootters on every valid X state.
    """
    r11, r22, r33, r44, r14, r23 = _x_entries(rho)
    c = 2.0 * max(0.0,
                  abs(r14) - math.sqrt(max(r22 * r33, 0.0)),
                  abs(r23) - math.sqrt(max(r11 * r44, 0.0)))
    return float(min(1.0, c))


def density_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of an X-form density matrix, from the two 2x2 blocks.

    Ordered as (outer +, outer -, inner +, inner -) where "outer" is the
    |00>,|11> block and "inner" the |01>,|10> block.
    """
    r11, r22, r33, r44, r14, r23 = _x_entries(rho)
    s_out = math.sqrt((r11 - r44) ** 2 + 4.0 * abs(r14) ** 2)
    s_in = math.sqrt((r22 - r33) ** 2 + 4.0 * abs(r23) ** 2)
    return np.array([0.5 * (r11 + r44 + s_out), 0.5 * (r11 + r44 - s_out),
                     0.5 * (r22 + r33 + s_in), 0.5 * (r22 + r33 - s_in)])


def _marginal_probs(rho: np.ndarray):
    """Diagonals of the two single-qubit marginals of an X state."""
    r11, r22, r33, r44, _, _ = _x_entries(rho)
    return (r11 + r22, r33 + r44), (r11 + r33, r22 + r44)


def mutual_information(rho: np.ndarray) -> float:
    """S(rho_1) + S(rho_2) - S(rho) for an X-form two-qubit state."""
    p1, p2 = _marginal_probs(rho)
    return _entropy(p1) + _entropy(p2) - _entropy(density_eigenvalues(rho))


@dataclass(frozen=True)
class MeasurementParams:
    """Rank-one projective measurement on qubit 2, V = t I + i y.sigma.

    (t_comp, y1, y2, y3) lives on the unit 3-sphere; the measurement
    basis is {V|0>, V|1>}.  The conditional-state formulas depend only on
    the derived quantities k, l, m, n.
    """

    t_comp: float
    y1: float
    y2: float
    y3: float

    def __post_init__(self):
        norm = self.t_comp ** 2 + self.y1 ** 2 + self.y2 ** 2 + self.y3 ** 2
        if abs(norm - 1.0) > 1e-9:
            raise InvariantViolation(
                f"measurement parameters must lie on the unit 3-sphere, norm^2={norm}")

    @classmethod
    def from_angles(cls, chi: float, theta: float, phi: float) -> "MeasurementParams":
        """Hyperspherical parametrization, t = cos(chi), |y| = sin(chi)."""
        r = math.sin(chi)
        return cls(math.cos(chi),
                   r * math.sin(theta) * math.cos(phi),
                   r * math.sin(theta) * math.sin(phi),
                   r * math.cos(theta))

    @property
    def k(self) -> float:
        return self.t_comp ** 2 + self.y3 ** 2

    @property
    def l(self) -> float:
        return 1.0 - self.k

    @property
    def m(self) -> float:
        return (self.t_comp * self.y1 + self.y2 * self.y3) ** 2

    @property
    def n(self) -> float:
        return ((self.t_comp * self.y2 - self.y1 * self.y3)
                * (self.t_comp * self.y1 + self.y2 * self.y3))


# Measurement of sigma_x on qubit 2: k = l = 1/2, m = n = 0.
X_AXIS_MEASUREMENT = MeasurementParams(0.0, math.sqrt(0.5), 0.0, math.sqrt(0.5))


def _branch_terms(rho: np.ndarray, k, m, n):
    """Vectorized (p0, p1, q0, q1) over arrays of measurement invariants.

    q_i is the eigenvalue splitting of the unnormalized conditional state:
    the conditional eigenvalues are (1 +- q_i / p_i) / 2.  The coherence
    contribution uses rho14 conj(rho23); for real rho23 it reduces to the
    symmetric-block expression in terms of rho14 rho23.
    """
    r11, r22, r33, r44, r14, r23 = _x_entries(rho)
    k = np.asarray(k, dtype=float)
    l = 1.0 - k
    zeta = r14 * np.conj(r23)
    theta = (4.0 * k * l * (abs(r14) ** 2 + abs(r23) ** 2)
             + 8.0 * (k * l - 2.0 * np.asarray(m)) * zeta.real
             + 16.0 * np.asarray(n) * zeta.imag)
    p0 = (r11 + r33) * k + (r22 + r44) * l
    p1 = (r11 + r33) * l + (r22 + r44) * k
    q0 = np.sqrt(np.clip(((r11 - r33) * k + (r22 - r44) * l) ** 2 + theta, 0.0, None))
    q1 = np.sqrt(np.clip(((r11 - r33) * l + (r22 - r44) * k) ** 2 + theta, 0.0, None))
    return p0, p1, q0, q1


def conditional_ensemble(rho: np.ndarray, meas: MeasurementParams):
    """Post-measurement ensemble ((p0, (a+, a-)), (p1, (b+, b-))).

    p_i are the outcome probabilities and (a+-), (b+-) the eigenvalue
    pairs of the normalized conditional states.  A branch with
    probability below 1e-14 returns the pure-state pair (1, 0) so its
    entropy contribution is zero by convention.
    """
    p0, p1, q0, q1 = _branch_terms(rho, meas.k, meas.m, meas.n)
    pairs = []
    for p, q in ((float(p0), float(q0)), (float(p1), float(q1))):
        if p > _BRANCH_EPS:
            hi = 0.5 * (1.0 + q / p)
            lo = 0.5 * (1.0 - q / p)
        else:
            hi, lo = 1.0, 0.0
        for value in (hi, lo):
            if not -1e-10 <= value <= 1.0 + 1e-10:
                raise InvariantViolation(
                    f"conditional eigenvalue {value} outside [0, 1]")
        pairs.append((p, (min(hi, 1.0), max(lo, 0.0))))
    return tuple(pairs)


def _conditional_entropy_kmn(rho: np.ndarray, k, m, n):
    """p0 S(rho_0) + p1 S(rho_1), vectorized over measurement invariants."""
    p0, p1, q0, q1 = _branch_terms(rho, k, m, n)
    safe0 = np.where(p0 > _BRANCH_EPS, p0, 1.0)
    safe1 = np.where(p1 > _BRANCH_EPS, p1, 1.0)
    h0 = _binary_entropy(0.5 * (1.0 + np.clip(q0 / safe0, 0.0, 1.0)))
    h1 = _binary_entropy(0.5 * (1.0 + np.clip(q1 / safe1, 0.0, 1.0)))
    return (np.where(p0 > _BRANCH_EPS, p0 * h0, 0.0)
            + np.where(p1 > _BRANCH_EPS, p1 * h1, 0.0))


def conditional_entropy(rho: np.ndarray, meas: MeasurementParams) -> float:
    """Average von Neumann entropy after measuring qubit 2 with meas."""
    return float(_conditional_entropy_kmn(rho, meas.k, meas.m, meas.n))


def _angles_to_kmn(chi, theta, phi):
    t = np.cos(chi)
    r = np.sin(chi)
    y1 = r * np.sin(theta) * np.cos(phi)
    y2 = r * np.sin(theta) * np.sin(phi)
    y3 = r * np.cos(theta)
    k = t ** 2 + y3 ** 2
    m = (t * y1 + y2 * y3) ** 2
    n = (t * y2 - y1 * y3) * (t * y1 + y2 * y3)
    return k, m, n


def minimize_conditional_entropy(rho: np.ndarray, grid_points: int = 21,
                                 refine_seeds: int = 5):
    """Global minimum of the conditional entropy over all measurements.

    Deterministic: a fixed hyperspherical angle grid (grid_points per
    axis, at least 20) is scanned first, then a derivative-free simplex
    refinement runs from the best refine_seeds grid points.  The
    sigma_x measurement (k = l = 1/2, m = n = 0) is always included as
    a candidate, so the result never exceeds its value.

    Returns (MeasurementParams, value) of the best point found.
    """
    grid_points = max(20, int(grid_points))
    chi = np.linspace(0.0, np.pi, grid_points)
    theta = np.linspace(0.0, np.pi, grid_points)
    phi = np.linspace(0.0, 2.0 * np.pi, grid_points, endpoint=False)
    cg, tg, pg = np.meshgrid(chi, theta, phi, indexing="ij")
    k, m, n = _angles_to_kmn(cg, tg, pg)
    values = _conditional_entropy_kmn(rho, k, m, n)

    flat = values.ravel()
    order = np.argsort(flat, kind="stable")[:refine_seeds]

    best_angles = None
    best_value = conditional_entropy(rho, X_AXIS_MEASUREMENT)
    best_meas = X_AXIS_MEASUREMENT

    def objective(x):
        kk, mm, nn = _angles_to_kmn(x[0], x[1], x[2])
        return float(_conditional_entropy_kmn(rho, kk, mm, nn))

    for idx in order:
        i, j, l_ = np.unravel_index(idx, values.shape)
        x0 = np.array([chi[i], theta[j], phi[l_]])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 600})
        candidates = [(float(flat[idx]), x0), (float(res.fun), res.x)]
        for value, ang in candidates:
            if value < best_value:
                best_value = value
                best_angles = ang
    if best_angles is not None:
        best_meas = MeasurementParams.from_angles(*best_angles)
    return best_meas, float(best_value)


@dataclass(frozen=True)
class DiscordResult:
    """Discord and its ingredients for one state."""

    discord: float
    mutual_info: float
    classical_corr: float
    minimizer: MeasurementParams
    min_conditional_entropy: float


def quantum_discord(rho: np.ndarray) -> DiscordResult:
    """Quantum discord D = I - C with measurement on qubit 2.

    C = S(rho_1) - min over measurements of the conditional entropy.
    Tiny negative values from rounding (above -1e-9) are clamped to zero.
    """
    p1, _ = _marginal_probs(rho)
    s1 = _entropy(p1)
    mi = mutual_information(rho)
    meas, min_cond = minimize_conditional_entropy(rho)
    classical = s1 - min_cond
    discord = mi - classical
    for name, value in (("classical correlation", classical), ("discord", discord)):
        if value < -1e-9:
            raise InvariantViolation(f"{name} is negative: {value}")
    return DiscordResult(discord=max(0.0, discord),
                         mutual_info=mi,
                         classical_corr=max(0.0, classical),
                         minimizer=meas,
                         min_conditional_entropy=min_cond)


@dataclass(frozen=True)
class CorrelationRecord:
    """Correlation measures of the reduced state at one time."""

    time: float
    concurrence: float
    discord: float
    mutual_info: float
    classical_corr: float
    minimizer: MeasurementParams


def correlation_record(rho: np.ndarray, time: float) -> CorrelationRecord:
    """All correlation measures of an X-form reduced state."""
    d = quantum_discord(rho)
    return CorrelationRecord(time=float(time),
                             concurrence=concurrence_wootters(rho),
                             discord=d.discord,
                             mutual_info=d.mutual_info,
                             classical_corr=d.classical_corr,
                             minimizer=d.minimizer)
