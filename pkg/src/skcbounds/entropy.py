r"""Exact relative entropy between Gaussian states, its variance, and the
entanglement bound obtained from a fixed separable reference state.

For zero-mean Gaussian states with CMs sigma_1, sigma_2 the relative entropy
in bits is

    S(rho_1 || rho_2) = -Sigma(sigma_1, sigma_1, 0) + Sigma(sigma_1, sigma_2, delta)

with the entropic functional

    Sigma(sigma_1, sigma_j, delta)
        = [ln det((sigma_j + i Omega)/2) + tr(sigma_1 G_j)/2
           + delta^T G_j delta / 2] / (2 ln 2),

where G_j is the Gibbs matrix of sigma_j and delta the first-moment
difference.  The -Sigma(sigma_1, sigma_1, 0) term equals minus the von
Neumann entropy of sigma_1 and is evaluated in that closed form, which stays
exact when sigma_1 has pure modes.

The variance of the relative entropy, with G~ = G_1 - G_2, is

    V(rho_1 || rho_2) = [tr(sigma_1 G~ sigma_1 G~) + tr(G~ Omega G~ Omega)
                         + 2 delta^T G_2 sigma_1 G_2 delta] / (2 (2 ln 2)^2).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericGuardError, UnphysicalStateError
from .symplectic import (
    PHYSICALITY_TOL,
    _require_cm,
    gibbs_matrix,
    standard_form_cm,
    symplectic_form,
    von_neumann_entropy,
)

_2LN2 = 2.0 * math.log(2.0)


@dataclass(frozen=True)
class StatePair:
    """Two Gaussian states entering a relative-entropy computation.

    delta is the first-moment difference u_2 - u_1 (zero when omitted).
    """

    sigma1: np.ndarray = field(repr=False)
    sigma2: np.ndarray = field(repr=False)
    delta: np.ndarray | None = None

    def __post_init__(self):
        s1 = _require_cm(self.sigma1)
        s2 = _require_cm(self.sigma2)
        if s1.shape != s2.shape:
            raise ValueError(f"CM dimensions differ: {s1.shape} vs {s2.shape}")
        object.__setattr__(self, "sigma1", s1)
        object.__setattr__(self, "sigma2", s2)
        if self.delta is not None:
            d = np.asarray(self.delta, dtype=float)
            if d.shape != (s1.shape[0],):
                raise ValueError(f"delta must have shape ({s1.shape[0]},)")
            object.__setattr__(self, "delta", d)


def _log_det_bona_fide(sigma: np.ndarray) -> float:
    """ln det((sigma + i Omega)/2) through the Hermitian eigenvalues.

    The matrix (sigma + i Omega)/2 is Hermitian and positive semidefinite
    for physical sigma, so the determinant is real; tiny negative
    eigenvalues (> -1e-10) are floored at 1e-300 before the log.
    """
    n = sigma.shape[0] // 2
    herm = 0.5 * (sigma + 1j * symplectic_form(n))
    w = np.linalg.eigvalsh(herm)
    if w[0] < -PHYSICALITY_TOL:
        raise UnphysicalStateError(
            f"sigma + i*Omega has negative eigenvalue {w[0]}; state is unphysical"
        )
    w = np.clip(w, 1e-300, None)
    return float(np.sum(np.log(w)))


def sigma_functional(
    sigma1: np.ndarray, sigma_j: np.ndarray, delta: np.ndarray | None = None
) -> float:
    """Entropic functional Sigma(sigma_1, sigma_j, delta) in bits.

    Requires sigma_j full rank (all nu > 1 + 1e-10); Sigma(sigma, sigma, 0)
    equals the von Neumann entropy of sigma.
    """
    sigma1 = _require_cm(sigma1)
    sigma_j = _require_cm(sigma_j)
    if sigma1.shape != sigma_j.shape:
        raise ValueError(f"CM dimensions differ: {sigma1.shape} vs {sigma_j.shape}")
    g_j = gibbs_matrix(sigma_j)  # raises NumericGuardError when near-pure
    val = _log_det_bona_fide(sigma_j) + 0.5 * float(np.trace(sigma1 @ g_j))
    if delta is not None:
        delta = np.asarray(delta, dtype=float)
        val += 0.5 * float(delta @ g_j @ delta)
    return val / _2LN2


def relative_entropy(pair: StatePair) -> float:
    """Relative entropy S(rho_1 || rho_2) in bits.

    sigma_1 may be pure; sigma_2 must be full rank.
    """
    return -von_neumann_entropy(pair.sigma1) + sigma_functional(
        pair.sigma1, pair.sigma2, pair.delta
    )


def relative_entropy_variance(pair: StatePair) -> float:
    """Variance of the relative entropy, in bits^2.

    Both states must be full rank since both Gibbs matrices enter.
    """
    g1 = gibbs_matrix(pair.sigma1)
    g2 = gibbs_matrix(pair.sigma2)
    n = pair.sigma1.shape[0] // 2
    omega = symplectic_form(n)
    g_diff = g1 - g2
    val = float(np.trace(pair.sigma1 @ g_diff @ pair.sigma1 @ g_diff))
    val += float(np.trace(g_diff @ omega @ g_diff @ omega))
    if pair.delta is not None:
        val += 2.0 * float(pair.delta @ g2 @ pair.sigma1 @ g2 @ pair.delta)
    return val / (2.0 * _2LN2**2)


def closest_separable_candidate(cm: np.ndarray) -> np.ndarray:
    """Separable reference state: same diagonal blocks, correlations replaced
    by +-sqrt((a-1)(b-1)).

    The sign pattern of the input off-diagonals is preserved; zero entries
    resolve to (+, -).

    Raises:
        ValueError: a <= 1 or b <= 1 (degenerate; the only candidate is the
            product state with c -> 0).
        NumericGuardError: the replacement overflows.
    """
    cm = _require_cm(cm)
    if cm.shape != (4, 4):
        raise ValueError(f"expected a two-mode (4x4) CM, got {cm.shape}")
    a, b = cm[0, 0], cm[2, 2]
    c1, c2 = cm[0, 2], cm[1, 3]
    if a <= 1.0 or b <= 1.0:
        raise ValueError(
            f"candidate undefined for a <= 1 or b <= 1 (a={a}, b={b}); "
            "the only separable candidate is the product state"
        )
    mag = math.sqrt((a - 1.0) * (b - 1.0))
    if not math.isfinite(mag):
        raise NumericGuardError("separable-candidate correlation overflows")
    s1 = 1.0 if c1 >= 0.0 else -1.0
    s2 = -1.0 if c2 <= 0.0 else 1.0
    return standard_form_cm(a, b, s1 * mag, s2 * mag)


def ree_upper(cm: np.ndarray) -> float:
    """Upper bound on the relative entropy of entanglement of a standard-form
    state: its relative entropy to the fixed separable candidate.

    Not tight for every input (it can be positive on separable states); it is
    only guaranteed to dominate the true REE.  States with a or b at the
    vacuum value are necessarily product states and return 0.
    """
    cm = _require_cm(cm)
    if cm.shape != (4, 4):
        raise ValueError(f"expected a two-mode (4x4) CM, got {cm.shape}")
    a, b = cm[0, 0], cm[2, 2]
    if a <= 1.0 + 1e-12 or b <= 1.0 + 1e-12:
        # A physical standard-form CM with a vacuum diagonal block carries no
        # correlations, so the candidate degenerates to the state itself.
        if max(abs(cm[0, 2]), abs(cm[1, 3])) > 1e-6 * max(1.0, a, b):
            raise UnphysicalStateError(
                "correlated CM with a vacuum diagonal block is unphysical"
            )
        return 0.0
    return relative_entropy(StatePair(cm, closest_separable_candidate(cm)))
