r"""Gaussian-state linear algebra for one and two bosonic modes.

Covariance matrices (CMs) are plain real symmetric numpy arrays in the
xpxp ordering (x1, p1, x2, p2) with the vacuum normalized to the identity,
i.e. the variance of each vacuum quadrature is 1.  A CM describes a
physical state iff sigma + i*Omega >= 0, equivalently iff every symplectic
eigenvalue is >= 1.

All entropic quantities are returned in bits (base-2 logarithms).
"""

import math

import numpy as np

from .errors import NumericGuardError, UnphysicalStateError

# Slack used everywhere when testing nu >= 1.
PHYSICALITY_TOL = 1e-10

_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes: int) -> np.ndarray:
    r"""Return the symplectic form Omega = \oplus_j [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError("need at least one mode")
    blocks = [_OMEGA_1] * n_modes
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for j, blk in enumerate(blocks):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = blk
    return out


def _require_cm(cm: np.ndarray) -> np.ndarray:
    """Validate shape, finiteness and symmetry of a candidate CM."""
    cm = np.asarray(cm, dtype=float)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or cm.shape[0] % 2:
        raise ValueError(f"covariance matrix must be square of even size, got {cm.shape}")
    if not np.all(np.isfinite(cm)):
        raise ValueError("covariance matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(cm))))
    if np.max(np.abs(cm - cm.T)) > 1e-12 * scale:
        raise ValueError("covariance matrix is not symmetric")
    return 0.5 * (cm + cm.T)


def standard_form_cm(a: float, b: float, c1: float, c2: float) -> np.ndarray:
    """Assemble the two-mode standard-form CM.

    Layout::

        [[a, 0, c1, 0],
         [0, a, 0, c2],
         [c1, 0, b, 0],
         [0, c2, 0, b]]

    Args:
        a: diagonal variance of mode 1, must be >= 1.
        b: diagonal variance of mode 2, must be >= 1.
        c1: x-x correlation.
        c2: p-p correlation.

    Returns:
        The 4x4 covariance matrix.
    """
    vals = (a, b, c1, c2)
    if not all(math.isfinite(x) for x in vals):
        raise ValueError(f"non-finite standard-form entries {vals}")
    if a < 1.0 or b < 1.0:
        raise ValueError(f"standard form requires a, b >= 1, got a={a}, b={b}")
    return np.array(
        [
            [a, 0.0, c1, 0.0],
            [0.0, a, 0.0, c2],
            [c1, 0.0, b, 0.0],
            [0.0, c2, 0.0, b],
        ]
    )


def tmsv_cm(omega: float) -> np.ndarray:
    """CM of a two-mode squeezed vacuum with quadrature variance omega >= 1."""
    if not math.isfinite(omega) or omega < 1.0:
        raise ValueError(f"TMSV variance must satisfy omega >= 1, got {omega}")
    c = math.sqrt(omega * omega - 1.0)
    return standard_form_cm(omega, omega, c, -c)


def _sqrtm_spd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (m^{1/2}, m^{-1/2}) for a symmetric positive-definite matrix."""
    w, u = np.linalg.eigh(m)
    if w[0] <= 0.0:
        raise UnphysicalStateError("matrix is not positive definite")
    sq = np.sqrt(w)
    return (u * sq) @ u.T, (u / sq) @ u.T


def symplectic_eigenvalues(cm: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a positive-definite CM.

    The returned values are the moduli of the eigenvalues of i*Omega*sigma,
    one per mode, sorted ascending.  Computed through the Hermitian matrix
    i sigma^{1/2} Omega sigma^{1/2}, which is similar to i*Omega*sigma and
    lets us use a stable Hermitian eigensolver.

    Raises:
        UnphysicalStateError: if the input is not positive definite.
    """
    cm = _require_cm(cm)
    n = cm.shape[0] // 2
    half, _ = _sqrtm_spd(cm)
    herm = 1j * (half @ symplectic_form(n) @ half)
    w = np.linalg.eigvalsh(herm)  # ascending, symmetric about 0
    return w[n:]


def williamson(cm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r"""Williamson normal-mode decomposition sigma = S (\oplus nu_j I_2) S^T.

    The symplectic basis is built from the eigenvectors of the Hermitian
    matrix i sigma^{-1/2} Omega sigma^{-1/2}: an eigenvector u + i v with
    eigenvalue 1/nu spans the normal-mode plane, and the orthogonal columns
    (sqrt(2) v, sqrt(2) u) reproduce the [[0, 1/nu], [-1/nu, 0]] block.  Any
    orthonormal choice inside a degenerate eigenspace is acceptable; all
    downstream quantities are basis independent.

    Returns:
        (nus, S): spectrum sorted ascending and the symplectic matrix S.
    """
    cm = _require_cm(cm)
    n = cm.shape[0] // 2
    half, inv_half = _sqrtm_spd(cm)
    herm = 1j * (inv_half @ symplectic_form(n) @ inv_half)
    w, vecs = np.linalg.eigh(herm)
    # Positive eigenvalues are 1/nu_j; order them so nu is ascending.
    order = sorted((i for i in range(2 * n) if w[i] > 0.0), key=lambda i: -w[i])
    if len(order) != n:
        raise UnphysicalStateError("symplectic spectrum is not strictly paired")
    nus = np.array([1.0 / w[i] for i in order])
    q = np.empty((2 * n, 2 * n))
    for j, i in enumerate(order):
        q[:, 2 * j] = math.sqrt(2.0) * np.imag(vecs[:, i])
        q[:, 2 * j + 1] = math.sqrt(2.0) * np.real(vecs[:, i])
    s = half @ q @ np.diag(np.repeat(1.0 / np.sqrt(nus), 2))
    return nus, s


def purity(cm: np.ndarray) -> float:
    """Purity mu = 1 / prod(nu_j) of a physical CM."""
    nus = symplectic_eigenvalues(cm)
    if nus[0] < 1.0 - PHYSICALITY_TOL:
        raise UnphysicalStateError(f"unphysical CM, min symplectic eigenvalue {nus[0]}")
    return float(1.0 / np.prod(nus))


def is_physical(cm: np.ndarray) -> bool:
    """True iff the CM is positive definite with all nu >= 1 - 1e-10."""
    try:
        nus = symplectic_eigenvalues(cm)
    except (ValueError, UnphysicalStateError, np.linalg.LinAlgError):
        return False
    return bool(nus[0] >= 1.0 - PHYSICALITY_TOL)


def _gibbs_spectral(nu: float) -> float:
    # g(nu) = ln((nu+1)/(nu-1)), accurate for nu >> 1 via log1p.
    return math.log1p(2.0 / (nu - 1.0))


def gibbs_matrix(cm: np.ndarray) -> np.ndarray:
    r"""Gibbs matrix G = 2 i Omega coth^{-1}(i sigma Omega) of a full-rank state.

    Evaluated through the Williamson decomposition sigma = S D S^T as
    G = S^{-T} (\oplus g(nu_j) I_2) S^{-1} with g(nu) = ln((nu+1)/(nu-1)).

    Raises:
        NumericGuardError: if some nu_j <= 1 + 1e-10 (near-pure mode); the
            divergence g(1) = inf must instead be cancelled analytically by
            the caller (entropy-like quantities use per-mode limits).
    """
    nus, s = williamson(cm)
    if nus[0] <= 1.0 + PHYSICALITY_TOL:
        raise NumericGuardError(
            f"Gibbs matrix diverges for near-pure mode (nu = {nus[0]})"
        )
    g = np.array([_gibbs_spectral(nu) for nu in nus])
    s_inv = np.linalg.inv(s)
    out = s_inv.T @ np.diag(np.repeat(g, 2)) @ s_inv
    return 0.5 * (out + out.T)


def cm_from_gibbs(g: np.ndarray) -> np.ndarray:
    r"""Inverse of :func:`gibbs_matrix`: sigma = coth(i Omega G / 2) i Omega.

    Uses the Williamson decomposition of G itself, G = S_G (\oplus g_j) S_G^T,
    and maps each normal mode through nu = coth(g_j / 2).

    Raises:
        NumericGuardError: if G is singular (some g_j ~ 0 means a diverging CM).
    """
    g = _require_cm(g)
    try:
        lam, s_g = williamson(g)
    except UnphysicalStateError as exc:
        raise NumericGuardError(f"Gibbs matrix is not positive definite: {exc}") from exc
    if lam[0] < 1e-14:
        raise NumericGuardError(f"singular Gibbs matrix (spectral value {lam[0]})")
    nus = 1.0 / np.tanh(lam / 2.0)
    s_inv = np.linalg.inv(s_g)
    out = s_inv.T @ np.diag(np.repeat(nus, 2)) @ s_inv
    return 0.5 * (out + out.T)


def von_neumann_entropy(cm: np.ndarray) -> float:
    """Von Neumann entropy in bits, sum over modes of h((nu_j - 1)/2).

    Pure modes (nu within 1e-10 of 1) contribute exactly 0.
    """
    from .bounds import h  # local import to avoid a module cycle

    nus = symplectic_eigenvalues(cm)
    if nus[0] < 1.0 - PHYSICALITY_TOL:
        raise UnphysicalStateError(f"unphysical CM, min symplectic eigenvalue {nus[0]}")
    total = 0.0
    for nu in nus:
        if nu - 1.0 <= PHYSICALITY_TOL:
            continue
        total += h((nu - 1.0) / 2.0)
    return total
