"""Finite-energy resource states that simulate a channel under teleportation.

For every loss or amplifier channel (tau, v) there is a two-parameter family
of standard-form states, indexed by the target symplectic spectrum
(nu_minus, nu_plus), such that continuous-variable teleportation with gain
tau over the state reproduces the channel exactly.  The additive-noise
channel (tau = 1) has its own parametrization, obtained as the tau -> 1
limit of the loss-side family.

The CM entries for tau != 1, writing t = |1 - tau| and d = nu_plus - nu_minus:

    a = (t d + (1 + tau) v - 2 gamma) / (1 - tau)^2
    b = (tau t d + (1 + tau) v - 2 gamma) / (1 - tau)^2
    c = (tau t d + 2 tau v - (1 + tau) gamma) / (sqrt(tau) (1 - tau)^2)

with gamma = sqrt(tau (v - t nu_minus) (v + t nu_plus)) >= 0, and for tau = 1:

    a = (nu_minus^2 + 2 nu_minus (nu_plus - v) + (nu_plus + v)^2) / (4 v)
    b = (nu_minus^2 + 2 nu_minus (nu_plus + v) + (nu_plus - v)^2) / (4 v)
    c = (nu_minus + nu_plus - v)(nu_minus + nu_plus + v) / (4 v)

The off-diagonal pattern is always (c1, c2) = (c, -c).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelKind, PhaseInsensitiveChannel, channel_from_params
from .errors import InfeasibleSpectrumError, NumericGuardError, UnsupportedChannelError
from .symplectic import is_physical, standard_form_cm

# Relative slack applied when testing the gamma radicand and the
# nu_minus <= 2 nbar + 1 boundary, both of which are feasible with gamma = 0.
_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class ResourceSpectrum:
    """Target symplectic spectrum (nu_minus, nu_plus) with 1 <= nu- <= nu+."""

    nu_minus: float
    nu_plus: float

    def __post_init__(self):
        if not (math.isfinite(self.nu_minus) and math.isfinite(self.nu_plus)):
            raise ValueError("non-finite spectrum")
        if self.nu_minus < 1.0 - _BOUNDARY_TOL or self.nu_plus < self.nu_minus * (1.0 - _BOUNDARY_TOL):
            raise InfeasibleSpectrumError(
                f"need 1 <= nu_minus <= nu_plus, got ({self.nu_minus}, {self.nu_plus})"
            )

    @property
    def mu(self) -> float:
        """Purity of a state with this spectrum, 1/(nu_minus * nu_plus)."""
        return 1.0 / (self.nu_minus * self.nu_plus)


@dataclass(frozen=True)
class ResourceState:
    """A resource CM together with its spectrum and the channel it simulates."""

    cm: np.ndarray = field(repr=False)
    spectrum: ResourceSpectrum
    channel: PhaseInsensitiveChannel


def gamma(tau: float, v: float, nu_minus: float, nu_plus: float) -> float:
    """Correlation offset gamma = sqrt(tau (v - |1-tau| nu-)(v + |1-tau| nu+)).

    Vanishes on the quantum-limited boundary v = |1 - tau| nu_minus.

    Raises:
        InfeasibleSpectrumError: if the radicand is negative, i.e. the
            requested nu_minus exceeds v / |1 - tau| for this channel.
    """
    if tau <= 0.0 or abs(1.0 - tau) <= 1e-15:
        raise ValueError(f"gamma requires tau > 0, tau != 1, got {tau}")
    t = abs(1.0 - tau)
    first = v - t * nu_minus
    if first < -_BOUNDARY_TOL * max(v, 1.0):
        raise InfeasibleSpectrumError(
            f"nu_minus = {nu_minus} exceeds v/|1-tau| = {v / t}; gamma is imaginary"
        )
    rad = tau * max(first, 0.0) * (v + t * nu_plus)
    return math.sqrt(rad)


def resource_state(
    tau: float, v: float, nu_minus: float, nu_plus: float
) -> ResourceState:
    """Resource state of a loss or amplifier channel for a target spectrum.

    Raises:
        InfeasibleSpectrumError: spectrum outside the admissible region.
        UnsupportedChannelError: tau = 1 (use ``additive_resource_state``)
            or identity channel.
    """
    ch = channel_from_params(tau, v)
    if ch.kind is ChannelKind.IDENTITY:
        raise UnsupportedChannelError("identity channel needs no resource state")
    if ch.kind is ChannelKind.ADDITIVE:
        raise UnsupportedChannelError(
            "tau = 1 is the additive-noise channel; use additive_resource_state"
        )
    spectrum = ResourceSpectrum(nu_minus, nu_plus)
    cap = 2.0 * ch.nbar + 1.0
    if nu_minus > cap * (1.0 + _BOUNDARY_TOL):
        raise InfeasibleSpectrumError(
            f"nu_minus = {nu_minus} exceeds 2*nbar + 1 = {cap} for {ch}"
        )
    g = gamma(tau, v, nu_minus, nu_plus)
    if g < 0.0:
        # Only the non-negative branch of gamma generates this state class.
        raise InfeasibleSpectrumError("gamma must be non-negative")
    t = abs(1.0 - tau)
    d = nu_plus - nu_minus
    denom = (1.0 - tau) ** 2
    a = (t * d + (1.0 + tau) * v - 2.0 * g) / denom
    b = (tau * t * d + (1.0 + tau) * v - 2.0 * g) / denom
    c = (tau * t * d + 2.0 * tau * v - (1.0 + tau) * g) / (math.sqrt(tau) * denom)
    if not all(math.isfinite(x) for x in (a, b, c)):
        raise NumericGuardError(
            f"resource CM entries overflow for spectrum ({nu_minus}, {nu_plus})"
        )
    cm = standard_form_cm(a, b, c, -c)
    return ResourceState(cm=cm, spectrum=spectrum, channel=ch)


def additive_resource_state(
    v: float, nu_minus: float, nu_plus: float
) -> ResourceState:
    """Resource state of the additive-noise channel (tau = 1) with noise v."""
    if not math.isfinite(v) or v <= 0.0:
        raise ValueError(f"additive channel requires v > 0, got {v}")
    spectrum = ResourceSpectrum(nu_minus, nu_plus)
    a = (nu_minus**2 + 2.0 * nu_minus * (nu_plus - v) + (nu_plus + v) ** 2) / (4.0 * v)
    b = (nu_minus**2 + 2.0 * nu_minus * (nu_plus + v) + (nu_plus - v) ** 2) / (4.0 * v)
    c = (nu_minus + nu_plus - v) * (nu_minus + nu_plus + v) / (4.0 * v)
    if not all(math.isfinite(x) for x in (a, b, c)):
        raise NumericGuardError(
            f"resource CM entries overflow for spectrum ({nu_minus}, {nu_plus})"
        )
    cm = standard_form_cm(a, b, c, -c)
    if not is_physical(cm):
        raise InfeasibleSpectrumError(
            f"additive resource CM is unphysical for (v, nu-, nu+) = ({v}, {nu_minus}, {nu_plus})"
        )
    return ResourceState(
        cm=cm,
        spectrum=spectrum,
        channel=PhaseInsensitiveChannel(ChannelKind.ADDITIVE, 1.0, v),
    )


def simulated_channel_params(cm: np.ndarray, gain_tau: float) -> tuple[float, float]:
    """Channel (tau, v) induced by teleporting with a given gain over ``cm``.

    For a standard-form resource with correlations (c, -c) the teleported
    channel is tau_sim = gain and v_sim = gain*a - 2*sqrt(gain)*c + b.

    Raises:
        ValueError: if the CM is not standard form with antisymmetric
            off-diagonal signs, or the gain is not positive.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise ValueError(f"expected a two-mode (4x4) CM, got {cm.shape}")
    if gain_tau <= 0.0:
        raise ValueError(f"teleportation gain must be positive, got {gain_tau}")
    a, b = cm[0, 0], cm[2, 2]
    c1, c2 = cm[0, 2], cm[1, 3]
    scale = max(1.0, float(np.max(np.abs(cm))))
    off_mask = np.array(
        [
            [0, 1, 0, 1],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 0, 1, 0],
        ],
        dtype=bool,
    )
    if (
        np.max(np.abs(cm[off_mask])) > 1e-9 * scale
        or abs(cm[1, 1] - a) > 1e-9 * scale
        or abs(cm[3, 3] - b) > 1e-9 * scale
        or abs(c1 + c2) > 1e-9 * scale
    ):
        raise ValueError("CM is not in standard form with (c, -c) correlations")
    v_sim = gain_tau * a - 2.0 * math.sqrt(gain_tau) * c1 + b
    return gain_tau, v_sim


def _interval_candidate(ch: PhaseInsensitiveChannel, mu: float) -> tuple[float, float] | None:
    hi = 1.0 / math.sqrt(mu)  # nu- <= nu+ with nu+ = 1/(mu nu-)
    if ch.kind in (ChannelKind.LOSS, ChannelKind.AMPLIFIER):
        hi = min(hi, 2.0 * ch.nbar + 1.0)
    if hi < 1.0:
        return None
    return 1.0, hi


def feasible_interval(
    ch: PhaseInsensitiveChannel, mu: float
) -> tuple[float, float] | None:
    """Admissible nu_minus interval at fixed purity, with nu+ = 1/(mu nu-).

    Loss/amplifier: [1, min(2 nbar + 1, 1/sqrt(mu))].  Additive: [1,
    1/sqrt(mu)] intersected with the numerically-physical region of the
    assembled CM (in practice the whole interval).  Returns None when empty.

    Raises:
        UnsupportedChannelError: identity channel.
        ValueError: mu outside (0, 1].
    """
    if ch.kind is ChannelKind.IDENTITY:
        raise UnsupportedChannelError("identity channel has no resource class")
    if not (0.0 < mu <= 1.0):
        raise ValueError(f"purity must lie in (0, 1], got {mu}")
    span = _interval_candidate(ch, mu)
    if span is None:
        return None
    lo, hi = span
    if ch.kind is not ChannelKind.ADDITIVE:
        return lo, hi

    def ok(nu_minus: float) -> bool:
        try:
            additive_resource_state(ch.v, nu_minus, 1.0 / (mu * nu_minus))
        except (InfeasibleSpectrumError, NumericGuardError, ValueError):
            return False
        return True

    # The additive class is physical on the whole interval (the assembled CM
    # has spectrum exactly (nu-, nu+)); probe a few points anyway and shrink
    # to the physical prefix if that ever fails.
    probes = np.linspace(lo, hi, 9)
    good = [ok(x) for x in probes]
    if all(good):
        return lo, hi
    if not good[0]:
        return None
    bad_idx = good.index(False)
    left, right = probes[bad_idx - 1], probes[bad_idx]
    for _ in range(60):
        mid = 0.5 * (left + right)
        if ok(mid):
            left = mid
        else:
            right = mid
    return lo, float(left)
