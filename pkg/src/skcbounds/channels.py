"""One-mode phase-insensitive Gaussian channels and their action on CMs.

A channel is described by a transmissivity/gain tau and an additive noise
variance v.  At the CM level the channel acts on the second mode of a
two-mode state as

    sigma_out = (I (+) sqrt(tau) I) sigma_in (I (+) sqrt(tau) I)^T + (0 (+) v I).

Physical channels satisfy v >= |1 - tau|, with equality for the
quantum-limited (pure loss / pure amplifier) cases.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UnsupportedChannelError
from .symplectic import _require_cm, tmsv_cm

# tau this close to 1 is routed to the additive-noise parametrization,
# whose formulas stay stable where the loss/amplifier ones blow up.
_TAU_UNITY_TOL = 1e-9


class ChannelKind(str, Enum):
    LOSS = "loss"
    AMPLIFIER = "amplifier"
    ADDITIVE = "additive"
    IDENTITY = "identity"


@dataclass(frozen=True)
class PhaseInsensitiveChannel:
    """A classified channel: kind plus parameters (tau, v, nbar).

    nbar is the mean photon number of the environment; it is defined for
    loss and amplifier channels and None otherwise.
    """

    kind: ChannelKind
    tau: float
    v: float
    nbar: float | None = None

    def __str__(self) -> str:
        if self.nbar is not None:
            return f"{self.kind.value}(tau={self.tau:g}, nbar={self.nbar:g})"
        return f"{self.kind.value}(tau={self.tau:g}, v={self.v:g})"


def noise_from_nbar(tau: float, nbar: float) -> float:
    """Noise variance v = |1 - tau| (2 nbar + 1) of a thermal environment."""
    if not (math.isfinite(tau) and math.isfinite(nbar)):
        raise ValueError("non-finite channel parameters")
    if tau <= 0.0:
        raise ValueError(f"transmissivity/gain must be positive, got {tau}")
    if abs(1.0 - tau) <= _TAU_UNITY_TOL:
        raise UnsupportedChannelError(
            "tau = 1 is the additive-noise channel; pass v directly"
        )
    if nbar < 0.0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    return abs(1.0 - tau) * (2.0 * nbar + 1.0)


def channel_from_params(tau: float, v: float) -> PhaseInsensitiveChannel:
    """Classify (tau, v) into loss / amplifier / additive / identity.

    For loss and amplifier channels the environment photon number
    nbar = v / (2|1 - tau|) - 1/2 is derived and stored.  Noise below the
    quantum-limited floor v = |1 - tau| is rejected as unphysical.
    """
    if not (math.isfinite(tau) and math.isfinite(v)):
        raise ValueError("non-finite channel parameters")
    if tau <= 0.0:
        raise ValueError(f"transmissivity/gain must be positive, got {tau}")
    if v < 0.0:
        raise ValueError(f"noise variance must be >= 0, got {v}")
    if abs(1.0 - tau) <= _TAU_UNITY_TOL:
        if v == 0.0:
            return PhaseInsensitiveChannel(ChannelKind.IDENTITY, 1.0, 0.0)
        return PhaseInsensitiveChannel(ChannelKind.ADDITIVE, 1.0, v)
    floor = abs(1.0 - tau)
    if v < floor * (1.0 - 1e-12):
        raise ValueError(
            f"noise v={v} below the quantum-limited floor |1-tau|={floor}"
        )
    nbar = max(v / (2.0 * floor) - 0.5, 0.0)
    kind = ChannelKind.LOSS if tau < 1.0 else ChannelKind.AMPLIFIER
    return PhaseInsensitiveChannel(kind, tau, v, nbar)


def apply_channel(cm: np.ndarray, ch: PhaseInsensitiveChannel) -> np.ndarray:
    """Send mode 2 of a two-mode CM through the channel."""
    cm = _require_cm(cm)
    if cm.shape != (4, 4):
        raise ValueError(f"expected a two-mode (4x4) CM, got {cm.shape}")
    if ch.kind is ChannelKind.IDENTITY:
        return cm.copy()
    root = math.sqrt(ch.tau)
    scale = np.diag([1.0, 1.0, root, root])
    noise = np.diag([0.0, 0.0, ch.v, ch.v])
    out = scale @ cm @ scale.T + noise
    return 0.5 * (out + out.T)


def choi_quasi_state(ch: PhaseInsensitiveChannel, omega: float) -> np.ndarray:
    """CM of the channel acting on half a TMSV of variance omega.

    The infinite-energy Choi state is the omega -> inf limit of this family.
    """
    return apply_channel(tmsv_cm(omega), ch)
