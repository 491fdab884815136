"""Secret-key-rate upper bounds: closed-form infinite-energy values,
the fixed-purity optimized bound, and its second-order finite-size expansion.

All bounds are in secret bits per channel use.
"""

import math
from dataclasses import dataclass

from .channels import ChannelKind, PhaseInsensitiveChannel
from .entropy import StatePair, closest_separable_candidate, ree_upper, relative_entropy_variance
from .errors import InfeasibleSpectrumError, NumericGuardError, UnsupportedChannelError
from .resources import additive_resource_state, feasible_interval, resource_state

_LN2 = math.log(2.0)
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_EVALS = 10_000
# Objective values this close count as ties, resolved toward smaller nu-.
_TIE_TOL = 1e-12


def h(x: float) -> float:
    """Entropy of a thermal mode with mean photon number x, in bits:
    (x+1) log2(x+1) - x log2(x), with h(0) = 0.
    """
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"h is defined for x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    return math.fsum(((x + 1.0) * math.log2(x + 1.0), -x * math.log2(x)))


def b0(ch: PhaseInsensitiveChannel) -> float:
    """Infinite-energy upper bound for a phase-insensitive channel.

    Piecewise closed forms (zero outside the stated regions):

    * loss:      -log2[(1 - tau) tau^nbar] - h(nbar)   for nbar < tau/(1-tau)
    * amplifier: -log2[(tau - 1)/tau^(nbar+1)] - h(nbar) for nbar < 1/(tau-1)
    * additive:  (v - 2)/(2 ln 2) - log2(v/2)          for v < 2

    Raises:
        UnsupportedChannelError: identity channel (unbounded).
    """
    if ch.kind is ChannelKind.IDENTITY:
        raise UnsupportedChannelError("identity channel has unbounded capacity")
    if ch.kind is ChannelKind.LOSS:
        tau, nbar = ch.tau, ch.nbar
        if nbar >= tau / (1.0 - tau):
            return 0.0
        return math.fsum(
            (-math.log2(1.0 - tau), -nbar * math.log2(tau), -h(nbar))
        )
    if ch.kind is ChannelKind.AMPLIFIER:
        tau, nbar = ch.tau, ch.nbar
        if nbar >= 1.0 / (tau - 1.0):
            return 0.0
        return math.fsum(
            (-math.log2(tau - 1.0), (nbar + 1.0) * math.log2(tau), -h(nbar))
        )
    v = ch.v
    if v >= 2.0:
        return 0.0
    return math.fsum(((v - 2.0) / (2.0 * _LN2), -math.log2(v / 2.0)))


@dataclass(frozen=True)
class BoundResult:
    """Outcome of a fixed-purity bound optimization."""

    value: float
    argmin_nu_minus: float
    feasible_interval: tuple[float, float]
    evaluations: int
    converged: bool


def _resource_cm(ch: PhaseInsensitiveChannel, mu: float, nu_minus: float):
    nu_plus = 1.0 / (mu * nu_minus)
    if ch.kind is ChannelKind.ADDITIVE:
        return additive_resource_state(ch.v, nu_minus, nu_plus).cm
    return resource_state(ch.tau, ch.v, nu_minus, nu_plus).cm


def b_mu(ch: PhaseInsensitiveChannel, mu: float, tol: float = 1e-6) -> BoundResult:
    """Fixed-purity bound: minimize the separable-candidate relative entropy
    over the one remaining spectrum parameter nu_minus (nu_plus = 1/(mu nu-)).

    A 64-point coarse grid brackets the minimum, then golden-section search
    refines it until the bracket is narrower than ``tol`` in nu_minus.  The
    value is reported exactly as computed, never clamped to the
    infinite-energy bound.

    Raises:
        InfeasibleSpectrumError: empty feasible interval.
        NumericGuardError: numerically meaningless regime (e.g. extreme
            purity causing overflow) or optimizer non-convergence.
    """
    if not (0.0 < mu <= 1.0):
        raise ValueError(f"purity must lie in (0, 1], got {mu}")
    span = feasible_interval(ch, mu)
    if span is None:
        raise InfeasibleSpectrumError(f"no feasible spectrum for {ch} at mu = {mu}")
    lo, hi = span
    evals = 0

    def objective(nu_minus: float) -> float:
        nonlocal evals
        if evals >= _MAX_EVALS:
            raise NumericGuardError(
                f"bound optimizer exceeded {_MAX_EVALS} evaluations"
            )
        evals += 1
        return ree_upper(_resource_cm(ch, mu, nu_minus))

    if hi - lo < 1e-12:
        # Pure channels: the interval degenerates to a point, nothing to search.
        value = objective(lo)
        return BoundResult(value, lo, (lo, hi), evals, True)

    xs = [lo + (hi - lo) * k / 63.0 for k in range(64)]
    best_i, best_f = 0, objective(xs[0])
    for i in range(1, 64):
        f = objective(xs[i])
        if f < best_f - _TIE_TOL:
            best_i, best_f = i, f
    a = xs[max(best_i - 1, 0)]
    b = xs[min(best_i + 1, 63)]

    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = objective(x1), objective(x2)
    converged = False
    while evals < _MAX_EVALS:
        if b - a < tol:
            converged = True
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = objective(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = objective(x2)
    if not converged:
        raise NumericGuardError(
            f"bound optimizer did not converge within {_MAX_EVALS} evaluations"
        )
    # Tie-break toward the smaller nu_minus among the final candidates.
    candidates = sorted([(a, objective(a)), (x1, f1), (x2, f2)], key=lambda p: p[0])
    arg, val = candidates[0]
    for x, f in candidates[1:]:
        if f < val - _TIE_TOL:
            arg, val = x, f
    return BoundResult(val, arg, (lo, hi), evals, True)


# Acklam's rational approximation to the inverse normal CDF (relative error
# below 1.2e-9), subsequently polished to machine precision by Newton steps.
_ICDF_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ICDF_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ICDF_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ICDF_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_ICDF_P_LOW = 0.02425


def normal_cdf(x: float) -> float:
    """Standard normal CDF, accurate in both tails via erfc."""
    if x >= 0.0:
        return 1.0 - 0.5 * math.erfc(x / math.sqrt(2.0))
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def inverse_gaussian_cdf(epsilon: float) -> float:
    """Inverse of the standard normal CDF.

    A rational approximation supplies the starting point and two Newton
    iterations on the CDF polish it; |CDF(F(eps)) - eps| <= 1e-12 across
    the whole domain.

    Raises:
        ValueError: epsilon outside the open interval (0, 1).
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if epsilon == 0.5:
        return 0.0
    p = epsilon
    if p < _ICDF_P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        num = ((((_ICDF_C[0] * q + _ICDF_C[1]) * q + _ICDF_C[2]) * q + _ICDF_C[3]) * q + _ICDF_C[4]) * q + _ICDF_C[5]
        den = (((_ICDF_D[0] * q + _ICDF_D[1]) * q + _ICDF_D[2]) * q + _ICDF_D[3]) * q + 1.0
        x = num / den
    elif p <= 1.0 - _ICDF_P_LOW:
        q = p - 0.5
        r = q * q
        num = ((((_ICDF_A[0] * r + _ICDF_A[1]) * r + _ICDF_A[2]) * r + _ICDF_A[3]) * r + _ICDF_A[4]) * r + _ICDF_A[5]
        den = ((((_ICDF_B[0] * r + _ICDF_B[1]) * r + _ICDF_B[2]) * r + _ICDF_B[3]) * r + _ICDF_B[4]) * r + 1.0
        x = q * num / den
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        num = ((((_ICDF_C[0] * q + _ICDF_C[1]) * q + _ICDF_C[2]) * q + _ICDF_C[3]) * q + _ICDF_C[4]) * q + _ICDF_C[5]
        den = (((_ICDF_D[0] * q + _ICDF_D[1]) * q + _ICDF_D[2]) * q + _ICDF_D[3]) * q + 1.0
        x = -num / den
    for _ in range(2):
        x -= (normal_cdf(x) - epsilon) / _normal_pdf(x)
    return x


@dataclass(frozen=True)
class NonAsymptoticSpec:
    """Finite-size query: n channel uses, security parameter epsilon, purity mu."""

    n: int
    epsilon: float
    mu: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not (0.0 < self.mu <= 1.0):
            raise ValueError(f"purity must lie in (0, 1], got {self.mu}")


def _variance_at_optimum(
    ch: PhaseInsensitiveChannel, mu: float, result: BoundResult
) -> float:
    cm = _resource_cm(ch, mu, result.argmin_nu_minus)
    pair = StatePair(cm, closest_separable_candidate(cm))
    return relative_entropy_variance(pair)


def phi_n(ch: PhaseInsensitiveChannel, spec: NonAsymptoticSpec, tol: float = 1e-6) -> float:
    """Two-term finite-size bound: B_mu + sqrt(V/n) F(epsilon).

    V is the relative-entropy variance between the optimal resource state
    (the B_mu argmin) and its separable candidate.  The O(log(n)/n)
    remainder of the full expansion is omitted.
    """
    result = b_mu(ch, spec.mu, tol)
    variance = _variance_at_optimum(ch, spec.mu, result)
    return result.value + math.sqrt(variance / spec.n) * inverse_gaussian_cdf(spec.epsilon)


def nonasymptotic_curve(
    ch: PhaseInsensitiveChannel,
    mu: float,
    epsilon: float,
    n_values: list[int],
    tol: float = 1e-6,
) -> tuple[list[float], float, float]:
    """Evaluate phi_n over many n sharing one bound optimization.

    Returns (phi values aligned with ``n_values``, B_mu, variance V).
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    result = b_mu(ch, mu, tol)
    variance = _variance_at_optimum(ch, mu, result)
    f_eps = inverse_gaussian_cdf(epsilon)
    phis = [result.value + math.sqrt(variance / n) * f_eps for n in n_values]
    return phis, result.value, variance
