"""Power-series side of the coefficient model, carried in log-domain.

The change of variable w = e^{2cz} turns the positive-index part of a
coefficient vector into a power series F(w) whose norm weights grow like
e^{2a(n+1)^2}.  Those weights, and moduli |w| = e^{2a lambda}, overflow
double precision almost immediately, so series coefficients live as
(log-magnitude, phase) pairs and all products and sums happen in log
coordinates.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gauss_space
from .errors import (
    BadParameterError,
    GridTooCoarseError,
    OnZeroError,
    TooFewTermsError,
    UnsortedInputError,
)
from .lattice import GaussianParam
from .logdomain import (
    log_abs_diff_exp,
    log_abs_one_minus_exp,
    logsumexp,
    wrap_angle,
)

__all__ = [
    "FockSeries",
    "LogPolarPoint",
    "RadialGrid",
    "GeneratingProduct",
    "FockCisVerdict",
    "to_fock",
    "fock_norm",
    "default_radial_grid",
    "fock_norm_quadrature",
    "phi",
    "kernel_norm",
    "node_transform",
    "consistency_identity",
    "log_distance_to_zeros",
    "generating_product_G0",
    "g0_estimate_ratio",
    "generating_product_perturbed",
    "fock_cis_verdict",
    "fock_delta_from_lattice",
    "fock_points_from_sequence",
]


@dataclass(frozen=True)
class LogPolarPoint:
    """A nonzero complex number stored as (log|w|, arg w)."""

    log_modulus: float
    argument: float

    def __post_init__(self):
        if not (np.isfinite(self.log_modulus) and np.isfinite(self.argument)):
            raise BadParameterError("log-polar fields must be finite")

    @classmethod
    def from_complex(cls, w) -> "LogPolarPoint":
        w = complex(w)
        if w == 0:
            raise BadParameterError("log-polar point cannot represent 0")
        return cls(float(np.log(abs(w))), float(np.angle(w)))

    def to_complex(self) -> complex:
        """May overflow for large log-modulus; intended for small points."""
        return complex(np.exp(self.log_modulus) * np.exp(1j * self.argument))


@dataclass(frozen=True)
class FockSeries:
    """Power series sum_k b_k w^k with coefficients in log-polar form.

    ``log_magnitude[k]`` is log|b_k| (-inf for an exact zero, whose phase is
    stored as 0).  Degrees run from 0 to len - 1.
    """

    log_magnitude: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        lm = np.asarray(self.log_magnitude, dtype=float).copy()
        ph = np.asarray(self.phase, dtype=float).copy()
        if lm.shape != ph.shape or lm.ndim != 1:
            raise BadParameterError("log-magnitude and phase must be equal-length 1-d")
        if np.any(np.isnan(lm)) or lm.size and np.any(lm == np.inf):
            raise BadParameterError("log-magnitudes must be < inf and not NaN")
        if not np.all(np.isfinite(ph)):
            raise BadParameterError("phases must be finite")
        ph = np.where(np.isneginf(lm), 0.0, wrap_angle(ph))
        lm.setflags(write=False)
        ph.setflags(write=False)
        object.__setattr__(self, "log_magnitude", lm)
        object.__setattr__(self, "phase", ph)

    @classmethod
    def from_coefficients(cls, values) -> "FockSeries":
        values = np.asarray(values, dtype=complex)
        with np.errstate(divide="ignore"):
            lm = np.log(np.abs(values))
        return cls(lm, np.angle(values))

    @classmethod
    def zero(cls) -> "FockSeries":
        return cls(np.empty(0), np.empty(0))

    @property
    def degree(self) -> int:
        return len(self.log_magnitude) - 1

    def coefficient(self, k: int) -> complex:
        """b_k as a complex number; may overflow for extreme magnitudes."""
        if k < 0 or k > self.degree:
            return 0.0 + 0.0j
        return complex(np.exp(self.log_magnitude[k]) * np.exp(1j * self.phase[k]))

    def evaluate_log(self, p: LogPolarPoint):
        """(log|F(w)|, arg F(w)) at a log-polar point.

        The largest term is factored out so the residual sum is O(1).
        """
        if len(self.log_magnitude) == 0:
            return -np.inf, 0.0
        k = np.arange(len(self.log_magnitude))
        term_log = self.log_magnitude + k * p.log_modulus
        top = np.max(term_log)
        if top == -np.inf:
            return -np.inf, 0.0
        s = np.sum(np.exp(term_log - top + 1j * (self.phase + k * p.argument)))
        if s == 0:
            return -np.inf, 0.0
        return float(top + np.log(abs(s))), float(np.angle(s))

    def to_json(self) -> dict:
        lm = [None if np.isneginf(v) else float(v) for v in self.log_magnitude]
        return {"log_magnitude": lm, "phase": [float(v) for v in self.phase]}

    @classmethod
    def from_json(cls, data: dict) -> "FockSeries":
        lm = np.array(
            [-np.inf if v is None else float(v) for v in data["log_magnitude"]]
        )
        return cls(lm, np.asarray(data["phase"], dtype=float))


def to_fock(c: GaussianParam, coeffs: gauss_space.CoefficientVector):
    """Split a coefficient vector into its two power series and center value.

    The positive part maps index n >= 1 to degree n - 1 with coefficient
    c_n e^{-c n^2}; the negative part does the same with c_{-n}.  The norm
    weights cancel the e^{-a n^2} factors exactly, so each series has the
    plain l2 norm of its coefficients.
    """
    f_minus, c0, f_plus = gauss_space.split_parts(coeffs)

    def series(part, sign):
        hi = part.index_range[1] if sign > 0 else -part.index_range[0]
        if len(part) == 0 or hi < 1:
            return FockSeries.zero()
        lm = np.full(hi, -np.inf)
        ph = np.zeros(hi)
        for n in range(1, hi + 1):
            v = part.value_at(sign * n)
            if v != 0:
                lm[n - 1] = np.log(abs(v)) - c.a * n * n
                ph[n - 1] = np.angle(v) - c.b * n * n
        return FockSeries(lm, ph)

    return series(f_minus, -1), c0, series(f_plus, +1)


def fock_norm(series: FockSeries, a: float) -> float:
    """Log of the squared weighted norm sum_k |b_k|^2 e^{2a(k+1)^2}."""
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    if len(series.log_magnitude) == 0:
        return -np.inf
    k = np.arange(len(series.log_magnitude))
    terms = 2.0 * series.log_magnitude + 2.0 * a * (k + 1.0) ** 2
    return float(logsumexp(terms))


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid in t = log r used by the quadrature norm."""

    t_lo: float
    t_hi: float
    step: float

    def points(self) -> np.ndarray:
        n = int(np.floor((self.t_hi - self.t_lo) / self.step)) + 1
        return self.t_lo + self.step * np.arange(n)


def default_radial_grid(a: float, degree: int, step: Optional[float] = None) -> RadialGrid:
    """Grid wide enough that the integrand tail is far below 1e-10 of the
    total for polynomials up to the given degree."""
    pad = 8.0 * np.sqrt(a) + 2.0
    if step is None:
        step = 0.25 * np.sqrt(a)
    return RadialGrid(-pad, 2.0 * a * (degree + 1.0) + pad, step)


def _quadrature_log(series: FockSeries, a: float, t: np.ndarray, n_theta: int) -> float:
    """log of the weighted area integral of |F|^2 on the given radial grid."""
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    k = np.arange(len(series.log_magnitude))
    # log|F(e^{t+i theta})| with the max term factored per t
    term_log = series.log_magnitude[None, :] + np.outer(t, k)
    top = np.max(term_log, axis=1)
    finite = top > -np.inf
    rel = np.exp(term_log - np.where(finite, top, 0.0)[:, None])
    osc = np.exp(1j * (series.phase[None, :] + np.outer(theta, k)))  # (theta, k)
    vals = rel @ osc.T  # (t, theta)
    mean_sq = np.mean(np.abs(vals) ** 2, axis=1)
    with np.errstate(divide="ignore"):
        log_angular = np.where(finite, 2.0 * top + np.log(mean_sq), -np.inf)
    # radial weight e^{2t - t^2/(2a)}; trapezoid weights on a uniform grid
    log_integrand = log_angular + 2.0 * t - t * t / (2.0 * a)
    h = t[1] - t[0]
    w = np.full(len(t), h)
    w[0] = w[-1] = h / 2.0
    log_prefactor = -np.log(2.0) - 0.5 * np.log(2.0 * np.pi * a) + np.log(2.0)
    return float(logsumexp(log_integrand + np.log(w)) + log_prefactor)


def fock_norm_quadrature(
    series: FockSeries,
    a: float,
    grid: Optional[RadialGrid] = None,
    rel_tol: float = 1e-8,
) -> float:
    """Weighted-area-integral norm of a polynomial, evaluated numerically.

    The integral is taken in log-radial coordinates where the weight is a
    Gaussian in t = log r; the angular average is a trapezoid rule with
    enough points to integrate the trig polynomial |F|^2 exactly.  The
    result is cross-checked on the half-resolution grid and
    GridTooCoarseError is raised when the two disagree beyond ``rel_tol``.
    """
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    if len(series.log_magnitude) == 0:
        return 0.0
    if grid is None:
        grid = default_radial_grid(a, series.degree)
    t = grid.points()
    if len(t) < 9:
        raise GridTooCoarseError("radial grid needs at least 9 points")
    n_theta = 2 * series.degree + 8
    full = _quadrature_log(series, a, t, n_theta)
    half = _quadrature_log(series, a, t[::2], n_theta)
    if full == -np.inf:
        return 0.0
    if abs(np.expm1(half - full)) > rel_tol:
        raise GridTooCoarseError(
            f"half-resolution estimate differs by {abs(np.expm1(half - full)):.2e}"
        )
    return float(np.exp(full))


def phi(a: float, p: LogPolarPoint) -> float:
    """Radial growth exponent (log|w|)^2 / (4a)."""
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    return p.log_modulus**2 / (4.0 * a)


def kernel_norm(a: float, p: LogPolarPoint, n_terms: Optional[int] = None):
    """Squared norm of the point-evaluation kernel, as a log, plus a ratio.

    The series sum_{n>=0} |w|^{2n} e^{-2a(n+1)^2} peaks near
    n = log|w|/(2a) - 1; terms are accumulated past the peak until the
    certified geometric tail is below 1e-12 of the partial sum.  The second
    return value is the normalized ratio

        ||k_w||^2 (1 + |w|^2) e^{-2 phi+(w)},

    where phi+ uses log+|w|: the comparison growth saturates at 0 inside the
    unit circle, where the kernel itself tends to the constant term.
    """
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    lm = p.log_modulus
    peak = max(0.0, lm / (2.0 * a) - 1.0)
    needed = int(np.ceil(peak + np.sqrt(40.0 / a) + 4.0))
    n_used = needed if n_terms is None else int(n_terms)
    n = np.arange(n_used + 1)
    term_log = 2.0 * n * lm - 2.0 * a * (n + 1.0) ** 2
    total = logsumexp(term_log)
    # certify: next term small and ratio of successive terms < 1/2
    next_log = 2.0 * (n_used + 1) * lm - 2.0 * a * (n_used + 2.0) ** 2
    ratio_log = next_log - term_log[-1]
    if ratio_log > np.log(0.5) or next_log - total > np.log(1e-12):
        raise TooFewTermsError(
            f"{n_used + 1} terms do not certify the tail (peak near {peak:.1f})"
        )
    growth = phi(a, p) if lm > 0.0 else 0.0
    ratio = float(np.exp(total + np.logaddexp(0.0, 2.0 * lm) - 2.0 * growth))
    return float(total), ratio


def node_transform(c: GaussianParam, lam: float) -> LogPolarPoint:
    """Image of a real node under w = e^{2cz}: modulus e^{2a lambda}."""
    return LogPolarPoint(2.0 * c.a * lam, wrap_angle(2.0 * c.b * lam))


def consistency_identity(c: GaussianParam, coeffs: gauss_space.CoefficientVector, lam: float):
    """Check the two evaluation routes for a positive-index coefficient vector.

    Left side: the direct Gaussian sum at lambda.  Right side: the series
    route e^{-phi(w)} e^{-i b lambda^2} w F(w) with w = e^{2c lambda},
    assembled in log-domain.  Returns (lhs, rhs, relative gap).
    """
    lo, _ = coeffs.index_range
    if len(coeffs) and lo < 1:
        raise BadParameterError("only positive-index coefficients are supported")
    # full direct sum: truncating relative to ||c|| would swamp the tiny
    # values this identity reaches far from the support
    d = lam - coeffs.indices
    lhs = complex(np.sum(coeffs.values * np.exp(-c.c * d * d)))
    _, _, f_plus = to_fock(c, coeffs)
    w = node_transform(c, lam)
    lf, pf = f_plus.evaluate_log(w)
    if lf == -np.inf:
        rhs = 0.0 + 0.0j
    else:
        log_rhs = -c.a * lam * lam + w.log_modulus + lf
        ph_rhs = -c.b * lam * lam + w.argument + pf
        rhs = complex(np.exp(log_rhs) * np.exp(1j * ph_rhs))
    denom = max(abs(lhs), abs(rhs))
    gap = 0.0 if denom == 0.0 else abs(lhs - rhs) / denom
    return lhs, rhs, gap


@dataclass(frozen=True)
class GeneratingProduct:
    """Product prod_m (1 - w / z_m) over zeros on the positive real axis.

    Zeros are stored by log-modulus (strictly increasing).  ``prefix_sums``
    caches cumulative log-moduli so the block of zeros far below |w| can be
    folded in one expression.  ``delta_exponent`` is the growth-law exponent
    used by the lower-estimate ratio of perturbed products.
    """

    a: float
    zero_log_moduli: np.ndarray
    delta_exponent: float = 0.0
    prefix_sums: np.ndarray = field(init=False)

    def __post_init__(self):
        z = np.asarray(self.zero_log_moduli, dtype=float).copy()
        if z.ndim != 1 or len(z) == 0:
            raise BadParameterError("need at least one zero")
        if np.any(np.diff(z) <= 0.0):
            raise BadParameterError("zero log-moduli must be strictly increasing")
        if self.a <= 0.0:
            raise BadParameterError("a must be > 0")
        z.setflags(write=False)
        ps = np.concatenate([[0.0], np.cumsum(z)])
        ps.setflags(write=False)
        object.__setattr__(self, "zero_log_moduli", z)
        object.__setattr__(self, "prefix_sums", ps)

    @classmethod
    def unperturbed(cls, a: float, count: int) -> "GeneratingProduct":
        return cls(a, 2.0 * a * np.arange(1, count + 1))

    @classmethod
    def from_deltas(cls, a: float, deltas, delta_exponent: float = 0.0) -> "GeneratingProduct":
        deltas = np.asarray(deltas, dtype=float)
        m = np.arange(1, len(deltas) + 1)
        return cls(a, 2.0 * a * (m + deltas), delta_exponent)

    def tail_count_for(self, log_modulus: float) -> int:
        """Zeros needed so the omitted factors differ from 1 by < 1e-16."""
        need = log_modulus + 37.0
        return int(np.searchsorted(self.zero_log_moduli, need, side="right"))

    def evaluate(self, p: LogPolarPoint):
        """(log|product|, phase) at a log-polar point.

        Zeros more than 45 log-units below |w| contribute log(w/z_m) each;
        the cached prefix sums fold that block in O(1).  The remaining
        factors use the stable log|1 - e^v| kernel.  Raises OnZeroError
        within 1e-14 relative distance of a zero.
        """
        z = self.zero_log_moduli
        if self.tail_count_for(p.log_modulus) > len(z):
            raise BadParameterError(
                "stored zeros do not certify the product tail at this modulus"
            )
        u = p.log_modulus + 1j * p.argument
        n_low = int(np.searchsorted(z, p.log_modulus - 45.0))
        # bulk block: each factor is -w/z_m up to relative 1e-19
        log_abs = n_low * p.log_modulus - self.prefix_sums[n_low]
        phase = n_low * (np.pi + p.argument)
        v = u - z[n_low:]
        la, ph = log_abs_one_minus_exp(v)
        if np.any(la - np.maximum(v.real, 0.0) < np.log(1e-14)):
            raise OnZeroError("point is within 1e-14 relative of a product zero")
        return float(log_abs + np.sum(la)), float(wrap_angle(phase + np.sum(ph)))


def log_distance_to_zeros(p: LogPolarPoint, zero_log_moduli) -> float:
    """log of the complex distance from w to the nearest zero."""
    u = p.log_modulus + 1j * p.argument
    z = np.asarray(zero_log_moduli, dtype=float)
    # only zeros within a wide log-window can be nearest
    near = z[np.abs(z - p.log_modulus) < 60.0]
    cands = [log_abs_diff_exp(u, s) for s in near]
    if len(near) < len(z):
        # all remaining zeros are at least a factor e^60 away in modulus
        far = z[np.abs(z - p.log_modulus) >= 60.0]
        cands.append(float(np.min(np.maximum(far, p.log_modulus))))
    return float(min(cands))


def generating_product_G0(a: float, p: LogPolarPoint, m_terms: Optional[int] = None):
    """(log|G0(w)|, phase) for the unperturbed geometric zero set e^{2am}."""
    auto = int(np.ceil((p.log_modulus + 38.0) / (2.0 * a))) + 1
    if m_terms is not None and m_terms < auto:
        raise BadParameterError(
            f"m_terms={m_terms} below the certified count {auto} at this modulus"
        )
    prod = GeneratingProduct.unperturbed(a, max(auto, m_terms or 0))
    return prod.evaluate(p)


def g0_estimate_ratio(a: float, p: LogPolarPoint) -> float:
    """Normalized two-sided estimate ratio for the unperturbed product:

        |G0(w)| (1 + |w|^{3/2}) / (e^{phi(w)} dist(w, zeros)).

    Bounded above and below on grids that avoid the zeros; the bracket is
    empirical.
    """
    auto = int(np.ceil((p.log_modulus + 38.0) / (2.0 * a))) + 1
    prod = GeneratingProduct.unperturbed(a, auto)
    log_abs, _ = prod.evaluate(p)
    log_dist = log_distance_to_zeros(p, prod.zero_log_moduli)
    log_ratio = (
        log_abs
        + np.logaddexp(0.0, 1.5 * p.log_modulus)
        - phi(a, p)
        - log_dist
    )
    return float(np.exp(log_ratio))


def generating_product_perturbed(prod: GeneratingProduct, p: LogPolarPoint):
    """(log|G(w)|, phase, lower-estimate ratio) for a perturbed product.

    The ratio |G(w)| (1 + |w|)^{3/2 + delta} / (dist(w, zeros) e^{phi(w)})
    should stay bounded below on zero-avoiding grids when the zero set
    satisfies the averaged-perturbation condition; ``delta`` is
    ``prod.delta_exponent``.
    """
    log_abs, phase = prod.evaluate(p)
    log_dist = log_distance_to_zeros(p, prod.zero_log_moduli)
    log_ratio = (
        log_abs
        + (1.5 + prod.delta_exponent) * np.logaddexp(0.0, p.log_modulus)
        - phi(prod.a, p)
        - log_dist
    )
    return log_abs, phase, float(np.exp(log_ratio))


@dataclass(frozen=True)
class FockCisVerdict:
    """Verdict for a point set against the power-series-side conditions.

    Computed from moduli only: the criterion does not depend on the
    arguments, so points are projected to the positive real axis before the
    relative-separation constant gamma is measured.
    """

    gamma: float
    separated: bool
    delta_sup: float
    window_len: int
    delta_star: float
    threshold: float
    passes: bool

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "separated": self.separated,
            "delta_sup": self.delta_sup,
            "best_window": {"N": self.window_len, "delta_star": self.delta_star},
            "threshold": self.threshold,
            "passes": self.passes,
            "arguments_ignored": True,
        }


def fock_cis_verdict(a: float, points, n_max: int = 8, margin: float = 1e-9) -> FockCisVerdict:
    """Check points w_n = e^{2an} e^{delta_n} e^{i theta_n} for n >= 1.

    Conditions: (i) relative separation |w_m - w_n| >= gamma |w_n| measured
    on moduli (the best gamma over adjacent pairs is reported), (ii)
    bounded delta_n over the data, (iii) some window length N <= n_max has
    sup of |window averages of delta| below a - margin.  The arguments
    theta_n never enter.
    """
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    lms = np.array([p.log_modulus for p in points], dtype=float)
    if len(lms) < 2:
        raise BadParameterError("need at least two points")
    gaps = np.diff(lms)
    if np.any(gaps < 0.0):
        raise UnsortedInputError("points must be sorted by log-modulus")
    # modulus-axis distance |e^{l2} - e^{l1}| / e^{l2} = 1 - e^{-gap}
    gamma = float(np.min(-np.expm1(-gaps)))
    separated = gamma > 0.0
    deltas = lms - 2.0 * a * np.arange(1, len(lms) + 1)
    from .lattice import window_average_sup

    best_n, best = 1, np.inf
    for n in range(1, min(n_max, len(deltas)) + 1):
        sup = window_average_sup(deltas, n)
        if sup < best - 1e-15:
            best_n, best = n, sup
    passes = separated and best < a - margin
    return FockCisVerdict(
        gamma, separated, float(np.max(np.abs(deltas))), best_n, best, a, passes
    )


def fock_delta_from_lattice(a: float, delta: float) -> float:
    """Scale a node-side perturbation to the modulus side: delta -> 2a delta.

    The passing threshold 1/2 on the node side corresponds exactly to the
    threshold a on the modulus side.  Kept explicit so the factor 2a never
    hides inside a formula.
    """
    return 2.0 * a * delta


def fock_points_from_sequence(c: GaussianParam, seq, count: int):
    """First ``count`` transformed nodes w_m = e^{2c lambda_m}, m = 1..count."""
    lam = seq.positions((1, count))
    return [node_transform(c, x) for x in lam]
