"""Real node sequences: models, separation, densities, and the CIS classifier.

A node sequence is an increasing set of reals indexed by integers.  Three
models are supported:

* ``AffineGrid(alpha, beta)``        lambda_n = alpha*n + beta
* ``PeriodicPerturbation(offsets)``  lambda_n = n + offsets[n mod P]
* ``ExplicitWindow(nodes, start)``   a finite window of explicit positions

The classifier decides whether the sequence admits an enumeration
lambda_n = n + delta_n with bounded delta_n whose long-window averages stay
strictly below 1/2.  For periodic and affine models the decision is exact;
for explicit windows it is a heuristic over the provided data and is
labelled as such.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BadParameterError,
    EmptyWindowError,
    NonIncreasingError,
    WindowTooSmallError,
)

__all__ = [
    "GaussianParam",
    "NodeSequence",
    "AffineGrid",
    "PeriodicPerturbation",
    "ExplicitWindow",
    "Enumeration",
    "AvdoninVerdict",
    "DensityEstimate",
    "build_sequence",
    "sequence_to_json",
    "check_separation",
    "canonical_enumeration",
    "beurling_densities",
    "avdonin_verdict",
]

# default index window for conceptually infinite sequences
_DEFAULT_WINDOW = (-32, 32)


@dataclass(frozen=True)
class GaussianParam:
    """Complex Gaussian parameter c = a + ib with a > 0.

    ``a`` is the decay rate of the generator exp(-c x^2); ``b`` adds a
    chirp phase and never changes entry magnitudes.
    """

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a <= 0.0:
            raise BadParameterError(f"decay rate a must be finite and > 0, got {self.a}")
        if not np.isfinite(self.b):
            raise BadParameterError(f"parameter b must be finite, got {self.b}")

    @property
    def c(self) -> complex:
        return complex(self.a, self.b)


class NodeSequence:
    """Base class for node-sequence models.  Instances are immutable."""

    kind: str = "abstract"

    def positions(self, window=None) -> np.ndarray:
        """Node positions lambda_n for integer n in the inclusive window."""
        raise NotImplementedError

    def default_window(self):
        """Index window used when an operation needs concrete data."""
        raise NotImplementedError

    def _window(self, window):
        lo, hi = self.default_window() if window is None else window
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise EmptyWindowError(f"empty index window [{lo}, {hi}]")
        return lo, hi


@dataclass(frozen=True)
class AffineGrid(NodeSequence):
    """lambda_n = alpha*n + beta with alpha > 0."""

    alpha: float
    beta: float = 0.0
    kind = "affine"

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha <= 0.0:
            raise BadParameterError(f"grid slope must be > 0, got {self.alpha}")
        if not np.isfinite(self.beta):
            raise BadParameterError("grid shift must be finite")

    def positions(self, window=None) -> np.ndarray:
        lo, hi = self._window(window)
        return self.alpha * np.arange(lo, hi + 1, dtype=float) + self.beta

    def default_window(self):
        return _DEFAULT_WINDOW


@dataclass(frozen=True)
class PeriodicPerturbation(NodeSequence):
    """lambda_n = n + offsets[n mod P].  Must be strictly increasing."""

    offsets: tuple
    kind = "periodic"

    def __post_init__(self):
        offs = tuple(float(d) for d in self.offsets)
        if len(offs) < 1:
            raise BadParameterError("period must be >= 1")
        if not all(np.isfinite(offs)):
            raise BadParameterError("offsets must be finite")
        object.__setattr__(self, "offsets", offs)
        # increasing across one period and the period boundary
        lam = np.arange(len(offs) + 1) + np.array(offs + (offs[0],))
        if np.any(np.diff(lam) <= 0.0):
            raise NonIncreasingError(
                f"offsets {offs} do not give an increasing sequence"
            )

    @property
    def period(self) -> int:
        return len(self.offsets)

    def positions(self, window=None) -> np.ndarray:
        lo, hi = self._window(window)
        n = np.arange(lo, hi + 1)
        return n + np.asarray(self.offsets)[np.mod(n, self.period)]

    def default_window(self):
        return _DEFAULT_WINDOW


@dataclass(frozen=True)
class ExplicitWindow(NodeSequence):
    """A finite strictly increasing window of nodes with integer indexing.

    ``nodes[i]`` is the position of index ``start_index + i``.
    """

    nodes: tuple
    start_index: int = 0
    kind = "explicit"

    def __post_init__(self):
        arr = tuple(float(x) for x in self.nodes)
        if len(arr) == 0:
            raise BadParameterError("explicit window needs at least one node")
        if not all(np.isfinite(arr)):
            raise BadParameterError("nodes must be finite")
        if np.any(np.diff(arr) <= 0.0):
            raise NonIncreasingError("explicit nodes must be strictly increasing")
        object.__setattr__(self, "nodes", arr)
        object.__setattr__(self, "start_index", int(self.start_index))

    @property
    def index_range(self):
        return (self.start_index, self.start_index + len(self.nodes) - 1)

    def positions(self, window=None) -> np.ndarray:
        lo, hi = self._window(window)
        s, e = self.index_range
        if lo < s or hi > e:
            raise EmptyWindowError(
                f"window [{lo}, {hi}] outside stored range [{s}, {e}]"
            )
        arr = np.asarray(self.nodes)
        return arr[lo - s : hi - s + 1].copy()

    def default_window(self):
        return self.index_range


def build_sequence(spec: dict) -> NodeSequence:
    """Build a validated NodeSequence from its JSON-style description.

    Accepted forms::

        {"kind": "affine",   "alpha": 1.0, "beta": 0.25}
        {"kind": "periodic", "offsets": [0.3, -0.3], "period": 2}
        {"kind": "explicit", "nodes": [...], "index_range": [lo, hi]}

    ``period`` is optional and must match ``len(offsets)`` when given;
    ``index_range`` is optional (defaults to starting at 0).
    """
    kind = spec.get("kind")
    if kind == "affine":
        return AffineGrid(float(spec.get("alpha", 1.0)), float(spec.get("beta", 0.0)))
    if kind == "periodic":
        offsets = spec.get("offsets")
        if offsets is None:
            raise BadParameterError("periodic spec needs 'offsets'")
        period = spec.get("period")
        if period is not None and int(period) != len(offsets):
            raise BadParameterError(
                f"period {period} does not match {len(offsets)} offsets"
            )
        return PeriodicPerturbation(tuple(offsets))
    if kind == "explicit":
        nodes = spec.get("nodes")
        if nodes is None:
            raise BadParameterError("explicit spec needs 'nodes'")
        rng = spec.get("index_range")
        start = int(rng[0]) if rng is not None else 0
        if rng is not None and int(rng[1]) - int(rng[0]) + 1 != len(nodes):
            raise BadParameterError("index_range does not match node count")
        return ExplicitWindow(tuple(nodes), start)
    raise BadParameterError(f"unknown sequence kind {kind!r}")


def sequence_to_json(seq: NodeSequence) -> dict:
    """Inverse of :func:`build_sequence`."""
    if isinstance(seq, AffineGrid):
        return {"kind": "affine", "alpha": seq.alpha, "beta": seq.beta}
    if isinstance(seq, PeriodicPerturbation):
        return {"kind": "periodic", "period": seq.period, "offsets": list(seq.offsets)}
    if isinstance(seq, ExplicitWindow):
        lo, hi = seq.index_range
        return {"kind": "explicit", "nodes": list(seq.nodes), "index_range": [lo, hi]}
    raise BadParameterError(f"cannot serialize {type(seq).__name__}")


def check_separation(seq: NodeSequence, window=None):
    """Smallest gap between adjacent nodes.

    Returns ``(min_gap, separated)`` where ``separated`` means the gap is
    strictly positive.  For periodic and affine models the value is exact
    (gaps repeat); for explicit windows it is the minimum over the window.
    Quantitative margins are left to the caller: the raw gap is reported.
    """
    if isinstance(seq, AffineGrid):
        return float(seq.alpha), True
    if isinstance(seq, PeriodicPerturbation):
        p = seq.period
        lam = np.arange(p + 1) + np.array(seq.offsets + (seq.offsets[0],))
        gap = float(np.min(np.diff(lam)))
        return gap, gap > 0.0
    lam = seq.positions(window)
    if len(lam) < 2:
        raise EmptyWindowError("separation needs at least two nodes")
    gap = float(np.min(np.diff(lam)))
    return gap, gap > 0.0


@dataclass(frozen=True)
class Enumeration:
    """Enumeration lambda_n = n + delta_n found for a sequence window.

    ``offset`` is the integer re-indexing applied to the stored indices,
    ``start_index`` the first canonical index, ``deltas`` the window of
    delta_n values.
    """

    offset: int
    start_index: int
    deltas: np.ndarray

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.deltas)))


def _best_offset(indices, lam, k_range):
    """Offset k minimizing sup |lam - (indices + k)|; ties prefer small |k|."""
    best = None
    for k in sorted(k_range, key=lambda k: (abs(k), k)):
        sup = float(np.max(np.abs(lam - (indices + k))))
        if best is None or sup < best[1] - 1e-15:
            best = (k, sup)
    return best


def canonical_enumeration(seq: NodeSequence, bound: float, window=None) -> Optional[Enumeration]:
    """Search for an enumeration lambda_n = n + delta_n with sup|delta| <= bound.

    Integer re-indexings with |k| up to half the data span are tried and the
    one minimizing sup|delta_n| over the window is returned, or None when no
    re-indexing meets the bound.  Periodic and affine (alpha = 1) models are
    resolved exactly.  Re-running on an already canonical window returns
    offset 0 and identical deltas.
    """
    if bound <= 0.0:
        raise BadParameterError("bound must be > 0")

    if isinstance(seq, AffineGrid) and seq.alpha == 1.0:
        lo, hi = seq._window(window)
        k = int(np.round(seq.beta))
        delta = seq.beta - k
        if abs(delta) > bound:
            return None
        deltas = np.full(hi - lo + 1, delta, dtype=float)
        return Enumeration(offset=k, start_index=lo + k, deltas=deltas)

    if isinstance(seq, PeriodicPerturbation):
        offs = np.asarray(seq.offsets)
        ks = range(int(np.floor(offs.min())) - 1, int(np.ceil(offs.max())) + 2)
        k, sup = _best_offset(np.zeros_like(offs), offs, ks)
        if sup > bound:
            return None
        lo, hi = seq._window(window) if window is not None else (0, seq.period - 1)
        n = np.arange(lo, hi + 1)
        deltas = offs[np.mod(n - k, seq.period)] - k
        return Enumeration(offset=k, start_index=lo + k, deltas=deltas)

    lo, hi = seq._window(window)
    lam = seq.positions((lo, hi))
    indices = np.arange(lo, hi + 1, dtype=float)
    span = max(lam[-1] - lam[0], 1.0)
    half = int(np.ceil(span / 2.0))
    k, sup = _best_offset(indices, lam, range(-half, half + 1))
    if sup > bound:
        return None
    return Enumeration(offset=k, start_index=lo + k, deltas=lam - (indices + k))


@dataclass(frozen=True)
class DensityEstimate:
    """Upper/lower Beurling density estimates.

    ``method`` is ``"exact_formula"`` for affine and periodic models and
    ``"window_sweep"`` for explicit data, in which case ``sweep`` holds one
    ``(r, d_plus, d_minus)`` row per radius and the reported values are
    those of the largest radius.  ``monotone`` flags the expected trend
    (d_plus non-increasing, d_minus non-decreasing) across the sweep.
    """

    d_plus: float
    d_minus: float
    method: str
    r_values: tuple = ()
    sweep: tuple = ()
    monotone: bool = True

    def __post_init__(self):
        if self.d_minus > self.d_plus + 1e-12:
            raise BadParameterError("d_minus cannot exceed d_plus")


def _sweep_counts(nodes: np.ndarray, r: float):
    """(max, min) number of nodes in a closed sliding window of length r.

    The max is over all window placements, the min over windows contained
    in the data span.  Counts change only when an endpoint crosses a node,
    so candidate placements just after each crossing are exact; the nudge
    is far below the smallest gap.
    """
    eps = float(np.min(np.diff(nodes))) * 1e-6
    left_for_max = nodes  # a maximal window can be anchored at a node
    hi_idx = np.searchsorted(nodes, left_for_max + r, side="right")
    lo_idx = np.searchsorted(nodes, left_for_max, side="left")
    c_max = int(np.max(hi_idx - lo_idx))

    lo_lim, hi_lim = nodes[0], nodes[-1] - r
    cands = np.concatenate([nodes + eps, nodes - r - eps, [lo_lim, hi_lim]])
    cands = cands[(cands >= lo_lim) & (cands <= hi_lim)]
    hi_idx = np.searchsorted(nodes, cands + r, side="right")
    lo_idx = np.searchsorted(nodes, cands, side="left")
    c_min = int(np.min(hi_idx - lo_idx))
    return c_max, c_min


def beurling_densities(seq: NodeSequence, r_values) -> DensityEstimate:
    """Upper and lower Beurling densities.

    Affine grids have exact density 1/alpha and bounded periodic
    perturbations of the integers have density 1.  For explicit windows the
    sliding-count sweep is run at each radius in ``r_values`` (each at most
    half the data span), and the largest radius is reported.
    """
    if isinstance(seq, AffineGrid):
        d = 1.0 / seq.alpha
        return DensityEstimate(d, d, "exact_formula")
    if isinstance(seq, PeriodicPerturbation):
        return DensityEstimate(1.0, 1.0, "exact_formula")

    nodes = seq.positions()
    if len(nodes) < 2:
        raise WindowTooSmallError("density sweep needs at least two nodes")
    span = nodes[-1] - nodes[0]
    rs = sorted(float(r) for r in r_values)
    if not rs or rs[0] <= 0.0:
        raise BadParameterError("radii must be positive")
    if rs[-1] > span / 2.0:
        raise WindowTooSmallError(
            f"largest radius {rs[-1]} exceeds half the data span {span / 2.0}"
        )
    sweep = []
    for r in rs:
        c_max, c_min = _sweep_counts(nodes, r)
        sweep.append((r, c_max / r, c_min / r))
    d_plus = sweep[-1][1]
    d_minus = sweep[-1][2]
    ups = [row[1] for row in sweep]
    downs = [row[2] for row in sweep]
    monotone = all(x >= y - 1e-12 for x, y in zip(ups, ups[1:])) and all(
        x <= y + 1e-12 for x, y in zip(downs, downs[1:])
    )
    return DensityEstimate(
        d_plus, d_minus, "window_sweep", tuple(rs), tuple(sweep), monotone
    )


@dataclass(frozen=True)
class AvdoninVerdict:
    """Outcome of the averaged-perturbation test.

    ``delta_star`` is the best (smallest over window lengths N) value of
    sup_n |mean of N consecutive delta|; the verdict passes when the
    sequence is separated, an enumeration exists, and
    ``delta_star < 1/2 - margin``.  ``caveat`` distinguishes exact decisions
    (periodic, affine) from the finite-window heuristic used on explicit
    data.
    """

    separated: bool
    min_gap: float
    enumerable: bool
    delta_sup: float
    window_len: int
    delta_star: float
    passes: bool
    caveat: str
    margin: float

    def to_json(self) -> dict:
        return {
            "separated": self.separated,
            "min_gap": self.min_gap,
            "enumerable": self.enumerable,
            "delta_sup": None if np.isnan(self.delta_sup) else self.delta_sup,
            "best_window": {
                "N": self.window_len,
                "delta_star": None if np.isnan(self.delta_star) else self.delta_star,
            },
            "passes": self.passes,
            "caveat": self.caveat,
        }


def window_average_sup(deltas: np.ndarray, n: int) -> float:
    """sup over full windows of |mean of n consecutive deltas|."""
    if n < 1 or n > len(deltas):
        raise BadParameterError(f"window length {n} not in [1, {len(deltas)}]")
    csum = np.concatenate([[0.0], np.cumsum(deltas)])
    sums = csum[n:] - csum[:-n]
    return float(np.max(np.abs(sums))) / n


def avdonin_verdict(
    seq: NodeSequence,
    n_max: int = 8,
    margin: float = 1e-9,
    window=None,
    enumeration_bound: float = 5.0,
) -> AvdoninVerdict:
    """Classify a node sequence by the averaged-perturbation criterion.

    Periodic model: exact.  The window average over one period is the mean
    of the offsets, and no window length does better, so
    ``delta_star = |mean(offsets)|`` with ``N = period``.

    Affine model: exact.  For alpha = 1 the deltas are constant and reduce,
    after integer re-indexing, to beta - round(beta); for alpha != 1 the
    deltas grow linearly and no bounded enumeration exists.

    Explicit window: heuristic.  The best enumeration over the data is
    found, then window averages are swept for N up to ``n_max``; the
    verdict is labelled ``finite_window_heuristic``.

    ``margin`` guards the strict inequality against rounding at the
    boundary case delta_star = 1/2.
    """
    min_gap, separated = check_separation(seq, window)

    if isinstance(seq, PeriodicPerturbation):
        offs = np.asarray(seq.offsets)
        delta_star = abs(float(np.mean(offs)))
        passes = separated and delta_star < 0.5 - margin
        return AvdoninVerdict(
            separated, min_gap, True, float(np.max(np.abs(offs))), seq.period,
            delta_star, passes, "exact", margin,
        )

    if isinstance(seq, AffineGrid):
        if seq.alpha != 1.0:
            return AvdoninVerdict(
                separated, min_gap, False, np.nan, 0, np.nan, False, "exact", margin
            )
        delta = seq.beta - int(np.round(seq.beta))
        delta_star = abs(float(delta))
        passes = separated and delta_star < 0.5 - margin
        return AvdoninVerdict(
            separated, min_gap, True, delta_star, 1, delta_star, passes,
            "exact", margin,
        )

    enum = canonical_enumeration(seq, enumeration_bound, window)
    if enum is None:
        return AvdoninVerdict(
            separated, min_gap, False, np.nan, 0,
            np.nan, False, "finite_window_heuristic", margin,
        )
    best_n, best = 1, np.inf
    for n in range(1, min(n_max, len(enum.deltas)) + 1):
        sup = window_average_sup(enum.deltas, n)
        if sup < best - 1e-15:
            best_n, best = n, sup
    passes = separated and best < 0.5 - margin
    return AvdoninVerdict(
        separated, min_gap, True, enum.sup, best_n, best, passes,
        "finite_window_heuristic", margin,
    )
