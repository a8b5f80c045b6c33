"""Brute-force verification that unsigned samples pin down a real function.

On a node set of roughly double density (half-integer steps), a real
function built from real Gaussian coefficients should be recoverable from
the magnitudes of its samples up to one global sign.  The check below is
exhaustive: every sign pattern of the sampled magnitudes is tried against a
least-squares reconstruction, and the verdict passes when exactly the two
global-sign vectors survive.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import BadParameterError, ComplexInputError, WindowTooLargeError
from ..gauss_space import CoefficientVector
from ..lattice import ExplicitWindow, NodeSequence, avdonin_verdict

__all__ = ["SignRetrievalResult", "half_grid", "sign_retrieval_check"]

# 2^W sign patterns are enumerated; beyond this the check is not desk scale
_MAX_WINDOW = 16


def half_grid(deltas, start_index: int = 0) -> ExplicitWindow:
    """Nodes lambda_m = m/2 + delta_m for m starting at ``start_index``."""
    deltas = np.asarray(deltas, dtype=float)
    m = np.arange(start_index, start_index + len(deltas))
    return ExplicitWindow(tuple(m / 2.0 + deltas), start_index)


@dataclass(frozen=True)
class SignRetrievalResult:
    """Outcome of the exhaustive sign search.

    ``n_survivors`` counts sign patterns whose reconstruction residual is
    below tolerance; ``matched_up_to_sign`` is True when every surviving
    coefficient vector equals the input up to one global sign.
    ``dilated_delta_star`` reports the averaged-perturbation statistic of
    the doubled node set (the applicable condition at half-integer
    density asks for it to be below 1/2, i.e. delta below 1/4 before
    doubling).
    """

    passes: bool
    n_survivors: int
    matched_up_to_sign: bool
    max_survivor_residual: float
    window: int
    dilated_delta_star: float
    dilated_condition_ok: bool


def sign_retrieval_check(
    a: float,
    coeffs: CoefficientVector,
    seq: NodeSequence,
    window: int | None = None,
    residual_tol: float = 1e-8,
    match_tol: float = 1e-8,
) -> SignRetrievalResult:
    """Try to recover real coefficients from unsigned samples.

    The first ``window`` stored nodes are used (all of them by default).
    Magnitudes s_m = |f(lambda_m)| are computed exactly from the
    coefficients, then every one of the 2^W sign assignments is solved in
    the least-squares sense for real coefficients over the same index
    range.  Assignments with relative residual below ``residual_tol``
    survive; the verdict passes when the survivors' coefficient vectors are
    exactly the two global-sign copies of the input (the zero vector
    passes trivially).
    """
    if a <= 0.0:
        raise BadParameterError("a must be > 0")
    if np.any(coeffs.values.imag != 0.0):
        raise ComplexInputError("sign retrieval needs real coefficients")
    if len(coeffs) == 0:
        raise BadParameterError("empty coefficient vector")

    lam = seq.positions()
    if window is not None:
        lam = lam[: int(window)]
    w = len(lam)
    if w > _MAX_WINDOW:
        raise WindowTooLargeError(f"window {w} exceeds limit {_MAX_WINDOW}")
    if w < 1:
        raise BadParameterError("need at least one node")

    c = coeffs.values.real.astype(float)
    n = coeffs.indices.astype(float)
    mat = np.exp(-a * (lam[:, None] - n[None, :]) ** 2)
    if mat.shape[0] < mat.shape[1]:
        raise BadParameterError(
            f"{w} nodes cannot overdetermine {mat.shape[1]} coefficients"
        )
    samples = np.abs(mat @ c)

    # the condition at half-integer density, checked on the doubled nodes
    start = 0
    if isinstance(seq, ExplicitWindow):
        start = seq.index_range[0]
    dilated = ExplicitWindow(tuple(2.0 * lam), start)
    dverdict = avdonin_verdict(dilated)
    dilated_ok = bool(dverdict.passes)

    q, r = np.linalg.qr(mat)
    signs = 1.0 - 2.0 * (
        (np.arange(2**w)[:, None] >> np.arange(w)[None, :]) & 1
    )  # (2^w, w) of +-1, deterministic order
    targets = signs * samples[None, :]
    proj = targets @ q  # (2^w, ncols) of q^T y
    resid = np.linalg.norm(targets - proj @ q.T, axis=1)
    scale = np.linalg.norm(samples)
    rel = resid / scale if scale > 0.0 else resid
    surviving = np.nonzero(rel < residual_tol)[0]

    sols = np.linalg.solve(r, proj[surviving].T).T if len(surviving) else np.empty((0, len(c)))
    cnorm = np.linalg.norm(c)
    tol = match_tol * max(cnorm, 1.0)
    matched = all(
        min(np.linalg.norm(d - c), np.linalg.norm(d + c)) <= tol for d in sols
    )
    if cnorm > 0.0 and len(sols):
        has_plus = any(np.linalg.norm(d - c) <= tol for d in sols)
        has_minus = any(np.linalg.norm(d + c) <= tol for d in sols)
        matched = matched and has_plus and has_minus
    passes = matched and len(surviving) > 0
    max_res = float(np.max(rel[surviving])) if len(surviving) else float("nan")
    return SignRetrievalResult(
        passes=bool(passes),
        n_survivors=int(len(surviving)),
        matched_up_to_sign=bool(matched),
        max_survivor_residual=max_res,
        window=w,
        dilated_delta_star=float(dverdict.delta_star),
        dilated_condition_ok=dilated_ok,
    )
