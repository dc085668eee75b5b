"""
Grid evaluation of the detectable and undetectable conditions.

Detectable (any of):
  Q1 = sup_{x1+x2<1} 1/2 - beta + sum_k [(-x_k) v v+_k(x_k) + x_k ^ (beta_k - v+_k(x_k)) / 2]
  Q2 = sup_{x2<1}    1/2 - beta + (-x1) v v-_1(x1) + (-x2) v v+_2(x2) + x2 ^ (beta_2 - v+_2(x2)) / 2
  Q3 = the mirror image of Q2
  Q4 = sup           1/2 - beta + (-x1) v v-_1(x1) + (-x2) v v-_2(x2) + (x1 ^ beta_1 ^ x2 ^ beta_2) / 2

Undetectable (all of):
  U1_k = 1 - 2 beta + sup_a {alpha_k(a) + alpha_k(a) ^ beta_k - a}
  U2   = 1 + sup_{a1,a2} [{-beta + A1 + A2} ^ {-2 beta + A1 + A2 + A1 ^ beta_1 + A2 ^ beta_2} - a1 - a2]

Suprema are taken over uniform grids with the feasible sets closed.
"""
import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from ..dep_types.theory import CalibrationParams, RegionVerdict
from .alpha import AlphaFunctions

logger = logging.getLogger(__name__)

DEFAULT_RES = 512
DEFAULT_TOL = 1e-9
X_FLOOR = 1e-9
A_RANGE = (1e-4, 8.0)
A_POINTS_PER_RES = 4

AlphaPair = Tuple[AlphaFunctions, AlphaFunctions]


def x_grid(res: int, knots: Iterable[float] = ()) -> np.ndarray:
    """{i/res} on (0, 1] together with the knots inside (0, 1] and a floor point."""
    base = np.arange(1, res + 1, dtype=np.float64) / res
    extra = np.array([k for k in knots if 0.0 < k <= 1.0] + [X_FLOOR], dtype=np.float64)
    return np.unique(np.concatenate([base, extra]))


def alpha_knots(fn: AlphaFunctions, beta_k: float, limit: int = DEFAULT_RES) -> List[float]:
    """Knots of fn, or none when there are more than `limit` of them (dense tabulations)."""
    knots = fn.knots(beta_k)
    return list(knots) if len(knots) <= limit else []


def x_knots(beta1: float, beta2: float, f1: AlphaFunctions, f2: AlphaFunctions) -> List[float]:
    """Kinks of the Q integrands."""
    return [beta1, beta2, 1.0 - beta1, 1.0 - beta2, 0.5] + alpha_knots(f1, beta1) + alpha_knots(f2, beta2)


def a_grid(res: int, knots: Iterable[float] = ()) -> np.ndarray:
    lo, hi = A_RANGE
    base = np.linspace(lo, hi, A_POINTS_PER_RES * res)
    extra = np.array([k for k in knots if lo <= k <= hi], dtype=np.float64)
    return np.unique(np.concatenate([base, extra]))


def gaussian_alphas(calib: CalibrationParams) -> AlphaPair:
    return AlphaFunctions.gaussian(calib.r1), AlphaFunctions.gaussian(calib.r2)


def strong_term(fn: AlphaFunctions, x: np.ndarray, beta_k: float) -> np.ndarray:
    vp = fn.v_plus(x)
    return np.maximum(-x, vp) + np.minimum(x, beta_k - vp) / 2.0


def weak_term(fn: AlphaFunctions, x: np.ndarray) -> np.ndarray:
    return np.maximum(-x, fn.v_minus(x))


def coupled_max(x: np.ndarray, first: np.ndarray, second: np.ndarray) -> float:
    """max of first[i] + second[j] over grid pairs with x[i] + x[j] <= 1."""
    prefix = np.maximum.accumulate(second)
    idx = np.searchsorted(x, 1.0 - x + 1e-12, side="right")
    ok = idx > 0
    return float(np.max(first[ok] + prefix[idx[ok] - 1]))


def q_suprema(
    calib: CalibrationParams,
    res: int = DEFAULT_RES,
    alphas: Optional[AlphaPair] = None,
) -> Tuple[float, float, float, float]:
    f1, f2 = alphas or gaussian_alphas(calib)
    b1, b2 = calib.beta1, calib.beta2
    x = x_grid(res, x_knots(b1, b2, f1, f2))
    base = 0.5 - calib.beta

    strong1, strong2 = strong_term(f1, x, b1), strong_term(f2, x, b2)
    weak1, weak2 = weak_term(f1, x), weak_term(f2, x)

    q1 = base + coupled_max(x, strong1, strong2)
    q2 = base + float(np.max(weak1)) + float(np.max(strong2))
    q3 = base + float(np.max(strong1)) + float(np.max(weak2))
    shared = np.minimum(np.minimum(x[:, None], x[None, :]), min(b1, b2)) / 2.0
    q4 = base + float(np.max(weak1[:, None] + weak2[None, :] + shared))
    return q1, q2, q3, q4


def u_values(
    calib: CalibrationParams,
    res: int = DEFAULT_RES,
    alphas: Optional[AlphaPair] = None,
) -> Tuple[Tuple[float, float], float]:
    f1, f2 = alphas or gaussian_alphas(calib)
    beta, b1, b2 = calib.beta, calib.beta1, calib.beta2
    a = a_grid(res, alpha_knots(f1, b1, res) + alpha_knots(f2, b2, res))
    big1, big2 = f1.alpha(a), f2.alpha(a)
    cap1, cap2 = np.minimum(big1, b1), np.minimum(big2, b2)

    u1 = (
        float(1.0 - 2.0 * beta + np.max(big1 + cap1 - a)),
        float(1.0 - 2.0 * beta + np.max(big2 + cap2 - a)),
    )
    # min(f, f - beta + c1 + c2) = f + min(0, c1 + c2 - beta)
    value1, value2 = big1 - a, big2 - a
    joint = (
        value1[:, None] + value2[None, :] - beta
        + np.minimum(0.0, cap1[:, None] + cap2[None, :] - beta)
    )
    u2 = float(1.0 + np.max(joint))
    return u1, u2


def _verdict(
    calib: CalibrationParams,
    res: int,
    tol: float,
    alphas: Optional[AlphaPair],
) -> RegionVerdict:
    q = q_suprema(calib, res, alphas)
    u1, u2 = u_values(calib, res, alphas)
    detectable = any(v > tol for v in q)
    undetectable = max(u1[0], u1[1], u2) < -tol
    if undetectable and detectable:
        logger.warning(
            f"Grid verdicts conflict near the boundary for {calib!r} "
            f"(Q1={q[0]:.3g}, U={max(u1[0], u1[1], u2):.3g}); keeping the detectable verdict"
        )
        undetectable = False
    logger.debug(f"q={q}, u1={u1}, u2={u2:.6g} for {calib!r}")
    return RegionVerdict(
        q_values=q,
        detectable=detectable,
        u1_values=u1,
        u2_value=u2,
        undetectable=undetectable,
        grid_resolution=res,
        tol=tol,
    )


def detectable_region_check(
    calib: CalibrationParams,
    res: int = DEFAULT_RES,
    tol: float = DEFAULT_TOL,
    alphas: Optional[AlphaPair] = None,
) -> RegionVerdict:
    """Detectable iff any of Q1..Q4 exceeds tol. The undetectable side is filled in too."""
    return _verdict(calib, res, tol, alphas)


def undetectable_region_check(
    calib: CalibrationParams,
    res: int = DEFAULT_RES,
    tol: float = DEFAULT_TOL,
    alphas: Optional[AlphaPair] = None,
) -> RegionVerdict:
    """Undetectable iff U1_1, U1_2 and U2 are all below -tol, unless Q1 says otherwise."""
    return _verdict(calib, res, tol, alphas)
