"""Rate / harvested-power frontier for zero-mean Gaussian signalling.

Along the full-budget line P_r + P_i = P_a the information rate is concave
in the split and the harvested power is convex, maximal when everything
rides one axis and minimal at the even split.  The solver here returns the
rate-optimal split meeting a power target by bisection on that monotone
stretch, the sweep tabulates the frontier, and kkt_check reconstructs
first-order multipliers at a candidate point to certify (or falsify)
stationarity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .moments import gaussian_profile
from .rectenna import coeffs, delivered_power, delivered_power_gaussian_zero_mean

__all__ = [
    "Infeasible",
    "PowerAllocation",
    "RPPoint",
    "KktReport",
    "rate_gaussian",
    "pdc_min",
    "pdc_max",
    "optimal_allocation",
    "rp_region",
    "kkt_check",
]


class Infeasible(ValueError):
    """The requested delivered power exceeds what any allocation can reach."""


@dataclass(frozen=True)
class PowerAllocation:
    """Per-dimension input powers of a zero-mean Gaussian signal."""

    P_r: float
    P_i: float

    def __post_init__(self):
        if self.P_r < 0.0 or self.P_i < 0.0:
            raise ValueError("allocation powers must be nonnegative")

    def swapped(self):
        return PowerAllocation(self.P_i, self.P_r)


@dataclass(frozen=True)
class RPPoint:
    """One frontier sample: rate (bits/s), delivered power, and the split."""

    rate: float
    power: float
    allocation: PowerAllocation


@dataclass(frozen=True)
class KktReport:
    """Reconstructed multipliers and stationarity residuals at a candidate point."""

    lambda1: float
    lambda2: float
    zeta_r: float
    zeta_i: float
    stationarity_residual_Pr: float
    stationarity_residual_Pi: float
    stationarity_residual_mu_r: float
    stationarity_residual_mu_i: float
    complementary_slackness_ok: bool

    def as_dict(self):
        return {
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "zeta_r": self.zeta_r,
            "zeta_i": self.zeta_i,
            "stationarity_residual_Pr": self.stationarity_residual_Pr,
            "stationarity_residual_Pi": self.stationarity_residual_Pi,
            "stationarity_residual_mu_r": self.stationarity_residual_mu_r,
            "stationarity_residual_mu_i": self.stationarity_residual_mu_i,
            "complementary_slackness_ok": self.complementary_slackness_ok,
        }


def _snr_gain(ch):
    # per-dimension SNR slope: 2|h|^2 / (f_w * sigma_w2)
    return 2.0 * abs(ch.h) ** 2 / (ch.f_w * ch.sigma_w2)


def rate_gaussian(alloc, ch):
    """Information rate (bits/s) of a zero-mean Gaussian input with the given
    per-dimension powers; only the integer-time gain h enters."""
    a = _snr_gain(ch)
    return 0.5 * ch.f_w * (math.log2(1.0 + a * alloc.P_r)
                           + math.log2(1.0 + a * alloc.P_i))


def pdc_min(P_a, ch):
    """Delivered power at the even (max-rate) split of budget P_a."""
    c = coeffs(ch)
    return (2.0 * (c.alpha + c.alpha_tilde) * P_a * P_a
            + (c.beta + c.beta_tilde) * P_a + c.gamma)


def pdc_max(P_a, ch):
    """Delivered power with the whole budget on one axis (min-rate corner)."""
    c = coeffs(ch)
    return (3.0 * (c.alpha + c.alpha_tilde) * P_a * P_a
            + (c.beta + c.beta_tilde) * P_a + c.gamma)


def optimal_allocation(P_a, P_d, ch, tol=1e-9):
    """Rate-maximizing split of budget P_a meeting delivered-power target P_d.

    Delivered power decreases strictly as the split evens out, so the best
    feasible point is the most symmetric split still delivering P_d: below
    pdc_min the unconstrained optimum (P_a/2, P_a/2) already qualifies;
    beyond pdc_max nothing does (typed Infeasible); in between, bisection on
    P_i in [0, P_a/2] finds the unique boundary point with power residual
    within tol.  Output is canonicalized with P_r >= P_i; the mirrored split
    performs identically.
    """
    if not P_a > 0.0:
        raise ValueError("P_a must be positive")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    power_even = pdc_min(P_a, ch)
    power_corner = pdc_max(P_a, ch)
    if P_d > power_corner * (1.0 + tol):
        raise Infeasible(
            f"target {P_d!r} exceeds the maximum delivered power {power_corner!r}")
    if P_d <= power_even:
        return PowerAllocation(0.5 * P_a, 0.5 * P_a)
    if P_d >= power_corner:
        return PowerAllocation(P_a, 0.0)
    lo, hi = 0.0, 0.5 * P_a
    best_pi, best_res = lo, power_corner - P_d
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        res = delivered_power_gaussian_zero_mean(P_a - mid, mid, ch) - P_d
        if abs(res) < abs(best_res):
            best_pi, best_res = mid, res
        if res > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * np.finfo(float).eps * P_a:
            break
    return PowerAllocation(P_a - best_pi, best_pi)


def rp_region(P_a, ch, n_points):
    """Frontier sweep from the single-axis corner to the even split.

    Rate is nondecreasing and power nonincreasing along the returned list.
    """
    if not P_a > 0.0:
        raise ValueError("P_a must be positive")
    n_points = int(n_points)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    points = []
    for p_i in np.linspace(0.0, 0.5 * P_a, n_points):
        alloc = PowerAllocation(P_a - float(p_i), float(p_i))
        points.append(RPPoint(
            rate_gaussian(alloc, ch),
            delivered_power_gaussian_zero_mean(alloc.P_r, alloc.P_i, ch),
            alloc))
    return points


def kkt_check(alloc, mu_r, mu_i, P_a, P_d, ch, tol=1e-6):
    """First-order optimality check at a candidate (allocation, mean) point.

    The complementary-slackness pattern is read off the point first — any
    slack constraint pins its multiplier at zero — and the remaining
    stationarity system is solved by nonnegative least squares, so dual
    feasibility is built in and a point admitting no valid multipliers
    surfaces as a nonzero residual rather than a sign violation.  The mean
    enters only the falsification equations: optimal points always sit at
    mu = 0, where those equations vanish identically.
    """
    c = coeffs(ch)
    a = _snr_gain(ch)
    c1 = 0.5 * ch.f_w / math.log(2.0)  # rate in bits
    var_r = alloc.P_r - mu_r * mu_r
    var_i = alloc.P_i - mu_i * mu_i
    if var_r < -tol or var_i < -tol:
        raise ValueError("mean exceeds power: negative variance")
    var_r = max(var_r, 0.0)
    var_i = max(var_i, 0.0)

    p_del = delivered_power(gaussian_profile(mu_r, mu_i, var_r, var_i), ch)
    asum = c.alpha + c.alpha_tilde
    bsum = c.beta + c.beta_tilde
    # d(power)/dP: symmetric in the two dimensions
    grad_r = 2.0 * asum * (3.0 * alloc.P_r + alloc.P_i) + bsum
    grad_i = 2.0 * asum * (3.0 * alloc.P_i + alloc.P_r) + bsum
    rate_r = c1 * a / (1.0 + a * var_r)
    rate_i = c1 * a / (1.0 + a * var_i)

    budget_slack = P_a - (alloc.P_r + alloc.P_i)
    power_slack = p_del - P_d
    budget_tight = abs(budget_slack) <= tol * max(1.0, abs(P_a))
    power_tight = abs(power_slack) <= tol * max(1.0, abs(P_d))
    var_r_tight = var_r <= tol * max(1.0, abs(P_a))
    var_i_tight = var_i <= tol * max(1.0, abs(P_a))

    # Stationarity in P_r / P_i: rate' + lambda2*power' - lambda1 + zeta = 0.
    # Columns for the multipliers the slackness pattern leaves free.
    free = []
    if budget_tight:
        free.append("lambda1")
    if power_tight:
        free.append("lambda2")
    if var_r_tight:
        free.append("zeta_r")
    if var_i_tight:
        free.append("zeta_i")
    col = {name: j for j, name in enumerate(free)}

    system = np.zeros((2, max(len(free), 1)))
    rhs = np.array([rate_r, rate_i])
    for row, (grad, zeta_name) in enumerate(
            ((grad_r, "zeta_r"), (grad_i, "zeta_i"))):
        if "lambda1" in col:
            system[row, col["lambda1"]] = 1.0
        if "lambda2" in col:
            system[row, col["lambda2"]] = -grad
        if zeta_name in col:
            system[row, col[zeta_name]] = -1.0
    solution, _ = nnls(system, rhs)

    def mult(name):
        return float(solution[col[name]]) if name in col else 0.0

    lam1 = mult("lambda1")
    lam2 = mult("lambda2")
    zeta_r = mult("zeta_r")
    zeta_i = mult("zeta_i")

    res_pr = rate_r + lam2 * grad_r - lam1 + zeta_r
    res_pi = rate_i + lam2 * grad_i - lam1 + zeta_i
    res_mu_r = 2.0 * rate_r * mu_r + 8.0 * lam2 * asum * mu_r**3 + 2.0 * zeta_r * mu_r
    res_mu_i = 2.0 * rate_i * mu_i + 8.0 * lam2 * asum * mu_i**3 + 2.0 * zeta_i * mu_i

    scale = max(1.0, rate_r, rate_i)
    cs_ok = (
        budget_slack >= -tol * max(1.0, abs(P_a))
        and power_slack >= -tol * max(1.0, abs(P_d))
        and (budget_tight or lam1 <= tol * scale)
        and (power_tight or lam2 <= tol * scale)
        and (var_r_tight or zeta_r <= tol * scale)
        and (var_i_tight or zeta_i <= tol * scale)
    )
    return KktReport(lam1, lam2, zeta_r, zeta_i,
                     res_pr, res_pi, res_mu_r, res_mu_i, cs_ok)
