"""The four limiting distributions of the normalized spectral radius.

    SphericalH       H(x) = prod_{k>=1} H_k(x^-2), H_k the Poisson(x^-2)
                     cdf at k-1; limit of radius/sqrt(n) for the spherical
                     ensemble.  H(x) = 0 for x <= 0.
    Gumbel           Lambda(x) = exp(-exp(-x)); limit for the truncated
                     ensemble and the small-k product regime.
    ProductLaw{a}    Phi_a(sqrt(a)/2 + 2 log(x)/sqrt(a)) with
                     Phi_a(x) = prod_{j>=0} Phi(x + j sqrt(a)); limit of
                     the product-ensemble radius when k/n -> a.
    StandardNormal   limit of the centered log-radius when k/n -> inf.

Both infinite products are evaluated as compensated sums of log factors
with a certified truncation bound:

  * For H, the identity sum_{k>=1} (1 - H_k(tau)) = tau makes the dropped
    mass R_K = tau - sum_{k<=K} (1 - H_k(tau)) exactly computable, and
    -log(1-u) <= u/(1-u) turns it into a bound on the dropped log sum.
  * For Phi_a, the Gaussian tail bound 1 - Phi(t) <= phi(t)/t plus the
    geometric factor-ratio bound exp(-sqrt(a) t) dominate the dropped tail.

Each cdf value is returned as a CdfValue carrying its log and that bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NonConvergenceError
from .specfun import log_std_normal_cdf, std_normal_cdf, std_normal_pdf
from .samplers import RandomStream

__all__ = [
    "SphericalH",
    "Gumbel",
    "ProductLaw",
    "StandardNormal",
    "LimitLaw",
    "SPHERICAL_H",
    "GUMBEL",
    "STANDARD_NORMAL",
    "CdfValue",
    "spherical_h_cdf",
    "gumbel_cdf",
    "phi_alpha",
    "product_law_cdf",
    "cdf",
    "cdf_values",
    "upper_tail",
    "tail_asymptote",
    "quantile",
    "quantiles",
    "sample_limit",
    "sample_limit_batch",
]


@dataclass(frozen=True)
class SphericalH:
    pass


@dataclass(frozen=True)
class Gumbel:
    pass


@dataclass(frozen=True)
class ProductLaw:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and a > 0.0):
            raise ValueError(f"alpha must be a positive finite real, got {self.alpha}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class StandardNormal:
    pass


LimitLaw = Union[SphericalH, Gumbel, ProductLaw, StandardNormal]

SPHERICAL_H = SphericalH()
GUMBEL = Gumbel()
STANDARD_NORMAL = StandardNormal()


@dataclass(frozen=True)
class CdfValue:
    """A cdf evaluation with its natural log and a rigorous bound on the
    |log error| introduced by truncating an infinite product (0 when the
    formula is closed-form)."""

    value: float
    log_value: float
    truncation_bound: float


def _validate_tol(tol: float) -> float:
    tol = float(tol)
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be a positive finite real, got {tol}")
    return tol


# ---------------------------------------------------------------------------
# spherical H law


def _poisson_weight_table(tau: float, i_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scaled Poisson(tau) pmf machinery on i = 0..i_max.

    Returns (prefix, suffix, total) of weights w_i = pmf_i * exp(-m) for the
    row max m, so every entry is in (0, 1] and ratios are exact pmf ratios.
    prefix[i] = sum_{l<=i} w_l, suffix[i] = sum_{l>=i} w_l; both are sums of
    positives and keep relative accuracy at their small ends.
    """
    i = np.arange(i_max + 1, dtype=float)
    if tau > 0.0:
        log_pmf = -tau + i * math.log(tau) - np.cumsum(np.concatenate(([0.0], np.log(i[1:]))))
    else:
        log_pmf = np.full(i_max + 1, -np.inf)
        log_pmf[0] = 0.0
    w = np.exp(log_pmf - np.max(log_pmf))
    prefix = np.cumsum(w)
    suffix = np.cumsum(w[::-1])[::-1]
    return prefix, suffix, float(prefix[-1])


def _poisson_table_span(tau: float) -> int:
    return int(math.ceil(tau + 12.0 * math.sqrt(tau + 1.0))) + 40


def spherical_h_cdf(x: float, tol: float = 1e-12, max_terms: int = 200_000) -> CdfValue:
    """H(x) for the spherical radius limit; exactly 0 for x <= 0.

    log H(x) = sum_{k=1}^K log H_k(tau), tau = x^-2, stopping at the first
    K whose certified remainder bound R_K / H_K(tau) falls below tol (the
    dropped factors satisfy -log H_k <= (1-H_k)/H_k and H_k >= H_K for
    k > K, so the bound dominates the dropped log mass).
    """
    tol = _validate_tol(tol)
    x = float(x)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    if x <= 0.0:
        return CdfValue(0.0, -math.inf, 0.0)
    tau = x ** (-2.0)
    if tau > 745.0:
        # H(x) <= H_1(tau) = e^{-tau} < 5e-324: exactly 0 in double precision
        return CdfValue(0.0, -math.inf, 0.0)

    i_max = _poisson_table_span(tau)
    prefix, suffix, total = _poisson_weight_table(tau, i_max)

    log_factors: list[float] = []
    complements: list[float] = []
    k = 0
    while True:
        k += 1
        if k > max_terms:
            partial = tau - math.fsum(complements)
            raise NonConvergenceError(
                f"spherical H truncation did not reach tol={tol} within "
                f"{max_terms} factors at x={x}",
                achieved=partial / max(1e-300, 1.0 - complements[-1]),
            )
        if k + 1 > i_max:
            i_max *= 2
            prefix, suffix, total = _poisson_weight_table(tau, i_max)
        # c_k = P(Poi >= k) = 1 - H_k; h_k = H_k = P(Poi <= k-1)
        c_k = float(suffix[k]) / total
        h_k = float(prefix[k - 1]) / total
        complements.append(c_k)
        if c_k <= 0.5:
            log_factors.append(math.log1p(-c_k))
        else:
            log_factors.append(math.log(h_k))
        # R_k = dropped complement mass; exact by the identity sum c_k = tau
        r_k = tau - math.fsum(complements)
        bound = max(0.0, r_k) / h_k if h_k > 0.0 else math.inf
        if bound <= tol:
            break

    log_value = math.fsum(log_factors)
    return CdfValue(math.exp(log_value), log_value, bound)


def _spherical_h_log_vec(x: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Vector version of the H log-cdf for bulk evaluation (sampling, KS
    grids).  Same factor formulas; plain summation instead of fsum, which
    costs ~1e-13 absolute at worst, irrelevant at the tolerances used for
    batch work (>= 1e-10)."""
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, -np.inf)
    bounds = np.zeros(x.shape)
    pos = x > 0.0
    if not np.any(pos):
        return out, bounds

    # H(x) <= H_1(tau) = e^{-tau}, so tau > 745 underflows the double value
    # to exactly 0; a strictly monotone surrogate log keeps grid and
    # bisection code well ordered without building giant Poisson tables
    tau_all = np.clip(x[pos] ** (-2.0), 1e-300, None)
    tiny = tau_all > 745.0
    if np.any(tiny):
        sub = np.full(x.shape, -np.inf)
        sub[pos] = np.where(tiny, -55.0 - tau_all, -np.inf)
        if np.all(tiny):
            out[pos] = sub[pos]
            return out, bounds
        inner = pos.copy()
        inner[pos] = ~tiny
        out_inner, bounds_inner = _spherical_h_log_vec(x[inner], tol)
        out[pos] = sub[pos]
        out[inner] = out_inner
        bounds[inner] = bounds_inner
        return out, bounds

    tau = tau_all
    tau_max = float(np.max(tau))
    i_max = _poisson_table_span(tau_max)

    # rows: one tau per row; columns: Poisson support 0..i_max
    i = np.arange(i_max + 1, dtype=float)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(i[1:]))))
    log_pmf = -tau[:, None] + i[None, :] * np.log(tau)[:, None] - log_fact[None, :]
    w = np.exp(log_pmf - np.max(log_pmf, axis=1, keepdims=True))
    prefix = np.cumsum(w, axis=1)
    suffix = np.cumsum(w[:, ::-1], axis=1)[:, ::-1]
    total = prefix[:, -1]

    # c[:, k-1] = 1 - H_k for k = 1..i_max; factor logs from whichever of
    # (complement, direct) is the small, relatively-accurate one
    c = suffix[:, 1:] / total[:, None]
    h = prefix[:, :-1] / total[:, None]
    logs = np.where(c <= 0.5, np.log1p(-np.minimum(c, 1.0)), np.log(np.maximum(h, 1e-320)))

    # per-row K: first k with (tau - cumsum c)/H_k <= tol
    residual = tau[:, None] - np.cumsum(c, axis=1)
    ok = residual <= tol * np.maximum(h, 1e-320)
    k_stop = np.argmax(ok, axis=1)
    if not np.all(ok[np.arange(len(tau)), k_stop]):
        raise NonConvergenceError(
            f"H table span insufficient for tol={tol} (tau_max={tau_max:.3g})"
        )
    csum = np.cumsum(logs, axis=1)
    rows = np.arange(len(tau))
    out[pos] = csum[rows, k_stop]
    bounds_pos = np.maximum(residual[rows, k_stop], 0.0) / np.maximum(h[rows, k_stop], 1e-320)
    bounds[pos] = bounds_pos
    return out, bounds


# ---------------------------------------------------------------------------
# Gumbel


def gumbel_cdf(x: float) -> float:
    """Lambda(x) = exp(-exp(-x)), exact."""
    x = float(x)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    return math.exp(-math.exp(-x))


# ---------------------------------------------------------------------------
# Phi_alpha and the product law


def phi_alpha(x: float, alpha: float, tol: float = 1e-12, max_terms: int = 200_000) -> CdfValue:
    """Phi_alpha(x) = prod_{j>=0} Phi(x + j sqrt(alpha)).

    Truncates at the first J with t_J = x + J sqrt(alpha) >= 1 and
    u_J/(1 - r_J) <= tol * Phi(t_J), where u_J = 1 - Phi(t_J) and
    r_J = exp(-sqrt(alpha) t_J) dominates the ratio of successive tails;
    the dropped log mass is then below u_J/((1-r_J) Phi(t_J)) <= tol.
    """
    tol = _validate_tol(tol)
    x = float(x)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"alpha must be a positive finite real, got {alpha}")
    sqrt_a = math.sqrt(alpha)

    logs: list[float] = []
    j = 0
    while True:
        t = x + j * sqrt_a
        if t >= 1.0:
            u = 0.5 * math.erfc(t * _SQRT1_2)
            r = math.exp(-sqrt_a * t)
            phi_t = 1.0 - u
            bound = u / ((1.0 - r) * phi_t)
            if bound <= tol:
                break
        logs.append(log_std_normal_cdf(t))
        j += 1
        if j > max_terms:
            raise NonConvergenceError(
                f"Phi_alpha truncation did not reach tol={tol} within {max_terms} "
                f"factors at x={x}, alpha={alpha}",
                achieved=bound if t >= 1.0 else math.inf,
            )
    log_value = math.fsum(logs)
    return CdfValue(math.exp(log_value), log_value, bound)


_SQRT1_2 = math.sqrt(0.5)

_erfc_vec = np.frompyfunc(math.erfc, 1, 1)


def _log_std_normal_cdf_vec(t: np.ndarray) -> np.ndarray:
    """Vectorized log Phi; mirrors specfun.log_std_normal_cdf."""
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape)
    hi = t > 0.0
    mid = (~hi) & (t >= -30.0)
    lo = t < -30.0
    if np.any(hi):
        upper = 0.5 * _erfc_vec(t[hi] * _SQRT1_2).astype(float)
        out[hi] = np.log1p(-upper)
    if np.any(mid):
        out[mid] = np.log(0.5 * _erfc_vec(-t[mid] * _SQRT1_2).astype(float))
    if np.any(lo):
        s = -t[lo]
        cf = s + 40.0
        for kk in range(39, 0, -1):
            cf = s + kk / cf
        out[lo] = -0.5 * s * s - 0.5 * math.log(2.0 * math.pi) - np.log(cf)
    return out


def _phi_alpha_log_vec(x: np.ndarray, alpha: float, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized log Phi_alpha over an array of arguments."""
    x = np.asarray(x, dtype=float)
    sqrt_a = math.sqrt(alpha)
    x_min = float(np.min(x))
    # common J: enough that t_J >= 1 and the scalar bound holds at x_min
    j_req = max(0, int(math.ceil((1.0 - x_min) / sqrt_a))) + 1
    while True:
        t = x_min + j_req * sqrt_a
        u = 0.5 * math.erfc(t * _SQRT1_2)
        bound_min = u / ((1.0 - math.exp(-sqrt_a * t)) * (1.0 - u))
        if bound_min <= tol:
            break
        j_req += max(1, int(1.0 / sqrt_a))
        if j_req > 1_000_000:
            raise NonConvergenceError(
                f"Phi_alpha vector truncation did not reach tol={tol}", achieved=bound_min
            )
    terms = x[:, None] + sqrt_a * np.arange(j_req + 1, dtype=float)[None, :]
    logs = _log_std_normal_cdf_vec(terms)
    log_value = np.sum(logs, axis=1)

    t_last = terms[:, -1]
    u_last = 0.5 * _erfc_vec(t_last * _SQRT1_2).astype(float)
    bounds = u_last / ((1.0 - np.exp(-sqrt_a * t_last)) * (1.0 - u_last))
    return log_value, bounds


def product_law_cdf(x: float, alpha: float, tol: float = 1e-12) -> CdfValue:
    """Limit cdf of radius/n^(k/2) when k/n -> alpha:
    Phi_alpha(sqrt(alpha)/2 + 2 log(x)/sqrt(alpha)); 0 for x <= 0."""
    tol = _validate_tol(tol)
    x = float(x)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"alpha must be a positive finite real, got {alpha}")
    if x <= 0.0:
        return CdfValue(0.0, -math.inf, 0.0)
    sqrt_a = math.sqrt(alpha)
    return phi_alpha(0.5 * sqrt_a + 2.0 * math.log(x) / sqrt_a, alpha, tol)


# ---------------------------------------------------------------------------
# generic dispatch


def cdf(law: LimitLaw, x: float, tol: float = 1e-12) -> CdfValue:
    """CdfValue of any limit law at x (closed forms report bound 0)."""
    if isinstance(law, SphericalH):
        return spherical_h_cdf(x, tol)
    if isinstance(law, Gumbel):
        x = float(x)
        if math.isnan(x):
            raise ValueError("x must not be NaN")
        return CdfValue(gumbel_cdf(x), -math.exp(-x), 0.0)
    if isinstance(law, ProductLaw):
        return product_law_cdf(x, law.alpha, tol)
    if isinstance(law, StandardNormal):
        x = float(x)
        if math.isnan(x):
            raise ValueError("x must not be NaN")
        return CdfValue(std_normal_cdf(x), log_std_normal_cdf(x), 0.0)
    raise ValueError(f"unknown limit law: {law!r}")


def cdf_values(law: LimitLaw, x, tol: float = 1e-10) -> np.ndarray:
    """Vectorized cdf evaluation (values only), for KS statistics and grids."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if isinstance(law, SphericalH):
        log_v, _ = _spherical_h_log_vec(x, tol)
        return np.exp(log_v)
    if isinstance(law, Gumbel):
        return np.exp(-np.exp(-x))
    if isinstance(law, ProductLaw):
        out = np.zeros(x.shape)
        pos = x > 0.0
        if np.any(pos):
            sqrt_a = math.sqrt(law.alpha)
            args = 0.5 * sqrt_a + 2.0 * np.log(x[pos]) / sqrt_a
            log_v, _ = _phi_alpha_log_vec(args, law.alpha, tol)
            out[pos] = np.exp(log_v)
        return out
    if isinstance(law, StandardNormal):
        return 0.5 * _erfc_vec(-x * _SQRT1_2).astype(float)
    raise ValueError(f"unknown limit law: {law!r}")


def upper_tail(law: LimitLaw, x: float, tol: float = 1e-12) -> float:
    """1 - cdf(x) with relative accuracy preserved through the log form:
    -expm1(log_value) never subtracts two near-1 doubles."""
    if isinstance(law, Gumbel):
        return -math.expm1(-math.exp(-float(x)))
    if isinstance(law, StandardNormal):
        return 0.5 * math.erfc(float(x) * _SQRT1_2)
    cv = cdf(law, x, tol)
    return -math.expm1(cv.log_value)


def tail_asymptote(law: LimitLaw, x: float) -> float:
    """Leading-order upper-tail approximation 1 - cdf(x) for x > 1.

    SphericalH: x^-2.  ProductLaw{a}: C exp(-2 (log x)^2/a)/(x log x) with
    C = sqrt(a) e^(-a/8) / (2 sqrt(2 pi)).  StandardNormal: phi(x)/x.
    Gumbel: the exact complement -expm1(-exp(-x)) (no approximation).
    """
    x = float(x)
    if not x > 1.0:
        raise ValueError(f"tail asymptote requires x > 1, got {x}")
    if isinstance(law, SphericalH):
        return x ** (-2.0)
    if isinstance(law, Gumbel):
        return -math.expm1(-math.exp(-x))
    if isinstance(law, ProductLaw):
        a = law.alpha
        c = math.sqrt(a) * math.exp(-a / 8.0) / (2.0 * math.sqrt(2.0 * math.pi))
        log_x = math.log(x)
        return c * math.exp(-2.0 * log_x * log_x / a) / (x * log_x)
    if isinstance(law, StandardNormal):
        return std_normal_pdf(x) / x
    raise ValueError(f"unknown limit law: {law!r}")


# ---------------------------------------------------------------------------
# quantiles and sampling


def _seed_bracket(law: LimitLaw, q_lo: float, q_hi: float) -> tuple[float, float, bool]:
    """Starting bracket containing all quantiles in [q_lo, q_hi].

    Base intervals are [1e-3, 1e3] on positive-support laws and [-8, 8]
    otherwise, refined with certified analytic pre-brackets:

      SphericalH:  H(x) <= H_1(x^-2) = exp(-x^-2) gives a lower edge, and
                   1 - H(x) <= x^-2 / H_1(x^-2) gives an upper edge.  This
                   keeps tau = x^-2 modest, so bracketing never evaluates
                   the product at astronomically long Poisson spans.
      ProductLaw:  bisection runs in the Gaussian argument t = sqrt(a)/2
                   + 2 log(x)/sqrt(a), where Phi_a(t) <= Phi(t) bounds the
                   lower edge via the Gaussian tail.

    The caller still expands outward when an edge turns out to be inside.
    """
    if isinstance(law, SphericalH):
        lo = max(1e-3, 0.98 / math.sqrt(math.log(1.0 / q_lo)))
        hi = min(1e3, 1.5 * math.sqrt(2.0 / (1.0 - q_hi)))
        return lo, max(hi, 2.0 * lo), True
    if isinstance(law, ProductLaw):
        # t-space bracket (caller converts); Phi(t) <= exp(-t^2/2) for t < 0
        lo = -math.sqrt(2.0 * math.log(1.0 / q_lo)) - 1.0
        hi = math.sqrt(2.0 * math.log(1.0 / (1.0 - q_hi))) + 3.0 + 1.0 / math.sqrt(law.alpha)
        return lo, hi, False
    return -8.0, 8.0, False


def _product_arg_to_x(law: ProductLaw, t):
    sqrt_a = math.sqrt(law.alpha)
    return np.exp((np.asarray(t, dtype=float) - 0.5 * sqrt_a) * sqrt_a / 2.0)


def quantile(law: LimitLaw, q: float, tol: float = 1e-10, max_iter: int = 500) -> float:
    """x with |cdf(x) - q| <= tol, by bracket expansion then bisection.
    Gumbel inverts in closed form."""
    q = float(q)
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie strictly between 0 and 1, got {q}")
    tol = _validate_tol(tol)
    if isinstance(law, Gumbel):
        return -math.log(-math.log(q))

    eval_tol = min(tol * 0.1, 1e-11)
    stop_tol = tol - eval_tol

    in_t_space = isinstance(law, ProductLaw)

    def f(point: float) -> float:
        if in_t_space:
            return phi_alpha(point, law.alpha, eval_tol).value
        return cdf(law, point, eval_tol).value

    lo, hi, positive = _seed_bracket(law, q, q)
    for _ in range(80):
        if f(lo) <= q:
            break
        lo = lo / 2.0 if positive else lo - 4.0
    else:
        raise NonConvergenceError(f"could not bracket quantile q={q} from below")
    for _ in range(80):
        if f(hi) >= q:
            break
        hi = hi * 2.0 if positive else hi + 4.0
    else:
        raise NonConvergenceError(f"could not bracket quantile q={q} from above")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        v = f(mid)
        if abs(v - q) <= stop_tol:
            return float(_product_arg_to_x(law, mid)) if in_t_space else mid
        if v < q:
            lo = mid
        else:
            hi = mid
        if hi - lo <= abs(mid) * 1e-17:
            return float(_product_arg_to_x(law, mid)) if in_t_space else mid
    raise NonConvergenceError(
        f"quantile bisection for q={q} did not reach tol={tol} in {max_iter} iterations"
    )


def quantiles(law: LimitLaw, q, tol: float = 1e-10) -> np.ndarray:
    """Vectorized quantile via bracketed bisection on the whole array."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    if np.any((q <= 0.0) | (q >= 1.0)):
        raise ValueError("all quantile levels must lie strictly in (0, 1)")
    tol = _validate_tol(tol)
    if isinstance(law, Gumbel):
        return -np.log(-np.log(q))

    eval_tol = min(tol * 0.1, 1e-11)
    stop_tol = tol - eval_tol

    in_t_space = isinstance(law, ProductLaw)

    def fvec(points: np.ndarray) -> np.ndarray:
        if in_t_space:
            log_v, _ = _phi_alpha_log_vec(points, law.alpha, eval_tol)
            return np.exp(log_v)
        return cdf_values(law, points, eval_tol)

    lo0, hi0, positive = _seed_bracket(law, float(np.min(q)), float(np.max(q)))
    lo = np.full(q.shape, lo0)
    hi = np.full(q.shape, hi0)
    for _ in range(80):
        need = fvec(lo) > q
        if not np.any(need):
            break
        lo[need] = lo[need] / 2.0 if positive else lo[need] - 4.0
    for _ in range(80):
        need = fvec(hi) < q
        if not np.any(need):
            break
        hi[need] = hi[need] * 2.0 if positive else hi[need] + 4.0

    x = 0.5 * (lo + hi)
    for _ in range(200):
        v = fvec(x)
        done = np.abs(v - q) <= stop_tol
        if np.all(done):
            break
        below = v < q
        lo = np.where(below, x, lo)
        hi = np.where(below, hi, x)
        x = np.where(done, x, 0.5 * (lo + hi))
        if np.all((hi - lo) <= np.abs(x) * 1e-17 + 1e-300):
            break
    return _product_arg_to_x(law, x) if in_t_space else x


def _uniform_source(rng):
    # accept a RandomStream or a bare numpy Generator
    return getattr(rng, "generator", rng)


def sample_limit(law: LimitLaw, rng: RandomStream) -> float:
    """One draw by inverse-cdf transform of a uniform variate (exact up to
    the 1e-10 quantile tolerance)."""
    gen = _uniform_source(rng)
    u = float(gen.random())
    while u <= 0.0 or u >= 1.0:
        u = float(gen.random())
    if isinstance(law, Gumbel):
        return -math.log(-math.log(u))
    return quantile(law, u, 1e-10)


def sample_limit_batch(law: LimitLaw, rng: RandomStream, size: int) -> np.ndarray:
    """size draws by vectorized inverse-cdf transform."""
    if int(size) != size or size < 1:
        raise ValueError(f"size must be a positive integer, got {size}")
    u = _uniform_source(rng).random(int(size))
    u = np.clip(u, 1e-16, 1.0 - 1e-16)
    if isinstance(law, Gumbel):
        return -np.log(-np.log(u))
    return quantiles(law, u, 1e-10)
