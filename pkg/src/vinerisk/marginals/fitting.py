"""Marginal parameter estimation and family selection.

The hyperbolic family is fitted by Nelder-Mead maximum likelihood from a
moment start; the stable and Meixner families by minimizing the
Cramer-von-Mises distance between model and empirical CDFs from
quantile/moment starts. Parameter domains are enforced through smooth
log/logit reparameterizations so the simplex search is unconstrained.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from ..errors import FitError
from .hyperbolic import HyperbolicParams
from .meixner import Meixner, MeixnerParams
from .model import MarginalModel
from .stable import StableParams, stable_cdf_fitgrid

MIN_SAMPLE = 30

# McCulloch (1986) symmetric-case lookup: (q95-q05)/(q75-q25) vs alpha
_MCC_ALPHA = np.array([2.0, 1.9, 1.8, 1.7, 1.6, 1.5, 1.4, 1.3, 1.2, 1.1, 1.0, 0.9, 0.8, 0.7, 0.6, 0.5])
_MCC_RATIO = np.array([2.439, 2.5, 2.6, 2.74, 2.91, 3.15, 3.46, 3.88, 4.45, 5.22,
                       6.31, 7.91, 10.45, 14.84, 23.48, 44.28])


def _sigmoid(a):
    return 1.0 / (1.0 + np.exp(-a))


def _logit(p):
    return np.log(p / (1.0 - p))


def _nelder_mead(obj, x0, maxiter=2000, restarts=3, xatol=1e-8):
    best_x, best_f = None, np.inf
    rng = np.random.default_rng(1234)  # fixed: fits are deterministic
    start = np.asarray(x0, dtype=float)
    attempt = 0
    while True:
        res = minimize(
            obj, start, method="Nelder-Mead",
            options={"xatol": xatol, "fatol": 1e-10, "maxiter": maxiter, "maxfev": 2 * maxiter},
        )
        if res.fun < best_f:
            best_x, best_f = res.x, res.fun
        if res.success or attempt >= restarts:
            if best_x is None or not np.isfinite(best_f):
                raise FitError("optimizer did not converge within the restart budget")
            return best_x, best_f
        attempt += 1
        start = best_x + rng.normal(scale=0.3, size=len(best_x))


def cvm_distance(u_sorted):
    """omega^2 = sum(u_(i) - (2i-1)/(2n))^2 + 1/(12n) on sorted PIT values."""
    n = len(u_sorted)
    i = np.arange(1, n + 1)
    return np.sum((u_sorted - (2 * i - 1) / (2 * n)) ** 2) + 1.0 / (12 * n)


def _check_sample(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) < MIN_SAMPLE:
        raise ValueError(f"need a 1-d sample with at least {MIN_SAMPLE} points")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    if np.max(x) == np.min(x):
        raise FitError("degenerate sample: all values identical")
    return x


# ---------------------------------------------------------------------------
# hyperbolic: Nelder-Mead MLE
# ---------------------------------------------------------------------------

def _hyp_pack(p):
    return np.array([p[0], np.log(p[1]), np.log(p[2]), p[3]])


def _hyp_unpack(t):
    return HyperbolicParams(pi=t[0], zeta=np.exp(t[1]), delta=np.exp(t[2]), mu=t[3])


def fit_hyperbolic(x, *, start=None, maxiter=2000, restarts=3) -> HyperbolicParams:
    x = _check_sample(x)

    def negloglik(t):
        try:
            params = _hyp_unpack(t)
        except (ValueError, OverflowError):
            return 1e10
        from .hyperbolic import Hyperbolic

        ll = Hyperbolic(params).logpdf(x)
        val = -np.mean(ll)
        return val if np.isfinite(val) else 1e10

    if start is None:
        t0 = np.array([0.0, 0.0, np.log(np.std(x)), np.median(x)])
    else:
        t0 = _hyp_pack([start.pi, start.zeta, start.delta, start.mu])
    t_best, _ = _nelder_mead(negloglik, t0, maxiter=maxiter, restarts=restarts)
    params = _hyp_unpack(t_best)
    if params.zeta > 1e6 or params.zeta < 1e-8:
        raise FitError("zeta hit its domain boundary during hyperbolic fit")
    return params


# ---------------------------------------------------------------------------
# stable and Meixner: minimum Cramer-von-Mises distance
# ---------------------------------------------------------------------------

def _stable_pack(p):
    return np.array([_logit((p[0] - 0.05) / 1.95), np.arctanh(np.clip(p[1], -0.999, 0.999)),
                     np.log(p[2]), p[3]])


def _stable_unpack(t):
    return StableParams(
        alpha=0.05 + 1.95 * _sigmoid(t[0]),
        beta=np.tanh(t[1]),
        gamma=np.exp(t[2]),
        mu=t[3],
    )


def _stable_start(x):
    q = np.quantile(x, [0.05, 0.25, 0.5, 0.75, 0.95])
    iqr = max(q[3] - q[1], 1e-12)
    ratio = (q[4] - q[0]) / iqr
    alpha0 = float(np.interp(ratio, _MCC_RATIO, _MCC_ALPHA))
    nu_b = (q[4] + q[0] - 2 * q[2]) / max(q[4] - q[0], 1e-12)
    beta0 = float(np.clip(2.5 * nu_b, -0.8, 0.8))
    return StableParams(alpha=alpha0, beta=beta0, gamma=iqr / 1.9, mu=float(q[2]))


def _mex_pack(p):
    return np.array([np.log(p[0]), np.arctanh(np.clip(p[1] / np.pi, -0.999, 0.999)),
                     np.log(p[2]), p[3]])


def _mex_unpack(t):
    return MeixnerParams(
        alpha=np.exp(t[0]), beta=np.pi * np.tanh(t[1]), delta=np.exp(t[2]), mu=t[3]
    )


def _meixner_start(x):
    m, s = np.mean(x), np.std(x)
    g1 = float(np.clip(np.mean(((x - m) / s) ** 3), -3.0, 3.0))
    g2 = float(np.clip(np.mean(((x - m) / s) ** 4) - 3.0, 0.05, 50.0))
    delta0 = 1.0 / g2
    sinhalf = np.clip(g1 * np.sqrt(delta0 / 2.0), -0.9, 0.9)
    beta0 = 2.0 * np.arcsin(sinhalf)
    delta0 = float(np.clip((2.0 - np.cos(beta0)) / g2, 1e-3, 1e4))
    alpha0 = s * np.cos(beta0 / 2.0) * np.sqrt(2.0 / delta0)
    mu0 = m - alpha0 * delta0 * np.tan(beta0 / 2.0)
    return MeixnerParams(alpha=float(alpha0), beta=float(beta0), delta=delta0, mu=float(mu0))


def _cvm_objective(family, xs):
    n = len(xs)
    i = np.arange(1, n + 1)
    target = (2 * i - 1) / (2 * n)

    if family == "stable":
        def obj(t):
            try:
                p = _stable_unpack(t)
            except (ValueError, OverflowError):
                return 1e10
            u = stable_cdf_fitgrid((xs - p.mu) / p.gamma, p.alpha, p.beta)
            val = np.sum((u - target) ** 2) + 1.0 / (12 * n)
            return val if np.isfinite(val) else 1e10
    else:
        def obj(t):
            try:
                p = _mex_unpack(t)
                dist = Meixner(p, table_panels=512)
                u = dist.cdf(xs)
            except Exception:
                return 1e10
            val = np.sum((u - target) ** 2) + 1.0 / (12 * n)
            return val if np.isfinite(val) else 1e10

    return obj


def fit_by_cvm(family, x, *, start=None, maxiter=2000, restarts=3):
    """Minimum-CvM fit for the stable or Meixner family."""
    if family not in ("stable", "meixner"):
        raise ValueError("fit_by_cvm supports the stable and meixner families")
    x = _check_sample(x)
    xs = np.sort(x)
    obj = _cvm_objective(family, xs)
    if family == "stable":
        s0 = start if start is not None else _stable_start(xs)
        t0 = _stable_pack([s0.alpha, s0.beta, s0.gamma, s0.mu])
        t_best, _ = _nelder_mead(obj, t0, maxiter=maxiter, restarts=restarts)
        p = _stable_unpack(t_best)
        if abs(p.beta) > 0.9995:
            raise FitError("beta hit its domain boundary during stable fit")
        if p.alpha < 0.06:
            raise FitError("alpha hit its domain boundary during stable fit")
        return p
    s0 = start if start is not None else _meixner_start(xs)
    t0 = _mex_pack([s0.alpha, s0.beta, s0.delta, s0.mu])
    t_best, _ = _nelder_mead(obj, t0, maxiter=maxiter, restarts=restarts)
    p = _mex_unpack(t_best)
    if abs(p.beta) > 0.995 * np.pi:
        raise FitError("beta hit its domain boundary during Meixner fit")
    if not (1e-6 < p.delta < 1e6):
        raise FitError("delta hit its domain boundary during Meixner fit")
    return p


def fit_family(family, x, *, start=None, fast=False):
    """Uniform entry point; ``fast`` trims the budget for bootstrap refits."""
    maxiter = 300 if fast else 2000
    restarts = 0 if fast else 3
    if family == "hyperbolic":
        return fit_hyperbolic(x, start=start, maxiter=maxiter, restarts=restarts)
    return fit_by_cvm(family, x, start=start, maxiter=maxiter, restarts=restarts)


def fitted_model(family, x, params=None) -> MarginalModel:
    """Fit (if needed) and wrap with the family's fit-quality diagnostic."""
    x = _check_sample(x)
    if params is None:
        params = fit_family(family, x)
    model = MarginalModel(family=family, params=params)
    if family == "hyperbolic":
        model.diagnostics["loglik"] = float(np.sum(model.logpdf(x)))
    u = np.sort(np.clip(model.cdf(np.sort(x)), 1e-12, 1 - 1e-12))
    model.diagnostics["cvm_distance"] = float(cvm_distance(u))
    return model


def select_marginal(x, *, families=("hyperbolic", "stable", "meixner"),
                    B=200, seed=0) -> MarginalModel:
    """Fit every family, score by the CvM bootstrap p-value, keep the best.

    Ties on the p-value (granularity 1/(B+1)) break toward the smaller CvM
    statistic, then toward meixner > stable > hyperbolic.
    """
    from .gof import gof_test

    order = {"meixner": 0, "stable": 1, "hyperbolic": 2}
    scored = []
    errors = []
    for fam in families:
        try:
            model = fitted_model(fam, x)
            res = gof_test(model, x, test="cvm", B=B, seed=seed)
            model.diagnostics["gof_cvm_p"] = res.pvalue
            scored.append((-res.pvalue, res.statistic, order[fam], model))
        except FitError as exc:
            errors.append(f"{fam}: {exc}")
    if not scored:
        raise FitError("all marginal fits failed: " + "; ".join(errors))
    scored.sort(key=lambda s: s[:3])
    return scored[0][3]
