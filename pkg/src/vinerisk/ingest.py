"""Price loading, log-returns and rank-correlation matrices.

A price panel holds T+1 strictly positive closes for d assets on strictly
increasing dates; log-returns r[t, i] = ln(p[t+1, i] / p[t, i]) give a T x d
returns panel. Dependence screening uses rank correlations (Kendall tau-b
and Spearman rho), which are invariant under monotone transforms of each
column.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import stats

from .errors import DataError

log = logging.getLogger(__name__)

MIN_PRICE_ROWS = 31  # T >= 30 returns


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PricePanel:
    """(T+1) x d matrix of strictly positive closing prices."""

    assets: tuple[str, ...]
    dates: tuple[str, ...]  # ISO dates, strictly increasing
    prices: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "prices", _readonly(self.prices))
        n, d = self.prices.shape
        if d < 2:
            raise DataError(f"need at least 2 assets, got {d}")
        if n < MIN_PRICE_ROWS:
            raise DataError(
                f"insufficient observations: {n} rows < {MIN_PRICE_ROWS} required"
            )
        if len(self.assets) != d or len(self.dates) != n:
            raise DataError("label lengths do not match the price matrix")
        if not np.all(np.isfinite(self.prices)):
            t, i = np.argwhere(~np.isfinite(self.prices))[0]
            raise DataError(f"missing or non-finite price at ({self.dates[t]}, {self.assets[i]})")
        bad = np.argwhere(self.prices <= 0.0)
        if bad.size:
            t, i = bad[0]
            raise DataError(f"non-positive price at ({self.dates[t]}, {self.assets[i]})")
        parsed = pd.to_datetime(list(self.dates))
        if not parsed.is_monotonic_increasing or parsed.has_duplicates:
            raise DataError("dates are not strictly increasing")

    @property
    def n_assets(self) -> int:
        return self.prices.shape[1]


@dataclass(frozen=True)
class ReturnsPanel:
    """T x d matrix of log-returns; dates label the return (second) day."""

    assets: tuple[str, ...]
    dates: tuple[str, ...]
    returns: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "returns", _readonly(self.returns))
        t, d = self.returns.shape
        if len(self.assets) != d or len(self.dates) != t:
            raise DataError("label lengths do not match the returns matrix")
        if not np.all(np.isfinite(self.returns)):
            raise DataError("non-finite log-return")

    @property
    def n_obs(self) -> int:
        return self.returns.shape[0]

    @property
    def n_assets(self) -> int:
        return self.returns.shape[1]


@dataclass
class ColumnMap:
    """CSV column mapping: date column name plus asset -> column name."""

    date: str = "date"
    assets: dict[str, str] = field(default_factory=dict)


def load_prices(path, colmap: ColumnMap, date_start=None, date_end=None) -> PricePanel:
    """Load a close-price CSV into a PricePanel.

    Rows with any missing asset price are dropped (count logged). Optional
    date bounds are inclusive; rows outside are discarded before validation.
    """
    try:
        df = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise DataError(f"unreadable price file {path}: {exc}") from exc
    if not colmap.assets:
        raise DataError("column mapping has no asset columns")
    missing = [c for c in [colmap.date, *colmap.assets.values()] if c not in df.columns]
    if missing:
        raise DataError(f"configured columns absent from {path}: {missing}")

    df = df[[colmap.date, *colmap.assets.values()]].copy()
    df[colmap.date] = pd.to_datetime(df[colmap.date], errors="coerce")
    if df[colmap.date].isna().any():
        raise DataError("unparseable date value in price file")
    if date_start is not None:
        df = df[df[colmap.date] >= pd.to_datetime(date_start)]
    if date_end is not None:
        df = df[df[colmap.date] <= pd.to_datetime(date_end)]

    price_cols = list(colmap.assets.values())
    for col in price_cols:
        df[col] = pd.to_numeric(df[col], errors="coerce")
    n_before = len(df)
    df = df.dropna(subset=price_cols)
    dropped = n_before - len(df)
    if dropped:
        log.info("dropped %d rows with missing prices from %s", dropped, path)
    df = df.sort_values(colmap.date)

    if len(df) < MIN_PRICE_ROWS:
        raise DataError(
            f"insufficient observations: {len(df)} usable rows < {MIN_PRICE_ROWS}"
        )
    dates = tuple(d.date().isoformat() for d in df[colmap.date])
    return PricePanel(
        assets=tuple(colmap.assets.keys()),
        dates=dates,
        prices=df[price_cols].to_numpy(dtype=float),
    )


def log_returns(panel: PricePanel) -> ReturnsPanel:
    """r[t, i] = ln(p[t+1, i] / p[t, i])."""
    r = np.diff(np.log(panel.prices), axis=0)
    return ReturnsPanel(assets=panel.assets, dates=panel.dates[1:], returns=r)


def _check_not_constant(r: np.ndarray, assets) -> None:
    spans = r.max(axis=0) - r.min(axis=0)
    for i, s in enumerate(spans):
        if s == 0.0:
            raise DataError(f"column {assets[i]} is constant; rank correlation undefined")


def kendall_tau_matrix(panel: ReturnsPanel) -> np.ndarray:
    """Pairwise Kendall tau-b (tie-corrected) matrix with unit diagonal."""
    r = panel.returns
    if panel.n_obs < 2:
        raise DataError("need at least 2 observations for rank correlation")
    _check_not_constant(r, panel.assets)
    d = panel.n_assets
    out = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            tau = stats.kendalltau(r[:, i], r[:, j]).statistic
            out[i, j] = out[j, i] = tau
    return out


def spearman_rho_matrix(panel: ReturnsPanel) -> np.ndarray:
    """Pairwise Spearman (Pearson-on-ranks) matrix with unit diagonal."""
    r = panel.returns
    if panel.n_obs < 2:
        raise DataError("need at least 2 observations for rank correlation")
    _check_not_constant(r, panel.assets)
    d = panel.n_assets
    out = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            rho = stats.spearmanr(r[:, i], r[:, j]).statistic
            out[i, j] = out[j, i] = rho
    return out
