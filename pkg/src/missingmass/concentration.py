"""Concentration variance factors and their gap to the true variance.

Sub-gamma tail bounds for the missing mass use the variance factor

    v = sum_s p_s^2 (1-p_s)^n + (1/n) sum_s p_s (1-p_s)^n,

while bounding the negatively dependent unseen-symbol indicators by
independent copies keeps only the diagonal variance term

    sum_s p_s^2 ((1-p_s)^n - (1-p_s)^{2n}).

Both dominate Var[M0]; the report quantifies by how much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import DiscreteDistribution
from .variance import (
    VarianceMethod,
    _fsum,
    _pow_one_minus,
    _require_sample_size,
    exact_variance,
    poissonized_variance,
)


@dataclass(frozen=True)
class GapReport:
    n: int
    mode: VarianceMethod
    true_variance: float
    subgamma_v: float
    iid_major_v: float
    gap_subgamma: float
    gap_iid: float


@dataclass(frozen=True)
class SubgammaSearchResult:
    """Best n*v found over the uniform-plus-point-mass family."""

    scaled_value: float
    atom_count: int
    uniform_mass: float


def subgamma_v(dist: DiscreteDistribution, n: int) -> float:
    """Sub-gamma variance factor sum p^2 q + (1/n) sum p q, q = (1-p)^n."""
    _require_sample_size(n)
    p = dist.probs
    q = _pow_one_minus(p, n)
    return _fsum(p * p * q) + _fsum(p * q) / n


def iid_majorization_v(dist: DiscreteDistribution, n: int) -> float:
    """Variance term left after dropping all (negative) covariances.

    Equals sum p^2 ((1-p)^n - (1-p)^{2n}), i.e. exact_variance without the
    pairwise part, so it upper-bounds the true variance.
    """
    _require_sample_size(n)
    p = dist.probs
    return _fsum(p * p * (_pow_one_minus(p, n) - _pow_one_minus(p, 2 * n)))


def gap_report(dist: DiscreteDistribution, n: int, mode: VarianceMethod = VarianceMethod.EXACT) -> GapReport:
    """Assemble both factors and their gaps against the chosen true variance."""
    if mode == VarianceMethod.EXACT:
        true = exact_variance(dist, n).value
    elif mode == VarianceMethod.POISSONIZED:
        true = poissonized_variance(dist, n).value
    else:
        raise ValueError(f"mode must be EXACT or POISSONIZED, got {mode}")
    sub = subgamma_v(dist, n)
    iid = iid_majorization_v(dist, n)
    return GapReport(
        n=n,
        mode=mode,
        true_variance=true,
        subgamma_v=sub,
        iid_major_v=iid,
        gap_subgamma=sub - true,
        gap_iid=iid - true,
    )


def max_subgamma_uniform_dirac(n: int, max_atoms: int | None = None, w_steps: int = 201) -> SubgammaSearchResult:
    """Numerically maximize n*subgamma_v over k equal atoms plus one point mass.

    Best-effort scan: k runs over a log-spaced integer grid up to
    ``max_atoms`` (default 50*n) and the uniform-block mass w over [0, 1].
    The scaled factor keeps growing as the atoms get finer (it approaches 1
    when k -> infinity with w = 1), so the reported maximum is a property
    of the searched range, not a universal constant.
    """
    _require_sample_size(n)
    if max_atoms is None:
        max_atoms = 50 * n
    ks = np.unique(np.geomspace(1, max_atoms, num=200).astype(np.int64))
    ws = np.linspace(0.0, 1.0, w_steps)
    best = SubgammaSearchResult(scaled_value=-math.inf, atom_count=1, uniform_mass=0.0)
    for k in ks:
        p = ws / k
        d = 1.0 - ws
        with np.errstate(divide="ignore"):
            q = np.exp(n * np.log1p(-np.minimum(p, 1.0)))
            qd = np.exp(n * np.log1p(-d))
        v = k * p * p * q + d * d * qd + (k * p * q + d * qd) / n
        i = int(np.argmax(v))
        if n * v[i] > best.scaled_value:
            best = SubgammaSearchResult(scaled_value=float(n * v[i]), atom_count=int(k), uniform_mass=float(ws[i]))
    return best
