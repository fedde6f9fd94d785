"""Estimation of complementary covariances from samples, covariance-face
reconstruction, and classification of the symmetry class via rotation
residuals of the sample covariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qarray
from .core import ONE, Quaternion, QuaternionBasis, restrict
from .gaussian import (CovarianceR, PropernessTag, convert,
                       quaternion_face_from_gammas)
from .rotations import double_rotation

# structural subspace of each complementary covariance: the component along
# the involution's own axis is identically zero
_STRUCTURAL_MASKS = {1: frozenset({0, 2, 3}),
                     2: frozenset({0, 1, 3}),
                     3: frozenset({0, 1, 2})}


def _as_rows(samples) -> np.ndarray:
    data = getattr(samples, "data", samples)
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != 4:
        raise ValueError(f"expected an (n, 4) sample array, got {data.shape}")
    return data


@dataclass(frozen=True)
class ComplementaryCovariances:
    """Sample means of |q|^2 and of q (q^mu)* for the three basis axes."""

    sigma2: float
    gamma1: Quaternion
    gamma2: Quaternion
    gamma3: Quaternion
    basis: QuaternionBasis
    n: int

    @property
    def gammas(self):
        return (self.gamma1, self.gamma2, self.gamma3)


def complementary_covariances(samples, basis: QuaternionBasis,
                              center: bool = False) -> ComplementaryCovariances:
    """Estimate the complementary covariances of a sample.

    Variables are treated as centred by construction; pass center=True to
    subtract the sample mean first (real data).
    """
    x = _as_rows(samples)
    n = x.shape[0]
    if n < 2:
        raise ValueError("need at least 2 samples")
    if center:
        x = x - x.mean(axis=0)
    sigma2 = float(np.mean(np.sum(x * x, axis=1)))
    gammas = []
    for mu in basis.axes:
        y = qarray.involution(x, mu.to_vec())
        g = np.mean(qarray.mul(x, qarray.conj(y)), axis=0)
        gammas.append(Quaternion.from_vec(g))
    return ComplementaryCovariances(sigma2, gammas[0], gammas[1], gammas[2],
                                    basis, n)


def covariance_faces(samples, basis: QuaternionBasis, center: bool = False):
    """Reconstruct (quaternion, complex, real) covariance faces from samples.

    The quaternion face is assembled from the estimated complementary
    covariances (projected onto their structural subspaces); the real face is
    the plain sample covariance of the components; the complex face follows
    from the quaternion face.
    """
    x = _as_rows(samples)
    n = x.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples")
    cc = complementary_covariances(x, basis, center=center)
    g1, g2, g3 = (restrict(g, _STRUCTURAL_MASKS[idx], basis)
                  for idx, g in ((1, cc.gamma1), (2, cc.gamma2), (3, cc.gamma3)))
    gh = quaternion_face_from_gammas(cc.sigma2, g1, g2, g3, basis)
    xc = x - x.mean(axis=0) if center else x
    gr = CovarianceR((xc.T @ xc) / n, basis)
    gc = convert(gh, "complex")
    return gh, gc, gr


def symmetry_residual(cov: CovarianceR, u: Quaternion, v: Quaternion) -> float:
    """Relative Frobenius defect of the covariance under the rotation (u, v)."""
    g = np.asarray(cov.matrix, dtype=float)
    scale = float(np.linalg.norm(g))
    if scale == 0.0:
        raise ValueError("zero covariance has no symmetry residual")
    m = double_rotation(u, v).matrix
    return float(np.linalg.norm(m @ g @ m.T - g) / scale)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Candidate:
    """One symmetry hypothesis: a class tag, the basis-axis indices of its
    rotation, and the residual it leaves on the sample covariance."""

    tag: PropernessTag
    axis_indices: tuple
    residual: float

    def axes(self, basis: QuaternionBasis):
        return tuple(basis.axes[i] for i in self.axis_indices)

    def label(self, basis: QuaternionBasis) -> str:
        names = ",".join(axis_name(a) for a in self.axes(basis))
        return f"{self.tag.value}({names})" if names else self.tag.value


@dataclass(frozen=True)
class PropernessReport:
    """Residual scores for every candidate class plus the chosen one: the
    most specific class whose residual clears the tolerance."""

    candidates: tuple
    chosen: Candidate
    tolerance: float
    n: int
    basis: QuaternionBasis
    complementary: ComplementaryCovariances

    def to_dict(self):
        def cand_dict(cand):
            return {"class": cand.tag.value,
                    "axes": [list(a.axis_vec()) for a in cand.axes(self.basis)],
                    "label": cand.label(self.basis),
                    "residual": cand.residual}

        return {
            "n": self.n,
            "tolerance": self.tolerance,
            "sigma2": self.complementary.sigma2,
            "candidates": [cand_dict(c) for c in self.candidates],
            "chosen": cand_dict(self.chosen),
            "alias": via_class_alias(self),
        }


def axis_name(mu: Quaternion) -> str:
    """Short name of an axis: i, j, k (or their negatives) when it is one of
    the standard axes, otherwise its 3-vector."""
    vec = np.array([mu.b, mu.c, mu.d])
    for name, unit in (("i", [1, 0, 0]), ("j", [0, 1, 0]), ("k", [0, 0, 1])):
        if np.allclose(vec, unit, atol=1e-9):
            return name
        if np.allclose(vec, np.negative(unit), atol=1e-9):
            return "-" + name
    return "(" + ",".join(format(v, ".3g") for v in vec) + ")"


# candidate tiers from most to least specific; ties inside a tier go to the
# smaller residual
_TIER_MU_PAIRS = [(i, j) for i in range(3) for j in range(3) if i != j]


def classify(samples, basis: QuaternionBasis, c: float = 5.0,
             center: bool = False) -> PropernessReport:
    """Classify the symmetry class of a sample at tolerance c/sqrt(n).

    Candidate rotations range over the basis axes: left factors (mu, 1),
    right factors (1, mu), distinct pairs (mu, nu) and equal pairs (mu, mu),
    plus the fully rotation-invariant hypothesis that every complementary
    covariance vanishes. Residuals are per-entry defects relative to the
    estimated total variance, so one c/sqrt(n) threshold covers both the
    rotation tests and the vanishing-covariance test.
    """
    x = _as_rows(samples)
    n = x.shape[0]
    if n < 100:
        raise ValueError("need at least 100 samples to classify")
    cc = complementary_covariances(x, basis, center=center)
    if cc.sigma2 <= 0.0:
        raise ValueError("degenerate covariance: zero total variance")
    xc = x - x.mean(axis=0) if center else x
    gr = CovarianceR((xc.T @ xc) / n, basis)
    if float(np.linalg.norm(gr.matrix)) == 0.0:
        raise ValueError("degenerate covariance: zero sample covariance")
    tol = c / math.sqrt(n)

    h_resid = max(g.modulus() for g in cc.gammas) / cc.sigma2
    one = ONE

    def rot_residual(u, v):
        m = double_rotation(u, v).matrix
        defect = m @ gr.matrix @ m.T - gr.matrix
        return float(np.abs(defect).max() / cc.sigma2)

    tier_top = [Candidate(PropernessTag.H_PROPER, (), h_resid)]
    tier_pair = (
        [Candidate(PropernessTag.MU_MU, (i, j),
                   rot_residual(basis.axes[i], basis.axes[j]))
         for i, j in _TIER_MU_PAIRS]
        + [Candidate(PropernessTag.MU_SAME, (i,),
                     rot_residual(basis.axes[i], basis.axes[i]))
           for i in range(3)]
    )
    tier_single = (
        [Candidate(PropernessTag.MU_ONE, (i,), rot_residual(basis.axes[i], one))
         for i in range(3)]
        + [Candidate(PropernessTag.ONE_MU, (i,), rot_residual(one, basis.axes[i]))
           for i in range(3)]
    )
    fallback = Candidate(PropernessTag.GENERAL, (), 0.0)

    chosen = fallback
    for tier in (tier_top, tier_pair, tier_single):
        passing = [cand for cand in tier if cand.residual < tol]
        if passing:
            chosen = min(passing, key=lambda cand: cand.residual)
            break

    candidates = tuple(tier_top + tier_pair + tier_single + [fallback])
    return PropernessReport(candidates, chosen, tol, n, basis, cc)


def via_class_alias(report: PropernessReport) -> str:
    """Map the chosen class onto the earlier vanishing-covariance taxonomy."""
    chosen = report.chosen
    if chosen.tag is PropernessTag.H_PROPER:
        return "H-proper"
    if chosen.tag is PropernessTag.ONE_MU:
        idx = chosen.axis_indices[0]
        gamma = report.complementary.gammas[idx]
        pseudo = gamma.vector_part.modulus() / report.complementary.sigma2
        if pseudo < report.tolerance:
            return "R-proper"
        return f"C^{axis_name(report.basis.axes[idx])}-proper"
    return "outside prior taxonomy"
