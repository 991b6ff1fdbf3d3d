"""Numerical membership testing for the operator classes.

The classes of interest are defined by "for all f" inequalities:

* ``H_k``  (hadamard):          ||A||_{1->inf} <= 1 and ||A*A f||_inf >= k ||f||_inf;
* ``SH_k`` (special hadamard):  additionally A* = k A^{-1};
* ``A_{p,q}``:                  ||Af||_p ||f||_p / (||Af||_q ||f||_q) >= C_{p,q} > 0.

Universally quantified statements cannot be decided on a grid, so the
verdicts here are deliberately asymmetric: membership is either *falsified*
by a concrete witness field, or reported *consistent* on a named test
family.  Nothing is ever "proven".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .families import gaussian, make_gc, make_hermite
from .grid import GridSpec, SampledField, lp_norm
from .operators import LinearOperator, grids_compatible

__all__ = [
    "ClassReport",
    "DivergenceRow",
    "estimate_1_to_inf",
    "estimate_k",
    "special_residual",
    "classify_operator",
    "divergence_demo_identity",
    "standard_family",
    "random_bandlimited",
    "STANDARD_FAMILY_SEED",
    "CONSISTENCY_TOL",
]

STANDARD_FAMILY_SEED = 20240601
CONSISTENCY_TOL = 1e-6


# ---------------------------------------------------------------------------
# test families
# ---------------------------------------------------------------------------


def random_bandlimited(grid: GridSpec, rng: np.random.Generator, modes: int = 16) -> np.ndarray:
    """Smooth decaying pseudo-random field.

    A sum of four tensor products of low-order random trigonometric
    polynomials, damped by a Gaussian envelope so that every L^p norm is
    honest (the envelope makes the field effectively Schwartz-class on the
    window).  Everything is separable, so the construction costs O(dim N)
    per term.  The envelope width is capped at an absolute scale so the
    transform features widen (in samples) on the conjugate grid as the
    window grows.
    """
    axis = grid.axis()
    freqs = np.arange(-modes, modes + 1)
    base = 2.0 * math.pi / (2.0 * grid.extent)
    kernel = np.exp(1j * base * np.outer(freqs, axis))  # (modes, N)
    width = min(grid.extent / 8.0, 2.0)
    envelope_1d = np.exp(-((axis / width) ** 2))
    vals = np.zeros(grid.shape, dtype=np.complex128)
    for _ in range(4):
        term = None
        for _axis_index in range(grid.dim):
            c = rng.standard_normal((freqs.size, 2))
            line = ((c[:, 0] + 1j * c[:, 1]) @ kernel) * envelope_1d
            term = line if term is None else np.multiply.outer(term, line)
        vals += term
    return vals


def standard_family(grid: GridSpec, seed: int = STANDARD_FAMILY_SEED) -> list:
    """The standard 64-field test family on ``grid``.

    16 Gaussian dilations, Hermite tensors of orders 0..15 (which include
    the order-2 witness), 16 members of the two-Gaussian family, and 16
    seeded random band-limited fields.
    """
    fields = []
    for lam in np.geomspace(0.25, 4.0, 16):
        fields.append(gaussian(grid, float(lam)))
    for k in range(16):
        fields.append(make_hermite(k, grid)[1])
    for c in np.geomspace(0.25, 4.0, 16):
        fields.append(make_gc(grid.dim, float(c), grid)[1])
    rng = np.random.default_rng(seed)
    for i in range(16):
        vals = random_bandlimited(grid, rng)
        fields.append(SampledField(grid, vals, f"rand[{i}]"))
    return fields


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


def _require_fields(testset) -> list:
    fields = list(testset)
    if not fields:
        raise ValueError("test set must be nonempty")
    return fields


def _norm_1_to_inf_ratios(A: LinearOperator, fields) -> list:
    out = []
    for f in fields:
        denom = lp_norm(f, 1).value
        if denom == 0.0:
            continue
        out.append((lp_norm(A.apply(f), math.inf).value / denom, f.label))
    return out


def estimate_1_to_inf(A: LinearOperator, testset) -> float:
    """max over the test set of ||Af||_inf / ||f||_1: a lower bound on the
    true 1->inf operator norm (the grid sup is itself a lower bound)."""
    return max(r for r, _ in _norm_1_to_inf_ratios(A, _require_fields(testset)))


def _k_ratios(A: LinearOperator, fields) -> list:
    adj = A.adjoint()
    out = []
    for f in fields:
        denom = lp_norm(f, math.inf).value
        if denom == 0.0:
            continue
        ratio = lp_norm(adj.apply(A.apply(f)), math.inf).value / denom
        out.append((ratio, f.label))
    return out


def estimate_k(A: LinearOperator, testset) -> float:
    """min over the test set of ||A*A f||_inf / ||f||_inf.

    A value of (numerically) zero falsifies every H_k membership; the
    minimizing field is the witness (see :func:`classify_operator`).
    """
    ratios = _k_ratios(A, _require_fields(testset))
    return min(r for r, _ in ratios)


def special_residual(A: LinearOperator, k: float, testset) -> float:
    """sup over the test set of ||A*g - k A^{-1}g||_2 / ||g||_2."""
    if not (k > 0):
        raise ValueError(f"k must be positive, got {k}")
    adj = A.adjoint()
    inv = A.inverse()
    worst = 0.0
    for g in _require_fields(testset):
        denom = lp_norm(g, 2).value
        if denom == 0.0:
            continue
        a = adj.apply(g)
        b = inv.apply(g)
        if not grids_compatible(a.grid, b.grid):
            raise ValueError("adjoint and inverse produce incompatible grids")
        diff = SampledField(a.grid, a.values - k * b.values)
        worst = max(worst, lp_norm(diff, 2).value / denom)
    return worst


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """Outcome of the membership tests for one operator on one test family."""

    operator: str
    testset: str
    norm_1_to_inf: float
    k_estimate: float
    k_witness: str
    special_k: float | None = None
    special_residual: float | None = None
    verdicts: dict = field(default_factory=dict)
    tolerance: float = CONSISTENCY_TOL

    def to_dict(self) -> dict:
        return {
            "operator": self.operator,
            "testset": self.testset,
            "norm_1_to_inf": self.norm_1_to_inf,
            "k_estimate": self.k_estimate,
            "k_witness": self.k_witness,
            "special_k": self.special_k,
            "special_residual": self.special_residual,
            "verdicts": dict(self.verdicts),
            "tolerance": self.tolerance,
        }


def classify_operator(
    A: LinearOperator,
    testset,
    *,
    testset_name: str = "custom",
    k: float | None = None,
    tol: float = CONSISTENCY_TOL,
) -> ClassReport:
    """Run all estimators and assemble verdicts.

    ``k`` defaults to the operator's ``claimed_k``.  Verdicts are either
    ``"consistent"`` or ``"falsified(<witness>)"``; consistency is always
    relative to the named test family, never a proof.
    """
    fields = _require_fields(testset)
    sup_fields = sorted(fields, key=lambda f: f.label)
    ratios = sorted(_k_ratios(A, sup_fields))
    k_est, witness = ratios[0]
    norm_ratios = sorted(_norm_1_to_inf_ratios(A, sup_fields), reverse=True)
    norm1inf, norm_witness = norm_ratios[0]
    verdicts = {}
    if k_est <= tol:
        verdicts["hadamard"] = f"falsified({witness})"
    elif norm1inf > 1.0 + tol:
        verdicts["hadamard"] = f"falsified({norm_witness})"
    else:
        verdicts["hadamard"] = "consistent"
    k_claim = A.claimed_k if k is None else k
    resid = None
    if k_claim is not None:
        try:
            resid = special_residual(A, k_claim, sup_fields)
            verdicts["special_hadamard"] = (
                "consistent" if resid <= tol else f"falsified({witness_of_residual(A, k_claim, sup_fields)})"
            )
        except (ValueError, NotImplementedError) as exc:
            verdicts["special_hadamard"] = f"not_testable({exc})"
    return ClassReport(
        operator=A.label,
        testset=testset_name,
        norm_1_to_inf=norm1inf,
        k_estimate=k_est,
        k_witness=witness,
        special_k=k_claim,
        special_residual=resid,
        verdicts=verdicts,
        tolerance=tol,
    )


def witness_of_residual(A: LinearOperator, k: float, fields) -> str:
    """Label of the field maximizing the special-operator residual."""
    adj, inv = A.adjoint(), A.inverse()
    best, label = -1.0, ""
    for g in fields:
        denom = lp_norm(g, 2).value
        if denom == 0.0:
            continue
        a, b = adj.apply(g), inv.apply(g)
        val = lp_norm(SampledField(a.grid, a.values - k * b.values), 2).value / denom
        if val > best:
            best, label = val, g.label
    return label


# ---------------------------------------------------------------------------
# the identity-operator divergence demonstration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivergenceRow:
    points: int
    l1_estimate: float
    sup_estimate: float


def divergence_demo_identity(resolutions) -> list:
    """Why the identity is in no H_k: f(x) = x^{-1/2} on (0, 1].

    For each N the row reports the rectangle-rule ||f||_1 (which converges
    to 2) and ||I f||_inf = the largest sample, which grows like sqrt(N).
    """
    resolutions = list(resolutions)
    if any(b <= a for a, b in zip(resolutions, resolutions[1:])):
        raise ValueError("resolutions must be strictly increasing")
    rows = []
    for n_points in resolutions:
        grid = GridSpec(1, 1.0, n_points)
        x = grid.axis()
        vals = np.zeros_like(x)
        mask = (x > 0) & (x <= 1.0)
        vals[mask] = 1.0 / np.sqrt(x[mask])
        f = SampledField(grid, vals, f"inv_sqrt[{n_points}]", divergence_demo=True)
        rows.append(
            DivergenceRow(
                points=n_points,
                l1_estimate=lp_norm(f, 1).value,
                sup_estimate=lp_norm(f, math.inf).value,
            )
        )
    return rows
