"""Explicit function families with closed-form oracle values.

Three families recur in every experiment here:

* normalized Hermite functions ``h_k`` and their tensor products, built by
  the stable three-term recurrence;
* the two-Gaussian family ``g_c(x) = c**-0.5 * exp(-pi x^2 / c^2)
  + c**0.5 * exp(-pi c^2 x^2)`` (self-dual under the e^{-2 i pi x xi}
  transform) and its tensor powers;
* the planar oscillatory annulus function
  ``f_alpha(x) = |x|**(alpha-2) * sin(|x|**alpha)`` supported on
  (2 pi)**(1/alpha) <= |x| <= (3 pi)**(1/alpha).

Each generator returns the sampled field together with a
:class:`FamilyHandle` carrying closed-form values (norms, variance, ...)
that serve as independent oracles for the quadrature pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import GridSpec, SampledField

__all__ = [
    "FamilyHandle",
    "ClosedForm",
    "gaussian",
    "hermite_values",
    "make_hermite",
    "hermite_norm_asymptotics",
    "make_gc",
    "gc_profile_values",
    "gc_lq_bounds",
    "make_falpha",
    "parse_family",
    "HERMITE_MAX_INDEX",
]

#: Largest Hermite index exposed by the public constructors.
HERMITE_MAX_INDEX = 64


@dataclass(frozen=True)
class ClosedForm:
    """A named oracle value together with the formula it came from."""

    value: float
    formula: str


@dataclass(frozen=True)
class FamilyHandle:
    """Descriptor of a parametric family member plus its closed-form oracles."""

    family: str
    params: dict
    closed_forms: dict = field(default_factory=dict)

    def oracle(self, name: str) -> float:
        return self.closed_forms[name].value


def gaussian(grid: GridSpec, lam: float = 1.0) -> SampledField:
    """The standard Gaussian exp(-pi |lam x|^2) sampled on ``grid``."""
    from .grid import _radius_sq

    vals = np.exp(-math.pi * lam * lam * _radius_sq(grid))
    return SampledField(grid, vals, f"gauss[lam={lam:g}]")


# ---------------------------------------------------------------------------
# Hermite functions
# ---------------------------------------------------------------------------


def hermite_values(k: int, x: np.ndarray) -> np.ndarray:
    """Normalized Hermite function h_k on the points ``x``.

    Uses the normalized three-term recurrence

        h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1},

    which keeps every intermediate at unit L^2 scale, so the evaluation is
    stable far beyond the overflow point of the raw polynomial recurrence.
    """
    if k < 0:
        raise ValueError("hermite index must be >= 0")
    x = np.asarray(x, dtype=float)
    h_prev = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if k == 0:
        return h_prev
    h_cur = math.sqrt(2.0) * x * h_prev
    for j in range(1, k):
        h_next = math.sqrt(2.0 / (j + 1)) * x * h_cur - math.sqrt(j / (j + 1)) * h_prev
        h_prev, h_cur = h_cur, h_next
    return h_cur


def _as_multi_index(alpha, dim: int) -> tuple:
    if isinstance(alpha, (int, np.integer)):
        alpha = (int(alpha),) * dim
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != dim:
        raise ValueError(f"multi-index length {len(alpha)} does not match dim {dim}")
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index components must be >= 0")
    return alpha


def make_hermite(alpha, grid: GridSpec):
    """Hermite tensor h_alpha on ``grid``; returns (handle, field).

    ``alpha`` is a multi-index (an int is broadcast to every axis).
    Components are capped at HERMITE_MAX_INDEX.
    """
    alpha = _as_multi_index(alpha, grid.dim)
    if max(alpha) > HERMITE_MAX_INDEX:
        raise ValueError(
            f"hermite index {max(alpha)} exceeds the supported bound {HERMITE_MAX_INDEX}"
        )
    axis = grid.axis()
    vals = hermite_values(alpha[0], axis)
    for a in alpha[1:]:
        vals = np.multiply.outer(vals, hermite_values(a, axis))
    order = sum(alpha)
    handle = FamilyHandle(
        "hermite",
        {"alpha": alpha, "dim": grid.dim},
        {
            "l2_norm": ClosedForm(1.0, "||h_alpha||_2 = 1"),
            "variance": ClosedForm(order + grid.dim / 2.0, "V(h_alpha) = |alpha| + n/2"),
            "fourier_eigenvalue_power": ClosedForm(
                float(order % 4), "unitary-convention eigenvalue (-i)**|alpha|"
            ),
        },
    )
    label = "hermite[" + ",".join(str(a) for a in alpha) + "]"
    return handle, SampledField(grid, vals, label)


def hermite_norm_asymptotics(k: int, q: float) -> float:
    """Predicted large-k scaling exponent of ||h_k||_q.

    Three regimes: 1/(2q) - 1/4 for q < 4; -1/8 for q = 4 (where an extra
    logarithmic factor is present, so the pure power law is only approximate);
    -1/(6q) - 1/12 for q > 4.  The exponent does not depend on k; the index is
    accepted so callers can tabulate predictions per k and is validated only.
    """
    if k < 1:
        raise ValueError("asymptotics apply for k >= 1")
    q = float(q)
    if q < 1:
        raise ValueError(f"q must lie in [1, inf], got {q}")
    if q == math.inf or q > 4:
        return -1.0 / (6.0 * q) - 1.0 / 12.0 if q != math.inf else -1.0 / 12.0
    if q == 4:
        return -0.125
    return 1.0 / (2.0 * q) - 0.25


# ---------------------------------------------------------------------------
# two-Gaussian family g_c
# ---------------------------------------------------------------------------


def gc_profile_values(c: float, x: np.ndarray) -> np.ndarray:
    """One-dimensional profile of the two-Gaussian family at parameter c."""
    if not (c > 0):
        raise ValueError(f"gc parameter c must be positive, got {c}")
    x = np.asarray(x, dtype=float)
    return np.exp(-math.pi * x * x / (c * c)) / math.sqrt(c) + math.sqrt(c) * np.exp(
        -math.pi * c * c * x * x
    )


def _gc_l2sq_1d(c: float) -> float:
    return math.sqrt(2.0) + 2.0 * c / math.sqrt(c**4 + 1.0)


def _gc_variance_1d(c: float) -> float:
    return (
        (c**4 + 1.0) / (c * c) / (4.0 * math.sqrt(2.0)) + c**3 / (c**4 + 1.0) ** 1.5
    ) / math.pi


def gc_lq_bounds(c: float, q: float, n: int) -> tuple:
    """Two-sided closed-form bracket for ||g_c^(n)||_q, 1 < q < inf, q != 2."""
    base = (c ** (1.0 / q - 0.5) + c ** (0.5 - 1.0 / q)) / q ** (1.0 / (2.0 * q))
    return ((base / 2.0) ** n, base**n)


def make_gc(n: int, c: float, grid: GridSpec):
    """Tensor power g_c^(n) on ``grid``; returns (handle, field).

    The closed forms shipped with the handle: L^1 and sup norms
    (sqrt(c) + 1/sqrt(c))^n, the squared L^2 norm, the variance, and
    self-duality under the e^{-2 i pi x.xi} Fourier transform.
    """
    if grid.dim != n:
        raise ValueError(f"grid dim {grid.dim} does not match requested n={n}")
    if not (c > 0):
        raise ValueError(f"gc parameter c must be positive, got {c}")
    axis = grid.axis()
    prof = gc_profile_values(c, axis)
    vals = prof
    for _ in range(n - 1):
        vals = np.multiply.outer(vals, prof)
    l1 = (math.sqrt(c) + 1.0 / math.sqrt(c)) ** n
    l2sq = _gc_l2sq_1d(c) ** n
    var = n * _gc_l2sq_1d(c) ** (n - 1) * _gc_variance_1d(c)
    handle = FamilyHandle(
        "gc",
        {"n": n, "c": c},
        {
            "l1_norm": ClosedForm(l1, "(sqrt(c) + 1/sqrt(c))**n"),
            "sup_norm": ClosedForm(l1, "equals the L^1 norm for this family"),
            "l2_norm_sq": ClosedForm(l2sq, "(sqrt(2) + 2c/sqrt(c^4+1))**n"),
            "variance": ClosedForm(
                var,
                "(n/pi) (sqrt(2)+2c/sqrt(c^4+1))**(n-1) "
                "[ (c^4+1)/(4 sqrt(2) c^2) + c^3/(c^4+1)^(3/2) ]",
            ),
            "fourier_fixed_point": ClosedForm(1.0, "transform maps g_c to itself"),
        },
    )
    return handle, SampledField(grid, vals, f"gc[c={c:g}]")


# ---------------------------------------------------------------------------
# planar annulus family f_alpha
# ---------------------------------------------------------------------------


def make_falpha(alpha: float, grid: GridSpec):
    """Oscillatory annulus function f_alpha on a 2-D grid; returns (handle, field).

    Requires ``grid.extent`` at least the outer support radius (3 pi)**(1/alpha).
    The polar closed forms ||f||_1 = 4 pi / alpha and V = 5 pi^3 / (2 alpha)
    are attached as oracles; the field itself is sampled on the Cartesian grid
    so it flows through the same pipeline as everything else.
    """
    if grid.dim != 2:
        raise ValueError("f_alpha is a two-dimensional family; need a dim-2 grid")
    if not (alpha > 0):
        raise ValueError(f"alpha must be positive, got {alpha}")
    r_in = (2.0 * math.pi) ** (1.0 / alpha)
    r_out = (3.0 * math.pi) ** (1.0 / alpha)
    if grid.extent < r_out:
        raise ValueError(
            f"grid extent {grid.extent:g} too small: the support needs |x| <= {r_out:g}"
        )
    from .grid import _radius_sq

    r = np.sqrt(_radius_sq(grid))
    vals = np.zeros(grid.shape)
    mask = (r >= r_in) & (r <= r_out)
    rm = r[mask]
    vals[mask] = rm ** (alpha - 2.0) * np.sin(rm**alpha)
    handle = FamilyHandle(
        "falpha",
        {"alpha": alpha, "r_in": r_in, "r_out": r_out},
        {
            "l1_norm": ClosedForm(4.0 * math.pi / alpha, "4 pi / alpha"),
            "variance": ClosedForm(2.5 * math.pi**3 / alpha, "5 pi^3 / (2 alpha)"),
            "g_half_sup": ClosedForm(
                math.sqrt(5.0 * math.pi * alpha / 32.0),
                "sqrt(V)/||f||_1 = sqrt(5 pi alpha / 32)",
            ),
        },
    )
    return handle, SampledField(grid, vals, f"falpha[alpha={alpha:g}]")


# ---------------------------------------------------------------------------
# CLI family descriptors, e.g. "hermite:k=5", "gc:c=0.25,n=2", "falpha:alpha=0.5"
# ---------------------------------------------------------------------------


def parse_family(descriptor: str, grid: GridSpec):
    """Build a family member from a CLI descriptor string."""
    name, _, rest = descriptor.partition(":")
    kv = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise ValueError(f"malformed family parameter {item!r}")
            kv[key.strip()] = val.strip()
    name = name.strip().lower()
    if name == "hermite":
        k = int(kv.pop("k", 0))
        _check_no_extras(name, kv)
        return make_hermite(k, grid)
    if name == "gc":
        c = float(kv.pop("c", 1.0))
        n = int(kv.pop("n", grid.dim))
        _check_no_extras(name, kv)
        return make_gc(n, c, grid)
    if name == "falpha":
        alpha = float(kv.pop("alpha", 1.0))
        _check_no_extras(name, kv)
        return make_falpha(alpha, grid)
    if name in ("gauss", "gaussian"):
        lam = float(kv.pop("lam", 1.0))
        _check_no_extras(name, kv)
        f = gaussian(grid, lam)
        handle = FamilyHandle("gaussian", {"lam": lam})
        return handle, f
    raise ValueError(f"unknown family {name!r}")


def _check_no_extras(name: str, kv: dict) -> None:
    if kv:
        raise ValueError(f"unknown parameters for family {name!r}: {sorted(kv)}")
