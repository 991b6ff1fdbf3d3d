"""Parameter sweeps, vanishing-ratio sequence drivers, derivative-free
extremal search, and the growth/image probes.

Sequence drivers evaluate tensor-power families by factorized one-axis
quadrature: on a tensor-product grid the rectangle rule factorizes exactly
(sum over the product grid of a product integrand equals the product of
one-axis sums), so the reported n-dimensional values are bit-equal to the
full n-dimensional rule while staying tractable for narrow profiles and
high mode orders.  The transform side of the Hermite and two-Gaussian
sequences uses the families' exact transform identities (eigenrelation,
self-duality); those identities are themselves verified by quadrature in
the test suite.

Decay-rate acceptance works with fitted log-log slopes rather than
absolute constants, since prefactors are convention-laden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy import optimize

from .families import (
    gaussian,
    gc_profile_values,
    hermite_values,
    make_falpha,
    make_gc,
)
from .grid import GridSpec, SampledField
from .inequalities import (
    FunctionalSpec,
    ParameterWindowError,
    evaluate_spec,
    norm_up_bound,
)
from .operators import LinearOperator, operator_from_dict

__all__ = [
    "SweepResult",
    "SearchResult",
    "fit_loglog",
    "run_sequence",
    "sweep",
    "sweep_from_config",
    "sequence_from_config",
    "minimize_functional",
    "probe_conjecture_4_13",
    "shapiro_growth",
    "SEQUENCE_C_FLOOR",
    "SEQUENCE_K_CAP",
]

#: Drivers cap the two-Gaussian parameter and the Hermite order to keep the
#: one-axis quadrature honest: resolving both components of g_c needs
#: roughly 96/c^2 samples (spacing ~c/8 across support ~12/c), and the
#: adaptive grid is capped at 2^22 samples.
SEQUENCE_C_FLOOR = 5e-3
SEQUENCE_K_CAP = 64
_GC_POINTS_CAP = 1 << 22

_HERMITE_GRID = GridSpec(1, 20.0, 4096)


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------


def fit_loglog(xs, ys):
    """Least-squares slope of ln y against ln x, with its standard error."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 5:
        raise ValueError("slope fits need at least 5 points")
    lx, ly = np.log(xs), np.log(ys)
    vx = lx - lx.mean()
    slope = float(np.dot(vx, ly - ly.mean()) / np.dot(vx, vx))
    resid = ly - (ly.mean() + slope * vx)
    dof = xs.size - 2
    stderr = float(np.sqrt(np.dot(resid, resid) / dof / np.dot(vx, vx)))
    return slope, stderr


def _monotonicity(values) -> str:
    diffs = np.diff(values)
    if (diffs > 0).all():
        return "increasing"
    if (diffs < 0).all():
        return "decreasing"
    return "none"


@dataclass(frozen=True)
class SweepResult:
    """One functional evaluated along a strictly increasing parameter grid."""

    parameter: str
    grid: tuple
    values: tuple
    slope: float | None
    slope_stderr: float | None
    monotonic: str
    config: dict = dataclass_field(default_factory=dict)
    meta: dict = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        g = np.asarray(self.grid, dtype=float)
        if g.size >= 2 and not (np.diff(g) > 0).all():
            raise ValueError("parameter grid must be strictly increasing")

    def to_dict(self) -> dict:
        return {
            "parameter": self.parameter,
            "grid": list(self.grid),
            "values": list(self.values),
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "monotonic": self.monotonic,
            "config": dict(self.config),
            "meta": dict(self.meta),
        }


def _sweep_result(parameter, xs, ys, config, meta=None) -> SweepResult:
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    slope = stderr = None
    if len(xs) >= 5 and all(x > 0 for x in xs) and all(y > 0 for y in ys):
        slope, stderr = fit_loglog(xs, ys)
    return SweepResult(
        parameter=parameter,
        grid=tuple(xs),
        values=tuple(ys),
        slope=slope,
        slope_stderr=stderr,
        monotonic=_monotonicity(ys),
        config=config,
        meta=meta or {},
    )


@dataclass(frozen=True)
class SearchResult:
    """Best point found by the derivative-free search (never a global claim)."""

    best_params: dict
    best_value: float
    trace: tuple
    converged: bool
    evaluations: int

    def __post_init__(self) -> None:
        if self.trace and self.best_value > min(self.trace) + 1e-15:
            raise ValueError("best value exceeds a trace value")

    def to_dict(self) -> dict:
        return {
            "best_params": dict(self.best_params),
            "best_value": self.best_value,
            "trace": list(self.trace),
            "converged": self.converged,
            "evaluations": self.evaluations,
        }


# ---------------------------------------------------------------------------
# factorized one-axis statistics for tensor families
# ---------------------------------------------------------------------------


def _axis_stats(vals: np.ndarray, h: float, q: float) -> dict:
    """One-axis rectangle-rule statistics for a profile sampled at spacing h."""
    from uncertkit.grid import _powered_sum_norm

    mod = np.abs(vals)
    out = {
        "l1": float(mod.sum()) * h,
        "l2_sq": float((mod**2).sum()) * h,
        "sup": float(mod.max()),
    }
    out["lq"] = out["sup"] if q == math.inf else _powered_sum_norm(mod, q, h)
    return out


def _hermite_axis(k: int, q: float) -> dict:
    vals = hermite_values(k, _HERMITE_GRID.axis())
    h = _HERMITE_GRID.spacing
    stats = _axis_stats(vals, h, q)
    x = _HERMITE_GRID.axis()
    stats["var"] = float((x * x * vals * vals).sum()) * h
    return stats


def _gc_grid(c: float, q: float) -> GridSpec:
    """Adaptive one-axis grid resolving both Gaussian components of g_c.

    The narrow component raised to the q-th power needs spacing below
    ~c/(2.3 sqrt(q)) to be alias-free, and the wide one support out to
    ~6/c.  Below SEQUENCE_C_FLOOR the required sample count exceeds the
    cap and the quadrature would silently degrade, hence the floor.
    """
    if not (SEQUENCE_C_FLOOR <= c <= 1.0 / SEQUENCE_C_FLOOR):
        raise ParameterWindowError(
            [f"gc parameter must lie in [{SEQUENCE_C_FLOOR:g}, {1 / SEQUENCE_C_FLOOR:g}], got {c:g}"]
        )
    scale = min(c, 1.0 / c)
    extent = max(12.0, 6.0 / scale)
    divisor = 8.0 if q == math.inf else max(8.0, 2.3 * math.sqrt(q))
    target_h = min(0.01, scale / divisor)
    points = 1 << max(8, math.ceil(math.log2(2.0 * extent / target_h)))
    points = min(points, _GC_POINTS_CAP)
    return GridSpec(1, extent, points)


def _gc_axis(c: float, q: float) -> dict:
    grid = _gc_grid(c, q)
    vals = gc_profile_values(c, grid.axis())
    stats = _axis_stats(vals, grid.spacing, q)
    x = grid.axis()
    stats["var"] = float((x * x * vals * vals).sum()) * grid.spacing
    return stats


def _tensor_variance(stats: dict, n: int) -> float:
    return n * stats["var"] * stats["l2_sq"] ** (n - 1)


def hermite_ratio_nd(k: int, n: int, q: float) -> float:
    """The variance-product ratio for the order-(k,..,k) Hermite tensor.

    Transform side via the exact eigenrelation of the e^{-2 i pi x.xi}
    kernel: the transform of the tensor is (2 pi)^(n/2) times the tensor
    rescaled by 2 pi, so V picks up (2 pi)^-2 and the q-norm
    (2 pi)^(n/2 - n/q).
    """
    st = _hermite_axis(k, q)
    v_n = _tensor_variance(st, n)
    lq_n = st["lq"] ** n
    inv_q = 0.0 if q == math.inf else 1.0 / q
    return v_n**2 / ((2.0 * math.pi) ** (2.0 + n - 2.0 * n * inv_q) * lq_n**4)


def gc_ratio_nd(c: float, n: int, q: float) -> float:
    """The variance-product ratio for the two-Gaussian tensor (self-dual)."""
    st = _gc_axis(c, q)
    v_n = _tensor_variance(st, n)
    return (v_n / st["lq"] ** (2 * n)) ** 2


def gc_G_value(c: float, n: int, beta: float, q: float) -> float:
    """(V/||g||_q^2)^beta ||g||_q / ||g||_1 for the two-Gaussian tensor."""
    st = _gc_axis(c, q)
    v_n = _tensor_variance(st, n)
    lq_n = st["lq"] ** n
    return (v_n / lq_n**2) ** beta * lq_n / st["l1"] ** n


# ---------------------------------------------------------------------------
# sequence drivers
# ---------------------------------------------------------------------------


def _default_k_grid(k_max: int = SEQUENCE_K_CAP):
    ks = [4, 6, 8, 12, 16, 24, 32, 48, 64]
    return [k for k in ks if k <= k_max]


def _default_c_grid(lo: float = 1e-2, hi: float = 1.0, count: int = 9):
    lo = max(lo, SEQUENCE_C_FLOOR)
    return list(np.geomspace(lo, hi, count))


def run_sequence(prop: str, *, n: int, q: float | None = None, indices=None, beta: float | None = None) -> SweepResult:
    """Drive one of the vanishing-ratio sequences and fit its decay slope.

    prop = "three_hermite": Hermite tensors, n >= 3 and 1 <= q < 2n/(n+2);
    prop = "three_gc":      two-Gaussian tensors, n >= 3 and q > 2n/(n-2);
    prop = "one":           the critical-exponent sup-norm functional,
                            two-Gaussian route for n >= 3, annulus route for n = 2;
    prop = "two":           the q-norm functional, two-Gaussian route for
                            n > 2 with q > 2, annulus route for n = 2.
    """
    if prop == "three_hermite":
        if n < 3:
            raise ParameterWindowError([f"three_hermite needs n >= 3, got {n}"])
        hi = 2.0 * n / (n + 2.0)
        if q is None or not (1.0 <= q < hi):
            raise ParameterWindowError([f"q must lie in [1, 2n/(n+2)) = [1, {hi:g}), got {q}"])
        ks = [int(k) for k in (indices if indices is not None else _default_k_grid())]
        if max(ks) > SEQUENCE_K_CAP:
            raise ParameterWindowError([f"hermite order capped at {SEQUENCE_K_CAP}"])
        vals = [hermite_ratio_nd(k, n, q) for k in ks]
        expected = 2.0 * (1.0 - n * (1.0 / q - 0.5))
        cfg = {"prop": prop, "n": n, "q": q, "indices": ks}
        return _sweep_result("k", ks, vals, cfg, {"expected_slope": expected})

    if prop == "three_gc":
        if n < 3:
            raise ParameterWindowError([f"three_gc needs n >= 3, got {n}"])
        lo = 2.0 * n / (n - 2.0)
        if q is None or not (q > lo):
            raise ParameterWindowError([f"q must exceed 2n/(n-2) = {lo:g}, got {q}"])
        cs = [float(c) for c in (indices if indices is not None else _default_c_grid())]
        if min(cs) < SEQUENCE_C_FLOOR:
            raise ParameterWindowError([f"c capped below at {SEQUENCE_C_FLOOR}"])
        vals = [gc_ratio_nd(c, n, q) for c in cs]
        inv_q = 0.0 if q == math.inf else 1.0 / q
        expected = 2.0 * (n * (1.0 - 2.0 * inv_q) - 2.0)
        cfg = {"prop": prop, "n": n, "q": "inf" if q == math.inf else q, "indices": cs}
        return _sweep_result("c", cs, vals, cfg, {"expected_slope": expected})

    if prop == "one":
        if n < 2:
            raise ParameterWindowError([f"prop one concerns n >= 2, got {n}"])
        b = beta if beta is not None else n / (n + 2.0)
        if n == 2:
            alphas = [float(a) for a in (indices if indices is not None else [0.25, 0.5, 1.0])]
            vals, closed = _falpha_G_values(alphas)
            cfg = {"prop": prop, "n": n, "beta": b, "indices": alphas}
            return _sweep_result("alpha", alphas, vals, cfg, {"closed_forms": closed, "expected_slope": 0.5})
        cs = [float(c) for c in (indices if indices is not None else _default_c_grid())]
        vals = [gc_G_value(c, n, b, math.inf) for c in cs]
        expected = n * (n - 2.0) / (n + 2.0)
        cfg = {"prop": prop, "n": n, "beta": b, "indices": cs}
        return _sweep_result("c", cs, vals, cfg, {"expected_slope": expected})

    if prop == "two":
        if n == 2:
            alphas = [float(a) for a in (indices if indices is not None else [0.25, 0.5, 1.0])]
            vals, closed = _falpha_G_values(alphas)
            cfg = {"prop": prop, "n": n, "q": q, "indices": alphas}
            return _sweep_result("alpha", alphas, vals, cfg, {"closed_forms": closed, "expected_slope": 0.5})
        if n < 2 or q is None or not (q > 2.0):
            raise ParameterWindowError(
                [f"prop two driver supports n = 2 (annulus route) or n > 2 with q > 2, got n={n}, q={q}"]
            )
        b = beta if beta is not None else n * (q - 1.0) / ((n + 2.0) * q - 2.0 * n)
        cs = [float(c) for c in (indices if indices is not None else _default_c_grid())]
        vals = [gc_G_value(c, n, b, q) for c in cs]
        expected = (q - 2.0) * n * (n - 2.0) / ((n + 2.0) * q - 2.0 * n)
        cfg = {"prop": prop, "n": n, "q": q, "beta": b, "indices": cs}
        return _sweep_result("c", cs, vals, cfg, {"expected_slope": expected})

    raise ParameterWindowError([f"unknown sequence driver {prop!r}"])


def _falpha_G_values(alphas, points: int = 1024):
    """Full 2-D quadrature of the critical sup-norm functional on the annulus
    family, with a per-alpha grid sized to the outer support radius."""
    from .inequalities import functional_G

    values, closed = [], []
    for alpha in alphas:
        r_out = (3.0 * math.pi) ** (1.0 / alpha)
        grid = GridSpec(2, 1.05 * r_out, points)
        handle, f = make_falpha(alpha, grid)
        values.append(functional_G(f, 0.5, math.inf))
        closed.append(handle.oracle("g_half_sup"))
    return values, closed


# ---------------------------------------------------------------------------
# generic sweep and derivative-free search
# ---------------------------------------------------------------------------

_FAMILY_PARAMS = {"gaussian": "lam", "gc": "c", "falpha": "alpha", "hermite": "k"}


def _build_family_member(family: str, value: float, grid: GridSpec) -> SampledField:
    if family == "gaussian":
        return gaussian(grid, float(value))
    if family == "gc":
        return make_gc(grid.dim, float(value), grid)[1]
    if family == "falpha":
        return make_falpha(float(value), grid)[1]
    if family == "hermite":
        from .families import make_hermite

        return make_hermite(int(round(value)), grid)[1]
    raise ValueError(f"unknown sweep family {family!r}")


def sweep(
    spec: FunctionalSpec,
    family: str,
    values,
    grid: GridSpec,
    A: LinearOperator | None = None,
    seed: int = 0,
) -> SweepResult:
    """Evaluate one functional spec across a family parameter grid.

    The per-point reports are condensed into a SweepResult; the minimum
    ratio across the sweep is reported as the empirical constant candidate.
    """
    values = [float(v) for v in values]
    ratios = []
    for v in values:
        f = _build_family_member(family, v, grid)
        report = evaluate_spec(spec, f, A)
        ratios.append(report.ratio)
    cfg = {
        "spec": spec.to_dict(),
        "family": family,
        "parameter": _FAMILY_PARAMS[family],
        "values": values,
        "grid": [grid.dim, grid.points, grid.extent],
        "operator": A.to_dict() if A is not None else None,
        "seed": seed,
    }
    meta = {"min_ratio": min(ratios), "max_ratio": max(ratios)}
    return _sweep_result(_FAMILY_PARAMS[family], values, ratios, cfg, meta)


def sweep_from_config(config: dict) -> SweepResult:
    """Re-run a sweep from the config echoed in a SweepResult (bit-identical)."""
    spec = FunctionalSpec.from_dict(config["spec"])
    dim, points, extent = config["grid"]
    grid = GridSpec(int(dim), float(extent), int(points))
    A = operator_from_dict(config["operator"]) if config.get("operator") else None
    return sweep(spec, config["family"], config["values"], grid, A, seed=config.get("seed", 0))


def sequence_from_config(config: dict) -> SweepResult:
    """Re-run a sequence driver from the config echoed in its SweepResult."""
    q = config.get("q")
    if q == "inf":
        q = math.inf
    return run_sequence(
        config["prop"],
        n=config["n"],
        q=q,
        indices=config.get("indices"),
        beta=config.get("beta"),
    )


def minimize_functional(
    spec: FunctionalSpec,
    family: str,
    grid: GridSpec,
    A: LinearOperator | None = None,
    *,
    x0: dict | None = None,
    budget: int = 200,
    seed: int = 0,
    restarts: int = 2,
) -> SearchResult:
    """Derivative-free minimization of a functional over a continuous family.

    Nelder-Mead in log-parameter space (families here have positive
    parameters), with seeded jittered restarts on stagnation.  The best
    value is the minimum of the full evaluation trace by construction, and
    no global-optimality claim is ever attached.
    """
    if budget < 50:
        raise ValueError("optimizer budget must be at least 50 evaluations")
    pname = _FAMILY_PARAMS[family]
    if pname == "k":
        raise ValueError("minimize needs a continuous family parameter")
    start = math.log(x0[pname]) if x0 else 0.0
    trace, points = [], []

    def objective(z):
        value = math.exp(float(z[0]))
        f = _build_family_member(family, value, grid)
        r = evaluate_spec(spec, f, A).ratio
        trace.append(r)
        points.append(float(z[0]))
        return r

    rng = np.random.default_rng(seed)
    converged = False
    z_init = start
    for _attempt in range(restarts + 1):
        remaining = budget - len(trace)
        if remaining < 10:
            break
        res = optimize.minimize(
            objective,
            x0=[z_init],
            method="Nelder-Mead",
            options={"maxfev": remaining, "xatol": 1e-8, "fatol": 1e-12},
        )
        converged = converged or bool(res.success)
        # jittered restart from the incumbent against stagnation
        best_so_far = points[int(np.argmin(trace))]
        z_init = best_so_far + 0.5 * rng.standard_normal()
    ibest = int(np.argmin(trace))
    return SearchResult(
        best_params={pname: math.exp(points[ibest])},
        best_value=float(trace[ibest]),
        trace=tuple(trace),
        converged=converged,
        evaluations=len(trace),
    )


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------


def probe_conjecture_4_13(p: float, *, c_grid=None, k_max: int = SEQUENCE_K_CAP) -> SweepResult:
    """Probe the attained values of the one-dimensional F_{p,2} functional.

    Sweeps the two-Gaussian family (self-dual, values blow up as c -> 0+)
    and the Hermite orders k <= k_max (values -> 0 for p > 2); the meta
    block carries the attained interval and, for 1 < p < 2, the closed-form
    lower bound that obstructs reaching zero.
    """
    if p == 2:
        raise ParameterWindowError(["p = 2 makes the functional identically 1"])
    if not (p > 1):
        raise ParameterWindowError([f"p must lie in (1, inf], got {p}"])
    cs = [float(c) for c in (c_grid if c_grid is not None else _default_c_grid(5e-3, 1.0, 13))]
    gc_vals = []
    for c in cs:
        st = _gc_axis(c, p)
        gc_vals.append(st["lq"] ** 2 / st["l2_sq"])  # self-dual family
    ks = [k for k in _default_k_grid(k_max) if k >= 1]
    inv_p = 0.0 if p == math.inf else 1.0 / p
    hermite_vals = []
    for k in ks:
        st = _hermite_axis(k, p)
        hermite_vals.append((2.0 * math.pi) ** (0.5 - inv_p) * st["lq"] ** 2 / st["l2_sq"])
    attained = gc_vals + hermite_vals
    meta = {
        "hermite_orders": ks,
        "hermite_values": hermite_vals,
        "attained_interval": [min(attained), max(attained)],
    }
    if 1.0 < p < 2.0:
        meta["lower_bound"] = norm_up_bound(p, 2.0, 1)
    cfg = {"p": "inf" if p == math.inf else p, "c_grid": cs, "k_max": k_max}
    return _sweep_result("c", cs, gc_vals, cfg, meta)


def shapiro_growth(q: float, K: int = SEQUENCE_K_CAP) -> SweepResult:
    """Growth of ||h_k||_q ||transform h_k||_q along the Hermite sequence.

    Defined for q in [1, 2), where the product is expected to grow like
    k^(1/q - 1/2); the fitted slope and the predicted exponent are both
    reported.
    """
    if not (1.0 <= q < 2.0):
        raise ParameterWindowError([f"q must lie in [1, 2), got {q}"])
    if K > SEQUENCE_K_CAP:
        raise ParameterWindowError([f"hermite order capped at {SEQUENCE_K_CAP}"])
    ks = [k for k in _default_k_grid(K) if k >= 8]
    vals = []
    for k in ks:
        st = _hermite_axis(k, q)
        vals.append((2.0 * math.pi) ** (0.5 - 1.0 / q) * st["lq"] ** 2)
    cfg = {"q": q, "K": K}
    meta = {"expected_slope": 1.0 / q - 0.5}
    return _sweep_result("k", ks, vals, cfg, meta)
