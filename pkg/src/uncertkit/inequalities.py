"""Evaluators for the uncertainty-principle functionals and inequalities.

Every evaluator returns a :class:`VerificationReport` with the computed
left side, right side, their ratio and any concrete bound constant that a
closed form supplies.  Where only an unspecified implied constant exists,
the report carries ratio-only semantics and ``passed`` stays ``None``:
constants are never invented.

Parameter windows are validated before any quadrature runs; a violation
raises :class:`ParameterWindowError` whose message names each violated
constraint individually.

Exponent conventions: the Hoelder dual p' = p/(p-1) is computed
symbolically (1 -> inf, 2 -> 2), never by floating division at the
endpoints, and infinite exponents are routed through the grid maximum
(a lower bound on the essential sup, and annotated as such in reports).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import SampledField, entropy, lp_norm, variance, weighted_norm
from .operators import (
    FourierTransform,
    FractionalALaplacian,
    LinearOperator,
)

__all__ = [
    "ParameterWindowError",
    "FunctionalSpec",
    "VerificationReport",
    "REPORT_SCHEMA_VERSION",
    "holder_dual",
    "babenko_beckner",
    "norm_up_bound",
    "hausdorff_young_bound",
    "entropic_bound",
    "heisenberg_window",
    "functional_F",
    "functional_G",
    "check_generalized_up",
    "check_embedding",
    "sobolev_rhs_general",
    "sobolev_rhs_simple",
    "check_fractional_laplacian",
    "check_weighted_up",
    "check_heisenberg_nd",
    "entropic_gap",
    "check_hausdorff_young",
    "evaluate_spec",
    "VARIANTS",
]

REPORT_SCHEMA_VERSION = 1

VARIANTS = (
    "F_pq",
    "G_beta_q",
    "generalized_up",
    "embedding",
    "sobolev_general",
    "sobolev_simple",
    "fractional_laplacian",
    "weighted_up_infty",
    "weighted_up_hadamard",
    "weighted_up_special_sym",
    "weighted_up_special_gen",
    "heisenberg_nd",
    "entropic",
    "hausdorff_young",
)

BALANCE_TOL = 1e-12
ALPHA_DEGENERACY_GUARD = 1e-3


class ParameterWindowError(ValueError):
    """A parameter combination outside an inequality's validity window."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _reject(violations) -> None:
    if violations:
        raise ParameterWindowError(violations)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def holder_dual(p: float) -> float:
    """p' = p/(p-1) with the endpoints handled symbolically."""
    if p == 1:
        return math.inf
    if p == 2:
        return 2.0
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def babenko_beckner(p: float) -> float:
    """Sharp per-dimension forward transform constant sqrt(p^(1/p) / p'^(1/p'))."""
    if not (1 <= p <= 2):
        raise ParameterWindowError([f"p must lie in [1, 2], got {p}"])
    if p == 1:
        return 1.0
    q = holder_dual(p)
    return math.sqrt(p ** (1.0 / p) / q ** (1.0 / q))


def hausdorff_young_bound(p: float, n: int, convention: str = "two_pi") -> float:
    """Sharp constant in ||Af||_p' <= B ||f||_p for the transform kinds.

    two_pi convention: B = C_p^n with C_p the sharp per-dimension constant.
    unitary convention: B = (2 pi)^(n (1/p' - 1/2)) C_p^n.
    """
    base = babenko_beckner(p) ** n
    if convention == "two_pi":
        return base
    pp = holder_dual(p)
    expo = n * ((0.0 if pp == math.inf else 1.0 / pp) - 0.5)
    return (2.0 * math.pi) ** expo * base


def norm_up_bound(p: float, q: float, n: int, convention: str = "two_pi") -> float:
    """Closed-form lower bound for F_{p,q} when A is the Fourier transform.

    two_pi convention: (1/C_p)^(n (1/p - 1/q) / (1/p - 1/2)); for the
    unitary convention an extra factor (2 pi)^(n (1/p - 1/q)) appears.
    p = 2 forces q = 2 and the bound degenerates to 1.
    """
    if p == 2:
        return 1.0
    inv_q = 0.0 if q == math.inf else 1.0 / q
    expo = (1.0 / p - inv_q) / (1.0 / p - 0.5)
    bound = (1.0 / babenko_beckner(p)) ** (n * expo)
    if convention == "unitary":
        bound *= (2.0 * math.pi) ** (n * (1.0 / p - inv_q))
    return bound


def entropic_bound(n: int, convention: str) -> float:
    """Gaussian-saturated entropy-sum bound for the transform kinds.

    n (1 - ln 2) in the two_pi convention, n (1 + ln pi) in the unitary one
    (both from the analytic entropy of the saturating Gaussian density).
    """
    if convention == "two_pi":
        return n * (1.0 - math.log(2.0))
    return n * (1.0 + math.log(math.pi))


def heisenberg_window(n: int) -> tuple:
    """(q_low, q_high, inclusive) window of the dimension-n variance bound."""
    if n == 1:
        return (1.0, math.inf, True)
    if n == 2:
        return (1.0, math.inf, False)
    return (2.0 * n / (n + 2.0), 2.0 * n / (n - 2.0), False)


# ---------------------------------------------------------------------------
# specs and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalSpec:
    """Parameter record selecting one functional/inequality variant.

    Only the fields a variant consumes need to be set; ``validate`` checks
    the variant's window and returns the list of violated constraints.
    """

    variant: str
    p: float | None = None
    q: float | None = None
    r: float | None = None
    s: float | None = None
    t: float | None = None
    u: float | None = None
    theta: float | None = None
    phi: float | None = None
    alpha: float | None = None
    beta: float | None = None
    s_frac: float | None = None
    beta_exp: float | None = None
    dim: int = 1

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ParameterWindowError([f"unknown variant {self.variant!r}"])

    def to_dict(self) -> dict:
        out = {"variant": self.variant, "dim": self.dim}
        for name in ("p", "q", "r", "s", "t", "u", "theta", "phi", "alpha", "beta", "s_frac", "beta_exp"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "FunctionalSpec":
        kw = dict(data)
        for key, val in kw.items():
            if val == "inf":
                kw[key] = math.inf
        return cls(**kw)

    def validate(self) -> list:
        checker = _VALIDATORS.get(self.variant)
        return checker(self) if checker else []


@dataclass(frozen=True)
class VerificationReport:
    """lhs/rhs evaluation of one inequality instance.

    ``passed`` is defined only when a concrete ``bound_constant`` exists;
    otherwise the ratio is the whole story.
    """

    spec: dict
    lhs: float
    rhs: float
    ratio: float
    bound_constant: float | None = None
    passed: bool | None = None
    notes: tuple = ()
    schema_version: int = REPORT_SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "spec": dict(self.spec),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "bound_constant": self.bound_constant,
            "passed": self.passed,
            "notes": list(self.notes),
        }


def _make_report(spec_dict, lhs, rhs, bound=None, passed=None, notes=()):
    if rhs == 0.0:
        ratio = math.inf
        notes = tuple(notes) + ("rhs is zero; ratio flagged as inf",)
    else:
        ratio = lhs / rhs
    return VerificationReport(
        spec=spec_dict,
        lhs=float(lhs),
        rhs=float(rhs),
        ratio=float(ratio),
        bound_constant=bound,
        passed=passed,
        notes=tuple(notes),
    )


_INF_NOTE = "inf-exponent norms use the grid max, a lower bound on the essential sup"


def _norm(f: SampledField, p: float) -> float:
    return lp_norm(f, p).value


def _nonzero(*named_fields) -> list:
    violations = []
    for name, f in named_fields:
        if float(np.max(np.abs(f.values))) == 0.0:
            violations.append(f"{name} must be nonzero")
    return violations


def _is_fourier(A: LinearOperator) -> bool:
    return isinstance(A, FourierTransform)


def _in_closed(q, lo, hi) -> bool:
    return lo <= q <= hi


# ---------------------------------------------------------------------------
# window validators (one per variant, each violation named individually)
# ---------------------------------------------------------------------------


def _validate_pq_window(spec) -> list:
    out = []
    p, q = spec.p, spec.q
    if p is None or not (1.0 <= p <= 2.0):
        out.append(f"p must lie in [1, 2], got {p}")
        return out
    pp = holder_dual(p)
    if q is None or not _in_closed(q, p, pp):
        out.append(f"q must lie in [p, p'] = [{p:g}, {pp:g}], got {q}")
    return out


def _validate_sobolev_general(spec) -> list:
    out = []
    u, r, p, theta, t, n = spec.u, spec.r, spec.p, spec.theta, spec.t, spec.dim
    for name, val in (("u", u), ("r", r), ("p", p), ("theta", theta)):
        if val is None or not (val > 0):
            out.append(f"{name} must be positive, got {val}")
    if t is None or not (1.0 < t):
        out.append(f"t must satisfy 1 < t <= inf, got {t}")
    if out:
        return out
    if not (p > u):
        out.append(f"p must exceed u (p={p:g}, u={u:g})")
    if not (r >= u):
        out.append(f"r must be >= u (r={r:g}, u={u:g})")
    floor = n * (1.0 / u - 1.0 / p)
    if not (theta > floor):
        out.append(f"theta must exceed n(1/u - 1/p) = {floor:g}, got {theta:g}")
    return out


def _validate_sobolev_simple(spec) -> list:
    out = []
    theta, p, q = spec.theta, spec.p, spec.q
    if theta is None or not (theta > 0):
        out.append(f"theta must be positive, got {theta}")
    if p is None or not (p > 0):
        out.append(f"p must be positive, got {p}")
    if q is None or p is None or not (q > p):
        out.append(f"q must exceed p (q={q}, p={p})")
    return out


def _validate_fractional_laplacian(spec) -> list:
    out = []
    s, p, n = spec.s_frac, spec.p, spec.dim
    if s is None or not (s > 0):
        out.append(f"s must be positive, got {s}")
    if p is None or not (1.0 <= p < 2.0):
        out.append(f"p must lie in [1, 2), got {p}")
    if out:
        return out
    alpha = (n / (2.0 * s)) * (0.5 - 1.0 / p)
    if abs(alpha) < ALPHA_DEGENERACY_GUARD:
        out.append(
            f"|alpha| = |n/(2s) (1/2 - 1/p)| = {abs(alpha):.2e} is below the "
            f"degeneracy guard {ALPHA_DEGENERACY_GUARD:g} (1/alpha blow-up)"
        )
    return out


def _check_balance(lhs_val, rhs_val, description) -> list:
    scale = max(1.0, abs(lhs_val), abs(rhs_val))
    if abs(lhs_val - rhs_val) > BALANCE_TOL * scale:
        return [f"balance condition violated: {description} ({lhs_val:.15g} != {rhs_val:.15g})"]
    return []


def _validate_weighted_infty(spec) -> list:
    out = []
    n = spec.dim
    for name in ("alpha", "beta", "theta", "phi", "p", "q"):
        val = getattr(spec, name)
        if val is None or not (val > 0):
            out.append(f"{name} must be positive, got {val}")
    if out:
        return out
    if not (spec.theta / n + 1.0 / spec.p > 1.0):
        out.append(f"theta/n + 1/p must exceed 1, got {spec.theta / n + 1.0 / spec.p:g}")
    if not (spec.phi / n + 1.0 / spec.q > 1.0):
        out.append(f"phi/n + 1/q must exceed 1, got {spec.phi / n + 1.0 / spec.q:g}")
    out += _check_balance(
        spec.alpha * (spec.theta / n + 1.0 / spec.p),
        spec.beta * (spec.phi / n + 1.0 / spec.q),
        "alpha (theta/n + 1/p) = beta (phi/n + 1/q)",
    )
    return out


def _validate_weighted_hadamard(spec) -> list:
    out = []
    n = spec.dim
    for name in ("alpha", "beta", "theta", "phi"):
        val = getattr(spec, name)
        if val is None or not (val > 0):
            out.append(f"{name} must be positive, got {val}")
    for name in ("p", "q"):
        val = getattr(spec, name)
        if val is None or not (val > 1):
            out.append(f"{name} must exceed 1, got {val}")
    if spec.s is not None and not (1.0 <= spec.s or spec.s == math.inf):
        out.append(f"s must lie in [1, inf], got {spec.s}")
    if out:
        return out
    tfloor = n * (1.0 - 1.0 / spec.p)
    pfloor = n * (1.0 - 1.0 / spec.q)
    if not (spec.theta > tfloor):
        out.append(f"theta must exceed n(1 - 1/p) = {tfloor:g}, got {spec.theta:g}")
    if not (spec.phi > pfloor):
        out.append(f"phi must exceed n(1 - 1/q) = {pfloor:g}, got {spec.phi:g}")
    out += _check_balance(
        spec.alpha * (spec.theta - tfloor),
        spec.beta * (spec.phi - pfloor),
        "alpha (theta - n(1-1/p)) = beta (phi - n(1-1/q))",
    )
    if spec.s is not None and spec.alpha != spec.beta:
        out.append("the s-norm right side needs alpha = beta")
    return out


def _validate_weighted_special_sym(spec) -> list:
    out = []
    if spec.theta is None or not (spec.theta > 0):
        out.append(f"theta must be positive, got {spec.theta}")
    if spec.p is None or not (1.0 <= spec.p < 2.0):
        out.append(f"p must lie in [1, 2), got {spec.p}")
        return out
    pp = holder_dual(spec.p)
    if spec.q is None or not _in_closed(spec.q, spec.p, pp):
        out.append(f"q must lie in [p, p'] = [{spec.p:g}, {pp:g}], got {spec.q}")
    return out


def _validate_weighted_special_gen(spec) -> list:
    out = []
    n = spec.dim
    r = spec.r
    if r is None or not (1.0 <= r < 2.0):
        out.append(f"r must lie in [1, 2), got {r}")
    for name in ("alpha", "beta", "theta", "phi"):
        val = getattr(spec, name)
        if val is None or not (val > 0):
            out.append(f"{name} must be positive, got {val}")
    for name in ("p", "q"):
        val = getattr(spec, name)
        if val is None or r is None or not (val > r):
            out.append(f"{name} must exceed r (got {name}={val}, r={r})")
    if out:
        return out
    tfloor = n * (1.0 / r - 1.0 / spec.p)
    pfloor = n * (1.0 / r - 1.0 / spec.q)
    if not (spec.theta > tfloor):
        out.append(f"theta must exceed n(1/r - 1/p) = {tfloor:g}, got {spec.theta:g}")
    if not (spec.phi > pfloor):
        out.append(f"phi must exceed n(1/r - 1/q) = {pfloor:g}, got {spec.phi:g}")
    out += _check_balance(
        spec.alpha * (spec.theta - tfloor),
        spec.beta * (spec.phi - pfloor),
        "alpha (theta - n(1/r-1/p)) = beta (phi - n(1/r-1/q))",
    )
    return out


def _validate_heisenberg(spec) -> list:
    lo, hi, inclusive = heisenberg_window(spec.dim)
    q = spec.q
    ok = (
        q is not None
        and ((lo <= q <= hi) if inclusive else (lo < q < hi))
    )
    if not ok:
        bracket = "[{:g}, {}]" if inclusive else "({:g}, {})"
        window = bracket.format(lo, "inf" if hi == math.inf else f"{hi:g}")
        return [f"q must lie in the dimension-{spec.dim} window {window}, got {q}"]
    return []


def _validate_G(spec) -> list:
    out = []
    if spec.beta_exp is None or not (spec.beta_exp > 0):
        out.append(f"beta_exp must be positive, got {spec.beta_exp}")
    if spec.q is None or not (1.0 <= spec.q):
        out.append(f"q must lie in [1, inf], got {spec.q}")
    return out


def _validate_hy(spec) -> list:
    if spec.p is None or not (1.0 <= spec.p <= 2.0):
        return [f"p must lie in [1, 2], got {spec.p}"]
    return []


_VALIDATORS = {
    "generalized_up": _validate_pq_window,
    "embedding": _validate_pq_window,
    "sobolev_general": _validate_sobolev_general,
    "sobolev_simple": _validate_sobolev_simple,
    "fractional_laplacian": _validate_fractional_laplacian,
    "weighted_up_infty": _validate_weighted_infty,
    "weighted_up_hadamard": _validate_weighted_hadamard,
    "weighted_up_special_sym": _validate_weighted_special_sym,
    "weighted_up_special_gen": _validate_weighted_special_gen,
    "heisenberg_nd": _validate_heisenberg,
    "G_beta_q": _validate_G,
    "hausdorff_young": _validate_hy,
}


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------


def functional_F(f: SampledField, A: LinearOperator, p: float, q: float) -> float:
    """The norm-ratio functional ||f||_p ||Af||_p / (||f||_q ||Af||_q)."""
    _reject(_nonzero(("f", f)))
    af = A.apply(f)
    num = _norm(f, p) * _norm(af, p)
    den = _norm(f, q) * _norm(af, q)
    if den == 0.0:
        raise ZeroDivisionError("q-norm denominator vanished")
    if not math.isfinite(num):
        raise ValueError("p-norms are not finite for this field")
    return num / den


def functional_G(f: SampledField, beta_exp: float, q: float) -> float:
    """(V(f)/||f||_q^2)^beta * ||f||_q / ||f||_1 (q = inf uses the sup norm)."""
    spec = FunctionalSpec("G_beta_q", beta_exp=beta_exp, q=q, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    nq = _norm(f, q)
    n1 = _norm(f, 1)
    return (variance(f) / nq**2) ** beta_exp * nq / n1


# ---------------------------------------------------------------------------
# verification evaluators
# ---------------------------------------------------------------------------


def check_generalized_up(
    f: SampledField, A: LinearOperator, p: float, q: float, tol: float = 1e-9
) -> VerificationReport:
    """Lower bound on F_{p,q} for p in [1,2], q in [p, p'].

    For the Fourier kinds the closed-form sharp constant is attached and
    ``passed`` asserts lhs >= bound - tol; for other operators asserting
    A* = k A^{-1} the ratio is reported without a constant.
    """
    spec = FunctionalSpec("generalized_up", p=p, q=q, dim=f.grid.dim)
    violations = spec.validate()
    if A.claimed_k is None and not _is_fourier(A):
        violations.append("operator must be Fourier or assert a constant (claimed_k)")
    _reject(violations)
    lhs = functional_F(f, A, p, q)
    notes = [_INF_NOTE] if math.inf in (p, q) else []
    bound = passed = None
    if _is_fourier(A):
        bound = norm_up_bound(p, q, f.grid.dim, A.convention)
        passed = lhs >= bound - tol
    return _make_report(spec.to_dict(), lhs, 1.0 if bound is None else bound, bound, passed, notes)


def check_embedding(f: SampledField, A: LinearOperator, p: float, q: float) -> VerificationReport:
    """||f||_q + ||Af||_q against ||f||_p + ||Af||_p on the p-q window.

    The implied constant is unspecified, so only the ratio is reported.
    """
    spec = FunctionalSpec("embedding", p=p, q=q, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    af = A.apply(f)
    lhs = _norm(f, q) + _norm(af, q)
    rhs = _norm(f, p) + _norm(af, p)
    notes = [_INF_NOTE] if math.inf in (p, q) else []
    return _make_report(spec.to_dict(), lhs, rhs, notes=notes)


def sobolev_rhs_general(
    f: SampledField, u: float, r: float, p: float, theta: float, t: float
) -> VerificationReport:
    """Weighted-norm lower bound with free exponents (u, r, p, theta, t).

    lhs = || |x|^theta f ||_p;
    rhs = ||f||_inf (||f||_r/||f||_inf)^(r/u)
          (||f||_r/||f||_rt)^(rt (u theta p - n(p-u)) / (n p u (t-1))).
    t = inf degenerates to the sup-norm form of the last factor.
    """
    spec = FunctionalSpec("sobolev_general", u=u, r=r, p=p, theta=theta, t=t, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    n = f.grid.dim
    lhs = weighted_norm(f, theta, p).value
    sup = _norm(f, math.inf)
    nr = _norm(f, r)
    numerator = u * theta * p - n * (p - u)
    if t == math.inf:
        tail_ratio = nr / sup
        expo = r * numerator / (n * p * u)
    else:
        tail_ratio = nr / _norm(f, r * t)
        expo = r * t * numerator / (n * p * u * (t - 1.0))
    rhs = sup * (nr / sup) ** (r / u) * tail_ratio**expo
    return _make_report(spec.to_dict(), lhs, rhs, notes=[_INF_NOTE])


def sobolev_rhs_simple(f: SampledField, theta: float, p: float, q: float) -> VerificationReport:
    """lhs = || |x|^theta f ||_p; rhs = (||f||_p/||f||_q)^(theta q p / (n(q-p))) ||f||_p."""
    spec = FunctionalSpec("sobolev_simple", theta=theta, p=p, q=q, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    n = f.grid.dim
    lhs = weighted_norm(f, theta, p).value
    np_ = _norm(f, p)
    nq = _norm(f, q)
    expo = theta * p / n if q == math.inf else theta * q * p / (n * (q - p))
    rhs = (np_ / nq) ** expo * np_
    notes = [_INF_NOTE] if q == math.inf else []
    return _make_report(spec.to_dict(), lhs, rhs, notes=notes)


def check_fractional_laplacian(f: SampledField, s: float, p: float) -> VerificationReport:
    """||(-Lap)^s f||_2 against (||f||_p/||f||_2)^(1/alpha) ||f||_2,
    alpha = n/(2s) (1/2 - 1/p), via the |xi|^(2s) transform multiplier.

    In the Nash case (s = 1/2, p = 1) the report notes additionally carry
    the rearranged form ||f||_1^(2/n) ||grad f||_2 vs ||f||_2^(1 + 2/n),
    with the gradient norm evaluated spectrally.
    """
    spec = FunctionalSpec("fractional_laplacian", s_frac=s, p=p, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    n = f.grid.dim
    alpha = (n / (2.0 * s)) * (0.5 - 1.0 / p)
    A = FourierTransform("two_pi")
    lap = FractionalALaplacian(A, s).apply(f)
    lhs = _norm(lap, 2)
    np_ = _norm(f, p)
    n2 = _norm(f, 2)
    rhs = (np_ / n2) ** (1.0 / alpha) * n2
    notes = [f"alpha = {alpha:.12g}"]
    if s == 0.5 and p == 1:
        grad = 2.0 * math.pi * lhs  # || |xi| Af ||_2 = ||grad f||_2 / (2 pi)
        nash_lhs = np_ ** (2.0 / n) * grad
        nash_rhs = n2 ** (1.0 + 2.0 / n)
        notes.append(f"nash form: lhs = {nash_lhs:.12g}, rhs = {nash_rhs:.12g}")
    return _make_report(spec.to_dict(), lhs, rhs, notes=notes)


def _check_dim(spec: FunctionalSpec, f: SampledField) -> list:
    if spec.dim != f.grid.dim:
        return [f"spec dim {spec.dim} does not match the field grid dim {f.grid.dim}"]
    return []


def check_weighted_up(f: SampledField, A: LinearOperator, spec: FunctionalSpec) -> VerificationReport:
    """The four weighted uncertainty inequalities, selected by spec.variant.

    lhs = || |x|^theta f ||_p^alpha * || |xi|^phi Af ||_q^beta, against:

    * ``weighted_up_infty``:       ||f||_inf^alpha ||Af||_inf^beta
    * ``weighted_up_hadamard``:    ||f||_1^alpha ||Af||_1^beta, or for
      alpha = beta with an s parameter the plain product vs ||f||_s ||Af||_s
    * ``weighted_up_special_sym``: ||f||_q ||Af||_q (theta = phi, p-norms)
    * ``weighted_up_special_gen``: ||f||_r^alpha ||Af||_r^beta
    """
    violations = _check_dim(spec, f) + spec.validate()
    _reject(violations + _nonzero(("f", f)))
    sd = spec.to_dict()
    af = A.apply(f)
    notes = []
    if spec.variant == "weighted_up_infty":
        lhs = (
            weighted_norm(f, spec.theta, spec.p).value ** spec.alpha
            * weighted_norm(af, spec.phi, spec.q).value ** spec.beta
        )
        rhs = _norm(f, math.inf) ** spec.alpha * _norm(af, math.inf) ** spec.beta
        notes.append(_INF_NOTE)
    elif spec.variant == "weighted_up_hadamard":
        if spec.s is not None:
            lhs = weighted_norm(f, spec.theta, spec.p).value * weighted_norm(af, spec.phi, spec.q).value
            rhs = _norm(f, spec.s) * _norm(af, spec.s)
            notes.append("alpha = beta: plain product against the s-norms")
        else:
            lhs = (
                weighted_norm(f, spec.theta, spec.p).value ** spec.alpha
                * weighted_norm(af, spec.phi, spec.q).value ** spec.beta
            )
            rhs = _norm(f, 1) ** spec.alpha * _norm(af, 1) ** spec.beta
    elif spec.variant == "weighted_up_special_sym":
        lhs = weighted_norm(f, spec.theta, spec.p).value * weighted_norm(af, spec.theta, spec.p).value
        rhs = _norm(f, spec.q) * _norm(af, spec.q)
    elif spec.variant == "weighted_up_special_gen":
        lhs = (
            weighted_norm(f, spec.theta, spec.p).value ** spec.alpha
            * weighted_norm(af, spec.phi, spec.q).value ** spec.beta
        )
        rhs = _norm(f, spec.r) ** spec.alpha * _norm(af, spec.r) ** spec.beta
    else:
        raise ParameterWindowError([f"{spec.variant!r} is not a weighted variant"])
    return _make_report(sd, lhs, rhs, notes=notes)


def check_heisenberg_nd(f: SampledField, A: LinearOperator, q: float) -> VerificationReport:
    """V(f) V(Af) against ||f||_q^2 ||Af||_q^2 inside the dimension window.

    For the two_pi Fourier transform at q = 2 the sharp Gaussian constant
    n^2/(16 pi^2) is attached.
    """
    spec = FunctionalSpec("heisenberg_nd", q=q, dim=f.grid.dim)
    _reject(spec.validate() + _nonzero(("f", f)))
    af = A.apply(f)
    lhs = variance(f) * variance(af)
    rhs = (_norm(f, q) * _norm(af, q)) ** 2
    bound = passed = None
    notes = []
    if _is_fourier(A) and A.convention == "two_pi" and q == 2:
        n = f.grid.dim
        bound = n * n / (16.0 * math.pi**2)
        passed = lhs >= (bound - 1e-9) * rhs
        notes.append("sharp Gaussian constant attached (two_pi transform, q = 2)")
    return _make_report(spec.to_dict(), lhs, rhs, bound, passed, notes)


def entropic_gap(f: SampledField, A: LinearOperator, tol: float = 1e-6) -> VerificationReport:
    """H[f] + H[Af] for the unit-L^2 densities |f|^2/||f||_2^2.

    For the Fourier kinds the Gaussian-saturated constant is attached and
    pass/fail evaluated; otherwise the sum is reported on its own.
    """
    _reject(_nonzero(("f", f)))
    af = A.apply(f)
    _reject(_nonzero(("Af", af)))
    lhs = entropy(f) + entropy(af)
    bound = passed = None
    if _is_fourier(A):
        bound = entropic_bound(f.grid.dim, A.convention)
        passed = lhs >= bound - tol
    sd = {"variant": "entropic", "dim": f.grid.dim}
    return VerificationReport(
        spec=sd,
        lhs=float(lhs),
        rhs=float(bound) if bound is not None else 0.0,
        ratio=float(lhs - bound) if bound is not None else math.inf,
        bound_constant=bound,
        passed=passed,
        notes=("ratio field carries the additive gap lhs - bound",)
        if bound is not None
        else ("no closed-form bound for this operator; sum reported alone",),
    )


def check_hausdorff_young(f: SampledField, A: LinearOperator, p: float, tol: float = 1e-9) -> VerificationReport:
    """Forward ratio ||Af||_p'/||f||_p and reverse ratio ||f||_p'/||Af||_p.

    For the transform kinds the sharp constant is attached and both ratios
    must stay below it (the Gaussian saturates the forward direction).
    """
    spec = FunctionalSpec("hausdorff_young", p=p, dim=f.grid.dim)
    violations = spec.validate()
    if A.claimed_k is None and not _is_fourier(A):
        violations.append("operator must be Fourier or assert a constant (claimed_k)")
    _reject(violations + _nonzero(("f", f)))
    pp = holder_dual(p)
    af = A.apply(f)
    forward = _norm(af, pp) / _norm(f, p)
    reverse = _norm(f, pp) / _norm(af, p)
    bound = passed = None
    if _is_fourier(A):
        bound = hausdorff_young_bound(p, f.grid.dim, A.convention)
        passed = forward <= bound + tol and reverse <= bound + tol
    notes = (f"reverse ratio ||f||_p'/||Af||_p = {reverse:.12g}",)
    if pp == math.inf:
        notes += (_INF_NOTE,)
    return VerificationReport(
        spec=spec.to_dict(),
        lhs=float(forward),
        rhs=float(bound) if bound is not None else 1.0,
        ratio=float(forward),
        bound_constant=bound,
        passed=passed,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# dispatch for CLI / sweep drivers
# ---------------------------------------------------------------------------


def evaluate_spec(spec: FunctionalSpec, f: SampledField, A: LinearOperator | None = None) -> VerificationReport:
    """Evaluate any variant from its spec record (operator required for most)."""
    needs_operator = spec.variant not in (
        "G_beta_q",
        "sobolev_general",
        "sobolev_simple",
        "fractional_laplacian",
    )
    if needs_operator and A is None:
        raise ParameterWindowError([f"variant {spec.variant!r} needs an operator"])
    _reject(_check_dim(spec, f))
    if spec.variant == "F_pq":
        val = functional_F(f, A, spec.p, spec.q)
        return _make_report(spec.to_dict(), val, 1.0, notes=["raw functional value in lhs/ratio"])
    if spec.variant == "G_beta_q":
        val = functional_G(f, spec.beta_exp, spec.q)
        return _make_report(spec.to_dict(), val, 1.0, notes=["raw functional value in lhs/ratio"])
    if spec.variant == "generalized_up":
        return check_generalized_up(f, A, spec.p, spec.q)
    if spec.variant == "embedding":
        return check_embedding(f, A, spec.p, spec.q)
    if spec.variant == "sobolev_general":
        return sobolev_rhs_general(f, spec.u, spec.r, spec.p, spec.theta, spec.t)
    if spec.variant == "sobolev_simple":
        return sobolev_rhs_simple(f, spec.theta, spec.p, spec.q)
    if spec.variant == "fractional_laplacian":
        return check_fractional_laplacian(f, spec.s_frac, spec.p)
    if spec.variant.startswith("weighted_up"):
        return check_weighted_up(f, A, spec)
    if spec.variant == "heisenberg_nd":
        return check_heisenberg_nd(f, A, spec.q)
    if spec.variant == "entropic":
        return entropic_gap(f, A)
    if spec.variant == "hausdorff_young":
        return check_hausdorff_young(f, A, spec.p)
    raise ParameterWindowError([f"unknown variant {spec.variant!r}"])
