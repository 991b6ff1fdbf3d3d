import math

import numpy as np
import pytest

from uncertkit.families import gaussian, make_gc, make_hermite
from uncertkit.grid import GridSpec, SampledField, dilate, lp_norm, variance
from uncertkit.inequalities import (
    FunctionalSpec,
    ParameterWindowError,
    babenko_beckner,
    check_embedding,
    check_fractional_laplacian,
    check_generalized_up,
    check_hausdorff_young,
    check_heisenberg_nd,
    check_weighted_up,
    entropic_gap,
    evaluate_spec,
    functional_F,
    functional_G,
    hausdorff_young_bound,
    holder_dual,
    norm_up_bound,
    sobolev_rhs_general,
    sobolev_rhs_simple,
)
from uncertkit.operators import FourierTransform, FractionalFourier

F2PI = FourierTransform("two_pi")


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def test_holder_dual_symbolic():
    assert holder_dual(1) == math.inf
    assert holder_dual(2) == 2.0
    assert holder_dual(math.inf) == 1.0
    assert holder_dual(1.5) == pytest.approx(3.0)


def test_babenko_beckner_endpoints():
    assert babenko_beckner(1.0) == 1.0
    assert babenko_beckner(2.0) == pytest.approx(1.0)
    # interior values lie strictly below 1
    assert 0 < babenko_beckner(1.5) < 1.0
    with pytest.raises(ParameterWindowError):
        babenko_beckner(3.0)


def test_norm_up_bound_degenerate_cases():
    assert norm_up_bound(1.0, math.inf, 1) == pytest.approx(1.0)
    assert norm_up_bound(2.0, 2.0, 3) == pytest.approx(1.0)
    # q = p' doubles the single-sided sharp constant
    p = 1.5
    assert norm_up_bound(p, holder_dual(p), 2) == pytest.approx(
        (1.0 / babenko_beckner(p)) ** 4
    )


# ---------------------------------------------------------------------------
# the F functional
# ---------------------------------------------------------------------------


def test_functional_F_p_equals_q(grid1):
    f = gaussian(grid1, 1.3)
    assert functional_F(f, F2PI, 1.7, 1.7) == pytest.approx(1.0, abs=1e-14)


def test_functional_F_gaussian_value(grid1):
    f = gaussian(grid1)
    assert functional_F(f, F2PI, 1.0, 2.0) == pytest.approx(math.sqrt(2.0), rel=1e-10)


def test_functional_F_primary_up(grid1):
    # p = 1, q = inf: the primary lower bound at constant 1 for the transform
    for f in (gaussian(grid1, 0.5), make_hermite(3, grid1)[1], make_gc(1, 0.5, grid1)[1]):
        assert functional_F(f, F2PI, 1.0, math.inf) >= 1.0 - 1e-9


def test_functional_F_dilation_invariance(grid1):
    f = make_gc(1, 0.7, grid1)[1]
    base = functional_F(f, F2PI, 1.25, 2.0)
    for lam in (0.5, 2.0):
        assert functional_F(dilate(f, lam), F2PI, 1.25, 2.0) == pytest.approx(base, rel=1e-8)


# ---------------------------------------------------------------------------
# generalized norm bound
# ---------------------------------------------------------------------------


def test_generalized_up_bound_constants(grid1):
    f = gaussian(grid1)
    rep = check_generalized_up(f, F2PI, 1.0, math.inf)
    assert rep.bound_constant == pytest.approx(1.0)
    assert rep.passed
    rep = check_generalized_up(f, F2PI, 2.0, 2.0)
    assert rep.lhs == pytest.approx(1.0)
    assert rep.bound_constant == pytest.approx(1.0)
    rep = check_generalized_up(f, F2PI, 1.5, 2.0)
    assert rep.passed and rep.lhs >= rep.bound_constant


def test_generalized_up_gaussian_saturates_at_dual(grid1):
    # q = p' is the equality case for the Gaussian
    f = gaussian(grid1)
    for p in (1.25, 1.5, 1.75):
        rep = check_generalized_up(f, F2PI, p, holder_dual(p))
        assert rep.lhs == pytest.approx(rep.bound_constant, rel=1e-12)


def test_generalized_up_monotone_window(grid1):
    # for each p, the bound stays below the Gaussian value across [p, p']
    f = gaussian(grid1)
    for p in (1.0, 1.25, 1.5, 1.75):
        pp = holder_dual(p)
        for t in np.linspace(0.0, 1.0, 9):
            inv_q = (1 - t) / p + (t / pp if pp != math.inf else 0.0)
            q = math.inf if inv_q == 0 else 1.0 / inv_q
            rep = check_generalized_up(f, F2PI, p, q)
            assert rep.lhs >= rep.bound_constant - 1e-9


def test_generalized_up_window_rejections(grid1):
    f = gaussian(grid1)
    with pytest.raises(ParameterWindowError, match=r"p must lie in \[1, 2\]"):
        check_generalized_up(f, F2PI, 2.5, 2.0)
    with pytest.raises(ParameterWindowError, match=r"q must lie in \[p, p'\]"):
        check_generalized_up(f, F2PI, 1.5, 4.0)
    with pytest.raises(ParameterWindowError, match="claimed_k"):
        from uncertkit.operators import PhaseMultiplier

        check_generalized_up(f, PhaseMultiplier("constant", (0.1,)), 1.5, 2.0)


def test_generalized_up_special_operator_ratio_only(grid1):
    f = make_hermite(4, grid1)[1]
    rep = check_generalized_up(f, FractionalFourier(0.8), 1.5, 2.0)
    assert rep.bound_constant is None and rep.passed is None
    assert rep.lhs > 0


# ---------------------------------------------------------------------------
# embedding
# ---------------------------------------------------------------------------


def test_embedding_examples(grid1):
    f = gaussian(grid1)
    assert check_embedding(f, F2PI, 1.4, 1.4).ratio == pytest.approx(1.0)
    assert check_embedding(f, F2PI, 1.0, 2.0).ratio == pytest.approx(2.0 ** -0.25, rel=1e-10)
    ratios = [
        check_embedding(make_hermite(k, grid1)[1], F2PI, 1.0, 2.0).ratio for k in range(0, 33, 4)
    ]
    assert max(ratios) < 1.0  # bounded, and decreasing into the window
    with pytest.raises(ParameterWindowError, match="q must lie in"):
        check_embedding(f, F2PI, 1.0, 0.5)


# ---------------------------------------------------------------------------
# weighted-norm lower bounds
# ---------------------------------------------------------------------------


def test_sobolev_general_gaussian(grid1):
    rep = sobolev_rhs_general(gaussian(grid1), u=1.0, r=1.0, p=2.0, theta=1.0, t=math.inf)
    assert rep.lhs > 0 and rep.rhs > 0 and math.isfinite(rep.ratio)


def test_sobolev_general_boundary_rejected(grid1):
    f = gaussian(grid1)
    # theta exactly at n(1/u - 1/p) violates the strict inequality
    with pytest.raises(ParameterWindowError, match=r"theta must exceed"):
        sobolev_rhs_general(f, u=1.0, r=1.0, p=2.0, theta=0.5, t=math.inf)
    with pytest.raises(ParameterWindowError, match="p must exceed u"):
        sobolev_rhs_general(f, u=2.0, r=2.0, p=1.0, theta=3.0, t=2.0)
    with pytest.raises(ParameterWindowError, match="r must be >= u"):
        sobolev_rhs_general(f, u=1.0, r=0.5, p=2.0, theta=1.0, t=2.0)
    with pytest.raises(ParameterWindowError, match="t must satisfy"):
        sobolev_rhs_general(f, u=1.0, r=1.0, p=2.0, theta=1.0, t=1.0)


def test_sobolev_general_dilation_invariance(grid1):
    f = make_gc(1, 0.5, grid1)[1]
    kw = dict(u=1.0, r=1.5, p=2.5, theta=1.2, t=3.0)
    base = sobolev_rhs_general(f, **kw).ratio
    for lam in (0.5, 2.0):
        assert sobolev_rhs_general(dilate(f, lam), **kw).ratio == pytest.approx(base, rel=1e-12)


def test_sobolev_simple_indicator_closed_form():
    grid = GridSpec(1, 16.0, 4096)
    x = grid.axis()
    f = SampledField(grid, ((x >= -1) & (x < 1)).astype(complex), "box")
    rep = sobolev_rhs_simple(f, theta=1.0, p=2.0, q=math.inf)
    # lhs^2 = integral_{-1}^{1} x^2 = 2/3 on the half-open grid representation
    assert rep.lhs**2 == pytest.approx(2.0 / 3.0, rel=1e-3)
    # rhs = (||f||_2 / 1)^(theta p / n) ||f||_2 = 2^(3/2) exactly here
    assert rep.rhs == pytest.approx(2.0**1.5, rel=1e-3)


def test_sobolev_simple_rejections_and_invariance(grid1):
    f = gaussian(grid1)
    with pytest.raises(ParameterWindowError, match="q must exceed p"):
        sobolev_rhs_simple(f, theta=1.0, p=2.0, q=2.0)
    with pytest.raises(ParameterWindowError, match="theta must be positive"):
        sobolev_rhs_simple(f, theta=0.0, p=2.0, q=4.0)
    base = sobolev_rhs_simple(f, theta=1.0, p=2.0, q=math.inf).ratio
    for lam in (0.5, 2.0):
        assert sobolev_rhs_simple(dilate(f, lam), 1.0, 2.0, math.inf).ratio == pytest.approx(
            base, rel=1e-12
        )


# ---------------------------------------------------------------------------
# fractional Laplacian corollary
# ---------------------------------------------------------------------------


def test_fractional_laplacian_nash_alpha(grid1):
    rep = check_fractional_laplacian(gaussian(grid1), s=0.5, p=1.0)
    assert any("alpha = -0.5" in note for note in rep.notes)
    nash = [n for n in rep.notes if n.startswith("nash form")]
    assert nash, "nash-mode note missing"


def test_fractional_laplacian_nash_gaussian_consistency(grid1):
    # spectral gradient against the 4th-order finite-difference oracle
    f = gaussian(grid1)
    rep = check_fractional_laplacian(f, s=0.5, p=1.0)
    v = f.values.real
    h = grid1.spacing
    grad = (-np.roll(v, -2) + 8 * np.roll(v, -1) - 8 * np.roll(v, 1) + np.roll(v, 2)) / (12 * h)
    grad_norm = math.sqrt(np.sum(grad**2) * h)
    n1 = lp_norm(f, 1).value
    n2 = lp_norm(f, 2).value
    note = next(n for n in rep.notes if n.startswith("nash form"))
    lhs_str = note.split("lhs = ")[1].split(",")[0]
    assert float(lhs_str) == pytest.approx(n1**2 * grad_norm, rel=1e-6)
    rhs_str = note.split("rhs = ")[1]
    assert float(rhs_str) == pytest.approx(n2**3, rel=1e-10)


def test_fractional_laplacian_rejections(grid1):
    f = gaussian(grid1)
    with pytest.raises(ParameterWindowError, match=r"p must lie in \[1, 2\)"):
        check_fractional_laplacian(f, s=1.0, p=2.0)
    with pytest.raises(ParameterWindowError, match="s must be positive"):
        check_fractional_laplacian(f, s=0.0, p=1.0)
    with pytest.raises(ParameterWindowError, match="degeneracy guard"):
        check_fractional_laplacian(f, s=1.0, p=1.999999)


# ---------------------------------------------------------------------------
# the four weighted variants
# ---------------------------------------------------------------------------


def _spec(**kw):
    return FunctionalSpec(**kw)


def test_weighted_infty_runs_and_balance(grid1):
    f = gaussian(grid1)
    spec = _spec(
        variant="weighted_up_infty", p=1.0, q=1.0, theta=1.0, phi=1.0, alpha=1.0, beta=1.0, dim=1
    )
    rep = check_weighted_up(f, F2PI, spec)
    assert rep.lhs > 0 and rep.rhs > 0
    bad = _spec(
        variant="weighted_up_infty",
        p=1.0,
        q=1.0,
        theta=1.0 + 1e-6,
        phi=1.0,
        alpha=1.0,
        beta=1.0,
        dim=1,
    )
    with pytest.raises(ParameterWindowError, match="balance condition violated"):
        check_weighted_up(f, F2PI, bad)
    with pytest.raises(ParameterWindowError, match="theta/n"):
        check_weighted_up(
            f,
            F2PI,
            _spec(variant="weighted_up_infty", p=2.0, q=1.0, theta=0.2, phi=1.0, alpha=1.0, beta=0.6, dim=1),
        )


def test_weighted_hadamard_recovers_heisenberg_shape(grid1):
    f = gaussian(grid1, 1.4)
    spec = _spec(
        variant="weighted_up_hadamard",
        p=2.0,
        q=2.0,
        theta=1.0,
        phi=1.0,
        alpha=1.0,
        beta=1.0,
        s=2.0,
        dim=1,
    )
    rep = check_weighted_up(f, F2PI, spec)
    heis = check_heisenberg_nd(f, F2PI, 2.0)
    assert rep.ratio**2 == pytest.approx(heis.ratio, rel=1e-10)
    with pytest.raises(ParameterWindowError, match="theta must exceed"):
        check_weighted_up(
            f,
            F2PI,
            _spec(variant="weighted_up_hadamard", p=2.0, q=2.0, theta=0.5, phi=0.5, alpha=1.0, beta=1.0, dim=1),
        )
    with pytest.raises(ParameterWindowError, match="alpha = beta"):
        check_weighted_up(
            f,
            F2PI,
            _spec(
                variant="weighted_up_hadamard",
                p=2.0,
                q=2.0,
                theta=1.0,
                phi=2.0,
                alpha=3.0,
                beta=1.0,
                s=2.0,
                dim=1,
            ),
        )


def test_weighted_special_sym(grid1):
    f = gaussian(grid1)
    spec = _spec(variant="weighted_up_special_sym", p=1.5, q=2.0, theta=1.0, dim=1)
    rep = check_weighted_up(f, F2PI, spec)
    assert rep.lhs > 0 and rep.rhs > 0
    with pytest.raises(ParameterWindowError, match=r"p must lie in \[1, 2\)"):
        check_weighted_up(f, F2PI, _spec(variant="weighted_up_special_sym", p=2.0, q=2.0, theta=1.0, dim=1))
    with pytest.raises(ParameterWindowError, match="q must lie in"):
        check_weighted_up(f, F2PI, _spec(variant="weighted_up_special_sym", p=1.5, q=5.0, theta=1.0, dim=1))


def test_weighted_special_gen_heisenberg_setup(grid1):
    # theta = phi = 1, p = q = 2, alpha = beta reproduces the variance product
    f = gaussian(grid1, 0.9)
    spec = _spec(
        variant="weighted_up_special_gen",
        r=1.0,
        p=2.0,
        q=2.0,
        theta=1.0,
        phi=1.0,
        alpha=1.0,
        beta=1.0,
        dim=1,
    )
    rep = check_weighted_up(f, F2PI, spec)
    af = F2PI.apply(f)
    assert rep.lhs == pytest.approx(math.sqrt(variance(f) * variance(af)), rel=1e-10)
    assert rep.rhs == pytest.approx(lp_norm(f, 1).value * lp_norm(af, 1).value, rel=1e-10)
    with pytest.raises(ParameterWindowError, match=r"r must lie in \[1, 2\)"):
        check_weighted_up(f, F2PI, _spec(variant="weighted_up_special_gen", r=2.0, p=3.0, q=3.0, theta=1.0, phi=1.0, alpha=1.0, beta=1.0, dim=1))
    with pytest.raises(ParameterWindowError, match="p must exceed r"):
        check_weighted_up(f, F2PI, _spec(variant="weighted_up_special_gen", r=1.5, p=1.0, q=2.0, theta=1.0, phi=1.0, alpha=1.0, beta=1.0, dim=1))
    with pytest.raises(ParameterWindowError, match="balance"):
        check_weighted_up(f, F2PI, _spec(variant="weighted_up_special_gen", r=1.0, p=2.0, q=2.0, theta=1.0, phi=1.1, alpha=1.0, beta=1.0, dim=1))


@pytest.mark.parametrize(
    "spec",
    [
        # balance alpha(theta/n + 1/p) = beta(phi/n + 1/q): 2*1.5 = 1.5*2
        FunctionalSpec(
            "weighted_up_infty", p=2.0, q=1.0, theta=1.0, phi=1.0, alpha=2.0, beta=1.5, dim=1
        ),
        # balance alpha(theta - n(1-1/p)) = beta(phi - n(1-1/q)): 2*0.5 = 1*1
        FunctionalSpec(
            "weighted_up_hadamard", p=2.0, q=2.0, theta=1.0, phi=1.5, alpha=2.0, beta=1.0, dim=1
        ),
        FunctionalSpec("weighted_up_special_sym", p=1.5, q=2.0, theta=0.8, dim=1),
        # balance alpha(theta - n(1/r-1/p)) = beta(phi - n(1/r-1/q)): 1.5*0.5 = 0.75*1
        FunctionalSpec(
            "weighted_up_special_gen",
            r=1.0,
            p=2.0,
            q=2.0,
            theta=1.0,
            phi=1.5,
            alpha=1.5,
            beta=0.75,
            dim=1,
        ),
    ],
    ids=["infty", "hadamard", "special_sym", "special_gen"],
)
def test_weighted_ratio_dilation_invariant(grid1, spec):
    # under f -> f(lam x) both sides rescale by the same power exactly when
    # the variant's balance condition holds, so the ratio is a dilation
    # invariant; any exponent slip in lhs or rhs would break this
    f = make_gc(1, 0.7, grid1)[1]
    base = check_weighted_up(f, F2PI, spec).ratio
    for lam in (0.5, 2.0, 3.1):
        ratio = check_weighted_up(dilate(f, lam), F2PI, spec).ratio
        assert ratio == pytest.approx(base, rel=1e-9), spec.variant


# ---------------------------------------------------------------------------
# variance product
# ---------------------------------------------------------------------------


def test_heisenberg_gaussian_ratio(grid1, grid2):
    for grid in (grid1, grid2):
        rep = check_heisenberg_nd(gaussian(grid), F2PI, 2.0)
        n = grid.dim
        assert rep.ratio == pytest.approx(n * n / (16 * math.pi**2), rel=1e-9)
        assert rep.bound_constant == pytest.approx(n * n / (16 * math.pi**2))
        assert rep.passed


def test_heisenberg_hermite_ratio(grid1):
    for k in (0, 1, 4):
        _, h = make_hermite(k, grid1)
        rep = check_heisenberg_nd(h, F2PI, 2.0)
        assert rep.ratio == pytest.approx(((k + 0.5) / (2 * math.pi)) ** 2, rel=1e-8)


def test_heisenberg_window_rejections(grid3, grid1):
    with pytest.raises(ParameterWindowError, match="dimension-3 window"):
        check_heisenberg_nd(gaussian(grid3), F2PI, 1.0)
    # n = 1 admits the whole closed range including the endpoints
    rep = check_heisenberg_nd(gaussian(grid1), F2PI, 1.0)
    assert rep.ratio > 0
    rep = check_heisenberg_nd(gaussian(grid1), F2PI, math.inf)
    assert rep.ratio > 0


def test_heisenberg_ratio_positive_on_families(grid1):
    for field in (gaussian(grid1, 2.0), make_hermite(5, grid1)[1], make_gc(1, 0.3, grid1)[1]):
        for q in (1.0, 1.5, 2.0, 4.0, math.inf):
            assert check_heisenberg_nd(field, F2PI, q).ratio > 0


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------


def test_entropic_gaussian_saturation(grid1):
    rep = entropic_gap(gaussian(grid1), F2PI)
    assert rep.lhs == pytest.approx(1.0 - math.log(2.0), abs=1e-10)
    assert rep.passed


def test_entropic_dilation_invariance(grid1):
    f = make_gc(1, 0.6, grid1)[1]
    base = entropic_gap(f, F2PI).lhs
    for lam in (0.5, 2.0):
        assert entropic_gap(dilate(f, lam), F2PI).lhs == pytest.approx(base, abs=1e-6)


def test_entropic_strict_for_non_gaussian(grid1):
    rep = entropic_gap(make_hermite(1, grid1)[1], F2PI)
    assert rep.lhs > rep.bound_constant + 0.1


def test_entropic_unitary_bound(grid1):
    _, h0 = make_hermite(0, grid1)
    rep = entropic_gap(h0, FourierTransform("unitary"))
    assert rep.bound_constant == pytest.approx(1.0 + math.log(math.pi))
    assert rep.lhs == pytest.approx(rep.bound_constant, abs=1e-8)


# ---------------------------------------------------------------------------
# two-sided transform-norm inequality
# ---------------------------------------------------------------------------


def test_hausdorff_young_gaussian_saturation(grid1, grid2):
    for grid in (grid1, grid2):
        n = grid.dim
        f = gaussian(grid)
        for p in (1.0, 1.25, 1.5, 2.0):
            rep = check_hausdorff_young(f, F2PI, p)
            assert rep.bound_constant == pytest.approx(babenko_beckner(p) ** n)
            assert rep.lhs == pytest.approx(rep.bound_constant, rel=1e-9)
            assert rep.passed


def test_hausdorff_young_p1_and_p2(grid1):
    f = make_gc(1, 0.4, grid1)[1]
    rep = check_hausdorff_young(f, F2PI, 1.0)
    assert rep.lhs <= 1.0 + 1e-12
    rep = check_hausdorff_young(f, F2PI, 2.0)
    assert rep.lhs == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(ParameterWindowError, match=r"p must lie in \[1, 2\]"):
        check_hausdorff_young(f, F2PI, 2.5)


def test_hausdorff_young_unitary_constant(grid1):
    # the unitary kernel rescales the sharp constant by (2 pi)^(n(1/p'-1/2))
    f = gaussian(grid1)
    p = 1.5
    rep = check_hausdorff_young(f, FourierTransform("unitary"), p)
    assert rep.bound_constant == pytest.approx(hausdorff_young_bound(p, 1, "unitary"))
    assert rep.lhs <= rep.bound_constant + 1e-9


# ---------------------------------------------------------------------------
# G functional and dispatch
# ---------------------------------------------------------------------------


def test_functional_G_scaling_law(grid1):
    f = make_gc(1, 0.8, grid1)[1]
    n, beta = 1, 0.4
    base = functional_G(f, beta, math.inf)
    for lam in (0.5, 2.0):
        expected = lam ** (-beta * (n + 2) + n) * base
        assert functional_G(dilate(f, lam), beta, math.inf) == pytest.approx(expected, rel=1e-10)


def test_functional_G_critical_exponent_fixes_scaling(grid1):
    # at beta = n/(n+2) the functional is dilation invariant
    f = gaussian(grid1, 1.1)
    beta = 1.0 / 3.0
    base = functional_G(f, beta, math.inf)
    for lam in (0.25, 4.0):
        assert functional_G(dilate(f, lam), beta, math.inf) == pytest.approx(base, rel=1e-10)


def test_evaluate_spec_dispatch(grid1):
    f = gaussian(grid1)
    rep = evaluate_spec(FunctionalSpec("F_pq", p=1.0, q=2.0, dim=1), f, F2PI)
    assert rep.lhs == pytest.approx(math.sqrt(2.0), rel=1e-10)
    rep = evaluate_spec(FunctionalSpec("heisenberg_nd", q=2.0, dim=1), f, F2PI)
    assert rep.passed
    with pytest.raises(ParameterWindowError, match="needs an operator"):
        evaluate_spec(FunctionalSpec("entropic", dim=1), f, None)
    spec = FunctionalSpec.from_dict({"variant": "generalized_up", "p": 1.0, "q": "inf", "dim": 1})
    assert spec.q == math.inf


def test_spec_rejects_unknown_variant():
    with pytest.raises(ParameterWindowError, match="unknown variant"):
        FunctionalSpec("sharp_constant_search")


def test_dim_mismatch_named(grid1):
    f = gaussian(grid1)
    with pytest.raises(ParameterWindowError, match="does not match the field grid dim"):
        evaluate_spec(FunctionalSpec("heisenberg_nd", q=2.0, dim=2), f, F2PI)
    with pytest.raises(ParameterWindowError, match="does not match the field grid dim"):
        check_weighted_up(
            f,
            F2PI,
            FunctionalSpec(
                "weighted_up_infty", p=1.0, q=1.0, theta=2.0, phi=2.0, alpha=1.0, beta=1.0, dim=2
            ),
        )


def test_entropic_non_fourier_reports_sum_only(grid1):
    _, h4 = make_hermite(4, grid1)
    rep = entropic_gap(h4, FractionalFourier(0.8))
    assert rep.bound_constant is None and rep.passed is None
    assert any("no closed-form bound" in note for note in rep.notes)
    assert math.isfinite(rep.lhs)
