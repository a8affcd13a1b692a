"""Stability diagnostics: definiteness, spectrum bounds, splitting, predicate."""

import numpy as np
import pytest

from tempfrac.calculus import TemperedParams, w3_closed_form
from tempfrac.operators import Grid1D, assemble_P
from tempfrac.spectral import (
    RegimeError,
    check_B_bounds,
    check_P_definiteness,
    generating_function_range,
    hplus_split,
    stability_predicate,
    w3_sign_root,
)


def grid_for(lam_h, M, lam=None):
    """Unit-interval grid with h = 1/M; the tempering rate realizes lam*h."""
    g = Grid1D(0.0, 1.0, M)
    rate = lam_h / g.h if lam is None else lam
    return g, rate


class TestPDefiniteness:
    def test_reference_configuration(self):
        params = TemperedParams(1.5, 1.0)
        rep = check_P_definiteness(params, Grid1D(0.0, 1.0, 20), tau=1.0)
        assert rep.verdict == "negative-definite"
        assert rep.eig_max < 0.0

    def test_splitting_regime_configuration(self):
        g, rate = grid_for(1.0, 40)
        rep = check_P_definiteness(TemperedParams(1.9, rate), g, tau=1.0)
        assert rep.verdict == "negative-definite"

    def test_untempered_configuration(self):
        rep = check_P_definiteness(TemperedParams(1.1, 0.0), Grid1D(0.0, 1.0, 20), tau=1.0)
        assert rep.verdict == "negative-definite"

    @pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
    @pytest.mark.parametrize("lam_h", [0.0, 0.5, 1.0])
    @pytest.mark.parametrize("M", [20, 40])
    def test_sampled_grid_negative_definite(self, alpha, lam_h, M):
        g, rate = grid_for(lam_h, M)
        rep = check_P_definiteness(TemperedParams(alpha, rate), g, tau=0.5)
        assert rep.verdict == "negative-definite"

    def test_transpose_shares_symmetric_part(self):
        params = TemperedParams(1.7, 2.0)
        g = Grid1D(0.0, 1.0, 16)
        Pl = assemble_P("left", params, g, 1.0)
        Pr = assemble_P("right", params, g, 1.0)
        assert np.allclose(Pl + Pl.T, Pr + Pr.T)

    def test_dimension_cap(self):
        params = TemperedParams(1.5, 0.0)
        with pytest.raises(ValueError, match="capped"):
            check_P_definiteness(params, Grid1D(0.0, 1.0, 500), tau=1.0)


class TestBBounds:
    def test_untempered_closed_spectrum(self):
        rep = check_B_bounds(0.0, 0.1, 10)
        j = np.arange(1, 10)
        eigs = 2 / 3 + (1 / 3) * np.cos(j * np.pi / 10)
        assert rep.eig_min == pytest.approx(eigs.min(), rel=1e-12)
        assert rep.eig_max == pytest.approx(eigs.max(), rel=1e-12)

    def test_threshold_rate_bounds(self):
        rep = check_B_bounds(1.0 / 0.025, 0.025, 40)  # lam*h = 1
        assert rep.eig_min > 1 / 12
        assert rep.eig_max < 2.0
        assert rep.verdict == "positive-definite"


class TestHPlusSplit:
    def test_succeeds_above_sign_root(self):
        g = Grid1D(0.0, 1.0, 20)  # h = 0.05
        split = hplus_split(TemperedParams(1.9, 0.0), g, tau=1.0)
        assert split.h_c > 0.0
        assert split.h_a == pytest.approx(6.0 * split.h_c, rel=1e-15)
        assert split.h_b == pytest.approx(-4.0 * split.h_c, rel=1e-15)

    def test_regime_mismatch_below_root(self):
        g = Grid1D(0.0, 1.0, 20)
        with pytest.raises(RegimeError):
            hplus_split(TemperedParams(1.5, 0.0), g, tau=1.0)

    def test_generating_polynomial_root_at_one(self):
        g = Grid1D(0.0, 1.0, 20)
        split = hplus_split(TemperedParams(1.85, 0.0), g, tau=1.0)
        assert split.generating_polynomial(1.0) == pytest.approx(0.0, abs=1e-12)
        y = np.linspace(-1.0, 1.0, 101)
        assert np.all(split.generating_polynomial(y) >= -1e-12)

    def test_weyl_bound(self):
        # eigenvalues of the symmetric part are dominated by the compensated
        # matrix plus the negated compensator
        params = TemperedParams(1.9, 0.0)
        g = Grid1D(0.0, 1.0, 30)
        split = hplus_split(params, g, tau=1.0)
        P = assemble_P("left", params, g, 1.0)
        H = 0.5 * (P + P.T)
        lhs = np.linalg.eigvalsh(H).max()
        rhs = np.linalg.eigvalsh(H + split.matrix).max() + np.linalg.eigvalsh(-split.matrix).max()
        assert lhs <= rhs + 1e-12


class TestSignRoot:
    def test_value(self):
        assert w3_sign_root() == pytest.approx(1.7646, abs=1e-3)

    def test_quartic_vanishes_at_one(self):
        alpha = 1.0
        quartic = 80 - 86 * alpha - 11 * alpha**2 + 14 * alpha**3 + 3 * alpha**4
        assert quartic == 0.0

    def test_w3_changes_sign_across_root(self):
        root = w3_sign_root()
        assert w3_closed_form(root - 1e-3, 0.0, 1.0) > 0.0
        assert w3_closed_form(root + 1e-3, 0.0, 1.0) < 0.0

    def test_bisection_residual(self):
        a = w3_sign_root()
        assert abs(3 * a**3 + 17 * a**2 + 6 * a - 80) < 1e-9


class TestStabilityPredicate:
    def test_examples(self):
        assert stability_predicate(10.0, 0.05) is True
        assert stability_predicate(50.0, 0.1) is False
        assert stability_predicate(0.0, 123.0) is True
        assert stability_predicate(1.0, -0.1) is False


class TestGeneratingFunction:
    @pytest.mark.parametrize("alpha,lam_h", [(1.2, 0.0), (1.5, 0.5), (1.9, 1.0)])
    def test_range_brackets_spectrum(self, alpha, lam_h):
        g, rate = grid_for(lam_h, 32)
        params = TemperedParams(alpha, rate)
        P = assemble_P("left", params, g, 1.0)
        sym = 0.5 * (P + P.T)
        eigs = np.linalg.eigvalsh(sym)
        fmin, fmax = generating_function_range(P[:, 0], P[0, :])
        assert fmin - 1e-10 <= eigs[0]
        assert eigs[-1] <= fmax + 1e-10

    def test_corner_mismatch_rejected(self):
        with pytest.raises(ValueError):
            generating_function_range([1.0, 2.0], [3.0, 4.0])
