"""One-dimensional steppers: fixed points, mirrors, blowups, energy, orders."""

import math
import warnings

import numpy as np
import pytest

from tempfrac.calculus import TemperedParams
from tempfrac.operators import Grid1D, TimeGrid, assemble_B
from tempfrac.solver1d import (
    BlowupError,
    ProblemSpec1D,
    solve_left,
    solve_right,
    solve_two_sided,
)
from tempfrac.verification import case_ex5_1, case_ex5_2, case_ex5_4, error_norm, run_convergence_study

ZERO = lambda *_: 0.0


def zero_spec(side, alpha=1.5, lam=1.0, M=10, N=20):
    return ProblemSpec1D(
        grid=Grid1D(0.0, 1.0, M),
        time=TimeGrid(0.1, N),
        params=TemperedParams(alpha, lam),
        side=side,
        initial=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        boundary_left=ZERO,
        boundary_right=ZERO,
        source=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
    )


class TestFixedPoints:
    @pytest.mark.parametrize("side,solver", [
        ("left", solve_left), ("right", solve_right), ("two_sided", solve_two_sided),
    ])
    def test_zero_data_stays_zero(self, side, solver):
        sol = solver(zero_spec(side))
        assert np.array_equal(sol.values, np.zeros(11))


class TestValidation:
    def test_side_mismatch(self):
        with pytest.raises(ValueError):
            solve_left(zero_spec("right"))

    def test_nonzero_near_trace_rejected(self):
        spec = zero_spec("left")
        bad = ProblemSpec1D(**{**spec.__dict__, "boundary_left": lambda t: 1.0})
        with pytest.raises(ValueError, match="must vanish"):
            solve_left(bad)
        spec_r = zero_spec("right")
        bad_r = ProblemSpec1D(**{**spec_r.__dict__, "boundary_right": lambda t: 0.5})
        with pytest.raises(ValueError, match="must vanish"):
            solve_right(bad_r)

    def test_corner_mismatch_warns(self):
        spec = zero_spec("left")
        bumped = ProblemSpec1D(**{**spec.__dict__, "initial": lambda x: np.ones_like(x)})
        with pytest.warns(RuntimeWarning, match="corner"):
            solve_left(bumped)

    def test_history_shape_and_traces(self):
        case = case_ex5_1(1.5, 1.0, j=5)
        spec = case.build_spec(0.1)(10)
        sol = solve_left(spec, store_history=True)
        assert sol.history.shape == (11, 11)
        # boundary columns carry the prescribed traces at every stored time
        for n, row in enumerate(sol.history):
            t = n * spec.time.tau
            assert row[0] == 0.0
            assert row[-1] == pytest.approx(math.exp(-t - 1.0), rel=1e-15)


class TestAgainstReferenceValues:
    def test_left_coarse_error(self):
        case = case_ex5_1(1.5, 1.0, j=5)
        rep = run_convergence_study(case, [0.1, 0.05], coupling="h3")
        assert rep.errors()[0] == pytest.approx(9.1408e-05, rel=0.10)
        assert rep.errors()[1] == pytest.approx(1.1772e-05, rel=0.10)
        assert rep.rates()[0] == pytest.approx(2.9569, abs=0.15)

    def test_right_coarse_error(self):
        case = case_ex5_2(1.1, 1.0, j=5)
        rep = run_convergence_study(case, [0.1, 0.05], coupling="h3")
        assert rep.errors()[0] == pytest.approx(1.6380e-05, rel=0.10)
        assert rep.rates()[0] == pytest.approx(2.9864, abs=0.15)

    def test_two_sided_coarse_error(self):
        case = case_ex5_4(1.5, 0.1)
        rep = run_convergence_study(case, [0.1, 0.05], coupling="h3")
        assert rep.errors()[0] == pytest.approx(5.8747e-06, rel=0.10)
        assert rep.rates()[0] == pytest.approx(2.9090, abs=0.15)


class TestMirrorSymmetry:
    def test_right_solver_is_flipped_left_solver(self):
        # solve the mirrored problem with the right-sided scheme and compare
        # against the flipped left-sided solution
        alpha, lam, j = 1.5, 1.0, 5
        case = case_ex5_1(alpha, lam, j=j)
        h, N = 0.1, 50
        spec_l = case.build_spec(h)(N)
        sol_l = solve_left(spec_l)

        src = spec_l.source
        spec_r = ProblemSpec1D(
            grid=spec_l.grid,
            time=spec_l.time,
            params=spec_l.params,
            side="right",
            initial=lambda x: spec_l.initial(1.0 - np.asarray(x, dtype=float)),
            boundary_left=spec_l.boundary_right,
            boundary_right=spec_l.boundary_left,
            source=lambda x, t: src(1.0 - np.asarray(x, dtype=float), t),
        )
        sol_r = solve_right(spec_r)
        assert sol_r.values == pytest.approx(sol_l.values[::-1], rel=1e-12, abs=1e-14)


class TestBlowupDiagnostics:
    def test_unstable_rate_blows_up(self):
        # lam*h = 5 with the steepest order: growth reaches the diagnostic
        # threshold within the run
        case = case_ex5_1(1.9, 50.0, j=5)
        spec = case.build_spec(0.1)(100)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with pytest.raises(BlowupError) as err:
                solve_left(spec)
        assert err.value.step > 0

    def test_study_records_infinite_error(self):
        case = case_ex5_1(1.9, 50.0, j=5)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = run_convergence_study(case, [0.1, 0.05], coupling="h3")
        # the coarse run trips the blowup diagnostic; the next level grows
        # more slowly but is still unmistakably unstable
        assert math.isinf(rep.errors()[0])
        assert all(e > 1e6 for e in rep.errors())


class TestEnergyDecay:
    @pytest.mark.parametrize("lam_h", [0.0, 0.5, 1.0])
    def test_homogeneous_energy_monotone(self, lam_h):
        M, N = 24, 60
        g = Grid1D(0.0, 1.0, M)
        lam = lam_h / g.h
        params = TemperedParams(1.6, lam)
        rng = np.random.default_rng(42)
        coeffs = rng.standard_normal(4)

        def u0(x):
            x = np.asarray(x, dtype=float)
            return sum(c * np.sin((k + 1) * np.pi * x) for k, c in enumerate(coeffs))

        spec = ProblemSpec1D(
            grid=g, time=TimeGrid(0.5, N), params=params, side="left",
            initial=u0, boundary_left=ZERO, boundary_right=ZERO,
            source=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
        )
        sol = solve_left(spec, store_history=True)
        B = assemble_B("left", g, lam).to_dense()
        energies = [
            g.h * row[1:-1] @ (B @ row[1:-1]) for row in sol.history
        ]
        for before, after in zip(energies, energies[1:]):
            assert after <= before * (1.0 + 1e-12)


class TestUnconditionalTauStability:
    @pytest.mark.parametrize("n_steps", [12, 48, 192])  # tau = h, h/4, h/16
    def test_energy_never_grows_for_any_step_size(self, n_steps):
        M = 24
        g = Grid1D(0.0, 1.0, M)
        lam = 0.75 / g.h
        params = TemperedParams(1.5, lam)

        def u0(x):
            x = np.asarray(x, dtype=float)
            return np.sin(np.pi * x) + 0.3 * np.sin(3 * np.pi * x)

        T = 12 * g.h  # so the three step counts realize tau = h, h/4, h/16
        spec = ProblemSpec1D(
            grid=g, time=TimeGrid(T, n_steps), params=params, side="left",
            initial=u0, boundary_left=ZERO, boundary_right=ZERO,
            source=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
        )
        sol = solve_left(spec, store_history=True)
        B = assemble_B("left", g, lam).to_dense()
        energy = [g.h * row[1:-1] @ (B @ row[1:-1]) for row in sol.history]
        for before, after in zip(energy, energy[1:]):
            assert after <= before * (1.0 + 1e-12)


class TestTemporalOrder:
    def test_first_order_in_time(self):
        # fine spatial grid, halving tau: the error should roughly halve
        case = case_ex5_1(1.5, 1.0, j=5)
        errs = []
        for N in (5, 10, 20):
            spec = case.build_spec(1.0 / 64)(N)
            sol = solve_left(spec)
            errs.append(error_norm(sol, case.exact))
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
        for order in orders:
            assert 0.8 <= order <= 1.2
