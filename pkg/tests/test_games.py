"""Reaction-term algebra: replicator scaling, modified game, selection
statistics, and the two-strategy cubic classification."""

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from torus_games.errors import DegenerateCubicError, DimensionMismatchError
from torus_games.games import (
    GameMatrix,
    ReactionParams,
    classify_2x2,
    cubic_coefficients,
    favored_by_selection,
    modified_game,
    reaction_rhs,
    replicator_rhs,
    tarnita_statistic,
)

BD = ReactionParams(rule="BD", p1=0.2968, p2=0.1827)
DB = ReactionParams(rule="DB", pbar1=0.3529, pbar2=0.2100, p12=0.6620,
                    kappa=6.0)

finite = st.floats(-10.0, 10.0, allow_nan=False)


def random_game(r, n=3, scale=3.0):
    return GameMatrix(scale * (2.0 * r.random((n, n)) - 1.0))


class TestReactionBasics:
    def test_constant_game_gives_zero_field(self):
        G = GameMatrix(np.full((3, 3), 2.5))
        for params in (BD, DB):
            for u in ([0.2, 0.3, 0.5], [1.0, 0.0, 0.0], [1 / 3] * 3):
                assert np.allclose(reaction_rhs(G, params, u), 0.0, atol=1e-14)

    def test_rock_paper_scissors_uniform_is_equilibrium(self):
        G = GameMatrix(np.array([[0.0, -1.0, 1.0],
                                 [1.0, 0.0, -1.0],
                                 [-1.0, 1.0, 0.0]]))
        u = np.full(3, 1.0 / 3.0)
        for params in (BD, DB):
            assert np.allclose(reaction_rhs(G, params, u), 0.0, atol=1e-14)

    @given(st.integers(0, 10**6))
    def test_field_sums_to_zero_on_simplex(self, seed):
        r = np.random.default_rng(seed)
        G = random_game(r)
        u = r.dirichlet(np.ones(3))
        for params in (BD, DB):
            assert abs(reaction_rhs(G, params, u).sum()) < 1e-12

    @given(st.integers(0, 10**6), finite)
    def test_payoff_shift_invariance(self, seed, shift):
        # adding a constant to every payoff leaves the field unchanged
        r = np.random.default_rng(seed)
        G = random_game(r)
        G2 = GameMatrix(G.entries + shift)
        u = r.dirichlet(np.ones(3))
        for params in (BD, DB):
            assert np.allclose(reaction_rhs(G, params, u),
                               reaction_rhs(G2, params, u), atol=1e-10)

    def test_vertices_are_fixed_points(self):
        r = np.random.default_rng(3)
        G = random_game(r)
        for k in range(3):
            u = np.zeros(3)
            u[k] = 1.0
            assert np.allclose(reaction_rhs(G, BD, u), 0.0, atol=1e-14)


class TestModifiedGame:
    def test_constant_game_unchanged(self):
        G = GameMatrix(np.full((3, 3), 1.5))
        for params in (BD, DB):
            M = modified_game(G, params)
            assert np.allclose(M.entries, G.entries, atol=1e-14)

    @given(st.integers(0, 10**6))
    def test_additive_part_symmetries(self, seed):
        # the symmetric-difference part D is skew, as is the
        # Death-Birth direct-difference part
        r = np.random.default_rng(seed)
        G = random_game(r)
        for params in (BD, DB):
            A = modified_game(G, params).entries - G.entries
            assert np.allclose(A, -A.T, atol=1e-12)

    @given(st.integers(0, 10**6))
    def test_reaction_is_p1_times_modified_replicator(self, seed):
        r = np.random.default_rng(seed)
        G = random_game(r)
        u = r.dirichlet(np.ones(3))
        for params, lead in ((BD, BD.p1), (DB, DB.pbar1)):
            M = modified_game(G, params)
            expect = lead * replicator_rhs(M, u)
            assert np.allclose(reaction_rhs(G, params, u), expect, atol=1e-10)


class TestCubicClassification:
    # effective games with p2 = 0 reduce the modified game to G itself
    NEUTRAL = ReactionParams(rule="BD", p1=1.0, p2=0.0)

    def classify(self, rows):
        return classify_2x2(GameMatrix(np.array(rows, dtype=float)),
                            self.NEUTRAL)

    def test_interior_attractor(self):
        out = self.classify([[0.0, 1.0], [1.0, 0.0]])
        assert out.case == "S1"
        assert out.ubar == pytest.approx(0.5)
        assert out.coefficients == pytest.approx((1.0, -2.0))

    def test_interior_repeller(self):
        out = self.classify([[1.0, 0.0], [0.0, 1.0]])
        assert out.case == "S2"
        assert out.ubar == pytest.approx(0.5)
        assert out.coefficients == pytest.approx((-1.0, 2.0))

    def test_one_sided_cases(self):
        assert self.classify([[1.0, 1.0], [0.0, 0.0]]).case == "S4"
        assert self.classify([[0.0, 0.0], [1.0, 1.0]]).case == "S3"

    def test_degenerate_boundary_raises(self):
        with pytest.raises(DegenerateCubicError):
            self.classify([[0.0, 0.0], [0.0, 0.0]])

    def test_coefficients_match_modified_entries(self):
        r = np.random.default_rng(8)
        G = GameMatrix(r.normal(size=(2, 2)))
        c, gamma = cubic_coefficients(G, BD)
        M = modified_game(G, BD).entries
        assert c == pytest.approx(M[0, 1] - M[1, 1], abs=1e-14)
        assert gamma == pytest.approx(M[0, 0] - M[0, 1] - M[1, 0] + M[1, 1],
                                      abs=1e-14)


class TestTarnitaStatistic:
    def test_constant_game_is_neutral(self):
        G = GameMatrix(np.full((3, 3), 4.0))
        for k in range(3):
            assert tarnita_statistic(G, k, BD.alphas()) == pytest.approx(0.0,
                                                                         abs=1e-14)
            res = favored_by_selection(G, BD, k)
            assert res.neutral and not res.favored

    @given(st.integers(0, 10**6))
    def test_statistics_sum_to_zero(self, seed):
        r = np.random.default_rng(seed)
        G = random_game(r)
        for alphas in (BD.alphas(), DB.alphas(), (0.4, -0.2, 0.7)):
            total = sum(tarnita_statistic(G, k, alphas) for k in range(3))
            assert abs(total) < 1e-12

    @given(st.integers(0, 10**6), finite, finite)
    def test_linearity_in_the_game(self, seed, a, b):
        r = np.random.default_rng(seed)
        G1, G2 = random_game(r), random_game(r)
        mix = GameMatrix(a * G1.entries + b * G2.entries)
        alphas = BD.alphas()
        for k in range(3):
            expect = (a * tarnita_statistic(G1, k, alphas)
                      + b * tarnita_statistic(G2, k, alphas))
            assert tarnita_statistic(mix, k, alphas) == pytest.approx(
                expect, abs=1e-9 * (1 + abs(expect)))

    def test_out_of_range_strategy_raises(self):
        G = GameMatrix(np.zeros((3, 3)))
        with pytest.raises(DimensionMismatchError):
            tarnita_statistic(G, 3, BD.alphas())

    def test_uniform_point_proportionality_100_random_games(self):
        r = np.random.default_rng(99)
        for _ in range(100):
            G = random_game(r)
            for params in (BD, DB):
                u = np.full(3, 1.0 / 3.0)
                phi = reaction_rhs(G, params, u)
                for k in range(3):
                    stat = tarnita_statistic(G, k, params.alphas())
                    assert phi[k] == pytest.approx(stat / 3.0, abs=1e-12)
                    # favored_by_selection re-checks internally and raises
                    favored_by_selection(G, params, k)


class TestSymbolicOracles:
    """Exact algebraic confirmation of the floating-point identities."""

    def test_uniform_point_proportionality_symbolic(self):
        g = sp.Matrix(3, 3, lambda i, j: sp.Symbol(f"g{i}{j}"))
        q1, q2, q12, kap = sp.symbols("q1 q2 q12 kap", positive=True)
        u = sp.Matrix([sp.Rational(1, 3)] * 3)
        D = sp.Matrix(3, 3, lambda i, j: g[i, i] - g[j, i] + g[i, j] - g[j, j])
        E = sp.Matrix(3, 3, lambda i, j: g[i, j] - g[j, i])
        rowm = [sum(g[k, j] for j in range(3)) / 3 for k in range(3)]
        colm = [sum(g[i, k] for i in range(3)) / 3 for k in range(3)]
        grand = sum(g[i, j] for i in range(3) for j in range(3)) / 9
        diagm = sum(g[k, k] for k in range(3)) / 3

        cases = {
            "BD": (g + (q2 / q1) * D, (q1, q2, q2)),
            "DB": (g + (q2 / q1) * D - (q12 / (kap * q1)) * E,
                   (q1, q2, q2 - q12 / kap)),
        }
        for M, (a1, a2, a3) in cases.values():
            Mu = M * u
            avg = (u.T * Mu)[0, 0]
            for k in range(3):
                phi_k = q1 * u[k] * (Mu[k] - avg)
                stat_k = (a1 * (rowm[k] - grand) + a2 * (g[k, k] - diagm)
                          + a3 * (rowm[k] - colm[k]))
                assert sp.simplify(phi_k - stat_k / 3) == 0

    def test_two_strategy_sigma_condition_symbolic(self):
        # the n=2 statistic factors through sigma (G11-G22) + (G12-G21)
        h = sp.Matrix(2, 2, lambda i, j: sp.Symbol(f"h{i}{j}"))
        a1, a2, a3 = sp.symbols("a1 a2 a3", positive=True)
        rm = [(h[k, 0] + h[k, 1]) / 2 for k in range(2)]
        cm = [(h[0, k] + h[1, k]) / 2 for k in range(2)]
        gr = sum(h[i, j] for i in range(2) for j in range(2)) / 4
        dm = (h[0, 0] + h[1, 1]) / 2
        stat = (a1 * (rm[0] - gr) + a2 * (h[0, 0] - dm)
                + a3 * (rm[0] - cm[0]))
        sigma = (a1 + 2 * a2) / (a1 + 2 * a3)
        collapsed = sigma * (h[0, 0] - h[1, 1]) + (h[0, 1] - h[1, 0])
        factor = sp.simplify(stat / collapsed)
        assert sp.simplify(factor - (a1 + 2 * a3) / 4) == 0

    def test_nearest_neighbor_sigma_value(self, nn3):
        from torus_games.lattice import kappa
        k = kappa(nn3)
        assert (k + 1) / (k - 1) == pytest.approx(1.4, abs=1e-12)
