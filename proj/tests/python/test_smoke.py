import math

import pytest

import seqwls


def test_budget_values():
    assert seqwls.n_eps(0, 0.01) == 0
    assert seqwls.n_eps(1, 0.01) == 35
    assert seqwls.n_eps(2, 0.01) == 79
    assert seqwls.n_eps(50, 0.01) == 3002
    assert seqwls.n_uniform(1, 0.01) == 38
    assert seqwls.budget(50, 0.01) == 3002
    assert seqwls.budget(1, 0.01, per_step=True) == 38
    assert math.isclose(seqwls.harmonic_cost_sum(2, 0.01), 35 / 2 + 79 / 3)
    with pytest.raises(ValueError):
        seqwls.n_eps(1, 0.0)
    exact, simplified = seqwls.chernoff_tail(0.0, 1.0)
    assert exact == simplified == 1.0


def test_basis_evaluations():
    hermite = seqwls.Basis.hermite()
    assert hermite.eval(1, 3.7) == 1.0
    assert math.isclose(hermite.eval(3, 2.0), 3 / math.sqrt(2), rel_tol=1e-12)
    assert seqwls.haar_eval(0, 0, 0.25) == 1.0
    assert seqwls.haar_eval(0, 0, 0.75) == -1.0
    assert hermite.christoffel(2, 2.0) == 5.0
    assert hermite.optimal_weight(2, 2.0) == 0.4

    tree = seqwls.Basis.haar_random_tree(7, 8)
    assert tree.max_dim() == 8
    assert tree.nodes[0] == seqwls.HaarNode(0, 0)
    with pytest.raises(seqwls.SingularWeightError):
        tree.optimal_weight(1, 1.0)
    with pytest.raises(ValueError):
        seqwls.Basis.haar_tree([(1, 0), (0, 0)])  # root must come first


def test_wls_hand_example():
    hermite = seqwls.Basis.hermite()
    g = seqwls.assemble_gramian(hermite, 2, [0.0, 1.0])
    assert g == [[1.5, 0.5], [0.5, 0.5]]
    assert math.isclose(seqwls.spectral_deviation(g), math.sqrt(0.5), rel_tol=1e-12)
    assert math.isclose(seqwls.condition_number(g), 3 + 2 * math.sqrt(2), rel_tol=1e-10)
    c = seqwls.solve_spd(g, [1.5, 0.5])
    assert math.isclose(c[0], 1.0, abs_tol=1e-12)
    assert math.isclose(c[1], 0.0, abs_tol=1e-12)

    fit = seqwls.wls_fit(hermite, 2, [0.0, 1.0], [1.0, 1.0])
    assert not fit.accepted
    assert fit.coefficients == [0.0, 0.0]


def test_sequential_chain_is_deterministic():
    basis = seqwls.Basis.haar_random_tree(7, 8)

    def chain():
        rng = seqwls.RngStream(11, 0)
        ledger = seqwls.CostLedger()
        s = seqwls.SampleSet()
        for m in range(1, 5):
            s = seqwls.algorithm1_step(basis, s, seqwls.n_eps(m, 0.01), rng, ledger)
        return s, ledger

    s1, led1 = chain()
    s2, led2 = chain()
    assert s1.points == s2.points
    assert s1.step == 4
    assert len(s1.points) == seqwls.n_eps(4, 0.01)
    assert led1.total_cost(1) == 35
    assert led1.raw_draws() == led2.raw_draws() == led1.total_cost(4)


def test_algorithm3_bootstrap():
    hermite = seqwls.Basis.hermite()
    rng = seqwls.RngStream(3, 0)
    ledger = seqwls.CostLedger()
    s = seqwls.algorithm3_step(hermite, seqwls.SampleSet(), rng, ledger)
    assert s.step == 1
    assert len(s.points) == 1
    assert seqwls.assemble_gramian(hermite, 1, s.points) == [[1.0]]


def test_fit_recovers_members_of_the_space():
    hermite = seqwls.Basis.hermite()
    u = lambda x: 2.0 - x + 0.5 * (x * x - 1) / math.sqrt(2)
    rng = seqwls.RngStream(5, 0)
    xs = [seqwls.sample_mu(hermite, 3, rng) for _ in range(300)]
    fit = seqwls.wls_fit(hermite, 3, xs, [u(x) for x in xs])
    assert fit.accepted
    for got, want in zip(fit.coefficients, [2.0, -1.0, 0.5]):
        assert math.isclose(got, want, abs_tol=1e-8)
    assert seqwls.l2_error(hermite, 3, fit.coefficients, u) < 1e-8


def test_quantile_rows_and_verification():
    rows = seqwls.simulate_quantiles(basis="haar", alg=2, m_max=2, trials=5, seed=9)
    assert len(rows) == 2 * 2 * 7
    assert {m for m, _, _, _ in rows} == {1, 2}
    assert {stat for _, stat, _, _ in rows} == {"kappa", "cost_ratio"}
    assert all(value >= 1.0 for _, stat, _, value in rows if stat == "kappa")

    checks, violations = seqwls.verify_bounds()
    assert checks > 100000
    assert violations == []
