import math

import pytest

import afcm


def reference_model(family=None, tau=0.5):
    family = afcm.Family.logistic if family is None else family
    return afcm.AfcModel(
        family,
        afcm.WeibullParams(alpha=1.0, shape=3.0),
        afcm.DependenceSpec(beta=2.0, gamma=-4.0, tau=tau),
    )


def test_version():
    assert afcm.__version__ == "0.1.0"


def test_model_evaluations():
    m = reference_model()
    assert m.mu(2.0) == pytest.approx(-2.0, abs=1e-13)
    assert m.joint_density(1.0, -3.0) > 0.0
    assert m.joint_survival(0.5, -3.96875) == pytest.approx(0.4412484512922977, abs=1e-12)
    assert math.exp(m.log_joint_density(1.0, -3.0)) == pytest.approx(
        m.joint_density(1.0, -3.0), rel=1e-12
    )
    assert m.correlation() == pytest.approx(0.06320610352191185, abs=1e-12)
    assert m.covariance() == pytest.approx(0.07441495929743743, abs=1e-13)


def test_invalid_models_raise():
    with pytest.raises(Exception):
        afcm.AfcModel(
            afcm.Family.gumbel,
            afcm.WeibullParams(alpha=1.0, shape=3.0),
            afcm.DependenceSpec(beta=2.0, gamma=-4.0, tau=0.5, direction=afcm.Direction.negative),
        )
    with pytest.raises(Exception):
        reference_model(tau=1.5)
    with pytest.raises(Exception):
        reference_model(afcm.Family.cauchy).correlation()


def test_rho_max():
    assert afcm.rho_max(afcm.Family.logistic, 1.0) == pytest.approx(
        math.sqrt(3.0) / math.pi, abs=1e-12
    )
    assert afcm.rho_max(afcm.Family.laplace, 1.0) == pytest.approx(
        math.sqrt(0.5), abs=1e-12
    )


def test_distribution_helpers():
    w = afcm.WeibullParams(1.0, 3.0)
    assert afcm.weibull_survival(w, 0.5) == pytest.approx(0.8824969025845955, abs=1e-12)
    x = afcm.weibull_quantile(w, 0.3)
    assert 1.0 - afcm.weibull_survival(w, x) == pytest.approx(0.3, abs=1e-12)
    assert afcm.family_density(afcm.Family.logistic, 0.0) == pytest.approx(0.25)
    assert afcm.family_quantile(afcm.Family.cauchy, 0.75) == pytest.approx(1.0, abs=1e-12)


def test_sampling_is_deterministic():
    m = reference_model()
    a = afcm.sample(m, n=500, seed=11)
    b = afcm.sample(m, n=500, seed=11)
    c = afcm.sample(m, n=500, seed=12)
    assert a["draws"] == b["draws"]
    assert a["draws"] != c["draws"]
    assert len(a["draws"]) == 500
    assert 0.0 < a["acceptance_rate"] <= 1.0
    assert all(x > 0.0 for x, _ in a["draws"])

    indep = afcm.sample(reference_model(tau=0.0), n=500, seed=11)
    assert indep["acceptance_rate"] == 1.0


def test_fitting_round_trip():
    m = reference_model()
    draws = afcm.sample(m, n=1000, seed=7)["draws"]

    ml = afcm.mle(draws, afcm.Family.logistic)
    assert ml["converged"]
    assert ml["method"] == "mle"
    assert abs(ml["alpha"] - 1.0) < 0.15
    assert abs(ml["lambda"] - 3.0) < 0.4
    assert abs(ml["gamma"] + 4.0) < 0.5
    assert ml["aic"] == pytest.approx(10.0 - 2.0 * ml["loglik"], rel=1e-12)
    assert ml["rho"] is not None

    mm = afcm.mme(draws, afcm.Family.logistic)
    assert mm["method"] == "mme"
    assert abs(mm["beta"] - 2.0) < 0.4

    cau = afcm.mle(draws, afcm.Family.cauchy)
    assert cau["rho"] is None


def test_fit_families_selection():
    draws = afcm.sample(reference_model(afcm.Family.laplace), n=1500, seed=3)["draws"]
    fits = afcm.fit_families(
        draws, [afcm.Family.logistic, afcm.Family.laplace, afcm.Family.cauchy]
    )
    assert len(fits) == 3
    assert sum(1 for f in fits if f["selected"]) == 1
    assert all(f["aic"] >= min(g["aic"] for g in fits) for f in fits)


def test_statistics_helpers():
    lo, hi = afcm.wald_ci(0.503, 0.094, 0.95)
    assert lo == pytest.approx(0.3187633854532349, abs=1e-9)
    assert hi == pytest.approx(0.6872366145467650, abs=1e-9)

    draws = afcm.sample(reference_model(), n=2000, seed=5)["draws"]
    assert abs(afcm.pearson(draws) - 0.063) < 0.1

    cov = afcm.hoeffding_covariance(reference_model())
    assert cov == pytest.approx(0.07441495929743743, abs=1e-6)
