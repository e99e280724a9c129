#include "afc/diagnostics.hpp"
#include "afc/estimation.hpp"
#include "afc/model.hpp"
#include "afc/quadrature.hpp"
#include "afc/sampler.hpp"
#include "afc/sim_study.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

namespace py = pybind11;
using namespace afc;

namespace {

std::vector<Observation> to_observations(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<Observation> data;
    data.reserve(pairs.size());
    for (const auto& [x, y] : pairs) data.push_back({x, y});
    return data;
}

py::dict fit_to_dict(const FitResult& fit) {
    py::dict d;
    d["family"] = family_name(fit.family);
    d["direction"] = direction_name(fit.direction);
    d["method"] = method_name(fit.method);
    d["alpha"] = fit.marginal.alpha;
    d["beta"] = fit.dependence.beta;
    d["lambda"] = fit.marginal.shape;
    d["gamma"] = fit.dependence.gamma;
    d["tau"] = fit.dependence.tau;
    d["loglik"] = fit.loglik;
    d["aic"] = fit.aic;
    d["converged"] = fit.converged;
    d["iterations"] = fit.iterations;
    d["tau_clamped"] = fit.tau_clamped;
    d["rho"] = fit.rho ? py::object(py::float_(*fit.rho)) : py::object(py::none());
    return d;
}

} // namespace

PYBIND11_MODULE(_afcm, m) {
    m.doc() = "bivariate accelerated-failure conditional models";

    py::enum_<Family>(m, "Family")
        .value("logistic", Family::logistic)
        .value("gumbel", Family::gumbel)
        .value("laplace", Family::laplace)
        .value("cauchy", Family::cauchy)
        .value("normal", Family::normal);

    py::enum_<Direction>(m, "Direction")
        .value("positive", Direction::positive)
        .value("negative", Direction::negative);

    py::class_<WeibullParams>(m, "WeibullParams")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("shape"))
        .def_readwrite("alpha", &WeibullParams::alpha)
        .def_readwrite("shape", &WeibullParams::shape);

    py::class_<DependenceSpec>(m, "DependenceSpec")
        .def(py::init([](double beta, double gamma, double tau, Direction direction) {
                 return DependenceSpec{beta, gamma, tau, direction};
             }),
             py::arg("beta"), py::arg("gamma"), py::arg("tau"),
             py::arg("direction") = Direction::positive)
        .def_readwrite("beta", &DependenceSpec::beta)
        .def_readwrite("gamma", &DependenceSpec::gamma)
        .def_readwrite("tau", &DependenceSpec::tau)
        .def_readwrite("direction", &DependenceSpec::direction);

    py::class_<AfcModel>(m, "AfcModel")
        .def(py::init<Family, WeibullParams, DependenceSpec>(), py::arg("family"),
             py::arg("marginal"), py::arg("dependence"))
        .def_property_readonly("family", &AfcModel::family)
        .def_property_readonly("marginal", &AfcModel::marginal)
        .def_property_readonly("dependence", &AfcModel::dependence)
        .def("mu", &AfcModel::mu, py::arg("x"))
        .def("mu_deriv", &AfcModel::mu_deriv, py::arg("x"))
        .def("joint_survival", &AfcModel::joint_survival, py::arg("x"), py::arg("y"))
        .def("joint_density", &AfcModel::joint_density, py::arg("x"), py::arg("y"))
        .def("log_joint_density", &AfcModel::log_joint_density, py::arg("x"), py::arg("y"))
        .def("log_likelihood",
             [](const AfcModel& model, const std::vector<std::pair<double, double>>& data) {
                 return model.log_likelihood(to_observations(data));
             })
        .def("covariance", &AfcModel::covariance)
        .def("correlation", &AfcModel::correlation);

    m.def("rho_max", &rho_max, py::arg("family"), py::arg("shape"));
    m.def("weibull_survival", &weibull_survival);
    m.def("weibull_density", &weibull_density);
    m.def("weibull_quantile", &weibull_quantile);
    m.def("family_survival", &family_survival);
    m.def("family_density", &family_density);
    m.def("family_quantile", &family_quantile);

    m.def(
        "sample",
        [](const AfcModel& model, std::size_t n, std::uint64_t seed,
           std::optional<std::size_t> burn_in, std::size_t thin) {
            ChainConfig cfg;
            cfg.n_draws = n;
            cfg.seed = seed;
            cfg.burn_in = burn_in;
            cfg.thin = thin;
            const ChainOutput out = run_chain(model, cfg);
            std::vector<std::pair<double, double>> draws;
            draws.reserve(out.draws.size());
            for (const auto& obs : out.draws) draws.emplace_back(obs.x, obs.y);
            py::dict result;
            result["draws"] = draws;
            result["acceptance_rate"] = out.acceptance_rate;
            return result;
        },
        py::arg("model"), py::arg("n"), py::arg("seed") = 1,
        py::arg("burn_in") = py::none(), py::arg("thin") = 5);

    m.def(
        "mme",
        [](const std::vector<std::pair<double, double>>& data, Family k, Direction d) {
            return fit_to_dict(mme(to_observations(data), k, d));
        },
        py::arg("data"), py::arg("family"), py::arg("direction") = Direction::positive);

    m.def(
        "mle",
        [](const std::vector<std::pair<double, double>>& data, Family k, Direction d) {
            return fit_to_dict(mle(to_observations(data), k, d));
        },
        py::arg("data"), py::arg("family"), py::arg("direction") = Direction::positive);

    m.def(
        "fit_families",
        [](const std::vector<std::pair<double, double>>& data,
           const std::vector<Family>& families, Direction d) {
            const auto obs = to_observations(data);
            std::vector<FitResult> fits;
            for (Family k : families) fits.push_back(mle(obs, k, d));
            const AicRanking ranking = aic_compare(fits);
            py::list out;
            for (std::size_t i = 0; i < fits.size(); ++i) {
                py::dict d_fit = fit_to_dict(fits[i]);
                d_fit["selected"] = (i == ranking.selected);
                out.append(d_fit);
            }
            return out;
        },
        py::arg("data"), py::arg("families"), py::arg("direction") = Direction::positive);

    m.def("wald_ci", &wald_ci, py::arg("estimate"), py::arg("se"), py::arg("level") = 0.95);
    m.def(
        "pearson",
        [](const std::vector<std::pair<double, double>>& data) {
            return pearson(to_observations(data));
        },
        py::arg("data"));
    m.def("hoeffding_covariance",
          [](const AfcModel& model) { return hoeffding_covariance(model); });

    m.attr("__version__") = "0.1.0";
}
