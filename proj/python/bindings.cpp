#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netshare/config.hpp"
#include "netshare/intensity.hpp"
#include "netshare/interference.hpp"
#include "netshare/montecarlo.hpp"
#include "netshare/optimize.hpp"
#include "netshare/rate.hpp"
#include "netshare/scenario.hpp"
#include "netshare/specfun.hpp"
#include "netshare/workflows.hpp"

namespace py = pybind11;
using namespace netshare;

PYBIND11_MODULE(_netshare, m) {
  m.doc() = "Stochastic-geometry rate analysis of two-operator cellular networks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<LinkState>(m, "LinkState").value("LOS", LinkState::Los).value("NLOS", LinkState::Nlos);
  py::enum_<NoiseBandwidth>(m, "NoiseBandwidth")
      .value("PER_OPERATOR", NoiseBandwidth::PerOperator)
      .value("COMBINED", NoiseBandwidth::Combined);
  py::enum_<SimMode>(m, "SimMode")
      .value("NONSHARING_OP1", SimMode::NonsharingOp1)
      .value("NONSHARING_OP2", SimMode::NonsharingOp2)
      .value("SHARING", SimMode::Sharing);
  py::enum_<Objective>(m, "Objective")
      .value("NONSHARING", Objective::NonSharing)
      .value("SHARING", Objective::Sharing);

  py::class_<LinkStateModel>(m, "LinkStateModel")
      .def(py::init<>())
      .def(py::init([](double qi, double qo, double d) { return LinkStateModel{qi, qo, d}; }),
           py::arg("q_los_inner"), py::arg("q_los_outer"), py::arg("ball_radius_d"))
      .def_readwrite("q_los_inner", &LinkStateModel::q_los_inner)
      .def_readwrite("q_los_outer", &LinkStateModel::q_los_outer)
      .def_readwrite("ball_radius_d", &LinkStateModel::ball_radius_d);

  py::class_<PathLossParams>(m, "PathLossParams")
      .def(py::init<>())
      .def(py::init([](double k, double al, double an) { return PathLossParams{k, al, an}; }),
           py::arg("k"), py::arg("alpha_los"), py::arg("alpha_nlos"))
      .def_readwrite("k", &PathLossParams::k)
      .def_readwrite("alpha_los", &PathLossParams::alpha_los)
      .def_readwrite("alpha_nlos", &PathLossParams::alpha_nlos);

  py::class_<OperatorParams>(m, "OperatorParams")
      .def(py::init<>())
      .def(py::init([](double l, double w, double p, double nf) { return OperatorParams{l, w, p, nf}; }),
           py::arg("density_lambda"), py::arg("bandwidth_w"), py::arg("power_p"),
           py::arg("noise_figure_nf"))
      .def_readwrite("density_lambda", &OperatorParams::density_lambda)
      .def_readwrite("bandwidth_w", &OperatorParams::bandwidth_w)
      .def_readwrite("power_p", &OperatorParams::power_p)
      .def_readwrite("noise_figure_nf", &OperatorParams::noise_figure_nf);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("op1", &Scenario::op1)
      .def_readwrite("op2", &Scenario::op2)
      .def_readwrite("link_state", &Scenario::link_state)
      .def_readwrite("path_loss", &Scenario::path_loss)
      .def_readwrite("carrier_freq_fc", &Scenario::carrier_freq_fc)
      .def("validate", &Scenario::validate)
      .def("swapped", &Scenario::swapped);

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
      .def_readwrite("outer_truncation_quantile", &QuadratureConfig::outer_truncation_quantile);

  py::class_<RateOptions>(m, "RateOptions")
      .def(py::init<>())
      .def_readwrite("sharing_noise_bandwidth", &RateOptions::sharing_noise_bandwidth)
      .def_readwrite("noise_override_w", &RateOptions::noise_override_w);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("window_radius", &SimConfig::window_radius)
      .def_readwrite("num_realizations", &SimConfig::num_realizations)
      .def_readwrite("rng_seed", &SimConfig::rng_seed)
      .def_readwrite("threads", &SimConfig::threads);

  py::class_<DensitySearch>(m, "DensitySearch")
      .def(py::init<>())
      .def_readwrite("lambda_min", &DensitySearch::lambda_min)
      .def_readwrite("lambda_max", &DensitySearch::lambda_max)
      .def_readwrite("grid_points", &DensitySearch::grid_points)
      .def_readwrite("refine_iters", &DensitySearch::refine_iters)
      .def_readwrite("objective", &DensitySearch::objective)
      .def_readwrite("independent", &DensitySearch::independent);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("scenario", &RunConfig::scenario)
      .def_readwrite("quadrature", &RunConfig::quadrature)
      .def_readwrite("rate", &RunConfig::rate)
      .def_readwrite("sim", &RunConfig::sim)
      .def_readwrite("search", &RunConfig::search);

  py::class_<RateReport>(m, "RateReport")
      .def_readonly("r_bar_1", &RateReport::r_bar_1)
      .def_readonly("r_bar_2", &RateReport::r_bar_2)
      .def_readonly("r_tilde_1", &RateReport::r_tilde_1)
      .def_readonly("r_tilde_2", &RateReport::r_tilde_2)
      .def_readonly("r_nsh", &RateReport::r_nsh)
      .def_readonly("r_sh", &RateReport::r_sh)
      .def_readonly("err_r_bar_1", &RateReport::err_r_bar_1)
      .def_readonly("err_r_bar_2", &RateReport::err_r_bar_2)
      .def_readonly("err_r_tilde_1", &RateReport::err_r_tilde_1)
      .def_readonly("err_r_tilde_2", &RateReport::err_r_tilde_2);

  py::class_<RateEstimate>(m, "RateEstimate")
      .def_readonly("mean_rate_bit_s_hz", &RateEstimate::mean_rate_bit_s_hz)
      .def_readonly("stderr_bit_s_hz", &RateEstimate::stderr_bit_s_hz)
      .def_readonly("no_coverage_fraction", &RateEstimate::no_coverage_fraction)
      .def_readonly("by_serving_operator", &RateEstimate::by_serving_operator);

  py::class_<ProfilePoint>(m, "ProfilePoint")
      .def_readonly("lambda_", &ProfilePoint::lambda)
      .def_readonly("rate", &ProfilePoint::rate);

  py::class_<DensityOptimum>(m, "DensityOptimum")
      .def_readonly("lambda_star", &DensityOptimum::lambda_star)
      .def_readonly("lambda2_star", &DensityOptimum::lambda2_star)
      .def_readonly("rate_star", &DensityOptimum::rate_star)
      .def_readonly("profile", &DensityOptimum::profile)
      .def_readonly("boundary", &DensityOptimum::boundary)
      .def_readonly("plateau", &DensityOptimum::plateau)
      .def_readonly("neighbour_check", &DensityOptimum::neighbour_check);

  m.def("pathloss_constant", &pathloss_constant, py::arg("fc"));
  m.def("noise_power", &noise_power, py::arg("w"), py::arg("nf"));
  m.def("path_loss", &path_loss, py::arg("r"), py::arg("state"), py::arg("params"));
  m.def("link_state_prob", &link_state_prob, py::arg("r"), py::arg("model"));

  m.def("hyp2f1_interference", &hyp2f1_interference, py::arg("alpha"), py::arg("w"));
  m.def("hyp2f1_series", &hyp2f1_series, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("w"),
        py::arg("nmax"));

  m.def("cdf_min_pathloss",
        [](double x, const Scenario& s, int op) { return cdf_min_pathloss(x, IntensityContext::of(s, op)); },
        py::arg("x"), py::arg("scenario"), py::arg("operator_index"));
  m.def("pdf_min_pathloss",
        [](double x, const Scenario& s, int op) { return pdf_min_pathloss(x, IntensityContext::of(s, op)); },
        py::arg("x"), py::arg("scenario"), py::arg("operator_index"));

  m.def("mgf_nonsharing",
        [](double z, double x, int i, const Scenario& s) { return mgf_nonsharing(z, x, i, s); },
        py::arg("z"), py::arg("x"), py::arg("operator_index"), py::arg("scenario"));
  m.def("mgf_sharing", [](double z, double x, const Scenario& s) { return mgf_sharing(z, x, s); },
        py::arg("z"), py::arg("x"), py::arg("scenario"));

  m.def("j_bar", &j_bar, py::arg("x"), py::arg("operator_index"), py::arg("scenario"),
        py::arg("qc") = QuadratureConfig{}, py::arg("options") = RateOptions{});
  m.def("j_tilde", &j_tilde, py::arg("x"), py::arg("operator_index"), py::arg("scenario"),
        py::arg("qc") = QuadratureConfig{}, py::arg("options") = RateOptions{});
  m.def("rate_nonsharing",
        [](int i, const Scenario& s, const QuadratureConfig& qc, const RateOptions& o) {
          return rate_nonsharing(i, s, qc, o);
        },
        py::arg("operator_index"), py::arg("scenario"), py::arg("qc") = QuadratureConfig{},
        py::arg("options") = RateOptions{});
  m.def("rate_sharing",
        [](int i, const Scenario& s, const QuadratureConfig& qc, const RateOptions& o) {
          return rate_sharing(i, s, qc, o);
        },
        py::arg("operator_index"), py::arg("scenario"), py::arg("qc") = QuadratureConfig{},
        py::arg("options") = RateOptions{});
  m.def("aggregate_rates",
        [](const Scenario& s, const QuadratureConfig& qc, const RateOptions& o) {
          return aggregate_rates(s, qc, o);
        },
        py::arg("scenario"), py::arg("qc") = QuadratureConfig{}, py::arg("options") = RateOptions{});

  m.def("estimate_rate", &estimate_rate, py::arg("scenario"), py::arg("sim"), py::arg("mode"),
        py::arg("options") = RateOptions{}, py::call_guard<py::gil_scoped_release>());
  m.def("optimal_density", &optimal_density, py::arg("scenario"), py::arg("search"),
        py::arg("qc") = QuadratureConfig{}, py::arg("options") = RateOptions{},
        py::call_guard<py::gil_scoped_release>());

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
  m.def("render_config", &render_config, py::arg("config"));

  m.attr("__version__") = kToolVersion;
}
