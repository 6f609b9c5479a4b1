// SPDX-License-Identifier: MIT
// Python bindings for the core operations: kernels, posteriors, confidence
// constants, environments, and the algorithm runners.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpband/baselines.hpp"
#include "gpband/confidence.hpp"
#include "gpband/contextual_bandit.hpp"
#include "gpband/env.hpp"
#include "gpband/posterior.hpp"
#include "gpband/toys.hpp"
#include "gpband/tree_bandit.hpp"
#include "gpband/zoom_bandit.hpp"

namespace py = pybind11;
using namespace gpband;

PYBIND11_MODULE(gpband_py, m) {
  m.doc() = "Adaptive Gaussian-process bandits: kernels, posteriors, environments, runners";

  py::class_<Envelope>(m, "Envelope")
      .def_readonly("coef", &Envelope::coef)
      .def_readonly("alpha", &Envelope::alpha)
      .def_readonly("delta", &Envelope::delta)
      .def("g", &Envelope::g, py::arg("r"))
      .def("rescaled", &Envelope::rescaled, py::arg("scale"));

  py::class_<Kernel>(m, "Kernel")
      .def_static("squared_exp", &Kernel::squared_exp, py::arg("dims"), py::arg("lengthscale"),
                  py::arg("variance"), py::arg("offset") = 0)
      .def_static("matern12", &Kernel::matern12, py::arg("dims"), py::arg("lengthscale"),
                  py::arg("variance"), py::arg("offset") = 0)
      .def_static("matern32", &Kernel::matern32, py::arg("dims"), py::arg("lengthscale"),
                  py::arg("variance"), py::arg("offset") = 0)
      .def_static("matern52", &Kernel::matern52, py::arg("dims"), py::arg("lengthscale"),
                  py::arg("variance"), py::arg("offset") = 0)
      .def_static("rational_quadratic", &Kernel::rational_quadratic, py::arg("dims"),
                  py::arg("lengthscale"), py::arg("variance"), py::arg("shape_c1"),
                  py::arg("shape_c2"), py::arg("offset") = 0)
      .def_static("triangle", &Kernel::triangle, py::arg("dims"), py::arg("lengthscale"),
                  py::arg("variance"), py::arg("offset") = 0)
      .def_static("product", &Kernel::product, py::arg("a"), py::arg("b"))
      .def("__call__",
           [](const Kernel& k, const Point& x, const Point& y) { return k(x, y); },
           py::arg("x"), py::arg("y"))
      .def("input_dims", &Kernel::input_dims)
      .def("induced_dist", &Kernel::induced_dist, py::arg("x"), py::arg("y"))
      .def("envelope", &Kernel::envelope);

  py::class_<PosteriorStats>(m, "PosteriorStats")
      .def_readonly("mean", &PosteriorStats::mean)
      .def_readonly("sd", &PosteriorStats::sd);

  py::class_<Posterior>(m, "Posterior")
      .def(py::init<Kernel, double>(), py::arg("kernel"), py::arg("noise_var"))
      .def("update", &Posterior::update, py::arg("x"), py::arg("y"))
      .def("update_batch", &Posterior::update_batch, py::arg("xs"), py::arg("ys"))
      .def("query", &Posterior::query, py::arg("x"))
      .def("count", &Posterior::count);

  m.def("info_gain", &info_gain, py::arg("kernel"), py::arg("noise_var"), py::arg("xs"));

  py::class_<ConfidenceConfig>(m, "ConfidenceConfig")
      .def_readonly("env", &ConfidenceConfig::env)
      .def_readonly("rho", &ConfidenceConfig::rho)
      .def_readonly("v1", &ConfidenceConfig::v1)
      .def_readonly("n", &ConfidenceConfig::n)
      .def_readonly("sigma", &ConfidenceConfig::sigma)
      .def_readonly("theory_scale", &ConfidenceConfig::theory_scale);

  py::enum_<BetaMode>(m, "BetaMode")
      .value("TightOddN", BetaMode::TightOddN)
      .value("Worst", BetaMode::Worst);

  m.def("make_confidence_config", &make_confidence_config, py::arg("envelope"), py::arg("dims"),
        py::arg("n_split"), py::arg("n"), py::arg("u"), py::arg("sigma"),
        py::arg("theory_scale") = 1.0);
  m.def("max_depth", &max_depth, py::arg("cfg"));
  m.def("beta_n", &beta_n, py::arg("cfg"), py::arg("mode"), py::arg("h"));
  m.def("beta_zoom", &beta_zoom, py::arg("cfg"));
  m.def("v_h", &v_h, py::arg("cfg"), py::arg("h"));
  m.def("w_cap", &w_cap, py::arg("cfg"), py::arg("level"));
  m.def("r_min", &r_min, py::arg("cfg"));

  py::class_<Box>(m, "Box")
      .def(py::init<Point, Point>(), py::arg("lower"), py::arg("upper"))
      .def_readonly("lower", &Box::lower)
      .def_readonly("upper", &Box::upper)
      .def("dims", &Box::dims)
      .def("center", &Box::center)
      .def("contains", &Box::contains, py::arg("p"));
  m.def("unit_box", &unit_box, py::arg("dims"));

  py::class_<Environment>(m, "Environment")
      .def("query", &Environment::query, py::arg("x"))
      .def("true_value", &Environment::true_value, py::arg("x"))
      .def("best_value", &Environment::best_value)
      .def("best_is_exact", &Environment::best_is_exact)
      .def("noise_sigma", &Environment::noise_sigma)
      .def("domain", &Environment::domain, py::return_value_policy::reference_internal);

  py::class_<GridGPEnv, Environment>(m, "GridGPEnv")
      .def(py::init<Kernel, Box, std::size_t, double, std::uint64_t>(), py::arg("kernel"),
           py::arg("domain"), py::arg("res_per_axis"), py::arg("sigma"), py::arg("seed"))
      .def("grid", &GridGPEnv::grid)
      .def("revealed_count", &GridGPEnv::revealed_count);

  py::class_<ContextualGPEnv>(m, "ContextualGPEnv")
      .def(py::init<Kernel, Box, Box, std::size_t, double, std::uint64_t>(),
           py::arg("joint_kernel"), py::arg("context_box"), py::arg("action_box"),
           py::arg("res_per_axis"), py::arg("sigma"), py::arg("seed"))
      .def("next_context", &ContextualGPEnv::next_context)
      .def("query", &ContextualGPEnv::query, py::arg("context"), py::arg("action"))
      .def("true_value", &ContextualGPEnv::true_value, py::arg("context"), py::arg("action"))
      .def("best_value_for", &ContextualGPEnv::best_value_for, py::arg("context"))
      .def("context_grid", &ContextualGPEnv::context_grid)
      .def("noise_sigma", &ContextualGPEnv::noise_sigma);

  py::class_<ToyEnv1, Environment>(m, "ToyEnv1")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("coefficients", &ToyEnv1::coefficients)
      .def("argmax_point", &ToyEnv1::argmax_point);

  py::class_<ToyEnv2, Environment>(m, "ToyEnv2")
      .def(py::init<std::uint64_t>(), py::arg("seed"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("t", &TraceRow::t)
      .def_readonly("n_e", &TraceRow::n_e)
      .def_readonly("x", &TraceRow::x)
      .def_readonly("y", &TraceRow::y)
      .def_readonly("delta", &TraceRow::delta)
      .def_readonly("cum_regret", &TraceRow::cum_regret)
      .def_readonly("simple_regret", &TraceRow::simple_regret)
      .def_readonly("support", &TraceRow::support)
      .def_readonly("wall_ns", &TraceRow::wall_ns);

  py::class_<RunTrace>(m, "RunTrace")
      .def_readonly("rows", &RunTrace::rows)
      .def_readonly("recommendations", &RunTrace::recommendations)
      .def_readonly("final_recommendation", &RunTrace::final_recommendation)
      .def_readonly("best_value", &RunTrace::best_value)
      .def_readonly("best_exact", &RunTrace::best_exact)
      .def_readonly("total_wall_ns", &RunTrace::total_wall_ns);

  py::class_<TreeBanditOptions>(m, "TreeBanditOptions")
      .def(py::init<>())
      .def_readwrite("n_split", &TreeBanditOptions::n_split)
      .def_readwrite("beta_mode", &TreeBanditOptions::beta_mode)
      .def_readwrite("u", &TreeBanditOptions::u)
      .def_readwrite("theory_scale", &TreeBanditOptions::theory_scale)
      .def_readwrite("check_events", &TreeBanditOptions::check_events);

  py::class_<TreeEventStats>(m, "TreeEventStats")
      .def_readonly("beta_event_held", &TreeEventStats::beta_event_held)
      .def_readonly("max_delta_over_width", &TreeEventStats::max_delta_over_width)
      .def_readonly("eval_budget_respected", &TreeEventStats::eval_budget_respected);

  py::class_<TreeLeafInfo>(m, "TreeLeafInfo")
      .def_readonly("center", &TreeLeafInfo::center)
      .def_readonly("evals", &TreeLeafInfo::evals);

  py::class_<TreeBanditResult>(m, "TreeBanditResult")
      .def_readonly("trace", &TreeBanditResult::trace)
      .def_readonly("steps", &TreeBanditResult::steps)
      .def_readonly("refinements", &TreeBanditResult::refinements)
      .def_readonly("h_max", &TreeBanditResult::h_max)
      .def_readonly("beta", &TreeBanditResult::beta)
      .def_readonly("v_table", &TreeBanditResult::v_table)
      .def_readonly("leaves", &TreeBanditResult::leaves)
      .def_readonly("events", &TreeBanditResult::events)
      .def_readonly("row_depths", &TreeBanditResult::row_depths);

  m.def("run_tree_bandit", &run_tree_bandit, py::arg("env"), py::arg("kernel"), py::arg("n"),
        py::arg("options") = TreeBanditOptions{});
  m.def("run_tree_bandit_anytime", &run_tree_bandit_anytime, py::arg("env"), py::arg("kernel"),
        py::arg("n"), py::arg("n0"), py::arg("options") = TreeBanditOptions{});

  py::class_<ZoomBanditOptions>(m, "ZoomBanditOptions")
      .def(py::init<>())
      .def_readwrite("u", &ZoomBanditOptions::u)
      .def_readwrite("theory_scale", &ZoomBanditOptions::theory_scale)
      .def_readwrite("check_events", &ZoomBanditOptions::check_events)
      .def_readwrite("verify_cover_each_round", &ZoomBanditOptions::verify_cover_each_round);

  py::class_<ZoomEventStats>(m, "ZoomEventStats")
      .def_readonly("beta_event_held", &ZoomEventStats::beta_event_held)
      .def_readonly("repeat_budget_respected", &ZoomEventStats::repeat_budget_respected)
      .def_readonly("cover_always_held", &ZoomEventStats::cover_always_held);

  py::class_<ZoomPointInfo>(m, "ZoomPointInfo")
      .def_readonly("x", &ZoomPointInfo::x)
      .def_readonly("level", &ZoomPointInfo::level)
      .def_readonly("radius", &ZoomPointInfo::radius)
      .def_readonly("evals", &ZoomPointInfo::evals);

  py::class_<ZoomBanditResult>(m, "ZoomBanditResult")
      .def_readonly("trace", &ZoomBanditResult::trace)
      .def_readonly("steps", &ZoomBanditResult::steps)
      .def_readonly("adds", &ZoomBanditResult::adds)
      .def_readonly("shrinks", &ZoomBanditResult::shrinks)
      .def_readonly("beta", &ZoomBanditResult::beta)
      .def_readonly("r_min", &ZoomBanditResult::r_min)
      .def_readonly("w_table", &ZoomBanditResult::w_table)
      .def_readonly("active", &ZoomBanditResult::active)
      .def_readonly("events", &ZoomBanditResult::events)
      .def_readonly("row_levels", &ZoomBanditResult::row_levels);

  m.def("run_zoom_bandit", &run_zoom_bandit, py::arg("env"), py::arg("kernel"), py::arg("n"),
        py::arg("options") = ZoomBanditOptions{});
  m.def("run_zoom_bandit_anytime", &run_zoom_bandit_anytime, py::arg("env"), py::arg("kernel"),
        py::arg("n"), py::arg("n0"), py::arg("options") = ZoomBanditOptions{});

  py::class_<ContextualBanditOptions>(m, "ContextualBanditOptions")
      .def(py::init<>())
      .def_readwrite("u", &ContextualBanditOptions::u)
      .def_readwrite("theory_scale", &ContextualBanditOptions::theory_scale)
      .def_readwrite("check_candidates", &ContextualBanditOptions::check_candidates);

  py::class_<ContextualBanditResult>(m, "ContextualBanditResult")
      .def_readonly("trace", &ContextualBanditResult::trace)
      .def_readonly("steps", &ContextualBanditResult::steps)
      .def_readonly("refinements", &ContextualBanditResult::refinements)
      .def_readonly("h_max", &ContextualBanditResult::h_max)
      .def_readonly("beta", &ContextualBanditResult::beta)
      .def_readonly("leaf_count", &ContextualBanditResult::leaf_count)
      .def_readonly("row_depths", &ContextualBanditResult::row_depths)
      .def_readonly("row_contexts", &ContextualBanditResult::row_contexts);

  m.def("run_contextual_bandit", &run_contextual_bandit, py::arg("env"), py::arg("joint_kernel"),
        py::arg("n_contexts"), py::arg("options") = ContextualBanditOptions{});

  m.def("run_random_search", &run_random_search, py::arg("env"), py::arg("n"), py::arg("seed"));

  py::class_<GpUcbResult>(m, "GpUcbResult")
      .def_readonly("trace", &GpUcbResult::trace)
      .def_readonly("beta", &GpUcbResult::beta)
      .def_readonly("grid_size", &GpUcbResult::grid_size);
  m.def("run_gp_ucb", &run_gp_ucb, py::arg("env"), py::arg("kernel"), py::arg("n"),
        py::arg("res_per_axis"), py::arg("u") = 2.0);
  m.def("gp_ucb_theoretical_grid", &gp_ucb_theoretical_grid, py::arg("t"), py::arg("dims"));

  py::class_<Toy1OneShot>(m, "Toy1OneShot")
      .def_readonly("events_held", &Toy1OneShot::events_held)
      .def_readonly("success", &Toy1OneShot::success);
  m.def("toy1_one_shot", &toy1_one_shot, py::arg("env"));

  py::class_<GammaRow>(m, "GammaRow")
      .def_readonly("n", &GammaRow::n)
      .def_readonly("closed_form", &GammaRow::closed_form)
      .def_readonly("series", &GammaRow::series)
      .def_readonly("computed", &GammaRow::computed);
  m.def("toy1_gamma_report", &toy1_gamma_report, py::arg("delta"), py::arg("sigma"),
        py::arg("ns"));

  py::class_<Toy2StrategyResult>(m, "Toy2StrategyResult")
      .def_readonly("xs", &Toy2StrategyResult::xs)
      .def_readonly("ys", &Toy2StrategyResult::ys)
      .def_readonly("regret_curve", &Toy2StrategyResult::regret_curve)
      .def_readonly("cum_regret", &Toy2StrategyResult::cum_regret)
      .def_readonly("e4_held", &Toy2StrategyResult::e4_held)
      .def_readonly("e5_held", &Toy2StrategyResult::e5_held);
  m.def("toy2_oracle_strategy", &toy2_oracle_strategy, py::arg("env"), py::arg("n"));
}
