#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "covert/catching.hpp"
#include "covert/channel.hpp"
#include "covert/cli.hpp"
#include "covert/detection.hpp"
#include "covert/geometry.hpp"
#include "covert/params.hpp"
#include "covert/simulator.hpp"
#include "covert/splitting.hpp"

namespace py = pybind11;
using namespace covert;

namespace {

geometry::RepresentativeMode mode_of(const std::string& name) { return geometry::parse_mode(name); }

py::dict stratum_dict(const catching::Stratum& s) {
  py::dict d;
  d["s"] = s.s;
  d["d1"] = s.d1;
  d["d2"] = s.d2;
  d["p_dis"] = s.p_dis;
  d["d_bar"] = s.d_bar;
  d["d_slant"] = s.d_slant;
  d["p_md"] = s.p_md;
  d["p_catch_given_s"] = s.p_catch_given_s;
  return d;
}

}  // namespace

PYBIND11_MODULE(_covertsim, m) {
  m.doc() = "Covert LEO uplink simulator: analytic models and Monte-Carlo estimators";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<detection::ThresholdError>(m, "ThresholdError", PyExc_ArithmeticError);
  py::register_exception<splitting::ModelValidityError>(m, "ModelValidityError", PyExc_ValueError);

  py::class_<ScenarioConfig> cfg(m, "ScenarioConfig");
  cfg.def(py::init(&table1_defaults))
      .def_readwrite("p_a_dbw", &ScenarioConfig::p_a_dbw)
      .def_readwrite("g_a_db", &ScenarioConfig::g_a_db)
      .def_readwrite("g_b_db", &ScenarioConfig::g_b_db)
      .def_readwrite("g_w_db", &ScenarioConfig::g_w_db)
      .def_readwrite("k0", &ScenarioConfig::k0)
      .def_readwrite("eta_db", &ScenarioConfig::eta_db)
      .def_readwrite("m_bits", &ScenarioConfig::m_bits)
      .def_readwrite("sigma_w_dbm", &ScenarioConfig::sigma_w_dbm)
      .def_readwrite("sigma_b_dbm", &ScenarioConfig::sigma_b_dbm)
      .def_readwrite("delta", &ScenarioConfig::delta)
      .def_readwrite("l_s", &ScenarioConfig::l_s)
      .def_readwrite("u", &ScenarioConfig::u)
      .def_readwrite("d_ab", &ScenarioConfig::d_ab)
      .def_readwrite("h_w", &ScenarioConfig::h_w)
      .def_readwrite("v_w", &ScenarioConfig::v_w)
      .def_readwrite("r_a_proj", &ScenarioConfig::r_a_proj)
      .def_readwrite("r_w_proj", &ScenarioConfig::r_w_proj)
      .def_readwrite("alpha_los", &ScenarioConfig::alpha_los)
      .def_readwrite("alpha_nlos", &ScenarioConfig::alpha_nlos)
      .def_readwrite("t_c_minutes", &ScenarioConfig::t_c_minutes)
      .def_readwrite("lambda_per_min", &ScenarioConfig::lambda_per_min)
      .def_readwrite("beta_slots", &ScenarioConfig::beta_slots)
      .def("set", [](ScenarioConfig& c, const std::string& key, const std::string& value) {
        set_field(c, key, value);
      })
      .def("override", [](ScenarioConfig& c, const std::string& kv) { apply_override(c, kv); })
      .def("validate", [](const ScenarioConfig& c) { validate(c); })
      .def("hash", [](const ScenarioConfig& c) { return config_hash_hex(c); })
      .def("to_dict", [](const ScenarioConfig& c) {
        py::dict d;
        for (const auto& [k, v] : describe(c)) d[py::str(k)] = v;
        return d;
      })
      .def(py::self == py::self)
      .def("__repr__", [](const ScenarioConfig& c) { return "<ScenarioConfig " + config_hash_hex(c) + ">"; });

  m.def("load_config", [](const std::string& text) { return load_config(text); }, py::arg("text"));
  m.def("load_config_file", &load_config_file, py::arg("path"));
  m.def("field_names", &field_names);

  py::class_<channel::RateEstimate>(m, "RateEstimate")
      .def_readonly("mean_rate", &channel::RateEstimate::mean_rate)
      .def_readonly("std_error", &channel::RateEstimate::std_error)
      .def_readonly("trials", &channel::RateEstimate::trials)
      .def_readonly("seed", &channel::RateEstimate::seed)
      .def_readonly("degenerate", &channel::RateEstimate::degenerate);
  m.def("average_rate", &channel::average_rate, py::arg("cfg"), py::arg("trials") = 1000000,
        py::arg("seed") = 7, py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<geometry::DistanceLaw>(m, "DistanceLaw")
      .def(py::init<double>(), py::arg("side"))
      .def_property_readonly("side", &geometry::DistanceLaw::side)
      .def_property_readonly("max_distance", &geometry::DistanceLaw::max_distance)
      .def("pdf", &geometry::DistanceLaw::pdf)
      .def("cdf", &geometry::DistanceLaw::cdf)
      .def("interval_probability", &geometry::DistanceLaw::interval_probability)
      .def("representative_distance",
           [](const geometry::DistanceLaw& law, double d1, double d2, const std::string& mode) {
             return law.representative_distance(d1, d2, mode_of(mode));
           },
           py::arg("d1"), py::arg("d2"), py::arg("mode") = "paper-literal");

  m.def("false_alarm", &detection::false_alarm, py::arg("l"), py::arg("gamma_w"), py::arg("sigma_w2"));
  m.def("miss_detection", &detection::miss_detection, py::arg("l"), py::arg("gamma_w"), py::arg("g_aw"),
        py::arg("p_a"), py::arg("sigma_w2"));
  m.def("solve_threshold", &detection::solve_threshold, py::arg("l"), py::arg("delta"), py::arg("sigma_w2"));

  m.def(
      "catch_probability",
      [](int l, const ScenarioConfig& c, double r_bar, const std::string& mode, py::object symbols) {
        const double msg = symbols.is_none() ? static_cast<double>(c.m_bits) : symbols.cast<double>();
        const catching::CatchBreakdown b = catching::catch_probability(l, msg, c, r_bar, mode_of(mode));
        py::list strata;
        for (const auto& s : b.strata) strata.append(stratum_dict(s));
        py::dict d;
        d["p_ca"] = b.p_ca;
        d["s_m"] = b.s_m;
        d["threshold"] = b.threshold;
        d["strata"] = strata;
        return d;
      },
      py::arg("l"), py::arg("cfg"), py::arg("r_bar"), py::arg("mode") = "paper-literal",
      py::arg("message_symbols") = py::none());
  m.def("averaged_catch_probability", &catching::averaged_catch_probability, py::arg("l"),
        py::arg("message_symbols"), py::arg("cfg"), py::arg("r_bar"));
  m.def(
      "optimal_window",
      [](const ScenarioConfig& c, double r_bar, int l_max, const std::string& mode) {
        const catching::WindowOptimum o = catching::optimal_window(c, r_bar, l_max, mode_of(mode));
        std::vector<double> scan;
        for (const auto& p : o.scan) scan.push_back(p.p_ca);
        return py::make_tuple(o.l_star, o.p_ca_star, scan);
      },
      py::arg("cfg"), py::arg("r_bar"), py::arg("l_max") = 100, py::arg("mode") = "paper-literal");

  m.def("postponement_probability", [](const ScenarioConfig& c) {
    return splitting::postponement_probability(c.r_a_proj, geometry::DistanceLaw(c.u));
  });
  m.def(
      "overall_catch_probability",
      [](int n, int l, const ScenarioConfig& c, double r_bar, const std::string& mode) {
        return splitting::overall_catch_probability(n, l, c, r_bar, mode_of(mode)).p_ov;
      },
      py::arg("n"), py::arg("l"), py::arg("cfg"), py::arg("r_bar"), py::arg("mode") = "paper-literal");
  m.def(
      "optimal_chunks",
      [](const ScenarioConfig& c, int l, double r_bar, int n_max, const std::string& mode) {
        const splitting::ChunkOptimum o = splitting::optimal_chunks(c, l, r_bar, n_max, mode_of(mode));
        std::vector<double> scan;
        for (const auto& p : o.scan) scan.push_back(p.p_ov);
        return py::make_tuple(o.n_star, o.p_ov_star, scan);
      },
      py::arg("cfg"), py::arg("l"), py::arg("r_bar"), py::arg("n_max") = 30, py::arg("mode") = "paper-literal");

  py::class_<sim::ProportionEstimate>(m, "ProportionEstimate")
      .def_readonly("successes", &sim::ProportionEstimate::successes)
      .def_readonly("trials", &sim::ProportionEstimate::trials)
      .def_readonly("p_hat", &sim::ProportionEstimate::p_hat)
      .def_readonly("lower", &sim::ProportionEstimate::lower)
      .def_readonly("upper", &sim::ProportionEstimate::upper)
      .def_readonly("ci_halfwidth", &sim::ProportionEstimate::ci_halfwidth)
      .def("contains", &sim::ProportionEstimate::contains);
  py::class_<sim::CaseStats>(m, "CaseStats")
      .def_readonly("mean_covert", &sim::CaseStats::mean_covert)
      .def_readonly("std_dev", &sim::CaseStats::std_dev)
      .def_readonly("ci_halfwidth", &sim::CaseStats::ci_halfwidth)
      .def_readonly("mean_caught", &sim::CaseStats::mean_caught)
      .def_readonly("mean_slots_used", &sim::CaseStats::mean_slots_used)
      .def_readonly("trials", &sim::CaseStats::trials);

  auto opts = [](unsigned threads) {
    sim::SimOptions o;
    o.threads = threads;
    return o;
  };
  m.def(
      "estimate_catch",
      [opts](const ScenarioConfig& c, int l, int chunk_symbols, double r_bar, std::uint64_t trials,
             std::uint64_t seed, unsigned threads) {
        return sim::estimate_catch(c, l, chunk_symbols, r_bar, trials, seed, opts(threads));
      },
      py::arg("cfg"), py::arg("l"), py::arg("chunk_symbols"), py::arg("r_bar"), py::arg("trials"),
      py::arg("seed") = 7, py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "estimate_overall_catch",
      [opts](const ScenarioConfig& c, int n, int l, double r_bar, std::uint64_t trials, std::uint64_t seed,
             unsigned threads) {
        return sim::estimate_overall_catch(c, n, l, r_bar, trials, seed, opts(threads));
      },
      py::arg("cfg"), py::arg("n"), py::arg("l"), py::arg("r_bar"), py::arg("trials"), py::arg("seed") = 7,
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_case",
      [opts](int which, const ScenarioConfig& c, int n, int l, double r_bar, std::uint64_t trials,
             std::uint64_t seed, unsigned threads) {
        if (which != 1 && which != 2) throw py::value_error("case must be 1 or 2");
        const auto kind = which == 1 ? sim::CaseKind::kStopOnCatch : sim::CaseKind::kVoidMessage;
        return sim::run_case(kind, c, n, l, r_bar, trials, seed, opts(threads));
      },
      py::arg("case"), py::arg("cfg"), py::arg("n"), py::arg("l"), py::arg("r_bar"), py::arg("trials"),
      py::arg("seed") = 7, py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  // Returns (exit_code, stdout, stderr).
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
