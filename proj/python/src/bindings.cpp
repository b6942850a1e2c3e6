#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fiveprime/acceptance.hpp"
#include "fiveprime/counting.hpp"
#include "fiveprime/decomp.hpp"
#include "fiveprime/error.hpp"
#include "fiveprime/exppair.hpp"
#include "fiveprime/expsum.hpp"
#include "fiveprime/params.hpp"
#include "fiveprime/primes.hpp"
#include "fiveprime/quadrature.hpp"

namespace py = pybind11;
using namespace fiveprime;

namespace {

std::pair<std::string, std::string> as_fraction(const Rational& r) {
  return {numerator(r).str(), denominator(r).str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime tables, exponential sums, exponent pairs, solution counting and quadrature";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("c", &SystemParams::c)
      .def_readwrite("d", &SystemParams::d)
      .def_readwrite("alpha", &SystemParams::alpha)
      .def_readwrite("beta", &SystemParams::beta)
      .def_readwrite("N1", &SystemParams::N1)
      .def_readwrite("N2", &SystemParams::N2)
      .def_readwrite("lambda_cut", &SystemParams::lambda_cut)
      .def_readwrite("eta", &SystemParams::eta)
      .def_readwrite("log_power", &SystemParams::log_power)
      .def_readwrite("eps1", &SystemParams::eps1)
      .def_readwrite("eps2", &SystemParams::eps2)
      .def("validate", [](const SystemParams& p) { validate(p); });

  py::class_<DerivedScales>(m, "DerivedScales")
      .def_readonly("X", &DerivedScales::X)
      .def_readonly("eps1", &DerivedScales::eps1)
      .def_readonly("eps2", &DerivedScales::eps2)
      .def_readonly("K1", &DerivedScales::K1)
      .def_readonly("K2", &DerivedScales::K2)
      .def_readonly("tau1", &DerivedScales::tau1)
      .def_readonly("tau2", &DerivedScales::tau2)
      .def("windows_ordered", &DerivedScales::windows_ordered);

  m.def("derive_scales", &derive_scales, py::arg("params"));
  m.def(
      "classify_region",
      [](const DerivedScales& s, double x, double y) { return std::string(to_string(classify_region(s, x, y))); },
      py::arg("scales"), py::arg("x"), py::arg("y"));
  m.def("experiment_params", &experiment_params, py::arg("c"), py::arg("d"), py::arg("X"), py::arg("ratio"),
        py::arg("lambda_cut"), py::arg("eps1"), py::arg("eps2"), py::arg("target_scale") = 1.0);

  py::class_<PrimeTable>(m, "PrimeTable")
      .def_readonly("X", &PrimeTable::X)
      .def_readonly("lambda_cut", &PrimeTable::lambda_cut)
      .def_readonly("c", &PrimeTable::c)
      .def_readonly("d", &PrimeTable::d)
      .def_readonly("primes", &PrimeTable::primes)
      .def_readonly("logp", &PrimeTable::logp)
      .def("__len__", &PrimeTable::size)
      .def("chebyshev_weight", [](const PrimeTable& t) { return chebyshev_weight(t); })
      .def("digest", [](const PrimeTable& t) { return table_digest(t); });

  m.def("sieve", &sieve, py::arg("X"), py::arg("lambda_cut"), py::arg("c"), py::arg("d"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("eval_S", &eval_S, py::arg("table"), py::arg("c"), py::arg("d"), py::arg("x"), py::arg("y"));
  m.def("kernel_transform", &kernel_transform, py::arg("x"), py::arg("half_width") = 8.0, py::arg("step") = 1e-3);

  py::class_<ExponentPair>(m, "ExponentPair")
      .def_property_readonly("kappa", [](const ExponentPair& p) { return as_fraction(p.kappa); })
      .def_property_readonly("lam", [](const ExponentPair& p) { return as_fraction(p.lam); })
      .def("__repr__", [](const ExponentPair& p) {
        return "ExponentPair(" + to_string(p.kappa) + ", " + to_string(p.lam) + ")";
      });
  m.def("apply_word", &apply_word, py::arg("word"));

  m.def("hb_verify_range", &hb_verify_range, py::arg("k"), py::arg("n_max"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  py::class_<DecompThresholds>(m, "DecompThresholds")
      .def_readonly("X", &DecompThresholds::X)
      .def_readonly("R", &DecompThresholds::R)
      .def_readonly("frakA", &DecompThresholds::frakA)
      .def_readonly("frakB", &DecompThresholds::frakB)
      .def_readonly("frakC", &DecompThresholds::frakC);
  m.def("thresholds", &thresholds, py::arg("X"), py::arg("R"));
  m.def(
      "check_thresholds",
      [](const DecompThresholds& th) {
        ThresholdCheck c = check_thresholds(th);
        return std::make_pair(c.b_squared_le_c, c.x_over_a_le_c);
      },
      py::arg("thresholds"));
  m.def(
      "classify_blocks",
      [](const std::vector<double>& blocks, const DecompThresholds& th) {
        CaseLabel l = classify_blocks(blocks, th);
        py::dict out;
        out["case"] = l.case_number;
        out["kind"] = std::string(to_string(l.kind));
        out["m_blocks"] = l.m_blocks;
        out["n_blocks"] = l.n_blocks;
        out["M"] = l.M;
        out["N"] = l.N;
        return out;
      },
      py::arg("blocks"), py::arg("thresholds"));

  py::class_<CountResult>(m, "CountResult")
      .def_property_readonly("mode", [](const CountResult& r) { return std::string(to_string(r.mode)); })
      .def_readonly("raw_count", &CountResult::raw_count)
      .def_readonly("weighted_count", &CountResult::weighted_count)
      .def_readonly("main_term_scale", &CountResult::main_term_scale)
      .def_readonly("truncation_bound", &CountResult::truncation_bound)
      .def_property_readonly("records", [](const CountResult& r) {
        py::list out;
        for (const auto& s : r.records) out.append(py::make_tuple(s.p, s.r1, s.r2, s.weight));
        return out;
      });
  m.def(
      "count",
      [](const PrimeTable& t, const SystemParams& p, double eps1, double eps2, const std::string& mode,
         const std::string& method, unsigned threads, bool records) {
        CountOptions o;
        o.threads = threads;
        o.collect_records = records;
        CountMode cm = parse_count_mode(mode);
        py::gil_scoped_release release;
        if (method == "exhaustive") return exhaustive_count(t, p, eps1, eps2, cm, o);
        if (method != "mitm") throw Error(ErrorKind::Usage, "method must be mitm or exhaustive");
        return mitm_count(t, p, eps1, eps2, cm, o);
      },
      py::arg("table"), py::arg("params"), py::arg("eps1"), py::arg("eps2"), py::arg("mode") = "indicator",
      py::arg("method") = "mitm", py::arg("threads") = 1, py::arg("records") = false);
  m.def(
      "smoothed_count",
      [](const PrimeTable& t, const SystemParams& p, double eps1, double eps2, unsigned threads) {
        CountOptions o;
        o.threads = threads;
        return smoothed_count(t, p, eps1, eps2, o);
      },
      py::arg("table"), py::arg("params"), py::arg("eps1"), py::arg("eps2"), py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());

  py::class_<IntegralResult>(m, "IntegralResult")
      .def_readonly("value", &IntegralResult::value)
      .def_property_readonly("region", [](const IntegralResult& r) { return std::string(to_string(r.region)); })
      .def_readonly("tail_bound", &IntegralResult::tail_bound)
      .def_readonly("trivial_bound", &IntegralResult::trivial_bound)
      .def_readonly("fourth_moment", &IntegralResult::fourth_moment)
      .def_readonly("max_abs_S", &IntegralResult::max_abs_S)
      .def_readonly("points", &IntegralResult::points);
  m.def(
      "integrate_D",
      [](const PrimeTable& t, const SystemParams& p, const std::string& region, double step_x, double step_y,
         bool use_symmetry, unsigned threads) {
        QuadratureSteps s = max_steps(t, p);
        if (step_x > 0) s.step_x = step_x;
        if (step_y > 0) s.step_y = step_y;
        s.use_symmetry = use_symmetry;
        s.threads = threads;
        Region r = parse_region(region);
        py::gil_scoped_release release;
        return integrate_D(t, p, derive_scales(p), r, s);
      },
      py::arg("table"), py::arg("params"), py::arg("region") = "all", py::arg("step_x") = 0.0,
      py::arg("step_y") = 0.0, py::arg("use_symmetry") = true, py::arg("threads") = 1);

  m.def(
      "run_criterion",
      [](int id, unsigned threads, std::uint64_t seed) {
        AcceptanceOptions o;
        o.threads = threads;
        o.seed = seed;
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, o);
        }
        return py::make_tuple(r.passed, format_result(r));
      },
      py::arg("id"), py::arg("threads") = 1, py::arg("seed") = 20240601);
}
