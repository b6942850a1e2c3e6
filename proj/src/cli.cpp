#include "fiveprime/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fiveprime/acceptance.hpp"
#include "fiveprime/counting.hpp"
#include "fiveprime/decomp.hpp"
#include "fiveprime/error.hpp"
#include "fiveprime/exppair.hpp"
#include "fiveprime/expsum.hpp"
#include "fiveprime/params.hpp"
#include "fiveprime/primes.hpp"
#include "fiveprime/quadrature.hpp"

#ifndef FIVEPRIME_VERSION
#define FIVEPRIME_VERSION "0.0.0"
#endif

namespace fiveprime {

namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  std::optional<int> log_power;
};

struct ParamFlags {
  std::optional<double> c, d, alpha, beta, N1, N2, lambda, eta, eps1, eps2;
  std::optional<double> X;
  double ratio = 1.01;
  double scale = 1.0;
};

void add_param_flags(CLI::App* app, ParamFlags& f) {
  app->add_option("--c", f.c, "exponent c");
  app->add_option("--d", f.d, "exponent d");
  app->add_option("--alpha", f.alpha, "lower ratio bound");
  app->add_option("--beta", f.beta, "upper ratio bound");
  app->add_option("--N1", f.N1, "first target");
  app->add_option("--N2", f.N2, "second target");
  app->add_option("--lambda", f.lambda, "prime cutoff fraction");
  app->add_option("--eta", f.eta, "region exponent slack");
  app->add_option("--eps1", f.eps1, "explicit first window");
  app->add_option("--eps2", f.eps2, "explicit second window");
  app->add_option("--X", f.X, "size parameter; picks N1, N2 when they are not given");
  app->add_option("--ratio", f.ratio, "N2 / N1^(d/c) used when picking targets")->capture_default_str();
  app->add_option("--scale", f.scale, "N1 = scale * X^c when picking targets")->capture_default_str();
}

SystemParams load_params(const Common& common, const ParamFlags& f) {
  SystemParams p;
  if (!common.config.empty()) {
    std::ifstream is(common.config);
    if (!is) throw Error(ErrorKind::Io, "cannot open config " + common.config);
    json j;
    try {
      j = json::parse(is);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::InvalidParams, std::string("config is not valid JSON: ") + e.what());
    }
    from_json(j, p);
  }
  if (common.log_power) p.log_power = *common.log_power;
  if (f.c) p.c = *f.c;
  if (f.d) p.d = *f.d;
  if (f.alpha) p.alpha = *f.alpha;
  if (f.beta) p.beta = *f.beta;
  if (f.N1) p.N1 = *f.N1;
  if (f.N2) p.N2 = *f.N2;
  if (f.lambda) p.lambda_cut = *f.lambda;
  if (f.eta) p.eta = *f.eta;
  if (f.eps1) p.eps1 = *f.eps1;
  if (f.eps2) p.eps2 = *f.eps2;
  if (f.X && p.N1 == 0.0) {
    Targets t = pick_targets(p.c, p.d, *f.X, f.ratio, f.scale);
    p.N1 = t.N1;
    if (!f.N2) p.N2 = t.N2;
  }
  if (p.alpha == 0.0 && p.beta == 0.0 && p.N1 > 0.0 && p.N2 > 0.0) {
    double ratio = p.N2 / std::pow(p.N1, p.d / p.c);
    double ceiling = ratio_ceiling(p.c, p.d);
    p.alpha = 1.0 + 0.5 * (ratio - 1.0);
    p.beta = ratio + 0.5 * (ceiling - ratio);
  }
  return p;
}

double table_X(const SystemParams& p, const ParamFlags& f) {
  if (f.X) return *f.X;
  if (p.N1 > 0.0) return std::pow(p.N1, 1.0 / p.c);
  throw Error(ErrorKind::Usage, "give --X or N1");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad number '" + item + "' in list");
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  os.precision(17);
  return os;
}

json scales_json(const DerivedScales& s) {
  json j;
  to_json(j, s);
  j["windows_ordered"] = s.windows_ordered();
  return j;
}

json count_json(const CountResult& r) {
  json j{{"mode", std::string(to_string(r.mode))},
         {"weighted_count", r.weighted_count},
         {"main_term_scale", r.main_term_scale},
         {"records", r.records.size()}};
  j["raw_count"] = r.raw_count ? json(*r.raw_count) : json(nullptr);
  if (r.mode == CountMode::Smoothed) j["truncation_bound"] = r.truncation_bound;
  return j;
}

json integral_json(const IntegralResult& r) {
  return json{{"region", std::string(to_string(r.region))},
              {"re", r.value.real()},
              {"im", r.value.imag()},
              {"x_range", {r.x_min, r.x_max}},
              {"y_range", {r.y_min, r.y_max}},
              {"step_x", r.step_x},
              {"step_y", r.step_y},
              {"tail_bound", r.tail_bound},
              {"trivial_bound", r.trivial_bound},
              {"fourth_moment", r.fourth_moment},
              {"max_abs_S", r.max_abs_S},
              {"points", r.points}};
}

json report_json(const BoundReport& r, const std::string& name) {
  return json{{"check", name}, {"samples", r.samples}, {"max_ratio", r.max_ratio}, {"arg_max", r.arg_max}};
}

struct Run {
  int code = kExitOk;
  json summary;                       // printed to stdout
  std::vector<std::string> outputs;   // files written
  std::optional<json> config;         // effective parameters, if any
};

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for a two-inequality five-prime problem", "fiveprime"};
  app.set_version_flag("--version", std::string(FIVEPRIME_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config, "JSON parameter file");
  app.add_option("--out", common.out, "primary output path");
  app.add_option("--threads", common.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", common.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--log-power", common.log_power, "exponent on log X in the eps formulas");

  ParamFlags pf;
  std::string cache;
  auto* primes_cmd = app.add_subcommand("primes", "sieve (lambda X, X] and report the table");
  add_param_flags(primes_cmd, pf);
  primes_cmd->add_option("--cache", cache, "also write the binary table cache");

  std::string es_mode = "point";
  double px = 0.0, py = 0.0;
  GridSpec grid;
  std::optional<double> half_width, step;
  std::string exponents = "12,13,14,15";
  bool exact = false;
  auto* expsum_cmd = app.add_subcommand("expsum", "evaluate S(x, y) at a point, on a grid, or its mean square");
  add_param_flags(expsum_cmd, pf);
  expsum_cmd->add_option("--mode", es_mode, "point | grid | mean-square | mean-square-sweep")
      ->check(CLI::IsMember({"point", "grid", "mean-square", "mean-square-sweep"}));
  expsum_cmd->add_option("--x", px);
  expsum_cmd->add_option("--y", py);
  expsum_cmd->add_option("--x-min", grid.x_min);
  expsum_cmd->add_option("--x-max", grid.x_max);
  expsum_cmd->add_option("--nx", grid.nx);
  expsum_cmd->add_option("--y-min", grid.y_min);
  expsum_cmd->add_option("--y-max", grid.y_max);
  expsum_cmd->add_option("--ny", grid.ny);
  expsum_cmd->add_option("--half-width", half_width, "integration half width (default tau1)");
  expsum_cmd->add_option("--step", step, "trapezoid step (default the largest admissible)");
  expsum_cmd->add_option("--exponents", exponents, "log2 X values for the sweep")->capture_default_str();
  expsum_cmd->add_flag("--exact", exact, "also evaluate the closed-form value");

  std::optional<double> rx, ry;
  std::size_t samples = 0;
  auto* regions_cmd = app.add_subcommand("regions", "derived scales and region labels");
  add_param_flags(regions_cmd, pf);
  regions_cmd->add_option("--x", rx);
  regions_cmd->add_option("--y", ry);
  regions_cmd->add_option("--samples", samples, "label this many random points (CSV to --out)");

  std::string word;
  bool bounds = false;
  auto* exppair_cmd = app.add_subcommand("exppair", "exponent-pair words and empirical bound checks");
  exppair_cmd->add_option("--word", word, "process word such as BAAB or BA^2B");
  exppair_cmd->add_flag("--bounds", bounds, "run the empirical bound fits");

  int hb_k = 2;
  std::uint64_t hb_nmax = 10'000;
  auto* hb_cmd = app.add_subcommand("hb-verify", "check the Heath-Brown identity against Lambda(n)");
  hb_cmd->add_option("--k", hb_k)->capture_default_str();
  hb_cmd->add_option("--nmax", hb_nmax)->capture_default_str();

  std::optional<double> cl_X, cl_R, cl_x, cl_y;
  std::string blocks, profiles;
  auto* classify_cmd = app.add_subcommand("classify", "thresholds and Type I/II classification of block profiles");
  add_param_flags(classify_cmd, pf);
  classify_cmd->add_option("--R", cl_R, "frequency size R (or give --x, --y)");
  classify_cmd->add_option("--x", cl_x);
  classify_cmd->add_option("--y", cl_y);
  classify_cmd->add_option("--blocks", blocks, "20 comma-separated block sizes");
  classify_cmd->add_option("--profiles", profiles, "file with one 20-entry profile per line");

  std::string method = "mitm", count_mode = "indicator";
  auto* search_cmd = app.add_subcommand("search", "count and list solutions");
  add_param_flags(search_cmd, pf);
  search_cmd->add_option("--method", method)->check(CLI::IsMember({"mitm", "exhaustive"}))->capture_default_str();
  search_cmd->add_option("--mode", count_mode)
      ->check(CLI::IsMember({"indicator", "indicator_logwindow", "smoothed"}))
      ->capture_default_str();

  std::string xs = "200,400,800";
  auto* scaling_cmd = app.add_subcommand("scaling", "weighted counts across X and their log2 slope");
  add_param_flags(scaling_cmd, pf);
  scaling_cmd->add_option("--xs", xs, "comma-separated X values")->capture_default_str();

  std::string region = "all";
  bool no_symmetry = false, report = false;
  std::optional<double> step_x, step_y;
  auto* integrate_cmd = app.add_subcommand("integrate", "trapezoid evaluation of the smoothed integral D");
  add_param_flags(integrate_cmd, pf);
  integrate_cmd->add_option("--region", region, "all | Omega1 | Omega2 | Omega3")->capture_default_str();
  integrate_cmd->add_option("--step-x", step_x);
  integrate_cmd->add_option("--step-y", step_y);
  integrate_cmd->add_flag("--no-symmetry", no_symmetry, "integrate the full plane");
  integrate_cmd->add_flag("--report", report, "all three region pieces");

  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--only", only, "criterion ids")->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  auto start = std::chrono::steady_clock::now();
  Run run;
  try {
    if (*primes_cmd) {
      SystemParams p = load_params(common, pf);
      double X = table_X(p, pf);
      PrimeTable t = sieve(X, p.lambda_cut, p.c, p.d, common.threads);
      run.summary = {{"X", X},
                     {"lambda_cut", p.lambda_cut},
                     {"count", t.size()},
                     {"chebyshev_weight", chebyshev_weight(t)},
                     {"digest", table_digest(t)}};
      if (!t.empty()) {
        run.summary["first"] = t.primes.front();
        run.summary["last"] = t.primes.back();
      }
      if (!common.out.empty()) {
        auto os = open_out(common.out);
        os << "p,logp,pc_hi,pc_lo,pd_hi,pd_lo\n";
        for (std::size_t i = 0; i < t.size(); ++i) {
          os << t.primes[i] << ',' << t.logp[i] << ',' << t.pc[i].hi << ',' << t.pc[i].lo << ',' << t.pd[i].hi
             << ',' << t.pd[i].lo << '\n';
        }
        run.outputs.push_back(common.out);
      }
      if (!cache.empty()) {
        save_cache(t, cache);
        run.outputs.push_back(cache);
      }
    } else if (*expsum_cmd) {
      SystemParams p = load_params(common, pf);
      if (es_mode == "mean-square-sweep") {
        std::ostringstream rows;
        rows.precision(17);
        rows << "X,value,reference,ratio\n";
        json entries = json::array();
        for (double e : parse_list(exponents)) {
          double X = std::ldexp(1.0, static_cast<int>(e));
          PrimeTable t = sieve(X, p.lambda_cut, p.c, p.d, common.threads);
          double w = std::pow(X, 0.75 - p.c - p.eta);
          double v = mean_square_x(t, p.c, p.d, py, w, step.value_or(max_mean_square_step(t, p.c)), common.threads);
          double ref = std::pow(X, 2.0 - p.c) * std::pow(std::log(X), 3);
          rows << X << ',' << v << ',' << ref << ',' << v / ref << '\n';
          entries.push_back({{"X", X}, {"value", v}, {"reference", ref}, {"ratio", v / ref}});
        }
        run.summary = {{"sweep", entries}};
        if (!common.out.empty()) {
          open_out(common.out) << rows.str();
          run.outputs.push_back(common.out);
        } else {
          out << rows.str();
        }
      } else {
        double X = table_X(p, pf);
        PrimeTable t = sieve(X, p.lambda_cut, p.c, p.d, common.threads);
        if (es_mode == "point") {
          ComplexValue s = eval_S(t, p.c, p.d, px, py);
          run.summary = {{"x", px}, {"y", py}, {"re", s.real()}, {"im", s.imag()}, {"abs", std::abs(s)}};
        } else if (es_mode == "grid") {
          if (common.out.empty()) throw Error(ErrorKind::Usage, "grid mode needs --out");
          ExpSumGrid g = grid_eval(t, p.c, p.d, grid, common.threads);
          write_grid(g, common.out);
          run.outputs.push_back(common.out);
          run.outputs.push_back(common.out + ".json");
          run.summary = {{"points", g.values.size()}, {"params_digest", g.params_digest}};
        } else {
          double w = half_width.value_or(std::pow(X, 0.75 - p.c - p.eta));
          double h = step.value_or(max_mean_square_step(t, p.c));
          double v = mean_square_x(t, p.c, p.d, py, w, h, common.threads);
          run.summary = {{"X", X}, {"y", py}, {"half_width", w}, {"step", h}, {"value", v}};
          if (exact) run.summary["exact"] = mean_square_x_exact(t, p.c, p.d, py, w);
        }
      }
    } else if (*regions_cmd) {
      SystemParams p = load_params(common, pf);
      DerivedScales s = derive_scales(p);
      run.config = json(p);
      run.summary = {{"scales", scales_json(s)}};
      if (rx || ry) {
        run.summary["x"] = rx.value_or(0.0);
        run.summary["y"] = ry.value_or(0.0);
        run.summary["region"] = std::string(to_string(classify_region(s, rx.value_or(0.0), ry.value_or(0.0))));
      }
      if (samples > 0) {
        if (common.out.empty()) throw Error(ErrorKind::Usage, "--samples needs --out");
        std::mt19937_64 rng(common.seed);
        std::uniform_real_distribution<double> ux(-2.0 * s.K1, 2.0 * s.K1), uy(-2.0 * s.K2, 2.0 * s.K2);
        auto os = open_out(common.out);
        os << "x,y,region\n";
        std::size_t counts[3] = {0, 0, 0};
        for (std::size_t i = 0; i < samples; ++i) {
          double x = ux(rng), y = uy(rng);
          RegionLabel l = classify_region(s, x, y);
          ++counts[static_cast<int>(l)];
          os << x << ',' << y << ',' << to_string(l) << '\n';
        }
        run.summary["counts"] = {{"Omega1", counts[0]}, {"Omega2", counts[1]}, {"Omega3", counts[2]}};
        run.outputs.push_back(common.out);
      }
    } else if (*exppair_cmd) {
      if (word.empty() && !bounds) throw Error(ErrorKind::Usage, "exppair needs --word or --bounds");
      json records = json::array();
      if (!word.empty()) {
        ExponentPair pr = apply_word(word);
        out << "kappa=" << to_string(pr.kappa) << " lam=" << to_string(pr.lam) << '\n';
        records.push_back({{"word", word},
                           {"kappa_num", numerator(pr.kappa).str()},
                           {"kappa_den", denominator(pr.kappa).str()},
                           {"lam_num", numerator(pr.lam).str()},
                           {"lam_den", denominator(pr.lam).str()}});
      }
      if (bounds) {
        records.push_back(report_json(check_vdc_first(common.seed, 100, common.threads), "vdc_first"));
        records.push_back(report_json(check_vdc_second(common.seed, 100, common.threads), "vdc_second"));
        records.push_back(report_json(check_zhai_first(common.seed, 50, common.threads), "zhai_first"));
        records.push_back(report_json(check_kratzel(common.seed, 100, common.threads), "kratzel"));
        records.push_back(report_json(check_td(1e4, 1.01, 0.1, apply_word("BAAB"), 20, common.threads), "td"));
        run.summary = records;
      }
      if (!common.out.empty()) {
        open_out(common.out) << records.dump(2) << '\n';
        run.outputs.push_back(common.out);
      }
    } else if (*hb_cmd) {
      double e = hb_verify_range(hb_k, hb_nmax, common.threads);
      run.summary = {{"k", hb_k}, {"n_max", hb_nmax}, {"z", hb_cutoff(hb_k, hb_nmax)}, {"max_error", e}};
      if (!(e <= 1e-9)) run.code = kExitCheckFailed;
      if (!common.out.empty()) {
        open_out(common.out) << run.summary.dump(2) << '\n';
        run.outputs.push_back(common.out);
      }
    } else if (*classify_cmd) {
      SystemParams p = load_params(common, pf);
      double X = table_X(p, pf);
      double R = 0.0;
      if (cl_R) {
        R = *cl_R;
      } else if (cl_x || cl_y) {
        R = frequency_size(cl_x.value_or(0.0), cl_y.value_or(0.0), X, p.c, p.d);
      } else {
        throw Error(ErrorKind::Usage, "classify needs --R or --x/--y");
      }
      DecompThresholds th = thresholds(X, R);
      ThresholdCheck ch = check_thresholds(th);
      run.summary = {{"X", X},
                     {"R", R},
                     {"frakA", th.frakA},
                     {"frakB", th.frakB},
                     {"frakC", th.frakC},
                     {"B2_le_C", ch.b_squared_le_c},
                     {"X_over_A_le_C", ch.x_over_a_le_c}};
      std::vector<std::vector<double>> list;
      if (!blocks.empty()) list.push_back(parse_list(blocks));
      if (!profiles.empty()) {
        std::ifstream is(profiles);
        if (!is) throw Error(ErrorKind::Io, "cannot open " + profiles);
        std::string line;
        while (std::getline(is, line)) {
          if (!line.empty()) list.push_back(parse_list(line));
        }
      }
      std::ostringstream rows;
      rows.precision(17);
      rows << "profile,case,kind,M,N,frakA,frakB,frakC\n";
      json labels = json::array();
      for (const auto& prof : list) {
        std::ostringstream ps;
        for (std::size_t i = 0; i < prof.size(); ++i) ps << (i ? " " : "") << prof[i];
        try {
          CaseLabel cl = classify_blocks(prof, th);
          rows << ps.str() << ',' << cl.case_number << ',' << to_string(cl.kind) << ',' << cl.M << ',' << cl.N << ','
               << th.frakA << ',' << th.frakB << ',' << th.frakC << '\n';
          labels.push_back({{"case", cl.case_number},
                            {"kind", std::string(to_string(cl.kind))},
                            {"m_blocks", cl.m_blocks},
                            {"n_blocks", cl.n_blocks},
                            {"M", cl.M},
                            {"N", cl.N}});
        } catch (const Error& e) {
          if (list.size() == 1) throw;
          rows << ps.str() << ",infeasible,," << ",," << th.frakA << ',' << th.frakB << ',' << th.frakC << '\n';
          labels.push_back({{"error", e.what()}});
        }
      }
      if (!list.empty()) run.summary["labels"] = labels;
      if (!common.out.empty()) {
        open_out(common.out) << rows.str();
        run.outputs.push_back(common.out);
      }
    } else if (*search_cmd) {
      SystemParams p = load_params(common, pf);
      double X = table_X(p, pf);
      PrimeTable t = sieve(X, p.lambda_cut, p.c, p.d, common.threads);
      DerivedScales s = derive_scales(p);
      CountOptions co;
      co.threads = common.threads;
      co.collect_records = !common.out.empty();
      CountMode mode = parse_count_mode(count_mode);
      CountResult r = method == "mitm" ? mitm_count(t, p, s.eps1, s.eps2, mode, co)
                                       : exhaustive_count(t, p, s.eps1, s.eps2, mode, co);
      run.config = json(p);
      run.summary = count_json(r);
      run.summary["primes"] = t.size();
      run.summary["eps1"] = s.eps1;
      run.summary["eps2"] = s.eps2;
      if (!common.out.empty()) {
        write_records(r.records, common.out);
        open_out(common.out + ".summary.json") << run.summary.dump(2) << '\n';
        run.outputs.push_back(common.out);
        run.outputs.push_back(common.out + ".summary.json");
      }
    } else if (*scaling_cmd) {
      SystemParams base = load_params(common, pf);
      double eps1 = pf.eps1.value_or(0.5), eps2 = pf.eps2.value_or(eps1);
      std::ostringstream rows;
      rows.precision(17);
      rows << "X,primes,raw,weighted,main_term,ratio\n";
      std::vector<double> lx, lw;
      CountOptions co;
      co.threads = common.threads;
      for (double X : parse_list(xs)) {
        PrimeTable t = sieve(X, base.lambda_cut, base.c, base.d, common.threads);
        SystemParams p = experiment_params(base.c, base.d, X, pf.ratio, base.lambda_cut, eps1, eps2, pf.scale);
        CountResult r = mitm_count(t, p, eps1, eps2, CountMode::Indicator, co);
        rows << X << ',' << t.size() << ',' << *r.raw_count << ',' << r.weighted_count << ',' << r.main_term_scale
             << ',' << r.weighted_count / r.main_term_scale << '\n';
        lx.push_back(std::log2(X));
        lw.push_back(std::log2(r.weighted_count));
      }
      double slope = NAN;
      if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          mx += lx[i];
          my += lw[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          sxy += (lx[i] - mx) * (lw[i] - my);
          sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        slope = sxy / sxx;
      }
      run.summary = {{"slope", std::isfinite(slope) ? json(slope) : json(nullptr)},
                     {"target", 5.0 - base.c - base.d}};
      if (!common.out.empty()) {
        open_out(common.out) << rows.str();
        run.outputs.push_back(common.out);
      } else {
        out << rows.str();
      }
    } else if (*integrate_cmd) {
      SystemParams p = load_params(common, pf);
      double X = table_X(p, pf);
      PrimeTable t = sieve(X, p.lambda_cut, p.c, p.d, common.threads);
      DerivedScales s = derive_scales(p);
      QuadratureSteps steps = max_steps(t, p);
      if (step_x) steps.step_x = *step_x;
      if (step_y) steps.step_y = *step_y;
      steps.use_symmetry = !no_symmetry;
      steps.threads = common.threads;
      run.config = json(p);
      if (report) {
        RegionReport rep = region_report(t, p, s, steps);
        run.summary = {{"all", integral_json(rep.all)},
                       {"D1", integral_json(rep.pieces[0])},
                       {"D2", integral_json(rep.pieces[1])},
                       {"D3", integral_json(rep.pieces[2])},
                       {"ratio_D2_D1", rep.ratio_d2_d1},
                       {"abs_D3", rep.abs_d3},
                       {"fourth_moment_target", rep.fourth_moment_target},
                       {"omega2_sup_target", rep.omega2_sup_target}};
        if (!common.out.empty()) {
          auto os = open_out(common.out + ".regions.csv");
          os << "region,re,im,abs,fourth_moment,max_abs_S,trivial_bound\n";
          for (const IntegralResult* r : {&rep.pieces[0], &rep.pieces[1], &rep.pieces[2], &rep.all}) {
            os << to_string(r->region) << ',' << r->value.real() << ',' << r->value.imag() << ','
               << std::abs(r->value) << ',' << r->fourth_moment << ',' << r->max_abs_S << ',' << r->trivial_bound
               << '\n';
          }
          run.outputs.push_back(common.out + ".regions.csv");
        }
      } else {
        run.summary = integral_json(integrate_D(t, p, s, parse_region(region), steps));
      }
      if (!common.out.empty()) {
        open_out(common.out) << run.summary.dump(2) << '\n';
        run.outputs.push_back(common.out);
      }
    } else if (*verify_cmd) {
      AcceptanceOptions opt;
      opt.threads = common.threads;
      opt.seed = common.seed;
      auto results = run_acceptance(opt, only, &out);
      json arr = json::array();
      int failed = 0;
      for (const auto& r : results) {
        if (!r.passed) ++failed;
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      }
      out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
      if (failed) run.code = kExitCheckFailed;
      if (!common.out.empty()) {
        open_out(common.out) << arr.dump(2) << '\n';
        run.outputs.push_back(common.out);
      }
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (!run.summary.is_null()) out << run.summary.dump(2) << '\n';
  if (!common.out.empty()) {
    json manifest;
    manifest["command"] = app.get_subcommands().front()->get_name();
    std::vector<std::string> args(argv, argv + argc);
    manifest["argv"] = args;
    std::string cfg = run.config ? run.config->dump() : std::string();
    std::string canon = cfg + "|" + std::to_string(common.seed) + "|" + std::to_string(common.threads);
    for (const auto& a : args) canon += "|" + a;
    std::ostringstream digest;
    digest << std::hex << fnv1a(canon);
    manifest["config_digest"] = digest.str();
    if (run.config) manifest["params"] = *run.config;
    manifest["version"] = FIVEPRIME_VERSION;
    manifest["compiler"] = __VERSION__;
    manifest["seed"] = common.seed;
    manifest["threads"] = common.threads;
    manifest["outputs"] = run.outputs;
    manifest["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["exit_code"] = run.code;
    std::ofstream ms(common.out + ".manifest.json");
    if (ms) ms << manifest.dump(2) << '\n';
  }
  return run.code;
}

}  // namespace fiveprime
