#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "disclab/bmo.hpp"
#include "disclab/bounds.hpp"
#include "disclab/discrepancy.hpp"
#include "disclab/errors.hpp"
#include "disclab/haar.hpp"
#include "disclab/json_io.hpp"
#include "disclab/parallel.hpp"
#include "disclab/pointset.hpp"
#include "disclab/verify.hpp"

namespace {

using namespace disclab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

PointSet load_input(const std::string& path, int dim_hint) {
  std::optional<int> hint;
  if (dim_hint > 0) hint = dim_hint;
  if (path.empty()) {
    if (!hint) {
      throw DomainViolation("--dim is required when --input is omitted (empty point set)");
    }
    return PointSet(*hint);
  }
  return load_pointset_file(path, hint);
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw FormatError("cannot open output file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string csv_quote(const std::string& s) {
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  return os.str();
}

std::string candidate_csv(const BmoCandidate& c) {
  switch (c.kind) {
    case BmoCandidate::Kind::FullCube: return "full-cube";
    case BmoCandidate::Kind::DyadicBox:
      return "dyadic-box levels=[" + join(c.box.levels) + "] positions=[" +
             join(c.box.positions) + "]";
    case BmoCandidate::Kind::CellUnion:
      return "cell-union " + std::to_string(c.cells.size()) + " cells";
  }
  return "?";
}

Measure parse_measure(const std::string& name) {
  if (name == "star-l2") return Measure::StarL2;
  if (name == "extreme-l2") return Measure::ExtremeL2;
  if (name == "bmo" || name == "bmo-lower") return Measure::BmoLower;
  throw DomainViolation("unknown measure: " + name);
}

int default_search_level(int dim, int max_order) {
  int level = std::min(4, 20 / dim);
  return std::min(level, max_order);
}

// --- gen ---------------------------------------------------------------

struct GenArgs {
  std::string family = "hammersley";
  std::int64_t n = 0;
  int dim = 1;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenArgs& a) {
  PointSet ps = [&] {
    auto count = static_cast<std::size_t>(a.n);
    if (a.family == "hammersley") return gen_hammersley(count, a.dim);
    if (a.family == "random") return gen_random(count, a.dim, a.seed);
    if (a.family == "corner") return gen_corner(count, a.dim);
    throw DomainViolation("unknown family: " + a.family);
  }();
  if (a.output.empty()) {
    write_pointset(std::cout, ps);
  } else {
    std::ofstream out(a.output);
    if (!out) throw FormatError("cannot open output file: " + a.output);
    write_pointset(out, ps);
  }
  return kExitOk;
}

// --- disc --------------------------------------------------------------

struct DiscArgs {
  std::string measure = "star-l2";
  std::string input;
  int dim = 0;
  int haar_order = 16;
  int search_level = -1;
  std::string method = "closed";
  std::string format = "pretty";
  std::string output;
};

std::string disc_result_text(const DiscrepancyResult& r, const std::string& format) {
  if (format == "json") {
    nlohmann::json j = r;
    return j.dump(2);
  }
  if (format == "csv") {
    std::string csv = "measure,method,value,squared,truncation_order,tail_bound\n";
    csv += to_string(r.measure) + "," + to_string(r.method) + "," + num(r.value) + "," +
           num(r.squared) + ",";
    csv += r.truncation_order ? std::to_string(*r.truncation_order) : "";
    csv += ",";
    csv += r.tail_bound ? num(*r.tail_bound) : "";
    return csv;
  }
  std::ostringstream os;
  os << "measure:  " << to_string(r.measure) << "\n"
     << "method:   " << to_string(r.method) << "\n"
     << "value:    " << num(r.value) << "\n"
     << "squared:  " << num(r.squared) << "\n";
  if (r.truncation_order) os << "order:    " << *r.truncation_order << "\n";
  if (r.tail_bound) os << "tail:     " << num(*r.tail_bound) << "\n";
  return os.str();
}

std::string bmo_result_text(const BmoEstimate& e, const std::string& format) {
  if (format == "json") {
    nlohmann::json j = e;
    return j.dump(2);
  }
  if (format == "csv") {
    std::string csv =
        "measure,value,squared,truncation_order,search_level,global_term_squared,"
        "tail_bound,candidate\n";
    csv += to_string(Measure::BmoLower) + "," + num(e.value) + "," + num(e.squared) + "," +
           std::to_string(e.truncation_order) + "," + std::to_string(e.search_level) + "," +
           num(e.global_term_squared) + "," + num(e.tail_bound) + "," +
           csv_quote(candidate_csv(e.candidate));
    return csv;
  }
  std::ostringstream os;
  os << "measure:    " << to_string(Measure::BmoLower) << " (certified lower bound)\n"
     << "value:      " << num(e.value) << "\n"
     << "squared:    " << num(e.squared) << "\n"
     << "order:      " << e.truncation_order << "\n"
     << "level:      " << e.search_level << "\n"
     << "full cube:  " << num(e.global_term_squared) << "\n"
     << "tail:       " << num(e.tail_bound) << "\n"
     << "candidate:  " << candidate_csv(e.candidate) << "\n";
  return os.str();
}

int run_disc(const DiscArgs& a) {
  PointSet ps = load_input(a.input, a.dim);
  Measure measure = parse_measure(a.measure);
  std::string text;
  if (measure == Measure::BmoLower) {
    int level = a.search_level >= 0 ? a.search_level
                                    : default_search_level(ps.dim(), a.haar_order);
    BmoEstimate est = bmo_discrepancy(ps, a.haar_order, level);
    text = bmo_result_text(est, a.format);
  } else {
    DiscrepancyResult res;
    if (a.method == "haar") {
      res = measure == Measure::StarL2 ? star_l2_haar(ps, a.haar_order)
                                       : extreme_l2_haar(ps, a.haar_order);
    } else {
      res = measure == Measure::StarL2 ? star_l2(ps) : extreme_l2(ps);
    }
    text = disc_result_text(res, a.format);
  }
  write_text(a.output, text);
  return kExitOk;
}

// --- verify ------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  int dim = 0;
  int haar_order = -1;
  int search_level = -1;
  std::uint64_t seed = 20240801;
  std::size_t mc_samples = 20000;
  bool tamper = false;
  std::string format = "pretty";
  std::string output;
};

int run_verify(const VerifyArgs& a) {
  PointSet ps = load_input(a.input, a.dim);
  VerifyOptions opts;
  opts.max_order = a.haar_order;
  opts.cell_level = a.search_level;
  opts.seed = a.seed;
  opts.mc_samples = a.mc_samples;
  opts.tamper_localized = a.tamper;
  auto checks = run_checks(ps, opts);

  std::string text;
  if (a.format == "json") {
    text = verify_report_json(checks).dump(2);
  } else if (a.format == "csv") {
    text = "name,status,detail\n";
    for (const auto& c : checks) {
      text += c.name + "," + to_string(c.status) + "," + csv_quote(c.detail) + "\n";
    }
  } else {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << to_string(c.status) << "  " << c.name;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    os << (all_passed(checks) ? "verification: PASS" : "verification: FAIL") << "\n";
    text = os.str();
  }
  write_text(a.output, text);
  return all_passed(checks) ? kExitOk : kExitCheckFailed;
}

// --- report ------------------------------------------------------------

struct CurseArgs {
  double eps = 0.5;
  int dmax = 20;
  std::string format = "pretty";
  std::string output;
};

int run_curse(const CurseArgs& a) {
  std::string text;
  if (a.format == "json") {
    text = curse_table_json(a.eps, a.dmax).dump(2);
  } else {
    std::ostringstream os;
    if (a.format == "csv") {
      os << "dim,bmo_lower,extreme_lower\n";
      for (int d = 1; d <= a.dmax; ++d) {
        os << d << "," << num(curse_lower_bound_bmo(a.eps, d)) << ","
           << num(curse_lower_bound_extreme(a.eps, d)) << "\n";
      }
    } else {
      os << "inverse-discrepancy lower bounds at epsilon = " << a.eps << "\n";
      os << "(point counts below these cannot reach epsilon times the initial value;\n";
      os << " the growth is exponential in the dimension)\n";
      for (int d = 1; d <= a.dmax; ++d) {
        os << "  d = " << d << ":  bmo >= " << num(curse_lower_bound_bmo(a.eps, d))
           << ",  extreme >= " << num(curse_lower_bound_extreme(a.eps, d)) << "\n";
      }
    }
    text = os.str();
  }
  write_text(a.output, text);
  return kExitOk;
}

struct RothArgs {
  int dim = 1;
  std::vector<std::int64_t> n_list;
  int haar_order = 12;
  int search_level = -1;
  std::string format = "pretty";
  std::string output;
};

int run_roth(const RothArgs& a) {
  int level = a.search_level >= 0 ? a.search_level
                                  : std::min(std::min(2, 20 / a.dim), a.haar_order);
  auto rows = roth_curve(a.dim, a.n_list, a.haar_order, level);
  std::string text;
  if (a.format == "json") {
    text = roth_table_json(a.dim, rows).dump(2);
  } else {
    std::ostringstream os;
    if (a.format == "csv") {
      os << "n,extreme,bmo_lower,shape,ratio_extreme,ratio_bmo\n";
      for (const auto& r : rows) {
        os << r.n << "," << num(r.extreme) << "," << num(r.bmo_lower) << ","
           << num(r.shape) << "," << num(r.ratio_extreme) << "," << num(r.ratio_bmo)
           << "\n";
      }
    } else {
      os << "extreme discrepancy of Hammersley sets vs the (1+log N)^((d-1)/2)/N shape, d = "
         << a.dim << "\n";
      for (const auto& r : rows) {
        os << "  N = " << r.n << ":  extreme = " << num(r.extreme)
           << ",  shape = " << num(r.shape) << ",  ratio = " << num(r.ratio_extreme)
           << "\n";
      }
      os << "ratios estimate the shape constant from above; no value is asserted\n";
    }
    text = os.str();
  }
  write_text(a.output, text);
  return kExitOk;
}

struct InverseArgs {
  double eps = 0.5;
  int dim = 1;
  std::string measure = "extreme-l2";
  std::string family = "hammersley";
  std::int64_t n_max = 4096;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::string format = "pretty";
  std::string output;
};

int run_inverse(const InverseArgs& a) {
  InverseSearchConfig cfg;
  cfg.epsilon = a.eps;
  cfg.dim = a.dim;
  cfg.measure = parse_measure(a.measure);
  cfg.family = parse_family(a.family);
  cfg.n_max = a.n_max;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  auto report = empirical_inverse(cfg);

  std::string text;
  if (a.format == "json") {
    nlohmann::json j = report;
    text = j.dump(2);
  } else if (a.format == "csv") {
    std::ostringstream os;
    os << "epsilon,dim,measure,family,bmo_lower,extreme_lower,empirical_upper,notes\n";
    os << report.epsilon << "," << report.dim << "," << to_string(report.measure) << ","
       << to_string(report.family) << "," << num(report.bmo_lower) << ","
       << num(report.extreme_lower) << ",";
    if (report.empirical_upper) os << *report.empirical_upper;
    os << "," << csv_quote(report.notes) << "\n";
    text = os.str();
  } else {
    std::ostringstream os;
    os << "inverse discrepancy at epsilon = " << report.epsilon << ", d = " << report.dim
       << ", measure = " << to_string(report.measure) << "\n";
    os << "analytic lower bounds:  bmo >= " << num(report.bmo_lower)
       << ",  extreme >= " << num(report.extreme_lower) << "\n";
    if (report.empirical_upper) {
      os << "smallest feasible N found (" << to_string(report.family)
         << " + random restarts): " << *report.empirical_upper << "\n";
    } else {
      os << "no feasible N within the budget\n";
    }
    os << "note: " << report.notes << "\n";
    text = os.str();
  }
  write_text(a.output, text);
  return kExitOk;
}

// --- haar-dump ----------------------------------------------------------

struct DumpArgs {
  std::string input;
  int dim = 0;
  int haar_order = 6;
  std::string output;
};

int run_dump(const DumpArgs& a) {
  PointSet ps = load_input(a.input, a.dim);
  int d = ps.dim();
  auto levels = enumerate_levels(d, a.haar_order, true);

  double total = 0.0;
  for (const auto& lv : levels) total += std::ldexp(1.0, level_order(lv));
  if (total > 1e6) {
    throw SizeGuardError("coefficient dump would exceed 1e6 rows; lower --haar-order");
  }

  std::ostringstream os;
  os << "levels,positions,counting_part,volume_part,value\n";
  os.precision(17);
  DyadicIndex index;
  for (const auto& lv : levels) {
    index.levels = lv;
    index.positions.assign(static_cast<std::size_t>(d), 0);
    while (true) {
      auto coef = haar_coefficient(ps, index);
      os << join(index.levels) << "," << join(index.positions) << "," << coef.counting_part
         << "," << coef.volume_part << "," << coef.value << "\n";
      int k = d - 1;
      while (k >= 0) {
        int lvk = index.levels[static_cast<std::size_t>(k)];
        std::int64_t count = lvk <= 0 ? 1 : (std::int64_t{1} << lvk);
        if (++index.positions[static_cast<std::size_t>(k)] < count) break;
        index.positions[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  os << "tail_bound,,,," << tail_bound_star(ps, a.haar_order) << "\n";
  write_text(a.output, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrepancy toolkit: anchored/unanchored L2 measures, a dyadic Haar "
               "coefficient engine, and certified localized lower bounds"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: DISCLAB_THREADS or 1)");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a point set file");
  cmd_gen->add_option("--family", gen.family, "hammersley, random, or corner")
      ->check(CLI::IsMember({"hammersley", "random", "corner"}));
  cmd_gen->add_option("--n", gen.n, "number of points")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd_gen->add_option("--dim", gen.dim, "dimension")->required()->check(CLI::PositiveNumber);
  cmd_gen->add_option("--seed", gen.seed, "seed for the random family");
  cmd_gen->add_option("-o,--output", gen.output, "output path (default: stdout)");

  DiscArgs disc;
  auto* cmd_disc = app.add_subcommand("disc", "evaluate a discrepancy measure");
  cmd_disc->add_option("--measure", disc.measure, "star-l2, extreme-l2, or bmo")
      ->required()
      ->check(CLI::IsMember({"star-l2", "extreme-l2", "bmo", "bmo-lower"}));
  cmd_disc->add_option("--input", disc.input, "point set file (omit for the empty set)");
  cmd_disc->add_option("--dim", disc.dim, "dimension (required without --input)");
  cmd_disc->add_option("--haar-order", disc.haar_order, "series truncation order (default 16)");
  cmd_disc->add_option("--search-level", disc.search_level,
                       "cell level for the localized search (default min(4, 20/d))");
  cmd_disc->add_option("--method", disc.method, "closed or haar (star/extreme only)")
      ->check(CLI::IsMember({"closed", "haar"}));
  cmd_disc->add_option("--format", disc.format, "json, csv, or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_disc->add_option("-o,--output", disc.output, "output path (default: stdout)");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "run the cross-check suite on a point set");
  cmd_verify->add_option("--input", verify.input, "point set file (omit for the empty set)");
  cmd_verify->add_option("--dim", verify.dim, "dimension (required without --input)");
  cmd_verify->add_option("--haar-order", verify.haar_order,
                         "series truncation order (default: by dimension)");
  cmd_verify->add_option("--search-level", verify.search_level,
                         "cell level for the localized search (default: by dimension)");
  cmd_verify->add_option("--seed", verify.seed, "seed for sampled checks");
  cmd_verify->add_option("--mc-samples", verify.mc_samples, "Monte Carlo sample count");
  cmd_verify->add_flag("--self-test-tamper", verify.tamper)->group("");
  cmd_verify->add_option("--format", verify.format, "json, csv, or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_verify->add_option("-o,--output", verify.output, "output path (default: stdout)");

  auto* cmd_report = app.add_subcommand("report", "tabulated bounds and searches");
  cmd_report->require_subcommand(1);

  CurseArgs curse;
  auto* cmd_curse = cmd_report->add_subcommand("curse", "exponential lower-bound table");
  cmd_curse->add_option("--eps", curse.eps, "epsilon in (0,1)")->required();
  cmd_curse->add_option("--dmax", curse.dmax, "largest dimension")->check(CLI::PositiveNumber);
  cmd_curse->add_option("--format", curse.format, "json, csv, or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_curse->add_option("-o,--output", curse.output, "output path (default: stdout)");

  RothArgs roth;
  auto* cmd_roth = cmd_report->add_subcommand("roth", "discrepancy decay vs the shape curve");
  cmd_roth->add_option("--dim", roth.dim, "dimension")->required()->check(CLI::PositiveNumber);
  cmd_roth->add_option("--nlist", roth.n_list, "point counts, comma separated")
      ->required()
      ->delimiter(',');
  cmd_roth->add_option("--haar-order", roth.haar_order,
                       "truncation order for the localized bound (default 12)");
  cmd_roth->add_option("--search-level", roth.search_level,
                       "cell level for the localized search (default min(2, 20/d))");
  cmd_roth->add_option("--format", roth.format, "json, csv, or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_roth->add_option("-o,--output", roth.output, "output path (default: stdout)");

  InverseArgs inverse;
  auto* cmd_inverse =
      cmd_report->add_subcommand("inverse", "empirical inverse-discrepancy search");
  cmd_inverse->add_option("--eps", inverse.eps, "epsilon in (0,1)")->required();
  cmd_inverse->add_option("--dim", inverse.dim, "dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_inverse->add_option("--measure", inverse.measure, "star-l2, extreme-l2, or bmo")
      ->check(CLI::IsMember({"star-l2", "extreme-l2", "bmo", "bmo-lower"}));
  cmd_inverse->add_option("--family", inverse.family, "hammersley or random")
      ->check(CLI::IsMember({"hammersley", "random"}));
  cmd_inverse->add_option("--nmax", inverse.n_max, "search budget")
      ->check(CLI::PositiveNumber);
  cmd_inverse->add_option("--restarts", inverse.restarts, "random candidate sets per N")
      ->check(CLI::NonNegativeNumber);
  cmd_inverse->add_option("--seed", inverse.seed, "base seed for candidate sets");
  cmd_inverse->add_option("--format", inverse.format, "json, csv, or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd_inverse->add_option("-o,--output", inverse.output, "output path (default: stdout)");

  DumpArgs dump;
  auto* cmd_dump = app.add_subcommand("haar-dump", "dump the coefficient table as CSV");
  cmd_dump->add_option("--input", dump.input, "point set file (omit for the empty set)");
  cmd_dump->add_option("--dim", dump.dim, "dimension (required without --input)");
  cmd_dump->add_option("--haar-order", dump.haar_order, "largest total order (default 6)");
  cmd_dump->add_option("-o,--output", dump.output, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads > 0) set_max_threads(threads);
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_disc) return run_disc(disc);
    if (*cmd_verify) return run_verify(verify);
    if (*cmd_curse) return run_curse(curse);
    if (*cmd_roth) return run_roth(roth);
    if (*cmd_inverse) return run_inverse(inverse);
    if (*cmd_dump) return run_dump(dump);
    std::cerr << "error: no command given\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
