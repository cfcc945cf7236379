// Command-line driver: relation sweeps, spectra, Bethe solves, reduction checks.
//
// Exit codes: 0 success, 1 relation violation, 2 parameter/parse error, 3 solver failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "heunracah/io.hpp"

namespace hr = heunracah;

namespace {

enum Exit : int { kOk = 0, kViolation = 1, kBadInput = 2, kSolverFailure = 3 };

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt(hr::Complex c) {
  std::ostringstream os;
  os << std::setprecision(12) << c.real() << (c.imag() < 0 ? " - " : " + ")
     << std::abs(c.imag()) << "i";
  return os.str();
}

void write_json(const std::string& path, const hr::Json& j) {
  std::ofstream out(path);
  if (!out) throw hr::ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

double default_tol(hr::RelationId id) {
  switch (id) {
    case hr::RelationId::ABV_ACTION:
      return 1e-9;
    case hr::RelationId::MABA_REDUCTION:
      return 1e-8;
    default:
      return 1e-10;
  }
}

std::vector<hr::RelationId> parse_relations(const std::string& list) {
  if (list == "all") return {std::begin(hr::kAllRelations), std::end(hr::kAllRelations)};
  std::vector<hr::RelationId> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(hr::relation_from_string(item));
    } catch (const std::invalid_argument& e) {
      throw hr::ParseError(e.what());
    }
  }
  if (out.empty()) throw hr::ParseError("--relations is empty");
  return out;
}

const hr::DynContext& require_ctx(const hr::Problem& p) {
  if (!p.ctx) throw hr::ParseError("parameter file needs 'rho' (or a 'bilinear' block)");
  return *p.ctx;
}

const hr::HeunParams& require_heun(const hr::Problem& p) {
  if (!p.heun) {
    throw hr::ParseError("parameter file needs 'rho', 's1', 's2' (or a 'bilinear' block)");
  }
  return *p.heun;
}

struct VerifyArgs {
  std::string relations = "all";
  std::string params;
  int samples = 50;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto problem = hr::build_problem(hr::load_params(a.params));
  const auto& ctx = require_ctx(problem);
  const auto ids = parse_relations(a.relations);

  hr::Json reports = hr::Json::array();
  bool violated = false;
  std::cout << std::left << std::setw(22) << "relation" << std::setw(9) << "samples"
            << std::setw(22) << "max_residual" << std::setw(10) << "tol" << "status\n";
  for (auto id : ids) {
    hr::RelationSweep sweep;
    sweep.samples = a.samples;
    sweep.seed = a.seed;
    sweep.tol = a.tol.value_or(default_tol(id));
    const auto report = hr::measure_relation(id, ctx, problem.heun, sweep);
    violated |= !report.passed();
    std::cout << std::left << std::setw(22) << hr::to_string(id) << std::setw(9) << report.samples
              << std::setw(22) << fmt(report.max_residual) << std::setw(10) << fmt(report.tol)
              << (report.passed() ? "PASS" : "FAIL") << "\n";
    if (id == hr::RelationId::ABV_ACTION) {
      std::cout << "  swapped slot B(u, m-r" << (report.notes.at("adopted_slot_offset") > 0 ? "+1" : "-1")
                << ") adopted; m-r+1 max " << fmt(report.notes.at("slot_m_minus_r_plus_1_max_residual"))
                << ", m-r-1 max " << fmt(report.notes.at("slot_m_minus_r_minus_1_max_residual"))
                << "\n";
    }
    reports.push_back(hr::to_json(report));
  }
  if (!a.out.empty()) write_json(a.out, hr::Json{{"reports", reports}});
  return violated ? kViolation : kOk;
}

struct SpectrumArgs {
  std::string params;
  std::string out;
  std::string csv;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto problem = hr::build_problem(hr::load_params(a.params));
  const auto& ctx = require_ctx(problem);
  const auto w = hr::build_W_parametric(require_heun(problem), ctx);
  const auto spectrum = hr::dense_spectrum(w, false);
  std::cout << "eigenvalues of W (dim " << w.rows() << "):\n";
  for (auto lambda : spectrum.eigenvalues) std::cout << "  " << fmt(lambda) << "\n";
  hr::Complex sum = 0.0;
  for (auto lambda : spectrum.eigenvalues) sum += lambda;
  std::cout << "sum " << fmt(sum) << ", trace " << fmt(w.trace()) << "\n";
  if (!a.out.empty()) write_json(a.out, hr::spectrum_json(spectrum.eigenvalues));
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw hr::ParseError("cannot write " + a.csv);
    csv << "re,im\n" << std::setprecision(17);
    for (auto lambda : spectrum.eigenvalues) csv << lambda.real() << "," << lambda.imag() << "\n";
  }
  return kOk;
}

struct SolveArgs {
  std::string mode = "auto";
  std::string params;
  int starts = 64;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const auto problem = hr::build_problem(hr::load_params(a.params));
  const auto& ctx = require_ctx(problem);
  const auto& hp = require_heun(problem);
  hr::SolverConfig cfg;
  cfg.starts = a.starts;
  cfg.seed = a.seed;

  bool homogeneous = a.mode == "homogeneous";
  if (a.mode == "auto") homogeneous = !hr::integer_p_bars(hp, problem.racah.N).empty();
  std::cout << "p_bar candidates: " << fmt(hp.p_bar_plus) << ", " << fmt(hp.p_bar_minus) << "\n";
  const auto report = homogeneous ? hr::solve_homogeneous(hp, ctx, cfg)
                                  : hr::solve_inhomogeneous(hp, ctx, cfg);

  std::cout << "mode " << hr::to_string(report.mode) << ": " << report.attempts << " starts, "
            << report.converged << " converged, " << report.distinct << " distinct, "
            << report.states.size() << " certified\n";
  for (const auto& s : report.states) {
    std::cout << "  eigenvalue " << fmt(s.eigenvalue) << "  eigen_residual "
              << fmt(s.eigen_residual) << "\n    roots:";
    for (auto x : s.roots) std::cout << " [" << fmt(x) << "]";
    double worst = 0.0;
    for (auto r : s.bethe_residuals) worst = std::max(worst, std::abs(r));
    std::cout << "\n    max |bethe residual| " << fmt(worst) << "\n";
  }
  std::cout << "spectrum coverage " << fmt(report.coverage_fraction()) << ":\n";
  for (const auto& c : report.spectrum_coverage) {
    std::cout << "  " << (c.matched ? "[x] " : "[ ] ") << fmt(c.eigenvalue) << "\n";
  }
  if (report.ambiguous_match) std::cout << "warning: ambiguous eigenvalue match\n";
  if (!a.out.empty()) write_json(a.out, hr::to_json(report));
  return kOk;
}

struct MabaArgs {
  std::string params;
  std::optional<int> N;
  int draws = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_check_maba(const MabaArgs& a) {
  auto file = hr::load_params(a.params);
  if (a.N) file.N = *a.N;
  if (file.N < 1) throw hr::ParseError("check-maba needs N >= 1");
  const auto problem = hr::build_problem(file);
  const auto& ctx = require_ctx(problem);
  const auto& rp = problem.racah;

  hr::Rng rng(a.seed);
  std::vector<double> residuals;
  for (int d = 0; d < a.draws; ++d) {
    const hr::Complex m = problem.heun ? problem.heun->m_bar : hr::sample_annulus(rng);
    const hr::Complex k_root = rp.gamma + rp.delta - 2.0 * m + 2.0 * rp.N + 2.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw hr::ParameterDomainError("no admissible draw in 1000 attempts; the reduction weights "
                                       "have a pole at these parameters");
      }
      hr::RootList xs(static_cast<std::size_t>(rp.N));
      for (auto& x : xs) x = hr::sample_annulus(rng);
      // The first draw sits on the root of the slot-weight numerator.
      const hr::Complex u = d == 0 ? k_root : hr::sample_annulus(rng);
      double gap = std::abs(u);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        gap = std::min(gap, std::abs(u * u - xs[i] * xs[i]));
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
          gap = std::min(gap, std::abs(xs[i] * xs[i] - xs[j] * xs[j]));
        }
      }
      if (gap < hr::kPoleMargin) continue;
      try {
        residuals.push_back(hr::maba_residual(xs, u, m, ctx));
        break;
      } catch (const hr::ParameterDomainError&) {
        continue;
      }
    }
  }

  const double worst = *std::max_element(residuals.begin(), residuals.end());
  double mean = 0.0;
  for (double r : residuals) mean += r;
  mean /= static_cast<double>(residuals.size());
  const bool ok = worst <= 1e-8;
  std::cout << "N=" << rp.N << " draws=" << residuals.size() << " seed=" << a.seed
            << "\n  max residual " << fmt(worst) << "\n  mean residual " << fmt(mean)
            << "\n  min residual " << fmt(*std::min_element(residuals.begin(), residuals.end()))
            << "\n";
  std::string verdict;
  if (rp.N <= 4) {
    verdict = ok ? "PASS" : "FAIL";
  } else {
    verdict = ok ? "CONJECTURE SUPPORTED" : "CONJECTURE VIOLATED";
  }
  std::cout << verdict << " (worst residual " << fmt(worst) << ")\n";
  if (!a.out.empty()) {
    write_json(a.out, hr::Json{{"N", rp.N},
                               {"draws", residuals.size()},
                               {"seed", a.seed},
                               {"residuals", residuals},
                               {"max_residual", worst},
                               {"verdict", verdict}});
  }
  return (rp.N <= 4 && !ok) ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Racah-algebra representations, Heun-Racah operators and their Bethe ansatz"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check algebra and Bethe-ansatz identities on random draws");
  v->add_option("--relations", verify.relations, "Comma-separated relation ids, or 'all'");
  v->add_option("--params", verify.params, "Parameter JSON file")->required();
  v->add_option("--samples", verify.samples, "Draws per relation")->check(CLI::PositiveNumber);
  v->add_option("--tol", verify.tol, "Residual tolerance for every relation")->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed, "Sampling seed");
  v->add_option("--out", verify.out, "Write JSON report");

  SpectrumArgs spectrum;
  auto* s = app.add_subcommand("spectrum", "Dense eigenvalues of W");
  s->add_option("--params", spectrum.params, "Parameter JSON file")->required();
  s->add_option("--out", spectrum.out, "Write JSON");
  s->add_option("--csv", spectrum.csv, "Write CSV with header re,im");

  SolveArgs solve;
  auto* so = app.add_subcommand("solve", "Solve the Bethe equations and certify eigenpairs");
  so->add_option("--mode", solve.mode, "homogeneous | inhomogeneous | auto")
      ->check(CLI::IsMember({"homogeneous", "inhomogeneous", "auto"}));
  so->add_option("--params", solve.params, "Parameter JSON file")->required();
  so->add_option("--starts", solve.starts, "Newton starts")->check(CLI::PositiveNumber);
  so->add_option("--seed", solve.seed, "Start seed");
  so->add_option("--out", solve.out, "Write SolveReport JSON");

  MabaArgs maba;
  auto* m = app.add_subcommand("check-maba", "Check the (N+1)-root Bethe vector reduction");
  m->add_option("--params", maba.params, "Parameter JSON file")->required();
  m->add_option("--N", maba.N, "Override N from the parameter file");
  m->add_option("--draws", maba.draws, "Random draws")->check(CLI::PositiveNumber);
  m->add_option("--seed", maba.seed, "Sampling seed");
  m->add_option("--out", maba.out, "Write JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*v) return cmd_verify(verify);
    if (*s) return cmd_spectrum(spectrum);
    if (*so) return cmd_solve(solve);
    if (*m) return cmd_check_maba(maba);
  } catch (const hr::RelationViolation& e) {
    std::cerr << "relation violation: " << e.what() << "\n";
    return kViolation;
  } catch (const hr::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const hr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
