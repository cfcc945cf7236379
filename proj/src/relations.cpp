#include "heunracah/relations.hpp"

#include <array>
#include <functional>
#include <stdexcept>

namespace heunracah {

namespace {

struct Names {
  RelationId id;
  std::string_view name;
};

constexpr std::array<Names, 12> kNames{{
    {RelationId::R1, "R1"},
    {RelationId::R2, "R2"},
    {RelationId::R3, "R3"},
    {RelationId::BB_EXCHANGE, "BB_EXCHANGE"},
    {RelationId::AB_EXCHANGE, "AB_EXCHANGE"},
    {RelationId::CA_EXCHANGE, "CA_EXCHANGE"},
    {RelationId::WA_IDENTITY, "WA_IDENTITY"},
    {RelationId::VACUUM_ACTION, "VACUUM_ACTION"},
    {RelationId::ABV_ACTION, "ABV_ACTION"},
    {RelationId::COMBINATION_IDENTITY, "COMBINATION_IDENTITY"},
    {RelationId::PSI_FACTORED, "PSI_FACTORED"},
    {RelationId::MABA_REDUCTION, "MABA_REDUCTION"},
}};

bool clear_of(std::initializer_list<Complex> dens, double margin) {
  for (Complex d : dens) {
    if (!(std::abs(d) >= margin)) return false;
  }
  return true;
}

double scalar_residual(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

constexpr int kMaxDraws = 10000;

void give_up_after(int attempt) {
  if (attempt >= kMaxDraws) {
    throw ParameterDomainError("no admissible sample in " + std::to_string(kMaxDraws) +
                               " draws; the parameters sit on a pole of this relation");
  }
}

template <typename Draw, typename Accept>
auto draw_until(Draw draw, Accept accept) {
  for (int attempt = 0;; ++attempt) {
    give_up_after(attempt);
    auto t = draw();
    if (accept(t)) return t;
  }
}

class Sampler {
 public:
  Sampler(const DynContext& ctx, const std::optional<HeunParams>& hp, const RelationSweep& sweep)
      : ctx_(ctx), hp_(hp), margin_(sweep.pole_margin), rng_(sweep.seed) {}

  VerificationReport run(RelationId id, int samples) {
    VerificationReport report;
    report.relation = id;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
      SampleTuple tuple;
      const double res = sample(id, s, tuple);
      if (s == 0 || res > report.max_residual || std::isnan(res)) {
        report.max_residual = std::isnan(res) ? std::numeric_limits<double>::infinity() : res;
        report.worst_tuple = tuple;
      }
    }
    if (id == RelationId::ABV_ACTION) {
      const bool consistent = abv_consistent_max_ <= abv_printed_max_;
      report.notes["slot_m_minus_r_plus_1_max_residual"] = abv_consistent_max_;
      report.notes["slot_m_minus_r_minus_1_max_residual"] = abv_printed_max_;
      report.notes["adopted_slot_offset"] = consistent ? 1.0 : -1.0;
      report.max_residual = std::min(abv_consistent_max_, abv_printed_max_);
    }
    return report;
  }

 private:
  Complex z() { return sample_annulus(rng_); }
  Complex rho() const { return ctx_.rho(); }

  HeunParams heun() {
    if (hp_) return *hp_;
    return draw_until(
        [&] { return make_heun_params(rho(), z(), z(), ctx_.params()); },
        [&](const HeunParams& h) { return clear_of({2.0 * h.m_bar * rho() - 1.0}, margin_); });
  }

  RootList roots(std::size_t p) {
    RootList xs(p);
    for (auto& x : xs) x = z();
    return xs;
  }

  // Common denominators for a configuration of roots and a spectral point at m.
  bool roots_clear(const RootList& xs, Complex u, Complex m) const {
    const auto& rp = ctx_.params();
    const Complex s = rp.gamma + rp.delta;
    const Complex m_last = m - static_cast<double>(xs.size());
    auto point = [&](Complex y) {
      return clear_of({y, y - 1.0, y + 1.0, s - 2.0 * m_last + 2.0 - y,
                       s - 2.0 * m_last + 2.0 + y},
                      margin_);
    };
    if (!point(u)) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!point(xs[i]) || !clear_of({u * u - xs[i] * xs[i]}, margin_)) return false;
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (!clear_of({xs[i] * xs[i] - xs[j] * xs[j]}, margin_)) return false;
      }
    }
    for (std::size_t i = 0; i <= xs.size(); ++i) {
      if (!clear_of({2.0 * (m - static_cast<double>(i)) * rho() - 1.0}, margin_)) return false;
    }
    return true;
  }

  double sample(RelationId id, int index, SampleTuple& tuple) {
    const auto& rep = ctx_.rep();
    const auto& rp = ctx_.params();
    switch (id) {
      case RelationId::R1:
      case RelationId::R2:
      case RelationId::R3: {
        const auto r = defining_relation_residuals(rep.X, rep.Y, rep.Z, rp.b, rp.d1, rp.d2);
        return id == RelationId::R1 ? r.r1 : id == RelationId::R2 ? r.r2 : r.r3;
      }
      case RelationId::BB_EXCHANGE: {
        const Complex u = z(), v = z(), m = z();
        tuple = {u, v, m, {}};
        const OperatorMatrix lhs = op_B(u, m + 1.0, ctx_) * op_B(v, m, ctx_);
        return residual_norm(lhs, OperatorMatrix(op_B(v, m + 1.0, ctx_) * op_B(u, m, ctx_)));
      }
      case RelationId::AB_EXCHANGE:
      case RelationId::CA_EXCHANGE: {
        const auto [u, v, m] = exchange_tuple();
        tuple = {u, v, m, {}};
        const Complex k1 = coeff_k1(u, v);
        const Complex k2p = coeff_k2(u, v, m, rho());
        const Complex k2m = coeff_k2(u, -v, m, rho());
        const OperatorMatrix mix =
            k2p * op_A(v, m - 1.0, ctx_) + k2m * op_A(-v, m - 1.0, ctx_);
        if (id == RelationId::AB_EXCHANGE) {
          const OperatorMatrix bv = op_B(v, m, ctx_);
          const OperatorMatrix lhs = op_A(u, m, ctx_) * bv;
          const OperatorMatrix rhs =
              k1 * bv * op_A(u, m - 1.0, ctx_) + op_B(u, m, ctx_) * mix;
          return residual_norm(lhs, rhs);
        }
        const OperatorMatrix cv = op_C(v, m, ctx_);
        const OperatorMatrix lhs = cv * op_A(u, m, ctx_);
        const OperatorMatrix rhs = k1 * op_A(u, m - 1.0, ctx_) * cv + mix * op_C(u, m, ctx_);
        return residual_norm(lhs, rhs);
      }
      case RelationId::WA_IDENTITY: {
        const HeunParams hp = heun();
        auto ok = [&](Complex u) {
          return clear_of({u, u - 1.0, u + 1.0}, margin_);
        };
        const Complex u1 = draw_until([&] { return z(); }, ok);
        const Complex u2 = draw_until([&] { return z(); }, ok);
        tuple = {u1, u2, hp.m_bar, {}};
        const OperatorMatrix w = build_W_parametric(hp, ctx_);
        const OperatorMatrix r1 = wa_expansion(u1, hp, ctx_);
        return std::max(residual_norm(r1, w), residual_norm(r1, wa_expansion(u2, hp, ctx_)));
      }
      case RelationId::VACUUM_ACTION: {
        const Complex s = rp.gamma + rp.delta;
        const auto [u, m] = draw_until(
            [&] { return std::pair{z(), z()}; },
            [&](const auto& t) {
              const auto [u, m] = t;
              return clear_of({u - 1.0, 2.0 * m * rho() - 1.0, s - 2.0 * m + 2.0 - u}, margin_);
            });
        tuple = {u, std::nullopt, m, {}};
        const StateVector e0 = vacuum(ctx_.dim());
        const auto vc = vacuum_coeffs(u, m, rp, rho());
        const StateVector lhs = op_A(u, m, ctx_) * e0;
        return residual_norm(lhs, StateVector(vc.xi * e0 + vc.zeta * (op_B(u, m, ctx_) * e0)));
      }
      case RelationId::ABV_ACTION: {
        const std::size_t p = 1 + static_cast<std::size_t>(index % 3);
        RootList xs;
        Complex u, m;
        for (int attempt = 0;; ++attempt) {
          give_up_after(attempt);
          xs = roots(p);
          u = z();
          m = z();
          if (roots_clear(xs, u, m)) break;
        }
        tuple = {u, std::nullopt, m, xs};
        const double consistent = abv_residual(u, xs, m, ctx_, SlotConvention::Consistent);
        const double printed = abv_residual(u, xs, m, ctx_, SlotConvention::AsPrinted);
        abv_consistent_max_ = std::max(abv_consistent_max_, consistent);
        abv_printed_max_ = std::max(abv_printed_max_, printed);
        return std::min(consistent, printed);
      }
      case RelationId::COMBINATION_IDENTITY: {
        const HeunParams hp = heun();
        const auto [u, v] = draw_until(
            [&] { return std::pair{z(), z()}; },
            [&](const auto& t) {
              const auto [u, v] = t;
              return clear_of({u, v, u - v, u + v}, margin_);
            });
        tuple = {u, v, hp.m_bar, {}};
        const Complex lhs = heun_h1(u, hp) * coeff_k2(u, v, hp.m_bar, rho()) +
                            heun_h1(-u, hp) * coeff_k2(-u, v, hp.m_bar, rho());
        const Complex rhs = f1_W(v, hp) / (rho() * (rho() - 1.0) * (u * u - v * v));
        return scalar_residual(lhs, rhs);
      }
      case RelationId::PSI_FACTORED: {
        const HeunParams hp = heun();
        const int p = index % 4;
        RootList xs;
        Complex u;
        for (int attempt = 0;; ++attempt) {
          give_up_after(attempt);
          xs = roots(static_cast<std::size_t>(p));
          u = z();
          if (roots_clear(xs, u, hp.m_bar) &&
              pole_distance(xs, u, BetheMode::Homogeneous, hp, ctx_) >= margin_)
            break;
        }
        tuple = {u, std::nullopt, hp.m_bar, xs};
        const auto values = psi(u, p, xs, hp, ctx_);
        return scalar_residual(values.factored, values.summed);
      }
      case RelationId::MABA_REDUCTION: {
        const HeunParams hp = heun();
        RootList xs;
        Complex u;
        for (int attempt = 0;; ++attempt) {
          give_up_after(attempt);
          xs = roots(static_cast<std::size_t>(rp.N));
          u = z();
          if (roots_clear(xs, u, hp.m_bar) &&
              pole_distance(xs, u, BetheMode::Inhomogeneous, hp, ctx_) >= margin_)
            break;
        }
        tuple = {u, std::nullopt, hp.m_bar, xs};
        return maba_residual(xs, u, hp.m_bar, ctx_);
      }
    }
    throw std::logic_error("unhandled relation id");
  }

  std::tuple<Complex, Complex, Complex> exchange_tuple() {
    return draw_until(
        [&] { return std::tuple{z(), z(), z()}; },
        [&](const auto& t) {
          const auto [u, v, m] = t;
          return clear_of({u * u - v * v, v, u - 1.0, v - 1.0, v + 1.0,
                           2.0 * m * rho() - 1.0, 2.0 * (m - 1.0) * rho() - 1.0},
                          margin_);
        });
  }

  const DynContext& ctx_;
  const std::optional<HeunParams>& hp_;
  double margin_;
  Rng rng_;
  double abv_consistent_max_ = 0.0;
  double abv_printed_max_ = 0.0;
};

}  // namespace

std::string_view to_string(RelationId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.name;
  }
  return "UNKNOWN";
}

RelationId relation_from_string(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.id;
  }
  throw std::invalid_argument("unknown relation: " + std::string(name));
}

RelationViolation::RelationViolation(VerificationReport report)
    : Error(std::string(to_string(report.relation)) + " violated: residual " +
            std::to_string(report.max_residual) + " > tol " + std::to_string(report.tol)),
      report_(std::move(report)) {}

VerificationReport measure_relation(RelationId id, const DynContext& ctx,
                                    const std::optional<HeunParams>& hp,
                                    const RelationSweep& sweep) {
  if (sweep.samples < 1) throw std::invalid_argument("samples must be at least 1");
  Sampler sampler(ctx, hp, sweep);
  auto report = sampler.run(id, sweep.samples);
  report.seed = sweep.seed;
  report.tol = sweep.tol;
  return report;
}

VerificationReport verify_relation(RelationId id, const DynContext& ctx,
                                   const std::optional<HeunParams>& hp,
                                   const RelationSweep& sweep) {
  auto report = measure_relation(id, ctx, hp, sweep);
  if (!report.passed()) throw RelationViolation(report);
  return report;
}

}  // namespace heunracah
