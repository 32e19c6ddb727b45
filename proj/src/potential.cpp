#include "bose/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bose/errors.hpp"
#include "bose/quadrature.hpp"
#include "bose/special.hpp"

namespace bose {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string kind_name(PotentialKind k) {
  switch (k) {
    case PotentialKind::hard_core: return "hard_core";
    case PotentialKind::step: return "step";
    case PotentialKind::tabulated: return "tabulated";
    case PotentialKind::attractive_well: return "attractive_well";
  }
  return "?";
}

RadialPotential RadialPotential::hard_core(double core_radius) {
  if (!(core_radius > 0.0)) throw domain_error("hard_core: radius must be > 0");
  RadialPotential p;
  p.kind_ = PotentialKind::hard_core;
  p.range_ = core_radius;
  return p;
}

RadialPotential RadialPotential::step(double height, double width) {
  if (!(width > 0.0)) throw domain_error("step: width must be > 0");
  if (!(height >= 0.0) || !std::isfinite(height))
    throw domain_error("step: height must be finite and >= 0");
  RadialPotential p;
  p.kind_ = PotentialKind::step;
  p.range_ = width;
  p.height_ = height;
  return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> r,
                                           std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 2)
    throw domain_error("tabulated: need matching r/v arrays of size >= 2");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(v[i]) || v[i] < 0.0)
      throw domain_error("tabulated: samples must be finite and non-negative");
    if (i > 0 && r[i] <= r[i - 1])
      throw domain_error("tabulated: r samples must be strictly increasing");
  }
  if (r.front() < 0.0) throw domain_error("tabulated: r must be >= 0");
  RadialPotential p;
  p.kind_ = PotentialKind::tabulated;
  p.range_ = r.back();
  p.table_r_ = std::move(r);
  p.table_v_ = std::move(v);
  return p;
}

RadialPotential RadialPotential::attractive_well(double lambda, double range) {
  if (!(range > 0.0)) throw domain_error("attractive_well: range must be > 0");
  if (!(lambda >= 0.0) || lambda >= 1.5707963267948966)
    throw domain_error("attractive_well: lambda must lie in [0, pi/2)");
  RadialPotential p;
  p.kind_ = PotentialKind::attractive_well;
  p.range_ = range;
  p.lambda_ = lambda;
  return p;
}

double RadialPotential::operator()(double r) const {
  if (r < 0.0) throw domain_error("potential: r must be >= 0");
  switch (kind_) {
    case PotentialKind::hard_core:
      return r <= range_ ? kInf : 0.0;
    case PotentialKind::step:
      return r <= range_ ? height_ : 0.0;
    case PotentialKind::attractive_well: {
      const double k = lambda_ / range_;
      return r <= range_ ? -k * k : 0.0;
    }
    case PotentialKind::tabulated: {
      if (r < table_r_.front() || r > table_r_.back()) return 0.0;
      auto it = std::upper_bound(table_r_.begin(), table_r_.end(), r);
      if (it == table_r_.begin()) return table_v_.front();
      const std::size_t hi = static_cast<std::size_t>(it - table_r_.begin());
      if (hi >= table_r_.size()) return table_v_.back();
      const std::size_t lo = hi - 1;
      const double w = (r - table_r_[lo]) / (table_r_[hi] - table_r_[lo]);
      return table_v_[lo] + w * (table_v_[hi] - table_v_[lo]);
    }
  }
  return 0.0;
}

std::vector<double> RadialPotential::breakpoints() const {
  switch (kind_) {
    case PotentialKind::hard_core:
    case PotentialKind::step:
    case PotentialKind::attractive_well:
      return {range_};
    case PotentialKind::tabulated:
      return table_r_;
  }
  return {};
}

RadialPotential RadialPotential::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double r0 = j.at("R0").get<double>();
  const nlohmann::json params =
      j.contains("params") ? j.at("params") : nlohmann::json::object();
  if (kind == "hard_core") {
    const double a = params.value("a", r0);
    if (std::fabs(a - r0) > 1e-12 * std::max(1.0, r0))
      throw domain_error("potential spec: hard_core requires params.a == R0");
    return hard_core(a);
  }
  if (kind == "step") {
    const double width = params.value("width", r0);
    if (std::fabs(width - r0) > 1e-12 * std::max(1.0, r0))
      throw domain_error("potential spec: step requires params.width == R0");
    return step(params.at("height").get<double>(), width);
  }
  if (kind == "tabulated") {
    return tabulated(params.at("r").get<std::vector<double>>(),
                     params.at("v").get<std::vector<double>>());
  }
  if (kind == "attractive_well") {
    return attractive_well(params.at("lambda").get<double>(), r0);
  }
  throw domain_error("potential spec: unknown kind '" + kind + "'");
}

nlohmann::json RadialPotential::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind_);
  j["R0"] = range_;
  nlohmann::json params = nlohmann::json::object();
  switch (kind_) {
    case PotentialKind::hard_core:
      params["a"] = range_;
      break;
    case PotentialKind::step:
      params["height"] = height_;
      params["width"] = range_;
      break;
    case PotentialKind::tabulated:
      params["r"] = table_r_;
      params["v"] = table_v_;
      break;
    case PotentialKind::attractive_well:
      params["lambda"] = lambda_;
      break;
  }
  j["params"] = params;
  return j;
}

double cumulative_tail(const RadialPotential& p, double s) {
  if (s < 0.0) throw domain_error("cumulative_tail: s must be >= 0");
  if (p.has_hard_core() && s <= p.core_radius()) return kInf;
  const double r0 = p.range();
  if (s >= r0) return 0.0;
  return integrate_segmented([&](double r) { return r * r * p(r); }, s, r0,
                             p.breakpoints(), 1e-10, 1e-14);
}

double TruncatedPotential::operator()(double r) const {
  if (r < 0.0) throw domain_error("potential: r must be >= 0");
  switch (mode_) {
    case Mode::unchanged:
      return base_(r);
    case Mode::tail_cut:
      return r >= s_ ? base_(r) : 0.0;
    case Mode::explicit_step:
      return r <= base_.core_radius() ? explicit_height_ : 0.0;
  }
  return 0.0;
}

double TruncatedPotential::range() const { return base_.range(); }

std::vector<double> TruncatedPotential::breakpoints() const {
  std::vector<double> b = base_.breakpoints();
  if (mode_ == Mode::tail_cut) b.push_back(s_);
  std::sort(b.begin(), b.end());
  return b;
}

double TruncatedPotential::budget() const {
  return integrate_segmented([&](double r) { return r * r * (*this)(r); }, 0.0,
                             range(), breakpoints(), 1e-10, 1e-14);
}

nlohmann::json TruncatedPotential::to_json() const {
  nlohmann::json j;
  j["base"] = base_.to_json();
  j["phi"] = phi_;
  j["mode"] = mode_ == Mode::unchanged
                  ? "unchanged"
                  : (mode_ == Mode::tail_cut ? "tail_cut" : "explicit_step");
  j["cut_radius_s"] = s_;
  j["epsilon"] = epsilon_;
  if (tau_) j["tau"] = *tau_;
  if (mode_ == Mode::explicit_step) j["step_height"] = explicit_height_;
  j["budget"] = budget();
  return j;
}

TruncatedPotential truncate(const RadialPotential& p, double phi,
                            std::optional<double> a_estimate) {
  if (!(phi > 0.0)) throw domain_error("truncate: phi must be > 0");
  if (!p.non_negative())
    throw domain_error("truncate: potential must be non-negative");
  TruncatedPotential t;
  t.base_ = p;
  t.phi_ = phi;
  const double a_est = a_estimate.value_or(p.range());
  t.epsilon_ = std::sqrt(std::min(1.0, a_est / phi));

  if (p.has_hard_core()) {
    // The generic construction is ill-posed on a literal infinity, so the
    // hard core always takes the explicit step of height 6 phi a^-3, whose
    // second moment saturates the budget exactly.
    const double a = p.core_radius();
    t.mode_ = TruncatedPotential::Mode::explicit_step;
    t.explicit_height_ = 6.0 * phi / (a * a * a);
    t.s_ = 0.0;
    return t;
  }

  const double total = cumulative_tail(p, 0.0);
  if (!std::isfinite(total))
    throw numerical_error("truncate: non-integrable second moment");
  if (total < 2.0 * phi) {
    t.mode_ = TruncatedPotential::Mode::unchanged;
    t.s_ = 0.0;
    return t;
  }
  // tail(s) = integral_s^R0 r^2 v is continuous and non-increasing with
  // tail(0) >= 2 phi and tail(R0) = 0; bisect on the budget value.
  const double target = 2.0 * phi;
  const double lo0 = 0.0, hi0 = p.range();
  double lo = lo0, hi = hi0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double tail = cumulative_tail(p, mid);
    if (std::fabs(tail - target) <= 1e-10 * target) {
      lo = hi = mid;
      break;
    }
    if (tail > target)
      lo = mid;
    else
      hi = mid;
  }
  t.mode_ = TruncatedPotential::Mode::tail_cut;
  t.s_ = 0.5 * (lo + hi);
  return t;
}

}  // namespace bose
