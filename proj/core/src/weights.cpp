#include "lozenge/weights.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lozenge/errors.hpp"

namespace lozenge {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::homogeneous: return "homogeneous";
    case Regime::periodic: return "periodic";
    case Regime::intermediate: return "intermediate";
  }
  return "?";
}

std::string to_string(ParityAnchor a) {
  return a == ParityAnchor::absolute ? "absolute" : "wall_relative";
}

Regime regime_from_string(const std::string& s) {
  if (s == "homogeneous") return Regime::homogeneous;
  if (s == "periodic") return Regime::periodic;
  if (s == "intermediate") return Regime::intermediate;
  throw ConfigError("unknown regime '" + s + "'");
}

ParityAnchor anchor_from_string(const std::string& s) {
  if (s == "absolute") return ParityAnchor::absolute;
  if (s == "wall_relative" || s == "wall-relative") return ParityAnchor::wall_relative;
  throw ConfigError("unknown parity anchor '" + s + "'");
}

void WeightSchedule::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("r must be positive");
  if (regime == Regime::periodic && !(alpha >= 1.0))
    throw ConfigError("periodic regime needs alpha >= 1");
  if (regime == Regime::intermediate && !(gamma >= 0.0))
    throw ConfigError("intermediate regime needs gamma >= 0");
}

bool WeightSchedule::odd_slot(int t) const {
  const int shifted = anchor == ParityAnchor::absolute ? t : t - origin + 1;
  return (shifted % 2 + 2) % 2 == 1;
}

double WeightSchedule::log_q(int t) const {
  switch (regime) {
    case Regime::homogeneous: return -r;
    case Regime::periodic: return -r + (odd_slot(t) ? 1.0 : -1.0) * std::log(alpha);
    case Regime::intermediate:
      return -r + (odd_slot(t) ? -1.0 : 1.0) * gamma * std::sqrt(r);
  }
  return -r;
}

double WeightSchedule::q(int t) const { return std::exp(log_q(t)); }

WeightSchedule WeightSchedule::anchored_to(const BackWall& wall) const {
  WeightSchedule s = *this;
  s.origin = wall.u0();
  return s;
}

double q_eval(const WeightSchedule& s, int t) { return s.q(t); }

SpecializationParams::SpecializationParams(const WeightSchedule& s, const BackWall& wall,
                                           double log_gauge)
    : schedule_(s), wall_(wall), log_gauge_(log_gauge) {
  schedule_.validate();
  const int u0 = wall_.u0(), un = wall_.un();
  for (int t = u0 + 1; t < un; ++t) log_q_.push_back(schedule_.log_q(t));
  double acc = log_gauge_;
  for (int two_m = 2 * u0 + 1; two_m < 2 * un; two_m += 2) {
    if (two_m > 2 * u0 + 1) acc += log_q((two_m - 1) / 2);
    log_xp_.push_back(acc);
    const int sl = wall_.slope_at_half(two_m);
    slope_.push_back(sl);
    (sl < 0 ? d_plus_ : d_minus_).push_back(two_m);
  }
  // consecutive ratio and corner relations
  const double tol = 1e-9;
  for (int two_m = 2 * u0 + 1; two_m + 2 < 2 * un; two_m += 2) {
    const double lq = log_q((two_m + 1) / 2);
    const bool ok = std::abs(log_x_plus(two_m + 2) - log_x_plus(two_m) - lq) < tol &&
                    std::abs(log_x_minus(two_m) - log_x_minus(two_m + 2) - lq) < tol &&
                    std::abs(log_x_plus(two_m) + log_x_minus(two_m + 2) + lq) < tol &&
                    std::abs(log_x_minus(two_m) + log_x_plus(two_m + 2) - lq) < tol;
    if (!ok) throw NumericError("specialization parameters violate the q-ratio relations");
  }
}

int SpecializationParams::index(int two_m) const {
  const int k = (two_m - (2 * wall_.u0() + 1)) / 2;
  if (two_m % 2 == 0 || k < 0 || k >= static_cast<int>(log_xp_.size()))
    throw DomainError("half-integer index outside the wall range");
  return k;
}

double default_log_gauge(const WeightSchedule& s, const BackWall& wall) {
  const double la = s.regime == Regime::periodic ? 0.5 * std::log(s.alpha) : 0.0;
  return la - s.r * (0.5 + wall.u0());
}

SpecializationParams x_params(const WeightSchedule& s, const BackWall& wall,
                              std::optional<double> log_gauge) {
  return SpecializationParams(s, wall, log_gauge ? *log_gauge : default_log_gauge(s, wall));
}

AdmissibilityReport admissibility(const WeightSchedule& s, const StaircaseSpec& spec) {
  AdmissibilityReport rep;
  const double alpha = s.regime == Regime::periodic ? s.alpha : 1.0;
  rep.margin = 1.0 - std::exp(-2.0 * spec.u) * alpha;
  rep.strip_ok = rep.margin > 0.0;
  std::ostringstream os;
  try {
    StaircaseSpec sp = spec;
    sp.r = s.r;
    const Staircase st = staircase_family(sp);
    const BackWall wall = st.domain.wall();
    const auto& u = wall.corners();
    const int n = static_cast<int>(u.size()) - 1;
    rep.parity_ok = (u[1] % 2 == 0) && (u[n - 1] % 2 == 0) && (u[0] % 2 != 0) && (u[n] % 2 != 0);
    // the rising-then-falling corners are the free corner cells
    rep.corners_ok = true;
    const WeightSchedule anchored = s.anchored_to(wall);
    for (int i = 1; i < n; i += 2)
      if (!(anchored.log_q(u[i]) < 0.0)) {
        rep.corners_ok = false;
        os << "corner weight q_" << u[i] << " >= 1; ";
      }
  } catch (const Error& e) {
    os << e.what() << "; ";
  }
  if (!rep.strip_ok) os << "strip weight e^{-2u} alpha >= 1; ";
  rep.ok = rep.strip_ok && rep.corners_ok && rep.parity_ok;
  rep.detail = os.str();
  return rep;
}

FiniteAdmissibility finite_admissibility(const SpecializationParams& x) {
  FiniteAdmissibility out;
  out.max_log_pair = -std::numeric_limits<double>::infinity();
  double best_minus = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  const BackWall& w = x.wall();
  for (int two_m = 2 * w.u0() + 1; two_m < 2 * w.un(); two_m += 2) {
    if (x.slope(two_m) > 0) {
      if (x.log_x_minus(two_m) > best_minus) {
        best_minus = x.log_x_minus(two_m);
        best_i = two_m;
      }
    } else if (best_minus > -std::numeric_limits<double>::infinity()) {
      const double v = best_minus + x.log_x_plus(two_m);
      if (v > out.max_log_pair) {
        out.max_log_pair = v;
        out.worst_two_i = best_i;
        out.worst_two_j = two_m;
      }
    }
  }
  out.ok = out.max_log_pair < 0.0;
  return out;
}

}  // namespace lozenge
