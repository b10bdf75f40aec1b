#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "hypen/engine.hpp"

namespace hypen {

namespace {

double value(const ExtReal& x) { return x.as_double(); }

double convexity(const ConvexBody& C) {
  if (auto* B = std::get_if<Ball>(&C)) return B->r;
  if (auto* T = std::get_if<Tube>(&C)) return T->r;
  return HUGE_VAL;
}

Eps weakest(const ConvexBody& a, const ConvexBody& b) {
  double e = std::min(convexity(a), convexity(b));
  return std::isfinite(e) ? Eps::of(e) : Eps::infinity();
}

bool is_real(const Boundary& b) { return b.inf || b.z.imag() == 0.0; }

bool body_is_real(const ConvexBody& C) {
  if (auto* H = std::get_if<Horoball>(&C)) return is_real(H->center);
  if (auto* B = std::get_if<Ball>(&C)) return B->center.z.imag() == 0.0;
  return std::get<Tube>(C).core.is_real();
}

double length(const Geodesic& g, const ConvexBody& C, const Boundary& xi0) {
  return value(penetration(g, C, PenKind::Length, xi0));
}

}  // namespace

PrescriptionRange prescription_range(const ConvexBody& C0, PenKind f0, const ConvexBody& Cn, Eps eps, double delta) {
  PrescriptionRange r;
  const double k_ph_ipp = c1_prime(Eps::infinity());
  if (std::holds_alternative<Horoball>(C0) || std::holds_alternative<Ball>(C0)) {
    if (f0 != PenKind::PH && f0 != PenKind::IPP) {
      r.applicable = false;
      r.case_name = "none";
      return r;
    }
    double kf = f0 == PenKind::PH ? 0.0 : k_ph_ipp;
    bool horo = std::holds_alternative<Horoball>(C0);
    Eps e = (horo && std::holds_alternative<Horoball>(Cn)) ? Eps::infinity() : eps;
    r.case_name = horo ? "horoball" : "ball";
    r.h_min = 2.0 * c1_prime(e) + 2.0 * delta + kf;
    if (!horo) r.h_max = 2.0 * std::get<Ball>(C0).r - 2.0 * c1_prime(eps) - kf;
    r.h0_min = 2.0 * delta;
    return r;
  }
  // geodesic core
  double ev = eps.inf ? HUGE_VAL : eps.value;
  double kf;
  switch (f0) {
    case PenKind::FTP: kf = 0.0; break;
    case PenKind::CRP: kf = 2.0 * c1_prime(Eps::infinity()); break;
    case PenKind::Length: kf = 2.0 * c1_prime(eps) + 2.0 * ev; break;
    default:
      r.applicable = false;
      r.case_name = "none";
      return r;
  }
  r.case_name = "geodesic tube";
  r.h_min = 4.0 * c1_prime(eps) + 2.0 * ev + delta + kf;
  if (interiors_disjoint(C0, Cn)) {
    r.h0_min = 0.0;
    r.strict_h0 = true;
  } else if (std::holds_alternative<Tube>(Cn)) {
    r.h0_min = 3.0 * c1_prime(eps) + 3.0 * ev + delta + 2.0 * c1_prime(eps) + 2.0 * ev;
  } else {
    r.applicable = false;
  }
  return r;
}

Boundary LevelCircle::at(double theta) const { return chart(Boundary::at(center + std::polar(radius, theta))); }

double LevelCircle::theta_of(const Boundary& b) const {
  Boundary w = chart.inverse()(b);
  if (w.inf) throw domain_error("point at infinity of the chart");
  return std::arg(w.z - center);
}

std::vector<LevelCircle> level_set(const ConvexBody& C0, PenKind f0, double h, const Boundary& xi0) {
  if (!(h > 0.0)) throw domain_error("level sets need h > 0");
  Moebius M = send_to_infinity(xi0);
  Moebius Mi = M.inverse();
  if (auto* H = std::get_if<Horoball>(&C0)) {
    if (same(H->center, xi0)) throw domain_error("source is the center of the horoball");
    Horoball K = apply(M, *H);
    double D = K.size;
    cplx c = K.center.z;
    switch (f0) {
      case PenKind::PH: return {{Mi, c, 0.5 * D * std::exp(-h / 2.0)}};
      case PenKind::IPP: return {{Mi, c, D * std::exp(-h / 2.0)}};
      case PenKind::Length: return {{Mi, c, 0.5 * D / std::cosh(h / 2.0)}};
      default: break;
    }
  } else if (auto* B = std::get_if<Ball>(&C0)) {
    Point c = M(B->center);
    if (h >= 2.0 * B->r) throw domain_error("level exceeds the ball diameter");
    switch (f0) {
      case PenKind::PH: return {{Mi, c.z, c.h * std::sinh(B->r - h / 2.0)}};
      case PenKind::IPP: return {{Mi, c.z, c.h * std::exp(B->r - h / 2.0)}};
      case PenKind::Length: {
        double d = acosh_acc(std::cosh(B->r) / std::cosh(h / 2.0));
        return {{Mi, c.z, c.h * std::sinh(d)}};
      }
      default: break;
    }
  } else {
    const auto& T = std::get<Tube>(C0);
    if (f0 == PenKind::FTP) {
      Moebius G = Geodesic::between(T.core.minus(), T.core.plus()).frame();
      Boundary w0 = G.inverse()(xi0);
      if (w0.inf || std::abs(w0.z) == 0.0) throw domain_error("source is an endpoint of the core");
      double a = std::abs(w0.z);
      return {{G, 0.0, a * std::exp(h)}, {G, 0.0, a * std::exp(-h)}};
    }
    if (f0 == PenKind::CRP) {
      Boundary l1 = M(T.core.minus()), l2 = M(T.core.plus());
      if (l1.inf || l2.inf) throw domain_error("source is an endpoint of the core");
      double rho = std::abs(l1.z - l2.z) * std::exp(-h);
      return {{Mi, l1.z, rho}, {Mi, l2.z, rho}};
    }
  }
  throw domain_error("no closed-form level set for " + pen_kind_name(f0) + " on a " + kind_name(C0));
}

LocalPrescription local_prescribe(const ConvexBody& C0, PenKind f0, double h, const ConvexBody& Cn, double target,
                                  const Boundary& xi0, const Geodesic& current, const LocalOptions& opt) {
  LocalPrescription out;
  Eps eps = opt.eps.value_or(weakest(C0, Cn));
  out.range = prescription_range(C0, f0, Cn, eps, opt.delta);
  const auto& R = out.range;
  out.in_range = R.applicable && h >= R.h_min && (!R.h_max || h <= *R.h_max) &&
                 (R.strict_h0 ? target > R.h0_min : target >= R.h0_min);
  if (!out.in_range) out.warnings.push_back("out of proven range (" + R.case_name + ")");
  if (same(current.minus(), xi0) == false) throw precondition_error("current line does not start at the source");

  double fcur = value(penetration(current, C0, f0, xi0));
  if (std::abs(fcur - h) > 1e-6) throw precondition_error("current line is not on the level set");
  auto circles = level_set(C0, f0, h, xi0);
  const LevelCircle* A = &circles.front();
  double best = HUGE_VAL;
  for (const auto& c : circles) {
    Boundary w = c.chart.inverse()(current.plus());
    double off = w.inf ? HUGE_VAL : std::abs(std::abs(w.z - c.center) - c.radius);
    if (off < best) best = off, A = &c;
  }
  bool real = is_real(xi0) && body_is_real(C0) && body_is_real(Cn);
  if (real) out.warnings.push_back("plane model: outside the dimension hypothesis");

  auto line = [&](double th) { return Geodesic::between(xi0, A->at(th)); };
  auto ell = [&](double th) { return length(line(th), Cn, xi0); };
  double th0 = A->theta_of(current.plus());
  double l0 = length(current, Cn, xi0);

  auto finish = [&](const Geodesic& g) {
    out.g = g;
    out.f0_residual = value(penetration(g, C0, f0, xi0)) - h;
    out.length_residual = length(g, Cn, xi0) - target;
    auto i0 = entry_exit(g, C0), in = entry_exit(g, Cn);
    out.meets_c0_first = i0 && in && value(i0->lo) < value(in->lo);
    return out;
  };
  if (std::abs(l0 - target) <= 1e-10) {
    out.zero_move = true;
    return finish(current);
  }
  if (l0 < target) throw precondition_error("current length is below the target");

  std::vector<double> grid_th, grid_len;
  std::optional<double> th1;
  if (real) {
    // the level set meets the real line in two points
    for (double th : {0.0, M_PI}) {
      Boundary b = A->at(th);
      if (!is_real(b)) continue;
      double v = ell(th);
      grid_th.push_back(th), grid_len.push_back(v);
      if (std::abs(v - target) <= 1e-8) return finish(line(th));
    }
    throw prescription_infeasible("no point of the plane level set has the target length", grid_th, grid_len);
  }
  for (int j = 0; j < 64 && !th1; ++j) {
    double d = 1e-9 * std::ldexp(1.0, j);
    if (d > M_PI) break;
    for (double s : {1.0, -1.0})
      if (ell(th0 + s * d) <= target) {
        th1 = th0 + s * d;
        break;
      }
  }
  if (!th1) {
    for (int i = 0; i < 72; ++i) {
      double th = th0 + 2.0 * M_PI * i / 72.0;
      grid_th.push_back(th), grid_len.push_back(ell(th));
    }
    for (int i = 1; i <= 36 && !th1; ++i)
      for (int s : {1, -1}) {
        int idx = (72 + s * i) % 72;
        if (grid_len[idx] <= target) {
          th1 = th0 + s * 2.0 * M_PI * i / 72.0;
          break;
        }
      }
  }
  if (!th1) throw prescription_infeasible("no sign change of the length residual on the level set", grid_th, grid_len);

  double a = th0, b = *th1;
  double mid = b;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    double v = ell(mid);
    if (std::abs(v - target) <= 1e-11) break;
    (v > target ? a : b) = mid;
  }
  return finish(line(mid));
}

namespace {

class Prescriber {
 public:
  Prescriber(const ObstacleFamily& fam, const Boundary& xi0, const PrescribeOptions& opt)
      : fam_(fam), xi0_(xi0), opt_(opt), k_(derived_constants(opt.params)) {
    if (!fam.designated) throw precondition_error("prescription needs a designated body");
    d_ = *fam.designated;
    h0p_ = opt.h0p.value_or(k_.h0);
    if (h0p_ < k_.h0 - 1e-12) throw precondition_error("h0' must be at least h0");
    h1p_ = k_.h1_prime(h0p_);
  }

  ConstructionTrace run() {
    ConstructionTrace tr;
    const ConvexBody& C0 = fam_.bodies[d_];
    tr.notes.push_back("bodies: " + std::to_string(fam_.bodies.size()));
    if (!fam_.truncation.empty()) tr.notes.push_back("truncation: " + fam_.truncation);
    tr.notes.push_back("h0' = " + std::to_string(h0p_) + ", h1' = " + std::to_string(h1p_) +
                       ", h1'' = " + std::to_string(k_.h1_dprime(h0p_)));
    if (opt_.h < h1p_) tr.notes.push_back("warning: h below h1'");
    bool real = is_real(xi0_);
    for (const auto& C : fam_.bodies) real = real && body_is_real(C);
    if (real) tr.notes.push_back("plane model: outside the dimension hypothesis");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < fam_.bodies.size(); ++i) {
      if (i == d_) continue;
      Eps eps = opt_.params.eps0;
      auto R = prescription_range(C0, opt_.f0, fam_.bodies[i], eps, fam_.delta0);
      std::string key = kind_name(fam_.bodies[i]);
      if (seen.count(key)) continue;
      seen.insert(key);
      bool ok = R.applicable && opt_.h >= R.h_min && (!R.h_max || opt_.h <= *R.h_max) &&
                (R.strict_h0 ? h0p_ > R.h0_min : h0p_ >= R.h0_min);
      if (!ok) tr.notes.push_back("warning: out of proven range for " + key + " obstacles (" + R.case_name + ")");
    }
    check_almost_disjoint(fam_);

    Boundary b0;
    if (opt_.initial_end) {
      b0 = *opt_.initial_end;
    } else {
      b0 = level_set(C0, opt_.f0, opt_.h, xi0_).front().at(opt_.theta0);
    }
    Geodesic g = line(b0);
    double f = value(penetration(g, C0, opt_.f0, xi0_));
    if (std::abs(f - opt_.h) > 1e-6) throw precondition_error("initial line is not on the level set");
    tr.iterates.push_back(g);
    tr.steps.push_back({0, -1, 0.0, g.plus()});

    double head = 0.0, gap = HUGE_VAL, cauchy = -HUGE_VAL;
    double tprev = 0.0;
    for (int k = 1; k <= opt_.max_iter; ++k) {
      long n = violator(g);
      if (n < 0) {
        tr.converged = true;
        break;
      }
      LocalOptions lo;
      lo.eps = opt_.params.eps0;
      lo.delta = fam_.delta0;
      auto lp = local_prescribe(C0, opt_.f0, opt_.h, fam_.bodies[n], h0p_, xi0_, g, lo);
      for (const auto& w : lp.warnings)
        if (std::find(tr.notes.begin(), tr.notes.end(), "warning: " + w) == tr.notes.end())
          tr.notes.push_back("warning: " + w);
      Geodesic next = line(lp.g.plus());
      auto iv = entry_exit(next, fam_.bodies[n]);
      if (!iv) throw step_error("prescribed line misses obstacle " + std::to_string(n));
      double tk = value(iv->lo);
      head = std::max(head, std::abs(value(penetration(next, C0, opt_.f0, xi0_)) - opt_.h));
      gap = std::min(gap, tk - tprev);
      const int M = 128;
      for (int j = 0; j <= M; ++j) {
        double t = tk * j / M;
        cauchy = std::max(cauchy, dist(next.at(t), g.at(t)) - k_.c3 * std::exp(t - tk));
      }
      ts_.push_back(tk);
      tr.iterates.push_back(next);
      tr.steps.push_back({k, n, tk, next.plus()});
      g = next;
      tprev = tk;
    }
    if (!tr.converged) tr.notes.push_back("stopped at max_iter");
    tr.final_geodesic = g;

    double f_final = value(penetration(g, C0, opt_.f0, xi0_));
    tr.checks.push_back({"f0 = h", std::abs(f_final - opt_.h), 1e-6, std::abs(f_final - opt_.h) <= 1e-6});
    if (ts_.size() > 0) {
      tr.checks.push_back({"head drift", head, 1e-8, head <= 1e-8});
      tr.checks.push_back({"entry gap vs c6", gap, k_.c6, gap >= k_.c6 - 1e-6});
      tr.checks.push_back({"cauchy margin", cauchy, 1e-6, cauchy <= 1e-6});
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < fam_.bodies.size(); ++i) {
      if (i == d_) continue;
      auto iv = entry_exit(g, fam_.bodies[i]);
      if (!iv || !(value(iv->hi) > fam_.delta0) || value(iv->lo) > opt_.horizon) continue;
      double v = value(iv->length());
      worst = std::max(worst, v);
      tr.report.push_back({i, value(iv->lo), v, h1p_, v <= h1p_ + 1e-6});
    }
    tr.checks.push_back({"max length vs h1'", worst, h1p_, worst <= h1p_ + 1e-6});
    return tr;
  }

 private:
  // Line from the source to b, parametrized to enter C0 at time 0.
  Geodesic line(const Boundary& b) const {
    Geodesic g = Geodesic::between(xi0_, b);
    auto iv = entry_exit(g, fam_.bodies[d_]);
    if (!iv || !iv->lo.is_finite()) throw step_error("line misses the designated body");
    return Geodesic::anchored_near(xi0_, b, g.at(iv->lo.v));
  }

  // running upper bound for the obstacles already treated
  double bound(double t) const {
    double u = h0p_;
    for (double tj : ts_)
      if (tj >= t) u += k_.c5 * std::exp(t - tj);
    return u;
  }

  long violator(const Geodesic& g) const {
    long best = -1;
    double best_t = HUGE_VAL;
    for (std::size_t i = 0; i < fam_.bodies.size(); ++i) {
      if (i == d_) continue;
      auto iv = entry_exit(g, fam_.bodies[i]);
      if (!iv) continue;
      double lo = value(iv->lo), hi = value(iv->hi);
      if (!(hi >= fam_.delta0) || lo > opt_.horizon) continue;
      double len = hi - lo;
      if (!(len > bound(std::max(0.0, hi - fam_.delta0)) + 1e-9)) continue;
      if (lo < best_t) best_t = lo, best = static_cast<long>(i);
    }
    return best;
  }

  const ObstacleFamily& fam_;
  Boundary xi0_;
  PrescribeOptions opt_;
  ConstantTable k_;
  std::size_t d_ = 0;
  double h0p_ = 0.0, h1p_ = 0.0;
  std::vector<double> ts_;
};

}  // namespace

ConstructionTrace prescribe(const ObstacleFamily& fam, const Boundary& xi0, const PrescribeOptions& opt) {
  return Prescriber(fam, xi0, opt).run();
}

LineTrace prescribe_line(const ObstacleFamily& fam, const Boundary& xi0, const PrescribeOptions& opt) {
  LineTrace out;
  out.first = prescribe(fam, xi0, opt);
  Boundary far = out.first.final_geodesic.plus();
  const ConvexBody& C0 = fam.bodies[*fam.designated];

  // second pass from the far endpoint, starting from the reversed line
  PrescribeOptions o2 = opt;
  Geodesic back = Geodesic::between(far, xi0);
  if (std::abs(value(penetration(back, C0, opt.f0, far)) - opt.h) <= 1e-8) {
    o2.initial_end = xi0;
  } else {
    auto circles = level_set(C0, opt.f0, opt.h, far);
    o2.initial_end = circles.front().at(circles.front().theta_of(xi0));
  }
  out.second = prescribe(fam, far, o2);

  ConstantTable k = derived_constants(opt.params);
  double h0p = opt.h0p.value_or(k.h0);
  out.h1_dprime = k.h1_dprime(h0p);
  const Geodesic& g = out.second.final_geodesic;
  for (std::size_t i = 0; i < fam.bodies.size(); ++i) {
    if (i == *fam.designated) continue;
    auto iv = entry_exit(g, fam.bodies[i]);
    if (!iv) continue;
    double lo = value(iv->lo), hi = value(iv->hi);
    if (hi < -opt.horizon || lo > opt.horizon) continue;
    double v = value(iv->length());
    out.two_sided.push_back({i, lo, v, out.h1_dprime, v <= out.h1_dprime + 1e-6});
  }
  return out;
}

}  // namespace hypen
