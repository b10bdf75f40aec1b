#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "hypen/engine.hpp"

namespace hypen {

namespace {

using Vec3 = std::array<double, 3>;  // (re, im, vertical) of a unit direction

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 unit(Vec3 a) {
  double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Directions at (0,1) and the endpoints of the rays they span.
Boundary end_of(const Vec3& u) {
  if (u[2] > 1.0 - 1e-15) return Boundary::infinity();
  return Boundary::at(cplx(u[0], u[1]) / (1.0 - u[2]));
}

Vec3 dir_of(const Boundary& w) {
  if (w.inf) return {0.0, 0.0, 1.0};
  double n = std::norm(w.z);
  return {2.0 * w.z.real() / (1.0 + n), 2.0 * w.z.imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
}

// Concave height along g over [lo, hi]: maximum and where it is reached.
std::pair<double, double> max_height(const Geodesic& g, const ConvexBody& C, double lo, double hi) {
  double t;
  if (auto* H = std::get_if<Horoball>(&C)) {
    if (same(g.plus(), H->center))
      t = hi;
    else if (same(g.minus(), H->center))
      t = lo;
    else
      t = g.param_of(project_to_geodesic(H->center, g));
    t = std::clamp(t, lo, hi);
    return {horo_height(*H, g.at(t)), t};
  }
  const auto& B = std::get<Ball>(C);
  t = std::clamp(g.param_of(B.center), lo, hi);
  return {B.r - dist(B.center, g.at(t)), t};
}

// Chords up to this length count as touching, not entering.
constexpr double kTouch = 1e-9;

bool enters(const Geodesic& g, const ConvexBody& C, std::optional<double> tmin) {
  auto iv = entry_exit(g, C, tmin);
  if (!iv) return false;
  ExtReal len = iv->length();
  return !len.is_finite() || len.v > kTouch;
}

// Sign change of f between a (f > 0) and b (f <= 0), returned on the b side.
double bisect_last_positive(const std::function<double(double)>& f, double a, double b) {
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    (f(m) > 0.0 ? a : b) = m;
  }
  return b;
}

class Unclouder {
 public:
  Unclouder(const ObstacleFamily& fam, const Source& xi0, const UncloudOptions& opt)
      : fam_(fam), xi0_(xi0), opt_(opt), chain_(mu_chain(opt.mu1)) {
    if (opt.mu1 < std::log(2.0)) throw precondition_error("mu1 must be at least log 2");
    for (const auto& C : fam.bodies)
      if (std::holds_alternative<Tube>(C)) throw family_error("unclouding needs horoballs and balls");
    for (auto [i, j] : candidate_pairs(fam.bodies))
      if (!interiors_disjoint(fam.bodies[i], fam.bodies[j]))
        throw family_error("interiors of bodies " + std::to_string(i) + " and " + std::to_string(j) + " meet");
    for (const auto& C : fam.bodies) shrunk_.push_back(shrink(C, opt.mu1));

    if (auto* p = std::get_if<Point>(&xi0)) {
      for (std::size_t i = 0; i < fam.bodies.size(); ++i)
        if (max_height(ray_through(*p, Boundary::infinity()), fam.bodies[i], 0.0, 0.0).first > 1e-12)
          throw precondition_error("source lies inside body " + std::to_string(i));
      N_ = Moebius::scaling(1.0 / p->h) * Moebius::translation(-p->z);
    } else {
      const auto& b = std::get<Boundary>(xi0);
      if (!fam.designated) throw precondition_error("a boundary source needs the designated horoball");
      const auto* H = std::get_if<Horoball>(&fam.bodies[*fam.designated]);
      if (!H || !same(H->center, b)) throw precondition_error("boundary source must be the designated center");
      alpha0_ = *fam.designated;
      N_ = send_to_infinity(b);
    }
    Ni_ = N_.inverse();
  }

  ConstructionTrace run() {
    ConstructionTrace tr;
    tr.notes.push_back("bodies: " + std::to_string(fam_.bodies.size()));
    if (!fam_.truncation.empty()) tr.notes.push_back("truncation: " + fam_.truncation);
    if (std::holds_alternative<Point>(xi0_) && fam_.designated)
      tr.notes.push_back("interior source: designated body is treated like the others");

    Geodesic g = initial();
    std::vector<double> ts{0.0};
    tr.iterates.push_back(g);
    tr.steps.push_back({0, -1, 0.0, g.plus()});
    double tn = 0.0;
    int k = 0;
    for (; k < opt_.max_iter; ++k) {
      auto [idx, entry] = first_entered(g, tn);
      if (idx < 0) {
        tr.converged = true;
        break;
      }
      Geodesic next = tangent(idx, g);
      auto iv = entry_exit(next, fam_.bodies[idx], 0.0);
      if (!iv || !iv->lo.is_finite()) throw step_error("tangent ray misses body " + std::to_string(idx));
      tn = iv->lo.v;
      ts.push_back(tn);
      tr.iterates.push_back(next);
      tr.steps.push_back({k + 1, idx, tn, next.plus()});
      g = next;
      (void)entry;
    }
    if (!tr.converged) tr.notes.push_back("stopped at max_iter");
    tr.final_geodesic = g;
    verify(tr, ts);
    return tr;
  }

 private:
  Geodesic line_to(const Boundary& end) const {
    if (auto* p = std::get_if<Point>(&xi0_)) return ray_through(*p, end);
    const auto& b = std::get<Boundary>(xi0_);
    Geodesic g = Geodesic::between(b, end);
    auto iv = entry_exit(g, fam_.bodies[*alpha0_]);
    if (!iv || !iv->hi.is_finite()) throw step_error("line does not exit the designated horoball");
    return Geodesic::anchored_near(b, end, g.at(iv->hi.v));
  }

  Geodesic initial() const {
    if (opt_.initial_end) return line_to(*opt_.initial_end);
    return line_to(Ni_(Boundary::at(0.0)));
  }

  // First shrunk body whose interior the ray enters after tn, within the horizon.
  std::pair<long, double> first_entered(const Geodesic& g, double tn) const {
    long best = -1;
    double best_t = HUGE_VAL;
    for (std::size_t i = 0; i < shrunk_.size(); ++i) {
      if (!shrunk_[i] || (alpha0_ && i == *alpha0_)) continue;
      if (!enters(g, *shrunk_[i], tn)) continue;
      double lo = entry_exit(g, *shrunk_[i], tn)->lo.as_double();
      if (lo > opt_.horizon) continue;
      if (lo < best_t) best_t = lo, best = static_cast<long>(i);
    }
    return {best, best_t};
  }

  Geodesic tangent(long idx, const Geodesic& cur) const {
    const ConvexBody& S = *shrunk_[idx];
    if (std::holds_alternative<Point>(xi0_)) return tangent_interior(S, idx, cur);
    return tangent_boundary(S, idx, cur);
  }

  // Walk the great circle from the body direction through the current
  // direction to the first direction whose ray only touches S.
  Geodesic tangent_interior(const ConvexBody& S, long idx, const Geodesic& cur) const {
    Vec3 uc;
    if (auto* H = std::get_if<Horoball>(&S))
      uc = dir_of(N_(H->center));
    else
      uc = dir_of(forward_endpoint(Point{cplx(0.0), 1.0}, N_(std::get<Ball>(S).center)));
    Vec3 ucur = dir_of(N_(cur.plus()));
    double c = std::clamp(dot(ucur, uc), -1.0, 1.0);
    Vec3 e{ucur[0] - c * uc[0], ucur[1] - c * uc[1], ucur[2] - c * uc[2]};
    if (dot(e, e) < 1e-24) {
      e = {-uc[2], 0.0, uc[0]};
      if (dot(e, e) < 1e-24) e = {0.0, 1.0, 0.0};
    }
    e = unit(e);
    double phi0 = std::acos(c);
    auto ray = [&](double phi) {
      Vec3 u{std::cos(phi) * uc[0] + std::sin(phi) * e[0], std::cos(phi) * uc[1] + std::sin(phi) * e[1],
             std::cos(phi) * uc[2] + std::sin(phi) * e[2]};
      return line_to(Ni_(end_of(u)));
    };
    auto s = [&](double phi) { return enters(ray(phi), S, 0.0) ? 1.0 : -1.0; };
    const int M = 64;
    double prev = phi0;
    for (int i = 1; i <= M; ++i) {
      double phi = phi0 + (M_PI - phi0) * i / M;
      if (s(phi) <= 0.0) return ray(bisect_last_positive(s, prev, phi));
      prev = phi;
    }
    throw step_error("no tangent ray to body " + std::to_string(idx) + " (body behind the source)");
  }

  // In the chart with the source at infinity, walk radially away from the
  // shadow center of S through the current endpoint.
  Geodesic tangent_boundary(const ConvexBody& S, long idx, const Geodesic& cur) const {
    cplx cs;
    if (auto* H = std::get_if<Horoball>(&S))
      cs = N_(H->center).z;
    else
      cs = N_(std::get<Ball>(S).center).z;
    cplx bcur = N_(cur.plus()).z;
    double r0 = std::abs(bcur - cs);
    cplx e = r0 > 1e-300 ? (bcur - cs) / r0 : cplx(1.0);
    auto line = [&](double rho) { return line_to(Ni_(Boundary::at(cs + rho * e))); };
    auto s = [&](double rho) { return enters(line(rho), S, std::nullopt) ? 1.0 : -1.0; };
    double a = r0, b = std::max(2.0 * r0, 1e-12);
    int n = 0;
    while (s(b) > 0.0) {
      a = b, b *= 2.0;
      if (++n > 400) throw step_error("no tangent line to body " + std::to_string(idx));
    }
    return line(bisect_last_positive(s, a, b));
  }

  void verify(ConstructionTrace& tr, const std::vector<double>& ts) const {
    const Geodesic& g = tr.final_geodesic;
    // avoidance of the shrunk family up to the horizon
    double worst = -HUGE_VAL;
    for (std::size_t i = 0; i < fam_.bodies.size(); ++i) {
      if (alpha0_ && i == *alpha0_) continue;
      auto [hmax, at] = max_height(g, fam_.bodies[i], 0.0, opt_.horizon);
      worst = std::max(worst, hmax);
      if (hmax > 0.0) tr.report.push_back({i, at, hmax, chain_.mu5, hmax <= chain_.mu5 + 1e-9});
    }
    tr.checks.push_back({"max height vs mu5", worst, chain_.mu5, worst <= chain_.mu5 + 1e-9});

    // from an interior source the first entry has no preceding body to leave
    std::size_t k0 = alpha0_ ? 1 : 2;
    if (!alpha0_ && ts.size() > 1)
      tr.notes.push_back("first entry time " + std::to_string(ts[1]) + " (not constrained from an interior source)");
    double gap = HUGE_VAL;
    for (std::size_t k = k0; k < ts.size(); ++k) gap = std::min(gap, ts[k] - ts[k - 1]);
    if (ts.size() > k0) tr.checks.push_back({"entry gap vs mu4", gap, chain_.mu4, gap >= chain_.mu4 - 1e-6});

    // d(g_k(t), g_{k-1}(t)) <= mu2 e^{t - t_k} on [0, t_k]
    double margin = -HUGE_VAL;
    for (std::size_t k = 1; k < tr.iterates.size(); ++k) {
      const int M = 256;
      for (int j = 0; j <= M; ++j) {
        double t = ts[k] * j / M;
        double d = dist(tr.iterates[k].at(t), tr.iterates[k - 1].at(t));
        margin = std::max(margin, d - chain_.mu2 * std::exp(t - ts[k]));
      }
    }
    if (tr.iterates.size() > 1) tr.checks.push_back({"cauchy margin", margin, 1e-6, margin <= 1e-6});
  }

  const ObstacleFamily& fam_;
  Source xi0_;
  UncloudOptions opt_;
  MuChain chain_;
  std::vector<std::optional<ConvexBody>> shrunk_;
  std::optional<std::size_t> alpha0_;
  Moebius N_, Ni_;
};

}  // namespace

ConstructionTrace uncloud(const ObstacleFamily& fam, const Source& xi0, const UncloudOptions& opt) {
  return Unclouder(fam, xi0, opt).run();
}

}  // namespace hypen
