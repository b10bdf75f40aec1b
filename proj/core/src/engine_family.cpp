#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hypen/engine.hpp"

namespace hypen {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTangentSlack = 1e-12;
constexpr int kDirections = 512;

// Minimizer of a convex function on [a, b] by golden section.
double golden_min(const auto& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - r * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + r * (b - a), f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Parameter on L1 of the point closest to L2.
double closest_param(const Geodesic& L1, const Geodesic& L2) {
  auto f = [&](double t) { return dist_to_geodesic(L1.at(t), L2); };
  double tc = L1.param_of(L2.anchor());
  return golden_min(f, tc - 60.0, tc + 60.0);
}

double geodesic_gap(const Geodesic& L1, const Geodesic& L2) {
  if (same(L1.minus(), L2.minus()) || same(L1.minus(), L2.plus()) || same(L1.plus(), L2.minus()) ||
      same(L1.plus(), L2.plus()))
    return 0.0;
  return dist_to_geodesic(L1.at(closest_param(L1, L2)), L2);
}

// Highest horoball height along the full core.
double core_height(const Geodesic& L, const Horoball& H) {
  if (same(L.plus(), H.center) || same(L.minus(), H.center)) return HUGE_VAL;
  return horo_height(H, project_to_geodesic(H.center, L));
}

bool disjoint_hh(const Horoball& a, const Horoball& b) {
  if (a.center.inf && b.center.inf) return false;
  if (a.center.inf) return b.size <= a.size * (1.0 + kTangentSlack);
  if (b.center.inf) return a.size <= b.size * (1.0 + kTangentSlack);
  // centres far from the origin carry an absolute rounding error
  double d = std::abs(a.center.z - b.center.z) +
             4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a.center.z) + std::abs(b.center.z));
  return d * d >= a.size * b.size * (1.0 - kTangentSlack);
}

bool disjoint_bh(const Ball& B, const Horoball& H) {
  return horo_height(H, B.center) <= -B.r + kTangentSlack * (1.0 + B.r);
}

// A geodesic through the region where the two bodies come closest.
Geodesic axis_of(const ConvexBody& a, const ConvexBody& b) {
  auto through = [](const Point& p, const Point& q) {
    if (dist(p, q) < 1e-12) return ray_through(p, Boundary::at(p.z));
    return geodesic_through(p, q);
  };
  return std::visit(
      overloaded{
          [&](const Horoball& x, const Horoball& y) -> Geodesic { return Geodesic::between(x.center, y.center); },
          [&](const Ball& x, const Ball& y) -> Geodesic { return through(x.center, y.center); },
          [&](const Ball& x, const Horoball& y) -> Geodesic { return ray_through(x.center, y.center); },
          [&](const Horoball& x, const Ball& y) -> Geodesic { return ray_through(y.center, x.center); },
          [&](const Tube& x, const Tube& y) -> Geodesic {
            Point p = x.core.at(closest_param(x.core, y.core));
            Point q = project_to_geodesic(p, y.core);
            if (dist(p, q) < 1e-12) return x.core;
            return through(p, q);
          },
          [&](const Tube& x, const Ball& y) -> Geodesic {
            Point p = project_to_geodesic(y.center, x.core);
            if (dist(p, y.center) < 1e-12) return x.core;
            return through(p, y.center);
          },
          [&](const Ball& x, const Tube& y) -> Geodesic {
            Point p = project_to_geodesic(x.center, y.core);
            if (dist(p, x.center) < 1e-12) return y.core;
            return through(p, x.center);
          },
          [&](const Tube& x, const Horoball& y) -> Geodesic {
            return ray_through(project_to_geodesic(y.center, x.core), y.center);
          },
          [&](const Horoball& x, const Tube& y) -> Geodesic {
            return ray_through(project_to_geodesic(x.center, y.core), x.center);
          }},
      a, b);
}

std::optional<std::pair<double, double>> overlap(const Geodesic& g, const ConvexBody& a, const ConvexBody& b) {
  auto ia = entry_exit(g, a), ib = entry_exit(g, b);
  if (!ia || !ib) return std::nullopt;
  double lo = std::max(ia->lo.as_double(), ib->lo.as_double());
  double hi = std::min(ia->hi.as_double(), ib->hi.as_double());
  if (hi < lo) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace

bool interiors_disjoint(const ConvexBody& a, const ConvexBody& b) {
  return std::visit(
      overloaded{[](const Horoball& x, const Horoball& y) { return disjoint_hh(x, y); },
                 [](const Ball& x, const Ball& y) {
                   return dist(x.center, y.center) >= (x.r + y.r) * (1.0 - kTangentSlack);
                 },
                 [](const Ball& x, const Horoball& y) { return disjoint_bh(x, y); },
                 [](const Horoball& x, const Ball& y) { return disjoint_bh(y, x); },
                 [](const Tube& x, const Tube& y) {
                   return geodesic_gap(x.core, y.core) >= (x.r + y.r) * (1.0 - kTangentSlack);
                 },
                 [](const Tube& x, const Ball& y) {
                   return dist_to_geodesic(y.center, x.core) >= (x.r + y.r) * (1.0 - kTangentSlack);
                 },
                 [](const Ball& x, const Tube& y) {
                   return dist_to_geodesic(x.center, y.core) >= (x.r + y.r) * (1.0 - kTangentSlack);
                 },
                 [](const Tube& x, const Horoball& y) { return core_height(x.core, y) <= -x.r + kTangentSlack; },
                 [](const Horoball& x, const Tube& y) { return core_height(y.core, x) <= -y.r + kTangentSlack; }},
      a, b);
}

double intersection_diameter(const ConvexBody& a, const ConvexBody& b) {
  if (interiors_disjoint(a, b)) return 0.0;
  Geodesic ax = axis_of(a, b);
  auto ov = overlap(ax, a, b);
  if (!ov) return 0.0;
  if (!std::isfinite(ov->first) || !std::isfinite(ov->second)) return HUGE_VAL;
  double best = ov->second - ov->first;
  Point m = ax.at(0.5 * (ov->first + ov->second));

  // chords through m along a Fibonacci set of directions
  Moebius N = Moebius::scaling(1.0 / m.h) * Moebius::translation(-m.z);
  Moebius Ni = N.inverse();
  auto end = [&](double x, double y, double v) {
    if (v > 1.0 - 1e-15) return Boundary::infinity();
    return Ni(Boundary::at(cplx(x, y) / (1.0 - v)));
  };
  auto chord = [&](double th, double ph) {
    double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), v = std::cos(th);
    Geodesic g = Geodesic::anchored_near(end(-x, -y, -v), end(x, y, v), m);
    auto o = overlap(g, a, b);
    return o ? o->second - o->first : 0.0;
  };
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  double bth = 0.0, bph = 0.0, bval = chord(0.0, 0.0);
  for (int i = 0; i < kDirections; ++i) {
    double th = std::acos(1.0 - (2.0 * i + 1.0) / kDirections), ph = golden * i;
    if (double c = chord(th, ph); c > bval) bval = c, bth = th, bph = ph;
  }
  // pattern search around the best sampled direction
  for (double step = 0.2; step > 1e-7;) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}})
      if (double c = chord(bth + dt, bph + dp); c > bval) bval = c, bth += dt, bph += dp, moved = true;
    if (!moved) step *= 0.5;
  }
  best = std::max(best, bval);
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<ConvexBody>& bodies) {
  // horizontal shadow as a disk; unbounded bodies get an infinite radius
  struct Shadow {
    cplx c;
    double r;
    std::size_t i;
  };
  std::vector<Shadow> sh;
  sh.reserve(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto& C = bodies[i];
    Shadow s{0.0, HUGE_VAL, i};
    if (auto* H = std::get_if<Horoball>(&C)) {
      if (!H->center.inf) s = {H->center.z, 0.5 * H->size, i};
    } else if (auto* B = std::get_if<Ball>(&C)) {
      s = {B->center.z, B->center.h * std::sinh(B->r), i};
    }
    if (std::isfinite(s.r)) s.r = s.r * (1.0 + 1e-9) + 1e-12;
    sh.push_back(s);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<Shadow> finite, unbounded;
  for (const auto& s : sh) (std::isfinite(s.r) ? finite : unbounded).push_back(s);
  std::sort(finite.begin(), finite.end(),
            [](const Shadow& a, const Shadow& b) { return a.c.real() - a.r < b.c.real() - b.r; });
  for (std::size_t a = 0; a < finite.size(); ++a)
    for (std::size_t b = a + 1; b < finite.size(); ++b) {
      if (finite[b].c.real() - finite[b].r > finite[a].c.real() + finite[a].r) break;
      if (std::abs(finite[a].c - finite[b].c) <= finite[a].r + finite[b].r)
        out.emplace_back(std::min(finite[a].i, finite[b].i), std::max(finite[a].i, finite[b].i));
    }
  for (std::size_t a = 0; a < unbounded.size(); ++a)
    for (std::size_t b = 0; b < sh.size(); ++b)
      if (b != unbounded[a].i && (std::isfinite(sh[b].r) || b > unbounded[a].i))
        out.emplace_back(std::min(unbounded[a].i, b), std::max(unbounded[a].i, b));
  std::sort(out.begin(), out.end());
  return out;
}

void check_almost_disjoint(const ObstacleFamily& fam) {
  const auto& B = fam.bodies;
  for (auto [i, j] : candidate_pairs(B)) {
    if (interiors_disjoint(B[i], B[j])) continue;
    double d = intersection_diameter(B[i], B[j]);
    if (d > fam.delta0 + 1e-8)
      throw family_error("bodies " + std::to_string(i) + " and " + std::to_string(j) + " meet in diameter " +
                         std::to_string(d) + " > delta0");
  }
}

bool ConstructionTrace::ok() const {
  if (!converged) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  for (const auto& r : report)
    if (!r.pass) return false;
  return true;
}

bool LineTrace::ok() const {
  if (!first.ok() || !second.ok()) return false;
  for (const auto& r : two_sided)
    if (!r.pass) return false;
  return true;
}

}  // namespace hypen
