#include "hypen/penetration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hypen {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double bisect(const std::function<double(double)>& f, double a, double b) {
  // f(a) and f(b) of opposite signs
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    double fm = f(m);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (std::fabs(b - a) <= 1e-13 * (1.0 + std::fabs(a))) break;
  }
  return 0.5 * (a + b);
}

// Root of f = 0 where f < 0 at t0 and f grows without bound in direction dir.
double root_outward(const std::function<double(double)>& f, double t0, double dir) {
  double step = 1.0;
  double t1 = t0 + dir * step;
  while (f(t1) < 0.0) {
    step *= 2.0;
    t1 = t0 + dir * step;
    if (step > 1e6) throw domain_error("tube boundary not found");
  }
  return bisect(f, t0, t1);
}

std::optional<Interval> horoball_interval(const Geodesic& g, const Horoball& H) {
  if (same(g.plus(), H.center)) {
    double t0 = -horo_height(H, g.at(0.0));
    return Interval{ExtReal::finite(t0), ExtReal::pos_inf()};
  }
  if (same(g.minus(), H.center)) {
    double t1 = horo_height(H, g.at(0.0));
    return Interval{ExtReal::neg_inf(), ExtReal::finite(t1)};
  }
  Horoball K = apply(g.frame().inverse(), H);
  if (K.center.inf) return Interval{ExtReal::finite(std::log(K.size)), ExtReal::pos_inf()};
  double c2 = std::norm(K.center.z);
  double D = K.size;
  double disc = D * D - 4.0 * c2;
  if (disc < 0.0) return std::nullopt;
  double yhi = 0.5 * (D + std::sqrt(disc));
  double ylo = c2 / yhi;
  return Interval{ExtReal::finite(std::log(ylo)), ExtReal::finite(std::log(yhi))};
}

std::optional<Interval> ball_interval(const Geodesic& g, const Ball& B) {
  Point c = g.frame().inverse()(B.center);
  double R = c.h * std::sinh(B.r);
  double z2 = std::norm(c.z);
  double disc = R * R - z2;
  if (disc < 0.0) return std::nullopt;
  double yhi = c.h * std::cosh(B.r) + std::sqrt(disc);
  double ylo = (c.h * c.h + z2) / yhi;
  return Interval{ExtReal::finite(std::log(ylo)), ExtReal::finite(std::log(yhi))};
}

std::optional<Interval> tube_interval(const Geodesic& g, const Tube& T) {
  const Geodesic& L = T.core;
  bool sm = same(g.minus(), L.minus()) || same(g.minus(), L.plus());
  bool sp = same(g.plus(), L.minus()) || same(g.plus(), L.plus());
  if (sm && sp) return Interval{ExtReal::neg_inf(), ExtReal::pos_inf()};
  auto f = [&](double t) { return dist_to_geodesic(g.at(t), L) - T.r; };
  if (sp || sm) {
    // distance is monotone and tends to 0 at the shared end
    double dir = sp ? -1.0 : 1.0;
    double t0 = 0.0;
    for (int i = 0; f(t0) >= 0.0; ++i) {
      if (i > 200) throw domain_error("tube boundary not found");
      t0 -= dir * 8.0;
    }
    double t = root_outward(f, t0, dir);
    if (sp) return Interval{ExtReal::finite(t), ExtReal::pos_inf()};
    return Interval{ExtReal::neg_inf(), ExtReal::finite(t)};
  }
  // foot of the common perpendicular on g
  Moebius Fi = g.frame().inverse();
  Boundary u = Fi(L.minus()), v = Fi(L.plus());
  double tstar = 0.5 * std::log(std::abs(u.z) * std::abs(v.z));
  double fmin = f(tstar);
  if (fmin > -1e-10) return std::nullopt;
  double lo = root_outward(f, tstar, -1.0);
  double hi = root_outward(f, tstar, 1.0);
  return Interval{ExtReal::finite(lo), ExtReal::finite(hi)};
}

}  // namespace

std::optional<ConvexBody> shrink(const ConvexBody& C, double t) {
  return std::visit(overloaded{[&](const Horoball& H) -> std::optional<ConvexBody> { return shrink(H, t); },
                               [&](const Ball& B) -> std::optional<ConvexBody> {
                                 auto s = shrink(B, t);
                                 if (!s) return std::nullopt;
                                 return *s;
                               },
                               [&](const Tube& T) -> std::optional<ConvexBody> {
                                 if (t > T.r) return std::nullopt;
                                 return Tube{T.core, T.r - t};
                               }},
                    C);
}

ConvexBody apply(const Moebius& m, const ConvexBody& C) {
  return std::visit(overloaded{[&](const Horoball& H) -> ConvexBody { return apply(m, H); },
                               [&](const Ball& B) -> ConvexBody { return apply(m, B); },
                               [&](const Tube& T) -> ConvexBody { return Tube{apply(m, T.core), T.r}; }},
                    C);
}

double dist_to_body(const ConvexBody& C, const Point& p) {
  return std::visit(overloaded{[&](const Horoball& H) { return std::max(0.0, -horo_height(H, p)); },
                               [&](const Ball& B) { return std::max(0.0, dist(B.center, p) - B.r); },
                               [&](const Tube& T) { return std::max(0.0, dist_to_geodesic(p, T.core) - T.r); }},
                    C);
}

bool contains(const ConvexBody& C, const Point& p) {
  return std::visit(overloaded{[&](const Horoball& H) { return contains(H, p); },
                               [&](const Ball& B) { return contains(B, p); },
                               [&](const Tube& T) { return dist_to_geodesic(p, T.core) <= T.r; }},
                    C);
}

bool at_infinity_of(const ConvexBody& C, const Boundary& xi) {
  return std::visit(overloaded{[&](const Horoball& H) { return same(H.center, xi); },
                               [&](const Ball&) { return false; },
                               [&](const Tube& T) { return same(T.core.minus(), xi) || same(T.core.plus(), xi); }},
                    C);
}

std::string kind_name(const ConvexBody& C) {
  return std::visit(overloaded{[](const Horoball&) { return std::string("horoball"); },
                               [](const Ball&) { return std::string("ball"); },
                               [](const Tube&) { return std::string("tube"); }},
                    C);
}

PenKind parse_pen_kind(const std::string& s) {
  if (s == "length" || s == "ell") return PenKind::Length;
  if (s == "ph") return PenKind::PH;
  if (s == "ipp") return PenKind::IPP;
  if (s == "ftp") return PenKind::FTP;
  if (s == "bp") return PenKind::BP;
  if (s == "crp") return PenKind::CRP;
  throw domain_error("unknown penetration kind: " + s);
}

std::string pen_kind_name(PenKind k) {
  switch (k) {
    case PenKind::Length: return "length";
    case PenKind::PH: return "ph";
    case PenKind::IPP: return "ipp";
    case PenKind::FTP: return "ftp";
    case PenKind::BP: return "bp";
    case PenKind::CRP: return "crp";
  }
  return "?";
}

Geodesic ray_from(const Source& src, const Boundary& end) {
  if (auto* b = std::get_if<Boundary>(&src)) return Geodesic::between(*b, end);
  return ray_through(std::get<Point>(src), end);
}

std::optional<double> ray_start(const Geodesic& g, const Source& src) {
  if (auto* p = std::get_if<Point>(&src)) return g.param_of(*p);
  return std::nullopt;
}

std::optional<Interval> entry_exit(const Geodesic& g, const ConvexBody& C) {
  return std::visit(overloaded{[&](const Horoball& H) { return horoball_interval(g, H); },
                               [&](const Ball& B) { return ball_interval(g, B); },
                               [&](const Tube& T) { return tube_interval(g, T); }},
                    C);
}

std::optional<Interval> entry_exit(const Geodesic& g, const ConvexBody& C, std::optional<double> tmin) {
  auto iv = entry_exit(g, C);
  if (!iv || !tmin) return iv;
  ExtReal s = ExtReal::finite(*tmin);
  if (iv->hi < s) return std::nullopt;
  if (iv->lo < s) iv->lo = s;
  return iv;
}

std::optional<Point> closest_point(const ConvexBody& C, const Source& x) {
  if (auto* p = std::get_if<Point>(&x)) {
    if (contains(C, *p)) return *p;
  }
  return std::visit(
      overloaded{[&](const Horoball& H) -> std::optional<Point> {
                   if (auto* b = std::get_if<Boundary>(&x); b && same(*b, H.center)) return std::nullopt;
                   Geodesic g = ray_from(x, H.center);
                   // Busemann height grows at unit speed toward the center
                   return g.at(-horo_height(H, g.at(0.0)));
                 },
                 [&](const Ball& B) -> std::optional<Point> {
                   if (auto* b = std::get_if<Boundary>(&x)) return ray_through(B.center, *b).at(B.r);
                   return geodesic_through(B.center, std::get<Point>(x)).at(B.r);
                 },
                 [&](const Tube& T) -> std::optional<Point> {
                   if (auto* b = std::get_if<Boundary>(&x)) {
                     if (at_infinity_of(T, *b)) return std::nullopt;
                     Point p = project_to_geodesic(*b, T.core);
                     return ray_through(p, *b).at(T.r);
                   }
                   const Point& q = std::get<Point>(x);
                   Point p = project_to_geodesic(q, T.core);
                   return geodesic_through(p, q).at(T.r);
                 }},
      C);
}

ExtReal sup_height(const Geodesic& g, const ConvexBody& C, std::optional<double> tmin) {
  if (auto* H = std::get_if<Horoball>(&C)) {
    if (same(g.plus(), H->center)) return ExtReal::pos_inf();
    if (same(g.minus(), H->center)) {
      if (!tmin) return ExtReal::pos_inf();
      return ExtReal::finite(horo_height(*H, g.at(*tmin)));
    }
    double tx = g.param_of(project_to_geodesic(H->center, g));
    if (tmin) tx = std::max(tx, *tmin);
    return ExtReal::finite(horo_height(*H, g.at(tx)));
  }
  if (auto* B = std::get_if<Ball>(&C)) {
    double tc = g.param_of(B->center);
    double d = (tmin && tc < *tmin) ? dist(B->center, g.at(*tmin)) : dist_to_geodesic(B->center, g);
    return ExtReal::finite(B->r - d);
  }
  throw domain_error("height map is defined for horoballs and balls");
}

ExtReal penetration(const Geodesic& g, const ConvexBody& C, PenKind kind, const Source& xi0) {
  if (auto* b = std::get_if<Boundary>(&xi0)) {
    if (at_infinity_of(C, *b)) throw domain_error("source lies in the boundary at infinity of the body");
  } else if (contains(C, std::get<Point>(xi0))) {
    if (kind != PenKind::Length) throw domain_error("source lies inside the body");
  }
  auto tmin = ray_start(g, xi0);
  const Boundary& gp = g.plus();

  switch (kind) {
    case PenKind::Length: {
      auto iv = entry_exit(g, C, tmin);
      if (!iv) return ExtReal::finite(0.0);
      return iv->length();
    }
    case PenKind::PH: {
      ExtReal s = sup_height(g, C, tmin);
      if (!s.is_finite()) return s;
      return ExtReal::finite(2.0 * std::max(0.0, s.v));
    }
    case PenKind::IPP: {
      if (auto* H = std::get_if<Horoball>(&C)) {
        if (same(gp, H->center)) return ExtReal::pos_inf();
        Geodesic L0 = ray_from(xi0, H->center);
        double s = L0.param_of(project_to_geodesic(gp, L0));
        auto s0 = ray_start(L0, xi0);
        if (s0) s = std::max(s, *s0);
        return ExtReal::finite(2.0 * std::max(0.0, horo_height(*H, L0.at(s))));
      }
      if (auto* B = std::get_if<Ball>(&C)) {
        Geodesic L0;
        double smin;
        if (auto* b = std::get_if<Boundary>(&xi0)) {
          L0 = Geodesic::anchored_near(*b, forward_endpoint(*b, B->center), B->center);
          smin = -HUGE_VAL;
        } else {
          const Point& x = std::get<Point>(xi0);
          L0 = geodesic_through(B->center, x).reversed();
          smin = -dist(B->center, x);
        }
        double s = 0.0;
        if (!same(gp, L0.plus())) {
          s = L0.param_of(project_to_geodesic(gp, L0));
          s = std::clamp(s, smin, 0.0);
        }
        return ExtReal::finite(2.0 * std::max(0.0, B->r - dist(B->center, L0.at(s))));
      }
      throw domain_error("ipp is defined for horoballs and balls");
    }
    case PenKind::FTP: {
      auto* T = std::get_if<Tube>(&C);
      if (!T) throw domain_error("ftp is defined for tubes");
      if (at_infinity_of(C, gp)) return ExtReal::pos_inf();
      Point pm = std::visit([&](const auto& x) { return project_to_geodesic(x, T->core); }, xi0);
      Point pp = project_to_geodesic(gp, T->core);
      return ExtReal::finite(dist(pm, pp));
    }
    case PenKind::BP: {
      auto qm = closest_point(C, xi0);
      auto qp = closest_point(C, gp);
      if (!qp || !qm) return ExtReal::pos_inf();
      return ExtReal::finite(dist(*qm, *qp));
    }
    case PenKind::CRP: {
      auto* T = std::get_if<Tube>(&C);
      auto* b = std::get_if<Boundary>(&xi0);
      if (!T || !b) throw domain_error("crp needs a tube core and a boundary source");
      const Boundary& L1 = T->core.minus();
      const Boundary& L2 = T->core.plus();
      if (same(gp, L1) || same(gp, L2)) return ExtReal::pos_inf();
      ExtReal x = crossratio(*b, L1, gp, L2);
      ExtReal y = crossratio(*b, L2, gp, L1);
      ExtReal m = x < y ? y : x;
      if (m < ExtReal::finite(0.0)) return ExtReal::finite(0.0);
      return m;
    }
  }
  throw domain_error("unknown penetration kind");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace hypen
