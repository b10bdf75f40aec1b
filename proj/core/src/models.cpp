#include "hypen/models.hpp"

#include <cmath>

namespace hypen {

double ExtReal::as_double() const {
  if (inf > 0) return HUGE_VAL;
  if (inf < 0) return -HUGE_VAL;
  return v;
}

bool operator<(const ExtReal& a, const ExtReal& b) {
  if (a.inf != b.inf) return a.inf < b.inf;
  if (a.inf != 0) return false;
  return a.v < b.v;
}

bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }

ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  if (a.inf == 0 && b.inf == 0) return ExtReal::finite(a.v - b.v);
  if (a.inf != 0 && a.inf == b.inf) throw domain_error("inf - inf is undefined");
  if (a.inf != 0) return a;
  return {0.0, -b.inf};
}

bool same(const Boundary& a, const Boundary& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.z == b.z;
}

Moebius Moebius::make(cplx a, cplx b, cplx c, cplx d) {
  cplx det = a * d - b * c;
  if (std::abs(det) == 0.0) throw domain_error("singular Moebius matrix");
  cplx s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

Moebius Moebius::scaling(double lambda) {
  double s = std::sqrt(lambda);
  return {cplx(s), cplx(0.0), cplx(0.0), cplx(1.0 / s)};
}

Moebius Moebius::translation(cplx w) { return {cplx(1.0), w, cplx(0.0), cplx(1.0)}; }

Moebius Moebius::inverse() const {
  cplx dt = det();
  return {d / dt, -b / dt, -c / dt, a / dt};
}

Boundary Moebius::operator()(const Boundary& x) const {
  if (x.inf) {
    if (c == cplx(0.0)) return Boundary::infinity();
    return Boundary::at(a / c);
  }
  cplx den = c * x.z + d;
  if (den == cplx(0.0)) return Boundary::infinity();
  return Boundary::at((a * x.z + b) / den);
}

Point Moebius::operator()(const Point& p) const {
  // Poincare extension of the det-1 representative
  cplx dt = det();
  cplx A = a, B = b, C = c, D = d;
  if (dt != cplx(1.0)) {
    cplx s = std::sqrt(dt);
    A /= s, B /= s, C /= s, D /= s;
  }
  cplx czd = C * p.z + D;
  double den = std::norm(czd) + std::norm(C) * p.h * p.h;
  cplx num = (A * p.z + B) * std::conj(czd) + A * std::conj(C) * p.h * p.h;
  return {num / den, p.h / den};
}

Moebius operator*(const Moebius& m, const Moebius& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

Moebius send_to_infinity(const Boundary& x) {
  if (x.inf) return Moebius::identity();
  return {cplx(0.0), cplx(1.0), cplx(-1.0), x.z};
}

double dist(const Point& p, const Point& q) {
  double num = std::sqrt(std::norm(p.z - q.z) + (p.h - q.h) * (p.h - q.h));
  return 2.0 * asinh_acc(num / (2.0 * std::sqrt(p.h * q.h)));
}

namespace {
// log of the Poisson-type height h / (|z - c|^2 + h^2)
double horo_log(const Boundary& xi, const Point& p) {
  if (xi.inf) return std::log(p.h);
  return std::log(p.h / (std::norm(p.z - xi.z) + p.h * p.h));
}
}  // namespace

double busemann(const Boundary& xi, const Point& x, const Point& y) { return horo_log(xi, y) - horo_log(xi, x); }

double basepoint_busemann(const Point& xi, const Point& x, const Point& y) { return dist(x, xi) - dist(y, xi); }

namespace {
Moebius standard_frame(const Boundary& a, const Boundary& b) {
  if (same(a, b)) throw domain_error("degenerate geodesic: equal endpoints");
  if (b.inf) return Moebius::translation(a.z);
  if (a.inf) return {b.z, cplx(-1.0), cplx(1.0), cplx(0.0)};
  cplx gap = b.z - a.z;
  if (gap.imag() == 0.0 && gap.real() < 0.0) {
    double s = std::sqrt(-gap.real());
    return {b.z / s, -a.z / s, cplx(1.0 / s), cplx(-1.0 / s)};
  }
  cplx s = std::sqrt(gap);
  return {b.z / s, a.z / s, 1.0 / s, 1.0 / s};
}
}  // namespace

Geodesic Geodesic::between(const Boundary& a, const Boundary& b) {
  Geodesic g;
  g.minus_ = a;
  g.plus_ = b;
  g.frame_ = standard_frame(a, b);
  g.anchor_ = g.frame_(Point{cplx(0.0), 1.0});
  return g;
}

Geodesic Geodesic::with_anchor(const Boundary& a, const Boundary& b, const Point& anchor) {
  Geodesic g = between(a, b);
  Point q = g.frame_.inverse()(anchor);
  double off = asinh_acc(std::abs(q.z) / q.h);
  if (off > 1e-9) throw domain_error("anchor does not lie on the geodesic");
  double tau = 0.5 * std::log(std::norm(q.z) + q.h * q.h);
  g.frame_ = g.frame_ * Moebius::scaling(std::exp(tau));
  g.anchor_ = anchor;
  return g;
}

Geodesic Geodesic::anchored_near(const Boundary& a, const Boundary& b, const Point& near) {
  Geodesic g = between(a, b);
  g.frame_ = g.frame_ * Moebius::scaling(std::exp(g.param_of(near)));
  g.anchor_ = g.frame_(Point{cplx(0.0), 1.0});
  return g;
}

Point Geodesic::at(double t) const { return frame_(Point{cplx(0.0), std::exp(t)}); }

double Geodesic::param_of(const Point& p) const {
  Point q = frame_.inverse()(p);
  return 0.5 * std::log(std::norm(q.z) + q.h * q.h);
}

Geodesic Geodesic::reversed() const { return anchored_near(plus_, minus_, anchor_); }

bool Geodesic::is_real() const {
  auto r = [](const Boundary& x) { return x.inf || x.z.imag() == 0.0; };
  return r(minus_) && r(plus_) && anchor_.z.imag() == 0.0;
}

Geodesic geodesic_between(const Boundary& a, const Boundary& b) { return Geodesic::between(a, b); }

Geodesic apply(const Moebius& m, const Geodesic& g) {
  // re-anchor through the exact projection to absorb rounding
  return Geodesic::anchored_near(m(g.minus()), m(g.plus()), m(g.anchor()));
}

Geodesic ray_through(const Point& x, const Boundary& b) {
  Moebius m = send_to_infinity(b);
  Point y = m(x);
  Boundary back = m.inverse()(Boundary::at(y.z));
  return Geodesic::anchored_near(back, b, x);
}

// Geodesic anchored at p passing through q at parameter d(p, q).
Geodesic geodesic_through(const Point& p, const Point& q) {
  Moebius M = Moebius::scaling(1.0 / p.h) * Moebius::translation(-p.z);
  Moebius Mi = M.inverse();
  Point q1 = M(q);
  double x = std::abs(q1.z);
  Boundary e1, e2;
  if (x < 1e-300) {
    e1 = Boundary::at(0.0);
    e2 = Boundary::infinity();
  } else {
    cplx u = q1.z / x;
    double c = (x * x + q1.h * q1.h - 1.0) / (2.0 * x);
    double rho = std::sqrt(c * c + 1.0);
    e1 = Boundary::at(u * (c - rho));
    e2 = Boundary::at(u * (c + rho));
  }
  Geodesic g = Geodesic::anchored_near(e1, e2, Point{cplx(0.0), 1.0});
  if (g.param_of(q1) < 0.0) g = g.reversed();
  return apply(Mi, g);
}

Boundary forward_endpoint(const Boundary& xi, const Point& x) {
  Moebius M = send_to_infinity(xi);
  Point y = M(x);
  return M.inverse()(Boundary::at(y.z));
}

Boundary forward_endpoint(const Point& p, const Point& x) { return geodesic_through(p, x).plus(); }

double dist_to_piece(const Point& p, const Geodesic& L, std::optional<double> lo, std::optional<double> hi) {
  double t = L.param_of(p);
  if (lo && t < *lo) return dist(p, L.at(*lo));
  if (hi && t > *hi) return dist(p, L.at(*hi));
  return dist_to_geodesic(p, L);
}

Point project_to_geodesic(const Point& p, const Geodesic& L) {
  Point q = L.frame().inverse()(p);
  double r = std::sqrt(std::norm(q.z) + q.h * q.h);
  return L.frame()(Point{cplx(0.0), r});
}

Point project_to_geodesic(const Boundary& p, const Geodesic& L) {
  Boundary q = L.frame().inverse()(p);
  if (q.inf || std::abs(q.z) == 0.0) throw domain_error("projection undefined: point is an endpoint of the geodesic");
  return L.frame()(Point{cplx(0.0), std::abs(q.z)});
}

double dist_to_geodesic(const Point& p, const Geodesic& L) {
  Point q = L.frame().inverse()(p);
  return asinh_acc(std::abs(q.z) / q.h);
}

Point horo_anchor(const Horoball& H) {
  if (H.center.inf) return {cplx(0.0), H.size};
  return {H.center.z, H.size};
}

Horoball apply(const Moebius& m, const Horoball& H) {
  Boundary c = m(H.center);
  Point top = m(horo_anchor(H));
  if (c.inf) return Horoball::at_infinity(top.h);
  return Horoball{c, (std::norm(top.z - c.z) + top.h * top.h) / top.h};
}

Ball apply(const Moebius& m, const Ball& B) { return {m(B.center), B.r}; }

Horoball shrink(const Horoball& H, double t) {
  if (H.center.inf) return {H.center, H.size * std::exp(t)};
  return {H.center, H.size * std::exp(-t)};
}

std::optional<Ball> shrink(const Ball& B, double t) {
  if (t > B.r) return std::nullopt;
  return Ball{B.center, B.r - t};
}

double horo_height(const Horoball& H, const Point& p) {
  if (H.center.inf) return std::log(p.h / H.size);
  return std::log(H.size * p.h / (std::norm(p.z - H.center.z) + p.h * p.h));
}

bool contains(const Horoball& H, const Point& p) { return horo_height(H, p) >= 0.0; }
bool contains(const Ball& B, const Point& p) { return dist(B.center, p) <= B.r; }

ExtReal crossratio(const Boundary& a, const Boundary& b, const Boundary& c, const Boundary& d) {
  if (same(a, b) || same(c, d)) throw domain_error("crossratio needs a != b and c != d");
  if (same(a, c) || same(b, d)) return ExtReal::neg_inf();
  if (same(c, b) || same(a, d)) return ExtReal::pos_inf();
  // factors containing a point at infinity cancel pairwise
  auto f = [](const Boundary& x, const Boundary& y) { return (x.inf || y.inf) ? 1.0 : std::abs(x.z - y.z); };
  return ExtReal::finite(std::log(f(a, c) * f(b, d) / (f(c, b) * f(d, a))));
}

double hamenstadt_dist(const Boundary& a, const Boundary& b) {
  if (a.inf || b.inf) throw domain_error("hamenstadt distance needs finite points");
  return std::abs(a.z - b.z);
}

double visual_dist(const Point& x0, const Boundary& a, const Boundary& b) {
  // move x0 to (0,1), then half the chordal distance of the Riemann sphere
  auto norm = [&](const Boundary& x) { return x.inf ? x : Boundary::at((x.z - x0.z) / x0.h); };
  Boundary u = norm(a), v = norm(b);
  if (same(u, v)) return 0.0;
  if (u.inf) return 1.0 / std::sqrt(1.0 + std::norm(v.z));
  if (v.inf) return 1.0 / std::sqrt(1.0 + std::norm(u.z));
  return std::abs(u.z - v.z) / (std::sqrt(1.0 + std::norm(u.z)) * std::sqrt(1.0 + std::norm(v.z)));
}

}  // namespace hypen
