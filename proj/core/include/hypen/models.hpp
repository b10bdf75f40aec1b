#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

#include "hypen/constants.hpp"

namespace hypen {

using cplx = std::complex<double>;

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Real slice (imag = 0 everywhere) is the hyperbolic plane, the full complex
// base is upper half-space of dimension 3.
enum class Model { H2 = 2, H3 = 3 };

// Value in [-inf, +inf] without floating infinities in the payload.
struct ExtReal {
  double v = 0.0;
  int inf = 0;  // +1, -1 or 0 for finite

  static ExtReal finite(double x) { return {x, 0}; }
  static ExtReal pos_inf() { return {0.0, 1}; }
  static ExtReal neg_inf() { return {0.0, -1}; }
  bool is_finite() const { return inf == 0; }
  // floating view for printing and comparisons at the edges
  double as_double() const;
};
bool operator<(const ExtReal& a, const ExtReal& b);
bool operator<=(const ExtReal& a, const ExtReal& b);
ExtReal operator-(const ExtReal& a, const ExtReal& b);

struct Boundary {
  cplx z{};
  bool inf = false;

  static Boundary at(cplx w) { return {w, false}; }
  static Boundary at(double x) { return {cplx(x, 0.0), false}; }
  static Boundary infinity() { return {cplx{}, true}; }
};
bool same(const Boundary& a, const Boundary& b);

struct Point {
  cplx z{};
  double h = 1.0;
};

struct Moebius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Moebius make(cplx a, cplx b, cplx c, cplx d);  // rescales to det 1
  static Moebius identity() { return {}; }
  static Moebius scaling(double lambda);                // (z,h) -> lambda (z,h)
  static Moebius translation(cplx w);

  Moebius inverse() const;
  cplx det() const { return a * d - b * c; }
  Boundary operator()(const Boundary& x) const;
  Point operator()(const Point& p) const;
};
Moebius operator*(const Moebius& m, const Moebius& n);

// Moebius map sending x to infinity (and infinity to a finite point, or fixing it).
Moebius send_to_infinity(const Boundary& x);

double dist(const Point& p, const Point& q);

double busemann(const Boundary& xi, const Point& x, const Point& y);
double basepoint_busemann(const Point& xi, const Point& x, const Point& y);

class Geodesic {
 public:
  static Geodesic between(const Boundary& a, const Boundary& b);
  static Geodesic with_anchor(const Boundary& a, const Boundary& b, const Point& anchor);
  // Anchored at the projection of `near`, without the on-geodesic check.
  static Geodesic anchored_near(const Boundary& a, const Boundary& b, const Point& near);

  const Boundary& minus() const { return minus_; }
  const Boundary& plus() const { return plus_; }
  const Point& anchor() const { return anchor_; }
  // maps the vertical axis (0, e^t) to point_at(t)
  const Moebius& frame() const { return frame_; }

  Point at(double t) const;
  // parameter of the point of the geodesic nearest to p
  double param_of(const Point& p) const;
  Geodesic reversed() const;
  bool is_real() const;

 private:
  Boundary minus_, plus_;
  Point anchor_;
  Moebius frame_;
};

inline Point point_at(const Geodesic& g, double t) { return g.at(t); }

Geodesic geodesic_between(const Boundary& a, const Boundary& b);
Geodesic apply(const Moebius& m, const Geodesic& g);

// Geodesic through x ending at b, anchored at x (t = 0 is x).
Geodesic ray_through(const Point& x, const Boundary& b);

// Geodesic anchored at p passing through q at parameter d(p, q).
Geodesic geodesic_through(const Point& p, const Point& q);
// Forward endpoint of the geodesic from xi through x.
Boundary forward_endpoint(const Boundary& xi, const Point& x);
Boundary forward_endpoint(const Point& p, const Point& x);

Point project_to_geodesic(const Point& p, const Geodesic& L);
Point project_to_geodesic(const Boundary& p, const Geodesic& L);
double dist_to_geodesic(const Point& p, const Geodesic& L);
// Distance to the part of L with parameter in [lo, hi] (either may be unset).
double dist_to_piece(const Point& p, const Geodesic& L, std::optional<double> lo, std::optional<double> hi);

struct Horoball {
  Boundary center;
  double size = 1.0;  // height s if centered at infinity, euclidean diameter otherwise

  static Horoball at_infinity(double s) { return {Boundary::infinity(), s}; }
  static Horoball at(cplx c, double diameter) { return {Boundary::at(c), diameter}; }
};

struct Ball {
  Point center;
  double r = 1.0;
};

Horoball apply(const Moebius& m, const Horoball& H);
Ball apply(const Moebius& m, const Ball& B);
Horoball shrink(const Horoball& H, double t);
std::optional<Ball> shrink(const Ball& B, double t);
bool contains(const Horoball& H, const Point& p);
bool contains(const Ball& B, const Point& p);

// Signed Busemann height above the horosphere (positive inside).
double horo_height(const Horoball& H, const Point& p);
// Boundary point of the horoball on the vertical over its center
Point horo_anchor(const Horoball& H);

ExtReal crossratio(const Boundary& a, const Boundary& b, const Boundary& c, const Boundary& d);

// Hamenstadt distance for the horosphere at infinity of height 1. Only ratios
// are used downstream, so the absolute normalization is a convention.
double hamenstadt_dist(const Boundary& a, const Boundary& b);

// Visual distance seen from x0.
double visual_dist(const Point& x0, const Boundary& a, const Boundary& b);

}  // namespace hypen
