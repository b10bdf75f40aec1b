#include <cmath>
#include <random>

#include "doctest.h"
#include "hypen/models.hpp"

using namespace hypen;

namespace {

// half-space distance written independently of the library
double dist_oracle(const Point& p, const Point& q) {
  double num = std::norm(p.z - q.z) + (p.h - q.h) * (p.h - q.h);
  return 2.0 * std::asinh(std::sqrt(num) / (2.0 * std::sqrt(p.h * q.h)));
}

struct Rand {
  std::mt19937_64 g;
  explicit Rand(std::uint64_t s) : g(s) {}
  double u(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
  cplx z(double r = 3.0) { return {u(-r, r), u(-r, r)}; }
  Point pt() { return {z(), std::exp(u(-2.0, 2.0))}; }
  Moebius m() {
    cplx a = z(2), b = z(2), c = z(2), d = z(2);
    if (std::abs(a * d - b * c) < 0.1) d += 1.0;
    return Moebius::make(a, b, c, d);
  }
};

// point on the vertical geodesic ending at b (or rising to infinity) at height e^{-t} (resp. e^t)
Point radial(const Boundary& b, double t) { return b.inf ? Point{0.0, std::exp(t)} : Point{b.z, std::exp(-t)}; }

}  // namespace

TEST_CASE("distance examples") {
  CHECK(std::abs(dist({0.0, 1.0}, {0.0, std::exp(1.0)}) - 1.0) <= 1e-15);
  CHECK(std::abs(dist({0.0, 1.0}, {1.0, 1.0}) - std::acosh(1.5)) <= 1e-15);
  CHECK(std::abs(dist({0.0, 1.0}, {1.0, 1.0}) - 0.9624) <= 1e-4);
  Rand r(1);
  for (int i = 0; i < 1000; ++i) {
    Point p = r.pt(), q = r.pt();
    CHECK(std::abs(dist(p, q) - dist_oracle(p, q)) <= 1e-12 * (1.0 + dist_oracle(p, q)));
  }
  CHECK(dist({0.3, 0.7}, {0.3, 0.7}) == 0.0);
}

TEST_CASE("busemann functions") {
  Point o{0.0, 1.0}, y{0.0, std::exp(1.0)};
  CHECK(std::abs(busemann(Boundary::infinity(), o, y) - 1.0) <= 1e-14);
  CHECK(std::abs(basepoint_busemann({0.0, std::exp(2.0)}, o, y) - 1.0) <= 1e-14);
  CHECK(basepoint_busemann({0.3, 2.0}, o, o) == 0.0);
  Rand r(2);
  for (int i = 0; i < 1000; ++i) {
    Boundary xi = i % 5 == 0 ? Boundary::infinity() : Boundary::at(r.z());
    Point a = r.pt(), b = r.pt(), c = r.pt();
    CHECK(std::abs(busemann(xi, a, a)) <= 1e-12);
    CHECK(std::abs(busemann(xi, a, b) + busemann(xi, b, c) - busemann(xi, a, c)) <= 1e-9);
    // limit definition along the vertical ray to xi
    Point far = radial(xi, 25.0);
    double lim = dist_oracle(a, far) - dist_oracle(b, far);
    CHECK(std::abs(busemann(xi, a, b) - lim) <= 1e-6);
  }
}

TEST_CASE("geodesics are unit speed with the right ends") {
  auto g = Geodesic::with_anchor(Boundary::at(0.0), Boundary::infinity(), {0.0, 1.0});
  for (double t : {-2.0, 0.0, 1.5}) {
    CHECK(std::abs(g.at(t).z) <= 1e-15);
    CHECK(std::abs(g.at(t).h - std::exp(t)) <= 1e-14 * std::exp(t));
  }
  auto s = Geodesic::with_anchor(Boundary::at(-1.0), Boundary::at(1.0), {0.0, 1.0});
  CHECK(std::abs(s.at(0.0).h - 1.0) <= 1e-14);
  CHECK(std::abs(s.at(40.0).z - cplx(1.0)) <= 1e-12);
  CHECK(std::abs(s.at(-40.0).z - cplx(-1.0)) <= 1e-12);
  CHECK_THROWS_AS(Geodesic::between(Boundary::at(0.5), Boundary::at(0.5)), domain_error);
  CHECK_THROWS_AS(Geodesic::with_anchor(Boundary::at(-1.0), Boundary::at(1.0), {0.0, 2.0}), domain_error);
  Rand r(3);
  for (int i = 0; i < 1000; ++i) {
    auto h = Geodesic::between(Boundary::at(r.z()), i % 7 ? Boundary::at(r.z()) : Boundary::infinity());
    double a = r.u(-5, 5), b = r.u(-5, 5);
    CHECK(std::abs(dist_oracle(h.at(a), h.at(b)) - std::abs(a - b)) <= 1e-9);
    CHECK(std::abs(h.param_of(h.at(a)) - a) <= 1e-8);
  }
}

TEST_CASE("projections") {
  auto v = Geodesic::between(Boundary::at(0.0), Boundary::infinity());
  auto p = project_to_geodesic(Point{0.0, 2.0}, v);
  CHECK(std::abs(p.z) <= 1e-14);
  CHECK(std::abs(p.h - 2.0) <= 1e-14);
  auto s = Geodesic::between(Boundary::at(-1.0), Boundary::at(1.0));
  auto apex = project_to_geodesic(Boundary::infinity(), s);
  CHECK(std::abs(apex.z) <= 1e-14);
  CHECK(std::abs(apex.h - 1.0) <= 1e-14);
  CHECK_THROWS_AS(project_to_geodesic(Boundary::at(1.0), s), domain_error);
  Rand r(4);
  for (int i = 0; i < 1000; ++i) {
    auto L = Geodesic::between(Boundary::at(r.z()), Boundary::at(r.z()));
    Point x = r.pt(), y = r.pt();
    Point px = project_to_geodesic(x, L), py = project_to_geodesic(y, L);
    CHECK(dist_oracle(px, py) <= dist_oracle(x, y) + 1e-9);
    Point ppx = project_to_geodesic(px, L);
    CHECK(dist_oracle(px, ppx) <= 1e-7);
    // no point of L is closer
    for (double t : {-1.0, -0.1, 0.1, 1.0}) CHECK(dist_oracle(x, px) <= dist_oracle(x, L.at(L.param_of(px) + t)) + 1e-9);
  }
}

TEST_CASE("Moebius maps are isometries") {
  CHECK(std::abs(dist(Moebius::identity()(Point{0.2, 0.5}), {0.2, 0.5})) <= 1e-15);
  auto J = Moebius::make(0.0, -1.0, 1.0, 0.0);
  auto H = apply(J, Horoball::at_infinity(1.0));
  CHECK(!H.center.inf);
  CHECK(std::abs(H.center.z) <= 1e-15);
  CHECK(std::abs(H.size - 1.0) <= 1e-14);
  Rand r(5);
  for (int i = 0; i < 1000; ++i) {
    Moebius m = r.m(), n = r.m();
    Point p = r.pt(), q = r.pt();
    CHECK(std::abs(dist_oracle(m(p), m(q)) - dist_oracle(p, q)) <= 1e-9 * (1.0 + dist_oracle(p, q)));
    Point a = (m * n)(p), b = m(n(p));
    CHECK(dist_oracle(a, b) <= 1e-9);
    CHECK(dist_oracle(m.inverse()(m(p)), p) <= 1e-9);
    // image of the horoball at infinity: center a/c, diameter 1/(|c|^2 s)
    double s = std::exp(r.u(-1, 1));
    auto img = apply(m, Horoball::at_infinity(s));
    CHECK(std::abs(img.center.z - m.a / m.c) <= 1e-9 * (1.0 + std::abs(m.a / m.c)));
    CHECK(std::abs(img.size - 1.0 / (std::norm(m.c) * s)) <= 1e-9 * img.size);
    // and membership is preserved
    Point x = r.pt();
    CHECK(contains(Horoball::at_infinity(s), x) == contains(img, m(x)));
  }
}

TEST_CASE("shrinking") {
  auto H = shrink(Horoball::at_infinity(1.0), std::log(2.0));
  CHECK(std::abs(H.size - 2.0) <= 1e-15);
  auto F = shrink(Horoball::at(0.5, 1.0), 1.0);
  CHECK(std::abs(F.size - std::exp(-1.0)) <= 1e-15);
  CHECK(!shrink(Ball{{0.0, 1.0}, 1.0}, 2.0).has_value());
  Rand r(6);
  for (int i = 0; i < 1000; ++i) {
    Horoball B = i % 2 ? Horoball::at(r.z(1), r.u(0.2, 2)) : Horoball::at_infinity(r.u(0.2, 2));
    double t = r.u(-1, 1), tp = t + r.u(0, 1);
    Point x = r.pt();
    if (contains(shrink(B, tp), x)) CHECK(contains(shrink(B, t), x));
    Ball b{r.pt(), r.u(0.5, 3)};
    auto s1 = shrink(b, 0.2), s2 = shrink(b, 0.4);
    if (s2 && contains(*s2, x)) CHECK(contains(*s1, x));
    // the Busemann height is log of the height ratio
    if (B.center.inf) CHECK(std::abs(horo_height(B, x) - std::log(x.h / B.size)) <= 1e-12);
  }
}

TEST_CASE("crossratio") {
  auto inf = Boundary::infinity();
  auto cr = crossratio(Boundary::at(0.0), inf, Boundary::at(1.0), Boundary::at(-1.0));
  CHECK(cr.is_finite());
  CHECK(std::abs(cr.v) <= 1e-15);
  CHECK(crossratio(Boundary::at(0.0), Boundary::at(1.0), Boundary::at(0.0), Boundary::at(2.0)).inf == -1);
  CHECK(crossratio(Boundary::at(0.0), Boundary::at(1.0), Boundary::at(1.0), Boundary::at(2.0)).inf == 1);
  CHECK_THROWS_AS(crossratio(Boundary::at(0.0), Boundary::at(0.0), Boundary::at(1.0), Boundary::at(2.0)), domain_error);
  Rand r(7);
  for (int i = 0; i < 100; ++i) {
    Boundary a = Boundary::at(r.z()), b = Boundary::at(r.z()), c = Boundary::at(r.z()),
             d = i % 4 ? Boundary::at(r.z()) : inf;
    double x = crossratio(a, b, c, d).v;
    CHECK(std::abs(crossratio(c, d, a, b).v - x) <= 1e-12);
    CHECK(std::abs(crossratio(a, b, d, c).v + x) <= 1e-12);
    // limit definition at t = 30
    double t = 30.0;
    Point at = radial(a, t), bt = radial(b, t), ct = radial(c, t), dt = radial(d, t);
    double lim = 0.5 * (dist_oracle(at, ct) - dist_oracle(ct, bt) + dist_oracle(bt, dt) - dist_oracle(dt, at));
    CHECK(std::abs(lim - x) <= 1e-6);
    if (!d.inf) {
      double viaH = std::log(hamenstadt_dist(a, c) * hamenstadt_dist(b, d) / (hamenstadt_dist(c, b) * hamenstadt_dist(d, a)));
      CHECK(std::abs(viaH - x) <= 1e-9);
    }
  }
  // continuity at c -> d
  Boundary a = Boundary::at(0.0), b = Boundary::at(1.0), d = Boundary::at(3.0);
  double prev = HUGE_VAL;
  for (int k = 1; k <= 8; ++k) {
    double v = std::abs(crossratio(a, b, Boundary::at(3.0 + std::pow(10.0, -k)), d).v);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev <= 1e-7);
}

TEST_CASE("boundary distances") {
  CHECK(hamenstadt_dist(Boundary::at(cplx(0.3, 0.1)), Boundary::at(cplx(0.3, 0.1))) == 0.0);
  CHECK_THROWS_AS(hamenstadt_dist(Boundary::infinity(), Boundary::at(0.0)), domain_error);
  Rand r(8);
  for (int i = 0; i < 200; ++i) {
    Point x0 = r.pt();
    Boundary a = Boundary::at(r.z()), b = Boundary::at(r.z());
    // visual distance as exp(-Gromov product) along radial sequences
    double t = 30.0;
    Point at = radial(a, t), bt = radial(b, t);
    double gp = 0.5 * (dist_oracle(x0, at) + dist_oracle(x0, bt) - dist_oracle(at, bt));
    CHECK(std::abs(visual_dist(x0, a, b) - std::exp(-gp)) <= 1e-6);
    // rescaled visual distances from x_t = (0, e^t) tend to the Euclidean one
    Point xt{0.0, std::exp(t / 2.0)};
    CHECK(std::abs(std::exp(t / 2.0) * visual_dist(xt, a, b) - hamenstadt_dist(a, b)) <= 1e-6 * (1.0 + hamenstadt_dist(a, b)));
  }
}

TEST_CASE("extended reals") {
  CHECK(ExtReal::neg_inf() < ExtReal::finite(-1e300));
  CHECK(ExtReal::finite(1e300) < ExtReal::pos_inf());
  CHECK((ExtReal::pos_inf() - ExtReal::finite(3.0)).inf == 1);
  CHECK_THROWS_AS(ExtReal::pos_inf() - ExtReal::pos_inf(), domain_error);
  CHECK((ExtReal::finite(2.0) - ExtReal::finite(0.5)).v == 1.5);
}
