#include <cmath>
#include <random>

#include "doctest.h"
#include "hypen/dioph.hpp"

using namespace hypen;

namespace {

const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));

// value of an eventually periodic expansion with 200 unfolded digits
long double value_ld(const CFExpansion& e) {
  long double x = 0.0L;
  for (std::size_t k = 200; k >= 1; --k) x = 1.0L / (static_cast<long double>(e.digit(k)) + x);
  return static_cast<long double>(e.a0) + x;
}

CFExpansion periodic(long long a0, std::vector<long long> pre, std::vector<long long> per) {
  CFExpansion e;
  e.a0 = a0;
  e.digits = pre;
  e.period_start = pre.size();
  e.digits.insert(e.digits.end(), per.begin(), per.end());
  return e;
}

}  // namespace

TEST_CASE("continued fraction expansion") {
  auto g = cf_expand(kGolden, 30);
  CHECK(g.a0 == 1);
  for (int k = 1; k <= 30; ++k) CHECK(g.digit(k) == 1);
  auto s = sqrt_cf(2);
  CHECK(s.a0 == 1);
  REQUIRE(s.periodic());
  CHECK(s.digits == std::vector<long long>{2});
  auto s7 = sqrt_cf(7);
  CHECK(s7.a0 == 2);
  CHECK(s7.digits == std::vector<long long>{1, 1, 1, 4});
  auto s13 = sqrt_cf(13);
  CHECK(s13.digits == std::vector<long long>{1, 1, 1, 1, 6});
  CHECK_THROWS(sqrt_cf(16));

  std::mt19937_64 r(4);
  std::uniform_real_distribution<double> U(1, 2);
  for (int i = 0; i < 200; ++i) {
    double x = U(r);
    auto e = cf_expand(x, 40);
    CHECK(std::abs(cf_value(e) - x) <= 1e-12);
    auto cv = convergents(e, 12);
    for (std::size_t n = 2; n + 1 < cv.size(); ++n) {
      CHECK(cv[n + 1].second == e.digit(n + 1) * cv[n].second + cv[n - 1].second);
      double q = cv[n].second, q1 = cv[n + 1].second;
      CHECK(std::abs(x - cv[n].first / q) <= 1.0 / (q * q1) + 1e-15);
    }
  }
  auto rat = cf_expand(1.25, 40);
  CHECK(rat.terminated);
  CHECK(rat.digits == std::vector<long long>{4});
}

TEST_CASE("parsing") {
  auto e = parse_cf("cf:1,(1)");
  CHECK(e.a0 == 1);
  CHECK(e.periodic());
  CHECK(std::abs(cf_value(e) - kGolden) <= 1e-12);
  auto f = parse_cf("cf:0,3,(1,2)");
  CHECK(f.digits == std::vector<long long>{3, 1, 2});
  CHECK(*f.period_start == 1);
  CHECK(parse_cf("sqrt:3").digits == std::vector<long long>{1, 2});
  CHECK(std::abs(cf_value(parse_cf("3.14159265358979")) - 3.14159265358979) <= 1e-12);
  CHECK_THROWS(parse_cf("cf:1,0,(2)"));
  CHECK_THROWS(parse_cf("cf:1,(2"));
  CHECK_THROWS(parse_cf("bogus"));
}

TEST_CASE("approximation constants against brute force") {
  CHECK(std::abs(approx_constant(parse_cf("cf:1,(1)")) - 1.0 / std::sqrt(5.0)) <= 1e-12);
  CHECK(std::abs(approx_constant(sqrt_cf(2)) - 1.0 / (2.0 * std::sqrt(2.0))) <= 1e-12);
  CHECK(std::abs(brute_force_constant(value_ld(parse_cf("cf:1,(1)")), 1000, 100000) - 1.0 / std::sqrt(5.0)) <= 1e-5);
  CHECK(std::abs(brute_force_constant(value_ld(sqrt_cf(2)), 1000, 100000) - 1.0 / (2.0 * std::sqrt(2.0))) <= 1e-5);

  std::mt19937_64 r(21);
  std::uniform_int_distribution<int> len(1, 4), dig(1, 5);
  for (int i = 0; i < 20; ++i) {
    std::vector<long long> per(len(r));
    for (auto& d : per) d = dig(r);
    auto e = periodic(1, {}, per);
    CAPTURE(i);
    CHECK(std::abs(approx_constant(e) - brute_force_constant(value_ld(e), 1000, 100000)) <= 1e-5);
  }
  CFExpansion fin = cf_expand(std::sqrt(3.0), 10);
  fin.period_start.reset();
  CHECK_THROWS(approx_constant(fin));
}

TEST_CASE("excursions") {
  auto g = excursions(parse_cf("cf:1,(1)"), 60);
  REQUIRE(g.size() == 60);
  for (const auto& x : g) {
    // beta is a finite convergent of 1/phi, so alpha + beta reaches sqrt5 geometrically
    if (x.n >= 25) {
      CHECK(std::abs(x.alpha + x.beta - std::sqrt(5.0)) <= 1e-9);
      CHECK(std::abs(x.ph - 2.0 * std::log(std::sqrt(5.0) / 2.0)) <= 1e-9);
    }
    // the geodesic from -beta to alpha against the horoball of height 1
    Boundary a = Boundary::at(-x.beta);
    double ph = penetration(Geodesic::between(a, Boundary::at(x.alpha)), Horoball::at_infinity(1.0), PenKind::PH, a)
                    .as_double();
    CHECK(std::abs(ph - x.ph) <= 1e-9);
  }

  CFExpansion spike;
  spike.a0 = 0;
  for (int i = 0; i < 30; ++i) spike.digits.push_back(i == 15 ? 50 : 1);
  auto sx = excursions(spike, 28);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < sx.size(); ++i)
    if (sx[i].ph > sx[peak].ph) peak = i;
  CHECK(sx[peak].ph > 2.0 * std::log(25.0));
  CHECK(sx[peak].ph < 2.0 * std::log(26.0));
  for (std::size_t i = 0; i < sx.size(); ++i)
    if (i != peak) CHECK(sx[i].ph < 1.0);

  std::mt19937_64 r(33);
  std::uniform_int_distribution<int> len(1, 3), dig(1, 6);
  for (int i = 0; i < 10; ++i) {
    std::vector<long long> per(len(r));
    for (auto& d : per) d = dig(r);
    auto e = periodic(0, {2}, per);
    auto ex = excursions(e, 200);
    std::vector<double> mag;
    for (const auto& x : ex) mag.push_back(x.magnitude);
    CHECK(std::abs(limsup_estimate(mag) - 1.0 / (2.0 * approx_constant(e))) <= 1e-6);
  }
  CHECK(limsup_estimate({5.0, 1.0, 2.0, 3.0}) == 3.0);
}

TEST_CASE("Ford families") {
  auto f1 = ford_family(1, Ring::Rational, {-2.0, 3.0});
  CHECK(f1.bodies.size() == 7);
  for (std::size_t i = 1; i < f1.bodies.size(); ++i) {
    const auto& H = std::get<Horoball>(f1.bodies[i]);
    CHECK(H.size == 1.0);
    CHECK(H.center.z.real() == std::round(H.center.z.real()));
  }
  CHECK(f1.min_gap == 0.0);

  auto f = ford_family(12, Ring::Rational);
  CHECK(f.min_gap >= 0.0);
  CHECK_NOTHROW(check_almost_disjoint(f.obstacles()));
  // depth: the distance from the horoball at infinity is 2 log q
  for (std::size_t i = 1; i < f.bodies.size(); ++i) {
    const auto& H = std::get<Horoball>(f.bodies[i]);
    double q = std::abs(f.fractions[i - 1].second);
    CHECK(std::abs(H.size - 1.0 / (q * q)) <= 1e-15);
    CHECK(std::abs(-std::log(H.size) - 2.0 * std::log(q)) <= 1e-9);
  }
  auto g5 = ford_family(5, Ring::Gaussian);
  CHECK(g5.min_gap >= 0.0);
  CHECK_NOTHROW(check_almost_disjoint(g5.obstacles()));
  for (std::size_t i = 1; i < g5.bodies.size(); ++i) {
    auto [p, q] = g5.fractions[i - 1];
    const auto& H = std::get<Horoball>(g5.bodies[i]);
    CHECK(std::abs(H.center.z - p / q) <= 1e-12);
    CHECK(std::abs(H.size - 1.0 / std::norm(q)) <= 1e-15);
  }
  CHECK_THROWS(ford_family(0, Ring::Rational));
}

TEST_CASE("Gaussian approximation constants") {
  std::mt19937_64 r(9);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 10; ++i) {
    std::complex<double> x(U(r), U(r));
    double c50 = complex_approx_constant(x, 50), c200 = complex_approx_constant(x, 200);
    CHECK(c200 <= c50);
    CHECK(c200 <= 0.58);
  }
  // direct sweep over all q with every p near q x
  std::complex<double> x = std::polar(1.0, M_PI / 7.0);
  double best = HUGE_VAL;
  for (int a = -30; a <= 30; ++a)
    for (int b = -30; b <= 30; ++b) {
      std::complex<double> q(a, b);
      if (std::abs(q) > 30.0 || std::abs(q) == 0.0) continue;
      std::complex<double> w = q * x;
      for (int da = -2; da <= 2; ++da)
        for (int db = -2; db <= 2; ++db) {
          std::complex<double> p(std::round(w.real()) + da, std::round(w.imag()) + db);
          best = std::min(best, std::norm(q) * std::abs(x - p / q));
        }
    }
  CHECK(std::abs(complex_approx_constant(x, 30) - best) <= 1e-9);
  CHECK_THROWS(complex_approx_constant({0.5, 0.5}, 10));
}

TEST_CASE("spectrum map") {
  CHECK(std::abs(spectrum_map(0.220855) - 3.0205) <= 1e-3);
  // the printed cap 0.0337 is rounded; its own image is 6.7805
  CHECK(std::abs(spectrum_map(0.0337) - 6.780515) <= 1e-6);
  CHECK(std::abs(spectrum_map(1.0 / std::sqrt(5.0)) - std::log(5.0)) <= 1e-12);
  CHECK(std::abs(spectrum_inverse(spectrum_map(0.3)) - 0.3) <= 1e-15);
  CHECK_THROWS(spectrum_map(0.0));
  auto hl = hall_and_lagrange_bounds();
  CHECK(std::abs(spectrum_map(hl.lagrange_cap) - 0.5 * hl.height_bound) <= 2e-3);
}
