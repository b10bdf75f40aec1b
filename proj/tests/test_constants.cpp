#include <cmath>
#include <set>

#include "doctest.h"
#include "hypen/constants.hpp"

using namespace hypen;

TEST_CASE("horoball constants match their closed forms") {
  CHECK(std::abs(c1_prime(Eps::infinity()) - 2.0 * std::log(1.0 + std::sqrt(2.0))) <= 1e-12);
  CHECK(c0(Eps::infinity()) == 4.056);
  // eps -> inf limit of 2 asinh(coth eps)
  CHECK(std::abs(c1_prime(Eps::of(40.0)) - c1_prime(Eps::infinity())) <= 1e-12);
  CHECK(std::abs(h_prime(Eps::infinity(), 0.0) - (4.056 + 2.0 * std::log(1.0 + std::sqrt(2.0)))) <= 1e-12);
}

TEST_CASE("accurate inverse hyperbolics") {
  for (double x : {1e-12, 1e-6, 0.3, 2.0, 1e6}) {
    CHECK(std::abs(asinh_acc(x) - std::asinh(x)) <= 1e-15 * (1.0 + std::asinh(x)));
    CHECK(asinh_acc(-x) == -asinh_acc(x));
  }
  // acosh(1 + y) = sqrt(2y) (1 - y/12 + ...) near 1
  double y = 1e-10;
  CHECK(std::abs(acosh_acc(1.0 + y) - std::sqrt(2.0 * y)) <= 1e-6 * std::sqrt(2.0 * y));
  CHECK(acosh_acc(0.5) == 0.0);
  CHECK(std::abs(acosh_acc(3.0) - std::log(3.0 + std::sqrt(8.0))) <= 1e-15);
}

TEST_CASE("finite eps constants") {
  double e = 0.7;
  CHECK(std::abs(c1_prime(Eps::of(e)) - 2.0 * std::asinh(std::cosh(e) / std::sinh(e))) <= 1e-13);
  CHECK(std::abs(c0(Eps::of(e)) - 2.0 * std::log(2.0 * (1.0 + std::exp(e / 2.0)) * std::sinh(e) / e)) <= 1e-13);
  CHECK(std::abs(c3_prime(Eps::of(e)) - (3.0 + 2.0 * c1_prime(Eps::of(e)) / e)) <= 1e-13);
  // the small-eps branch of sinh(e)/e joins the direct formula
  double a = c0(Eps::of(0.99e-4)), b = 2.0 * std::log(2.0 * (1.0 + std::exp(0.99e-4 / 2.0)) * std::sinh(0.99e-4) / 0.99e-4);
  CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("mu chain and nu") {
  // closed form 2q / (1 + sqrt(1 - q^2)) with q = e^{-mu}
  for (double mu : {0.0, 0.1, 1.0, 5.0}) {
    double q = std::exp(-mu);
    CHECK(std::abs(nu(mu) - 2.0 * q / (1.0 + std::sqrt(1.0 - q * q))) <= 1e-15);
  }
  auto m = mu_chain(1.042);
  CHECK(m.mu5 < 1.5332);
  CHECK(std::abs(m.mu3 - (m.mu1 + m.mu2)) <= 1e-15);
  CHECK(std::abs(m.mu4 - 2.0 * (m.mu1 - m.mu2)) <= 1e-15);
  CHECK_THROWS_AS(mu_chain(0.5), precondition_error);
  CHECK_THROWS_AS(nu(-1.0), precondition_error);
  CHECK(nu(derived_constants({}).h0 / 2.0) <= 1.0 / 19.0);
}

TEST_CASE("derived table on the horoball height branch") {
  ParamSet p;
  p.ph_horoball_zero_delta = true;
  auto t = derived_constants(p);
  CHECK(t.c1 == doctest::Approx(1.0 / 19.0).epsilon(1e-15));
  CHECK(std::abs(t.h0 - 5.976714818) <= 1e-8);
  CHECK(std::abs(t.h1_prime() - 6.503273631) <= 1e-8);
  CHECK(std::abs(t.h1_dprime() - 8.397599752) <= 1e-8);
  CHECK(std::abs(t.h1_prime(7.0) - (7.0 + 2.0 * t.c5)) <= 1e-15);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Eps::of(0.0), precondition_error);
  CHECK_THROWS_AS(Eps::of(-1.0), precondition_error);
  CHECK_THROWS_AS(Eps::of(INFINITY), precondition_error);
  ParamSet p;
  p.delta0 = -0.1;
  CHECK_THROWS_AS(derived_constants(p), precondition_error);
  p.delta0 = 0.1;
  p.ph_horoball_zero_delta = true;
  CHECK_THROWS_AS(derived_constants(p), precondition_error);
  CHECK_THROWS_AS(h_prime(Eps::infinity(), -1.0), precondition_error);
  CHECK_THROWS_AS(hall_and_lagrange_bounds(0.0), precondition_error);
}

TEST_CASE("threshold constants") {
  CHECK(std::abs(r0_min() - (14.0 * std::sqrt(2.0) + 3.0 * std::log(1.0 + std::sqrt(2.0)))) <= 1e-13);
  auto b = hall_and_lagrange_bounds();
  CHECK(std::abs(b.half_height * 2.0 - b.height_bound) <= 1e-14);
  CHECK(std::abs(b.lagrange_cap - std::exp(-b.half_height / 2.0)) <= 1e-15);
  auto b4 = hall_and_lagrange_bounds(4.0);
  CHECK(std::abs(b4.heis_cap_case1 - b.heis_cap_case1 / 2.0) <= 1e-15);
  CHECK(c2_dprime(Eps::of(r0_min())) < 108.0);
  CHECK(2.0 * c1_prime(Eps::of(r0_min())) <= 4.0);
}

TEST_CASE("audit rows") {
  auto rows = audit();
  std::set<std::string> names;
  for (const auto& r : rows) {
    CAPTURE(r.name);
    CHECK(r.pass);
    CHECK(names.insert(r.name).second);
    if (r.paper && r.tol > 0.0) CHECK(std::abs(r.computed - *r.paper) <= r.tol);
  }
  CHECK(rows.size() >= 20);
}

TEST_CASE("values at sample points") {
  long double one = 1.0L;
  CHECK(std::abs(c1_prime(Eps::of(1.0)) - static_cast<double>(2.0L * std::asinh(std::cosh(one) / std::sinh(one)))) <= 1e-14);
  CHECK(std::abs(c1_prime(Eps::of(1.0)) - 2.172747706) <= 1e-9);
  CHECK(std::abs(c1_prime(Eps::of(r0_min())) - 1.7627) <= 1e-4);
  CHECK(std::abs(c0(Eps::of(1e-6)) - 4.0 * std::log(2.0)) <= 1e-4);
  // c0(e) = 3e - 2 log e + O(e^{-e/2}), so the 1% band is reached only near e = 1000
  CHECK(std::abs(c0(Eps::of(100.0)) - (300.0 - 2.0 * std::log(100.0))) <= 1e-9);
  CHECK(std::abs(c0(Eps::of(1000.0)) / 3000.0 - 1.0) <= 0.01);
  CHECK(c_dprime(Eps::infinity()) == 1.5);
  double e = 1e-6;
  CHECK(std::abs(c_dprime(Eps::of(e)) / ((2.0 / e) * std::log(2.0 + std::sqrt(3.0))) - 1.0) <= 1e-3);
  // c''(e) = 1 + 2 log 2 / e up to exponentially small terms
  CHECK(std::abs(c_dprime(Eps::of(50.0)) - (1.0 + 2.0 * std::log(2.0) / 50.0)) <= 1e-12);
  CHECK(std::abs(c_dprime(Eps::of(500.0)) - 1.0) <= 1e-2);
  CHECK(c2_prime(Eps::infinity()) == 2.5);
  CHECK(std::abs(c2_prime(Eps::of(r0_min())) - 2.0616) <= 1e-3);
  CHECK(std::abs(c2_prime(Eps::of(50.0)) - (c_dprime(Eps::of(50.0)) + 1.0)) <= 1e-6);
  CHECK(c3_prime(Eps::infinity()) == 2.5);
  CHECK(std::abs(c3_prime(Eps::of(r0_min())) - 3.1571) <= 1e-3);
  CHECK(std::abs(c3_prime(Eps::of(1e4)) - 3.0) <= 1e-3);
  CHECK(std::abs(h_prime(Eps::infinity(), 0.0) - 5.81875) <= 1e-4);
  CHECK(std::abs(h_prime(Eps::infinity(), 1.0) - 8.81875) <= 1e-4);
  double c11 = 2.0 * std::asinh(std::cosh(1.0) / std::sinh(1.0));
  double c01 = 2.0 * std::log(2.0 * (1.0 + std::exp(0.5)) * std::sinh(1.0));
  CHECK(std::abs(h_prime(Eps::of(1.0), 0.0) - std::max(2.0 * std::log(2.0), c11 + c01)) <= 1e-13);
  CHECK(nu(0.0) == 2.0);
  CHECK(std::abs(nu(1.042) - 0.36445) <= 1e-4);
  CHECK(std::abs(mu_chain(1.042).mu5 - 1.533141898) <= 1e-9);
  ParamSet p;
  p.ph_horoball_zero_delta = true;
  CHECK(std::abs(derived_constants(p).c5 - 5.0 * std::sinh(1.0 / 19.0)) <= 1e-15);
  CHECK(std::abs(c1_dprime(Eps::infinity(), 0.0, 0.0) - 6.5032) <= 1e-3);
  CHECK(std::abs(c1_dprime(Eps::of(r0_min()), 0.0, 0.0) - 101.4169) <= 1e-2);
  CHECK(c1_dprime(Eps::infinity(), 0.0, 1.0) == std::max(c1_dprime(Eps::infinity(), 0.0, 0.0), 2.0 * c1_prime(Eps::infinity()) + 1.0));
  CHECK(std::abs(c2_dprime(Eps::infinity()) - 8.3712) <= 1e-3);
  CHECK(std::abs(c2_dprime(Eps::of(r0_min())) - 106.7051) <= 1e-2);
  CHECK(std::abs(std::sinh(c1_prime(Eps::infinity())) - 2.0 * std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(r0_min() - (7.0 * std::sinh(c1_prime(Eps::infinity())) + 1.5 * c1_prime(Eps::infinity()))) <= 1e-12);
}

TEST_CASE("monotonicity and asymptotics") {
  double prev = HUGE_VAL;
  for (int i = 0; i < 1000; ++i) {
    double e = std::pow(10.0, -4.0 + 5.0 * i / 999.0);
    double v = c1_prime(Eps::of(e));
    CHECK(v < prev);
    prev = v;
  }
  double e = 1e-4;
  double r1 = c1_prime(Eps::of(e)) / (-2.0 * std::log(e));
  double r2 = c2_prime(Eps::of(e)) * 4.0 * e * e * e * std::log(1.0 / e) / std::sqrt(2.0);
  double r3 = c3_prime(Eps::of(e)) * e / (-4.0 * std::log(e));
  CHECK((r1 >= 0.9 && r1 <= 1.1));
  CHECK((r3 >= 0.9 && r3 <= 1.1));
  // sinh c1' ~ 2/e^2 and c1' ~ 2 log(1/e) give c2' ~ sqrt 2 / (e^3 log(1/e))
  double r2b = r2 / 4.0;
  CHECK((r2b >= 0.8 && r2b <= 1.2));
  for (double eta : {0.0, 1.0, 5.0}) CHECK(std::abs(h_prime(Eps::of(1000.0), eta) / 3000.0 - 1.0) <= 0.01);
  for (int i = 0; i <= 200; ++i) {
    double x = std::pow(10.0, -2.0 + 4.0 * i / 200.0);
    CHECK(3.0 * x + 4.0 * std::log(2.0) >= c0(Eps::of(x)));
  }
  for (int i = 0; i <= 100; ++i) {
    double mu1 = std::log(2.0) + (3.0 - std::log(2.0)) * i / 100.0;
    CHECK(mu_chain(mu1).mu4 > 0.0);
  }
}

TEST_CASE("internal consistency") {
  ParamSet p;
  p.kappa0 = c1_prime(Eps::infinity());
  p.ph_horoball_zero_delta = true;
  auto t = derived_constants(p);
  CHECK(std::abs(c1_dprime(Eps::infinity(), 0.0, 0.0) - t.h1_prime()) <= 1e-15);
  CHECK(std::abs(t.h0 - h_prime(Eps::infinity(), std::sinh(1.0 / 19.0))) <= 1e-15);
  CHECK(std::abs(t.c6 - (3.0 * t.c4 + std::log(2.0))) <= 1e-15);
  for (double x : {0.5, 1.0, 10.0}) CHECK(c2_dprime(Eps::of(x)) > c1_dprime(Eps::of(x), 0.0, 0.0));
}

TEST_CASE("large eps stays finite and continuous") {
  for (double e : {40.0, 700.0, 1e4, 1e8}) {
    CHECK(std::isfinite(c0(Eps::of(e))));
    CHECK(std::isfinite(c_dprime(Eps::of(e))));
    CHECK(std::isfinite(c2_prime(Eps::of(e))));
    CHECK(std::isfinite(h_prime(Eps::of(e), 1.0)));
  }
  double lo = std::nextafter(40.0, 0.0), hi = std::nextafter(40.0, 100.0);
  CHECK(std::abs(c0(Eps::of(lo)) - c0(Eps::of(hi))) <= 1e-12);
  CHECK(std::abs(c_dprime(Eps::of(lo)) - c_dprime(Eps::of(hi))) <= 1e-12);
  CHECK(std::abs(c2_prime(Eps::of(0.999999999)) - c2_prime(Eps::of(1.000000001))) <= 1e-7);
}
