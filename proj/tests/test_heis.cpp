#include <cmath>
#include <random>

#include "doctest.h"
#include "hypen/heis.hpp"
#include "hypen/models.hpp"
#include "hypen/penetration.hpp"

using namespace hypen;
using cd = std::complex<double>;

namespace {

struct Rand {
  std::mt19937_64 g;
  explicit Rand(std::uint64_t s) : g(s) {}
  double n() { return std::normal_distribution<double>()(g); }
  double u(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
  HeisPoint heis(int dim = 1) {
    VecC z(dim);
    for (int i = 0; i < dim; ++i) z(i) = cd(n(), n());
    return {z, 2.0 * n()};
  }
  SiegelPoint interior(int dim = 1) {
    VecC w(dim);
    for (int i = 0; i < dim; ++i) w(i) = cd(n(), n());
    double h = std::exp(u(-2, 2));
    return {cd(0.5 * (w.squaredNorm() + h), 2.0 * n()), w, false};
  }
  Quaternion quat() { return {n(), n(), n(), n()}; }
  QMat2 qmat() { return {quat(), quat(), quat(), quat()}; }
};

double max_abs(const MatC& m) { return m.cwiseAbs().maxCoeff(); }

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).abs(); }

// antidiag(1/cbar, A, c) with A unitary
MatC swap_matrix(int n, cd c, const MatC& A) {
  MatC X = MatC::Zero(n + 1, n + 1);
  X(0, n) = 1.0 / std::conj(c);
  X(n, 0) = c;
  X.block(1, 1, n - 1, n - 1) = A;
  return X;
}

}  // namespace

TEST_CASE("Heisenberg group law") {
  HeisPoint a{VecC::Constant(1, cd(1, 0)), 0.0}, b{VecC::Constant(1, cd(0, 1)), 0.0};
  auto ab = heis_mul(a, b);
  CHECK(std::abs(ab.zeta(0) - cd(1, 1)) == 0.0);
  CHECK(ab.v == -2.0);
  Rand r(1);
  for (int dim : {1, 2}) {
    for (int i = 0; i < 1000; ++i) {
      auto p = r.heis(dim), q = r.heis(dim), s = r.heis(dim);
      auto l = heis_mul(heis_mul(p, q), s), rr = heis_mul(p, heis_mul(q, s));
      CHECK((l.zeta - rr.zeta).norm() <= 1e-12);
      CHECK(std::abs(l.v - rr.v) <= 1e-12 * (1 + std::abs(l.v)));
      auto e = heis_mul(p, heis_inv(p));
      CHECK(e.zeta.norm() == 0.0);
      CHECK(std::abs(e.v) <= 1e-12);
      auto id = heis_mul(heis_identity(dim), p);
      CHECK(id.v == p.v);
    }
  }
}

TEST_CASE("Cygan distances") {
  Rand r(2);
  for (int i = 0; i < 10000; ++i) {
    int dim = 1 + i % 2;
    auto p = r.heis(dim), q = r.heis(dim), s = r.heis(dim), g = r.heis(dim);
    double d = cygan(p, q), dm = cygan_mod(p, q);
    CHECK(d <= dm * (1 + 1e-12));
    CHECK(dm <= std::sqrt(2.0) * d * (1 + 1e-12));
    CHECK(cygan(p, s) <= cygan(p, q) + cygan(q, s) + 1e-12);
    CHECK(cygan_mod(p, s) <= cygan_mod(p, q) + cygan_mod(q, s) + 1e-12);
    CHECK(std::abs(cygan(heis_mul(g, p), heis_mul(g, q)) - d) <= 1e-12 * (1 + d));
  }
  // boundary form of the modified distance from the origin
  for (int i = 0; i < 1000; ++i) {
    auto p = r.heis(2);
    auto w = to_boundary(p);
    CHECK(w.boundary());
    CHECK(std::abs(cygan_mod(heis_identity(2), p) - std::sqrt(2.0 * std::abs(w.w0) + w.w.squaredNorm())) <= 1e-12 * (1 + std::abs(w.w0)));
    auto back = from_boundary(w);
    CHECK((back.zeta - p.zeta).norm() <= 1e-12);
    CHECK(std::abs(back.v - p.v) <= 1e-12);
  }
}

TEST_CASE("Siegel domain matrices") {
  Rand r(3);
  for (int n : {2, 3}) {
    CHECK(uq_check(x0_matrix(n)));
    CHECK(max_abs(u_matrix(heis_identity(n - 1)) - MatC::Identity(n + 1, n + 1)) == 0.0);
    for (int i = 0; i < 1000; ++i) {
      auto p = r.heis(n - 1), q = r.heis(n - 1);
      CHECK(uq_check(u_matrix(p)));
      CHECK(max_abs(u_matrix(heis_mul(p, q)) - u_matrix(p) * u_matrix(q)) <= 1e-12 * (1 + std::abs(p.v) + std::abs(q.v)));
      // u maps the origin to the boundary point of p and preserves every horoball at infinity
      auto o = siegel_act(u_matrix(p), to_boundary(heis_identity(n - 1)));
      CHECK(std::abs(o.w0 - to_boundary(p).w0) <= 1e-12 * (1 + std::abs(o.w0)));
      auto x = r.interior(n - 1);
      auto y = siegel_act(u_matrix(p), x);
      CHECK(std::abs(y.height() - x.height()) <= 1e-9 * (1 + x.height()));
      // the image of H_s under X0 is 2 Re w0 - |w|^2 >= s |w0|^2
      double s = r.u(0.1, 3);
      bool by_form = x.height() >= s * std::norm(x.w0);
      bool by_action = in_horoball(siegel_act(x0_matrix(n).inverse(), x), s);
      if (std::abs(x.height() - s * std::norm(x.w0)) > 1e-9) CHECK(by_form == by_action);
    }
    MatC bad = MatC::Identity(n + 1, n + 1);
    bad(0, n) = 1.0;
    CHECK(!uq_check(bad));
  }
}

TEST_CASE("distances along the vertical geodesic") {
  Rand r(4);
  for (int i = 0; i < 500; ++i) {
    double a = std::exp(r.u(-3, 3)), b = std::exp(r.u(-3, 3));
    SiegelPoint p{cd(a, 0), VecC::Zero(1), false}, q{cd(b, 0), VecC::Zero(1), false};
    CHECK(std::abs(siegel_dist_renorm(p, q) - 0.5 * std::abs(std::log(a / b))) <= 1e-12);
    CHECK(siegel_dist(p, q) == 2.0 * siegel_dist_renorm(p, q));
  }
  for (int i = 0; i < 1000; ++i) {
    auto x = r.interior(1), y = r.interior(1);
    auto p = r.heis(1);
    CHECK(std::abs(siegel_dist(siegel_act(u_matrix(p), x), siegel_act(u_matrix(p), y)) - siegel_dist(x, y)) <=
          1e-8 * (1 + siegel_dist(x, y)));
  }
}

TEST_CASE("tangency parameter") {
  HeisPoint p{VecC::Zero(1), 2.0};
  CHECK(std::abs(tangency_s(p) - 1.0) <= 1e-15);
  Rand r(5);
  for (int i = 0; i < 1000; ++i) {
    auto q = r.heis(1 + i % 2);
    double s = tangency_s(q);
    // root of the discriminant in s, solved directly
    double z2 = q.zeta.squaredNorm(), g2 = z2 * z2 + q.v * q.v;
    double A = z2 * z2 - g2, B = -4.0 * z2, C = 4.0;
    double root = std::abs(A) < 1e-14 * (1 + g2) ? -C / B : (-B - std::sqrt(B * B - 4 * A * C)) / (2 * A);
    if (root <= 0) root = (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
    CHECK(std::abs(s - root) <= 1e-9 * (1 + root));
    CHECK(std::abs(tangency_discriminant(q, s)) <= 1e-9);
    CHECK(std::abs(s - 2.0 / std::pow(cygan_mod(heis_identity(q.zeta.size()), q), 2)) <= 1e-12 * (1 + s));
    // the line u_q o c0 touches X0 H_s: the defining form peaks at 0 along it
    int n = static_cast<int>(q.zeta.size()) + 1;
    auto f = [&](double t) {
      SiegelPoint c{cd(std::exp(-t), 0), VecC::Zero(n - 1), false};
      auto y = siegel_act(u_matrix(q), c);
      return y.height() - s * std::norm(y.w0);
    };
    double lo = -20, hi = 20;
    for (int k = 0; k < 200; ++k) {
      double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      (f(m1) < f(m2) ? lo : hi) = f(m1) < f(m2) ? m1 : m2;
    }
    CHECK(std::abs(f(0.5 * (lo + hi))) <= 1e-9);
  }
  CHECK_THROWS(tangency_s(heis_identity(1)));
}

TEST_CASE("horoball distances in the Siegel domain") {
  CHECK(std::abs(horoball_dist_complex(x0_matrix(2), 2.0).value) <= 1e-15);
  CHECK(horoball_dist_complex(x0_matrix(2), 2.0).disjoint);
  CHECK(!horoball_dist_complex(x0_matrix(2), 1.0).disjoint);
  CHECK_THROWS_AS(horoball_dist_complex(u_matrix(HeisPoint{VecC::Constant(1, 1.0), 0.0}), 1.0), domain_error);
  Rand r(6);
  for (int i = 0; i < 300; ++i) {
    int n = 2 + i % 2;
    cd c = std::polar(std::exp(r.u(-1, 2)), r.u(-M_PI, M_PI));
    MatC A = MatC::Identity(n - 1, n - 1) * std::polar(1.0, r.u(-M_PI, M_PI));
    MatC Y = swap_matrix(n, c, A);
    REQUIRE(uq_check(Y));
    double s = std::exp(r.u(-1, 3)) / std::abs(c);
    auto p = r.heis(n - 1), q = r.heis(n - 1);
    MatC X = u_matrix(p) * Y * u_matrix(q);
    // both horoballs are symmetric about c0: bisect their heights along it
    auto along = [&](double x) { return SiegelPoint{cd(x, 0), VecC::Zero(n - 1), false}; };
    double top = s / 2.0;
    double lo = 1e-12, hi = 1e12;
    for (int k = 0; k < 300; ++k) {
      double m = std::sqrt(lo * hi);
      (in_horoball(siegel_act(Y.inverse(), along(m)), s) ? lo : hi) = m;
    }
    double direct = (top >= lo ? 1.0 : -1.0) * siegel_dist_renorm(along(top), along(lo));
    CHECK(std::abs(horoball_dist_complex(X, s).value - direct) <= 1e-9);
  }
  // matrix closed form against the Cygan route, horoball at xi tangent to the line to xi'
  for (int i = 0; i < 1000; ++i) {
    int dim = 1 + i % 2;
    auto xi = r.heis(dim), xp = r.heis(dim);
    double s = tangency_s(heis_mul(heis_inv(xi), xp));
    MatC X = u_matrix(xi) * x0_matrix(dim + 1);
    CHECK(std::abs(horoball_dist_complex(X, s).value - horoball_dist_via_cygan(xi, xp, s).value) <= 1e-9);
  }
}

TEST_CASE("quaternions and the Dieudonne determinant") {
  Rand r(7);
  Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(qdist(i * j, k) == 0.0);
  CHECK(qdist(j * i, -k) == 0.0);
  CHECK(qdist(i * i, Quaternion::real(-1)) == 0.0);
  CHECK(std::abs(dieudonne(qmat_identity()) - 1.0) == 0.0);
  for (int t = 0; t < 1000; ++t) {
    auto a = r.quat(), b = r.quat();
    CHECK(std::abs((a * b).abs() - a.abs() * b.abs()) <= 1e-12 * (1 + a.abs() * b.abs()));
    CHECK(qdist((a * b).conj(), b.conj() * a.conj()) <= 1e-12 * (1 + a.abs() * b.abs()));
    CHECK(qdist(a * a.inv(), Quaternion::real(1)) <= 1e-12);
    auto M = r.qmat(), N = r.qmat();
    double dm = dieudonne(M), dn = dieudonne(N), dmn = dieudonne(M * N);
    CHECK(std::abs(dmn - dm * dn) <= 1e-9 * dm * dn);
    auto S = random_sl2h(static_cast<std::uint64_t>(t));
    CHECK(std::abs(dieudonne(S) - 1.0) <= 1e-9);
    // the c != 0 branch agrees with the a != 0 branch
    QMat2 Mc = M;
    Mc.a = Quaternion{};
    Mc.b = M.b;
    double d1 = dieudonne(Mc);
    QMat2 sw{Mc.c, Mc.d, Mc.a, Mc.b};  // row swap keeps the determinant
    CHECK(std::abs(dieudonne(sw) - d1) <= 1e-9 * d1);
  }
}

TEST_CASE("action on the quaternionic upper half space") {
  Rand r(8);
  for (int t = 0; t < 1000; ++t) {
    auto M = random_sl2h(1000 + t), N = random_sl2h(5000 + t);
    Quaternion z{r.n(), r.n(), r.n(), 0.0};
    double h = std::exp(r.u(-1, 1));
    auto [pz, ph] = poincare_extension(M, z, h);
    CHECK(std::abs(vertical(M, z, h) - ph) <= 1e-9 * (1 + ph));
    // composition
    auto [nz, nh] = poincare_extension(N, z, h);
    auto [mn, mnh] = poincare_extension(M, nz, nh);
    auto [c, ch] = poincare_extension(M * N, z, h);
    CHECK(std::abs(mnh - ch) <= 1e-8 * (1 + ch));
    CHECK(qdist(mn, c) <= 1e-8 * (1 + c.abs()));
    // boundary action and its inverse
    auto w = sl2h_act(M, z);
    if (w) {
      auto back = sl2h_act(qmat_inverse(M), w);
      REQUIRE(back);
      CHECK(qdist(*back, z) <= 1e-8 * (1 + z.abs()));
    }
    if (!M.c.is_zero()) {
      double s = std::exp(r.u(-1, 2));
      CHECK(std::abs(horoball_dist_h5(M, s).value - horoball_dist_h5_direct(M, s)) <= 1e-9);
    }
  }
  QMat2 up{Quaternion::real(1), {0.3, 1, 0, 0}, {}, Quaternion::real(1)};
  CHECK(!sl2h_act(up, std::nullopt).has_value());
  CHECK_THROWS_AS(horoball_dist_h5(up, 1.0), domain_error);
}

TEST_CASE("unit determinant identity") {
  auto id = eq35_check(qmat_identity());
  CHECK(id.plus == 0.0);
  CHECK(id.minus == 0.0);
  QMat2 up{Quaternion::real(1), {0.3, 1, -2, 0.5}, {}, Quaternion::real(1)};
  CHECK(eq35_check(up).plus <= 1e-15);
  CHECK(eq35_check(up).minus <= 1e-15);
  int plus = 0, minus = 0;
  for (int t = 0; t < 1000; ++t) {
    auto e = eq35_check(random_sl2h(splitmix64(5 + t)));
    plus += e.plus <= 1e-9;
    minus += e.minus <= 1e-9;
  }
  // only the minus sign holds uniformly
  CHECK(minus == 1000);
  CHECK(plus < 1000);
}
