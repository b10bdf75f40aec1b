#include "hypen/heis.hpp"

#include <cmath>
#include <random>

#include "hypen/models.hpp"

namespace hypen {

namespace {

using cd = std::complex<double>;

double zeta_sq(const HeisPoint& p) { return p.zeta.squaredNorm(); }

double gauge(const HeisPoint& p) {
  double z2 = zeta_sq(p);
  return std::sqrt(z2 * z2 + p.v * p.v);
}

void same_dim(const HeisPoint& p, const HeisPoint& q) {
  if (p.zeta.size() != q.zeta.size()) throw domain_error("Heisenberg points of different dimensions");
}

VecC lift(const SiegelPoint& p) {
  int n = static_cast<int>(p.w.size()) + 1;
  VecC Z = VecC::Zero(n + 1);
  if (p.inf) {
    Z(0) = 1.0;
    return Z;
  }
  Z(0) = p.w0;
  Z.segment(1, n - 1) = p.w;
  Z(n) = 1.0;
  return Z;
}

Eigen::Matrix2cd quat_block(const Quaternion& q) {
  Eigen::Matrix2cd m;
  cd al(q.w, q.x), be(q.y, q.z);
  m << al, be, -std::conj(be), std::conj(al);
  return m;
}

Quaternion block_quat(const Eigen::Matrix2cd& m) { return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()}; }

}  // namespace

HeisPoint heis_identity(int dim) { return {VecC::Zero(dim), 0.0}; }

HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q) {
  same_dim(p, q);
  return {p.zeta + q.zeta, p.v + q.v - 2.0 * p.zeta.dot(q.zeta).imag()};
}

HeisPoint heis_inv(const HeisPoint& p) { return {-p.zeta, -p.v}; }

double cygan(const HeisPoint& p, const HeisPoint& q) { return std::sqrt(gauge(heis_mul(heis_inv(p), q))); }

double cygan_mod(const HeisPoint& p, const HeisPoint& q) {
  HeisPoint r = heis_mul(heis_inv(p), q);
  return std::sqrt(gauge(r) + zeta_sq(r));
}

SiegelPoint to_boundary(const HeisPoint& p) { return {cd(0.5 * zeta_sq(p), -0.5 * p.v), p.zeta, false}; }

HeisPoint from_boundary(const SiegelPoint& x) {
  if (x.inf) throw domain_error("the point at infinity is not in the Heisenberg group");
  return {x.w, -2.0 * x.w0.imag()};
}

MatC q_form(int n) {
  MatC Q = MatC::Identity(n + 1, n + 1);
  Q(0, 0) = Q(n, n) = 0.0;
  Q(0, n) = Q(n, 0) = -1.0;
  return Q;
}

MatC u_matrix(const HeisPoint& p) {
  int n = static_cast<int>(p.zeta.size()) + 1;
  MatC U = MatC::Identity(n + 1, n + 1);
  U.block(0, 1, 1, n - 1) = p.zeta.adjoint();
  U(0, n) = cd(0.5 * zeta_sq(p), -0.5 * p.v);
  U.block(1, n, n - 1, 1) = p.zeta;
  return U;
}

MatC x0_matrix(int n) {
  MatC X = MatC::Identity(n + 1, n + 1);
  X(0, 0) = X(n, n) = 0.0;
  X(0, n) = X(n, 0) = 1.0;
  return X;
}

double uq_residual(const MatC& X) {
  int n = static_cast<int>(X.rows()) - 1;
  MatC Q = q_form(n);
  MatC R = X * (Q.inverse() * X.adjoint() * Q) - MatC::Identity(n + 1, n + 1);
  return R.cwiseAbs().maxCoeff();
}

bool uq_check(const MatC& X, double tol) { return X.rows() == X.cols() && X.rows() >= 2 && uq_residual(X) <= tol; }

SiegelPoint siegel_act(const MatC& X, const SiegelPoint& p) {
  VecC Y = X * lift(p);
  int n = static_cast<int>(Y.size()) - 1;
  SiegelPoint out;
  if (std::abs(Y(n)) <= 1e-300 * (1.0 + Y.norm())) {
    out.inf = true;
    out.w = VecC::Zero(n - 1);
    return out;
  }
  out.w0 = Y(0) / Y(n);
  out.w = Y.segment(1, n - 1) / Y(n);
  return out;
}

bool in_horoball(const SiegelPoint& p, double s) { return !p.inf && p.height() >= s; }

double siegel_dist(const SiegelPoint& p, const SiegelPoint& q) {
  if (!p.interior() || !q.interior()) throw domain_error("distance needs interior points");
  int n = static_cast<int>(p.w.size()) + 1;
  MatC Q = q_form(n);
  VecC Z = lift(p), W = lift(q);
  double zz = Z.dot(Q * Z).real(), ww = W.dot(Q * W).real();
  double sg = zz < 0.0 ? -1.0 : 1.0;
  Z /= std::sqrt(std::abs(zz));
  W /= std::sqrt(std::abs(ww));
  cd zw = W.dot(Q * Z);
  if (std::abs(zw) == 0.0) throw domain_error("degenerate lifts");
  // align phases so <Z, W> = sg cosh(d/2); then <Z - W, Z - W> = -4 sg sinh^2(d/4)
  W *= sg * zw / std::abs(zw);
  VecC D = Z - W;
  double dd = -sg * D.dot(Q * D).real() / 4.0;
  return 4.0 * std::asinh(std::sqrt(std::max(0.0, dd)));
}

double siegel_dist_renorm(const SiegelPoint& p, const SiegelPoint& q) { return 0.5 * siegel_dist(p, q); }

double tangency_s(const HeisPoint& p) {
  double z2 = zeta_sq(p);
  if (z2 == 0.0 && p.v == 0.0) throw domain_error("tangency at the origin is degenerate");
  return 2.0 / (gauge(p) + z2);
}

double tangency_discriminant(const HeisPoint& p, double s) {
  double z2 = zeta_sq(p);
  double A = s, B = s * z2 - 2.0, C = 0.25 * s * (z2 * z2 + p.v * p.v);
  return B * B - 4.0 * A * C;
}

HoroDist horoball_dist_complex(const MatC& X, double s) {
  if (!(s > 0.0)) throw domain_error("horoball parameter must be positive");
  cd c = X(X.rows() - 1, 0);
  if (std::abs(c) == 0.0) throw domain_error("matrix fixes infinity");
  double v = std::log(std::abs(c)) + std::log(s / 2.0);
  return {v, v >= 0.0};
}

HoroDist horoball_dist_via_cygan(const HeisPoint& xi, const HeisPoint& xi_p, double s0) {
  if (!(s0 > 0.0)) throw domain_error("horoball parameter must be positive");
  double d = cygan_mod(xi, xi_p);
  if (d == 0.0) throw domain_error("coincident boundary points");
  double v = -std::log(d) + 0.5 * std::log(s0 / 2.0);
  return {v, v >= 0.0};
}

double Quaternion::abs() const { return std::sqrt(norm()); }

Quaternion Quaternion::inv() const {
  double n = norm();
  if (n == 0.0) throw domain_error("inverse of the zero quaternion");
  return (1.0 / n) * conj();
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
Quaternion operator-(const Quaternion& a, const Quaternion& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
Quaternion operator*(double r, const Quaternion& a) { return {r * a.w, r * a.x, r * a.y, r * a.z}; }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

QMat2 operator*(const QMat2& m, const QMat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

QMat2 qmat_identity() { return {Quaternion::real(1.0), {}, {}, Quaternion::real(1.0)}; }

QMat2 qmat_inverse(const QMat2& m) {
  Eigen::Matrix4cd B;
  B.block<2, 2>(0, 0) = quat_block(m.a);
  B.block<2, 2>(0, 2) = quat_block(m.b);
  B.block<2, 2>(2, 0) = quat_block(m.c);
  B.block<2, 2>(2, 2) = quat_block(m.d);
  Eigen::FullPivLU<Eigen::Matrix4cd> lu(B);
  if (!lu.isInvertible()) throw domain_error("singular quaternionic matrix");
  Eigen::Matrix4cd I = lu.inverse();
  return {block_quat(I.block<2, 2>(0, 0)), block_quat(I.block<2, 2>(0, 2)), block_quat(I.block<2, 2>(2, 0)),
          block_quat(I.block<2, 2>(2, 2))};
}

double dieudonne(const QMat2& m) {
  if (m.a.is_zero() && m.c.is_zero()) throw domain_error("first column is zero");
  if (m.a.norm() >= m.c.norm()) return (m.a * m.d - m.a * m.c * m.a.inv() * m.b).abs();
  return (m.c * m.b - m.c * m.a * m.c.inv() * m.d).abs();
}

QMat2 random_sl2h(std::uint64_t seed, int factors) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> N;
  auto rq = [&] { return Quaternion{N(g), N(g), N(g), N(g)}; };
  QMat2 M = qmat_identity();
  for (int j = 0; j < factors; ++j) {
    QMat2 E = qmat_identity();
    switch (g() % 3) {
      case 0:
        E.b = rq();
        break;
      case 1:
        E.c = rq();
        break;
      default: {
        E.a = rq();
        Quaternion d = rq();
        E.d = (1.0 / (d.abs() * E.a.abs())) * d;
      }
    }
    M = M * E;
  }
  return M;
}

std::optional<Quaternion> sl2h_act(const QMat2& m, const std::optional<Quaternion>& z) {
  if (!z) {
    if (m.c.is_zero()) return std::nullopt;
    return m.a * m.c.inv();
  }
  Quaternion den = m.c * *z + m.d;
  if (den.is_zero()) return std::nullopt;
  return (m.a * *z + m.b) * den.inv();
}

double vertical(const QMat2& m, const Quaternion& z, double t) {
  return t / ((m.c * z + m.d).norm() + m.c.norm() * t * t);
}

std::pair<Quaternion, double> poincare_extension(const QMat2& m, const Quaternion& z, double t) {
  if (m.c.is_zero()) {
    // Euclidean similitude z -> a z d^{-1} + b d^{-1}
    Quaternion di = m.d.inv();
    return {m.a * z * di + m.b * di, m.a.abs() * di.abs() * t};
  }
  Quaternion ci = m.c.inv();
  Quaternion C = -(ci * m.d);
  double r2 = 1.0 / m.c.norm();
  Quaternion u = z - C;
  double q2 = u.norm() + t * t;
  Quaternion sz = C + (r2 / q2) * u;
  double st = r2 * t / q2;
  // phi(u) = (b - a c^{-1} d)(ubar cbar + dbar) + a c^{-1}, which keeps heights
  Quaternion phi = (m.b - m.a * ci * m.d) * (sz.conj() * m.c.conj() + m.d.conj()) + m.a * ci;
  return {phi, st};
}

HoroDist horoball_dist_h5(const QMat2& m, double s) {
  if (!(s > 0.0)) throw domain_error("horoball parameter must be positive");
  if (m.c.is_zero()) throw domain_error("matrix fixes infinity");
  double v = std::log(m.c.norm()) + 2.0 * std::log(s);
  return {v, v >= 0.0};
}

double horoball_dist_h5_direct(const QMat2& m, double s) {
  if (m.c.is_zero()) throw domain_error("matrix fixes infinity");
  Quaternion foot = -(m.c.inv() * m.d);
  auto [img, h] = poincare_extension(m, foot, s);
  (void)img;
  return std::log(s) - std::log(h);
}

Eq35 eq35_check(const QMat2& m) {
  double base = (m.a * m.d).norm() + (m.b * m.c).norm();
  double tr = (m.a * m.c.conj() * m.d * m.b.conj()).trace();
  return {std::abs(base + tr - 1.0), std::abs(base - tr - 1.0)};
}

}  // namespace hypen
