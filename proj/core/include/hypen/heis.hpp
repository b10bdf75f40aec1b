#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>

namespace hypen {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

// Point (w0, w) of the Siegel domain 2 Re w0 - |w|^2 > 0, or of its boundary.
struct SiegelPoint {
  std::complex<double> w0;
  VecC w;
  bool inf = false;

  double height() const { return 2.0 * w0.real() - w.squaredNorm(); }
  bool interior() const { return !inf && height() > 1e-12; }
  bool boundary() const { return inf || std::abs(height()) <= 1e-12; }
};

struct HeisPoint {
  VecC zeta;
  double v = 0.0;
};

HeisPoint heis_identity(int dim);
HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint heis_inv(const HeisPoint& p);

// left-invariant distances, (|z|^4 + v^2)^{1/4} and ((|z|^4 + v^2)^{1/2} + |z|^2)^{1/2} at the origin
double cygan(const HeisPoint& p, const HeisPoint& q);
double cygan_mod(const HeisPoint& p, const HeisPoint& q);

// u_{zeta,v}(0, 0) and back
SiegelPoint to_boundary(const HeisPoint& p);
HeisPoint from_boundary(const SiegelPoint& x);

MatC q_form(int n);
MatC u_matrix(const HeisPoint& p);
MatC x0_matrix(int n);  // antidiag(1, I, 1)
// max entry of X Q^{-1} X^* Q - I
double uq_residual(const MatC& X);
bool uq_check(const MatC& X, double tol = 1e-9);

SiegelPoint siegel_act(const MatC& X, const SiegelPoint& p);
bool in_horoball(const SiegelPoint& p, double s);
// Riemannian distance; d' = d / 2 is the renormalized one
double siegel_dist(const SiegelPoint& p, const SiegelPoint& q);
double siegel_dist_renorm(const SiegelPoint& p, const SiegelPoint& q);

// s with X0 H_s tangent to u_p o c0
double tangency_s(const HeisPoint& p);
// discriminant of s x^2 + (s|z|^2 - 2) x + (s/4)(|z|^4 + v^2) in x = e^{-t}
double tangency_discriminant(const HeisPoint& p, double s);

struct HoroDist {
  double value = 0.0;
  bool disjoint = true;  // false when the signed value is negative
};
// d'(H_s, X H_s) = log|c| + log(s/2)
HoroDist horoball_dist_complex(const MatC& X, double s);
// d'(H_{s0}, horoball at xi tangent to the line from infinity to xi')
HoroDist horoball_dist_via_cygan(const HeisPoint& xi, const HeisPoint& xi_p, double s0);

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  static Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }
  double norm() const { return w * w + x * x + y * y + z * z; }  // reduced norm
  double abs() const;
  double trace() const { return 2.0 * w; }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion inv() const;
  bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }
};
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a);
Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double r, const Quaternion& a);

struct QMat2 {
  Quaternion a, b, c, d;
};
QMat2 operator*(const QMat2& m, const QMat2& n);
QMat2 qmat_identity();
QMat2 qmat_inverse(const QMat2& m);

double dieudonne(const QMat2& m);

// product of `factors` random elementary matrices (translations, their
// transposes and diagonals with |a||d| = 1), so the determinant is 1
QMat2 random_sl2h(std::uint64_t seed, int factors = 4);

// action on H u {inf}; nullopt is the point at infinity
std::optional<Quaternion> sl2h_act(const QMat2& m, const std::optional<Quaternion>& z);
// vertical coordinate of m(z, t): t / (|cz + d|^2 + |c|^2 t^2)
double vertical(const QMat2& m, const Quaternion& z, double t);
// Poincare extension through the isometric-sphere reflection and a Euclidean isometry
std::pair<Quaternion, double> poincare_extension(const QMat2& m, const Quaternion& z, double t);
// d(H_s, m H_s) = 2 log|c| + 2 log s
HoroDist horoball_dist_h5(const QMat2& m, double s);
// same quantity measured along the image of the vertical line through -c^{-1} d
double horoball_dist_h5_direct(const QMat2& m, double s);

struct Eq35 {
  double plus = 0.0, minus = 0.0;  // |N(ad) + N(bc) +- Tr(a cbar d bbar) - 1|
};
Eq35 eq35_check(const QMat2& m);

}  // namespace hypen
