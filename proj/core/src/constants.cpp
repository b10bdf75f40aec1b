#include "hypen/constants.hpp"

#include <algorithm>
#include <cmath>

namespace hypen {

namespace {
constexpr double kC0Inf = 4.056;
constexpr double kCdpInf = 1.5;
constexpr double kC2pInf = 2.5;
constexpr double kC3pInf = 2.5;
}  // namespace

Eps Eps::of(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw precondition_error("eps must be a finite positive number");
  return {v, false};
}

void ParamSet::validate() const {
  if (!eps0.inf && !(eps0.value > 0.0)) throw precondition_error("eps0 must be positive");
  if (delta0 < 0.0) throw precondition_error("delta0 must be nonnegative");
  if (kappa0 < 0.0) throw precondition_error("kappa0 must be nonnegative");
  if (ph_horoball_zero_delta && !(eps0.inf && delta0 == 0.0))
    throw precondition_error("the 1/19 branch needs eps0 = inf and delta0 = 0");
}

double asinh_acc(double x) {
  // odd extension of log(x + sqrt(x^2 + 1)) with log1p near zero
  double a = std::fabs(x);
  double r = a < 1.0 ? std::log1p(a + a * a / (1.0 + std::sqrt(1.0 + a * a))) : std::log(a + std::sqrt(a * a + 1.0));
  return std::copysign(r, x);
}

double acosh_acc(double x) {
  if (x < 1.0) x = 1.0;
  double y = x - 1.0;
  return std::log1p(y + std::sqrt(y * (2.0 + y)));
}

double c1_prime(Eps eps) {
  if (eps.inf) return 2.0 * std::log(1.0 + std::sqrt(2.0));
  return 2.0 * asinh_acc(1.0 / std::tanh(eps.value));
}

double c0(Eps eps) {
  if (eps.inf) return kC0Inf;
  double e = eps.value;
  if (e > 40.0) {
    // log form, sinh and exp overflow for large e
    double l = std::log(2.0) + e / 2.0 + std::log1p(std::exp(-e / 2.0)) + e + std::log1p(-std::exp(-2.0 * e)) -
               std::log(2.0) - std::log(e);
    return 2.0 * l;
  }
  // sinh(e)/e kept accurate for tiny e
  double sinhc = e < 1e-4 ? 1.0 + e * e / 6.0 : std::sinh(e) / e;
  return 2.0 * std::log(2.0 * (1.0 + std::exp(e / 2.0)) * sinhc);
}

double c_dprime(Eps eps) {
  if (eps.inf) return kCdpInf;
  double e = eps.value;
  if (e > 40.0) {
    // acosh(y) = log(2y) + O(y^-2) with y = 2 cosh(e/2)
    double log2y = std::log(2.0) + e / 2.0 + std::log1p(std::exp(-e));
    return (2.0 / e) * log2y;
  }
  return (2.0 / e) * acosh_acc(2.0 * std::cosh(e / 2.0));
}

double c2_prime(Eps eps) {
  if (eps.inf) return kC2pInf;
  double e = eps.value;
  double c1 = c1_prime(eps);
  // cosh e - 1 = 2 sinh^2(e/2) for small e; the quotient form avoids overflow for large e
  double s = std::sinh(e / 2.0);
  double ratio = e < 1.0 ? std::sqrt(std::cosh(e) / (2.0 * s * s)) : 1.0 / std::sqrt(1.0 - 1.0 / std::cosh(e));
  return std::max({c_dprime(eps) + 1.0, 2.0 * c1 / e, ratio * std::sinh(c1) / c1});
}

double c3_prime(Eps eps) {
  if (eps.inf) return kC3pInf;
  return 3.0 + 2.0 * c1_prime(eps) / eps.value;
}

double h_prime(Eps eps, double eta) {
  if (eta < 0.0) throw precondition_error("eta must be nonnegative");
  if (eps.inf) return 3.0 * eta + kC0Inf + c1_prime(eps);
  double e = eps.value;
  return std::max(2.0 * eta + std::max(0.0, -2.0 * std::log(e / 2.0)), eta + c1_prime(eps) + c0(eps));
}

double nu(double mu) {
  if (mu < 0.0) throw precondition_error("nu needs mu >= 0");
  double q = std::exp(-mu);
  // 1 - e^{-2mu} written with expm1 for small mu
  return 2.0 * q / (1.0 + std::sqrt(-std::expm1(-2.0 * mu)));
}

MuChain mu_chain(double mu1) {
  if (mu1 < std::log(2.0)) throw precondition_error("mu_chain needs mu1 >= log 2");
  MuChain m{};
  m.mu1 = mu1;
  m.mu2 = nu(mu1);
  m.mu3 = mu1 + m.mu2;
  m.mu4 = 2.0 * mu1 - 2.0 * m.mu2;
  m.mu5 = m.mu3 + m.mu2 / std::expm1(m.mu4);
  return m;
}

ConstantTable derived_constants(const ParamSet& p) {
  p.validate();
  ConstantTable t{};
  Eps e = p.eps0;
  double d = p.delta0;
  t.delta0 = d;
  t.c0_eps = c0(e);
  t.c1p_eps = c1_prime(e);
  t.cdp_eps = c_dprime(e);
  t.c2p_eps = c2_prime(e);
  t.c3p_eps = c3_prime(e);

  t.c1 = p.ph_horoball_zero_delta ? 1.0 / 19.0 : t.c1p_eps;
  t.c2 = t.c2p_eps;
  double c3p = t.c3p_eps;
  t.c3 = 2.0 * std::sinh(t.c1) + t.c2 * std::exp(2.0 * t.c1) * std::sinh(t.c1);
  double s1d = std::sinh(t.c1 + d);
  t.c4 = c3p * s1d + t.c2 * std::exp(-3.0 * c3p * s1d - std::log(2.0)) * std::sinh(t.c1);
  t.c5 = 2.0 * std::max(t.c2, c3p) * s1d;
  t.c6 = 3.0 * t.c4 + std::log(2.0);
  t.h0 = std::max({d + p.kappa0, t.c0_eps + p.kappa0, h_prime(e, s1d)});
  return t;
}

double c1_dprime(Eps eps, double delta, double kappa) {
  ParamSet p;
  p.eps0 = eps;
  p.delta0 = delta;
  p.kappa0 = c1_prime(Eps::infinity());
  p.ph_horoball_zero_delta = eps.inf && delta == 0.0;
  ConstantTable t = derived_constants(p);
  return std::max(2.0 * c1_prime(eps) + 2.0 * delta + kappa, t.h1_prime());
}

double c2_dprime(Eps eps) {
  double c1 = eps.inf ? 1.0 / 19.0 : c1_prime(eps);
  return c1_dprime(eps, 0.0, 0.0) + c1_prime(Eps::infinity()) + 2.0 * c1;
}

double r0_min() { return 14.0 * std::sqrt(2.0) + 3.0 * std::log(1.0 + std::sqrt(2.0)); }

HallLagrange hall_and_lagrange_bounds(double imw) {
  if (!(imw > 0.0)) throw precondition_error("imw must be positive");
  HallLagrange r{};
  r.height_bound = c1_dprime(Eps::infinity(), 0.0, 0.0) + 4.0 * c1_prime(Eps::infinity()) + 1e-5;
  r.half_height = r.height_bound / 2.0;
  r.lagrange_cap = std::exp(-r.half_height / 2.0);
  r.heis_cap_case1 = 2.0 * r.lagrange_cap / std::sqrt(imw);
  r.heis_cap_case2 = std::sqrt(2.0) * r.lagrange_cap / std::sqrt(imw);
  r.freiman_height = -2.0 * std::log(491993569.0 / (2221564096.0 + 283748.0 * std::sqrt(462.0)));
  return r;
}

std::vector<AuditRow> audit() {
  std::vector<AuditRow> rows;
  auto near = [&](std::string name, double computed, double paper, double tol, std::string note = {}) {
    rows.push_back({std::move(name), computed, paper, tol, std::fabs(computed - paper) <= tol, std::move(note)});
  };
  auto below = [&](std::string name, double computed, double bound, bool strict, std::string note) {
    bool ok = strict ? computed < bound : computed <= bound;
    rows.push_back({std::move(name), computed, bound, 0.0, ok, std::move(note)});
  };

  const Eps inf = Eps::infinity();
  const double R = r0_min();
  const Eps eR = Eps::of(R);

  ParamSet p;
  p.eps0 = inf;
  p.kappa0 = c1_prime(inf);
  p.ph_horoball_zero_delta = true;
  ConstantTable t = derived_constants(p);
  HallLagrange hl = hall_and_lagrange_bounds(1.0);
  MuChain mc = mu_chain(1.042);

  near("c1_prime_inf", c1_prime(inf), 2.0 * std::log(1.0 + std::sqrt(2.0)), 1e-12);
  near("c0_inf", c0(inf), 4.056, 0.0);
  near("h_prime_inf_0", h_prime(inf, 0.0), 5.8188, 1e-3);
  near("h0_inf", t.h0, 5.9767, 1e-3);
  near("h1_prime_inf", t.h1_prime(), 6.5032, 1e-3);
  near("c2_dprime_inf", c2_dprime(inf), 8.3712, 1e-3);
  near("r0_min", R, 22.4431, 1e-3);
  near("c1_prime_r0min", c1_prime(eR), 1.7627, 1e-3);
  near("c1_dprime_r0min", c1_dprime(eR, 0.0, 0.0), 101.4169, 1e-1);
  near("c2_dprime_r0min", c2_dprime(eR), 106.7051, 1e-1);
  near("height_bound", hl.height_bound, 13.5542, 1e-3);
  near("half_height", hl.half_height, 6.7771, 1e-3);
  near("lagrange_cap", hl.lagrange_cap, 0.0337, 5e-4);
  near("heis_cap_case1", hl.heis_cap_case1, 0.0674, 1e-3);
  near("heis_cap_case2", hl.heis_cap_case2, 0.0476, 1e-3);
  near("freiman_height", hl.freiman_height, 3.0205, 1e-3);
  below("mu5_at_1.042", mc.mu5, 1.5332, true, "upper bound");
  below("nu_half_h0", nu(t.h0 / 2.0), 1.0 / 19.0, false, "upper bound");
  below("cor5_6_guard_c2dp", c2_dprime(eR), 108.0, true, "upper bound");
  below("cor5_6_guard_2c1p", 2.0 * c1_prime(eR), 4.0, false, "upper bound");
  rows.push_back({"c4_inf", t.c4, std::nullopt, 0.0, true, "verbatim exponent, unverified against an independent source"});
  return rows;
}

}  // namespace hypen
