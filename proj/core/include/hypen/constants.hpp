#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypen {

struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Convexity parameter. `inf` marks the horoball case.
struct Eps {
  double value = 0.0;
  bool inf = false;

  static Eps infinity() { return {0.0, true}; }
  static Eps of(double v);
};

struct ParamSet {
  Eps eps0 = Eps::infinity();
  double delta0 = 0.0;
  double kappa0 = 0.0;
  // c1 = 1/19 branch: only for eps0 = inf, delta0 = 0 and f0 = ph on the horoball
  bool ph_horoball_zero_delta = false;

  void validate() const;
};

struct ConstantTable {
  double c1, c2, c3, c4, c5, c6;
  double h0;
  double c0_eps, c1p_eps, cdp_eps, c2p_eps, c3p_eps;
  double delta0;

  // h1' for a given h0' (normally h0' = h0)
  double h1_prime(double h0p) const { return h0p + 2.0 * c5; }
  double h1_prime() const { return h1_prime(h0); }
  // two-sided bound of the line construction
  double h1_dprime(double h0p) const { return h1_prime(h0p) + c3p_eps * (delta0 + c1) + c1p_eps; }
  double h1_dprime() const { return h1_dprime(h0); }
};

double asinh_acc(double x);
double acosh_acc(double x);

double c1_prime(Eps eps);
double c0(Eps eps);
double c_dprime(Eps eps);
double c2_prime(Eps eps);
double c3_prime(Eps eps);
double h_prime(Eps eps, double eta);

double nu(double mu);

struct MuChain {
  double mu1, mu2, mu3, mu4, mu5;
};
MuChain mu_chain(double mu1);

ConstantTable derived_constants(const ParamSet& p);

double c1_dprime(Eps eps, double delta, double kappa);
double c2_dprime(Eps eps);
double r0_min();

struct HallLagrange {
  double height_bound;
  double half_height;
  double lagrange_cap;
  double heis_cap_case1;
  double heis_cap_case2;
  double freiman_height;
};
HallLagrange hall_and_lagrange_bounds(double imw = 1.0);

struct AuditRow {
  std::string name;
  double computed;
  std::optional<double> paper;  // empty for informational rows
  double tol;
  bool pass;
  std::string note;
};
std::vector<AuditRow> audit();

}  // namespace hypen
