#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypen/engine.hpp"

namespace hypen {

// [a0; digits...], the digits from period_start on repeat forever when set.
struct CFExpansion {
  long long a0 = 0;
  std::vector<long long> digits;
  std::optional<std::size_t> period_start;
  bool terminated = false;  // the expansion ended: the input was rational at machine scale

  bool periodic() const { return period_start.has_value(); }
  // k-th digit after a0 (k >= 1), unfolding the period
  long long digit(std::size_t k) const;
};

CFExpansion cf_expand(double x, int n);
double cf_value(const CFExpansion& e);
std::vector<std::pair<long long, long long>> convergents(const CFExpansion& e, int n);

// Exact periodic expansion of sqrt(n) for a non-square n.
CFExpansion sqrt_cf(long long n);
// "cf:a0,a1,...,(p1,p2,...)", "sqrt:n" or a decimal literal.
CFExpansion parse_cf(const std::string& s, int n_digits = 60);

// Tail quantities of the n-th excursion: alpha_{n+1} = [a_{n+1}; a_{n+2}, ...]
// and beta_{n+1} = [0; a_n, ..., a_1].
double cf_alpha(const CFExpansion& e, std::size_t n);
double cf_beta(const CFExpansion& e, std::size_t n);

// min over one period of 1/(alpha + beta) with exact periodic limits
double approx_constant(const CFExpansion& e);
// min of q^2 |x - p/q| over q in [q_lo, q_hi], p the two nearest integers
double brute_force_constant(long double x, long long q_lo, long long q_hi);

double complex_approx_constant(std::complex<double> x, int qmax);

enum class Ring { Rational, Gaussian };

struct FordWindow {
  double lo = -2.0, hi = 3.0;                             // rational centers
  std::vector<std::pair<std::complex<double>, double>> disks;  // Gaussian centers, default unit cell
};

struct FordFamily {
  int Q = 1;
  Ring ring = Ring::Rational;
  std::vector<ConvexBody> bodies;                 // bodies[0] = Horoball(inf, 1)
  std::vector<std::pair<cplx, cplx>> fractions;   // (p, q) for bodies[1..]
  double min_gap = 0.0;  // min over pairs of |c1 - c2|^2 / (D1 D2) - 1; 0 for tangent pairs
  ObstacleFamily obstacles() const;
};
FordFamily ford_family(int Q, Ring ring, const FordWindow& window = {});

struct Excursion {
  std::size_t n = 0;
  double alpha = 0.0, beta = 0.0;
  double magnitude = 0.0;  // (alpha + beta) / 2
  double ph = 0.0;         // 2 max(0, log magnitude)
};
std::vector<Excursion> excursions(const CFExpansion& e, std::size_t horizon);
std::vector<Excursion> excursions(double x, std::size_t horizon);
std::vector<double> excursion_ph(const std::vector<Excursion>& ex);
// max over the tail half
double limsup_estimate(const std::vector<double>& values);

double spectrum_map(double c);
double spectrum_inverse(double h);

}  // namespace hypen
