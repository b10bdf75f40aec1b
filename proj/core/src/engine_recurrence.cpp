#include <algorithm>
#include <cmath>

#include "hypen/dioph.hpp"
#include "hypen/engine.hpp"

namespace hypen {

RecurrenceResult u_recurrence(double c, double cp, double cpp, double h_star, const std::vector<double>& t_seq,
                              int grid) {
  if (c < 0.0 || cp < 0.0 || cpp < 0.0 || h_star < 0.0) throw precondition_error("constants must be nonnegative");
  if (cpp < 3.0 * cp + std::log(2.0) - 1e-12) throw precondition_error("need c'' >= 3c' + log 2");
  if (grid < 2) throw precondition_error("grid needs at least two nodes");
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    if (t_seq[i] < 0.0) throw precondition_error("times must be nonnegative");
    if (i > 0 && t_seq[i] - t_seq[i - 1] < cpp - 1e-12) throw precondition_error("time gaps below c''");
  }

  const double T = (t_seq.empty() ? 0.0 : t_seq.back()) + cpp;
  // extreme values of u over all steps on a uniform grid with n nodes
  auto simulate = [&](int n) {
    const double dt = T / (n - 1);
    std::vector<double> u(n, h_star), next(n);
    auto interp = [&](double s) {
      if (s >= T) return h_star;
      double x = std::max(0.0, s) / dt;
      auto i = std::min<std::size_t>(static_cast<std::size_t>(x), n - 2);
      double f = x - i;
      return (1.0 - f) * u[i] + f * u[i + 1];
    };
    std::pair<double, double> mm{h_star, h_star};
    for (double tn : t_seq) {
      for (int i = 0; i < n; ++i) {
        double t = i * dt;
        if (t > tn) {
          next[i] = h_star;
          continue;
        }
        double w = cp * std::exp(t - tn);
        double a = std::max(0.0, t - w), b = t + w;
        double sup = std::max(interp(a), interp(b));
        auto j0 = static_cast<long>(std::ceil(a / dt)), j1 = static_cast<long>(std::floor(b / dt));
        for (long j = std::max(0L, j0); j <= std::min<long>(j1, n - 1); ++j) sup = std::max(sup, u[j]);
        for (int k = 1; k < 64; ++k) sup = std::max(sup, interp(a + (b - a) * k / 64.0));
        next[i] = c * std::exp(t - tn) + sup;
      }
      u.swap(next);
      for (double v : u) mm = {std::min(mm.first, v), std::max(mm.second, v)};
    }
    return mm;
  };

  RecurrenceResult r;
  auto fine = simulate(grid);
  auto coarse = simulate(std::max(2, (grid + 1) / 2));
  r.min_u = fine.first;
  r.max_u = fine.second;
  // discretization error estimated against the half-resolution run
  r.grid_error = std::max(std::abs(fine.first - coarse.first), std::abs(fine.second - coarse.second));
  double slack = 1e-6 + r.grid_error;
  r.sandwich_ok = r.min_u >= h_star - slack && r.max_u <= h_star + 2.0 * c + slack;

  // x_{k+1} = x_k + e^{c' x_k - (N-k) c'' + 2c'} for every N up to the sequence length
  for (std::size_t N = 0; N <= t_seq.size(); ++N) {
    double x = 0.0;
    for (std::size_t k = 0; k < N; ++k) x += std::exp(cp * x - double(N - k) * cpp + 2.0 * cp);
    r.x_N = std::max(r.x_N, x);
  }
  r.x_ok = r.x_N <= 1.0 + 1e-12;
  return r;
}

LimsupResult limsup_prescribe(double h, int digits_budget) {
  const double threshold = hall_and_lagrange_bounds().freiman_height;
  if (h < threshold) throw precondition_error("h below the Hall ray threshold");
  if (digits_budget < 50) throw precondition_error("digit budget must be at least 50");

  LimsupResult r;
  r.digits.resize(digits_budget);
  for (int i = 0; i < digits_budget; ++i) r.digits[i] = 1 + (i % 3 == 0);
  CFExpansion e;
  e.a0 = 0;
  auto sync = [&] { e.digits.assign(r.digits.begin(), r.digits.end()); };

  // peak digit a_k sits in excursion k - 1: a + [0; a_{k+1}, ...] + [0; a_{k-1}, ..., a_1] ~ 2 e^{h/2}
  const double want = 2.0 * std::exp(h / 2.0);
  for (int k = 10; k <= digits_budget; k += 10) {
    r.digits[k - 1] = 1;
    sync();
    double rest = cf_alpha(e, k - 1) - 1.0;
    double beta = cf_beta(e, k - 1);
    long long a = std::max(1LL, std::llround(want - rest - beta));
    double best = HUGE_VAL;
    long long pick = a;
    for (long long cand = std::max(1LL, a - 1); cand <= a + 1; ++cand) {
      double ph = 2.0 * std::max(0.0, std::log((cand + rest + beta) / 2.0));
      if (std::abs(ph - h) < best) best = std::abs(ph - h), pick = cand;
    }
    r.digits[k - 1] = static_cast<int>(pick);
    r.peaks.push_back(static_cast<std::size_t>(k - 1));
  }
  sync();
  auto ex = excursions(e, static_cast<std::size_t>(digits_budget));
  r.excursions = excursion_ph(ex);
  r.achieved_limsup = limsup_estimate(r.excursions);
  for (std::size_t n = 0; n < r.excursions.size(); ++n)
    if (std::find(r.peaks.begin(), r.peaks.end(), n) == r.peaks.end())
      r.off_peak_max = std::max(r.off_peak_max, r.excursions[n]);
  return r;
}

}  // namespace hypen
