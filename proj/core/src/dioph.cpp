#include "hypen/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace hypen {

namespace {

constexpr std::size_t kUnfold = 64;  // digits used for periodic tails

// [d_0; d_1, ..., d_{n-1}] evaluated from the back
template <class Digit>
double eval_backward(std::size_t n, Digit d) {
  double v = static_cast<double>(d(n - 1));
  for (std::size_t k = n - 1; k-- > 0;) v = static_cast<double>(d(k)) + 1.0 / v;
  return v;
}

struct GInt {
  long long re = 0, im = 0;
};

GInt gmul(GInt a, GInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
long long gnorm(GInt a) { return a.re * a.re + a.im * a.im; }

long long gcd_gauss_norm(GInt a, GInt b) {
  // norm of the gcd; a unit has norm 1
  while (b.re != 0 || b.im != 0) {
    long long n = gnorm(b);
    GInt num = gmul(a, {b.re, -b.im});
    auto rdiv = [n](long long x) {
      long double v = static_cast<long double>(x) / static_cast<long double>(n);
      return static_cast<long long>(std::llround(v));
    };
    GInt qt{rdiv(num.re), rdiv(num.im)};
    GInt prod = gmul(qt, b);
    GInt r{a.re - prod.re, a.im - prod.im};
    a = b, b = r;
  }
  return gnorm(a);
}

}  // namespace

long long CFExpansion::digit(std::size_t k) const {
  if (k == 0) return a0;
  if (k <= digits.size()) return digits[k - 1];
  if (!period_start) throw domain_error("digit beyond a finite expansion");
  std::size_t ps = *period_start, L = digits.size() - ps;
  return digits[ps + (k - 1 - ps) % L];
}

CFExpansion cf_expand(double x, int n) {
  CFExpansion e;
  double f = std::floor(x);
  e.a0 = static_cast<long long>(f);
  double r = x - f;
  for (int k = 0; k < n; ++k) {
    if (r < 1e-14) {
      e.terminated = true;
      break;
    }
    double y = 1.0 / r;
    if (y > 1e12) {
      e.terminated = true;
      break;
    }
    double a = std::floor(y);
    e.digits.push_back(static_cast<long long>(a));
    r = y - a;
  }
  return e;
}

namespace {
std::size_t usable_digits(const CFExpansion& e) {
  return e.periodic() ? std::max(e.digits.size(), kUnfold) : e.digits.size();
}
}  // namespace

double cf_value(const CFExpansion& e) {
  std::size_t n = usable_digits(e);
  if (n == 0) return static_cast<double>(e.a0);
  return static_cast<double>(e.a0) + 1.0 / eval_backward(n, [&](std::size_t k) { return e.digit(k + 1); });
}

std::vector<std::pair<long long, long long>> convergents(const CFExpansion& e, int n) {
  std::vector<std::pair<long long, long long>> out;
  long long pm = 1, qm = 0, p = e.a0, q = 1;
  out.emplace_back(p, q);
  std::size_t avail = e.periodic() ? static_cast<std::size_t>(n) : e.digits.size();
  for (std::size_t k = 1; static_cast<int>(out.size()) < n && k <= avail; ++k) {
    long long a = e.digit(k), pn, qn;
    if (__builtin_mul_overflow(a, p, &pn) || __builtin_add_overflow(pn, pm, &pn) ||
        __builtin_mul_overflow(a, q, &qn) || __builtin_add_overflow(qn, qm, &qn))
      break;
    pm = p, qm = q, p = pn, q = qn;
    out.emplace_back(p, q);
  }
  return out;
}

CFExpansion sqrt_cf(long long n) {
  long long a0 = static_cast<long long>(std::sqrt(static_cast<long double>(n)));
  while (a0 * a0 > n) --a0;
  while ((a0 + 1) * (a0 + 1) <= n) ++a0;
  if (a0 * a0 == n) throw domain_error("sqrt of a perfect square is rational");
  CFExpansion e;
  e.a0 = a0;
  long long m = 0, d = 1, a = a0;
  do {
    m = d * a - m;
    d = (n - m * m) / d;
    a = (a0 + m) / d;
    e.digits.push_back(a);
  } while (a != 2 * a0);
  e.period_start = 0;
  return e;
}

CFExpansion parse_cf(const std::string& s, int n_digits) {
  if (s.rfind("sqrt:", 0) == 0) return sqrt_cf(std::stoll(s.substr(5)));
  if (s.rfind("cf:", 0) != 0) return cf_expand(std::stod(s), n_digits);
  CFExpansion e;
  std::stringstream ss(s.substr(3));
  std::string tok;
  bool first = true, in_period = false;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty() && tok.front() == '(') {
      if (first) throw domain_error("a0 cannot be periodic");
      in_period = true;
      e.period_start = e.digits.size();
      tok.erase(0, 1);
    }
    bool close = !tok.empty() && tok.back() == ')';
    if (close) tok.pop_back();
    long long v = std::stoll(tok);
    if (first) {
      e.a0 = v;
      first = false;
    } else {
      if (v < 1) throw domain_error("continued fraction digits must be positive");
      e.digits.push_back(v);
    }
    if (close) {
      if (!in_period) throw domain_error("unbalanced period marker");
      in_period = false;
      if (ss.peek() != EOF) throw domain_error("the period must close the expansion");
    }
  }
  if (first) throw domain_error("empty continued fraction");
  if (in_period) throw domain_error("unbalanced period marker");
  if (e.period_start && *e.period_start == e.digits.size()) throw domain_error("empty period");
  return e;
}

double cf_alpha(const CFExpansion& e, std::size_t n) {
  std::size_t last = e.periodic() ? n + kUnfold : e.digits.size();
  if (last < n + 1) throw domain_error("expansion too short for this excursion");
  return eval_backward(last - n, [&](std::size_t k) { return e.digit(n + 1 + k); });
}

double cf_beta(const CFExpansion& e, std::size_t n) {
  if (n == 0) return 0.0;
  std::size_t k0 = n > kUnfold ? n - kUnfold + 1 : 1;
  double v = static_cast<double>(e.digit(k0));
  for (std::size_t k = k0 + 1; k <= n; ++k) v = static_cast<double>(e.digit(k)) + 1.0 / v;
  return 1.0 / v;
}

double approx_constant(const CFExpansion& e) {
  if (!e.periodic()) throw domain_error("approximation constant needs a periodic expansion");
  std::size_t ps = *e.period_start, L = e.digits.size() - ps;
  auto P = [&](long long i) { return e.digits[ps + static_cast<std::size_t>(((i % long(L)) + long(L)) % long(L))]; };
  double best = HUGE_VAL;
  for (std::size_t j = 0; j < L; ++j) {
    double alpha = eval_backward(kUnfold, [&](std::size_t k) { return P(long(j + k)); });
    double beta = 1.0 / eval_backward(kUnfold, [&](std::size_t k) { return P(long(j) - 1 - long(k)); });
    best = std::min(best, 1.0 / (alpha + beta));
  }
  return best;
}

double brute_force_constant(long double x, long long q_lo, long long q_hi) {
  long double best = HUGE_VALL;
  for (long long q = std::max(1LL, q_lo); q <= q_hi; ++q) {
    long double qx = static_cast<long double>(q) * x;
    long double p = std::floor(qx);
    long double v = std::min(qx - p, p + 1 - qx) * static_cast<long double>(q);
    best = std::min(best, v);
  }
  return static_cast<double>(best);
}

double complex_approx_constant(std::complex<double> x, int qmax) {
  if (qmax < 1) throw domain_error("qmax must be positive");
  double best = HUGE_VAL;
  long long Q2 = static_cast<long long>(qmax) * qmax;
  // one q per class of associates: re > 0, im >= 0
  for (long long a = 1; a <= qmax; ++a)
    for (long long b = 0; a * a + b * b <= Q2; ++b) {
      std::complex<long double> q(a, b), xl(x.real(), x.imag());
      std::complex<long double> w = q * xl;
      long double r0 = std::round(w.real()), i0 = std::round(w.imag());
      long double qa = std::abs(q);
      for (int dr = -1; dr <= 1; ++dr)
        for (int di = -1; di <= 1; ++di) {
          long double err = std::abs(w - std::complex<long double>(r0 + dr, i0 + di));
          if (err < 1e-13L) throw domain_error("x is Gaussian rational at this resolution");
          best = std::min(best, static_cast<double>(qa * err));
        }
    }
  return best;
}

ObstacleFamily FordFamily::obstacles() const {
  ObstacleFamily f;
  f.bodies = bodies;
  f.delta0 = 0.0;
  f.designated = 0;
  std::ostringstream os;
  os << (ring == Ring::Rational ? "rational" : "gaussian") << " Ford family with |q| <= " << Q << ", "
     << bodies.size() << " bodies in the window";
  f.truncation = os.str();
  return f;
}

FordFamily ford_family(int Q, Ring ring, const FordWindow& window) {
  if (Q < 1) throw domain_error("Q must be positive");
  FordFamily F;
  F.Q = Q;
  F.ring = ring;
  F.bodies.push_back(Horoball::at_infinity(1.0));
  if (ring == Ring::Rational) {
    for (long long q = 1; q <= Q; ++q)
      for (long long p = static_cast<long long>(std::ceil(window.lo * q));
           p <= static_cast<long long>(std::floor(window.hi * q)); ++p) {
        if (std::gcd(std::llabs(p), q) != 1) continue;
        F.bodies.push_back(Horoball::at(cplx(double(p) / double(q)), 1.0 / double(q * q)));
        F.fractions.emplace_back(cplx(double(p)), cplx(double(q)));
      }
  } else {
    auto disks = window.disks;
    if (disks.empty()) disks.push_back({cplx(0.5, 0.5), 1.0});
    std::set<std::array<long long, 4>> seen;
    long long Q2 = static_cast<long long>(Q) * Q;
    for (long long a = 1; a <= Q; ++a)
      for (long long b = 0; a * a + b * b <= Q2; ++b) {
        GInt q{a, b};
        cplx qc{double(a), double(b)};
        double qa = std::abs(qc);
        for (const auto& [c, r] : disks) {
          cplx m = qc * c;
          double R = r * qa;
          for (long long pr = static_cast<long long>(std::floor(m.real() - R));
               pr <= static_cast<long long>(std::ceil(m.real() + R)); ++pr)
            for (long long pi = static_cast<long long>(std::floor(m.imag() - R));
                 pi <= static_cast<long long>(std::ceil(m.imag() + R)); ++pi) {
              cplx pc{double(pr), double(pi)};
              if (std::abs(pc - m) > R) continue;
              if (gcd_gauss_norm({pr, pi}, q) != 1) continue;
              if (!seen.insert({pr, pi, a, b}).second) continue;
              F.bodies.push_back(Horoball::at(pc / qc, 1.0 / gnorm(q)));
              F.fractions.emplace_back(pc, qc);
            }
        }
      }
  }
  // |c1 - c2|^2 / (D1 D2) = |p1 q2 - p2 q1|^2, checked in integers
  long long gap = std::numeric_limits<long long>::max();
  auto gi = [](cplx z) { return GInt{std::llround(z.real()), std::llround(z.imag())}; };
  for (const auto& [p, q] : F.fractions) gap = std::min(gap, gnorm(gi(q)) - 1);
  for (auto [i, j] : candidate_pairs(F.bodies)) {
    if (i == 0) continue;
    GInt p1 = gi(F.fractions[i - 1].first), q1 = gi(F.fractions[i - 1].second);
    GInt p2 = gi(F.fractions[j - 1].first), q2 = gi(F.fractions[j - 1].second);
    GInt a = gmul(p1, q2), b = gmul(p2, q1);
    gap = std::min(gap, gnorm({a.re - b.re, a.im - b.im}) - 1);
  }
  if (gap < 0) throw family_error("Ford horoballs overlap: check the enumeration");
  F.min_gap = F.fractions.empty() ? 0.0 : static_cast<double>(gap);
  return F;
}

std::vector<Excursion> excursions(const CFExpansion& e, std::size_t horizon) {
  std::vector<Excursion> out;
  for (std::size_t n = 0; n < horizon; ++n) {
    if (!e.periodic() && n + 1 > e.digits.size()) break;
    Excursion x;
    x.n = n;
    x.alpha = cf_alpha(e, n);
    x.beta = cf_beta(e, n);
    x.magnitude = 0.5 * (x.alpha + x.beta);
    x.ph = 2.0 * std::max(0.0, std::log(x.magnitude));
    out.push_back(x);
  }
  return out;
}

std::vector<Excursion> excursions(double x, std::size_t horizon) {
  return excursions(cf_expand(x, static_cast<int>(horizon) + 1), horizon);
}

std::vector<double> excursion_ph(const std::vector<Excursion>& ex) {
  std::vector<double> v;
  for (const auto& x : ex) v.push_back(x.ph);
  return v;
}

double limsup_estimate(const std::vector<double>& values) {
  if (values.empty()) throw domain_error("empty sequence");
  return *std::max_element(values.begin() + static_cast<long>(values.size() / 2), values.end());
}

double spectrum_map(double c) {
  if (!(c > 0.0)) throw domain_error("spectrum map needs c > 0");
  return -2.0 * std::log(c);
}

double spectrum_inverse(double h) { return std::exp(-h / 2.0); }

}  // namespace hypen
