#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hypen/penetration.hpp"

namespace hypen {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Counter-based generator so a trial's draws only depend on (seed, trial index).
class Gen {
 public:
  explicit Gen(std::uint64_t s) : state_(s) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }
  double uni01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uni(double a, double b) { return a + (b - a) * uni01(); }
  double logu(double a, double b) { return std::exp(uni(std::log(a), std::log(b))); }
  bool coin(double p = 0.5) { return uni01() < p; }

  bool h3 = true;

  cplx base() { return {uni(-10.0, 10.0), h3 ? uni(-10.0, 10.0) : 0.0}; }
  double height() { return std::exp(uni(-3.0, 3.0)); }
  Point point() { return {base(), height()}; }
  Boundary bnd() {
    if (coin(0.08)) return Boundary::infinity();
    return Boundary::at(base());
  }
  double eps() { return logu(0.05, 5.0); }

  // Endpoint of a ray leaving p in a uniformly random direction.
  Boundary direction(const Point& p) {
    double ux, uy = 0.0, uz;
    if (h3) {
      uz = uni(-1.0, 1.0);
      double phi = uni(0.0, 2.0 * kPi);
      double r = std::sqrt(std::max(0.0, 1.0 - uz * uz));
      ux = r * std::cos(phi);
      uy = r * std::sin(phi);
    } else {
      double phi = uni(0.0, 2.0 * kPi);
      ux = std::cos(phi);
      uz = std::sin(phi);
    }
    if (uz > 1.0 - 1e-12) return Boundary::infinity();
    cplx w = cplx(ux, uy) / (1.0 - uz);
    return Boundary::at(p.z + p.h * w);
  }
  Point around(const Point& p, double r) {
    if (r <= 0.0) return p;
    return ray_through(p, direction(p)).at(r);
  }

  Moebius mob() {
    auto e = [&] { return cplx(uni(-2.0, 2.0), h3 ? uni(-2.0, 2.0) : 0.0); };
    for (;;) {
      cplx a = e(), b = e(), c = e(), d = e();
      cplx det = a * d - b * c;
      if (std::abs(det) < 0.05) continue;
      if (!h3 && det.real() < 0.0) a = -a, c = -c;
      return Moebius::make(a, b, c, d);
    }
  }

  Horoball horoball() {
    if (coin(0.25)) return Horoball::at_infinity(height());
    return Horoball{Boundary::at(base()), height()};
  }
  Geodesic line() {
    for (;;) {
      Boundary a = bnd(), b = bnd();
      if (!same(a, b)) return Geodesic::between(a, b);
    }
  }

 private:
  std::uint64_t state_;
};

// Random point of C, at most `depth` deep for horoballs.
Point inside(Gen& G, const ConvexBody& C, double depth = 3.0) {
  if (auto* H = std::get_if<Horoball>(&C)) {
    Point p = G.point();
    Geodesic r = ray_through(p, H->center);
    return r.at(-horo_height(*H, p) + G.uni(0.0, depth));
  }
  if (auto* B = std::get_if<Ball>(&C)) return G.around(B->center, B->r * G.uni01());
  const Tube& T = std::get<Tube>(C);
  return G.around(T.core.at(G.uni(-3.0, 3.0)), T.r * G.uni01());
}

// Source outside C and outside its boundary at infinity.
std::optional<Source> source_outside(Gen& G, const ConvexBody& C, bool boundary_only = false) {
  if (boundary_only || G.coin()) {
    Boundary b = G.bnd();
    if (at_infinity_of(C, b)) return std::nullopt;
    return Source{b};
  }
  Point p = G.point();
  if (contains(C, p)) return std::nullopt;
  return Source{p};
}

Boundary through(const Source& src, const Point& p) {
  if (auto* b = std::get_if<Boundary>(&src)) return forward_endpoint(*b, p);
  return forward_endpoint(std::get<Point>(src), p);
}

// Ray from the source through p, as geodesic plus start parameter.
struct Ray {
  Geodesic g;
  std::optional<double> tmin;
};
Ray ray_via(const Source& src, const Point& p) {
  Geodesic g = ray_from(src, through(src, p));
  return {g, ray_start(g, src)};
}
Ray ray_to(const Source& src, const Boundary& end) {
  Geodesic g = ray_from(src, end);
  return {g, ray_start(g, src)};
}

double dist_to_ray(const Point& x, const Ray& r) { return dist_to_piece(x, r.g, r.tmin, std::nullopt); }

// Penetrating ray with a long chord in C.
std::optional<Ray> deep_ray(Gen& G, const Source& src, const ConvexBody& C) {
  if (std::holds_alternative<Horoball>(C)) return ray_via(src, inside(G, C, G.uni(1.0, 9.0)));
  if (auto* B = std::get_if<Ball>(&C)) return ray_via(src, G.around(B->center, B->r * G.uni(0.0, 0.3)));
  const Tube& T = std::get<Tube>(C);
  // endpoint close to an endpoint of the core, seen in the core frame
  double R = G.logu(1.0, 1e7);
  if (G.coin()) R = 1.0 / R;
  double th = G.uni(0.0, 2.0 * kPi);
  cplx w = G.h3 ? std::polar(R, th) : cplx(G.coin() ? R : -R, 0.0);
  Boundary end = T.core.frame()(Boundary::at(w));
  if (auto* b = std::get_if<Boundary>(&src); b && same(*b, end)) return std::nullopt;
  return ray_to(src, end);
}

Point at_ext(const Geodesic& g, const ExtReal& t) { return g.at(t.v); }

// Keeps sampled configurations inside the range where binary64 resolves the
// geometry. Every statement is isometry invariant, so discarding badly scaled
// embeddings does not restrict the configurations up to isometry.
bool sane(const Point& p) { return std::isfinite(p.h) && p.h > 1e-5 && p.h < 1e5 && std::abs(p.z) < 1e5; }

// Random body N that is the eps-neighbourhood of a convex set.
ConvexBody eps_neighbourhood(Gen& G, double e, double rmin = 0.0) {
  double u = G.uni01();
  if (u < 1.0 / 3.0) return G.horoball();
  if (u < 2.0 / 3.0) return Ball{G.point(), std::max(e, rmin) + G.uni(0.0, 3.0)};
  return Tube{G.line(), e};
}

struct Sample {
  double lhs, bound;
};
using Samples = std::vector<Sample>;
using TrialFn = std::function<std::optional<Samples>(Gen&)>;

const Sample kFail{1.0, 0.0};

LemmaReport run(const std::string& id, const TrialFn& fn, int trials, std::uint64_t seed) {
  LemmaReport rep;
  rep.lemma = id;
  rep.trials = trials;
  rep.seed = seed;
  rep.worst_margin = -HUGE_VAL;
  rep.max_lhs = -HUGE_VAL;
  for (int k = 0; k < trials; ++k) {
    Gen G(splitmix64(seed + static_cast<std::uint64_t>(k)));
    G.h3 = (k % 2) == 1;
    std::optional<Samples> out;
    for (int att = 0;; ++att) {
      if (att >= 1000000) throw domain_error(id + ": hypotheses could not be met after 1e6 draws");
      try {
        out = fn(G);
      } catch (const domain_error&) {
        out.reset();
      }
      if (out) break;
      ++rep.rejections;
    }
    bool bad = false;
    for (const Sample& s : *out) {
      double m = s.lhs - s.bound;
      if (!(s.lhs <= s.bound + 1e-9 * (1.0 + std::fabs(s.bound)))) bad = true;
      if (std::isnan(m)) m = HUGE_VAL;
      rep.worst_margin = std::max(rep.worst_margin, m);
      rep.max_lhs = std::max(rep.max_lhs, s.lhs);
    }
    if (bad) ++rep.violations;
  }
  return rep;
}

// Absolute difference of two extended values, infinite when exactly one is infinite.
double ext_gap(const ExtReal& a, const ExtReal& b) {
  if (!a.is_finite() || !b.is_finite()) return (a.inf == b.inf) ? 0.0 : HUGE_VAL;
  return std::fabs(a.v - b.v);
}

// ---- Chapter 2 lemmas ----

std::optional<Samples> l2_1(Gen& G) {
  Point x = G.point(), y = G.point();
  double dxy = dist(x, y);
  Point xt;
  double t, lhs;
  if (G.coin()) {
    Boundary z = G.bnd();
    t = G.uni(0.0, 15.0);
    xt = ray_through(x, z).at(t);
    lhs = dist_to_piece(xt, ray_through(y, z), 0.0, std::nullopt);
  } else {
    Point z = G.point();
    double dxz = dist(x, z), dyz = dist(y, z);
    if (dxz < 1e-9 || dyz < 1e-9) return std::nullopt;
    t = G.uni(0.0, dxz);
    xt = geodesic_through(x, z).at(t);
    lhs = dist_to_piece(xt, geodesic_through(y, z), 0.0, dyz);
  }
  double b1 = std::exp(-t) * std::sinh(dxy);
  double b2 = 0.5 * std::exp(-t + dxy);
  return Samples{{lhs, b1}, {b1, b2}};
}

std::optional<Samples> l2_2(Gen& G) {
  double e = G.eps();
  Point a = G.point();
  Point b = G.around(a, c0(Eps::of(e)) + G.uni(0.0, 6.0));
  auto perturb = [&](const Point& p) { return G.around(p, G.coin(0.3) ? e : e * G.uni01()); };
  Point a1 = perturb(a), b1 = perturb(b);
  if (dist(a, a1) > e || dist(b, b1) > e) return std::nullopt;
  Point m = geodesic_through(a, b).at(0.5 * dist(a, b));
  double lhs = dist_to_piece(m, geodesic_through(a1, b1), 0.0, dist(a1, b1));
  return Samples{{lhs, e / 2.0}};
}

std::optional<Samples> l2_5(Gen& G) {
  double e = G.eps();
  ConvexBody N = eps_neighbourhood(G, e);
  auto src = source_outside(G, N);
  if (!src) return std::nullopt;
  Ray r1 = ray_via(*src, inside(G, N)), r2 = ray_via(*src, inside(G, N));
  auto i1 = entry_exit(r1.g, N, r1.tmin), i2 = entry_exit(r2.g, N, r2.tmin);
  if (!i1 || !i2 || !i1->lo.is_finite() || !i2->lo.is_finite()) return std::nullopt;
  double lhs = dist(at_ext(r1.g, i1->lo), at_ext(r2.g, i2->lo));
  return Samples{{lhs, c1_prime(Eps::of(e))}};
}

std::optional<Samples> l2_6(Gen& G) {
  double e = G.eps();
  Eps E = Eps::of(e);
  double c0e = c0(E), cdp = c_dprime(E);
  ConvexBody C, N;
  Point a, b;
  double u = G.uni01();
  if (u < 1.0 / 3.0) {
    Geodesic L = G.line();
    C = Tube{L, 0.0};
    N = Tube{L, e};
    double s1 = G.uni(-5.0, 5.0);
    double s2 = s1 + (G.coin() ? 1.0 : -1.0) * (c0e + 2.0 * e + G.uni(0.0, 5.0));
    a = G.around(L.at(s1), e * G.uni01());
    b = G.around(L.at(s2), e * G.uni01());
  } else if (u < 2.0 / 3.0) {
    Ball B{G.point(), std::max(0.0, c0e / 2.0 - e) + G.uni(0.3, 4.0)};
    C = B;
    N = Ball{B.center, B.r + e};
    a = inside(G, N);
    b = inside(G, N);
  } else {
    Horoball H = G.horoball();
    C = H;
    N = shrink(H, -e);
    a = inside(G, N, 4.0);
    b = inside(G, N, 4.0);
  }
  double dab = dist(a, b);
  if (dab < c0e) return std::nullopt;
  double tau = G.uni(0.0, std::min(cdp * e / 2.0, dab / 2.0));
  Geodesic g = geodesic_through(a, b);
  Point a0 = G.coin() ? g.at(tau) : g.at(dab - tau);
  double eta = std::min(dist(a0, a), dist(a0, b)) / cdp;
  if (eta > e / 2.0) return std::nullopt;
  return Samples{{dist_to_body(C, a0), e - eta}};
}

// Second ray near r at a random point of its chord, or through a random point of N.
std::optional<Ray> companion(Gen& G, const Source& src, const ConvexBody& N, const Ray& r, const Interval& iv) {
  if (G.coin(0.3)) return ray_via(src, inside(G, N));
  double lo = iv.lo.v, hi = iv.hi.is_finite() ? iv.hi.v : iv.lo.v + 10.0;
  double s = G.coin(0.3) ? G.uni(lo, lo + 0.2 * (hi - lo)) : G.uni(lo, hi);
  Point q = G.around(r.g.at(s), G.logu(1e-7, 1.0));
  if (auto* p = std::get_if<Point>(&src); p && dist(*p, q) < 1e-9) return std::nullopt;
  return ray_via(src, q);
}

std::optional<Samples> l2_7(Gen& G) {
  double e = G.eps();
  Eps E = Eps::of(e);
  ConvexBody N = eps_neighbourhood(G, e, c0(E) / 2.0 + 0.2);
  auto src = source_outside(G, N);
  if (!src) return std::nullopt;
  auto rp = deep_ray(G, *src, N);
  if (!rp) return std::nullopt;
  auto ip = entry_exit(rp->g, N, rp->tmin);
  if (!ip || !ip->lo.is_finite() || ip->length() < ExtReal::finite(c0(E))) return std::nullopt;
  auto r = companion(G, *src, N, *rp, *ip);
  if (!r) return std::nullopt;
  auto i = entry_exit(r->g, N, r->tmin);
  if (!i || !i->lo.is_finite()) return std::nullopt;
  Point x = at_ext(r->g, i->lo), x1 = at_ext(rp->g, ip->lo);
  if (!sane(x) || !sane(x1)) return std::nullopt;
  return Samples{{dist(x, x1), c2_prime(E) * dist_to_ray(x, *rp)}};
}

// Shared body of the exit lemmas: gamma has a long chord [x, y], gamma' passes near y.
struct ExitConfig {
  Ray r, rp;
  Point x, y;
  double eta;
  std::optional<Interval> ip;
};

std::optional<ExitConfig> exit_config(Gen& G, const Source& src, const ConvexBody& N) {
  auto r = deep_ray(G, src, N);
  if (!r) return std::nullopt;
  auto iv = entry_exit(r->g, N, r->tmin);
  if (!iv || !iv->lo.is_finite() || !iv->hi.is_finite()) return std::nullopt;
  double lo = iv->lo.v, hi = iv->hi.v;
  if (!sane(r->g.at(lo)) || !sane(r->g.at(hi))) return std::nullopt;
  double s = G.coin(0.6) ? hi - G.logu(1e-6, 1.0) * (hi - lo) : G.uni(lo, hi);
  Point q = G.coin(0.2) ? r->g.at(G.uni(hi, hi + 3.0)) : r->g.at(s);
  q = G.around(q, G.logu(1e-8, 0.5));
  if (auto* p = std::get_if<Point>(&src); p && dist(*p, q) < 1e-9) return std::nullopt;
  Ray rp = ray_via(src, q);
  ExitConfig c{*r, rp, r->g.at(lo), r->g.at(hi), 0.0, entry_exit(rp.g, N, rp.tmin)};
  c.eta = std::max(dist_to_ray(c.y, rp), 1e-300);
  return c;
}

std::optional<Samples> l2_8(Gen& G) {
  double e = G.eps();
  Eps E = Eps::of(e);
  ConvexBody N = eps_neighbourhood(G, e, h_prime(E, 0.5) / 2.0 + 0.5);
  auto src = source_outside(G, N);
  if (!src) return std::nullopt;
  auto c = exit_config(G, *src, N);
  if (!c) return std::nullopt;
  double dxy = dist(c->x, c->y);
  if (dxy < h_prime(E, c->eta)) return std::nullopt;
  if (!c->ip) return Samples{kFail};
  if (!c->ip->hi.is_finite()) return Samples{{0.0, 0.0}};
  Point x1 = at_ext(c->rp.g, c->ip->lo), y1 = at_ext(c->rp.g, c->ip->hi);
  if (!sane(x1) || !sane(y1)) return std::nullopt;
  if (dist(x1, y1) > dxy) return Samples{{0.0, 0.0}};
  return Samples{{dist(c->y, y1), c3_prime(E) * dist_to_ray(c->y, c->rp)}};
}

std::optional<Samples> l2_11(Gen& G) {
  ConvexBody H = G.horoball();
  auto src = source_outside(G, H);
  if (!src) return std::nullopt;
  Ray r1 = ray_via(*src, inside(G, H)), r2 = ray_via(*src, inside(G, H));
  auto i1 = entry_exit(r1.g, H, r1.tmin), i2 = entry_exit(r2.g, H, r2.tmin);
  if (!i1 || !i2 || !i1->lo.is_finite() || !i2->lo.is_finite()) return std::nullopt;
  return Samples{{dist(at_ext(r1.g, i1->lo), at_ext(r2.g, i2->lo)), c1_prime(Eps::infinity())}};
}

std::optional<Samples> l2_12(Gen& G) {
  Moebius M = G.mob();
  Horoball H = apply(M, Horoball::at_infinity(1.0));
  double gap = 2.0 * std::sinh(c0(Eps::infinity()) / 2.0);
  cplx z1 = G.base();
  double th = G.h3 ? G.uni(0.0, 2.0 * kPi) : (G.coin() ? 0.0 : kPi);
  cplx z2 = z1 + std::polar(gap * G.uni(1.0, 3.0), th);
  Point a = M(Point{z1, 1.0}), b = M(Point{z2, 1.0});
  double dab = dist(a, b);
  if (dab < c0(Eps::infinity())) return std::nullopt;
  Point a0 = geodesic_through(a, b).at(G.uni(0.0, dab));
  double m = std::min(dist(a0, a), dist(a0, b));
  return Samples{{2.0 / 3.0 * m, horo_height(H, a0)}};
}

std::optional<Samples> l2_13(Gen& G) {
  ConvexBody H = G.horoball();
  auto src = source_outside(G, H);
  if (!src) return std::nullopt;
  auto rp = deep_ray(G, *src, H);
  auto ip = entry_exit(rp->g, H, rp->tmin);
  if (!ip || !ip->lo.is_finite() || ip->length() < ExtReal::finite(c0(Eps::infinity()))) return std::nullopt;
  auto r = companion(G, *src, H, *rp, *ip);
  if (!r) return std::nullopt;
  auto i = entry_exit(r->g, H, r->tmin);
  if (!i || !i->lo.is_finite()) return std::nullopt;
  Point x = at_ext(r->g, i->lo), x1 = at_ext(rp->g, ip->lo);
  if (!sane(x) || !sane(x1)) return std::nullopt;
  return Samples{{dist(x, x1), c2_prime(Eps::infinity()) * dist_to_ray(x, *rp)}};
}

std::optional<Samples> l2_14(Gen& G) {
  ConvexBody H = G.horoball();
  auto src = source_outside(G, H);
  if (!src) return std::nullopt;
  auto c = exit_config(G, *src, H);
  if (!c) return std::nullopt;
  if (dist(c->x, c->y) < h_prime(Eps::infinity(), c->eta)) return std::nullopt;
  if (!c->ip || !c->ip->hi.is_finite()) return Samples{kFail};
  Point y1 = at_ext(c->rp.g, c->ip->hi);
  if (!sane(y1)) return std::nullopt;
  double L = dist(c->y, y1), R = c3_prime(Eps::infinity()) * dist_to_ray(c->y, c->rp);
  return Samples{{L, R}};
}

// ---- Chapter 3 lemmas ----

// Ray from the source that meets C with probability about one half.
Ray random_ray(Gen& G, const Source& src, const ConvexBody& C) {
  if (G.coin()) return ray_via(src, inside(G, C));
  for (;;) {
    Boundary b = G.bnd();
    if (auto* s = std::get_if<Boundary>(&src); s && same(*s, b)) continue;
    return ray_to(src, b);
  }
}

std::optional<Samples> l3_2(Gen& G) {
  double u = G.uni01();
  ConvexBody C;
  double bound;
  if (u < 1.0 / 3.0) {
    C = G.horoball();
    bound = 2.0 * c1_prime(Eps::infinity());
  } else if (u < 2.0 / 3.0) {
    double r = G.logu(0.05, 8.0);
    C = Ball{G.point(), r};
    bound = 2.0 * c1_prime(Eps::of(r));
  } else {
    double e = G.eps();
    C = Tube{G.line(), e};
    bound = 2.0 * c1_prime(Eps::of(e));
  }
  auto src = source_outside(G, C);
  if (!src) return std::nullopt;
  Ray r = random_ray(G, *src, C);
  if (at_infinity_of(C, r.g.plus())) return std::nullopt;
  ExtReal bp = penetration(r.g, C, PenKind::BP, *src);
  ExtReal ell = penetration(r.g, C, PenKind::Length, *src);
  return Samples{{ext_gap(bp, ell), bound}};
}

std::optional<Samples> l3_3(Gen& G) {
  ConvexBody H = G.horoball();
  auto src = source_outside(G, H);
  if (!src) return std::nullopt;
  Ray r = random_ray(G, *src, H);
  if (at_infinity_of(H, r.g.plus())) return std::nullopt;
  ExtReal ph = penetration(r.g, H, PenKind::PH, *src);
  ExtReal ipp = penetration(r.g, H, PenKind::IPP, *src);
  ExtReal ell = penetration(r.g, H, PenKind::Length, *src);
  double k = c1_prime(Eps::infinity());
  return Samples{{ext_gap(ph, ell), k}, {ext_gap(ipp, ell), k}, {ext_gap(ph, ipp), k}};
}

std::optional<Samples> l3_4(Gen& G) {
  double e = G.eps();
  Tube N{G.line(), e};
  auto src = source_outside(G, N);
  if (!src) return std::nullopt;
  Ray r = random_ray(G, *src, N);
  if (at_infinity_of(N, r.g.plus())) return std::nullopt;
  ExtReal ftp = penetration(r.g, N, PenKind::FTP, *src);
  ExtReal bp = penetration(r.g, N, PenKind::BP, *src);
  ExtReal ell = penetration(r.g, N, PenKind::Length, *src);
  double gap = bp.v - ftp.v;
  return Samples{{ext_gap(ftp, ell), 2.0 * c1_prime(Eps::of(e)) + 2.0 * e}, {-gap, 0.0}, {gap, 2.0 * e}};
}

std::optional<Samples> l3_5(Gen& G) {
  Boundary a, b, c, d;
  Geodesic L = G.line();
  b = L.minus();
  d = L.plus();
  a = G.bnd();
  c = G.bnd();
  // occasionally put a or c near the ends of [b, d] to reach the long-separation cases
  if (G.coin(0.5)) {
    double R = G.logu(1.0, 1e6);
    cplx w = G.h3 ? std::polar(R, G.uni(0.0, 2.0 * kPi)) : cplx(G.coin() ? R : -R, 0.0);
    a = L.frame()(Boundary::at(w));
    c = L.frame()(Boundary::at(G.h3 ? std::polar(1.0 / G.logu(1.0, 1e6), G.uni(0.0, 2.0 * kPi))
                                     : cplx(G.coin() ? 1.0 : -1.0, 0.0) / G.logu(1.0, 1e6)));
    if (G.coin()) std::swap(a, c);
  }
  for (const Boundary* x : {&a, &c})
    if (same(*x, b) || same(*x, d)) return std::nullopt;
  if (same(a, c)) return std::nullopt;
  double tp = L.param_of(project_to_geodesic(a, L));
  double tq = L.param_of(project_to_geodesic(c, L));
  double dpq = std::fabs(tp - tq);
  ExtReal cr = crossratio(a, b, c, d);
  if (!cr.is_finite()) return std::nullopt;
  double k = c1_prime(Eps::infinity());
  Samples out;
  if (tq <= tp && dpq >= k) out.push_back({std::fabs(cr.v - dpq), 2.0 * k});
  if (tp < tq && dpq >= k) out.push_back({cr.v, k});
  if (dpq <= k) out.push_back({cr.v, 2.0 * k});
  return out;
}

std::optional<Samples> l3_6(Gen& G) {
  Tube T{G.line(), 1.0};
  auto src = source_outside(G, T, true);
  if (!src) return std::nullopt;
  Ray r = random_ray(G, *src, T);
  if (at_infinity_of(T, r.g.plus())) return std::nullopt;
  ExtReal crp = penetration(r.g, T, PenKind::CRP, *src);
  ExtReal ftp = penetration(r.g, T, PenKind::FTP, *src);
  return Samples{{ext_gap(crp, ftp), 2.0 * c1_prime(Eps::infinity())}};
}

// ---- Chapter 4 ----

std::optional<Samples> l4_2(Gen& G) {
  ConvexBody H;
  double mu;
  if (G.coin()) {
    H = G.horoball();
    mu = G.uni(std::log(2.0), 4.0);
  } else {
    double r = G.uni(std::log(2.0), 6.0);
    H = Ball{G.point(), r};
    mu = G.uni(std::log(2.0), r);
  }
  auto src = source_outside(G, H);
  if (!src) return std::nullopt;
  ConvexBody Hmu = *shrink(H, mu);
  Ray r = ray_via(*src, inside(G, Hmu));
  Ray rp = G.coin(0.5) ? ray_via(*src, inside(G, Hmu)) : ray_via(*src, G.around(inside(G, Hmu), G.logu(1e-6, 1.0)));
  if (!entry_exit(rp.g, Hmu, rp.tmin)) return std::nullopt;
  auto i = entry_exit(r.g, H, r.tmin), ip = entry_exit(rp.g, H, rp.tmin);
  if (!i || !ip || !i->lo.is_finite() || !ip->lo.is_finite()) return std::nullopt;

  Point ref{cplx(0.0), 1.0};
  auto level = [&](const Point& p) {
    if (auto* b = std::get_if<Boundary>(&*src)) return busemann(*b, p, ref);
    return dist(std::get<Point>(*src), p);
  };
  double t0 = i->lo.v;
  Point x = r.g.at(t0);
  double shift = level(x) - level(rp.g.at(0.0));
  double bound = nu(mu);
  Samples out{{dist(x, at_ext(rp.g, ip->lo)), bound}};
  for (double s : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, G.uni(0.0, 12.0)}) {
    double t = t0 - s, tp = shift - s;
    if ((r.tmin && t < *r.tmin) || (rp.tmin && tp < *rp.tmin)) continue;
    out.push_back({dist(r.g.at(t), rp.g.at(tp)), bound * std::exp(-s)});
  }
  return out;
}

const std::map<std::string, TrialFn>& registry() {
  static const std::map<std::string, TrialFn> r{
      {"L2.1", l2_1},   {"L2.2", l2_2},   {"L2.5", l2_5},   {"L2.6", l2_6},   {"L2.7", l2_7},   {"L2.8", l2_8},
      {"L2.11", l2_11}, {"L2.12", l2_12}, {"L2.13", l2_13}, {"L2.14", l2_14}, {"L3.2", l3_2},   {"L3.3", l3_3},
      {"L3.4", l3_4},   {"L3.5", l3_5},   {"L3.6", l3_6},   {"L4.2", l4_2}};
  return r;
}

std::string normalize_id(std::string id) {
  for (char& ch : id)
    if (ch == '_') ch = '.';
  return id;
}

// ---- property (i) / (ii) tables ----

struct PairSpec {
  PenPair pair;
  std::function<double(Gen&, ConvexBody&)> make;  // builds the body, returns kappa
  bool boundary_source;
};

const std::vector<PairSpec>& pair_specs() {
  static const double kc = c1_prime(Eps::infinity());
  auto horo = [](Gen& G, ConvexBody& C) {
    C = G.horoball();
    return kc;
  };
  auto ball = [](Gen& G, ConvexBody& C) {
    C = Ball{G.point(), G.logu(0.05, 8.0)};
    return kc;
  };
  auto tube = [](double (*k)(double)) {
    return [k](Gen& G, ConvexBody& C) {
      double e = G.eps();
      C = Tube{G.line(), e};
      return k(e);
    };
  };
  auto zero = [](auto mk) {
    return [mk](Gen& G, ConvexBody& C) {
      mk(G, C);
      return 0.0;
    };
  };
  static const std::vector<PairSpec> v{
      {{"horoball_ph", "horoball", PenKind::PH}, horo, false},
      {{"horoball_ipp", "horoball", PenKind::IPP}, horo, false},
      {{"ball_ph", "ball", PenKind::PH}, ball, false},
      {{"ball_ipp", "ball", PenKind::IPP}, ball, false},
      {{"tube_ftp", "tube", PenKind::FTP},
       tube([](double e) { return 2.0 * c1_prime(Eps::of(e)) + 2.0 * e; }),
       false},
      {{"tube_bp", "tube", PenKind::BP}, tube([](double e) { return 2.0 * c1_prime(Eps::of(e)); }), false},
      {{"tube_crp", "tube", PenKind::CRP},
       tube([](double e) { return 2.0 * c1_prime(Eps::of(e)) + 2.0 * kc + 2.0 * e; }),
       true},
      {{"horoball_length", "horoball", PenKind::Length}, zero(horo), false},
      {{"ball_length", "ball", PenKind::Length}, zero(ball), false},
      {{"tube_length", "tube", PenKind::Length}, zero(tube([](double) { return 0.0; })), false},
  };
  return v;
}

const PairSpec& find_pair(const std::string& name) {
  for (const auto& p : pair_specs())
    if (p.pair.name == name) return p;
  throw domain_error("unknown penetration pair: " + name);
}

}  // namespace

std::vector<std::string> lemma_ids() {
  return {"L2.1",  "L2.2",  "L2.5", "L2.6", "L2.7", "L2.8", "L2.11", "L2.12",
          "L2.13", "L2.14", "L3.2", "L3.3", "L3.4", "L3.5", "L3.6",  "L4.2"};
}

LemmaReport check_inequality(const std::string& lemma_id, int trials, std::uint64_t seed) {
  std::string id = normalize_id(lemma_id);
  auto it = registry().find(id);
  if (it == registry().end()) throw domain_error("unknown lemma id: " + lemma_id);
  return run(id, it->second, trials, seed);
}

std::vector<PenPair> penetration_pairs() {
  std::vector<PenPair> out;
  for (const auto& p : pair_specs()) out.push_back(p.pair);
  return out;
}

LemmaReport check_penetration_property(const std::string& pair_name, int trials, std::uint64_t seed) {
  const PairSpec& spec = find_pair(pair_name);
  auto fn = [&](Gen& G) -> std::optional<Samples> {
    ConvexBody C;
    double kappa = spec.make(G, C);
    auto src = source_outside(G, C, spec.boundary_source);
    if (!src) return std::nullopt;
    Ray r = random_ray(G, *src, C);
    if (at_infinity_of(C, r.g.plus())) return std::nullopt;
    ExtReal f = penetration(r.g, C, spec.pair.kind, *src);
    ExtReal ell = penetration(r.g, C, PenKind::Length, *src);
    return Samples{{ext_gap(f, ell), kappa + 1e-8}};
  };
  return run(pair_name, fn, trials, seed);
}

LemmaReport check_lipschitz_property(const std::string& pair_name, int trials, std::uint64_t seed) {
  const PairSpec& spec = find_pair(pair_name);
  if (spec.pair.kind != PenKind::Length && spec.pair.kind != PenKind::PH && spec.pair.kind != PenKind::IPP)
    throw domain_error("the Lipschitz check covers length, ph and ipp");
  auto fn = [&](Gen& G) -> std::optional<Samples> {
    ConvexBody C;
    spec.make(G, C);
    auto src = source_outside(G, C, spec.boundary_source);
    if (!src) return std::nullopt;
    Ray r = ray_via(*src, inside(G, C));
    auto iv = entry_exit(r.g, C, r.tmin);
    if (!iv || !iv->lo.is_finite() || !iv->hi.is_finite()) return std::nullopt;
    Point q = r.g.at(G.uni(iv->lo.v, iv->hi.v));
    Ray rp = ray_via(*src, G.around(q, G.logu(1e-6, 2.0)));
    auto ivp = entry_exit(rp.g, C, rp.tmin);
    if (!ivp || !ivp->lo.is_finite() || !ivp->hi.is_finite()) return std::nullopt;
    double da = dist(r.g.at(iv->lo.v), rp.g.at(ivp->lo.v));
    double db = dist(r.g.at(iv->hi.v), rp.g.at(ivp->hi.v));
    ExtReal f = penetration(r.g, C, spec.pair.kind, *src);
    ExtReal fp = penetration(rp.g, C, spec.pair.kind, *src);
    return Samples{{ext_gap(f, fp), 2.0 * std::max(da, db) + 1e-8}};
  };
  return run(pair_name + ":lipschitz", fn, trials, seed);
}

}  // namespace hypen
