#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "hypen/constants.hpp"
#include "hypen/dioph.hpp"
#include "hypen/engine.hpp"
#include "hypen/heis.hpp"
#include "hypen/penetration.hpp"
#include "report.hpp"
#include "scene.hpp"

using namespace hypen;
using namespace hypen::cli;
using nlohmann::ordered_json;

namespace {

bool has_lipschitz(PenKind k) { return k == PenKind::Length || k == PenKind::PH || k == PenKind::IPP; }

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Eps parse_eps(const std::string& s) { return s == "inf" ? Eps::infinity() : Eps::of(std::stod(s)); }

// "inf", "@x", "@x,y" (boundary), "x,h" (plane) or "x,y,h" (space)
Source parse_source(const std::string& s) {
  if (s == "inf") return Boundary::infinity();
  if (!s.empty() && s.front() == '@') return parse_boundary(s.substr(1));
  auto v = parse_reals(s);
  if (v.size() == 2) return Point{cplx(v[0], 0.0), v[1]};
  if (v.size() == 3) return Point{cplx(v[0], v[1]), v[2]};
  throw usage_error("start needs inf, @x[,y], x,h or x,y,h: " + s);
}

HeisPoint parse_heis(const std::string& zeta, double v) {
  auto z = parse_reals(zeta);
  if (z.size() % 2) throw usage_error("zeta needs re,im pairs");
  HeisPoint p{VecC(static_cast<Eigen::Index>(z.size() / 2)), v};
  for (std::size_t i = 0; i < z.size(); i += 2) p.zeta(static_cast<Eigen::Index>(i / 2)) = cplx(z[i], z[i + 1]);
  return p;
}

ordered_json boundary_json(const Boundary& b) {
  if (b.inf) return "inf";
  return ordered_json::array({b.z.real(), b.z.imag()});
}

void add_checks(Report& rep, const std::vector<CheckRow>& checks, const std::string& prefix = "") {
  for (const auto& c : checks)
    rep.add({{"name", prefix + c.name}, {"computed", c.worst}, {"expected", c.limit}, {"pass", c.pass}});
}

void add_trace(Report& rep, const ConstructionTrace& tr, const std::string& prefix = "") {
  rep.add(info_row(prefix + "steps", static_cast<long>(tr.steps.size())));
  rep.add({{"name", prefix + "converged"}, {"computed", tr.converged}, {"pass", tr.converged}});
  rep.add(info_row(prefix + "final endpoint", boundary_json(tr.final_geodesic.plus())));
  add_checks(rep, tr.checks, prefix);
  for (const auto& o : tr.report)
    if (!o.pass)
      rep.add({{"name", prefix + "obstacle " + std::to_string(o.index)},
               {"computed", o.value},
               {"expected", o.bound},
               {"pass", false}});
  for (const auto& n : tr.notes) rep.note(prefix + n);
}

void write_svg(const std::string& path, const ObstacleFamily& fam, const ConstructionTrace& tr) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  out << svg_scene(fam, tr.iterates, tr.final_geodesic);
}

// value of the expansion with extended precision for the brute-force sweep
long double cf_value_ld(const CFExpansion& e) {
  std::size_t n = e.periodic() ? 80 : e.digits.size();
  long double x = 0.0L;
  for (std::size_t k = n; k >= 1; --k) x = 1.0L / (static_cast<long double>(e.digit(k)) + x);
  return static_cast<long double>(e.a0) + x;
}

int run(int argc, char** argv) {
  CLI::App app{"Penetration maps, geodesic constructions and Diophantine oracles in hyperbolic space"};
  app.set_version_flag("--version", HYPEN_VERSION);
  app.require_subcommand(1);
  bool as_json = false;
  std::uint64_t seed = 1;
  Report rep;
  std::function<void()> action;

  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", as_json, "emit one JSON object"); };

  // constants
  auto* k = app.add_subcommand("constants", "constant calculus");
  k->require_subcommand(1);
  auto* k_audit = k->add_subcommand("audit", "reproduce the printed constants");
  json_flag(k_audit);
  k_audit->callback([&] {
    action = [&] {
      for (const auto& r : audit()) {
        ordered_json row{{"name", r.name}, {"computed", r.computed}, {"paper", nullptr}, {"tol", r.tol}, {"pass", r.pass}};
        if (r.paper) row["paper"] = *r.paper;
        rep.add(row);
        if (!r.note.empty()) rep.note(r.name + ": " + r.note);
      }
    };
  });
  auto* k_table = k->add_subcommand("table", "derived constants for one parameter set");
  std::string k_eps = "inf";
  double k_delta = 0.0, k_kappa = 0.0;
  bool k_zero = false;
  k_table->add_option("--eps", k_eps, "convexity, number or inf");
  k_table->add_option("--delta", k_delta, "almost-disjointness")->check(CLI::NonNegativeNumber);
  k_table->add_option("--kappa", k_kappa, "penetration constant")->check(CLI::NonNegativeNumber);
  k_table->add_flag("--ph-zero-delta", k_zero, "horoball height branch with delta = 0");
  json_flag(k_table);
  k_table->callback([&] {
    action = [&] {
      ParamSet p{parse_eps(k_eps), k_delta, k_kappa, k_zero};
      auto t = derived_constants(p);
      for (auto [n, v] : std::vector<std::pair<const char*, double>>{{"c1", t.c1},
                                                                     {"c2", t.c2},
                                                                     {"c3", t.c3},
                                                                     {"c4", t.c4},
                                                                     {"c5", t.c5},
                                                                     {"c6", t.c6},
                                                                     {"h0", t.h0},
                                                                     {"h1'", t.h1_prime()},
                                                                     {"h1''", t.h1_dprime()},
                                                                     {"c0(eps)", t.c0_eps},
                                                                     {"c1'(eps)", t.c1p_eps},
                                                                     {"c''(eps)", t.cdp_eps},
                                                                     {"c2'(eps)", t.c2p_eps},
                                                                     {"c3'(eps)", t.c3p_eps}})
        rep.add(info_row(n, v));
    };
  });

  // lemmas
  auto* l = app.add_subcommand("lemmas", "randomized inequality checks");
  l->require_subcommand(1);
  auto* l_list = l->add_subcommand("list", "registered checks");
  json_flag(l_list);
  l_list->callback([&] {
    action = [&] {
      for (const auto& id : lemma_ids()) rep.add(info_row(id, "inequality"));
      for (const auto& p : penetration_pairs()) {
        rep.add(info_row("pen:" + p.name, p.body + " / " + pen_kind_name(p.kind)));
        if (has_lipschitz(p.kind)) rep.add(info_row("lip:" + p.name, p.body + " / " + pen_kind_name(p.kind)));
      }
    };
  });
  auto* l_check = l->add_subcommand("check", "run seeded trials");
  std::string l_id;
  int l_trials = 10000;
  l_check->add_option("--id", l_id, "Lx.y, pen:NAME, lip:NAME or all")->required();
  l_check->add_option("--trials", l_trials, "trials per check")->check(CLI::PositiveNumber);
  l_check->add_option("--seed", seed, "base seed");
  json_flag(l_check);
  l_check->callback([&] {
    action = [&] {
      std::vector<std::string> ids;
      if (l_id == "all") {
        ids = lemma_ids();
        for (const auto& p : penetration_pairs()) ids.push_back("pen:" + p.name);
        for (const auto& p : penetration_pairs())
          if (has_lipschitz(p.kind)) ids.push_back("lip:" + p.name);
      } else {
        ids.push_back(l_id);
      }
      for (const auto& id : ids) {
        LemmaReport r;
        if (id.rfind("pen:", 0) == 0)
          r = check_penetration_property(id.substr(4), l_trials, seed);
        else if (id.rfind("lip:", 0) == 0)
          r = check_lipschitz_property(id.substr(4), l_trials, seed);
        else
          r = check_inequality(id, l_trials, seed);
        rep.add({{"lemma", id},
                 {"trials", r.trials},
                 {"violations", r.violations},
                 {"worst_margin", r.worst_margin},
                 {"seed", r.seed}});
        if (r.violations != 0) rep.add({{"name", id + " violations"}, {"computed", r.violations}, {"pass", false}});
        if (r.rejections > 0) rep.note(id + ": " + std::to_string(r.rejections) + " generator draws rejected");
      }
    };
  });

  // uncloud
  auto* u = app.add_subcommand("uncloud", "avoid all shrunk obstacles");
  std::string u_obst, u_start = "0.5,0.9", u_end, u_svg;
  std::vector<std::string> u_windows;
  UncloudOptions uo;
  u->add_option("--obstacles", u_obst, "ford:Q, gford:Q or a JSON file")->required();
  u->add_option("--window", u_windows, "ford: lo,hi; gford: x,y,r (repeatable)");
  u->add_option("--mu1", uo.mu1, "shrinking parameter");
  u->add_option("--start", u_start, "inf, @x[,y], x,h or x,y,h");
  u->add_option("--end", u_end, "initial endpoint x or x,y");
  u->add_option("--horizon", uo.horizon, "hyperbolic length horizon")->check(CLI::PositiveNumber);
  u->add_option("--max-iter", uo.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  u->add_option("--svg", u_svg, "write the plane scene");
  json_flag(u);
  u->callback([&] {
    action = [&] {
      auto fam = load_obstacles(u_obst, u_windows);
      if (!u_end.empty()) uo.initial_end = parse_boundary(u_end);
      auto tr = uncloud(fam, parse_source(u_start), uo);
      add_trace(rep, tr);
      // mu5 sits below mu0, so the avoidance claim is read off the same heights
      double worst = 0.0;
      for (const auto& o : tr.report) worst = std::max(worst, o.value);
      rep.add(bound_row("avoidance vs mu0", worst, 1.534 - 1e-6, 0.0));
      write_svg(u_svg, fam, tr);
    };
  });

  // prescribe
  auto* p = app.add_subcommand("prescribe", "prescribe the penetration into one body");
  std::string p_model = "h3", p_obst, p_f0 = "ph", p_eps = "inf", p_xi, p_end, p_svg;
  std::vector<std::string> p_windows;
  long p_target = -1;
  bool p_line = false, p_zero = false;
  double p_theta = 0.0;
  std::optional<double> p_h0p;
  PrescribeOptions po;
  p->add_option("--model", p_model, "h2 or h3")->check(CLI::IsMember({"h2", "h3"}));
  p->add_option("--obstacles", p_obst, "ford:Q, gford:Q or a JSON file")->required();
  p->add_option("--window", p_windows, "ford: lo,hi; gford: x,y,r (repeatable)");
  p->add_option("--target", p_target, "index of the prescribed body (default: designated)");
  p->add_option("--f0", p_f0, "ph, ipp, ftp, crp or length");
  p->set_help_flag("--help", "Print this help message and exit");
  p->add_option("--h", po.h, "prescribed value");
  p->add_option("--eps", p_eps, "convexity, number or inf");
  p->add_option("--delta", po.params.delta0, "almost-disjointness")->check(CLI::NonNegativeNumber);
  p->add_option("--kappa", po.params.kappa0, "penetration constant")->check(CLI::NonNegativeNumber);
  p->add_flag("--ph-zero-delta", p_zero, "horoball height branch with delta = 0");
  p->add_option("--h0", p_h0p, "override h0' (at least h0)");
  p->add_option("--xi", p_xi, "boundary source x or x,y")->required();
  p->add_option("--end", p_end, "initial endpoint on the level set");
  p->add_option("--theta", p_theta, "initial angle on the level set");
  p->add_option("--horizon", po.horizon, "hyperbolic length horizon")->check(CLI::PositiveNumber);
  p->add_option("--max-iter", po.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  p->add_flag("--line", p_line, "two-sided line variant");
  p->add_option("--svg", p_svg, "write the plane scene");
  json_flag(p);
  p->callback([&] {
    action = [&] {
      auto fam = load_obstacles(p_obst, p_windows);
      if (p_target >= 0) {
        if (static_cast<std::size_t>(p_target) >= fam.bodies.size()) throw usage_error("target index out of range");
        fam.designated = static_cast<std::size_t>(p_target);
      }
      Boundary xi = parse_boundary(p_xi);
      if (p_model == "h2" && xi.z.imag() != 0.0) throw usage_error("h2 needs a real source");
      po.f0 = parse_pen_kind(p_f0);
      po.params.eps0 = parse_eps(p_eps);
      po.params.ph_horoball_zero_delta = p_zero;
      po.params.validate();
      fam.delta0 = std::max(fam.delta0, po.params.delta0);
      po.h0p = p_h0p;
      po.theta0 = p_theta;
      if (!p_end.empty()) po.initial_end = parse_boundary(p_end);
      if (p_line) {
        auto lt = prescribe_line(fam, xi, po);
        add_trace(rep, lt.first, "forward ");
        add_trace(rep, lt.second, "backward ");
        double worst = 0.0;
        for (const auto& o : lt.two_sided) worst = std::max(worst, o.value);
        rep.add(bound_row("two-sided max length vs h1''", worst, lt.h1_dprime, 0.0));
        write_svg(p_svg, fam, lt.second);
      } else {
        auto tr = prescribe(fam, xi, po);
        add_trace(rep, tr);
        write_svg(p_svg, fam, tr);
      }
    };
  });

  // dioph
  auto* d = app.add_subcommand("dioph", "continued fractions and excursions");
  d->require_subcommand(1);
  auto* d_const = d->add_subcommand("constant", "approximation constant");
  std::string d_x, d_complex;
  long long d_qmax = 100000;
  d_const->add_option("--x", d_x, "cf:a0,a1,...,(period), sqrt:n or a decimal");
  d_const->add_option("--qmax", d_qmax, "brute-force denominator cap")->check(CLI::PositiveNumber);
  d_const->add_option("--complex", d_complex, "Gaussian approximation of re,im");
  json_flag(d_const);
  d_const->callback([&] {
    action = [&] {
      if (d_x.empty() == d_complex.empty()) throw usage_error("give exactly one of --x and --complex");
      if (!d_complex.empty()) {
        auto v = parse_reals(d_complex);
        if (v.size() != 2) throw usage_error("--complex needs re,im");
        rep.add(info_row("complex_approx_constant", complex_approx_constant({v[0], v[1]}, static_cast<int>(d_qmax))));
        return;
      }
      auto e = parse_cf(d_x);
      long long lo = std::max(1LL, d_qmax / 100);
      double bf = brute_force_constant(cf_value_ld(e), lo, d_qmax);
      rep.add(info_row("window", std::to_string(lo) + ".." + std::to_string(d_qmax)));
      if (e.periodic())
        rep.add(check_row("brute force vs periodic formula", bf, approx_constant(e), 1e-5));
      else
        rep.add(info_row("brute force", bf));
    };
  });
  auto* d_lim = d->add_subcommand("limsup", "digit string with a prescribed excursion limsup");
  double d_target = 8.0;
  int d_budget = 400;
  d_lim->add_option("--target", d_target, "target height");
  d_lim->add_option("--budget", d_budget, "number of digits");
  json_flag(d_lim);
  d_lim->callback([&] {
    action = [&] {
      auto r = limsup_prescribe(d_target, d_budget);
      rep.add(check_row("achieved limsup", r.achieved_limsup, d_target, d_budget >= 400 ? 0.05 : 0.15));
      rep.add(info_row("off-peak max", r.off_peak_max));
      rep.add(info_row("peaks", static_cast<long>(r.peaks.size())));
      std::string digits;
      for (std::size_t i = 0; i < r.digits.size(); ++i) digits += (i ? "," : "") + std::to_string(r.digits[i]);
      rep.add(info_row("digits", "cf:0," + digits));
    };
  });
  auto* d_exc = d->add_subcommand("excursions", "excursion heights over the Ford family");
  std::size_t d_horizon = 200;
  d_exc->add_option("--x", d_x, "cf:a0,a1,...,(period), sqrt:n or a decimal")->required();
  d_exc->add_option("--horizon", d_horizon, "number of excursions")->check(CLI::PositiveNumber);
  json_flag(d_exc);
  d_exc->callback([&] {
    action = [&] {
      auto e = parse_cf(d_x, static_cast<int>(d_horizon) + 2);
      auto ex = excursions(e, d_horizon);
      for (const auto& x : ex)
        rep.add({{"n", x.n}, {"alpha", x.alpha}, {"beta", x.beta}, {"magnitude", x.magnitude}, {"ph", x.ph}});
      std::vector<double> mags;
      for (const auto& x : ex) mags.push_back(x.magnitude);
      double lim = limsup_estimate(mags);
      rep.add(info_row("limsup ph", limsup_estimate(excursion_ph(ex))));
      if (e.periodic())
        rep.add(check_row("magnitude limsup vs 1/(2c)", lim, 1.0 / (2.0 * approx_constant(e)), 1e-6));
      else
        rep.add(info_row("magnitude limsup", lim));
    };
  });

  // heis
  auto* h = app.add_subcommand("heis", "Heisenberg group and quaternionic checks");
  h->require_subcommand(1);
  std::string h_zeta = "1,0";
  double h_v = 0.0;
  auto* h_dist = h->add_subcommand("dist", "Cygan distance from the origin");
  bool h_mod = false;
  h_dist->add_option("--zeta", h_zeta, "re,im pairs");
  h_dist->add_option("--v", h_v, "vertical coordinate");
  h_dist->add_flag("--modified", h_mod, "modified Cygan distance");
  json_flag(h_dist);
  h_dist->callback([&] {
    action = [&] {
      HeisPoint q = parse_heis(h_zeta, h_v);
      HeisPoint o = heis_identity(static_cast<int>(q.zeta.size()));
      rep.add(info_row(h_mod ? "modified cygan" : "cygan", h_mod ? cygan_mod(o, q) : cygan(o, q)));
    };
  });
  auto* h_tan = h->add_subcommand("tangency", "horoball tangent to a vertical line");
  h_tan->add_option("--zeta", h_zeta, "re,im pairs");
  h_tan->add_option("--v", h_v, "vertical coordinate");
  json_flag(h_tan);
  h_tan->callback([&] {
    action = [&] {
      HeisPoint q = parse_heis(h_zeta, h_v);
      double s = tangency_s(q);
      rep.add(info_row("s", s));
      rep.add(check_row("discriminant at s", tangency_discriminant(q, s), 0.0, 1e-9));
    };
  });
  auto* h_h5 = h->add_subcommand("h5-dist", "horoball distance for a quaternionic matrix");
  std::string h_matrix;
  double h_s = 1.0;
  h_h5->add_option("--matrix", h_matrix, "a,b,c,d as sixteen reals (w,x,y,z each)")->required();
  h_h5->add_option("--s", h_s, "horoball height")->check(CLI::PositiveNumber);
  json_flag(h_h5);
  h_h5->callback([&] {
    action = [&] {
      auto v = parse_reals(h_matrix);
      if (v.size() != 16) throw usage_error("--matrix needs sixteen reals");
      auto q = [&](int i) { return Quaternion{v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]}; };
      QMat2 m{q(0), q(1), q(2), q(3)};
      double delta = dieudonne(m);
      if (std::abs(delta - 1.0) > 1e-9) throw usage_error("matrix needs determinant 1, got " + std::to_string(delta));
      auto r = horoball_dist_h5(m, h_s);
      rep.add(info_row("distance", r.value));
      rep.add(info_row("disjoint", r.disjoint));
      rep.add(check_row("along the image line", horoball_dist_h5_direct(m, h_s), r.value, 1e-9));
    };
  });
  auto* h_eq = h->add_subcommand("eq35", "sign of the trace term on random products");
  int h_samples = 1000;
  h_eq->add_option("--samples", h_samples, "random products")->check(CLI::PositiveNumber);
  h_eq->add_option("--seed", seed, "base seed");
  json_flag(h_eq);
  h_eq->callback([&] {
    action = [&] {
      int plus = 0, minus = 0;
      for (int i = 0; i < h_samples; ++i) {
        auto e = eq35_check(random_sl2h(splitmix64(seed + static_cast<std::uint64_t>(i))));
        plus += e.plus <= 1e-9;
        minus += e.minus <= 1e-9;
      }
      rep.add(info_row("plus sign passes", plus));
      rep.add(info_row("minus sign passes", minus));
      bool one = (plus == h_samples) != (minus == h_samples);
      rep.add({{"name", "one sign passes uniformly"},
               {"computed", plus == h_samples ? "plus" : minus == h_samples ? "minus" : "none"},
               {"pass", one}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  rep.set_seed(seed);
  try {
    action();
  } catch (const prescription_infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const step_error& e) {
    std::cerr << "step failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const family_error& e) {
    std::cerr << "bad family: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad obstacle file: " << e.what() << "\n";
    return 2;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (as_json ? rep.json(ms) : rep.table());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
