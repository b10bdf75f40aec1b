#include "scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hypen/dioph.hpp"

namespace hypen::cli {

using nlohmann::json;

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw precondition_error("not a number: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw precondition_error("empty number list");
  return out;
}

Boundary parse_boundary(const std::string& s) {
  if (s == "inf") return Boundary::infinity();
  auto v = parse_reals(s);
  if (v.size() == 1) return Boundary::at(v[0]);
  if (v.size() == 2) return Boundary::at(cplx(v[0], v[1]));
  throw precondition_error("boundary point needs one or two coordinates: " + s);
}

namespace {

cplx complex_of(const json& c, std::size_t from = 0) {
  double re = c.at(from).get<double>();
  double im = c.size() > from + 1 ? c.at(from + 1).get<double>() : 0.0;
  return {re, im};
}

ConvexBody body_from_json(const json& b) {
  std::string kind = b.at("kind").get<std::string>();
  double param = b.at("param").get<double>();
  const json& c = b.at("center");
  if (!(param > 0.0)) throw precondition_error("body parameter must be positive");
  if (kind == "horoball") {
    if (c.is_string()) {
      if (c.get<std::string>() != "inf") throw precondition_error("horoball center must be an array or \"inf\"");
      return Horoball::at_infinity(param);
    }
    return Horoball::at(complex_of(c), param);
  }
  if (kind == "ball") {
    if (c.size() == 2) return Ball{{cplx(c[0].get<double>(), 0.0), c[1].get<double>()}, param};
    if (c.size() == 3) return Ball{{cplx(c[0].get<double>(), c[1].get<double>()), c[2].get<double>()}, param};
    throw precondition_error("ball center needs [x, h] or [x, y, h]");
  }
  if (kind == "tube") {
    // [a, b] or [a_re, a_im, b_re, b_im]; "inf" allowed as an endpoint in the two-entry form
    auto end = [](const json& e) { return e.is_string() ? Boundary::infinity() : Boundary::at(e.get<double>()); };
    Geodesic core = c.size() == 4 ? Geodesic::between(Boundary::at(complex_of(c, 0)), Boundary::at(complex_of(c, 2)))
                    : c.size() == 2 ? Geodesic::between(end(c[0]), end(c[1]))
                                    : throw precondition_error("tube center needs two or four entries");
    return Tube{core, param};
  }
  throw precondition_error("unknown body kind: " + kind);
}

}  // namespace

ObstacleFamily family_from_json(const json& j) {
  ObstacleFamily fam;
  const json* bodies = &j;
  if (j.is_object()) {
    bodies = &j.at("bodies");
    fam.delta0 = j.value("delta0", 0.0);
    if (j.contains("designated")) fam.designated = j.at("designated").get<std::size_t>();
  }
  if (!bodies->is_array()) throw precondition_error("obstacle file must hold an array of bodies");
  for (const auto& b : *bodies) fam.bodies.push_back(body_from_json(b));
  if (!fam.designated) {
    for (std::size_t i = 0; i < fam.bodies.size(); ++i)
      if (auto* H = std::get_if<Horoball>(&fam.bodies[i]); H && H->center.inf) {
        fam.designated = i;
        break;
      }
  }
  if (fam.designated && *fam.designated >= fam.bodies.size()) throw precondition_error("designated index out of range");
  fam.truncation = "explicit family of " + std::to_string(fam.bodies.size()) + " bodies";
  return fam;
}

ObstacleFamily load_obstacles(const std::string& spec, const std::vector<std::string>& windows) {
  auto ford = [&](const std::string& prefix, Ring ring) -> std::optional<ObstacleFamily> {
    if (spec.rfind(prefix, 0) != 0) return std::nullopt;
    int Q = std::stoi(spec.substr(prefix.size()));
    FordWindow w;
    for (const auto& s : windows) {
      auto v = parse_reals(s);
      if (ring == Ring::Rational && v.size() == 2) {
        w.lo = v[0], w.hi = v[1];
      } else if (ring == Ring::Gaussian && v.size() == 3) {
        w.disks.push_back({cplx(v[0], v[1]), v[2]});
      } else {
        throw precondition_error("window needs lo,hi (ford) or x,y,r (gford): " + s);
      }
    }
    return ford_family(Q, ring, w).obstacles();
  };
  if (auto f = ford("ford:", Ring::Rational)) return *f;
  if (auto f = ford("gford:", Ring::Gaussian)) return *f;
  std::ifstream in(spec);
  if (!in) throw precondition_error("cannot open obstacle file: " + spec);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw precondition_error(std::string("bad obstacle file: ") + e.what());
  }
  return family_from_json(j);
}

nlohmann::ordered_json body_to_json(const ConvexBody& C) {
  nlohmann::ordered_json j;
  if (auto* H = std::get_if<Horoball>(&C)) {
    j["kind"] = "horoball";
    if (H->center.inf)
      j["center"] = "inf";
    else
      j["center"] = {H->center.z.real(), H->center.z.imag()};
    j["param"] = H->size;
  } else if (auto* B = std::get_if<Ball>(&C)) {
    j["kind"] = "ball";
    j["center"] = {B->center.z.real(), B->center.z.imag(), B->center.h};
    j["param"] = B->r;
  } else {
    const auto& T = std::get<Tube>(C);
    j["kind"] = "tube";
    auto e = [](const Boundary& b) { return b.inf ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(b.z.real()); };
    j["center"] = {e(T.core.minus()), e(T.core.plus())};
    j["param"] = T.r;
  }
  return j;
}

namespace {

struct View {
  double x0, x1, y1;
  double W = 800.0, H = 400.0;
  double sx(double x) const { return (x - x0) / (x1 - x0) * W; }
  double sy(double y) const { return H - y / y1 * H; }
  double sl(double l) const { return l / (x1 - x0) * W; }
};

void geodesic_path(std::ostream& os, const View& v, const Geodesic& g, const char* style) {
  const auto &a = g.minus(), &b = g.plus();
  if (a.inf || b.inf) {
    double x = (a.inf ? b : a).z.real();
    os << "<line x1=\"" << v.sx(x) << "\" y1=\"" << v.sy(0) << "\" x2=\"" << v.sx(x) << "\" y2=\"0\" " << style
       << "/>\n";
    return;
  }
  double xa = a.z.real(), xb = b.z.real();
  double r = std::abs(xb - xa) / 2.0;
  os << "<path d=\"M " << v.sx(xa) << " " << v.sy(0) << " A " << v.sl(r) << " " << v.sl(r) << " 0 0 1 " << v.sx(xb)
     << " " << v.sy(0) << "\" fill=\"none\" " << style << "/>\n";
}

}  // namespace

std::string svg_scene(const ObstacleFamily& fam, const std::vector<Geodesic>& iterates, const Geodesic& final_g) {
  // frame the final geodesic's finite endpoints with some margin
  std::vector<double> xs;
  for (const auto& b : {final_g.minus(), final_g.plus()})
    if (!b.inf) xs.push_back(b.z.real());
  if (xs.empty()) xs.push_back(0.0);
  double lo = *std::min_element(xs.begin(), xs.end()), hi = *std::max_element(xs.begin(), xs.end());
  double pad = std::max(0.5, 0.25 * (hi - lo));
  View v{lo - pad, hi + pad, 0.5 * (hi - lo + 2.0 * pad)};

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << v.W << "\" height=\"" << v.H
     << "\" viewBox=\"0 0 " << v.W << " " << v.H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& C : fam.bodies) {
    if (auto* H = std::get_if<Horoball>(&C)) {
      if (H->center.inf) {
        os << "<rect x=\"0\" y=\"0\" width=\"" << v.W << "\" height=\"" << std::max(0.0, v.sy(H->size))
           << "\" fill=\"#dde8f4\" stroke=\"#4a78a8\"/>\n";
        continue;
      }
      double x = H->center.z.real(), r = H->size / 2.0;
      if (x + r < v.x0 || x - r > v.x1 || v.sl(r) < 0.2) continue;
      os << "<circle cx=\"" << v.sx(x) << "\" cy=\"" << v.sy(r) << "\" r=\"" << v.sl(r)
         << "\" fill=\"#dde8f4\" stroke=\"#4a78a8\" stroke-width=\"0.5\"/>\n";
    } else if (auto* B = std::get_if<Ball>(&C)) {
      double x = B->center.z.real(), cy = B->center.h * std::cosh(B->r), r = B->center.h * std::sinh(B->r);
      if (x + r < v.x0 || x - r > v.x1) continue;
      os << "<circle cx=\"" << v.sx(x) << "\" cy=\"" << v.sy(cy) << "\" r=\"" << v.sl(r)
         << "\" fill=\"#f4e6d0\" stroke=\"#a8784a\" stroke-width=\"0.5\"/>\n";
    }
  }
  for (std::size_t i = 0; i + 1 < iterates.size(); ++i)
    geodesic_path(os, v, iterates[i], "stroke=\"#999999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"");
  geodesic_path(os, v, final_g, "stroke=\"#c0392b\" stroke-width=\"1.6\"");
  os << "<line x1=\"0\" y1=\"" << v.sy(0) << "\" x2=\"" << v.W << "\" y2=\"" << v.sy(0)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace hypen::cli
