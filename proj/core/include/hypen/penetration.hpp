#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypen/models.hpp"

namespace hypen {

struct Tube {
  Geodesic core;
  double r = 1.0;
};

using ConvexBody = std::variant<Horoball, Ball, Tube>;

// An interior start point (rays) or a boundary start point (lines).
using Source = std::variant<Boundary, Point>;

std::optional<ConvexBody> shrink(const ConvexBody& C, double t);
ConvexBody apply(const Moebius& m, const ConvexBody& C);
bool contains(const ConvexBody& C, const Point& p);
double dist_to_body(const ConvexBody& C, const Point& p);
bool at_infinity_of(const ConvexBody& C, const Boundary& xi);
std::string kind_name(const ConvexBody& C);

enum class PenKind { Length, PH, IPP, FTP, BP, CRP };
PenKind parse_pen_kind(const std::string& s);
std::string pen_kind_name(PenKind k);

struct Interval {
  ExtReal lo, hi;
  ExtReal length() const { return hi - lo; }
};

// Geodesic from the source toward `end`. Rays from an interior point have
// their anchor at the point, so the ray is t >= 0.
Geodesic ray_from(const Source& src, const Boundary& end);
// Start parameter of the ray: 0-anchored point sources, -inf for boundary.
std::optional<double> ray_start(const Geodesic& g, const Source& src);

// Maximal parameter interval of the full line inside C.
std::optional<Interval> entry_exit(const Geodesic& g, const ConvexBody& C);
// Same, clipped to the ray t >= tmin when tmin is set.
std::optional<Interval> entry_exit(const Geodesic& g, const ConvexBody& C, std::optional<double> tmin);

// Closest point of C to a point outside C or to a boundary point not in the
// boundary at infinity of C. Empty when the closest point is at infinity.
std::optional<Point> closest_point(const ConvexBody& C, const Source& x);

ExtReal penetration(const Geodesic& g, const ConvexBody& C, PenKind kind, const Source& xi0);

// Signed Busemann height reached along the ray (positive means the ray enters
// the interior). Horoballs and balls only; +inf when the ray ends at the center.
ExtReal sup_height(const Geodesic& g, const ConvexBody& C, std::optional<double> tmin);

struct LemmaReport {
  std::string lemma;
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;  // max over trials of lhs - bound (<= 0 when all pass)
  double max_lhs = 0.0;
  long rejections = 0;  // generator draws discarded for failing the hypotheses
  std::uint64_t seed = 0;
};

std::vector<std::string> lemma_ids();
LemmaReport check_inequality(const std::string& lemma_id, int trials, std::uint64_t seed);

// Penetration property (i) table
struct PenPair {
  std::string name;
  std::string body;
  PenKind kind;
};
std::vector<PenPair> penetration_pairs();
LemmaReport check_penetration_property(const std::string& pair_name, int trials, std::uint64_t seed);
LemmaReport check_lipschitz_property(const std::string& pair_name, int trials, std::uint64_t seed);

// Deterministic per-trial seeding
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hypen
