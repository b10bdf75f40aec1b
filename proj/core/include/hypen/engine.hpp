#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypen/constants.hpp"
#include "hypen/penetration.hpp"

namespace hypen {

struct family_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct step_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No sign change of the length residual was found on the level set.
struct prescription_infeasible : std::runtime_error {
  std::vector<double> thetas, lengths;  // the sampled grid
  prescription_infeasible(const std::string& what, std::vector<double> th, std::vector<double> len)
      : std::runtime_error(what), thetas(std::move(th)), lengths(std::move(len)) {}
};

struct ObstacleFamily {
  std::vector<ConvexBody> bodies;
  double delta0 = 0.0;
  std::optional<std::size_t> designated;
  std::string truncation;  // how the enumerated bodies were cut from an infinite family
};

// Largest diameter of C1 ∩ C2 found: 0 for disjoint interiors, otherwise a
// sampled chord maximization through a common point.
double intersection_diameter(const ConvexBody& a, const ConvexBody& b);
// Interiors pairwise disjoint (up to 1e-12 relative slack for tangency).
bool interiors_disjoint(const ConvexBody& a, const ConvexBody& b);
// Pairs whose horizontal shadows in the upper half space overlap; every
// pair with meeting interiors is among them.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<ConvexBody>& bodies);
// Throws family_error when some pair meets in diameter > delta0 + 1e-8.
void check_almost_disjoint(const ObstacleFamily& fam);

struct Step {
  int k = 0;
  long obstacle = -1;  // -1 for the initial ray
  double t_entry = 0.0;
  Boundary endpoint;
};

struct ObstacleValue {
  std::size_t index = 0;
  double entry = 0.0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct CheckRow {
  std::string name;
  double worst = 0.0;  // worst observed quantity
  double limit = 0.0;  // threshold it is compared against
  bool pass = true;
};

struct ConstructionTrace {
  std::vector<Step> steps;
  std::vector<Geodesic> iterates;
  Geodesic final_geodesic;
  std::vector<ObstacleValue> report;
  std::vector<CheckRow> checks;
  std::vector<std::string> notes;
  bool converged = false;
  bool ok() const;
};

// Unclouding of a family of horoballs and balls with disjoint interiors.
// With a boundary source the family must have its designated horoball
// centered there.
struct UncloudOptions {
  double mu1 = 1.042;
  double horizon = 30.0;
  int max_iter = 10000;
  std::optional<Boundary> initial_end;  // default: straight down (interior) or toward 0 in the chart
};
ConstructionTrace uncloud(const ObstacleFamily& fam, const Source& xi0, const UncloudOptions& opt);

// Threshold bookkeeping of the local prescription cases.
struct PrescriptionRange {
  std::string case_name;
  double h_min = 0.0;
  std::optional<double> h_max;
  double h0_min = 0.0;
  bool strict_h0 = false;  // h' > h0_min rather than >=
  bool applicable = true;
};
PrescriptionRange prescription_range(const ConvexBody& C0, PenKind f0, const ConvexBody& Cn, Eps eps, double delta);

// Level set {b : f0(line from xi0 to b) = h} as a finite union of circles
// b = chart(center + radius e^{i theta}).
struct LevelCircle {
  Moebius chart;
  cplx center;
  double radius = 0.0;
  Boundary at(double theta) const;
  double theta_of(const Boundary& b) const;
};
std::vector<LevelCircle> level_set(const ConvexBody& C0, PenKind f0, double h, const Boundary& xi0);

struct LocalPrescription {
  Geodesic g;
  double f0_residual = 0.0;
  double length_residual = 0.0;
  bool meets_c0_first = true;
  bool zero_move = false;
  PrescriptionRange range;
  bool in_range = true;
  std::vector<std::string> warnings;
};

struct LocalOptions {
  std::optional<Eps> eps;  // default: the weakest convexity among C0, Cn
  double delta = 0.0;
};
LocalPrescription local_prescribe(const ConvexBody& C0, PenKind f0, double h, const ConvexBody& Cn, double target,
                                  const Boundary& xi0, const Geodesic& current, const LocalOptions& opt = {});

struct PrescribeOptions {
  PenKind f0 = PenKind::PH;
  double h = 7.0;
  ParamSet params;
  std::optional<double> h0p;  // default h0(params)
  double horizon = 30.0;
  int max_iter = 10000;
  double theta0 = 0.0;                  // start point on the level set
  std::optional<Boundary> initial_end;  // overrides theta0
};
ConstructionTrace prescribe(const ObstacleFamily& fam, const Boundary& xi0, const PrescribeOptions& opt);

struct LineTrace {
  ConstructionTrace first, second;
  std::vector<ObstacleValue> two_sided;
  double h1_dprime = 0.0;
  bool ok() const;
};
LineTrace prescribe_line(const ObstacleFamily& fam, const Boundary& xi0, const PrescribeOptions& opt);

// Grid simulation of the sup-recurrence and of the auxiliary x-sequence.
struct RecurrenceResult {
  double max_u = 0.0, min_u = 0.0;
  double x_N = 0.0;  // largest final x over all start indices
  double grid_error = 0.0;  // change of the extremes against half resolution
  bool sandwich_ok = true;
  bool x_ok = true;
};
RecurrenceResult u_recurrence(double c, double cp, double cpp, double h_star, const std::vector<double>& t_seq,
                              int grid);

struct LimsupResult {
  std::vector<int> digits;
  double achieved_limsup = 0.0;
  std::vector<double> excursions;
  std::vector<std::size_t> peaks;
  double off_peak_max = 0.0;
};
LimsupResult limsup_prescribe(double h, int digits_budget);

}  // namespace hypen
