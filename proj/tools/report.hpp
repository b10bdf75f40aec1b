#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hypen::cli {

using Row = nlohmann::ordered_json;

// Rows with a "pass" field decide the exit code; the others are informational.
class Report {
 public:
  void add(Row row);
  void note(std::string s) { notes_.push_back(std::move(s)); }
  void set_seed(std::uint64_t s) { seed_ = s; }
  bool ok() const;

  std::string json(double runtime_ms) const;
  std::string table() const;

 private:
  std::vector<Row> rows_;
  std::vector<std::string> notes_;
  std::uint64_t seed_ = 0;
};

// {"name", "computed", "expected", "tol", "pass"}, pass = |computed - expected| <= tol
Row check_row(const std::string& name, double computed, double expected, double tol);
// computed <= limit + tol
Row bound_row(const std::string& name, double computed, double limit, double tol);
Row info_row(const std::string& name, const nlohmann::ordered_json& computed);

}  // namespace hypen::cli
