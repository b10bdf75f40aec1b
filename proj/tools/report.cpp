#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifndef HYPEN_VERSION
#define HYPEN_VERSION "unknown"
#endif

namespace hypen::cli {

void Report::add(Row row) { rows_.push_back(std::move(row)); }

bool Report::ok() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return !r.contains("pass") || r["pass"].get<bool>(); });
}

std::string Report::json(double runtime_ms) const {
  nlohmann::ordered_json j;
  j["rows"] = rows_;
  j["meta"] = {{"seed", seed_}, {"version", HYPEN_VERSION}, {"runtime_ms", std::round(runtime_ms * 1000.0) / 1000.0}};
  if (!notes_.empty()) j["meta"]["notes"] = notes_;
  return j.dump(2) + "\n";
}

namespace {

std::string cell(const nlohmann::ordered_json& v, const std::string& key) {
  if (v.is_boolean()) return key == "pass" ? (v.get<bool>() ? "pass" : "FAIL") : (v.get<bool>() ? "yes" : "no");
  if (v.is_string()) {
    // long strings are shortened in the table only
    auto s = v.get<std::string>();
    return s.size() > 72 ? s.substr(0, 69) + "..." : s;
  }
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::vector<std::string> keys_of(const Row& r) {
  std::vector<std::string> k;
  for (auto it = r.begin(); it != r.end(); ++it) k.push_back(it.key());
  return k;
}

}  // namespace

std::string Report::table() const {
  std::ostringstream os;
  // consecutive rows led by the same key share one header over the union of their columns
  for (std::size_t i = 0; i < rows_.size();) {
    auto lead = keys_of(rows_[i]).front();
    std::vector<std::string> keys;
    std::size_t j = i;
    for (; j < rows_.size() && keys_of(rows_[j]).front() == lead; ++j)
      for (const auto& key : keys_of(rows_[j]))
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    if (auto it = std::find(keys.begin(), keys.end(), "pass"); it != keys.end()) std::rotate(it, it + 1, keys.end());
    auto get = [&](std::size_t r, const std::string& key) {
      return rows_[r].contains(key) ? cell(rows_[r][key], key) : std::string("-");
    };
    std::vector<std::size_t> w(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c) {
      w[c] = keys[c].size();
      for (std::size_t r = i; r < j; ++r) w[c] = std::max(w[c], get(r, keys[c]).size());
    }
    auto line = [&](auto&& at) {
      std::string s;
      for (std::size_t c = 0; c < keys.size(); ++c) {
        std::string v = at(c);
        s += v + std::string(c + 1 < keys.size() ? w[c] - v.size() + 2 : 0, ' ');
      }
      os << s << "\n";
    };
    if (i > 0) os << "\n";
    line([&](std::size_t c) { return keys[c]; });
    for (std::size_t r = i; r < j; ++r) line([&](std::size_t c) { return get(r, keys[c]); });
    i = j;
  }
  for (const auto& n : notes_) os << "# " << n << "\n";
  os << (ok() ? "all checks pass" : "CHECK FAILURE") << "\n";
  return os.str();
}

Row check_row(const std::string& name, double computed, double expected, double tol) {
  return {{"name", name}, {"computed", computed}, {"expected", expected}, {"tol", tol},
          {"pass", std::abs(computed - expected) <= tol}};
}

Row bound_row(const std::string& name, double computed, double limit, double tol) {
  return {{"name", name}, {"computed", computed}, {"expected", limit}, {"tol", tol}, {"pass", computed <= limit + tol}};
}

Row info_row(const std::string& name, const nlohmann::ordered_json& computed) {
  return {{"name", name}, {"computed", computed}};
}

}  // namespace hypen::cli
