#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "subcount/estimator.hpp"

namespace subcount::report {

/// Fixed six-significant-digit rendering used in every report.
inline std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <class T>
std::string optional_number(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

/// Ordered (name, value) pairs; rendered either as `name=value` lines or as
/// a two-line CSV.
class Record {
 public:
  Record& add(std::string name, std::string value) {
    fields_.emplace_back(std::move(name), std::move(value));
    return *this;
  }
  Record& add(std::string name, double value) { return add(std::move(name), number(value)); }
  Record& add(std::string name, std::uint64_t value) {
    return add(std::move(name), std::to_string(value));
  }
  Record& add(std::string name, int value) { return add(std::move(name), std::to_string(value)); }

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  void write_text(std::ostream& out) const {
    for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
  }

  void write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].second;
    out << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// Every EstimateResult field except the per-sample values.
inline void append_estimate(Record& rec, const EstimateResult& r) {
  rec.add("target", to_string(r.target))
      .add("point", r.point)
      .add("half_width_s", r.half_width_s)
      .add("bias_term", r.bias_term)
      .add("lower", r.lower)
      .add("upper", r.upper)
      .add("samples_n", r.samples_n)
      .add("confidence_p", r.confidence_p)
      .add("delta", r.delta)
      .add("lambda", r.lambda)
      .add("seed", r.seed);
}

inline void write_profile_text(std::ostream& out, const DegreeTailProfile& prof) {
  out << "h=" << prof.h << '\n'
      << "moment=" << number(prof.moment) << '\n'
      << "population=" << prof.population << '\n'
      << "delta\tlambda\tmin_n_absolute\tmin_n_relative\tmin_n_anchored\texceeds_population\n";
  for (const auto& row : prof.rows) {
    out << row.delta << '\t' << number(row.lambda) << '\t' << optional_number(row.min_n_absolute)
        << '\t' << optional_number(row.min_n_relative) << '\t'
        << optional_number(row.min_n_anchored) << '\t'
        << (row.exceeds_population ? "yes" : "no") << '\n';
  }
}

inline void write_profile_csv(std::ostream& out, const DegreeTailProfile& prof) {
  out << "delta,lambda,min_n_absolute,min_n_relative,min_n_anchored,exceeds_population\n";
  for (const auto& row : prof.rows) {
    out << row.delta << ',' << number(row.lambda) << ',' << optional_number(row.min_n_absolute)
        << ',' << optional_number(row.min_n_relative) << ','
        << optional_number(row.min_n_anchored) << ',' << (row.exceeds_population ? 1 : 0)
        << '\n';
  }
}

}  // namespace subcount::report
