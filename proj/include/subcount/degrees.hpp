#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "subcount/count.hpp"
#include "subcount/error.hpp"
#include "subcount/graph.hpp"

namespace subcount {

/// Histogram of vertex degrees: degree -> number of vertices with it.
class DegreeDistribution {
 public:
  DegreeDistribution() = default;

  static DegreeDistribution of(const Graph& g) {
    DegreeDistribution dist;
    for (Vertex v = 0; v < g.vertex_count(); ++v) dist.add(g.degree(v), 1);
    return dist;
  }

  /// Parses `degree,count` CSV. The header row is required; each data row
  /// needs a non-negative degree and a positive count. Repeated degrees add.
  static DegreeDistribution parse_csv(std::istream& in) {
    DegreeDistribution dist;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (!header_seen) {
        std::string compact;
        for (char c : line) {
          if (c != ' ' && c != '\t') compact.push_back(c);
        }
        if (compact != "degree,count") {
          throw ParseError(line_no, "expected header 'degree,count'");
        }
        header_seen = true;
        continue;
      }
      auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw ParseError(line_no, "expected 'degree,count'");
      }
      auto degree = parse_field(line.substr(0, comma), line_no, "degree");
      auto count = parse_field(line.substr(comma + 1), line_no, "count");
      if (count == 0) throw ParseError(line_no, "count must be positive");
      dist.add(degree, count);
    }
    if (!header_seen) throw ParseError(0, "empty degree distribution file");
    return dist;
  }

  static DegreeDistribution parse_csv(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
  }

  void add(std::uint64_t degree, std::uint64_t count) {
    counts_[degree] += count;
    population_ += count;
  }

  const std::map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t population() const { return population_; }
  std::uint64_t max_degree() const {
    return counts_.empty() ? 0 : counts_.rbegin()->first;
  }

  /// E[D^k].
  double moment(unsigned k) const { return tail(k + 1, 0); }

  /// E[D^{h-1} 1{D >= delta}].
  double tail(unsigned h, std::uint64_t delta) const {
    if (population_ == 0) {
      throw UndefinedMomentError("moment of an empty degree distribution");
    }
    if (h == 0) throw ParameterError("pattern size h must be >= 1");
    double sum = 0.0;
    for (auto it = counts_.lower_bound(delta); it != counts_.end(); ++it) {
      sum += static_cast<double>(it->second) *
             real_pow(static_cast<double>(it->first), h - 1);
    }
    return sum / static_cast<double>(population_);
  }

 private:
  static std::uint64_t parse_field(std::string field, std::size_t line_no,
                                   const char* name) {
    auto b = field.find_first_not_of(" \t");
    auto e = field.find_last_not_of(" \t");
    field = b == std::string::npos ? "" : field.substr(b, e - b + 1);
    if (field.empty() ||
        field.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(line_no, std::string("malformed ") + name + " '" +
                                    field + "'");
    }
    try {
      return std::stoull(field);
    } catch (const std::exception&) {
      throw ParseError(line_no, std::string(name) + " out of range");
    }
  }

  std::map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t population_ = 0;
};

}  // namespace subcount
