#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "subcount/run.hpp"

namespace subcount {
namespace {

const std::string kData = SUBCOUNT_DATA_DIR;

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output invoke(const RunConfig& c) {
  std::ostringstream out, err;
  int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> parse_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

// Writes a random graph to a temporary file that is removed on scope exit.
class TempGraph {
 public:
  TempGraph(std::size_t n, double p, std::uint64_t seed) : path_(testing::TempDir() + "g" + std::to_string(seed) + ".edges") {
    std::mt19937_64 rng(seed);
    std::ofstream f(path_);
    write_edge_list(erdos_renyi(n, p, rng), f);
  }
  ~TempGraph() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

RunConfig estimate_config(const std::string& graph) {
  RunConfig c;
  c.command = Command::estimate;
  c.graph_path = graph;
  c.pattern_spec = "clique:3";
  c.delta = 6;
  c.samples = 400;
  c.seed = 11;
  return c;
}

TEST(RunExact, TriangleInK4) {
  RunConfig c;
  c.command = Command::exact;
  c.graph_path = kData + "/k4.edges";
  auto r = invoke(c);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "emb=24\nhom=24\n");
}

TEST(RunSampleSize, Examples) {
  RunConfig c;
  c.command = Command::sample_size;
  c.delta = 3;
  c.h = 3;
  c.s = 1.0;
  auto r = invoke(c);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "N=30\n");

  c.s.reset();
  c.epsilon = 0.1;
  c.moment = 4.0;
  r = invoke(c);
  EXPECT_EQ(parse_text(r.out)["N_relative"], "185");

  c.epsilon.reset();
  c.s = 0.5;
  c.delta = 4;
  c.h = 4;
  c.anchor_size = 2;
  r = invoke(c);
  EXPECT_EQ(parse_text(r.out)["N_anchored"], "598");
}

TEST(RunVerify, AllChecksPass) {
  RunConfig c;
  c.command = Command::verify;
  auto r = invoke(c);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1000/1000 inequality checks passed\n");
}

TEST(RunDegrees, CsvProfile) {
  RunConfig c;
  c.command = Command::degrees;
  c.degrees_csv_path = kData + "/star4_degrees.csv";
  c.h = 3;
  c.output_format = OutputFormat::csv;
  auto r = invoke(c);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(split(header, ',')[0], "delta");
  std::vector<std::string> lambdas;
  while (std::getline(in, row)) lambdas.push_back(split(row, ',')[1]);
  EXPECT_EQ(lambdas, (std::vector<std::string>{"4", "3.2", "0"}));
}

TEST(RunEstimate, CsvFieldsParseBack) {
  TempGraph g(120, 0.05, 3);
  RunConfig c = estimate_config(g.path());
  c.output_format = OutputFormat::csv;
  auto r = invoke(c);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string header, values;
  std::getline(in, header);
  std::getline(in, values);
  auto keys = split(header, ',');
  auto vals = split(values, ',');
  ASSERT_EQ(keys.size(), vals.size());
  std::map<std::string, std::string> kv;
  for (std::size_t i = 0; i < keys.size(); ++i) kv[keys[i]] = vals[i];
  for (auto key : {"point", "half_width_s", "bias_term", "lower", "upper", "samples_n",
                   "confidence_p", "delta", "lambda", "seed", "exact"}) {
    ASSERT_TRUE(kv.count(key)) << key;
  }
  EXPECT_EQ(kv["samples_n"], "400");
  EXPECT_EQ(kv["delta"], "6");
  EXPECT_EQ(kv["target"], "per_vertex_density");
  double lower = std::stod(kv["lower"]), point = std::stod(kv["point"]), upper = std::stod(kv["upper"]);
  EXPECT_LE(lower, point);
  EXPECT_LE(point, upper);
  // The text form carries the same fields.
  c.output_format = OutputFormat::text;
  auto text = parse_text(invoke(c).out);
  for (const auto& [k, v] : kv) EXPECT_EQ(text[k], v) << k;
}

TEST(RunEstimate, ByteIdenticalAcrossRunsAndThreads) {
  TempGraph g(200, 0.04, 5);
  for (auto cmd : {Command::estimate, Command::estimate_anchored}) {
    RunConfig c = estimate_config(g.path());
    c.command = cmd;
    c.anchor_spec = "edge";
    auto first = invoke(c);
    ASSERT_EQ(first.code, kExitOk) << first.err;
    EXPECT_EQ(invoke(c).out, first.out);
    c.threads = 8;
    EXPECT_EQ(invoke(c).out, first.out);
  }
}

TEST(RunEstimate, AnchoredReportsSamplerAndPopulation) {
  RunConfig c = estimate_config(kData + "/k4.edges");
  c.command = Command::estimate_anchored;
  c.anchor_spec = "edge";
  c.delta = 4;
  auto r = invoke(c);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto kv = parse_text(r.out);
  EXPECT_EQ(kv["sampler"], "edge");
  EXPECT_EQ(kv["anchor_embeddings"], "12");
  EXPECT_EQ(kv["point"], "2");
  EXPECT_EQ(kv["exact"], "2");
  EXPECT_EQ(kv["exact_in_interval"], "yes");
  EXPECT_EQ(kv["target"], "per_anchor_density");
}

TEST(RunErrors, UsageErrorsNameTheFlag) {
  RunConfig c = estimate_config(kData + "/k4.edges");
  c.delta.reset();
  auto r = invoke(c);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--delta"), std::string::npos);

  c = estimate_config(kData + "/k4.edges");
  c.s = 1.0;
  r = invoke(c);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--samples"), std::string::npos);

  c = estimate_config(kData + "/k4.edges");
  c.pattern_spec = "blob:3";
  r = invoke(c);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--pattern"), std::string::npos);

  c = estimate_config(kData + "/k4.edges");
  c.p_conf = 0.0;
  EXPECT_EQ(invoke(c).code, kExitUsage);

  c = estimate_config(kData + "/k4.edges");
  c.tree_strategy = TreeStrategy::min_internal;
  c.pattern_spec = "clique:9";
  r = invoke(c);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--tree"), std::string::npos);
}

TEST(RunErrors, DataErrorsNameTheFile) {
  RunConfig c;
  c.command = Command::exact;
  c.graph_path = kData + "/missing.edges";
  auto r = invoke(c);
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("missing.edges"), std::string::npos);

  std::string bad = testing::TempDir() + "bad.edges";
  {
    std::ofstream f(bad);
    f << "0 1\n1 1\n";
  }
  c.graph_path = bad;
  r = invoke(c);
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("bad.edges"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  std::remove(bad.c_str());

  // No wedge exists in a perfect matching.
  std::string matching = testing::TempDir() + "matching.edges";
  {
    std::ofstream f(matching);
    f << "0 1\n2 3\n";
  }
  RunConfig w = estimate_config(matching);
  w.command = Command::estimate_anchored;
  w.anchor_spec = "wedge";
  EXPECT_EQ(invoke(w).code, kExitData);
  std::remove(matching.c_str());
}

TEST(RunErrors, OverflowIsReported) {
  RunConfig c;
  c.command = Command::sample_size;
  c.delta = 1000;
  c.h = 9;
  c.s = 1e-300;
  EXPECT_EQ(invoke(c).code, kExitOverflow);
}

}  // namespace
}  // namespace subcount
