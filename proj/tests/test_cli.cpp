#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hermclust/graph.hpp"
#include "hermclust/metrics.hpp"
#include "hermclust/partition.hpp"
#include "hermclust/pipelines.hpp"
#include "json.hpp"

namespace hermclust {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hermclust_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the tool; standard output and error land in files.
  int run(const std::string& args) {
    const std::string cmd = std::string(HERMCLUST_CLI) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string out() const { return slurp(path("stdout")); }
  std::string err() const { return slurp(path("stderr")); }

  static std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> fields;
      std::istringstream l(line);
      std::string f;
      while (std::getline(l, f, ',')) fields.push_back(f);
      rows.push_back(fields);
    }
    return rows;
  }

  void generate(const std::string& prefix, const std::string& extra) {
    ASSERT_EQ(run("generate -o " + path(prefix) + " " + extra), 0) << err();
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateWritesGraphTruthAndMetadata) {
  generate("g", "--k 3 --n 10 --p 1 --eta 0 --seed 5");
  const Digraph g = read_edge_list_file(path("g.edges"));
  EXPECT_EQ(g.num_vertices(), 30);
  const Partition truth = read_partition_file(path("g.truth"));
  EXPECT_EQ(truth.size(), 30u);
  EXPECT_EQ(truth.k, 3);
  const auto meta = nlohmann::json::parse(slurp(path("g.meta.json")));
  EXPECT_EQ(meta["meta"]["version"], HERMCLUST_VERSION);
  EXPECT_EQ(meta["meta"]["seed"], 5);
  EXPECT_EQ(meta["meta"]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(meta["params"]["k"], 3);
}

TEST_F(Cli, GenerateEmptyAndReproducible) {
  generate("e", "--k 3 --n 4 --p 0 --q 0");
  EXPECT_EQ(read_edge_list_file(path("e.edges")).num_edges(), 0u);
  generate("a", "--k 3 --n 20 --p 0.3 --eta 0.2 --seed 9");
  generate("b", "--k 3 --n 20 --p 0.3 --eta 0.2 --seed 9");
  EXPECT_EQ(slurp(path("a.edges")), slurp(path("b.edges")));
  EXPECT_EQ(slurp(path("a.truth")), slurp(path("b.truth")));
  EXPECT_EQ(slurp(path("a.meta.json")), slurp(path("b.meta.json")));
}

TEST_F(Cli, ClusterThenEvaluate) {
  generate("g", "--k 3 --n 40 --p 0.5 --eta 0 --seed 2");
  ASSERT_EQ(run("cluster --graph " + path("g.edges") + " --k 3 --method herm -o " + path("pred")), 0) << err();
  const auto meta = nlohmann::json::parse(slurp(path("pred.meta.json")));
  EXPECT_EQ(meta["config"]["method"], "herm");
  ASSERT_EQ(run("evaluate --pred " + path("pred") + " --truth " + path("g.truth")), 0) << err();
  const auto rows = csv(out());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"ari", "misclassified"}));
  EXPECT_GE(std::stod(rows[1][0]), 0.95);
  // Metadata goes to standard error when the data goes to standard output.
  EXPECT_NE(err().find("config_hash"), std::string::npos);
}

TEST_F(Cli, ClusterJsonOutput) {
  generate("g", "--k 3 --n 10 --p 0.5 --eta 0");
  ASSERT_EQ(run("cluster --graph " + path("g.edges") + " --k 3 --format json"), 0) << err();
  const auto doc = nlohmann::json::parse(out());
  EXPECT_EQ(doc["labels"].size(), 30u);
  EXPECT_EQ(doc["meta"]["result"]["method"], "Herm");
}

TEST_F(Cli, UsageErrors) {
  generate("g", "--k 3 --n 5 --p 0.5");
  EXPECT_EQ(run("cluster --graph " + path("g.edges") + " --k 3 --method spectral"), 2);
  EXPECT_NE(err().find("herm-rw"), std::string::npos);
  EXPECT_EQ(run("cluster --graph " + path("g.edges") + " --k 16"), 2);
  EXPECT_EQ(run("cluster --k 3"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("cluster --graph " + path("g.edges") + " --k 3 --format xml"), 2);
  EXPECT_EQ(run("cluster --graph " + path("missing.edges") + " --k 3"), 1);
}

TEST_F(Cli, EvaluateIdenticalMismatchedAndPairs) {
  generate("g", "--k 2 --n 6 --p 0.6 --eta 0.1");
  ASSERT_EQ(run("evaluate --pred " + path("g.truth") + " --truth " + path("g.truth")), 0);
  EXPECT_EQ(csv(out())[1][0], "1");
  std::ofstream(path("short")) << "0\n1\n";
  EXPECT_EQ(run("evaluate --pred " + path("short") + " --truth " + path("g.truth")), 2);
  ASSERT_EQ(run("evaluate --pred " + path("g.truth") + " --graph " + path("g.edges")), 0) << err();
  const auto rows = csv(out());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b", "ci", "ci_size", "ci_vol"}));
  EXPECT_EQ(run("evaluate --pred " + path("g.truth") + " --graph " + path("g.edges") + " --truth " + path("g.truth")), 2);
  ASSERT_EQ(run("evaluate --format json --pred " + path("g.truth") + " --graph " + path("g.edges") + " --truth " +
                path("g.truth")),
            0);
  const auto doc = nlohmann::json::parse(out());
  EXPECT_EQ(doc["ari"], 1.0);
  EXPECT_EQ(doc["pairs"].size(), 1u);
}

TEST_F(Cli, SweepCardinalityAndRestart) {
  const std::string args = "sweep --k 3 --n 12 --p 0.5 --param eta --values 0 0.1 0.2 --seeds 2 --methods herm naive";
  ASSERT_EQ(run(args + " --rows " + path("rows.csv") + " -o " + path("agg.csv")), 0) << err();
  std::ifstream rows_in(path("rows.csv"));
  const auto rows = read_sweep_csv(rows_in);
  EXPECT_EQ(rows.size(), 12u);
  std::ifstream agg_in(path("agg.csv"));
  const auto agg = read_aggregate_csv(agg_in);
  ASSERT_EQ(agg.size(), 6u);
  for (const auto& a : agg) EXPECT_EQ(a.runs, 2);
  EXPECT_TRUE(fs::exists(path("agg.csv.meta.json")));

  // A rerun reuses every recorded row.
  ASSERT_EQ(run(args + " --rows " + path("rows.csv") + " -o " + path("agg2.csv")), 0) << err();
  EXPECT_EQ(err().find("seed="), std::string::npos);
  std::ifstream again(path("rows.csv"));
  EXPECT_EQ(read_sweep_csv(again).size(), 12u);

  ASSERT_EQ(run(args + " --format json"), 0) << err();
  const auto doc = nlohmann::json::parse(out());
  EXPECT_EQ(doc["rows"].size(), 12u);
  EXPECT_EQ(doc["aggregate"].size(), 6u);
}

TEST_F(Cli, ConfigFileWithOverrides) {
  generate("g", "--k 3 --n 10 --p 0.5 --eta 0");
  std::ofstream(path("cfg.json")) << R"({"graph": ")" << path("g.edges") << R"(", "k": 3, "method": "naive", "row_normalize": true})";
  ASSERT_EQ(run("cluster --config " + path("cfg.json") + " --method herm -o " + path("p")), 0) << err();
  const auto meta = nlohmann::json::parse(slurp(path("p.meta.json")));
  EXPECT_EQ(meta["config"]["method"], "herm");
  EXPECT_EQ(meta["config"]["row-normalize"], "true");
  std::ofstream(path("bad.json")) << R"({"kay": 3})";
  EXPECT_EQ(run("cluster --config " + path("bad.json") + " --graph " + path("g.edges") + " --k 3"), 2);
  std::ofstream(path("broken.json")) << "{";
  EXPECT_EQ(run("cluster --config " + path("broken.json") + " --graph " + path("g.edges") + " --k 3"), 2);
}

TEST_F(Cli, TopkSortedByScore) {
  generate("g", "--k 4 --n 15 --p 0.4 --eta 0.1 --meta complete --seed 3");
  ASSERT_EQ(run("topk --graph " + path("g.edges") + " --k 4 --methods herm disg-lr --score ci_vol --top 4"), 0) << err();
  const auto rows = csv(out());
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"method", "rank", "a", "b", "ci", "ci_size", "ci_vol"}));
  for (std::size_t i = 2; i < rows.size(); ++i) {
    if (rows[i][0] != rows[i - 1][0]) continue;
    EXPECT_EQ(std::stoi(rows[i][1]), std::stoi(rows[i - 1][1]) + 1);
    EXPECT_GE(std::stod(rows[i - 1][6]), std::stod(rows[i][6]));
  }
  ASSERT_EQ(run("topk --graph " + path("g.edges") + " --partition " + path("g.truth") + " --score ci"), 0) << err();
  // Four clusters give six pairs, all within the default --top.
  EXPECT_EQ(csv(out()).size(), 7u);
}

TEST_F(Cli, SpectrumReport) {
  generate("g", "--k 5 --n 100 --p 0.5 --eta 0.15 --seed 1");
  ASSERT_EQ(run("spectrum --graph " + path("g.edges") + " --k 5 --operator rw --format json"), 0) << err();
  const auto doc = nlohmann::json::parse(out());
  EXPECT_EQ(doc["outlier_count"], 4);
  EXPECT_EQ(doc["eigenvalues"].size(), 11u);
  ASSERT_EQ(run("spectrum --graph " + path("g.edges") + " --k 5"), 0);
  const auto rows = csv(out());
  EXPECT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[4][3], "1");
  EXPECT_EQ(rows[5][3], "0");
}

TEST_F(Cli, ConcentrationAtZeroDensity) {
  ASSERT_EQ(run("concentration --k 3 --n 10 --p 0 --seeds 3"), 0) << err();
  const auto rows = csv(out());
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][4], "1");
}

TEST_F(Cli, DenseCsvInput) {
  std::ofstream(path("flows.csv")) << "0,4,1\n0,0,2\n3,0,0\n";
  ASSERT_EQ(run("cluster --graph " + path("flows.csv") + " --input-format dense-csv --net-flow --cap 3 --k 2"), 0)
      << err();
  std::istringstream labels(out());
  EXPECT_EQ(read_partition(labels).size(), 3u);
}

}  // namespace
}  // namespace hermclust
