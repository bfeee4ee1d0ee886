#pragma once
// Clustering methods and the experiment runners built on them.

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hermclust/dsbm.hpp"
#include "hermclust/graph.hpp"
#include "hermclust/kmeans.hpp"
#include "hermclust/partition.hpp"
#include "hermclust/spectral.hpp"

namespace hermclust {

enum class MethodName { Herm, HermRw, HermSym, Naive, DisgL, DisgR, DisgLr, BiSym, DdSym };

std::vector<MethodName> all_methods();
// Display name, e.g. "Herm-RW".
std::string_view method_name(MethodName m);
// Command-line spelling, e.g. "herm-rw".
std::string_view method_flag(MethodName m);
// Accepts either spelling, case-insensitively. The error lists valid names.
MethodName parse_method(std::string_view name);

struct MethodOptions {
  // Herm only: threshold selection |lambda| > epsilon instead of fixed l.
  std::optional<double> epsilon;
  // Number of eigenpairs l for the Hermitian methods; default k (k - 1 for
  // odd k).
  std::optional<Index> pairs;
  ProjectionMode projection = ProjectionMode::Factor;
  // DI-SIM degree regularizer; negative selects the mean out-degree.
  double tau = -1.0;
  // DD-Sym exponents on the out- and in-degree.
  double dd_alpha = 0.5;
  double dd_beta = 0.5;
  bool row_normalize = false;
  EigBackend backend = EigBackend::Auto;
  KmeansOptions kmeans;
};

struct MethodRun {
  Partition partition;
  Eigen::MatrixXd features;
  std::vector<double> eigenvalues;  // of the selected eigenvectors
  double kmeans_cost = 0.0;
};

// Throws std::invalid_argument when k < 1 or k > N.
MethodRun run_method_detailed(MethodName m, const Digraph& g, int k, const MethodOptions& options = {});
Partition run_method(MethodName m, const Digraph& g, int k, const MethodOptions& options = {});

// One grid point of a sweep: a named parameter value and its model.
struct SweepPoint {
  std::string param_name;
  double param_value = 0.0;
  DsbmParams params;
};

struct SweepRow {
  std::string method;
  std::string param_name;
  double param_value = 0.0;
  std::uint64_t seed = 0;
  double ari = 0.0;
  long long misclassified = 0;
  double seconds = 0.0;
};

struct SweepPlan {
  std::vector<SweepPoint> points;
  std::vector<MethodName> methods;
  std::vector<std::uint64_t> seeds;
  MethodOptions options;
  int workers = 1;
  // Rows already on disk here are kept and not recomputed; new rows are
  // appended and flushed one at a time. Empty disables persistence.
  std::string rows_path;
  // Set (e.g. from a signal handler) to stop scheduling new cells.
  const std::atomic<bool>* stop = nullptr;
  // Called after each finished row (from worker threads, serialized).
  std::function<void(const SweepRow&)> progress;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (method order, point, seed)
  bool interrupted = false;
};

// Each (point, seed) samples one graph (seed = the DSBM seed, so points that
// differ only in F are coupled) and runs every method on it with k-means
// seeded by the same seed.
SweepResult sweep(const SweepPlan& plan);

struct SweepAggregate {
  std::string method;
  std::string param_name;
  double param_value = 0.0;
  int runs = 0;
  double mean_ari = 0.0;
  double std_ari = 0.0;  // sample standard deviation, 0 for one run
  double mean_misclassified = 0.0;
  double mean_seconds = 0.0;
};

std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows);

inline constexpr std::string_view kSweepCsvHeader = "method,param_name,param_value,seed,ari,misclassified,seconds";
inline constexpr std::string_view kAggregateCsvHeader =
    "method,param_name,param_value,runs,mean_ari,std_ari,mean_misclassified,mean_seconds";

void write_sweep_row_csv(std::ostream& out, const SweepRow& row);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<SweepAggregate>& rows);
// Throws std::invalid_argument on a header or field mismatch.
std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::vector<SweepAggregate> read_aggregate_csv(std::istream& in);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, const std::vector<SweepAggregate>& agg);

struct ConcentrationTrial {
  std::uint64_t seed = 0;
  double norm = 0.0;   // ||A - E[A]||_2
  double bound = 0.0;  // 10 sqrt(p k n log n)
  double ratio = 0.0;  // norm / bound, 0 when both vanish
  bool pass = false;
};

struct ConcentrationReport {
  std::vector<ConcentrationTrial> trials;
  double max_ratio = 0.0;
  int passed = 0;
};

ConcentrationReport concentration_experiment(const DsbmParams& params, const std::vector<std::uint64_t>& seeds);

enum class OperatorKind { Adjacency, RandomWalk, Symmetric };
std::string_view operator_kind_name(OperatorKind kind);
OperatorKind parse_operator_kind(std::string_view name);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // top candidates, |lambda| descending
  int outlier_count = 0;            // position of the largest relative gap
  double relative_gap = 0.0;        // (a_i - a_{i+1}) / a_i at that position
  double bulk_edge = 0.0;           // largest |lambda| after the outliers
  int fixed_count = 0;              // the fixed-count mode's count (k)
  double fixed_margin = 0.0;        // (a_k - a_{k+1}) / a_k
};

// Outliers are found among the 2k largest magnitudes in `eigenvalues`
// (which must be sorted by |lambda| descending).
SpectrumReport spectrum_report(std::span<const double> eigenvalues, int k);
// Spectrum of A, D^-1 A or D^-1/2 A D^-1/2 (the last two share eigenvalues).
SpectrumReport graph_spectrum_report(const Digraph& g, OperatorKind kind, int k,
                                     EigBackend backend = EigBackend::Auto);

struct MethodTiming {
  MethodName method;
  std::vector<double> seconds;
  double median = 0.0;
  bool deterministic = true;  // all runs gave the same partition
};

std::vector<MethodTiming> time_methods(const Digraph& g, const std::vector<MethodName>& methods, int k, int runs,
                                       const MethodOptions& options = {});

double median(std::vector<double> values);

}  // namespace hermclust
