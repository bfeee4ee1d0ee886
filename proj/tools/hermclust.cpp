// Command-line front end: generate, cluster, evaluate, sweep, topk, spectrum
// and concentration.
//
// Exit codes: 0 success, 2 usage or invalid input, 1 any other failure.

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hermclust/dsbm.hpp"
#include "hermclust/graph.hpp"
#include "hermclust/metrics.hpp"
#include "hermclust/partition.hpp"
#include "hermclust/pipelines.hpp"
#include "json.hpp"

namespace {

using namespace hermclust;
using nlohmann::json;

std::atomic<bool> g_stop{false};

extern "C" void on_interrupt(int) { g_stop.store(true); }

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  int workers = 1;
  std::string config;
};

struct DsbmOptions {
  int k = 3;
  int n = 100;
  double p = 0.1;
  double q = -1.0;  // < 0: follow p
  double eta = 0.1;
  std::string meta = "cyclic";
  std::vector<double> matrix;
};

struct GraphInput {
  std::string path;
  std::string format = "edges";
  int vertices = -1;
  bool net_flow = false;
  double cap = std::numeric_limits<double>::infinity();
};

struct MethodFlags {
  int pairs = -1;
  double epsilon = -1.0;
  std::string projection = "factor";
  double tau = -1.0;
  double dd_alpha = 0.5;
  double dd_beta = 0.5;
  bool row_normalize = false;
  int restarts = 10;
  int max_iter = 100;
  std::string backend = "auto";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("-o,--out", c.out, "Output path, - for standard output");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--config", c.config, "JSON config; explicit flags override its fields");
}

void add_dsbm(CLI::App* sub, DsbmOptions& d) {
  sub->add_option("--k", d.k, "Number of clusters")->check(CLI::PositiveNumber);
  sub->add_option("--n", d.n, "Vertices per cluster")->check(CLI::PositiveNumber);
  sub->add_option("--p", d.p, "In-cluster edge probability");
  sub->add_option("--q", d.q, "Cross-cluster edge probability (default: p)");
  sub->add_option("--eta", d.eta, "Orientation noise");
  sub->add_option("--meta", d.meta, "Meta-graph")->check(CLI::IsMember({"cyclic", "complete", "explicit"}));
  sub->add_option("--meta-matrix", d.matrix, "Row-major k*k orientation matrix for --meta explicit");
}

void add_graph_input(CLI::App* sub, GraphInput& g) {
  sub->add_option("--graph", g.path, "Graph file");
  sub->add_option("--input-format", g.format, "Graph file format")->check(CLI::IsMember({"edges", "dense-csv"}));
  sub->add_option("--vertices", g.vertices, "Vertex count for edge lists (default: from the file)");
  sub->add_flag("--net-flow", g.net_flow, "Dense input: replace flows by net-flow fractions");
  sub->add_option("--cap", g.cap, "Dense input: cap entries before any transform");
}

void add_method_flags(CLI::App* sub, MethodFlags& m) {
  sub->add_option("--pairs", m.pairs, "Eigenpairs kept by the fixed rule (default: k, or k-1 for odd k)");
  sub->add_option("--epsilon", m.epsilon, "Keep eigenvalues with |lambda| > epsilon instead of a fixed count");
  sub->add_option("--projection", m.projection, "Herm embedding")->check(CLI::IsMember({"factor", "full"}));
  sub->add_option("--tau", m.tau, "DISG degree regularizer (default: mean out-degree)");
  sub->add_option("--dd-alpha", m.dd_alpha, "DD-Sym out-degree exponent");
  sub->add_option("--dd-beta", m.dd_beta, "DD-Sym in-degree exponent");
  sub->add_flag("--row-normalize", m.row_normalize, "Normalize embedding rows before k-means");
  sub->add_option("--restarts", m.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", m.max_iter, "k-means iterations per restart")->check(CLI::PositiveNumber);
  sub->add_option("--backend", m.backend, "Eigensolver")->check(CLI::IsMember({"auto", "dense", "lanczos"}));
}

MethodOptions method_options(const MethodFlags& f, std::uint64_t seed) {
  MethodOptions o;
  if (f.pairs >= 0) o.pairs = f.pairs;
  if (f.epsilon >= 0.0) o.epsilon = f.epsilon;
  o.projection = f.projection == "full" ? ProjectionMode::Full : ProjectionMode::Factor;
  o.tau = f.tau;
  o.dd_alpha = f.dd_alpha;
  o.dd_beta = f.dd_beta;
  o.row_normalize = f.row_normalize;
  o.backend = f.backend == "dense" ? EigBackend::Dense : f.backend == "lanczos" ? EigBackend::Lanczos : EigBackend::Auto;
  o.kmeans.restarts = f.restarts;
  o.kmeans.max_iter = f.max_iter;
  o.kmeans.seed = seed;
  return o;
}

DsbmParams dsbm_params(const DsbmOptions& d, std::uint64_t seed) {
  json doc{{"k", d.k}, {"n", d.n}, {"p", d.p}, {"q", d.q < 0.0 ? d.p : d.q},
           {"meta", d.meta}, {"eta", d.eta}, {"seed", seed}};
  if (!d.matrix.empty()) doc["F"] = d.matrix;
  return params_from_json(doc);
}

Digraph load_graph(const GraphInput& in) {
  if (in.format == "edges") return read_edge_list_file(in.path, in.vertices);
  Eigen::MatrixXd m = cap_entries(read_dense_csv_file(in.path), in.cap);
  if (in.net_flow) return net_flow_transform(m);
  std::vector<Edge> edges;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0.0) edges.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
    }
  }
  return Digraph::from_edges(static_cast<int>(m.rows()), edges);
}

std::string option_key(const CLI::Option* opt) { return opt->get_single_name(); }

// Fills options the command line left unset from the config document.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = nullptr;
    for (CLI::Option* o : sub->get_options()) {
      if (option_key(o) == key) opt = o;
    }
    if (opt == nullptr || key == "help" || key == "config") {
      throw std::invalid_argument("unknown config field '" + it.key() + "'");
    }
    if (opt->count() > 0) continue;
    const auto as_text = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      return v.dump();
    };
    if (it->is_array()) {
      std::vector<std::string> values;
      for (const auto& v : *it) values.push_back(as_text(v));
      opt->add_result(values);
    } else {
      opt->add_result(as_text(*it));
    }
    opt->run_callback();
  }
}

// Every option value that shaped the run, keyed by flag name.
json effective_config(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    const std::string key = option_key(o);
    if (key == "help" || key == "config" || key == "out" || key.empty()) continue;
    if (o->count() > 0) {
      const auto& r = o->results();
      cfg[key] = o->get_items_expected_max() > 1 ? json(r) : json(r.back());
    } else if (o->get_expected_min() == 0) {
      cfg[key] = "false";
    } else if (o->get_default_str() == "{}") {
      cfg[key] = json::array();
    } else if (!o->get_default_str().empty()) {
      cfg[key] = o->get_default_str();
    }
  }
  return cfg;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

json metadata(const std::string& command, const json& config, std::uint64_t seed) {
  return {{"tool", "hermclust"},
          {"version", HERMCLUST_VERSION},
          {"command", command},
          {"config_hash", fnv1a_hex(config.dump())},
          {"seed", seed},
          {"config", config}};
}

class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (path_ != "-") {
      file_.open(path_);
      if (!file_) throw std::runtime_error("cannot write " + path_);
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

  // CSV output keeps metadata beside the data: a sidecar file, or one JSON
  // line on standard error when writing to standard output.
  void finish_csv(const json& meta) {
    stream().flush();
    if (path_ == "-") {
      std::cerr << meta.dump() << '\n';
    } else {
      std::ofstream side(path_ + ".meta.json");
      side << meta.dump(2) << '\n';
    }
  }
  void write_json(json doc, const json& meta) {
    doc["meta"] = meta;
    stream() << doc.dump(2) << '\n';
  }

 private:
  std::string path_;
  std::ofstream file_;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

json pair_json(const PairScore& s) {
  return {{"a", s.a}, {"b", s.b}, {"ci", s.ci}, {"ci_size", s.ci_size}, {"ci_vol", s.ci_vol}};
}

// ---------------------------------------------------------------- commands

void cmd_generate(const Common& c, const DsbmOptions& d, const json& meta) {
  if (c.out == "-") throw std::invalid_argument("generate needs --out PREFIX");
  const DsbmParams params = dsbm_params(d, c.seed);
  const LabeledGraph lg = sample(params, c.seed);
  {
    std::ofstream edges(c.out + ".edges");
    if (!edges) throw std::runtime_error("cannot write " + c.out + ".edges");
    const std::vector<std::string> header = {"hermclust " HERMCLUST_VERSION " generate",
                                             "config_hash " + meta["config_hash"].get<std::string>() + " seed " +
                                                 std::to_string(c.seed)};
    write_edge_list(edges, lg.graph, header);
  }
  {
    std::ofstream truth(c.out + ".truth");
    write_partition(truth, lg.truth);
  }
  std::ofstream side(c.out + ".meta.json");
  side << json{{"meta", meta}, {"params", params_to_json(params)}}.dump(2) << '\n';
  std::cerr << "wrote " << c.out << ".edges (" << lg.graph.num_vertices() << " vertices, " << lg.graph.num_edges()
            << " edges)\n";
}

void cmd_cluster(const Common& c, const GraphInput& gi, const std::string& method, int k, const MethodFlags& f,
                 json meta) {
  const Digraph g = load_graph(gi);
  const MethodName m = parse_method(method);
  const MethodRun run = run_method_detailed(m, g, k, method_options(f, c.seed));
  Sink sink(c.out);
  meta["result"] = {{"method", method_name(m)}, {"k", k}, {"eigenvalues", run.eigenvalues},
                    {"kmeans_cost", run.kmeans_cost}};
  if (c.format == "json") {
    sink.write_json({{"labels", run.partition.labels}}, meta);
  } else {
    write_partition(sink.stream(), run.partition);
    sink.finish_csv(meta);
  }
}

void cmd_evaluate(const Common& c, const std::string& pred_path, const std::string& truth_path, const GraphInput& gi,
                  const json& meta) {
  if (truth_path.empty() && gi.path.empty()) throw std::invalid_argument("evaluate needs --truth or --graph");
  if (!truth_path.empty() && !gi.path.empty() && c.format == "csv") {
    throw std::invalid_argument("--truth with --graph needs --format json");
  }
  const Partition pred = read_partition_file(pred_path);
  json doc = json::object();
  Sink sink(c.out);
  if (!truth_path.empty()) {
    const Partition truth = read_partition_file(truth_path);
    const int k = std::max(pred.k, truth.k);
    const Partition a{pred.labels, k};
    const Partition b{truth.labels, k};
    const double score = ari(a, b);
    const long long wrong = misclassified(a, b);
    doc["ari"] = score;
    doc["misclassified"] = wrong;
    if (c.format == "csv") sink.stream() << "ari,misclassified\n" << num(score) << ',' << wrong << '\n';
  }
  if (!gi.path.empty()) {
    const Digraph g = load_graph(gi);
    const auto scores = pair_scores(g, pred);
    doc["pairs"] = json::array();
    for (const auto& s : scores) doc["pairs"].push_back(pair_json(s));
    if (c.format == "csv") write_pair_scores_csv(sink.stream(), scores);
  }
  if (c.format == "json") {
    sink.write_json(doc, meta);
  } else {
    sink.finish_csv(meta);
  }
}

void cmd_sweep(const Common& c, const DsbmOptions& d, const std::string& param, const std::vector<double>& values,
               const std::vector<std::string>& methods, int seed_count, const std::string& rows_path,
               const MethodFlags& f, const json& meta) {
  SweepPlan plan;
  for (double v : values) {
    DsbmOptions point = d;
    if (param == "eta") point.eta = v;
    else if (param == "p") point.p = v;
    else if (param == "q") point.q = v;
    else point.n = static_cast<int>(v);
    if (param == "n" && static_cast<double>(point.n) != v) throw std::invalid_argument("n values must be integers");
    plan.points.push_back({param, v, dsbm_params(point, c.seed)});
  }
  if (methods.empty()) {
    plan.methods = all_methods();
  } else {
    for (const auto& m : methods) plan.methods.push_back(parse_method(m));
  }
  for (int s = 0; s < seed_count; ++s) plan.seeds.push_back(c.seed + static_cast<std::uint64_t>(s));
  plan.options = method_options(f, c.seed);
  plan.workers = c.workers;
  plan.rows_path = rows_path;
  plan.stop = &g_stop;
  const std::size_t total = plan.points.size() * plan.seeds.size() * plan.methods.size();
  std::size_t done = 0;
  plan.progress = [&](const SweepRow& r) {
    std::cerr << '[' << ++done << '/' << total << "] " << r.method << ' ' << r.param_name << '=' << num(r.param_value)
              << " seed=" << r.seed << " ari=" << num(r.ari) << '\n';
  };
  std::signal(SIGINT, on_interrupt);
  const SweepResult result = sweep(plan);
  std::signal(SIGINT, SIG_DFL);
  const auto agg = aggregate(result.rows);
  Sink sink(c.out);
  if (c.format == "json") {
    sink.write_json(sweep_to_json(result.rows, agg), meta);
  } else {
    write_aggregate_csv(sink.stream(), agg);
    sink.finish_csv(meta);
  }
  if (result.interrupted) throw std::runtime_error("sweep interrupted; partial results written");
}

void cmd_topk(const Common& c, const GraphInput& gi, int k, const std::vector<std::string>& methods,
              const std::string& partition_path, const std::string& score, int top, const MethodFlags& f,
              const json& meta) {
  const Digraph g = load_graph(gi);
  const PairScoreKind kind = parse_pair_score_kind(score);
  if (top < 1) throw std::invalid_argument("--top must be positive");
  std::vector<std::pair<std::string, Partition>> runs;
  if (!partition_path.empty()) {
    runs.emplace_back("partition", read_partition_file(partition_path, k > 0 ? k : 0));
  } else {
    if (k < 1) throw std::invalid_argument("topk needs --k when clustering");
    const std::vector<std::string> names = methods.empty() ? std::vector<std::string>{"herm"} : methods;
    for (const auto& name : names) {
      const MethodName m = parse_method(name);
      runs.emplace_back(std::string(method_name(m)), run_method(m, g, k, method_options(f, c.seed)));
    }
  }
  Sink sink(c.out);
  json rows = json::array();
  if (c.format == "csv") sink.stream() << "method,rank,a,b,ci,ci_size,ci_vol\n";
  for (const auto& [name, p] : runs) {
    const auto best = top_pairs(g, p, kind, static_cast<std::size_t>(top));
    for (std::size_t i = 0; i < best.size(); ++i) {
      const auto& s = best[i];
      json row = pair_json(s);
      row["method"] = name;
      row["rank"] = i + 1;
      rows.push_back(row);
      if (c.format == "csv") {
        sink.stream() << name << ',' << i + 1 << ',' << s.a << ',' << s.b << ',' << num(s.ci) << ','
                      << num(s.ci_size) << ',' << num(s.ci_vol) << '\n';
      }
    }
  }
  if (c.format == "json") {
    sink.write_json({{"score", pair_score_kind_name(kind)}, {"pairs", rows}}, meta);
  } else {
    sink.finish_csv(meta);
  }
}

void cmd_spectrum(const Common& c, const GraphInput& gi, int k, const std::string& op, const std::string& backend,
                  json meta) {
  const Digraph g = load_graph(gi);
  MethodFlags f;
  f.backend = backend;
  const SpectrumReport r = graph_spectrum_report(g, parse_operator_kind(op), k, method_options(f, 0).backend);
  const json summary{{"operator", operator_kind_name(parse_operator_kind(op))},
                     {"outlier_count", r.outlier_count},
                     {"relative_gap", r.relative_gap},
                     {"bulk_edge", r.bulk_edge},
                     {"fixed_count", r.fixed_count},
                     {"fixed_margin", r.fixed_margin}};
  Sink sink(c.out);
  if (c.format == "json") {
    json doc = summary;
    doc["eigenvalues"] = r.eigenvalues;
    sink.write_json(doc, meta);
    return;
  }
  sink.stream() << "rank,eigenvalue,magnitude,outlier\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    sink.stream() << i + 1 << ',' << num(r.eigenvalues[i]) << ',' << num(std::abs(r.eigenvalues[i])) << ','
                  << (static_cast<int>(i) < r.outlier_count ? 1 : 0) << '\n';
  }
  meta["result"] = summary;
  sink.finish_csv(meta);
}

void cmd_concentration(const Common& c, const DsbmOptions& d, int seed_count, json meta) {
  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < seed_count; ++s) seeds.push_back(c.seed + static_cast<std::uint64_t>(s));
  const ConcentrationReport r = concentration_experiment(dsbm_params(d, c.seed), seeds);
  const json summary{{"trials", r.trials.size()}, {"passed", r.passed}, {"max_ratio", r.max_ratio}};
  Sink sink(c.out);
  if (c.format == "json") {
    json doc = summary;
    doc["rows"] = json::array();
    for (const auto& t : r.trials) {
      doc["rows"].push_back({{"seed", t.seed}, {"norm", t.norm}, {"bound", t.bound}, {"ratio", t.ratio},
                             {"pass", t.pass}});
    }
    sink.write_json(doc, meta);
    return;
  }
  sink.stream() << "seed,norm,bound,ratio,pass\n";
  for (const auto& t : r.trials) {
    sink.stream() << t.seed << ',' << num(t.norm) << ',' << num(t.bound) << ',' << num(t.ratio) << ','
                  << (t.pass ? 1 : 0) << '\n';
  }
  meta["result"] = summary;
  sink.finish_csv(meta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral clustering of directed graphs via Hermitian adjacency matrices", "hermclust"};
  app.set_version_flag("--version", HERMCLUST_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;
  DsbmOptions dsbm;
  GraphInput graph;
  MethodFlags flags;
  std::string method = "herm";
  int k = 0;
  std::string pred, truth, param = "eta", rows_path, partition_path, score = "ci_vol", op = "rw", backend = "auto";
  std::vector<double> values;
  std::vector<std::string> methods;
  int seed_count = 10;
  int top = 10;

  CLI::App* gen = app.add_subcommand("generate", "Sample a DSBM graph with ground truth");
  add_common(gen, common);
  add_dsbm(gen, dsbm);

  CLI::App* clu = app.add_subcommand("cluster", "Cluster a graph");
  add_common(clu, common);
  add_graph_input(clu, graph);
  clu->add_option("--method", method, "herm|herm-rw|herm-sym|naive|disg-l|disg-r|disg-lr|bi-sym|dd-sym");
  clu->add_option("--k", k, "Number of clusters");
  add_method_flags(clu, flags);

  CLI::App* eva = app.add_subcommand("evaluate", "Score a partition against truth or a graph");
  add_common(eva, common);
  eva->add_option("--pred", pred, "Predicted partition");
  eva->add_option("--truth", truth, "Ground-truth partition");
  eva->add_option("--graph", graph.path, "Graph for cut-imbalance scores");
  eva->add_option("--input-format", graph.format, "Graph file format")->check(CLI::IsMember({"edges", "dense-csv"}));
  eva->add_option("--vertices", graph.vertices, "Vertex count for edge lists");
  eva->add_flag("--net-flow", graph.net_flow, "Dense input: replace flows by net-flow fractions");
  eva->add_option("--cap", graph.cap, "Dense input: cap entries before any transform");

  CLI::App* swp = app.add_subcommand("sweep", "Recovery sweep over one DSBM parameter");
  add_common(swp, common);
  add_dsbm(swp, dsbm);
  swp->add_option("--param", param, "Swept parameter")->check(CLI::IsMember({"eta", "p", "q", "n"}));
  swp->add_option("--values", values, "Parameter values");
  swp->add_option("--methods", methods, "Methods (default: all)");
  swp->add_option("--seeds", seed_count, "Graphs per point; seeds start at --seed")->check(CLI::PositiveNumber);
  swp->add_option("--rows", rows_path, "Per-run CSV; existing rows are reused on restart");
  add_method_flags(swp, flags);

  CLI::App* tpk = app.add_subcommand("topk", "Top cluster pairs by cut imbalance");
  add_common(tpk, common);
  add_graph_input(tpk, graph);
  tpk->add_option("--k", k, "Number of clusters");
  tpk->add_option("--methods", methods, "Methods to cluster with (default: herm)");
  tpk->add_option("--partition", partition_path, "Score this partition instead of clustering");
  tpk->add_option("--score", score, "Ranking score")->check(CLI::IsMember({"ci", "ci_size", "ci_vol"}));
  tpk->add_option("--top", top, "Pairs per method");
  add_method_flags(tpk, flags);

  CLI::App* spc = app.add_subcommand("spectrum", "Leading eigenvalues and outlier count");
  add_common(spc, common);
  add_graph_input(spc, graph);
  spc->add_option("--k", k, "Number of clusters");
  spc->add_option("--operator", op, "A|rw|sym");
  spc->add_option("--backend", backend, "Eigensolver")->check(CLI::IsMember({"auto", "dense", "lanczos"}));

  CLI::App* con = app.add_subcommand("concentration", "Spectral norm of A - E[A] against the bound");
  add_common(con, common);
  add_dsbm(con, dsbm);
  con->add_option("--seeds", seed_count, "Trials; seeds start at --seed")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!common.config.empty()) apply_config(sub, common.config);
    // Required fields may come from the config, so they are checked here.
    const std::map<std::string, std::vector<std::string>> required = {
        {"cluster", {"graph", "k"}}, {"evaluate", {"pred"}}, {"sweep", {"values"}},
        {"topk", {"graph"}},         {"spectrum", {"graph", "k"}}};
    if (const auto it = required.find(sub->get_name()); it != required.end()) {
      for (const auto& field : it->second) {
        if (sub->get_option("--" + field)->count() == 0) throw std::invalid_argument("--" + field + " is required");
      }
    }
    const json meta = metadata(sub->get_name(), effective_config(sub), common.seed);
    const std::string name = sub->get_name();
    if (name == "generate") cmd_generate(common, dsbm, meta);
    else if (name == "cluster") cmd_cluster(common, graph, method, k, flags, meta);
    else if (name == "evaluate") cmd_evaluate(common, pred, truth, graph, meta);
    else if (name == "sweep") cmd_sweep(common, dsbm, param, values, methods, seed_count, rows_path, flags, meta);
    else if (name == "topk") cmd_topk(common, graph, k, methods, partition_path, score, top, flags, meta);
    else if (name == "spectrum") cmd_spectrum(common, graph, k, op, backend, meta);
    else cmd_concentration(common, dsbm, seed_count, meta);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
