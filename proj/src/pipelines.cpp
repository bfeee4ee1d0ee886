#include "hermclust/pipelines.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hermclust/metrics.hpp"
#include "hermclust/operators.hpp"
#include "hermclust/symmetric_eigen.hpp"

namespace hermclust {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr MethodName kAllMethods[] = {MethodName::Herm,  MethodName::HermRw, MethodName::HermSym,
                                      MethodName::Naive, MethodName::DisgL,  MethodName::DisgR,
                                      MethodName::DisgLr, MethodName::BiSym, MethodName::DdSym};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SymmetricLinearOperator sparse_operator(const SparseMatrix& s) {
  return {s.rows(), [&s](const double* x, double* y) {
            Eigen::Map<VectorXd>(y, s.rows()).noalias() = s * Eigen::Map<const VectorXd>(x, s.cols());
          }};
}

// Leading eigenvectors of a real symmetric operator under the shared
// dense/iterative backend policy.
MatrixXd real_top_vectors(const SymmetricLinearOperator& op, Index nev, Which which, EigBackend backend,
                          std::vector<double>& values) {
  const Index n = op.dim;
  nev = std::min(nev, n);
  SymmetricEigen top;
  if (!uses_lanczos(backend, n, nev)) {
    MatrixXd dense(n, n);
    VectorXd e = VectorXd::Zero(n);
    for (Index j = 0; j < n; ++j) {
      e[j] = 1.0;
      op.apply(e.data(), dense.col(j).data());
      e[j] = 0.0;
    }
    dense = (0.5 * (dense + dense.transpose())).eval();
    if (which == Which::LargestMagnitude) {
      top = dense_top_magnitude(dense, nev);
    } else if (nev > 0) {
      const SymmetricEigen range = dense_symmetric_eigen_range(dense, n - nev, n - 1);
      top.values = range.values.reverse();
      top.vectors = range.vectors.rowwise().reverse();
    } else {
      top.vectors.resize(n, 0);
    }
  } else {
    const LanczosResult r = lanczos_eigen(op, nev, which);
    top.values = r.values;
    top.vectors = r.vectors;
  }
  values.assign(top.values.data(), top.values.data() + top.values.size());
  return top.vectors;
}

// Repeats `compute(count)` with a growing count until the selection no
// longer reaches the end of the computed list.
template <typename Compute>
std::vector<EigenPair> select_growing(Index n, Index initial, const SelectionRule& rule, Compute compute) {
  Index count = std::min(n, std::max<Index>(initial, 1));
  while (true) {
    const std::vector<EigenPair> pairs = compute(count);
    std::vector<EigenPair> selected = select_pairs(pairs, rule, n);
    bool complete = selected.size() < pairs.size() || count >= n;
    if (const auto* t = std::get_if<ThresholdRule>(&rule)) {
      complete = count >= n || (!pairs.empty() && std::abs(pairs.back().value) <= t->epsilon);
    }
    if (complete) return selected;
    count = std::min(n, 2 * count);
  }
}

Index pair_count(int k, const MethodOptions& o) {
  const Index l = o.pairs ? *o.pairs : default_pair_count(k);
  if (l < 0) throw std::invalid_argument("pair count must be nonnegative");
  return l;
}

MethodRun embed_hermitian(MethodName m, const Digraph& g, int k, const MethodOptions& o) {
  const Index n = g.num_vertices();
  MethodRun run;
  const Index l = pair_count(k, o);
  if (l > n) throw std::invalid_argument("pair count exceeds the number of vertices");
  const Index initial = o.epsilon ? 2 * k + 2 : l + 2;
  const Storage storage = uses_lanczos(o.backend, n, std::min(n, initial)) ? Storage::Sparse : Storage::Dense;
  const HermitianOperator a = build_hermitian(g, storage);
  EigRequest req;
  req.backend = o.backend;

  std::vector<EigenPair> selected;
  if (m == MethodName::Herm) {
    const SelectionRule rule = o.epsilon ? SelectionRule{ThresholdRule{*o.epsilon}} : SelectionRule{FixedRule{l}};
    selected = select_growing(n, initial, rule, [&](Index count) {
      req.count = count;
      return eig_hermitian(a, req);
    });
    run.features = projection_embedding(selected, n, o.projection).features;
  } else {
    if (l == 0) throw std::invalid_argument("eigenvector embedding needs at least one eigenpair");
    const DegreeVector d = absolute_degrees(a);
    const HermitianOperator sym = m == MethodName::HermSym ? normalize_sym(a, d) : HermitianOperator{};
    selected = select_growing(n, initial, FixedRule{l}, [&](Index count) {
      req.count = count;
      return m == MethodName::HermRw ? eig_random_walk(a, d, req) : eig_hermitian(sym, req);
    });
    run.features = eigvec_embedding(selected).features;
  }
  for (const auto& p : selected) run.eigenvalues.push_back(p.value);
  return run;
}

VectorXd out_degrees(const Digraph& g) {
  const auto v = g.out_weights();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

VectorXd in_degrees(const Digraph& g) {
  const auto v = g.in_weights();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

MethodRun embed_real(MethodName m, const Digraph& g, int k, const MethodOptions& o) {
  const Index n = g.num_vertices();
  MethodRun run;
  const SparseMatrix adj = g.adjacency();
  switch (m) {
    case MethodName::Naive: {
      const SparseMatrix s = symmetrize_naive(g);
      run.features = real_top_vectors(sparse_operator(s), k, Which::LargestMagnitude, o.backend, run.eigenvalues);
      break;
    }
    case MethodName::BiSym: {
      const SparseMatrix s = cocluster_products(g).sum;
      run.features = real_top_vectors(sparse_operator(s), k, Which::LargestAlgebraic, o.backend, run.eigenvalues);
      break;
    }
    case MethodName::DdSym: {
      const VectorXd o_alpha = safe_inverse_power(out_degrees(g), o.dd_alpha);
      const VectorXd o_half = safe_inverse_power(out_degrees(g), 0.5 * o.dd_alpha);
      const VectorXd i_beta = safe_inverse_power(in_degrees(g), o.dd_beta);
      const VectorXd i_half = safe_inverse_power(in_degrees(g), 0.5 * o.dd_beta);
      // D_o^-a M D_i^-b M^T D_o^-a = X X^T and D_i^-b M^T D_o^-a M D_i^-b = Y^T Y.
      const SparseMatrix x = o_alpha.asDiagonal() * adj * i_half.asDiagonal();
      const SparseMatrix y = o_half.asDiagonal() * adj * i_beta.asDiagonal();
      const SparseMatrix xt = x.transpose();
      const SparseMatrix yt = y.transpose();
      const SparseMatrix s = SparseMatrix(x * xt) + SparseMatrix(yt * y);
      run.features = real_top_vectors(sparse_operator(s), k, Which::LargestAlgebraic, o.backend, run.eigenvalues);
      break;
    }
    case MethodName::DisgL:
    case MethodName::DisgR:
    case MethodName::DisgLr: {
      const double tau = o.tau >= 0.0 ? o.tau : (n > 0 ? g.total_weight() / static_cast<double>(n) : 0.0);
      const VectorXd ol = safe_inverse_power((out_degrees(g).array() + tau).matrix(), 0.5);
      const VectorXd il = safe_inverse_power((in_degrees(g).array() + tau).matrix(), 0.5);
      const SparseMatrix l = ol.asDiagonal() * adj * il.asDiagonal();
      const SparseMatrix lt = l.transpose();
      VectorXd tmp(n);
      // L^T L (common parents) and L L^T (common children), applied implicitly.
      const SymmetricLinearOperator left{n, [&](const double* x, double* y) {
                                           tmp.noalias() = l * Eigen::Map<const VectorXd>(x, n);
                                           Eigen::Map<VectorXd>(y, n).noalias() = lt * tmp;
                                         }};
      const SymmetricLinearOperator right{n, [&](const double* x, double* y) {
                                            tmp.noalias() = lt * Eigen::Map<const VectorXd>(x, n);
                                            Eigen::Map<VectorXd>(y, n).noalias() = l * tmp;
                                          }};
      if (m == MethodName::DisgL) {
        run.features = real_top_vectors(left, k, Which::LargestAlgebraic, o.backend, run.eigenvalues);
      } else if (m == MethodName::DisgR) {
        run.features = real_top_vectors(right, k, Which::LargestAlgebraic, o.backend, run.eigenvalues);
      } else {
        std::vector<double> rv;
        const MatrixXd fl = real_top_vectors(left, k, Which::LargestAlgebraic, o.backend, run.eigenvalues);
        const MatrixXd fr = real_top_vectors(right, k, Which::LargestAlgebraic, o.backend, rv);
        run.features.resize(n, fl.cols() + fr.cols());
        run.features << fl, fr;
        run.eigenvalues.insert(run.eigenvalues.end(), rv.begin(), rv.end());
      }
      break;
    }
    default:
      throw std::logic_error("not a real-symmetric method");
  }
  return run;
}

void normalize_rows(MatrixXd& f) {
  for (Index r = 0; r < f.rows(); ++r) {
    const double norm = f.row(r).norm();
    if (norm > 0.0) f.row(r) /= norm;
  }
}

std::string format_value(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string row_key(const std::string& method, const std::string& param, double value, std::uint64_t seed) {
  return method + '\x1f' + param + '\x1f' + format_value(value) + '\x1f' + std::to_string(seed);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

template <typename Row, typename Parse>
std::vector<Row> read_csv(std::istream& in, std::string_view header, std::size_t fields, Parse parse) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw std::invalid_argument("unexpected CSV header '" + line + "', expected '" + std::string(header) + "'");
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != fields) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(fields) + " fields");
    }
    try {
      rows.push_back(parse(f));
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace

std::vector<MethodName> all_methods() { return {std::begin(kAllMethods), std::end(kAllMethods)}; }

std::string_view method_name(MethodName m) {
  switch (m) {
    case MethodName::Herm: return "Herm";
    case MethodName::HermRw: return "Herm-RW";
    case MethodName::HermSym: return "Herm-Sym";
    case MethodName::Naive: return "Naive";
    case MethodName::DisgL: return "DISG-L";
    case MethodName::DisgR: return "DISG-R";
    case MethodName::DisgLr: return "DISG-LR";
    case MethodName::BiSym: return "Bi-Sym";
    case MethodName::DdSym: return "DD-Sym";
  }
  return "";
}

std::string_view method_flag(MethodName m) {
  switch (m) {
    case MethodName::Herm: return "herm";
    case MethodName::HermRw: return "herm-rw";
    case MethodName::HermSym: return "herm-sym";
    case MethodName::Naive: return "naive";
    case MethodName::DisgL: return "disg-l";
    case MethodName::DisgR: return "disg-r";
    case MethodName::DisgLr: return "disg-lr";
    case MethodName::BiSym: return "bi-sym";
    case MethodName::DdSym: return "dd-sym";
  }
  return "";
}

MethodName parse_method(std::string_view name) {
  const std::string key = lower(name);
  std::string valid;
  for (MethodName m : kAllMethods) {
    if (key == method_flag(m)) return m;
    if (!valid.empty()) valid += '|';
    valid += method_flag(m);
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (valid: " + valid + ")");
}

MethodRun run_method_detailed(MethodName m, const Digraph& g, int k, const MethodOptions& options) {
  const int n = g.num_vertices();
  if (k < 1 || k > n) {
    throw std::invalid_argument("k must lie in [1, N] (k=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");
  }
  MethodRun run;
  if (k == 1) {
    run.partition = Partition{std::vector<int>(static_cast<std::size_t>(n), 0), 1};
    return run;
  }
  const bool hermitian = m == MethodName::Herm || m == MethodName::HermRw || m == MethodName::HermSym;
  MethodRun emb = hermitian ? embed_hermitian(m, g, k, options) : embed_real(m, g, k, options);
  run.features = std::move(emb.features);
  run.eigenvalues = std::move(emb.eigenvalues);
  if (options.row_normalize) normalize_rows(run.features);
  const KmeansResult km = kmeans(run.features, k, options.kmeans);
  run.partition = Partition{km.labels, k};
  run.kmeans_cost = km.cost;
  return run;
}

Partition run_method(MethodName m, const Digraph& g, int k, const MethodOptions& options) {
  return run_method_detailed(m, g, k, options).partition;
}

SweepResult sweep(const SweepPlan& plan) {
  SweepResult result;
  std::set<std::string> done;
  if (!plan.rows_path.empty() && std::filesystem::exists(plan.rows_path)) {
    std::ifstream in(plan.rows_path);
    result.rows = read_sweep_csv(in);
    for (const auto& r : result.rows) done.insert(row_key(r.method, r.param_name, r.param_value, r.seed));
  }
  std::ofstream sink;
  if (!plan.rows_path.empty()) {
    const bool fresh = !std::filesystem::exists(plan.rows_path) || std::filesystem::file_size(plan.rows_path) == 0;
    sink.open(plan.rows_path, std::ios::app);
    if (!sink) throw std::runtime_error("cannot open sweep output " + plan.rows_path);
    if (fresh) sink << kSweepCsvHeader << '\n' << std::flush;
  }

  struct Cell {
    std::size_t point;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < plan.points.size(); ++p) {
    for (std::uint64_t s : plan.seeds) {
      bool pending = false;
      for (MethodName m : plan.methods) {
        const auto& pt = plan.points[p];
        if (!done.count(row_key(std::string(method_name(m)), pt.param_name, pt.param_value, s))) pending = true;
      }
      if (pending) cells.push_back({p, s});
    }
  }

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};
  std::exception_ptr failure;
  const auto stopped = [&] { return plan.stop != nullptr && plan.stop->load(); };
  const auto worker = [&] {
    while (!stopped()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const SweepPoint& pt = plan.points[cells[i].point];
        const std::uint64_t seed = cells[i].seed;
        const LabeledGraph lg = sample(pt.params, seed);
        for (MethodName m : plan.methods) {
          const std::string name(method_name(m));
          {
            std::lock_guard lock(mutex);
            if (done.count(row_key(name, pt.param_name, pt.param_value, seed))) continue;
          }
          MethodOptions opts = plan.options;
          opts.kmeans.seed = seed;
          const auto start = std::chrono::steady_clock::now();
          const Partition pred = run_method(m, lg.graph, pt.params.k, opts);
          SweepRow row{name, pt.param_name, pt.param_value, seed, 0.0, 0, seconds_since(start)};
          row.ari = ari(pred, lg.truth);
          row.misclassified = misclassified(pred, lg.truth);
          std::lock_guard lock(mutex);
          done.insert(row_key(name, pt.param_name, pt.param_value, seed));
          result.rows.push_back(row);
          if (sink.is_open()) {
            write_sweep_row_csv(sink, row);
            sink.flush();
          }
          if (plan.progress) plan.progress(row);
        }
        finished.fetch_add(1);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int workers = std::max(1, std::min<int>(plan.workers, static_cast<int>(std::max<std::size_t>(cells.size(), 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  result.interrupted = finished.load() < cells.size();

  std::map<std::string, std::size_t> method_rank;
  for (std::size_t i = 0; i < plan.methods.size(); ++i) method_rank[std::string(method_name(plan.methods[i]))] = i;
  std::map<std::pair<std::string, std::string>, std::size_t> point_rank;
  for (std::size_t i = 0; i < plan.points.size(); ++i) {
    point_rank.emplace(std::make_pair(plan.points[i].param_name, format_value(plan.points[i].param_value)), i);
  }
  const auto rank_of = [](const auto& map, const auto& key) {
    const auto it = map.find(key);
    return it == map.end() ? map.size() : it->second;
  };
  std::stable_sort(result.rows.begin(), result.rows.end(), [&](const SweepRow& a, const SweepRow& b) {
    const auto ma = rank_of(method_rank, a.method);
    const auto mb = rank_of(method_rank, b.method);
    if (ma != mb) return ma < mb;
    if (a.method != b.method) return a.method < b.method;
    const auto pa = rank_of(point_rank, std::make_pair(a.param_name, format_value(a.param_value)));
    const auto pb = rank_of(point_rank, std::make_pair(b.param_name, format_value(b.param_value)));
    if (pa != pb) return pa < pb;
    if (a.param_value != b.param_value) return a.param_value < b.param_value;
    return a.seed < b.seed;
  });
  return result;
}

std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows) {
  std::vector<SweepAggregate> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<const SweepRow*>> groups;
  for (const auto& r : rows) {
    const std::string key = r.method + '\x1f' + r.param_name + '\x1f' + format_value(r.param_value);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      groups.emplace_back();
      out.push_back({r.method, r.param_name, r.param_value});
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& a = out[g];
    const auto& members = groups[g];
    a.runs = static_cast<int>(members.size());
    for (const auto* r : members) {
      a.mean_ari += r->ari;
      a.mean_misclassified += static_cast<double>(r->misclassified);
      a.mean_seconds += r->seconds;
    }
    a.mean_ari /= a.runs;
    a.mean_misclassified /= a.runs;
    a.mean_seconds /= a.runs;
    if (a.runs > 1) {
      double ss = 0.0;
      for (const auto* r : members) ss += (r->ari - a.mean_ari) * (r->ari - a.mean_ari);
      a.std_ari = std::sqrt(ss / (a.runs - 1));
    }
  }
  return out;
}

void write_sweep_row_csv(std::ostream& out, const SweepRow& r) {
  out << r.method << ',' << r.param_name << ',' << format_value(r.param_value) << ',' << r.seed << ','
      << format_value(r.ari) << ',' << r.misclassified << ',' << format_value(r.seconds) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) write_sweep_row_csv(out, r);
}

void write_aggregate_csv(std::ostream& out, const std::vector<SweepAggregate>& rows) {
  out << kAggregateCsvHeader << '\n';
  for (const auto& a : rows) {
    out << a.method << ',' << a.param_name << ',' << format_value(a.param_value) << ',' << a.runs << ','
        << format_value(a.mean_ari) << ',' << format_value(a.std_ari) << ',' << format_value(a.mean_misclassified)
        << ',' << format_value(a.mean_seconds) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  return read_csv<SweepRow>(in, kSweepCsvHeader, 7, [](const std::vector<std::string>& f) {
    return SweepRow{f[0], f[1], parse_double(f[2]), std::stoull(f[3]), parse_double(f[4]), std::stoll(f[5]),
                    parse_double(f[6])};
  });
}

std::vector<SweepAggregate> read_aggregate_csv(std::istream& in) {
  return read_csv<SweepAggregate>(in, kAggregateCsvHeader, 8, [](const std::vector<std::string>& f) {
    return SweepAggregate{f[0], f[1], parse_double(f[2]), std::stoi(f[3]), parse_double(f[4]),
                          parse_double(f[5]), parse_double(f[6]), parse_double(f[7])};
  });
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, const std::vector<SweepAggregate>& agg) {
  nlohmann::json doc{{"rows", nlohmann::json::array()}, {"aggregate", nlohmann::json::array()}};
  for (const auto& r : rows) {
    doc["rows"].push_back({{"method", r.method}, {"param_name", r.param_name}, {"param_value", r.param_value},
                           {"seed", r.seed}, {"ari", r.ari}, {"misclassified", r.misclassified},
                           {"seconds", r.seconds}});
  }
  for (const auto& a : agg) {
    doc["aggregate"].push_back({{"method", a.method}, {"param_name", a.param_name}, {"param_value", a.param_value},
                                {"runs", a.runs}, {"mean_ari", a.mean_ari}, {"std_ari", a.std_ari},
                                {"mean_misclassified", a.mean_misclassified}, {"mean_seconds", a.mean_seconds}});
  }
  return doc;
}

ConcentrationReport concentration_experiment(const DsbmParams& params, const std::vector<std::uint64_t>& seeds) {
  params.validate();
  const HermitianOperator expected = expected_adjacency(params, Storage::Dense);
  const MatrixXd expected_im = std::get<MatrixXd>(expected.imag_part());
  const double p = std::max(params.p, params.q);
  const double n = params.n;
  const double bound = n > 1.0 ? 10.0 * std::sqrt(p * params.k * n * std::log(n)) : 0.0;
  ConcentrationReport report;
  for (std::uint64_t seed : seeds) {
    const LabeledGraph lg = sample(params, seed);
    const HermitianOperator a = build_hermitian(lg.graph, Storage::Dense);
    MatrixXd diff = std::get<MatrixXd>(a.imag_part()) - expected_im;
    const HermitianOperator d = HermitianOperator::from_parts(params.num_vertices(), ZeroPart{}, std::move(diff), 1e-12);
    EigRequest req;
    req.count = 1;
    const auto top = eig_hermitian(d, req);
    ConcentrationTrial t;
    t.seed = seed;
    t.norm = top.empty() ? 0.0 : std::abs(top.front().value);
    t.bound = bound;
    t.ratio = bound > 0.0 ? t.norm / bound : (t.norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    t.pass = t.norm <= bound;
    report.max_ratio = std::max(report.max_ratio, t.ratio);
    report.passed += t.pass ? 1 : 0;
    report.trials.push_back(t);
  }
  return report;
}

std::string_view operator_kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Adjacency: return "A";
    case OperatorKind::RandomWalk: return "rw";
    case OperatorKind::Symmetric: return "sym";
  }
  return "A";
}

OperatorKind parse_operator_kind(std::string_view name) {
  const std::string key = lower(name);
  if (key == "a" || key == "adjacency") return OperatorKind::Adjacency;
  if (key == "rw" || key == "random-walk") return OperatorKind::RandomWalk;
  if (key == "sym" || key == "symmetric") return OperatorKind::Symmetric;
  throw std::invalid_argument("unknown operator '" + std::string(name) + "' (valid: A, rw, sym)");
}

SpectrumReport spectrum_report(std::span<const double> eigenvalues, int k) {
  if (k < 1) throw std::invalid_argument("spectrum report needs k >= 1");
  SpectrumReport rep;
  const std::size_t m = std::min<std::size_t>(eigenvalues.size(), 2 * static_cast<std::size_t>(k) + 1);
  rep.eigenvalues.assign(eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<double> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i] = std::abs(eigenvalues[i]);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (a[i] <= 0.0) break;
    const double gap = (a[i] - a[i + 1]) / a[i];
    if (gap > rep.relative_gap) {
      rep.relative_gap = gap;
      rep.outlier_count = static_cast<int>(i + 1);
    }
  }
  rep.bulk_edge = static_cast<std::size_t>(rep.outlier_count) < m ? a[rep.outlier_count] : 0.0;
  rep.fixed_count = k;
  if (static_cast<std::size_t>(k) < m && a[k - 1] > 0.0) rep.fixed_margin = (a[k - 1] - a[k]) / a[k - 1];
  return rep;
}

SpectrumReport graph_spectrum_report(const Digraph& g, OperatorKind kind, int k, EigBackend backend) {
  const Index n = g.num_vertices();
  const Index count = std::min<Index>(n, 2 * static_cast<Index>(k) + 1);
  const Storage storage = uses_lanczos(backend, n, count) ? Storage::Sparse : Storage::Dense;
  const HermitianOperator a = build_hermitian(g, storage);
  EigRequest req;
  req.count = count;
  req.backend = backend;
  std::vector<EigenPair> pairs;
  if (kind == OperatorKind::Adjacency) {
    pairs = eig_hermitian(a, req);
  } else {
    pairs = eig_hermitian(normalize_sym(a, absolute_degrees(a)), req);
  }
  std::vector<double> values;
  for (const auto& p : pairs) values.push_back(p.value);
  return spectrum_report(values, k);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 == 1 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::vector<MethodTiming> time_methods(const Digraph& g, const std::vector<MethodName>& methods, int k, int runs,
                                       const MethodOptions& options) {
  if (runs < 1) throw std::invalid_argument("timing needs at least one run");
  std::vector<MethodTiming> out;
  for (MethodName m : methods) {
    MethodTiming t{m, {}, 0.0, true};
    Partition first;
    for (int r = 0; r < runs; ++r) {
      const auto start = std::chrono::steady_clock::now();
      Partition p = run_method(m, g, k, options);
      t.seconds.push_back(seconds_since(start));
      if (r == 0) {
        first = std::move(p);
      } else if (!(p == first)) {
        t.deterministic = false;
      }
    }
    t.median = median(t.seconds);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace hermclust
