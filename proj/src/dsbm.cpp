#include "hermclust/dsbm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hermclust/rng.hpp"
#include "hermclust/spectral.hpp"

namespace hermclust {
namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
}

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

std::string_view meta_graph_name(MetaGraph m) {
  switch (m) {
    case MetaGraph::Cyclic: return "cyclic";
    case MetaGraph::Complete: return "complete";
    case MetaGraph::Explicit: return "explicit";
  }
  return "explicit";
}

MetaGraph parse_meta_graph(std::string_view name) {
  if (name == "cyclic") return MetaGraph::Cyclic;
  if (name == "complete") return MetaGraph::Complete;
  if (name == "explicit") return MetaGraph::Explicit;
  throw std::invalid_argument("unknown meta-graph '" + std::string(name) + "' (valid: cyclic, complete, explicit)");
}

void DsbmParams::validate() const {
  if (k < 1) throw std::invalid_argument("DSBM needs k >= 1");
  if (n < 1) throw std::invalid_argument("DSBM needs n >= 1");
  if (static_cast<long long>(k) * n > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("DSBM vertex count overflows");
  }
  check_probability(p, "p");
  check_probability(q, "q");
  if (F.rows() != k || F.cols() != k) throw std::invalid_argument("F must be k x k");
  for (int j = 0; j < k; ++j) {
    if (F(j, j) != 0.5) throw std::invalid_argument("F must have 1/2 on the diagonal");
    for (int l = 0; l < k; ++l) {
      if (!(F(j, l) >= 0.0 && F(j, l) <= 1.0)) throw std::invalid_argument("F entries must lie in [0, 1]");
      if (std::abs(F(j, l) + F(l, j) - 1.0) > 1e-12) {
        throw std::invalid_argument("F(j, l) + F(l, j) must equal 1 (violated at " + std::to_string(j) + ", " +
                                    std::to_string(l) + ")");
      }
    }
  }
}

Eigen::MatrixXd cyclic_F(int k, double eta) {
  if (k < 1) throw std::invalid_argument("cyclic meta-graph needs k >= 1");
  check_eta(eta);
  Eigen::MatrixXd f = Eigen::MatrixXd::Constant(k, k, 0.5);
  if (k < 3) {
    // With k = 2 the successor and predecessor coincide; orient 0 -> 1.
    if (k == 2) {
      f(0, 1) = 1.0 - eta;
      f(1, 0) = eta;
    }
    return f;
  }
  for (int j = 0; j < k; ++j) {
    const int next = (j + 1) % k;
    f(j, next) = 1.0 - eta;
    f(next, j) = eta;
  }
  return f;
}

Eigen::MatrixXd complete_random_F(int k, double eta, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("complete meta-graph needs k >= 1");
  check_eta(eta);
  const CounterRng rng(seed);
  Eigen::MatrixXd f = Eigen::MatrixXd::Constant(k, k, 0.5);
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      const bool forward = rng.uniform(2, static_cast<std::uint64_t>(j) * k + l) < 0.5;
      f(j, l) = forward ? 1.0 - eta : eta;
      f(l, j) = 1.0 - f(j, l);
    }
  }
  return f;
}

DsbmParams cyclic_params(int k, int n, double p, double q, double eta) {
  DsbmParams params{k, n, p, q, cyclic_F(k, eta), MetaGraph::Cyclic, eta, 0};
  params.validate();
  return params;
}

DsbmParams complete_params(int k, int n, double p, double q, double eta, std::uint64_t seed) {
  DsbmParams params{k, n, p, q, complete_random_F(k, eta, seed), MetaGraph::Complete, eta, seed};
  params.validate();
  return params;
}

LabeledGraph sample(const DsbmParams& params, std::uint64_t seed) {
  params.validate();
  const int total = params.num_vertices();
  const CounterRng rng(seed);
  const auto un = static_cast<std::uint64_t>(total);
  std::vector<Edge> edges;
  const double expected = 0.5 * total * (params.p * params.n + params.q * (total - params.n));
  edges.reserve(static_cast<std::size_t>(expected * 1.1) + 16);
  for (int u = 0; u < total; ++u) {
    const int cu = u / params.n;
    for (int v = u + 1; v < total; ++v) {
      const int cv = v / params.n;
      const std::uint64_t counter = static_cast<std::uint64_t>(u) * un + static_cast<std::uint64_t>(v);
      const double prob = cu == cv ? params.p : params.q;
      if (!(rng.uniform(0, counter) < prob)) continue;
      if (rng.uniform(1, counter) < params.F(cu, cv)) {
        edges.push_back({u, v, 1.0});
      } else {
        edges.push_back({v, u, 1.0});
      }
    }
  }
  LabeledGraph out;
  out.graph = Digraph::from_edges(total, edges);
  out.truth.k = params.k;
  out.truth.labels.resize(static_cast<std::size_t>(total));
  for (int u = 0; u < total; ++u) out.truth.labels[u] = u / params.n;
  return out;
}

Eigen::MatrixXcd f_tilde(const Eigen::MatrixXd& F) {
  if (F.rows() != F.cols()) throw std::invalid_argument("F must be square");
  Eigen::MatrixXcd out(F.rows(), F.cols());
  out.real().setZero();
  out.imag() = 2.0 * F - Eigen::MatrixXd::Ones(F.rows(), F.cols());
  return out;
}

MetaSpectrum meta_spectrum(const Eigen::MatrixXd& F) {
  const Eigen::MatrixXcd ft = f_tilde(F);
  const auto pairs = eig_hermitian(ft);
  const Eigen::Index k = ft.rows();
  MetaSpectrum out;
  out.eigenvalues.resize(k);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(k, k);
  out.rho_tilde = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double rho = pairs[j].value;
    out.eigenvalues[j] = rho;
    if (std::abs(rho) > kMetaRankCutoff) {
      ++out.rank;
      proj += pairs[j].vector * pairs[j].vector.adjoint();
      out.rho_tilde = out.rank == 1 ? std::abs(rho) : std::min(out.rho_tilde, std::abs(rho));
    }
  }
  out.theta = k < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index l = j + 1; l < k; ++l) out.theta = std::min(out.theta, (proj.row(j) - proj.row(l)).norm());
  }
  return out;
}

HermitianOperator expected_adjacency(const DsbmParams& params, Storage storage) {
  params.validate();
  const int total = params.num_vertices();
  // The lower block is the exact negation of the upper one, so the result is
  // skew to the last bit.
  const auto block = [&](int j, int l) {
    if (j == l) return 0.0;
    return j < l ? params.q * (2.0 * params.F(j, l) - 1.0) : -params.q * (2.0 * params.F(l, j) - 1.0);
  };
  if (storage == Storage::Sparse) {
    std::vector<Eigen::Triplet<double>> t;
    for (int u = 0; u < total; ++u) {
      for (int v = 0; v < total; ++v) {
        const double x = block(u / params.n, v / params.n);
        if (x != 0.0) t.emplace_back(u, v, x);
      }
    }
    SparseMatrix s(total, total);
    s.setFromTriplets(t.begin(), t.end());
    return HermitianOperator::from_parts(total, ZeroPart{}, std::move(s), 0.0);
  }
  Eigen::MatrixXd im(total, total);
  for (int v = 0; v < total; ++v) {
    for (int u = 0; u < total; ++u) im(u, v) = block(u / params.n, v / params.n);
  }
  return HermitianOperator::from_parts(total, ZeroPart{}, std::move(im), 0.0);
}

AssumptionCheck assumption_check(double rho_tilde, double theta, int k, double n, double p, double C) {
  if (!(n > 1.0) || !(p > 0.0) || k < 1 || !(C > 0.0)) {
    throw std::invalid_argument("assumption check needs n > 1, p > 0, k >= 1 and C > 0");
  }
  AssumptionCheck out;
  if (!(theta > 0.0)) {
    out.nondistinguishing = true;
    out.rhs = std::numeric_limits<double>::infinity();
    return out;
  }
  out.rhs = C * (k / theta) * std::sqrt(std::log(n) / (p * n));
  out.margin = rho_tilde / out.rhs;
  out.pass = rho_tilde >= out.rhs;
  return out;
}

AssumptionCheck assumption_check(const DsbmParams& params, double C) {
  params.validate();
  const MetaSpectrum ms = meta_spectrum(params.F);
  return assumption_check(ms.rho_tilde, ms.theta, params.k, params.n, params.p, C);
}

double misclassification_bound(int k, double rho_tilde, double theta, double p, double n) {
  if (!(n > 0.0) || k < 1) throw std::invalid_argument("bound needs n > 0 and k >= 1");
  const double denom = rho_tilde * rho_tilde * theta * theta * p;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * k * std::log(n) / denom;
}

double misclassification_bound(const DsbmParams& params) {
  params.validate();
  const MetaSpectrum ms = meta_spectrum(params.F);
  return misclassification_bound(params.k, ms.rho_tilde, ms.theta, params.p, params.n);
}

double cyclic_misclassification_bound(int k, double eta, double p, double n) {
  if (!(n > 0.0) || k < 1) throw std::invalid_argument("bound needs n > 0 and k >= 1");
  if (eta >= 0.5 || !(p > 0.0)) return std::numeric_limits<double>::infinity();
  const double gap = 1.0 - 2.0 * eta;
  return std::pow(static_cast<double>(k), 4) * std::log(n) / (gap * gap * p);
}

nlohmann::json params_to_json(const DsbmParams& params) {
  nlohmann::json f = nlohmann::json::array();
  for (int j = 0; j < params.F.rows(); ++j) {
    for (int l = 0; l < params.F.cols(); ++l) f.push_back(params.F(j, l));
  }
  return {{"k", params.k},   {"n", params.n},     {"p", params.p},
          {"q", params.q},   {"F", f},            {"meta", std::string(meta_graph_name(params.meta))},
          {"eta", params.eta}, {"seed", params.seed}};
}

DsbmParams params_from_json(const nlohmann::json& doc) {
  try {
    DsbmParams params;
    params.k = doc.at("k").get<int>();
    params.n = doc.at("n").get<int>();
    params.p = doc.at("p").get<double>();
    params.q = doc.contains("q") ? doc.at("q").get<double>() : params.p;
    params.meta = parse_meta_graph(doc.value("meta", std::string("explicit")));
    params.eta = doc.value("eta", 0.0);
    params.seed = doc.value("seed", std::uint64_t{0});
    if (params.k < 1) throw std::invalid_argument("DSBM needs k >= 1");
    if (doc.contains("F") && !doc.at("F").is_null()) {
      const auto& f = doc.at("F");
      if (!f.is_array() || f.size() != static_cast<std::size_t>(params.k) * params.k) {
        throw std::invalid_argument("F must be a row-major array of k*k numbers");
      }
      params.F.resize(params.k, params.k);
      for (int j = 0; j < params.k; ++j) {
        for (int l = 0; l < params.k; ++l) params.F(j, l) = f.at(static_cast<std::size_t>(j * params.k + l)).get<double>();
      }
    } else if (params.meta == MetaGraph::Cyclic) {
      params.F = cyclic_F(params.k, params.eta);
    } else if (params.meta == MetaGraph::Complete) {
      params.F = complete_random_F(params.k, params.eta, params.seed);
    } else {
      throw std::invalid_argument("explicit meta-graph needs F");
    }
    params.validate();
    return params;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed DSBM parameters: ") + e.what());
  }
}

}  // namespace hermclust
