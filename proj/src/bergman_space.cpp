#include "bergman/bergman_space.hpp"

#include <cmath>
#include <numeric>

#include "bergman/parallel.hpp"

namespace bergman {

int total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

double monomial_norm(const MultiIndex& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n) throw DomainError("multi-index has wrong length");
  double log_num = std::lgamma(n + 1.0);
  for (int a : alpha) {
    if (a < 0) throw DomainError("multi-index entries must be nonnegative");
    log_num += std::lgamma(a + 1.0);
  }
  return std::exp(0.5 * (log_num - std::lgamma(n + total_degree(alpha) + 1.0)));
}

namespace {

// All alpha with |alpha| = deg in lexicographically descending order.
void append_degree(int n, int deg, MultiIndex& cur, int pos, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int a = deg; a >= 0; --a) {
    cur[pos] = a;
    append_degree(n, deg - a, cur, pos + 1, out);
  }
}

}  // namespace

TruncatedBasis::TruncatedBasis(int n, int d) : n_(n), d_(d) {
  MultiIndex cur(n, 0);
  for (int deg = 0; deg <= d; ++deg) append_degree(n, deg, cur, 0, indices_);
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    norms_.push_back(monomial_norm(indices_[k], n));
    degrees_.push_back(total_degree(indices_[k]));
    lookup_.emplace(indices_[k], static_cast<Eigen::Index>(k));
  }
  const Eigen::Index N = size();
  sums_.resize(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index l = 0; l < N; ++l) {
      if (degrees_[k] + degrees_[l] > d) {
        sums_(k, l) = -1;
        continue;
      }
      MultiIndex s = indices_[k];
      for (int i = 0; i < n; ++i) s[i] += indices_[l][i];
      sums_(k, l) = lookup_.at(s);
    }
  }
}

std::shared_ptr<const TruncatedBasis> TruncatedBasis::make(int n, int d) {
  if (n < 1) throw DomainError("basis dimension must be >= 1");
  if (d < 0) throw DomainError("basis degree must be >= 0");
  return std::shared_ptr<const TruncatedBasis>(new TruncatedBasis(n, d));
}

std::optional<Eigen::Index> TruncatedBasis::position(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::Index TruncatedBasis::block_size(int p) const {
  Eigen::Index count = 0;
  for (int deg : degrees_)
    if (deg <= p) ++count;
  return count;
}

CVector TruncatedBasis::monomials(const CVector& z) const {
  if (z.size() != n_) throw DomainError("point has wrong dimension for basis");
  CMatrix powers(n_, d_ + 1);
  for (int i = 0; i < n_; ++i) {
    powers(i, 0) = 1.0;
    for (int k = 1; k <= d_; ++k) powers(i, k) = powers(i, k - 1) * z(i);
  }
  CVector out(size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    cplx v = 1.0;
    const MultiIndex& a = indices_[static_cast<std::size_t>(k)];
    for (int i = 0; i < n_; ++i) v *= powers(i, a[i]);
    out(k) = v;
  }
  return out;
}

CVector TruncatedBasis::evaluate(const CVector& z) const {
  CVector out = monomials(z);
  for (Eigen::Index k = 0; k < size(); ++k) out(k) /= norms_[static_cast<std::size_t>(k)];
  return out;
}

CMatrix TruncatedBasis::evaluate_at_nodes(const QuadratureRule& rule) const {
  if (rule.dim != n_) throw DomainError("rule dimension does not match basis");
  CMatrix out(size(), rule.size());
  parallel_for(static_cast<std::size_t>(rule.size()), [&](std::size_t i) {
    const auto c = static_cast<Eigen::Index>(i);
    out.col(c) = evaluate(rule.nodes.col(c));
  });
  return out;
}

cplx kernel_raw(const CVector& z, const CVector& w) {
  const int n = static_cast<int>(z.size());
  const double pre = std::pow(1.0 - z.squaredNorm(), 0.5 * (n + 1));
  return pre / std::pow(1.0 - inner(w, z), n + 1);
}

cplx kernel(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw DomainError("dimension mismatch");
  return kernel_raw(z.coords(), w.coords());
}

Expansion kernel_expansion(const BallPoint& z, const BasisPtr& basis) {
  const double pre = std::pow(1.0 - z.norm2(), 0.5 * (basis->dim() + 1));
  return {basis, pre * basis->evaluate(z.coords()).conjugate()};
}

cplx eval_expansion(const Expansion& e, const CVector& z) {
  if (e.coeffs.size() != e.basis->size()) throw DomainError("expansion size does not match basis");
  return e.basis->evaluate(z).transpose() * e.coeffs;
}

CVector project_values(const CVector& values, const CMatrix& basis_at_nodes,
                       const QuadratureRule& rule) {
  const CVector weighted = rule.weights.cast<cplx>().cwiseProduct(values);
  CVector out(basis_at_nodes.rows());
  // One pairwise reduction per coefficient keeps the result worker-independent.
  parallel_for(static_cast<std::size_t>(out.size()), [&](std::size_t k) {
    const auto r = static_cast<Eigen::Index>(k);
    std::vector<cplx> terms(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
      terms[static_cast<std::size_t>(i)] = weighted(i) * std::conj(basis_at_nodes(r, i));
    out(r) = pairwise_sum(std::span<const cplx>(terms));
  });
  return out;
}

Expansion project(const BallFunction& f, const BasisPtr& basis, const QuadratureRule& rule) {
  const CVector values = evaluate_at_nodes(f, rule);
  return {basis, project_values(values, basis->evaluate_at_nodes(rule), rule)};
}

CMatrix gram_matrix(const BasisPtr& basis, const QuadratureRule& rule) {
  const CMatrix E = basis->evaluate_at_nodes(rule);
  return E.conjugate() * rule.weights.asDiagonal() * E.transpose();
}

double gram_defect(const BasisPtr& basis, const QuadratureRule& rule) {
  const CMatrix G = gram_matrix(basis, rule);
  return (G - CMatrix::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

double basis_sup_norm(const TruncatedBasis& basis, Eigen::Index k) {
  const MultiIndex& a = basis.index(k);
  const int deg = basis.degree_of(k);
  double log_sup = 0.0;
  for (int ai : a)
    if (ai > 0) log_sup += 0.5 * ai * std::log(static_cast<double>(ai) / deg);
  return std::exp(log_sup) / basis.norm(k);
}

double expansion_sup_bound(const Expansion& e) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < e.coeffs.size(); ++k)
    total += std::abs(e.coeffs(k)) * basis_sup_norm(*e.basis, k);
  return total;
}

nlohmann::json basis_to_json(const TruncatedBasis& basis) {
  nlohmann::json j;
  j["dimension"] = basis.dim();
  j["degree"] = basis.degree();
  j["count"] = basis.size();
  auto& idx = j["indices"] = nlohmann::json::array();
  auto& norms = j["norms"] = nlohmann::json::array();
  for (Eigen::Index k = 0; k < basis.size(); ++k) {
    idx.push_back(basis.index(k));
    norms.push_back(basis.norm(k));
  }
  return j;
}

nlohmann::json expansion_to_json(const Expansion& e) {
  nlohmann::json j = basis_to_json(*e.basis);
  auto& c = j["coefficients"] = nlohmann::json::array();
  for (Eigen::Index k = 0; k < e.coeffs.size(); ++k)
    c.push_back({e.coeffs(k).real(), e.coeffs(k).imag()});
  return j;
}

}  // namespace bergman
