#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bergman/quadrature.hpp"

namespace bergman {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

/// ||z^alpha|| in L^2_a: sqrt(n! alpha! / (n + |alpha|)!), via log-gamma.
double monomial_norm(const MultiIndex& alpha, int n);

/// Multi-indices of total degree <= d in graded lexicographic order, with the
/// normalized monomials e_alpha = z^alpha / ||z^alpha|| as orthonormal basis.
class TruncatedBasis {
 public:
  static std::shared_ptr<const TruncatedBasis> make(int n, int d);

  int dim() const { return n_; }
  int degree() const { return d_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }
  const MultiIndex& index(Eigen::Index k) const { return indices_.at(static_cast<std::size_t>(k)); }
  double norm(Eigen::Index k) const { return norms_.at(static_cast<std::size_t>(k)); }
  int degree_of(Eigen::Index k) const { return degrees_.at(static_cast<std::size_t>(k)); }
  std::optional<Eigen::Index> position(const MultiIndex& alpha) const;
  /// Position of alpha_k + alpha_l, or -1 when the sum leaves the basis.
  Eigen::Index sum_position(Eigen::Index k, Eigen::Index l) const { return sums_(k, l); }
  /// Number of indices of degree <= p (the leading block).
  Eigen::Index block_size(int p) const;

  /// Unnormalized monomials z^alpha at z.
  CVector monomials(const CVector& z) const;
  /// e_alpha(z) for every index.
  CVector evaluate(const CVector& z) const;
  /// e_alpha at every node of the rule; size() x rule.size().
  CMatrix evaluate_at_nodes(const QuadratureRule& rule) const;

 private:
  TruncatedBasis(int n, int d);
  int n_;
  int d_;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_;
  std::vector<int> degrees_;
  std::map<MultiIndex, Eigen::Index> lookup_;
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> sums_;
};

using BasisPtr = std::shared_ptr<const TruncatedBasis>;

struct Expansion {
  BasisPtr basis;
  CVector coeffs;  ///< coefficient of e_alpha
};

/// k_z(w) = (1 - |z|^2)^{(n+1)/2} (1 - <w,z>)^{-(n+1)}
cplx kernel(const BallPoint& z, const BallPoint& w);
cplx kernel_raw(const CVector& z, const CVector& w);

/// Truncated expansion of k_z: coefficients (1 - |z|^2)^{(n+1)/2} conj(e_alpha(z)).
Expansion kernel_expansion(const BallPoint& z, const BasisPtr& basis);

cplx eval_expansion(const Expansion& e, const CVector& z);

/// Coefficients <f, e_alpha> by quadrature.
Expansion project(const BallFunction& f, const BasisPtr& basis, const QuadratureRule& rule);
/// Same, reusing precomputed basis values at the rule nodes.
CVector project_values(const CVector& values, const CMatrix& basis_at_nodes,
                       const QuadratureRule& rule);

/// Gram matrix <e_alpha, e_beta> under the rule, and its max-entry defect from I.
CMatrix gram_matrix(const BasisPtr& basis, const QuadratureRule& rule);
double gram_defect(const BasisPtr& basis, const QuadratureRule& rule);

/// sup over the ball of |e_alpha|: prod (alpha_i/|alpha|)^{alpha_i/2} / ||z^alpha||.
double basis_sup_norm(const TruncatedBasis& basis, Eigen::Index k);
/// sum |c_alpha| sup |e_alpha|, an upper bound for the sup norm of the expansion.
double expansion_sup_bound(const Expansion& e);

nlohmann::json basis_to_json(const TruncatedBasis& basis);
nlohmann::json expansion_to_json(const Expansion& e);

}  // namespace bergman
