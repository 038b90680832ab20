#pragma once

#include <cstddef>
#include <vector>

#include "jofc/dense_matrix.hpp"

namespace jofc {

/// Structured weight family for the omnibus embedding.
///
/// Every variant induces, for m modalities over n objects, a within-modality
/// weight a_i (the weight on each (Delta_i)_{jk} fidelity term) and a
/// cross-modality weight w_ij (the weight on each matched-pair
/// commensurability term):
///   uniform(w):        a_i = 1,        w_ij = w
///   general(W):        a_i = W_ii,     w_ij = W_ij
///   product(a, c):     a_i = c*a_i,    w_ij = a_i*a_j
/// All weights must be strictly positive.
class WeightSpec {
public:
  enum class Kind { uniform, general_symmetric, product };

  static WeightSpec uniform(double w);
  static WeightSpec general(DenseMatrix w);
  static WeightSpec product(std::vector<double> within, double fidelity_scale = 1.0);

  Kind kind() const { return kind_; }

  /// Weight on within-modality fidelity terms of modality i.
  double within_weight(std::size_t i) const;
  /// Weight on matched-pair terms between modalities i != j.
  double cross_weight(std::size_t i, std::size_t j) const;

  /// Uniform specs fit any m; the other variants carry their own size.
  void validate(std::size_t m) const;

  double uniform_w() const { return uniform_w_; }
  double fidelity_scale() const { return scale_; }
  const DenseMatrix& general_matrix() const { return general_; }
  const std::vector<double>& product_within() const { return product_; }

private:
  WeightSpec() = default;
  Kind kind_ = Kind::uniform;
  double uniform_w_ = 1.0;
  double scale_ = 1.0;
  DenseMatrix general_;
  std::vector<double> product_;
};

/// The m x m system matrix whose inverse drives the fast Guttman transform:
/// diagonal n*a_i + sum_{j != i} w_ij, off-diagonal -w_ij. Strictly
/// diagonally dominant for positive weights, hence invertible.
DenseMatrix script_w(const WeightSpec& spec, std::size_t m, std::size_t n);

/// Inverse of script_w: closed form for the uniform and product variants,
/// Gaussian elimination for the general one.
DenseMatrix script_w_inverse(const WeightSpec& spec, std::size_t m, std::size_t n);

/// script_w together with its cached inverse; immutable once built.
struct ScriptW {
  DenseMatrix w;
  DenseMatrix w_inverse;
  static ScriptW make(const WeightSpec& spec, std::size_t m, std::size_t n);
};

/// Implicit mn x mn operator V (x) I_n + Z (x) J_n.
struct KroneckerFactors {
  DenseMatrix v;
  DenseMatrix z;
};

/// (A (x) I_n + B (x) J_n)^{-1} = A^{-1} (x) I_n - (A + nB)^{-1} B A^{-1} (x) J_n.
/// Requires A and A + nB invertible.
KroneckerFactors kronecker_sum_inverse(const DenseMatrix& a, const DenseMatrix& b,
                                       std::size_t n);

/// Factors (V, Z) of the exact Laplacian pseudoinverse L^+ = V (x) I_n + Z (x) J_n
/// for the weight graph of `spec`. V is script_w_inverse.
KroneckerFactors laplacian_pseudoinverse_factors(const WeightSpec& spec, std::size_t m,
                                                 std::size_t n);

/// Materialize V (x) I_n + Z (x) J_n. Test/reference path only.
DenseMatrix materialize_kronecker(const KroneckerFactors& f, std::size_t n);

/// Full mn x mn weight matrix: diagonal blocks a_i (J_n - I_n), off-diagonal
/// blocks w_ij I_n. Test oracle only; guarded by `cap`.
DenseMatrix dense_weight_matrix(const WeightSpec& spec, std::size_t m, std::size_t n,
                                std::size_t cap = 4096);

/// Combinatorial Laplacian D - W of a symmetric weight matrix.
DenseMatrix laplacian_of(const DenseMatrix& w);

}  // namespace jofc
