#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clebsch/types.hpp"

namespace clebsch {

// Relative singular-value threshold used for every rank decision
// (center dimension, Killing-form rank).
inline constexpr double kRankThreshold = 1e-10;

/// Finite-dimensional Lie algebra given by its structure constants
/// [E_i, E_j] = c^k_{ij} E_k, stored densely. Indices are 0-based in code.
///
/// Construction only checks shape and finiteness; antisymmetry and the
/// Jacobi identity are reported by audit() so that broken inputs can be
/// diagnosed rather than rejected.
class LieAlgebra {
 public:
  /// `constants` is laid out as c[(k * n + i) * n + j] = c^k_{ij}.
  LieAlgebra(int dimension, std::vector<double> constants,
             std::vector<std::string> labels = {});

  /// Builds the algebra from the structure matrix mu -> (mu_k c^k_{ij})_{ij},
  /// the form in which example systems are usually written down. The
  /// callable is sampled at the dual basis vectors.
  static LieAlgebra from_structure_matrix(
      int dimension,
      const std::function<Eigen::MatrixXd(const DualPoint&)>& structure_matrix,
      std::vector<std::string> labels = {});

  int dimension() const { return n_; }
  double constant(int k, int i, int j) const {
    return c_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }
  const std::vector<double>& constants() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// (ad_x)_{kj} = sum_i c^k_{ij} x^i, so ad_x y = [x, y].
  Eigen::MatrixXd ad_matrix(const AlgebraVector& x) const;
  /// S_{ij} = mu_k c^k_{ij}.
  Eigen::MatrixXd structure_matrix(const DualPoint& mu) const;

  /// kappa_{ij} = c^l_{ik} c^k_{jl}; computed once at construction.
  const Eigen::MatrixXd& killing_matrix() const { return killing_; }
  int killing_rank() const { return killing_rank_; }
  bool semisimple() const { return killing_rank_ == n_; }

  void require_dimension(Eigen::Index size, const char* what) const;

 private:
  int n_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
  Eigen::MatrixXd killing_;
  int killing_rank_ = 0;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> killing_lu_;

  friend AlgebraVector kappa_sharp(const LieAlgebra&, const DualPoint&);
};

struct AlgebraReport {
  double jacobi_residual = 0.0;
  double antisymmetry_residual = 0.0;
  int center_dimension = 0;
  Eigen::MatrixXd killing_matrix;
  bool semisimple = false;
  int killing_rank = 0;
};

/// [x, y]^k = c^k_{ij} x^i y^j
AlgebraVector bracket(const LieAlgebra& a, const AlgebraVector& x,
                      const AlgebraVector& y);

/// (ad*_x alpha)_j = alpha_k c^k_{ij} x^i, i.e. <ad*_x alpha, y> = <alpha, [x,y]>.
DualPoint coadjoint(const LieAlgebra& a, const AlgebraVector& x,
                    const DualPoint& alpha);

/// Matrix of alpha -> ad*_x alpha (the transpose of ad_x).
Eigen::MatrixXd coadjoint_matrix(const LieAlgebra& a, const AlgebraVector& x);

AlgebraReport audit(const LieAlgebra& a);

double killing_form(const LieAlgebra& a, const AlgebraVector& x,
                    const AlgebraVector& y);

/// kappa-flat: x -> kappa(x, .)
DualPoint kappa_flat(const LieAlgebra& a, const AlgebraVector& x);

/// Inverse of kappa-flat. Throws NotSemisimpleError when kappa is degenerate.
AlgebraVector kappa_sharp(const LieAlgebra& a, const DualPoint& alpha);

/// Number of singular values above kRankThreshold * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m);

LieAlgebra abelian_algebra(int dimension);
LieAlgebra direct_sum(const LieAlgebra& first, const LieAlgebra& second);

// Plain-text structure constants:
//
//   # comment
//   n=<dimension>
//   labels=<name>,<name>,...      (optional)
//   <k> <i> <j> <value>           (1-based; one line per nonzero c^k_ij)
//
// Entries not listed are zero. The antisymmetric partner c^k_ji is NOT
// implied; list both so that audit() can confirm antisymmetry.
LieAlgebra parse_structure_constants(std::istream& in);
LieAlgebra load_structure_constants(const std::string& path);
void write_structure_constants(std::ostream& out, const LieAlgebra& a);

}  // namespace clebsch
