#include "clebsch/lie_algebra.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace clebsch {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

LieAlgebra::LieAlgebra(int dimension, std::vector<double> constants,
                       std::vector<std::string> labels)
    : n_(dimension), c_(std::move(constants)), labels_(std::move(labels)) {
  if (n_ <= 0) {
    throw ContractViolation("LieAlgebra: dimension must be positive");
  }
  const auto expected = static_cast<std::size_t>(n_) * n_ * n_;
  if (c_.size() != expected) {
    throw ContractViolation("LieAlgebra: expected " + std::to_string(expected) +
                            " structure constants, got " +
                            std::to_string(c_.size()));
  }
  for (double v : c_) {
    if (!std::isfinite(v)) {
      throw ContractViolation("LieAlgebra: non-finite structure constant");
    }
  }
  if (labels_.empty()) {
    for (int i = 0; i < n_; ++i) labels_.push_back("mu" + std::to_string(i + 1));
  } else if (static_cast<int>(labels_.size()) != n_) {
    throw ContractViolation("LieAlgebra: label count does not match dimension");
  }

  killing_ = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      double sum = 0.0;
      for (int k = 0; k < n_; ++k) {
        for (int l = 0; l < n_; ++l) sum += constant(l, i, k) * constant(k, j, l);
      }
      killing_(i, j) = sum;
    }
  }
  killing_rank_ = numerical_rank(killing_);
  if (killing_rank_ == n_) killing_lu_.emplace(killing_);
}

LieAlgebra LieAlgebra::from_structure_matrix(
    int dimension,
    const std::function<Eigen::MatrixXd(const DualPoint&)>& structure_matrix,
    std::vector<std::string> labels) {
  const auto n = static_cast<std::size_t>(dimension);
  std::vector<double> c(n * n * n, 0.0);
  for (int k = 0; k < dimension; ++k) {
    const Eigen::MatrixXd s = structure_matrix(DualPoint::unit(dimension, k));
    if (s.rows() != dimension || s.cols() != dimension) {
      throw ContractViolation("from_structure_matrix: matrix has wrong shape");
    }
    for (int i = 0; i < dimension; ++i) {
      for (int j = 0; j < dimension; ++j) c[(k * n + i) * n + j] = s(i, j);
    }
  }
  return LieAlgebra(dimension, std::move(c), std::move(labels));
}

Eigen::MatrixXd LieAlgebra::ad_matrix(const AlgebraVector& x) const {
  require_dimension(x.size(), "ad_matrix");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0.0) continue;
    for (int k = 0; k < n_; ++k) {
      for (int j = 0; j < n_; ++j) m(k, j) += constant(k, i, j) * x[i];
    }
  }
  return m;
}

Eigen::MatrixXd LieAlgebra::structure_matrix(const DualPoint& mu) const {
  require_dimension(mu.size(), "structure_matrix");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 0; k < n_; ++k) {
    if (mu[k] == 0.0) continue;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) s(i, j) += mu[k] * constant(k, i, j);
    }
  }
  return s;
}

void LieAlgebra::require_dimension(Eigen::Index size, const char* what) const {
  if (size != n_) {
    throw ContractViolation(std::string(what) + ": expected dimension " +
                            std::to_string(n_) + ", got " +
                            std::to_string(size));
  }
}

AlgebraVector bracket(const LieAlgebra& a, const AlgebraVector& x,
                      const AlgebraVector& y) {
  a.require_dimension(y.size(), "bracket");
  return a.ad_matrix(x) * y;
}

DualPoint coadjoint(const LieAlgebra& a, const AlgebraVector& x,
                    const DualPoint& alpha) {
  a.require_dimension(alpha.size(), "coadjoint");
  return a.ad_matrix(x).transpose() * alpha;
}

Eigen::MatrixXd coadjoint_matrix(const LieAlgebra& a, const AlgebraVector& x) {
  return a.ad_matrix(x).transpose();
}

int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double largest = sigma.size() > 0 ? sigma[0] : 0.0;
  if (largest == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > kRankThreshold * largest) ++rank;
  }
  return rank;
}

AlgebraReport audit(const LieAlgebra& a) {
  const int n = a.dimension();
  AlgebraReport report;

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        report.antisymmetry_residual =
            std::max(report.antisymmetry_residual,
                     std::abs(a.constant(k, i, j) + a.constant(k, j, i)));
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          double sum = 0.0;
          for (int k = 0; k < n; ++k) {
            sum += a.constant(k, i, j) * a.constant(m, k, l) +
                   a.constant(k, j, l) * a.constant(m, k, i) +
                   a.constant(k, l, i) * a.constant(m, k, j);
          }
          report.jacobi_residual = std::max(report.jacobi_residual, std::abs(sum));
        }
      }
    }
  }

  // x -> ([x, E_j]^k)_{j,k}; its kernel is the center.
  Eigen::MatrixXd center_map(n * n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) center_map(j * n + k, i) = a.constant(k, i, j);
    }
  }
  report.center_dimension = n - numerical_rank(center_map);

  report.killing_matrix = a.killing_matrix();
  report.killing_rank = a.killing_rank();
  report.semisimple = a.semisimple();
  return report;
}

double killing_form(const LieAlgebra& a, const AlgebraVector& x,
                    const AlgebraVector& y) {
  a.require_dimension(x.size(), "killing_form");
  a.require_dimension(y.size(), "killing_form");
  return x.dot(a.killing_matrix() * y);
}

DualPoint kappa_flat(const LieAlgebra& a, const AlgebraVector& x) {
  a.require_dimension(x.size(), "kappa_flat");
  return a.killing_matrix() * x;
}

AlgebraVector kappa_sharp(const LieAlgebra& a, const DualPoint& alpha) {
  a.require_dimension(alpha.size(), "kappa_sharp");
  if (!a.killing_lu_) {
    throw NotSemisimpleError(
        "kappa_sharp: Killing form is degenerate (algebra is not semisimple, "
        "rank " + std::to_string(a.killing_rank()) + " < " +
        std::to_string(a.dimension()) + ")");
  }
  return a.killing_lu_->solve(alpha);
}

LieAlgebra abelian_algebra(int dimension) {
  const auto n = static_cast<std::size_t>(dimension);
  return LieAlgebra(dimension, std::vector<double>(n * n * n, 0.0));
}

LieAlgebra direct_sum(const LieAlgebra& first, const LieAlgebra& second) {
  const int n1 = first.dimension();
  const int n = n1 + second.dimension();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> c(un * un * un, 0.0);
  auto at = [&](int k, int i, int j) -> double& {
    return c[(static_cast<std::size_t>(k) * un + i) * un + j];
  };
  for (int k = 0; k < n1; ++k)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) at(k, i, j) = first.constant(k, i, j);
  for (int k = 0; k < second.dimension(); ++k)
    for (int i = 0; i < second.dimension(); ++i)
      for (int j = 0; j < second.dimension(); ++j)
        at(n1 + k, n1 + i, n1 + j) = second.constant(k, i, j);
  std::vector<std::string> labels = first.labels();
  for (int i = 0; i < second.dimension(); ++i) {
    labels.push_back("mu" + std::to_string(n1 + i + 1));
  }
  return LieAlgebra(n, std::move(c), std::move(labels));
}

LieAlgebra parse_structure_constants(std::istream& in) {
  int n = 0;
  std::vector<double> c;
  std::vector<std::string> labels;
  std::string line;
  int line_number = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("structure constants, line " + std::to_string(line_number) +
                     ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.rfind("n=", 0) == 0 || line.rfind("n =", 0) == 0) {
      if (n != 0) fail("duplicate dimension header");
      const std::string value = trim(line.substr(line.find('=') + 1));
      try {
        std::size_t used = 0;
        n = std::stoi(value, &used);
        if (used != value.size()) fail("bad dimension '" + value + "'");
      } catch (const std::logic_error&) {
        fail("bad dimension '" + value + "'");
      }
      if (n <= 0) fail("dimension must be positive");
      const auto un = static_cast<std::size_t>(n);
      c.assign(un * un * un, 0.0);
      continue;
    }
    if (line.rfind("labels", 0) == 0 && line.find('=') != std::string::npos) {
      std::stringstream list(line.substr(line.find('=') + 1));
      std::string label;
      while (std::getline(list, label, ',')) labels.push_back(trim(label));
      continue;
    }
    if (n == 0) fail("entry before 'n=<int>' header");

    std::istringstream fields(line);
    int k = 0, i = 0, j = 0;
    double value = 0.0;
    std::string extra;
    if (!(fields >> k >> i >> j >> value) || (fields >> extra)) {
      fail("expected '<k> <i> <j> <value>'");
    }
    if (k < 1 || k > n || i < 1 || i > n || j < 1 || j > n) {
      fail("index out of range 1.." + std::to_string(n));
    }
    const auto un = static_cast<std::size_t>(n);
    c[((k - 1) * un + (i - 1)) * un + (j - 1)] = value;
  }
  if (n == 0) {
    throw ParseError("structure constants: missing 'n=<int>' header");
  }
  return LieAlgebra(n, std::move(c), std::move(labels));
}

LieAlgebra load_structure_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open structure-constant file '" + path + "'");
  return parse_structure_constants(in);
}

void write_structure_constants(std::ostream& out, const LieAlgebra& a) {
  const int n = a.dimension();
  out << "n=" << n << '\n';
  out << "labels=";
  for (int i = 0; i < n; ++i) out << (i ? "," : "") << a.labels()[i];
  out << '\n' << std::setprecision(17);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (const double v = a.constant(k, i, j); v != 0.0)
          out << k + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << v << '\n';
}

}  // namespace clebsch
