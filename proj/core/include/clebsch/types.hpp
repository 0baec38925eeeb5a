#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>

#include "clebsch/errors.hpp"

namespace clebsch {

// Coordinate vector tagged with the space it lives in. Arithmetic is Eigen's;
// the tag keeps algebra elements and covectors apart in signatures.
template <class Tag>
class Coordinates : public Eigen::VectorXd {
 public:
  using Base = Eigen::VectorXd;

  Coordinates() = default;

  Coordinates(std::initializer_list<double> values)
      : Base(static_cast<Eigen::Index>(values.size())) {
    std::copy(values.begin(), values.end(), data());
  }

  template <typename Derived>
  Coordinates(const Eigen::MatrixBase<Derived>& other) : Base(other) {}

  template <typename Derived>
  Coordinates& operator=(const Eigen::MatrixBase<Derived>& other) {
    Base::operator=(other);
    return *this;
  }

  static Coordinates zeros(Eigen::Index n) { return Base::Zero(n); }
  static Coordinates unit(Eigen::Index n, Eigen::Index i) {
    return Base::Unit(n, i);
  }
};

struct AlgebraTag {};
struct DualTag {};

// x = x^i E_i in the Lie algebra g.
using AlgebraVector = Coordinates<AlgebraTag>;
// mu = mu_i E*^i in the dual g*.
using DualPoint = Coordinates<DualTag>;

// <alpha, x> = alpha_i x^i
inline double pairing(const DualPoint& alpha, const AlgebraVector& x) {
  if (alpha.size() != x.size()) {
    throw ContractViolation("pairing: dimension mismatch");
  }
  return alpha.dot(x);
}

// Sign of the Lie-Poisson bracket; also selects the momentum map M+ or M-.
enum class BracketSign { plus, minus };

inline double sign_factor(BracketSign s) {
  return s == BracketSign::plus ? 1.0 : -1.0;
}

inline std::string to_string(BracketSign s) {
  return s == BracketSign::plus ? "plus" : "minus";
}

inline BracketSign parse_sign(const std::string& text) {
  if (text == "plus" || text == "+") return BracketSign::plus;
  if (text == "minus" || text == "-") return BracketSign::minus;
  throw ParseError("unknown bracket sign '" + text + "' (expected plus|minus)");
}

}  // namespace clebsch
