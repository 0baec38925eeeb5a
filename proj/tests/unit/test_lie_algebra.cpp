#include <sstream>

#include "support.hpp"

using namespace clebsch;
using testing::max_abs;

TEST_CASE("so(3) bracket is the cross product") {
  const LieAlgebra a = testing::so3();
  testing::Random rnd(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Vector3d x = rnd.vector(3), y = rnd.vector(3);
    const AlgebraVector b = bracket(a, x, y);
    CHECK((b - Eigen::VectorXd(x.cross(y))).norm() < 1e-14);
    CHECK((a.ad_matrix(x) * y - b).norm() < 1e-14);
  }
}

TEST_CASE("coadjoint action is dual to the bracket") {
  testing::Random rnd(2);
  for (const auto& name : preset_names()) {
    const LieAlgebra& a = make_preset(name).algebra;
    const int n = a.dimension();
    for (int trial = 0; trial < 10; ++trial) {
      const AlgebraVector x = rnd.vector(n), y = rnd.vector(n);
      const DualPoint alpha = rnd.vector(n);
      CHECK(pairing(coadjoint(a, x, alpha), y) ==
            doctest::Approx(pairing(alpha, bracket(a, x, y))).epsilon(1e-12));
      CHECK(max_abs(coadjoint_matrix(a, x) - a.ad_matrix(x).transpose()) < 1e-15);
      CHECK(max_abs(a.structure_matrix(alpha) +
                    a.structure_matrix(alpha).transpose()) < 1e-15);
    }
  }
}

TEST_CASE("Jacobi identity holds on random elements of every preset") {
  testing::Random rnd(3);
  for (const auto& name : preset_names()) {
    const LieAlgebra& a = make_preset(name).algebra;
    for (int trial = 0; trial < 10; ++trial) {
      const AlgebraVector x = rnd.vector(a.dimension()), y = rnd.vector(a.dimension()),
                          z = rnd.vector(a.dimension());
      const AlgebraVector cyclic = bracket(a, x, bracket(a, y, z)) +
                                   bracket(a, y, bracket(a, z, x)) +
                                   bracket(a, z, bracket(a, x, y));
      CHECK(cyclic.norm() < 1e-12);
    }
  }
}

TEST_CASE("audit of so(3)") {
  const AlgebraReport r = audit(testing::so3());
  CHECK(r.jacobi_residual == 0.0);
  CHECK(r.antisymmetry_residual == 0.0);
  CHECK(r.center_dimension == 0);
  CHECK(r.semisimple);
  CHECK(max_abs(r.killing_matrix + 2.0 * Eigen::Matrix3d::Identity()) < 1e-15);
}

TEST_CASE("audit detects broken structure constants") {
  std::istringstream in(
      "n=3\n3 1 2 1\n3 2 1 -1\n1 2 3 1\n1 3 2 -1\n1 3 1 1\n1 1 3 -1\n");
  const AlgebraReport r = audit(parse_structure_constants(in));
  CHECK(r.jacobi_residual > 0.5);
  CHECK(r.antisymmetry_residual == 0.0);

  std::istringstream lopsided("n=2\n1 1 2 1\n");
  CHECK(audit(parse_structure_constants(lopsided)).antisymmetry_residual > 0.5);
}

TEST_CASE("center dimension") {
  CHECK(audit(abelian_algebra(4)).center_dimension == 4);
  CHECK(audit(testing::heisenberg()).center_dimension == 1);
  CHECK(audit(direct_sum(testing::so3(), abelian_algebra(2))).center_dimension == 2);
}

TEST_CASE("Killing forms of the presets") {
  const LieAlgebra kida = make_preset("kida").algebra;
  CHECK(max_abs(kida.killing_matrix() -
                Eigen::MatrixXd(Eigen::Vector3d(2, 2, -2).asDiagonal())) < 1e-15);
  CHECK(kida.semisimple());

  const LieAlgebra rattle = make_preset("rattleback").algebra;
  CHECK(rattle.killing_rank() == 1);
  CHECK(rattle.killing_matrix()(2, 2) == doctest::Approx(17.0));
  CHECK_FALSE(rattle.semisimple());

  RattlebackParams params;
  params.lambda = 2.5;
  CHECK(rattleback_preset(params).algebra.killing_matrix()(2, 2) ==
        doctest::Approx(1 + 2.5 * 2.5));

  const LieAlgebra top = make_preset("heavy_top").algebra;
  CHECK(top.killing_rank() == 3);
  CHECK(max_abs(top.killing_matrix().topLeftCorner(3, 3) +
                6.0 * Eigen::Matrix3d::Identity()) < 1e-15);
}

TEST_CASE("kappa sharp inverts kappa flat on semisimple algebras only") {
  const LieAlgebra a = make_preset("kida").algebra;
  testing::Random rnd(4);
  const AlgebraVector x = rnd.vector(3);
  CHECK((kappa_sharp(a, kappa_flat(a, x)) - x).norm() < 1e-14);
  CHECK(killing_form(a, x, x) == doctest::Approx(2 * (x[0] * x[0] + x[1] * x[1] - x[2] * x[2])));
  CHECK_THROWS_AS(kappa_sharp(make_preset("rattleback").algebra, DualPoint{1, 0, 0}),
                  NotSemisimpleError);
}

TEST_CASE("direct sum is block diagonal") {
  const LieAlgebra s = direct_sum(testing::so3(), testing::heisenberg());
  CHECK(s.dimension() == 6);
  const AlgebraVector x{1, 2, 3, 0, 0, 0};
  const AlgebraVector y{0, 0, 0, 1, 2, 3};
  CHECK(bracket(s, x, y).norm() == 0.0);
  const AlgebraVector u{0, 0, 0, 1, 0, 0};
  const AlgebraVector v{0, 0, 0, 0, 1, 0};
  CHECK((bracket(s, u, v) - AlgebraVector::unit(6, 5)).norm() == 0.0);
}

TEST_CASE("structure-constant files round-trip") {
  const LieAlgebra a = make_preset("rattleback").algebra;
  std::stringstream buffer;
  write_structure_constants(buffer, a);
  const LieAlgebra b = parse_structure_constants(buffer);
  CHECK(b.constants() == a.constants());
  CHECK(b.labels() == a.labels());
}

TEST_CASE("structure-constant parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_structure_constants(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 1 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("n=2\n1 1 3 1\n"), ParseError);
  CHECK_THROWS_AS(parse("n=2\n1 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("n=2\n1 1 2 1 7\n"), ParseError);
  CHECK_THROWS_AS(parse("n=x\n"), ParseError);
  CHECK_THROWS_AS(parse("n=0\n"), ParseError);
  CHECK_THROWS_AS(parse("n=2\nlabels=a\n"), ContractViolation);
  CHECK_THROWS_AS(load_structure_constants("/nonexistent/file.sc"), ParseError);
  CHECK(parse("# only a comment\nn=2  # trailing\n").dimension() == 2);
}

TEST_CASE("constructor contracts") {
  CHECK_THROWS_AS(LieAlgebra(0, {}), ContractViolation);
  CHECK_THROWS_AS(LieAlgebra(2, std::vector<double>(7, 0.0)), ContractViolation);
  std::vector<double> c(8, 0.0);
  c[1] = std::nan("");
  CHECK_THROWS_AS(LieAlgebra(2, c), ContractViolation);
  CHECK_THROWS_AS(bracket(testing::so3(), AlgebraVector{1, 2}, AlgebraVector{1, 2, 3}),
                  ContractViolation);
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4)) == 4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(2, 2) = 1e-12;
  CHECK(numerical_rank(m) == 2);
}
