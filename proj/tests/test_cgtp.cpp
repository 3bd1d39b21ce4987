#include <Eigen/Geometry>  // Vector3d::cross
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tpo/cgtp.hpp"
#include "tpo/wigner.hpp"

using tpo::Irreps;
using tpo::IrrepVector;
using tpo::Path;

TEST_CASE("valid_paths enumerates the triangle") {
  const tpo::PathTable t = tpo::valid_paths(1, 1, 2);
  REQUIRE(t.paths.size() == 6);
  CHECK(t.paths[0] == Path{0, 0, 0});
  CHECK(t.paths[1] == Path{0, 1, 1});
  CHECK(t.paths[2] == Path{1, 0, 1});
  CHECK(t.paths[3] == Path{1, 1, 0});
  CHECK(t.paths[4] == Path{1, 1, 1});
  CHECK(t.paths[5] == Path{1, 1, 2});
  CHECK(t.output_irreps().dim() == 1 + 3 + 3 + 1 + 3 + 5);

  CHECK_FALSE(Path{1, 1, 3}.valid());
  CHECK_FALSE(Path{-1, 1, 1}.valid());
  CHECK(Path{2, 3, 1}.valid());
}

TEST_CASE("single path is the contraction of the real CG table") {
  // Pins the kernel loop logic against a hand-rolled contraction of the
  // sparse entries; table correctness itself is pinned by the wigner tests.
  const Path p{2, 3, 4};
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(5), y(7), out(9), want(9);
  for (int t = 0; t < 10; ++t) {
    for (int i = 0; i < 5; ++i) x[i] = gauss(rng);
    for (int i = 0; i < 7; ++i) y[i] = gauss(rng);
    want.setZero();
    for (const tpo::CGEntry& e : tpo::cg_real(2, 3, 4).entries)
      want[e.m3 + 4] += e.value * x[e.m1 + 2] * y[e.m2 + 3];
    tpo::cgtp_path_naive(p, x, y, out);
    CHECK((out - want).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("sparse kernel equals the naive kernel on every path") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> gauss;
  for (const Path& p : tpo::valid_paths(6, 6, 12).paths) {
    Eigen::VectorXd x(2 * p.l1 + 1), y(2 * p.l2 + 1);
    Eigen::VectorXd a(2 * p.l3 + 1), b(2 * p.l3 + 1);
    for (int t = 0; t < 5; ++t) {
      for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
      for (int i = 0; i < y.size(); ++i) y[i] = gauss(rng);
      tpo::cgtp_path_naive(p, x, y, a);
      tpo::cgtp_path_sparse(p, x, y, b);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("invalid paths write zeros") {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(3), y = Eigen::VectorXd::Ones(3);
  Eigen::VectorXd out = Eigen::VectorXd::Constant(7, 99.0);
  tpo::cgtp_path_naive(Path{1, 1, 3}, x, y, out);
  CHECK(out.cwiseAbs().maxCoeff() == 0.0);
  out.setConstant(99.0);
  tpo::cgtp_path_sparse(Path{1, 1, 3}, x, y, out);
  CHECK(out.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernels reject mismatched slice lengths") {
  Eigen::VectorXd x(3), y(3), out(5);
  x.setZero();
  y.setZero();
  CHECK_THROWS_AS(tpo::cgtp_path_naive(Path{1, 1, 1}, x, y, out), std::invalid_argument);
  CHECK_THROWS_AS(tpo::cgtp_path_sparse(Path{2, 1, 1}, x, y, out), std::invalid_argument);
}

TEST_CASE("mimo product: layout and the L=1 case") {
  std::mt19937_64 rng(33);
  const Irreps in = Irreps::single_copies(1);
  const IrrepVector x = IrrepVector::random(in, rng);
  const IrrepVector y = IrrepVector::random(in, rng);
  const IrrepVector z = tpo::cgtp_mimo(x, y);

  // Paths (0,0,0), (0,1,1), (1,0,1), (1,1,0), (1,1,1), (1,1,2).
  CHECK(z.irreps.dim() == 16);
  CHECK(z.irreps.num_entries() == 6);

  // (0,0,0) is the plain product and (1,1,0) the scaled dot product.
  CHECK(z.data[0] == doctest::Approx(x.data[0] * y.data[0]).epsilon(1e-14));
  const Eigen::Vector3d x1 = x.slice(1), y1 = y.slice(1);
  CHECK(z.slice(3)[0] == doctest::Approx(-x1.dot(y1) / std::sqrt(3.0)).epsilon(1e-12));

  // (1,1,1) is the cross product in (y,z,x) component order, scaled.
  const Eigen::Vector3d v1{x1[2], x1[0], x1[1]};  // back to (x,y,z)
  const Eigen::Vector3d v2{y1[2], y1[0], y1[1]};
  const Eigen::Vector3d c = v1.cross(v2);
  const Eigen::Vector3d got = z.slice(4);
  const Eigen::Vector3d want{c.y(), c.z(), c.x()};
  CHECK((got + want / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mimo rejects repeated-copy inputs") {
  std::mt19937_64 rng(34);
  const IrrepVector x = IrrepVector::random(Irreps::parse("2x1"), rng);
  const IrrepVector y = IrrepVector::random(Irreps::parse("1x1"), rng);
  CHECK_THROWS_AS(tpo::cgtp_mimo(x, y), std::invalid_argument);
}

TEST_CASE("mimo product is equivariant") {
  std::mt19937_64 rng(35);
  const Irreps in = Irreps::single_copies(4);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const IrrepVector x = IrrepVector::random(in, rng);
    const IrrepVector y = IrrepVector::random(in, rng);
    const tpo::Rotation g = tpo::Rotation::random(rng);
    const IrrepVector lhs = tpo::cgtp_mimo(tpo::rotate(x, g), tpo::rotate(y, g));
    const IrrepVector rhs = tpo::rotate(tpo::cgtp_mimo(x, y), g);
    worst = std::max(worst, (lhs.data - rhs.data).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("mimo product is bilinear") {
  std::mt19937_64 rng(36);
  const Irreps in = Irreps::single_copies(2);
  const IrrepVector x1 = IrrepVector::random(in, rng), x2 = IrrepVector::random(in, rng);
  const IrrepVector y = IrrepVector::random(in, rng);

  IrrepVector lin = IrrepVector::zeros(in);
  lin.data = 2.0 * x1.data - 0.5 * x2.data;
  const IrrepVector lhs = tpo::cgtp_mimo(lin, y);
  const Eigen::VectorXd rhs =
      2.0 * tpo::cgtp_mimo(x1, y).data - 0.5 * tpo::cgtp_mimo(x2, y).data;
  CHECK((lhs.data - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("op counts: naive closed form, sparse strictly cheaper") {
  std::mt19937_64 rng(37);
  for (int l : {2, 4, 6}) {
    const Path p{l, l, l};
    Eigen::VectorXd x(2 * l + 1), y(2 * l + 1), out(2 * l + 1);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    for (int i = 0; i < y.size(); ++i) y[i] = gauss(rng);

    tpo::OpCounter naive, sparse;
    tpo::cgtp_path_naive(p, x, y, out, &naive);
    tpo::cgtp_path_sparse(p, x, y, out, &sparse);
    const std::uint64_t d = 2 * l + 1;
    CHECK(naive.muls == 2 * d * d * d);
    CHECK(sparse.muls < naive.muls);
    CHECK(sparse.muls > 0);
  }
}
