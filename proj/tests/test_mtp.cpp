#include <Eigen/Geometry>  // Vector3d::cross
#include <cmath>
#include <random>

#include "doctest.h"
#include "tpo/cgtp.hpp"
#include "tpo/mtp.hpp"
#include "tpo/wigner.hpp"

using tpo::Irreps;
using tpo::IrrepVector;

namespace {

IrrepVector random_tower(int L, std::mt19937_64& rng) {
  return IrrepVector::random(Irreps::single_copies(L), rng);
}

}  // namespace

TEST_CASE("carrier degree is the smallest that spans the band") {
  CHECK(tpo::mtp_l_tilde(0, 0, 0) == 0);
  CHECK(tpo::mtp_l_tilde(1, 1, 1) == 1);
  CHECK(tpo::mtp_l_tilde(2, 2, 2) == 1);  // 2*1 >= 2
  CHECK(tpo::mtp_l_tilde(2, 1, 3) == 2);
  CHECK(tpo::mtp_l_tilde(4, 4, 8) == 4);
}

TEST_CASE("embedding a scalar gives a multiple of the identity") {
  IrrepVector x = IrrepVector::zeros(Irreps::single_copies(0));
  x.data[0] = 3.0;
  for (int lt : {0, 1, 2}) {
    const Eigen::MatrixXd X = tpo::mtp_embed(x, lt, tpo::MtpImpl::sparse);
    const int d = 2 * lt + 1;
    REQUIRE(X.rows() == d);
    // C(lt lt 0) = (-1)^lt / sqrt(2lt+1) times the identity in the real basis.
    const double want = 3.0 * (lt % 2 == 0 ? 1.0 : -1.0) / std::sqrt(double(d));
    CHECK((X - want * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("naive and sparse embeddings agree") {
  std::mt19937_64 rng(51);
  for (int L : {0, 1, 3}) {
    const IrrepVector x = random_tower(L, rng);
    const int lt = tpo::mtp_l_tilde(L, L, L);
    const Eigen::MatrixXd a = tpo::mtp_embed(x, lt, tpo::MtpImpl::naive);
    const Eigen::MatrixXd b = tpo::mtp_embed(x, lt, tpo::MtpImpl::sparse);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("extract is the exact inverse of embed on the carried band") {
  // The real CG tables are orthonormal across (l3, m3), so the adjoint
  // recovers every embedded degree exactly.
  std::mt19937_64 rng(52);
  for (int L : {0, 2, 4}) {
    const int lt = tpo::mtp_l_tilde(L, L, L);
    const IrrepVector x = random_tower(L, rng);
    const Eigen::MatrixXd X = tpo::mtp_embed(x, lt, tpo::MtpImpl::sparse);
    const IrrepVector back = tpo::mtp_extract(X, L, lt, tpo::MtpImpl::sparse);
    CHECK((back.data - x.data).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("embed validates the carrier capacity") {
  std::mt19937_64 rng(53);
  const IrrepVector x = random_tower(3, rng);
  CHECK_THROWS_AS(tpo::mtp_embed(x, 1, tpo::MtpImpl::sparse), std::invalid_argument);
  CHECK_THROWS_AS(tpo::mtp_embed(x, -1, tpo::MtpImpl::sparse), std::invalid_argument);
}

TEST_CASE("scalar times scalar through the matrix product") {
  IrrepVector x = IrrepVector::zeros(Irreps::single_copies(0));
  IrrepVector y = IrrepVector::zeros(Irreps::single_copies(0));
  x.data[0] = 3.0;
  y.data[0] = -2.0;

  // Minimal carrier (lt = 0): plain multiplication.
  const IrrepVector z = tpo::mtp(x, y, 0);
  CHECK(z.data[0] == doctest::Approx(-6.0).epsilon(1e-14));

  // Oversized carrier: the scalar passes through embed twice and extract
  // once, each contributing s = (-1)^lt/sqrt(2lt+1), so the product scales
  // by d*s^3 = (-1)^lt/sqrt(2lt+1).
  const IrrepVector z1 = tpo::mtp(x, y, 0, tpo::MtpImpl::sparse, nullptr, 1);
  CHECK(z1.data[0] == doctest::Approx(6.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("undersized carrier override is rejected") {
  std::mt19937_64 rng(54);
  const IrrepVector x = random_tower(2, rng), y = random_tower(2, rng);
  CHECK_THROWS_AS(tpo::mtp(x, y, 2, tpo::MtpImpl::sparse, nullptr, 0), std::invalid_argument);
}

TEST_CASE("vector-vector product contains the cross product") {
  std::mt19937_64 rng(55);
  const Irreps vec({{1, 1}});
  for (int t = 0; t < 10; ++t) {
    const IrrepVector x = IrrepVector::random(vec, rng), y = IrrepVector::random(vec, rng);
    const IrrepVector z = tpo::mtp(x, y, 1);

    const Eigen::Vector3d v1{x.data[2], x.data[0], x.data[1]};  // (y,z,x) -> (x,y,z)
    const Eigen::Vector3d v2{y.data[2], y.data[0], y.data[1]};
    const Eigen::Vector3d c = v1.cross(v2);
    const Eigen::Vector3d want{c.y(), c.z(), c.x()};
    const Eigen::Vector3d got = z.slice(1);

    const double alpha = got.dot(want) / want.squaredNorm();
    CHECK(std::abs(alpha) > 1e-3);
    CHECK((got - alpha * want).norm() / got.norm() < 1e-12);
  }
}

TEST_CASE("invalid triangles extract to zero") {
  std::mt19937_64 rng(56);
  IrrepVector x = IrrepVector::zeros(Irreps::single_copies(2));
  IrrepVector y = IrrepVector::zeros(Irreps::single_copies(2));
  // Pure l1=2 against pure l2=1: l3=0 violates the triangle inequality.
  for (int m = 0; m < 5; ++m) x.slice(2)[m] = std::normal_distribution<double>()(rng);
  for (int m = 0; m < 3; ++m) y.slice(1)[m] = std::normal_distribution<double>()(rng);
  const IrrepVector z = tpo::mtp(x, y, 3);
  CHECK(std::abs(z.data[0]) < 1e-14);
}

TEST_CASE("naive and sparse products agree") {
  std::mt19937_64 rng(57);
  for (int L = 0; L <= 4; ++L) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const IrrepVector x = random_tower(L, rng), y = random_tower(L, rng);
      const IrrepVector a = tpo::mtp(x, y, 2 * L, tpo::MtpImpl::naive);
      const IrrepVector b = tpo::mtp(x, y, 2 * L, tpo::MtpImpl::sparse);
      worst = std::max(worst, (a.data - b.data).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("matrix product is the weighted sum of CG paths") {
  std::mt19937_64 rng(58);
  for (int L = 0; L <= 3; ++L) {
    const int lt = tpo::mtp_l_tilde(L, L, 2 * L);
    const tpo::PathTable paths = tpo::valid_paths(L, L, 2 * L);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const IrrepVector x = random_tower(L, rng), y = random_tower(L, rng);
      IrrepVector want = IrrepVector::zeros(Irreps::single_copies(2 * L));
      for (const tpo::Path& p : paths.paths) {
        const double w = tpo::mtp_path_weights(p.l1, p.l2, p.l3, lt);
        if (w == 0.0) continue;
        Eigen::VectorXd seg(2 * p.l3 + 1);
        tpo::cgtp_path_naive(p, x.slice(p.l1), y.slice(p.l2), seg);
        want.slice(p.l3) += w * seg;
      }
      const IrrepVector got = tpo::mtp(x, y, 2 * L);
      worst = std::max(worst, (got.data - want.data).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("path weights: selection and reachability") {
  // Invalid or uncarried paths weigh nothing.
  CHECK(tpo::mtp_path_weights(1, 1, 3, 2) == 0.0);   // triangle violation
  CHECK(tpo::mtp_path_weights(2, 2, 2, 0) == 0.0);   // carrier too small
  // The antisymmetric path is carried with a genuinely nonzero weight.
  CHECK(std::abs(tpo::mtp_path_weights(1, 1, 1, 1)) > 1e-3);
  // Scalar path through the minimal carrier is the identity weight.
  CHECK(tpo::mtp_path_weights(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("matrix product is equivariant") {
  std::mt19937_64 rng(59);
  const Irreps in = Irreps::single_copies(3);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const IrrepVector x = IrrepVector::random(in, rng), y = IrrepVector::random(in, rng);
    const tpo::Rotation g = tpo::Rotation::random(rng);
    const IrrepVector lhs = tpo::mtp(tpo::rotate(x, g), tpo::rotate(y, g), 6);
    const IrrepVector rhs = tpo::rotate(tpo::mtp(x, y, 6), g);
    worst = std::max(worst, (lhs.data - rhs.data).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("op counts: matmul is cubic in the carrier") {
  std::mt19937_64 rng(60);
  const int lt = 3, d = 2 * lt + 1;
  const IrrepVector x = random_tower(2, rng), y = random_tower(2, rng);
  const Eigen::MatrixXd X = tpo::mtp_embed(x, lt, tpo::MtpImpl::sparse);
  const Eigen::MatrixXd Y = tpo::mtp_embed(y, lt, tpo::MtpImpl::sparse);

  tpo::OpCounter ops;
  tpo::mtp_matmul(X, Y, &ops);
  CHECK(ops.muls == std::uint64_t(d) * d * d);

  // Naive embed pays the dense table price; sparse embeds strictly less.
  tpo::OpCounter naive, sparse;
  tpo::mtp_embed(x, lt, tpo::MtpImpl::naive, &naive);
  tpo::mtp_embed(x, lt, tpo::MtpImpl::sparse, &sparse);
  CHECK(naive.muls == std::uint64_t(d) * d * (1 + 3 + 5));
  CHECK(sparse.muls < naive.muls);
}
