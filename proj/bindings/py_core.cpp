#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <stdexcept>

#include "tpo/bench.hpp"
#include "tpo/cgtp.hpp"
#include "tpo/expressivity.hpp"
#include "tpo/gtp.hpp"
#include "tpo/irreps.hpp"
#include "tpo/mtp.hpp"
#include "tpo/verify.hpp"
#include "tpo/wigner.hpp"

namespace py = pybind11;

namespace {

tpo::Kind kind_from(const std::string& name) {
  if (name == "cgtp") return tpo::Kind::cgtp;
  if (name == "gtp") return tpo::Kind::gtp;
  if (name == "mtp") return tpo::Kind::mtp;
  throw std::invalid_argument("unknown kind '" + name + "'");
}

tpo::BenchImpl impl_from(const std::string& name) {
  if (name == "naive") return tpo::BenchImpl::naive;
  if (name == "sparse") return tpo::BenchImpl::sparse;
  if (name == "grid") return tpo::BenchImpl::grid;
  if (name == "fourier") return tpo::BenchImpl::fourier;
  throw std::invalid_argument("unknown impl '" + name + "'");
}

tpo::IrrepVector as_vector(const std::string& irreps, const Eigen::VectorXd& data) {
  tpo::IrrepVector v;
  v.irreps = tpo::Irreps::parse(irreps);
  if (data.size() != v.irreps.dim())
    throw std::invalid_argument("data length " + std::to_string(data.size()) +
                                " does not match irreps dim " + std::to_string(v.irreps.dim()));
  v.data = data;
  return v;
}

tpo::Rotation rotation_from(const Eigen::Vector3d& axis, double angle) {
  return tpo::Rotation::from_axis_angle(axis, angle);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SO(3)-equivariant tensor-product operations";

  m.def(
      "irreps_dim", [](const std::string& s) { return tpo::Irreps::parse(s).dim(); },
      py::arg("irreps"), "Flat dimension of an irreps string like '2x1+1x0'.");
  m.def(
      "single_copies", [](int L) { return tpo::Irreps::single_copies(L).str(); }, py::arg("L"),
      "Irreps string 1x0+1x1+...+1xL.");

  m.def(
      "cg_table",
      [](int l1, int l2, int l3, bool gaunt) {
        const tpo::CGTable& t = gaunt ? tpo::gaunt_real(l1, l2, l3) : tpo::cg_real(l1, l2, l3);
        std::vector<std::tuple<int, int, int, double>> rows;
        rows.reserve(t.entries.size());
        for (const tpo::CGEntry& e : t.entries) rows.emplace_back(e.m1, e.m2, e.m3, e.value);
        return rows;
      },
      py::arg("l1"), py::arg("l2"), py::arg("l3"), py::arg("gaunt") = false,
      "Sparse real coupling table as (m1, m2, m3, value) tuples.");

  m.def(
      "cgtp",
      [](const std::string& xi, const Eigen::VectorXd& x, const std::string& yi,
         const Eigen::VectorXd& y, const std::string& impl) {
        const tpo::IrrepVector out =
            tpo::cgtp_mimo(as_vector(xi, x), as_vector(yi, y),
                           impl == "naive" ? tpo::CgtpImpl::naive : tpo::CgtpImpl::sparse);
        return std::make_pair(out.irreps.str(), out.data);
      },
      py::arg("x_irreps"), py::arg("x"), py::arg("y_irreps"), py::arg("y"),
      py::arg("impl") = "sparse",
      "Clebsch-Gordan tensor product over all valid paths; returns (irreps, data).");

  m.def(
      "gtp",
      [](const std::string& xi, const Eigen::VectorXd& x, const std::string& yi,
         const Eigen::VectorXd& y, int L3, const std::string& impl) {
        const tpo::IrrepVector xv = as_vector(xi, x), yv = as_vector(yi, y);
        const tpo::IrrepVector out =
            impl == "fourier" ? tpo::gtp_fourier(xv, yv, L3) : tpo::gtp_grid(xv, yv, L3);
        return std::make_pair(out.irreps.str(), out.data);
      },
      py::arg("x_irreps"), py::arg("x"), py::arg("y_irreps"), py::arg("y"), py::arg("L3"),
      py::arg("impl") = "grid", "Gaunt tensor product with outputs 0..L3.");

  m.def(
      "mtp",
      [](const std::string& xi, const Eigen::VectorXd& x, const std::string& yi,
         const Eigen::VectorXd& y, int L3, const std::string& impl) {
        const tpo::IrrepVector out =
            tpo::mtp(as_vector(xi, x), as_vector(yi, y), L3,
                     impl == "naive" ? tpo::MtpImpl::naive : tpo::MtpImpl::sparse);
        return std::make_pair(out.irreps.str(), out.data);
      },
      py::arg("x_irreps"), py::arg("x"), py::arg("y_irreps"), py::arg("y"), py::arg("L3"),
      py::arg("impl") = "sparse", "Matrix tensor product with outputs 0..L3.");

  m.def(
      "mtp_path_weights",
      [](int l1, int l2, int l3, int l_tilde) {
        return tpo::mtp_path_weights(l1, l2, l3, l_tilde);
      },
      py::arg("l1"), py::arg("l2"), py::arg("l3"), py::arg("l_tilde"),
      "Per-path CG weight realized by the matrix product.");

  m.def(
      "wigner_d",
      [](int l, const Eigen::Vector3d& axis, double angle) {
        return tpo::wigner_d(l, rotation_from(axis, angle));
      },
      py::arg("l"), py::arg("axis"), py::arg("angle"),
      "Real Wigner-D matrix of the rotation by `angle` about `axis`.");

  m.def(
      "rotate",
      [](const std::string& xi, const Eigen::VectorXd& x, const Eigen::Vector3d& axis,
         double angle) {
        return tpo::rotate(as_vector(xi, x), rotation_from(axis, angle)).data;
      },
      py::arg("irreps"), py::arg("x"), py::arg("axis"), py::arg("angle"),
      "Apply a rotation blockwise through the Wigner-D matrices.");

  m.def(
      "expressivity_count",
      [](const std::string& kind, int L) { return tpo::expressivity_count(kind_from(kind), L); },
      py::arg("kind"), py::arg("L"), "Closed-form output-channel count.");

  m.def(
      "expressivity_rank",
      [](const std::string& kind, int L, int trials, std::uint64_t seed) {
        const tpo::RankResult r = tpo::expressivity_rank(kind_from(kind), L, trials, seed);
        return std::make_pair(r.rank, r.stable);
      },
      py::arg("kind"), py::arg("L"), py::arg("trials") = 3, py::arg("seed") = 20240901,
      "Numerical Jacobian rank; returns (rank, stable).");

  m.def(
      "interactable",
      [](const std::string& kind, int l1, int l2, int l3) {
        return tpo::interactable(kind_from(kind), l1, l2, l3);
      },
      py::arg("kind"), py::arg("l1"), py::arg("l2"), py::arg("l3"),
      "Whether the product can couple (l1, l2) -> l3 with nonzero coefficient.");

  m.def(
      "count_ops",
      [](const std::string& kind, const std::string& impl, const std::string& mode, int L) {
        tpo::BenchMode bm;
        if (mode == "siso")
          bm = tpo::BenchMode::siso;
        else if (mode == "simo")
          bm = tpo::BenchMode::simo;
        else if (mode == "mimo")
          bm = tpo::BenchMode::mimo;
        else
          throw std::invalid_argument("unknown mode '" + mode + "'");
        return tpo::count_ops(kind_from(kind), impl_from(impl), {bm, L, 1});
      },
      py::arg("kind"), py::arg("impl"), py::arg("mode"), py::arg("L"),
      "Instrumented multiply count for one application.");

  m.def(
      "verify",
      [](const std::string& suite, int L, std::uint64_t seed) {
        std::vector<std::tuple<std::string, std::string, int, double, double, bool>> rows;
        for (const tpo::CheckResult& r : tpo::run_verify(suite, L, seed))
          rows.emplace_back(r.suite, r.check, r.L, r.max_err, r.threshold, r.pass);
        return rows;
      },
      py::arg("suite"), py::arg("L"), py::arg("seed") = 20240901,
      "Run one invariant suite; rows of (suite, check, L, max_err, threshold, pass).");

  m.def("verify_suites", [] { return tpo::verify_suites(); });
}
