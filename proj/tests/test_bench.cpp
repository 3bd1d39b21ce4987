#include <sstream>

#include "doctest.h"
#include "tpo/bench.hpp"

using tpo::BenchImpl;
using tpo::BenchMode;
using tpo::BenchSetting;
using tpo::Kind;

TEST_CASE("implementation applicability matrix") {
  CHECK(tpo::impl_applies(Kind::cgtp, BenchImpl::naive));
  CHECK(tpo::impl_applies(Kind::cgtp, BenchImpl::sparse));
  CHECK_FALSE(tpo::impl_applies(Kind::cgtp, BenchImpl::grid));
  CHECK_FALSE(tpo::impl_applies(Kind::cgtp, BenchImpl::fourier));

  CHECK(tpo::impl_applies(Kind::gtp, BenchImpl::grid));
  CHECK(tpo::impl_applies(Kind::gtp, BenchImpl::fourier));
  CHECK_FALSE(tpo::impl_applies(Kind::gtp, BenchImpl::naive));

  CHECK(tpo::impl_applies(Kind::mtp, BenchImpl::naive));
  CHECK(tpo::impl_applies(Kind::mtp, BenchImpl::sparse));
  CHECK_FALSE(tpo::impl_applies(Kind::mtp, BenchImpl::fourier));
}

TEST_CASE("count_ops rejects bad configurations") {
  CHECK_THROWS_AS(tpo::count_ops(Kind::cgtp, BenchImpl::grid, {BenchMode::mimo, 2, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tpo::count_ops(Kind::gtp, BenchImpl::grid, {BenchMode::mimo, -1, 1}),
                  std::invalid_argument);
}

TEST_CASE("count_ops is pure") {
  for (Kind kind : {Kind::cgtp, Kind::gtp, Kind::mtp}) {
    const BenchImpl impl = kind == Kind::gtp ? BenchImpl::grid : BenchImpl::sparse;
    const BenchSetting s{BenchMode::mimo, 3, 1};
    CHECK(tpo::count_ops(kind, impl, s) == tpo::count_ops(kind, impl, s));
  }
}

TEST_CASE("siso cgtp-naive has the closed-form count") {
  for (int L : {0, 1, 4, 8}) {
    const std::uint64_t d = 2 * L + 1;
    CHECK(tpo::count_ops(Kind::cgtp, BenchImpl::naive, {BenchMode::siso, L, 1}) == 2 * d * d * d);
  }
}

TEST_CASE("modes are ordered by work") {
  for (Kind kind : {Kind::cgtp, Kind::gtp, Kind::mtp}) {
    const BenchImpl impl = kind == Kind::gtp ? BenchImpl::grid : BenchImpl::sparse;
    const std::uint64_t siso = tpo::count_ops(kind, impl, {BenchMode::siso, 4, 1});
    const std::uint64_t simo = tpo::count_ops(kind, impl, {BenchMode::simo, 4, 1});
    const std::uint64_t mimo = tpo::count_ops(kind, impl, {BenchMode::mimo, 4, 1});
    CHECK(siso > 0);
    CHECK(simo >= siso);
    CHECK(mimo >= simo);
  }
}

TEST_CASE("csv header is stable") {
  std::ostringstream os;
  tpo::write_csv(os, {});
  CHECK(os.str() ==
        "kind,impl,mode,L,batch,ops,time_med_ns,time_min_ns,time_max_ns,"
        "expressivity,ops_per_expr,time_per_expr_ns\n");
}

TEST_CASE("csv rows carry every field") {
  tpo::BenchRecord rec;
  rec.kind = Kind::gtp;
  rec.impl = BenchImpl::grid;
  rec.setting = {BenchMode::simo, 3, 2};
  rec.ops = 123;
  rec.time_med_ns = 456;
  rec.time_min_ns = 455;
  rec.time_max_ns = 460;
  rec.expressivity = 13;
  rec.ops_per_expr = 123.0 / 13.0;
  rec.time_per_expr_ns = 456.0 / 13.0;

  std::ostringstream os;
  tpo::write_csv(os, {rec});
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);  // header
  std::getline(is, line);
  CHECK(line.substr(0, 20) == "gtp,grid,simo,3,2,12");
  int commas = 0;
  for (char c : line) commas += c == ',';
  CHECK(commas == 11);
}

TEST_CASE("timing validates its parameters and fills derived fields") {
  CHECK_THROWS_AS(tpo::time_tpo(Kind::cgtp, BenchImpl::sparse, {BenchMode::siso, 2, 1}, 0, 7),
                  std::invalid_argument);
  CHECK_THROWS_AS(tpo::time_tpo(Kind::cgtp, BenchImpl::sparse, {BenchMode::siso, 2, 1}, 1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(tpo::time_tpo(Kind::cgtp, BenchImpl::sparse, {BenchMode::siso, 2, 0}, 1, 5),
                  std::invalid_argument);

  const tpo::BenchRecord rec =
      tpo::time_tpo(Kind::cgtp, BenchImpl::sparse, {BenchMode::mimo, 2, 2}, 1, 5);
  CHECK(rec.ops == tpo::count_ops(Kind::cgtp, BenchImpl::sparse, {BenchMode::mimo, 2, 1}));
  CHECK(rec.time_min_ns <= rec.time_med_ns);
  CHECK(rec.time_med_ns <= rec.time_max_ns);
  CHECK(rec.time_min_ns > 0);
  CHECK(rec.expressivity == tpo::expressivity_count(Kind::cgtp, 2));
  CHECK(rec.ops_per_expr ==
        doctest::Approx(double(rec.ops) / double(rec.expressivity)).epsilon(1e-15));
}

TEST_CASE("sweep filters implementations per kind") {
  tpo::SweepConfig cfg;
  cfg.kinds = {Kind::gtp};
  cfg.impls = {BenchImpl::naive, BenchImpl::grid};
  cfg.mode = BenchMode::siso;
  cfg.Ls = {1, 2};
  cfg.warmup = 1;
  cfg.repeats = 5;
  const std::vector<tpo::BenchRecord> recs = tpo::sweep(cfg);
  REQUIRE(recs.size() == 2);  // naive does not apply to gtp
  for (const tpo::BenchRecord& r : recs) {
    CHECK(r.kind == Kind::gtp);
    CHECK(r.impl == BenchImpl::grid);
  }
  CHECK(recs[0].setting.L == 1);
  CHECK(recs[1].setting.L == 2);
}

TEST_CASE("loglog slope recovers polynomial degrees exactly") {
  const std::vector<int> Ls = {4, 8, 16};
  std::vector<double> cubes;
  for (int L : Ls) {
    const double d = 2.0 * L + 1.0;
    cubes.push_back(d * d * d);
  }
  CHECK(tpo::fit_loglog_slope(Ls, cubes) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(tpo::fit_loglog_slope({1}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(tpo::fit_loglog_slope({1, 2}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tpo::fit_loglog_slope({1, 2}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("benchmark records are deterministic in the seed") {
  const BenchSetting s{BenchMode::simo, 3, 1};
  const tpo::BenchRecord a = tpo::time_tpo(Kind::mtp, BenchImpl::sparse, s, 1, 5, 7);
  const tpo::BenchRecord b = tpo::time_tpo(Kind::mtp, BenchImpl::sparse, s, 1, 5, 7);
  CHECK(a.ops == b.ops);  // timing varies, structure must not
  CHECK(a.expressivity == b.expressivity);
}
