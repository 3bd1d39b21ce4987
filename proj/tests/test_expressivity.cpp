#include <initializer_list>
#include <string>

#include "doctest.h"
#include "tpo/expressivity.hpp"

using tpo::Kind;

TEST_CASE("counts: closed forms") {
  // CGTP: sum over (l1,l2) of 2min(l1,l2)+1 output channels.
  CHECK(tpo::expressivity_count(Kind::cgtp, 0) == 1);
  CHECK(tpo::expressivity_count(Kind::cgtp, 1) == 6);
  CHECK(tpo::expressivity_count(Kind::cgtp, 4) == 85);
  CHECK(tpo::expressivity_count(Kind::cgtp, 6) == 231);
  CHECK(tpo::expressivity_count(Kind::cgtp, 8) == 489);
  CHECK(tpo::expressivity_count(Kind::cgtp, 12) == 1469);
  CHECK(tpo::expressivity_count(Kind::cgtp, 16) == 3281);

  // GTP and MTP collapse repeated l3 outputs: 4L+1 distinct channels.
  for (int L : {0, 1, 4, 16}) {
    CHECK(tpo::expressivity_count(Kind::gtp, L) == 4 * L + 1);
    CHECK(tpo::expressivity_count(Kind::mtp, L) == 4 * L + 1);
  }
}

TEST_CASE("jacobian rank equals the count for the CG product") {
  for (int L = 0; L <= 3; ++L) {
    const tpo::RankResult r = tpo::expressivity_rank(Kind::cgtp, L);
    CHECK(r.stable);
    CHECK(r.rank == tpo::expressivity_count(Kind::cgtp, L));
  }
}

TEST_CASE("jacobian rank of the collapsed products") {
  for (Kind kind : {Kind::gtp, Kind::mtp}) {
    const tpo::RankResult r0 = tpo::expressivity_rank(kind, 0);
    CHECK(r0.stable);
    CHECK(r0.rank == 1);
    for (int L = 1; L <= 2; ++L) {
      const tpo::RankResult r = tpo::expressivity_rank(kind, L);
      CHECK(r.stable);
      CHECK(r.rank <= tpo::expressivity_count(kind, L));
      CHECK(r.rank >= 1);
    }
  }

  // Measured once and pinned: at L=1 the weighted-GTP parameters span all
  // five channels; the deficit only appears at higher bands where couplings
  // like (2,4)->2 vs (4,2)->2 share a weight product.
  CHECK(tpo::expressivity_rank(Kind::gtp, 1).rank == 5);
}

TEST_CASE("rank is deterministic for a fixed seed") {
  const tpo::RankResult a = tpo::expressivity_rank(Kind::cgtp, 2, 3, 99);
  const tpo::RankResult b = tpo::expressivity_rank(Kind::cgtp, 2, 3, 99);
  CHECK(a.rank == b.rank);
  CHECK(a.stable == b.stable);
}

TEST_CASE("interactability patterns") {
  // Triangle violations never interact.
  for (Kind kind : {Kind::cgtp, Kind::gtp, Kind::mtp}) {
    CHECK_FALSE(tpo::interactable(kind, 1, 1, 3));
    CHECK_FALSE(tpo::interactable(kind, 0, 2, 1));
    CHECK(tpo::interactable(kind, 0, 0, 0));
  }

  // The antisymmetric coupling: alive for CGTP and MTP, parity-killed
  // for GTP.
  CHECK(tpo::interactable(Kind::cgtp, 1, 1, 1));
  CHECK(tpo::interactable(Kind::mtp, 1, 1, 1));
  CHECK_FALSE(tpo::interactable(Kind::gtp, 1, 1, 1));

  // Even-parity couplings are alive for all three.
  CHECK(tpo::interactable(Kind::gtp, 1, 1, 2));
  CHECK(tpo::interactable(Kind::gtp, 2, 4, 2));
  CHECK(tpo::interactable(Kind::mtp, 2, 4, 2));
  CHECK(tpo::interactable(Kind::cgtp, 2, 1, 2));

  // GTP kills every odd-sum triple, not just [1,1,1].
  CHECK_FALSE(tpo::interactable(Kind::gtp, 2, 2, 1));
  CHECK_FALSE(tpo::interactable(Kind::gtp, 1, 2, 2));
}

TEST_CASE("kind names round trip through the CLI vocabulary") {
  CHECK(std::string(tpo::kind_name(Kind::cgtp)) == "cgtp");
  CHECK(std::string(tpo::kind_name(Kind::gtp)) == "gtp");
  CHECK(std::string(tpo::kind_name(Kind::mtp)) == "mtp");
}
