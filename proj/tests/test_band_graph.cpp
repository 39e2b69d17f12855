#include <doctest.h>

#include <vector>

#include "bandprec/band_graph.hpp"
#include "bandprec/matrix.hpp"
#include "bandprec/rng.hpp"
#include "oracles.hpp"

using namespace bandprec;

TEST_CASE("clique and separator windows") {
  SUBCASE("p=6, k=3") {
    const BandModel g(6, 3);
    REQUIRE(g.clique_count() == 3);
    CHECK(g.clique(0) == IndexRange{0, 4});
    CHECK(g.clique(1) == IndexRange{1, 4});
    CHECK(g.clique(2) == IndexRange{2, 4});
    REQUIRE(g.separator_count() == 2);
    CHECK(g.separator(0) == IndexRange{1, 3});
    CHECK(g.separator(1) == IndexRange{2, 3});
  }
  SUBCASE("complete graph has a single clique") {
    const BandModel g(4, 3);
    REQUIRE(g.clique_count() == 1);
    CHECK(g.clique(0) == IndexRange{0, 4});
    CHECK(g.separator_count() == 0);
  }
  SUBCASE("k=0 gives singleton cliques and no separators") {
    const BandModel g(3, 0);
    REQUIRE(g.clique_count() == 3);
    for (Index j = 0; j < 3; ++j) CHECK(g.clique(j) == IndexRange{j, 1});
    CHECK(g.separator_count() == 0);
  }
  SUBCASE("p=5, k=4 complete") { CHECK(BandModel(5, 4).separator_count() == 0); }
  SUBCASE("p=5, k=1") {
    const BandModel g(5, 1);
    REQUIRE(g.separator_count() == 3);
    CHECK(g.separator(0) == IndexRange{1, 1});
    CHECK(g.separator(1) == IndexRange{2, 1});
    CHECK(g.separator(2) == IndexRange{3, 1});
  }
  SUBCASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(BandModel(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BandModel(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(BandModel(3, -1), std::invalid_argument);
  }
}

TEST_CASE("separators intersect consecutive cliques") {
  for (Index p : {3, 5, 8, 12})
    for (Index k = 1; k < p; ++k) {
      const BandModel g(p, k);
      for (Index j = 0; j < g.separator_count(); ++j) {
        const IndexRange left = g.clique(j);
        const IndexRange right = g.clique(j + 1);
        const IndexRange sep = g.separator(j);
        // S_{j+1} = C_j n C_{j+1}; also the running intersection with all
        // earlier cliques (their union is {0..left.last()}).
        CHECK(sep.first == std::max(left.first, right.first));
        CHECK(sep.last() == std::min(left.last(), right.last()));
        CHECK(sep.first == right.first);
        CHECK(sep.last() == left.last());
      }
    }
}

TEST_CASE("clique/separator assembly stays inside the band") {
  CounterRng rng = CounterRng::stream(21, 0);
  for (Index p : {5, 9})
    for (Index k : {Index(0), Index(1), Index(3)}) {
      const BandModel g(p, k);
      Matrix assembled = Matrix::Zero(p, p);
      for (Index j = 0; j < g.clique_count(); ++j) {
        const IndexRange r = g.clique(j);
        assembled += embed(oracle::random_symmetric(rng, r.size), r, p);
      }
      for (Index j = 0; j < g.separator_count(); ++j) {
        const IndexRange r = g.separator(j);
        assembled -= embed(oracle::random_symmetric(rng, r.size), r, p);
      }
      CHECK(band(assembled, k) == assembled);
    }
}
