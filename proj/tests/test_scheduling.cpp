#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "d2dsim/channel.hpp"
#include "d2dsim/scheduling.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace d2dsim;

namespace {

MarkAssignment as_marks(std::vector<double> values) {
  MarkAssignment m;
  m.marks = std::move(values);
  return m;
}

BidTable as_bids(std::vector<double> values) {
  BidTable b;
  b.values = std::move(values);
  return b;
}

}  // namespace

TEST_SUITE("scheduling") {

TEST_CASE("policy names round-trip") {
  for (Policy p : kAllPolicies) {
    REQUIRE(policy_from_string(to_string(p)) == p);
  }
  CHECK(!policy_from_string("nope").has_value());
}

TEST_CASE("thin_random: extremes and concentration") {
  RandomStream rng(5);
  CHECK(thin_random(100, 0.0, rng).count() == 0);
  CHECK(thin_random(100, 1.0, rng).count() == 100);
  CHECK_THROWS_AS(thin_random(10, 1.5, rng), std::invalid_argument);

  // 10^4 transmitters pooled across realizations
  int kept = 0;
  for (int i = 0; i < 10; ++i) {
    kept += thin_random(1000, 0.3, rng).count();
  }
  CHECK(std::abs(kept / 10000.0 - 0.3) <= 0.01);
}

TEST_CASE("thin_matern: isolated point kept, lower mark wins") {
  Window w{-5, 5, -5, 5, BoundaryMode::kPlain};
  PointSet tx;
  tx.points = {{0, 0}, {0.5, 0}, {4, 4}};
  const auto marks = as_marks({0.3, 0.7, 0.9});
  const RetainedSet r = thin_matern(tx, w, marks, 1.0);
  CHECK(r.on == std::vector<std::uint8_t>{1, 0, 1});  // isolated (4,4) kept
  // D = 0 keeps everything
  CHECK(thin_matern(tx, w, marks, 0.0).count() == 3);
}

TEST_CASE("thin_matern matches the pairwise oracle") {
  RandomStream rng(101);
  for (int i = 0; i < 120; ++i) {
    Window w{-5, 5, -5, 5,
             i % 2 == 0 ? BoundaryMode::kPlain : BoundaryMode::kTorus};
    const PointSet tx = sample_ppp(rng.uniform(0.1, 1.5), w, rng);
    const MarkAssignment marks = sample_marks(tx.size(), rng);
    const double d_excl = rng.uniform(0.0, 2.0);
    const RetainedSet r = thin_matern(tx, w, marks, d_excl);
    REQUIRE(r.on == testoracles::oracle_thin_matern(tx, w, marks.marks, d_excl));
  }
}

TEST_CASE("thin_matern empirical retention equals the MAP that sized D") {
  // Torus window isolates the retention statistics from boundary effects.
  Window w{-5, 5, -5, 5, BoundaryMode::kTorus};
  RandomStream rng(103);
  const double pa = 0.5;
  const double d_excl = exclusion_radius_from_map(pa, 3.0);
  long long kept = 0;
  long long total = 0;
  for (int i = 0; i < 400; ++i) {
    const PointSet tx = sample_ppp(3.0, w, rng);
    const MarkAssignment marks = sample_marks(tx.size(), rng);
    kept += thin_matern(tx, w, marks, d_excl).count();
    total += tx.size();
  }
  const double fraction = static_cast<double>(kept) / static_cast<double>(total);
  CHECK(std::abs(fraction - pa) <= 0.02 * pa);
}

TEST_CASE("thin_bidding_matern: highest bid wins, zero bids degrade to marks") {
  Window w{-5, 5, -5, 5, BoundaryMode::kPlain};
  PointSet tx;
  tx.points = {{0, 0}, {0.5, 0}};
  const auto marks = as_marks({0.2, 0.9});
  const RetainedSet r =
      thin_bidding_matern(tx, w, as_bids({2.0, 1.0}), marks, 1.0);
  CHECK(r.on == std::vector<std::uint8_t>{1, 0});

  // all-zero bids reduce to Matern contention on the tiebreak marks with
  // highest-wins orientation, i.e. thin_matern on (1 - mark)
  RandomStream rng(107);
  for (int i = 0; i < 50; ++i) {
    Window win{-5, 5, -5, 5,
               i % 2 == 0 ? BoundaryMode::kPlain : BoundaryMode::kTorus};
    const PointSet pts = sample_ppp(1.0, win, rng);
    const MarkAssignment tb = sample_marks(pts.size(), rng);
    MarkAssignment flipped;
    for (double m : tb.marks) {
      flipped.marks.push_back(1.0 - m);
    }
    const BidTable zero = as_bids(std::vector<double>(pts.points.size(), 0.0));
    const double d_excl = rng.uniform(0.2, 1.5);
    REQUIRE(thin_bidding_matern(pts, win, zero, tb, d_excl).on ==
            thin_matern(pts, win, flipped, d_excl).on);
  }
}

TEST_CASE("thin_bidding_matern matches the pairwise oracle") {
  RandomStream rng(109);
  for (int i = 0; i < 120; ++i) {
    Window w{-5, 5, -5, 5,
             i % 2 == 0 ? BoundaryMode::kPlain : BoundaryMode::kTorus};
    const PointSet tx = sample_ppp(rng.uniform(0.1, 1.5), w, rng);
    BidTable bids;
    for (int k = 0; k < tx.size(); ++k) {
      // coarse grid of bid values makes exact ties common on purpose
      bids.values.push_back(std::floor(rng.uniform01() * 4.0));
    }
    const MarkAssignment tb = sample_marks(tx.size(), rng);
    const double d_excl = rng.uniform(0.0, 2.0);
    REQUIRE(thin_bidding_matern(tx, w, bids, tb, d_excl).on ==
            testoracles::oracle_thin_bidding_matern(tx, w, bids.values, tb.marks, d_excl));
  }
}

TEST_CASE("hard-core property: no retained pair within D") {
  RandomStream rng(113);
  Window w{-5, 5, -5, 5, BoundaryMode::kTorus};
  const double d_excl = exclusion_radius_from_map(0.4, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const PointSet tx = sample_ppp(3.0, w, rng);
    const MarkAssignment marks = sample_marks(tx.size(), rng);
    const RetainedSet matern = thin_matern(tx, w, marks, d_excl);
    BidTable bids;
    for (int k = 0; k < tx.size(); ++k) {
      bids.values.push_back(rng.uniform01() * 3.0);
    }
    const RetainedSet bidding = thin_bidding_matern(tx, w, bids, marks, d_excl);
    for (int x = 0; x < tx.size(); ++x) {
      for (int y = x + 1; y < tx.size(); ++y) {
        if (distance(tx[x], tx[y], w) <= d_excl) {
          REQUIRE(!(matern.on[static_cast<std::size_t>(x)] &&
                    matern.on[static_cast<std::size_t>(y)]));
          REQUIRE(!(bidding.on[static_cast<std::size_t>(x)] &&
                    bidding.on[static_cast<std::size_t>(y)]));
        }
      }
    }
  }
}

TEST_CASE("thin_bid_ordering: cardinality contract") {
  RandomStream rng(127);
  const auto tb = sample_marks(4, rng);
  const RetainedSet top2 = thin_bid_ordering(as_bids({5, 3, 2, 1}), 0.5, tb);
  CHECK(top2.on == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(thin_bid_ordering(as_bids({5, 3, 2, 1}), 1.0, tb).count() == 4);
  CHECK(thin_bid_ordering(as_bids({5, 3, 2, 1}), 0.1, tb).count() == 0);

  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 50);
    BidTable bids;
    for (int k = 0; k < n; ++k) {
      bids.values.push_back(std::floor(rng.uniform01() * 3.0));  // many ties
    }
    const MarkAssignment marks = sample_marks(n, rng);
    const double pa = rng.uniform01();
    const RetainedSet r = thin_bid_ordering(bids, pa, marks);
    REQUIRE(r.count() == static_cast<int>(std::floor(pa * n + 1e-9)));
  }

  // floor(p_A n) must survive decimal p_A values that are not exact binary
  CHECK(thin_bid_ordering(as_bids(std::vector<double>(10, 0.0)), 0.7,
                          sample_marks(10, rng))
            .count() == 7);
}

TEST_CASE("thin_bid_ordering: equal bids resolved by higher tiebreak") {
  const RetainedSet r =
      thin_bid_ordering(as_bids({1.0, 1.0, 1.0}), 0.34, as_marks({0.5, 0.9, 0.1}));
  CHECK(r.on == std::vector<std::uint8_t>{0, 1, 0});
}

TEST_CASE("thinning is invariant to input permutation") {
  RandomStream rng(131);
  Window w{-5, 5, -5, 5, BoundaryMode::kPlain};
  const PointSet tx = sample_ppp(1.0, w, rng);
  const int n = tx.size();
  REQUIRE(n > 10);
  const MarkAssignment marks = sample_marks(n, rng);
  BidTable bids;
  for (int k = 0; k < n; ++k) {
    bids.values.push_back(rng.uniform01() * 2.0);
  }
  const double d_excl = 0.6;

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = n - 1; k > 0; --k) {
    std::swap(perm[static_cast<std::size_t>(k)],
              perm[static_cast<std::size_t>(rng.uniform01() * (k + 1))]);
  }
  PointSet tx_p;
  MarkAssignment marks_p;
  BidTable bids_p;
  for (int k = 0; k < n; ++k) {
    tx_p.points.push_back(tx[perm[static_cast<std::size_t>(k)]]);
    marks_p.marks.push_back(marks.marks[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
    bids_p.values.push_back(bids.values[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
  }

  const auto base_m = thin_matern(tx, w, marks, d_excl);
  const auto perm_m = thin_matern(tx_p, w, marks_p, d_excl);
  const auto base_b = thin_bidding_matern(tx, w, bids, marks, d_excl);
  const auto perm_b = thin_bidding_matern(tx_p, w, bids_p, marks_p, d_excl);
  const auto base_o = thin_bid_ordering(bids, 0.4, marks);
  const auto perm_o = thin_bid_ordering(bids_p, 0.4, marks_p);
  for (int k = 0; k < n; ++k) {
    const auto pk = static_cast<std::size_t>(perm[static_cast<std::size_t>(k)]);
    REQUIRE(perm_m.on[static_cast<std::size_t>(k)] == base_m.on[pk]);
    REQUIRE(perm_b.on[static_cast<std::size_t>(k)] == base_b.on[pk]);
    REQUIRE(perm_o.on[static_cast<std::size_t>(k)] == base_o.on[pk]);
  }
}

TEST_CASE("constant bids make bidding-Matern distribution-identical to Matern") {
  // Two-sample KS on retained counts across independent realizations.
  RandomStream rng(137);
  Window w{-5, 5, -5, 5, BoundaryMode::kTorus};
  const double d_excl = exclusion_radius_from_map(0.5, 3.0);
  std::vector<double> counts_matern;
  std::vector<double> counts_bidding;
  for (int i = 0; i < 1000; ++i) {
    {
      const PointSet tx = sample_ppp(3.0, w, rng);
      const MarkAssignment marks = sample_marks(tx.size(), rng);
      counts_matern.push_back(thin_matern(tx, w, marks, d_excl).count());
    }
    {
      const PointSet tx = sample_ppp(3.0, w, rng);
      const MarkAssignment marks = sample_marks(tx.size(), rng);
      const BidTable constant = as_bids(std::vector<double>(tx.points.size(), 2.5));
      counts_bidding.push_back(thin_bidding_matern(tx, w, constant, marks, d_excl).count());
    }
  }
  const double d = teststats::ks_statistic_two_sample(counts_matern, counts_bidding);
  const double n_eff = 1000.0 * 1000.0 / 2000.0;
  CHECK(teststats::ks_pvalue(d, n_eff) > 0.01);
}

}  // TEST_SUITE
