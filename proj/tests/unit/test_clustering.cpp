#include <cmath>
#include <numbers>
#include <set>

#include <doctest.h>

#include "graspgen/clustering.hpp"
#include "graspgen/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace graspgen;
using std::numbers::pi;

namespace {

GraspCandidate fake_candidate(std::uint32_t i, std::uint32_t j, const Vec3& midpoint,
                              const UnitVec3& axis) {
  const ContactPair pair{i, j, axis.vec() * 0.02, 0.02, midpoint, axis,
                         GraspSide::Outside, 0.05};
  return GraspCandidate{pair, {0.0}, {build_grasp_frame(midpoint, axis, 0.0)}};
}

auto value_distance(const std::vector<double>& values) {
  return [&values](std::size_t a, std::size_t b) { return std::abs(values[a] - values[b]); };
}

double set_cost(std::size_t n, const std::vector<std::size_t>& medoids,
                const auto& distance) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, distance(j, m));
    total += best;
  }
  return total;
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("pam rejects k = 0") {
  const std::vector<double> values{0.0, 1.0};
  CHECK_THROWS_AS(pam(values.size(), value_distance(values), 0), InvalidKError);
}

TEST_CASE("k >= n makes every item its own medoid at cost zero") {
  const std::vector<double> values{3.0, 1.0, 2.0};
  const ClusterResult r = pam(values.size(), value_distance(values), 5);
  CHECK(r.medoid_indices == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.assignment == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.total_cost == 0.0);
}

TEST_CASE("two items, k = 1: the tie resolves to the lowest index") {
  const std::vector<double> values{0.0, 100.0};
  const ClusterResult r = pam(values.size(), value_distance(values), 1);
  CHECK(r.medoid_indices == std::vector<std::size_t>{0});
  CHECK(r.assignment == std::vector<std::size_t>{0, 0});
  CHECK(r.total_cost == doctest::Approx(100.0));
}

TEST_CASE("1-D fixture {0,1,10,11} with k = 2 lands on the canonical optimum") {
  // All of {0,10},{0,11},{1,10},{1,11} cost 2; the canonical result is the
  // lexicographically smallest index set {0, 2} (values 0 and 10).
  const std::vector<double> values{0.0, 1.0, 10.0, 11.0};
  const ClusterResult r = pam(values.size(), value_distance(values), 2);
  CHECK(r.medoid_indices == std::vector<std::size_t>{0, 2});
  CHECK(r.total_cost == doctest::Approx(2.0));
  CHECK(r.assignment == std::vector<std::size_t>{0, 0, 2, 2});

  const auto brute = oracle::best_medoids(values.size(), value_distance(values), 2);
  CHECK(brute.cost == doctest::Approx(2.0));
  CHECK(brute.medoids == r.medoid_indices);
}

TEST_CASE("assignment maps every item to its nearest medoid, ties to lowest") {
  testutil::Rand rng(51);
  for (int c = 0; c < 50; ++c) {
    std::vector<double> values;
    const std::size_t n = 5 + rng.integer(40);
    for (std::size_t i = 0; i < n; ++i) values.push_back(rng.uniform(0, 10));
    const std::size_t k = 1 + rng.integer(4);
    const ClusterResult r = pam(n, value_distance(values), std::min(k, n));

    for (std::size_t m : r.medoid_indices) CHECK(r.assignment[m] == m);
    double recomputed = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_m = n;
      for (std::size_t m : r.medoid_indices) {
        const double d = std::abs(values[j] - values[m]);
        if (d < best) {
          best = d;
          best_m = m;
        }
      }
      if (r.assignment[j] != j)  // non-medoids must sit at the minimum
        CHECK(std::abs(values[j] - values[r.assignment[j]]) == doctest::Approx(best));
      CHECK(r.assignment[j] <= best_m);  // ties resolve downward
      recomputed += std::abs(values[j] - values[r.assignment[j]]);
    }
    CHECK(r.total_cost == doctest::Approx(recomputed).epsilon(1e-9));
  }
}

TEST_CASE("terminating before max_iter leaves no improving single swap") {
  testutil::Rand rng(52);
  for (int c = 0; c < 40; ++c) {
    const std::size_t n = 10 + rng.integer(60);
    std::vector<Vec3> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(rng.vec(-1, 1));
    const auto dist = [&points](std::size_t a, std::size_t b) {
      return (points[a] - points[b]).norm();
    };
    const std::size_t k = 1 + rng.integer(5);
    const ClusterResult r = pam(n, dist, std::min(k, n));

    std::set<std::size_t> medoid_set(r.medoid_indices.begin(), r.medoid_indices.end());
    for (std::size_t m : r.medoid_indices) {
      for (std::size_t h = 0; h < n; ++h) {
        if (medoid_set.count(h)) continue;
        std::vector<std::size_t> swapped;
        for (std::size_t x : r.medoid_indices)
          if (x != m) swapped.push_back(x);
        swapped.push_back(h);
        CHECK(set_cost(n, swapped, dist) >= r.total_cost - 1e-9);
      }
    }
  }
}

TEST_CASE("accepted improving swaps strictly decrease the cost") {
  testutil::Rand rng(53);
  for (int c = 0; c < 40; ++c) {
    const std::size_t n = 12 + rng.integer(50);
    std::vector<Vec3> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(rng.vec(-1, 1));
    const auto dist = [&points](std::size_t a, std::size_t b) {
      return (points[a] - points[b]).norm();
    };
    PamTrace trace;
    pam(n, dist, std::min<std::size_t>(4, n), 200, &trace);
    for (std::size_t s = 1; s < trace.swap_costs.size(); ++s)
      CHECK(trace.swap_costs[s] < trace.swap_costs[s - 1]);
  }
}

TEST_CASE("pam reaches the exhaustive optimum on at least 95% of tiny instances") {
  testutil::Rand rng(54);
  int optimal = 0;
  const int instances = 200;
  for (int c = 0; c < instances; ++c) {
    const std::size_t n = 4 + rng.integer(7);   // 4..10
    const std::size_t k = 1 + rng.integer(3);   // 1..3
    std::vector<Vec3> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(rng.vec(0, 1));
    const auto dist = [&points](std::size_t a, std::size_t b) {
      return (points[a] - points[b]).norm();
    };
    const ClusterResult r = pam(n, dist, std::min(k, n));
    const auto brute = oracle::best_medoids(n, dist, std::min(k, n));
    if (r.total_cost <= brute.cost + 1e-9) {
      ++optimal;
    } else {
      // A miss must still be a verified single-swap local optimum.
      std::set<std::size_t> medoid_set(r.medoid_indices.begin(), r.medoid_indices.end());
      for (std::size_t m : r.medoid_indices)
        for (std::size_t h = 0; h < n; ++h) {
          if (medoid_set.count(h)) continue;
          std::vector<std::size_t> swapped;
          for (std::size_t x : r.medoid_indices)
            if (x != m) swapped.push_back(x);
          swapped.push_back(h);
          CHECK(set_cost(n, swapped, dist) >= r.total_cost - 1e-9);
        }
    }
  }
  CHECK(optimal >= instances * 95 / 100);
}

TEST_CASE("pam is deterministic across repeated runs") {
  testutil::Rand rng(55);
  std::vector<Vec3> points;
  for (int i = 0; i < 80; ++i) points.push_back(rng.vec(-1, 1));
  const auto dist = [&points](std::size_t a, std::size_t b) {
    return (points[a] - points[b]).norm();
  };
  const ClusterResult a = pam(points.size(), dist, 6);
  const ClusterResult b = pam(points.size(), dist, 6);
  CHECK(a.medoid_indices == b.medoid_indices);
  CHECK(a.assignment == b.assignment);
  CHECK(a.total_cost == b.total_cost);
}

TEST_CASE("cluster_grasps returns the single candidate unchanged") {
  const std::vector<GraspCandidate> one{
      fake_candidate(0, 1, {0, 0, 0}, UnitVec3(1, 0, 0))};
  const auto out = cluster_grasps(one, {});
  REQUIRE(out.size() == 1);
  CHECK(out[0].pair.i == 0);
  CHECK(out[0].pair.j == 1);
}

TEST_CASE("two far-apart midpoint groups produce one winner per group") {
  testutil::Rand rng(56);
  std::vector<GraspCandidate> candidates;
  std::vector<Vec3> midpoints;
  for (std::uint32_t c = 0; c < 30; ++c) {
    const bool second = c >= 15;
    const Vec3 base = second ? Vec3{1, 1, 1} : Vec3{0, 0, 0};
    const Vec3 mid = base + rng.vec(-0.01, 0.01);
    midpoints.push_back(mid);
    candidates.push_back(fake_candidate(c, c + 100, mid, rng.direction()));
  }
  ClusteringConfig config;
  config.k_translational = 2;
  config.k_rotational = 1;
  GraspClusteringDetail detail;
  const auto out = cluster_grasps(candidates, config, &detail);
  REQUIRE(out.size() == 2);
  const bool g0 = out[0].pair.midpoint.norm() < 0.5;
  const bool g1 = out[1].pair.midpoint.norm() < 0.5;
  CHECK(g0 != g1);  // one from each spatial group

  // The translational medoid pair must also be the exhaustive optimum.
  const auto dist = [&midpoints](std::size_t a, std::size_t b) {
    return (midpoints[a] - midpoints[b]).norm();
  };
  const auto brute = oracle::best_medoids(candidates.size(), dist, 2);
  CHECK(detail.translational.total_cost == doctest::Approx(brute.cost).epsilon(1e-9));
}

TEST_CASE("axis clustering spreads winners across a quarter circle") {
  // 100 candidates share one midpoint; axes sweep a quarter circle. The
  // three rotational medoids must be pairwise further apart than the mean
  // within-cluster axial distance.
  std::vector<GraspCandidate> candidates;
  for (std::uint32_t c = 0; c < 100; ++c) {
    const double phi = (pi / 2) * c / 99.0;
    candidates.push_back(fake_candidate(
        c, c + 200, {0, 0, 0}, UnitVec3::assume_unit({std::cos(phi), std::sin(phi), 0})));
  }
  ClusteringConfig config;
  config.k_translational = 1;
  config.k_rotational = 3;
  GraspClusteringDetail detail;
  const auto out = cluster_grasps(candidates, config, &detail);
  REQUIRE(out.size() == 3);

  REQUIRE(detail.rotational.size() == 1);
  const double mean_within =
      detail.rotational[0].total_cost / static_cast<double>(candidates.size());
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      CHECK(axial_distance(out[a].pair.axis, out[b].pair.axis) >= mean_within);
}

TEST_CASE("clustered output is sorted, capped and bit-identical to inputs") {
  testutil::Rand rng(57);
  std::vector<GraspCandidate> candidates;
  for (std::uint32_t c = 0; c < 120; ++c)
    candidates.push_back(fake_candidate(c, c + 1, rng.vec(-0.05, 0.05), rng.direction()));

  ClusteringConfig config;
  config.k_translational = 4;
  config.k_rotational = 2;
  const auto out = cluster_grasps(candidates, config);
  CHECK(out.size() <= config.k_translational * config.k_rotational);
  for (std::size_t a = 1; a < out.size(); ++a)
    CHECK(out[a - 1].pair.i <= out[a].pair.i);
  for (const auto& g : out) {
    const auto& original = candidates[g.pair.i];  // i doubles as the index
    CHECK(g.pair.midpoint == original.pair.midpoint);
    CHECK(g.pair.axis.vec() == original.pair.axis.vec());
    CHECK(g.valid_thetas == original.valid_thetas);
  }
}

TEST_CASE("cluster_grasps rejects empty input") {
  CHECK_THROWS_AS(cluster_grasps({}, {}), EmptyInputError);
}

}  // TEST_SUITE
