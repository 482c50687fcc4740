#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kselect/dataset.hpp"
#include "kselect/distance.hpp"
#include "kselect/profile.hpp"

using namespace kselect;

namespace {

Dataset uniform_square(std::size_t n, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.family = Family::uniform;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_CASE("pairwise distances: materialized and on-demand agree bitwise") {
  const Dataset dataset = uniform_square(60, 4);
  const PairwiseDistanceView fast = PairwiseDistanceView::materialized(dataset);
  const PairwiseDistanceView lazy = PairwiseDistanceView::on_demand(dataset);
  CHECK(fast.is_materialized());
  CHECK(!lazy.is_materialized());
  CHECK(fast.size() == 60);

  for (std::size_t i = 0; i < dataset.size(); ++i) {
    CHECK(fast(i, i) == 0.0);
    for (std::size_t j = 0; j < dataset.size(); ++j) {
      CHECK(fast(i, j) == lazy(i, j));  // identical expression, bitwise equal
      CHECK(fast(i, j) == fast(j, i));
    }
  }
}

TEST_CASE("pairwise distances: materialization is size-guarded") {
  const std::size_t too_many = PairwiseDistanceView::kMaterializeLimit + 1;
  const Dataset dataset(std::vector<double>(too_many, 0.0), too_many, 1);
  CHECK_THROWS_AS(PairwiseDistanceView::materialized(dataset),
                  std::invalid_argument);
  CHECK_NOTHROW(PairwiseDistanceView::on_demand(dataset));
}

TEST_CASE("dunn: two 1-d pairs give 9.0") {
  // Clusters {0,1} and {10,11}: min between-cluster distance 9, max
  // within-cluster diameter 1.
  const Dataset dataset(std::vector<double>{0.0, 1.0, 10.0, 11.0}, 4, 1);
  const std::vector<std::int32_t> assignment{0, 0, 1, 1};
  CHECK(dunn(dataset, assignment) == doctest::Approx(9.0).epsilon(1e-12));

  // Passing a materialized view changes nothing.
  const PairwiseDistanceView view = PairwiseDistanceView::materialized(dataset);
  CHECK(dunn(dataset, assignment, &view) == dunn(dataset, assignment));
}

TEST_CASE("dunn: degenerate assignments are errors") {
  const Dataset dataset(std::vector<double>{0.0, 1.0, 2.0}, 3, 1);
  // All singletons: every diameter is zero.
  CHECK_THROWS_AS(dunn(dataset, std::vector<std::int32_t>{0, 1, 2}),
                  std::invalid_argument);
  // A single nonempty cluster.
  CHECK_THROWS_AS(dunn(dataset, std::vector<std::int32_t>{0, 0, 0}),
                  std::invalid_argument);
  // Assignment length mismatch.
  CHECK_THROWS_AS(dunn(dataset, std::vector<std::int32_t>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("davies_bouldin: symmetric 1-d pairs give 0.2") {
  // {0,2} about center 1 and {10,12} about center 11: both RMS radii are 1,
  // center distance 10, so R_ij = (1+1)/10 for both clusters.
  const Dataset dataset(std::vector<double>{0.0, 2.0, 10.0, 12.0}, 4, 1);
  const std::vector<std::int32_t> assignment{0, 0, 1, 1};
  const std::vector<double> centers{1.0, 11.0};
  CHECK(davies_bouldin(dataset, assignment, centers) ==
        doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("davies_bouldin: degenerate inputs are errors") {
  const Dataset dataset(std::vector<double>{0.0, 2.0, 10.0, 12.0}, 4, 1);
  // Coincident centers of nonempty clusters.
  CHECK_THROWS_AS(davies_bouldin(dataset, std::vector<std::int32_t>{0, 0, 1, 1},
                                 std::vector<double>{1.0, 1.0}),
                  std::invalid_argument);
  // Only one nonempty cluster.
  CHECK_THROWS_AS(davies_bouldin(dataset, std::vector<std::int32_t>{0, 0, 0, 0},
                                 std::vector<double>{1.0, 11.0}),
                  std::invalid_argument);
  // Centers not a multiple of d.
  const Dataset plane(std::vector<double>{0.0, 0.0, 1.0, 1.0}, 2, 2);
  CHECK_THROWS_AS(davies_bouldin(plane, std::vector<std::int32_t>{0, 1},
                                 std::vector<double>{1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("silhouette: two 1-d pairs give 79/99") {
  // Clusters {0,1} and {5,6}: s(0) = s(6) = 9/11, s(1) = s(5) = 7/9.
  const Dataset dataset(std::vector<double>{0.0, 1.0, 5.0, 6.0}, 4, 1);
  const std::vector<std::int32_t> assignment{0, 0, 1, 1};
  CHECK(silhouette(dataset, assignment) ==
        doctest::Approx(79.0 / 99.0).epsilon(1e-12));

  const PairwiseDistanceView view = PairwiseDistanceView::materialized(dataset);
  CHECK(silhouette(dataset, assignment, &view) ==
        silhouette(dataset, assignment));
}

TEST_CASE("silhouette: singletons contribute zero") {
  // Same two pairs plus an isolated singleton cluster at 100.
  const Dataset dataset(std::vector<double>{0.0, 1.0, 5.0, 6.0, 100.0}, 5, 1);
  const std::vector<std::int32_t> assignment{0, 0, 1, 1, 2};
  // The four pair points keep their s-values (their nearest other cluster is
  // still the neighboring pair), the singleton scores 0; mean over n = 5.
  CHECK(silhouette(dataset, assignment) ==
        doctest::Approx(316.0 / 495.0).epsilon(1e-12));
}

TEST_CASE("simplified_silhouette: two 1-d pairs give 89/99") {
  // Centers 0.5 and 5.5: s(0) = s(6) = 10/11, s(1) = s(5) = 8/9.
  const Dataset dataset(std::vector<double>{0.0, 1.0, 5.0, 6.0}, 4, 1);
  const std::vector<std::int32_t> assignment{0, 0, 1, 1};
  const std::vector<double> centers{0.5, 5.5};
  CHECK(simplified_silhouette(dataset, assignment, centers) ==
        doctest::Approx(89.0 / 99.0).epsilon(1e-12));

  // A single nonempty cluster is an error here too.
  CHECK_THROWS_AS(simplified_silhouette(dataset,
                                        std::vector<std::int32_t>{0, 0, 0, 0},
                                        centers),
                  std::invalid_argument);
}

TEST_CASE("sweep: all four indices recover k=3 on well-separated blobs") {
  GeneratorSpec spec;
  spec.family = Family::well_separated;
  spec.n = 120;
  spec.seed = 8;
  const Dataset dataset = generate(spec);
  const SSEProfile profile = build_profile(dataset, 1, 6, 10, 19, true);

  for (const DistanceIndex which :
       {DistanceIndex::dunn, DistanceIndex::davies_bouldin,
        DistanceIndex::silhouette, DistanceIndex::simplified_silhouette}) {
    const CriterionResult result = sweep_distance_criterion(dataset, profile, which);
    CHECK(result.selected_k == 3);
    CHECK(result.scores.count(1) == 0);  // k = 1 is never scored
    CHECK(!result.unstable);
  }
}

TEST_CASE("sweep: selection direction follows the index") {
  GeneratorSpec spec;
  spec.family = Family::well_separated;
  spec.n = 90;
  spec.seed = 21;
  const Dataset dataset = generate(spec);
  const SSEProfile profile = build_profile(dataset, 1, 5, 5, 37, true);

  const CriterionResult db =
      sweep_distance_criterion(dataset, profile, DistanceIndex::davies_bouldin);
  double best_db = db.scores.at(db.selected_k);
  for (const auto& [k, score] : db.scores) CHECK(best_db <= score);

  const CriterionResult sil =
      sweep_distance_criterion(dataset, profile, DistanceIndex::silhouette);
  double best_sil = sil.scores.at(sil.selected_k);
  for (const auto& [k, score] : sil.scores) CHECK(best_sil >= score);
}

TEST_CASE("sweep: degenerate clusterings are skipped with a note") {
  const Dataset dataset(std::vector<double>{0.0, 1.0, 10.0, 11.0}, 4, 1);

  SSEProfile profile;
  profile.k_min = 2;
  profile.k_max = 3;
  profile.n = 4;
  profile.d = 1;
  profile.restarts = 1;
  profile.has_assignments = true;
  ProfileEntry collapsed;  // k=2 entry that left every point in one cluster
  collapsed.k = 2;
  collapsed.sse = 101.0;
  collapsed.solution.k = 2;
  collapsed.solution.centers = {5.5, 5.5};
  collapsed.solution.assignment = {0, 0, 0, 0};
  ProfileEntry split;
  split.k = 3;
  split.sse = 1.0;
  split.solution.k = 3;
  split.solution.centers = {0.5, 10.5, 0.0};
  split.solution.assignment = {0, 0, 1, 1};
  profile.entries = {collapsed, split};

  const CriterionResult result =
      sweep_distance_criterion(dataset, profile, DistanceIndex::dunn);
  CHECK(result.scores.count(2) == 0);
  CHECK(result.scores.at(3) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(result.selected_k == 3);
  CHECK(result.unstable);
  CHECK(result.note == "degenerate clusterings skipped");

  // If every k is degenerate the sweep has nothing to select.
  profile.k_max = 2;
  profile.entries = {collapsed};
  CHECK_THROWS_AS(sweep_distance_criterion(dataset, profile, DistanceIndex::dunn),
                  std::invalid_argument);
}

TEST_CASE("sweep: max_n guard and seeded subsampling") {
  const Dataset dataset = uniform_square(100, 6);
  const SSEProfile profile = build_profile(dataset, 1, 4, 5, 41, true);

  DistanceSweepOptions options;
  options.max_n = 50;
  CHECK_THROWS_AS(sweep_distance_criterion(dataset, profile,
                                           DistanceIndex::silhouette, options),
                  std::invalid_argument);

  options.allow_subsample = true;
  options.subsample_seed = 123;
  const CriterionResult first =
      sweep_distance_criterion(dataset, profile, DistanceIndex::silhouette, options);
  CHECK(first.unstable);
  CHECK(first.note.find("50") != std::string::npos);

  // Same seed, same subsample, bitwise-identical scores.
  const CriterionResult second =
      sweep_distance_criterion(dataset, profile, DistanceIndex::silhouette, options);
  CHECK(first.selected_k == second.selected_k);
  REQUIRE(first.scores.size() == second.scores.size());
  for (const auto& [k, score] : first.scores) CHECK(second.scores.at(k) == score);
}

TEST_CASE("sweep: argument validation") {
  const Dataset dataset = uniform_square(40, 11);
  const SSEProfile bare = build_profile(dataset, 1, 3, 5, 43, false);
  CHECK_THROWS_AS(sweep_distance_criterion(dataset, bare, DistanceIndex::dunn),
                  std::invalid_argument);

  const Dataset other = uniform_square(30, 12);
  const SSEProfile mismatched = build_profile(other, 1, 3, 5, 43, true);
  CHECK_THROWS_AS(sweep_distance_criterion(dataset, mismatched, DistanceIndex::dunn),
                  std::invalid_argument);
}
