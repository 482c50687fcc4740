#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kselect/dataset.hpp"
#include "kselect/profile.hpp"
#include "kselect/variance.hpp"

using namespace kselect;

namespace {

// Same worked example as the elbow tests: a sharp elbow at k = 3.
SSEProfile elbow_at_3() {
  return make_profile_from_sse({1000.0, 500.0, 100.0, 90.0, 82.0, 75.0}, 1, 100, 2);
}

}  // namespace

TEST_CASE("reduction_curve: hand-derived sse_hat and ratios") {
  const ReductionCurve curve = reduction_curve(elbow_at_3());

  // sse_hat_2 = (98/2) * (1/99) * 1000, sse_hat_3 = (97/3) * (1/99) * 1000,
  // sse_hat_4 = (96/4) * (3/97) * 100 (the k=3 term becomes the minimum).
  CHECK(curve.sse_hat.at(2) == doctest::Approx(49000.0 / 99.0).epsilon(1e-12));
  CHECK(curve.sse_hat.at(3) == doctest::Approx(97000.0 / 297.0).epsilon(1e-12));
  CHECK(curve.sse_hat.at(4) == doctest::Approx(7200.0 / 97.0).epsilon(1e-12));

  CHECK(curve.ratio.at(2) == doctest::Approx(1.0050891).epsilon(1e-6));
  CHECK(curve.ratio.at(3) == doctest::Approx(0.5533404).epsilon(1e-6));
  CHECK(curve.ratio.at(4) == doctest::Approx(1.1011358).epsilon(1e-6));

  // Only k = 3 dips below 1: both selection rules agree.
  const CriterionResult max_result = select_max_reduction(curve);
  CHECK(max_result.selected_k == 3);
  CHECK(!max_result.unclustered);
  const CriterionResult last_result = select_last_reduction(curve);
  CHECK(last_result.selected_k == 3);
  CHECK(!last_result.unclustered);
  CHECK(max_result.name == "max_reduction");
  CHECK(last_result.name == "last_reduction");
}

TEST_CASE("reduction: no ratio below threshold reports unclustered k=1") {
  const SSEProfile profile =
      make_profile_from_sse({100.0, 99.0, 98.5, 98.0}, 1, 100, 2);
  const ReductionCurve curve = reduction_curve(profile);
  for (const auto& [k, ratio] : curve.ratio) CHECK(ratio >= 1.0);

  for (const CriterionResult& result :
       {select_max_reduction(curve), select_last_reduction(curve)}) {
    CHECK(result.selected_k == 1);
    CHECK(result.unclustered);
    CHECK(!result.note.empty());
  }
}

TEST_CASE("reduction: custom threshold changes the verdict") {
  const SSEProfile profile =
      make_profile_from_sse({100.0, 99.0, 98.5, 98.0}, 1, 100, 2);
  ReductionCurve curve = reduction_curve(profile);
  curve.threshold = 1.5;

  // ratio_2 ~ 1.414 is the only value below 1.5.
  CHECK(select_max_reduction(curve).selected_k == 2);
  CHECK(!select_max_reduction(curve).unclustered);
  CHECK(select_last_reduction(curve).selected_k == 2);
}

TEST_CASE("reduction: exact fits truncate the curve and flag unstable") {
  const SSEProfile profile = make_profile_from_sse({9.0, 3.0, 0.0, 0.0}, 1, 10, 1);
  const ReductionCurve curve = reduction_curve(profile);

  // sse_hat_4 would use the k=3 term (3/7)*0 = 0, so the curve stops at 3.
  CHECK(curve.ratio.count(2) == 1);
  CHECK(curve.ratio.at(3) == 0.0);
  CHECK(curve.ratio.count(4) == 0);
  CHECK(curve.unstable);
  CHECK(!curve.note.empty());

  const CriterionResult result = select_max_reduction(curve);
  CHECK(result.selected_k == 3);
  CHECK(result.unstable);
}

TEST_CASE("reduction_curve: argument validation") {
  // k_min must be 1 (SSE_1 anchors the expectation).
  const SSEProfile shifted = make_profile_from_sse({10.0, 5.0}, 2, 100, 2);
  CHECK_THROWS_AS(reduction_curve(shifted), std::invalid_argument);

  // k_max must be at least 2.
  const SSEProfile single = make_profile_from_sse({10.0}, 1, 100, 2);
  CHECK_THROWS_AS(reduction_curve(single), std::invalid_argument);

  // SSE_1 = 0 leaves no usable point.
  const SSEProfile zero = make_profile_from_sse({0.0, 0.0}, 1, 100, 2);
  CHECK_THROWS_AS(reduction_curve(zero), std::invalid_argument);
}

TEST_CASE("vrc: hand-derived scores and argmax") {
  const CriterionResult result = vrc(elbow_at_3());
  // VRC_2 = ((1000-500)/1) / (500/98), VRC_3 = ((1000-100)/2) / (100/97).
  CHECK(result.scores.at(2) == doctest::Approx(98.0).epsilon(1e-12));
  CHECK(result.scores.at(3) == doctest::Approx(436.5).epsilon(1e-12));
  CHECK(result.selected_k == 3);
  CHECK(!result.unclustered);
  CHECK(!result.unstable);
  CHECK(result.name == "vrc");
}

TEST_CASE("vrc: flat SSE curve reports no structure") {
  const SSEProfile flat = make_profile_from_sse({5.0, 5.0, 5.0, 5.0}, 1, 100, 2);
  const CriterionResult result = vrc(flat);
  for (const auto& [k, score] : result.scores) CHECK(score == 0.0);
  CHECK(result.selected_k == 2);  // lowest k wins the all-zero tie
  CHECK(result.unclustered);
}

TEST_CASE("vrc: zero SSE truncates, k >= n stops the sweep") {
  const SSEProfile exact = make_profile_from_sse({9.0, 3.0, 0.0, 0.0}, 1, 10, 1);
  const CriterionResult truncated = vrc(exact);
  CHECK(truncated.scores.at(2) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(truncated.scores.count(3) == 0);
  CHECK(truncated.selected_k == 2);
  CHECK(truncated.unstable);

  // n = 4 exhausts the degrees of freedom at k = 4.
  const SSEProfile tiny = make_profile_from_sse({10.0, 4.0, 2.0, 1.0}, 1, 4, 1);
  const CriterionResult result = vrc(tiny);
  CHECK(result.scores.count(4) == 0);
  CHECK(result.scores.at(2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(result.scores.at(3) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(result.selected_k == 2);
}

TEST_CASE("vrc: argument validation") {
  const SSEProfile shifted = make_profile_from_sse({10.0, 5.0}, 2, 100, 2);
  CHECK_THROWS_AS(vrc(shifted), std::invalid_argument);
  const SSEProfile single = make_profile_from_sse({10.0}, 1, 100, 2);
  CHECK_THROWS_AS(vrc(single), std::invalid_argument);
}

TEST_CASE("marriott: two tight 1-d pairs, hand-computed M_k") {
  // Points {0, 0.1} and {10, 10.1}: total scatter |W_1| = 100.01 while the
  // k = 2 split leaves W_2 = 4 * 0.05^2 = 0.01, so M_2 = 4 * 0.01 = 0.04.
  const Dataset dataset(std::vector<double>{0.0, 0.1, 10.0, 10.1}, 4, 1);
  const SSEProfile profile = build_profile(dataset, 1, 3, 10, 7, true);

  const CriterionResult result = marriott(dataset, profile);
  CHECK(result.scores.at(2) == doctest::Approx(0.04).epsilon(1e-9));
  // k = 3 isolates one point: W_3 = 2 * 0.05^2, M_3 = 9 * 0.005 = 0.045.
  CHECK(result.scores.at(3) == doctest::Approx(0.045).epsilon(1e-9));
  CHECK(result.selected_k == 2);
  CHECK(!result.unclustered);
  CHECK(result.name == "marriott");
}

TEST_CASE("marriott: a bad split fails to beat the unclustered baseline") {
  // 1-d points {0,1,2,3} with the deliberately interleaved assignment
  // {0,1,0,1}: W_2 = 4, M_2 = 16 > |W_1| = 5.
  const Dataset dataset(std::vector<double>{0.0, 1.0, 2.0, 3.0}, 4, 1);
  SSEProfile profile;
  profile.k_min = 2;
  profile.k_max = 2;
  profile.n = 4;
  profile.d = 1;
  profile.restarts = 1;
  profile.has_assignments = true;
  ProfileEntry entry;
  entry.k = 2;
  entry.sse = 4.0;
  entry.solution.k = 2;
  entry.solution.sse = 4.0;
  entry.solution.centers = {1.0, 2.0};
  entry.solution.assignment = {0, 1, 0, 1};
  profile.entries.push_back(entry);

  const CriterionResult result = marriott(dataset, profile);
  CHECK(result.scores.at(2) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(result.selected_k == 2);
  CHECK(result.unclustered);
  CHECK(!result.note.empty());
}

TEST_CASE("marriott: argument validation") {
  const Dataset dataset(std::vector<double>{0.0, 0.1, 10.0, 10.1}, 4, 1);

  // Assignments are required.
  const SSEProfile bare = build_profile(dataset, 1, 2, 5, 7, false);
  CHECK_THROWS_AS(marriott(dataset, bare), std::invalid_argument);

  // Profile must match the dataset shape.
  const Dataset other(std::vector<double>{0.0, 1.0, 2.0}, 3, 1);
  const SSEProfile mismatched = build_profile(other, 1, 2, 5, 7, true);
  CHECK_THROWS_AS(marriott(dataset, mismatched), std::invalid_argument);

  // Collinear 2-d data has singular total scatter: |W_1| = 0.
  const Dataset collinear(
      std::vector<double>{0.0, 0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 3.0}, 4, 2);
  const SSEProfile degenerate = build_profile(collinear, 1, 2, 5, 7, true);
  CHECK_THROWS_AS(marriott(collinear, degenerate), std::invalid_argument);
}

TEST_CASE("krzanowski_lai: hand-derived ratios and argmax") {
  const CriterionResult result = krzanowski_lai(elbow_at_3());
  // d = 2 so Diff_k = (k-1) SSE_{k-1} - k SSE_k:
  //   Diff_2 = 0, Diff_3 = 700, Diff_4 = -60, Diff_5 = -50, Diff_6 = -40.
  CHECK(result.scores.at(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(result.scores.at(3) == doctest::Approx(700.0 / 60.0).epsilon(1e-12));
  CHECK(result.scores.at(4) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(result.scores.at(5) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(result.scores.count(6) == 0);  // needs Diff_{k+1}
  CHECK(result.selected_k == 3);
  CHECK(!result.unstable);
  CHECK(result.name == "kl_index");
}

TEST_CASE("krzanowski_lai: exact k^{-2/d} decay leaves every ratio undefined") {
  // With d = 2, SSE_k = 120/k makes every Diff_k exactly zero.
  const SSEProfile decay =
      make_profile_from_sse({120.0, 60.0, 40.0, 30.0, 24.0, 20.0}, 1, 100, 2);
  const CriterionResult result = krzanowski_lai(decay);
  CHECK(result.scores.empty());
  CHECK(result.selected_k == 1);
  CHECK(result.unstable);
  CHECK(!result.note.empty());
}

TEST_CASE("krzanowski_lai: argument validation") {
  const SSEProfile shifted = make_profile_from_sse({10.0, 5.0, 2.0}, 2, 100, 2);
  CHECK_THROWS_AS(krzanowski_lai(shifted), std::invalid_argument);
  const SSEProfile two = make_profile_from_sse({10.0, 5.0}, 1, 100, 2);
  CHECK_THROWS_AS(krzanowski_lai(two), std::invalid_argument);
}

TEST_CASE("pham: hand-derived weights and scores") {
  const CriterionResult result = pham(elbow_at_3());
  // d = 2: alpha_2 = 0.625, alpha_3 = 0.6875, alpha_4 = 0.7395833...
  CHECK(result.scores.at(2) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(result.scores.at(3) ==
        doctest::Approx(100.0 / (0.6875 * 500.0)).epsilon(1e-12));
  CHECK(result.scores.at(3) == doctest::Approx(0.2909091).epsilon(1e-6));
  CHECK(result.scores.at(4) == doctest::Approx(1.2169014).epsilon(1e-6));
  CHECK(result.selected_k == 3);
  CHECK(!result.unclustered);
  CHECK(result.name == "pham");
}

TEST_CASE("pham: near-flat curve reports unclustered at the argmin") {
  const SSEProfile flat =
      make_profile_from_sse({100.0, 99.0, 98.0, 97.0}, 1, 100, 2);
  const CriterionResult result = pham(flat);
  for (const auto& [k, score] : result.scores) CHECK(score >= 1.0);
  CHECK(result.selected_k == 4);  // f(k) still shrinks with k here
  CHECK(result.unclustered);
  CHECK(!result.note.empty());
}

TEST_CASE("pham: zero SSE truncates after the first exact fit") {
  const SSEProfile exact = make_profile_from_sse({8.0, 2.0, 0.0, 0.0}, 1, 10, 2);
  const CriterionResult result = pham(exact);
  CHECK(result.scores.at(2) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(result.scores.at(3) == 0.0);  // SSE_3 = 0 over a positive SSE_2
  CHECK(result.scores.count(4) == 0);  // SSE_3 = 0 stops the sweep
  CHECK(result.selected_k == 3);
  CHECK(result.unstable);
}

TEST_CASE("pham: threshold knob moves the unclustered verdict") {
  const SSEProfile profile = elbow_at_3();
  // f(3) ~ 0.29: a threshold below it turns the sharp elbow "unclustered".
  const CriterionResult strict = pham(profile, 0.2);
  CHECK(strict.selected_k == 3);
  CHECK(strict.unclustered);
}

TEST_CASE("pham: argument validation") {
  const SSEProfile shifted = make_profile_from_sse({10.0, 5.0}, 2, 100, 2);
  CHECK_THROWS_AS(pham(shifted), std::invalid_argument);
  const SSEProfile single = make_profile_from_sse({10.0}, 1, 100, 2);
  CHECK_THROWS_AS(pham(single), std::invalid_argument);
  const SSEProfile zero = make_profile_from_sse({0.0, 0.0}, 1, 100, 2);
  CHECK_THROWS_AS(pham(zero), std::invalid_argument);
}
