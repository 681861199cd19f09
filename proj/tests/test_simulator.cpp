#include <doctest.h>

#include <cmath>

#include "covert/catching.hpp"
#include "covert/detection.hpp"
#include "covert/simulator.hpp"
#include "covert/splitting.hpp"
#include "oracles.hpp"

using namespace covert;
using namespace covert::sim;
using geometry::RepresentativeMode;

namespace {

constexpr double kRate = 14.36;

double threshold(const ScenarioConfig& c, int l) {
  return detection::solve_threshold(l, c.delta, to_linear(c).sigma_w2_w);
}

}  // namespace

TEST_CASE("Alice who always sees Willie always postpones") {
  ScenarioConfig c = table1_defaults();
  c.r_a_proj = std::sqrt(2.0) * c.u;
  c.r_w_proj = 1500.0;
  const SlotSimulator slot(c, 10, threshold(c, 10), kRate);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) CHECK(slot.simulate(600, rng).kind == SlotKind::kPostponed);
}

TEST_CASE("zero threshold isolates the chase kinematics") {
  const ScenarioConfig c = table1_defaults();
  for (int chunk : {40, 120, 600}) {
    const SlotSimulator slot(c, 10, 0.0, kRate);
    Rng rng(chunk);
    for (int i = 0; i < 20000; ++i) {
      const SlotOutcome o = slot.simulate(chunk, rng);
      if (o.kind == SlotKind::kPostponed) {
        CHECK(o.d_proj <= c.r_a_proj);
        continue;
      }
      CHECK(o.d_proj > c.r_a_proj);
      REQUIRE(o.first_detection_symbol.has_value());
      CHECK(*o.first_detection_symbol == 10);
      const double arrival = 10 + std::max(0.0, o.d_proj - c.r_w_proj) * kRate / c.v_w;
      CHECK((o.kind == SlotKind::kCaught) == (arrival < chunk));
    }
  }
}

TEST_CASE("slot outcome invariants at the default scenario") {
  const ScenarioConfig c = table1_defaults();
  for (bool phase : {false, true}) {
    SimOptions opt;
    opt.random_phase = phase;
    const auto outcomes = sample_slots(c, 10, 600, kRate, 5000, 9, opt);
    for (const auto& o : outcomes) {
      CHECK((o.kind == SlotKind::kPostponed) == (o.d_proj <= c.r_a_proj));
      if (o.kind == SlotKind::kCaught || o.kind == SlotKind::kDetectedNotCaught) {
        CHECK(o.first_detection_symbol.has_value());
      }
      if (o.first_detection_symbol) CHECK(*o.first_detection_symbol <= 600);
    }
  }
}

TEST_CASE("window consuming the chunk never catches") {
  const ScenarioConfig c = table1_defaults();
  const ProportionEstimate e = estimate_catch(c, 600, 600, kRate, 20000, 1);
  CHECK(e.successes == 0);
  CHECK(e.p_hat == 0.0);
  CHECK(catching::catch_probability(600, c, kRate, RepresentativeMode::kPaperLiteral).p_ca == 0.0);
}

TEST_CASE("Wilson interval") {
  const ProportionEstimate e = wilson_interval(4850, 10000);
  CHECK(e.p_hat == 0.485);
  CHECK(e.lower < 0.485);
  CHECK(e.upper > 0.485);
  CHECK(e.ci_halfwidth == doctest::Approx(kZ99 * std::sqrt(0.485 * 0.515 / 10000)).epsilon(1e-3));
  const ProportionEstimate zero = wilson_interval(0, 100);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper > 0.0);
  CHECK_THROWS(wilson_interval(1, 0));
}

TEST_CASE("catch estimate closes on the analytic value at the default scenario") {
  const ScenarioConfig c = table1_defaults();
  const ProportionEstimate e = estimate_catch(c, 10, 600, kRate, 100000, 7);
  CHECK(e.ci_halfwidth <= 0.005);
  CHECK(e.contains(catching::catch_probability(10, c, kRate, RepresentativeMode::kConditionalMean).p_ca));
  CHECK(e.contains(catching::averaged_catch_probability(10, 600, c, kRate)));
  const ProportionEstimate chunk = estimate_catch(c, 10, 120, kRate, 100000, 8);
  CHECK(chunk.contains(splitting::chunk_catch_probability(5, 10, c, kRate, RepresentativeMode::kConditionalMean)));
  CHECK_THROWS(estimate_catch(c, 10, 600, kRate, 99, 7));
}

TEST_CASE("random phase and per-symbol flags keep the same scale") {
  const ScenarioConfig c = table1_defaults();
  const double analytic = catching::catch_probability(10, c, kRate, RepresentativeMode::kConditionalMean).p_ca;
  SimOptions per_symbol;
  per_symbol.per_symbol = true;
  CHECK(estimate_catch(c, 10, 600, kRate, 40000, 2, per_symbol).contains(analytic));
  SimOptions phase;
  phase.random_phase = true;
  CHECK(std::abs(estimate_catch(c, 10, 600, kRate, 40000, 2, phase).p_hat - analytic) < 0.03);
}

TEST_CASE("postponement frequency and the distance law of played slots") {
  const ScenarioConfig c = table1_defaults();
  const geometry::DistanceLaw law(c.u);
  const auto outcomes = sample_slots(c, 10, 600, kRate, 100000, 21);
  std::vector<double> played;
  std::size_t postponed = 0;
  for (const auto& o : outcomes) {
    if (o.kind == SlotKind::kPostponed) {
      ++postponed;
    } else {
      played.push_back(o.d_proj);
    }
  }
  const double p = law.cdf(c.r_a_proj);
  CHECK(std::abs(static_cast<double>(postponed) / outcomes.size() - p) < 3.0 * oracle::binomial_se(p, outcomes.size()));
  const auto truncated = [&](double d) { return (law.cdf(d) - p) / (1.0 - p); };
  CHECK(oracle::ks_statistic(played, truncated) < 0.01);

  const SlotTally t = tally_slots(c, 10, 600, kRate, 100000, 21);
  CHECK(t.postponed == postponed);
  CHECK(t.trials() == 100000);
}

TEST_CASE("estimates do not depend on the worker count") {
  const ScenarioConfig c = table1_defaults();
  SimOptions one, three;
  one.threads = 1;
  three.threads = 3;
  const auto a = estimate_catch(c, 7, 600, kRate, 3000, 5, one);
  const auto b = estimate_catch(c, 7, 600, kRate, 3000, 5, three);
  CHECK(a.successes == b.successes);
  CHECK(estimate_overall_catch(c, 4, 10, kRate, 2000, 5, one).successes ==
        estimate_overall_catch(c, 4, 10, kRate, 2000, 5, three).successes);
  const auto x = run_case1(c, 3, 10, kRate, 300, 5, one);
  const auto y = run_case1(c, 3, 10, kRate, 300, 5, three);
  CHECK(x.mean_covert == y.mean_covert);
  CHECK(x.std_dev == y.std_dev);
}

TEST_CASE("chunk sizes") {
  CHECK(chunk_sizes(600, 1) == std::vector<int>{600});
  const auto s = chunk_sizes(600, 7);
  CHECK(s.size() == 7);
  CHECK(s.front() == 85);
  CHECK(s.back() == 90);
  int total = 0;
  for (int x : s) total += x;
  CHECK(total == 600);
  CHECK_THROWS(chunk_sizes(5, 6));
  CHECK_THROWS(chunk_sizes(5, 0));
}

TEST_CASE("overall catch estimate closes on the analytic value") {
  const ScenarioConfig c = table1_defaults();
  for (int n : {1, 3, 5}) {
    const ProportionEstimate e = estimate_overall_catch(c, n, 10, kRate, 50000, 31);
    const auto plan = splitting::overall_catch_probability(n, 10, c, kRate, RepresentativeMode::kConditionalMean);
    CAPTURE(n);
    CHECK(e.contains(plan.p_ov));
  }
}

TEST_CASE("case studies without catches hit the throughput ceiling") {
  // A window as long as the message leaves no time to chase.
  const ScenarioConfig c = table1_defaults();
  const auto one = run_case1(c, 1, 600, kRate, 500, 4);
  const auto two = run_case2(c, 1, 600, kRate, 500, 4);
  CHECK(one.mean_caught == 0.0);
  CHECK(one.mean_covert == two.mean_covert);
  CHECK(one.mean_slots_used == two.mean_slots_used);

  const SlotSimulator slot(c, 600, threshold(c, 600), kRate);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const CaseResult r = run_case_trial(CaseKind::kStopOnCatch, slot, c, 1, 4, t);
    CHECK(r.covert_messages <= r.arrivals);
    CHECK(r.slots_used <= c.beta_slots);
    CHECK(r.covert_messages <= r.slots_used);
  }
  // With three chunks per message at most beta/3 messages fit.
  for (std::uint64_t t = 0; t < 200; ++t) {
    const CaseResult r = run_case_trial(CaseKind::kVoidMessage, slot, c, 3, 4, t);
    CHECK(r.covert_messages <= c.beta_slots / 3);
  }
}

TEST_CASE("case 2 delivers at least as much as case 1") {
  ScenarioConfig c = table1_defaults();
  c.r_w_proj = 120.0;
  for (int n : {1, 4}) {
    const auto one = run_case1(c, n, 10, kRate, 2000, 6);
    const auto two = run_case2(c, n, 10, kRate, 2000, 6);
    CHECK(two.mean_covert + two.ci_halfwidth >= one.mean_covert - one.ci_halfwidth);
    CHECK(one.mean_caught <= 1.0);
  }
}
