#include "covert/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "covert/channel.hpp"

namespace covert::sim {

const char* slot_kind_name(SlotKind kind) {
  switch (kind) {
    case SlotKind::kPostponed: return "postponed";
    case SlotKind::kUndetected: return "undetected";
    case SlotKind::kDetectedNotCaught: return "detected_not_caught";
    case SlotKind::kCaught: return "caught";
  }
  return "?";
}

SlotSimulator::SlotSimulator(const ScenarioConfig& cfg, int l, double gamma_w, double r_bar,
                             SimOptions options)
    : cfg_(cfg), lin_(to_linear(cfg)), l_(l), gamma_w_(gamma_w), r_bar_(r_bar), options_(options) {
  if (l < 1) throw std::domain_error("SlotSimulator: window must be at least one symbol");
  if (!(gamma_w >= 0.0)) throw std::domain_error("SlotSimulator: threshold must be non-negative");
  if (!(r_bar > 0.0)) throw std::domain_error("SlotSimulator: average rate must be positive");
}

SlotOutcome SlotSimulator::simulate(int chunk_symbols, Rng& rng) const {
  if (chunk_symbols < 1) throw std::domain_error("simulate_slot: chunk must hold at least one symbol");

  std::uniform_real_distribution<double> coord(0.0, cfg_.u);
  const double ax = coord(rng);
  const double ay = coord(rng);
  const double wx = coord(rng);
  const double wy = coord(rng);

  SlotOutcome out;
  out.d_proj = std::hypot(ax - wx, ay - wy);
  if (out.d_proj <= cfg_.r_a_proj) {
    out.kind = SlotKind::kPostponed;
    return out;
  }

  const double slant = geometry::slant_distance(out.d_proj, cfg_.h_w);
  const double g_aw = channel::nlos_gain(lin_.g_a, lin_.g_w, lin_.eta, slant, cfg_.alpha_nlos);
  const double power = g_aw * g_aw * lin_.p_a_w + lin_.sigma_w2_w;

  const int period = l_ + cfg_.l_s;
  int start = 0;
  if (options_.random_phase) {
    std::uniform_int_distribution<int> phase(0, period - 1);
    start = phase(rng);
  }

  for (; start + l_ <= chunk_symbols; start += period) {
    const double stat = options_.per_symbol
                            ? detection::sample_window_statistic_per_symbol(l_, power, rng)
                            : detection::sample_window_statistic(l_, power, rng);
    if (stat > gamma_w_) {
      out.first_detection_symbol = start + l_;
      break;
    }
  }
  if (!out.first_detection_symbol) {
    out.kind = SlotKind::kUndetected;
    return out;
  }

  // Willie tracks perfectly once he has detected; he flies the projected
  // distance down to r_w' at v_w and must arrive before the chunk ends.
  const double chase_symbols = std::max(0.0, out.d_proj - cfg_.r_w_proj) * r_bar_ / cfg_.v_w;
  out.kind = *out.first_detection_symbol + chase_symbols < chunk_symbols
                 ? SlotKind::kCaught
                 : SlotKind::kDetectedNotCaught;
  return out;
}

SlotOutcome simulate_slot(const ScenarioConfig& cfg, int l, double gamma_w, int chunk_symbols,
                          double r_bar, Rng& rng, const SimOptions& options) {
  return SlotSimulator(cfg, l, gamma_w, r_bar, options).simulate(chunk_symbols, rng);
}

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  ProportionEstimate e;
  e.successes = successes;
  e.trials = trials;
  const double n = static_cast<double>(trials);
  e.p_hat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (e.p_hat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n + z2 / (4.0 * n * n)) / denom;
  e.lower = std::max(0.0, center - half);
  e.upper = std::min(1.0, center + half);
  e.ci_halfwidth = 0.5 * (e.upper - e.lower);
  return e;
}

namespace {

SlotSimulator calibrated_slot(const ScenarioConfig& cfg, int l, double r_bar,
                              const SimOptions& options) {
  const double gamma_w = detection::solve_threshold(l, cfg.delta, to_linear(cfg).sigma_w2_w);
  return SlotSimulator(cfg, l, gamma_w, r_bar, options);
}

}  // namespace

std::vector<SlotOutcome> sample_slots(const ScenarioConfig& cfg, int l, int chunk_symbols,
                                      double r_bar, std::uint64_t trials, std::uint64_t seed,
                                      const SimOptions& options) {
  const SlotSimulator slot = calibrated_slot(cfg, l, r_bar, options);
  std::vector<SlotOutcome> out(trials);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    Rng rng = substream(seed, StreamTag::kSlot, i);
    out[i] = slot.simulate(chunk_symbols, rng);
  });
  return out;
}

SlotTally tally_slots(const ScenarioConfig& cfg, int l, int chunk_symbols, double r_bar,
                      std::uint64_t trials, std::uint64_t seed, const SimOptions& options) {
  const SlotSimulator slot = calibrated_slot(cfg, l, r_bar, options);
  std::vector<SlotKind> kinds(trials);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    Rng rng = substream(seed, StreamTag::kSlot, i);
    kinds[i] = slot.simulate(chunk_symbols, rng).kind;
  });
  SlotTally t;
  for (SlotKind k : kinds) {
    switch (k) {
      case SlotKind::kPostponed: ++t.postponed; break;
      case SlotKind::kUndetected: ++t.undetected; break;
      case SlotKind::kDetectedNotCaught: ++t.detected_not_caught; break;
      case SlotKind::kCaught: ++t.caught; break;
    }
  }
  return t;
}

ProportionEstimate estimate_catch(const ScenarioConfig& cfg, int l, int chunk_symbols,
                                  double r_bar, std::uint64_t trials, std::uint64_t seed,
                                  const SimOptions& options) {
  if (trials < 100) throw std::invalid_argument("estimate_catch: needs at least 100 trials");
  const SlotTally t = tally_slots(cfg, l, chunk_symbols, r_bar, trials, seed, options);
  ProportionEstimate e = wilson_interval(t.caught, t.trials());
  e.seed = seed;
  return e;
}

std::vector<int> chunk_sizes(int m_symbols, int n) {
  if (n < 1 || n > m_symbols) throw std::domain_error("chunk_sizes: need 1 <= n <= message length");
  std::vector<int> sizes(n, m_symbols / n);
  sizes.back() = m_symbols - (n - 1) * (m_symbols / n);
  return sizes;
}

ProportionEstimate estimate_overall_catch(const ScenarioConfig& cfg, int n, int l, double r_bar,
                                          std::uint64_t trials, std::uint64_t seed,
                                          const SimOptions& options) {
  if (trials < 100) throw std::invalid_argument("estimate_overall_catch: needs at least 100 trials");
  const SlotSimulator slot = calibrated_slot(cfg, l, r_bar, options);
  const std::vector<int> sizes = chunk_sizes(cfg.m_bits, n);
  // Bound on slots per message; only reachable when nearly every slot is postponed.
  constexpr int kMaxSlots = 1'000'000;

  std::vector<unsigned char> caught(trials, 0);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    Rng rng = substream(seed, StreamTag::kMessage, i);
    std::size_t chunk = 0;
    for (int s = 0; s < kMaxSlots && chunk < sizes.size(); ++s) {
      const SlotOutcome o = slot.simulate(sizes[chunk], rng);
      if (o.kind == SlotKind::kPostponed) continue;
      if (o.kind == SlotKind::kCaught) {
        caught[i] = 1;
        return;
      }
      ++chunk;
    }
  });
  std::uint64_t hits = 0;
  for (unsigned char c : caught) hits += c;
  ProportionEstimate e = wilson_interval(hits, trials);
  e.seed = seed;
  return e;
}

CaseResult run_case_trial(CaseKind kind, const SlotSimulator& slot, const ScenarioConfig& cfg,
                          int n, std::uint64_t seed, std::uint64_t trial) {
  const std::vector<int> sizes = chunk_sizes(cfg.m_bits, n);
  Rng rng = substream(seed, StreamTag::kCase, trial);
  std::poisson_distribution<int> arrivals(cfg.lambda_per_min * cfg.t_c_minutes);

  CaseResult r;
  r.seed = seed;
  int queued = 0;  // messages waiting, head included
  std::size_t chunk = 0;
  for (int s = 0; s < cfg.beta_slots; ++s) {
    const int fresh = arrivals(rng);
    queued += fresh;
    r.arrivals += fresh;
    if (queued == 0) continue;

    ++r.slots_used;
    const SlotOutcome o = slot.simulate(sizes[chunk], rng);
    if (o.kind == SlotKind::kPostponed) continue;
    if (o.kind == SlotKind::kCaught) {
      ++r.caught_events;
      if (kind == CaseKind::kStopOnCatch) break;
      // The caught message is abandoned (or restarted under retry_caught).
      chunk = 0;
      if (!slot.options().retry_caught) --queued;
      continue;
    }
    if (++chunk == sizes.size()) {
      ++r.covert_messages;
      --queued;
      chunk = 0;
    }
  }
  return r;
}

CaseStats run_case(CaseKind kind, const ScenarioConfig& cfg, int n, int l, double r_bar,
                   std::uint64_t trials, std::uint64_t seed, const SimOptions& options) {
  if (trials < 1) throw std::invalid_argument("run_case: needs at least one trial");
  const SlotSimulator slot = calibrated_slot(cfg, l, r_bar, options);
  std::vector<CaseResult> results(trials);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    results[i] = run_case_trial(kind, slot, cfg, n, seed, i);
  });

  std::vector<double> covert(trials), caught(trials), used(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    covert[i] = results[i].covert_messages;
    caught[i] = results[i].caught_events;
    used[i] = results[i].slots_used;
  }
  const double count = static_cast<double>(trials);
  CaseStats st;
  st.trials = trials;
  st.seed = seed;
  st.mean_covert = pairwise_sum(covert) / count;
  st.mean_caught = pairwise_sum(caught) / count;
  st.mean_slots_used = pairwise_sum(used) / count;
  if (trials > 1) {
    for (double& c : covert) c = (c - st.mean_covert) * (c - st.mean_covert);
    st.std_dev = std::sqrt(pairwise_sum(covert) / (count - 1.0));
    st.ci_halfwidth = kZ99 * st.std_dev / std::sqrt(count);
  }
  return st;
}

}  // namespace covert::sim
