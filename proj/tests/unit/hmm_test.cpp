#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "episodeseq.hpp"
#include "oracles.hpp"

using namespace episodeseq;
using namespace episodeseq::hmm;
using Catch::Matchers::WithinAbs;

namespace {

EpisodePairModel model(const std::string& a, const std::string& b, std::size_t m, double eta) {
  const auto ab = default_alphabet(m);
  return EpisodePairModel(parse_serial_episode(a, ab), parse_serial_episode(b, ab), m, eta);
}

std::size_t id(const EpisodePairModel& m, const std::string& name) { return parse_state_name(m, name); }

}  // namespace

TEST_CASE("state space size") {
  CHECK(model("A -> B -> C", "D -> B -> E", 7, 0.2).state_count() == 37);
  CHECK(model("A -> B", "C -> D", 7, 0.2).state_count() == 17);
  CHECK(model("A -> B -> C -> D", "E -> F -> G -> A", 7, 0.2).state_count() == 65);
}

TEST_CASE("rows, initial distribution and emissions are stochastic") {
  for (const auto& m : {model("A -> B -> C", "D -> B -> E", 7, 0.3), model("A -> B", "A -> C", 5, 0.1),
                        model("A -> B", "B -> A", 5, 0.2), model("A", "A", 3, 0.2)}) {
    for (std::size_t s = 0; s < m.state_count(); ++s) {
      double row = 0.0;
      for (const auto& t : m.transitions(s)) row += t.probability;
      CHECK_THAT(row, WithinAbs(1.0, 1e-12));
      double b = 0.0;
      for (SymbolId o = 0; o < m.alphabet_size(); ++o) b += m.emission(s, o);
      CHECK_THAT(b, WithinAbs(1.0, 1e-12));
    }
    double pi = 0.0;
    for (const auto& t : m.initial()) pi += t.probability;
    CHECK_THAT(pi, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("episode states emit their symbol, noise states emit uniformly") {
  const auto m = model("A -> B -> C", "D -> B -> E", 7, 0.2);
  CHECK(m.emission(id(m, "S1[2,3]"), 1) == 1.0);
  CHECK(m.emission(id(m, "S2[2,3]"), 4) == 1.0);
  CHECK(m.emission(id(m, "S2[2,3]"), 1) == 0.0);
  CHECK_THAT(m.emission(id(m, "N1[1,1]"), 6), WithinAbs(1.0 / 7.0, 1e-15));
}

TEST_CASE("shared transitions sit exactly where the next symbols coincide") {
  const auto m = model("A -> B -> C", "D -> B -> E", 7, 0.2);
  const auto special = m.shared_transition_states();
  REQUIRE(special.size() == 2);
  CHECK(m.state_name(special[0]) == "S1[1,2]");
  CHECK(m.state_name(special[1]) == "S2[2,1]");
  CHECK_THAT(m.transition(id(m, "S1[1,2]"), id(m, "S1[2,3]")), WithinAbs(0.8, 1e-15));
  CHECK_THAT(m.transition(id(m, "S1[1,2]"), id(m, "N1[1,2]")), WithinAbs(0.2, 1e-15));
  CHECK_THAT(m.transition(id(m, "S2[2,1]"), id(m, "S2[3,2]")), WithinAbs(0.8, 1e-15));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    std::vector<SymbolId> a(6), b(6);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    a.resize(n);
    b.resize(n);
    const EpisodePairModel mm(SerialEpisode(a), SerialEpisode(b), 6, 0.2);
    std::set<std::string> want;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (a[i % n] == b[j % n]) {
          want.insert("S1[" + std::to_string(i) + "," + std::to_string(j % n + 1) + "]");
          want.insert("S2[" + std::to_string(i % n + 1) + "," + std::to_string(j) + "]");
        }
      }
    }
    std::set<std::string> got;
    for (auto s : mm.shared_transition_states()) got.insert(mm.state_name(s));
    CHECK(got == want);
  }
}

TEST_CASE("initial distribution depends on the first symbols") {
  const auto m = model("A -> B", "C -> D", 5, 0.2);
  CHECK_THAT(m.initial_probability(id(m, "N0[1,1]")), WithinAbs(0.2, 1e-15));
  CHECK_THAT(m.initial_probability(id(m, "S1[1,1]")), WithinAbs(0.4, 1e-15));
  CHECK_THAT(m.initial_probability(id(m, "S2[1,1]")), WithinAbs(0.4, 1e-15));
  const auto s = model("A -> B", "A -> D", 5, 0.2);
  CHECK_THAT(s.initial_probability(id(s, "S1[1,2]")), WithinAbs(0.8, 1e-15));
  CHECK(s.initial_probability(id(s, "S1[1,1]")) == 0.0);
}

TEST_CASE("a published sample path has non-zero probability") {
  const auto m = model("A -> B -> C", "D -> B -> E", 7, 0.2);
  const std::vector<std::string> states = {"N0[1,1]", "S1[1,1]", "S2[2,1]", "N2[2,1]", "S1[2,2]",
                                           "N1[2,2]", "S2[3,2]", "S2[3,3]", "N2[3,3]", "S1[3,1]"};
  const std::string symbols = "BADFBGBECC";
  std::vector<std::size_t> q;
  std::vector<SymbolId> o;
  for (std::size_t t = 0; t < states.size(); ++t) {
    q.push_back(id(m, states[t]));
    o.push_back(m.alphabet().id(std::string(1, symbols[t])));
  }
  const double p = oracle::path_probability(m, q, o);
  CHECK(p > 0.0);
  CHECK_THAT(joint_log_likelihood(m, o, q), WithinAbs(std::log(p), 1e-12));
}

TEST_CASE("invalid models are rejected") {
  const auto ab = default_alphabet(7);
  CHECK_THROWS_AS(EpisodePairModel(parse_serial_episode("A -> B", ab), parse_serial_episode("A -> B -> C", ab), 7, 0.2),
                  ValidationError);
  CHECK_THROWS_AS(model("A -> B", "C -> D", 7, 7.0 / 15.0), ValidationError);
  CHECK_THROWS_AS(model("A -> B", "C -> D", 7, 0.0), ValidationError);
  CHECK_THROWS_AS(EpisodePairModel(SerialEpisode({0, 9}), SerialEpisode({1, 2}), 7, 0.2), ValidationError);
}

TEST_CASE("simulation is deterministic and honours emissions") {
  const auto m = model("A -> B -> C", "D -> B -> E", 7, 0.2);
  const auto a = simulate(m, 10, 5);
  const auto b = simulate(m, 10, 5);
  CHECK(a.states == b.states);
  CHECK(a.symbols == b.symbols);
  for (std::size_t seed = 0; seed < 50; ++seed) {
    const auto t = simulate(m, 10, seed);
    for (std::size_t k = 0; k < t.length(); ++k)
      if (auto sym = m.emitted_symbol(t.states[k])) CHECK(*sym == t.symbols[k]);
    CHECK(t.counts.length() == 10);
    CHECK(decompose(m, t.states) == t.counts);
  }
}

TEST_CASE("noise share tracks eta") {
  const auto m = model("A -> B -> C", "D -> E -> F", 7, 0.01);
  const auto t = simulate(m, 10000, 3);
  const double share = static_cast<double>(t.counts.noise) / 10000.0;
  CHECK(std::abs(share - 0.01) <= 0.02);
}

TEST_CASE("closed forms") {
  const auto m = model("A -> B", "C -> D", 7, 0.4);
  CHECK_THAT(closed_form_case1(m, 4, 6), WithinAbs(4 * std::log(0.4 / 7) + 6 * std::log(0.3), 1e-12));
  CHECK_THAT(closed_form_case1(m, 4, 6), WithinAbs(-18.6726, 1e-4));

  const auto s = model("A -> B -> C", "D -> B -> E", 10, 0.3);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = simulate(s, 1 + seed % 150, seed);
    const double ll = joint_log_likelihood(s, t.symbols, t.states);
    CHECK_THAT(ll, WithinAbs(closed_form_counts(s, t.counts), 1e-9));
    CHECK_THAT(ll, WithinAbs(closed_form_events(s, t.counts.alpha_events + t.counts.beta_events, t.counts.shared,
                                                t.length()),
                             1e-9));
    const auto n = s.episode_size();
    if (t.counts.alpha_events % n == 0 && t.counts.beta_events % n == 0) {
      CHECK_THAT(ll, WithinAbs(closed_form_case2(s, t.counts.alpha_events / n, t.counts.beta_events / n,
                                                 t.counts.shared, t.length()),
                               1e-9));
    }
  }
  CHECK_THROWS_AS(closed_form_case2(s, 1, 1, 4, 10), ValidationError);
  CHECK_THROWS_AS(closed_form_case2(s, 5, 5, 0, 10), ValidationError);
  CHECK_THROWS_AS(joint_log_likelihood(s, std::vector<SymbolId>{0}, std::vector<std::size_t>{}), ValidationError);
}

TEST_CASE("impossible paths have zero likelihood") {
  const auto m = model("A -> B", "C -> D", 5, 0.2);
  const std::vector<std::size_t> q = {id(m, "S1[1,1]"), id(m, "S1[1,1]")};
  const std::vector<SymbolId> o = {0, 0};
  CHECK(std::isinf(joint_log_likelihood(m, o, q)));
  CHECK_THROWS_AS(decompose(m, q), ValidationError);
}

TEST_CASE("viterbi finds the most likely path") {
  const auto m = model("A -> B", "A -> C", 4, 0.2);
  const std::size_t ns = m.state_count();
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t len = 1 + trial % 4;
    std::vector<SymbolId> o(len);
    for (auto& x : o) x = std::uniform_int_distribution<SymbolId>(0, 3)(rng);
    double best = -1.0;
    std::vector<std::size_t> q(len, 0);
    while (true) {
      best = std::max(best, oracle::path_probability(m, q, o));
      std::size_t k = 0;
      while (k < len && ++q[k] == ns) q[k++] = 0;
      if (k == len) break;
    }
    const auto path = viterbi(m, o);
    CHECK_THAT(joint_log_likelihood(m, o, path), WithinAbs(std::log(best), 1e-9));
  }
}

TEST_CASE("overlap scores") {
  CHECK(overlap_score_1(3, 10, 4) == 26);
  CHECK(overlap_score_2(3, 10, 4) == 28.0);
  CHECK(overlap_score_1(3, 10, 0) == 30);
  CHECK(overlap_score_2(3, 10, 0) == 30.0);
}

TEST_CASE("pair comparison") {
  // Both factors above one.
  auto r = compare_pairs({3, 20, 10, 1}, {3, 20, 8, 4}, 0.2, 10);
  CHECK(r.log_ratio > 0.0);
  CHECK(r.preference == Preference::beta);

  r = compare_pairs({3, 20, 8, 1}, {3, 20, 8, 4}, 0.2, 10);
  CHECK(r.preference == Preference::beta);

  // x = N(f_beta - f_gamma) = 3, O_beta - O_gamma = 2x + 1.
  const double eta = 0.3, m = 10;
  r = compare_pairs({3, 20, 10, 8}, {3, 20, 9, 1}, eta, 10);
  const double expected = -(3 * std::log((1 - eta) * m / (8 * eta)) + 1 * std::log((1 - eta) * m / (4 * eta)));
  CHECK_THAT(r.log_ratio, WithinAbs(expected, 1e-12));
  CHECK(r.log_ratio < 0.0);
  CHECK(r.preference == Preference::gamma);

  CHECK(compare_pairs({3, 5, 5, 2}, {3, 5, 5, 2}, 0.2, 10).preference == Preference::tie);
  CHECK_THROWS_AS(compare_pairs({3, 5, 5, 0}, {2, 5, 5, 0}, 0.2, 10), ValidationError);
  CHECK_THROWS_AS(compare_pairs({3, 5, 1, 4}, {3, 5, 5, 0}, 0.2, 10), ValidationError);
  CHECK_THROWS_AS(compare_pairs({3, 5, 5, 0}, {3, 5, 5, 0}, 0.6, 10), ValidationError);
}

TEST_CASE("model dump lists every state and transition") {
  const auto m = model("A -> B", "C -> D", 5, 0.2);
  const auto j = model_to_json(m);
  CHECK(j["states"].size() == m.state_count());
  std::size_t edges = 0;
  for (std::size_t s = 0; s < m.state_count(); ++s) edges += m.transitions(s).size();
  CHECK(j["transitions"].size() == edges);
  CHECK(j["alpha"] == "A -> B");
}
