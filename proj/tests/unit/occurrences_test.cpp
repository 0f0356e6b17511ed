#include <catch_amalgamated.hpp>

#include <random>

#include "episodeseq.hpp"
#include "oracles.hpp"

using namespace episodeseq;

namespace {

EventDataset sequence1() { return load_events(std::string(EPISODESEQ_DATA_DIR) + "/sequence1.tsv"); }

std::vector<Time> starts_of(const OccurrenceList& occ) { return occ.starts.at(0); }

}  // namespace

TEST_CASE("distinct starts on sequence (1)") {
  const auto d = sequence1();
  const auto& ab = d.alphabet();
  CHECK(starts_of(find_distinct_starts(d, parse_episode("A -2-> B -1-> C", ab))) == std::vector<Time>{2, 4});
  CHECK(starts_of(find_distinct_starts(d, parse_episode("D -2-> E -2-> C", ab))) == std::vector<Time>{1, 5});
  CHECK(starts_of(find_distinct_starts(d, parse_episode("C", ab))) == std::vector<Time>{3, 5, 7, 8, 9});
}

TEST_CASE("non-overlapped filter") {
  const auto d = sequence1();
  const auto ep = parse_episode("A -2-> B -1-> C", d.alphabet());
  CHECK(starts_of(find_no_occurrences(find_distinct_starts(d, ep))) == std::vector<Time>{2});

  OccurrenceList empty{ep, {{}}};
  CHECK(find_no_occurrences(empty).frequency() == 0);

  const auto ep4 = FixedIntervalEpisode({0, 1}, {4});
  OccurrenceList occ{ep4, {{1, 5, 10}}};
  CHECK(starts_of(find_no_occurrences(occ)) == std::vector<Time>{1, 10});
}

TEST_CASE("distinct starts agree with a linear-scan oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_dataset(rng, {25, 4, 3, 15});
    const auto ep = oracle::random_episode(rng, 4, 3, 3);
    const auto got = find_distinct_starts(d, ep);
    for (std::size_t s = 0; s < d.sequence_count(); ++s) {
      CHECK(got.starts[s] == oracle::distinct_starts(d.sequence(s), ep));
    }
  }
}

TEST_CASE("greedy filter keeps a maximum non-overlapped set") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_dataset(rng, {30, 5, 1, 20});
    const auto ep = oracle::random_episode(rng, 5, 3, 3);
    const auto no = find_no_occurrences(find_distinct_starts(d, ep));
    CHECK(no.frequency() == oracle::max_no_fixed(d.sequence(0), ep));
    // Kept starts are pairwise non-overlapped.
    const auto& k = no.starts[0];
    for (std::size_t a = 1; a < k.size(); ++a) CHECK(k[a] > k[a - 1] + ep.span());
  }
}

TEST_CASE("general non-overlapped count") {
  const auto d = sequence1();
  CHECK(count_no_general(d, parse_serial_episode("A -> B -> C", d.alphabet())) == 2);

  auto ab = std::make_shared<const Alphabet>(std::vector<std::string>{"A", "B"});
  const SerialEpisode ab_ep({0, 1});
  CHECK(count_no_general(EventDataset(ab, {{}}), ab_ep) == 0);
  CHECK(count_no_general(EventDataset(ab, {{{0, 1}, {1, 2}, {0, 3}, {1, 4}}}), ab_ep) == 2);
  // Same timestamp cannot serve two consecutive nodes.
  CHECK(count_no_general(EventDataset(ab, {{{0, 1}, {1, 1}}}), ab_ep) == 0);
}

TEST_CASE("general count agrees with exhaustive occurrence search") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = oracle::random_dataset(rng, {12, 4, 2, 8});
    const auto ep = oracle::random_serial(rng, 4, 4);
    CHECK(count_no_general(d, ep) == oracle::max_no_serial(d, ep));
  }
}

TEST_CASE("covers and overlap on the sequence-1 episodes") {
  const auto d = sequence1();
  const auto& ab = d.alphabet();
  const auto c1 = cover(d, find_distinct_starts(d, parse_episode("A -2-> B -1-> C", ab)));
  const auto c2 = cover(d, find_distinct_starts(d, parse_episode("D -2-> E -2-> C", ab)));
  CHECK(c1.size() == 6);
  CHECK(overlap_count(c1, c2) == 1);
  CHECK(overlap_count(c1, c1) == 6);

  const auto cc = cover(d, OccurrenceList{parse_episode("C", ab), {{3, 8}}});
  CHECK(cc.size() == 2);
  CHECK(overlap_count(cc, c2) == 0);
  CHECK(cover(d, OccurrenceList{parse_episode("C", ab), {{}}}).empty());
  CHECK_THROWS_AS(cover(d, OccurrenceList{parse_episode("C", ab), {{4}}}), IntegrityError);
}

TEST_CASE("duplicate events bind to the lowest index") {
  auto ab = std::make_shared<const Alphabet>(std::vector<std::string>{"A", "B"});
  EventDataset d(ab, {{{0, 1}, {0, 1}, {1, 2}}});
  const auto c = cover(d, find_distinct_starts(d, FixedIntervalEpisode({0, 1}, {1})));
  REQUIRE(c.size() == 2);
  CHECK(c.positions[0].index == 0);
}
