#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <tuple>
#include <vector>

#include "episodeseq/events.hpp"
#include "episodeseq/occurrences.hpp"
#include "episodeseq/parallel.hpp"
#include "episodeseq/score.hpp"

namespace episodeseq {

struct Candidate {
  FixedIntervalEpisode episode;
  OccurrenceList occurrences;  // already filtered for the active mode
  std::size_t frequency = 0;
  std::int64_t score = 0;
};

struct CandidateOptions {
  Time max_gap = 5;
  FrequencyMode mode = FrequencyMode::non_overlapped;
  // Nodes with frequency <= prune_frequency are neither visited nor extended.
  // At 2 no pruned branch can hold a positive-score episode; 0 enumerates
  // every episode with at least one occurrence.
  std::size_t prune_frequency = 2;
  unsigned threads = 0;
};

struct CandidateSet {
  std::vector<Candidate> episodes;  // sorted by episode, no duplicates
  Time max_gap = 0;
  FrequencyMode mode = FrequencyMode::non_overlapped;
};

namespace detail {

// Path-best preference: higher score, then more nodes, then the smaller
// canonical string.
inline bool better_on_path(const Candidate& a, const Candidate& b, const Alphabet& alphabet) {
  if (a.score != b.score) return a.score > b.score;
  if (a.episode.size() != b.episode.size()) return a.episode.size() > b.episode.size();
  return format_episode(a.episode, alphabet) < format_episode(b.episode, alphabet);
}

class LatticeSearch {
 public:
  LatticeSearch(const EventDataset& data, const CandidateOptions& opts) : data_(data), opts_(opts) {}

  std::vector<Candidate> run_root(SymbolId root, const DatasetIndex& index) {
    emitted_.clear();
    out_.clear();
    path_.clear();
    OccurrenceList distinct{FixedIntervalEpisode::single(root),
                            std::vector<std::vector<Time>>(data_.sequence_count())};
    for (std::uint32_t s = 0; s < data_.sequence_count(); ++s) distinct.starts[s] = index.times(s, root);
    if (auto node = make_node(std::move(distinct))) visit(std::move(*node));
    return std::move(out_);
  }

 private:
  struct Node {
    OccurrenceList distinct;
    Candidate candidate;
  };

  std::optional<Node> make_node(OccurrenceList distinct) const {
    auto filtered = apply_mode(distinct, opts_.mode);
    const std::size_t f = filtered.frequency();
    if (f <= opts_.prune_frequency || f == 0) return std::nullopt;
    Candidate c{distinct.episode, std::move(filtered), f, score(distinct.episode.size(), f)};
    return Node{std::move(distinct), std::move(c)};
  }

  std::vector<Node> children(const Node& node) const {
    const auto& ep = node.distinct.episode;
    const Time end_offset = ep.span();
    // (symbol, gap, seq, start) for every extension event in the window.
    std::vector<std::tuple<SymbolId, Time, std::uint32_t, Time>> ext;
    for (std::uint32_t s = 0; s < node.distinct.starts.size(); ++s) {
      auto seq = data_.sequence(s);
      for (Time t : node.distinct.starts[s]) {
        const Time end = t + end_offset;
        auto it = std::upper_bound(seq.begin(), seq.end(), end,
                                   [](Time v, const Event& e) { return v < e.time; });
        for (; it != seq.end() && it->time <= end + opts_.max_gap; ++it) {
          if (!ep.contains(it->type)) ext.emplace_back(it->type, it->time - end, s, t);
        }
      }
    }
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());

    std::vector<Node> out;
    for (std::size_t lo = 0; lo < ext.size();) {
      std::size_t hi = lo;
      const auto sym = std::get<0>(ext[lo]);
      const auto gap = std::get<1>(ext[lo]);
      while (hi < ext.size() && std::get<0>(ext[hi]) == sym && std::get<1>(ext[hi]) == gap) ++hi;
      // The mode frequency never exceeds the distinct count.
      if (hi - lo > opts_.prune_frequency) {
        OccurrenceList child{ep.extended(sym, gap), std::vector<std::vector<Time>>(data_.sequence_count())};
        for (std::size_t k = lo; k < hi; ++k) child.starts[std::get<2>(ext[k])].push_back(std::get<3>(ext[k]));
        if (auto n = make_node(std::move(child))) out.push_back(std::move(*n));
      }
      lo = hi;
    }
    return out;
  }

  void visit(Node node) {
    std::size_t best = path_.size();
    if (!path_.empty() && !better_on_path(node.candidate, path_[best_.back()], data_.alphabet())) {
      best = best_.back();
    }
    auto kids = children(node);
    path_.push_back(node.candidate);
    best_.push_back(best);
    if (kids.empty()) {
      const auto& c = path_[best];
      if (emitted_.insert(c.episode).second) out_.push_back(c);
    } else {
      node.distinct = {};  // drop before descending
      for (auto& k : kids) visit(std::move(k));
    }
    path_.pop_back();
    best_.pop_back();
  }

  const EventDataset& data_;
  const CandidateOptions& opts_;
  std::vector<Candidate> path_;
  std::vector<std::size_t> best_;  // index into path_ of the best node so far
  std::set<FixedIntervalEpisode> emitted_;
  std::vector<Candidate> out_;
};

}  // namespace detail

/// Depth-first search of the fixed-interval episode lattice. Each node is
/// extended by appending an unused symbol at a gap in [1, max_gap]; one
/// candidate is emitted per root-to-leaf path: the best-scoring episode on it.
inline CandidateSet generate_candidates(const EventDataset& data, const CandidateOptions& opts) {
  if (opts.max_gap < 1) throw ValidationError("max gap must be >= 1");
  CandidateSet result{{}, opts.max_gap, opts.mode};
  const auto roots = data.present_symbols();
  if (roots.empty()) return result;

  const DatasetIndex index(data);
  std::vector<std::vector<Candidate>> per_root(roots.size());
  parallel_for(roots.size(), worker_count(opts.threads), [&](std::size_t r) {
    detail::LatticeSearch search(data, opts);
    per_root[r] = search.run_root(roots[r], index);
  });
  for (auto& v : per_root)
    for (auto& c : v) result.episodes.push_back(std::move(c));
  std::sort(result.episodes.begin(), result.episodes.end(),
            [](const Candidate& a, const Candidate& b) { return a.episode < b.episode; });
  return result;
}

// `<episode>\t<f>\t<score>` per candidate.
inline void write_candidate_dump(std::ostream& out, const CandidateSet& set, const Alphabet& alphabet) {
  for (const auto& c : set.episodes) {
    out << format_episode(c.episode, alphabet) << '\t' << c.frequency << '\t' << c.score << '\n';
  }
}

}  // namespace episodeseq
