#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"

namespace episodeseq {

enum class FrequencyMode { distinct, non_overlapped };

inline std::string_view to_string(FrequencyMode mode) {
  return mode == FrequencyMode::distinct ? "distinct" : "non-overlapped";
}

inline FrequencyMode parse_frequency_mode(std::string_view text) {
  if (text == "distinct") return FrequencyMode::distinct;
  if (text == "non-overlapped" || text == "no") return FrequencyMode::non_overlapped;
  throw ParseError("unknown frequency mode '" + std::string(text) + "'");
}

/// Start times of occurrences of one episode, one sorted list per sequence.
struct OccurrenceList {
  FixedIntervalEpisode episode;
  std::vector<std::vector<Time>> starts;

  std::size_t frequency() const {
    std::size_t f = 0;
    for (const auto& s : starts) f += s.size();
    return f;
  }
};

/// Lookup of events by (sequence, type, time). For duplicated (type, time)
/// pairs the lowest event index wins.
class DatasetIndex {
 public:
  explicit DatasetIndex(const EventDataset& data) : data_(&data), entries_(data.sequence_count()) {
    for (std::uint32_t s = 0; s < data.sequence_count(); ++s) {
      auto seq = data.sequence(s);
      auto& out = entries_[s];
      out.reserve(seq.size());
      for (std::uint32_t i = 0; i < seq.size(); ++i) out.push_back({seq[i].type, seq[i].time, i});
      std::sort(out.begin(), out.end());
    }
  }

  const EventDataset& data() const { return *data_; }

  std::optional<std::uint32_t> find(std::uint32_t seq, SymbolId type, Time time) const {
    const auto& v = entries_[seq];
    auto it = std::lower_bound(v.begin(), v.end(), Entry{type, time, 0});
    if (it == v.end() || it->type != type || it->time != time) return std::nullopt;
    return it->index;
  }

  bool contains(std::uint32_t seq, SymbolId type, Time time) const {
    return find(seq, type, time).has_value();
  }

  /// Sorted, duplicate-free times at which `type` occurs in `seq`.
  std::vector<Time> times(std::uint32_t seq, SymbolId type) const {
    const auto& v = entries_[seq];
    auto lo = std::lower_bound(v.begin(), v.end(), Entry{type, std::numeric_limits<Time>::min(), 0});
    std::vector<Time> out;
    for (auto it = lo; it != v.end() && it->type == type; ++it) {
      if (out.empty() || out.back() != it->time) out.push_back(it->time);
    }
    return out;
  }

 private:
  struct Entry {
    SymbolId type;
    Time time;
    std::uint32_t index;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  const EventDataset* data_;
  std::vector<std::vector<Entry>> entries_;
};

/// Every start time t (per sequence) at which all nodes of `ep` find an event
/// of the right type at t + offset. For injective episodes these are exactly
/// the distinct occurrences.
inline OccurrenceList find_distinct_starts(const DatasetIndex& index, const FixedIntervalEpisode& ep) {
  const auto& data = index.data();
  OccurrenceList out{ep, std::vector<std::vector<Time>>(data.sequence_count())};
  std::vector<Time> offsets(ep.size());
  for (std::size_t i = 0; i < ep.size(); ++i) offsets[i] = ep.offset(i);
  for (std::uint32_t s = 0; s < data.sequence_count(); ++s) {
    for (Time t : index.times(s, ep.symbol(0))) {
      bool ok = true;
      for (std::size_t i = 1; i < ep.size() && ok; ++i) {
        ok = index.contains(s, ep.symbol(i), t + offsets[i]);
      }
      if (ok) out.starts[s].push_back(t);
    }
  }
  return out;
}

inline OccurrenceList find_distinct_starts(const EventDataset& data, const FixedIntervalEpisode& ep) {
  return find_distinct_starts(DatasetIndex(data), ep);
}

/// Greedy left-to-right filter keeping a maximal set of non-overlapped
/// occurrences: a start is kept when it lies strictly after the end of the
/// previously kept occurrence.
inline OccurrenceList find_no_occurrences(const OccurrenceList& occ) {
  const Time span = occ.episode.span();
  OccurrenceList out{occ.episode, std::vector<std::vector<Time>>(occ.starts.size())};
  for (std::size_t s = 0; s < occ.starts.size(); ++s) {
    const auto& in = occ.starts[s];
    if (in.empty()) continue;
    auto& kept = out.starts[s];
    Time last = in.front();
    kept.push_back(last);
    for (std::size_t k = 1; k < in.size(); ++k) {
      if (in[k] > last + span) {
        kept.push_back(in[k]);
        last = in[k];
      }
    }
  }
  return out;
}

inline OccurrenceList apply_mode(OccurrenceList distinct, FrequencyMode mode) {
  if (mode == FrequencyMode::non_overlapped) return find_no_occurrences(distinct);
  return distinct;
}

/// Non-overlapped frequency of a serial episode within one time-sorted
/// sequence: a single scan that matches nodes at strictly increasing times and
/// restarts after each completed occurrence. The next occurrence must start
/// after the previous one ended.
inline std::size_t count_no_in_sequence(std::span<const Event> seq, const SerialEpisode& ep) {
  std::size_t count = 0;
  const std::size_t n = ep.size();
  std::size_t node = 0;
  std::optional<Time> last;  // time of the most recent matched node or completed occurrence
  for (const auto& e : seq) {
    if (e.type != ep[node]) continue;
    if (last && e.time <= *last) continue;
    last = e.time;
    if (++node == n) {
      ++count;
      node = 0;
    }
  }
  return count;
}

inline std::size_t count_no_general(const EventDataset& data, const SerialEpisode& ep) {
  std::size_t count = 0;
  for (std::size_t s = 0; s < data.sequence_count(); ++s) count += count_no_in_sequence(data.sequence(s), ep);
  return count;
}

/// Event positions covered by a set of occurrences, sorted and unique.
struct CoverSet {
  std::vector<Position> positions;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
};

/// Binds every node of every listed occurrence to the lowest-index event with
/// the right (type, time).
inline CoverSet cover(const DatasetIndex& index, const OccurrenceList& occ) {
  const auto& ep = occ.episode;
  if (occ.starts.size() > index.data().sequence_count()) {
    throw IntegrityError("occurrence list has more sequences than the dataset");
  }
  CoverSet out;
  out.positions.reserve(occ.frequency() * ep.size());
  for (std::uint32_t s = 0; s < occ.starts.size(); ++s) {
    for (Time t : occ.starts[s]) {
      for (std::size_t i = 0; i < ep.size(); ++i) {
        auto idx = index.find(s, ep.symbol(i), t + ep.offset(i));
        if (!idx) {
          throw IntegrityError("no event for node " + std::to_string(i) + " of occurrence at seq " +
                               std::to_string(s) + " time " + std::to_string(t));
        }
        out.positions.push_back({s, *idx});
      }
    }
  }
  std::sort(out.positions.begin(), out.positions.end());
  out.positions.erase(std::unique(out.positions.begin(), out.positions.end()), out.positions.end());
  return out;
}

inline CoverSet cover(const EventDataset& data, const OccurrenceList& occ) {
  return cover(DatasetIndex(data), occ);
}

/// OM: number of events covered by both.
inline std::size_t overlap_count(const CoverSet& a, const CoverSet& b) {
  std::size_t n = 0;
  auto i = a.positions.begin();
  auto j = b.positions.begin();
  while (i != a.positions.end() && j != b.positions.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

inline CoverSet merge(const CoverSet& a, const CoverSet& b) {
  CoverSet out;
  out.positions.reserve(a.size() + b.size());
  std::set_union(a.positions.begin(), a.positions.end(), b.positions.begin(), b.positions.end(),
                 std::back_inserter(out.positions));
  return out;
}

// Debug dump: `<episode>\t<seq>\t<start>` per occurrence.
inline void write_occurrence_dump(std::ostream& out, const OccurrenceList& occ, const Alphabet& alphabet) {
  const auto name = format_episode(occ.episode, alphabet);
  for (std::size_t s = 0; s < occ.starts.size(); ++s)
    for (Time t : occ.starts[s]) out << name << '\t' << s << '\t' << t << '\n';
}

}  // namespace episodeseq
