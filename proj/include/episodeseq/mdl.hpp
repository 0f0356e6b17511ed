#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "episodeseq/candidates.hpp"
#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"
#include "episodeseq/occurrences.hpp"
#include "episodeseq/score.hpp"

namespace episodeseq {

/// Eq.-style overlap score of `ep` against an already chosen set: its own
/// score minus the number of events it shares with each chosen episode.
inline std::int64_t overlap_score(const FixedIntervalEpisode& ep, const EventDataset& data,
                                  std::span<const FixedIntervalEpisode> chosen, FrequencyMode mode) {
  const DatasetIndex index(data);
  const auto occ = apply_mode(find_distinct_starts(index, ep), mode);
  const auto mine = cover(index, occ);
  std::int64_t penalty = 0;
  for (const auto& other : chosen) {
    if (other == ep) throw ValidationError("episode is already in the chosen set");
    const auto theirs = cover(index, apply_mode(find_distinct_starts(index, other), mode));
    penalty += static_cast<std::int64_t>(overlap_count(mine, theirs));
  }
  return score(ep.size(), occ.frequency()) - penalty;
}

struct SelectedEpisode {
  FixedIntervalEpisode episode;
  OccurrenceList occurrences;  // mode-filtered, on the residual data of its round
  std::size_t frequency = 0;
  std::int64_t overlap_score = 0;  // at the time it was chosen
  std::size_t round = 0;
};

struct SelectionState {
  FrequencyMode mode = FrequencyMode::non_overlapped;
  std::vector<SelectedEpisode> selected;
  EventDataset residual;  // events not covered by any selected occurrence
  std::size_t rounds = 0;

  std::vector<FixedIntervalEpisode> episodes() const {
    std::vector<FixedIntervalEpisode> out;
    for (const auto& s : selected) out.push_back(s.episode);
    return out;
  }
};

struct SelectOptions {
  Time max_gap = 5;
  std::size_t max_episodes = std::numeric_limits<std::size_t>::max();
  FrequencyMode mode = FrequencyMode::non_overlapped;
  unsigned threads = 0;
  // Called with (round, candidates) before each round's greedy pass.
  std::function<void(std::size_t, const CandidateSet&)> on_candidates;
};

namespace detail {

inline std::vector<Position> union_of(const std::vector<CoverSet>& covers) {
  std::vector<Position> all;
  for (const auto& c : covers) all.insert(all.end(), c.positions.begin(), c.positions.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace detail

/// Greedy MDL selection. Each round mines candidates on the residual data and
/// repeatedly takes the candidate with the highest overlap score while that
/// score is positive; the covered events are then removed and a new round
/// starts. Stops when a round selects nothing or max_episodes is reached.
inline SelectionState select(const EventDataset& data, const SelectOptions& opts) {
  if (opts.max_gap < 1) throw ValidationError("max gap must be >= 1");
  if (opts.max_episodes < 1) throw ValidationError("episode limit must be >= 1");

  SelectionState state{opts.mode, {}, data, 0};
  const CandidateOptions cand_opts{opts.max_gap, opts.mode, 2, opts.threads};

  while (state.selected.size() < opts.max_episodes) {
    const std::size_t round = state.rounds + 1;
    auto candidates = generate_candidates(state.residual, cand_opts);
    if (opts.on_candidates) opts.on_candidates(round, candidates);

    // Overlap score never exceeds score, so only positive-score candidates
    // can ever be chosen.
    std::vector<Candidate> pool;
    for (auto& c : candidates.episodes)
      if (c.score > 0) pool.push_back(std::move(c));

    const DatasetIndex index(state.residual);
    std::vector<CoverSet> covers(pool.size());
    parallel_for(pool.size(), worker_count(opts.threads),
                 [&](std::size_t i) { covers[i] = cover(index, pool[i].occurrences); });

    // position -> candidates covering it
    std::vector<std::size_t> seq_offset(state.residual.sequence_count() + 1, 0);
    for (std::size_t s = 0; s < state.residual.sequence_count(); ++s) {
      seq_offset[s + 1] = seq_offset[s] + state.residual.sequence(s).size();
    }
    std::vector<std::vector<std::uint32_t>> covering(seq_offset.back());
    for (std::uint32_t c = 0; c < pool.size(); ++c)
      for (const auto& p : covers[c].positions) covering[seq_offset[p.seq] + p.index].push_back(c);

    std::vector<std::string> names(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) names[c] = format_episode(pool[c].episode, data.alphabet());

    std::vector<std::int64_t> penalty(pool.size(), 0);
    std::vector<bool> active(pool.size(), true);
    std::vector<std::size_t> chosen;

    auto preferred = [&](std::size_t a, std::size_t b) {
      const auto sa = pool[a].score - penalty[a];
      const auto sb = pool[b].score - penalty[b];
      if (sa != sb) return sa > sb;
      if (pool[a].frequency != pool[b].frequency) return pool[a].frequency > pool[b].frequency;
      if (pool[a].episode.size() != pool[b].episode.size()) {
        return pool[a].episode.size() > pool[b].episode.size();
      }
      return names[a] < names[b];
    };

    while (state.selected.size() + chosen.size() < opts.max_episodes) {
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < pool.size(); ++c) {
        if (active[c] && (!best || preferred(c, *best))) best = c;
      }
      if (!best || pool[*best].score - penalty[*best] <= 0) break;
      const std::size_t a = *best;
      active[a] = false;
      chosen.push_back(a);
      state.selected.push_back({pool[a].episode, pool[a].occurrences, pool[a].frequency,
                                pool[a].score - penalty[a], round});
      for (const auto& p : covers[a].positions)
        for (auto c : covering[seq_offset[p.seq] + p.index]) ++penalty[c];
    }

    if (chosen.empty()) break;
    std::vector<CoverSet> used;
    for (auto c : chosen) used.push_back(std::move(covers[c]));
    const auto removed = detail::union_of(used);
    state.residual = state.residual.without(removed);
    state.rounds = round;
  }
  return state;
}

/// A single-round selection made of the given episodes, in order, with
/// occurrences taken on the full data. Used to encode a fixed episode set.
inline SelectionState force_selection(const EventDataset& data, std::span<const FixedIntervalEpisode> episodes,
                                      FrequencyMode mode) {
  SelectionState state{mode, {}, data, episodes.empty() ? 0u : 1u};
  const DatasetIndex index(data);
  std::vector<CoverSet> covers;
  std::set<FixedIntervalEpisode> seen;
  for (const auto& ep : episodes) {
    if (!seen.insert(ep).second) throw ValidationError("episode listed twice in forced selection");
    for (auto s : ep.symbols()) {
      if (s >= data.alphabet().size()) throw ValidationError("episode symbol outside the alphabet");
    }
    auto occ = apply_mode(find_distinct_starts(index, ep), mode);
    auto c = cover(index, occ);
    std::int64_t penalty = 0;
    for (const auto& prev : covers) penalty += static_cast<std::int64_t>(overlap_count(c, prev));
    const auto f = occ.frequency();
    state.selected.push_back({ep, std::move(occ), f, score(ep.size(), f) - penalty, 1});
    covers.push_back(std::move(c));
  }
  state.residual = data.without(detail::union_of(covers));
  return state;
}

// ---------------------------------------------------------------------------
// Encoding table

struct SeqTime {
  std::uint32_t seq = 0;
  Time time = 0;

  friend auto operator<=>(const SeqTime&, const SeqTime&) = default;
};

struct TableRow {
  FixedIntervalEpisode episode;
  std::vector<SeqTime> starts;  // sorted; residual rows may repeat a start
  bool residual = false;

  std::size_t size() const { return episode.size(); }
  std::size_t frequency() const { return starts.size(); }
};

// Count of identical (seq, time, type) events, recorded only when above one.
struct Multiplicity {
  std::uint32_t seq = 0;
  Time time = 0;
  SymbolId type = 0;
  std::uint32_t count = 1;

  friend auto operator<=>(const Multiplicity&, const Multiplicity&) = default;
};

struct EncodingTable {
  std::shared_ptr<const Alphabet> alphabet = std::make_shared<const Alphabet>();
  std::vector<TableRow> rows;
  std::size_t sequence_count = 0;
  std::vector<Multiplicity> multiplicities;
};

/// One row per selected episode, then one 1-node row per event type that
/// still has uncovered events.
inline EncodingTable encode(const EventDataset& data, const SelectionState& selection) {
  EncodingTable table;
  table.alphabet = data.alphabet_ptr();
  table.sequence_count = data.sequence_count();

  for (const auto& sel : selection.selected) {
    TableRow row{sel.episode, {}, false};
    for (std::uint32_t s = 0; s < sel.occurrences.starts.size(); ++s)
      for (Time t : sel.occurrences.starts[s]) row.starts.push_back({s, t});
    table.rows.push_back(std::move(row));
  }

  const auto& residual = selection.residual;
  std::vector<std::vector<SeqTime>> leftover(data.alphabet().size());
  for (std::uint32_t s = 0; s < residual.sequence_count(); ++s)
    for (const auto& e : residual.sequence(s)) leftover[e.type].push_back({s, e.time});
  for (SymbolId type = 0; type < leftover.size(); ++type) {
    if (leftover[type].empty()) continue;
    std::sort(leftover[type].begin(), leftover[type].end());
    table.rows.push_back({FixedIntervalEpisode::single(type), std::move(leftover[type]), true});
  }

  for (std::uint32_t s = 0; s < data.sequence_count(); ++s) {
    auto seq = data.sequence(s);
    for (std::size_t i = 0; i < seq.size();) {
      std::size_t j = i;
      while (j < seq.size() && seq[j] == seq[i]) ++j;
      if (j - i > 1) {
        table.multiplicities.push_back({s, seq[i].time, seq[i].type, static_cast<std::uint32_t>(j - i)});
      }
      i = j;
    }
  }
  return table;
}

inline std::int64_t total_length(const EncodingTable& table) {
  std::int64_t total = 0;
  for (const auto& row : table.rows) total += row_length(row.size(), row.frequency());
  return total;
}

/// Expands every row back into events. An event reached from several rows is
/// emitted once, unless the table records a higher multiplicity for it.
inline EventDataset decode(const EncodingTable& table) {
  using Key = std::tuple<std::uint32_t, Time, SymbolId>;  // seq, time, type
  std::map<Key, std::uint32_t> events;
  for (const auto& row : table.rows) {
    for (auto s : row.episode.symbols()) {
      if (s >= table.alphabet->size()) throw FormatError("row symbol outside the table alphabet");
    }
    for (const auto& st : row.starts) {
      if (st.seq >= table.sequence_count) throw FormatError("row start refers to a missing sequence");
      for (std::size_t i = 0; i < row.size(); ++i) {
        events.emplace(Key{st.seq, st.time + row.episode.offset(i), row.episode.symbol(i)}, 1);
      }
    }
  }
  for (const auto& m : table.multiplicities) {
    auto it = events.find(Key{m.seq, m.time, m.type});
    if (it == events.end()) throw FormatError("multiplicity for an event no row encodes");
    it->second = m.count;
  }
  std::vector<std::vector<Event>> sequences(table.sequence_count);
  for (const auto& [k, count] : events)
    for (std::uint32_t c = 0; c < count; ++c) sequences[std::get<0>(k)].push_back({std::get<2>(k), std::get<1>(k)});
  return EventDataset(table.alphabet, std::move(sequences));
}

// ---------------------------------------------------------------------------
// CSV form:
//
//   #sequences,<n>                      only when trailing sequences are empty
//   #multiplicity,<seq>:<time>,<type>,<count>
//   size,episode,freq,starts
//   3,A -2-> B -1-> C,2,0:2;0:4

inline constexpr std::string_view kTableHeader = "size,episode,freq,starts";

inline void write_table(std::ostream& out, const EncodingTable& table) {
  std::size_t implied = 0;
  for (const auto& row : table.rows)
    for (const auto& st : row.starts) implied = std::max<std::size_t>(implied, st.seq + 1);
  for (const auto& m : table.multiplicities) implied = std::max<std::size_t>(implied, m.seq + 1);
  if (implied != table.sequence_count) out << "#sequences," << table.sequence_count << '\n';
  for (const auto& m : table.multiplicities) {
    out << "#multiplicity," << m.seq << ':' << m.time << ',' << table.alphabet->name(m.type) << ',' << m.count
        << '\n';
  }
  out << kTableHeader << '\n';
  for (const auto& row : table.rows) {
    out << row.size() << ',' << format_episode(row.episode, *table.alphabet) << ',' << row.frequency() << ',';
    for (std::size_t k = 0; k < row.starts.size(); ++k) {
      if (k) out << ';';
      out << row.starts[k].seq << ':' << row.starts[k].time;
    }
    out << '\n';
  }
}

inline std::string table_to_string(const EncodingTable& table) {
  std::ostringstream out;
  write_table(out, table);
  return out.str();
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline SeqTime parse_seq_time(std::string_view s, std::size_t lineno) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("line " + std::to_string(lineno) + ": expected '<seq>:<time>', got '" + std::string(s) + "'");
  }
  auto seq = parse_int<std::uint32_t>(s.substr(0, colon));
  auto time = parse_int<Time>(s.substr(colon + 1));
  if (!seq || !time) throw ParseError("line " + std::to_string(lineno) + ": bad '<seq>:<time>'");
  return {*seq, *time};
}

}  // namespace detail

/// Reads the CSV form. The alphabet is the sorted set of names that appear;
/// 1-node rows are marked residual.
inline EncodingTable read_table(std::istream& in) {
  struct RawRow {
    std::size_t size;
    EpisodeNames names;
    std::vector<SeqTime> starts;
  };
  struct RawMult {
    SeqTime at;
    std::string name;
    std::uint32_t count;
  };
  std::vector<RawRow> raw;
  std::vector<RawMult> mults;
  std::optional<std::size_t> declared_sequences;
  bool header_seen = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (!header_seen) {
      if (line.starts_with("#sequences,")) {
        auto n = detail::parse_int<std::size_t>(std::string_view(line).substr(11));
        if (!n) throw ParseError(where + "bad sequence count");
        declared_sequences = *n;
        continue;
      }
      if (line.starts_with("#multiplicity,")) {
        auto f = detail::split(std::string_view(line).substr(14), ',');
        if (f.size() != 3) throw ParseError(where + "expected '#multiplicity,<seq>:<time>,<type>,<count>'");
        auto count = detail::parse_int<std::uint32_t>(f[2]);
        if (!count || *count < 2) throw ParseError(where + "bad multiplicity count");
        mults.push_back({detail::parse_seq_time(f[0], lineno), std::string(f[1]), *count});
        continue;
      }
      if (line != kTableHeader) throw ParseError(where + "expected header '" + std::string(kTableHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    auto f = detail::split(line, ',');
    if (f.size() != 4) throw ParseError(where + "expected 4 fields");
    auto size = detail::parse_int<std::size_t>(f[0]);
    auto freq = detail::parse_int<std::size_t>(f[2]);
    if (!size || !freq) throw ParseError(where + "bad size or frequency");
    RawRow row{*size, parse_episode_names(f[1]), {}};
    if (row.names.symbols.size() != row.size) throw FormatError(where + "size does not match episode");
    if (!f[3].empty()) {
      for (auto item : detail::split(f[3], ';')) row.starts.push_back(detail::parse_seq_time(item, lineno));
    }
    if (row.starts.size() != *freq) throw FormatError(where + "frequency does not match start list");
    if (!std::is_sorted(row.starts.begin(), row.starts.end())) throw FormatError(where + "starts not sorted");
    raw.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("missing table header");

  std::vector<std::string> names;
  for (const auto& r : raw) names.insert(names.end(), r.names.symbols.begin(), r.names.symbols.end());
  for (const auto& m : mults) names.push_back(m.name);

  EncodingTable table;
  table.alphabet = std::make_shared<const Alphabet>(Alphabet::sorted(std::move(names)));
  std::size_t implied = 0;
  for (auto& r : raw) {
    for (const auto& st : r.starts) implied = std::max<std::size_t>(implied, st.seq + 1);
    table.rows.push_back({resolve_episode(r.names, *table.alphabet), std::move(r.starts), r.size == 1});
  }
  for (const auto& m : mults) {
    implied = std::max<std::size_t>(implied, m.at.seq + 1);
    table.multiplicities.push_back({m.at.seq, m.at.time, table.alphabet->id(m.name), m.count});
  }
  table.sequence_count = declared_sequences.value_or(implied);
  if (table.sequence_count < implied) throw FormatError("declared sequence count too small");
  return table;
}

inline EncodingTable table_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_table(in);
}

}  // namespace episodeseq
