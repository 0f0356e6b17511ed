#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "episodeseq/error.hpp"

namespace episodeseq {

using SymbolId = std::uint32_t;
using Time = std::int64_t;

namespace detail {

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

// Symbol names must survive every text format the library writes: no
// whitespace, no CSV/list separators, and no leading '-' or '#'.
inline bool is_valid_symbol_name(std::string_view name) {
  if (name.empty() || name.front() == '-' || name.front() == '#') return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return detail::is_space(c) || c == ',' || c == ';';
  });
}

/// Ordered set of distinct event-type names. Ids are positions in the list.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto& s = symbols_[i];
      if (!is_valid_symbol_name(s)) {
        throw ValidationError("invalid symbol name '" + s + "'");
      }
      if (!index_.emplace(s, static_cast<SymbolId>(i)).second) {
        throw ValidationError("duplicate symbol '" + s + "'");
      }
    }
  }

  /// Deduplicates and sorts by name.
  static Alphabet sorted(std::vector<std::string> symbols) {
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    return Alphabet(std::move(symbols));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  const std::string& name(SymbolId id) const {
    if (id >= symbols_.size()) throw ValidationError("symbol id out of range");
    return symbols_[id];
  }

  std::optional<SymbolId> find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  SymbolId id(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw ValidationError("unknown symbol '" + std::string(name) + "'");
  }

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, SymbolId, std::less<>> index_;
};

struct Event {
  SymbolId type = 0;
  Time time = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Canonical order inside a sequence: by time, ties by symbol id.
inline bool canonical_less(const Event& a, const Event& b) {
  return a.time != b.time ? a.time < b.time : a.type < b.type;
}

/// Location of one event: sequence number and index inside that sequence.
struct Position {
  std::uint32_t seq = 0;
  std::uint32_t index = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// One or more event sequences over a shared alphabet. Each sequence is kept
/// in canonical order, so a constructed dataset is always time-sorted.
class EventDataset {
 public:
  EventDataset() : alphabet_(std::make_shared<const Alphabet>()) {}

  EventDataset(std::shared_ptr<const Alphabet> alphabet, std::vector<std::vector<Event>> sequences)
      : alphabet_(std::move(alphabet)), sequences_(std::move(sequences)) {
    if (!alphabet_) throw ValidationError("dataset requires an alphabet");
    for (auto& seq : sequences_) {
      for (const auto& e : seq) {
        if (e.type >= alphabet_->size()) {
          throw ValidationError("event type id " + std::to_string(e.type) + " not in alphabet");
        }
      }
      std::stable_sort(seq.begin(), seq.end(), canonical_less);
    }
  }

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const { return alphabet_; }

  std::size_t sequence_count() const { return sequences_.size(); }
  std::span<const Event> sequence(std::size_t i) const { return sequences_.at(i); }
  const std::vector<std::vector<Event>>& sequences() const { return sequences_; }

  const Event& at(Position p) const { return sequences_.at(p.seq).at(p.index); }

  std::size_t event_count() const {
    return std::accumulate(sequences_.begin(), sequences_.end(), std::size_t{0},
                           [](std::size_t acc, const auto& s) { return acc + s.size(); });
  }

  bool empty() const { return event_count() == 0; }

  // Symbols that actually occur, in id order.
  std::vector<SymbolId> present_symbols() const {
    std::vector<bool> seen(alphabet_->size(), false);
    for (const auto& seq : sequences_)
      for (const auto& e : seq) seen[e.type] = true;
    std::vector<SymbolId> out;
    for (SymbolId s = 0; s < seen.size(); ++s)
      if (seen[s]) out.push_back(s);
    return out;
  }

  /// Copy without the given positions; positions must be sorted and unique.
  EventDataset without(std::span<const Position> removed) const {
    std::vector<std::vector<Event>> kept(sequences_.size());
    auto it = removed.begin();
    for (std::uint32_t s = 0; s < sequences_.size(); ++s) {
      for (std::uint32_t i = 0; i < sequences_[s].size(); ++i) {
        if (it != removed.end() && it->seq == s && it->index == i) {
          ++it;
          continue;
        }
        kept[s].push_back(sequences_[s][i]);
      }
    }
    return EventDataset(alphabet_, std::move(kept));
  }

  bool operator==(const EventDataset& other) const {
    return *alphabet_ == *other.alphabet_ && sequences_ == other.sequences_;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<std::vector<Event>> sequences_;
};

/// Injective serial episode with prescribed inter-event gaps. An occurrence
/// starting at t has node i at t + offset(i).
class FixedIntervalEpisode {
 public:
  FixedIntervalEpisode() = default;

  FixedIntervalEpisode(std::vector<SymbolId> symbols, std::vector<Time> gaps)
      : symbols_(std::move(symbols)), gaps_(std::move(gaps)) {
    if (symbols_.empty()) throw ValidationError("episode needs at least one node");
    if (gaps_.size() + 1 != symbols_.size()) {
      throw ValidationError("episode with " + std::to_string(symbols_.size()) + " nodes needs " +
                            std::to_string(symbols_.size() - 1) + " gaps");
    }
    for (Time g : gaps_) {
      if (g < 1) throw ValidationError("episode gaps must be >= 1");
    }
    std::vector<SymbolId> sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("episode is not injective");
    }
  }

  static FixedIntervalEpisode single(SymbolId s) { return FixedIntervalEpisode({s}, {}); }

  std::size_t size() const { return symbols_.size(); }
  const std::vector<SymbolId>& symbols() const { return symbols_; }
  const std::vector<Time>& gaps() const { return gaps_; }
  SymbolId symbol(std::size_t i) const { return symbols_.at(i); }

  Time span() const { return std::accumulate(gaps_.begin(), gaps_.end(), Time{0}); }

  Time offset(std::size_t node) const {
    return std::accumulate(gaps_.begin(), gaps_.begin() + static_cast<std::ptrdiff_t>(node), Time{0});
  }

  bool contains(SymbolId s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
  }

  FixedIntervalEpisode extended(SymbolId s, Time gap) const {
    auto symbols = symbols_;
    auto gaps = gaps_;
    symbols.push_back(s);
    gaps.push_back(gap);
    return FixedIntervalEpisode(std::move(symbols), std::move(gaps));
  }

  friend auto operator<=>(const FixedIntervalEpisode&, const FixedIntervalEpisode&) = default;
  friend bool operator==(const FixedIntervalEpisode&, const FixedIntervalEpisode&) = default;

 private:
  std::vector<SymbolId> symbols_;
  std::vector<Time> gaps_;
};

inline Time span(const FixedIntervalEpisode& ep) { return ep.span(); }

/// Injective serial episode without timing constraints.
class SerialEpisode {
 public:
  SerialEpisode() = default;

  explicit SerialEpisode(std::vector<SymbolId> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ValidationError("episode needs at least one node");
    std::vector<SymbolId> sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("episode is not injective");
    }
  }

  std::size_t size() const { return symbols_.size(); }
  SymbolId operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<SymbolId>& symbols() const { return symbols_; }

  friend auto operator<=>(const SerialEpisode&, const SerialEpisode&) = default;

 private:
  std::vector<SymbolId> symbols_;
};

// ---------------------------------------------------------------------------
// Episode strings: `A -2-> B -1-> C` for fixed-interval episodes and
// `A -> B -> C` for serial ones. Tokens are whitespace separated.

struct EpisodeNames {
  std::vector<std::string> symbols;
  std::vector<Time> gaps;
};

namespace detail {

// Returns the gap of an arrow token `-<int>->`, or nullopt when the token is
// not an arrow at all. Arrows with bad numbers are parse errors.
inline std::optional<Time> parse_gap_arrow(std::string_view tok) {
  if (tok.size() < 3 || tok.front() != '-' || !tok.ends_with("->")) return std::nullopt;
  auto digits = tok.substr(1, tok.size() - 3);
  if (digits.empty()) return std::nullopt;
  auto value = parse_int<Time>(digits);
  if (!value) throw ParseError("bad gap in arrow '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline EpisodeNames parse_episode_names(std::string_view text) {
  auto tokens = detail::split_whitespace(text);
  if (tokens.empty()) throw ParseError("empty episode string");
  if (tokens.size() % 2 == 0) {
    throw ParseError("episode string must alternate symbols and arrows: '" + std::string(text) + "'");
  }
  EpisodeNames out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k % 2 == 0) {
      if (!is_valid_symbol_name(tokens[k])) {
        throw ParseError("expected symbol, got '" + std::string(tokens[k]) + "'");
      }
      out.symbols.emplace_back(tokens[k]);
    } else {
      auto gap = detail::parse_gap_arrow(tokens[k]);
      if (!gap) throw ParseError("expected '-<gap>->', got '" + std::string(tokens[k]) + "'");
      if (*gap < 1) throw ValidationError("episode gaps must be >= 1");
      out.gaps.push_back(*gap);
    }
  }
  return out;
}

inline FixedIntervalEpisode resolve_episode(const EpisodeNames& names, const Alphabet& alphabet) {
  std::vector<SymbolId> ids;
  ids.reserve(names.symbols.size());
  for (const auto& s : names.symbols) ids.push_back(alphabet.id(s));
  return FixedIntervalEpisode(std::move(ids), names.gaps);
}

inline FixedIntervalEpisode parse_episode(std::string_view text, const Alphabet& alphabet) {
  return resolve_episode(parse_episode_names(text), alphabet);
}

inline std::string format_episode(const FixedIntervalEpisode& ep, const Alphabet& alphabet) {
  std::string out = alphabet.name(ep.symbol(0));
  for (std::size_t i = 1; i < ep.size(); ++i) {
    out += " -";
    out += std::to_string(ep.gaps()[i - 1]);
    out += "-> ";
    out += alphabet.name(ep.symbol(i));
  }
  return out;
}

inline SerialEpisode parse_serial_episode(std::string_view text, const Alphabet& alphabet) {
  auto tokens = detail::split_whitespace(text);
  if (tokens.empty() || tokens.size() % 2 == 0) {
    throw ParseError("serial episode must look like 'A -> B -> C': '" + std::string(text) + "'");
  }
  std::vector<SymbolId> ids;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k % 2 == 1) {
      if (tokens[k] != "->") throw ParseError("expected '->', got '" + std::string(tokens[k]) + "'");
      continue;
    }
    if (!is_valid_symbol_name(tokens[k])) {
      throw ParseError("expected symbol, got '" + std::string(tokens[k]) + "'");
    }
    ids.push_back(alphabet.id(tokens[k]));
  }
  return SerialEpisode(std::move(ids));
}

inline std::string format_serial_episode(const SerialEpisode& ep, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < ep.size(); ++i) {
    if (i) out += " -> ";
    out += alphabet.name(ep[i]);
  }
  return out;
}

}  // namespace episodeseq
