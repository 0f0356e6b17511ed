#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"

namespace episodeseq {

// Event data files hold one `<time>\t<event_type>` per line. A blank line
// ends the current sequence; a trailing empty sequence is not representable.
// The alphabet of a loaded dataset is the set of names present, sorted.

inline EventDataset read_events(std::istream& in) {
  std::vector<std::vector<std::pair<Time, std::string>>> raw(1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) {
      raw.emplace_back();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected '<time>\\t<event_type>'");
    }
    auto time = detail::parse_int<Time>(detail::trim(std::string_view(line).substr(0, tab)));
    if (!time) throw ParseError("line " + std::to_string(lineno) + ": bad time");
    std::string name(detail::trim(std::string_view(line).substr(tab + 1)));
    if (!is_valid_symbol_name(name)) {
      throw ParseError("line " + std::to_string(lineno) + ": bad event type '" + name + "'");
    }
    raw.back().emplace_back(*time, std::move(name));
  }
  if (raw.back().empty()) raw.pop_back();
  // An input that was nothing but blank lines has no sequences at all.
  if (std::all_of(raw.begin(), raw.end(), [](const auto& s) { return s.empty(); })) raw.clear();

  std::vector<std::string> names;
  for (const auto& seq : raw)
    for (const auto& [t, n] : seq) names.push_back(n);
  auto alphabet = std::make_shared<const Alphabet>(Alphabet::sorted(std::move(names)));

  std::vector<std::vector<Event>> sequences;
  sequences.reserve(raw.size());
  for (const auto& seq : raw) {
    auto& out = sequences.emplace_back();
    out.reserve(seq.size());
    for (const auto& [t, n] : seq) out.push_back({alphabet->id(n), t});
  }
  return EventDataset(std::move(alphabet), std::move(sequences));
}

inline void write_events(std::ostream& out, const EventDataset& data) {
  for (std::size_t s = 0; s < data.sequence_count(); ++s) {
    if (s) out << '\n';
    for (const auto& e : data.sequence(s)) {
      out << e.time << '\t' << data.alphabet().name(e.type) << '\n';
    }
  }
}

inline std::string events_to_string(const EventDataset& data) {
  std::ostringstream out;
  write_events(out, data);
  return out.str();
}

inline EventDataset events_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_events(in);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline EventDataset load_events(const std::string& path) {
  auto in = open_input(path);
  return read_events(in);
}

inline void save_events(const std::string& path, const EventDataset& data) {
  auto out = open_output(path);
  write_events(out, data);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace episodeseq
