#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"

namespace episodeseq::hmm {

// Generative model for a pair of N-node serial episodes (alpha, beta) over an
// alphabet of M symbols, driven by one noise parameter eta.
//
// Episode state S1[i,j] emits alpha[i]; S2[i,j] emits beta[j]. In both, i is
// the alpha node to emit next-or-now and j the beta node. Noise states N1[i,j]
// and N2[i,j] remember where the episodes stood and emit uniformly; N0 is the
// start-of-sequence noise state. 4N^2 + 1 states in total.
//
// Regular episode transitions split 1 - eta evenly between the two episode
// states that continue alpha and beta, and send eta to the matching noise
// state. When the next alpha node equals the next beta node the continuation
// is a single shared state entered with probability 1 - eta: its emission
// advances both episodes at once.

enum class Kind : std::uint8_t { episode1, episode2, noise1, noise2, noise0 };

struct StateId {
  Kind kind = Kind::noise0;
  std::uint32_t i = 1;  // 1-based
  std::uint32_t j = 1;

  friend bool operator==(const StateId&, const StateId&) = default;
};

// How a state was entered; fixes the transition factor of that step.
enum class Entry : std::uint8_t {
  noise,     // eta
  unshared,  // (1 - eta) / 2
  shared,    // 1 - eta
};

struct Transition {
  std::size_t to = 0;
  double probability = 0.0;
  Entry entry = Entry::noise;
};

/// A-Z for up to 26 symbols, E1..EM beyond that.
inline Alphabet default_alphabet(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < m; ++k) {
    names.push_back(m <= 26 ? std::string(1, static_cast<char>('A' + k)) : "E" + std::to_string(k + 1));
  }
  return Alphabet(std::move(names));
}

inline double max_eta(std::size_t m) { return static_cast<double>(m) / static_cast<double>(m + 8); }

class EpisodePairModel {
 public:
  EpisodePairModel(SerialEpisode alpha, SerialEpisode beta, std::shared_ptr<const Alphabet> alphabet, double eta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), alphabet_(std::move(alphabet)), eta_(eta) {
    if (!alphabet_ || alphabet_->empty()) throw ValidationError("model needs a non-empty alphabet");
    n_ = alpha_.size();
    m_ = alphabet_->size();
    if (beta_.size() != n_) throw ValidationError("both episodes must have the same number of nodes");
    if (!(eta_ > 0.0) || !(eta_ < max_eta(m_))) {
      throw ValidationError("eta must lie in (0, M/(M+8)) = (0, " + std::to_string(max_eta(m_)) + ")");
    }
    for (std::size_t k = 0; k < n_; ++k) {
      if (alpha_[k] >= m_ || beta_[k] >= m_) throw ValidationError("episode symbol outside the alphabet");
    }
    build();
  }

  EpisodePairModel(SerialEpisode alpha, SerialEpisode beta, std::size_t m, double eta)
      : EpisodePairModel(std::move(alpha), std::move(beta), std::make_shared<const Alphabet>(default_alphabet(m)),
                         eta) {}

  std::size_t episode_size() const { return n_; }
  std::size_t alphabet_size() const { return m_; }
  double eta() const { return eta_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const { return alphabet_; }
  const SerialEpisode& alpha() const { return alpha_; }
  const SerialEpisode& beta() const { return beta_; }

  std::size_t state_count() const { return 4 * n_ * n_ + 1; }

  // True when the episodes share at least one event type.
  bool shares_symbols() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (alpha_[a] == beta_[b]) return true;
    return false;
  }

  std::size_t index(StateId s) const {
    if (s.kind == Kind::noise0) return 4 * n_ * n_;
    if (s.i < 1 || s.i > n_ || s.j < 1 || s.j > n_) throw ValidationError("state index out of range");
    return static_cast<std::size_t>(s.kind) * n_ * n_ + (s.i - 1) * n_ + (s.j - 1);
  }

  StateId state(std::size_t idx) const {
    if (idx >= state_count()) throw ValidationError("state id out of range");
    if (idx == 4 * n_ * n_) return {Kind::noise0, 1, 1};
    const auto block = idx / (n_ * n_);
    const auto rem = idx % (n_ * n_);
    return {static_cast<Kind>(block), static_cast<std::uint32_t>(rem / n_ + 1),
            static_cast<std::uint32_t>(rem % n_ + 1)};
  }

  static bool is_noise(Kind k) { return k == Kind::noise0 || k == Kind::noise1 || k == Kind::noise2; }
  bool is_noise(std::size_t idx) const { return is_noise(state(idx).kind); }

  std::string state_name(std::size_t idx) const {
    const auto s = state(idx);
    static constexpr const char* prefix[] = {"S1", "S2", "N1", "N2", "N0"};
    return std::string(prefix[static_cast<int>(s.kind)]) + "[" + std::to_string(s.i) + "," +
           std::to_string(s.j) + "]";
  }

  std::span<const Transition> transitions(std::size_t from) const { return transitions_.at(from); }

  double transition(std::size_t from, std::size_t to) const {
    for (const auto& t : transitions_.at(from))
      if (t.to == to) return t.probability;
    return 0.0;
  }

  const std::vector<Transition>& initial() const { return initial_; }

  double initial_probability(std::size_t s) const {
    for (const auto& t : initial_)
      if (t.to == s) return t.probability;
    return 0.0;
  }

  /// Symbol emitted with probability 1 by an episode state; none for noise.
  std::optional<SymbolId> emitted_symbol(std::size_t idx) const {
    const auto s = state(idx);
    if (s.kind == Kind::episode1) return alpha_[s.i - 1];
    if (s.kind == Kind::episode2) return beta_[s.j - 1];
    return std::nullopt;
  }

  double emission(std::size_t idx, SymbolId symbol) const {
    if (symbol >= m_) return 0.0;
    if (auto sym = emitted_symbol(idx)) return *sym == symbol ? 1.0 : 0.0;
    return 1.0 / static_cast<double>(m_);
  }

  /// Episode states whose outgoing transitions use the shared-event structure.
  std::vector<std::size_t> shared_transition_states() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < state_count(); ++s)
      for (const auto& t : transitions_[s])
        if (t.entry == Entry::shared) {
          out.push_back(s);
          break;
        }
    return out;
  }

 private:
  std::uint32_t next(std::uint32_t k) const { return static_cast<std::uint32_t>(k % n_ + 1); }

  void add(std::size_t from, StateId to, double p, Entry e) {
    auto& row = transitions_[from];
    const auto idx = index(to);
    for (auto& t : row) {
      if (t.to == idx) {
        t.probability += p;
        return;
      }
    }
    row.push_back({idx, p, e});
  }

  void build() {
    transitions_.assign(state_count(), {});
    const double stay = eta_;
    const double half = (1.0 - eta_) / 2.0;
    const double full = 1.0 - eta_;
    auto a = [&](std::uint32_t k) { return alpha_[k - 1]; };
    auto b = [&](std::uint32_t k) { return beta_[k - 1]; };
    const auto n = static_cast<std::uint32_t>(n_);

    for (std::uint32_t i = 1; i <= n; ++i) {
      for (std::uint32_t j = 1; j <= n; ++j) {
        // S1[i,j]: alpha[i] was just emitted.
        const auto s1 = index({Kind::episode1, i, j});
        if (a(next(i)) == b(j)) {
          add(s1, {Kind::episode1, next(i), next(j)}, full, Entry::shared);
        } else {
          add(s1, {Kind::episode1, next(i), j}, half, Entry::unshared);
          add(s1, {Kind::episode2, next(i), j}, half, Entry::unshared);
        }
        add(s1, {Kind::noise1, i, j}, stay, Entry::noise);

        // S2[i,j]: beta[j] was just emitted.
        const auto s2 = index({Kind::episode2, i, j});
        if (a(i) == b(next(j))) {
          add(s2, {Kind::episode2, next(i), next(j)}, full, Entry::shared);
        } else {
          add(s2, {Kind::episode2, i, next(j)}, half, Entry::unshared);
          add(s2, {Kind::episode1, i, next(j)}, half, Entry::unshared);
        }
        add(s2, {Kind::noise2, i, j}, stay, Entry::noise);

        const auto n1 = index({Kind::noise1, i, j});
        add(n1, {Kind::episode1, next(i), j}, half, Entry::unshared);
        add(n1, {Kind::episode2, next(i), j}, half, Entry::unshared);
        add(n1, {Kind::noise1, i, j}, stay, Entry::noise);

        const auto n2 = index({Kind::noise2, i, j});
        add(n2, {Kind::episode1, i, next(j)}, half, Entry::unshared);
        add(n2, {Kind::episode2, i, next(j)}, half, Entry::unshared);
        add(n2, {Kind::noise2, i, j}, stay, Entry::noise);
      }
    }
    const auto n0 = index({Kind::noise0, 1, 1});
    add(n0, {Kind::episode1, 1, 1}, half, Entry::unshared);
    add(n0, {Kind::episode2, 1, 1}, half, Entry::unshared);
    add(n0, {Kind::noise0, 1, 1}, stay, Entry::noise);

    initial_.clear();
    initial_.push_back({n0, stay, Entry::noise});
    if (a(1) != b(1)) {
      initial_.push_back({index({Kind::episode1, 1, 1}), half, Entry::unshared});
      initial_.push_back({index({Kind::episode2, 1, 1}), half, Entry::unshared});
    } else {
      initial_.push_back({index({Kind::episode1, 1, next(1)}), full, Entry::shared});
    }
  }

  SerialEpisode alpha_;
  SerialEpisode beta_;
  std::shared_ptr<const Alphabet> alphabet_;
  double eta_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Transition>> transitions_;
  std::vector<Transition> initial_;
};

inline EpisodePairModel build_model(const SerialEpisode& alpha, const SerialEpisode& beta, std::size_t m,
                                    double eta) {
  return EpisodePairModel(alpha, beta, m, eta);
}

/// Split of a state path by how each state was entered, plus the number of
/// alpha and beta events emitted. Shared states count for both episodes.
struct PathCounts {
  std::size_t noise = 0;     // |q_n|
  std::size_t unshared = 0;  // |q_1|
  std::size_t shared = 0;    // |q_2|
  std::size_t alpha_events = 0;
  std::size_t beta_events = 0;

  std::size_t episode() const { return unshared + shared; }  // |q_e|
  std::size_t length() const { return noise + unshared + shared; }

  friend bool operator==(const PathCounts&, const PathCounts&) = default;
};

namespace detail {

inline void tally(const EpisodePairModel& model, std::size_t state, Entry entry, PathCounts& c) {
  switch (entry) {
    case Entry::noise:
      ++c.noise;
      return;
    case Entry::unshared:
      ++c.unshared;
      break;
    case Entry::shared:
      ++c.shared;
      break;
  }
  const auto kind = model.state(state).kind;
  if (kind == Kind::episode1 || entry == Entry::shared) ++c.alpha_events;
  if (kind == Kind::episode2 || entry == Entry::shared) ++c.beta_events;
}

}  // namespace detail

/// Counts for an explicit state path; throws when the path has probability 0.
inline PathCounts decompose(const EpisodePairModel& model, std::span<const std::size_t> states) {
  PathCounts c;
  for (std::size_t t = 0; t < states.size(); ++t) {
    std::span<const Transition> options =
        t == 0 ? std::span<const Transition>(model.initial()) : model.transitions(states[t - 1]);
    auto it = std::find_if(options.begin(), options.end(), [&](const Transition& tr) { return tr.to == states[t]; });
    if (it == options.end()) throw ValidationError("state path has probability zero at step " + std::to_string(t));
    detail::tally(model, states[t], it->entry, c);
  }
  return c;
}

struct Trajectory {
  std::vector<std::size_t> states;
  std::vector<SymbolId> symbols;
  std::vector<Entry> entries;  // tag of the transition into each state
  PathCounts counts;

  std::size_t length() const { return states.size(); }
};

/// Samples T steps. Each state's entry tag is recorded when it is drawn, so the
/// shared/unshared split is exact rather than re-inferred.
inline Trajectory simulate(const EpisodePairModel& model, std::size_t length, std::uint64_t seed) {
  if (length < 1) throw ValidationError("trajectory length must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<SymbolId> noise_symbol(0, static_cast<SymbolId>(model.alphabet_size() - 1));

  auto draw = [&](std::span<const Transition> options) -> const Transition& {
    double u = unit(rng);
    for (const auto& t : options) {
      if (u < t.probability) return t;
      u -= t.probability;
    }
    return options.back();
  };

  Trajectory traj;
  traj.states.reserve(length);
  traj.symbols.reserve(length);
  traj.entries.reserve(length);
  const Transition* step = &draw(model.initial());
  for (std::size_t t = 0; t < length; ++t) {
    if (t > 0) step = &draw(model.transitions(traj.states.back()));
    const auto s = step->to;
    traj.states.push_back(s);
    traj.entries.push_back(step->entry);
    auto sym = model.emitted_symbol(s);
    traj.symbols.push_back(sym ? *sym : noise_symbol(rng));
    detail::tally(model, s, step->entry, traj.counts);
  }
  return traj;
}

/// Output symbols as a one-sequence dataset with times 1..T.
inline EventDataset to_dataset(const EpisodePairModel& model, std::span<const SymbolId> symbols) {
  std::vector<Event> seq;
  seq.reserve(symbols.size());
  for (std::size_t t = 0; t < symbols.size(); ++t) seq.push_back({symbols[t], static_cast<Time>(t + 1)});
  return EventDataset(model.alphabet_ptr(), {std::move(seq)});
}

/// log P(o, q | model); -inf when any factor is zero.
inline double joint_log_likelihood(const EpisodePairModel& model, std::span<const SymbolId> output,
                                   std::span<const std::size_t> states) {
  if (output.size() != states.size()) throw ValidationError("output and state sequences differ in length");
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (states.empty()) return 0.0;
  double ll = 0.0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (states[t] >= model.state_count()) throw ValidationError("state id out of range");
    const double p = t == 0 ? model.initial_probability(states[0]) : model.transition(states[t - 1], states[t]);
    const double b = model.emission(states[t], output[t]);
    if (p <= 0.0 || b <= 0.0) return neg_inf;
    ll += std::log(p) + std::log(b);
  }
  return ll;
}

/// log[(eta/M)^|q_n| ((1-eta)/2)^|q_e|] for models whose episodes share no
/// symbol.
inline double closed_form_case1(const EpisodePairModel& model, std::size_t noise_count, std::size_t episode_count) {
  const double eta = model.eta();
  const double m = static_cast<double>(model.alphabet_size());
  return static_cast<double>(noise_count) * std::log(eta / m) +
         static_cast<double>(episode_count) * std::log((1.0 - eta) / 2.0);
}

/// log[(eta/M)^|q_n| ((1-eta)/2)^|q_1| (1-eta)^|q_2|].
inline double closed_form_counts(const EpisodePairModel& model, const PathCounts& c) {
  const double eta = model.eta();
  const double m = static_cast<double>(model.alphabet_size());
  return static_cast<double>(c.noise) * std::log(eta / m) +
         static_cast<double>(c.unshared) * std::log((1.0 - eta) / 2.0) +
         static_cast<double>(c.shared) * std::log(1.0 - eta);
}

/// log[(eta/M)^T ((1-eta)M/(2 eta))^E ((1-eta)M/(4 eta))^(-O)] where E is the
/// number of episode events counted per episode (shared ones twice) and O the
/// number of shared events.
inline double closed_form_events(const EpisodePairModel& model, std::size_t episode_events, std::size_t shared,
                                 std::size_t length) {
  if (episode_events < 2 * shared) throw ValidationError("more shared events than episode events allow");
  if (episode_events - shared > length) throw ValidationError("episode events exceed sequence length");
  const double eta = model.eta();
  const double m = static_cast<double>(model.alphabet_size());
  return static_cast<double>(length) * std::log(eta / m) +
         static_cast<double>(episode_events) * std::log((1.0 - eta) * m / (2.0 * eta)) -
         static_cast<double>(shared) * std::log((1.0 - eta) * m / (4.0 * eta));
}

/// Closed form for a path holding f_alpha and f_beta complete occurrences that
/// share O events, in a sequence of length T.
inline double closed_form_case2(const EpisodePairModel& model, std::size_t f_alpha, std::size_t f_beta,
                                std::size_t shared, std::size_t length) {
  const std::size_t n = model.episode_size();
  return closed_form_events(model, n * (f_alpha + f_beta), shared, length);
}

/// Most likely state path by max-product dynamic programming in log space.
/// Ties go to the lowest state id.
inline std::vector<std::size_t> viterbi(const EpisodePairModel& model, std::span<const SymbolId> output) {
  if (output.empty()) throw ValidationError("viterbi needs a non-empty output sequence");
  for (auto o : output)
    if (o >= model.alphabet_size()) throw ValidationError("output symbol outside the alphabet");

  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const std::size_t ns = model.state_count();
  const std::size_t len = output.size();

  // Precomputed log transitions.
  std::vector<std::vector<std::pair<std::size_t, double>>> log_tr(ns);
  for (std::size_t s = 0; s < ns; ++s)
    for (const auto& t : model.transitions(s)) log_tr[s].emplace_back(t.to, std::log(t.probability));

  std::vector<double> cur(ns, neg_inf), nxt(ns);
  std::vector<std::uint32_t> back(len * ns, 0);
  for (const auto& t : model.initial()) {
    const double b = model.emission(t.to, output[0]);
    if (b > 0.0) cur[t.to] = std::log(t.probability) + std::log(b);
  }
  for (std::size_t t = 1; t < len; ++t) {
    std::fill(nxt.begin(), nxt.end(), neg_inf);
    auto* bp = &back[t * ns];
    for (std::size_t from = 0; from < ns; ++from) {
      if (cur[from] == neg_inf) continue;
      for (const auto& [to, lp] : log_tr[from]) {
        const double v = cur[from] + lp;
        if (v > nxt[to]) {
          nxt[to] = v;
          bp[to] = static_cast<std::uint32_t>(from);
        }
      }
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (nxt[s] == neg_inf) continue;
      const double b = model.emission(s, output[t]);
      nxt[s] = b > 0.0 ? nxt[s] + std::log(b) : neg_inf;
    }
    std::swap(cur, nxt);
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < ns; ++s)
    if (cur[s] > cur[best]) best = s;

  std::vector<std::size_t> path(len);
  path[len - 1] = best;
  for (std::size_t t = len - 1; t > 0; --t) path[t - 1] = back[t * ns + path[t]];
  return path;
}

// ---------------------------------------------------------------------------
// Pair comparison

/// Frequencies and overlap of one model's most likely path. f_alpha is the
/// common episode, f_partner the other one.
struct PairStats {
  std::size_t n = 0;
  std::size_t f_alpha = 0;
  std::size_t f_partner = 0;
  std::size_t shared = 0;  // O*

  void validate() const {
    if (shared > n * std::min(f_alpha, f_partner)) {
      throw ValidationError("shared events exceed N * min(f_alpha, f_partner)");
    }
  }
};

/// Complete occurrences only; trailing partial occurrences are dropped.
inline PairStats pair_stats(const EpisodePairModel& model, const PathCounts& c) {
  const auto n = model.episode_size();
  return {n, c.alpha_events / n, c.beta_events / n, c.shared};
}

inline std::int64_t overlap_score_1(std::size_t n, std::size_t f, std::size_t shared) {
  return static_cast<std::int64_t>(n * f) - static_cast<std::int64_t>(shared);
}

inline double overlap_score_2(std::size_t n, std::size_t f, std::size_t shared) {
  return static_cast<double>(n * f) - static_cast<double>(shared) / 2.0;
}

enum class Preference { beta, gamma, tie };

inline std::string_view to_string(Preference p) {
  switch (p) {
    case Preference::beta:
      return "beta";
    case Preference::gamma:
      return "gamma";
    case Preference::tie:
      return "tie";
  }
  return "tie";
}

struct PairComparison {
  double log_ratio = 0.0;  // log P(o,q*|alpha,beta) - log P(o,q*|alpha,gamma)
  Preference preference = Preference::tie;
};

/// Likelihood ratio of the (alpha, beta) model against the (alpha, gamma)
/// model along their most likely paths:
///   ((1-eta)M/(2 eta))^(N(f_beta - f_gamma)) * ((1-eta)M/(4 eta))^(O_gamma - O_beta)
inline PairComparison compare_pairs(const PairStats& beta, const PairStats& gamma, double eta, std::size_t m) {
  if (beta.n != gamma.n || beta.n == 0) throw ValidationError("pair stats must share the same N");
  if (beta.f_alpha != gamma.f_alpha) throw ValidationError("pair stats must share the alpha side");
  if (!(eta > 0.0) || !(eta < max_eta(m))) throw ValidationError("eta out of range");
  beta.validate();
  gamma.validate();
  const double md = static_cast<double>(m);
  const double dn = static_cast<double>(beta.n) * (static_cast<double>(beta.f_partner) -
                                                   static_cast<double>(gamma.f_partner));
  const double dov = static_cast<double>(gamma.shared) - static_cast<double>(beta.shared);
  PairComparison out;
  out.log_ratio = dn * std::log((1.0 - eta) * md / (2.0 * eta)) + dov * std::log((1.0 - eta) * md / (4.0 * eta));
  // Both exponents are integers; exact zero only when both vanish.
  if (dn == 0.0 && dov == 0.0) {
    out.preference = Preference::tie;
  } else {
    out.preference = out.log_ratio > 0.0 ? Preference::beta : Preference::gamma;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dumps

inline nlohmann::ordered_json model_to_json(const EpisodePairModel& model) {
  nlohmann::ordered_json j;
  const auto& ab = model.alphabet();
  j["N"] = model.episode_size();
  j["M"] = model.alphabet_size();
  j["eta"] = model.eta();
  j["alpha"] = format_serial_episode(model.alpha(), ab);
  j["beta"] = format_serial_episode(model.beta(), ab);
  j["alphabet"] = ab.symbols();
  auto& states = j["states"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < model.state_count(); ++s) {
    nlohmann::ordered_json st;
    st["id"] = s;
    st["name"] = model.state_name(s);
    if (auto sym = model.emitted_symbol(s)) {
      st["emits"] = ab.name(*sym);
    } else {
      st["emits"] = "uniform";
    }
    states.push_back(std::move(st));
  }
  auto& init = j["initial"] = nlohmann::ordered_json::array();
  for (const auto& t : model.initial()) init.push_back({{"to", model.state_name(t.to)}, {"p", t.probability}});
  auto& tr = j["transitions"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < model.state_count(); ++s)
    for (const auto& t : model.transitions(s))
      tr.push_back({{"from", model.state_name(s)}, {"to", model.state_name(t.to)}, {"p", t.probability}});
  return j;
}

// Two aligned tab-separated lines: state names, then emitted symbols.
inline void write_trajectory(std::ostream& out, const EpisodePairModel& model, const Trajectory& traj) {
  for (std::size_t t = 0; t < traj.length(); ++t) out << (t ? "\t" : "") << model.state_name(traj.states[t]);
  out << '\n';
  for (std::size_t t = 0; t < traj.length(); ++t) out << (t ? "\t" : "") << model.alphabet().name(traj.symbols[t]);
  out << '\n';
}

inline std::size_t parse_state_name(const EpisodePairModel& model, std::string_view name) {
  for (std::size_t s = 0; s < model.state_count(); ++s)
    if (model.state_name(s) == name) return s;
  throw ParseError("unknown state '" + std::string(name) + "'");
}

}  // namespace episodeseq::hmm
