#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "episodeseq.hpp"

namespace es = episodeseq;

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kValidation = 3, kIo = 4 };

// Writes to the named file, or stdout when the name is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") file_.emplace(es::open_output(path));
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw es::IoError("write failed");
    }
  }

 private:
  std::optional<std::ofstream> file_;
};

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  auto in = es::open_input(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixed(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

std::vector<es::FixedIntervalEpisode> read_episode_file(const std::string& path, const es::Alphabet& alphabet) {
  std::istringstream in(read_all(path));
  std::vector<es::FixedIntervalEpisode> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = es::detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(es::parse_episode(t, alphabet));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct MineArgs {
  std::string input, output, summary, force, dump;
  es::Time max_gap = 5;
  std::size_t top_k = 0;
  std::string mode = "non-overlapped";
  unsigned threads = 0;
};

int run_mine(const MineArgs& a) {
  const auto data = es::events_from_string(read_all(a.input));
  const auto mode = es::parse_frequency_mode(a.mode);
  std::ostringstream dump;

  es::SelectionState selection;
  if (!a.force.empty()) {
    const auto episodes = read_episode_file(a.force, data.alphabet());
    selection = es::force_selection(data, episodes, mode);
  } else {
    es::SelectOptions opts;
    opts.max_gap = a.max_gap;
    opts.mode = mode;
    opts.threads = a.threads;
    if (a.top_k > 0) opts.max_episodes = a.top_k;
    if (!a.dump.empty()) {
      opts.on_candidates = [&](std::size_t round, const es::CandidateSet& set) {
        dump << "# round " << round << '\n';
        es::write_candidate_dump(dump, set, data.alphabet());
      };
    }
    selection = es::select(data, opts);
  }
  const auto table = es::encode(data, selection);

  Sink out(a.output);
  es::write_table(out.stream(), table);
  out.close();

  std::ostringstream sum;
  sum << "max_gap\t" << a.max_gap << '\n' << "freq_mode\t" << es::to_string(mode) << '\n';
  for (const auto& s : selection.selected) {
    sum << "episode\t" << es::format_episode(s.episode, data.alphabet()) << '\t' << s.frequency << '\t'
        << s.overlap_score << '\t' << s.round << '\n';
  }
  sum << "total_length\t" << es::total_length(table) << '\n';
  if (a.summary.empty()) {
    std::cerr << sum.str();
  } else {
    Sink s(a.summary);
    s.stream() << sum.str();
    s.close();
  }
  if (!a.dump.empty()) {
    Sink d(a.dump);
    d.stream() << dump.str();
    d.close();
  }
  return kOk;
}

int run_decode(const std::string& input, const std::string& output) {
  const auto table = es::table_from_string(read_all(input));
  Sink out(output);
  es::write_events(out.stream(), es::decode(table));
  out.close();
  return kOk;
}

// ---------------------------------------------------------------------------

struct ModelArgs {
  std::string alpha, beta, gamma;
  std::size_t alphabet_size = 0;
  double eta = 0.0;
};

es::hmm::EpisodePairModel make_model(const std::string& alpha, const std::string& beta, const ModelArgs& a) {
  auto ab = std::make_shared<const es::Alphabet>(es::hmm::default_alphabet(a.alphabet_size));
  return es::hmm::EpisodePairModel(es::parse_serial_episode(alpha, *ab), es::parse_serial_episode(beta, *ab), ab,
                                   a.eta);
}

struct SimArgs {
  ModelArgs model;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::string output, model_json, events;
};

int run_hmm_sim(const SimArgs& a) {
  const auto model = make_model(a.model.alpha, a.model.beta, a.model);
  const auto traj = es::hmm::simulate(model, a.length, a.seed);
  Sink out(a.output);
  es::hmm::write_trajectory(out.stream(), model, traj);
  out.close();
  if (!a.model_json.empty()) {
    Sink j(a.model_json);
    j.stream() << es::hmm::model_to_json(model).dump(2) << '\n';
    j.close();
  }
  if (!a.events.empty()) {
    Sink e(a.events);
    es::write_events(e.stream(), es::hmm::to_dataset(model, traj.symbols));
    e.close();
  }
  const auto& c = traj.counts;
  std::cerr << "noise\t" << c.noise << "\nunshared\t" << c.unshared << "\nshared\t" << c.shared << '\n';
  return kOk;
}

// Trajectory file: optional state line followed by a symbol line, or a single
// symbol line.
struct ParsedTrajectory {
  std::vector<std::size_t> states;
  std::vector<es::SymbolId> symbols;
};

ParsedTrajectory read_trajectory(const std::string& path, const es::hmm::EpisodePairModel& model) {
  std::istringstream in(read_all(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!es::detail::trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty() || lines.size() > 2) throw es::ParseError("trajectory file must hold one or two lines");
  ParsedTrajectory t;
  for (auto tok : es::detail::split_whitespace(lines.back())) t.symbols.push_back(model.alphabet().id(tok));
  if (lines.size() == 2) {
    for (auto tok : es::detail::split_whitespace(lines.front()))
      t.states.push_back(es::hmm::parse_state_name(model, tok));
  }
  return t;
}

void print_path(std::ostream& out, const std::string& prefix, const es::hmm::EpisodePairModel& model,
                std::span<const es::SymbolId> symbols, std::span<const std::size_t> states) {
  const auto c = es::hmm::decompose(model, states);
  const auto stats = es::hmm::pair_stats(model, c);
  out << prefix << "log_likelihood\t" << fixed(es::hmm::joint_log_likelihood(model, symbols, states)) << '\n'
      << prefix << "closed_form\t" << fixed(es::hmm::closed_form_counts(model, c)) << '\n'
      << prefix << "noise\t" << c.noise << '\n'
      << prefix << "unshared\t" << c.unshared << '\n'
      << prefix << "shared\t" << c.shared << '\n'
      << prefix << "f_alpha\t" << stats.f_alpha << '\n'
      << prefix << "f_partner\t" << stats.f_partner << '\n';
}

int run_hmm_score(const ModelArgs& a, const std::string& input, const std::string& output) {
  const auto model = make_model(a.alpha, a.beta, a);
  const auto t = read_trajectory(input, model);
  Sink out(output);
  if (!t.states.empty()) print_path(out.stream(), "given_", model, t.symbols, t.states);
  const auto best = es::hmm::viterbi(model, t.symbols);
  print_path(out.stream(), "viterbi_", model, t.symbols, best);
  out.close();
  return kOk;
}

int run_hmm_compare(const ModelArgs& a, const std::string& input, const std::string& output) {
  const auto mb = make_model(a.alpha, a.beta, a);
  const auto mg = make_model(a.alpha, a.gamma, a);
  const auto t = read_trajectory(input, mb);
  const auto sb = es::hmm::pair_stats(mb, es::hmm::decompose(mb, es::hmm::viterbi(mb, t.symbols)));
  const auto sg = es::hmm::pair_stats(mg, es::hmm::decompose(mg, es::hmm::viterbi(mg, t.symbols)));
  const auto n = mb.episode_size();
  Sink out(output);
  auto& os = out.stream();
  os << "beta_f\t" << sb.f_partner << "\nbeta_shared\t" << sb.shared << "\nbeta_overlap_score_1\t"
     << es::hmm::overlap_score_1(n, sb.f_partner, sb.shared) << "\nbeta_overlap_score_2\t"
     << fixed(es::hmm::overlap_score_2(n, sb.f_partner, sb.shared), 1) << '\n';
  os << "gamma_f\t" << sg.f_partner << "\ngamma_shared\t" << sg.shared << "\ngamma_overlap_score_1\t"
     << es::hmm::overlap_score_1(n, sg.f_partner, sg.shared) << "\ngamma_overlap_score_2\t"
     << fixed(es::hmm::overlap_score_2(n, sg.f_partner, sg.shared), 1) << '\n';
  if (sb.f_alpha != sg.f_alpha) {
    // The ratio formula needs a common alpha side; report without it.
    os << "alpha_f_mismatch\t" << sb.f_alpha << '\t' << sg.f_alpha << '\n';
  } else {
    const auto cmp = es::hmm::compare_pairs(sb, sg, a.eta, a.alphabet_size);
    os << "log_ratio\t" << fixed(cmp.log_ratio) << "\npreference\t" << es::hmm::to_string(cmp.preference) << '\n';
  }
  out.close();
  return kOk;
}

// ---------------------------------------------------------------------------

int run_dict(const std::string& train, const std::string& output, es::Time max_gap, std::size_t top_k,
             unsigned threads) {
  const auto corpus = es::text::load_corpus(train, "train");
  es::text::MineOptions opts{max_gap, top_k > 0 ? top_k : std::numeric_limits<std::size_t>::max(), threads};
  const auto result = es::text::mine_dictionary(corpus, opts);
  if (result.dictionary.empty()) std::cerr << "warning: no non-singleton episode selected; dictionary is empty\n";
  Sink out(output);
  es::text::write_dictionary(out.stream(), result.dictionary);
  out.close();
  std::size_t non_singleton = 0;
  for (const auto& s : result.selection.selected) non_singleton += s.episode.size() >= 2;
  std::cerr << "max_gap\t" << max_gap << "\nepisodes\t" << non_singleton << "\ndictionary_I\t"
            << es::text::dictionary_I(corpus).size() << "\ndictionary_II\t" << result.dictionary.size() << '\n';
  return kOk;
}

int run_classify(const std::string& train, const std::string& test, const std::vector<std::string>& dicts,
                 const std::string& output, unsigned threads) {
  const auto tr = es::text::load_corpus(train, "train");
  const auto te = es::text::load_corpus(test, "test");
  Sink out(output);
  out.stream() << es::text::kMetricsHeader << '\n';
  const auto d1 = es::text::dictionary_I(tr);
  es::text::write_metrics_row(out.stream(), "I", "NB", es::text::classify(tr, te, d1, threads).metrics);
  for (std::size_t k = 0; k < dicts.size(); ++k) {
    auto in = es::open_input(dicts[k]);
    const auto d = es::text::read_dictionary(in, es::text::Provenance::II);
    const std::string name = dicts.size() == 1 ? "II" : "II." + std::to_string(k + 1);
    es::text::write_metrics_row(out.stream(), name, "NB", es::text::classify(tr, te, d, threads).metrics);
  }
  out.close();
  return kOk;
}

int run_synth(const std::string& kind, std::uint64_t seed, const std::string& output, const std::string& test_out) {
  if (kind == "planted") {
    es::synth::PlantedOptions opts;
    opts.seed = seed;
    const auto p = es::synth::planted_corpus(opts);
    Sink out(output);
    es::text::write_corpus(out.stream(), p.corpus);
    out.close();
    for (std::size_t k = 0; k < p.patterns.size(); ++k)
      std::cerr << "pattern\t" << p.patterns[k].format() << '\t' << p.occurrences[k] << '\n';
    return kOk;
  }
  if (kind == "mini") {
    es::synth::MiniCorpusOptions opts;
    opts.seed = seed;
    const auto m = es::synth::mini_corpus(opts);
    Sink out(output);
    es::text::write_corpus(out.stream(), m.train);
    out.close();
    if (test_out.empty()) throw es::ValidationError("mini corpus needs --test-output");
    Sink t(test_out);
    es::text::write_corpus(t.stream(), m.test);
    t.close();
    return kOk;
  }
  throw es::ValidationError("unknown corpus kind '" + kind + "' (planted, mini)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-interval episode mining, MDL encoding, episode-pair HMMs and text features"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: EPISODESEQ_THREADS or hardware)");

  MineArgs mine;
  auto* c_mine = app.add_subcommand("mine", "Select episodes and write the encoding table");
  c_mine->add_option("-i,--input", mine.input, "Event file (<time>\\t<type>, blank line between sequences)")
      ->required();
  c_mine->add_option("-o,--output", mine.output, "Table CSV (default stdout)");
  c_mine->add_option("-g,--max-gap", mine.max_gap, "Largest inter-event gap")->check(CLI::PositiveNumber);
  c_mine->add_option("-k,--top-k", mine.top_k, "Largest number of episodes (0: unlimited)");
  c_mine->add_option("--freq-mode", mine.mode, "distinct or non-overlapped")
      ->check(CLI::IsMember({"distinct", "non-overlapped"}));
  c_mine->add_option("--force-episodes", mine.force, "File with one episode per line; skips the search");
  c_mine->add_option("--dump-candidates", mine.dump, "Write each round's candidates here");
  c_mine->add_option("--summary", mine.summary, "Write the selection summary here (default stderr)");

  std::string dec_in, dec_out;
  auto* c_decode = app.add_subcommand("decode", "Rebuild the event file from a table");
  c_decode->add_option("-i,--input", dec_in, "Table CSV")->required();
  c_decode->add_option("-o,--output", dec_out, "Event file (default stdout)");

  auto add_model = [](CLI::App* c, ModelArgs& m, bool gamma) {
    c->add_option("--alpha", m.alpha, "First episode, e.g. \"A -> B -> C\"")->required();
    c->add_option("--beta", m.beta, "Second episode")->required();
    if (gamma) c->add_option("--gamma", m.gamma, "Competing second episode")->required();
    c->add_option("-M,--alphabet-size", m.alphabet_size, "Alphabet size M")->required()->check(CLI::PositiveNumber);
    c->add_option("--eta", m.eta, "Noise parameter, 0 < eta < M/(M+8)")->required();
  };

  SimArgs sim;
  auto* c_sim = app.add_subcommand("hmm-sim", "Sample a trajectory from the episode-pair model");
  add_model(c_sim, sim.model, false);
  c_sim->add_option("-T,--length", sim.length, "Trajectory length")->required()->check(CLI::PositiveNumber);
  c_sim->add_option("--seed", sim.seed, "Random seed")->required();
  c_sim->add_option("-o,--output", sim.output, "Trajectory (default stdout)");
  c_sim->add_option("--model-json", sim.model_json, "Write the model as JSON");
  c_sim->add_option("--events", sim.events, "Write the symbols as an event file");

  ModelArgs score;
  std::string score_in, score_out;
  auto* c_score = app.add_subcommand("hmm-score", "Likelihoods of a given path and of the Viterbi path");
  add_model(c_score, score, false);
  c_score->add_option("-i,--input", score_in, "Trajectory file")->required();
  c_score->add_option("-o,--output", score_out, "Report (default stdout)");

  ModelArgs cmp;
  std::string cmp_in, cmp_out;
  auto* c_cmp = app.add_subcommand("hmm-compare", "Compare (alpha,beta) against (alpha,gamma) on a sequence");
  add_model(c_cmp, cmp, true);
  c_cmp->add_option("-i,--input", cmp_in, "Trajectory or symbol file")->required();
  c_cmp->add_option("-o,--output", cmp_out, "Report (default stdout)");

  std::string dict_train, dict_out;
  es::Time dict_gap = 5;
  std::size_t dict_k = 0;
  auto* c_dict = app.add_subcommand("dict", "Mine a training corpus and write Dictionary-II");
  c_dict->add_option("--train", dict_train, "Corpus (<label>\\t<tokens>)")->required();
  c_dict->add_option("-o,--output", dict_out, "Dictionary file (default stdout)");
  c_dict->add_option("-g,--max-gap", dict_gap, "Largest inter-token gap")->check(CLI::PositiveNumber);
  c_dict->add_option("-k,--top-k", dict_k, "Largest number of episodes (0: unlimited)");

  std::string cls_train, cls_test, cls_out;
  std::vector<std::string> cls_dicts;
  auto* c_cls = app.add_subcommand("classify", "Naive Bayes on tf-idf features; writes metrics CSV");
  c_cls->add_option("--train", cls_train, "Training corpus")->required();
  c_cls->add_option("--test", cls_test, "Test corpus")->required();
  c_cls->add_option("--dictionary", cls_dicts, "Reduced dictionary file(s)");
  c_cls->add_option("-o,--output", cls_out, "Metrics CSV (default stdout)");

  std::string syn_kind, syn_out, syn_test;
  std::uint64_t syn_seed = 0;
  auto* c_syn = app.add_subcommand("synth", "Generate a synthetic corpus");
  c_syn->add_option("kind", syn_kind, "planted or mini")->required();
  c_syn->add_option("--seed", syn_seed, "Random seed")->required();
  c_syn->add_option("-o,--output", syn_out, "Corpus (training split for mini)");
  c_syn->add_option("--test-output", syn_test, "Test split for mini");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*c_mine) {
      mine.threads = threads;
      return run_mine(mine);
    }
    if (*c_decode) return run_decode(dec_in, dec_out);
    if (*c_sim) return run_hmm_sim(sim);
    if (*c_score) return run_hmm_score(score, score_in, score_out);
    if (*c_cmp) return run_hmm_compare(cmp, cmp_in, cmp_out);
    if (*c_dict) return run_dict(dict_train, dict_out, dict_gap, dict_k, threads);
    if (*c_cls) return run_classify(cls_train, cls_test, cls_dicts, cls_out, threads);
    if (*c_syn) return run_synth(syn_kind, syn_seed, syn_out, syn_test);
  } catch (const es::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const es::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const es::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const es::IntegrityError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
