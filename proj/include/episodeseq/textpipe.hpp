#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"
#include "episodeseq/io.hpp"
#include "episodeseq/mdl.hpp"
#include "episodeseq/parallel.hpp"

namespace episodeseq::text {

struct PreprocessOptions {
  bool lowercase = true;
  std::size_t min_len = 3;
  std::set<std::string, std::less<>> stopwords;
};

/// Splits on ASCII non-alphanumeric bytes. Bytes >= 0x80 stay inside tokens so
/// UTF-8 words are not torn apart.
inline std::vector<std::string> preprocess(std::string_view raw, const PreprocessOptions& opts = {}) {
  std::vector<std::string> out;
  auto word_byte = [](unsigned char c) { return c >= 0x80 || std::isalnum(c); };
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && !word_byte(static_cast<unsigned char>(raw[i]))) ++i;
    std::size_t j = i;
    while (j < raw.size() && word_byte(static_cast<unsigned char>(raw[j]))) ++j;
    if (j > i) {
      std::string tok(raw.substr(i, j - i));
      if (opts.lowercase) {
        for (auto& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      if (tok.size() >= opts.min_len && !opts.stopwords.contains(tok)) out.push_back(std::move(tok));
    }
    i = j;
  }
  return out;
}

struct Document {
  std::string label;
  std::vector<std::string> tokens;
};

struct Corpus {
  std::vector<Document> documents;
  std::string split;  // "train", "test", or empty

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }

  /// Sorted distinct labels.
  std::vector<std::string> labels() const {
    std::set<std::string> s;
    for (const auto& d : documents) s.insert(d.label);
    return {s.begin(), s.end()};
  }
};

enum class Provenance { I, II };

class Dictionary {
 public:
  Dictionary() = default;

  /// Sorts and deduplicates.
  Dictionary(std::vector<std::string> words, Provenance provenance) : provenance_(provenance) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    words_ = std::move(words);
    for (std::size_t k = 0; k < words_.size(); ++k) index_.emplace(words_[k], static_cast<std::uint32_t>(k));
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  Provenance provenance() const { return provenance_; }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::uint32_t id) const { return words_.at(id); }

  std::optional<std::uint32_t> find(std::string_view w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view w) const { return index_.find(w) != index_.end(); }

 private:
  std::vector<std::string> words_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  Provenance provenance_ = Provenance::I;
};

/// Every distinct word of the training documents.
inline Dictionary dictionary_I(const Corpus& train) {
  std::vector<std::string> words;
  for (const auto& d : train.documents) words.insert(words.end(), d.tokens.begin(), d.tokens.end());
  return Dictionary(std::move(words), Provenance::I);
}

/// One sequence per document, token k at time k (1-based); the alphabet is
/// Dictionary-I in sorted order. Tokens outside the dictionary are skipped but
/// keep their position.
inline EventDataset corpus_to_events(const Corpus& train, const Dictionary& dict) {
  if (train.empty()) throw ValidationError("training corpus is empty");
  auto alphabet = std::make_shared<const Alphabet>(dict.words());
  std::vector<std::vector<Event>> seqs;
  seqs.reserve(train.size());
  for (const auto& d : train.documents) {
    std::vector<Event> seq;
    seq.reserve(d.tokens.size());
    for (std::size_t k = 0; k < d.tokens.size(); ++k) {
      if (auto id = dict.find(d.tokens[k])) seq.push_back({*id, static_cast<Time>(k + 1)});
    }
    seqs.push_back(std::move(seq));
  }
  return EventDataset(std::move(alphabet), std::move(seqs));
}

inline EventDataset corpus_to_events(const Corpus& train) { return corpus_to_events(train, dictionary_I(train)); }

/// Words appearing in selected episodes with at least two nodes.
inline Dictionary build_dictionary_II(const SelectionState& selection) {
  std::vector<std::string> words;
  const auto& ab = selection.residual.alphabet();
  for (const auto& s : selection.selected) {
    if (s.episode.size() < 2) continue;
    for (auto sym : s.episode.symbols()) words.push_back(ab.name(sym));
  }
  return Dictionary(std::move(words), Provenance::II);
}

struct MineOptions {
  Time max_gap = 5;
  std::size_t max_episodes = std::numeric_limits<std::size_t>::max();
  unsigned threads = 0;
};

struct DictionaryResult {
  Dictionary dictionary;
  SelectionState selection;
};

/// Mines the training documents and keeps the words of non-singleton
/// episodes.
inline DictionaryResult mine_dictionary(const Corpus& train, const MineOptions& opts = {}) {
  const auto data = corpus_to_events(train);
  SelectOptions sel;
  sel.max_gap = opts.max_gap;
  sel.max_episodes = opts.max_episodes;
  sel.mode = FrequencyMode::non_overlapped;
  sel.threads = opts.threads;
  auto selection = select(data, sel);
  auto dict = build_dictionary_II(selection);
  return {std::move(dict), std::move(selection)};
}

// ---------------------------------------------------------------------------
// Features

enum class Weighting { tfidf_cosine, binary };

struct FeatureMatrix {
  using Row = std::vector<std::pair<std::uint32_t, double>>;  // sorted by id
  std::vector<Row> rows;
  std::size_t dimension = 0;
  Weighting weighting = Weighting::tfidf_cosine;
};

struct IdfModel {
  std::vector<double> idf;  // per dictionary id
  std::size_t documents = 0;
};

/// idf(w) = log((1 + n_d) / (1 + df(w))) + 1 over the given (training) corpus.
inline IdfModel fit_idf(const Corpus& train, const Dictionary& dict) {
  if (dict.empty()) throw ValidationError("dictionary is empty");
  std::vector<std::size_t> df(dict.size(), 0);
  std::vector<std::uint32_t> seen;
  for (const auto& d : train.documents) {
    seen.clear();
    for (const auto& tok : d.tokens)
      if (auto id = dict.find(tok)) seen.push_back(*id);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto id : seen) ++df[id];
  }
  IdfModel m;
  m.documents = train.size();
  m.idf.resize(dict.size());
  const double nd = static_cast<double>(train.size());
  for (std::size_t w = 0; w < dict.size(); ++w) {
    m.idf[w] = std::log((1.0 + nd) / (1.0 + static_cast<double>(df[w]))) + 1.0;
  }
  return m;
}

namespace detail {

inline FeatureMatrix::Row term_counts(const Document& doc, const Dictionary& dict) {
  std::map<std::uint32_t, double> counts;
  for (const auto& tok : doc.tokens)
    if (auto id = dict.find(tok)) counts[*id] += 1.0;
  return {counts.begin(), counts.end()};
}

}  // namespace detail

/// wf(w,d) * idf(w), each row scaled to unit Euclidean norm. Words outside
/// the dictionary are ignored.
inline FeatureMatrix tfidf(const Corpus& corpus, const Dictionary& dict, const IdfModel& idf, unsigned threads = 0) {
  if (dict.empty()) throw ValidationError("dictionary is empty");
  if (idf.idf.size() != dict.size()) throw ValidationError("idf model does not match the dictionary");
  FeatureMatrix fm{std::vector<FeatureMatrix::Row>(corpus.size()), dict.size(), Weighting::tfidf_cosine};
  parallel_for(corpus.size(), worker_count(threads), [&](std::size_t k) {
    auto row = detail::term_counts(corpus.documents[k], dict);
    double norm = 0.0;
    for (auto& [id, w] : row) {
      w *= idf.idf[id];
      norm += w * w;
    }
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& [id, w] : row) w /= norm;
    }
    fm.rows[k] = std::move(row);
  });
  return fm;
}

inline FeatureMatrix binary_features(const Corpus& corpus, const Dictionary& dict, unsigned threads = 0) {
  if (dict.empty()) throw ValidationError("dictionary is empty");
  FeatureMatrix fm{std::vector<FeatureMatrix::Row>(corpus.size()), dict.size(), Weighting::binary};
  parallel_for(corpus.size(), worker_count(threads), [&](std::size_t k) {
    auto row = detail::term_counts(corpus.documents[k], dict);
    for (auto& [id, w] : row) w = 1.0;
    fm.rows[k] = std::move(row);
  });
  return fm;
}

// ---------------------------------------------------------------------------
// Naive Bayes

struct NBModel {
  std::vector<double> log_prior;                  // per class
  std::vector<std::vector<double>> log_likelihood;  // [class][word]
  std::vector<bool> active;                       // word has training weight
  std::size_t dimension = 0;
  double smoothing = 1.0;
};

/// Multinomial NB on real-valued weights. The vocabulary size in the smoothing
/// denominator counts only words with non-zero training weight, so all-zero
/// columns leave the posterior unchanged.
inline NBModel train_nb(const FeatureMatrix& features, std::span<const std::uint32_t> labels, std::size_t classes,
                        double smoothing = 1.0) {
  if (features.rows.size() != labels.size()) throw ValidationError("feature rows and labels differ in count");
  if (features.rows.empty()) throw ValidationError("no training documents");
  if (classes == 0) throw ValidationError("need at least one class");
  const std::size_t dim = features.dimension;
  std::vector<std::size_t> docs(classes, 0);
  std::vector<std::vector<double>> totals(classes, std::vector<double>(dim, 0.0));
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] >= classes) throw ValidationError("label out of range");
    ++docs[labels[k]];
    for (const auto& [id, w] : features.rows[k]) {
      if (id >= dim) throw ValidationError("feature id exceeds dimension");
      totals[labels[k]][id] += w;
    }
  }
  NBModel m;
  m.dimension = dim;
  m.smoothing = smoothing;
  m.active.assign(dim, false);
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t w = 0; w < dim; ++w)
      if (totals[c][w] != 0.0) m.active[w] = true;
  const auto vocab = static_cast<double>(std::count(m.active.begin(), m.active.end(), true));
  m.log_prior.resize(classes);
  m.log_likelihood.assign(classes, std::vector<double>(dim, 0.0));
  for (std::size_t c = 0; c < classes; ++c) {
    // Laplace-smoothed prior keeps empty classes finite.
    m.log_prior[c] = std::log((static_cast<double>(docs[c]) + 1.0) /
                              (static_cast<double>(labels.size()) + static_cast<double>(classes)));
    double sum = 0.0;
    for (std::size_t w = 0; w < dim; ++w) sum += totals[c][w];
    const double denom = sum + smoothing * vocab;
    for (std::size_t w = 0; w < dim; ++w) {
      if (m.active[w]) m.log_likelihood[c][w] = std::log((totals[c][w] + smoothing) / denom);
    }
  }
  return m;
}

inline std::vector<double> log_posterior(const NBModel& model, const FeatureMatrix::Row& row) {
  std::vector<double> score = model.log_prior;
  for (const auto& [id, w] : row) {
    if (id >= model.dimension) throw ValidationError("feature id exceeds model dimension");
    if (!model.active[id]) continue;
    for (std::size_t c = 0; c < score.size(); ++c) score[c] += w * model.log_likelihood[c][id];
  }
  return score;
}

/// Argmax posterior; ties go to the lowest class id.
inline std::vector<std::uint32_t> predict(const NBModel& model, const FeatureMatrix& features, unsigned threads = 0) {
  if (features.dimension != model.dimension) throw ValidationError("feature dimension does not match the model");
  std::vector<std::uint32_t> out(features.rows.size());
  parallel_for(features.rows.size(), worker_count(threads), [&](std::size_t k) {
    const auto score = log_posterior(model, features.rows[k]);
    out[k] = static_cast<std::uint32_t>(std::max_element(score.begin(), score.end()) - score.begin());
  });
  return out;
}

struct Metrics {
  double accuracy = 0.0;
  double macro_f = 0.0;
};

/// Macro F averages per-class F1 over every class seen in truth or
/// predictions; a class with no true positives scores 0.
inline Metrics evaluate(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> truth) {
  if (predicted.size() != truth.size()) throw ValidationError("prediction and truth differ in length");
  if (truth.empty()) throw ValidationError("empty test set");
  std::map<std::uint32_t, std::array<std::size_t, 3>> tally;  // tp, fp, fn
  std::size_t correct = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (predicted[k] == truth[k]) {
      ++correct;
      ++tally[truth[k]][0];
    } else {
      ++tally[predicted[k]][1];
      ++tally[truth[k]][2];
    }
  }
  Metrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  double sum = 0.0;
  for (const auto& [c, t] : tally) {
    const auto [tp, fp, fn] = t;
    if (tp > 0) sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  }
  m.macro_f = sum / static_cast<double>(tally.size());
  return m;
}

struct Evaluation {
  Metrics metrics;
  std::vector<std::uint32_t> predicted;
};

/// tf-idf features over `dict` with df from train, NB trained on train and
/// evaluated on test. Class ids follow the sorted labels of the training set;
/// test labels unseen in training count as always wrong.
inline Evaluation classify(const Corpus& train, const Corpus& test, const Dictionary& dict, unsigned threads = 0) {
  if (train.empty()) throw ValidationError("training corpus is empty");
  if (test.empty()) throw ValidationError("empty test set");
  const auto names = train.labels();
  auto label_id = [&](const std::string& l) {
    auto it = std::lower_bound(names.begin(), names.end(), l);
    if (it == names.end() || *it != l) return static_cast<std::uint32_t>(names.size());
    return static_cast<std::uint32_t>(it - names.begin());
  };
  std::vector<std::uint32_t> ytrain, ytest;
  for (const auto& d : train.documents) ytrain.push_back(label_id(d.label));
  for (const auto& d : test.documents) ytest.push_back(label_id(d.label));

  const auto idf = fit_idf(train, dict);
  const auto model = train_nb(tfidf(train, dict, idf, threads), ytrain, names.size());
  Evaluation ev;
  ev.predicted = predict(model, tfidf(test, dict, idf, threads), threads);
  ev.metrics = evaluate(ev.predicted, ytest);
  return ev;
}

// ---------------------------------------------------------------------------
// Files

/// One document per line: `<label>\t<token token ...>`. Tokens are taken as
/// they are; blank lines are skipped.
inline Corpus read_corpus(std::istream& in, std::string split = {}) {
  Corpus c;
  c.split = std::move(split);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (episodeseq::detail::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("corpus line " + std::to_string(lineno) + ": expected <label>\\t<tokens>");
    }
    Document d;
    d.label = line.substr(0, tab);
    for (auto tok : episodeseq::detail::split_whitespace(std::string_view(line).substr(tab + 1))) {
      d.tokens.emplace_back(tok);
    }
    c.documents.push_back(std::move(d));
  }
  return c;
}

inline Corpus load_corpus(const std::string& path, std::string split = {}) {
  auto in = open_input(path);
  return read_corpus(in, std::move(split));
}

inline void write_corpus(std::ostream& out, const Corpus& c) {
  for (const auto& d : c.documents) {
    out << d.label << '\t';
    for (std::size_t k = 0; k < d.tokens.size(); ++k) out << (k ? " " : "") << d.tokens[k];
    out << '\n';
  }
}

/// Raw-text layout `<root>/<split>/<class>/<docid>.txt`, read in sorted path
/// order and passed through preprocess().
inline Corpus load_corpus_dir(const std::filesystem::path& root, const std::string& split,
                              const PreprocessOptions& opts = {}) {
  namespace fs = std::filesystem;
  const auto base = root / split;
  if (!fs::is_directory(base)) throw IoError("not a directory: " + base.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(base)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt" && entry.path().parent_path().parent_path() == base) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Corpus c;
  c.split = split;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw IoError("cannot open " + f.string());
    std::stringstream ss;
    ss << in.rdbuf();
    c.documents.push_back({f.parent_path().filename().string(), preprocess(ss.str(), opts)});
  }
  return c;
}

// One word per line; line number (from 0) is the id.
inline void write_dictionary(std::ostream& out, const Dictionary& dict) {
  for (const auto& w : dict.words()) out << w << '\n';
}

inline Dictionary read_dictionary(std::istream& in, Provenance provenance) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto w = episodeseq::detail::trim(line);
    if (!w.empty()) words.emplace_back(w);
  }
  if (!std::is_sorted(words.begin(), words.end()) ||
      std::adjacent_find(words.begin(), words.end()) != words.end()) {
    throw FormatError("dictionary words must be sorted and unique");
  }
  return Dictionary(std::move(words), provenance);
}

inline constexpr std::string_view kMetricsHeader = "dictionary,classifier,accuracy,macro_f";

inline void write_metrics_row(std::ostream& out, std::string_view dictionary, std::string_view classifier,
                              const Metrics& m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f", m.accuracy, m.macro_f);
  out << dictionary << ',' << classifier << ',' << buf << '\n';
}

}  // namespace episodeseq::text
