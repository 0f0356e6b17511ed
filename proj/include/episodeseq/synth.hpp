#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "episodeseq/error.hpp"
#include "episodeseq/textpipe.hpp"

namespace episodeseq::synth {

// Synthetic corpora with known structure. Everything flows from one
// std::mt19937_64 seeded by the caller.

/// A fixed-interval pattern expressed in words, e.g. {"pa1","pa2","pa3"} with
/// gaps {2,1}.
struct WordPattern {
  std::vector<std::string> words;
  std::vector<Time> gaps;

  Time span() const {
    Time s = 0;
    for (auto g : gaps) s += g;
    return s;
  }

  std::string format() const {
    std::string out = words.front();
    for (std::size_t k = 0; k < gaps.size(); ++k) out += " -" + std::to_string(gaps[k]) + "-> " + words[k + 1];
    return out;
  }
};

struct PlantedOptions {
  std::size_t documents = 200;
  std::size_t patterns = 5;
  std::size_t pattern_size = 3;
  std::size_t occurrences_per_doc = 4;  // each picks a pattern uniformly
  double noise_fraction = 0.3;          // share of tokens drawn from the noise vocabulary
  std::size_t noise_vocabulary = 400;
  Time max_pattern_gap = 2;
  std::uint64_t seed = 20240601;
};

struct PlantedCorpus {
  text::Corpus corpus;
  std::vector<WordPattern> patterns;
  std::vector<std::size_t> occurrences;  // planted count per pattern
  std::size_t noise_tokens = 0;
  std::size_t total_tokens = 0;
};

namespace detail {

inline std::string numbered(const std::string& prefix, std::size_t k, int width) {
  std::string n = std::to_string(k);
  if (static_cast<int>(n.size()) < width) n.insert(0, static_cast<std::size_t>(width) - n.size(), '0');
  return prefix + n;
}

// Lays out `blocks` (each a pattern occurrence with holes) in random order with
// `extra` noise tokens scattered between them; holes and extras are filled
// from the noise vocabulary.
template <class Rng>
std::vector<std::string> layout(const std::vector<const WordPattern*>& blocks, std::size_t extra,
                                const std::vector<std::string>& noise, Rng& rng, std::size_t& noise_used) {
  std::uniform_int_distribution<std::size_t> pick_noise(0, noise.size() - 1);
  // Items: block index, or npos for a single noise token.
  std::vector<std::size_t> items;
  for (std::size_t b = 0; b < blocks.size(); ++b) items.push_back(b);
  items.insert(items.end(), extra, std::string::npos);
  std::shuffle(items.begin(), items.end(), rng);

  std::vector<std::string> doc;
  for (auto it : items) {
    if (it == std::string::npos) {
      doc.push_back(noise[pick_noise(rng)]);
      ++noise_used;
      continue;
    }
    const auto& p = *blocks[it];
    const std::size_t base = doc.size();
    doc.resize(base + static_cast<std::size_t>(p.span()) + 1);
    std::size_t pos = base;
    doc[pos] = p.words[0];
    for (std::size_t k = 0; k < p.gaps.size(); ++k) {
      pos += static_cast<std::size_t>(p.gaps[k]);
      doc[pos] = p.words[k + 1];
    }
    for (std::size_t k = base; k < doc.size(); ++k) {
      if (doc[k].empty()) {
        doc[k] = noise[pick_noise(rng)];
        ++noise_used;
      }
    }
  }
  return doc;
}

}  // namespace detail

/// Documents built from planted fixed-interval patterns over a private
/// vocabulary, interleaved with uniform noise words from a disjoint vocabulary.
/// Extra noise tokens are added per document until the noise share reaches
/// `noise_fraction`.
inline PlantedCorpus planted_corpus(const PlantedOptions& opts = {}) {
  if (opts.patterns == 0 || opts.pattern_size == 0) throw ValidationError("need at least one planted pattern");
  if (opts.noise_vocabulary == 0) throw ValidationError("noise vocabulary is empty");
  if (!(opts.noise_fraction >= 0.0 && opts.noise_fraction < 1.0)) throw ValidationError("noise fraction out of range");
  if (opts.max_pattern_gap < 1) throw ValidationError("pattern gap must be >= 1");

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Time> gap(1, opts.max_pattern_gap);

  PlantedCorpus out;
  for (std::size_t p = 0; p < opts.patterns; ++p) {
    WordPattern wp;
    for (std::size_t k = 0; k < opts.pattern_size; ++k) {
      wp.words.push_back("pat" + std::string(1, static_cast<char>('a' + p % 26)) + std::to_string(p / 26) +
                         std::string(1, static_cast<char>('a' + k)));
    }
    for (std::size_t k = 1; k < opts.pattern_size; ++k) wp.gaps.push_back(gap(rng));
    out.patterns.push_back(std::move(wp));
  }
  std::vector<std::string> noise;
  for (std::size_t k = 0; k < opts.noise_vocabulary; ++k) noise.push_back(detail::numbered("noise", k, 4));

  out.occurrences.assign(opts.patterns, 0);
  std::uniform_int_distribution<std::size_t> pick_pattern(0, opts.patterns - 1);
  for (std::size_t d = 0; d < opts.documents; ++d) {
    std::vector<const WordPattern*> blocks;
    std::size_t planted_tokens = 0, holes = 0;
    for (std::size_t k = 0; k < opts.occurrences_per_doc; ++k) {
      const auto p = pick_pattern(rng);
      ++out.occurrences[p];
      blocks.push_back(&out.patterns[p]);
      planted_tokens += out.patterns[p].words.size();
      holes += static_cast<std::size_t>(out.patterns[p].span()) + 1 - out.patterns[p].words.size();
    }
    // noise / (noise + planted) >= fraction
    const auto wanted = static_cast<std::size_t>(
        std::ceil(opts.noise_fraction * static_cast<double>(planted_tokens) / (1.0 - opts.noise_fraction)));
    const std::size_t extra = wanted > holes ? wanted - holes : 0;
    std::size_t used = 0;
    auto tokens = detail::layout(blocks, extra, noise, rng, used);
    out.noise_tokens += used;
    out.total_tokens += tokens.size();
    out.corpus.documents.push_back({"planted", std::move(tokens)});
  }
  out.corpus.split = "train";
  return out;
}

struct MiniCorpusOptions {
  std::size_t train_per_class = 120;
  std::size_t test_per_class = 60;
  std::size_t phrases_per_class = 4;
  std::size_t shared_phrases = 2;
  std::size_t noise_vocabulary = 3000;
  std::size_t noise_per_doc = 14;
  std::size_t min_phrases_per_doc = 1;
  std::size_t max_phrases_per_doc = 3;
  double crossover = 0.1;  // chance a phrase is drawn from the other class
  std::uint64_t seed = 7;
};

struct MiniCorpus {
  text::Corpus train;
  text::Corpus test;
};

/// Two classes ("pos", "neg"), each with its own characteristic 3-word
/// phrases, plus phrases common to both and a large, mostly rare noise
/// vocabulary.
inline MiniCorpus mini_corpus(const MiniCorpusOptions& opts = {}) {
  if (opts.min_phrases_per_doc > opts.max_phrases_per_doc) throw ValidationError("phrase bounds inverted");
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Time> gap(1, 2);

  auto make = [&](const std::string& prefix, std::size_t count) {
    std::vector<WordPattern> v;
    for (std::size_t p = 0; p < count; ++p) {
      WordPattern wp;
      for (char k = 'a'; k < 'd'; ++k) wp.words.push_back(prefix + std::to_string(p) + k);
      wp.gaps = {gap(rng), gap(rng)};
      v.push_back(std::move(wp));
    }
    return v;
  };
  const std::vector<std::vector<WordPattern>> own = {make("pos", opts.phrases_per_class),
                                                     make("neg", opts.phrases_per_class)};
  const auto common = make("com", opts.shared_phrases);
  std::vector<std::string> noise;
  for (std::size_t k = 0; k < opts.noise_vocabulary; ++k) noise.push_back(detail::numbered("w", k, 4));

  std::uniform_int_distribution<std::size_t> n_phrases(opts.min_phrases_per_doc, opts.max_phrases_per_doc);
  std::bernoulli_distribution cross(opts.crossover);
  std::bernoulli_distribution use_common(0.3);

  auto document = [&](std::size_t cls) {
    std::vector<const WordPattern*> blocks;
    const auto n = n_phrases(rng);
    for (std::size_t k = 0; k < n; ++k) {
      if (!common.empty() && use_common(rng)) {
        blocks.push_back(&common[std::uniform_int_distribution<std::size_t>(0, common.size() - 1)(rng)]);
        continue;
      }
      const auto& pool = own[cross(rng) ? 1 - cls : cls];
      blocks.push_back(&pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    }
    std::size_t used = 0;
    // own[0] is "pos", own[1] is "neg".
    return text::Document{cls == 0 ? "pos" : "neg", detail::layout(blocks, opts.noise_per_doc, noise, rng, used)};
  };

  MiniCorpus out;
  out.train.split = "train";
  out.test.split = "test";
  for (std::size_t k = 0; k < opts.train_per_class; ++k)
    for (std::size_t c = 0; c < 2; ++c) out.train.documents.push_back(document(c));
  for (std::size_t k = 0; k < opts.test_per_class; ++k)
    for (std::size_t c = 0; c < 2; ++c) out.test.documents.push_back(document(c));
  return out;
}

}  // namespace episodeseq::synth
