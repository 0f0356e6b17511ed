#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "episodeseq.hpp"

using namespace episodeseq;
using namespace episodeseq::text;
using Catch::Matchers::WithinAbs;

namespace {

Corpus corpus(std::initializer_list<std::pair<const char*, const char*>> docs) {
  Corpus c;
  for (const auto& [label, text] : docs) c.documents.push_back({label, preprocess(text, {true, 1, {}})});
  return c;
}

double norm(const FeatureMatrix::Row& row) {
  double s = 0.0;
  for (const auto& [id, w] : row) s += w * w;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("preprocessing") {
  CHECK(preprocess("The plot, a MESS!") == std::vector<std::string>{"the", "plot", "mess"});
  CHECK(preprocess("").empty());
  PreprocessOptions movie;
  CHECK(preprocess("and the", movie) == std::vector<std::string>{"and", "the"});
  PreprocessOptions stop;
  stop.stopwords = {"the"};
  CHECK(preprocess("The plot", stop) == std::vector<std::string>{"plot"});
  PreprocessOptions keep_case;
  keep_case.lowercase = false;
  CHECK(preprocess("The Plot", keep_case) == std::vector<std::string>{"The", "Plot"});
}

TEST_CASE("documents become separate sequences") {
  const auto c = corpus({{"x", "a b c d e"}, {"y", "f g h i j"}});
  const auto d = corpus_to_events(c);
  CHECK(d.sequence_count() == 2);
  for (std::size_t s = 0; s < 2; ++s) {
    REQUIRE(d.sequence(s).size() == 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(d.sequence(s)[k].time == static_cast<Time>(k + 1));
  }
  const auto one = corpus_to_events(corpus({{"x", "a b a"}}));
  const auto seq = one.sequence(0);
  REQUIRE(seq.size() == 3);
  CHECK(one.alphabet().name(seq[0].type) == "a");
  CHECK(seq[1].time == 2);
  CHECK(one.alphabet().name(seq[2].type) == "a");
  CHECK_THROWS_AS(corpus_to_events(Corpus{}), ValidationError);
}

TEST_CASE("Dictionary-II keeps words of non-singleton episodes") {
  auto ab = std::make_shared<const Alphabet>(std::vector<std::string>{"A", "B", "C", "D", "E"});
  SelectionState sel{FrequencyMode::non_overlapped, {}, EventDataset(ab, {}), 1};
  sel.selected.push_back({parse_episode("A -1-> B -2-> C", *ab), {}, 0, 1, 1});
  sel.selected.push_back({parse_episode("B -1-> D", *ab), {}, 0, 1, 1});
  sel.selected.push_back({parse_episode("E", *ab), {}, 0, 1, 1});
  CHECK(build_dictionary_II(sel).words() == std::vector<std::string>{"A", "B", "C", "D"});

  SelectionState singles{FrequencyMode::non_overlapped, {}, EventDataset(ab, {}), 1};
  singles.selected.push_back({parse_episode("E", *ab), {}, 0, 1, 1});
  CHECK(build_dictionary_II(singles).empty());
}

TEST_CASE("idf and cosine normalisation") {
  const auto c = corpus({{"x", "common rare"}, {"x", "common other"}, {"y", "common other"}});
  const auto dict = dictionary_I(c);
  const auto idf = fit_idf(c, dict);
  CHECK_THAT(idf.idf[*dict.find("common")], WithinAbs(1.0, 1e-15));
  CHECK_THAT(idf.idf[*dict.find("rare")], WithinAbs(1.0 + std::log(2.0), 1e-15));
  const auto fm = tfidf(c, dict, idf);
  for (const auto& row : fm.rows) CHECK_THAT(norm(row), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(fit_idf(c, Dictionary{}), ValidationError);
}

TEST_CASE("tf-idf ignores document order and uses training df only") {
  const auto train = corpus({{"x", "a a b"}, {"y", "b c"}, {"x", "c d d d"}});
  Corpus reversed = train;
  std::reverse(reversed.documents.begin(), reversed.documents.end());
  const auto dict = dictionary_I(train);
  const auto idf = fit_idf(train, dict);
  const auto idf_rev = fit_idf(reversed, dict);
  CHECK(idf.idf == idf_rev.idf);
  const auto a = tfidf(train, dict, idf);
  const auto b = tfidf(reversed, dict, idf_rev);
  for (std::size_t k = 0; k < train.size(); ++k) CHECK(a.rows[k] == b.rows[train.size() - 1 - k]);

  const auto test = corpus({{"x", "a unseen"}});
  const auto t = tfidf(test, dict, idf);
  REQUIRE(t.rows[0].size() == 1);
  CHECK_THAT(t.rows[0][0].second, WithinAbs(1.0, 1e-15));
}

TEST_CASE("projecting onto a smaller dictionary never grows the raw norm") {
  const auto c = corpus({{"x", "a b c a"}, {"y", "b d e"}});
  const auto full = dictionary_I(c);
  const Dictionary small({"a", "d"}, Provenance::II);
  const auto idf_full = fit_idf(c, full);
  for (const auto& doc : c.documents) {
    double all = 0.0, part = 0.0;
    std::map<std::string, double> tf;
    for (const auto& w : doc.tokens) tf[w] += 1.0;
    for (const auto& [w, n] : tf) {
      const double v = n * idf_full.idf[*full.find(w)];
      all += v * v;
      if (small.contains(w)) part += v * v;
    }
    CHECK(part <= all);
  }
}

TEST_CASE("naive Bayes") {
  const auto train = corpus({{"pos", "good great fine"}, {"pos", "great good"}, {"neg", "bad awful poor"},
                             {"neg", "poor bad"}});
  const auto dict = dictionary_I(train);
  const auto ev = classify(train, train, dict);
  CHECK(ev.metrics.accuracy == 1.0);

  const auto one = corpus({{"a", "apple"}, {"b", "banana"}});
  CHECK(classify(one, one, dictionary_I(one)).metrics.accuracy == 1.0);

  const auto test = corpus({{"pos", "good"}, {"neg", "awful"}});
  CHECK(classify(train, test, dict).metrics.accuracy == 1.0);
  CHECK_THROWS_AS(classify(train, Corpus{}, dict), ValidationError);
}

TEST_CASE("an all-zero column leaves the posterior unchanged") {
  FeatureMatrix a{{{{0, 0.5}, {1, 0.5}}, {{1, 1.0}}, {{0, 0.2}}}, 2, Weighting::tfidf_cosine};
  FeatureMatrix b = a;
  b.dimension = 3;
  const std::vector<std::uint32_t> y = {0, 1, 0};
  const auto ma = train_nb(a, y, 2);
  const auto mb = train_nb(b, y, 2);
  const FeatureMatrix::Row probe = {{0, 0.3}, {1, 0.7}};
  const auto pa = log_posterior(ma, probe);
  auto probe_b = probe;
  probe_b.push_back({2, 0.4});
  const auto pb = log_posterior(mb, probe_b);
  for (std::size_t c = 0; c < 2; ++c) CHECK_THAT(pa[c], WithinAbs(pb[c], 1e-12));
}

TEST_CASE("accuracy and macro F") {
  const std::vector<std::uint32_t> truth = {0, 0, 1, 1};
  const std::vector<std::uint32_t> constant = {0, 0, 0, 0};
  const auto m = evaluate(constant, truth);
  CHECK(m.accuracy == 0.5);
  // F1(class 0) = 2*2/(2*2+2+0) = 2/3; F1(class 1) = 0.
  CHECK_THAT(m.macro_f, WithinAbs(1.0 / 3.0, 1e-15));
  CHECK(evaluate(truth, truth).macro_f == 1.0);
  CHECK_THROWS_AS(evaluate(std::vector<std::uint32_t>{}, std::vector<std::uint32_t>{}), ValidationError);
}

TEST_CASE("corpus and dictionary files") {
  std::istringstream in("pos\tgood film\nneg\tbad film\n\n");
  const auto c = read_corpus(in);
  REQUIRE(c.size() == 2);
  CHECK(c.documents[1].tokens == std::vector<std::string>{"bad", "film"});
  std::ostringstream out;
  write_corpus(out, c);
  CHECK(out.str() == "pos\tgood film\nneg\tbad film\n");
  std::istringstream bad("no label here\n");
  CHECK_THROWS_AS(read_corpus(bad), ParseError);

  std::ostringstream dout;
  write_dictionary(dout, dictionary_I(c));
  CHECK(dout.str() == "bad\nfilm\ngood\n");
  std::istringstream din(dout.str());
  CHECK(read_dictionary(din, Provenance::II).size() == 3);
  std::istringstream unsorted("b\na\n");
  CHECK_THROWS_AS(read_dictionary(unsorted, Provenance::II), FormatError);
}

TEST_CASE("bundled mini corpus: Dictionary-II is a subset of Dictionary-I") {
  const auto train = load_corpus(std::string(EPISODESEQ_DATA_DIR) + "/mini_corpus/train.tsv", "train");
  const auto d1 = dictionary_I(train);
  const auto d2 = mine_dictionary(train).dictionary;
  CHECK_FALSE(d2.empty());
  for (const auto& w : d2.words()) CHECK(d1.contains(w));
}
