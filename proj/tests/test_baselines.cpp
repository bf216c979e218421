#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eeftc/baselines.hpp"
#include "eeftc/eef.hpp"
#include "eeftc/error.hpp"
#include "eeftc/model.hpp"
#include "eeftc/random.hpp"

using namespace eeftc;

namespace {

SparseDocument doc_of(std::map<Index, std::int64_t> counts) { return SparseDocument::from_counts(counts); }

MultinomialModel model_of(const Eigen::MatrixXd& cells, const Eigen::VectorXd& priors) {
  return MultinomialModel::from_cells(cells, priors);
}

LabeledCorpus random_corpus(Rng& rng, Index n, Index vocab) {
  std::vector<RawDocument> docs;
  std::vector<std::string> names;
  for (Index i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i));
    const auto m = rng.uniform_int(2, 8);
    for (std::int64_t j = 0; j < m; ++j) {
      std::vector<std::string> tokens;
      const auto len = rng.uniform_int(1, 15);
      // class i leans towards the terms i, i+n, i+2n, ...
      for (std::int64_t t = 0; t < len; ++t) {
        const Index w = rng.uniform() < 0.5 ? (i + n * rng.uniform_int(0, vocab / n - 1)) % vocab
                                            : rng.uniform_int(0, vocab - 1);
        tokens.push_back("w" + std::to_string(w));
      }
      docs.push_back(RawDocument::from_tokens(i, tokens));
    }
  }
  docs.push_back(RawDocument::from_tokens(0, {"w0", "w1"}));
  return build_corpus(docs, names);
}

SparseDocument random_document(Rng& rng, Index dim) {
  std::map<Index, std::int64_t> counts;
  const auto len = rng.uniform_int(0, 20);
  for (std::int64_t t = 0; t < len; ++t) ++counts[rng.uniform_int(0, dim - 1)];
  return doc_of(counts);
}

}  // namespace

TEST_CASE("mnb hand decisions") {
  Eigen::MatrixXd same(2, 2);
  same << 0.5, 0.5, 0.5, 0.5;
  {
    const MultinomialModel model = model_of(same, Eigen::Vector2d(0.3, 0.7));
    const FeatureSelection sel(SelectionMode::common, 2, {{0}}, model);
    CHECK(mnb_classify(fit_mnb(model, sel), doc_of({{0, 3}, {1, 1}})) == 1);
  }
  {
    const MultinomialModel model = model_of(same, Eigen::Vector2d(0.5, 0.5));
    const FeatureSelection sel(SelectionMode::common, 2, {{0}}, model);
    const Eigen::VectorXd s = mnb_scores(fit_mnb(model, sel), doc_of({{0, 3}, {1, 1}}));
    CHECK(s[0] == s[1]);
    CHECK(mnb_classify(fit_mnb(model, sel), doc_of({{0, 3}, {1, 1}})) == 0);
  }
  {
    Eigen::MatrixXd cells(2, 2);
    cells << 0.9, 0.1, 0.1, 0.9;
    const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.5, 0.5));
    const FeatureSelection sel(SelectionMode::common, 2, {{0}}, model);
    CHECK(mnb_classify(fit_mnb(model, sel), doc_of({{0, 5}})) == 0);
    CHECK(mnb_classify(fit_mnb(model, sel), doc_of({{1, 5}})) == 1);
  }
}

TEST_CASE("mnb refuses a class-specific selection") {
  Eigen::MatrixXd cells(2, 3);
  cells << 0.5, 0.3, 0.2, 0.2, 0.3, 0.5;
  const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.5, 0.5));
  const FeatureSelection sel(SelectionMode::class_specific, 3, {{0}, {2}}, model);
  try {
    fit_mnb(model, sel);
    FAIL("expected InvalidMode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMode);
  }
}

TEST_CASE("mnb scores equal the reduced multinomial log-likelihood up to a shared coefficient") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const LabeledCorpus corpus = random_corpus(rng, rng.uniform_int(2, 4), 12);
    const MultinomialModel model = fit_multinomial(corpus, 1.0);
    const Index k = rng.uniform_int(1, corpus.dim() - 1);
    const FeatureSelection sel = select_features(ig_scores(corpus), model, k, SelectionMode::common);
    const MnbModel mnb = fit_mnb(model, sel);
    for (int d = 0; d < 20; ++d) {
      const SparseDocument doc = random_document(rng, corpus.dim());
      const Eigen::VectorXd s = mnb_scores(mnb, doc);
      Eigen::VectorXd full(model.num_classes());
      for (Index i = 0; i < model.num_classes(); ++i) {
        const Eigen::VectorXd z = sel.reduce(i, doc);
        const Eigen::VectorXd& p = sel.reduced_class(i);
        double ll = std::lgamma(double(doc.length) + 1.0);
        for (Index j = 0; j <= k; ++j) ll += z[j] * std::log(p[j]) - std::lgamma(z[j] + 1.0);
        full[i] = ll + std::log(model.priors[i]);
      }
      // coefficient is shared, so differences between classes must agree
      const Eigen::VectorXd gap = (full - s).array() - (full - s)[0];
      CHECK(gap.cwiseAbs().maxCoeff() <= 1e-9);
      CHECK(mnb_classify(mnb, doc) == argmax_lowest(full));
    }
  }
}

TEST_CASE("ppt_score hand values") {
  Eigen::MatrixXd cells(2, 2);
  cells << 0.5, 0.5, 0.5, 0.5;
  {
    const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.5, 0.5));
    const PptModel ppt = fit_ppt(model, FeatureSelection(SelectionMode::class_specific, 2, {{0}, {1}}, model));
    CHECK(ppt_score(ppt, 0, Eigen::Vector2d(4.0, 1.0)) == std::log(0.5));
  }
  // class 0 reduced (0.5, 0.5) against reference (0.25, 0.75)
  cells << 0.5, 0.5, 0.1, 0.9;
  const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.375, 0.625));
  const PptModel ppt = fit_ppt(model, FeatureSelection(SelectionMode::class_specific, 2, {{0}, {0}}, model));
  CHECK(ppt_score(ppt, 0, Eigen::Vector2d(1.0, 1.0)) ==
        doctest::Approx(std::log(2.0) + std::log(2.0 / 3.0) + std::log(0.375)).epsilon(1e-14));
  CHECK(ppt_score(ppt, 0, Eigen::Vector2d(1.0, 1.0)) - std::log(0.375) ==
        doctest::Approx(0.28768207245178085).epsilon(1e-14));
  // linear in z
  const double base = ppt_score(ppt, 0, Eigen::Vector2d(0.0, 0.0));
  const double a = ppt_score(ppt, 0, Eigen::Vector2d(3.0, 1.0)) - base;
  const double b = ppt_score(ppt, 0, Eigen::Vector2d(1.0, 4.0)) - base;
  CHECK(ppt_score(ppt, 0, Eigen::Vector2d(4.0, 5.0)) - base == doctest::Approx(a + b).epsilon(1e-14));
}

TEST_CASE("ppt rejects a zero reduced cell") {
  Eigen::MatrixXd cells(2, 2);
  cells << 1.0, 0.0, 0.5, 0.5;
  const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.5, 0.5));
  try {
    fit_ppt(model, FeatureSelection(SelectionMode::class_specific, 2, {{0}, {0}}, model));
    FAIL("expected NonpositiveCell");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveCell);
  }
}

TEST_CASE("ppt mirror cases and the empty document") {
  Eigen::MatrixXd cells(2, 3);
  cells << 0.6, 0.1, 0.3, 0.1, 0.6, 0.3;
  const MultinomialModel model = model_of(cells, Eigen::Vector2d(0.5, 0.5));
  const PptModel ppt = fit_ppt(model, FeatureSelection(SelectionMode::class_specific, 3, {{0}, {1}}, model));
  CHECK(ppt_classify(ppt, doc_of({{0, 5}, {2, 1}})) == 0);
  CHECK(ppt_classify(ppt, doc_of({{1, 5}, {2, 1}})) == 1);
  CHECK(ppt_classify(ppt, doc_of({})) == 0);

  const MultinomialModel skewed = model_of(cells, Eigen::Vector2d(0.2, 0.8));
  const PptModel ppt2 = fit_ppt(skewed, FeatureSelection(SelectionMode::class_specific, 3, {{0}, {1}}, skewed));
  CHECK(ppt_classify(ppt2, doc_of({})) == 1);
  CHECK(ppt_scores(ppt2, doc_of({}))[1] == std::log(0.8));
}

TEST_CASE("eef pinned at theta = 1 decides exactly like ppt") {
  Rng rng(43);
  int documents = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const LabeledCorpus corpus = random_corpus(rng, rng.uniform_int(2, 4), 15);
    const MultinomialModel model = fit_multinomial(corpus, 0.5 + rng.uniform());
    const Index k = rng.uniform_int(1, corpus.dim() - 1);
    for (const auto mode : {SelectionMode::class_specific, SelectionMode::common}) {
      const FeatureSelection sel = select_features(ig_scores(corpus), model, k, mode);
      const PptModel ppt = fit_ppt(model, sel);
      const EefModel eef = with_pinned_theta(fit_eef(model, sel, corpus), 1.0);
      for (int d = 0; d < 25; ++d) {
        const SparseDocument doc = random_document(rng, corpus.dim());
        const Eigen::VectorXd a = ppt_scores(ppt, doc), b = eef_scores(eef, doc);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, a.cwiseAbs().maxCoeff()));
        CHECK(ppt_classify(ppt, doc) == classify(eef, doc));
        ++documents;
      }
    }
  }
  CHECK(documents == 2000);
}
