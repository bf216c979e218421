#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "eeftc/baselines.hpp"
#include "eeftc/cumulant.hpp"
#include "eeftc/eef.hpp"
#include "eeftc/error.hpp"
#include "eeftc/oracle.hpp"
#include "eeftc/random.hpp"

using namespace eeftc;

namespace {

Eigen::VectorXd random_simplex(Rng& rng, Index size) {
  Eigen::VectorXd v(size);
  for (Index k = 0; k < size; ++k) v[k] = 0.05 + rng.uniform();
  return v / v.sum();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

TEST_CASE("enumerate lists a two-cell example") {
  const oracle::OutcomeTable t = oracle::enumerate(Eigen::Vector2d(0.25, 0.75), 2);
  REQUIRE(t.size() == 3);
  CHECK(t.outcomes.row(0) == Eigen::RowVector2i(0, 2));
  CHECK(t.outcomes.row(1) == Eigen::RowVector2i(1, 1));
  CHECK(t.outcomes.row(2) == Eigen::RowVector2i(2, 0));
  CHECK(t.probs[0] == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(t.probs[1] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(t.probs[2] == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("enumerate edge cases") {
  const oracle::OutcomeTable empty = oracle::enumerate(Eigen::Vector3d(0.2, 0.3, 0.5), 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty.outcomes.row(0).sum() == 0);
  CHECK(empty.probs[0] == 1.0);

  const oracle::OutcomeTable point = oracle::enumerate(Eigen::Vector2d(1.0, 0.0), 3);
  REQUIRE(point.size() == 4);
  CHECK(point.probs.sum() == doctest::Approx(1.0));
  CHECK(point.probs[3] == 1.0);
  CHECK(point.log_probs[0] == -std::numeric_limits<double>::infinity());

  try {
    oracle::enumerate(Eigen::VectorXd::Constant(10, 0.1), 40, 1000);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("enumeration count and mass over random cells") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Index cells = rng.uniform_int(2, 5);
    const int l = static_cast<int>(rng.uniform_int(0, 7));
    const oracle::OutcomeTable t = oracle::enumerate(random_simplex(rng, cells), l);
    CHECK(static_cast<double>(t.size()) == binomial(l + int(cells) - 1, int(cells) - 1));
    CHECK(static_cast<double>(oracle::outcome_count(cells, l)) == binomial(l + int(cells) - 1, int(cells) - 1));
    CHECK(std::abs(t.probs.sum() - 1.0) <= 1e-12);
    for (Index r = 0; r < t.size(); ++r) CHECK(t.outcomes.row(r).sum() == l);
    for (Index r = 1; r < t.size(); ++r) {
      // strictly ascending in lexicographic order
      Index j = 0;
      while (t.outcomes(r - 1, j) == t.outcomes(r, j)) ++j;
      CHECK(t.outcomes(r - 1, j) < t.outcomes(r, j));
    }
  }
}

TEST_CASE("exact cumulant hand values") {
  const Eigen::VectorXd ref = Eigen::Vector2d(0.25, 0.75), beta = Eigen::VectorXd::Constant(1, std::log(3.0));
  CHECK(oracle::exact_cumulant(ref, beta, 1.0, 2) == doctest::Approx(std::log(2.25)).epsilon(1e-14));
  CHECK(oracle::exact_cumulant(ref, beta, 0.0, 5) == doctest::Approx(0.0));
  CHECK(oracle::exact_cumulant(ref, Eigen::VectorXd::Zero(1), 0.7, 5) == doctest::Approx(0.0));
}

TEST_CASE("exact embedded moment hand values and monotonicity") {
  const Eigen::VectorXd ref = Eigen::Vector2d(0.25, 0.75), beta = Eigen::VectorXd::Constant(1, std::log(3.0));
  // theta = 0: the plain reference mean l p'_0 . beta
  CHECK(oracle::exact_embedded_moment(ref, beta, 0.0, 4) == doctest::Approx(4 * 0.25 * std::log(3.0)).epsilon(1e-14));
  // theta = 1 tilts the first cell to 1/2, so E[z_1] = 1 at l = 2
  CHECK(oracle::exact_embedded_moment(ref, beta, 1.0, 2) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const Index cells = rng.uniform_int(2, 4);
    const Eigen::VectorXd r = random_simplex(rng, cells);
    const Eigen::VectorXd b = beta_vector(random_simplex(rng, cells), r);
    const int l = static_cast<int>(rng.uniform_int(1, 5));
    double previous = -std::numeric_limits<double>::infinity();
    for (double theta = -1.0; theta <= 2.0; theta += 0.25) {
      const double m = oracle::exact_embedded_moment(r, b, theta, l);
      CHECK(m >= previous - 1e-12);
      previous = m;
    }
  }
}

TEST_CASE("closed forms agree with enumeration") {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const Index cells = rng.uniform_int(2, 5);
    const Eigen::VectorXd ref = random_simplex(rng, cells);
    const Eigen::VectorXd beta = beta_vector(random_simplex(rng, cells), ref);
    const int l = static_cast<int>(rng.uniform_int(0, 6));
    const double theta = 2.0 * rng.uniform();
    const double k1 = cumulant_k1(theta, double(l), beta, ref);
    CHECK(std::abs(k1 - oracle::exact_cumulant(ref, beta, theta, l)) <= 1e-9);
    CHECK(std::abs(cumulant_k1_derivative(theta, double(l), beta, ref) -
                   oracle::exact_embedded_moment(ref, beta, theta, l)) <= 1e-9);
    CHECK(std::abs(oracle::embedded_mass(ref, beta, theta, l, k1) - 1.0) <= 1e-9);
    const Eigen::VectorXd mean = oracle::exact_embedded_mean_counts(ref, beta, theta, l);
    CHECK(std::abs(mean.sum() - l) <= 1e-9);
    CHECK(std::abs(mean.head(cells - 1).dot(beta) - oracle::exact_embedded_moment(ref, beta, theta, l)) <= 1e-9);
  }
}

TEST_CASE("marginal probability of a reduction equals the reduced pmf") {
  Rng rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = rng.uniform_int(2, 5);
    const Eigen::VectorXd cells = random_simplex(rng, d);
    const Index k = rng.uniform_int(1, d - 1);
    std::vector<Index> all(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) all[static_cast<std::size_t>(j)] = j;
    rng.shuffle(all);
    const std::vector<Index> indices(all.begin(), all.begin() + k);
    const int l = static_cast<int>(rng.uniform_int(0, 6));
    Eigen::VectorXi x = Eigen::VectorXi::Zero(d);
    for (int t = 0; t < l; ++t) ++x[rng.uniform_int(0, d - 1)];

    Eigen::VectorXi z(k + 1);
    for (Index j = 0; j < k; ++j) z[j] = x[indices[static_cast<std::size_t>(j)]];
    z[k] = l - z.head(k).sum();
    const double expected = std::exp(oracle::multinomial_log_pmf(reduce_cells(cells, indices), z));
    CHECK(std::abs(oracle::marginal_probability(cells, indices, x) - expected) <= 1e-12);
  }
}

TEST_CASE("pinned eef reproduces the projected Bayes decision") {
  Rng rng(55);
  int cases = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = rng.uniform_int(2, 3), d = rng.uniform_int(2, 5);
    const Index k = rng.uniform_int(1, std::min<Index>(d - 1, 4));
    Eigen::MatrixXd cells(n, d);
    for (Index i = 0; i < n; ++i) cells.row(i) = random_simplex(rng, d).transpose();
    const Eigen::VectorXd priors = random_simplex(rng, n);
    const MultinomialModel model = MultinomialModel::from_cells(cells, priors);

    std::vector<std::vector<Index>> indices;
    for (Index i = 0; i < n; ++i) {
      std::vector<Index> all(static_cast<std::size_t>(d));
      for (Index j = 0; j < d; ++j) all[static_cast<std::size_t>(j)] = j;
      rng.shuffle(all);
      indices.emplace_back(all.begin(), all.begin() + k);
    }
    const FeatureSelection sel(SelectionMode::class_specific, d, indices, model);
    EefModel eef{sel, {}, {}, {}};
    for (Index i = 0; i < n; ++i)
      eef.classes.push_back({beta_vector(sel.reduced_class(i), sel.reduced_ref(i)), 1.0, sel.reduced_ref(i),
                             std::log(priors[i])});
    const PptModel ppt = fit_ppt(model, sel);

    const int l = static_cast<int>(rng.uniform_int(0, 6));
    Eigen::VectorXi x = Eigen::VectorXi::Zero(d);
    std::map<Index, std::int64_t> counts;
    for (int t = 0; t < l; ++t) {
      const Index j = rng.uniform_int(0, d - 1);
      ++x[j];
      ++counts[j];
    }
    const SparseDocument doc = SparseDocument::from_counts(counts);
    const Index bayes = oracle::ppt_bayes_decision(cells, priors, indices, x);
    CHECK(classify(eef, doc) == bayes);
    CHECK(ppt_classify(ppt, doc) == bayes);
    ++cases;
  }
  CHECK(cases == 150);
}

TEST_CASE("bayes_classify on known cells") {
  Eigen::MatrixXd cells(2, 3);
  cells << 0.7, 0.2, 0.1, 0.1, 0.2, 0.7;
  const Eigen::VectorXd priors = Eigen::Vector2d(0.5, 0.5);
  CHECK(oracle::bayes_classify(cells, priors, SparseDocument::from_counts({{0, 3}})) == 0);
  CHECK(oracle::bayes_classify(cells, priors, SparseDocument::from_counts({{2, 3}})) == 1);
  CHECK(oracle::bayes_classify(cells, priors, SparseDocument::from_counts({{1, 3}})) == 0);
  CHECK(oracle::bayes_classify(cells, Eigen::Vector2d(0.1, 0.9), SparseDocument::from_counts({{1, 3}})) == 1);
}
