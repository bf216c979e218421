#include "eeftc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "eeftc/baselines.hpp"
#include "eeftc/eef.hpp"
#include "eeftc/oracle.hpp"
#include "eeftc/random.hpp"

namespace eeftc {

namespace {

Eigen::VectorXd random_simplex(Rng& rng, Index size) {
  Eigen::VectorXd v(size);
  for (Index k = 0; k < size; ++k) v[k] = 0.05 + rng.uniform();
  return v / v.sum();
}

std::vector<Index> random_subset(Rng& rng, Index dim, Index k) {
  std::vector<Index> all(static_cast<std::size_t>(dim));
  std::iota(all.begin(), all.end(), Index{0});
  rng.shuffle(all);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

}  // namespace

VerificationSummary run_verification(std::uint64_t seed, int cases) {
  Rng rng(seed);
  VerificationSummary s;
  s.cases = cases;
  constexpr double h = 1e-5;

  for (int c = 0; c < cases; ++c) {
    const Index d = rng.uniform_int(2, 5);
    const Index k = rng.uniform_int(1, std::min<Index>(d - 1, 4));
    const Index n = rng.uniform_int(2, 3);
    const int length = static_cast<int>(rng.uniform_int(0, 6));
    const double theta = 2.0 * rng.uniform();

    Eigen::MatrixXd cells(n, d);
    for (Index i = 0; i < n; ++i) cells.row(i) = random_simplex(rng, d).transpose();
    const MultinomialModel model = MultinomialModel::from_cells(cells, random_simplex(rng, n));
    std::vector<std::vector<Index>> lists;
    for (Index i = 0; i < n; ++i) lists.push_back(random_subset(rng, d, k));
    const FeatureSelection selection(SelectionMode::class_specific, d, lists, model);

    EefModel pinned{selection, {}, {}, {}};
    for (Index i = 0; i < n; ++i) {
      const Eigen::VectorXd& ref = selection.reduced_ref(i);
      const Eigen::VectorXd beta = beta_vector(selection.reduced_class(i), ref);
      const auto l = static_cast<double>(length);

      const double k1 = cumulant_k1(theta, l, beta, ref);
      s.cumulant = std::max(s.cumulant, std::abs(k1 - oracle::exact_cumulant(ref, beta, theta, length)));

      const double moment = oracle::exact_embedded_moment(ref, beta, theta, length);
      const double fd = (oracle::exact_cumulant(ref, beta, theta + h, length) -
                         oracle::exact_cumulant(ref, beta, theta - h, length)) / (2.0 * h);
      s.moment = std::max(s.moment, std::abs(fd - moment));
      s.derivative = std::max(s.derivative, std::abs(cumulant_k1_derivative(theta, l, beta, ref) - moment));
      s.normalization = std::max(s.normalization, std::abs(oracle::embedded_mass(ref, beta, theta, length, k1) - 1.0));

      // interior optimum: training means drawn exactly from the embedded pmf
      const int train_length = std::max(length, 1);
      const double theta_true = 0.1 + 0.8 * rng.uniform();
      const Eigen::VectorXd mean_counts = oracle::exact_embedded_mean_counts(ref, beta, theta_true, train_length);
      const Eigen::VectorXd z_bar = mean_counts.head(k);
      if (cumulant_k1_second_derivative(theta_true, static_cast<double>(train_length), beta, ref) > 1e-6) {
        const double fitted = fit_theta(beta, ref, z_bar, train_length, {0.0, 2.0, 1e-10});
        s.stationarity = std::max(
            s.stationarity,
            std::abs(cumulant_k1_derivative(fitted, static_cast<double>(train_length), beta, ref) - z_bar.dot(beta)));
      }

      pinned.classes.push_back({beta, 1.0, ref, std::log(model.priors[i])});
    }

    const PptModel ppt = fit_ppt(model, selection);
    Eigen::VectorXi x = Eigen::VectorXi::Zero(d);
    std::vector<double> cumulative(static_cast<std::size_t>(d));
    std::partial_sum(model.ref_probs.begin(), model.ref_probs.end(), cumulative.begin());
    for (int t = 0; t < length; ++t) ++x[static_cast<Index>(rng.categorical(cumulative))];
    std::map<Index, std::int64_t> counts;
    for (Index t = 0; t < d; ++t) counts[t] = x[t];
    const SparseDocument doc = SparseDocument::from_counts(counts);

    for (Index i = 0; i < n; ++i) {
      const Eigen::VectorXd z = selection.reduce(i, doc);
      const double eef = eef_score(pinned.classes[static_cast<std::size_t>(i)], z.head(k), length);
      s.ppt_identity = std::max(s.ppt_identity, std::abs(eef - ppt_score(ppt, i, z)));
    }
    const Index by_eef = classify(pinned, doc);
    const Index by_ppt = ppt_classify(ppt, doc);
    const Index by_oracle = oracle::ppt_bayes_decision(model.cell_probs, model.priors, lists, x);
    if (by_eef != by_ppt || by_eef != by_oracle) ++s.decision_mismatches;
  }
  return s;
}

void print_summary(std::ostream& out, const VerificationSummary& s) {
  const auto line = [&](const char* name, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-32s %.3e\n", name, value);
    out << buf;
  };
  out << "cases: " << s.cases << '\n';
  line("max |K1 - exact cumulant|", s.cumulant);
  line("max |dK/dtheta (fd) - moment|", s.moment);
  line("max |K1' - exact moment|", s.derivative);
  line("max |embedded mass - 1|", s.normalization);
  line("max |eef(theta=1) - ppt|", s.ppt_identity);
  line("max |K1'(theta*) - mean stat|", s.stationarity);
  out << "decision mismatches: " << s.decision_mismatches << '\n';
}

}  // namespace eeftc
