#include "eeftc/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eeftc/error.hpp"

namespace eeftc::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_reduced(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref, const Eigen::Ref<const Eigen::VectorXd>& beta) {
  if (reduced_ref.size() != beta.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "reference must have one more cell than beta");
}

// Statistic T(z) = sum_{k<K} z_k beta_k for every outcome row.
Eigen::VectorXd statistic(const OutcomeTable& table, const Eigen::Ref<const Eigen::VectorXd>& beta) {
  const Index k = beta.size();
  return table.outcomes.leftCols(k).cast<double>() * beta;
}

// Shifted log weights log p(z) + theta T(z) and their max.
Eigen::VectorXd tilted(const OutcomeTable& table, const Eigen::VectorXd& stat, double theta, double& top) {
  Eigen::VectorXd w(table.size());
  top = kNegInf;
  for (Index r = 0; r < table.size(); ++r) {
    w[r] = table.log_probs[r] == kNegInf ? kNegInf : table.log_probs[r] + theta * stat[r];
    top = std::max(top, w[r]);
  }
  return w;
}

}  // namespace

std::size_t outcome_count(Index cells, int length) {
  if (cells < 1 || length < 0) return 0;
  // C(length + cells - 1, cells - 1) built incrementally; each partial product
  // is itself a binomial coefficient, so the division is exact.
  std::size_t value = 1;
  const auto n = static_cast<std::size_t>(length) + static_cast<std::size_t>(cells) - 1;
  const auto r = static_cast<std::size_t>(cells) - 1;
  for (std::size_t j = 1; j <= r; ++j) {
    const std::size_t numer = n - r + j;
    if (value > std::numeric_limits<std::size_t>::max() / numer) return std::numeric_limits<std::size_t>::max();
    value = value * numer / j;
  }
  return value;
}

double multinomial_log_pmf(const Eigen::Ref<const Eigen::VectorXd>& cells, const Eigen::Ref<const Eigen::VectorXi>& counts) {
  if (cells.size() != counts.size()) throw Error(ErrorCode::InvalidArgument, "cells and counts differ in length");
  double value = std::lgamma(static_cast<double>(counts.sum()) + 1.0);
  for (Index k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    if (cells[k] <= 0.0) return kNegInf;
    value += counts[k] * std::log(cells[k]) - std::lgamma(counts[k] + 1.0);
  }
  return value;
}

OutcomeTable enumerate(const Eigen::Ref<const Eigen::VectorXd>& cells, int length, std::size_t cap) {
  if (cells.size() < 1 || length < 0) throw Error(ErrorCode::InvalidArgument, "need >= 1 cell and length >= 0");
  const std::size_t count = outcome_count(cells.size(), length);
  if (count > cap)
    throw Error(ErrorCode::TooLarge, std::to_string(count) + " outcomes exceed the cap of " + std::to_string(cap));

  const Index m = cells.size();
  OutcomeTable table;
  table.outcomes.resize(static_cast<Index>(count), m);
  table.log_probs.resize(static_cast<Index>(count));

  Eigen::VectorXi current = Eigen::VectorXi::Zero(m);
  Index row = 0;
  // depth-first over the leading coordinates, ascending, so rows come out in
  // lexicographic order
  auto fill = [&](auto&& self, Index pos, int remaining) -> void {
    if (pos == m - 1) {
      current[pos] = remaining;
      table.outcomes.row(row) = current.transpose();
      table.log_probs[row] = multinomial_log_pmf(cells, current);
      ++row;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      current[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  fill(fill, 0, length);

  table.probs = table.log_probs.array().exp().matrix();
  return table;
}

double exact_cumulant(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref, const Eigen::Ref<const Eigen::VectorXd>& beta,
                      double theta, int length, std::size_t cap) {
  check_reduced(reduced_ref, beta);
  const OutcomeTable table = enumerate(reduced_ref, length, cap);
  double top = 0.0;
  const Eigen::VectorXd w = tilted(table, statistic(table, beta), theta, top);
  return top + std::log((w.array() - top).exp().sum());
}

double exact_embedded_moment(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                             const Eigen::Ref<const Eigen::VectorXd>& beta, double theta, int length, std::size_t cap) {
  check_reduced(reduced_ref, beta);
  const OutcomeTable table = enumerate(reduced_ref, length, cap);
  const Eigen::VectorXd stat = statistic(table, beta);
  double top = 0.0;
  const Eigen::VectorXd w = (tilted(table, stat, theta, top).array() - top).exp().matrix();
  return w.dot(stat) / w.sum();
}

Eigen::VectorXd exact_embedded_mean_counts(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                                           const Eigen::Ref<const Eigen::VectorXd>& beta, double theta, int length,
                                           std::size_t cap) {
  check_reduced(reduced_ref, beta);
  const OutcomeTable table = enumerate(reduced_ref, length, cap);
  double top = 0.0;
  const Eigen::VectorXd w = (tilted(table, statistic(table, beta), theta, top).array() - top).exp().matrix();
  return table.outcomes.cast<double>().transpose() * w / w.sum();
}

double embedded_mass(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref, const Eigen::Ref<const Eigen::VectorXd>& beta,
                     double theta, int length, double log_normalizer, std::size_t cap) {
  check_reduced(reduced_ref, beta);
  const OutcomeTable table = enumerate(reduced_ref, length, cap);
  const Eigen::VectorXd stat = statistic(table, beta);
  double mass = 0.0;
  for (Index r = 0; r < table.size(); ++r) {
    if (table.log_probs[r] == kNegInf) continue;
    mass += std::exp(theta * stat[r] - log_normalizer + table.log_probs[r]);
  }
  return mass;
}

namespace {

bool same_reduction(const Eigen::Ref<const Eigen::VectorXi>& a, const Eigen::Ref<const Eigen::VectorXi>& b,
                    const std::vector<Index>& indices) {
  for (const Index k : indices)
    if (a[k] != b[k]) return false;
  return true;
}

// ln P(reduction of x): mass of every enumerated outcome sharing x's
// selected counts.
double log_marginal(const OutcomeTable& table, const std::vector<Index>& indices, const Eigen::Ref<const Eigen::VectorXi>& x) {
  double mass = 0.0;
  for (Index r = 0; r < table.size(); ++r) {
    const Eigen::VectorXi row = table.outcomes.row(r).transpose();
    if (same_reduction(row, x, indices)) mass += table.probs[r];
  }
  return std::log(mass);
}

}  // namespace

double marginal_probability(const Eigen::Ref<const Eigen::VectorXd>& cells, const std::vector<Index>& indices,
                            const Eigen::Ref<const Eigen::VectorXi>& x, std::size_t cap) {
  if (x.size() != cells.size()) throw Error(ErrorCode::InvalidArgument, "x and cells differ in length");
  const OutcomeTable table = enumerate(cells, x.sum(), cap);
  return std::exp(log_marginal(table, indices, x));
}

Index ppt_bayes_decision(const Eigen::Ref<const Eigen::MatrixXd>& cells, const Eigen::Ref<const Eigen::VectorXd>& priors,
                         const std::vector<std::vector<Index>>& indices, const Eigen::Ref<const Eigen::VectorXi>& x,
                         std::size_t cap) {
  const Index n = cells.rows();
  if (priors.size() != n || static_cast<Index>(indices.size()) != n || x.size() != cells.cols())
    throw Error(ErrorCode::InvalidArgument, "inconsistent shapes for the Bayes oracle");

  Eigen::VectorXd ref = Eigen::VectorXd::Zero(cells.cols());
  for (Index i = 0; i < n; ++i) ref += priors[i] * cells.row(i).transpose();

  const int length = x.sum();
  const OutcomeTable ref_table = enumerate(ref, length, cap);
  const double log_ref_x = multinomial_log_pmf(ref, x);

  Index best = 0;
  double best_score = kNegInf;
  for (Index i = 0; i < n; ++i) {
    const auto& list = indices[static_cast<std::size_t>(i)];
    const OutcomeTable class_table = enumerate(cells.row(i).transpose(), length, cap);
    const double score =
        log_ref_x + log_marginal(class_table, list, x) - log_marginal(ref_table, list, x) + std::log(priors[i]);
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

Index bayes_classify(const Eigen::Ref<const Eigen::MatrixXd>& cells, const Eigen::Ref<const Eigen::VectorXd>& priors,
                     const SparseDocument& doc) {
  Index best = 0;
  double best_score = kNegInf;
  for (Index i = 0; i < cells.rows(); ++i) {
    double score = std::log(priors[i]);
    for (const auto& tc : doc.counts) {
      const double p = cells(i, tc.term);
      score += p > 0.0 ? static_cast<double>(tc.count) * std::log(p) : kNegInf;
    }
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

}  // namespace eeftc::oracle
