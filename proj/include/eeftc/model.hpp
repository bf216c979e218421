#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"

namespace eeftc {

/// Per-class multinomial cells (N x D), class priors and the reference cells
/// p0 = cells^T * priors.
struct MultinomialModel {
  Eigen::MatrixXd cell_probs;
  Eigen::VectorXd priors;
  Eigen::VectorXd ref_probs;
  double smoothing_alpha = 0.0;

  Index num_classes() const { return cell_probs.rows(); }
  Index dim() const { return cell_probs.cols(); }

  /// Model from explicit cells and priors; validates both and derives the
  /// reference cells.
  static MultinomialModel from_cells(Eigen::MatrixXd cell_probs, Eigen::VectorXd priors,
                                     double smoothing_alpha = 0.0);
};

/// Prior-weighted mixture of the class rows: p0_k = sum_i p_{i,k} p(c_i).
template <class CellsDerived, class PriorsDerived>
Eigen::Matrix<typename CellsDerived::Scalar, Eigen::Dynamic, 1> reference_mixture(
    const Eigen::MatrixBase<CellsDerived>& cells, const Eigen::MatrixBase<PriorsDerived>& priors) {
  return cells.transpose() * priors;
}

/// Additive-smoothing estimate:
///   p_{i,k} = (n_{i,k} + alpha) / (n_i + alpha D),  p(c_i) = M_i / sum_j M_j.
MultinomialModel fit_multinomial(const LabeledCorpus& corpus, double smoothing_alpha = 1.0);

/// Per-class term totals n_{i,k} (N x D).
Eigen::MatrixXd class_term_counts(const LabeledCorpus& corpus);

/// ln p(x | c_i, l). The multinomial coefficient ln(l! / prod x_k!) is
/// included unless `include_coefficient` is false.
double log_likelihood(const MultinomialModel& model, Index cls, const SparseDocument& doc,
                      bool include_coefficient = true);

/// ln(l! / prod x_k!) via lgamma.
double log_multinomial_coefficient(const SparseDocument& doc);

/// `eef-model v1 N D alpha`, then the priors, then one row per class, all in
/// 17 significant digits.
void save_model(std::ostream& out, const MultinomialModel& model);
MultinomialModel load_model(std::istream& in);

}  // namespace eeftc
