#pragma once

#include <vector>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"
#include "eeftc/features.hpp"
#include "eeftc/model.hpp"

namespace eeftc {

/// PDF-projection rule on reduced features: per class the K+1 log ratios
/// ln(p'_{i,k} / p'_{0,k}) and the log prior.
struct PptModel {
  FeatureSelection selection;
  std::vector<Eigen::VectorXd> log_ratio;
  Eigen::VectorXd log_priors;

  Index num_classes() const { return log_priors.size(); }
};

PptModel fit_ppt(const MultinomialModel& model, const FeatureSelection& selection);

/// sum_{k=1}^{K+1} z_k ln(p'_{i,k} / p'_{0,k}) + ln p(c_i); `z` includes the
/// aggregated cell.
double ppt_score(const PptModel& model, Index cls, const Eigen::Ref<const Eigen::VectorXd>& z);
Eigen::VectorXd ppt_scores(const PptModel& model, const SparseDocument& doc);
Index ppt_classify(const PptModel& model, const SparseDocument& doc);

/// Multinomial naive Bayes on a common feature subset; the coefficient
/// ln(l! / prod z_k!) is dropped since it is the same for every class.
struct MnbModel {
  FeatureSelection selection;
  Eigen::MatrixXd log_cells;  // N x (K+1)
  Eigen::VectorXd log_priors;

  Index num_classes() const { return log_priors.size(); }
};

/// Throws InvalidMode unless `selection` is common.
MnbModel fit_mnb(const MultinomialModel& model, const FeatureSelection& selection);

Eigen::VectorXd mnb_scores(const MnbModel& model, const SparseDocument& doc);
Index mnb_classify(const MnbModel& model, const SparseDocument& doc);

}  // namespace eeftc
