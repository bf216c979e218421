#include "eeftc/baselines.hpp"

#include <cmath>

#include "eeftc/eef.hpp"
#include "eeftc/error.hpp"

namespace eeftc {

namespace {

Eigen::VectorXd log_priors_of(const MultinomialModel& model) { return model.priors.array().log().matrix(); }

}  // namespace

PptModel fit_ppt(const MultinomialModel& model, const FeatureSelection& selection) {
  if (selection.num_classes() != model.num_classes())
    throw Error(ErrorCode::InvalidArgument, "selection does not match the model");
  PptModel ppt{selection, {}, log_priors_of(model)};
  for (Index i = 0; i < model.num_classes(); ++i) {
    const auto& cls = selection.reduced_class(i);
    const auto& ref = selection.reduced_ref(i);
    if ((cls.array() <= 0.0).any() || (ref.array() <= 0.0).any())
      throw Error(ErrorCode::NonpositiveCell, "PPT needs strictly positive reduced cells");
    ppt.log_ratio.push_back((cls.array() / ref.array()).log().matrix());
  }
  return ppt;
}

double ppt_score(const PptModel& model, Index cls, const Eigen::Ref<const Eigen::VectorXd>& z) {
  return z.dot(model.log_ratio[static_cast<std::size_t>(cls)]) + model.log_priors[cls];
}

Eigen::VectorXd ppt_scores(const PptModel& model, const SparseDocument& doc) {
  Eigen::VectorXd scores(model.num_classes());
  for (Index i = 0; i < model.num_classes(); ++i) scores[i] = ppt_score(model, i, model.selection.reduce(i, doc));
  return scores;
}

Index ppt_classify(const PptModel& model, const SparseDocument& doc) {
  return argmax_lowest(ppt_scores(model, doc));
}

MnbModel fit_mnb(const MultinomialModel& model, const FeatureSelection& selection) {
  if (selection.mode() != SelectionMode::common)
    throw Error(ErrorCode::InvalidMode, "naive Bayes runs on a common feature selection");
  if (selection.num_classes() != model.num_classes())
    throw Error(ErrorCode::InvalidArgument, "selection does not match the model");
  MnbModel mnb{selection, Eigen::MatrixXd(model.num_classes(), selection.k() + 1), log_priors_of(model)};
  for (Index i = 0; i < model.num_classes(); ++i)
    mnb.log_cells.row(i) = selection.reduced_class(i).array().log().matrix().transpose();
  return mnb;
}

Eigen::VectorXd mnb_scores(const MnbModel& model, const SparseDocument& doc) {
  const Eigen::VectorXd z = model.selection.reduce(0, doc);
  Eigen::VectorXd scores(model.num_classes());
  for (Index i = 0; i < model.num_classes(); ++i) {
    double s = model.log_priors[i];
    // zero counts contribute nothing, even against a zero cell
    for (Index k = 0; k < z.size(); ++k)
      if (z[k] != 0.0) s += z[k] * model.log_cells(i, k);
    scores[i] = s;
  }
  return scores;
}

Index mnb_classify(const MnbModel& model, const SparseDocument& doc) {
  return argmax_lowest(mnb_scores(model, doc));
}

}  // namespace eeftc
