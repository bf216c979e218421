#pragma once

#include <vector>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"
#include "eeftc/cumulant.hpp"
#include "eeftc/features.hpp"
#include "eeftc/model.hpp"

namespace eeftc {

/// Search interval for the embedding parameter and the bisection tolerance.
struct ThetaDomain {
  double min = 0.0;
  double max = 1.0;
  double tol = 1e-10;
};

/// argmax over the domain of J(theta) = theta * sum_k z_bar_k beta_k - K1(theta, l_bar).
/// J is concave, so J' is bisected; a boundary is returned when J' keeps its
/// sign over the whole domain, and theta_min when beta is identically zero.
double fit_theta(const Eigen::Ref<const Eigen::VectorXd>& beta, const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                 const Eigen::Ref<const Eigen::VectorXd>& z_bar, double l_bar, const ThetaDomain& domain = {});

struct EefClassParams {
  Eigen::VectorXd beta;         // K
  double theta = 0.0;
  Eigen::VectorXd reduced_ref;  // K+1
  double log_prior = 0.0;
};

/// theta sum_k z_k beta_k - K1(theta, l) + ln p(c_i). `z` holds the K selected
/// counts; the reference log-density of the raw document is left out since it
/// is shared by every class.
double eef_score(const EefClassParams& params, const Eigen::Ref<const Eigen::VectorXd>& z, double length);

struct EefModel {
  FeatureSelection selection;
  std::vector<EefClassParams> classes;
  std::vector<Eigen::VectorXd> z_bar;  // mean selected counts per class
  std::vector<double> l_bar;           // mean document length per class

  Index num_classes() const { return static_cast<Index>(classes.size()); }
  std::vector<double> thetas() const;
};

EefModel fit_eef(const MultinomialModel& model, const FeatureSelection& selection, const LabeledCorpus& corpus,
                 const ThetaDomain& domain = {});

/// Copy of `model` with every class's theta replaced by `theta`.
EefModel with_pinned_theta(EefModel model, double theta);

Eigen::VectorXd eef_scores(const EefModel& model, const SparseDocument& doc);
Index classify(const EefModel& model, const SparseDocument& doc);

/// First index of the largest entry.
Index argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores);

}  // namespace eeftc
