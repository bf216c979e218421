#include "eeftc/eef.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eeftc/error.hpp"

namespace eeftc {

namespace {

// Gradient threshold below which an interior bisection may stop once the
// bracket is narrower than the requested tolerance.
constexpr double kStationarityTolerance = 1e-9;

}  // namespace

double fit_theta(const Eigen::Ref<const Eigen::VectorXd>& beta, const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                 const Eigen::Ref<const Eigen::VectorXd>& z_bar, double l_bar, const ThetaDomain& domain) {
  if (!(l_bar > 0.0)) throw Error(ErrorCode::InvalidArgument, "mean document length must be positive");
  if (!(domain.min >= 0.0) || !(domain.max >= domain.min) || !std::isfinite(domain.max))
    throw Error(ErrorCode::InvalidArgument, "theta domain must satisfy 0 <= min <= max < inf");
  if (!(domain.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta tolerance must be positive");
  if (z_bar.size() != beta.size()) throw Error(ErrorCode::InvalidArgument, "z_bar and beta lengths differ");

  if ((beta.array() == 0.0).all()) return domain.min;

  const double target = z_bar.dot(beta);
  const auto slope = [&](double theta) { return target - cumulant_k1_derivative(theta, l_bar, beta, reduced_ref); };

  if (slope(domain.min) <= 0.0) return domain.min;
  if (slope(domain.max) >= 0.0) return domain.max;

  double lo = domain.min, hi = domain.max;
  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    const double g = slope(mid);
    if (hi - lo <= domain.tol && std::abs(g) <= kStationarityTolerance) return mid;
    if (g > 0.0)
      lo = mid;
    else if (g < 0.0)
      hi = mid;
    else
      return mid;
  }
}

double eef_score(const EefClassParams& params, const Eigen::Ref<const Eigen::VectorXd>& z, double length) {
  return params.theta * z.dot(params.beta) - cumulant_k1(params.theta, length, params.beta, params.reduced_ref) +
         params.log_prior;
}

std::vector<double> EefModel::thetas() const {
  std::vector<double> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back(c.theta);
  return out;
}

EefModel fit_eef(const MultinomialModel& model, const FeatureSelection& selection, const LabeledCorpus& corpus,
                 const ThetaDomain& domain) {
  const Index n = model.num_classes();
  if (selection.num_classes() != n || corpus.num_classes() != n || corpus.dim() != model.dim())
    throw Error(ErrorCode::InvalidArgument, "model, selection and corpus disagree on shape");

  const Index k = selection.k();
  std::vector<Eigen::VectorXd> z_sum(static_cast<std::size_t>(n), Eigen::VectorXd::Zero(k));
  std::vector<double> l_sum(static_cast<std::size_t>(n), 0.0);
  for (const auto& doc : corpus.documents) {
    const Index cls = doc.label.value();
    z_sum[static_cast<std::size_t>(cls)] += selection.reduce(cls, doc).head(k);
    l_sum[static_cast<std::size_t>(cls)] += static_cast<double>(doc.length);
  }

  EefModel eef{selection, {}, {}, {}};
  eef.classes.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (l_sum[idx] == 0.0)
      throw Error(ErrorCode::DegenerateClass, "class '" + corpus.class_names[idx] + "' has zero training length");
    const auto docs = static_cast<double>(corpus.class_doc_counts[idx]);
    Eigen::VectorXd z_bar = z_sum[idx] / docs;
    const double l_bar = l_sum[idx] / docs;

    EefClassParams params;
    params.reduced_ref = selection.reduced_ref(i);
    params.beta = beta_vector(selection.reduced_class(i), params.reduced_ref);
    params.theta = fit_theta(params.beta, params.reduced_ref, z_bar, l_bar, domain);
    params.log_prior = std::log(model.priors[i]);
    eef.classes.push_back(std::move(params));
    eef.z_bar.push_back(std::move(z_bar));
    eef.l_bar.push_back(l_bar);
  }
  return eef;
}

EefModel with_pinned_theta(EefModel model, double theta) {
  for (auto& c : model.classes) c.theta = theta;
  return model;
}

Eigen::VectorXd eef_scores(const EefModel& model, const SparseDocument& doc) {
  const Index n = model.num_classes();
  const Index k = model.selection.k();
  const auto length = static_cast<double>(doc.length);
  Eigen::VectorXd scores(n);
  for (Index i = 0; i < n; ++i) {
    const Eigen::VectorXd z = model.selection.reduce(i, doc);
    scores[i] = eef_score(model.classes[static_cast<std::size_t>(i)], z.head(k), length);
  }
  return scores;
}

Index classify(const EefModel& model, const SparseDocument& doc) { return argmax_lowest(eef_scores(model, doc)); }

Index argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  Index best = 0;
  for (Index i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace eeftc
