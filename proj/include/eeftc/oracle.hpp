#pragma once

// Brute-force ground truth for the closed forms: every multinomial outcome of
// a given length is listed with its exact probability and expectations are
// plain sums over that list.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"

namespace eeftc::oracle {

inline constexpr std::size_t kDefaultCap = 2'000'000;

/// One row per outcome, lexicographically ascending; probabilities are exact
/// multinomial pmf values computed in log space.
struct OutcomeTable {
  Eigen::MatrixXi outcomes;
  Eigen::VectorXd log_probs;
  Eigen::VectorXd probs;

  Index size() const { return outcomes.rows(); }
};

/// C(length + cells - 1, cells - 1), saturating at SIZE_MAX.
std::size_t outcome_count(Index cells, int length);

/// Throws TooLarge when the outcome count exceeds `cap`.
OutcomeTable enumerate(const Eigen::Ref<const Eigen::VectorXd>& cells, int length, std::size_t cap = kDefaultCap);

/// ln p(x | cells) including the multinomial coefficient; -inf when a count
/// falls on a zero cell.
double multinomial_log_pmf(const Eigen::Ref<const Eigen::VectorXd>& cells, const Eigen::Ref<const Eigen::VectorXi>& counts);

/// ln E_ref[exp(theta sum_{k<=K} z_k beta_k)] over all length-l outcomes of
/// the K+1 reference cells.
double exact_cumulant(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref, const Eigen::Ref<const Eigen::VectorXd>& beta,
                      double theta, int length, std::size_t cap = kDefaultCap);

/// E[sum_k z_k beta_k] under the embedded pmf exp(theta T - K) p(z | ref).
double exact_embedded_moment(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                             const Eigen::Ref<const Eigen::VectorXd>& beta, double theta, int length,
                             std::size_t cap = kDefaultCap);

/// E[z] (all K+1 cells) under the embedded pmf.
Eigen::VectorXd exact_embedded_mean_counts(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref,
                                           const Eigen::Ref<const Eigen::VectorXd>& beta, double theta, int length,
                                           std::size_t cap = kDefaultCap);

/// sum_z exp(theta T(z) - log_normalizer) p(z | ref); 1 when `log_normalizer`
/// is the true cumulant.
double embedded_mass(const Eigen::Ref<const Eigen::VectorXd>& reduced_ref, const Eigen::Ref<const Eigen::VectorXd>& beta,
                     double theta, int length, double log_normalizer, std::size_t cap = kDefaultCap);

/// P(z = reduction of x) under the D-cell multinomial `cells`, summed over
/// every D-cell outcome with the same selected counts.
double marginal_probability(const Eigen::Ref<const Eigen::VectorXd>& cells, const std::vector<Index>& indices,
                            const Eigen::Ref<const Eigen::VectorXi>& x, std::size_t cap = kDefaultCap);

/// Raw-space MAP decision under the projected densities
///   p(x | c0) p(z_i | c_i) / p(z_i | c0),
/// all three obtained by enumeration over the D cells.
Index ppt_bayes_decision(const Eigen::Ref<const Eigen::MatrixXd>& cells, const Eigen::Ref<const Eigen::VectorXd>& priors,
                         const std::vector<std::vector<Index>>& indices, const Eigen::Ref<const Eigen::VectorXi>& x,
                         std::size_t cap = kDefaultCap);

/// MAP decision under known D-cell class multinomials.
Index bayes_classify(const Eigen::Ref<const Eigen::MatrixXd>& cells, const Eigen::Ref<const Eigen::VectorXd>& priors,
                     const SparseDocument& doc);

}  // namespace eeftc::oracle
