#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"
#include "eeftc/model.hpp"

namespace eeftc {

/// IG(t_k, c_i) in nats, N x D.
struct IgScoreTable {
  Eigen::MatrixXd scores;
};

/// Presence/absence information gain from probabilities:
///   p(t,c) ln(p(t,c) / (p(t) p(c))) + p(!t,c) ln(p(!t,c) / ((1-p(t)) p(c)))
/// with 0 ln 0 = 0.
double information_gain(double p_term_class, double p_term, double p_class);

/// Document-presence IG scores. `pseudo_count` is added to each cell of the
/// 2x2 presence-by-class table (0 gives raw document frequencies). Terms
/// present in every document or in none score 0.
IgScoreTable ig_scores(const LabeledCorpus& corpus, double pseudo_count = 0.0);

/// `term,class,ig` with one row per (term, class).
void write_scores_csv(std::ostream& out, const IgScoreTable& table, const LabeledCorpus& corpus);

enum class SelectionMode { class_specific, common };

const char* to_string(SelectionMode mode);
SelectionMode parse_selection_mode(std::string_view text);

/// Indices of the k largest entries of `scores`, descending, ties to the lower
/// index.
std::vector<Index> top_k(const Eigen::Ref<const Eigen::VectorXd>& scores, Index k);

/// Selected term lists and the implied (K+1)-cell marginals. In common mode a
/// single list is shared, but reduced vectors are still stored per class.
class FeatureSelection {
 public:
  FeatureSelection(SelectionMode mode, Index dim, std::vector<std::vector<Index>> indices,
                   const MultinomialModel& model);

  SelectionMode mode() const { return mode_; }
  Index k() const { return k_; }
  Index dim() const { return dim_; }
  Index num_classes() const { return static_cast<Index>(reduced_class_.size()); }

  const std::vector<Index>& indices(Index cls) const;
  /// p'_{i,1..K+1}; the last cell aggregates every unselected term.
  const Eigen::VectorXd& reduced_class(Index cls) const { return reduced_class_[static_cast<std::size_t>(cls)]; }
  /// Reference cells reduced with class `cls`'s index list.
  const Eigen::VectorXd& reduced_ref(Index cls) const { return reduced_ref_[static_cast<std::size_t>(cls)]; }

  /// z_i with the cell K+1 count l - sum z_ik appended (length K+1).
  Eigen::VectorXd reduce(Index cls, const SparseDocument& doc) const;

 private:
  const std::vector<Index>& slots(Index cls) const;

  SelectionMode mode_;
  Index k_ = 0;
  Index dim_ = 0;
  std::vector<std::vector<Index>> indices_;
  std::vector<std::vector<Index>> slots_;
  std::vector<Eigen::VectorXd> reduced_class_;
  std::vector<Eigen::VectorXd> reduced_ref_;
};

/// (K+1)-cell marginal of `cells` on `indices`.
Eigen::VectorXd reduce_cells(const Eigen::Ref<const Eigen::VectorXd>& cells, std::span<const Index> indices);

/// Class-specific: top K of each score row. Common: top K of the column sums.
FeatureSelection select_features(const IgScoreTable& table, const MultinomialModel& model, Index k,
                                 SelectionMode mode);

}  // namespace eeftc
