#include "eeftc/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "eeftc/error.hpp"

namespace eeftc {

namespace {

constexpr double kReductionTolerance = 1e-12;

// p ln(p / q), with 0 ln 0 = 0
double plogratio(double p, double q) { return p > 0.0 ? p * std::log(p / q) : 0.0; }

}  // namespace

double information_gain(double p_term_class, double p_term, double p_class) {
  const double p_absent_class = p_class - p_term_class;
  return plogratio(p_term_class, p_term * p_class) +
         plogratio(p_absent_class, (1.0 - p_term) * p_class);
}

IgScoreTable ig_scores(const LabeledCorpus& corpus, double pseudo_count) {
  if (!(pseudo_count >= 0.0)) throw Error(ErrorCode::InvalidArgument, "IG pseudo-count must be >= 0");

  const Index n = corpus.num_classes();
  const Index d = corpus.dim();
  // document-presence counts per (class, term)
  Eigen::MatrixXd present = Eigen::MatrixXd::Zero(n, d);
  for (const auto& doc : corpus.documents)
    for (const auto& tc : doc.counts) present(doc.label.value(), tc.term) += 1.0;

  Eigen::VectorXd docs_in_class(n);
  for (Index i = 0; i < n; ++i)
    docs_in_class[i] = static_cast<double>(corpus.class_doc_counts[static_cast<std::size_t>(i)]);
  const double total_docs = docs_in_class.sum();
  const Eigen::RowVectorXd present_total = present.colwise().sum();

  IgScoreTable table{Eigen::MatrixXd::Zero(n, d)};
  const double smoothed_total = total_docs + 2.0 * static_cast<double>(n) * pseudo_count;
  for (Index k = 0; k < d; ++k) {
    if (present_total[k] == 0.0 || present_total[k] == total_docs) continue;
    const double p_term = (present_total[k] + static_cast<double>(n) * pseudo_count) / smoothed_total;
    for (Index i = 0; i < n; ++i) {
      const double p_class = (docs_in_class[i] + 2.0 * pseudo_count) / smoothed_total;
      const double p_term_class = (present(i, k) + pseudo_count) / smoothed_total;
      table.scores(i, k) = std::max(0.0, information_gain(p_term_class, p_term, p_class));
    }
  }
  return table;
}

void write_scores_csv(std::ostream& out, const IgScoreTable& table, const LabeledCorpus& corpus) {
  out << "term,class,ig\n";
  char buf[40];
  for (Index k = 0; k < table.scores.cols(); ++k) {
    for (Index i = 0; i < table.scores.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", table.scores(i, k));
      out << corpus.vocabulary.term(k) << ',' << corpus.class_names[static_cast<std::size_t>(i)] << ',' << buf
          << '\n';
    }
  }
}

const char* to_string(SelectionMode mode) {
  return mode == SelectionMode::common ? "common" : "class-specific";
}

SelectionMode parse_selection_mode(std::string_view text) {
  if (text == "class-specific") return SelectionMode::class_specific;
  if (text == "common") return SelectionMode::common;
  throw Error(ErrorCode::InvalidArgument, "unknown selection mode '" + std::string(text) + "'");
}

std::vector<Index> top_k(const Eigen::Ref<const Eigen::VectorXd>& scores, Index k) {
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  const auto by_score = [&](Index a, Index b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), by_score);
  order.resize(static_cast<std::size_t>(k));
  return order;
}

Eigen::VectorXd reduce_cells(const Eigen::Ref<const Eigen::VectorXd>& cells, std::span<const Index> indices) {
  const auto k = static_cast<Index>(indices.size());
  Eigen::VectorXd reduced(k + 1);
  std::vector<bool> taken(static_cast<std::size_t>(cells.size()), false);
  double selected = 0.0;
  for (Index j = 0; j < k; ++j) {
    const Index term = indices[static_cast<std::size_t>(j)];
    reduced[j] = cells[term];
    selected += cells[term];
    taken[static_cast<std::size_t>(term)] = true;
  }
  if (1.0 - selected < -kReductionTolerance)
    throw Error(ErrorCode::DegenerateReduction, "selected cells sum to more than 1");
  double rest = 0.0;
  for (Index t = 0; t < cells.size(); ++t)
    if (!taken[static_cast<std::size_t>(t)]) rest += cells[t];
  reduced[k] = rest;
  return reduced;
}

FeatureSelection::FeatureSelection(SelectionMode mode, Index dim, std::vector<std::vector<Index>> indices,
                                   const MultinomialModel& model)
    : mode_(mode), dim_(dim), indices_(std::move(indices)) {
  const Index n = model.num_classes();
  if (model.dim() != dim) throw Error(ErrorCode::InvalidArgument, "selection and model dimensions differ");
  const std::size_t expected_lists = mode == SelectionMode::common ? 1 : static_cast<std::size_t>(n);
  if (indices_.size() != expected_lists)
    throw Error(ErrorCode::InvalidArgument, "wrong number of index lists for selection mode");
  k_ = static_cast<Index>(indices_.front().size());
  if (k_ < 1 || k_ >= dim)
    throw Error(ErrorCode::InvalidK, "K = " + std::to_string(k_) + " outside [1, " + std::to_string(dim - 1) + "]");

  slots_.reserve(indices_.size());
  for (const auto& list : indices_) {
    if (static_cast<Index>(list.size()) != k_) throw Error(ErrorCode::InvalidK, "index lists differ in length");
    std::vector<Index> slot(static_cast<std::size_t>(dim), -1);
    for (std::size_t j = 0; j < list.size(); ++j) {
      const Index term = list[j];
      if (term < 0 || term >= dim) throw Error(ErrorCode::InvalidArgument, "selected term out of range");
      if (slot[static_cast<std::size_t>(term)] != -1)
        throw Error(ErrorCode::InvalidArgument, "duplicate selected term");
      slot[static_cast<std::size_t>(term)] = static_cast<Index>(j);
    }
    slots_.push_back(std::move(slot));
  }

  for (Index i = 0; i < n; ++i) {
    const auto& list = this->indices(i);
    reduced_class_.push_back(reduce_cells(model.cell_probs.row(i).transpose(), list));
    reduced_ref_.push_back(reduce_cells(model.ref_probs, list));
  }
}

const std::vector<Index>& FeatureSelection::indices(Index cls) const {
  return mode_ == SelectionMode::common ? indices_.front() : indices_[static_cast<std::size_t>(cls)];
}

const std::vector<Index>& FeatureSelection::slots(Index cls) const {
  return mode_ == SelectionMode::common ? slots_.front() : slots_[static_cast<std::size_t>(cls)];
}

Eigen::VectorXd FeatureSelection::reduce(Index cls, const SparseDocument& doc) const {
  const auto& slot = slots(cls);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(k_ + 1);
  std::int64_t selected = 0;
  for (const auto& tc : doc.counts) {
    if (tc.term < 0 || tc.term >= dim_) continue;
    const Index j = slot[static_cast<std::size_t>(tc.term)];
    if (j < 0) continue;
    z[j] = static_cast<double>(tc.count);
    selected += tc.count;
  }
  z[k_] = static_cast<double>(doc.length - selected);
  return z;
}

FeatureSelection select_features(const IgScoreTable& table, const MultinomialModel& model, Index k,
                                 SelectionMode mode) {
  const Index d = model.dim();
  if (k < 1 || k >= d)
    throw Error(ErrorCode::InvalidK, "K = " + std::to_string(k) + " outside [1, " + std::to_string(d - 1) + "]");
  if (table.scores.rows() != model.num_classes() || table.scores.cols() != d)
    throw Error(ErrorCode::InvalidArgument, "score table does not match the model");

  std::vector<std::vector<Index>> indices;
  if (mode == SelectionMode::common) {
    const Eigen::VectorXd global = table.scores.colwise().sum().transpose();
    indices.push_back(top_k(global, k));
  } else {
    for (Index i = 0; i < model.num_classes(); ++i) indices.push_back(top_k(table.scores.row(i).transpose(), k));
  }
  return FeatureSelection(mode, d, std::move(indices), model);
}

}  // namespace eeftc
