#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "eeftc/corpus.hpp"
#include "eeftc/eef.hpp"
#include "eeftc/features.hpp"

namespace eeftc {

enum class ClassifierKind { eef, ppt, mnb };

const char* to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view text);

struct SweepConfig {
  std::vector<Index> k_values;
  std::vector<ClassifierKind> classifiers{ClassifierKind::eef, ClassifierKind::ppt, ClassifierKind::mnb};
  double smoothing_alpha = 1.0;
  double ig_pseudo_count = 0.0;
  ThetaDomain theta;
  /// Selection used by eef and ppt; mnb always runs on the common selection.
  SelectionMode specific_mode = SelectionMode::class_specific;
};

struct SweepRow {
  ClassifierKind classifier;
  Index k;
  double accuracy;
  double macro_f1;
  std::vector<double> thetas;  // eef only
  double wall_ms;
};

struct SweepReport {
  std::vector<std::string> class_names;
  std::vector<SweepRow> rows;
};

struct Metrics {
  double accuracy;
  double macro_f1;
};

/// Exact-match accuracy and the unweighted mean of per-class F1 (0/0 := 0).
Metrics evaluate(const std::vector<Index>& predicted, const std::vector<Index>& truth, Index num_classes);

/// For each K: select features on the training split, fit the requested
/// classifiers and score the test split. Rows are ordered by K, then by the
/// order of `config.classifiers`.
SweepReport run_sweep(const SweepConfig& config, const TrainTestSplit& split);

/// `classifier,k,accuracy,macro_f1,wall_ms`. With `include_timing` false the
/// wall_ms column is written as 0 so repeated runs compare byte for byte.
void write_csv(std::ostream& out, const SweepReport& report, bool include_timing = true);

/// `classifier,k,class,theta` for every eef row.
void write_thetas_csv(std::ostream& out, const SweepReport& report);

struct SyntheticSpec {
  Index num_classes = 4;
  Index dim = 200;
  Index docs_per_class = 500;
  Index min_length = 40;
  Index max_length = 120;
  /// 0: every class uses the shared base cells; 1: class i draws only from
  /// its own block of terms.
  double separation = 0.5;
  std::uint64_t seed = 1;
};

/// Generated corpus plus the cells it was drawn from. Term k of the true cells
/// is `terms[k]`; classes are equally likely.
struct SyntheticCorpus {
  Dataset dataset;
  std::vector<std::string> terms;
  Eigen::MatrixXd true_cells;
  Eigen::VectorXd priors;
};

/// cells_i = (1 - s) base + s signature_i, where signature_i lives on the i-th
/// contiguous block of D/N terms.
Eigen::MatrixXd synthetic_cells(const SyntheticSpec& spec);

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace eeftc
