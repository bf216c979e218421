#include "eeftc/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>

#include "eeftc/baselines.hpp"
#include "eeftc/error.hpp"
#include "eeftc/model.hpp"
#include "eeftc/random.hpp"

namespace eeftc {

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::eef: return "eef";
    case ClassifierKind::ppt: return "ppt";
    case ClassifierKind::mnb: return "mnb";
  }
  return "unknown";
}

ClassifierKind parse_classifier(std::string_view text) {
  if (text == "eef") return ClassifierKind::eef;
  if (text == "ppt") return ClassifierKind::ppt;
  if (text == "mnb") return ClassifierKind::mnb;
  throw Error(ErrorCode::InvalidArgument, "unknown classifier '" + std::string(text) + "'");
}

Metrics evaluate(const std::vector<Index>& predicted, const std::vector<Index>& truth, Index num_classes) {
  if (predicted.size() != truth.size()) throw Error(ErrorCode::InvalidArgument, "prediction count mismatch");
  if (truth.empty()) throw Error(ErrorCode::EmptyTestSplit, "nothing to evaluate");

  const auto n = static_cast<std::size_t>(num_classes);
  std::vector<double> tp(n, 0.0), fp(n, 0.0), fn(n, 0.0);
  double correct = 0.0;
  for (std::size_t d = 0; d < truth.size(); ++d) {
    const auto p = static_cast<std::size_t>(predicted[d]);
    const auto t = static_cast<std::size_t>(truth[d]);
    if (p == t) {
      correct += 1.0;
      tp[t] += 1.0;
    } else {
      fp[p] += 1.0;
      fn[t] += 1.0;
    }
  }
  double f1_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = 2.0 * tp[i] + fp[i] + fn[i];
    f1_sum += denom > 0.0 ? 2.0 * tp[i] / denom : 0.0;
  }
  return {correct / static_cast<double>(truth.size()), f1_sum / static_cast<double>(n)};
}

namespace {

void validate(const SweepConfig& config, const TrainTestSplit& split) {
  if (split.test.empty()) throw Error(ErrorCode::EmptyTestSplit, "the test split has no documents");
  if (config.classifiers.empty()) throw Error(ErrorCode::InvalidArgument, "no classifiers requested");
  if (config.k_values.empty()) throw Error(ErrorCode::InvalidArgument, "no feature counts requested");
  const Index d = split.train.dim();
  for (std::size_t j = 0; j < config.k_values.size(); ++j) {
    const Index k = config.k_values[j];
    if (k < 1 || k >= d)
      throw Error(ErrorCode::InvalidK, "K = " + std::to_string(k) + " outside [1, " + std::to_string(d - 1) + "]");
    if (j > 0 && k <= config.k_values[j - 1])
      throw Error(ErrorCode::InvalidArgument, "feature counts must be strictly increasing");
  }
  for (const auto& doc : split.test) {
    if (!doc.label || *doc.label < 0 || *doc.label >= split.train.num_classes())
      throw Error(ErrorCode::InvalidArgument, "test document without a valid label");
  }
}

template <class Classify>
std::vector<Index> predict_all(const std::vector<SparseDocument>& docs, Classify&& classify_one) {
  std::vector<Index> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(classify_one(doc));
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config, const TrainTestSplit& split) {
  validate(config, split);

  const MultinomialModel model = fit_multinomial(split.train, config.smoothing_alpha);
  const IgScoreTable scores = ig_scores(split.train, config.ig_pseudo_count);
  const Index n = split.train.num_classes();

  std::vector<Index> truth;
  truth.reserve(split.test.size());
  for (const auto& doc : split.test) truth.push_back(*doc.label);

  SweepReport report;
  report.class_names = split.train.class_names;
  for (const Index k : config.k_values) {
    for (const auto kind : config.classifiers) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row{kind, k, 0.0, 0.0, {}, 0.0};
      std::vector<Index> predicted;
      try {
        switch (kind) {
          case ClassifierKind::eef: {
            const EefModel eef =
                fit_eef(model, select_features(scores, model, k, config.specific_mode), split.train, config.theta);
            predicted = predict_all(split.test, [&](const SparseDocument& doc) { return classify(eef, doc); });
            row.thetas = eef.thetas();
            break;
          }
          case ClassifierKind::ppt: {
            const PptModel ppt = fit_ppt(model, select_features(scores, model, k, config.specific_mode));
            predicted = predict_all(split.test, [&](const SparseDocument& doc) { return ppt_classify(ppt, doc); });
            break;
          }
          case ClassifierKind::mnb: {
            const MnbModel mnb = fit_mnb(model, select_features(scores, model, k, SelectionMode::common));
            predicted = predict_all(split.test, [&](const SparseDocument& doc) { return mnb_classify(mnb, doc); });
            break;
          }
        }
      } catch (const Error& e) {
        throw Error(e.code(), std::string(to_string(kind)) + " at K = " + std::to_string(k) + ": " + e.message());
      }
      const Metrics m = evaluate(predicted, truth, n);
      row.accuracy = m.accuracy;
      row.macro_f1 = m.macro_f1;
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_csv(std::ostream& out, const SweepReport& report, bool include_timing) {
  out << "classifier,k,accuracy,macro_f1,wall_ms\n";
  char buf[160];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.6f,%.6f,%.3f\n", to_string(row.classifier),
                  static_cast<long long>(row.k), row.accuracy, row.macro_f1, include_timing ? row.wall_ms : 0.0);
    out << buf;
  }
}

void write_thetas_csv(std::ostream& out, const SweepReport& report) {
  out << "classifier,k,class,theta\n";
  char buf[40];
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.thetas.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", row.thetas[i]);
      out << to_string(row.classifier) << ',' << row.k << ',' << report.class_names.at(i) << ',' << buf << '\n';
    }
  }
}

namespace {

std::string padded(const char* prefix, Index value, int width) {
  std::string digits_text = std::to_string(value);
  if (static_cast<int>(digits_text.size()) < width)
    digits_text.insert(0, static_cast<std::size_t>(width) - digits_text.size(), '0');
  return prefix + digits_text;
}

int digits(Index value) {
  int d = 1;
  while (value >= 10) {
    value /= 10;
    ++d;
  }
  return d;
}

}  // namespace

Eigen::MatrixXd synthetic_cells(const SyntheticSpec& spec) {
  const Index n = spec.num_classes, d = spec.dim;
  if (n < 1 || d < 2 || d < n) throw Error(ErrorCode::InvalidArgument, "need N >= 1 and D >= max(2, N)");
  if (!(spec.separation >= 0.0 && spec.separation <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "separation must lie in [0, 1]");

  Rng rng(spec.seed);
  Eigen::VectorXd base(d);
  for (Index k = 0; k < d; ++k) base[k] = 0.5 + rng.uniform();
  base /= base.sum();

  Eigen::MatrixXd cells(n, d);
  for (Index i = 0; i < n; ++i) {
    const Index begin = i * d / n, end = (i + 1) * d / n;
    Eigen::VectorXd signature = Eigen::VectorXd::Zero(d);
    for (Index k = begin; k < end; ++k) signature[k] = 0.5 + rng.uniform();
    signature /= signature.sum();
    cells.row(i) = ((1.0 - spec.separation) * base + spec.separation * signature).transpose();
  }
  return cells;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.docs_per_class < 1 || spec.min_length < 0 || spec.max_length < spec.min_length)
    throw Error(ErrorCode::InvalidArgument, "bad synthetic document counts or lengths");

  SyntheticCorpus out;
  out.true_cells = synthetic_cells(spec);
  const Index n = spec.num_classes, d = spec.dim;
  out.priors = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  const int term_width = std::max(4, digits(d - 1));
  for (Index k = 0; k < d; ++k) out.terms.push_back(padded("w", k, term_width));
  const int class_width = std::max(2, digits(n - 1));
  for (Index i = 0; i < n; ++i) out.dataset.class_names.push_back(padded("c", i, class_width));

  // sampling stream is separate from the one that drew the cells
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> cumulative(static_cast<std::size_t>(d));
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index k = 0; k < d; ++k) cumulative[static_cast<std::size_t>(k)] = acc += out.true_cells(i, k);
    for (Index m = 0; m < spec.docs_per_class; ++m) {
      RawDocument doc;
      doc.label = i;
      const auto length = rng.uniform_int(spec.min_length, spec.max_length);
      for (std::int64_t t = 0; t < length; ++t) ++doc.counts[out.terms[rng.categorical(cumulative)]];
      out.dataset.documents.push_back(std::move(doc));
    }
  }
  return out;
}

}  // namespace eeftc
