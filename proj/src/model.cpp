#include "eeftc/model.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "eeftc/error.hpp"

namespace eeftc {

namespace {

constexpr double kSumTolerance = 1e-12;

void write_row(std::ostream& out, const Eigen::Ref<const Eigen::VectorXd>& row) {
  char buf[40];
  for (Index k = 0; k < row.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", row[k]);
    if (k > 0) out << ' ';
    out << buf;
  }
  out << '\n';
}

Eigen::VectorXd read_row(std::istream& in, Index n, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, std::string("missing ") + what);
  std::istringstream fields(line);
  Eigen::VectorXd row(n);
  for (Index k = 0; k < n; ++k) {
    std::string token;
    if (!(fields >> token)) throw Error(ErrorCode::ParseError, std::string("short ") + what);
    try {
      std::size_t used = 0;
      row[k] = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("bad number in ") + what + ": " + token);
    }
  }
  std::string extra;
  if (fields >> extra) throw Error(ErrorCode::ParseError, std::string("trailing data in ") + what);
  return row;
}

}  // namespace

MultinomialModel MultinomialModel::from_cells(Eigen::MatrixXd cell_probs, Eigen::VectorXd priors,
                                              double smoothing_alpha) {
  if (cell_probs.rows() < 1 || cell_probs.cols() < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least one class and two cells");
  if (priors.size() != cell_probs.rows())
    throw Error(ErrorCode::InvalidArgument, "prior count does not match class count");
  if ((cell_probs.array() < 0.0).any() || (priors.array() < 0.0).any())
    throw Error(ErrorCode::InvalidArgument, "negative probability");
  for (Index i = 0; i < cell_probs.rows(); ++i) {
    if (std::abs(cell_probs.row(i).sum() - 1.0) > kSumTolerance)
      throw Error(ErrorCode::InvalidArgument, "class " + std::to_string(i) + " cells do not sum to 1");
  }
  if (std::abs(priors.sum() - 1.0) > kSumTolerance)
    throw Error(ErrorCode::InvalidArgument, "priors do not sum to 1");

  MultinomialModel model;
  model.ref_probs = reference_mixture(cell_probs, priors);
  model.cell_probs = std::move(cell_probs);
  model.priors = std::move(priors);
  model.smoothing_alpha = smoothing_alpha;
  return model;
}

Eigen::MatrixXd class_term_counts(const LabeledCorpus& corpus) {
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(corpus.num_classes(), corpus.dim());
  for (const auto& doc : corpus.documents) {
    const Index cls = doc.label.value();
    for (const auto& tc : doc.counts) counts(cls, tc.term) += static_cast<double>(tc.count);
  }
  return counts;
}

MultinomialModel fit_multinomial(const LabeledCorpus& corpus, double smoothing_alpha) {
  if (!(smoothing_alpha >= 0.0) || !std::isfinite(smoothing_alpha))
    throw Error(ErrorCode::InvalidArgument, "smoothing alpha must be finite and >= 0");

  const Index n = corpus.num_classes();
  const auto d = static_cast<double>(corpus.dim());
  Eigen::MatrixXd cells = class_term_counts(corpus);
  for (Index i = 0; i < n; ++i) {
    const double total = cells.row(i).sum();
    if (total == 0.0 && smoothing_alpha == 0.0)
      throw Error(ErrorCode::DegenerateClass,
                  "class '" + corpus.class_names[static_cast<std::size_t>(i)] + "' has no tokens");
    cells.row(i) = (cells.row(i).array() + smoothing_alpha) / (total + smoothing_alpha * d);
  }

  Eigen::VectorXd priors(n);
  double docs = 0.0;
  for (Index i = 0; i < n; ++i) {
    priors[i] = static_cast<double>(corpus.class_doc_counts[static_cast<std::size_t>(i)]);
    docs += priors[i];
  }
  priors /= docs;

  MultinomialModel model;
  model.ref_probs = reference_mixture(cells, priors);
  model.cell_probs = std::move(cells);
  model.priors = std::move(priors);
  model.smoothing_alpha = smoothing_alpha;
  return model;
}

double log_multinomial_coefficient(const SparseDocument& doc) {
  double value = std::lgamma(static_cast<double>(doc.length) + 1.0);
  for (const auto& tc : doc.counts) value -= std::lgamma(static_cast<double>(tc.count) + 1.0);
  return value;
}

double log_likelihood(const MultinomialModel& model, Index cls, const SparseDocument& doc,
                      bool include_coefficient) {
  double value = include_coefficient ? log_multinomial_coefficient(doc) : 0.0;
  for (const auto& tc : doc.counts) {
    const double p = model.cell_probs(cls, tc.term);
    if (p <= 0.0)
      throw Error(ErrorCode::ZeroProbabilityCell,
                  "term " + std::to_string(tc.term) + " has zero probability in class " + std::to_string(cls));
    value += static_cast<double>(tc.count) * std::log(p);
  }
  return value;
}

void save_model(std::ostream& out, const MultinomialModel& model) {
  char alpha[40];
  std::snprintf(alpha, sizeof alpha, "%.17g", model.smoothing_alpha);
  out << "eef-model v1 " << model.num_classes() << ' ' << model.dim() << ' ' << alpha << '\n';
  write_row(out, model.priors);
  for (Index i = 0; i < model.num_classes(); ++i) write_row(out, model.cell_probs.row(i).transpose());
}

MultinomialModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty model stream");
  std::istringstream header(line);
  std::string magic, version;
  Index n = 0, d = 0;
  double alpha = 0.0;
  if (!(header >> magic >> version >> n >> d >> alpha) || magic != "eef-model")
    throw Error(ErrorCode::ParseError, "bad model header");
  if (version != "v1") throw Error(ErrorCode::ParseError, "unsupported model version " + version);
  if (n < 1 || d < 2) throw Error(ErrorCode::ParseError, "bad model dimensions");

  Eigen::VectorXd priors = read_row(in, n, "priors");
  Eigen::MatrixXd cells(n, d);
  for (Index i = 0; i < n; ++i) cells.row(i) = read_row(in, d, "class row").transpose();
  return MultinomialModel::from_cells(std::move(cells), std::move(priors), alpha);
}

}  // namespace eeftc
