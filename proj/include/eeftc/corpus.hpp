#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

namespace eeftc {

using Index = Eigen::Index;

struct TokenizerConfig {
  std::size_t min_len = 2;
  std::unordered_set<std::string> stop_words;
};

/// Lowercased ASCII letter runs; every other byte separates tokens. Runs
/// shorter than `min_len` and stop words are dropped.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

class Vocabulary {
 public:
  Vocabulary() = default;
  /// `terms` must be distinct; their order defines the term indices.
  explicit Vocabulary(std::vector<std::string> terms);

  Index size() const { return static_cast<Index>(terms_.size()); }
  const std::string& term(Index k) const { return terms_[static_cast<std::size_t>(k)]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<Index> find(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, Index> index_;
};

struct TermCount {
  Index term;
  std::int64_t count;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

/// Bag of words over a vocabulary. Entries are sorted by term index, every
/// stored count is >= 1 and `length` is their sum.
struct SparseDocument {
  std::vector<TermCount> counts;
  std::int64_t length = 0;
  std::optional<Index> label;

  static SparseDocument from_counts(const std::map<Index, std::int64_t>& counts,
                                    std::optional<Index> label = std::nullopt);

  std::int64_t count(Index term) const;

  friend bool operator==(const SparseDocument&, const SparseDocument&) = default;
};

/// Document keyed by term strings, before it is indexed against a vocabulary.
struct RawDocument {
  std::optional<Index> label;
  std::map<std::string, std::int64_t> counts;

  static RawDocument from_tokens(std::optional<Index> label, const std::vector<std::string>& tokens);
};

struct LabeledCorpus {
  Vocabulary vocabulary;
  std::vector<SparseDocument> documents;
  std::vector<std::string> class_names;
  std::vector<std::int64_t> class_doc_counts;

  Index num_classes() const { return static_cast<Index>(class_names.size()); }
  Index dim() const { return vocabulary.size(); }
};

/// Builds the training corpus. The vocabulary is the sorted set of all terms
/// in `docs`; every document needs a label in [0, class_names.size()).
LabeledCorpus build_corpus(const std::vector<RawDocument>& docs, std::vector<std::string> class_names);

/// Expresses `doc` in `vocab`; out-of-vocabulary counts are dropped and the
/// length recomputed from what survives.
SparseDocument project(const RawDocument& doc, const Vocabulary& vocab);

RawDocument to_raw(const SparseDocument& doc, const Vocabulary& vocab);

/// A loaded document collection with string class names.
struct Dataset {
  std::vector<std::string> class_names;
  std::vector<RawDocument> documents;
};

/// `<root>/<class_name>/<doc>.txt`; classes and files are visited in sorted
/// order.
Dataset read_directory(const std::filesystem::path& root, const TokenizerConfig& config = {});

/// `label<TAB>term:count term:count ...`, one document per line.
Dataset read_tokenized(std::istream& in);
Dataset read_tokenized(const std::filesystem::path& path);
void write_tokenized(std::ostream& out, const Dataset& data);

/// Directory root or tokenized-line file, chosen by what `path` is.
Dataset read_dataset(const std::filesystem::path& path, const TokenizerConfig& config = {});

/// Relabels `data` against `class_names`; unknown class names are an error.
Dataset align_labels(const Dataset& data, const std::vector<std::string>& class_names);

struct TrainTestSplit {
  LabeledCorpus train;
  std::vector<SparseDocument> test;
};

TrainTestSplit make_split(const Dataset& train, const Dataset& test);

/// Stratified seeded split: floor(test_frac * M_i) documents of each class go
/// to the test side, at least one stays in training.
TrainTestSplit random_split(const Dataset& data, double test_frac, std::uint64_t seed);

}  // namespace eeftc
