#include "eeftc/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "eeftc/error.hpp"
#include "eeftc/random.hpp"

namespace eeftc {

namespace {

bool is_ascii_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower_ascii(unsigned char c) {
  return static_cast<char>((c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c);
}

void check_labels(const std::vector<RawDocument>& docs, std::size_t num_classes) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& label = docs[d].label;
    if (!label || *label < 0 || static_cast<std::size_t>(*label) >= num_classes)
      throw Error(ErrorCode::InvalidArgument,
                  "document " + std::to_string(d) + " has no label in [0, " +
                      std::to_string(num_classes) + ")");
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= config.min_len && !config.stop_words.contains(current))
      tokens.push_back(current);
    current.clear();
  };
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_letter(c))
      current.push_back(to_lower_ascii(c));
    else
      flush();
  }
  flush();
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (!index_.emplace(terms_[k], static_cast<Index>(k)).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate vocabulary term '" + terms_[k] + "'");
  }
}

std::optional<Index> Vocabulary::find(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseDocument SparseDocument::from_counts(const std::map<Index, std::int64_t>& counts,
                                           std::optional<Index> label) {
  SparseDocument doc;
  doc.label = label;
  for (const auto& [term, count] : counts) {
    if (count < 0) throw Error(ErrorCode::InvalidArgument, "negative term count");
    if (count == 0) continue;
    doc.counts.push_back({term, count});
    doc.length += count;
  }
  return doc;
}

std::int64_t SparseDocument::count(Index term) const {
  const auto it = std::lower_bound(counts.begin(), counts.end(), term,
                                   [](const TermCount& tc, Index t) { return tc.term < t; });
  return (it != counts.end() && it->term == term) ? it->count : 0;
}

RawDocument RawDocument::from_tokens(std::optional<Index> label, const std::vector<std::string>& tokens) {
  RawDocument doc;
  doc.label = label;
  for (const auto& token : tokens) ++doc.counts[token];
  return doc;
}

LabeledCorpus build_corpus(const std::vector<RawDocument>& docs, std::vector<std::string> class_names) {
  check_labels(docs, class_names.size());

  std::vector<std::int64_t> doc_counts(class_names.size(), 0);
  for (const auto& doc : docs) ++doc_counts[static_cast<std::size_t>(*doc.label)];
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    if (doc_counts[i] == 0)
      throw Error(ErrorCode::EmptyClass, "class '" + class_names[i] + "' has no documents");
  }

  std::set<std::string> seen;
  for (const auto& doc : docs)
    for (const auto& [term, count] : doc.counts)
      if (count > 0) seen.insert(term);
  if (seen.size() < 2)
    throw Error(ErrorCode::VocabularyTooSmall,
                "training documents contain " + std::to_string(seen.size()) + " distinct term(s)");

  LabeledCorpus corpus;
  corpus.vocabulary = Vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
  corpus.class_names = std::move(class_names);
  corpus.class_doc_counts = std::move(doc_counts);
  corpus.documents.reserve(docs.size());
  for (const auto& doc : docs) corpus.documents.push_back(project(doc, corpus.vocabulary));
  return corpus;
}

SparseDocument project(const RawDocument& doc, const Vocabulary& vocab) {
  std::map<Index, std::int64_t> counts;
  for (const auto& [term, count] : doc.counts) {
    if (const auto k = vocab.find(term)) counts[*k] += count;
  }
  return SparseDocument::from_counts(counts, doc.label);
}

RawDocument to_raw(const SparseDocument& doc, const Vocabulary& vocab) {
  RawDocument raw;
  raw.label = doc.label;
  for (const auto& tc : doc.counts) raw.counts[vocab.term(tc.term)] = tc.count;
  return raw;
}

Dataset read_directory(const std::filesystem::path& root, const TokenizerConfig& config) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw Error(ErrorCode::IoError, root.string() + " is not a directory");

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());

  Dataset data;
  for (std::size_t i = 0; i < class_dirs.size(); ++i) {
    data.class_names.push_back(class_dirs[i].filename().string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(class_dirs[i]))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
      std::ostringstream text;
      text << in.rdbuf();
      data.documents.push_back(RawDocument::from_tokens(static_cast<Index>(i), tokenize(text.str(), config)));
    }
  }
  return data;
}

Dataset read_tokenized(std::istream& in) {
  std::vector<std::pair<std::string, RawDocument>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected label<TAB>terms");

    RawDocument doc;
    std::istringstream fields(line.substr(tab + 1));
    std::string field;
    while (fields >> field) {
      const auto colon = field.rfind(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == field.size())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad entry '" + field + "'");
      std::int64_t count = 0;
      const char* first = field.data() + colon + 1;
      const char* last = field.data() + field.size();
      const auto [ptr, ec] = std::from_chars(first, last, count);
      if (ec != std::errc() || ptr != last || count < 0)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad count in '" + field + "'");
      doc.counts[field.substr(0, colon)] += count;
    }
    rows.emplace_back(line.substr(0, tab), std::move(doc));
  }

  std::set<std::string> names;
  for (const auto& row : rows) names.insert(row.first);
  Dataset data;
  data.class_names.assign(names.begin(), names.end());
  for (auto& [name, doc] : rows) {
    const auto it = std::lower_bound(data.class_names.begin(), data.class_names.end(), name);
    doc.label = static_cast<Index>(it - data.class_names.begin());
    data.documents.push_back(std::move(doc));
  }
  return data;
}

Dataset read_tokenized(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_tokenized(in);
}

void write_tokenized(std::ostream& out, const Dataset& data) {
  for (const auto& doc : data.documents) {
    if (!doc.label) throw Error(ErrorCode::InvalidArgument, "unlabeled document");
    out << data.class_names.at(static_cast<std::size_t>(*doc.label)) << '\t';
    bool first = true;
    for (const auto& [term, count] : doc.counts) {
      if (count == 0) continue;
      if (!first) out << ' ';
      out << term << ':' << count;
      first = false;
    }
    out << '\n';
  }
}

Dataset read_dataset(const std::filesystem::path& path, const TokenizerConfig& config) {
  if (std::filesystem::is_directory(path)) return read_directory(path, config);
  return read_tokenized(path);
}

Dataset align_labels(const Dataset& data, const std::vector<std::string>& class_names) {
  Dataset out;
  out.class_names = class_names;
  out.documents.reserve(data.documents.size());
  for (const auto& doc : data.documents) {
    RawDocument copy = doc;
    if (doc.label) {
      const auto& name = data.class_names.at(static_cast<std::size_t>(*doc.label));
      const auto it = std::find(class_names.begin(), class_names.end(), name);
      if (it == class_names.end())
        throw Error(ErrorCode::InvalidArgument, "class '" + name + "' does not occur in training data");
      copy.label = static_cast<Index>(it - class_names.begin());
    }
    out.documents.push_back(std::move(copy));
  }
  return out;
}

TrainTestSplit make_split(const Dataset& train, const Dataset& test) {
  TrainTestSplit split;
  split.train = build_corpus(train.documents, train.class_names);
  const Dataset aligned = align_labels(test, train.class_names);
  split.test.reserve(aligned.documents.size());
  for (const auto& doc : aligned.documents) split.test.push_back(project(doc, split.train.vocabulary));
  return split;
}

TrainTestSplit random_split(const Dataset& data, double test_frac, std::uint64_t seed) {
  if (!(test_frac >= 0.0 && test_frac < 1.0))
    throw Error(ErrorCode::InvalidArgument, "test fraction must lie in [0, 1)");
  check_labels(data.documents, data.class_names.size());

  std::vector<std::vector<std::size_t>> by_class(data.class_names.size());
  for (std::size_t d = 0; d < data.documents.size(); ++d)
    by_class[static_cast<std::size_t>(*data.documents[d].label)].push_back(d);

  Rng rng(seed);
  std::vector<bool> is_test(data.documents.size(), false);
  for (auto& members : by_class) {
    rng.shuffle(members);
    auto n_test = static_cast<std::size_t>(test_frac * static_cast<double>(members.size()));
    if (n_test >= members.size() && !members.empty()) n_test = members.size() - 1;
    for (std::size_t j = 0; j < n_test; ++j) is_test[members[j]] = true;
  }

  Dataset train{data.class_names, {}}, test{data.class_names, {}};
  for (std::size_t d = 0; d < data.documents.size(); ++d)
    (is_test[d] ? test : train).documents.push_back(data.documents[d]);
  return make_split(train, test);
}

}  // namespace eeftc
