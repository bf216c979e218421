// eef-textcat: feature-size sweeps, oracle verification and synthetic corpora.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eeftc/bench.hpp"
#include "eeftc/corpus.hpp"
#include "eeftc/error.hpp"
#include "eeftc/features.hpp"
#include "eeftc/model.hpp"
#include "eeftc/verify.hpp"

namespace {

using namespace eeftc;

// Writes to `path`, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::IoError, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct CorpusOptions {
  std::string train;
  std::string test;
  double test_frac = 0.3;
  std::uint64_t seed = 1;
  std::size_t min_len = 2;
  std::string stop_words;

  void add_to(CLI::App& cmd, bool with_test) {
    cmd.add_option("--train", train, "training directory or tokenized-line file")->required()->check(CLI::ExistingPath);
    cmd.add_option("--min-len", min_len, "shortest token kept when tokenizing raw text")->capture_default_str();
    cmd.add_option("--stop-words", stop_words, "file with one stop word per line")->check(CLI::ExistingFile);
    if (!with_test) return;
    cmd.add_option("--test", test, "test directory or tokenized-line file")->check(CLI::ExistingPath);
    cmd.add_option("--test-frac", test_frac, "held-out fraction when --test is absent")->capture_default_str();
    cmd.add_option("--seed", seed, "seed of the random split")->capture_default_str();
  }

  TokenizerConfig tokenizer() const {
    TokenizerConfig config;
    config.min_len = min_len;
    if (!stop_words.empty()) {
      std::ifstream in(stop_words);
      for (std::string word; in >> word;) config.stop_words.insert(word);
    }
    return config;
  }

  TrainTestSplit split() const {
    const TokenizerConfig config = tokenizer();
    const Dataset train_data = read_dataset(train, config);
    if (!test.empty()) return make_split(train_data, read_dataset(test, config));
    return random_split(train_data, test_frac, seed);
  }

  LabeledCorpus corpus() const {
    const Dataset data = read_dataset(train, tokenizer());
    return build_corpus(data.documents, data.class_names);
  }
};

std::vector<Index> default_k_values(Index dim) {
  std::vector<Index> ks;
  for (Index k = 100; k <= 2000 && k < dim; k += 100) ks.push_back(k);
  if (ks.empty()) ks.push_back(std::max<Index>(1, dim / 2));
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEF class-specific text categorization"};
  app.require_subcommand(1);

  // sweep
  CorpusOptions sweep_corpus;
  std::vector<Index> k_values;
  std::vector<std::string> classifiers{"eef", "ppt", "mnb"};
  SweepConfig sweep_config;
  std::string mode = "class-specific";
  std::string sweep_out, thetas_out;
  bool no_timing = false;
  auto* sweep = app.add_subcommand("sweep", "accuracy / macro-F1 over a range of feature counts");
  sweep_corpus.add_to(*sweep, true);
  sweep->add_option("--k", k_values, "feature counts, e.g. 100,200,500 (default 100..2000 step 100)")->delimiter(',');
  sweep->add_option("--classifiers,--classifier", classifiers, "any of eef,ppt,mnb")->delimiter(',')->capture_default_str();
  sweep->add_option("--alpha", sweep_config.smoothing_alpha, "additive smoothing of the cell estimates")->capture_default_str();
  sweep->add_option("--mode", mode, "selection used by eef and ppt: class-specific or common")->capture_default_str();
  sweep->add_option("--ig-smoothing", sweep_config.ig_pseudo_count, "pseudo-count per presence/class cell in IG")->capture_default_str();
  sweep->add_option("--theta-min", sweep_config.theta.min)->capture_default_str();
  sweep->add_option("--theta-max", sweep_config.theta.max)->capture_default_str();
  sweep->add_option("--theta-tol", sweep_config.theta.tol)->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV report path (default stdout)");
  sweep->add_option("--thetas-out", thetas_out, "CSV of fitted theta per class");
  sweep->add_flag("--no-timing", no_timing, "write wall_ms as 0 for reproducible output");

  // verify
  std::uint64_t verify_seed = 7;
  int verify_cases = 1000;
  auto* verify = app.add_subcommand("verify", "closed forms against brute-force enumeration");
  verify->add_option("--seed", verify_seed)->capture_default_str();
  verify->add_option("--cases", verify_cases)->capture_default_str();

  // synth
  SyntheticSpec synth_spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus in tokenized-line format");
  synth->add_option("--classes", synth_spec.num_classes)->capture_default_str();
  synth->add_option("--dim", synth_spec.dim)->capture_default_str();
  synth->add_option("--docs", synth_spec.docs_per_class, "documents per class")->capture_default_str();
  synth->add_option("--min-length", synth_spec.min_length)->capture_default_str();
  synth->add_option("--max-length", synth_spec.max_length)->capture_default_str();
  synth->add_option("--separation", synth_spec.separation, "0 = identical classes, 1 = disjoint supports")->capture_default_str();
  synth->add_option("--seed", synth_spec.seed)->capture_default_str();
  synth->add_option("--out", synth_out, "output path (default stdout)");

  // scores
  CorpusOptions scores_corpus;
  double scores_smoothing = 0.0;
  std::string scores_out;
  auto* scores = app.add_subcommand("scores", "dump the IG score table as term,class,ig");
  scores_corpus.add_to(*scores, false);
  scores->add_option("--ig-smoothing", scores_smoothing)->capture_default_str();
  scores->add_option("--out", scores_out, "output path (default stdout)");

  // fit
  CorpusOptions fit_corpus;
  double fit_alpha = 1.0;
  std::string fit_out;
  auto* fit = app.add_subcommand("fit", "fit and save the multinomial model");
  fit_corpus.add_to(*fit, false);
  fit->add_option("--alpha", fit_alpha)->capture_default_str();
  fit->add_option("--out", fit_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      const TrainTestSplit split = sweep_corpus.split();
      sweep_config.k_values = k_values.empty() ? default_k_values(split.train.dim()) : k_values;
      sweep_config.classifiers.clear();
      for (const auto& name : classifiers) sweep_config.classifiers.push_back(parse_classifier(name));
      sweep_config.specific_mode = parse_selection_mode(mode);

      const SweepReport report = run_sweep(sweep_config, split);
      Output out(sweep_out);
      write_csv(out.stream(), report, !no_timing);
      if (!thetas_out.empty()) {
        Output thetas(thetas_out);
        write_thetas_csv(thetas.stream(), report);
      }
      for (const auto& row : report.rows) {
        if (row.thetas.empty()) continue;
        std::cerr << "eef K=" << row.k << " theta*:";
        for (const double t : row.thetas) std::cerr << ' ' << t;
        std::cerr << '\n';
      }
    } else if (*verify) {
      const VerificationSummary summary = run_verification(verify_seed, verify_cases);
      print_summary(std::cout, summary);
      const bool ok = summary.cumulant <= 1e-9 && summary.normalization <= 1e-9 && summary.ppt_identity <= 1e-9 &&
                      summary.moment <= 1e-5 && summary.stationarity <= 1e-6 && summary.decision_mismatches == 0;
      std::cout << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? 0 : 1;
    } else if (*synth) {
      const SyntheticCorpus corpus = generate_synthetic(synth_spec);
      Output out(synth_out);
      write_tokenized(out.stream(), corpus.dataset);
    } else if (*scores) {
      const LabeledCorpus corpus = scores_corpus.corpus();
      Output out(scores_out);
      write_scores_csv(out.stream(), ig_scores(corpus, scores_smoothing), corpus);
    } else if (*fit) {
      const LabeledCorpus corpus = fit_corpus.corpus();
      Output out(fit_out);
      save_model(out.stream(), fit_multinomial(corpus, fit_alpha));
    }
  } catch (const Error& e) {
    std::cerr << "eef-textcat: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "eef-textcat: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
