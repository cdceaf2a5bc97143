#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmr/aggregate.hpp"
#include "tmr/conll.hpp"
#include "tmr/report.hpp"
#include "tmr/scoring.hpp"
#include "tmr/taxonomy.hpp"

namespace {

struct Options {
  std::string train_path;
  std::string test_path;
  std::vector<std::string> pred_paths;
  std::string dev_path;
  bool combined = false;
  std::string scheme = "auto";
  std::optional<int> token_col;
  std::optional<int> gold_col;
  std::optional<int> pred_col;
  std::string format = "text";
  std::string docstart = "-DOCSTART-";
  bool population_std = false;
};

std::optional<tmr::TagScheme> resolve_scheme(const std::string& name) {
  if (name == "auto") return std::nullopt;
  auto scheme = tmr::scheme_from_name(name);
  if (!scheme) throw CLI::ValidationError("--scheme", "unknown scheme " + name);
  return scheme;
}

tmr::ColumnConfig gold_config(const Options& opt) {
  tmr::ColumnConfig config;
  if (opt.token_col) config.token_col = *opt.token_col;
  if (opt.gold_col) config.gold_col = *opt.gold_col;
  config.scheme = resolve_scheme(opt.scheme);
  config.docstart_marker = opt.docstart;
  return config;
}

// Combined files follow the conlleval convention: gold second to last,
// predictions last. Prediction-only files carry the predicted tag where a
// gold file carries gold.
tmr::ColumnConfig pred_config(const Options& opt) {
  tmr::ColumnConfig config;
  if (opt.token_col) config.token_col = *opt.token_col;
  if (opt.combined) {
    config.gold_col = opt.gold_col.value_or(-2);
    config.pred_col = opt.pred_col.value_or(-1);
  } else {
    config.gold_col = opt.pred_col.value_or(-1);
  }
  config.scheme = resolve_scheme(opt.scheme);
  config.docstart_marker = opt.docstart;
  return config;
}

tmr::OutputFormat output_format(const Options& opt) {
  auto format = tmr::format_from_name(opt.format);
  if (!format)
    throw CLI::ValidationError("--format", "unknown format " + opt.format);
  return *format;
}

tmr::TrainIndex load_train_index(const Options& opt) {
  auto train = tmr::parse_conll_file(opt.train_path, gold_config(opt));
  auto mentions = tmr::gold_mentions(train);
  if (!opt.dev_path.empty()) {
    // Non-standard: the unseen subsets are defined against the training
    // data only; adding the development set changes them.
    auto dev = tmr::parse_conll_file(opt.dev_path, gold_config(opt));
    auto dev_mentions = tmr::gold_mentions(dev);
    mentions.insert(mentions.end(), dev_mentions.begin(), dev_mentions.end());
    std::cerr << "note: development set included in the seen-mention index; "
                 "subset definitions are non-standard\n";
  }
  return tmr::build_train_index(mentions);
}

int run_composition(const Options& opt) {
  tmr::TrainIndex idx = load_train_index(opt);
  auto test = tmr::parse_conll_file(opt.test_path, gold_config(opt));
  auto test_gold = tmr::gold_mentions(test);
  auto assignment = tmr::assign_subsets(test_gold, idx);
  auto table = tmr::composition(test_gold, assignment);
  tmr::render_composition(std::cout, table, output_format(opt));
  return 0;
}

int run_classify(const Options& opt) {
  tmr::TrainIndex idx = load_train_index(opt);
  auto test = tmr::parse_conll_file(opt.test_path, gold_config(opt));
  auto test_gold = tmr::gold_mentions(test);
  auto assignment = tmr::assign_subsets(test_gold, idx);
  tmr::render_classification(std::cout, test_gold, assignment,
                             output_format(opt));
  return 0;
}

int run_score(const Options& opt) {
  tmr::TrainIndex idx = load_train_index(opt);

  std::optional<tmr::Corpus> gold;
  if (!opt.test_path.empty())
    gold = tmr::parse_conll_file(opt.test_path, gold_config(opt));
  if (!gold && !opt.combined)
    throw tmr::InputError("--test is required unless --combined is given");

  std::vector<tmr::MetricReport> reports;
  std::optional<uint64_t> fingerprint;
  std::optional<tmr::SubsetAssignment> assignment;
  std::vector<tmr::Mention> test_gold;

  for (const auto& path : opt.pred_paths) {
    auto pred = tmr::parse_conll_file(path, pred_config(opt));
    std::vector<tmr::Mention> pred_ms;
    if (opt.combined) {
      uint64_t fp = tmr::gold_fingerprint(pred);
      if (fingerprint && *fingerprint != fp)
        throw tmr::InconsistentRunsError(
            path + ": gold annotations differ from the previous run files");
      fingerprint = fp;
      if (gold) {
        tmr::check_alignment(*gold, pred);
        if (tmr::gold_fingerprint(*gold) != fp)
          throw tmr::InconsistentRunsError(
              path + ": gold annotations differ from " + opt.test_path);
      }
      if (test_gold.empty()) test_gold = tmr::gold_mentions(pred);
      pred_ms = tmr::pred_mentions(pred);
    } else {
      tmr::check_alignment(*gold, pred);
      if (test_gold.empty()) test_gold = tmr::gold_mentions(*gold);
      pred_ms = tmr::gold_mentions(pred);  // tag column holds predictions
    }
    if (!assignment) assignment = tmr::assign_subsets(test_gold, idx);
    reports.push_back(tmr::score(test_gold, pred_ms, *assignment));
  }

  auto format = output_format(opt);
  if (reports.size() == 1 && !opt.population_std) {
    tmr::render_report(std::cout, reports.front(), format);
  } else {
    tmr::RunSet runs;
    runs.gold_fingerprint =
        fingerprint ? *fingerprint
                    : (gold ? tmr::gold_fingerprint(*gold) : 0);
    runs.reports = std::move(reports);
    auto agg = tmr::aggregate_runs(runs, opt.population_std);
    tmr::render_aggregate(std::cout, agg, format);
  }
  return 0;
}

void add_common_options(CLI::App* cmd, Options& opt, bool needs_pred) {
  cmd->add_option("--train", opt.train_path, "Training gold file")->required();
  auto* test =
      cmd->add_option("--test", opt.test_path, "Test gold file");
  if (!needs_pred) test->required();
  if (needs_pred) {
    cmd->add_option("--pred", opt.pred_paths,
                    "Prediction file(s), one per run")
        ->required();
    cmd->add_flag("--combined", opt.combined,
                  "Prediction files carry gold and predicted tags "
                  "(token ... gold pred)");
    cmd->add_option("--pred-col", opt.pred_col,
                    "Predicted tag column (negative counts from the end)");
    cmd->add_flag("--population-std", opt.population_std,
                  "Use the population (n) standard deviation");
  }
  cmd->add_option("--include-dev", opt.dev_path,
                  "Also treat this development file's mentions as seen "
                  "(non-standard)");
  cmd->add_option("--scheme", opt.scheme,
                  "Tag scheme: auto, iob1, iob2, bioes")
      ->check(CLI::IsMember({"auto", "iob1", "iob2", "bioes"}));
  cmd->add_option("--token-col", opt.token_col, "Token column index");
  cmd->add_option("--gold-col", opt.gold_col,
                  "Gold tag column (negative counts from the end)");
  cmd->add_option("--format", opt.format, "Output format: text, tsv, json")
      ->check(CLI::IsMember({"text", "tsv", "json"}));
  cmd->add_option("--docstart", opt.docstart, "Document boundary marker");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tough-mentions recall diagnostics for NER"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* composition = app.add_subcommand(
      "composition", "Report the unseen/type-confusable corpus composition");
  add_common_options(composition, opt, false);
  CLI::App* score = app.add_subcommand(
      "score", "Score predictions: P/R/F1 plus per-subset recall");
  add_common_options(score, opt, true);
  CLI::App* classify = app.add_subcommand(
      "classify", "List every test mention with its subset labels");
  add_common_options(classify, opt, false);

  try {
    app.parse(argc, argv);
    if (composition->parsed()) return run_composition(opt);
    if (score->parsed()) return run_score(opt);
    if (classify->parsed()) return run_classify(opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const tmr::InconsistentRunsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tmr::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
