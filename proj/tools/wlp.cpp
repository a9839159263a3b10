#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "wlp/harness.hpp"

using namespace wlp;

namespace {

std::string problem_name(const std::filesystem::path& file) {
  return file.filename() == "problem.p" ? file.parent_path().filename().string() : file.stem().string();
}

std::filesystem::path problem_file(const std::filesystem::path& p) {
  return std::filesystem::is_directory(p) ? p / "problem.p" : p;
}

struct SelectArgs {
  std::string method;
  std::string corpus;
  std::size_t k = 16;
  std::size_t max_clauses = 1000;
  bool round2 = false;
  bool three_node_walks = false;

  void add_to(CLI::App* app, bool required) {
    auto* m = app->add_option("--method", method, "art, freq, knn-st or knn-dyn");
    auto* c = app->add_option("--corpus", corpus, "corpus of solved problems");
    if (required) {
      m->required();
      c->required();
    }
    app->add_option("--k", k, "neighbours (knn-st) or proofs (knn-dyn)")->check(CLI::PositiveNumber);
    app->add_option("--max-clauses", max_clauses, "cap for freq and knn-st");
    app->add_flag("--round2", round2, "rank proofs by recorded provenance");
    app->add_flag("--walks3", three_node_walks, "add three-node walk features");
  }

  SelectionParams params() const {
    SelectionParams p;
    p.k = k;
    p.max_clauses = max_clauses;
    p.round2 = round2;
    p.features.three_node_walks = three_node_walks;
    return p;
  }
};

int cmd_prove(const std::string& path, const std::string& spec, const std::string& wl_dir, const std::string& mode,
              const Budget& budget, const std::string& proof_out) {
  auto bank = std::make_shared<TermBank>();
  auto file = problem_file(path);
  Problem p = parse_cnf_file(file, bank);
  p.name = problem_name(file);
  Strategy s = strategy_from_spec(spec);
  if (!mode.empty()) s = apply_mode(s, parse_mode(mode));
  std::optional<WatchlistGuidance> g;
  if (!wl_dir.empty()) {
    auto files = watchlist_files(wl_dir);
    g.emplace(load_watchlists(files, bank, GuidanceOptions::from(s)));
  }
  auto r = saturate(p, s, g ? &*g : nullptr, budget);
  std::printf("%s %s loops=%llu generated=%llu processed=%llu time=%.3f pps=%.0f\n", p.name.c_str(),
              std::string(to_string(r.outcome)).c_str(), (unsigned long long)r.stats.loops,
              (unsigned long long)r.stats.generated, (unsigned long long)r.stats.processed, r.stats.elapsed_seconds,
              r.stats.pps());
  if (g) {
    std::printf("progress");
    for (const Watchlist& w : g->watchlists())
      std::printf(" %s=%s(%u/%zu)", w.name.c_str(), format_ratio(w.completion()).c_str(), w.progress, w.size());
    std::printf("\n");
  }
  if (r.proof) {
    std::printf("proof length %zu, guided steps %zu\n", r.proof->size(), r.proof->guided_steps());
    auto issues = check_proof(*r.proof, p);
    for (const auto& msg : issues) std::fprintf(stderr, "proof check: %s\n", msg.c_str());
    if (!issues.empty()) return 2;
    if (!proof_out.empty()) write_watchlist(*r.proof, proof_out);
  }
  return r.proof ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"watchlist-guided saturation prover"};
  app.require_subcommand(1);

  auto* prove = app.add_subcommand("prove", "prove one problem");
  std::string problem_path, strategy_spec = "fifo", wl_dir, mode, proof_out;
  Budget budget;
  prove->add_option("problem", problem_path, "TPTP CNF file or corpus problem directory")->required();
  prove->add_option("--strategy", strategy_spec, "built-in name or strategy text");
  prove->add_option("--watchlist-dir", wl_dir, "directory of watchlist .p files");
  prove->add_option("--mode", mode, "pref, const, uwl, ska, dyn, dyndec or evo");
  prove->add_option("--max-given", budget.max_given, "given-clause budget");
  prove->add_option("--max-seconds", budget.max_seconds, "wall-clock cap");
  prove->add_option("--proof-out", proof_out, "write the proof as a watchlist file");

  auto* corpus = app.add_subcommand("corpus", "run every problem of a corpus under every strategy");
  std::string corpus_dir, strategies_file, results_file, corpus_wl_dir, corpus_mode;
  bool write_proofs = false, quiet = false;
  std::size_t cover_k = 5;
  Budget corpus_budget;
  SelectArgs corpus_select;
  corpus->add_option("dir", corpus_dir, "corpus directory")->required();
  corpus->add_option("--strategies", strategies_file, "one strategy per line, optional 'label:' prefix")->required();
  corpus->add_option("--results", results_file, "results file, rewritten after each run");
  corpus->add_option("--watchlist-dir", corpus_wl_dir, "fixed watchlists for every problem");
  corpus->add_option("--mode", corpus_mode, "mode applied to every strategy");
  corpus->add_option("--max-given", corpus_budget.max_given, "given-clause budget");
  corpus->add_option("--max-seconds", corpus_budget.max_seconds, "wall-clock cap");
  corpus->add_option("--cover-k", cover_k, "greedy cover size in the report");
  corpus->add_flag("--write-proofs", write_proofs, "store proof.p and provenance.json for the first strategy");
  corpus->add_flag("--quiet", quiet, "no per-run lines");
  corpus_select.add_to(corpus, false);

  auto* select = app.add_subcommand("select", "build watchlists for one problem");
  std::string target, out_dir = "watchlists";
  SelectArgs select_args;
  select_args.add_to(select, true);
  select->add_option("--target", target, "problem file or corpus problem directory")->required();
  select->add_option("--out", out_dir, "output directory");

  auto* cover = app.add_subcommand("cover", "greedy strategy cover of a results file");
  std::string cover_results;
  std::size_t k = 5;
  bool full_report = false;
  cover->add_option("--results", cover_results, "results file")->required();
  cover->add_option("--k", k, "number of picks")->check(CLI::PositiveNumber);
  cover->add_flag("--report", full_report, "print the full report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*prove) return cmd_prove(problem_path, strategy_spec, wl_dir, mode, budget, proof_out);

    if (*corpus) {
      auto strategies = read_strategy_list(strategies_file);
      if (!corpus_mode.empty()) {
        Mode m = parse_mode(corpus_mode);
        for (auto& s : strategies) {
          s.strategy = apply_mode(s.strategy, m);
          s.label = std::string(to_string(m)) + "(" + s.label + ")";
        }
      }
      CorpusOptions opts;
      opts.budget = corpus_budget;
      opts.write_proofs = write_proofs;
      opts.results = results_file;
      opts.guidance.watchlist_dir = corpus_wl_dir;
      if (!corpus_select.method.empty()) {
        opts.guidance.method = parse_selection_method(corpus_select.method);
        opts.guidance.proof_corpus = corpus_select.corpus.empty() ? corpus_dir : corpus_select.corpus;
        opts.guidance.params = corpus_select.params();
      }
      if (!quiet)
        opts.on_row = [](const ResultRow& r) {
          std::printf("%-24s %-28s %-16s loops=%llu%s%s\n", r.stats.problem.c_str(), r.stats.strategy.c_str(),
                      r.result_text().c_str(), (unsigned long long)r.stats.loops, r.error.empty() ? "" : " ",
                      r.error.c_str());
          std::fflush(stdout);
        };
      auto rows = run_corpus(corpus_dir, strategies, opts);
      std::printf("%s", report(rows, cover_k).text().c_str());
      return 0;
    }

    if (*select) {
      auto file = problem_file(target);
      Problem p = parse_cnf_file(file, std::make_shared<TermBank>());
      p.name = problem_name(file);
      SelectionParams params = select_args.params();
      auto entries = load_corpus(select_args.corpus, params.features);
      std::vector<std::string> warnings;
      auto files = build_watchlists(parse_selection_method(select_args.method), p.name,
                                    conjecture_features(p, params.features), entries, params, &warnings);
      for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      for (const auto& path : write_watchlist_files(files, out_dir)) std::printf("%s\n", path.string().c_str());
      return 0;
    }

    if (*cover) {
      auto rows = read_results(cover_results);
      if (full_report) {
        std::printf("%s", report(rows, k).text().c_str());
        return 0;
      }
      std::size_t total = 0;
      for (const CoverPick& pick : greedy_cover(solved_sets(rows), k)) {
        total += pick.added;
        std::printf("%s +%zu (%zu)\n", pick.strategy.c_str(), pick.added, total);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
