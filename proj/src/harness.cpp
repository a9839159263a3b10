#include "wlp/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wlp {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void store_proof(const std::filesystem::path& dir, const SaturationResult& r, const WatchlistGuidance* g,
                 const std::string& strategy) {
  write_watchlist(*r.proof, dir / "proof.p");
  Provenance p;
  p.problem = dir.filename().string();
  p.strategy = strategy;
  if (g)
    for (const Watchlist& w : g->watchlists()) p.watchlists.push_back(w.name);
  for (const ProofStep& s : r.proof->steps) {
    if (s.matched.empty()) continue;
    auto& hits = p.matches["c" + std::to_string(s.clause.id)];
    for (auto [w, id] : s.matched) hits.emplace_back(g ? g->watchlist(w).name : std::to_string(w), id);
  }
  mine_round2(p);
  write_provenance(p, dir / "provenance.json");
}

}  // namespace

std::vector<NamedStrategy> parse_strategy_list(std::string_view text) {
  std::vector<NamedStrategy> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string label, spec = t;
    // A label is a leading word followed by ':' (strategy text never has one
    // before its first '(').
    auto colon = t.find(':');
    auto paren = t.find('(');
    if (colon != std::string::npos && (paren == std::string::npos || colon < paren)) {
      label = trim(t.substr(0, colon));
      spec = trim(t.substr(colon + 1));
    }
    Strategy s = strategy_from_spec(spec);
    if (label.empty()) label = s.name.empty() ? spec : s.name;
    s.name = label;
    out.push_back({label, std::move(s)});
  }
  return out;
}

std::vector<NamedStrategy> read_strategy_list(const std::filesystem::path& path) {
  return parse_strategy_list(read_file(path));
}

std::string ResultRow::result_text() const { return error.empty() ? std::string(to_string(stats.result)) : "error"; }

WatchlistGuidance guidance_from_files(std::span<const WatchlistFile> files, TermBankPtr bank,
                                      GuidanceOptions options) {
  WatchlistGuidance g(bank, options);
  for (const WatchlistFile& f : files) {
    Problem p = parse_cnf(f.to_tptp(), bank, f.name, f.name + ".p");
    g.add(f.name, p.clauses);
  }
  return g;
}

std::optional<WatchlistGuidance> make_guidance(const GuidanceConfig& config, const Problem& problem,
                                               const Strategy& strategy,
                                               const std::vector<ProofCorpusEntry>* corpus) {
  if (!config.enabled()) return std::nullopt;
  GuidanceOptions options = GuidanceOptions::from(strategy);
  if (!config.watchlist_dir.empty()) {
    auto files = watchlist_files(config.watchlist_dir);
    return load_watchlists(files, problem.bank, options);
  }
  std::vector<ProofCorpusEntry> loaded;
  if (!corpus) {
    loaded = load_corpus(config.proof_corpus, config.params.features);
    corpus = &loaded;
  }
  FeatureBag features = conjecture_features(problem, config.params.features);
  auto files = build_watchlists(*config.method, problem.name, features, *corpus, config.params);
  return guidance_from_files(files, problem.bank, options);
}

ResultRow run_one(const std::filesystem::path& problem_file, const NamedStrategy& strategy,
                  const CorpusOptions& options, const std::vector<ProofCorpusEntry>* corpus,
                  std::optional<SaturationResult>* full) {
  ResultRow row;
  const auto dir = problem_file.parent_path();
  row.stats.problem = problem_file.filename() == "problem.p" ? dir.filename().string() : problem_file.stem().string();
  row.stats.strategy = strategy.label;
  try {
    Problem p = parse_cnf_file(problem_file, std::make_shared<TermBank>());
    p.name = row.stats.problem;
    auto g = make_guidance(options.guidance, p, strategy.strategy, corpus);
    SaturationResult r = saturate(p, strategy.strategy, g ? &*g : nullptr, options.budget);
    row.stats = r.stats;
    row.stats.problem = p.name;
    row.stats.strategy = strategy.label;
    if (r.proof) {
      auto problems = check_proof(*r.proof, p);
      if (!problems.empty()) throw std::logic_error("proof check failed: " + problems.front());
      if (options.write_proofs) store_proof(dir, r, g ? &*g : nullptr, strategy.label);
    }
    if (full) *full = std::move(r);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<ResultRow> run_corpus(const std::filesystem::path& dir, const std::vector<NamedStrategy>& strategies,
                                  const CorpusOptions& options) {
  options.budget.validate();
  if (strategies.empty()) throw std::invalid_argument("no strategies");
  std::vector<ProofCorpusEntry> corpus;
  const bool selecting = options.guidance.method.has_value();
  if (selecting) corpus = load_corpus(options.guidance.proof_corpus.empty() ? dir : options.guidance.proof_corpus,
                                      options.guidance.params.features);
  std::vector<ResultRow> rows;
  if (!options.results.empty()) write_results(rows, options.results);
  for (const auto& pdir : corpus_problems(dir)) {
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      CorpusOptions one = options;
      one.write_proofs = options.write_proofs && i == 0;
      rows.push_back(run_one(pdir / "problem.p", strategies[i], one, selecting ? &corpus : nullptr));
      if (!options.results.empty()) write_results(rows, options.results);
      if (options.on_row) options.on_row(rows.back());
    }
  }
  return rows;
}

std::string result_line(const ResultRow& row) {
  const RunStats& s = row.stats;
  nlohmann::ordered_json j;
  j["problem"] = s.problem;
  j["strategy"] = s.strategy;
  j["result"] = row.result_text();
  j["loops"] = s.loops;
  j["generated"] = s.generated;
  j["processed"] = s.processed;
  j["elapsed_seconds"] = s.elapsed_seconds;
  j["pps"] = s.pps();
  j["watchlist_matches"] = s.watchlist_matches;
  j["proof_matches"] = s.proof_matches;
  j["proof_length"] = s.proof_length;
  j["progress"] = s.progress;
  j["error"] = row.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.error);
  return j.dump();
}

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << kResultsHeader << '\n';
    for (const ResultRow& r : rows) out << result_line(r) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ResultRow> parse_results(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != kResultsHeader)
    throw std::runtime_error("results file lacks the '" + std::string(kResultsHeader) + "' header");
  std::vector<ResultRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ResultRow r;
      r.stats.problem = j.at("problem").get<std::string>();
      r.stats.strategy = j.at("strategy").get<std::string>();
      std::string result = j.at("result").get<std::string>();
      if (result == "error") {
        r.error = j.at("error").is_string() ? j.at("error").get<std::string>() : "error";
      } else {
        r.stats.result = parse_outcome(result);
      }
      r.stats.loops = j.at("loops").get<std::uint64_t>();
      r.stats.generated = j.at("generated").get<std::uint64_t>();
      r.stats.processed = j.at("processed").get<std::uint64_t>();
      r.stats.elapsed_seconds = j.at("elapsed_seconds").get<double>();
      r.stats.watchlist_matches = j.at("watchlist_matches").get<std::uint64_t>();
      r.stats.proof_matches = j.at("proof_matches").get<std::uint64_t>();
      r.stats.proof_length = j.at("proof_length").get<std::uint64_t>();
      r.stats.progress = j.at("progress").get<std::vector<double>>();
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("results line " + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) { return parse_results(read_file(path)); }

SolvedSets solved_sets(const std::vector<ResultRow>& rows) {
  SolvedSets out;
  for (const ResultRow& r : rows) {
    auto& s = out[r.stats.strategy];
    if (r.solved()) s.insert(r.stats.problem);
  }
  return out;
}

std::vector<CoverPick> greedy_cover(const SolvedSets& solved, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<CoverPick> out;
  std::set<std::string> covered, taken;
  while (out.size() < k && taken.size() < solved.size()) {
    const std::string* best = nullptr;
    std::size_t best_gain = 0;
    // Map order is name order, so the first strict maximum wins ties.
    for (const auto& [name, problems] : solved) {
      if (taken.count(name)) continue;
      std::size_t gain = 0;
      for (const auto& p : problems) gain += covered.count(p) == 0;
      if (!best || gain > best_gain) {
        best = &name;
        best_gain = gain;
      }
    }
    taken.insert(*best);
    covered.insert(solved.at(*best).begin(), solved.at(*best).end());
    out.push_back({*best, best_gain});
  }
  return out;
}

Report report(const std::vector<ResultRow>& rows, std::size_t cover_k) {
  Report rep;
  std::map<std::string, StrategySummary> by;
  std::map<std::string, double> pps_sum;
  std::vector<std::string> order;
  std::set<std::string> all_solved;
  for (const ResultRow& r : rows) {
    auto [it, fresh] = by.try_emplace(r.stats.strategy);
    if (fresh) order.push_back(r.stats.strategy);
    StrategySummary& s = it->second;
    s.strategy = r.stats.strategy;
    ++s.runs;
    if (!r.error.empty()) {
      ++s.errors;
      continue;
    }
    pps_sum[s.strategy] += r.stats.pps();
    if (r.solved()) {
      ++s.solved;
      all_solved.insert(r.stats.problem);
      rep.guidance.push_back({r.stats.problem, r.stats.strategy, r.stats.proof_matches, r.stats.proof_length});
    }
  }
  for (const auto& name : order) {
    StrategySummary s = by[name];
    std::size_t ok = s.runs - s.errors;
    s.mean_pps = ok ? pps_sum[name] / static_cast<double>(ok) : 0.0;
    rep.strategies.push_back(s);
  }
  rep.union_solved = all_solved.size();
  if (rep.union_solved > 0) rep.cover = greedy_cover(solved_sets(rows), cover_k);
  return rep;
}

std::string Report::text() const {
  std::ostringstream out;
  char buf[256];
  out << "strategy                         runs  solved  errors   mean-pps\n";
  for (const StrategySummary& s : strategies) {
    std::snprintf(buf, sizeof buf, "%-30s %6zu  %6zu  %6zu  %9.0f\n", s.strategy.c_str(), s.runs, s.solved, s.errors,
                  s.mean_pps);
    out << buf;
  }
  out << "union solved: " << union_solved << '\n';
  out << "greedy cover:";
  if (cover.empty()) out << " (none)";
  out << '\n';
  std::size_t total = 0;
  for (const CoverPick& p : cover) {
    total += p.added;
    std::snprintf(buf, sizeof buf, "  %-30s +%zu (%zu)\n", p.strategy.c_str(), p.added, total);
    out << buf;
  }
  if (!guidance.empty()) {
    out << "guidance ratio (guided proof steps / proof length):\n";
    for (const GuidanceRatio& g : guidance) {
      if (g.guided == 0) continue;
      out << "  " << g.problem << " [" << g.strategy << "] " << format_ratio(g.ratio()) << " (" << g.guided << '/'
          << g.length << ")\n";
    }
  }
  return out.str();
}

}  // namespace wlp
