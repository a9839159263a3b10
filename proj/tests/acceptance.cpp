// Acceptance checks over the bundled corpus. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "wlp/harness.hpp"
#include "wlp/subsumption.hpp"

using namespace wlp;
using namespace wlp::test;
namespace fs = std::filesystem;

namespace {

constexpr double kDelta = 0.1;
constexpr double kAlpha = 0.03;
constexpr double kBeta = 0.009;
constexpr double kTolerance = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Failures are counted in full but only the first few are kept.
struct Failures {
  std::size_t count = 0;
  std::vector<std::string> sample;
  void add(std::string what) {
    if (sample.size() < 5) sample.push_back(std::move(what));
    ++count;
  }
  std::string text() const {
    std::string out;
    for (const auto& s : sample) out += "\n    " + s;
    return out;
  }
};

// ---------------------------------------------------------------------------
// Watchlist sources and naive relevance replay

struct Sources {
  std::vector<WatchlistFile> files;  // in memory
  std::vector<fs::path> paths;       // on disk
  bool empty() const { return files.empty() && paths.empty(); }
};

WatchlistGuidance make_logged_guidance(const Sources& src, const Strategy& s, const TermBankPtr& bank) {
  GuidanceOptions options = GuidanceOptions::from(s);
  options.keep_event_log = true;
  if (!src.paths.empty()) return load_watchlists(src.paths, bank, options);
  return guidance_from_files(src.files, bank, options);
}

// The watchlists as plain clause lists, parsed again from their text.
std::vector<std::vector<Clause>> naive_lists(const Sources& src, const Strategy& s, const TermBankPtr& bank) {
  std::vector<std::vector<Clause>> lists;
  auto push = [&](std::vector<Clause> clauses) {
    if (clauses.empty()) return;
    if (s.relevance.mode == RelevanceMode::static_list && !lists.empty())
      lists.front().insert(lists.front().end(), clauses.begin(), clauses.end());
    else
      lists.push_back(std::move(clauses));
  };
  for (const auto& f : src.files) push(parse_cnf(f.to_tptp(), bank).clauses);
  for (const auto& p : src.paths) push(parse_cnf_file(p, bank).clauses);
  return lists;
}

// Every literal head of `c` occurs with the same sign in `d`.
bool heads_fit(const Clause& c, const Clause& d) {
  if (c.size() > d.size()) return false;
  for (const Literal& l : c.literals) {
    bool found = false;
    for (const Literal& m : d.literals)
      if (m.positive == l.positive && m.atom->symbol() == l.atom->symbol()) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

struct RelevanceAudit {
  std::size_t runs = 0;
  std::size_t events = 0;
  std::size_t spot_checks = 0;
  Failures failures;

  // Replays the event log with a linear scan over all alive watchlist clauses.
  void replay(const std::vector<std::vector<Clause>>& lists, const WatchlistGuidance& g, const SaturationResult& r,
              const std::string& tag) {
    ++runs;
    const Signature& sig = g.bank()->signature();
    const bool ska = g.options().ska;
    const bool no_remove = g.options().no_remove;
    std::vector<std::vector<bool>> alive, seen;
    std::vector<std::uint32_t> progress(lists.size(), 0);
    for (const auto& l : lists) {
      alive.emplace_back(l.size(), true);
      seen.emplace_back(l.size(), false);
    }
    if (g.watchlists().size() != lists.size()) {
      failures.add(tag + ": watchlist count " + std::to_string(g.watchlists().size()) + " vs " +
                   std::to_string(lists.size()));
      return;
    }
    for (const LoggedEvent& le : g.event_log()) {
      ++events;
      std::vector<std::pair<WatchlistId, ClauseId>> expect;
      std::set<WatchlistId> touched;
      for (std::size_t w = 0; w < lists.size(); ++w) {
        for (std::size_t i = 0; i < lists[w].size(); ++i) {
          if (!alive[w][i] || !heads_fit(le.clause, lists[w][i])) continue;
          if (!subsumes(le.clause, lists[w][i], sig, ska)) continue;
          expect.emplace_back(static_cast<WatchlistId>(w), static_cast<ClauseId>(i + 1));
          if (!seen[w][i]) {
            seen[w][i] = true;
            ++progress[w];
          }
          if (!no_remove) alive[w][i] = false;
          touched.insert(static_cast<WatchlistId>(w));
        }
      }
      double r0 = 0.0;
      for (WatchlistId w : touched) r0 = std::max(r0, static_cast<double>(progress[w]) / lists[w].size());
      if (expect != le.event.matched)
        failures.add(tag + ": clause " + std::to_string(le.event.clause) + " matched " +
                     std::to_string(le.event.matched.size()) + " entries, naive scan " + std::to_string(expect.size()));
      if (std::abs(r0 - le.event.relevance0) > kTolerance)
        failures.add(tag + ": clause " + std::to_string(le.event.clause) + " relevance0 " +
                     std::to_string(le.event.relevance0) + " vs " + std::to_string(r0));
    }
    for (std::size_t w = 0; w < lists.size(); ++w) {
      if (g.watchlist(static_cast<WatchlistId>(w)).progress != progress[w])
        failures.add(tag + ": watchlist " + std::to_string(w) + " progress " +
                     std::to_string(g.watchlist(static_cast<WatchlistId>(w)).progress) + " vs " +
                     std::to_string(progress[w]));
      double ratio = static_cast<double>(progress[w]) / lists[w].size();
      if (w >= r.stats.progress.size() || std::abs(r.stats.progress[w] - ratio) > kTolerance)
        failures.add(tag + ": reported progress of watchlist " + std::to_string(w) + " differs");
    }
  }

  // Recomputes relevance1 and relevance2 of up to 100 sampled clauses from
  // their own relevance0 and their parents' cached relevance1.
  void spot_check(const SearchState& state, const std::string& tag, std::uint64_t seed) {
    const Strategy& s = state.strategy();
    if (s.relevance.delta != kDelta || s.relevance.alpha != kAlpha || s.relevance.beta != kBeta) {
      failures.add(tag + ": unexpected relevance parameters");
      return;
    }
    std::vector<ClauseId> ids;
    for (ClauseId id = 1; id <= state.generated_count(); ++id)
      if (state.has_record(id) && state.record(id).clause.length() > 0) ids.push_back(id);
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    if (ids.size() > 100) ids.resize(100);

    Strategy dyndec = s;
    dyndec.relevance.mode = RelevanceMode::dyndec;
    dyndec.uwl = false;
    Cef relevant;
    relevant.priority = PriorityFunction::prefer_watchlist_relevant;

    for (ClauseId id : ids) {
      ++spot_checks;
      const auto& rec = state.record(id);
      double sum = 0.0;
      std::size_t n = 0;
      for (ClauseId p : rec.clause.parents)
        if (state.has_record(p)) {
          sum += state.record(p).info.relevance1;
          ++n;
        }
      const double r1 = n == 0 ? rec.info.relevance0 : rec.info.relevance0 + kDelta * sum / static_cast<double>(n);
      if (std::abs(r1 - rec.info.relevance1) > kTolerance || rec.clause.relevance1 != rec.info.relevance1)
        failures.add(tag + ": clause " + std::to_string(id) + " relevance1 " + std::to_string(rec.info.relevance1) +
                     " vs " + std::to_string(r1));
      const double len = rec.clause.length();
      const double r2 = (r1 < kAlpha && r1 / len < kBeta) ? 0.0 : r1;
      const double lib = relevance2(rec.info.relevance1, rec.clause.length(), kAlpha, kBeta);
      if (std::abs(lib - r2) > kTolerance)
        failures.add(tag + ": clause " + std::to_string(id) + " relevance2 " + std::to_string(lib) + " vs " +
                     std::to_string(r2));
      const auto prio = clause_priority(rec.clause, relevant, rec.info, dyndec);
      if (prio != std::llround(1000.0 * (1.0 - r2)))
        failures.add(tag + ": clause " + std::to_string(id) + " dyndec priority " + std::to_string(prio));
    }
  }
};

// ---------------------------------------------------------------------------
// Shared run bookkeeping

struct Ledger {
  std::size_t proofs_checked = 0;
  Failures unsound;
  RelevanceAudit relevance;
  std::size_t guided_runs = 0;
  std::size_t completed_runs = 0;
  Failures incomplete;
};

Budget corpus_budget() {
  Budget b;
  b.max_given = 10000;
  b.max_seconds = 3600;
  return b;
}

struct Run {
  SaturationResult result;
  std::string error;
  bool solved() const { return error.empty() && result.outcome == Outcome::proof; }
  std::uint64_t loops() const { return result.stats.loops; }
};

// One run with every proof checked; guided runs are also audited.
Run run(const Problem& problem, const Strategy& strategy, const Sources& src, const Budget& budget, Ledger& ledger,
        const std::string& tag, bool record_sequence = false) {
  Run out;
  try {
    std::optional<WatchlistGuidance> g;
    std::vector<std::vector<Clause>> lists;
    if (!src.empty()) {
      g.emplace(make_logged_guidance(src, strategy, problem.bank));
      lists = naive_lists(src, strategy, problem.bank);
    }
    SaturationOptions options;
    options.record_given_sequence = record_sequence;
    if (g) {
      std::uint64_t seed = std::hash<std::string>{}(tag);
      options.inspect = [&](const SearchState& s) { ledger.relevance.spot_check(s, tag, seed); };
    }
    out.result = saturate(problem, strategy, g ? &*g : nullptr, budget, options);
    if (out.result.proof) {
      ++ledger.proofs_checked;
      auto problems = check_proof(*out.result.proof, problem);
      if (!problems.empty()) ledger.unsound.add(tag + ": " + problems.front());
    }
    if (g) {
      ++ledger.guided_runs;
      ledger.relevance.replay(lists, *g, out.result, tag);
      // Only watchlists that are refutations (they hold the empty clause).
      bool complete = false;
      for (std::size_t w = 0; w < lists.size() && w < out.result.stats.progress.size(); ++w) {
        bool refutation = std::any_of(lists[w].begin(), lists[w].end(), [](const Clause& c) { return c.literals.empty(); });
        complete = complete || (refutation && out.result.stats.progress[w] >= 1.0);
      }
      if (complete) {
        ++ledger.completed_runs;
        if (out.result.outcome != Outcome::proof) ledger.incomplete.add(tag + " ended " +
                                                                        std::string(to_string(out.result.outcome)));
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    ledger.unsound.add(tag + ": error " + out.error);
  }
  return out;
}

Problem load_problem(const fs::path& dir) {
  Problem p = parse_cnf_file(dir / "problem.p", std::make_shared<TermBank>());
  p.name = dir.filename().string();
  return p;
}

// ---------------------------------------------------------------------------
// Fuzzed problems

struct Fuzzer {
  std::mt19937_64 rng;
  explicit Fuzzer(std::uint64_t seed) : rng(seed) {}
  std::size_t pick(std::size_t n) { return rng() % n; }

  std::string term(int depth) {
    static const char* vars[] = {"X", "Y", "Z"};
    static const char* consts[] = {"a", "b", "c"};
    if (depth == 0 || pick(3) == 0) return pick(2) ? vars[pick(3)] : consts[pick(3)];
    if (pick(3) == 0) return "g(" + term(depth - 1) + "," + term(depth - 1) + ")";
    return "f(" + term(depth - 1) + ")";
  }

  std::string literal(bool equality) {
    std::string sign = pick(2) ? "~" : "";
    if (equality && pick(4) == 0) return term(2) + (sign.empty() ? " = " : " != ") + term(2);
    switch (pick(3)) {
      case 0: return sign + "p(" + term(2) + ")";
      case 1: return sign + "q(" + term(1) + "," + term(1) + ")";
      default: return sign + "r(" + term(2) + ")";
    }
  }

  std::string clause(bool equality) {
    std::size_t n = pick(2) ? 1 : 2 + pick(2);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += (i ? " | " : "") + literal(equality);
    return out;
  }

  std::string problem(bool equality) {
    std::size_t n = 3 + pick(6);
    std::string out;
    for (std::size_t i = 0; i + 1 < n; ++i) out += "cnf(c" + std::to_string(i) + ", axiom, " + clause(equality) + ").\n";
    out += "cnf(goal, negated_conjecture, " + clause(equality) + ").\n";
    return out;
  }
};

// ---------------------------------------------------------------------------
// Throughput padding: ground clauses over the problem's own predicates and
// constants, deterministic per problem.

void collect(const Term* t, const Signature& sig, std::set<SymbolId>& consts) {
  if (t->is_var()) return;
  if (t->arity() == 0) consts.insert(t->symbol());
  for (const Term* a : t->args()) collect(a, sig, consts);
}

std::vector<std::string> padding(const Problem& p, std::size_t n, std::uint64_t seed) {
  const Signature& sig = p.bank->signature();
  std::set<SymbolId> preds, const_set;
  for (const Clause& c : p.clauses)
    for (const Literal& l : c.literals) {
      preds.insert(l.atom->symbol());
      for (const Term* a : l.atom->args()) collect(a, sig, const_set);
    }
  std::vector<SymbolId> ps(preds.begin(), preds.end()), cs(const_set.begin(), const_set.end());
  std::mt19937_64 rng(seed);
  std::set<std::string> out;
  std::vector<std::string> ordered;
  std::size_t attempts = 0;
  while (ordered.size() < n && !cs.empty() && attempts++ < 100 * n) {
    Clause c;
    std::size_t len = 2 + rng() % 2;
    for (std::size_t i = 0; i < len; ++i) {
      SymbolId s = ps[rng() % ps.size()];
      std::vector<const Term*> args;
      for (std::uint32_t k = 0; k < sig.arity(s); ++k) args.push_back(p.bank->constant(cs[rng() % cs.size()]));
      c.literals.push_back({rng() % 2 == 0, p.bank->app(s, args)});
    }
    std::string text = literals_to_string(c, sig);
    if (out.insert(text).second) ordered.push_back(text);
  }
  return ordered;
}

// ---------------------------------------------------------------------------

struct Context {
  fs::path corpus;
  std::size_t fuzz_runs = 1000;
  std::vector<fs::path> problems;
  std::vector<ProofCorpusEntry> entries;
  Ledger ledger;
  std::map<std::string, Run> baseline, guided;
  double soundness_seconds = 0;
};

Strategy dyn_strategy() {
  Strategy s = apply_mode(fifo_strategy(), Mode::dyn);
  return s;
}

Sources knn_dyn_sources(const Context& ctx, const Problem& p) {
  SelectionParams params;
  params.k = 16;
  Sources src;
  src.files = build_watchlists(SelectionMethod::knn_dyn, p.name, conjecture_features(p), ctx.entries, params);
  return src;
}

void corpus_runs(Context& ctx) {
  auto t0 = Clock::now();
  const Strategy fifo = fifo_strategy();
  const Strategy dyn = dyn_strategy();
  for (const auto& dir : ctx.problems) {
    Problem base = load_problem(dir);
    ctx.baseline[base.name] = run(base, fifo, {}, corpus_budget(), ctx.ledger, base.name + "/fifo");
    Problem p = load_problem(dir);
    ctx.guided[p.name] = run(p, dyn, knn_dyn_sources(ctx, p), corpus_budget(), ctx.ledger, p.name + "/dyn");
    std::cerr << "  " << p.name << ": fifo " << ctx.baseline[p.name].solved() << "/" << ctx.baseline[p.name].loops()
              << "  dyn " << ctx.guided[p.name].solved() << "/" << ctx.guided[p.name].loops() << "\n";
  }
  ctx.soundness_seconds += seconds_since(t0);
}

void fuzz_runs(Context& ctx) {
  auto t0 = Clock::now();
  Fuzzer fz(2018);
  Budget budget;
  budget.max_given = 150;
  budget.max_seconds = 0.25;
  const std::vector<Strategy> plain = {
      fifo_strategy(),
      evo_strategy(),
      parse_strategy("-H(3*Clauseweight(ConstPrio,2,1,1),1*FIFOWeight(ConstPrio))"),
      parse_strategy("--paramod -H(1*FIFOWeight(ConstPrio))"),
      parse_strategy("--paramod -H(2*Clauseweight(ConstPrio,2,1,1),1*FIFOWeight(ConstPrio))"),
  };
  const std::vector<Strategy> guided = {
      pure_watchlist_strategy(),
      interleaved_watchlist_strategy(),
      apply_mode(fifo_strategy(), Mode::dyn),
      apply_mode(fifo_strategy(), Mode::dyndec),
      apply_mode(fifo_strategy(), Mode::uwl),
      apply_mode(fifo_strategy(), Mode::ska),
      parse_strategy("--no-remove --mode=dyn --paramod -H(1*FIFOWeight(PreferWatchlistRelevant))"),
  };
  for (std::size_t i = 0; i < ctx.fuzz_runs; ++i) {
    const bool equality = fz.pick(3) == 0;
    const std::string text = fz.problem(equality);
    Problem p = parse_cnf(text, std::make_shared<TermBank>(), "fuzz_" + std::to_string(i));
    const std::string tag = "fuzz_" + std::to_string(i);
    if (fz.pick(2) == 0) {
      run(p, plain[fz.pick(plain.size())], {}, budget, ctx.ledger, tag);
      continue;
    }
    // Watchlists: the FIFO proof of the problem when there is one, plus
    // random clauses over the same signature.
    Sources src;
    Problem probe = parse_cnf(text, std::make_shared<TermBank>());
    SaturationResult first = saturate(probe, fifo_strategy(), nullptr, budget);
    if (first.proof) {
      Problem proof = parse_cnf(extract_watchlist(*first.proof), std::make_shared<TermBank>());
      WatchlistFile f{"proof", {}};
      for (const Clause& c : proof.clauses)
        f.clauses.push_back(c.literals.empty() ? "$false" : literals_to_string(c, proof.bank->signature()));
      src.files.push_back(f);
    }
    WatchlistFile noise{"noise", {}};
    for (std::size_t k = 0, n = 1 + fz.pick(5); k < n; ++k) noise.clauses.push_back(fz.clause(equality));
    src.files.push_back(noise);
    run(p, guided[fz.pick(guided.size())], src, budget, ctx.ledger, tag);
  }
  ctx.soundness_seconds += seconds_since(t0);
}

// ---------------------------------------------------------------------------
// Criteria

Criterion soundness(const Context& ctx) {
  const auto& l = ctx.ledger;
  bool pass = l.unsound.count == 0 && ctx.soundness_seconds < 300 && ctx.fuzz_runs >= 1000;
  return {"soundness", pass,
          std::to_string(l.proofs_checked) + " proofs checked over " + std::to_string(ctx.problems.size()) +
              " corpus problems x 2 strategies and " + std::to_string(ctx.fuzz_runs) + " fuzzed runs, " +
              std::to_string(l.unsound.count) + " failures, " + fixed(ctx.soundness_seconds, 1) + " s" +
              l.unsound.text()};
}

Criterion subsumption_oracle() {
  std::size_t pairs = 0, positives = 0;
  Failures mismatches;
  for (bool ska : {false, true}) {
    auto bank = new_bank();
    RandomClauses gen(ska ? 99 : 98, bank);
    for (int round = 0; round < 20; ++round) {
      std::vector<Clause> queries, targets;
      for (int i = 0; i < 10; ++i) queries.push_back(gen.clause());
      for (int i = 0; i < 20; ++i) {
        switch (gen.pick(3)) {
          case 0: targets.push_back(gen.clause()); break;
          case 1: targets.push_back(gen.instance_of(queries[gen.pick(queries.size())])); break;
          default: targets.push_back(gen.variant_of(queries[gen.pick(queries.size())])); break;
        }
      }
      WatchlistIndex index(bank->signature());
      for (std::size_t i = 0; i < targets.size(); ++i) {
        Clause t = targets[i];
        t.id = i + 1;
        index.insert(0, t);
      }
      for (const Clause& q : queries) {
        std::set<std::uint32_t> hits;
        for (const auto& h : index.find_subsumed(q, ska)) hits.insert(h.entry);
        for (std::size_t i = 0; i < targets.size(); ++i) {
          ++pairs;
          bool expect = brute_force_subsumes(q, targets[i], *bank, ska);
          positives += expect;
          if (expect != (hits.count(static_cast<std::uint32_t>(i)) > 0))
            mismatches.add(std::string(ska ? "ska " : "") + text(q, bank) + " vs " + text(targets[i], bank));
        }
      }
    }
  }
  return {"subsumption oracle", mismatches.count == 0 && pairs >= 2000,
          std::to_string(pairs) + " pairs (ska off and on), " + std::to_string(positives) + " subsuming, " +
              std::to_string(mismatches.count) + " mismatches" + mismatches.text()};
}

Criterion relevance_oracle(const Context& ctx) {
  const auto& a = ctx.ledger.relevance;
  return {"relevance oracle", a.failures.count == 0 && a.runs > 0,
          std::to_string(a.runs) + " guided runs, " + std::to_string(a.events) + " events replayed, " +
              std::to_string(a.spot_checks) + " clauses spot-checked, " + std::to_string(a.failures.count) +
              " discrepancies" + a.failures.text()};
}

Criterion replay(Context& ctx) {
  std::size_t total = 0, reproved = 0, no_more_loops = 0;
  Failures lost;
  const Strategy pure = pure_watchlist_strategy();
  for (const auto& dir : ctx.problems) {
    const Run& base = ctx.baseline.at(dir.filename().string());
    if (!base.solved()) continue;
    ++total;
    Problem p = load_problem(dir);
    Sources src;
    src.files.push_back({p.name, {}});
    Problem proof = parse_cnf(extract_watchlist(*base.result.proof), std::make_shared<TermBank>());
    for (const Clause& c : proof.clauses)
      src.files.back().clauses.push_back(c.literals.empty() ? "$false"
                                                            : literals_to_string(c, proof.bank->signature()));
    Run r = run(p, pure, src, corpus_budget(), ctx.ledger, p.name + "/replay");
    if (r.solved()) {
      ++reproved;
      if (r.loops() <= base.loops()) ++no_more_loops;
      else lost.add(p.name + ": " + std::to_string(r.loops()) + " loops vs " + std::to_string(base.loops()));
    } else {
      lost.add(p.name + ": not re-proved");
    }
  }
  const double share = total ? static_cast<double>(no_more_loops) / total : 0.0;
  return {"proof replay", total > 0 && reproved == total && share >= 0.9,
          std::to_string(reproved) + "/" + std::to_string(total) + " re-proved within budget, " +
              std::to_string(no_more_loops) + " (" + fixed(100 * share, 1) + "%) with no more loops" + lost.text()};
}

Criterion efficacy(const Context& ctx) {
  std::map<std::string, std::pair<int, int>> per_family;
  int base = 0, dyn = 0;
  double base_loops = 0, dyn_loops = 0;
  std::size_t common = 0;
  for (const auto& [name, b] : ctx.baseline) {
    const Run& g = ctx.guided.at(name);
    auto& f = per_family[family_of(name)];
    f.first += b.solved();
    f.second += g.solved();
    base += b.solved();
    dyn += g.solved();
    if (b.solved() && g.solved()) {
      ++common;
      base_loops += b.loops();
      dyn_loops += g.loops();
    }
  }
  bool gain = false;
  std::string families;
  for (const auto& [fam, c] : per_family) {
    gain = gain || c.second > c.first;
    families += " " + fam + " " + std::to_string(c.first) + "->" + std::to_string(c.second);
  }
  const double ratio = common && base_loops > 0 ? dyn_loops / base_loops : 0.0;
  return {"guidance efficacy", dyn >= base && gain && common > 0 && ratio <= 1.1,
          "solved fifo " + std::to_string(base) + ", dyn " + std::to_string(dyn) + ";" + families +
              "; mean loops on " + std::to_string(common) + " common: " + fixed(common ? base_loops / common : 0, 1) +
              " -> " + fixed(common ? dyn_loops / common : 0, 1) + " (x" + fixed(ratio) + ")"};
}

Criterion completion(const Context& ctx) {
  const auto& l = ctx.ledger;
  return {"completion termination", l.incomplete.count == 0,
          std::to_string(l.guided_runs) + " guided runs, " + std::to_string(l.completed_runs) +
              " with a complete watchlist, " + std::to_string(l.incomplete.count) + " without a proof" +
              l.incomplete.text()};
}

Criterion greedy() {
  std::mt19937 rng(4242);
  std::size_t picks = 0;
  Failures bad;
  for (int round = 0; round < 100; ++round) {
    SolvedSets s;
    const std::size_t ns = 1 + rng() % 6, np = 1 + rng() % 20;
    for (std::size_t i = 0; i < ns; ++i) {
      auto& set = s["s" + std::to_string(i)];
      for (std::size_t p = 0; p < np; ++p)
        if (rng() % 3 == 0) set.insert("p" + std::to_string(p));
    }
    const std::size_t k = 1 + rng() % ns;
    auto chosen = greedy_cover(s, k);
    if (chosen.size() != k) bad.add("round " + std::to_string(round) + ": " + std::to_string(chosen.size()) + " picks");
    std::set<std::string> covered, used;
    for (const CoverPick& pick : chosen) {
      ++picks;
      std::size_t best = 0;
      for (const auto& [name, solved] : s) {
        if (used.count(name)) continue;
        std::size_t gain = 0;
        for (const auto& p : solved) gain += covered.count(p) == 0;
        best = std::max(best, gain);
      }
      std::size_t actual = 0;
      for (const auto& p : s[pick.strategy]) actual += covered.count(p) == 0;
      if (used.count(pick.strategy) || actual != pick.added || actual != best)
        bad.add("round " + std::to_string(round) + ": pick " + pick.strategy + " adds " + std::to_string(actual) +
                ", best " + std::to_string(best));
      used.insert(pick.strategy);
      covered.insert(s[pick.strategy].begin(), s[pick.strategy].end());
    }
  }
  return {"greedy cover", bad.count == 0,
          "100 instances, " + std::to_string(picks) + " picks checked exhaustively, " + std::to_string(bad.count) +
              " wrong" + bad.text()};
}

std::string untimed_line(ResultRow row) {
  row.stats.elapsed_seconds = 0;
  return result_line(row);
}

Criterion determinism(Context& ctx) {
  Failures diffs;
  std::size_t runs = 0;
  // Given-clause sequences, unguided and guided.
  for (std::size_t i = 0; i < ctx.problems.size(); i += 6) {
    for (int guided = 0; guided < 2; ++guided) {
      std::vector<std::string> lines;
      std::vector<std::vector<ClauseId>> seqs;
      for (int rep = 0; rep < 2; ++rep) {
        Problem p = load_problem(ctx.problems[i]);
        Sources src = guided ? knn_dyn_sources(ctx, p) : Sources{};
        Run r = run(p, guided ? dyn_strategy() : fifo_strategy(), src, corpus_budget(), ctx.ledger,
                    p.name + (guided ? "/dyn-rerun" : "/fifo-rerun"), true);
        ResultRow row{r.result.stats, r.error};
        lines.push_back(untimed_line(row));
        seqs.push_back(r.result.given_sequence);
        ++runs;
      }
      if (seqs[0] != seqs[1]) diffs.add(ctx.problems[i].filename().string() + ": given sequences differ");
      if (lines[0] != lines[1]) diffs.add(ctx.problems[i].filename().string() + ": results differ");
    }
  }
  // Whole results files from two corpus runs over a copied sub-corpus.
  const fs::path tmp = fs::temp_directory_path() / ("wlp_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (std::size_t i = 1; i < ctx.problems.size(); i += 10)
    fs::copy(ctx.problems[i], tmp / ctx.problems[i].filename(), fs::copy_options::recursive);
  auto strategies = parse_strategy_list("fifo\nevo\n");
  strategies.push_back({"dyn", dyn_strategy()});
  CorpusOptions opts;
  opts.budget = corpus_budget();
  opts.guidance.method = SelectionMethod::knn_dyn;
  opts.guidance.proof_corpus = ctx.corpus;
  std::vector<std::string> files;
  for (int rep = 0; rep < 2; ++rep) {
    opts.results = tmp / ("results_" + std::to_string(rep) + ".jsonl");
    run_corpus(tmp, strategies, opts);
    std::string all;
    for (const auto& row : read_results(opts.results)) all += untimed_line(row) + "\n";
    files.push_back(all);
  }
  fs::remove_all(tmp);
  if (files[0] != files[1]) diffs.add("corpus results files differ");
  return {"determinism", diffs.count == 0,
          std::to_string(runs) + " paired reruns compared by given-clause sequence and results line, plus two "
              "results files of " + std::to_string(std::count(files[0].begin(), files[0].end(), '\n')) +
              " rows; " + std::to_string(diffs.count) + " differences" + diffs.text()};
}

Criterion throughput(Context& ctx) {
  const Strategy pref = apply_mode(fifo_strategy(), Mode::pref);
  struct Tally {
    std::uint64_t processed = 0;
    double seconds = 0;
    int solved = 0;
    std::size_t clauses = 0;
  } small, large;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ctx.problems.size() && n < 20; i += 3, ++n) {
    for (Tally* t : {&small, &large}) {
      Problem p = load_problem(ctx.problems[i]);
      const std::size_t size = t == &small ? 10 : 1000;
      SelectionParams params;
      params.k = 16;
      params.max_clauses = size;
      Sources src;
      src.files = build_watchlists(SelectionMethod::knn_st, p.name, conjecture_features(p), ctx.entries, params);
      std::size_t have = 0;
      for (const auto& f : src.files) have += f.clauses.size();
      if (have < size) src.files.push_back({"padding", padding(p, size - have, 7 + i)});
      for (const auto& f : src.files) t->clauses += f.clauses.size();
      Run r = run(p, pref, src, corpus_budget(), ctx.ledger, p.name + "/pref-" + std::to_string(size));
      t->processed += r.result.stats.processed;
      t->seconds += r.result.stats.elapsed_seconds;
      t->solved += r.solved();
    }
  }
  const double pps_small = small.seconds > 0 ? small.processed / small.seconds : 0;
  const double pps_large = large.seconds > 0 ? large.processed / large.seconds : 0;
  const double factor = pps_large > 0 ? pps_small / pps_large : 1e9;
  return {"throughput", n == 20 && factor < 10 && small.solved - large.solved <= 2,
          std::to_string(n) + " problems; watchlist size " + fixed(small.clauses / double(n), 1) + " vs " +
              fixed(large.clauses / double(n), 1) + " clauses per problem; PPS " + fixed(pps_small, 0) + " vs " +
              fixed(pps_large, 0) + " (slowdown x" + fixed(factor, 2) + "); solved " + std::to_string(small.solved) +
              " vs " + std::to_string(large.solved)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wlp acceptance checks"};
  Context ctx;
  app.add_option("--corpus", ctx.corpus, "bundled corpus directory")->required()->check(CLI::ExistingDirectory);
  app.add_option("--fuzz", ctx.fuzz_runs, "number of fuzzed runs");
  CLI11_PARSE(app, argc, argv);

  ctx.problems = corpus_problems(ctx.corpus);
  ctx.entries = load_corpus(ctx.corpus);
  auto t0 = Clock::now();

  std::cerr << "corpus runs (" << ctx.problems.size() << " problems)\n";
  corpus_runs(ctx);
  std::cerr << "fuzzed runs\n";
  fuzz_runs(ctx);

  std::vector<Criterion> verdicts;
  std::cerr << "subsumption oracle\n";
  Criterion subsumption = subsumption_oracle();
  std::cerr << "replay\n";
  Criterion replayed = replay(ctx);
  std::cerr << "determinism\n";
  Criterion deterministic = determinism(ctx);
  std::cerr << "throughput\n";
  Criterion speed = throughput(ctx);

  // Soundness, relevance and completion cover every run above.
  verdicts.push_back(soundness(ctx));
  verdicts.push_back(subsumption);
  verdicts.push_back(relevance_oracle(ctx));
  verdicts.push_back(replayed);
  verdicts.push_back(efficacy(ctx));
  verdicts.push_back(completion(ctx));
  verdicts.push_back(greedy());
  verdicts.push_back(deterministic);
  verdicts.push_back(speed);

  bool all = true;
  for (const auto& v : verdicts) {
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
    all = all && v.pass;
  }
  std::cout << "total " << fixed(seconds_since(t0), 1) << " s\n";
  return all ? 0 : 1;
}
