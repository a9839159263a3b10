#include "wlp/saturation.hpp"

#include <algorithm>
#include <stdexcept>

#include "wlp/inference.hpp"
#include "wlp/subsumption.hpp"

namespace wlp {

void Budget::validate() const {
  if (max_given == 0) throw std::invalid_argument("budget: max-given must be positive");
  if (!(max_seconds > 0)) throw std::invalid_argument("budget: max-seconds must be positive");
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::proof: return "proof";
    case Outcome::saturated: return "saturated";
    case Outcome::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

Outcome parse_outcome(std::string_view s) {
  if (s == "proof") return Outcome::proof;
  if (s == "saturated") return Outcome::saturated;
  if (s == "budget-exhausted") return Outcome::budget_exhausted;
  throw std::invalid_argument("unknown outcome '" + std::string(s) + "'");
}

namespace {

std::uint64_t literal_key(SymbolId symbol, bool positive) {
  return (static_cast<std::uint64_t>(symbol) << 1) | (positive ? 1u : 0u);
}

}  // namespace

SearchState::SearchState(const Problem& problem, Strategy strategy, WatchlistGuidance* guidance)
    : problem_(problem), strategy_(std::move(strategy)), guidance_(guidance) {
  strategy_.validate();
  if (guidance_ != nullptr && guidance_->bank() != problem_.bank)
    throw std::invalid_argument("watchlist guidance must share the problem's term bank");
  queues_.resize(strategy_.cefs.size());
}

std::uint32_t SearchState::slot_of(ClauseId id) const {
  auto it = slots_.find(id);
  if (it == slots_.end()) throw std::out_of_range("no record for clause " + std::to_string(id));
  return it->second;
}

const SearchState::Record& SearchState::record(ClauseId id) const { return records_[slot_of(id)]; }

bool SearchState::has_record(ClauseId id) const { return slots_.contains(id); }

ClauseId SearchState::add_new(Clause c) {
  TermBank& bank = *problem_.bank;
  renumber_variables(c, bank);
  c.id = next_id_++;

  MatchEvent ev;
  if (guidance_ != nullptr) ev = guidance_->record_generated(c);

  GuidanceInfo info;
  info.matched = !ev.matched.empty();
  info.relevance0 = ev.relevance0;
  std::vector<double> parent_r1;
  for (ClauseId p : c.parents)
    if (auto it = slots_.find(p); it != slots_.end()) parent_r1.push_back(records_[it->second].info.relevance1);
  info.relevance1 = relevance1(info.relevance0, parent_r1, strategy_.relevance.delta);
  c.relevance1 = info.relevance1;

  if (c.empty()) {
    if (!empty_clause_) {
      empty_clause_ = std::move(c);
      empty_clause_matches_ = std::move(ev.matched);
    }
    return empty_clause_->id;
  }
  if (is_tautology(c, bank.signature())) return c.id;

  ClauseFeatureVector fv = clause_features(c, bank.signature(), false);
  if (processed_count_ > 0) {
    std::vector<FeatureIndex::EntryId> cand;
    processed_index_.subsuming_candidates(fv, cand);
    for (auto slot : cand)
      if (subsumes(records_[slot].clause, c, bank.signature())) return c.id;
  }

  auto slot = static_cast<std::uint32_t>(records_.size());
  ClauseId id = c.id;
  records_.push_back(Record{std::move(c), info, std::move(ev.matched), fv, Status::queued});
  slots_.emplace(id, slot);
  const Record& r = records_.back();
  for (std::size_t i = 0; i < strategy_.cefs.size(); ++i)
    queues_[i].push({evaluate(r.clause, strategy_.cefs[i], info, strategy_, bank.signature()), slot});
  ++queued_;
  if (r.clause.size() == 1) unit_conflict(slot);
  return id;
}

void SearchState::unit_conflict(std::uint32_t slot) {
  const Literal& l = records_[slot].clause.literals[0];
  auto it = literal_index_.find(literal_key(l.atom->symbol(), !l.positive));
  if (it == literal_index_.end()) return;
  for (LiteralRef ref : it->second) {
    const Record& pr = records_[ref.slot];
    if (pr.status != Status::processed || pr.clause.size() != 1) continue;
    std::vector<Clause> out;
    resolve_on(records_[slot].clause, 0, pr.clause, 0, *problem_.bank, out);
    if (!out.empty()) {
      add_new(std::move(out.front()));
      return;
    }
  }
}

std::optional<ClauseId> SearchState::select_given() {
  if (queued_ == 0) return std::nullopt;
  Queue& q = queues_[cef_cursor_];
  if (++cef_used_ >= strategy_.cefs[cef_cursor_].frequency) {
    cef_used_ = 0;
    cef_cursor_ = (cef_cursor_ + 1) % queues_.size();
  }
  while (!q.empty()) {
    std::uint32_t slot = q.top().slot;
    q.pop();
    Record& r = records_[slot];
    if (r.status != Status::queued) continue;
    r.status = Status::discarded;  // provisional until add_processed
    --queued_;
    return r.clause.id;
  }
  return std::nullopt;
}

bool SearchState::forward_subsumed(const Clause& c) const {
  if (processed_count_ == 0) return false;
  const Signature& sig = problem_.bank->signature();
  std::vector<FeatureIndex::EntryId> cand;
  processed_index_.subsuming_candidates(clause_features(c, sig, false), cand);
  for (auto slot : cand) {
    const Record& r = records_[slot];
    if (r.clause.id != c.id && subsumes(r.clause, c, sig)) return true;
  }
  return false;
}

std::vector<ClauseId> SearchState::backward_simplify(const Clause& g) {
  std::vector<ClauseId> removed;
  if (processed_count_ == 0) return removed;
  const Signature& sig = problem_.bank->signature();
  std::vector<FeatureIndex::EntryId> cand;
  processed_index_.subsumed_candidates(clause_features(g, sig, false), cand);
  std::sort(cand.begin(), cand.end());
  for (auto slot : cand) {
    Record& r = records_[slot];
    if (r.clause.id == g.id || !subsumes(g, r.clause, sig)) continue;
    r.status = Status::removed;
    processed_index_.remove(slot, r.features);
    --processed_count_;
    removed.push_back(r.clause.id);
  }
  return removed;
}

void SearchState::index_processed(std::uint32_t slot) {
  Record& r = records_[slot];
  processed_index_.insert(slot, r.features);
  for (std::uint32_t i = 0; i < r.clause.literals.size(); ++i) {
    const Literal& l = r.clause.literals[i];
    literal_index_[literal_key(l.atom->symbol(), l.positive)].push_back({slot, i});
  }
  processed_order_.push_back(slot);
}

void SearchState::add_processed(ClauseId id) {
  std::uint32_t slot = slot_of(id);
  Record& r = records_[slot];
  if (r.status == Status::processed) return;
  if (r.status == Status::queued) --queued_;
  r.status = Status::processed;
  ++processed_count_;
  index_processed(slot);
}

std::vector<ClauseId> SearchState::processed_ids() const {
  std::vector<ClauseId> out;
  for (auto slot : processed_order_)
    if (records_[slot].status == Status::processed) out.push_back(records_[slot].clause.id);
  return out;
}

std::vector<Clause> SearchState::generate(ClauseId id) {
  TermBank& bank = *problem_.bank;
  const Record& gr = records_[slot_of(id)];
  const Clause& g = gr.clause;
  std::vector<Clause> out;

  // Resolution partners come from the literal index over P (g included).
  for (std::size_t i = 0; i < g.literals.size(); ++i) {
    const Literal& l = g.literals[i];
    auto it = literal_index_.find(literal_key(l.atom->symbol(), !l.positive));
    if (it == literal_index_.end()) continue;
    auto& refs = it->second;
    std::size_t keep = 0;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      LiteralRef ref = refs[k];
      const Record& pr = records_[ref.slot];
      if (pr.status != Status::processed) continue;  // drop stale entries
      refs[keep++] = ref;
      if (pr.clause.id == g.id) {
        // Self-resolution: count each unordered literal pair once.
        if (ref.literal < i) continue;
      }
      resolve_on(g, i, pr.clause, ref.literal, bank, out);
    }
    refs.resize(keep);
  }
  factors(g, bank, out);

  if (strategy_.paramod) {
    for (auto slot : processed_order_) {
      const Record& pr = records_[slot];
      if (pr.status != Status::processed) continue;
      paramodulants(g, pr.clause, bank, out);
      if (pr.clause.id != g.id) paramodulants(pr.clause, g, bank, out);
    }
    equality_resolvents(g, bank, out);
  }
  return out;
}

ProofRecord SearchState::extract_proof() const {
  if (!empty_clause_) throw std::logic_error("no empty clause derived");
  ProofRecord proof;
  proof.bank = problem_.bank;
  std::vector<ClauseId> stack(empty_clause_->parents.begin(), empty_clause_->parents.end());
  std::vector<ClauseId> ids;
  std::unordered_map<ClauseId, bool> seen;
  while (!stack.empty()) {
    ClauseId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    ids.push_back(id);
    for (ClauseId p : record(id).clause.parents) stack.push_back(p);
  }
  std::sort(ids.begin(), ids.end());
  for (ClauseId id : ids) {
    const Record& r = record(id);
    proof.steps.push_back({r.clause, r.matched});
  }
  proof.steps.push_back({*empty_clause_, empty_clause_matches_});
  return proof;
}

Verdict forward_simplify(const Clause& c, std::span<const Clause* const> processed, const Signature& sig) {
  if (is_tautology(c, sig)) return Verdict::discard;
  for (const Clause* p : processed)
    if (subsumes(*p, c, sig)) return Verdict::discard;
  return Verdict::keep;
}

SaturationResult saturate(const Problem& problem, const Strategy& strategy, WatchlistGuidance* guidance,
                          const Budget& budget, const SaturationOptions& options) {
  budget.validate();
  if (problem.clauses.empty()) throw std::invalid_argument("saturate: problem has no clauses");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SearchState state(problem, strategy, guidance);
  SaturationResult result;
  RunStats& st = result.stats;
  st.problem = problem.name;
  st.strategy = strategy.name.empty() ? strategy.to_text() : strategy.name;

  for (const Clause& input : problem.clauses) {
    Clause c = input;
    c.parents.clear();
    c.rule = std::string(rule::input);
    state.add_new(std::move(c));
    if (state.proof_found()) break;
  }

  while (!state.proof_found()) {
    if (st.loops >= budget.max_given || elapsed() > budget.max_seconds) {
      result.outcome = Outcome::budget_exhausted;
      break;
    }
    auto given = state.select_given();
    if (!given) {
      result.outcome = Outcome::saturated;
      break;
    }
    ++st.loops;
    if (options.record_given_sequence) result.given_sequence.push_back(*given);
    const Clause& g = state.record(*given).clause;
    if (state.forward_subsumed(g)) continue;
    state.backward_simplify(g);
    state.add_processed(*given);
    ++st.processed;
    for (Clause& child : state.generate(*given)) {
      state.add_new(std::move(child));
      if (state.proof_found()) break;
      // The remaining children are dropped; the next check ends the run.
      if (elapsed() > budget.max_seconds) break;
    }
  }

  st.elapsed_seconds = elapsed();
  st.generated = state.generated_count();
  if (options.inspect) options.inspect(state);
  if (guidance != nullptr) {
    st.watchlist_matches = guidance->matched_events();
    st.progress = guidance->progress_vector();
  }
  if (state.proof_found()) {
    result.outcome = Outcome::proof;
    result.proof = state.extract_proof();
    st.proof_length = result.proof->size();
    st.proof_matches = result.proof->guided_steps();
  }
  st.result = result.outcome;
  return result;
}

}  // namespace wlp
