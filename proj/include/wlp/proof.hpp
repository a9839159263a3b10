#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wlp/feature_index.hpp"
#include "wlp/tptp.hpp"

namespace wlp {

struct ProofStep {
  Clause clause;
  // Watchlist clauses this clause subsumed when it was generated.
  std::vector<std::pair<WatchlistId, ClauseId>> matched;
};

// Derivation of the empty clause, parents before children, empty clause last.
struct ProofRecord {
  std::vector<ProofStep> steps;
  TermBankPtr bank;

  std::size_t size() const { return steps.size(); }
  std::size_t guided_steps() const;
  // Throws std::logic_error if the record is not DAG-closed with exactly one
  // empty clause in last position.
  void validate() const;
};

// Every step is re-derived from its parents with a unifier computed
// independently of the prover's inference code. Returns one message per
// failing step; empty means the proof checks.
std::vector<std::string> check_proof(const ProofRecord& proof, const Problem& problem);

// One `cnf(...)` line per step with an inference or file annotation.
std::string proof_to_tptp(const ProofRecord& proof);

// All proof clauses, including the empty clause, as a watchlist file body.
std::string extract_watchlist(const ProofRecord& proof);
void write_watchlist(const ProofRecord& proof, const std::filesystem::path& path);

}  // namespace wlp
