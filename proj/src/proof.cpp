#include "wlp/proof.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace wlp {

std::size_t ProofRecord::guided_steps() const {
  std::size_t n = 0;
  for (const ProofStep& s : steps)
    if (!s.matched.empty()) ++n;
  return n;
}

void ProofRecord::validate() const {
  if (steps.empty() || !steps.back().clause.empty())
    throw std::logic_error("proof must end with the empty clause");
  std::unordered_set<ClauseId> seen;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Clause& c = steps[i].clause;
    if (c.empty() && i + 1 != steps.size()) throw std::logic_error("empty clause before the last step");
    for (ClauseId p : c.parents)
      if (!seen.contains(p))
        throw std::logic_error("step c" + std::to_string(c.id) + " cites c" + std::to_string(p) +
                               " which does not precede it");
    if (!seen.insert(c.id).second) throw std::logic_error("duplicate step id c" + std::to_string(c.id));
  }
}

std::string proof_to_tptp(const ProofRecord& proof) {
  std::string out;
  for (const ProofStep& s : proof.steps) {
    const Clause& c = s.clause;
    std::string annotation;
    if (c.rule == rule::input) {
      annotation = "file(problem, " + (c.name.empty() ? std::string("unknown") : c.name) + ")";
    } else {
      annotation = "inference(" + c.rule + ", [status(thm)], [";
      for (std::size_t i = 0; i < c.parents.size(); ++i) {
        if (i) annotation += ", ";
        annotation += "c" + std::to_string(c.parents[i]);
      }
      annotation += "])";
    }
    Clause named = c;
    named.name.clear();
    out += print_clause(named, *proof.bank, annotation);
    out += '\n';
  }
  return out;
}

std::string extract_watchlist(const ProofRecord& proof) { return proof_to_tptp(proof); }

void write_watchlist(const ProofRecord& proof, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << extract_watchlist(proof);
}

}  // namespace wlp
