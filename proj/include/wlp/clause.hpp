#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wlp/term.hpp"

namespace wlp {

struct Literal {
  bool positive = true;
  const Term* atom = nullptr;  // always an application

  bool operator==(const Literal&) const = default;
};

enum class Origin { axiom, negated_conjecture, derived };

std::string_view origin_name(Origin o);

using ClauseId = std::uint64_t;

// Inference labels written into proofs and checked by the proof checker.
namespace rule {
inline constexpr std::string_view input = "input";
inline constexpr std::string_view resolution = "resolution";
inline constexpr std::string_view factoring = "factoring";
inline constexpr std::string_view paramodulation = "paramodulation";
inline constexpr std::string_view equality_resolution = "equality_resolution";
}  // namespace rule

struct Clause {
  std::vector<Literal> literals;
  // Unique within a run; doubles as the birth serial (FIFO order).
  ClauseId id = 0;
  std::string name;
  Origin origin = Origin::axiom;
  std::vector<ClauseId> parents;
  std::string rule{rule::input};
  double relevance1 = 0.0;

  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  // Symbol occurrences (predicates, functions, variables) over all literals.
  std::uint32_t length() const;
  std::uint32_t var_bound() const;
  std::uint32_t max_depth() const;
};

// True iff the clause contains complementary literals or a positive t = t.
bool is_tautology(const Clause& c, const Signature& sig);

// Removes exact duplicate literals, keeping the first occurrence.
void remove_duplicate_literals(std::vector<Literal>& lits);

// Renames the clause's variables to 0..n-1 in order of first occurrence.
void renumber_variables(Clause& c, TermBank& bank);

// Canonical form: literals sorted by (polarity, predicate, printed atom) and
// variables renamed X0, X1, ... in first-occurrence order. Alpha-variants
// (renaming plus literal permutation) normalize to the same literal list.
Clause alpha_normalize(const Clause& c, TermBank& bank);

// Printed literal list of the canonical form, e.g. "p(X0) | ~q(a)".
std::string canonical_text(const Clause& c, TermBank& bank);

std::string literal_to_string(const Literal& l, const Signature& sig);
// Literal list in the clause's current order; "$false" for the empty clause.
std::string literals_to_string(const Clause& c, const Signature& sig);

Clause import_clause(const Clause& c, const TermBank& from, TermBank& to);

}  // namespace wlp
