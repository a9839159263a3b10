#pragma once

#include <span>
#include <vector>

#include "wlp/clause.hpp"

namespace wlp {

// Generating inferences of the unordered calculus. Children carry parents,
// rule label and origin `derived`; ids are assigned by the caller. Variables
// of every child are numbered from 0 in first-occurrence order and exact
// duplicate literals are merged.

// Resolvents of literal `ia` of `a` against literal `ib` of `b` (at most one).
void resolve_on(const Clause& a, std::size_t ia, const Clause& b, std::size_t ib, TermBank& bank,
                std::vector<Clause>& out);
// All binary resolvents between `a` and `b` (which may be the same clause).
void resolvents(const Clause& a, const Clause& b, TermBank& bank, std::vector<Clause>& out);
// Binary factors of `a`.
void factors(const Clause& a, TermBank& bank, std::vector<Clause>& out);
// Unordered paramodulants from the positive equations of `from` into every
// non-variable subterm of `into`, using both orientations.
void paramodulants(const Clause& from, const Clause& into, TermBank& bank, std::vector<Clause>& out);
// Instances of `a` with one negative equation s != t removed after unifying s and t.
void equality_resolvents(const Clause& a, TermBank& bank, std::vector<Clause>& out);

// All inferences between `g` and the clauses of `processed` plus `g` itself.
std::vector<Clause> generate(const Clause& g, std::span<const Clause* const> processed, TermBank& bank,
                             bool paramod);

}  // namespace wlp
