#pragma once

// Shared helpers and test-only oracles. Nothing here calls into the prover's
// matching or unification code.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wlp/clause.hpp"
#include "wlp/tptp.hpp"

namespace wlp::test {

inline TermBankPtr new_bank() { return std::make_shared<TermBank>(); }

// Parses the literal list of one clause, e.g. "p(X) | ~q(a)".
inline Clause clause(const std::string& literals, const TermBankPtr& bank, Origin origin = Origin::axiom) {
  std::string role = origin == Origin::negated_conjecture ? "negated_conjecture" : "axiom";
  Problem p = parse_cnf("cnf(t, " + role + ", " + literals + ").", bank);
  return p.clauses.at(0);
}

inline std::string text(const Clause& c, const TermBankPtr& bank) { return literals_to_string(c, bank->signature()); }

// ---------------------------------------------------------------------------
// Brute-force subsumption: enumerate every assignment of the pattern's
// variables to subterms of the target, then every injection of literals.

inline void all_subterms(const Term* t, std::set<const Term*>& out) {
  out.insert(t);
  if (!t->is_var())
    for (const Term* a : t->args()) all_subterms(a, out);
}

inline void all_vars(const Term* t, std::set<std::uint32_t>& out) {
  if (t->is_var()) {
    out.insert(t->var_index());
    return;
  }
  for (const Term* a : t->args()) all_vars(a, out);
}

inline const Term* instantiate(const Term* t, const std::map<std::uint32_t, const Term*>& s, TermBank& bank) {
  if (t->is_var()) {
    auto it = s.find(t->var_index());
    return it == s.end() ? t : it->second;
  }
  std::vector<const Term*> args;
  for (const Term* a : t->args()) args.push_back(instantiate(a, s, bank));
  return bank.app(t->symbol(), args);
}

// Replaces every skolem symbol by one representative name per arity.
inline const Term* abstract_skolems(const Term* t, TermBank& bank) {
  if (t->is_var()) return t;
  std::vector<const Term*> args;
  for (const Term* a : t->args()) args.push_back(abstract_skolems(a, bank));
  const SymbolInfo& info = bank.signature().info(t->symbol());
  std::string name = info.skolem ? "skolem_class_" + std::to_string(info.arity) : info.name;
  return bank.app(name, args);
}

inline Clause abstract_skolems(const Clause& c, TermBank& bank) {
  Clause out = c;
  for (Literal& l : out.literals) l.atom = abstract_skolems(l.atom, bank);
  return out;
}

inline bool injects(const std::vector<Literal>& small, const std::vector<Literal>& big) {
  // Enumerate ordered selections of |small| distinct indices of big.
  std::vector<bool> used(big.size(), false);
  auto rec = [&](auto& self, std::size_t k) -> bool {
    if (k == small.size()) return true;
    for (std::size_t j = 0; j < big.size(); ++j) {
      if (used[j] || !(small[k] == big[j])) continue;
      used[j] = true;
      if (self(self, k + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return small.size() <= big.size() && rec(rec, 0);
}

inline bool brute_force_subsumes(Clause c, Clause d, TermBank& bank, bool ska) {
  if (ska) {
    c = abstract_skolems(c, bank);
    d = abstract_skolems(d, bank);
  }
  std::set<std::uint32_t> vars;
  for (const Literal& l : c.literals) all_vars(l.atom, vars);
  std::set<const Term*> subs;
  for (const Literal& l : d.literals) all_subterms(l.atom, subs);
  std::vector<std::uint32_t> vs(vars.begin(), vars.end());
  std::vector<const Term*> pool(subs.begin(), subs.end());
  if (!vs.empty() && pool.empty()) return false;
  std::vector<std::size_t> idx(vs.size(), 0);
  while (true) {
    std::map<std::uint32_t, const Term*> s;
    for (std::size_t i = 0; i < vs.size(); ++i) s[vs[i]] = pool[idx[i]];
    std::vector<Literal> inst;
    for (const Literal& l : c.literals) inst.push_back({l.positive, instantiate(l.atom, s, bank)});
    if (injects(inst, d.literals)) return true;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < pool.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) return false;
  }
}

// Alpha-variants: for equal literal counts, mutual multiset subsumption holds
// exactly when one clause is a renaming of the other.
inline bool subsumes_both_ways_by_brute_force(const Clause& a, const Clause& b, TermBank& bank) {
  return a.size() == b.size() && brute_force_subsumes(a, b, bank, false) && brute_force_subsumes(b, a, bank, false);
}

// ---------------------------------------------------------------------------
// Random clauses over a small signature.

struct RandomClauses {
  std::mt19937_64 rng;
  TermBankPtr bank;
  std::vector<std::pair<std::string, std::uint32_t>> predicates{{"p", 1}, {"q", 2}};
  std::vector<std::pair<std::string, std::uint32_t>> functions{{"a", 0}, {"f", 1}, {"sk1", 1}, {"sk2", 1}};
  std::uint32_t variables = 3;
  std::uint32_t max_depth = 2;
  std::size_t max_literals = 3;

  RandomClauses(std::uint64_t seed, TermBankPtr b) : rng(seed), bank(std::move(b)) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  const Term* term(std::uint32_t depth) {
    if (depth == 0 || pick(3) == 0) {
      if (pick(2) == 0) return bank->var(static_cast<std::uint32_t>(pick(variables)));
      std::vector<std::size_t> consts;
      for (std::size_t i = 0; i < functions.size(); ++i)
        if (functions[i].second == 0) consts.push_back(i);
      if (consts.empty()) return bank->var(0);
      return bank->app(functions[consts[pick(consts.size())]].first, {});
    }
    auto [name, arity] = functions[pick(functions.size())];
    std::vector<const Term*> args;
    for (std::uint32_t i = 0; i < arity; ++i) args.push_back(term(depth - 1));
    return bank->app(name, args);
  }

  Literal literal() {
    auto [name, arity] = predicates[pick(predicates.size())];
    std::vector<const Term*> args;
    for (std::uint32_t i = 0; i < arity; ++i) args.push_back(term(max_depth));
    return {pick(2) == 0, bank->app(name, args)};
  }

  Clause clause() {
    Clause c;
    std::size_t n = 1 + pick(max_literals);
    for (std::size_t i = 0; i < n; ++i) c.literals.push_back(literal());
    return c;
  }

  // A random instance of `c`, possibly with an extra literal, shuffled.
  Clause instance_of(const Clause& c) {
    std::map<std::uint32_t, const Term*> s;
    for (std::uint32_t v = 0; v < variables; ++v)
      if (pick(2) == 0) s[v] = term(1);
    Clause d;
    for (const Literal& l : c.literals) d.literals.push_back({l.positive, instantiate(l.atom, s, *bank)});
    if (d.literals.size() < max_literals && pick(2) == 0) d.literals.push_back(literal());
    std::shuffle(d.literals.begin(), d.literals.end(), rng);
    return d;
  }

  // Same clause with variables renamed by a random permutation and shuffled.
  Clause variant_of(const Clause& c) {
    std::vector<std::uint32_t> perm(variables + 4);
    for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<std::uint32_t, const Term*> s;
    for (std::uint32_t v = 0; v < variables; ++v) s[v] = bank->var(perm[v]);
    Clause d = c;
    for (Literal& l : d.literals) l.atom = instantiate(l.atom, s, *bank);
    std::shuffle(d.literals.begin(), d.literals.end(), rng);
    return d;
  }
};

}  // namespace wlp::test
