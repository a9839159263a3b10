// Independent re-derivation of proof steps. Deliberately shares no code with
// the prover's term bank, unifier or inference rules: terms are converted to
// plain string trees and every step is recomputed from scratch.

#include <map>
#include <optional>
#include <unordered_map>

#include "wlp/proof.hpp"

namespace wlp {

namespace {

struct CTerm {
  std::string head;
  bool var = false;
  std::vector<CTerm> args;

  bool operator==(const CTerm&) const = default;
};

struct CLit {
  bool positive;
  CTerm atom;
  bool operator==(const CLit&) const = default;
};

using CClause = std::vector<CLit>;
using Subst = std::map<std::string, CTerm>;

CTerm convert(const Term* t, const Signature& sig, const std::string& tag) {
  if (t->is_var()) return {tag + "X" + std::to_string(t->var_index()), true, {}};
  CTerm out{sig.name(t->symbol()), false, {}};
  for (const Term* a : t->args()) out.args.push_back(convert(a, sig, tag));
  return out;
}

CClause convert(const Clause& c, const Signature& sig, const std::string& tag) {
  CClause out;
  for (const Literal& l : c.literals) out.push_back({l.positive, convert(l.atom, sig, tag)});
  return out;
}

CTerm substitute(const CTerm& t, const Subst& s) {
  if (t.var) {
    auto it = s.find(t.head);
    return it == s.end() ? t : substitute(it->second, s);
  }
  CTerm out{t.head, false, {}};
  for (const CTerm& a : t.args) out.args.push_back(substitute(a, s));
  return out;
}

bool occurs(const std::string& v, const CTerm& t, const Subst& s) {
  if (t.var) {
    if (t.head == v) return true;
    auto it = s.find(t.head);
    return it != s.end() && occurs(v, it->second, s);
  }
  for (const CTerm& a : t.args)
    if (occurs(v, a, s)) return true;
  return false;
}

bool unify(const CTerm& a, const CTerm& b, Subst& s) {
  CTerm x = substitute(a, s), y = substitute(b, s);
  if (x == y) return true;
  if (!x.var && y.var) std::swap(x, y);
  if (x.var) {
    if (occurs(x.head, y, s)) return false;
    s[x.head] = y;
    return true;
  }
  if (x.head != y.head || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!unify(x.args[i], y.args[i], s)) return false;
  return true;
}

CClause finish(const std::vector<CLit>& lits, const Subst& s) {
  CClause out;
  for (const CLit& l : lits) {
    CLit m{l.positive, substitute(l.atom, s)};
    bool dup = false;
    for (const CLit& o : out) dup = dup || o == m;
    if (!dup) out.push_back(std::move(m));
  }
  return out;
}

// Variant check: a bijective variable renaming plus a literal permutation.
struct VariantSearch {
  const CClause& a;
  const CClause& b;
  std::map<std::string, std::string> fwd, bwd;
  std::vector<bool> used;

  bool term(const CTerm& x, const CTerm& y, std::vector<std::string>& added) {
    if (x.var != y.var) return false;
    if (x.var) {
      auto f = fwd.find(x.head);
      auto r = bwd.find(y.head);
      if (f != fwd.end() || r != bwd.end()) return f != fwd.end() && r != bwd.end() && f->second == y.head;
      fwd[x.head] = y.head;
      bwd[y.head] = x.head;
      added.push_back(x.head);
      return true;
    }
    if (x.head != y.head || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
      if (!term(x.args[i], y.args[i], added)) return false;
    return true;
  }

  bool run(std::size_t k) {
    if (k == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || a[k].positive != b[j].positive) continue;
      std::vector<std::string> added;
      if (term(a[k].atom, b[j].atom, added)) {
        used[j] = true;
        if (run(k + 1)) return true;
        used[j] = false;
      }
      for (const auto& v : added) {
        bwd.erase(fwd[v]);
        fwd.erase(v);
      }
    }
    return false;
  }
};

bool variant(const CClause& a, const CClause& b) {
  if (a.size() != b.size()) return false;
  VariantSearch v{a, b, {}, {}, std::vector<bool>(b.size(), false)};
  return v.run(0);
}

bool check_resolution(const CClause& l, const CClause& r, const CClause& claimed) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (l[i].positive == r[j].positive) continue;
      Subst s;
      if (!unify(l[i].atom, r[j].atom, s)) continue;
      std::vector<CLit> rest;
      for (std::size_t k = 0; k < l.size(); ++k)
        if (k != i) rest.push_back(l[k]);
      for (std::size_t k = 0; k < r.size(); ++k)
        if (k != j) rest.push_back(r[k]);
      if (variant(finish(rest, s), claimed)) return true;
    }
  }
  return false;
}

bool check_factoring(const CClause& p, const CClause& claimed) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j || p[i].positive != p[j].positive) continue;
      Subst s;
      if (!unify(p[i].atom, p[j].atom, s)) continue;
      std::vector<CLit> rest;
      for (std::size_t k = 0; k < p.size(); ++k)
        if (k != j) rest.push_back(p[k]);
      if (variant(finish(rest, s), claimed)) return true;
    }
  }
  return false;
}

bool check_equality_resolution(const CClause& p, const CClause& claimed) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].positive || p[i].atom.head != "=" || p[i].atom.args.size() != 2) continue;
    Subst s;
    if (!unify(p[i].atom.args[0], p[i].atom.args[1], s)) continue;
    std::vector<CLit> rest;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (k != i) rest.push_back(p[k]);
    if (variant(finish(rest, s), claimed)) return true;
  }
  return false;
}

// Replaces the subterm at `path` of `t`.
CTerm replace_at(const CTerm& t, const std::vector<std::size_t>& path, std::size_t depth, const CTerm& with) {
  if (depth == path.size()) return with;
  CTerm out = t;
  out.args[path[depth]] = replace_at(t.args[path[depth]], path, depth + 1, with);
  return out;
}

void positions(const CTerm& t, std::vector<std::size_t>& path, std::vector<std::vector<std::size_t>>& out) {
  if (t.var) return;
  if (!path.empty()) out.push_back(path);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    path.push_back(i);
    positions(t.args[i], path, out);
    path.pop_back();
  }
}

const CTerm& subterm_at(const CTerm& t, const std::vector<std::size_t>& path) {
  const CTerm* cur = &t;
  for (std::size_t i : path) cur = &cur->args[i];
  return *cur;
}

bool check_paramodulation(const CClause& from, const CClause& into, const CClause& claimed) {
  for (std::size_t e = 0; e < from.size(); ++e) {
    const CLit& eq = from[e];
    if (!eq.positive || eq.atom.head != "=" || eq.atom.args.size() != 2) continue;
    for (int dir = 0; dir < 2; ++dir) {
      const CTerm& lhs = eq.atom.args[dir];
      const CTerm& rhs = eq.atom.args[1 - dir];
      for (std::size_t m = 0; m < into.size(); ++m) {
        std::vector<std::vector<std::size_t>> pos;
        std::vector<std::size_t> path;
        positions(into[m].atom, path, pos);
        for (const auto& p : pos) {
          Subst s;
          if (!unify(lhs, subterm_at(into[m].atom, p), s)) continue;
          std::vector<CLit> rest;
          for (std::size_t k = 0; k < into.size(); ++k)
            rest.push_back(k == m ? CLit{into[k].positive, replace_at(into[k].atom, p, 0, rhs)} : into[k]);
          for (std::size_t k = 0; k < from.size(); ++k)
            if (k != e) rest.push_back(from[k]);
          if (variant(finish(rest, s), claimed)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> check_proof(const ProofRecord& proof, const Problem& problem) {
  std::vector<std::string> errors;
  try {
    proof.validate();
  } catch (const std::logic_error& e) {
    errors.emplace_back(e.what());
    return errors;
  }
  const Signature& psig = proof.bank->signature();
  const Signature& isig = problem.bank->signature();
  std::vector<CClause> inputs;
  for (const Clause& c : problem.clauses) inputs.push_back(convert(c, isig, "I"));

  std::unordered_map<ClauseId, const Clause*> by_id;
  for (const ProofStep& step : proof.steps) {
    const Clause& c = step.clause;
    const std::string label = "step c" + std::to_string(c.id) + " (" + c.rule + ")";
    CClause claimed = convert(c, psig, "C");
    auto parent = [&](std::size_t i, const std::string& tag) { return convert(*by_id.at(c.parents[i]), psig, tag); };
    bool ok = false;
    if (c.rule == rule::input) {
      for (const CClause& in : inputs) ok = ok || variant(in, claimed);
    } else if (c.rule == rule::resolution) {
      if (c.parents.size() == 1) ok = check_resolution(parent(0, "L"), parent(0, "R"), claimed);
      else if (c.parents.size() == 2) ok = check_resolution(parent(0, "L"), parent(1, "R"), claimed);
    } else if (c.rule == rule::factoring) {
      ok = c.parents.size() == 1 && check_factoring(parent(0, "L"), claimed);
    } else if (c.rule == rule::equality_resolution) {
      ok = c.parents.size() == 1 && check_equality_resolution(parent(0, "L"), claimed);
    } else if (c.rule == rule::paramodulation) {
      if (c.parents.size() == 1) ok = check_paramodulation(parent(0, "L"), parent(0, "R"), claimed);
      else if (c.parents.size() == 2) ok = check_paramodulation(parent(0, "L"), parent(1, "R"), claimed);
    } else {
      errors.push_back(label + ": unknown rule");
      by_id[c.id] = &c;
      continue;
    }
    if (!ok) errors.push_back(label + ": not derivable from its premises");
    by_id[c.id] = &c;
  }
  return errors;
}

}  // namespace wlp
