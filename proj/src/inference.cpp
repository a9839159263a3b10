#include "wlp/inference.hpp"

#include "wlp/unify.hpp"

namespace wlp {

namespace {

Clause make_child(std::vector<Literal> lits, std::string_view rule, std::vector<ClauseId> parents) {
  remove_duplicate_literals(lits);
  Clause c;
  c.literals = std::move(lits);
  c.origin = Origin::derived;
  c.rule = std::string(rule);
  c.parents = std::move(parents);
  return c;
}

void collect_positions(const Term* t, std::vector<std::uint32_t>& path,
                       std::vector<std::pair<std::vector<std::uint32_t>, const Term*>>& out) {
  if (t->is_var()) return;
  out.emplace_back(path, t);
  for (std::uint32_t i = 0; i < t->arity(); ++i) {
    path.push_back(i);
    collect_positions(t->arg(i), path, out);
    path.pop_back();
  }
}

}  // namespace

void resolve_on(const Clause& a, std::size_t ia, const Clause& b, std::size_t ib, TermBank& bank,
                std::vector<Clause>& out) {
  const Literal& la = a.literals[ia];
  const Literal& lb = b.literals[ib];
  if (la.positive == lb.positive || la.atom->symbol() != lb.atom->symbol()) return;
  Unifier u(a.var_bound(), b.var_bound());
  if (!u.unify(la.atom, 0, lb.atom, 1)) return;
  std::vector<Literal> lits;
  lits.reserve(a.size() + b.size() - 2);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != ia) lits.push_back({a.literals[i].positive, u.apply(a.literals[i].atom, 0, bank)});
  for (std::size_t i = 0; i < b.size(); ++i)
    if (i != ib) lits.push_back({b.literals[i].positive, u.apply(b.literals[i].atom, 1, bank)});
  std::vector<ClauseId> parents{a.id};
  if (b.id != a.id) parents.push_back(b.id);
  out.push_back(make_child(std::move(lits), rule::resolution, std::move(parents)));
}

void resolvents(const Clause& a, const Clause& b, TermBank& bank, std::vector<Clause>& out) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) resolve_on(a, i, b, j, bank, out);
}

void factors(const Clause& a, TermBank& bank, std::vector<Clause>& out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Literal& li = a.literals[i];
      const Literal& lj = a.literals[j];
      if (li.positive != lj.positive || li.atom->symbol() != lj.atom->symbol()) continue;
      Unifier u(a.var_bound(), 0);
      if (!u.unify(li.atom, 0, lj.atom, 0)) continue;
      std::vector<Literal> lits;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (k != j) lits.push_back({a.literals[k].positive, u.apply(a.literals[k].atom, 0, bank)});
      out.push_back(make_child(std::move(lits), rule::factoring, {a.id}));
    }
  }
}

void paramodulants(const Clause& from, const Clause& into, TermBank& bank, std::vector<Clause>& out) {
  const SymbolId eq = bank.signature().equality();
  std::vector<std::vector<std::pair<std::vector<std::uint32_t>, const Term*>>> positions(into.size());
  bool have_positions = false;
  for (std::size_t e = 0; e < from.size(); ++e) {
    const Literal& el = from.literals[e];
    if (!el.positive || el.atom->symbol() != eq) continue;
    if (!have_positions) {
      for (std::size_t m = 0; m < into.size(); ++m) {
        std::vector<std::uint32_t> path;
        const Term* atom = into.literals[m].atom;
        for (std::uint32_t i = 0; i < atom->arity(); ++i) {
          path.assign(1, i);
          collect_positions(atom->arg(i), path, positions[m]);
        }
      }
      have_positions = true;
    }
    for (int dir = 0; dir < 2; ++dir) {
      const Term* lhs = el.atom->arg(dir);
      const Term* rhs = el.atom->arg(1 - dir);
      if (lhs->is_var()) continue;
      for (std::size_t m = 0; m < into.size(); ++m) {
        for (const auto& [path, sub] : positions[m]) {
          if (sub->symbol() != lhs->symbol()) continue;
          Unifier u(from.var_bound(), into.var_bound());
          if (!u.unify(lhs, 0, sub, 1)) continue;
          std::vector<Literal> lits;
          for (std::size_t k = 0; k < into.size(); ++k) {
            const Literal& l = into.literals[k];
            if (k == m)
              lits.push_back({l.positive, u.apply_replacing(l.atom, 1, path, rhs, 0, bank)});
            else
              lits.push_back({l.positive, u.apply(l.atom, 1, bank)});
          }
          for (std::size_t k = 0; k < from.size(); ++k)
            if (k != e) lits.push_back({from.literals[k].positive, u.apply(from.literals[k].atom, 0, bank)});
          std::vector<ClauseId> parents{from.id};
          if (into.id != from.id) parents.push_back(into.id);
          out.push_back(make_child(std::move(lits), rule::paramodulation, std::move(parents)));
        }
      }
    }
  }
}

void equality_resolvents(const Clause& a, TermBank& bank, std::vector<Clause>& out) {
  const SymbolId eq = bank.signature().equality();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Literal& l = a.literals[i];
    if (l.positive || l.atom->symbol() != eq) continue;
    Unifier u(a.var_bound(), 0);
    if (!u.unify(l.atom->arg(0), 0, l.atom->arg(1), 0)) continue;
    std::vector<Literal> lits;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (k != i) lits.push_back({a.literals[k].positive, u.apply(a.literals[k].atom, 0, bank)});
    out.push_back(make_child(std::move(lits), rule::equality_resolution, {a.id}));
  }
}

std::vector<Clause> generate(const Clause& g, std::span<const Clause* const> processed, TermBank& bank,
                             bool paramod) {
  std::vector<Clause> out;
  for (const Clause* p : processed) resolvents(g, *p, bank, out);
  resolvents(g, g, bank, out);
  factors(g, bank, out);
  if (paramod) {
    for (const Clause* p : processed) {
      paramodulants(g, *p, bank, out);
      paramodulants(*p, g, bank, out);
    }
    paramodulants(g, g, bank, out);
    equality_resolvents(g, bank, out);
  }
  return out;
}

}  // namespace wlp
