// Generates the bundled corpus: Horn problems over finite structures whose
// negated conjecture is a derivable ground fact (or a pair of them).
#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

using Atom = std::vector<std::string>;  // predicate, then arguments

struct Rule {
  Atom head;
  std::vector<Atom> body;
};

bool is_var(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

std::string atom_text(const Atom& a) {
  std::string s = a[0];
  if (a.size() > 1) {
    s += '(';
    for (std::size_t i = 1; i < a.size(); ++i) s += (i > 1 ? "," : "") + a[i];
    s += ')';
  }
  return s;
}

Atom parse_atom(const std::string& text) {
  Atom a;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == ',' || ch == ')') {
      if (!cur.empty()) a.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) a.push_back(cur);
  return a;
}

// "head :- b1, b2" with atoms separated by "), ".
Rule parse_rule(const std::string& text) {
  Rule r;
  auto sep = text.find(":-");
  r.head = parse_atom(text.substr(0, sep));
  std::string body = text.substr(sep + 2);
  std::size_t start = 0;
  while (start < body.size()) {
    auto close = body.find(')', start);
    r.body.push_back(parse_atom(body.substr(start, close + 1 - start)));
    start = body.find_first_not_of(", ", close + 1);
    if (start == std::string::npos) break;
  }
  return r;
}

using Env = std::map<std::string, std::string>;

// Naive bottom-up evaluation; records the round in which each fact appeared.
std::map<Atom, int> closure(const std::vector<Atom>& facts, const std::vector<Rule>& rules) {
  std::map<Atom, int> db;
  for (const Atom& f : facts) db.emplace(f, 0);
  for (int round = 1;; ++round) {
    std::map<std::string, std::vector<const Atom*>> by_pred;
    for (const auto& [f, _] : db) by_pred[f[0]].push_back(&f);
    std::vector<Atom> fresh;
    for (const Rule& r : rules) {
      std::vector<Env> envs{Env{}};
      for (const Atom& b : r.body) {
        std::vector<Env> next;
        for (const Env& e : envs)
          for (const Atom* f : by_pred[b[0]]) {
            if (f->size() != b.size()) continue;
            Env e2 = e;
            bool ok = true;
            for (std::size_t i = 1; ok && i < b.size(); ++i) {
              if (is_var(b[i])) {
                auto [it, ins] = e2.emplace(b[i], (*f)[i]);
                ok = ins || it->second == (*f)[i];
              } else {
                ok = b[i] == (*f)[i];
              }
            }
            if (ok) next.push_back(std::move(e2));
          }
        envs = std::move(next);
      }
      for (const Env& e : envs) {
        Atom h = r.head;
        for (std::size_t i = 1; i < h.size(); ++i)
          if (is_var(h[i])) h[i] = e.at(h[i]);
        if (!db.count(h)) fresh.push_back(h);
      }
    }
    if (fresh.empty()) return db;
    for (const Atom& h : fresh) db.emplace(h, round);
  }
}

struct Structure {
  std::string label;
  std::vector<Atom> facts;
};

struct Family {
  std::string name;
  std::string description;
  std::vector<Structure> structures;
  std::vector<Rule> rules;
  std::vector<std::string> goal_predicates;
};

std::string el(const char* prefix, int i) { return prefix + std::to_string(i); }

// Dihedral group of order 2n (n >= 3) or cyclic group of order n.
Structure group(int n, bool dihedral) {
  Structure s;
  int order = dihedral ? 2 * n : n;
  s.label = (dihedral ? "D" : "Z") + std::to_string(n);
  // Element k < n is a rotation r^k; k >= n is the reflection s r^(k-n).
  auto mul = [&](int a, int b) {
    if (!dihedral) return (a + b) % n;
    bool ra = a < n, rb = b < n;
    int i = ra ? a : a - n, j = rb ? b : b - n;
    if (ra && rb) return (i + j) % n;
    if (ra && !rb) return n + ((j - i) % n + n) % n;
    if (!ra && rb) return n + (i + j) % n;
    return ((j - i) % n + n) % n;
  };
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) s.facts.push_back({"mul", el("e", a), el("e", b), el("e", mul(a, b))});
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul(a, b) == 0) s.facts.push_back({"inv", el("e", a), el("e", b)});
  s.facts.push_back({"unit", "e0"});
  return s;
}

Family group_family() {
  Family f;
  f.name = "group";
  f.description = "Horn group-like sets: Cayley table facts and derived word predicates";
  f.structures = {group(6, false), group(3, true), group(4, true), group(8, false)};
  for (const char* r : {
           "sq(X,Y) :- mul(X,X,Y)",
           "cube(X,Y) :- sq(X,Z), mul(Z,X,Y)",
           "quart(X,Y) :- sq(X,Z), sq(Z,Y)",
           "conj(X,Y,Z) :- inv(Y,W), mul(W,X,U), mul(U,Y,Z)",
           "commute(X,Y) :- mul(X,Y,Z), mul(Y,X,Z)",
           "commutator(X,Y,Z) :- inv(X,A), inv(Y,B), mul(A,B,C), mul(C,X,D), mul(D,Y,Z)",
           "involution(X) :- sq(X,Y), unit(Y)",
           "rdiv(X,Y,Z) :- inv(Y,W), mul(X,W,Z)",
           "twisted(X,Y,Z) :- conj(X,Y,U), sq(U,Z)",
           "central(X,Y) :- commute(X,Y), involution(X)",
       })
    f.rules.push_back(parse_rule(r));
  f.goal_predicates = {"sq", "cube", "quart", "conj", "commute", "commutator", "involution", "rdiv", "twisted", "central"};
  return f;
}

// Divisor lattice of n: le, meet and join tables.
Structure divisors(int n) {
  Structure s;
  s.label = "Div" + std::to_string(n);
  std::vector<int> ds;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  for (int a : ds)
    for (int b : ds) {
      if (b % a == 0) s.facts.push_back({"le", el("d", a), el("d", b)});
      int g = std::gcd(a, b);
      s.facts.push_back({"meet", el("d", a), el("d", b), el("d", g)});
      s.facts.push_back({"join", el("d", a), el("d", b), el("d", a / g * b)});
    }
  s.facts.push_back({"bottom", "d1"});
  s.facts.push_back({"top", el("d", n)});
  return s;
}

Family lattice_family() {
  Family f;
  f.name = "lattice";
  f.description = "lattice-style axiom sets without equality: order, meet and join tables";
  f.structures = {divisors(18), divisors(24), divisors(30), divisors(36)};
  for (const char* r : {
           "lt(X,Y) :- le(X,Y), meet(Y,X,X), join(X,Y,Y)",
           "ub(X,Y,Z) :- le(X,Z), le(Y,Z)",
           "lb(X,Y,Z) :- le(Z,X), le(Z,Y)",
           "absorbs(X,Y) :- join(X,Y,Z), meet(X,Z,X)",
           "dist(X,Y,Z,W) :- join(Y,Z,A), meet(X,A,W)",
           "median(X,Y,Z,W) :- meet(X,Y,A), meet(Y,Z,B), meet(X,Z,C), join(A,B,D), join(D,C,W)",
           "compl(X,Y) :- meet(X,Y,A), bottom(A), join(X,Y,B), top(B)",
           "between(X,Y,Z) :- le(X,Y), le(Y,Z)",
           "modular(X,Y,Z) :- le(X,Z), join(X,Y,A), meet(A,Z,B), meet(Y,Z,C), join(X,C,B)",
           "atom(X) :- lt(Y,X), bottom(Y)",
       })
    f.rules.push_back(parse_rule(r));
  f.goal_predicates = {"lt", "ub", "lb", "absorbs", "dist", "median", "compl", "between", "modular", "atom"};
  return f;
}

// Two random binary relations over v0..v(n-1).
Structure relations(int n, std::uint32_t seed, double density) {
  Structure s;
  s.label = "Rel" + std::to_string(n) + "s" + std::to_string(seed);
  std::mt19937 rng(seed);
  const auto threshold = static_cast<std::uint32_t>(density * 1000);
  for (const char* p : {"r", "s"})
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (rng() % 1000 < threshold) s.facts.push_back({p, el("v", a), el("v", b)});
  for (int a = 0; a < n; ++a) s.facts.push_back({"dom", el("v", a)});
  return s;
}

Family relalg_family() {
  Family f;
  f.name = "relalg";
  f.description = "relational algebra-style sets: base relations with composition, converse and union";
  f.structures = {relations(6, 11, 0.3), relations(7, 12, 0.25), relations(7, 13, 0.3), relations(8, 14, 0.25)};
  for (const char* r : {
           "comp(X,Z) :- r(X,Y), s(Y,Z)",
           "conv(X,Y) :- r(Y,X)",
           "union(X,Y) :- r(X,Y)",
           "union(X,Y) :- s(X,Y)",
           "inter(X,Y) :- r(X,Y), s(X,Y)",
           "comp2(X,Z) :- comp(X,Y), conv(Y,Z)",
           "path3(X,W) :- union(X,Y), union(Y,Z), comp(Z,W)",
           "sym(X,Y) :- union(X,Y), union(Y,X)",
           "ident(X,X) :- dom(X), comp(X,Y), conv(Y,X)",
           "diam(X,Z) :- conv(X,Y), comp(Y,Z)",
       })
    f.rules.push_back(parse_rule(r));
  f.goal_predicates = {"comp", "conv", "union", "inter", "comp2", "path3", "sym", "ident", "diam"};
  return f;
}

void write_problem(const fs::path& dir, const Family& f, const Structure& s, const std::vector<Atom>& goals,
                   int depth) {
  fs::create_directories(dir);
  std::ofstream out(dir / "problem.p", std::ios::binary);
  out << "% family: " << f.name << " (" << f.description << ")\n";
  out << "% structure: " << s.label << ", conjecture depth " << depth << "\n";
  std::size_t k = 0;
  for (const Atom& a : s.facts) out << "cnf(fact_" << ++k << ", axiom, " << atom_text(a) << ").\n";
  k = 0;
  for (const Rule& r : f.rules) {
    out << "cnf(rule_" << ++k << ", axiom, " << atom_text(r.head);
    for (const Atom& b : r.body) out << " | ~" << atom_text(b);
    out << ").\n";
  }
  out << "cnf(goal, negated_conjecture, ";
  for (std::size_t i = 0; i < goals.size(); ++i) out << (i ? " | ~" : "~") << atom_text(goals[i]);
  out << ").\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled corpus"};
  std::string out = "corpus";
  int per_family = 20;
  std::uint32_t seed = 2018;
  std::size_t pool_size = 6;
  app.add_option("--out", out, "output directory");
  app.add_option("--per-family", per_family, "problems per family");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--pool", pool_size, "conjecture atoms per structure");
  CLI11_PARSE(app, argc, argv);

  std::mt19937 rng;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::uint32_t family_index = 0;
  for (const Family& f : {relalg_family(), lattice_family(), group_family()}) {
    // One stream per family keeps each family stable when another changes.
    rng.seed(seed + 1000 * family_index++);
    // Conjectures of one structure are drawn from a small pool of derivable
    // atoms, so related problems share parts of their proofs.
    std::vector<std::vector<std::pair<Atom, int>>> pools;
    for (const Structure& s : f.structures) {
      auto db = closure(s.facts, f.rules);
      std::vector<std::pair<Atom, int>> pool;
      for (std::size_t n = 0; n < pool_size * 20 && pool.size() < pool_size; ++n) {
        const std::string& pred = f.goal_predicates[pick(f.goal_predicates.size())];
        std::vector<std::pair<Atom, int>> cands;
        for (const auto& [a, d] : db)
          if (a[0] == pred) cands.emplace_back(a, d);
        if (cands.empty()) continue;
        auto c = cands[pick(cands.size())];
        if (std::find(pool.begin(), pool.end(), c) == pool.end()) pool.push_back(c);
      }
      pools.push_back(std::move(pool));
    }
    std::set<std::pair<std::size_t, std::vector<Atom>>> used;
    for (int i = 0; i < per_family;) {
      std::size_t si = pick(f.structures.size());
      const auto& pool = pools[si];
      std::size_t ngoals = pick(3) == 0 ? 1 : 2;
      std::vector<Atom> goals;
      int depth = 0;
      while (goals.size() < ngoals) {
        auto [a, d] = pool[pick(pool.size())];
        if (std::find(goals.begin(), goals.end(), a) != goals.end()) continue;
        goals.push_back(a);
        depth = std::max(depth, d);
      }
      std::sort(goals.begin(), goals.end());
      if (!used.insert({si, goals}).second) continue;
      char name[64];
      std::snprintf(name, sizeof name, "%s_%02d", f.name.c_str(), i);
      write_problem(fs::path(out) / name, f, f.structures[si], goals, depth);
      ++i;
    }
  }
  return 0;
}
