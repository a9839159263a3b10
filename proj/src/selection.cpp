#include "wlp/selection.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace wlp {

namespace {

std::string symbol_token(const Term* t, const Signature& sig) {
  return t->is_var() ? std::string("VAR") : sig.name(t->symbol());
}

std::string skeleton(const Term* t, const Signature& sig, FeatureBag& bag) {
  std::string s;
  if (t->is_var()) {
    s = "VAR";
  } else {
    s = sig.is_skolem(t->symbol()) ? "SK" + std::to_string(t->arity()) : sig.name(t->symbol());
    if (t->arity() > 0) {
      s += '(';
      for (std::uint32_t i = 0; i < t->arity(); ++i) {
        if (i) s += ',';
        s += skeleton(t->arg(i), sig, bag);
      }
      s += ')';
    }
  }
  ++bag["t:" + s];
  return s;
}

void walks(const Term* t, const Signature& sig, const std::string* grandparent, FeatureBag& bag,
           const FeatureOptions& options) {
  if (t->is_var()) return;
  std::string self = sig.name(t->symbol());
  for (const Term* a : t->args()) {
    std::string child = symbol_token(a, sig);
    ++bag["w:" + self + "/" + child];
    if (options.three_node_walks && grandparent) ++bag["w:" + *grandparent + "/" + self + "/" + child];
    walks(a, sig, &self, bag, options);
  }
}

void symbols(const Term* t, const Signature& sig, FeatureBag& bag) {
  if (t->is_var()) return;
  ++bag["s:" + sig.name(t->symbol())];
  for (const Term* a : t->args()) symbols(a, sig, bag);
}

void add_clause(const Clause& c, const Signature& sig, FeatureBag& bag, const FeatureOptions& options) {
  for (const Literal& l : c.literals) {
    symbols(l.atom, sig, bag);
    walks(l.atom, sig, nullptr, bag, options);
    skeleton(l.atom, sig, bag);
  }
}

struct Scored {
  const ProofCorpusEntry* entry;
  double score;
};

std::vector<Scored> ranked(const KnnModel& model, const FeatureBag& query) {
  std::vector<Scored> out;
  out.reserve(model.entries().size());
  for (const ProofCorpusEntry& e : model.entries()) out.push_back({&e, model.similarity(query, e)});
  std::sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entry->name < b.entry->name;
  });
  return out;
}

std::vector<ProofCorpusEntry> usable(std::span<const ProofCorpusEntry> corpus, const std::string& target) {
  std::vector<ProofCorpusEntry> out;
  for (const ProofCorpusEntry& e : corpus)
    if (e.name != target && e.solved()) out.push_back(e);
  return out;
}

}  // namespace

FeatureBag extract_features(std::span<const Clause> clauses, const Signature& sig, FeatureOptions options) {
  FeatureBag bag;
  for (const Clause& c : clauses) add_clause(c, sig, bag, options);
  return bag;
}

FeatureBag extract_features(std::span<const Clause* const> clauses, const Signature& sig, FeatureOptions options) {
  FeatureBag bag;
  for (const Clause* c : clauses) add_clause(*c, sig, bag, options);
  return bag;
}

FeatureBag conjecture_features(const Problem& problem, FeatureOptions options) {
  auto conj = problem.conjecture_clauses();
  if (conj.empty()) return extract_features(std::span<const Clause>(problem.clauses), problem.bank->signature(), options);
  return extract_features(std::span<const Clause* const>(conj), problem.bank->signature(), options);
}

KnnModel::KnnModel(std::vector<ProofCorpusEntry> entries) : entries_(std::move(entries)) {
  std::map<std::string, std::size_t> df;
  for (const ProofCorpusEntry& e : entries_)
    for (const auto& [f, n] : e.conjecture)
      if (n > 0) ++df[f];
  const double total = static_cast<double>(entries_.size());
  for (const auto& [f, d] : df) idf_[f] = std::log(total / static_cast<double>(d));
}

double KnnModel::idf(const std::string& feature) const {
  auto it = idf_.find(feature);
  return it == idf_.end() ? 0.0 : it->second;
}

double KnnModel::similarity(const FeatureBag& query, const ProofCorpusEntry& entry) const {
  double s = 0.0;
  auto q = query.begin();
  auto e = entry.conjecture.begin();
  while (q != query.end() && e != entry.conjecture.end()) {
    if (q->first < e->first) {
      ++q;
    } else if (e->first < q->first) {
      ++e;
    } else {
      s += idf(q->first) * std::min(q->second, e->second);
      ++q;
      ++e;
    }
  }
  return s;
}

std::vector<std::string> knn_suggest(const KnnModel& model, const FeatureBag& query, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::string> out;
  for (const Scored& s : ranked(model, query)) {
    if (out.size() == k) break;
    out.push_back(s.entry->name);
  }
  return out;
}

std::vector<std::string> knn_suggest_round2(const KnnModel& model, const FeatureBag& query, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto push = [&](const std::string& name) {
    if (out.size() < k && seen.insert(name).second) out.push_back(name);
  };
  for (const Scored& s : ranked(model, query)) {
    if (s.entry->matched_proofs.empty()) {
      push(s.entry->name);
    } else {
      for (const std::string& m : s.entry->matched_proofs) push(m);
    }
    if (out.size() == k) break;
  }
  return out;
}

std::string_view to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::art: return "art";
    case SelectionMethod::freq: return "freq";
    case SelectionMethod::knn_st: return "knn-st";
    case SelectionMethod::knn_dyn: return "knn-dyn";
  }
  return "?";
}

SelectionMethod parse_selection_method(std::string_view s) {
  for (SelectionMethod m : {SelectionMethod::art, SelectionMethod::freq, SelectionMethod::knn_st, SelectionMethod::knn_dyn})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown selection method: " + std::string(s));
}

std::string WatchlistFile::to_tptp() const {
  std::string stem = "w_";
  for (char ch : name) stem += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  std::string out;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    out += "cnf(" + stem + "_" + std::to_string(i + 1) + ", plain, " + clauses[i] + ").\n";
  return out;
}

std::string family_of(std::string_view name) {
  auto us = name.rfind('_');
  if (us == std::string_view::npos || us == 0 || us + 1 == name.size()) return {};
  for (std::size_t i = us + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return {};
  return std::string(name.substr(0, us));
}

std::vector<WatchlistFile> build_watchlists(SelectionMethod method, const std::string& target_name,
                                            const FeatureBag& target_features,
                                            std::span<const ProofCorpusEntry> corpus, const SelectionParams& params,
                                            std::vector<std::string>* warnings) {
  if (params.k == 0) throw std::invalid_argument("k must be at least 1");
  auto warn = [&](std::string w) {
    if (warnings) warnings->push_back(std::move(w));
  };
  std::vector<ProofCorpusEntry> pool = usable(corpus, target_name);
  std::vector<WatchlistFile> out;

  switch (method) {
    case SelectionMethod::art: {
      const std::string fam = family_of(target_name);
      WatchlistFile f{"art", {}};
      if (!fam.empty())
        for (const ProofCorpusEntry& e : pool)
          if (family_of(e.name) == fam) f.clauses.insert(f.clauses.end(), e.proof_clauses.begin(), e.proof_clauses.end());
      if (f.clauses.empty()) {
        warn("no family members with proofs for " + target_name);
        break;
      }
      out.push_back(std::move(f));
      break;
    }
    case SelectionMethod::freq: {
      std::map<std::string, std::size_t> count;
      for (const ProofCorpusEntry& e : pool) {
        std::set<std::string> distinct(e.proof_clauses.begin(), e.proof_clauses.end());
        for (const std::string& c : distinct) ++count[c];
      }
      std::vector<std::pair<std::string, std::size_t>> v(count.begin(), count.end());
      std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      WatchlistFile f{"freq", {}};
      for (std::size_t i = 0; i < v.size() && i < params.max_clauses; ++i) f.clauses.push_back(v[i].first);
      if (!f.clauses.empty()) out.push_back(std::move(f));
      break;
    }
    case SelectionMethod::knn_st: {
      KnnModel model(pool);
      auto neighbours = ranked(model, target_features);
      if (neighbours.size() > params.k) neighbours.resize(params.k);
      // Each clause is scored by the summed similarity of the neighbours whose proofs contain it.
      std::map<std::string, double> score;
      for (const Scored& s : neighbours) {
        std::set<std::string> distinct(s.entry->proof_clauses.begin(), s.entry->proof_clauses.end());
        for (const std::string& c : distinct) score[c] += s.score;
      }
      std::vector<std::pair<std::string, double>> v(score.begin(), score.end());
      std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      WatchlistFile f{"knn_st", {}};
      for (std::size_t i = 0; i < v.size() && i < params.max_clauses; ++i) f.clauses.push_back(v[i].first);
      if (!f.clauses.empty()) out.push_back(std::move(f));
      break;
    }
    case SelectionMethod::knn_dyn: {
      KnnModel model(pool);
      auto names = params.round2 ? knn_suggest_round2(model, target_features, params.k)
                                 : knn_suggest(model, target_features, params.k);
      std::map<std::string, const ProofCorpusEntry*> by_name;
      for (const ProofCorpusEntry& e : model.entries()) by_name[e.name] = &e;
      for (const std::string& n : names) {
        auto it = by_name.find(n);
        if (it == by_name.end()) {
          warn("suggested proof " + n + " is not in the corpus");
          continue;
        }
        out.push_back({n, it->second->proof_clauses});
      }
      break;
    }
  }
  return out;
}

}  // namespace wlp

namespace wlp {

std::vector<std::filesystem::path> write_watchlist_files(std::span<const WatchlistFile> files,
                                                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const WatchlistFile& f : files) {
    auto path = dir / (f.name + ".p");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << f.to_tptp();
    out.push_back(path);
  }
  return out;
}

void mine_round2(Provenance& p) {
  std::set<std::string> names;
  for (const auto& [clause, hits] : p.matches)
    for (const auto& [watchlist, id] : hits) names.insert(watchlist);
  p.matched_proofs.assign(names.begin(), names.end());
}

Provenance read_provenance(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  Provenance p;
  p.problem = j.value("problem", "");
  p.strategy = j.value("strategy", "");
  p.watchlists = j.value("watchlists", std::vector<std::string>{});
  if (j.contains("matches"))
    for (const auto& [clause, hits] : j["matches"].items())
      for (const auto& h : hits) p.matches[clause].emplace_back(h.at(0).get<std::string>(), h.at(1).get<ClauseId>());
  p.matched_proofs = j.value("matched_proofs", std::vector<std::string>{});
  return p;
}

void write_provenance(const Provenance& p, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["problem"] = p.problem;
  j["strategy"] = p.strategy;
  j["watchlists"] = p.watchlists;
  nlohmann::ordered_json matches = nlohmann::ordered_json::object();
  for (const auto& [clause, hits] : p.matches) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [w, id] : hits) arr.push_back({w, id});
    matches[clause] = arr;
  }
  j["matches"] = matches;
  j["matched_proofs"] = p.matched_proofs;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

std::vector<std::filesystem::path> corpus_problems(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_directory() && std::filesystem::exists(e.path() / "problem.p")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProofCorpusEntry> load_corpus(const std::filesystem::path& dir, FeatureOptions options) {
  std::vector<ProofCorpusEntry> out;
  for (const auto& pdir : corpus_problems(dir)) {
    ProofCorpusEntry e;
    e.name = pdir.filename().string();
    Problem prob = parse_cnf_file(pdir / "problem.p", std::make_shared<TermBank>());
    e.conjecture = conjecture_features(prob, options);
    if (std::filesystem::exists(pdir / "proof.p")) {
      auto bank = std::make_shared<TermBank>();
      Problem proof = parse_cnf_file(pdir / "proof.p", bank);
      for (const Clause& c : proof.clauses) e.proof_clauses.push_back(canonical_text(c, *bank));
    }
    if (std::filesystem::exists(pdir / "provenance.json"))
      e.matched_proofs = read_provenance(pdir / "provenance.json").matched_proofs;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace wlp
