#include "wlp/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace wlp {

namespace {

constexpr std::size_t kTermBlock = 4096;
constexpr std::size_t kArgBlock = 16384;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t app_hash(SymbolId symbol, std::span<const Term* const> args) {
  std::size_t h = std::hash<std::uint32_t>{}(symbol) * 0xff51afd7ed558ccdULL;
  for (const Term* a : args) h = mix(h, reinterpret_cast<std::uintptr_t>(a) >> 3);
  return h;
}

}  // namespace

Signature::Signature(std::string skolem_prefix) : skolem_prefix_(std::move(skolem_prefix)) {
  equality_ = intern("=", 2);
}

std::size_t Signature::KeyHash::operator()(const Key& k) const noexcept {
  return mix(std::hash<std::string>{}(k.name), k.arity);
}

bool Signature::looks_like_skolem(std::string_view name) const {
  return !skolem_prefix_.empty() && name.starts_with(skolem_prefix_);
}

SymbolId Signature::intern(std::string_view name, std::uint32_t arity) {
  Key key{std::string(name), arity};
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = static_cast<SymbolId>(symbols_.size());
  bool skolem = name != "=" && looks_like_skolem(name);
  symbols_.push_back({key.name, arity, skolem});
  SymbolId cls = id;
  if (skolem) cls = skolem_rep_by_arity_.try_emplace(arity, id).first->second;
  ska_class_.push_back(cls);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name, std::uint32_t arity) const {
  auto it = ids_.find(Key{std::string(name), arity});
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TermBank::TermBank(std::string skolem_prefix) : sig_(std::move(skolem_prefix)) {
  table_.assign(1024, nullptr);
}

TermBank::~TermBank() = default;

const Term* TermBank::var(std::uint32_t index) {
  if (index >= vars_.size()) vars_.resize(index + 1, nullptr);
  if (vars_[index] != nullptr) return vars_[index];
  if (term_blocks_.empty() || term_block_used_ == kTermBlock) {
    term_blocks_.push_back(std::unique_ptr<Term[]>(new Term[kTermBlock]));
    term_block_used_ = 0;
  }
  Term* t = &term_blocks_.back()[term_block_used_++];
  t->var_ = true;
  t->head_ = index;
  t->var_bound_ = index + 1;
  t->hash_ = mix(0x5bd1e995u, index);
  vars_[index] = t;
  return t;
}

const Term** TermBank::alloc_args(std::size_t n) {
  if (arg_blocks_.empty() || arg_block_used_ + n > arg_block_cap_) {
    std::size_t cap = std::max(kArgBlock, n);
    arg_blocks_.push_back(std::unique_ptr<const Term*[]>(new const Term*[cap]));
    arg_block_used_ = 0;
    arg_block_cap_ = cap;
  }
  const Term** p = arg_blocks_.back().get() + arg_block_used_;
  arg_block_used_ += n;
  return p;
}

void TermBank::grow_table() {
  std::vector<const Term*> old(table_.size() * 2, nullptr);
  old.swap(table_);
  std::size_t mask = table_.size() - 1;
  for (const Term* t : old) {
    if (t == nullptr) continue;
    std::size_t i = t->hash_ & mask;
    while (table_[i] != nullptr) i = (i + 1) & mask;
    table_[i] = t;
  }
}

const Term* TermBank::app(SymbolId symbol, std::span<const Term* const> args) {
  std::size_t h = app_hash(symbol, args);
  std::size_t mask = table_.size() - 1;
  std::size_t i = h & mask;
  for (; table_[i] != nullptr; i = (i + 1) & mask) {
    const Term* t = table_[i];
    if (t->hash_ != h || t->head_ != symbol || t->arity_ != args.size()) continue;
    if (std::equal(args.begin(), args.end(), t->args_)) return t;
  }

  if (term_blocks_.empty() || term_block_used_ == kTermBlock) {
    term_blocks_.push_back(std::unique_ptr<Term[]>(new Term[kTermBlock]));
    term_block_used_ = 0;
  }
  Term* t = &term_blocks_.back()[term_block_used_++];
  t->head_ = symbol;
  t->arity_ = static_cast<std::uint32_t>(args.size());
  t->hash_ = h;
  if (!args.empty()) {
    const Term** a = alloc_args(args.size());
    std::copy(args.begin(), args.end(), a);
    t->args_ = a;
  }
  std::uint32_t size = 1, depth = 0, vb = 0;
  for (const Term* a : args) {
    size += a->size_;
    depth = std::max(depth, a->depth_);
    vb = std::max(vb, a->var_bound_);
  }
  t->size_ = size;
  t->depth_ = depth + 1;
  t->var_bound_ = vb;

  table_[i] = t;
  if (++count_ * 2 > table_.size()) grow_table();
  return t;
}

const Term* TermBank::app(std::string_view name, std::span<const Term* const> args) {
  return app(sig_.intern(name, static_cast<std::uint32_t>(args.size())), args);
}

const Term* TermBank::import(const Term* t, const TermBank& from) {
  if (&from == this) return t;
  if (t->is_var()) return var(t->var_index());
  std::vector<const Term*> args;
  args.reserve(t->arity());
  for (const Term* a : t->args()) args.push_back(import(a, from));
  const SymbolInfo& info = from.signature().info(t->symbol());
  return app(sig_.intern(info.name, info.arity), args);
}

namespace {

void print(const Term* t, const Signature& sig, std::string& out) {
  if (t->is_var()) {
    out += 'X';
    out += std::to_string(t->var_index());
    return;
  }
  out += sig.name(t->symbol());
  if (t->arity() == 0) return;
  out += '(';
  bool first = true;
  for (const Term* a : t->args()) {
    if (!first) out += ',';
    first = false;
    print(a, sig, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term* t, const Signature& sig) {
  std::string out;
  print(t, sig, out);
  return out;
}

}  // namespace wlp
