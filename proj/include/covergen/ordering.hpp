#pragma once

// Ground reduction ordering: two-tier weights (existential-occurrence count,
// then symbol count), ties broken by precedence at the root and then
// left-to-right on arguments.

#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace covergen {

enum class Cmp { Less, Equal, Greater };

class Precedence {
 public:
  // Symbols added earlier are greater.
  void add_var(const std::string& name) { add_key("v:" + name); }
  void add_fn(const std::string& name) { add_key("f:" + name); }

  // Default: existentials in introduction order, then parameters, then
  // function symbols in declaration order.
  static Precedence defaults(const Signature& sig, const std::vector<Term>& evars,
                             const std::vector<Term>& params) {
    Precedence p;
    for (auto& e : evars) p.add_var(e.sym());
    for (auto& y : params) p.add_var(y.sym());
    for (auto& f : sig.functions()) p.add_fn(f.name);
    return p;
  }

  // Names listed first rank greatest; anything unlisted follows in default order.
  static Precedence from_names(const Signature& sig, const std::vector<Term>& evars,
                               const std::vector<Term>& params,
                               const std::vector<std::string>& names) {
    Precedence p;
    auto is_fn = [&](const std::string& n) { return sig.has_function(n); };
    for (auto& n : names) {
      if (is_fn(n))
        p.add_fn(n);
      else
        p.add_var(n);
    }
    Precedence rest = defaults(sig, evars, params);
    for (auto& k : rest.order_) p.add_key(k);
    return p;
  }

  // Unknown symbols get appended (stable within a run), so freshly
  // introduced encoding symbols always rank below everything declared.
  int seq(const std::string& key) const {
    auto it = seq_.find(key);
    if (it != seq_.end()) return it->second;
    auto* self = const_cast<Precedence*>(this);
    self->add_key(key);
    return seq_.at(key);
  }

  int seq_var(const std::string& name) const { return seq("v:" + name); }
  int seq_fn(const std::string& name) const { return seq("f:" + name); }

 private:
  void add_key(const std::string& key) {
    if (seq_.count(key)) return;
    seq_[key] = static_cast<int>(order_.size());
    order_.push_back(key);
  }
  std::unordered_map<std::string, int> seq_;
  std::vector<std::string> order_;
};

class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(Precedence p) : prec_(std::move(p)) {}

  const Precedence& precedence() const { return prec_; }

  Cmp compare(const Term& a, const Term& b) const {
    if (a == b) return Cmp::Equal;
    if (a.e_count() != b.e_count())
      return a.e_count() > b.e_count() ? Cmp::Greater : Cmp::Less;
    if (a.size() != b.size()) return a.size() > b.size() ? Cmp::Greater : Cmp::Less;
    int ra = root_seq(a), rb = root_seq(b);
    if (ra != rb) return ra < rb ? Cmp::Greater : Cmp::Less;
    // Same root symbol, same arity: first differing argument decides.
    for (size_t i = 0; i < a.arity(); ++i) {
      Cmp c = compare(a.arg(i), b.arg(i));
      if (c != Cmp::Equal) return c;
    }
    return Cmp::Equal;
  }

  bool greater(const Term& a, const Term& b) const { return compare(a, b) == Cmp::Greater; }

  // Least element of a nonempty set under this ordering.
  Term least(const std::vector<Term>& ts) const {
    Term best = ts.front();
    for (auto& t : ts)
      if (compare(t, best) == Cmp::Less) best = t;
    return best;
  }

 private:
  int root_seq(const Term& t) const {
    return t.is_var() ? prec_.seq_var(t.sym()) : prec_.seq_fn(t.sym());
  }
  Precedence prec_;
};

}  // namespace covergen
