#pragma once

// Brute-force certification of covers: residue entailment, bounded
// model-extension search, an enumeration-based cover builder for acyclic
// signatures, and a relational exporter for finite DB instances.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "solver.hpp"

namespace covergen {

// A finite structure. Carriers are 0..size-1 per sort; variables and 0-ary
// symbols live in `assign`, keyed by name.
struct Model {
  const Signature* sig = nullptr;
  std::map<std::string, int> size;
  std::map<std::string, std::map<std::vector<int>, int>> fn;
  std::map<std::string, std::set<std::vector<int>>> rel;
  std::map<std::string, int> assign;

  int eval(const Term& t) const {
    if (t.is_var() || t.arity() == 0) {
      auto it = assign.find(t.sym());
      if (it == assign.end()) throw std::invalid_argument("unassigned symbol: " + t.sym());
      return it->second;
    }
    std::vector<int> args;
    for (size_t i = 0; i < t.arity(); ++i) args.push_back(eval(t.arg(i)));
    auto f = fn.find(t.sym());
    if (f == fn.end()) throw std::invalid_argument("no table for: " + t.sym());
    auto v = f->second.find(args);
    if (v == f->second.end()) throw std::invalid_argument("partial table for: " + t.sym());
    return v->second;
  }

  bool holds(const Literal& l) const {
    if (l.is_rel()) {
      std::vector<int> args;
      for (auto& a : l.rel_args()) args.push_back(eval(a));
      auto it = rel.find(l.rel_name());
      bool in = it != rel.end() && it->second.count(args) != 0;
      return in == l.positive();
    }
    return (eval(l.lhs()) == eval(l.rhs())) == l.positive();
  }

  bool holds(const QFFormula& f) const {
    using K = QFFormula::Kind;
    switch (f.kind()) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Lit:
        return holds(f.literal());
      case K::Not:
        return !holds(f.sub(0));
      case K::And:
        for (size_t i = 0; i < f.n_subs(); ++i)
          if (!holds(f.sub(i))) return false;
        return true;
      case K::Or:
        for (size_t i = 0; i < f.n_subs(); ++i)
          if (holds(f.sub(i))) return true;
        return false;
    }
    return false;
  }

  // undef axioms pointwise, plus one-variable universal axioms at every
  // element of the quantified sort
  bool satisfies(const Theory& th) const {
    if (th.undef) {
      for (auto& f : sig->functions()) {
        if (f.args.size() != 1) continue;
        int ua = assign.at("undef." + f.args[0]);
        int ur = assign.at("undef." + f.result);
        for (int d = 0; d < size.at(f.args[0]); ++d)
          if ((d == ua) != (fn.at(f.name).at({d}) == ur)) return false;
      }
    }
    if (!th.axioms.empty()) {
      Model m = *this;
      for (auto& ax : th.axioms)
        for (int d = 0; d < size.at(ax.var.sort()); ++d) {
          m.assign[ax.var.sym()] = d;
          if (!m.holds(ax.body)) return false;
        }
    }
    return true;
  }

  std::string str() const {
    std::string s = "model{";
    for (auto& [sort, n] : size) s += " " + sort + ":" + std::to_string(n);
    for (auto& [k, v] : assign) s += " " + k + "=" + std::to_string(v);
    for (auto& [f, tab] : fn)
      for (auto& [args, v] : tab) {
        s += " " + f + "(";
        for (size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
        s += ")=" + std::to_string(v);
      }
    for (auto& [r, tuples] : rel)
      for (auto& tup : tuples) {
        s += " " + r + "(";
        for (size_t i = 0; i < tup.size(); ++i) s += (i ? "," : "") + std::to_string(tup[i]);
        s += ")";
      }
    return s + " }";
  }
};

// The space of all models over given carrier sizes: one slot per free
// choice (function-table cell, relation-tuple bit, symbol assignment).
struct ModelSpace {
  Model base;
  struct Slot {
    enum Kind { Cell, Bit, Assign };
    Kind kind;
    std::string name;
    std::vector<int> key;
    int choices;
  };
  std::vector<Slot> slots;

  double count() const {
    double c = 1;
    for (auto& s : slots) c *= s.choices;
    return c;
  }

  Model instantiate(const std::vector<int>& pick) const {
    Model m = base;
    for (size_t i = 0; i < slots.size(); ++i) {
      const Slot& s = slots[i];
      if (s.kind == Slot::Cell)
        m.fn[s.name][s.key] = pick[i];
      else if (s.kind == Slot::Assign)
        m.assign[s.name] = pick[i];
      else if (pick[i])
        m.rel[s.name].insert(s.key);
    }
    return m;
  }

  // All models in odometer order; stop when the callback returns false.
  template <class F>
  void for_each(F&& f) const {
    std::vector<int> pick(slots.size(), 0);
    while (true) {
      if (!f(instantiate(pick))) return;
      size_t k = 0;
      for (; k < pick.size(); ++k) {
        if (++pick[k] < slots[k].choices) break;
        pick[k] = 0;
      }
      if (k == pick.size()) return;
    }
  }

  Model sample(std::mt19937& g) const {
    std::vector<int> pick(slots.size());
    for (size_t i = 0; i < slots.size(); ++i)
      pick[i] = static_cast<int>(g() % static_cast<unsigned>(slots[i].choices));
    return instantiate(pick);
  }
};

namespace detail {

inline void tuple_slots(const std::vector<std::string>& argsorts,
                        const std::map<std::string, int>& sizes,
                        std::vector<std::vector<int>>& out) {
  std::vector<int> ix(argsorts.size(), 0);
  while (true) {
    out.push_back(ix);
    size_t k = 0;
    for (; k < ix.size(); ++k) {
      if (++ix[k] < sizes.at(argsorts[k])) break;
      ix[k] = 0;
    }
    if (k == ix.size()) return;
  }
}

}  // namespace detail

// vars: the free variables (parameters, state variables) the space assigns.
inline ModelSpace model_space(const Signature& sig, const std::map<std::string, int>& sizes,
                              const std::vector<Term>& vars, const Theory& th) {
  ModelSpace sp;
  sp.base.sig = &sig;
  sp.base.size = sizes;
  for (auto& f : sig.functions()) {
    if (f.args.empty()) {
      sp.slots.push_back({ModelSpace::Slot::Assign, f.name, {}, sizes.at(f.result)});
      continue;
    }
    std::vector<std::vector<int>> keys;
    detail::tuple_slots(f.args, sizes, keys);
    for (auto& k : keys)
      sp.slots.push_back({ModelSpace::Slot::Cell, f.name, k, sizes.at(f.result)});
  }
  for (auto& r : sig.relations()) {
    std::vector<std::vector<int>> keys;
    detail::tuple_slots(r.args, sizes, keys);
    for (auto& k : keys) sp.slots.push_back({ModelSpace::Slot::Bit, r.name, k, 2});
  }
  if (th.undef)
    for (auto& s : sig.sorts())
      sp.slots.push_back({ModelSpace::Slot::Assign, "undef." + s, {}, sizes.at(s)});
  for (auto& v : vars)
    sp.slots.push_back({ModelSpace::Slot::Assign, v.sym(), {}, sizes.at(v.sort())});
  return sp;
}

// Lemma-style residue condition: the body (with existentials as free
// constants) entails the candidate cover.
inline bool check_residue(const Signature& sig, const std::vector<Literal>& phi,
                          const QFFormula& psi, const Theory& th = {}) {
  std::vector<QFFormula> parts;
  for (auto& l : phi) parts.push_back(QFFormula::lit(l));
  return entails(sig, QFFormula::conj(std::move(parts)), psi, th);
}

enum class ExtVerdict { Pass, Fail, Inconclusive };

struct ExtOptions {
  int max_dom = 3;
  int slack = 2;             // extra elements beyond one per existential
  unsigned seed = 1;
  double exhaustive_cap = 40000;  // enumerate a size configuration fully below this
  int samples = 200;              // random models per oversized configuration
  size_t branch_cap = 50000;      // extension-search branching budget per model
};

struct ExtReport {
  ExtVerdict verdict = ExtVerdict::Pass;
  std::optional<Model> witness;  // an inextensible model, on Fail
  size_t models_checked = 0;
  bool exhaustive = true;
};

namespace detail {

// Value of an e-flat term in a candidate extension: either a known element
// or a reference to an open function cell ("slot") involving new elements.
struct Expr {
  bool known = true;
  int val = 0;  // element, or slot index when !known
};

// Search for one extension of M with the given enlarged carriers and
// existential assignment. Returns 1 found, -1 exhausted, 0 capped.
inline int try_extend(const Model& M, const std::map<std::string, int>& nsize,
                      const std::map<Term, int>& eassign, const std::vector<Literal>& phi,
                      const Theory& th, size_t branch_cap) {
  const Signature& sig = *M.sig;
  std::map<std::pair<std::string, std::vector<int>>, int> slotidx;
  std::vector<std::string> slot_sort;  // result sort per slot
  std::vector<bool> slot_unary_new;    // unary cell whose argument is a new element

  auto old_size = [&](const std::string& s) { return M.size.at(s); };

  std::function<Expr(const Term&)> value = [&](const Term& t) -> Expr {
    if (t.is_evar()) return {true, eassign.at(t)};
    if (t.e_free()) return {true, M.eval(t)};
    const FuncDecl& d = sig.function(t.sym());
    std::vector<int> args;
    bool any_new = false;
    for (size_t i = 0; i < t.arity(); ++i) {
      Expr a = value(t.arg(i));
      // e-flat: arguments are existentials or e-free, never open cells
      args.push_back(a.val);
      if (a.val >= old_size(d.args[i])) any_new = true;
    }
    if (!any_new) return {true, M.fn.at(t.sym()).at(args)};
    auto key = std::make_pair(t.sym(), args);
    auto it = slotidx.find(key);
    if (it == slotidx.end()) {
      it = slotidx.emplace(key, static_cast<int>(slot_sort.size())).first;
      slot_sort.push_back(d.result);
      slot_unary_new.push_back(d.args.size() == 1);
    }
    return {false, it->second};
  };

  // union-find over slots, with an optional pinned element per class
  struct UF {
    std::vector<int> parent, pin;
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  } uf;

  std::vector<std::pair<Expr, Expr>> diseqs;
  struct RelCon {
    std::string name;
    std::vector<Expr> args;
    bool positive;
  };
  std::vector<RelCon> rels;

  std::vector<std::pair<Expr, Expr>> eqs;
  for (auto& l : phi) {
    if (l.is_rel()) {
      RelCon rc{l.rel_name(), {}, l.positive()};
      for (auto& a : l.rel_args()) rc.args.push_back(value(a));
      rels.push_back(std::move(rc));
    } else {
      Expr a = value(l.lhs()), b = value(l.rhs());
      if (l.positive())
        eqs.push_back({a, b});
      else
        diseqs.push_back({a, b});
    }
  }

  int nslots = static_cast<int>(slot_sort.size());
  uf.parent.resize(nslots);
  uf.pin.assign(nslots, -1);
  for (int i = 0; i < nslots; ++i) uf.parent[i] = i;
  for (auto& [a, b] : eqs) {
    if (a.known && b.known) {
      if (a.val != b.val) return -1;
    } else if (a.known || b.known) {
      int s = uf.find(a.known ? b.val : a.val);
      int v = a.known ? a.val : b.val;
      if (uf.pin[s] >= 0 && uf.pin[s] != v) return -1;
      uf.pin[s] = v;
    } else {
      int ra = uf.find(a.val), rb = uf.find(b.val);
      if (ra == rb) continue;
      if (uf.pin[ra] >= 0 && uf.pin[rb] >= 0 && uf.pin[ra] != uf.pin[rb]) return -1;
      uf.parent[ra] = rb;
      if (uf.pin[rb] < 0) uf.pin[rb] = uf.pin[ra];
    }
  }

  // With the undef theory, a new element is never undef, so its images must
  // not be undef either; cells of new elements left unmentioned need some
  // non-undef value to exist in the result sort.
  std::map<std::string, int> undef_of;
  if (th.undef) {
    for (auto& s : sig.sorts()) undef_of[s] = M.assign.at("undef." + s);
    for (auto& f : sig.functions()) {
      if (f.args.size() != 1) continue;
      for (int d = old_size(f.args[0]); d < nsize.at(f.args[0]); ++d)
        if (!slotidx.count({f.name, {d}}) && nsize.at(f.result) < 2) return -1;
    }
  }

  // free slot classes to enumerate
  std::vector<int> reps;
  for (int i = 0; i < nslots; ++i)
    if (uf.find(i) == i && uf.pin[i] < 0) reps.push_back(i);
  double total = 1;
  for (int r : reps) total *= nsize.at(slot_sort[r]);
  if (total > static_cast<double>(branch_cap)) return 0;

  std::vector<int> pick(reps.size(), 0);
  while (true) {
    auto slot_val = [&](int s) {
      int r = uf.find(s);
      if (uf.pin[r] >= 0) return uf.pin[r];
      for (size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == r) return pick[i];
      return 0;
    };
    auto ev = [&](const Expr& e) { return e.known ? e.val : slot_val(e.val); };

    bool ok = true;
    if (th.undef)
      for (int s = 0; s < nslots && ok; ++s)
        if (slot_unary_new[s] && slot_val(s) == undef_of[slot_sort[s]]) ok = false;
    for (auto& [a, b] : diseqs)
      if (ok && ev(a) == ev(b)) ok = false;
    if (ok) {
      std::map<std::pair<std::string, std::vector<int>>, bool> required;
      for (auto& rc : rels) {
        std::vector<int> tup;
        bool any_new = false;
        const RelDecl& rd = sig.relation(rc.name);
        for (size_t i = 0; i < rc.args.size(); ++i) {
          tup.push_back(ev(rc.args[i]));
          if (tup.back() >= old_size(rd.args[i])) any_new = true;
        }
        if (!any_new) {
          auto it = M.rel.find(rc.name);
          bool in = it != M.rel.end() && it->second.count(tup) != 0;
          if (in != rc.positive) {
            ok = false;
            break;
          }
        } else {
          auto key = std::make_pair(rc.name, tup);
          auto it = required.find(key);
          if (it == required.end())
            required[key] = rc.positive;
          else if (it->second != rc.positive) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) return 1;

    size_t k = 0;
    for (; k < pick.size(); ++k) {
      if (++pick[k] < nsize.at(slot_sort[reps[k]])) break;
      pick[k] = 0;
    }
    if (k == pick.size()) return -1;
  }
}

// Enumerate carrier enlargements and existential assignments around
// try_extend. Returns 1 extension found, -1 none within bounds, 0 capped.
inline int extend_search(const Model& M, const std::vector<Term>& evars,
                         const std::vector<Literal>& phi, const Theory& th, int slack,
                         size_t branch_cap) {
  const std::vector<std::string>& sorts = M.sig->sorts();
  int max_new = static_cast<int>(evars.size()) + slack;
  bool capped = false;

  auto run = [&](const std::map<std::string, int>& nsize) -> int {
    double total = 1;
    for (auto& e : evars) total *= nsize.at(e.sort());
    if (total > static_cast<double>(branch_cap)) return 0;
    std::vector<int> pick(evars.size(), 0);
    while (true) {
      std::map<Term, int> ea;
      for (size_t i = 0; i < evars.size(); ++i) ea[evars[i]] = pick[i];
      int r = try_extend(M, nsize, ea, phi, th, branch_cap);
      if (r != -1) return r;
      size_t k = 0;
      for (; k < pick.size(); ++k) {
        if (++pick[k] < nsize.at(evars[k].sort())) break;
        pick[k] = 0;
      }
      if (k == pick.size()) return -1;
    }
  };

  // fast path: one fresh element per existential
  {
    std::map<std::string, int> nsize = M.size;
    for (auto& e : evars) nsize[e.sort()]++;
    std::map<Term, int> ea;
    std::map<std::string, int> next = M.size;
    for (auto& e : evars) ea[e] = next[e.sort()]++;
    if (try_extend(M, nsize, ea, phi, th, branch_cap) == 1) return 1;
  }

  // distributions of n_new extra elements over the sorts
  if (sorts.empty()) return run(M.size);
  for (int n_new = 0; n_new <= max_new; ++n_new) {
    std::vector<int> dist(sorts.size(), 0);
    while (true) {
      int sum = 0;
      for (int d : dist) sum += d;
      if (sum == n_new) {
        std::map<std::string, int> nsize = M.size;
        for (size_t i = 0; i < sorts.size(); ++i) nsize[sorts[i]] += dist[i];
        int r = run(nsize);
        if (r == 1) return 1;
        if (r == 0) capped = true;
      }
      size_t k = 0;
      for (; k < dist.size(); ++k) {
        if (++dist[k] <= n_new) break;
        dist[k] = 0;
      }
      if (k == dist.size()) break;
    }
  }
  return capped ? 0 : -1;
}

}  // namespace detail

// Lemma-style extension condition: every bounded model of the theory
// satisfying psi embeds into one where the body becomes satisfiable.
inline ExtReport check_extension(const Signature& sig, const std::vector<Literal>& phi,
                                 const std::vector<Term>& evars, const std::vector<Term>& params,
                                 const QFFormula& psi, const Theory& th = {},
                                 const ExtOptions& opt = {}) {
  for (auto& l : phi)
    if (!is_e_flat(l)) throw std::invalid_argument("check_extension input is not e-flat: " + l.str());
  ExtReport rep;
  std::mt19937 rng(opt.seed);

  auto consider = [&](Model m) -> bool {
    if (!m.satisfies(th) || !m.holds(psi)) return true;
    rep.models_checked++;
    int r = detail::extend_search(m, evars, phi, th, opt.slack, opt.branch_cap);
    if (r == 0) rep.exhaustive = false;
    if (r == -1) {
      rep.verdict = ExtVerdict::Fail;
      rep.witness = std::move(m);
      return false;
    }
    return true;
  };

  // all carrier size combinations, 1..max_dom per sort
  std::vector<int> sizes(sig.sorts().size(), 1);
  while (true) {
    std::map<std::string, int> sz;
    for (size_t i = 0; i < sizes.size(); ++i) sz[sig.sorts()[i]] = sizes[i];
    ModelSpace sp = model_space(sig, sz, params, th);
    if (sp.count() <= opt.exhaustive_cap) {
      bool go = true;
      sp.for_each([&](Model m) { return go = consider(std::move(m)); });
      if (!go) return rep;
    } else {
      rep.exhaustive = false;
      for (int i = 0; i < opt.samples; ++i)
        if (!consider(sp.sample(rng))) return rep;
    }
    size_t k = 0;
    for (; k < sizes.size(); ++k) {
      if (++sizes[k] <= opt.max_dom) break;
      sizes[k] = 1;
    }
    if (k == sizes.size()) break;
  }
  if (rep.verdict != ExtVerdict::Fail && !rep.exhaustive) rep.verdict = ExtVerdict::Inconclusive;
  return rep;
}

struct EnumCover {
  QFFormula formula;
  bool complete = true;  // false when the clause-width budget bound the search
};

// Enumerate every clause over the parameter terms (up to a width bound)
// entailed by the body, then drop clauses implied by the rest. For acyclic
// signatures this is a complete cover construction whenever the true cover
// fits in the width bound.
inline EnumCover acyclic_cover(const Signature& sig, const std::vector<Literal>& phi,
                               const std::vector<Term>& params, const Theory& th = {},
                               int max_width = 3, size_t cand_budget = 200000) {
  if (!is_acyclic(sig)) throw std::invalid_argument("acyclic_cover requires an acyclic signature");
  std::vector<QFFormula> parts;
  for (auto& l : phi) parts.push_back(QFFormula::lit(l));
  QFFormula body = QFFormula::conj(std::move(parts));
  EnumCover out;
  if (qf_sat(sig, body, th) == SatResult::Unsat) {
    out.formula = QFFormula::falsum();
    return out;
  }

  std::vector<Term> base = params;
  if (th.undef)
    for (auto& s : sig.sorts()) base.push_back(undef_const(s));
  std::vector<Term> terms = generable_terms(sig, base);
  std::sort(terms.begin(), terms.end());

  std::vector<Literal> atoms;
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].sort() == terms[j].sort()) atoms.push_back(Literal::eq(terms[i], terms[j]));
  std::map<std::string, std::vector<Term>> by_sort;
  for (auto& t : terms) by_sort[t.sort()].push_back(t);
  for (auto& r : sig.relations()) {
    bool ok = true;
    for (auto& s : r.args)
      if (!by_sort.count(s)) ok = false;
    if (!ok) continue;
    std::vector<size_t> ix(r.args.size(), 0);
    while (true) {
      std::vector<Term> args;
      for (size_t i = 0; i < ix.size(); ++i) args.push_back(by_sort[r.args[i]][ix[i]]);
      atoms.push_back(Literal::rel_raw(r.name, args, true));
      size_t k = 0;
      for (; k < ix.size(); ++k) {
        if (++ix[k] < by_sort[r.args[k]].size()) break;
        ix[k] = 0;
      }
      if (k == ix.size()) break;
    }
  }

  // clause = atom subset + polarity choice; kept iff entailed by the body
  // and not subsumed by an already-kept subset clause
  std::vector<std::set<std::pair<size_t, bool>>> kept_sets;
  std::vector<QFFormula> kept;
  size_t candidates = 0;
  int n = static_cast<int>(atoms.size());

  std::vector<size_t> idx;
  std::function<void(size_t, size_t)> rec = [&](size_t from, size_t want) {
    if (idx.size() == want) {
      unsigned npol = 1u << idx.size();
      for (unsigned pol = 0; pol < npol && out.complete; ++pol) {
        if (++candidates > cand_budget) {
          out.complete = false;
          return;
        }
        std::set<std::pair<size_t, bool>> key;
        for (size_t i = 0; i < idx.size(); ++i) key.insert({idx[i], (pol >> i & 1) != 0});
        bool subsumed = false;
        for (auto& ks : kept_sets)
          if (std::includes(key.begin(), key.end(), ks.begin(), ks.end())) {
            subsumed = true;
            break;
          }
        if (subsumed) continue;
        std::vector<QFFormula> lits;
        for (auto& [ai, neg] : key)
          lits.push_back(QFFormula::lit(neg ? atoms[ai].negate() : atoms[ai]));
        QFFormula cl = QFFormula::disj(std::move(lits));
        if (!entails(sig, body, cl, th)) continue;
        // drop clauses the kept core already implies (EUF-valid ones too);
        // without this, conditional variants of the same fact pile up into
        // hundreds of clauses and the final pass becomes intractable
        if (entails(sig, QFFormula::conj(kept), cl, th)) continue;
        kept_sets.push_back(std::move(key));
        kept.push_back(std::move(cl));
      }
      return;
    }
    for (size_t i = from; i < static_cast<size_t>(n); ++i) {
      idx.push_back(i);
      rec(i + 1, want);
      idx.pop_back();
      if (!out.complete) return;
    }
  };
  // shorter clauses first, so wider candidates they subsume are skipped
  for (size_t w = 1; w <= static_cast<size_t>(max_width) && out.complete; ++w) rec(0, w);

  // drop clauses entailed by the remaining ones
  std::vector<bool> dead(kept.size(), false);
  for (size_t i = 0; i < kept.size(); ++i) {
    std::vector<QFFormula> rest;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i && !dead[j]) rest.push_back(kept[j]);
    if (entails(sig, QFFormula::conj(rest), kept[i], th)) dead[i] = true;
  }
  std::vector<QFFormula> fin;
  for (size_t i = 0; i < kept.size(); ++i)
    if (!dead[i]) fin.push_back(kept[i]);
  out.formula = QFFormula::conj(std::move(fin));
  return out;
}

// One labeled fact per sort element (key plus unary-function attributes),
// plus the plain relation tuples.
inline std::vector<std::string> export_relational(const Model& m) {
  if (!m.sig->is_db()) throw std::invalid_argument("export_relational requires a DB signature");
  auto el = [](const std::string& sort, int i) { return sort + std::to_string(i); };
  std::vector<std::string> out;
  for (auto& s : m.sig->sorts())
    for (int i = 0; i < m.size.at(s); ++i) {
      std::string f = "R_" + s + "(id: " + el(s, i);
      for (auto& fd : m.sig->functions())
        if (fd.args.size() == 1 && fd.args[0] == s)
          f += ", a_" + fd.name + ": " + el(fd.result, m.fn.at(fd.name).at({i}));
      f += ")";
      out.push_back(f);
    }
  for (auto& rd : m.sig->relations()) {
    auto it = m.rel.find(rd.name);
    if (it == m.rel.end()) continue;
    for (auto& tup : it->second) {
      std::string f = rd.name + "(";
      for (size_t i = 0; i < tup.size(); ++i) f += (i ? ", " : "") + el(rd.args[i], tup[i]);
      f += ")";
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace covergen
