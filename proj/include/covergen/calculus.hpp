#pragma once

// Constrained superposition: the E subprocedure, the four constrained rules,
// a FIFO given-clause saturation loop with demodulation priority, and cover
// extraction. Also hosts the undef-theory extension rules (Ext(undef) and
// the extra non-destructive Paramodulation), enabled by a mode flag.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "ordering.hpp"
#include "solver.hpp"

namespace covergen {

// E(t,u): parameter equalities forcing t = u, or failure.
inline std::optional<std::vector<std::pair<Term, Term>>> e_match(const Term& t, const Term& u) {
  using R = std::vector<std::pair<Term, Term>>;
  if (t == u) return R{};
  bool tf = t.e_free(), uf = u.e_free();
  if (tf != uf) return std::nullopt;
  if (tf) return R{{t, u}};
  // Neither side e-free and t != u: fails when either side is an
  // existential variable, or on a root symbol clash.
  if (t.is_var() || u.is_var()) return std::nullopt;
  if (t.sym() != u.sym() || t.arity() != u.arity() || t.sort() != u.sort()) return std::nullopt;
  R out;
  for (size_t i = 0; i < t.arity(); ++i) {
    auto r = e_match(t.arg(i), u.arg(i));
    if (!r) return std::nullopt;
    out.insert(out.end(), r->begin(), r->end());
  }
  return out;
}

// Union-find canonicalization of a constraint: every member equated to the
// ordering-least term of its class.
inline Constraint normalize_constraint(const Constraint& c, const Ordering& ord) {
  if (c.empty()) return c;
  std::map<Term, Term> parent;
  std::function<Term(Term)> find = [&](Term x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    Term r = find(it->second);
    parent[x] = r;
    return r;
  };
  for (auto& [a, b] : c.eqs()) {
    Term ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  std::map<Term, std::vector<Term>> classes;
  for (auto& [a, b] : c.eqs()) {
    classes[find(a)].push_back(a);
    classes[find(b)].push_back(b);
  }
  std::vector<std::pair<Term, Term>> out;
  for (auto& [rep, members0] : classes) {
    std::vector<Term> members = members0;
    members.push_back(rep);
    Term least = ord.least(members);
    std::set<Term> seen;
    for (auto& m : members)
      if (m != least && seen.insert(m).second) out.push_back({m, least});
  }
  return Constraint::of(out);
}

// Position inside an equality literal: side 0/1, arg -1 for the whole side.
struct LitPos {
  int side = 0;
  int arg = -1;
};

namespace detail {

inline Term side(const Literal& l, int s) { return s == 0 ? l.lhs() : l.rhs(); }

inline Literal replace_at(const Literal& l, LitPos p, const Term& r) {
  Term a = l.lhs(), b = l.rhs();
  Term& tgt = p.side == 0 ? a : b;
  if (p.arg < 0) {
    tgt = r;
  } else {
    std::vector<Term> args;
    for (size_t i = 0; i < tgt.arity(); ++i)
      args.push_back(static_cast<int>(i) == p.arg ? r : tgt.arg(i));
    tgt = Term::app_raw(tgt.sym(), tgt.sort(), args);
  }
  return l.positive() ? Literal::eq(a, b) : Literal::neq(a, b);
}

}  // namespace detail

// Oriented view of a positive equality: (l, r) with l > r, or nothing.
inline std::optional<std::pair<Term, Term>> orient(const Literal& l, const Ordering& ord) {
  if (l.is_rel() || !l.positive()) return std::nullopt;
  Cmp c = ord.compare(l.lhs(), l.rhs());
  if (c == Cmp::Equal) return std::nullopt;
  if (c == Cmp::Greater) return std::make_pair(l.lhs(), l.rhs());
  return std::make_pair(l.rhs(), l.lhs());
}

namespace detail {

inline std::optional<ConstrainedLiteral> superpose_impl(const ConstrainedLiteral& left,
                                                        const ConstrainedLiteral& right,
                                                        bool right_positive, size_t pos,
                                                        const Ordering& ord) {
  if (left.is_bottom() || right.is_bottom()) return std::nullopt;
  if (left.lit->e_free() || right.lit->e_free()) return std::nullopt;  // Remark 1
  auto lr = orient(*left.lit, ord);
  if (!lr) return std::nullopt;
  auto [l, r] = *lr;
  const Literal& rl = *right.lit;
  if (rl.is_rel() || rl.positive() != right_positive) return std::nullopt;
  Term s = rl.lhs(), t = rl.rhs();
  Cmp c = ord.compare(s, t);
  if (c == Cmp::Equal) return std::nullopt;
  if (c == Cmp::Less) std::swap(s, t);
  Term sp;  // s|_pos ; pos 0 = root, k>0 = argument k-1
  if (pos == 0) {
    sp = s;
  } else {
    if (s.is_var() || pos > s.arity()) return std::nullopt;
    sp = s.arg(pos - 1);
  }
  auto e = e_match(sp, l);
  if (!e) return std::nullopt;
  Term s2 = pos == 0 ? r : [&] {
    std::vector<Term> args;
    for (size_t i = 0; i < s.arity(); ++i) args.push_back(i == pos - 1 ? r : s.arg(i));
    return Term::app_raw(s.sym(), s.sort(), args);
  }();
  Constraint cc = left.c.union_with(right.c).union_with(Constraint::of(*e));
  Literal out = right_positive ? Literal::eq(s2, t) : Literal::neq(s2, t);
  return ConstrainedLiteral(out, cc);
}

}  // namespace detail

inline std::optional<ConstrainedLiteral> superpose_right(const ConstrainedLiteral& left,
                                                         const ConstrainedLiteral& right,
                                                         size_t pos, const Ordering& ord) {
  return detail::superpose_impl(left, right, true, pos, ord);
}

inline std::optional<ConstrainedLiteral> superpose_left(const ConstrainedLiteral& left,
                                                        const ConstrainedLiteral& right,
                                                        size_t pos, const Ordering& ord) {
  return detail::superpose_impl(left, right, false, pos, ord);
}

inline std::optional<ConstrainedLiteral> reflexion(const ConstrainedLiteral& cl) {
  if (cl.is_bottom() || cl.lit->is_rel() || cl.lit->positive()) return std::nullopt;
  if (cl.lit->e_free()) return std::nullopt;  // Remark 1
  auto e = e_match(cl.lit->lhs(), cl.lit->rhs());
  if (!e) return std::nullopt;
  return ConstrainedLiteral::bottom(cl.c.union_with(Constraint::of(*e)));
}

// Is cl a definition e_j = t(y) || D?
inline std::optional<std::pair<Term, Term>> as_definition(const ConstrainedLiteral& cl) {
  if (cl.is_bottom() || cl.lit->is_rel() || !cl.lit->positive()) return std::nullopt;
  Term a = cl.lit->lhs(), b = cl.lit->rhs();
  if (a.is_evar() && b.e_free()) return std::make_pair(a, b);
  if (b.is_evar() && a.e_free()) return std::make_pair(b, a);
  return std::nullopt;
}

// Destructive rewriting by a definition; rewrites every occurrence.
inline std::optional<ConstrainedLiteral> demodulate(const ConstrainedLiteral& target,
                                                    const ConstrainedLiteral& rule,
                                                    const Ordering& /*ord*/) {
  auto def = as_definition(rule);
  if (!def) return std::nullopt;
  auto [ej, t] = *def;
  if (target.is_bottom()) return std::nullopt;
  if (!target.c.includes(rule.c)) return std::nullopt;
  Literal rewritten = target.lit->subst(ej, t);
  if (rewritten == *target.lit) return std::nullopt;
  return ConstrainedLiteral(rewritten, target.c);
}

inline std::optional<ConstrainedLiteral> ext_undef(const ConstrainedLiteral& cl) {
  if (cl.is_bottom() || cl.lit->is_rel() || !cl.lit->positive()) return std::nullopt;
  for (int sidx = 0; sidx < 2; ++sidx) {
    Term f = detail::side(*cl.lit, sidx), u = detail::side(*cl.lit, 1 - sidx);
    if (f.sym().rfind("@", 0) == 0) continue;  // relation encoding, not a function
    if (f.is_app() && f.arity() == 1 && f.arg(0).is_evar() && u.e_free()) {
      Term ej = f.arg(0);
      Constraint add = Constraint::of({{u, undef_const(u.sort())}});
      return ConstrainedLiteral(Literal::eq(ej, undef_const(ej.sort())), cl.c.union_with(add));
    }
  }
  return std::nullopt;
}

// Non-destructive paramodulation with an e_j = r || C premise (undef mode).
inline std::optional<ConstrainedLiteral> paramodulate(const ConstrainedLiteral& left,
                                                      const ConstrainedLiteral& right,
                                                      LitPos pos, const Ordering& ord) {
  if (left.is_bottom() || right.is_bottom()) return std::nullopt;
  auto lr = orient(*left.lit, ord);
  if (!lr || !lr->first.is_evar()) return std::nullopt;
  auto [ej, r] = *lr;
  if (right.lit->is_rel()) return std::nullopt;
  Term s = detail::side(*right.lit, pos.side);
  Term sp = pos.arg < 0 ? s : (s.is_app() && pos.arg < static_cast<int>(s.arity())
                                   ? s.arg(pos.arg)
                                   : Term());
  if (sp.null() || sp != ej) return std::nullopt;
  Literal out = detail::replace_at(*right.lit, pos, r);
  if (out == *right.lit) return std::nullopt;
  return ConstrainedLiteral(out, left.c.union_with(right.c));
}

struct SaturateOpts {
  bool subsumption = true;
  bool undef = false;
  size_t max_clauses = 100000;
  bool keep_trace = true;
};

struct SaturationBudget : BudgetError {
  std::vector<std::string> trace;
  SaturationBudget(const std::string& w, std::vector<std::string> tr)
      : BudgetError(w), trace(std::move(tr)) {}
};

struct Clause {
  std::optional<Literal> lit;  // nullopt = bottom
  Constraint c;
  int id = -1;
  bool alive = true;
  bool seed = false;
  std::string origin;

  ConstrainedLiteral cl() const {
    return lit ? ConstrainedLiteral(*lit, c) : ConstrainedLiteral::bottom(c);
  }
  bool e_free() const { return !lit || lit->e_free(); }
  std::string str() const { return cl().str(); }
};

namespace detail {

inline bool is_rel_encoded(const Literal& l) {
  return l.is_eq() && l.lhs().sort().rfind("@bool:", 0) == 0;
}

inline Literal decode_rel(const Literal& l) {
  if (!is_rel_encoded(l)) return l;
  Term app = l.lhs().sym().rfind("@true:", 0) == 0 ? l.rhs() : l.lhs();
  std::string name = app.sym().substr(1);
  std::vector<Term> args;
  for (size_t i = 0; i < app.arity(); ++i) args.push_back(app.arg(i));
  return Literal::rel_raw(name, args, l.positive());
}

}  // namespace detail

class Saturation {
 public:
  Saturation(const Signature& sig, Ordering ord, SaturateOpts opts)
      : sig_(sig), ord_(std::move(ord)), opts_(opts) {}

  // Input literals may contain relation atoms; they are encoded as
  // equalities with a per-relation tag constant.
  void run(const std::vector<Literal>& init) {
    if (opts_.undef) seed_undef_facts(init);
    for (auto& l0 : init) {
      if (!is_e_flat(l0)) throw std::invalid_argument("input literal is not e-flat: " + l0.str());
      Literal l = l0;
      if (l.is_rel())
        l = l.positive() ? Literal::eq(detail::rel_term(l), detail::rel_true(l.rel_name()))
                         : Literal::neq(detail::rel_term(l), detail::rel_true(l.rel_name()));
      record_degree_zero(l);
      if (opts_.undef) note_declared(l);
      enqueue(Clause{l, Constraint(), -1, true, false, "input"});
    }
    loop();
  }

  const std::vector<Clause>& all_clauses() const { return active_; }
  const std::vector<std::string>& trace() const { return trace_; }
  int max_degree() const { return max_degree_; }
  const Ordering& ordering() const { return ord_; }

  std::vector<ConstrainedLiteral> saturated_set() const {
    std::vector<ConstrainedLiteral> out;
    for (auto& cl : active_)
      if (cl.alive && !cl.seed) out.push_back(cl.cl());
    return out;
  }

  // e-free members, as decoded constrained literals, canonically sorted.
  std::vector<ConstrainedLiteral> cover_clauses(bool subsumption) const {
    std::vector<Clause> efree;
    for (auto& cl : active_)
      if (cl.alive && !cl.seed && cl.e_free()) efree.push_back(cl);
    if (subsumption) {
      for (size_t i = 0; i < efree.size(); ++i) {
        for (size_t j = 0; j < efree.size(); ++j) {
          if (i == j || !efree[j].alive || !efree[i].alive) continue;
          if (subsumes(efree[j], efree[i]) &&
              !(subsumes(efree[i], efree[j]) && i < j))  // break ties by index
            efree[i].alive = false;
        }
      }
    }
    std::vector<ConstrainedLiteral> out;
    for (auto& cl : efree) {
      if (!cl.alive) continue;
      if (cl.lit)
        out.push_back(ConstrainedLiteral(detail::decode_rel(*cl.lit), cl.c));
      else
        out.push_back(ConstrainedLiteral::bottom(cl.c));
    }
    std::sort(out.begin(), out.end(),
              [](const ConstrainedLiteral& a, const ConstrainedLiteral& b) {
                return a.str() < b.str();
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  QFFormula cover_formula(bool subsumption) const {
    std::vector<QFFormula> clauses;
    for (auto& cl : cover_clauses(subsumption)) clauses.push_back(clause_formula(cl));
    return QFFormula::conj(std::move(clauses));
  }

  static QFFormula clause_formula(const ConstrainedLiteral& cl) {
    std::vector<QFFormula> parts;
    for (auto& [a, b] : cl.c.eqs()) parts.push_back(QFFormula::lit(Literal::neq(a, b)));
    if (cl.lit) parts.push_back(QFFormula::lit(*cl.lit));
    return QFFormula::disj(std::move(parts));
  }

 private:
  void seed_undef_facts(const std::vector<Literal>&) {
    for (auto& f : sig_.functions()) {
      if (f.args.size() != 1) continue;
      Term fu = Term::app_raw(f.name, f.result, {undef_const(f.args[0])});
      enqueue(Clause{Literal::eq(fu, undef_const(f.result)), Constraint(), -1, true, true,
                     "undef-fact"});
    }
  }

  // e != undef declarations drive the spawn rule below.
  void note_declared(const Literal& l) {
    if (l.is_rel() || l.positive()) return;
    for (int s = 0; s < 2; ++s) {
      Term a = detail::side(l, s), b = detail::side(l, 1 - s);
      if (a.is_evar() && b == undef_const(b.sort())) declared_neq_.insert(a);
    }
  }

  void enqueue(Clause c) {
    if (queue_.size() + active_.size() > opts_.max_clauses)
      throw SaturationBudget("saturation clause budget exceeded", trace_);
    queue_.push_back(std::move(c));
  }

  void loop() {
    while (!queue_.empty()) {
      Clause cand = std::move(queue_.front());
      queue_.pop_front();
      process(std::move(cand));
    }
  }

  bool demod_applicable(const Clause& target, const Clause& rule,
                        const Term& ej, const Term& t) const {
    if (!target.lit || !target.c.includes(rule.c)) return false;
    if (!literal_contains(*target.lit, ej)) return false;
    auto tdef = target.lit ? as_definition(target.cl()) : std::nullopt;
    if (tdef && tdef->first == ej) {
      // definition-on-definition: only under identical constraints,
      // rewriting away the larger right-hand side
      if (!(target.c == rule.c)) return false;
      if (!ord_.greater(tdef->second, t)) return false;
    }
    return true;
  }

  static bool literal_contains(const Literal& l, const Term& sub) {
    if (l.is_rel()) {
      for (auto& a : l.rel_args())
        if (a.contains(sub)) return true;
      return false;
    }
    return l.lhs().contains(sub) || l.rhs().contains(sub);
  }

  // Entailment between canonical constraints (C |= D).
  bool centails(const Constraint& c, const Constraint& d) const {
    if (c.includes(d)) return true;
    CC cc;
    for (auto& [a, b] : c.eqs()) cc.merge(a, b);
    for (auto& [a, b] : d.eqs())
      if (!cc.same(a, b)) return false;
    return true;
  }

  bool subsumes(const Clause& by, const Clause& victim) const {
    if (!by.lit) {
      // a bottom clause subsumes anything with an entailed constraint
      return centails(victim.c, by.c);
    }
    if (!victim.lit || !(*victim.lit == *by.lit)) return false;
    return centails(victim.c, by.c);
  }

  void process(Clause cand) {
    // Demodulation first (priority over inference rules). It stays on in
    // undef mode too: without it, definitions with ever-larger right-hand
    // sides (e = f(undef), e = f(f(undef)), ...) pile up and saturation
    // diverges. Paramodulation is an extra inference there, not a substitute.
    if (cand.lit) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto& d : active_) {
          if (!d.alive) continue;
          auto def = as_definition(d.cl());
          if (!def) continue;
          if (!demod_applicable(cand, d, def->first, def->second)) continue;
          Literal nl = cand.lit->subst(def->first, def->second);
          bump_degree(nl, *cand.lit, def->second, /*var_rhs=*/def->second.is_var() &&
                                                      def->second.is_evar());
          cand.lit = nl;
          cand.origin += " demod(" + std::to_string(d.id) + ")";
          changed = true;
        }
      }
    }
    cand.c = normalize_constraint(cand.c, ord_);
    if (cand.lit && cand.lit->is_eq() && cand.lit->lhs() == cand.lit->rhs()) {
      if (cand.lit->positive()) return;  // trivial
      cand.lit = std::nullopt;           // t != t is just bottom
    }
    std::string key = cand.str();
    if (live_set_.count(key)) return;
    if (opts_.subsumption) {
      for (auto& h : active_)
        if (h.alive && subsumes(h, cand)) return;
      for (auto& h : active_) {
        if (h.alive && subsumes(cand, h)) {
          h.alive = false;
          live_set_.erase(h.str());
        }
      }
    }
    cand.id = static_cast<int>(active_.size());
    live_set_.insert(key);
    if (opts_.keep_trace)
      trace_.push_back("[" + std::to_string(cand.id) + "] " + key + "  <- " + cand.origin);
    active_.push_back(cand);
    Clause& g = active_.back();

    if (!g.lit && g.c.empty()) {  // unsatisfiable input: cover is bottom
      queue_.clear();
      return;
    }

    // spawn u != undef when e_j was declared different from undef
    if (opts_.undef && g.lit) {
      auto cl = g.cl();
      if (auto fd = match_fn_of_evar(*g.lit)) {
        auto [ej, u] = *fd;
        if (declared_neq_.count(ej))
          enqueue(Clause{Literal::neq(u, undef_const(u.sort())), g.c, -1, true, false,
                         "undef-spawn(" + std::to_string(g.id) + ")"});
      }
    }

    // a new definition demodulates the active set
    if (g.lit) {
      if (auto def = as_definition(g.cl())) {
        for (auto& h : active_) {
          if (!h.alive || h.id == g.id) continue;
          if (!demod_applicable(h, g, def->first, def->second)) continue;
          h.alive = false;
          live_set_.erase(h.str());
          Clause nc = h;
          nc.alive = true;
          Literal nl = h.lit->subst(def->first, def->second);
          bump_degree(nl, *h.lit, def->second, def->second.is_evar());
          nc.lit = nl;
          nc.origin = "demod(" + std::to_string(h.id) + "," + std::to_string(g.id) + ")";
          enqueue(std::move(nc));
        }
      }
    }

    infer_with(g);
  }

  std::optional<std::pair<Term, Term>> match_fn_of_evar(const Literal& l) const {
    if (l.is_rel() || !l.positive()) return std::nullopt;
    for (int s = 0; s < 2; ++s) {
      Term f = detail::side(l, s), u = detail::side(l, 1 - s);
      if (f.sym().rfind("@", 0) == 0) continue;
      if (f.is_app() && f.arity() == 1 && f.arg(0).is_evar() && u.e_free())
        return std::make_pair(f.arg(0), u);
    }
    return std::nullopt;
  }

  void infer_with(const Clause& g) {
    ConstrainedLiteral gc = g.cl();
    if (auto r = reflexion(gc))
      push_conclusion(*r, "refl(" + std::to_string(g.id) + ")", gc, Term());
    if (opts_.undef) {
      if (auto r = ext_undef(gc))
        push_conclusion(*r, "ext-undef(" + std::to_string(g.id) + ")", gc, Term());
    }
    size_t n = active_.size();
    for (size_t i = 0; i < n; ++i) {
      if (!active_[i].alive) continue;
      const Clause& h = active_[i];
      superpose_all(g, h);
      if (h.id != g.id) superpose_all(h, g);
      if (opts_.undef) {
        paramod_all(g, h);
        if (h.id != g.id) paramod_all(h, g);
      }
    }
  }

  void superpose_all(const Clause& left, const Clause& right) {
    if (!left.lit || !right.lit) return;
    ConstrainedLiteral lc = left.cl(), rc = right.cl();
    auto lr = orient(*left.lit, ord_);
    if (!lr) return;
    Term s_gr;  // greater side of right, for position enumeration
    {
      if (right.lit->is_rel()) return;
      Cmp c = ord_.compare(right.lit->lhs(), right.lit->rhs());
      if (c == Cmp::Equal) return;
      s_gr = c == Cmp::Greater ? right.lit->lhs() : right.lit->rhs();
    }
    bool pos = right.lit->positive();
    std::string tag = std::string(pos ? "sup-r(" : "sup-l(") + std::to_string(left.id) + "," +
                      std::to_string(right.id) + ")";
    auto fire = [&](size_t p) {
      auto r = detail::superpose_impl(lc, rc, pos, p, ord_);
      if (r) push_conclusion(*r, tag + "@" + std::to_string(p), rc, lr->second);
    };
    fire(0);
    if (s_gr.is_app())
      for (size_t i = 0; i < s_gr.arity(); ++i)
        if (s_gr.arg(i) == lr->first) fire(i + 1);
  }

  void paramod_all(const Clause& left, const Clause& right) {
    if (!left.lit || !right.lit) return;
    ConstrainedLiteral lc = left.cl(), rc = right.cl();
    std::string tag = "param(" + std::to_string(left.id) + "," + std::to_string(right.id) + ")";
    for (int s = 0; s < 2; ++s) {
      Term sd = detail::side(*right.lit, s);
      auto try_pos = [&](int argi) {
        auto r = paramodulate(lc, rc, LitPos{s, argi}, ord_);
        if (r)
          push_conclusion(*r, tag + "@" + std::to_string(s) + "." + std::to_string(argi), rc,
                          Term());
      };
      try_pos(-1);
      if (sd.is_app())
        for (size_t i = 0; i < sd.arity(); ++i) try_pos(static_cast<int>(i));
    }
  }

  void push_conclusion(const ConstrainedLiteral& cl, const std::string& origin,
                       const ConstrainedLiteral& rewritten_from, const Term& with) {
    Clause c;
    c.lit = cl.lit;
    c.c = cl.c;
    c.origin = origin;
    if (c.lit && rewritten_from.lit && !with.null())
      bump_degree(*c.lit, *rewritten_from.lit, with, with.is_evar());
    enqueue(std::move(c));
  }

  // Degree bookkeeping: rewriting with an e-free term t lifts the degree to
  // max(old, deg(t) + 1); rewriting with an existential variable does not.
  void record_degree_zero(const Literal& l) {
    std::set<Term> ts;
    l.collect_terms(ts);
    for (auto& t : ts) {
      std::set<Term> subs;
      t.collect_subterms(subs);
      for (auto& s : subs)
        if (!degree_.count(s)) degree_[s] = 0;
    }
  }

  int deg(const Term& t) const {
    auto it = degree_.find(t);
    return it == degree_.end() ? 0 : it->second;
  }

  void bump_degree(const Literal& nl, const Literal& old, const Term& with, bool var_rhs) {
    int base = 0;
    std::set<Term> ts;
    old.collect_terms(ts);
    for (auto& t : ts) base = std::max(base, deg(t));
    int d = var_rhs ? base : std::max(base, deg(with) + 1);
    std::set<Term> nts;
    nl.collect_terms(nts);
    for (auto& t : nts) {
      auto it = degree_.find(t);
      if (it == degree_.end())
        degree_[t] = d;
      else
        it->second = std::min(it->second, d);
      max_degree_ = std::max(max_degree_, degree_[t]);
    }
  }

  const Signature& sig_;
  Ordering ord_;
  SaturateOpts opts_;
  std::vector<Clause> active_;
  std::deque<Clause> queue_;
  std::unordered_set<std::string> live_set_;
  std::vector<std::string> trace_;
  std::set<Term> declared_neq_;
  std::map<Term, int> degree_;
  int max_degree_ = 0;
};

// Entailment among e-free cover clauses by unit propagation: each clause
// /\C -> L is definite, so asserting the negated goal and propagating
// constraint-enabled heads into a congruence closure is a decision procedure.
inline bool cover_clauses_entail(const std::vector<ConstrainedLiteral>& from,
                                 const ConstrainedLiteral& goal) {
  CC cc;
  std::vector<std::pair<Term, Term>> diseqs;
  auto encode = [](const Literal& l) -> std::pair<Term, Term> {
    if (l.is_rel()) return {detail::rel_term(l), detail::rel_true(l.rel_name())};
    return {l.lhs(), l.rhs()};
  };
  for (auto& [a, b] : goal.c.eqs()) cc.merge(a, b);
  if (goal.lit) {
    auto [a, b] = encode(*goal.lit);
    if (goal.lit->positive())
      diseqs.push_back({a, b});  // negated goal literal
    else
      cc.merge(a, b);
  }
  std::vector<bool> used(from.size(), false);
  bool contradiction = false;
  bool changed = true;
  while (changed && !contradiction) {
    changed = false;
    for (size_t i = 0; i < from.size(); ++i) {
      if (used[i]) continue;
      bool enabled = true;
      for (auto& [a, b] : from[i].c.eqs())
        if (!cc.same(a, b)) {
          enabled = false;
          break;
        }
      if (!enabled) continue;
      used[i] = true;
      changed = true;
      if (!from[i].lit) {
        contradiction = true;
        break;
      }
      auto [a, b] = encode(*from[i].lit);
      if (from[i].lit->positive())
        cc.merge(a, b);
      else
        diseqs.push_back({a, b});
    }
    for (auto& [a, b] : diseqs)
      if (cc.same(a, b)) contradiction = true;
  }
  return contradiction;
}

inline bool cover_entails(const std::vector<ConstrainedLiteral>& from,
                          const std::vector<ConstrainedLiteral>& to) {
  for (auto& g : to)
    if (!cover_clauses_entail(from, g)) return false;
  return true;
}

inline bool cover_equivalent(const std::vector<ConstrainedLiteral>& a,
                             const std::vector<ConstrainedLiteral>& b) {
  return cover_entails(a, b) && cover_entails(b, a);
}

// Convenience wrapper: saturate e-flat literals and return the engine.
inline Saturation saturate(const Signature& sig, const std::vector<Literal>& init,
                           const Ordering& ord, const SaturateOpts& opts = {}) {
  Saturation s(sig, ord, opts);
  s.run(init);
  return s;
}

}  // namespace covergen
