#include "wcolim/localize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/pending/disjoint_sets.hpp>

namespace wcolim {

std::string to_string(LocalizationTier t) {
  switch (t) {
    case LocalizationTier::already_invertible: return "already-invertible";
    case LocalizationTier::right_fractions: return "right-fractions";
    case LocalizationTier::bounded_zigzag: return "bounded-zigzag";
  }
  return "?";
}

std::string to_string(LocalizationStatus s) { return s == LocalizationStatus::exact ? "exact" : "undecided"; }

std::vector<char> multiplicative_closure(const FinCat& p, const std::vector<char>& sigma) {
  std::vector<char> s = sigma;
  for (ObjId o = 0; o < p.num_objects(); ++o) s[p.identity(o)] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (ArrowId a = 0; a < p.num_arrows(); ++a) {
      if (!s[a]) continue;
      for (ArrowId b : p.out(p.cod(a)))
        if (s[b] && !s[p.compose(a, b)]) {
          s[p.compose(a, b)] = 1;
          grew = true;
        }
    }
  }
  return s;
}

namespace {

std::vector<std::vector<ArrowId>> incoming(const FinCat& p) {
  std::vector<std::vector<ArrowId>> in(p.num_objects());
  for (ArrowId a = 0; a < p.num_arrows(); ++a) in[p.cod(a)].push_back(a);
  return in;
}

std::string name(const FinCat& p, ArrowId a) { return p.arrow_name(a); }

}  // namespace

FractionsCheck check_right_fractions(const FinCat& p, const std::vector<char>& s) {
  FractionsCheck r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.failure = std::move(why);
    return r;
  };
  for (ObjId o = 0; o < p.num_objects(); ++o)
    if (!s[p.identity(o)]) return fail("identity of " + p.object_name(o) + " not in sigma");
  for (ArrowId a = 0; a < p.num_arrows(); ++a)
    if (s[a])
      for (ArrowId b : p.out(p.cod(a)))
        if (s[b] && !s[p.compose(a, b)]) return fail("not closed: " + name(p, a) + " then " + name(p, b));
  const auto in = incoming(p);
  // Ore completion
  for (ArrowId t = 0; t < p.num_arrows(); ++t) {
    if (!s[t]) continue;
    for (ArrowId f : in[p.cod(t)]) {
      bool found = false;
      for (ArrowId t2 : in[p.dom(f)]) {
        if (!s[t2]) continue;
        for (ArrowId f2 : p.hom(p.dom(t2), p.dom(t)))
          if (p.compose(t2, f) == p.compose(f2, t)) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) return fail("no Ore square for " + name(p, f) + " against " + name(p, t));
    }
  }
  // equalization
  for (ArrowId sa = 0; sa < p.num_arrows(); ++sa) {
    if (!s[sa]) continue;
    for (ArrowId f : in[p.dom(sa)])
      for (ArrowId g : p.hom(p.dom(f), p.cod(f))) {
        if (g <= f || p.compose(f, sa) != p.compose(g, sa)) continue;
        bool found = false;
        for (ArrowId t : in[p.dom(f)])
          if (s[t] && p.compose(t, f) == p.compose(t, g)) {
            found = true;
            break;
          }
        if (!found) return fail("no sigma arrow equalizes " + name(p, f) + " and " + name(p, g));
      }
  }
  return r;
}

bool inverts(const Functor& f, const std::vector<char>& sigma) {
  for (ArrowId a = 0; a < static_cast<int>(sigma.size()); ++a)
    if (sigma[a] && !f.target->is_iso(f.arr(a))) return false;
  return true;
}

namespace {

LocalizedCat tier_a(const CatPtr& p, const std::vector<char>& sigma) {
  LocalizedCat loc{p, sigma, p, LocalizationTier::already_invertible, LocalizationStatus::exact,
                   identity_functor(p), {}, "every sigma arrow is already invertible"};
  for (ArrowId a = 0; a < p->num_arrows(); ++a)
    loc.zigzag.push_back(p->is_identity(a) ? std::vector<ZigzagLetter>{} : std::vector<ZigzagLetter>{{a, false}});
  return loc;
}

}  // namespace

LocalizedCat localize_fractions(const CatPtr& pp, const std::vector<char>& sigma, const Budget& budget) {
  const FinCat& p = *pp;
  const std::vector<char> s = multiplicative_closure(p, sigma);
  const FractionsCheck check = check_right_fractions(p, s);
  if (!check.ok) throw StructureError("right fractions unavailable: " + check.failure);
  const auto in = incoming(p);

  // spans (s, f) with a common source, s in the closure
  struct Span {
    ArrowId s, f;
  };
  std::vector<Span> spans;
  std::map<std::pair<ArrowId, ArrowId>, int> span_id;
  for (ArrowId a = 0; a < p.num_arrows(); ++a) {
    if (!s[a]) continue;
    for (ArrowId f : p.out(p.dom(a))) {
      span_id.emplace(std::make_pair(a, f), static_cast<int>(spans.size()));
      spans.push_back({a, f});
    }
  }
  std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) {
    return std::tie(x.s, x.f) < std::tie(y.s, y.f);
  });
  for (int i = 0; i < static_cast<int>(spans.size()); ++i) span_id[{spans[i].s, spans[i].f}] = i;
  if (spans.size() > budget.max_cells) throw BudgetExceeded("span count", budget.max_cells);

  std::vector<int> rank(spans.size()), parent(spans.size());
  boost::disjoint_sets<int*, int*> ds(rank.data(), parent.data());
  for (int i = 0; i < static_cast<int>(spans.size()); ++i) ds.make_set(i);
  for (int i = 0; i < static_cast<int>(spans.size()); ++i)
    for (ArrowId a : in[p.dom(spans[i].s)]) {
      const ArrowId as = p.compose(a, spans[i].s);
      if (s[as]) ds.union_set(i, span_id.at({as, p.compose(a, spans[i].f)}));
    }
  // classes numbered by least member
  std::vector<int> class_of(spans.size(), -1);
  std::vector<std::vector<int>> members;
  std::map<int, int> root_class;
  for (int i = 0; i < static_cast<int>(spans.size()); ++i) {
    const int root = ds.find_set(i);
    auto [it, fresh] = root_class.emplace(root, static_cast<int>(members.size()));
    if (fresh) members.emplace_back();
    class_of[i] = it->second;
    members[it->second].push_back(i);
  }
  const int n = static_cast<int>(members.size());
  std::vector<FinCat::Ends> ends;
  for (int c = 0; c < n; ++c) {
    const Span& sp = spans[members[c].front()];
    ends.push_back({p.cod(sp.s), p.cod(sp.f)});
  }
  std::vector<ArrowId> ids;
  for (ObjId o = 0; o < p.num_objects(); ++o)
    ids.push_back(class_of[span_id.at({p.identity(o), p.identity(o)})]);

  auto ore = [&](ArrowId f, ArrowId t) -> std::pair<ArrowId, ArrowId> {
    for (ArrowId t2 : in[p.dom(f)]) {
      if (!s[t2]) continue;
      for (ArrowId f2 : p.hom(p.dom(t2), p.dom(t)))
        if (p.compose(t2, f) == p.compose(f2, t)) return {t2, f2};
    }
    throw InvariantError("Ore completion vanished");
  };
  auto compose_spans = [&](int i, int j) {
    const Span& a = spans[i];
    const Span& b = spans[j];
    const auto [t2, f2] = ore(a.f, b.s);
    return class_of[span_id.at({p.compose(t2, a.s), p.compose(f2, b.f)})];
  };
  CandidateCounter counter("fraction composition check", budget.max_candidates);
  FinCat result = FinCat::generate(p.num_objects(), ends, ids, [&](ArrowId c1, ArrowId c2) {
    const int value = compose_spans(members[c1].front(), members[c2].front());
    for (int i : members[c1])
      for (int j : members[c2]) {
        counter.tick();
        if (compose_spans(i, j) != value) throw InvariantError("span composition depends on representatives");
      }
    return value;
  });
  std::vector<std::string> names;
  for (int c = 0; c < n; ++c) {
    const Span& sp = spans[members[c].front()];
    names.push_back(p.is_identity(sp.s) ? p.arrow_name(sp.f)
                                        : p.arrow_name(sp.f) + "∘" + p.arrow_name(sp.s) + "⁻¹");
  }
  result.set_arrow_names(std::move(names));
  if (p.has_names()) {
    std::vector<std::string> on;
    for (ObjId o = 0; o < p.num_objects(); ++o) on.push_back(p.object_name(o));
    result.set_object_names(std::move(on));
  }
  LocalizedCat loc;
  loc.source = pp;
  loc.sigma = sigma;
  loc.result = share(std::move(result));
  loc.strategy = LocalizationTier::right_fractions;
  loc.status = LocalizationStatus::exact;
  loc.localization_functor = Functor{pp, loc.result, {}, {}};
  for (ObjId o = 0; o < p.num_objects(); ++o) loc.localization_functor.obj_map.push_back(o);
  for (ArrowId a = 0; a < p.num_arrows(); ++a)
    loc.localization_functor.arr_map.push_back(class_of[span_id.at({p.identity(p.dom(a)), a})]);
  for (int c = 0; c < n; ++c) {
    const Span& sp = spans[members[c].front()];
    std::vector<ZigzagLetter> z;
    if (!p.is_identity(sp.s)) z.push_back({sp.s, true});
    if (!p.is_identity(sp.f)) z.push_back({sp.f, false});
    loc.zigzag.push_back(std::move(z));
  }
  loc.detail = std::to_string(spans.size()) + " spans in " + std::to_string(n) + " classes";
  return loc;
}

namespace {

using Word = std::vector<int>;

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Rule {
  Word lhs, rhs;
  int id;
};

/// Typed string rewriting over the letters of p and formal σ inverses.
class Completion {
 public:
  Completion(const FinCat& p, const std::vector<char>& sigma, const Budget& budget)
      : p_(p), budget_(budget), forward_(p.num_arrows()) {
    for (ArrowId a = 0; a < p.num_arrows(); ++a) {
      dom_.push_back(p.dom(a));
      cod_.push_back(p.cod(a));
    }
    for (ArrowId a = 0; a < p.num_arrows(); ++a) {
      dom_.push_back(p.cod(a));
      cod_.push_back(p.dom(a));
      invertible_.push_back(sigma[a] && !p.is_identity(a));
    }
  }

  int letter_count() const { return static_cast<int>(dom_.size()); }
  bool is_letter(int l) const { return l < forward_ ? !p_.is_identity(l) : invertible_[l - forward_]; }
  ObjId dom(int l) const { return dom_[l]; }
  ObjId cod(int l) const { return cod_[l]; }

  /// false when the rule or word-length budget ran out
  bool run(std::string& why) {
    std::deque<std::pair<Word, Word>> pending;
    for (ArrowId a = 0; a < p_.num_arrows(); ++a) {
      if (!is_letter(a)) continue;
      for (ArrowId b : p_.out(p_.cod(a))) {
        if (!is_letter(b)) continue;
        const ArrowId c = p_.compose(a, b);
        pending.push_back({{a, b}, p_.is_identity(c) ? Word{} : Word{c}});
      }
      if (is_letter(forward_ + a)) {
        pending.push_back({{a, forward_ + a}, {}});
        pending.push_back({{forward_ + a, a}, {}});
      }
    }
    std::set<std::pair<int, int>> done;
    while (true) {
      while (!pending.empty()) {
        auto [x, y] = pending.front();
        pending.pop_front();
        x = normalize(x);
        y = normalize(y);
        if (x == y) continue;
        if (shortlex_less(x, y)) std::swap(x, y);
        if (x.size() > budget_.max_word_length) {
          why = "rule longer than the word-length budget";
          return false;
        }
        add_rule(std::move(x), std::move(y), pending);
        if (rules_.size() > budget_.max_rewrite_rules) {
          why = "rewrite-rule budget exhausted";
          return false;
        }
      }
      bool added = false;
      const std::vector<Rule> snapshot = rules_;
      for (const Rule& r1 : snapshot)
        for (const Rule& r2 : snapshot) {
          if (!done.insert({r1.id, r2.id}).second) continue;
          critical_pairs(r1, r2, pending);
          added = added || !pending.empty();
        }
      if (pending.empty()) return true;
    }
  }

  Word normalize(Word w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < w.size() && !changed; ++i)
        for (const Rule& r : rules_) {
          if (r.lhs.size() > w.size() - i || !std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + i)) continue;
          Word next(w.begin(), w.begin() + i);
          next.insert(next.end(), r.rhs.begin(), r.rhs.end());
          next.insert(next.end(), w.begin() + i + r.lhs.size(), w.end());
          w = std::move(next);
          changed = true;
          break;
        }
    }
    return w;
  }

  bool suffix_reducible(const Word& w) const {
    for (const Rule& r : rules_)
      if (r.lhs.size() <= w.size() && std::equal(r.lhs.rbegin(), r.lhs.rend(), w.rbegin())) return true;
    return false;
  }

 private:
  static bool contains(const Word& hay, const Word& needle) {
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
  }

  void add_rule(Word lhs, Word rhs, std::deque<std::pair<Word, Word>>& pending) {
    std::vector<Rule> kept;
    for (Rule& r : rules_) {
      if (contains(r.lhs, lhs))
        pending.push_back({r.lhs, r.rhs});
      else
        kept.push_back(std::move(r));
    }
    rules_ = std::move(kept);
    rules_.push_back({std::move(lhs), std::move(rhs), next_id_++});
    for (Rule& r : rules_) r.rhs = normalize(r.rhs);
  }

  void critical_pairs(const Rule& a, const Rule& b, std::deque<std::pair<Word, Word>>& pending) const {
    // suffix of a.lhs = prefix of b.lhs
    for (std::size_t k = 1; k < a.lhs.size() && k < b.lhs.size(); ++k) {
      if (!std::equal(a.lhs.end() - k, a.lhs.end(), b.lhs.begin())) continue;
      Word left = a.rhs;
      left.insert(left.end(), b.lhs.begin() + k, b.lhs.end());
      Word right(a.lhs.begin(), a.lhs.end() - k);
      right.insert(right.end(), b.rhs.begin(), b.rhs.end());
      Word l = normalize(left), r = normalize(right);
      if (l != r) pending.push_back({l, r});
    }
    // b.lhs inside a.lhs
    if (a.id != b.id && b.lhs.size() <= a.lhs.size())
      for (std::size_t i = 0; i + b.lhs.size() <= a.lhs.size(); ++i) {
        if (!std::equal(b.lhs.begin(), b.lhs.end(), a.lhs.begin() + i)) continue;
        Word right(a.lhs.begin(), a.lhs.begin() + i);
        right.insert(right.end(), b.rhs.begin(), b.rhs.end());
        right.insert(right.end(), a.lhs.begin() + i + b.lhs.size(), a.lhs.end());
        Word l = normalize(a.rhs), r = normalize(right);
        if (l != r) pending.push_back({l, r});
      }
  }

  const FinCat& p_;
  const Budget& budget_;
  int forward_;
  std::vector<ObjId> dom_, cod_;
  std::vector<char> invertible_;
  std::vector<Rule> rules_;
  int next_id_ = 0;
};

}  // namespace

LocalizedCat localize_zigzag(const CatPtr& pp, const std::vector<char>& sigma, const Budget& budget) {
  const FinCat& p = *pp;
  LocalizedCat loc;
  loc.source = pp;
  loc.sigma = sigma;
  loc.strategy = LocalizationTier::bounded_zigzag;
  Completion kb(p, sigma, budget);
  std::string why;
  if (!kb.run(why)) {
    loc.status = LocalizationStatus::undecided;
    loc.detail = why;
    return loc;
  }
  // irreducible words per start object, shortlex
  struct Entry {
    ObjId start;
    Word word;
    ObjId end;
  };
  std::vector<Entry> words;
  std::map<std::pair<ObjId, Word>, ArrowId> index;
  for (ObjId o = 0; o < p.num_objects(); ++o) {
    std::deque<Entry> queue{{o, {}, o}};
    while (!queue.empty()) {
      Entry cur = std::move(queue.front());
      queue.pop_front();
      if (cur.word.size() > budget.max_word_length) {
        loc.status = LocalizationStatus::undecided;
        loc.detail = "normal forms exceed the word-length budget";
        return loc;
      }
      index.emplace(std::make_pair(cur.start, cur.word), static_cast<int>(words.size()));
      words.push_back(cur);
      if (words.size() > budget.max_cells) {
        loc.status = LocalizationStatus::undecided;
        loc.detail = "too many normal forms";
        return loc;
      }
      for (int l = 0; l < kb.letter_count(); ++l) {
        if (!kb.is_letter(l) || kb.dom(l) != cur.end) continue;
        Word next = cur.word;
        next.push_back(l);
        if (!kb.suffix_reducible(next)) queue.push_back({cur.start, std::move(next), kb.cod(l)});
      }
    }
  }
  std::vector<FinCat::Ends> ends;
  for (const auto& w : words) ends.push_back({w.start, w.end});
  std::vector<ArrowId> ids;
  for (ObjId o = 0; o < p.num_objects(); ++o) ids.push_back(index.at({o, {}}));
  FinCat result = FinCat::generate(p.num_objects(), ends, ids, [&](ArrowId a, ArrowId b) {
    Word w = words[a].word;
    w.insert(w.end(), words[b].word.begin(), words[b].word.end());
    auto it = index.find({words[a].start, kb.normalize(w)});
    if (it == index.end()) throw InvariantError("normal form of a composite is missing");
    return it->second;
  });
  std::vector<std::string> names;
  const int forward = p.num_arrows();
  for (const auto& w : words) {
    std::vector<ZigzagLetter> z;
    std::string label;
    for (int l : w.word) {
      z.push_back({l < forward ? l : l - forward, l >= forward});
      const std::string piece = l < forward ? p.arrow_name(l) : p.arrow_name(l - forward) + "⁻¹";
      label = label.empty() ? piece : piece + "∘" + label;
    }
    names.push_back(label.empty() ? "1_" + p.object_name(w.start) : label);
    loc.zigzag.push_back(std::move(z));
  }
  result.set_arrow_names(std::move(names));
  if (p.has_names()) {
    std::vector<std::string> on;
    for (ObjId o = 0; o < p.num_objects(); ++o) on.push_back(p.object_name(o));
    result.set_object_names(std::move(on));
  }
  loc.result = share(std::move(result));
  loc.localization_functor = Functor{pp, loc.result, {}, {}};
  for (ObjId o = 0; o < p.num_objects(); ++o) loc.localization_functor.obj_map.push_back(o);
  for (ArrowId a = 0; a < p.num_arrows(); ++a)
    loc.localization_functor.arr_map.push_back(
        p.is_identity(a) ? ids[p.dom(a)] : index.at({p.dom(a), kb.normalize({a})}));
  loc.status = LocalizationStatus::exact;
  loc.detail = std::to_string(words.size()) + " normal forms";
  return loc;
}

LocalizedCat localize(const CatPtr& p, const std::vector<char>& sigma, const Budget& budget) {
  bool invertible = true;
  for (ArrowId a = 0; a < p->num_arrows(); ++a)
    if (sigma[a] && !p->is_iso(a)) invertible = false;
  if (invertible) return tier_a(p, sigma);
  const FractionsCheck check = check_right_fractions(*p, multiplicative_closure(*p, sigma));
  if (check.ok) return localize_fractions(p, sigma, budget);
  LocalizedCat loc = localize_zigzag(p, sigma, budget);
  loc.detail = "no right fractions (" + check.failure + "); " + loc.detail;
  return loc;
}

LocalizedCat localize(const ColimitPresentation& pres, const Budget& budget) {
  return localize(pres.p, pres.sigma, budget);
}

Functor induced_functor(const LocalizedCat& loc, const Functor& g) {
  if (!loc.exact()) throw StructureError("localization is undecided");
  if (!inverts(g, loc.sigma)) throw StructureError("functor does not invert sigma");
  const FinCat& x = *g.target;
  const FinCat& r = *loc.result;
  Functor out{loc.result, g.target, g.obj_map, {}};
  for (ArrowId a = 0; a < r.num_arrows(); ++a) {
    ArrowId value = x.identity(g.obj(r.dom(a)));
    for (const ZigzagLetter& l : loc.zigzag[a])
      value = x.compose(value, l.inverse ? x.inverse(g.arr(l.arrow)) : g.arr(l.arrow));
    out.arr_map.push_back(value);
  }
  if (!validate_functor(out).ok()) throw InvariantError("induced assignment is not a functor");
  if (!(compose_functors(loc.localization_functor, out) == g))
    throw InvariantError("induced functor does not factor the given one");
  return out;
}

}  // namespace wcolim
