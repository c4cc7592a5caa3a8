#include "lrnn/grounding.hpp"

#include <algorithm>

namespace lrnn {

namespace {
const std::vector<Atom> kNoAtoms;
}

void AtomIndex::insert(const Atom& a) {
  if (!all_.insert(a).second) return;
  ++size_;
  byPred_[a.predicate].push_back(a);
  if (!a.args.empty() && a.args[0].isConstant())
    byPredArg0_[{a.predicate, a.args[0].name}].push_back(a);
}

bool AtomIndex::contains(const Atom& a) const { return all_.count(a) > 0; }

const std::vector<Atom>& AtomIndex::byPredicate(const std::string& pred) const {
  auto it = byPred_.find(pred);
  return it == byPred_.end() ? kNoAtoms : it->second;
}

const std::vector<Atom>& AtomIndex::byPredicateFirstArg(
    const std::string& pred, const std::string& firstConst) const {
  auto it = byPredArg0_.find({pred, firstConst});
  return it == byPredArg0_.end() ? kNoAtoms : it->second;
}

namespace {

// Ground-atom match of `lit` under `bind` against `ground`; extends bind on
// success and records the touched variables for backtracking.
bool matchLiteral(const Atom& lit, const Atom& ground, Substitution& bind,
                  std::vector<std::string>& touched) {
  if (lit.predicate != ground.predicate || lit.args.size() != ground.args.size())
    return false;
  size_t before = touched.size();
  for (size_t i = 0; i < lit.args.size(); ++i) {
    const Term& t = lit.args[i];
    const Term& g = ground.args[i];
    if (t.isConstant()) {
      if (t.name != g.name) goto fail;
    } else {
      auto it = bind.find(t.name);
      if (it == bind.end()) {
        bind[t.name] = g;
        touched.push_back(t.name);
      } else if (it->second != g) {
        goto fail;
      }
    }
  }
  return true;
fail:
  while (touched.size() > before) {
    bind.erase(touched.back());
    touched.pop_back();
  }
  return false;
}

int boundArgCount(const Atom& lit, const Substitution& bind) {
  int n = 0;
  for (const Term& t : lit.args)
    if (t.isConstant() || bind.count(t.name)) ++n;
  return n;
}

struct Matcher {
  const AtomIndex& index;
  const std::function<bool(const Substitution&)>& fn;
  bool stopped = false;

  bool emit(const Substitution& bind) {
    if (!fn(bind)) stopped = true;
    return !stopped;
  }

  // Pick the pending literal with the most bound arguments (ties to the
  // earliest position) and branch over its candidate ground atoms.
  void search(std::vector<const Atom*>& pending, Substitution& bind) {
    if (stopped) return;
    if (pending.empty()) {
      emit(bind);
      return;
    }
    size_t pick = 0;
    int best = -1;
    for (size_t i = 0; i < pending.size(); ++i) {
      int b = boundArgCount(*pending[i], bind);
      if (b > best) {
        best = b;
        pick = i;
      }
    }
    const Atom* lit = pending[pick];
    pending.erase(pending.begin() + pick);

    Atom resolved = applySubst(bind, *lit);
    const std::vector<Atom>* cands;
    if (!resolved.args.empty() && resolved.args[0].isConstant())
      cands = &index.byPredicateFirstArg(resolved.predicate, resolved.args[0].name);
    else
      cands = &index.byPredicate(resolved.predicate);

    std::vector<std::string> touched;
    for (const Atom& g : *cands) {
      if (stopped) break;
      touched.clear();
      if (matchLiteral(resolved, g, bind, touched)) {
        search(pending, bind);
        for (const std::string& v : touched) bind.erase(v);
      }
    }
    pending.insert(pending.begin() + pick, lit);
  }
};

}  // namespace

void forEachBodyMatch(const std::vector<Atom>& body,
                      const std::vector<std::string>& headOnlyVars,
                      const std::vector<std::string>& universe,
                      const AtomIndex& index, const Substitution& seed,
                      const std::function<bool(const Substitution&)>& fn) {
  // Wraps fn with the enumeration of variables the body leaves unbound.
  std::function<bool(Substitution&, size_t)> enumFree =
      [&](Substitution& bind, size_t i) -> bool {
    while (i < headOnlyVars.size() && bind.count(headOnlyVars[i])) ++i;
    if (i == headOnlyVars.size()) return fn(bind);
    for (const std::string& c : universe) {
      bind[headOnlyVars[i]] = Term::constant(c);
      bool go = enumFree(bind, i + 1);
      bind.erase(headOnlyVars[i]);
      if (!go) return false;
    }
    return true;
  };

  Substitution bind = seed;
  std::function<bool(const Substitution&)> emitWithFree =
      [&](const Substitution&) -> bool { return enumFree(bind, 0); };

  Matcher m{index, emitWithFree};
  std::vector<const Atom*> pending;
  pending.reserve(body.size());
  for (const Atom& b : body) pending.push_back(&b);
  m.search(pending, bind);
}

std::vector<std::string> herbrandUniverse(
    const std::vector<DefiniteClause>& program,
    const std::vector<std::string>& extraConstants) {
  std::set<std::string> consts(extraConstants.begin(), extraConstants.end());
  for (const DefiniteClause& c : program) collectConstants(c, consts);
  return {consts.begin(), consts.end()};
}

namespace {

// Variables of the clause that do not occur in the body.
std::vector<std::string> headOnlyVariables(const DefiniteClause& c) {
  std::set<std::string> inBody;
  for (const Atom& b : c.body)
    for (const Term& t : b.args)
      if (t.isVariable()) inBody.insert(t.name);
  std::vector<std::string> out;
  for (const std::string& v : clauseVariables(c))
    if (!inBody.count(v)) out.push_back(v);
  return out;
}

}  // namespace

std::set<Atom> leastHerbrandModel(const std::vector<DefiniteClause>& program) {
  return leastHerbrandModel(program, {});
}

std::set<Atom> leastHerbrandModel(const std::vector<DefiniteClause>& program,
                                  const std::vector<std::string>& extraConstants) {
  std::vector<std::string> universe = herbrandUniverse(program, extraConstants);

  std::vector<DefiniteClause> rules;
  std::set<Atom> total;
  std::vector<Atom> delta;
  AtomIndex index;

  auto derive = [&](const Atom& head) {
    if (total.insert(head).second) delta.push_back(head);
  };

  for (size_t i = 0; i < program.size(); ++i) {
    DefiniteClause c = standardizeApart(program[i], static_cast<int>(i));
    if (!c.isFact()) {
      rules.push_back(std::move(c));
      continue;
    }
    if (c.head.isGround()) {
      derive(c.head);
    } else {
      // Non-ground fact: every grounding over the universe holds.
      forEachBodyMatch({}, headOnlyVariables(c), universe, index, {},
                       [&](const Substitution& s) {
                         derive(applySubst(s, c.head));
                         return true;
                       });
    }
  }

  while (!delta.empty()) {
    for (const Atom& a : delta) index.insert(a);
    std::vector<Atom> freshDelta;
    std::swap(delta, freshDelta);  // freshDelta = last round's atoms

    for (const DefiniteClause& rule : rules) {
      std::vector<std::string> freeVars = headOnlyVariables(rule);
      // Semi-naive: require one body literal to match an atom from the last
      // round; the remaining literals match anywhere in the current total.
      for (size_t pivot = 0; pivot < rule.body.size(); ++pivot) {
        std::vector<Atom> rest;
        for (size_t j = 0; j < rule.body.size(); ++j)
          if (j != pivot) rest.push_back(rule.body[j]);
        for (const Atom& d : freshDelta) {
          Substitution seed;
          std::vector<std::string> touched;
          if (!matchLiteral(rule.body[pivot], d, seed, touched)) continue;
          forEachBodyMatch(rest, freeVars, universe, index, seed,
                           [&](const Substitution& s) {
                             derive(applySubst(s, rule.head));
                             return true;
                           });
        }
      }
    }
  }
  return total;
}

std::vector<GroundInstance> activeGroundRules(
    const Template& tmpl, const std::vector<WeightedFact>& example,
    const std::vector<std::string>& extraConstants) {
  std::vector<DefiniteClause> program;
  program.reserve(tmpl.rules.size() + example.size());
  for (const auto& r : tmpl.rules) program.push_back(r.clause);
  for (const auto& f : example) program.push_back({f.atom, {}});

  std::set<Atom> model = leastHerbrandModel(program, extraConstants);
  std::vector<std::string> universe = herbrandUniverse(program, extraConstants);
  AtomIndex index;
  for (const Atom& a : model) index.insert(a);

  std::vector<GroundInstance> out;
  for (const auto& f : example) {
    if (!f.atom.isGround())
      throw Error("non-ground fact in example: " + f.atom.text());
    out.push_back({{f.atom, {}}, -1, "", f.weight});
  }
  for (size_t i = 0; i < tmpl.rules.size(); ++i) {
    const WeightedClause& wc = tmpl.rules[i];
    DefiniteClause c = standardizeApart(wc.clause, static_cast<int>(i));
    forEachBodyMatch(c.body, headOnlyVariables(c), universe, index, {},
                     [&](const Substitution& s) {
                       out.push_back({applySubst(s, c), static_cast<int>(i),
                                      wc.weightKey, 1.0});
                       return true;
                     });
  }
  return out;
}

}  // namespace lrnn
