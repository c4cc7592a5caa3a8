#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lrnn/logic.hpp"

namespace lrnn {

// Ground atoms indexed by predicate and by (predicate, first argument) for
// conjunctive body matching.
class AtomIndex {
 public:
  AtomIndex() = default;
  void insert(const Atom& a);
  bool contains(const Atom& a) const;
  const std::vector<Atom>& byPredicate(const std::string& pred) const;
  const std::vector<Atom>& byPredicateFirstArg(const std::string& pred,
                                               const std::string& firstConst) const;
  size_t size() const { return size_; }

 private:
  std::map<std::string, std::vector<Atom>> byPred_;
  std::map<std::pair<std::string, std::string>, std::vector<Atom>> byPredArg0_;
  std::set<Atom> all_;
  size_t size_ = 0;
};

// Enumerates every substitution that grounds `body` inside `index`, extending
// `seed`. Variables that occur in the clause but not in the body (heads of
// non-range-restricted rules) are enumerated over `universe`. Deterministic
// enumeration order. Return false from the callback to stop early.
void forEachBodyMatch(const std::vector<Atom>& body,
                      const std::vector<std::string>& headOnlyVars,
                      const std::vector<std::string>& universe,
                      const AtomIndex& index, const Substitution& seed,
                      const std::function<bool(const Substitution&)>& fn);

// Least fixpoint of the immediate consequence operator, computed bottom-up
// with semi-naive evaluation. Finite because there are no function symbols.
std::set<Atom> leastHerbrandModel(const std::vector<DefiniteClause>& program);
std::set<Atom> leastHerbrandModel(const std::vector<DefiniteClause>& program,
                                  const std::vector<std::string>& extraConstants);

// One ground instance of a template rule or an example fact.
struct GroundInstance {
  DefiniteClause clause;   // fully ground
  int templateIndex = -1;  // index into Template::rules, -1 for example facts
  std::string weightKey;   // empty for example facts
  double factWeight = 1.0; // example facts only
};

// The grounding of template + example restricted to active rules: instances
// whose ground body atoms all hold in the least Herbrand model. Example facts
// are returned first (in input order), then template rules in template order.
std::vector<GroundInstance> activeGroundRules(
    const Template& tmpl, const std::vector<WeightedFact>& example,
    const std::vector<std::string>& extraConstants = {});

// Program constants plus extras, sorted.
std::vector<std::string> herbrandUniverse(
    const std::vector<DefiniteClause>& program,
    const std::vector<std::string>& extraConstants);

}  // namespace lrnn
