#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lrnn/util.hpp"

namespace lrnn {

// First-order terms without function symbols: a term is a constant or a
// variable. Text convention is Prolog's: identifiers starting with an
// uppercase letter or '_' are variables, everything else is a constant.
struct Term {
  enum class Kind : uint8_t { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  bool isVariable() const { return kind == Kind::Variable; }
  bool isConstant() const { return kind == Kind::Constant; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  int arity() const { return static_cast<int>(args.size()); }
  bool isGround() const;
  std::string text() const;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

// head <- body[0], ..., body[k-1]; empty body means a fact.
struct DefiniteClause {
  Atom head;
  std::vector<Atom> body;

  bool isFact() const { return body.empty(); }
  std::string text() const;

  auto operator<=>(const DefiniteClause&) const = default;
  bool operator==(const DefiniteClause&) const = default;
};

// Variable name -> term. Ordered map so iteration (and derived output) is
// deterministic.
using Substitution = std::map<std::string, Term>;

Term applySubst(const Substitution& s, const Term& t);
Atom applySubst(const Substitution& s, const Atom& a);
DefiniteClause applySubst(const Substitution& s, const DefiniteClause& c);

// Most general unifier of two atoms. No occurs-check is needed since terms
// are flat. Absence of a unifier is a normal outcome.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

enum class HeadKind : uint8_t { DatasetPredicate, LatentPredicate, TargetPredicate };

struct WeightedClause {
  DefiniteClause clause;
  std::string weightKey;
  int layer = 0;
  HeadKind headKind = HeadKind::DatasetPredicate;

  bool operator==(const WeightedClause&) const = default;
};

struct WeightedFact {
  Atom atom;
  double weight = 1.0;

  bool operator==(const WeightedFact&) const = default;
};

struct Query {
  Atom atom;
  double target = 1.0;

  bool operator==(const Query&) const = default;
};

struct Example {
  std::string id;
  std::vector<WeightedFact> facts;
  std::vector<Query> queries;
};

using Dataset = std::vector<Example>;

// An ordered set of weighted rules. Order is meaningful: it fixes weight
// initialization, grounding enumeration and network layout.
struct Template {
  std::vector<WeightedClause> rules;

  size_t size() const { return rules.size(); }
  std::string freshWeightKey() const;
};

// Variables of a clause in first-occurrence order (head first, then body).
std::vector<std::string> clauseVariables(const DefiniteClause& c);

// Constants appearing anywhere in the clause.
void collectConstants(const DefiniteClause& c, std::set<std::string>& out);

// Rename variables to V1, V2, ... in first-occurrence order. Two clauses are
// equal up to variable renaming iff their canonical forms are equal.
DefiniteClause canonicalizeVariables(const DefiniteClause& c);

// Rename variables so that clauses from different rules cannot capture each
// other's variables during grounding.
DefiniteClause standardizeApart(const DefiniteClause& c, int clauseIndex);

// Latent predicates are named "alpha<layer>_<index>"; the names never occur
// in datasets (the parser reserves them).
bool isLatentPredicate(const std::string& predicate);
int latentLayer(const std::string& predicate);          // 0 if not latent
std::string makeLatentName(int layer, int index);
int maxLatentIndexInLayer(const Template& t, int layer);

}  // namespace lrnn
