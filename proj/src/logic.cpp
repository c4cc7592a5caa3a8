#include "lrnn/logic.hpp"

#include <algorithm>

namespace lrnn {

bool Atom::isGround() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.isConstant(); });
}

std::string Atom::text() const {
  if (args.empty()) return predicate;
  std::string out = predicate;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].name;
  }
  out += ')';
  return out;
}

std::string DefiniteClause::text() const {
  std::string out = head.text();
  if (!body.empty()) {
    out += " <- ";
    for (size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].text();
    }
  }
  return out;
}

Term applySubst(const Substitution& s, const Term& t) {
  if (t.isVariable()) {
    auto it = s.find(t.name);
    if (it != s.end()) return it->second;
  }
  return t;
}

Atom applySubst(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(applySubst(s, t));
  return out;
}

DefiniteClause applySubst(const Substitution& s, const DefiniteClause& c) {
  DefiniteClause out{applySubst(s, c.head), {}};
  out.body.reserve(c.body.size());
  for (const Atom& b : c.body) out.body.push_back(applySubst(s, b));
  return out;
}

namespace {

// Resolve a variable through the binding chain; terms are flat so the chain
// ends at a constant or an unbound variable.
Term walk(const Substitution& s, Term t) {
  while (t.isVariable()) {
    auto it = s.find(t.name);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

}  // namespace

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size())
    return std::nullopt;
  Substitution s;
  for (size_t i = 0; i < a.args.size(); ++i) {
    Term x = walk(s, a.args[i]);
    Term y = walk(s, b.args[i]);
    if (x == y) continue;
    if (x.isVariable())
      s[x.name] = y;
    else if (y.isVariable())
      s[y.name] = x;
    else
      return std::nullopt;  // distinct constants
  }
  // Flatten chains so the substitution is idempotent.
  for (auto& [var, t] : s) t = walk(s, t);
  return s;
}

std::string Template::freshWeightKey() const {
  std::set<std::string> used;
  for (const auto& r : rules) used.insert(r.weightKey);
  int n = static_cast<int>(rules.size());
  while (used.count("w" + std::to_string(n))) ++n;
  return "w" + std::to_string(n);
}

std::vector<std::string> clauseVariables(const DefiniteClause& c) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto visit = [&](const Atom& a) {
    for (const Term& t : a.args)
      if (t.isVariable() && seen.insert(t.name).second) out.push_back(t.name);
  };
  visit(c.head);
  for (const Atom& b : c.body) visit(b);
  return out;
}

void collectConstants(const DefiniteClause& c, std::set<std::string>& out) {
  auto visit = [&](const Atom& a) {
    for (const Term& t : a.args)
      if (t.isConstant()) out.insert(t.name);
  };
  visit(c.head);
  for (const Atom& b : c.body) visit(b);
}

DefiniteClause canonicalizeVariables(const DefiniteClause& c) {
  Substitution ren;
  int n = 0;
  for (const std::string& v : clauseVariables(c))
    ren[v] = Term::variable("V" + std::to_string(++n));
  return applySubst(ren, c);
}

DefiniteClause standardizeApart(const DefiniteClause& c, int clauseIndex) {
  Substitution ren;
  for (const std::string& v : clauseVariables(c))
    ren[v] = Term::variable(v + "__" + std::to_string(clauseIndex));
  return applySubst(ren, c);
}

bool isLatentPredicate(const std::string& predicate) {
  return latentLayer(predicate) > 0;
}

int latentLayer(const std::string& predicate) {
  if (predicate.rfind("alpha", 0) != 0) return 0;
  size_t i = 5, sep = predicate.find('_', i);
  if (sep == std::string::npos || sep == i || sep + 1 >= predicate.size()) return 0;
  int layer = 0;
  for (size_t k = i; k < sep; ++k) {
    if (!isdigit(static_cast<unsigned char>(predicate[k]))) return 0;
    layer = layer * 10 + (predicate[k] - '0');
  }
  for (size_t k = sep + 1; k < predicate.size(); ++k)
    if (!isdigit(static_cast<unsigned char>(predicate[k]))) return 0;
  return layer;
}

std::string makeLatentName(int layer, int index) {
  return "alpha" + std::to_string(layer) + "_" + std::to_string(index);
}

int maxLatentIndexInLayer(const Template& t, int layer) {
  int best = 0;
  std::string prefix = "alpha" + std::to_string(layer) + "_";
  auto consider = [&](const std::string& p) {
    if (p.rfind(prefix, 0) == 0 && latentLayer(p) == layer)
      best = std::max(best, std::stoi(p.substr(prefix.size())));
  };
  for (const auto& r : t.rules) {
    consider(r.clause.head.predicate);
    for (const auto& b : r.clause.body) consider(b.predicate);
  }
  return best;
}

}  // namespace lrnn
