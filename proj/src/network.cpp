#include "lrnn/network.hpp"

#include <algorithm>
#include <deque>

namespace lrnn {

const char* neuronKindName(NeuronKind k) {
  switch (k) {
    case NeuronKind::Atom: return "atom";
    case NeuronKind::Fact: return "fact";
    case NeuronKind::Rule: return "rule";
    case NeuronKind::Aggregation: return "agg";
  }
  return "?";
}

int WeightStore::add(const std::string& key, double value, bool frozen) {
  if (index_.count(key)) throw Error("duplicate weight key: " + key);
  int idx = static_cast<int>(values_.size());
  index_[key] = idx;
  keys_.push_back(key);
  values_.push_back(value);
  frozen_.push_back(frozen ? 1 : 0);
  return idx;
}

int WeightStore::indexOf(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

double WeightStore::value(const std::string& key) const {
  int idx = indexOf(key);
  if (idx < 0) throw Error("unknown weight key: " + key);
  return values_[idx];
}

void WeightStore::setValue(const std::string& key, double v) {
  int idx = indexOf(key);
  if (idx < 0) throw Error("unknown weight key: " + key);
  values_[idx] = v;
}

void WeightStore::setFrozen(const std::string& key, bool f) {
  int idx = indexOf(key);
  if (idx < 0) throw Error("unknown weight key: " + key);
  frozen_[idx] = f ? 1 : 0;
}

void WeightStore::setAllFrozen(bool f) {
  std::fill(frozen_.begin(), frozen_.end(), static_cast<uint8_t>(f ? 1 : 0));
}

GroundNetwork buildNetwork(const Template& tmpl,
                           const std::vector<WeightedFact>& facts,
                           const std::vector<Atom>& queries,
                           const WeightStore& store) {
  for (const Atom& q : queries)
    if (!q.isGround()) throw Error("non-ground query atom: " + q.text());

  std::vector<std::string> queryConsts;
  for (const Atom& q : queries)
    for (const Term& t : q.args) queryConsts.push_back(t.name);

  std::vector<GroundInstance> instances =
      activeGroundRules(tmpl, facts, queryConsts);

  GroundNetwork net;
  auto push = [&](Neuron n) {
    net.neurons.push_back(std::move(n));
    ++net.kindCount[static_cast<size_t>(net.neurons.back().kind)];
    return static_cast<int32_t>(net.neurons.size() - 1);
  };

  // One atom neuron per distinct ground atom occurring in the grounding,
  // created in lexicographic order.
  std::set<Atom> groundAtoms;
  for (const GroundInstance& gi : instances) {
    groundAtoms.insert(gi.clause.head);
    for (const Atom& b : gi.clause.body) groundAtoms.insert(b);
  }
  for (const Atom& a : groundAtoms)
    net.atomNeuron[a] = push({NeuronKind::Atom, {}, -1, 0.0, a.text()});

  auto weightSlot = [&](const std::string& key) {
    int idx = store.indexOf(key);
    if (idx < 0) throw Error("weight key not in store: " + key);
    return idx;
  };

  // Fact and rule neurons in instance order; aggregation groups keyed by
  // (template rule, ground head) in first-appearance order.
  std::vector<std::pair<int32_t, int32_t>> factOf;   // (atom neuron, fact neuron)
  std::map<std::pair<int, Atom>, std::vector<int32_t>> aggMembers;
  std::vector<std::pair<int, Atom>> aggOrder;

  for (const GroundInstance& gi : instances) {
    if (gi.clause.isFact()) {
      Neuron f{NeuronKind::Fact, {}, -1, gi.factWeight, gi.clause.head.text()};
      if (gi.templateIndex >= 0) f.weightIndex = weightSlot(gi.weightKey);
      factOf.emplace_back(net.atomNeuron.at(gi.clause.head), push(std::move(f)));
      continue;
    }
    Neuron r{NeuronKind::Rule, {}, weightSlot(gi.weightKey), 0.0,
             gi.clause.text()};
    r.inputs.reserve(gi.clause.body.size());
    for (const Atom& b : gi.clause.body)
      r.inputs.push_back(net.atomNeuron.at(b));
    int32_t rid = push(std::move(r));
    auto key = std::make_pair(gi.templateIndex, gi.clause.head);
    auto [it, inserted] = aggMembers.try_emplace(key);
    if (inserted) aggOrder.push_back(key);
    it->second.push_back(rid);
  }

  for (auto& [atomIdx, factIdx] : factOf)
    net.neurons[atomIdx].inputs.push_back(factIdx);

  for (const auto& key : aggOrder) {
    const auto& [tmplIdx, head] = key;
    Neuron agg{NeuronKind::Aggregation, aggMembers.at(key),
               weightSlot(tmpl.rules[tmplIdx].weightKey), 0.0,
               tmpl.rules[tmplIdx].clause.text() + " @ " + head.text()};
    int32_t aid = push(std::move(agg));
    net.neurons[net.atomNeuron.at(head)].inputs.push_back(aid);
  }

  // Kahn topological sort; FIFO over the construction order keeps it
  // deterministic. A leftover node means a cyclic grounding.
  size_t n = net.neurons.size();
  std::vector<int32_t> indegree(n, 0);
  std::vector<std::vector<int32_t>> consumers(n);
  for (size_t i = 0; i < n; ++i) {
    indegree[i] = static_cast<int32_t>(net.neurons[i].inputs.size());
    for (int32_t in : net.neurons[i].inputs)
      consumers[in].push_back(static_cast<int32_t>(i));
  }
  std::deque<int32_t> ready;
  for (size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(static_cast<int32_t>(i));
  net.order.reserve(n);
  while (!ready.empty()) {
    int32_t v = ready.front();
    ready.pop_front();
    net.order.push_back(v);
    for (int32_t c : consumers[v])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  if (net.order.size() != n)
    throw Error("template grounds to a cyclic network; recursive rule sets are not supported");

  net.queryNeuron.reserve(queries.size());
  for (const Atom& q : queries) {
    auto it = net.atomNeuron.find(q);
    net.queryNeuron.push_back(it == net.atomNeuron.end() ? -1 : it->second);
  }
  return net;
}

std::string toDot(const GroundNetwork& net) {
  std::string out = "digraph lrnn {\n  rankdir=BT;\n";
  for (size_t i = 0; i < net.neurons.size(); ++i) {
    const Neuron& nr = net.neurons[i];
    std::string label = nr.label;
    for (auto& ch : label)
      if (ch == '"') ch = '\'';
    out += "  n" + std::to_string(i) + " [label=\"" +
           std::string(neuronKindName(nr.kind)) + "\\n" + label + "\"];\n";
  }
  for (size_t i = 0; i < net.neurons.size(); ++i)
    for (int32_t in : net.neurons[i].inputs)
      out += "  n" + std::to_string(in) + " -> n" + std::to_string(i) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace lrnn
