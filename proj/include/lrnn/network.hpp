#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lrnn/grounding.hpp"
#include "lrnn/logic.hpp"

namespace lrnn {

enum class NeuronKind : uint8_t { Atom, Fact, Rule, Aggregation };

const char* neuronKindName(NeuronKind k);

struct Neuron {
  NeuronKind kind;
  std::vector<int32_t> inputs;
  int32_t weightIndex = -1;  // WeightStore slot; -1 for example facts and atom/rule neurons
  double fixedValue = 0.0;   // example-fact output
  std::string label;         // ground atom / ground rule text
};

// Shared trainable parameters, keyed by rule identity. Every example's
// network references the same slots.
class WeightStore {
 public:
  int add(const std::string& key, double value, bool frozen = false);
  int indexOf(const std::string& key) const;  // -1 if absent
  bool has(const std::string& key) const { return indexOf(key) >= 0; }

  double value(int idx) const { return values_[idx]; }
  double value(const std::string& key) const;
  void setValue(int idx, double v) { values_[idx] = v; }
  void setValue(const std::string& key, double v);

  bool frozen(int idx) const { return frozen_[idx] != 0; }
  void setFrozen(int idx, bool f) { frozen_[idx] = f ? 1 : 0; }
  void setFrozen(const std::string& key, bool f);
  void setAllFrozen(bool f);

  const std::string& keyAt(int idx) const { return keys_[idx]; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }

  bool operator==(const WeightStore& o) const {
    return keys_ == o.keys_ && values_ == o.values_ && frozen_ == o.frozen_;
  }

 private:
  std::vector<double> values_;
  std::vector<uint8_t> frozen_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, int> index_;
};

// Per-example feed-forward computation graph: a flat arena of neurons with
// explicit edge lists, topologically sorted once at build time.
struct GroundNetwork {
  std::vector<Neuron> neurons;
  std::vector<int32_t> order;  // topological order of neuron indices
  std::map<Atom, int32_t> atomNeuron;
  // One entry per query atom, in query order; -1 marks a query atom that does
  // not occur in the grounding (its output is defined as 0 with no gradient).
  std::vector<int32_t> queryNeuron;
  std::array<int, 4> kindCount{0, 0, 0, 0};

  int count(NeuronKind k) const { return kindCount[static_cast<size_t>(k)]; }
};

// Compiles the grounding of template + example into the four-neuron-kind
// graph. Query constants take part in the grounding universe so that rules
// with head-only variables can derive query atoms. Throws Error on non-ground
// queries, on weight keys missing from the store and on cyclic groundings.
GroundNetwork buildNetwork(const Template& tmpl,
                           const std::vector<WeightedFact>& facts,
                           const std::vector<Atom>& queries,
                           const WeightStore& store);

std::string toDot(const GroundNetwork& net);

}  // namespace lrnn
