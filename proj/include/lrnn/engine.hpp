#pragma once

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrnn/network.hpp"

namespace lrnn {

struct ActivationParams {
  double sharpness = 6.0;  // a
  double offset = -0.5;    // b0
};

// Where the rule weight enters the computation. AggregationOnly multiplies
// the aggregated rule-neuron mean by the weight; ConjunctWeight instead adds
// the weight as an extra summand inside the rule neuron's conjunction (not
// counted in its arity) and leaves the aggregation an unweighted mean.
enum class RuleWeightMode : uint8_t { AggregationOnly, ConjunctWeight };

struct EngineConfig {
  ActivationParams activation;
  RuleWeightMode ruleWeight = RuleWeightMode::AggregationOnly;
};

double sigm(double x);

// sigm(a * (sum(inputs) + b0)); soft disjunction.
double gOr(std::span<const double> inputs, ActivationParams p = {});
// sigm(a * (sum(inputs) - k + 1 + b0)); soft conjunction. Errors on empty input.
double gAnd(std::span<const double> inputs, ActivationParams p = {});
// Arithmetic mean. Errors on empty input.
double gStar(std::span<const double> inputs);

struct Tape {
  std::vector<double> values;
  std::vector<double> adjoints;
};

// Forward sweep in topological order: fact neurons output their weight,
// rule neurons a soft conjunction of their body atoms, aggregation neurons
// weight times the mean of their rule neurons, atom neurons a soft
// disjunction of their inputs.
void forward(const GroundNetwork& net, const WeightStore& store,
             const EngineConfig& cfg, Tape& tape);
Tape forward(const GroundNetwork& net, const WeightStore& store,
             const EngineConfig& cfg = {});

// Reverse sweep. lossGrads maps neuron index -> dLoss/d(neuron output); the
// result is accumulated into grad, which must have store.size() entries.
// Gradients are exact reverse-mode derivatives.
void backward(const GroundNetwork& net, const WeightStore& store,
              const EngineConfig& cfg, Tape& tape,
              std::span<const std::pair<int32_t, double>> lossGrads,
              std::span<double> grad);

// Spec-facing variant keyed by weight key; frozen keys receive no entry.
std::unordered_map<std::string, double> backwardByKey(
    const GroundNetwork& net, const WeightStore& store, const EngineConfig& cfg,
    Tape& tape, std::span<const std::pair<int32_t, double>> lossGrads);

}  // namespace lrnn
