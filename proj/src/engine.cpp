#include "lrnn/engine.hpp"

#include <cmath>

namespace lrnn {

double sigm(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double gOr(std::span<const double> inputs, ActivationParams p) {
  double s = 0.0;
  for (double v : inputs) s += v;
  return sigm(p.sharpness * (s + p.offset));
}

double gAnd(std::span<const double> inputs, ActivationParams p) {
  if (inputs.empty()) throw Error("gAnd needs at least one input");
  double s = 0.0;
  for (double v : inputs) s += v;
  return sigm(p.sharpness * (s - static_cast<double>(inputs.size()) + 1.0 + p.offset));
}

double gStar(std::span<const double> inputs) {
  if (inputs.empty()) throw Error("gStar needs at least one input");
  double s = 0.0;
  for (double v : inputs) s += v;
  return s / static_cast<double>(inputs.size());
}

void forward(const GroundNetwork& net, const WeightStore& store,
             const EngineConfig& cfg, Tape& tape) {
  const ActivationParams p = cfg.activation;
  tape.values.assign(net.neurons.size(), 0.0);
  for (int32_t idx : net.order) {
    const Neuron& nr = net.neurons[idx];
    double& out = tape.values[idx];
    switch (nr.kind) {
      case NeuronKind::Fact:
        out = nr.weightIndex >= 0 ? store.value(nr.weightIndex) : nr.fixedValue;
        break;
      case NeuronKind::Rule: {
        double s = 0.0;
        for (int32_t in : nr.inputs) s += tape.values[in];
        if (cfg.ruleWeight == RuleWeightMode::ConjunctWeight)
          s += store.value(nr.weightIndex);
        out = sigm(p.sharpness *
                   (s - static_cast<double>(nr.inputs.size()) + 1.0 + p.offset));
        break;
      }
      case NeuronKind::Aggregation: {
        double s = 0.0;
        for (int32_t in : nr.inputs) s += tape.values[in];
        double mean = s / static_cast<double>(nr.inputs.size());
        out = cfg.ruleWeight == RuleWeightMode::AggregationOnly
                  ? store.value(nr.weightIndex) * mean
                  : mean;
        break;
      }
      case NeuronKind::Atom: {
        double s = 0.0;
        for (int32_t in : nr.inputs) s += tape.values[in];
        out = sigm(p.sharpness * (s + p.offset));
        break;
      }
    }
  }
}

Tape forward(const GroundNetwork& net, const WeightStore& store,
             const EngineConfig& cfg) {
  Tape tape;
  forward(net, store, cfg, tape);
  return tape;
}

void backward(const GroundNetwork& net, const WeightStore& store,
              const EngineConfig& cfg, Tape& tape,
              std::span<const std::pair<int32_t, double>> lossGrads,
              std::span<double> grad) {
  const ActivationParams p = cfg.activation;
  tape.adjoints.assign(net.neurons.size(), 0.0);
  for (const auto& [idx, g] : lossGrads) tape.adjoints[idx] += g;

  for (size_t k = net.order.size(); k-- > 0;) {
    int32_t idx = net.order[k];
    const Neuron& nr = net.neurons[idx];
    double adj = tape.adjoints[idx];
    if (adj == 0.0) continue;
    switch (nr.kind) {
      case NeuronKind::Fact:
        if (nr.weightIndex >= 0) grad[nr.weightIndex] += adj;
        break;
      case NeuronKind::Rule: {
        double y = tape.values[idx];
        double d = adj * p.sharpness * y * (1.0 - y);
        for (int32_t in : nr.inputs) tape.adjoints[in] += d;
        if (cfg.ruleWeight == RuleWeightMode::ConjunctWeight)
          grad[net.neurons[ruleAggWeight(net, idx)].weightIndex] += d;
        break;
      }
      case NeuronKind::Aggregation: {
        double m = static_cast<double>(nr.inputs.size());
        if (cfg.ruleWeight == RuleWeightMode::AggregationOnly) {
          double w = store.value(nr.weightIndex);
          for (int32_t in : nr.inputs) tape.adjoints[in] += adj * w / m;
          double s = 0.0;
          for (int32_t in : nr.inputs) s += tape.values[in];
          grad[nr.weightIndex] += adj * (s / m);
        } else {
          for (int32_t in : nr.inputs) tape.adjoints[in] += adj / m;
        }
        break;
      }
      case NeuronKind::Atom: {
        double y = tape.values[idx];
        double d = adj * p.sharpness * y * (1.0 - y);
        for (int32_t in : nr.inputs) tape.adjoints[in] += d;
        break;
      }
    }
  }
}

std::unordered_map<std::string, double> backwardByKey(
    const GroundNetwork& net, const WeightStore& store, const EngineConfig& cfg,
    Tape& tape, std::span<const std::pair<int32_t, double>> lossGrads) {
  std::vector<double> grad(store.size(), 0.0);
  backward(net, store, cfg, tape, lossGrads, grad);
  std::unordered_map<std::string, double> out;
  for (int i = 0; i < store.size(); ++i)
    if (!store.frozen(i)) out[store.keyAt(i)] = grad[i];
  return out;
}

}  // namespace lrnn
