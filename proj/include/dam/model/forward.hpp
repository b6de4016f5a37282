#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dam/model/config.hpp"
#include "dam/model/parameters.hpp"
#include "dam/numerics/tape.hpp"
#include "dam/text/document.hpp"
#include "dam/text/structured.hpp"

namespace dam::model {

/// Non-owning view of what a model consumes for one record.
struct ModelInput {
  const text::Document* document = nullptr;
  const text::StructuredVector* structured = nullptr;
};

struct GraphOutputs {
  numerics::Var scores;                    // 1 x 1 sigmoid or 1 x |C| softmax
  numerics::Var pooled;                    // 1 x d (network input to the head, before wide concat)
  std::optional<numerics::Var> attention;  // 1 x l_n, attention pooling only
};

using GraphBuilder = std::function<GraphOutputs(
    numerics::GradientTape&, const ModelConfig&, const numerics::ParameterSet&, const ModelInput&)>;

struct Prediction {
  std::vector<double> class_scores;  // one probability for binary, |C| for multiclass
  std::vector<double> attention;     // per active position; empty unless attention pooling
  std::vector<double> pooled;
  int predicted_class = 0;

  // Per-class probabilities; binary expands p to {1 - p, p}.
  std::vector<double> probabilities() const;
};

// Index of the largest score, lowest index on ties.
int argmax_lowest(std::span<const double> scores);
// Binary: class 1 iff p > 0.5. Multiclass: argmax_lowest.
int predicted_class_from_scores(std::span<const double> class_scores, Task task);

// Head with ReLU on the first two layers and sigmoid / softmax on the output.
numerics::Var classifier_head_graph(numerics::GradientTape& tape,
                                    const numerics::ParameterSet& params, numerics::Var input,
                                    Task task);

/// embed -> dense(ReLU) -> bi-LSTM -> dense(ReLU) -> pool -> [concat p_s] -> head.
GraphOutputs build_dam_graph(numerics::GradientTape& tape, const ModelConfig& config,
                             const numerics::ParameterSet& params, const ModelInput& input);

Prediction to_prediction(const numerics::GradientTape& tape, const GraphOutputs& outputs,
                         const ModelConfig& config);

Prediction predict(const GraphBuilder& builder, const ModelParameters& model,
                   const ModelInput& input);

// The pooling strategy is the one the parameters were built for.
Prediction dam_forward(const text::Document& doc, const text::StructuredVector* structured,
                       const ModelParameters& model);

}  // namespace dam::model
