#include "dam/model/forward.hpp"

#include "dam/errors.hpp"
#include "dam/model/layers.hpp"
#include "dam/numerics/ops.hpp"

namespace dam::model {

namespace ops = numerics::ops;
using numerics::GradientTape;
using numerics::ParameterSet;
using numerics::Tensor2;
using numerics::Var;

std::vector<double> Prediction::probabilities() const {
  if (class_scores.size() == 1) return {1.0 - class_scores[0], class_scores[0]};
  return class_scores;
}

int argmax_lowest(std::span<const double> scores) {
  if (scores.empty()) throw ArgumentError("argmax of an empty score vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return static_cast<int>(best);
}

int predicted_class_from_scores(std::span<const double> class_scores, Task task) {
  if (task == Task::binary) {
    if (class_scores.size() != 1) throw ArgumentError("binary prediction needs one score");
    return class_scores[0] > 0.5 ? 1 : 0;
  }
  return argmax_lowest(class_scores);
}

Var classifier_head_graph(GradientTape& tape, const ParameterSet& params, Var input, Task task) {
  Var h1 = dense_graph(tape, params, "head1", input, true);
  Var h2 = dense_graph(tape, params, "head2", h1, true);
  Var logits = dense_graph(tape, params, "head3", h2, false);
  return task == Task::binary ? ops::sigmoid(tape, logits) : ops::softmax_rows(tape, logits);
}

namespace {

Tensor2 structured_row(const text::StructuredVector& ps, std::size_t expected) {
  if (ps.bits.size() != expected) {
    throw ShapeError("structured vector has dimension " + std::to_string(ps.bits.size()) +
                     ", model expects " + std::to_string(expected));
  }
  Tensor2 row(1, ps.bits.size());
  for (std::size_t i = 0; i < ps.bits.size(); ++i) row[i] = ps.bits[i];
  return row;
}

}  // namespace

GraphOutputs build_dam_graph(GradientTape& tape, const ModelConfig& config,
                             const ParameterSet& params, const ModelInput& input) {
  if (config.kind != ModelKind::dam) throw ArgumentError("build_dam_graph needs kind=dam");
  if (input.document == nullptr) throw ArgumentError("DAM requires a document");

  Var x = embed_graph(tape, params, *input.document);
  Var cross = dense_graph(tape, params, "cross", x, true);
  Var states = bilstm_graph(tape, params, cross);
  Var projected = dense_graph(tape, params, "post", states, true);

  GraphOutputs out;
  std::optional<Var> weights;
  if (config.pooling == PoolingStrategy::attention) {
    weights = attention_graph(tape, params, projected);
    out.attention = weights;
  }
  out.pooled = pool_graph(tape, projected, weights, config.pooling);

  Var head_input = out.pooled;
  if (config.wide) {
    if (input.structured == nullptr) throw ArgumentError("wide DAM requires structured features");
    head_input = ops::concat_cols(
        tape, out.pooled, tape.constant(structured_row(*input.structured, config.structured_dim)));
  }
  out.scores = classifier_head_graph(tape, params, head_input, config.task);
  return out;
}

Prediction to_prediction(const GradientTape& tape, const GraphOutputs& outputs,
                         const ModelConfig& config) {
  Prediction p;
  p.class_scores = tape.value(outputs.scores).values();
  p.pooled = tape.value(outputs.pooled).values();
  if (outputs.attention) p.attention = tape.value(*outputs.attention).values();
  p.predicted_class = predicted_class_from_scores(p.class_scores, config.task);
  return p;
}

Prediction predict(const GraphBuilder& builder, const ModelParameters& model,
                   const ModelInput& input) {
  GradientTape tape;
  const GraphOutputs out = builder(tape, model.config, model.params, input);
  return to_prediction(tape, out, model.config);
}

Prediction dam_forward(const text::Document& doc, const text::StructuredVector* structured,
                       const ModelParameters& model) {
  return predict(build_dam_graph, model, ModelInput{&doc, structured});
}

}  // namespace dam::model
