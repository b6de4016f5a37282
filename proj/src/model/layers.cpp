#include "dam/model/layers.hpp"

#include "dam/errors.hpp"
#include "dam/model/lstm.hpp"
#include "dam/numerics/ops.hpp"
#include "dam/numerics/softmax.hpp"

namespace dam::model {

namespace ops = numerics::ops;
using numerics::GradientTape;
using numerics::ParameterSet;
using numerics::Tensor2;
using numerics::Var;

Var param_var(GradientTape& tape, const ParameterSet& params, const std::string& name) {
  return tape.parameter(params, params.require(name));
}

Var dense_graph(GradientTape& tape, const ParameterSet& params, const std::string& prefix,
                Var input, bool relu) {
  Var w = param_var(tape, params, prefix + ".weight");
  Var b = param_var(tape, params, prefix + ".bias");
  Var y = ops::add_bias(tape, ops::matmul(tape, input, w), b);
  return relu ? ops::relu(tape, y) : y;
}

Var embed_graph(GradientTape& tape, const ParameterSet& params, const text::Document& doc) {
  if (doc.effective_length == 0 || doc.effective_length > doc.token_ids.size()) {
    throw ArgumentError("document effective length " + std::to_string(doc.effective_length) +
                        " invalid for length " + std::to_string(doc.token_ids.size()));
  }
  Var table = param_var(tape, params, "embedding");
  return ops::gather_rows(tape, table, doc.active());
}

Var bilstm_graph(GradientTape& tape, const ParameterSet& params, Var input) {
  auto run = [&](const std::string& prefix, bool reverse) {
    Var w = param_var(tape, params, prefix + ".input");
    Var b = param_var(tape, params, prefix + ".bias");
    Var pre = ops::add_bias(tape, ops::matmul(tape, input, w), b);
    return lstm_sequence(tape, pre, param_var(tape, params, prefix + ".recurrent"), reverse);
  };
  Var fwd = run("lstm_fwd", false);
  Var bwd = run("lstm_bwd", true);
  return ops::concat_cols(tape, fwd, bwd);
}

Var attention_graph(GradientTape& tape, const ParameterSet& params, Var states) {
  Var hidden = dense_graph(tape, params, "attn_hidden", states, true);
  Var scores = ops::matmul(tape, hidden, param_var(tape, params, "attn_score.weight"));  // l x 1
  return ops::softmax_rows(tape, ops::transpose(tape, scores));
}

Var pool_graph(GradientTape& tape, Var states, std::optional<Var> weights,
               PoolingStrategy strategy) {
  const std::size_t rows = tape.value(states).rows();
  switch (strategy) {
    case PoolingStrategy::attention:
      if (!weights) throw ArgumentError("attention pooling requires attention weights");
      return ops::matmul(tape, *weights, states);
    case PoolingStrategy::sum:
      return ops::matmul(tape, tape.constant(Tensor2(1, rows, 1.0)), states);
    case PoolingStrategy::average:
      return ops::matmul(tape, tape.constant(Tensor2(1, rows, 1.0 / static_cast<double>(rows))),
                         states);
    case PoolingStrategy::max:
      return ops::max_rows(tape, states);
  }
  throw ArgumentError("unknown pooling strategy");
}

Tensor2 embed(const text::Document& doc, const ModelParameters& model) {
  const Tensor2& table = model.params[model.params.require("embedding")];
  Tensor2 out(doc.token_ids.size(), table.cols());
  for (std::size_t r = 0; r < doc.token_ids.size(); ++r) {
    const auto id = doc.token_ids[r];
    if (id >= table.rows()) {
      throw IndexError("token id " + std::to_string(id) + " >= vocabulary size " +
                       std::to_string(table.rows()));
    }
    std::copy(table.row(id).begin(), table.row(id).end(), out.row(r).begin());
  }
  return out;
}

namespace {

Tensor2 leading_rows(const Tensor2& t, std::size_t n) {
  if (n == 0 || n > t.rows()) {
    throw ArgumentError("active length " + std::to_string(n) + " invalid for " + t.shape_string());
  }
  return Tensor2(n, t.cols(),
                 std::vector<double>(t.values().begin(),
                                     t.values().begin() + static_cast<std::ptrdiff_t>(n * t.cols())));
}

}  // namespace

Tensor2 bilstm(const Tensor2& input, std::size_t active_length, const ModelParameters& model) {
  GradientTape tape;
  Var x = tape.constant(leading_rows(input, active_length));
  const Tensor2& active = tape.value(bilstm_graph(tape, model.params, x));
  Tensor2 out(input.rows(), active.cols());
  std::copy(active.values().begin(), active.values().end(), out.data().begin());
  return out;
}

std::vector<double> attention_weights(const Tensor2& states, std::size_t active_length,
                                      const ModelParameters& model) {
  GradientTape tape;
  Var h = tape.constant(leading_rows(states, active_length));
  const Tensor2& a = tape.value(attention_graph(tape, model.params, h));
  std::vector<double> out(states.rows(), 0.0);
  std::copy(a.values().begin(), a.values().end(), out.begin());
  return out;
}

std::vector<double> masked_softmax(std::span<const double> scores, std::size_t active_length) {
  if (active_length == 0 || active_length > scores.size()) {
    throw ArgumentError("active length " + std::to_string(active_length) + " invalid for " +
                        std::to_string(scores.size()) + " scores");
  }
  auto head = numerics::softmax_stable(scores.first(active_length));
  head.resize(scores.size(), 0.0);
  return head;
}

std::vector<double> pool(const Tensor2& states, std::span<const double> weights,
                         std::size_t active_length, PoolingStrategy strategy) {
  GradientTape tape;
  Var h = tape.constant(leading_rows(states, active_length));
  std::optional<Var> w;
  if (strategy == PoolingStrategy::attention) {
    if (weights.size() < active_length) {
      throw ArgumentError("attention pooling needs " + std::to_string(active_length) + " weights");
    }
    w = tape.constant(Tensor2::row_vector(weights.first(active_length)));
  }
  const Tensor2& v = tape.value(pool_graph(tape, h, w, strategy));
  return v.values();
}

}  // namespace dam::model
