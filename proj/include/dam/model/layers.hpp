#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dam/model/config.hpp"
#include "dam/model/parameters.hpp"
#include "dam/numerics/tape.hpp"
#include "dam/text/document.hpp"

namespace dam::model {

// Graph pieces shared by the DAM and the baselines.
numerics::Var param_var(numerics::GradientTape& tape, const numerics::ParameterSet& params,
                        const std::string& name);
numerics::Var dense_graph(numerics::GradientTape& tape, const numerics::ParameterSet& params,
                          const std::string& prefix, numerics::Var input, bool relu);
// Embedding rows of the active positions only (l_n x d_w).
numerics::Var embed_graph(numerics::GradientTape& tape, const numerics::ParameterSet& params,
                          const text::Document& doc);
numerics::Var bilstm_graph(numerics::GradientTape& tape, const numerics::ParameterSet& params,
                           numerics::Var input);
// Scorer s(h; theta) = relu(h W1 + b1) w2 + b2 for every row, softmax-normalised.
// Returns the 1 x l weight row.
numerics::Var attention_graph(numerics::GradientTape& tape, const numerics::ParameterSet& params,
                              numerics::Var states);
// Weighted sums (attention, sum, average) run through the same 1 x l by l x d
// product; `weights` is required for attention and ignored otherwise.
numerics::Var pool_graph(numerics::GradientTape& tape, numerics::Var states,
                         std::optional<numerics::Var> weights, PoolingStrategy strategy);

// Standalone evaluations of the same pieces on plain tensors.

// L x d_w, including PAD rows. Throws IndexError for ids outside the table.
numerics::Tensor2 embed(const text::Document& doc, const ModelParameters& model);
// L x d_m; rows >= active_length are zero.
numerics::Tensor2 bilstm(const numerics::Tensor2& input, std::size_t active_length,
                         const ModelParameters& model);
// One weight per row of `states`; rows >= active_length get 0.
std::vector<double> attention_weights(const numerics::Tensor2& states, std::size_t active_length,
                                      const ModelParameters& model);
// Softmax of the first `active_length` scores, zero elsewhere.
std::vector<double> masked_softmax(std::span<const double> scores, std::size_t active_length);
std::vector<double> pool(const numerics::Tensor2& states, std::span<const double> weights,
                         std::size_t active_length, PoolingStrategy strategy);

}  // namespace dam::model
