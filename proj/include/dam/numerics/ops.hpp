#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dam/numerics/tape.hpp"

// Differentiable operations recorded on a GradientTape. Shapes are checked on
// every call; the only broadcast is the row-wise bias in add_bias.
namespace dam::numerics::ops {

Var matmul(GradientTape& t, Var a, Var b);
Var add_bias(GradientTape& t, Var a, Var bias);
Var add(GradientTape& t, Var a, Var b);
Var mul(GradientTape& t, Var a, Var b);
Var relu(GradientTape& t, Var a);
Var sigmoid(GradientTape& t, Var a);
Var tanh(GradientTape& t, Var a);
// alpha * a + beta, elementwise.
Var affine(GradientTape& t, Var a, double alpha, double beta);

// Rows `ids` of `table`, in order. Gradients scatter-add back into the table.
Var gather_rows(GradientTape& t, Var table, std::span<const std::size_t> ids);
Var concat_cols(GradientTape& t, Var a, Var b);
Var transpose(GradientTape& t, Var a);

// Stable softmax over each row.
Var softmax_rows(GradientTape& t, Var a);
// Column-wise max over rows (1 x cols). Ties route the gradient to the earliest row.
Var max_rows(GradientTape& t, Var a);

Var pick(GradientTape& t, Var a, std::size_t row, std::size_t col);
// log(clamp(a, lo, hi)); zero gradient where the clamp is active.
Var log_clamped(GradientTape& t, Var a, double lo, double hi);
Var sum_all(GradientTape& t, Var a);

}  // namespace dam::numerics::ops
