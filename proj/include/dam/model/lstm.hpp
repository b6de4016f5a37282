#pragma once

#include <span>
#include <vector>

#include "dam/numerics/tape.hpp"

namespace dam::model {

/// Borrowed weights of one LSTM direction. Gates are packed [i | f | o | g]
/// along the columns of every block.
struct LstmCellView {
  const numerics::Tensor2& input;      // d_in x 4h
  const numerics::Tensor2& recurrent;  // h x 4h
  const numerics::Tensor2& bias;       // 1 x 4h

  std::size_t hidden() const noexcept { return recurrent.rows(); }
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;
};

// i, f, o = sigmoid(xW + hU + b), g = tanh(...), c' = f*c + i*g, h' = o*tanh(c').
LstmState lstm_step(std::span<const double> x, const LstmState& prev, const LstmCellView& cell);

/// Unrolls one direction over the rows of `preactivations` (l x 4h, already
/// holding x_t W + b) starting from zero state. `reverse` walks rows l-1..0.
/// Output row t is h_t, so both directions stay position-aligned.
numerics::Var lstm_sequence(numerics::GradientTape& tape, numerics::Var preactivations,
                            numerics::Var recurrent, bool reverse);

}  // namespace dam::model
