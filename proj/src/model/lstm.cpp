#include "dam/model/lstm.hpp"

#include <cmath>

#include "dam/errors.hpp"
#include "dam/numerics/softmax.hpp"

namespace dam::model {

using numerics::GradientTape;
using numerics::Tensor2;
using numerics::Var;

namespace {

// Applies the gate nonlinearities to z (4h, in place) and advances the cell.
// On return z holds [i | f | o | g]; c_out and tanh_c_out are filled.
void cell_update(std::span<double> z, std::span<const double> c_prev, std::span<double> c_out,
                 std::span<double> tanh_c_out, std::span<double> h_out) {
  const std::size_t h = c_out.size();
  for (std::size_t j = 0; j < 3 * h; ++j) z[j] = numerics::logistic(z[j]);
  for (std::size_t j = 3 * h; j < 4 * h; ++j) z[j] = std::tanh(z[j]);
  for (std::size_t j = 0; j < h; ++j) {
    const double i = z[j], f = z[h + j], o = z[2 * h + j], g = z[3 * h + j];
    c_out[j] = f * c_prev[j] + i * g;
    tanh_c_out[j] = std::tanh(c_out[j]);
    h_out[j] = o * tanh_c_out[j];
  }
}

}  // namespace

LstmState lstm_step(std::span<const double> x, const LstmState& prev, const LstmCellView& cell) {
  const std::size_t h = cell.hidden();
  if (cell.input.rows() != x.size() || cell.input.cols() != 4 * h ||
      cell.recurrent.cols() != 4 * h || cell.bias.rows() != 1 || cell.bias.cols() != 4 * h ||
      prev.h.size() != h || prev.c.size() != h) {
    throw ShapeError("lstm_step shape mismatch: x " + numerics::shape_string(1, x.size()) +
                     ", W " + cell.input.shape_string() + ", U " + cell.recurrent.shape_string() +
                     ", b " + cell.bias.shape_string() + ", state h=" +
                     std::to_string(prev.h.size()));
  }
  Tensor2 z = cell.bias;
  Tensor2 xr = Tensor2::row_vector(x);
  Tensor2 hr = Tensor2::row_vector(prev.h);
  numerics::matmul_accumulate(xr, cell.input, z);
  numerics::matmul_accumulate(hr, cell.recurrent, z);

  LstmState next{std::vector<double>(h), std::vector<double>(h)};
  std::vector<double> tanh_c(h);
  cell_update(z.data(), prev.c, next.c, tanh_c, next.h);
  return next;
}

Var lstm_sequence(GradientTape& tape, Var preactivations, Var recurrent, bool reverse) {
  const Tensor2& pre = tape.value(preactivations);
  const Tensor2& u = tape.value(recurrent);
  const std::size_t steps = pre.rows();
  const std::size_t h = u.rows();
  if (u.cols() != 4 * h || pre.cols() != 4 * h) {
    throw ShapeError("lstm_sequence shape mismatch: preactivations " + pre.shape_string() +
                     ", recurrent " + u.shape_string());
  }

  // Per-step caches indexed by sequence position.
  Tensor2 gates(steps, 4 * h);
  Tensor2 cells(steps, h);
  Tensor2 tanh_cells(steps, h);
  Tensor2 out(steps, h);
  Tensor2 h_prev(1, h);
  std::vector<double> zeros(h, 0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = reverse ? steps - 1 - k : k;
    auto z = gates.row(t);
    std::copy(pre.row(t).begin(), pre.row(t).end(), z.begin());
    if (k > 0) {
      const double* hp = h_prev.data().data();
      for (std::size_t r = 0; r < h; ++r) {
        const double hv = hp[r];
        if (hv == 0.0) continue;
        auto urow = u.row(r);
        for (std::size_t j = 0; j < 4 * h; ++j) z[j] += hv * urow[j];
      }
    }
    std::span<const double> c_prev =
        k == 0 ? std::span<const double>(zeros) : cells.row(reverse ? t + 1 : t - 1);
    cell_update(z, c_prev, cells.row(t), tanh_cells.row(t), out.row(t));
    std::copy(out.row(t).begin(), out.row(t).end(), h_prev.data().begin());
  }

  return tape.record(
      std::move(out),
      [preactivations, recurrent, reverse, gates = std::move(gates), cells = std::move(cells),
       tanh_cells = std::move(tanh_cells)](GradientTape& tp, std::size_t self) {
        const Tensor2& dout = tp.grad(self);
        const Tensor2& hs = tp.value(Var{self});
        const Tensor2& u = tp.value(recurrent);
        Tensor2& dpre = tp.grad_for(preactivations);
        Tensor2& du = tp.grad_for(recurrent);
        const std::size_t steps = hs.rows();
        const std::size_t h = hs.cols();

        std::vector<double> dh_next(h, 0.0), dc_next(h, 0.0), dh(h), dz(4 * h);
        for (std::size_t k = steps; k-- > 0;) {
          const std::size_t t = reverse ? steps - 1 - k : k;
          const bool first = k == 0;
          const std::size_t prev_t = first ? 0 : (reverse ? t + 1 : t - 1);
          auto g = gates.row(t);
          auto dout_row = dout.row(t);
          for (std::size_t j = 0; j < h; ++j) dh[j] = dout_row[j] + dh_next[j];
          for (std::size_t j = 0; j < h; ++j) {
            const double i = g[j], f = g[h + j], o = g[2 * h + j], gg = g[3 * h + j];
            const double tc = tanh_cells(t, j);
            const double dc = dh[j] * o * (1.0 - tc * tc) + dc_next[j];
            const double c_prev = first ? 0.0 : cells(prev_t, j);
            dz[j] = dc * gg * i * (1.0 - i);
            dz[h + j] = dc * c_prev * f * (1.0 - f);
            dz[2 * h + j] = dh[j] * tc * o * (1.0 - o);
            dz[3 * h + j] = dc * i * (1.0 - gg * gg);
            dc_next[j] = dc * f;
          }
          auto dpre_row = dpre.row(t);
          for (std::size_t j = 0; j < 4 * h; ++j) dpre_row[j] += dz[j];
          std::fill(dh_next.begin(), dh_next.end(), 0.0);
          if (!first) {
            auto hp = hs.row(prev_t);
            for (std::size_t r = 0; r < h; ++r) {
              auto du_row = du.row(r);
              auto u_row = u.row(r);
              const double hv = hp[r];
              double acc = 0.0;
              for (std::size_t j = 0; j < 4 * h; ++j) {
                du_row[j] += hv * dz[j];
                acc += u_row[j] * dz[j];
              }
              dh_next[r] = acc;
            }
          }
        }
      });
}

}  // namespace dam::model
