#include "dam/numerics/ops.hpp"

#include <algorithm>
#include <cmath>

#include "dam/errors.hpp"
#include "dam/numerics/softmax.hpp"

namespace dam::numerics::ops {

namespace {

void require_same_shape(const Tensor2& a, const Tensor2& b, const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + " shape mismatch: " + a.shape_string() + " vs " +
                     b.shape_string());
  }
}

template <typename Forward, typename Derivative>
Var elementwise(GradientTape& t, Var a, Forward f, Derivative df) {
  const Tensor2& x = t.value(a);
  Tensor2 y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  // df receives (input, output).
  return t.record(std::move(y), [a, df](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    const Tensor2& x = tape.value(a);
    const Tensor2& y = tape.value(Var{self});
    Tensor2& ga = tape.grad_for(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * df(x[i], y[i]);
  });
}

}  // namespace

Var matmul(GradientTape& t, Var a, Var b) {
  Tensor2 c = numerics::matmul(t.value(a), t.value(b));
  return t.record(std::move(c), [a, b](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    matmul_a_bt_accumulate(g, tape.value(b), tape.grad_for(a));
    matmul_at_b_accumulate(tape.value(a), g, tape.grad_for(b));
  });
}

Var add_bias(GradientTape& t, Var a, Var bias) {
  Tensor2 y = t.value(a);
  add_row_bias_inplace(y, t.value(bias));
  return t.record(std::move(y), [a, bias](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    add_inplace(tape.grad_for(a), g);
    Tensor2& gb = tape.grad_for(bias);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      auto row = g.row(r);
      for (std::size_t c = 0; c < g.cols(); ++c) gb[c] += row[c];
    }
  });
}

Var add(GradientTape& t, Var a, Var b) {
  require_same_shape(t.value(a), t.value(b), "add");
  Tensor2 y = t.value(a);
  add_inplace(y, t.value(b));
  return t.record(std::move(y), [a, b](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    add_inplace(tape.grad_for(a), g);
    add_inplace(tape.grad_for(b), g);
  });
}

Var mul(GradientTape& t, Var a, Var b) {
  const Tensor2& x = t.value(a);
  const Tensor2& z = t.value(b);
  require_same_shape(x, z, "mul");
  Tensor2 y(x.rows(), x.cols());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] * z[i];
  return t.record(std::move(y), [a, b](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    const Tensor2& x = tape.value(a);
    const Tensor2& z = tape.value(b);
    Tensor2& ga = tape.grad_for(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * z[i];
    Tensor2& gb = tape.grad_for(b);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * x[i];
  });
}

Var relu(GradientTape& t, Var a) {
  return elementwise(
      t, a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var sigmoid(GradientTape& t, Var a) {
  return elementwise(
      t, a, [](double x) { return logistic(x); }, [](double, double y) { return y * (1.0 - y); });
}

Var tanh(GradientTape& t, Var a) {
  return elementwise(
      t, a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Var affine(GradientTape& t, Var a, double alpha, double beta) {
  return elementwise(
      t, a, [alpha, beta](double x) { return alpha * x + beta; },
      [alpha](double, double) { return alpha; });
}

Var gather_rows(GradientTape& t, Var table, std::span<const std::size_t> ids) {
  const Tensor2& e = t.value(table);
  Tensor2 y(ids.size(), e.cols());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] >= e.rows()) {
      throw IndexError("row id " + std::to_string(ids[r]) + " out of range for table " +
                       e.shape_string());
    }
    auto src = e.row(ids[r]);
    auto dst = y.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  std::vector<std::size_t> kept(ids.begin(), ids.end());
  return t.record(std::move(y), [table, kept = std::move(kept)](GradientTape& tape,
                                                                std::size_t self) {
    const Tensor2& g = tape.grad(self);
    Tensor2& ge = tape.grad_for(table);
    for (std::size_t r = 0; r < kept.size(); ++r) {
      auto src = g.row(r);
      auto dst = ge.row(kept[r]);
      for (std::size_t c = 0; c < src.size(); ++c) dst[c] += src[c];
    }
  });
}

Var concat_cols(GradientTape& t, Var a, Var b) {
  const Tensor2& x = t.value(a);
  const Tensor2& z = t.value(b);
  if (x.rows() != z.rows()) {
    throw ShapeError("concat_cols row mismatch: " + x.shape_string() + " | " + z.shape_string());
  }
  Tensor2 y(x.rows(), x.cols() + z.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto dst = y.row(r);
    auto xr = x.row(r);
    auto zr = z.row(r);
    std::copy(xr.begin(), xr.end(), dst.begin());
    std::copy(zr.begin(), zr.end(), dst.begin() + static_cast<std::ptrdiff_t>(xr.size()));
  }
  return t.record(std::move(y), [a, b](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    Tensor2& ga = tape.grad_for(a);
    Tensor2& gb = tape.grad_for(b);
    const std::size_t left = ga.cols();
    for (std::size_t r = 0; r < g.rows(); ++r) {
      auto src = g.row(r);
      auto da = ga.row(r);
      auto db = gb.row(r);
      for (std::size_t c = 0; c < left; ++c) da[c] += src[c];
      for (std::size_t c = 0; c < db.size(); ++c) db[c] += src[left + c];
    }
  });
}

Var transpose(GradientTape& t, Var a) {
  return t.record(numerics::transpose(t.value(a)), [a](GradientTape& tape, std::size_t self) {
    add_inplace(tape.grad_for(a), numerics::transpose(tape.grad(self)));
  });
}

Var softmax_rows(GradientTape& t, Var a) {
  const Tensor2& x = t.value(a);
  if (x.cols() == 0) throw ArgumentError("softmax over an empty row");
  Tensor2 y(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto p = softmax_stable(x.row(r));
    std::copy(p.begin(), p.end(), y.row(r).begin());
  }
  return t.record(std::move(y), [a](GradientTape& tape, std::size_t self) {
    const Tensor2& g = tape.grad(self);
    const Tensor2& y = tape.value(Var{self});
    Tensor2& ga = tape.grad_for(a);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      auto gr = g.row(r);
      auto yr = y.row(r);
      double dot = 0.0;
      for (std::size_t c = 0; c < gr.size(); ++c) dot += gr[c] * yr[c];
      auto dst = ga.row(r);
      for (std::size_t c = 0; c < gr.size(); ++c) dst[c] += yr[c] * (gr[c] - dot);
    }
  });
}

Var max_rows(GradientTape& t, Var a) {
  const Tensor2& x = t.value(a);
  if (x.rows() == 0) throw ArgumentError("max over zero rows");
  Tensor2 y(1, x.cols());
  std::vector<std::size_t> argmax(x.cols(), 0);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    double best = x(0, c);
    for (std::size_t r = 1; r < x.rows(); ++r) {
      if (x(r, c) > best) {
        best = x(r, c);
        argmax[c] = r;
      }
    }
    y[c] = best;
  }
  return t.record(std::move(y), [a, argmax = std::move(argmax)](GradientTape& tape,
                                                                std::size_t self) {
    const Tensor2& g = tape.grad(self);
    Tensor2& ga = tape.grad_for(a);
    for (std::size_t c = 0; c < argmax.size(); ++c) ga(argmax[c], c) += g[c];
  });
}

Var pick(GradientTape& t, Var a, std::size_t row, std::size_t col) {
  const Tensor2& x = t.value(a);
  if (row >= x.rows() || col >= x.cols()) {
    throw IndexError("pick (" + std::to_string(row) + "," + std::to_string(col) +
                     ") out of range for " + x.shape_string());
  }
  Tensor2 y(1, 1, x(row, col));
  return t.record(std::move(y), [a, row, col](GradientTape& tape, std::size_t self) {
    tape.grad_for(a)(row, col) += tape.grad(self)[0];
  });
}

Var log_clamped(GradientTape& t, Var a, double lo, double hi) {
  return elementwise(
      t, a, [lo, hi](double x) { return std::log(std::clamp(x, lo, hi)); },
      [lo, hi](double x, double) { return (x < lo || x > hi) ? 0.0 : 1.0 / x; });
}

Var sum_all(GradientTape& t, Var a) {
  const Tensor2& x = t.value(a);
  double s = 0.0;
  for (double v : x.data()) s += v;
  return t.record(Tensor2(1, 1, s), [a](GradientTape& tape, std::size_t self) {
    const double g = tape.grad(self)[0];
    for (double& v : tape.grad_for(a).data()) v += g;
  });
}

}  // namespace dam::numerics::ops
