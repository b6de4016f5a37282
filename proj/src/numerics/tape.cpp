#include "dam/numerics/tape.hpp"

#include "dam/errors.hpp"

namespace dam::numerics {

ParamId ParameterSet::add(std::string name, Tensor2 value) {
  if (find(name)) throw ArgumentError("duplicate parameter block '" + name + "'");
  names_.push_back(std::move(name));
  values_.push_back(std::move(value));
  return ParamId{values_.size() - 1};
}

std::optional<ParamId> ParameterSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return ParamId{i};
  return std::nullopt;
}

ParamId ParameterSet::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw ArgumentError("missing parameter block '" + std::string(name) + "'");
}

std::size_t ParameterSet::total_elements() const noexcept {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

bool ParameterSet::all_finite() const noexcept {
  for (const auto& v : values_)
    if (!v.all_finite()) return false;
  return true;
}

Gradients::Gradients(const ParameterSet& params) {
  blocks_.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[ParamId{i}];
    blocks_.emplace_back(p.rows(), p.cols());
  }
}

void Gradients::set_zero() {
  for (auto& b : blocks_) b.fill(0.0);
}

void Gradients::scale(double factor) {
  for (auto& b : blocks_) scale_inplace(b, factor);
}

void Gradients::add(const Gradients& other) {
  if (other.blocks_.size() != blocks_.size()) {
    throw ShapeError("gradient block count mismatch: " + std::to_string(blocks_.size()) +
                     " vs " + std::to_string(other.blocks_.size()));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) add_inplace(blocks_[i], other.blocks_[i]);
}

bool Gradients::all_finite() const noexcept {
  for (const auto& b : blocks_)
    if (!b.all_finite()) return false;
  return true;
}

Var GradientTape::constant(Tensor2 value) {
  Node n;
  n.owned = std::move(value);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

Var GradientTape::parameter(const ParameterSet& params, ParamId id) {
  Node n;
  n.external = &params[id];
  n.param = id;
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

Var GradientTape::record(Tensor2 value, BackwardFn backward) {
  Node n;
  n.owned = std::move(value);
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

const Tensor2& GradientTape::value(Var v) const {
  const Node& n = nodes_.at(v.index);
  return n.external != nullptr ? *n.external : n.owned;
}

const Tensor2& GradientTape::grad(std::size_t index) { return grad_for(Var{index}); }

Tensor2& GradientTape::grad_for(Var v) {
  Node& n = node(v.index);
  if (!n.has_grad) {
    const Tensor2& val = n.external != nullptr ? *n.external : n.owned;
    n.grad = Tensor2(val.rows(), val.cols());
    n.has_grad = true;
  }
  return n.grad;
}

void GradientTape::accumulate_grad(Var v, const Tensor2& delta) {
  add_inplace(grad_for(v), delta);
}

void GradientTape::backward(Var output, Gradients& grads, double seed) {
  const Tensor2& out = value(output);
  if (out.rows() != 1 || out.cols() != 1) {
    throw ShapeError("backward requires a 1x1 output, got " + out.shape_string());
  }
  grad_for(output)[0] += seed;
  visits_ = 0;
  for (std::size_t i = output.index + 1; i-- > 0;) {
    Node& n = node(i);
    if (!n.has_grad) continue;
    ++visits_;
    if (n.param) {
      add_inplace(grads[*n.param], n.grad);
    } else if (n.backward) {
      n.backward(*this, i);
    }
  }
}

}  // namespace dam::numerics
