#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dam/numerics/tensor.hpp"

namespace dam::numerics {

struct ParamId {
  std::size_t value = 0;
  friend bool operator==(ParamId, ParamId) = default;
};

/// Named, ordered collection of learnable blocks.
class ParameterSet {
 public:
  ParamId add(std::string name, Tensor2 value);

  std::size_t size() const noexcept { return values_.size(); }
  const Tensor2& operator[](ParamId id) const { return values_.at(id.value); }
  Tensor2& operator[](ParamId id) { return values_.at(id.value); }
  const std::string& name(ParamId id) const { return names_.at(id.value); }
  std::optional<ParamId> find(std::string_view name) const;
  ParamId require(std::string_view name) const;

  std::size_t total_elements() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Tensor2> values_;
};

/// Gradient buffers shaped like a ParameterSet, zero-initialised.
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ParameterSet& params);

  std::size_t size() const noexcept { return blocks_.size(); }
  Tensor2& operator[](ParamId id) { return blocks_.at(id.value); }
  const Tensor2& operator[](ParamId id) const { return blocks_.at(id.value); }

  void set_zero();
  void scale(double factor);
  // Elementwise sum; shapes must match block for block.
  void add(const Gradients& other);
  bool all_finite() const noexcept;

 private:
  std::vector<Tensor2> blocks_;
};

/// Handle to a value recorded on a GradientTape.
struct Var {
  std::size_t index = 0;
};

/// Reverse-mode tape. Nodes are appended in evaluation order, so replaying them
/// backwards is a reverse topological traversal. One tape per thread.
class GradientTape {
 public:
  using BackwardFn = std::function<void(GradientTape&, std::size_t self)>;

  Var constant(Tensor2 value);
  // Parameters are referenced, not copied; they must outlive the tape and stay
  // unchanged while it is alive.
  Var parameter(const ParameterSet& params, ParamId id);

  // Appends an operation result. `backward` reads grad(self) and accumulates into
  // its inputs via accumulate_grad / grad_for.
  Var record(Tensor2 value, BackwardFn backward);

  const Tensor2& value(Var v) const;
  std::size_t size() const noexcept { return nodes_.size(); }

  // Adjoint of node `index`; zero-shaped-like-value when nothing has flowed in.
  const Tensor2& grad(std::size_t index);
  // Mutable adjoint for accumulation, allocated on first use.
  Tensor2& grad_for(Var v);
  void accumulate_grad(Var v, const Tensor2& delta);

  // Seeds d(output)/d(output) = seed (output must be 1x1) and propagates.
  // Parameter adjoints are added into `grads`.
  void backward(Var output, Gradients& grads, double seed = 1.0);

  std::size_t last_backward_visits() const noexcept { return visits_; }

 private:
  struct Node {
    Tensor2 owned;
    const Tensor2* external = nullptr;
    Tensor2 grad;
    bool has_grad = false;
    std::optional<ParamId> param;
    BackwardFn backward;
  };

  Node& node(std::size_t i) { return nodes_.at(i); }

  std::deque<Node> nodes_;
  std::size_t visits_ = 0;
};

}  // namespace dam::numerics
