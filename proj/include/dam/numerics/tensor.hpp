#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dam::numerics {

/// Dense row-major matrix of doubles. Vectors are 1 x n rows.
class Tensor2 {
 public:
  Tensor2() = default;
  Tensor2(std::size_t rows, std::size_t cols, double fill = 0.0);
  Tensor2(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Tensor2 from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor2 row_vector(std::span<const double> values);
  static Tensor2 identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  void fill(double value);
  bool all_finite() const noexcept;
  bool same_shape(const Tensor2& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_string() const;

  // Bitwise comparison of shape and contents.
  friend bool operator==(const Tensor2&, const Tensor2&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::string shape_string(std::size_t rows, std::size_t cols);

Tensor2 matmul(const Tensor2& a, const Tensor2& b);

// out += a * b
void matmul_accumulate(const Tensor2& a, const Tensor2& b, Tensor2& out);
// out += a^T * b
void matmul_at_b_accumulate(const Tensor2& a, const Tensor2& b, Tensor2& out);
// out += a * b^T
void matmul_a_bt_accumulate(const Tensor2& a, const Tensor2& b, Tensor2& out);

// Row-wise bias addition is the only broadcast supported anywhere.
void add_row_bias_inplace(Tensor2& a, const Tensor2& bias);

Tensor2 transpose(const Tensor2& a);

// a += b (same shape)
void add_inplace(Tensor2& a, const Tensor2& b);
void scale_inplace(Tensor2& a, double factor);

}  // namespace dam::numerics
