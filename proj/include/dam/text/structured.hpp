#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dam/text/record.hpp"

namespace dam::text {

enum class FieldKind { categorical, numeric };

/// One raw field and the span it occupies in the binary vector.
///
/// Categorical span: one bit per category, then "other" (if enabled), then
/// "missing". Numeric span: one bit per bin, then "missing". Bin k covers
/// [boundaries[k-1], boundaries[k]); values outside the range clamp to the edge
/// bins.
struct FieldSpec {
  std::string name;
  FieldKind kind = FieldKind::categorical;
  std::vector<std::string> categories;
  bool has_other = true;
  std::vector<double> boundaries;
  std::vector<std::string> bin_labels;

  std::size_t width() const noexcept;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct FieldSpan {
  std::size_t offset = 0;
  std::size_t width = 0;
};

class StructuredLayout {
 public:
  StructuredLayout() = default;
  explicit StructuredLayout(std::vector<FieldSpec> fields);

  const std::vector<FieldSpec>& fields() const noexcept { return fields_; }
  const FieldSpan& span(std::size_t field) const { return spans_.at(field); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t field_index(const std::string& name) const;

  // Human-readable label of every bit, e.g. "gender=female".
  std::vector<std::string> bit_labels() const;

  friend bool operator==(const StructuredLayout& a, const StructuredLayout& b) {
    return a.fields_ == b.fields_;
  }

 private:
  std::vector<FieldSpec> fields_;
  std::vector<FieldSpan> spans_;
  std::size_t dimension_ = 0;
};

/// The ten triage fields with clinically ordered vital-sign bins.
StructuredLayout default_layout();

struct StructuredVector {
  std::vector<std::uint8_t> bits;
  friend bool operator==(const StructuredVector&, const StructuredVector&) = default;
};

// Never throws on data values: unknown categories go to "other" (or "missing"
// when the field has no other bit), unparseable numerics go to "missing".
StructuredVector binarize_structured(const std::map<std::string, FieldValue>& raw,
                                     const StructuredLayout& layout);

}  // namespace dam::text
