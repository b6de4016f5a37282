#include "dam/text/structured.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "dam/errors.hpp"

namespace dam::text {

std::size_t FieldSpec::width() const noexcept {
  if (kind == FieldKind::numeric) return boundaries.size() + 2;
  return categories.size() + (has_other ? 1 : 0) + 1;
}

StructuredLayout::StructuredLayout(std::vector<FieldSpec> fields) : fields_(std::move(fields)) {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    const auto& f = fields_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (fields_[j].name == f.name) throw ArgumentError("duplicate field '" + f.name + "'");
    }
    if (f.kind == FieldKind::numeric) {
      if (!std::is_sorted(f.boundaries.begin(), f.boundaries.end()) ||
          std::adjacent_find(f.boundaries.begin(), f.boundaries.end()) != f.boundaries.end()) {
        throw ArgumentError("bucket boundaries of '" + f.name + "' must be strictly increasing");
      }
      if (!f.bin_labels.empty() && f.bin_labels.size() != f.boundaries.size() + 1) {
        throw ArgumentError("field '" + f.name + "' needs one label per bin");
      }
    } else if (f.categories.empty()) {
      throw ArgumentError("categorical field '" + f.name + "' has no categories");
    }
    spans_.push_back({dimension_, f.width()});
    dimension_ += f.width();
  }
}

std::size_t StructuredLayout::field_index(const std::string& name) const {
  for (std::size_t i = 0; i < fields_.size(); ++i)
    if (fields_[i].name == name) return i;
  throw ArgumentError("layout has no field '" + name + "'");
}

std::vector<std::string> StructuredLayout::bit_labels() const {
  std::vector<std::string> labels;
  labels.reserve(dimension_);
  for (const auto& f : fields_) {
    if (f.kind == FieldKind::numeric) {
      for (std::size_t b = 0; b <= f.boundaries.size(); ++b) {
        labels.push_back(f.name + "=" +
                         (f.bin_labels.empty() ? "bin" + std::to_string(b) : f.bin_labels[b]));
      }
    } else {
      for (const auto& c : f.categories) labels.push_back(f.name + "=" + c);
      if (f.has_other) labels.push_back(f.name + "=other");
    }
    labels.push_back(f.name + "=missing");
  }
  return labels;
}

StructuredLayout default_layout() {
  auto categorical = [](std::string name, std::vector<std::string> cats) {
    FieldSpec f;
    f.name = std::move(name);
    f.kind = FieldKind::categorical;
    f.categories = std::move(cats);
    return f;
  };
  auto numeric = [](std::string name, std::vector<double> bounds, std::vector<std::string> labels) {
    FieldSpec f;
    f.name = std::move(name);
    f.kind = FieldKind::numeric;
    f.has_other = false;
    f.boundaries = std::move(bounds);
    f.bin_labels = std::move(labels);
    return f;
  };
  return StructuredLayout({
      categorical("ed_location", {"main", "fast_track", "pediatric", "behavioral"}),
      categorical("gender", {"female", "male"}),
      categorical("age_range", {"0-17", "18-34", "35-49", "50-64", "65-79", "80+"}),
      categorical("arrival_method", {"walk_in", "ambulance", "police", "transfer"}),
      numeric("arrival_hour", {6, 12, 18}, {"00-05", "06-11", "12-17", "18-23"}),
      numeric("prior_visits", {1, 2, 4}, {"0", "1", "2-3", "4+"}),
      categorical("insurance", {"private", "medicare", "medicaid", "self_pay"}),
      numeric("heart_rate", {60, 100, 140}, {"<60", "60-99", "100-139", ">=140"}),
      numeric("systolic_bp", {90, 140, 180}, {"<90", "90-139", "140-179", ">=180"}),
      numeric("temperature", {36.0, 38.0, 39.0}, {"<36", "36-37.9", "38-38.9", ">=39"}),
  });
}

namespace {

std::string as_category(const FieldValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (std::floor(d) == d && std::abs(d) < 1e15) return std::to_string(static_cast<long long>(d));
  std::ostringstream os;
  os << d;
  return os.str();
}

std::optional<double> as_number(const FieldValue& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d)) return *d;
    return std::nullopt;
  }
  const auto& s = std::get<std::string>(v);
  try {
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used == s.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

StructuredVector binarize_structured(const std::map<std::string, FieldValue>& raw,
                                     const StructuredLayout& layout) {
  StructuredVector out;
  out.bits.assign(layout.dimension(), 0);
  for (std::size_t i = 0; i < layout.fields().size(); ++i) {
    const FieldSpec& f = layout.fields()[i];
    const FieldSpan& span = layout.span(i);
    const std::size_t missing_bit = span.offset + span.width - 1;

    auto it = raw.find(f.name);
    if (it == raw.end() || std::holds_alternative<std::monostate>(it->second)) {
      out.bits[missing_bit] = 1;
      continue;
    }
    if (f.kind == FieldKind::numeric) {
      const auto value = as_number(it->second);
      if (!value) {
        out.bits[missing_bit] = 1;
        continue;
      }
      const auto bin = static_cast<std::size_t>(
          std::upper_bound(f.boundaries.begin(), f.boundaries.end(), *value) -
          f.boundaries.begin());
      out.bits[span.offset + bin] = 1;
    } else {
      const std::string cat = as_category(it->second);
      auto pos = std::find(f.categories.begin(), f.categories.end(), cat);
      if (pos != f.categories.end()) {
        out.bits[span.offset + static_cast<std::size_t>(pos - f.categories.begin())] = 1;
      } else if (f.has_other) {
        out.bits[span.offset + f.categories.size()] = 1;
      } else {
        out.bits[missing_bit] = 1;
      }
    }
  }
  return out;
}

}  // namespace dam::text
