#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "occlang/util.hpp"

namespace occlang {

/// Dense row-major matrix of doubles.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double* row(std::size_t r) { return data_.data() + r * cols_; }
  const double* row(std::size_t r) const { return data_.data() + r * cols_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const RowMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Named columns over rows aligned with corpus user order.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<std::string> row_ids;
  RowMatrix values;

  std::size_t col_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    throw Error("unknown feature column: " + name);
  }

  /// Columns whose name starts with `prefix`, original order preserved.
  FeatureMatrix select_prefix(const std::string& prefix) const;
};

/// Column-wise concatenation; all inputs must have the same row count.
FeatureMatrix concat_columns(const std::vector<const FeatureMatrix*>& parts);

}  // namespace occlang
