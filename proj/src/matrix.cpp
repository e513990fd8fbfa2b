#include "occlang/matrix.hpp"

namespace occlang {

FeatureMatrix FeatureMatrix::select_prefix(const std::string& prefix) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].rfind(prefix, 0) == 0) keep.push_back(i);
  }
  FeatureMatrix out;
  out.row_ids = row_ids;
  out.values = RowMatrix(values.rows(), keep.size());
  out.names.reserve(keep.size());
  for (std::size_t i : keep) out.names.push_back(names[i]);
  for (std::size_t r = 0; r < values.rows(); ++r) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out.values.at(r, j) = values.at(r, keep[j]);
    }
  }
  return out;
}

FeatureMatrix concat_columns(const std::vector<const FeatureMatrix*>& parts) {
  if (parts.empty()) return {};
  const std::size_t rows = parts.front()->values.rows();
  std::size_t cols = 0;
  for (const auto* p : parts) {
    if (p->values.rows() != rows) throw Error("concat_columns: row count mismatch");
    cols += p->values.cols();
  }
  FeatureMatrix out;
  out.row_ids = parts.front()->row_ids;
  out.values = RowMatrix(rows, cols);
  std::size_t base = 0;
  for (const auto* p : parts) {
    for (const auto& n : p->names) out.names.push_back(n);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < p->values.cols(); ++c) {
        out.values.at(r, base + c) = p->values.at(r, c);
      }
    }
    base += p->values.cols();
  }
  return out;
}

}  // namespace occlang
