#include "priomap/model.hpp"

#include <cmath>
#include <string>

namespace priomap {

namespace {

void check_block(const Eigen::MatrixXd& m, const char* name, Eigen::Index rows,
                 Eigen::Index cols, bool unit_rows, double tol) {
  if (m.rows() != rows || m.cols() != cols)
    throw SchemaError(std::string(name) + ": expected " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " matrix");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v))
        throw SchemaError(std::string(name) + "[" + std::to_string(i) + "][" +
                          std::to_string(j) + "]: non-finite entry");
      if (v < 0.0)
        throw SchemaError(std::string(name) + "[" + std::to_string(i) + "][" +
                          std::to_string(j) + "]: negative entry");
    }
    if (unit_rows && std::abs(m.row(i).norm() - 1.0) > tol)
      throw SchemaError(std::string(name) + "[" + std::to_string(i) +
                        "]: row norm deviates from 1 by more than " + std::to_string(tol));
  }
}

}  // namespace

void check_map(const PriorityMap& map, double row_norm_tol) {
  if (map.d < 1) throw SchemaError("d: must be at least 1");
  if (map.alpha < 0 || !std::isfinite(map.alpha)) throw SchemaError("alpha: must be non-negative");
  const Eigen::Index n = map.embeddings.rows();
  const Eigen::Index m = map.evaluator_criteria.rows();
  check_block(map.embeddings, "x", n, map.d, false, row_norm_tol);
  check_block(map.best_viewpoints, "v", n, map.d, true, row_norm_tol);
  check_block(map.evaluator_criteria, "w", m, map.d, true, row_norm_tol);
  if (!map.item_ids.empty() && static_cast<Eigen::Index>(map.item_ids.size()) != n)
    throw SchemaError("item_ids: size does not match embedding rows");
  if (!map.evaluator_ids.empty() && static_cast<Eigen::Index>(map.evaluator_ids.size()) != m)
    throw SchemaError("evaluator_ids: size does not match criterion rows");
}

}  // namespace priomap
