#pragma once

#include <Eigen/Core>
#include <cmath>

#include "priomap/core.hpp"
#include "priomap/errors.hpp"

namespace priomap {

/// Hinge penalty max{0, 1 - z}. Zero exactly on the margin.
template <typename Scalar>
Scalar hinge(Scalar z) {
  return z < Scalar(1) ? Scalar(1) - z : Scalar(0);
}

/// Elementwise projection onto the non-negative orthant. Returns an Eigen
/// expression; evaluate or assign as usual.
template <typename Derived>
auto project_nonnegative(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseMax(typename Derived::Scalar(0));
}

/// Rescales every row to unit L2 norm. A row whose norm falls below 1e-12
/// is replaced by the uniform direction (1/sqrt(d), ..., 1/sqrt(d)) first;
/// this keeps criterion vectors away from zero.
template <typename Derived>
typename Derived::PlainObject normalize_rows(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  typename Derived::PlainObject out = m;
  const Eigen::Index d = out.cols();
  const Scalar uniform = Scalar(1) / std::sqrt(static_cast<Scalar>(d));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar norm = out.row(i).norm();
    if (norm < Scalar(1e-12)) {
      out.row(i).setConstant(uniform);
    } else {
      out.row(i) /= norm;
    }
  }
  return out;
}

/// Mean hinge violation of the per-item dominance constraints
///
///   (1 / (n (n-1))) sum_i sum_{j != i} max{0, 1 - v_i . (x_i - x_j)}
///
/// where x are the item embedding rows and v the best-viewpoint rows.
/// Terms are accumulated in ascending (i, j) order so the result is
/// reproducible bit for bit.
template <typename DerivedX, typename DerivedV>
typename DerivedX::Scalar loss_frontier(const Eigen::MatrixBase<DerivedX>& items,
                                        const Eigen::MatrixBase<DerivedV>& viewpoints) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = items.rows();
  if (n < 2) throw DegenerateInput("loss_frontier: need at least two items");
  if (viewpoints.rows() != n || viewpoints.cols() != items.cols())
    throw ShapeMismatch("loss_frontier: viewpoint shape does not match items");

  Scalar total = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar self = viewpoints.row(i).dot(items.row(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      total += hinge(self - viewpoints.row(i).dot(items.row(j)));
    }
  }
  return total / static_cast<Scalar>(n * (n - 1));
}

/// Mean hinge violation of the observed preference labels
///
///   (1 / c) sum_k sum_{(i,j) in C_k} max{0, 1 - w_k . (x_i - x_j)}
///
/// with c the total label count. Terms follow the stored comparison order.
template <typename DerivedX, typename DerivedW>
typename DerivedX::Scalar loss_consistency(const Eigen::MatrixBase<DerivedX>& items,
                                           const Eigen::MatrixBase<DerivedW>& criteria,
                                           const Dataset& data) {
  using Scalar = typename DerivedX::Scalar;
  if (data.total_comparisons() == 0)
    throw DegenerateInput("loss_consistency: dataset has no comparisons");
  if (items.rows() < data.n_items || criteria.rows() < data.n_evaluators ||
      items.cols() != criteria.cols())
    throw ShapeMismatch("loss_consistency: matrix shapes do not match dataset");

  Scalar total = Scalar(0);
  for (const Comparison& cmp : data.comparisons) {
    const Scalar z =
        criteria.row(cmp.evaluator).dot(items.row(cmp.winner) - items.row(cmp.loser));
    total += hinge(z);
  }
  return total / static_cast<Scalar>(data.total_comparisons());
}

}  // namespace priomap
