// Copyright 2026 The Compgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPGAME_LINALG_HPP_
#define COMPGAME_LINALG_HPP_

#include <cmath>
#include <cstddef>

#include <Eigen/Core>

#include "compgame/rational.hpp"

namespace compgame {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

// x^T A y.
template <typename DerivedX, typename DerivedA, typename DerivedY>
typename DerivedA::Scalar bilinear(const Eigen::MatrixBase<DerivedX>& x,
                                   const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedY>& y) {
  return x.dot(a * y);
}

// Payoff matrix over strategy families from per-outcome payoffs: column c of
// `dist_a` is the outcome law of row strategy c, likewise for `dist_b`, and
// `outcome_payoff(o, o')` is the payoff on the pure outcome pair.
template <typename DerivedA, typename DerivedU, typename DerivedB>
Matrix<typename DerivedU::Scalar> family_payoffs(
    const Eigen::MatrixBase<DerivedA>& dist_a,
    const Eigen::MatrixBase<DerivedU>& outcome_payoff,
    const Eigen::MatrixBase<DerivedB>& dist_b) {
  return dist_a.transpose() * outcome_payoff * dist_b;
}

// R(i, j) = max_k A(k, j) - A(i, j): what the row player gains by the best
// unilateral switch away from row i against column j.
template <typename Derived>
Matrix<typename Derived::Scalar> row_player_regret(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> r(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Scalar best = a.col(j).maxCoeff();
    for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = best - a(i, j);
  }
  return r;
}

// R(i, j) = max_k B(i, k) - B(i, j), the column player's counterpart.
template <typename Derived>
Matrix<typename Derived::Scalar> column_player_regret(
    const Eigen::MatrixBase<Derived>& b) {
  return row_player_regret(b.transpose()).transpose();
}

// Two-sided Hoeffding bound: with probability >= `confidence`, the mean of
// `samples` i.i.d. draws from [lo, lo + range] is within the returned
// distance of its expectation.
inline double hoeffding_half_width(double range, std::size_t samples,
                                   double confidence = 0.99) {
  return range * std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                           (2.0 * static_cast<double>(samples)));
}

}  // namespace compgame

#endif  // COMPGAME_LINALG_HPP_
