#pragma once

// Closed forms of the exponentially embedded multinomial over K+1 reduced
// cells. Vectors are Eigen expressions of any floating scalar; `reduced_ref`
// always has K+1 entries, the last one being the aggregated cell, and `beta`
// has K entries.

#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "eeftc/error.hpp"

namespace eeftc {

template <class Derived>
using ColumnOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;

/// beta_k = ln(p'_{i,k} / p'_{0,k}) - ln(p'_{i,K+1} / p'_{0,K+1}), k = 1..K.
template <class ClassDerived, class RefDerived>
ColumnOf<ClassDerived> beta_vector(const Eigen::MatrixBase<ClassDerived>& reduced_class,
                                   const Eigen::MatrixBase<RefDerived>& reduced_ref) {
  using Scalar = typename ClassDerived::Scalar;
  const Eigen::Index cells = reduced_class.size();
  if (cells < 2 || reduced_ref.size() != cells)
    throw Error(ErrorCode::InvalidArgument, "reduced vectors must both have K+1 >= 2 cells");
  if ((reduced_class.array() <= Scalar(0)).any() || (reduced_ref.array() <= Scalar(0)).any())
    throw Error(ErrorCode::NonpositiveCell, "reduced cells must be strictly positive");

  const Eigen::Index k = cells - 1;
  const Scalar tail = std::log(reduced_class[k] / reduced_ref[k]);
  ColumnOf<ClassDerived> beta(k);
  for (Eigen::Index j = 0; j < k; ++j) beta[j] = std::log(reduced_class[j] / reduced_ref[j]) - tail;
  return beta;
}

namespace detail {

// Exponents a_j = ln p'_{0,j} + theta beta_j with beta_{K+1} = 0, and their max.
template <class BetaDerived, class RefDerived>
ColumnOf<BetaDerived> tilted_log_weights(typename BetaDerived::Scalar theta,
                                         const Eigen::MatrixBase<BetaDerived>& beta,
                                         const Eigen::MatrixBase<RefDerived>& reduced_ref) {
  const Eigen::Index k = beta.size();
  if (reduced_ref.size() != k + 1)
    throw Error(ErrorCode::InvalidArgument, "reference must have one more cell than beta");
  ColumnOf<BetaDerived> a(k + 1);
  for (Eigen::Index j = 0; j < k; ++j) a[j] = std::log(reduced_ref[j]) + theta * beta[j];
  a[k] = std::log(reduced_ref[k]);
  return a;
}

}  // namespace detail

/// K1(theta, l) = l ln(sum_k p'_{0,k} e^{theta beta_k} + p'_{0,K+1}),
/// evaluated as a shifted log-sum-exp.
template <class BetaDerived, class RefDerived>
typename BetaDerived::Scalar cumulant_k1(typename BetaDerived::Scalar theta, typename BetaDerived::Scalar length,
                                         const Eigen::MatrixBase<BetaDerived>& beta,
                                         const Eigen::MatrixBase<RefDerived>& reduced_ref) {
  using Scalar = typename BetaDerived::Scalar;
  if (theta == Scalar(0) || length == Scalar(0)) return Scalar(0);
  const auto a = detail::tilted_log_weights(theta, beta, reduced_ref);
  const Scalar top = a.maxCoeff();
  return length * (top + std::log((a.array() - top).exp().sum()));
}

/// dK1/dtheta = l E_theta[beta_J], J drawn from the tilted cells.
template <class BetaDerived, class RefDerived>
typename BetaDerived::Scalar cumulant_k1_derivative(typename BetaDerived::Scalar theta,
                                                    typename BetaDerived::Scalar length,
                                                    const Eigen::MatrixBase<BetaDerived>& beta,
                                                    const Eigen::MatrixBase<RefDerived>& reduced_ref) {
  const auto a = detail::tilted_log_weights(theta, beta, reduced_ref);
  const ColumnOf<BetaDerived> w = (a.array() - a.maxCoeff()).exp();
  return length * w.head(beta.size()).dot(beta.derived()) / w.sum();
}

/// d2K1/dtheta2 = l Var_theta[beta_J] >= 0.
template <class BetaDerived, class RefDerived>
typename BetaDerived::Scalar cumulant_k1_second_derivative(typename BetaDerived::Scalar theta,
                                                           typename BetaDerived::Scalar length,
                                                           const Eigen::MatrixBase<BetaDerived>& beta,
                                                           const Eigen::MatrixBase<RefDerived>& reduced_ref) {
  using Scalar = typename BetaDerived::Scalar;
  const auto a = detail::tilted_log_weights(theta, beta, reduced_ref);
  ColumnOf<BetaDerived> w = (a.array() - a.maxCoeff()).exp();
  w /= w.sum();
  const Scalar mean = w.head(beta.size()).dot(beta.derived());
  Scalar second = Scalar(0);
  for (Eigen::Index j = 0; j < beta.size(); ++j) second += w[j] * beta[j] * beta[j];
  return length * (second - mean * mean);
}

}  // namespace eeftc
