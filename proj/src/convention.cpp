#include "forge/convention.hpp"

#include "forge/errors.hpp"

namespace forge {

SymplecticConvention::SymplecticConvention(int n, PhaseOrdering ordering)
    : n_(n), ordering_(ordering) {
  if (n < 1) throw ConfigError("symplectic convention needs n >= 1");
  const int d = dim();
  upper_.assign(d * d, 0);
  lower_.assign(d * d, 0);
  // QP: omega^{q_i p_i} = +1. PQ: omega^{p_i q_i} = -1 at the same slots.
  const int sign = ordering == PhaseOrdering::QP ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    upper_[i * d + (n + i)] = sign;
    upper_[(n + i) * d + i] = -sign;
    // The inverse of a block [[0, sI], [-sI, 0]] is its negative.
    lower_[i * d + (n + i)] = -sign;
    lower_[(n + i) * d + i] = sign;
  }
}

Eigen::MatrixXd SymplecticConvention::upper_matrix() const {
  Eigen::MatrixXd m(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) m(a, b) = upper(a, b);
  return m;
}

Eigen::MatrixXd SymplecticConvention::lower_matrix() const {
  Eigen::MatrixXd m(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) m(a, b) = lower(a, b);
  return m;
}

int SymplecticConvention::from_qp(int qp_index) const {
  if (ordering_ == PhaseOrdering::QP) return qp_index;
  return qp_index < n_ ? qp_index + n_ : qp_index - n_;
}

}  // namespace forge
