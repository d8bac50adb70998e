#pragma once

#include <Eigen/Dense>

#include <vector>

namespace forge {

/// Order in which position and momentum blocks appear in a phase-space point.
enum class PhaseOrdering { QP, PQ };

/// The symplectic matrix used by every module, together with its inverse.
///
/// With the default QP ordering, phi = (q, p) and omega^{ab} = [[0, I], [-I, 0]].
/// The PQ ordering phi = (p, q) flips the sign of omega so that Hamilton's
/// equations keep the form phi-dot = omega grad H.
class SymplecticConvention {
 public:
  explicit SymplecticConvention(int n, PhaseOrdering ordering = PhaseOrdering::QP);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  PhaseOrdering ordering() const { return ordering_; }

  /// omega^{ab}, entries in {-1, 0, 1}.
  int upper(int a, int b) const { return upper_[a * dim() + b]; }
  /// omega_{ab}, the inverse: omega^{ab} omega_{bc} = delta^a_c.
  int lower(int a, int b) const { return lower_[a * dim() + b]; }

  Eigen::MatrixXd upper_matrix() const;
  Eigen::MatrixXd lower_matrix() const;

  /// Permutation taking a (q, p)-ordered index to this convention's index.
  int from_qp(int qp_index) const;

  friend bool operator==(const SymplecticConvention& a, const SymplecticConvention& b) {
    return a.n_ == b.n_ && a.ordering_ == b.ordering_;
  }

 private:
  int n_;
  PhaseOrdering ordering_;
  std::vector<int> upper_;
  std::vector<int> lower_;
};

}  // namespace forge
