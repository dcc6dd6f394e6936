#pragma once

#include <unordered_map>
#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/model.hpp"

namespace qlm {

// exp(-i t H) via eigendecomposition; rejects non-Hermitian input.
Matrix expm_local(const Matrix& hermitian, double t);

struct SubspaceHamiltonian {
  Matrix matrix;  // Hermitian, in the physical link-configuration basis
};

// Minimal-coupling terms listed in removed_min_terms are left out (walls).
SubspaceHamiltonian build_subspace_hamiltonian(
    const LatticeModel& model, const PhysicalSubspace& subspace,
    const std::vector<int>& removed_min_terms);

// Holding-period schedule: the listed minimal-coupling terms are absent for
// t < t_hold and restored afterwards.
struct HoldSchedule {
  std::vector<int> removed_min_terms;
  double t_hold = 0.0;
};

// Reference evolution in the physical basis for a piecewise-constant
// Hamiltonian (walls on, then off), exact up to diagonalization error.
class ExactEvolver {
 public:
  ExactEvolver(const LatticeModel& model, const PhysicalSubspace& subspace,
               const HoldSchedule& schedule);

  Vector state_at(const Vector& psi0, double t) const;
  double energy(const Vector& psi, bool hold_phase) const;

 private:
  double t_hold_;
  Eigen::VectorXd evals_hold_, evals_free_;
  Matrix evecs_hold_, evecs_free_;
};

// <s^z> per link for a state in the physical basis.
std::vector<double> physical_link_fluxes(const Vector& psi,
                                         const PhysicalSubspace& subspace,
                                         int nlinks);

}  // namespace qlm
