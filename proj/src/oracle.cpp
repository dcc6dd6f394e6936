#include "qlm/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "qlm/errors.hpp"

namespace qlm {

Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  const auto& evals = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    phases(k) = std::exp(Complex{0.0, -t * evals(k)});
  return v * phases.asDiagonal() * v.adjoint();
}

bool is_unitary_matrix(const Matrix& u, double tol) {
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() < tol;
}

bool is_hermitian_matrix(const Matrix& h, double tol) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff() < tol;
}

double phase_aligned_distance(const Matrix& u, const Matrix& v) {
  Complex tr = (v.adjoint() * u).trace();
  Complex phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : Complex{1.0, 0.0};
  return (u - phase * v).norm();
}

Matrix expm_local(const Matrix& hermitian, double t) {
  if (!is_hermitian_matrix(hermitian, 1e-10))
    throw std::invalid_argument("expm_local: matrix not Hermitian");
  return expm_hermitian(hermitian, t);
}

SubspaceHamiltonian build_subspace_hamiltonian(
    const LatticeModel& model, const PhysicalSubspace& subspace,
    const std::vector<int>& removed_min_terms) {
  const std::size_t n = subspace.link_configs.size();
  if (n > 20000) throw BudgetError("physical subspace dimension exceeds 20000");
  SubspaceHamiltonian out;
  out.matrix = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto removed = [&](int j) {
    for (int r : removed_min_terms)
      if (r == j) return true;
    return false;
  };

  // Ranks of link configurations for matrix-element lookup.
  std::unordered_map<std::string, std::size_t> rank;
  rank.reserve(n * 2);
  for (std::size_t k = 0; k < n; ++k)
    rank.emplace(config_to_string(subspace.link_configs[k]), k);

  const double sqrt2k = std::sqrt(2.0) * model.kappa;
  for (std::size_t k = 0; k < n; ++k) {
    const BasisConfig& cfg = subspace.link_configs[k];
    // Diagonal: 2 mu sum_m + g^2/2 sum_m^2 over all links.
    double diag = 0.0;
    for (int digit : cfg) {
      const int m = 1 - digit;
      diag += 2.0 * model.mu * m + 0.5 * model.g * model.g * m * m;
    }
    out.matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag;

    // Off-diagonal: pair creation/annihilation processes per term j.
    const int nlinks = model.L - 1;
    for (int j = 0; j < model.L - 1; ++j) {
      if (removed(j)) continue;
      const int left = j - 1;
      const int right = j + 1;
      const int ml = left < 0 ? 0 : 1 - cfg[static_cast<size_t>(left)];
      const int mr = right >= nlinks ? 0 : 1 - cfg[static_cast<size_t>(right)];
      const int digit = cfg[static_cast<size_t>(j)];
      // process on levels {0,1} requires both neighbors at m=0,
      // process on levels {1,2} requires both neighbors at m=+1
      int flipped = -1;
      if (ml == 0 && mr == 0 && (digit == 0 || digit == 1)) flipped = 1 - digit;
      if (ml == 1 && mr == 1 && (digit == 1 || digit == 2)) flipped = 3 - digit;
      if (flipped < 0) continue;
      BasisConfig other = cfg;
      other[static_cast<size_t>(j)] = flipped;
      auto it = rank.find(config_to_string(other));
      if (it == rank.end()) continue;  // partner lies outside the subspace
      out.matrix(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(k)) += sqrt2k;
    }
  }
  return out;
}

ExactEvolver::ExactEvolver(const LatticeModel& model,
                           const PhysicalSubspace& subspace,
                           const HoldSchedule& schedule)
    : t_hold_(schedule.t_hold) {
  SubspaceHamiltonian h_hold =
      build_subspace_hamiltonian(model, subspace, schedule.removed_min_terms);
  SubspaceHamiltonian h_free = build_subspace_hamiltonian(model, subspace, {});
  Eigen::SelfAdjointEigenSolver<Matrix> es1(h_hold.matrix);
  Eigen::SelfAdjointEigenSolver<Matrix> es2(h_free.matrix);
  evals_hold_ = es1.eigenvalues();
  evecs_hold_ = es1.eigenvectors();
  evals_free_ = es2.eigenvalues();
  evecs_free_ = es2.eigenvectors();
}

Vector ExactEvolver::state_at(const Vector& psi0, double t) const {
  if (t < 0) throw std::invalid_argument("evolve_exact: negative time");
  auto propagate = [](const Eigen::VectorXd& evals, const Matrix& evecs,
                      const Vector& psi, double dt) -> Vector {
    Vector coeffs = evecs.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      coeffs(k) *= std::exp(Complex{0.0, -dt * evals(k)});
    return evecs * coeffs;
  };
  const double t1 = std::min(t, t_hold_);
  Vector psi = propagate(evals_hold_, evecs_hold_, psi0, t1);
  if (t > t_hold_) psi = propagate(evals_free_, evecs_free_, psi, t - t_hold_);
  return psi;
}

double ExactEvolver::energy(const Vector& psi, bool hold_phase) const {
  const Eigen::VectorXd& evals = hold_phase ? evals_hold_ : evals_free_;
  const Matrix& evecs = hold_phase ? evecs_hold_ : evecs_free_;
  Vector coeffs = evecs.adjoint() * psi;
  double e = 0.0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    e += evals(k) * std::norm(coeffs(k));
  return e;
}

std::vector<double> physical_link_fluxes(const Vector& psi,
                                         const PhysicalSubspace& subspace,
                                         int nlinks) {
  std::vector<double> flux(static_cast<size_t>(nlinks), 0.0);
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const double w = std::norm(psi(k));
    if (w == 0.0) continue;
    const BasisConfig& cfg = subspace.link_configs[static_cast<size_t>(k)];
    for (int l = 0; l < nlinks; ++l)
      flux[static_cast<size_t>(l)] += w * (1 - cfg[static_cast<size_t>(l)]);
  }
  return flux;
}

}  // namespace qlm
