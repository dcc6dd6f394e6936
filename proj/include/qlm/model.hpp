#pragma once

#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/register.hpp"

namespace qlm {

enum class Formulation { Matterful, IntegratedOut };

// Spin-1 U(1) quantum link model on an open chain of L matter sites and
// L-1 links, in the particle-hole simulation frame. Links beyond the chain
// ends are frozen at m = 0 and enter only as compile-time scalars.
struct LatticeModel {
  int L = 2;
  double kappa = 1.0;
  double mu = 1.0;
  double g = 1.0;
  Formulation formulation = Formulation::IntegratedOut;

  void validate() const;
  int num_links() const { return L - 1; }
  // Position of matter site j / link (j,j+1) in the register.
  int matter_pos(int j) const { return 2 * j; }
  int link_pos(int j) const {
    return formulation == Formulation::Matterful ? 2 * j + 1 : j;
  }
};

// Qutrit encoding of the spin-1 link: level 0 <-> m=+1, 1 <-> m=0, 2 <-> m=-1.
// On ququarts the auxiliary level |3> carries m-weight 0 and is annihilated
// by every Hamiltonian term.
struct SpinOneEncoding {
  static int level_of_m(int m) { return 1 - m; }
  static int m_of_level(int level) { return level == 3 ? 0 : 1 - level; }
  // d x d version of diag(+1, 0, -1 [, 0]).
  static Matrix sz(int d = 3);
  // sqrt(2) (|2><1| + |1><0|), taken as given.
  static Matrix sp(int d = 3);
};

// Matter qubit encoding: level 0 = occupied, level 1 = empty.
struct MatterEncoding {
  static int level_of_occupation(int n) { return 1 - n; }
  static int occupation_of_level(int level) { return 1 - level; }
  static Matrix sigma_z();     // diag(+1, -1)
  static Matrix sigma_plus();  // |0><1|, creates a particle
};

QuditRegister make_register(const LatticeModel& model);

struct LocalTerm {
  std::vector<int> targets;  // register positions, ascending
  Matrix matrix;             // Hermitian, targets[0] most significant
  int index = 0;             // lattice index j of the generating term
};

struct HamiltonianTerms {
  std::vector<LocalTerm> min_terms;  // minimal coupling, indexed j = 0..L-2
  std::vector<LocalTerm> sg_terms;   // mass + gauge coupling, diagonal
};

HamiltonianTerms build_terms(const LatticeModel& model);

// Gauss generator at site j in the particle-hole frame (matterful register).
LocalTerm gauss_generator(int j, const LatticeModel& model);

// Gauge-invariant configurations. link_configs hold one digit per link
// (0,1,2 <-> m=+1,0,-1); configs/indices live in the model's register and
// are sorted by basis index.
struct PhysicalSubspace {
  QuditRegister reg;
  std::vector<BasisConfig> link_configs;
  std::vector<BasisConfig> configs;
  std::vector<std::size_t> indices;

  std::size_t dim() const { return indices.size(); }
};

PhysicalSubspace enumerate_physical(const LatticeModel& model);

// Site occupations implied by a link configuration through Gauss's law.
std::vector<int> occupations_from_links(const BasisConfig& link_config);
bool is_gauge_invariant_links(const BasisConfig& link_config);

// Per-site charge in the original frame from simulation-frame link fluxes:
// rho_j = (-1)^j (<s^z_{j-1,j}> + <s^z_{j,j+1}>), boundary fluxes zero.
std::vector<double> reconstruct_charge(const std::vector<double>& link_fluxes,
                                       const LatticeModel& model);

// Simulation-frame fluxes -> original frame (sign flip on odd links).
std::vector<double> fluxes_to_original_frame(const std::vector<double>& fluxes);

}  // namespace qlm
