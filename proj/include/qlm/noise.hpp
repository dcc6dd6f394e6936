#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlm/compiler.hpp"
#include "qlm/model.hpp"
#include "qlm/state.hpp"

namespace qlm {

// Trapped-ion error rates; alpha in [0,1] interpolates current (0) to
// near-term (1) hardware. The error channel is pluggable: the probability
// override and the branch bias exist for stress tests and alternative
// channels; virtual gates stay noiseless under every setting.
struct NoiseModel {
  double alpha = 1.0;
  bool enabled = true;
  double probability_override = -1.0;  // >= 0: flat rate for physical gates
  enum class Branch { Balanced, DepolarizeOnly, DephaseOnly };
  Branch branch = Branch::Balanced;

  double probability(NoiseClass nc) const;
  static NoiseModel off() { return {0.0, false}; }
};

// SplitMix64. Hand-rolled so that streams are reproducible across
// compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();               // [0, 1)
  int uniform_int(int n);         // {0, ..., n-1}

 private:
  std::uint64_t state_;
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream = 0);

// A sampled error event: a unitary displacement or phase kick on one qudit.
struct ErrorOp {
  int qudit = 0;
  bool dephase = false;
  int x_shift = 0;  // displacement: |k> -> w^{zk} |k + x mod d>
  int z_power = 0;
  Matrix matrix(int d) const;
};

// Draws at most one error event for the gate; virtual gates never draw.
std::optional<ErrorOp> sample_error(const GateOp& gate, const QuditRegister& reg,
                                    const NoiseModel& noise, Rng& rng);

void apply_error(Complex* amps, const QuditRegister& reg, const ErrorOp& err);

// Ideal gate followed by a possible error event on one participating qudit,
// equally likely to depolarize or dephase.
void apply_noisy_gate(PureState& state, const GateOp& gate,
                      const NoiseModel& noise, Rng& rng);

// Weight outside the physical subspace: 1 - |P psi|^2.
double leakage_fraction(const PureState& state, const PhysicalSubspace& subspace);

constexpr double kNormGuard = 1e-10;

struct StepObservables {
  std::vector<double> link_flux;  // simulation frame <s^z> per link
  std::vector<double> site_occ;   // matterful only: occupation per site
};

struct TrajectoryResult {
  std::uint64_t seed = 0;
  bool discarded = false;
  int discard_step = -1;
  std::vector<double> survival;           // post-projection norm^2 per step
  std::vector<StepObservables> series;    // one entry per recorded time
};

struct TrajectoryBatch {
  std::vector<TrajectoryResult> trajectories;
  std::vector<StepObservables> mean;  // averaged over surviving trajectories
  int surviving = 0;
};

// Monte Carlo trajectories. With postselect the state is projected onto the
// physical subspace after every step; a post-projection weight below the
// norm guard discards the trajectory.
TrajectoryBatch run_trajectories(const Circuit& circuit, const PureState& initial,
                                 const NoiseModel& noise, int num_trajectories,
                                 bool postselect, const PhysicalSubspace& subspace,
                                 std::uint64_t master_seed, int jobs = 1);

struct KrausResult {
  std::vector<Matrix> rho_series;           // one density matrix per time
  std::vector<StepObservables> series;      // diagonal observables per time
  std::vector<double> step_trace;           // ensemble trace before renorm
};

// Ensemble (Kraus) evolution on the physical subspace: per step, sample
// num_samples noisy step unitaries, push the physical basis through each,
// project back, and renormalize the trace once.
KrausResult run_kraus_physical(const Circuit& circuit, const Matrix& rho0,
                               const NoiseModel& noise, int num_samples,
                               const PhysicalSubspace& subspace,
                               std::uint64_t master_seed, int jobs = 1);

// Diagonal observables of a full-register state (uses register roles).
StepObservables measure_state(const PureState& state);

// Diagonal observables of a physical-basis density matrix.
StepObservables measure_rho(const Matrix& rho, const PhysicalSubspace& subspace);

}  // namespace qlm
