#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlm/model.hpp"
#include "qlm/noise.hpp"
#include "qlm/oracle.hpp"

namespace qlm {

enum class CollisionKind { MesonMeson, MesonAntimeson, FreeLeft, FreeRight, Vacuum };

std::string to_string(CollisionKind kind);

// A complete scattering experiment: geometry, couplings, walls, schedule.
// Flux excitations sit on the listed links (level |0> in the simulation
// frame); the excitation species is carried by the link parity.
struct ScatteringProtocol {
  std::string name;
  int L = 12;
  CollisionKind kind = CollisionKind::MesonMeson;
  std::vector<int> excited_links;
  std::vector<int> wall_removed_terms;
  int hold_steps = 0;
  double kappa = 1.0, mu = 1.0, g = 3.0;
  double T = 0.25;
  int steps = 0;
  Formulation formulation = Formulation::IntegratedOut;

  LatticeModel model() const;
  WallSchedule walls() const { return {wall_removed_terms, hold_steps}; }
  void validate() const;
};

// Presets mirroring the studied collision setups. Known names:
//   meson_meson_L12_g3, meson_antimeson_L11_g3, meson_antimeson_L11_g05,
//   noise_comparison_L7
ScatteringProtocol protocol_preset(const std::string& name);
std::vector<std::string> preset_names();

// Companion run with the same lattice/schedule but a different initial
// content (vacuum or one of the two single excitations).
ScatteringProtocol companion(const ScatteringProtocol& base, CollisionKind kind);

// Product-state preparation; throws if the pattern violates Gauss's law.
PureState prepare_initial(const ScatteringProtocol& protocol);
BasisConfig initial_link_config(const ScatteringProtocol& protocol);
// Physical-basis unit vector of the initial configuration.
Vector initial_physical_vector(const ScatteringProtocol& protocol,
                               const PhysicalSubspace& subspace);

enum class Engine { Exact, Noiseless, Noisy };

struct RunOptions {
  NoiseModel noise;
  enum class NoisyMode { Trajectories, Kraus } mode = NoisyMode::Trajectories;
  bool postselect = false;
  int num_trajectories = 500;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool use_rzz = false;
};

// Time series of charges and fluxes with run provenance.
struct ObservableRecord {
  std::string protocol_name;
  std::string kind;
  std::string engine;  // exact | noiseless | noisy_trajectories | noisy_kraus
  int L = 0;
  double T = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> charge;     // rows = times, cols = sites
  std::vector<std::vector<double>> flux_orig;  // rows = times, cols = links
  std::uint64_t seed = 0;
  int trajectories = 0;
  int surviving = -1;
  int schema_version = 1;
};

ObservableRecord run_experiment(const ScatteringProtocol& protocol, Engine engine,
                                const RunOptions& options = {});

// Elementwise differences on matching time grids.
ObservableRecord subtract_vacuum(const ObservableRecord& record,
                                 const ObservableRecord& vacuum_record);
// scat - left_free - right_free + vacuum.
ObservableRecord subtract_free(const ObservableRecord& record,
                               const ObservableRecord& left_free,
                               const ObservableRecord& right_free,
                               const ObservableRecord& vacuum_record);

struct SnapshotTable {
  std::vector<double> times;
  std::vector<std::vector<double>> flux_rows;  // original frame, per link
};

// Flux slices at the grid times nearest to the requested ones.
SnapshotTable flux_snapshots(const ObservableRecord& record,
                             const std::vector<double>& times);

}  // namespace qlm
