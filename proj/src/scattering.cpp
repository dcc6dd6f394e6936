#include "qlm/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlm/errors.hpp"

namespace qlm {

std::string to_string(CollisionKind kind) {
  switch (kind) {
    case CollisionKind::MesonMeson: return "meson_meson";
    case CollisionKind::MesonAntimeson: return "meson_antimeson";
    case CollisionKind::FreeLeft: return "free_left";
    case CollisionKind::FreeRight: return "free_right";
    case CollisionKind::Vacuum: return "vacuum";
  }
  return "?";
}

LatticeModel ScatteringProtocol::model() const {
  LatticeModel m;
  m.L = L;
  m.kappa = kappa;
  m.mu = mu;
  m.g = g;
  m.formulation = formulation;
  return m;
}

void ScatteringProtocol::validate() const {
  model().validate();
  if (T <= 0.0) throw std::invalid_argument("protocol: T must be > 0");
  if (steps < 0 || hold_steps < 0) throw std::invalid_argument("protocol: bad steps");
  for (int l : excited_links)
    if (l < 0 || l >= L - 1) throw std::invalid_argument("protocol: excited link out of range");
  for (int j : wall_removed_terms)
    if (j < 0 || j > L - 2) throw std::invalid_argument("protocol: wall term out of range");
  if (!is_gauge_invariant_links(initial_link_config(*this)))
    throw std::invalid_argument("protocol: initial pattern violates Gauss's law");
}

namespace {

ScatteringProtocol base_preset(const std::string& name) {
  ScatteringProtocol p;
  p.name = name;
  if (name == "meson_meson_L12_g3") {
    // Two same-species excitations (even links), mirror symmetric; the walls
    // freeze the two outermost bonds on each side during the holding period.
    p.L = 12;
    p.kind = CollisionKind::MesonMeson;
    p.excited_links = {2, 8};
    p.wall_removed_terms = {0, 1, 9, 10};
    p.g = 3.0;
    p.hold_steps = 40;
    p.steps = 88;
    return p;
  }
  if (name == "meson_antimeson_L11_g3") {
    // Opposite species: one even and one odd excited link.
    p.L = 11;
    p.kind = CollisionKind::MesonAntimeson;
    p.excited_links = {2, 7};
    p.wall_removed_terms = {0, 1, 8, 9};
    p.g = 3.0;
    p.hold_steps = 32;
    p.steps = 72;
    return p;
  }
  if (name == "meson_antimeson_L11_g05") {
    p.L = 11;
    p.kind = CollisionKind::MesonAntimeson;
    p.excited_links = {2, 7};
    p.wall_removed_terms = {0, 1, 8, 9};
    p.g = 0.5;
    p.hold_steps = 12;
    p.steps = 48;
    return p;
  }
  if (name == "noise_comparison_L7") {
    // Shrunken collision chain with the walls at the chain ends.
    p.L = 7;
    p.kind = CollisionKind::MesonAntimeson;
    p.excited_links = {0, 5};
    p.wall_removed_terms = {};
    p.g = 3.0;
    p.hold_steps = 0;
    p.steps = 24;
    return p;
  }
  throw ConfigError("unknown preset: " + name);
}

}  // namespace

ScatteringProtocol protocol_preset(const std::string& name) {
  ScatteringProtocol p = base_preset(name);
  p.validate();
  return p;
}

std::vector<std::string> preset_names() {
  return {"meson_meson_L12_g3", "meson_antimeson_L11_g3",
          "meson_antimeson_L11_g05", "noise_comparison_L7"};
}

ScatteringProtocol companion(const ScatteringProtocol& base, CollisionKind kind) {
  ScatteringProtocol p = base;
  p.kind = kind;
  p.name = base.name + "." + to_string(kind);
  switch (kind) {
    case CollisionKind::Vacuum:
      p.excited_links = {};
      break;
    case CollisionKind::FreeLeft:
      p.excited_links = {base.excited_links.front()};
      break;
    case CollisionKind::FreeRight:
      p.excited_links = {base.excited_links.back()};
      break;
    default:
      p.excited_links = base.excited_links;
      p.name = base.name;
      break;
  }
  p.validate();
  return p;
}

BasisConfig initial_link_config(const ScatteringProtocol& protocol) {
  BasisConfig links(static_cast<size_t>(protocol.L - 1),
                    SpinOneEncoding::level_of_m(0));
  for (int l : protocol.excited_links)
    links[static_cast<size_t>(l)] = SpinOneEncoding::level_of_m(1);
  return links;
}

PureState prepare_initial(const ScatteringProtocol& protocol) {
  protocol.validate();
  const BasisConfig links = initial_link_config(protocol);
  const LatticeModel model = protocol.model();
  const QuditRegister reg = make_register(model);
  BasisConfig cfg;
  if (model.formulation == Formulation::Matterful) {
    const std::vector<int> occ = occupations_from_links(links);
    for (int j = 0; j < model.L; ++j) {
      cfg.push_back(MatterEncoding::level_of_occupation(occ[static_cast<size_t>(j)]));
      if (j < model.num_links()) cfg.push_back(links[static_cast<size_t>(j)]);
    }
  } else {
    cfg = links;
  }
  return PureState::basis_state(reg, cfg);
}

Vector initial_physical_vector(const ScatteringProtocol& protocol,
                               const PhysicalSubspace& subspace) {
  const BasisConfig links = initial_link_config(protocol);
  for (std::size_t k = 0; k < subspace.link_configs.size(); ++k) {
    if (subspace.link_configs[k] == links) {
      Vector v = Vector::Zero(static_cast<Eigen::Index>(subspace.dim()));
      v(static_cast<Eigen::Index>(k)) = 1.0;
      return v;
    }
  }
  throw std::invalid_argument("initial state not in the physical subspace");
}

namespace {

std::vector<double> charges_from_observables(const StepObservables& obs,
                                             const LatticeModel& model) {
  if (model.formulation == Formulation::Matterful) {
    std::vector<double> rho(obs.site_occ.size());
    for (std::size_t j = 0; j < obs.site_occ.size(); ++j)
      rho[j] = ((j % 2 == 0) ? 1.0 : -1.0) * obs.site_occ[j];
    return rho;
  }
  return reconstruct_charge(obs.link_flux, model);
}

void append_row(ObservableRecord& record, const StepObservables& obs,
                const LatticeModel& model, double t) {
  record.times.push_back(t);
  record.charge.push_back(charges_from_observables(obs, model));
  record.flux_orig.push_back(fluxes_to_original_frame(obs.link_flux));
}

}  // namespace

ObservableRecord run_experiment(const ScatteringProtocol& protocol, Engine engine,
                                const RunOptions& options) {
  protocol.validate();
  const LatticeModel model = protocol.model();

  ObservableRecord record;
  record.protocol_name = protocol.name;
  record.kind = to_string(protocol.kind);
  record.L = protocol.L;
  record.T = protocol.T;
  record.seed = options.seed;

  if (engine == Engine::Exact) {
    record.engine = "exact";
    const PhysicalSubspace subspace = enumerate_physical(model);
    const HoldSchedule schedule{protocol.wall_removed_terms,
                                protocol.hold_steps * protocol.T};
    const ExactEvolver evolver(model, subspace, schedule);
    const Vector psi0 = initial_physical_vector(protocol, subspace);
    for (int k = 0; k <= protocol.steps; ++k) {
      const double t = k * protocol.T;
      const Vector psi = evolver.state_at(psi0, t);
      StepObservables obs;
      obs.link_flux = physical_link_fluxes(psi, subspace, model.num_links());
      if (model.formulation == Formulation::Matterful) {
        obs.site_occ.assign(static_cast<size_t>(model.L), 0.0);
        for (std::size_t c = 0; c < subspace.dim(); ++c) {
          const double w = std::norm(psi(static_cast<Eigen::Index>(c)));
          const std::vector<int> occ =
              occupations_from_links(subspace.link_configs[c]);
          for (int j = 0; j < model.L; ++j)
            obs.site_occ[static_cast<size_t>(j)] += w * occ[static_cast<size_t>(j)];
        }
      }
      append_row(record, obs, model, t);
    }
    return record;
  }

  const Circuit circuit = assemble_trotter(model, protocol.T, protocol.steps,
                                           protocol.walls(), options.use_rzz);
  if (engine == Engine::Noiseless) {
    record.engine = "noiseless";
    PureState state = prepare_initial(protocol);
    append_row(record, measure_state(state), model, 0.0);
    for (int step = 0; step < circuit.steps; ++step) {
      const auto [begin, end] = circuit.step_ranges[static_cast<size_t>(step)];
      for (std::size_t gi = begin; gi < end; ++gi)
        apply_gate(state, circuit.gates[gi]);
      append_row(record, measure_state(state), model, (step + 1) * protocol.T);
    }
    return record;
  }

  // Noisy engines.
  const PhysicalSubspace subspace = enumerate_physical(model);
  if (options.mode == RunOptions::NoisyMode::Kraus) {
    record.engine = "noisy_kraus";
    const Vector psi0 = initial_physical_vector(protocol, subspace);
    Matrix rho0 = psi0 * psi0.adjoint();
    KrausResult kraus =
        run_kraus_physical(circuit, rho0, options.noise, options.num_trajectories,
                           subspace, options.seed, options.jobs);
    record.trajectories = options.num_trajectories;
    for (int k = 0; k <= protocol.steps; ++k)
      append_row(record, kraus.series[static_cast<size_t>(k)], model, k * protocol.T);
    return record;
  }

  record.engine = "noisy_trajectories";
  PureState initial = prepare_initial(protocol);
  TrajectoryBatch batch =
      run_trajectories(circuit, initial, options.noise, options.num_trajectories,
                       options.postselect, subspace, options.seed, options.jobs);
  record.trajectories = options.num_trajectories;
  record.surviving = batch.surviving;
  for (int k = 0; k <= protocol.steps; ++k)
    append_row(record, batch.mean[static_cast<size_t>(k)], model, k * protocol.T);
  return record;
}

namespace {

void check_compatible(const ObservableRecord& a, const ObservableRecord& b) {
  if (a.schema_version != b.schema_version)
    throw std::invalid_argument("records: schema version mismatch");
  if (a.times != b.times) throw std::invalid_argument("records: time grid mismatch");
  if (a.L != b.L) throw std::invalid_argument("records: lattice size mismatch");
}

}  // namespace

ObservableRecord subtract_vacuum(const ObservableRecord& record,
                                 const ObservableRecord& vacuum_record) {
  check_compatible(record, vacuum_record);
  if (vacuum_record.kind != "vacuum")
    throw std::invalid_argument("subtract_vacuum: second record must be a vacuum run");
  ObservableRecord out = record;
  out.kind = record.kind + "-vacuum_subtracted";
  for (std::size_t t = 0; t < out.charge.size(); ++t) {
    for (std::size_t j = 0; j < out.charge[t].size(); ++j)
      out.charge[t][j] -= vacuum_record.charge[t][j];
    for (std::size_t l = 0; l < out.flux_orig[t].size(); ++l)
      out.flux_orig[t][l] -= vacuum_record.flux_orig[t][l];
  }
  return out;
}

ObservableRecord subtract_free(const ObservableRecord& record,
                               const ObservableRecord& left_free,
                               const ObservableRecord& right_free,
                               const ObservableRecord& vacuum_record) {
  check_compatible(record, left_free);
  check_compatible(record, right_free);
  check_compatible(record, vacuum_record);
  if (left_free.kind != "free_left" || right_free.kind != "free_right" ||
      vacuum_record.kind != "vacuum")
    throw std::invalid_argument("subtract_free: record kinds do not match roles");
  ObservableRecord out = record;
  out.kind = record.kind + "-free_subtracted";
  for (std::size_t t = 0; t < out.charge.size(); ++t) {
    for (std::size_t j = 0; j < out.charge[t].size(); ++j)
      out.charge[t][j] -= left_free.charge[t][j] + right_free.charge[t][j] -
                          vacuum_record.charge[t][j];
    for (std::size_t l = 0; l < out.flux_orig[t].size(); ++l)
      out.flux_orig[t][l] -= left_free.flux_orig[t][l] +
                             right_free.flux_orig[t][l] -
                             vacuum_record.flux_orig[t][l];
  }
  return out;
}

SnapshotTable flux_snapshots(const ObservableRecord& record,
                             const std::vector<double>& times) {
  SnapshotTable table;
  for (double t : times) {
    std::size_t best = 0;
    double best_err = std::abs(record.times[0] - t);
    for (std::size_t k = 1; k < record.times.size(); ++k) {
      const double err = std::abs(record.times[k] - t);
      if (err < best_err) {
        best = k;
        best_err = err;
      }
    }
    table.times.push_back(record.times[best]);
    table.flux_rows.push_back(record.flux_orig[best]);
  }
  return table;
}

}  // namespace qlm
