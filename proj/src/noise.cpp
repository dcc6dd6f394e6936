#include "qlm/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qlm/errors.hpp"

namespace qlm {

double NoiseModel::probability(NoiseClass nc) const {
  if (!enabled) return 0.0;
  if (probability_override >= 0.0)
    return nc == NoiseClass::Virtual ? 0.0 : probability_override;
  switch (nc) {
    case NoiseClass::OneBody: return 3.0 * std::pow(10.0, -5.0 - alpha);
    case NoiseClass::CX: return 2.0 * std::pow(10.0, -3.0 - alpha);
    case NoiseClass::MS: return 5.0 * std::pow(10.0, -3.0 - alpha);
    case NoiseClass::Virtual: return 0.0;
  }
  return 0.0;
}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream) {
  Rng mix(master ^ (stream * 0xA24BAED4963EE407ull) ^
          (substream * 0x9FB21C651E98DF25ull));
  mix.next();
  return mix.next();
}

Matrix ErrorOp::matrix(int d) const {
  Matrix m = Matrix::Zero(d, d);
  const double w = 2.0 * M_PI / static_cast<double>(d);
  if (dephase) {
    for (int k = 0; k < d; ++k)
      m(k, k) = std::exp(Complex{0.0, w * static_cast<double>(z_power * k)});
    return m;
  }
  for (int k = 0; k < d; ++k)
    m((k + x_shift) % d, k) = std::exp(Complex{0.0, w * static_cast<double>(z_power * k)});
  return m;
}

std::optional<ErrorOp> sample_error(const GateOp& gate, const QuditRegister& reg,
                                    const NoiseModel& noise, Rng& rng) {
  if (gate.noise_class == NoiseClass::Virtual) return std::nullopt;
  const double p = noise.probability(gate.noise_class);
  if (p <= 0.0) return std::nullopt;
  if (rng.uniform() >= p) return std::nullopt;
  ErrorOp err;
  err.qudit = rng.uniform_int(gate.num_targets()) == 0 ? gate.t0 : gate.t1;
  const int d = reg.dim(err.qudit);
  bool depolarize = rng.uniform() < 0.5;
  if (noise.branch == NoiseModel::Branch::DepolarizeOnly) depolarize = true;
  if (noise.branch == NoiseModel::Branch::DephaseOnly) depolarize = false;
  if (depolarize) {
    err.dephase = false;  // uniform generalized displacement X^a Z^b
    err.x_shift = rng.uniform_int(d);
    err.z_power = rng.uniform_int(d);
  } else {
    err.dephase = true;  // uniform generalized phase Z^k
    err.z_power = rng.uniform_int(d);
  }
  return err;
}

void apply_error(Complex* amps, const QuditRegister& reg, const ErrorOp& err) {
  apply_dense(amps, reg, err.matrix(reg.dim(err.qudit)), {err.qudit});
}

void apply_noisy_gate(PureState& state, const GateOp& gate,
                      const NoiseModel& noise, Rng& rng) {
  apply_gate(state, gate);
  if (auto err = sample_error(gate, state.reg(), noise, rng))
    apply_error(state.amplitudes().data(), state.reg(), *err);
}

double leakage_fraction(const PureState& state, const PhysicalSubspace& subspace) {
  double phys = 0.0;
  for (std::size_t idx : subspace.indices) phys += std::norm(state.amp(idx));
  return 1.0 - phys;
}

StepObservables measure_state(const PureState& state) {
  const QuditRegister& reg = state.reg();
  StepObservables obs;
  static const double kFluxWeights3[] = {1.0, 0.0, -1.0};
  static const double kFluxWeights4[] = {1.0, 0.0, -1.0, 0.0};
  static const double kOccWeights[] = {1.0, 0.0};
  for (int q = 0; q < reg.size(); ++q) {
    if (reg.role(q).kind == QuditRole::Link) {
      std::span<const double> w =
          reg.dim(q) == 3 ? std::span<const double>(kFluxWeights3, 3)
                          : std::span<const double>(kFluxWeights4, 4);
      obs.link_flux.push_back(state.diagonal_expectation(q, w));
    } else {
      obs.site_occ.push_back(
          state.diagonal_expectation(q, std::span<const double>(kOccWeights, 2)));
    }
  }
  return obs;
}

StepObservables measure_rho(const Matrix& rho, const PhysicalSubspace& subspace) {
  StepObservables obs;
  const std::size_t n = subspace.link_configs.size();
  if (n == 0) return obs;
  const std::size_t nlinks = subspace.link_configs[0].size();
  obs.link_flux.assign(nlinks, 0.0);
  const std::size_t nsites = nlinks + 1;
  obs.site_occ.assign(nsites, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    const BasisConfig& links = subspace.link_configs[k];
    for (std::size_t l = 0; l < nlinks; ++l)
      obs.link_flux[l] += w * SpinOneEncoding::m_of_level(links[l]);
    const std::vector<int> occ = occupations_from_links(links);
    for (std::size_t s = 0; s < nsites; ++s) obs.site_occ[s] += w * occ[s];
  }
  return obs;
}

namespace {

TrajectoryResult run_single_trajectory(const Circuit& circuit,
                                       const PureState& initial,
                                       const NoiseModel& noise, bool postselect,
                                       const PhysicalSubspace& subspace,
                                       std::uint64_t seed) {
  TrajectoryResult result;
  result.seed = seed;
  Rng rng(seed);
  PureState state = initial;
  result.series.push_back(measure_state(state));
  for (int step = 0; step < circuit.steps; ++step) {
    const auto [begin, end] = circuit.step_ranges[static_cast<size_t>(step)];
    for (std::size_t gi = begin; gi < end; ++gi)
      apply_noisy_gate(state, circuit.gates[gi], noise, rng);
    if (postselect) {
      const double weight = state.project_onto(subspace.indices);
      result.survival.push_back(weight);
      if (weight < kNormGuard) {
        result.discarded = true;
        result.discard_step = step;
        return result;
      }
      const double scale = 1.0 / std::sqrt(weight);
      for (Complex& a : state.amplitudes()) a *= scale;
    }
    result.series.push_back(measure_state(state));
  }
  return result;
}

}  // namespace

TrajectoryBatch run_trajectories(const Circuit& circuit, const PureState& initial,
                                 const NoiseModel& noise, int num_trajectories,
                                 bool postselect, const PhysicalSubspace& subspace,
                                 std::uint64_t master_seed, int jobs) {
  if (num_trajectories < 1)
    throw std::invalid_argument("run_trajectories: need at least one trajectory");
  TrajectoryBatch batch;
  batch.trajectories.resize(static_cast<size_t>(num_trajectories));

  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t)
      batch.trajectories[static_cast<size_t>(t)] = run_single_trajectory(
          circuit, initial, noise, postselect, subspace,
          derive_seed(master_seed, static_cast<std::uint64_t>(t)));
  };
  jobs = std::max(1, std::min(jobs, num_trajectories));
  if (jobs == 1) {
    worker(0, num_trajectories);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (num_trajectories + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const int begin = w * chunk;
      const int end = std::min(num_trajectories, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  // Discard-and-renormalize averaging: only surviving trajectories count.
  const std::size_t ntimes = static_cast<std::size_t>(circuit.steps) + 1;
  for (const TrajectoryResult& tr : batch.trajectories)
    if (!tr.discarded) ++batch.surviving;
  if (batch.surviving == 0)
    throw AllTrajectoriesDiscarded("all trajectories hit the norm guard");
  batch.mean.resize(ntimes);
  for (const TrajectoryResult& tr : batch.trajectories) {
    if (tr.discarded) continue;
    for (std::size_t t = 0; t < ntimes; ++t) {
      StepObservables& acc = batch.mean[t];
      const StepObservables& obs = tr.series[t];
      if (acc.link_flux.empty()) acc.link_flux.assign(obs.link_flux.size(), 0.0);
      if (acc.site_occ.empty()) acc.site_occ.assign(obs.site_occ.size(), 0.0);
      for (std::size_t i = 0; i < obs.link_flux.size(); ++i)
        acc.link_flux[i] += obs.link_flux[i];
      for (std::size_t i = 0; i < obs.site_occ.size(); ++i)
        acc.site_occ[i] += obs.site_occ[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(batch.surviving);
  for (StepObservables& obs : batch.mean) {
    for (double& v : obs.link_flux) v *= inv;
    for (double& v : obs.site_occ) v *= inv;
  }
  return batch;
}

KrausResult run_kraus_physical(const Circuit& circuit, const Matrix& rho0,
                               const NoiseModel& noise, int num_samples,
                               const PhysicalSubspace& subspace,
                               std::uint64_t master_seed, int jobs) {
  const std::size_t n = subspace.dim();
  if (n > 2000) throw BudgetError("run_kraus_physical: subspace too large");
  if (num_samples < 1)
    throw std::invalid_argument("run_kraus_physical: need at least one sample");
  if (rho0.rows() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("run_kraus_physical: rho dimension mismatch");

  KrausResult result;
  Matrix rho = rho0;
  result.rho_series.push_back(rho);
  result.series.push_back(measure_rho(rho, subspace));

  std::vector<Matrix> maps(static_cast<size_t>(num_samples));
  for (int step = 0; step < circuit.steps; ++step) {
    const auto [begin, end] = circuit.step_ranges[static_cast<size_t>(step)];
    auto build_map = [&](int c) {
      // One noisy step unitary, pushed through the physical basis columns.
      Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(step),
                          static_cast<std::uint64_t>(c)));
      ColumnBlock block(circuit.reg, static_cast<int>(n));
      for (std::size_t k = 0; k < n; ++k)
        block.at(subspace.indices[k], static_cast<int>(k)) = Complex{1.0, 0.0};
      for (std::size_t gi = begin; gi < end; ++gi) {
        const GateOp& gate = circuit.gates[gi];
        apply_gate(block, gate);
        if (auto err = sample_error(gate, circuit.reg, noise, rng))
          apply_dense(block, err->matrix(circuit.reg.dim(err->qudit)), {err->qudit});
      }
      Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r)
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
              block.at(subspace.indices[r], static_cast<int>(k));
      maps[static_cast<size_t>(c)] = std::move(m);
    };

    const int threads = std::max(1, std::min(jobs, num_samples));
    if (threads == 1) {
      for (int c = 0; c < num_samples; ++c) build_map(c);
    } else {
      std::vector<std::thread> pool;
      const int chunk = (num_samples + threads - 1) / threads;
      for (int w = 0; w < threads; ++w) {
        const int begin_c = w * chunk;
        const int end_c = std::min(num_samples, begin_c + chunk);
        if (begin_c < end_c)
          pool.emplace_back([&, begin_c, end_c] {
            for (int c = begin_c; c < end_c; ++c) build_map(c);
          });
      }
      for (std::thread& th : pool) th.join();
    }

    Matrix next = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (int c = 0; c < num_samples; ++c)
      next += maps[static_cast<size_t>(c)] * rho * maps[static_cast<size_t>(c)].adjoint();
    next /= static_cast<double>(num_samples);
    const double trace = next.trace().real();
    result.step_trace.push_back(trace);
    if (trace < kNormGuard)
      throw AllTrajectoriesDiscarded("kraus evolution: ensemble trace collapsed at step " +
                                     std::to_string(step));
    rho = next / trace;
    result.rho_series.push_back(rho);
    result.series.push_back(measure_rho(rho, subspace));
  }
  return result;
}

}  // namespace qlm
