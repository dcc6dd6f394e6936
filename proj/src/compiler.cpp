#include "qlm/compiler.hpp"

#include <cmath>
#include <stdexcept>

namespace qlm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<GateOp> compile_crx(int control, int target, int c, int a, int b,
                                double angle) {
  return {
      GateOp::hadamard(target, a, b),
      GateOp::rz(target, a, b, angle / 2.0),
      GateOp::cx(control, c, target, a, b),
      GateOp::rz(target, a, b, -angle / 2.0),
      GateOp::cx(control, c, target, a, b),
      GateOp::hadamard(target, a, b),
  };
}

std::vector<GateOp> compile_umin_link(int j, const LatticeModel& model, double tau) {
  if (model.formulation != Formulation::IntegratedOut)
    throw std::invalid_argument("compile_umin_link: integrated-out only");
  if (j < 1 || j > model.L - 3)
    throw std::invalid_argument("compile_umin_link: bulk index required");
  const int left = model.link_pos(j - 1);
  const int mid = model.link_pos(j);
  const int right = model.link_pos(j + 1);
  const double angle = 2.0 * std::sqrt(2.0) * model.kappa * tau;

  std::vector<GateOp> gates;
  // |0,0> neighbors -> flag |3> on the right qudit, rotate {1,2}, unflag.
  gates.push_back(GateOp::cx(left, 0, right, 0, 3));
  for (GateOp g : compile_crx(right, mid, 3, 1, 2, angle)) gates.push_back(g);
  gates.push_back(GateOp::cx(left, 0, right, 0, 3));
  // |1,1> neighbors -> flag |3>, rotate {0,1}, unflag.
  gates.push_back(GateOp::cx(left, 1, right, 1, 3));
  for (GateOp g : compile_crx(right, mid, 3, 0, 1, angle)) gates.push_back(g);
  gates.push_back(GateOp::cx(left, 1, right, 1, 3));
  return gates;
}

std::vector<GateOp> compile_umin_edge(EdgeSide side, const LatticeModel& model,
                                      double tau) {
  if (model.formulation != Formulation::IntegratedOut)
    throw std::invalid_argument("compile_umin_edge: integrated-out only");
  const double angle = 2.0 * std::sqrt(2.0) * model.kappa * tau;
  if (model.L == 2) {
    // Both projector conditions are satisfied by the frozen boundary links.
    return {GateOp::rx(model.link_pos(0), 0, 1, angle)};
  }
  if (side == EdgeSide::Left)
    return compile_crx(model.link_pos(1), model.link_pos(0), 1, 0, 1, angle);
  const int last = model.L - 2;
  return compile_crx(model.link_pos(last - 1), model.link_pos(last), 1, 0, 1, angle);
}

std::vector<GateOp> compile_usg(const LatticeModel& model, double tau) {
  std::vector<GateOp> gates;
  auto push_vrz = [&](int q, int level, double phi) {
    if (phi != 0.0) gates.push_back(GateOp::vrz(q, level, phi));
  };
  if (model.formulation == Formulation::Matterful) {
    for (int j = 0; j < model.L; ++j) {
      push_vrz(model.matter_pos(j), 0, tau * model.mu / 2.0);
      push_vrz(model.matter_pos(j), 1, -tau * model.mu / 2.0);
    }
    for (int l = 0; l < model.num_links(); ++l) {
      push_vrz(model.link_pos(l), 0, tau * model.g * model.g / 2.0);
      push_vrz(model.link_pos(l), 2, tau * model.g * model.g / 2.0);
    }
    return gates;
  }
  for (int l = 0; l < model.num_links(); ++l) {
    for (int level = 0; level <= 2; ++level) {
      const int m = SpinOneEncoding::m_of_level(level);
      push_vrz(model.link_pos(l), level,
               tau * (2.0 * model.mu * m + 0.5 * model.g * model.g * m * m));
    }
  }
  return gates;
}

namespace {

// Basis-change rotation V with V sigma_x V^dag = sigma_axis on levels {0,1}.
// Returns the gates to emit before (V^dag) and after (V) the xx gate.
std::pair<GateOp, GateOp> axis_change(PauliAxis axis, int q) {
  switch (axis) {
    case PauliAxis::Z:
      return {GateOp::ry(q, 0, 1, kPi / 2.0), GateOp::ry(q, 0, 1, -kPi / 2.0)};
    case PauliAxis::Y:
      return {GateOp::rz(q, 0, 1, -kPi / 2.0), GateOp::rz(q, 0, 1, kPi / 2.0)};
    case PauliAxis::X:
      throw std::logic_error("axis_change: x needs no rotation");
  }
  throw std::logic_error("axis_change: bad axis");
}

void emit_ms(std::vector<GateOp>& gates, PauliAxis mu, PauliAxis nu, int qutrit,
             int qubit, double alpha, bool use_rzz) {
  std::vector<GateOp> pre, post;
  if (mu != PauliAxis::X) {
    auto [before, after] = axis_change(mu, qutrit);
    pre.push_back(before);
    post.push_back(after);
  }
  if (nu != PauliAxis::X) {
    auto [before, after] = axis_change(nu, qubit);
    pre.push_back(before);
    post.push_back(after);
  }
  for (const GateOp& g : pre) gates.push_back(g);
  if (use_rzz) {
    // xx -> zz basis change, then the ZZ-phase gate plus the virtual phases
    // that restore the squared-sum generator (global phase dropped).
    gates.push_back(GateOp::ry(qutrit, 0, 1, -kPi / 2.0));
    gates.push_back(GateOp::ry(qubit, 0, 1, -kPi / 2.0));
    gates.push_back(GateOp::rzz(qutrit, qubit, alpha));
    gates.push_back(GateOp::vrz(qutrit, 0, -alpha / 4.0));
    gates.push_back(GateOp::vrz(qutrit, 1, -alpha / 4.0));
    gates.push_back(GateOp::ry(qutrit, 0, 1, kPi / 2.0));
    gates.push_back(GateOp::ry(qubit, 0, 1, kPi / 2.0));
  } else {
    gates.push_back(GateOp::ms(PauliAxis::X, PauliAxis::X, qutrit, qubit, alpha));
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) gates.push_back(*it);
}

// Twelve-gate entangling block; composed with its permutation-conjugated
// copy it realizes the full three-body coupling term. The sandwich list is
// a right-to-left operator product, so it is emitted in reversed order;
// the block equivalence test pins this reading.
void emit_ms_block(std::vector<GateOp>& gates, int qubit_l, int qutrit,
                   int qubit_r, double theta, bool use_rzz) {
  using A = PauliAxis;
  struct Entry {
    A mu, nu;
    int qubit;
    double alpha;
  };
  const Entry product_order[] = {
      {A::Z, A::Y, qubit_l, -kPi / 2.0}, {A::X, A::X, qubit_r, theta},
      {A::Z, A::Y, qubit_l, kPi / 2.0},  {A::Y, A::Y, qubit_l, -kPi / 2.0},
      {A::Z, A::Y, qubit_r, theta},      {A::Y, A::Y, qubit_l, kPi / 2.0},
      {A::Y, A::X, qubit_l, -kPi / 2.0}, {A::Z, A::X, qubit_r, -theta},
      {A::Y, A::X, qubit_l, kPi / 2.0},  {A::X, A::X, qubit_l, -kPi / 2.0},
      {A::Z, A::Y, qubit_r, -theta},     {A::X, A::X, qubit_l, kPi / 2.0},
  };
  for (int k = 11; k >= 0; --k) {
    const Entry& e = product_order[k];
    emit_ms(gates, e.mu, e.nu, qutrit, e.qubit, e.alpha, use_rzz);
  }
}

}  // namespace

std::vector<GateOp> compile_umin_matterful(int j, const LatticeModel& model,
                                           double tau, bool use_rzz) {
  if (model.formulation != Formulation::Matterful)
    throw std::invalid_argument("compile_umin_matterful: matterful only");
  if (j < 0 || j > model.L - 2)
    throw std::invalid_argument("compile_umin_matterful: bad term index");
  const int qubit_l = model.matter_pos(j);
  const int qutrit = model.link_pos(j);
  const int qubit_r = model.matter_pos(j + 1);
  const double theta = tau * model.kappa / std::sqrt(2.0);

  std::vector<GateOp> gates;
  // Inverse permutation first, so the two blocks act on the {0,1} and {1,2}
  // exchange channels respectively.
  gates.push_back(GateOp::ry(qutrit, 0, 1, -kPi));
  gates.push_back(GateOp::ry(qutrit, 1, 2, -kPi));
  emit_ms_block(gates, qubit_l, qutrit, qubit_r, theta, use_rzz);
  gates.push_back(GateOp::ry(qutrit, 1, 2, kPi));
  gates.push_back(GateOp::ry(qutrit, 0, 1, kPi));
  emit_ms_block(gates, qubit_l, qutrit, qubit_r, theta, use_rzz);
  return gates;
}

namespace {

void emit_min_term(std::vector<GateOp>& gates, int j, const LatticeModel& model,
                   double tau, bool use_rzz) {
  if (model.formulation == Formulation::Matterful) {
    for (GateOp g : compile_umin_matterful(j, model, tau, use_rzz)) gates.push_back(g);
  } else if (model.L == 2 || j == 0) {
    for (GateOp g : compile_umin_edge(EdgeSide::Left, model, tau)) gates.push_back(g);
  } else if (j == model.L - 2) {
    for (GateOp g : compile_umin_edge(EdgeSide::Right, model, tau)) gates.push_back(g);
  } else {
    for (GateOp g : compile_umin_link(j, model, tau)) gates.push_back(g);
  }
}

}  // namespace

Circuit assemble_trotter(const LatticeModel& model, double T, int N,
                         const WallSchedule& walls, bool use_rzz) {
  model.validate();
  if (T <= 0.0) throw std::invalid_argument("assemble_trotter: T must be > 0");
  if (N < 0) throw std::invalid_argument("assemble_trotter: N must be >= 0");

  Circuit circuit;
  circuit.reg = make_register(model);
  circuit.steps = N;
  circuit.step_size = T;
  circuit.wall_off_step = walls.hold_steps;

  if (N == 0) return circuit;

  auto removed = [&](int step, int j) {
    if (step >= walls.hold_steps) return false;
    for (int r : walls.removed_min_terms)
      if (r == j) return true;
    return false;
  };
  auto emit_min_layers = [&](int step) {
    for (int j = 0; j <= model.L - 2; ++j)
      if (!removed(step, j)) emit_min_term(circuit.gates, j, model, T / 2.0, use_rzz);
    for (int j = model.L - 2; j >= 0; --j)
      if (!removed(step, j)) emit_min_term(circuit.gates, j, model, T / 2.0, use_rzz);
  };
  auto emit_sg = [&](double tau) {
    for (GateOp g : compile_usg(model, tau)) circuit.gates.push_back(g);
  };

  for (int step = 0; step < N; ++step) {
    const std::size_t begin = circuit.gates.size();
    if (step == 0) emit_sg(T / 2.0);
    emit_min_layers(step);
    emit_sg(step == N - 1 ? T / 2.0 : T);
    circuit.step_ranges.emplace_back(begin, circuit.gates.size());
  }
  return circuit;
}

GateCounts gate_count(const std::vector<GateOp>& gates) {
  GateCounts counts;
  for (const GateOp& g : gates) {
    switch (g.noise_class) {
      case NoiseClass::MS: ++counts.ms; break;
      case NoiseClass::CX: ++counts.cx; break;
      case NoiseClass::OneBody: ++counts.one_body; break;
      case NoiseClass::Virtual: break;
    }
  }
  return counts;
}

GateCounts gate_count(const Circuit& circuit) { return gate_count(circuit.gates); }

GateCounts count_min_layer(const LatticeModel& model) {
  std::vector<GateOp> gates;
  for (int j = 0; j <= model.L - 2; ++j) emit_min_term(gates, j, model, 1.0, false);
  return gate_count(gates);
}

}  // namespace qlm
