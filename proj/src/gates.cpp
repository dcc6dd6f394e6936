#include "qlm/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qlm {

GateOp GateOp::rx(int q, int a, int b, double theta) {
  GateOp g{GateKind::RX, q};
  g.theta = theta;
  g.a = a;
  g.b = b;
  return g;
}

GateOp GateOp::ry(int q, int a, int b, double theta) {
  GateOp g = rx(q, a, b, theta);
  g.kind = GateKind::RY;
  return g;
}

GateOp GateOp::rz(int q, int a, int b, double theta) {
  GateOp g = rx(q, a, b, theta);
  g.kind = GateKind::RZ;
  return g;
}

GateOp GateOp::hadamard(int q, int a, int b) {
  GateOp g{GateKind::H, q};
  g.a = a;
  g.b = b;
  return g;
}

GateOp GateOp::vrz(int q, int a, double phi) {
  GateOp g{GateKind::VRZ, q};
  g.a = a;
  g.b = -1;
  g.phi = phi;
  g.noise_class = NoiseClass::Virtual;
  return g;
}

GateOp GateOp::cx(int control, int c, int target, int l1, int l2) {
  GateOp g{GateKind::CX, control, target};
  g.c = c;
  g.l1 = l1;
  g.l2 = l2;
  g.noise_class = NoiseClass::CX;
  return g;
}

GateOp GateOp::ms(PauliAxis mu, PauliAxis nu, int qutrit, int qubit, double alpha) {
  GateOp g{GateKind::MS, qutrit, qubit};
  g.theta = alpha;
  g.axis0 = mu;
  g.axis1 = nu;
  g.noise_class = NoiseClass::MS;
  return g;
}

GateOp GateOp::rzz(int qutrit, int qubit, double alpha) {
  GateOp g{GateKind::RZZ, qutrit, qubit};
  g.theta = alpha;
  g.noise_class = NoiseClass::MS;
  return g;
}

GateOp GateOp::crot(int control, int c, int target, int i, int j, double theta,
                    double phi) {
  GateOp g{GateKind::CROT, control, target};
  g.c = c;
  g.a = i;
  g.b = j;
  g.theta = theta;
  g.phi = phi;
  g.noise_class = NoiseClass::CX;
  return g;
}

GateOp GateOp::perm_plus(int q) {
  GateOp g{GateKind::PERM_PLUS, q};
  return g;
}

Matrix subspace_pauli(PauliAxis axis, int d, int a, int b) {
  Matrix m = Matrix::Zero(d, d);
  const Complex i{0.0, 1.0};
  switch (axis) {
    case PauliAxis::X:
      m(a, b) = 1.0;
      m(b, a) = 1.0;
      break;
    case PauliAxis::Y:
      m(a, b) = -i;
      m(b, a) = i;
      break;
    case PauliAxis::Z:
      m(a, a) = 1.0;
      m(b, b) = -1.0;
      break;
  }
  return m;
}

namespace {

void check_levels(const GateOp& g, const QuditRegister& reg) {
  auto in_range = [&](int level, int q) {
    return level >= 0 && level < reg.dim(q);
  };
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
      if (!in_range(g.a, g.t0) || !in_range(g.b, g.t0) || g.a == g.b)
        throw std::invalid_argument("gate: invalid subspace labels");
      break;
    case GateKind::VRZ:
      if (!in_range(g.a, g.t0)) throw std::invalid_argument("VRZ: invalid level");
      break;
    case GateKind::CX:
      if (!in_range(g.c, g.t0) || !in_range(g.l1, g.t1) || !in_range(g.l2, g.t1) ||
          g.l1 == g.l2)
        throw std::invalid_argument("CX: invalid levels");
      break;
    case GateKind::MS:
    case GateKind::RZZ:
      if (reg.dim(g.t0) < 2 || reg.dim(g.t1) != 2)
        throw std::invalid_argument("MS/RZZ: expects qutrit (x) qubit targets");
      break;
    case GateKind::CROT:
      if (!in_range(g.c, g.t0) || !in_range(g.a, g.t1) || !in_range(g.b, g.t1) ||
          g.a == g.b)
        throw std::invalid_argument("CROT: invalid levels");
      break;
    case GateKind::PERM_PLUS:
      if (reg.dim(g.t0) < 3)
        throw std::invalid_argument("PERM_PLUS: needs at least 3 levels");
      break;
  }
}

Eigen::Matrix2cd two_level_unitary(const GateOp& g) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  const double c = std::cos(g.theta / 2.0);
  const double s = std::sin(g.theta / 2.0);
  switch (g.kind) {
    case GateKind::RX:
      m << c, -i * s, -i * s, c;
      break;
    case GateKind::RY:
      m << c, -s, s, c;
      break;
    case GateKind::RZ:
      m << std::exp(-i * (g.theta / 2.0)), 0.0, 0.0, std::exp(i * (g.theta / 2.0));
      break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      break;
    }
    default:
      throw std::logic_error("two_level_unitary: not a two-level gate");
  }
  return m;
}

// R_{ab}(theta, phi) = exp(-i theta/2 (cos phi sigma_x + sin phi sigma_y)).
Eigen::Matrix2cd rot_theta_phi(double theta, double phi) {
  const Complex i{0.0, 1.0};
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd m;
  m << c, -i * s * std::exp(-i * phi), -i * s * std::exp(i * phi), c;
  return m;
}

}  // namespace

Matrix matrix_of(const GateOp& g, const QuditRegister& reg) {
  check_levels(g, reg);
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H: {
      const int d = reg.dim(g.t0);
      Matrix m = Matrix::Identity(d, d);
      Eigen::Matrix2cd u = two_level_unitary(g);
      m(g.a, g.a) = u(0, 0);
      m(g.a, g.b) = u(0, 1);
      m(g.b, g.a) = u(1, 0);
      m(g.b, g.b) = u(1, 1);
      return m;
    }
    case GateKind::VRZ: {
      const int d = reg.dim(g.t0);
      Matrix m = Matrix::Identity(d, d);
      m(g.a, g.a) = std::exp(-i * g.phi);
      return m;
    }
    case GateKind::CX: {
      const int dc = reg.dim(g.t0), dt = reg.dim(g.t1);
      Matrix m = Matrix::Identity(dc * dt, dc * dt);
      const int r1 = g.c * dt + g.l1;
      const int r2 = g.c * dt + g.l2;
      m(r1, r1) = m(r2, r2) = 0.0;
      m(r1, r2) = m(r2, r1) = 1.0;
      return m;
    }
    case GateKind::MS: {
      const int d0 = reg.dim(g.t0);
      Matrix gen = kron(subspace_pauli(g.axis0, d0, 0, 1), Matrix::Identity(2, 2)) +
                   kron(Matrix::Identity(d0, d0), subspace_pauli(g.axis1, 2, 0, 1));
      Matrix gen2 = gen * gen;
      // exp(+i alpha/4 gen^2) == exp(-i t H) with H = gen^2, t = -alpha/4
      return expm_hermitian(gen2, -g.theta / 4.0);
    }
    case GateKind::RZZ: {
      const int d0 = reg.dim(g.t0);
      Matrix gen = kron(subspace_pauli(PauliAxis::Z, d0, 0, 1),
                        subspace_pauli(PauliAxis::Z, 2, 0, 1));
      return expm_hermitian(gen, -g.theta / 2.0);
    }
    case GateKind::CROT: {
      const int dc = reg.dim(g.t0), dt = reg.dim(g.t1);
      Matrix m = Matrix::Identity(dc * dt, dc * dt);
      Eigen::Matrix2cd u = rot_theta_phi(g.theta, g.phi);
      const int ra = g.c * dt + g.a;
      const int rb = g.c * dt + g.b;
      m(ra, ra) = u(0, 0);
      m(ra, rb) = u(0, 1);
      m(rb, ra) = u(1, 0);
      m(rb, rb) = u(1, 1);
      return m;
    }
    case GateKind::PERM_PLUS: {
      const int d = reg.dim(g.t0);
      QuditRegister one({d}, {QuditRole{}});
      Matrix ry01 = matrix_of(GateOp::ry(0, 0, 1, M_PI), one);
      Matrix ry12 = matrix_of(GateOp::ry(0, 1, 2, M_PI), one);
      return ry01 * ry12;
    }
  }
  throw std::logic_error("matrix_of: unknown gate kind");
}

bool is_unitary(const GateOp& g, const QuditRegister& reg, double tol) {
  return is_unitary_matrix(matrix_of(g, reg), tol);
}

void apply_gate(Complex* amps, const QuditRegister& reg, const GateOp& g) {
  check_levels(g, reg);
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
      apply_two_level(amps, reg, g.t0, g.a, g.b, two_level_unitary(g));
      return;
    case GateKind::VRZ: {
      std::vector<Complex> phases(static_cast<size_t>(reg.dim(g.t0)), Complex{1.0, 0.0});
      phases[static_cast<size_t>(g.a)] = std::exp(Complex{0.0, -g.phi});
      apply_level_phases(amps, reg, g.t0, phases);
      return;
    }
    case GateKind::CX:
      apply_controlled_exchange(amps, reg, g.t0, g.c, g.t1, g.l1, g.l2);
      return;
    default: {
      std::vector<int> targets = {g.t0};
      if (g.t1 >= 0) targets.push_back(g.t1);
      apply_dense(amps, reg, matrix_of(g, reg), targets);
      return;
    }
  }
}

void apply_gate(PureState& s, const GateOp& g) {
  apply_gate(s.amplitudes().data(), s.reg(), g);
}

void apply_gate(ColumnBlock& b, const GateOp& g) {
  check_levels(g, b.reg());
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
      apply_two_level(b, g.t0, g.a, g.b, two_level_unitary(g));
      return;
    case GateKind::VRZ: {
      std::vector<Complex> phases(static_cast<size_t>(b.reg().dim(g.t0)), Complex{1.0, 0.0});
      phases[static_cast<size_t>(g.a)] = std::exp(Complex{0.0, -g.phi});
      apply_level_phases(b, g.t0, phases);
      return;
    }
    case GateKind::CX:
      apply_controlled_exchange(b, g.t0, g.c, g.t1, g.l1, g.l2);
      return;
    default: {
      std::vector<int> targets = {g.t0};
      if (g.t1 >= 0) targets.push_back(g.t1);
      apply_dense(b, matrix_of(g, b.reg()), targets);
      return;
    }
  }
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::VRZ: return "VRZ";
    case GateKind::CX: return "CX";
    case GateKind::MS: return "MS";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CROT: return "CROT";
    case GateKind::PERM_PLUS: return "PERMP";
  }
  return "?";
}

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    case PauliAxis::Z: return "z";
  }
  return "?";
}

std::string to_string(NoiseClass nc) {
  switch (nc) {
    case NoiseClass::OneBody: return "one_body";
    case NoiseClass::CX: return "CX";
    case NoiseClass::MS: return "MS";
    case NoiseClass::Virtual: return "virtual";
  }
  return "?";
}

}  // namespace qlm
