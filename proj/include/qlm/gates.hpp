#pragma once

#include <string>
#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/register.hpp"
#include "qlm/state.hpp"

namespace qlm {

enum class GateKind {
  RX,        // exp(-i theta/2 sigma_x) on levels {a,b} of one qudit
  RY,
  RZ,
  H,         // Hadamard on levels {a,b}: (sigma_x + sigma_z)/sqrt(2)
  VRZ,       // exp(-i phi |a><a|), virtual (noiseless)
  CX,        // swap target levels l1<->l2 when control is at level c
  MS,        // exp(i alpha/4 (sigma_{axis0}^{01} + sigma_{axis1})^2), qutrit (x) qubit
  RZZ,       // exp(i alpha/2 sigma_z^{01} (x) sigma_z), qutrit (x) qubit
  CROT,      // |c><c| (x) R_{ab}(theta,phi) + sum_{k!=c} |k><k| (x) 1
  PERM_PLUS  // RY^{01}(pi) * RY^{12}(pi): cycles |0>->|1>->|2>->|0>
};

enum class NoiseClass { OneBody, CX, MS, Virtual };

enum class PauliAxis { X, Y, Z };

struct GateOp {
  GateKind kind;
  int t0 = 0;       // first target (control for CX/CROT; qutrit for MS/RZZ)
  int t1 = -1;      // second target, -1 for one-qudit gates
  double theta = 0.0;
  double phi = 0.0;
  int a = 0, b = 1;           // two-level subspace labels
  int c = -1;                 // control level
  int l1 = -1, l2 = -1;       // exchange pair
  PauliAxis axis0 = PauliAxis::X;  // MS: qutrit {0,1}-subspace axis
  PauliAxis axis1 = PauliAxis::X;  // MS: qubit axis
  NoiseClass noise_class = NoiseClass::OneBody;

  int num_targets() const { return t1 < 0 ? 1 : 2; }
  bool operator==(const GateOp&) const = default;

  static GateOp rx(int q, int a, int b, double theta);
  static GateOp ry(int q, int a, int b, double theta);
  static GateOp rz(int q, int a, int b, double theta);
  static GateOp hadamard(int q, int a, int b);
  static GateOp vrz(int q, int a, double phi);
  static GateOp cx(int control, int c, int target, int l1, int l2);
  static GateOp ms(PauliAxis mu, PauliAxis nu, int qutrit, int qubit, double alpha);
  static GateOp rzz(int qutrit, int qubit, double alpha);
  static GateOp crot(int control, int c, int target, int i, int j, double theta,
                     double phi);
  static GateOp perm_plus(int q);
};

// Pauli matrix restricted to levels {a,b} of a d-level system, zero elsewhere.
Matrix subspace_pauli(PauliAxis axis, int d, int a, int b);

// Exact unitary of the gate on its target subspace. One-qudit gates: d x d.
// Two-qudit gates: (d0*d1) x (d0*d1) with t0 the most significant digit.
Matrix matrix_of(const GateOp& g, const QuditRegister& reg);

bool is_unitary(const GateOp& g, const QuditRegister& reg, double tol = 1e-12);

// In-place application with specialized kernels where possible.
void apply_gate(Complex* amps, const QuditRegister& reg, const GateOp& g);
void apply_gate(PureState& s, const GateOp& g);
void apply_gate(ColumnBlock& b, const GateOp& g);

std::string to_string(GateKind kind);
std::string to_string(PauliAxis axis);
std::string to_string(NoiseClass nc);

}  // namespace qlm
