#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qlm/linalg.hpp"
#include "qlm/register.hpp"

namespace qlm {

// A pure state over a QuditRegister basis. Sub-normalized states are legal
// (they appear after projections); normalization is explicit.
class PureState {
 public:
  PureState() = default;
  explicit PureState(QuditRegister reg);

  // Product basis state |config>.
  static PureState basis_state(const QuditRegister& reg,
                               const BasisConfig& config);

  const QuditRegister& reg() const { return reg_; }
  std::size_t dim() const { return amps_.size(); }
  Complex& amp(std::size_t i) { return amps_[i]; }
  const Complex& amp(std::size_t i) const { return amps_[i]; }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double norm2() const;  // squared 2-norm
  void normalize();
  Complex overlap(const PureState& other) const;  // <this|other>

  // Keep only amplitudes at the given sorted basis indices; returns the
  // squared norm that survived.
  double project_onto(const std::vector<std::size_t>& kept_indices);

  // diag(weights) expectation for a digit-local observable: sum over basis
  // states of |amp|^2 * weight(digit of qudit q).
  double diagonal_expectation(int qudit, std::span<const double> weights) const;

 private:
  QuditRegister reg_;
  std::vector<Complex> amps_;
};

// Dense column block: several pure states over the same register, used to
// push a whole operator basis through a circuit at once. Stored row-major
// (all columns of one basis index adjacent) so gates stream through memory.
class ColumnBlock {
 public:
  ColumnBlock(QuditRegister reg, int ncols);

  const QuditRegister& reg() const { return reg_; }
  int ncols() const { return ncols_; }
  std::size_t dim() const { return dim_; }
  Complex& at(std::size_t row, int col) {
    return data_[row * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(col)];
  }
  const Complex& at(std::size_t row, int col) const {
    return data_[row * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(col)];
  }
  Complex* row(std::size_t r) { return data_.data() + r * static_cast<std::size_t>(ncols_); }
  const Complex* row(std::size_t r) const {
    return data_.data() + r * static_cast<std::size_t>(ncols_);
  }

 private:
  QuditRegister reg_;
  std::size_t dim_;
  int ncols_;
  std::vector<Complex> data_;
};

// --- gate-application kernels -------------------------------------------
// All kernels act in place on a raw amplitude array of the given register.

// op (d1*d2*... square matrix, row-major over target digits with targets[0]
// most significant) applied on arbitrary distinct targets.
void apply_dense(Complex* amps, const QuditRegister& reg,
                 const Matrix& op, const std::vector<int>& targets);

// 2x2 matrix on levels {a,b} of one qudit, identity elsewhere.
void apply_two_level(Complex* amps, const QuditRegister& reg, int qudit,
                     int a, int b, const Eigen::Matrix2cd& m);

// Per-level phase factors on one qudit.
void apply_level_phases(Complex* amps, const QuditRegister& reg, int qudit,
                        std::span<const Complex> phases);

// Controlled exchange: swap target levels l1<->l2 when control is at level c.
void apply_controlled_exchange(Complex* amps, const QuditRegister& reg,
                               int control, int c, int target, int l1, int l2);

// Convenience wrappers on PureState / ColumnBlock.
void apply_dense(PureState& s, const Matrix& op, const std::vector<int>& targets);
void apply_dense(ColumnBlock& b, const Matrix& op, const std::vector<int>& targets);
void apply_two_level(ColumnBlock& b, int qudit, int a, int bb,
                     const Eigen::Matrix2cd& m);
void apply_level_phases(ColumnBlock& b, int qudit, std::span<const Complex> phases);
void apply_controlled_exchange(ColumnBlock& b, int control, int c, int target,
                               int l1, int l2);

// Test oracle: build the full-space matrix op (x) identity via Kronecker
// products and index bookkeeping. Dense, only for small registers.
Matrix embed_dense(const Matrix& op, const std::vector<int>& targets,
                   const QuditRegister& reg);

}  // namespace qlm
