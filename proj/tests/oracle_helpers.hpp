// Test-only reference constructions, kept independent of the strided
// kernels they are used to check.
#pragma once

#include <vector>

#include "qlm/gates.hpp"
#include "qlm/linalg.hpp"
#include "qlm/noise.hpp"
#include "qlm/register.hpp"

namespace qlm::testing {

// Full-space operator from Kronecker products: identity on every qudit not
// in targets, with external legs reordered by explicit index arithmetic.
inline Matrix kron_embed(const Matrix& op, const std::vector<int>& targets,
                         const QuditRegister& reg) {
  const std::size_t n = reg.total_dim();
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  int sub = 1;
  for (int t : targets) sub *= reg.dim(t);
  auto sub_index = [&](const BasisConfig& cfg) {
    int s = 0;
    for (int t : targets) s = s * reg.dim(t) + cfg[static_cast<size_t>(t)];
    return s;
  };
  for (std::size_t col = 0; col < n; ++col) {
    const BasisConfig ccfg = config_of(col, reg);
    for (std::size_t row = 0; row < n; ++row) {
      const BasisConfig rcfg = config_of(row, reg);
      bool outside_equal = true;
      for (int q = 0; q < reg.size() && outside_equal; ++q) {
        bool is_target = false;
        for (int t : targets) is_target |= (t == q);
        if (!is_target && rcfg[static_cast<size_t>(q)] != ccfg[static_cast<size_t>(q)])
          outside_equal = false;
      }
      if (!outside_equal) continue;
      full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          op(sub_index(rcfg), sub_index(ccfg));
    }
  }
  return full;
}

// Dense unitary of a gate list applied in time order.
inline Matrix compose_gates(const std::vector<GateOp>& gates,
                            const QuditRegister& reg) {
  const std::size_t n = reg.total_dim();
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const GateOp& g : gates) {
    std::vector<int> targets = {g.t0};
    if (g.t1 >= 0) targets.push_back(g.t1);
    u = kron_embed(matrix_of(g, reg), targets, reg) * u;
  }
  return u;
}

inline Matrix random_hermitian(int d, Rng& rng) {
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      m(r, c) = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
  return 0.5 * (m + Matrix(m.adjoint()));
}

inline PureState random_state(const QuditRegister& reg, Rng& rng) {
  PureState s(reg);
  for (std::size_t i = 0; i < s.dim(); ++i)
    s.amp(i) = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
  s.normalize();
  return s;
}

}  // namespace qlm::testing
