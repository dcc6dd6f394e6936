#include "qlm/state.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>

namespace qlm {

PureState::PureState(QuditRegister reg)
    : reg_(std::move(reg)), amps_(reg_.total_dim(), Complex{0.0, 0.0}) {}

PureState PureState::basis_state(const QuditRegister& reg,
                                 const BasisConfig& config) {
  PureState s(reg);
  s.amps_[index_of(config, reg)] = Complex{1.0, 0.0};
  return s;
}

double PureState::norm2() const {
  double n = 0.0;
  for (const Complex& a : amps_) n += std::norm(a);
  return n;
}

void PureState::normalize() {
  double n = std::sqrt(norm2());
  if (n == 0.0) throw std::runtime_error("normalize: zero state");
  for (Complex& a : amps_) a /= n;
}

Complex PureState::overlap(const PureState& other) const {
  assert(dim() == other.dim());
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i)
    acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

double PureState::project_onto(const std::vector<std::size_t>& kept_indices) {
  std::vector<Complex> kept(kept_indices.size());
  double w = 0.0;
  for (std::size_t k = 0; k < kept_indices.size(); ++k) {
    kept[k] = amps_[kept_indices[k]];
    w += std::norm(kept[k]);
  }
  std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < kept_indices.size(); ++k)
    amps_[kept_indices[k]] = kept[k];
  return w;
}

double PureState::diagonal_expectation(int qudit,
                                       std::span<const double> weights) const {
  const int d = reg_.dim(qudit);
  assert(static_cast<int>(weights.size()) == d);
  const std::size_t stride = reg_.stride(qudit);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  double acc = 0.0;
  for (std::size_t base = 0; base < amps_.size(); base += block)
    for (int l = 0; l < d; ++l) {
      const std::size_t off = base + static_cast<std::size_t>(l) * stride;
      double w = 0.0;
      for (std::size_t i = 0; i < stride; ++i) w += std::norm(amps_[off + i]);
      acc += w * weights[static_cast<size_t>(l)];
    }
  return acc;
}

ColumnBlock::ColumnBlock(QuditRegister reg, int ncols)
    : reg_(std::move(reg)),
      dim_(reg_.total_dim()),
      ncols_(ncols),
      data_(dim_ * static_cast<std::size_t>(ncols), Complex{0.0, 0.0}) {}

namespace {

// Iterates over all basis indices whose target digits are zero, i.e. the
// offsets of each gathered sub-vector.
struct ComplementIterator {
  std::vector<std::size_t> strides;  // strides of non-target qudits
  std::vector<int> dims;
  std::vector<int> digits;
  std::size_t offset = 0;
  bool done = false;

  ComplementIterator(const QuditRegister& reg, const std::vector<int>& targets) {
    for (int q = 0; q < reg.size(); ++q) {
      if (std::find(targets.begin(), targets.end(), q) == targets.end()) {
        strides.push_back(reg.stride(q));
        dims.push_back(reg.dim(q));
      }
    }
    digits.assign(dims.size(), 0);
  }

  void advance() {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      offset += strides[static_cast<size_t>(k)];
      if (++digits[static_cast<size_t>(k)] < dims[static_cast<size_t>(k)]) return;
      offset -= strides[static_cast<size_t>(k)] *
                static_cast<std::size_t>(dims[static_cast<size_t>(k)]);
      digits[static_cast<size_t>(k)] = 0;
    }
    done = true;
  }
};

}  // namespace

void apply_dense(Complex* amps, const QuditRegister& reg, const Matrix& op,
                 const std::vector<int>& targets) {
  int sub = 1;
  for (int t : targets) sub *= reg.dim(t);
  if (op.rows() != sub || op.cols() != sub)
    throw std::invalid_argument("apply_dense: operator/target dimension mismatch");

  // Offsets of each target-digit combination, targets[0] most significant.
  std::vector<std::size_t> offsets(static_cast<size_t>(sub), 0);
  {
    int rep = sub;
    for (int t : targets) {
      rep /= reg.dim(t);
      int idx = 0;
      for (int outer = 0; outer < sub / (rep * reg.dim(t)); ++outer)
        for (int l = 0; l < reg.dim(t); ++l)
          for (int r = 0; r < rep; ++r)
            offsets[static_cast<size_t>(idx++)] += static_cast<std::size_t>(l) * reg.stride(t);
    }
  }

  std::vector<Complex> in(static_cast<size_t>(sub)), out(static_cast<size_t>(sub));
  for (ComplementIterator it(reg, targets); !it.done; it.advance()) {
    Complex* base = amps + it.offset;
    for (int i = 0; i < sub; ++i) in[static_cast<size_t>(i)] = base[offsets[static_cast<size_t>(i)]];
    for (int i = 0; i < sub; ++i) {
      Complex acc{0.0, 0.0};
      const Complex* row = op.data() + i;  // column-major Eigen
      for (int j = 0; j < sub; ++j) acc += row[static_cast<std::ptrdiff_t>(j) * sub] * in[static_cast<size_t>(j)];
      out[static_cast<size_t>(i)] = acc;
    }
    for (int i = 0; i < sub; ++i) base[offsets[static_cast<size_t>(i)]] = out[static_cast<size_t>(i)];
  }
}

void apply_two_level(Complex* amps, const QuditRegister& reg, int qudit, int a,
                     int b, const Eigen::Matrix2cd& m) {
  const std::size_t stride = reg.stride(qudit);
  const int d = reg.dim(qudit);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const std::size_t total = reg.total_dim();
  const std::size_t off_a = static_cast<std::size_t>(a) * stride;
  const std::size_t off_b = static_cast<std::size_t>(b) * stride;
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex va = amps[i + off_a];
      const Complex vb = amps[i + off_b];
      amps[i + off_a] = m00 * va + m01 * vb;
      amps[i + off_b] = m10 * va + m11 * vb;
    }
}

void apply_level_phases(Complex* amps, const QuditRegister& reg, int qudit,
                        std::span<const Complex> phases) {
  const std::size_t stride = reg.stride(qudit);
  const int d = reg.dim(qudit);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const std::size_t total = reg.total_dim();
  for (std::size_t base = 0; base < total; base += block)
    for (int l = 0; l < d; ++l) {
      const Complex ph = phases[static_cast<size_t>(l)];
      if (ph == Complex{1.0, 0.0}) continue;
      Complex* p = amps + base + static_cast<std::size_t>(l) * stride;
      for (std::size_t i = 0; i < stride; ++i) p[i] *= ph;
    }
}

void apply_controlled_exchange(Complex* amps, const QuditRegister& reg,
                               int control, int c, int target, int l1, int l2) {
  const std::size_t sc = reg.stride(control);
  const std::size_t st = reg.stride(target);
  std::vector<int> targets = {control, target};
  const std::size_t base_c = static_cast<std::size_t>(c) * sc;
  const std::size_t off1 = static_cast<std::size_t>(l1) * st;
  const std::size_t off2 = static_cast<std::size_t>(l2) * st;
  for (ComplementIterator it(reg, targets); !it.done; it.advance()) {
    Complex* p = amps + it.offset + base_c;
    std::swap(p[off1], p[off2]);
  }
}

void apply_dense(PureState& s, const Matrix& op, const std::vector<int>& targets) {
  apply_dense(s.amplitudes().data(), s.reg(), op, targets);
}

void apply_dense(ColumnBlock& b, const Matrix& op, const std::vector<int>& targets) {
  int sub = 1;
  for (int t : targets) sub *= b.reg().dim(t);
  if (op.rows() != sub || op.cols() != sub)
    throw std::invalid_argument("apply_dense: operator/target dimension mismatch");
  std::vector<std::size_t> offsets(static_cast<size_t>(sub), 0);
  {
    int rep = sub;
    for (int t : targets) {
      rep /= b.reg().dim(t);
      int idx = 0;
      for (int outer = 0; outer < sub / (rep * b.reg().dim(t)); ++outer)
        for (int l = 0; l < b.reg().dim(t); ++l)
          for (int r = 0; r < rep; ++r)
            offsets[static_cast<size_t>(idx++)] += static_cast<std::size_t>(l) * b.reg().stride(t);
    }
  }
  const int ncols = b.ncols();
  std::vector<Complex> in(static_cast<size_t>(sub) * static_cast<size_t>(ncols));
  for (ComplementIterator it(b.reg(), targets); !it.done; it.advance()) {
    for (int i = 0; i < sub; ++i) {
      const Complex* src = b.row(it.offset + offsets[static_cast<size_t>(i)]);
      Complex* dst = in.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(ncols);
      for (int c = 0; c < ncols; ++c) dst[c] = src[c];
    }
    for (int i = 0; i < sub; ++i) {
      Complex* out = b.row(it.offset + offsets[static_cast<size_t>(i)]);
      for (int c = 0; c < ncols; ++c) out[c] = Complex{0.0, 0.0};
      for (int j = 0; j < sub; ++j) {
        const Complex m = op(i, j);
        if (m == Complex{0.0, 0.0}) continue;
        const Complex* src = in.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(ncols);
        for (int c = 0; c < ncols; ++c) out[c] += m * src[c];
      }
    }
  }
}

void apply_two_level(ColumnBlock& b, int qudit, int a, int bb,
                     const Eigen::Matrix2cd& m) {
  const QuditRegister& reg = b.reg();
  const std::size_t stride = reg.stride(qudit);
  const int d = reg.dim(qudit);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const std::size_t total = reg.total_dim();
  const std::size_t off_a = static_cast<std::size_t>(a) * stride;
  const std::size_t off_b = static_cast<std::size_t>(bb) * stride;
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  const int ncols = b.ncols();
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t i = base; i < base + stride; ++i) {
      Complex* ra = b.row(i + off_a);
      Complex* rb = b.row(i + off_b);
      for (int c = 0; c < ncols; ++c) {
        const Complex va = ra[c];
        const Complex vb = rb[c];
        ra[c] = m00 * va + m01 * vb;
        rb[c] = m10 * va + m11 * vb;
      }
    }
}

void apply_level_phases(ColumnBlock& b, int qudit, std::span<const Complex> phases) {
  const QuditRegister& reg = b.reg();
  const std::size_t stride = reg.stride(qudit);
  const int d = reg.dim(qudit);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const std::size_t total = reg.total_dim();
  const int ncols = b.ncols();
  for (std::size_t base = 0; base < total; base += block)
    for (int l = 0; l < d; ++l) {
      const Complex ph = phases[static_cast<size_t>(l)];
      if (ph == Complex{1.0, 0.0}) continue;
      for (std::size_t i = 0; i < stride; ++i) {
        Complex* r = b.row(base + static_cast<std::size_t>(l) * stride + i);
        for (int c = 0; c < ncols; ++c) r[c] *= ph;
      }
    }
}

void apply_controlled_exchange(ColumnBlock& b, int control, int c, int target,
                               int l1, int l2) {
  const QuditRegister& reg = b.reg();
  const std::size_t sc = reg.stride(control);
  const std::size_t st = reg.stride(target);
  std::vector<int> targets = {control, target};
  const std::size_t base_c = static_cast<std::size_t>(c) * sc;
  const std::size_t off1 = static_cast<std::size_t>(l1) * st;
  const std::size_t off2 = static_cast<std::size_t>(l2) * st;
  const int ncols = b.ncols();
  for (ComplementIterator it(reg, targets); !it.done; it.advance()) {
    Complex* r1 = b.row(it.offset + base_c + off1);
    Complex* r2 = b.row(it.offset + base_c + off2);
    for (int col = 0; col < ncols; ++col) std::swap(r1[col], r2[col]);
  }
}

Matrix embed_dense(const Matrix& op, const std::vector<int>& targets,
                   const QuditRegister& reg) {
  const std::size_t n = reg.total_dim();
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  int sub = 1;
  for (int t : targets) sub *= reg.dim(t);
  if (op.rows() != sub) throw std::invalid_argument("embed_dense: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    BasisConfig cfg = config_of(col, reg);
    int colsub = 0;
    for (int t : targets) colsub = colsub * reg.dim(t) + cfg[static_cast<size_t>(t)];
    for (int rowsub = 0; rowsub < sub; ++rowsub) {
      if (op(rowsub, colsub) == Complex{0.0, 0.0}) continue;
      BasisConfig rcfg = cfg;
      int rem = rowsub;
      for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
        rcfg[static_cast<size_t>(targets[static_cast<size_t>(k)])] = rem % reg.dim(targets[static_cast<size_t>(k)]);
        rem /= reg.dim(targets[static_cast<size_t>(k)]);
      }
      full(static_cast<Eigen::Index>(index_of(rcfg, reg)), static_cast<Eigen::Index>(col)) = op(rowsub, colsub);
    }
  }
  return full;
}

}  // namespace qlm
