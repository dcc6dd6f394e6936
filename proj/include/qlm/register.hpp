#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qlm {

// What a qudit represents on the lattice.
struct QuditRole {
  enum Kind { Matter, Link } kind = Link;
  // Matter: site index j. Link: left site index j of the pair (j, j+1).
  int site = 0;
};

// An ordered register of qudits with heterogeneous local dimensions.
// Qudit 0 is the leftmost lattice object and the most significant digit
// of the basis rank.
class QuditRegister {
 public:
  QuditRegister() = default;
  QuditRegister(std::vector<int> dims, std::vector<QuditRole> roles);

  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int q) const { return dims_[static_cast<size_t>(q)]; }
  const std::vector<int>& dims() const { return dims_; }
  const QuditRole& role(int q) const { return roles_[static_cast<size_t>(q)]; }
  std::size_t total_dim() const { return total_dim_; }
  // Stride of qudit q in the amplitude vector.
  std::size_t stride(int q) const { return strides_[static_cast<size_t>(q)]; }

  bool operator==(const QuditRegister& other) const {
    return dims_ == other.dims_;
  }

 private:
  std::vector<int> dims_;
  std::vector<QuditRole> roles_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

// One computational basis configuration: a digit per qudit.
using BasisConfig = std::vector<int>;

// Mixed-radix rank of a configuration, qudit 0 most significant.
std::size_t index_of(const BasisConfig& config, const QuditRegister& reg);

// Inverse of index_of.
BasisConfig config_of(std::size_t index, const QuditRegister& reg);

std::string config_to_string(const BasisConfig& config);

}  // namespace qlm
