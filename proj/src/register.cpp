#include "qlm/register.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "qlm/errors.hpp"

namespace qlm {

namespace {
constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 27;
}

QuditRegister::QuditRegister(std::vector<int> dims, std::vector<QuditRole> roles)
    : dims_(std::move(dims)), roles_(std::move(roles)) {
  if (roles_.empty()) roles_.resize(dims_.size());
  if (roles_.size() != dims_.size())
    throw std::invalid_argument("register: dims/roles size mismatch");
  total_dim_ = 1;
  for (int d : dims_) {
    if (d < 2 || d > 4) throw std::invalid_argument("register: local dim must be 2..4");
    if (total_dim_ > kMaxAmplitudes / static_cast<std::size_t>(d))
      throw BudgetError("register exceeds 2^27 amplitudes");
    total_dim_ *= static_cast<std::size_t>(d);
  }
  strides_.assign(dims_.size(), 1);
  for (int q = static_cast<int>(dims_.size()) - 2; q >= 0; --q)
    strides_[q] = strides_[q + 1] * static_cast<std::size_t>(dims_[q + 1]);
}

std::size_t index_of(const BasisConfig& config, const QuditRegister& reg) {
  if (static_cast<int>(config.size()) != reg.size())
    throw std::out_of_range("index_of: config length != register size");
  std::size_t idx = 0;
  for (int q = 0; q < reg.size(); ++q) {
    int digit = config[static_cast<size_t>(q)];
    if (digit < 0 || digit >= reg.dim(q))
      throw std::out_of_range("index_of: digit out of range");
    idx += static_cast<std::size_t>(digit) * reg.stride(q);
  }
  return idx;
}

BasisConfig config_of(std::size_t index, const QuditRegister& reg) {
  assert(index < reg.total_dim());
  BasisConfig config(static_cast<size_t>(reg.size()));
  for (int q = 0; q < reg.size(); ++q) {
    config[static_cast<size_t>(q)] = static_cast<int>(index / reg.stride(q)) % reg.dim(q);
  }
  return config;
}

std::string config_to_string(const BasisConfig& config) {
  std::ostringstream os;
  for (int d : config) os << d;
  return os.str();
}

}  // namespace qlm
