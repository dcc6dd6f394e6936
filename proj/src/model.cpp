#include "qlm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlm/errors.hpp"

namespace qlm {

void LatticeModel::validate() const {
  if (L < 2) throw std::invalid_argument("model: L must be >= 2");
  if (!std::isfinite(kappa) || !std::isfinite(mu) || !std::isfinite(g))
    throw std::invalid_argument("model: couplings must be finite");
}

Matrix SpinOneEncoding::sz(int d) {
  Matrix m = Matrix::Zero(d, d);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

Matrix SpinOneEncoding::sp(int d) {
  Matrix m = Matrix::Zero(d, d);
  m(2, 1) = std::sqrt(2.0);
  m(1, 0) = std::sqrt(2.0);
  return m;
}

Matrix MatterEncoding::sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix MatterEncoding::sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

QuditRegister make_register(const LatticeModel& model) {
  model.validate();
  std::vector<int> dims;
  std::vector<QuditRole> roles;
  if (model.formulation == Formulation::Matterful) {
    for (int j = 0; j < model.L; ++j) {
      dims.push_back(2);
      roles.push_back({QuditRole::Matter, j});
      if (j < model.L - 1) {
        dims.push_back(3);
        roles.push_back({QuditRole::Link, j});
      }
    }
  } else {
    // One qutrit on the first link, ququarts with an auxiliary |3> elsewhere.
    for (int j = 0; j < model.L - 1; ++j) {
      dims.push_back(j == 0 ? 3 : 4);
      roles.push_back({QuditRole::Link, j});
    }
  }
  return QuditRegister(std::move(dims), std::move(roles));
}

namespace {

Matrix level_projector(int d, int level) {
  Matrix p = Matrix::Zero(d, d);
  p(level, level) = 1.0;
  return p;
}

Matrix subspace_sigma_x(int d, int a, int b) {
  Matrix m = Matrix::Zero(d, d);
  m(a, b) = 1.0;
  m(b, a) = 1.0;
  return m;
}

}  // namespace

HamiltonianTerms build_terms(const LatticeModel& model) {
  model.validate();
  HamiltonianTerms out;
  const double k2 = std::sqrt(2.0) * model.kappa;

  if (model.formulation == Formulation::Matterful) {
    // Pair creation must commute with every Gauss generator; that pins the
    // ladder partner of sigma+ sigma+ to the m-raising combination sp^dag.
    const Matrix raise_m = SpinOneEncoding::sp().adjoint();
    const Matrix sp_mat = MatterEncoding::sigma_plus();
    Matrix creation = kron(sp_mat, kron(raise_m, sp_mat));
    Matrix hmin = model.kappa * (creation + creation.adjoint());
    for (int j = 0; j <= model.L - 2; ++j) {
      out.min_terms.push_back(
          {{model.matter_pos(j), model.link_pos(j), model.matter_pos(j + 1)},
           hmin,
           j});
    }
    for (int j = 0; j < model.L; ++j) {
      out.sg_terms.push_back(
          {{model.matter_pos(j)}, 0.5 * model.mu * MatterEncoding::sigma_z(), j});
    }
    for (int j = 0; j <= model.L - 2; ++j) {
      Matrix sz = SpinOneEncoding::sz();
      out.sg_terms.push_back(
          {{model.link_pos(j)}, 0.5 * model.g * model.g * sz * sz, j});
    }
    return out;
  }

  const QuditRegister reg = make_register(model);
  auto dim_of_link = [&](int l) { return reg.dim(model.link_pos(l)); };
  const int last = model.L - 2;
  for (int j = 0; j <= last; ++j) {
    if (model.L == 2) {
      // Both neighbors are frozen boundary links at m=0.
      out.min_terms.push_back({{0}, k2 * subspace_sigma_x(dim_of_link(0), 0, 1), j});
    } else if (j == 0) {
      Matrix m = k2 * kron(subspace_sigma_x(dim_of_link(0), 0, 1),
                           level_projector(dim_of_link(1), 1));
      out.min_terms.push_back({{0, 1}, m, j});
    } else if (j == last) {
      Matrix m = k2 * kron(level_projector(dim_of_link(last - 1), 1),
                           subspace_sigma_x(dim_of_link(last), 0, 1));
      out.min_terms.push_back({{last - 1, last}, m, j});
    } else {
      const int dl = dim_of_link(j - 1), dm = dim_of_link(j), dr = dim_of_link(j + 1);
      Matrix m = k2 * (kron(level_projector(dl, 1),
                            kron(subspace_sigma_x(dm, 0, 1), level_projector(dr, 1))) +
                       kron(level_projector(dl, 0),
                            kron(subspace_sigma_x(dm, 1, 2), level_projector(dr, 0))));
      out.min_terms.push_back({{j - 1, j, j + 1}, m, j});
    }
  }
  // Mass term from Gauss's law plus the gauge coupling, both diagonal.
  for (int j = 0; j <= last; ++j) {
    const int d = dim_of_link(j);
    Matrix m = Matrix::Zero(d, d);
    for (int level = 0; level < d; ++level) {
      const int mval = SpinOneEncoding::m_of_level(level);
      m(level, level) = 2.0 * model.mu * mval + 0.5 * model.g * model.g * mval * mval;
    }
    out.sg_terms.push_back({{j}, m, j});
  }
  return out;
}

LocalTerm gauss_generator(int j, const LatticeModel& model) {
  model.validate();
  if (model.formulation != Formulation::Matterful)
    throw std::invalid_argument("gauss_generator: defined on the matterful register");
  if (j < 0 || j >= model.L) throw std::out_of_range("gauss_generator: bad site");
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  const Matrix sz3 = SpinOneEncoding::sz();
  const Matrix id3 = Matrix::Identity(3, 3);
  const Matrix id2 = Matrix::Identity(2, 2);
  // (sigma_z + 1)/2 counts occupation.
  const Matrix occ = 0.5 * (MatterEncoding::sigma_z() + id2);

  if (model.L == 1) throw std::logic_error("unreachable");
  if (j == 0) {
    Matrix m = sign * (kron(-occ, id3) + kron(id2, sz3));
    return {{model.matter_pos(0), model.link_pos(0)}, m, j};
  }
  if (j == model.L - 1) {
    Matrix m = sign * (kron(sz3, id2) + kron(id3, -occ));
    return {{model.link_pos(j - 1), model.matter_pos(j)}, m, j};
  }
  Matrix m = sign * (kron(sz3, kron(id2, id3)) + kron(id3, kron(id2, sz3)) +
                     kron(id3, kron(-occ, id3)));
  return {{model.link_pos(j - 1), model.matter_pos(j), model.link_pos(j)}, m, j};
}

std::vector<int> occupations_from_links(const BasisConfig& link_config) {
  const int nlinks = static_cast<int>(link_config.size());
  std::vector<int> occ(static_cast<size_t>(nlinks) + 1, 0);
  for (int j = 0; j <= nlinks; ++j) {
    const int ml = j == 0 ? 0 : SpinOneEncoding::m_of_level(link_config[static_cast<size_t>(j - 1)]);
    const int mr = j == nlinks ? 0 : SpinOneEncoding::m_of_level(link_config[static_cast<size_t>(j)]);
    occ[static_cast<size_t>(j)] = ml + mr;
  }
  return occ;
}

bool is_gauge_invariant_links(const BasisConfig& link_config) {
  for (int digit : link_config)
    if (digit < 0 || digit > 2) return false;
  for (int n : occupations_from_links(link_config))
    if (n != 0 && n != 1) return false;
  return true;
}

PhysicalSubspace enumerate_physical(const LatticeModel& model) {
  model.validate();
  if (model.L > 14) throw BudgetError("enumerate_physical: L > 14");
  const int nlinks = model.num_links();

  std::vector<BasisConfig> found;
  BasisConfig current(static_cast<size_t>(nlinks), 0);
  // Depth-first over link levels in lexicographic order; prefix sums let us
  // prune every branch that already violates a site constraint.
  auto recurse = [&](auto&& self, int link, int prev_m) -> void {
    if (link == nlinks) {
      if (prev_m == 0 || prev_m == 1) found.push_back(current);
      return;
    }
    for (int level = 0; level <= 2; ++level) {
      const int m = SpinOneEncoding::m_of_level(level);
      const int site_sum = prev_m + m;  // occupation at site `link`
      if (site_sum != 0 && site_sum != 1) continue;
      current[static_cast<size_t>(link)] = level;
      self(self, link + 1, m);
    }
  };
  recurse(recurse, 0, 0);

  PhysicalSubspace out{make_register(model), {}, {}, {}};
  std::vector<std::pair<std::size_t, BasisConfig>> ranked;
  ranked.reserve(found.size());
  for (const BasisConfig& links : found) {
    BasisConfig cfg;
    if (model.formulation == Formulation::Matterful) {
      const std::vector<int> occ = occupations_from_links(links);
      for (int j = 0; j < model.L; ++j) {
        cfg.push_back(MatterEncoding::level_of_occupation(occ[static_cast<size_t>(j)]));
        if (j < nlinks) cfg.push_back(links[static_cast<size_t>(j)]);
      }
    } else {
      cfg = links;
    }
    ranked.emplace_back(index_of(cfg, out.reg), cfg);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [idx, cfg] : ranked) {
    out.indices.push_back(idx);
    out.configs.push_back(cfg);
    if (model.formulation == Formulation::Matterful) {
      BasisConfig links;
      for (int l = 0; l < nlinks; ++l)
        links.push_back(cfg[static_cast<size_t>(model.link_pos(l))]);
      out.link_configs.push_back(links);
    } else {
      out.link_configs.push_back(cfg);
    }
  }
  return out;
}

std::vector<double> reconstruct_charge(const std::vector<double>& link_fluxes,
                                       const LatticeModel& model) {
  if (static_cast<int>(link_fluxes.size()) != model.num_links())
    throw std::invalid_argument("reconstruct_charge: need L-1 fluxes");
  std::vector<double> rho(static_cast<size_t>(model.L), 0.0);
  for (int j = 0; j < model.L; ++j) {
    const double fl = j == 0 ? 0.0 : link_fluxes[static_cast<size_t>(j - 1)];
    const double fr = j == model.L - 1 ? 0.0 : link_fluxes[static_cast<size_t>(j)];
    rho[static_cast<size_t>(j)] = ((j % 2 == 0) ? 1.0 : -1.0) * (fl + fr);
  }
  return rho;
}

std::vector<double> fluxes_to_original_frame(const std::vector<double>& fluxes) {
  std::vector<double> out = fluxes;
  for (std::size_t l = 1; l < out.size(); l += 2) out[l] = -out[l];
  return out;
}

}  // namespace qlm
