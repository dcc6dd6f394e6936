#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlm/errors.hpp"
#include "qlm/scattering.hpp"

using namespace qlm;

TEST_CASE("presets are lawful and carry the documented geometry") {
  for (const std::string& name : preset_names()) {
    const ScatteringProtocol p = protocol_preset(name);
    CHECK(is_gauge_invariant_links(initial_link_config(p)));
    // membership in the enumerated physical basis
    const PhysicalSubspace subspace = enumerate_physical(p.model());
    CHECK_NOTHROW(initial_physical_vector(p, subspace));
  }
  const ScatteringProtocol mm = protocol_preset("meson_meson_L12_g3");
  CHECK(mm.L == 12);
  // exactly two excited links, both at the +1 flux level, one per wall
  const BasisConfig links = initial_link_config(mm);
  int excited = 0;
  for (int d : links) excited += (d != 1);
  CHECK(excited == 2);
  CHECK(links[2] == 0);
  CHECK(links[8] == 0);
  // same flux level on both: species is carried by link parity
  const ScatteringProtocol ma = protocol_preset("meson_antimeson_L11_g3");
  const BasisConfig ma_links = initial_link_config(ma);
  CHECK(ma_links[2] == 0);
  CHECK(ma_links[7] == 0);
  CHECK((2 % 2) != (7 % 2));
}

TEST_CASE("vacuum companion has no excitations") {
  const ScatteringProtocol vac =
      companion(protocol_preset("meson_meson_L12_g3"), CollisionKind::Vacuum);
  for (int d : initial_link_config(vac)) CHECK(d == 1);
  const ScatteringProtocol left =
      companion(protocol_preset("meson_meson_L12_g3"), CollisionKind::FreeLeft);
  CHECK(left.excited_links == std::vector<int>{2});
}

TEST_CASE("matterful preparation derives occupations from the fluxes") {
  ScatteringProtocol p = protocol_preset("noise_comparison_L7");
  p.formulation = Formulation::Matterful;
  const PureState s = prepare_initial(p);
  // excited links 0 and 5; their end sites host the charges
  BasisConfig expect;
  const std::vector<int> occ = occupations_from_links(initial_link_config(p));
  for (int j = 0; j < p.L; ++j) {
    expect.push_back(1 - occ[static_cast<size_t>(j)]);
    if (j < p.L - 1)
      expect.push_back(initial_link_config(p)[static_cast<size_t>(j)]);
  }
  CHECK(std::abs(s.amp(index_of(expect, s.reg())) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(occ[0] == 1);
  CHECK(occ[1] == 1);
  CHECK(occ[2] == 0);
}

TEST_CASE("unlawful initial patterns are rejected") {
  ScatteringProtocol p = protocol_preset("meson_meson_L12_g3");
  p.excited_links = {2, 3};  // adjacent +1 fluxes overfill the shared site
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("records start at the initial observables and conserve charge") {
  const ScatteringProtocol p = protocol_preset("noise_comparison_L7");
  for (Engine engine : {Engine::Exact, Engine::Noiseless}) {
    const ObservableRecord record = run_experiment(p, engine);
    CHECK(record.times.front() == 0.0);
    // t=0 fluxes equal the initial pattern (original frame)
    const BasisConfig links = initial_link_config(p);
    for (std::size_t l = 0; l < links.size(); ++l) {
      const double sim = SpinOneEncoding::m_of_level(links[l]);
      const double orig = (l % 2 == 0) ? sim : -sim;
      CHECK(record.flux_orig[0][l] == doctest::Approx(orig).epsilon(1e-12));
    }
    // neutral start stays neutral, observables stay in their ranges
    for (const std::vector<double>& row : record.charge) {
      double total = 0.0;
      for (double v : row) {
        total += v;
        CHECK(std::abs(v) <= 1.0 + 1e-9);
      }
      CHECK(std::abs(total) < 1e-9);
    }
    for (const std::vector<double>& row : record.flux_orig)
      for (double v : row) CHECK(std::abs(v) <= 1.0 + 1e-9);
  }
}

TEST_CASE("collision dynamics carry the mirror structure of the setup") {
  // Charges pick up (-1)^j, so the even-length chain mirrors with a sign
  // flip and the odd-length chain mirrors directly.
  {
    const ScatteringProtocol p = protocol_preset("meson_meson_L12_g3");
    const ObservableRecord r = run_experiment(p, Engine::Exact);
    double asym = 0.0;
    for (std::size_t k = 0; k < r.times.size(); ++k)
      for (int j = 0; j < p.L; ++j)
        asym = std::max(asym, std::abs(r.charge[k][static_cast<size_t>(j)] +
                                       r.charge[k][static_cast<size_t>(p.L - 1 - j)]));
    CHECK(asym < 1e-8);
  }
  {
    const ScatteringProtocol p = protocol_preset("meson_antimeson_L11_g3");
    const ObservableRecord r = run_experiment(p, Engine::Exact);
    double asym = 0.0;
    for (std::size_t k = 0; k < r.times.size(); ++k)
      for (int j = 0; j < p.L; ++j)
        asym = std::max(asym, std::abs(r.charge[k][static_cast<size_t>(j)] -
                                       r.charge[k][static_cast<size_t>(p.L - 1 - j)]));
    CHECK(asym < 1e-8);
  }
}

TEST_CASE("walls seal the outside region during holding") {
  const ScatteringProtocol p = protocol_preset("meson_antimeson_L11_g3");
  const ObservableRecord scat = run_experiment(p, Engine::Exact);
  const ObservableRecord vac =
      run_experiment(companion(p, CollisionKind::Vacuum), Engine::Exact);
  for (int k = 0; k <= p.hold_steps; ++k)
    for (int j : {0, 1, p.L - 2, p.L - 1})
      CHECK(std::abs(scat.charge[static_cast<size_t>(k)][static_cast<size_t>(j)] -
                     vac.charge[static_cast<size_t>(k)][static_cast<size_t>(j)]) < 1e-12);
}

TEST_CASE("subtractions") {
  const ScatteringProtocol p = protocol_preset("noise_comparison_L7");
  const ObservableRecord scat = run_experiment(p, Engine::Exact);
  ObservableRecord vac = run_experiment(companion(p, CollisionKind::Vacuum), Engine::Exact);
  ObservableRecord left = run_experiment(companion(p, CollisionKind::FreeLeft), Engine::Exact);
  ObservableRecord right = run_experiment(companion(p, CollisionKind::FreeRight), Engine::Exact);

  SUBCASE("a record minus itself vanishes") {
    ObservableRecord self = scat;
    self.kind = "vacuum";
    const ObservableRecord zero = subtract_vacuum(scat, self);
    for (const auto& row : zero.charge)
      for (double v : row) CHECK(v == 0.0);
    const ObservableRecord zz = subtract_vacuum(vac, vac);
    for (const auto& row : zz.charge)
      for (double v : row) CHECK(v == 0.0);
  }

  SUBCASE("noninteracting construction cancels exactly") {
    ObservableRecord synthetic = scat;
    for (std::size_t k = 0; k < synthetic.times.size(); ++k) {
      for (std::size_t j = 0; j < synthetic.charge[k].size(); ++j)
        synthetic.charge[k][j] = left.charge[k][j] + right.charge[k][j] - vac.charge[k][j];
      for (std::size_t l = 0; l < synthetic.flux_orig[k].size(); ++l)
        synthetic.flux_orig[k][l] =
            left.flux_orig[k][l] + right.flux_orig[k][l] - vac.flux_orig[k][l];
    }
    const ObservableRecord diff = subtract_free(synthetic, left, right, vac);
    for (const auto& row : diff.charge)
      for (double v : row) CHECK(std::abs(v) < 1e-15);
  }

  SUBCASE("role and grid mismatches are rejected") {
    CHECK_THROWS_AS(subtract_free(scat, right, left, vac), std::invalid_argument);
    CHECK_THROWS_AS(subtract_vacuum(scat, left), std::invalid_argument);
    ObservableRecord shifted = vac;
    shifted.times[3] += 0.5;
    CHECK_THROWS_AS(subtract_vacuum(scat, shifted), std::invalid_argument);
  }
}

TEST_CASE("flux snapshots pick the nearest slices") {
  const ScatteringProtocol p = protocol_preset("noise_comparison_L7");
  const ObservableRecord record = run_experiment(p, Engine::Exact);
  const SnapshotTable table = flux_snapshots(record, {0.0, 1.01, 5.0});
  CHECK(table.times[0] == 0.0);
  CHECK(table.times[1] == doctest::Approx(1.0));
  // t=0 slice equals the initial pattern
  const BasisConfig links = initial_link_config(p);
  for (std::size_t l = 0; l < links.size(); ++l) {
    const double sim = SpinOneEncoding::m_of_level(links[l]);
    const double orig = (l % 2 == 0) ? sim : -sim;
    CHECK(table.flux_rows[0][l] == doctest::Approx(orig).epsilon(1e-12));
  }
  // vacuum slices are mirror symmetric up to the frame sign on odd links
  const ObservableRecord vac =
      run_experiment(companion(p, CollisionKind::Vacuum), Engine::Exact);
  const SnapshotTable vtab = flux_snapshots(vac, {2.0, 4.0});
  const int nlinks = p.L - 1;
  for (const auto& row : vtab.flux_rows)
    for (int l = 0; l < nlinks; ++l)
      CHECK(std::abs(std::abs(row[static_cast<size_t>(l)]) -
                     std::abs(row[static_cast<size_t>(nlinks - 1 - l)])) < 1e-9);
}
