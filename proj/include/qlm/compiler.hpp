#pragma once

#include <utility>
#include <vector>

#include "qlm/gates.hpp"
#include "qlm/model.hpp"

namespace qlm {

// A compiled circuit. Gates are listed in application (time) order and
// grouped into Trotter steps; diagonal phase layers are merged across step
// boundaries, which leaves diagonal observables unaffected.
struct Circuit {
  QuditRegister reg;
  std::vector<GateOp> gates;
  std::vector<std::pair<std::size_t, std::size_t>> step_ranges;  // [begin,end)
  int steps = 0;
  double step_size = 0.0;
  int wall_off_step = 0;  // step index at which removed terms are restored
};

// Walls: minimal-coupling terms absent for the first hold_steps steps.
struct WallSchedule {
  std::vector<int> removed_min_terms;
  int hold_steps = 0;
};

// Controlled rotation from native gates: applies R_x^{ab}(angle) on the
// target when the control sits at level c, identity on every other control
// level. Exactly two entangling gates.
std::vector<GateOp> compile_crx(int control, int target, int c, int a, int b,
                                double angle);

// exp(-i tau H^min_j) for a bulk link term (1 <= j <= L-3), 8 entangling gates.
std::vector<GateOp> compile_umin_link(int j, const LatticeModel& model, double tau);

enum class EdgeSide { Left, Right };

// exp(-i tau H^min_j) for an edge term, one controlled rotation.
std::vector<GateOp> compile_umin_edge(EdgeSide side, const LatticeModel& model,
                                      double tau);

// exp(-i tau H^sg) as virtual phase gates only.
std::vector<GateOp> compile_usg(const LatticeModel& model, double tau);

// exp(-i tau H^min_j) for the matterful three-body term: two twelve-gate
// Molmer-Sorensen blocks conjugated by the qutrit cyclic permutation.
// With use_rzz the entangling primitive is the ZZ-phase variant instead.
std::vector<GateOp> compile_umin_matterful(int j, const LatticeModel& model,
                                           double tau, bool use_rzz = false);

// Second-order step: sg half-layer, ascending-then-descending half-angle
// minimal-coupling layers, sg half-layer; repeated N times with the sg
// half-layers merged across step boundaries.
Circuit assemble_trotter(const LatticeModel& model, double T, int N,
                         const WallSchedule& walls = {}, bool use_rzz = false);

struct GateCounts {
  long ms = 0;
  long cx = 0;
  long one_body = 0;
  long two_body() const { return ms + cx; }
};

// Counts by noise class; virtual gates are excluded.
GateCounts gate_count(const std::vector<GateOp>& gates);
GateCounts gate_count(const Circuit& circuit);

// Counts for a single first-order minimal-coupling layer (no walls).
GateCounts count_min_layer(const LatticeModel& model);

}  // namespace qlm
