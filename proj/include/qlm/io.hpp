#pragma once

#include <string>
#include <vector>

#include "qlm/compiler.hpp"
#include "qlm/scattering.hpp"

namespace qlm {

constexpr int kSchemaVersion = 1;

// Structured text round trip for circuits: one gate per line, steps
// separated by '---'.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);

std::string gate_to_text(const GateOp& g);
GateOp gate_from_text(const std::string& line);

// Records are stored as <base>.charge.csv, <base>.flux.csv and a one-line
// NDJSON metadata file <base>.meta.ndjson carrying the schema version and
// run provenance.
void save_record(const ObservableRecord& record, const std::string& base,
                 const std::string& resolved_config_json = "{}");
ObservableRecord load_record(const std::string& base);

void save_snapshot_csv(const SnapshotTable& table, const std::string& path);

struct GateCountRow {
  int L;
  std::string formulation;
  long ms, cx, one_body;
};
void save_gatecount_csv(const std::vector<GateCountRow>& rows,
                        const std::string& path);
std::string gatecount_csv(const std::vector<GateCountRow>& rows);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace qlm
