#include "qlm/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qlm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

PauliAxis axis_from(const std::string& s) {
  if (s == "x") return PauliAxis::X;
  if (s == "y") return PauliAxis::Y;
  if (s == "z") return PauliAxis::Z;
  throw std::invalid_argument("bad axis token: " + s);
}

}  // namespace

std::string gate_to_text(const GateOp& g) {
  std::ostringstream os;
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      os << to_string(g.kind) << ' ' << g.t0 << ' ' << g.a << ' ' << g.b << ' '
         << format_double(g.theta);
      break;
    case GateKind::H:
      os << "H " << g.t0 << ' ' << g.a << ' ' << g.b;
      break;
    case GateKind::VRZ:
      os << "VRZ " << g.t0 << ' ' << g.a << ' ' << format_double(g.phi);
      break;
    case GateKind::CX:
      os << "CX " << g.t0 << ' ' << g.c << ' ' << g.t1 << ' ' << g.l1 << ' ' << g.l2;
      break;
    case GateKind::MS:
      os << "MS " << g.t0 << ' ' << g.t1 << ' ' << to_string(g.axis0) << ' '
         << to_string(g.axis1) << ' ' << format_double(g.theta);
      break;
    case GateKind::RZZ:
      os << "RZZ " << g.t0 << ' ' << g.t1 << ' ' << format_double(g.theta);
      break;
    case GateKind::CROT:
      os << "CROT " << g.t0 << ' ' << g.c << ' ' << g.t1 << ' ' << g.a << ' '
         << g.b << ' ' << format_double(g.theta) << ' ' << format_double(g.phi);
      break;
    case GateKind::PERM_PLUS:
      os << "PERMP " << g.t0;
      break;
  }
  return os.str();
}

GateOp gate_from_text(const std::string& line) {
  std::istringstream is(line);
  std::string kind;
  is >> kind;
  auto fail = [&] { throw std::invalid_argument("bad gate line: " + line); };
  if (kind == "RX" || kind == "RY" || kind == "RZ") {
    int q, a, b;
    double theta;
    if (!(is >> q >> a >> b >> theta)) fail();
    if (kind == "RX") return GateOp::rx(q, a, b, theta);
    if (kind == "RY") return GateOp::ry(q, a, b, theta);
    return GateOp::rz(q, a, b, theta);
  }
  if (kind == "H") {
    int q, a, b;
    if (!(is >> q >> a >> b)) fail();
    return GateOp::hadamard(q, a, b);
  }
  if (kind == "VRZ") {
    int q, a;
    double phi;
    if (!(is >> q >> a >> phi)) fail();
    return GateOp::vrz(q, a, phi);
  }
  if (kind == "CX") {
    int control, c, target, l1, l2;
    if (!(is >> control >> c >> target >> l1 >> l2)) fail();
    return GateOp::cx(control, c, target, l1, l2);
  }
  if (kind == "MS") {
    int qt, qb;
    std::string ax0, ax1;
    double alpha;
    if (!(is >> qt >> qb >> ax0 >> ax1 >> alpha)) fail();
    return GateOp::ms(axis_from(ax0), axis_from(ax1), qt, qb, alpha);
  }
  if (kind == "RZZ") {
    int qt, qb;
    double alpha;
    if (!(is >> qt >> qb >> alpha)) fail();
    return GateOp::rzz(qt, qb, alpha);
  }
  if (kind == "CROT") {
    int control, c, target, i, j;
    double theta, phi;
    if (!(is >> control >> c >> target >> i >> j >> theta >> phi)) fail();
    return GateOp::crot(control, c, target, i, j, theta, phi);
  }
  if (kind == "PERMP") {
    int q;
    if (!(is >> q)) fail();
    return GateOp::perm_plus(q);
  }
  fail();
  return {};
}

std::string circuit_to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "qlm-circuit v" << kSchemaVersion << "\n";
  os << "register";
  for (int d : circuit.reg.dims()) os << ' ' << d;
  os << "\nroles";
  for (int q = 0; q < circuit.reg.size(); ++q) {
    const QuditRole& r = circuit.reg.role(q);
    os << ' ' << (r.kind == QuditRole::Matter ? 'm' : 'l') << r.site;
  }
  os << "\nsteps " << circuit.steps << ' ' << format_double(circuit.step_size)
     << ' ' << circuit.wall_off_step << "\n";
  std::size_t gi = 0;
  for (const auto& [begin, end] : circuit.step_ranges) {
    for (gi = begin; gi < end; ++gi) os << gate_to_text(circuit.gates[gi]) << "\n";
    os << "---\n";
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("qlm-circuit", 0) != 0)
    throw std::invalid_argument("circuit text: bad header");
  if (!std::getline(is, line) || line.rfind("register", 0) != 0)
    throw std::invalid_argument("circuit text: missing register");
  std::vector<int> dims;
  {
    std::istringstream ls(line.substr(8));
    int d;
    while (ls >> d) dims.push_back(d);
  }
  if (!std::getline(is, line) || line.rfind("roles", 0) != 0)
    throw std::invalid_argument("circuit text: missing roles");
  std::vector<QuditRole> roles;
  {
    std::istringstream ls(line.substr(5));
    std::string tok;
    while (ls >> tok) {
      QuditRole r;
      r.kind = tok[0] == 'm' ? QuditRole::Matter : QuditRole::Link;
      r.site = std::stoi(tok.substr(1));
      roles.push_back(r);
    }
  }
  Circuit circuit;
  circuit.reg = QuditRegister(dims, roles);
  if (!std::getline(is, line) || line.rfind("steps", 0) != 0)
    throw std::invalid_argument("circuit text: missing steps");
  {
    std::istringstream ls(line.substr(5));
    if (!(ls >> circuit.steps >> circuit.step_size >> circuit.wall_off_step))
      throw std::invalid_argument("circuit text: bad steps line");
  }
  std::size_t begin = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "---") {
      circuit.step_ranges.emplace_back(begin, circuit.gates.size());
      begin = circuit.gates.size();
      continue;
    }
    circuit.gates.push_back(gate_from_text(line));
  }
  if (static_cast<int>(circuit.step_ranges.size()) != circuit.steps)
    throw std::invalid_argument("circuit text: step count mismatch");
  return circuit;
}

namespace {

void write_grid_csv(const std::string& path, const std::string& col_prefix,
                    const std::vector<double>& times,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t";
  const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < ncols; ++c) out << ',' << col_prefix << c;
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << format_double(times[r]);
    for (double v : rows[r]) out << ',' << format_double(v);
    out << "\n";
  }
}

std::pair<std::vector<double>, std::vector<std::vector<double>>> read_grid_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    times.push_back(row.front());
    rows.emplace_back(row.begin() + 1, row.end());
  }
  return {times, rows};
}

}  // namespace

void save_record(const ObservableRecord& record, const std::string& base,
                 const std::string& resolved_config_json) {
  write_grid_csv(base + ".charge.csv", "q", record.times, record.charge);
  write_grid_csv(base + ".flux.csv", "l", record.times, record.flux_orig);
  nlohmann::json meta;
  meta["schema_version"] = record.schema_version;
  meta["protocol"] = record.protocol_name;
  meta["kind"] = record.kind;
  meta["engine"] = record.engine;
  meta["L"] = record.L;
  meta["T"] = record.T;
  meta["seed"] = record.seed;
  meta["trajectories"] = record.trajectories;
  meta["surviving"] = record.surviving;
  meta["config"] = nlohmann::json::parse(resolved_config_json);
  std::ofstream out(base + ".meta.ndjson");
  if (!out) throw std::runtime_error("cannot write metadata for " + base);
  out << meta.dump() << "\n";
}

ObservableRecord load_record(const std::string& base) {
  ObservableRecord record;
  std::ifstream meta_in(base + ".meta.ndjson");
  if (!meta_in) throw std::runtime_error("cannot read metadata for " + base);
  std::string line;
  std::getline(meta_in, line);
  nlohmann::json meta = nlohmann::json::parse(line);
  record.schema_version = meta.at("schema_version").get<int>();
  if (record.schema_version != kSchemaVersion)
    throw std::runtime_error("record schema version mismatch: " + base);
  record.protocol_name = meta.at("protocol").get<std::string>();
  record.kind = meta.at("kind").get<std::string>();
  record.engine = meta.at("engine").get<std::string>();
  record.L = meta.at("L").get<int>();
  record.T = meta.at("T").get<double>();
  record.seed = meta.at("seed").get<std::uint64_t>();
  record.trajectories = meta.at("trajectories").get<int>();
  record.surviving = meta.at("surviving").get<int>();
  auto [tc, charge] = read_grid_csv(base + ".charge.csv");
  auto [tf, flux] = read_grid_csv(base + ".flux.csv");
  if (tc != tf) throw std::runtime_error("record csv time grids differ: " + base);
  record.times = tc;
  record.charge = charge;
  record.flux_orig = flux;
  return record;
}

void save_snapshot_csv(const SnapshotTable& table, const std::string& path) {
  write_grid_csv(path, "l", table.times, table.flux_rows);
}

std::string gatecount_csv(const std::vector<GateCountRow>& rows) {
  std::ostringstream os;
  os << "L,formulation,ms,cx,one_body,two_body\n";
  for (const GateCountRow& r : rows)
    os << r.L << ',' << r.formulation << ',' << r.ms << ',' << r.cx << ','
       << r.one_body << ',' << (r.ms + r.cx) << "\n";
  return os.str();
}

void save_gatecount_csv(const std::vector<GateCountRow>& rows,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << gatecount_csv(rows);
}

}  // namespace qlm
