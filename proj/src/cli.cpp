#include "qroof/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "qroof/antilinear.hpp"
#include "qroof/capacity.hpp"
#include "qroof/errors.hpp"
#include "qroof/oracle.hpp"
#include "qroof/roofs.hpp"

namespace qroof::cli {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError("complex entries must be [re, im] pairs of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

ComplexMat2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw UsageError("a matrix must be a list of two rows");
  ComplexMat2 m;
  for (int r = 0; r < 2; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 2)
      throw UsageError("each matrix row must hold two [re, im] entries");
    for (int c = 0; c < 2; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json matrix_to_json(const ComplexMat2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r)
    rows.push_back(json::array({complex_to_json(m(r, 0)), complex_to_json(m(r, 1))}));
  return rows;
}

json bloch_to_json(const Bloch& b) { return json::array({b(0), b(1), b(2)}); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_value(std::ostream& os, const json& j) {
  switch (j.type()) {
  case json::value_t::object: {
    os << '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first)
        os << ',';
      first = false;
      os << json(it.key()).dump() << ':';
      write_value(os, it.value());
    }
    os << '}';
    break;
  }
  case json::value_t::array: {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0)
        os << ',';
      write_value(os, j[i]);
    }
    os << ']';
    break;
  }
  case json::value_t::number_float: {
    const double v = j.get<double>();
    os << (std::isfinite(v) ? format_real(v) : "null");
    break;
  }
  default:
    os << j.dump();
  }
}

// --- subcommand state -------------------------------------------------------

struct Options {
  std::string channel_path;
  std::string state_spec;
  std::string state_path;
  std::uint64_t seed = 42;
  double tol = -1.0;       // subcommand default when negative
  double trace_tol = -1.0; // validation tolerance; falls back to tol, then 1e-10
  bool tol_is_trace = true;
  bool no_validate = false;
  int restarts = -1;
  int grid = 64;
  int refine_iters = 200;
  std::string format = "json";
  std::string family;
  std::string grid_spec;
  std::string out_path;
  double v_angle = std::numbers::pi / 6.0;
};

class Failure : public std::runtime_error {
public:
  Failure(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

KrausChannel read_channel(const Options& o) {
  try {
    return channel_from_json(read_json_file(o.channel_path));
  } catch (const InvariantError& e) {
    throw Failure(kValidation, std::string("invalid channel: ") + e.what());
  }
}

KrausChannel load_channel(const Options& o) {
  KrausChannel ch = read_channel(o);
  if (!o.no_validate) {
    const double tol = o.trace_tol > 0.0 ? o.trace_tol
                       : (o.tol_is_trace && o.tol > 0.0) ? o.tol
                                                         : kTraceTol;
    const ValidationReport rep = validate_cptp(ch, tol);
    if (!rep.pass)
      throw Failure(kValidation, "channel is not trace preserving (deviation " +
                                     format_real(rep.deviation) + ")");
  }
  return ch;
}

DensityOp load_state(const Options& o) {
  try {
    if (!o.state_spec.empty())
      return state_from_flag(o.state_spec);
    if (!o.state_path.empty())
      return state_from_json(read_json_file(o.state_path));
  } catch (const InvariantError& e) {
    throw Failure(kValidation, std::string("invalid state: ") + e.what());
  }
  throw UsageError("a state is required (--state or --state-file)");
}

// SpanTooLarge propagates to the dispatcher.
ChannelTheta load_theta(const KrausChannel& ch) { return theta_for_channel(ch); }

int cmd_validate(const Options& o, std::ostream& out) {
  const KrausChannel ch = read_channel(o);
  const double tol = o.tol > 0.0 ? o.tol : kTraceTol;
  const ValidationReport rep = validate_cptp(ch, tol);
  write_json(out, {{"pass", rep.pass}, {"deviation", rep.deviation}, {"tol", tol}});
  return rep.pass ? kOk : kValidation;
}

int cmd_theta(const Options& o, std::ostream& out) {
  const KrausChannel ch = load_channel(o);
  const SpanBasis span = kraus_span(ch);
  json sv = json::array();
  for (Eigen::Index i = 0; i < span.singular_values.size(); ++i)
    sv.push_back(span.singular_values(i));
  if (span.span_dim > 2)
    throw SpanTooLarge(span.span_dim);
  const ChannelTheta ct = theta_from_span(span);
  write_json(out, {{"alpha", complex_to_json(ct.theta.alpha())},
                   {"beta", complex_to_json(ct.theta.beta())},
                   {"delta", complex_to_json(ct.theta.delta())},
                   {"scale", ct.scale},
                   {"spanDim", span.span_dim},
                   {"singular_values", sv},
                   {"theta_det_abs", theta_det_abs(ct.theta)}});
  return kOk;
}

OracleConfig capacity_options(const Options& o) {
  OracleConfig cfg = capacity_config(o.seed);
  if (o.restarts > 0)
    cfg.restarts = o.restarts;
  return cfg;
}

json ensemble_to_json(const Ensemble& e) {
  json arr = json::array();
  for (std::size_t j = 0; j < e.size(); ++j) {
    const Ket& k = e.states()[j].ket();
    arr.push_back({{"weight", e.weights()[j]},
                   {"bloch", bloch_to_json(e.states()[j].bloch())},
                   {"ket", json::array({complex_to_json(k(0)), complex_to_json(k(1))})}});
  }
  return arr;
}

int cmd_capacity(const Options& o, std::ostream& out) {
  const KrausChannel ch = load_channel(o);
  const ChannelTheta ct = load_theta(ch);
  const SignalReport rep = optimal_signal_report(ch, ct.theta, capacity_options(o));
  write_json(out, {{"value", rep.capacity.value},
                   {"argmax_bloch", bloch_to_json(rep.capacity.argmax.bloch())},
                   {"ensemble", ensemble_to_json(rep.capacity.ensemble)},
                   {"overlap", rep.overlap},
                   {"orthogonal", rep.orthogonal},
                   {"mutual_information", rep.mutual_information},
                   {"mi_matches", rep.mi_matches},
                   {"degenerate_optimum", rep.degenerate_optimum},
                   {"best_start", rep.capacity.best_start},
                   {"seed", o.seed}});
  return rep.mi_matches ? kOk : kNumerical;
}

int cmd_oracle_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const KrausChannel ch = load_channel(o);
  const DensityOp rho = load_state(o);
  const ChannelTheta ct = load_theta(ch);

  OracleConfig cfg;
  cfg.seed = o.seed;
  cfg.grid = o.grid;
  cfg.refine_iters = o.refine_iters;
  if (o.restarts > 0)
    cfg.restarts = o.restarts;
  const double tol = o.tol > 0.0 ? o.tol : 1e-4;

  const double c_closed = channel_concurrence(ct.theta, rho);
  const ChannelEntropy h_closed = channel_entropy(ch, ct.theta, rho);
  const OracleResult c_oracle = oracle_concurrence(ch, rho, cfg);
  const OracleResult e_oracle = oracle_entropy_roof(ch, rho, cfg);
  const double h_oracle = h_closed.output_entropy - e_oracle.value;

  const double gap_c = c_oracle.value - c_closed;
  const double gap_e = e_oracle.value - h_closed.roof;
  const bool beaten = gap_c < -1e-9 || gap_e < -1e-9;
  const bool pass = !beaten && gap_c <= tol && gap_e <= tol;

  write_json(out, {{"closed_form", {{"C_T", c_closed},
                                    {"E_T", h_closed.roof},
                                    {"H_T", h_closed.value},
                                    {"H_T_raw", h_closed.raw},
                                    {"S_T", h_closed.output_entropy}}},
                   {"oracle", {{"C_T", c_oracle.value},
                               {"E_T", e_oracle.value},
                               {"H_T", h_oracle},
                               {"ensemble", ensemble_to_json(e_oracle.best)}}},
                   {"gap", {{"C_T", gap_c}, {"E_T", gap_e}}},
                   {"tol", tol},
                   {"pass", pass}});
  if (beaten) {
    err << "oracle value below the closed form by more than 1e-9\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<double> grid = parse_grid(o.grid_spec);
  if (o.format != "csv" && o.format != "json")
    throw UsageError("--format must be csv or json");

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  if (o.family == "degenerate-t") {
    header = {"t", "capacity", "r_star", "overlap"};
    for (double t : grid) {
      if (!(t > 0.0 && t <= 1.0))
        throw UsageError("degenerate-t grid values must lie in (0, 1]");
      const DegenerateCapacity dc = capacity_degenerate(t);
      rows.push_back({t, dc.value, dc.r_star, std::abs(1.0 - 2.0 * dc.r_star)});
    }
  } else if (o.family == "extremal-real") {
    header = {"u", "v", "capacity", "argmax_x", "argmax_y", "argmax_z", "overlap"};
    const double v = o.v_angle;
    for (double u : grid) {
      const KrausChannel ch = extremal_channel(std::cos(u), std::cos(v), std::sin(v), std::sin(u));
      const SignalReport rep = optimal_signal_report(ch, theta_from_channel(ch), capacity_options(o));
      const Bloch b = rep.capacity.argmax.bloch();
      rows.push_back({u, v, rep.capacity.value, b(0), b(1), b(2), rep.overlap});
    }
  } else {
    throw UsageError("unknown family '" + o.family + "' (expected degenerate-t or extremal-real)");
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file)
      throw UsageError("cannot write " + o.out_path);
    sink = &file;
  }
  if (o.format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i)
      *sink << (i ? "," : "") << header[i];
    *sink << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        *sink << (i ? "," : "") << format_real(row[i]);
      *sink << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i)
        obj[header[i]] = row[i];
      arr.push_back(obj);
    }
    write_json(*sink, {{"family", o.family}, {"rows", arr}});
  }
  return kOk;
}

} // namespace

// --- file formats -----------------------------------------------------------

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kraus"))
    throw UsageError("channel file must be an object with a \"kraus\" list");
  const json& ks = j.at("kraus");
  if (!ks.is_array() || ks.empty() || ks.size() > 8)
    throw UsageError("\"kraus\" must hold between 1 and 8 matrices");
  std::vector<ComplexMat2> mats;
  for (const json& m : ks)
    mats.push_back(matrix_from_json(m));
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string())
      throw UsageError("\"name\" must be a string");
    name = j.at("name").get<std::string>();
  }
  return KrausChannel(std::move(mats), std::move(name));
}

json channel_to_json(const KrausChannel& channel) {
  json ks = json::array();
  for (const auto& m : channel.kraus())
    ks.push_back(matrix_to_json(m));
  json j = {{"kraus", ks}};
  if (!channel.name().empty())
    j["name"] = channel.name();
  return j;
}

DensityOp state_from_json(const json& j) {
  if (j.is_object() && j.contains("bloch")) {
    const json& b = j.at("bloch");
    if (!b.is_array() || b.size() != 3)
      throw UsageError("\"bloch\" must be [x, y, z]");
    return DensityOp::from_bloch({b[0].get<double>(), b[1].get<double>(), b[2].get<double>()});
  }
  if (j.is_object() && j.contains("matrix"))
    return DensityOp(matrix_from_json(j.at("matrix")));
  throw UsageError("state file must contain \"bloch\" or \"matrix\"");
}

DensityOp state_from_flag(const std::string& spec) {
  const std::string prefix = "bloch:";
  if (spec.rfind(prefix, 0) != 0)
    throw UsageError("--state expects bloch:x,y,z");
  std::stringstream ss(spec.substr(prefix.size()));
  std::vector<double> v;
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number in --state: '" + item + "'");
    }
  }
  if (v.size() != 3)
    throw UsageError("--state expects three Bloch coordinates");
  return DensityOp::from_bloch({v[0], v[1], v[2]});
}

std::vector<double> parse_grid(const std::string& spec) {
  std::stringstream ss(spec);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) ||
      c.find(':') != std::string::npos)
    throw UsageError("grid must be start:stop:steps");
  double start, stop;
  long steps;
  try {
    std::size_t ua = 0, ub = 0, uc = 0;
    start = std::stod(a, &ua);
    stop = std::stod(b, &ub);
    steps = std::stol(c, &uc);
    if (ua != a.size() || ub != b.size() || uc != c.size())
      throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw UsageError("grid must be start:stop:steps, got '" + spec + "'");
  }
  if (steps < 1 || !std::isfinite(start) || !std::isfinite(stop))
    throw UsageError("grid needs finite endpoints and steps >= 1");
  if (steps == 1 && start != stop)
    throw UsageError("a one-point grid needs start == stop");
  std::vector<double> out;
  for (long i = 0; i < steps; ++i)
    out.push_back(steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / (steps - 1));
  return out;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& os, const json& j) {
  write_value(os, j);
  os << '\n';
}

// --- dispatcher -------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concurrence, entropy roofs and Holevo capacity of 1-qubit channels", "qroof"};
  app.require_subcommand(1);
  Options o;

  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--channel", o.channel_path, "channel JSON file")->required();
    sub->add_flag("--no-validate", o.no_validate, "skip the trace-preservation check");
    sub->add_option("--tol", o.tol, "tolerance override");
    sub->add_option("--trace-tol", o.trace_tol, "trace-preservation tolerance (default 1e-10)");
    sub->add_option("--seed", o.seed, "root seed (default 42)");
  };

  auto* validate = app.add_subcommand("validate", "check trace preservation");
  validate->add_option("--channel", o.channel_path, "channel JSON file")->required();
  validate->add_option("--tol", o.tol, "tolerance (default 1e-10)");
  validate->add_option("--seed", o.seed, "unused; accepted for uniformity");

  auto* theta = app.add_subcommand("theta", "anti-linear operator of a channel");
  add_channel(theta);

  auto* cap = app.add_subcommand("capacity", "Holevo one-shot capacity");
  add_channel(cap);
  cap->add_option("--restarts", o.restarts, "number of simplex starts (default 32)");

  auto* cmp = app.add_subcommand("oracle-compare", "closed forms against brute-force oracles");
  add_channel(cmp);
  cmp->add_option("--state", o.state_spec, "bloch:x,y,z");
  cmp->add_option("--state-file", o.state_path, "state JSON file");
  cmp->add_option("--restarts", o.restarts, "oracle restarts (default 16)");
  cmp->add_option("--grid", o.grid, "sphere grid size (default 64)");
  cmp->add_option("--refine-iters", o.refine_iters, "refinement iterations (default 200)");

  auto* sweep = app.add_subcommand("sweep", "capacity over a channel family");
  sweep->add_option("--family", o.family, "degenerate-t or extremal-real")->required();
  sweep->add_option("--grid", o.grid_spec, "start:stop:steps")->required();
  sweep->add_option("--out", o.out_path, "output file (default stdout)");
  sweep->add_option("--format", o.format, "csv or json (default csv)");
  sweep->add_option("--seed", o.seed, "root seed (default 42)");
  sweep->add_option("--restarts", o.restarts, "simplex starts for extremal-real");
  sweep->add_option("--v", o.v_angle, "second angle of extremal-real (default pi/6)");
  sweep->add_option("--tol", o.tol, "unused; accepted for uniformity");

  for (auto* sub : {validate, theta, cap, cmp})
    sub->add_option("--format", o.format, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (sweep->parsed() && sweep->count("--format") == 0)
    o.format = "csv";

  try {
    if (!sweep->parsed() && o.format != "json")
      throw UsageError("--format must be json for this subcommand");
    if (validate->parsed())
      return cmd_validate(o, out);
    if (theta->parsed())
      return cmd_theta(o, out);
    if (cap->parsed())
      return cmd_capacity(o, out);
    if (cmp->parsed()) {
      o.tol_is_trace = false;
      return cmd_oracle_compare(o, out, err);
    }
    return cmd_sweep(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Failure& e) {
    err << e.what() << '\n';
    write_json(out, {{"error", e.what()}, {"exit_code", e.code}});
    return e.code;
  } catch (const SpanTooLarge& e) {
    err << e.what() << '\n';
    write_json(out, {{"error", e.what()}, {"spanDim", e.span_dim()}, {"exit_code", 3}});
    return kConstruction;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << '\n';
    write_json(out, {{"error", e.what()}, {"exit_code", 4}});
    return kNumerical;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kNumerical;
  }
}

} // namespace qroof::cli
