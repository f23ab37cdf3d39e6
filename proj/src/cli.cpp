#include "clusterent/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterent/classify.hpp"
#include "clusterent/criteria.hpp"
#include "clusterent/error.hpp"
#include "clusterent/graph_basis.hpp"
#include "clusterent/oracle_solver.hpp"
#include "clusterent/ree_analytic.hpp"
#include "clusterent/state_model.hpp"

namespace clusterent::cli {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// nlohmann's own dump prints the shortest round-trip form; every float here
// goes out with 17 significant digits instead.
void write_json(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << Json(key).dump() << ':';
        write_json(os, value);
      }
      os << '}';
      break;
    }
    case Json::value_t::array: {
      os << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << ',';
        first = false;
        write_json(os, value);
      }
      os << ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) {
        os << format_double(x);
      } else {
        os << "null";
      }
      break;
    }
    default:
      os << j.dump();
  }
}

void emit(std::ostream& os, const Json& j) {
  write_json(os, j);
  os << '\n';
}

Json to_json(const FVector& f) {
  Json arr = Json::array();
  for (double x : f.values()) arr.push_back(x);
  return arr;
}

Json state_json(const FVector& f) { return Json{{"F", to_json(f)}}; }

std::string read_all(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return read_all(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_all(file);
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

HermitianMatrix parse_density(const Json& j) {
  HermitianMatrix rho = HermitianMatrix::Zero();
  auto fill = [&](const char* key, bool imag) {
    if (!j.contains(key)) return;
    const Json& rows = j.at(key);
    if (!rows.is_array() || rows.size() != kBasisSize) {
      throw Error(ErrorCode::ParseError, std::string(key) + " must be a 16x16 array");
    }
    for (int r = 0; r < kBasisSize; ++r) {
      const auto row = number_list(rows[static_cast<std::size_t>(r)], key);
      if (row.size() != kBasisSize) {
        throw Error(ErrorCode::ParseError, std::string(key) + " must be a 16x16 array");
      }
      for (int c = 0; c < kBasisSize; ++c) {
        auto& entry = rho(r, c);
        if (imag) {
          entry.imag(row[static_cast<std::size_t>(c)]);
        } else {
          entry.real(row[static_cast<std::size_t>(c)]);
        }
      }
    }
  };
  if (!j.contains("re")) throw Error(ErrorCode::ParseError, "density matrix needs \"re\"");
  fill("re", false);
  fill("im", true);
  return rho;
}

// Accepts {"F": [...]} or a density matrix {"re": ..., "im": ...}, which is twirled.
FVector parse_state(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "state JSON must be an object");
  if (j.contains("F")) {
    const auto values = number_list(j.at("F"), "F");
    if (values.size() != kBasisSize) throw Error(ErrorCode::ParseError, "F must have 16 entries");
    return FVector::validate(values);
  }
  if (j.contains("re")) return twirl_to_fvector(parse_density(j));
  throw Error(ErrorCode::ParseError, "expected \"F\" or a density matrix with \"re\"/\"im\"");
}

std::vector<FVector> parse_corpus(const std::string& text) {
  std::vector<FVector> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_state(line));
  }
  return out;
}

std::vector<double> split_numbers(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw CLI::ValidationError(flag, "expected comma-separated numbers, got '" + text + "'");
    }
    out.push_back(x);
  }
  if (out.size() != count) {
    throw CLI::ValidationError(flag, "expected " + std::to_string(count) + " numbers");
  }
  return out;
}

double solver_tol_default() {
  const char* env = std::getenv("CLUSTER_ENT_TOL");
  if (env == nullptr || *env == '\0') return kDefaultSolverTol;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (*end != '\0' || !(tol > 0)) {
    throw Error(ErrorCode::DomainError, std::string("CLUSTER_ENT_TOL is not a positive number: ") + env);
  }
  return tol;
}

Json violated_list(const CriteriaReport& r) {
  Json v = Json::array();
  for (int k = 0; k < kInequalityCount; ++k) {
    if (r.violated[static_cast<std::size_t>(k)]) v.push_back(to_string(static_cast<Inequality>(k)));
  }
  return v;
}

Json margins_list(const CriteriaReport& r) {
  Json m = Json::array();
  for (double x : r.margins) m.push_back(x);
  return m;
}

Json verify_row(const FVector& f, const VerifyReport& v) {
  Json row;
  row["F"] = to_json(f);
  row["region"] = to_string(v.analytic.label.region);
  row["half"] = to_string(v.analytic.label.half);
  row["class"] = to_string(v.analytic.closest.boundary);
  row["E_analytic"] = v.analytic.value;
  row["E_oracle"] = v.oracle.value;
  row["discrepancy"] = v.discrepancy;
  row["same_active_set"] = v.same_active_set;
  row["lambda_analytic"] = to_json(v.analytic.closest.lambda);
  row["lambda_oracle"] = to_json(v.oracle.lambda);
  row["iterations"] = v.oracle.iterations;
  row["gap"] = v.oracle.gap;
  row["feasibility_residual"] = v.oracle.feasibility_residual;
  return row;
}

// Strata for batch verification: the seven entangled regions on the first
// half, then one stratum cycling through them on the second half.
RegionBias stratum(std::size_t i) {
  constexpr std::size_t kStrata = std::size(kEntangledRegions) + 1;
  const std::size_t s = i % kStrata;
  if (s < std::size(kEntangledRegions)) return {kEntangledRegions[s], Half::First, std::nullopt};
  const std::size_t r = (i / kStrata) % std::size(kEntangledRegions);
  return {kEntangledRegions[r], Half::Second, std::nullopt};
}

std::uint64_t item_seed(std::uint64_t seed, std::size_t i) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(i);
}

std::ostream& open_out(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot write " + path);
  return file;
}

std::string region_label(const std::optional<Region>& r) {
  return r ? std::string(to_string(*r)) : std::string("unphysical");
}

void write_grid_csv(std::ostream& os, const RegionGrid& grid) {
  os << "x,y,label\n";
  for (const GridCell& c : grid.cells) {
    os << format_double(c.x) << ',' << format_double(c.y) << ',' << region_label(c.region) << '\n';
  }
}

Json grid_boundaries(const RegionGrid& grid) {
  Json j;
  j["p0"] = grid.p0;
  j["plane"] = grid.plane == GridPlane::P3P7 ? "p3-p7" : "p3-p4";
  j["fixed"] = grid.fixed;
  j["axis_max"] = grid.axis_max;
  j["boundaries"] = Json::array();
  for (const Polyline& line : grid.boundaries) {
    Json pts = Json::array();
    for (const auto& p : line.points) pts.push_back(Json::array({p[0], p[1]}));
    j["boundaries"].push_back(Json{{"name", line.name}, {"points", pts}});
  }
  j["intersections"] = Json::array();
  for (const GridPoint& p : grid.intersections) {
    j["intersections"].push_back(Json{{"name", p.name}, {"x", p.x}, {"y", p.y}});
  }
  return j;
}

struct Options {
  std::string input = "-";
  double eps = 0.0;
  bool nats = false;
  std::optional<double> tol;
  std::string batch;
  std::uint64_t seed = 42;
  std::optional<std::size_t> count;
  double p0 = 0.3;
  int res = 400;
  std::optional<double> axis_max;
  std::optional<double> p4_slice;
  double p4 = 0.0;
  std::string out;
  double l0 = 0.2;
  int surface_res = 100;
  bool all_points = false;
  std::string q = "0.1,0.1,0.1,0.1";
  std::string quad;
  int label = 0;
  std::string region;
  std::string half = "first";
  std::size_t n = 1;
};

int dispatch(CLI::App& app, Options& o, std::istream& in, std::ostream& out) {
  const std::string verb = app.get_subcommands().front()->get_name();

  if (verb == "classify") {
    const FVector f = parse_state(read_source(o.input, in));
    const Verdict v = biseparable_verdict(f, o.eps);
    const RegionLabel label = classify(f, o.eps);
    Json j;
    j["biseparable"] = v.biseparable;
    j["region"] = to_string(label.entangled() ? label.region : label.detail);
    j["half"] = to_string(label.half);
    j["violated"] = violated_list(v.report);
    j["margins"] = margins_list(v.report);
    j["raw_violations"] = v.report.raw.size();
    emit(out, j);
    return kExitOk;
  }

  if (verb == "ree") {
    const FVector f = parse_state(read_source(o.input, in));
    const REEResult r = genuine_ree(f, o.eps);
    const double scale = o.nats ? std::numbers::ln2 : 1.0;
    Json j;
    j["E"] = r.value * scale;
    j["unit"] = o.nats ? "nats" : "bits";
    j["region"] = to_string(r.label.entangled() ? r.label.region : r.label.detail);
    j["half"] = to_string(r.label.half);
    j["formula"] = to_string(r.formula);
    j["closest"] = state_json(r.closest.lambda);
    j["class"] = to_string(r.closest.boundary);
    emit(out, j);
    return kExitOk;
  }

  if (verb == "verify") {
    const SolveOptions solve{o.tol.value_or(solver_tol_default())};
    std::vector<FVector> states;
    if (!o.batch.empty() && o.count) {
      // Generate a stratified corpus, keep it next to the results, verify it.
      std::ofstream corpus;
      std::ostream& cs = open_out(o.batch, corpus, out);
      for (std::size_t i = 0; i < *o.count; ++i) {
        states.push_back(sample_random(item_seed(o.seed, i), stratum(i)));
        if (&cs != &out) emit(cs, state_json(states.back()));
      }
    } else if (!o.batch.empty()) {
      states = parse_corpus(read_source(o.batch, in));
    } else if (o.count) {
      for (std::size_t i = 0; i < *o.count; ++i) {
        states.push_back(sample_random(item_seed(o.seed, i), stratum(i)));
      }
    } else {
      states.push_back(parse_state(read_source(o.input, in)));
    }
    for (const FVector& f : states) emit(out, verify_row(f, verify(f, solve)));
    return kExitOk;
  }

  if (verb == "regions") {
    const GridPlane plane = o.p4_slice ? GridPlane::P3P4 : GridPlane::P3P7;
    const double fixed = o.p4_slice ? *o.p4_slice : o.p4;
    const double axis = o.axis_max.value_or(1.0 - o.p0);
    const RegionGrid grid = region_grid(o.p0, axis, o.res, plane, fixed);
    if (o.out.empty()) {
      write_grid_csv(out, grid);
      return kExitOk;
    }
    const auto comma = o.out.find(',');
    if (comma == std::string::npos) {
      throw CLI::ValidationError("--out", "expected GRID.csv,BOUNDARIES.json");
    }
    std::ofstream csv_file, json_file;
    write_grid_csv(open_out(o.out.substr(0, comma), csv_file, out), grid);
    emit(open_out(o.out.substr(comma + 1), json_file, out), grid_boundaries(grid));
    return kExitOk;
  }

  if (verb == "bisep-surface") {
    const SurfaceGrid grid = bisep_surface(o.l0, o.surface_res);
    std::ofstream file;
    std::ostream& os = open_out(o.out, file, out);
    os << "l3,l7,l4,feasible,surfaces\n";
    for (const SurfacePoint& p : grid.points) {
      if (!o.all_points && !(p.feasible && p.surface_mask != 0)) continue;
      std::string names;
      for (Surface s : p.surfaces()) {
        if (!names.empty()) names += '|';
        names += to_string(s);
      }
      os << format_double(p.l3) << ',' << format_double(p.l7) << ',' << format_double(p.l4) << ','
         << (p.feasible ? 1 : 0) << ',' << names << '\n';
    }
    return kExitOk;
  }

  if (verb == "twirl") {
    emit(out, state_json(parse_state(read_source(o.input, in))));
    return kExitOk;
  }

  if (verb == "gen") {
    const std::string kind = app.get_subcommands().front()->get_subcommands().front()->get_name();
    if (kind == "dephase") {
      const auto q = split_numbers(o.q, 4, "--q");
      emit(out, state_json(dephasing_state({{q[0], q[1], q[2], q[3]}})));
    } else if (kind == "pure") {
      emit(out, state_json(FVector::basis(o.label)));
    } else if (kind == "uniform") {
      emit(out, state_json(FVector::uniform()));
    } else {
      const auto q = split_numbers(o.quad, 4, "--quad");
      emit(out, state_json(realize_quad({q[0], q[1], q[2], q[3]})));
    }
    return kExitOk;
  }

  // sample
  std::optional<RegionBias> bias;
  if (!o.region.empty()) {
    const auto region = region_from_string(o.region);
    const auto half = half_from_string(o.half);
    if (!region) throw CLI::ValidationError("--region", "unknown region '" + o.region + "'");
    if (!half) throw CLI::ValidationError("--half", "unknown half '" + o.half + "'");
    bias = RegionBias{*region, *region == Region::Biseparable ? Half::None : *half, std::nullopt};
  }
  for (std::size_t i = 0; i < o.n; ++i) emit(out, state_json(sample_random(item_seed(o.seed, i), bias)));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Genuine entanglement of four-qubit cluster-diagonal states", "cluster-ent"};
  app.require_subcommand(1, 1);
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "Criteria verdict and region of a state");
  classify_cmd->add_option("--input", o.input, "State JSON, '-' for stdin");
  classify_cmd->add_option("--eps", o.eps, "Violation threshold on the margins");

  auto* ree_cmd = app.add_subcommand("ree", "Closed-form relative entropy of genuine entanglement");
  ree_cmd->add_option("--input", o.input, "State JSON, '-' for stdin");
  ree_cmd->add_option("--eps", o.eps, "Violation threshold on the margins");
  ree_cmd->add_flag("--nats", o.nats, "Report in nats instead of bits");

  auto* verify_cmd = app.add_subcommand("verify", "Compare the closed form with the numerical oracle");
  verify_cmd->add_option("--input", o.input, "State JSON, '-' for stdin");
  verify_cmd->add_option("--tol", o.tol, "Solver tolerance in bits")->check(CLI::Range(1e-10, 1e-3));
  verify_cmd->add_option("--batch", o.batch,
                         "JSONL corpus; with --n it is generated (stratified) and written here");
  verify_cmd->add_option("--seed", o.seed, "Seed for generated states");
  verify_cmd->add_option("--n", o.count, "Number of stratified random states")->check(CLI::PositiveNumber);

  auto* regions_cmd = app.add_subcommand("regions", "Region map of one half in the p3-p7 plane");
  regions_cmd->add_option("--p0", o.p0, "Block maximum p0")->check(CLI::Range(0.0, 1.0));
  regions_cmd->add_option("--res", o.res, "Nodes per axis")->check(CLI::Range(2, 100000));
  regions_cmd->add_option("--axis-max", o.axis_max, "Axis extent (default 1 - p0)");
  auto* slice = regions_cmd->add_option("--p4-slice", o.p4_slice,
                                        "Switch to the p3-p4 plane with p7 held at this value");
  regions_cmd->add_option("--p4", o.p4, "p4 held fixed in the p3-p7 plane")->excludes(slice);
  regions_cmd->add_option("--out", o.out, "GRID.csv,BOUNDARIES.json (default: CSV to stdout)");

  auto* surface_cmd = app.add_subcommand("bisep-surface", "Border surfaces of the biseparable polytope");
  surface_cmd->add_option("--l0", o.l0, "Fixed l0")->check(CLI::Range(0.0, 1.0));
  surface_cmd->add_option("--res", o.surface_res, "Nodes per axis")->check(CLI::Range(2, 1000));
  surface_cmd->add_option("--out", o.out, "CSV path (default stdout)");
  surface_cmd->add_flag("--all", o.all_points, "Emit every node, not only border nodes");

  auto* twirl_cmd = app.add_subcommand("twirl", "Cluster-basis fidelities of a density matrix");
  twirl_cmd->add_option("--input", o.input, "Density matrix JSON, '-' for stdin");

  auto* gen_cmd = app.add_subcommand("gen", "Emit a named state");
  gen_cmd->require_subcommand(1, 1);
  gen_cmd->add_subcommand("dephase", "Dephased cluster state")
      ->add_option("--q", o.q, "Flip probabilities q1,q2,q3,q4");
  gen_cmd->add_subcommand("pure", "Cluster basis state")
      ->add_option("--label", o.label, "Basis label 0..15")
      ->check(CLI::Range(0, kBasisSize - 1));
  gen_cmd->add_subcommand("uniform", "Maximally mixed state");
  gen_cmd->add_subcommand("quad", "State realizing first-half parameters")
      ->add_option("--quad", o.quad, "p0,p3,p4,p7")
      ->required();

  auto* sample_cmd = app.add_subcommand("sample", "Random states as JSONL");
  sample_cmd->add_option("--seed", o.seed, "Seed");
  sample_cmd->add_option("--n", o.n, "Number of states")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--region", o.region, "Target region (rejection sampling)");
  sample_cmd->add_option("--half", o.half, "first or second");

  std::vector<const char*> argv{"cluster-ent"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return dispatch(app, o, in, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << e.get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    emit(err, Json{{"error", to_string(e.code())}, {"message", e.what()}});
    return kExitDomain;
  }
}

}  // namespace clusterent::cli
