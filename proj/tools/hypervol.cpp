// hypervol: volumes of hyperbolic polyhedra and quantum invariants of their 1-skeleta.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hypervol/catalog.hpp"
#include "hypervol/error.hpp"
#include "hypervol/glue.hpp"
#include "hypervol/kr.hpp"
#include "hypervol/tetra.hpp"
#include "json.hpp"

using namespace hypervol;
using nlohmann::json;

namespace {

std::string fmt6(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CatalogEntry load_entry(const std::string& source) {
  if (std::filesystem::exists(source) && std::filesystem::is_regular_file(source)) return load_polyhedron_file(source);
  return catalog_entry(source);
}

std::vector<Move> load_moves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace file '" + path + "'");
  std::vector<Move> moves;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    moves.push_back(parse_move(tok));
  }
  return moves;
}

void write_csv(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

EdgeParameter parse_parameter(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ValidationError("bad parameter '" + s + "': expected a:<radians> or p:<length>");
  std::string kind = s.substr(0, colon), value = s.substr(colon + 1);
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw ValidationError("bad number in parameter '" + s + "'");
  }
  if (kind == "a") return EdgeParameter::angle(v);
  if (kind == "p") return EdgeParameter::length(v);
  throw ValidationError("bad parameter kind '" + kind + "' in '" + s + "': expected a or p");
}

std::vector<long> parse_levels(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long r = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(r);
    } catch (const std::exception&) {
      throw ValidationError("bad level '" + tok + "'");
    }
  }
  if (out.empty()) throw ValidationError("no levels given");
  return out;
}

int cmd_tet_volume(const std::vector<std::string>& params, bool as_json) {
  if (params.size() != 6) throw ValidationError("tet-volume needs exactly six parameters");
  TetrahedronShape shape;
  for (int k = 0; k < 6; ++k) shape.params[k] = parse_parameter(params[k]);
  shape.validate();
  GramSignature sig = gram_signature(shape);
  TetraEvaluation ev = evaluate(shape);
  json j;
  j["type"] = to_string(ev.type);
  j["symbol"] = type_symbol(ev.type);
  j["volume"] = ev.volume;
  j["gram_signature"] = {sig.positive, sig.negative, sig.zero};
  j["euclidean_degenerate"] = ev.euclidean_degenerate;
  json angles = json::object();
  for (int k = 0; k < 6; ++k)
    if (shape.params[k].is_length()) angles["a" + std::to_string(k + 1)] = ev.angle[k];
  j["recovered_angles"] = angles;
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "type      " << to_string(ev.type) << " (" << type_symbol(ev.type) << ")\n";
  std::cout << "volume    " << fmt6(ev.volume) << "\n";
  std::cout << "gram      (+" << sig.positive << ", -" << sig.negative << ", 0x" << sig.zero << ")\n";
  if (ev.euclidean_degenerate) std::cout << "note      Euclidean degenerate\n";
  for (int k = 0; k < 6; ++k)
    if (shape.params[k].is_length())
      std::cout << "angle a" << k + 1 << "  " << fixed(ev.angle[k], 10) << "\n";
  return 0;
}

int cmd_volume(const std::string& source, const std::string& trace_path, const SolveOptions& opts, bool as_json) {
  CatalogEntry e = load_entry(source);
  PolyhedronSpec{e.name, e.graph}.validate();
  ReductionTrace tr = trace_path.empty() ? reduce(e.graph) : replay(e.graph, load_moves(trace_path));
  DecompositionPlan plan = plan_from_trace(e.graph, tr);
  GluingSolution sol = solve(plan, opts);
  CertificateReport cert = is_width_uniform_certificate(plan, sol);

  json j;
  j["name"] = e.name;
  json moves = json::array();
  for (const Move& m : tr.moves) moves.push_back(to_string(m));
  j["trace"] = moves;
  json types = json::object();
  for (const auto& [t, c] : plan.type_counts()) types[to_string(t)] = c;
  j["types"] = types;
  j["tetrahedra"] = plan.tetrahedra.size();
  json vars = json::array();
  for (std::size_t i = 0; i < sol.variables.size(); ++i)
    vars.push_back({{"faces", {sol.variables[i].first, sol.variables[i].second}}, {"length", sol.lengths[i]}});
  j["lengths"] = vars;
  j["volume"] = sol.volume;
  j["volume_6"] = fmt6(sol.volume);
  if (e.expected_volume) j["expected_volume"] = *e.expected_volume;
  json alts = json::array();
  for (const auto& a : sol.alternatives) alts.push_back({{"lengths", a.lengths}, {"volume", a.volume}});
  j["solutions"] = alts;
  j["multiplicity"] = sol.multiplicity_note;
  j["starts"] = {{"total", sol.starts}, {"feasible", sol.feasible_starts}, {"converged", sol.converged_starts}};
  j["width_uniform_certificate"] = {{"clean", cert.clean}, {"flags", cert.flags}};
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "polyhedron  " << e.name << "\n";
  std::cout << "trace      ";
  for (const Move& m : tr.moves) std::cout << ' ' << to_string(m);
  std::cout << "\ntetrahedra  " << plan.tetrahedra.size() << " (";
  bool first = true;
  for (const auto& [t, c] : plan.type_counts()) {
    std::cout << (first ? "" : ", ") << to_string(t) << ":" << c;
    first = false;
  }
  std::cout << ")\n";
  for (std::size_t i = 0; i < sol.variables.size(); ++i)
    std::cout << "length l(" << sol.variables[i].first << "," << sol.variables[i].second << ") = "
              << fixed(sol.lengths[i], 10) << "\n";
  std::cout << "volume      " << fmt6(sol.volume) << "\n";
  if (e.expected_volume) std::cout << "expected    " << fmt6(*e.expected_volume) << "\n";
  std::cout << "solutions   " << sol.alternatives.size() << " distinct from " << sol.converged_starts << " converged of "
            << sol.starts << " starts\n";
  for (const auto& n : sol.multiplicity_note) std::cout << "note        " << n << "\n";
  for (const auto& f : cert.flags) std::cout << "certificate " << f << "\n";
  return 0;
}

int cmd_kr(const std::string& source, const std::string& levels_arg, const std::string& csv, int threads,
           bool as_json) {
  CatalogEntry e = load_entry(source);
  std::vector<long> levels = parse_levels(levels_arg);
  std::vector<Coloring> colorings;
  for (long r : levels) colorings.push_back(coloring_sequence(e.graph, Level(r)));
  std::vector<std::pair<long, LogComplex>> values(levels.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < levels.size(); i = next++) {
      try {
        values[i] = {levels[i], evaluate_network(e.graph, colorings[i], Level(levels[i]))};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(levels.size())); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  GrowthSeries gs = growth_series(values);
  double geometric = std::numeric_limits<double>::quiet_NaN();
  try {
    DecompositionPlan plan = plan_from_trace(e.graph, reduce(e.graph));
    geometric = solve(plan).volume;
  } catch (const Error&) {
  }
  std::ostringstream table;
  table << "r,value\n";
  for (const auto& p : gs.points) table << p.r << "," << fixed(p.value, 10) << "\n";
  if (!csv.empty()) write_csv(csv, table.str());
  json j;
  j["name"] = e.name;
  json pts = json::array();
  for (const auto& p : gs.points)
    pts.push_back({{"r", p.r}, {"value", number_or_null(p.value)}, {"phase", p.phase}, {"excluded", p.excluded}});
  j["series"] = pts;
  j["volume"] = number_or_null(geometric);
  if (gs.has_fit) j["extrapolation"] = {{"value", gs.extrapolated}, {"fit_residual", gs.fit_residual}};
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << table.str();
  std::cout << "volume " << fmt6(geometric) << "\n";
  if (gs.has_fit) std::cout << "extrapolated " << fmt6(gs.extrapolated) << " (fit residual " << fmt6(gs.fit_residual) << ")\n";
  return 0;
}

int cmd_scan(const std::string& mode, long r, long from, long to, const std::string& variant, const std::string& csv,
             int threads, bool as_json) {
  Level level(r);
  std::vector<ScanPoint> pts;
  std::string index_name;
  if (mode == "sixj") {
    index_name = "k";
    if (to < 0) to = 2 * (r - 2) / 6;
    pts = single_sixj_scan(level, from, to, threads);
  } else if (mode == "doubly-truncated") {
    index_name = "l";
    if (to < 0) to = (r - 1) / 2;
    JRange range = variant == "odd" ? JRange::Odd : JRange::Display;
    pts = doubly_truncated_scan(level, from, to, range, threads);
  } else {
    throw ValidationError("unknown scan mode '" + mode + "': expected sixj or doubly-truncated");
  }
  std::ostringstream table;
  table << index_name << ",angle,value,reference\n";
  for (const auto& p : pts)
    table << p.index << "," << fixed(p.angle, 10) << "," << fixed(p.value, 10) << "," << fixed(p.reference, 10) << "\n";
  if (!csv.empty()) write_csv(csv, table.str());
  if (as_json) {
    json arr = json::array();
    for (const auto& p : pts)
      arr.push_back({{index_name, p.index},
                     {"angle", p.angle},
                     {"value", number_or_null(p.value)},
                     {"reference", number_or_null(p.reference)},
                     {"in_range", p.in_range}});
    std::cout << json{{"mode", mode}, {"r", r}, {"points", arr}}.dump(2) << "\n";
    return 0;
  }
  std::cout << table.str();
  return 0;
}

int cmd_catalog(const std::string& export_dir, bool as_json) {
  json arr = json::array();
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    if (!export_dir.empty()) {
      std::filesystem::create_directories(export_dir);
      std::string file = name;
      std::replace(file.begin(), file.end(), ':', '-');
      std::replace(file.begin(), file.end(), '/', '-');
      std::ofstream out(std::filesystem::path(export_dir) / (file + ".json"));
      if (!out) throw ValidationError("cannot write into '" + export_dir + "'");
      out << to_json(e).dump(2) << "\n";
    }
    json j = {{"name", name}, {"faces", e.graph.face_count()}, {"notes", e.notes}};
    j["expected_volume"] = e.expected_volume ? json(*e.expected_volume) : json(nullptr);
    arr.push_back(j);
  }
  if (as_json) {
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  for (const auto& j : arr) {
    std::cout << j["name"].get<std::string>() << "  faces " << j["faces"].get<int>();
    if (!j["expected_volume"].is_null()) std::cout << "  volume " << fmt6(j["expected_volume"].get<double>());
    std::cout << "  " << j["notes"].get<std::string>() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumes of hyperbolic polyhedra and quantum 6j asymptotics"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string csv;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  SolveOptions opts;
  app.add_flag("--json", as_json, "JSON output");
  app.add_option("--csv", csv, "also write the table to this CSV file");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", opts.tol, "residual tolerance for the gluing solver");
  app.add_option("--seed", opts.seed, "seed for multi-start sampling");

  auto* tet = app.add_subcommand("tet-volume", "volume of one generalised tetrahedron");
  std::vector<std::string> params;
  tet->add_option("params", params, "six parameters a1..a6, each a:<radians> or p:<length>")->required()->expected(6);

  auto* vol = app.add_subcommand("volume", "volume of a polyhedron by decomposition and gluing");
  std::string source, trace_path;
  vol->add_option("polyhedron", source, "polyhedron file or catalog name")->required();
  vol->add_option("--trace", trace_path, "move script (ih:<edge> / cap:<face> tokens)");

  auto* kr = app.add_subcommand("kr", "quantum invariant growth rates");
  std::string levels = "483,963";
  kr->add_option("polyhedron", source, "polyhedron file or catalog name")->required();
  kr->add_option("--levels", levels, "comma-separated odd levels");

  auto* scan = app.add_subcommand("scan", "asymptotic scans of 6j-symbols");
  std::string mode = "sixj", variant = "display";
  long r = 101, from = 0, to = -1;
  scan->add_option("--mode", mode, "sixj or doubly-truncated");
  scan->add_option("--r", r, "odd level");
  scan->add_option("--from", from, "first index");
  scan->add_option("--to", to, "last index (default: whole admissible range)");
  scan->add_option("--variant", variant, "doubly-truncated j range: display or odd")
      ->check(CLI::IsMember({"display", "odd"}));

  auto* cat = app.add_subcommand("catalog", "list built-in polyhedra");
  std::string export_dir;
  cat->add_option("--export", export_dir, "write each entry as JSON into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::Validation);
  }

  try {
    if (*tet) return cmd_tet_volume(params, as_json);
    if (*vol) return cmd_volume(source, trace_path, opts, as_json);
    if (*kr) return cmd_kr(source, levels, csv, threads, as_json);
    if (*scan) return cmd_scan(mode, r, from, to, variant, csv, threads, as_json);
    if (*cat) return cmd_catalog(export_dir, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::Validation);
  }
  return 0;
}
