#include <CLI11.hpp>
#include <coxpack/balls.hpp>
#include <coxpack/canon.hpp>
#include <coxpack/cone.hpp>
#include <coxpack/families.hpp>
#include <coxpack/graph.hpp>
#include <coxpack/orbit.hpp>
#include <coxpack/quadratic.hpp>
#include <coxpack/svg.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace coxpack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

struct CliError {
  int code;
  std::string message;
};

CoxeterGraph load_graph(const std::string& path) {
  if (!fs::exists(path)) throw CliError{kExitInputError, "no such file: " + path};
  try {
    return parse_cox_file(path);
  } catch (const Error& e) {
    throw CliError{kExitInputError, path + ": " + e.what()};
  }
}

std::string edge_text(const CoxeterGraph& g) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, j, l] : g.edges()) {
    if (!first) os << "  ";
    first = false;
    os << i << "-" << j << ":";
    switch (l.kind) {
      case EdgeLabel::Solid: os << l.m; break;
      case EdgeLabel::Infinite: os << "inf"; break;
      case EdgeLabel::Dotted: os << "c" << l.c; break;
      case EdgeLabel::None: break;
    }
  }
  if (first) os << "(none)";
  return os.str();
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string level_text(const LevelResult& lr) {
  std::ostringstream os;
  os << lr.level << (lr.strict ? " (strict)" : "");
  return os.str();
}

// Canonicalized basis plus the pieces every geometric command needs.
struct Analysis {
  CoxeterGraph g;
  GraphType type = GraphType::Indefinite;
  Signature sig;
  int corank = 0;
  LevelResult graph_lvl;
  std::optional<RootBasis> basis;        // absent for affine graphs
  std::optional<LevelResult> system_lvl; // absent for affine graphs
};

Analysis analyze_graph(const CoxeterGraph& g, const Tolerances& tol) {
  Analysis a;
  a.g = g;
  a.type = classify_type(g, tol);
  a.sig = signature(BilinearForm(gram_matrix(g)), tol);
  a.corank = a.sig.n_zero;
  a.graph_lvl = graph_level(g, tol);
  if (a.type != GraphType::Affine) {
    try {
      a.basis = canonicalize(g, tol);
      a.system_lvl = system_level(*a.basis, tol);
    } catch (const Error& e) {
      throw CliError{kExitInputError, std::string("canonicalization: ") + e.what()};
    }
  }
  return a;
}

int cmd_analyze(const std::string& path, const Tolerances& tol) {
  Analysis a = analyze_graph(load_graph(path), tol);
  std::cout << "file: " << path << "\n";
  std::cout << "rank: " << a.g.rank() << "\n";
  std::cout << "edges: " << edge_text(a.g) << "\n";
  std::cout << "gram:\n";
  Eigen::MatrixXd m = gram_matrix(a.g);
  for (int i = 0; i < m.rows(); ++i) {
    std::cout << " ";
    for (int j = 0; j < m.cols(); ++j)
      std::cout << " " << std::setw(9) << std::setprecision(5) << std::fixed
                << m(i, j);
    std::cout << "\n";
  }
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6);
  std::cout << "signature: (" << a.sig.n_plus << ", " << a.sig.n_zero << ", "
            << a.sig.n_minus << ")\n";
  std::cout << "corank: " << a.corank << "\n";
  std::cout << "type: " << to_string(a.type) << "\n";
  if (a.type == GraphType::Affine) {
    std::cout << "level: 0 (affine)\n";
    return kExitOk;
  }
  std::cout << "graph level: " << level_text(a.graph_lvl) << "\n";
  std::cout << "system level: " << level_text(*a.system_lvl) << "\n";
  auto ws = weights(*a.basis, tol);
  int n_space = 0;
  for (const auto& w : ws) n_space += w.causal == CausalClass::SpaceLike;
  std::cout << "weights: " << ws.size() << " (" << n_space << " space-like, "
            << (ws.size() - n_space) << " non-space-like)\n";
  for (std::size_t k = 0; k < ws.size(); ++k) {
    std::cout << "  #" << k << " facet={";
    for (std::size_t t = 0; t < ws[k].indices.size(); ++t)
      std::cout << (t ? "," : "") << ws[k].indices[t];
    std::cout << "} norm=" << ws[k].norm << " " << to_string(ws[k].causal)
              << "\n";
  }
  return kExitOk;
}

int cmd_level(const std::string& path, const Tolerances& tol) {
  Analysis a = analyze_graph(load_graph(path), tol);
  if (a.type == GraphType::Affine) {
    std::cout << "level: 0 (affine)\n";
    return kExitOk;
  }
  if (a.type == GraphType::Finite) {
    std::cout << "level: 0 (finite)\n";
    return kExitOk;
  }
  std::cout << "graph level: " << level_text(a.graph_lvl) << "\n";
  std::cout << "system level: " << level_text(*a.system_lvl) << "\n";
  return kExitOk;
}

int cmd_weights(const std::string& path, const Tolerances& tol, bool as_json) {
  Analysis a = analyze_graph(load_graph(path), tol);
  if (a.type == GraphType::Affine)
    throw CliError{kExitInputError, "affine graph has no weight set"};
  auto ws = weights(*a.basis, tol);
  if (as_json) {
    json out = json::array();
    for (const auto& w : ws)
      out.push_back({{"facet", w.indices},
                     {"vector", vector_json(w.vector)},
                     {"norm", w.norm},
                     {"causal", to_string(w.causal)}});
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t k = 0; k < ws.size(); ++k) {
    std::cout << "#" << k << " facet={";
    for (std::size_t t = 0; t < ws[k].indices.size(); ++t)
      std::cout << (t ? "," : "") << ws[k].indices[t];
    std::cout << "} norm=" << ws[k].norm << " " << to_string(ws[k].causal)
              << " vector=[";
    for (int i = 0; i < ws[k].vector.size(); ++i)
      std::cout << (i ? ", " : "") << ws[k].vector(i);
    std::cout << "]\n";
  }
  return kExitOk;
}

OrbitBudget make_budget(int max_word_length, double max_height,
                        long long max_elements) {
  OrbitBudget b;
  b.max_word_length = max_word_length;
  b.max_height = max_height;
  b.max_elements = max_elements;
  if (!b.has_finite_bound())
    throw CliError{kExitInputError,
                   "orbit budget needs at least one finite bound "
                   "(--max-word-length, --max-height or --max-balls)"};
  return b;
}

int cmd_orbit(const std::string& path, const Tolerances& tol,
              const OrbitBudget& budget, const std::string& kind, int threads,
              const std::string& out_path) {
  Analysis a = analyze_graph(load_graph(path), tol);
  if (a.type == GraphType::Affine)
    throw CliError{kExitInputError, "affine graph has no orbit quotient"};
  std::vector<OrbitElement> elems;
  if (kind == "roots")
    elems = orbit_roots(*a.basis, budget, tol, threads);
  else
    elems = orbit_weights(*a.basis, budget, tol, threads);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw CliError{kExitInputError, "cannot write " + out_path};
    os = &file;
  }
  for (const auto& e : elems) {
    json line = {{"word_length", e.word_length},
                 {"height", e.height},
                 {"vector", vector_json(e.vector)}};
    *os << line.dump() << "\n";
  }
  std::cerr << kind << ": " << elems.size() << " elements\n";
  return kExitOk;
}

json ball_json(const Ball& b) {
  json j = {{"dim", b.dim},
            {"curvature", b.curvature},
            {"source", vector_json(b.source)}};
  if (b.is_halfspace()) {
    j["halfspace"] = true;
    j["normal"] = vector_json(b.normal);
    j["offset"] = b.offset;
  } else {
    j["halfspace"] = false;
    j["center"] = vector_json(b.center);
    j["radius"] = b.radius();
  }
  return j;
}

const char* histogram_name(int k) {
  return to_string(static_cast<PairRelation::Kind>(k));
}

// Shared by pack and render: orbit the weights, keep the space-like ones,
// convert to balls in the packing frame.
struct PackResult {
  std::vector<OrbitElement> elements;
  std::vector<Ball> balls;
  PackingReport report;
  LevelResult level;
};

PackResult run_packing(const Analysis& a, const OrbitBudget& budget,
                       const Tolerances& tol, int threads) {
  PackResult r;
  if (!is_lorentzian(signature(a.basis->form, tol)))
    throw CliError{kExitInputError,
                   "not Lorentzian: signature (" + std::to_string(a.sig.n_plus) +
                       ", " + std::to_string(a.sig.n_zero) + ", " +
                       std::to_string(a.sig.n_minus) + ")"};
  r.level = *a.system_lvl;
  r.elements = orbit_weights(*a.basis, budget, tol, threads);
  LorentzFrame frame = packing_frame(*a.basis, tol);
  for (const auto& e : r.elements) {
    if (a.basis->form.norm_of(e.vector) <= tol.zero) continue;
    r.balls.push_back(ball_of_vector(e.vector, frame, tol));
  }
  r.report = verify_packing(r.elements, a.basis->form, tol, threads);
  return r;
}

void print_report(const PackingReport& rep, std::ostream& os) {
  os << "balls: " << rep.ball_count << " (" << rep.future_directed
     << " future-directed)\n";
  os << "pair histogram:";
  for (int k = 0; k < 5; ++k)
    os << " " << histogram_name(k) << "=" << rep.histogram[k];
  os << "\n";
  os << "is_packing: " << (rep.is_packing ? "yes" : "no") << "\n";
  if (!rep.violations.empty()) {
    os << "violations (first " << rep.violations.size() << "):";
    for (const auto& [i, j] : rep.violations) os << " (" << i << "," << j << ")";
    os << "\n";
  }
}

int cmd_pack(const std::string& path, const Tolerances& tol,
             const OrbitBudget& budget, int threads, bool allow_overlap,
             const std::string& svg_path, const std::string& json_path) {
  Analysis a = analyze_graph(load_graph(path), tol);
  if (a.type == GraphType::Affine)
    throw CliError{kExitInputError, "affine graph carries no packing"};
  if (!allow_overlap) {
    LevelResult lv = *a.system_lvl;
    if (lv.level != 2)
      throw CliError{kExitInputError,
                     "not level 2 (measured level " + std::to_string(lv.level) +
                         "); pass --allow-overlap to emit anyway"};
  }
  PackResult r = run_packing(a, budget, tol, threads);
  if (!json_path.empty()) {
    json out = {{"rank", a.g.rank()},
                {"level", r.level.level},
                {"strict", r.level.strict},
                {"ball_count", r.report.ball_count},
                {"future_directed", r.report.future_directed},
                {"is_packing", r.report.is_packing}};
    json hist;
    for (int k = 0; k < 5; ++k) hist[histogram_name(k)] = r.report.histogram[k];
    out["histogram"] = hist;
    out["balls"] = json::array();
    for (const auto& b : r.balls) out["balls"].push_back(ball_json(b));
    std::ofstream f(json_path);
    if (!f) throw CliError{kExitInputError, "cannot write " + json_path};
    f << out.dump(2) << "\n";
  }
  if (!svg_path.empty()) {
    try {
      std::string svg = render_svg(r.balls);
      std::ofstream f(svg_path);
      if (!f) throw CliError{kExitInputError, "cannot write " + svg_path};
      f << svg;
    } catch (const UnsupportedDimension& e) {
      throw CliError{kExitInputError, std::string("svg: ") + e.what()};
    }
  }
  print_report(r.report, std::cout);
  if (!r.report.is_packing && !allow_overlap) return kExitVerifyFail;
  return kExitOk;
}

int cmd_render(const std::string& path, const Tolerances& tol,
               const OrbitBudget& budget, int threads,
               const std::string& out_path, int width, int overlay_samples,
               double overlay_min_height) {
  Analysis a = analyze_graph(load_graph(path), tol);
  if (a.type == GraphType::Affine)
    throw CliError{kExitInputError, "affine graph carries no packing"};
  PackResult r = run_packing(a, budget, tol, threads);
  RenderOptions opts;
  opts.width_px = width;
  if (overlay_samples > 0) {
    LorentzFrame frame = packing_frame(*a.basis, tol);
    std::vector<Eigen::VectorXd> samples;
    try {
      samples = limit_root_samples(*a.basis, overlay_min_height,
                                   overlay_samples, tol);
    } catch (const InsufficientDepth& e) {
      throw CliError{kExitVerifyFail, std::string("limit roots: ") + e.what()};
    }
    for (const auto& s : samples)
      if (auto p = isotropic_point(s, frame, tol)) opts.overlay_points.push_back(*p);
  }
  std::string svg;
  try {
    svg = render_svg(r.balls, opts);
  } catch (const UnsupportedDimension& e) {
    throw CliError{kExitInputError, std::string("svg: ") + e.what()};
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << svg;
  } else {
    std::ofstream f(out_path);
    if (!f) throw CliError{kExitInputError, "cannot write " + out_path};
    f << svg;
  }
  print_report(r.report, std::cerr);
  return kExitOk;
}

// One named classification run: the family result plus the published counts
// it is checked against.
struct FamilyRun {
  std::string name;
  GraphFamily fam;
  std::vector<std::pair<std::string, long long>> expected;
};

FamilyRun run_family(const std::string& name, int label_bound,
                     const Tolerances& tol) {
  FamilyRun r;
  r.name = name;
  if (name == "corank0") {
    GraphFamily fam;
    fam.tag = FamilyTag::Level2Corank0;
    long long total = 0;
    for (int rank = 5; rank <= 11; ++rank) {
      auto v = enumerate_corank0(rank, 2, label_bound, false, tol);
      fam.counts.emplace_back("rank" + std::to_string(rank),
                              (long long)v.size());
      total += (long long)v.size();
      for (auto& g : v) fam.graphs.push_back(std::move(g));
    }
    fam.counts.emplace_back("total", total);
    fam.notes = "connected level-2 corank-0 graphs, ranks 5..11";
    r.fam = std::move(fam);
    r.expected = {{"total", 326}};
  } else if (name == "prisms") {
    r.fam = enumerate_prisms(tol);
    r.expected = {{"candidates", 655},
                  {"pyramid-case", 129},
                  {"level1", 17},
                  {"level2", 509}};
  } else if (name == "products") {
    r.fam = enumerate_products(tol);
    r.expected = {{"level2", 28}, {"level1", 8}};
  } else if (name == "light-apex") {
    r.fam = enumerate_pyramids_lightlike(tol);
    r.expected = {{"one-dim", 358},
                  {"one-dim-level1", 89},
                  {"one-dim-level2", 269},
                  {"both-dims", 65}};
  } else if (name == "space-apex") {
    r.fam = enumerate_pyramids_spacelike(tol);
    r.expected = {{"rank7plus", 18},
                  {"dim4", 266},
                  {"both-dims", 3},
                  {"dim4-label-recheck-7-50", 0}};
  } else if (name == "twofold") {
    r.fam = enumerate_twofold_pyramids(tol);
    r.expected = {{"candidates", 221}, {"confirmed", 49}, {"both-dims", 36}};
  } else {
    throw CliError{kExitInputError, "unknown family: " + name};
  }
  return r;
}

const std::vector<std::string>& all_families() {
  static const std::vector<std::string> v{"corank0",    "prisms",
                                          "products",   "light-apex",
                                          "space-apex", "twofold"};
  return v;
}

long long count_of(const GraphFamily& fam, const std::string& key) {
  for (const auto& [k, v] : fam.counts)
    if (k == key) return v;
  return -1;
}

// Prints one line per published count; returns the number of mismatches.
int report_counts(const FamilyRun& r, std::ostream& os) {
  int failures = 0;
  for (const auto& [key, want] : r.expected) {
    long long got = count_of(r.fam, key);
    bool ok = got == want;
    failures += !ok;
    os << r.name << ": " << key << " = " << got << " (expected " << want
       << ") " << (ok ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& [key, value] : r.fam.counts) {
    bool published = false;
    for (const auto& [k, _] : r.expected) published |= k == key;
    if (!published) os << r.name << ": " << key << " = " << value << "\n";
  }
  return failures;
}

void write_graphs(const fs::path& dir, const std::vector<CoxeterGraph>& graphs,
                  json& files) {
  fs::create_directories(dir);
  int idx = 0;
  for (const auto& g : graphs) {
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << idx++ << ".cox";
    fs::path p = dir / name.str();
    std::ofstream f(p);
    if (!f) throw CliError{kExitInputError, "cannot write " + p.string()};
    f << serialize_cox(g);
    files.push_back(p.string());
  }
}

int cmd_classify(const std::vector<std::string>& names, int label_bound,
                 const Tolerances& tol, const std::string& out_dir) {
  int failures = 0;
  for (const auto& name : names) {
    FamilyRun r = run_family(name, label_bound, tol);
    failures += report_counts(r, std::cout);
    if (!out_dir.empty()) {
      fs::path base = fs::path(out_dir) / name;
      json manifest;
      manifest["family"] = to_string(r.fam.tag);
      manifest["notes"] = r.fam.notes;
      json counts;
      for (const auto& [k, v] : r.fam.counts) counts[k] = v;
      manifest["counts"] = counts;
      json expected;
      for (const auto& [k, v] : r.expected) expected[k] = v;
      manifest["expected"] = expected;
      json files = json::array();
      write_graphs(base / "graphs", r.fam.graphs, files);
      for (const auto& [bin, graphs] : r.fam.bins)
        write_graphs(base / "bins" / bin, graphs, files);
      manifest["files"] = files;
      std::ofstream f(base / "manifest.json");
      if (!f)
        throw CliError{kExitInputError,
                       "cannot write " + (base / "manifest.json").string()};
      f << manifest.dump(2) << "\n";
      std::cout << name << ": wrote " << files.size() << " graph files under "
                << base.string() << "\n";
    }
  }
  return failures ? kExitVerifyFail : kExitOk;
}

// Random corank-0 graphs of rank 4..8 over labels {2..6, inf}: deletion level
// must agree with the face-lattice level on free bases.
int level_agreement_sample(int count, std::uint64_t seed,
                           const Tolerances& tol, std::ostream& os) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rank_dist(4, 8);
  std::uniform_int_distribution<int> label_dist(0, 7);
  int tested = 0, mismatched = 0;
  while (tested < count) {
    int n = rank_dist(rng);
    CoxeterGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int pick = label_dist(rng);
        if (pick <= 2) continue;
        if (pick == 7)
          g.set_label(i, j, EdgeLabel::infinite());
        else
          g.set_label(i, j, EdgeLabel::solid(pick));
      }
    if (gram_corank(g, tol) != 0) continue;
    ++tested;
    LevelResult gl = graph_level(g, tol);
    LevelResult sl = system_level(canonicalize(g, tol), tol);
    if (gl.level != sl.level || gl.strict != sl.strict) {
      ++mismatched;
      os << "level mismatch: graph " << level_text(gl) << " vs system "
         << level_text(sl) << " on " << edge_text(g) << "\n";
    }
  }
  os << "level agreement: " << (tested - mismatched) << "/" << tested
     << " corank-0 samples " << (mismatched == 0 ? "PASS" : "FAIL") << "\n";
  return mismatched;
}

int cmd_verify_counts(const std::vector<std::string>& names, int label_bound,
                      const Tolerances& tol, int samples, std::uint64_t seed) {
  int failures = 0;
  for (const auto& name : names) {
    FamilyRun r = run_family(name, label_bound, tol);
    failures += report_counts(r, std::cout);
  }
  if (samples > 0) failures += level_agreement_sample(samples, seed, tol, std::cout);
  std::cout << (failures ? "FAIL" : "PASS") << " (" << failures
            << " mismatches)\n";
  return failures ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentzian Coxeter systems: levels, weights, orbits, packings"};
  app.require_subcommand(1);

  Tolerances tol;
  int threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol.zero, "zero tolerance")->capture_default_str();
  app.add_option("--lp-tol", tol.lp, "facial witness LP margin")
      ->capture_default_str();
  app.add_option("--tangency-tol", tol.tangency, "tangency band half-width")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (1 = deterministic)")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized checks")
      ->capture_default_str();

  std::string in_path;
  auto* analyze = app.add_subcommand("analyze", "full report for one graph");
  analyze->add_option("file", in_path, ".cox file")->required();

  auto* level = app.add_subcommand("level", "deletion and face-lattice levels");
  level->add_option("file", in_path, ".cox file")->required();

  bool weights_json = false;
  auto* weights_cmd = app.add_subcommand("weights", "weight vectors with causal classes");
  weights_cmd->add_option("file", in_path, ".cox file")->required();
  weights_cmd->add_flag("--json", weights_json, "JSON output");

  int max_word_length = -1;
  double max_height = std::numeric_limits<double>::infinity();
  long long max_balls = -1;
  std::string orbit_kind = "weights";
  std::string out_path;
  auto* orbit = app.add_subcommand("orbit", "breadth-first orbit as JSON lines");
  orbit->add_option("file", in_path, ".cox file")->required();
  orbit->add_option("--kind", orbit_kind, "weights or roots")
      ->check(CLI::IsMember({"weights", "roots"}))
      ->capture_default_str();
  orbit->add_option("--max-word-length", max_word_length, "word length bound");
  orbit->add_option("--max-height", max_height, "height bound");
  orbit->add_option("--max-balls", max_balls, "element count bound");
  orbit->add_option("--out", out_path, "output file (default stdout)");

  bool allow_overlap = false;
  std::string svg_path, json_path;
  auto* pack = app.add_subcommand("pack", "orbit, verify and emit a ball packing");
  pack->add_option("file", in_path, ".cox file")->required();
  pack->add_option("--max-word-length", max_word_length, "word length bound");
  pack->add_option("--max-height", max_height, "height bound");
  pack->add_option("--max-balls", max_balls, "element count bound");
  pack->add_option("--svg", svg_path, "write SVG here");
  pack->add_option("--json", json_path, "write ball list here");
  pack->add_flag("--allow-overlap", allow_overlap,
                 "emit even when the input is not level 2");

  int width = 800, overlay = 0;
  double overlay_min_height = 30.0;
  auto* render = app.add_subcommand("render", "SVG of the packing");
  render->add_option("file", in_path, ".cox file")->required();
  render->add_option("--max-word-length", max_word_length, "word length bound");
  render->add_option("--max-height", max_height, "height bound");
  render->add_option("--max-balls", max_balls, "element count bound");
  render->add_option("--out", out_path, "output file (default stdout)");
  render->add_option("--width", width, "image width in pixels")
      ->capture_default_str();
  render->add_option("--overlay-limit-roots", overlay,
                     "overlay this many limit-root samples");
  render->add_option("--overlay-min-height", overlay_min_height,
                     "height floor for limit-root samples")
      ->capture_default_str();

  std::vector<std::string> families;
  std::string out_dir;
  int label_bound = 0;
  auto* classify = app.add_subcommand("classify", "enumerate a family, write graphs, check counts");
  classify->add_option("family", families,
                       "corank0 | prisms | products | light-apex | space-apex "
                       "| twofold | all")
      ->required();
  classify->add_option("--out", out_dir, "output directory");
  classify->add_option("--label-bound", label_bound,
                       "override the label alphabet bound");

  int samples = 0;
  auto* verify = app.add_subcommand("verify-counts", "run every family and check the published counts");
  verify->add_option("--family", families, "restrict to these families");
  verify->add_option("--label-bound", label_bound,
                     "override the label alphabet bound");
  verify->add_option("--level-samples", samples,
                     "also test deletion-level == face-lattice level on this "
                     "many random corank-0 graphs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(in_path, tol);
    if (level->parsed()) return cmd_level(in_path, tol);
    if (weights_cmd->parsed()) return cmd_weights(in_path, tol, weights_json);
    if (orbit->parsed())
      return cmd_orbit(in_path, tol,
                       make_budget(max_word_length, max_height, max_balls),
                       orbit_kind, threads, out_path);
    if (pack->parsed()) {
      if (max_word_length < 0 && !std::isfinite(max_height) && max_balls < 0)
        max_word_length = 8;
      return cmd_pack(in_path, tol,
                      make_budget(max_word_length, max_height, max_balls),
                      threads, allow_overlap, svg_path, json_path);
    }
    if (render->parsed()) {
      if (max_word_length < 0 && !std::isfinite(max_height) && max_balls < 0)
        max_word_length = 8;
      return cmd_render(in_path, tol,
                        make_budget(max_word_length, max_height, max_balls),
                        threads, out_path, width, overlay, overlay_min_height);
    }
    if (families.size() == 1 && families[0] == "all") families = all_families();
    if (classify->parsed()) return cmd_classify(families, label_bound, tol, out_dir);
    if (verify->parsed()) {
      if (families.empty()) families = all_families();
      return cmd_verify_counts(families, label_bound, tol, samples, seed);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
