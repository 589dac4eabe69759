#include "realid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "realid/elliptic.hpp"
#include "realid/segre.hpp"
#include "realid/waring.hpp"

namespace realid {

void RunConfig::validate() const {
  settings.validate();
  stop.validate();
  if (!(real_tol > 0.0)) throw std::invalid_argument("real tolerance must be positive");
}

Json to_json(const RunConfig& config) {
  return {{"seed", config.seed},
          {"threads", config.threads == 0 ? Json("auto") : Json(config.threads)},
          {"real_tol", config.real_tol},
          {"settings", to_json(config.settings)},
          {"stop", to_json(config.stop)}};
}

namespace {

struct WaringArgs {
  unsigned d = 0;
  unsigned n = 0;
  unsigned r = 0;
  std::string fixture;
  double magnitude = 5.0;
};

struct EllipticArgs {
  std::string pencil_file;
  double from = -2.0;
  double to = 2.0;
  std::size_t steps = 41;
  std::vector<double> k_values;
  std::string construct;
  std::vector<double> point;
  std::vector<double> coeffs;
};

struct SegreArgs {
  std::vector<unsigned> dims;
  std::size_t span_real = 0;
  std::vector<int> target;
  std::size_t max_attempts = 50;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json report_header(std::string_view command, const RunConfig& config) {
  return {{"schema", kSchemaId}, {"command", command}, {"config", to_json(config)}};
}

void emit(const Json& report, const RunConfig& config, const std::string& default_name, std::ostream& out,
          std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  std::filesystem::path path = config.output_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("REALID_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / default_name;
    }
  }
  if (path.empty()) return;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write report to " + path.string());
  file << text;
  err << "report written to " << path.string() << "\n";
}

int cmd_waring(const WaringArgs& args, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const WaringSpec spec{args.d, args.n, args.r};
  if (const Admissibility adm = is_admissible(spec); !adm) {
    err << "error: inadmissible spec: " << adm.reason << "\n";
    return kExitError;
  }
  Decomposition start;
  TensorParams tensor;
  Json report = report_header("waring", config);
  report["spec"] = {{"d", spec.d}, {"n", spec.n}, {"r", spec.r}};
  if (!args.fixture.empty()) {
    start = load_fixture(args.fixture, spec);
    tensor = tensor_from_decomposition(spec, start);
    report["source"] = {{"kind", "fixture"}, {"path", args.fixture}};
  } else {
    std::tie(start, tensor) = random_real_start(spec, config.seed, args.magnitude);
    report["source"] = {{"kind", "random"}, {"magnitude", args.magnitude}};
  }
  report["tensor"] = to_json(tensor.coeffs);

  const PolySystem sys = build_system(spec);
  const ParallelMap parallel(config.threads);
  const SolutionRegistry registry =
      solve(sys, spec, tensor.coeffs, start, config.stop, config.settings, config.seed, parallel);
  report["registry"] = to_json(registry);
  int status = registry.stabilized ? kExitOk : kExitUnstabilized;
  try {
    report["classification"] = to_json(classify(registry, config.real_tol));
  } catch (const UnpairedDecomposition& e) {
    report["classification"] = {{"error", e.what()}};
    status = kExitUnstabilized;
  }
  emit(report, config, "waring-d" + std::to_string(spec.d) + "-n" + std::to_string(spec.n) + "-r" +
                           std::to_string(spec.r) + "-seed" + std::to_string(config.seed) + ".json",
       out, err);
  if (status == kExitUnstabilized) err << "warning: solve did not stabilize\n";
  return status;
}

QuadricPencil load_pencil(const std::string& path, std::ostream& err) {
  if (path.empty()) return QuadricPencil::example();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open pencil file " + path);
  const Json doc = Json::parse(in);
  const auto read = [&](const char* key) {
    const Json& rows = doc.at(key);
    if (!rows.is_array() || rows.size() != 4) throw UsageError(std::string(key) + " must be a 4x4 matrix");
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
      if (rows[i].size() != 4) throw UsageError(std::string(key) + " must be a 4x4 matrix");
      for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return Quadric(m);
  };
  QuadricPencil pencil{read("q1"), read("q2")};
  if (const SmoothnessReport probe = smoothness_probe(pencil); !probe.smooth) {
    err << "warning: smoothness probe failed: " << probe.detail << "\n";
  }
  return pencil;
}

RPoint3 to_point(const std::vector<double>& v, const char* what) {
  if (v.size() != 4) throw UsageError(std::string(what) + " needs 4 comma-separated values");
  return RPoint3(v[0], v[1], v[2], v[3]);
}

int cmd_elliptic(const std::string& sub, const EllipticArgs& args, const RunConfig& config,
                 std::ostream& out, std::ostream& err) {
  const QuadricPencil pencil = load_pencil(args.pencil_file, err);
  Json report = report_header("elliptic " + sub, config);
  report["smoothness"] = smoothness_probe(pencil).smooth;
  std::string name;
  if (sub == "pencil-scan") {
    std::vector<double> ks = args.k_values;
    if (ks.empty()) {
      if (args.steps < 2) throw UsageError("--steps must be at least 2");
      for (std::size_t i = 0; i < args.steps; ++i) {
        ks.push_back(args.from + (args.to - args.from) * static_cast<double>(i) / static_cast<double>(args.steps - 1));
      }
    }
    Json records = Json::array();
    for (const PencilRecord& rec : pencil_scan(pencil, ks, config.settings)) records.push_back(to_json(rec));
    report["records"] = records;
    name = "elliptic-pencil-scan.json";
  } else if (sub == "point") {
    RPoint3 p;
    if (!args.construct.empty()) {
      const PointType target = point_type_from_string(args.construct);
      const PointConstruction built = construct_point(pencil, target, config.seed, config.settings);
      p = built.point;
      report["construction"] = {{"target", to_string(target)},
                                {"plane", to_json(CVector(built.plane.cast<Complex>()))},
                                {"section", to_json(built.section)}};
    } else {
      p = to_point(args.point, "--point");
    }
    try {
      const auto lines = secant_lines_through(pencil, p, config.settings);
      report["result"] = point_record(p, classify_lines(lines), lines);
    } catch (const DegeneratePoint& e) {
      report["result"] = point_record(p, PointType::Degenerate, {});
      report["result"]["detail"] = e.what();
    }
    name = "elliptic-point-seed" + std::to_string(config.seed) + ".json";
  } else {
    const RPoint3 plane = to_point(args.coeffs, "--coeffs");
    report["plane"] = Json::array({plane[0], plane[1], plane[2], plane[3]});
    try {
      report["result"] = to_json(intersect_plane(pencil, plane, config.settings));
    } catch (const TangentPlane& e) {
      report["result"] = {{"tangent", to_json(CVector(e.double_point()))}};
    } catch (const DegeneratePlane& e) {
      report["result"] = {{"error", e.what()}};
    }
    name = "elliptic-plane.json";
  }
  emit(report, config, name, out, err);
  return kExitOk;
}

SegreSpec segre_spec(const std::vector<unsigned>& dims) {
  if (dims.size() != 2) throw UsageError("--dims needs exactly two factor dimensions, e.g. 2,4");
  SegreSpec spec{{dims[0], dims[1]}};
  spec.validate();
  return spec;
}

int cmd_segre(const std::string& sub, const SegreArgs& args, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  const SegreSpec spec = segre_spec(args.dims);
  const ParallelMap parallel(config.threads);
  Json report = report_header("segre " + sub, config);
  const std::string tag = std::to_string(spec.dims[0]) + "x" + std::to_string(spec.dims[1]);
  int status = kExitOk;
  if (sub == "profile") {
    const AlmostUnbalancedProfile p = almost_unbalanced_profile(spec);
    report["result"] = {{"spec", Json::array({spec.dims[0], spec.dims[1]})},
                        {"a_q", p.a_q},
                        {"D", p.degree},
                        {"parity", p.even ? "even" : "odd"}};
  } else if (sub == "section") {
    const std::size_t span_size = spec.num_coords() - spec.dim();
    if (args.span_real > span_size) {
      throw UsageError("--span-real may be at most " + std::to_string(span_size));
    }
    const LinearSpace space = args.span_real > 0
                                  ? sample_span(spec, args.span_real, span_size - args.span_real, config.seed).space
                                  : random_space(spec, config.seed);
    report["result"] = section_record(spec, space, solve_section(spec, space, config.settings, parallel));
  } else {
    if (args.target.size() != 2) throw UsageError("--target needs real,nonreal");
    const SectionSignature target{args.target[0], args.target[1]};
    const auto witness = search_signature(spec, target, args.max_attempts, config.seed, config.settings, parallel);
    if (witness) {
      report["result"] = section_record(spec, witness->space, witness->section);
      report["result"]["attempt"] = witness->attempt;
      static constexpr const char* kStrategies[] = {"real_span", "random_space", "perturbation"};
      report["result"]["strategy"] = kStrategies[static_cast<int>(witness->strategy)];
      report["result"]["deficient_sections"] = witness->deficient_sections;
    } else {
      report["result"] = {{"not_found", true}, {"attempts", args.max_attempts}};
      status = kExitNotFound;
    }
  }
  emit(report, config, "segre-" + sub + "-" + tag + "-seed" + std::to_string(config.seed) + ".json", out, err);
  if (status == kExitNotFound) err << "no witness found within " << args.max_attempts << " attempts\n";
  return status;
}

void add_common(CLI::App* app, RunConfig& config, std::string& threads, std::size_t& target_count) {
  app->add_option("--seed", config.seed, "random seed");
  app->add_option("--threads", threads, "worker count or 'auto'");
  app->add_option("--real-tol", config.real_tol, "realness tolerance");
  app->add_option("-o,--output", config.output_path, "report file");
  app->add_option("--initial-step", config.settings.initial_step);
  app->add_option("--min-step", config.settings.min_step);
  app->add_option("--max-step", config.settings.max_step);
  app->add_option("--corrector-tol", config.settings.corrector_tol);
  app->add_option("--max-corrector-iters", config.settings.max_corrector_iters);
  app->add_option("--max-steps", config.settings.max_steps);
  app->add_option("--stable-loops", config.stop.stable_loops);
  app->add_option("--max-loops", config.stop.max_loops);
  app->add_option("--target-count", target_count, "stop once this many solutions are known");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real identifiability experiments: Waring decompositions, elliptic quartics, Segre sections",
               "realid"};
  app.require_subcommand(1);
  RunConfig config;
  std::string threads = "auto";
  std::size_t target_count = 0;

  WaringArgs waring_args;
  CLI::App* waring = app.add_subcommand("waring", "solve a perfect-case Waring decomposition by monodromy");
  waring->add_option("--d", waring_args.d, "degree")->required();
  waring->add_option("--n", waring_args.n, "number of variables minus one")->required();
  waring->add_option("--r", waring_args.r, "rank")->required();
  waring->add_option("--fixture", waring_args.fixture, "start decomposition (JSON)");
  waring->add_option("--magnitude", waring_args.magnitude, "scale of the random real start");
  add_common(waring, config, threads, target_count);

  EllipticArgs ell_args;
  CLI::App* elliptic = app.add_subcommand("elliptic", "secant geometry of a quartic curve Q1 = Q2 = 0");
  elliptic->require_subcommand(1);
  elliptic->add_option("--pencil", ell_args.pencil_file, "JSON file with 4x4 matrices q1, q2");
  CLI::App* scan = elliptic->add_subcommand("pencil-scan", "signatures of the planes x2 = k x3");
  scan->add_option("--from", ell_args.from);
  scan->add_option("--to", ell_args.to);
  scan->add_option("--steps", ell_args.steps);
  scan->add_option("--k", ell_args.k_values, "explicit k values")->delimiter(',');
  CLI::App* point = elliptic->add_subcommand("point", "classify a point by its secant lines");
  auto* construct = point->add_option("--construct", ell_args.construct, "build a point of type s1..s4");
  point->add_option("--point", ell_args.point, "x0,x1,x2,x3")->delimiter(',')->excludes(construct);
  CLI::App* plane = elliptic->add_subcommand("plane", "intersect the curve with a plane");
  plane->add_option("--coeffs", ell_args.coeffs, "a0,a1,a2,a3")->delimiter(',')->required();
  for (CLI::App* sub : {scan, point, plane}) add_common(sub, config, threads, target_count);

  SegreArgs seg_args;
  CLI::App* segre = app.add_subcommand("segre", "linear sections of P^a1 x P^a2");
  segre->require_subcommand(1);
  CLI::App* profile = segre->add_subcommand("profile", "almost-unbalanced arithmetic");
  CLI::App* section = segre->add_subcommand("section", "solve one section");
  section->add_option("--span-real", seg_args.span_real, "span of this many real Segre points");
  CLI::App* search = segre->add_subcommand("search", "search for a section signature");
  search->add_option("--target", seg_args.target, "real,nonreal")->delimiter(',')->required();
  search->add_option("--max-attempts", seg_args.max_attempts);
  for (CLI::App* sub : {profile, section, search}) {
    sub->add_option("--dims", seg_args.dims, "a1,a2")->delimiter(',')->required();
    add_common(sub, config, threads, target_count);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (threads == "auto") {
      config.threads = 0;
    } else {
      try {
        config.threads = std::stoul(threads);
      } catch (const std::exception&) {
        throw UsageError("--threads must be a count or 'auto'");
      }
      if (config.threads == 0) throw UsageError("--threads must be positive");
    }
    if (target_count > 0) config.stop.target_count = target_count;
    config.validate();

    if (waring->parsed()) return cmd_waring(waring_args, config, out, err);
    if (elliptic->parsed()) {
      const std::string sub = scan->parsed() ? "pencil-scan" : point->parsed() ? "point" : "plane";
      if (sub == "point" && ell_args.construct.empty() && ell_args.point.empty()) {
        throw UsageError("point needs --construct or --point");
      }
      return cmd_elliptic(sub, ell_args, config, out, err);
    }
    const std::string sub = profile->parsed() ? "profile" : section->parsed() ? "section" : "search";
    return cmd_segre(sub, seg_args, config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace realid
