// tessella command line: validate inflation rules, iterate them, analyze the
// rotational statistics, probe the tiling-space metric, and render patches.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tessella/analysis.hpp"
#include "tessella/json_io.hpp"
#include "tessella/rule.hpp"
#include "tessella/space.hpp"
#include "tessella/svg.hpp"

namespace {

using namespace tessella;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;
constexpr int kExitCap = 4;
constexpr int kExitIo = 5;
constexpr int kExitOther = 1;

struct CommonOpts {
  std::string builtin;
  std::string rule_file;
  std::string mode = "exact";
  double tol = 1e-9;
  long long cap = 0;  // 0 = default / env
  int threads = 0;
  std::string out;
  bool stamp = false;
};

void add_rule_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--builtin", o.builtin, "built-in rule name (square | pinwheel)");
  cmd->add_option("--rule", o.rule_file, "rule file to load");
  cmd->add_option("--mode", o.mode, "scalar mode: exact | float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--tol", o.tol, "comparison tolerance for float mode");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << content;
}

InflationRule load_rule(const CommonOpts& o) {
  set_geom_epsilon(o.tol);
  if (!o.builtin.empty() && !o.rule_file.empty())
    fail(Errc::invalid_argument, "--builtin and --rule are mutually exclusive");
  if (o.builtin.empty() && o.rule_file.empty())
    fail(Errc::invalid_argument, "one of --builtin or --rule is required");
  if (!o.builtin.empty()) {
    InflationRule r = builtin_rule(o.builtin);
    if (o.mode == "float") {
      InflationRule a = rule_to_approx(r);
      validate_rule(a);
      return a;
    }
    return r;
  }
  std::string text = read_file(o.rule_file);
  if (o.mode == "float") {
    return parse_rule_approx(text).rule;
  }
  ParsedRule pr = parse_rule(text, /*force_exact=*/false);
  for (const auto& w : pr.warnings) std::cerr << "warning: " << w << "\n";
  return pr.rule;
}

// Validates, printing the report on failure. Exits via exception-free path.
bool ensure_validated(InflationRule& rule, bool quiet = false) {
  if (rule.validated()) return true;
  RuleValidationReport rep = validate_rule(rule);
  if (!rep.ok()) {
    if (!quiet) std::cerr << rep.summary();
    return false;
  }
  return true;
}

long long effective_cap(const CommonOpts& o) { return o.cap > 0 ? o.cap : default_tile_cap(); }

std::string maybe_stamp(const CommonOpts& o) {
  if (!o.stamp) return {};
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

Rational parse_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational::from_string(s);
  std::string head = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (neg) head = head.substr(1);
  if (head.empty()) head = "0";
  BigInt den = BigInt::pow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt num = BigInt::from_string(head) * den + (frac.empty() ? BigInt(0) : BigInt::from_string(frac));
  Rational r(num, den);
  return neg ? -r : r;
}

int cmd_validate(const CommonOpts& o) {
  InflationRule rule = load_rule(o);
  RuleValidationReport rep = validate_rule(rule);  // idempotent on builtins
  jsonio::ojson root = jsonio::ojson::object();
  root["schema"] = "tessella/validate-v1";
  root["rule_hash"] = rule.hash();
  root["pass"] = rep.ok();
  jsonio::ojson entries = jsonio::ojson::array();
  for (const auto& e : rep.entries) {
    jsonio::ojson ej = jsonio::ojson::object();
    ej["prototile"] = e.prototile;
    ej["status"] = e.status == TileStatus::pass          ? "pass"
                   : e.status == TileStatus::overlap     ? "overlap"
                   : e.status == TileStatus::gap         ? "gap"
                                                         : "out_of_bounds";
    if (e.child_a >= 0) ej["child_a"] = e.child_a;
    if (e.child_b >= 0) ej["child_b"] = e.child_b;
    if (e.status == TileStatus::overlap || e.status == TileStatus::gap)
      ej["witness_area"] = e.witness_area.to_double();
    entries.push_back(ej);
  }
  root["prototiles"] = entries;
  if (o.stamp) root["generated_at"] = maybe_stamp(o);
  write_output(o.out, root.dump(2) + "\n");
  if (!rep.ok()) {
    std::cerr << rep.summary();
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_inflate(const CommonOpts& o, int seed, int r) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  EngineOptions eo;
  eo.cap = effective_cap(o);
  eo.threads = o.threads;
  Patch p = inflate_patch(rule, seed_patch(rule, seed), r, eo);
  write_output(o.out, patch_to_json(rule, p));
  std::cerr << p.tiles.size() << " tiles\n";
  return kExitOk;
}

int cmd_analyze(const CommonOpts& o, int r, const std::string& ms_raw) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  std::vector<int> ms = ms_raw.empty() ? std::vector<int>{1, 2, 3} : parse_int_list(ms_raw);
  for (int m : ms) {
    if (m == 0)
      fail(Errc::use_count_instead,
           "m = 0 twists nothing; the tile count / substitution matrix already answers it");
  }
  std::string report = analysis_report_json(rule, r, ms, effective_cap(o));
  write_output(o.out, report);

  HypothesisReport hyp = check_hypotheses(rule, r, effective_cap(o));
  std::cerr << "hypotheses at r = " << r << ": (a) " << (hyp.a_holds ? "holds" : "FAILS")
            << ", (b) " << (hyp.b_holds ? "holds" : "FAILS") << "\n";
  if (hyp.a_holds && hyp.b_holds) {
    std::cerr << "unique ergodicity hypotheses certified at r = " << r << "\n";
  } else {
    std::cerr << "unique ergodicity hypotheses NOT certified at r = " << r << "\n";
  }
  return kExitOk;
}

int cmd_hypotheses(const CommonOpts& o, int r) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  HypothesisReport hyp = check_hypotheses(rule, r, effective_cap(o));
  jsonio::ojson root = jsonio::ojson::object();
  root["schema"] = "tessella/hypotheses-v1";
  root["rule_hash"] = rule.hash();
  root["r"] = hyp.r;
  root["a"] = hyp.a_holds;
  root["b"] = hyp.b_holds;
  root["b_exhaustive"] = hyp.b_exhaustive;
  if (hyp.b_witness) {
    jsonio::ojson w = jsonio::ojson::object();
    w["seed"] = hyp.b_witness->seed_type;
    w["tile_a"] = static_cast<long long>(hyp.b_witness->tile_a);
    w["tile_b"] = static_cast<long long>(hyp.b_witness->tile_b);
    w["relative_rotation"] =
        jsonio::rotation_to_json(hyp.b_witness->relative, rule.inflation_base(), rule.radicand());
    w["method"] = hyp.b_witness->verdict.method;
    root["witness"] = w;
  }
  write_output(o.out, root.dump(2) + "\n");
  std::cerr << "(a) " << (hyp.a_holds ? "holds" : "fails") << "  (b) "
            << (hyp.b_holds ? "holds" : "fails") << "\n";
  return kExitOk;
}

int cmd_weyl(const CommonOpts& o, int seed, int r, const std::string& ms_raw) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  std::vector<int> ms = ms_raw.empty() ? std::vector<int>{1} : parse_int_list(ms_raw);
  jsonio::ojson arr = jsonio::ojson::array();
  for (int m : ms) {
    WeylResult wr = weyl_sum(rule, seed, r, m, effective_cap(o));
    jsonio::ojson e = jsonio::ojson::object();
    e["m"] = m;
    e["r"] = r;
    e["seed"] = seed;
    e["tiles"] = static_cast<long long>(wr.tiles);
    e["value"] = jsonio::ojson::array({wr.value.real(), wr.value.imag()});
    e["abs"] = std::abs(wr.value);
    e["matrix_value"] = jsonio::ojson::array({wr.matrix_value.real(), wr.matrix_value.imag()});
    e["convention"] = wr.convention;
    arr.push_back(e);
    std::cerr << "W_" << r << "(" << m << ") seed " << seed << ": |value| = " << std::abs(wr.value)
              << "\n";
  }
  jsonio::ojson root = jsonio::ojson::object();
  root["schema"] = "tessella/weyl-v1";
  root["rule_hash"] = rule.hash();
  root["sums"] = arr;
  write_output(o.out, root.dump(2) + "\n");
  return kExitOk;
}

int cmd_census(const CommonOpts& o, const std::string& patch_file, int seed, int r) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  Patch patch;
  if (!patch_file.empty()) {
    patch = patch_from_json(rule, read_file(patch_file));
  } else {
    EngineOptions eo;
    eo.cap = effective_cap(o);
    eo.threads = o.threads;
    patch = inflate_patch(rule, seed_patch(rule, seed), r, eo);
  }
  auto census = adjacency_census(rule, patch);
  write_output(o.out, census_to_json(rule, census));
  std::cerr << census.size() << " distinct adjacency configurations\n";
  return kExitOk;
}

int cmd_metric(const CommonOpts& o, int seed, int r, const std::string& origin_raw,
               const std::string& delta_raw) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  EngineOptions eo;
  eo.cap = effective_cap(o);
  eo.threads = o.threads;
  Patch patch = inflate_patch(rule, seed_patch(rule, seed), r, eo);

  double ox, oy;
  if (origin_raw.empty()) {
    Polygon region = covered_region(rule, patch);
    double cx = 0, cy = 0;
    for (const Point& v : region.vertices()) {
      cx += v.dx();
      cy += v.dy();
    }
    ox = cx / static_cast<double>(region.size());
    oy = cy / static_cast<double>(region.size());
  } else {
    auto comma = origin_raw.find(',');
    if (comma == std::string::npos) fail(Errc::invalid_argument, "--origin expects x,y");
    ox = std::stod(origin_raw.substr(0, comma));
    oy = std::stod(origin_raw.substr(comma + 1));
  }

  CenteredPatch base = centered_patch(rule, patch, ox, oy);
  CenteredPatch other = base;
  if (!delta_raw.empty()) {
    auto comma = delta_raw.find(',');
    if (comma == std::string::npos) fail(Errc::invalid_argument, "--delta expects dx,dy");
    Rational dx = parse_decimal(delta_raw.substr(0, comma));
    Rational dy = parse_decimal(delta_raw.substr(comma + 1));
    Scalar sx = rule.mode() == Mode::exact ? Scalar::exact_rat(dx) : Scalar::approx(dx.to_double());
    Scalar sy = rule.mode() == Mode::exact ? Scalar::exact_rat(dy) : Scalar::approx(dy.to_double());
    other = translated_centered_patch(rule, base, sx, sy);
  }
  MetricReport rep = patch_distance(rule, base, other);
  write_output(o.out, metric_report_json(rep));
  std::cerr << "epsilon = " << rep.epsilon << (rep.floor_hit ? " (floor)" : "") << "\n";
  return kExitOk;
}

int cmd_render(const CommonOpts& o, const std::string& patch_file, const std::string& color_by,
               double stroke, int labels) {
  InflationRule rule = load_rule(o);
  if (!ensure_validated(rule)) return kExitValidation;
  Patch patch;
  try {
    patch = patch_from_json(rule, read_file(patch_file));
  } catch (const Error& e) {
    if (e.code() == Errc::io_error) throw;
    std::cerr << "unreadable patch: " << e.what() << "\n";
    return kExitIo;
  }
  RenderSpec spec;
  spec.color_by = color_by == "angle"        ? ColorBy::angle_hue
                  : color_by == "handedness" ? ColorBy::handedness
                                             : ColorBy::type;
  spec.stroke_width = stroke;
  spec.max_label_tiles = labels;
  write_output(o.out, render_svg(rule, patch, spec));
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::syntax_error:
    case Errc::unknown_prototile:
    case Errc::lambda_out_of_range:
    case Errc::unsupported_radicand:
    case Errc::unknown_builtin:
      return kExitParse;
    case Errc::patch_too_large:
      return kExitCap;
    case Errc::io_error:
      return kExitIo;
    default:
      return kExitOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tessella: exact inflation tilings of the plane"};
  app.require_subcommand(1);

  CommonOpts o;
  int seed = 0, r = 1, labels = 0;
  std::string ms, patch_file, origin, delta, color_by = "type", format = "json";
  double stroke = 0.0;

  auto add_common = [&](CLI::App* cmd, bool with_cap = true) {
    add_rule_opts(cmd, o);
    cmd->add_option("-o,--out", o.out, "output path (default stdout)");
    cmd->add_flag("--stamp", o.stamp, "embed a generation timestamp");
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "svg"}));
    if (with_cap) {
      cmd->add_option("--cap", o.cap, "tile cap (default 5e6, or TESSELLA_CAP)");
      cmd->add_option("--threads", o.threads, "worker threads (default hardware)");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "check a rule against the exact-cover conditions");
  add_common(validate, false);

  CLI::App* inflate = app.add_subcommand("inflate", "iterate the inflation function on a seed prototile");
  add_common(inflate);
  inflate->add_option("--seed-type", seed, "seed prototile id");
  inflate->add_option("-r", r, "number of inflation steps")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "matrices, spectra, hypotheses and Weyl sums");
  add_common(analyze);
  analyze->add_option("-r", r, "generation for the hypothesis check")->required();
  analyze->add_option("-m", ms, "comma-separated twist orders (default 1,2,3)");

  CLI::App* hypotheses = app.add_subcommand("hypotheses", "unique-ergodicity hypothesis check");
  add_common(hypotheses);
  hypotheses->add_option("-r", r, "generation to test")->required();

  CLI::App* weyl = app.add_subcommand("weyl", "orientation Weyl sums over F^r(P)");
  add_common(weyl);
  weyl->add_option("--seed-type", seed, "seed prototile id");
  weyl->add_option("-r", r, "inflation steps")->required();
  weyl->add_option("-m", ms, "comma-separated twist orders (default 1)");

  CLI::App* census = app.add_subcommand("census", "adjacency configurations of a patch");
  add_common(census);
  census->add_option("--patch", patch_file, "patch file (otherwise inflates a seed)");
  census->add_option("--seed-type", seed, "seed prototile id");
  census->add_option("-r", r, "inflation steps when generating");

  CLI::App* metric = app.add_subcommand("metric", "truncated tiling-space distance probe");
  add_common(metric);
  metric->add_option("--seed-type", seed, "seed prototile id");
  metric->add_option("-r", r, "inflation steps")->required();
  metric->add_option("--origin", origin, "metric origin as x,y (default region centroid)");
  metric->add_option("--delta", delta, "compare against the patch translated by dx,dy");

  CLI::App* render = app.add_subcommand("render", "render a patch file to SVG");
  add_common(render, false);
  render->add_option("--patch", patch_file, "patch file")->required();
  render->add_option("--color-by", color_by, "type | angle | handedness")
      ->check(CLI::IsMember({"type", "angle", "handedness"}));
  render->add_option("--stroke", stroke, "stroke width in patch units");
  render->add_option("--labels", labels, "label tiles with type ids when patch is this small");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (inflate->parsed()) return cmd_inflate(o, seed, r);
    if (analyze->parsed()) return cmd_analyze(o, r, ms);
    if (hypotheses->parsed()) return cmd_hypotheses(o, r);
    if (weyl->parsed()) return cmd_weyl(o, seed, r, ms);
    if (census->parsed()) return cmd_census(o, patch_file, seed, r);
    if (metric->parsed()) return cmd_metric(o, seed, r, origin, delta);
    if (render->parsed()) return cmd_render(o, patch_file, color_by, stroke, labels);
  } catch (const Error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what();
    if (e.line() >= 0) std::cerr << " (line " << e.line() << ", column " << e.col() << ")";
    std::cerr << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOk;
}
