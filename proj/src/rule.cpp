#include "tessella/rule.hpp"

#include <sstream>

#include "tessella/json_io.hpp"

namespace tessella {

using jsonio::ojson;

std::string RuleValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "prototile " << e.prototile << ": ";
    switch (e.status) {
      case TileStatus::pass:
        os << "pass";
        break;
      case TileStatus::overlap:
        os << "OVERLAP children " << e.child_a << "," << e.child_b
           << " area=" << e.witness_area.to_string();
        break;
      case TileStatus::gap:
        os << "GAP uncovered area=" << e.witness_area.to_string();
        break;
      case TileStatus::out_of_bounds:
        os << "OUT-OF-BOUNDS child " << e.child_a;
        break;
    }
    if (!e.message.empty()) os << " (" << e.message << ")";
    os << "\n";
  }
  return os.str();
}

InflationRule::InflationRule(Mode mode, int radicand, Scalar lambda,
                             std::vector<Prototile> prototiles,
                             std::vector<std::vector<ChildPlacement>> children)
    : mode_(mode),
      radicand_(radicand),
      lambda_(std::move(lambda)),
      prototiles_(std::move(prototiles)),
      children_(std::move(children)) {
  if (mode_ == Mode::exact && !is_square_free(radicand_))
    fail(Errc::unsupported_radicand, "radicand must be positive and square-free");
  Scalar zero = Scalar::zero_like(lambda_);
  Scalar one = Scalar::one_like(lambda_);
  if (!(lambda_ > zero && lambda_ < one))
    fail(Errc::lambda_out_of_range, "lambda must lie strictly between 0 and 1");
  if (prototiles_.empty()) fail(Errc::invalid_argument, "rule needs at least one prototile");
  if (children_.size() != prototiles_.size())
    fail(Errc::invalid_argument, "children list must match prototile count");
  for (size_t j = 0; j < prototiles_.size(); ++j) {
    if (prototiles_[j].id != static_cast<int>(j))
      fail(Errc::invalid_argument, "prototile ids must be contiguous from 0");
    for (const auto& c : children_[j]) {
      if (c.type < 0 || c.type >= static_cast<int>(prototiles_.size()))
        fail(Errc::unknown_prototile,
             "child references prototile " + std::to_string(c.type) + " but only " +
                 std::to_string(prototiles_.size()) + " exist");
    }
    if (children_[j].empty())
      fail(Errc::invalid_argument, "every prototile needs at least one child");
  }

  Scalar inv_lambda = lambda_.inverse();
  Point first_u{children_[0][0].rot.re(), children_[0][0].rot.im()};
  sigma_unit_ = conj(first_u);
  sigma_ = cscale(inv_lambda, sigma_unit_);

  mirror_.assign(prototiles_.size(), -1);
  mirror_map_.assign(prototiles_.size(), Isometry::identity(mode_));
  for (size_t j = 0; j < prototiles_.size(); ++j) {
    Polygon cj = prototiles_[j].shape.conjugated();
    for (size_t k = 0; k < prototiles_.size(); ++k) {
      if (auto g = polygon_congruence(cj, prototiles_[k].shape, false)) {
        mirror_[j] = static_cast<int>(k);
        mirror_map_[j] = *g;
        break;
      }
    }
  }

  std::string ser = serialize_rule(*this);
  uint64_t h = 1469598103934665603ull;
  for (char ch : ser) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  hash_ = buf;
}

Polygon InflationRule::child_region(int j, int k) const {
  const ChildPlacement& c = children_.at(static_cast<size_t>(j)).at(static_cast<size_t>(k));
  Polygon scaled = prototile(c.type).shape.scaled(lambda_);
  return scaled.transformed(Isometry{c.rot, c.trans});
}

RuleValidationReport validate_rule(InflationRule& rule) {
  RuleValidationReport report;
  bool all_ok = true;
  for (int j = 0; j < rule.prototile_count(); ++j) {
    PrototileValidation entry;
    entry.prototile = j;
    entry.witness_area = Scalar::zero_like(rule.lambda());
    const Polygon& parent = rule.prototile(j).shape;
    const auto& kids = rule.children_of(j);
    std::vector<Polygon> regions;
    regions.reserve(kids.size());
    for (size_t k = 0; k < kids.size(); ++k)
      regions.push_back(rule.child_region(j, static_cast<int>(k)));

    for (size_t k = 0; k < kids.size() && entry.status == TileStatus::pass; ++k) {
      if (!polygon_contains(parent, regions[k])) {
        entry.status = TileStatus::out_of_bounds;
        entry.child_a = static_cast<int>(k);
        entry.message = "child " + std::to_string(k) + " is not contained in the prototile";
      }
    }
    for (size_t a = 0; a < kids.size() && entry.status == TileStatus::pass; ++a) {
      for (size_t b = a + 1; b < kids.size() && entry.status == TileStatus::pass; ++b) {
        OverlapResult ov = interiors_overlap(regions[a], regions[b]);
        if (ov.overlapping) {
          entry.status = TileStatus::overlap;
          entry.child_a = static_cast<int>(a);
          entry.child_b = static_cast<int>(b);
          entry.witness_area = ov.area;
          entry.message = "children overlap";
        }
      }
    }
    if (entry.status == TileStatus::pass) {
      Scalar sum = Scalar::zero_like(rule.lambda());
      Scalar l2 = rule.lambda_sq();
      for (const auto& c : kids) sum = sum + l2 * rule.prototile(c.type).shape.area();
      Scalar deficit = parent.area() - sum;
      if (!deficit.is_zero()) {
        entry.status = TileStatus::gap;
        entry.witness_area = deficit;
        entry.message = "children do not cover the prototile";
      }
    }
    if (entry.status != TileStatus::pass) all_ok = false;
    report.entries.push_back(std::move(entry));
  }
  if (all_ok) rule.mark_validated();
  return report;
}

namespace {

Scalar sc(long long a) { return Scalar::exact_rat(Rational(a)); }
Scalar sc(long long n, long long d) { return Scalar::exact_rat(Rational(n, d)); }
Scalar irr5(long long n, long long d) { return Scalar::exact(Rational(0), Rational(n, d), 5); }

InflationRule make_square() {
  Polygon square({Point::exact(0, 0), Point::exact(1, 0), Point::exact(1, 1), Point::exact(0, 1)});
  UnitRotation id;
  std::vector<ChildPlacement> kids = {
      {0, id, Point{sc(0), sc(0)}},
      {0, id, Point{sc(1, 2), sc(0)}},
      {0, id, Point{sc(1, 2), sc(1, 2)}},
      {0, id, Point{sc(0), sc(1, 2)}},
  };
  return InflationRule(Mode::exact, 1, sc(1, 2), {Prototile{0, "square", square}}, {kids});
}

// The 1-2-sqrt5 right triangle cut into five similar copies at scale 1/sqrt5.
// Three children land in the mirror handedness and two stay in the parent's;
// the rotation tan(a) = 1/2 is what spreads orientations under iteration.
InflationRule make_pinwheel() {
  Polygon right({Point::exact(0, 0), Point::exact(2, 0), Point::exact(2, 1)});
  Polygon left({Point::exact(0, 0), Point::exact(Rational(2), Rational(-1)), Point::exact(2, 0)});
  UnitRotation rot_a(irr5(2, 5), irr5(1, 5), false);     // e^{ia} = (2+i)/sqrt5
  UnitRotation rot_ai(irr5(-1, 5), irr5(2, 5), false);   // i e^{ia}
  UnitRotation rot_an(irr5(-2, 5), irr5(-1, 5), false);  // -e^{ia}
  UnitRotation rot_c(irr5(2, 5), irr5(-1, 5), false);    // e^{-ia}
  UnitRotation rot_ci(irr5(-1, 5), irr5(-2, 5), false);  // -i e^{-ia}
  UnitRotation rot_cn(irr5(-2, 5), irr5(1, 5), false);   // -e^{-ia}

  std::vector<ChildPlacement> kids_r = {
      {1, rot_a, Point{sc(0), sc(0)}},
      {1, rot_a, Point{sc(1), sc(0)}},
      {1, rot_ai, Point{sc(2), sc(0)}},
      {0, rot_a, Point{sc(1), sc(0)}},
      {0, rot_an, Point{sc(8, 5), sc(4, 5)}},
  };
  std::vector<ChildPlacement> kids_l = {
      {0, rot_c, Point{sc(0), sc(0)}},
      {0, rot_c, Point{sc(1), sc(0)}},
      {0, rot_ci, Point{sc(2), sc(0)}},
      {1, rot_c, Point{sc(1), sc(0)}},
      {1, rot_cn, Point{sc(8, 5), sc(-4, 5)}},
  };
  Scalar lambda = irr5(1, 5);  // 1/sqrt5
  return InflationRule(Mode::exact, 5, lambda,
                       {Prototile{0, "right", right}, Prototile{1, "left", left}},
                       {kids_r, kids_l});
}

}  // namespace

InflationRule builtin_rule(Builtin which) {
  InflationRule rule = which == Builtin::square ? make_square() : make_pinwheel();
  RuleValidationReport rep = validate_rule(rule);
  if (!rep.ok()) fail(Errc::invalid_argument, "builtin rule failed validation:\n" + rep.summary());
  return rule;
}

InflationRule builtin_rule(const std::string& name) {
  if (name == "square") return builtin_rule(Builtin::square);
  if (name == "pinwheel") return builtin_rule(Builtin::pinwheel);
  fail(Errc::unknown_builtin, "unknown builtin rule: " + name);
}

namespace {

ParsedRule parse_rule_impl(const std::string& text, Mode mode) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line, col;
    jsonio::locate_byte(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
    fail(Errc::syntax_error, std::string("JSON syntax error: ") + e.what(), line, col);
  }
  if (!root.is_object()) fail(Errc::syntax_error, "rule file must be a JSON object");
  for (const char* key : {"radicand", "lambda", "prototiles", "children"}) {
    if (!root.contains(key)) fail(Errc::syntax_error, std::string("missing key: ") + key);
  }
  if (!root["radicand"].is_number_integer()) fail(Errc::syntax_error, "radicand must be an integer");
  int d = root["radicand"].get<int>();
  if (mode == Mode::exact && !is_square_free(d))
    fail(Errc::unsupported_radicand,
         "radicand " + std::to_string(d) + " is not a positive square-free integer");

  Scalar lambda = jsonio::scalar_from_json(root["lambda"], d, mode);
  Scalar zero = Scalar::zero_like(lambda), one = Scalar::one_like(lambda);
  if (!(lambda > zero && lambda < one))
    fail(Errc::lambda_out_of_range, "lambda = " + lambda.to_string() + " is outside (0,1)");
  Scalar base = (lambda * lambda).inverse();

  if (!root["prototiles"].is_array() || root["prototiles"].empty())
    fail(Errc::syntax_error, "prototiles must be a non-empty array");
  std::vector<Prototile> tiles;
  int id = 0;
  for (const auto& pj : root["prototiles"]) {
    if (!pj.is_object() || !pj.contains("vertices"))
      fail(Errc::syntax_error, "each prototile needs a vertices array");
    std::string name =
        pj.contains("name") ? pj["name"].get<std::string>() : "prototile-" + std::to_string(id);
    std::vector<Point> vs;
    for (const auto& vj : pj["vertices"]) vs.push_back(jsonio::point_from_json(vj, d, mode));
    try {
      tiles.push_back(Prototile{id, name, Polygon(std::move(vs))});
    } catch (const Error& e) {
      fail(Errc::syntax_error, "prototile " + std::to_string(id) + ": " + e.what());
    }
    ++id;
  }

  if (!root["children"].is_array() || root["children"].size() != tiles.size())
    fail(Errc::syntax_error, "children must be an array with one entry per prototile");
  std::vector<std::vector<ChildPlacement>> children;
  for (const auto& list : root["children"]) {
    if (!list.is_array()) fail(Errc::syntax_error, "per-prototile children must be an array");
    std::vector<ChildPlacement> kids;
    for (const auto& cj : list) {
      if (!cj.is_object() || !cj.contains("type") || !cj.contains("pose"))
        fail(Errc::syntax_error, "child entries need type and pose");
      if (!cj["type"].is_number_integer())
        fail(Errc::syntax_error, "child type must be an integer");
      int type = cj["type"].get<int>();
      if (type < 0 || type >= static_cast<int>(tiles.size()))
        fail(Errc::unknown_prototile, "child references prototile " + std::to_string(type) +
                                          " but only " + std::to_string(tiles.size()) + " exist");
      const ojson& pose = cj["pose"];
      if (!pose.is_object() || !pose.contains("rot") || !pose.contains("trans"))
        fail(Errc::syntax_error, "pose needs rot and trans");
      bool reflect = pose.value("reflect", false);
      UnitRotation rot = jsonio::rotation_from_json(pose["rot"], d, mode, base, reflect);
      Point trans = jsonio::point_from_json(pose["trans"], d, mode);
      kids.push_back(ChildPlacement{type, rot, trans});
    }
    children.push_back(std::move(kids));
  }

  return ParsedRule{InflationRule(mode, d, lambda, std::move(tiles), std::move(children)), {}};
}

}  // namespace

ParsedRule parse_rule(const std::string& text, bool force_exact) {
  try {
    return parse_rule_impl(text, Mode::exact);
  } catch (const jsonio::FloatLiteral&) {
    if (force_exact)
      fail(Errc::syntax_error, "floating-point literal in a scalar position (exact mode)");
    ParsedRule r = parse_rule_impl(text, Mode::approx);
    r.warnings.push_back(
        "rule contains floating-point literals; falling back to approx mode (epsilon = " +
        std::to_string(geom_epsilon()) + ")");
    return r;
  }
}

ParsedRule parse_rule_approx(const std::string& text) { return parse_rule_impl(text, Mode::approx); }

std::string serialize_rule(const InflationRule& rule) {
  ojson root = ojson::object();
  root["radicand"] = rule.radicand();
  root["lambda"] = jsonio::scalar_to_json(rule.lambda());
  Scalar base = rule.inflation_base();
  ojson tiles = ojson::array();
  for (const auto& p : rule.prototiles()) {
    ojson t = ojson::object();
    t["name"] = p.name;
    ojson vs = ojson::array();
    for (const auto& v : p.shape.vertices()) vs.push_back(jsonio::point_to_json(v));
    t["vertices"] = vs;
    tiles.push_back(t);
  }
  root["prototiles"] = tiles;
  ojson all = ojson::array();
  for (int j = 0; j < rule.prototile_count(); ++j) {
    ojson list = ojson::array();
    for (const auto& c : rule.children_of(j)) {
      ojson e = ojson::object();
      e["type"] = c.type;
      ojson pose = ojson::object();
      pose["rot"] = jsonio::rotation_to_json(c.rot, base, rule.radicand());
      pose["reflect"] = c.rot.reflect();
      pose["trans"] = jsonio::point_to_json(c.trans);
      e["pose"] = pose;
      list.push_back(e);
    }
    all.push_back(list);
  }
  root["children"] = all;
  return root.dump(2) + "\n";
}

InflationRule rule_to_approx(const InflationRule& rule) {
  auto ap = [](const Scalar& s) { return Scalar::approx(s.to_double()); };
  auto app = [&](const Point& p) { return Point{ap(p.x), ap(p.y)}; };
  std::vector<Prototile> tiles;
  for (const auto& p : rule.prototiles()) {
    std::vector<Point> vs;
    for (const auto& v : p.shape.vertices()) vs.push_back(app(v));
    tiles.push_back(Prototile{p.id, p.name, Polygon(std::move(vs))});
  }
  std::vector<std::vector<ChildPlacement>> children;
  for (int j = 0; j < rule.prototile_count(); ++j) {
    std::vector<ChildPlacement> kids;
    for (const auto& c : rule.children_of(j)) {
      kids.push_back(ChildPlacement{
          c.type, UnitRotation(ap(c.rot.re()), ap(c.rot.im()), c.rot.reflect()), app(c.trans)});
    }
    children.push_back(std::move(kids));
  }
  return InflationRule(Mode::approx, rule.radicand(), ap(rule.lambda()), std::move(tiles),
                       std::move(children));
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::degenerate_geometry: return "DegenerateGeometry";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_prototile: return "UnknownPrototile";
    case Errc::lambda_out_of_range: return "LambdaOutOfRange";
    case Errc::unsupported_radicand: return "UnsupportedRadicand";
    case Errc::unknown_builtin: return "UnknownBuiltin";
    case Errc::unknown_tile_type: return "UnknownTileType";
    case Errc::patch_too_large: return "PatchTooLarge";
    case Errc::spectral_no_converge: return "SpectralNoConverge";
    case Errc::use_count_instead: return "UseCountInstead";
    case Errc::not_a_rotation: return "NotARotation";
    case Errc::reducible_matrix: return "ReducibleMatrix";
    case Errc::insufficient_radius: return "InsufficientRadius";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace tessella
