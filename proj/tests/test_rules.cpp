#include <doctest.h>

#include "tessella/rule.hpp"

using namespace tessella;

namespace {

const char* kSquareJson = R"({
  "radicand": 1,
  "lambda": "1/2",
  "prototiles": [
    {"name": "sq", "vertices": [
      {"x": "0/1", "y": "0/1"}, {"x": "1/1", "y": "0/1"},
      {"x": "1/1", "y": "1/1"}, {"x": "0/1", "y": "1/1"}]}
  ],
  "children": [[
    {"type": 0, "pose": {"rot": {"g_re": "1", "g_im": "0", "k": 0}, "reflect": false, "trans": {"x": "0", "y": "0"}}},
    {"type": 0, "pose": {"rot": {"g_re": "1", "g_im": "0", "k": 0}, "reflect": false, "trans": {"x": "1/2", "y": "0"}}},
    {"type": 0, "pose": {"rot": {"g_re": "1", "g_im": "0", "k": 0}, "reflect": false, "trans": {"x": "1/2", "y": "1/2"}}},
    {"type": 0, "pose": {"rot": {"g_re": "1", "g_im": "0", "k": 0}, "reflect": false, "trans": {"x": "0", "y": "1/2"}}}
  ]]
})";

std::string replace_first(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("builtin counts match the rule definitions") {
  InflationRule square = builtin_rule(Builtin::square);
  CHECK(square.prototile_count() == 1);
  CHECK(square.children_of(0).size() == 4);
  CHECK(square.validated());

  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CHECK(pin.prototile_count() == 2);
  CHECK(pin.children_of(0).size() == 5);
  CHECK(pin.children_of(1).size() == 5);
  CHECK(pin.validated());

  CHECK_THROWS_AS(builtin_rule("nonagon"), Error);
}

TEST_CASE("builtins validate in exact mode with zero tolerance") {
  for (auto which : {Builtin::square, Builtin::pinwheel}) {
    InflationRule rule = which == Builtin::square ? builtin_rule(Builtin::square)
                                                  : builtin_rule(Builtin::pinwheel);
    RuleValidationReport rep = validate_rule(rule);
    CHECK(rep.ok());
    // exact area identity per prototile
    Scalar l2 = rule.lambda_sq();
    for (int j = 0; j < rule.prototile_count(); ++j) {
      Scalar sum = Scalar::zero_like(rule.lambda());
      for (const auto& c : rule.children_of(j)) {
        sum = sum + l2 * rule.prototile(c.type).shape.area();
      }
      CHECK(sum == rule.prototile(j).shape.area());
    }
  }
}

TEST_CASE("every pinwheel child sits inside its parent") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  for (int j = 0; j < 2; ++j) {
    for (size_t k = 0; k < pin.children_of(j).size(); ++k) {
      CHECK(polygon_contains(pin.prototile(j).shape, pin.child_region(j, static_cast<int>(k))));
    }
  }
}

TEST_CASE("pinwheel mixes handedness through its two prototiles; square does not") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CHECK(pin.mirror_of(0) == 1);
  CHECK(pin.mirror_of(1) == 0);
  bool has_own = false, has_mirror = false;
  for (const auto& c : pin.children_of(0)) {
    (c.type == 0 ? has_own : has_mirror) = true;
    CHECK(!c.rot.reflect());  // handedness lives in the types, poses stay direct
  }
  CHECK(has_own);
  CHECK(has_mirror);

  InflationRule square = builtin_rule(Builtin::square);
  CHECK(square.mirror_of(0) == 0);  // the square is its own mirror image
  for (const auto& c : square.children_of(0)) {
    CHECK(c.type == 0);
    CHECK(!c.rot.reflect());
    CHECK(c.rot.is_identity());
  }
}

TEST_CASE("serialization round-trips builtins structurally") {
  for (const char* name : {"square", "pinwheel"}) {
    InflationRule rule = builtin_rule(name);
    std::string text = serialize_rule(rule);
    ParsedRule parsed = parse_rule(text, true);
    CHECK(parsed.warnings.empty());
    CHECK(parsed.rule == rule);
    CHECK(parsed.rule.hash() == rule.hash());
  }
}

TEST_CASE("pinwheel rotations serialize in factored g/sqrt(L)^k form") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  std::string text = serialize_rule(pin);
  // e^{ia} = (2 + i)/sqrt5 must appear as g = (2, 1), k = 1
  CHECK(text.find("\"g_re\": \"2/1\"") != std::string::npos);
  CHECK(text.find("\"g_im\": \"1/1\"") != std::string::npos);
  CHECK(text.find("\"k\": 1") != std::string::npos);
}

TEST_CASE("a reflecting child pose parses and validates") {
  // same square cover, but the corner child is placed via a reflection
  std::string text = replace_first(
      kSquareJson,
      "{\"type\": 0, \"pose\": {\"rot\": {\"g_re\": \"1\", \"g_im\": \"0\", \"k\": 0}, "
      "\"reflect\": false, \"trans\": {\"x\": \"0\", \"y\": \"0\"}}}",
      "{\"type\": 0, \"pose\": {\"rot\": {\"g_re\": \"1\", \"g_im\": \"0\", \"k\": 0}, "
      "\"reflect\": true, \"trans\": {\"x\": \"0\", \"y\": \"1/2\"}}}");
  ParsedRule parsed = parse_rule(text, true);
  CHECK(parsed.rule.children_of(0)[0].rot.reflect());
  RuleValidationReport rep = validate_rule(parsed.rule);
  CHECK(rep.ok());
}

TEST_CASE("validation failures are reported, not thrown") {
  SUBCASE("gap: one pinwheel child removed leaves deficit lambda^2 * area") {
    InflationRule pin = builtin_rule(Builtin::pinwheel);
    auto children = pin.children();
    children[0].pop_back();
    InflationRule broken(pin.mode(), pin.radicand(), pin.lambda(), pin.prototiles(), children);
    RuleValidationReport rep = validate_rule(broken);
    CHECK(!rep.ok());
    CHECK(rep.entries[0].status == TileStatus::gap);
    CHECK(rep.entries[0].witness_area == Scalar::exact_rat(Rational(1, 5)));
    CHECK(rep.entries[1].status == TileStatus::pass);
  }
  SUBCASE("overlap: duplicated child") {
    InflationRule square = builtin_rule(Builtin::square);
    auto children = square.children();
    children[0][1] = children[0][0];
    InflationRule broken(square.mode(), square.radicand(), square.lambda(), square.prototiles(),
                         children);
    RuleValidationReport rep = validate_rule(broken);
    CHECK(!rep.ok());
    CHECK(rep.entries[0].status == TileStatus::overlap);
    CHECK(rep.entries[0].witness_area == Scalar::exact_rat(Rational(1, 4)));
  }
  SUBCASE("out of bounds: child shifted outside the prototile") {
    InflationRule square = builtin_rule(Builtin::square);
    auto children = square.children();
    children[0][3].trans = Point::exact(Rational(7, 8), Rational(7, 8));
    InflationRule broken(square.mode(), square.radicand(), square.lambda(), square.prototiles(),
                         children);
    RuleValidationReport rep = validate_rule(broken);
    CHECK(!rep.ok());
    CHECK(rep.entries[0].status == TileStatus::out_of_bounds);
  }
}

TEST_CASE("parse errors carry distinct codes") {
  SUBCASE("unknown prototile reference") {
    std::string text = replace_first(kSquareJson, "\"type\": 0, \"pose\": {\"rot\": {\"g_re\": \"1\", \"g_im\": \"0\", \"k\": 0}, \"reflect\": false, \"trans\": {\"x\": \"0\", \"y\": \"0\"}}",
                                     "\"type\": 7, \"pose\": {\"rot\": {\"g_re\": \"1\", \"g_im\": \"0\", \"k\": 0}, \"reflect\": false, \"trans\": {\"x\": \"0\", \"y\": \"0\"}}");
    try {
      parse_rule(text, true);
      FAIL("expected UnknownPrototile");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_prototile);
    }
  }
  SUBCASE("lambda outside (0,1)") {
    std::string text = replace_first(kSquareJson, "\"lambda\": \"1/2\"", "\"lambda\": \"2/1\"");
    try {
      parse_rule(text, true);
      FAIL("expected LambdaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::lambda_out_of_range);
    }
  }
  SUBCASE("radicand must be square-free") {
    std::string text = replace_first(kSquareJson, "\"radicand\": 1", "\"radicand\": 4");
    try {
      parse_rule(text, true);
      FAIL("expected UnsupportedRadicand");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unsupported_radicand);
    }
  }
  SUBCASE("json syntax errors carry line and column") {
    std::string text = kSquareJson;
    text.insert(text.find("\"children\""), "] BROKEN ");
    try {
      parse_rule(text, true);
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::syntax_error);
      CHECK(e.line() > 1);
      CHECK(e.col() >= 1);
    }
  }
  SUBCASE("non-unit rotation is rejected") {
    std::string text = replace_first(kSquareJson, "{\"g_re\": \"1\", \"g_im\": \"0\", \"k\": 0}",
                                     "{\"g_re\": \"1\", \"g_im\": \"1\", \"k\": 0}");
    try {
      parse_rule(text, true);
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::syntax_error);
    }
  }
}

TEST_CASE("float literals demote to approx mode with a warning") {
  std::string text = replace_first(kSquareJson, "\"lambda\": \"1/2\"", "\"lambda\": 0.5");
  ParsedRule parsed = parse_rule(text, false);
  CHECK(parsed.rule.mode() == Mode::approx);
  REQUIRE(!parsed.warnings.empty());
  RuleValidationReport rep = validate_rule(parsed.rule);
  CHECK(rep.ok());
  // forcing exact turns the same file into a syntax error
  CHECK_THROWS_AS(parse_rule(text, true), Error);
}
