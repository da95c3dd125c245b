#include "tessella/json_io.hpp"

#include <cmath>

#include "tessella/errors.hpp"

namespace tessella::jsonio {

namespace {

Rational parse_rational_string(const std::string& s) {
  try {
    return Rational::from_string(s);
  } catch (const std::exception& e) {
    fail(Errc::syntax_error, std::string("bad rational literal '") + s + "': " + e.what());
  }
}

bool is_integral(const Scalar& s) {
  return s.is_exact() && s.rat_part().is_integer() && s.irr_part().is_integer();
}

}  // namespace

void locate_byte(const std::string& text, size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

ojson scalar_to_json(const Scalar& s) {
  if (!s.is_exact()) return ojson(s.approx_value());
  if (s.irr_part().is_zero()) {
    return ojson(s.rat_part().num().to_string() + "/" + s.rat_part().den().to_string());
  }
  ojson o = ojson::object();
  o["rat"] = s.rat_part().num().to_string() + "/" + s.rat_part().den().to_string();
  o["irr"] = s.irr_part().num().to_string() + "/" + s.irr_part().den().to_string();
  return o;
}

Scalar scalar_from_json(const ojson& j, int d, Mode mode) {
  if (mode == Mode::approx) {
    if (j.is_number()) return Scalar::approx(j.get<double>());
    if (j.is_string()) return Scalar::approx(parse_rational_string(j.get<std::string>()).to_double());
    if (j.is_object()) {
      double rat = 0, irr = 0;
      if (j.contains("rat")) {
        rat = j["rat"].is_number() ? j["rat"].get<double>()
                                   : parse_rational_string(j["rat"].get<std::string>()).to_double();
      }
      if (j.contains("irr")) {
        irr = j["irr"].is_number() ? j["irr"].get<double>()
                                   : parse_rational_string(j["irr"].get<std::string>()).to_double();
      }
      return Scalar::approx(rat + irr * std::sqrt(static_cast<double>(d)));
    }
    fail(Errc::syntax_error, "bad scalar value: " + j.dump());
  }
  if (j.is_number()) throw FloatLiteral{};
  if (j.is_string()) return Scalar::exact_rat(parse_rational_string(j.get<std::string>()));
  if (j.is_object()) {
    Rational rat(0), irr(0);
    if (j.contains("rat")) {
      if (!j["rat"].is_string()) throw FloatLiteral{};
      rat = parse_rational_string(j["rat"].get<std::string>());
    }
    if (j.contains("irr")) {
      if (!j["irr"].is_string()) throw FloatLiteral{};
      irr = parse_rational_string(j["irr"].get<std::string>());
    }
    return Scalar::exact(rat, irr, d);
  }
  fail(Errc::syntax_error, "bad scalar value: " + j.dump());
}

ojson point_to_json(const Point& p) {
  ojson o = ojson::object();
  o["x"] = scalar_to_json(p.x);
  o["y"] = scalar_to_json(p.y);
  return o;
}

Point point_from_json(const ojson& j, int d, Mode mode) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    fail(Errc::syntax_error, "point must be an object with x and y");
  return {scalar_from_json(j["x"], d, mode), scalar_from_json(j["y"], d, mode)};
}

ojson rotation_to_json(const UnitRotation& u, const Scalar& base, int radicand) {
  ojson o = ojson::object();
  if (u.re().is_exact()) {
    auto root = base.exact_sqrt(radicand);
    for (int k = 0; k <= 24; ++k) {
      if (k % 2 == 1 && !root) continue;
      Scalar mult = k % 2 == 0 ? base.pow(k / 2) : base.pow(k / 2) * *root;
      Scalar g_re = u.re() * mult;
      Scalar g_im = u.im() * mult;
      if (is_integral(g_re) && is_integral(g_im)) {
        o["g_re"] = scalar_to_json(g_re);
        o["g_im"] = scalar_to_json(g_im);
        o["k"] = k;
        return o;
      }
    }
  }
  o["g_re"] = scalar_to_json(u.re());
  o["g_im"] = scalar_to_json(u.im());
  o["k"] = 0;
  return o;
}

UnitRotation rotation_from_json(const ojson& j, int d, Mode mode, const Scalar& base,
                                bool reflect) {
  if (!j.is_object() || !j.contains("g_re") || !j.contains("g_im") || !j.contains("k"))
    fail(Errc::syntax_error, "rotation must carry g_re, g_im and k");
  if (!j["k"].is_number_integer()) fail(Errc::syntax_error, "rotation k must be an integer");
  int k = j["k"].get<int>();
  if (k < 0) fail(Errc::syntax_error, "rotation k must be non-negative");
  Scalar g_re = scalar_from_json(j["g_re"], d, mode);
  Scalar g_im = scalar_from_json(j["g_im"], d, mode);
  Scalar denom = Scalar::one_like(base);
  if (k > 0) {
    if (k % 2 == 0) {
      denom = base.pow(k / 2);
    } else {
      auto root = base.exact_sqrt(d);
      if (!root)
        fail(Errc::syntax_error,
             "rotation uses an odd power of sqrt(L) but sqrt(L) is outside the scalar field");
      denom = base.pow(k / 2) * *root;
    }
  }
  Scalar norm = g_re * g_re + g_im * g_im;
  Scalar expect = base.pow(k);
  if (norm.is_exact() && !(norm - expect).is_zero())
    fail(Errc::syntax_error, "rotation is not unit: |g|^2 != L^k");
  try {
    return UnitRotation(g_re / denom, g_im / denom, reflect);
  } catch (const Error& e) {
    fail(Errc::syntax_error, std::string("rotation is not unit: ") + e.what());
  }
}

}  // namespace tessella::jsonio
