#pragma once

#include <string>
#include <vector>

#include "tessella/geom.hpp"

namespace tessella {

struct Prototile {
  int id;
  std::string name;
  Polygon shape;  // defining pose, counterclockwise

  friend bool operator==(const Prototile& a, const Prototile& b) {
    return a.id == b.id && a.name == b.name && a.shape.vertices() == b.shape.vertices();
  }
};

// One child of a prototile's decomposition: the placed copy of prototile
// `type` is rot.apply(lambda * shape(type)) + trans.
struct ChildPlacement {
  int type;
  UnitRotation rot;
  Point trans;

  friend bool operator==(const ChildPlacement& a, const ChildPlacement& b) {
    return a.type == b.type && a.rot == b.rot && a.trans == b.trans;
  }
};

enum class TileStatus { pass, overlap, gap, out_of_bounds };

struct PrototileValidation {
  int prototile = -1;
  TileStatus status = TileStatus::pass;
  int child_a = -1, child_b = -1;  // offending children where applicable
  Scalar witness_area;             // overlap area or uncovered-area deficit
  std::string message;
};

struct RuleValidationReport {
  std::vector<PrototileValidation> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (e.status != TileStatus::pass) return false;
    return true;
  }
  std::string summary() const;
};

class InflationRule {
 public:
  InflationRule(Mode mode, int radicand, Scalar lambda, std::vector<Prototile> prototiles,
                std::vector<std::vector<ChildPlacement>> children);

  Mode mode() const { return mode_; }
  int radicand() const { return radicand_; }
  const Scalar& lambda() const { return lambda_; }
  Scalar lambda_sq() const { return lambda_ * lambda_; }
  Scalar inflation_base() const { return (lambda_ * lambda_).inverse(); }  // L = 1/lambda^2

  int prototile_count() const { return static_cast<int>(prototiles_.size()); }
  const Prototile& prototile(int j) const { return prototiles_.at(static_cast<size_t>(j)); }
  const std::vector<Prototile>& prototiles() const { return prototiles_; }
  const std::vector<ChildPlacement>& children_of(int j) const {
    return children_.at(static_cast<size_t>(j));
  }
  const std::vector<std::vector<ChildPlacement>>& children() const { return children_; }

  Polygon child_region(int j, int k) const;

  bool validated() const { return validated_; }
  void mark_validated() { validated_ = true; }

  // Expansion similarity used by the engine: a complex factor of modulus
  // 1/lambda, chosen as (1/lambda) * conj(first child rotation of prototile 0)
  // so the built-in rules inflate along integer-friendly coordinates.
  const Point& sigma() const { return sigma_; }
  // Unit rotation part of sigma (sigma * lambda).
  const Point& sigma_unit() const { return sigma_unit_; }

  // Which prototile is congruent to the mirror image of prototile j (-1 when
  // none is). Self-mirror shapes map to themselves.
  int mirror_of(int j) const { return mirror_.at(static_cast<size_t>(j)); }
  // Direct congruence nu with nu(conj(shape j)) == shape(mirror_of(j)).
  const Isometry& mirror_map(int j) const { return mirror_map_.at(static_cast<size_t>(j)); }

  const std::string& hash() const { return hash_; }

  friend bool operator==(const InflationRule& a, const InflationRule& b) {
    return a.mode_ == b.mode_ && a.radicand_ == b.radicand_ && a.lambda_ == b.lambda_ &&
           a.prototiles_ == b.prototiles_ && a.children_ == b.children_;
  }

 private:
  Mode mode_;
  int radicand_;
  Scalar lambda_;
  std::vector<Prototile> prototiles_;
  std::vector<std::vector<ChildPlacement>> children_;
  bool validated_ = false;
  Point sigma_;
  Point sigma_unit_;
  std::vector<int> mirror_;
  std::vector<Isometry> mirror_map_;
  std::string hash_;
};

RuleValidationReport validate_rule(InflationRule& rule);

enum class Builtin { square, pinwheel };
InflationRule builtin_rule(Builtin which);
InflationRule builtin_rule(const std::string& name);  // "square" | "pinwheel"

struct ParsedRule {
  InflationRule rule;
  std::vector<std::string> warnings;
};

// Parses the JSON rule-file format. When force_exact is set, floating-point
// literals in scalar positions are a syntax error; otherwise they demote the
// whole rule to approx mode with a warning.
ParsedRule parse_rule(const std::string& text, bool force_exact = false);
ParsedRule parse_rule_approx(const std::string& text);  // parse everything as doubles

std::string serialize_rule(const InflationRule& rule);

// Rebuilds the rule with every scalar demoted to a tolerance-carrying double.
InflationRule rule_to_approx(const InflationRule& rule);

}  // namespace tessella
