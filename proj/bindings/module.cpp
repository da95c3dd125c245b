#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tessella/analysis.hpp"
#include "tessella/rule.hpp"
#include "tessella/space.hpp"
#include "tessella/svg.hpp"

namespace py = pybind11;
using namespace tessella;

namespace {

py::dict report_to_dict(const RuleValidationReport& rep) {
  py::dict d;
  d["pass"] = rep.ok();
  py::list entries;
  for (const auto& e : rep.entries) {
    py::dict ej;
    ej["prototile"] = e.prototile;
    ej["status"] = e.status == TileStatus::pass          ? "pass"
                   : e.status == TileStatus::overlap     ? "overlap"
                   : e.status == TileStatus::gap         ? "gap"
                                                         : "out_of_bounds";
    ej["child_a"] = e.child_a;
    ej["child_b"] = e.child_b;
    ej["witness_area"] = e.witness_area.to_double();
    entries.append(ej);
  }
  d["prototiles"] = entries;
  return d;
}

std::vector<std::vector<long long>> matrix_to_lists(const IntMatrix& m) {
  std::vector<std::vector<long long>> out(static_cast<size_t>(m.n));
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      out[static_cast<size_t>(i)].push_back(
          m.at(i, j).fits_int64() ? m.at(i, j).as_int64()
                                  : static_cast<long long>(m.at(i, j).to_double()));
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tessella: exact inflation (substitution) tilings of the plane";

  py::register_exception<Error>(m, "TessellaError");

  py::class_<InflationRule>(m, "InflationRule")
      .def_property_readonly("prototile_count", &InflationRule::prototile_count)
      .def_property_readonly("radicand", &InflationRule::radicand)
      .def_property_readonly("validated", &InflationRule::validated)
      .def_property_readonly("hash", &InflationRule::hash)
      .def("child_count", [](const InflationRule& r, int j) {
        return r.children_of(j).size();
      })
      .def("mirror_of", &InflationRule::mirror_of)
      .def("serialize", [](const InflationRule& r) { return serialize_rule(r); })
      .def("__repr__", [](const InflationRule& r) {
        return "<InflationRule prototiles=" + std::to_string(r.prototile_count()) + " hash=" +
               r.hash() + ">";
      });

  py::class_<Patch>(m, "Patch")
      .def_property_readonly("seed_type", [](const Patch& p) { return p.seed_type; })
      .def_property_readonly("generation", [](const Patch& p) { return p.generation; })
      .def_property_readonly("scale_exponent", [](const Patch& p) { return p.scale_exp; })
      .def("__len__", [](const Patch& p) { return p.tiles.size(); })
      .def("tile_types", [](const Patch& p) {
        std::vector<int> t;
        t.reserve(p.tiles.size());
        for (const Tile& tile : p.tiles) t.push_back(tile.type);
        return t;
      })
      .def("tile_angles", [](const Patch& p) {
        std::vector<double> a;
        a.reserve(p.tiles.size());
        for (const Tile& tile : p.tiles) a.push_back(tile.rot.angle());
        return a;
      })
      .def("__repr__", [](const Patch& p) {
        return "<Patch r=" + std::to_string(p.generation) + " tiles=" +
               std::to_string(p.tiles.size()) + ">";
      });

  m.def("builtin", [](const std::string& name) { return builtin_rule(name); },
        py::arg("name"), "Load a validated built-in rule (square or pinwheel).");
  m.def("parse_rule", [](const std::string& text, bool force_exact) {
    return parse_rule(text, force_exact).rule;
  }, py::arg("text"), py::arg("force_exact") = false);
  m.def("validate", [](InflationRule& rule) { return report_to_dict(validate_rule(rule)); });

  m.def("inflate", [](const InflationRule& rule, int seed_type, int r, long long cap, int threads) {
    EngineOptions opts;
    if (cap > 0) opts.cap = cap;
    opts.threads = threads;
    return inflate_patch(rule, seed_patch(rule, seed_type), r, opts);
  }, py::arg("rule"), py::arg("seed_type") = 0, py::arg("r") = 1, py::arg("cap") = 0,
     py::arg("threads") = 0);

  m.def("patch_json", [](const InflationRule& rule, const Patch& p) {
    return patch_to_json(rule, p);
  });

  m.def("substitution_matrix", [](const InflationRule& rule) {
    return matrix_to_lists(substitution_matrix(rule).A);
  });
  m.def("twisted_matrix", [](const InflationRule& rule, int mm, const std::string& conv) {
    return twisted_matrix(rule, mm, conv == "conjugated" ? ReflectionConvention::conjugated
                                                         : ReflectionConvention::plain)
        .entries;
  }, py::arg("rule"), py::arg("m"), py::arg("convention") = "plain");
  m.def("spectral_radius", [](const CMat& mat) { return spectral_radius(mat); });

  m.def("check_hypotheses", [](const InflationRule& rule, int r, long long cap) {
    HypothesisReport rep = check_hypotheses(rule, r, cap > 0 ? cap : 5'000'000);
    py::dict d;
    d["r"] = rep.r;
    d["a"] = rep.a_holds;
    d["b"] = rep.b_holds;
    d["b_exhaustive"] = rep.b_exhaustive;
    if (rep.b_witness) {
      py::dict w;
      w["seed"] = rep.b_witness->seed_type;
      w["tile_a"] = rep.b_witness->tile_a;
      w["tile_b"] = rep.b_witness->tile_b;
      w["method"] = rep.b_witness->verdict.method;
      d["witness"] = w;
    }
    return d;
  }, py::arg("rule"), py::arg("r"), py::arg("cap") = 0);

  m.def("weyl_sum", [](const InflationRule& rule, int seed, int r, int mm, long long cap) {
    WeylResult res = weyl_sum(rule, seed, r, mm, cap > 0 ? cap : 5'000'000);
    py::dict d;
    d["value"] = res.value;
    d["matrix_value"] = res.matrix_value;
    d["tiles"] = res.tiles;
    d["convention"] = res.convention;
    return d;
  }, py::arg("rule"), py::arg("seed_type"), py::arg("r"), py::arg("m"), py::arg("cap") = 0);

  m.def("frequency_convergence", [](const InflationRule& rule, int r_max) {
    FrequencyTable t = frequency_convergence(rule, r_max);
    py::dict d;
    d["perron"] = t.perron;
    py::list rows;
    for (const auto& row : t.rows) {
      py::dict rj;
      rj["r"] = row.r;
      rj["max_pair_l1"] = row.max_pair_l1;
      rj["nu"] = row.nu;
      rj["dist_to_perron"] = row.dist_to_perron;
      rows.append(rj);
    }
    d["rows"] = rows;
    return d;
  });

  m.def("boundary_ratio", [](const InflationRule& rule, int prototile, double t) {
    BoundaryRatioReport rep = boundary_ratio(rule.prototile(prototile).shape, t);
    py::dict d;
    d["t"] = rep.t;
    d["ratio"] = rep.ratio;
    d["exact"] = rep.exact;
    d["method"] = rep.method;
    return d;
  }, py::arg("rule"), py::arg("prototile"), py::arg("t"));

  m.def("render_svg", [](const InflationRule& rule, const Patch& p, const std::string& color_by,
                         double stroke) {
    RenderSpec spec;
    spec.color_by = color_by == "angle"        ? ColorBy::angle_hue
                    : color_by == "handedness" ? ColorBy::handedness
                                               : ColorBy::type;
    spec.stroke_width = stroke;
    return render_svg(rule, p, spec);
  }, py::arg("rule"), py::arg("patch"), py::arg("color_by") = "type", py::arg("stroke") = 0.0);

  m.def("adjacency_census_size", [](const InflationRule& rule, const Patch& p) {
    return adjacency_census(rule, p).size();
  });

  m.attr("__version__") = "0.1.0";
}
