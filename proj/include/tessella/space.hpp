#pragma once

#include "tessella/engine.hpp"

namespace tessella {

// A patch together with the reference point and the radius of the disk around
// it that the tiles are guaranteed to cover. The tiling-space metric is probed
// through these truncated views.
struct CenteredPatch {
  Patch patch;
  double origin_x = 0, origin_y = 0;
  double radius = 0;
};

// Region covered by an untransformed inflation patch: sigma^scale_exp applied
// to the seed prototile's shape.
Polygon covered_region(const InflationRule& rule, const Patch& patch);

// Coverage radius computed from the patch's provenance: an untransformed
// F^r(seed) covers sigma^r applied to the seed prototile.
CenteredPatch centered_patch(const InflationRule& rule, Patch patch, double origin_x,
                             double origin_y);
// Same view after translating the tiles by (dx, dy); the coverage radius
// shrinks conservatively by |(dx, dy)|.
CenteredPatch translated_centered_patch(const InflationRule& rule, const CenteredPatch& base,
                                        const Scalar& dx, const Scalar& dy);

struct MetricReport {
  double epsilon = 0;
  double radius_used = 0;
  bool floor_hit = false;
};

// Does the N_T(eps) condition hold in both directions at this eps?
// Throws InsufficientRadius when 1/eps exceeds a coverage radius.
bool patch_distance_at(const InflationRule& rule, const CenteredPatch& a, const CenteredPatch& b,
                       double eps);

// Smallest eps in [1e-3, 1] passing both directed conditions, bisected to
// 1e-6; the effective floor is raised to the inverse coverage radius.
MetricReport patch_distance(const InflationRule& rule, const CenteredPatch& a,
                            const CenteredPatch& b);

struct CongruenceResult {
  bool found = false;
  Isometry witness;       // maps the query onto a subcollection of F^r(P)
  int target_seed = -1;   // the prototile P that hosted the embedding
};

// Decides X^F(S)-style membership at desk scale: is the query congruent to a
// subcollection of some F^r(P)?
CongruenceResult congruent_subpatch(const InflationRule& rule, const Patch& query, int r,
                                    long long cap = 5'000'000);

struct AdjacencyConfiguration {
  int type_a = 0, type_b = 0;
  Isometry relative;    // pose_a^{-1} . pose_b, canonicalized
  long long count = 0;
};

// Distinct edge-contact configurations (positive shared boundary length), up
// to congruence, with multiplicities.
std::vector<AdjacencyConfiguration> adjacency_census(const InflationRule& rule,
                                                     const Patch& patch);

std::string census_to_json(const InflationRule& rule,
                           const std::vector<AdjacencyConfiguration>& census);
std::string metric_report_json(const MetricReport& report);

}  // namespace tessella
