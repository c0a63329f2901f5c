#pragma once

#include "pzk/rays.hpp"

namespace pzk {

struct ExcludedAngle {
    Angle angle;
    std::string reason;
};

// Landing-class partition of a finite angle set: the computable restriction
// of the rational lamination.  Classes are sorted by least angle, angles
// sorted within each class.
struct RationalLamination {
    std::vector<Angle> angle_universe;           // sorted, certified angles only
    std::vector<std::vector<Angle>> classes;
    std::vector<Complex> class_points;           // representative landing point per class
    std::vector<ExcludedAngle> exclusions;
    std::string source;
    double tolerance = 0.0;

    int class_of(const Angle& t) const;          // -1 when absent
};

struct LaminationOptions {
    double tol = 1e-7;
    int threads = 1;
    LandingOptions landing;
};

RationalLamination compute_lamination(const Polynomial& f, const std::vector<Angle>& universe,
                                      const LaminationOptions& opts = {});

// default universe: angles of denominator dividing d^k - 1 for k <= K,
// plus their first preimages
std::vector<Angle> default_universe(int d, int K, int preimage_levels = 1);

// all reduced p/q with q <= max_den
std::vector<Angle> universe_up_to_denominator(std::int64_t max_den);

struct ViolationReport {
    struct Item {
        Angle a, b;
        std::string detail;
    };
    std::vector<Item> items;
    bool pass() const { return items.empty(); }
};

// forward invariance: a ~ b and both images in-universe => images equivalent
ViolationReport check_invariance(const RationalLamination& lam, int d);

// classes pairwise unlinked on the circle
ViolationReport check_unlinked(const RationalLamination& lam);

struct ContainmentResult {
    bool contains = false;
    Angle witness_a, witness_b;  // equivalent in small, split in big
};

ContainmentResult lamination_contains(const RationalLamination& big, const RationalLamination& small);

// Two rays certified to land at a common point.
struct GeometricRayPair {
    RayPair pair;
    RayTrace trace_a, trace_b;
    Complex landing{0.0, 0.0};
    double landing_gap = 0.0;  // distance between the two certified landings
};

GeometricRayPair geometric_ray_pair(const Polynomial& f, const Angle& a, const Angle& b,
                                    double tol = 1e-7, const LandingOptions& opts = {});

enum class Containment { inside, outside, boundary_ambiguous };

// Region between two disjoint unlinked geometric ray-pairs, truncated by the
// height-1 equipotential.
struct SliceRegion {
    GeometricRayPair wall_a, wall_b;
    std::vector<Angle> orientation;   // the four angles in anticlockwise order
    std::vector<Complex> polygon;     // closed boundary polyline
    double equipotential_height = 1.0;

    Containment membership(const Complex& z, double margin = 1e-9) const;
};

SliceRegion slice_between(const Polynomial& f, const GeometricRayPair& p1, const GeometricRayPair& p2);

// winding-number membership for a closed polyline
int winding_number(const std::vector<Complex>& polygon, const Complex& z);
double distance_to_polygon(const std::vector<Complex>& polygon, const Complex& z);

}  // namespace pzk
