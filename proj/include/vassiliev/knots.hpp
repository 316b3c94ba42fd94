#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vassiliev/geometry.hpp"

namespace vassiliev {

// A closed curve in 3-space with parameter s in [0,1).
struct ParametricKnot {
    std::string name;
    std::function<Vec3(double)> at;
    std::function<Vec3(double)> tangent; // d/ds, never zero
};

// Piecewise-linear closed curve.  Tangents are segment directions with the
// left-limit convention at corners.
struct PolygonalKnot {
    std::vector<Vec3> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    Vec3 at(double s) const;
    Vec3 tangent(double s) const; // segment direction (unnormalized: edge * n)
    ParametricKnot to_parametric(const std::string& name = "polyline") const;
};

struct Crossing {
    double s_under = 0;
    double s_over = 0;
    int sign = 0; // +1 or -1
};

struct PlaneDiagram {
    Vec3 direction; // unit projection direction (viewer looks along -direction)
    std::vector<Crossing> crossings;
};

// Named closed-form knots: unknot, trefoil, figure8, torus(p,q) with p,q
// coprime.  Throws std::invalid_argument on unknown names or gcd(p,q) != 1.
ParametricKnot standard_knot(const std::string& name);

// A round circle with the given center, plane normal, and radius.
ParametricKnot circle_knot(const Vec3& center, const Vec3& normal, double radius);

// All crossings of the projection along dir, with signs.  Retries with a
// jittered direction (up to 20 times) when the projection is non-generic.
PlaneDiagram extract_crossings(const ParametricKnot& k, Vec3 dir);
PlaneDiagram extract_crossings(const PolygonalKnot& k, Vec3 dir);

int writhe(const PlaneDiagram& d);

// Signed count of a-over-b crossings; asserts it matches the b-over-a count.
int combinatorial_linking(const ParametricKnot& a, const ParametricKnot& b, Vec3 dir);

// k plus a smooth low-frequency perturbation, deterministic in seed.
ParametricKnot perturb(const ParametricKnot& k, double amplitude, unsigned long long seed);

// Flatten k onto the plane of d.direction and confine all vertical deviation
// to bumps of height eps at the crossing strands, so the writhe of d is
// realized by an almost planar curve.
ParametricKnot almost_planar(const ParametricKnot& k, const PlaneDiagram& d,
                             double eps = 0.05);

// Knot file format: {"type":"polyline","vertices":[[x,y,z],...]} or
// {"type":"named","name":...,"params":{...}}.
ParametricKnot knot_from_json(const std::string& text);
ParametricKnot load_knot(const std::string& path_or_name);

// A curve with transversal double points (an immersion), plus machinery to
// push the strands off each other.
struct SingularKnot {
    ParametricKnot curve;
    // each double point: parameter pair (s1, s2) with curve(s1) == curve(s2)
    std::vector<std::pair<double, double>> double_points;
};

// Planar immersed curve with exactly j double points (j in 1..3): the flat
// (2,3) torus-knot shadow with 3 - j crossings already pushed off.
SingularKnot standard_singular_curve(int j);

// Resolve every double point: signs[i] = +1 lifts the first strand above the
// second by eps, -1 below.  The result is an embedded knot.
ParametricKnot resolve_singular(const SingularKnot& k, const std::vector<int>& signs,
                                double eps = 0.35);

} // namespace vassiliev
