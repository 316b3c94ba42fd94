#pragma once

#include <optional>
#include <vector>

#include "vassiliev/geometry.hpp"
#include "vassiliev/knots.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

// Generic rod directions: unit, pairwise non-parallel, and not parallel to
// any segment of the knot under study.
struct DirectionSet {
    std::vector<Vec3> dirs;
};

struct ChordSolution {
    double s1 = 0; // chord runs from k(s1) to k(s2), parallel to +d
    double s2 = 0;
    int sign = 0; // orientation sign of the direction map at the solution
};

struct TinkertoySolution {
    std::vector<double> knot_params;  // anchor parameters, ascending
    std::optional<Vec3> free_point;   // internal node, if any
    std::vector<int> rod_direction;   // direction index per rod
    int sign = 0;
};

// All ordered point pairs on the knot whose connecting chord is parallel to
// +d, with the sign of the chord-direction map.  Throws on genericity
// failures (a segment parallel to d, or an ill-conditioned solve).
std::vector<ChordSolution> find_chords(const PolygonalKnot& k, const Vec3& d);

// All tripods: three anchors on distinct segments joined to a free node by
// rods parallel to the given directions (one direction per rod, every
// assignment of directions to rods, either orientation of each rod).
std::vector<TinkertoySolution> find_tripods(const PolygonalKnot& k,
                                            const std::vector<Vec3>& dirs);

// The degree-2 invariant as an exact rational signed count of tinkertoy
// diagrams.  Repeats the count over `trials` direction sets (the given one,
// then rotated copies) and requires all values to agree.
Rational signed_count_v2(const PolygonalKnot& k, const DirectionSet& dirs, int trials);

// A random unit-vector triple, deterministic in seed.
DirectionSet random_direction_set(unsigned long long seed);

// Uniformly resampled polygonal approximation of a parametric knot.
PolygonalKnot polygonalize(const ParametricKnot& k, int segments);

} // namespace vassiliev
