#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vassiliev/trivalent_graph.hpp"

namespace vassiliev {

// A boundary stratum of the compactified configuration space on n points:
// a family of subsets of {0..n-1}, each of size >= 2, pairwise nested or
// disjoint.  The codimension of the stratum is the family size.
struct StratumDescriptor {
    int n_points = 0;
    std::vector<std::set<int>> family;

    bool operator<(const StratumDescriptor& o) const {
        return std::tie(n_points, family) < std::tie(o.n_points, o.family);
    }
    bool operator==(const StratumDescriptor& o) const {
        return n_points == o.n_points && family == o.family;
    }
};

// All valid nested-or-disjoint families with 1 <= |family| <= max_codim.
// Bounds: n <= 7, max_codim <= 4.
std::vector<StratumDescriptor> enumerate_strata(int n, int max_codim);

// 3n - |family|.
int stratum_dimension(const StratumDescriptor& s);

enum class FaceClass {
    PrincipalKnotPair,
    PrincipalPropagatorPair,
    PrincipalDisconnected,
    HiddenDegenerate,
    HiddenSymmetryVanishing,
    Anomalous,
    Infinity,
    Unresolved,
};

std::string face_class_name(FaceClass c);

// Classify the codimension-1 face of g's configuration space where the
// vertices in `collapsing` collide (or escape to infinity).  For
// |collapsing| >= 3 the knot vertices in the set must form a contiguous
// cyclic block.
FaceClass classify_face(const TrivalentGraph& g, const std::set<int>& collapsing,
                        bool at_infinity = false);

struct FaceCensus {
    bool all_vanish = true; // no Unresolved face found
    std::map<FaceClass, int> counts;
};

// Exhaustive classification of every >= 3-point collision face of g (knot
// block contiguous).  all_vanish is true iff none is Unresolved.
FaceCensus hidden_faces_all_vanish(const TrivalentGraph& g);

} // namespace vassiliev
