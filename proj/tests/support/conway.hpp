#pragma once

// Brute-force Conway polynomial oracle, used only by tests.  Computes the
// Conway polynomial of a knot diagram (truncated at z^3) by the skein
// recursion on Gauss diagrams, resolving the first ascending violation.

#include <array>
#include <map>
#include <vector>

#include "vassiliev/knots.hpp"

namespace vassiliev::testing {

struct Pass {
    int crossing = 0;
    bool over = false;
};

struct GaussDiagram {
    std::vector<std::vector<Pass>> comps; // cyclic pass sequences
    std::map<int, int> sign;              // crossing id -> +/-1
};

GaussDiagram gauss_diagram(const PlaneDiagram& d);

// Conway polynomial coefficients [z^0, z^1, z^2, z^3].
std::array<long long, 4> conway(const GaussDiagram& d);

// z^2 coefficient of the Conway polynomial of a knot diagram.
long long conway_c2(const PlaneDiagram& d);

} // namespace vassiliev::testing
