#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vassiliev/geometry.hpp"
#include "vassiliev/knots.hpp"
#include "vassiliev/orientation.hpp"
#include "vassiliev/trivalent_graph.hpp"
#include "vassiliev/weights.hpp"

namespace vassiliev {

struct IntegralEstimate {
    double value = 0;
    double std_error = 0;
    long long n_samples = 0;
    std::uint64_t seed = 0;
};

// Unit vector from x to y.
Vec3 gauss_direction(const Vec3& x, const Vec3& y);

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};
    const std::array<double, 3>& operator[](int i) const { return m[i]; }
    std::array<double, 3>& operator[](int i) { return m[i]; }
};

// Antisymmetric kernel of the normalized sphere form pulled back through the
// direction map: P(x)[mu][nu] = eps_{mu nu sigma} x^sigma / (4 pi |x|^3).
Mat3 propagator(const Vec3& x);

// A point of the configuration space of a graph: one curve parameter per knot
// vertex (in strict cyclic order) and one free 3-space point per internal
// vertex.
struct Configuration {
    std::vector<double> knot_params;
    std::vector<Vec3> free_points;
};

// The density of the integrand form of g at c, relative to the standard
// orientation of the domain (knot parameters in cycle order, then each free
// point's x,y,z).  Independent of the choice of labelling.
double graph_integrand(const TrivalentGraph& g, const Labelling& lab,
                       const Configuration& c, const ParametricKnot& k);

// Monte Carlo estimate of the configuration-space integral of g over k with a
// fixed substream layout, so the result is independent of thread count.
IntegralEstimate mc_integrate(const TrivalentGraph& g, const ParametricKnot& k,
                              long long n, std::uint64_t seed, int threads = 0);

// Gauss linking integral of two disjoint closed curves.
IntegralEstimate linking_integral(const ParametricKnot& a, const ParametricKnot& b,
                                  long long n, std::uint64_t seed, int threads = 0);

// MC check that the propagator form integrates to 1 over a sphere about 0.
IntegralEstimate sphere_form_normalization(long long n, std::uint64_t seed);

// Sum of w(G) I(G) / |Aut G| over unoriented graph classes of the weight
// system's degree.  Skips graphs with zero weight, identically-zero integrand
// (doubled propagator), or the unsupported extension shape.  Appends a
// warning when the weight system needs a framing correction; throws when it
// needs a correction this implementation does not provide.
IntegralEstimate invariant_from_weight(const WeightSystem& w, const ParametricKnot& k,
                                       long long n, std::uint64_t seed, int threads,
                                       std::vector<std::string>* warnings = nullptr);

// The degree-2 invariant (normalized so trefoil - unknot = 1).
IntegralEstimate v2(const ParametricKnot& k, long long n, std::uint64_t seed,
                    int threads = 0);

// Alternating sum of an invariant over all 2^j resolutions of a j-singular
// curve (j <= 3): the finite difference that a degree-j invariant turns into
// a chord diagram evaluation.
IntegralEstimate vassiliev_finite_difference(
    const std::function<IntegralEstimate(const ParametricKnot&)>& invariant,
    const SingularKnot& k);

} // namespace vassiliev
