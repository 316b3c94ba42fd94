#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "vassiliev/chord_diagram.hpp"
#include "vassiliev/rational.hpp"
#include "vassiliev/trivalent_graph.hpp"

namespace vassiliev {

// A rational-valued function on the canonical chord diagrams of one degree.
class WeightSystem {
public:
    WeightSystem(int degree, std::map<ChordDiagram, Rational> values);

    int degree() const { return degree_; }
    const std::map<ChordDiagram, Rational>& values() const { return values_; }
    Rational operator()(const ChordDiagram& d) const;
    bool is_zero() const;

    // JSON round trip: {"degree": k, "values": [["k:[(a,b),...]", "p/q"], ...]}
    std::string to_json() const;
    static WeightSystem from_json(const std::string& text);

private:
    int degree_;
    std::map<ChordDiagram, Rational> values_; // total on canonical diagrams
};

// The degree-2 system {crossing diagram: 1, nested diagram: 0}.
WeightSystem c2_weight_system();
// The degree-3 system with the published values (2, -1, 1, 1) on four
// diagrams, completed on the fifth by the 4T relation.
WeightSystem deg3_weight_system();

// One violated relation instance, for diagnostics.
struct RelationViolation {
    std::string description;
    Rational residual;
};

// Empty iff every 4T instance (two STU expansions of each degree-k graph
// with one internal vertex) sums to zero.
std::vector<RelationViolation> check_4T(const WeightSystem& w);

// Graphs on which the STU extension is not defined: at least two internal
// vertices of which exactly one touches the knot circle.
bool is_unsupported_shape(const TrivalentGraph& g);

// Value of the STU extension on g: repeated application of
// value(S) = value(T) - value(U) at knot-attached internal edges.
// Throws std::domain_error on unsupported shapes.
Rational extend_STU(const WeightSystem& w, const TrivalentGraph& g);

// Extension with a shared cache, safe for concurrent lookups.
class ExtendedWeightSystem {
public:
    explicit ExtendedWeightSystem(WeightSystem base) : base_(std::move(base)) {}
    const WeightSystem& base() const { return base_; }
    Rational value(const TrivalentGraph& g) const;

private:
    WeightSystem base_;
    mutable std::mutex mu_;
    mutable std::map<TrivalentGraph, Rational> cache_;
};

// Empty iff I - H + X = 0 for every internal edge of every degree-k graph
// with at most 4 internal vertices (skipping instances whose resolutions hit
// an unsupported shape).
std::vector<RelationViolation> check_IHX(const ExtendedWeightSystem& ext);

enum class Parity { Even, Odd, Mixed };
struct ParityResult {
    Parity r3;
    Parity s1;
};

// r3 parity is (-1)^degree; s1 parity compares w against its circle reversal.
// The zero system is (Even, Even) by convention.
ParityResult parity(const WeightSystem& w);

// Circle reversal of the whole system.
WeightSystem reverse(const WeightSystem& w);
// Decomposition under reversal: (w + reverse(w))/2 and (w - reverse(w))/2.
WeightSystem symmetrize(const WeightSystem& w);
WeightSystem antisymmetrize(const WeightSystem& w);

enum class AnomalyCase { Vanishes, WritheCorrectionClass, OneFormCorrectionClass };

// Table lookup on the parities; throws std::domain_error on mixed parity.
AnomalyCase anomaly_case(const WeightSystem& w);

// Signed count of circle isomorphisms carrying g's propagator matching onto
// d (g must have no internal vertices).  This is the combinatorial value of
// the graph integral on a k-singular knot with self-intersection pattern d.
long long chord_evaluation(const TrivalentGraph& g, const ChordDiagram& d);

} // namespace vassiliev
