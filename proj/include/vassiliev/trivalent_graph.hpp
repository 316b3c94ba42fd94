#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vassiliev/chord_diagram.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

// A trivalent graph based on a circle: a directed knot cycle of vertices
// 0..n_cycle-1 (in knot order), internal vertices n_cycle..n_cycle+n_internal-1,
// and propagator edges.  Every cycle vertex meets exactly one propagator,
// every internal vertex exactly three; each internal vertex carries a cyclic
// order on its three incident edges.  Cycle edges (consecutive cycle
// vertices) are implicit.
//
// Degree k = (n_cycle + n_internal)/2; the number of propagators is k +
// n_internal.  Multi-edges between internal vertices are allowed; self-loops
// are not.
struct TrivalentGraph {
    int n_cycle = 0;
    int n_internal = 0;
    std::vector<std::pair<int, int>> edges;       // propagators, by edge id
    std::vector<std::array<int, 3>> orders;       // cyclic edge-id triples, one
                                                  // per internal vertex

    int n_vertices() const { return n_cycle + n_internal; }
    int degree() const { return (n_cycle + n_internal) / 2; }
    bool is_internal(int v) const { return v >= n_cycle; }

    // Edge ids incident to a vertex (1 for cycle vertices, 3 for internal,
    // in cyclic order for internal vertices).
    std::vector<int> incident_edges(int v) const;
    int other_end(int e, int v) const;

    bool operator==(const TrivalentGraph& o) const;
    bool operator<(const TrivalentGraph& o) const;
};

// Throws std::invalid_argument if g violates the structural invariants.
void validate(const TrivalentGraph& g);

// Canonical representative of the oriented isomorphism class: lexicographic
// minimum of the encoding over cycle rotations, internal-vertex relabelings
// and multi-edge id reassignments.  Vertex cyclic orders are preserved.
TrivalentGraph canonicalize(const TrivalentGraph& g);

// Canonical form that additionally quotients by per-vertex cyclic-order
// reversals (orientation flips).  Used to merge oriented classes whose
// integrals differ only by the compensating sign of the weight.
TrivalentGraph canonicalize_unoriented(const TrivalentGraph& g);

// A comparison/hash key (canonical encoding); canonicalize first.
std::vector<int> encode(const TrivalentGraph& g);

// Conversions with chord diagrams (graphs with no internal vertices).
TrivalentGraph from_chord_diagram(const ChordDiagram& d);
ChordDiagram to_chord_diagram(const TrivalentGraph& g);

// Count of self-maps preserving the directed cycle (up to rotation),
// propagator incidence and vertex cyclic orders.
// labellings(g) * |Aut(g)| = n! with n = total vertex count.
long long automorphism_count(const TrivalentGraph& g);

// All canonical trivalent graphs of the given degree with at most
// max_internal internal vertices (connected, no self-loops).
std::vector<TrivalentGraph> enumerate_trivalent_graphs(int k, int max_internal = 4);

// Result of contracting an edge: a graph with one merge vertex which is
// 4-valent (internal case) or a cycle vertex carrying 2 propagators (knot
// case).  merge_order lists the surviving propagators at the merge vertex in
// cyclic order (knot case: in knot order).
struct ContractedGraph {
    int n_cycle = 0;
    int n_internal = 0;                           // excludes the merge vertex if on knot
    std::vector<std::pair<int, int>> edges;       // propagators of the contracted graph
    std::map<int, std::array<int, 3>> orders;     // ordinary internal vertices
    int merged_vertex = -1;
    bool merge_on_knot = false;
    std::vector<int> merge_order;                 // 2 (knot) or 4 (internal) edge ids
};

// Edge selector for contract_edge: either a propagator edge id, or the cycle
// segment following cycle vertex `cycle_after`.
struct EdgeRef {
    bool is_propagator = true;
    int index = 0; // propagator edge id, or cycle vertex whose outgoing segment contracts
};

ContractedGraph contract_edge(const TrivalentGraph& g, const EdgeRef& e);

// One of the six labelled graphs contracting to a given ContractedGraph.
// role: 0,1,2 = S,T,U (knot merge) or I,H,X (internal merge); each role
// appears twice (copy 0/1, the two labellings of the split vertex pair).
// relation_sign is the coefficient of the graph in the paper's relation
// (S = T - U, respectively I - H + X = 0), identical for both copies.
struct Resolution {
    TrivalentGraph graph;
    int role = 0;
    int copy = 0;
    int relation_sign = +1;
};

std::array<Resolution, 6> uncontract_partners(const ContractedGraph& cg);

// Formal rational combinations of canonical trivalent graphs.
class GraphSum {
public:
    GraphSum() = default;
    void add(const TrivalentGraph& g, const Rational& c); // canonicalizes; drops zeros
    const std::map<TrivalentGraph, Rational>& terms() const { return terms_; }
    bool operator==(const GraphSum& o) const { return terms_ == o.terms_; }

private:
    std::map<TrivalentGraph, Rational> terms_;
};

// Product by interleaving the knot vertices: sum over all shuffles of the two
// cyclic vertex sequences preserving each factor's cyclic order (coefficient
// +1 per labelled shuffle before canonicalization).  A degree-0 factor
// (empty graph, n_cycle == 0) acts as the identity.
GraphSum graph_product(const TrivalentGraph& g1, const TrivalentGraph& g2);

// True iff the vertices split into two nonempty sets, each occupying a
// contiguous arc of the knot, with all edges between them cycle edges.
bool is_split(const TrivalentGraph& g);

// JSON round trip: {cycle:[...], internal:[...], edges:[[u,v],...],
// orders:{"v":[e1,e2,e3]}}
std::string graph_to_json(const TrivalentGraph& g);
TrivalentGraph graph_from_json(const std::string& text);

} // namespace vassiliev
