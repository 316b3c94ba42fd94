#pragma once

#include <vector>

#include "vassiliev/trivalent_graph.hpp"

namespace vassiliev {

// A labelling of a trivalent graph: a numbering of the vertices, a numbering
// of the propagator edges, and a direction per propagator edge.  Cycle edges
// are canonically oriented by the knot direction and carry no labelling data.
struct Labelling {
    std::vector<int> vertex_rank;   // vertex -> position 0..n-1 (bijective)
    std::vector<int> edge_rank;     // edge id -> position 0..m-1 (bijective)
    std::vector<bool> edge_reversed; // true: direction is (second -> first)
};

// Global reference convention: vertices ranked in label order (cycle vertices
// in knot order, then internal), every edge directed from its lower-labelled
// to its higher-labelled endpoint.
Labelling reference_labelling(const TrivalentGraph& g);

// (-1)^(dim_v * dim_w): sign of swapping two blocks of those dimensions in a
// determinant line.
int det_merge_sign(int dim_v, int dim_w);

// Parity of a permutation of {0..k-1} (or {1..k}): the sign odd-dimensional
// factor collections pick up on reordering.
int odd_collection_sign(const std::vector<int>& permutation);

// Sign of the labelled graph: the parity of the permutation carrying the
// vertex-grouped list of (vertex,edge) incidences (vertices in rank order,
// each internal vertex's edges in its cyclic order, knot vertices
// contributing their single propagator) onto the edge-grouped list (edges in
// rank order, each contributing source then destination endpoint).
int epsilon_sign(const TrivalentGraph& g, const Labelling& lab);

// Check that the vertex-grouped and edge-grouped orientation conventions
// transform identically under every single-step relabelling (vertex
// transposition, edge transposition, edge direction flip) from the reference
// labelling.
bool orientation_equivalence(const TrivalentGraph& g);

} // namespace vassiliev
