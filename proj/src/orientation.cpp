#include "vassiliev/orientation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace vassiliev {

Labelling reference_labelling(const TrivalentGraph& g) {
    Labelling lab;
    lab.vertex_rank.resize(g.n_vertices());
    std::iota(lab.vertex_rank.begin(), lab.vertex_rank.end(), 0);
    lab.edge_rank.resize(g.edges.size());
    std::iota(lab.edge_rank.begin(), lab.edge_rank.end(), 0);
    lab.edge_reversed.assign(g.edges.size(), false);
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].first > g.edges[e].second) lab.edge_reversed[e] = true;
    return lab;
}

int det_merge_sign(int dim_v, int dim_w) {
    if (dim_v < 0 || dim_w < 0) throw std::invalid_argument("negative dimension");
    return (dim_v * dim_w) % 2 == 0 ? +1 : -1;
}

int odd_collection_sign(const std::vector<int>& permutation) {
    int n = static_cast<int>(permutation.size());
    std::vector<int> p(permutation);
    // accept either 0-based or 1-based input
    int lo = n ? *std::min_element(p.begin(), p.end()) : 0;
    for (int& x : p) x -= lo;
    std::vector<bool> seen(n, false);
    for (int x : p) {
        if (x < 0 || x >= n || seen[x]) throw std::invalid_argument("not a permutation");
        seen[x] = true;
    }
    int sign = 1;
    std::vector<bool> vis(n, false);
    for (int i = 0; i < n; ++i) {
        if (vis[i]) continue;
        int len = 0;
        for (int j = i; !vis[j]; j = p[j]) {
            vis[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

namespace {

void check_labelling(const TrivalentGraph& g, const Labelling& lab) {
    if (lab.vertex_rank.size() != static_cast<size_t>(g.n_vertices()) ||
        lab.edge_rank.size() != g.edges.size() || lab.edge_reversed.size() != g.edges.size())
        throw std::invalid_argument("incomplete labelling");
    std::vector<bool> sv(g.n_vertices(), false), se(g.edges.size(), false);
    for (int r : lab.vertex_rank) {
        if (r < 0 || r >= g.n_vertices() || sv[r])
            throw std::invalid_argument("vertex ranks not bijective");
        sv[r] = true;
    }
    for (int r : lab.edge_rank) {
        if (r < 0 || r >= static_cast<int>(g.edges.size()) || se[r])
            throw std::invalid_argument("edge ranks not bijective");
        se[r] = true;
    }
}

} // namespace

int epsilon_sign(const TrivalentGraph& g, const Labelling& lab) {
    check_labelling(g, lab);
    int m = static_cast<int>(g.edges.size());

    // symbol = (vertex, edge) incidence; id = 2*edge + (vertex == second endpoint)
    auto symbol = [&](int v, int e) {
        if (g.edges[e].first == v) return 2 * e;
        if (g.edges[e].second == v) return 2 * e + 1;
        throw std::invalid_argument("edge not incident to vertex");
    };

    // word A: vertices in rank order, each internal vertex's edges in cyclic
    // order, each knot vertex's single propagator
    std::vector<int> by_rank(g.n_vertices());
    for (int v = 0; v < g.n_vertices(); ++v) by_rank[lab.vertex_rank[v]] = v;
    std::vector<int> A;
    A.reserve(2 * m);
    for (int v : by_rank)
        for (int e : g.incident_edges(v)) A.push_back(symbol(v, e));

    // word B: edges in rank order, source endpoint then destination
    std::vector<int> erank(m);
    for (int e = 0; e < m; ++e) erank[lab.edge_rank[e]] = e;
    std::vector<int> B;
    B.reserve(2 * m);
    for (int e : erank) {
        int src = lab.edge_reversed[e] ? g.edges[e].second : g.edges[e].first;
        int dst = g.other_end(e, src);
        B.push_back(symbol(src, e));
        B.push_back(symbol(dst, e));
    }

    std::vector<int> pos(2 * m, -1);
    for (int i = 0; i < 2 * m; ++i) pos[A[i]] = i;
    std::vector<int> perm(2 * m);
    for (int i = 0; i < 2 * m; ++i) perm[i] = pos[B[i]];
    return odd_collection_sign(perm);
}

bool orientation_equivalence(const TrivalentGraph& g) {
    validate(g);
    Labelling ref = reference_labelling(g);
    int base = epsilon_sign(g, ref);
    int n = g.n_vertices();
    int m = static_cast<int>(g.edges.size());

    // vertex transpositions: both conventions move an odd-sized block past an
    // odd-sized block, so the sign must flip
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Labelling lab = ref;
            std::swap(lab.vertex_rank[i], lab.vertex_rank[j]);
            if (epsilon_sign(g, lab) != -base) return false;
        }
    }
    // edge transpositions: 2-dimensional blocks commute, sign fixed
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            Labelling lab = ref;
            std::swap(lab.edge_rank[i], lab.edge_rank[j]);
            if (epsilon_sign(g, lab) != base) return false;
        }
    }
    // edge direction flips: transposition inside one block, sign flips
    for (int e = 0; e < m; ++e) {
        Labelling lab = ref;
        lab.edge_reversed[e] = !lab.edge_reversed[e];
        if (epsilon_sign(g, lab) != -base) return false;
    }
    // cyclic rotation of a vertex order is an even move: sign fixed
    for (int i = 0; i < g.n_internal; ++i) {
        TrivalentGraph h = g;
        auto t = h.orders[i];
        h.orders[i] = {t[1], t[2], t[0]};
        if (epsilon_sign(h, ref) != base) return false;
        // a transposition in the order reverses the vertex orientation
        h.orders[i] = {t[0], t[2], t[1]};
        if (epsilon_sign(h, ref) != -base) return false;
    }
    return true;
}

} // namespace vassiliev
