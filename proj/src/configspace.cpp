#include "vassiliev/configspace.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace vassiliev {

namespace {

bool nested_or_disjoint(const std::set<int>& a, const std::set<int>& b) {
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    if (inter.empty()) return true;
    if (inter.size() == a.size() || inter.size() == b.size()) return true;
    return false;
}

} // namespace

std::vector<StratumDescriptor> enumerate_strata(int n, int max_codim) {
    if (n < 1 || n > 7) throw std::invalid_argument("point count out of range [1,7]");
    if (max_codim < 1 || max_codim > 4)
        throw std::invalid_argument("codimension bound out of range [1,4]");

    // all candidate subsets of size >= 2, in a fixed order
    std::vector<std::set<int>> subsets;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
        std::set<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.insert(i);
        subsets.push_back(std::move(s));
    }

    std::vector<StratumDescriptor> out;
    std::vector<int> chosen;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!chosen.empty()) {
            StratumDescriptor d;
            d.n_points = n;
            for (int i : chosen) d.family.push_back(subsets[i]);
            std::sort(d.family.begin(), d.family.end());
            out.push_back(std::move(d));
        }
        if (static_cast<int>(chosen.size()) == max_codim) return;
        for (size_t i = start; i < subsets.size(); ++i) {
            bool ok = true;
            for (int j : chosen)
                if (!nested_or_disjoint(subsets[i], subsets[j])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(static_cast<int>(i));
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

int stratum_dimension(const StratumDescriptor& s) {
    for (auto& sub : s.family) {
        if (sub.size() < 2) throw std::invalid_argument("subset of size < 2");
        for (int p : sub)
            if (p < 0 || p >= s.n_points) throw std::invalid_argument("point out of range");
    }
    for (size_t i = 0; i < s.family.size(); ++i)
        for (size_t j = i + 1; j < s.family.size(); ++j)
            if (!nested_or_disjoint(s.family[i], s.family[j]))
                throw std::invalid_argument("family not nested-or-disjoint");
    return 3 * s.n_points - static_cast<int>(s.family.size());
}

std::string face_class_name(FaceClass c) {
    switch (c) {
        case FaceClass::PrincipalKnotPair: return "PrincipalKnotPair";
        case FaceClass::PrincipalPropagatorPair: return "PrincipalPropagatorPair";
        case FaceClass::PrincipalDisconnected: return "PrincipalDisconnected";
        case FaceClass::HiddenDegenerate: return "HiddenDegenerate";
        case FaceClass::HiddenSymmetryVanishing: return "HiddenSymmetryVanishing";
        case FaceClass::Anomalous: return "Anomalous";
        case FaceClass::Infinity: return "Infinity";
        case FaceClass::Unresolved: return "Unresolved";
    }
    return "?";
}

namespace {

bool knot_block_contiguous(const TrivalentGraph& g, const std::set<int>& A) {
    std::vector<int> knot;
    for (int v : A)
        if (v < g.n_cycle) knot.push_back(v);
    if (knot.size() <= 1) return true;
    if (static_cast<int>(knot.size()) == g.n_cycle) return true;
    // contiguous cyclic block: exactly one "gap" when walking the cycle
    int transitions = 0;
    for (int v = 0; v < g.n_cycle; ++v) {
        bool in_v = A.count(v) > 0;
        bool in_next = A.count((v + 1) % g.n_cycle) > 0;
        if (in_v && !in_next) ++transitions;
    }
    return transitions == 1;
}

} // namespace

FaceClass classify_face(const TrivalentGraph& g, const std::set<int>& collapsing,
                        bool at_infinity) {
    validate(g);
    if (at_infinity) return FaceClass::Infinity;
    if (collapsing.size() < 2) throw std::invalid_argument("need at least 2 points");
    for (int v : collapsing)
        if (v < 0 || v >= g.n_vertices()) throw std::invalid_argument("unknown vertex");

    const auto& A = collapsing;
    auto in_A = [&](int v) { return A.count(v) > 0; };

    if (A.size() == 2) {
        int u = *A.begin(), v = *std::next(A.begin());
        for (auto [a, b] : g.edges)
            if ((a == u && b == v) || (a == v && b == u))
                return FaceClass::PrincipalPropagatorPair;
        if (u < g.n_cycle && v < g.n_cycle &&
            ((v - u + g.n_cycle) % g.n_cycle == 1 || (u - v + g.n_cycle) % g.n_cycle == 1))
            return FaceClass::PrincipalKnotPair;
        return FaceClass::PrincipalDisconnected;
    }

    if (!knot_block_contiguous(g, A))
        throw std::invalid_argument("knot vertices of a collision face must be contiguous");

    // Gamma_A: propagators with both endpoints in A; external edges: one end in A
    std::vector<std::pair<int, int>> internal_edges;
    int external = 0;
    std::vector<int> ext_count(g.n_vertices(), 0);
    for (auto [a, b] : g.edges) {
        if (in_A(a) && in_A(b)) internal_edges.emplace_back(a, b);
        else if (in_A(a) || in_A(b)) {
            ++external;
            ++ext_count[in_A(a) ? a : b];
        }
    }

    // connectivity of Gamma_A over the vertex set A
    std::map<int, int> comp;
    int nc = 0;
    for (int v : A) comp[v] = nc++;
    std::function<int(int)> find = [&](int x) {
        // comp as naive union-find over the small map
        return comp[x];
    };
    for (auto [a, b] : internal_edges) {
        int ca = comp[a], cb = comp[b];
        if (ca == cb) continue;
        for (auto& [v, c] : comp)
            if (c == cb) c = ca;
    }
    std::set<int> comps;
    for (auto& [v, c] : comp) comps.insert(c);
    bool connected = comps.size() == 1;

    if (!connected) return FaceClass::HiddenDegenerate;
    if (external == 0) return FaceClass::Anomalous;

    bool all_internal = true;
    for (int v : A)
        if (v < g.n_cycle) all_internal = false;
    if (all_internal && A.size() >= 2 && external <= 3) return FaceClass::HiddenDegenerate;

    // one-external-edge pattern: internal vertex in A with exactly one
    // external edge (its other two edges stay in A)
    for (int v : A)
        if (v >= g.n_cycle && ext_count[v] == 1) return FaceClass::HiddenSymmetryVanishing;

    // two-external-edge pattern: internal boundary vertex a with two external
    // edges whose third edge leads to an internal non-boundary vertex in A
    for (int a : A) {
        if (a < g.n_cycle || ext_count[a] != 2) continue;
        for (int e : g.incident_edges(a)) {
            int b = g.other_end(e, a);
            if (in_A(b) && b >= g.n_cycle && ext_count[b] == 0)
                return FaceClass::HiddenSymmetryVanishing;
        }
    }
    return FaceClass::Unresolved;
}

FaceCensus hidden_faces_all_vanish(const TrivalentGraph& g) {
    validate(g);
    FaceCensus census;
    int n = g.n_vertices();
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < 3) continue;
        std::set<int> A;
        for (int v = 0; v < n; ++v)
            if (mask & (1 << v)) A.insert(v);
        if (!knot_block_contiguous(g, A)) continue; // not a face of the compactification
        FaceClass c = classify_face(g, A);
        ++census.counts[c];
        if (c == FaceClass::Unresolved) census.all_vanish = false;
    }
    return census;
}

} // namespace vassiliev
