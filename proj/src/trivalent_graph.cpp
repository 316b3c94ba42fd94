#include "vassiliev/trivalent_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace vassiliev {

namespace {

std::pair<int, int> sorted_pair(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Rotate a cyclic triple so its least entry comes first.
std::array<int, 3> canonical_triple(std::array<int, 3> t) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (t[i] < t[best]) best = i;
    return {t[best], t[(best + 1) % 3], t[(best + 2) % 3]};
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace

std::vector<int> TrivalentGraph::incident_edges(int v) const {
    if (is_internal(v)) {
        auto& t = orders[v - n_cycle];
        return {t[0], t[1], t[2]};
    }
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (edges[e].first == v || edges[e].second == v) out.push_back(e);
    return out;
}

int TrivalentGraph::other_end(int e, int v) const {
    auto [a, b] = edges[e];
    if (a == v) return b;
    if (b == v) return a;
    throw std::invalid_argument("edge not incident to vertex");
}

bool TrivalentGraph::operator==(const TrivalentGraph& o) const {
    return n_cycle == o.n_cycle && n_internal == o.n_internal && edges == o.edges &&
           orders == o.orders;
}

bool TrivalentGraph::operator<(const TrivalentGraph& o) const {
    return encode(*this) < encode(o);
}

std::vector<int> encode(const TrivalentGraph& g) {
    std::vector<int> out{g.n_cycle, g.n_internal};
    for (auto [a, b] : g.edges) {
        out.push_back(a);
        out.push_back(b);
    }
    for (auto& t : g.orders)
        for (int e : t) out.push_back(e);
    return out;
}

void validate(const TrivalentGraph& g) {
    if (g.n_cycle == 0 && g.n_internal == 0) {
        if (!g.edges.empty() || !g.orders.empty())
            throw std::invalid_argument("degree-0 graph must be empty");
        return;
    }
    if (g.n_cycle < 1) throw std::invalid_argument("knot cycle must be nonempty");
    if ((g.n_cycle + g.n_internal) % 2 != 0)
        throw std::invalid_argument("vertex count must be even");
    int k = g.degree();
    if (static_cast<int>(g.edges.size()) != k + g.n_internal)
        throw std::invalid_argument("propagator count must be degree + internal count");
    if (static_cast<int>(g.orders.size()) != g.n_internal)
        throw std::invalid_argument("every internal vertex needs a cyclic order");
    std::vector<int> deg(g.n_vertices(), 0);
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= g.n_vertices() || b >= g.n_vertices())
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loops are invalid");
        ++deg[a];
        ++deg[b];
    }
    for (int v = 0; v < g.n_vertices(); ++v) {
        int want = g.is_internal(v) ? 3 : 1;
        if (deg[v] != want) throw std::invalid_argument("wrong vertex valence");
    }
    for (int i = 0; i < g.n_internal; ++i) {
        int v = g.n_cycle + i;
        std::array<int, 3> t = g.orders[i];
        std::set<int> ids(t.begin(), t.end());
        if (ids.size() != 3) throw std::invalid_argument("order triple must be distinct edges");
        for (int e : t) {
            if (e < 0 || e >= static_cast<int>(g.edges.size()))
                throw std::invalid_argument("order references unknown edge");
            if (g.edges[e].first != v && g.edges[e].second != v)
                throw std::invalid_argument("order references non-incident edge");
        }
    }
    UnionFind uf(g.n_vertices());
    for (int v = 0; v + 1 < g.n_cycle; ++v) uf.unite(v, v + 1);
    for (auto [a, b] : g.edges) uf.unite(a, b);
    int root = uf.find(0);
    for (int v = 0; v < g.n_vertices(); ++v)
        if (uf.find(v) != root) throw std::invalid_argument("graph must be connected");
}

namespace {

// Relabel by a full vertex map, re-sort the edges, and resolve multi-edge id
// ambiguity by taking the encoding-minimal assignment.
TrivalentGraph relabel_minimal(const TrivalentGraph& g, const std::vector<int>& vmap) {
    int m = static_cast<int>(g.edges.size());
    std::vector<std::pair<std::pair<int, int>, int>> tagged(m);
    for (int e = 0; e < m; ++e)
        tagged[e] = {sorted_pair(vmap[g.edges[e].first], vmap[g.edges[e].second]), e};
    std::sort(tagged.begin(), tagged.end());

    // duplicate groups (ranges of equal pairs)
    std::vector<std::pair<int, int>> groups;
    for (int i = 0; i < m;) {
        int j = i;
        while (j < m && tagged[j].first == tagged[i].first) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    TrivalentGraph best;
    std::vector<int> best_code;
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;

    // enumerate id assignments within duplicate groups
    std::vector<std::vector<int>> group_perms_stack;
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == groups.size()) {
            // new_id[old edge] from current perm over sorted positions
            std::vector<int> new_id(m);
            for (int pos = 0; pos < m; ++pos) new_id[tagged[perm[pos]].second] = pos;
            TrivalentGraph h;
            h.n_cycle = g.n_cycle;
            h.n_internal = g.n_internal;
            h.edges.resize(m);
            for (int pos = 0; pos < m; ++pos) h.edges[pos] = tagged[pos].first;
            h.orders.resize(g.n_internal);
            for (int i = 0; i < g.n_internal; ++i) {
                int v = g.n_cycle + i;
                int nv = vmap[v];
                std::array<int, 3> t = g.orders[i];
                for (int& e : t) e = new_id[e];
                h.orders[nv - g.n_cycle] = canonical_triple(t);
            }
            auto code = encode(h);
            if (best_code.empty() || code < best_code) {
                best_code = code;
                best = h;
            }
            return;
        }
        auto [lo, hi] = groups[gi];
        if (hi - lo == 1) {
            rec(gi + 1);
            return;
        }
        std::vector<int> idx(perm.begin() + lo, perm.begin() + hi);
        std::sort(idx.begin(), idx.end());
        do {
            std::copy(idx.begin(), idx.end(), perm.begin() + lo);
            rec(gi + 1);
        } while (std::next_permutation(idx.begin(), idx.end()));
        std::sort(perm.begin() + lo, perm.begin() + hi);
    };
    rec(0);
    return best;
}

template <typename F>
void for_each_relabeling(const TrivalentGraph& g, F&& f) {
    int nc = g.n_cycle, ni = g.n_internal;
    std::vector<int> pi(ni);
    std::iota(pi.begin(), pi.end(), 0);
    int rot_max = std::max(nc, 1);
    do {
        for (int r = 0; r < rot_max; ++r) {
            std::vector<int> vmap(g.n_vertices());
            for (int v = 0; v < nc; ++v) vmap[v] = (v + r) % nc;
            for (int i = 0; i < ni; ++i) vmap[nc + i] = nc + pi[i];
            f(vmap);
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
}

} // namespace

TrivalentGraph canonicalize(const TrivalentGraph& g) {
    if (g.n_cycle == 0 && g.n_internal == 0) return g;
    TrivalentGraph best;
    std::vector<int> best_code;
    for_each_relabeling(g, [&](const std::vector<int>& vmap) {
        TrivalentGraph h = relabel_minimal(g, vmap);
        auto code = encode(h);
        if (best_code.empty() || code < best_code) {
            best_code = std::move(code);
            best = std::move(h);
        }
    });
    return best;
}

TrivalentGraph canonicalize_unoriented(const TrivalentGraph& g) {
    if (g.n_internal == 0) return canonicalize(g);
    TrivalentGraph best;
    std::vector<int> best_code;
    for (int mask = 0; mask < (1 << g.n_internal); ++mask) {
        TrivalentGraph h = g;
        for (int i = 0; i < g.n_internal; ++i)
            if (mask & (1 << i)) std::swap(h.orders[i][1], h.orders[i][2]);
        h = canonicalize(h);
        auto code = encode(h);
        if (best_code.empty() || code < best_code) {
            best_code = std::move(code);
            best = std::move(h);
        }
    }
    return best;
}

TrivalentGraph from_chord_diagram(const ChordDiagram& d) {
    TrivalentGraph g;
    g.n_cycle = d.points();
    g.n_internal = 0;
    g.edges = d.chords();
    return canonicalize(g);
}

ChordDiagram to_chord_diagram(const TrivalentGraph& g) {
    if (g.n_internal != 0)
        throw std::invalid_argument("graph has internal vertices");
    return ChordDiagram(g.edges);
}

long long automorphism_count(const TrivalentGraph& g) {
    validate(g);
    std::vector<std::pair<int, int>> base;
    base.reserve(g.edges.size());
    for (auto [a, b] : g.edges) base.push_back(sorted_pair(a, b));
    std::sort(base.begin(), base.end());

    long long count = 0;
    for_each_relabeling(g, [&](const std::vector<int>& vmap) {
        int m = static_cast<int>(g.edges.size());
        std::vector<std::pair<int, int>> mapped(m);
        for (int e = 0; e < m; ++e)
            mapped[e] = sorted_pair(vmap[g.edges[e].first], vmap[g.edges[e].second]);
        auto sorted_mapped = mapped;
        std::sort(sorted_mapped.begin(), sorted_mapped.end());
        if (sorted_mapped != base) return;

        // candidate image edges per edge (handles multi-edges)
        std::vector<std::vector<int>> cand(m);
        for (int e = 0; e < m; ++e)
            for (int f = 0; f < m; ++f)
                if (sorted_pair(g.edges[f].first, g.edges[f].second) == mapped[e])
                    cand[e].push_back(f);

        // search for an edge bijection preserving all vertex cyclic orders
        std::vector<int> sigma(m, -1);
        std::vector<bool> used(m, false);
        std::function<bool(int)> place = [&](int e) -> bool {
            if (e == m) {
                for (int i = 0; i < g.n_internal; ++i) {
                    int w = vmap[g.n_cycle + i];
                    std::array<int, 3> img{sigma[g.orders[i][0]], sigma[g.orders[i][1]],
                                           sigma[g.orders[i][2]]};
                    if (canonical_triple(img) !=
                        canonical_triple(g.orders[w - g.n_cycle]))
                        return false;
                }
                return true;
            }
            for (int f : cand[e]) {
                if (used[f]) continue;
                used[f] = true;
                sigma[e] = f;
                if (place(e + 1)) {
                    used[f] = false;
                    return true;
                }
                used[f] = false;
            }
            return false;
        };
        if (place(0)) ++count;
    });
    return count;
}

namespace {

void slot_matchings(std::vector<int>& owners, std::vector<std::pair<int, int>>& acc,
                    std::set<std::vector<std::pair<int, int>>>& out) {
    if (owners.empty()) {
        auto e = acc;
        for (auto& p : e) p = sorted_pair(p.first, p.second);
        std::sort(e.begin(), e.end());
        out.insert(e);
        return;
    }
    int a = owners.front();
    for (size_t i = 1; i < owners.size(); ++i) {
        if (owners[i] == a) continue; // no self-loops
        std::vector<int> rest;
        rest.reserve(owners.size() - 2);
        for (size_t j = 1; j < owners.size(); ++j)
            if (j != i) rest.push_back(owners[j]);
        acc.emplace_back(a, owners[i]);
        slot_matchings(rest, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<TrivalentGraph> enumerate_trivalent_graphs(int k, int max_internal) {
    if (k < 1 || k > 4) throw std::invalid_argument("degree out of supported range [1,4]");
    if (max_internal < 0 || max_internal > 4)
        throw std::invalid_argument("internal vertex bound out of range [0,4]");

    std::set<TrivalentGraph> classes;
    for (int m = 0; m <= max_internal; ++m) {
        int nc = 2 * k - m;
        if (nc < 1) continue;
        std::vector<int> owners;
        for (int v = 0; v < nc; ++v) owners.push_back(v);
        for (int i = 0; i < m; ++i)
            for (int rep = 0; rep < 3; ++rep) owners.push_back(nc + i);

        std::set<std::vector<std::pair<int, int>>> structures;
        std::vector<std::pair<int, int>> acc;
        slot_matchings(owners, acc, structures);

        for (auto& edges : structures) {
            // connectivity (cycle edges + propagators)
            UnionFind uf(nc + m);
            for (int v = 0; v + 1 < nc; ++v) uf.unite(v, v + 1);
            for (auto [a, b] : edges) uf.unite(a, b);
            bool conn = true;
            for (int v = 0; v < nc + m; ++v)
                if (uf.find(v) != uf.find(0)) conn = false;
            if (!conn) continue;

            // incident edge ids per internal vertex
            std::vector<std::vector<int>> inc(m);
            for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
                if (edges[e].first >= nc) inc[edges[e].first - nc].push_back(e);
                if (edges[e].second >= nc) inc[edges[e].second - nc].push_back(e);
            }

            for (int mask = 0; mask < (1 << m); ++mask) {
                TrivalentGraph g;
                g.n_cycle = nc;
                g.n_internal = m;
                g.edges = edges;
                g.orders.resize(m);
                for (int i = 0; i < m; ++i) {
                    auto t = inc[i];
                    g.orders[i] = (mask & (1 << i))
                                      ? std::array<int, 3>{t[0], t[2], t[1]}
                                      : std::array<int, 3>{t[0], t[1], t[2]};
                }
                classes.insert(canonicalize(g));
            }
        }
    }
    return std::vector<TrivalentGraph>(classes.begin(), classes.end());
}

ContractedGraph contract_edge(const TrivalentGraph& g, const EdgeRef& e) {
    validate(g);
    ContractedGraph cg;

    auto copy_orders_except = [&](const TrivalentGraph& h, int skip_internal) {
        for (int i = 0; i < h.n_internal; ++i) {
            if (i == skip_internal) continue;
            cg.orders[h.n_cycle + i] = h.orders[i];
        }
    };

    if (!e.is_propagator) {
        // cycle segment following cycle vertex e.index
        if (g.n_cycle < 2) throw std::invalid_argument("no cycle segment to contract");
        int i = e.index;
        if (i < 0 || i >= g.n_cycle) throw std::invalid_argument("bad cycle position");
        // rotate so the segment is (0,1), then merge 1 into 0
        TrivalentGraph h = g;
        if (i != 0) {
            std::vector<int> vmap(g.n_vertices());
            for (int v = 0; v < g.n_cycle; ++v) vmap[v] = (v - i + g.n_cycle) % g.n_cycle;
            for (int v = g.n_cycle; v < g.n_vertices(); ++v) vmap[v] = v;
            for (auto& [a, b] : h.edges) {
                a = vmap[a];
                b = vmap[b];
            }
        }
        int p = -1, q = -1;
        for (int ed = 0; ed < static_cast<int>(h.edges.size()); ++ed) {
            if (h.edges[ed].first == 0 || h.edges[ed].second == 0) p = ed;
            if (h.edges[ed].first == 1 || h.edges[ed].second == 1) q = ed;
        }
        if (p == q)
            throw std::invalid_argument("segment endpoints share a chord; merge would loop");
        cg.n_cycle = g.n_cycle - 1;
        cg.n_internal = g.n_internal;
        cg.merged_vertex = 0;
        cg.merge_on_knot = true;
        cg.merge_order = {p, q};
        auto shift = [&](int v) {
            if (v == 0 || v == 1) return 0;
            return v - 1;
        };
        for (auto [a, b] : h.edges) cg.edges.emplace_back(shift(a), shift(b));
        TrivalentGraph shifted = h;
        shifted.n_cycle = cg.n_cycle;
        copy_orders_except(shifted, -1);
        return cg;
    }

    int eid = e.index;
    if (eid < 0 || eid >= static_cast<int>(g.edges.size()))
        throw std::invalid_argument("bad edge id");
    auto [u, v] = g.edges[eid];
    if (u == v) throw std::invalid_argument("self-loops are invalid");

    if (!g.is_internal(u) && !g.is_internal(v)) {
        throw std::invalid_argument(
            "contracting a pure chord gives a 2-valent knot vertex, not a merge vertex");
    }

    if (!g.is_internal(u) || !g.is_internal(v)) {
        // knot--internal propagator: merge vertex is the knot vertex
        int kv = g.is_internal(u) ? v : u;
        int iv = g.is_internal(u) ? u : v;
        std::array<int, 3> t = g.orders[iv - g.n_cycle];
        // rotate so the contracted edge comes first
        while (t[0] != eid) t = {t[1], t[2], t[0]};
        cg.n_cycle = g.n_cycle;
        cg.n_internal = g.n_internal - 1;
        cg.merged_vertex = kv;
        cg.merge_on_knot = true;

        std::vector<int> emap(g.edges.size(), -1);
        int next = 0;
        for (int ed = 0; ed < static_cast<int>(g.edges.size()); ++ed)
            if (ed != eid) emap[ed] = next++;
        auto vshift = [&](int w) {
            if (w == iv) return kv;
            if (w > iv) return w - 1;
            return w;
        };
        for (int ed = 0; ed < static_cast<int>(g.edges.size()); ++ed) {
            if (ed == eid) continue;
            cg.edges.emplace_back(vshift(g.edges[ed].first), vshift(g.edges[ed].second));
        }
        cg.merge_order = {emap[t[1]], emap[t[2]]};
        for (int i = 0; i < g.n_internal; ++i) {
            int w = g.n_cycle + i;
            if (w == iv) continue;
            std::array<int, 3> o = g.orders[i];
            for (int& x : o) {
                if (emap[x] < 0) throw std::invalid_argument("contracted edge in foreign order");
                x = emap[x];
            }
            cg.orders[vshift(w)] = o;
        }
        return cg;
    }

    // internal--internal edge
    for (int ed = 0; ed < static_cast<int>(g.edges.size()); ++ed) {
        if (ed == eid) continue;
        auto [a, b] = g.edges[ed];
        if (sorted_pair(a, b) == sorted_pair(u, v))
            throw std::invalid_argument("contracting one edge of a parallel pair makes a loop");
    }
    std::array<int, 3> tu = g.orders[u - g.n_cycle];
    std::array<int, 3> tv = g.orders[v - g.n_cycle];
    while (tu[0] != eid) tu = {tu[1], tu[2], tu[0]};
    while (tv[0] != eid) tv = {tv[1], tv[2], tv[0]};

    cg.n_cycle = g.n_cycle;
    cg.n_internal = g.n_internal - 1;
    int merged = std::min(u, v);
    int gone = std::max(u, v);
    cg.merged_vertex = merged;
    cg.merge_on_knot = false;

    std::vector<int> emap(g.edges.size(), -1);
    int next = 0;
    for (int ed = 0; ed < static_cast<int>(g.edges.size()); ++ed)
        if (ed != eid) emap[ed] = next++;
    auto vshift = [&](int w) {
        if (w == gone) return merged;
        if (w > gone) return w - 1;
        return w;
    };
    for (int ed = 0; ed < static_cast<int>(g.edges.size()); ++ed) {
        if (ed == eid) continue;
        cg.edges.emplace_back(vshift(g.edges[ed].first), vshift(g.edges[ed].second));
    }
    // cyclic order at the merge vertex: u's remaining pair then v's
    auto& lo = (merged == u) ? tu : tv;
    auto& hi = (merged == u) ? tv : tu;
    cg.merge_order = {emap[lo[1]], emap[lo[2]], emap[hi[1]], emap[hi[2]]};
    for (int i = 0; i < g.n_internal; ++i) {
        int w = g.n_cycle + i;
        if (w == u || w == v) continue;
        std::array<int, 3> o = g.orders[i];
        for (int& x : o) x = emap[x];
        cg.orders[vshift(w)] = o;
    }
    return cg;
}

namespace {

// Base graph pieces shared by all resolutions of a ContractedGraph.
struct Rebuild {
    TrivalentGraph g;
    std::vector<int> edge_map; // contracted edge id -> new edge id
};

Rebuild base_graph(const ContractedGraph& cg, int extra_cycle, int extra_internal) {
    Rebuild rb;
    rb.g.n_cycle = cg.n_cycle + extra_cycle;
    rb.g.n_internal = cg.n_internal + extra_internal;
    rb.edge_map.resize(cg.edges.size());
    for (size_t e = 0; e < cg.edges.size(); ++e) rb.edge_map[e] = static_cast<int>(e);
    rb.g.edges = cg.edges;
    rb.g.orders.resize(rb.g.n_internal);
    return rb;
}

} // namespace

std::array<Resolution, 6> uncontract_partners(const ContractedGraph& cg) {
    std::array<Resolution, 6> out;
    int n = 0;

    if (cg.merge_on_knot) {
        int u = cg.merged_vertex;
        int p = cg.merge_order[0], q = cg.merge_order[1];

        // S: new internal vertex carrying both propagators, copy 1 has the
        // opposite cyclic order.
        for (int copy = 0; copy < 2; ++copy) {
            Rebuild rb = base_graph(cg, 0, 1);
            int nv = rb.g.n_cycle + cg.n_internal; // appended internal vertex
            auto reattach = [&](int e) {
                auto& [a, b] = rb.g.edges[e];
                if (a == u) a = nv;
                else b = nv;
            };
            reattach(p);
            reattach(q);
            int e0 = static_cast<int>(rb.g.edges.size());
            rb.g.edges.emplace_back(u, nv);
            for (auto& [v, o] : cg.orders) rb.g.orders[v - rb.g.n_cycle] = o;
            rb.g.orders[nv - rb.g.n_cycle] =
                copy == 0 ? std::array<int, 3>{e0, p, q} : std::array<int, 3>{e0, q, p};
            out[n++] = {canonicalize(rb.g), 0, copy, +1};
        }

        // T and U: split u into u, u+1 along the knot.  T keeps p at the
        // earlier point; U swaps.  Copies differ only by labelling.
        for (int role = 1; role <= 2; ++role) {
            for (int copy = 0; copy < 2; ++copy) {
                Rebuild rb = base_graph(cg, 1, 0);
                auto vlift = [&](int v) {
                    if (v < cg.n_cycle) return v <= u ? v : v + 1;
                    return v + 1; // internal labels shift with the larger cycle
                };
                for (auto& [a, b] : rb.g.edges) {
                    a = vlift(a);
                    b = vlift(b);
                }
                int first = (role == 1) ? p : q;
                int second = (role == 1) ? q : p;
                auto move_to = [&](int e, int target) {
                    auto& [a, b] = rb.g.edges[e];
                    if (a == u) a = target;
                    else b = target;
                };
                move_to(first, u);
                move_to(second, u + 1);
                for (auto& [v, o] : cg.orders) rb.g.orders[vlift(v) - rb.g.n_cycle] = o;
                out[n++] = {canonicalize(rb.g), role, copy, -1};
            }
        }
        return out;
    }

    // internal merge vertex with cyclic order (a,b,c,d): the three pairings
    // (ab|cd), (bc|da), (ad' style X = ac|bd); copies swap the two split
    // vertex labels.
    int a = cg.merge_order[0], b = cg.merge_order[1];
    int c = cg.merge_order[2], d = cg.merge_order[3];
    const std::array<std::array<int, 4>, 3> pairings = {{{a, b, c, d},   // I
                                                         {b, c, d, a},   // H
                                                         {a, c, d, b}}}; // X
    const std::array<int, 3> rel = {+1, -1, +1};
    for (int role = 0; role < 3; ++role) {
        for (int copy = 0; copy < 2; ++copy) {
            Rebuild rb = base_graph(cg, 0, 1);
            int v1 = cg.merged_vertex;
            int v2 = rb.g.n_cycle + cg.n_internal; // appended internal vertex
            auto pr = pairings[role];
            int fa = pr[0], fb = pr[1], fc = pr[2], fd = pr[3];
            if (copy == 1) {
                std::swap(fa, fc);
                std::swap(fb, fd);
            }
            auto move_to = [&](int e, int target) {
                auto& [x, y] = rb.g.edges[e];
                if (x == v1) x = target;
                else y = target;
            };
            move_to(fc, v2);
            move_to(fd, v2);
            int e0 = static_cast<int>(rb.g.edges.size());
            rb.g.edges.emplace_back(v1, v2);
            for (auto& [v, o] : cg.orders) rb.g.orders[v - rb.g.n_cycle] = o;
            rb.g.orders[v1 - rb.g.n_cycle] = {e0, fa, fb};
            rb.g.orders[v2 - rb.g.n_cycle] = {e0, fc, fd};
            out[n++] = {canonicalize(rb.g), role, copy, rel[role]};
        }
    }
    return out;
}

void GraphSum::add(const TrivalentGraph& g, const Rational& c) {
    if (c == 0) return;
    TrivalentGraph key = canonicalize(g);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

GraphSum graph_product(const TrivalentGraph& g1, const TrivalentGraph& g2) {
    validate(g1);
    validate(g2);
    GraphSum out;
    if (g2.n_cycle == 0) {
        out.add(g1, 1);
        return out;
    }
    if (g1.n_cycle == 0) {
        out.add(g2, 1);
        return out;
    }
    int c1 = g1.n_cycle, c2 = g2.n_cycle;
    int nc = c1 + c2;

    // choose positions for g2's cycle vertices among slots 1..nc-1 (g1's
    // first vertex is pinned at slot 0), times the c2 cyclic rotations of g2.
    std::vector<int> sel(nc - 1, 0);
    std::fill(sel.end() - c2, sel.end(), 1);
    std::sort(sel.begin(), sel.end());
    do {
        std::vector<int> slots2;
        for (int s = 1; s < nc; ++s)
            if (sel[s - 1]) slots2.push_back(s);
        std::vector<int> slots1{0};
        for (int s = 1; s < nc; ++s)
            if (!sel[s - 1]) slots1.push_back(s);
        for (int rot = 0; rot < c2; ++rot) {
            TrivalentGraph g;
            g.n_cycle = nc;
            g.n_internal = g1.n_internal + g2.n_internal;
            std::vector<int> map1(g1.n_vertices()), map2(g2.n_vertices());
            for (int v = 0; v < c1; ++v) map1[v] = slots1[v];
            for (int v = 0; v < g1.n_internal; ++v) map1[c1 + v] = nc + v;
            for (int v = 0; v < c2; ++v) map2[v] = slots2[(v + rot) % c2];
            for (int v = 0; v < g2.n_internal; ++v) map2[c2 + v] = nc + g1.n_internal + v;

            for (auto [u, v] : g1.edges) g.edges.emplace_back(map1[u], map1[v]);
            int eshift = static_cast<int>(g1.edges.size());
            for (auto [u, v] : g2.edges) g.edges.emplace_back(map2[u], map2[v]);
            g.orders.resize(g.n_internal);
            for (int i = 0; i < g1.n_internal; ++i) g.orders[i] = g1.orders[i];
            for (int i = 0; i < g2.n_internal; ++i) {
                std::array<int, 3> o = g2.orders[i];
                for (int& e : o) e += eshift;
                g.orders[g1.n_internal + i] = o;
            }
            out.add(g, 1);
        }
    } while (std::next_permutation(sel.begin(), sel.end()));
    return out;
}

bool is_split(const TrivalentGraph& g) {
    validate(g);
    if (g.n_cycle < 2) return false;
    // components of the propagator-only graph, and the knot vertices each
    // component touches
    UnionFind uf(g.n_vertices());
    for (auto [a, b] : g.edges) uf.unite(a, b);
    // a split = a cut of the knot circle into two nonempty arcs such that no
    // propagator component straddles the cut
    for (int i = 0; i < g.n_cycle; ++i) {
        for (int len = 1; len < g.n_cycle; ++len) {
            // arc A = {i, i+1, ..., i+len-1} (mod n_cycle)
            std::vector<int> side(g.n_vertices(), -1);
            for (int t = 0; t < g.n_cycle; ++t) {
                int off = (t - i + g.n_cycle) % g.n_cycle;
                side[t] = off < len ? 0 : 1;
            }
            bool ok = true;
            for (int u = 0; u < g.n_cycle && ok; ++u)
                for (int v = u + 1; v < g.n_cycle; ++v)
                    if (uf.find(u) == uf.find(v) && side[u] != side[v]) {
                        ok = false;
                        break;
                    }
            if (ok) return true;
        }
    }
    return false;
}

std::string graph_to_json(const TrivalentGraph& g) {
    nlohmann::json j;
    j["cycle"] = nlohmann::json::array();
    for (int v = 0; v < g.n_cycle; ++v) j["cycle"].push_back(v);
    j["internal"] = nlohmann::json::array();
    for (int v = g.n_cycle; v < g.n_vertices(); ++v) j["internal"].push_back(v);
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    j["orders"] = nlohmann::json::object();
    for (int i = 0; i < g.n_internal; ++i) {
        auto& o = g.orders[i];
        j["orders"][std::to_string(g.n_cycle + i)] = {o[0], o[1], o[2]};
    }
    return j.dump();
}

TrivalentGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TrivalentGraph g;
    g.n_cycle = static_cast<int>(j.at("cycle").size());
    g.n_internal = static_cast<int>(j.at("internal").size());
    for (auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    g.orders.resize(g.n_internal);
    for (auto& [key, val] : j.at("orders").items()) {
        int v = std::stoi(key);
        if (v < g.n_cycle || v >= g.n_vertices())
            throw std::invalid_argument("order key is not an internal vertex");
        g.orders[v - g.n_cycle] = {val.at(0).get<int>(), val.at(1).get<int>(),
                                   val.at(2).get<int>()};
    }
    validate(g);
    return g;
}

} // namespace vassiliev
