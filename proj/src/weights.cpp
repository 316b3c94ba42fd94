#include "vassiliev/weights.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vassiliev {

WeightSystem::WeightSystem(int degree, std::map<ChordDiagram, Rational> values)
    : degree_(degree), values_(std::move(values)) {
    auto all = enumerate_chord_diagrams(degree);
    for (auto& [d, v] : values_)
        if (d.degree() != degree) throw std::invalid_argument("diagram of wrong degree");
    for (auto& d : all)
        if (!values_.count(d))
            throw std::invalid_argument("weight system not total: missing " + d.to_string());
}

Rational WeightSystem::operator()(const ChordDiagram& d) const {
    auto it = values_.find(d);
    if (it == values_.end())
        throw std::invalid_argument("no value for diagram " + d.to_string());
    return it->second;
}

bool WeightSystem::is_zero() const {
    for (auto& [d, v] : values_)
        if (v != 0) return false;
    return true;
}

std::string WeightSystem::to_json() const {
    nlohmann::json j;
    j["degree"] = degree_;
    j["values"] = nlohmann::json::array();
    for (auto& [d, v] : values_) j["values"].push_back({d.to_string(), to_string(v)});
    return j.dump(2);
}

WeightSystem WeightSystem::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int degree = j.at("degree").get<int>();
    std::map<ChordDiagram, Rational> values;
    for (auto& entry : j.at("values")) {
        ChordDiagram d = ChordDiagram::parse(entry.at(0).get<std::string>());
        values.emplace(d, parse_rational(entry.at(1).get<std::string>()));
    }
    return WeightSystem(degree, std::move(values));
}

WeightSystem c2_weight_system() {
    ChordDiagram crossing({{0, 2}, {1, 3}});
    ChordDiagram nested({{0, 1}, {2, 3}});
    return WeightSystem(2, {{crossing, 1}, {nested, 0}});
}

WeightSystem deg3_weight_system() {
    // Values (2, -1, 1, 1) on four diagrams; the fifth (isolated chord next
    // to a crossing pair) is forced to -4 by the 4T relation.
    std::map<ChordDiagram, Rational> v;
    v.emplace(ChordDiagram({{0, 3}, {1, 4}, {2, 5}}), 2);
    v.emplace(ChordDiagram({{0, 2}, {1, 4}, {3, 5}}), -1);
    v.emplace(ChordDiagram({{0, 1}, {2, 3}, {4, 5}}), 1);
    v.emplace(ChordDiagram({{0, 1}, {2, 5}, {3, 4}}), 1);
    v.emplace(ChordDiagram({{0, 1}, {2, 4}, {3, 5}}), -4);
    return WeightSystem(3, std::move(v));
}

namespace {

// All degree-k graphs with exactly one internal vertex whose three edges all
// end on the knot (the graphs whose two-fold STU expansions generate 4T).
std::vector<TrivalentGraph> one_vertex_graphs(int k) {
    int nc = 2 * k - 1;
    std::vector<TrivalentGraph> out;
    if (nc < 3) return out;
    std::vector<int> pts(nc);
    for (int i = 0; i < nc; ++i) pts[i] = i;
    // choose the 3 attachment points
    for (int a = 0; a < nc; ++a)
        for (int b = a + 1; b < nc; ++b)
            for (int c = b + 1; c < nc; ++c) {
                std::vector<int> rest;
                for (int p = 0; p < nc; ++p)
                    if (p != a && p != b && p != c) rest.push_back(p);
                // matchings of the remaining points into chords
                std::vector<std::vector<std::pair<int, int>>> ms;
                std::function<void(std::vector<int>&, std::vector<std::pair<int, int>>&)>
                    rec = [&](std::vector<int>& left,
                              std::vector<std::pair<int, int>>& acc) {
                        if (left.empty()) {
                            ms.push_back(acc);
                            return;
                        }
                        int x = left.front();
                        for (size_t i = 1; i < left.size(); ++i) {
                            std::vector<int> next;
                            for (size_t j = 1; j < left.size(); ++j)
                                if (j != i) next.push_back(left[j]);
                            acc.emplace_back(x, left[i]);
                            rec(next, acc);
                            acc.pop_back();
                        }
                    };
                std::vector<std::pair<int, int>> acc;
                rec(rest, acc);
                for (auto& chords : ms) {
                    for (int flip = 0; flip < 2; ++flip) {
                        TrivalentGraph g;
                        g.n_cycle = nc;
                        g.n_internal = 1;
                        int v = nc;
                        g.edges = {{a, v}, {b, v}, {c, v}};
                        for (auto ch : chords) g.edges.push_back(ch);
                        g.orders = {flip ? std::array<int, 3>{0, 2, 1}
                                         : std::array<int, 3>{0, 1, 2}};
                        out.push_back(g);
                    }
                }
            }
    return out;
}

// The two chord diagrams produced by one STU expansion of a one-internal-
// vertex graph at edge eid: (T, U).
std::pair<TrivalentGraph, TrivalentGraph> stu_step(const TrivalentGraph& g, int eid) {
    ContractedGraph cg = contract_edge(g, EdgeRef{true, eid});
    auto parts = uncontract_partners(cg);
    TrivalentGraph T, U;
    bool ft = false, fu = false;
    for (auto& r : parts) {
        if (r.copy != 0) continue;
        if (r.role == 1) {
            T = r.graph;
            ft = true;
        }
        if (r.role == 2) {
            U = r.graph;
            fu = true;
        }
    }
    if (!ft || !fu) throw std::logic_error("missing STU resolutions");
    return {T, U};
}

} // namespace

std::vector<RelationViolation> check_4T(const WeightSystem& w) {
    std::vector<RelationViolation> out;
    ExtendedWeightSystem ext(w);
    for (auto& g : one_vertex_graphs(w.degree())) {
        int v = g.n_cycle;
        (void)v;
        // expansions at the three knot-attached edges (ids 0,1,2)
        Rational vals[3];
        for (int e = 0; e < 3; ++e) {
            auto [T, U] = stu_step(g, g.orders[0][e] /* rotate start */);
            vals[e] = w(to_chord_diagram(T)) - w(to_chord_diagram(U));
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (vals[i] != vals[j]) {
                    std::ostringstream os;
                    os << "4T failure on " << graph_to_json(g) << " expansions " << i
                       << "," << j;
                    out.push_back({os.str(), vals[i] - vals[j]});
                }
    }
    return out;
}

bool is_unsupported_shape(const TrivalentGraph& g) {
    if (g.n_internal < 2) return false;
    int touching = 0;
    for (int i = 0; i < g.n_internal; ++i) {
        int v = g.n_cycle + i;
        bool t = false;
        for (auto [a, b] : g.edges)
            if ((a == v && b < g.n_cycle) || (b == v && a < g.n_cycle)) t = true;
        touching += t ? 1 : 0;
    }
    return touching == 1;
}

namespace {

Rational extend_impl(const WeightSystem& w, const TrivalentGraph& g,
                     std::map<TrivalentGraph, Rational>* cache, std::mutex* mu) {
    if (g.degree() != w.degree())
        throw std::invalid_argument("graph degree does not match weight system");
    if (g.n_internal == 0) return w(to_chord_diagram(g));
    TrivalentGraph key = canonicalize(g);
    if (cache) {
        std::lock_guard<std::mutex> lk(*mu);
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
    }
    if (is_unsupported_shape(key))
        throw std::domain_error("STU extension undefined on this graph shape: " +
                                graph_to_json(key));
    // find a knot-attached internal edge
    int eid = -1;
    for (int e = 0; e < static_cast<int>(key.edges.size()); ++e) {
        auto [a, b] = key.edges[e];
        if (key.is_internal(a) != key.is_internal(b)) {
            eid = e;
            break;
        }
    }
    if (eid < 0) throw std::logic_error("connected graph without knot-attached edge");
    auto parts = uncontract_partners(contract_edge(key, EdgeRef{true, eid}));
    TrivalentGraph T, U;
    for (auto& r : parts) {
        if (r.copy != 0) continue;
        if (r.role == 1) T = r.graph;
        if (r.role == 2) U = r.graph;
    }
    Rational val =
        extend_impl(w, T, cache, mu) - extend_impl(w, U, cache, mu);
    if (cache) {
        std::lock_guard<std::mutex> lk(*mu);
        cache->emplace(key, val);
    }
    return val;
}

} // namespace

Rational extend_STU(const WeightSystem& w, const TrivalentGraph& g) {
    return extend_impl(w, g, nullptr, nullptr);
}

Rational ExtendedWeightSystem::value(const TrivalentGraph& g) const {
    return extend_impl(base_, g, &cache_, &mu_);
}

std::vector<RelationViolation> check_IHX(const ExtendedWeightSystem& ext) {
    std::vector<RelationViolation> out;
    int k = ext.base().degree();
    for (auto& g : enumerate_trivalent_graphs(k, 4)) {
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto [a, b] = g.edges[e];
            if (!g.is_internal(a) || !g.is_internal(b)) continue;
            ContractedGraph cg;
            try {
                cg = contract_edge(g, EdgeRef{true, e});
            } catch (const std::invalid_argument&) {
                continue; // parallel-pair contraction would make a loop
            }
            auto parts = uncontract_partners(cg);
            Rational total = 0;
            bool supported = true;
            try {
                for (auto& r : parts) {
                    if (r.copy != 0) continue;
                    total += Rational(r.relation_sign) * ext.value(r.graph);
                }
            } catch (const std::domain_error&) {
                supported = false;
            }
            if (supported && total != 0) {
                std::ostringstream os;
                os << "IHX failure contracting edge " << e << " of " << graph_to_json(g);
                out.push_back({os.str(), total});
            }
        }
    }
    return out;
}

ParityResult parity(const WeightSystem& w) {
    if (w.is_zero()) return {Parity::Even, Parity::Even};
    Parity r3 = (w.degree() % 2 == 0) ? Parity::Even : Parity::Odd;
    bool all_even = true, all_odd = true;
    for (auto& [d, v] : w.values()) {
        Rational rv = w(d.reversed());
        if (rv != v) all_even = false;
        if (rv != -v) all_odd = false;
    }
    Parity s1 = all_even ? Parity::Even : (all_odd ? Parity::Odd : Parity::Mixed);
    return {r3, s1};
}

WeightSystem reverse(const WeightSystem& w) {
    std::map<ChordDiagram, Rational> values;
    for (auto& [d, v] : w.values()) values.emplace(d, w(d.reversed()));
    return WeightSystem(w.degree(), std::move(values));
}

WeightSystem symmetrize(const WeightSystem& w) {
    std::map<ChordDiagram, Rational> values;
    for (auto& [d, v] : w.values())
        values.emplace(d, (v + w(d.reversed())) / 2);
    return WeightSystem(w.degree(), std::move(values));
}

WeightSystem antisymmetrize(const WeightSystem& w) {
    std::map<ChordDiagram, Rational> values;
    for (auto& [d, v] : w.values())
        values.emplace(d, (v - w(d.reversed())) / 2);
    return WeightSystem(w.degree(), std::move(values));
}

AnomalyCase anomaly_case(const WeightSystem& w) {
    auto p = parity(w);
    if (p.r3 == Parity::Mixed || p.s1 == Parity::Mixed)
        throw std::domain_error("mixed parity: decompose under reversal first");
    if (p.r3 == p.s1) return AnomalyCase::Vanishes;
    if (p.r3 == Parity::Odd) return AnomalyCase::WritheCorrectionClass;
    return AnomalyCase::OneFormCorrectionClass;
}

long long chord_evaluation(const TrivalentGraph& g, const ChordDiagram& d) {
    if (g.n_internal != 0)
        throw std::invalid_argument("chord evaluation needs a diagram-shaped graph");
    if (g.degree() != d.degree())
        throw std::invalid_argument("degree mismatch");
    int n = 2 * d.degree();
    auto target = d.chords();
    long long count = 0;
    for (int r = 0; r < n; ++r) {
        std::vector<std::pair<int, int>> rot;
        for (auto [a, b] : g.edges) {
            int x = (a + r) % n, y = (b + r) % n;
            rot.emplace_back(std::min(x, y), std::max(x, y));
        }
        std::sort(rot.begin(), rot.end());
        if (rot == target) ++count;
    }
    return count;
}

} // namespace vassiliev
