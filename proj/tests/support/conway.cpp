#include "conway.hpp"

#include <algorithm>
#include <stdexcept>

namespace vassiliev::testing {

namespace {

using Poly = std::array<long long, 4>;

Poly operator+(const Poly& a, const Poly& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

// multiply by s*z, truncating at z^3
Poly shift(const Poly& p, long long s) { return {0, s * p[0], s * p[1], s * p[2]}; }

struct Loc {
    int comp = -1, pos = -1;
};

std::array<Loc, 2> locate(const GaussDiagram& d, int crossing) {
    std::array<Loc, 2> out;
    int found = 0;
    for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
        for (int p = 0; p < static_cast<int>(d.comps[c].size()); ++p)
            if (d.comps[c][p].crossing == crossing) out[found++] = {c, p};
    if (found != 2) throw std::logic_error("crossing does not appear twice");
    return out;
}

GaussDiagram switch_crossing(GaussDiagram d, int crossing) {
    for (auto& comp : d.comps)
        for (auto& p : comp)
            if (p.crossing == crossing) p.over = !p.over;
    d.sign[crossing] = -d.sign[crossing];
    return d;
}

// oriented smoothing: delete the crossing, reconnecting the strands
GaussDiagram smooth_crossing(const GaussDiagram& d, int crossing) {
    auto loc = locate(d, crossing);
    GaussDiagram out;
    out.sign = d.sign;
    out.sign.erase(crossing);
    if (loc[0].comp == loc[1].comp) {
        // a self-crossing splits its component in two
        const auto& L = d.comps[loc[0].comp];
        int p = std::min(loc[0].pos, loc[1].pos);
        int q = std::max(loc[0].pos, loc[1].pos);
        std::vector<Pass> a(L.begin() + p + 1, L.begin() + q);
        std::vector<Pass> b(L.begin() + q + 1, L.end());
        b.insert(b.end(), L.begin(), L.begin() + p);
        for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
            if (c != loc[0].comp) out.comps.push_back(d.comps[c]);
        out.comps.push_back(a);
        out.comps.push_back(b);
    } else {
        // a mixed crossing merges two components
        const auto& A = d.comps[loc[0].comp];
        const auto& B = d.comps[loc[1].comp];
        std::vector<Pass> m(A.begin(), A.begin() + loc[0].pos);
        m.insert(m.end(), B.begin() + loc[1].pos + 1, B.end());
        m.insert(m.end(), B.begin(), B.begin() + loc[1].pos);
        m.insert(m.end(), A.begin() + loc[0].pos + 1, A.end());
        for (int c = 0; c < static_cast<int>(d.comps.size()); ++c)
            if (c != loc[0].comp && c != loc[1].comp) out.comps.push_back(d.comps[c]);
        out.comps.push_back(m);
    }
    return out;
}

} // namespace

GaussDiagram gauss_diagram(const PlaneDiagram& d) {
    struct Entry {
        double s;
        Pass pass;
    };
    std::vector<Entry> entries;
    int id = 0;
    GaussDiagram out;
    for (const auto& c : d.crossings) {
        entries.push_back({c.s_over, {id, true}});
        entries.push_back({c.s_under, {id, false}});
        out.sign[id] = c.sign;
        ++id;
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.s < b.s; });
    out.comps.emplace_back();
    for (const auto& e : entries) out.comps[0].push_back(e.pass);
    return out;
}

Poly conway_poly(const GaussDiagram& d) {
    // locate the first crossing (in traversal order) met first from below
    std::map<int, bool> seen;
    int target = -1;
    for (const auto& comp : d.comps) {
        for (const auto& p : comp) {
            if (seen.count(p.crossing)) continue;
            seen[p.crossing] = true;
            if (!p.over) {
                target = p.crossing;
                break;
            }
        }
        if (target >= 0) break;
    }
    if (target < 0) {
        // descending diagram: an unlink
        return d.comps.size() == 1 ? Poly{1, 0, 0, 0} : Poly{0, 0, 0, 0};
    }
    long long s = d.sign.at(target);
    // nabla(L+) - nabla(L-) = z nabla(L0); the switched diagram is the other
    // crossing sign, the smoothed one drops the crossing
    Poly sw = conway_poly(switch_crossing(d, target));
    Poly sm = conway_poly(smooth_crossing(d, target));
    return sw + shift(sm, s);
}

std::array<long long, 4> conway(const GaussDiagram& d) { return conway_poly(d); }

long long conway_c2(const PlaneDiagram& d) { return conway(gauss_diagram(d))[2]; }

} // namespace vassiliev::testing
