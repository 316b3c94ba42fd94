#include "vassiliev/chord_diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vassiliev {

namespace {

std::vector<std::pair<int, int>> normalize(std::vector<std::pair<int, int>> ch) {
    for (auto& c : ch)
        if (c.first > c.second) std::swap(c.first, c.second);
    std::sort(ch.begin(), ch.end());
    return ch;
}

// Lexicographically least rotation of the circle.
std::vector<std::pair<int, int>> canonical(std::vector<std::pair<int, int>> ch) {
    int n = 2 * static_cast<int>(ch.size());
    auto best = normalize(ch);
    for (int r = 1; r < n; ++r) {
        std::vector<std::pair<int, int>> rot;
        rot.reserve(ch.size());
        for (auto [a, b] : ch) rot.emplace_back((a + r) % n, (b + r) % n);
        rot = normalize(rot);
        if (rot < best) best = rot;
    }
    return best;
}

} // namespace

ChordDiagram::ChordDiagram(std::vector<std::pair<int, int>> chords) {
    if (chords.empty()) throw std::invalid_argument("chord diagram needs degree >= 1");
    int n = 2 * static_cast<int>(chords.size());
    std::set<int> seen;
    for (auto [a, b] : chords) {
        if (a < 0 || a >= n || b < 0 || b >= n || a == b)
            throw std::invalid_argument("chord endpoint out of range");
        seen.insert(a);
        seen.insert(b);
    }
    if (static_cast<int>(seen.size()) != n)
        throw std::invalid_argument("chords must form a perfect matching");
    chords_ = canonical(std::move(chords));
}

int ChordDiagram::partner(int p) const {
    for (auto [a, b] : chords_) {
        if (a == p) return b;
        if (b == p) return a;
    }
    throw std::out_of_range("no such point");
}

ChordDiagram ChordDiagram::reversed() const {
    int n = points();
    std::vector<std::pair<int, int>> ch;
    ch.reserve(chords_.size());
    for (auto [a, b] : chords_) ch.emplace_back(n - 1 - a, n - 1 - b);
    return ChordDiagram(std::move(ch));
}

std::string ChordDiagram::to_string() const {
    std::ostringstream os;
    os << degree() << ":[";
    for (size_t i = 0; i < chords_.size(); ++i) {
        if (i) os << ",";
        os << "(" << chords_[i].first << "," << chords_[i].second << ")";
    }
    os << "]";
    return os.str();
}

ChordDiagram ChordDiagram::parse(const std::string& text) {
    std::istringstream is(text);
    int k = 0;
    char c = 0;
    if (!(is >> k >> c) || c != ':') throw std::invalid_argument("bad diagram: " + text);
    if (!(is >> c) || c != '[') throw std::invalid_argument("bad diagram: " + text);
    std::vector<std::pair<int, int>> ch;
    for (int i = 0; i < k; ++i) {
        int a = 0, b = 0;
        char p1 = 0, comma = 0, p2 = 0;
        if (i && (!(is >> c) || c != ',')) throw std::invalid_argument("bad diagram: " + text);
        if (!(is >> p1 >> a >> comma >> b >> p2) || p1 != '(' || comma != ',' || p2 != ')')
            throw std::invalid_argument("bad diagram: " + text);
        ch.emplace_back(a, b);
    }
    if (!(is >> c) || c != ']') throw std::invalid_argument("bad diagram: " + text);
    return ChordDiagram(std::move(ch));
}

namespace {

void matchings(std::vector<int>& pts, std::vector<std::pair<int, int>>& acc,
               std::vector<std::vector<std::pair<int, int>>>& out) {
    if (pts.empty()) {
        out.push_back(acc);
        return;
    }
    int a = pts.front();
    for (size_t i = 1; i < pts.size(); ++i) {
        int b = pts[i];
        std::vector<int> rest;
        for (size_t j = 1; j < pts.size(); ++j)
            if (j != i) rest.push_back(pts[j]);
        acc.emplace_back(a, b);
        matchings(rest, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<ChordDiagram> enumerate_chord_diagrams(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("degree out of supported range [1,6]");
    std::vector<int> pts(2 * k);
    for (int i = 0; i < 2 * k; ++i) pts[i] = i;
    std::vector<std::vector<std::pair<int, int>>> all;
    std::vector<std::pair<int, int>> acc;
    matchings(pts, acc, all);
    std::set<ChordDiagram> classes;
    for (auto& m : all) classes.insert(ChordDiagram(m));
    return std::vector<ChordDiagram>(classes.begin(), classes.end());
}

} // namespace vassiliev
