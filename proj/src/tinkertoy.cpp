#include "vassiliev/tinkertoy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "vassiliev/rng.hpp"

namespace vassiliev {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Signs relating the counting orientation to the weight-system orientation,
// pinned by the anchors signed_count_v2(trefoil) - signed_count_v2(unknot)
// = +1 and agreement with the Monte Carlo route.
constexpr int kChordPairSign = -1; // parity of interleaving the two chords
constexpr int kTripodSign = -1;    // per internal node, as in the integrand

// right-handed tangent frame (f1, f2, u) at a unit vector u
void sphere_frame(const Vec3& u, Vec3& f1, Vec3& f2) {
    Vec3 seed = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    f1 = cross(u, seed).normalized();
    f2 = cross(u, f1);
}

double frac(double s) {
    double f = s - std::floor(s);
    return (f >= 1.0) ? 0.0 : f;
}

void check_generic(const PolygonalKnot& k, const Vec3& d) {
    for (int i = 0; i < k.size(); ++i) {
        Vec3 e = (k.vertices[(i + 1) % k.size()] - k.vertices[i]).normalized();
        if (cross(e, d).norm() < 1e-6)
            throw std::runtime_error("direction parallel to a knot segment");
    }
}

// sign of the determinant of a small dense matrix (Gaussian elimination)
int det_sign(std::vector<std::vector<double>> m, double tol) {
    int n = static_cast<int>(m.size());
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < tol)
            throw std::runtime_error("degenerate direction-map Jacobian");
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        if (m[c][c] < 0) sign = -sign;
        for (int r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return sign;
}

// solve a dense linear system in place; returns false when near-singular
bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-12) return false;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    for (int c = 0; c < n; ++c) b[c] /= a[c][c];
    return true;
}

bool cyclically_ordered(double a, double b, double c, double d) {
    double x = frac(b - a), y = frac(c - a), z = frac(d - a);
    return 0 < x && x < y && y < z;
}

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
    Vec3 u = axis.normalized();
    double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(u, v) * s + u * dot(u, v) * (1 - c);
}

} // namespace

PolygonalKnot polygonalize(const ParametricKnot& k, int segments) {
    if (segments < 3) throw std::invalid_argument("need at least 3 segments");
    PolygonalKnot p;
    p.vertices.reserve(segments);
    for (int i = 0; i < segments; ++i) p.vertices.push_back(k.at(double(i) / segments));
    return p;
}

DirectionSet random_direction_set(unsigned long long seed) {
    RandomStream rs(seed, 0);
    DirectionSet out;
    while (out.dirs.size() < 3) {
        double z = 2 * rs.next_double() - 1;
        double a = kTwoPi * rs.next_double();
        double s = std::sqrt(std::max(0.0, 1 - z * z));
        Vec3 d{s * std::cos(a), s * std::sin(a), z};
        bool ok = true;
        for (const auto& e : out.dirs)
            if (cross(e, d).norm() < 1e-3) ok = false;
        if (ok) out.dirs.push_back(d);
    }
    return out;
}

std::vector<ChordSolution> find_chords(const PolygonalKnot& k, const Vec3& d) {
    check_generic(k, d);
    Vec3 u = d.normalized();
    Vec3 f1, f2;
    sphere_frame(u, f1, f2);
    int n = k.size();
    std::vector<ChordSolution> out;
    for (int i = 0; i < n; ++i) {
        Vec3 ai = k.vertices[i];
        Vec3 ei = k.vertices[(i + 1) % n] - ai;
        for (int j = i + 1; j < n; ++j) {
            Vec3 aj = k.vertices[j];
            Vec3 ej = k.vertices[(j + 1) % n] - aj;
            Vec3 c = aj - ai;
            // (c + u_j e_j - t_i e_i) perpendicular components vanish
            double m00 = -dot(f1, ei), m01 = dot(f1, ej);
            double m10 = -dot(f2, ei), m11 = dot(f2, ej);
            double det = m00 * m11 - m01 * m10;
            if (std::abs(det) < 1e-12) continue; // chord plane parallel; no isolated root
            double r0 = -dot(f1, c), r1 = -dot(f2, c);
            double t = (m11 * r0 - m01 * r1) / det;
            double v = (-m10 * r0 + m00 * r1) / det;
            if (t < 0 || t >= 1 || v < 0 || v >= 1) continue;
            Vec3 p = ai + ei * t, q = aj + ej * v;
            Vec3 ch = q - p;
            if (ch.norm() < 1e-9) continue;
            bool fwd = dot(ch, u) > 0;
            double sf = (i + t) / n, st = (j + v) / n;
            Vec3 tf = k.tangent(sf), tt = k.tangent(st);
            if (!fwd) {
                std::swap(sf, st);
                std::swap(tf, tt);
            }
            double len = ch.norm();
            std::vector<std::vector<double>> jac = {
                {dot(f1, tf * (-1.0)) / len, dot(f1, tt) / len},
                {dot(f2, tf * (-1.0)) / len, dot(f2, tt) / len}};
            out.push_back({sf, st, det_sign(jac, 1e-10)});
        }
    }
    std::sort(out.begin(), out.end(), [](const ChordSolution& a, const ChordSolution& b) {
        return std::pair(a.s1, a.s2) < std::pair(b.s1, b.s2);
    });
    return out;
}

std::vector<TinkertoySolution> find_tripods(const PolygonalKnot& k,
                                            const std::vector<Vec3>& dirs) {
    if (dirs.size() != 3) throw std::invalid_argument("tripods need 3 directions");
    for (const auto& d : dirs) check_generic(k, d);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (cross(dirs[a], dirs[b]).norm() < 1e-6)
                throw std::runtime_error("tripod directions nearly parallel");

    int n = k.size();
    std::vector<Vec3> f1(3), f2(3), ud(3);
    for (int a = 0; a < 3; ++a) {
        ud[a] = dirs[a].normalized();
        sphere_frame(ud[a], f1[a], f2[a]);
    }
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<TinkertoySolution> out;
    // anchors on three distinct segments; a generic direction set has no
    // solutions with two anchors on one segment of a fine enough polygon
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int l = j + 1; l < n; ++l) {
                int seg[3] = {i, j, l};
                for (const auto& perm : perms) {
                    // unknowns (t0, t1, t2, x, y, z); per rod r the components
                    // of x - K_r(t_r) across dirs[perm[r]] vanish
                    std::vector<std::vector<double>> m(6, std::vector<double>(6, 0));
                    std::vector<double> rhs(6, 0);
                    for (int r = 0; r < 3; ++r) {
                        Vec3 a0 = k.vertices[seg[r]];
                        Vec3 e = k.vertices[(seg[r] + 1) % n] - a0;
                        const Vec3& g1 = f1[perm[r]];
                        const Vec3& g2 = f2[perm[r]];
                        for (int c = 0; c < 3; ++c) {
                            m[2 * r][3 + c] = g1[c];
                            m[2 * r + 1][3 + c] = g2[c];
                        }
                        m[2 * r][r] = -dot(g1, e);
                        m[2 * r + 1][r] = -dot(g2, e);
                        rhs[2 * r] = dot(g1, a0);
                        rhs[2 * r + 1] = dot(g2, a0);
                    }
                    if (!solve_linear(m, rhs)) continue;
                    double t[3] = {rhs[0], rhs[1], rhs[2]};
                    Vec3 x{rhs[3], rhs[4], rhs[5]};
                    bool ok = true;
                    for (int r = 0; r < 3; ++r)
                        if (t[r] < 0 || t[r] >= 1) ok = false;
                    if (!ok) continue;
                    Vec3 anchor[3];
                    double lam[3];
                    Vec3 rodu[3];
                    for (int r = 0; r < 3 && ok; ++r) {
                        anchor[r] = k.vertices[seg[r]] +
                                    (k.vertices[(seg[r] + 1) % n] - k.vertices[seg[r]]) * t[r];
                        Vec3 rod = x - anchor[r];
                        lam[r] = rod.norm();
                        if (lam[r] < 1e-9) ok = false;
                        else rodu[r] = rod / lam[r];
                    }
                    if (!ok) continue;
                    // orientation sign of the direction map at the solution,
                    // in tangent frames taken at the actual rod directions
                    std::vector<std::vector<double>> jac(6, std::vector<double>(6, 0));
                    for (int r = 0; r < 3; ++r) {
                        Vec3 g1, g2;
                        sphere_frame(rodu[r], g1, g2);
                        Vec3 e = (k.vertices[(seg[r] + 1) % n] - k.vertices[seg[r]]) *
                                 static_cast<double>(n); // tangent, d/ds scale
                        for (int c = 0; c < 3; ++c) {
                            jac[2 * r][3 + c] = g1[c] / lam[r];
                            jac[2 * r + 1][3 + c] = g2[c] / lam[r];
                        }
                        jac[2 * r][r] = -dot(g1, e) / lam[r];
                        jac[2 * r + 1][r] = -dot(g2, e) / lam[r];
                    }
                    TinkertoySolution sol;
                    for (int r = 0; r < 3; ++r)
                        sol.knot_params.push_back((seg[r] + t[r]) / n);
                    sol.free_point = x;
                    sol.rod_direction = {perm[0], perm[1], perm[2]};
                    sol.sign = det_sign(jac, 1e-12);
                    out.push_back(sol);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const TinkertoySolution& a, const TinkertoySolution& b) {
                  return std::pair(a.knot_params, a.rod_direction) <
                         std::pair(b.knot_params, b.rod_direction);
              });
    return out;
}

Rational signed_count_v2(const PolygonalKnot& k, const DirectionSet& dirs, int trials) {
    if (dirs.dirs.size() != 3)
        throw std::invalid_argument("signed_count_v2 needs 3 directions");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    Rational result;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Vec3> ds;
        if (trial == 0) {
            ds = dirs.dirs;
        } else {
            RandomStream rs(0x7e11u, static_cast<std::uint64_t>(trial));
            Vec3 axis{2 * rs.next_double() - 1, 2 * rs.next_double() - 1,
                      2 * rs.next_double() - 1};
            double ang = kTwoPi * rs.next_double();
            for (const auto& d : dirs.dirs) ds.push_back(rotate(d, axis, ang));
        }
        // interleaved pairs of chords parallel to the first two directions
        auto ca = find_chords(k, ds[0]);
        auto cb = find_chords(k, ds[1]);
        long long nx = 0;
        for (const auto& a : ca)
            for (const auto& b : cb)
                if (cyclically_ordered(a.s1, b.s1, a.s2, b.s2))
                    nx += kChordPairSign * a.sign * b.sign;
        // tripods, summed over all 6 assignments and both rod orientations:
        // 48 regular values, each contributing the same integer count
        auto tp = find_tripods(k, ds);
        long long ty = 0;
        for (const auto& s : tp) ty += kTripodSign * s.sign;
        if (ty % 48 != 0)
            throw std::runtime_error("tripod count not divisible by 48: degenerate directions");
        Rational v = Rational(nx) / 4 + Rational(ty) / (3 * 48);
        if (trial == 0)
            result = v;
        else if (v != result)
            throw std::runtime_error("signed count differs between direction sets");
    }
    return result;
}

} // namespace vassiliev
