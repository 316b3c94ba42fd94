#include "vassiliev/knots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vassiliev/rng.hpp"

namespace vassiliev {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double frac(double s) {
    double f = s - std::floor(s);
    return (f >= 1.0) ? 0.0 : f;
}

// Orthonormal basis (e1, e2) of the plane perpendicular to dir.
void plane_basis(const Vec3& dir, Vec3& e1, Vec3& e2) {
    Vec3 n = dir.normalized();
    Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(n, seed).normalized();
    e2 = cross(n, e1);
}

struct Proj2 {
    double u = 0, v = 0;
};

Proj2 project(const Vec3& p, const Vec3& e1, const Vec3& e2) {
    return {dot(p, e1), dot(p, e2)};
}

// Distance below which two 2D segments are worth a Newton attempt.
bool segments_near(const Proj2& a0, const Proj2& a1, const Proj2& b0, const Proj2& b1,
                   double tol) {
    auto orient = [](const Proj2& p, const Proj2& q, const Proj2& r) {
        return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
    };
    double d1 = orient(a0, a1, b0), d2 = orient(a0, a1, b1);
    double d3 = orient(b0, b1, a0), d4 = orient(b0, b1, a1);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    auto seg_pt = [](const Proj2& p, const Proj2& q, const Proj2& x) {
        double du = q.u - p.u, dv = q.v - p.v;
        double len2 = du * du + dv * dv;
        double t = len2 > 0 ? ((x.u - p.u) * du + (x.v - p.v) * dv) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        double ru = p.u + t * du - x.u, rv = p.v + t * dv - x.v;
        return std::sqrt(ru * ru + rv * rv);
    };
    double d = std::min(std::min(seg_pt(a0, a1, b0), seg_pt(a0, a1, b1)),
                        std::min(seg_pt(b0, b1, a0), seg_pt(b0, b1, a1)));
    return d < tol;
}

// Newton iteration for proj(f(s)) == proj(g(t)).  Returns true on convergence
// with a well-conditioned Jacobian.
bool newton_pair(const std::function<Vec3(double)>& f, const std::function<Vec3(double)>& fd,
                 const std::function<Vec3(double)>& g, const std::function<Vec3(double)>& gd,
                 const Vec3& e1, const Vec3& e2, double& s, double& t) {
    for (int it = 0; it < 40; ++it) {
        Proj2 ps = project(f(s), e1, e2);
        Proj2 pt = project(g(t), e1, e2);
        double r0 = ps.u - pt.u, r1 = ps.v - pt.v;
        Proj2 js = project(fd(s), e1, e2);
        Proj2 jt = project(gd(t), e1, e2);
        double a = js.u, b = -jt.u, c = js.v, d = -jt.v;
        double det = a * d - b * c;
        if (std::abs(det) < 1e-12) return false;
        double ds = (d * r0 - b * r1) / det;
        double dt = (-c * r0 + a * r1) / det;
        s -= ds;
        t -= dt;
        if (std::abs(ds) + std::abs(dt) < 1e-14) {
            Proj2 qs = project(f(frac(s)), e1, e2);
            Proj2 qt = project(g(frac(t)), e1, e2);
            double res = std::hypot(qs.u - qt.u, qs.v - qt.v);
            return res < 1e-9;
        }
    }
    return false;
}

struct CrossingScan {
    bool ok = false;
    std::vector<Crossing> crossings;
};

// Scan all self-intersections of the projection of k along dir (unit).
// Fails (ok=false) on any near-degenerate configuration.
CrossingScan scan_crossings(const ParametricKnot& k, const Vec3& dir, int grid) {
    CrossingScan out;
    Vec3 e1, e2;
    plane_basis(dir, e1, e2);
    std::vector<Proj2> pts(grid + 1);
    double maxstep = 0;
    for (int i = 0; i <= grid; ++i) {
        pts[i] = project(k.at(frac(double(i) / grid)), e1, e2);
        if (i > 0)
            maxstep = std::max(maxstep, std::hypot(pts[i].u - pts[i - 1].u,
                                                   pts[i].v - pts[i - 1].v));
    }
    std::vector<std::pair<double, double>> found;
    double h = 1.0 / grid;
    for (int i = 0; i < grid; ++i) {
        for (int j = i + 2; j < grid; ++j) {
            if (i == 0 && j == grid - 1) continue;
            if (!segments_near(pts[i], pts[i + 1], pts[j], pts[j + 1], 0.25 * maxstep))
                continue;
            double s = (i + 0.5) * h, t = (j + 0.5) * h;
            if (!newton_pair(k.at, k.tangent, k.at, k.tangent, e1, e2, s, t)) continue;
            s = frac(s);
            t = frac(t);
            if (t < s) std::swap(s, t);
            double gap = std::min(t - s, 1.0 - (t - s));
            if (gap < 5 * h) continue; // converged to the diagonal or a neighbor cell
            bool dup = false;
            for (auto& f : found)
                if (std::abs(f.first - s) < 1e-6 && std::abs(f.second - t) < 1e-6) dup = true;
            if (dup) continue;
            found.emplace_back(s, t);
        }
    }
    Vec3 n = dir.normalized();
    out.ok = true;
    for (auto& [s, t] : found) {
        double hs = dot(k.at(s), n), ht = dot(k.at(t), n);
        if (std::abs(hs - ht) < 1e-9) {
            out.ok = false; // strands touch in 3-space: non-generic
            return out;
        }
        double so = hs > ht ? s : t;
        double su = hs > ht ? t : s;
        double sg = dot(n, cross(k.tangent(so), k.tangent(su)));
        if (std::abs(sg) < 1e-12) {
            out.ok = false; // projected tangency
            return out;
        }
        out.crossings.push_back({su, so, sg > 0 ? 1 : -1});
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& a, const Crossing& b) {
                  return std::min(a.s_under, a.s_over) < std::min(b.s_under, b.s_over);
              });
    return out;
}

Vec3 jitter_direction(const Vec3& dir, int attempt) {
    RandomStream rs(0x6a1f7u, static_cast<std::uint64_t>(attempt));
    Vec3 d = dir.normalized();
    double scale = 0.01 * attempt;
    Vec3 j{rs.next_double() - 0.5, rs.next_double() - 0.5, rs.next_double() - 0.5};
    return (d + j * scale).normalized();
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

} // namespace

Vec3 PolygonalKnot::at(double s) const {
    int n = size();
    double x = frac(s) * n;
    int i = std::min(static_cast<int>(x), n - 1);
    double f = x - i;
    const Vec3& a = vertices[i];
    const Vec3& b = vertices[(i + 1) % n];
    return a + (b - a) * f;
}

Vec3 PolygonalKnot::tangent(double s) const {
    int n = size();
    double x = frac(s) * n;
    int i = std::min(static_cast<int>(x), n - 1);
    const Vec3& a = vertices[i];
    const Vec3& b = vertices[(i + 1) % n];
    return (b - a) * static_cast<double>(n);
}

ParametricKnot PolygonalKnot::to_parametric(const std::string& name) const {
    if (size() < 3) throw std::invalid_argument("polyline needs at least 3 vertices");
    PolygonalKnot copy = *this;
    ParametricKnot k;
    k.name = name;
    k.at = [copy](double s) { return copy.at(s); };
    k.tangent = [copy](double s) { return copy.tangent(s); };
    return k;
}

ParametricKnot circle_knot(const Vec3& center, const Vec3& normal, double radius) {
    Vec3 e1, e2;
    plane_basis(normal, e1, e2);
    ParametricKnot k;
    k.name = "circle";
    k.at = [=](double s) {
        double a = kTwoPi * s;
        return center + (e1 * std::cos(a) + e2 * std::sin(a)) * radius;
    };
    k.tangent = [=](double s) {
        double a = kTwoPi * s;
        return (e1 * -std::sin(a) + e2 * std::cos(a)) * (radius * kTwoPi);
    };
    return k;
}

static ParametricKnot torus_knot(long long p, long long q) {
    if (p == 0 || q == 0 || std::abs(gcd_ll(p, q)) != 1)
        throw std::invalid_argument("torus knot requires coprime nonzero p, q");
    ParametricKnot k;
    k.name = "torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
    double dp = static_cast<double>(p), dq = static_cast<double>(q);
    k.at = [dp, dq](double s) {
        double a = kTwoPi * dp * s, b = kTwoPi * dq * s;
        double r = 2.0 + std::cos(b);
        return Vec3{r * std::cos(a), r * std::sin(a), -std::sin(b)};
    };
    k.tangent = [dp, dq](double s) {
        double a = kTwoPi * dp * s, b = kTwoPi * dq * s;
        double r = 2.0 + std::cos(b);
        double rp = -std::sin(b) * kTwoPi * dq;
        return Vec3{rp * std::cos(a) - r * std::sin(a) * kTwoPi * dp,
                    rp * std::sin(a) + r * std::cos(a) * kTwoPi * dp,
                    -std::cos(b) * kTwoPi * dq};
    };
    return k;
}

ParametricKnot standard_knot(const std::string& name) {
    if (name == "unknot") return circle_knot({0, 0, 0}, {0, 0, 1}, 1.0);
    if (name == "trefoil") {
        ParametricKnot k = torus_knot(2, 3);
        k.name = "trefoil";
        return k;
    }
    if (name == "figure8") {
        ParametricKnot k;
        k.name = "figure8";
        k.at = [](double s) {
            double t = kTwoPi * s;
            double r = 2.0 + std::cos(2 * t);
            return Vec3{r * std::cos(3 * t), r * std::sin(3 * t), std::sin(4 * t)};
        };
        k.tangent = [](double s) {
            double t = kTwoPi * s;
            double r = 2.0 + std::cos(2 * t);
            double rp = -2.0 * std::sin(2 * t);
            return Vec3{(rp * std::cos(3 * t) - 3 * r * std::sin(3 * t)) * kTwoPi,
                        (rp * std::sin(3 * t) + 3 * r * std::cos(3 * t)) * kTwoPi,
                        4 * std::cos(4 * t) * kTwoPi};
        };
        return k;
    }
    long long p = 0, q = 0;
    if (std::sscanf(name.c_str(), "torus(%lld,%lld)", &p, &q) == 2) return torus_knot(p, q);
    throw std::invalid_argument("unknown knot name: " + name);
}

PlaneDiagram extract_crossings(const ParametricKnot& k, Vec3 dir) {
    if (dir.norm() < 1e-12) throw std::invalid_argument("zero projection direction");
    Vec3 d = dir.normalized();
    for (int attempt = 0; attempt <= 20; ++attempt) {
        CrossingScan sc = scan_crossings(k, d, 600);
        if (sc.ok) {
            PlaneDiagram out;
            out.direction = d;
            out.crossings = std::move(sc.crossings);
            return out;
        }
        d = jitter_direction(dir, attempt + 1);
    }
    throw std::runtime_error("no generic projection direction found");
}

PlaneDiagram extract_crossings(const PolygonalKnot& k, Vec3 dir) {
    return extract_crossings(k.to_parametric(), dir);
}

int writhe(const PlaneDiagram& d) {
    int w = 0;
    for (const auto& c : d.crossings) w += c.sign;
    return w;
}

int combinatorial_linking(const ParametricKnot& a, const ParametricKnot& b, Vec3 dir) {
    if (dir.norm() < 1e-12) throw std::invalid_argument("zero projection direction");
    Vec3 d0 = dir.normalized();
    const int grid = 600;
    for (int attempt = 0; attempt <= 20; ++attempt) {
        Vec3 n = attempt == 0 ? d0 : jitter_direction(d0, attempt);
        Vec3 e1, e2;
        plane_basis(n, e1, e2);
        std::vector<Proj2> pa(grid + 1), pb(grid + 1);
        double maxstep = 0;
        for (int i = 0; i <= grid; ++i) {
            pa[i] = project(a.at(frac(double(i) / grid)), e1, e2);
            pb[i] = project(b.at(frac(double(i) / grid)), e1, e2);
            if (i > 0) {
                maxstep = std::max(maxstep, std::hypot(pa[i].u - pa[i - 1].u,
                                                       pa[i].v - pa[i - 1].v));
                maxstep = std::max(maxstep, std::hypot(pb[i].u - pb[i - 1].u,
                                                       pb[i].v - pb[i - 1].v));
            }
        }
        std::vector<std::pair<double, double>> found;
        bool ok = true;
        for (int i = 0; i < grid && ok; ++i) {
            for (int j = 0; j < grid && ok; ++j) {
                if (!segments_near(pa[i], pa[i + 1], pb[j], pb[j + 1], 0.25 * maxstep))
                    continue;
                double s = (i + 0.5) / grid, t = (j + 0.5) / grid;
                if (!newton_pair(a.at, a.tangent, b.at, b.tangent, e1, e2, s, t)) continue;
                s = frac(s);
                t = frac(t);
                bool dup = false;
                for (auto& f : found)
                    if (std::abs(f.first - s) < 1e-6 && std::abs(f.second - t) < 1e-6)
                        dup = true;
                if (dup) continue;
                found.emplace_back(s, t);
            }
        }
        if (!ok) continue;
        int over_a = 0, over_b = 0;
        bool degenerate = false;
        for (auto& [s, t] : found) {
            double ha = dot(a.at(s), n), hb = dot(b.at(t), n);
            if (std::abs(ha - hb) < 1e-9) {
                degenerate = true;
                break;
            }
            Vec3 to = ha > hb ? a.tangent(s) : b.tangent(t);
            Vec3 tu = ha > hb ? b.tangent(t) : a.tangent(s);
            double sg = dot(n, cross(to, tu));
            if (std::abs(sg) < 1e-12) {
                degenerate = true;
                break;
            }
            (ha > hb ? over_a : over_b) += sg > 0 ? 1 : -1;
        }
        if (degenerate) continue;
        if (over_a != over_b)
            throw std::runtime_error("inconsistent crossing counts between strands");
        return over_a;
    }
    throw std::runtime_error("no generic projection direction found for link");
}

ParametricKnot perturb(const ParametricKnot& k, double amplitude, unsigned long long seed) {
    RandomStream rs(seed, 0);
    // Three Fourier modes per coordinate, decaying with frequency.
    std::array<std::array<double, 6>, 3> coef{};
    for (auto& row : coef)
        for (int m = 0; m < 6; ++m)
            row[m] = amplitude * (2.0 * rs.next_double() - 1.0) / (m / 2 + 1);
    auto bump = [coef](double s) {
        Vec3 v{0, 0, 0};
        for (int m = 0; m < 3; ++m) {
            double c = std::cos(kTwoPi * (m + 1) * s), sn = std::sin(kTwoPi * (m + 1) * s);
            v.x += coef[0][2 * m] * c + coef[0][2 * m + 1] * sn;
            v.y += coef[1][2 * m] * c + coef[1][2 * m + 1] * sn;
            v.z += coef[2][2 * m] * c + coef[2][2 * m + 1] * sn;
        }
        return v;
    };
    auto bump_d = [coef](double s) {
        Vec3 v{0, 0, 0};
        for (int m = 0; m < 3; ++m) {
            double w = kTwoPi * (m + 1);
            double c = std::cos(w * s), sn = std::sin(w * s);
            v.x += w * (-coef[0][2 * m] * sn + coef[0][2 * m + 1] * c);
            v.y += w * (-coef[1][2 * m] * sn + coef[1][2 * m + 1] * c);
            v.z += w * (-coef[2][2 * m] * sn + coef[2][2 * m + 1] * c);
        }
        return v;
    };
    ParametricKnot out;
    out.name = k.name + "+perturb";
    auto base_at = k.at;
    auto base_tan = k.tangent;
    out.at = [base_at, bump](double s) { return base_at(s) + bump(s); };
    out.tangent = [base_tan, bump_d](double s) { return base_tan(s) + bump_d(s); };
    // Embedding spot check: nonvanishing tangent, non-neighbor separation.
    const int n = 400;
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = out.at(double(i) / n);
    for (int i = 0; i < n; ++i) {
        if (out.tangent(double(i) / n).norm() < 1e-9)
            throw std::invalid_argument("perturbation kills the tangent; reduce amplitude");
        for (int j = i + 8; j < n; ++j) {
            if (i == 0 && j >= n - 8) continue;
            if ((pts[i] - pts[j]).norm() < 1e-4)
                throw std::invalid_argument("perturbation breaks embedding; reduce amplitude");
        }
    }
    return out;
}

ParametricKnot almost_planar(const ParametricKnot& k, const PlaneDiagram& d, double eps) {
    Vec3 n = d.direction.normalized();
    Vec3 e1, e2;
    plane_basis(n, e1, e2);
    // All strand parameters, used to size the bump width.
    std::vector<double> params;
    for (const auto& c : d.crossings) {
        params.push_back(frac(c.s_under));
        params.push_back(frac(c.s_over));
    }
    double width = 0.04;
    if (params.size() > 1) {
        std::sort(params.begin(), params.end());
        double gap = 1.0 + params.front() - params.back();
        for (size_t i = 1; i < params.size(); ++i)
            gap = std::min(gap, params[i] - params[i - 1]);
        if (gap < 1e-6) throw std::invalid_argument("coincident crossing strands");
        width = std::min(width, gap / 3.0);
    }
    // The shadow fixes each crossing's sign once the over strand is chosen;
    // a template demanding the other sign is unrealizable over this shadow.
    for (const auto& c : d.crossings) {
        double sg = dot(n, cross(k.tangent(c.s_over), k.tangent(c.s_under)));
        if (std::abs(sg) < 1e-12) throw std::invalid_argument("tangent crossing in template");
        if ((sg > 0 ? 1 : -1) != c.sign)
            throw std::invalid_argument("crossing sign incompatible with the shadow");
    }
    struct Bump {
        double s0, height;
    };
    std::vector<Bump> bumps;
    for (const auto& c : d.crossings) {
        bumps.push_back({frac(c.s_over), eps});
        bumps.push_back({frac(c.s_under), -eps});
    }
    auto height = [bumps, width](double s) {
        double h = 0;
        for (const auto& b : bumps) {
            double u = s - b.s0;
            u -= std::round(u);
            u /= width;
            if (std::abs(u) < 1.0) h += b.height * std::exp(1.0 - 1.0 / (1.0 - u * u));
        }
        return h;
    };
    auto height_d = [bumps, width](double s) {
        double h = 0;
        for (const auto& b : bumps) {
            double u = s - b.s0;
            u -= std::round(u);
            u /= width;
            if (std::abs(u) < 1.0) {
                double g = std::exp(1.0 - 1.0 / (1.0 - u * u));
                double om = 1.0 - u * u;
                h += b.height * g * (-2.0 * u / (om * om)) / width;
            }
        }
        return h;
    };
    auto base_at = k.at;
    auto base_tan = k.tangent;
    ParametricKnot out;
    out.name = k.name + "+flat";
    out.at = [=](double s) {
        Vec3 p = base_at(s);
        Vec3 flat = e1 * dot(p, e1) + e2 * dot(p, e2);
        return flat + n * height(s);
    };
    out.tangent = [=](double s) {
        Vec3 t = base_tan(s);
        Vec3 flat = e1 * dot(t, e1) + e2 * dot(t, e2);
        return flat + n * height_d(s);
    };
    return out;
}

ParametricKnot knot_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string type = j.at("type").get<std::string>();
    if (type == "polyline") {
        PolygonalKnot p;
        for (const auto& v : j.at("vertices"))
            p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>(),
                                  v.at(2).get<double>()});
        std::string name = j.value("name", "polyline");
        return p.to_parametric(name);
    }
    if (type == "named") {
        std::string name = j.at("name").get<std::string>();
        if (name == "circle") {
            const auto& p = j.at("params");
            auto vec = [&](const char* key) {
                const auto& a = p.at(key);
                return Vec3{a.at(0).get<double>(), a.at(1).get<double>(),
                            a.at(2).get<double>()};
            };
            return circle_knot(vec("center"), vec("normal"), p.at("radius").get<double>());
        }
        return standard_knot(name);
    }
    throw std::invalid_argument("unknown knot type: " + type);
}

ParametricKnot load_knot(const std::string& path_or_name) {
    // Named knots take precedence over files.
    try {
        return standard_knot(path_or_name);
    } catch (const std::invalid_argument&) {
    }
    auto try_open = [](const std::string& p) -> std::string {
        std::ifstream in(p);
        if (!in) return {};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string text = try_open(path_or_name);
    if (text.empty()) {
        const char* dir = std::getenv("VASSILIEV_DATA_DIR");
        if (dir) text = try_open(std::string(dir) + "/" + path_or_name);
    }
    if (text.empty())
        throw std::invalid_argument("cannot load knot: " + path_or_name);
    return knot_from_json(text);
}

namespace {

// The flat (2,3) torus shadow: an immersed plane curve with 3 double points.
ParametricKnot flat_trefoil_shadow() {
    ParametricKnot k;
    k.name = "flat-shadow";
    k.at = [](double s) {
        double a = kTwoPi * 2 * s, b = kTwoPi * 3 * s;
        double r = 2.0 + std::cos(b);
        return Vec3{r * std::cos(a), r * std::sin(a), 0.0};
    };
    k.tangent = [](double s) {
        double a = kTwoPi * 2 * s, b = kTwoPi * 3 * s;
        double r = 2.0 + std::cos(b);
        double rp = -std::sin(b) * kTwoPi * 3;
        return Vec3{rp * std::cos(a) - r * std::sin(a) * kTwoPi * 2,
                    rp * std::sin(a) + r * std::cos(a) * kTwoPi * 2, 0.0};
    };
    return k;
}

// Double points of an immersed curve lying in the z=0 plane.
std::vector<std::pair<double, double>> plane_double_points(const ParametricKnot& k) {
    Vec3 e1{1, 0, 0}, e2{0, 1, 0};
    const int grid = 600;
    std::vector<Proj2> pts(grid + 1);
    double maxstep = 0;
    for (int i = 0; i <= grid; ++i) {
        pts[i] = project(k.at(frac(double(i) / grid)), e1, e2);
        if (i > 0)
            maxstep = std::max(maxstep, std::hypot(pts[i].u - pts[i - 1].u,
                                                   pts[i].v - pts[i - 1].v));
    }
    std::vector<std::pair<double, double>> found;
    double h = 1.0 / grid;
    for (int i = 0; i < grid; ++i) {
        for (int j = i + 2; j < grid; ++j) {
            if (i == 0 && j == grid - 1) continue;
            if (!segments_near(pts[i], pts[i + 1], pts[j], pts[j + 1], 0.25 * maxstep))
                continue;
            double s = (i + 0.5) * h, t = (j + 0.5) * h;
            if (!newton_pair(k.at, k.tangent, k.at, k.tangent, e1, e2, s, t)) continue;
            s = frac(s);
            t = frac(t);
            if (t < s) std::swap(s, t);
            double gap = std::min(t - s, 1.0 - (t - s));
            if (gap < 5 * h) continue;
            bool dup = false;
            for (auto& f : found)
                if (std::abs(f.first - s) < 1e-6 && std::abs(f.second - t) < 1e-6) dup = true;
            if (!dup) found.emplace_back(s, t);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

// Add localized vertical bumps to a curve.
ParametricKnot add_bumps(const ParametricKnot& k,
                         const std::vector<std::pair<double, double>>& bumps, double width) {
    auto base_at = k.at;
    auto base_tan = k.tangent;
    ParametricKnot out;
    out.name = k.name;
    out.at = [=](double s) {
        Vec3 p = base_at(s);
        for (const auto& [s0, height] : bumps) {
            double u = s - s0;
            u -= std::round(u);
            u /= width;
            if (std::abs(u) < 1.0) p.z += height * std::exp(1.0 - 1.0 / (1.0 - u * u));
        }
        return p;
    };
    out.tangent = [=](double s) {
        Vec3 t = base_tan(s);
        for (const auto& [s0, height] : bumps) {
            double u = s - s0;
            u -= std::round(u);
            u /= width;
            if (std::abs(u) < 1.0) {
                double g = std::exp(1.0 - 1.0 / (1.0 - u * u));
                double om = 1.0 - u * u;
                t.z += height * g * (-2.0 * u / (om * om)) / width;
            }
        }
        return t;
    };
    return out;
}

double min_param_gap(const std::vector<double>& params) {
    std::vector<double> p = params;
    std::sort(p.begin(), p.end());
    double gap = 1.0 + p.front() - p.back();
    for (size_t i = 1; i < p.size(); ++i) gap = std::min(gap, p[i] - p[i - 1]);
    return gap;
}

} // namespace

SingularKnot standard_singular_curve(int j) {
    if (j < 1 || j > 3) throw std::invalid_argument("singular curve degree must be 1..3");
    ParametricKnot shadow = flat_trefoil_shadow();
    auto dps = plane_double_points(shadow);
    if (static_cast<int>(dps.size()) != 3)
        throw std::runtime_error("unexpected shadow double point count");
    std::vector<double> all;
    for (auto& [a, b] : dps) {
        all.push_back(a);
        all.push_back(b);
    }
    double width = std::min(0.03, min_param_gap(all) / 3.0);
    // Push off the last 3-j double points (lift first strand up).
    std::vector<std::pair<double, double>> bumps;
    for (int i = j; i < 3; ++i) bumps.emplace_back(dps[i].first, 0.35);
    SingularKnot out;
    out.curve = bumps.empty() ? shadow : add_bumps(shadow, bumps, width);
    out.curve.name = "singular" + std::to_string(j);
    out.double_points.assign(dps.begin(), dps.begin() + j);
    return out;
}

ParametricKnot resolve_singular(const SingularKnot& k, const std::vector<int>& signs,
                                double eps) {
    if (signs.size() != k.double_points.size())
        throw std::invalid_argument("one sign per double point required");
    std::vector<double> all;
    for (auto& [a, b] : k.double_points) {
        all.push_back(a);
        all.push_back(b);
    }
    double width = all.empty() ? 0.03 : std::min(0.03, min_param_gap(all) / 3.0);
    std::vector<std::pair<double, double>> bumps;
    for (size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            throw std::invalid_argument("resolution signs must be +1 or -1");
        bumps.emplace_back(k.double_points[i].first, signs[i] * eps);
    }
    ParametricKnot out = add_bumps(k.curve, bumps, width);
    out.name = k.curve.name + "-resolved";
    return out;
}

} // namespace vassiliev
