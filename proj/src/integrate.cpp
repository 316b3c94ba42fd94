#include "vassiliev/integrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

#include "vassiliev/rng.hpp"

namespace vassiliev {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2 * kPi;

// Relative sign between the combinatorial orientation of a graph (vertex
// cyclic orders) and the standard orientation of its configuration-space
// domain, per internal vertex.  Pinned by the degree-2 anchor
// v2(trefoil) - v2(unknot) = +1.
constexpr int kInternalOrientationSign = -1;

double frac(double s) {
    double f = s - std::floor(s);
    return (f >= 1.0) ? 0.0 : f;
}

int permutation_parity(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// substream runner: fixed 64-stream layout, reduced in stream order, so the
// result depends only on (n, seed) and never on the thread count.

constexpr int kStreams = 64;

struct StreamResult {
    double sum = 0;
    long long count = 0;
};

IntegralEstimate run_streams(long long n, std::uint64_t seed, int threads,
                             const std::function<double(RandomStream&)>& sample_value) {
    if (n <= 0) throw std::invalid_argument("sample count must be positive");
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = std::min<long long>(threads, kStreams);

    std::array<StreamResult, kStreams> results{};
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= kStreams) return;
            long long cnt = n / kStreams + (i < n % kStreams ? 1 : 0);
            RandomStream rs(seed, static_cast<std::uint64_t>(i));
            double sum = 0;
            for (long long j = 0; j < cnt; ++j) sum += sample_value(rs);
            results[i] = {sum, cnt};
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    double total = 0;
    for (const auto& r : results) total += r.sum;
    double mean = total / static_cast<double>(n);
    // batch means over the streams with samples
    double var = 0;
    int batches = 0;
    for (const auto& r : results) {
        if (r.count == 0) continue;
        double d = r.sum / static_cast<double>(r.count) - mean;
        var += d * d;
        ++batches;
    }
    IntegralEstimate est;
    est.value = mean;
    est.std_error = batches > 1 ? std::sqrt(var / (batches * (batches - 1.0))) : 0.0;
    est.n_samples = n;
    est.seed = seed;
    return est;
}

} // namespace

Vec3 gauss_direction(const Vec3& x, const Vec3& y) { return (y - x).normalized(); }

Mat3 propagator(const Vec3& x) {
    double r = x.norm();
    double c = 1.0 / (4 * kPi * r * r * r);
    Mat3 p;
    p[0][0] = p[1][1] = p[2][2] = 0;
    p[0][1] = c * x.z;
    p[1][0] = -c * x.z;
    p[1][2] = c * x.x;
    p[2][1] = -c * x.x;
    p[2][0] = c * x.y;
    p[0][2] = -c * x.y;
    return p;
}

double graph_integrand(const TrivalentGraph& g, const Labelling& lab,
                       const Configuration& c, const ParametricKnot& k) {
    const int nc = g.n_cycle, ni = g.n_internal;
    const int ne = static_cast<int>(g.edges.size());
    if (static_cast<int>(c.knot_params.size()) != nc ||
        static_cast<int>(c.free_points.size()) != ni)
        throw std::invalid_argument("configuration does not match the graph");
    if (static_cast<int>(lab.edge_reversed.size()) != ne)
        throw std::invalid_argument("labelling does not match the graph");
    // knot parameters must sit in strict cyclic order
    for (int i = 2; i < nc; ++i) {
        double a = frac(c.knot_params[i - 1] - c.knot_params[0]);
        double b = frac(c.knot_params[i] - c.knot_params[0]);
        if (!(a < b)) throw std::invalid_argument("knot parameters out of cyclic order");
    }

    std::vector<Vec3> pos(nc + ni), tan(nc);
    for (int v = 0; v < nc; ++v) {
        pos[v] = k.at(frac(c.knot_params[v]));
        tan[v] = k.tangent(frac(c.knot_params[v]));
    }
    for (int i = 0; i < ni; ++i) pos[nc + i] = c.free_points[i];

    // directed endpoints and kernels per edge
    std::vector<std::pair<int, int>> dir(ne);
    std::vector<Mat3> mat(ne);
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = g.edges[e];
        if (lab.edge_reversed[e]) std::swap(a, b);
        dir[e] = {a, b};
        mat[e] = propagator(pos[b] - pos[a]);
    }

    // slots: one per knot vertex (its parameter direction), three coordinate
    // slots per internal vertex.  slot id of knot vertex v is v; coordinate c
    // of internal vertex i sits at nc + 3i + c.
    // Edge ends incident to each internal vertex, in a fixed scan order.
    std::vector<std::vector<std::pair<int, int>>> ends(ni); // (edge, 0=src/1=dst)
    for (int e = 0; e < ne; ++e) {
        if (g.is_internal(dir[e].first)) ends[dir[e].first - nc].push_back({e, 0});
        if (g.is_internal(dir[e].second)) ends[dir[e].second - nc].push_back({e, 1});
    }

    // Sum over all coordinate assignments at the internal vertices of the
    // permutation sign times the product of kernel contractions.  This is the
    // wedge of the edge two-forms (in edge-id order, directed by lab)
    // evaluated on the standard ordered domain basis.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<int> choice(ni, 0);
    std::vector<std::array<int, 2>> coord(ne, {-1, -1}); // coordinate per (edge, end)
    std::vector<int> word(2 * ne);
    double total = 0;
    for (;;) {
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < static_cast<int>(ends[i].size()); ++j) {
                auto [e, side] = ends[i][j];
                coord[e][side] = perms[choice[i]][j];
            }
        for (int e = 0; e < ne; ++e) {
            auto [a, b] = dir[e];
            word[2 * e] = g.is_internal(a) ? nc + 3 * (a - nc) + coord[e][0] : a;
            word[2 * e + 1] = g.is_internal(b) ? nc + 3 * (b - nc) + coord[e][1] : b;
        }
        double term = permutation_parity(word);
        for (int e = 0; e < ne && term != 0; ++e) {
            auto [a, b] = dir[e];
            const Mat3& m = mat[e];
            double f;
            if (!g.is_internal(a) && !g.is_internal(b)) {
                f = 0;
                for (int mu = 0; mu < 3; ++mu)
                    for (int nu = 0; nu < 3; ++nu) f += tan[a][mu] * m[mu][nu] * tan[b][nu];
            } else if (!g.is_internal(a)) {
                f = 0;
                for (int mu = 0; mu < 3; ++mu) f += tan[a][mu] * m[mu][coord[e][1]];
            } else if (!g.is_internal(b)) {
                f = 0;
                for (int nu = 0; nu < 3; ++nu) f += m[coord[e][0]][nu] * tan[b][nu];
            } else {
                f = m[coord[e][0]][coord[e][1]];
            }
            term *= f;
        }
        total += term;
        int i = 0;
        for (; i < ni; ++i) {
            if (++choice[i] < 6) break;
            choice[i] = 0;
        }
        if (i == ni) break;
        if (ni == 0) break;
    }

    // combinatorial orientation: sign of each stored cyclic order against the
    // sorted incident edge ids, plus the fixed per-vertex convention sign
    int osign = 1;
    for (int i = 0; i < ni; ++i) {
        std::array<int, 3> o = g.orders[i];
        std::array<int, 3> s = o;
        std::sort(s.begin(), s.end());
        std::vector<int> p(3);
        for (int j = 0; j < 3; ++j)
            p[j] = static_cast<int>(std::find(s.begin(), s.end(), o[j]) - s.begin());
        osign *= permutation_parity(p) * kInternalOrientationSign;
    }
    return osign * total;
}

namespace {

struct KnotExtent {
    Vec3 centroid;
    double radius; // bounding radius + margin
};

KnotExtent knot_extent(const ParametricKnot& k) {
    const int n = 256;
    Vec3 c{0, 0, 0};
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) {
        pts[i] = k.at(double(i) / n);
        c += pts[i];
    }
    c = c / n;
    double r = 0;
    for (const auto& p : pts) r = std::max(r, (p - c).norm());
    return {c, r + 1.0};
}

Vec3 uniform_sphere(RandomStream& rs) {
    double z = 2 * rs.next_double() - 1;
    double a = kTwoPi * rs.next_double();
    double s = std::sqrt(std::max(0.0, 1 - z * z));
    return {s * std::cos(a), s * std::sin(a), z};
}

// densities of the two mixture components for free points
double density_global(const Vec3& x, const KnotExtent& ext) {
    double r = (x - ext.centroid).norm();
    if (r <= 0) return 0;
    double pr = (2.0 / (kPi * ext.radius)) / (1.0 + (r / ext.radius) * (r / ext.radius));
    return pr / (4 * kPi * r * r);
}

double density_anchor(const Vec3& x, const Vec3& a, double r0) {
    double r = (x - a).norm();
    if (r <= 0 || r > r0) return 0;
    return (1.0 / (2 * std::sqrt(r0 * r))) / (4 * kPi * r * r);
}

// Draw one free point given the already placed anchors; returns its mixture
// density through `q`.
Vec3 sample_free_point(RandomStream& rs, const std::vector<Vec3>& anchors,
                       const KnotExtent& ext, double& q) {
    Vec3 x;
    if (rs.next_double() < 0.5) {
        double u = rs.next_double();
        double r = ext.radius * std::tan(0.5 * kPi * u);
        x = ext.centroid + uniform_sphere(rs) * r;
    } else {
        int idx = static_cast<int>(rs.next_double() * anchors.size());
        idx = std::min<int>(idx, static_cast<int>(anchors.size()) - 1);
        double u = rs.next_double();
        double r = ext.radius * u * u;
        x = anchors[idx] + uniform_sphere(rs) * r;
    }
    double qa = 0;
    for (const auto& a : anchors) qa += density_anchor(x, a, ext.radius);
    q = 0.5 * density_global(x, ext) +
        0.5 * qa / static_cast<double>(anchors.size());
    return x;
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

IntegralEstimate mc_integrate(const TrivalentGraph& g, const ParametricKnot& k,
                              long long n, std::uint64_t seed, int threads) {
    validate(g);
    if (g.n_cycle < 1) throw std::invalid_argument("graph has no knot vertices");
    const Labelling lab = reference_labelling(g);
    const KnotExtent ext = knot_extent(k);
    const int nc = g.n_cycle, ni = g.n_internal;
    const double simplex_weight = 1.0 / factorial(nc - 1);

    auto sample_value = [&, lab, ext](RandomStream& rs) -> double {
        Configuration c;
        c.knot_params.resize(nc);
        c.free_points.resize(ni);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                throw std::runtime_error("sampler stuck near a diagonal");
            c.knot_params[0] = rs.next_double();
            if (nc > 1) {
                std::vector<double> off(nc - 1);
                for (auto& o : off) o = rs.next_double();
                std::sort(off.begin(), off.end());
                for (int i = 1; i < nc; ++i)
                    c.knot_params[i] = frac(c.knot_params[0] + off[i - 1]);
            }
            std::vector<Vec3> anchors;
            std::vector<Vec3> pts;
            for (int v = 0; v < nc; ++v) {
                pts.push_back(k.at(c.knot_params[v]));
                anchors.push_back(pts.back());
            }
            double weight = simplex_weight;
            bool ok = true;
            for (int i = 0; i < ni; ++i) {
                double q = 0;
                Vec3 x = sample_free_point(rs, anchors, ext, q);
                if (!(q > 0)) {
                    ok = false;
                    break;
                }
                c.free_points[i] = x;
                pts.push_back(x);
                anchors.push_back(x);
                weight /= q;
            }
            if (!ok) continue;
            for (size_t i = 0; i < pts.size() && ok; ++i)
                for (size_t j = i + 1; j < pts.size(); ++j)
                    if ((pts[i] - pts[j]).norm() < 1e-9) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            return graph_integrand(g, lab, c, k) * weight;
        }
    };
    return run_streams(n, seed, threads, sample_value);
}

IntegralEstimate linking_integral(const ParametricKnot& a, const ParametricKnot& b,
                                  long long n, std::uint64_t seed, int threads) {
    // coarse disjointness check
    const int grid = 200;
    double mind = 1e300;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            mind = std::min(mind,
                            (a.at(double(i) / grid) - b.at(double(j) / grid)).norm());
    if (mind < 1e-6) throw std::runtime_error("curves are not disjoint");

    auto sample_value = [&](RandomStream& rs) -> double {
        double s = rs.next_double(), t = rs.next_double();
        Vec3 ta = a.tangent(s), tb = b.tangent(t);
        Mat3 p = propagator(b.at(t) - a.at(s));
        double f = 0;
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) f += ta[mu] * p[mu][nu] * tb[nu];
        return f;
    };
    return run_streams(n, seed, threads, sample_value);
}

IntegralEstimate sphere_form_normalization(long long n, std::uint64_t seed) {
    auto sample_value = [](RandomStream& rs) -> double {
        double u = rs.next_double(), v = rs.next_double();
        double th = kPi * u, ph = kTwoPi * v;
        Vec3 x{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        Vec3 du{kPi * std::cos(th) * std::cos(ph), kPi * std::cos(th) * std::sin(ph),
                -kPi * std::sin(th)};
        Vec3 dv{-kTwoPi * std::sin(th) * std::sin(ph),
                kTwoPi * std::sin(th) * std::cos(ph), 0};
        Mat3 p = propagator(x);
        double f = 0;
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) f += du[mu] * p[mu][nu] * dv[nu];
        return f;
    };
    return run_streams(n, seed, 1, sample_value);
}

namespace {

bool has_doubled_propagator(const TrivalentGraph& g) {
    std::multiset<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a > b) std::swap(a, b);
        if (seen.count({a, b})) return true;
        seen.insert({a, b});
    }
    return false;
}

} // namespace

IntegralEstimate invariant_from_weight(const WeightSystem& w, const ParametricKnot& k,
                                       long long n, std::uint64_t seed, int threads,
                                       std::vector<std::string>* warnings) {
    switch (anomaly_case(w)) {
    case AnomalyCase::Vanishes:
        break;
    case AnomalyCase::WritheCorrectionClass:
        if (warnings)
            warnings->push_back(
                "weight system needs a framing (writhe) correction term that this "
                "computation omits; the result is only framing-invariant");
        break;
    case AnomalyCase::OneFormCorrectionClass:
        throw std::domain_error(
            "weight system needs a correction driven by a knot one-form; not supported");
    }

    const int kdeg = w.degree();
    ExtendedWeightSystem ext(w);
    std::set<std::vector<int>> seen;
    std::vector<TrivalentGraph> reps;
    for (const auto& g : enumerate_trivalent_graphs(kdeg, std::min(4, 2 * kdeg - 2))) {
        auto key = encode(canonicalize_unoriented(g));
        if (!seen.insert(key).second) continue;
        reps.push_back(g);
    }

    IntegralEstimate total;
    total.n_samples = 0;
    total.seed = seed;
    double var = 0;
    int idx = 0;
    for (const auto& g : reps) {
        ++idx;
        if (is_unsupported_shape(g)) continue;
        if (has_doubled_propagator(g)) continue; // integrand vanishes identically
        Rational wv = ext.value(g);
        if (wv == 0) continue;
        double coeff = to_double(wv) / static_cast<double>(automorphism_count(g));
        IntegralEstimate part =
            mc_integrate(g, k, n, seed ^ (0x9e3779b97f4a7c15ULL * idx), threads);
        total.value += coeff * part.value;
        var += coeff * coeff * part.std_error * part.std_error;
        total.n_samples += part.n_samples;
    }
    total.std_error = std::sqrt(var);
    return total;
}

IntegralEstimate v2(const ParametricKnot& k, long long n, std::uint64_t seed,
                    int threads) {
    return invariant_from_weight(c2_weight_system(), k, n, seed, threads);
}

IntegralEstimate vassiliev_finite_difference(
    const std::function<IntegralEstimate(const ParametricKnot&)>& invariant,
    const SingularKnot& k) {
    int j = static_cast<int>(k.double_points.size());
    if (j < 1 || j > 3)
        throw std::invalid_argument("finite difference supports 1 to 3 double points");
    IntegralEstimate out;
    double var = 0;
    for (int mask = 0; mask < (1 << j); ++mask) {
        std::vector<int> signs(j);
        int neg = 0;
        for (int i = 0; i < j; ++i) {
            signs[i] = (mask >> i) & 1 ? -1 : 1;
            if (signs[i] < 0) ++neg;
        }
        IntegralEstimate est = invariant(resolve_singular(k, signs));
        double c = (neg % 2 == 0) ? 1.0 : -1.0;
        out.value += c * est.value;
        var += est.std_error * est.std_error;
        out.n_samples += est.n_samples;
        out.seed = est.seed;
    }
    out.std_error = std::sqrt(var);
    return out;
}

} // namespace vassiliev
