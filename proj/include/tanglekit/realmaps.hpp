#pragma once

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>

#include "tanglekit/weighted.hpp"

// From a real rational function to the weighted planar tangle of its moduli
// component (genus zero). The bordered surface is the closed upper half
// plane; the tangle is the preimage of the real projective line under f,
// with marked points at the real critical points, weights by minimum
// preimage counts over sampled regular values, and shading by the sign of
// Im f on each region. All tolerances are explicit; the defaults can be
// scaled with the TANGLEKIT_PRECISION environment variable (decimal digits).

namespace tanglekit {

using cplx = std::complex<double>;

struct RealMapOptions {
    double root_tol = 1e-10;   // max relative residual of Wronskian roots
    double real_tol = 1e-8;    // |Im| threshold for realness
    double trace_tol = 1e-8;   // refinement target for locus points
    double resolution = 0.02;  // marching grid cell size
    int weight_samples = 1024; // regular values sampled for weights

    static RealMapOptions from_env() {
        RealMapOptions o;
        if (const char* p = std::getenv("TANGLEKIT_PRECISION")) {
            int digits = std::atoi(p);
            if (digits >= 4 && digits <= 14) {
                o.root_tol = std::pow(10.0, -digits);
                o.real_tol = std::pow(10.0, -(digits - 2));
                o.trace_tol = std::pow(10.0, -(digits - 2));
            }
        }
        return o;
    }
};

namespace rm {

// ---- dense univariate polynomials over double ---------------------------

inline std::vector<double> trim(std::vector<double> c) {
    double scale = 0;
    for (double x : c) scale = std::max(scale, std::abs(x));
    while (!c.empty() && std::abs(c.back()) <= 1e-14 * std::max(1.0, scale)) c.pop_back();
    return c;
}

inline int degree(const std::vector<double>& c) { return static_cast<int>(c.size()) - 1; }

inline std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

inline std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline std::vector<double> sub(std::vector<double> a, const std::vector<double>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

inline cplx eval(const std::vector<double>& c, cplx z) {
    cplx r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
}

// Backward-error style residual: |P(z)| relative to the evaluation scale.
inline double residual(const std::vector<double>& c, cplx z) {
    double scale = 0, az = std::abs(z), pw = 1;
    for (double ci : c) {
        scale += std::abs(ci) * pw;
        pw *= az;
    }
    return std::abs(eval(c, z)) / std::max(1.0, scale);
}

// Companion-matrix roots with Newton polish.
inline std::vector<cplx> roots(const std::vector<double>& poly, double tol,
                               const char* what = "polynomial") {
    std::vector<double> c = trim(poly);
    int n = degree(c);
    if (n <= 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    Eigen::VectorXcd eig = comp.eigenvalues();
    std::vector<double> dc = derivative(c);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) {
        cplx z(eig(i).real(), eig(i).imag());
        for (int it = 0; it < 60; ++it) {
            cplx fz = eval(c, z);
            cplx dz = eval(dc, z);
            if (std::abs(dz) < 1e-300) break;
            cplx step = fz / dz;
            z -= step;
            if (std::abs(step) < 1e-16 * (1 + std::abs(z))) break;
        }
        if (residual(c, z) > tol)
            throw numeric_error(std::string("root finder did not converge on ") + what +
                                " (residual " + std::to_string(residual(c, z)) + ")");
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

// Chordal metric on the Riemann sphere; infinity is representable.
struct SpherePoint {
    cplx z;
    bool inf = false;
};

inline double chordal(const SpherePoint& a, const SpherePoint& b) {
    auto lift = [](const SpherePoint& p) {
        if (p.inf) return std::array<double, 3>{0, 0, 1};
        double n = std::norm(p.z);
        return std::array<double, 3>{2 * p.z.real() / (1 + n), 2 * p.z.imag() / (1 + n),
                                     (n - 1) / (n + 1)};
    };
    auto la = lift(a), lb = lift(b);
    double s = 0;
    for (int i = 0; i < 3; ++i) s += (la[i] - lb[i]) * (la[i] - lb[i]);
    return std::sqrt(s);
}

// ---- dense bivariate polynomials -----------------------------------------

struct Bivar {
    int nx = 0, ny = 0; // coefficient grid sizes
    std::vector<double> c;
    double& at(int i, int j) { return c[i + j * nx]; }
    double get(int i, int j) const { return (i < nx && j < ny) ? c[i + j * nx] : 0.0; }
    double eval(double x, double y) const {
        double r = 0;
        for (int j = ny - 1; j >= 0; --j) {
            double row = 0;
            for (int i = nx - 1; i >= 0; --i) row = row * x + get(i, j);
            r = r * y + row;
        }
        return r;
    }
};

// Re and Im of P(x + iy) for a real-coefficient polynomial P.
inline std::pair<Bivar, Bivar> complex_parts(const std::vector<double>& p) {
    int d = std::max(0, degree(trim(p)));
    Bivar re{d + 1, d + 1, std::vector<double>((d + 1) * (d + 1), 0.0)};
    Bivar im = re;
    // (x + iy)^k by iterated multiplication.
    std::vector<std::pair<Bivar, Bivar>> pw(d + 1, {re, re});
    pw[0].first.at(0, 0) = 1.0;
    for (int k = 1; k <= d; ++k) {
        const Bivar& pre = pw[k - 1].first;
        const Bivar& pim = pw[k - 1].second;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                double re_ij = pre.get(i, j), im_ij = pim.get(i, j);
                if (re_ij != 0) {
                    if (i + 1 <= d) pw[k].first.at(i + 1, j) += re_ij;  // * x
                    if (j + 1 <= d) pw[k].second.at(i, j + 1) += re_ij; // * iy
                }
                if (im_ij != 0) {
                    if (i + 1 <= d) pw[k].second.at(i + 1, j) += im_ij;
                    if (j + 1 <= d) pw[k].first.at(i, j + 1) -= im_ij;
                }
            }
    }
    std::vector<double> pt = p;
    for (int k = 0; k < static_cast<int>(pt.size()) && k <= d; ++k) {
        if (pt[k] == 0) continue;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                re.at(i, j) += pt[k] * pw[k].first.get(i, j);
                im.at(i, j) += pt[k] * pw[k].second.get(i, j);
            }
    }
    return {re, im};
}

inline Bivar bmul(const Bivar& a, const Bivar& b) {
    Bivar r{a.nx + b.nx - 1, a.ny + b.ny - 1, {}};
    r.c.assign(r.nx * r.ny, 0.0);
    for (int i = 0; i < a.nx; ++i)
        for (int j = 0; j < a.ny; ++j) {
            double v = a.get(i, j);
            if (v == 0) continue;
            for (int k = 0; k < b.nx; ++k)
                for (int l = 0; l < b.ny; ++l) r.at(i + k, j + l) += v * b.get(k, l);
        }
    return r;
}

inline Bivar bsub(Bivar a, const Bivar& b) {
    Bivar r{std::max(a.nx, b.nx), std::max(a.ny, b.ny), {}};
    r.c.assign(r.nx * r.ny, 0.0);
    for (int i = 0; i < r.nx; ++i)
        for (int j = 0; j < r.ny; ++j) r.at(i, j) = a.get(i, j) - b.get(i, j);
    return r;
}

// G(x, y) = Im(p(z) conj(q(z))) has only odd powers of y; H = G / y.
inline Bivar locus_poly(const std::vector<double>& p, const std::vector<double>& q) {
    auto [pre, pim] = complex_parts(p);
    auto [qre, qim] = complex_parts(q);
    Bivar g = bsub(bmul(pim, qre), bmul(pre, qim));
    Bivar h{g.nx, std::max(1, g.ny - 1), {}};
    h.c.assign(h.nx * h.ny, 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j < g.ny; ++j) h.at(i, j - 1) = g.get(i, j);
    return h;
}

} // namespace rm

// ---- public types ---------------------------------------------------------

struct RealRationalMap {
    std::vector<double> p, q; // ascending-power real coefficients

    int degree() const {
        int dp = rm::degree(rm::trim(p)), dq = rm::degree(rm::trim(q));
        return std::max(dp, dq);
    }
};

struct CriticalPoint {
    rm::SpherePoint where;
    rm::SpherePoint value;
    int multiplicity = 1;
    bool real = false; // real or infinite location
};

struct CriticalData {
    std::vector<CriticalPoint> points;
    int total_multiplicity = 0; // always 2d - 2 including infinity
    bool generic = false;
    bool genericity_uncertain = false;
    std::string note;
    double max_residual = 0;
};

struct TracedArc {
    std::vector<cplx> pts; // polyline in the upper half plane
    bool closed = false;
    int end_a = -1, end_b = -1; // indices into the real critical points
};

struct TracedLocus {
    std::vector<TracedArc> arcs; // input coordinates; ends index into crit.points
    CriticalData crit;
};

struct ExtractionDiagnostics {
    CriticalData crit;
    bool weight_sum_mismatch = false;
    std::vector<int> strand_min_over_all, strand_min_over_image;
    std::vector<int> segment_min_over_all, segment_min_over_image;
    std::vector<int> loop_min_over_all, loop_min_over_image;
    int unassigned_preimages = 0;
};

struct ExtractionResult {
    WeightedTangle tangle;
    ExtractionDiagnostics diag;
};

struct StabilityResult {
    bool stable = false;
    bool conclusive = true;
    int resamples = 0;
};

// ---- critical points -------------------------------------------------------

inline CriticalData critical_points(const RealRationalMap& f,
                                    const RealMapOptions& opt = RealMapOptions::from_env()) {
    std::vector<double> p = rm::trim(f.p), q = rm::trim(f.q);
    if (p.empty() && q.empty()) throw numeric_error("critical_points: zero map");
    if (q.empty()) throw numeric_error("critical_points: zero denominator");
    if (p.empty()) throw numeric_error("critical_points: zero numerator");
    int d = std::max(rm::degree(p), rm::degree(q));
    if (d < 1) throw numeric_error("critical_points: map must have degree >= 1");
    // Coprimality within tolerance: no common root.
    for (cplx r : rm::roots(q, 1e-6, "denominator"))
        if (rm::residual(p, r) < 1e-9)
            throw numeric_error("critical_points: numerator and denominator share a root");

    std::vector<double> w = rm::trim(rm::sub(rm::mul(rm::derivative(p), q),
                                             rm::mul(p, rm::derivative(q))));
    if (w.empty()) throw numeric_error("critical_points: degenerate (constant) map");
    int expected = 2 * d - 2;
    int degw = std::min(rm::degree(w), expected);
    int inf_mult = expected - degw;

    CriticalData out;
    std::vector<cplx> rs = rm::roots(w, opt.root_tol, "Wronskian");
    for (cplx r : rs) out.max_residual = std::max(out.max_residual, rm::residual(w, r));

    // Cluster roots into multiplicity groups.
    std::vector<char> used(rs.size(), 0);
    double cluster_eps = std::sqrt(opt.root_tol);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (used[i]) continue;
        CriticalPoint cp;
        cplx acc = rs[i];
        int m = 1;
        used[i] = 1;
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(rs[j] - rs[i]) < cluster_eps * (1 + std::abs(rs[i]))) {
                used[j] = 1;
                acc += rs[j];
                ++m;
            }
        }
        cplx z = acc / static_cast<double>(m);
        cp.multiplicity = m;
        cp.real = std::abs(z.imag()) < opt.real_tol;
        if (cp.real) z = cplx(z.real(), 0.0);
        cp.where = {z, false};
        cplx qz = rm::eval(q, z);
        cplx pz = rm::eval(p, z);
        if (std::abs(qz) < 1e-12 * (1 + std::abs(pz)))
            cp.value = {0.0, true};
        else
            cp.value = {pz / qz, false};
        out.points.push_back(cp);
    }
    if (inf_mult > 0) {
        CriticalPoint cp;
        cp.where = {0.0, true};
        cp.multiplicity = inf_mult;
        cp.real = true; // infinity lies on the real projective line
        int dp = rm::degree(p), dq = rm::degree(q);
        if (dp > dq)
            cp.value = {0.0, true};
        else if (dp < dq)
            cp.value = {0.0, false};
        else
            cp.value = {p.back() / q.back(), false};
        out.points.push_back(cp);
    }
    for (const CriticalPoint& cp : out.points) out.total_multiplicity += cp.multiplicity;

    out.generic = true;
    for (const CriticalPoint& cp : out.points)
        if (cp.multiplicity != 1) out.generic = false;
    for (std::size_t i = 0; i < out.points.size() && out.generic; ++i)
        for (std::size_t j = i + 1; j < out.points.size(); ++j)
            if (rm::chordal(out.points[i].value, out.points[j].value) < opt.real_tol) {
                out.generic = false;
                out.note = "critical values collide within tolerance";
            }
    // Near-degenerate: simple roots closer than the cluster scale but farther
    // than machine noise leave the multiplicity ambiguous.
    for (std::size_t i = 0; i < out.points.size(); ++i)
        for (std::size_t j = i + 1; j < out.points.size(); ++j) {
            double dist = std::abs(out.points[i].where.z - out.points[j].where.z);
            if (!out.points[i].where.inf && !out.points[j].where.inf &&
                dist < 10 * cluster_eps * (1 + std::abs(out.points[i].where.z))) {
                out.genericity_uncertain = true;
                if (out.note.empty()) out.note = "critical points nearly collide";
            }
        }
    if (!out.generic && out.note.empty()) out.note = "critical points are not all simple";
    return out;
}

namespace rm {

// Single marching-squares chart over [xlo, xhi] x [0, yhi]. Crossing points
// live on grid edges, refined along the edge to |H| < tol; cells must carry
// at most two crossings away from the axis.
struct MarchOut {
    std::vector<TracedArc> arcs; // endpoints on the axis carry y == 0
    bool edge_exit = false;      // locus reached the window frame
};

inline MarchOut march(const Bivar& H, double xlo, double xhi, double yhi, double cell,
                      double tol) {
    MarchOut out;
    int nx = std::max(4, static_cast<int>(std::ceil((xhi - xlo) / cell)) + 1);
    int ny = std::max(4, static_cast<int>(std::ceil(yhi / cell)) + 1);
    if (static_cast<long long>(nx) * ny > 6'000'000)
        throw numeric_error("trace_locus: grid too large; increase the resolution parameter");
    auto X = [&](int i) { return xlo + cell * i; };
    auto Y = [&](int j) { return cell * j; };
    std::vector<double> val(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) val[i + static_cast<std::size_t>(j) * nx] = H.eval(X(i), Y(j));
    auto v = [&](int i, int j) { return val[i + static_cast<std::size_t>(j) * nx]; };

    // Refine a sign change on a segment to |H| small via bisection.
    auto refine = [&](double ax, double ay, double bx, double by) {
        double fa = H.eval(ax, ay);
        for (int it = 0; it < 80; ++it) {
            double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
            double fm = H.eval(mx, my);
            if (std::abs(fm) < tol || (std::abs(ax - bx) < 1e-15 && std::abs(ay - by) < 1e-15)) {
                return cplx(mx, my);
            }
            if ((fa < 0) == (fm < 0)) {
                ax = mx;
                ay = my;
                fa = fm;
            } else {
                bx = mx;
                by = my;
            }
        }
        return cplx(0.5 * (ax + bx), 0.5 * (ay + by));
    };

    // Edge ids: horizontal edge (i, j) between nodes (i,j)-(i+1,j); vertical
    // edge between (i,j)-(i,j+1), offset by a block.
    auto hedge = [&](int i, int j) { return i + static_cast<long long>(j) * nx; };
    auto vedge = [&](int i, int j) {
        return static_cast<long long>(nx) * ny + i + static_cast<long long>(j) * nx;
    };
    std::map<long long, cplx> cross;
    std::map<long long, std::vector<int>> incident; // edge -> segment ids
    struct Seg {
        long long e1, e2;
    };
    std::vector<Seg> segs;

    auto edge_point = [&](long long id, bool horizontal, int i, int j) {
        auto it = cross.find(id);
        if (it != cross.end()) return it->second;
        cplx pt = horizontal ? refine(X(i), Y(j), X(i + 1), Y(j))
                             : refine(X(i), Y(j), X(i), Y(j + 1));
        cross[id] = pt;
        return pt;
    };

    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            std::vector<long long> hits;
            auto sign_change = [&](double a, double b) { return (a < 0) != (b < 0); };
            if (sign_change(v(i, j), v(i + 1, j))) {
                edge_point(hedge(i, j), true, i, j);
                hits.push_back(hedge(i, j));
            }
            if (sign_change(v(i, j + 1), v(i + 1, j + 1))) {
                edge_point(hedge(i, j + 1), true, i, j + 1);
                hits.push_back(hedge(i, j + 1));
            }
            if (sign_change(v(i, j), v(i, j + 1))) {
                edge_point(vedge(i, j), false, i, j);
                hits.push_back(vedge(i, j));
            }
            if (sign_change(v(i + 1, j), v(i + 1, j + 1))) {
                edge_point(vedge(i + 1, j), false, i + 1, j);
                hits.push_back(vedge(i + 1, j));
            }
            if (hits.empty()) continue;
            if (hits.size() == 4) {
                // Saddle cell: resolve by the center sign.
                double c = H.eval(X(i) + cell / 2, Y(j) + cell / 2);
                bool corner = v(i, j) < 0;
                // Pair edges so regions of equal sign stay connected.
                if ((c < 0) == corner) {
                    segs.push_back({hedge(i, j), vedge(i + 1, j)});
                    segs.push_back({hedge(i, j + 1), vedge(i, j)});
                } else {
                    segs.push_back({hedge(i, j), vedge(i, j)});
                    segs.push_back({hedge(i, j + 1), vedge(i + 1, j)});
                }
                incident[segs[segs.size() - 2].e1].push_back(static_cast<int>(segs.size()) - 2);
                incident[segs[segs.size() - 2].e2].push_back(static_cast<int>(segs.size()) - 2);
                incident[segs.back().e1].push_back(static_cast<int>(segs.size()) - 1);
                incident[segs.back().e2].push_back(static_cast<int>(segs.size()) - 1);
                continue;
            }
            if (hits.size() != 2)
                throw numeric_error(
                    "trace_locus: ambiguous cell; rerun with a finer resolution");
            segs.push_back({hits[0], hits[1]});
            incident[hits[0]].push_back(static_cast<int>(segs.size()) - 1);
            incident[hits[1]].push_back(static_cast<int>(segs.size()) - 1);
        }

    // Which crossing points terminate arcs: the axis (y = 0) or the frame.
    auto on_axis = [&](long long e) { return cross[e].imag() == 0.0; };
    auto on_frame = [&](long long e) {
        cplx p = cross[e];
        return p.real() <= xlo + 1e-12 || p.real() >= xhi - 1e-12 || p.imag() >= yhi - 1e-12;
    };
    for (auto& [e, inc] : incident)
        if (on_frame(e)) out.edge_exit = true;
    if (out.edge_exit) return out;
    for (auto& [e, inc] : incident) {
        int want = on_axis(e) ? 1 : 2;
        if (static_cast<int>(inc.size()) != want)
            throw numeric_error("trace_locus: dangling locus point; rerun with a finer "
                                "resolution");
    }

    // Chain segments into arcs.
    std::vector<char> used(segs.size(), 0);
    auto walk = [&](int s0, long long from) {
        TracedArc arc;
        long long e = from;
        int s = s0;
        arc.pts.push_back(cross[e]);
        while (true) {
            used[s] = 1;
            e = segs[s].e1 == e ? segs[s].e2 : segs[s].e1;
            arc.pts.push_back(cross[e]);
            if (on_axis(e)) break;
            int next = -1;
            for (int cand : incident[e])
                if (!used[cand]) next = cand;
            if (next == -1) break; // closed or finished
            s = next;
        }
        return arc;
    };
    // Open arcs first: start from axis points.
    for (auto& [e, inc] : incident) {
        if (!on_axis(e)) continue;
        for (int s : inc)
            if (!used[s]) {
                TracedArc arc = walk(s, e);
                arc.closed = false;
                out.arcs.push_back(std::move(arc));
            }
    }
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (used[s]) continue;
        TracedArc arc = walk(static_cast<int>(s), segs[s].e1);
        arc.closed = true;
        out.arcs.push_back(std::move(arc));
    }
    return out;
}

// Real Moebius change of chart phi(zeta) = x0 - rho/zeta, used to move the
// point at infinity to a regular real point before tracing. It preserves the
// upper half plane and the orientation of the real projective line.
struct Chart {
    bool transformed = false;
    double x0 = 0, rho = 1;
    cplx to_z(cplx zeta) const { return transformed ? x0 - rho / zeta : zeta; }
    cplx from_z(cplx z) const { return transformed ? rho / (x0 - z) : z; }
};

namespace rm {

// Coefficients of f(phi(zeta)) as a rational function of zeta.
inline std::pair<std::vector<double>, std::vector<double>>
transform_map(const std::vector<double>& p, const std::vector<double>& q, const Chart& ch) {
    int d = std::max(degree(trim(p)), degree(trim(q)));
    auto lift = [&](const std::vector<double>& c) {
        // sum_k c_k (x0 zeta - rho)^k zeta^(d-k)
        std::vector<double> acc;
        std::vector<double> base{-ch.rho, ch.x0};
        std::vector<double> pw{1.0};
        for (int k = 0; k <= d; ++k) {
            if (k < static_cast<int>(c.size()) && c[k] != 0) {
                std::vector<double> term = pw;
                term.insert(term.begin(), d - k, 0.0); // * zeta^(d-k)
                if (acc.size() < term.size()) acc.resize(term.size(), 0.0);
                for (std::size_t i = 0; i < term.size(); ++i) acc[i] += c[k] * term[i];
            }
            pw = mul(pw, base);
        }
        return acc;
    };
    return {lift(p), lift(q)};
}

} // namespace rm

namespace detail_rm {

using namespace rm;

struct WorkingLocus {
    Chart chart;
    std::vector<double> p, q;        // map in the working chart
    std::vector<double> w;           // its Wronskian
    CriticalData crit;               // of the original map
    std::vector<double> real_zeta;   // working coords of real critical points, ascending
    std::vector<int> real_index;     // -> index into crit.points
    std::vector<TracedArc> arcs;     // working chart; ends tagged into real_zeta order
    double resolution = 0;
};

// Critical data plus a chart in which every critical point is finite.
inline WorkingLocus prepare(const RealRationalMap& f, const RealMapOptions& opt) {
    WorkingLocus wl;
    wl.crit = critical_points(f, opt);
    if (!wl.crit.generic)
        throw numeric_error("trace_locus: map is not generic (" + wl.crit.note + ")");
    bool inf_critical = false;
    double extent = 0;
    for (const CriticalPoint& cp : wl.crit.points) {
        if (cp.where.inf)
            inf_critical = true;
        else
            extent = std::max(extent, std::abs(cp.where.z));
    }
    wl.p = trim(f.p);
    wl.q = trim(f.q);
    if (inf_critical) {
        // Deterministic regular real base point beyond the critical cluster.
        double M = extent + 1.0;
        for (double cand : {2 * M, -2 * M, 3 * M + 1, -(3 * M + 1), 5 * M + 2}) {
            bool clear = true;
            for (const CriticalPoint& cp : wl.crit.points)
                if (!cp.where.inf && std::abs(cand - cp.where.z.real()) < 0.5 &&
                    std::abs(cp.where.z.imag()) < 0.5)
                    clear = false;
            if (clear) {
                wl.chart.transformed = true;
                wl.chart.x0 = cand;
                wl.chart.rho = std::max(1.0, M);
                break;
            }
        }
        if (!wl.chart.transformed)
            throw numeric_error("trace_locus: no usable chart base point");
        std::tie(wl.p, wl.q) = transform_map(wl.p, wl.q, wl.chart);
        wl.p = trim(wl.p);
        wl.q = trim(wl.q);
    }
    wl.w = trim(sub(mul(derivative(wl.p), wl.q), mul(wl.p, derivative(wl.q))));

    for (std::size_t i = 0; i < wl.crit.points.size(); ++i) {
        const CriticalPoint& cp = wl.crit.points[i];
        if (!cp.real) continue;
        double zeta = cp.where.inf ? wl.chart.from_z(0).real() // placeholder, fixed below
                                   : wl.chart.from_z(cp.where.z).real();
        if (cp.where.inf) zeta = 0.0; // phi(0) = infinity
        wl.real_zeta.push_back(zeta);
        wl.real_index.push_back(static_cast<int>(i));
    }
    std::vector<int> order(wl.real_zeta.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return wl.real_zeta[a] < wl.real_zeta[b]; });
    std::vector<double> rz;
    std::vector<int> ri;
    for (int i : order) {
        rz.push_back(wl.real_zeta[i]);
        ri.push_back(wl.real_index[i]);
    }
    wl.real_zeta = rz;
    wl.real_index = ri;
    return wl;
}

inline void trace_into(WorkingLocus& wl, double resolution, double tol) {
    wl.resolution = resolution;
    Bivar H = locus_poly(wl.p, wl.q);
    double R = 2.0;
    for (double c : wl.real_zeta) R = std::max(R, std::abs(c) + 2.0);
    for (const CriticalPoint& cp : wl.crit.points)
        if (!cp.where.inf && !cp.real && !wl.chart.transformed)
            R = std::max(R, std::abs(cp.where.z) + 2.0);
    // A deterministic jitter keeps grid nodes off the zero set.
    double jit = 0.31830988618 * resolution;
    MarchOut mo;
    for (int attempt = 0; attempt < 7; ++attempt) {
        mo = march(H, -R - jit, R + jit, R, resolution, tol);
        if (!mo.edge_exit) break;
        R *= 1.7;
        if (attempt == 6)
            throw numeric_error("trace_locus: locus keeps reaching the window frame");
    }
    // Snap open-arc endpoints to real critical points.
    for (TracedArc& arc : mo.arcs) {
        if (arc.closed) continue;
        for (int side = 0; side < 2; ++side) {
            cplx end = side == 0 ? arc.pts.front() : arc.pts.back();
            int best = -1;
            double bestd = 8 * resolution;
            for (std::size_t i = 0; i < wl.real_zeta.size(); ++i) {
                double dd = std::abs(end - cplx(wl.real_zeta[i], 0));
                if (dd < bestd) {
                    bestd = dd;
                    best = static_cast<int>(i);
                }
            }
            if (best == -1)
                throw numeric_error("trace_locus: arc end does not meet a real critical "
                                    "point; rerun with a finer resolution");
            (side == 0 ? arc.end_a : arc.end_b) = best;
        }
    }
    // Exactly one interior arc per real critical point.
    std::vector<int> ends(wl.real_zeta.size(), 0);
    for (const TracedArc& arc : mo.arcs)
        if (!arc.closed) {
            ++ends[arc.end_a];
            ++ends[arc.end_b];
        }
    for (int e : ends)
        if (e != 1)
            throw numeric_error("trace_locus: a real critical point meets " +
                                std::to_string(e) + " interior arcs; rerun with a finer "
                                                    "resolution");
    wl.arcs = std::move(mo.arcs);
}

// Vertical even-odd test: crossings of the downward ray from pt with a
// polyline, returned as crossing heights.
inline std::vector<double> ray_down_hits(const std::vector<cplx>& poly, cplx pt) {
    std::vector<double> hits;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        double ax = poly[i].real(), bx = poly[i + 1].real();
        if ((ax - pt.real()) * (bx - pt.real()) >= 0) continue;
        double t = (pt.real() - ax) / (bx - ax);
        double y = poly[i].imag() + t * (poly[i + 1].imag() - poly[i].imag());
        if (y < pt.imag()) hits.push_back(y);
    }
    return hits;
}

inline bool inside_loop(const std::vector<cplx>& poly, cplx pt) {
    return ray_down_hits(poly, pt).size() % 2 == 1;
}

// A point just inside a closed polyline, found near its leftmost vertex.
inline cplx interior_point(const std::vector<cplx>& poly, double resolution) {
    std::size_t lm = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (poly[i].real() < poly[lm].real()) lm = i;
    for (double step : {0.45, 0.2, 0.08, 0.02}) {
        cplx cand = poly[lm] + cplx(step * resolution, 0);
        if (inside_loop(poly, cand)) return cand;
    }
    throw numeric_error("extract_tangle: cannot find a loop interior point; rerun with a "
                        "finer resolution");
}

} // namespace detail_rm

// Polyline approximation of the interior part of the preimage of the real
// projective line, reported in the input coordinates.
inline TracedLocus trace_locus(const RealRationalMap& f, double resolution = -1,
                               double tol = -1,
                               const RealMapOptions& base = RealMapOptions::from_env()) {
    RealMapOptions opt = base;
    if (resolution > 0) opt.resolution = resolution;
    if (tol > 0) opt.trace_tol = tol;
    detail_rm::WorkingLocus wl = detail_rm::prepare(f, opt);
    detail_rm::trace_into(wl, opt.resolution, opt.trace_tol);
    TracedLocus out;
    for (const TracedArc& arc : wl.arcs) {
        TracedArc a;
        a.closed = arc.closed;
        a.end_a = arc.closed ? -1 : wl.real_index[arc.end_a];
        a.end_b = arc.closed ? -1 : wl.real_index[arc.end_b];
        for (cplx z : arc.pts) a.pts.push_back(wl.chart.to_z(z));
        out.arcs.push_back(std::move(a));
    }
    out.crit = wl.crit;
    return out;
}

// The weighted tangle labeling the connected component of f in the
// genus-zero moduli space: marked points at the real critical points in
// cyclic order from the one with smallest critical value, strands and loops
// from the traced locus, shading by the sign of Im f, weights by minimum
// preimage counts over sampled regular values (both the min-over-all and the
// min-over-image readings are reported).
inline ExtractionResult extract_tangle(const RealRationalMap& f, double resolution = -1,
                                       double tol = -1,
                                       const RealMapOptions& base = RealMapOptions::from_env()) {
    using namespace detail_rm;
    RealMapOptions opt = base;
    if (resolution > 0) opt.resolution = resolution;
    if (tol > 0) opt.trace_tol = tol;
    WorkingLocus wl = prepare(f, opt);
    trace_into(wl, opt.resolution, opt.trace_tol);

    ExtractionResult out;
    out.diag.crit = wl.crit;
    int m = static_cast<int>(wl.real_zeta.size());
    if (m % 2 != 0)
        throw tk_error("extract_tangle: odd number of real critical points (internal "
                       "consistency)");
    int d = f.degree();

    // Base point: the real critical point with the smallest critical value,
    // ties by smallest critical point (finite before infinite, by value).
    int base_pos = 0;
    auto key = [&](int pos) {
        const CriticalPoint& cp = wl.crit.points[wl.real_index[pos]];
        double v = cp.value.inf ? std::numeric_limits<double>::infinity() : cp.value.z.real();
        double w = cp.where.inf ? std::numeric_limits<double>::infinity() : cp.where.z.real();
        return std::pair<double, double>(v, w);
    };
    for (int i = 1; i < m; ++i)
        if (key(i) < key(base_pos)) base_pos = i;

    // Tangle point t sits at sorted position (base_pos + t) mod m; tangle
    // boundary segment t covers the interval starting there. The interval
    // m-1 in sorted order is the wrap through the chart's infinity.
    auto pos_of_point = [&](int t) { return m > 0 ? (base_pos + t) % m : 0; };
    std::vector<int> point_of_pos(std::max(1, m), 0);
    for (int t = 0; t < m; ++t) point_of_pos[pos_of_point(t)] = t;

    // Strands from the open arcs.
    Tangle tangle;
    tangle.outer = {m / 2, m > 0 ? 0 : -1};
    std::vector<int> strand_arc; // strand index -> arc index
    {
        std::vector<std::pair<Strand, int>> tagged;
        for (std::size_t ai = 0; ai < wl.arcs.size(); ++ai) {
            const TracedArc& arc = wl.arcs[ai];
            if (arc.closed) continue;
            tagged.push_back({Strand(Endpoint{-1, point_of_pos[arc.end_a]},
                                     Endpoint{-1, point_of_pos[arc.end_b]}),
                              static_cast<int>(ai)});
        }
        std::sort(tagged.begin(), tagged.end());
        for (auto& [st, ai] : tagged) {
            tangle.strands.push_back(st);
            strand_arc.push_back(ai);
        }
    }

    // Interval shading from the sign of the Wronskian in the working chart:
    // just above the axis, sign(Im f) = sign(H) and H(x, 0) = W(x).
    double span = 1.0;
    for (double c : wl.real_zeta) span = std::max(span, std::abs(c));
    auto interval_white = [&](int pos) {
        double x;
        if (m == 0 || pos == m - 1) {
            double right = rm::eval(wl.w, cplx(span + 3, 0)).real();
            double left = rm::eval(wl.w, cplx(-span - 3, 0)).real();
            if ((right > 0) != (left > 0)) ++out.diag.unassigned_preimages; // inconsistent wrap
            x = span + 3;
        } else {
            x = 0.5 * (wl.real_zeta[pos] + wl.real_zeta[pos + 1]);
        }
        return rm::eval(wl.w, cplx(x, 0)).real() > 0;
    };
    tangle.shading =
        interval_white(pos_of_point(m > 0 ? (m - 1) % m : 0)) ? Color::white : Color::black;
    if (m == 0) tangle.shading = interval_white(0) ? Color::white : Color::black;

    // Loop forest by geometric containment.
    struct LoopGeo {
        int arc = -1;
        cplx rep;
        int depth = 0, parent = -1;
    };
    std::vector<LoopGeo> loops;
    for (std::size_t ai = 0; ai < wl.arcs.size(); ++ai)
        if (wl.arcs[ai].closed)
            loops.push_back({static_cast<int>(ai),
                             interior_point(wl.arcs[ai].pts, opt.resolution), 0, -1});
    for (std::size_t i = 0; i < loops.size(); ++i) {
        for (std::size_t j = 0; j < loops.size(); ++j) {
            if (i == j) continue;
            if (inside_loop(wl.arcs[loops[j].arc].pts, loops[i].rep)) ++loops[i].depth;
        }
    }
    for (std::size_t i = 0; i < loops.size(); ++i) {
        int best = -1;
        for (std::size_t j = 0; j < loops.size(); ++j) {
            if (i == j || loops[j].depth != loops[i].depth - 1) continue;
            if (!inside_loop(wl.arcs[loops[j].arc].pts, loops[i].rep)) continue;
            best = static_cast<int>(j);
        }
        loops[i].parent = best;
    }

    // Region of each root loop: walk up from the axis, flipping across every
    // strand arc the vertical ray crosses.
    Tangle bare = tangle; // strands only
    Scene scene_bare = analyze(bare);
    auto face_of_tangle_arc = [&](int arc_idx) {
        return scene_bare.face_of_corner(0, arc_idx);
    };
    std::vector<std::array<int, 2>> strand_faces(tangle.strands.size());
    for (std::size_t si = 0; si < tangle.strands.size(); ++si) {
        int da = scene_bare.dart_of(0, tangle.strands[si].a.point);
        int db = scene_bare.dart_of(0, tangle.strands[si].b.point);
        strand_faces[si] = {scene_bare.face_of_dart[da], scene_bare.face_of_dart[db]};
    }
    auto face_of_interior_point = [&](cplx pt) {
        cplx probe = pt + cplx(opt.resolution * 1.7e-4, 0);
        // Landing interval on the axis.
        int pos = 0;
        while (pos < m && wl.real_zeta[pos] < probe.real()) ++pos;
        int interval = (pos == 0 || pos == m) ? (m > 0 ? m - 1 : 0) : pos - 1;
        int corner = m > 0 ? (interval - base_pos + m) % m : 0;
        int face = face_of_tangle_arc(corner);
        // Crossings with strand arcs, in ascending height.
        std::vector<std::pair<double, int>> crossings;
        for (std::size_t si = 0; si < tangle.strands.size(); ++si)
            for (double y : ray_down_hits(wl.arcs[strand_arc[si]].pts, probe))
                crossings.push_back({y, static_cast<int>(si)});
        std::sort(crossings.begin(), crossings.end());
        for (auto [y, si] : crossings)
            face = strand_faces[si][0] == face ? strand_faces[si][1] : strand_faces[si][0];
        return face;
    };

    std::vector<int> loop_flat(loops.size(), -1); // geo index -> flat preorder
    {
        // Roots grouped by region id, children in discovery order; the final
        // canonicalization re-sorts everything.
        std::vector<std::vector<int>> children(loops.size());
        std::vector<int> roots;
        for (std::size_t i = 0; i < loops.size(); ++i) {
            if (loops[i].parent == -1)
                roots.push_back(static_cast<int>(i));
            else
                children[loops[i].parent].push_back(static_cast<int>(i));
        }
        int pre = 0;
        auto build = [&](auto&& self, int gi) -> OvalNode {
            OvalNode n;
            loop_flat[gi] = pre++;
            for (int ch : children[gi]) n.children.push_back(self(self, ch));
            return n;
        };
        for (int r : roots) {
            int face = face_of_interior_point(loops[r].rep);
            int region = scene_bare.rnode_id[scene_bare.rnode_of_face[face]];
            OvalRoot root;
            root.region = region;
            root.node = build(build, r);
            tangle.loops.push_back(std::move(root));
        }
    }

    // Geometric color cross-check against the combinatorial coloring.
    Scene scene_full = analyze(tangle);
    for (int pos = 0; pos < std::max(1, m); ++pos) {
        int corner = m > 0 ? (pos - base_pos + m) % m : 0;
        Color combinatorial =
            scene_full.face_color[scene_full.face_of_corner(0, corner)];
        Color sampled = interval_white(pos) ? Color::white : Color::black;
        if (combinatorial != sampled) {
            out.diag.crit.genericity_uncertain = true;
            out.diag.crit.note = "region shading sample disagrees with the checkerboard";
        }
    }

    // ---- weights by preimage counting --------------------------------
    int nsegs = std::max(1, m);
    std::vector<int> seg_all(nsegs, INT32_MAX), seg_img(nsegs, INT32_MAX);
    std::vector<int> str_all(tangle.strands.size(), INT32_MAX),
        str_img(tangle.strands.size(), INT32_MAX);
    std::vector<int> loop_all(loops.size(), INT32_MAX), loop_img(loops.size(), INT32_MAX);

    auto near_critical_value = [&](double x) {
        rm::SpherePoint sx{cplx(x, 0), false};
        for (const CriticalPoint& cp : wl.crit.points)
            if (rm::chordal(sx, cp.value) < 1e-3) return true;
        return false;
    };
    std::vector<double> wq = wl.q, wp = wl.p;
    for (int s = 0; s < opt.weight_samples; ++s) {
        double u = (s + 0.5) / opt.weight_samples;
        double x = std::tan(3.14159265358979323846 * (u - 0.5));
        if (near_critical_value(x)) continue;
        // Fiber p - x q = 0, solved in the better-conditioned normalization.
        std::vector<double> fiber;
        if (std::abs(x) <= 1.0) {
            fiber = rm::sub(wp, [&] {
                std::vector<double> t = wq;
                for (double& c : t) c *= x;
                return t;
            }());
        } else {
            fiber = rm::sub(wq, [&] {
                std::vector<double> t = wp;
                for (double& c : t) c *= 1.0 / x;
                return t;
            }());
            for (double& c : fiber) c = -c;
        }
        fiber = rm::trim(fiber);
        std::vector<cplx> roots;
        try {
            roots = rm::roots(fiber, 1e-6, "fiber");
        } catch (const numeric_error&) {
            ++out.diag.unassigned_preimages;
            continue;
        }
        std::vector<int> seg_n(nsegs, 0), str_n(tangle.strands.size(), 0),
            loop_n(loops.size(), 0);
        if (rm::degree(fiber) < d && m >= 0) {
            // A preimage at the chart's infinity lies on the wrap segment.
            int interval = std::max(0, m - 1);
            int k = m > 0 ? (interval - base_pos + m) % m : 0;
            ++seg_n[k];
        }
        for (cplx z : roots) {
            double cls = 1e-6 * (1 + std::abs(z));
            if (std::abs(z.imag()) <= cls) {
                int pos = 0;
                while (pos < m && wl.real_zeta[pos] < z.real()) ++pos;
                int interval = (pos == 0 || pos == m) ? std::max(0, m - 1) : pos - 1;
                int k = m > 0 ? (interval - base_pos + m) % m : 0;
                ++seg_n[k];
            } else if (z.imag() > 0) {
                // Nearest traced arc.
                double bestd = 1e300;
                int best = -1;
                for (std::size_t ai = 0; ai < wl.arcs.size(); ++ai) {
                    const auto& pts = wl.arcs[ai].pts;
                    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                        cplx a = pts[i], b = pts[i + 1];
                        cplx ab = b - a;
                        double t = std::clamp(
                            ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) /
                                std::max(1e-300, std::norm(ab)),
                            0.0, 1.0);
                        double dd = std::abs(z - (a + t * ab));
                        if (dd < bestd) {
                            bestd = dd;
                            best = static_cast<int>(ai);
                        }
                    }
                }
                if (best == -1 || bestd > std::max(8 * opt.resolution, 0.05)) {
                    ++out.diag.unassigned_preimages;
                    continue;
                }
                if (wl.arcs[best].closed) {
                    for (std::size_t li = 0; li < loops.size(); ++li)
                        if (loops[li].arc == best) ++loop_n[li];
                } else {
                    for (std::size_t si = 0; si < strand_arc.size(); ++si)
                        if (strand_arc[si] == best) ++str_n[si];
                }
            }
        }
        for (int i = 0; i < nsegs; ++i) {
            seg_all[i] = std::min(seg_all[i], seg_n[i]);
            if (seg_n[i] > 0) seg_img[i] = std::min(seg_img[i], seg_n[i]);
        }
        for (std::size_t i = 0; i < str_n.size(); ++i) {
            str_all[i] = std::min(str_all[i], str_n[i]);
            if (str_n[i] > 0) str_img[i] = std::min(str_img[i], str_n[i]);
        }
        for (std::size_t i = 0; i < loop_n.size(); ++i) {
            loop_all[i] = std::min(loop_all[i], loop_n[i]);
            if (loop_n[i] > 0) loop_img[i] = std::min(loop_img[i], loop_n[i]);
        }
    }
    auto finish = [](std::vector<int>& v) {
        for (int& x : v)
            if (x == INT32_MAX) x = 0;
    };
    finish(seg_all);
    finish(seg_img);
    finish(str_all);
    finish(str_img);
    finish(loop_all);
    finish(loop_img);

    WeightedTangle raw;
    raw.tangle = tangle;
    raw.strand_weights = str_all;
    raw.segment_weights.resize(1);
    raw.segment_weights[0] = seg_all;
    raw.loop_weights.resize(loops.size());
    std::vector<int> loop_img_flat(loops.size(), 0);
    for (std::size_t gi = 0; gi < loops.size(); ++gi) {
        raw.loop_weights[loop_flat[gi]] = loop_all[gi];
        loop_img_flat[loop_flat[gi]] = loop_img[gi];
    }

    auto [canon, rl] = detail::canonicalize_weighted_unchecked(raw);
    out.tangle = std::move(canon);
    out.diag.strand_min_over_all.resize(str_all.size());
    out.diag.strand_min_over_image.resize(str_all.size());
    for (std::size_t i = 0; i < str_all.size(); ++i) {
        out.diag.strand_min_over_all[rl.strand_new[i]] = str_all[i];
        out.diag.strand_min_over_image[rl.strand_new[i]] = str_img[i];
    }
    out.diag.segment_min_over_all.resize(nsegs);
    out.diag.segment_min_over_image.resize(nsegs);
    for (int a = 0; a < nsegs; ++a) {
        int na = rl.point_new[0].empty() ? a : rl.point_new[0][a];
        out.diag.segment_min_over_all[na] = seg_all[a];
        out.diag.segment_min_over_image[na] = seg_img[a];
    }
    out.diag.loop_min_over_all.resize(loops.size());
    out.diag.loop_min_over_image.resize(loops.size());
    for (std::size_t l = 0; l < loops.size(); ++l) {
        out.diag.loop_min_over_all[rl.loop_new[l]] = raw.loop_weights[l];
        out.diag.loop_min_over_image[rl.loop_new[l]] = loop_img_flat[l];
    }
    out.diag.weight_sum_mismatch = total_weight(out.tangle) != d;
    return out;
}

// Topological degree of f restricted to the real projective line: signed
// preimage count over a regular value.
inline int boundary_evaluation(const RealRationalMap& f,
                               const RealMapOptions& opt = RealMapOptions::from_env()) {
    std::vector<double> p = rm::trim(f.p), q = rm::trim(f.q);
    int d = std::max(rm::degree(p), rm::degree(q));
    if (d < 1) throw numeric_error("boundary_evaluation: map must have degree >= 1");
    std::vector<double> w = rm::trim(
        rm::sub(rm::mul(rm::derivative(p), q), rm::mul(p, rm::derivative(q))));
    for (double y0 : {0.37, -1.13, 2.29, -3.71, 5.23, -7.67, 11.31, -13.07}) {
        std::vector<double> fiber = p;
        if (fiber.size() < q.size()) fiber.resize(q.size(), 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) fiber[i] -= y0 * q[i];
        fiber = rm::trim(fiber);
        if (rm::degree(fiber) < d) continue; // y0 is the value at infinity
        std::vector<cplx> roots;
        try {
            roots = rm::roots(fiber, 1e-8, "fiber");
        } catch (const numeric_error&) {
            continue;
        }
        bool regular = true;
        int deg = 0;
        for (cplx z : roots) {
            if (std::abs(z.imag()) > 1e-7 * (1 + std::abs(z))) continue;
            double wz = rm::eval(w, cplx(z.real(), 0)).real();
            if (std::abs(wz) < 1e-9 * (1 + std::abs(z.real()))) {
                regular = false;
                break;
            }
            deg += wz > 0 ? 1 : -1;
        }
        if (regular) return deg;
    }
    throw numeric_error("boundary_evaluation: no regular sample value found");
}

// Perturbs every coefficient by at most eps and re-extracts; true when all
// generic perturbations stay in the same isotopy class.
inline StabilityResult chamber_stability(const RealRationalMap& f, double eps, int trials,
                                         std::uint64_t seed = 0,
                                         const RealMapOptions& opt = RealMapOptions::from_env()) {
    StabilityResult out;
    out.stable = true;
    ExtractionResult base = extract_tangle(f, -1, -1, opt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-eps, eps);
    int done = 0;
    int budget = std::max(10 * trials, trials + 20);
    while (done < trials && budget > 0) {
        --budget;
        RealRationalMap g = f;
        for (double& c : g.p) c += u(rng);
        for (double& c : g.q) c += u(rng);
        ExtractionResult got;
        try {
            got = extract_tangle(g, -1, -1, opt);
        } catch (const tk_error&) {
            ++out.resamples;
            continue; // lost genericity; redraw
        }
        ++done;
        if (!equals(base.tangle.tangle, got.tangle.tangle)) out.stable = false;
    }
    if (done < trials) out.conclusive = false;
    return out;
}

} // namespace tanglekit
