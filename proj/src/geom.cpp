#include "hh/geom.hpp"

#include <algorithm>
#include <cstdlib>

namespace hh {

double eps() {
    static const double e = [] {
        if (const char* s = std::getenv("HH_EPS")) {
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end != s && v > 0 && std::isfinite(v)) return v;
        }
        return 1e-9;
    }();
    return e;
}

int solve_quadratic(double a, double b, double c, double out[2]) {
    if (std::abs(a) <= eps() * (std::abs(b) + std::abs(c) + 1e-300)) {
        // effectively linear
        if (b == 0) return 0;
        out[0] = -c / b;
        return 1;
    }
    double disc = b * b - 4 * a * c;
    double scale = b * b + std::abs(4 * a * c);
    if (disc < 0) {
        if (disc > -eps() * (scale + 1)) {  // tangency
            out[0] = -b / (2 * a);
            return 1;
        }
        return 0;
    }
    double sq = std::sqrt(disc);
    double q = (b >= 0) ? -(b + sq) / 2 : -(b - sq) / 2;
    double r0 = q / a;
    double r1 = (q != 0) ? c / q : -b / (2 * a);
    if (r0 > r1) std::swap(r0, r1);
    out[0] = r0;
    out[1] = r1;
    if (sq <= eps() * (std::abs(b) + sq + 1)) return 1;  // double root
    return 2;
}

Parabola Parabola::make(Point focus, Vec n, double d) {
    double nn = norm(n);
    if (!(nn > 0) || !std::isfinite(nn)) throw InvalidInput("directrix normal must be nonzero");
    n = {n.x / nn, n.y / nn};
    d /= nn;
    Parabola p;
    p.focus = focus;
    p.n = n;
    p.d = d;
    // frame with w along n: w = n.q, u = perp(n).q with perp = (n.y, -n.x)
    p.frame = Frame{n.y, n.x};
    double h = dot(n, focus) + d;
    if (!(h > 0)) throw InvalidInput("focus must lie strictly on the positive directrix side");
    double uf = p.frame.u(focus);
    double wf = p.frame.w(focus);
    // (u-uf)^2 = (w+d)^2 - (w-wf)^2  =>  w = (u-uf)^2/(2h) + (wf-d)/2
    p.quad.A = 1.0 / (2 * h);
    p.quad.B = -uf / h;
    p.quad.C = uf * uf / (2 * h) + (wf - d) / 2;
    return p;
}

Parabola Parabola::walkingRight(Point p, const Speed& s) {
    if (p.y < 0) throw InvalidInput("walking boundary wants a point above the highway");
    Vec n{s.sinA, s.cosA};
    double d = 2 * p.y * s.cosA - dot(n, p);
    return Parabola::make(p, n, d);
}

double Parabola::tangencyU() const {
    // touch point with the x-axis: solve -u*s + c*w(u) = 0 with tangency
    // (double root). For walking parabolas this is uf + h*s/c... derive from
    // the vertex form directly: y(u) = -u*s + c*(A(u-uf)^2/(2h)... ) — use the
    // closed form u_t = u(focus) + h * (s/c) when the curve is tangent to H.
    double uf = frame.u(focus);
    double s = frame.s, c = frame.c;
    // y(u) = -s u + c (A u^2 + B u + C); tangency: quadratic in u with disc 0.
    double a = c * quad.A;
    double b = c * quad.B - s;
    double cc = c * quad.C;
    double r[2];
    int k = solve_quadratic(a, b, cc, r);
    if (k >= 1) return (k == 1) ? r[0] : r[0];  // first (tangency gives one)
    return uf;  // not tangent to H; fall back to the focus abscissa
}

std::vector<Point> parabola_line_intersect(const Parabola& p, Point origin, Vec dir,
                                           CarrierKind kind, double tMax) {
    // |P + tD - f|^2 = (n.(P+tD) + d)^2, quadratic in t.
    Vec pf = origin - p.focus;
    double nD = dot(p.n, dir), nP = dot(p.n, origin) + p.d;
    double a = dot(dir, dir) - nD * nD;
    double b = 2 * (dot(pf, dir) - nP * nD);
    double c = dot(pf, pf) - nP * nP;
    double roots[2];
    int k = solve_quadratic(a, b, c, roots);
    std::vector<Point> out;
    double scale = 1 + norm(origin) + norm(dir);
    double tTol = eps() * scale;
    for (int i = 0; i < k; i++) {
        double t = roots[i];
        if (kind != CarrierKind::Line && t < -tTol) continue;
        if (kind == CarrierKind::SegmentCarrier && t > tMax + tTol) continue;
        Point q = origin + dir * t;
        // reject mirror solutions on the negative directrix side
        if (dot(p.n, q) + p.d < -eps() * (1 + std::abs(p.d))) continue;
        out.push_back(q);
    }
    return out;
}

CommonTangent parabola_common_tangent(const Parabola& a, const Parabola& b) {
    // Shared frame requirement.
    if (std::abs(a.n.x - b.n.x) + std::abs(a.n.y - b.n.y) > 1e-12)
        throw InvalidInput("common tangent wants parabolas with one directrix direction");
    const Quad &qa = a.quad, &qb = b.quad;
    if (std::abs(qa.A - qb.A) < 1e-15 && std::abs(qa.B - qb.B) < 1e-15 &&
        std::abs(qa.C - qb.C) < 1e-14)
        throw NoTangent("parabolas coincide");
    // Tangent w = m u + c to quad: c = C - (m-B)^2/(4A). Equate for both.
    // => m^2 (1/(4Ab) - 1/(4Aa)) + m (Bb/(2Ab) - Ba/(2Aa))
    //    + (Ca - Cb - Ba^2/(4Aa) + Bb^2/(4Ab)) = 0
    double ka = 1.0 / (4 * qa.A), kb = 1.0 / (4 * qb.A);
    double c2 = kb - ka;
    double c1 = 2 * (qb.B * kb - qa.B * ka);
    double c0 = (qa.C - qb.C) - qa.B * qa.B * ka + qb.B * qb.B * kb;
    double roots[2];
    int k = solve_quadratic(c2, c1, c0, roots);
    if (k == 0) throw NoTangent("no common tangent");
    // Discard the degenerate tangent along H (frame slope s/c) unless it is
    // a genuine double root.
    double hSlope = (a.frame.c != 0) ? a.frame.s / a.frame.c : kInf;
    double best = roots[0];
    if (k == 2) {
        double d0 = std::abs(roots[0] - hSlope), d1 = std::abs(roots[1] - hSlope);
        best = (d0 >= d1) ? roots[0] : roots[1];
    }
    double m = best;
    double uA = (m - qa.B) / (2 * qa.A);
    double uB = (m - qb.B) / (2 * qb.A);
    CommonTangent ct;
    ct.frameSlope = m;
    ct.onFirst = a.frame.point(uA, qa.eval(uA));
    ct.onSecond = b.frame.point(uB, qb.eval(uB));
    return ct;
}

namespace {

struct FrameRay {
    double Pu, Pw, Du, Dw;
};

FrameRay toFrame(const Frame& f, const Ray& r) {
    return {f.u(r.origin), f.w(r.origin), f.u({r.dir.x, r.dir.y}),
            f.w({r.dir.x, r.dir.y})};
}

// Piece index whose u-range contains u (pieces tile [uLo, uHi]).
int locatePiece(const std::vector<QuadPiece>& ps, double u) {
    int lo = 0, hi = (int)ps.size() - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (ps[mid].u1 < u)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

inline void bump(long* ctr) {
    if (ctr) ++*ctr;
}

// Roots of (line through the frame-ray) minus chain, as u values. The chain
// is convex so there are at most two; returns them ascending.
int chainLineRoots(const ConvexChain& ch, const FrameRay& fr, double uroots[2],
                   long* ctr) {
    const auto& ps = ch.pieces;
    double m = fr.Dw / fr.Du;  // caller guarantees |Du| not tiny
    double b0 = fr.Pw - m * fr.Pu;
    auto g = [&](double u) {  // line - chain
        bump(ctr);
        return (m * u + b0) - ps[locatePiece(ps, u)].eval(u);
    };
    // locate slope-match piece by binary search (slopes non-decreasing)
    int lo = 0, hi = (int)ps.size() - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        bump(ctr);
        double sHi = ps[mid].q.slope(std::min(ps[mid].u1, 1e18));
        if (sHi < m)
            lo = mid + 1;
        else
            hi = mid;
    }
    const QuadPiece& pk = ps[lo];
    double uStar;
    if (pk.q.A > 0) {
        uStar = (m - pk.q.B) / (2 * pk.q.A);
        uStar = std::clamp(uStar, pk.u0, std::min(pk.u1, 1e18));
    } else {
        uStar = pk.u0;
    }
    // clamp peak inside the chain
    uStar = std::clamp(uStar, ps.front().u0, std::min(ps.back().u1, 1e18));
    double gPeak = g(uStar);
    double tol = eps() * (std::abs(gPeak) + std::abs(uStar) + 1);
    if (gPeak < -tol) return 0;

    int nr = 0;
    // left root: sign change from <=0 to >=0 moving right toward uStar
    {
        double uL = ps.front().u0;
        if (g(uL) <= 0) {
            // binary search over piece boundaries
            int a = 0, b = locatePiece(ps, uStar);
            while (a < b) {
                int mid = (a + b) / 2;
                double ue = std::min(ps[mid].u1, uStar);
                if (g(ue) < 0)
                    a = mid + 1;
                else
                    b = mid;
            }
            const QuadPiece& pc = ps[a];
            double r[2];
            int k = solve_quadratic(pc.q.A, pc.q.B - m, pc.q.C - b0, r);
            bump(ctr);
            for (int i = 0; i < k && nr < 1; i++)
                if (r[i] >= pc.u0 - 1e-9 && r[i] <= std::min({pc.u1, uStar} ) + 1e-9)
                    uroots[nr++] = r[i];
            if (nr == 0 && k > 0) uroots[nr++] = r[0];
        } else if (std::abs(g(uL)) <= tol) {
            uroots[nr++] = uL;
        }
    }
    // right root
    {
        double uH = std::min(ps.back().u1, 1e18);
        bool openEnd = !std::isfinite(ps.back().u1);
        double gH = openEnd ? -1.0 : g(uH);
        if (gH <= 0) {
            int a = locatePiece(ps, uStar), b = (int)ps.size() - 1;
            while (a < b) {
                int mid = (a + b) / 2;
                double ue = std::min(ps[mid].u1, 1e18);
                if (g(std::max(ue, uStar)) >= 0)
                    a = mid + 1;
                else
                    b = mid;
            }
            const QuadPiece& pc = ps[a];
            double r[2];
            int k = solve_quadratic(pc.q.A, pc.q.B - m, pc.q.C - b0, r);
            bump(ctr);
            for (int i = k - 1; i >= 0 && nr < 2; i--)
                if (r[i] >= std::max(pc.u0, uStar) - 1e-9 && r[i] <= pc.u1 + 1e-9) {
                    uroots[nr++] = r[i];
                    break;
                }
        } else if (std::abs(gH) <= tol) {
            uroots[nr++] = uH;
        }
    }
    if (nr == 2 && uroots[0] > uroots[1]) std::swap(uroots[0], uroots[1]);
    return nr;
}

}  // namespace

std::optional<ChainHit> chain_ray_shoot(const ConvexChain& ch, const Ray& ray,
                                        long* ctr) {
    if (ch.empty()) return std::nullopt;
    FrameRay fr = toFrame(ch.frame, ray);
    const auto& ps = ch.pieces;
    double dirScale = std::abs(fr.Du) + std::abs(fr.Dw);
    double tTol = eps() * (1 + std::abs(fr.Pu) + std::abs(fr.Pw)) / std::max(dirScale, 1e-300);

    auto finish = [&](double u, double t) -> std::optional<ChainHit> {
        const QuadPiece& pc = ps[locatePiece(ps, u)];
        Point q = ch.frame.point(u, pc.eval(u));
        return ChainHit{q, t, pc.id};
    };

    if (std::abs(fr.Du) <= 1e-15 * std::max(1.0, std::abs(fr.Dw))) {
        double u = fr.Pu;
        if (u < ps.front().u0 - eps() || u > ps.back().u1) return std::nullopt;
        bump(ctr);
        double w = ps[locatePiece(ps, u)].eval(u);
        if (fr.Dw == 0) return std::nullopt;
        double t = (w - fr.Pw) / fr.Dw;
        if (t < -tTol) return std::nullopt;
        return finish(u, std::max(t, 0.0));
    }

    double uroots[2];
    int k = chainLineRoots(ch, fr, uroots, ctr);
    double bestT = kInf, bestU = 0;
    for (int i = 0; i < k; i++) {
        double t = (uroots[i] - fr.Pu) / fr.Du;
        if (t >= -tTol && t < bestT) {
            bestT = std::max(t, 0.0);
            bestU = uroots[i];
        }
    }
    if (!std::isfinite(bestT)) return std::nullopt;
    return finish(bestU, bestT);
}

std::optional<double> chain_region_entry(const ConvexChain& ch, const Ray& ray,
                                         long* ctr) {
    if (ch.empty()) return std::nullopt;
    FrameRay fr = toFrame(ch.frame, ray);
    const auto& ps = ch.pieces;
    double uLo = ps.front().u0, uHi = ps.back().u1;

    auto inside = [&](double t) {
        double u = fr.Pu + t * fr.Du;
        if (u < uLo - 1e-12 || u > uHi) return false;
        bump(ctr);
        return fr.Pw + t * fr.Dw >= ps[locatePiece(ps, u)].eval(u) - 1e-12;
    };
    if (inside(0.0)) return 0.0;

    double best = kInf;
    // entries through the chain curve
    if (std::abs(fr.Du) <= 1e-15 * std::max(1.0, std::abs(fr.Dw))) {
        if (fr.Pu >= uLo - 1e-12 && fr.Pu <= uHi && fr.Dw != 0) {
            bump(ctr);
            double t = (ps[locatePiece(ps, fr.Pu)].eval(fr.Pu) - fr.Pw) / fr.Dw;
            if (t >= 0) best = std::min(best, t);
        }
    } else {
        double uroots[2];
        int k = chainLineRoots(ch, fr, uroots, ctr);
        for (int i = 0; i < k; i++) {
            double t = (uroots[i] - fr.Pu) / fr.Du;
            if (t >= 0 && t < best && inside(t + 1e-12 * (1 + std::abs(t))))
                best = std::min(best, t);
            else if (t >= 0 && t < best) {
                // boundary grazing still counts as an entry
                best = std::min(best, t);
            }
        }
    }
    // entries through the vertical walls u = uLo / u = uHi
    if (fr.Du != 0) {
        for (double uWall : {uLo, uHi}) {
            if (!std::isfinite(uWall)) continue;
            double t = (uWall - fr.Pu) / fr.Du;
            if (t >= 0 && t < best) {
                bump(ctr);
                double w = fr.Pw + t * fr.Dw;
                if (w >= ps[locatePiece(ps, uWall)].eval(uWall) - 1e-12)
                    best = std::min(best, t);
            }
        }
    }
    if (!std::isfinite(best)) return std::nullopt;
    return best;
}

}  // namespace hh
