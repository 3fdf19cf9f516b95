#pragma once
// Planar primitives shared by the hull, boundary and useful-region code:
// points, rays, parabolas in focus/directrix form, x-monotone parabolic
// pieces viewed as quadratic graphs in a rotated frame, and convex chains
// of such pieces with logarithmic ray shooting.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hh {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance used by on-curve and comparison predicates, relative to the
// magnitude of the operands. Overridable through the HH_EPS env var.
double eps();

struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& m) : std::runtime_error(m) {}
};
struct NoTangent : std::runtime_error {
    explicit NoTangent(const std::string& m) : std::runtime_error(m) {}
};
struct EmptyLog : std::runtime_error {
    explicit EmptyLog(const std::string& m) : std::runtime_error(m) {}
};
struct DegeneratePair : std::runtime_error {
    explicit DegeneratePair(const std::string& m) : std::runtime_error(m) {}
};
struct TooFewPoints : std::runtime_error {
    explicit TooFewPoints(const std::string& m) : std::runtime_error(m) {}
};
struct NumericFailure : std::runtime_error {
    explicit NumericFailure(const std::string& m) : std::runtime_error(m) {}
};

struct Point {
    double x = 0, y = 0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double k) const { return {x * k, y * k}; }
    bool operator==(const Point&) const = default;
};
using Vec = Point;

inline double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double dist1(Point a, Point b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}
inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
    Point a, b;
};
struct Ray {
    Point origin;
    Vec dir;  // need not be unit length
};

// Highway speed. Finite speeds must be > 1; alpha = asin(1/v) is the Snell
// entry angle measured from the vertical (0 for infinite speed).
struct Speed {
    double v = kInf;
    bool infinite = true;
    double sinA = 0, cosA = 1, tanA = 0;

    static Speed finiteV(double v) {
        if (!(v > 1.0) || !std::isfinite(v))
            throw InvalidInput("speed must be a finite real > 1");
        Speed s;
        s.v = v;
        s.infinite = false;
        s.sinA = 1.0 / v;
        s.cosA = std::sqrt(1.0 - s.sinA * s.sinA);
        s.tanA = s.sinA / s.cosA;
        return s;
    }
    static Speed infiniteV() { return Speed{}; }
    double invV() const { return infinite ? 0.0 : 1.0 / v; }
};

// Rotated coordinate frame for right-side walking boundaries:
//   u = x*c - y*s,  w = x*s + y*c   with (s, c) = (sin alpha, cos alpha).
// Every right boundary piece is the graph of a quadratic w(u) in this frame.
// Left-side boundaries reuse the same machinery on x-mirrored input.
struct Frame {
    double c = 1, s = 0;

    static Frame forSpeed(const Speed& sp) { return Frame{sp.cosA, sp.sinA}; }
    double u(Point p) const { return p.x * c - p.y * s; }
    double w(Point p) const { return p.x * s + p.y * c; }
    Point point(double u, double w) const {
        return {u * c + w * s, -u * s + w * c};
    }
    double yOf(double u, double w) const { return -u * s + w * c; }
    double xOf(double u, double w) const { return u * c + w * s; }
};

// w(u) = A u^2 + B u + C. A >= 0 throughout this codebase (upward pieces);
// A == 0 encodes a line segment.
struct Quad {
    double A = 0, B = 0, C = 0;
    double eval(double u) const { return (A * u + B) * u + C; }
    double slope(double u) const { return 2 * A * u + B; }
};

// Solves a x^2 + b x + c = 0; near-tangency collapses to a double root.
// Returns the number of roots (0, 1 or 2), sorted ascending.
int solve_quadratic(double a, double b, double c, double out[2]);

// Parabola as the locus |q - focus| = n.q + d with unit normal n. The curve
// is nonempty iff the focus lies strictly on the positive side (h > 0).
struct Parabola {
    Point focus;
    Vec n;      // unit directrix normal
    double d;   // offset: directrix is { q : n.q + d = 0 }
    Frame frame;  // frame with w-axis along n
    Quad quad;    // graph of the curve in `frame`

    double h() const { return dot(n, focus) + d; }  // focus-directrix distance

    static Parabola make(Point focus, Vec n, double d);
    // Right walking boundary of point p (p.y >= 0): |q - p| = T_right(q).
    static Parabola walkingRight(Point p, const Speed& s);

    // Signed "inside" test: true when q is on the region side (direct path
    // at least as fast), i.e. |q - focus| <= n.q + d, boundary inclusive.
    bool insideOrOn(Point q, double tol) const {
        return dist(q, focus) <= dot(n, q) + d + tol;
    }
    double evalW(double u) const { return quad.eval(u); }
    Point pointAtU(double u) const { return frame.point(u, quad.eval(u)); }
    // u of the tangency with the x-axis for walking parabolas.
    double tangencyU() const;
};

// x-monotone piece of a parabola, parameterised by the frame abscissa.
struct ParabolicArc {
    Parabola parabola;
    double u0, u1;  // u0 < u1; u1 may be +inf
    Point start() const { return parabola.pointAtU(u0); }
    Point end() const { return parabola.pointAtU(u1); }
};

struct CircularArc {
    Point center;
    double radius = 0;
    double a0 = 0, a1 = 0;  // radial angles, counterclockwise, a0 < a1
    Point at(double ang) const {
        return {center.x + radius * std::cos(ang), center.y + radius * std::sin(ang)};
    }
    Point startPoint() const { return at(a0); }
    Point endPoint() const { return at(a1); }
    double sweep() const { return a1 - a0; }
};

// One graph piece of a boundary curve or a convex chain.
struct QuadPiece {
    Quad q;
    double u0 = 0, u1 = 0;  // u1 may be +inf
    int id = -1;            // caller-defined tag (leaf index, owner, ...)
    double eval(double u) const { return q.eval(u); }
};

// Convex x-monotone chain: pieces in increasing u with non-decreasing slope.
struct ConvexChain {
    Frame frame;
    std::vector<QuadPiece> pieces;
    bool empty() const { return pieces.empty(); }
    double uLo() const { return pieces.front().u0; }
    double uHi() const { return pieces.back().u1; }
};

struct ChainHit {
    Point point;
    double t;     // ray parameter of the hit
    int pieceId;  // id of the piece hit
};

// Intersections of a parabola with a line/ray/segment carrier, sorted along
// the carrier. Tangency yields a single point.
enum class CarrierKind { Line, Ray, SegmentCarrier };
std::vector<Point> parabola_line_intersect(const Parabola& p, Point origin,
                                           Vec dir, CarrierKind kind,
                                           double tMax = kInf);
inline std::vector<Point> parabola_line_intersect(const Parabola& p, const Ray& r) {
    return parabola_line_intersect(p, r.origin, r.dir, CarrierKind::Ray);
}
inline std::vector<Point> parabola_line_intersect(const Parabola& p, const Segment& s) {
    return parabola_line_intersect(p, s.a, s.b - s.a, CarrierKind::SegmentCarrier, 1.0);
}

// Common tangent of two parabolas sharing a directrix direction, excluding
// the degenerate tangent along the highway itself. Throws NoTangent when the
// curves coincide or no such tangent exists.
struct CommonTangent {
    Point onFirst, onSecond;  // tangency points
    double frameSlope;        // slope of the tangent in the shared frame
};
CommonTangent parabola_common_tangent(const Parabola& a, const Parabola& b);

// First intersection of a ray with a convex chain; O(log n) piece
// evaluations. Counts primitive evaluations into *counter when given.
std::optional<ChainHit> chain_ray_shoot(const ConvexChain& chain, const Ray& ray,
                                        long* counter = nullptr);

// First ray parameter at which the ray enters the convex region
// { u in [uLo,uHi], w >= chain(u) }; nullopt when it never does.
std::optional<double> chain_region_entry(const ConvexChain& chain, const Ray& ray,
                                         long* counter = nullptr);

}  // namespace hh
