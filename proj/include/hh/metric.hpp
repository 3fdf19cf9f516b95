#pragma once
// Highway time distance for the L1 and L2 metrics, shortest-path
// construction, and walking-region membership / boundary generators.

#include <variant>
#include <vector>

#include "hh/geom.hpp"

namespace hh {

enum class Metric { L1, L2 };

struct TravelResult {
    double time = 0;
    bool usesHighway = false;
    std::vector<Point> path;  // 2..4 vertices
};

// Minimum travel time between p and q (both with y >= 0), highway on the
// x-axis. Ties go to the direct path ("H is not used").
TravelResult travel_time(Point p, Point q, const Speed& s, Metric m);

// Closed-form highway-leg time for L2; valid only when feasible().
inline bool l2_highway_feasible(Point p, Point q, const Speed& s) {
    return std::abs(q.x - p.x) >= (p.y + q.y) * s.tanA;
}
inline double l2_highway_time(Point p, Point q, const Speed& s) {
    return std::abs(q.x - p.x) * s.sinA + (p.y + q.y) * s.cosA;
}

enum class SideOf { Left, Right };

struct BoundaryPiece {
    enum Kind { SlopedSegment, VerticalHalfline, Arc, BridgeSegment, SnellHalfline } kind;
    Segment seg{};       // SlopedSegment / BridgeSegment; base+dir for halflines
    ParabolicArc arc{};  // Arc
};

// One-sided boundary of a walking region, ordered from the highway upward.
struct WalkBoundary {
    SideOf side = SideOf::Right;
    std::vector<BoundaryPiece> pieces;
};

using Element = std::variant<Point, Segment>;

WalkBoundary walk_boundary(const Element& elem, const Speed& s, Metric m, SideOf side);

// True iff the shortest path from q to some point of elem avoids the
// highway (boundary inclusive, consistent with the tie rule).
bool in_walking_region(const Element& elem, Point q, const Speed& s, Metric m);

// L1 walking-region slope (1 - 1/v)/2; in (0, 1/2].
inline double l1_slope(const Speed& s) { return (1.0 - s.invV()) / 2.0; }

// Frame abscissa of the tangency of wrb(p) with the highway.
inline double walking_tangency_u(Point p, const Speed& s) {
    Frame f = Frame::forSpeed(s);
    return f.u(p) + 2.0 * p.y * s.sinA;
}

}  // namespace hh
