// Exact metric queries on regions: distances, diameters, balls,
// neighborhoods.  All results are rationals or regions with exact flags.
#pragma once

#include "shadowcert/pl_function.hpp"
#include "shadowcert/region.hpp"

namespace shadowcert {

Rat graph_distance(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b);

// Distance from a vertex / point to a nonempty region (equals distance to its
// closure).
Rat vertex_region_distance(const MetricGraph& g, int v, const Region& r);
Rat point_region_distance(const MetricGraph& g, const GraphPoint& p, const Region& r);

// inf { d(a, b) : a in A, b in B }; zero iff the closures intersect.
Rat region_distance(const Region& a, const Region& b);

bool region_intersects(const Region& a, const Region& b);

// Diameter of the closure; exact, attained.
Rat region_diameter(const Region& r);

// Open / closed metric balls.
Region ball(GraphPtr g, const GraphPoint& center, const Rat& radius);
Region closed_ball(GraphPtr g, const GraphPoint& center, const Rat& radius);

// { x : d(x, r) < eta } and { x : d(x, r) <= eta }.
Region neighborhood(const Region& r, const Rat& eta);
Region closed_neighborhood(const Region& r, const Rat& eta);

// Distance profile t -> d((e, t), r) over the whole edge e.
PLFunction edge_distance_profile(const MetricGraph& g, int e, const Region& r);
PLFunction edge_point_distance_profile(const MetricGraph& g, int e, const GraphPoint& p);

// Maximizer of d(., anchor) over a nonempty closed region; ties broken toward
// the least point.  Returns (point, value).
std::pair<GraphPoint, Rat> farthest_point(const Region& r, const GraphPoint& anchor);

}  // namespace shadowcert
