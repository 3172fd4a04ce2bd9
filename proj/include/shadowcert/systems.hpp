// Ready-made graphs and maps used by the command line tool, the unit tests,
// and the acceptance suite.
#pragma once

#include <string>
#include <vector>

#include "shadowcert/cover.hpp"
#include "shadowcert/pl_map.hpp"

namespace shadowcert::systems {

GraphPtr unit_interval();
GraphPtr circle();
GraphPtr y_tree();
GraphPtr small_interval();  // one edge of length 1/18
GraphPtr small_circle();    // one loop of length 1/18
GraphPtr whisker_graph();   // unit edge with a short whisker at one end

PLMap identity_map(GraphPtr g);
// Tent over a single interval edge; any edge length.
PLMap tent_map(GraphPtr g);
// Unimodal map with a blunt crown: (0,0), (3/8,15/16), (1/2,1), (5/8,15/16),
// (1,0), scaled to the edge length.
PLMap hump_map(GraphPtr g);
// Degree-two circle self-cover.
PLMap doubling_map(GraphPtr g);
// Rotation by a quarter of the loop.
PLMap rotation_map(GraphPtr g);
// Swaps the first two branches isometrically, folds the third onto its
// inner half.
PLMap y_fold_map(GraphPtr g);
// Tent on the main edge with a short excursion into the whisker around the
// point mapping to the junction.
PLMap whisker_fold_map(GraphPtr g);
// Collapses the whisker onto the junction vertex.
Retraction whisker_retraction(GraphPtr g);

// Three overlapping intervals [0,2/5), (3/10,7/10), (3/5,1] on the unit
// interval; many unit tests pin values computed against this cover.
TautCover tent_cover3(GraphPtr g);

struct NamedSystem {
  std::string name;
  GraphPtr graph;
  PLMap map;
};

// Systems addressable by name: tent, identity, hump, doubling, rotation,
// yfold, smallfold, smallrot, whisker.
NamedSystem by_name(const std::string& name);
const std::vector<std::string>& system_names();

}  // namespace shadowcert::systems
