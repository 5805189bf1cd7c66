#pragma once
#include <string>
#include <vector>
#include "kashaev.hpp"
#include "taut.hpp"

namespace c2l {

// per face: 0 joins the black corners x and y, 1 joins the white corners u and v
using GroveConfig = std::vector<int>;

std::vector<LoopConfig> filter_no_loops(const QuadGraph& g, const std::vector<LoopConfig>& configs);
GroveConfig to_grove(const QuadGraph& g, const LoopConfig& c);
LoopConfig from_grove(const GroveConfig& grove);
bool grove_is_forest(const QuadGraph& g, const GroveConfig& grove);
std::string grove_json(const QuadGraph& g, const GroveConfig& grove);

// plus-sign cube recurrence g g123 = g1 g23 + g2 g13 + g3 g12 filled up to the origin
double cube_recurrence_solve(const SteppedSolid& u, const InitValues& init);
LaurentPoly cube_recurrence_solve(const SurfaceGraph& s, const RegPtr& reg);

struct GroveReport {
    bool equal = false;
    bool groves_distinct = false;
    bool forests = false;
    bool parity = false;
    int loop_free = 0;
    std::string groves_sum, cube_recurrence;
    bool all() const { return equal && groves_distinct && forests && parity; }
};

GroveReport verify_grove_equality(const TautSpace& t, const std::vector<LoopConfig>& configs);

}
