#pragma once
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>
#include "quadgraph.hpp"

namespace c2l {

enum Colour { Red = 0, Blue = 1 };
enum class Pairing { AroundWhite, AroundBlack, Crossing };

// the ten local pictures 1a,1b,...,5b as indices 0..9
struct LocalPicture {
    const char* name;
    int type;                  // 1..5
    Pairing pairing;
    std::array<int, 4> partner;  // slot paired with each slot
    std::array<int, 4> colour;   // colour of each edge slot
};

const LocalPicture& picture(int index);
int picture_index(const std::string& name);
int picture_from(Pairing p, const std::array<int, 4>& colour);  // -1 if inconsistent

using LoopConfig = std::vector<int>;

struct BoundarySpec {
    enum Mode { ClosedSurface, Free, FixedColours, FixedConnections } mode = Free;
    std::map<int, int> colours;                      // external edge -> colour
    std::vector<std::array<int, 3>> connections;     // (edge, edge, colour)

    static BoundarySpec from_json(const QuadGraph& g, const std::string& text);
};

struct Strand {
    std::vector<std::pair<int, int>> half_edges;  // (face, slot) in order
    int colour = Red;
    bool closed = false;
};

std::vector<Strand> trace_strands(const QuadGraph& g, const LoopConfig& c);
int count_loops(const QuadGraph& g, const LoopConfig& c);
bool gluing_ok(const QuadGraph& g, const LoopConfig& c);
bool crossing_parity_check(const QuadGraph& g, const LoopConfig& c);

void enumerate_configs(const QuadGraph& g, const BoundarySpec& b, const std::function<void(const LoopConfig&)>& out);

Value weight(const QuadGraph& g, const LoopConfig& c, const std::vector<FaceWeights>& w, bool fugacity = true);
Value partition_function(const QuadGraph& g, const std::vector<FaceWeights>& w, const BoundarySpec& b);

std::string config_json(const QuadGraph& g, const LoopConfig& c);

}
