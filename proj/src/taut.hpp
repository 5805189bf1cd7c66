#pragma once
#include <map>
#include <string>
#include <vector>
#include "kashaev.hpp"
#include "loopmodel.hpp"

namespace c2l {

// a window of G(U) whose outer collar is frozen to the reference configuration
struct TautSpace {
    SteppedSolid solid;
    int inner = 0;                 // free faces have all corners in [-inner, 0]^3
    SurfaceGraph surface;          // box window of radius inner + 1
    RegPtr reg;
    LoopConfig sigma0;
    std::vector<char> frozen;      // per face
    std::vector<char> tracked;     // per vertex: its exponent is part of the weight
    std::map<int, int> pairing;    // boundary edge -> boundary edge joined by the reference strands

    static TautSpace build(const SteppedSolid& u, int extra = 0);
};

int sigma0_picture(const TautSpace& t, int face);
std::vector<LoopConfig> enumerate_taut(const TautSpace& t);
bool is_taut(const TautSpace& t, const LoopConfig& c);

LaurentPoly taut_weight(const TautSpace& t, const LoopConfig& c);
double taut_weight(const TautSpace& t, const LoopConfig& c, const InitValues& init);
std::vector<double> vertex_values(const TautSpace& t, const InitValues& init);

LaurentPoly y_taut(const TautSpace& t, const std::vector<LoopConfig>& configs);
double y_taut(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init);

struct Princ2Report {
    bool holds = false;
    int configs = 0;
    std::string taut, recurrence;
};

Princ2Report verify_princ2(const TautSpace& t, const std::vector<LoopConfig>& configs);
Princ2Report verify_princ2(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init);

struct UnicReport {
    int monomials = 0, configs = 0;
    bool count_ok = false, injective = false, vertex_exponents_ok = false, root_exponents_ok = false,
         coefficients_ok = false, reconstruct_ok = false;
    int min_exponent = 0, max_exponent = 0;
    bool all() const {
        return count_ok && injective && vertex_exponents_ok && root_exponents_ok && coefficients_ok && reconstruct_ok;
    }
};

UnicReport verify_unic(const TautSpace& t, const std::vector<LoopConfig>& configs);

// rebuilds the configuration from its weight by peeling faces next to known ones
LoopConfig reconstruct_from_monomial(const TautSpace& t, const Mono& m, const mpq_class& coeff);

LoopConfig sample_taut(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init, unsigned seed);

std::string taut_json(const TautSpace& t, const LoopConfig& c);

}
