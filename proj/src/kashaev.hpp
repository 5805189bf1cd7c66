#pragma once
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>
#include "laurent.hpp"
#include "stepped.hpp"

namespace c2l {

// corner values of a unit cube and the six face quantities
template <class T>
struct CubeData {
    T g, g1, g2, g3, g12, g13, g23, g123;
    T X, Y, Z, X1, Y2, Z3;
};

using NumCube = CubeData<double>;
using SymCube = CubeData<LaurentPoly>;

template <class T>
T kashaev_residual(const CubeData<T>& c);
double relative_residual(const NumCube& c);

// bottom data with X, Y, Z; numeric X, Y, Z may be left at 0 and are then computed
NumCube kashaev_step(NumCube c);
SymCube kashaev_step(SymCube c);
double other_root(const NumCube& c);

bool duality_check(const NumCube& c, double tol = 1e-9);
bool duality_check(const SymCube& c);
bool ff_invariant(const NumCube& c, double tol = 1e-9);
bool ff_invariant(const SymCube& c);

NumCube numeric_cube(double g, double g1, double g2, double g3, double g12, double g13, double g23);
// the seven bottom corners as free variables with roots X, Y, Z
SymCube formal_cube(RegPtr* reg_out = nullptr);

// exponents of a face weight, doubled so that square roots become integers;
// corners are (x, u, y, v) and the root of the face appears for types 3 and 4
void add_face_exponents(int type, const std::array<int, 4>& corner_vars, std::map<int, int>& doubled, int& root);

struct InitValues {
    double fallback = 1;
    std::map<Pt, double> values;
    double at(const Pt& p) const;
    static InitValues from_json(const std::string& text);
};

// vertex variables g[i,j,k] and face roots X[i,j,k;n] for every vertex and face of a window
RegPtr surface_registry(const SurfaceGraph& s);
int solve_window(const SteppedSolid& u);

template <class T>
struct SolveResult {
    T origin;
    int steps = 0;
    double max_residual = 0;   // numeric: largest relative residual of a completed cube
    bool residuals_ok = true;  // every completed cube satisfies the relation
    bool ff_ok = true;         // the face invariant holds on every completed cube
};

SolveResult<double> solve_origin(const SteppedSolid& u, const InitValues& init, std::vector<Pt> order = {});
// symbolic run on the given window; `check` verifies every completed cube exactly (slower)
SolveResult<LaurentPoly> solve_origin_symbolic(const SurfaceGraph& s, const RegPtr& reg, std::vector<Pt> order = {},
                                               bool check = false);

struct YBRow {
    int row = 0;
    bool side_swap = false;
    bool found = false;   // a connection pattern with the expected local sums exists
    bool holds = false;   // the two sides agree after substituting the recurrence
    std::string pattern;
    std::string lhs, rhs;
    int lhs_configs = 0, rhs_configs = 0;
};

YBRow yang_baxter_row_check(int row, bool side_swap = false);

struct YBCensus {
    int patterns = 0, failures = 0;
};
// every connection pattern of the two three-face stars, not only the listed rows
YBCensus yang_baxter_all_patterns();

}
