#include "kashaev.hpp"
#include <algorithm>
#include <cmath>
#include "json.hpp"
#include "loopmodel.hpp"

namespace c2l {

namespace {

double sc(int k, double x) { return k * x; }
LaurentPoly sc(int k, const LaurentPoly& x) { return mpq_class(k) * x; }
double dv(double a, double b) { return a / b; }
LaurentPoly dv(const LaurentPoly& a, const LaurentPoly& b) { return a.div_exact(b); }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

template <class T>
CubeData<T> step_impl(CubeData<T> c) {
    auto g2 = c.g * c.g;
    c.g123 = dv(sc(2, c.g1 * c.g2 * c.g3) + c.g * (c.g1 * c.g23 + c.g2 * c.g13 + c.g3 * c.g12) + sc(2, c.X * c.Y * c.Z), g2);
    c.X1 = dv(c.g1 * c.X + c.Y * c.Z, c.g);
    c.Y2 = dv(c.g2 * c.Y + c.X * c.Z, c.g);
    c.Z3 = dv(c.g3 * c.Z + c.X * c.Y, c.g);
    return c;
}

}

template <class T>
T kashaev_residual(const CubeData<T>& c) {
    return c.g * c.g * c.g123 * c.g123 + c.g1 * c.g1 * c.g23 * c.g23 + c.g2 * c.g2 * c.g13 * c.g13 +
           c.g3 * c.g3 * c.g12 * c.g12 -
           sc(2, c.g2 * c.g3 * c.g13 * c.g12 + c.g1 * c.g3 * c.g23 * c.g12 + c.g1 * c.g2 * c.g23 * c.g13) -
           sc(2, c.g * c.g123 * (c.g1 * c.g23 + c.g2 * c.g13 + c.g3 * c.g12)) - sc(4, c.g * c.g12 * c.g23 * c.g13) -
           sc(4, c.g123 * c.g1 * c.g2 * c.g3);
}

template double kashaev_residual(const NumCube&);
template LaurentPoly kashaev_residual(const SymCube&);

double relative_residual(const NumCube& c) {
    double scale = std::abs(c.g * c.g * c.g123 * c.g123) + c.g1 * c.g1 * c.g23 * c.g23 + c.g2 * c.g2 * c.g13 * c.g13 +
                   c.g3 * c.g3 * c.g12 * c.g12 +
                   2 * std::abs(c.g2 * c.g3 * c.g13 * c.g12 + c.g1 * c.g3 * c.g23 * c.g12 + c.g1 * c.g2 * c.g23 * c.g13) +
                   2 * std::abs(c.g * c.g123 * (c.g1 * c.g23 + c.g2 * c.g13 + c.g3 * c.g12)) +
                   4 * std::abs(c.g * c.g12 * c.g23 * c.g13) + 4 * std::abs(c.g123 * c.g1 * c.g2 * c.g3);
    return std::abs(kashaev_residual(c)) / std::max(scale, 1e-300);
}

NumCube kashaev_step(NumCube c) {
    for (double v : {c.g, c.g1, c.g2, c.g3, c.g12, c.g13, c.g23})
        if (!(v > 0)) fail(Err::NonPositive, "numeric recurrence needs positive corner values");
    if (c.X == 0) c.X = std::sqrt(c.g * c.g23 + c.g2 * c.g3);
    if (c.Y == 0) c.Y = std::sqrt(c.g * c.g13 + c.g1 * c.g3);
    if (c.Z == 0) c.Z = std::sqrt(c.g * c.g12 + c.g1 * c.g2);
    return step_impl(c);
}

SymCube kashaev_step(SymCube c) { return step_impl(c); }

double other_root(const NumCube& c) {
    double a = c.g * c.g;
    double b = 2 * c.g * (c.g1 * c.g23 + c.g2 * c.g13 + c.g3 * c.g12) + 4 * c.g1 * c.g2 * c.g3;
    double k = c.g1 * c.g1 * c.g23 * c.g23 + c.g2 * c.g2 * c.g13 * c.g13 + c.g3 * c.g3 * c.g12 * c.g12 -
               2 * (c.g2 * c.g3 * c.g13 * c.g12 + c.g1 * c.g3 * c.g23 * c.g12 + c.g1 * c.g2 * c.g23 * c.g13) -
               4 * c.g * c.g12 * c.g23 * c.g13;
    double disc = std::max(0.0, b * b - 4 * a * k);
    return (b - std::sqrt(disc)) / (2 * a);
}

namespace {

template <class T>
CubeData<T> flipped(const CubeData<T>& c) {
    CubeData<T> d;
    d.g = c.g123;
    d.g1 = c.g23;
    d.g2 = c.g13;
    d.g3 = c.g12;
    d.g23 = c.g1;
    d.g13 = c.g2;
    d.g12 = c.g3;
    d.X = c.X1;
    d.Y = c.Y2;
    d.Z = c.Z3;
    return d;
}

}

bool duality_check(const NumCube& c, double tol) {
    auto r = kashaev_step(flipped(c));
    return close(r.g123, c.g, tol) && close(r.X1, c.X, tol) && close(r.Y2, c.Y, tol) && close(r.Z3, c.Z, tol);
}

bool duality_check(const SymCube& c) {
    auto d = flipped(c);
    auto num = mpq_class(2) * d.g1 * d.g2 * d.g3 + d.g * (d.g1 * d.g23 + d.g2 * d.g13 + d.g3 * d.g12) +
               mpq_class(2) * d.X * d.Y * d.Z;
    return num == c.g * d.g * d.g && d.g1 * d.X + d.Y * d.Z == c.X * d.g && d.g2 * d.Y + d.X * d.Z == c.Y * d.g &&
           d.g3 * d.Z + d.X * d.Y == c.Z * d.g;
}

bool ff_invariant(const NumCube& c, double tol) {
    return close((c.X1 * c.Y2 * c.Z3 + c.g12 * c.g13 * c.g23) / c.g123, (c.X * c.Y * c.Z + c.g1 * c.g2 * c.g3) / c.g, tol);
}

bool ff_invariant(const SymCube& c) {
    return (c.X1 * c.Y2 * c.Z3 + c.g12 * c.g13 * c.g23) * c.g == (c.X * c.Y * c.Z + c.g1 * c.g2 * c.g3) * c.g123;
}

NumCube numeric_cube(double g, double g1, double g2, double g3, double g12, double g13, double g23) {
    NumCube c{};
    c.g = g;
    c.g1 = g1;
    c.g2 = g2;
    c.g3 = g3;
    c.g12 = g12;
    c.g13 = g13;
    c.g23 = g23;
    return c;
}

namespace {

Terms sum_of_products(std::pair<int, int> a, std::pair<int, int> b) {
    auto mono = [](int x, int y) {
        if (x == y) return Mono{{x, 2}};
        return x < y ? Mono{{x, 1}, {y, 1}} : Mono{{y, 1}, {x, 1}};
    };
    Terms t;
    t[mono(a.first, a.second)] += 1;
    t[mono(b.first, b.second)] += 1;
    return t;
}

}

SymCube formal_cube(RegPtr* reg_out) {
    // g g1 g2 g3 g12 g13 g23 are variables 0..6
    std::vector<VarRegistry::Root> roots{{"X", sum_of_products({0, 6}, {2, 3})},
                                         {"Y", sum_of_products({0, 5}, {1, 3})},
                                         {"Z", sum_of_products({0, 4}, {1, 2})}};
    auto reg = std::make_shared<const VarRegistry>(std::vector<std::string>{"g", "g1", "g2", "g3", "g12", "g13", "g23"}, roots);
    SymCube c;
    c.g = LaurentPoly::var(reg, 0);
    c.g1 = LaurentPoly::var(reg, 1);
    c.g2 = LaurentPoly::var(reg, 2);
    c.g3 = LaurentPoly::var(reg, 3);
    c.g12 = LaurentPoly::var(reg, 4);
    c.g13 = LaurentPoly::var(reg, 5);
    c.g23 = LaurentPoly::var(reg, 6);
    c.X = LaurentPoly::var(reg, 7);
    c.Y = LaurentPoly::var(reg, 8);
    c.Z = LaurentPoly::var(reg, 9);
    if (reg_out) *reg_out = reg;
    return c;
}

void add_face_exponents(int type, const std::array<int, 4>& corner_vars, std::map<int, int>& doubled, int& root) {
    static const int black[6] = {0, 2, 0, 1, 0, 1};
    static const int white[6] = {0, 0, 2, 0, 1, 1};
    for (int k = 0; k < 4; ++k) {
        int e = (k % 2 == 0) ? black[type] : white[type];
        if (e) doubled[corner_vars[k]] += e;
    }
    if (type == 3 || type == 4) ++root;
}

double InitValues::at(const Pt& p) const {
    auto it = values.find(p);
    return it == values.end() ? fallback : it->second;
}

InitValues InitValues::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad initial values JSON: ") + e.what());
    }
    auto num = [](const nlohmann::json& v) {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return QE::parse(v.get<std::string>()).to_double();
        fail(Err::Input, "initial values are numbers or numeric strings");
    };
    InitValues iv;
    if (j.contains("default")) iv.fallback = num(j["default"]);
    if (j.contains("values"))
        for (auto& [k, v] : j["values"].items()) {
            Pt p{};
            if (std::sscanf(k.c_str(), "%d,%d,%d", &p[0], &p[1], &p[2]) != 3) fail(Err::Input, "vertex keys are written i,j,k");
            iv.values[p] = num(v);
        }
    return iv;
}

RegPtr surface_registry(const SurfaceGraph& s) {
    std::vector<std::string> names;
    for (auto& p : s.points) names.push_back("g[" + pt_str(p) + "]");
    std::vector<VarRegistry::Root> roots;
    for (size_t f = 0; f < s.keys.size(); ++f) {
        auto& c = s.graph.faces[f].corners;
        roots.push_back({"X[" + face_name(s.keys[f]) + "]", sum_of_products({c[0], c[2]}, {c[1], c[3]})});
    }
    return std::make_shared<const VarRegistry>(names, roots);
}

int solve_window(const SteppedSolid& u) {
    int m = 0;
    for (auto& p : u.removed)
        for (int k = 0; k < 3; ++k) m = std::max(m, -p[k]);
    return m + 1;
}

namespace {

void check_order(const SteppedSolid& u, const std::vector<Pt>& order) {
    SteppedSolid v = u;
    for (auto& p : order) {
        auto a = addable_positions(v);
        if (std::find(a.begin(), a.end(), p) == a.end()) fail(Err::Input, "fill order adds " + pt_str(p) + " too early");
        v.removed.erase(p);
    }
    if (!v.removed.empty()) fail(Err::Input, "fill order does not add every removed cube");
}

bool on_surface(const SteppedSolid& u, const FaceKey& f) { return u.has_cube(f.low - unit(f.normal)) && !u.has_cube(f.low); }

template <class T, class Vert, class FaceF>
SolveResult<T> run(const SteppedSolid& u, std::vector<Pt> order, Vert vert, FaceF face, bool check) {
    if (!is_regular(u).regular) fail(Err::Input, "stepped solid is not monotone");
    if (order.empty()) order = fill_order(u);
    check_order(u, order);
    std::map<Pt, T> gv;
    std::map<FaceKey, T> fv;
    auto gat = [&](const Pt& p) -> T {
        auto it = gv.find(p);
        if (it != gv.end()) return it->second;
        if (!u.has_point(p) || u.has_point(p + Pt{1, 1, 1})) fail(Err::Internal, "recurrence reached " + pt_str(p) + " before computing it");
        return gv[p] = vert(p);
    };
    auto fat = [&](const FaceKey& f) -> T {
        auto it = fv.find(f);
        if (it != fv.end()) return it->second;
        if (!on_surface(u, f)) fail(Err::Internal, "recurrence reached face " + face_name(f) + " before computing it");
        return fv[f] = face(f, gat);
    };
    SolveResult<T> res;
    for (auto& p : order) {
        CubeData<T> c;
        c.g = gat(p);
        c.g1 = gat(p + unit(0));
        c.g2 = gat(p + unit(1));
        c.g3 = gat(p + unit(2));
        c.g12 = gat(p + unit(0) + unit(1));
        c.g13 = gat(p + unit(0) + unit(2));
        c.g23 = gat(p + unit(1) + unit(2));
        c.X = fat({p, 0});
        c.Y = fat({p, 1});
        c.Z = fat({p, 2});
        c = kashaev_step(c);
        if (check) {
            if constexpr (std::is_same_v<T, double>) {
                double r = relative_residual(c);
                res.max_residual = std::max(res.max_residual, r);
                if (r > 1e-9) res.residuals_ok = false;
                if (!ff_invariant(c)) res.ff_ok = false;
            } else {
                if (!kashaev_residual(c).is_zero()) res.residuals_ok = false;
                if (!ff_invariant(c)) res.ff_ok = false;
            }
        }
        gv[p + Pt{1, 1, 1}] = c.g123;
        fv[{p + unit(0), 0}] = c.X1;
        fv[{p + unit(1), 1}] = c.Y2;
        fv[{p + unit(2), 2}] = c.Z3;
        ++res.steps;
    }
    res.origin = gat({0, 0, 0});
    return res;
}

std::array<Pt, 4> face_corners(const FaceKey& f) {
    int a = (f.normal + 1) % 3, b = (f.normal + 2) % 3;
    return {f.low, f.low + unit(a), f.low + unit(a) + unit(b), f.low + unit(b)};
}

}

SolveResult<double> solve_origin(const SteppedSolid& u, const InitValues& init, std::vector<Pt> order) {
    auto vert = [&](const Pt& p) {
        double v = init.at(p);
        if (!(v > 0)) fail(Err::NonPositive, "initial value at " + pt_str(p) + " is not positive");
        return v;
    };
    auto face = [](const FaceKey& f, auto& gat) {
        auto c = face_corners(f);
        return std::sqrt(gat(c[0]) * gat(c[2]) + gat(c[1]) * gat(c[3]));
    };
    return run<double>(u, std::move(order), vert, face, true);
}

SolveResult<LaurentPoly> solve_origin_symbolic(const SurfaceGraph& s, const RegPtr& reg, std::vector<Pt> order, bool check) {
    auto vert = [&](const Pt& p) {
        int v = s.vertex(p);
        if (v < 0) fail(Err::WindowTooSmall, "window misses vertex " + pt_str(p));
        return LaurentPoly::var(reg, v);
    };
    auto face = [&](const FaceKey& f, auto&) {
        int i = s.face(f);
        if (i < 0) fail(Err::WindowTooSmall, "window misses face " + face_name(f));
        return LaurentPoly::var(reg, reg->n_vertex() + i);
    };
    return run<LaurentPoly>(s.solid, std::move(order), vert, face, check);
}

namespace {

// the two three-face stars around the bottom and the top corner of a cube
struct Star {
    QuadGraph g;
    std::vector<int> root;          // registry variable of each face root
    std::vector<int> var;           // registry variable of each vertex
    std::map<int, int> boundary;    // edge -> hexagon position
    int centre;                     // registry variable of the centre
};

const char* kNames[] = {"g", "g1", "g2", "g3", "g12", "g13", "g23", "g123"};
const char* kVars[] = {"t", "t1", "t2", "t3", "t12", "t13", "t23", "T"};

RegPtr yb_registry() {
    // t = sqrt(g) etc; T = sqrt(g123); X1 Y2 Z3 stay formal on the top side
    std::vector<std::string> names{"t", "t1", "t2", "t3", "t12", "t13", "t23", "T", "X1", "Y2", "Z3"};
    auto sq = [](int a, int b, int c, int d) {
        Terms t;
        auto m1 = a < b ? Mono{{a, 2}, {b, 2}} : Mono{{b, 2}, {a, 2}};
        auto m2 = c < d ? Mono{{c, 2}, {d, 2}} : Mono{{d, 2}, {c, 2}};
        t[m1] += 1;
        t[m2] += 1;
        return t;
    };
    std::vector<VarRegistry::Root> roots{{"X", sq(0, 6, 2, 3)}, {"Y", sq(0, 5, 1, 3)}, {"Z", sq(0, 4, 1, 2)}};
    return std::make_shared<const VarRegistry>(names, roots);
}

Star make_star(bool top, const RegPtr& reg) {
    std::vector<Vertex> vs;
    for (int i = 0; i < 8; ++i) {
        bool black = (i == 0 || i == 4 || i == 5 || i == 6);
        vs.push_back({kNames[i], black, 0, 0});
    }
    std::vector<Face> fs;
    std::vector<std::string> roots;
    if (!top) {
        fs = {{"Z", {0, 1, 4, 2}, {}}, {"X", {0, 2, 6, 3}, {}}, {"Y", {0, 3, 5, 1}, {}}};
        roots = {"Z", "X", "Y"};
    } else {
        fs = {{"X1", {5, 1, 4, 7}, {}}, {"Y2", {4, 2, 6, 7}, {}}, {"Z3", {6, 3, 5, 7}, {}}};
        roots = {"X1", "Y2", "Z3"};
    }
    Star s;
    s.g = QuadGraph::build(vs, fs);
    for (auto& r : roots) s.root.push_back(reg->at(r));
    for (int i = 0; i < 8; ++i) s.var.push_back(reg->at(kVars[i]));
    s.centre = s.var[top ? 7 : 0];
    const int hex[6][2] = {{1, 4}, {4, 2}, {2, 6}, {6, 3}, {3, 5}, {5, 1}};
    for (int e = 0; e < s.g.n_edges(); ++e) {
        auto [a, b] = s.g.edge_ends[e];
        for (int k = 0; k < 6; ++k)
            if ((hex[k][0] == a && hex[k][1] == b) || (hex[k][0] == b && hex[k][1] == a)) s.boundary[e] = k;
    }
    return s;
}

struct PatternSums {
    LaurentPoly lhs, rhs;
    int lhs_configs = 0, rhs_configs = 0;
};

std::map<std::string, PatternSums> collect(const RegPtr& reg) {
    std::map<std::string, PatternSums> out;
    for (bool top : {false, true}) {
        Star s = make_star(top, reg);
        enumerate_configs(s.g, BoundarySpec{}, [&](const LoopConfig& c) {
            std::string key(18, '?');
            int loops = 0;
            for (auto& st : trace_strands(s.g, c)) {
                if (st.closed) {
                    ++loops;
                    continue;
                }
                int crossings = 0;
                for (size_t k = 0; k < st.half_edges.size(); k += 2)
                    if (picture(c[st.half_edges[k].first]).type == 5) ++crossings;
                auto end = [&](const std::pair<int, int>& h) { return s.boundary.at(s.g.faces[h.first].edges[h.second]); };
                int a = end(st.half_edges.front()), b = end(st.half_edges.back());
                for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
                    key[3 * p] = st.colour == Red ? 'r' : 'b';
                    key[3 * p + 1] = char('0' + q);
                    key[3 * p + 2] = char('0' + crossings % 2);
                }
            }
            std::map<int, int> doubled;
            int root = 0;
            Mono m;
            for (int f = 0; f < 3; ++f) {
                auto& cs = s.g.faces[f].corners;
                int r = 0;
                add_face_exponents(picture(c[f]).type, {s.var[cs[0]], s.var[cs[1]], s.var[cs[2]], s.var[cs[3]]}, doubled, r);
                if (r) m = mono_mul(m, Mono{{s.root[f], 1}});
            }
            doubled[s.centre] -= 4;
            Mono t;
            for (auto& [v, e] : doubled)
                if (e) t.push_back({v, e});
            m = mono_mul(m, t);
            auto& ps = out[key];
            if (!ps.lhs.registry()) ps.lhs = ps.rhs = LaurentPoly(reg);
            auto w = LaurentPoly::monomial(reg, m, mpq_class(1 << loops));
            if (top) {
                ps.rhs += w;
                ps.rhs_configs += 1 << loops;
            } else {
                ps.lhs += w;
                ps.lhs_configs += 1 << loops;
            }
        });
    }
    return out;
}

// clears the top-corner quantities: returns (lhs * N^k, rhs with g123 = N / g^2 and items 2-4, times N^k)
std::pair<LaurentPoly, LaurentPoly> substitute(const RegPtr& reg, const LaurentPoly& lhs, const LaurentPoly& rhs) {
    auto P = [&](const std::string& s) { return lp_parse(reg, s); };
    auto N = P("2*t1^2*t2^2*t3^2 + t^2*(t1^2*t23^2 + t2^2*t13^2 + t3^2*t12^2) + 2*X*Y*Z");
    auto X1 = P("(t1^2*X + Y*Z)/t^2"), Y2 = P("(t2^2*Y + X*Z)/t^2"), Z3 = P("(t3^2*Z + X*Y)/t^2");
    int T = reg->at("T"), vx = reg->at("X1"), vy = reg->at("Y2"), vz = reg->at("Z3"), t = reg->at("t");
    int k = 0;
    for (auto& [m, c] : rhs.terms()) {
        int e = mono_exp(m, T);
        if (e % 2) fail(Err::Internal, "odd power of the top corner");
        k = std::max(k, -e / 2);
    }
    LaurentPoly out(reg);
    for (auto& [m, c] : rhs.terms()) {
        Mono rest;
        int e = 0, a = 0, b = 0, d = 0;
        for (auto [v, x] : m) {
            if (v == T) e = x / 2;
            else if (v == vx) a = x;
            else if (v == vy) b = x;
            else if (v == vz) d = x;
            else rest.push_back({v, x});
        }
        auto term = LaurentPoly::monomial(reg, rest, c) * N.pow(e + k) * LaurentPoly::var(reg, t, -4 * e) * X1.pow(a) *
                    Y2.pow(b) * Z3.pow(d);
        out += term;
    }
    return {lhs * N.pow(k), out};
}

struct RowExpect {
    const char* lhs;
    const char* rhs;
};

const RowExpect kRows[7] = {
    {"2*t1^4*t2^4*t3^4/t^4 + 2*t1^2*t2^2*t3^2*X*Y*Z/t^4 + t1^2*t2^4*t3^2*t13^2/t^2 + t1^2*t2^2*t3^4*t12^2/t^2 + "
     "t1^4*t2^2*t3^2*t23^2/t^2",
     "t1^2*t2^2*t3^2*T^2"},
    {"t1^2*t3^2*t12^2*t23^2", "t1^2*t3^2*t12^2*t23^2"},
    {"t1^2*t3^2*t12*t23*X*Z/t^2 + t1^2*t2^2*t3^2*t12*t23*Y/t^2", "t1^2*t3^2*t12*t23*Y2"},
    {"t1*t2^2*t3*t13*t23*Y*Z/t^2 + t1^3*t2^2*t3*t13*t23*X/t^2", "t1*t2^2*t3*t13*t23*X1"},
    {"2*t1^3*t2^4*t3^3*Y/t^4 + 2*t1^3*t2^2*t3^3*X*Z/t^4 + t1*t2^2*t3*t13^2*X*Z/t^2 + t1^3*t2^2*t3*t23^2*Y/t^2 + "
     "t1*t2^2*t3^3*t12^2*Y/t^2",
     "t1*t2^2*t3*X1*Z3"},
    {"t1*t2^2*t3*t12*t13^2*t23", "t1*t2^2*t3*t12*t13^2*t23"},
    {"t1*t3*t12*t23*X*Y*Z/t^2 + t1^3*t2^2*t3^3*t12*t23/t^2", "t1*t3*t12*t23*X1*Y2*Z3/T^2 + t1*t3*t12^3*t13^2*t23^3/T^2"},
};

std::string rotate_key(const std::string& k) {
    std::string r(k.size(), '?');
    for (int p = 0; p < 6; ++p) {
        int q = (p + 3) % 6;
        r[3 * q] = k[3 * p];
        r[3 * q + 1] = k[3 * p + 1] == '?' ? '?' : char('0' + (k[3 * p + 1] - '0' + 3) % 6);
        r[3 * q + 2] = k[3 * p + 2];
    }
    return r;
}

bool holds(const RegPtr& reg, const PatternSums& ps) {
    auto [l, r] = substitute(reg, ps.lhs, ps.rhs);
    return l == r;
}

}

YBRow yang_baxter_row_check(int row, bool side_swap) {
    if (row < 1 || row > 7) fail(Err::Input, "Yang-Baxter rows are numbered 1 to 7");
    auto reg = yb_registry();
    auto table = collect(reg);
    auto el = lp_parse(reg, kRows[row - 1].lhs), er = lp_parse(reg, kRows[row - 1].rhs);
    YBRow out;
    out.row = row;
    out.side_swap = side_swap;
    for (auto& [key, ps] : table) {
        if (ps.lhs != el || ps.rhs != er) continue;
        std::string k = side_swap ? rotate_key(key) : key;
        auto it = table.find(k);
        if (it == table.end()) break;
        auto& q = it->second;
        out.found = !side_swap || (q.lhs_configs == ps.rhs_configs && q.rhs_configs == ps.lhs_configs);
        out.pattern = k;
        out.lhs = q.lhs.str();
        out.rhs = q.rhs.str();
        out.lhs_configs = q.lhs_configs;
        out.rhs_configs = q.rhs_configs;
        out.holds = holds(reg, q);
        break;
    }
    return out;
}

YBCensus yang_baxter_all_patterns() {
    auto reg = yb_registry();
    YBCensus c;
    for (auto& [key, ps] : collect(reg)) {
        ++c.patterns;
        if (!holds(reg, ps)) ++c.failures;
    }
    return c;
}

}
