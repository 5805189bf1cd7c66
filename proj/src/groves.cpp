#include "groves.hpp"
#include <functional>
#include <numeric>
#include <set>
#include "json.hpp"

namespace c2l {

std::vector<LoopConfig> filter_no_loops(const QuadGraph& g, const std::vector<LoopConfig>& configs) {
    std::vector<LoopConfig> out;
    for (auto& c : configs)
        if (count_loops(g, c) == 0) out.push_back(c);
    return out;
}

GroveConfig to_grove(const QuadGraph& g, const LoopConfig& c) {
    if (count_loops(g, c) != 0) fail(Err::HasLoops, "configuration has closed loops");
    GroveConfig out(c.size());
    for (size_t f = 0; f < c.size(); ++f) {
        if (c[f] == 1) out[f] = 0;
        else if (c[f] == 3) out[f] = 1;
        else fail(Err::HasLoops, "face " + g.faces[f].id + " carries a red strand, which must close into a loop");
    }
    return out;
}

LoopConfig from_grove(const GroveConfig& grove) {
    LoopConfig c(grove.size());
    for (size_t f = 0; f < grove.size(); ++f) c[f] = grove[f] == 0 ? 1 : 3;
    return c;
}

bool grove_is_forest(const QuadGraph& g, const GroveConfig& grove) {
    std::vector<int> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (size_t f = 0; f < grove.size(); ++f) {
        auto& cs = g.faces[f].corners;
        int a = find(cs[grove[f]]), b = find(cs[grove[f] + 2]);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

std::string grove_json(const QuadGraph& g, const GroveConfig& grove) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (size_t f = 0; f < grove.size(); ++f) {
        auto& cs = g.faces[f].corners;
        j[g.faces[f].id] = g.vertices[cs[grove[f]]].id + "|" + g.vertices[cs[grove[f] + 2]].id;
    }
    return j.dump();
}

namespace {

template <class T, class Vert, class Div>
T fill_cubes(const SteppedSolid& u, Vert vert, Div div) {
    std::map<Pt, T> known;
    auto at = [&](const Pt& p) -> T {
        auto it = known.find(p);
        if (it != known.end()) return it->second;
        return known.emplace(p, vert(p)).first->second;
    };
    for (auto& p : fill_order(u)) {
        Pt e1 = unit(0), e2 = unit(1), e3 = unit(2);
        T num = at(p + e1) * at(p + e2 + e3) + at(p + e2) * at(p + e1 + e3) + at(p + e3) * at(p + e1 + e2);
        known[p + e1 + e2 + e3] = div(num, at(p));
    }
    return at({0, 0, 0});
}

}

double cube_recurrence_solve(const SteppedSolid& u, const InitValues& init) {
    auto vert = [&](const Pt& p) {
        double v = init.at(p);
        if (v == 0) fail(Err::DivZero, "initial value at " + pt_str(p) + " is zero");
        return v;
    };
    return fill_cubes<double>(u, vert, [](double a, double b) { return a / b; });
}

LaurentPoly cube_recurrence_solve(const SurfaceGraph& s, const RegPtr& reg) {
    auto vert = [&](const Pt& p) {
        int v = s.vertex(p);
        if (v < 0) fail(Err::WindowTooSmall, "window misses vertex " + pt_str(p));
        return LaurentPoly::var(reg, v);
    };
    return fill_cubes<LaurentPoly>(s.solid, vert, [](const LaurentPoly& a, const LaurentPoly& b) { return a.div_exact(b); });
}

GroveReport verify_grove_equality(const TautSpace& t, const std::vector<LoopConfig>& configs) {
    GroveReport r;
    auto& g = t.surface.graph;
    auto free = filter_no_loops(g, configs);
    r.loop_free = int(free.size());
    auto sum = y_taut(t, free);
    auto cube = cube_recurrence_solve(t.surface, t.reg);
    r.equal = sum == cube;
    r.groves_sum = sum.to_json();
    r.cube_recurrence = cube.to_json();
    std::set<GroveConfig> seen;
    r.forests = true;
    for (auto& c : free) {
        auto gr = to_grove(g, c);
        seen.insert(gr);
        if (!grove_is_forest(g, gr) || from_grove(gr) != c) r.forests = false;
    }
    r.groves_distinct = int(seen.size()) == r.loop_free;
    r.parity = true;
    auto all = y_taut(t, configs);
    for (auto& [m, q] : all.terms()) {
        bool odd = q.get_den() == 1 && mpz_class(q.get_num() % 2) != 0;
        bool in_free = sum.terms().count(m) > 0;
        if (odd != in_free) r.parity = false;
    }
    for (auto& [m, q] : sum.terms())
        if (!all.terms().count(m)) r.parity = false;
    return r;
}

}
