#include "taut.hpp"
#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include "json.hpp"

namespace c2l {

namespace {

bool black_point(const Pt& x) { return (height(x) % 2 + 2) % 2 == 0; }

// leaves face f through slot s and follows the strand; returns the boundary edge reached, -1 when an
// unassigned face stops it, -2 when the strand closes on itself
int follow(const QuadGraph& g, const LoopConfig& c, int f, int s) {
    int f0 = f, s0 = s;
    for (int guard = 0; guard < 8 * int(g.faces.size()) + 8; ++guard) {
        int e = g.faces[f].edges[s];
        if (g.is_external(e)) return e;
        int nf = -1, ns = -1;
        for (auto& inc : g.edge_faces[e])
            if (inc.face != f || inc.slot != s) {
                nf = inc.face;
                ns = inc.slot;
            }
        if (c[nf] < 0) return -1;
        f = nf;
        s = picture(c[nf]).partner[ns];
        if (f == f0 && s == s0) return -2;
    }
    return -2;
}

}

int sigma0_picture(const TautSpace& t, int face) { return black_point(t.surface.keys[face].low) ? 1 : 3; }

TautSpace TautSpace::build(const SteppedSolid& u, int extra) {
    if (!is_regular(u).regular) fail(Err::Input, "stepped solid is not monotone");
    TautSpace t;
    t.solid = u;
    t.inner = solve_window(u) + extra;
    t.surface = surface_box(u, t.inner + 1);
    t.reg = surface_registry(t.surface);
    auto& g = t.surface.graph;
    int F = int(g.faces.size());
    t.sigma0.assign(F, 0);
    t.frozen.assign(F, 0);
    for (int f = 0; f < F; ++f) {
        t.sigma0[f] = sigma0_picture(t, f);
        for (int v : g.faces[f].corners)
            for (int k = 0; k < 3; ++k)
                if (t.surface.points[v][k] < -t.inner) t.frozen[f] = 1;
    }
    t.tracked.assign(g.vertices.size(), 0);
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        auto& p = t.surface.points[v];
        t.tracked[v] = p[0] >= -t.inner && p[1] >= -t.inner && p[2] >= -t.inner;
    }
    // the connectivity to reproduce is the one of the reference configuration on the flat corner
    SteppedSolid flat;
    auto s0 = surface_box(flat, t.inner + 1);
    auto& g0 = s0.graph;
    LoopConfig c0(g0.faces.size());
    for (size_t f = 0; f < c0.size(); ++f) c0[f] = black_point(s0.keys[f].low) ? 1 : 3;
    auto edge_key = [](const QuadGraph& q, int e) {
        auto a = q.vertices[q.edge_ends[e][0]].id, b = q.vertices[q.edge_ends[e][1]].id;
        return a < b ? a + "|" + b : b + "|" + a;
    };
    std::map<std::string, int> ext;
    for (int e = 0; e < g.n_edges(); ++e)
        if (g.is_external(e)) ext[edge_key(g, e)] = e;
    for (auto& st : trace_strands(g0, c0)) {
        if (st.closed) fail(Err::Internal, "reference configuration has a closed loop");
        int a = g0.faces[st.half_edges.front().first].edges[st.half_edges.front().second];
        int b = g0.faces[st.half_edges.back().first].edges[st.half_edges.back().second];
        auto ia = ext.find(edge_key(g0, a)), ib = ext.find(edge_key(g0, b));
        if (ia == ext.end() || ib == ext.end()) fail(Err::Internal, "window boundary differs from the flat corner");
        t.pairing[ia->second] = ib->second;
        t.pairing[ib->second] = ia->second;
    }
    if (t.pairing.size() != ext.size()) fail(Err::Internal, "window boundary differs from the flat corner");
    return t;
}

bool is_taut(const TautSpace& t, const LoopConfig& c) {
    auto& g = t.surface.graph;
    if (c.size() != g.faces.size()) return false;
    for (size_t f = 0; f < c.size(); ++f)
        if (c[f] < 0 || c[f] > 9 || (t.frozen[f] && c[f] != t.sigma0[f])) return false;
    if (!gluing_ok(g, c)) return false;
    for (auto& st : trace_strands(g, c)) {
        if (st.closed) continue;
        int a = g.faces[st.half_edges.front().first].edges[st.half_edges.front().second];
        int b = g.faces[st.half_edges.back().first].edges[st.half_edges.back().second];
        if (t.pairing.at(a) != b) return false;
    }
    return true;
}

std::vector<LoopConfig> enumerate_taut(const TautSpace& t) {
    auto& g = t.surface.graph;
    int F = int(g.faces.size());
    LoopConfig c(F, -1);
    std::vector<int> free;
    for (int f = 0; f < F; ++f) {
        if (t.frozen[f]) c[f] = t.sigma0[f];
        else free.push_back(f);
    }
    // outermost faces first, so that strands leaving the collar close up early
    auto dist = [&](int f) {
        long s = 0;
        for (int v : g.faces[f].corners)
            for (int k = 0; k < 3; ++k) s += long(t.surface.points[v][k]) * t.surface.points[v][k];
        return s;
    };
    std::stable_sort(free.begin(), free.end(), [&](int a, int b) { return dist(a) > dist(b); });
    std::vector<LoopConfig> out;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == free.size()) {
            out.push_back(c);
            return;
        }
        int f = free[i];
        for (int p = 0; p < 10; ++p) {
            auto& pic = picture(p);
            bool ok = true;
            for (int s = 0; s < 4 && ok; ++s) {
                int e = g.faces[f].edges[s];
                for (auto& inc : g.edge_faces[e]) {
                    if (inc.face == f && inc.slot == s) continue;
                    if (c[inc.face] >= 0 && picture(c[inc.face]).colour[inc.slot] != pic.colour[s]) ok = false;
                }
            }
            if (!ok) continue;
            c[f] = p;
            for (int s = 0; s < 4 && ok; ++s) {
                if (pic.partner[s] < s) continue;
                int a = follow(g, c, f, s), b = follow(g, c, f, pic.partner[s]);
                if (a >= 0 && b >= 0 && t.pairing.at(a) != b) ok = false;
            }
            if (ok) rec(i + 1);
            c[f] = -1;
        }
    };
    rec(0);
    return out;
}

namespace {

std::map<int, int> doubled_exponents(const TautSpace& t, const LoopConfig& c, Mono& roots) {
    auto& g = t.surface.graph;
    std::map<int, int> d;
    for (size_t f = 0; f < c.size(); ++f) {
        auto& cs = g.faces[f].corners;
        int r = 0;
        add_face_exponents(picture(c[f]).type, {cs[0], cs[1], cs[2], cs[3]}, d, r);
        if (r) roots.push_back({t.reg->n_vertex() + int(f), 1});
    }
    return d;
}

}

LaurentPoly taut_weight(const TautSpace& t, const LoopConfig& c) {
    Mono roots;
    auto d = doubled_exponents(t, c, roots);
    Mono m;
    for (size_t v = 0; v < t.tracked.size(); ++v) {
        if (!t.tracked[v]) continue;
        int e = d[int(v)] - 4;
        if (e % 2) fail(Err::Internal, "half-integer exponent in a taut weight");
        if (e) m.push_back({int(v), e / 2});
    }
    m.insert(m.end(), roots.begin(), roots.end());
    int n = count_loops(t.surface.graph, c);
    return LaurentPoly::monomial(t.reg, m, mpq_class(1) << n);
}

std::vector<double> vertex_values(const TautSpace& t, const InitValues& init) {
    std::vector<double> v;
    for (auto& p : t.surface.points) v.push_back(init.at(p));
    return v;
}

double taut_weight(const TautSpace& t, const LoopConfig& c, const InitValues& init) {
    return taut_weight(t, c).eval(vertex_values(t, init));
}

LaurentPoly y_taut(const TautSpace& t, const std::vector<LoopConfig>& configs) {
    LaurentPoly y(t.reg);
    for (auto& c : configs) y += taut_weight(t, c);
    return y;
}

double y_taut(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init) {
    auto vals = vertex_values(t, init);
    double s = 0;
    for (auto& c : configs) s += taut_weight(t, c).eval(vals);
    return s;
}

Princ2Report verify_princ2(const TautSpace& t, const std::vector<LoopConfig>& configs) {
    Princ2Report r;
    auto y = y_taut(t, configs);
    auto k = solve_origin_symbolic(t.surface, t.reg).origin;
    r.configs = int(configs.size());
    r.holds = y == k;
    r.taut = y.to_json();
    r.recurrence = k.to_json();
    return r;
}

Princ2Report verify_princ2(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init) {
    Princ2Report r;
    double y = y_taut(t, configs, init);
    double k = solve_origin(t.solid, init).origin;
    r.configs = int(configs.size());
    r.holds = std::abs(y - k) <= 1e-9 * std::max(1.0, std::abs(k));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", y);
    r.taut = buf;
    std::snprintf(buf, sizeof buf, "%.12g", k);
    r.recurrence = buf;
    return r;
}

UnicReport verify_unic(const TautSpace& t, const std::vector<LoopConfig>& configs) {
    UnicReport r;
    auto y = y_taut(t, configs);
    r.monomials = int(y.size());
    r.configs = int(configs.size());
    r.count_ok = r.monomials == r.configs;
    std::map<Mono, int, GrlexLess> seen;
    r.injective = true;
    r.coefficients_ok = true;
    r.reconstruct_ok = true;
    for (auto& c : configs) {
        auto w = taut_weight(t, c);
        auto& [m, coef] = *w.terms().begin();
        if (seen[m]++) r.injective = false;
        auto it = y.terms().find(m);
        if (it == y.terms().end() || it->second != coef) r.coefficients_ok = false;
        try {
            if (reconstruct_from_monomial(t, m, coef) != c) r.reconstruct_ok = false;
        } catch (const Error&) {
            r.reconstruct_ok = false;
        }
    }
    r.vertex_exponents_ok = true;
    r.root_exponents_ok = true;
    for (auto& [m, coef] : y.terms()) {
        for (auto [v, e] : m) {
            if (t.reg->is_root(v)) {
                if (e != 1) r.root_exponents_ok = false;
            } else {
                r.min_exponent = std::min(r.min_exponent, e);
                r.max_exponent = std::max(r.max_exponent, e);
                if (e < -2 || e > 4) r.vertex_exponents_ok = false;
            }
        }
        mpz_class num = coef.get_num();
        if (coef.get_den() != 1 || num <= 0 || (num & (num - 1)) != 0) r.coefficients_ok = false;
    }
    return r;
}

LoopConfig reconstruct_from_monomial(const TautSpace& t, const Mono& m, const mpq_class& coeff) {
    auto& g = t.surface.graph;
    int F = int(g.faces.size()), V = int(g.vertices.size());
    for (auto [v, e] : m)
        if (v < 0 || v >= t.reg->n_vars() || (!t.reg->is_root(v) && !t.tracked[v]) || (t.reg->is_root(v) && e != 1))
            fail(Err::NotAMonomial, "monomial uses a variable outside the taut window");
    LoopConfig c(F, -1);
    for (int f = 0; f < F; ++f)
        if (t.frozen[f]) c[f] = t.sigma0[f];
    // doubled exponent still to be explained at every tracked vertex
    std::vector<int> rest(V, 0);
    for (int v = 0; v < V; ++v)
        if (t.tracked[v]) rest[v] = 2 * mono_exp(m, v) + 4;
    std::vector<std::vector<std::pair<int, int>>> around(V);
    for (int f = 0; f < F; ++f)
        for (int k = 0; k < 4; ++k) around[g.faces[f].corners[k]].push_back({f, k});
    auto settle = [&](int f) {
        std::map<int, int> d;
        int r = 0;
        auto& cs = g.faces[f].corners;
        add_face_exponents(picture(c[f]).type, {cs[0], cs[1], cs[2], cs[3]}, d, r);
        for (auto [v, e] : d) rest[v] -= e;
    };
    for (int f = 0; f < F; ++f)
        if (c[f] >= 0) settle(f);
    int unknown = 0;
    for (int f = 0; f < F; ++f) unknown += c[f] < 0;
    while (unknown > 0) {
        int pick = -1, corner = -1, at = -1;
        for (int v = 0; v < V && pick < 0; ++v) {
            if (!t.tracked[v]) continue;
            int cnt = 0, ff = -1, kk = -1;
            for (auto [f, k] : around[v])
                if (c[f] < 0) {
                    ++cnt;
                    ff = f;
                    kk = k;
                }
            if (cnt == 1) {
                pick = ff;
                corner = kk;
                at = v;
            }
        }
        if (pick < 0) fail(Err::Stuck, "no vertex with a single unknown face");
        bool root = mono_exp(m, t.reg->n_vertex() + pick) > 0;
        bool black = corner % 2 == 0;
        int r = rest[at], type = 0;
        if (root) type = black ? (r == 1 ? 3 : r == 0 ? 4 : 0) : (r == 0 ? 3 : r == 1 ? 4 : 0);
        else type = black ? (r == 2 ? 1 : r == 0 ? 2 : r == 1 ? 5 : 0) : (r == 0 ? 1 : r == 2 ? 2 : r == 1 ? 5 : 0);
        if (!type) fail(Err::NotAMonomial, "exponent at " + g.vertices[at].id + " fits no local picture");
        int colour = -1, slot = -1;
        for (int s = 0; s < 4 && colour < 0; ++s) {
            int e = g.faces[pick].edges[s];
            for (auto& inc : g.edge_faces[e])
                if (inc.face != pick && c[inc.face] >= 0) {
                    colour = picture(c[inc.face]).colour[inc.slot];
                    slot = s;
                }
        }
        if (colour < 0) fail(Err::Stuck, "face " + g.faces[pick].id + " has no known neighbour");
        int chosen = -1;
        for (int p = 0; p < 10; ++p)
            if (picture(p).type == type && picture(p).colour[slot] == colour) chosen = p;
        c[pick] = chosen;
        settle(pick);
        --unknown;
    }
    for (int v = 0; v < V; ++v)
        if (t.tracked[v] && rest[v] != 0) fail(Err::NotAMonomial, "exponents left unexplained");
    if (!is_taut(t, c)) fail(Err::NotAMonomial, "reconstructed configuration is not taut");
    auto w = taut_weight(t, c);
    if (w.terms().begin()->first != m || w.terms().begin()->second != coeff) fail(Err::NotAMonomial, "monomial is not the weight of a taut configuration");
    return c;
}

LoopConfig sample_taut(const TautSpace& t, const std::vector<LoopConfig>& configs, const InitValues& init, unsigned seed) {
    if (configs.empty()) fail(Err::Input, "nothing to sample");
    auto vals = vertex_values(t, init);
    std::vector<double> cum;
    double s = 0;
    for (auto& c : configs) {
        s += taut_weight(t, c).eval(vals);
        cum.push_back(s);
    }
    std::mt19937_64 rng(seed);
    double u = std::uniform_real_distribution<double>(0, s)(rng);
    size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
    return configs[std::min(i, configs.size() - 1)];
}

std::string taut_json(const TautSpace& t, const LoopConfig& c) {
    nlohmann::ordered_json j;
    j["window"] = t.surface.radius;
    j["inner"] = t.inner;
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    auto& g = t.surface.graph;
    for (size_t i = 0; i < c.size(); ++i)
        if (!t.frozen[i]) f[g.faces[i].id] = picture(c[i]).name;
    j["faces"] = f;
    j["loops"] = count_loops(g, c);
    return j.dump();
}

}
