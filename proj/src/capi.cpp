#include "c2loop/c2loop.h"
#include <cstdlib>
#include <cstring>
#include <random>
#include "ffdimers.hpp"
#include "groves.hpp"
#include "json.hpp"
#include "kashaev.hpp"
#include "limitshape.hpp"
#include "taut.hpp"
#include "verify.hpp"

using namespace c2l;
using ojson = nlohmann::ordered_json;

struct c2l_graph {
    QuadGraph g;
};

struct c2l_solid {
    SteppedSolid u;
};

struct c2l_taut {
    TautSpace t;
    std::vector<LoopConfig> configs;
};

namespace {

thread_local std::string last_error;

template <class F>
int guard(F&& f) {
    try {
        f();
        last_error.clear();
        return C2L_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return int(e.code);
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("bad json: ") + e.what();
        return C2L_ERR_INPUT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return C2L_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return C2L_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(Err::Input, std::string("missing ") + what);
}

void put(char** out, const std::string& s) {
    if (!out) return;
    *out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!*out) throw std::bad_alloc();
    std::memcpy(*out, s.c_str(), s.size() + 1);
}

void put(char** out, const ojson& j) { put(out, j.dump()); }

ojson parsed(const std::string& s) { return ojson::parse(s); }

std::vector<Pt> parse_order(const SteppedSolid& u, const char* order) {
    if (!order || std::strcmp(order, "canonical") == 0) return {};
    std::string s(order);
    if (s.rfind("random:", 0) != 0) fail(Err::Input, "order must be canonical or random:SEED");
    unsigned long seed = 0;
    try {
        seed = std::stoul(s.substr(7));
    } catch (const std::exception&) {
        fail(Err::Input, "bad seed in " + s);
    }
    std::mt19937 rng{unsigned(seed)};
    return random_fill_order(u, rng);
}

BoundarySpec boundary(const QuadGraph& g, const char* text) {
    if (!text) return BoundarySpec{};
    return BoundarySpec::from_json(g, text);
}

ojson value_json(const Value& v) {
    ojson j;
    j["value"] = v.num;
    if (v.exact) j["exact"] = v.exact->str();
    return j;
}

ojson pt_json(const Pt& p) { return ojson::array({p[0], p[1], p[2]}); }

}

extern "C" {

const char* c2l_last_error(void) { return last_error.c_str(); }

const char* c2l_status_name(int status) {
    static const char* names[] = {"ok",           "input",           "verify",          "not_divisible",
                                  "registry_mismatch", "div_zero",    "domain",          "not_free_fermionic",
                                  "loop_track",   "not_flippable",   "window_too_small", "stuck",
                                  "not_a_monomial", "not_found",     "non_positive",    "has_loops",
                                  "intrinsic_violated", "io",        "internal"};
    if (status < 0 || status > C2L_ERR_INTERNAL) return "unknown";
    return names[status];
}

void c2l_free_string(char* s) { std::free(s); }

int c2l_graph_load(const char* json, c2l_graph** out) {
    return guard([&] {
        need(json, "graph json");
        need(out, "output handle");
        *out = new c2l_graph{QuadGraph::from_json(json)};
    });
}

void c2l_graph_free(c2l_graph* g) { delete g; }

int c2l_graph_validate(const c2l_graph* g, int* valid, char** report) {
    return guard([&] {
        need(g, "graph");
        auto r = validate(g->g);
        if (valid) *valid = r.valid;
        ojson j;
        j["valid"] = r.valid;
        j["vertices"] = g->g.vertices.size();
        j["faces"] = g->g.faces.size();
        j["edges"] = g->g.n_edges();
        j["euler"] = r.euler;
        j["violations"] = r.violations;
        put(report, j);
    });
}

int c2l_graph_tracks(const c2l_graph* g, char** report) {
    return guard([&] {
        need(g, "graph");
        auto& q = g->g;
        ojson tracks = ojson::array();
        bool loops = false;
        for (auto& t : train_tracks(q)) {
            ojson e = ojson::array();
            for (int k : t.edges) e.push_back(k);
            tracks.push_back({{"loop", t.is_loop}, {"edges", e}});
            loops = loops || t.is_loop;
        }
        ojson j;
        j["tracks"] = tracks;
        if (!loops) {
            auto c = track_census(q);
            j["census"] = {{"tracks", c.tracks},       {"external_edges", c.ext_edges}, {"internal_edges", c.int_edges},
                           {"vertices", c.vertices},   {"faces", c.faces},              {"pairs_ok", c.pairs_ok},
                           {"edges_ok", c.edges_ok},   {"kernel_ok", c.kernel_ok}};
        }
        put(report, j);
    });
}

int c2l_param_solve(const c2l_graph* g, const char* weights_json, char** report) {
    return guard([&] {
        need(g, "graph");
        need(weights_json, "weights json");
        auto& q = g->g;
        auto p = solve_parametrization(q, weights_from_json(q, weights_json));
        ojson gv = ojson::object(), faces = ojson::object();
        for (size_t v = 0; v < q.vertices.size(); ++v) gv[q.vertices[v].id] = p.g[v];
        for (size_t f = 0; f < q.faces.size(); ++f)
            faces[q.faces[f].id] = {{"ratio", p.ratio[f]}, {"scale", p.scale[f]}};
        ojson j;
        j["g"] = gv;
        j["faces"] = faces;
        j["exact"] = p.exact_ok;
        put(report, j);
    });
}

int c2l_loops_enumerate(const c2l_graph* g, const char* weights_json, const char* boundary_json, char** report) {
    return guard([&] {
        need(g, "graph");
        need(weights_json, "weights json");
        auto& q = g->g;
        auto w = weights_from_json(q, weights_json);
        ojson list = ojson::array();
        enumerate_configs(q, boundary(q, boundary_json), [&](const LoopConfig& c) {
            auto j = parsed(config_json(q, c));
            j["loops"] = count_loops(q, c);
            j["weight"] = value_json(weight(q, c, w));
            list.push_back(j);
        });
        ojson j;
        j["count"] = list.size();
        j["configs"] = list;
        put(report, j);
    });
}

int c2l_loops_partition(const c2l_graph* g, const char* weights_json, const char* boundary_json, char** report) {
    return guard([&] {
        need(g, "graph");
        need(weights_json, "weights json");
        auto& q = g->g;
        auto z = partition_function(q, weights_from_json(q, weights_json), boundary(q, boundary_json));
        put(report, value_json(z));
    });
}

int c2l_dimers_verify(const c2l_graph* g, const char* weights_json, int* holds, char** report) {
    return guard([&] {
        need(g, "graph");
        need(weights_json, "weights json");
        auto& q = g->g;
        auto w = weights_from_json(q, weights_json);
        auto r = verify_correspondence(q, w);
        auto m = verify_blue_marginal(q, w);
        bool ok = r.holds && m.mismatches == 0;
        if (holds) *holds = ok;
        ojson j;
        j["z_loop"] = value_json(r.z_loop);
        j["lambda_product"] = value_json(r.lambda_prod);
        j["z_dimer"] = value_json(r.z_dim);
        j["rhs"] = value_json(r.rhs);
        j["correspondence"] = r.holds;
        j["exact"] = r.exact && m.exact;
        j["blue_path_classes"] = m.classes;
        j["blue_path_mismatches"] = m.mismatches;
        j["holds"] = ok;
        put(report, j);
    });
}

int c2l_dimers_road_probabilities(const c2l_graph* g, const char* weights_json, char** report) {
    return guard([&] {
        need(g, "graph");
        need(weights_json, "weights json");
        auto& q = g->g;
        auto d = build_gq(q, weights_from_json(q, weights_json));
        ojson roads = ojson::array();
        for (size_t i = 0; i < d.edges.size(); ++i)
            if (d.edges[i].road && d.edges[i].b >= 0) {
                auto j = value_json(road_probability(d, int(i)));
                j["edge"] = d.edges[i].edge;
                roads.push_back(j);
            }
        put(report, ojson{{"roads", roads}});
    });
}

int c2l_dimers_free_energy(const char* domain_json, int grid, double* value) {
    return guard([&] {
        need(domain_json, "domain json");
        need(value, "output value");
        if (grid < 64) fail(Err::Input, "grid must be at least 64");
        *value = free_energy(TorusDomain::from_json(domain_json), grid);
    });
}

int c2l_lobachevsky_free_energy(double theta, double* value) {
    return guard([&] {
        need(value, "output value");
        *value = lobachevsky_free_energy(theta);
    });
}

int c2l_solid_load(const char* json, c2l_solid** out) {
    return guard([&] {
        need(json, "solid json");
        need(out, "output handle");
        *out = new c2l_solid{SteppedSolid::from_json(json)};
    });
}

void c2l_solid_free(c2l_solid* s) { delete s; }

int c2l_solid_regular(const c2l_solid* s, int* regular, double* radius) {
    return guard([&] {
        need(s, "solid");
        auto r = is_regular(s->u);
        if (regular) *regular = r.regular;
        if (radius) *radius = r.radius;
    });
}

int c2l_stepped_surface(const c2l_solid* s, int window, char** report) {
    return guard([&] {
        need(s, "solid");
        int w = window < 0 ? default_window(s->u) : window;
        auto j = parsed(surface_json(surface_graph(s->u, w)));
        ojson add = ojson::array();
        for (auto& p : addable_positions(s->u)) add.push_back(pt_json(p));
        j["addable"] = add;
        put(report, j);
    });
}

int c2l_kashaev_solve_numeric(const c2l_solid* s, const char* init_json, const char* order, double* origin,
                              char** report) {
    return guard([&] {
        need(s, "solid");
        InitValues init;
        if (init_json) init = InitValues::from_json(init_json);
        auto r = solve_origin(s->u, init, parse_order(s->u, order));
        if (origin) *origin = r.origin;
        ojson j;
        j["origin"] = r.origin;
        j["steps"] = r.steps;
        j["max_residual"] = r.max_residual;
        j["residuals_ok"] = r.residuals_ok;
        j["face_invariant_ok"] = r.ff_ok;
        put(report, j);
    });
}

int c2l_kashaev_solve_symbolic(const c2l_solid* s, const char* order, char** poly_json) {
    return guard([&] {
        need(s, "solid");
        auto surf = surface_box(s->u, solve_window(s->u) + 1);
        auto reg = surface_registry(surf);
        auto r = solve_origin_symbolic(surf, reg, parse_order(s->u, order));
        put(poly_json, r.origin.to_json());
    });
}

int c2l_kashaev_yb_row(int row, int side_swap, int* holds, char** report) {
    return guard([&] {
        if (row < 1 || row > 7) fail(Err::Input, "row must be in 1..7");
        auto r = yang_baxter_row_check(row, side_swap != 0);
        if (holds) *holds = r.found && r.holds;
        ojson j;
        j["row"] = r.row;
        j["side_swap"] = r.side_swap;
        j["found"] = r.found;
        j["holds"] = r.holds;
        j["pattern"] = r.pattern;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["lhs_configs"] = r.lhs_configs;
        j["rhs_configs"] = r.rhs_configs;
        put(report, j);
    });
}

int c2l_taut_build(const c2l_solid* s, int extra, c2l_taut** out) {
    return guard([&] {
        need(s, "solid");
        need(out, "output handle");
        if (extra < 0) fail(Err::Input, "extra window must be nonnegative");
        auto t = TautSpace::build(s->u, extra);
        auto cs = enumerate_taut(t);
        *out = new c2l_taut{std::move(t), std::move(cs)};
    });
}

void c2l_taut_free(c2l_taut* t) { delete t; }

int c2l_taut_count(const c2l_taut* t, int* count) {
    return guard([&] {
        need(t, "taut space");
        need(count, "output count");
        *count = int(t->configs.size());
    });
}

int c2l_taut_enumerate(const c2l_taut* t, char** report) {
    return guard([&] {
        need(t, "taut space");
        ojson list = ojson::array();
        for (auto& c : t->configs) {
            auto j = parsed(taut_json(t->t, c));
            j["weight"] = parsed(taut_weight(t->t, c).to_json());
            list.push_back(j);
        }
        ojson j;
        j["solid"] = parsed(t->t.solid.to_json());
        j["count"] = list.size();
        j["configs"] = list;
        put(report, j);
    });
}

int c2l_taut_partition(const c2l_taut* t, const char* init_json, char** report) {
    return guard([&] {
        need(t, "taut space");
        ojson j;
        j["configs"] = t->configs.size();
        if (init_json) {
            j["value"] = y_taut(t->t, t->configs, InitValues::from_json(init_json));
        } else {
            auto y = y_taut(t->t, t->configs);
            j["terms"] = y.size();
            j["poly"] = parsed(y.to_json());
        }
        put(report, j);
    });
}

int c2l_taut_verify(const c2l_taut* t, const char* init_json, int* holds, char** report) {
    return guard([&] {
        need(t, "taut space");
        ojson j;
        bool ok;
        if (init_json) {
            auto r = verify_princ2(t->t, t->configs, InitValues::from_json(init_json));
            j["taut"] = r.taut;
            j["recurrence"] = r.recurrence;
            j["recurrence_equal"] = r.holds;
            ok = r.holds;
        } else {
            auto r = verify_princ2(t->t, t->configs);
            auto u = verify_unic(t->t, t->configs);
            j["recurrence_equal"] = r.holds;
            j["monomials"] = u.monomials;
            j["configs"] = u.configs;
            j["count_ok"] = u.count_ok;
            j["injective"] = u.injective;
            j["vertex_exponents_ok"] = u.vertex_exponents_ok;
            j["root_exponents_ok"] = u.root_exponents_ok;
            j["coefficients_ok"] = u.coefficients_ok;
            j["reconstruct_ok"] = u.reconstruct_ok;
            j["min_exponent"] = u.min_exponent;
            j["max_exponent"] = u.max_exponent;
            ok = r.holds && u.all();
        }
        j["holds"] = ok;
        if (holds) *holds = ok;
        put(report, j);
    });
}

int c2l_taut_reconstruct(const c2l_taut* t, int* holds, char** report) {
    return guard([&] {
        need(t, "taut space");
        int ok = 0;
        ojson list = ojson::array();
        for (auto& c : t->configs) {
            auto w = taut_weight(t->t, c);
            auto& [m, q] = *w.terms().begin();
            bool same = reconstruct_from_monomial(t->t, m, q) == c;
            ok += same;
            list.push_back({{"weight", parsed(w.to_json())}, {"round_trip", same}});
        }
        bool all = ok == int(t->configs.size());
        if (holds) *holds = all;
        put(report, ojson{{"monomials", list.size()}, {"round_trips", ok}, {"holds", all}, {"results", list}});
    });
}

int c2l_taut_sample(const c2l_taut* t, const char* init_json, unsigned seed, char** report) {
    return guard([&] {
        need(t, "taut space");
        InitValues init;
        if (init_json) init = InitValues::from_json(init_json);
        auto c = sample_taut(t->t, t->configs, init, seed);
        auto j = parsed(taut_json(t->t, c));
        j["seed"] = seed;
        j["weight"] = taut_weight(t->t, c, init);
        j["partition"] = y_taut(t->t, t->configs, init);
        put(report, j);
    });
}

int c2l_groves_verify(const c2l_taut* t, int* holds, char** report) {
    return guard([&] {
        need(t, "taut space");
        auto r = verify_grove_equality(t->t, t->configs);
        if (holds) *holds = r.all();
        auto& g = t->t.surface.graph;
        ojson groves = ojson::array();
        for (auto& c : filter_no_loops(g, t->configs)) groves.push_back(parsed(grove_json(g, to_grove(g, c))));
        ojson j;
        j["loop_free"] = r.loop_free;
        j["equal"] = r.equal;
        j["groves_distinct"] = r.groves_distinct;
        j["forests"] = r.forests;
        j["parity"] = r.parity;
        j["holds"] = r.all();
        j["groves_sum"] = parsed(r.groves_sum);
        j["cube_recurrence"] = parsed(r.cube_recurrence);
        j["groves"] = groves;
        put(report, j);
    });
}

int c2l_shape_params(double a, double b, double c, char** report) {
    return guard([&] {
        auto p = rs_from_abc(a, b, c);
        auto k = rho_coeffs(p.R, p.S);
        ojson j;
        j["a"] = p.a;
        j["b"] = p.b;
        j["c"] = p.c;
        j["d"] = p.d;
        j["R"] = p.R;
        j["S"] = p.S;
        j["intrinsic_residual"] = intrinsic_residual(p.R, p.S);
        j["lambda"] = lambda_param(p.R);
        j["coefficients"] = {{"alpha", k.alpha},   {"beta", k.beta},   {"gamma", k.gamma},
                             {"alpha2", k.alpha2}, {"beta2", k.beta2}, {"gamma2", k.gamma2}};
        j["theta"] = k.theta();
        put(report, j);
    });
}

int c2l_shape_rho(int n, double r, const char* out_path, char** report) {
    return guard([&] {
        auto f = rho_field(n, r);
        if (out_path) export_heatmap(f, out_path);
        ojson j;
        j["N"] = f.N;
        j["R"] = f.R;
        j["S"] = f.S;
        j["points"] = f.rho.size();
        j["residual"] = rho_field_residual(f);
        j["rho_111"] = f.at({1, 1, 1});
        if (out_path) j["out"] = out_path;
        put(report, j);
    });
}

int c2l_shape_curve(double r, int points, const char* out_path, char** report) {
    return guard([&] {
        double lambda = lambda_param(r);
        auto c = dual_curve(lambda, points);
        if (out_path) export_curve(c, out_path);
        ojson j;
        j["R"] = r;
        j["lambda"] = lambda;
        j["outer_points"] = c.outer.size();
        j["inner_points"] = c.inner.size();
        if (out_path) j["out"] = out_path;
        put(report, j);
    });
}

int c2l_criteria(void) { return kCriteria; }

int c2l_verify_criterion(int id, const char* fixture_dir, int quick, int* passed, int* warning, char** report) {
    return guard([&] {
        need(fixture_dir, "fixture directory");
        auto r = run_criterion(id, fixture_dir, quick != 0);
        if (passed) *passed = r.pass;
        if (warning) *warning = r.warning;
        put(report, criterion_json(r));
    });
}

}
