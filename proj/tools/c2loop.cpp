#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include "CLI11.hpp"
#include "c2loop/c2loop.h"
#include "json.hpp"

using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string input, second, boundary, init, out, order = "canonical", mode = "numeric", json_path;
    std::string fixtures = C2LOOP_FIXTURES;
    std::optional<double> theta;
    double a = 1, b = 1, c = 1, R = 1;
    int window = -1, grid = 512, row = 1, N = 40, points = 720, extra = 0;
    unsigned seed = 0;
    bool symbolic = false, swap = false, quick = false, timing = false;
    std::vector<int> criteria;
};

struct Failure {
    int code;
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Failure{2, "cannot read " + path};
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void check(int status, const std::string& what) {
    if (status == C2L_OK) return;
    int code = status == C2L_ERR_VERIFY ? 1 : 2;
    throw Failure{code, what + ": " + c2l_status_name(status) + ": " + c2l_last_error()};
}

std::string take(char* s) {
    std::string r(s ? s : "");
    c2l_free_string(s);
    return r;
}

// numbers are printed with 12 significant digits
void round12(ojson& j) {
    if (j.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
        j = std::strtod(buf, nullptr);
    } else if (j.is_structured()) {
        for (auto& x : j) round12(x);
    }
}

int emit(const RunConfig& cfg, ojson j) {
    round12(j);
    std::string text = j.dump();
    std::cout << text << "\n";
    if (!cfg.json_path.empty()) {
        std::ofstream f(cfg.json_path);
        if (!f) throw Failure{2, "cannot write " + cfg.json_path};
        f << text << "\n";
    }
    return 0;
}

ojson report(char* s) { return ojson::parse(take(s)); }

struct Graph {
    c2l_graph* g = nullptr;
    explicit Graph(const std::string& path) { check(c2l_graph_load(slurp(path).c_str(), &g), "graph " + path); }
    ~Graph() { c2l_graph_free(g); }
};

struct Solid {
    c2l_solid* s = nullptr;
    explicit Solid(const std::string& path) { check(c2l_solid_load(slurp(path).c_str(), &s), "solid " + path); }
    ~Solid() { c2l_solid_free(s); }
};

struct Taut {
    c2l_taut* t = nullptr;
    Taut(const Solid& s, int extra) { check(c2l_taut_build(s.s, extra, &t), "taut configurations"); }
    ~Taut() { c2l_taut_free(t); }
};

int verdict(const RunConfig& cfg, ojson j, int holds, const std::string& statement) {
    emit(cfg, std::move(j));
    if (holds) return 0;
    std::cerr << "verification failed: " << statement << "\n";
    return 1;
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int verify_all(const RunConfig& cfg) {
    std::vector<int> ids = cfg.criteria;
    if (ids.empty())
        for (int i = 1; i <= c2l_criteria(); ++i) ids.push_back(i);
    ojson list = ojson::array();
    int failed = 0, warnings = 0;
    for (int id : ids) {
        int pass = 0, warn = 0;
        char* s = nullptr;
        check(c2l_verify_criterion(id, cfg.fixtures.c_str(), cfg.quick, &pass, &warn, &s), "criterion");
        auto j = report(s);
        if (!cfg.timing) j.erase("seconds");
        list.push_back(j);
        if (!pass) {
            ++failed;
            std::cerr << "criterion " << id << " failed: " << j["name"].get<std::string>() << "\n";
        }
        if (warn) {
            ++warnings;
            std::cerr << "criterion " << id << " warning: " << j["name"].get<std::string>() << "\n";
        }
    }
    emit(cfg, ojson{{"quick", cfg.quick}, {"failed", failed}, {"warnings", warnings}, {"criteria", list}});
    return failed ? 1 : 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"c2loop: loop model, dimers and the Kashaev recurrence"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--json", cfg.json_path, "also write the summary to this file");
    std::function<int()> action;

    auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

    auto graph = app.add_subcommand("graph", "quadrangulations")->require_subcommand(1);
    auto gv = graph->add_subcommand("validate", "check a quadrangulation");
    gv->add_option("graph", cfg.input)->required();
    on(gv, [&] {
        Graph g(cfg.input);
        int valid = 0;
        char* s = nullptr;
        check(c2l_graph_validate(g.g, &valid, &s), "validate");
        return verdict(cfg, report(s), valid, "the graph is not a valid bipartite quadrangulation");
    });
    auto gt = graph->add_subcommand("tracks", "train tracks and their census");
    gt->add_option("graph", cfg.input)->required();
    on(gt, [&] {
        Graph g(cfg.input);
        char* s = nullptr;
        check(c2l_graph_tracks(g.g, &s), "tracks");
        return emit(cfg, report(s));
    });

    auto param = app.add_subcommand("param", "vertex parametrization")->require_subcommand(1);
    auto ps = param->add_subcommand("solve", "solve for vertex values from face weights");
    ps->add_option("graph", cfg.input)->required();
    ps->add_option("weights", cfg.second)->required();
    on(ps, [&] {
        Graph g(cfg.input);
        char* s = nullptr;
        check(c2l_param_solve(g.g, slurp(cfg.second).c_str(), &s), "parametrization");
        auto j = report(s);
        bool exact = j["exact"].get<bool>();
        return verdict(cfg, j, exact, "the parametrization does not reproduce the face ratios");
    });

    auto loops = app.add_subcommand("loops", "loop configurations")->require_subcommand(1);
    for (auto name : {"enumerate", "partition"}) {
        auto sub = loops->add_subcommand(name, std::string(name) + " loop configurations");
        sub->add_option("graph", cfg.input)->required();
        sub->add_option("weights", cfg.second)->required();
        sub->add_option("--boundary", cfg.boundary, "boundary condition json");
        bool enumerate = std::string(name) == "enumerate";
        on(sub, [&, enumerate] {
            Graph g(cfg.input);
            std::string w = slurp(cfg.second), b = cfg.boundary.empty() ? "" : slurp(cfg.boundary);
            char* s = nullptr;
            auto f = enumerate ? c2l_loops_enumerate : c2l_loops_partition;
            check(f(g.g, w.c_str(), opt(b), &s), "loops");
            return emit(cfg, report(s));
        });
    }

    auto dimers = app.add_subcommand("dimers", "dimers on the decorated graph")->require_subcommand(1);
    auto dv = dimers->add_subcommand("verify", "compare loop and dimer partition functions");
    dv->add_option("graph", cfg.input)->required();
    dv->add_option("weights", cfg.second)->required();
    on(dv, [&] {
        Graph g(cfg.input);
        int holds = 0;
        char* s = nullptr;
        check(c2l_dimers_verify(g.g, slurp(cfg.second).c_str(), &holds, &s), "dimers");
        return verdict(cfg, report(s), holds,
                       "loop partition function differs from the face factor times the squared dimer partition function");
    });
    auto dr = dimers->add_subcommand("roads", "probability of every road");
    dr->add_option("graph", cfg.input)->required();
    dr->add_option("weights", cfg.second)->required();
    on(dr, [&] {
        Graph g(cfg.input);
        char* s = nullptr;
        check(c2l_dimers_road_probabilities(g.g, slurp(cfg.second).c_str(), &s), "roads");
        return emit(cfg, report(s));
    });
    auto df = dimers->add_subcommand("free-energy", "free energy of a torus domain");
    df->add_option("domain", cfg.input)->required();
    df->add_option("--grid", cfg.grid, "quadrature grid size")->capture_default_str();
    df->add_option("--theta", cfg.theta, "override the angle of the domain");
    on(df, [&] {
        auto d = ojson::parse(slurp(cfg.input));
        if (cfg.theta) d["theta"] = *cfg.theta;
        double f = 0;
        check(c2l_dimers_free_energy(d.dump().c_str(), cfg.grid, &f), "free energy");
        ojson j{{"grid", cfg.grid}, {"free_energy", f}};
        if (d.contains("theta")) {
            double l = 0;
            if (c2l_lobachevsky_free_energy(d["theta"].get<double>(), &l) == C2L_OK) {
                j["closed_form"] = l;
                j["difference"] = f - l;
            }
        }
        return emit(cfg, j);
    });
    auto dl = dimers->add_subcommand("lobachevsky", "closed form of the free energy");
    dl->add_option("--theta", cfg.theta)->required();
    on(dl, [&] {
        double l = 0;
        check(c2l_lobachevsky_free_energy(*cfg.theta, &l), "closed form");
        return emit(cfg, ojson{{"theta", *cfg.theta}, {"free_energy", l}});
    });

    auto stepped = app.add_subcommand("stepped", "stepped surfaces")->require_subcommand(1);
    auto ss = stepped->add_subcommand("surface", "window of the surface of a solid");
    ss->add_option("solid", cfg.input)->required();
    ss->add_option("--window", cfg.window, "window radius (default: smallest valid)");
    on(ss, [&] {
        Solid u(cfg.input);
        char* s = nullptr;
        check(c2l_stepped_surface(u.s, cfg.window, &s), "surface");
        return emit(cfg, report(s));
    });

    auto kashaev = app.add_subcommand("kashaev", "the recurrence")->require_subcommand(1);
    auto ks = kashaev->add_subcommand("solve", "value at the origin");
    ks->add_option("solid", cfg.input)->required();
    ks->add_option("init", cfg.init, "initial values json");
    ks->add_option("--mode", cfg.mode)->check(CLI::IsMember({"numeric", "symbolic"}))->capture_default_str();
    ks->add_option("--order", cfg.order, "canonical or random:SEED")->capture_default_str();
    on(ks, [&] {
        Solid u(cfg.input);
        char* s = nullptr;
        if (cfg.mode == "symbolic") {
            check(c2l_kashaev_solve_symbolic(u.s, cfg.order.c_str(), &s), "symbolic solve");
            return emit(cfg, ojson{{"mode", "symbolic"}, {"origin", report(s)}});
        }
        std::string init = cfg.init.empty() ? "" : slurp(cfg.init);
        double origin = 0;
        check(c2l_kashaev_solve_numeric(u.s, opt(init), cfg.order.c_str(), &origin, &s), "numeric solve");
        auto j = report(s);
        bool ok = j["residuals_ok"].get<bool>() && j["face_invariant_ok"].get<bool>();
        return verdict(cfg, j, ok, "a completed cube violates the recurrence relation");
    });
    auto ky = kashaev->add_subcommand("yb", "local relation of one row");
    ky->add_option("--row", cfg.row)->required()->check(CLI::Range(1, 7));
    ky->add_flag("--swap", cfg.swap, "exchange the two sides");
    on(ky, [&] {
        int holds = 0;
        char* s = nullptr;
        check(c2l_kashaev_yb_row(cfg.row, cfg.swap, &holds, &s), "local relation");
        return verdict(cfg, report(s), holds, "the local relation of this row does not follow from the recurrence");
    });

    auto taut = app.add_subcommand("taut", "taut configurations")->require_subcommand(1);
    for (auto name : {"enumerate", "partition", "verify", "reconstruct", "sample"}) {
        auto sub = taut->add_subcommand(name, std::string(name) + " taut configurations");
        sub->add_option("solid", cfg.input)->required();
        sub->add_option("--init", cfg.init, "initial values json (numeric mode)");
        sub->add_flag("--symbolic", cfg.symbolic, "ignore --init and work with Laurent polynomials");
        sub->add_option("--seed", cfg.seed)->capture_default_str();
        sub->add_option("--extra", cfg.extra, "enlarge the window")->capture_default_str();
        std::string action_name = name;
        on(sub, [&, action_name] {
            Solid u(cfg.input);
            Taut t(u, cfg.extra);
            std::string init = cfg.init.empty() || cfg.symbolic ? "" : slurp(cfg.init);
            char* s = nullptr;
            int holds = 0;
            if (action_name == "enumerate") {
                check(c2l_taut_enumerate(t.t, &s), "enumerate");
                return emit(cfg, report(s));
            }
            if (action_name == "partition") {
                check(c2l_taut_partition(t.t, opt(init), &s), "partition");
                return emit(cfg, report(s));
            }
            if (action_name == "verify") {
                check(c2l_taut_verify(t.t, opt(init), &holds, &s), "verify");
                return verdict(cfg, report(s), holds,
                               "taut partition function differs from the recurrence solution or its monomials do not "
                               "match the taut configurations");
            }
            if (action_name == "reconstruct") {
                check(c2l_taut_reconstruct(t.t, &holds, &s), "reconstruct");
                return verdict(cfg, report(s), holds, "a configuration is not recovered from its monomial");
            }
            check(c2l_taut_sample(t.t, opt(init), cfg.seed, &s), "sample");
            return emit(cfg, report(s));
        });
    }

    auto shape = app.add_subcommand("shape", "limit shape")->require_subcommand(1);
    auto sr = shape->add_subcommand("rho", "rho field");
    sr->add_option("--N", cfg.N)->capture_default_str();
    sr->add_option("--R", cfg.R)->capture_default_str();
    sr->add_option("--out", cfg.out, "csv path");
    on(sr, [&] {
        char* s = nullptr;
        check(c2l_shape_rho(cfg.N, cfg.R, opt(cfg.out), &s), "rho field");
        return emit(cfg, report(s));
    });
    auto sc = shape->add_subcommand("curve", "frozen boundary");
    sc->add_option("--R", cfg.R)->capture_default_str();
    sc->add_option("--points", cfg.points)->capture_default_str();
    sc->add_option("--out", cfg.out, "svg path");
    on(sc, [&] {
        char* s = nullptr;
        check(c2l_shape_curve(cfg.R, cfg.points, opt(cfg.out), &s), "curve");
        return emit(cfg, report(s));
    });
    auto sp = shape->add_subcommand("params", "R, S and d from the periodic initial values");
    sp->add_option("--a", cfg.a)->capture_default_str();
    sp->add_option("--b", cfg.b)->capture_default_str();
    sp->add_option("--c", cfg.c)->capture_default_str();
    on(sp, [&] {
        char* s = nullptr;
        check(c2l_shape_params(cfg.a, cfg.b, cfg.c, &s), "parameters");
        return emit(cfg, report(s));
    });

    auto groves = app.add_subcommand("groves", "cube groves")->require_subcommand(1);
    auto gr = groves->add_subcommand("verify", "loop-free sector against the cube recurrence");
    gr->add_option("solid", cfg.input)->required();
    on(gr, [&] {
        Solid u(cfg.input);
        Taut t(u, 0);
        int holds = 0;
        char* s = nullptr;
        check(c2l_groves_verify(t.t, &holds, &s), "groves");
        return verdict(cfg, report(s), holds, "the loop-free taut sum differs from the cube recurrence solution");
    });

    auto va = app.add_subcommand("verify-all", "run the acceptance criteria");
    va->add_flag("--quick", cfg.quick, "smaller samples");
    va->add_flag("--timing", cfg.timing, "include run times");
    va->add_option("--fixtures", cfg.fixtures, "fixture directory")->capture_default_str();
    va->add_option("--criterion", cfg.criteria, "run only these criteria");
    on(va, [&] { return verify_all(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const Failure& f) {
        std::cerr << f.message << "\n";
        return f.code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad json: " << e.what() << "\n";
        return 2;
    }
}
