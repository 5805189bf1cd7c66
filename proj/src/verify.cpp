#include "verify.hpp"
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include "ffdimers.hpp"
#include "groves.hpp"
#include "json.hpp"
#include "kashaev.hpp"
#include "limitshape.hpp"
#include "taut.hpp"

namespace c2l {

using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    bool warning = false;
    json detail = json::object();
};

FaceWeights random_ff(std::mt19937& rng) {
    // a, b from a rational point on the unit circle
    mpq_class t(int(rng() % 9) + 1, 10), lam(int(rng() % 7) + 1, int(rng() % 3) + 1);
    t.canonicalize();
    lam.canonicalize();
    mpq_class a = 2 * t / (1 + t * t), b = (1 - t * t) / (1 + t * t);
    return ff_compose({Value(QE(lam)), Value(QE(a)), Value(QE(b))});
}

InitValues random_rational(const SurfaceGraph& s, std::mt19937& rng) {
    InitValues init;
    for (auto& p : s.points) init.values[p] = double(1 + rng() % 12) / double(1 + rng() % 5);
    return init;
}

Outcome correspondence(const std::string& dir, bool quick) {
    Outcome o;
    auto g = QuadGraph::from_json(read_text(dir + "/cube_sphere.json"));
    auto r = verify_correspondence(g, weights_from_json(g, read_text(dir + "/weights_half.json")));
    o.detail["z_loop"] = r.z_loop.str();
    o.detail["lambda_prod"] = r.lambda_prod.str();
    o.detail["z_dim"] = r.z_dim.str();
    o.detail["fixture_exact"] = r.exact && r.holds;
    std::mt19937 rng(101);
    int draws = quick ? 5 : 20, ok = 0;
    for (int t = 0; t < draws; ++t) {
        std::vector<FaceWeights> w;
        for (size_t f = 0; f < g.faces.size(); ++f) w.push_back(random_ff(rng));
        auto rr = verify_correspondence(g, w);
        ok += rr.exact && rr.holds;
    }
    o.detail["random_draws"] = draws;
    o.detail["random_ok"] = ok;
    o.pass = r.exact && r.holds && ok == draws;
    return o;
}

Outcome yang_baxter(bool) {
    Outcome o;
    bool ok = true;
    json rows = json::array();
    for (int row = 1; row <= 7; ++row)
        for (bool swap : {false, true}) {
            auto r = yang_baxter_row_check(row, swap);
            bool good = r.found && r.holds;
            if (row == 2 || row == 6) good = good && r.lhs_configs == 1 && r.rhs_configs == 1;
            ok = ok && good;
            rows.push_back({{"row", row}, {"swap", swap}, {"found", r.found}, {"holds", r.holds}, {"ok", good}});
        }
    RegPtr reg;
    auto f = kashaev_step(formal_cube(&reg));
    bool item1 = kashaev_residual(f).is_zero(), dual = duality_check(f), ff = ff_invariant(f);
    o.detail["rows"] = rows;
    o.detail["relation"] = item1;
    o.detail["duality"] = dual;
    o.detail["face_invariant"] = ff;
    o.pass = ok && item1 && dual && ff;
    return o;
}

Outcome taut_sums(bool quick) {
    Outcome o;
    int solids = 0, good = 0;
    for (auto& u : all_solids(quick ? 2 : 3)) {
        auto t = TautSpace::build(u);
        auto r = verify_princ2(t, enumerate_taut(t));
        ++solids;
        good += r.holds;
    }
    std::mt19937 rng(103);
    std::vector<SteppedSolid> two;
    for (auto& u : all_solids(2))
        if (u.removed.size() == 2) two.push_back(u);
    int want = quick ? 10 : 50, trials = 0, num_ok = 0;
    for (int i = 0; trials < want; ++i) {
        auto t = TautSpace::build(two[i % two.size()]);
        auto cs = enumerate_taut(t);
        num_ok += verify_princ2(t, cs, random_rational(t.surface, rng)).holds;
        ++trials;
    }
    o.detail["solids"] = solids;
    o.detail["symbolic_ok"] = good;
    o.detail["numeric_trials"] = trials;
    o.detail["numeric_ok"] = num_ok;
    o.pass = good == solids && num_ok == trials;
    return o;
}

Outcome monomial_bijection(bool quick) {
    Outcome o;
    int solids = 0, good = 0, lo = 0, hi = 0;
    for (auto& u : all_solids(quick ? 3 : 4)) {
        auto t = TautSpace::build(u);
        auto r = verify_unic(t, enumerate_taut(t));
        ++solids;
        good += r.all() && r.min_exponent >= -2 && r.max_exponent <= 4;
        lo = std::min(lo, r.min_exponent);
        hi = std::max(hi, r.max_exponent);
    }
    SteppedSolid one;
    one.removed.insert({-1, -1, -1});
    auto t = TautSpace::build(one);
    auto y = y_taut(t, enumerate_taut(t));
    std::multiset<std::string> coeffs;
    for (auto& [m, q] : y.terms()) coeffs.insert(q.get_str());
    bool one_ok = coeffs == std::multiset<std::string>{"1", "1", "1", "2", "2"};
    o.detail["solids"] = solids;
    o.detail["ok"] = good;
    o.detail["min_exponent"] = lo;
    o.detail["max_exponent"] = hi;
    o.detail["one_cube_coefficients"] = std::vector<std::string>(coeffs.begin(), coeffs.end());
    o.pass = good == solids && one_ok;
    return o;
}

Outcome laurentness(bool quick) {
    Outcome o;
    std::mt19937 rng(105);
    struct Case {
        SteppedSolid u;
        SurfaceGraph s;
        RegPtr reg;
        LaurentPoly base;
    };
    std::vector<Case> cases;
    int failures = 0, checked = 0;
    for (auto& u : all_solids(quick ? 3 : 4)) {
        auto s = surface_box(u, solve_window(u) + 1);
        auto reg = surface_registry(s);
        try {
            auto r = solve_origin_symbolic(s, reg, {}, u.removed.size() <= 3);
            ++checked;
            if (!r.residuals_ok || !r.ff_ok) ++failures;
            if (u.removed.size() >= 2) cases.push_back({u, s, reg, r.origin});
        } catch (const Error& e) {
            if (e.code != Err::NotDivisible) throw;
            ++failures;
        }
    }
    int orders = quick ? 20 : 100, same = 0;
    for (int i = 0; i < orders; ++i) {
        auto& c = cases[(i * 7919) % cases.size()];
        try {
            same += solve_origin_symbolic(c.s, c.reg, random_fill_order(c.u, rng)).origin == c.base;
        } catch (const Error& e) {
            if (e.code != Err::NotDivisible) throw;
            ++failures;
        }
    }
    o.detail["solids"] = checked;
    o.detail["division_failures"] = failures;
    o.detail["random_orders"] = orders;
    o.detail["order_independent"] = same;
    o.pass = failures == 0 && same == orders;
    return o;
}

Outcome free_energy_check(const std::string& dir, bool quick) {
    Outcome o;
    auto base = json::parse(read_text(dir + "/octa_z2.json"));
    int grid = quick ? 128 : 512;
    bool ok = true;
    json rows = json::array();
    for (int k : {6, 4, 3}) {
        double th = std::numbers::pi / k;
        auto j = base;
        j["theta"] = th;
        double f = free_energy(TorusDomain::from_json(j.dump()), grid), l = lobachevsky_free_energy(th);
        ok = ok && std::abs(f - l) <= 1e-6;
        rows.push_back({{"theta", th}, {"quadrature", f}, {"closed_form", l}, {"difference", f - l}});
    }
    o.detail["grid"] = grid;
    o.detail["values"] = rows;
    o.pass = ok;
    return o;
}

Outcome roads(const std::string& dir, bool) {
    Outcome o;
    auto g = QuadGraph::from_json(read_text(dir + "/cube_sphere.json"));
    int n = 0, half = 0;
    for (auto name : {"weights_half.json", "weights_third.json"}) {
        auto d = build_gq(g, weights_from_json(g, read_text(dir + "/" + name)));
        for (size_t i = 0; i < d.edges.size(); ++i)
            if (d.edges[i].road) {
                auto p = road_probability(d, int(i));
                ++n;
                half += p.exact && *p.exact == QE(mpq_class(1, 2));
            }
    }
    o.detail["roads"] = n;
    o.detail["exactly_half"] = half;
    o.pass = n > 0 && half == n;
    return o;
}

Outcome shape_numbers(bool quick) {
    Outcome o;
    double res = intrinsic_residual(3, 3), lam = lambda_param(3), r = S_of_R(0.2);
    double target = -(5 + 3 * std::sqrt(2.0)) / 7;
    double rec = rho_field(3, 1).at({1, 1, 1}), orc = rho_oracle({1, 1, 1}, 1, 1, 1);
    double h = 0;
    unsigned seed = 0;
    for (double R : {0.2, 1.0, 3.0, 7.5}) h = std::max(h, h_identity_error(R, quick ? 1000 : 10000, seed++));
    o.detail["intrinsic_residual"] = res;
    o.detail["lambda_at_3"] = lam;
    o.detail["R_for_S_0.2"] = r;
    o.detail["rho_recurrence"] = rec;
    o.detail["rho_oracle"] = orc;
    o.detail["h_identity_error"] = h;
    o.pass = res == 0 && std::abs(lam - 3) <= 1e-12 && std::abs(r - 130.7) <= 0.1 && std::abs(rec - target) <= 1e-12 &&
             std::abs(orc - target) <= 1e-12 && h <= 1e-9;
    return o;
}

Outcome phase(bool quick) {
    Outcome o;
    int N = 40;
    auto f = rho_field(N, 0.2);
    double corner = 0;
    for (Pt p : {Pt{N - 2, 1, 1}, Pt{1, N - 2, 1}, Pt{1, 1, N - 2}}) corner = std::max(corner, std::abs(f.at(p)));
    double lo = 1e300, hi = -1e300, sum = 0;
    int cnt = 0;
    for (auto& [p, v] : f.rho) {
        if (height(p) != N) continue;
        bool central = true;
        for (int k = 0; k < 3; ++k) central = central && std::abs(p[k] - N / 3.0) <= 2;
        if (!central) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        ++cnt;
    }
    bool corners_ok = corner < 1e-6, centre_ok = cnt > 0 && std::abs(lo - 1.0 / 3) <= 0.05 && std::abs(hi - 1.0 / 3) <= 0.05;
    o.detail["corner_max"] = corner;
    o.detail["centre_points"] = cnt;
    o.detail["centre_min"] = lo;
    o.detail["centre_max"] = hi;
    o.detail["centre_mean"] = cnt ? sum / cnt : 0.0;
    o.detail["corners_ok"] = corners_ok;
    o.detail["centre_ok"] = centre_ok;
    (void)quick;
    o.pass = true;
    o.warning = !(corners_ok && centre_ok);
    return o;
}

Outcome groves(bool quick) {
    Outcome o;
    int solids = 0, good = 0;
    for (auto& u : all_solids(quick ? 2 : 3)) {
        auto t = TautSpace::build(u);
        auto r = verify_grove_equality(t, enumerate_taut(t));
        ++solids;
        good += r.all();
    }
    o.detail["solids"] = solids;
    o.detail["ok"] = good;
    o.pass = good == solids;
    return o;
}

bool round_trip(const QuadGraph& g, std::mt19937& rng, double& worst) {
    std::vector<double> g0;
    for (size_t i = 0; i < g.vertices.size(); ++i) g0.push_back(0.5 + double(rng() % 100) / 40);
    std::vector<FaceWeights> w;
    for (auto& f : g.faces) {
        auto& c = f.corners;
        w.push_back(FaceWeights::from_double(param_weights(g0[c[0]], g0[c[1]], g0[c[2]], g0[c[3]])));
    }
    auto p = solve_parametrization(g, w);
    for (size_t f = 0; f < g.faces.size(); ++f) {
        auto& c = g.faces[f].corners;
        double r0 = g0[c[0]] * g0[c[2]] / (g0[c[1]] * g0[c[3]]);
        double r1 = p.g[c[0]] * p.g[c[2]] / (p.g[c[1]] * p.g[c[3]]);
        worst = std::max(worst, std::abs(r1 / r0 - 1));
    }
    return p.exact_ok;
}

Outcome tracks(const std::string& dir, bool quick) {
    Outcome o;
    std::vector<std::pair<std::string, QuadGraph>> graphs;
    graphs.push_back({"grid2x2", QuadGraph::from_json(read_text(dir + "/grid2x2.json"))});
    graphs.push_back({"grid3x3", QuadGraph::from_json(read_text(dir + "/grid3x3.json"))});
    std::mt19937 rng(111);
    int windows = quick ? 5 : 20;
    for (int i = 0; i < windows; ++i) {
        auto u = random_solid(int(rng() % 6), rng);
        int r = default_window(u) + int(rng() % 2);
        graphs.push_back({"window " + u.to_json(), surface_box(u, r).graph});
    }
    int census_ok = 0, exact_ok = 0;
    double worst = 0;
    json bad = json::array();
    for (auto& [name, g] : graphs) {
        bool c_ok = false, e_ok = false;
        try {
            auto c = track_census(g);
            c_ok = c.pairs_ok && c.edges_ok && c.kernel_ok;
            e_ok = round_trip(g, rng, worst);
        } catch (const Error& e) {
            bad.push_back(name + ": " + e.what());
        }
        census_ok += c_ok;
        exact_ok += e_ok;
    }
    int n = int(graphs.size());
    o.detail["graphs"] = n;
    o.detail["census_ok"] = census_ok;
    o.detail["parametrization_exact"] = exact_ok;
    o.detail["worst_ratio_error"] = worst;
    if (!bad.empty()) o.detail["errors"] = bad;
    o.pass = census_ok == n && exact_ok == n && worst <= 1e-12;
    return o;
}

struct Spec {
    const char* name;
    double limit;
};

const Spec kSpecs[kCriteria] = {
    {"loop and dimer correspondence", 60},  {"local relations", 30},       {"taut sums and recurrence", 300},
    {"monomials and taut configurations", 0}, {"Laurent property", 0},      {"free energy", 120},
    {"road probability", 0},                {"limit shape numbers", 0},    {"phase checks", 0},
    {"groves", 0},                          {"train tracks and parametrization", 0},
};

}

std::string read_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Err::IO, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CriterionResult run_criterion(int id, const std::string& dir, bool quick) {
    if (id < 1 || id > kCriteria) fail(Err::Input, "no criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.name = kSpecs[id - 1].name;
    r.time_limit = kSpecs[id - 1].limit;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        switch (id) {
            case 1: o = correspondence(dir, quick); break;
            case 2: o = yang_baxter(quick); break;
            case 3: o = taut_sums(quick); break;
            case 4: o = monomial_bijection(quick); break;
            case 5: o = laurentness(quick); break;
            case 6: o = free_energy_check(dir, quick); break;
            case 7: o = roads(dir, quick); break;
            case 8: o = shape_numbers(quick); break;
            case 9: o = phase(quick); break;
            case 10: o = groves(quick); break;
            case 11: o = tracks(dir, quick); break;
        }
    } catch (const Error& e) {
        o.pass = false;
        o.detail["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0 && r.seconds > r.time_limit) {
        o.pass = false;
        o.detail["too_slow"] = true;
    }
    r.pass = o.pass;
    r.warning = o.warning;
    r.detail = o.detail.dump();
    return r;
}

std::string criterion_json(const CriterionResult& r) {
    json j{{"criterion", r.id}, {"name", r.name},        {"pass", r.pass},
           {"warning", r.warning}, {"seconds", r.seconds}, {"detail", json::parse(r.detail)}};
    return j.dump();
}

}
