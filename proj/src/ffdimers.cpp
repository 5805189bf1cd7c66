#include "ffdimers.hpp"
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include "json.hpp"

namespace c2l {

namespace {

bool close(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

bool same(const Value& x, const Value& y) {
    if (x.exact && y.exact) return *x.exact == *y.exact;
    return std::abs(x.num - y.num) <= 1e-9 * std::max({1.0, std::abs(x.num), std::abs(y.num)});
}

}

bool ff_check(const FaceWeights& fw) {
    if (fw.exact) {
        auto& w = *fw.exact;
        try {
            return w[0] * w[3] == w[2] * w[4] && w[1] * w[2] == w[3] * w[4] && w[4] * (w[0] + w[1]) == w[2] * w[3];
        } catch (const Error& e) {
            if (e.code != Err::Domain) throw;
        }
    }
    auto& w = fw.w;
    return close(w[0] * w[3], w[2] * w[4]) && close(w[1] * w[2], w[3] * w[4]) && close(w[4] * (w[0] + w[1]), w[2] * w[3]);
}

FFParams ff_decompose(const FaceWeights& w) {
    if (!ff_check(w)) fail(Err::NotFreeFermionic, "weights violate the free-fermionic relations");
    FFParams p;
    p.lambda = w.value(1) + w.value(2);
    p.a = w.value(3) / p.lambda;
    p.b = w.value(4) / p.lambda;
    return p;
}

FaceWeights ff_compose(const FFParams& p) {
    Value v[5] = {p.lambda * p.a * p.a, p.lambda * p.b * p.b, p.lambda * p.a, p.lambda * p.b, p.lambda * p.a * p.b};
    bool ex = true;
    for (auto& x : v) ex = ex && x.exact.has_value();
    if (ex) return FaceWeights::from_exact({*v[0].exact, *v[1].exact, *v[2].exact, *v[3].exact, *v[4].exact});
    return FaceWeights::from_double({v[0].num, v[1].num, v[2].num, v[3].num, v[4].num});
}

int DimerGraph::roads() const {
    int n = 0;
    for (auto& e : edges) n += e.road;
    return n;
}

int DimerGraph::dangling() const {
    int n = 0;
    for (auto& e : edges) n += e.b < 0;
    return n;
}

DimerGraph build_gq(const QuadGraph& g, const std::vector<FFParams>& p) {
    DimerGraph d;
    int F = int(g.faces.size());
    d.n_vertices = 4 * F;
    for (int f = 0; f < F; ++f) {
        d.lambda.push_back(p[f].lambda);
        for (int j = 0; j < 4; ++j) d.edges.push_back({4 * f + j, 4 * f + (j + 1) % 4, j % 2 ? p[f].b : p[f].a, false, f, -1});
    }
    d.road_of.assign(g.n_edges(), -1);
    for (int e = 0; e < g.n_edges(); ++e) {
        auto& inc = g.edge_faces[e];
        d.road_of[e] = int(d.edges.size());
        int b = inc.size() == 2 ? 4 * inc[1].face + inc[1].slot : -1;
        d.edges.push_back({4 * inc[0].face + inc[0].slot, b, Value(1), true, -1, e});
    }
    return d;
}

DimerGraph build_gq(const QuadGraph& g, const std::vector<FaceWeights>& w) {
    std::vector<FFParams> p;
    for (auto& x : w) p.push_back(ff_decompose(x));
    return build_gq(g, p);
}

void enumerate_matchings(const DimerGraph& d, const std::function<void(const std::vector<int>&)>& out) {
    if (d.n_vertices % 2) fail(Err::Domain, "odd number of vertices, no perfect matching");
    std::vector<std::vector<int>> adj(d.n_vertices);
    for (int i = 0; i < int(d.edges.size()); ++i) {
        auto& e = d.edges[i];
        if (e.b < 0 || e.a == e.b) continue;
        adj[e.a].push_back(i);
        adj[e.b].push_back(i);
    }
    std::vector<char> used(d.n_vertices, 0);
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int v) {
        while (v < d.n_vertices && used[v]) ++v;
        if (v == d.n_vertices) {
            out(cur);
            return;
        }
        used[v] = 1;
        for (int i : adj[v]) {
            int o = d.edges[i].a == v ? d.edges[i].b : d.edges[i].a;
            if (used[o]) continue;
            used[o] = 1;
            cur.push_back(i);
            rec(v + 1);
            cur.pop_back();
            used[o] = 0;
        }
        used[v] = 0;
    };
    rec(0);
}

static Value matching_weight(const DimerGraph& d, const std::vector<int>& m) {
    Value w(1);
    for (int i : m) w *= d.edges[i].w;
    return w;
}

Value dimer_partition_bruteforce(const DimerGraph& d) {
    Value z;
    enumerate_matchings(d, [&](const std::vector<int>& m) { z += matching_weight(d, m); });
    return z;
}

CorrespondenceReport verify_correspondence(const QuadGraph& g, const std::vector<FaceWeights>& w) {
    if (!g.external_edges().empty()) fail(Err::Input, "the correspondence check needs a closed surface");
    CorrespondenceReport r;
    auto d = build_gq(g, w);
    BoundarySpec b;
    b.mode = BoundarySpec::ClosedSurface;
    r.z_loop = partition_function(g, w, b);
    r.lambda_prod = Value(1);
    for (auto& l : d.lambda) r.lambda_prod *= l;
    r.z_dim = dimer_partition_bruteforce(d);
    r.rhs = r.lambda_prod * r.z_dim * r.z_dim;
    r.exact = r.z_loop.exact && r.rhs.exact;
    r.holds = same(r.z_loop, r.rhs);
    return r;
}

MarginalReport verify_blue_marginal(const QuadGraph& g, const std::vector<FaceWeights>& w) {
    if (!g.external_edges().empty()) fail(Err::Input, "the marginal check needs a closed surface");
    auto d = build_gq(g, w);
    int F = int(g.faces.size()), E = g.n_edges();
    std::map<std::string, std::pair<Value, Value>> cls;

    BoundarySpec b;
    b.mode = BoundarySpec::ClosedSurface;
    enumerate_configs(g, b, [&](const LoopConfig& c) {
        std::string key(E + F, '.');
        for (int e = 0; e < E; ++e) {
            auto inc = g.edge_faces[e][0];
            key[e] = picture(c[inc.face]).colour[inc.slot] == Blue ? 'b' : 'r';
        }
        for (int f = 0; f < F; ++f) {
            auto& p = picture(c[f]);
            if (p.colour == std::array<int, 4>{Blue, Blue, Blue, Blue})
                key[E + f] = p.pairing == Pairing::AroundWhite ? 'w' : 'k';
        }
        cls[key].first += weight(g, c, w, true);
    });

    std::vector<std::vector<int>> ms;
    std::vector<Value> mw;
    enumerate_matchings(d, [&](const std::vector<int>& m) {
        ms.push_back(m);
        mw.push_back(matching_weight(d, m));
    });
    Value lp(1);
    for (auto& l : d.lambda) lp *= l;
    std::vector<std::vector<char>> in(ms.size(), std::vector<char>(d.edges.size(), 0));
    for (size_t i = 0; i < ms.size(); ++i)
        for (int e : ms[i]) in[i][e] = 1;
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = 0; j < ms.size(); ++j) {
            std::string key(E + F, '.');
            for (int e = 0; e < E; ++e) {
                int r = d.road_of[e];
                key[e] = in[i][r] + in[j][r] == 1 ? 'b' : 'r';
            }
            for (int f = 0; f < F; ++f) {
                bool all = true;
                for (int s = 0; s < 4; ++s) all = all && key[g.faces[f].edges[s]] == 'b';
                if (all) key[E + f] = in[i][4 * f] || in[j][4 * f] ? 'w' : 'k';
            }
            cls[key].second += lp * mw[i] * mw[j];
        }

    MarginalReport r;
    r.exact = true;
    for (auto& [k, v] : cls) {
        r.classes++;
        if (!same(v.first, v.second)) r.mismatches++;
        r.exact = r.exact && v.first.exact && v.second.exact;
        r.sides.push_back(v);
    }
    return r;
}

Value road_probability(const DimerGraph& d, int edge_index) {
    if (edge_index < 0 || edge_index >= int(d.edges.size()) || !d.edges[edge_index].road)
        fail(Err::Input, "road probability is only defined for roads");
    Value z, zr;
    enumerate_matchings(d, [&](const std::vector<int>& m) {
        Value w = matching_weight(d, m);
        z += w;
        if (std::find(m.begin(), m.end(), edge_index) != m.end()) zr += w;
    });
    return zr / z;
}

DimerGraph gauge_transform(const DimerGraph& d, const std::vector<Value>& gauge) {
    if (int(gauge.size()) != d.n_vertices) fail(Err::Input, "gauge needs one value per vertex");
    DimerGraph r = d;
    for (auto& e : r.edges) {
        e.w *= gauge[e.a];
        if (e.b >= 0) e.w *= gauge[e.b];
    }
    return r;
}

std::vector<DimerFace> dimer_faces(const QuadGraph& g, const DimerGraph& d) {
    std::vector<DimerFace> out;
    int F = int(g.faces.size());
    for (int f = 0; f < F; ++f) out.push_back({{4 * f, 4 * f + 1, 4 * f + 2, 4 * f + 3}, {4 * f, 4 * f + 1, 4 * f + 2, 4 * f + 3}});
    std::vector<char> seen(4 * F, 0);
    for (int f0 = 0; f0 < F; ++f0)
        for (int k0 = 0; k0 < 4; ++k0) {
            if (seen[4 * f0 + k0]) continue;
            DimerFace df;
            std::vector<int> visited;
            int f = f0, k = k0;
            bool open = false;
            do {
                visited.push_back(4 * f + k);
                int prev = (k + 3) % 4;
                df.vertices.push_back(4 * f + k);
                df.edges.push_back(4 * f + prev);
                df.vertices.push_back(4 * f + prev);
                int e = g.faces[f].edges[prev];
                df.edges.push_back(d.road_of[e]);
                int nf = -1, ns = -1;
                for (auto& inc : g.edge_faces[e])
                    if (inc.face != f || inc.slot != prev) {
                        nf = inc.face;
                        ns = inc.slot;
                    }
                if (nf < 0) {
                    open = true;
                    break;
                }
                f = nf;
                k = ns;
            } while (f != f0 || k != k0);
            for (int v : visited) seen[v] = 1;
            if (open) {
                // mark the rest of the boundary fan from the other side
                f = f0;
                k = k0;
                for (;;) {
                    int e = g.faces[f].edges[k];
                    int nf = -1, ns = -1;
                    for (auto& inc : g.edge_faces[e])
                        if (inc.face != f || inc.slot != k) {
                            nf = inc.face;
                            ns = inc.slot;
                        }
                    if (nf < 0) break;
                    f = nf;
                    k = (ns + 1) % 4;
                    seen[4 * f + k] = 1;
                }
                continue;
            }
            out.push_back(df);
        }
    return out;
}

static std::vector<int> constrained_faces(const QuadGraph& g, const std::vector<DimerFace>& faces) {
    std::vector<int> idx(faces.size());
    for (size_t i = 0; i < faces.size(); ++i) idx[i] = int(i);
    if (!g.torus && g.external_edges().empty() && !idx.empty()) idx.pop_back();
    return idx;
}

Kasteleyn kasteleyn_orientation(const QuadGraph& g, const DimerGraph& d) {
    auto faces = dimer_faces(g, d);
    auto rows = constrained_faces(g, faces);
    int E = int(d.edges.size());
    std::vector<std::vector<char>> m;
    for (int fi : rows) {
        auto& f = faces[fi];
        std::vector<char> row(E + 1, 0);
        int n = int(f.vertices.size());
        int base = 0;
        for (int i = 0; i < n; ++i) {
            if (!d.black(f.vertices[i])) base ^= 1;
            row[f.edges[i]] ^= 1;
        }
        row[E] = char(1 ^ base);
        m.push_back(row);
    }
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < E && r < int(m.size()); ++c) {
        int p = -1;
        for (int i = r; i < int(m.size()); ++i)
            if (m[i][c]) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = 0; i < int(m.size()); ++i)
            if (i != r && m[i][c])
                for (int k = c; k <= E; ++k) m[i][k] ^= m[r][k];
        piv.push_back(c);
        ++r;
    }
    for (int i = r; i < int(m.size()); ++i)
        if (m[i][E]) fail(Err::NotFound, "no Kasteleyn orientation exists for this graph");
    Kasteleyn k;
    k.sign.assign(E, 1);
    for (int i = 0; i < r; ++i)
        if (m[i][E]) k.sign[piv[i]] = -1;
    return k;
}

std::vector<int> kasteleyn_violations(const QuadGraph& g, const DimerGraph& d, const Kasteleyn& k) {
    auto faces = dimer_faces(g, d);
    std::vector<int> bad;
    for (int fi : constrained_faces(g, faces)) {
        auto& f = faces[fi];
        int cw = 0;
        for (size_t i = 0; i < f.vertices.size(); ++i) {
            bool from_white = !d.black(f.vertices[i]);
            bool white_to_black = k.sign[f.edges[i]] > 0;
            cw += from_white == white_to_black;
        }
        if (cw % 2 == 0) bad.push_back(fi);
    }
    return bad;
}

static std::complex<double> det(std::vector<std::vector<std::complex<double>>> a) {
    int n = int(a.size());
    std::complex<double> r = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
        if (std::abs(a[p][c]) == 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            r = -r;
        }
        r *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            auto f = a[i][c] / a[c][c];
            if (f == 0.0) continue;
            for (int k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return r;
}

std::complex<double> kasteleyn_det(const DimerGraph& d, const Kasteleyn& k, std::complex<double> z, std::complex<double> w) {
    std::vector<int> row(d.n_vertices, -1), col(d.n_vertices, -1);
    int nw = 0, nb = 0;
    for (int v = 0; v < d.n_vertices; ++v) (d.black(v) ? col[v] = nb++ : row[v] = nw++);
    if (nw != nb) return 0;
    std::vector<std::vector<std::complex<double>>> K(nw, std::vector<std::complex<double>>(nb, 0));
    for (size_t i = 0; i < d.edges.size(); ++i) {
        auto& e = d.edges[i];
        if (e.b < 0) continue;
        int wv = e.a, bv = e.b, sx = e.sx, sy = e.sy;
        if (d.black(e.a)) {
            std::swap(wv, bv);
            sx = -sx;
            sy = -sy;
        }
        K[row[wv]][col[bv]] += double(k.sign[i]) * e.w.num * std::pow(z, sx) * std::pow(w, sy);
    }
    return det(K);
}

namespace {

using json = nlohmann::json;

std::string id_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}

TorusDomain TorusDomain::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad torus json: ") + e.what());
    }
    std::vector<Vertex> vs;
    std::map<std::string, int> vi;
    for (auto& v : j.at("vertices")) {
        Vertex x;
        x.id = id_of(v.at("id"));
        x.black = v.value("color", "black") == "black";
        if (v.contains("pos")) {
            x.x = v["pos"][0].get<double>();
            x.y = v["pos"][1].get<double>();
        }
        vi[x.id] = int(vs.size());
        vs.push_back(x);
    }
    std::vector<Face> fs;
    std::vector<std::vector<std::string>> names;
    // per face and slot, the cell of the black end of that edge
    std::vector<std::array<std::array<int, 2>, 4>> black_cell;
    for (auto& f : j.at("faces")) {
        Face x;
        x.id = id_of(f.at("id"));
        std::vector<std::array<int, 3>> cs;
        for (auto& c : f.at("corners")) {
            auto it = vi.find(id_of(c.at(0)));
            if (it == vi.end()) fail(Err::Input, "unknown vertex in torus face " + x.id);
            cs.push_back({it->second, c.at(1).get<int>(), c.at(2).get<int>()});
            x.corners.push_back(it->second);
        }
        if (cs.size() != 4) fail(Err::Input, "torus faces must be quadrangles");
        std::vector<std::string> nm;
        std::array<std::array<int, 2>, 4> bc;
        for (int k = 0; k < 4; ++k) {
            auto p = cs[k], q = cs[(k + 1) % 4];
            if (!vs[p[0]].black) std::swap(p, q);
            nm.push_back(vs[p[0]].id + "|" + vs[q[0]].id + "|" + std::to_string(q[1] - p[1]) + "|" + std::to_string(q[2] - p[2]));
            bc[k] = {p[1], p[2]};
        }
        names.push_back(nm);
        black_cell.push_back(bc);
        fs.push_back(x);
    }
    TorusDomain t;
    t.graph = QuadGraph::build(std::move(vs), std::move(fs), names);
    t.graph.torus = true;
    for (int e = 0; e < t.graph.n_edges(); ++e)
        if (t.graph.edge_faces[e].size() != 2) fail(Err::Input, "torus edge without two faces");

    if (j.contains("theta")) {
        double th = j["theta"].get<double>();
        double s = std::sin(th), c = std::cos(th);
        t.weights.assign(t.graph.faces.size(), FaceWeights::from_double({s * s, c * c, s, c, s * c}));
        // faces whose black diagonal is turned a quarter turn carry the weights with sin and cos exchanged
        if (j.contains("rotated"))
            for (auto& id : j["rotated"]) t.weights[t.graph.face_index(id_of(id))] = FaceWeights::from_double({c * c, s * s, c, s, s * c});
    } else {
        t.weights = weights_from_json(t.graph, j.at("weights").dump());
    }
    t.gq = build_gq(t.graph, t.weights);
    for (auto& e : t.gq.edges) {
        if (!e.road) continue;
        auto& inc = t.graph.edge_faces[e.edge];
        auto c1 = black_cell[inc[0].face][inc[0].slot], c2 = black_cell[inc[1].face][inc[1].slot];
        e.sx = c1[0] - c2[0];
        e.sy = c1[1] - c2[1];
    }
    if (j.contains("orientation")) {
        auto& o = j["orientation"];
        if (o.size() != t.gq.edges.size()) fail(Err::Input, "orientation needs one sign per edge of the decorated graph");
        for (auto& s : o) t.orient.sign.push_back(s.get<int>() < 0 ? -1 : 1);
        t.shipped_orientation = true;
    } else {
        t.orient = kasteleyn_orientation(t.graph, t.gq);
    }
    return t;
}

std::string TorusDomain::orientation_json() const {
    nlohmann::ordered_json j;
    j["orientation"] = orient.sign;
    auto gx = nlohmann::ordered_json::array(), gy = nlohmann::ordered_json::array();
    for (size_t i = 0; i < gq.edges.size(); ++i) {
        if (gq.edges[i].sx) gx.push_back({{"edge", i}, {"power", gq.edges[i].sx}});
        if (gq.edges[i].sy) gy.push_back({{"edge", i}, {"power", gq.edges[i].sy}});
    }
    j["gamma_x"] = gx;
    j["gamma_y"] = gy;
    return j.dump();
}

std::complex<double> char_poly_eval(const TorusDomain& t, std::complex<double> z, std::complex<double> w) {
    return kasteleyn_det(t.gq, t.orient, z, w);
}

double free_energy(const TorusDomain& t, int grid) {
    if (grid < 1) fail(Err::Input, "grid must be positive");
    double lam = 0;
    for (auto& l : t.gq.lambda) lam += std::log(l.num);
    std::vector<double> rows;
    for (int k = 0; k < grid; ++k) {
        std::complex<double> z = std::polar(1.0, (2 * k + 1) * std::numbers::pi / grid);
        double s = 0;
        for (int l = 0; l < grid; ++l) {
            std::complex<double> w = std::polar(1.0, (2 * l + 1) * std::numbers::pi / grid);
            double a = std::abs(char_poly_eval(t, z, w));
            s += a < 1e-300 ? std::log(1e-300) : std::log(a);
        }
        rows.push_back(s);
    }
    while (rows.size() > 1) {
        std::vector<double> nx;
        for (size_t i = 0; i + 1 < rows.size(); i += 2) nx.push_back(rows[i] + rows[i + 1]);
        if (rows.size() % 2) nx.push_back(rows.back());
        rows = nx;
    }
    double mean = rows[0] / (double(grid) * grid);
    return lam + 2 * mean;
}

namespace {

double log_sinc(double t) { return t < 1e-8 ? -t * t / 6 : std::log(std::sin(t) / t); }

double simpson(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = log_sinc(lm), frm = log_sinc(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
    double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
    return simpson(a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}

double lobachevsky(double theta) {
    if (theta < 0 || theta > std::numbers::pi) fail(Err::Domain, "lobachevsky argument out of range");
    if (theta == 0) return 0;
    double fa = log_sinc(0), fb = log_sinc(theta), fm = log_sinc(theta / 2);
    double smooth = simpson(0, theta, fa, fm, fb, theta / 6 * (fa + 4 * fm + fb), 1e-14, 40);
    return -(theta * std::log(2.0) + theta * std::log(theta) - theta + smooth);
}

double lobachevsky_free_energy(double theta) {
    const double pi = std::numbers::pi;
    if (!(theta > 0 && theta < pi / 2)) fail(Err::Domain, "theta must lie in (0, pi/2)");
    return 2 / pi * lobachevsky(theta) + 2 / pi * lobachevsky(pi / 2 - theta) + 2 * theta / pi * std::log(std::tan(theta)) +
           std::log(2 * std::cos(theta));
}

}
