#include "quadgraph.hpp"
#include <algorithm>
#include <cmath>
#include <set>
#include "ffdimers.hpp"
#include "json.hpp"

namespace c2l {

using json = nlohmann::json;

static std::string id_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

QuadGraph QuadGraph::build(std::vector<Vertex> vs, std::vector<Face> fs,
                           const std::vector<std::vector<std::string>>& edge_names) {
    QuadGraph g;
    g.vertices = std::move(vs);
    g.faces = std::move(fs);
    for (int i = 0; i < int(g.vertices.size()); ++i)
        if (!g.vindex_.emplace(g.vertices[i].id, i).second) fail(Err::Input, "duplicate vertex " + g.vertices[i].id);
    for (int i = 0; i < int(g.faces.size()); ++i)
        if (!g.findex_.emplace(g.faces[i].id, i).second) fail(Err::Input, "duplicate face " + g.faces[i].id);
    std::map<std::string, int> named;
    std::map<std::pair<int, int>, int> bypair;
    for (int f = 0; f < int(g.faces.size()); ++f) {
        auto& face = g.faces[f];
        int n = int(face.corners.size());
        face.edges.assign(n, -1);
        for (int k = 0; k < n; ++k) {
            int a = face.corners[k], b = face.corners[(k + 1) % n];
            int e;
            if (!edge_names.empty() && !edge_names[f].empty()) {
                if (int(edge_names[f].size()) != n) fail(Err::Input, "face " + face.id + " edge list has wrong length");
                auto [it, fresh] = named.emplace(edge_names[f][k], g.n_edges());
                e = it->second;
                if (fresh) {
                    g.edge_ends.push_back({a, b});
                    g.edge_faces.emplace_back();
                }
            } else {
                auto key = std::minmax(a, b);
                auto [it, fresh] = bypair.emplace(key, g.n_edges());
                e = it->second;
                if (fresh) {
                    g.edge_ends.push_back({a, b});
                    g.edge_faces.emplace_back();
                }
            }
            face.edges[k] = e;
            g.edge_faces[e].push_back({f, k});
        }
    }
    return g;
}

std::vector<int> QuadGraph::external_edges() const {
    std::vector<int> r;
    for (int e = 0; e < n_edges(); ++e)
        if (is_external(e)) r.push_back(e);
    return r;
}

int QuadGraph::vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) fail(Err::Input, "unknown vertex " + id);
    return it->second;
}

int QuadGraph::face_index(const std::string& id) const {
    auto it = findex_.find(id);
    if (it == findex_.end()) fail(Err::Input, "unknown face " + id);
    return it->second;
}

std::vector<int> QuadGraph::degrees() const {
    std::vector<int> d(vertices.size(), 0);
    for (auto& [a, b] : edge_ends) {
        d[a]++;
        d[b]++;
    }
    return d;
}

int QuadGraph::neighbour(int face, int slot) const {
    int e = faces[face].edges[slot];
    for (auto& inc : edge_faces[e])
        if (inc.face != face || inc.slot != slot) return inc.face;
    return -1;
}

std::string QuadGraph::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (auto& v : vertices)
        j["vertices"].push_back({{"id", v.id}, {"color", v.black ? "black" : "white"}, {"pos", {v.x, v.y}}});
    j["faces"] = nlohmann::ordered_json::array();
    for (auto& f : faces) {
        nlohmann::ordered_json fj;
        fj["id"] = f.id;
        fj["corners"] = nlohmann::ordered_json::array();
        for (int c : f.corners) fj["corners"].push_back(vertices[c].id);
        fj["edges"] = f.edges;
        j["faces"].push_back(fj);
    }
    if (torus) j["torus"] = true;
    return j.dump();
}

QuadGraph QuadGraph::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad graph json: ") + e.what());
    }
    std::vector<Vertex> vs;
    std::map<std::string, int> vi;
    for (auto& v : j.at("vertices")) {
        Vertex x;
        x.id = id_of(v.at("id"));
        std::string c = v.value("color", "black");
        if (c != "black" && c != "white") fail(Err::Input, "bad colour " + c);
        x.black = c == "black";
        if (v.contains("pos")) {
            x.x = v["pos"][0].get<double>();
            x.y = v["pos"][1].get<double>();
        }
        vi[x.id] = int(vs.size());
        vs.push_back(x);
    }
    std::vector<Face> fs;
    std::vector<std::vector<std::string>> names;
    bool any_names = false;
    for (auto& f : j.at("faces")) {
        Face x;
        x.id = id_of(f.at("id"));
        for (auto& c : f.at("corners")) {
            auto it = vi.find(id_of(c));
            if (it == vi.end()) fail(Err::Input, "face " + x.id + " uses unknown vertex " + id_of(c));
            x.corners.push_back(it->second);
        }
        std::vector<std::string> nm;
        if (f.contains("edges")) {
            for (auto& e : f["edges"]) nm.push_back(id_of(e));
            any_names = true;
        }
        names.push_back(nm);
        fs.push_back(x);
    }
    QuadGraph g = build(std::move(vs), std::move(fs), any_names ? names : std::vector<std::vector<std::string>>{});
    g.torus = j.value("torus", false);
    return g;
}

ValidationReport validate(const QuadGraph& g) {
    ValidationReport r;
    auto bad = [&](const std::string& s) {
        r.valid = false;
        r.violations.push_back(s);
    };
    for (auto& f : g.faces) {
        if (f.corners.size() != 4) {
            bad("FaceDegree: face " + f.id + " has degree " + std::to_string(f.corners.size()));
            continue;
        }
        const bool want[4] = {true, false, true, false};
        for (int k = 0; k < 4; ++k)
            if (g.vertices[f.corners[k]].black != want[k]) bad("CornerColor: face " + f.id + " corner " + std::to_string(k));
    }
    for (int e = 0; e < g.n_edges(); ++e) {
        auto [a, b] = g.edge_ends[e];
        if (g.vertices[a].black == g.vertices[b].black) bad("Bipartite: edge " + std::to_string(e));
        if (g.edge_faces[e].size() > 2) bad("EdgeMultiplicity: edge " + std::to_string(e));
    }
    r.euler = long(g.vertices.size()) - g.n_edges() + long(g.faces.size());
    long want = g.torus ? 0 : (g.external_edges().empty() ? 2 : 1);
    if (r.euler != want) bad("Euler: V-E+F = " + std::to_string(r.euler) + ", expected " + std::to_string(want));
    return r;
}

std::vector<TrainTrack> train_tracks(const QuadGraph& g) {
    std::vector<TrainTrack> out;
    std::vector<char> seen(g.n_edges(), 0);
    // walk from edge e leaving through face f
    auto walk = [&](int e, int f, std::vector<int>& path) {
        for (;;) {
            int slot = -1;
            for (auto& inc : g.edge_faces[e])
                if (inc.face == f) slot = inc.slot;
            int e2 = g.faces[f].edges[(slot + 2) % 4];
            if (seen[e2]) return true;
            seen[e2] = 1;
            path.push_back(e2);
            int nf = -1;
            for (auto& inc : g.edge_faces[e2])
                if (inc.face != f || inc.slot != (slot + 2) % 4) nf = inc.face;
            if (nf < 0) return false;
            e = e2;
            f = nf;
        }
    };
    for (int e : g.external_edges()) {
        if (seen[e]) continue;
        TrainTrack t;
        seen[e] = 1;
        t.edges.push_back(e);
        walk(e, g.edge_faces[e][0].face, t.edges);
        out.push_back(t);
    }
    for (int e = 0; e < g.n_edges(); ++e) {
        if (seen[e]) continue;
        TrainTrack t;
        seen[e] = 1;
        t.edges.push_back(e);
        t.is_loop = walk(e, g.edge_faces[e][0].face, t.edges);
        out.push_back(t);
    }
    return out;
}

TrackCensus track_census(const QuadGraph& g) {
    auto tracks = train_tracks(g);
    TrackCensus c;
    for (auto& t : tracks)
        if (t.is_loop) fail(Err::LoopTrack, "a train track is a loop");
    c.tracks = int(tracks.size());
    c.ext_edges = int(g.external_edges().size());
    c.int_edges = g.n_edges() - c.ext_edges;
    c.vertices = int(g.vertices.size());
    c.faces = int(g.faces.size());
    c.pairs_ok = 2 * c.tracks == c.ext_edges;
    c.edges_ok = 4 * c.faces == 2 * c.int_edges + c.ext_edges;
    c.kernel_ok = c.tracks + 1 == c.vertices - c.faces;
    return c;
}

std::vector<mpq_class> phi(const QuadGraph& g, const std::vector<mpq_class>& h) {
    if (h.size() != g.vertices.size()) fail(Err::Input, "missing vertex value");
    std::vector<mpq_class> r;
    for (auto& f : g.faces) r.push_back(h[f.corners[0]] + h[f.corners[2]] - h[f.corners[1]] - h[f.corners[3]]);
    return r;
}

FaceWeights FaceWeights::from_exact(const std::array<QE, 5>& q) {
    FaceWeights f;
    f.exact = q;
    for (int i = 0; i < 5; ++i) f.w[i] = q[i].to_double();
    return f;
}

FaceWeights FaceWeights::from_double(const std::array<double, 5>& d) {
    FaceWeights f;
    f.w = d;
    return f;
}

FaceWeights FaceWeights::from_strings(const std::vector<std::string>& s) {
    if (s.size() != 5) fail(Err::Input, "face weights need five entries");
    std::array<QE, 5> q;
    for (int i = 0; i < 5; ++i) q[i] = QE::parse(s[i]);
    return from_exact(q);
}

std::vector<FaceWeights> weights_from_json(const QuadGraph& g, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad weights json: ") + e.what());
    }
    auto read = [](const json& a) {
        std::vector<std::string> s;
        for (auto& x : a) s.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        return FaceWeights::from_strings(s);
    };
    std::vector<FaceWeights> out(g.faces.size());
    std::vector<char> set(g.faces.size(), 0);
    if (j.contains("default"))
        for (size_t f = 0; f < out.size(); ++f) {
            out[f] = read(j["default"]);
            set[f] = 1;
        }
    if (j.contains("faces"))
        for (auto& [k, v] : j["faces"].items()) {
            int f = g.face_index(k);
            out[f] = read(v);
            set[f] = 1;
        }
    for (size_t f = 0; f < out.size(); ++f) {
        if (!set[f]) fail(Err::Input, "no weights for face " + g.faces[f].id);
        for (double x : out[f].w)
            if (!(x > 0)) fail(Err::Input, "weights must be positive on face " + g.faces[f].id);
    }
    return out;
}

std::array<double, 5> param_weights(double gx, double gu, double gy, double gv) {
    double p = gx * gy, q = gu * gv, X = std::sqrt(p + q);
    return {p, q, std::sqrt(p) * X, std::sqrt(q) * X, std::sqrt(p * q)};
}

Parametrization solve_parametrization(const QuadGraph& g, const std::vector<FaceWeights>& w) {
    int F = int(g.faces.size()), V = int(g.vertices.size());
    for (int f = 0; f < F; ++f)
        if (!ff_check(w[f])) fail(Err::NotFreeFermionic, "face " + g.faces[f].id + " is not free-fermionic");
    for (auto& t : train_tracks(g))
        if (t.is_loop) fail(Err::LoopTrack, "a train track is a loop");

    // row reduce [Phi | I]
    std::vector<std::vector<mpq_class>> m(F, std::vector<mpq_class>(V + F, 0));
    for (int f = 0; f < F; ++f) {
        auto& c = g.faces[f].corners;
        m[f][c[0]] += 1;
        m[f][c[2]] += 1;
        m[f][c[1]] -= 1;
        m[f][c[3]] -= 1;
        m[f][V + f] = 1;
    }
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < V && row < F; ++col) {
        int p = -1;
        for (int r = row; r < F; ++r)
            if (m[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        mpq_class inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (int r = 0; r < F; ++r)
            if (r != row && m[r][col] != 0) {
                mpq_class k = m[r][col];
                for (int c = 0; c < V + F; ++c)
                    if (m[row][c] != 0) m[r][c] -= k * m[row][c];
            }
        pivcol.push_back(col);
        ++row;
    }
    for (int r = row; r < F; ++r)
        for (int c = V; c < V + F; ++c)
            if (m[r][c] != 0) fail(Err::Internal, "inconsistent parametrization system");

    Parametrization out;
    out.expo.assign(V, std::vector<mpq_class>(F, 0));
    for (int r = 0; r < row; ++r)
        for (int f = 0; f < F; ++f) out.expo[pivcol[r]][f] = m[r][V + f];
    out.ratio.resize(F);
    for (int f = 0; f < F; ++f) {
        double q = w[f].w[0] / w[f].w[4];
        out.ratio[f] = q * q;
    }
    out.g.assign(V, 1.0);
    for (int v = 0; v < V; ++v) {
        double lg = 0;
        for (int f = 0; f < F; ++f)
            if (out.expo[v][f] != 0) lg += out.expo[v][f].get_d() * std::log(out.ratio[f]);
        out.g[v] = std::exp(lg);
    }
    out.exact_ok = true;
    for (int f = 0; f < F && out.exact_ok; ++f) {
        std::vector<mpq_class> col(V);
        for (int v = 0; v < V; ++v) col[v] = out.expo[v][f];
        auto img = phi(g, col);
        for (int f2 = 0; f2 < F; ++f2)
            if (img[f2] != (f2 == f ? 1 : 0)) out.exact_ok = false;
    }
    out.scale.resize(F);
    for (int f = 0; f < F; ++f) {
        auto& c = g.faces[f].corners;
        out.scale[f] = w[f].w[0] / (out.g[c[0]] * out.g[c[2]]);
    }
    return out;
}

std::vector<int> degree2_boundary(const QuadGraph& g) {
    auto deg = g.degrees();
    std::set<int> onb;
    for (int e : g.external_edges()) {
        onb.insert(g.edge_ends[e][0]);
        onb.insert(g.edge_ends[e][1]);
    }
    std::vector<int> r;
    for (int v : onb)
        if (deg[v] == 2) r.push_back(v);
    return r;
}

}
