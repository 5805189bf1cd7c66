#include "loopmodel.hpp"
#include "json.hpp"

namespace c2l {

namespace {

constexpr std::array<int, 4> kWhite{1, 0, 3, 2};   // e0-e1 around u, e2-e3 around v
constexpr std::array<int, 4> kBlack{3, 2, 1, 0};   // e3-e0 around x, e1-e2 around y
constexpr std::array<int, 4> kCross{2, 3, 0, 1};

const std::array<LocalPicture, 10> kPictures{{
    {"1a", 1, Pairing::AroundWhite, kWhite, {Red, Red, Red, Red}},
    {"1b", 1, Pairing::AroundWhite, kWhite, {Blue, Blue, Blue, Blue}},
    {"2a", 2, Pairing::AroundBlack, kBlack, {Red, Red, Red, Red}},
    {"2b", 2, Pairing::AroundBlack, kBlack, {Blue, Blue, Blue, Blue}},
    {"3a", 3, Pairing::AroundWhite, kWhite, {Red, Red, Blue, Blue}},
    {"3b", 3, Pairing::AroundWhite, kWhite, {Blue, Blue, Red, Red}},
    {"4a", 4, Pairing::AroundBlack, kBlack, {Red, Blue, Blue, Red}},
    {"4b", 4, Pairing::AroundBlack, kBlack, {Blue, Red, Red, Blue}},
    {"5a", 5, Pairing::Crossing, kCross, {Red, Blue, Red, Blue}},
    {"5b", 5, Pairing::Crossing, kCross, {Blue, Red, Blue, Red}},
}};

int edge_of(const QuadGraph& g, const std::string& s) {
    auto pos = s.rfind(':');
    if (pos == std::string::npos) fail(Err::Input, "boundary edge must be written face:slot");
    int f = g.face_index(s.substr(0, pos));
    int slot = std::stoi(s.substr(pos + 1));
    if (slot < 0 || slot > 3) fail(Err::Input, "bad slot in " + s);
    int e = g.faces[f].edges[slot];
    if (!g.is_external(e)) fail(Err::Input, s + " is not a boundary edge");
    return e;
}

int colour_of(const std::string& s) {
    if (s == "red") return Red;
    if (s == "blue") return Blue;
    fail(Err::Input, "bad colour " + s);
}

}

const LocalPicture& picture(int index) { return kPictures.at(index); }

int picture_index(const std::string& name) {
    for (int i = 0; i < 10; ++i)
        if (name == kPictures[i].name) return i;
    fail(Err::Input, "unknown local picture " + name);
}

int picture_from(Pairing p, const std::array<int, 4>& colour) {
    for (int i = 0; i < 10; ++i)
        if (kPictures[i].pairing == p && kPictures[i].colour == colour) return i;
    return -1;
}

BoundarySpec BoundarySpec::from_json(const QuadGraph& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad boundary json: ") + e.what());
    }
    BoundarySpec b;
    std::string m = j.value("mode", "free");
    if (m == "closed_surface") b.mode = ClosedSurface;
    else if (m == "free") b.mode = Free;
    else if (m == "fixed_colors") {
        b.mode = FixedColours;
        for (auto& [k, v] : j.at("colors").items()) b.colours[edge_of(g, k)] = colour_of(v.get<std::string>());
    } else if (m == "fixed_connections") {
        b.mode = FixedConnections;
        std::map<int, int> used;
        for (auto& p : j.at("pairs")) {
            int a = edge_of(g, p.at(0).get<std::string>()), c = edge_of(g, p.at(1).get<std::string>());
            b.connections.push_back({a, c, colour_of(p.at(2).get<std::string>())});
            used[a]++;
            used[c]++;
        }
        auto ext = g.external_edges();
        if (used.size() != ext.size()) fail(Err::Input, "connections must pair every boundary edge");
        for (auto& [e, k] : used)
            if (k != 1) fail(Err::Input, "boundary edge paired twice");
    } else
        fail(Err::Input, "unknown boundary mode " + m);
    return b;
}

std::vector<Strand> trace_strands(const QuadGraph& g, const LoopConfig& c) {
    std::vector<std::vector<char>> seen(g.faces.size(), std::vector<char>(4, 0));
    std::vector<Strand> out;
    // follow from half-edge (f, s) entering face f through slot s
    auto follow = [&](int f, int s, Strand& st) {
        for (;;) {
            if (seen[f][s]) return true;
            seen[f][s] = 1;
            st.half_edges.push_back({f, s});
            int s2 = picture(c[f]).partner[s];
            seen[f][s2] = 1;
            st.half_edges.push_back({f, s2});
            int e = g.faces[f].edges[s2];
            int nf = -1, ns = -1;
            for (auto& inc : g.edge_faces[e])
                if (inc.face != f || inc.slot != s2) {
                    nf = inc.face;
                    ns = inc.slot;
                }
            if (nf < 0) return false;
            f = nf;
            s = ns;
        }
    };
    for (int e : g.external_edges()) {
        auto inc = g.edge_faces[e][0];
        if (seen[inc.face][inc.slot]) continue;
        Strand st;
        st.colour = picture(c[inc.face]).colour[inc.slot];
        follow(inc.face, inc.slot, st);
        out.push_back(st);
    }
    for (int f = 0; f < int(g.faces.size()); ++f)
        for (int s = 0; s < 4; ++s) {
            if (seen[f][s]) continue;
            Strand st;
            st.colour = picture(c[f]).colour[s];
            st.closed = follow(f, s, st);
            out.push_back(st);
        }
    return out;
}

int count_loops(const QuadGraph& g, const LoopConfig& c) {
    int n = 0;
    for (auto& s : trace_strands(g, c)) n += s.closed;
    return n;
}

bool gluing_ok(const QuadGraph& g, const LoopConfig& c) {
    for (int e = 0; e < g.n_edges(); ++e) {
        auto& inc = g.edge_faces[e];
        if (inc.size() == 2 && picture(c[inc[0].face]).colour[inc[0].slot] != picture(c[inc[1].face]).colour[inc[1].slot])
            return false;
    }
    return true;
}

bool crossing_parity_check(const QuadGraph& g, const LoopConfig& c) {
    for (auto& s : trace_strands(g, c)) {
        if (!s.closed) continue;
        int crossings = 0;
        for (size_t k = 0; k < s.half_edges.size(); k += 2)
            if (picture(c[s.half_edges[k].first]).type == 5) ++crossings;
        if (crossings % 2) return false;
    }
    return true;
}

void enumerate_configs(const QuadGraph& g, const BoundarySpec& b, const std::function<void(const LoopConfig&)>& out) {
    int F = int(g.faces.size());
    LoopConfig c(F, -1);
    std::function<void(int)> rec = [&](int f) {
        if (f == F) {
            if (b.mode == BoundarySpec::FixedConnections) {
                std::map<int, std::pair<int, int>> ends;  // edge -> (other end, colour)
                for (auto& s : trace_strands(g, c)) {
                    if (s.closed) continue;
                    int e1 = g.faces[s.half_edges.front().first].edges[s.half_edges.front().second];
                    int e2 = g.faces[s.half_edges.back().first].edges[s.half_edges.back().second];
                    ends[e1] = {e2, s.colour};
                    ends[e2] = {e1, s.colour};
                }
                for (auto& [a, e2, col] : b.connections)
                    if (ends[a] != std::make_pair(e2, col)) return;
            }
            out(c);
            return;
        }
        for (int p = 0; p < 10; ++p) {
            auto& pic = picture(p);
            bool ok = true;
            for (int s = 0; s < 4 && ok; ++s) {
                int e = g.faces[f].edges[s];
                for (auto& inc : g.edge_faces[e]) {
                    if (inc.face == f && inc.slot == s) continue;
                    if (c[inc.face] >= 0 && picture(c[inc.face]).colour[inc.slot] != pic.colour[s]) ok = false;
                    if (inc.face == f && inc.slot != s && pic.colour[inc.slot] != pic.colour[s]) ok = false;
                }
                if (b.mode == BoundarySpec::FixedColours && g.is_external(e)) {
                    auto it = b.colours.find(e);
                    if (it != b.colours.end() && it->second != pic.colour[s]) ok = false;
                }
            }
            if (!ok) continue;
            c[f] = p;
            rec(f + 1);
            c[f] = -1;
        }
    };
    rec(0);
}

Value weight(const QuadGraph& g, const LoopConfig& c, const std::vector<FaceWeights>& w, bool fugacity) {
    Value v(1);
    for (size_t f = 0; f < c.size(); ++f) v *= w[f].value(picture(c[f]).type);
    if (fugacity) {
        int n = count_loops(g, c);
        for (int k = 0; k < n; ++k) v *= Value(2);
    }
    return v;
}

Value partition_function(const QuadGraph& g, const std::vector<FaceWeights>& w, const BoundarySpec& b) {
    Value z;
    enumerate_configs(g, b, [&](const LoopConfig& c) { z += weight(g, c, w, true); });
    return z;
}

std::string config_json(const QuadGraph& g, const LoopConfig& c) {
    nlohmann::ordered_json j, f = nlohmann::ordered_json::object();
    for (size_t i = 0; i < c.size(); ++i) f[g.faces[i].id] = picture(c[i]).name;
    j["faces"] = f;
    return j.dump();
}

}
