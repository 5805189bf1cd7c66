#include "laurent.hpp"
#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <sstream>
#include "json.hpp"

namespace c2l {

long mono_degree(const Mono& m) {
    long d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    long da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    size_t i = 0, j = 0;
    for (;;) {
        int va = i < a.size() ? a[i].first : INT_MAX;
        int vb = j < b.size() ? b[j].first : INT_MAX;
        if (va == INT_MAX && vb == INT_MAX) return false;
        if (va == vb) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        } else if (va < vb) {
            return a[i].second < 0;
        } else {
            return 0 < b[j].second;
        }
    }
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            int e = a[i].second + b[j].second;
            if (e) r.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return r;
}

Mono mono_pow(const Mono& a, int k) {
    if (k == 0) return {};
    Mono r = a;
    for (auto& p : r) p.second *= k;
    return r;
}

int mono_exp(const Mono& m, int var) {
    for (auto& [v, e] : m)
        if (v == var) return e;
    return 0;
}

VarRegistry::VarRegistry(std::vector<std::string> vertex_names, std::vector<Root> roots)
    : n_vertex_(int(vertex_names.size())), names_(std::move(vertex_names)), roots_(std::move(roots)) {
    for (auto& r : roots_) {
        for (auto& [m, c] : r.square)
            for (auto& [v, e] : m)
                if (v >= n_vertex_) fail(Err::Input, "root " + r.name + " refers to a root variable");
        names_.push_back(r.name);
    }
    for (int i = 0; i < int(names_.size()); ++i)
        if (!index_.emplace(names_[i], i).second) fail(Err::Input, "duplicate variable " + names_[i]);
}

int VarRegistry::index(const std::string& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? -1 : it->second;
}

int VarRegistry::at(const std::string& n) const {
    int i = index(n);
    if (i < 0) fail(Err::Input, "unknown variable " + n);
    return i;
}

void check_same(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.registry() != q.registry()) fail(Err::RegistryMismatch, "polynomials from different registries");
}

LaurentPoly::LaurentPoly(RegPtr r, const mpq_class& c) : reg_(std::move(r)) {
    if (c != 0) {
        terms_[Mono{}] = c;
        terms_.begin()->second.canonicalize();
    }
}

LaurentPoly::LaurentPoly(RegPtr r, Terms t) : reg_(std::move(r)), terms_(std::move(t)) {
    for (auto& [m, c] : terms_) c.canonicalize();
    reduce();
}

LaurentPoly LaurentPoly::var(RegPtr r, int v, int e) { return monomial(std::move(r), e ? Mono{{v, e}} : Mono{}); }

LaurentPoly LaurentPoly::var(RegPtr r, const std::string& name, int e) {
    int v = r->at(name);
    return var(std::move(r), v, e);
}

LaurentPoly LaurentPoly::monomial(RegPtr r, const Mono& m, const mpq_class& c) {
    Terms t;
    t[m] = c;
    return LaurentPoly(std::move(r), std::move(t));
}

bool LaurentPoly::has_roots() const {
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m)
            if (reg_->is_root(v)) return true;
    return false;
}

void LaurentPoly::reduce() {
    std::vector<std::pair<Mono, mpq_class>> work(terms_.begin(), terms_.end());
    Terms out;
    bool dirty = false;
    for (auto& [m, c] : work)
        for (auto& [v, e] : m)
            if (reg_->is_root(v) && (e < 0 || e > 1)) dirty = true;
    if (!dirty) {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        return;
    }
    while (!work.empty()) {
        auto [m, c] = std::move(work.back());
        work.pop_back();
        if (c == 0) continue;
        int hit = -1;
        for (size_t k = 0; k < m.size(); ++k) {
            auto [v, e] = m[k];
            if (!reg_->is_root(v)) continue;
            if (e < 0) fail(Err::NotDivisible, "negative exponent on root variable " + reg_->name(v));
            if (e > 1) {
                hit = int(k);
                break;
            }
        }
        if (hit < 0) {
            out[m] += c;
            continue;
        }
        int v = m[hit].first;
        Mono rest = mono_mul(m, Mono{{v, -2}});
        for (auto& [sm, sc] : reg_->square(v)) work.emplace_back(mono_mul(rest, sm), c * sc);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    terms_ = std::move(out);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

static void add_into(Terms& t, const Mono& m, const mpq_class& c) {
    auto [it, fresh] = t.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
    if (!p.reg_) return q;
    if (!q.reg_) return p;
    check_same(p, q);
    LaurentPoly r = p;
    for (auto& [m, c] : q.terms_) add_into(r.terms_, m, c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) { return p + (-q); }

LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
    check_same(p, q);
    Terms t;
    for (auto& [a, ca] : p.terms_)
        for (auto& [b, cb] : q.terms_) add_into(t, mono_mul(a, b), ca * cb);
    return LaurentPoly(p.reg_, std::move(t));
}

LaurentPoly operator*(const mpq_class& c, const LaurentPoly& p) {
    LaurentPoly r(p.reg_);
    if (c == 0) return r;
    r.terms_ = p.terms_;
    for (auto& [m, x] : r.terms_) x *= c;
    return r;
}

bool operator==(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.reg_ && q.reg_) check_same(p, q);
    return p.terms_ == q.terms_;
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (k < 0) {
        if (!is_monomial()) fail(Err::NotDivisible, "negative power of a non-monomial");
        auto& [m, c] = *terms_.begin();
        mpq_class ci = 1 / c, cc = 1;
        for (int i = 0; i < -k; ++i) cc *= ci;
        return monomial(reg_, mono_pow(m, k), cc);
    }
    LaurentPoly r(reg_, mpq_class(1)), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

LaurentPoly LaurentPoly::shift(const Mono& m) const {
    Terms t;
    for (auto& [a, c] : terms_) t.emplace(mono_mul(a, m), c);
    return LaurentPoly(reg_, std::move(t));
}

namespace {

// polynomial long division, both operands with nonnegative exponents
Terms poly_divide(Terms num, const Terms& den) {
    Terms quo;
    auto lt = std::prev(den.end());
    while (!num.empty()) {
        auto top = std::prev(num.end());
        Mono qm = mono_mul(top->first, mono_pow(lt->first, -1));
        for (auto& [v, e] : qm)
            if (e < 0) fail(Err::NotDivisible, "division leaves a remainder");
        mpq_class qc = top->second / lt->second;
        quo[qm] = qc;
        for (auto& [m, c] : den) add_into(num, mono_mul(m, qm), -qc * c);
    }
    return quo;
}

}

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& q) const {
    check_same(*this, q);
    if (q.is_zero()) fail(Err::DivZero, "division by zero polynomial");
    if (q.is_monomial()) {
        auto& [m, c] = *q.terms_.begin();
        Terms t;
        Mono inv = mono_pow(m, -1);
        for (auto& [a, x] : terms_) t.emplace(mono_mul(a, inv), x / c);
        return LaurentPoly(reg_, std::move(t));
    }
    if (q.has_roots()) fail(Err::NotDivisible, "divisor contains root variables");
    // monomial content of q
    std::map<int, int> qmin;
    bool first = true;
    for (auto& [m, c] : q.terms_) {
        std::map<int, int> cur(m.begin(), m.end());
        if (first) {
            qmin = cur;
            first = false;
            continue;
        }
        for (auto it = qmin.begin(); it != qmin.end();) {
            int e = cur.count(it->first) ? cur[it->first] : 0;
            it->second = std::min(it->second, e);
            it = it->second == 0 ? qmin.erase(it) : std::next(it);
        }
        for (auto& [v, e] : cur)
            if (e < 0 && !qmin.count(v)) qmin[v] = e;
    }
    Mono content(qmin.begin(), qmin.end());
    Terms qn;
    for (auto& [m, c] : q.terms_) qn.emplace(mono_mul(m, mono_pow(content, -1)), c);

    // split by root pattern
    std::map<Mono, Terms> comps;
    for (auto& [m, c] : terms_) {
        Mono rootpart, rest;
        for (auto& pe : m) (reg_->is_root(pe.first) ? rootpart : rest).push_back(pe);
        comps[rootpart].emplace(rest, c);
    }
    Terms out;
    for (auto& [rp, comp] : comps) {
        std::map<int, int> lo;
        for (auto& [m, c] : comp)
            for (auto& [v, e] : m)
                if (e < 0) lo[v] = std::min(lo[v], e);
        Mono lift;
        for (auto& [v, e] : lo) lift.emplace_back(v, -e);
        Terms shifted;
        for (auto& [m, c] : comp) shifted.emplace(mono_mul(m, lift), c);
        Terms quo = poly_divide(std::move(shifted), qn);
        Mono back = mono_mul(mono_pow(lift, -1), mono_pow(content, -1));
        back = mono_mul(back, rp);
        for (auto& [m, c] : quo) add_into(out, mono_mul(m, back), c);
    }
    return LaurentPoly(reg_, std::move(out));
}

double LaurentPoly::eval(const std::vector<double>& x) const { return eval_euler(x, -1).first; }

std::pair<double, double> LaurentPoly::eval_euler(const std::vector<double>& x, int var) const {
    if (int(x.size()) < reg_->n_vertex()) fail(Err::Input, "missing assignment");
    int nr = reg_->n_vars() - reg_->n_vertex();
    std::vector<double> rv(nr, -1), rd(nr, 0);
    auto root = [&](int v) {
        int k = v - reg_->n_vertex();
        if (rv[k] < 0) {
            LaurentPoly sq(reg_, reg_->square(v));
            auto [val, der] = sq.eval_euler(x, var);
            if (val < 0) fail(Err::Domain, "negative value under root " + reg_->name(v));
            rv[k] = std::sqrt(val);
            rd[k] = val == 0 ? 0 : der / (2 * val);
        }
        return k;
    };
    double tot = 0, dtot = 0;
    for (auto& [m, c] : terms_) {
        double t = c.get_d(), lg = 0;
        for (auto& [v, e] : m) {
            if (reg_->is_root(v)) {
                int k = root(v);
                t *= std::pow(rv[k], e);
                lg += e * rd[k];
            } else {
                t *= std::pow(x[v], e);
                if (v == var) lg += e;
            }
        }
        tot += t;
        dtot += t * lg;
    }
    return {tot, dtot};
}

mpq_class LaurentPoly::eval_exact(const std::vector<mpq_class>& x) const {
    if (int(x.size()) < reg_->n_vertex()) fail(Err::Input, "missing assignment");
    mpq_class tot = 0;
    for (auto& [m, c] : terms_) {
        mpq_class t = c;
        for (auto& [v, e] : m) {
            if (reg_->is_root(v)) fail(Err::Domain, "exact evaluation with a root variable");
            if (x[v] == 0 && e < 0) fail(Err::DivZero, "zero assigned to a variable with negative exponent");
            mpq_class b = e > 0 ? x[v] : 1 / x[v];
            for (int i = 0; i < std::abs(e); ++i) t *= b;
        }
        tot += t;
    }
    return tot;
}

static std::string mono_str(const VarRegistry& reg, const Mono& m) {
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += reg.name(v);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpq_class c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (!s.empty()) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        std::string ms = mono_str(*reg_, it->first);
        if (ms.empty()) s += c.get_str();
        else if (c == 1) s += ms;
        else s += c.get_str() + "*" + ms;
    }
    return s;
}

static nlohmann::ordered_json terms_to_json(const VarRegistry& reg, const Terms& t) {
    auto arr = nlohmann::ordered_json::array();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        nlohmann::ordered_json e;
        e["coeff"] = it->second.get_str();
        auto ex = nlohmann::ordered_json::object();
        for (auto& [v, k] : it->first) ex[reg.name(v)] = k;
        e["exps"] = ex;
        arr.push_back(e);
    }
    return arr;
}

std::string terms_json(const VarRegistry& reg, const Terms& t) { return terms_to_json(reg, t).dump(); }

std::string LaurentPoly::to_json() const {
    nlohmann::ordered_json j;
    auto vars = nlohmann::ordered_json::array();
    for (int i = 0; i < reg_->n_vertex(); ++i) vars.push_back(reg_->name(i));
    j["vars"] = vars;
    auto roots = nlohmann::ordered_json::array();
    for (int i = reg_->n_vertex(); i < reg_->n_vars(); ++i) {
        nlohmann::ordered_json r;
        r["name"] = reg_->name(i);
        r["square"] = {{"terms", terms_to_json(*reg_, reg_->square(i))}};
        roots.push_back(r);
    }
    j["roots"] = roots;
    j["terms"] = terms_to_json(*reg_, terms_);
    return j.dump();
}

namespace {

struct PolyParser {
    const RegPtr& reg;
    const std::string& s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    LaurentPoly expr() {
        LaurentPoly v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    LaurentPoly term() {
        LaurentPoly v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v = v.div_exact(factor());
            else return v;
        }
    }
    int integer() {
        ws();
        bool neg = eat('-');
        ws();
        size_t st = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (st == i) fail(Err::Input, "expected integer exponent");
        int k = std::stoi(s.substr(st, i - st));
        return neg ? -k : k;
    }
    LaurentPoly factor() {
        ws();
        if (eat('-')) return -factor();
        LaurentPoly b = base();
        if (eat('^')) return b.pow(integer());
        return b;
    }
    LaurentPoly base() {
        ws();
        if (eat('(')) {
            LaurentPoly v = expr();
            if (!eat(')')) fail(Err::Input, "expected )");
            return v;
        }
        size_t st = i;
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            return LaurentPoly(reg, mpq_class(mpz_class(s.substr(st, i - st), 10)));
        }
        while (i < s.size()) {
            char c = s[i];
            if (std::isalnum((unsigned char)c) || c == '_') ++i;
            else if (c == '[') {
                while (i < s.size() && s[i] != ']') ++i;
                ++i;
            } else break;
        }
        if (st == i) fail(Err::Input, "unexpected character in polynomial '" + s + "'");
        return LaurentPoly::var(reg, s.substr(st, i - st));
    }
};

}

LaurentPoly lp_parse(const RegPtr& reg, const std::string& text) {
    PolyParser p{reg, text};
    LaurentPoly v = p.expr();
    p.ws();
    if (p.i != text.size()) fail(Err::Input, "trailing text in polynomial '" + text + "'");
    return v;
}

}
