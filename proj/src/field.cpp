#include "field.hpp"
#include <cctype>

namespace c2l {

QE QE::sqrt_of(long n) {
    if (n < 0) fail(Err::Domain, "sqrt of negative");
    if (n == 0) return QE(0);
    long k = 1, m = n;
    for (long p = 2; p * p <= m; ++p)
        while (m % (p * p) == 0) {
            m /= p * p;
            k *= p;
        }
    if (m == 1) return QE(k);
    return QE(mpq_class(0), mpq_class(k), m);
}

int QE::sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpq_class l = a * a, r = b * b * d;
    if (l == r) return 0;
    return l > r ? sa : sb;
}

std::string QE::str() const {
    if (b == 0) return a.get_str();
    std::string s;
    if (a != 0) s = a.get_str() + (b > 0 ? "+" : "");
    return s + b.get_str() + "*sqrt(" + std::to_string(d) + ")";
}

QE pow(const QE& x, int n) {
    if (n < 0) return pow(x.inverse(), -n);
    QE r(1), b = x;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

namespace {

struct Parser {
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
    QE expr() {
        QE v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    QE term() {
        QE v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }
    QE factor() {
        ws();
        if (eat('-')) return -factor();
        if (eat('(')) {
            QE v = expr();
            if (!eat(')')) fail(Err::Input, "expected ) in number '" + s + "'");
            return v;
        }
        if (s.compare(i, 4, "sqrt") == 0) {
            i += 4;
            if (!eat('(')) fail(Err::Input, "expected ( after sqrt");
            QE v = expr();
            if (!eat(')')) fail(Err::Input, "expected )");
            if (!v.is_rational() || v.a.get_den() != 1 || !v.a.get_num().fits_slong_p())
                fail(Err::Input, "sqrt argument must be an integer");
            return QE::sqrt_of(v.a.get_num().get_si());
        }
        size_t st = i;
        while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '.')) ++i;
        if (st == i) fail(Err::Input, "bad number '" + s + "'");
        std::string t = s.substr(st, i - st);
        auto dot = t.find('.');
        if (dot == std::string::npos) return QE(mpq_class(mpz_class(t, 10)));
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        mpz_class den = 1;
        for (size_t k = 0; k < fp.size(); ++k) den *= 10;
        mpq_class q(mpz_class((ip.empty() ? "0" : ip) + fp, 10), den);
        q.canonicalize();
        return QE(q);
    }
};

}

QE QE::parse(const std::string& s) {
    Parser p{s};
    QE v = p.expr();
    p.ws();
    if (p.i != s.size()) fail(Err::Input, "trailing characters in number '" + s + "'");
    return v;
}

template <class Op>
static Value combine(const Value& x, const Value& y, double num, Op op) {
    Value r = Value::inexact(num);
    if (x.exact && y.exact) {
        try {
            r.exact = op(*x.exact, *y.exact);
        } catch (const Error& e) {
            if (e.code != Err::Domain) throw;
        }
    }
    return r;
}

Value operator+(const Value& x, const Value& y) {
    return combine(x, y, x.num + y.num, [](const QE& a, const QE& b) { return a + b; });
}
Value operator-(const Value& x, const Value& y) {
    return combine(x, y, x.num - y.num, [](const QE& a, const QE& b) { return a - b; });
}
Value operator*(const Value& x, const Value& y) {
    return combine(x, y, x.num * y.num, [](const QE& a, const QE& b) { return a * b; });
}
Value operator/(const Value& x, const Value& y) {
    if (y.exact && y.exact->is_zero()) fail(Err::DivZero, "division by zero");
    return combine(x, y, x.num / y.num, [](const QE& a, const QE& b) { return a / b; });
}

std::string Value::str() const { return exact ? exact->str() : std::to_string(num); }

}
