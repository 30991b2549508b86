#include "conelab/rational.hpp"

#include <stdexcept>

namespace conelab {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (num.empty() || den.empty())
        throw std::invalid_argument("malformed rational literal: " + s);
    auto digits_ok = [](const std::string& t, bool sign_allowed) {
        std::size_t i = 0;
        if (sign_allowed && (t[0] == '+' || t[0] == '-')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw std::invalid_argument("malformed rational literal: " + s);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in: " + s);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec add: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(const Rational& c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Vec unit(int d, int i) {
    Vec e(d, Rational(0));
    e.at(i) = 1;
    return e;
}

Vec zero_vec(int d) { return Vec(d, Rational(0)); }

Vec primitive(const Vec& v) {
    mpz_class den_lcm = 1;
    for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    std::vector<mpz_class> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].get_num() * (den_lcm / v[i].get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (num_gcd == 0) return zero_vec(static_cast<int>(v.size()));
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(ints[i] / num_gcd);
    return r;
}

}  // namespace conelab
