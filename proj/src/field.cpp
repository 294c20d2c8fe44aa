#include "stpl/field.hpp"

#include <algorithm>

namespace stpl {

Rational::Rational(long num, long den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    auto valid_int = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw InvalidInput("malformed rational '" + text + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw InvalidInput("rational with zero denominator '" + text + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    value_ /= o.value_;
    return *this;
}

namespace poly {

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.empty()) throw InvalidInput("polynomial division by zero");
    Poly rem = a;
    trim(rem);
    if (rem.size() < b.size()) return {Poly{}, rem};
    Poly quot(rem.size() - b.size() + 1);
    const Rational& lead = b.back();
    while (!rem.empty() && rem.size() >= b.size()) {
        size_t shift = rem.size() - b.size();
        Rational c = rem.back() / lead;
        quot[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) rem[shift + j] -= c * b[j];
        rem.pop_back();
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

Rational eval(const Poly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int lowdeg(const Poly& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

}  // namespace poly

InfScalar::InfScalar(const Rational& r) : den_{Rational(1)} {
    if (!r.is_zero()) num_.push_back(r);
}

InfScalar::InfScalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    poly::trim(num_);
    poly::trim(den_);
    if (den_.empty()) throw InvalidInput("Q(eps) element with zero denominator");
    normalize();
}

InfScalar InfScalar::eps() { return InfScalar(Poly{Rational(0), Rational(1)}, Poly{Rational(1)}); }

void InfScalar::normalize() {
    if (num_.empty()) {
        den_ = {Rational(1)};
        return;
    }
    if (den_.size() > 1 && num_.size() > 1) {
        Poly g = poly::gcd(num_, den_);
        if (g.size() > 1) {
            num_ = poly::divmod(num_, g).first;
            den_ = poly::divmod(den_, g).first;
        }
    }
    Rational low = den_[static_cast<size_t>(poly::lowdeg(den_))];
    if (!(low == Rational(1))) {
        for (auto& c : num_) c /= low;
        for (auto& c : den_) c /= low;
    }
}

int InfScalar::order() const {
    if (is_zero()) throw InvalidInput("order of zero is undefined");
    return poly::lowdeg(num_) - poly::lowdeg(den_);
}

int InfScalar::sign() const {
    if (is_zero()) return 0;
    // den's lowest coefficient is 1 in canonical form.
    return num_[static_cast<size_t>(poly::lowdeg(num_))].sign();
}

Magnitude InfScalar::classify() const {
    if (is_zero()) return Magnitude::zero;
    int o = order();
    if (o > 0) return Magnitude::infinitesimal;
    if (o == 0) return Magnitude::finite;
    return Magnitude::infinite;
}

Rational InfScalar::standard_part() const {
    if (is_zero()) return Rational(0);
    int o = order();
    if (o < 0) throw NotFinite("standard part of an infinite element " + str());
    if (o > 0) return Rational(0);
    return num_[static_cast<size_t>(poly::lowdeg(num_))] /
           den_[static_cast<size_t>(poly::lowdeg(den_))];
}

Rational InfScalar::evaluate(const Rational& eps0) const {
    return poly::eval(num_, eps0) / poly::eval(den_, eps0);
}

InfScalar InfScalar::operator-() const {
    InfScalar r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

InfScalar operator+(const InfScalar& a, const InfScalar& b) {
    if (a.den_ == b.den_) return InfScalar(poly::add(a.num_, b.num_), a.den_);
    return InfScalar(poly::add(poly::mul(a.num_, b.den_), poly::mul(b.num_, a.den_)),
                     poly::mul(a.den_, b.den_));
}

InfScalar operator-(const InfScalar& a, const InfScalar& b) { return a + (-b); }

InfScalar operator*(const InfScalar& a, const InfScalar& b) {
    return InfScalar(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_));
}

InfScalar operator/(const InfScalar& a, const InfScalar& b) {
    if (b.is_zero()) throw InvalidInput("division by zero");
    return InfScalar(poly::mul(a.num_, b.den_), poly::mul(a.den_, b.num_));
}

std::strong_ordering operator<=>(const InfScalar& a, const InfScalar& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Ordering compare(const InfScalar& a, const InfScalar& b) {
    auto c = a <=> b;
    return c < 0 ? Ordering::LT : (c > 0 ? Ordering::GT : Ordering::EQ);
}

std::string InfScalar::str() const {
    auto poly_str = [](const Poly& p) {
        if (p.empty()) return std::string("0");
        std::string out;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i].is_zero()) continue;
            std::string c = p[i].str();
            if (!out.empty()) out += c[0] == '-' ? "" : "+";
            out += "(" + c + ")";
            if (i == 1) out += "e";
            if (i > 1) out += "e^" + std::to_string(i);
        }
        return out;
    };
    if (den_.size() == 1) return poly_str(num_);
    return "[" + poly_str(num_) + "]/[" + poly_str(den_) + "]";
}

}  // namespace stpl
