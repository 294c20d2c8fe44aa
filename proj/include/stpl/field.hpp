// Exact scalars: rationals and the ordered field Q(eps) of rational functions
// in one positive infinitesimal eps.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace stpl {

/// Raised for malformed input or violated preconditions.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the standard part of an infinite element is requested.
class NotFinite : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}
    Rational(long num, long den);
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    static Rational parse(const std::string& text);
    std::string str() const;

    const mpq_class& raw() const { return value_; }
    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational abs() const { return Rational(mpq_class(::abs(value_))); }

private:
    mpq_class value_{0};
};

/// Polynomial in eps with rational coefficients; index = degree, no trailing zeros.
using Poly = std::vector<Rational>;

enum class Magnitude { zero, infinitesimal, finite, infinite };

/// Element num/den of Q(eps). Canonical form: gcd(num, den) = 1 and the
/// lowest-degree nonzero coefficient of den equals 1, so equality is syntactic.
class InfScalar {
public:
    InfScalar() : den_{Rational(1)} {}
    InfScalar(long v) : InfScalar(Rational(v)) {}
    InfScalar(const Rational& r);
    InfScalar(Poly num, Poly den);

    static InfScalar eps();

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_rational() const { return num_.size() <= 1 && den_.size() == 1; }
    /// lowdeg(num) - lowdeg(den); requires nonzero.
    int order() const;
    int sign() const;
    Magnitude classify() const;
    Rational standard_part() const;
    /// Value at a concrete rational eps0 (den must not vanish there).
    Rational evaluate(const Rational& eps0) const;

    InfScalar operator-() const;
    friend InfScalar operator+(const InfScalar& a, const InfScalar& b);
    friend InfScalar operator-(const InfScalar& a, const InfScalar& b);
    friend InfScalar operator*(const InfScalar& a, const InfScalar& b);
    friend InfScalar operator/(const InfScalar& a, const InfScalar& b);
    InfScalar& operator+=(const InfScalar& o) { return *this = *this + o; }
    InfScalar& operator-=(const InfScalar& o) { return *this = *this - o; }
    InfScalar& operator*=(const InfScalar& o) { return *this = *this * o; }
    InfScalar& operator/=(const InfScalar& o) { return *this = *this / o; }

    friend bool operator==(const InfScalar& a, const InfScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const InfScalar& a, const InfScalar& b);

    InfScalar abs() const { return sign() < 0 ? -*this : *this; }
    std::string str() const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

enum class Ordering { LT, EQ, GT };
Ordering compare(const InfScalar& a, const InfScalar& b);

// Polynomial helpers (exposed for tests and the order oracle).
namespace poly {
void trim(Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
/// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Rational eval(const Poly& p, const Rational& x);
int lowdeg(const Poly& p);
}  // namespace poly

/// Compile-time description of the two scalar fields used by realizations.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static constexpr bool upstairs = false;
    static constexpr const char* realization = "downstairs";
    static Rational standard_part(const Rational& x) { return x; }
    static Rational from_rational(const Rational& x) { return x; }
};

template <>
struct FieldTraits<InfScalar> {
    static constexpr bool upstairs = true;
    static constexpr const char* realization = "upstairs";
    static Rational standard_part(const InfScalar& x) { return x.standard_part(); }
    static InfScalar from_rational(const Rational& x) { return InfScalar(x); }
};

inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(const InfScalar& x) { return x.sign(); }

}  // namespace stpl
