#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "tanglekit/common.hpp"

namespace tanglekit {

// Exact rational with 64-bit numerator/denominator, normalized so that the
// denominator is positive and gcd(num, den) = 1. Intermediate products go
// through __int128; desk-scale values never approach the limits, but we
// still fail loudly on overflow instead of wrapping.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rational pow(int e) const {
        Rational r(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rational from128(i128 n, i128 d) {
        if (d == 0) throw numeric_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw numeric_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        Rational r = from128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Element of Z[d1, d2]: sparse exponent-pair -> coefficient map with no zero
// coefficients stored. d1 and d2 are the two loop-removal parameters.
class TwoParamPoly {
public:
    // (m, n) -> coefficient of d1^m d2^n
    using Key = std::pair<int, int>;

    TwoParamPoly() = default;
    TwoParamPoly(std::int64_t c) {
        if (c != 0) terms_[{0, 0}] = c;
    }

    static TwoParamPoly monomial(int m, int n, std::int64_t c = 1) {
        TwoParamPoly p;
        if (c != 0) p.terms_[{m, n}] = c;
        return p;
    }
    static TwoParamPoly d1() { return monomial(1, 0); }
    static TwoParamPoly d2() { return monomial(0, 1); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_one() const noexcept {
        return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
               terms_.begin()->second == 1;
    }
    const std::map<Key, std::int64_t>& terms() const noexcept { return terms_; }

    friend TwoParamPoly operator+(const TwoParamPoly& a, const TwoParamPoly& b) {
        TwoParamPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend TwoParamPoly operator-(const TwoParamPoly& a, const TwoParamPoly& b) {
        TwoParamPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    friend TwoParamPoly operator*(const TwoParamPoly& a, const TwoParamPoly& b) {
        TwoParamPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term({ka.first + kb.first, ka.second + kb.second}, mul_checked(ca, cb));
        return r;
    }
    friend bool operator==(const TwoParamPoly& a, const TwoParamPoly& b) {
        return a.terms_ == b.terms_;
    }

    void add_term(Key k, std::int64_t c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Exact evaluation at rational parameter values.
    Rational specialize(const Rational& delta1, const Rational& delta2) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_)
            acc = acc + Rational(c) * delta1.pow(k.first) * delta2.pow(k.second);
        return acc;
    }

    // Terms sorted by (m, n) descending, e.g. "2*d1^2*d2 - 1".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            std::int64_t a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            const bool has_var = k.first > 0 || k.second > 0;
            if (a != 1 || !has_var) os << a;
            if (a != 1 && has_var) os << "*";
            if (k.first > 0) {
                os << "d1";
                if (k.first > 1) os << "^" << k.first;
            }
            if (k.second > 0) {
                if (k.first > 0) os << "*";
                os << "d2";
                if (k.second > 1) os << "^" << k.second;
            }
        }
        return os.str();
    }

private:
    static std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
        __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN) throw numeric_error("coefficient overflow");
        return static_cast<std::int64_t>(p);
    }

    std::map<Key, std::int64_t> terms_;
};

} // namespace tanglekit
