#pragma once
/**
 * @file rational.hpp
 * @brief Exact rational scalar used by every table, metric and residual.
 *
 * Backed by GMP's mpq_class. Values are always kept canonical (lowest
 * terms, positive denominator). The text form is "p/q" or "p" with the
 * sign carried by the numerator.
 */
#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fflat {

/// Thrown for malformed text input (rationals, files, CLI arguments).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Rat {
public:
    Rat() = default;
    Rat(int n) : v_(n) {}                                   // NOLINT: implicit by intent
    Rat(long n) : v_(n) {}                                  // NOLINT
    Rat(long long n) : v_(std::to_string(n)) {}             // NOLINT
    Rat(unsigned long n) : v_(n) {}                         // NOLINT
    Rat(long num, long den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_ = mpq_class(mpz_class(num), mpz_class(den));
        v_.canonicalize();
    }

    /// Parses "p", "-p", "p/q" (whitespace around the token is ignored).
    static Rat parse(std::string_view text) {
        std::size_t b = 0, e = text.size();
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        std::string tok(text.substr(b, e - b));
        if (tok.empty()) throw ParseError("empty rational literal");
        auto valid_int = [](std::string_view s) {
            std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
            return true;
        };
        auto slash = tok.find('/');
        std::string num = tok.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw ParseError("malformed rational literal '" + tok + "'");
        if (num[0] == '+') num.erase(0, 1);
        mpz_class n(num), d(den);
        if (d == 0) throw ParseError("zero denominator in '" + tok + "'");
        Rat r;
        r.v_ = mpq_class(n, d);
        r.v_.canonicalize();
        return r;
    }

    [[nodiscard]] std::string str() const { return v_.get_str(); }
    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] const mpq_class& raw() const { return v_; }
    [[nodiscard]] Rat numerator() const { Rat r; r.v_ = v_.get_num(); return r; }
    [[nodiscard]] Rat denominator() const { Rat r; r.v_ = v_.get_den(); return r; }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(Rat a) { a.v_ = -a.v_; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

} // namespace fflat
