#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace srlab {

enum class Part : int { one = 1, two = 2 };

constexpr Part other(Part p) { return p == Part::one ? Part::two : Part::one; }
constexpr int part_index(Part p) { return p == Part::one ? 0 : 1; }
constexpr Part part_from_index(int i) { return i == 0 ? Part::one : Part::two; }
inline int part_label(Part p) { return static_cast<int>(p); }

struct VertexRef {
    Part part;
    int index;

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

// Exact rational, used wherever a threshold comparison must not be subject to
// floating-point rounding (expansion ratios, removal rules, degree budgets).
struct Ratio {
    long long num = 0;
    long long den = 1;

    Ratio() = default;
    Ratio(long long n) : num(n), den(1) {}
    Ratio(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Ratio operator+(Ratio a, Ratio b) { return Ratio(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Ratio operator-(Ratio a, Ratio b) { return Ratio(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Ratio operator*(Ratio a, Ratio b) { return Ratio(a.num * b.num, a.den * b.den); }
    friend Ratio operator/(Ratio a, Ratio b) {
        if (b.num == 0) throw std::invalid_argument("Ratio: division by zero");
        return Ratio(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return a == b || a < b; }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return b <= a; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// cmp of count (integer) against ratio * scale without rounding
inline bool count_at_least(long long count, Ratio r, long long scale) {
    return static_cast<__int128>(count) * r.den >= static_cast<__int128>(r.num) * scale;
}
inline bool count_greater(long long count, Ratio r, long long scale) {
    return static_cast<__int128>(count) * r.den > static_cast<__int128>(r.num) * scale;
}

// Parses "a/b", "a", or a plain decimal like "0.03125" into an exact Ratio.
inline Ratio parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return Ratio(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Ratio(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long long den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) {
        if (den > 1'000'000'000'000'000LL) throw std::invalid_argument("parse_ratio: too many digits");
        den *= 10;
    }
    return Ratio(std::stoll(digits), den);
}

struct EnumerationBudget {
    std::uint64_t max_nodes = std::uint64_t(1) << 26;
};

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidVertexError : Error { using Error::Error; };
struct SamePartError : Error { using Error::Error; };
struct DuplicateEdgeError : Error { using Error::Error; };

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what) : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct EnumerationBudgetExceededError : Error {
    std::uint64_t budget;
    explicit EnumerationBudgetExceededError(std::uint64_t b)
        : Error("enumeration budget of " + std::to_string(b) + " nodes exceeded"), budget(b) {}
};

}  // namespace srlab
