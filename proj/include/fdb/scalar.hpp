#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an operation is asked for more than its supported range
// (cover enumeration size, derivative order past the truncation cap, ...).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "a/b" as well as plain integers "a".
inline Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + std::string(s));
    }
}

// The two scalar rings towers can live in. Mixing rings in one composition
// is a type error by construction (templates), matching the contract that
// mixed-ring input is rejected rather than coerced.
template <class S> struct ring_traits;

template <> struct ring_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_rat(const Rat& r) { return r; }
    static bool is_zero(const Rat& r) { return r == 0; }
};

template <> struct ring_traits<double> {
    static constexpr bool exact = false;
    static double from_rat(const Rat& r) { return static_cast<double>(r); }
    static bool is_zero(double x) { return x == 0.0; }
};

}  // namespace fdb
