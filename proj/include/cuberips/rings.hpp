#pragma once

// Coefficient rings for chains and cochains: F2, Q, Z. Field operations are
// what the elimination kernels need; Z supports Smith normal form only.

#include <cstdint>
#include <string>

#include "cuberips/hypercube.hpp"

namespace cuberips {

struct F2Ring {
    using Elem = std::uint8_t;  // 0 or 1
    static constexpr bool is_field = true;
    static const char* name() { return "f2"; }
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem add(Elem a, Elem b) { return a ^ b; }
    static Elem sub(Elem a, Elem b) { return a ^ b; }
    static Elem mul(Elem a, Elem b) { return a & b; }
    static Elem neg(Elem a) { return a; }
    static Elem inv(Elem a) { return a; }
    static bool is_zero(Elem a) { return a == 0; }
    static Elem from_int(long long v) { return static_cast<Elem>(((v % 2) + 2) % 2); }
    static std::string to_string(Elem a) { return a ? "1" : "0"; }
};

struct QRing {
    using Elem = BigRational;
    static constexpr bool is_field = true;
    static const char* name() { return "q"; }
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static Elem inv(const Elem& a) { return 1 / a; }
    static bool is_zero(const Elem& a) { return a == 0; }
    static Elem from_int(long long v) { return Elem(v); }
    static std::string to_string(const Elem& a) {
        if (boost::multiprecision::denominator(a) == 1) return boost::multiprecision::numerator(a).str();
        return boost::multiprecision::numerator(a).str() + "/" + boost::multiprecision::denominator(a).str();
    }
};

struct ZRing {
    using Elem = BigInt;
    static constexpr bool is_field = false;
    static const char* name() { return "z"; }
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static bool is_zero(const Elem& a) { return a == 0; }
    static Elem from_int(long long v) { return Elem(v); }
    static std::string to_string(const Elem& a) { return a.str(); }
};

}  // namespace cuberips
