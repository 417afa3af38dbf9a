#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dff {

// Error kinds mirror the failure modes of the public operations. Every
// throwing path uses one of these so callers (and the CLI) can map a
// failure to an exit code without string matching.
enum class errc {
    degenerate_input,
    unsupported_field,
    unsupported_curve,
    unsupported_denominator,
    not_on_jacobian,
    not_on_curve,
    malformed,
    curve_mismatch,
    place_mismatch,
    undefined_valuation,
    empty_divisor,
    map_undefined,
    not_in_image,
    incomplete_data,
    internal_consistency,
    budget_exceeded,
    parse_error,
    input_error,
};

class error : public std::runtime_error {
  public:
    error(errc k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    errc kind() const { return kind_; }

  private:
    errc kind_;
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

inline void require(bool ok, errc k, const std::string& msg) {
    if (!ok) fail(k, msg);
}

// Degree of a polynomial. The zero polynomial gets a dedicated state that
// refuses integer comparison instead of a -1 that silently mixes into
// arithmetic.
class Degree {
  public:
    static Degree neg_infinity() { return Degree(true, 0); }
    static Degree of(int v) { return Degree(false, v); }

    bool is_neg_infinity() const { return neg_inf_; }
    int value() const {
        require(!neg_inf_, errc::degenerate_input, "degree of zero polynomial has no integer value");
        return v_;
    }

    friend bool operator==(const Degree& a, const Degree& b) {
        if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ && b.neg_inf_;
        return a.v_ == b.v_;
    }
    friend bool operator<(const Degree& a, const Degree& b) {
        if (a.neg_inf_) return !b.neg_inf_;
        if (b.neg_inf_) return false;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Degree& a, const Degree& b) { return a < b || a == b; }

  private:
    Degree(bool ni, int v) : neg_inf_(ni), v_(v) {}
    bool neg_inf_;
    int v_;
};

// splitmix64; the one generator used everywhere so a single root seed
// pins every randomized subroutine.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t lim = ~0ull - (~0ull % n);
        std::uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }

    // independent child stream; used to split one root seed per module
    Rng split(std::uint64_t tag) const {
        Rng t(s_ ^ (0xd1342543de82ef95ull * (tag + 1)));
        t.next();
        return t;
    }

  private:
    std::uint64_t s_;
};

namespace mod64 {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    // extended euclid on signed 128-bit intermediates
    require(a % p != 0, errc::degenerate_input, "inverse of zero");
    __int128 t = 0, newt = 1;
    __int128 r = p, newr = a % p;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace mod64

// Canonical encodings used for deterministic ordering, deduplication and
// report serialization of field elements.
using Key = std::vector<std::uint64_t>;

inline int key_cmp(const Key& a, const Key& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

}  // namespace dff
