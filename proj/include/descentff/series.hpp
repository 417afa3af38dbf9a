#pragma once

#include "descentff/poly.hpp"

namespace dff {

// Truncated Laurent series sum c[i] tau^(lo+i); coefficients are valid for
// exponents < prec. Exactness is tracked through prec so a valuation read
// can tell "zero so far" from "known zero".
template <FieldCtx K>
struct Laurent {
    int lo = 0;
    int prec = 0;  // exponents >= prec are unknown
    std::vector<typename K::Elem> c;
};

namespace ser {

template <FieldCtx K>
Laurent<K> zero(const K&, int prec) {
    return {prec, prec, {}};
}

template <FieldCtx K>
Laurent<K> from_coeffs(const K& k, int lo, std::vector<typename K::Elem> cs, int prec) {
    Laurent<K> s{lo, prec, std::move(cs)};
    if (lo + static_cast<int>(s.c.size()) > prec) s.c.resize(prec - lo);
    // normalize leading zeros away
    size_t i = 0;
    while (i < s.c.size() && k.is_zero(s.c[i])) ++i;
    if (i > 0) {
        s.c.erase(s.c.begin(), s.c.begin() + i);
        s.lo += static_cast<int>(i);
    }
    if (s.c.empty()) s.lo = s.prec;
    return s;
}

template <FieldCtx K>
Laurent<K> constant(const K& k, const typename K::Elem& e, int prec) {
    if (k.is_zero(e) || prec <= 0) return zero(k, prec);
    return {0, prec, {e}};
}

// tau^n
template <FieldCtx K>
Laurent<K> tau_pow(const K& k, int n, int prec) {
    if (n >= prec) return zero(k, prec);
    return {n, prec, {k.one()}};
}

template <FieldCtx K>
typename K::Elem coeff(const K& k, const Laurent<K>& a, int e) {
    if (e < a.lo || e - a.lo >= static_cast<int>(a.c.size())) return k.zero();
    return a.c[e - a.lo];
}

// valuation if a nonzero coefficient is stored; otherwise nullopt meaning
// "valuation >= prec, increase precision to decide"
template <FieldCtx K>
std::optional<int> valuation(const K& k, const Laurent<K>& a) {
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!k.is_zero(a.c[i])) return a.lo + static_cast<int>(i);
    return std::nullopt;
}

template <FieldCtx K>
Laurent<K> add(const K& k, const Laurent<K>& a, const Laurent<K>& b) {
    int prec = std::min(a.prec, b.prec);
    int lo = std::min(a.lo, b.lo);
    if (lo >= prec) return zero(k, prec);
    std::vector<typename K::Elem> cs(prec - lo, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        int e = a.lo + static_cast<int>(i);
        if (e < prec) cs[e - lo] = a.c[i];
    }
    for (size_t i = 0; i < b.c.size(); ++i) {
        int e = b.lo + static_cast<int>(i);
        if (e < prec) cs[e - lo] = k.add(cs[e - lo], b.c[i]);
    }
    return from_coeffs(k, lo, std::move(cs), prec);
}

template <FieldCtx K>
Laurent<K> neg(const K& k, const Laurent<K>& a) {
    Laurent<K> r = a;
    for (auto& e : r.c) e = k.neg(e);
    return r;
}

template <FieldCtx K>
Laurent<K> sub(const K& k, const Laurent<K>& a, const Laurent<K>& b) {
    return add(k, a, neg(k, b));
}

template <FieldCtx K>
Laurent<K> mul(const K& k, const Laurent<K>& a, const Laurent<K>& b) {
    // product precision: a zero-so-far factor only lowers what we can assert
    int prec;
    if (a.c.empty() || b.c.empty()) {
        prec = std::min(a.lo + std::min(b.lo, b.prec), b.lo + std::min(a.lo, a.prec));
        prec = std::min(prec, std::min(a.prec + b.lo, b.prec + a.lo));
        return zero(k, prec);
    }
    prec = std::min(a.prec + b.lo, b.prec + a.lo);
    int lo = a.lo + b.lo;
    if (lo >= prec) return zero(k, prec);
    std::vector<typename K::Elem> cs(prec - lo, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (k.is_zero(a.c[i])) continue;
        int ea = a.lo + static_cast<int>(i);
        for (size_t j = 0; j < b.c.size(); ++j) {
            int e = ea + b.lo + static_cast<int>(j);
            if (e >= prec) break;
            cs[e - lo] = k.add(cs[e - lo], k.mul(a.c[i], b.c[j]));
        }
    }
    return from_coeffs(k, lo, std::move(cs), prec);
}

template <FieldCtx K>
Laurent<K> scale(const K& k, const Laurent<K>& a, const typename K::Elem& s) {
    if (k.is_zero(s)) return zero(k, a.prec);
    Laurent<K> r = a;
    for (auto& e : r.c) e = k.mul(e, s);
    return from_coeffs(k, r.lo, std::move(r.c), r.prec);
}

// inverse of a unit-led series
template <FieldCtx K>
Laurent<K> inv(const K& k, const Laurent<K>& a) {
    require(!a.c.empty() && !k.is_zero(a.c[0]), errc::degenerate_input,
            "series inverse needs a known leading coefficient");
    int n = a.prec - a.lo;  // number of known coefficients
    std::vector<typename K::Elem> inv_c(n, k.zero());
    auto lead_inv = k.inv(a.c[0]);
    inv_c[0] = lead_inv;
    for (int i = 1; i < n; ++i) {
        auto acc = k.zero();
        for (int j = 1; j <= i; ++j) {
            auto aj = (j < static_cast<int>(a.c.size())) ? a.c[j] : k.zero();
            acc = k.add(acc, k.mul(aj, inv_c[i - j]));
        }
        inv_c[i] = k.neg(k.mul(acc, lead_inv));
    }
    return from_coeffs(k, -a.lo, std::move(inv_c), -a.lo + n);
}

template <FieldCtx K>
Laurent<K> pow_int(const K& k, const Laurent<K>& a, int e) {
    if (e == 0) return constant(k, k.one(), a.prec - 0);
    Laurent<K> base = e < 0 ? inv(k, a) : a;
    int n = e < 0 ? -e : e;
    Laurent<K> r = base;
    for (int i = 1; i < n; ++i) r = mul(k, r, base);
    return r;
}

template <FieldCtx K>
Laurent<K> truncate(const K& k, const Laurent<K>& a, int prec) {
    if (a.prec <= prec) return a;
    Laurent<K> r = a;
    if (r.lo >= prec) return zero(k, prec);
    if (r.lo + static_cast<int>(r.c.size()) > prec) r.c.resize(prec - r.lo);
    return from_coeffs(k, r.lo, std::move(r.c), prec);
}

// evaluate a polynomial (coefficients in K) at a series
template <FieldCtx K>
Laurent<K> eval_poly(const K& k, const Poly<K>& p, const Laurent<K>& s, int prec) {
    Laurent<K> r = zero(k, prec);
    for (size_t i = p.c.size(); i-- > 0;) {
        r = mul(k, r, s);
        r = add(k, r, constant(k, p.c[i], prec));
        r.prec = std::min(r.prec, prec);
    }
    if (r.c.empty() && r.lo > r.prec) r.lo = r.prec;
    return r;
}

}  // namespace ser
}  // namespace dff
