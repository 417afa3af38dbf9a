#pragma once

#include <map>
#include <memory>

#include "descentff/factor.hpp"
#include "descentff/quotient.hpp"

namespace dff {

// One root of f in k, found by seeded equal-degree splitting of the product
// of linear factors. Errors if f has no root in k.
template <FiniteFieldCtx K>
typename K::Elem find_root(const K& k, const Poly<K>& f, std::uint64_t seed) {
    require(!f.c.empty() && pol::degi(f) >= 1, errc::degenerate_input, "root of constant polynomial");
    Poly<K> x = pol::monomial(k, k.one(), 1);
    Poly<K> xq = pol::pow_mod(k, x, k.order(), f);
    Poly<K> lin = pol::gcd(k, pol::sub(k, xq, pol::rem(k, x, f)), f);
    require(!lin.c.empty() && pol::degi(lin) >= 1, errc::internal_consistency,
            "polynomial has no root in the target field");
    Rng rng(seed ^ 0xf00d5eedULL);
    while (pol::degi(lin) > 1) {
        // split lin by the quadratic-residue criterion on a random shift
        Poly<K> a;
        a.c.resize(pol::degi(lin));
        for (auto& c : a.c) c = k.sample(rng);
        pol::trim(k, a);
        if (a.c.empty()) continue;
        Poly<K> g = pol::gcd(k, a, lin);
        if (pol::degi(g) > 0 && pol::degi(g) < pol::degi(lin)) { lin = g; continue; }
        mpz_class e = (k.order() - 1) / 2;
        Poly<K> b = pol::pow_mod(k, a, e, lin);
        Poly<K> g2 = pol::gcd(k, pol::sub(k, b, pol::one(k)), lin);
        if (pol::degi(g2) > 0 && pol::degi(g2) < pol::degi(lin)) lin = g2;
    }
    return k.neg(pol::monic(k, lin).c[0]);
}

// F_p-linear embedding between two extension fields of the same prime field,
// determined by the image of the source generator.
struct Embedding {
    std::shared_ptr<const ExtField> from;
    std::shared_ptr<const ExtField> to;
    ExtField::Elem gen_image;

    ExtField::Elem operator()(const ExtField::Elem& a) const {
        // Horner in the image of the generator; source coefficients are
        // prime-field scalars
        ExtField::Elem r = to->zero();
        for (size_t i = a.size(); i-- > 0;) {
            r = to->mul(r, gen_image);
            r = to->add(r, to->from_base(a[i]));
        }
        return r;
    }
};

// Registry of standard extensions of one prime field, with embedding
// construction. Moduli are seeded-random irreducibles, so a run is fully
// reproducible from the root seed. Not thread-safe; callers own the
// single-threaded construction phase.
class FieldTower {
  public:
    FieldTower(std::uint64_t p, std::uint64_t seed) : p_(p), prime_(p), seed_(seed) {}

    std::uint64_t p() const { return p_; }
    const PrimeFieldFq& prime() const { return prime_; }

    // F_{p^n} with a seeded canonical modulus
    std::shared_ptr<const ExtField> standard(unsigned n) {
        require(n >= 1, errc::degenerate_input, "extension degree must be positive");
        auto it = standard_.find(n);
        if (it != standard_.end()) return it->second;
        std::vector<std::uint64_t> mod;
        if (n == 1) {
            mod = {0, 1};  // F_p[z]/(z), so elements are plain residues
        } else {
            Poly<PrimeFieldFq> f = fac::random_irreducible(prime_, static_cast<int>(n),
                                                           seed_ ^ (0x1057ull * n));
            mod = f.c;
        }
        auto fld = std::make_shared<ExtField>(PrimeField(p_), std::move(mod));
        standard_[n] = fld;
        return fld;
    }

    // Wrap an externally constructed extension (e.g. a quotient by a factor
    // discovered during triangular solving) so it can be embedded later.
    std::shared_ptr<const ExtField> adopt(ExtField f) {
        return std::make_shared<ExtField>(std::move(f));
    }

    // Embedding from -> to; requires deg(from) | deg(to). Cached per pair.
    Embedding embed(std::shared_ptr<const ExtField> from, std::shared_ptr<const ExtField> to) {
        require(from->p() == p_ && to->p() == p_, errc::unsupported_field,
                "embedding across different characteristics");
        require(to->degree() % from->degree() == 0, errc::unsupported_field,
                "no embedding: source degree does not divide target degree");
        auto key = std::make_pair(from.get(), to.get());
        auto it = embeds_.find(key);
        if (it != embeds_.end()) return {from, to, it->second};
        ExtField::Elem img;
        if (from->degree() == 1) {
            // source is F_p presented as a degree-1 quotient; its generator is
            // the residue of z, a prime-field constant
            img = to->from_base(from->gen()[0]);
        } else {
            // image of the generator = a root of the source modulus in `to`
            Poly<ExtField> f;
            f.c.reserve(from->modulus().size());
            for (auto c : from->modulus()) f.c.push_back(to->from_base(c));
            pol::trim(*to, f);
            img = find_root(*to, f, seed_ ^ 0xe3bedULL);
        }
        embeds_[key] = img;
        return {from, to, img};
    }

  private:
    std::uint64_t p_;
    PrimeFieldFq prime_;
    std::uint64_t seed_;
    std::map<unsigned, std::shared_ptr<const ExtField>> standard_;
    std::map<std::pair<const ExtField*, const ExtField*>, ExtField::Elem> embeds_;
};

}  // namespace dff
