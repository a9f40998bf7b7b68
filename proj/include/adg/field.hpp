#pragma once

// Exact arithmetic in GF(p^e). Elements are dense integer codes in [0, q):
// the element with polynomial coefficients c_0..c_{e-1} (little-endian over
// F_p) has code sum c_i * p^i, so prime-subfield elements are simply 0..p-1.
// Fields are immutable after construction and safe to share across threads.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "adg/errors.hpp"

namespace adg {

using Fe = std::uint32_t;  // field element code, < q

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// q = p^e with p prime, or returns false.
inline bool factor_prime_power(std::uint64_t q, std::uint64_t& p, std::uint32_t& e) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            std::uint64_t m = q;
            std::uint32_t k = 0;
            while (m % d == 0) { m /= d; ++k; }
            if (m != 1) return false;
            p = d; e = k;
            return true;
        }
    }
    p = q; e = 1;  // q itself prime
    return true;
}

// Remainder of a (little-endian, arbitrary degree) modulo a monic divisor.
inline void poly_mod_inplace(std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& div, std::uint64_t p) {
    const std::size_t d = div.size() - 1;
    for (std::size_t k = a.size(); k-- > d;) {
        std::uint64_t f = a[k];
        if (f == 0) continue;
        a[k] = 0;
        for (std::size_t i = 0; i < d; ++i) {
            std::uint64_t v = a[k - d + i] + p - (f * div[i]) % p;
            a[k - d + i] = static_cast<std::uint32_t>(v % p);
        }
    }
    a.resize(d);
}

// Trial division by every monic polynomial of degree 1..e/2.
inline bool poly_is_irreducible(const std::vector<std::uint32_t>& m, std::uint64_t p) {
    const std::size_t e = m.size() - 1;
    std::vector<std::uint32_t> div, rem;
    for (std::size_t d = 1; d <= e / 2; ++d) {
        div.assign(d + 1, 0);
        div[d] = 1;
        // iterate all coefficient tuples of the divisor below the leading 1
        while (true) {
            rem = m;
            poly_mod_inplace(rem, div, p);
            if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; }))
                return false;
            std::size_t i = 0;
            while (i < d && div[i] + 1 == p) div[i++] = 0;
            if (i == d) break;
            ++div[i];
        }
    }
    return true;
}

}  // namespace detail

class Field {
  public:
    // Lexicographically least monic irreducible modulus, coefficient tuples
    // compared low-degree-first. Deterministic across runs.
    static Field make(std::uint64_t p, std::uint32_t e) {
        return Field(p, e, find_least_modulus(p, e));
    }

    // Alternate-modulus mode: coeffs is the full little-endian coefficient
    // list of a monic degree-e polynomial (e + 1 entries).
    static Field make(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> coeffs) {
        check_pe(p, e);
        if (e == 1) {
            if (!coeffs.empty())
                throw invalid_input("prime field GF(p) takes no modulus");
            return Field(p, e, {});
        }
        if (coeffs.size() != e + 1)
            throw invalid_input("modulus must list e+1 coefficients, low degree first");
        for (auto& c : coeffs)
            if (c >= p) throw invalid_input("modulus coefficient not reduced mod p");
        if (coeffs[e] != 1) throw invalid_input("modulus must be monic");
        if (!detail::poly_is_irreducible(coeffs, p))
            throw invalid_input("modulus is reducible over F_p");
        return Field(p, e, std::move(coeffs));
    }

    // Factors q = p^e automatically.
    static Field from_order(std::uint64_t q, std::vector<std::uint32_t> coeffs = {}) {
        std::uint64_t p;
        std::uint32_t e;
        if (!detail::factor_prime_power(q, p, e))
            throw invalid_input("q = " + std::to_string(q) + " is not a prime power");
        return coeffs.empty() ? make(p, e) : make(p, e, std::move(coeffs));
    }

    std::uint64_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint64_t q() const { return q_; }

    // Empty for prime fields (no modulus); otherwise e+1 little-endian coefficients.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fe add(Fe a, Fe b) const {
        check_elem(a); check_elem(b);
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return add_raw(a, b);
    }
    Fe sub(Fe a, Fe b) const {
        check_elem(a); check_elem(b);
        if (!sub_tab_.empty()) return sub_tab_[a * q_ + b];
        return sub_raw(a, b);
    }
    Fe mul(Fe a, Fe b) const {
        check_elem(a); check_elem(b);
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        return mul_raw(a, b);
    }
    Fe neg(Fe a) const { return sub(0, a); }

    Fe inv(Fe a) const {
        check_elem(a);
        if (a == 0) throw invalid_input("inverse of zero");
        if (!inv_tab_.empty()) return inv_tab_[a];
        return pow(a, q_ - 2);  // Fermat
    }

    Fe pow(Fe a, std::uint64_t k) const {
        check_elem(a);
        Fe r = 1, b = a;
        while (k) {
            if (k & 1) r = mul(r, b);
            b = mul(b, b);
            k >>= 1;
        }
        return r;
    }

    // All q elements in canonical order 0, 1, ..., q-1.
    std::vector<Fe> elements() const {
        std::vector<Fe> v(q_);
        for (std::uint64_t i = 0; i < q_; ++i) v[i] = static_cast<Fe>(i);
        return v;
    }

    // code <-> little-endian coefficient vector (length e)
    std::vector<std::uint32_t> decode_coeffs(Fe a) const {
        check_elem(a);
        std::vector<std::uint32_t> c(e_);
        for (std::uint32_t i = 0; i < e_; ++i) {
            c[i] = static_cast<std::uint32_t>(a % p_);
            a = static_cast<Fe>(a / p_);
        }
        return c;
    }
    Fe encode_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() != e_) throw invalid_input("coefficient vector has wrong length");
        std::uint64_t a = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= p_) throw invalid_input("coefficient not reduced mod p");
            a = a * p_ + c[i];
        }
        return static_cast<Fe>(a);
    }

    // Integer literals from equation files, reduced into the prime subfield.
    Fe from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<Fe>(r);
    }

    bool operator==(const Field& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }

  private:
    Field(std::uint64_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
        : p_(p), e_(e), q_(ipow(p, e)), modulus_(std::move(modulus)) {
        if (q_ <= kTableLimit) build_tables();
    }

    static constexpr std::uint64_t kTableLimit = 1u << 12;

    static std::uint64_t ipow(std::uint64_t p, std::uint32_t e) {
        std::uint64_t r = 1;
        while (e--) r *= p;
        return r;
    }

    static void check_pe(std::uint64_t p, std::uint32_t e) {
        if (!detail::is_prime(p)) throw invalid_input("p = " + std::to_string(p) + " is not prime");
        if (e < 1) throw invalid_input("extension degree e must be >= 1");
        // q <= 2^31
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > (1ull << 31)) throw invalid_input("q = p^e exceeds 2^31");
        }
    }

    static std::vector<std::uint32_t> find_least_modulus(std::uint64_t p, std::uint32_t e) {
        check_pe(p, e);
        if (e == 1) return {};
        // Scan monic degree-e polynomials in lexicographic order of
        // (c_0, c_1, ..., c_{e-1}); c_0 varies slowest.
        std::vector<std::uint32_t> c(e + 1, 0);
        c[e] = 1;
        while (true) {
            if (detail::poly_is_irreducible(c, p)) return c;
            std::size_t i = e;
            while (i-- > 0) {
                if (c[i] + 1 < p) { ++c[i]; break; }
                c[i] = 0;
                if (i == 0) throw invalid_input("no irreducible modulus found");  // unreachable
            }
        }
    }

    void check_elem(Fe a) const {
        if (a >= q_) throw invalid_input("element code " + std::to_string(a) + " not in [0, q)");
    }

    Fe add_raw(Fe a, Fe b) const {
        if (e_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return static_cast<Fe>(s >= q_ ? s - q_ : s);
        }
        if (p_ == 2) return a ^ b;
        std::uint64_t r = 0, mult = 1;
        while (a || b) {
            std::uint64_t s = a % p_ + b % p_;
            if (s >= p_) s -= p_;
            r += s * mult;
            mult *= p_;
            a = static_cast<Fe>(a / p_);
            b = static_cast<Fe>(b / p_);
        }
        return static_cast<Fe>(r);
    }

    Fe sub_raw(Fe a, Fe b) const {
        if (e_ == 1) {
            std::int64_t s = std::int64_t(a) - b;
            return static_cast<Fe>(s < 0 ? s + static_cast<std::int64_t>(q_) : s);
        }
        if (p_ == 2) return a ^ b;
        std::uint64_t r = 0, mult = 1;
        while (a || b) {
            std::uint64_t s = a % p_ + p_ - b % p_;
            if (s >= p_) s -= p_;
            r += s * mult;
            mult *= p_;
            a = static_cast<Fe>(a / p_);
            b = static_cast<Fe>(b / p_);
        }
        return static_cast<Fe>(r);
    }

    Fe mul_raw(Fe a, Fe b) const {
        if (e_ == 1) return static_cast<Fe>((std::uint64_t(a) * b) % q_);
        std::array<std::uint64_t, 64> prod{};
        std::array<std::uint32_t, 32> da{}, db{};
        std::uint32_t na = 0, nb = 0;
        for (Fe x = a; x; x = static_cast<Fe>(x / p_)) da[na++] = static_cast<std::uint32_t>(x % p_);
        for (Fe x = b; x; x = static_cast<Fe>(x / p_)) db[nb++] = static_cast<std::uint32_t>(x % p_);
        for (std::uint32_t i = 0; i < na; ++i)
            for (std::uint32_t j = 0; j < nb; ++j)
                prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
        // reduce by the monic modulus
        for (std::size_t k = 2 * e_ - 1; k-- > e_;) {
            std::uint64_t f = prod[k];
            if (f == 0) continue;
            prod[k] = 0;
            for (std::uint32_t i = 0; i < e_; ++i)
                prod[k - e_ + i] = (prod[k - e_ + i] + p_ - f * modulus_[i] % p_) % p_;
        }
        std::uint64_t r = 0;
        for (std::uint32_t i = e_; i-- > 0;) r = r * p_ + prod[i] % p_;
        return static_cast<Fe>(r);
    }

    void build_tables() {
        const std::size_t q = q_;
        add_tab_.resize(q * q);
        sub_tab_.resize(q * q);
        mul_tab_.resize(q * q);
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                add_tab_[a * q + b] = static_cast<std::uint16_t>(add_raw(Fe(a), Fe(b)));
                sub_tab_[a * q + b] = static_cast<std::uint16_t>(sub_raw(Fe(a), Fe(b)));
                mul_tab_[a * q + b] = static_cast<std::uint16_t>(mul_raw(Fe(a), Fe(b)));
            }
        }
        inv_tab_.resize(q);
        inv_tab_[0] = 0;  // unused slot, inv(0) throws before lookup
        for (std::size_t a = 1; a < q; ++a) {
            Fe r = 1, b = Fe(a);
            std::uint64_t k = q_ - 2;
            while (k) {
                if (k & 1) r = mul_tab_[r * q + b];
                b = mul_tab_[b * q + b];
                k >>= 1;
            }
            inv_tab_[a] = static_cast<std::uint16_t>(r);
        }
    }

    std::uint64_t p_;
    std::uint32_t e_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint16_t> add_tab_, sub_tab_, mul_tab_, inv_tab_;
};

}  // namespace adg
