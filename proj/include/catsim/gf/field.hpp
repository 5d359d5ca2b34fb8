/*
Copyright 2026 The catsim Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catsim::gf {

/// Element of GF(2^q) as a coefficient vector in the polynomial basis (bit k = coefficient of x^k).
struct Element {
    std::uint32_t bits = 0;

    friend bool operator==(Element, Element) = default;
    friend auto operator<=>(Element, Element) = default;
};

namespace poly2 {

/// Carry-less product of two GF(2)[x] polynomials whose degrees sum to < 64.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline int degree(std::uint64_t a) { return a ? 63 - __builtin_clzll(a) : -1; }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t f) {
    const int df = degree(f);
    for (int da = degree(a); da >= df; da = degree(a)) a ^= f << (da - df);
    return a;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

/// Ben-Or: f of degree q is irreducible iff gcd(x^(2^i) - x, f) = 1 for i = 1..q/2.
inline bool irreducible(std::uint64_t f) {
    const int q = degree(f);
    if (q < 1) return false;
    if (q == 1) return true;
    std::uint64_t xp = 2;  // x
    for (int i = 1; i <= q / 2; ++i) {
        xp = mod(clmul(xp, xp), f);
        if (gcd(xp ^ 2u, f) != 1) return false;
    }
    return true;
}

}  // namespace poly2

/// GF(2^q) for even q in [2, 32], built on the least irreducible modulus of degree q and the
/// least primitive element by integer value.
class Field {
public:
    static constexpr unsigned kMaxDegree = 32;
    static constexpr unsigned kMaxTableDegree = 16;

    explicit Field(unsigned q) : q_(q) {
        if (q < 2 || q > kMaxDegree || q % 2 != 0)
            throw std::invalid_argument("field degree must be even and in [2, 32], got " + std::to_string(q));
        order_ = (std::uint64_t{1} << q) - 1;
        for (std::uint64_t f = (std::uint64_t{1} << q) | 1u;; f += 2) {
            if (poly2::irreducible(f)) {
                modulus_ = f;
                break;
            }
        }
        if (q <= kMaxTableDegree) build_tables();
        omega_ = find_primitive();
    }

    unsigned degree() const { return q_; }
    std::uint64_t modulus() const { return modulus_; }
    /// Multiplicative group order m = 2^q - 1.
    std::uint64_t group_order() const { return order_; }
    std::uint64_t size() const { return order_ + 1; }
    Element omega() const { return omega_; }
    bool tabulated() const { return !exp_.empty(); }

    static Element zero() { return {0}; }
    static Element one() { return {1}; }
    static Element add(Element a, Element b) { return {a.bits ^ b.bits}; }
    static Element sub(Element a, Element b) { return add(a, b); }

    bool contains(Element a) const { return a.bits <= order_; }

    Element mul(Element a, Element b) const {
        if (a.bits == 0 || b.bits == 0) return zero();
        if (!exp_.empty()) return {exp_[log_[a.bits] + log_[b.bits]]};
        return mul_reference(a, b);
    }

    /// Shift-and-xor long multiplication followed by reduction; independent of the log tables.
    Element mul_reference(Element a, Element b) const {
        return {static_cast<std::uint32_t>(poly2::mod(poly2::clmul(a.bits, b.bits), modulus_))};
    }

    Element pow(Element a, std::uint64_t k) const {
        if (k == 0) return one();
        if (a.bits == 0) return zero();
        k %= order_;
        if (k == 0) return one();
        if (!exp_.empty()) return {exp_[(static_cast<std::uint64_t>(log_[a.bits]) * k) % order_]};
        Element r = one();
        while (k) {
            if (k & 1u) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    Element inv(Element a) const {
        if (a.bits == 0) throw std::domain_error("inverse of zero in GF(2^q)");
        if (!exp_.empty()) return {exp_[(order_ - log_[a.bits]) % order_]};
        return pow(a, order_ - 1);
    }

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    /// Powers omega^i for i = 0..n-1.
    Element omega_pow(std::uint64_t i) const { return pow(omega_, i); }

private:
    void build_tables() {
        exp_.assign(2 * order_, 0);
        log_.assign(order_ + 1, 0);
        // Tables are indexed by a generator found by brute force; any generator works for lookups.
        std::uint32_t g = 2;
        for (;; ++g) {
            std::uint64_t x = 1, n = 0;
            do {
                x = poly2::mod(poly2::clmul(x, g), modulus_);
                ++n;
            } while (x != 1);
            if (n == order_) break;
        }
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i < order_; ++i) {
            exp_[i] = static_cast<std::uint32_t>(x);
            exp_[i + order_] = static_cast<std::uint32_t>(x);
            log_[x] = static_cast<std::uint32_t>(i);
            x = poly2::mod(poly2::clmul(x, g), modulus_);
        }
    }

    Element find_primitive() const {
        std::vector<std::uint64_t> primes;
        std::uint64_t n = order_;
        for (std::uint64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                primes.push_back(p);
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) primes.push_back(n);
        for (std::uint64_t g = 2; g <= order_; ++g) {
            bool full = true;
            for (auto p : primes) {
                if (pow(Element{static_cast<std::uint32_t>(g)}, order_ / p) == one()) {
                    full = false;
                    break;
                }
            }
            if (full) return {static_cast<std::uint32_t>(g)};
        }
        // q = 2..32 always has a primitive element other than 1.
        throw std::logic_error("no primitive element found");
    }

    unsigned q_;
    std::uint64_t order_ = 0;
    std::uint64_t modulus_ = 0;
    Element omega_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// Same as constructing a Field; named after the operation it performs.
inline Field field_new(unsigned q) { return Field(q); }

}  // namespace catsim::gf
