/**************************************************************************
 * gf.hpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

/**
 * @file gf.hpp
 * @brief Exact arithmetic in GF(p^d) with an optional designated subfield.
 *
 * An element of GF(p^d) = GF(p)[x]/(f) is stored as a Symbol, the integer
 * sum_i c_i p^i of its little-endian coefficient vector (c_0, ..., c_{d-1}).
 * For p = 2 this is the usual bit-vector encoding.
 *
 * A tower GF(q^s) with q = p^t is flattened into GF(p^{t s}) whose
 * subfield_degree is t. The designated subfield GF(q) is then the fixed
 * field of x -> x^q; frobenius() and Embedding work relative to it.
 *
 * Fields of order at most 2^20 use log/antilog tables; larger fields fall
 * back to direct polynomial multiplication.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace mrgrid {

using Symbol = std::uint64_t;

struct FieldSpec {
    std::uint64_t characteristic = 2;
    unsigned degree = 1;
    /// Little-endian coefficients of the monic modulus, leading 1 included.
    std::vector<std::uint64_t> modulus;
    std::optional<unsigned> subfield_degree;

    bool operator==(const FieldSpec&) const = default;
};

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 f = 2; f <= n / f; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// p^d, or nullopt when it does not fit in 64 bits.
inline std::optional<u64> checked_power(u64 p, unsigned d) {
    u128 acc = 1;
    for (unsigned i = 0; i < d; ++i) {
        acc *= p;
        if (acc > static_cast<u128>(~u64{0})) return std::nullopt;
    }
    return static_cast<u64>(acc);
}

// Dense polynomials over GF(p), little-endian, no trailing zeros.
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const u64 lead_inv = powmod(f.back(), p - 2, p);
    while (a.size() > df) {
        const u64 c = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t j = 0; j <= df; ++j) {
            a[shift + j] = (a[shift + j] + p - mulmod(c, f[j], p)) % p;
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    return poly_mod(std::move(prod), f, p);
}

inline Poly poly_powmod(Poly base, u64 exp, const Poly& f, u64 p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (exp) {
        if (exp & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Ben-Or irreducibility test for a monic polynomial over GF(p).
inline bool is_irreducible(const Poly& f, u64 p) {
    const std::size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    const Poly x{0, 1};
    Poly u = x;
    for (std::size_t i = 1; i <= d / 2; ++i) {
        u = poly_powmod(u, p, f, p);
        Poly diff = u;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

inline std::vector<u64> digits(u64 value, u64 p, unsigned d) {
    std::vector<u64> out(d, 0);
    for (unsigned i = 0; i < d; ++i) {
        out[i] = value % p;
        value /= p;
    }
    return out;
}

}  // namespace detail

/// Lexicographically smallest monic irreducible polynomial of degree d over GF(p),
/// ordered by the integer value of its base-p encoding.
inline std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned d) {
    const auto count = detail::checked_power(p, d);
    if (!count) throw Error(ErrorCode::kInvalidField, "field order exceeds 64 bits");
    for (std::uint64_t c = 0; c < *count; ++c) {
        auto poly = detail::digits(c, p, d);
        poly.push_back(1);
        if (detail::is_irreducible(poly, p)) return poly;
    }
    throw Error(ErrorCode::kReducibleModulus, "no irreducible polynomial found");
}

class Field;
using FieldRef = std::shared_ptr<const Field>;

class Field {
public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

    static FieldRef create(FieldSpec spec) { return FieldRef(new Field(std::move(spec))); }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    const FieldSpec& spec() const { return spec_; }
    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return d_; }
    std::uint64_t order() const { return order_; }
    bool has_subfield() const { return spec_.subfield_degree.has_value(); }

    unsigned subfield_degree() const {
        require_subfield();
        return *spec_.subfield_degree;
    }
    /// q, the order of the designated subfield.
    std::uint64_t subfield_order() const { return *detail::checked_power(p_, subfield_degree()); }
    /// s, the degree of this field over its designated subfield.
    unsigned extension_degree() const { return d_ / subfield_degree(); }

    bool same_as(const Field& other) const { return this == &other || spec_ == other.spec_; }
    bool contains(Symbol v) const { return v < order_; }

    Symbol add(Symbol a, Symbol b) const {
        if (p_ == 2) return a ^ b;
        if (d_ == 1) return static_cast<Symbol>((static_cast<detail::u128>(a) + b) % p_);
        Symbol out = 0;
        for (unsigned i = 0; i < d_; ++i) {
            out += ((a % p_ + b % p_) % p_) * pow_p_[i];
            a /= p_;
            b /= p_;
        }
        return out;
    }

    Symbol neg(Symbol a) const {
        if (p_ == 2) return a;
        if (d_ == 1) return (p_ - a) % p_;
        Symbol out = 0;
        for (unsigned i = 0; i < d_; ++i) {
            out += ((p_ - a % p_) % p_) * pow_p_[i];
            a /= p_;
        }
        return out;
    }

    Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

    Symbol mul(Symbol a, Symbol b) const {
        if (a == 0 || b == 0) return 0;
        if (tables_) return exp_[log_[a] + log_[b]];
        if (d_ == 1) return detail::mulmod(a, b, p_);
        return mul_slow(a, b);
    }

    Symbol inv(Symbol a) const {
        if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
        if (tables_) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
        return pow(a, order_ - 2);
    }

    Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

    Symbol pow(Symbol a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        if (tables_) return exp_[detail::mulmod(log_[a], e % (order_ - 1), order_ - 1)];
        Symbol result = 1;
        while (e) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    /// x^(q^i) with q the designated subfield order.
    Symbol frobenius(Symbol x, std::uint64_t i) const {
        const std::uint64_t q = subfield_order();
        i %= extension_degree();
        for (std::uint64_t r = 0; r < i; ++r) x = pow(x, q);
        return x;
    }

    /// Image of an integer in the prime subfield.
    Symbol from_integer(std::int64_t v) const {
        const auto p = static_cast<__int128>(p_);
        __int128 r = static_cast<__int128>(v) % p;
        if (r < 0) r += p;
        return static_cast<Symbol>(r);
    }

    std::vector<std::uint64_t> coefficients(Symbol v) const { return detail::digits(v, p_, d_); }

    Symbol from_coefficients(std::span<const std::uint64_t> coeffs) const {
        if (coeffs.size() != d_) {
            throw Error(ErrorCode::kShapeMismatch, "expected " + std::to_string(d_) + " coefficients");
        }
        Symbol out = 0;
        for (unsigned i = 0; i < d_; ++i) {
            if (coeffs[i] >= p_) throw Error(ErrorCode::kInvalidField, "coefficient out of range");
            out += coeffs[i] * pow_p_[i];
        }
        return out;
    }

    /// Evaluates a polynomial with GF(p) coefficients at x.
    Symbol evaluate(std::span<const std::uint64_t> poly, Symbol x) const {
        Symbol acc = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = add(mul(acc, x), *it % p_);
        return acc;
    }

    /// Smallest primitive element by integer encoding.
    Symbol primitive_element() const {
        std::call_once(primitive_once_, [this] {
            if (tables_) return;  // set during construction
            primitive_ = find_primitive();
        });
        return primitive_;
    }

    /// The smallest-exponent root w^k (w generating the subfield's unit group) of a
    /// monic degree-t polynomial over GF(p); throws when none exists.
    Symbol subfield_root(std::span<const std::uint64_t> poly) const {
        const std::uint64_t q = subfield_order();
        const Symbol w = pow(primitive_element(), (order_ - 1) / (q - 1));
        Symbol y = 1;
        for (std::uint64_t k = 0; k + 1 < q; ++k) {
            if (evaluate(poly, y) == 0) return y;
            y = mul(y, w);
        }
        throw Error(ErrorCode::kIncompatibleSubfield, "polynomial has no root in the designated subfield");
    }

    /// A GF(p)-basis {1, r, ..., r^(t-1)} of the designated subfield, where r is the
    /// canonical root of default_modulus(p, t).
    const std::vector<Symbol>& subfield_basis() const {
        require_subfield();
        std::call_once(basis_once_, [this] {
            const unsigned t = *spec_.subfield_degree;
            subfield_basis_.assign(1, Symbol{1});
            if (t == 1) return;
            const Symbol r = subfield_root(default_modulus(p_, t));
            for (unsigned j = 1; j < t; ++j) subfield_basis_.push_back(mul(subfield_basis_.back(), r));
        });
        return subfield_basis_;
    }

    std::string describe() const {
        std::string s = "GF(" + std::to_string(p_);
        if (d_ > 1) s += "^" + std::to_string(d_);
        s += ")";
        return s;
    }

    std::string format(Symbol v) const {
        if (v == 0) return "0";
        const auto c = coefficients(v);
        std::string out;
        for (unsigned i = d_; i-- > 0;) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (c[i] != 1 || i == 0) out += std::to_string(c[i]);
            if (i >= 1) out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
        p_ = spec_.characteristic;
        d_ = spec_.degree;
        if (!detail::is_prime(p_)) {
            throw Error(ErrorCode::kNonPrimeCharacteristic, std::to_string(p_) + " is not prime");
        }
        if (d_ == 0) throw Error(ErrorCode::kInvalidField, "degree must be at least 1");
        const auto order = detail::checked_power(p_, d_);
        if (!order) throw Error(ErrorCode::kInvalidField, "field order exceeds 64 bits");
        order_ = *order;
        if (spec_.modulus.empty()) {
            spec_.modulus = default_modulus(p_, d_);
        } else {
            const auto& f = spec_.modulus;
            if (f.size() != d_ + 1 || f.back() != 1) {
                throw Error(ErrorCode::kInvalidField, "modulus must be monic of degree " + std::to_string(d_));
            }
            for (auto c : f) {
                if (c >= p_) throw Error(ErrorCode::kInvalidField, "modulus coefficient out of range");
            }
            if (!detail::is_irreducible(f, p_)) throw Error(ErrorCode::kReducibleModulus, "modulus is reducible");
        }
        if (spec_.subfield_degree) {
            const unsigned t = *spec_.subfield_degree;
            if (t == 0 || d_ % t != 0) {
                throw Error(ErrorCode::kInvalidField, "subfield degree must divide the field degree");
            }
        }
        pow_p_.resize(d_);
        for (unsigned i = 0; i < d_; ++i) pow_p_[i] = *detail::checked_power(p_, i);
        if (order_ <= kTableLimit) build_tables();
    }

    void require_subfield() const {
        if (!spec_.subfield_degree) throw Error(ErrorCode::kNoDesignatedSubfield, describe() + " has no designated subfield");
    }

    Symbol mul_slow(Symbol a, Symbol b) const {
        if (p_ == 2) {
            const Symbol top = Symbol{1} << (d_ - 1);
            Symbol mod = 0;
            for (unsigned i = 0; i < d_; ++i) mod |= static_cast<Symbol>(spec_.modulus[i]) << i;
            Symbol r = 0;
            while (b) {
                if (b & 1) r ^= a;
                b >>= 1;
                const bool carry = (a & top) != 0;
                a = (a << 1) & ((top << 1) - 1);
                if (carry) a ^= mod;
            }
            return r;
        }
        const auto ca = coefficients(a);
        const auto cb = coefficients(b);
        std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
        for (unsigned i = 0; i < d_; ++i) {
            if (ca[i] == 0) continue;
            for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + detail::mulmod(ca[i], cb[j], p_)) % p_;
        }
        for (std::size_t i = prod.size(); i-- > d_;) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            for (unsigned j = 0; j <= d_; ++j) {
                prod[i - d_ + j] = (prod[i - d_ + j] + p_ - detail::mulmod(c, spec_.modulus[j], p_)) % p_;
            }
        }
        Symbol out = 0;
        for (unsigned i = 0; i < d_; ++i) out += prod[i] * pow_p_[i];
        return out;
    }

    Symbol pow_slow(Symbol a, std::uint64_t e) const {
        Symbol result = 1;
        while (e) {
            if (e & 1) result = d_ == 1 ? detail::mulmod(result, a, p_) : mul_slow(result, a);
            a = d_ == 1 ? detail::mulmod(a, a, p_) : mul_slow(a, a);
            e >>= 1;
        }
        return result;
    }

    Symbol find_primitive() const {
        if (order_ == 2) return 1;
        const auto factors = detail::distinct_prime_factors(order_ - 1);
        for (Symbol g = 2; g < order_; ++g) {
            bool ok = true;
            for (auto r : factors) {
                if (pow_slow(g, (order_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return g;
        }
        throw Error(ErrorCode::kInvalidField, "no primitive element");
    }

    void build_tables() {
        primitive_ = find_primitive();
        std::call_once(primitive_once_, [] {});
        const std::uint64_t n = order_ - 1;
        exp_.assign(2 * n, 0);
        log_.assign(order_, 0);
        Symbol y = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            exp_[i] = static_cast<std::uint32_t>(y);
            log_[y] = static_cast<std::uint32_t>(i);
            y = d_ == 1 ? detail::mulmod(y, primitive_, p_) : mul_slow(y, primitive_);
        }
        for (std::uint64_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
        tables_ = true;
    }

    FieldSpec spec_;
    std::uint64_t p_ = 2;
    unsigned d_ = 1;
    std::uint64_t order_ = 2;
    std::vector<std::uint64_t> pow_p_;
    bool tables_ = false;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    mutable std::once_flag primitive_once_;
    mutable Symbol primitive_ = 0;
    mutable std::once_flag basis_once_;
    mutable std::vector<Symbol> subfield_basis_;
};

/// Constructs GF(p^d). Without a modulus, default_modulus(p, d) is used.
inline FieldRef make_field(std::uint64_t p, unsigned d, std::optional<std::vector<std::uint64_t>> modulus = std::nullopt,
                           std::optional<unsigned> subfield_degree = std::nullopt) {
    FieldSpec spec;
    spec.characteristic = p;
    spec.degree = d;
    if (modulus) spec.modulus = std::move(*modulus);
    spec.subfield_degree = subfield_degree;
    return Field::create(std::move(spec));
}

inline void require_same_field(const Field& a, const Field& b) {
    if (!a.same_as(b)) throw Error(ErrorCode::kFieldMismatch, a.describe() + " vs " + b.describe());
}

class FieldElement {
public:
    FieldElement(FieldRef field, Symbol value) : field_(std::move(field)), value_(value) {
        if (!field_->contains(value_)) throw Error(ErrorCode::kIndexOutOfRange, "symbol outside the field");
    }

    static FieldElement from_coefficients(FieldRef field, std::span<const std::uint64_t> coeffs) {
        const Symbol v = field->from_coefficients(coeffs);
        return FieldElement(std::move(field), v);
    }

    const FieldRef& field() const { return field_; }
    Symbol value() const { return value_; }
    std::vector<std::uint64_t> coeffs() const { return field_->coefficients(value_); }
    bool is_zero() const { return value_ == 0; }
    std::string to_string() const { return field_->format(value_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        require_same_field(*a.field_, *b.field_);
        return {a.field_, a.field_->add(a.value_, b.value_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        require_same_field(*a.field_, *b.field_);
        return {a.field_, a.field_->sub(a.value_, b.value_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        require_same_field(*a.field_, *b.field_);
        return {a.field_, a.field_->mul(a.value_, b.value_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        require_same_field(*a.field_, *b.field_);
        return {a.field_, a.field_->div(a.value_, b.value_)};
    }
    FieldElement operator-() const { return {field_, field_->neg(value_)}; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.value_ == b.value_ && a.field_->same_as(*b.field_);
    }

private:
    FieldRef field_;
    Symbol value_;
};

enum class ArithOp { kAdd, kSub, kMul, kDiv };

inline FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::kAdd: return a + b;
        case ArithOp::kSub: return a - b;
        case ArithOp::kMul: return a * b;
        case ArithOp::kDiv: return a / b;
    }
    throw Error(ErrorCode::kInvalidField, "unknown arithmetic op");
}

inline FieldElement frobenius(const FieldElement& x, std::uint64_t i) {
    return {x.field(), x.field()->frobenius(x.value(), i)};
}

/// Ring embedding of GF(q) into GF(q^s), the target's designated subfield.
/// The image of the source generator is the root of the source modulus picked by
/// Field::subfield_root, so the map is a fixed function of (source, target).
class Embedding {
public:
    Embedding(FieldRef source, FieldRef target) : source_(std::move(source)), target_(std::move(target)) {
        if (!target_->has_subfield() || target_->characteristic() != source_->characteristic() ||
            target_->subfield_degree() != source_->degree()) {
            throw Error(ErrorCode::kIncompatibleSubfield,
                        source_->describe() + " is not the designated subfield of " + target_->describe());
        }
        images_.assign(1, Symbol{1});
        if (source_->degree() > 1) {
            const Symbol root = target_->subfield_root(source_->spec().modulus);
            for (unsigned j = 1; j < source_->degree(); ++j) images_.push_back(target_->mul(images_.back(), root));
        }
    }

    const FieldRef& source() const { return source_; }
    const FieldRef& target() const { return target_; }

    Symbol operator()(Symbol x) const {
        const auto c = source_->coefficients(x);
        Symbol out = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] != 0) out = target_->add(out, target_->mul(c[j], images_[j]));
        }
        return out;
    }

    FieldElement operator()(const FieldElement& x) const {
        require_same_field(*x.field(), *source_);
        return {target_, (*this)(x.value())};
    }

private:
    FieldRef source_;
    FieldRef target_;
    std::vector<Symbol> images_;
};

inline FieldElement embed(const FieldElement& x, const FieldRef& target) { return Embedding(x.field(), target)(x); }

}  // namespace mrgrid
