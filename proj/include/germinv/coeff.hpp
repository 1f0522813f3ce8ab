#pragma once

// Coefficient fields: exact rationals (GMP-backed) and a machine-word prime
// field used for fast, non-certifying evidence runs.

#include <germinv/errors.hpp>

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

namespace germinv {

template <typename K>
concept CoefficientField = requires(const K a, const K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    { K::one() } -> std::convertible_to<K>;
    { K::zero() } -> std::convertible_to<K>;
};

/// Exact rational number. Thin value wrapper around mpq_class.
class Rational {
public:
    Rational() : v_(0) {}
    explicit Rational(long n) : v_(n) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw ValidationError("rational literal with zero denominator");
        v_.canonicalize();
    }
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational from_decimal_string(const std::string& s) {
        return Rational(mpq_class(s, 10));
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw InternalError("rational division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    /// Canonical text form: "a" or "a/b" with b > 0, gcd(a,b)=1.
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

/// Z/p for a user-chosen prime p < 2^31. The modulus is process-wide,
/// fixed once at startup before any element is built.
class PrimeField {
public:
    PrimeField() : val_(0) {}
    explicit PrimeField(std::uint64_t v) : val_(static_cast<std::uint32_t>(v % mod())) {}

    static PrimeField zero() { return PrimeField(); }
    static PrimeField one() { return PrimeField(1); }

    static void set_modulus(std::uint32_t p) {
        if (p < 2 || p >= (1u << 31)) throw ValidationError("prime-field modulus out of range");
        modulus_ref() = p;
    }
    static std::uint32_t modulus() { return modulus_ref(); }

    static PrimeField from_int(long long n) {
        long long r = n % static_cast<long long>(mod());
        if (r < 0) r += mod();
        return PrimeField(static_cast<std::uint64_t>(r));
    }

    bool is_zero() const { return val_ == 0; }
    bool is_one() const { return val_ == 1; }
    int sign() const { return val_ == 0 ? 0 : 1; }
    std::uint32_t value() const { return val_; }

    PrimeField operator+(const PrimeField& o) const {
        std::uint64_t s = static_cast<std::uint64_t>(val_) + o.val_;
        if (s >= mod()) s -= mod();
        return raw(static_cast<std::uint32_t>(s));
    }
    PrimeField operator-(const PrimeField& o) const {
        std::uint64_t s = static_cast<std::uint64_t>(val_) + mod() - o.val_;
        if (s >= mod()) s -= mod();
        return raw(static_cast<std::uint32_t>(s));
    }
    PrimeField operator*(const PrimeField& o) const {
        return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(val_) * o.val_ % mod()));
    }
    PrimeField operator/(const PrimeField& o) const { return *this * o.inverse(); }
    PrimeField operator-() const { return raw(val_ == 0 ? 0 : mod() - val_); }

    PrimeField inverse() const {
        if (val_ == 0) throw InternalError("prime-field inverse of zero");
        std::int64_t a = val_, b = mod(), x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (x0 < 0) x0 += mod();
        return raw(static_cast<std::uint32_t>(x0));
    }

    bool operator==(const PrimeField& o) const { return val_ == o.val_; }
    bool operator!=(const PrimeField& o) const { return val_ != o.val_; }

    std::string str() const { return std::to_string(val_); }

private:
    std::uint32_t val_;

    static std::uint32_t& modulus_ref() {
        static std::uint32_t p = 32003;
        return p;
    }
    static std::uint32_t mod() { return modulus_ref(); }
    static PrimeField raw(std::uint32_t v) {
        PrimeField r;
        r.val_ = v;
        return r;
    }
};

static_assert(CoefficientField<Rational>);
static_assert(CoefficientField<PrimeField>);

} // namespace germinv
