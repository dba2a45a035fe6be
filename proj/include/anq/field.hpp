#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace anq {

enum class field_kind { prime, rational };

/// Coefficient field of an instance: F_p for a word-sized prime p, or Q.
class field_spec {
public:
    /// F_p. Validates p by trial division; p must satisfy 2 <= p < 2^32 so
    /// that products of canonical representatives fit in a 64-bit word.
    static field_spec prime(std::uint64_t p);
    static field_spec rational();

    field_kind kind() const { return kind_; }
    bool is_prime() const { return kind_ == field_kind::prime; }
    bool is_rational() const { return kind_ == field_kind::rational; }

    /// The modulus p; only meaningful for prime fields.
    std::uint64_t modulus() const { return p_; }

    std::string str() const;

    friend bool operator==(const field_spec& a, const field_spec& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator!=(const field_spec& a, const field_spec& b) { return !(a == b); }

private:
    field_spec(field_kind k, std::uint64_t p) : kind_(k), p_(p) {}

    field_kind kind_;
    std::uint64_t p_;
};

/// An exact field element in canonical form: a residue in [0, p) for F_p,
/// a fully reduced fraction with positive denominator for Q. Equality is
/// equality of canonical representatives. Values are immutable after
/// construction apart from whole-value assignment.
class scalar {
public:
    scalar() : spec_(field_spec::rational()), v_(mpq_class(0)) {}

    static scalar zero(const field_spec& fs);
    static scalar one(const field_spec& fs);
    /// Image of a machine integer under Z -> k.
    static scalar from_int(long long value, const field_spec& fs);
    /// Rational fields only; canonicalizes its argument.
    static scalar from_mpq(const mpq_class& value, const field_spec& fs);
    /// Parses the text encoding: a decimal residue in [0, p) for F_p,
    /// "a" or "a/b" with b != 0 for Q. Throws std::invalid_argument.
    static scalar parse(const std::string& text, const field_spec& fs);

    const field_spec& spec() const { return spec_; }
    bool is_zero() const;
    bool is_one() const;

    /// Canonical residue; prime fields only.
    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
    /// Canonical fraction; rational fields only.
    const mpq_class& fraction() const { return std::get<mpq_class>(v_); }

    /// Text encoding, inverse of parse on canonical values.
    std::string str() const;

    scalar inv() const;

    friend scalar operator+(const scalar& a, const scalar& b);
    friend scalar operator-(const scalar& a, const scalar& b);
    friend scalar operator*(const scalar& a, const scalar& b);
    friend scalar operator-(const scalar& a);

    scalar& operator+=(const scalar& b) { *this = *this + b; return *this; }
    scalar& operator-=(const scalar& b) { *this = *this - b; return *this; }
    scalar& operator*=(const scalar& b) { *this = *this * b; return *this; }

    friend bool operator==(const scalar& a, const scalar& b) {
        return a.spec_ == b.spec_ && a.v_ == b.v_;
    }
    friend bool operator!=(const scalar& a, const scalar& b) { return !(a == b); }

private:
    scalar(const field_spec& fs, std::uint64_t u) : spec_(fs), v_(u) {}
    scalar(const field_spec& fs, mpq_class q) : spec_(fs), v_(std::move(q)) {}

    static void require_same_spec(const scalar& a, const scalar& b);

    field_spec spec_;
    std::variant<std::uint64_t, mpq_class> v_;
};

}  // namespace anq
