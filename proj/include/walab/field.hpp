#ifndef WALAB_FIELD_HPP
#define WALAB_FIELD_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "walab/errors.hpp"

namespace walab {

// One of GF(2), GF(p) for prime p, or the rationals. GF(2) and GF(p) with
// p = 2 are the same field; construction canonicalizes the latter to the
// former so FieldSpec equality is plain member equality.
class FieldSpec {
public:
    enum class Kind { gf2, gfp, rational };

    static FieldSpec gf2();
    // Checks primality by trial division; throws Error for p < 2 or composite p.
    static FieldSpec gfp(std::uint64_t p);
    static FieldSpec rationals();

    Kind kind() const { return kind_; }
    // Characteristic: 2 for gf2, p for gfp, 0 for rationals.
    std::uint64_t characteristic() const { return p_; }
    bool is_modular() const { return kind_ != Kind::rational; }

    bool operator==(const FieldSpec& other) const {
        return kind_ == other.kind_ && p_ == other.p_;
    }
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

    // "gf2", "gfp(5)", "rational"
    std::string to_string() const;

private:
    FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

// An exact field element in canonical form: residue in [0,p) for modular
// fields, reduced fraction with positive denominator for the rationals.
// Arithmetic between scalars of different fields throws FieldMismatch.
class Scalar {
public:
    Scalar(const FieldSpec& field, long value);
    Scalar(const FieldSpec& field, const mpq_class& value);

    static Scalar zero(const FieldSpec& field) { return Scalar(field, 0); }
    static Scalar one(const FieldSpec& field) { return Scalar(field, 1); }
    // Parses the canonical text forms: residue decimal for modular fields,
    // "p", "-p" or "p/q" for rationals. Throws ParseError on malformed input.
    static Scalar parse(const FieldSpec& field, const std::string& text);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    // Residue value; only meaningful for modular fields.
    std::uint64_t residue() const { return residue_; }
    // Rational value; only meaningful for the rational field.
    const mpq_class& rational() const { return rational_; }

    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator*(const Scalar& other) const;
    // Throws DivisionByZero when other is zero.
    Scalar operator/(const Scalar& other) const;
    Scalar operator-() const;
    // Multiplicative inverse; throws DivisionByZero on zero.
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
    Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
    Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

    bool operator==(const Scalar& other) const;
    bool operator!=(const Scalar& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    void check_same_field(const Scalar& other) const;

    FieldSpec field_;
    std::uint64_t residue_ = 0; // modular fields
    mpq_class rational_;        // rational field, canonical
};

} // namespace walab

#endif
