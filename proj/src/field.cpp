#include "walab/field.hpp"

namespace walab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Miller-Rabin with a witness set that is deterministic for all 64-bit n.
bool is_prime(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                                19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (p % small == 0)
            return p == small;
    }
    std::uint64_t d = p - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, p);
        if (x == 1 || x == p - 1)
            continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = mulmod(x, x, p);
            if (x == p - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

// Extended Euclid; a must be a nonzero residue mod prime p.
std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0)
        t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

FieldSpec FieldSpec::gf2() { return FieldSpec(Kind::gf2, 2); }

FieldSpec FieldSpec::gfp(std::uint64_t p) {
    if (p >= (std::uint64_t(1) << 62))
        throw Error("GF(p) modulus too large");
    if (!is_prime(p))
        throw Error("GF(p) modulus must be prime, got " + std::to_string(p));
    if (p == 2)
        return gf2();
    return FieldSpec(Kind::gfp, p);
}

FieldSpec FieldSpec::rationals() { return FieldSpec(Kind::rational, 0); }

std::string FieldSpec::to_string() const {
    switch (kind_) {
    case Kind::gf2:
        return "gf2";
    case Kind::gfp:
        return "gfp(" + std::to_string(p_) + ")";
    case Kind::rational:
        return "rational";
    }
    return "?";
}

Scalar::Scalar(const FieldSpec& field, long value) : field_(field) {
    if (field_.is_modular()) {
        std::int64_t p = static_cast<std::int64_t>(field_.characteristic());
        std::int64_t r = static_cast<std::int64_t>(value) % p;
        if (r < 0)
            r += p;
        residue_ = static_cast<std::uint64_t>(r);
    } else {
        rational_ = mpq_class(value);
    }
}

Scalar::Scalar(const FieldSpec& field, const mpq_class& value) : field_(field) {
    if (field_.is_modular()) {
        if (value.get_den() != 1)
            throw Error("non-integer value for modular field");
        mpz_class r = value.get_num() % mpz_class(static_cast<unsigned long>(field_.characteristic()));
        if (r < 0)
            r += static_cast<unsigned long>(field_.characteristic());
        residue_ = r.get_ui();
    } else {
        rational_ = value;
        rational_.canonicalize();
    }
}

Scalar Scalar::parse(const FieldSpec& field, const std::string& text) {
    if (text.empty())
        throw ParseError("empty field element");
    try {
        if (field.is_modular()) {
            mpz_class v(text, 10);
            mpq_class q(v);
            return Scalar(field, q);
        }
        mpq_class q(text, 10);
        if (q.get_den() == 0)
            throw ParseError("zero denominator in: " + text);
        q.canonicalize();
        return Scalar(field, q);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed field element: " + text);
    }
}

bool Scalar::is_zero() const {
    return field_.is_modular() ? residue_ == 0 : rational_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_modular() ? residue_ == 1 : rational_ == 1;
}

void Scalar::check_same_field(const Scalar& other) const {
    if (field_ != other.field_)
        throw FieldMismatch("scalar fields differ: " + field_.to_string() +
                            " vs " + other.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& other) const {
    check_same_field(other);
    Scalar r = *this;
    if (field_.is_modular()) {
        std::uint64_t p = field_.characteristic();
        r.residue_ = residue_ + other.residue_;
        if (r.residue_ >= p)
            r.residue_ -= p;
    } else {
        r.rational_ = rational_ + other.rational_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& other) const {
    check_same_field(other);
    Scalar r = *this;
    if (field_.is_modular()) {
        std::uint64_t p = field_.characteristic();
        r.residue_ = residue_ + (p - other.residue_);
        if (r.residue_ >= p)
            r.residue_ -= p;
    } else {
        r.rational_ = rational_ - other.rational_;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& other) const {
    check_same_field(other);
    Scalar r = *this;
    if (field_.is_modular())
        r.residue_ = mulmod(residue_, other.residue_, field_.characteristic());
    else
        r.rational_ = rational_ * other.rational_;
    return r;
}

Scalar Scalar::operator/(const Scalar& other) const {
    check_same_field(other);
    return *this * other.inverse();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.is_modular()) {
        r.residue_ = residue_ == 0 ? 0 : field_.characteristic() - residue_;
    } else {
        r.rational_ = -rational_;
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero())
        throw DivisionByZero("inverse of zero in " + field_.to_string());
    Scalar r = *this;
    if (field_.is_modular())
        r.residue_ = invmod(residue_, field_.characteristic());
    else
        r.rational_ = 1 / rational_;
    return r;
}

bool Scalar::operator==(const Scalar& other) const {
    if (field_ != other.field_)
        return false;
    return field_.is_modular() ? residue_ == other.residue_
                               : rational_ == other.rational_;
}

std::string Scalar::to_string() const {
    if (field_.is_modular())
        return std::to_string(residue_);
    return rational_.get_str();
}

} // namespace walab
