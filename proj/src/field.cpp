#include "anq/field.hpp"

#include <cctype>

namespace anq {

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on (a, p); a is a unit since p is prime and a != 0
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
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// signed decimal integer, no whitespace, no '+'
bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-') ? 1 : 0;
    return start < s.size() && all_digits(s.substr(start));
}

}  // namespace

field_spec field_spec::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 32))
        throw std::invalid_argument("field_spec: prime modulus must be < 2^32, got " + std::to_string(p));
    if (!is_prime_u64(p))
        throw std::invalid_argument("field_spec: modulus " + std::to_string(p) + " is not prime");
    return field_spec(field_kind::prime, p);
}

field_spec field_spec::rational() {
    return field_spec(field_kind::rational, 0);
}

std::string field_spec::str() const {
    return is_prime() ? "F" + std::to_string(p_) : "Q";
}

scalar scalar::zero(const field_spec& fs) {
    if (fs.is_prime()) return scalar(fs, std::uint64_t{0});
    return scalar(fs, mpq_class(0));
}

scalar scalar::one(const field_spec& fs) {
    if (fs.is_prime()) return scalar(fs, std::uint64_t{1} % fs.modulus());
    return scalar(fs, mpq_class(1));
}

scalar scalar::from_int(long long value, const field_spec& fs) {
    if (fs.is_prime()) {
        std::int64_t p = static_cast<std::int64_t>(fs.modulus());
        std::int64_t r = static_cast<std::int64_t>(value % p);
        if (r < 0) r += p;
        return scalar(fs, static_cast<std::uint64_t>(r));
    }
    return scalar(fs, mpq_class(static_cast<long>(value)));
}

scalar scalar::from_mpq(const mpq_class& value, const field_spec& fs) {
    if (!fs.is_rational())
        throw std::invalid_argument("scalar::from_mpq: field is " + fs.str() + ", not Q");
    mpq_class q = value;
    q.canonicalize();
    return scalar(fs, std::move(q));
}

scalar scalar::parse(const std::string& text, const field_spec& fs) {
    if (fs.is_prime()) {
        if (!all_digits(text) || text.size() > 20)
            throw std::invalid_argument("scalar::parse: '" + text + "' is not a residue mod " +
                                        std::to_string(fs.modulus()));
        std::uint64_t v = 0;
        for (char c : text) {
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v >= fs.modulus())
                throw std::invalid_argument("scalar::parse: residue " + text + " out of range [0, " +
                                            std::to_string(fs.modulus()) + ")");
        }
        return scalar(fs, v);
    }
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_plain_integer(num) || !is_plain_integer(den))
        throw std::invalid_argument("scalar::parse: '" + text + "' is not a rational literal");
    mpq_class q{mpz_class(num), mpz_class(den)};
    if (q.get_den() == 0)
        throw std::invalid_argument("scalar::parse: zero denominator in '" + text + "'");
    q.canonicalize();
    return scalar(fs, std::move(q));
}

bool scalar::is_zero() const {
    if (spec_.is_prime()) return residue() == 0;
    return fraction() == 0;
}

bool scalar::is_one() const {
    if (spec_.is_prime()) return residue() == 1 % spec_.modulus();
    return fraction() == 1;
}

std::string scalar::str() const {
    if (spec_.is_prime()) return std::to_string(residue());
    return fraction().get_str();
}

void scalar::require_same_spec(const scalar& a, const scalar& b) {
    if (a.spec_ != b.spec_)
        throw std::invalid_argument("scalar: mixed fields " + a.spec_.str() + " and " + b.spec_.str());
}

scalar scalar::inv() const {
    if (is_zero())
        throw std::domain_error("scalar::inv: division by zero in " + spec_.str());
    if (spec_.is_prime())
        return scalar(spec_, mod_inverse(residue(), spec_.modulus()));
    return scalar(spec_, mpq_class(1) / fraction());
}

scalar operator+(const scalar& a, const scalar& b) {
    scalar::require_same_spec(a, b);
    if (a.spec_.is_prime()) {
        std::uint64_t s = a.residue() + b.residue();
        if (s >= a.spec_.modulus()) s -= a.spec_.modulus();
        return scalar(a.spec_, s);
    }
    return scalar(a.spec_, mpq_class(a.fraction() + b.fraction()));
}

scalar operator-(const scalar& a, const scalar& b) {
    return a + (-b);
}

scalar operator*(const scalar& a, const scalar& b) {
    scalar::require_same_spec(a, b);
    if (a.spec_.is_prime())
        return scalar(a.spec_, (a.residue() * b.residue()) % a.spec_.modulus());
    return scalar(a.spec_, mpq_class(a.fraction() * b.fraction()));
}

scalar operator-(const scalar& a) {
    if (a.spec_.is_prime()) {
        std::uint64_t r = a.residue();
        return scalar(a.spec_, r == 0 ? 0 : a.spec_.modulus() - r);
    }
    return scalar(a.spec_, mpq_class(-a.fraction()));
}

}  // namespace anq
