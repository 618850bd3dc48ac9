#pragma once

/**
 * Exact real numbers: rationals and elements of one real quadratic field.
 *
 * A Scalar is a + b*sqrt(d) with a, b arbitrary-precision rationals and d a
 * square-free integer >= 2, interpreted through the positive square root.
 * Rationals are the b == 0 case and carry no field tag, so they mix freely
 * with any quadratic field. Two irrational Scalars with different d cannot
 * be combined.
 *
 * Every comparison is decided exactly by sign analysis and squaring; there is
 * no floating point anywhere on the arithmetic path.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace giet {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a denominator exceeds the bit cap set by set_max_denominator_bits().
struct DenominatorOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
    Scalar(long num, long den);
    explicit Scalar(mpq_class q);

    /// a + b*sqrt(d). Throws std::invalid_argument unless d >= 2 is square-free.
    static Scalar quadratic(mpq_class a, mpq_class b, long d);

    /// Parses "p", "-p", "p/q".
    static Scalar parse_rational(std::string_view text);

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& irrational_part() const { return b_; }
    /// Square-free radicand, or 0 for a rational.
    long field() const { return d_; }
    bool is_rational() const { return d_ == 0; }

    int sign() const;
    bool is_zero() const { return sign() == 0; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& x, const Scalar& y);
    friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

    /// "p/q" for rationals, "a+b*sqrt(d)" otherwise (a omitted when zero).
    std::string to_string() const;
    double to_double() const;
    std::size_t hash() const;

    /// Bit length of the largest denominator among the two rational parts.
    std::size_t denominator_bits() const;

private:
    void check_growth() const;
    long join_field(const Scalar& other) const;

    mpq_class a_{0};
    mpq_class b_{0};
    long d_ = 0;
};

int cmp(const Scalar& x, const Scalar& y);

const Scalar& min(const Scalar& x, const Scalar& y);
const Scalar& max(const Scalar& x, const Scalar& y);

/// 0 disables the cap (the default). Applies process-wide.
void set_max_denominator_bits(std::size_t bits);
std::size_t max_denominator_bits();

bool is_square_free(long n);

}  // namespace giet

template <>
struct std::hash<giet::Scalar> {
    std::size_t operator()(const giet::Scalar& s) const noexcept { return s.hash(); }
};
