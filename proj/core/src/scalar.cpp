#include "giet/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cmath>

namespace giet {

namespace {

std::atomic<std::size_t> g_max_den_bits{0};

std::size_t hash_mpz(const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t bits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

}  // namespace

bool is_square_free(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

void set_max_denominator_bits(std::size_t b) { g_max_den_bits.store(b); }
std::size_t max_denominator_bits() { return g_max_den_bits.load(); }

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    a_ = mpq_class(num, den);
    a_.canonicalize();
}

Scalar::Scalar(mpq_class q) : a_(std::move(q)) { a_.canonicalize(); }

Scalar Scalar::quadratic(mpq_class a, mpq_class b, long d) {
    if (!is_square_free(d)) {
        throw std::invalid_argument("Scalar: radicand " + std::to_string(d) +
                                    " is not a square-free integer >= 2");
    }
    Scalar s;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.a_.canonicalize();
    s.b_.canonicalize();
    s.d_ = (s.b_ == 0) ? 0 : d;
    s.check_growth();
    return s;
}

Scalar Scalar::parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        if (part.empty()) throw std::invalid_argument("Scalar: empty integer in '" + std::string(text) + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw std::invalid_argument("Scalar: bad integer '" + std::string(part) + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw std::invalid_argument("Scalar: bad integer '" + std::string(part) + "'");
            }
        }
        std::string s(part[0] == '+' ? part.substr(1) : part);
        return mpz_class(s, 10);
    };
    auto slash = text.find('/');
    mpz_class num = parse_int(text.substr(0, slash));
    mpz_class den = slash == std::string_view::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("Scalar: zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    Scalar s(std::move(q));
    s.check_growth();
    return s;
}

void Scalar::check_growth() const {
    const std::size_t cap = g_max_den_bits.load(std::memory_order_relaxed);
    if (cap != 0 && denominator_bits() > cap) {
        throw DenominatorOverflow("Scalar denominator exceeds " + std::to_string(cap) + " bits");
    }
}

std::size_t Scalar::denominator_bits() const {
    return std::max(bits(a_.get_den()), bits(b_.get_den()));
}

long Scalar::join_field(const Scalar& other) const {
    if (d_ == 0) return other.d_;
    if (other.d_ == 0 || other.d_ == d_) return d_;
    throw FieldMismatch("Scalar: cannot combine sqrt(" + std::to_string(d_) + ") with sqrt(" +
                        std::to_string(other.d_) + ")");
}

int Scalar::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 with b^2 d.
    const mpq_class lhs = a_ * a_;
    const mpq_class rhs = b_ * b_ * d_;
    const int c = cmp(lhs, rhs);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    const long d = join_field(rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    d_ = (b_ == 0) ? 0 : d;
    check_growth();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    const long d = join_field(rhs);
    a_ -= rhs.a_;
    b_ -= rhs.b_;
    d_ = (b_ == 0) ? 0 : d;
    check_growth();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    const long d = join_field(rhs);
    if (d == 0) {
        a_ *= rhs.a_;
    } else {
        mpq_class na = a_ * rhs.a_ + b_ * rhs.b_ * d;
        mpq_class nb = a_ * rhs.b_ + b_ * rhs.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
    }
    d_ = (b_ == 0) ? 0 : d;
    check_growth();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Scalar: division by zero");
    const long d = join_field(rhs);
    if (rhs.d_ == 0) {
        a_ /= rhs.a_;
        b_ /= rhs.a_;
    } else {
        // (a + b r)/(c + e r) = (a + b r)(c - e r)/(c^2 - e^2 d)
        const mpq_class norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * d;
        mpq_class na = (a_ * rhs.a_ - b_ * rhs.b_ * d) / norm;
        mpq_class nb = (b_ * rhs.a_ - a_ * rhs.b_) / norm;
        a_ = std::move(na);
        b_ = std::move(nb);
    }
    d_ = (b_ == 0) ? 0 : d;
    check_growth();
    return *this;
}

bool operator==(const Scalar& x, const Scalar& y) {
    if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_) {
        throw FieldMismatch("Scalar: comparing sqrt(" + std::to_string(x.d_) + ") with sqrt(" +
                            std::to_string(y.d_) + ")");
    }
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int cmp(const Scalar& x, const Scalar& y) { return (x - y).sign(); }

const Scalar& min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
const Scalar& max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

std::string Scalar::to_string() const {
    if (d_ == 0) {
        return a_.get_den() == 1 ? a_.get_num().get_str() : a_.get_str();
    }
    std::string out;
    if (a_ != 0) {
        out = a_.get_str();
        out += sgn(b_) > 0 ? "+" : "-";
        mpq_class mag = abs(b_);
        out += mag.get_str();
    } else {
        out = b_.get_str();
    }
    out += "*sqrt(" + std::to_string(d_) + ")";
    return out;
}

double Scalar::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::size_t Scalar::hash() const {
    std::size_t h = hash_mpz(a_.get_num());
    h = h * 31 + hash_mpz(a_.get_den());
    if (d_ != 0) {
        h = h * 31 + hash_mpz(b_.get_num());
        h = h * 31 + hash_mpz(b_.get_den());
        h = h * 31 + static_cast<std::size_t>(d_);
    }
    return h;
}

}  // namespace giet
