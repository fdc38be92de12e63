#include "wavode/decimal.hpp"

#include <cassert>
#include <cstdlib>

namespace wavode {

namespace {

BigInt pow10(long e) {
    assert(e >= 0);
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// |q| compared against 10^e, handling negative e.
int cmp_abs_pow10(const BigRational& q, long e) {
    BigInt a = abs(q.get_num());
    BigInt b = q.get_den();
    if (e >= 0) return cmp(a, b * pow10(e));
    return cmp(a * pow10(-e), b);
}

// Nearest integer to sqrt(a/b), a >= 0, b > 0; ties round up.
BigInt round_sqrt(const BigInt& a, const BigInt& b) {
    BigInt t = isqrt(a * b);
    BigInt s;
    mpz_fdiv_q(s.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t());
    // value in [s, s+1); pick nearest by comparing against (s + 1/2)^2
    BigInt lhs = 4 * a;
    BigInt edge = (2 * s + 1) * (2 * s + 1) * b;
    return lhs >= edge ? s + 1 : s;
}

std::string format_scaled(bool negative, const BigInt& n, long places) {
    std::string digits = n.get_str();
    std::string out;
    if (negative && n != 0) out += '-';
    if (places <= 0) {
        out += digits;
        return out;
    }
    if (static_cast<long>(digits.size()) <= places)
        digits.insert(0, static_cast<size_t>(places) - digits.size() + 1, '0');
    out += digits.substr(0, digits.size() - static_cast<size_t>(places));
    out += '.';
    out += digits.substr(digits.size() - static_cast<size_t>(places));
    return out;
}

}  // namespace

long floor_log10_abs(const BigRational& q) {
    if (q == 0) throw std::invalid_argument("floor_log10_abs of zero");
    long da = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 10));
    long db = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 10));
    long e = da - db;  // within +/-2 of the true exponent
    while (cmp_abs_pow10(q, e + 1) >= 0) ++e;
    while (cmp_abs_pow10(q, e) < 0) --e;
    return e;
}

BigRational sqrt_lower(const BigRational& q, long digits) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    if (q == 0) return BigRational(0);
    BigInt scale = pow10(digits);
    BigInt root = isqrt(q.get_num() * q.get_den() * scale * scale);
    return make_rational(root, q.get_den() * scale);
}

BigRational sqrt_upper(const BigRational& q, long digits) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    if (q == 0) return BigRational(0);
    BigInt scale = pow10(digits);
    BigInt root = isqrt(q.get_num() * q.get_den() * scale * scale) + 1;
    return make_rational(root, q.get_den() * scale);
}

BigInt pi_scaled(long digits) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239), summed on scaled integers.
    const long guard = 10;
    BigInt scale = pow10(digits + guard);
    auto atan_inv = [&scale](unsigned long x) {
        BigInt sum = 0;
        BigInt power = scale / x;  // scale / x^(2k+1)
        BigInt x_sq(x * x);
        unsigned long k = 0;
        while (power != 0) {
            BigInt term = power / (2 * k + 1);
            sum += (k % 2 == 0) ? term : -term;
            power /= x_sq;
            ++k;
        }
        return sum;
    };
    BigInt pi = 16 * atan_inv(5) - 4 * atan_inv(239);
    return pi / pow10(guard);
}

std::string decimal_render(const BigRational& x, const BigRational& sqrt_factor, int digits) {
    if (digits < 1) throw std::invalid_argument("decimal_render: digits must be >= 1");
    if (sqrt_factor < 0) throw std::invalid_argument("decimal_render: negative sqrt factor");
    if (x == 0 || sqrt_factor == 0) return format_scaled(false, BigInt(0), digits - 1);

    BigRational value_sq = x * x * sqrt_factor;
    long e2 = floor_log10_abs(value_sq);
    long e = e2 >= 0 ? e2 / 2 : -((-e2 + 1) / 2);
    // settle e so that 10^(2e) <= value_sq < 10^(2e+2)
    while (cmp_abs_pow10(value_sq, 2 * (e + 1)) >= 0) ++e;
    while (cmp_abs_pow10(value_sq, 2 * e) < 0) --e;

    long places = digits - 1 - e;
    if (places >= 0) {
        BigInt s = pow10(places);
        BigRational scaled_sq = value_sq * BigRational(s) * BigRational(s);
        BigInt n = round_sqrt(scaled_sq.get_num(), scaled_sq.get_den());
        return format_scaled(sgn(x) < 0, n, places);
    }
    // magnitude exceeds the digit budget: scientific notation
    BigRational scaled_sq = value_sq / BigRational(pow10(2 * (e - digits + 1)));
    BigInt n = round_sqrt(scaled_sq.get_num(), scaled_sq.get_den());
    std::string mantissa = format_scaled(sgn(x) < 0, n, digits - 1);
    return mantissa + "e+" + std::to_string(e);
}

std::string decimal_render_up(const BigRational& x, int digits) {
    if (digits < 1) throw std::invalid_argument("decimal_render_up: digits must be >= 1");
    if (x < 0) throw std::invalid_argument("decimal_render_up: negative value");
    if (x == 0) return format_scaled(false, BigInt(0), digits - 1);
    long e = floor_log10_abs(x);
    long places = digits - 1 - e;
    BigInt n;
    if (places >= 0) {
        BigRational scaled = x * BigRational(pow10(places));
        mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        return format_scaled(false, n, places);
    }
    BigRational scaled = x / BigRational(pow10(e - digits + 1));
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return format_scaled(false, n, digits - 1) + "e+" + std::to_string(e);
}

std::string fixed_decimal(const BigRational& x, int places) {
    if (places < 0) throw std::invalid_argument("fixed_decimal: negative places");
    BigRational scaled = abs(x) * BigRational(pow10(places));
    // round half away from zero: floor(scaled + 1/2)
    BigInt n = floor_div(scaled + BigRational(1, 2));
    return format_scaled(sgn(x) < 0, n, places);
}

std::string fixed_decimal_over_sqrt_pi(const BigRational& x, int places) {
    if (places < 0) throw std::invalid_argument("fixed_decimal: negative places");
    if (x == 0) return format_scaled(false, BigInt(0), places);
    BigInt s = pow10(places);
    BigRational target_sq = x * x * BigRational(s) * BigRational(s);
    // bracket pi, tighten until both ends round identically
    for (long g = places + 40;; g *= 2) {
        BigInt p = pi_scaled(g);
        BigInt scale = pow10(g);
        BigRational hi = target_sq * make_rational(scale, p - 1);
        BigRational lo = target_sq * make_rational(scale, p + 2);
        BigInt n_lo = round_sqrt(lo.get_num(), lo.get_den());
        BigInt n_hi = round_sqrt(hi.get_num(), hi.get_den());
        if (n_lo == n_hi) return format_scaled(sgn(x) < 0, n_lo, places);
    }
}

}  // namespace wavode
