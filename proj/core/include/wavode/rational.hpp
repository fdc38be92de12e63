#pragma once

#include <gmpxx.h>

#include <string>

#include "wavode/errors.hpp"

namespace wavode {

using BigInt = mpz_class;
using BigRational = mpq_class;

// mpq_class arithmetic keeps results canonical, but construction from a
// num/den pair does not; route all fraction construction through here.
BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational rational_from_string(const std::string& text);  // "a/b" or "a"
std::string rational_to_string(const BigRational& q);

inline BigInt floor_div(const BigRational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

struct GaussianInteger {
    BigInt re{0};
    BigInt im{0};

    bool operator==(const GaussianInteger&) const = default;
    bool is_zero() const { return re == 0 && im == 0; }
    GaussianInteger conj() const { return {re, -im}; }
    BigInt norm_sq() const { return re * re + im * im; }
};

GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b);
GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b);
GaussianInteger operator-(const GaussianInteger& a);
GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b);
GaussianInteger operator*(const BigInt& a, const GaussianInteger& b);

struct GaussianRational {
    BigRational re{0};
    BigRational im{0};

    GaussianRational() = default;
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long r) : re(r), im(0) {}
    explicit GaussianRational(const BigRational& r) : re(r), im(0) {}
    explicit GaussianRational(const GaussianInteger& z) : re(z.re), im(z.im) {}

    bool operator==(const GaussianRational&) const = default;
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    BigRational norm_sq() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
};

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator*(const BigRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

// Nearest Gaussian integer, half-integer components rounded toward zero:
// each component maps to -sgn(t)*floor(1/2 - |t|), with sgn(0) = 0.
GaussianInteger gauss_round(const GaussianRational& z);

// Sign of aN/aD - bN/bD without forming the quotients; both denominators
// must be positive and both numerators nonnegative (these are squared
// norms or squared ratios). Returns -1, 0 or +1.
int cmp_sq_ratio(const BigRational& aN, const BigRational& aD, const BigRational& bN,
                 const BigRational& bD);

std::string gaussian_to_string(const GaussianRational& z);

}  // namespace wavode
