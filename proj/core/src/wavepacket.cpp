#include "wavode/wavepacket.hpp"

#include <cassert>
#include <cstdlib>

namespace wavode {

namespace {

long floor_div2(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// z^e for integer e; |z| need not be 1.
GaussianRational gpow(const GaussianRational& z, long e) {
    GaussianRational base = z;
    if (e < 0) {
        base = GaussianRational(BigRational(1)) / z;
        e = -e;
    }
    GaussianRational acc{BigRational(1), BigRational(0)};
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

}  // namespace

long bilateral_index(long k, long n) {
    assert(n >= 0);
    long base = floor_div2(-(k + 1));
    long half = (n + 1) / 2;
    long sign = ((n + k + 1) % 2 == 0) ? 1 : -1;
    return base + sign * half;
}

long inverse_bilateral(long k, long ddn) {
    long base = floor_div2(-(k + 1));
    long offset = ddn - base;
    if (offset == 0) return 0;
    long v = std::labs(offset);
    // candidates 2v-1 and 2v; exactly one has the matching sign
    long n = 2 * v - 1;
    if (bilateral_index(k, n) == ddn) return n;
    n = 2 * v;
    assert(bilateral_index(k, n) == ddn);
    return n;
}

long solver_bilateral(long k, long n) { return -bilateral_index(k, n) - k - 1; }

long inverse_solver_bilateral(long k, long ddn) {
    return inverse_bilateral(k, -ddn - k - 1);
}

GaussianRational psi_eval(long k, long ddn, const BigRational& x) {
    GaussianRational x_plus_i{x, BigRational(1)};
    GaussianRational x_minus_i{x, BigRational(-1)};
    return gpow(x_plus_i, -(k + 1) - ddn) * gpow(x_minus_i, ddn);
}

BigRational l2_inner_psi(long k, long n, long np) {
    assert(k >= 0);
    long d = n - np;
    if (std::labs(d) > k) return BigRational(0);
    BigInt num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(2 * k));
    BigInt f1, f2;
    mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(k + d));
    mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(k - d));
    BigInt four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    BigRational value = make_rational(num, f1 * f2 * four_k);
    if (d % 2 != 0) value = -value;
    return value;
}

CayleyForm CayleyForm::psi(long k, long ddn) {
    CayleyForm f;
    f.add(-(k + 1) - ddn, ddn, GaussianRational(1L));
    return f;
}

void CayleyForm::prune(const std::pair<long, long>& key) {
    auto it = terms_.find(key);
    if (it != terms_.end() && it->second.is_zero()) terms_.erase(it);
}

void CayleyForm::add(long a, long b, const GaussianRational& coeff) {
    if (coeff.is_zero()) return;
    auto key = std::make_pair(a, b);
    terms_[key] += coeff;
    prune(key);
}

CayleyForm CayleyForm::derivative() const {
    // d/dx (x+i)^a (x-i)^b = a (x+i)^(a-1) (x-i)^b + b (x+i)^a (x-i)^(b-1)
    CayleyForm out;
    for (const auto& [key, coeff] : terms_) {
        auto [a, b] = key;
        if (a != 0) out.add(a - 1, b, BigRational(a) * coeff);
        if (b != 0) out.add(a, b - 1, BigRational(b) * coeff);
    }
    return out;
}

CayleyForm& CayleyForm::operator+=(const CayleyForm& o) {
    for (const auto& [key, coeff] : o.terms_) add(key.first, key.second, coeff);
    return *this;
}

CayleyForm& CayleyForm::operator-=(const CayleyForm& o) {
    for (const auto& [key, coeff] : o.terms_) add(key.first, key.second, -coeff);
    return *this;
}

void CayleyForm::scale(const GaussianRational& s) {
    for (auto& [key, coeff] : terms_) coeff *= s;
    if (s.is_zero()) terms_.clear();
}

GaussianRational CayleyForm::eval(const BigRational& x) const {
    GaussianRational x_plus_i{x, BigRational(1)};
    GaussianRational x_minus_i{x, BigRational(-1)};
    GaussianRational acc;
    for (const auto& [key, coeff] : terms_)
        acc += coeff * gpow(x_plus_i, key.first) * gpow(x_minus_i, key.second);
    return acc;
}

bool check_recursion_identities(long k, long ddn, const std::vector<BigRational>& samples) {
    if (samples.empty()) return false;
    const GaussianRational half{BigRational(1, 2), BigRational(0)};
    const GaussianRational minus_half_i{BigRational(0), BigRational(-1, 2)};
    for (const BigRational& x : samples) {
        GaussianRational lhs = psi_eval(k, ddn, x);
        GaussianRational lower = psi_eval(k - 1, ddn, x);
        GaussianRational lower_next = psi_eval(k - 1, ddn + 1, x);
        if (lhs != minus_half_i * (lower - lower_next)) return false;
        if (GaussianRational(x) * lhs != half * (lower + lower_next)) return false;
    }
    // derivative identity, compared monomial by monomial
    CayleyForm lhs = CayleyForm::psi(k, ddn).derivative();
    CayleyForm rhs = CayleyForm::psi(k + 1, ddn - 1);
    rhs.scale(GaussianRational(BigRational(ddn)));
    CayleyForm second = CayleyForm::psi(k + 1, ddn);
    second.scale(GaussianRational(BigRational(ddn + k + 1)));
    rhs -= second;
    return lhs == rhs;
}

}  // namespace wavode
