#include "wavode/rational.hpp"

namespace wavode {

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
    BigRational q;
    mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
    mpq_canonicalize(q.get_mpq_t());
    return q;
}

BigRational rational_from_string(const std::string& text) {
    auto bad = [&] { return SchemaError("invalid rational literal '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            BigInt n(text);
            return BigRational(n);
        }
        BigInt n(text.substr(0, slash));
        BigInt d(text.substr(slash + 1));
        if (d <= 0) throw bad();
        return make_rational(n, d);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

std::string rational_to_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re + b.re, a.im + b.im};
}
GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re - b.re, a.im - b.im};
}
GaussianInteger operator-(const GaussianInteger& a) { return {-a.re, -a.im}; }
GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussianInteger operator*(const BigInt& a, const GaussianInteger& b) {
    return {a * b.re, a * b.im};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}
GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}
GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    *this = *this * o;
    return *this;
}

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
}
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
}
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussianRational operator*(const BigRational& a, const GaussianRational& b) {
    return {a * b.re, a * b.im};
}
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw Error("DivisionByZero", "Gaussian division by zero");
    BigRational n = b.norm_sq();
    GaussianRational num = a * b.conj();
    return {num.re / n, num.im / n};
}

namespace {

BigInt round_component(const BigRational& t) {
    int s = sgn(t);
    if (s == 0) return BigInt(0);
    BigRational half_minus_abs = BigRational(1, 2) - abs(t);
    BigInt f = floor_div(half_minus_abs);
    return s > 0 ? BigInt(-f) : f;
}

}  // namespace

GaussianInteger gauss_round(const GaussianRational& z) {
    return {round_component(z.re), round_component(z.im)};
}

int cmp_sq_ratio(const BigRational& aN, const BigRational& aD, const BigRational& bN,
                 const BigRational& bD) {
    if (aD <= 0 || bD <= 0)
        throw std::invalid_argument("cmp_sq_ratio: nonpositive denominator");
    if (aN < 0 || bN < 0)
        throw std::invalid_argument("cmp_sq_ratio: negative numerator");
    BigRational diff = aN * bD - bN * aD;
    return sgn(diff);
}

std::string gaussian_to_string(const GaussianRational& z) {
    return rational_to_string(z.re) + (sgn(z.im) < 0 ? "" : "+") + rational_to_string(z.im) +
           "i";
}

}  // namespace wavode
