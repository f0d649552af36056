#pragma once

// Exact rational arithmetic and the formal log-polynomial calculus behind the
// main-term constants: B(j), the degree-10 multinomial sum, the diagonal
// log-bracket, and the leading constant 1/(2^6 3^3 5^2 7) of the asymptotic.
// No floating point anywhere in this module.

#include <cstdint>
#include <string>
#include <vector>

namespace qdl {

// Sign-magnitude arbitrary-precision integer, base 2^32.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);  // NOLINT(google-explicit-constructor): integer literals

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator-() const;

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    bool is_zero() const { return mag_.empty(); }
    bool negative() const { return neg_; }

    static BigInt gcd(BigInt a, BigInt b);
    // Exact division (throws if not divisible); small divisor only.
    BigInt div_u32(std::uint32_t d, std::uint32_t* rem = nullptr) const;

    std::string to_string() const;
    static BigInt factorial(int n);

private:
    bool neg_ = false;
    std::vector<std::uint32_t> mag_;  // little-endian, no leading zeros

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b);
    static BigInt sub_mag(const BigInt& a, const BigInt& b);  // |a| >= |b|
};

// Rational with gcd-reduced representation, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;
    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }

    bool is_zero() const { return num_.is_zero(); }
    std::string to_string() const;

private:
    BigInt num_, den_;
    void normalize();
};

// Polynomial over Q in the formal variables L1 = log U1, L2 = log U2,
// LX = log X; dense storage, total degree <= 10.
class LogPolynomial {
public:
    static constexpr int MAX_DEG = 10;

    LogPolynomial();

    static LogPolynomial constant(const Rational& c);
    static LogPolynomial monomial(const Rational& c, int e1, int e2, int ex);

    const Rational& coeff(int e1, int e2, int ex) const;
    void add_term(const Rational& c, int e1, int e2, int ex);

    LogPolynomial operator+(const LogPolynomial& o) const;
    LogPolynomial operator-(const LogPolynomial& o) const;
    LogPolynomial operator*(const LogPolynomial& o) const;  // throws above MAX_DEG
    LogPolynomial scale(const Rational& c) const;
    bool operator==(const LogPolynomial& o) const;

    int total_degree() const;
    bool is_zero() const;

    // Specialize L1 = L2 = LX = t; returns coefficients of t^0 .. t^MAX_DEG.
    std::vector<Rational> specialize_equal() const;

    std::string to_string() const;

private:
    std::vector<Rational> c_;  // [e1][e2][ex] flattened
    static int idx(int e1, int e2, int ex);
};

// B(j) of the off-diagonal residue: 26; -5(L1+L2); 2 L1 L2; 0 for j >= 3.
LogPolynomial b_coeff(int j);

// sum_{j1+j2+j3+j4=10} (-1)^{j3} B(j4)/(j1! j2! j3! j4!) L1^{j1} L2^{j2} LX^{j3}.
LogPolynomial square_term_sum();

// -L1^10 + 5 L1^9 L2 - 9 L1^8 L2^2 + 6 L1^7 L2^3.
LogPolynomial diagonal_bracket();

struct LeadingConstant {
    Rational diagonal;      // 1/(2^6 3^4 5 7) = 1/181440
    Rational off_diagonal;  // (1/2) * 1/226800
    Rational total;         // 1/302400 = 1/(2^6 3^3 5^2 7), coefficient of a4/pi^2 X log^10 X
};

// Assembles the leading asymptotic coefficient with U1 = U2 = U ~ X, asserting the
// exact identity 1/181440 - 1/453600 = 1/302400.
LeadingConstant assemble_leading_constant();

// Extracts Res_{u=0} U1^u [E(0,0)(u^3 L2^3 - 12 u^2 L2^2 + 60 u L2 - 120)] / (384 u^11)
// formally (E-derivative terms dropped): the result must be
// diagonal_bracket / 11612160; returns the verified constant 1/11612160.
Rational k0_residue_constant();

}  // namespace qdl
