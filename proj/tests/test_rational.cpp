#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "qdl/rational.hpp"

using namespace qdl;

TEST_CASE("BigInt arithmetic") {
    CHECK(BigInt::factorial(10).to_string() == "3628800");
    CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigInt::factorial(25).to_string() == "15511210043330985984000000");

    CHECK(BigInt(384) * BigInt(30240) == BigInt(11612160));
    CHECK((BigInt(-7) + BigInt(7)).is_zero());
    CHECK(BigInt(-3) * BigInt(-4) == BigInt(12));
    CHECK(BigInt(-3) * BigInt(4) == BigInt(-12));
    CHECK(BigInt(1000000007) * BigInt(998244353) == BigInt(998244359987710471LL));
    CHECK(BigInt(5) - BigInt(9) == BigInt(-4));
    CHECK(BigInt(-5) < BigInt(3));
    CHECK(BigInt::gcd(BigInt(226800), BigInt(302400)) == BigInt(75600));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));

    // pseudo-random consistency (a+b)-b = a, (a*b)/gcd structure
    std::srand(12345);
    for (int i = 0; i < 500; ++i) {
        long long a = std::rand() % 200001 - 100000;
        long long b = std::rand() % 200001 - 100000;
        CHECK(BigInt(a) + BigInt(b) - BigInt(b) == BigInt(a));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    }
}

TEST_CASE("Rational arithmetic is exact and normalized") {
    Rational half(BigInt(2), BigInt(4));
    CHECK(half.num() == BigInt(1));
    CHECK(half.den() == BigInt(2));
    CHECK(half.to_string() == "1/2");
    Rational negq(BigInt(3), BigInt(-6));
    CHECK(negq.to_string() == "-1/2");
    CHECK(half + negq == Rational(0));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

    std::srand(99);
    for (int i = 0; i < 300; ++i) {
        long long n = std::rand() % 2001 - 1000;
        long long d = std::rand() % 999 + 1;
        Rational q{BigInt(n), BigInt(d)};
        CHECK(q * Rational(BigInt(d), BigInt(1)) == Rational(n));
        if (n != 0) CHECK(q / q == Rational(1));
    }
}

TEST_CASE("B(j) coefficients") {
    CHECK(b_coeff(0) == LogPolynomial::constant(Rational(26)));

    LogPolynomial b1;
    b1.add_term(Rational(-5), 1, 0, 0);
    b1.add_term(Rational(-5), 0, 1, 0);
    CHECK(b_coeff(1) == b1);

    CHECK(b_coeff(2) == LogPolynomial::monomial(Rational(2), 1, 1, 0));
    CHECK(b_coeff(3).is_zero());
    CHECK(b_coeff(7).is_zero());
    CHECK_THROWS_AS(b_coeff(-1), std::domain_error);
}

TEST_CASE("square_term_sum: degree and the t^10 coefficient") {
    LogPolynomial s = square_term_sum();
    CHECK(s.total_degree() == 10);

    std::vector<Rational> spec = s.specialize_equal();
    // 26/10! - 10/9! + 1/8! = 1/226800 = 1/(2^4 3^4 5^2 7)
    Rational direct = Rational(BigInt(26), BigInt::factorial(10)) -
                      Rational(BigInt(10), BigInt::factorial(9)) +
                      Rational(BigInt(1), BigInt::factorial(8));
    CHECK(direct == Rational(BigInt(1), BigInt(226800)));
    CHECK(BigInt(16 * 81) * BigInt(25 * 7) == BigInt(226800));
    CHECK(spec[10] == Rational(BigInt(1), BigInt(226800)));

    // j4 = 0 slice: sum over j1+j2+j3 = 10 of (-1)^{j3}/(j1! j2! j3!) = 1/10!
    Rational slice(0);
    for (int j1 = 0; j1 <= 10; ++j1)
        for (int j2 = 0; j1 + j2 <= 10; ++j2) {
            int j3 = 10 - j1 - j2;
            Rational term(BigInt((j3 % 2) ? -1 : 1), BigInt::factorial(j1) *
                                                         BigInt::factorial(j2) *
                                                         BigInt::factorial(j3));
            slice = slice + term;
        }
    CHECK(slice == Rational(BigInt(1), BigInt::factorial(10)));
}

TEST_CASE("diagonal bracket of the k=0 main term") {
    LogPolynomial d = diagonal_bracket();
    CHECK(d.coeff(10, 0, 0) == Rational(-1));
    CHECK(d.coeff(9, 1, 0) == Rational(5));
    CHECK(d.coeff(8, 2, 0) == Rational(-9));
    CHECK(d.coeff(7, 3, 0) == Rational(6));
    // not symmetric in L1 <-> L2
    CHECK(d.coeff(1, 9, 0) == Rational(0));
    CHECK(d.coeff(0, 10, 0) == Rational(0));

    // specialize L1 = L2 = t: coefficient (-1 + 5 - 9 + 6) = 1
    std::vector<Rational> spec = d.specialize_equal();
    CHECK(spec[10] == Rational(1));
    for (int i = 0; i < 10; ++i) CHECK(spec[i] == Rational(0));
}

TEST_CASE("leading constant assembly reproduces 1/302400") {
    LeadingConstant lc = assemble_leading_constant();
    CHECK(lc.diagonal == Rational(BigInt(1), BigInt(181440)));
    CHECK(lc.off_diagonal == Rational(BigInt(1), BigInt(453600)));
    CHECK(lc.total == Rational(BigInt(1), BigInt(302400)));
    CHECK(BigInt(64 * 27) * BigInt(25 * 7) == BigInt(302400));  // 2^6 3^3 5^2 7
}

TEST_CASE("k = 0 residue constant 1/11612160") {
    Rational r = k0_residue_constant();
    CHECK(r == Rational(BigInt(1), BigInt(11612160)));
    CHECK(BigInt(384) * BigInt(30240) == BigInt(11612160));
    // 16 * 4 / 11612160 = 1/181440 = 1/(2^6 3^4 5 7)
    CHECK(Rational(BigInt(64), BigInt(11612160)) == Rational(BigInt(1), BigInt(181440)));
    CHECK(BigInt(64 * 81) * BigInt(5 * 7) == BigInt(181440));
}

TEST_CASE("LogPolynomial guards") {
    CHECK_THROWS_AS(LogPolynomial::monomial(Rational(1), 6, 5, 0), std::domain_error);
    LogPolynomial big = LogPolynomial::monomial(Rational(1), 5, 5, 0);
    CHECK_THROWS_AS(big * big, std::domain_error);
}
