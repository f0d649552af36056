#include "qdl/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdl {

// ---------------------------------------------------------------------------
// BigInt
// ---------------------------------------------------------------------------

BigInt::BigInt(long long v) {
    neg_ = v < 0;
    unsigned long long u = neg_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (u) {
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.mag_.size() != b.mag_.size()) return a.mag_.size() < b.mag_.size() ? -1 : 1;
    for (std::size_t i = a.mag_.size(); i-- > 0;) {
        if (a.mag_[i] != b.mag_[i]) return a.mag_[i] < b.mag_[i] ? -1 : 1;
    }
    return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    std::uint64_t carry = 0;
    std::size_t n = std::max(a.mag_.size(), b.mag_.size());
    r.mag_.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = carry;
        if (i < a.mag_.size()) s += a.mag_[i];
        if (i < b.mag_.size()) s += b.mag_[i];
        r.mag_.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry) r.mag_.push_back(static_cast<std::uint32_t>(carry));
    return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    std::int64_t borrow = 0;
    r.mag_.reserve(a.mag_.size());
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a.mag_[i]) - borrow -
                         (i < b.mag_.size() ? b.mag_[i] : 0);
        if (s < 0) {
            s += (std::int64_t(1) << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.mag_.push_back(static_cast<std::uint32_t>(s));
    }
    r.trim();
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (neg_ == o.neg_) {
        BigInt r = add_mag(*this, o);
        r.neg_ = neg_;
        r.trim();
        return r;
    }
    int c = cmp_mag(*this, o);
    if (c == 0) return BigInt();
    BigInt r = (c > 0) ? sub_mag(*this, o) : sub_mag(o, *this);
    r.neg_ = (c > 0) ? neg_ : o.neg_;
    r.trim();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    BigInt r;
    r.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.mag_.size(); ++j) {
            std::uint64_t cur = r.mag_[i + j] +
                                static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
            r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + o.mag_.size();
        while (carry) {
            std::uint64_t cur = r.mag_[k] + carry;
            r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    r.neg_ = neg_ != o.neg_;
    r.trim();
    return r;
}

bool BigInt::operator==(const BigInt& o) const {
    return neg_ == o.neg_ && mag_ == o.mag_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_;
    int c = cmp_mag(*this, o);
    return neg_ ? c > 0 : c < 0;
}

BigInt BigInt::div_u32(std::uint32_t d, std::uint32_t* rem) const {
    if (d == 0) throw std::domain_error("BigInt: division by zero");
    BigInt r;
    r.mag_.assign(mag_.size(), 0);
    std::uint64_t cur = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        cur = (cur << 32) | mag_[i];
        r.mag_[i] = static_cast<std::uint32_t>(cur / d);
        cur %= d;
    }
    if (rem) *rem = static_cast<std::uint32_t>(cur);
    r.neg_ = neg_;
    r.trim();
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    // binary gcd on magnitudes via subtract-and-halve
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto is_even = [](const BigInt& x) { return x.mag_.empty() || (x.mag_[0] & 1u) == 0; };
    auto halve = [](BigInt& x) {
        std::uint32_t carry = 0;
        for (std::size_t i = x.mag_.size(); i-- > 0;) {
            std::uint32_t cur = x.mag_[i];
            x.mag_[i] = (cur >> 1) | (carry << 31);
            carry = cur & 1u;
        }
        x.trim();
    };
    int shift = 0;
    while (is_even(a) && is_even(b)) {
        halve(a);
        halve(b);
        ++shift;
    }
    while (is_even(a)) halve(a);
    while (!b.is_zero()) {
        while (is_even(b)) halve(b);
        if (cmp_mag(a, b) > 0) std::swap(a, b);
        b = sub_mag(b, a);
    }
    for (int i = 0; i < shift; ++i) a = a + a;
    return a;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt t = *this;
    t.neg_ = false;
    std::string s;
    while (!t.is_zero()) {
        std::uint32_t rem;
        t = t.div_u32(1000000000u, &rem);
        if (t.is_zero()) {
            s = std::to_string(rem) + s;
        } else {
            std::string part = std::to_string(rem);
            s = std::string(9 - part.size(), '0') + part + s;
        }
    }
    return neg_ ? "-" + s : s;
}

BigInt BigInt::factorial(int n) {
    BigInt r(1);
    for (int i = 2; i <= n; ++i) r = r * BigInt(i);
    return r;
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    // exact division by the gcd, binary long division
    auto divexact = [](const BigInt& a, const BigInt& b) {
        if (b == BigInt(1)) return a;
        std::vector<bool> bits;  // of |a|, most-significant first
        {
            BigInt t = a.negative() ? -a : a;
            std::vector<bool> rbits;
            while (!t.is_zero()) {
                std::uint32_t r32;
                BigInt q = t.div_u32(2u, &r32);
                rbits.push_back(r32 != 0);
                t = q;
            }
            bits.assign(rbits.rbegin(), rbits.rend());
        }
        BigInt cur;
        std::vector<bool> qbits;
        BigInt babs = b.negative() ? -b : b;
        for (bool bit : bits) {
            cur = cur + cur;
            if (bit) cur = cur + BigInt(1);
            if (!(cur < babs)) {
                cur = cur - babs;
                qbits.push_back(true);
            } else {
                qbits.push_back(false);
            }
        }
        BigInt q;
        for (bool bit : qbits) {
            q = q + q;
            if (bit) q = q + BigInt(1);
        }
        if (a.negative() != b.negative()) q = -q;
        return q;
    };
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}
Rational Rational::operator-() const { return Rational(-num_, den_); }

bool Rational::operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

// ---------------------------------------------------------------------------
// LogPolynomial
// ---------------------------------------------------------------------------

LogPolynomial::LogPolynomial() : c_((MAX_DEG + 1) * (MAX_DEG + 1) * (MAX_DEG + 1)) {}

int LogPolynomial::idx(int e1, int e2, int ex) {
    return (e1 * (MAX_DEG + 1) + e2) * (MAX_DEG + 1) + ex;
}

LogPolynomial LogPolynomial::constant(const Rational& c) {
    LogPolynomial p;
    p.c_[idx(0, 0, 0)] = c;
    return p;
}

LogPolynomial LogPolynomial::monomial(const Rational& c, int e1, int e2, int ex) {
    if (e1 + e2 + ex > MAX_DEG) throw std::domain_error("LogPolynomial: degree > 10");
    LogPolynomial p;
    p.c_[idx(e1, e2, ex)] = c;
    return p;
}

const Rational& LogPolynomial::coeff(int e1, int e2, int ex) const {
    return c_[idx(e1, e2, ex)];
}

void LogPolynomial::add_term(const Rational& c, int e1, int e2, int ex) {
    if (e1 + e2 + ex > MAX_DEG) throw std::domain_error("LogPolynomial: degree > 10");
    c_[idx(e1, e2, ex)] = c_[idx(e1, e2, ex)] + c;
}

LogPolynomial LogPolynomial::operator+(const LogPolynomial& o) const {
    LogPolynomial r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

LogPolynomial LogPolynomial::operator-(const LogPolynomial& o) const {
    LogPolynomial r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

LogPolynomial LogPolynomial::operator*(const LogPolynomial& o) const {
    LogPolynomial r;
    for (int a1 = 0; a1 <= MAX_DEG; ++a1)
        for (int a2 = 0; a1 + a2 <= MAX_DEG; ++a2)
            for (int a3 = 0; a1 + a2 + a3 <= MAX_DEG; ++a3) {
                const Rational& ca = coeff(a1, a2, a3);
                if (ca.is_zero()) continue;
                for (int b1 = 0; b1 <= MAX_DEG; ++b1)
                    for (int b2 = 0; b1 + b2 <= MAX_DEG; ++b2)
                        for (int b3 = 0; b1 + b2 + b3 <= MAX_DEG; ++b3) {
                            const Rational& cb = o.coeff(b1, b2, b3);
                            if (cb.is_zero()) continue;
                            if (a1 + b1 + a2 + b2 + a3 + b3 > MAX_DEG)
                                throw std::domain_error("LogPolynomial: product degree > 10");
                            r.add_term(ca * cb, a1 + b1, a2 + b2, a3 + b3);
                        }
            }
    return r;
}

LogPolynomial LogPolynomial::scale(const Rational& c) const {
    LogPolynomial r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * c;
    return r;
}

bool LogPolynomial::operator==(const LogPolynomial& o) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

int LogPolynomial::total_degree() const {
    int deg = -1;
    for (int e1 = 0; e1 <= MAX_DEG; ++e1)
        for (int e2 = 0; e1 + e2 <= MAX_DEG; ++e2)
            for (int ex = 0; e1 + e2 + ex <= MAX_DEG; ++ex)
                if (!coeff(e1, e2, ex).is_zero()) deg = std::max(deg, e1 + e2 + ex);
    return deg;
}

bool LogPolynomial::is_zero() const { return total_degree() < 0; }

std::vector<Rational> LogPolynomial::specialize_equal() const {
    std::vector<Rational> out(MAX_DEG + 1);
    for (int e1 = 0; e1 <= MAX_DEG; ++e1)
        for (int e2 = 0; e1 + e2 <= MAX_DEG; ++e2)
            for (int ex = 0; e1 + e2 + ex <= MAX_DEG; ++ex) {
                const Rational& c = coeff(e1, e2, ex);
                if (!c.is_zero()) out[e1 + e2 + ex] = out[e1 + e2 + ex] + c;
            }
    return out;
}

std::string LogPolynomial::to_string() const {
    std::string s;
    for (int e1 = MAX_DEG; e1 >= 0; --e1)
        for (int e2 = MAX_DEG; e2 >= 0; --e2)
            for (int ex = MAX_DEG; ex >= 0; --ex) {
                if (e1 + e2 + ex > MAX_DEG) continue;
                const Rational& c = coeff(e1, e2, ex);
                if (c.is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += "(" + c.to_string() + ")";
                if (e1) s += " L1^" + std::to_string(e1);
                if (e2) s += " L2^" + std::to_string(e2);
                if (ex) s += " LX^" + std::to_string(ex);
            }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// The residue constants
// ---------------------------------------------------------------------------

LogPolynomial b_coeff(int j) {
    if (j < 0) throw std::domain_error("b_coeff: j must be >= 0");
    switch (j) {
        case 0: return LogPolynomial::constant(Rational(26));
        case 1: {
            LogPolynomial p;
            p.add_term(Rational(-5), 1, 0, 0);
            p.add_term(Rational(-5), 0, 1, 0);
            return p;
        }
        case 2: return LogPolynomial::monomial(Rational(2), 1, 1, 0);
        default: return LogPolynomial();
    }
}

LogPolynomial square_term_sum() {
    LogPolynomial total;
    for (int j4 = 0; j4 <= 10; ++j4) {
        LogPolynomial bj = b_coeff(j4);
        if (bj.is_zero()) continue;
        Rational inv_j4(BigInt(1), BigInt::factorial(j4));
        for (int j1 = 0; j1 + j4 <= 10; ++j1)
            for (int j2 = 0; j1 + j2 + j4 <= 10; ++j2) {
                int j3 = 10 - j1 - j2 - j4;
                Rational c = Rational(BigInt((j3 % 2) ? -1 : 1),
                                      BigInt::factorial(j1) * BigInt::factorial(j2) *
                                          BigInt::factorial(j3)) *
                             inv_j4;
                total = total + bj.scale(c) * LogPolynomial::monomial(Rational(1), j1, j2, j3);
            }
    }
    return total;
}

LogPolynomial diagonal_bracket() {
    LogPolynomial p;
    p.add_term(Rational(-1), 10, 0, 0);
    p.add_term(Rational(5), 9, 1, 0);
    p.add_term(Rational(-9), 8, 2, 0);
    p.add_term(Rational(6), 7, 3, 0);
    return p;
}

LeadingConstant assemble_leading_constant() {
    LeadingConstant lc;
    lc.diagonal = Rational(BigInt(1), BigInt(181440));  // 2^6 3^4 5 7

    std::vector<Rational> spec = square_term_sum().specialize_equal();
    Rational t10 = spec[10];
    if (t10 != Rational(BigInt(1), BigInt(226800)))
        throw std::logic_error("square_term_sum: t^10 coefficient != 1/226800");
    lc.off_diagonal = Rational(BigInt(1), BigInt(2)) * t10;

    lc.total = lc.diagonal - lc.off_diagonal;
    if (lc.total != Rational(BigInt(1), BigInt(302400)))
        throw std::logic_error("leading constant != 1/302400");
    return lc;
}

Rational k0_residue_constant() {
    // I1(u) = U1^u/(384 u^11) [E(0,0) P0(u, L2) + E-derivative terms],
    // P0 = u^3 L2^3 - 12 u^2 L2^2 + 60 u L2 - 120.  The residue at u = 0 of
    // the E(0,0) part is sum_m c_m(L2) L1^{10-m}/(10-m)! / 384.
    struct Term {
        int upow;
        long long c;
        int l2pow;
    };
    const Term P0[] = {{3, 1, 3}, {2, -12, 2}, {1, 60, 1}, {0, -120, 0}};

    LogPolynomial residue;
    for (const Term& t : P0) {
        int l1pow = 10 - t.upow;
        Rational c =
            Rational(BigInt(t.c), BigInt::factorial(l1pow) * BigInt(384));
        residue = residue + LogPolynomial::monomial(c, l1pow, t.l2pow, 0);
    }

    // residue must equal diagonal_bracket / 11612160
    Rational want(BigInt(1), BigInt(11612160));
    if (!(residue == diagonal_bracket().scale(want)))
        throw std::logic_error("k0 residue does not match the printed bracket/11612160");
    if (BigInt(384) * BigInt(30240) != BigInt(11612160))
        throw std::logic_error("384 * 30240 != 11612160");
    return want;
}

}  // namespace qdl
