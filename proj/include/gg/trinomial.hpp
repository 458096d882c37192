#ifndef GG_TRINOMIAL_HPP
#define GG_TRINOMIAL_HPP

#include <optional>
#include <string>

#include "gg/series.hpp"

namespace gg {

/// A polynomial in q^(1/2) held as a TruncSeries.
///
/// Without a cap the truncation always sits above the degree, so nothing is
/// ever dropped and equality is exact. With a cap (used by the limit searches)
/// everything at or beyond the cap is discarded.
class QPolynomial {
public:
    static constexpr int kExact = 0;

    QPolynomial() : series_(1) {}
    static QPolynomial zero(int cap = kExact);
    static QPolynomial one(int cap = kExact);
    static QPolynomial monomial(const Integer& c, int e2, int cap = kExact);
    /// Without a cap, s must be a polynomial whose truncation sits above its degree.
    static QPolynomial from_series(TruncSeries s, int cap = kExact);

    [[nodiscard]] const TruncSeries& series() const noexcept { return series_; }
    [[nodiscard]] int cap() const noexcept { return cap_; }
    [[nodiscard]] bool is_zero() const noexcept { return series_.is_zero(); }
    /// Highest kept e2, or -1 for the zero polynomial.
    [[nodiscard]] int degree2() const noexcept;
    [[nodiscard]] Integer coeff(int e2) const { return series_.coeff(e2); }
    /// q -> q^factor.
    [[nodiscard]] QPolynomial base_scaled(int factor) const;
    [[nodiscard]] QPolynomial times_q(int e2) const;
    [[nodiscard]] std::string to_string() const { return series_.to_string(); }

    friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
    friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
    friend QPolynomial operator-(const QPolynomial& a);
    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
    QPolynomial& operator+=(const QPolynomial& b) { return *this = *this + b; }
    QPolynomial& operator*=(const QPolynomial& b) { return *this = *this * b; }
    friend bool operator==(const QPolynomial& a, const QPolynomial& b);

private:
    QPolynomial(TruncSeries s, int cap) : series_(std::move(s)), cap_(cap) {}

    TruncSeries series_;
    int cap_ = kExact;
};

std::optional<SeriesMismatch> first_mismatch(const QPolynomial& expected, const QPolynomial& got);

/// Gaussian binomial [top, bottom] in q^(step2/2); zero unless 0 <= bottom <= top.
QPolynomial q_binomial(int top, int bottom, int step2 = 2, int cap = QPolynomial::kExact);

/// Warnaar's refined trinomial
/// sum_{n <= l, n + l = a mod 2} q^(n^2/2) [m, n] [m+b+(l-a-n)/2, m+b] [m-b+(l+a-n)/2, m-b].
QPolynomial t_warnaar(int l, int m, int a, int b, int cap = QPolynomial::kExact);
/// Andrews-Baxter: sum_{n <= l, n + l = a mod 2} q^(n^2/2) [l, n] [l-n, (l-a-n)/2].
QPolynomial t_ab(int l, int a, int cap = QPolynomial::kExact);
QPolynomial u_of(int l, int a, int cap = QPolynomial::kExact);
QPolynomial u_tilde(int l, int m, int a, int b, int cap = QPolynomial::kExact);

struct PolynomialIdentity {
    QPolynomial lhs;
    QPolynomial rhs;
    int j_max = 0;               // largest |j| with a nonzero term
    bool j_range_closed = false;  // the two |j| past j_max were checked to vanish
    std::optional<SeriesMismatch> mismatch;

    [[nodiscard]] bool holds() const { return j_range_closed && !mismatch; }
};

/// The doubly bounded multi-sum in (l, m) against its j-sum of U~ at base q^2.
PolynomialIdentity doubly_bounded_identity(int k, int l, int m, int cap = QPolynomial::kExact);
/// The same with m removed: the first binomial is dropped and U replaces U~.
PolynomialIdentity singly_bounded_identity(int k, int l, int cap = QPolynomial::kExact);

/// Smallest l past which U~(l, m, a, b) agrees with (-sqrt q)_m/(q)_{2m} [2m, m+b] below order2.
std::optional<int> warnaar_limit(int m, int a, int b, int order2);
/// Smallest m past which T_w(l, m, a, b) agrees with T_AB(l, a)/(q)_l below order2.
std::optional<int> andrews_baxter_limit(int l, int a, int b, int order2);
/// Smallest l past which the j-sum side of the doubly bounded identity agrees
/// with the finite Bailey j-sum at q -> q^2, n -> m.
std::optional<int> doubly_bounded_l_limit(int k, int m, int order2);

}  // namespace gg

#endif
