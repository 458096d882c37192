#ifndef GG_SERIES_HPP
#define GG_SERIES_HPP

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gg/integer.hpp"

namespace gg {

/// Exponent of a monomial q^(e2/2) z^dz w^dw. q-exponents are counted in
/// half units so that q^(n^2/2) and (-sqrt q)_n never need rationals.
struct Exponent {
    int e2 = 0;
    int dz = 0;
    int dw = 0;

    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

struct Term {
    Exponent exp;
    Integer coeff;
};

/// First differing coefficient between an expected and an observed series.
struct SeriesMismatch {
    Exponent exp;
    Integer expected;
    Integer got;
};

/// A Pochhammer factor family: factor j is (1 - sign * q^((e2 + j*step2)/2) z^dz w^dw).
///
/// (-x; q^r) is written with sign = -1, e.g. (-zq; q^2) is {-1, 2, 1, 0, 4}.
struct FactorSpec {
    int sign = 1;
    int e2 = 0;
    int dz = 0;
    int dw = 0;
    int step2 = 2;
};

/// The substituted variable of a theta series: sign * q^(e2/2) z^dz w^dw.
struct ZSpec {
    int sign = 1;
    int e2 = 0;
    int dz = 0;
    int dw = 0;
};

/// Truncated power series in q^(1/2) with polynomial dependence on z and w.
///
/// Terms are kept sorted by (e2, dz, dw), every coefficient is nonzero and
/// every kept exponent satisfies 0 <= e2 < order2. Values are immutable once
/// built; all arithmetic returns new series.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int order2);

    static TruncSeries zero(int order2) { return TruncSeries(order2); }
    static TruncSeries one(int order2);
    static TruncSeries monomial(const Integer& c, int e2, int dz, int dw, int order2);
    /// Sums duplicate exponents, drops zeros and anything at or beyond order2.
    static TruncSeries from_terms(int order2, std::vector<Term> terms);

    [[nodiscard]] int order2() const noexcept { return order2_; }
    [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_univariate() const noexcept;
    [[nodiscard]] int max_dz() const noexcept;
    [[nodiscard]] int max_dw() const noexcept;

    [[nodiscard]] Integer coeff(const Exponent& e) const;
    [[nodiscard]] Integer coeff(int e2, int dz = 0, int dw = 0) const { return coeff(Exponent{e2, dz, dw}); }
    /// Coefficient of q^n (integral power, no z or w).
    [[nodiscard]] Integer coeff_q(int n) const { return coeff(Exponent{2 * n, 0, 0}); }

    /// Lowers the truncation; raising it is an error since the dropped terms are unknown.
    [[nodiscard]] TruncSeries truncated(int order2) const;
    /// Multiplies by q^(de2/2) z^ddz w^ddw. A negative shift is allowed only if
    /// no term would get a negative exponent; order2 moves with the shift.
    [[nodiscard]] TruncSeries shifted(int de2, int ddz = 0, int ddw = 0) const;
    /// Multiplies by q^(de2/2) z^ddz w^ddw keeping order2 fixed (terms pushed past it are dropped).
    [[nodiscard]] TruncSeries times_monomial(int de2, int ddz = 0, int ddw = 0) const;
    /// q -> q^factor. The truncation scales with it.
    [[nodiscard]] TruncSeries base_scaled(int factor) const;
    /// Substitutes a numeric value for z (resp. w), folding its degree into the coefficient.
    [[nodiscard]] TruncSeries evaluate_z(int value) const;
    [[nodiscard]] TruncSeries evaluate_w(int value) const;
    /// Terms of w-degree exactly dw, with the w removed.
    [[nodiscard]] TruncSeries w_slice(int dw) const;
    /// Adds delta to a single coefficient (the mutation hook used by the check registry).
    [[nodiscard]] TruncSeries with_coeff_added(const Exponent& e, const Integer& delta) const;

    [[nodiscard]] std::string to_string() const;

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a);
    TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
    TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
    TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }

    /// Compares all terms below the smaller of the two truncations.
    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

private:
    friend TruncSeries multiply_to_order(const TruncSeries& a, const TruncSeries& b, int order2);
    void check_invariants() const;

    int order2_ = 0;
    std::vector<Term> terms_;
};

TruncSeries monomial(const Integer& c, int e2, int dz, int dw, int order2);
TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries negate(const TruncSeries& a);
Integer coeff(const TruncSeries& a, int e2, int dz = 0, int dw = 0);
bool equal(const TruncSeries& a, const TruncSeries& b);

/// Product with an explicit result truncation. Only meaningful above
/// min(a.order2(), b.order2()) when both operands are exact polynomials.
TruncSeries multiply_to_order(const TruncSeries& a, const TruncSeries& b, int order2);

/// First differing term of two series below their common truncation, in
/// (e2, dz, dw) order, or nullopt if they agree.
std::optional<SeriesMismatch> first_mismatch(const TruncSeries& expected, const TruncSeries& got);

/// prod_{j=0}^{n-1} (1 - sign q^((e2 + j step2)/2) z^dz w^dw), truncated.
TruncSeries poch_finite(const FactorSpec& f, int n, int order2);
/// The infinite product; factors whose q-exponent reaches order2 are 1 modulo truncation.
TruncSeries poch_infinite(const FactorSpec& f, int order2);
/// Inverse of a series whose constant term is +1 or -1 and which has no other e2 = 0 terms.
TruncSeries reciprocal(const TruncSeries& s);

/// Both sides of the Jacobi triple product sum_n q^(n^2) z^n = (q^2, -qz, -q/z; q^2)_inf,
/// multiplied by q^(shift2/2) so that no negative power appears.
struct ThetaSides {
    int shift2 = 0;
    TruncSeries sum;
    TruncSeries product;
};

/// Smallest index i in [start, bound) with f(i) == f(i+1) == target, or nullopt.
std::optional<int> find_stabilization(const std::function<TruncSeries(int)>& f, const TruncSeries& target, int start,
                                      int bound);

ThetaSides jacobi_sides(const ZSpec& z, int order2);
/// sum_n q^(n^2) z^n; throws std::domain_error if the specialization produces negative powers.
TruncSeries jacobi_theta(const ZSpec& z, int order2);
bool jacobi_check(const ZSpec& z, int order2);

}  // namespace gg

#endif
