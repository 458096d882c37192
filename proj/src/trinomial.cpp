#include "gg/trinomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gg/bailey.hpp"

namespace gg {

namespace {

int join_cap(int a, int b)
{
    if (a == QPolynomial::kExact)
        return b;
    if (b == QPolynomial::kExact)
        return a;
    return std::min(a, b);
}

TruncSeries at_order(const TruncSeries& s, int order2)
{
    return TruncSeries::from_terms(order2, std::vector<Term>(s.terms().begin(), s.terms().end()));
}

int floor_div(int a, int b)
{
    int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

bool is_even(int x)
{
    return x % 2 == 0;
}

}  // namespace

QPolynomial QPolynomial::zero(int cap)
{
    return QPolynomial(TruncSeries(cap == kExact ? 1 : cap), cap);
}

QPolynomial QPolynomial::one(int cap)
{
    return monomial(Integer(1), 0, cap);
}

QPolynomial QPolynomial::monomial(const Integer& c, int e2, int cap)
{
    const int order = cap == kExact ? e2 + 1 : cap;
    return QPolynomial(TruncSeries::monomial(c, e2, 0, 0, order), cap);
}

QPolynomial QPolynomial::from_series(TruncSeries s, int cap)
{
    if (cap != kExact && s.order2() != cap)
        s = at_order(s, cap);
    if (!s.is_univariate())
        throw std::invalid_argument("QPolynomial: series depends on z or w");
    return QPolynomial(std::move(s), cap);
}

int QPolynomial::degree2() const noexcept
{
    return series_.is_zero() ? -1 : series_.terms().back().exp.e2;
}

QPolynomial QPolynomial::base_scaled(int factor) const
{
    TruncSeries s = series_.base_scaled(factor);
    if (cap_ != kExact)
        s = s.truncated(cap_);
    return QPolynomial(std::move(s), cap_);
}

QPolynomial QPolynomial::times_q(int e2) const
{
    if (e2 < 0)
        throw std::invalid_argument("QPolynomial::times_q: negative shift");
    return QPolynomial(cap_ == kExact ? series_.shifted(e2) : series_.times_monomial(e2), cap_);
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b)
{
    const int cap = join_cap(a.cap_, b.cap_);
    const int order = cap == QPolynomial::kExact ? std::max(a.series_.order2(), b.series_.order2()) : cap;
    return QPolynomial(at_order(a.series_, order) + at_order(b.series_, order), cap);
}

QPolynomial operator-(const QPolynomial& a)
{
    return QPolynomial(-a.series_, a.cap_);
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b)
{
    return a + (-b);
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b)
{
    const int cap = join_cap(a.cap_, b.cap_);
    const int order = cap == QPolynomial::kExact ? a.series_.order2() + b.series_.order2() - 1 : cap;
    return QPolynomial(multiply_to_order(a.series_, b.series_, order), cap);
}

std::optional<SeriesMismatch> first_mismatch(const QPolynomial& expected, const QPolynomial& got)
{
    const int cap = join_cap(expected.cap(), got.cap());
    const int order =
        cap == QPolynomial::kExact ? std::max(expected.series().order2(), got.series().order2()) : cap;
    return first_mismatch(at_order(expected.series(), order), at_order(got.series(), order));
}

bool operator==(const QPolynomial& a, const QPolynomial& b)
{
    return !first_mismatch(a, b).has_value();
}

QPolynomial q_binomial(int top, int bottom, int step2, int cap)
{
    if (step2 <= 0)
        throw std::invalid_argument("q_binomial: step2 must be positive");
    if (bottom < 0 || top < 0 || bottom > top)
        return QPolynomial::zero(cap);
    thread_local std::map<std::tuple<int, int, int, int>, QPolynomial> cache;
    const int b = std::min(bottom, top - bottom);
    const auto key = std::make_tuple(top, b, step2, cap);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    const int order = cap == QPolynomial::kExact ? step2 * b * (top - b) + 1 : cap;
    QPolynomial p = QPolynomial::from_series(gaussian_binomial(top, b, step2, order), cap);
    cache.emplace(key, p);
    return p;
}

QPolynomial t_warnaar(int l, int m, int a, int b, int cap)
{
    if (l < 0 || m < 0)
        throw std::invalid_argument("t_warnaar: l and m must be nonnegative");
    QPolynomial sum = QPolynomial::zero(cap);
    for (int n = 0; n <= l; ++n) {
        if (!is_even(n + l - a))
            continue;
        if (cap != QPolynomial::kExact && n * n >= cap)
            break;
        QPolynomial t = q_binomial(m, n, 2, cap);
        if (t.is_zero())
            continue;
        t = t * q_binomial(m + b + (l - a - n) / 2, m + b, 2, cap);
        if (t.is_zero())
            continue;
        t = t * q_binomial(m - b + (l + a - n) / 2, m - b, 2, cap);
        sum += t.times_q(n * n);
    }
    return sum;
}

QPolynomial t_ab(int l, int a, int cap)
{
    if (l < 0)
        throw std::invalid_argument("t_ab: l must be nonnegative");
    QPolynomial sum = QPolynomial::zero(cap);
    for (int n = 0; n <= l; ++n) {
        if (!is_even(n + l - a))
            continue;
        if (cap != QPolynomial::kExact && n * n >= cap)
            break;
        const QPolynomial t = q_binomial(l, n, 2, cap) * q_binomial(l - n, (l - a - n) / 2, 2, cap);
        sum += t.times_q(n * n);
    }
    return sum;
}

QPolynomial u_of(int l, int a, int cap)
{
    return t_ab(l, a, cap) + t_ab(l, a + 1, cap);
}

QPolynomial u_tilde(int l, int m, int a, int b, int cap)
{
    return t_warnaar(l, m, a, b, cap) + t_warnaar(l, m, a + 1, b, cap);
}

namespace {

constexpr int kNoM = -1;

QPolynomial bounded_sum_side(int k, int l, int m, int cap)
{
    const bool finite_m = m != kNoM;
    QPolynomial sum = QPolynomial::zero(cap);
    if (l <= 0)
        return sum;  // the floored binomial needs sum N_i + s <= l - 1
    const int max_total = finite_m ? std::min(l, m) : l;
    for_each_multi_index(
        k, max_total,
        [&](const MultiIndex& v) {
            const int nk = v.n.back();
            const int total = [&] {
                int t = 0;
                for (int x : v.N)
                    t += x;
                return t;
            }();
            for (int s = 0; s <= nk; ++s) {
                const int e2 = 2 * (v.sum_squares() + s * s + 2 * v.N.back());
                if (cap != QPolynomial::kExact && e2 >= cap)
                    break;
                const int fl = floor_div(l - 1 - total - s, 2);
                QPolynomial t = q_binomial(nk + fl, nk, 8, cap) * q_binomial(nk, s, 4, cap);
                if (t.is_zero())
                    continue;
                if (finite_m)
                    t = t * q_binomial(l + m - v.N.front(), m - v.N.front(), 4, cap);
                int prefix = 0;
                for (std::size_t j = 0; j + 1 < v.n.size() && !t.is_zero(); ++j) {
                    prefix += v.N[j];
                    t = t * q_binomial(l - prefix + v.n[j], v.n[j], 4, cap);
                }
                sum += t.times_q(e2);
            }
        },
        [&](const MultiIndex& part) {
            return cap == QPolynomial::kExact || 2 * (part.sum_squares() + 2 * part.N.back()) < cap;
        });
    return sum;
}

struct JSide {
    QPolynomial value;
    int j_max = 0;
    bool closed = false;
};

JSide bounded_j_side(int k, int l, int m, int cap)
{
    const bool finite_m = m != kNoM;
    auto u = [&](int a, int b) { return (finite_m ? u_tilde(l, m, a, b, cap) : u_of(l, a, cap)).base_scaled(2); };
    JSide out{QPolynomial::zero(cap), 0, false};
    int zero_run = 0;
    const int limit = l + (finite_m ? m : 0) + 8;
    for (int J = 0; J <= limit; ++J) {
        bool any = false;
        for (int sign : {1, -1}) {
            if (J == 0 && sign < 0)
                continue;
            const int j = sign * J;
            const QPolynomial first = u(2 * (k + 2) * j + 1, 2 * j);
            const QPolynomial second = u(2 * (k + 2) * j + k + 1, 2 * j + 1);
            const int e_first = 2 * ((4 * k + 8) * j * j + 4 * j);
            const int e_second = 2 * ((4 * k + 8) * j * j + 4 * (k + 1) * j + k);
            if ((!first.is_zero() && e_first < 0) || (!second.is_zero() && e_second < 0))
                throw std::logic_error("bounded j-sum: negative power of q");
            if (!first.is_zero()) {
                out.value += first.times_q(e_first);
                any = true;
            }
            if (!second.is_zero()) {
                out.value = out.value - second.times_q(e_second);
                any = true;
            }
        }
        if (any) {
            out.j_max = J;
            zero_run = 0;
        } else if (++zero_run == 2) {
            out.closed = true;
            break;
        }
    }
    return out;
}

PolynomialIdentity bounded_identity(int k, int l, int m, int cap)
{
    if (k < 1 || l < 0 || (m < 0 && m != kNoM))
        throw std::invalid_argument("bounded identity: need k >= 1 and l, m >= 0");
    PolynomialIdentity r;
    r.lhs = bounded_sum_side(k, l, m, cap);
    JSide side = bounded_j_side(k, l, m, cap);
    r.rhs = side.value;
    r.j_max = side.j_max;
    r.j_range_closed = side.closed;
    r.mismatch = first_mismatch(r.rhs, r.lhs);
    return r;
}

}  // namespace

PolynomialIdentity doubly_bounded_identity(int k, int l, int m, int cap)
{
    if (m < 0)
        throw std::invalid_argument("doubly_bounded_identity: m must be nonnegative");
    return bounded_identity(k, l, m, cap);
}

PolynomialIdentity singly_bounded_identity(int k, int l, int cap)
{
    return bounded_identity(k, l, kNoM, cap);
}

std::optional<int> warnaar_limit(int m, int a, int b, int order2)
{
    if (m < 0)
        throw std::invalid_argument("warnaar_limit: m must be nonnegative");
    const TruncSeries target = poch_finite(FactorSpec{-1, 1, 0, 0, 2}, m, order2) *
                               reciprocal(poch_finite(FactorSpec{1, 2, 0, 0, 2}, 2 * m, order2)) *
                               gaussian_binomial(2 * m, m + b, 2, order2);
    return find_stabilization([&](int l) { return u_tilde(l, m, a, b, order2).series(); }, target, 0,
                              order2 + 2 * m + 8);
}

std::optional<int> andrews_baxter_limit(int l, int a, int b, int order2)
{
    if (l < 0)
        throw std::invalid_argument("andrews_baxter_limit: l must be nonnegative");
    const TruncSeries target =
        t_ab(l, a, order2).series() * reciprocal(poch_finite(FactorSpec{1, 2, 0, 0, 2}, l, order2));
    return find_stabilization([&](int m) { return t_warnaar(l, m, a, b, order2).series(); }, target, 0,
                              order2 + std::abs(b) + 8);
}

std::optional<int> doubly_bounded_l_limit(int k, int m, int order2)
{
    const int half = (order2 + 1) / 2;
    const TruncSeries target = finite_bailey_sides(m, k, half).rhs.base_scaled(2).truncated(order2);
    return find_stabilization([&](int l) { return bounded_j_side(k, l, m, order2).value.series(); }, target, 0,
                              order2 + 2 * m + 8);
}

}  // namespace gg
