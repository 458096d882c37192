#include "gg/series.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gg {

namespace {

// Dense accumulation is used when the exponent box is at most this many cells.
constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

bool exp_less(const Term& a, const Term& b)
{
    return a.exp < b.exp;
}

void require_order(int order2)
{
    if (order2 < 0)
        throw std::invalid_argument("TruncSeries: negative order2");
}

}  // namespace

TruncSeries::TruncSeries(int order2) : order2_(order2)
{
    require_order(order2);
}

TruncSeries TruncSeries::one(int order2)
{
    return monomial(Integer(1), 0, 0, 0, order2);
}

TruncSeries TruncSeries::monomial(const Integer& c, int e2, int dz, int dw, int order2)
{
    if (e2 < 0 || dz < 0 || dw < 0)
        throw std::invalid_argument("monomial: negative exponent");
    TruncSeries s(order2);
    if (!c.is_zero() && e2 < order2) {
        s.terms_.push_back(Term{Exponent{e2, dz, dw}, c});
        s.check_invariants();
    }
    return s;
}

TruncSeries TruncSeries::from_terms(int order2, std::vector<Term> terms)
{
    TruncSeries s(order2);
    std::erase_if(terms, [&](const Term& t) { return t.exp.e2 >= order2; });
    std::sort(terms.begin(), terms.end(), exp_less);
    for (auto& t : terms) {
        if (!s.terms_.empty() && s.terms_.back().exp == t.exp)
            s.terms_.back().coeff += t.coeff;
        else
            s.terms_.push_back(std::move(t));
    }
    std::erase_if(s.terms_, [](const Term& t) { return t.coeff.is_zero(); });
    s.check_invariants();
    return s;
}

void TruncSeries::check_invariants() const
{
    for (const auto& t : terms_) {
        if (t.exp.e2 < 0 || t.exp.dz < 0 || t.exp.dw < 0)
            throw std::domain_error("TruncSeries: negative exponent");
        if (t.exp.dz + t.exp.dw > order2_)
            throw std::logic_error("TruncSeries: z/w degree exceeds order2");
    }
}

bool TruncSeries::is_univariate() const noexcept
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp.dz == 0 && t.exp.dw == 0; });
}

int TruncSeries::max_dz() const noexcept
{
    int m = 0;
    for (const auto& t : terms_)
        m = std::max(m, t.exp.dz);
    return m;
}

int TruncSeries::max_dw() const noexcept
{
    int m = 0;
    for (const auto& t : terms_)
        m = std::max(m, t.exp.dw);
    return m;
}

Integer TruncSeries::coeff(const Exponent& e) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.exp < x; });
    if (it != terms_.end() && it->exp == e)
        return it->coeff;
    return Integer(0);
}

TruncSeries TruncSeries::truncated(int order2) const
{
    if (order2 > order2_)
        throw std::invalid_argument("truncated: cannot raise order2 of a truncated series");
    TruncSeries s(order2);
    for (const auto& t : terms_) {
        if (t.exp.e2 >= order2)
            break;
        s.terms_.push_back(t);
    }
    return s;
}

TruncSeries TruncSeries::shifted(int de2, int ddz, int ddw) const
{
    TruncSeries s(order2_ + de2 < 0 ? 0 : order2_ + de2);
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        s.terms_.push_back(Term{Exponent{t.exp.e2 + de2, t.exp.dz + ddz, t.exp.dw + ddw}, t.coeff});
    s.check_invariants();
    return s;
}

TruncSeries TruncSeries::times_monomial(int de2, int ddz, int ddw) const
{
    if (de2 < 0 || ddz < 0 || ddw < 0)
        throw std::invalid_argument("times_monomial: negative exponent");
    TruncSeries s(order2_);
    for (const auto& t : terms_) {
        if (t.exp.e2 + de2 >= order2_)
            break;
        s.terms_.push_back(Term{Exponent{t.exp.e2 + de2, t.exp.dz + ddz, t.exp.dw + ddw}, t.coeff});
    }
    s.check_invariants();
    return s;
}

TruncSeries TruncSeries::base_scaled(int factor) const
{
    if (factor < 1)
        throw std::invalid_argument("base_scaled: factor must be positive");
    TruncSeries s(order2_ * factor);
    s.terms_ = terms_;
    for (auto& t : s.terms_)
        t.exp.e2 *= factor;
    return s;
}

namespace {

Integer ipow(int base, int e)
{
    Integer r(1);
    for (int i = 0; i < e; ++i)
        r *= Integer(base);
    return r;
}

}  // namespace

TruncSeries TruncSeries::evaluate_z(int value) const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(Term{Exponent{t.exp.e2, 0, t.exp.dw}, t.coeff * ipow(value, t.exp.dz)});
    return from_terms(order2_, std::move(out));
}

TruncSeries TruncSeries::evaluate_w(int value) const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(Term{Exponent{t.exp.e2, t.exp.dz, 0}, t.coeff * ipow(value, t.exp.dw)});
    return from_terms(order2_, std::move(out));
}

TruncSeries TruncSeries::w_slice(int dw) const
{
    TruncSeries s(order2_);
    for (const auto& t : terms_)
        if (t.exp.dw == dw)
            s.terms_.push_back(Term{Exponent{t.exp.e2, t.exp.dz, 0}, t.coeff});
    return s;
}

TruncSeries TruncSeries::with_coeff_added(const Exponent& e, const Integer& delta) const
{
    std::vector<Term> out(terms_.begin(), terms_.end());
    out.push_back(Term{e, delta});
    return from_terms(order2_, std::move(out));
}

std::string TruncSeries::to_string() const
{
    if (terms_.empty())
        return "0 + O(q^" + std::to_string(order2_) + "/2)";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        const bool neg = t.coeff.sign() < 0;
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        first = false;
        const Integer mag = neg ? -t.coeff : t.coeff;
        const bool bare = t.exp == Exponent{};
        if (!(mag == Integer(1)) || bare)
            os << mag;
        bool sep = !(mag == Integer(1)) || bare;
        auto emit = [&](const char* v, int d, bool half) {
            if (d == 0)
                return;
            if (sep)
                os << "*";
            sep = true;
            os << v;
            if (half) {
                if (d % 2 == 0) {
                    if (d != 2)
                        os << "^" << d / 2;
                } else {
                    os << "^(" << d << "/2)";
                }
            } else if (d != 1) {
                os << "^" << d;
            }
        };
        emit("z", t.exp.dz, false);
        emit("w", t.exp.dw, false);
        emit("q", t.exp.e2, true);
    }
    os << " + O(q^" << order2_ << "/2)";
    return os.str();
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
{
    const int order = std::min(a.order2_, b.order2_);
    TruncSeries r(order);
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    auto ie = a.terms_.end();
    auto je = b.terms_.end();
    while ((i != ie && i->exp.e2 < order) || (j != je && j->exp.e2 < order)) {
        const bool take_i = i != ie && i->exp.e2 < order;
        const bool take_j = j != je && j->exp.e2 < order;
        if (take_i && (!take_j || i->exp < j->exp)) {
            r.terms_.push_back(*i++);
        } else if (take_j && (!take_i || j->exp < i->exp)) {
            r.terms_.push_back(*j++);
        } else {
            Integer c = i->coeff + j->coeff;
            if (!c.is_zero())
                r.terms_.push_back(Term{i->exp, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

TruncSeries operator-(const TruncSeries& a)
{
    TruncSeries r = a;
    for (auto& t : r.terms_)
        t.coeff.negate();
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b)
{
    return a + (-b);
}

TruncSeries multiply_to_order(const TruncSeries& a, const TruncSeries& b, int order2)
{
    TruncSeries r(order2);
    if (a.terms_.empty() || b.terms_.empty())
        return r;

    const int max_e = std::min(order2 - 1, a.terms_.back().exp.e2 + b.terms_.back().exp.e2);
    if (max_e < a.terms_.front().exp.e2 + b.terms_.front().exp.e2)
        return r;
    const std::size_t span_e = static_cast<std::size_t>(max_e) + 1;
    const std::size_t span_z = static_cast<std::size_t>(a.max_dz() + b.max_dz()) + 1;
    const std::size_t span_w = static_cast<std::size_t>(a.max_dw() + b.max_dw()) + 1;

    if (span_e * span_z * span_w <= kDenseLimit) {
        std::vector<Integer> acc(span_e * span_z * span_w);
        for (const auto& ta : a.terms_) {
            if (ta.exp.e2 > max_e)
                break;
            for (const auto& tb : b.terms_) {
                const int e = ta.exp.e2 + tb.exp.e2;
                if (e > max_e)
                    break;
                const std::size_t idx =
                    (static_cast<std::size_t>(e) * span_z + static_cast<std::size_t>(ta.exp.dz + tb.exp.dz)) * span_w +
                    static_cast<std::size_t>(ta.exp.dw + tb.exp.dw);
                acc[idx].add_product(ta.coeff, tb.coeff);
            }
        }
        for (std::size_t idx = 0; idx < acc.size(); ++idx) {
            if (acc[idx].is_zero())
                continue;
            const int dw = static_cast<int>(idx % span_w);
            const int dz = static_cast<int>((idx / span_w) % span_z);
            const int e = static_cast<int>(idx / (span_w * span_z));
            r.terms_.push_back(Term{Exponent{e, dz, dw}, std::move(acc[idx])});
        }
    } else {
        std::map<Exponent, Integer> acc;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                const int e = ta.exp.e2 + tb.exp.e2;
                if (e > max_e)
                    break;
                acc[Exponent{e, ta.exp.dz + tb.exp.dz, ta.exp.dw + tb.exp.dw}].add_product(ta.coeff, tb.coeff);
            }
        }
        for (auto& [e, c] : acc)
            if (!c.is_zero())
                r.terms_.push_back(Term{e, std::move(c)});
    }
    r.check_invariants();
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
{
    return multiply_to_order(a, b, std::min(a.order2_, b.order2_));
}

bool operator==(const TruncSeries& a, const TruncSeries& b)
{
    return !first_mismatch(a, b).has_value();
}

TruncSeries monomial(const Integer& c, int e2, int dz, int dw, int order2)
{
    return TruncSeries::monomial(c, e2, dz, dw, order2);
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b)
{
    return a + b;
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b)
{
    return a * b;
}

TruncSeries negate(const TruncSeries& a)
{
    return -a;
}

Integer coeff(const TruncSeries& a, int e2, int dz, int dw)
{
    return a.coeff(e2, dz, dw);
}

bool equal(const TruncSeries& a, const TruncSeries& b)
{
    return a == b;
}

std::optional<SeriesMismatch> first_mismatch(const TruncSeries& expected, const TruncSeries& got)
{
    const int order = std::min(expected.order2(), got.order2());
    auto i = expected.terms().begin();
    auto j = got.terms().begin();
    const auto ie = expected.terms().end();
    const auto je = got.terms().end();
    for (;;) {
        const bool has_i = i != ie && i->exp.e2 < order;
        const bool has_j = j != je && j->exp.e2 < order;
        if (!has_i && !has_j)
            return std::nullopt;
        if (has_i && (!has_j || i->exp < j->exp))
            return SeriesMismatch{i->exp, i->coeff, Integer(0)};
        if (has_j && (!has_i || j->exp < i->exp))
            return SeriesMismatch{j->exp, Integer(0), j->coeff};
        if (!(i->coeff == j->coeff))
            return SeriesMismatch{i->exp, i->coeff, j->coeff};
        ++i;
        ++j;
    }
}

TruncSeries poch_finite(const FactorSpec& f, int n, int order2)
{
    if (n < 0)
        throw std::invalid_argument("poch_finite: negative length");
    if (f.step2 <= 0)
        throw std::invalid_argument("poch_finite: step2 must be positive");
    if (f.e2 < 0 || f.dz < 0 || f.dw < 0)
        throw std::invalid_argument("poch_finite: negative exponent in factor");
    TruncSeries r = TruncSeries::one(order2);
    for (int j = 0; j < n; ++j) {
        const int e = f.e2 + j * f.step2;
        if (e >= order2)
            break;  // remaining factors are 1 modulo truncation
        const TruncSeries factor = TruncSeries::one(order2) + TruncSeries::monomial(Integer(-f.sign), e, f.dz, f.dw, order2);
        r = r * factor;
        if (r.is_zero())
            break;
    }
    return r;
}

TruncSeries poch_infinite(const FactorSpec& f, int order2)
{
    if (f.step2 <= 0)
        throw std::invalid_argument("poch_infinite: step2 must be positive");
    if (f.e2 < 0 || (f.e2 == 0 && f.dz == 0 && f.dw == 0))
        throw std::invalid_argument("poch_infinite: product does not converge term by term");
    const int count = f.e2 >= order2 ? 0 : (order2 - f.e2 + f.step2 - 1) / f.step2;
    return poch_finite(f, count, order2);
}

TruncSeries reciprocal(const TruncSeries& s)
{
    const int order = s.order2();
    if (order == 0)
        return TruncSeries(0);
    const auto terms = s.terms();
    if (terms.empty() || terms.front().exp != Exponent{})
        throw std::domain_error("reciprocal: constant term is not a unit");
    const Integer& c0 = terms.front().coeff;
    if (!(c0 == Integer(1) || c0 == Integer(-1)))
        throw std::domain_error("reciprocal: constant term is not a unit");
    if (terms.size() > 1 && terms[1].exp.e2 == 0)
        throw std::domain_error("reciprocal: z/w terms at q^0");

    if (s.is_univariate()) {
        std::vector<Integer> r(static_cast<std::size_t>(order));
        r[0] = c0;
        for (int e = 1; e < order; ++e) {
            Integer acc;
            for (std::size_t k = 1; k < terms.size(); ++k) {
                const int te = terms[k].exp.e2;
                if (te > e)
                    break;
                acc.add_product(terms[k].coeff, r[static_cast<std::size_t>(e - te)]);
            }
            if (!acc.is_zero())
                r[static_cast<std::size_t>(e)] = c0 == Integer(1) ? -acc : acc;
        }
        std::vector<Term> out;
        for (int e = 0; e < order; ++e)
            if (!r[static_cast<std::size_t>(e)].is_zero())
                out.push_back(Term{Exponent{e, 0, 0}, std::move(r[static_cast<std::size_t>(e)])});
        return TruncSeries::from_terms(order, std::move(out));
    }

    // Level-by-level in e2: r_e = -c0 * sum_{t in s, 0 < e_t <= e} c_t * r_{e - e_t}.
    using Level = std::map<std::pair<int, int>, Integer>;
    std::vector<Level> r(static_cast<std::size_t>(order));
    r[0][{0, 0}] = c0;
    for (int e = 1; e < order; ++e) {
        Level acc;
        for (std::size_t k = 1; k < terms.size(); ++k) {
            const auto& t = terms[k];
            if (t.exp.e2 > e)
                break;
            for (const auto& [zw, c] : r[static_cast<std::size_t>(e - t.exp.e2)])
                acc[{zw.first + t.exp.dz, zw.second + t.exp.dw}].add_product(t.coeff, c);
        }
        Level& out = r[static_cast<std::size_t>(e)];
        for (auto& [zw, c] : acc) {
            if (c.is_zero())
                continue;
            out[zw] = c0 == Integer(1) ? -c : c;
        }
    }
    std::vector<Term> out;
    for (int e = 0; e < order; ++e)
        for (auto& [zw, c] : r[static_cast<std::size_t>(e)])
            out.push_back(Term{Exponent{e, zw.first, zw.second}, std::move(c)});
    return TruncSeries::from_terms(order, std::move(out));
}

namespace {

// Multiplies acc by prod_j (1 + s q^(x_j/2)) for x_j = first + 4j, rewriting
// factors with x_j < 0 as s q^(x_j/2) (1 + s q^(-x_j/2)). Returns the total
// half-exponent that had to be pulled out (sum of -x_j over negative x_j).
int multiply_normalized_theta_factors(TruncSeries& acc, int sign, int first, int order2)
{
    int pulled = 0;
    for (int x = first; x < order2; x += 4) {
        if (x < 0) {
            pulled += -x;
            acc = acc * (TruncSeries::one(order2) + TruncSeries::monomial(Integer(sign), -x, 0, 0, order2));
            if (sign < 0)
                acc = -acc;
        } else if (x == 0) {
            acc = acc * TruncSeries::monomial(Integer(1 + sign), 0, 0, 0, order2);
        } else {
            acc = acc * (TruncSeries::one(order2) + TruncSeries::monomial(Integer(sign), x, 0, 0, order2));
        }
    }
    return pulled;
}

}  // namespace

ThetaSides jacobi_sides(const ZSpec& z, int order2)
{
    if (z.dz != 0 || z.dw != 0)
        throw std::invalid_argument("jacobi: z must be specialized to +-q^(e/2)");
    if (z.sign != 1 && z.sign != -1)
        throw std::invalid_argument("jacobi: sign must be +-1");

    // Half-unit exponent of q^(n^2) z^n is 2n^2 + n*e2, minimized near n = -e2/4.
    auto exponent = [&](long n) { return 2 * n * n + n * z.e2; };
    long nmin = -static_cast<long>(z.e2) / 4;
    long lowest = std::numeric_limits<long>::max();
    for (long n = nmin - 2; n <= nmin + 2; ++n)
        lowest = std::min(lowest, exponent(n));
    const int shift2 = lowest < 0 ? static_cast<int>(-lowest) : 0;

    std::vector<Term> sum_terms;
    for (long n = nmin; exponent(n) + shift2 < order2 || n <= nmin + 2; ++n)
        if (exponent(n) + shift2 < order2)
            sum_terms.push_back(Term{Exponent{static_cast<int>(exponent(n) + shift2), 0, 0}, Integer(n % 2 == 0 ? 1 : z.sign)});
    for (long n = nmin - 1; exponent(n) + shift2 < order2 || n >= nmin - 2; --n)
        if (exponent(n) + shift2 < order2)
            sum_terms.push_back(Term{Exponent{static_cast<int>(exponent(n) + shift2), 0, 0}, Integer(n % 2 == 0 ? 1 : z.sign)});

    // (q^2;q^2)_inf (-qz;q^2)_inf (-q/z;q^2)_inf, factors in half units.
    TruncSeries prod = poch_infinite(FactorSpec{1, 4, 0, 0, 4}, order2);
    int pulled = multiply_normalized_theta_factors(prod, z.sign, 2 + z.e2, order2);
    pulled += multiply_normalized_theta_factors(prod, z.sign, 2 - z.e2, order2);
    if (pulled > shift2)
        throw std::logic_error("jacobi: product normalization exceeds sum normalization");
    // The rewritten factors dropped q^(-pulled/2); restore the difference.
    prod = prod.times_monomial(shift2 - pulled);

    return ThetaSides{shift2, TruncSeries::from_terms(order2, std::move(sum_terms)), std::move(prod)};
}

TruncSeries jacobi_theta(const ZSpec& z, int order2)
{
    ThetaSides sides = jacobi_sides(z, order2);
    if (sides.shift2 != 0)
        throw std::domain_error("jacobi_theta: specialization produces negative q-exponents");
    return std::move(sides.sum);
}

bool jacobi_check(const ZSpec& z, int order2)
{
    const ThetaSides sides = jacobi_sides(z, order2);
    return sides.sum == sides.product;
}

}  // namespace gg

namespace gg {

std::optional<int> find_stabilization(const std::function<TruncSeries(int)>& f, const TruncSeries& target, int start,
                                      int bound)
{
    bool previous = false;
    for (int i = start; i <= bound; ++i) {
        const bool hit = f(i) == target;
        if (hit && previous)
            return i - 1;
        previous = hit;
    }
    return std::nullopt;
}

}  // namespace gg
