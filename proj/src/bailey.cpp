#include "gg/bailey.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace gg {

namespace {

constexpr FactorSpec kQ{1, 2, 0, 0, 2};          // (q; q)
constexpr FactorSpec kMinusRootQ{-1, 1, 0, 0, 2};  // (-sqrt q; q)
constexpr FactorSpec kQ2{1, 4, 0, 0, 4};         // (q^2; q^2)
constexpr FactorSpec kQ4{1, 8, 0, 0, 8};         // (q^4; q^4)
constexpr FactorSpec kMinusQOdd{-1, 2, 0, 0, 4};   // (-q; q^2)

// Memoized finite products and their reciprocals at a fixed truncation.
class PochCache {
public:
    PochCache(FactorSpec f, int order2) : f_(f), order2_(order2) {}

    const TruncSeries& poch(int n)
    {
        auto it = poch_.find(n);
        if (it == poch_.end())
            it = poch_.emplace(n, poch_finite(f_, n, order2_)).first;
        return it->second;
    }

    const TruncSeries& inverse(int n)
    {
        auto it = inv_.find(n);
        if (it == inv_.end())
            it = inv_.emplace(n, reciprocal(poch(n))).first;
        return it->second;
    }

private:
    FactorSpec f_;
    int order2_;
    std::map<int, TruncSeries> poch_;
    std::map<int, TruncSeries> inv_;
};

void require_pair(const BaileyPair& p)
{
    if (p.n_max < 0 || p.alpha.size() != static_cast<std::size_t>(p.n_max) + 1 ||
        p.beta.size() != static_cast<std::size_t>(p.n_max) + 1)
        throw std::invalid_argument("BaileyPair: sequence lengths do not match n_max");
}

void multi_index_rec(int j, int tail, int max_total, MultiIndex& m, const std::function<void(const MultiIndex&)>& visit,
                     const std::function<bool(const MultiIndex&)>& keep)
{
    if (j < 0) {
        visit(m);
        return;
    }
    for (int v = 0; tail + v <= max_total; ++v) {
        m.n[static_cast<std::size_t>(j)] = v;
        m.N[static_cast<std::size_t>(j)] = tail + v;
        if (keep) {
            MultiIndex part;
            part.n.assign(m.n.begin() + j, m.n.end());
            part.N.assign(m.N.begin() + j, m.N.end());
            if (!keep(part))
                break;
        }
        multi_index_rec(j - 1, tail + v, max_total, m, visit, keep);
    }
}

}  // namespace

int MultiIndex::sum_squares() const
{
    int s = 0;
    for (int x : N)
        s += x * x;
    return s;
}

void for_each_multi_index(int k, int max_total, const std::function<void(const MultiIndex&)>& visit,
                          const std::function<bool(const MultiIndex&)>& keep)
{
    if (k < 1)
        throw std::invalid_argument("for_each_multi_index: k must be >= 1");
    if (max_total < 0)
        return;
    MultiIndex m;
    m.n.assign(static_cast<std::size_t>(k), 0);
    m.N.assign(static_cast<std::size_t>(k), 0);
    multi_index_rec(k - 1, 0, max_total, m, visit, keep);
}

BaileyPair seed_E4(int n_max, int order2)
{
    if (n_max < 0)
        throw std::invalid_argument("seed_E4: negative n_max");
    BaileyPair p{{}, {}, n_max, order2};
    PochCache q2(kQ2, order2);
    for (int n = 0; n <= n_max; ++n) {
        if (n == 0) {
            p.alpha.push_back(TruncSeries::one(order2));
        } else {
            const Integer sign(n % 2 ? -1 : 1);
            p.alpha.push_back(TruncSeries::monomial(sign, 2 * (n * n - n), 0, 0, order2) +
                              TruncSeries::monomial(sign, 2 * (n * n + n), 0, 0, order2));
        }
        p.beta.push_back(q2.inverse(n).times_monomial(2 * n));
    }
    return p;
}

std::optional<PairMismatch> pair_mismatch(const BaileyPair& p)
{
    require_pair(p);
    PochCache q(kQ, p.order2);
    for (int n = 0; n <= p.n_max; ++n) {
        TruncSeries sum(p.order2);
        for (int i = 0; i <= n; ++i)
            sum += p.alpha[static_cast<std::size_t>(i)] * q.inverse(n - i) * q.inverse(n + i);
        if (auto mm = first_mismatch(sum, p.beta[static_cast<std::size_t>(n)]))
            return PairMismatch{n, *mm};
    }
    return std::nullopt;
}

bool verify_pair(const BaileyPair& p)
{
    return !pair_mismatch(p).has_value();
}

BaileyPair step(const BaileyPair& p)
{
    return iterate_closed(p, 1);
}

BaileyPair iterate_closed(const BaileyPair& p, int k)
{
    require_pair(p);
    if (k < 1)
        throw std::invalid_argument("iterate_closed: k must be >= 1");
    const int order2 = p.order2;
    PochCache q(kQ, order2);
    PochCache root(kMinusRootQ, order2);
    BaileyPair out{{}, {}, p.n_max, order2};
    for (int n = 0; n <= p.n_max; ++n) {
        out.alpha.push_back(p.alpha[static_cast<std::size_t>(n)].times_monomial(k * n * n));
        TruncSeries sum(order2);
        for_each_multi_index(
            k, n,
            [&](const MultiIndex& m) {
                const int nk = m.n.back();
                TruncSeries t = (root.poch(nk) * p.beta[static_cast<std::size_t>(nk)]).times_monomial(m.sum_squares());
                t *= q.inverse(n - m.N.front());
                for (std::size_t i = 0; i + 1 < m.n.size(); ++i)
                    t *= q.inverse(m.n[i]);
                sum += t;
            },
            [&](const MultiIndex& part) { return part.sum_squares() < order2; });
        out.beta.push_back(sum * root.inverse(n));
    }
    return out;
}

TruncSeries gaussian_binomial(int top, int bottom, int step2, int order2)
{
    if (step2 <= 0)
        throw std::invalid_argument("gaussian_binomial: step2 must be positive");
    if (bottom < 0 || top < 0 || bottom > top)
        return TruncSeries(order2);
    const int b = std::min(bottom, top - bottom);
    const TruncSeries num = poch_finite(FactorSpec{1, step2 * (top - b + 1), 0, 0, step2}, b, order2);
    const TruncSeries den = poch_finite(FactorSpec{1, step2, 0, 0, step2}, b, order2);
    return num * reciprocal(den);
}

SeriesSides finite_bailey_sides(int n, int k, int order2)
{
    if (n < 0 || k < 1)
        throw std::invalid_argument("finite_bailey_sides: need n >= 0 and k >= 1");
    PochCache q(kQ, order2);
    PochCache root(kMinusRootQ, order2);
    PochCache q2(kQ2, order2);

    TruncSeries lhs(order2);
    for_each_multi_index(
        k, n,
        [&](const MultiIndex& m) {
            const int nk = m.n.back();
            TruncSeries t = root.poch(nk).times_monomial(m.sum_squares() + 2 * m.N.back());
            t *= q.inverse(n - m.N.front());
            for (std::size_t i = 0; i + 1 < m.n.size(); ++i)
                t *= q.inverse(m.n[i]);
            t *= q2.inverse(nk);
            lhs += t;
        },
        [&](const MultiIndex& part) { return part.sum_squares() + 2 * part.N.back() < order2; });

    TruncSeries jsum(order2);
    for (int j = -n; j <= n; ++j) {
        const int e = (k + 2) * j * j + 2 * j;
        TruncSeries t = gaussian_binomial(2 * n, n + j, 2, order2).times_monomial(e);
        jsum += (j % 2 == 0) ? t : -t;
    }
    const TruncSeries rhs = root.poch(n) * reciprocal(poch_finite(kQ, 2 * n, order2)) * jsum;
    return {lhs, rhs};
}

bool finite_bailey_identity(int n, int k, int order2)
{
    const SeriesSides s = finite_bailey_sides(n, k, order2);
    return s.lhs == s.rhs;
}

std::optional<int> binomial_limit_m(int m, int order2)
{
    const TruncSeries target = reciprocal(poch_finite(kQ, m, order2));
    return find_stabilization([&](int n) { return gaussian_binomial(n, m, 2, order2); }, target, m, m + order2 + 4);
}

std::optional<int> binomial_limit_centre(int j, int order2)
{
    const TruncSeries target = reciprocal(poch_infinite(kQ, order2));
    const int start = std::abs(j);
    return find_stabilization([&](int n) { return gaussian_binomial(2 * n, n + j, 2, order2); }, target, start,
                              start + order2 + 4);
}

TruncSeries hierarchy_sum(int k, int order2)
{
    if (k < 1)
        throw std::invalid_argument("hierarchy_sum: k must be >= 1");
    PochCache odd(kMinusQOdd, order2);
    PochCache q2(kQ2, order2);
    PochCache q4(kQ4, order2);
    const int max_total = static_cast<int>(std::sqrt(order2 / 2.0)) + 1;
    TruncSeries sum(order2);
    for_each_multi_index(
        k, max_total,
        [&](const MultiIndex& m) {
            const int nk = m.n.back();
            TruncSeries t = odd.poch(nk).times_monomial(2 * (m.sum_squares() + 2 * m.N.back()));
            for (std::size_t i = 0; i + 1 < m.n.size(); ++i)
                t *= q2.inverse(m.n[i]);
            t *= q4.inverse(nk);
            sum += t;
        },
        [&](const MultiIndex& part) { return 2 * (part.sum_squares() + 2 * part.N.back()) < order2; });
    return sum;
}

namespace {

TruncSeries theta_part(int k, int order2)
{
    const int step = 2 * (2 * k + 4);
    return poch_infinite(FactorSpec{1, step, 0, 0, step}, order2) * poch_infinite(FactorSpec{1, 2 * k, 0, 0, step}, order2) *
           poch_infinite(FactorSpec{1, 2 * (k + 4), 0, 0, step}, order2);
}

}  // namespace

TruncSeries hierarchy_product(int k, int order2)
{
    if (k < 1)
        throw std::invalid_argument("hierarchy_product: k must be >= 1");
    return poch_infinite(kMinusQOdd, order2) * reciprocal(poch_infinite(kQ2, order2)) * theta_part(k, order2);
}

TruncSeries hierarchy_product_alt(int k, int order2)
{
    if (k < 1)
        throw std::invalid_argument("hierarchy_product_alt: k must be >= 1");
    return poch_infinite(FactorSpec{1, 4, 0, 0, 8}, order2) * reciprocal(poch_infinite(kQ, order2)) * theta_part(k, order2);
}

TruncSeries normalized_finite_sum(int n, int k, int order2)
{
    const int half = (order2 + 1) / 2;
    const TruncSeries lhs = finite_bailey_sides(n, k, half).lhs.base_scaled(2).truncated(order2);
    return lhs * poch_infinite(kQ2, order2);
}

}  // namespace gg
