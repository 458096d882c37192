#ifndef GG_BAILEY_HPP
#define GG_BAILEY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "gg/series.hpp"

namespace gg {

/// Sequences alpha_n, beta_n (n = 0..n_max) of series sharing one truncation.
struct BaileyPair {
    std::vector<TruncSeries> alpha;
    std::vector<TruncSeries> beta;
    int n_max = 0;
    int order2 = 0;
};

/// (n_1, .., n_k) with the tail sums N_i = n_i + .. + n_k.
struct MultiIndex {
    std::vector<int> n;
    std::vector<int> N;

    [[nodiscard]] int sum_squares() const;
};

/// Visits every k-vector of nonnegative integers with N_1 <= max_total that
/// `keep` accepts. `keep` sees the tail built so far (n_j..n_k) and may prune;
/// it must be monotone (rejecting a tail rejects every extension of it).
void for_each_multi_index(int k, int max_total, const std::function<void(const MultiIndex&)>& visit,
                          const std::function<bool(const MultiIndex&)>& keep = {});

/// Slater's E(4): alpha_0 = 1, alpha_n = (-1)^n (q^(n^2-n) + q^(n^2+n)), beta_n = q^n/(q^2;q^2)_n.
BaileyPair seed_E4(int n_max, int order2);

struct PairMismatch {
    int n = 0;
    SeriesMismatch mismatch;
};

/// First n at which beta_n differs from sum_i alpha_i/((q)_{n-i}(q)_{n+i}).
std::optional<PairMismatch> pair_mismatch(const BaileyPair& p);
bool verify_pair(const BaileyPair& p);

/// alpha_n -> q^(n^2/2) alpha_n, beta_n -> sum_i (-sqrt q)_i q^(i^2/2) beta_i / ((q)_{n-i}(-sqrt q)_n).
BaileyPair step(const BaileyPair& p);
/// k applications of step in one multi-sum.
BaileyPair iterate_closed(const BaileyPair& p, int k);

struct SeriesSides {
    TruncSeries lhs;
    TruncSeries rhs;
};

/// The finite multi-sum of the iterated E(4) pair against its j-sum form,
/// (-sqrt q)_n/(q)_{2n} sum_{|j|<=n} (-1)^j q^((k+2)j^2/2 + j) [2n, n+j].
SeriesSides finite_bailey_sides(int n, int k, int order2);
bool finite_bailey_identity(int n, int k, int order2);

/// Gaussian binomial [top, bottom] in q^(step2/2), truncated; 0 outside 0 <= bottom <= top.
TruncSeries gaussian_binomial(int top, int bottom, int step2, int order2);

/// [n, m] -> 1/(q)_m as n grows; returns the first n past which it holds.
std::optional<int> binomial_limit_m(int m, int order2);
/// [2n, n+j] -> 1/(q)_inf as n grows.
std::optional<int> binomial_limit_centre(int j, int order2);

/// sum over k-vectors of q^(N_1^2+..+N_k^2+2N_k) (-q;q^2)_{n_k} / ((q^2;q^2)_{n_1}..(q^2;q^2)_{n_{k-1}}(q^4;q^4)_{n_k}).
TruncSeries hierarchy_sum(int k, int order2);
/// (-q;q^2)_inf/(q^2;q^2)_inf (q^(2k+4), q^k, q^(k+4); q^(2k+4))_inf.
TruncSeries hierarchy_product(int k, int order2);
/// (q^2;q^4)_inf/(q)_inf times the same theta product.
TruncSeries hierarchy_product_alt(int k, int order2);

/// (q^2;q^2)_inf times the finite multi-sum at q -> q^2, which approaches hierarchy_sum as n grows.
TruncSeries normalized_finite_sum(int n, int k, int order2);

}  // namespace gg

#endif
