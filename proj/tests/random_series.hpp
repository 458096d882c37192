#ifndef GG_TESTS_RANDOM_SERIES_HPP
#define GG_TESTS_RANDOM_SERIES_HPP

#include <random>
#include <vector>

#include "gg/series.hpp"

namespace gg::testing {

// small sparse series with mixed z/w degrees and coefficients in [-5, 5]
inline TruncSeries random_series(std::mt19937& rng, int order2, int terms = 8, int max_deg = 2)
{
    std::uniform_int_distribution<int> e2(0, order2 - 1);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> c(-5, 5);
    std::vector<Term> t;
    for (int i = 0; i < terms; ++i)
        t.push_back(Term{Exponent{e2(rng), deg(rng), deg(rng)}, Integer(c(rng))});
    return TruncSeries::from_terms(order2, std::move(t));
}

}  // namespace gg::testing

#endif
