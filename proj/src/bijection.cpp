#include "gg/bijection.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gg {

namespace {

int mod4(int a)
{
    return ((a % 4) + 4) % 4;
}

std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

bool all_distinct_odd(const Partition& p)
{
    return p.has_distinct_parts() && std::all_of(p.parts().begin(), p.parts().end(), [](int x) { return x % 2 == 1; });
}

}  // namespace

Partition euler_subtract(const Partition& p)
{
    if (!has_gaps_at_least_two(p))
        throw std::invalid_argument("euler_subtract: gaps must be >= 2: " + p.to_string());
    std::vector<int> out(p.vec());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] -= 2 * static_cast<int>(k);
    return Partition(std::move(out));
}

Partition euler_add(const Partition& pstar)
{
    std::vector<int> out(pstar.vec());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += 2 * static_cast<int>(k);
    return Partition(std::move(out));
}

bool is_member_S(const Partition& p)
{
    return is_gollnitz_gordon(p) && satisfies_parity_condition(WeightVariant::S, p);
}

MarkedPartition identify(const Partition& p)
{
    if (!is_member_S(p))
        throw std::invalid_argument("identify: not a member of S: " + p.to_string());
    MarkedPartition m{p, {}};
    for (const auto& c : chains(p))
        if (chain_is_weighted(WeightVariant::S, p, c))
            m.marks.push_back(c.least());
    return m;
}

bool is_valid_pi2(const Partition& pi2)
{
    const auto parts = pi2.parts();
    int odd_below = 0;
    int last_odd = -1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const int x = parts[i];
        if (i > 0 && x - parts[i - 1] < 4)
            return false;
        if (x % 2 == 0) {
            if (mod4(x - 2 * odd_below) != 0)
                return false;
        } else {
            if (x < 5 || (last_odd >= 0 && x - last_odd < 6))
                return false;
            if (mod4(x - 1 - 2 * odd_below) != 0)
                return false;
            last_odd = x;
            ++odd_below;
        }
    }
    return true;
}

bool is_valid_split_pair(const SplitPair& sp)
{
    if (!all_distinct_odd(sp.pi1))
        return false;
    if (!sp.pi1.empty() && sp.pi1.least() <= 2 * sp.pi2.size())
        return false;
    return is_valid_pi2(sp.pi2);
}

bool is_valid_triple(const TriplePartition& t)
{
    const int n3 = t.pi3.size();
    if (!t.pi3.has_distinct_parts() ||
        !std::all_of(t.pi3.parts().begin(), t.pi3.parts().end(), [](int x) { return x % 4 == 0; }))
        return false;
    if (!all_distinct_odd(t.pi4) || (!t.pi4.empty() && t.pi4.largest() >= 2 * n3))
        return false;
    if (!all_distinct_odd(t.pi1) || (!t.pi1.empty() && t.pi1.least() <= 2 * n3))
        return false;
    return true;
}

namespace {

struct Piles {
    Partition pstar;
    std::vector<int> pile1;
    std::vector<int> pile2;
};

Piles split_into_piles(const MarkedPartition& m, const ChoiceVector& c)
{
    if (c.bits.size() != m.marks.size())
        throw std::invalid_argument("redistribute: choice vector length does not match the marks");
    Piles out{euler_subtract(m.base), {}, {}};
    const auto parts = m.base.parts();
    const auto star = out.pstar.parts();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const int b = parts[k];
        bool second = b % 2 == 0;
        if (!second) {
            auto it = std::find(m.marks.begin(), m.marks.end(), b);
            if (it != m.marks.end())
                second = c.bits[static_cast<std::size_t>(it - m.marks.begin())];
        }
        (second ? out.pile2 : out.pile1).push_back(star[k]);
    }
    return out;
}

SplitPair restore_staircases(const std::vector<int>& pile1, const std::vector<int>& pile2)
{
    const int n2 = static_cast<int>(pile2.size());
    std::vector<int> pi2(pile2);
    for (std::size_t i = 0; i < pi2.size(); ++i)
        pi2[i] += 2 * static_cast<int>(i);
    std::vector<int> pi1(pile1);
    for (std::size_t i = 0; i < pi1.size(); ++i)
        pi1[i] += 2 * n2 + 2 * static_cast<int>(i);
    return SplitPair{Partition(std::move(pi1)), Partition(std::move(pi2))};
}

}  // namespace

SplitPair redistribute(const MarkedPartition& m, const ChoiceVector& c)
{
    const Piles piles = split_into_piles(m, c);
    SplitPair sp = restore_staircases(piles.pile1, piles.pile2);
    if (!is_valid_split_pair(sp))
        throw std::logic_error("redistribute: produced an invalid pair for " + m.base.to_string());
    if (sp.pi1.sum() + sp.pi2.sum() != m.base.sum())
        throw std::logic_error("redistribute: sum not preserved");
    return sp;
}

std::pair<MarkedPartition, ChoiceVector> redistribute_inverse(const SplitPair& sp)
{
    if (!is_valid_split_pair(sp))
        throw std::invalid_argument("redistribute_inverse: malformed pair " + sp.pi1.to_string() + " " + sp.pi2.to_string());
    const int n2 = sp.pi2.size();
    std::vector<int> s1(sp.pi1.vec());
    for (std::size_t i = 0; i < s1.size(); ++i)
        s1[i] -= 2 * n2 + 2 * static_cast<int>(i);
    std::vector<int> s2(sp.pi2.vec());
    for (std::size_t i = 0; i < s2.size(); ++i)
        s2[i] -= 2 * static_cast<int>(i);

    // On a tie the second-pile entry is the head of a chain, so it goes first.
    std::vector<int> pstar;
    std::vector<bool> from_second;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < s1.size() || j < s2.size()) {
        if (j < s2.size() && (i == s1.size() || s2[j] <= s1[i])) {
            pstar.push_back(s2[j++]);
            from_second.push_back(true);
        } else {
            pstar.push_back(s1[i++]);
            from_second.push_back(false);
        }
    }
    for (int x : pstar)
        if (x <= 0)
            throw std::invalid_argument("redistribute_inverse: pair does not come from a partition");
    const Partition pi = euler_add(Partition(pstar));
    if (!is_member_S(pi))
        throw std::invalid_argument("redistribute_inverse: preimage " + pi.to_string() + " is not in S");
    MarkedPartition m = identify(pi);
    ChoiceVector c{std::vector<bool>(m.marks.size(), false)};
    const auto parts = pi.parts();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k] % 2 == 0 || !from_second[k])
            continue;
        auto it = std::find(m.marks.begin(), m.marks.end(), parts[k]);
        if (it == m.marks.end())
            throw std::invalid_argument("redistribute_inverse: odd part of pi2 is not an identified part");
        c.bits[static_cast<std::size_t>(it - m.marks.begin())] = true;
    }
    return {std::move(m), std::move(c)};
}

namespace {

// Row lengths (ascending part order): (3 + f + 2t(f))/4 for odd f, (e + 2t(e))/4 for even e.
std::vector<int> row_lengths(const Partition& pi2)
{
    std::vector<int> lengths;
    int odd_below = 0;
    for (int x : pi2.parts()) {
        const int numer = x % 2 ? 3 + x + 2 * odd_below : x + 2 * odd_below;
        if (numer % 4 != 0)
            throw std::invalid_argument("ferrers: row length is not an integer for part " + std::to_string(x) +
                                        " of " + pi2.to_string());
        lengths.push_back(numer / 4);
        if (x % 2)
            ++odd_below;
    }
    return lengths;
}

}  // namespace

FerrersGraph build_ferrers_graph(const Partition& pi2)
{
    if (!is_valid_pi2(pi2))
        throw std::invalid_argument("build_ferrers_graph: invalid pi2 " + pi2.to_string());
    const auto parts = pi2.parts();
    const std::vector<int> lengths = row_lengths(pi2);
    const std::size_t n = parts.size();

    // Work in ascending order, flip to "largest first" at the end.
    FerrersGraph rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].assign(static_cast<std::size_t>(lengths[i]), 4);
        if (parts[i] % 2)
            rows[i].back() = 1;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (parts[j] % 2 == 0)
            continue;
        const auto col = static_cast<std::size_t>(lengths[j] - 1);
        for (std::size_t i = j + 1; i < n; ++i) {
            if (rows[i].size() <= col || rows[i][col] != 4)
                throw std::logic_error("build_ferrers_graph: column above a 1 is not available");
            rows[i][col] = 2;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        int sum = 0;
        for (int w : rows[i])
            sum += w;
        if (sum != parts[i])
            throw std::logic_error("build_ferrers_graph: row weights do not reproduce the part");
    }
    std::reverse(rows.begin(), rows.end());
    return rows;
}

std::pair<Partition, Partition> ferrers_split(const Partition& pi2)
{
    FerrersGraph graph = build_ferrers_graph(pi2);
    std::reverse(graph.begin(), graph.end());  // ascending again
    const std::size_t n = graph.size();

    std::vector<std::size_t> extracted;
    std::vector<int> pi4;
    for (std::size_t j = 0; j < n; ++j) {
        if (graph[j].back() != 1)
            continue;
        const std::size_t col = graph[j].size() - 1;
        extracted.push_back(col);
        int column_sum = 0;
        for (std::size_t i = j; i < n; ++i)
            column_sum += graph[i][col];
        pi4.push_back(column_sum);
    }
    std::vector<int> pi3;
    for (const auto& row : graph) {
        int remaining = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::find(extracted.begin(), extracted.end(), c) != extracted.end())
                continue;
            if (row[c] != 4)
                throw std::logic_error("ferrers_split: remainder is not 4-modular");
            remaining += 4;
        }
        pi3.push_back(remaining);
    }
    return {Partition::from_unsorted(std::move(pi3)), Partition::from_unsorted(std::move(pi4))};
}

std::pair<Partition, Partition> ferrers_split_closed_form(const Partition& pi2)
{
    const auto parts = pi2.parts();
    const std::vector<int> lengths = row_lengths(pi2);
    const int n = static_cast<int>(parts.size());
    std::vector<int> pi3;
    std::vector<int> pi4;
    int odd_upto = 0;
    for (int i = 0; i < n; ++i) {
        const bool odd = parts[static_cast<std::size_t>(i)] % 2 == 1;
        if (odd) {
            ++odd_upto;
            pi4.push_back(2 * (n - 1 - i) + 1);
        }
        pi3.push_back(4 * (lengths[static_cast<std::size_t>(i)] - odd_upto));
    }
    return {Partition::from_unsorted(std::move(pi3)), Partition::from_unsorted(std::move(pi4))};
}

Partition ferrers_merge(const Partition& pi3, const Partition& pi4)
{
    const int n = pi3.size();
    if (!pi3.has_distinct_parts() || !std::all_of(pi3.parts().begin(), pi3.parts().end(), [](int x) { return x % 4 == 0; }))
        throw std::invalid_argument("ferrers_merge: pi3 must have distinct multiples of 4");
    if (!all_distinct_odd(pi4) || (!pi4.empty() && pi4.largest() >= 2 * n))
        throw std::invalid_argument("ferrers_merge: pi4 must have distinct odd parts below 2 nu(pi3)");

    // A pi4 part 2a + 1 is the column under the odd row with a rows above it.
    std::vector<bool> odd_row(static_cast<std::size_t>(n), false);
    for (int x : pi4.parts())
        odd_row[static_cast<std::size_t>(n - 1 - (x - 1) / 2)] = true;

    std::vector<int> parts;
    int odd_upto = 0;
    int odd_below = 0;
    for (int i = 0; i < n; ++i) {
        const bool odd = odd_row[static_cast<std::size_t>(i)];
        if (odd)
            ++odd_upto;
        const int length = pi3.parts()[static_cast<std::size_t>(i)] / 4 + odd_upto;
        // 4 on every node, 2 on the columns of the odd rows below, 1 at the end of an odd row.
        parts.push_back(odd ? 4 * (length - 1) - 2 * odd_below + 1 : 4 * length - 2 * odd_below);
        if (odd)
            ++odd_below;
    }
    Partition pi2(std::move(parts));
    if (!is_valid_pi2(pi2))
        throw std::logic_error("ferrers_merge: produced an invalid pi2 " + pi2.to_string());
    return pi2;
}

TriplePartition triple_map(const Partition& p, const ChoiceVector& c)
{
    const SplitPair sp = redistribute(identify(p), c);
    auto [pi3, pi4] = ferrers_split(sp.pi2);
    TriplePartition t{sp.pi1, std::move(pi3), std::move(pi4)};
    if (!is_valid_triple(t))
        throw std::logic_error("triple_map: produced an invalid triple");
    return t;
}

std::pair<Partition, ChoiceVector> triple_inverse(const TriplePartition& t)
{
    if (!is_valid_triple(t))
        throw std::invalid_argument("triple_inverse: invalid triple");
    const Partition pi2 = ferrers_merge(t.pi3, t.pi4);
    auto [m, c] = redistribute_inverse(SplitPair{t.pi1, pi2});
    return {std::move(m.base), std::move(c)};
}

std::vector<ChoiceVector> all_choices(int count)
{
    std::vector<ChoiceVector> out;
    const unsigned long total = 1UL << count;
    for (unsigned long mask = 0; mask < total; ++mask) {
        ChoiceVector c{std::vector<bool>(static_cast<std::size_t>(count))};
        for (int b = 0; b < count; ++b)
            c.bits[static_cast<std::size_t>(b)] = ((mask >> b) & 1UL) != 0;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Partition> enumerate_members_S(int n)
{
    return enumerate(n, weighted_family_filter(WeightVariant::S));
}

namespace {

PartitionFilter pi2_filter()
{
    PartitionFilter f;
    f.distinct = true;
    f.extend = [](std::span<const int> prefix, int next) {
        std::vector<int> trial(prefix.begin(), prefix.end());
        trial.push_back(next);
        return is_valid_pi2(Partition(std::move(trial)));
    };
    return f;
}

PartitionFilter distinct_odd_filter(int above, int below)
{
    PartitionFilter f;
    f.distinct = true;
    f.min_part = above + 1;
    f.extend = [below](std::span<const int>, int next) { return next % 2 == 1 && (below <= 0 || next < below); };
    return f;
}

}  // namespace

std::vector<SplitPair> enumerate_split_pairs(int n)
{
    std::vector<SplitPair> out;
    const PartitionFilter f2 = pi2_filter();
    for (int m = 0; m <= n; ++m) {
        for (const auto& pi2 : enumerate(m, f2)) {
            for (const auto& pi1 : enumerate(n - m, distinct_odd_filter(2 * pi2.size(), 0)))
                out.push_back(SplitPair{pi1, pi2});
        }
    }
    return out;
}

std::vector<TriplePartition> enumerate_triples(int n)
{
    std::vector<TriplePartition> out;
    PartitionFilter f3;
    f3.distinct = true;
    f3.extend = [](std::span<const int>, int next) { return next % 4 == 0; };
    for (int a = 0; a <= n; a += 4) {
        for (const auto& pi3 : enumerate(a, f3)) {
            const int bound = 2 * pi3.size();
            for (int b = 0; a + b <= n; ++b) {
                // pi4 parts lie in [1, bound); an empty pi3 forces an empty pi4.
                if (bound == 0 && b > 0)
                    break;
                PartitionFilter f4 = distinct_odd_filter(0, bound);
                for (const auto& pi4 : enumerate(b, f4)) {
                    for (const auto& pi1 : enumerate(n - a - b, distinct_odd_filter(bound, 0)))
                        out.push_back(TriplePartition{pi1, pi3, pi4});
                }
            }
        }
    }
    return out;
}

BijectionTrace trace_bijection(const Partition& p, const ChoiceVector& c)
{
    const MarkedPartition m = identify(p);
    const Piles piles = split_into_piles(m, c);
    BijectionTrace t;
    t.pi = p;
    t.pstar = piles.pstar;
    t.marks = m.marks;
    t.choice = c;
    t.pile1 = piles.pile1;
    t.pile2 = piles.pile2;
    t.split = redistribute(m, c);
    t.graph = build_ferrers_graph(t.split.pi2);
    auto [pi3, pi4] = ferrers_split(t.split.pi2);
    t.triple = TriplePartition{t.split.pi1, std::move(pi3), std::move(pi4)};
    return t;
}

std::string format_trace(const BijectionTrace& t)
{
    std::ostringstream os;
    std::string bits;
    for (bool b : t.choice.bits)
        bits += b ? '1' : '0';
    os << "pi       " << t.pi.to_string() << "\n";
    os << "pi*      " << t.pstar.to_string() << "\n";
    os << "marks    (" << join(t.marks) << ")\n";
    os << "choice   [" << bits << "]\n";
    os << "pile1    (" << join(t.pile1) << ")\n";
    os << "pile2    (" << join(t.pile2) << ")\n";
    os << "pi1      " << t.split.pi1.to_string() << "\n";
    os << "pi2      " << t.split.pi2.to_string() << "\n";
    os << "graph\n";
    for (const auto& row : t.graph) {
        os << "        ";
        for (int w : row)
            os << " " << w;
        os << "\n";
    }
    os << "pi3      " << t.triple.pi3.to_string() << "\n";
    os << "pi4      " << t.triple.pi4.to_string() << "\n";
    return os.str();
}

}  // namespace gg
