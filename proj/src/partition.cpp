#include "gg/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gg {

namespace {

int mod(int a, int m)
{
    const int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts_[i] < parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be ascending");
    }
}

Partition Partition::from_unsorted(std::vector<int> parts)
{
    std::sort(parts.begin(), parts.end());
    return Partition(std::move(parts));
}

int Partition::sum() const noexcept
{
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::least() const
{
    if (parts_.empty())
        throw std::logic_error("least part of the empty partition");
    return parts_.front();
}

int Partition::largest() const
{
    if (parts_.empty())
        throw std::logic_error("largest part of the empty partition");
    return parts_.back();
}

bool Partition::contains(int part) const noexcept
{
    return std::binary_search(parts_.begin(), parts_.end(), part);
}

bool Partition::has_distinct_parts() const noexcept
{
    return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end();
}

std::string Partition::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i)
        os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

namespace {

struct Enumerator {
    const PartitionFilter& filter;
    const std::function<void(const Partition&)>& visit;
    std::vector<int> prefix;

    void run(int remaining, int min_next)
    {
        if (remaining == 0) {
            Partition p(prefix);
            if (!filter.accept || filter.accept(p))
                visit(p);
            return;
        }
        const int step = filter.distinct ? 1 : 0;
        for (int part = min_next; part <= remaining; ++part) {
            // Either this part finishes the sum, or another part >= part + step must fit.
            if (part != remaining && remaining - part < part + step)
                part = remaining;
            if (filter.extend && !filter.extend(prefix, part))
                continue;
            prefix.push_back(part);
            run(remaining - part, part + step);
            prefix.pop_back();
        }
    }
};

}  // namespace

void for_each_partition(int n, const PartitionFilter& filter, const std::function<void(const Partition&)>& visit)
{
    if (n < 0)
        throw std::invalid_argument("for_each_partition: negative n");
    Enumerator e{filter, visit, {}};
    e.run(n, std::max(1, filter.min_part));
}

std::vector<Partition> enumerate(int n, const PartitionFilter& filter)
{
    std::vector<Partition> out;
    for_each_partition(n, filter, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<Partition> enumerate(int n, const std::function<bool(const Partition&)>& pred)
{
    PartitionFilter f;
    f.accept = pred;
    return enumerate(n, f);
}

std::int64_t count_partitions(int n, const PartitionFilter& filter)
{
    std::int64_t c = 0;
    for_each_partition(n, filter, [&](const Partition&) { ++c; });
    return c;
}

PartitionFilter gollnitz_gordon_filter()
{
    PartitionFilter f;
    f.distinct = true;
    f.extend = [](std::span<const int> prefix, int next) {
        if (prefix.empty())
            return true;
        const int last = prefix.back();
        return next - last >= 2 && !(last % 2 == 0 && next - last == 2);
    };
    return f;
}

bool has_gaps_at_least_two(const Partition& p)
{
    const auto parts = p.parts();
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i] - parts[i - 1] < 2)
            return false;
    return true;
}

bool is_gollnitz_gordon(const Partition& p)
{
    const auto parts = p.parts();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const int gap = parts[i] - parts[i - 1];
        if (gap < 2 || (gap == 2 && parts[i - 1] % 2 == 0))
            return false;
    }
    return true;
}

std::int64_t count_Q(int i, int n)
{
    if (i < 0 || i > 3)
        throw std::invalid_argument("count_Q: i must be in 0..3");
    PartitionFilter f;
    f.distinct = true;
    f.extend = [i](std::span<const int>, int next) { return next % 4 != i; };
    return count_partitions(n, f);
}

std::int64_t count_thm1_side(int i, int n)
{
    if (i != 1 && i != 3)
        throw std::invalid_argument("count_thm1_side: i must be 1 or 3");
    PartitionFilter f;
    f.distinct = true;
    f.extend = [i](std::span<const int> prefix, int next) {
        if (prefix.empty())
            return 2 * next > 4 - i;
        const int last = prefix.back();
        return next - last >= 2 && !(last % 2 == 1 && next - last == 2);
    };
    return count_partitions(n, f);
}

CountPair count_thm2_sides(int i, int n)
{
    if (i != 1 && i != 3)
        throw std::invalid_argument("count_thm2_sides: i must be 1 or 3");
    PartitionFilter product;
    product.extend = [i](std::span<const int>, int next) {
        const int r = next % 8;
        return r == i || r == 8 - i || r == 4;
    };
    PartitionFilter gg = gollnitz_gordon_filter();
    gg.min_part = i;
    return CountPair{count_partitions(n, product), count_partitions(n, gg)};
}

std::vector<Chain> chains(const Partition& p)
{
    if (!has_gaps_at_least_two(p))
        throw std::invalid_argument("chains: partition has a gap smaller than 2");
    std::vector<Chain> out;
    for (int part : p.parts()) {
        if (!out.empty() && part - out.back().parts.back() == 2) {
            out.back().parts.push_back(part);
        } else {
            out.push_back(Chain{{part}, part % 2 ? ChainParity::odd : ChainParity::even});
        }
    }
    return out;
}

int stat_t(const Partition& p, int b)
{
    if (!p.contains(b))
        throw std::invalid_argument("stat_t: " + std::to_string(b) + " is not a part");
    const auto parts = p.parts();
    return static_cast<int>(std::count_if(parts.begin(), parts.end(), [b](int x) { return x < b && x % 2 == 1; }));
}

int stat_s(const Partition& p, int b)
{
    if (!p.contains(b))
        throw std::invalid_argument("stat_s: " + std::to_string(b) + " is not a part");
    const auto parts = p.parts();
    return static_cast<int>(std::count_if(parts.begin(), parts.end(), [b](int x) { return x < b && x % 2 == 0; }));
}

bool satisfies_parity_condition(WeightVariant v, const Partition& p)
{
    for (int b : p.parts()) {
        if (b % 2 != 0)
            continue;
        const int t = stat_t(p, b);
        const int target = v == WeightVariant::S ? 2 * t : 2 * (t - 1);
        if (mod(b - target, 4) != 0)
            return false;
    }
    return true;
}

bool chain_is_weighted(WeightVariant v, const Partition& p, const Chain& c)
{
    if (c.parity != ChainParity::odd)
        return false;
    const int lam = c.least();
    const int t = stat_t(p, lam);
    if (v == WeightVariant::S)
        return lam >= 5 && mod(lam - (1 + 2 * t), 4) == 0;
    return lam >= 3 && mod(lam - (2 * t - 1), 4) == 0;
}

std::optional<std::int64_t> membership_and_weight(WeightVariant v, const Partition& p)
{
    if (!is_gollnitz_gordon(p))
        throw std::invalid_argument("membership_and_weight: not a Gollnitz-Gordon partition: " + p.to_string());
    if (!satisfies_parity_condition(v, p))
        return std::nullopt;
    std::int64_t w = 1;
    for (const auto& c : chains(p))
        if (chain_is_weighted(v, p, c))
            w *= 2;
    return w;
}

PartitionFilter weighted_family_filter(WeightVariant v)
{
    PartitionFilter f = gollnitz_gordon_filter();
    // The even-part parity condition only looks at the prefix, so prune on it.
    f.extend = [base = f.extend, v](std::span<const int> prefix, int next) {
        if (!base(prefix, next))
            return false;
        if (next % 2 != 0)
            return true;
        const int t = static_cast<int>(std::count_if(prefix.begin(), prefix.end(), [](int x) { return x % 2 == 1; }));
        const int target = v == WeightVariant::S ? 2 * t : 2 * (t - 1);
        return mod(next - target, 4) == 0;
    };
    return f;
}

std::int64_t weighted_count(WeightVariant v, int n)
{
    std::int64_t total = 0;
    for_each_partition(n, weighted_family_filter(v), [&](const Partition& p) {
        if (auto w = membership_and_weight(v, p))
            total += *w;
    });
    return total;
}

namespace {

// The G conditions for the part at (1-based) position k, given the prefix below it.
bool g_part_ok(std::span<const int> prefix, int b)
{
    if (!prefix.empty()) {
        if (b <= prefix.back() || mod(b - prefix.back(), 4) == 1)
            return false;
    }
    const int k = static_cast<int>(prefix.size()) + 1;
    const int s = static_cast<int>(std::count_if(prefix.begin(), prefix.end(), [](int x) { return x % 2 == 0; }));
    const int target = (b % 2 ? 1 : 2) + 2 * k + 2 * s;
    return mod(b - target, 4) == 0;
}

}  // namespace

bool is_G_partition(const Partition& p)
{
    const auto parts = p.parts();
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!g_part_ok(parts.first(i), parts[i]))
            return false;
    return true;
}

std::int64_t count_G(int n)
{
    PartitionFilter f;
    f.distinct = true;
    f.extend = [](std::span<const int> prefix, int next) { return g_part_ok(prefix, next); };
    return count_partitions(n, f);
}

std::int64_t count_P(int n)
{
    PartitionFilter f;
    f.extend = [](std::span<const int> prefix, int next) {
        const int r = next % 12;
        if (r != 3 && r != 9 && r != 4 && r != 8)
            return false;
        return !(next % 6 == 3 && !prefix.empty() && prefix.back() == next);
    };
    return count_partitions(n, f);
}

ResidueFamilyConfig::ResidueFamilyConfig(int modulus, std::set<int> allowed, int distinct_modulus, std::set<int> distinct_residues)
    : modulus_(modulus),
      allowed_(std::move(allowed)),
      distinct_modulus_(distinct_modulus == 0 ? modulus : distinct_modulus),
      distinct_residues_(std::move(distinct_residues))
{
    if (modulus_ <= 0 || distinct_modulus_ <= 0)
        throw std::invalid_argument("ResidueFamilyConfig: moduli must be positive");
    for (int r : allowed_)
        if (r < 0 || r >= modulus_)
            throw std::invalid_argument("ResidueFamilyConfig: allowed residue out of range: " + std::to_string(r));
    for (int r : distinct_residues_)
        if (r < 0 || r >= distinct_modulus_)
            throw std::invalid_argument("ResidueFamilyConfig: distinct residue out of range: " + std::to_string(r));
}

namespace {

int parse_int(std::string_view s)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("ResidueFamilyConfig: bad integer '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::set<int> parse_set(std::string_view s)
{
    std::set<int> out;
    if (s.empty())
        return out;
    for (auto item : split(s, ','))
        out.insert(parse_int(item));
    return out;
}

std::string join(const std::set<int>& s)
{
    std::string out;
    for (int r : s)
        out += (out.empty() ? "" : ",") + std::to_string(r);
    return out;
}

}  // namespace

ResidueFamilyConfig ResidueFamilyConfig::parse(std::string_view text)
{
    const auto fields = split(text, ':');
    if (fields.size() != 2 && fields.size() != 4)
        throw std::invalid_argument("ResidueFamilyConfig: expected M:r,..[:D:d,..], got '" + std::string(text) + "'");
    if (fields.size() == 2)
        return ResidueFamilyConfig(parse_int(fields[0]), parse_set(fields[1]));
    return ResidueFamilyConfig(parse_int(fields[0]), parse_set(fields[1]), parse_int(fields[2]), parse_set(fields[3]));
}

std::string ResidueFamilyConfig::to_string() const
{
    std::string out = std::to_string(modulus_) + ":" + join(allowed_);
    if (!distinct_residues_.empty())
        out += ":" + std::to_string(distinct_modulus_) + ":" + join(distinct_residues_);
    return out;
}

bool ResidueFamilyConfig::allows(int part) const
{
    return allowed_.contains(mod(part, modulus_));
}

bool ResidueFamilyConfig::must_be_distinct(int part) const
{
    return distinct_residues_.contains(mod(part, distinct_modulus_));
}

ResidueFamilyConfig ResidueFamilyConfig::goellnitz_gordon_product(int i)
{
    if (i != 1 && i != 3)
        throw std::invalid_argument("goellnitz_gordon_product: i must be 1 or 3");
    return ResidueFamilyConfig(8, {i, 8 - i, 4});
}

ResidueFamilyConfig ResidueFamilyConfig::p_product()
{
    return ResidueFamilyConfig(12, {3, 4, 8, 9}, 6, {3});
}

ResidueFamilyConfig ResidueFamilyConfig::hierarchy_odd(int k)
{
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("hierarchy_odd: k must be odd and positive");
    const int big = 4 * k + 8;
    const int half = 2 * k + 4;
    std::set<int> allowed;
    for (int r = 0; r < big; ++r)
        if (r % 4 != 2 && r % half != k && r % half != k + 4 && r != 0)
            allowed.insert(r);
    return ResidueFamilyConfig(big, std::move(allowed), half, {k + 2});
}

ResidueFamilyConfig ResidueFamilyConfig::hierarchy_two_mod_four(int k)
{
    if (k < 2 || k % 4 != 2)
        throw std::invalid_argument("hierarchy_two_mod_four: k must be 2 mod 4");
    const int m = 2 * k + 4;  // a multiple of 4, so mod 4 classes are visible
    std::set<int> allowed;
    for (int r = 0; r < m; ++r)
        if (r % 4 != 2 && r != 0)
            allowed.insert(r);
    return ResidueFamilyConfig(m, std::move(allowed), k + 2, {k / 2, k + 2 - k / 2});
}

ResidueFamilyConfig ResidueFamilyConfig::hierarchy_zero_mod_four(int k)
{
    if (k < 4 || k % 4 != 0)
        throw std::invalid_argument("hierarchy_zero_mod_four: k must be a positive multiple of 4");
    const int m = 2 * k + 4;
    std::set<int> allowed;
    for (int r = 0; r < m; ++r)
        if (r % 4 != 2 && r != 0 && r != k && r != k + 4)
            allowed.insert(r);
    return ResidueFamilyConfig(m, std::move(allowed));
}

std::int64_t count_residue_family(const ResidueFamilyConfig& cfg, int n)
{
    PartitionFilter f;
    f.extend = [&cfg](std::span<const int> prefix, int next) {
        if (!cfg.allows(next))
            return false;
        return !(cfg.must_be_distinct(next) && !prefix.empty() && prefix.back() == next);
    };
    return count_partitions(n, f);
}

}  // namespace gg
