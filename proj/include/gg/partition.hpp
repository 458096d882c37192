#ifndef GG_PARTITION_HPP
#define GG_PARTITION_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gg {

/// A partition with its parts in ascending order (smallest first).
class Partition {
public:
    Partition() = default;
    /// Parts must be positive and non-decreasing.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    static Partition from_unsorted(std::vector<int> parts);

    [[nodiscard]] std::span<const int> parts() const noexcept { return parts_; }
    [[nodiscard]] const std::vector<int>& vec() const noexcept { return parts_; }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
    [[nodiscard]] int sum() const noexcept;       // sigma
    [[nodiscard]] int size() const noexcept { return static_cast<int>(parts_.size()); }  // nu
    [[nodiscard]] int least() const;               // lambda; throws on the empty partition
    [[nodiscard]] int largest() const;             // Lambda; throws on the empty partition
    [[nodiscard]] bool contains(int part) const noexcept;
    [[nodiscard]] bool has_distinct_parts() const noexcept;
    [[nodiscard]] std::string to_string() const;  // "(3,5,8)", ascending

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

enum class ChainParity { odd, even };

/// Maximal run of parts differing by exactly 2.
struct Chain {
    std::vector<int> parts;
    ChainParity parity = ChainParity::odd;

    [[nodiscard]] int least() const { return parts.front(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

/// Constraints for the depth-first enumerator. `extend` sees the ascending
/// prefix built so far and a candidate next part and may prune; `accept` is
/// applied to each complete partition.
struct PartitionFilter {
    bool distinct = false;
    int min_part = 1;
    std::function<bool(std::span<const int> prefix, int next)> extend;
    std::function<bool(const Partition&)> accept;
};

/// Calls `visit` on every partition of n passing `filter`, in lexicographic
/// order of the ascending part sequences.
void for_each_partition(int n, const PartitionFilter& filter, const std::function<void(const Partition&)>& visit);
std::vector<Partition> enumerate(int n, const PartitionFilter& filter);
std::vector<Partition> enumerate(int n, const std::function<bool(const Partition&)>& pred);
std::int64_t count_partitions(int n, const PartitionFilter& filter);

/// Filter for Gollnitz-Gordon partitions: gaps >= 2, strictly above an even part.
PartitionFilter gollnitz_gordon_filter();
bool is_gollnitz_gordon(const Partition& p);
bool has_gaps_at_least_two(const Partition& p);

/// Q_i(n): partitions of n into distinct parts not congruent to i mod 4.
std::int64_t count_Q(int i, int n);

/// For i in {1,3}: gaps >= 2, strict between odd parts, least part > (4-i)/2.
std::int64_t count_thm1_side(int i, int n);

struct CountPair {
    std::int64_t first = 0;
    std::int64_t second = 0;
    friend bool operator==(const CountPair&, const CountPair&) = default;
};

/// For i in {1,3}: (parts = +-i, 4 mod 8; GG partitions with least part >= i).
CountPair count_thm2_sides(int i, int n);

/// Chain decomposition of a partition with gaps >= 2; throws on a gap of 1 or a repeated part.
std::vector<Chain> chains(const Partition& p);

/// t(b): odd parts below b. s(b): even parts below b. b must be a part.
int stat_t(const Partition& p, int b);
int stat_s(const Partition& p, int b);

/// S: even parts b = 2t(b) mod 4, chain weight 2 iff odd, least >= 5 and least = 1 + 2t mod 4.
/// Sstar: even parts b = 2(t(b) - 1) mod 4, chain weight 2 iff odd, least >= 3 and least = 2t - 1 mod 4.
enum class WeightVariant { S, Sstar };

/// True iff the least part of this odd chain doubles the weight under `v`.
bool chain_is_weighted(WeightVariant v, const Partition& p, const Chain& c);
bool satisfies_parity_condition(WeightVariant v, const Partition& p);

/// nullopt if p is not in the variant's set; otherwise the weight (a power of 2).
/// Throws std::invalid_argument if p is not Gollnitz-Gordon.
std::optional<std::int64_t> membership_and_weight(WeightVariant v, const Partition& p);
/// Gollnitz-Gordon partitions meeting the variant's even-part parity condition.
PartitionFilter weighted_family_filter(WeightVariant v);
std::int64_t weighted_count(WeightVariant v, int n);

/// Distinct parts, no consecutive gap = 1 mod 4, and the k-th smallest part b
/// (k from 1) is 1 + 2k + 2s(b) mod 4 when odd, 2 + 2k + 2s(b) mod 4 when even.
bool is_G_partition(const Partition& p);
std::int64_t count_G(int n);
/// Parts = +-3, +-4 mod 12 with parts = 3 mod 6 distinct.
std::int64_t count_P(int n);

/// Partitions whose parts lie in `allowed` mod `modulus`, with parts in
/// `distinct_residues` mod `distinct_modulus` appearing at most once.
class ResidueFamilyConfig {
public:
    ResidueFamilyConfig(int modulus, std::set<int> allowed, int distinct_modulus = 0, std::set<int> distinct_residues = {});

    /// "M:r1,r2,..[:D:d1,d2,..]", e.g. "12:3,4,8,9:6:3".
    static ResidueFamilyConfig parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;

    /// Parts = +-1, 4 (i = 1) or +-3, 4 (i = 3) mod 8.
    static ResidueFamilyConfig goellnitz_gordon_product(int i);
    /// Parts = 3, 4, 8, 9 mod 12, parts = 3 mod 6 distinct.
    static ResidueFamilyConfig p_product();
    /// k odd: parts != 2 mod 4, != +-k mod 2k+4, != 0 mod 4k+8; parts = k+2 mod 2k+4 distinct.
    static ResidueFamilyConfig hierarchy_odd(int k);
    /// k = 2 mod 4: parts != 2 mod 4, != 0 mod 2k+4; parts = +-k/2 mod k+2 distinct.
    static ResidueFamilyConfig hierarchy_two_mod_four(int k);
    /// k = 0 mod 4: parts != 2 mod 4, != 0, +-k mod 2k+4.
    static ResidueFamilyConfig hierarchy_zero_mod_four(int k);

    [[nodiscard]] int modulus() const noexcept { return modulus_; }
    [[nodiscard]] const std::set<int>& allowed() const noexcept { return allowed_; }
    [[nodiscard]] int distinct_modulus() const noexcept { return distinct_modulus_; }
    [[nodiscard]] const std::set<int>& distinct_residues() const noexcept { return distinct_residues_; }
    [[nodiscard]] bool allows(int part) const;
    [[nodiscard]] bool must_be_distinct(int part) const;

private:
    int modulus_;
    std::set<int> allowed_;
    int distinct_modulus_;
    std::set<int> distinct_residues_;
};

std::int64_t count_residue_family(const ResidueFamilyConfig& cfg, int n);

}  // namespace gg

#endif
