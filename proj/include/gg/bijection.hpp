#ifndef GG_BIJECTION_HPP
#define GG_BIJECTION_HPP

#include <string>
#include <utility>
#include <vector>

#include "gg/partition.hpp"

namespace gg {

/// A member of S with its identified ("tilde") parts: the least parts of odd
/// chains that carry weight 2.
struct MarkedPartition {
    Partition base;
    std::vector<int> marks;  // ascending

    friend bool operator==(const MarkedPartition&, const MarkedPartition&) = default;
};

/// One bit per mark, in ascending mark order; true sends the mark to the second pile.
struct ChoiceVector {
    std::vector<bool> bits;

    friend bool operator==(const ChoiceVector&, const ChoiceVector&) = default;
};

struct SplitPair {
    Partition pi1;  // distinct odd parts, each > 2 nu(pi2)
    Partition pi2;  // gaps >= 4 with the mod 4 conditions on even and odd parts

    friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

struct TriplePartition {
    Partition pi1;  // distinct odd parts, least > 2 nu(pi3)
    Partition pi3;  // distinct multiples of 4
    Partition pi4;  // distinct odd parts, largest < 2 nu(pi3)

    friend bool operator==(const TriplePartition&, const TriplePartition&) = default;
};

/// b_k -> b_k - 2(k-1) on ascending parts. The input must have gaps >= 2.
Partition euler_subtract(const Partition& p);
/// Inverse of euler_subtract; the input must be non-decreasing.
Partition euler_add(const Partition& pstar);

bool is_member_S(const Partition& p);

/// Marks the weighted odd-chain heads of p; throws std::invalid_argument if p is not in S.
MarkedPartition identify(const Partition& p);

bool is_valid_split_pair(const SplitPair& sp);
bool is_valid_pi2(const Partition& pi2);
bool is_valid_triple(const TriplePartition& t);

/// Euler subtraction, routing to two piles by the choice bits, then restoring
/// the staircase 0, 2, .., 2n2 - 2 on the second pile and 2n2, 2n2 + 2, .. on the first.
SplitPair redistribute(const MarkedPartition& m, const ChoiceVector& c);
std::pair<MarkedPartition, ChoiceVector> redistribute_inverse(const SplitPair& sp);

/// Node weights of the decorated Ferrers graph, one row per part of pi2, largest part first.
using FerrersGraph = std::vector<std::vector<int>>;
FerrersGraph build_ferrers_graph(const Partition& pi2);

/// pi2 -> (pi3, pi4): the 1-footed columns become the 2-modular graph pi4 and
/// what remains is the 4-modular graph pi3.
std::pair<Partition, Partition> ferrers_split(const Partition& pi2);
/// Same map from the row-length formulas, without materializing the graph.
std::pair<Partition, Partition> ferrers_split_closed_form(const Partition& pi2);
Partition ferrers_merge(const Partition& pi3, const Partition& pi4);

TriplePartition triple_map(const Partition& p, const ChoiceVector& c);
std::pair<Partition, ChoiceVector> triple_inverse(const TriplePartition& t);

/// All 2^count choice vectors, in binary counting order.
std::vector<ChoiceVector> all_choices(int count);

std::vector<Partition> enumerate_members_S(int n);
std::vector<SplitPair> enumerate_split_pairs(int n);
std::vector<TriplePartition> enumerate_triples(int n);

/// Every stage of the pipeline for one (member, choice) pair.
struct BijectionTrace {
    Partition pi;
    Partition pstar;
    std::vector<int> marks;
    ChoiceVector choice;
    std::vector<int> pile1;
    std::vector<int> pile2;
    SplitPair split;
    FerrersGraph graph;
    TriplePartition triple;
};

BijectionTrace trace_bijection(const Partition& p, const ChoiceVector& c);
std::string format_trace(const BijectionTrace& t);

}  // namespace gg

#endif
