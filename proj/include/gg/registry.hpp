#ifndef GG_REGISTRY_HPP
#define GG_REGISTRY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gg/series.hpp"

namespace gg {

enum class CheckKind { series_equality, count_equality, round_trip, polynomial_equality };
enum class CheckStatus { pass, fail };
enum class Level { quick, full };

std::string to_string(CheckKind k);
std::string to_string(CheckStatus s);
std::string to_string(Level l);
CheckStatus parse_status(std::string_view s);
Level parse_level(std::string_view s);

/// Named integer parameters (i, k, l, m, n, ...). Absent keys run the id's default grid.
using CheckParams = std::map<std::string, int>;

struct CheckSpec {
    std::string id;
    CheckParams params;
    int order2 = 0;  // 0 picks the id's default
    Level level = Level::quick;  // size of the default grids
};

/// First difference found by a check, either in a series coefficient or in a count.
struct Mismatch {
    enum class Kind { series, count };
    Kind kind = Kind::series;
    Exponent exp;
    int n = 0;
    std::string expected;
    std::string got;

    /// "e2=..,dz=..,dw=..,expected=..,got=.." or "n=..,expected=..,got=..".
    [[nodiscard]] std::string to_string() const;
    static Mismatch parse(std::string_view text);
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
    std::string id;
    CheckParams params;
    int order2 = 0;
    CheckStatus status = CheckStatus::pass;
    std::optional<Mismatch> first_mismatch;
    double elapsed_ms = 0.0;

    /// Equality ignoring elapsed_ms.
    [[nodiscard]] bool same_outcome(const VerificationReport& o) const;
};

/// Single-coefficient corruption applied to the observed side of the first
/// comparison a check makes: exp for series comparisons, n for counts.
struct Mutation {
    Exponent exp;
    int n = 0;
    Integer delta{1};
};

struct CheckInfo {
    std::string id;
    CheckKind kind;
    std::vector<std::string> param_keys;
    int default_order2;
    std::string summary;
};

/// Every registered id, in catalog order.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(std::string_view id);
std::vector<std::string> check_ids();

/// Throws std::invalid_argument for an unknown id or a parameter the id does not take.
void validate(const CheckSpec& spec);

VerificationReport run_check(const CheckSpec& spec, const std::optional<Mutation>& mutation = std::nullopt);

/// Runs the specs on `parallelism` threads; the reports come back in input order.
std::vector<VerificationReport> run_checks(const std::vector<CheckSpec>& specs, int parallelism = 1);

/// quick: the acceptance bounds; full: larger orders and ranges.
std::vector<CheckSpec> plan(Level level);

// Series builders shared with the tests.

/// The single sums of the four classical identities; i in {1, 2, 3, 4} picks the identity.
TruncSeries classical_sum(int which, int order2);
TruncSeries classical_product(int which, int order2);

/// Double series sum_{n1,n2} z^n1 w^n2 q^(n1^2+2n1n2+2n2^2+2n2) (-zq;q^2)_n2 / ((q^2;q^2)_n1 (q^4;q^4)_n2)
/// after z -> z q^z_shift and w -> w q^w_shift, expanded on the closed-form summand.
TruncSeries double_series(int z_shift, int w_shift, int order2);
/// (-zq;q^4)_inf (-zq^3;q^4)_inf (-wq^4;q^4)_inf under the same substitution.
TruncSeries double_product(int z_shift, int w_shift, int order2);

}  // namespace gg

#endif
