#ifndef GG_INTEGER_HPP
#define GG_INTEGER_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gg {

/// Exact integer with an int64 fast path.
///
/// Values that fit in 64 bits are stored inline; anything larger is promoted
/// to a GMP integer and demoted again as soon as it fits. Overflow is never
/// silent: every fast-path operation is checked.
class Integer {
public:
    Integer() noexcept = default;
    Integer(std::int64_t v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
    Integer(int v) noexcept : small_(v) {}           // NOLINT(google-explicit-constructor)
    explicit Integer(const mpz_class& v);
    explicit Integer(std::string_view decimal);

    Integer(const Integer& o);
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o);
    Integer& operator=(Integer&&) noexcept = default;
    ~Integer() = default;

    [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
    [[nodiscard]] bool is_small() const noexcept { return !big_; }
    [[nodiscard]] int sign() const noexcept;

    /// Throws std::overflow_error if the value does not fit.
    [[nodiscard]] std::int64_t to_int64() const;
    [[nodiscard]] mpz_class to_mpz() const;
    [[nodiscard]] std::string to_string() const;

    Integer& operator+=(const Integer& o);
    Integer& operator-=(const Integer& o);
    Integer& operator*=(const Integer& o);

    /// this += a * b, the hot loop of series multiplication.
    void add_product(const Integer& a, const Integer& b);

    void negate();

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator-(Integer a)
    {
        a.negate();
        return a;
    }

    friend bool operator==(const Integer& a, const Integer& b);
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

private:
    void assign_big(mpz_class v);
    void demote_if_fits();

    std::int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;  // non-null iff the value does not fit in int64
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace gg

#endif
