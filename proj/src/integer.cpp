#include "gg/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace gg {

namespace {

mpz_class mpz_from_int64(std::int64_t v)
{
    // mpz_class has no int64 constructor on every platform; go through two halves.
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max())
        return mpz_class(static_cast<long>(v));
    mpz_class hi(static_cast<long>(v >> 32));
    hi <<= 32;
    hi += static_cast<unsigned long>(static_cast<std::uint32_t>(v & 0xffffffff));
    return hi;
}

bool mpz_fits_int64(const mpz_class& v, std::int64_t& out)
{
    static_assert(sizeof(long) == 8, "int64 demotion assumes 64-bit long");
    if (!mpz_fits_slong_p(v.get_mpz_t()))
        return false;
    out = mpz_get_si(v.get_mpz_t());
    return true;
}

}  // namespace

Integer::Integer(const mpz_class& v)
{
    assign_big(v);
}

Integer::Integer(std::string_view decimal)
{
    mpz_class v;
    if (v.set_str(std::string(decimal), 10) != 0)
        throw std::invalid_argument("Integer: not a decimal integer: " + std::string(decimal));
    assign_big(std::move(v));
}

Integer::Integer(const Integer& o) : small_(o.small_)
{
    if (o.big_)
        big_ = std::make_unique<mpz_class>(*o.big_);
}

Integer& Integer::operator=(const Integer& o)
{
    if (this != &o) {
        small_ = o.small_;
        big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
}

int Integer::sign() const noexcept
{
    if (big_)
        return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
}

std::int64_t Integer::to_int64() const
{
    if (big_)
        throw std::overflow_error("Integer: value does not fit in int64: " + big_->get_str());
    return small_;
}

mpz_class Integer::to_mpz() const
{
    return big_ ? *big_ : mpz_from_int64(small_);
}

std::string Integer::to_string() const
{
    return big_ ? big_->get_str() : std::to_string(small_);
}

void Integer::assign_big(mpz_class v)
{
    std::int64_t s = 0;
    if (mpz_fits_int64(v, s)) {
        small_ = s;
        big_.reset();
    } else {
        small_ = 0;
        big_ = std::make_unique<mpz_class>(std::move(v));
    }
}

void Integer::demote_if_fits()
{
    std::int64_t s = 0;
    if (big_ && mpz_fits_int64(*big_, s)) {
        small_ = s;
        big_.reset();
    }
}

Integer& Integer::operator+=(const Integer& o)
{
    if (!big_ && !o.big_) {
        std::int64_t r = 0;
        if (!__builtin_add_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign_big(to_mpz() + o.to_mpz());
    return *this;
}

Integer& Integer::operator-=(const Integer& o)
{
    if (!big_ && !o.big_) {
        std::int64_t r = 0;
        if (!__builtin_sub_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign_big(to_mpz() - o.to_mpz());
    return *this;
}

Integer& Integer::operator*=(const Integer& o)
{
    if (!big_ && !o.big_) {
        std::int64_t r = 0;
        if (!__builtin_mul_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    assign_big(to_mpz() * o.to_mpz());
    return *this;
}

void Integer::add_product(const Integer& a, const Integer& b)
{
    if (!big_ && !a.big_ && !b.big_) {
        std::int64_t p = 0;
        std::int64_t r = 0;
        if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_add_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
    }
    mpz_class acc = to_mpz();
    mpz_class ma = a.to_mpz();
    mpz_class mb = b.to_mpz();
    mpz_addmul(acc.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    assign_big(std::move(acc));
}

void Integer::negate()
{
    if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) {
        small_ = -small_;
        return;
    }
    assign_big(-to_mpz());
}

bool operator==(const Integer& a, const Integer& b)
{
    // Both sides are kept normalized, so a big value never equals a small one.
    if (!a.big_ && !b.big_)
        return a.small_ == b.small_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b)
{
    if (!a.big_ && !b.big_)
        return a.small_ <=> b.small_;
    const int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Integer& v)
{
    return os << v.to_string();
}

}  // namespace gg
