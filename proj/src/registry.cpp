#include "gg/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gg/bailey.hpp"
#include "gg/bijection.hpp"
#include "gg/partition.hpp"
#include "gg/trinomial.hpp"

namespace gg {

std::string to_string(CheckKind k)
{
    switch (k) {
    case CheckKind::series_equality:
        return "series-equality";
    case CheckKind::count_equality:
        return "count-equality";
    case CheckKind::round_trip:
        return "round-trip";
    case CheckKind::polynomial_equality:
        return "polynomial-equality";
    }
    return "?";
}

std::string to_string(CheckStatus s)
{
    return s == CheckStatus::pass ? "pass" : "fail";
}

std::string to_string(Level l)
{
    return l == Level::quick ? "quick" : "full";
}

CheckStatus parse_status(std::string_view s)
{
    if (s == "pass")
        return CheckStatus::pass;
    if (s == "fail")
        return CheckStatus::fail;
    throw std::invalid_argument("unknown status: " + std::string(s));
}

Level parse_level(std::string_view s)
{
    if (s == "quick")
        return Level::quick;
    if (s == "full")
        return Level::full;
    throw std::invalid_argument("unknown level: " + std::string(s));
}

std::string Mismatch::to_string() const
{
    std::ostringstream os;
    if (kind == Kind::series)
        os << "e2=" << exp.e2 << ",dz=" << exp.dz << ",dw=" << exp.dw;
    else
        os << "n=" << n;
    os << ",expected=" << expected << ",got=" << got;
    return os.str();
}

Mismatch Mismatch::parse(std::string_view text)
{
    std::map<std::string, std::string> fields;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("Mismatch::parse: malformed field '" + std::string(item) + "'");
        fields[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        pos = comma + 1;
    }
    auto take = [&](const char* key) {
        auto it = fields.find(key);
        if (it == fields.end())
            throw std::invalid_argument(std::string("Mismatch::parse: missing ") + key);
        return it->second;
    };
    Mismatch m;
    if (fields.count("n")) {
        m.kind = Kind::count;
        m.n = std::stoi(take("n"));
    } else {
        m.kind = Kind::series;
        m.exp = Exponent{std::stoi(take("e2")), std::stoi(take("dz")), std::stoi(take("dw"))};
    }
    m.expected = take("expected");
    m.got = take("got");
    return m;
}

bool VerificationReport::same_outcome(const VerificationReport& o) const
{
    return id == o.id && params == o.params && order2 == o.order2 && status == o.status &&
           first_mismatch == o.first_mismatch;
}

namespace {

// Records the first failed comparison; the mutation lands on the first comparison made.
class Ctx {
public:
    explicit Ctx(const std::optional<Mutation>& m) : mutation_(m) {}

    bool failed() const { return mismatch.has_value(); }

    bool series(const TruncSeries& expected, const TruncSeries& got)
    {
        if (failed())
            return false;
        TruncSeries g = got;
        if (take_mutation())
            g = g.with_coeff_added(mutation_->exp, mutation_->delta);
        if (auto mm = first_mismatch(expected, g)) {
            mismatch = Mismatch{Mismatch::Kind::series, mm->exp, 0, mm->expected.to_string(), mm->got.to_string()};
            return false;
        }
        return true;
    }

    bool poly(const QPolynomial& expected, const QPolynomial& got)
    {
        if (failed())
            return false;
        QPolynomial g = got;
        if (take_mutation()) {
            if (mutation_->exp.dz != 0 || mutation_->exp.dw != 0)
                throw std::invalid_argument("mutation: polynomial checks have no z or w");
            g = g + QPolynomial::monomial(mutation_->delta, mutation_->exp.e2, got.cap());
        }
        if (auto mm = first_mismatch(expected, g)) {
            mismatch = Mismatch{Mismatch::Kind::series, mm->exp, 0, mm->expected.to_string(), mm->got.to_string()};
            return false;
        }
        return true;
    }

    bool counts(const std::vector<Integer>& expected, std::vector<Integer> got)
    {
        if (failed())
            return false;
        if (take_mutation() && mutation_->n >= 0 && static_cast<std::size_t>(mutation_->n) < got.size())
            got[static_cast<std::size_t>(mutation_->n)] += mutation_->delta;
        const std::size_t len = std::max(expected.size(), got.size());
        for (std::size_t n = 0; n < len; ++n) {
            const Integer e = n < expected.size() ? expected[n] : Integer(0);
            const Integer g = n < got.size() ? got[n] : Integer(0);
            if (e != g) {
                mismatch = Mismatch{Mismatch::Kind::count, {}, static_cast<int>(n), e.to_string(), g.to_string()};
                return false;
            }
        }
        return true;
    }

    /// Direct failure with free-form expected/got values.
    bool require(bool ok, int n, std::string expected, std::string got)
    {
        if (failed())
            return false;
        if (!ok)
            mismatch = Mismatch{Mismatch::Kind::count, {}, n, std::move(expected), std::move(got)};
        return ok;
    }

    std::optional<Mismatch> mismatch;

private:
    bool take_mutation()
    {
        if (!mutation_ || used_)
            return false;
        used_ = true;
        return true;
    }

    std::optional<Mutation> mutation_;
    bool used_ = false;
};

// ---------------------------------------------------------------------------
// Grids and helpers

std::vector<int> grid(const CheckParams& p, const std::string& key, int lo, int hi)
{
    if (auto it = p.find(key); it != p.end())
        return {it->second};
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v)
        out.push_back(v);
    return out;
}

std::vector<int> grid(const CheckParams& p, const std::string& key, std::vector<int> values)
{
    if (auto it = p.find(key); it != p.end())
        return {it->second};
    return values;
}

int param_or(const CheckParams& p, const std::string& key, int fallback)
{
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::vector<Integer> counts_of(int n_max, const std::function<std::int64_t(int)>& f)
{
    std::vector<Integer> out;
    for (int n = 0; n <= n_max; ++n)
        out.emplace_back(f(n));
    return out;
}

std::vector<Integer> coefficients(const TruncSeries& s, int n_max)
{
    std::vector<Integer> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back(s.coeff_q(n));
    return out;
}

int through(int order2)
{
    return (order2 - 1) / 2;
}

TruncSeries pinf(int sign, int e, int step, int order2, int dz = 0, int dw = 0)
{
    return poch_infinite(FactorSpec{sign, 2 * e, dz, dw, 2 * step}, order2);
}

TruncSeries pfin(int sign, int e, int step, int n, int order2, int dz = 0, int dw = 0)
{
    return poch_finite(FactorSpec{sign, 2 * e, dz, dw, 2 * step}, n, order2);
}

// ---------------------------------------------------------------------------
// Checks

struct RunArgs {
    const CheckParams& params;
    int order2;
    Level level;
    Ctx& ctx;
};

void check_classical(int which, const RunArgs& a)
{
    const TruncSeries sum = classical_sum(which, a.order2);
    const TruncSeries prod = classical_product(which, a.order2);
    if (!a.ctx.series(prod, sum))
        return;
    const int n_max = std::min(a.level == Level::quick ? 60 : 80, through(a.order2));
    const std::vector<Integer> rhs = coefficients(prod, n_max);
    switch (which) {
    case 1:
    case 2: {
        const std::set<int> residues = which == 1 ? std::set<int>{2, 3, 7} : std::set<int>{1, 5, 6};
        const TruncSeries mod8 = [&] {
            TruncSeries d = TruncSeries::one(a.order2);
            for (int r : residues)
                d *= pinf(1, r, 8, a.order2);
            return reciprocal(d);
        }();
        if (!a.ctx.series(prod, mod8))
            return;
        const int i = which == 1 ? 1 : 3;
        if (!a.ctx.counts(rhs, counts_of(n_max, [i](int n) { return count_Q(i, n); })))
            return;
        const ResidueFamilyConfig cfg(8, residues);
        a.ctx.counts(rhs, counts_of(n_max, [&cfg](int n) { return count_residue_family(cfg, n); }));
        break;
    }
    default: {
        const ResidueFamilyConfig cfg = ResidueFamilyConfig::goellnitz_gordon_product(which == 3 ? 1 : 3);
        a.ctx.counts(rhs, counts_of(n_max, [&cfg](int n) { return count_residue_family(cfg, n); }));
        break;
    }
    }
}

struct Substitution {
    int z_shift;
    int w_shift;
};

void check_double(const std::string& id, const RunArgs& a)
{
    static const std::map<std::string, Substitution> subs = {
        {"3.3", {0, 0}}, {"3.2", {0, 0}}, {"3.4", {0, -2}}, {"3.5", {1, -1}}, {"3.8", {1, -3}}};
    const Substitution s = subs.at(id);
    const TruncSeries sum = double_series(s.z_shift, s.w_shift, a.order2);
    const TruncSeries prod = double_product(s.z_shift, s.w_shift, a.order2);
    if (id == "3.2") {
        const TruncSeries flat = sum.evaluate_z(1).evaluate_w(1);
        const TruncSeries p1 = pinf(-1, 1, 2, a.order2) * pinf(-1, 4, 4, a.order2);
        const TruncSeries p2 = pinf(-1, 1, 4, a.order2) * pinf(-1, 3, 4, a.order2) * pinf(-1, 4, 4, a.order2);
        if (!a.ctx.series(p1, flat) || !a.ctx.series(p1, p2) || !a.ctx.series(p1, prod.evaluate_z(1).evaluate_w(1)))
            return;
        const int n_max = std::min(a.level == Level::quick ? 40 : 50, through(a.order2));
        const std::vector<Integer> c = coefficients(flat, n_max);
        if (!a.ctx.counts(c, counts_of(n_max, [](int n) { return count_Q(2, n); })))
            return;
        const int t_max = std::min(n_max, a.level == Level::quick ? 30 : 36);
        a.ctx.counts(std::vector<Integer>(c.begin(), c.begin() + t_max + 1),
                     counts_of(t_max, [](int n) { return static_cast<std::int64_t>(enumerate_triples(n).size()); }));
        return;
    }
    if (!a.ctx.series(prod, sum))
        return;
    if (id == "3.4") {
        const int n_max = std::min(40, through(a.order2));
        a.ctx.counts(coefficients(sum.evaluate_z(1).evaluate_w(1), n_max),
                     counts_of(n_max, [](int n) { return count_Q(0, n); }));
    }
}

// The z = 1 collapse of the shifted double series, in four forms.
void check_reduction(const std::string& id, const RunArgs& a)
{
    const bool first = id == "3.7";
    const int w_shift = first ? -1 : -3;
    const int lin = first ? 1 : -1;  // coefficient of n2 in the exponent after the shift
    const int o = a.order2;
    const TruncSeries collapsed = double_series(1, w_shift, o).evaluate_z(1);

    TruncSeries direct_sum(o);
    for (int n2 = 0; 2 * (n2 * n2 + lin * n2) < o || n2 < 2; ++n2) {
        for (int n1 = 0;; ++n1) {
            const int e = (n1 + n2) * (n1 + n2) + n2 * n2 + n1 + lin * n2;
            if (2 * e >= o)
                break;
            direct_sum += (reciprocal(pfin(1, 2, 2, n1, o)) * reciprocal(pfin(1, 2, 2, n2, o)))
                              .times_monomial(2 * e, 0, n2);
        }
    }
    TruncSeries resummed(o);
    TruncSeries single(o);
    for (int n = 0; 2 * (n * n + n - 1) < o || n < 2; ++n) {
        const TruncSeries inv = reciprocal(pfin(1, 2, 2, n, o));
        TruncSeries inner(o);
        for (int j = 0; j <= n; ++j) {
            const int e = n * n + n + j * j + (first ? 0 : -2 * j);
            if (2 * e < o)
                inner += gaussian_binomial(n, j, 4, o).times_monomial(2 * e, 0, j);
        }
        resummed += inner * inv;
        if (first) {
            single += (pfin(-1, 1, 2, n, o, 0, 1) * inv).times_monomial(2 * (n * n + n));
        } else if (n == 0) {
            single += TruncSeries::one(o);
        } else {
            const TruncSeries lead = TruncSeries::monomial(Integer(1), 2 * (n * n + n), 0, 0, o) +
                                     TruncSeries::monomial(Integer(1), 2 * (n * n + n - 1), 0, 1, o);
            single += lead * pfin(-1, 1, 2, n - 1, o, 0, 1) * inv;
        }
    }
    const TruncSeries prod =
        pinf(-1, 2, 4, o) * pinf(-1, first ? 3 : 1, 4, o, 0, 1) * pinf(-1, 4, 4, o);
    if (!a.ctx.series(prod, collapsed) || !a.ctx.series(prod, direct_sum) || !a.ctx.series(prod, resummed) ||
        !a.ctx.series(prod, single))
        return;
    a.ctx.series(classical_sum(first ? 1 : 2, o), single.evaluate_w(1));
}

void check_hierarchy(const RunArgs& a)
{
    const int o = a.order2;
    const int n_max = std::min(40, through(o));
    for (int k : grid(a.params, "k", 1, a.level == Level::quick ? 6 : 8)) {
        const TruncSeries sum = hierarchy_sum(k, o);
        const TruncSeries prod = hierarchy_product(k, o);
        if (!a.ctx.series(prod, sum) || !a.ctx.series(prod, hierarchy_product_alt(k, o)))
            return;
        const TruncSeries front = pinf(1, 2, 4, o) * reciprocal(pinf(1, 1, 1, o));
        if (k % 2 == 1) {
            const int mod = 2 * k + 4;
            const TruncSeries quad = front * pinf(1, k, mod, o) * pinf(1, k + 4, mod, o) * pinf(1, k + 2, mod, o) *
                                     pinf(-1, k + 2, mod, o) * pinf(1, 4 * k + 8, 4 * k + 8, o);
            if (!a.ctx.series(prod, quad))
                return;
        } else if (k % 4 == 2) {
            const int h = k / 2;
            const int mod = k + 2;
            const TruncSeries quad = front * pinf(1, 2 * k + 4, 2 * k + 4, o) * pinf(1, h, mod, o) *
                                     pinf(-1, h, mod, o) * pinf(1, h + 2, mod, o) * pinf(-1, h + 2, mod, o);
            if (!a.ctx.series(prod, quad))
                return;
        }
        if (k == 2) {
            const TruncSeries rewrite = pinf(-1, 1, 2, o) * pinf(-1, 4, 4, o);
            const TruncSeries middle = pinf(-1, 1, 2, o) * reciprocal(pinf(1, 4, 8, o));
            if (!a.ctx.series(rewrite, sum) || !a.ctx.series(rewrite, middle))
                return;
            if (!a.ctx.counts(coefficients(sum, n_max), counts_of(n_max, [](int n) { return count_Q(2, n); })))
                return;
            const int od = std::min(o, 81);
            if (!a.ctx.series(sum.truncated(od), double_series(0, 0, od).evaluate_z(1).evaluate_w(1)))
                return;
        }
        const ResidueFamilyConfig cfg = k % 2 == 1   ? ResidueFamilyConfig::hierarchy_odd(k)
                                        : k % 4 == 2 ? ResidueFamilyConfig::hierarchy_two_mod_four(k)
                                                     : ResidueFamilyConfig::hierarchy_zero_mod_four(k);
        if (!a.ctx.counts(coefficients(sum, n_max),
                          counts_of(n_max, [&cfg](int n) { return count_residue_family(cfg, n); })))
            return;
    }
}

void check_k1(const RunArgs& a)
{
    const int o = a.order2;
    const TruncSeries sum = hierarchy_sum(1, o);
    const TruncSeries first = pinf(1, 2, 4, o) * pinf(1, 6, 6, o) * pinf(1, 1, 6, o) * pinf(1, 5, 6, o) *
                              reciprocal(pinf(1, 1, 1, o));
    const TruncSeries second = pinf(-1, 3, 6, o) * reciprocal(pinf(1, 4, 12, o) * pinf(1, 8, 12, o));
    if (!a.ctx.series(first, sum) || !a.ctx.series(first, second))
        return;
    const int n_max = std::min(a.level == Level::quick ? 60 : 80, through(o));
    a.ctx.counts(coefficients(sum, n_max), counts_of(n_max, count_P));
}

void check_pair(const RunArgs& a)
{
    const int n_max = param_or(a.params, "n", a.level == Level::quick ? 6 : 8);
    const BaileyPair p = seed_E4(n_max, a.order2);
    const TruncSeries zero(a.order2);
    for (int n = 0; n <= n_max; ++n) {
        TruncSeries sum(a.order2);
        for (int i = 0; i <= n; ++i)
            sum += p.alpha[static_cast<std::size_t>(i)] * reciprocal(pfin(1, 1, 1, n - i, a.order2)) *
                   reciprocal(pfin(1, 1, 1, n + i, a.order2));
        if (!a.ctx.series(p.beta[static_cast<std::size_t>(n)], sum))
            return;
    }
}

void check_chain(const RunArgs& a)
{
    const int n_max = param_or(a.params, "n", a.level == Level::quick ? 4 : 6);
    const BaileyPair seed = seed_E4(n_max, a.order2);
    std::vector<int> ks = grid(a.params, "k", 1, a.level == Level::quick ? 4 : 5);
    BaileyPair stepped = seed;
    int done = 0;
    for (int k : ks) {
        while (done < k) {
            stepped = step(stepped);
            ++done;
        }
        if (done > k) {
            stepped = seed;
            for (done = 0; done < k; ++done)
                stepped = step(stepped);
        }
        const BaileyPair closed = iterate_closed(seed, k);
        for (int n = 0; n <= n_max; ++n) {
            if (!a.ctx.series(stepped.alpha[static_cast<std::size_t>(n)], closed.alpha[static_cast<std::size_t>(n)]) ||
                !a.ctx.series(stepped.beta[static_cast<std::size_t>(n)], closed.beta[static_cast<std::size_t>(n)]))
                return;
        }
        if (auto mm = pair_mismatch(closed)) {
            a.ctx.series(closed.beta[static_cast<std::size_t>(mm->n)],
                         closed.beta[static_cast<std::size_t>(mm->n)].with_coeff_added(
                             mm->mismatch.exp, mm->mismatch.got - mm->mismatch.expected));
            return;
        }
    }
}

void check_finite_bailey(const RunArgs& a)
{
    for (int k : grid(a.params, "k", 1, a.level == Level::quick ? 3 : 4))
        for (int n : grid(a.params, "n", 0, a.level == Level::quick ? 6 : 8)) {
            const SeriesSides s = finite_bailey_sides(n, k, a.order2);
            if (!a.ctx.series(s.rhs, s.lhs))
                return;
        }
}

// Compares at the stabilization point, or at the end of the search when there is none.
bool stabilized(Ctx& ctx, const std::function<TruncSeries(int)>& f, const TruncSeries& target, int start, int bound)
{
    const std::optional<int> at = find_stabilization(f, target, start, bound);
    const int where = at ? *at : bound;
    if (!ctx.series(target, f(where)))
        return false;
    if (!at && !ctx.failed())
        return ctx.require(false, bound, "stable", "not stable");
    return true;
}

void check_binomial_limits(bool centre, const RunArgs& a)
{
    const int o = a.order2;
    if (!centre) {
        for (int m : grid(a.params, "m", 0, a.level == Level::quick ? 4 : 6)) {
            const TruncSeries target = reciprocal(pfin(1, 1, 1, m, o));
            if (!stabilized(
                    a.ctx, [&](int n) { return gaussian_binomial(n, m, 2, o); }, target, m, m + o + 4))
                return;
        }
        return;
    }
    const TruncSeries target = reciprocal(pinf(1, 1, 1, o));
    for (int j : grid(a.params, "j", -2, 2)) {
        const int start = std::abs(j);
        if (!stabilized(
                a.ctx, [&](int n) { return gaussian_binomial(2 * n, n + j, 2, o); }, target, start, start + o + 4))
            return;
    }
}

void check_jacobi(const RunArgs& a)
{
    const std::vector<ZSpec> zs = {{1, 0, 0, 0}, {-1, 0, 0, 0}, {1, 2, 0, 0}, {1, 6, 0, 0}};
    for (const ZSpec& z : zs) {
        const ThetaSides s = jacobi_sides(z, a.order2);
        if (!a.ctx.series(s.product, s.sum))
            return;
    }
}

bool poly_identity(Ctx& ctx, const PolynomialIdentity& r)
{
    if (!ctx.poly(r.rhs, r.lhs))
        return false;
    return ctx.require(r.j_range_closed, r.j_max, "closed", "open");
}

void check_doubly_bounded(const RunArgs& a)
{
    const int hi = a.level == Level::quick ? 6 : 8;
    for (int k : grid(a.params, "k", 1, 3))
        for (int l : grid(a.params, "l", 0, hi))
            for (int m : grid(a.params, "m", 0, hi))
                if (!poly_identity(a.ctx, doubly_bounded_identity(k, l, m)))
                    return;
}

void check_singly_bounded(const RunArgs& a)
{
    for (int k : grid(a.params, "k", 1, 3))
        for (int l : grid(a.params, "l", 0, a.level == Level::quick ? 10 : 12))
            if (!poly_identity(a.ctx, singly_bounded_identity(k, l)))
                return;
}

void check_warnaar_limit(const RunArgs& a)
{
    const int o = a.order2;
    for (int m : grid(a.params, "m", 0, a.level == Level::quick ? 2 : 3))
        for (int av : grid(a.params, "a", 0, 1))
            for (int b : grid(a.params, "b", -m, m)) {
                const TruncSeries t = poch_finite(FactorSpec{-1, 1, 0, 0, 2}, m, o) *
                                      reciprocal(pfin(1, 1, 1, 2 * m, o)) * gaussian_binomial(2 * m, m + b, 2, o);
                if (!stabilized(
                        a.ctx, [&](int l) { return u_tilde(l, m, av, b, o).series(); }, t, 0, o + 2 * m + 8))
                    return;
            }
}

void check_andrews_baxter_limit(const RunArgs& a)
{
    const int o = a.order2;
    for (int l : grid(a.params, "l", 1, 3))
        for (int av : grid(a.params, "a", 0, 1))
            for (int b : grid(a.params, "b", -1, 2)) {
                const TruncSeries target = t_ab(l, av, o).series() * reciprocal(pfin(1, 1, 1, l, o));
                if (!stabilized(
                        a.ctx, [&](int m) { return t_warnaar(l, m, av, b, o).series(); }, target, 0,
                        o + std::abs(b) + 8))
                    return;
            }
}

void check_bounded_l_limit(const RunArgs& a)
{
    const int o = a.order2;
    for (int k : grid(a.params, "k", std::vector<int>{2}))
        for (int m : grid(a.params, "m", std::vector<int>{2})) {
            const TruncSeries target = finite_bailey_sides(m, k, (o + 1) / 2).rhs.base_scaled(2).truncated(o);
            const std::optional<int> at = doubly_bounded_l_limit(k, m, o);
            const PolynomialIdentity r = doubly_bounded_identity(k, at ? *at : o, m, o);
            if (!a.ctx.series(target, r.rhs.series()) || !a.ctx.series(target, r.lhs.series()))
                return;
            if (!a.ctx.require(at.has_value(), o, "stable", "not stable"))
                return;
        }
}

int n_bound(const RunArgs& a, int quick, int full)
{
    return param_or(a.params, "n", a.level == Level::quick ? quick : full);
}

void check_count_identity(const std::string& id, const RunArgs& a)
{
    if (id == "thm1" || id == "thm2") {
        const int n_max = n_bound(a, 40, 50);
        for (int i : grid(a.params, "i", std::vector<int>{1, 3})) {
            if (i != 1 && i != 3)
                throw std::invalid_argument(id + ": i must be 1 or 3");
            if (id == "thm1") {
                if (!a.ctx.counts(counts_of(n_max, [i](int n) { return count_Q(i, n); }),
                                  counts_of(n_max, [i](int n) { return count_thm1_side(i, n); })))
                    return;
            } else {
                std::vector<Integer> first;
                std::vector<Integer> second;
                for (int n = 0; n <= n_max; ++n) {
                    const CountPair c = count_thm2_sides(i, n);
                    first.emplace_back(c.first);
                    second.emplace_back(c.second);
                }
                if (!a.ctx.counts(first, second))
                    return;
            }
        }
        return;
    }
    if (id == "thm3" || id == "thm4") {
        const int n_max = n_bound(a, 50, 60);
        const bool s = id == "thm3";
        a.ctx.counts(counts_of(n_max, [s](int n) { return count_Q(s ? 2 : 0, n); }),
                     counts_of(n_max, [s](int n) { return weighted_count(s ? WeightVariant::S : WeightVariant::Sstar, n); }));
        return;
    }
    if (id == "thm5") {
        const int n_max = n_bound(a, 50, 60);
        const std::vector<Integer> p = counts_of(n_max, count_P);
        if (!a.ctx.counts(p, counts_of(n_max, count_G)))
            return;
        a.ctx.counts(p, coefficients(hierarchy_sum(1, 2 * n_max + 1), n_max));
        return;
    }
    const int n_max = n_bound(a, 36, 40);
    const std::vector<Integer> weighted = counts_of(n_max, [](int n) { return weighted_count(WeightVariant::S, n); });
    if (id == "lemma1") {
        a.ctx.counts(weighted,
                     counts_of(n_max, [](int n) { return static_cast<std::int64_t>(enumerate_split_pairs(n).size()); }));
    } else {
        a.ctx.counts(weighted,
                     counts_of(n_max, [](int n) { return static_cast<std::int64_t>(enumerate_triples(n).size()); }));
    }
}

void check_bijection(const RunArgs& a)
{
    const int n_max = n_bound(a, 36, 40);
    const Partition example{5, 15, 24, 29};
    const auto [pi3, pi4] = ferrers_split(example);
    const std::string want = "(4,12,20,24)|(1,5,7)";
    const std::string got = pi3.to_string() + "|" + pi4.to_string();
    if (!a.ctx.require(got == want, example.sum(), want, got))
        return;
    if (!a.ctx.require(ferrers_merge(pi3, pi4) == example, example.sum(), example.to_string(),
                       ferrers_merge(pi3, pi4).to_string()))
        return;

    std::vector<Integer> zeros;
    std::vector<Integer> forward_failures;
    std::vector<Integer> backward_failures;
    for (int n = 0; n <= n_max; ++n) {
        std::int64_t bad = 0;
        for (const Partition& p : enumerate_members_S(n)) {
            const MarkedPartition m = identify(p);
            for (const ChoiceVector& c : all_choices(static_cast<int>(m.marks.size()))) {
                try {
                    const SplitPair sp = redistribute(m, c);
                    const auto [s3, s4] = ferrers_split(sp.pi2);
                    const TriplePartition t{sp.pi1, s3, s4};
                    const bool ok = is_valid_triple(t) && s3.size() == sp.pi2.size() &&
                                    (s4.empty() || s4.largest() < 2 * sp.pi2.size()) &&
                                    t.pi1.sum() + t.pi3.sum() + t.pi4.sum() == n &&
                                    redistribute_inverse(sp) == std::make_pair(m, c) &&
                                    ferrers_split_closed_form(sp.pi2) == std::make_pair(s3, s4) &&
                                    triple_inverse(t) == std::make_pair(p, c);
                    bad += ok ? 0 : 1;
                } catch (const std::exception&) {
                    ++bad;
                }
            }
        }
        std::int64_t bad_back = 0;
        for (const TriplePartition& t : enumerate_triples(n)) {
            try {
                const auto [p, c] = triple_inverse(t);
                bad_back += triple_map(p, c) == t ? 0 : 1;
            } catch (const std::exception&) {
                ++bad_back;
            }
        }
        zeros.emplace_back(0);
        forward_failures.emplace_back(bad);
        backward_failures.emplace_back(bad_back);
    }
    if (!a.ctx.counts(zeros, forward_failures))
        return;
    a.ctx.counts(zeros, backward_failures);
}

// ---------------------------------------------------------------------------
// Catalog

struct Entry {
    CheckInfo info;
    std::function<void(const RunArgs&)> run;
};

const std::vector<Entry>& entries()
{
    using K = CheckKind;
    static const std::vector<Entry> list = [] {
        std::vector<Entry> v;
        auto add = [&](std::string id, K kind, std::vector<std::string> keys, int order2, std::string summary,
                       std::function<void(const RunArgs&)> run) {
            v.push_back(Entry{CheckInfo{std::move(id), kind, std::move(keys), order2, std::move(summary)}, std::move(run)});
        };
        for (int w = 1; w <= 4; ++w) {
            static const char* summaries[] = {
                "sum q^(n^2+n)(-q;q^2)_n/(q^2;q^2)_n = (-q^2,-q^3,-q^4;q^4)_inf; vs Q_1 and parts 2,3,7 mod 8",
                "sum q^(n^2+n)(-q^-1;q^2)_n/(q^2;q^2)_n = (-q,-q^2,-q^4;q^4)_inf; vs Q_3 and parts 1,5,6 mod 8",
                "sum q^(n^2)(-q;q^2)_n/(q^2;q^2)_n = 1/(q,q^4,q^7;q^8)_inf; vs parts 1,4,7 mod 8",
                "sum q^(n^2+2n)(-q;q^2)_n/(q^2;q^2)_n = 1/(q^3,q^4,q^5;q^8)_inf; vs parts 3,4,5 mod 8"};
            add("1." + std::to_string(w), K::series_equality, {}, 201, summaries[w - 1],
                [w](const RunArgs& a) { check_classical(w, a); });
        }
        add("3.2", K::series_equality, {}, 81, "double series at z=w=1 = (-q;q^2)(-q^4;q^4); vs Q_2 and triple counts",
            [](const RunArgs& a) { check_double("3.2", a); });
        add("3.3", K::series_equality, {}, 81, "two-parameter double series = (-zq,-zq^3,-wq^4;q^4)_inf",
            [](const RunArgs& a) { check_double("3.3", a); });
        add("3.4", K::series_equality, {}, 81, "w -> w q^-2: product (-zq,-zq^3,-wq^2;q^4)_inf; vs Q_0",
            [](const RunArgs& a) { check_double("3.4", a); });
        add("3.5", K::series_equality, {}, 81, "z -> zq, w -> w q^-1: product (-zq^2,-wq^3,-zq^4;q^4)_inf",
            [](const RunArgs& a) { check_double("3.5", a); });
        add("3.8", K::series_equality, {}, 81, "z -> zq, w -> w q^-3: product (-zq^2,-wq,-zq^4;q^4)_inf",
            [](const RunArgs& a) { check_double("3.8", a); });
        add("3.7", K::series_equality, {}, 121, "z=1 collapse to sum q^(n^2+n)(-wq;q^2)_n/(q^2;q^2)_n",
            [](const RunArgs& a) { check_reduction("3.7", a); });
        add("3.10", K::series_equality, {}, 121, "z=1 collapse to sum q^(n^2+n)(-wq^-1;q^2)_n/(q^2;q^2)_n",
            [](const RunArgs& a) { check_reduction("3.10", a); });
        add("4.1", K::series_equality, {"n"}, 80, "E(4) satisfies the Bailey pair relation",
            check_pair);
        add("4.4", K::series_equality, {"k", "n"}, 80, "k-fold closed form equals k Bailey lemma steps",
            check_chain);
        add("4.7", K::series_equality, {"k", "n"}, 80, "finite multi-sum = j-sum of [2n,n+j]",
            check_finite_bailey);
        add("4.9", K::series_equality, {"m"}, 81, "[n,m] -> 1/(q)_m",
            [](const RunArgs& a) { check_binomial_limits(false, a); });
        add("4.10", K::series_equality, {"j"}, 81, "[2n,n+j] -> 1/(q)_inf",
            [](const RunArgs& a) { check_binomial_limits(true, a); });
        add("4.11", K::series_equality, {}, 121, "Jacobi triple product at z = 1, -1, q, q^3", check_jacobi);
        add("4.12", K::series_equality, {"k"}, 121, "hierarchy multi-sum = theta products; residue interpretations",
            check_hierarchy);
        add("4.14", K::series_equality, {}, 201, "k=1 hierarchy = (-q^3;q^6)/(q^4,q^8;q^12); vs P", check_k1);
        add("4.15", K::polynomial_equality, {"k", "l", "m"}, 0, "doubly bounded polynomial identity",
            check_doubly_bounded);
        add("4.15-lim", K::series_equality, {"k", "m"}, 61, "l -> inf of the doubly bounded j-sum gives the finite Bailey j-sum",
            check_bounded_l_limit);
        add("4.17", K::series_equality, {"m", "a", "b"}, 81, "U~(l,m,a,b) -> (-sqrt q)_m/(q)_2m [2m,m+b]",
            check_warnaar_limit);
        add("4.18", K::series_equality, {"l", "a", "b"}, 81, "T_w(l,m,a,b) -> T_AB(l,a)/(q)_l",
            check_andrews_baxter_limit);
        add("4.20", K::polynomial_equality, {"k", "l"}, 0, "bounded identity with m -> inf",
            check_singly_bounded);
        for (std::string id : {"thm1", "thm2", "thm3", "thm4", "thm5", "lemma1", "lemma2"}) {
            static const std::map<std::string, std::string> summaries = {
                {"thm1", "Q_i = gap >= 2 partitions, strict after odd parts, least part > (4-i)/2"},
                {"thm2", "parts +-i,4 mod 8 = Gollnitz-Gordon partitions with least part >= i"},
                {"thm3", "weighted count over S = Q_2"},
                {"thm4", "weighted count over S* = Q_0"},
                {"thm5", "G = P = coefficients of the k=1 hierarchy"},
                {"lemma1", "weighted count over S = number of split pairs"},
                {"lemma2", "weighted count over S = number of triples"}};
            const std::vector<std::string> keys = id == "thm1" || id == "thm2" ? std::vector<std::string>{"i", "n"}
                                                                               : std::vector<std::string>{"n"};
            add(id, K::count_equality, keys, 0, summaries.at(id), [id](const RunArgs& a) { check_count_identity(id, a); });
        }
        add("bijection", K::round_trip, {"n"}, 0, "redistribution and Ferrers map round trips, worked example",
            check_bijection);
        return v;
    }();
    return list;
}

const Entry& entry(std::string_view id)
{
    for (const Entry& e : entries())
        if (e.info.id == id)
            return e;
    std::string known;
    for (const Entry& e : entries())
        known += (known.empty() ? "" : ", ") + e.info.id;
    throw std::invalid_argument("unknown check id '" + std::string(id) + "' (known: " + known + ")");
}

}  // namespace

const std::vector<CheckInfo>& check_catalog()
{
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> v;
        for (const Entry& e : entries())
            v.push_back(e.info);
        return v;
    }();
    return infos;
}

const CheckInfo* find_check(std::string_view id)
{
    for (const CheckInfo& c : check_catalog())
        if (c.id == id)
            return &c;
    return nullptr;
}

std::vector<std::string> check_ids()
{
    std::vector<std::string> out;
    for (const CheckInfo& c : check_catalog())
        out.push_back(c.id);
    return out;
}

void validate(const CheckSpec& spec)
{
    const Entry& e = entry(spec.id);
    for (const auto& [key, value] : spec.params) {
        if (std::find(e.info.param_keys.begin(), e.info.param_keys.end(), key) == e.info.param_keys.end())
            throw std::invalid_argument("check '" + spec.id + "' takes no parameter '" + key + "'");
        if (key != "j" && key != "b" && key != "a" && value < 0)
            throw std::invalid_argument("parameter '" + key + "' must be nonnegative");
        if (key == "k" && value < 1)
            throw std::invalid_argument("parameter 'k' must be >= 1");
    }
    if (spec.order2 < 0)
        throw std::invalid_argument("order2 must be nonnegative");
}

VerificationReport run_check(const CheckSpec& spec, const std::optional<Mutation>& mutation)
{
    validate(spec);
    const Entry& e = entry(spec.id);
    const int order2 = spec.order2 > 0 ? spec.order2 : e.info.default_order2;
    const auto start = std::chrono::steady_clock::now();
    Ctx ctx(mutation);
    e.run(RunArgs{spec.params, order2, spec.level, ctx});
    const auto stop = std::chrono::steady_clock::now();

    VerificationReport r;
    r.id = spec.id;
    r.params = spec.params;
    r.order2 = e.info.default_order2 == 0 ? 0 : order2;
    r.status = ctx.mismatch ? CheckStatus::fail : CheckStatus::pass;
    r.first_mismatch = ctx.mismatch;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return r;
}

std::vector<VerificationReport> run_checks(const std::vector<CheckSpec>& specs, int parallelism)
{
    if (parallelism < 1)
        throw std::invalid_argument("parallelism must be >= 1");
    for (const CheckSpec& s : specs)
        validate(s);
    std::vector<VerificationReport> out(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                out[i] = run_check(specs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(parallelism, static_cast<int>(specs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (const auto& err : errors)
        if (err)
            std::rethrow_exception(err);
    return out;
}

std::vector<CheckSpec> plan(Level level)
{
    std::vector<CheckSpec> out;
    for (const CheckInfo& c : check_catalog()) {
        CheckSpec s{c.id, {}, 0, level};
        if (level == Level::full && c.default_order2 > 0)
            s.order2 = c.default_order2 + c.default_order2 / 2;
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Series builders

TruncSeries classical_sum(int which, int order2)
{
    if (which < 1 || which > 4)
        throw std::invalid_argument("classical_sum: which must be 1..4");
    const int o = order2;
    TruncSeries sum(o);
    for (int n = 0;; ++n) {
        const int lead = which == 3 ? n * n : which == 4 ? n * n + 2 * n : which == 2 && n > 0 ? n * n + n - 1 : n * n + n;
        if (2 * lead >= o)
            break;
        const TruncSeries inv = reciprocal(pfin(1, 2, 2, n, o));
        if (which == 2) {
            if (n == 0) {
                sum += TruncSeries::one(o);
                continue;
            }
            // q^(n^2+n) (-q^-1;q^2)_n = (q^(n^2+n) + q^(n^2+n-1)) (-q;q^2)_(n-1)
            const TruncSeries head = TruncSeries::monomial(Integer(1), 2 * (n * n + n), 0, 0, o) +
                                     TruncSeries::monomial(Integer(1), 2 * lead, 0, 0, o);
            sum += head * pfin(-1, 1, 2, n - 1, o) * inv;
        } else {
            sum += (pfin(-1, 1, 2, n, o) * inv).times_monomial(2 * lead);
        }
    }
    return sum;
}

TruncSeries classical_product(int which, int order2)
{
    const int o = order2;
    switch (which) {
    case 1:
        return pinf(-1, 2, 4, o) * pinf(-1, 3, 4, o) * pinf(-1, 4, 4, o);
    case 2:
        return pinf(-1, 1, 4, o) * pinf(-1, 2, 4, o) * pinf(-1, 4, 4, o);
    case 3:
        return reciprocal(pinf(1, 1, 8, o) * pinf(1, 4, 8, o) * pinf(1, 7, 8, o));
    case 4:
        return reciprocal(pinf(1, 3, 8, o) * pinf(1, 4, 8, o) * pinf(1, 5, 8, o));
    default:
        throw std::invalid_argument("classical_product: which must be 1..4");
    }
}

TruncSeries double_series(int z_shift, int w_shift, int order2)
{
    if (z_shift < 0 || w_shift < -3)
        throw std::invalid_argument("double_series: substitution produces negative powers of q");
    const int o = order2;
    TruncSeries sum(o);
    std::map<int, TruncSeries> inv2;
    auto inv_q2 = [&](int n) -> const TruncSeries& {
        auto it = inv2.find(n);
        if (it == inv2.end())
            it = inv2.emplace(n, reciprocal(pfin(1, 2, 2, n, o))).first;
        return it->second;
    };
    for (int n2 = 0;; ++n2) {
        const int base = 2 * n2 * n2 + (2 + w_shift) * n2;
        if (base < 0)
            throw std::invalid_argument("double_series: substitution produces negative powers of q");
        if (2 * base >= o && n2 > 0)
            break;
        const TruncSeries right = pfin(-1, 1 + z_shift, 2, n2, o, 1, 0) * reciprocal(pfin(1, 4, 4, n2, o));
        for (int n1 = 0;; ++n1) {
            const int e = n1 * n1 + 2 * n1 * n2 + z_shift * n1 + base;
            if (2 * e >= o)
                break;
            sum += (right * inv_q2(n1)).times_monomial(2 * e, n1, n2);
        }
    }
    return sum;
}

TruncSeries double_product(int z_shift, int w_shift, int order2)
{
    if (z_shift < 0 || w_shift < -3)
        throw std::invalid_argument("double_product: substitution produces negative powers of q");
    const int o = order2;
    return pinf(-1, 1 + z_shift, 4, o, 1, 0) * pinf(-1, 3 + z_shift, 4, o, 1, 0) * pinf(-1, 4 + w_shift, 4, o, 0, 1);
}

}  // namespace gg
