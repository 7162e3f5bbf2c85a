#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "igusa/errors.hpp"

namespace igusa {

using Rat = mpq_class;
using Int = mpz_class;

// ---------------------------------------------------------------- rationals

inline std::string rat_str(const Rat& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(const std::string& s)
{
    Rat r;
    if (r.set_str(s, 10) != 0)
        fail(ErrorKind::InvalidInput, "bad rational '" + s + "'");
    if (r.get_den() == 0)
        fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline long valuation(Int n, long p)
{
    if (n == 0)
        return std::numeric_limits<long>::max();
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= p;
        ++v;
    }
    return v;
}

// p-adic valuation of a rational; LONG_MAX for zero
inline long valuation(const Rat& r, long p)
{
    if (r == 0)
        return std::numeric_limits<long>::max();
    return valuation(Int(r.get_num()), p) - valuation(Int(r.get_den()), p);
}

inline Rat rat_pow(const Rat& b, long e)
{
    if (e < 0)
        return rat_pow(Rat(1) / b, -e);
    Rat out = 1, base = b;
    while (e > 0) {
        if (e & 1)
            out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// reduction of a p-integral rational into Z/p
inline long rat_mod_p(const Rat& r, long p)
{
    Int den = r.get_den();
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Int(p).get_mpz_t()) == 0)
        fail(ErrorKind::ConditionViolated, "coefficient " + rat_str(r) + " is not " + std::to_string(p) + "-integral");
    Int v = Int(r.get_num()) * inv;
    mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    return v.get_si();
}

// ------------------------------------------------- univariate polynomials

// dense polynomial over Q, coefficient i belongs to z^i
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
    static UPoly constant(const Rat& a) { return UPoly({a}); }
    static UPoly monomial(const Rat& a, std::size_t d)
    {
        std::vector<Rat> c(d + 1);
        c[d] = a;
        return UPoly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(long i) const { return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : Rat(0); }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat operator()(const Rat& z) const
    {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b)
    {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // quotient and remainder
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const
    {
        if (d.is_zero())
            fail(ErrorKind::InvalidInput, "polynomial division by zero");
        std::vector<Rat> r = c_;
        long dd = d.degree();
        std::vector<Rat> q(std::max<long>(degree() - dd + 1, 0));
        for (long k = degree(); k >= dd; --k) {
            Rat t = r[k] / d.lead();
            q[k - dd] = t;
            if (t != 0)
                for (long i = 0; i <= dd; ++i)
                    r[k - dd + i] -= t * d.c_[i];
        }
        r.resize(std::max<long>(std::min<long>(dd, static_cast<long>(r.size())), 0));
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

    UPoly derivative() const
    {
        std::vector<Rat> c;
        for (std::size_t i = 1; i < c_.size(); ++i)
            c.push_back(c_[i] * static_cast<long>(i));
        return UPoly(std::move(c));
    }

    UPoly monic() const
    {
        if (is_zero())
            return {};
        std::vector<Rat> c = c_;
        Rat l = lead();
        for (auto& x : c)
            x /= l;
        return UPoly(std::move(c));
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// s, t with s*a + t*b = gcd(a, b) (monic)
inline std::pair<UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b)
{
    UPoly r0 = a, r1 = b, s0 = UPoly::constant(1), s1, t0, t1 = UPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rat l = r0.lead();
    UPoly inv = UPoly::constant(Rat(1) / l);
    return {s0 * inv, t0 * inv};
}

namespace detail {

inline std::vector<Int> divisors(Int n)
{
    if (n < 0)
        n = -n;
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace detail

// rational roots with multiplicities, sorted ascending; zero roots included
inline std::vector<std::pair<Rat, int>> rational_roots(const UPoly& f)
{
    std::vector<std::pair<Rat, int>> out;
    if (f.degree() <= 0)
        return out;
    UPoly g = f;
    int zero_mult = 0;
    while (g.degree() > 0 && g.coeff(0) == 0) {
        g = g.divmod(UPoly({Rat(0), Rat(1)})).first;
        ++zero_mult;
    }
    if (zero_mult > 0)
        out.emplace_back(Rat(0), zero_mult);
    if (g.degree() > 0) {
        Int l = 1;
        for (const auto& c : g.coeffs())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        Int a0 = Int(g.coeff(0) * l), an = Int(g.lead() * l);
        for (const auto& num : detail::divisors(a0)) {
            for (const auto& den : detail::divisors(an)) {
                for (int sgn : {1, -1}) {
                    Rat z(num * sgn, den);
                    z.canonicalize();
                    if (z.get_den() != den || g(z) != 0)
                        continue;
                    int mult = 0;
                    UPoly lin({-z, Rat(1)});
                    while (g.degree() > 0 && g(z) == 0) {
                        g = g.divmod(lin).first;
                        ++mult;
                    }
                    out.emplace_back(z, mult);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ------------------------------------------------------------ LaurentPoly2

// ordered by u-degree first
struct Exp2 {
    long q;
    long u;
    std::strong_ordering operator<=>(const Exp2& o) const
    {
        if (auto c = u <=> o.u; c != 0)
            return c;
        return q <=> o.q;
    }
    bool operator==(const Exp2&) const = default;
};

class LaurentPoly2 {
public:
    using Terms = std::map<Exp2, Rat>;

    LaurentPoly2() = default;
    LaurentPoly2(long c) { add_term(0, 0, Rat(c)); }
    LaurentPoly2(const Rat& c) { add_term(0, 0, c); }

    static LaurentPoly2 monomial(const Rat& c, long eq, long eu)
    {
        LaurentPoly2 p;
        p.add_term(eq, eu, c);
        return p;
    }
    static LaurentPoly2 q(long e = 1) { return monomial(1, e, 0); }
    static LaurentPoly2 u(long e = 1) { return monomial(1, 0, e); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    Rat coeff(long eq, long eu) const
    {
        auto it = t_.find({eq, eu});
        return it == t_.end() ? Rat(0) : it->second;
    }

    void add_term(long eq, long eu, const Rat& c)
    {
        if (eu < 0)
            fail(ErrorKind::InvalidInput, "negative power of u");
        if (c == 0)
            return;
        auto [it, inserted] = t_.try_emplace(Exp2{eq, eu}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                t_.erase(it);
        }
    }

    long max_u_degree() const
    {
        long d = -1;
        for (const auto& [e, c] : t_)
            d = std::max(d, e.u);
        return d;
    }

    // multiply by q^dq u^du
    LaurentPoly2 shifted(long dq, long du) const
    {
        LaurentPoly2 out;
        for (const auto& [e, c] : t_)
            out.t_.emplace_hint(out.t_.end(), Exp2{e.q + dq, e.u + du}, c);
        return out;
    }

    // value at concrete q as coefficients of u^0, u^1, ...
    std::vector<Rat> at_q(const Rat& q0) const
    {
        std::vector<Rat> out(std::max<long>(max_u_degree() + 1, 0));
        for (const auto& [e, c] : t_)
            out[e.u] += c * rat_pow(q0, e.q);
        return out;
    }

    LaurentPoly2& operator+=(const LaurentPoly2& b)
    {
        for (const auto& [e, c] : b.t_)
            add_term(e.q, e.u, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& b)
    {
        for (const auto& [e, c] : b.t_)
            add_term(e.q, e.u, -c);
        return *this;
    }
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator-(const LaurentPoly2& a)
    {
        LaurentPoly2 out = a;
        for (auto& [e, c] : out.t_)
            c = -c;
        return out;
    }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b)
    {
        LaurentPoly2 out;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_)
                out.add_term(ea.q + eb.q, ea.u + eb.u, ca * cb);
        return out;
    }
    LaurentPoly2& operator*=(const LaurentPoly2& b) { return *this = *this * b; }
    friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.t_ == b.t_; }

    LaurentPoly2 pow(unsigned e) const
    {
        LaurentPoly2 out(1), base = *this;
        while (e) {
            if (e & 1)
                out *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return out;
    }

private:
    Terms t_;
};

// ------------------------------------------------------------ CycFactor

// q^nu u^N - 1
struct CycFactor {
    long N = 0;
    long nu = 1;
    auto operator<=>(const CycFactor&) const = default;
};

inline LaurentPoly2 cyc_poly(const CycFactor& f)
{
    LaurentPoly2 p = LaurentPoly2::monomial(1, f.nu, f.N);
    p.add_term(0, 0, -1);
    return p;
}

inline void check_factor(const CycFactor& f)
{
    if (f.N < 0 || f.nu < 1)
        fail(ErrorKind::InvalidInput, "bad factor (" + std::to_string(f.N) + "," + std::to_string(f.nu) + ")");
}

// p * (q^nu u^N - 1)
inline LaurentPoly2 mul_cyc(const LaurentPoly2& p, const CycFactor& f)
{
    return p.shifted(f.nu, f.N) - p;
}

// exact quotient p / (q^nu u^N - 1), or nullopt
inline std::optional<LaurentPoly2> zeta_divexact(const LaurentPoly2& p, const CycFactor& f)
{
    check_factor(f);
    LaurentPoly2 rem = p, quo;
    if (f.N >= 1) {
        // long division from the top u-degree; the leading coefficient q^nu is a unit
        while (!rem.is_zero()) {
            auto it = std::prev(rem.terms().end());
            while (it != rem.terms().begin() && std::prev(it)->first.u == it->first.u)
                --it;
            long top = it->first.u;
            if (top < f.N)
                return std::nullopt;
            LaurentPoly2 slice;
            for (auto jt = it; jt != rem.terms().end(); ++jt)
                slice.add_term(jt->first.q - f.nu, jt->first.u - f.N, jt->second);
            quo += slice;
            rem -= mul_cyc(slice, f);
        }
        return quo;
    }
    // N = 0: divide each u-slice by q^nu - 1 as a Laurent polynomial in q
    std::map<long, std::map<long, Rat>> by_u;
    for (const auto& [e, c] : p.terms())
        by_u[e.u][e.q] = c;
    for (auto& [eu, poly] : by_u) {
        while (!poly.empty()) {
            long lo = poly.begin()->first;
            auto top = std::prev(poly.end());
            long hi = top->first;
            if (hi - lo < f.nu)
                return std::nullopt;
            Rat c = top->second;
            // c q^hi = c q^(hi-nu) (q^nu - 1) + c q^(hi-nu)
            quo.add_term(hi - f.nu, eu, c);
            poly.erase(top);
            Rat& low = poly[hi - f.nu];
            low += c;
            if (low == 0)
                poly.erase(hi - f.nu);
        }
    }
    return quo;
}

// ------------------------------------------------------------ ZetaExpr

using FactorSet = std::map<CycFactor, int>;

inline FactorSet factor_lcm(const FactorSet& a, const FactorSet& b)
{
    FactorSet out = a;
    for (const auto& [f, k] : b)
        out[f] = std::max(out[f], k);
    return out;
}

// a must contain b
inline FactorSet factor_minus(const FactorSet& a, const FactorSet& b)
{
    FactorSet out = a;
    for (const auto& [f, k] : b) {
        auto it = out.find(f);
        ensure(it != out.end() && it->second >= k, "factor multiset difference");
        it->second -= k;
        if (it->second == 0)
            out.erase(it);
    }
    return out;
}

inline LaurentPoly2 mul_factors(LaurentPoly2 p, const FactorSet& fs)
{
    for (const auto& [f, k] : fs)
        for (int i = 0; i < k; ++i)
            p = mul_cyc(p, f);
    return p;
}

inline long factor_count(const FactorSet& fs)
{
    long n = 0;
    for (const auto& [f, k] : fs)
        n += k;
    return n;
}

class ZetaExpr {
public:
    ZetaExpr() = default;
    ZetaExpr(LaurentPoly2 num, FactorSet den = {}) : num_(std::move(num)), den_(std::move(den))
    {
        for (const auto& [f, k] : den_) {
            check_factor(f);
            ensure(k > 0, "nonpositive factor multiplicity");
        }
        if (num_.is_zero())
            den_.clear();
    }
    ZetaExpr(LaurentPoly2 num, std::initializer_list<CycFactor> den) : num_(std::move(num))
    {
        for (const auto& f : den) {
            check_factor(f);
            ++den_[f];
        }
        if (num_.is_zero())
            den_.clear();
    }

    const LaurentPoly2& numerator() const { return num_; }
    const FactorSet& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // numerator after raising the denominator to `target` (which must contain it)
    LaurentPoly2 numerator_over(const FactorSet& target) const
    {
        return mul_factors(num_, factor_minus(target, den_));
    }

    friend ZetaExpr operator*(const ZetaExpr& a, const LaurentPoly2& c) { return ZetaExpr(a.num_ * c, a.den_); }

private:
    LaurentPoly2 num_;
    FactorSet den_;
};

inline ZetaExpr zeta_add(const ZetaExpr& a, const ZetaExpr& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    FactorSet l = factor_lcm(a.denominator(), b.denominator());
    return ZetaExpr(a.numerator_over(l) + b.numerator_over(l), l);
}

inline ZetaExpr zeta_neg(const ZetaExpr& a) { return ZetaExpr(-a.numerator(), a.denominator()); }

inline ZetaExpr zeta_sum(const std::vector<ZetaExpr>& xs)
{
    FactorSet l;
    for (const auto& x : xs)
        l = factor_lcm(l, x.denominator());
    LaurentPoly2 num;
    for (const auto& x : xs)
        num += x.numerator_over(l);
    return ZetaExpr(num, l);
}

inline bool value_equal(const ZetaExpr& a, const ZetaExpr& b)
{
    FactorSet l = factor_lcm(a.denominator(), b.denominator());
    return a.numerator_over(l) == b.numerator_over(l);
}

// ------------------------------------------------------------ specialization

// numerator(u) / prod (a_k u^N_k - 1)
struct UniRational {
    std::vector<Rat> numerator;
    std::vector<std::pair<Rat, long>> denominator;

    Rat operator()(const Rat& u) const
    {
        Rat n = 0;
        for (auto it = numerator.rbegin(); it != numerator.rend(); ++it)
            n = n * u + *it;
        Rat d = 1;
        for (const auto& [a, N] : denominator)
            d *= a * rat_pow(u, N) - 1;
        return n / d;
    }
};

inline UniRational evaluate_at_q(const ZetaExpr& z, long q0)
{
    if (q0 < 2)
        fail(ErrorKind::InvalidInput, "q must be at least 2");
    UniRational r;
    r.numerator = z.numerator().at_q(Rat(q0));
    for (const auto& [f, k] : z.denominator())
        for (int i = 0; i < k; ++i)
            r.denominator.emplace_back(rat_pow(Rat(q0), f.nu), f.N);
    return r;
}

// coefficients c_0..c_M of the expansion in t = q^-s = 1/u
inline std::vector<Rat> series_coefficients(const ZetaExpr& z, long q0, int M)
{
    if (q0 < 2)
        fail(ErrorKind::InvalidInput, "q must be at least 2");
    if (M < 0)
        return {};
    std::vector<Rat> num = z.numerator().at_q(Rat(q0));
    long E = static_cast<long>(num.size()) - 1;
    long len = M + std::max<long>(E, 0) + 1;
    // 1/(a u^N - 1) = sum_{k>=1} a^-k t^(Nk) for N >= 1, and a constant for N = 0
    std::vector<Rat> den(len);
    den[0] = 1;
    for (const auto& [f, k] : z.denominator()) {
        Rat a = rat_pow(Rat(q0), f.nu);
        for (int rep = 0; rep < k; ++rep) {
            if (f.N == 0) {
                Rat c = Rat(1) / (a - 1);
                for (auto& x : den)
                    x *= c;
                continue;
            }
            std::vector<Rat> g(len);
            Rat ak = 1;
            for (long j = f.N; j < len; j += f.N) {
                ak /= a;
                g[j] = ak;
            }
            std::vector<Rat> prod(len);
            for (long i = 0; i < len; ++i) {
                if (den[i] == 0)
                    continue;
                for (long j = f.N; i + j < len; j += f.N)
                    prod[i + j] += den[i] * g[j];
            }
            den = std::move(prod);
        }
    }
    // coefficient of t^m is sum_e num_e * den_{m+e}
    for (long m = -E; m < 0; ++m) {
        Rat c = 0;
        for (long e = -m; e <= E; ++e)
            c += num[e] * den[m + e];
        if (c != 0)
            fail(ErrorKind::InvalidInput, "expression is not a power series in q^-s");
    }
    std::vector<Rat> out(M + 1);
    for (long m = 0; m <= M; ++m)
        for (long e = 0; e <= E; ++e)
            out[m] += num[e] * den[m + e];
    return out;
}

// ------------------------------------------------------------ rendering

namespace detail {

inline std::string exponent_str(long eu, long eq)
{
    std::ostringstream os;
    if (eu != 0) {
        if (eu == -1)
            os << "-";
        else if (eu != 1)
            os << eu;
        os << "s";
        if (eq > 0)
            os << "+" << eq;
        else if (eq < 0)
            os << eq;
    } else {
        os << eq;
    }
    return os.str();
}

inline std::string render_poly(const LaurentPoly2& p, bool latex)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [e, c] = *it;
        bool unit_power = (e.q == 0 && e.u == 0);
        Rat a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool show_coeff = unit_power || a != 1;
        if (show_coeff) {
            if (latex && a.get_den() != 1)
                os << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}";
            else
                os << a.get_str();
        }
        if (!unit_power) {
            if (show_coeff && !latex)
                os << "*";
            std::string ex = exponent_str(e.u, e.q);
            if (ex == "1")
                os << "q";
            else if (latex)
                os << "q^{" << ex << "}";
            else
                os << "q^(" << ex << ")";
        }
    }
    return os.str();
}

inline std::string render_factor(const CycFactor& f, bool latex)
{
    std::string ex = exponent_str(f.N, f.nu);
    std::string base = ex == "1" ? "q" : (latex ? "q^{" + ex + "}" : "q^(" + ex + ")");
    return "(" + base + " - 1)";
}

} // namespace detail

inline std::string to_text(const LaurentPoly2& p) { return detail::render_poly(p, false); }

inline std::string to_text(const ZetaExpr& z)
{
    std::string num = "(" + detail::render_poly(z.numerator(), false) + ")";
    if (z.denominator().empty())
        return num;
    std::string den;
    for (const auto& [f, k] : z.denominator()) {
        if (!den.empty())
            den += "*";
        den += detail::render_factor(f, false);
        if (k > 1)
            den += "^" + std::to_string(k);
    }
    return num + " / (" + den + ")";
}

inline std::string to_latex(const ZetaExpr& z)
{
    std::string num = detail::render_poly(z.numerator(), true);
    if (z.denominator().empty())
        return num;
    std::string den;
    for (auto it = z.denominator().rbegin(); it != z.denominator().rend(); ++it) {
        den += detail::render_factor(it->first, true);
        if (it->second > 1)
            den += "^{" + std::to_string(it->second) + "}";
    }
    return "\\frac{" + num + "}{" + den + "}";
}

inline nlohmann::json to_json(const LaurentPoly2& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({e.q, e.u, rat_str(c)});
    return terms;
}

inline nlohmann::json to_json(const ZetaExpr& z)
{
    nlohmann::json den = nlohmann::json::array();
    for (const auto& [f, k] : z.denominator())
        for (int i = 0; i < k; ++i)
            den.push_back({f.N, f.nu});
    return {{"numerator", to_json(z.numerator())}, {"denominator", den}};
}

inline ZetaExpr zeta_from_json(const nlohmann::json& j)
{
    try {
        LaurentPoly2 num;
        for (const auto& t : j.at("numerator"))
            num.add_term(t.at(0).get<long>(), t.at(1).get<long>(), parse_rat(t.at(2).get<std::string>()));
        FactorSet den;
        for (const auto& f : j.at("denominator"))
            ++den[CycFactor{f.at(0).get<long>(), f.at(1).get<long>()}];
        return ZetaExpr(num, den);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed zeta JSON: ") + e.what());
    }
}

} // namespace igusa
