#pragma once

#include <array>
#include <cctype>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "igusa/exactalg.hpp"

namespace igusa {

inline constexpr long kExact = std::numeric_limits<long>::max();

namespace detail {

inline long sat_add(long a, long b)
{
    if (a == kExact || b == kExact)
        return kExact;
    return a + b;
}

} // namespace detail

// Polynomial in y with coefficients in Q[[x]], known modulo x^precision.
class PlaneSeries {
public:
    using Key = std::pair<long, long>; // (x exponent, y exponent)
    using Terms = std::map<Key, Rat>;

    explicit PlaneSeries(long precision = kExact) : prec_(precision) {}

    static PlaneSeries constant(const Rat& c)
    {
        PlaneSeries s;
        s.add_term(0, 0, c);
        return s;
    }
    static PlaneSeries monomial(const Rat& c, long i, long j)
    {
        PlaneSeries s;
        s.add_term(i, j, c);
        return s;
    }

    const Terms& terms() const { return t_; }
    long precision() const { return prec_; }
    bool is_exact() const { return prec_ == kExact; }
    bool is_zero() const { return t_.empty(); }

    Rat coeff(long i, long j) const
    {
        auto it = t_.find({i, j});
        return it == t_.end() ? Rat(0) : it->second;
    }

    void add_term(long i, long j, const Rat& c)
    {
        if (i < 0 || j < 0)
            fail(ErrorKind::InvalidInput, "negative exponent in plane series");
        if (c == 0 || i >= prec_)
            return;
        auto [it, inserted] = t_.try_emplace(Key{i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                t_.erase(it);
        }
    }

    // largest y exponent among known terms, -1 for zero
    long y_degree() const
    {
        long d = -1;
        for (const auto& [k, c] : t_)
            d = std::max(d, k.second);
        return d;
    }

    // x-adic order of the known part; precision if none is known
    long x_order() const
    {
        long o = prec_;
        for (const auto& [k, c] : t_)
            o = std::min(o, k.first);
        return o;
    }

    long y_order() const
    {
        long o = std::numeric_limits<long>::max();
        for (const auto& [k, c] : t_)
            o = std::min(o, k.second);
        return o;
    }

    // coefficient of y^j as a map x-exponent -> coefficient
    std::map<long, Rat> y_coefficient(long j) const
    {
        std::map<long, Rat> out;
        for (const auto& [k, c] : t_)
            if (k.second == j)
                out[k.first] = c;
        return out;
    }

    bool is_monic_in_y() const
    {
        long d = y_degree();
        if (d < 0)
            return false;
        auto lead = y_coefficient(d);
        return lead.size() == 1 && lead.begin()->first == 0 && lead.begin()->second == 1;
    }

    PlaneSeries truncated(long precision) const
    {
        PlaneSeries out(std::min(precision, prec_));
        for (const auto& [k, c] : t_)
            out.add_term(k.first, k.second, c);
        return out;
    }

    PlaneSeries with_precision(long precision) const
    {
        PlaneSeries out(precision);
        for (const auto& [k, c] : t_)
            out.add_term(k.first, k.second, c);
        return out;
    }

    PlaneSeries times_monomial(long i, long j) const
    {
        PlaneSeries out(detail::sat_add(prec_, i));
        for (const auto& [k, c] : t_)
            out.t_.emplace_hint(out.t_.end(), Key{k.first + i, k.second + j}, c);
        return out;
    }

    // exact division by x^i y^j; every known term must be divisible
    PlaneSeries divided_by_monomial(long i, long j) const
    {
        PlaneSeries out(prec_ == kExact ? kExact : prec_ - i);
        for (const auto& [k, c] : t_) {
            if (k.first < i || k.second < j)
                fail(ErrorKind::InvariantViolation, "monomial division is not exact");
            out.add_term(k.first - i, k.second - j, c);
        }
        return out;
    }

    friend PlaneSeries operator+(const PlaneSeries& a, const PlaneSeries& b)
    {
        PlaneSeries out(std::min(a.prec_, b.prec_));
        for (const auto& [k, c] : a.t_)
            out.add_term(k.first, k.second, c);
        for (const auto& [k, c] : b.t_)
            out.add_term(k.first, k.second, c);
        return out;
    }
    friend PlaneSeries operator-(const PlaneSeries& a) { return a.scaled(Rat(-1)); }
    friend PlaneSeries operator-(const PlaneSeries& a, const PlaneSeries& b) { return a + (-b); }

    friend PlaneSeries operator*(const PlaneSeries& a, const PlaneSeries& b)
    {
        long p = std::min(detail::sat_add(a.prec_, b.x_order()), detail::sat_add(b.prec_, a.x_order()));
        PlaneSeries out(p);
        for (const auto& [ka, ca] : a.t_) {
            for (const auto& [kb, cb] : b.t_) {
                long i = ka.first + kb.first;
                if (i < p)
                    out.add_term(i, ka.second + kb.second, ca * cb);
            }
        }
        return out;
    }

    PlaneSeries scaled(const Rat& s) const
    {
        PlaneSeries out(prec_);
        if (s == 0)
            return out;
        for (const auto& [k, c] : t_)
            out.t_.emplace_hint(out.t_.end(), k, c * s);
        return out;
    }

    PlaneSeries pow(unsigned e) const
    {
        PlaneSeries out = constant(1), base = *this;
        while (e) {
            if (e & 1)
                out = out * base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return out;
    }

    // known-coefficient equality; precisions must agree as well
    friend bool operator==(const PlaneSeries& a, const PlaneSeries& b)
    {
        return a.prec_ == b.prec_ && a.t_ == b.t_;
    }

    // agreement of known coefficients below the smaller precision
    bool agrees_with(const PlaneSeries& b) const
    {
        long p = std::min(prec_, b.prec_);
        return truncated(p).t_ == b.truncated(p).t_;
    }

private:
    long prec_;
    Terms t_;
};

inline PlaneSeries derivative_x(const PlaneSeries& f)
{
    PlaneSeries out(f.is_exact() ? kExact : f.precision() - 1);
    for (const auto& [k, c] : f.terms())
        if (k.first > 0)
            out.add_term(k.first - 1, k.second, c * k.first);
    return out;
}

inline PlaneSeries derivative_y(const PlaneSeries& f)
{
    PlaneSeries out(f.precision());
    for (const auto& [k, c] : f.terms())
        if (k.second > 0)
            out.add_term(k.first, k.second - 1, c * k.second);
    return out;
}

// F(x, y + c(x)) where c is a series in x alone, known to its own precision
inline PlaneSeries shift_y(const PlaneSeries& f, const PlaneSeries& c)
{
    for (const auto& [k, v] : c.terms())
        if (k.second != 0)
            fail(ErrorKind::InvalidInput, "shift must not depend on y");
    long n = f.y_degree();
    if (n < 0)
        return PlaneSeries(f.precision());
    std::vector<PlaneSeries> coeffs(n + 1, PlaneSeries(f.precision()));
    for (const auto& [k, v] : f.terms())
        coeffs[k.second].add_term(k.first, 0, v);
    PlaneSeries lin = PlaneSeries::monomial(1, 0, 1) + c;
    PlaneSeries acc = coeffs[n];
    for (long k = n - 1; k >= 0; --k)
        acc = acc * lin + coeffs[k];
    return acc.truncated(f.precision());
}

// ------------------------------------------------------------- parser

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    PlaneSeries parse()
    {
        skip();
        if (pos_ >= s_.size())
            fail(ErrorKind::EmptyInput, "empty polynomial");
        PlaneSeries e = expr();
        skip();
        if (pos_ != s_.size())
            error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& msg) const
    {
        fail(ErrorKind::Syntax, msg + " at position " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool peek(char ch)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == ch;
    }

    PlaneSeries expr()
    {
        PlaneSeries acc;
        bool first = true;
        for (;;) {
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            PlaneSeries t = term();
            acc = acc + (sign < 0 ? -t : t);
            first = false;
            if (!(peek('+') || peek('-')))
                break;
        }
        return acc;
    }

    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        char ch = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(ch)) || std::isalpha(static_cast<unsigned char>(ch)) || ch == '(';
    }

    PlaneSeries term()
    {
        PlaneSeries acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    PlaneSeries factor()
    {
        PlaneSeries b = base();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                error("expected a nonnegative integer exponent");
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            if (e > 4096)
                error("exponent too large");
            b = b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    PlaneSeries base()
    {
        skip();
        if (pos_ >= s_.size())
            error("unexpected end of input");
        char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return PlaneSeries::constant(Rat(Int(s_.substr(start, pos_ - start))));
        }
        if (ch == 'x' || ch == 'y') {
            ++pos_;
            return ch == 'x' ? PlaneSeries::monomial(1, 1, 0) : PlaneSeries::monomial(1, 0, 1);
        }
        if (ch == '(') {
            ++pos_;
            PlaneSeries e = expr();
            if (!peek(')'))
                error("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)))
            error("unknown variable '" + std::string(1, ch) + "'");
        error("unexpected '" + std::string(1, ch) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline PlaneSeries parse_poly(const std::string& text)
{
    return detail::PolyParser(text).parse();
}

inline std::string to_text(const PlaneSeries& f)
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [k, c] = *it;
        Rat a = abs(c);
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        bool mono = k.first || k.second;
        if (!mono || a != 1)
            out += a.get_str() + (mono ? "*" : "");
        std::string m;
        if (k.first)
            m += "x" + (k.first > 1 ? "^" + std::to_string(k.first) : "");
        if (k.second)
            m += (m.empty() ? "" : "*") + std::string("y") + (k.second > 1 ? "^" + std::to_string(k.second) : "");
        out += m;
    }
    if (!f.is_exact())
        out += " + O(x^" + std::to_string(f.precision()) + ")";
    return out;
}

// ------------------------------------------------------------ toric charts

// sigma = ((a,b),(c,d)): x <- x^a y^b, y <- x^c y^d
using Matrix2 = std::array<std::array<long, 2>, 2>;

inline Matrix2 matmul(const Matrix2& s, const Matrix2& t)
{
    Matrix2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = s[i][0] * t[0][j] + s[i][1] * t[1][j];
    return r;
}

// chart matrix of the cone spanned by T=(c,d) and T'=(c',d'): x <- x^c y^c', y <- x^d y^d'
inline Matrix2 chart_matrix(long c, long d, long c1, long d1)
{
    return Matrix2{{{c, c1}, {d, d1}}};
}

inline PlaneSeries toric_pullback(const PlaneSeries& f, const Matrix2& s, long precision = kExact)
{
    for (const auto& row : s)
        for (long v : row)
            if (v < 0)
                fail(ErrorKind::InvalidInput, "toric chart entries must be nonnegative");
    // unknown terms x^i y^k with i >= P land in x-degree >= a*P
    long p = kExact;
    if (!f.is_exact())
        p = s[0][0] > 0 ? s[0][0] * f.precision() : 0;
    p = std::min(p, precision);
    PlaneSeries out(p);
    for (const auto& [k, c] : f.terms()) {
        long i = s[0][0] * k.first + s[1][0] * k.second;
        long j = s[0][1] * k.first + s[1][1] * k.second;
        out.add_term(i, j, c);
    }
    return out;
}

// ------------------------------------------------------------ Tschirnhausen

// monic h of y-degree a with deg_y(g - h^(n/a)) < n - a
inline PlaneSeries tschirnhausen_approx(const PlaneSeries& g, long a)
{
    if (!g.is_monic_in_y())
        fail(ErrorKind::InvalidInput, "Tschirnhausen approximation needs a monic polynomial in y");
    long n = g.y_degree();
    if (a < 1 || n % a != 0)
        fail(ErrorKind::InvalidInput, "degree " + std::to_string(a) + " does not divide " + std::to_string(n));
    long e = n / a;
    PlaneSeries h = PlaneSeries::monomial(1, 0, a).with_precision(g.precision());
    for (long i = 1; i <= a; ++i) {
        // coefficient of y^(n-i) in h^e is e*h_i + (terms in h_1..h_{i-1})
        PlaneSeries he = h.pow(static_cast<unsigned>(e));
        auto target = g.y_coefficient(n - i);
        auto have = he.y_coefficient(n - i);
        std::map<long, Rat> diff = target;
        for (const auto& [x, c] : have)
            diff[x] -= c;
        for (const auto& [x, c] : diff)
            if (c != 0)
                h.add_term(x, a - i, c / e);
    }
    PlaneSeries rest = g - h.pow(static_cast<unsigned>(e));
    ensure(rest.y_degree() < n - a, "Tschirnhausen postcondition deg_y(g - h^(n/a)) < n - a");
    return h;
}

// ------------------------------------------------------------ Weierstrass

// W monic of degree A in y with G = W * unit, from G(0,y) = y^A * (unit); known mod x^precision
inline PlaneSeries weierstrass_prepare(const PlaneSeries& G, long A, long precision)
{
    long P = std::min(precision, G.precision());
    if (P == kExact || P < 1)
        fail(ErrorKind::InvalidInput, "Weierstrass preparation needs a finite positive precision");
    std::vector<UPoly> g(P);
    {
        std::vector<std::map<long, Rat>> raw(P);
        for (const auto& [k, c] : G.terms())
            if (k.first < P)
                raw[k.first][k.second] = c;
        for (long i = 0; i < P; ++i) {
            long d = raw[i].empty() ? -1 : raw[i].rbegin()->first;
            std::vector<Rat> v(d + 1);
            for (const auto& [j, c] : raw[i])
                v[j] = c;
            g[i] = UPoly(std::move(v));
        }
    }
    UPoly yA = UPoly::monomial(1, A);
    auto [u0, low] = g[0].divmod(yA);
    for (long j = 0; j < A; ++j)
        if (g[0].coeff(j) != 0)
            fail(ErrorKind::InvariantViolation, "Weierstrass input is not y^A times a unit at x = 0");
    if (u0.coeff(0) == 0)
        fail(ErrorKind::InvariantViolation, "Weierstrass input vanishes to order above A at the origin");
    auto [s, t] = ext_gcd(yA, u0);
    std::vector<UPoly> W(P), U(P);
    W[0] = yA;
    U[0] = u0;
    for (long k = 1; k < P; ++k) {
        UPoly e = g[k];
        for (long i = 1; i < k; ++i)
            e = e - W[i] * U[k - i];
        W[k] = (e * t).divmod(yA).second;
        auto [uk, r] = (e - W[k] * u0).divmod(yA);
        ensure(r.is_zero(), "Weierstrass lifting step");
        U[k] = uk;
    }
    PlaneSeries out(P);
    for (long k = 0; k < P; ++k)
        for (long j = 0; j <= W[k].degree(); ++j)
            out.add_term(k, j, W[k].coeff(j));
    return out;
}

// ------------------------------------------------------------ chart coordinates

struct TschCoordChange {
    Matrix2 sigma{};
    Rat xi;
    long A = 0;
    long N = 0;      // x_j-order removed
    long N_next = 0; // y_j-order removed
    PlaneSeries shift; // v = w + shift(u)
};

struct TschResult {
    PlaneSeries child; // u^N * W(u, v), W monic of degree A with no v^(A-1) term
    TschCoordChange change;
};

// Localize f at the point y_j = -xi of E(T_j) in the chart (T_j, T_j+1), then
// Weierstrass-prepare and recentre on the degree-one approximate root.
inline TschResult tsch_coordinates(const PlaneSeries& f,
                                   const std::array<long, 2>& Tj,
                                   const std::array<long, 2>& Tnext,
                                   long N,
                                   long N_next,
                                   const Rat& xi,
                                   long A,
                                   long p,
                                   long work_precision)
{
    if (xi == 0 || (p > 0 && valuation(xi, p) != 0))
        fail(ErrorKind::ConditionViolated, "branch root " + rat_str(xi) + " is not a " + std::to_string(p) + "-adic unit");
    TschResult res;
    res.change.sigma = chart_matrix(Tj[0], Tj[1], Tnext[0], Tnext[1]);
    res.change.xi = xi;
    res.change.A = A;
    res.change.N = N;
    res.change.N_next = N_next;

    PlaneSeries pulled = toric_pullback(f, res.change.sigma);
    if (pulled.precision() <= N)
        fail(ErrorKind::PrecisionExhausted, "chart pullback does not reach the exceptional multiplicity");
    if (pulled.x_order() < N)
        fail(ErrorKind::InvariantViolation, "pullback order below N_j");
    PlaneSeries G = pulled.divided_by_monomial(N, N_next);
    PlaneSeries centred = shift_y(G, PlaneSeries::constant(-xi).with_precision(G.precision()));

    long P = std::min(centred.precision(), work_precision);
    if (P < 1)
        fail(ErrorKind::PrecisionExhausted, "no precision left after the chart change");
    PlaneSeries W = weierstrass_prepare(centred, A, P);

    PlaneSeries s(W.precision());
    for (const auto& [x, c] : W.y_coefficient(A - 1))
        s.add_term(x, 0, c / A);
    res.change.shift = s;
    PlaneSeries Wv = shift_y(W, -s);
    ensure(Wv.y_coefficient(A - 1).empty() || A == 0, "recentred series keeps a v^(A-1) term");
    if (p > 0)
        for (const auto& [k, c] : Wv.terms())
            if (valuation(c, p) < 0)
                fail(ErrorKind::ConditionViolated, "localized series is not " + std::to_string(p) + "-integral");
    res.child = Wv.times_monomial(N, 0);
    return res;
}

} // namespace igusa
