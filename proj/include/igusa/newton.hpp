#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "igusa/curves.hpp"

namespace igusa {

struct Branch {
    Rat xi;        // face factor y^a + xi x^b
    int multiplicity = 1;
};

struct Facet {
    long a = 0;
    long b = 0;
    UPoly face_poly;               // sum e_t z^(A-t), e_0 at the upper-left vertex
    std::array<long, 2> upper{};   // (i, j) of the upper-left vertex
    std::array<long, 2> lower{};   // (i, j) of the lower-right vertex
    long A = 0;                    // lattice length of the edge
    bool rational_split = false;   // face polynomial splits over Q
    std::vector<Branch> branches;  // rational branch roots, when split
    long r = 0;                    // number of distinct roots (over Q if split, else deg after squarefree)
};

struct NewtonData {
    long alpha = 0;
    long beta = 0;
    std::vector<Facet> facets;
    Rat unit_constant = 1;
};

namespace detail {

struct HullPoint {
    long i;
    long j;
    Rat c;
};

inline long cross(const HullPoint& o, const HullPoint& a, const HullPoint& b)
{
    return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

} // namespace detail

// Newton polygon at the origin. Throws PrecisionExhausted when the truncation
// leaves the compact boundary undetermined.
inline NewtonData newton_polygon(const PlaneSeries& f, long p = 0)
{
    if (f.is_zero())
        fail(ErrorKind::ZeroSeries, "zero series has no Newton polygon");
    if (f.coeff(0, 0) != 0)
        fail(ErrorKind::InvalidInput, "series does not vanish at the origin");
    if (p > 0)
        for (const auto& [k, c] : f.terms())
            if (valuation(c, p) < 0)
                fail(ErrorKind::ConditionViolated, "coefficient " + rat_str(c) + " is not " + std::to_string(p) + "-integral");

    // leftmost support point for every y exponent
    std::map<long, detail::HullPoint> best;
    for (const auto& [k, c] : f.terms()) {
        auto it = best.find(k.second);
        if (it == best.end() || k.first < it->second.i)
            best[k.second] = {k.first, k.second, c};
    }
    std::vector<detail::HullPoint> pts;
    for (const auto& [j, hp] : best)
        pts.push_back(hp);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.i < b.i || (a.i == b.i && a.j < b.j); });

    // lower-left chain from the topmost point of minimal x-degree to the bottom
    long imin = pts.front().i;
    long jmin = best.begin()->first;
    std::vector<detail::HullPoint> chain;
    for (const auto& hp : pts) {
        if (hp.i == imin && !chain.empty())
            continue; // keep the lowest point on the first column
        if (!chain.empty() && hp.j >= chain.back().j)
            continue;
        while (chain.size() >= 2 && detail::cross(chain[chain.size() - 2], chain.back(), hp) <= 0)
            chain.pop_back();
        chain.push_back(hp);
        if (hp.j == jmin)
            break;
    }
    NewtonData nd;
    nd.alpha = chain.front().i;
    nd.beta = chain.back().j;

    // unknown terms have x-degree >= precision; the boundary must lie strictly left of it
    if (!f.is_exact()) {
        if (nd.beta > 0 || chain.back().i >= f.precision())
            fail(ErrorKind::PrecisionExhausted, "Newton polygon not determined below x^" + std::to_string(f.precision()));
    }

    for (std::size_t e = 0; e + 1 < chain.size(); ++e) {
        const auto& U = chain[e];
        const auto& L = chain[e + 1];
        long di = L.i - U.i, dj = U.j - L.j;
        long g = std::gcd(di, dj);
        Facet fc;
        fc.a = dj / g;
        fc.b = di / g;
        fc.A = g;
        fc.upper = {U.i, U.j};
        fc.lower = {L.i, L.j};
        std::vector<Rat> coeffs(g + 1);
        for (long t = 0; t <= g; ++t)
            coeffs[g - t] = f.coeff(U.i + t * fc.b, U.j - t * fc.a);
        fc.face_poly = UPoly(coeffs);
        auto roots = rational_roots(fc.face_poly);
        long total = 0;
        for (const auto& [z, m] : roots) {
            fc.branches.push_back({-z, m});
            total += m;
        }
        fc.rational_split = total == g;
        UPoly sq = fc.face_poly.divmod(gcd(fc.face_poly, fc.face_poly.derivative())).first;
        fc.r = sq.degree();
        nd.facets.push_back(std::move(fc));
    }
    nd.unit_constant = chain.front().c;

    if (p > 0) {
        for (const auto& hp : chain)
            if (valuation(hp.c, p) != 0)
                fail(ErrorKind::ConditionViolated,
                     "vertex coefficient of x^" + std::to_string(hp.i) + " y^" + std::to_string(hp.j) + " vanishes mod " + std::to_string(p));
    }
    return nd;
}

// ------------------------------------------------------------ finite fields

// F_{p^e} with elements encoded as base-p digit vectors packed into an integer
class FiniteField {
public:
    FiniteField(long p, int e, long max_order = 1L << 20) : p_(p), e_(e)
    {
        if (p < 2 || e < 1)
            fail(ErrorKind::InvalidInput, "bad field parameters");
        q_ = 1;
        for (int i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > max_order)
                fail(ErrorKind::FieldTooLarge, "F_" + std::to_string(p) + "^" + std::to_string(e) + " exceeds the search bound");
        }
        find_modulus();
    }

    long p() const { return p_; }
    int e() const { return e_; }
    long order() const { return q_; }

    using Elt = std::vector<long>;

    Elt decode(long x) const
    {
        Elt v(e_);
        for (int i = 0; i < e_; ++i) {
            v[i] = x % p_;
            x /= p_;
        }
        return v;
    }
    long encode(const Elt& v) const
    {
        long x = 0;
        for (int i = e_ - 1; i >= 0; --i)
            x = x * p_ + v[i];
        return x;
    }
    Elt from_int(long a) const
    {
        Elt v(e_, 0);
        v[0] = ((a % p_) + p_) % p_;
        return v;
    }
    Elt add(const Elt& a, const Elt& b) const
    {
        Elt v(e_);
        for (int i = 0; i < e_; ++i)
            v[i] = (a[i] + b[i]) % p_;
        return v;
    }
    Elt sub(const Elt& a, const Elt& b) const
    {
        Elt v(e_);
        for (int i = 0; i < e_; ++i)
            v[i] = (a[i] - b[i] + p_) % p_;
        return v;
    }
    Elt mul(const Elt& a, const Elt& b) const
    {
        std::vector<long> prod(2 * e_ - 1, 0);
        for (int i = 0; i < e_; ++i)
            if (a[i])
                for (int j = 0; j < e_; ++j)
                    prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        for (int k = 2 * e_ - 2; k >= e_; --k) {
            long c = prod[k];
            if (!c)
                continue;
            // x^e = -sum modulus_[i] x^i
            for (int i = 0; i < e_; ++i)
                prod[k - e_ + i] = ((prod[k - e_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
        prod.resize(e_);
        return prod;
    }
    bool is_zero(const Elt& a) const
    {
        for (long c : a)
            if (c)
                return false;
        return true;
    }

private:
    void find_modulus()
    {
        if (e_ == 1) {
            modulus_ = {0};
            return;
        }
        long count = 1;
        for (int i = 0; i < e_; ++i)
            count *= p_;
        for (long code = 0; code < count; ++code) {
            std::vector<long> m(e_ + 1, 1);
            long c = code;
            for (int i = 0; i < e_; ++i) {
                m[i] = c % p_;
                c /= p_;
            }
            if (m[0] != 0 && irreducible(m)) {
                m.pop_back();
                modulus_ = m;
                return;
            }
        }
        fail(ErrorKind::InvariantViolation, "no irreducible polynomial found");
    }

    // trial division of the monic polynomial m by every monic polynomial of degree <= deg/2
    bool irreducible(const std::vector<long>& m) const
    {
        int n = static_cast<int>(m.size()) - 1;
        for (int d = 1; 2 * d <= n; ++d) {
            long count = 1;
            for (int i = 0; i < d; ++i)
                count *= p_;
            for (long code = 0; code < count; ++code) {
                std::vector<long> div(d + 1, 1);
                long c = code;
                for (int i = 0; i < d; ++i) {
                    div[i] = c % p_;
                    c /= p_;
                }
                std::vector<long> r = m;
                for (int k = n; k >= d; --k) {
                    long t = r[k];
                    if (!t)
                        continue;
                    for (int i = 0; i <= d; ++i)
                        r[k - d + i] = ((r[k - d + i] - t * div[i]) % p_ + p_) % p_;
                }
                bool zero = true;
                for (int i = 0; i < d; ++i)
                    zero = zero && r[i] == 0;
                if (zero)
                    return false;
            }
        }
        return true;
    }

    long p_;
    int e_;
    long q_ = 0;
    std::vector<long> modulus_;
};

struct RootCount {
    std::vector<std::pair<long, int>> roots; // encoded field element, multiplicity
    bool splits = false;
    bool simple_nonzero = false;
};

// roots of F mod p in F_{p^e} by exhaustive evaluation
inline RootCount face_roots_mod_q(const UPoly& F, long p, int e, long max_order = 1L << 20)
{
    FiniteField K(p, e, max_order);
    std::vector<FiniteField::Elt> c;
    for (const auto& r : F.coeffs())
        c.push_back(K.from_int(rat_mod_p(r, p)));
    while (!c.empty() && K.is_zero(c.back()))
        c.pop_back();
    RootCount rc;
    if (c.empty())
        fail(ErrorKind::ConditionViolated, "face polynomial vanishes mod " + std::to_string(p));
    long deg = static_cast<long>(c.size()) - 1;
    long total = 0;
    bool simple = true, nonzero = true;
    for (long x = 0; x < K.order(); ++x) {
        auto z = K.decode(x);
        // repeated synthetic division by (X - z)
        std::vector<FiniteField::Elt> g = c;
        int mult = 0;
        while (g.size() > 1) {
            std::vector<FiniteField::Elt> qd(g.size() - 1);
            FiniteField::Elt acc = g.back();
            qd.back() = acc;
            for (long k = static_cast<long>(g.size()) - 2; k >= 1; --k) {
                acc = K.add(g[k], K.mul(acc, z));
                qd[k - 1] = acc;
            }
            FiniteField::Elt rem = K.add(g[0], K.mul(acc, z));
            if (!K.is_zero(rem))
                break;
            g = std::move(qd);
            ++mult;
        }
        if (mult > 0) {
            rc.roots.emplace_back(x, mult);
            total += mult;
            if (mult > 1)
                simple = false;
            if (x == 0)
                nonzero = false;
        }
    }
    rc.splits = total == deg;
    rc.simple_nonzero = simple && nonzero;
    return rc;
}

struct NondegeneracyReport {
    enum class Status { Nondegenerate, Degenerate, Unsplit } status = Status::Nondegenerate;
    long facet = -1;
    std::vector<long> r; // distinct roots per facet over F_q
};

// without a prime, distinctness is decided over Q-bar and F_q is assumed large enough to split
inline NondegeneracyReport check_nondegenerate(const NewtonData& nd, long p, int e)
{
    NondegeneracyReport rep;
    for (std::size_t i = 0; i < nd.facets.size(); ++i) {
        const Facet& fc = nd.facets[i];
        if (p == 0) {
            bool squarefree = fc.r == fc.face_poly.degree() && fc.face_poly.coeff(0) != 0;
            if (!squarefree && rep.status == NondegeneracyReport::Status::Nondegenerate) {
                rep.status = NondegeneracyReport::Status::Degenerate;
                rep.facet = static_cast<long>(i);
            }
            rep.r.push_back(fc.r);
            continue;
        }
        RootCount rc = face_roots_mod_q(fc.face_poly, p, e);
        rep.r.push_back(static_cast<long>(rc.roots.size()));
        if (rep.status != NondegeneracyReport::Status::Nondegenerate)
            continue;
        if (!rc.simple_nonzero) {
            rep.status = NondegeneracyReport::Status::Degenerate;
            rep.facet = static_cast<long>(i);
        } else if (!rc.splits) {
            rep.status = NondegeneracyReport::Status::Unsplit;
            rep.facet = static_cast<long>(i);
        }
    }
    return rep;
}

inline nlohmann::json to_json(const NewtonData& nd)
{
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& fc : nd.facets) {
        nlohmann::json fp = nlohmann::json::array();
        for (const auto& c : fc.face_poly.coeffs())
            fp.push_back(rat_str(c));
        nlohmann::json br = nlohmann::json::array();
        for (const auto& b : fc.branches)
            br.push_back({{"xi", rat_str(b.xi)}, {"multiplicity", b.multiplicity}});
        facets.push_back({{"normal", {fc.a, fc.b}},
                          {"lattice_length", fc.A},
                          {"face_poly", fp},
                          {"distinct_roots", fc.r},
                          {"splits_over_Q", fc.rational_split},
                          {"branches", br}});
    }
    return {{"alpha", nd.alpha}, {"beta", nd.beta}, {"unit_constant", rat_str(nd.unit_constant)}, {"facets", facets}};
}

} // namespace igusa
