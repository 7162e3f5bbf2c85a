#pragma once

#include <cstdlib>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "igusa/exactalg.hpp"
#include "igusa/curves.hpp"

namespace igusa {

// integer polynomial in x, y
using IntPoly = std::map<std::pair<long, long>, Int>;

inline long default_budget()
{
    if (const char* env = std::getenv("IGUSA_BUDGET")) {
        try {
            return std::stol(env);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, "IGUSA_BUDGET is not an integer");
        }
    }
    return 50'000'000;
}

// clears denominators with a p-adic unit, so valuations are unchanged
inline IntPoly to_int_poly(const PlaneSeries& f, long p)
{
    if (!f.is_exact())
        fail(ErrorKind::InvalidInput, "the oracle needs an honest polynomial");
    Int l = 1;
    for (const auto& [k, c] : f.terms())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    if (valuation(l, p) != 0)
        fail(ErrorKind::ConditionViolated, "polynomial is not " + std::to_string(p) + "-integral");
    IntPoly g;
    for (const auto& [k, c] : f.terms())
        g[k] = Int(c * l);
    return g;
}

namespace detail {

inline Int ipow(long p, long e)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

inline Int binom(long n, long k)
{
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline long mod_p(const Int& c, long p)
{
    return static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
}

// G(a + s*X, b + s*Y)
inline IntPoly taylor_shift(const IntPoly& G, const Int& a, const Int& b, const Int& s)
{
    std::map<std::pair<long, long>, Int> sx;
    for (const auto& [k, c] : G) {
        auto [i, j] = k;
        Int apow = 1, spow = 1;
        std::vector<Int> ap(i + 1);
        ap[0] = 1;
        for (long t = 1; t <= i; ++t)
            ap[t] = ap[t - 1] * a;
        for (long t = 0; t <= i; ++t) {
            Int v = c * binom(i, t) * ap[i - t] * spow;
            if (v != 0)
                sx[{t, j}] += v;
            spow *= s;
        }
        (void)apow;
    }
    IntPoly out;
    for (const auto& [k, c] : sx) {
        if (c == 0)
            continue;
        auto [i, j] = k;
        std::vector<Int> bp(j + 1);
        bp[0] = 1;
        for (long t = 1; t <= j; ++t)
            bp[t] = bp[t - 1] * b;
        Int spow = 1;
        for (long t = 0; t <= j; ++t) {
            Int v = c * binom(j, t) * bp[j - t] * spow;
            if (v != 0)
                out[{i, t}] += v;
            spow *= s;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

struct ModPoly {
    struct Term {
        long i, j, c;
    };
    std::vector<Term> t;
    long p;

    ModPoly(const IntPoly& g, long p_) : p(p_)
    {
        for (const auto& [k, c] : g) {
            long r = mod_p(c, p);
            if (r)
                t.push_back({k.first, k.second, r});
        }
    }
    // value and gradient mod p at (a, b) given power tables
    void eval(const std::vector<long>& xa, const std::vector<long>& yb, long& v, long& gx, long& gy) const
    {
        v = gx = gy = 0;
        for (const auto& [i, j, c] : t) {
            v = (v + c * xa[i] % p * yb[j]) % p;
            if (i > 0)
                gx = (gx + c * (i % p) % p * xa[i - 1] % p * yb[j]) % p;
            if (j > 0)
                gy = (gy + c * (j % p) % p * xa[i] % p * yb[j - 1]) % p;
        }
    }
};

class MeasureRecursion {
public:
    MeasureRecursion(long p, int M, long budget) : p_(p), M_(M), budget_(budget) {}

    // accumulate measures of {v(f) = k}, k <= M, over the region represented by G
    void explore(IntPoly G, long off, const Rat& meas, std::vector<Rat>& mu)
    {
        if (++nodes_ > budget_)
            fail(ErrorKind::BudgetExceeded, "oracle exceeded its node budget; raise IGUSA_BUDGET or lower the depth");
        long c = std::numeric_limits<long>::max();
        for (const auto& [k, v] : G)
            c = std::min(c, valuation(v, p_));
        if (G.empty() || off + c > M_)
            return;
        off += c;
        long R = M_ + 1 - off;
        Int pc = ipow(p_, c), pR = ipow(p_, R);
        for (auto it = G.begin(); it != G.end();) {
            Int v = it->second / pc;
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), pR.get_mpz_t());
            if (v == 0) {
                it = G.erase(it);
            } else {
                it->second = v;
                ++it;
            }
        }
        ModPoly Gm(G, p_);
        long degx = 0, degy = 0;
        for (const auto& [k, v] : G) {
            degx = std::max(degx, k.first);
            degy = std::max(degy, k.second);
        }
        Rat cell = meas / (p_ * p_);
        Rat hensel = cell * Rat(p_ - 1, p_);
        for (long a = 0; a < p_; ++a) {
            std::vector<long> xa(degx + 1, 1);
            for (long t = 1; t <= degx; ++t)
                xa[t] = xa[t - 1] * a % p_;
            for (long b = 0; b < p_; ++b) {
                std::vector<long> yb(degy + 1, 1);
                for (long t = 1; t <= degy; ++t)
                    yb[t] = yb[t - 1] * b % p_;
                long v, gx, gy;
                Gm.eval(xa, yb, v, gx, gy);
                if (v != 0) {
                    mu[off] += cell;
                } else if (gx != 0 || gy != 0) {
                    Rat w = hensel;
                    for (long k = off + 1; k <= M_; ++k) {
                        mu[k] += w;
                        w /= p_;
                    }
                } else {
                    explore(taylor_shift(G, a, b, p_), off, cell, mu);
                }
            }
        }
    }

    long nodes() const { return nodes_; }

private:
    long p_;
    int M_;
    long budget_;
    long nodes_ = 0;
};

} // namespace detail

// measures mu_k of {v(f) = k}, k = 0..M, over M^2 (local) or Z_p^2 (global)
inline std::vector<Rat> valuation_measures(const PlaneSeries& f, long p, int M, bool local, long budget = default_budget())
{
    if (p < 2)
        fail(ErrorKind::InvalidInput, "the oracle needs a prime");
    IntPoly g = to_int_poly(f, p);
    if (local) {
        if (f.coeff(0, 0) != 0)
            fail(ErrorKind::InvalidInput, "local measures need f(0,0) = 0");
        g = detail::taylor_shift(g, 0, 0, p);
    }
    Rat total = local ? Rat(1, p * p) : Rat(1);
    std::vector<Rat> mu(M + 1);
    // one task per residue class of the first digit; summed in a fixed order
    long content = std::numeric_limits<long>::max();
    for (const auto& [k, v] : g)
        content = std::min(content, valuation(v, p));
    if (g.empty() || content > M)
        return mu;
    for (auto& [k, v] : g)
        v /= detail::ipow(p, content);
    detail::ModPoly gm(g, p);
    std::vector<std::vector<Rat>> parts(p * p, std::vector<Rat>(M + 1));
    std::vector<long> nodes(p * p, 0);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    long per_task = budget;
    auto work = [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            long a = idx / p, b = idx % p;
            IntPoly one = detail::taylor_shift(g, a, b, p);
            // the class {x = a, y = b mod p}: reuse the recursion on a single cell
            detail::MeasureRecursion rec(p, M, per_task);
            std::vector<Rat>& out = parts[idx];
            long degx = 0, degy = 0;
            for (const auto& [k, v] : g) {
                degx = std::max(degx, k.first);
                degy = std::max(degy, k.second);
            }
            std::vector<long> xa(degx + 1, 1), yb(degy + 1, 1);
            for (long t = 1; t <= degx; ++t)
                xa[t] = xa[t - 1] * a % p;
            for (long t = 1; t <= degy; ++t)
                yb[t] = yb[t - 1] * b % p;
            long v, gx, gy;
            gm.eval(xa, yb, v, gx, gy);
            Rat cell = total / (p * p);
            if (v != 0) {
                out[content] += cell;
            } else if (gx != 0 || gy != 0) {
                Rat w = cell * Rat(p - 1, p);
                for (long k = content + 1; k <= M; ++k) {
                    out[k] += w;
                    w /= p;
                }
            } else {
                rec.explore(one, content, cell, out);
            }
            nodes[idx] = rec.nodes();
        }
    };
    long cells = p * p;
    long nthreads = std::min<long>(hw, cells);
    std::vector<std::future<void>> futs;
    long chunk = (cells + nthreads - 1) / nthreads;
    for (long lo = 0; lo < cells; lo += chunk)
        futs.push_back(std::async(std::launch::async, work, lo, std::min(cells, lo + chunk)));
    for (auto& fu : futs)
        fu.get();
    long used = 0;
    for (long n : nodes)
        used += n;
    if (used > budget)
        fail(ErrorKind::BudgetExceeded, "oracle exceeded its node budget; raise IGUSA_BUDGET or lower the depth");
    for (const auto& part : parts)
        for (int k = 0; k <= M; ++k)
            mu[k] += part[k];
    return mu;
}

struct CountProfile {
    long p = 0;
    int m_max = 0;
    std::vector<Int> global_counts;  // N_0..N_{m_max}
    std::vector<Rat> local_measures; // V_0..V_{m_max + 1}
    std::vector<Rat> local_coeffs;   // c_0..c_{m_max}
    Int point_count;                 // #V(f~) = N_1
};

// V_m = measure of {v(f) >= m} on M^2
inline Rat local_measure(const PlaneSeries& f, long p, int m, long budget = default_budget())
{
    if (m <= 0)
        return Rat(1, p * p);
    auto mu = valuation_measures(f, p, m - 1, true, budget);
    Rat v(1, p * p);
    for (const auto& x : mu)
        v -= x;
    return v;
}

inline CountProfile count_profile(const PlaneSeries& f, long p, int M, long budget = default_budget())
{
    CountProfile cp;
    cp.p = p;
    cp.m_max = M;
    auto glob = valuation_measures(f, p, M, false, budget);
    Rat W = 1;
    for (int m = 0; m <= M; ++m) {
        Rat n = W * Rat(detail::ipow(p, 2 * m));
        ensure(n.get_den() == 1, "global count is not an integer");
        cp.global_counts.push_back(n.get_num());
        W -= glob[m];
    }
    cp.point_count = M >= 1 ? cp.global_counts[1] : Int(0);
    if (f.coeff(0, 0) == 0) {
        auto loc = valuation_measures(f, p, M, true, budget);
        Rat V(1, p * p);
        for (int m = 0; m <= M; ++m) {
            cp.local_measures.push_back(V);
            cp.local_coeffs.push_back(loc[m]);
            V -= loc[m];
        }
        cp.local_measures.push_back(V);
    }
    return cp;
}

// ------------------------------------------------------------ enumeration

namespace detail {

inline Int eval_mod(const IntPoly& g, const Int& x, const Int& y, const Int& mod)
{
    Int acc = 0;
    for (const auto& [k, c] : g) {
        Int t = c;
        Int px, py;
        mpz_powm_ui(px.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(k.first), mod.get_mpz_t());
        mpz_powm_ui(py.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(k.second), mod.get_mpz_t());
        acc += t * px * py;
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    }
    return acc;
}

} // namespace detail

// #{(x, y) mod p^m : f = 0 mod p^m}, restricted to x, y = 0 mod p when local
inline Int count_naive(const PlaneSeries& f, long p, int m, bool local, long budget = default_budget())
{
    IntPoly g = to_int_poly(f, p);
    Int mod = detail::ipow(p, m);
    Int step = local ? Int(p) : Int(1);
    if (m == 0)
        return 1;
    Int side = mod / step;
    if (side * side > budget)
        fail(ErrorKind::BudgetExceeded, "naive enumeration over " + side.get_str() + "^2 points");
    Int count = 0;
    for (Int x = 0; x < mod; x += step)
        for (Int y = 0; y < mod; y += step)
            if (detail::eval_mod(g, x, y, mod) == 0)
                ++count;
    return count;
}

// same count by lifting the solution set one p-adic digit at a time
inline Int count_lifting(const PlaneSeries& f, long p, int m, bool local, long budget = default_budget())
{
    IntPoly g = to_int_poly(f, p);
    if (m == 0)
        return 1;
    std::vector<std::pair<Int, Int>> sols;
    int k0 = 0;
    if (local) {
        if (detail::eval_mod(g, 0, 0, Int(p)) == 0)
            sols.push_back({0, 0});
        k0 = 1;
    } else {
        sols.push_back({0, 0});
    }
    long work = 0;
    for (int k = k0; k < m; ++k) {
        Int pk = detail::ipow(p, k), mod = pk * p;
        std::vector<std::pair<Int, Int>> next;
        for (const auto& [x, y] : sols) {
            for (long d1 = 0; d1 < p; ++d1) {
                for (long d2 = 0; d2 < p; ++d2) {
                    if (++work > budget)
                        fail(ErrorKind::BudgetExceeded, "digit lifting exceeded its budget");
                    Int X = x + pk * d1, Y = y + pk * d2;
                    if (detail::eval_mod(g, X, Y, mod) == 0)
                        next.push_back({X, Y});
                }
            }
        }
        sols = std::move(next);
    }
    return Int(static_cast<long>(sols.size()));
}

// ------------------------------------------------------------ Poincare

struct PoincareReport {
    bool ok = true;
    long first_mismatch = -1;
    std::vector<Rat> lhs;
    std::vector<Rat> rhs;
};

// (1 - t) sum N_m (p^-2 t)^m  versus  1 - t Z(t), up to t^M
inline PoincareReport poincare_identity_check(const ZetaExpr& global_z, const std::vector<Int>& counts, long p, int M)
{
    if (static_cast<int>(counts.size()) < M + 1)
        fail(ErrorKind::InvalidInput, "not enough point counts for the requested order");
    PoincareReport rep;
    auto z = series_coefficients(global_z, p, M);
    for (int m = 0; m <= M; ++m) {
        Rat a = Rat(counts[m]) / Rat(detail::ipow(p, 2 * m));
        if (m > 0)
            a -= Rat(counts[m - 1]) / Rat(detail::ipow(p, 2 * (m - 1)));
        Rat b = (m == 0 ? Rat(1) : Rat(0)) - (m > 0 ? z[m - 1] : Rat(0));
        rep.lhs.push_back(a);
        rep.rhs.push_back(b);
        if (a != b && rep.ok) {
            rep.ok = false;
            rep.first_mismatch = m;
        }
    }
    return rep;
}

inline std::string to_csv(const CountProfile& cp)
{
    std::ostringstream os;
    os << "m,N_m,V_m,c_m\n";
    for (int m = 0; m <= cp.m_max; ++m) {
        os << m << "," << cp.global_counts[m].get_str() << ",";
        if (!cp.local_measures.empty())
            os << cp.local_measures[m].get_str() << "," << cp.local_coeffs[m].get_str();
        else
            os << ",";
        os << "\n";
    }
    return os.str();
}

} // namespace igusa
