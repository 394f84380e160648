#pragma once

#include "drshift/exact.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace drshift {

// Raised when a truncated representation of an infinite point is too short
// to decide the question asked. Operations never approximate silently.
struct insufficient_depth : std::runtime_error {
    explicit insufficient_depth(const std::string& what) : std::runtime_error(what) {}
};

// Shift applied to a zero-length point (outside Dom(sigma)).
struct length_zero_error : std::runtime_error {
    explicit length_zero_error(const std::string& what) : std::runtime_error(what) {}
};

// A system with a single partially defined local shift. Iterated domains
// shrink, so membership of x in Dom(sigma^i) is monotone in i and the index
// set I_n(x) = {i < n : x in Dom(sigma^i)} is an initial segment {0,..,m}.
//
// domain_horizon(x, n) returns that m (always >= 0: Dom(sigma^0) is the
// whole space). shift(x) is defined exactly when domain_horizon(x, 2) >= 1.
template <class S>
concept DRSystem = requires(const S s, const typename S::point_type x, int n) {
    { s.domain_horizon(x, n) } -> std::convertible_to<int>;
    { s.shift(x) } -> std::convertible_to<typename S::point_type>;
    { s.base_distance(x, x) } -> std::convertible_to<Rational>;
};

template <DRSystem S>
std::vector<int> index_set(const S& sys, const typename S::point_type& x, int n) {
    if (n < 1) throw std::invalid_argument("index_set: n must be >= 1");
    int m = sys.domain_horizon(x, n);
    std::vector<int> out(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

// d_n(x, y): max of the base distance over the shared iterate indices.
// Not a metric in general; it is one restricted to Dom(sigma^{n-1}).
template <DRSystem S>
Rational iterate_distance(const S& sys, const typename S::point_type& x,
                          const typename S::point_type& y, int n) {
    if (n < 1) throw std::invalid_argument("iterate_distance: n must be >= 1");
    int m = std::min(sys.domain_horizon(x, n), sys.domain_horizon(y, n));
    typename S::point_type cx = x;
    typename S::point_type cy = y;
    Rational best = sys.base_distance(cx, cy);
    for (int i = 1; i <= m; ++i) {
        cx = sys.shift(cx);
        cy = sys.shift(cy);
        Rational d = sys.base_distance(cx, cy);
        if (d > best) best = d;
    }
    return best;
}

// Membership in the open dynamical ball U(center, n, eps): the candidate must
// share every iterate index of the center and stay strictly within eps.
template <DRSystem S>
bool in_dynamical_ball(const S& sys, const typename S::point_type& center,
                       const typename S::point_type& candidate, int n, const Rational& eps) {
    if (n < 1) throw std::invalid_argument("in_dynamical_ball: n must be >= 1");
    if (eps <= 0) throw std::invalid_argument("in_dynamical_ball: eps must be positive");
    int m = sys.domain_horizon(center, n);
    if (sys.domain_horizon(candidate, m + 1) < m) return false;
    typename S::point_type cc = center;
    typename S::point_type cd = candidate;
    for (int i = 0; i <= m; ++i) {
        if (i > 0) {
            cc = sys.shift(cc);
            cd = sys.shift(cd);
        }
        if (sys.base_distance(cc, cd) >= eps) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Doubling on [0,1) with Dom(sigma^n) = [0, 1/2^n). The standard witness that
// d_n can violate the triangle inequality, with all values exact rationals.
// ---------------------------------------------------------------------------
class IntervalDoublingSystem {
  public:
    using point_type = Rational;

    int domain_horizon(const point_type& x, int n) const {
        check_point(x);
        if (n < 1) throw std::invalid_argument("domain_horizon: n must be >= 1");
        int m = 0;
        while (m + 1 < n && x < dyadic(m + 1)) ++m;
        return m;
    }

    point_type shift(const point_type& x) const {
        check_point(x);
        if (x >= Rational(1, 2)) throw std::domain_error("shift: x outside Dom(sigma) = [0, 1/2)");
        return 2 * x;
    }

    Rational base_distance(const point_type& x, const point_type& y) const {
        return abs(x - y);
    }

    bool niceone_analytic() const { return false; }

    // A point of B(x, radius) inside Dom(sigma^n) = [0, 1/2^n), if the two
    // intervals overlap; the rational midpoint of the overlap is returned.
    std::optional<point_type> niceone_witness(const point_type& x, int n,
                                              const Rational& radius) const {
        Rational bound = dyadic(n);
        if (x < bound) return x;
        Rational lo = x - radius;
        if (lo < 0) lo = 0;
        if (lo >= bound) return std::nullopt;
        return (lo + bound) / 2;
    }

  private:
    static void check_point(const Rational& x) {
        if (x < 0 || x >= 1) throw std::invalid_argument("point outside [0,1)");
    }
};

// ---------------------------------------------------------------------------
// One-sided binary sequences with Dom(sigma^n) = [0^{3n}] and sigma dropping
// three symbols at a time. Points are truncations with an explicit depth;
// questions the known prefix cannot settle raise insufficient_depth. Two
// bitwise-identical truncations denote the same point.
// ---------------------------------------------------------------------------
struct BinaryWord {
    std::vector<std::uint8_t> bits; // known prefix, index 0 first

    static BinaryWord parse(const std::string& s) {
        BinaryWord w;
        w.bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("BinaryWord: bad character");
            w.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return w;
    }

    int depth() const { return static_cast<int>(bits.size()); }

    bool operator==(const BinaryWord& other) const { return bits == other.bits; }
};

class PaddedBinarySystem {
  public:
    using point_type = BinaryWord;

    // x in Dom(sigma^i) iff the first 3i symbols are 0.
    int domain_horizon(const point_type& x, int n) const {
        if (n < 1) throw std::invalid_argument("domain_horizon: n must be >= 1");
        int first_one = -1;
        for (int i = 0; i < x.depth(); ++i) {
            if (x.bits[static_cast<std::size_t>(i)]) {
                first_one = i;
                break;
            }
        }
        if (first_one >= 0) return std::min(n - 1, first_one / 3);
        if (3 * (n - 1) <= x.depth()) return n - 1;
        throw insufficient_depth("domain_horizon: all known symbols are 0 but the prefix is too short");
    }

    point_type shift(const point_type& x) const {
        if (x.depth() < 3) throw insufficient_depth("shift: depth < 3");
        for (int i = 0; i < 3; ++i)
            if (x.bits[static_cast<std::size_t>(i)])
                throw std::domain_error("shift: x outside Dom(sigma) = [0^3]");
        point_type out;
        out.bits.assign(x.bits.begin() + 3, x.bits.end());
        return out;
    }

    // 1/2^i with i the first disagreement index (0-based).
    Rational base_distance(const point_type& x, const point_type& y) const {
        if (x == y) return 0;
        int common = std::min(x.depth(), y.depth());
        for (int i = 0; i < common; ++i)
            if (x.bits[static_cast<std::size_t>(i)] != y.bits[static_cast<std::size_t>(i)])
                return dyadic(i);
        throw insufficient_depth("base_distance: points agree on the whole common prefix");
    }

    bool niceone_analytic() const { return false; }

    std::optional<point_type> niceone_witness(const point_type& x, int n,
                                              const Rational& radius) const {
        // Zeroing the block [3(n-1), 3n) of x lands in Dom(sigma^n) and moves
        // the point by at most 1/2^{3(n-1)}.
        if (radius <= dyadic(3 * (n - 1))) return std::nullopt;
        point_type y = x;
        while (y.depth() < 3 * n) y.bits.push_back(0);
        for (int i = 3 * (n - 1); i < 3 * n; ++i) y.bits[static_cast<std::size_t>(i)] = 0;
        return y;
    }
};

// ---------------------------------------------------------------------------
// Sampled check of the neighborhood-extension hypothesis: whenever I_n(x) is
// full, every neighborhood of x should contain a point with I_{n+1} full.
// Advisory only; a run over finitely many radii proves nothing by itself.
// ---------------------------------------------------------------------------
enum class NiceoneStatus { AnalyticPass, Pass, Inconclusive, NotInDomain };

struct NiceoneRow {
    int sample_index = 0;
    int n = 0;
    NiceoneStatus status = NiceoneStatus::Inconclusive;
};

struct NiceoneReport {
    std::vector<NiceoneRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (r.status == NiceoneStatus::Inconclusive) return false;
        return true;
    }
};

template <class S>
NiceoneReport check_hypothesis_niceone_sampled(const S& sys,
                                               const std::vector<typename S::point_type>& sample,
                                               int n_max, int radius_steps = 6) {
    NiceoneReport report;
    for (std::size_t si = 0; si < sample.size(); ++si) {
        for (int n = 1; n <= n_max; ++n) {
            NiceoneRow row;
            row.sample_index = static_cast<int>(si);
            row.n = n;
            if (sys.domain_horizon(sample[si], n) < n - 1) {
                row.status = NiceoneStatus::NotInDomain;
            } else if (sys.niceone_analytic()) {
                row.status = NiceoneStatus::AnalyticPass;
            } else {
                bool ok = true;
                for (int t = 1; t <= radius_steps && ok; ++t) {
                    auto w = sys.niceone_witness(sample[si], n, dyadic(t));
                    ok = w.has_value() && sys.domain_horizon(*w, n + 1) == n;
                }
                row.status = ok ? NiceoneStatus::Pass : NiceoneStatus::Inconclusive;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

} // namespace drshift
