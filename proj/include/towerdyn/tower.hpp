#pragma once

#include "towerdyn/dyadic_set.hpp"
#include "towerdyn/rational.hpp"
#include "towerdyn/step_function.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerdyn {

/// Address of a tower level: either a base level indexed by an integer, or a
/// detour level (n, j, l) with n >= 1, 1 <= j <= 2^n, 1 <= l <= 4n. The total
/// order is the spatial one: all detour levels of block n sit strictly between
/// base levels n and n+1, ordered lexicographically by (j, l).
struct LevelAddress {
    enum class Kind { base, detour };

    Kind kind = Kind::base;
    long long n = 0;
    long long j = 0;
    long long l = 0;

    static LevelAddress base(long long n) { return {Kind::base, n, 0, 0}; }

    static LevelAddress detour(long long n, long long j, long long l) {
        if (n < 1 || n > 60) throw std::invalid_argument("LevelAddress: detour block out of range");
        if (j < 1 || j > (1LL << n)) throw std::invalid_argument("LevelAddress: j out of range");
        if (l < 1 || l > 4 * n) throw std::invalid_argument("LevelAddress: l out of range");
        return {Kind::detour, n, j, l};
    }

    bool is_base() const { return kind == Kind::base; }

    friend bool operator==(const LevelAddress&, const LevelAddress&) = default;

    friend bool operator<(const LevelAddress& a, const LevelAddress& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.kind != b.kind) return a.is_base();  // base n precedes detours of block n
        if (a.is_base()) return false;
        if (a.j != b.j) return a.j < b.j;
        return a.l < b.l;
    }

    std::string to_string() const {
        if (is_base()) return "I_" + std::to_string(n);
        return "I_{" + std::to_string(n) + "," + std::to_string(j) + "}^" + std::to_string(l);
    }
};

/// Position of base level N (N >= 0) in the consecutive integer relabeling:
/// block_start(0) = 0 and block_start(N+1) = block_start(N) + 2^N * 4N + 1.
inline long long block_start(long long N) {
    if (N < 0 || N > 48) throw std::invalid_argument("block_start: block out of range");
    long long pos = 0;
    for (long long k = 0; k < N; ++k) pos += (1LL << k) * 4 * k + 1;
    return pos;
}

/// Bijection between integer positions and level addresses, strictly
/// increasing for the spatial order of the addresses.
inline long long position_of(const LevelAddress& a) {
    if (a.is_base()) return a.n <= 0 ? a.n : block_start(a.n);
    return block_start(a.n) + (a.j - 1) * 4 * a.n + a.l;
}

inline LevelAddress address_of(long long position) {
    if (position <= 0) return LevelAddress::base(position);
    long long N = 1;
    while (block_start(N + 1) <= position) ++N;
    long long start = block_start(N);
    if (position == start) return LevelAddress::base(N);
    long long offset = position - start - 1;
    return LevelAddress::detour(N, offset / (4 * N) + 1, offset % (4 * N) + 1);
}

/// An invertible dissipative system presented as an integer-indexed tower:
/// level p carries a positive step density on the unit fiber, and the map f
/// shifts levels by +1 while acting as the identity on fibers. The wandering
/// set W is the full fiber at position 0. Immutable after construction.
class TowerSystem {
public:
    enum class Kind { bdp, geometric, custom };

    static TowerSystem bdp() {
        TowerSystem s;
        s.kind_ = Kind::bdp;
        s.name_ = "bdp";
        return s;
    }

    /// Constant density rho^|p| at level p, 0 < rho < 1.
    static TowerSystem geometric(Rational rho) {
        if (!(rho > Rational(0)) || !(rho < Rational(1)))
            throw std::invalid_argument("geometric system: rho must lie in (0,1)");
        TowerSystem s;
        s.kind_ = Kind::geometric;
        s.name_ = "geometric(" + rho.to_string() + ")";
        s.rho_ = std::move(rho);
        return s;
    }

    /// Explicit densities over a finite window, a fallback rule elsewhere.
    static TowerSystem custom(std::string name, std::map<long long, StepFunction> window,
                              StepFunction fallback) {
        TowerSystem s;
        s.kind_ = Kind::custom;
        s.name_ = std::move(name);
        s.window_ = std::move(window);
        s.fallback_ = std::move(fallback);
        return s;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    long long wandering_position() const { return 0; }
    const Rational& rho() const { return rho_; }
    const std::map<long long, StepFunction>& window() const { return window_; }
    const std::optional<StepFunction>& fallback() const { return fallback_; }

    /// Density of the level at `position`, computed on demand.
    StepFunction density(long long position) const {
        switch (kind_) {
            case Kind::geometric:
                return StepFunction::constant(rho_.pow(position < 0 ? -position : position));
            case Kind::custom: {
                auto it = window_.find(position);
                return it != window_.end() ? it->second : *fallback_;
            }
            case Kind::bdp:
                break;
        }
        LevelAddress a = address_of(position);
        if (a.is_base()) return StepFunction::constant(Rational::pow2(a.n < 0 ? a.n : -a.n));
        // Detour level (n, j, l): weight s on the j-th dyadic subinterval of
        // rank n, 1/2^n elsewhere, with s = 2^l/2^n rising for l <= 2n and
        // s = 2^(4n-l)/2^n falling for l > 2n.
        Rational s = Rational::pow2((a.l <= 2 * a.n ? a.l : 4 * a.n - a.l) - a.n);
        DyadicInterval special{Rational(a.j - 1, 1LL << a.n), Rational(a.j, 1LL << a.n)};
        return StepFunction::plateau(special, std::move(s), Rational::pow2(-a.n));
    }

    /// mu of the full level at `position`; equals mu(f^position(W)).
    Rational level_measure(long long position) const { return density(position).total_mass(); }

    /// True when every level in [lo, hi] carries the same density.
    bool uniform_density_over(long long lo, long long hi) const {
        if (kind_ == Kind::geometric || kind_ == Kind::bdp) return false;
        StepFunction first = density(lo);
        for (long long p = lo + 1; p <= hi; ++p)
            if (!(density(p) == first)) return false;
        return true;
    }

private:
    TowerSystem() : rho_(0) {}

    Kind kind_ = Kind::custom;
    std::string name_;
    Rational rho_;
    std::map<long long, StepFunction> window_;
    std::optional<StepFunction> fallback_;
};

/// A finite-measure measurable set: finitely many levels, each carrying a
/// non-empty canonical dyadic fiber set.
class LeveledSet {
public:
    LeveledSet() = default;

    static LeveledSet single(long long level, DyadicSet fiber) {
        LeveledSet s;
        s.insert(level, std::move(fiber));
        return s;
    }

    void insert(long long level, DyadicSet fiber) {
        if (fiber.is_empty()) return;
        auto it = parts_.find(level);
        if (it == parts_.end()) parts_.emplace(level, std::move(fiber));
        else it->second = set_union(it->second, fiber);
    }

    const std::map<long long, DyadicSet>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }

    const DyadicSet* fiber_at(long long level) const {
        auto it = parts_.find(level);
        return it == parts_.end() ? nullptr : &it->second;
    }

    /// Image under f^n: positions shift by n, fibers are untouched.
    LeveledSet shifted(long long n) const {
        LeveledSet out;
        for (const auto& [level, fiber] : parts_) out.parts_.emplace(level + n, fiber);
        return out;
    }

    friend LeveledSet combine(const LeveledSet& a, const LeveledSet& b, SetOp op) {
        LeveledSet out;
        for (const auto& [level, fiber] : a.parts_) {
            const DyadicSet* other = b.fiber_at(level);
            out.insert(level, combine(fiber, other ? *other : DyadicSet(), op));
        }
        if (op == SetOp::unite || op == SetOp::symmetric_difference)
            for (const auto& [level, fiber] : b.parts_)
                if (!a.fiber_at(level)) out.insert(level, fiber);
        return out;
    }

    friend bool operator==(const LeveledSet&, const LeveledSet&) = default;

private:
    std::map<long long, DyadicSet> parts_;
};

inline LeveledSet push(const LeveledSet& s, long long n) { return s.shifted(n); }

/// mu(s) = sum over levels of the density-weighted fiber measure.
inline Rational measure(const TowerSystem& sys, const LeveledSet& s) {
    Rational total;
    for (const auto& [level, fiber] : s.parts()) total += sys.density(level).integrate(fiber);
    return total;
}

/// Exact distortion constant over k in [k_lo, k_hi]: the smallest K with
///   (1/K) mu(f^k W)/mu(W) <= mu(f^k B)/mu(B) <= K mu(f^k W)/mu(W)
/// for every B inside W. Densities are step functions, so the extreme ratios
/// are attained on pieces of the common refinement and the supremum is exact.
inline Rational distortion_constant(const TowerSystem& sys, long long k_lo, long long k_hi,
                                    int resolution_r = 0) {
    if (k_lo > k_hi) throw std::invalid_argument("distortion_constant: empty k range");
    StepFunction d0 = sys.density(sys.wandering_position());
    Rational mu_w = d0.total_mass();
    Rational best(1);
    for (long long k = k_lo; k <= k_hi; ++k) {
        StepFunction dk = sys.density(sys.wandering_position() + k);
        Rational average = dk.total_mass() / mu_w;
        for (const auto& piece : refine_pieces(DyadicSet::unit(), {&d0, &dk}, resolution_r)) {
            Rational ratio = dk.value_at(piece.lo) / d0.value_at(piece.lo);
            best = max(best, max(ratio / average, average / ratio));
        }
    }
    return best;
}

/// Positions k >= 1 with k <= horizon whose level is a detour level (n, j, 2n);
/// for the bdp system these are exactly the positions with mu(f^k(W)) >= 1.
inline std::vector<long long> bdp_exceptional_positions(long long horizon) {
    std::vector<long long> out;
    for (long long n = 1; block_start(n) < horizon; ++n) {
        for (long long j = 1; j <= (1LL << n); ++j) {
            long long pos = block_start(n) + (j - 1) * 4 * n + 2 * n;
            if (pos <= horizon) out.push_back(pos);
        }
    }
    return out;
}

}  // namespace towerdyn
