#pragma once

#include "towerdyn/conditions.hpp"
#include "towerdyn/evidence.hpp"
#include "towerdyn/tower.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace towerdyn {

struct SimpleTerm {
    long long level = 0;
    DyadicSet support;
    Rational coeff;

    friend bool operator==(const SimpleTerm&, const SimpleTerm&) = default;
};

/// Finite linear combination of indicators of level-fiber sets. Canonical
/// form: per level the supports of distinct terms are disjoint (one term per
/// value), zero coefficients dropped, terms ordered by (level, value), so
/// structural equality is equality almost everywhere.
class SimpleFunction {
public:
    SimpleFunction() = default;

    explicit SimpleFunction(std::vector<SimpleTerm> raw) {
        std::map<long long, std::vector<const SimpleTerm*>> by_level;
        for (const auto& t : raw)
            if (!t.support.is_empty() && !t.coeff.is_zero()) by_level[t.level].push_back(&t);

        for (const auto& [level, terms] : by_level) {
            std::vector<Rational> cuts;
            for (const SimpleTerm* t : terms)
                for (const auto& iv : t->support.intervals()) {
                    cuts.push_back(iv.lo);
                    cuts.push_back(iv.hi);
                }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

            std::map<Rational, std::vector<DyadicInterval>> by_value;
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                Rational sum;
                for (const SimpleTerm* t : terms)
                    if (t->support.contains(cuts[i])) sum += t->coeff;
                if (!sum.is_zero()) by_value[sum].push_back({cuts[i], cuts[i + 1]});
            }
            for (auto& [value, ivs] : by_value)
                terms_.push_back({level, DyadicSet(std::move(ivs)), value});
        }
    }

    static SimpleFunction indicator(const LeveledSet& s, Rational coeff = Rational(1)) {
        std::vector<SimpleTerm> raw;
        for (const auto& [level, fiber] : s.parts()) raw.push_back({level, fiber, coeff});
        return SimpleFunction(std::move(raw));
    }

    const std::vector<SimpleTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SimpleFunction shifted_levels(long long d) const {
        SimpleFunction out = *this;
        for (auto& t : out.terms_) t.level += d;
        return out;
    }

    friend SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) {
        std::vector<SimpleTerm> raw = a.terms_;
        raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
        return SimpleFunction(std::move(raw));
    }

    friend SimpleFunction operator*(const Rational& c, const SimpleFunction& f) {
        if (c.is_zero()) return SimpleFunction();
        SimpleFunction out = f;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    friend SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) {
        return a + (Rational(-1) * b);
    }

    friend bool operator==(const SimpleFunction&, const SimpleFunction&) = default;

private:
    std::vector<SimpleTerm> terms_;
};

/// T_f^n phi = phi o f^n: each indicator chi_A becomes chi_{f^-n(A)}, so term
/// levels shift by -n while fibers and coefficients stay put.
inline SimpleFunction apply_op(const SimpleFunction& phi, long long n) {
    return phi.shifted_levels(-n);
}

/// ||phi||_p^p for integer p >= 1, exact.
inline Rational lp_norm_pow(const TowerSystem& sys, const SimpleFunction& phi, long long p) {
    if (p < 1) throw std::invalid_argument("lp_norm_pow: p must be >= 1");
    Rational total;
    for (const auto& t : phi.terms())
        total += t.coeff.abs().pow(p) * sys.density(t.level).integrate(t.support);
    return total;
}

struct RationalInterval {
    Rational lo, hi;
};

/// Certified enclosure of ||phi||_p^p for rational p = u/v: each |coeff|^p is
/// bracketed by a binary-search v-th root enclosure of width 2^-precision.
inline RationalInterval lp_norm_pow_enclosure(const TowerSystem& sys, const SimpleFunction& phi,
                                              const Rational& p, int precision = 40) {
    if (!(p >= Rational(1))) throw std::invalid_argument("lp_norm_pow_enclosure: p must be >= 1");
    if (p.is_integer()) {
        Rational exact = lp_norm_pow(sys, phi, static_cast<long long>(p.num()));
        return {exact, exact};
    }
    long long u = static_cast<long long>(p.num());
    long long v = static_cast<long long>(p.den());
    RationalInterval total{Rational(0), Rational(0)};
    for (const auto& t : phi.terms()) {
        Rational target = t.coeff.abs().pow(u);
        // root in [lo, hi] with lo^v <= target <= hi^v
        Rational lo(0), hi = max(Rational(1), target);
        for (int i = 0; i < precision; ++i) {
            Rational mid = (lo + hi) / Rational(2);
            if (mid.pow(v) <= target) lo = mid;
            else hi = mid;
        }
        Rational mass = sys.density(t.level).integrate(t.support);
        total.lo += lo * mass;
        total.hi += hi * mass;
    }
    return total;
}

struct FrechetResult {
    Rational value;
    bool attained = false;  // whether some xi > 0 realizes the infimum
};

/// Fréchet metric d(phi, psi) = inf_{xi>0} (mu(|phi-psi| >= xi) + xi), exact.
/// With g = |phi-psi| simple, the distribution function is a step function:
/// the infimum is min over the distinct values v_1 > ... > v_r of
/// (mu(g > v_i) + v_i), together with mu(g > 0) as the xi -> 0 candidate.
inline FrechetResult frechet(const TowerSystem& sys, const SimpleFunction& phi,
                             const SimpleFunction& psi) {
    SimpleFunction diff = phi - psi;
    std::map<Rational, Rational> mass_by_value;  // |value| -> mu
    for (const auto& t : diff.terms())
        mass_by_value[t.coeff.abs()] += sys.density(t.level).integrate(t.support);

    FrechetResult result;
    Rational above;  // mu(g > v) for the current value v, built from the top
    bool first = true;
    for (auto it = mass_by_value.rbegin(); it != mass_by_value.rend(); ++it) {
        Rational candidate = above + it->first;  // xi -> v_i from above
        if (first || candidate < result.value) {
            result.value = candidate;
            result.attained = false;
        }
        first = false;
        above += it->second;
        // xi = v_i itself is feasible and attains mu(g >= v_i) + v_i
        Rational at_value = above + it->first;
        if (at_value < result.value || at_value == result.value) {
            if (at_value < result.value) result.value = at_value;
            result.attained = true;
        }
    }
    if (first || above < result.value) {  // xi -> 0 candidate: mu(g > 0)
        result.value = above;
        result.attained = false;
    }
    return result;
}

struct InverseOrbitReport {
    std::vector<Rational> norm_pows;  // ||T_f^-n(delta chi_B)||_p^p, n = 1..H
    Rational floor_bound;             // certified limsup floor (0 when none)
    bool floor_certified = false;
    std::vector<long long> certified_steps;  // the K_n realizing the floor
    bool tails_vanish = false;
};

/// Inverse-orbit rigidity probe: ||T_f^-n(delta chi_B)||_p^p = delta^p mu(f^n(B)).
/// On the bdp wandering level the pigeonhole chain certifies a limsup floor of
/// delta^p * lambda(C); on Kitai-side systems the sequence just vanishes.
inline InverseOrbitReport inverse_orbit_floor(const TowerSystem& sys, const LeveledSet& B,
                                              const Rational& delta, long long p, long long horizon) {
    if (!(delta > Rational(0))) throw std::invalid_argument("inverse_orbit_floor: delta must be positive");
    if (horizon < 1) throw std::invalid_argument("inverse_orbit_floor: horizon must be >= 1");

    InverseOrbitReport report;
    Rational scale = delta.pow(p);
    for (long long n = 1; n <= horizon; ++n)
        report.norm_pows.push_back(scale * measure(sys, B.shifted(n)));
    report.tails_vanish = decay_evidence(report.norm_pows).decays;

    if (sys.kind() == TowerSystem::Kind::bdp && B.parts().size() == 1 && B.fiber_at(0)) {
        long long max_block = 0;
        while (true) {
            long long b = max_block + 1;
            long long worst = block_start(b) + ((1LL << b) - 1) * 4 * b + 2 * b;
            if (worst > horizon) break;
            ++max_block;
        }
        if (max_block >= 1) {
            KscFailureCertificate cert = ksc_failure_certificate(sys, B, max_block);
            if (cert.verified && cert.floor_value > Rational(0)) {
                report.floor_certified = true;
                report.floor_bound = scale * cert.fiber_length;
                for (const auto& row : cert.rows) report.certified_steps.push_back(row.position);
            }
        }
    }
    return report;
}

}  // namespace towerdyn
