#pragma once

#include "towerdyn/evidence.hpp"
#include "towerdyn/tower.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerdyn {

enum class ShiftKind { bilateral, unilateral };

/// Weight sequence of a weighted backward shift, stored as exact p-th powers
/// so that every comparison stays rational. System-induced weights satisfy
/// w_k^p = mu(f^{k-1}(W)) / mu(f^k(W)).
class WeightSeq {
public:
    WeightSeq(ShiftKind kind, Rational p, std::function<Rational(long long)> pow_fn)
        : kind_(kind), p_(std::move(p)), pow_(std::move(pow_fn)) {}

    static WeightSeq from_system(const TowerSystem& sys, Rational p) {
        WeightSeq ws(ShiftKind::bilateral, std::move(p), [sys](long long k) {
            return sys.level_measure(k - 1) / sys.level_measure(k);
        });
        if (sys.kind() == TowerSystem::Kind::bdp)
            ws.structural_exceptional_ = [](long long h) { return bdp_exceptional_positions(h); };
        return ws;
    }

    ShiftKind kind() const { return kind_; }
    const Rational& p() const { return p_; }

    Rational weight_pow(long long k) const {
        if (kind_ == ShiftKind::unilateral && k < 1)
            throw std::invalid_argument("WeightSeq: unilateral weights start at k = 1");
        Rational v = pow_(k);
        if (!(v > Rational(0))) throw std::invalid_argument("WeightSeq: weights must be positive");
        return v;
    }

    Rational max_pow_over(long long lo, long long hi) const {
        Rational m = weight_pow(lo);
        for (long long k = lo + 1; k <= hi; ++k) m = max(m, weight_pow(k));
        return m;
    }

    const std::function<std::vector<long long>(long long)>& structural_exceptional() const {
        return structural_exceptional_;
    }

private:
    ShiftKind kind_;
    Rational p_;
    std::function<Rational(long long)> pow_;
    std::function<std::vector<long long>(long long)> structural_exceptional_;
};

/// Coordinate norms ||e_n||, stored as exact p-th powers.
class NormSeq {
public:
    NormSeq(ShiftKind kind, Rational p, std::function<Rational(long long)> pow_fn)
        : kind_(kind), p_(std::move(p)), pow_(std::move(pow_fn)) {}

    /// ||e_n||^p = mu(f^n(W)).
    static NormSeq from_system(const TowerSystem& sys, Rational p) {
        NormSeq ns(ShiftKind::bilateral, std::move(p),
                   [sys](long long n) { return sys.level_measure(n); });
        if (sys.kind() == TowerSystem::Kind::bdp)
            ns.structural_exceptional_ = [](long long h) { return bdp_exceptional_positions(h); };
        return ns;
    }

    ShiftKind kind() const { return kind_; }
    const Rational& p() const { return p_; }

    Rational norm_pow(long long n) const {
        if (kind_ == ShiftKind::unilateral && n < 1)
            throw std::invalid_argument("NormSeq: unilateral norms start at n = 1");
        Rational v = pow_(n);
        if (!(v > Rational(0))) throw std::invalid_argument("NormSeq: norms must be positive");
        return v;
    }

    const std::function<std::vector<long long>(long long)>& structural_exceptional() const {
        return structural_exceptional_;
    }

private:
    ShiftKind kind_;
    Rational p_;
    std::function<Rational(long long)> pow_;
    std::function<std::vector<long long>(long long)> structural_exceptional_;
};

struct ProductReport {
    std::vector<Rational> forward;   // prod_{j=1..k} w_j^p, k = 1..H
    std::vector<Rational> backward;  // escape products prod_{j=-k+1..0} w_j^-p
    std::vector<long long> small_products;  // {k >= 1 : forward product <= 1}
    Verdict mixing = Verdict::inconclusive;
    std::string mixing_note;
    Verdict hypercyclic = Verdict::inconclusive;
    std::vector<long long> growth_steps;
    std::vector<Rational> growth_values;
};

/// Partial-product criterion for bilateral weighted shifts. Infinitely many
/// forward products <= 1 rule out mixing; that family is only certified when
/// it is recognized (the bdp exceptional set, or a verified periodic pattern).
/// Products escaping to infinity in both directions are hypercyclicity
/// evidence.
inline ProductReport product_criterion(const WeightSeq& ws, long long horizon) {
    if (ws.kind() != ShiftKind::bilateral)
        throw std::invalid_argument("product_criterion: bilateral weights required");
    if (horizon < 1) throw std::invalid_argument("product_criterion: horizon must be >= 1");

    ProductReport report;
    Rational fwd(1), back(1);
    std::vector<Rational> fwd_recip, back_recip, escape_min;
    for (long long k = 1; k <= horizon; ++k) {
        fwd *= ws.weight_pow(k);
        back /= ws.weight_pow(-(k - 1));
        report.forward.push_back(fwd);
        report.backward.push_back(back);
        if (fwd <= Rational(1)) report.small_products.push_back(k);
        fwd_recip.push_back(fwd.reciprocal());
        back_recip.push_back(back.reciprocal());
        escape_min.push_back(min(fwd, back));
    }

    if (decay_evidence(fwd_recip).decays && decay_evidence(back_recip).decays) {
        report.mixing = Verdict::holds_to_horizon;
        report.mixing_note = "products escape in both directions";
    } else if (report.small_products.size() >= 3) {
        if (ws.structural_exceptional() &&
            report.small_products == ws.structural_exceptional()(horizon)) {
            report.mixing = Verdict::fails_with_certificate;
            report.mixing_note = "products <= 1 exactly on the (n, j, 2n) detour family";
        } else {
            // Periodic recognizer: q-periodic weights with a sub-unit period
            // product repeat forever.
            for (long long q = 1; q <= std::min<long long>(horizon / 3, 16); ++q) {
                bool periodic = true;
                for (long long k = -horizon + q; k <= horizon; ++k)
                    if (!(ws.weight_pow(k) == ws.weight_pow(k - q))) {
                        periodic = false;
                        break;
                    }
                if (periodic && report.forward[static_cast<size_t>(q - 1)] <= Rational(1)) {
                    report.mixing = Verdict::fails_with_certificate;
                    report.mixing_note = "periodic weights with period product <= 1";
                    break;
                }
            }
        }
    }

    SubseqEvidence growth = growing_subsequence(escape_min);
    report.growth_steps = std::move(growth.steps);
    report.growth_values = std::move(growth.values);
    report.hypercyclic = growth.decays ? Verdict::holds_to_horizon : Verdict::inconclusive;
    return report;
}

struct ShiftClassifyReport {
    std::vector<Rational> window_sup;  // per k, worst shifted norm power over the j-window
    Verdict mixing = Verdict::inconclusive;
    Rational tail_sup;
    std::vector<long long> obstruction;  // steps whose norms stay at or above the center norm
    Verdict hypercyclic = Verdict::inconclusive;
    std::vector<long long> subsequence;
    std::vector<Rational> subsequence_values;
    // Theorem-level caveat: the coordinate-norm criteria presuppose the
    // ambient min(|x_n|, ||e_n||) smallness condition on the space.
    std::string assumption_note = "assumes the ambient coordinate-norm condition";
};

/// Bilateral coordinate-norm criteria: hypercyclicity needs some increasing
/// (n_k) with e_{j-n_k}, e_{j+n_k} -> 0 for |j| <= J; mixing needs the full
/// sequences to vanish.
inline ShiftClassifyReport classify_bilateral(const NormSeq& ns, long long J, long long horizon) {
    if (ns.kind() != ShiftKind::bilateral)
        throw std::invalid_argument("classify_bilateral: bilateral norms required");
    if (J < 0 || horizon < 1) throw std::invalid_argument("classify_bilateral: need J >= 0, horizon >= 1");

    ShiftClassifyReport report;
    Rational baseline = ns.norm_pow(0);
    for (long long k = 1; k <= horizon; ++k) {
        Rational s(0);
        for (long long j = -J; j <= J; ++j)
            s = max(s, max(ns.norm_pow(j - k), ns.norm_pow(j + k)));
        report.window_sup.push_back(s);
        if (s >= baseline) report.obstruction.push_back(k);
    }

    DecayEvidence decay = decay_evidence(report.window_sup);
    report.tail_sup = decay.tail_sup;
    if (decay.decays) {
        report.mixing = Verdict::holds_to_horizon;
    } else if (J == 0 && ns.structural_exceptional() &&
               report.obstruction == ns.structural_exceptional()(horizon)) {
        report.mixing = Verdict::fails_with_certificate;
    }

    SubseqEvidence sub = decreasing_subsequence(report.window_sup);
    report.hypercyclic = sub.decays ? Verdict::holds_to_horizon : Verdict::inconclusive;
    report.subsequence = std::move(sub.steps);
    report.subsequence_values = std::move(sub.values);
    return report;
}

/// Unilateral analogue; only j = 0 matters there.
inline ShiftClassifyReport classify_unilateral(const NormSeq& ns, long long horizon) {
    if (ns.kind() != ShiftKind::unilateral)
        throw std::invalid_argument("classify_unilateral: unilateral norms required");
    if (horizon < 1) throw std::invalid_argument("classify_unilateral: horizon must be >= 1");

    ShiftClassifyReport report;
    Rational baseline = ns.norm_pow(1);
    for (long long k = 1; k <= horizon; ++k) {
        report.window_sup.push_back(ns.norm_pow(k));
        if (report.window_sup.back() >= baseline) report.obstruction.push_back(k);
    }

    DecayEvidence decay = decay_evidence(report.window_sup);
    report.tail_sup = decay.tail_sup;
    if (decay.decays) report.mixing = Verdict::holds_to_horizon;

    SubseqEvidence sub = decreasing_subsequence(report.window_sup);
    report.hypercyclic = sub.decays ? Verdict::holds_to_horizon : Verdict::inconclusive;
    report.subsequence = std::move(sub.steps);
    report.subsequence_values = std::move(sub.values);
    return report;
}

enum class NormExample { abel, diff };

/// Exact norms of the two sequence-space examples, evaluated on a finite
/// window x_1..x_N (zero beyond it):
///   abel: sup_N |sum_{n<=N} x_n/n|
///   diff: |x_1| + sup_n |x_{n+1}/(n+1) - x_n/n|
inline Rational example_norm(const std::vector<Rational>& x, NormExample which) {
    if (x.empty()) return Rational(0);
    if (which == NormExample::abel) {
        Rational sum, best;
        for (size_t i = 0; i < x.size(); ++i) {
            sum += x[i] / Rational(static_cast<long long>(i) + 1);
            best = max(best, sum.abs());
        }
        return best;
    }
    Rational best;
    for (size_t i = 0; i < x.size(); ++i) {
        Rational here = x[i] / Rational(static_cast<long long>(i) + 1);
        Rational next = i + 1 < x.size() ? x[i + 1] / Rational(static_cast<long long>(i) + 2) : Rational(0);
        best = max(best, (next - here).abs());
    }
    return x[0].abs() + best;
}

inline Rational harmonic_number(long long n) {
    Rational h;
    for (long long k = 1; k <= n; ++k) h += Rational(1, k);
    return h;
}

struct ProbeReport {
    std::vector<Rational> values;  // ||x_n e_n|| for n = 1..N
    Rational bound;
    bool divergent = false;  // last value exceeded the bound
};

/// Growth table of the coordinate projections on the witness x_n = n * H_n:
/// the norms ||x_n e_n|| grow like the harmonic numbers, so they eventually
/// exceed any fixed bound.
inline ProbeReport equicontinuity_probe(NormExample which, long long N, Rational bound = Rational(4)) {
    if (N < 1) throw std::invalid_argument("equicontinuity_probe: N must be >= 1");
    ProbeReport report;
    report.bound = std::move(bound);
    Rational h;  // running harmonic number
    std::vector<Rational> spike;
    for (long long n = 1; n <= N; ++n) {
        h += Rational(1, n);
        spike.assign(static_cast<size_t>(n), Rational(0));
        spike.back() = Rational(n) * h;
        report.values.push_back(example_norm(spike, which));
    }
    report.divergent = report.values.back() > report.bound;
    return report;
}

}  // namespace towerdyn
