#pragma once

#include "towerdyn/evidence.hpp"
#include "towerdyn/tower.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerdyn {

/// Per-step tolerance for horizon-bounded checks. The block schedule follows
/// the detour-block structure of the system (2^-N on block N); the generic
/// default is 2^-floor(log2 n).
class ToleranceSchedule {
public:
    static ToleranceSchedule log2_default() { return ToleranceSchedule(Kind::log2, Rational(0), "2^-floor(log2 n)"); }
    static ToleranceSchedule block() { return ToleranceSchedule(Kind::block, Rational(0), "2^-block(n)"); }
    static ToleranceSchedule fixed(Rational eps) {
        std::string note = "constant " + eps.to_string();
        return ToleranceSchedule(Kind::fixed, std::move(eps), std::move(note));
    }
    static ToleranceSchedule geometric(Rational ratio) {
        std::string note = "(" + ratio.to_string() + ")^n";
        return ToleranceSchedule(Kind::geometric, std::move(ratio), std::move(note));
    }

    static ToleranceSchedule for_system(const TowerSystem& sys) {
        switch (sys.kind()) {
            case TowerSystem::Kind::bdp: return block();
            case TowerSystem::Kind::geometric: return geometric(sys.rho());
            case TowerSystem::Kind::custom: break;
        }
        return log2_default();
    }

    Rational at(long long n) const {
        if (n < 1) throw std::invalid_argument("ToleranceSchedule: step must be >= 1");
        switch (kind_) {
            case Kind::fixed: return eps_;
            case Kind::log2: return Rational::pow2(-floor_log2(n));
            case Kind::block: return Rational::pow2(-address_of(n).n);
            case Kind::geometric: return eps_.pow(n);
        }
        return Rational(0);
    }

    const std::string& note() const { return note_; }

private:
    enum class Kind { log2, block, fixed, geometric };
    ToleranceSchedule(Kind k, Rational eps, std::string note)
        : kind_(k), eps_(std::move(eps)), note_(std::move(note)) {}

    Kind kind_;
    Rational eps_;
    std::string note_;
};

/// One witness B inside A at a fixed step n, with its three exact defects.
struct WitnessTriple {
    long long step = 0;   // n
    long long level = 0;  // m, the level carrying A and B
    DyadicSet witness;    // fiber of B
    Rational defect_a;    // mu(A \ B)
    Rational defect_back; // mu(f^-n(B))
    Rational defect_fwd;  // mu(f^n(B))
};

namespace detail {

inline Rational floor_to_grid(const Rational& x, int r) {
    Int scaled = (x.num() << static_cast<unsigned>(r)) / x.den();
    return Rational(std::move(scaled), Int(1) << static_cast<unsigned>(r));
}

struct CostedPiece {
    DyadicInterval iv;
    Rational budget_rate;  // density of the witness level
    Rational cost_rate;
    Rational ratio;        // cost_rate / budget_rate
};

// Discards pieces in decreasing ratio order (ties in fiber order) until the
// budget is exhausted. With keep_floor the minimum-ratio class is never
// discarded: on ratio-flat instances trimming rescales both tails without
// improving the rate, so the canonical maximal witness is returned instead.
// A fractional split lands on the exact dyadic point when it exists and is
// floored to the 2^-split_r grid otherwise (staying within budget).
inline DyadicSet greedy_discard(const DyadicSet& domain, std::vector<CostedPiece> pieces,
                                const Rational& budget_total, bool keep_floor, int split_r) {
    Rational floor_ratio = pieces.front().ratio;
    for (const auto& p : pieces) floor_ratio = min(floor_ratio, p.ratio);

    std::stable_sort(pieces.begin(), pieces.end(), [](const CostedPiece& a, const CostedPiece& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        return a.iv.lo < b.iv.lo;
    });

    std::vector<DyadicInterval> discarded;
    Rational budget = budget_total;
    for (const auto& p : pieces) {
        if (budget.is_zero()) break;
        if (keep_floor && !(p.ratio > floor_ratio)) break;
        Rational mass = p.budget_rate * p.iv.length();
        if (mass <= budget) {
            discarded.push_back(p.iv);
            budget -= mass;
        } else {
            Rational len = budget / p.budget_rate;
            if (!len.is_dyadic()) len = floor_to_grid(len, split_r);
            if (len > Rational(0)) discarded.push_back({p.iv.lo, p.iv.lo + len});
            break;
        }
    }
    if (discarded.empty()) return domain;
    return set_difference(domain, DyadicSet(std::move(discarded)));
}

}  // namespace detail

/// Exact greedy witness for one step n: discards the common-refinement pieces
/// of largest cost ratio (d_{m-n}+d_{m+n})/d_m within the budget mu(A\B) <= eps.
/// The tail objective is linear over pieces, so the greedy selection is the
/// fractional-knapsack optimum.
inline WitnessTriple optimal_witness(const TowerSystem& sys, long long m, const DyadicSet& A,
                                     long long n, const Rational& eps, int split_r = 20) {
    if (!(eps > Rational(0))) throw std::invalid_argument("optimal_witness: eps must be positive");
    if (A.is_empty()) throw std::invalid_argument("optimal_witness: A is empty");

    StepFunction dm = sys.density(m);
    StepFunction db = sys.density(m - n);
    StepFunction df = sys.density(m + n);

    std::vector<detail::CostedPiece> pieces;
    for (const auto& iv : refine_pieces(A, {&dm, &db, &df})) {
        Rational bud = dm.value_at(iv.lo);
        Rational cost = db.value_at(iv.lo) + df.value_at(iv.lo);
        Rational ratio = cost / bud;
        pieces.push_back({iv, std::move(bud), std::move(cost), std::move(ratio)});
    }

    DyadicSet B = detail::greedy_discard(A, std::move(pieces), eps, /*keep_floor=*/true, split_r);

    WitnessTriple w;
    w.step = n;
    w.level = m;
    w.defect_a = dm.integrate(set_difference(A, B));
    w.defect_back = db.integrate(B);
    w.defect_fwd = df.integrate(B);
    w.witness = std::move(B);
    return w;
}

struct MscReport {
    std::vector<WitnessTriple> triples;  // steps 1..H
    Verdict verdict = Verdict::inconclusive;
    long long first_violation = 0;  // 0 when none
    std::string schedule_note;
    std::string certificate_note;
};

/// Checks the full-sequence runaway condition localized to level m: at every
/// step n <= H the optimal witness must push all three defects under the
/// schedule. A constant-density floor yields an unconditional failure: then
/// mu(f^n(B)) = mu(B) >= mu(A) - eps_n for every candidate B.
inline MscReport check_msc(const TowerSystem& sys, long long m, const DyadicSet& A, long long horizon,
                           std::optional<ToleranceSchedule> schedule = std::nullopt) {
    if (horizon < 1) throw std::invalid_argument("check_msc: horizon must be >= 1");
    ToleranceSchedule sched = schedule ? *schedule : ToleranceSchedule::for_system(sys);

    MscReport report;
    report.schedule_note = sched.note();
    bool all_ok = true;
    for (long long n = 1; n <= horizon; ++n) {
        Rational eps = sched.at(n);
        WitnessTriple w = optimal_witness(sys, m, A, n, eps);
        bool ok = w.defect_a <= eps && w.defect_back <= eps && w.defect_fwd <= eps;
        if (!ok && report.first_violation == 0) report.first_violation = n;
        all_ok = all_ok && ok;
        report.triples.push_back(std::move(w));
    }
    if (all_ok) {
        report.verdict = Verdict::holds_to_horizon;
    } else if (sys.uniform_density_over(m - horizon, m + horizon) &&
               sys.density(m).integrate(A) > Rational(2) * sched.at(horizon)) {
        report.verdict = Verdict::fails_with_certificate;
        report.certificate_note =
            "constant-density floor: mu(f^n(B)) = mu(B) >= mu(A) - eps for every B inside A";
    } else {
        report.verdict = Verdict::inconclusive;
    }
    return report;
}

/// One row of the pigeonhole chain: the dyadic slice of rank `block` carrying
/// the most of C, the level (block, j, 2*block) it lands on, and the forward
/// measure there, each inequality re-verified by direct measure evaluation.
struct KscCertificateRow {
    long long block = 0;
    long long j = 0;
    Rational slice;            // lambda(C cap [(j-1)/2^block, j/2^block))
    Rational pigeonhole_bound; // lambda(C)/2^block
    long long position = 0;    // K_n
    Rational mu_forward;       // mu(f^{K_n}(B))
};

struct KscFailureCertificate {
    Rational fiber_length;  // lambda(C)
    std::vector<KscCertificateRow> rows;
    Rational floor_value;  // min over rows of mu_forward
    bool verified = false;
};

/// Pigeonhole failure certificate for the built-in counterexample system: for
/// B inside W with fiber C, every rank n owns a slice with lambda >= lambda(C)/2^n,
/// and pushing B onto the matching (n, j, 2n) detour level scales that slice by
/// 2^n, so mu(f^{K_n}(B)) >= lambda(C) along infinitely many K_n.
inline KscFailureCertificate ksc_failure_certificate(const TowerSystem& sys, const LeveledSet& B,
                                                     long long max_block) {
    if (sys.kind() != TowerSystem::Kind::bdp)
        throw std::invalid_argument("ksc_failure_certificate: built for the bdp system");
    if (B.parts().size() != 1 || !B.fiber_at(0))
        throw std::invalid_argument("ksc_failure_certificate: B must be supported on level 0");

    const DyadicSet& C = *B.fiber_at(0);
    KscFailureCertificate cert;
    cert.fiber_length = lebesgue(C);
    cert.verified = !C.is_empty();

    for (long long n = 1; n <= max_block; ++n) {
        KscCertificateRow row;
        row.block = n;
        row.pigeonhole_bound = cert.fiber_length / Rational::pow2(n);
        for (long long j = 1; j <= (1LL << n); ++j) {
            DyadicSet slice = set_intersect(
                C, DyadicSet::interval(Rational(j - 1, 1LL << n), Rational(j, 1LL << n)));
            Rational len = lebesgue(slice);
            if (j == 1 || len > row.slice) {
                row.slice = len;
                row.j = j;
            }
        }
        row.position = position_of(LevelAddress::detour(n, row.j, 2 * n));
        row.mu_forward = measure(sys, B.shifted(row.position));

        bool chain_ok = row.slice >= row.pigeonhole_bound &&
                        row.mu_forward >= Rational::pow2(n) * row.slice &&
                        row.mu_forward >= cert.fiber_length;
        cert.verified = cert.verified && chain_ok;
        if (n == 1 || row.mu_forward < cert.floor_value) cert.floor_value = row.mu_forward;
        cert.rows.push_back(std::move(row));
    }
    return cert;
}

namespace detail {

struct SingleWitness {
    DyadicSet witness;
    std::vector<Rational> tail_back;  // mu(f^-n(B)), n = 1..H
    std::vector<Rational> tail_fwd;   // mu(f^n(B))
    std::vector<Rational> tail_max;
};

// Single-set search shared by the Kitai and Gethner-Shapiro checkers: the
// per-piece cost is the worst shifted density over the whole horizon, and the
// budget is spent in full (the trimmed prefix is the construction's witness).
inline SingleWitness single_witness_search(const TowerSystem& sys, long long m, const DyadicSet& A,
                                           const Rational& eps, long long horizon, int split_r) {
    StepFunction dm = sys.density(m);
    std::vector<StepFunction> shifted;
    shifted.reserve(2 * static_cast<size_t>(horizon));
    for (long long n = 1; n <= horizon; ++n) {
        shifted.push_back(sys.density(m - n));
        shifted.push_back(sys.density(m + n));
    }

    std::vector<const StepFunction*> all{&dm};
    for (const auto& f : shifted) all.push_back(&f);
    std::vector<DyadicInterval> atoms = refine_pieces(A, all);

    // Per-atom worst density over the horizon. Later levels rarely beat the
    // running floor, so whole functions below it are skipped.
    std::vector<Rational> cost(atoms.size(), Rational(0));
    Rational floor_bound(0);
    size_t since_refresh = 0;
    for (const auto& f : shifted) {
        if (f.max_value() <= floor_bound) continue;
        for (size_t p = 0; p < f.piece_count(); ++p) {
            const Rational& v = f.values()[p];
            if (v <= floor_bound) continue;
            Rational lo = f.piece_lo(p), hi = f.piece_hi(p);
            auto first = std::lower_bound(atoms.begin(), atoms.end(), lo,
                                          [](const DyadicInterval& a, const Rational& x) { return a.lo < x; });
            for (auto it = first; it != atoms.end() && it->lo < hi; ++it) {
                size_t idx = static_cast<size_t>(it - atoms.begin());
                if (v > cost[idx]) cost[idx] = v;
            }
        }
        if (++since_refresh >= 64) {
            since_refresh = 0;
            floor_bound = *std::min_element(cost.begin(), cost.end());
        }
    }

    std::vector<CostedPiece> pieces;
    pieces.reserve(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) {
        Rational bud = dm.value_at(atoms[i].lo);
        Rational ratio = cost[i] / bud;
        pieces.push_back({atoms[i], std::move(bud), cost[i], std::move(ratio)});
    }

    SingleWitness out;
    out.witness = greedy_discard(A, std::move(pieces), eps, /*keep_floor=*/false, split_r);
    for (long long n = 1; n <= horizon; ++n) {
        out.tail_back.push_back(shifted[2 * static_cast<size_t>(n - 1)].integrate(out.witness));
        out.tail_fwd.push_back(shifted[2 * static_cast<size_t>(n - 1) + 1].integrate(out.witness));
        out.tail_max.push_back(max(out.tail_back.back(), out.tail_fwd.back()));
    }
    return out;
}

}  // namespace detail

struct KscReport {
    DyadicSet witness;
    std::vector<Rational> tail_back;
    std::vector<Rational> tail_fwd;
    Rational achieved_sup;  // sup over n <= H of max(back, fwd)
    Rational tail_sup;      // sup over the second half of the horizon
    Verdict verdict = Verdict::inconclusive;
    std::optional<KscFailureCertificate> certificate;
};

/// Searches for a single B inside A with mu(A\B) <= eps whose forward and
/// backward tails vanish along the whole horizon. On the bdp wandering level
/// the pigeonhole chain supplies an unconditional failure certificate.
inline KscReport check_ksc(const TowerSystem& sys, long long m, const DyadicSet& A,
                           const Rational& eps, long long horizon, int split_r = 20) {
    if (!(eps > Rational(0))) throw std::invalid_argument("check_ksc: eps must be positive");
    if (horizon < 1) throw std::invalid_argument("check_ksc: horizon must be >= 1");

    detail::SingleWitness sw = detail::single_witness_search(sys, m, A, eps, horizon, split_r);
    KscReport report;
    report.witness = std::move(sw.witness);
    report.tail_back = std::move(sw.tail_back);
    report.tail_fwd = std::move(sw.tail_fwd);
    for (const auto& t : sw.tail_max) report.achieved_sup = max(report.achieved_sup, t);

    DecayEvidence decay = decay_evidence(sw.tail_max);
    report.tail_sup = decay.tail_sup;

    if (sys.kind() == TowerSystem::Kind::bdp && m == 0 && !report.witness.is_empty()) {
        // Largest block whose (n, j, 2n) levels all sit within the horizon.
        long long max_block = 0;
        while (true) {
            long long b = max_block + 1;
            long long worst = block_start(b) + ((1LL << b) - 1) * 4 * b + 2 * b;
            if (worst > horizon) break;
            ++max_block;
        }
        if (max_block >= 1) {
            auto cert = ksc_failure_certificate(sys, LeveledSet::single(0, report.witness), max_block);
            if (cert.verified && cert.floor_value > Rational(0)) report.certificate = std::move(cert);
        }
    }

    if (report.certificate)
        report.verdict = Verdict::fails_with_certificate;
    else
        report.verdict = decay.decays ? Verdict::holds_to_horizon : Verdict::inconclusive;
    return report;
}

struct GrcReport {
    DyadicSet witness;
    std::vector<long long> subsequence;
    std::vector<Rational> subsequence_tails;
    Verdict verdict = Verdict::inconclusive;
    std::string certificate_note;
};

/// Gethner-Shapiro variant: one B, but the tails only need to vanish along an
/// increasing subsequence, extracted greedily as the strict running minimum of
/// max(mu(f^-n B), mu(f^n B)).
inline GrcReport grc_witness(const TowerSystem& sys, long long m, const DyadicSet& A,
                             const Rational& eps, long long horizon, int split_r = 20) {
    if (!(eps > Rational(0))) throw std::invalid_argument("grc_witness: eps must be positive");
    if (horizon < 1) throw std::invalid_argument("grc_witness: horizon must be >= 1");

    detail::SingleWitness sw = detail::single_witness_search(sys, m, A, eps, horizon, split_r);
    SubseqEvidence sub = decreasing_subsequence(sw.tail_max);

    GrcReport report;
    report.witness = std::move(sw.witness);
    report.subsequence = std::move(sub.steps);
    report.subsequence_tails = std::move(sub.values);
    if (sub.decays) {
        report.verdict = Verdict::holds_to_horizon;
    } else if (sys.uniform_density_over(m - horizon, m + horizon) &&
               sys.density(m).integrate(A) > Rational(2) * eps) {
        report.verdict = Verdict::fails_with_certificate;
        report.certificate_note = "constant-density floor: no subsequence of tails can decrease";
    } else {
        report.verdict = Verdict::inconclusive;
    }
    return report;
}

struct GeneratorReport {
    std::vector<Rational> forward;   // mu(f^n(W)), n = 1..H
    std::vector<Rational> backward;  // mu(f^-n(W))
    std::vector<long long> exceptional;  // {n : mu(f^n(W)) >= 1}
    Verdict verdict = Verdict::inconclusive;
    Rational tail_sup;
    bool exceptional_is_structural = false;  // matches the (n, j, 2n) detour family
};

/// Generator tails mu(f^{+-n}(W)) up to the horizon. For a bounded-distortion
/// system these tails decide Kitai's Criterion outright.
inline GeneratorReport kitai_generator_check(const TowerSystem& sys, long long horizon) {
    if (horizon < 1) throw std::invalid_argument("kitai_generator_check: horizon must be >= 1");
    GeneratorReport report;
    std::vector<Rational> both;
    for (long long n = 1; n <= horizon; ++n) {
        report.forward.push_back(sys.level_measure(n));
        report.backward.push_back(sys.level_measure(-n));
        both.push_back(max(report.forward.back(), report.backward.back()));
        if (report.forward.back() >= Rational(1)) report.exceptional.push_back(n);
    }
    DecayEvidence decay = decay_evidence(both);
    report.tail_sup = decay.tail_sup;
    if (!report.exceptional.empty() && sys.kind() == TowerSystem::Kind::bdp) {
        report.exceptional_is_structural = report.exceptional == bdp_exceptional_positions(horizon);
        report.verdict = report.exceptional_is_structural ? Verdict::fails_with_certificate
                                                          : Verdict::inconclusive;
    } else {
        report.verdict = decay.decays ? Verdict::holds_to_horizon : Verdict::inconclusive;
    }
    return report;
}

struct LabelResult {
    Verdict verdict = Verdict::inconclusive;
    std::string basis;  // "closed-form", "certificate", "evidence at horizon H", ...
};

struct DynamicsReport {
    long long horizon = 0;
    Rational eps;
    MscReport msc;
    KscReport ksc;
    GrcReport gsc;
    SubseqEvidence hsc;
    GeneratorReport generator;
    std::map<std::string, LabelResult> labels;
};

/// Runs the shift-like checkers on the wandering level and maps the verdicts
/// onto operator labels, honoring the implication chain
/// Kitai => mixing => weak mixing => hypercyclic => recurrent. Labels are
/// horizon evidence unless a built-in closed form supplies the true limit.
inline DynamicsReport classify(const TowerSystem& sys, long long horizon,
                               const Rational& eps = Rational(1, 4)) {
    if (horizon < 1) throw std::invalid_argument("classify: horizon must be >= 1");
    DyadicSet A = DyadicSet::unit();
    long long m = sys.wandering_position();

    DynamicsReport report;
    report.horizon = horizon;
    report.eps = eps;
    report.msc = check_msc(sys, m, A, horizon);
    report.ksc = check_ksc(sys, m, A, eps, horizon);
    report.gsc = grc_witness(sys, m, A, eps, horizon);
    report.generator = kitai_generator_check(sys, horizon);

    std::vector<Rational> msc_max;
    for (const auto& w : report.msc.triples)
        msc_max.push_back(max(w.defect_a, max(w.defect_back, w.defect_fwd)));
    report.hsc = decreasing_subsequence(msc_max);

    std::string at_horizon = "evidence at horizon " + std::to_string(horizon);
    auto from_verdict = [&](Verdict v, const std::string& cert_basis) {
        return LabelResult{v, v == Verdict::fails_with_certificate ? cert_basis : at_horizon};
    };

    auto& labels = report.labels;
    labels["mixing"] = from_verdict(report.msc.verdict, report.msc.certificate_note);
    labels["kitai"] = from_verdict(report.ksc.verdict, "pigeonhole certificate");
    labels["weakly_mixing"] = from_verdict(report.gsc.verdict, report.gsc.certificate_note);
    labels["hypercyclic"] =
        LabelResult{report.hsc.decays ? Verdict::holds_to_horizon : Verdict::inconclusive, at_horizon};
    labels["recurrent"] = labels["hypercyclic"];

    switch (sys.kind()) {
        case TowerSystem::Kind::bdp:
            labels["mixing"] = {Verdict::holds_to_horizon, "closed-form (block witness rates 2^-N)"};
            labels["kitai"] = {Verdict::fails_with_certificate, "pigeonhole certificate"};
            break;
        case TowerSystem::Kind::geometric:
            labels["mixing"] = {Verdict::holds_to_horizon, "closed-form (generator tails rho^n)"};
            labels["kitai"] = {Verdict::holds_to_horizon,
                               "closed-form (bounded distortion, generator tails rho^n)"};
            break;
        case TowerSystem::Kind::custom:
            if (sys.uniform_density_over(m - horizon, m + horizon)) {
                labels["recurrent"] = {Verdict::holds_to_horizon, "trivial (n = 0 return)"};
                LabelResult floor{Verdict::fails_with_certificate, "constant-density floor"};
                labels["hypercyclic"] = floor;
                labels["weakly_mixing"] = floor;
                labels["mixing"] = floor;
                labels["kitai"] = floor;
            }
            break;
    }

    // Implications: holds flows to weaker labels, failure to stronger ones.
    const char* chain[] = {"recurrent", "hypercyclic", "weakly_mixing", "mixing", "kitai"};
    for (int i = 4; i >= 1; --i)
        if (labels[chain[i]].verdict == Verdict::holds_to_horizon)
            for (int k = i - 1; k >= 0; --k)
                if (labels[chain[k]].verdict != Verdict::holds_to_horizon)
                    labels[chain[k]] = {Verdict::holds_to_horizon,
                                        "implied by " + std::string(chain[i])};
    for (int i = 0; i < 4; ++i)
        if (labels[chain[i]].verdict == Verdict::fails_with_certificate)
            for (int k = i + 1; k <= 4; ++k)
                if (labels[chain[k]].verdict != Verdict::fails_with_certificate)
                    labels[chain[k]] = {Verdict::fails_with_certificate,
                                        "implied by failure of " + std::string(chain[i])};
    return report;
}

}  // namespace towerdyn
