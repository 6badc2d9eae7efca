#pragma once

#include "towerdyn/rational.hpp"

#include <string_view>
#include <vector>

namespace towerdyn {

/// Limit conditions are semi-decided at a horizon. Verdicts carry that caveat:
/// only certificates (structural obstructions verified exactly) are final.
enum class Verdict { holds_to_horizon, fails_with_certificate, inconclusive };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds_to_horizon: return "holds-to-horizon";
        case Verdict::fails_with_certificate: return "fails-with-certificate";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Horizon evidence that a nonnegative sequence tends to zero: the supremum
/// over the second half of the horizon must have dropped to at most half the
/// overall supremum. t[i] is the value at step i+1.
struct DecayEvidence {
    bool decays = false;
    Rational overall_sup;
    Rational tail_sup;  // achieved tolerance: sup over steps > H/2
};

inline DecayEvidence decay_evidence(const std::vector<Rational>& t) {
    DecayEvidence e;
    if (t.empty()) return e;
    size_t half = t.size() / 2;
    for (size_t i = 0; i < t.size(); ++i) {
        e.overall_sup = max(e.overall_sup, t[i]);
        if (i >= half) e.tail_sup = max(e.tail_sup, t[i]);
    }
    e.decays = e.overall_sup.is_zero() || Rational(2) * e.tail_sup <= e.overall_sup;
    return e;
}

/// Greedy subsequence extraction: keep every step that strictly lowers the
/// running minimum (ties skipped, so the smallest index wins). Evidence of
/// decay along a subsequence requires at least a halving over the horizon.
struct SubseqEvidence {
    bool decays = false;
    std::vector<long long> steps;  // 1-based
    std::vector<Rational> values;
};

inline SubseqEvidence decreasing_subsequence(const std::vector<Rational>& t) {
    SubseqEvidence e;
    for (size_t i = 0; i < t.size(); ++i) {
        if (e.values.empty() || t[i] < e.values.back()) {
            e.steps.push_back(static_cast<long long>(i) + 1);
            e.values.push_back(t[i]);
        }
    }
    e.decays = e.values.size() >= 2 && Rational(2) * e.values.back() <= e.values.front();
    return e;
}

/// Dual extraction for escape-to-infinity evidence (running strict maximum,
/// at least a doubling over the horizon).
inline SubseqEvidence growing_subsequence(const std::vector<Rational>& t) {
    SubseqEvidence e;
    for (size_t i = 0; i < t.size(); ++i) {
        if (e.values.empty() || t[i] > e.values.back()) {
            e.steps.push_back(static_cast<long long>(i) + 1);
            e.values.push_back(t[i]);
        }
    }
    e.decays = e.values.size() >= 2 && e.values.back() >= Rational(2) * e.values.front();
    return e;
}

}  // namespace towerdyn
