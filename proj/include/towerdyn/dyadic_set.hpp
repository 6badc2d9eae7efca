#pragma once

#include "towerdyn/rational.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace towerdyn {

/// Half-open interval [lo, hi) with dyadic endpoints inside the unit fiber.
struct DyadicInterval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

enum class SetOp { unite, intersect, difference, symmetric_difference };

/// Finite disjoint union of dyadic intervals in [0,1), kept canonical:
/// sorted, pairwise disjoint, adjacent intervals merged. The empty list is the
/// empty set. Canonical form makes structural equality equal set equality.
class DyadicSet {
public:
    DyadicSet() = default;

    explicit DyadicSet(std::vector<DyadicInterval> intervals) : ivs_(std::move(intervals)) {
        for (const auto& iv : ivs_) validate(iv);
        normalize();
    }

    static DyadicSet empty() { return DyadicSet(); }
    static DyadicSet unit() { return interval(Rational(0), Rational(1)); }

    static DyadicSet interval(Rational lo, Rational hi) {
        DyadicInterval iv{std::move(lo), std::move(hi)};
        validate(iv);
        DyadicSet s;
        s.ivs_.push_back(std::move(iv));
        return s;
    }

    const std::vector<DyadicInterval>& intervals() const { return ivs_; }
    bool is_empty() const { return ivs_.empty(); }

    Rational measure() const {
        Rational total;
        for (const auto& iv : ivs_) total += iv.length();
        return total;
    }

    bool contains(const Rational& x) const {
        auto it = std::upper_bound(ivs_.begin(), ivs_.end(), x,
                                   [](const Rational& v, const DyadicInterval& iv) { return v < iv.lo; });
        if (it == ivs_.begin()) return false;
        --it;
        return x >= it->lo && x < it->hi;
    }

    bool contains(const DyadicSet& other) const {
        return combine(other, *this, SetOp::difference).is_empty();
    }

    DyadicSet complement() const { return combine(unit(), *this, SetOp::difference); }

    /// Set algebra via a linear merge-walk over both endpoint lists (canonical
    /// sets have strictly increasing endpoints, so membership just toggles).
    friend DyadicSet combine(const DyadicSet& a, const DyadicSet& b, SetOp op) {
        std::vector<const Rational*> ea, eb;
        ea.reserve(2 * a.ivs_.size());
        eb.reserve(2 * b.ivs_.size());
        for (const auto& iv : a.ivs_) {
            ea.push_back(&iv.lo);
            ea.push_back(&iv.hi);
        }
        for (const auto& iv : b.ivs_) {
            eb.push_back(&iv.lo);
            eb.push_back(&iv.hi);
        }

        DyadicSet out;
        size_t pa = 0, pb = 0;
        const Rational* cursor = nullptr;
        while (pa < ea.size() || pb < eb.size()) {
            const Rational* x;
            if (pb == eb.size()) x = ea[pa];
            else if (pa == ea.size()) x = eb[pb];
            else x = *ea[pa] <= *eb[pb] ? ea[pa] : eb[pb];

            if (cursor && *cursor < *x) {
                bool in_a = pa % 2 == 1, in_b = pb % 2 == 1;
                bool keep = false;
                switch (op) {
                    case SetOp::unite: keep = in_a || in_b; break;
                    case SetOp::intersect: keep = in_a && in_b; break;
                    case SetOp::difference: keep = in_a && !in_b; break;
                    case SetOp::symmetric_difference: keep = in_a != in_b; break;
                }
                if (keep) {
                    if (!out.ivs_.empty() && out.ivs_.back().hi == *cursor) out.ivs_.back().hi = *x;
                    else out.ivs_.push_back({*cursor, *x});
                }
            }
            cursor = x;
            if (pa < ea.size() && *ea[pa] == *x) ++pa;
            if (pb < eb.size() && *eb[pb] == *x) ++pb;
        }
        return out;
    }

    friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

    /// Canonical text form "lo1:hi1,lo2:hi2" with dyadic rationals as "num/2^k";
    /// the empty set is the empty string.
    std::string to_text() const {
        std::string out;
        for (const auto& iv : ivs_) {
            if (!out.empty()) out += ",";
            out += iv.lo.to_dyadic_string() + ":" + iv.hi.to_dyadic_string();
        }
        return out;
    }

    static DyadicSet parse_text(std::string_view text) {
        DyadicSet s;
        if (text.empty()) return s;
        size_t pos = 0;
        std::vector<DyadicInterval> ivs;
        while (pos <= text.size()) {
            size_t comma = text.find(',', pos);
            std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                     : comma - pos);
            size_t colon = item.find(':');
            if (colon == std::string_view::npos)
                throw std::invalid_argument("DyadicSet: expected 'lo:hi' in '" + std::string(item) + "'");
            DyadicInterval iv{Rational::parse(item.substr(0, colon)), Rational::parse(item.substr(colon + 1))};
            validate(iv);
            ivs.push_back(std::move(iv));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return DyadicSet(std::move(ivs));
    }

private:
    static void validate(const DyadicInterval& iv) {
        if (!iv.lo.is_dyadic() || !iv.hi.is_dyadic())
            throw std::invalid_argument("DyadicSet: endpoints must be dyadic rationals");
        if (iv.lo < Rational(0) || iv.hi > Rational(1) || !(iv.lo < iv.hi))
            throw std::invalid_argument("DyadicSet: need 0 <= lo < hi <= 1");
    }

    void normalize() {
        std::sort(ivs_.begin(), ivs_.end(),
                  [](const DyadicInterval& x, const DyadicInterval& y) { return x.lo < y.lo; });
        merge_adjacent();
    }

    // Overlapping input intervals are treated as their union.
    void merge_adjacent() {
        std::vector<DyadicInterval> merged;
        for (auto& iv : ivs_) {
            if (!merged.empty() && iv.lo <= merged.back().hi) {
                if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
            } else {
                merged.push_back(std::move(iv));
            }
        }
        ivs_ = std::move(merged);
    }

    std::vector<DyadicInterval> ivs_;
};

DyadicSet combine(const DyadicSet& a, const DyadicSet& b, SetOp op);

/// Lebesgue measure of a dyadic set: the sum of its interval lengths.
inline Rational lebesgue(const DyadicSet& s) { return s.measure(); }

inline DyadicSet set_union(const DyadicSet& a, const DyadicSet& b) { return combine(a, b, SetOp::unite); }
inline DyadicSet set_intersect(const DyadicSet& a, const DyadicSet& b) { return combine(a, b, SetOp::intersect); }
inline DyadicSet set_difference(const DyadicSet& a, const DyadicSet& b) { return combine(a, b, SetOp::difference); }

}  // namespace towerdyn
