#pragma once

#include "towerdyn/dyadic_set.hpp"
#include "towerdyn/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace towerdyn {

/// Piecewise-constant positive density on [0,1) with dyadic breakpoints.
/// Piece i covers [breaks[i], breaks[i+1]) (the last piece runs to 1).
/// Canonical form merges adjacent pieces with equal values, so structural
/// equality is function equality.
class StepFunction {
public:
    StepFunction(std::vector<Rational> breaks, std::vector<Rational> values)
        : breaks_(std::move(breaks)), values_(std::move(values)) {
        if (breaks_.empty() || breaks_.size() != values_.size())
            throw std::invalid_argument("StepFunction: breakpoints and values must match and be non-empty");
        if (!(breaks_.front() == Rational(0)))
            throw std::invalid_argument("StepFunction: first breakpoint must be 0");
        for (size_t i = 0; i < breaks_.size(); ++i) {
            if (!breaks_[i].is_dyadic() || breaks_[i] < Rational(0) || breaks_[i] >= Rational(1))
                throw std::invalid_argument("StepFunction: breakpoints must be dyadic in [0,1)");
            if (i > 0 && !(breaks_[i - 1] < breaks_[i]))
                throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
            if (!(values_[i] > Rational(0)))
                throw std::invalid_argument("StepFunction: values must be positive");
        }
        canonicalize();
    }

    static StepFunction constant(Rational v) {
        return StepFunction({Rational(0)}, {std::move(v)});
    }

    /// Value `inside` on [span.lo, span.hi), `outside` on the rest of [0,1).
    static StepFunction plateau(const DyadicInterval& span, Rational inside, Rational outside) {
        std::vector<Rational> breaks, values;
        if (span.lo > Rational(0)) {
            breaks.push_back(Rational(0));
            values.push_back(outside);
        }
        breaks.push_back(span.lo);
        values.push_back(std::move(inside));
        if (span.hi < Rational(1)) {
            breaks.push_back(span.hi);
            values.push_back(outside);
        }
        return StepFunction(std::move(breaks), std::move(values));
    }

    size_t piece_count() const { return breaks_.size(); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Rational>& values() const { return values_; }

    const Rational& piece_lo(size_t i) const { return breaks_[i]; }
    Rational piece_hi(size_t i) const { return i + 1 < breaks_.size() ? breaks_[i + 1] : Rational(1); }

    const Rational& value_at(const Rational& x) const {
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        return values_[static_cast<size_t>(it - breaks_.begin()) - 1];
    }

    bool is_constant() const { return breaks_.size() == 1; }

    Rational min_value() const { return *std::min_element(values_.begin(), values_.end()); }
    Rational max_value() const { return *std::max_element(values_.begin(), values_.end()); }

    /// Exact integral over a dyadic set: sum of value times overlap length.
    Rational integrate(const DyadicSet& s) const {
        if (is_constant()) return values_[0] * s.measure();
        Rational total;
        size_t p = 0;
        for (const auto& iv : s.intervals()) {
            while (piece_hi(p) <= iv.lo) ++p;
            size_t q = p;
            Rational cursor = iv.lo;
            while (cursor < iv.hi) {
                Rational hi = min(piece_hi(q), iv.hi);
                total += values_[q] * (hi - cursor);
                cursor = hi;
                ++q;
            }
        }
        return total;
    }

    Rational total_mass() const { return integrate(DyadicSet::unit()); }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    void canonicalize() {
        std::vector<Rational> nb, nv;
        for (size_t i = 0; i < breaks_.size(); ++i) {
            if (!nv.empty() && nv.back() == values_[i]) continue;
            nb.push_back(std::move(breaks_[i]));
            nv.push_back(std::move(values_[i]));
        }
        breaks_ = std::move(nb);
        values_ = std::move(nv);
    }

    std::vector<Rational> breaks_;
    std::vector<Rational> values_;
};

/// Atomic subintervals of `domain` on which every function in `fs` is constant.
/// When grid_r > 0 the 2^-grid_r lattice is folded into the refinement as well.
inline std::vector<DyadicInterval> refine_pieces(const DyadicSet& domain,
                                                 const std::vector<const StepFunction*>& fs,
                                                 int grid_r = 0) {
    std::vector<Rational> cuts;
    for (const StepFunction* f : fs)
        for (const auto& b : f->breakpoints()) cuts.push_back(b);
    if (grid_r > 0) {
        Rational step = Rational::pow2(-grid_r);
        for (Rational x = step; x < Rational(1); x += step) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<DyadicInterval> pieces;
    for (const auto& iv : domain.intervals()) {
        auto it = std::upper_bound(cuts.begin(), cuts.end(), iv.lo);
        Rational cursor = iv.lo;
        while (cursor < iv.hi) {
            Rational hi = (it != cuts.end() && *it < iv.hi) ? *it : iv.hi;
            pieces.push_back({cursor, hi});
            cursor = hi;
            ++it;
        }
    }
    return pieces;
}

}  // namespace towerdyn
