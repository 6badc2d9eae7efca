#pragma once

#include "towerdyn/lp.hpp"
#include "towerdyn/step_function.hpp"
#include "towerdyn/tower.hpp"

#include <random>
#include <vector>

namespace towerdyn::testgen {

using Rng = std::mt19937_64;

/// Random dyadic set given by a bitmask over the 2^-r grid.
inline DyadicSet random_set(Rng& rng, int r, double fill = 0.5) {
    std::bernoulli_distribution bit(fill);
    std::vector<DyadicInterval> ivs;
    long long atoms = 1LL << r;
    for (long long i = 0; i < atoms; ++i)
        if (bit(rng)) ivs.push_back({Rational(i, atoms), Rational(i + 1, atoms)});
    return DyadicSet(std::move(ivs));
}

inline DyadicSet random_nonempty_set(Rng& rng, int r, double fill = 0.5) {
    for (;;) {
        DyadicSet s = random_set(rng, r, fill);
        if (!s.is_empty()) return s;
    }
}

/// Random positive step density on the 2^-r grid with power-of-two values.
inline StepFunction random_density(Rng& rng, int r, int value_span = 3) {
    std::uniform_int_distribution<int> exp(-value_span, value_span);
    std::uniform_int_distribution<int> pieces_dist(1, 4);
    int pieces = pieces_dist(rng);
    long long atoms = 1LL << r;
    std::uniform_int_distribution<long long> cut(1, atoms - 1);
    std::vector<Rational> breaks{Rational(0)};
    for (int i = 1; i < pieces; ++i) breaks.push_back(Rational(cut(rng), atoms));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<Rational> values;
    for (size_t i = 0; i < breaks.size(); ++i) values.push_back(Rational::pow2(exp(rng)));
    return StepFunction(std::move(breaks), std::move(values));
}

/// Random custom tower system over a window of levels, constant 1 outside.
inline TowerSystem random_system(Rng& rng, long long half_window, int r) {
    std::map<long long, StepFunction> window;
    for (long long p = -half_window; p <= half_window; ++p)
        window.emplace(p, random_density(rng, r));
    return TowerSystem::custom("random", std::move(window), StepFunction::constant(Rational(1)));
}

inline LeveledSet random_leveled_set(Rng& rng, int r, long long level_span = 3, int max_levels = 3) {
    std::uniform_int_distribution<long long> level(-level_span, level_span);
    std::uniform_int_distribution<int> count(1, max_levels);
    LeveledSet s;
    int k = count(rng);
    for (int i = 0; i < k; ++i) s.insert(level(rng), random_nonempty_set(rng, r));
    return s;
}

inline SimpleFunction random_simple_function(Rng& rng, int r, long long level_span = 2,
                                             int max_terms = 3) {
    std::uniform_int_distribution<long long> level(-level_span, level_span);
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<long long> num(-8, 8);
    std::uniform_int_distribution<long long> den(1, 6);
    std::vector<SimpleTerm> raw;
    int k = count(rng);
    for (int i = 0; i < k; ++i)
        raw.push_back({level(rng), random_nonempty_set(rng, r), Rational(num(rng), den(rng))});
    return SimpleFunction(std::move(raw));
}

}  // namespace towerdyn::testgen
