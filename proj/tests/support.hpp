// Copyright 2026 The fscalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Shared generators and independent reference predicates for the test suites.
// The predicates here are written from the textbook formulas and never call the
// library function they are compared against.

#include "fscalc/params.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace fscalc::testing {

inline constexpr std::uint64_t kSeed = 0x5eed'f5ca'1c00'0001ULL;

class Gen {
public:
    explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    // Uniform rational in [lo, hi] with denominator at most max_den.
    Rat rational(const Rat& lo, const Rat& hi, std::int64_t max_den = 48) {
        std::int64_t d = integer(1, max_den);
        std::int64_t a = ceil(lo * Rat(d)), b = (hi * Rat(d)).floor();
        if (a > b) return lo;
        return Rat(integer(a, b), d);
    }

    // Rational on the grid step·ℤ inside [lo, hi].
    Rat grid(const Rat& lo, const Rat& hi, const Rat& step) {
        std::int64_t a = ceil(lo / step), b = (hi / step).floor();
        return Rat(integer(a, b)) * step;
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline SpaceParam sp(Scale sc, Rat s, Rat lam, Rat mu) {
    return SpaceParam{sc, Location::interior, std::move(s), ExtExp::from_recip(std::move(lam)),
                      ExtExp::from_recip(std::move(mu))};
}

inline SpaceParam F(Rat s, Rat lam, Rat mu = Rat(1, 2)) { return sp(Scale::F, std::move(s), std::move(lam), std::move(mu)); }
inline SpaceParam B(Rat s, Rat lam, Rat mu = Rat(1, 2)) { return sp(Scale::B, std::move(s), std::move(lam), std::move(mu)); }

inline Rat posp(const Rat& x) { return x.sign() > 0 ? x : Rat(0); }

// The "equivalently" form of the class-k condition: s > k − 1 + 1/p + (n−1)(1/p − 1)₊.
inline bool dk_equivalent_form(const Rat& s, const Rat& lam, int k, int n) {
    return s > Rat(k) - 1 + lam + Rat(n - 1) * posp(lam - 1);
}

// Single moves of the embedding rule set, as listed: R2 (same p), R3 (slope 1 towards
// larger p), R4 (towards smaller p at fixed s). Same scale assumed.
inline bool single_move(const SpaceParam& a, const SpaceParam& b, int n) {
    const Rat N(n);
    const bool q_ok = a.mu() >= b.mu();
    if (a == b) return true;
    if (a.lam() == b.lam() && (a.s > b.s || (a.s == b.s && q_ok))) return true;
    const Rat ia = a.s - N * a.lam(), ib = b.s - N * b.lam();
    if (a.s > b.s && ia >= ib && a.lam() > b.lam()) {
        if (a.scale == Scale::F || ia > ib || q_ok) return true;
    }
    if (a.s == b.s && q_ok && a.lam() < b.lam()) return true;
    return false;
}

// Closure of the single moves under up to three compositions. Intermediate spaces are
// drawn from the finitely many corner points spanned by a and b (every other choice is
// dominated by one of these).
inline bool embeds_by_composition(const SpaceParam& a, const SpaceParam& b, int n) {
    if (single_move(a, b, n)) return true;
    const Rat N(n);
    const Rat ia = a.s - N * a.lam(), ib = b.s - N * b.lam();
    std::vector<Rat> ss{a.s, b.s, ia + N * b.lam(), ib + N * a.lam()};
    std::vector<Rat> ls{a.lam(), b.lam(), (b.s - ia) / N, (a.s - ib) / N};
    std::vector<Rat> ms{a.mu(), b.mu()};
    std::vector<SpaceParam> mids;
    for (const auto& s : ss)
        for (const auto& l : ls) {
            if (l.sign() < 0 || (a.scale == Scale::F && l.sign() == 0)) continue;
            for (const auto& m : ms) mids.push_back(sp(a.scale, s, l, m));
        }
    for (const auto& c : mids) {
        if (!single_move(a, c, n)) continue;
        if (single_move(c, b, n)) return true;
        for (const auto& d : mids)
            if (single_move(c, d, n) && single_move(d, b, n)) return true;
    }
    return false;
}

}  // namespace fscalc::testing
