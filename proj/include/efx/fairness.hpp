#pragma once

#include <optional>

#include "efx/model.hpp"

namespace efx {

// Exact non-negative rational, normalized (gcd(num, den) = 1, den >= 1).
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

Rational make_rational(std::uint64_t num, std::uint64_t den);
// v < r and v >= r with exact 128-bit cross multiplication.
bool value_below(Value v, const Rational& r);
bool value_at_least(Value v, const Rational& r);

// Agent i strongly envies agent j iff removing the least valuable item of
// X_j still leaves v(X_i) < v(X_j \ {x}). Empty X_j is never strongly envied;
// a zero-value least item means the comparison is against the full bundle.
bool strongly_envies(const Instance& inst, const Allocation& alloc, int envier, int envied);

struct EfxWitness {
    int envier = 0;
    int envied = 0;
    int removed_item = 0;  // least valuable item of the envied bundle, lowest index on ties
};

// nullopt iff the allocation is EFx. On a violation, returns the witness with
// the lexicographically smallest (envier, envied) pair. O(m + n^2).
std::optional<EfxWitness> check_efx(const Instance& inst, const Allocation& alloc);
bool is_efx(const Instance& inst, const Allocation& alloc);

// Largest pairwise bundle-value difference; 0 for a single agent.
Value max_gap(const Instance& inst, const Allocation& alloc);

// Exact per-bundle value floor over all EFx allocations:
// (v(M) - sum of the min(n-1, m) largest item values) / n, clamped at 0.
Rational efx_lower_bound(const Instance& inst);

}  // namespace efx
