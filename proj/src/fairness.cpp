#include "efx/fairness.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace efx {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw InternalError("rational with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

bool value_below(Value v, const Rational& r) {
    return static_cast<unsigned __int128>(v) * r.den < r.num;
}

bool value_at_least(Value v, const Rational& r) { return !value_below(v, r); }

namespace {

struct BundleSummary {
    std::vector<Value> value;      // per agent
    std::vector<Value> min_value;  // per agent; meaningful only if nonempty
    std::vector<int> min_item;     // -1 for empty bundles
};

BundleSummary summarize(const Instance& inst, const Allocation& alloc) {
    BundleSummary s;
    s.value.assign(inst.n, 0);
    s.min_value.assign(inst.n, std::numeric_limits<Value>::max());
    s.min_item.assign(inst.n, -1);
    for (std::size_t i = 0; i < alloc.owner.size(); ++i) {
        int a = alloc.owner[i];
        Value v = inst.values[i];
        s.value[a] += v;
        if (v < s.min_value[a]) {
            s.min_value[a] = v;
            s.min_item[a] = static_cast<int>(i);
        }
    }
    return s;
}

}  // namespace

bool strongly_envies(const Instance& inst, const Allocation& alloc, int envier, int envied) {
    validate_allocation(inst, alloc);
    if (envier < 0 || envier >= inst.n || envied < 0 || envied >= inst.n || envier == envied)
        throw PreconditionError("strongly_envies needs two distinct agent indices in range");
    BundleSummary s = summarize(inst, alloc);
    if (s.min_item[envied] < 0) return false;
    return s.value[envier] < s.value[envied] - s.min_value[envied];
}

std::optional<EfxWitness> check_efx(const Instance& inst, const Allocation& alloc) {
    validate_allocation(inst, alloc);
    BundleSummary s = summarize(inst, alloc);
    // threshold[j] = v(X_j) - min(X_j); bundles at threshold 0 are never envied.
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            if (i == j || s.min_item[j] < 0) continue;
            if (s.value[i] < s.value[j] - s.min_value[j])
                return EfxWitness{i, j, s.min_item[j]};
        }
    }
    return std::nullopt;
}

bool is_efx(const Instance& inst, const Allocation& alloc) {
    return !check_efx(inst, alloc).has_value();
}

Value max_gap(const Instance& inst, const Allocation& alloc) {
    validate_allocation(inst, alloc);
    std::vector<Value> bv = bundle_values(inst, alloc);
    auto [lo, hi] = std::minmax_element(bv.begin(), bv.end());
    return *hi - *lo;
}

Rational efx_lower_bound(const Instance& inst) {
    validate_instance(inst);
    std::vector<Value> sorted = inst.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t k = std::min<std::size_t>(inst.n - 1, sorted.size());
    Value top = 0;
    for (std::size_t t = 0; t < k; ++t) top += sorted[t];
    const Value total = total_value(inst);
    if (top >= total) return make_rational(0, 1);
    return make_rational(total - top, static_cast<std::uint64_t>(inst.n));
}

}  // namespace efx
