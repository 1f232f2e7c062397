#pragma once

#include "qfock/fock.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfock {

/// Flat lexicographic comparison on part sequences (component-major); used
/// only as a deterministic tie-break among incomparable multipartitions.
inline bool flat_lex_less(const Multipartition& a, const Multipartition& b) {
    for (int k = 1; k <= std::min(a.rank(), b.rank()); ++k) {
        if (a.component(k) != b.component(k))
            return a.component(k).parts() < b.component(k).parts();
    }
    return a.rank() < b.rank();
}

/// Picks one label among the dominance-maximal offenders; injectable so the
/// order-independence of the result can itself be tested.
using MaximalTieBreak = std::function<size_t(const std::vector<Multipartition>&)>;

inline size_t default_tie_break(const std::vector<Multipartition>& maximal) {
    size_t best = 0;
    for (size_t i = 1; i < maximal.size(); ++i)
        if (flat_lex_less(maximal[best], maximal[i])) best = i;
    return best;
}

/// The correction loop shared by the level-1 algorithm and the higher-level
/// recursion: repeatedly subtracts bar-symmetric multiples of lower canonical
/// vectors from a bar-invariant candidate until every coefficient away from
/// mu lies in qZ[q].
///
///  - `lower_vector(nu)` must return the canonical vector labelled nu; the
///    recursion guarantees nu is strictly lower, so this always terminates.
///  - `on_select(nu)` runs before each subtraction so callers can assert
///    the theory-imposed constraints on the selected label.
inline FockVector strip_to_canonical(
    FockVector a, const Multipartition& mu,
    const std::function<FockVector(const Multipartition&)>& lower_vector,
    const std::function<void(const Multipartition&)>& on_select = {},
    const MaximalTieBreak& tie_break = default_tie_break) {
    if (a.coeff(mu) != LaurentPoly(1))
        throw std::logic_error("strip_to_canonical: leading coefficient is not 1");
    while (true) {
        std::vector<Multipartition> offending;
        for (const auto& [la, c] : a.terms())
            if (!(la == mu) && !c.in_qZq()) offending.push_back(la);
        if (offending.empty()) break;
        std::vector<Multipartition> maximal;
        for (const auto& nu : offending) {
            bool dominated = false;
            for (const auto& other : offending)
                if (!(other == nu) && dominates(other, nu)) { dominated = true; break; }
            if (!dominated) maximal.push_back(nu);
        }
        const Multipartition nu = maximal[tie_break(maximal) % maximal.size()];
        if (on_select) on_select(nu);
        const BarSymmetric alpha = bar_symmetric_part(a.coeff(nu));
        a -= lower_vector(nu).scaled(alpha.poly());
        if (!a.coeff(nu).in_qZq())
            throw std::logic_error("strip_to_canonical: correction did not clear label " +
                                   display_multipartition(nu));
    }
    return a;
}

/// A(mu): divided powers along the ladder decomposition of mu applied to the
/// empty vector, innermost ladder first.  Requires mu e-regular.
inline FockVector level1_auxiliary_vector(const Partition& mu, int e, int s1) {
    if (!is_regular(mu, e))
        throw std::invalid_argument("level1_auxiliary_vector: partition is not e-regular");
    FockVector v = FockVector::standard(FockContext(e, {s1}), Multipartition::empty(1));
    for (const auto& step : ladder_decomposition(mu, e, s1))
        v = apply_f_divided(v, step.residue, step.count);
    return v;
}

/// Level-1 canonical basis vectors for e-regular partitions, memoized per
/// (e, s1).  Safe for concurrent use.
class LltBasis {
public:
    LltBasis(int e, int s1) : ctx_(e, {s1}) {}

    const FockContext& context() const { return ctx_; }

    FockVector canonical(const Partition& mu) {
        if (!is_regular(mu, ctx_.e))
            throw std::invalid_argument("LltBasis::canonical: partition is not e-regular");
        std::lock_guard<std::mutex> lock(mutex_);
        return compute(mu);
    }

private:
    FockVector compute(const Partition& mu) {
        auto it = cache_.find(mu);
        if (it != cache_.end()) return it->second;
        FockVector a = level1_auxiliary_vector(mu, ctx_.e, ctx_.charge[0]);
        const Multipartition label({mu});
        if (a.coeff(label) != LaurentPoly(1))
            throw std::logic_error("LltBasis: auxiliary vector is not unitriangular at " +
                                   display_multipartition(label));
        for (const auto& [la, c] : a.terms())
            if (!dominates(label, la))
                throw std::logic_error("LltBasis: auxiliary vector support exceeds " +
                                       display_multipartition(label));
        FockVector g = strip_to_canonical(
            std::move(a), label,
            [this](const Multipartition& nu) { return compute(nu.component(1)); },
            [&](const Multipartition& nu) {
                if (!is_regular(nu.component(1), ctx_.e))
                    throw std::logic_error("LltBasis: stripping selected a non-regular label");
                if (!dominates(label, nu) || nu == label)
                    throw std::logic_error("LltBasis: stripping selected a non-lower label");
            });
        return cache_.emplace(mu, std::move(g)).first->second;
    }

    FockContext ctx_;
    std::map<Partition, FockVector> cache_;
    std::mutex mutex_;
};

}  // namespace qfock
