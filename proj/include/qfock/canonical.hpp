#pragma once

#include "qfock/llt.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfock {

/// One computed canonical basis vector together with its label.
struct CanonicalBasisEntry {
    Multipartition label;
    FockVector vector;

    const FockContext& context() const { return vector.context(); }
};

/// The recursive algorithm computing canonical basis vectors G(mu) of the
/// tensor-product module inside the level-r Fock space, for e-multiregular
/// labels mu.  Vectors are memoized across both recursion axes (dropping the
/// first component, and shrinking its first partition), so one instance
/// should be reused for a whole batch.
class CanonicalBasis {
public:
    CanonicalBasis(int e, std::vector<int> charge) : ctx_(e, std::move(charge)) {}

    const FockContext& context() const { return ctx_; }

    /// Test hook: replaces the deterministic tie-break used when several
    /// incomparable labels are dominance-maximal during stripping.
    void set_tie_break(MaximalTieBreak tb) { tie_break_ = std::move(tb); }

    FockVector vector(const Multipartition& mu) {
        if (mu.rank() != ctx_.rank())
            throw std::invalid_argument("CanonicalBasis::vector: rank mismatch");
        if (!is_multiregular(mu, ctx_.e))
            throw std::invalid_argument("CanonicalBasis::vector: label is not e-multiregular");
        std::lock_guard<std::recursive_mutex> lock(mutex_);
        return compute(0, mu);
    }

    CanonicalBasisEntry entry(const Multipartition& mu) { return {mu, vector(mu)}; }

    /// Entries for every e-multiregular mu with |mu| <= n, smallest sizes
    /// first, first components growing, so each stripping step only ever
    /// needs labels that are already cached.
    std::vector<CanonicalBasisEntry> basis_up_to(long long n) {
        std::vector<Multipartition> labels;
        for (long long m = 0; m <= n; ++m)
            for (const auto& mu : multipartitions_of(m, ctx_.rank()))
                if (is_multiregular(mu, ctx_.e)) labels.push_back(mu);
        std::sort(labels.begin(), labels.end(), [](const Multipartition& a, const Multipartition& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            if (a.component(1).size() != b.component(1).size())
                return a.component(1).size() < b.component(1).size();
            return MpOrder{}(a, b);
        });
        std::vector<CanonicalBasisEntry> out;
        out.reserve(labels.size());
        for (const auto& mu : labels) out.push_back(entry(mu));
        return out;
    }

private:
    // level k: context (s_{k+1}, ..., s_r) in the spec's 1-based notation
    FockContext level_context(int level) const {
        return FockContext(ctx_.e, std::vector<int>(ctx_.charge.begin() + level, ctx_.charge.end()));
    }

    FockVector compute(int level, const Multipartition& mu) {
        const auto key = std::make_pair(level, mu);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        FockVector g = compute_fresh(level, mu);
        validate_entry(level, mu, g);
        return cache_.emplace(key, std::move(g)).first->second;
    }

    FockVector compute_fresh(int level, const Multipartition& mu) {
        const FockContext ctx = level_context(level);
        // step 1: the empty multipartition is its own canonical vector
        if (mu.is_empty()) return FockVector::standard(ctx, mu);
        // step 2: empty first component; lift the lower-rank vector,
        // re-indexing every support label through extend()
        if (mu.component(1).empty()) {
            const FockVector inner = compute(level + 1, truncate(mu));
            FockVector g(ctx);
            for (const auto& [nu, c] : inner.terms()) g.add_term(extend(nu), c);
            return g;
        }
        // step 3(a): clear the first component and recurse
        const FockVector g0 = compute(level, empty_first(mu));
        // step 3(b): apply divided powers along the ladders of the first
        // component, innermost ladder first
        FockVector a = g0;
        for (const auto& step : ladder_decomposition(mu.component(1), ctx.e, ctx.charge[0]))
            a = apply_f_divided(a, step.residue, step.count);
        if (a.coeff(mu) != LaurentPoly(1))
            throw std::logic_error("CanonicalBasis: auxiliary vector not unitriangular at " +
                                   display_multipartition(mu));
        for (const auto& [la, c] : a.terms())
            if (!recursion_geq(mu, la))
                throw std::logic_error("CanonicalBasis: auxiliary vector support not below " +
                                       display_multipartition(mu));
        // step 3(c): strip lower canonical vectors
        const long long first_size = mu.component(1).size();
        return strip_to_canonical(
            std::move(a), mu,
            [this, level](const Multipartition& nu) { return compute(level, nu); },
            [&, this](const Multipartition& nu) {
                if (!is_multiregular(nu, ctx.e))
                    throw std::logic_error("CanonicalBasis: stripping selected non-multiregular " +
                                           display_multipartition(nu));
                if (nu.component(1).size() >= first_size)
                    throw std::logic_error("CanonicalBasis: stripping selected " +
                                           display_multipartition(nu) +
                                           " whose first component is not smaller");
            },
            tie_break_);
    }

    /// The canonical-basis axioms, checked on every computed vector.
    void validate_entry(int level, const Multipartition& mu, const FockVector& g) const {
        const FockContext ctx = level_context(level);
        if (g.coeff(mu) != LaurentPoly(1))
            throw std::logic_error("CanonicalBasis: diagonal coefficient is not 1");
        const WeightData w = weight_of(mu, ctx.to_charge());
        for (const auto& [la, c] : g.terms()) {
            if (la == mu) continue;
            if (!c.in_qZq())
                throw std::logic_error("CanonicalBasis: off-diagonal coefficient not in qZ[q] at " +
                                       display_multipartition(la));
            if (!dominates(mu, la))
                throw std::logic_error("CanonicalBasis: support label not dominated by " +
                                       display_multipartition(mu));
            if (!(weight_of(la, ctx.to_charge()) == w))
                throw std::logic_error("CanonicalBasis: support label has different weight");
        }
    }

    FockContext ctx_;
    std::map<std::pair<int, Multipartition>, FockVector> cache_;
    MaximalTieBreak tie_break_ = default_tie_break;
    std::recursive_mutex mutex_;
};

/// One-shot convenience wrapper.
inline CanonicalBasisEntry canonical_vector(const Multipartition& mu, int e, std::vector<int> charge) {
    CanonicalBasis basis(e, std::move(charge));
    return basis.entry(mu);
}

/// Result of an e = infinity computation; records the finite modulus used.
struct EinfEntry {
    Multipartition label;
    FockVector vector;
    int e_used = 0;
};

inline int einf_modulus(const std::vector<long long>& charge_lifts, long long n_cap) {
    if (charge_lifts.empty()) throw std::invalid_argument("einf_modulus: empty charge");
    const auto [lo, hi] = std::minmax_element(charge_lifts.begin(), charge_lifts.end());
    return static_cast<int>(n_cap + (*hi - *lo) + 2);
}

inline std::vector<int> reduce_charge(const std::vector<long long>& lifts, int e) {
    std::vector<int> out;
    out.reserve(lifts.size());
    for (long long v : lifts) out.push_back(Charge::reduce(v, e));
    return out;
}

/// The e = infinity mode: runs the algorithm at a modulus large enough that
/// it cannot interfere (every label of size <= n_cap is multiregular there),
/// and confirms the output is unchanged at the next modulus.
inline EinfEntry canonical_vector_einf(const Multipartition& mu,
                                       const std::vector<long long>& charge_lifts,
                                       long long n_cap) {
    if (mu.size() > n_cap)
        throw std::invalid_argument("canonical_vector_einf: |mu| exceeds the size cap");
    if (static_cast<int>(charge_lifts.size()) != mu.rank())
        throw std::invalid_argument("canonical_vector_einf: rank mismatch");
    const int e = einf_modulus(charge_lifts, n_cap);
    CanonicalBasis run(e, reduce_charge(charge_lifts, e));
    CanonicalBasis confirm(e + 1, reduce_charge(charge_lifts, e + 1));
    const FockVector v = run.vector(mu);
    const FockVector w = confirm.vector(mu);
    // same coefficient family on the same labels, independent of the modulus
    auto vi = v.terms().begin();
    auto wi = w.terms().begin();
    for (; vi != v.terms().end() && wi != w.terms().end(); ++vi, ++wi)
        if (!(vi->first == wi->first) || vi->second != wi->second)
            throw std::runtime_error("canonical_vector_einf: output changed between moduli " +
                                     std::to_string(e) + " and " + std::to_string(e + 1));
    if (vi != v.terms().end() || wi != w.terms().end())
        throw std::runtime_error("canonical_vector_einf: output changed between moduli");
    return {mu, v, e};
}

/// Matrix view of a family of canonical basis entries: rows are support
/// labels, columns are entry labels, cells are the transition coefficients.
struct DecompositionMatrix {
    std::vector<Multipartition> rows;
    std::vector<Multipartition> cols;
    std::vector<std::vector<LaurentPoly>> cells;  // cells[i][j] for (row i, col j)
};

inline DecompositionMatrix decomposition_matrix(const std::vector<CanonicalBasisEntry>& entries,
                                                const std::optional<WeightData>& block = {}) {
    DecompositionMatrix m;
    if (entries.empty()) return m;
    const FockContext& ctx = entries.front().context();
    std::map<Multipartition, size_t, MpOrder> row_index;
    for (const auto& entry : entries) {
        if (entry.context() != ctx)
            throw std::invalid_argument("decomposition_matrix: entries from mixed contexts");
        if (block && !(weight_of(entry.label, ctx.to_charge()) == *block)) continue;
        m.cols.push_back(entry.label);
        for (const auto& [la, c] : entry.vector.terms()) row_index.emplace(la, 0);
    }
    for (auto& [la, idx] : row_index) {
        idx = m.rows.size();
        m.rows.push_back(la);
    }
    m.cells.assign(m.rows.size(), std::vector<LaurentPoly>(m.cols.size()));
    size_t j = 0;
    for (const auto& entry : entries) {
        if (block && !(weight_of(entry.label, ctx.to_charge()) == *block)) continue;
        for (const auto& [la, c] : entry.vector.terms()) m.cells[row_index.at(la)][j] = c;
        ++j;
    }
    return m;
}

}  // namespace qfock
