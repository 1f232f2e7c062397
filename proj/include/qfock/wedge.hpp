#pragma once

#include "qfock/fock.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qfock {

/// An integer lift of a residue charge; the spacings s~_k - s~_{k+1} control
/// how faithfully the twisted structure approximates the untwisted one.
struct Multicharge {
    int e = 2;
    std::vector<long long> lifts;

    Multicharge() = default;
    Multicharge(int e_, std::vector<long long> lifts_) : e(e_), lifts(std::move(lifts_)) {
        if (e < 2) throw std::invalid_argument("Multicharge: modulus must be >= 2");
        if (lifts.empty()) throw std::invalid_argument("Multicharge: needs at least one entry");
    }

    int rank() const { return static_cast<int>(lifts.size()); }
    long long sum() const {
        long long s = 0;
        for (long long v : lifts) s += v;
        return s;
    }
    std::vector<int> residues() const {
        std::vector<int> out;
        out.reserve(lifts.size());
        for (long long v : lifts) out.push_back(Charge::reduce(v, e));
        return out;
    }

    friend bool operator==(const Multicharge& a, const Multicharge& b) {
        return a.e == b.e && a.lifts == b.lifts;
    }
};

/// The unique decomposition t = a + e(b-1) - er*m with a in [1,e], b in [1,r].
struct Abc {
    int a = 1;
    int b = 1;
    long long m = 0;
};

inline Abc abc_decompose(long long t, int e, int r) {
    const long long er = static_cast<long long>(e) * r;
    long long rep = ((t - 1) % er + er) % er + 1;  // representative in [1, er]
    Abc out;
    out.b = static_cast<int>((rep - 1) / e) + 1;
    out.a = static_cast<int>(rep - static_cast<long long>(e) * (out.b - 1));
    out.m = (rep - t) / er;
    return out;
}

/// Membership in the block 1 = b^{-1}(1): residue mod er lies in [1, e].
inline bool in_block_one(long long t, int e, int r) { return abc_decompose(t, e, r).b == 1; }

/// Order-preserving bijection Z \ 1 -> Z for the (e, r-1) straightening
/// context; defined only off the first block.
inline long long psi(long long t, int e, int r) {
    const Abc d = abc_decompose(t, e, r);
    if (d.b == 1) throw std::invalid_argument("psi: argument lies in the first block");
    return d.a + static_cast<long long>(e) * (d.b - 2) - static_cast<long long>(e) * (r - 1) * d.m;
}

/// X_c(v) = #([c, v] cap block-1); zero when v < c.
inline long long x_count(long long c, long long v, int e, int r) {
    long long n = 0;
    for (long long t = c; t <= v; ++t)
        if (in_block_one(t, e, r)) ++n;
    return n;
}

/// Y_c(v) = #([c, v] cap block-1 cap (v + eZ)); zero when v < c.
inline long long y_count(long long c, long long v, int e, int r) {
    long long n = 0;
    for (long long t = c; t <= v; ++t)
        if (in_block_one(t, e, r) && (v - t) % e == 0) ++n;
    return n;
}

/// The truncated prefix of a semi-infinite wedge: `entries` holds the first
/// tail_start() positions; beyond them the word continues with the fixed
/// tail s + 1 - i.
struct WedgeWord {
    std::vector<long long> entries;
    long long charge = 0;

    size_t tail_start() const { return entries.size(); }

    friend bool operator==(const WedgeWord& a, const WedgeWord& b) {
        return a.entries == b.entries && a.charge == b.charge;
    }
};

/// A formal combination of ordered wedge prefixes (all of one length).
class WedgeVector {
public:
    using TermMap = std::map<std::vector<long long>, LaurentPoly>;

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    LaurentPoly coeff(const std::vector<long long>& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add_term(const std::vector<long long>& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_scaled(const WedgeVector& o, const LaurentPoly& c) {
        if (c.is_zero()) return;
        for (const auto& [w, x] : o.terms_) add_term(w, x * c);
    }

    friend bool operator==(const WedgeVector& a, const WedgeVector& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const WedgeVector& a, const WedgeVector& b) { return !(a == b); }

private:
    TermMap terms_;
};

namespace detail {
struct WordHash {
    size_t operator()(const std::vector<long long>& w) const {
        size_t h = 1469598103934665603ull;
        for (long long v : w) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};
}  // namespace detail

/// Straightening engine for a fixed (e, r): rewrites arbitrary wedge words in
/// the ordered basis via the four two-letter relation families.
class WedgeAlgebra {
public:
    using RelationTerms = std::vector<std::pair<std::pair<long long, long long>, LaurentPoly>>;

    WedgeAlgebra(int e, int r) : e_(e), r_(r), er_(static_cast<long long>(e) * r) {
        if (e < 2 || r < 1) throw std::invalid_argument("WedgeAlgebra: need e >= 2, r >= 1");
    }

    int modulus() const { return e_; }
    int rank() const { return r_; }
    long long period() const { return er_; }

    /// The two-letter rule for an adjacent pair t <= u, as ordered pairs
    /// (x, y) with x > y and Laurent coefficients.  Equal letters give zero.
    RelationTerms relation(long long t, long long u) const {
        if (t > u) throw std::invalid_argument("relation: expects t <= u");
        RelationTerms out;
        if (t == u) return out;
        const Abc dt = abc_decompose(t, e_, r_);
        const Abc du = abc_decompose(u, e_, r_);
        const long long alpha = ((du.a - dt.a) % er_ + er_) % er_;
        const long long beta = ((static_cast<long long>(e_) * (du.b - dt.b)) % er_ + er_) % er_;
        std::map<std::pair<long long, long long>, LaurentPoly> acc;
        auto add = [&](long long x, long long y, const LaurentPoly& c) {
            auto [it, inserted] = acc.emplace(std::make_pair(x, y), c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) acc.erase(it);
            }
        };
        // each summation family stops at the first unordered pair
        auto add_family = [&](long long gap, long long first_m,
                              const std::function<LaurentPoly(long long)>& coeff) {
            for (long long m = first_m;; ++m) {
                const long long x = u - gap - er_ * m;
                const long long y = t + gap + er_ * m;
                if (x <= y) break;
                add(x, y, coeff(m));
            }
        };
        const LaurentPoly qp = LaurentPoly::q(1), qm = LaurentPoly::q(-1);
        if (alpha == 0 && beta == 0) {
            add(u, t, LaurentPoly(-1));
        } else if (beta == 0) {  // alpha > 0
            add(u, t, -qm);
            const LaurentPoly lead = qm * qm - LaurentPoly(1);  // q^-2 - 1
            add_family(alpha, 0, [&](long long m) { return lead * LaurentPoly::q(-2 * m); });
            add_family(0, 1, [&](long long m) { return -(lead * LaurentPoly::q(1 - 2 * m)); });
        } else if (alpha == 0) {  // beta > 0
            add(u, t, -qp);
            const LaurentPoly lead = qp * qp - LaurentPoly(1);  // q^2 - 1
            add_family(beta, 0, [&](long long m) { return lead * LaurentPoly::q(2 * m); });
            add_family(0, 1, [&](long long m) { return -(lead * LaurentPoly::q(2 * m - 1)); });
        } else {
            add(u, t, LaurentPoly(-1));
            const LaurentPoly qdiff = qp - qm;  // q - q^-1
            add_family(beta, 0, [&](long long m) { return qdiff * sym_quotient(2 * m + 1); });
            add_family(alpha, 0, [&](long long m) { return -(qdiff * sym_quotient(2 * m + 1)); });
            add_family(alpha + beta, 0, [&](long long m) { return qdiff * skew_quotient(2 * m + 2); });
            add_family(0, 1, [&](long long m) { return -(qdiff * skew_quotient(2 * m)); });
        }
        out.assign(acc.begin(), acc.end());
        return out;
    }

    /// Expands a word in the ordered basis.  Deterministic: always resolves
    /// the leftmost non-descent; results are memoized per word.
    const WedgeVector& straighten(const std::vector<long long>& word) {
        auto it = memo_.find(word);
        if (it != memo_.end()) return it->second;
        WedgeVector out;
        size_t pos = 0;
        bool sorted = true;
        for (size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] <= word[i + 1]) {
                pos = i;
                sorted = false;
                break;
            }
        }
        if (sorted) {
            out.add_term(word, LaurentPoly(1));
        } else if (word[pos] != word[pos + 1]) {  // equal letters: the word is zero
            for (const auto& [xy, c] : relation(word[pos], word[pos + 1])) {
                std::vector<long long> next = word;
                next[pos] = xy.first;
                next[pos + 1] = xy.second;
                out.add_scaled(straighten(next), c);
            }
        }
        return memo_.emplace(word, std::move(out)).first->second;
    }

    /// Straightening with an injected choice of which non-descent to resolve;
    /// not memoized.  Used to check schedule independence.
    WedgeVector straighten_with(const std::vector<long long>& word,
                                const std::function<size_t(const std::vector<size_t>&)>& pick) const {
        std::vector<size_t> ascents;
        for (size_t i = 0; i + 1 < word.size(); ++i)
            if (word[i] <= word[i + 1]) ascents.push_back(i);
        WedgeVector out;
        if (ascents.empty()) {
            out.add_term(word, LaurentPoly(1));
            return out;
        }
        const size_t pos = ascents[pick(ascents) % ascents.size()];
        if (word[pos] == word[pos + 1]) return out;
        for (const auto& [xy, c] : relation(word[pos], word[pos + 1])) {
            std::vector<long long> next = word;
            next[pos] = xy.first;
            next[pos + 1] = xy.second;
            out.add_scaled(straighten_with(next, pick), c);
        }
        return out;
    }

    size_t cache_size() const { return memo_.size(); }
    void clear_cache() { memo_.clear(); }

private:
    // (q^k + q^-k) / (q + q^-1) for odd k; (q^k - q^-k) / (q + q^-1) for even
    // k; both lie in Z[q, q^-1] and are computed once by exact division.
    const LaurentPoly& sym_quotient(long long k) const { return quotient_cached(k, sym_cache_); }
    const LaurentPoly& skew_quotient(long long k) const { return quotient_cached(k, skew_cache_); }

    const LaurentPoly& quotient_cached(long long k, std::map<long long, LaurentPoly>& cache) const {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        const bool sym = (&cache == &sym_cache_);
        const LaurentPoly num = sym ? LaurentPoly::q(k) + LaurentPoly::q(-k)
                                    : LaurentPoly::q(k) - LaurentPoly::q(-k);
        const LaurentPoly den = LaurentPoly::q(1) + LaurentPoly::q(-1);
        return cache.emplace(k, exact_div(num, den)).first->second;
    }

    int e_;
    int r_;
    long long er_;
    std::unordered_map<std::vector<long long>, WedgeVector, detail::WordHash> memo_;
    mutable std::map<long long, LaurentPoly> sym_cache_;
    mutable std::map<long long, LaurentPoly> skew_cache_;
};

namespace detail {

/// Generates the first `count` entries of the semi-infinite word encoding
/// (la, mc): per-component beta values are mapped into the er-periodic
/// numbering and merged in decreasing order.
inline std::vector<long long> wedge_entries(const Multipartition& la, const Multicharge& mc,
                                            size_t count, std::vector<int>* rows_used = nullptr) {
    const int e = mc.e, r = mc.rank();
    auto entry = [&](int k, int i) {
        const long long beta = la.component(k).part(i) + mc.lifts[static_cast<size_t>(k - 1)] + 1 - i;
        // beta = a - e*m with a in [1, e]
        const long long a = ((beta - 1) % e + e) % e + 1;
        const long long m = (a - beta) / e;
        return a + static_cast<long long>(e) * (k - 1) - static_cast<long long>(e) * r * m;
    };
    std::priority_queue<std::pair<long long, int>> heads;  // (value, component)
    std::vector<int> next_row(static_cast<size_t>(r) + 1, 1);
    for (int k = 1; k <= r; ++k) heads.emplace(entry(k, 1), k);
    if (rows_used) rows_used->assign(static_cast<size_t>(r) + 1, 0);
    std::vector<long long> out;
    out.reserve(count);
    while (out.size() < count) {
        auto [v, k] = heads.top();
        heads.pop();
        out.push_back(v);
        if (rows_used) (*rows_used)[static_cast<size_t>(k)] = next_row[static_cast<size_t>(k)];
        next_row[static_cast<size_t>(k)] += 1;
        heads.emplace(entry(k, next_row[static_cast<size_t>(k)]), k);
    }
    return out;
}

}  // namespace detail

/// Smallest prefix length covering every entry that differs from the charge
/// tail s + 1 - i and every partition row, plus er slack.
inline size_t default_truncation(const Multipartition& la, const Multicharge& mc) {
    if (la.rank() != mc.rank()) throw std::invalid_argument("default_truncation: rank mismatch");
    const long long s = mc.sum();
    const size_t er = static_cast<size_t>(mc.e) * static_cast<size_t>(mc.rank());
    size_t n = 8 * er + 8;
    while (true) {
        std::vector<int> rows_used;
        const auto entries = detail::wedge_entries(la, mc, n, &rows_used);
        size_t last_nontail = 0;
        for (size_t p = 0; p < entries.size(); ++p)
            if (entries[p] != s - static_cast<long long>(p)) last_nontail = p + 1;
        bool rows_ok = true;
        for (int k = 1; k <= mc.rank(); ++k)
            if (rows_used[static_cast<size_t>(k)] < la.component(k).length()) rows_ok = false;
        if (rows_ok && last_nontail + er <= n) return last_nontail + er;
        n *= 2;
    }
}

/// The first l entries of the ordered wedge encoding (la, mc).  Errors if l
/// does not cover the non-tail region and all partition rows.
inline WedgeWord encode(const Multipartition& la, const Multicharge& mc, size_t l) {
    if (la.rank() != mc.rank()) throw std::invalid_argument("encode: rank mismatch");
    if (l == 0) throw std::invalid_argument("encode: truncation length must be positive");
    const size_t er = static_cast<size_t>(mc.e) * static_cast<size_t>(mc.rank());
    std::vector<int> rows_used_at_l;
    const auto prefix = detail::wedge_entries(la, mc, l, &rows_used_at_l);
    const auto extended = detail::wedge_entries(la, mc, l + er);
    const long long s = mc.sum();
    for (size_t p = l; p < l + er; ++p)
        if (extended[p] != s - static_cast<long long>(p))
            throw std::invalid_argument("encode: truncation length too small (tail not reached)");
    for (int k = 1; k <= mc.rank(); ++k)
        if (rows_used_at_l[static_cast<size_t>(k)] < la.component(k).length())
            throw std::invalid_argument("encode: truncation length too small (partition rows cut)");
    return WedgeWord{prefix, s};
}

/// Inverse of encode: recovers (la, mc) from an ordered prefix and its
/// charge.  Errors unless the word is the encoding of some pair for the
/// ambient (e, r).
inline std::pair<Multipartition, Multicharge> decode(const WedgeWord& w, int e, int r) {
    const long long er = static_cast<long long>(e) * r;
    const long long s = w.charge;
    for (size_t i = 0; i + 1 < w.entries.size(); ++i)
        if (w.entries[i] <= w.entries[i + 1])
            throw std::invalid_argument("decode: word is not ordered");
    // extend with tail entries so every component reaches its at-rest zone
    std::vector<long long> full = w.entries;
    for (size_t p = w.entries.size(); p < w.entries.size() + 2 * static_cast<size_t>(er); ++p)
        full.push_back(s - static_cast<long long>(p));
    std::vector<std::vector<long long>> betas(static_cast<size_t>(r) + 1);
    for (long long t : full) {
        const Abc d = abc_decompose(t, e, r);
        betas[static_cast<size_t>(d.b)].push_back(d.a - static_cast<long long>(e) * d.m);
    }
    std::vector<long long> lifts;
    std::vector<Partition> comps;
    for (int k = 1; k <= r; ++k) {
        const auto& bs = betas[static_cast<size_t>(k)];
        if (bs.empty()) throw std::invalid_argument("decode: component receives no entries");
        const long long n_k = static_cast<long long>(bs.size());
        const long long lift = bs.back() + n_k - 1;
        std::vector<int> parts;
        for (long long i = 1; i <= n_k; ++i) {
            const long long part = bs[static_cast<size_t>(i - 1)] - lift - 1 + i;
            if (part < 0) throw std::invalid_argument("decode: negative part");
            if (i > 1 && part > parts.back()) throw std::invalid_argument("decode: parts increase");
            parts.push_back(static_cast<int>(part));
        }
        lifts.push_back(lift);
        comps.emplace_back(std::move(parts));
    }
    Multicharge mc(e, std::move(lifts));
    if (mc.sum() != s) throw std::invalid_argument("decode: charge mismatch");
    Multipartition la(std::move(comps));
    if (!(encode(la, mc, w.entries.size()) == w))
        throw std::invalid_argument("decode: word is not the encoding of a multipartition");
    return {std::move(la), std::move(mc)};
}

/// Coefficients b_{la,mu} of the bar involution on the twisted Fock space:
/// reverse the length-l prefix of |mu>, straighten, decode, and normalize by
/// the diagonal coefficient.
inline std::map<Multipartition, LaurentPoly, MpOrder> bar_coefficients(const Multipartition& mu,
                                                                       const Multicharge& mc,
                                                                       size_t l,
                                                                       WedgeAlgebra* algebra = nullptr) {
    WedgeAlgebra local(mc.e, mc.rank());
    WedgeAlgebra& alg = algebra ? *algebra : local;
    const WedgeWord w = encode(mu, mc, l);
    // fold the reversed prefix one letter at a time, keeping the running
    // expansion ordered
    WedgeVector v;
    v.add_term({w.entries.back()}, LaurentPoly(1));
    for (size_t j = 1; j < w.entries.size(); ++j) {
        const long long x = w.entries[w.entries.size() - 1 - j];
        WedgeVector next;
        for (const auto& [word, c] : v.terms()) {
            std::vector<long long> appended = word;
            appended.push_back(x);
            next.add_scaled(alg.straighten(appended), c);
        }
        v = std::move(next);
    }
    const LaurentPoly diag = v.coeff(w.entries);
    if (diag.is_zero())
        throw std::logic_error("bar_coefficients: diagonal coefficient vanishes at " +
                               display_multipartition(mu));
    std::map<Multipartition, LaurentPoly, MpOrder> out;
    for (const auto& [word, c] : v.terms()) {
        auto [la, found_mc] = decode(WedgeWord{word, w.charge}, mc.e, mc.rank());
        if (!(found_mc == mc))
            throw std::logic_error("bar_coefficients: straightening changed the multicharge");
        LaurentPoly b;
        try {
            b = exact_div(c, diag);
        } catch (const ExactDivisionError&) {
            throw std::logic_error("bar_coefficients: normalization is not exact at " +
                                   display_multipartition(la));
        }
        out.emplace(std::move(la), std::move(b));
    }
    return out;
}

/// Oracle session for one multicharge: cached bar columns (computed at the
/// default truncation and re-checked at l + er), the induced bar involution,
/// and canonical bases computed by the triangular correction loop.
class WedgeOracle {
public:
    explicit WedgeOracle(Multicharge mc)
        : mc_(std::move(mc)), ctx_(mc_.e, mc_.residues()), algebra_(mc_.e, mc_.rank()) {}

    const Multicharge& multicharge() const { return mc_; }
    const FockContext& context() const { return ctx_; }

    using Column = std::map<Multipartition, LaurentPoly, MpOrder>;

    const Column& bar_column(const Multipartition& la) {
        auto it = columns_.find(la);
        if (it != columns_.end()) return it->second;
        const size_t l = default_truncation(la, mc_);
        const size_t er = static_cast<size_t>(mc_.e) * static_cast<size_t>(mc_.rank());
        Column col = bar_coefficients(la, mc_, l, &algebra_);
        const Column recheck = bar_coefficients(la, mc_, l + er, &algebra_);
        if (!(col == recheck))
            throw std::logic_error("WedgeOracle: bar coefficients depend on the truncation length");
        return columns_.emplace(la, std::move(col)).first->second;
    }

    /// The bar involution applied to an arbitrary vector: semi-linear
    /// extension of the column data.
    FockVector bar_apply(const FockVector& v) {
        if (v.context() != ctx_) throw std::invalid_argument("WedgeOracle::bar_apply: context mismatch");
        FockVector out(ctx_);
        for (const auto& [la, c] : v.terms()) {
            const LaurentPoly cbar = c.bar();
            for (const auto& [nu, b] : bar_column(la)) out.add_term(nu, cbar * b);
        }
        return out;
    }

    /// Canonical basis vector computed within the weight space of mu, for any
    /// label (not only multiregular ones).
    const FockVector& canonical(const Multipartition& mu) {
        auto it = canonical_.find(mu);
        if (it != canonical_.end()) return it->second;
        compute_weight_space(mu);
        it = canonical_.find(mu);
        if (it == canonical_.end())
            throw std::logic_error("WedgeOracle: weight-space computation missed its own label");
        return it->second;
    }

private:
    void compute_weight_space(const Multipartition& mu) {
        const Charge charge = ctx_.to_charge();
        const WeightData weight = weight_of(mu, charge);
        std::vector<Multipartition> labels;
        for (const auto& la : multipartitions_of(mu.size(), mc_.rank()))
            if (weight_of(la, charge) == weight) labels.push_back(la);
        // topological order: a label waits for every strictly lower label in
        // the support of its bar column
        std::map<Multipartition, size_t, MpOrder> index;
        for (size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
        for (const auto& la : labels) {
            if (bar_column(la).count(la) == 0 || !(bar_column(la).at(la) == LaurentPoly(1)))
                throw std::logic_error("WedgeOracle: bar diagonal is not 1");
            for (const auto& [nu, b] : bar_column(la))
                if (index.find(nu) == index.end())
                    throw std::logic_error("WedgeOracle: bar column leaves the weight space");
        }
        std::vector<size_t> order;
        std::vector<bool> placed(labels.size(), false);
        while (order.size() < labels.size()) {
            bool progress = false;
            for (size_t i = 0; i < labels.size(); ++i) {
                if (placed[i]) continue;
                bool ready = true;
                for (const auto& [nu, b] : bar_column(labels[i]))
                    if (!(nu == labels[i]) && !placed[index.at(nu)]) { ready = false; break; }
                if (ready) {
                    placed[i] = true;
                    order.push_back(i);
                    progress = true;
                }
            }
            if (!progress) throw std::logic_error("WedgeOracle: bar matrix is not triangular");
        }
        std::vector<size_t> position(labels.size());
        for (size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
        for (size_t p = 0; p < order.size(); ++p) {
            const Multipartition& label = labels[order[p]];
            if (canonical_.find(label) != canonical_.end()) continue;
            canonical_.emplace(label, correct_to_invariant(label, position, index));
        }
    }

    /// Builds the unique bar-invariant vector with unitriangular expansion:
    /// repeatedly cancels the highest defect of bar(g) - g with a qZ[q]
    /// correction.
    FockVector correct_to_invariant(const Multipartition& label,
                                    const std::vector<size_t>& position,
                                    const std::map<Multipartition, size_t, MpOrder>& index) {
        FockVector g = FockVector::standard(ctx_, label);
        while (true) {
            const FockVector defect = bar_apply(g) - g;
            if (defect.is_zero()) break;
            const Multipartition* top = nullptr;
            size_t top_pos = 0;
            for (const auto& [nu, c] : defect.terms()) {
                const size_t pos = position[index.at(nu)];
                if (!top || pos > top_pos) {
                    top = &nu;
                    top_pos = pos;
                }
            }
            const LaurentPoly p = defect.coeff(*top);
            if (!(p.bar() == -p))
                throw std::logic_error("WedgeOracle: defect is not bar-antisymmetric");
            // solve delta - bar(delta) = p with delta in qZ[q]
            LaurentPoly delta;
            for (const auto& [exp, c] : p.terms())
                if (exp > 0) delta += LaurentPoly::monomial(c, exp);
            if ((delta - delta.bar()) != p)
                throw std::logic_error("WedgeOracle: defect correction failed");
            g.add_term(*top, delta);
        }
        if (g.coeff(label) != LaurentPoly(1))
            throw std::logic_error("WedgeOracle: canonical vector lost unitriangularity");
        for (const auto& [nu, c] : g.terms())
            if (!(nu == label) && !c.in_qZq())
                throw std::logic_error("WedgeOracle: canonical coefficient escapes qZ[q]");
        return g;
    }

    Multicharge mc_;
    FockContext ctx_;
    WedgeAlgebra algebra_;
    std::map<Multipartition, Column, MpOrder> columns_;
    std::map<Multipartition, FockVector, MpOrder> canonical_;
};

/// Well-spaced multicharge for a residue charge: adjacent gaps of at least
/// multiplier * (size + er + 1), rounded up into the right residue class.
inline Multicharge default_multicharge(int e, const std::vector<int>& charge, long long size,
                                       int multiplier = 1) {
    const Charge s(e, charge);
    const int r = s.rank();
    const long long min_gap =
        multiplier * (size + static_cast<long long>(e) * r + 1);
    std::vector<long long> lifts(static_cast<size_t>(r));
    lifts[static_cast<size_t>(r - 1)] = s.residue(r);
    for (int k = r - 1; k >= 1; --k) {
        long long gap = min_gap;
        const long long want = Charge::reduce(s.residue(k) - s.residue(k + 1), e);
        gap += Charge::reduce(want - gap, e);
        lifts[static_cast<size_t>(k - 1)] = lifts[static_cast<size_t>(k)] + gap;
    }
    return Multicharge(e, std::move(lifts));
}

/// Oracle with the spacing-stability safeguard: every result is computed at
/// the default spacing and at double spacing, and the two must agree.
class StabilizedOracle {
public:
    StabilizedOracle(int e, std::vector<int> charge, long long size_cap)
        : primary_(default_multicharge(e, charge, size_cap, 1)),
          doubled_(default_multicharge(e, charge, size_cap, 2)) {}

    const FockContext& context() const { return primary_.context(); }

    FockVector canonical(const Multipartition& mu) {
        FockVector a = primary_.canonical(mu);
        const FockVector b = doubled_.canonical(mu);
        if (!(a == b))
            throw std::runtime_error("StabilizedOracle: canonical vector differs between spacings at " +
                                     display_multipartition(mu));
        return a;
    }

    FockVector bar_apply(const FockVector& v) {
        FockVector a = primary_.bar_apply(v);
        const FockVector b = doubled_.bar_apply(v);
        if (!(a == b))
            throw std::runtime_error("StabilizedOracle: bar involution differs between spacings");
        return a;
    }

    WedgeOracle& primary() { return primary_; }
    WedgeOracle& doubled() { return doubled_; }

private:
    WedgeOracle primary_;
    WedgeOracle doubled_;
};

}  // namespace qfock
