#pragma once

#include "qfock/laurent.hpp"
#include "qfock/partition.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfock {

/// Ambient data of a Fock space: modulus e and the residue charge.
struct FockContext {
    int e = 2;
    std::vector<int> charge;  // residues, canonical representatives in [0, e)

    FockContext() = default;
    FockContext(int e_, std::vector<int> charge_) : e(e_), charge(std::move(charge_)) {
        Charge check(e, charge);  // validates and canonicalizes
        charge = check.residues();
    }

    int rank() const { return static_cast<int>(charge.size()); }
    Charge to_charge() const { return Charge(e, charge); }

    friend bool operator==(const FockContext& a, const FockContext& b) {
        return a.e == b.e && a.charge == b.charge;
    }
    friend bool operator!=(const FockContext& a, const FockContext& b) { return !(a == b); }
};

/// A finitely supported vector in the Fock space: multipartition -> Laurent
/// coefficient.  Zero coefficients are dropped eagerly.
class FockVector {
public:
    using TermMap = std::map<Multipartition, LaurentPoly, MpOrder>;

    explicit FockVector(FockContext ctx) : ctx_(std::move(ctx)) {}

    static FockVector standard(FockContext ctx, const Multipartition& la) {
        FockVector v(std::move(ctx));
        v.check_rank(la);
        v.terms_.emplace(la, LaurentPoly(1));
        return v;
    }

    const FockContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    LaurentPoly coeff(const Multipartition& la) const {
        auto it = terms_.find(la);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add_term(const Multipartition& la, const LaurentPoly& c) {
        if (c.is_zero()) return;
        check_rank(la);
        auto [it, inserted] = terms_.emplace(la, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FockVector& operator+=(const FockVector& o) {
        check_context(o);
        for (const auto& [la, c] : o.terms_) add_term(la, c);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        check_context(o);
        for (const auto& [la, c] : o.terms_) add_term(la, -c);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }

    FockVector scaled(const LaurentPoly& c) const {
        FockVector r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [la, x] : terms_) r.terms_.emplace(la, x * c);
        return r;
    }

    /// Applies f coefficient-wise; drops terms that become zero.
    template <typename F>
    FockVector mapped(F&& f) const {
        FockVector r(ctx_);
        for (const auto& [la, x] : terms_) {
            LaurentPoly y = f(x);
            if (!y.is_zero()) r.terms_.emplace(la, std::move(y));
        }
        return r;
    }

    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const FockVector& a, const FockVector& b) { return !(a == b); }

private:
    void check_rank(const Multipartition& la) const {
        if (la.rank() != ctx_.rank())
            throw std::invalid_argument("FockVector: multipartition rank does not match context");
    }
    void check_context(const FockVector& o) const {
        if (!(ctx_ == o.ctx_)) throw std::invalid_argument("FockVector: context mismatch");
    }

    FockContext ctx_;
    TermMap terms_;
};

namespace detail {

/// N(la, n) for addable n and M(la, n) for removable n, computed in one sweep
/// over the merged node lists of one residue.
///   N(la, n) = #addable i-nodes above n - #removable i-nodes above n
///   M(la, n) = #removable i-nodes below n - #addable i-nodes below n
struct NodeExponents {
    std::vector<std::pair<NodeRef, long long>> addable;    // node, N
    std::vector<std::pair<NodeRef, long long>> removable;  // node, M
};

inline NodeExponents node_exponents(const Multipartition& la, int i, const Charge& s) {
    NodeExponents out;
    const auto add = addable_nodes(la, i, s);
    const auto rem = removable_nodes(la, i, s);
    const long long total_add = static_cast<long long>(add.size());
    const long long total_rem = static_cast<long long>(rem.size());
    long long seen_add = 0, seen_rem = 0;
    size_t ia = 0, ir = 0;
    while (ia < add.size() || ir < rem.size()) {
        // a node is never both addable and removable, so the merge is strict
        if (ir == rem.size() || (ia < add.size() && node_above(add[ia], rem[ir]))) {
            out.addable.emplace_back(add[ia], seen_add - seen_rem);
            ++seen_add;
            ++ia;
        } else {
            const long long below_rem = total_rem - seen_rem - 1;
            const long long below_add = total_add - seen_add;
            out.removable.emplace_back(rem[ir], below_rem - below_add);
            ++seen_rem;
            ++ir;
        }
    }
    return out;
}

}  // namespace detail

/// f_i on a standard basis vector: sum over addable i-nodes with exponent N.
inline FockVector apply_f(const FockVector& v, int i) {
    FockVector out(v.context());
    const Charge s = v.context().to_charge();
    for (const auto& [la, c] : v.terms()) {
        const auto exps = detail::node_exponents(la, i, s);
        for (const auto& [n, N] : exps.addable)
            out.add_term(add_node(la, n), c * LaurentPoly::q(N));
    }
    return out;
}

/// e_i on a standard basis vector: sum over removable i-nodes with exponent M.
inline FockVector apply_e(const FockVector& v, int i) {
    FockVector out(v.context());
    const Charge s = v.context().to_charge();
    for (const auto& [la, c] : v.terms()) {
        const auto exps = detail::node_exponents(la, i, s);
        for (const auto& [n, M] : exps.removable)
            out.add_term(remove_node(la, n), c * LaurentPoly::q(M));
    }
    return out;
}

/// The divided power f_i^(m) = f_i^m / [m]!, realized by iterating f_i and
/// dividing every coefficient exactly.  A division failure signals a bug.
inline FockVector apply_f_divided(const FockVector& v, int i, int m) {
    if (m < 1) throw std::invalid_argument("apply_f_divided: m must be >= 1");
    FockVector r = v;
    for (int k = 0; k < m; ++k) r = apply_f(r, i);
    if (m == 1) return r;
    const LaurentPoly fact = quantum_factorial(m);
    return r.mapped([&fact](const LaurentPoly& c) { return exact_div(c, fact); });
}

/// Weight data of a standard basis vector: the charge multiset (which fixes
/// the Lambda-part) together with the number of i-nodes for each residue.
struct WeightData {
    std::vector<int> charge_multiset;     // sorted residues of the charge
    std::vector<long long> node_counts;   // indexed by residue in [0, e)

    friend bool operator==(const WeightData& a, const WeightData& b) {
        return a.charge_multiset == b.charge_multiset && a.node_counts == b.node_counts;
    }
    friend bool operator!=(const WeightData& a, const WeightData& b) { return !(a == b); }
};

inline WeightData weight_of(const Multipartition& la, const Charge& s) {
    if (la.rank() != s.rank()) throw std::invalid_argument("weight_of: rank mismatch");
    WeightData w;
    w.charge_multiset = s.residues();
    std::sort(w.charge_multiset.begin(), w.charge_multiset.end());
    w.node_counts.assign(static_cast<size_t>(s.modulus()), 0);
    for (int k = 1; k <= la.rank(); ++k) {
        const Partition& p = la.component(k);
        for (int row = 1; row <= p.length(); ++row)
            for (int col = 1; col <= p.part(row); ++col)
                w.node_counts[static_cast<size_t>(node_residue(NodeRef{row, col, k}, s))] += 1;
    }
    return w;
}

/// <h_i, wt(la)> = #addable i-nodes - #removable i-nodes.
inline long long h_pairing(const Multipartition& la, int i, const Charge& s) {
    return static_cast<long long>(addable_nodes(la, i, s).size()) -
           static_cast<long long>(removable_nodes(la, i, s).size());
}

}  // namespace qfock
