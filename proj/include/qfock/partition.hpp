#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfock {

/// An integer partition: weakly decreasing positive parts, trailing zeros
/// never stored.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
            if (i > 0 && parts_[i - 1] < parts_[i])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    /// 1-based row access; rows beyond the last part are 0.
    int part(int row) const {
        if (row < 1) throw std::invalid_argument("Partition::part: row must be >= 1");
        return row <= length() ? parts_[row - 1] : 0;
    }

    long long size() const { return std::accumulate(parts_.begin(), parts_.end(), 0LL); }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

private:
    std::vector<int> parts_;
};

/// An ordered r-tuple of partitions, r >= 1.
class Multipartition {
public:
    explicit Multipartition(std::vector<Partition> components) : comps_(std::move(components)) {
        if (comps_.empty()) throw std::invalid_argument("Multipartition: needs at least one component");
    }
    Multipartition(std::initializer_list<Partition> components)
        : Multipartition(std::vector<Partition>(components)) {}

    static Multipartition empty(int r) {
        if (r < 1) throw std::invalid_argument("Multipartition::empty: r must be >= 1");
        return Multipartition(std::vector<Partition>(static_cast<size_t>(r)));
    }

    int rank() const { return static_cast<int>(comps_.size()); }
    /// 1-based component access.
    const Partition& component(int k) const {
        if (k < 1 || k > rank()) throw std::invalid_argument("Multipartition::component: out of range");
        return comps_[static_cast<size_t>(k - 1)];
    }
    const std::vector<Partition>& components() const { return comps_; }

    long long size() const {
        long long s = 0;
        for (const auto& p : comps_) s += p.size();
        return s;
    }
    bool is_empty() const {
        return std::all_of(comps_.begin(), comps_.end(), [](const Partition& p) { return p.empty(); });
    }

    friend bool operator==(const Multipartition& a, const Multipartition& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const Multipartition& a, const Multipartition& b) { return !(a == b); }
    friend bool operator<(const Multipartition& a, const Multipartition& b) { return a.comps_ < b.comps_; }

private:
    std::vector<Partition> comps_;
};

/// A box position (row, column, component), all 1-based.
struct NodeRef {
    int row = 1;
    int col = 1;
    int comp = 1;

    friend bool operator==(const NodeRef& a, const NodeRef& b) {
        return a.row == b.row && a.col == b.col && a.comp == b.comp;
    }
};

/// True if a is above b in the total order on addable/removable nodes:
/// smaller component first, then smaller row.
inline bool node_above(const NodeRef& a, const NodeRef& b) {
    return a.comp < b.comp || (a.comp == b.comp && a.row < b.row);
}

/// A residue tuple s in (Z/eZ)^r, stored with canonical representatives.
class Charge {
public:
    Charge(int e, std::vector<int> residues) : e_(e), residues_(std::move(residues)) {
        if (e_ < 2) throw std::invalid_argument("Charge: modulus must be >= 2");
        if (residues_.empty()) throw std::invalid_argument("Charge: needs at least one residue");
        for (auto& s : residues_) s = reduce(s, e_);
    }

    int modulus() const { return e_; }
    int rank() const { return static_cast<int>(residues_.size()); }
    /// 1-based.
    int residue(int k) const { return residues_[static_cast<size_t>(k - 1)]; }
    const std::vector<int>& residues() const { return residues_; }

    static int reduce(long long v, int e) {
        int r = static_cast<int>(v % e);
        return r < 0 ? r + e : r;
    }

    friend bool operator==(const Charge& a, const Charge& b) {
        return a.e_ == b.e_ && a.residues_ == b.residues_;
    }

private:
    int e_;
    std::vector<int> residues_;
};

/// Residue of a node: col - row + s_k modulo e.
inline int node_residue(const NodeRef& n, const Charge& s) {
    return Charge::reduce(static_cast<long long>(n.col) - n.row + s.residue(n.comp), s.modulus());
}

namespace detail {
inline void check_same_rank(const Multipartition& a, const Multipartition& b, const char* what) {
    if (a.rank() != b.rank())
        throw std::invalid_argument(std::string(what) + ": component count mismatch");
}
}  // namespace detail

/// Dominance order on r-multipartitions: accumulated partial sums of a
/// weakly exceed those of b at every component/row prefix.
inline bool dominates(const Multipartition& a, const Multipartition& b) {
    detail::check_same_rank(a, b, "dominates");
    long long base_a = 0, base_b = 0;
    for (int k = 1; k <= a.rank(); ++k) {
        const Partition& pa = a.component(k);
        const Partition& pb = b.component(k);
        long long sa = base_a, sb = base_b;
        const int rows = std::max(pa.length(), pb.length());
        for (int j = 1; j <= rows; ++j) {
            sa += pa.part(j);
            sb += pb.part(j);
            if (sa < sb) return false;
        }
        base_a = sa;
        base_b = sb;
    }
    return true;
}

inline bool dominates(const Partition& a, const Partition& b) {
    return dominates(Multipartition({a}), Multipartition({b}));
}

/// e-regularity: no e consecutive equal positive parts.
inline bool is_regular(const Partition& la, int e) {
    if (e < 2) throw std::invalid_argument("is_regular: modulus must be >= 2");
    for (int i = 1; i + e - 1 <= la.length(); ++i)
        if (la.part(i) == la.part(i + e - 1)) return false;
    return true;
}

inline bool is_multiregular(const Multipartition& la, int e) {
    for (const auto& p : la.components())
        if (!is_regular(p, e)) return false;
    return true;
}

/// Addable nodes of one component, top to bottom.
inline void component_addable(const Partition& p, int comp, std::vector<NodeRef>& out) {
    for (int row = 1; row <= p.length() + 1; ++row) {
        const int len = p.part(row);
        if (row == 1 || p.part(row - 1) > len) out.push_back(NodeRef{row, len + 1, comp});
    }
}

/// Removable nodes of one component, top to bottom.
inline void component_removable(const Partition& p, int comp, std::vector<NodeRef>& out) {
    for (int row = 1; row <= p.length(); ++row) {
        const int len = p.part(row);
        if (len > 0 && p.part(row + 1) < len) out.push_back(NodeRef{row, len, comp});
    }
}

/// All addable i-nodes, sorted from above to below.
inline std::vector<NodeRef> addable_nodes(const Multipartition& la, int i, const Charge& s) {
    if (la.rank() != s.rank()) throw std::invalid_argument("addable_nodes: rank mismatch");
    std::vector<NodeRef> all, out;
    for (int k = 1; k <= la.rank(); ++k) component_addable(la.component(k), k, all);
    for (const auto& n : all)
        if (node_residue(n, s) == Charge::reduce(i, s.modulus())) out.push_back(n);
    return out;
}

/// All removable i-nodes, sorted from above to below.
inline std::vector<NodeRef> removable_nodes(const Multipartition& la, int i, const Charge& s) {
    if (la.rank() != s.rank()) throw std::invalid_argument("removable_nodes: rank mismatch");
    std::vector<NodeRef> all, out;
    for (int k = 1; k <= la.rank(); ++k) component_removable(la.component(k), k, all);
    for (const auto& n : all)
        if (node_residue(n, s) == Charge::reduce(i, s.modulus())) out.push_back(n);
    return out;
}

inline Multipartition add_node(const Multipartition& la, const NodeRef& n) {
    if (n.comp < 1 || n.comp > la.rank()) throw std::invalid_argument("add_node: bad component");
    const Partition& p = la.component(n.comp);
    if (n.row < 1 || n.col != p.part(n.row) + 1 || (n.row > 1 && p.part(n.row - 1) < n.col))
        throw std::invalid_argument("add_node: node is not addable");
    std::vector<int> parts(p.parts());
    if (n.row > p.length()) parts.push_back(0);
    parts[static_cast<size_t>(n.row - 1)] += 1;
    std::vector<Partition> comps = la.components();
    comps[static_cast<size_t>(n.comp - 1)] = Partition(std::move(parts));
    return Multipartition(std::move(comps));
}

inline Multipartition remove_node(const Multipartition& la, const NodeRef& n) {
    if (n.comp < 1 || n.comp > la.rank()) throw std::invalid_argument("remove_node: bad component");
    const Partition& p = la.component(n.comp);
    if (n.row < 1 || n.row > p.length() || n.col != p.part(n.row) || p.part(n.row + 1) >= n.col)
        throw std::invalid_argument("remove_node: node is not removable");
    std::vector<int> parts(p.parts());
    parts[static_cast<size_t>(n.row - 1)] -= 1;
    std::vector<Partition> comps = la.components();
    comps[static_cast<size_t>(n.comp - 1)] = Partition(std::move(parts));
    return Multipartition(std::move(comps));
}

/// One non-empty ladder of a partition: nodes (i,j) with i+(e-1)(j-1) = index.
struct LadderStep {
    long long index = 0;  ///< the ladder number l
    int count = 0;        ///< nodes of the partition on this ladder
    int residue = 0;      ///< common residue s1 + 1 - l mod e

    friend bool operator==(const LadderStep& a, const LadderStep& b) {
        return a.index == b.index && a.count == b.count && a.residue == b.residue;
    }
};

/// Non-empty ladders of a partition in increasing ladder number.
inline std::vector<LadderStep> ladder_decomposition(const Partition& la, int e, int s1) {
    if (e < 2) throw std::invalid_argument("ladder_decomposition: modulus must be >= 2");
    std::vector<std::pair<long long, int>> counts;  // ladder number -> node count
    for (int row = 1; row <= la.length(); ++row) {
        for (int col = 1; col <= la.part(row); ++col) {
            const long long l = row + static_cast<long long>(e - 1) * (col - 1);
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [l](const auto& c) { return c.first == l; });
            if (it == counts.end()) counts.emplace_back(l, 1);
            else it->second += 1;
        }
    }
    std::sort(counts.begin(), counts.end());
    std::vector<LadderStep> out;
    out.reserve(counts.size());
    for (const auto& [l, c] : counts)
        out.push_back(LadderStep{l, c, Charge::reduce(s1 + 1 - l, e)});
    return out;
}

/// Drop the first component (r must be > 1).
inline Multipartition truncate(const Multipartition& mu) {
    if (mu.rank() <= 1) throw std::invalid_argument("truncate: rank must be > 1");
    return Multipartition(std::vector<Partition>(mu.components().begin() + 1, mu.components().end()));
}

/// Prepend an empty component.
inline Multipartition extend(const Multipartition& nu) {
    std::vector<Partition> comps;
    comps.reserve(nu.components().size() + 1);
    comps.emplace_back();
    comps.insert(comps.end(), nu.components().begin(), nu.components().end());
    return Multipartition(std::move(comps));
}

/// Replace the first component by the empty partition.
inline Multipartition empty_first(const Multipartition& mu) {
    std::vector<Partition> comps = mu.components();
    comps[0] = Partition();
    return Multipartition(std::move(comps));
}

inline Charge truncate(const Charge& s) {
    if (s.rank() <= 1) throw std::invalid_argument("truncate: charge rank must be > 1");
    return Charge(s.modulus(), std::vector<int>(s.residues().begin() + 1, s.residues().end()));
}

/// The recursion preorder: mu >= nu iff |mu^(1)| > |nu^(1)| or mu^(1)
/// dominates nu^(1).  Finer than dominance on equal-size multipartitions.
inline bool recursion_geq(const Multipartition& mu, const Multipartition& nu) {
    detail::check_same_rank(mu, nu, "recursion_geq");
    if (mu.component(1).size() > nu.component(1).size()) return true;
    return dominates(mu.component(1), nu.component(1));
}

/// Total order refining dominance for equal-size multipartitions: compares
/// the accumulated partial-sum profiles lexicographically (component-major).
/// Returns <0, 0 or >0.
inline int profile_compare(const Multipartition& a, const Multipartition& b) {
    detail::check_same_rank(a, b, "profile_compare");
    long long base_a = 0, base_b = 0;
    for (int k = 1; k <= a.rank(); ++k) {
        const Partition& pa = a.component(k);
        const Partition& pb = b.component(k);
        long long sa = base_a, sb = base_b;
        const int rows = std::max(pa.length(), pb.length());
        for (int j = 1; j <= rows; ++j) {
            sa += pa.part(j);
            sb += pb.part(j);
            if (sa != sb) return sa < sb ? -1 : 1;
        }
        base_a = sa;
        base_b = sb;
    }
    return 0;
}

/// Map ordering used everywhere a deterministic listing is needed: size
/// ascending, then most dominant first.
struct MpOrder {
    bool operator()(const Multipartition& a, const Multipartition& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        const int c = profile_compare(a, b);
        if (c != 0) return c > 0;
        return false;
    }
};

/// All partitions of n, parts bounded by max_part.
inline void partitions_of(long long n, int max_part, std::vector<int>& stack,
                          std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition(stack));
        return;
    }
    for (int p = static_cast<int>(std::min<long long>(max_part, n)); p >= 1; --p) {
        stack.push_back(p);
        partitions_of(n - p, p, stack, out);
        stack.pop_back();
    }
}

inline std::vector<Partition> partitions_of(long long n) {
    std::vector<Partition> out;
    std::vector<int> stack;
    partitions_of(n, n > 0 ? static_cast<int>(n) : 1, stack, out);
    return out;
}

/// All r-multipartitions of n, in deterministic order.
inline std::vector<Multipartition> multipartitions_of(long long n, int r) {
    if (r < 1) throw std::invalid_argument("multipartitions_of: r must be >= 1");
    if (r == 1) {
        std::vector<Multipartition> out;
        for (auto& p : partitions_of(n)) out.push_back(Multipartition({std::move(p)}));
        return out;
    }
    std::vector<Multipartition> out;
    for (long long head = n; head >= 0; --head) {
        const auto firsts = partitions_of(head);
        const auto rests = multipartitions_of(n - head, r - 1);
        for (const auto& f : firsts) {
            for (const auto& rest : rests) {
                std::vector<Partition> comps;
                comps.reserve(static_cast<size_t>(r));
                comps.push_back(f);
                comps.insert(comps.end(), rest.components().begin(), rest.components().end());
                out.push_back(Multipartition(std::move(comps)));
            }
        }
    }
    return out;
}

/// Text syntax shared with the CLI: components separated by '|', parts by
/// ',', the empty partition written '-'.  Whitespace ignored.
inline Multipartition parse_multipartition(const std::string& text) {
    std::string cleaned;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
    if (cleaned.empty()) throw std::invalid_argument("parse_multipartition: empty input");
    std::vector<Partition> comps;
    size_t pos = 0;
    while (true) {
        size_t bar = cleaned.find('|', pos);
        const std::string comp = cleaned.substr(pos, bar == std::string::npos ? bar : bar - pos);
        if (comp == "-") {
            comps.emplace_back();
        } else if (comp.empty()) {
            throw std::invalid_argument("parse_multipartition: empty component (use '-')");
        } else {
            std::vector<int> parts;
            size_t p = 0;
            while (p <= comp.size()) {
                size_t comma = comp.find(',', p);
                const std::string tok = comp.substr(p, comma == std::string::npos ? comma : comma - p);
                if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                    throw std::invalid_argument("parse_multipartition: bad part '" + tok + "'");
                parts.push_back(std::stoi(tok));
                if (comma == std::string::npos) break;
                p = comma + 1;
            }
            comps.emplace_back(std::move(parts));  // validates weakly decreasing, positive
        }
        if (bar == std::string::npos) break;
        pos = bar + 1;
        if (pos > cleaned.size()) break;
    }
    return Multipartition(std::move(comps));
}

inline std::string format_multipartition(const Multipartition& mp) {
    std::string out;
    for (int k = 1; k <= mp.rank(); ++k) {
        if (k > 1) out += "|";
        const Partition& p = mp.component(k);
        if (p.empty()) {
            out += "-";
        } else {
            for (int j = 1; j <= p.length(); ++j) {
                if (j > 1) out += ",";
                out += std::to_string(p.part(j));
            }
        }
    }
    return out;
}

/// Paper-style rendering, e.g. ((2,1),(1)) or ((2,1),-) for empty components.
inline std::string display_multipartition(const Multipartition& mp) {
    std::string out = "(";
    for (int k = 1; k <= mp.rank(); ++k) {
        if (k > 1) out += ",";
        const Partition& p = mp.component(k);
        if (p.empty()) {
            out += "-";
        } else {
            out += "(";
            for (int j = 1; j <= p.length(); ++j) {
                if (j > 1) out += ",";
                out += std::to_string(p.part(j));
            }
            out += ")";
        }
    }
    out += ")";
    return out;
}

}  // namespace qfock
