#pragma once

// Variable sets with named blocks, exponent vectors, and monomial orderings.
// Orderings are built from per-block comparisons so elimination and mixed
// local/global orders can be assembled declaratively.

#include <germinv/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace germinv {

using Exp = std::uint32_t;
inline constexpr Exp kMaxExp = 1u << 30;

// ---------------------------------------------------------------------------
// RingSpec

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

class RingSpec {
public:
    struct Block {
        std::string name;
        std::vector<std::uint32_t> vars; // indices into vars_
    };

    static Ring make(std::vector<std::string> vars,
                     std::vector<Block> blocks = {}) {
        auto r = std::make_shared<RingSpec>();
        r->vars_ = std::move(vars);
        if (blocks.empty()) {
            Block b;
            b.name = "all";
            b.vars.resize(r->vars_.size());
            std::iota(b.vars.begin(), b.vars.end(), 0u);
            blocks.push_back(std::move(b));
        }
        r->blocks_ = std::move(blocks);
        r->validate();
        return r;
    }

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var_name(std::size_t i) const { return vars_[i]; }
    const std::vector<Block>& blocks() const { return blocks_; }

    std::optional<std::uint32_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<std::uint32_t>(i);
        return std::nullopt;
    }

    const Block* block(const std::string& name) const {
        for (const auto& b : blocks_)
            if (b.name == name) return &b;
        return nullptr;
    }

    bool operator==(const RingSpec& o) const { return vars_ == o.vars_; }

private:
    std::vector<std::string> vars_;
    std::vector<Block> blocks_;

    void validate() const {
        for (const auto& v : vars_) {
            if (v.empty()) throw ValidationError("empty variable name");
            if (std::count(vars_.begin(), vars_.end(), v) != 1)
                throw ValidationError("duplicate variable name '" + v + "'");
        }
        std::vector<bool> seen(vars_.size(), false);
        for (const auto& b : blocks_) {
            if (b.vars.empty())
                throw ValidationError("empty variable block '" + b.name + "'");
            for (auto i : b.vars) {
                if (i >= vars_.size() || seen[i])
                    throw ValidationError("variable blocks must partition the variables");
                seen[i] = true;
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }))
            throw ValidationError("variable blocks must cover all variables");
    }
};

inline bool same_ring(const Ring& a, const Ring& b) {
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomial

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<Exp> e) : e_(std::move(e)) {}

    std::size_t nvars() const { return e_.size(); }
    Exp operator[](std::size_t i) const { return e_[i]; }
    Exp& at(std::size_t i) { return e_[i]; }
    const std::vector<Exp>& exps() const { return e_; }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](Exp x) { return x == 0; });
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (Exp x : e_) d += x;
        return d;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& m) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            std::uint64_t s = static_cast<std::uint64_t>(r.e_[i]) + m.e_[i];
            if (s > kMaxExp) throw ResourceError("monomial exponent overflow");
            r.e_[i] = static_cast<Exp>(s);
        }
        return r;
    }

    /// Quotient this/m; caller guarantees divisibility.
    Monomial operator/(const Monomial& m) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= m.e_[i];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(r.e_[i], b.e_[i]);
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::min(r.e_[i], b.e_[i]);
        return r;
    }

    bool coprime(const Monomial& b) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && b.e_[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

private:
    std::vector<Exp> e_;
};

// ---------------------------------------------------------------------------
// MonomialOrdering

enum class OrdKind {
    DegRevLex,    // global
    Lex,          // global
    NegDegRevLex, // local
    Weighted,     // sign of the weights decides global/local per variable
};

/// Total multiplicative order on monomials, assembled from ordered blocks.
/// Earlier blocks dominate. Weighted blocks break ties by degrevlex on the
/// block's variables.
class MonomialOrdering {
public:
    struct OrdBlock {
        OrdKind kind = OrdKind::DegRevLex;
        std::vector<std::uint32_t> vars;
        std::vector<std::int64_t> weights; // parallel to vars, Weighted only
    };

    MonomialOrdering() = default;
    explicit MonomialOrdering(std::vector<OrdBlock> blocks) : blocks_(std::move(blocks)) {}

    static MonomialOrdering uniform(OrdKind kind, std::size_t nvars) {
        OrdBlock b;
        b.kind = kind;
        b.vars.resize(nvars);
        std::iota(b.vars.begin(), b.vars.end(), 0u);
        return MonomialOrdering({std::move(b)});
    }
    static MonomialOrdering degrevlex(std::size_t nvars) {
        return uniform(OrdKind::DegRevLex, nvars);
    }
    static MonomialOrdering lex(std::size_t nvars) { return uniform(OrdKind::Lex, nvars); }
    static MonomialOrdering negdegrevlex(std::size_t nvars) {
        return uniform(OrdKind::NegDegRevLex, nvars);
    }
    static MonomialOrdering weighted(std::vector<std::int64_t> w) {
        OrdBlock b;
        b.kind = OrdKind::Weighted;
        b.vars.resize(w.size());
        std::iota(b.vars.begin(), b.vars.end(), 0u);
        b.weights = std::move(w);
        return MonomialOrdering({std::move(b)});
    }
    /// Elimination-style order: one sub-order per block, earlier dominates.
    static MonomialOrdering blocks(std::vector<OrdBlock> bs) {
        return MonomialOrdering(std::move(bs));
    }

    const std::vector<OrdBlock>& segments() const { return blocks_; }

    /// Three-way compare: +1 if a > b, 0 if equal, -1 if a < b.
    int cmp(const Monomial& a, const Monomial& b) const {
        for (const auto& blk : blocks_) {
            int c = cmp_block(blk, a, b);
            if (c != 0) return c;
        }
        return 0;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    /// True when 1 is the smallest monomial (a well-order; Buchberger applies).
    bool is_global(std::size_t nvars) const {
        for (std::size_t i = 0; i < nvars; ++i) {
            Monomial xi(nvars);
            xi.at(i) = 1;
            if (cmp(xi, Monomial(nvars)) <= 0) return false;
        }
        return true;
    }

private:
    std::vector<OrdBlock> blocks_;

    static int cmp_block(const OrdBlock& blk, const Monomial& a, const Monomial& b) {
        switch (blk.kind) {
        case OrdKind::Lex:
            for (auto v : blk.vars) {
                if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
            }
            return 0;
        case OrdKind::DegRevLex: {
            int c = cmp_deg(blk, a, b);
            if (c != 0) return c;
            return cmp_revlex(blk, a, b);
        }
        case OrdKind::NegDegRevLex: {
            int c = cmp_deg(blk, a, b);
            if (c != 0) return -c;
            return cmp_revlex(blk, a, b);
        }
        case OrdKind::Weighted: {
            std::int64_t wa = 0, wb = 0;
            for (std::size_t j = 0; j < blk.vars.size(); ++j) {
                wa += blk.weights[j] * static_cast<std::int64_t>(a[blk.vars[j]]);
                wb += blk.weights[j] * static_cast<std::int64_t>(b[blk.vars[j]]);
            }
            if (wa != wb) return wa > wb ? 1 : -1;
            int c = cmp_deg(blk, a, b);
            if (c != 0) return c;
            return cmp_revlex(blk, a, b);
        }
        }
        return 0;
    }

    static int cmp_deg(const OrdBlock& blk, const Monomial& a, const Monomial& b) {
        std::uint64_t da = 0, db = 0;
        for (auto v : blk.vars) {
            da += a[v];
            db += b[v];
        }
        if (da != db) return da > db ? 1 : -1;
        return 0;
    }

    // Reverse-lex tiebreak: the last differing variable decides, the smaller
    // exponent there wins.
    static int cmp_revlex(const OrdBlock& blk, const Monomial& a, const Monomial& b) {
        for (std::size_t j = blk.vars.size(); j-- > 0;) {
            auto v = blk.vars[j];
            if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
        }
        return 0;
    }
};

enum class Cmp { Less, Equal, Greater };

inline Cmp compare(const MonomialOrdering& ord, const Monomial& a, const Monomial& b) {
    int c = ord.cmp(a, b);
    return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
}

} // namespace germinv
