#pragma once

// Finite commutative rings modelled as ordered products of local rings.
//
// A finite local ring R with maximal ideal M is reduced to the pair
// (|R|, |M|): its unitary Cayley graph is the complete multipartite graph on
// the cosets of M, so nothing else about the ring is observable here.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "number_theory.hpp"

namespace cayleywalk {

class LocalDescriptor {
public:
    /// Validates and builds a descriptor. Requires (n, m) = (q^k, q^(k-1)) for
    /// a prime power q and k >= 1, which is exactly the set of (|R|, |M|)
    /// pairs realized by finite local rings (M^i/M^(i+1) are F_q-spaces).
    static LocalDescriptor make(std::uint64_t size, std::uint64_t ideal_size, std::string label = {})
    {
        auto fail = [&](std::string const& why) {
            throw ValidationError("invalid local descriptor (" + std::to_string(size) + "," +
                                  std::to_string(ideal_size) + "): " + why);
        };
        if (size < 2) fail("ring must have at least two elements");
        if (ideal_size < 1) fail("maximal ideal size must be positive");
        if (ideal_size >= size) fail("maximal ideal must be proper");
        if (size % ideal_size != 0) fail("ideal size must divide ring size");
        auto pn = nt::prime_power(size);
        if (!pn) fail("size is not a prime power");
        auto q = size / ideal_size;
        auto pq = nt::prime_power(q);
        if (!pq || pq->first != pn->first) fail("residue field size must be a power of the same prime");
        // m must be a power of q
        std::uint64_t m = ideal_size;
        while (m % q == 0) m /= q;
        if (m != 1) fail("ideal size must be a power of the residue field size " + std::to_string(q));
        LocalDescriptor d;
        d.size_ = size;
        d.ideal_size_ = ideal_size;
        d.label_ = label.empty() ? default_label(size, ideal_size) : std::move(label);
        return d;
    }

    std::uint64_t size() const { return size_; }
    std::uint64_t ideal_size() const { return ideal_size_; }
    /// Number of cosets of M, i.e. the residue field size.
    std::uint64_t residue_size() const { return size_ / ideal_size_; }
    std::uint64_t unit_count() const { return size_ - ideal_size_; }
    bool is_field() const { return ideal_size_ == 1; }
    std::uint64_t characteristic_prime() const { return nt::prime_power(size_)->first; }
    std::string const& label() const { return label_; }

    bool same_shape(LocalDescriptor const& o) const
    {
        return size_ == o.size_ && ideal_size_ == o.ideal_size_;
    }
    bool operator==(LocalDescriptor const&) const = default;

    static std::string default_label(std::uint64_t n, std::uint64_t m)
    {
        if (m == 1) return "F" + std::to_string(n);
        return "GR(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }

private:
    LocalDescriptor() = default;

    std::uint64_t size_ = 0;
    std::uint64_t ideal_size_ = 0;
    std::string label_;
};

class RingProduct {
public:
    explicit RingProduct(std::vector<LocalDescriptor> factors) : factors_(std::move(factors))
    {
        if (factors_.empty()) throw ValidationError("ring product needs at least one factor");
        size_ = 1;
        ideal_ = 1;
        for (auto const& f : factors_) {
            auto s = nt::checked_mul(size_, f.size());
            if (!s) throw ValidationError("ring size overflows 64 bits");
            size_ = *s;
            ideal_ *= f.ideal_size();
        }
    }

    std::vector<LocalDescriptor> const& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    LocalDescriptor const& factor(std::size_t j) const { return factors_.at(j); }
    std::uint64_t size() const { return size_; }
    /// Product of the factors' maximal-ideal sizes.
    std::uint64_t combined_ideal_size() const { return ideal_; }

    bool operator==(RingProduct const& o) const { return factors_ == o.factors_; }

private:
    std::vector<LocalDescriptor> factors_;
    std::uint64_t size_ = 1;
    std::uint64_t ideal_ = 1;
};

/// |R^x| = prod (n_j - m_j); the degree of the unitary Cayley graph.
inline std::uint64_t unit_count(RingProduct const& ring)
{
    std::uint64_t u = 1;
    for (auto const& f : ring.factors()) u *= f.unit_count();
    return u;
}

/// Canonical text form: factor labels joined by " x ".
inline std::string render(RingProduct const& ring)
{
    std::string out;
    for (auto const& f : ring.factors()) {
        if (!out.empty()) out += " x ";
        out += f.label();
    }
    return out;
}

namespace detail {

class RingExprParser {
public:
    explicit RingExprParser(std::string_view expr)
    {
        for (char c : expr) {
            if (!std::isspace(static_cast<unsigned char>(c)))
                text_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }

    std::vector<LocalDescriptor> parse()
    {
        if (text_.empty()) throw ParseError("empty ring expression");
        std::vector<LocalDescriptor> out;
        atom(out);
        while (pos_ < text_.size()) {
            if (text_[pos_] != 'x') error("expected 'x' between factors");
            ++pos_;
            atom(out);
        }
        return out;
    }

private:
    [[noreturn]] void error(std::string const& what) const
    {
        throw ParseError("ring expression, position " + std::to_string(pos_) + ": " + what);
    }

    bool accept(std::string_view tok)
    {
        if (text_.compare(pos_, tok.size(), tok) != 0) return false;
        pos_ += tok.size();
        return true;
    }

    std::uint64_t number()
    {
        auto start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            auto next = nt::checked_mul(v, 10);
            if (!next || *next > UINT64_MAX - static_cast<unsigned>(text_[pos_] - '0'))
                error("number too large");
            v = *next + static_cast<unsigned>(text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) error("expected a number");
        return v;
    }

    static void reject_trivial(std::uint64_t n)
    {
        if (n == 0) throw ValidationError("Z0 is infinite; only finite rings are supported");
        if (n == 1) throw ValidationError("the trivial ring has a single vertex and is not supported");
    }

    void atom(std::vector<LocalDescriptor>& out)
    {
        if (accept("gr(")) {
            auto n = number();
            if (!accept(",")) error("expected ',' in GR(n,m)");
            auto m = number();
            if (!accept(")")) error("expected ')' closing GR(n,m)");
            reject_trivial(n);
            out.push_back(LocalDescriptor::make(n, m, "GR(" + std::to_string(n) + "," + std::to_string(m) + ")"));
            return;
        }
        if (accept("f")) {
            auto q = number();
            reject_trivial(q);
            if (!nt::prime_power(q)) throw ValidationError("F" + std::to_string(q) + ": field size must be a prime power");
            out.push_back(LocalDescriptor::make(q, 1, "F" + std::to_string(q)));
            return;
        }
        if (accept("z")) {
            auto n = number();
            if (accept("[x]/(x^2)")) {
                if (n != 2) error("only Z2[x]/(x^2) is supported");
                out.push_back(LocalDescriptor::make(4, 2, "Z2[x]/(x^2)"));
                return;
            }
            reject_trivial(n);
            for (auto const& pp : nt::factorize(n)) {
                out.push_back(LocalDescriptor::make(pp.value, pp.value / pp.prime, "Z" + std::to_string(pp.value)));
            }
            return;
        }
        error("expected Z<n>, F<q>, Z2[x]/(x^2) or GR(n,m)");
    }

    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses e.g. "Z6", "F9 x Z2", "Z2[x]/(x^2)", "GR(16,4) x F3".
/// Z<n> is split by prime factorization into one Z<p^k> factor per prime.
inline RingProduct parse_ring_expr(std::string_view expr)
{
    return RingProduct(detail::RingExprParser(expr).parse());
}

}  // namespace cayleywalk
