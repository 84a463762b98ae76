#pragma once

// Exact arithmetic in GF(p) and GF(p^m).
//
// Field elements are coefficient vectors of length m, most-significant first:
// a_{m-1} x^{m-1} + ... + a_0  <->  (a_{m-1}, ..., a_0).
// The same digit order doubles as a base-p integer, which is how elements are
// indexed (see FieldCtx::index_of / element_at).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace costas::gf {

using Coeff = std::uint32_t;
using Poly = std::vector<Coeff>;            // most-significant first
using Matrix = std::vector<std::vector<Coeff>>;

inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 20;

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

// Prime factors of n without multiplicity, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Rabin's test on a monic polynomial over GF(p).
bool is_irreducible(std::uint32_t p, const Poly& monic);

// Lexicographically least monic irreducible polynomial of the given degree.
Poly find_irreducible(std::uint32_t p, unsigned degree);

// "1,0,2,1" <-> x^3+2x+1.
Poly parse_poly(std::string_view text);
std::string format_poly(const Poly& coeffs);

struct FieldElem {
    Poly coeffs;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
    friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

class FieldCtx {
public:
    // Verifies p prime, modulus monic, irreducible, and p^m <= order_cap.
    FieldCtx(std::uint32_t p, Poly modulus, std::uint64_t order_cap = kDefaultOrderCap);

    // Uses find_irreducible(p, m).
    static FieldCtx with_default_modulus(std::uint32_t p, unsigned m,
                                         std::uint64_t order_cap = kDefaultOrderCap);

    std::uint32_t p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    std::uint64_t q() const noexcept { return q_; }
    const Poly& modulus() const noexcept { return modulus_; }

    FieldElem zero() const;
    FieldElem one() const;
    // The element x (or the constant x mod P for m == 1).
    FieldElem generator_x() const;

    bool valid(const FieldElem& a) const;
    FieldElem make(Poly coeffs) const;  // validates

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(const FieldElem& a, std::uint64_t e) const;
    FieldElem neg(const FieldElem& a) const;

    // Base-p integer with the coefficient vector as digits (MSB first).
    std::uint64_t index_of(const FieldElem& a) const;
    FieldElem element_at(std::uint64_t index) const;

    // Prime factors of q-1, cached for primitivity tests.
    const std::vector<std::uint64_t>& group_order_factors() const noexcept { return factors_; }

private:
    std::uint32_t p_;
    unsigned m_;
    std::uint64_t q_;
    Poly modulus_;
    std::vector<std::uint64_t> factors_;
};

FieldElem field_mul(const FieldCtx& ctx, const FieldElem& a, const FieldElem& b);

// Throws std::invalid_argument for g == 0.
bool is_primitive_root(const FieldCtx& ctx, const FieldElem& g);

// First primitive element in lexicographic coefficient order.
FieldElem find_primitive_root(const FieldCtx& ctx);

// All primitive elements in lexicographic order.
std::vector<FieldElem> primitive_roots(const FieldCtx& ctx);

// f(i) = g^(i-1+c) for i = 1..q-1; element k of the result holds f(k+1).
std::vector<FieldElem> powers_of(const FieldCtx& ctx, const FieldElem& g, std::uint64_t c);

// Modular linear algebra over GF(p).
Matrix identity_matrix(std::size_t n);
Matrix mat_mul(std::uint32_t p, const Matrix& a, const Matrix& b);
std::vector<Coeff> row_times(std::uint32_t p, const std::vector<Coeff>& row, const Matrix& m);
std::size_t rank_mod(std::uint32_t p, Matrix m);
// Throws SingularMatrixError when det == 0 mod p.
Matrix invert_matrix(std::uint32_t p, const Matrix& m);

// Invertible m x m matrix whose rows form a basis of GF(p)^m. The inverse is
// always computed here, never taken from the caller.
class BasisMatrix {
public:
    BasisMatrix(std::uint32_t p, Matrix entries);

    static BasisMatrix identity(std::uint32_t p, std::size_t m);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const Matrix& entries() const noexcept { return entries_; }
    const Matrix& inverse() const noexcept { return inverse_; }

    // Coordinates of a polynomial-basis row vector over this basis: v B^{-1}.
    std::vector<Coeff> to_basis(const std::vector<Coeff>& v) const;

private:
    std::uint32_t p_;
    Matrix entries_;
    Matrix inverse_;
};

struct NormalBasis {
    FieldElem element;
    BasisMatrix matrix;  // rows b, b^p, ..., b^(p^(m-1))
};

// Conjugates b^(p^i), i = 0..m-1.
std::vector<FieldElem> conjugates(const FieldCtx& ctx, const FieldElem& b);

// Basis from the conjugates of b; throws std::invalid_argument if they are
// linearly dependent.
NormalBasis normal_basis_from(const FieldCtx& ctx, const FieldElem& b);

// First nonzero element (lexicographic) generating a normal basis.
NormalBasis find_normal_basis(const FieldCtx& ctx);

}  // namespace costas::gf
