#include "costas/gf.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "costas/errors.hpp"

namespace costas::gf {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

// Dense polynomials over GF(p), least-significant coefficient first, no
// trailing zeros (the zero polynomial is empty).
using LPoly = std::vector<u64>;

void trim(LPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

LPoly to_lsb(const Poly& msb) {
    LPoly out(msb.rbegin(), msb.rend());
    trim(out);
    return out;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

LPoly poly_mod(LPoly a, const LPoly& f, u64 p) {
    const std::size_t n = f.size() - 1;
    const u64 lead_inv = inv_mod(f.back(), p);
    while (a.size() > n) {
        const u64 coef = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - n;
        for (std::size_t i = 0; i <= n; ++i) {
            a[shift + i] = (a[shift + i] + p - mul_mod(coef, f[i], p)) % p;
        }
        trim(a);
    }
    return a;
}

LPoly poly_mul_mod(const LPoly& a, const LPoly& b, const LPoly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    LPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
        }
    }
    trim(r);
    return poly_mod(std::move(r), f, p);
}

LPoly poly_pow_mod(LPoly base, u64 e, const LPoly& f, u64 p) {
    LPoly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, f, p);
        e >>= 1;
        if (e > 0) base = poly_mul_mod(base, base, f, p);
    }
    return result;
}

LPoly poly_gcd(LPoly a, LPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        LPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

LPoly poly_sub(LPoly a, const LPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// Gauss-Jordan on an augmented copy; returns rank and, if requested, the
// reduced matrix.
std::size_t row_reduce(std::uint32_t p, Matrix& m, std::size_t cols) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        const u64 inv = inv_mod(m[rank][col], p);
        for (auto& v : m[rank]) v = static_cast<Coeff>(mul_mod(v, inv, p));
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const u64 factor = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c) {
                m[r][c] = static_cast<Coeff>((m[r][c] + p - mul_mod(factor, m[rank][c], p)) % p);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    u64 result = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, mod);
        base = mul_mod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 sp : kSmall) {
        if (n % sp == 0) return n == sp;
    }
    if (n < 41 * 41) return true;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for n < 3.3e24.
    for (u64 a : kSmall) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<u64> out;
    for (u64 f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_irreducible(std::uint32_t p, const Poly& monic) {
    if (monic.size() < 2) throw std::invalid_argument("polynomial must have degree >= 1");
    if (monic.front() != 1) throw std::invalid_argument("polynomial must be monic");
    const std::size_t n = monic.size() - 1;
    if (n == 1) return true;
    const LPoly f = to_lsb(monic);
    const LPoly x{0, 1};

    // h[k] = x^(p^k) mod f
    std::vector<LPoly> h{poly_mod(x, f, p)};
    for (std::size_t k = 1; k <= n; ++k) h.push_back(poly_pow_mod(h.back(), p, f, p));
    if (poly_sub(h[n], x, p) != LPoly{}) return false;
    for (u64 r : prime_factors(n)) {
        const LPoly g = poly_gcd(f, poly_sub(h[n / r], x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

Poly find_irreducible(std::uint32_t p, unsigned degree) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (degree == 0) throw std::invalid_argument("degree must be >= 1");
    Poly cand(degree + 1, 0);
    cand[0] = 1;
    // Odometer over the lower coefficients, most significant first.
    while (true) {
        if (is_irreducible(p, cand)) return cand;
        std::size_t i = degree;
        while (i >= 1 && cand[i] == p - 1) cand[i--] = 0;
        if (i == 0) break;
        ++cand[i];
    }
    throw ConstructionError("no irreducible polynomial found");
}

Poly parse_poly(std::string_view text) {
    Poly out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view tok = text.substr(pos, comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        Coeff v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw std::invalid_argument("bad coefficient '" + std::string(tok) + "' in '" +
                                        std::string(text) + "'");
        }
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

std::string format_poly(const Poly& coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs[i]);
    }
    return out;
}

FieldCtx::FieldCtx(std::uint32_t p, Poly modulus, std::uint64_t order_cap)
    : p_(p), m_(0), q_(1), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("characteristic " + std::to_string(p_) + " is not prime");
    if (modulus_.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    for (Coeff c : modulus_) {
        if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
    }
    m_ = static_cast<unsigned>(modulus_.size() - 1);
    for (unsigned i = 0; i < m_; ++i) {
        if (q_ > order_cap / p_) {
            throw std::invalid_argument("field order exceeds cap " + std::to_string(order_cap));
        }
        q_ *= p_;
    }
    if (!is_irreducible(p_, modulus_)) {
        throw std::invalid_argument("modulus " + format_poly(modulus_) + " is not irreducible over GF(" +
                                    std::to_string(p_) + ")");
    }
    factors_ = prime_factors(q_ - 1);
}

FieldCtx FieldCtx::with_default_modulus(std::uint32_t p, unsigned m, std::uint64_t order_cap) {
    return FieldCtx(p, find_irreducible(p, m), order_cap);
}

FieldElem FieldCtx::zero() const { return FieldElem{Poly(m_, 0)}; }

FieldElem FieldCtx::one() const {
    FieldElem e = zero();
    e.coeffs.back() = 1;
    return e;
}

FieldElem FieldCtx::generator_x() const {
    if (m_ >= 2) {
        FieldElem e = zero();
        e.coeffs[m_ - 2] = 1;
        return e;
    }
    // x == -a0 mod (x + a0)
    return FieldElem{Poly{(p_ - modulus_[1]) % p_}};
}

bool FieldCtx::valid(const FieldElem& a) const {
    if (a.coeffs.size() != m_) return false;
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](Coeff c) { return c < p_; });
}

FieldElem FieldCtx::make(Poly coeffs) const {
    FieldElem e{std::move(coeffs)};
    if (!valid(e)) {
        throw std::invalid_argument("element " + format_poly(e.coeffs) + " is not in GF(" + std::to_string(p_) +
                                    "^" + std::to_string(m_) + ")");
    }
    return e;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = (a.coeffs[i] + p_ - b.coeffs[i]) % p_;
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const { return sub(zero(), a); }

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
    // Work least-significant first: prod[k] is the coefficient of x^k.
    std::vector<u64> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        const u64 ai = a.coeffs[m_ - 1 - i];
        if (ai == 0) continue;
        for (unsigned j = 0; j < m_; ++j) {
            prod[i + j] = (prod[i + j] + ai * b.coeffs[m_ - 1 - j]) % p_;
        }
    }
    // x^m == -(P - x^m); reduce from the top.
    for (std::size_t k = prod.size(); k-- > m_;) {
        const u64 top = prod[k];
        if (top == 0) continue;
        prod[k] = 0;
        for (unsigned t = 0; t < m_; ++t) {
            // modulus_[m_ - t] is the coefficient of x^t
            const u64 sub = mul_mod(top, modulus_[m_ - t], p_);
            prod[k - m_ + t] = (prod[k - m_ + t] + p_ - sub) % p_;
        }
    }
    FieldElem r = zero();
    for (unsigned i = 0; i < m_; ++i) r.coeffs[m_ - 1 - i] = static_cast<Coeff>(prod[i]);
    return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const {
    FieldElem result = one();
    FieldElem base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

std::uint64_t FieldCtx::index_of(const FieldElem& a) const {
    u64 idx = 0;
    for (Coeff c : a.coeffs) idx = idx * p_ + c;
    return idx;
}

FieldElem FieldCtx::element_at(std::uint64_t index) const {
    if (index >= q_) throw std::out_of_range("element index out of range");
    FieldElem e = zero();
    for (unsigned i = m_; i-- > 0;) {
        e.coeffs[i] = static_cast<Coeff>(index % p_);
        index /= p_;
    }
    return e;
}

FieldElem field_mul(const FieldCtx& ctx, const FieldElem& a, const FieldElem& b) { return ctx.mul(a, b); }

bool is_primitive_root(const FieldCtx& ctx, const FieldElem& g) {
    if (!ctx.valid(g)) throw std::invalid_argument("element not in field");
    if (g == ctx.zero()) throw std::invalid_argument("zero is never a primitive root");
    const u64 order = ctx.q() - 1;
    const FieldElem one = ctx.one();
    if (order == 1) return g == one;
    for (u64 r : ctx.group_order_factors()) {
        if (ctx.pow(g, order / r) == one) return false;
    }
    return true;
}

FieldElem find_primitive_root(const FieldCtx& ctx) {
    for (u64 idx = 1; idx < ctx.q(); ++idx) {
        FieldElem e = ctx.element_at(idx);
        if (is_primitive_root(ctx, e)) return e;
    }
    throw ConstructionError("no primitive root found");
}

std::vector<FieldElem> primitive_roots(const FieldCtx& ctx) {
    std::vector<FieldElem> out;
    for (u64 idx = 1; idx < ctx.q(); ++idx) {
        FieldElem e = ctx.element_at(idx);
        if (is_primitive_root(ctx, e)) out.push_back(std::move(e));
    }
    return out;
}

std::vector<FieldElem> powers_of(const FieldCtx& ctx, const FieldElem& g, std::uint64_t c) {
    if (!is_primitive_root(ctx, g)) throw std::invalid_argument("generator is not primitive");
    if (c > ctx.q() - 2) throw std::invalid_argument("shift must lie in 0..q-2");
    std::vector<FieldElem> out;
    out.reserve(ctx.q() - 1);
    FieldElem cur = ctx.pow(g, c);
    for (u64 i = 0; i + 1 < ctx.q(); ++i) {
        out.push_back(cur);
        cur = ctx.mul(cur, g);
    }
    return out;
}

Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<Coeff>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix mat_mul(std::uint32_t p, const Matrix& a, const Matrix& b) {
    Matrix out;
    out.reserve(a.size());
    for (const auto& row : a) out.push_back(row_times(p, row, b));
    return out;
}

std::vector<Coeff> row_times(std::uint32_t p, const std::vector<Coeff>& row, const Matrix& m) {
    if (row.size() != m.size()) throw std::invalid_argument("dimension mismatch in row * matrix");
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    std::vector<Coeff> out(cols, 0);
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) {
            out[j] = static_cast<Coeff>((out[j] + mul_mod(row[k], m[k][j], p)) % p);
        }
    }
    return out;
}

std::size_t rank_mod(std::uint32_t p, Matrix m) {
    if (m.empty()) return 0;
    for (auto& row : m)
        for (auto& v : row) v %= p;
    return row_reduce(p, m, m.front().size());
}

Matrix invert_matrix(std::uint32_t p, const Matrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("matrix must be square");
    }
    Matrix aug(n, std::vector<Coeff>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j] % p;
        aug[i][n + i] = 1;
    }
    if (row_reduce(p, aug, n) < n) throw SingularMatrixError("matrix is singular mod " + std::to_string(p));
    Matrix inv(n, std::vector<Coeff>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end(), inv[i].begin());
    }
    return inv;
}

BasisMatrix::BasisMatrix(std::uint32_t p, Matrix entries) : p_(p), entries_(std::move(entries)) {
    for (auto& row : entries_) {
        for (Coeff v : row) {
            if (v >= p_) throw std::invalid_argument("basis entry out of range");
        }
    }
    inverse_ = invert_matrix(p_, entries_);
}

BasisMatrix BasisMatrix::identity(std::uint32_t p, std::size_t m) { return BasisMatrix(p, identity_matrix(m)); }

std::vector<Coeff> BasisMatrix::to_basis(const std::vector<Coeff>& v) const { return row_times(p_, v, inverse_); }

std::vector<FieldElem> conjugates(const FieldCtx& ctx, const FieldElem& b) {
    std::vector<FieldElem> out{b};
    for (unsigned i = 1; i < ctx.m(); ++i) out.push_back(ctx.pow(out.back(), ctx.p()));
    return out;
}

NormalBasis normal_basis_from(const FieldCtx& ctx, const FieldElem& b) {
    Matrix rows;
    for (auto& e : conjugates(ctx, b)) rows.push_back(e.coeffs);
    if (rank_mod(ctx.p(), rows) < ctx.m()) {
        throw std::invalid_argument("conjugates of " + format_poly(b.coeffs) + " are linearly dependent");
    }
    return NormalBasis{b, BasisMatrix(ctx.p(), std::move(rows))};
}

NormalBasis find_normal_basis(const FieldCtx& ctx) {
    for (u64 idx = 1; idx < ctx.q(); ++idx) {
        FieldElem b = ctx.element_at(idx);
        Matrix rows;
        for (auto& e : conjugates(ctx, b)) rows.push_back(e.coeffs);
        if (rank_mod(ctx.p(), rows) == ctx.m()) return NormalBasis{b, BasisMatrix(ctx.p(), std::move(rows))};
    }
    throw ConstructionError("no normal basis found");
}

}  // namespace costas::gf
