#include "costas/applicability.hpp"

#include <cmath>
#include <stdexcept>

#include "costas/errors.hpp"
#include "costas/gf.hpp"

namespace costas::applicability {

namespace {

// floor(x^(1/k))
std::uint64_t integer_root(std::uint64_t x, unsigned k) {
    if (k == 1) return x;
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / k));
    auto pow_le = [&](std::uint64_t b) {
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= b;
            if (acc > x) return false;
        }
        return true;
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

}  // namespace

std::optional<PrimePower> perfect_power(std::uint64_t x) {
    if (x < 2) throw std::invalid_argument("perfect_power needs x >= 2");
    for (unsigned k = 63; k >= 1; --k) {
        const std::uint64_t r = integer_root(x, k);
        if (r < 2) continue;
        std::uint64_t acc = 1;
        for (unsigned i = 0; i < k; ++i) acc *= r;
        if (acc == x && gf::is_prime(r)) return PrimePower{r, k};
    }
    return std::nullopt;
}

std::uint64_t checked_power(std::uint64_t n, unsigned m) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < m; ++i) {
        acc *= n;
        if (acc + 3 > kIntegerCap) {
            throw OverflowError(std::to_string(n) + "^" + std::to_string(m) + " exceeds the 2^63 integer cap");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

FormResult check_form(int form, std::uint64_t n, unsigned m) {
    if (form < 1 || form > 3) throw std::invalid_argument("form must be 1, 2 or 3");
    if (n < 2 || m < 1) throw std::invalid_argument("need n >= 2 and m >= 1");
    FormResult r;
    r.form = form;
    r.value = checked_power(n, m) + static_cast<std::uint64_t>(form);
    if (form == 1) {
        if (gf::is_prime(r.value)) r.witness = PrimePower{r.value, 1};
    } else {
        r.witness = perfect_power(r.value);
    }
    r.satisfied = r.witness.has_value();
    if (r.satisfied) {
        switch (form) {
            case 1: r.constructions = {"W1"}; break;
            case 2:
                r.constructions = {"G2"};
                if (r.witness->k == 1) r.constructions.push_back("W2");
                break;
            case 3: r.constructions = {"G3"}; break;
        }
    }
    return r;
}

Report check_applicability(std::uint64_t n, unsigned m) {
    Report rep;
    rep.n = n;
    rep.m = m;
    rep.order = checked_power(n, m);
    for (int form = 1; form <= 3; ++form) rep.forms.push_back(check_form(form, n, m));
    return rep;
}

std::vector<Witness> scan_solutions(int form, std::uint64_t n_lo, std::uint64_t n_hi, unsigned m_lo,
                                    unsigned m_hi) {
    if (n_lo < 2 || m_lo < 1 || n_lo > n_hi || m_lo > m_hi) throw std::invalid_argument("bad scan range");
    std::vector<Witness> out;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        for (unsigned m = m_lo; m <= m_hi; ++m) {
            const FormResult r = check_form(form, n, m);
            if (r.satisfied) out.push_back(Witness{n, m, r.witness->p, r.witness->k});
        }
    }
    return out;
}

}  // namespace costas::applicability
