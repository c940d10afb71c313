#pragma once

#include <array>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "cdzero/errors.hpp"
#include "cdzero/rational.hpp"

namespace cdzero {

/// Default level cap; operations that can spawn 2^n-sized work enforce it at
/// their entry points (CLI, parsing, sweeps) so callers can lift it explicitly.
inline constexpr int kDefaultMaxLevel = 10;

inline void check_level_cap(int level, bool allow_large = false) {
    if (level < 0) throw PreconditionError("level must be non-negative");
    if (!allow_large && level > kDefaultMaxLevel)
        throw PreconditionError("level " + std::to_string(level) + " exceeds the cap of " +
                                std::to_string(kDefaultMaxLevel) + " (pass allow-large to lift it)");
}

namespace detail {

template <class S>
std::vector<S> conjugated(std::vector<S> v) {
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
    return v;
}

template <class S>
bool all_zero(const std::vector<S>& v) {
    for (const S& x : v)
        if (!(x == S(0))) return false;
    return true;
}

/// One doubling step: (a1,a2)(x,y) = (a1 x - conj(y) a2, y a1 + a2 conj(x)).
/// Zero halves prune the recursion, so products against sparse elements (in
/// particular basis vectors, when building operator matrices) stay cheap.
template <class S>
std::vector<S> cd_mul(const std::vector<S>& a, const std::vector<S>& b) {
    const std::size_t n = a.size();
    if (n == 1) return {a[0] * b[0]};
    if (all_zero(a) || all_zero(b)) return std::vector<S>(n, S(0));
    const std::size_t h = n / 2;
    auto half = [h](const std::vector<S>& v, std::size_t from) {
        return std::vector<S>(v.begin() + from, v.begin() + from + h);
    };
    const std::vector<S> a1 = half(a, 0), a2 = half(a, h);
    const std::vector<S> x = half(b, 0), y = half(b, h);
    const std::vector<S> p = cd_mul(a1, x);
    const std::vector<S> q = cd_mul(conjugated(y), a2);
    const std::vector<S> u = cd_mul(y, a1);
    const std::vector<S> v = cd_mul(a2, conjugated(x));
    std::vector<S> out(n);
    for (std::size_t i = 0; i < h; ++i) {
        out[i] = p[i] - q[i];
        out[h + i] = u[i] + v[i];
    }
    return out;
}

}  // namespace detail

/// An element of the Cayley-Dickson algebra A_n over the scalar S
/// (S = Rational for the exact path, double for the floating path).
/// Coordinates follow the flat basis: for n >= 1, e_i with i < 2^{n-1} is
/// (e_i, 0) and e_{2^{n-1}+i} is (0, e_i); e_{2^{n-1}} is the symplectic
/// unit usually written e~0.
template <class S>
class Element {
public:
    Element() : level_(0), coords_(1, S(0)) {}

    explicit Element(int level) : level_(level), coords_(std::size_t(1) << check(level), S(0)) {}

    Element(int level, std::vector<S> coords) : level_(level), coords_(std::move(coords)) {
        check(level);
        if (coords_.size() != std::size_t(1) << level)
            throw PreconditionError("coordinate count does not match 2^level");
    }

    static Element zero(int level) { return Element(level); }

    static Element basis(int level, int index) {
        Element e(level);
        if (index < 0 || index >= e.dim())
            throw PreconditionError("basis index " + std::to_string(index) + " out of range for level " +
                                    std::to_string(level));
        e.coords_[index] = S(1);
        return e;
    }

    static Element scalar(int level, const S& value) {
        Element e(level);
        e.coords_[0] = value;
        return e;
    }

    int level() const { return level_; }
    int dim() const { return int(coords_.size()); }
    const std::vector<S>& coords() const { return coords_; }
    const S& operator[](int i) const { return coords_[i]; }
    S& operator[](int i) { return coords_[i]; }

    bool is_zero() const {
        for (const S& c : coords_)
            if (!(c == S(0))) return false;
        return true;
    }

    friend Element operator+(const Element& a, const Element& b) {
        same_level(a, b);
        Element out(a.level_);
        for (int i = 0; i < a.dim(); ++i) out.coords_[i] = a.coords_[i] + b.coords_[i];
        return out;
    }

    friend Element operator-(const Element& a, const Element& b) {
        same_level(a, b);
        Element out(a.level_);
        for (int i = 0; i < a.dim(); ++i) out.coords_[i] = a.coords_[i] - b.coords_[i];
        return out;
    }

    friend Element operator-(const Element& a) {
        Element out(a.level_);
        for (int i = 0; i < a.dim(); ++i) out.coords_[i] = -a.coords_[i];
        return out;
    }

    friend Element operator*(const S& k, const Element& a) {
        Element out(a.level_);
        for (int i = 0; i < a.dim(); ++i) out.coords_[i] = k * a.coords_[i];
        return out;
    }

    friend Element operator*(const Element& a, const S& k) { return k * a; }

    friend Element operator/(const Element& a, const S& k) {
        Element out(a.level_);
        for (int i = 0; i < a.dim(); ++i) out.coords_[i] = a.coords_[i] / k;
        return out;
    }

    /// Cayley-Dickson product via the doubling recursion.
    friend Element operator*(const Element& a, const Element& b) {
        same_level(a, b);
        return Element(a.level_, detail::cd_mul(a.coords_, b.coords_));
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.level_ == b.level_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    static void same_level(const Element& a, const Element& b) {
        if (a.level_ != b.level_)
            throw LevelMismatchError("elements live in A_" + std::to_string(a.level_) + " and A_" +
                                     std::to_string(b.level_));
    }

private:
    static int check(int level) {
        if (level < 0 || level > 62) throw PreconditionError("level out of range");
        return level;
    }

    int level_;
    std::vector<S> coords_;
};

template <class S>
Element<S> conjugate(const Element<S>& a) {
    Element<S> out = -a;
    out[0] = a[0];
    return out;
}

/// a~ = a * e~0 = (-a2, a1) in half coordinates. Requires level >= 1.
template <class S>
Element<S> tilde(const Element<S>& a) {
    if (a.level() < 1) throw PreconditionError("tilde needs level >= 1");
    const int h = a.dim() / 2;
    Element<S> out(a.level());
    for (int i = 0; i < h; ++i) {
        out[i] = -a[h + i];
        out[h + i] = a[i];
    }
    return out;
}

/// a^ = (a2, a1): swaps the two halves. Requires level >= 1.
template <class S>
Element<S> hat(const Element<S>& a) {
    if (a.level() < 1) throw PreconditionError("hat needs level >= 1");
    const int h = a.dim() / 2;
    Element<S> out(a.level());
    for (int i = 0; i < h; ++i) {
        out[i] = a[h + i];
        out[h + i] = a[i];
    }
    return out;
}

template <class S>
S inner(const Element<S>& a, const Element<S>& b) {
    Element<S>::same_level(a, b);
    S acc(0);
    for (int i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
    return acc;
}

template <class S>
S norm_sq(const Element<S>& a) {
    return inner(a, a);
}

/// t_n(a) = a + conj(a) read as the scalar 2*coords[0].
template <class S>
S trace(const Element<S>& a) {
    return S(2) * a[0];
}

template <class S>
bool is_pure(const Element<S>& a) {
    return a[0] == S(0);
}

template <class S>
bool is_doubly_pure(const Element<S>& a) {
    return a.level() >= 1 && a[0] == S(0) && a[a.dim() / 2] == S(0);
}

enum class PurityClass { Real, Pure, DoublyPure, Mixed };

inline const char* to_string(PurityClass c) {
    switch (c) {
        case PurityClass::Real: return "Real";
        case PurityClass::Pure: return "Pure";
        case PurityClass::DoublyPure: return "DoublyPure";
        case PurityClass::Mixed: return "Mixed";
    }
    return "?";
}

template <class S>
PurityClass purity_class(const Element<S>& a) {
    if (a.level() == 0) return PurityClass::Real;
    bool others_zero = true;
    for (int i = 1; i < a.dim(); ++i)
        if (!(a[i] == S(0))) {
            others_zero = false;
            break;
        }
    if (others_zero) return PurityClass::Real;  // includes the zero element
    if (!(a[0] == S(0))) return PurityClass::Mixed;
    return a[a.dim() / 2] == S(0) ? PurityClass::DoublyPure : PurityClass::Pure;
}

/// e~0 of A_n, the flat basis vector e_{2^{n-1}}.
template <class S>
Element<S> symplectic_unit(int level) {
    if (level < 1) throw PreconditionError("symplectic unit needs level >= 1");
    return Element<S>::basis(level, (1 << level) / 2);
}

/// (a, b) in A_{n+1} from halves in A_n.
template <class S>
Element<S> make_pair_element(const Element<S>& a, const Element<S>& b) {
    Element<S>::same_level(a, b);
    Element<S> out(a.level() + 1);
    for (int i = 0; i < a.dim(); ++i) {
        out[i] = a[i];
        out[a.dim() + i] = b[i];
    }
    return out;
}

template <class S>
Element<S> first_half(const Element<S>& alpha) {
    if (alpha.level() < 1) throw PreconditionError("splitting needs level >= 1");
    const int h = alpha.dim() / 2;
    Element<S> out(alpha.level() - 1);
    for (int i = 0; i < h; ++i) out[i] = alpha[i];
    return out;
}

template <class S>
Element<S> second_half(const Element<S>& alpha) {
    if (alpha.level() < 1) throw PreconditionError("splitting needs level >= 1");
    const int h = alpha.dim() / 2;
    Element<S> out(alpha.level() - 1);
    for (int i = 0; i < h; ++i) out[i] = alpha[h + i];
    return out;
}

inline Element<double> to_double(const Element<Rational>& a) {
    Element<double> out(a.level());
    for (int i = 0; i < a.dim(); ++i) out[i] = to_double(a[i]);
    return out;
}

inline const Element<double>& to_double(const Element<double>& a) { return a; }

template <class S>
double norm(const Element<S>& a) {
    return std::sqrt(to_double(norm_sq(a)));
}

namespace detail {

template <class S>
S sqrt_or_throw(const S& value, const char* what) {
    if constexpr (std::is_same_v<S, Rational>) {
        Rational r;
        if (!exact_sqrt(value, r))
            throw PreconditionError(std::string(what) + " is not a rational square; use the floating path");
        return r;
    } else {
        return std::sqrt(value);
    }
}

}  // namespace detail

/// Orthonormal basis (e_0, a~/||a||, a/||a||, e~0) of the quaternion
/// subalgebra H_a (Cor 1.2). Exact for rational a when ||a||^2 is a perfect
/// square; otherwise use quaternion_basis(to_double(a)).
template <class S>
std::array<Element<S>, 4> quaternion_basis(const Element<S>& a) {
    if (!is_doubly_pure(a) || a.is_zero())
        throw PreconditionError("quaternion basis needs a nonzero doubly pure element");
    if (a.level() < 2) throw PreconditionError("quaternion basis needs level >= 2");
    const S n = detail::sqrt_or_throw(norm_sq(a), "||a||^2");
    return {Element<S>::basis(a.level(), 0), tilde(a) / n, a / n, symplectic_unit<S>(a.level())};
}

/// Floating decomposition a = r c + s e~0 with ||c|| = ||a||, r^2 + s^2 = 1,
/// defined for Pure elements; r = 0 falls back to the e_1 direction.
struct PurityInfo {
    PurityClass cls = PurityClass::Real;
    bool has_decomposition = false;
    double r = 0.0;
    double s = 0.0;
    Element<double> c;
};

template <class S>
PurityInfo purity_info(const Element<S>& a) {
    PurityInfo info;
    info.cls = purity_class(a);
    if (info.cls != PurityClass::Pure || a.level() < 2) return info;
    const Element<double> ad = to_double(a);
    const double big_norm = norm(ad);
    const int h = ad.dim() / 2;
    const double sigma = ad[h];
    Element<double> c_raw = ad;
    c_raw[h] = 0.0;
    const double rho = norm(c_raw);
    info.has_decomposition = true;
    info.s = sigma / big_norm;
    if (rho > 1e-300) {
        info.r = rho / big_norm;
        info.c = c_raw * (big_norm / rho);
    } else {
        info.r = 0.0;
        info.c = Element<double>::basis(ad.level(), 1) * big_norm;
    }
    return info;
}

}  // namespace cdzero
