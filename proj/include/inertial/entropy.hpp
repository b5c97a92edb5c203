#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "inertial/abelian.hpp"
#include "inertial/inertia.hpp"
#include "inertial/linear_shift.hpp"
#include "inertial/mahler.hpp"
#include "inertial/models.hpp"
#include "inertial/rational_space.hpp"

namespace inertial {

// log q for a positive rational q, a plain integer (dimension and rank counts), or a certified real.
class EntropyValue {
public:
    enum class Kind { log_of, integer, numeric };

    static EntropyValue log_of(Rational q) {
        if (q <= 0) fail(Errc::invalid_input, "log argument must be positive");
        EntropyValue v;
        v.kind_ = Kind::log_of;
        v.argument_ = std::move(q);
        return v;
    }
    static EntropyValue integer(Integer n) {
        EntropyValue v;
        v.kind_ = Kind::integer;
        v.argument_ = Rational(n);
        return v;
    }
    static EntropyValue numeric(double value, double error_bound) {
        EntropyValue v;
        v.kind_ = Kind::numeric;
        v.value_ = value;
        v.error_ = error_bound;
        return v;
    }
    static EntropyValue zero() { return log_of(Rational(1)); }

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ != Kind::numeric; }
    const Rational& argument() const noexcept { return argument_; }
    double error_bound() const noexcept { return kind_ == Kind::numeric ? error_ : 0.0; }

    double approx() const {
        switch (kind_) {
            case Kind::log_of: return log_abs(argument_);
            case Kind::integer: return argument_.get_d();
            case Kind::numeric: return value_;
        }
        return 0.0;
    }

    // Exact values compare exactly; otherwise the certified intervals must overlap.
    bool agrees_with(const EntropyValue& other) const {
        if (is_exact() && other.is_exact()) return kind_ == other.kind_ && argument_ == other.argument_;
        double slack = error_bound() + other.error_bound() + 1e-12 * std::max(1.0, std::fabs(approx()));
        return std::fabs(approx() - other.approx()) <= slack;
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::log_of: return "log(" + inertial::to_string(argument_) + ")";
            case Kind::integer: return inertial::to_string(argument_);
            case Kind::numeric: break;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g +- %.3g", value_, error_);
        return buf;
    }

private:
    Kind kind_ = Kind::log_of;
    Rational argument_ = 1;
    double value_ = 0.0;
    double error_ = 0.0;
};

enum class EntropyPath { stabilization, yuzvinski, leading_coefficient, limit_free, cotrajectory, symbolic_shift };

inline const char* path_name(EntropyPath p) {
    switch (p) {
        case EntropyPath::stabilization: return "stabilization";
        case EntropyPath::yuzvinski: return "yuzvinski";
        case EntropyPath::leading_coefficient: return "leading_coefficient";
        case EntropyPath::limit_free: return "limit_free";
        case EntropyPath::cotrajectory: return "cotrajectory";
        case EntropyPath::symbolic_shift: return "symbolic_shift";
    }
    return "unknown";
}

struct CrossCheck {
    EntropyPath path;
    EntropyValue value;
    bool agree = false;
};

struct EntropyReport {
    EntropyValue value;
    EntropyPath path = EntropyPath::stabilization;
    long steps_used = 0;
    bool heuristic = false;  // stabilization verdict without an independent closed form
    std::optional<CrossCheck> cross_check;
};

struct StabilizationOptions {
    int window = 3;
    int max_steps = 64;
};

namespace detail {

inline void check_options(const StabilizationOptions& o) {
    if (o.window < 1 || o.max_steps < 1 || o.window > o.max_steps)
        fail(Errc::invalid_input, "stabilization needs 1 <= window <= max_steps");
}

struct Stabilized {
    Integer value;
    long steps = 0;
};

// Pulls a_1, a_2, ... until `window` consecutive values agree. The sequences fed here are
// weakly decreasing; an increase signals a bug upstream.
inline Stabilized stabilize(const std::function<Integer()>& next, const StabilizationOptions& o) {
    check_options(o);
    Integer last = -1;
    int run = 0;
    for (long step = 1; step <= o.max_steps; ++step) {
        Integer a = next();
        if (last >= 0 && a > last) throw std::logic_error("index sequence increased during stabilization");
        run = (a == last) ? run + 1 : 1;
        last = a;
        if (run >= o.window) return {last, step};
    }
    fail(Errc::stabilization_not_detected,
         "no run of " + std::to_string(o.window) + " equal indices within " + std::to_string(o.max_steps) + " steps");
}

}  // namespace detail

// T_1 = F, T_{n+1} = F + phi(T_n)
inline Subgroup trajectory(const Endo& phi, const Subgroup& f, long n) {
    if (n < 1) fail(Errc::invalid_input, "trajectory length must be positive");
    require_same_ambient(phi.ambient(), f.ambient());
    Subgroup t = f;
    for (long k = 1; k < n; ++k) t = subgroup_sum(f, endo_apply_subgroup(phi, t));
    return t;
}

inline RationalLattice trajectory(const RationalEndo& phi, const RationalLattice& f, long n) {
    if (n < 1) fail(Errc::invalid_input, "trajectory length must be positive");
    RationalLattice t = f;
    for (long k = 1; k < n; ++k) t = lattice_sum(f, endo_apply_lattice(phi, t));
    return t;
}

// Right shift trajectory of a finite subgroup of the shift group.
inline ShiftSubgroup trajectory(const ShiftSubgroup& f, long n, std::uint64_t cap = default_element_cap) {
    if (n < 1) fail(Errc::invalid_input, "trajectory length must be positive");
    ShiftSubgroup t = f;
    for (long k = 1; k < n; ++k) t = f.sum(t.shifted(), cap);
    return t;
}

// log of the stationary value of |T_{n+1} / T_n|.
inline EntropyReport H_alg_stabilized(const Endo& phi, const Subgroup& h, const StabilizationOptions& o = {}) {
    if (strict_inert_index(h, phi).is_infinite()) fail(Errc::not_inert, "subgroup is not phi-inert");
    Subgroup t = h;
    auto next = [&]() {
        Subgroup u = subgroup_sum(h, endo_apply_subgroup(phi, t));
        Integer a = subgroup_index(u, t).value();
        t = std::move(u);
        return a;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::log_of(Rational(s.value)), EntropyPath::stabilization, s.steps, true, std::nullopt};
}

inline EntropyReport H_alg_stabilized(const RationalEndo& phi, const RationalLattice& h,
                                      const StabilizationOptions& o = {}) {
    if (strict_inert_index(h, phi).is_infinite()) fail(Errc::not_inert, "lattice is not phi-inert");
    RationalLattice t = h;
    auto next = [&]() {
        RationalLattice u = lattice_sum(h, endo_apply_lattice(phi, t));
        Integer a = lattice_index(u, t).value();
        t = std::move(u);
        return a;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::log_of(Rational(s.value)), EntropyPath::stabilization, s.steps, true, std::nullopt};
}

inline EntropyReport H_alg_stabilized(const ShiftSubgroup& h, const StabilizationOptions& o = {},
                                      std::uint64_t cap = default_element_cap) {
    ShiftSubgroup t = h;
    auto next = [&]() {
        ShiftSubgroup u = h.sum(t.shifted(), cap);
        Integer a = static_cast<unsigned long>(u.order() / t.order());
        t = std::move(u);
        return a;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::log_of(Rational(s.value)), EntropyPath::stabilization, s.steps, true, std::nullopt};
}

// log of the positive leading coefficient of the primitive characteristic polynomial.
inline EntropyReport intrinsic_entropy(const RationalEndo& phi, bool cross_check = false,
                                       const StabilizationOptions& o = {}) {
    IntPolynomial f = charpoly_primitive(phi);
    EntropyReport r{EntropyValue::log_of(Rational(f.leading())), EntropyPath::leading_coefficient, 0, false,
                    std::nullopt};
    if (cross_check) {
        EntropyReport s = H_alg_stabilized(phi, RationalLattice::standard(phi.dim()), o);
        r.steps_used = s.steps_used;
        r.cross_check = CrossCheck{EntropyPath::stabilization, s.value, s.value.agrees_with(r.value)};
    }
    return r;
}

inline EntropyValue from_mahler(const MahlerResult& m) {
    if (m.exact) return EntropyValue::log_of(Rational(*m.exact_argument));
    return EntropyValue::numeric(m.value, m.error_bound);
}

// Mahler measure of the primitive characteristic polynomial.
inline EntropyReport h_alg_yuzvinski(const RationalEndo& phi, const MahlerOptions& mo = {}) {
    return {from_mahler(mahler_measure(charpoly_primitive(phi), mo)), EntropyPath::yuzvinski, 0, false, std::nullopt};
}

// Computed on the divisible hull of the free quotient; the torsion part contributes nothing.
inline EntropyReport h_alg_yuzvinski(const Endo& phi, const MahlerOptions& mo = {}) {
    return h_alg_yuzvinski(RationalEndo(phi.free_block()), mo);
}

enum class InvariantPlugin { log_order, dimension, rank };

inline const char* plugin_name(InvariantPlugin p) {
    switch (p) {
        case InvariantPlugin::log_order: return "log_order";
        case InvariantPlugin::dimension: return "dimension";
        case InvariantPlugin::rank: return "rank";
    }
    return "unknown";
}

// Per-step increments of i(T_n) for f.g. abelian groups: log_order needs N finite.
inline EntropyReport i_entropy(const Endo& phi, const Subgroup& n, InvariantPlugin plugin,
                               const StabilizationOptions& o = {}) {
    if (plugin == InvariantPlugin::dimension)
        fail(Errc::unsupported_ambient, "dimension plugin needs a vector space model");
    if (plugin == InvariantPlugin::log_order) {
        if (!n.is_finite()) fail(Errc::infinite_index, "log_order of an infinite subgroup");
        return H_alg_stabilized(phi, n, o);
    }
    Subgroup t = n;
    Integer prev = static_cast<unsigned long>(t.rank());
    auto next = [&]() {
        t = subgroup_sum(n, endo_apply_subgroup(phi, t));
        Integer r = static_cast<unsigned long>(t.rank());
        Integer inc = r - prev;
        prev = r;
        return inc;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::integer(s.value), EntropyPath::stabilization, s.steps, true, std::nullopt};
}

// Dimension (or rank, over Q) increments on the linear shift model.
template <class Field>
EntropyReport i_entropy(const LinearShiftSpace<Field>& space, const typename LinearShiftSpace<Field>::ShiftPolynomial& p,
                        const typename LinearShiftSpace<Field>::Subspace& n, InvariantPlugin plugin,
                        const StabilizationOptions& o = {}) {
    if (plugin == InvariantPlugin::log_order)
        fail(Errc::unsupported_ambient, "log_order plugin needs a finite-group model");
    auto t = n, power = n;
    Integer prev = static_cast<unsigned long>(t.dim());
    auto next = [&]() {
        power = space.image(p, power);
        t = space.sum(t, power);
        Integer d = static_cast<unsigned long>(t.dim());
        Integer inc = d - prev;
        prev = d;
        return inc;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::integer(s.value), EntropyPath::stabilization, s.steps, true, std::nullopt};
}

inline EntropyReport i_entropy(const ShiftSubgroup& n, InvariantPlugin plugin, const StabilizationOptions& o = {},
                               std::uint64_t cap = default_element_cap) {
    if (plugin != InvariantPlugin::log_order) fail(Errc::unsupported_ambient, "shift groups use the log_order plugin");
    return H_alg_stabilized(n, o, cap);
}

// log |T / phi T| - log |ker phi ∩ T| for a finite trajectory T = T(phi, F).
inline EntropyReport limit_free_H(const Endo& phi, const Subgroup& f, const StabilizationOptions& o = {}) {
    detail::check_options(o);
    Subgroup t = f;
    long steps = 0;
    while (true) {
        if (!t.is_finite()) fail(Errc::trajectory_not_finite, "trajectory has positive rank");
        Subgroup u = subgroup_sum(f, endo_apply_subgroup(phi, t));
        ++steps;
        if (u == t) break;
        if (steps >= o.max_steps) fail(Errc::trajectory_not_finite, "trajectory did not saturate");
        t = std::move(u);
    }
    Integer coker = subgroup_index(t, endo_apply_subgroup(phi, t)).value();
    Integer kernel = subgroup_intersect(endo_kernel(phi), t).order().value();
    return {EntropyValue::log_of(make_rational(coker, kernel)), EntropyPath::limit_free, steps, false, std::nullopt};
}

// Right shift with F containing the copy of the cell at position 0: T(beta, F) is the whole
// group, coker beta is the cell and ker beta = 0.
inline EntropyReport limit_free_H(const ShiftSubgroup& f) {
    const ShiftGroup& g = f.group();
    for (const auto& x : g.coordinate_copy(0))
        if (!f.contains(x))
            fail(Errc::trajectory_not_finite, "trajectory is infinite and F misses the coordinate copy");
    return {EntropyValue::log_of(Rational(Integer(static_cast<unsigned long>(g.cell_order())))),
            EntropyPath::limit_free, 0, false, std::nullopt};
}

// ent on a finitely generated group: the torsion part is finite, so the value is 0.
// The limit-free formula on the finite trajectory confirms it.
inline EntropyReport ent(const Endo& phi, const StabilizationOptions& o = {}) {
    Subgroup t = Subgroup::torsion(phi.ambient());
    EntropyReport r = H_alg_stabilized(phi, t, o);
    EntropyValue closed = limit_free_H(phi, t, o).value;
    r.cross_check = CrossCheck{EntropyPath::limit_free, closed, closed.agrees_with(r.value)};
    r.heuristic = !r.cross_check->agree;
    return r;
}

// C_1 = H, C_{n+1} = H ∩ phi^{-1}(C_n)
inline Subgroup adjoint_cotrajectory(const Endo& phi, const Subgroup& h, long n) {
    if (n < 1) fail(Errc::invalid_input, "cotrajectory length must be positive");
    Subgroup c = h;
    for (long k = 1; k < n; ++k) c = subgroup_intersect(h, endo_preimage(phi, c));
    return c;
}

inline RationalLattice adjoint_cotrajectory(const RationalEndo& phi, const RationalLattice& h, long n) {
    if (n < 1) fail(Errc::invalid_input, "cotrajectory length must be positive");
    RationalLattice c = h;
    for (long k = 1; k < n; ++k) c = preimage_within(phi, h, c);
    return c;
}

namespace detail {

template <class S, class E, class Step, class Index>
EntropyReport adjoint_entropy(const E& phi, const S& h, Step step, Index index, const StabilizationOptions& o) {
    S c = h;
    auto next = [&]() {
        S d = step(phi, h, c);
        Cardinal i = index(c, d);
        if (i.is_infinite()) fail(Errc::not_inert, "cotrajectory index is infinite");
        c = std::move(d);
        return i.value();
    };
    auto s = stabilize(next, o);
    return {EntropyValue::log_of(Rational(s.value)), EntropyPath::cotrajectory, s.steps, true, std::nullopt};
}

}  // namespace detail

// log of the stationary value of [C_n : C_{n+1}].
inline EntropyReport intrinsic_adjoint_entropy(const Endo& phi, const Subgroup& h, const StabilizationOptions& o = {}) {
    return detail::adjoint_entropy(
        phi, h, [](const Endo& p, const Subgroup& hh, const Subgroup& c) { return subgroup_intersect(hh, endo_preimage(p, c)); },
        [](const Subgroup& a, const Subgroup& b) { return subgroup_index(a, b); }, o);
}

inline EntropyReport intrinsic_adjoint_entropy(const RationalEndo& phi, const RationalLattice& h,
                                               const StabilizationOptions& o = {}) {
    return detail::adjoint_entropy(
        phi, h, [](const RationalEndo& p, const RationalLattice& hh, const RationalLattice& c) { return preimage_within(p, hh, c); },
        [](const RationalLattice& a, const RationalLattice& b) { return lattice_index(a, b); }, o);
}

// Left shift on the one-sided product: increments of log [U_1 : C_n(psi, U_1)].
inline EntropyReport h_top_shift(const CylinderFamily& fam, const StabilizationOptions& o = {}) {
    if (fam.two_sided()) fail(Errc::invalid_input, "topological entropy uses the one-sided family");
    long n = 1;
    Integer prev = cylinder_cotrajectory_index(fam, 1, n);
    auto next = [&]() {
        Integer cur = cylinder_cotrajectory_index(fam, 1, ++n);
        Integer ratio = cur / prev;
        prev = cur;
        return ratio;
    };
    auto s = detail::stabilize(next, o);
    return {EntropyValue::log_of(Rational(s.value)), EntropyPath::symbolic_shift, s.steps, false, std::nullopt};
}

struct ScaleReport {
    Integer scale;
    long minimizing_k = 0;
    long family_size = 0;
    bool family_relative = true;  // minimum over U_0..U_K only
};

inline ScaleReport scale_over_family(const CylinderFamily& fam, long max_k) {
    if (!fam.two_sided()) fail(Errc::invalid_input, "scale uses the two-sided family");
    if (max_k < 0) fail(Errc::empty_family, "cylinder family U_0..U_K is empty");
    ScaleReport r{two_sided_shift_inert_index(fam, 0), 0, max_k + 1, true};
    for (long k = 1; k <= max_k; ++k) {
        Integer s = two_sided_shift_inert_index(fam, k);
        if (s < r.scale) {
            r.scale = s;
            r.minimizing_k = k;
        }
    }
    return r;
}

enum class Growth { polynomial, exponential };

inline const char* growth_name(Growth g) { return g == Growth::polynomial ? "polynomial" : "exponential"; }

inline Growth classify_growth(const RationalEndo& phi) {
    if (phi.dim() == 0) return Growth::polynomial;
    return kronecker_test(charpoly_primitive(phi)) ? Growth::polynomial : Growth::exponential;
}

inline Growth classify_growth(const Endo& phi) { return classify_growth(RationalEndo(phi.free_block())); }

struct SumsetGrowth {
    std::vector<Integer> sizes;  // gamma(1..n_max)
    bool subadditive = true;     // gamma(m + n) <= gamma(m) gamma(n), checked when 0 is in F
};

namespace detail {

template <class T, class Add, class Map>
SumsetGrowth sumset(const std::vector<T>& f, long n_max, std::uint64_t cap, Add add, Map map, const T& zero) {
    if (n_max < 1) fail(Errc::invalid_input, "n_max must be positive");
    std::set<T> base(f.begin(), f.end());
    std::set<T> t = base;
    SumsetGrowth g;
    g.sizes.push_back(Integer(static_cast<unsigned long>(t.size())));
    for (long n = 2; n <= n_max; ++n) {
        std::set<T> u;
        for (const auto& x : t) {
            T y = map(x);
            for (const auto& b : base) {
                u.insert(add(b, y));
                if (u.size() > cap) fail(Errc::cap_exceeded, "sumset exceeds " + std::to_string(cap) + " elements");
            }
        }
        t = std::move(u);
        g.sizes.push_back(Integer(static_cast<unsigned long>(t.size())));
    }
    if (base.count(zero))
        for (std::size_t m = 1; m <= g.sizes.size(); ++m)
            for (std::size_t k = 1; m + k <= g.sizes.size(); ++k)
                if (g.sizes[m + k - 1] > g.sizes[m - 1] * g.sizes[k - 1]) g.subadditive = false;
    return g;
}

}  // namespace detail

// |F + phi F + ... + phi^{n-1} F| for n = 1..n_max (setwise sums).
inline SumsetGrowth sumset_growth(const Endo& phi, const std::vector<GroupElement>& f, long n_max,
                                  std::uint64_t cap = default_element_cap) {
    const FgAbGroup& a = phi.ambient();
    GroupElement zero(a, std::vector<Integer>(a.dimension(), Integer(0)));
    return detail::sumset(
        f, n_max, cap, [&](const GroupElement& x, const GroupElement& y) { return add(a, x, y); },
        [&](const GroupElement& x) { return phi.apply(x); }, zero);
}

inline SumsetGrowth sumset_growth(const ShiftGroup& g, const std::vector<ShiftElement>& f, long n_max,
                                  std::uint64_t cap = default_element_cap) {
    return detail::sumset(
        f, n_max, cap, [&](const ShiftElement& x, const ShiftElement& y) { return g.add(x, y); },
        [](const ShiftElement& x) { return ShiftGroup::shift(x); }, ShiftElement{});
}

}  // namespace inertial
